# =================================================================
#
# Author: tropskel developers
#
# Copyright (c) 2026 tropskel developers
#
# Permission is hereby granted, free of charge, to any person
# obtaining a copy of this software and associated documentation
# files (the "Software"), to deal in the Software without
# restriction, including without limitation the rights to use,
# copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the
# Software is furnished to do so, subject to the following
# conditions:
#
# The above copyright notice and this permission notice shall be
# included in all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND,
# EXPRESS OR IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES
# OF MERCHANTABILITY, FITNESS FOR A PARTICULAR PURPOSE AND
# NONINFRINGEMENT. IN NO EVENT SHALL THE AUTHORS OR COPYRIGHT
# HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER LIABILITY,
# WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING
# FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR
# OTHER DEALINGS IN THE SOFTWARE.
#
# =================================================================

"""Acceptance suite behind `tropctl selftest`"""

from fractions import Fraction
import functools
import itertools
import logging
import os
import random
import time

import click
import yaml

from tropskel import cli_options
from tropskel.env import TROPSKEL_BASEPATH
from tropskel.gaussfield import (CURVE_VARIABLES, ValuedPolynomial,
                                 extension_count_profile, gauss_eval)
from tropskel.linarith import (AffForm, Atom, DefinableSet, closure,
                               dimension, dimension_at, eliminate, emptiness,
                               equals, is_connected, membership, tangent_cone)
from tropskel.mpolytope import (Chart, atlas_compatible, make_polytope,
                                rank_of)
from tropskel.ovalgroup import GroupElement, compare
from tropskel.plugin import load_field
from tropskel.skeleton import (skeleton_preimage_curve,
                               union_skeleton_preimages)
from tropskel.tropicalizer import (DimensionBoundError, box_set,
                                   corner_locus, full_image_check,
                                   grid_oracle, local_germ, monomial_image,
                                   tropicalize_box)

LOGGER = logging.getLogger(__name__)

SUITE = os.path.join(TROPSKEL_BASEPATH, 'resources', 'selftest.yml')

SAMPLE_COORDINATES = [Fraction(1, 4), Fraction(1, 2), Fraction(2, 3), 1,
                      Fraction(3, 2), 2, 4]
SAMPLE_CONSTANTS = [Fraction(1, 4), Fraction(1, 2), 1, 2, 4]

CHECKS = {}


def check(name):
    """Register an acceptance check under its suite name"""

    def register(func):
        CHECKS[name] = func
        return func
    return register


def random_polynomial(rng, field, n, max_terms):
    """
    Random polynomial with small exponents and coefficients of varied
    absolute value

    :param rng: `random.Random`
    :param field: valued field plugin
    :param n: number of variables
    :param max_terms: largest number of monomials

    :returns: nonzero `ValuedPolynomial` in T1..Tn
    """

    variables = ['T{}'.format(i + 1) for i in range(n)]
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = tuple(rng.randint(0, 3) for _ in range(n))
        z = rng.choice([-3, -2, -1, 1, 2, 3])
        k = 0 if field.pi_value is None else rng.randint(-1, 2)
        c = field.lift(z, k)
        terms[exps] = c if not field.is_zero(c) else field.lift(1, k)
    return ValuedPolynomial(field, variables, terms)


def random_set(rng, n, max_atoms):
    """
    Random definable set of one or two conjunctions

    :param rng: `random.Random`
    :param n: ambient dimension
    :param max_atoms: largest total number of atoms

    :returns: `DefinableSet`
    """

    disjuncts = []
    budget = rng.randint(1, max_atoms)
    for _ in range(rng.randint(1, 2)):
        atoms = []
        for _ in range(max(1, budget // 2)):
            coefficients = [0] * n
            while not any(coefficients):
                coefficients = [rng.randint(-2, 2) for _ in range(n)]
            form = AffForm(coefficients, rng.choice(SAMPLE_CONSTANTS))
            atoms.append(Atom(form, rng.random() < 0.5))
        disjuncts.append(atoms)
    return DefinableSet(n, disjuncts)


def random_point(rng, n):
    return [GroupElement.coerce(rng.choice(SAMPLE_COORDINATES))
            for _ in range(n)]


def witness_exists(D, x, i):
    """
    Exact one-variable witness search: whether some t puts x with t
    inserted at coordinate i into D

    :param D: `DefinableSet`
    :param x: point in n - 1 coordinates
    :param i: inserted coordinate

    :returns: `bool`
    """

    x = [GroupElement.coerce(t) for t in x]

    thresholds = set()
    for atoms in D.disjuncts:
        for atom in atoms:
            a = atom.form.coefficients[i]
            if not a:
                continue
            rest = atom.form.constant
            for j, t in enumerate(x):
                b = atom.form.coefficients[j if j < i else j + 1]
                if b:
                    rest = rest * t ** b
            thresholds.add(rest ** (-1 / a))

    ordered = sorted(thresholds, key=functools.cmp_to_key(compare))
    candidates = list(ordered)
    candidates.extend((low * high).root(2)
                      for low, high in zip(ordered, ordered[1:]))
    if ordered:
        two = GroupElement.coerce(2)
        candidates.extend([ordered[0] / two, ordered[-1] * two])
    else:
        candidates.append(GroupElement.one())

    return any(membership(D, x[:i] + [t] + x[i:]) for t in candidates)


def closure_oracle(D, x):
    """Limit points along infinitesimal directions, together with D"""

    return membership(D, x) or not emptiness(tangent_cone(D, x))


def tropical_line_rays():
    """Three closed rays out of (1, 1): t1 = t2 >= 1, t1 = 1 >= t2, ..."""

    def ray(equal, lower):
        tie = AffForm(equal)
        return [Atom(tie), Atom(tie.inverse()),
                Atom(AffForm(lower).inverse())]

    return DefinableSet(2, [ray([1, -1], [1, 0]), ray([1, 0], [0, -1]),
                            ray([0, 1], [-1, 0])])


def _failure(detail, **kwargs):
    return dict(passed=False, detail=detail, **kwargs)


@check('gauss-laws')
def check_gauss_laws(rng, count, max_vars, max_terms, fields, **kwargs):
    fields = [load_field(f) for f in fields]
    for index in range(count):
        field = fields[index % len(fields)]
        n = rng.randint(1, max_vars)
        P = random_polynomial(rng, field, n, max_terms)
        Q = random_polynomial(rng, field, n, max_terms)
        r = random_point(rng, n)

        p, q = gauss_eval(P, r), gauss_eval(Q, r)
        if gauss_eval(P * Q, r) != p * q:
            return _failure('|PQ| != |P||Q| for {} and {} at {}'.format(
                P, Q, [str(t) for t in r]))
        total = gauss_eval(P + Q, r)
        if total is not None and compare(total, max(
                (p, q), key=functools.cmp_to_key(compare))) > 0:
            return _failure('|P+Q| > max for {} and {}'.format(P, Q))
    return {'passed': True, 'detail': '{} pairs'.format(count)}


@check('elimination')
def check_elimination(rng, count, samples, max_vars, max_atoms, **kwargs):
    for _ in range(count):
        n = rng.randint(1, max_vars)
        D = random_set(rng, n, max_atoms)
        i = rng.randrange(n)
        projected = eliminate(D, i)
        for _ in range(samples):
            x = random_point(rng, n - 1)
            if membership(projected, x) != witness_exists(D, x, i):
                return _failure('Elimination of t{} disagrees at {} for '
                                '{}'.format(i + 1, [str(t) for t in x], D))
    return {'passed': True,
            'detail': '{} sets x {} points'.format(count, samples)}


@check('closure')
def check_closure(rng, count, samples, max_vars, max_atoms, **kwargs):
    pruned = DefinableSet(1, [[Atom(AffForm([1]), True),
                               Atom(AffForm([-1]), True)]])
    if closure(pruned).disjuncts:
        return _failure('Closure of {t<1 and 1<t} is not empty')

    for _ in range(count):
        n = rng.randint(1, max_vars)
        D = random_set(rng, n, max_atoms)
        closed = closure(D)
        for _ in range(samples):
            x = random_point(rng, n)
            if membership(closed, x) != closure_oracle(D, x):
                return _failure('Closure disagrees at {} for {}'.format(
                    [str(t) for t in x], D))
    return {'passed': True,
            'detail': '{} sets x {} points'.format(count, samples)}


@check('tropical-line')
def check_tropical_line(rng, steps, lower, upper, **kwargs):
    P = ValuedPolynomial.parse('1 + T1 + T2', 'Q-trivial')
    locus = corner_locus(P)

    if not equals(locus.carrier, tropical_line_rays()):
        return _failure('Corner locus is not the three-ray set')
    mismatches = grid_oracle(P, to_group(lower), to_group(upper), steps,
                             locus)
    if mismatches:
        return _failure('{} grid disagreements'.format(len(mismatches)))
    if dimension(locus.carrier) != 1 or not is_connected(locus.carrier):
        return _failure('Tropical line is not a connected curve')
    return {'passed': True,
            'detail': '{0}x{0} grid, dimension 1, connected'.format(steps)}


@check('dimension-bound')
def check_dimension_bound(rng, count, points, dimensions, field, **kwargs):
    field = load_field(field)
    for index in range(count):
        n = dimensions[index % len(dimensions)]
        P = random_polynomial(rng, field, n, 4)
        while len(P.terms) < 2:
            P = random_polynomial(rng, field, n, 4)

        locus = corner_locus(P)
        if dimension(locus.carrier) != n - 1:
            return _failure('Corner locus of {} has dimension {}'.format(
                P, dimension(locus.carrier)))
        for cell in locus.complex.cells[:points]:
            if dimension_at(locus.carrier, cell.point) != n - 1:
                return _failure('Corner locus of {} not pure at {}'.format(
                    P, [str(t) for t in cell.point]))

        try:
            tropicalize_box(P, [(Fraction(1, 4), 4)] * n)
        except DimensionBoundError as err:
            return _failure(str(err))
    return {'passed': True, 'detail': '{} hypersurfaces'.format(count)}


@check('germ')
def check_germ(rng, edge_point, **kwargs):
    P = ValuedPolynomial.parse('1 + T1 + T2', 'Q-trivial')

    if not equals(local_germ(P, [1, 1]), tropical_line_rays()):
        return _failure('Star at the vertex is not the three-ray cone')

    line = AffForm([0, 1])
    expected = DefinableSet.conjunction(2, [Atom(line), Atom(line.inverse())])
    point = [to_group(t) for t in edge_point]
    if not equals(local_germ(P, point), expected):
        return _failure('Star at {} is not the edge line'.format(
            edge_point))
    return {'passed': True, 'detail': 'vertex and edge stars exact'}


@check('profile')
def check_profile(rng, poly, lower, upper, breakpoints, counts, **kwargs):
    P = ValuedPolynomial.parse(poly, 'Q-trivial', CURVE_VARIABLES)
    profile = extension_count_profile(P, to_group(lower), to_group(upper))

    found = [str(b) for b in profile.breakpoints]
    if found != [str(b) for b in breakpoints]:
        return _failure('Breakpoints {}'.format(found))
    if [p.count for p in profile.pieces] != counts:
        return _failure('Counts {}'.format([p.count for p in
                                             profile.pieces]))
    return {'passed': True, 'detail': 'counts {}'.format(counts)}


@check('curve-skeleton')
def check_curve_skeleton(rng, poly, separators, lower, upper, samples,
                         edges, vertices, **kwargs):
    P = ValuedPolynomial.parse(poly, 'Q-trivial', CURVE_VARIABLES)
    E = [ValuedPolynomial.parse(g, 'Q-trivial', CURVE_VARIABLES)
         for g in separators]
    lower, upper = to_group(lower), to_group(upper)
    result = skeleton_preimage_curve(P, E, lower, upper)

    ratio = upper / lower
    for k in range(1, samples + 1):
        r = lower * ratio ** Fraction(k, samples + 1)
        if len(result.fiber(r)) != result.profile.count_at(r):
            return _failure('Fiber over r={} has {} points'.format(
                r, len(result.fiber(r))))

    if not result.is_immersion():
        return _failure('Projection is not a piecewise immersion')
    if not result.is_tree():
        return _failure('Skeleton is not a tree')
    if (len(result.edges), len(result.vertices)) != (edges, vertices):
        return _failure('{} edges and {} vertices'.format(
            len(result.edges), len(result.vertices)))
    return {'passed': True, 'detail': '{} edges, {} vertex, {} fibers'
            .format(edges, vertices, samples)}


@check('atlas')
def check_atlas(rng, radii, matrix, **kwargs):
    boxes = [make_polytope(box_set([(Fraction(1, R), R)] * 2))
             for R in radii]
    charts = boxes + [Chart.monomial(P, matrix) for P in boxes]

    for P, Q in itertools.combinations(charts, 2):
        if not atlas_compatible(P, Q):
            return _failure('Incompatible charts {!r} and {!r}'.format(P, Q))

    union_skeleton_preimages([(P, None) for P in boxes])
    return {'passed': True, 'detail': '{} charts pairwise compatible'.format(
        len(charts))}


@check('full-image')
def check_full_image(rng, matrices, **kwargs):
    for case in matrices:
        matrix = case['matrix']
        full = full_image_check(matrix)
        if full != (rank_of(matrix) == len(matrix[0])):
            return _failure('Matrix {}: full image {}'.format(matrix, full))
        if not full and dimension(monomial_image(matrix)) >= len(matrix):
            return _failure('Matrix {}: image not lower dimensional'
                            .format(matrix))
    return {'passed': True, 'detail': '{} matrices'.format(len(matrices))}


def to_group(value):
    return GroupElement.coerce(Fraction(str(value)))


def load_suite(path=SUITE):
    """
    Read the acceptance suite definition

    :param path: YAML filepath

    :returns: `dict` with `seed` and `checks`
    """

    LOGGER.debug('Reading suite {}'.format(path))
    with open(path, encoding='utf-8') as fh:
        suite = yaml.safe_load(fh)

    for entry in suite.get('checks', []):
        if entry.get('check') not in CHECKS:
            msg = 'Unknown check {!r} in {}'.format(entry.get('check'), path)
            LOGGER.error(msg)
            raise ValueError(msg)
    return suite


def run_suite(suite, seed=None, only=None):
    """
    Run acceptance checks

    :param suite: `dict` from `load_suite`
    :param seed: random seed (default: the suite seed)
    :param only: `list` of check names to run (default: all)

    :returns: `list` of result `dict`s
    """

    seed = suite.get('seed', 0) if seed is None else seed
    results = []
    for entry in suite['checks']:
        name = entry['check']
        if only and name not in only:
            continue

        params = {k: v for k, v in entry.items()
                  if k not in ('check', 'max_seconds')}
        rng = random.Random('{}:{}'.format(seed, name))
        start = time.perf_counter()
        try:
            result = CHECKS[name](rng, **params)
        except Exception as err:
            LOGGER.error('Check {} raised: {}'.format(name, err))
            result = _failure('{}: {}'.format(type(err).__name__, err))
        result['name'] = name
        result['seconds'] = round(time.perf_counter() - start, 3)
        if 'max_seconds' in entry and result['seconds'] > \
                entry['max_seconds']:
            LOGGER.warning('Check {} took {}s (target {}s)'.format(
                name, result['seconds'], entry['max_seconds']))
            result['slow'] = True
        results.append(result)
    return results


def format_table(results):
    """Plain text pass/fail table"""

    width = max([len(r['name']) for r in results] + [5])
    lines = ['{}  {:6}  {:>8}  {}'.format('check'.ljust(width), 'status',
                                          'seconds', 'detail')]
    for r in results:
        status = 'PASS' if r['passed'] else 'FAIL'
        if r.get('slow'):
            status += '*'
        lines.append('{}  {:6}  {:>8}  {}'.format(
            r['name'].ljust(width), status, r['seconds'], r['detail']))
    return '\n'.join(lines)


@click.command('selftest')
@click.pass_context
@click.option('--suite', 'suite_path', default=SUITE,
              type=click.Path(exists=True, dir_okay=False),
              help='Acceptance suite definition (YAML)')
@click.option('--only', help='Comma separated check names to run')
@cli_options.OPTION_SEED(default=None, show_default=False)
@cli_options.OPTION_OUT()
@cli_options.cli_errors
def selftest(ctx, suite_path, only, seed, out):
    """Run the acceptance suite and print a pass/fail table"""

    suite = load_suite(suite_path)
    results = run_suite(suite, seed, only.split(',') if only else None)

    click.echo(format_table(results))
    if out is not None:
        cli_options.emit_artifact('selftest', {'results': results}, out)

    if not all(r['passed'] for r in results):
        ctx.exit(1)
