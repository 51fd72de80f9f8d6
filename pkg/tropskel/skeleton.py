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

"""
The standard skeleton S_n of the torus and its preimages under monomial
maps and under the projection of a plane curve to |X|
"""

import itertools
import logging

import click
import networkx as nx
import sympy

from tropskel import cli_options
from tropskel.gaussfield import (CURVE_VARIABLES, GaussLattice,
                                 UnsupportedResidueFieldError,
                                 ValuedPolynomial,
                                 WildOrDeepRamificationError,
                                 branch_value, extension_count_profile,
                                 gauss_branches, gauss_eval, gauss_residue,
                                 residues_alg_independent, sample_between,
                                 separation_failures)
from tropskel.linarith import (AffForm, Atom, DefinableSet,
                               DimensionMismatchError, merge_groups,
                               parse_point)
from tropskel.mpolytope import (Cell, CellComplex, Chart, CPolytope,
                                PLMap, atlas_compatible, decompose,
                                decompose_set, is_piecewise_immersion,
                                make_polytope, monomial_forms, rank_of)
from tropskel.ovalgroup import GroupElement, IndependenceError, compare
from tropskel.plugin import load_field
from tropskel.render import render_set
from tropskel.tropicalizer import box_set, parse_box
from tropskel.util import DomainError, parse_list, to_fraction

LOGGER = logging.getLogger(__name__)

SEPARATOR_SCALES = ('1', '2', '1/2', '3')


class SkeletonPoint:
    """Gauss point eta_r of the torus"""

    def __init__(self, r):
        self.r = [GroupElement.coerce(t) for t in r]

    @property
    def n(self):
        return len(self.r)

    def evaluate(self, P):
        """|P(eta_r)|, the Gauss valuation of P at r"""

        return gauss_eval(P, self.r)

    def to_dict(self):
        return {'r': [t.to_dict() for t in self.r]}

    def __repr__(self):
        return '<SkeletonPoint> {}'.format([str(t) for t in self.r])


def _parse_constant(text, field):
    value = ValuedPolynomial.parse(str(text), field, variables=())
    if value.is_zero():
        msg = 'Monomial map constants must be nonzero'
        LOGGER.error(msg)
        raise ValueError(msg)
    return value.terms[()]


class MonomialMap:
    """Torus map t -> c * t^M with integer exponents"""

    def __init__(self, matrix, constants=None, field='Q-trivial'):
        """
        Initialize object

        :param matrix: m x n integer matrix
        :param constants: `list` of m nonzero field elements (or text),
                          default 1
        :param field: valued field (plugin or descriptor)

        :returns: `tropskel.skeleton.MonomialMap`
        """

        self.field = load_field(field)

        rows = [[to_fraction(v) for v in row] for row in matrix]
        if not rows or any(len(row) != len(rows[0]) for row in rows):
            msg = 'Monomial map needs a rectangular exponent matrix'
            LOGGER.error(msg)
            raise ValueError(msg)
        if any(v.denominator != 1 for row in rows for v in row):
            msg = 'Monomial map exponents must be integers'
            LOGGER.error(msg)
            raise ValueError(msg)
        self.matrix = [[int(v) for v in row] for row in rows]

        constants = constants if constants is not None else [1] * self.m
        if len(constants) != self.m:
            msg = '{} constants for {} monomials'.format(len(constants),
                                                         self.m)
            LOGGER.error(msg)
            raise DimensionMismatchError(msg)
        self.constants = [_parse_constant(c, self.field) if isinstance(c, str)
                          else self.field.coerce(c) for c in constants]

    @property
    def m(self):
        return len(self.matrix)

    @property
    def n(self):
        return len(self.matrix[0])

    def abs_constants(self):
        return [self.field.abs(c) for c in self.constants]

    def act(self, point):
        """
        Image of a skeleton point

        :param point: `SkeletonPoint` or radii

        :returns: `SkeletonPoint`
        """

        r = point.r if isinstance(point, SkeletonPoint) else \
            SkeletonPoint(point).r
        if len(r) != self.n:
            msg = 'Point of dimension {} for a map from n={}'.format(
                len(r), self.n)
            LOGGER.error(msg)
            raise DimensionMismatchError(msg)

        return SkeletonPoint([f.evaluate(r) for f in self.forms()])

    def forms(self):
        return monomial_forms(self.matrix, self.abs_constants(), self.n)

    def monomials(self):
        """The coordinate functions as polynomials in T1..Tn"""

        variables = ['T{}'.format(j + 1) for j in range(self.n)]
        return [ValuedPolynomial.monomial(self.field, variables, row, c)
                for row, c in zip(self.matrix, self.constants)]

    def rank(self):
        return rank_of(self.matrix)

    def check_invertible(self):
        if self.m != self.n or self.rank() != self.n:
            msg = 'Exponent matrix {} is singular'.format(self.matrix)
            LOGGER.error(msg)
            raise SingularMapError(msg)

    def compose(self, other):
        """
        The map self o other

        :param other: `MonomialMap` with m = self.n

        :returns: `MonomialMap`
        """

        if other.m != self.n or other.field != self.field:
            msg = 'Cannot compose maps {}x{} and {}x{}'.format(
                self.m, self.n, other.m, other.n)
            LOGGER.error(msg)
            raise DimensionMismatchError(msg)

        matrix = [[sum(self.matrix[k][j] * other.matrix[j][i]
                       for j in range(self.n)) for i in range(other.n)]
                  for k in range(self.m)]
        constants = []
        for row, c in zip(self.matrix, self.constants):
            for e, c_other in zip(row, other.constants):
                if e:
                    c = c * c_other ** e
            constants.append(c)
        return MonomialMap(matrix, constants, self.field)

    def to_dict(self):
        return {
            'matrix': self.matrix,
            'constants': [str(self.field.to_sympy(c))
                          for c in self.constants],
            'field': self.field.to_dict()
        }

    def __repr__(self):
        return '<MonomialMap> {}'.format(self.matrix)


def skeleton_membership_monomial(f, r):
    """
    Whether eta_r maps into the standard skeleton under a monomial map

    :param f: `MonomialMap` (m monomials in n variables)
    :param r: radii, independent over the value group of the field

    :returns: `bool`
    """

    point = SkeletonPoint(r)
    if point.n != f.n:
        msg = 'Point of dimension {} for monomials in {} variables'.format(
            point.n, f.n)
        LOGGER.error(msg)
        raise DimensionMismatchError(msg)

    if not GaussLattice(f.field, point.r).independent:
        msg = 'Radii {} depend on the value group of {}; criterion ' \
              'inconclusive'.format([str(t) for t in point.r], f.field.kind)
        LOGGER.error(msg)
        raise IndependenceError(msg)

    member = f.rank() == f.m

    if f.field.characteristic == 0:
        residues = [gauss_residue(g, point.r) for g in f.monomials()]
        if residues_alg_independent(residues) != member:
            LOGGER.warning('Rank and Jacobian criteria disagree for '
                           '{!r}'.format(f))

    return member


def preimage_skeleton_monomial(phi, box):
    """
    Skeleton preimage of S_n under an invertible monomial map inside a
    box, with the induced piecewise-linear map to S_n

    :param phi: square `MonomialMap`
    :param box: `CPolytope` (or `list` of `(s_i, S_i)` sides)

    :returns: `tuple` of `CPolytope` and `PLMap` (`None` with an empty
              polytope when the map is singular)
    """

    if not isinstance(box, CPolytope):
        box = make_polytope(box_set(box))

    if box.n != phi.n:
        msg = 'Box in n={} for a map from n={}'.format(box.n, phi.n)
        LOGGER.error(msg)
        raise DimensionMismatchError(msg)

    try:
        phi.check_invertible()
    except SingularMapError as err:
        LOGGER.warning('Empty skeleton preimage: {}'.format(err))
        empty = DefinableSet.empty(box.n, box.group)
        return CPolytope(empty, box.group, None), None

    f = PLMap.uniform(decompose(box), phi.forms())
    if not is_piecewise_immersion(f):
        msg = 'Invertible map {} is not an immersion'.format(phi.matrix)
        LOGGER.error(msg)
        raise SingularMapError(msg)

    return box, f


class SkeletonEdge:
    """Closed segment r -> (r, c_1 r^q_1, ...) over [lower, upper]"""

    def __init__(self, lower, upper, exponents, constants, key=()):
        self.lower = lower
        self.upper = upper
        self.exponents = tuple(exponents)
        self.constants = tuple(constants)
        self.key = tuple(key)

    @property
    def n(self):
        return 1 + len(self.exponents)

    def point(self, r):
        r = GroupElement.coerce(r)
        return (r,) + tuple(c * r ** q for q, c in zip(self.exponents,
                                                       self.constants))

    def covers(self, r):
        return compare(self.lower, r) <= 0 <= compare(self.upper, r)

    def same_law(self, other):
        return (self.exponents, self.constants) == (other.exponents,
                                                    other.constants)

    def atoms(self):
        n = self.n
        atoms = [Atom(AffForm.coordinate(n, 0, self.upper.inverse())),
                 Atom(AffForm.coordinate(n, 0, self.lower.inverse())
                      .inverse())]
        for j, (q, c) in enumerate(zip(self.exponents, self.constants)):
            coefficients = [0] * n
            coefficients[0] = -q
            coefficients[j + 1] = 1
            law = AffForm(coefficients, c.inverse())
            atoms.extend([Atom(law), Atom(law.inverse())])
        return atoms

    def to_dict(self):
        return {
            'lower': str(self.lower),
            'upper': str(self.upper),
            'laws': [{'constant': str(c), 'exponent': str(q)}
                     for q, c in zip(self.exponents, self.constants)],
            'branch': [str(k) for k in self.key]
        }

    def __repr__(self):
        return '<SkeletonEdge> [{}; {}] {}'.format(
            self.lower, self.upper, ['{}*r^{}'.format(c, q) for q, c in
                                     zip(self.exponents, self.constants)])


def _fit(r1, v1, r2, v2):
    """Constant c and exponent q with v = c * r^q at both radii"""

    if v1 is None or v2 is None:
        msg = 'Separator vanishes identically on a branch'
        LOGGER.error(msg)
        raise SeparationError(msg)

    ratio = r2 / r1
    values = v2 / v1
    name = next(k for k, e in ratio.exp.items() if e)
    q = values.exponent(name) / ratio.exponent(name)
    if ratio ** q != values:
        msg = 'Separator value is not monomial in r on [{}; {}]'.format(
            r1, r2)
        LOGGER.error(msg)
        raise SeparationError(msg)
    return q, v1 / r1 ** q


def _piece_edges(P, E, piece, var):
    low, high = piece.bounds
    r1 = piece.sample
    r2 = sample_between(P.field, r1, high)

    first = {b.key: b for b in gauss_branches(P, [r1], var)}
    second = {b.key: b for b in gauss_branches(P, [r2], var)}
    if set(first) != set(second):
        msg = 'Branch data changes inside ]{}; {}['.format(low, high)
        LOGGER.error(msg)
        raise SeparationError(msg)

    edges = []
    for key, branch in first.items():
        laws = [_fit(r1, branch_value(P, branch, g, [r1], var),
                     r2, branch_value(P, second[key], g, [r2], var))
                for g in E]
        edges.append(SkeletonEdge(low, high, [q for q, _ in laws],
                                  [c for _, c in laws], key))
    return edges


def _merge_edges(edges, breakpoints):
    merged = True
    while merged:
        merged = False
        for b in breakpoints:
            left = [e for e in edges if e.upper == b]
            right = [e for e in edges if e.lower == b]
            if len(left) == 1 and len(right) == 1 and \
                    left[0].same_law(right[0]):
                edge = SkeletonEdge(left[0].lower, right[0].upper,
                                    left[0].exponents, left[0].constants,
                                    left[0].key)
                edges = [e for e in edges if e not in (left[0], right[0])]
                edges.append(edge)
                merged = True
                break
    return sorted(edges, key=lambda e: (e.lower.log_float(),
                                        [str(k) for k in e.key]))


class CurveSkeletonPreimage:
    """
    Union of closed edges over |X| on which the projection to S_1 is
    injective, with one edge per extension over every open piece
    """

    def __init__(self, polynomial, separators, profile, edges):
        self.polynomial = polynomial
        self.separators = separators
        self.profile = profile
        self.edges = edges

        n = 1 + len(separators)
        group = polynomial.field.value_group().join(
            [b for e in edges for b in (e.lower, e.upper)] +
            [c for e in edges for c in e.constants])

        breakpoints = set(profile.breakpoints)
        self.vertices = []
        for edge in edges:
            for end in (edge.lower, edge.upper):
                point = edge.point(end)
                if end in breakpoints and point not in self.vertices:
                    self.vertices.append(point)

        cells = [Cell(n, group, ('e{}'.format(i),), edge.atoms())
                 for i, edge in enumerate(edges)]
        faces = [DefinableSet.conjunction(n, _point_atoms(v), group)
                 for v in self.vertices]

        adjacency = {i: set() for i in range(len(edges))}
        for i, j in itertools.combinations(range(len(edges)), 2):
            ends_i = {edges[i].point(edges[i].lower),
                      edges[i].point(edges[i].upper)}
            ends_j = {edges[j].point(edges[j].lower),
                      edges[j].point(edges[j].upper)}
            if ends_i & ends_j:
                adjacency[i].add(j)
                adjacency[j].add(i)

        carrier = DefinableSet(n, [e.atoms() for e in edges], group)
        self.complex = CellComplex(carrier, [], cells, faces, adjacency)
        self.projection = PLMap.uniform(self.complex,
                                        [AffForm.coordinate(n, 0)])

    @property
    def coordinates(self):
        base = [v for v in self.polynomial.variables if v != 'Y']
        return base[:1] + [str(g) for g in self.separators]

    @property
    def carrier(self):
        return self.complex.carrier

    def fiber(self, r):
        """Points of the complex over r = |X|"""

        points = []
        for edge in self.edges:
            if edge.covers(GroupElement.coerce(r)):
                point = edge.point(r)
                if point not in points:
                    points.append(point)
        return points

    def graph(self):
        graph = nx.Graph()
        for edge in self.edges:
            graph.add_edge(edge.point(edge.lower), edge.point(edge.upper))
        return graph

    def is_tree(self):
        graph = self.graph()
        return graph.number_of_nodes() > 0 and nx.is_tree(graph)

    def is_immersion(self):
        return is_piecewise_immersion(self.projection)

    def validate(self):
        """Fiber counts against the extension count profile"""

        for piece in self.profile.pieces:
            if piece.kind == 'at':
                continue
            size = len(self.fiber(piece.sample))
            if size != piece.count:
                msg = '{} points over r={}, {} extensions'.format(
                    size, piece.sample, piece.count)
                LOGGER.error(msg)
                raise SeparationError(msg)
        return True

    def to_dict(self):
        return {
            'polynomial': self.polynomial.to_dict(),
            'coordinates': self.coordinates,
            'edges': [e.to_dict() for e in self.edges],
            'vertices': [[str(t) for t in v] for v in self.vertices],
            'carrier': self.carrier.to_dict(),
            'profile': self.profile.to_dict(),
            'fibers': [{'r': str(p.sample), 'count': len(self.fiber(
                p.sample))} for p in self.profile.pieces if p.kind != 'at'],
            'immersion': self.is_immersion(),
            'tree': self.is_tree()
        }

    def __repr__(self):
        return '<CurveSkeletonPreimage> {} edges, {} vertices'.format(
            len(self.edges), len(self.vertices))


def _point_atoms(point):
    n = len(point)
    atoms = []
    for i, t in enumerate(point):
        form = AffForm.coordinate(n, i, t.inverse())
        atoms.extend([Atom(form), Atom(form.inverse())])
    return atoms


def skeleton_preimage_curve(P, separators, lower, upper, var=None):
    """
    Skeleton of a plane curve over a range of r = |X|, in coordinates
    (|X|, |sep_1|, ...)

    :param P: squarefree `ValuedPolynomial` in X and Y
    :param separators: `list` of `ValuedPolynomial` separating the
                       extensions
    :param lower: lower end of the range
    :param upper: upper end of the range

    :returns: `CurveSkeletonPreimage`
    """

    profile = extension_count_profile(P, lower, upper, var)

    failures = separation_failures(
        P, separators, [[s] for s in profile.open_samples()], var)
    if failures:
        msg = 'Separators {} do not separate the extensions at r={}'.format(
            [str(g) for g in separators], failures[0][0])
        LOGGER.error(msg)
        raise SeparationError(msg)

    edges = []
    for piece in profile.pieces:
        if piece.kind != 'at':
            edges.extend(_piece_edges(P, separators, piece, var))
    edges = _merge_edges(edges, profile.breakpoints)

    result = CurveSkeletonPreimage(P, separators, profile, edges)
    result.validate()
    LOGGER.debug('Curve skeleton: {!r}'.format(result))
    return result


def _as_chart(part):
    obj, f = part
    if isinstance(obj, CPolytope):
        polytope = obj
    else:
        polytope = make_polytope(obj.carrier)

    forms = None
    if f is not None and all(piece == f.forms[0] for piece in f.forms):
        forms = list(f.forms[0])
    return Chart(polytope, forms)


def union_skeleton_preimages(parts):
    """
    Union of charted skeleton pieces after pairwise compatibility checks

    :param parts: `list` of `(CPolytope or CellComplex, PLMap or None)`

    :returns: `CellComplex` of the union
    """

    charts = [_as_chart(part) for part in parts]
    if not charts:
        msg = 'Nothing to unite'
        LOGGER.error(msg)
        raise ValueError(msg)

    for (i, P), (j, Q) in itertools.combinations(enumerate(charts), 2):
        if not atlas_compatible(P, Q):
            raise IncompatibleChartsError(i, j)

    group = charts[0].polytope.carrier.group
    disjuncts = []
    for chart in charts:
        group = merge_groups(group, chart.polytope.carrier.group)
        disjuncts.extend(chart.polytope.carrier.disjuncts)

    n = charts[0].polytope.n
    return decompose_set(DefinableSet(n, disjuncts, group))


def _square_free(q):
    """Square-free integer s with q = s * (rational square)"""

    n = q.numerator * q.denominator
    s = -1 if n < 0 else 1
    for prime, power in sympy.factorint(abs(n)).items():
        if power % 2:
            s *= prime
    return s


def splitting_radicands(P, profile):
    """
    Square-free integers whose square roots split the irreducible
    quadratic residual factors met along a profile

    :param P: `ValuedPolynomial` in X and Y
    :param profile: `Profile` of P

    :returns: sorted `list` of `int`
    """

    radicands = set()
    for piece in profile.pieces:
        try:
            branches = gauss_branches(P, [piece.sample])
        except UnsupportedResidueFieldError:
            continue
        for branch in branches:
            if branch.residue_degree == 1 or not branch.factor:
                continue
            expr = sympy.sympify(branch.factor.replace('^', '**'))
            symbols = expr.free_symbols
            if len(symbols) != 1:
                continue
            poly = sympy.Poly(expr, *symbols)
            if poly.degree() != 2 or \
                    not all(c.is_Rational for c in poly.all_coeffs()):
                continue
            a2, a1, a0 = (to_fraction(c) for c in poly.all_coeffs())
            s = _square_free(a1 * a1 - 4 * a2 * a0)
            if s != 1:
                radicands.add(s)
    return sorted(radicands)


def independent_prime(radicands):
    """Smallest prime whose square root is not in Q(sqrt(radicands))"""

    q = 2
    while any(s % q == 0 for s in radicands):
        q = sympy.nextprime(q)
    return q


def _counts(profile):
    return [p.count for p in profile.pieces]


def base_change_stabilization_demo(a, lower, upper, field='Q-trivial'):
    """
    Extension count profile of Y^2 - a over K, over a finite separable
    extension F0 of the constants splitting the residual factors, and
    over a further independent quadratic extension of F0; the same over
    the ramified base X = U^2

    :param a: nonzero element of K[X] (text or `ValuedPolynomial`)
    :param lower: lower end of the range of r = |X|
    :param upper: upper end of the range

    :returns: `dict` report with before/after/further profiles,
              `stable`, notes
    """

    field = load_field(field)
    if field.characteristic == 2:
        msg = 'Quadratic extensions in residue characteristic 2 are wild'
        LOGGER.error(msg)
        raise WildOrDeepRamificationError(msg)
    if field.characteristic:
        msg = 'Constant extensions of {} need residue fields beyond ' \
              'GF({})'.format(field.kind, field.characteristic)
        LOGGER.error(msg)
        raise UnsupportedResidueFieldError(msg)

    if not isinstance(a, ValuedPolynomial):
        a = ValuedPolynomial.parse(a, field, CURVE_VARIABLES)
    if a.is_zero() or any(exps[1] for exps in a.terms):
        msg = 'a must be a nonzero polynomial in X only, got {}'.format(a)
        LOGGER.error(msg)
        raise ValueError(msg)

    lower = GroupElement.coerce(lower)
    upper = GroupElement.coerce(upper)

    Y = ValuedPolynomial.variable(field, CURVE_VARIABLES, 1)
    P = Y ** 2 - a
    Q = P.ramify(0, 2, 'U')
    before = extension_count_profile(P, lower, upper)
    ramified = extension_count_profile(Q, lower.root(2), upper.root(2))

    radicands = sorted(set(splitting_radicands(P, before) +
                           splitting_radicands(Q, ramified)))
    q = independent_prime(radicands)
    descriptor = field.to_dict()
    F0 = load_field(dict(descriptor, adjoin=list(field.adjoined) +
                         radicands))
    F1 = load_field(dict(descriptor, adjoin=list(F0.adjoined) + [q]))
    LOGGER.debug('Constant extensions: {} and {}'.format(F0, F1))

    after = extension_count_profile(P.base_change(F0), lower, upper)
    further = extension_count_profile(P.base_change(F1), lower, upper)
    ramified_after = extension_count_profile(
        Q.base_change(F0), lower.root(2), upper.root(2))

    notes = []
    for old, new, split in zip(before.pieces, after.pieces,
                               ramified_after.pieces):
        if old.kind == 'at':
            where = 'at {}'.format(old.bounds[0])
        else:
            where = '{} ]{}; {}['.format(old.kind, *old.bounds)
        if new.count is not None and old.count is not None and \
                new.count > old.count:
            notes.append('{}: splits after a finite separable extension '
                         'of the constants'.format(where))
        elif old.kind != 'at' and any(
                b.ramification > 1
                for b in gauss_branches(P, [old.sample])):
            notes.append('{}: ramified along |X|, no constant extension '
                         'splits it ({} extensions over X = U^2)'.format(
                             where, split.count))

    return {
        'polynomial': P.to_dict(),
        'extension': [str(s) for s in F0.adjoined],
        'further_extension': [str(s) for s in F1.adjoined],
        'before': before.to_dict(),
        'after': after.to_dict(),
        'further': further.to_dict(),
        'ramified': ramified.to_dict(),
        'ramified_after': ramified_after.to_dict(),
        'stable': _counts(after) == _counts(further),
        'notes': notes
    }


def separator_candidates(P):
    """Y, Y +- X and Y +- c*X in the variables of P"""

    x, y = CURVE_VARIABLES
    texts = [y]
    for scale in SEPARATOR_SCALES:
        term = x if scale == '1' else '{}*{}'.format(scale, x)
        texts.extend(['{}-{}'.format(y, term), '{}+{}'.format(y, term)])
    return [ValuedPolynomial.parse(text, P.field, P.variables)
            for text in texts]


def find_separators(P, lower, upper, candidates=None, max_size=2):
    """
    Search a small separating set among candidate functions

    :param P: `ValuedPolynomial` in X and Y
    :param lower: lower end of the range of r = |X|
    :param upper: upper end of the range
    :param candidates: `list` of `ValuedPolynomial` (default: Y, Y +- X,
                       Y +- c*X)
    :param max_size: largest set size tried

    :returns: `list` of `ValuedPolynomial`
    """

    candidates = candidates or separator_candidates(P)
    profile = extension_count_profile(P, lower, upper)
    samples = [[s] for s in profile.open_samples()]

    for size in range(1, max_size + 1):
        for E in itertools.combinations(candidates, size):
            try:
                if not separation_failures(P, list(E), samples):
                    LOGGER.debug('Separators found: {}'.format(
                        [str(g) for g in E]))
                    return list(E)
            except WildOrDeepRamificationError as err:
                LOGGER.debug('Skipping {}: {}'.format([str(g) for g in E],
                                                      err))

    msg = 'No separating set of size <= {} among {} candidates'.format(
        max_size, len(candidates))
    LOGGER.error(msg)
    raise SeparationError(msg)


class SeparationError(DomainError):
    """separators do not separate the extensions"""
    pass


class SingularMapError(DomainError):
    """singular monomial map"""
    pass


class IncompatibleChartsError(DomainError):
    """incompatible charts"""

    def __init__(self, first, second):
        self.pair = (first, second)
        msg = 'Parts {} and {} have incompatible charts'.format(first,
                                                                second)
        LOGGER.error(msg)
        super().__init__(msg)


def parse_matrix(text):
    """Parse `1,1;1,-1` into rows of rationals"""

    return [[to_fraction(v) for v in parse_list(row)]
            for row in parse_list(text, ';')]


@click.command('skeleton-preimage')
@click.pass_context
@cli_options.OPTION_POLY(required=False)
@click.option('--separators', help='Separating functions, separated by '
              '";" (default: searched among Y, Y+-X, Y+-cX)')
@cli_options.OPTION_RANGE(required=False)
@click.option('--matrix', help='Monomial map exponents, e.g. "1,1;1,-1"')
@click.option('--constants', help='Monomial map constants, e.g. "1,5"')
@click.option('--box', help='Box s:S per coordinate, separated by ";"')
@cli_options.OPTION_POINT(help='Radii r of a Gauss point to test against '
                        'the preimage of S_m (with --matrix)')
@cli_options.OPTION_FIELD()
@cli_options.OPTION_RENDER()
@cli_options.OPTION_OUT()
@cli_options.cli_errors
def skeleton_preimage(ctx, poly, separators, range_, matrix, constants,
                      box, point, field, render, out):
    """Skeleton preimage of a plane curve or of a monomial map"""

    field = load_field(field)

    if poly is not None:
        if range_ is None:
            raise click.UsageError('--range is required with --poly')
        P = ValuedPolynomial.parse(poly, field, CURVE_VARIABLES)
        lower, upper = range_
        if separators:
            E = [ValuedPolynomial.parse(text, field, CURVE_VARIABLES)
                 for text in parse_list(separators, ';')]
        else:
            E = find_separators(P, lower, upper)
        result = skeleton_preimage_curve(P, E, lower, upper)
        if render:
            render_set(result.carrier, render)
        cli_options.emit_artifact('skeleton-preimage', result.to_dict(), out)
        return

    if matrix is None:
        raise click.UsageError('Give either --poly or --matrix')

    phi = MonomialMap(parse_matrix(matrix),
                      parse_list(constants) if constants else None, field)
    if point is not None:
        r = parse_point(point)
        cli_options.emit_artifact('skeleton-preimage', {
            'map': phi.to_dict(),
            'point': [t.to_dict() for t in r],
            'member': skeleton_membership_monomial(phi, r)
        }, out)
        return

    if box is None:
        raise click.UsageError('--box is required with --matrix')

    polytope, f = preimage_skeleton_monomial(phi, parse_box(box, phi.n))
    data = {
        'map': phi.to_dict(),
        'polytope': polytope.to_dict(),
        'empty': f is None,
        'immersion': f is not None and is_piecewise_immersion(f)
    }
    if f is None:
        data['diagnostic'] = 'singular exponent matrix: no skeleton point ' \
                             'with independent coordinates maps to S_n'
    else:
        data['pieces'] = f.to_dict()['forms']
    if render and f is not None:
        render_set(polytope.carrier, render)
    cli_options.emit_artifact('skeleton-preimage', data, out)


@click.command('stabilize')
@click.pass_context
@click.option('--a', 'a', required=True,
              help='Element a of K[X] in Y^2 - a, e.g. "X*(X-1)"')
@cli_options.OPTION_RANGE()
@cli_options.OPTION_FIELD()
@cli_options.OPTION_OUT()
@cli_options.cli_errors
def stabilize(ctx, a, range_, field, out):
    """Base-change stabilization of the extension count of Y^2 - a"""

    lower, upper = range_
    cli_options.emit_artifact('stabilize', base_change_stabilization_demo(
        a, lower, upper, field), out)
