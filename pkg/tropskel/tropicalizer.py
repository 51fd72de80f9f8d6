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
Tropicalization of hypersurfaces: corner loci, their restriction to
monomially constrained boxes and local germs
"""

from fractions import Fraction
import itertools
import logging

import click
from parse import parse

from tropskel import cli_options
from tropskel.gaussfield import ValuedPolynomial, ZeroPolynomialError
from tropskel.linarith import (AffForm, Atom, DefinableSet,
                               DimensionMismatchError, dimension,
                               dimension_at, equals, intersection,
                               is_connected, is_pure_dimensional,
                               membership, parse_point, project)
from tropskel.mpolytope import (UnboundedError, decompose_set,
                                make_polytope, monomial_forms, rank_of,
                                star)
from tropskel.ovalgroup import GroupElement, ValueGroupDesc, compare
from tropskel.plugin import load_field
from tropskel.render import render_set
from tropskel.util import DomainError, parse_list, parse_range

LOGGER = logging.getLogger(__name__)

GRID_STEPS = 101


class TropicalHypersurface:
    """Corner locus of a polynomial with its cell decomposition"""

    def __init__(self, polynomial, carrier):
        """
        Initialize object

        :param polynomial: source `ValuedPolynomial`
        :param carrier: closed `DefinableSet` of the corner locus

        :returns: `tropskel.tropicalizer.TropicalHypersurface`
        """

        self.polynomial = polynomial
        self.carrier = carrier
        self._complex = None

    @property
    def n(self):
        return self.carrier.n

    @property
    def complex(self):
        if self._complex is None:
            self._complex = decompose_set(self.carrier)
        return self._complex

    def dimension(self):
        return dimension(self.carrier)

    def is_connected(self):
        return is_connected(self.carrier)

    def contains(self, r):
        return membership(self.carrier, r)

    def to_dict(self):
        return {
            'polynomial': self.polynomial.to_dict(),
            'carrier': self.carrier.to_dict(),
            'complex': self.complex.to_dict(),
            'dimension': self.dimension(),
            'connected': self.is_connected()
        }

    def __repr__(self):
        return '<TropicalHypersurface> {} in n={}'.format(self.polynomial,
                                                          self.n)


def _monomial_forms(P):
    return [AffForm(exps, P.value(exps)) for exps in P.terms]


def locus_group(P):
    """Parameter group generated by the field and the coefficient values"""

    return P.field.value_group().join(P.value(exps) for exps in P.terms)


def corner_locus(P):
    """
    Set of radii where the maximum of the monomial values is attained at
    least twice

    :param P: `ValuedPolynomial` with at least one monomial

    :returns: `TropicalHypersurface`
    """

    if P.is_zero():
        msg = 'The zero polynomial has no corner locus'
        LOGGER.error(msg)
        raise ZeroPolynomialError(msg)

    n = P.nvars
    group = locus_group(P)
    forms = _monomial_forms(P)

    disjuncts = []
    for i, j in itertools.combinations(range(len(forms)), 2):
        tie = forms[i] * forms[j].inverse()
        atoms = [Atom(tie), Atom(tie.inverse())]
        atoms.extend(Atom(forms[k] * forms[i].inverse())
                     for k in range(len(forms)) if k not in (i, j))
        disjuncts.append(atoms)

    carrier = DefinableSet(n, disjuncts, group)
    LOGGER.debug('Corner locus of {}: {} disjuncts'.format(
        P, len(carrier.disjuncts)))
    return TropicalHypersurface(P, carrier)


def box_set(bounds, group=None):
    """
    Closed box s_i <= t_i <= S_i

    :param bounds: `list` of `(s_i, S_i)`, `None` for a missing side

    :returns: `DefinableSet`
    """

    n = len(bounds)
    atoms = []
    for i, (low, high) in enumerate(bounds):
        if low is None:
            raise UnboundedError(i, '-')
        if high is None:
            raise UnboundedError(i, '+')
        low, high = GroupElement.coerce(low), GroupElement.coerce(high)
        if compare(low, high) > 0:
            msg = 'Empty box side [{}; {}]'.format(low, high)
            LOGGER.error(msg)
            raise ValueError(msg)
        atoms.append(Atom(AffForm.coordinate(n, i, high.inverse())))
        atoms.append(Atom(AffForm.coordinate(n, i, low.inverse()).inverse()))

    group = (group or ValueGroupDesc()).join(
        b for pair in bounds for b in pair)
    return DefinableSet.conjunction(n, atoms, group)


def monomial_constraint(g, gamma, strict=False):
    """
    Atom |g| <= gamma (or < gamma) for a monomial g

    :param g: `ValuedPolynomial` with a single monomial
    :param gamma: bound (`GroupElement` or rational-like)
    :param strict: `bool` strict inequality

    :returns: `Atom`
    """

    if len(g.terms) != 1:
        msg = 'Constraint |{}| <= {} is not monomial'.format(g, gamma)
        LOGGER.error(msg)
        raise UnsupportedConstraintError(msg)

    (exps, _), = g.terms.items()
    gamma = GroupElement.coerce(gamma)
    return Atom(AffForm(exps, g.value(exps) / gamma), strict)


def tropicalize_box(P, bounds, constraints=()):
    """
    Image of the hypersurface of P inside a monomially constrained box

    :param P: `ValuedPolynomial` in n variables
    :param bounds: `list` of n `(s_i, S_i)`
    :param constraints: extra monomial `Atom` constraints

    :returns: `CPolytope` of dimension at most n - 1
    """

    if len(bounds) != P.nvars:
        msg = '{} box sides for {} variables'.format(len(bounds), P.nvars)
        LOGGER.error(msg)
        raise DimensionMismatchError(msg)

    locus = corner_locus(P)
    box = box_set(bounds, locus.carrier.group)
    if constraints:
        box = DefinableSet(box.n, [box.disjuncts[0] + tuple(constraints)],
                           box.group.join(a.form.constant
                                          for a in constraints))

    image = intersection(locus.carrier, box)
    polytope = make_polytope(image, box.group.join(locus.carrier.group
                                                   .constants))

    d = dimension(polytope.carrier)
    if d > P.nvars - 1:
        msg = 'Image of {} in the box has dimension {} > {}'.format(
            P, d, P.nvars - 1)
        LOGGER.error(msg)
        raise DimensionBoundError(msg)
    return polytope


def local_germ(P, xi):
    """
    Local cone of the corner locus at one of its points

    :param P: `ValuedPolynomial`
    :param xi: point of the corner locus

    :returns: `DefinableSet` cone of directions
    """

    locus = corner_locus(P)
    xi = [GroupElement.coerce(t) for t in xi]
    if not locus.contains(xi):
        msg = 'Point {} is not on the corner locus of {}'.format(
            [str(t) for t in xi], P)
        LOGGER.error(msg)
        raise NotOnLocusError(msg)
    return star(locus.carrier, xi)


def local_dimension(P, xi):
    """Local dimension of the corner locus at xi"""

    locus = corner_locus(P)
    if not locus.contains(xi):
        msg = 'Point is not on the corner locus of {}'.format(P)
        LOGGER.error(msg)
        raise NotOnLocusError(msg)
    return dimension_at(locus.carrier, xi)


def monomial_image(matrix, constants=None):
    """
    Image of the whole torus under t -> cst * t^M

    :param matrix: m x n rational matrix
    :param constants: `list` of m constants

    :returns: `DefinableSet` in m coordinates
    """

    n = len(matrix[0])
    forms = monomial_forms(matrix, constants, n)
    m = len(forms)

    atoms = []
    for k, form in enumerate(forms):
        s = [0] * m
        s[k] = -1
        graph = AffForm(form.coefficients + tuple(s), form.constant)
        atoms.extend([Atom(graph), Atom(graph.inverse())])

    group = ValueGroupDesc().join(f.constant for f in forms)
    lifted = DefinableSet.conjunction(n + m, atoms, group)
    return project(lifted, range(n, n + m))


def full_image_check(matrix, constants=None):
    """
    :param matrix: square rational matrix of a monomial self-map

    :returns: `bool` whether the image is the whole torus
    """

    image = monomial_image(matrix, constants)
    full = equals(image, DefinableSet.universe(image.n, image.group))
    LOGGER.debug('Monomial map of rank {}: full image {}'.format(
        rank_of(matrix), full))
    return full


def max_attained_twice(P, r):
    """
    Direct corner-locus predicate at one point

    :param P: `ValuedPolynomial`
    :param r: radii

    :returns: `bool`
    """

    values = []
    for exps in P.terms:
        value = P.value(exps)
        for t, e in zip(r, exps):
            if e:
                value = value * GroupElement.coerce(t) ** e
        values.append(value)

    if len(values) < 2:
        return False
    top = values[0]
    for value in values[1:]:
        if compare(value, top) > 0:
            top = value
    return sum(1 for v in values if compare(v, top) == 0) >= 2


def log_grid(lower, upper, steps=GRID_STEPS, n=2):
    """
    Points of the rational log-grid on [lower, upper]^n

    :returns: generator of `tuple` of `GroupElement`
    """

    lower, upper = GroupElement.coerce(lower), GroupElement.coerce(upper)
    ratio = upper / lower
    axis = [lower * ratio ** Fraction(k, steps - 1) for k in range(steps)]
    return itertools.product(axis, repeat=n)


def grid_oracle(P, lower, upper, steps=GRID_STEPS, locus=None):
    """
    Compare corner-locus membership with the direct predicate on a log
    grid

    :param P: `ValuedPolynomial`
    :param lower: grid lower end
    :param upper: grid upper end
    :param steps: points per axis

    :returns: `list` of disagreeing points
    """

    locus = locus or corner_locus(P)
    mismatches = []
    for point in log_grid(lower, upper, steps, P.nvars):
        if locus.contains(point) != max_attained_twice(P, point):
            mismatches.append(point)
    if mismatches:
        LOGGER.warning('{} grid disagreements'.format(len(mismatches)))
    return mismatches


def is_pure(P):
    """Corner locus purely of dimension n - 1"""

    locus = corner_locus(P)
    if len(P.terms) < 2:
        return False
    return is_pure_dimensional(locus.carrier, P.nvars - 1)


class NotOnLocusError(DomainError):
    """point not on the corner locus"""
    pass


class UnsupportedConstraintError(DomainError):
    """non-monomial domain constraint"""
    pass


class DimensionBoundError(DomainError):
    """tropical image above the hypersurface dimension"""
    pass


def parse_box(text, n):
    """
    Parse `s1:S1;s2:S2` (a single range applies to every coordinate)

    :param text: box text
    :param n: dimension

    :returns: `list` of `(GroupElement, GroupElement)`
    """

    sides = [parse_range(side) for side in parse_list(text, ';')]
    if len(sides) == 1:
        sides = sides * n
    return sides


def parse_constraint(text, field, variables):
    """
    Parse `g <= gamma` or `g < gamma` into an atom

    :returns: `Atom`
    """

    parsed = parse('{g}<={gamma}', text.replace(' ', ''))
    strict = False
    if parsed is None:
        parsed = parse('{g}<{gamma}', text.replace(' ', ''))
        strict = True
    if parsed is None:
        msg = 'Invalid constraint {!r}'.format(text)
        LOGGER.error(msg)
        raise ValueError(msg)

    g = ValuedPolynomial.parse(parsed['g'], field, variables)
    return monomial_constraint(g, GroupElement.parse(parsed['gamma']),
                               strict)


@click.command('trop')
@click.pass_context
@cli_options.OPTION_POLY()
@cli_options.OPTION_FIELD()
@click.option('--box', help='Box s:S per coordinate, separated by ";"')
@click.option('--constraint', 'constraints', multiple=True,
              help='Monomial constraint such as "T1*T2 <= 2"')
@cli_options.OPTION_RENDER()
@cli_options.OPTION_OUT()
@cli_options.cli_errors
def trop(ctx, poly, field, box, constraints, render, out):
    """Corner locus of a polynomial, optionally inside a box"""

    P = ValuedPolynomial.parse(poly, load_field(field))

    if box is None:
        if constraints:
            raise click.UsageError('--constraint needs --box')
        locus = corner_locus(P)
        data = locus.to_dict()
        carrier = locus.carrier
    else:
        atoms = [parse_constraint(c, P.field, P.variables)
                 for c in constraints]
        polytope = tropicalize_box(P, parse_box(box, P.nvars), atoms)
        carrier = polytope.carrier
        data = {
            'polynomial': P.to_dict(),
            'carrier': carrier.to_dict(),
            'polytope': polytope.to_dict(),
            'dimension': dimension(carrier)
        }

    if render:
        render_set(carrier, render)
    cli_options.emit_artifact('trop', data, out)


@click.command('star')
@click.pass_context
@cli_options.OPTION_POLY()
@cli_options.OPTION_FIELD()
@cli_options.OPTION_POINT(required=True)
@cli_options.OPTION_OUT()
@cli_options.cli_errors
def star_cli(ctx, poly, field, point, out):
    """Local germ of a corner locus at a point"""

    P = ValuedPolynomial.parse(poly, load_field(field))
    xi = parse_point(point)
    if len(xi) != P.nvars:
        raise click.BadParameter('Point of dimension {} for variables '
                                 '{}'.format(len(xi), ', '.join(P.variables)))

    cone = local_germ(P, xi)
    cli_options.emit_artifact('star', {
        'polynomial': P.to_dict(),
        'point': [t.to_dict() for t in xi],
        'cone': cone.to_dict(),
        'dimension': dimension(cone),
        'local_dimension': local_dimension(P, xi)
    }, out)
