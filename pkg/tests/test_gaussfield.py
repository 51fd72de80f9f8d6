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

from fractions import Fraction

import pytest

from tropskel.gaussfield import (GaussLattice, NotSquarefreeError,
                                 UnsupportedResidueFieldError,
                                 ValuedPolynomial, ZeroPolynomialError,
                                 branch_value, count_gauss_extensions,
                                 extension_count_profile, extension_report,
                                 gauss_branches, gauss_eval, gauss_residue,
                                 newton_polygon, residues_alg_independent,
                                 sample_between, separation_failures,
                                 verify_separating_set)
from tropskel.linarith import DimensionMismatchError
from tropskel.ovalgroup import GroupElement
from tropskel.plugin import load_field
from tropskel.selftest import random_point, random_polynomial

TRIVIAL = load_field('Q-trivial')
PADIC_5 = load_field({'field': 'Q-padic', 'p': 5})
PADIC_2 = load_field({'field': 'Q-padic', 'p': 2})
SERIES = load_field({'field': 'Q-series', 'r': '1/2'})

CURVE = 'Y^2 - X*(X-1)'
HALF = Fraction(1, 2)


def element(q):
    return GroupElement.from_rational(q)


def test_valued_polynomial():
    """Test suite for polynomial parsing and arithmetic"""

    P = ValuedPolynomial.parse(CURVE, TRIVIAL)
    assert P.variables == ('X', 'Y')
    assert P.terms == {(0, 2): 1, (1, 0): 1, (2, 0): -1}
    assert P.degree(1) == 2
    assert P.min_degree(0) == 0

    X = ValuedPolynomial.variable(TRIVIAL, P.variables, 0)
    Y = ValuedPolynomial.variable(TRIVIAL, P.variables, 1)
    assert Y ** 2 - X * (X - 1) == P
    assert (X + 1) ** 2 == X * X + 2 * X + 1

    # Y -> Y + X
    assert P.shift(1, X) == Y ** 2 + 2 * X * Y + X

    # Laurent monomials are fine, fractional ones are not
    assert ValuedPolynomial.parse('X^-1 + 1', TRIVIAL).min_degree(0) == -1
    with pytest.raises(ValueError):
        ValuedPolynomial.parse('X^(1/2)', TRIVIAL)
    with pytest.raises(ValueError):
        ValuedPolynomial.parse('Z + 1', TRIVIAL, variables=('X', 'Y'))
    with pytest.raises(ValueError):
        ValuedPolynomial.parse('X +* 1', TRIVIAL)
    with pytest.raises(ValueError):
        ValuedPolynomial.parse('1 + 5*T', TRIVIAL) + \
            ValuedPolynomial.parse('1 + 5*T', PADIC_5)

    # eps is a constant of the series field, not a variable
    Q = ValuedPolynomial.parse('eps*X + 1', SERIES)
    assert Q.variables == ('X',)
    assert Q.value((1,)) == element(Fraction(1, 2))

    assert ValuedPolynomial(TRIVIAL, ('X',), {(1,): 0}).is_zero()
    with pytest.raises(DimensionMismatchError):
        ValuedPolynomial(TRIVIAL, ('X',), {(1, 1): 1})


def test_gauss_eval():
    """Test suite for Gauss valuations"""

    P = ValuedPolynomial.parse('1 + T', TRIVIAL)
    assert gauss_eval(P, [2]) == element(2)
    assert gauss_eval(P, [Fraction(1, 2)]) == GroupElement.one()
    assert gauss_eval(P, 2) == element(2)

    # |5| = 1/5 balances the radius 5
    Q = ValuedPolynomial.parse('1 + 5*T', PADIC_5)
    assert gauss_eval(Q, [5]) == GroupElement.one()
    assert gauss_eval(Q, [25]) == element(5)
    assert gauss_eval(Q, [1]) == GroupElement.one()

    # the corner of 1 + 5 T sits at t = 5
    polygon = newton_polygon(Q, [])
    assert len(polygon.segments) == 1
    assert polygon.segments[0].slope == element(5)

    assert gauss_eval(ValuedPolynomial.parse('eps*X + 1', SERIES),
                      [4]) == element(2)

    assert gauss_eval(ValuedPolynomial(TRIVIAL, ('T',)), [2]) is None
    with pytest.raises(DimensionMismatchError):
        gauss_eval(P, [2, 2])


def test_gauss_residue():
    """Test suite for graded residues"""

    Q = ValuedPolynomial.parse('1 + 5*T', PADIC_5)
    residue = gauss_residue(Q, [5])
    assert residue.degree == GroupElement.one()
    assert residue.terms == {(0,): (0, 1), (1,): (1, 1)}

    # off the corner a single monomial dominates
    assert list(gauss_residue(Q, [25]).terms) == [(1,)]
    assert list(gauss_residue(Q, [1]).terms) == [(0,)]

    with pytest.raises(ZeroPolynomialError):
        gauss_residue(ValuedPolynomial(PADIC_5, ('T',)), [5])

    assert residues_alg_independent(['S1', 'S2'])
    assert residues_alg_independent(['S1 + S2', 'S1*S2'])
    assert not residues_alg_independent(['S1', 'S1^2'])
    assert not residues_alg_independent(['S1*S2', 'S1^2*S2^2'])
    assert not residues_alg_independent(['S1', 'S1 + 1', 'S1 + 2'])
    assert residues_alg_independent([])

    assert residues_alg_independent(['S'], characteristic=5)
    with pytest.raises(UnsupportedResidueFieldError):
        residues_alg_independent(['S^5'], characteristic=5)


def test_gauss_lattice():
    """Test suite for value lattices of Gauss points"""

    lattice = GaussLattice(TRIVIAL, [element(4)])
    assert lattice.independent
    assert lattice.ramification(element(2)) == 2
    assert lattice.ramification(element(8)) == 2
    assert lattice.ramification(element(16)) == 1

    padic = GaussLattice(PADIC_2, [])
    assert padic.has_pi
    assert padic.ramification(GroupElement.parse('2^(1/3)')) == 3

    # |pi| = 1/2 is divisible in the series field
    series = GaussLattice(SERIES, [element(3)])
    assert series.divisible_pi
    assert series.ramification(GroupElement.parse('2^(1/3)') * element(3)) == 1

    # radius 1 adds nothing to the trivial value group
    assert not GaussLattice(TRIVIAL, [GroupElement.one()]).independent

    # 2^-1 and 2^2 generate 2^Z
    dependent = GaussLattice(PADIC_2, [element(4)])
    assert not dependent.independent
    assert dependent.ramification(GroupElement.parse('2^(1/2)')) == 2

    with pytest.raises(ValueError):
        GaussLattice(TRIVIAL, [GroupElement.generator('w1')])


def test_gauss_branches():
    """Test suite for the extensions of Gauss valuations"""

    P = ValuedPolynomial.parse(CURVE, TRIVIAL)

    # |X| = 4: Y = +/- X up to smaller terms
    branches = gauss_branches(P, [4])
    assert len(branches) == 2
    assert all(b.slope == element(4) for b in branches)
    assert all(b.ramification == 1 for b in branches)
    assert len(set(b.key for b in branches)) == 2

    # |X| = 1/4: Y^2 = X up to smaller terms, ramified
    branches = gauss_branches(P, [Fraction(1, 4)])
    assert len(branches) == 1
    assert branches[0].ramification == 2
    assert branches[0].slope == element(Fraction(1, 2))

    report = extension_report(P, [4])
    assert report['count'] == 2
    assert report['degree'] == 2
    assert report['sum_ef'] == '2'
    assert report['fundamental_equality']

    report = extension_report(P, [Fraction(1, 4)])
    assert report['count'] == 1
    assert report['fundamental_equality']

    # at |X| = 1 the residual polynomial V^2 - S1^2 + S1 is irreducible
    assert count_gauss_extensions(P, [1]) == 1

    with pytest.raises(NotSquarefreeError):
        gauss_branches(ValuedPolynomial.parse('(Y - X)^2', TRIVIAL), [2])
    with pytest.raises(ValueError):
        gauss_branches(ValuedPolynomial.parse('X + 1', TRIVIAL), [2],
                       var='Y')


def test_branch_values():
    """Test suite for values along extensions and separating sets"""

    P = ValuedPolynomial.parse(CURVE, TRIVIAL)
    variables = P.variables
    Y = ValuedPolynomial.parse('Y', TRIVIAL, variables)
    Y_minus_X = ValuedPolynomial.parse('Y - X', TRIVIAL, variables)

    branches = gauss_branches(P, [4])

    # |Y| = |X| on both branches
    assert [branch_value(P, b, Y, [4]) for b in branches] == \
        [element(4)] * 2

    # Y - X is small along Y = X + ... and large along Y = -X + ...
    values = set(branch_value(P, b, Y_minus_X, [4]) for b in branches)
    assert values == {GroupElement.one(), element(4)}

    assert separation_failures(P, [Y], [4]) == [4]
    assert separation_failures(P, [Y], [Fraction(1, 4)]) == []
    assert verify_separating_set(P, [Y_minus_X], [2, 4, 8])

    # Y^2 - 1 over Q_3: the roots +1 and -1 differ by a unit, Y - 2 sees
    # |1 - 2| = 1 on one side and |-1 - 2| = 1/3 on the other
    padic_3 = load_field({'field': 'Q-padic', 'p': 3})
    Q = ValuedPolynomial.parse('Y^2 - 1', padic_3, ('Y',))
    branches = gauss_branches(Q, [])
    assert len(branches) == 2
    E = [ValuedPolynomial.parse('Y - 2', padic_3, ('Y',))]
    values = set(branch_value(Q, b, E[0], []) for b in branches)
    assert values == {GroupElement.one(), element(Fraction(1, 3))}
    assert verify_separating_set(Q, E, [[]])


def test_profile():
    """Test suite for extension count profiles"""

    P = ValuedPolynomial.parse(CURVE, TRIVIAL)
    profile = extension_count_profile(P, Fraction(1, 4), 4)

    assert [str(b) for b in profile.breakpoints] == ['1']
    assert [p.kind for p in profile.pieces] == ['lt', 'at', 'gt']
    assert [p.count for p in profile.pieces] == [1, 1, 2]

    assert profile.count_at(Fraction(1, 2)) == 1
    assert profile.count_at(1) == 1
    assert profile.count_at(2) == 2
    with pytest.raises(ValueError):
        profile.count_at(8)

    data = profile.to_dict()
    assert data['breakpoints'] == ['1']
    assert data['pieces'] == [{'lt': '1', 'count': 1},
                              {'at': '1', 'count': 1},
                              {'gt': '1', 'count': 2}]

    # Y - X has a single extension everywhere, r = 1 still splits the range
    line = ValuedPolynomial.parse('Y - X', TRIVIAL)
    profile = extension_count_profile(line, Fraction(1, 4), 4)
    assert [p.count for p in profile.pieces] == [1, 1, 1]

    with pytest.raises(ValueError):
        extension_count_profile(P, 4, Fraction(1, 4))


def test_sample_between():
    """Test suite for generic sample radii"""

    one = GroupElement.one()
    assert sample_between(TRIVIAL, one, element(4)) == element(2)

    # every power of 2 is in the value group of Q_2
    assert sample_between(PADIC_2, one, element(4)) == \
        GroupElement({'2': 1, '3': Fraction(1, 2)})


def test_newton_polygon_unit_scaling(rng):
    """Test suite for Newton polygons under Y -> u Y with |u| = 1"""

    for field in (TRIVIAL, PADIC_5):
        for _ in range(8):
            P = random_polynomial(rng, field, 2, 5)
            u = field.lift(rng.choice([2, 3, 4]))
            scaled = ValuedPolynomial(field, P.variables, {
                exps: c * u ** exps[1] for exps, c in P.terms.items()})
            r = random_point(rng, 1)

            before = newton_polygon(P, r, var=1)
            after = newton_polygon(scaled, r, var=1)
            assert [(s.slope, s.length) for s in before.segments] == \
                [(s.slope, s.length) for s in after.segments], (P, r)
            assert [v for _, v in before.points] == \
                [v for _, v in after.points]


def test_constant_extension():
    """Test suite for square roots adjoined to the constants"""

    gaussian = load_field({'field': 'Q-trivial', 'adjoin': [-1]})
    assert gaussian.to_dict() == {'field': 'Q-trivial', 'adjoin': ['-1']}
    assert gaussian != TRIVIAL

    P = ValuedPolynomial.parse('Y^2 + X^2 + 1', TRIVIAL)
    Q = P.base_change(gaussian)
    assert Q.field == gaussian
    assert Q.terms == P.terms
    with pytest.raises(ValueError):
        P + Q

    # W^2 + 1 splits over Q(i) away from |X| = 1
    assert count_gauss_extensions(P, [2]) == 1
    assert count_gauss_extensions(Q, [2]) == 2
    assert count_gauss_extensions(Q, [HALF]) == 2
    assert count_gauss_extensions(Q, [1]) == 1
    assert [b.ramification for b in gauss_branches(Q, [2])] == [1, 1]

    assert P.ramify(0, 2, 'U') == ValuedPolynomial.parse(
        'Y^2 + U^4 + 1', TRIVIAL, ('U', 'Y'))
    with pytest.raises(ValueError):
        P.ramify(0, 0)

    with pytest.raises(ValueError):
        load_field({'field': 'Q-trivial', 'adjoin': [0]})
    with pytest.raises(ValueError):
        load_field({'field': 'Q-padic', 'p': 5, 'adjoin': [2]})
