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

from tropskel.gaussfield import (UnsupportedResidueFieldError,
                                 ValuedPolynomial,
                                 WildOrDeepRamificationError,
                                 extension_count_profile)
from tropskel.linarith import (DefinableSet, DimensionMismatchError,
                               membership)
from tropskel.mpolytope import is_piecewise_immersion
from tropskel.ovalgroup import GroupElement, IndependenceError
from tropskel.plugin import load_field
from tropskel.skeleton import (IncompatibleChartsError, MonomialMap,
                               SeparationError, SingularMapError,
                               SkeletonEdge, SkeletonPoint,
                               base_change_stabilization_demo,
                               find_separators, independent_prime,
                               parse_matrix,
                               preimage_skeleton_monomial,
                               skeleton_membership_monomial,
                               skeleton_preimage_curve,
                               splitting_radicands,
                               union_skeleton_preimages)

TRIVIAL = load_field('Q-trivial')
VARIABLES = ('X', 'Y')
CURVE = 'Y^2 - X*(X-1)'
HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def poly(text, field=TRIVIAL):
    return ValuedPolynomial.parse(text, field, VARIABLES)


def element(q):
    return GroupElement.from_rational(q)


def counts(profile):
    return [p['count'] for p in profile['pieces']]


def test_monomial_map():
    """Test suite for monomial maps of tori"""

    phi = MonomialMap(parse_matrix('1,1;1,-1'))
    assert phi.matrix == [[1, 1], [1, -1]]
    assert (phi.m, phi.n) == (2, 2)
    assert phi.rank() == 2
    phi.check_invertible()

    image = phi.act([2, 2])
    assert isinstance(image, SkeletonPoint)
    assert image.r == [element(4), GroupElement.one()]
    assert phi.act(SkeletonPoint([2, 1])).r == [element(2), element(2)]

    # |5| = 1/5 over Q_5
    padic = load_field({'field': 'Q-padic', 'p': 5})
    scaled = MonomialMap([[1, 0], [0, 1]], ['5', 1], padic)
    assert scaled.abs_constants() == [element(Fraction(1, 5)),
                                      GroupElement.one()]
    assert scaled.act([1, 1]).r == [element(Fraction(1, 5)),
                                    GroupElement.one()]

    # (A o B)(t) = A(B(t)): exponents multiply, constants are carried
    A = MonomialMap([[1, 1], [0, 1]], [2, 3])
    B = MonomialMap([[1, 0], [1, 1]], [5, 7])
    AB = A.compose(B)
    assert AB.matrix == [[2, 1], [1, 1]]
    assert AB.constants == [70, 21]

    assert [str(g) for g in MonomialMap([[2, 1]]).monomials()] == \
        ['T1^2*T2']

    with pytest.raises(SingularMapError):
        MonomialMap([[1, 1], [1, 1]]).check_invertible()
    with pytest.raises(SingularMapError):
        MonomialMap([[1, 1]]).check_invertible()
    with pytest.raises(ValueError):
        MonomialMap([[1, HALF]])
    with pytest.raises(ValueError):
        MonomialMap([[1, 1], [1]])
    with pytest.raises(ValueError):
        MonomialMap([[1]], ['0'])
    with pytest.raises(DimensionMismatchError):
        MonomialMap([[1, 0], [0, 1]], [1])
    with pytest.raises(DimensionMismatchError):
        phi.act([2])
    with pytest.raises(DimensionMismatchError):
        A.compose(MonomialMap([[1]]))


def test_skeleton_membership():
    """Test suite for membership of Gauss points in monomial preimages"""

    # 2 and 3 are independent, the rank decides
    assert skeleton_membership_monomial(MonomialMap([[1, 1], [1, -1]]),
                                        [2, 3])
    assert not skeleton_membership_monomial(MonomialMap([[1, 1], [2, 2]]),
                                            [2, 3])
    assert skeleton_membership_monomial(MonomialMap([[1, 1]]), [2, 3])
    assert not skeleton_membership_monomial(
        MonomialMap([[1, 0], [0, 1], [1, 1]]), [2, 3])

    # 4 = 2^2 and radius 1 make the criterion inconclusive
    with pytest.raises(IndependenceError):
        skeleton_membership_monomial(MonomialMap([[1, 0], [0, 1]]), [2, 4])
    with pytest.raises(IndependenceError):
        skeleton_membership_monomial(MonomialMap([[1, 0], [0, 1]]), [1, 2])

    with pytest.raises(DimensionMismatchError):
        skeleton_membership_monomial(MonomialMap([[1, 1]]), [2])

    assert SkeletonPoint([2, 3]).evaluate(
        ValuedPolynomial.parse('1 + T1*T2', TRIVIAL)) == element(6)


def test_preimage_monomial():
    """Test suite for skeleton preimages of monomial maps"""

    sides = [(HALF, 2), (HALF, 2)]
    phi = MonomialMap([[1, 1], [0, 1]])

    polytope, f = preimage_skeleton_monomial(phi, sides)
    assert polytope.bounds == [(element(HALF), element(2))] * 2
    assert f.evaluate([2, HALF]) == [GroupElement.one(), element(HALF)]
    assert is_piecewise_immersion(f)

    # a singular map hits no point of S_2 with independent coordinates
    polytope, f = preimage_skeleton_monomial(MonomialMap([[1, 1], [1, 1]]),
                                             sides)
    assert f is None
    assert polytope.is_empty()

    with pytest.raises(DimensionMismatchError):
        preimage_skeleton_monomial(phi, [(HALF, 2)])


def test_union_skeleton_preimages():
    """Test suite for unions of charted skeleton pieces"""

    phi = MonomialMap([[1, 1], [0, 1]])
    first = preimage_skeleton_monomial(phi, [(HALF, 2), (HALF, 2)])
    second = preimage_skeleton_monomial(phi, [(1, 4), (1, 4)])

    complex_ = union_skeleton_preimages([first, second])
    assert membership(complex_.carrier, [HALF, HALF])
    assert membership(complex_.carrier, [3, 3])
    assert not membership(complex_.carrier, [3, HALF])
    assert complex_.dimension() == 2

    # growing boxes with a sheared chart are pairwise compatible
    parts = [preimage_skeleton_monomial(phi, [(1 / Fraction(R), R)] * 2)
             for R in (2, 4, 8)]
    assert union_skeleton_preimages(parts).dimension() == 2

    # |3| = 1/3 over Q_3 is outside the parameter group 2^Q of the boxes
    padic = load_field({'field': 'Q-padic', 'p': 3})
    shifted = MonomialMap([[1, 0], [0, 1]], [3, 1], padic)
    other = preimage_skeleton_monomial(shifted, [(HALF, 2), (HALF, 2)])
    plain = preimage_skeleton_monomial(MonomialMap([[1, 0], [0, 1]]),
                                       [(HALF, 2), (HALF, 2)])
    with pytest.raises(IncompatibleChartsError) as err:
        union_skeleton_preimages([plain, other])
    assert err.value.pair == (0, 1)

    with pytest.raises(ValueError):
        union_skeleton_preimages([])


def test_skeleton_edge():
    """Test suite for skeleton edges"""

    edge = SkeletonEdge(element(1), element(4), [1], [element(2)])
    assert edge.n == 2
    assert edge.point(2) == (element(2), element(4))
    assert edge.covers(element(4))
    assert not edge.covers(element(8))

    segment = DefinableSet.conjunction(2, edge.atoms())
    assert membership(segment, [2, 4])
    assert not membership(segment, [2, 2])
    assert not membership(segment, [8, 16])

    assert edge.same_law(SkeletonEdge(element(4), element(8), [1],
                                      [element(2)]))
    assert edge.to_dict()['laws'] == [{'constant': '2', 'exponent': '1'}]


def test_skeleton_preimage_curve():
    """Test suite for skeleton preimages of plane curves"""

    P = poly(CURVE)
    result = skeleton_preimage_curve(P, [poly('Y'), poly('Y - X')],
                                     QUARTER, 4)

    assert result.coordinates == ['X', 'Y', '-X + Y']
    assert [str(b) for b in result.profile.breakpoints] == ['1']

    # one ramified edge below |X| = 1, two edges above
    assert len(result.edges) == 3
    below = result.edges[0]
    assert (below.lower, below.upper) == (element(QUARTER), element(1))
    assert below.exponents == (HALF, HALF)
    assert set(e.exponents for e in result.edges[1:]) == {(1, 1), (1, 0)}

    # the three edges meet at (1, 1, 1)
    one = GroupElement.one()
    assert result.vertices == [(one, one, one)]
    assert result.is_tree()
    assert result.is_immersion()
    assert result.validate()

    assert len(result.fiber(HALF)) == 1
    assert len(result.fiber(2)) == 2
    assert set(result.fiber(2)) == {(element(2), element(2), element(2)),
                                    (element(2), element(2), one)}

    data = result.to_dict()
    assert [f['count'] for f in data['fibers']] == [1, 2]
    assert data['tree']
    assert data['immersion']
    assert len(data['vertices']) == 1

    # a graph Y = X is one edge, the degenerate breakpoint merges away
    line = skeleton_preimage_curve(poly('Y - X'), [poly('Y')], QUARTER, 4)
    assert len(line.edges) == 1
    assert line.edges[0].lower == element(QUARTER)
    assert line.edges[0].upper == element(4)
    assert line.vertices == []
    assert line.is_tree()

    # |Y| = |X| on both branches above |X| = 1
    with pytest.raises(SeparationError):
        skeleton_preimage_curve(P, [poly('Y')], QUARTER, 4)


def test_find_separators():
    """Test suite for the separating set search"""

    P = poly(CURVE)
    assert find_separators(P, QUARTER, 4) == [poly('Y - X')]

    # only Y on offer
    with pytest.raises(SeparationError):
        find_separators(P, QUARTER, 4, candidates=[poly('Y')])


def test_stabilization():
    """Test suite for base-change stabilization of Y^2 - a"""

    report = base_change_stabilization_demo('X*(X-1)', QUARTER, 4)
    assert counts(report['before']) == [1, 1, 2]
    # W^2 + 1 appears below |U| = 1 over the ramified base X = U^2
    assert report['extension'] == ['-1']
    assert report['further_extension'] == ['-1', '2']
    assert counts(report['after']) == [1, 1, 2]
    assert counts(report['further']) == [1, 1, 2]
    assert report['after']['pieces'][1] == {'at': '1', 'count': 1}
    assert counts(report['ramified']) == [1, 1, 2]
    assert counts(report['ramified_after']) == [2, 1, 2]
    assert report['ramified']['range'] == ['2^-1', '2']
    assert report['stable']
    assert report['notes'] == [
        'lt ]2^-2; 1[: ramified along |X|, no constant extension splits '
        'it (2 extensions over X = U^2)']

    # Y^2 + X^2 + 1: W^2 + 1 splits over Q(i) on both sides
    report = base_change_stabilization_demo('-X^2 - 1', QUARTER, 4)
    assert report['extension'] == ['-1']
    assert counts(report['before']) == [1, 1, 1]
    assert counts(report['after']) == [2, 1, 2]
    assert counts(report['further']) == [2, 1, 2]
    assert counts(report['ramified_after']) == [2, 1, 2]
    assert report['stable']
    assert report['notes'] == [
        'lt ]2^-2; 1[: splits after a finite separable extension of the '
        'constants',
        'gt ]1; 2^2[: splits after a finite separable extension of the '
        'constants']

    # Y^2 - 2 needs sqrt(2), the further extension adjoins sqrt(3)
    report = base_change_stabilization_demo('2', QUARTER, 4)
    assert report['before']['breakpoints'] == []
    assert report['extension'] == ['2']
    assert report['further_extension'] == ['2', '3']
    assert counts(report['before']) == [1]
    assert counts(report['after']) == [2]
    assert counts(report['further']) == [2]
    assert report['notes'] == [
        'between ]2^-2; 2^2[: splits after a finite separable extension '
        'of the constants']

    report = base_change_stabilization_demo('1', QUARTER, 4)
    assert report['extension'] == []
    assert report['further_extension'] == ['2']
    assert counts(report['before']) == counts(report['after']) == [2]
    assert report['notes'] == []

    # Y^2 - X only splits over the ramified base
    report = base_change_stabilization_demo('X', QUARTER, 4)
    assert report['extension'] == []
    assert counts(report['before']) == [1, 1, 1]
    assert counts(report['after']) == [1, 1, 1]
    assert counts(report['ramified']) == [2, 2, 2]
    assert report['stable']
    assert report['notes'] == [
        '{}: ramified along |X|, no constant extension splits it '
        '(2 extensions over X = U^2)'.format(where)
        for where in ('lt ]2^-2; 1[', 'gt ]1; 2^2[')]

    with pytest.raises(WildOrDeepRamificationError):
        base_change_stabilization_demo('X', QUARTER, 4,
                                       {'field': 'Q-padic', 'p': 2})
    with pytest.raises(UnsupportedResidueFieldError):
        base_change_stabilization_demo('2', QUARTER, 4,
                                       {'field': 'Q-padic', 'p': 5})
    with pytest.raises(ValueError):
        base_change_stabilization_demo('X*Y', QUARTER, 4)
    with pytest.raises(ValueError):
        base_change_stabilization_demo('0', QUARTER, 4)


def test_splitting_radicands():
    """Test suite for the square roots splitting residual factors"""

    P = poly('Y^2 + X^2 + 1')
    profile = extension_count_profile(P, QUARTER, 4)
    assert splitting_radicands(P, profile) == [-1]
    assert splitting_radicands(poly(CURVE),
                               extension_count_profile(poly(CURVE),
                                                       QUARTER, 4)) == []

    P = poly('Y^2 - 12')
    assert splitting_radicands(P, extension_count_profile(P, QUARTER,
                                                          4)) == [3]

    assert independent_prime([]) == 2
    assert independent_prime([-1, 2]) == 3
    assert independent_prime([6, 5]) == 7
