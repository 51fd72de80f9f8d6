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

from tropskel.linarith import (AffForm, Atom, DefinableSet,
                               DimensionMismatchError, NotInSetError,
                               dimension, equals, membership, union)
from tropskel.mpolytope import (Chart, ConstantOutsideParameterGroupError,
                                PLMap, UnboundedError, atlas_compatible,
                                change_parameters, decompose, decompose_set,
                                image_monomial, is_piecewise_immersion,
                                make_polytope, merge_polytopes, rank_of, star)
from tropskel.ovalgroup import GroupElement, ValueGroupDesc, compare
from tropskel.selftest import SAMPLE_CONSTANTS

HALF = Fraction(1, 2)


def le(coefficients, constant=None, strict=False):
    return Atom(AffForm(coefficients, constant), strict)


def box(n, lower, upper):
    atoms = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        atoms.append(le(e, 1 / Fraction(upper)))
        atoms.append(le([-a for a in e], lower))
    return DefinableSet.conjunction(n, atoms)


def two_squares():
    """[1/2; 1] x [1/2; 1] and [1; 2] x [1/2; 1], glued along t1 = 1"""

    left = DefinableSet.conjunction(2, [
        le([1, 0]), le([-1, 0], HALF), le([0, 1]), le([0, -1], HALF)])
    right = DefinableSet.conjunction(2, [
        le([1, 0], HALF), le([-1, 0]), le([0, 1]), le([0, -1], HALF)])
    return union(left, right)


def element(q):
    return GroupElement.from_rational(q)


def test_make_polytope():
    """Test suite for certified polytopes"""

    P = make_polytope(box(2, HALF, 2))
    assert not P.is_empty()
    assert P.bounds == [(element(HALF), element(2))] * 2
    assert P.contains([1, 2])
    assert P.group.contains(element(2))
    assert not P.group.contains(element(3))

    # open boxes are closed first
    open_box = DefinableSet.conjunction(1, [le([1], HALF, strict=True),
                                            le([-1], HALF, strict=True)])
    assert make_polytope(open_box).contains([2])

    assert make_polytope(DefinableSet.empty(2)).is_empty()

    with pytest.raises(UnboundedError) as err:
        make_polytope(DefinableSet.conjunction(1, [le([1], HALF)]))
    assert err.value.coordinate == 0
    assert err.value.direction == '-'

    with pytest.raises(ConstantOutsideParameterGroupError):
        make_polytope(box(2, Fraction(1, 3), 3), ValueGroupDesc([2]))

    # a larger parameter class keeps the carrier
    larger = change_parameters(P, ValueGroupDesc([2, 3]))
    assert larger.group.contains(element(3))
    assert equals(larger.carrier, P.carrier)
    with pytest.raises(ValueError):
        change_parameters(P, ValueGroupDesc([3]))

    merged = merge_polytopes(P, make_polytope(box(2, 1, 4)))
    assert merged.bounds[0] == (element(HALF), element(4))


def test_decompose():
    """Test suite for convex-cell decompositions"""

    square = decompose(make_polytope(box(2, HALF, 2)))
    assert len(square.cells) == 1
    assert square.dimension() == 2
    assert square.faces == []

    complex_ = decompose_set(two_squares())
    assert len(complex_.cells) == 2
    assert all(cell.dimension == 2 for cell in complex_.cells)
    assert complex_.adjacency == {0: {1}, 1: {0}}
    assert len(complex_.faces) == 1

    # the shared face t1 = 1 is a segment
    face = complex_.faces[0]
    assert membership(face, [1, Fraction(3, 4)])
    assert not membership(face, [HALF, HALF])

    # points on the shared face lie in both cells
    assert complex_.locate([1, Fraction(3, 4)]) == [0, 1]
    assert len(complex_.locate([HALF, HALF])) == 1
    assert complex_.locate([4, 1]) == []

    graph = complex_.graph()
    assert graph.number_of_nodes() == 2
    assert graph.number_of_edges() == 1

    # every cell point is a point of its cell
    for cell in complex_.cells:
        assert complex_.locate(cell.point)

    data = complex_.to_dict()
    assert data['adjacency'] == {'0': [1], '1': [0]}


def test_image_and_star():
    """Test suite for monomial images and local cones"""

    P = make_polytope(box(2, HALF, 2))

    # t1 * t2 sweeps [1/4; 4]
    image = image_monomial(P, [[1, 1]])
    assert image.n == 1
    assert image.bounds == [(element(Fraction(1, 4)), element(4))]

    # constants enlarge the parameter group
    shifted = image_monomial(P, [[1, 0]], [3])
    assert shifted.bounds == [(element(Fraction(3, 2)), element(6))]
    assert shifted.group.contains(element(3))

    with pytest.raises(DimensionMismatchError):
        image_monomial(P, [[1, 1, 1]])

    # the corner (2, 2) only lets coordinates decrease
    cone = star(P, [2, 2])
    assert equals(cone, DefinableSet.conjunction(2, [le([1, 0]),
                                                    le([0, 1])]))
    assert equals(star(P, [1, 1]), DefinableSet.universe(2))

    with pytest.raises(NotInSetError):
        star(P, [4, 1])


def random_polytope(rng, n):
    """Box [1/4; 4]^n cut by one random closed half-space"""

    coefficients = [0] * n
    while not any(coefficients):
        coefficients = [rng.randint(-2, 2) for _ in range(n)]
    atoms = list(box(n, Fraction(1, 4), 4).disjuncts[0])
    atoms.append(le(coefficients, rng.choice(SAMPLE_CONSTANTS)))
    return make_polytope(DefinableSet.conjunction(n, atoms))


def random_matrix(rng, m, n):
    return [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)]


def test_image_composition(rng):
    """Test suite for composing monomial images"""

    for _ in range(8):
        P = random_polytope(rng, 2)
        first = random_matrix(rng, rng.randint(1, 2), 2)
        second = random_matrix(rng, rng.randint(1, 2), len(first))
        product = [[sum(a * b for a, b in zip(row, column))
                    for column in zip(*first)] for row in second]

        image = image_monomial(P, first)
        twice = image_monomial(image, second)
        once = image_monomial(P, product)
        assert equals(twice.carrier, once.carrier), (first, second)
        assert dimension(image.carrier) <= dimension(P.carrier)
        assert dimension(once.carrier) <= dimension(image.carrier)


def test_pl_map():
    """Test suite for piecewise multiplicative-affine maps"""

    complex_ = decompose_set(two_squares())
    one = GroupElement.one()

    identity = PLMap.identity(complex_)
    assert identity.m == 2
    assert identity.evaluate([HALF, 1]) == [element(HALF), one]
    assert is_piecewise_immersion(identity)

    # min(t1, 1) is continuous across t1 = 1
    forms = []
    for cell in complex_.cells:
        if compare(cell.point[0], one) < 0:
            forms.append([AffForm.coordinate(2, 0)])
        else:
            forms.append([AffForm([0, 0])])
    capped = PLMap(complex_, forms)
    assert capped.evaluate([HALF, 1]) == [element(HALF)]
    assert capped.evaluate([2, 1]) == [one]
    assert not is_piecewise_immersion(capped)

    with pytest.raises(NotInSetError):
        capped.evaluate([4, 1])

    # t1 and 2 t1 disagree on the shared face
    mismatched = []
    for cell in complex_.cells:
        if compare(cell.point[0], one) < 0:
            mismatched.append([AffForm.coordinate(2, 0)])
        else:
            mismatched.append([AffForm([1, 0], 2)])
    with pytest.raises(ValueError):
        PLMap(complex_, mismatched)

    with pytest.raises(DimensionMismatchError):
        PLMap(complex_, [[AffForm.coordinate(2, 0)]])

    # post-composition with u -> u1 u2
    product = identity.compose_monomial([[1, 1]])
    assert product.evaluate([2, HALF]) == [one]
    assert product.evaluate([2, 1]) == [element(2)]

    # a segment on the diagonal is immersed by its first coordinate
    segment = decompose_set(DefinableSet.conjunction(2, [
        le([1, -1]), le([-1, 1]), le([1, 0], HALF), le([-1, 0], HALF)]))
    projection = PLMap.uniform(segment, [AffForm.coordinate(2, 0)])
    assert is_piecewise_immersion(projection)


def test_atlas_compatible():
    """Test suite for chart compatibility"""

    group = ValueGroupDesc([2])
    P = make_polytope(box(2, HALF, 2), group)
    Q = make_polytope(box(2, 1, 4), group)

    assert atlas_compatible(P, Q)
    assert atlas_compatible(Chart(P), Chart.monomial(P, [[1, 1], [0, 1]]))

    # rational exponents are fine as long as the ranks agree
    assert atlas_compatible(Chart(P), Chart.monomial(P, [[2, 0], [0, 1]]))

    # a rank-deficient chart collapses the cells
    assert not atlas_compatible(Chart(P),
                                Chart.monomial(P, [[1, 1], [1, 1]]))

    # the relation constant 1/3 is outside the group of P
    assert not atlas_compatible(Chart(P),
                                Chart.monomial(P, [[1, 0], [0, 1]], [3, 1]))

    # [1; 2] x [1; 2] needs the constant 2, missing from the group of R
    R = make_polytope(box(2, 1, 3), ValueGroupDesc([3]))
    assert not atlas_compatible(P, R)

    # disjoint polytopes never conflict
    far = make_polytope(box(2, 8, 16), group)
    assert atlas_compatible(P, far)

    with pytest.raises(DimensionMismatchError):
        atlas_compatible(P, make_polytope(box(1, HALF, 2)))

    assert rank_of([[1, 1], [1, 1]]) == 1
    assert rank_of([[1, 1], [0, 1]]) == 2
