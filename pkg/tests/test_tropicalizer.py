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

from tropskel import tropicalizer
from tropskel.gaussfield import ValuedPolynomial, ZeroPolynomialError
from tropskel.linarith import (AffForm, Atom, DefinableSet,
                               DimensionMismatchError, equals, union)
from tropskel.mpolytope import UnboundedError
from tropskel.ovalgroup import GroupElement
from tropskel.plugin import load_field
from tropskel.selftest import random_polynomial
from tropskel.tropicalizer import (DimensionBoundError, NotOnLocusError,
                                   TropicalHypersurface,
                                   UnsupportedConstraintError, box_set,
                                   corner_locus, full_image_check,
                                   grid_oracle, is_pure, local_dimension,
                                   local_germ, log_grid, max_attained_twice,
                                   monomial_constraint, parse_box,
                                   parse_constraint, tropicalize_box)

from util import grid_disagreements

TRIVIAL = load_field('Q-trivial')
PADIC_5 = load_field({'field': 'Q-padic', 'p': 5})
VARIABLES = ('T1', 'T2')
QUARTER = Fraction(1, 4)


def le(coefficients):
    return Atom(AffForm(coefficients))


def line_rays():
    """The three rays of the tropical line out of (1, 1)"""

    diagonal = DefinableSet.conjunction(2, [le([1, -1]), le([-1, 1]),
                                            le([-1, 0])])
    down = DefinableSet.conjunction(2, [le([1, 0]), le([-1, 0]),
                                        le([0, 1])])
    left = DefinableSet.conjunction(2, [le([0, 1]), le([0, -1]),
                                        le([1, 0])])
    return union(union(diagonal, down), left)


def element(q):
    return GroupElement.from_rational(q)


def test_corner_locus():
    """Test suite for the corner locus of the tropical line"""

    P = ValuedPolynomial.parse('1 + T1 + T2', TRIVIAL)
    locus = corner_locus(P)

    assert locus.n == 2
    assert locus.dimension() == 1
    assert locus.is_connected()
    assert equals(locus.carrier, line_rays())

    for point in ([1, 1], [2, 2], [1, Fraction(1, 2)], [Fraction(1, 2), 1]):
        assert locus.contains(point)
    assert not locus.contains([2, 1])
    assert not locus.contains([Fraction(1, 2), Fraction(1, 2)])

    # three rays glued at the vertex
    assert len(locus.complex.cells) == 3
    assert all(cell.dimension == 1 for cell in locus.complex.cells)
    assert is_pure(P)

    assert max_attained_twice(P, [1, 1])
    assert not max_attained_twice(P, [2, 1])
    assert not max_attained_twice(ValuedPolynomial.parse('T1', TRIVIAL),
                                  [1])

    # powers of 2 from 1/16 to 16
    assert grid_oracle(P, Fraction(1, 16), 16, steps=9) == []
    assert grid_disagreements(locus.carrier, P, QUARTER, 4, steps=5) == []

    data = locus.to_dict()
    assert data['dimension'] == 1
    assert data['connected']

    # over Q_5 the corner of 1 + 5 T is the point t = 5
    padic = load_field({'field': 'Q-padic', 'p': 5})
    point = corner_locus(ValuedPolynomial.parse('1 + 5*T', padic))
    assert point.contains([5])
    assert not point.contains([1])
    assert point.dimension() == 0

    with pytest.raises(ZeroPolynomialError):
        corner_locus(ValuedPolynomial(TRIVIAL, VARIABLES))


def test_local_germ():
    """Test suite for local cones of the corner locus"""

    P = ValuedPolynomial.parse('1 + T1 + T2', TRIVIAL)

    # the vertex sees all three rays
    assert equals(local_germ(P, [1, 1]), line_rays())
    assert local_dimension(P, [1, 1]) == 1

    # inside the diagonal ray the germ is the whole line
    diagonal = DefinableSet.conjunction(2, [le([1, -1]), le([-1, 1])])
    assert equals(local_germ(P, [4, 4]), diagonal)

    with pytest.raises(NotOnLocusError):
        local_germ(P, [2, 1])
    with pytest.raises(NotOnLocusError):
        local_dimension(P, [2, 1])


def test_tropicalize_box(monkeypatch):
    """Test suite for corner loci inside constrained boxes"""

    P = ValuedPolynomial.parse('1 + T1 + T2', TRIVIAL)
    bounds = parse_box('1/4:4', 2)
    assert bounds == [(QUARTER, Fraction(4))] * 2

    polytope = tropicalize_box(P, bounds)
    assert polytope.bounds == [(element(QUARTER), element(4))] * 2
    assert polytope.contains([4, 4])
    assert not polytope.contains([8, 8])

    # |T1 T2| <= 2 stops the diagonal at 2^(1/2)
    constraint = parse_constraint('T1*T2 <= 2', TRIVIAL, VARIABLES)
    assert not constraint.strict
    cut = tropicalize_box(P, bounds, [constraint])
    assert cut.bounds[0] == (element(QUARTER),
                             GroupElement.parse('2^(1/2)'))
    assert cut.contains([1, QUARTER])
    assert not cut.contains([2, 2])

    assert parse_constraint('T1 < 2', TRIVIAL, VARIABLES).strict
    with pytest.raises(ValueError):
        parse_constraint('T1 >= 2', TRIVIAL, VARIABLES)
    with pytest.raises(UnsupportedConstraintError):
        monomial_constraint(ValuedPolynomial.parse('T1 + T2', TRIVIAL), 2)

    with pytest.raises(DimensionMismatchError):
        tropicalize_box(P, bounds[:1])
    with pytest.raises(ValueError):
        box_set([(2, QUARTER)])
    with pytest.raises(UnboundedError):
        box_set([(None, 2)])

    # a full-dimensional image means the corner locus went wrong
    monkeypatch.setattr(
        tropicalizer, 'corner_locus',
        lambda Q: TropicalHypersurface(Q, DefinableSet.universe(Q.nvars)))
    with pytest.raises(DimensionBoundError):
        tropicalize_box(P, bounds)


def test_corner_locus_monomial_factor(rng):
    """Test suite for corner loci of monomial multiples"""

    for field in (TRIVIAL, PADIC_5):
        for _ in range(6):
            P = random_polynomial(rng, field, 2, 4)
            exps = [rng.randint(0, 2) for _ in range(2)]
            k = 0 if field.pi_value is None else rng.randint(-1, 2)
            M = ValuedPolynomial.monomial(
                field, P.variables, exps,
                field.lift(rng.choice([1, 2, 3]), k))
            assert equals(corner_locus(P).carrier,
                          corner_locus(M * P).carrier), (P, M)


def test_full_image():
    """Test suite for images of monomial self-maps"""

    assert full_image_check([[1, 1], [0, 1]])
    assert full_image_check([[2, 0], [0, 1]])
    assert full_image_check([[1, 0], [0, 1]], [2, 3])
    assert not full_image_check([[1, 1], [1, 1]])
    assert not full_image_check([[0, 0], [0, 1]])


def test_log_grid():
    """Test suite for log grids"""

    assert list(log_grid(1, 4, steps=3, n=1)) == [
        (element(1),), (element(2),), (element(4),)]
    assert len(list(log_grid(QUARTER, 4, steps=5))) == 25
