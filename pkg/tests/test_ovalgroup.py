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

from tropskel.ovalgroup import (ABOVE, BELOW, GroupElement,
                                GroupMismatchError, IndependenceError,
                                ValueGroupDesc, adjoin_infinitesimals,
                                coarsen, compare, maximum, minimum, sign)


def test_group_element():
    """Test suite for group element arithmetic and text forms"""

    half = GroupElement.from_rational(Fraction(1, 2))
    root2 = GroupElement.parse('2^(1/2)')

    assert root2 == GroupElement({'2': Fraction(1, 2)})
    assert str(root2) == '2^(1/2)'
    assert str(GroupElement.from_rational(Fraction(1, 4))) == '2^-2'
    assert str(GroupElement.one()) == '1'

    # composite bases split into primes
    assert GroupElement({'6': 1}) == GroupElement.from_rational(6)
    assert GroupElement.from_rational(12).exp == {'2': 2, '3': 1}

    assert root2 * root2 == GroupElement.from_rational(2)
    assert root2 ** -2 == half
    assert half.inverse() == GroupElement.from_rational(2)
    assert GroupElement.from_rational(8).root(3) == \
        GroupElement.from_rational(2)

    assert GroupElement.parse('3/5') == \
        GroupElement.from_rational(Fraction(3, 5))
    assert GroupElement.parse('2^(1/2)*w1^-1').symbols() == {'w1'}
    assert GroupElement.parse('2^(1/2)*w1^-1').exponent('w1') == -1
    mixed = GroupElement.parse('2^(1/2)*w1^-1')
    assert mixed.rational_part() == GroupElement.parse('2^(1/2)')
    assert mixed.symbolic_part() == GroupElement.parse('w1^-1')
    assert mixed.rational_part() * mixed.symbolic_part() == mixed

    assert GroupElement.from_rational(Fraction(3, 4)).to_rational() == \
        Fraction(3, 4)
    assert root2.to_rational() is None
    assert GroupElement.from_rational(Fraction(3, 4)).primes() == {2, 3}

    assert GroupElement.from_dict(root2.to_dict()) == root2
    assert GroupElement.coerce('2^(1/2)') == root2
    assert GroupElement.coerce(2) == GroupElement.from_rational(2)

    with pytest.raises(ValueError):
        GroupElement.from_rational(0)
    with pytest.raises(ValueError):
        GroupElement.from_rational(-3)
    with pytest.raises(ValueError):
        root2.root(0)
    with pytest.raises(ValueError):
        GroupElement({'2-x': 1})


def test_order():
    """Test suite for the exact order on rational elements"""

    two = GroupElement.from_rational(2)
    three = GroupElement.from_rational(3)

    assert compare(two, three) == -1
    assert compare(three, two) == 1
    assert compare(two, two) == 0
    assert sign(GroupElement.one()) == 0

    # 2^(1/2) = 1.414... < 3^(1/3) = 1.442...
    assert compare(GroupElement.parse('2^(1/2)'),
                   GroupElement.parse('3^(1/3)')) == -1

    # close call: 2^5 = 32 < 3^(3.2) = 33.6...
    assert compare(GroupElement.from_rational(32),
                   GroupElement.parse('3^(16/5)')) == -1

    elements = [GroupElement.from_rational(q)
                for q in (Fraction(1, 3), 5, Fraction(7, 2), 1)]
    assert maximum(elements) == GroupElement.from_rational(5)
    assert minimum(elements) == GroupElement.from_rational(Fraction(1, 3))


def test_infinitesimals():
    """Test suite for lexicographic towers of infinitesimals"""

    group, names = adjoin_infinitesimals(ValueGroupDesc.rationals(), 2)
    assert names == ['w1', 'w2']
    assert group.ordering == 'lexicographic-tower'

    w1 = GroupElement.generator('w1')
    w2 = GroupElement.generator('w2')

    assert sign(w1, group) == 1
    assert sign(w1 ** -1 * w2 ** 5, group) == -1
    assert sign(w2 ** 3, group) == 1

    # any rational factor outweighs the infinitesimals
    two = GroupElement.from_rational(2)
    assert sign(two * w1 ** -1000, group) == 1
    assert compare(GroupElement.one(), w1 ** Fraction(1, 7), group) == -1

    below, _ = adjoin_infinitesimals(ValueGroupDesc.rationals(), 1,
                                     [BELOW])
    assert sign(w1, below) == -1
    assert below.direction('w1') == BELOW
    assert group.direction('w2') == ABOVE

    assert coarsen(two * w1) == two

    with pytest.raises(GroupMismatchError):
        sign(w1)
    with pytest.raises(ValueError):
        adjoin_infinitesimals(group, 0)

    # fresh names skip the ones already taken
    _, more = adjoin_infinitesimals(group, 1)
    assert more == ['w3']


def test_value_group_desc():
    """Test suite for value group descriptors"""

    group = ValueGroupDesc([2])
    assert group.contains(GroupElement.parse('2^(1/3)'))
    assert not group.contains(GroupElement.from_rational(3))
    assert group.contains(GroupElement.one())

    joined = group.join([3, Fraction(1, 6)])
    assert joined.contains(GroupElement.from_rational(3))
    assert joined.contains(GroupElement.parse('6^(1/5)'))
    assert not joined.contains(GroupElement.from_rational(5))

    # joining what is already there changes nothing
    assert group.join([4]) == group

    assert ValueGroupDesc.rationals().contains(
        GroupElement.from_rational(Fraction(5, 7)))
    assert not ValueGroupDesc().contains(GroupElement.from_rational(2))
    assert ValueGroupDesc.generated_by([5]).contains(
        GroupElement.from_rational(25))

    with pytest.raises(IndependenceError):
        ValueGroupDesc([2, 4])
    with pytest.raises(IndependenceError):
        ValueGroupDesc([GroupElement.generator('w')])
    with pytest.raises(ValueError):
        ValueGroupDesc([], [('w1', 'sideways')])

    data = joined.to_dict()
    assert ValueGroupDesc.from_dict(data) == joined
    assert data['ordering'] == 'archimedean'
