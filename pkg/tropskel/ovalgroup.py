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
Divisible ordered abelian groups in multiplicative notation.

Rational constants are kept as prime-exponent vectors over the divisible
hull of the positive rationals; symbolic generators are infinitesimals
stacked lexicographically above the rational part.
"""

from collections import defaultdict
from fractions import Fraction
import functools
import logging
import math
import re

from mpmath import iv
from parse import parse
import sympy

from tropskel.env import TROPCTL_PRECISION
from tropskel.util import DomainError, sympy_rational, to_fraction

LOGGER = logging.getLogger(__name__)

ABOVE = 'above'
BELOW = 'below'

ARCHIMEDEAN = 'archimedean'
LEXICOGRAPHIC = 'lexicographic-tower'

MAX_PRECISION = 1 << 20

SYMBOL_PATTERN = re.compile(r'^[A-Za-z_][A-Za-z0-9_]*$')


def _name_key(name):
    if name.isdigit():
        return (0, int(name), '')
    return (1, 0, name)


class GroupElement:
    """
    Element of a divisible ordered abelian group, written as a finite
    product of generators with rational exponents
    """

    __slots__ = ('_items', '_hash')

    def __init__(self, exp=None):
        """
        Initialize object

        :param exp: `dict` of generator name (prime digits or symbol)
                    to rational exponent; composite integer bases are
                    split into primes

        :returns: `tropskel.ovalgroup.GroupElement`
        """

        exponents = defaultdict(Fraction)

        for name, value in (exp or {}).items():
            name = str(name).strip()
            q = to_fraction(value)
            if q == 0:
                continue
            if name.isdigit():
                base = int(name)
                if base < 1:
                    msg = 'Invalid rational generator {}'.format(name)
                    LOGGER.error(msg)
                    raise ValueError(msg)
                for p, k in sympy.factorint(base).items():
                    exponents[str(p)] += q * k
            elif SYMBOL_PATTERN.match(name):
                exponents[name] += q
            else:
                msg = 'Invalid generator name {!r}'.format(name)
                LOGGER.error(msg)
                raise ValueError(msg)

        self._items = tuple(sorted(
            ((k, v) for k, v in exponents.items() if v != 0),
            key=lambda kv: _name_key(kv[0])))
        self._hash = hash(self._items)

    @classmethod
    def one(cls):
        return cls()

    @classmethod
    def generator(cls, name):
        return cls({name: 1})

    @classmethod
    def from_rational(cls, value):
        """
        Build the element representing a positive rational number

        :param value: positive rational-like value

        :returns: `tropskel.ovalgroup.GroupElement`
        """

        q = to_fraction(value)
        if q <= 0:
            msg = 'Only positive rationals are group elements: {}'.format(q)
            LOGGER.error(msg)
            raise ValueError(msg)

        exp = defaultdict(Fraction)
        for p, k in sympy.factorint(q.numerator).items():
            exp[str(p)] += k
        for p, k in sympy.factorint(q.denominator).items():
            exp[str(p)] -= k
        return cls(exp)

    @classmethod
    def coerce(cls, value):
        """
        Accept an element, a positive rational or a text form

        :param value: `GroupElement`, rational-like or `str`

        :returns: `tropskel.ovalgroup.GroupElement`
        """

        if isinstance(value, GroupElement):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, dict):
            return cls.from_dict(value)
        return cls.from_rational(value)

    @classmethod
    def parse(cls, text):
        """
        Parse a product such as `2^(1/2)*w1^-1` or a plain rational `3/5`

        :param text: element text

        :returns: `tropskel.ovalgroup.GroupElement`
        """

        result = cls()
        for factor in text.replace(' ', '').split('*'):
            if not factor:
                msg = 'Invalid group element {!r}'.format(text)
                LOGGER.error(msg)
                raise ValueError(msg)

            parsed = (parse('{base}^({exponent})', factor) or
                      parse('{base}^{exponent}', factor))
            if parsed is None:
                base, exponent = factor, '1'
            else:
                base = parsed.named['base']
                exponent = parsed.named['exponent']

            if SYMBOL_PATTERN.match(base):
                term = cls({base: exponent})
            else:
                term = cls.from_rational(base) ** to_fraction(exponent)
            result = result * term

        return result

    @classmethod
    def from_dict(cls, data):
        """
        Decode `{"exp": {"2": "1/2", "w1": "-1"}}`

        :param data: `dict` JSON document

        :returns: `tropskel.ovalgroup.GroupElement`
        """

        try:
            return cls(data['exp'])
        except (KeyError, TypeError) as err:
            msg = 'Invalid group element document {}: {}'.format(data, err)
            LOGGER.error(msg)
            raise ValueError(msg)

    def to_dict(self):
        return {'exp': {k: str(v) for k, v in self._items}}

    @property
    def exp(self):
        return dict(self._items)

    def exponent(self, name):
        for k, v in self._items:
            if k == name:
                return v
        return Fraction(0)

    def symbols(self):
        return frozenset(k for k, _ in self._items if not k.isdigit())

    def primes(self):
        return frozenset(int(k) for k, _ in self._items if k.isdigit())

    def rational_part(self):
        return GroupElement({k: v for k, v in self._items if k.isdigit()})

    def symbolic_part(self):
        return GroupElement(
            {k: v for k, v in self._items if not k.isdigit()})

    def is_one(self):
        return not self._items

    def inverse(self):
        return GroupElement({k: -v for k, v in self._items})

    def root(self, n):
        """
        n-th root (divisibility)

        :param n: `int` >= 1

        :returns: `tropskel.ovalgroup.GroupElement`
        """

        if int(n) < 1:
            msg = 'Root order must be >= 1, got {}'.format(n)
            LOGGER.error(msg)
            raise ValueError(msg)
        return self ** Fraction(1, int(n))

    def to_rational(self):
        """
        :returns: `Fraction` when the element is a rational number,
                  else `None`
        """

        if self.symbols():
            return None
        value = Fraction(1)
        for k, v in self._items:
            if v.denominator != 1:
                return None
            value *= Fraction(int(k)) ** int(v)
        return value

    def log_float(self):
        """Natural logarithm of the rational part (display only)"""

        return sum(float(v) * math.log(int(k))
                   for k, v in self._items if k.isdigit())

    def __mul__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        exp = defaultdict(Fraction, self._items)
        for k, v in other._items:
            exp[k] += v
        return GroupElement(exp)

    def __truediv__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, power):
        q = to_fraction(power)
        return GroupElement({k: v * q for k, v in self._items})

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self._items == other._items

    def __hash__(self):
        return self._hash

    def __str__(self):
        if not self._items:
            return '1'
        factors = []
        for k, v in self._items:
            if v == 1:
                factors.append(k)
            elif v.denominator == 1:
                factors.append('{}^{}'.format(k, v))
            else:
                factors.append('{}^({})'.format(k, v))
        return '*'.join(factors)

    def __repr__(self):
        return '<GroupElement> {}'.format(self)


class ValueGroupDesc:
    """
    Descriptor of a divisible ordered abelian group: a rational part
    (finitely generated, or every positive rational) and a lexicographic
    tower of infinitesimals
    """

    def __init__(self, constants=(), infinitesimals=(), full=False):
        """
        Initialize object

        :param constants: rational generators (`GroupElement` without
                          symbols, or positive rationals); must be
                          multiplicatively independent
        :param infinitesimals: `list` of `(name, direction)` with
                               direction `above` or `below`
        :param full: `bool` whether the rational part is the divisible
                     hull of all positive rationals

        :returns: `tropskel.ovalgroup.ValueGroupDesc`
        """

        self.full = bool(full)
        self.constants = tuple(
            GroupElement.coerce(c) for c in ([] if full else constants))

        for constant in self.constants:
            if constant.symbols():
                msg = ('Symbolic generator {} given as a constant; use '
                       'infinitesimals instead'.format(constant))
                LOGGER.error(msg)
                raise IndependenceError(msg)

        if self.constants:
            rank = _exponent_matrix(self.constants).rank()
            if rank != len(self.constants):
                msg = 'Rational generators {} are not independent'.format(
                    ', '.join(str(c) for c in self.constants))
                LOGGER.error(msg)
                raise IndependenceError(msg)

        names = set()
        tower = []
        for name, direction in infinitesimals:
            if not SYMBOL_PATTERN.match(name) or name in names:
                msg = 'Invalid or duplicate infinitesimal {!r}'.format(name)
                LOGGER.error(msg)
                raise ValueError(msg)
            if direction not in (ABOVE, BELOW):
                msg = 'Invalid direction {!r} for {}'.format(direction, name)
                LOGGER.error(msg)
                raise ValueError(msg)
            names.add(name)
            tower.append((name, direction))

        self.infinitesimals = tuple(tower)

    @classmethod
    def rationals(cls):
        """Descriptor of the divisible hull of all positive rationals"""

        return cls(full=True)

    @classmethod
    def generated_by(cls, elements, full=False):
        """
        Smallest descriptor whose rational part contains `elements`

        :param elements: iterable of rational-like values or elements
        :param full: short-circuit to the full rational descriptor

        :returns: `tropskel.ovalgroup.ValueGroupDesc`
        """

        return cls().join(elements) if not full else cls.rationals()

    @property
    def ordering(self):
        return LEXICOGRAPHIC if self.infinitesimals else ARCHIMEDEAN

    @property
    def infinitesimal_names(self):
        return tuple(name for name, _ in self.infinitesimals)

    def direction(self, name):
        for name_, direction in self.infinitesimals:
            if name_ == name:
                return direction
        msg = 'Unknown infinitesimal {}'.format(name)
        LOGGER.error(msg)
        raise GroupMismatchError(msg)

    def contains(self, x):
        """
        Membership in the group (divisible hull of the generators)

        :param x: `GroupElement`

        :returns: `bool`
        """

        x = GroupElement.coerce(x)
        if not x.symbols() <= set(self.infinitesimal_names):
            return False
        rational = x.rational_part()
        if rational.is_one() or self.full:
            return True
        if not self.constants:
            return False
        matrix = _exponent_matrix(self.constants + (rational,))
        return matrix.rank() == len(self.constants)

    def join(self, elements):
        """
        Extend the rational part so that it contains `elements`

        :param elements: iterable of rational-like values or elements

        :returns: `tropskel.ovalgroup.ValueGroupDesc`
        """

        if self.full:
            return self

        extra = [GroupElement.coerce(e).rational_part() for e in elements]
        extra = [e for e in extra if not e.is_one()]
        if all(self.contains(e) for e in extra):
            return self

        rows = _exponent_matrix(self.constants + tuple(extra))
        reduced, pivots = rows.rref()
        primes = _prime_columns(self.constants + tuple(extra))
        constants = []
        for i in range(len(pivots)):
            exp = {str(p): to_fraction(reduced[i, j])
                   for j, p in enumerate(primes)}
            constants.append(GroupElement(exp))

        LOGGER.debug('Joined group generators: {}'.format(
            ', '.join(str(c) for c in constants)))
        return ValueGroupDesc(constants, self.infinitesimals)

    def adjoin(self, names_directions):
        return ValueGroupDesc(self.constants,
                              self.infinitesimals + tuple(names_directions),
                              self.full)

    def sign(self, x):
        return sign(x, self)

    def compare(self, a, b):
        return compare(a, b, self)

    def to_dict(self):
        return {
            'ordering': self.ordering,
            'full': self.full,
            'constants': [c.to_dict() for c in self.constants],
            'infinitesimals': [
                {'name': name, 'direction': direction}
                for name, direction in self.infinitesimals
            ]
        }

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(
                [GroupElement.from_dict(c) for c in data.get('constants', [])],
                [(i['name'], i['direction'])
                 for i in data.get('infinitesimals', [])],
                data.get('full', False))
        except (KeyError, TypeError) as err:
            msg = 'Invalid group descriptor {}: {}'.format(data, err)
            LOGGER.error(msg)
            raise ValueError(msg)

    def __eq__(self, other):
        if not isinstance(other, ValueGroupDesc):
            return NotImplemented
        return (self.full, self.constants, self.infinitesimals) == (
            other.full, other.constants, other.infinitesimals)

    def __hash__(self):
        return hash((self.full, self.constants, self.infinitesimals))

    def __repr__(self):
        base = 'Q' if self.full else '<{}>'.format(
            ', '.join(str(c) for c in self.constants))
        return '<ValueGroupDesc> {} {} {}'.format(
            self.ordering, base, list(self.infinitesimals))


def _prime_columns(elements):
    primes = set()
    for element in elements:
        primes |= element.primes()
    return sorted(primes)


def _exponent_matrix(elements):
    primes = _prime_columns(elements)
    return sympy.Matrix([
        [sympy_rational(e.exponent(str(p))) for p in primes]
        for e in elements
    ]) if primes else sympy.zeros(len(elements), 1)


@functools.lru_cache(maxsize=8192)
def _log_sign(items):
    """
    Sign of sum(q * log(p)) by interval refinement

    :param items: `tuple` of `(prime, Fraction)` with nonzero exponents

    :returns: `int` (1 or -1)
    """

    precision = TROPCTL_PRECISION
    saved = iv.prec

    try:
        while precision <= MAX_PRECISION:
            iv.prec = precision
            total = iv.mpf(0)
            for p, q in items:
                total += iv.log(iv.mpf(p)) * q.numerator / q.denominator
            if (total > 0) is True:
                return 1
            if (total < 0) is True:
                return -1
            LOGGER.debug('Sign undecided at {} bits, refining'.format(
                precision))
            precision *= 2
    finally:
        iv.prec = saved

    msg = 'Interval refinement did not terminate for {}'.format(items)
    LOGGER.error(msg)
    raise ArithmeticError(msg)


def sign(x, group=None):
    """
    Position of an element relative to 1

    :param x: `GroupElement`
    :param group: `ValueGroupDesc` declaring the infinitesimals of `x`
                  (not needed for purely rational elements)

    :returns: `int` in {-1, 0, 1}
    """

    if x.is_one():
        return 0

    symbols = x.symbols()
    if symbols:
        known = set(group.infinitesimal_names) if group is not None else set()
        if not symbols <= known:
            msg = 'Generators {} are not declared by the group'.format(
                ', '.join(sorted(symbols - known)))
            LOGGER.error(msg)
            raise GroupMismatchError(msg)

    rational = x.rational_part()
    if not rational.is_one():
        return _log_sign(tuple(
            (int(k), v) for k, v in rational.exp.items()))

    for name, direction in group.infinitesimals:
        q = x.exponent(name)
        if q != 0:
            s = 1 if q > 0 else -1
            return s if direction == ABOVE else -s

    return 0


def compare(a, b, group=None):
    """
    Total order on group elements

    :param a: `GroupElement`
    :param b: `GroupElement`
    :param group: `ValueGroupDesc` for elements carrying infinitesimals

    :returns: `int` -1, 0 or 1 for a < b, a = b, a > b
    """

    if a == b:
        return 0
    return sign(a / b, group)


def maximum(elements, group=None):
    """Largest element of a non-empty iterable"""

    best = None
    for element in elements:
        if best is None or compare(element, best, group) > 0:
            best = element
    return best


def minimum(elements, group=None):
    """Smallest element of a non-empty iterable"""

    best = None
    for element in elements:
        if best is None or compare(element, best, group) < 0:
            best = element
    return best


def adjoin_infinitesimals(group, d, directions=None, prefix='w'):
    """
    Extend a group by a lexicographic tower of infinitesimals

    :param group: `ValueGroupDesc`
    :param d: number of infinitesimals (>= 1)
    :param directions: `list` of `above`/`below` (default all `above`)
    :param prefix: name prefix for the new generators

    :returns: `tuple` of the extended `ValueGroupDesc` and the `list` of
              new generator names
    """

    if d < 1:
        msg = 'At least one infinitesimal is required, got {}'.format(d)
        LOGGER.error(msg)
        raise ValueError(msg)

    directions = list(directions) if directions else [ABOVE] * d
    if len(directions) != d:
        msg = 'Expected {} directions, got {}'.format(d, len(directions))
        LOGGER.error(msg)
        raise ValueError(msg)

    taken = set(group.infinitesimal_names)
    names = []
    index = 1
    while len(names) < d:
        name = '{}{}'.format(prefix, index)
        if name not in taken:
            names.append(name)
        index += 1

    return group.adjoin(zip(names, directions)), names


def coarsen(x):
    """
    Quotient by the convex subgroup of infinitesimals

    :param x: `GroupElement`

    :returns: `GroupElement` with every infinitesimal exponent erased
    """

    return x.rational_part()


class GroupMismatchError(DomainError):
    """elements from an undeclared group"""
    pass


class IndependenceError(DomainError):
    """dependent or invalid rational generators"""
    pass
