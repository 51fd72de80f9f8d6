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
Definable subsets of G^n in the language of ordered abelian groups,
written multiplicatively: finite disjunctions of conjunctions of atoms
`g * prod(t_i ** a_i) < 1` or `<= 1`.

Quantifier elimination is Fourier-Motzkin on each disjunct; emptiness,
closure, dimension and connectedness are built on top of it.
"""

from fractions import Fraction
import logging
import math

import click
import networkx as nx
import sympy

from tropskel import cli_options
from tropskel.ovalgroup import (ABOVE, GroupElement, ValueGroupDesc,
                                adjoin_infinitesimals, compare, maximum,
                                minimum, sign)
from tropskel.util import (DomainError, parse_list, read_json_input,
                           sympy_rational, to_fraction)

LOGGER = logging.getLogger(__name__)

EMPTY_DIMENSION = -1

RELATIONS = {
    'le': False,
    '<=': False,
    'lt': True,
    '<': True
}


class AffForm:
    """Multiplicative affine form t -> g * prod(t_i ** a_i)"""

    __slots__ = ('coefficients', 'constant')

    def __init__(self, coefficients, constant=None):
        """
        Initialize object

        :param coefficients: iterable of rational exponents `a_i`
        :param constant: constant `g` (`GroupElement` or rational-like),
                         default 1

        :returns: `tropskel.linarith.AffForm`
        """

        self.coefficients = tuple(to_fraction(a) for a in coefficients)
        self.constant = (GroupElement.one() if constant is None
                         else GroupElement.coerce(constant))

    @classmethod
    def coordinate(cls, n, i, constant=None):
        """Form `constant * t_i`"""

        coefficients = [0] * n
        coefficients[i] = 1
        return cls(coefficients, constant)

    @classmethod
    def monomial(cls, exponents, constant=None):
        return cls(exponents, constant)

    @property
    def n(self):
        return len(self.coefficients)

    def is_constant(self):
        return not any(self.coefficients)

    def evaluate(self, point):
        """
        Evaluate at a point

        :param point: sequence of `GroupElement`

        :returns: `GroupElement`
        """

        if len(point) != self.n:
            msg = 'Point of dimension {} for a form in {} variables'.format(
                len(point), self.n)
            LOGGER.error(msg)
            raise DimensionMismatchError(msg)

        value = self.constant
        for a, t in zip(self.coefficients, point):
            if a:
                value = value * (GroupElement.coerce(t) ** a)
        return value

    def substitute(self, matrix, constants=None):
        """
        Compose with the monomial substitution t = cst * s^M

        :param matrix: n x m rational matrix (rows indexed by t)
        :param constants: `list` of n constants (default all 1)

        :returns: `AffForm` in the m variables s
        """

        rows = [[to_fraction(v) for v in row] for row in matrix]
        if len(rows) != self.n:
            msg = 'Substitution has {} rows, form has {} variables'.format(
                len(rows), self.n)
            LOGGER.error(msg)
            raise DimensionMismatchError(msg)

        m = len(rows[0]) if rows else 0
        coefficients = [sum((a * row[j] for a, row in zip(
            self.coefficients, rows)), Fraction(0)) for j in range(m)]

        constant = self.constant
        if constants is not None:
            for a, c in zip(self.coefficients, constants):
                if a:
                    constant = constant * (GroupElement.coerce(c) ** a)

        return AffForm(coefficients, constant)

    def drop(self, i):
        if self.coefficients[i] != 0:
            msg = 'Cannot drop variable {} still present in {}'.format(
                i, self)
            LOGGER.error(msg)
            raise ValueError(msg)
        return AffForm(self.coefficients[:i] + self.coefficients[i + 1:],
                       self.constant)

    def extend(self, count):
        """Append `count` variables with zero exponent"""

        return AffForm(self.coefficients + (Fraction(0),) * count,
                       self.constant)

    def inverse(self):
        return self ** -1

    def normalized(self):
        """Positive power whose first nonzero exponent is +1 or -1"""

        for a in self.coefficients:
            if a:
                return self ** (1 / abs(a))
        return self

    def key(self):
        return (self.coefficients, str(self.constant))

    def __mul__(self, other):
        if not isinstance(other, AffForm):
            return NotImplemented
        if other.n != self.n:
            msg = 'Forms in {} and {} variables'.format(self.n, other.n)
            LOGGER.error(msg)
            raise DimensionMismatchError(msg)
        return AffForm([a + b for a, b in zip(self.coefficients,
                                              other.coefficients)],
                       self.constant * other.constant)

    def __pow__(self, power):
        q = to_fraction(power)
        return AffForm([a * q for a in self.coefficients],
                       self.constant ** q)

    def __eq__(self, other):
        if not isinstance(other, AffForm):
            return NotImplemented
        return (self.coefficients, self.constant) == (
            other.coefficients, other.constant)

    def __hash__(self):
        return hash((self.coefficients, self.constant))

    def to_dict(self):
        return {
            'a': [str(a) for a in self.coefficients],
            'g': self.constant.to_dict()
        }

    @classmethod
    def from_dict(cls, data):
        return cls(data['a'], GroupElement.from_dict(data['g'])
                   if 'g' in data else None)

    def __str__(self):
        factors = [str(self.constant)] if not self.constant.is_one() else []
        for i, a in enumerate(self.coefficients):
            if a == 1:
                factors.append('t{}'.format(i + 1))
            elif a:
                factors.append('t{}^({})'.format(i + 1, a))
        return '*'.join(factors) or '1'

    def __repr__(self):
        return '<AffForm> {}'.format(self)


class Atom:
    """Atom `form < 1` (strict) or `form <= 1`"""

    __slots__ = ('form', 'strict')

    def __init__(self, form, strict=False):
        self.form = form
        self.strict = bool(strict)

    @property
    def relation(self):
        return 'lt' if self.strict else 'le'

    @property
    def n(self):
        return self.form.n

    def holds(self, point, group=None):
        s = sign(self.form.evaluate(point), group)
        return s < 0 or (s == 0 and not self.strict)

    def truth(self, group=None):
        """Truth value of an atom without variables"""

        s = sign(self.form.constant, group)
        return s < 0 or (s == 0 and not self.strict)

    def negate(self):
        return Atom(self.form.inverse(), not self.strict)

    def relax(self):
        return Atom(self.form, False)

    def normalized(self):
        return Atom(self.form.normalized(), self.strict)

    def drop(self, i):
        return Atom(self.form.drop(i), self.strict)

    def key(self):
        return (self.form.key(), self.strict)

    def __eq__(self, other):
        if not isinstance(other, Atom):
            return NotImplemented
        return (self.form, self.strict) == (other.form, other.strict)

    def __hash__(self):
        return hash((self.form, self.strict))

    def to_dict(self):
        data = self.form.to_dict()
        data['rel'] = self.relation
        return data

    @classmethod
    def from_dict(cls, data):
        relation = data.get('rel', 'le')
        if relation not in RELATIONS:
            msg = 'Invalid relation {!r}'.format(relation)
            LOGGER.error(msg)
            raise ValueError(msg)
        return cls(AffForm.from_dict(data), RELATIONS[relation])

    def __str__(self):
        return '{} {} 1'.format(self.form, '<' if self.strict else '<=')

    def __repr__(self):
        return '<Atom> {}'.format(self)


def simplify_conjunction(atoms, group):
    """
    Normalize a conjunction: evaluate constant atoms, keep the tightest
    of parallel atoms, sort deterministically

    :param atoms: iterable of `Atom`
    :param group: `ValueGroupDesc`

    :returns: `tuple` of `Atom`, or `None` when a constant atom fails
    """

    tightest = {}
    for atom in atoms:
        if atom.form.is_constant():
            if not atom.truth(group):
                return None
            continue

        atom = atom.normalized()
        direction = atom.form.coefficients
        current = tightest.get(direction)
        if current is None:
            tightest[direction] = atom
            continue

        order = compare(atom.form.constant, current.form.constant, group)
        if order > 0 or (order == 0 and atom.strict):
            tightest[direction] = atom

    return tuple(sorted(tightest.values(), key=Atom.key))


class DefinableSet:
    """
    Finite disjunction of conjunctions of atoms over a parameter group
    """

    def __init__(self, n, disjuncts, group=None):
        """
        Initialize object

        :param n: ambient dimension
        :param disjuncts: iterable of conjunctions (iterables of `Atom`)
        :param group: parameter `ValueGroupDesc` (default: all positive
                      rationals)

        :returns: `tropskel.linarith.DefinableSet`
        """

        self.n = int(n)
        self.group = group if group is not None else \
            ValueGroupDesc.rationals()

        normalized = []
        for atoms in disjuncts:
            atoms = tuple(atoms)
            for atom in atoms:
                if atom.n != self.n:
                    msg = 'Atom {} in {} variables, set in {}'.format(
                        atom, atom.n, self.n)
                    LOGGER.error(msg)
                    raise DimensionMismatchError(msg)
            simplified = simplify_conjunction(atoms, self.group)
            if simplified is not None and simplified not in normalized:
                normalized.append(simplified)

        self.disjuncts = tuple(normalized)

    @classmethod
    def empty(cls, n, group=None):
        return cls(n, [], group)

    @classmethod
    def universe(cls, n, group=None):
        return cls(n, [()], group)

    @classmethod
    def conjunction(cls, n, atoms, group=None):
        return cls(n, [tuple(atoms)], group)

    def forms(self):
        """Distinct normalized forms appearing in the set, in order"""

        seen = []
        for atoms in self.disjuncts:
            for atom in atoms:
                if atom.form not in seen:
                    seen.append(atom.form)
        return seen

    def constants(self):
        return [form.constant for form in self.forms()]

    def is_closed_syntactically(self):
        return all(not atom.strict for atoms in self.disjuncts
                   for atom in atoms)

    def with_group(self, group):
        return DefinableSet(self.n, self.disjuncts, group)

    def to_dict(self):
        return {
            'n': self.n,
            'or': [{'and': [atom.to_dict() for atom in atoms]}
                   for atoms in self.disjuncts],
            'group': self.group.to_dict()
        }

    @classmethod
    def from_dict(cls, data):
        """
        Decode `{"n": 2, "or": [{"and": [{"a": [...], "g": ...,
        "rel": "le"}]}]}`

        :param data: `dict` JSON document

        :returns: `tropskel.linarith.DefinableSet`
        """

        try:
            group = (ValueGroupDesc.from_dict(data['group'])
                     if 'group' in data else None)
            disjuncts = [[Atom.from_dict(a) for a in conj['and']]
                         for conj in data['or']]
            return cls(data['n'], disjuncts, group)
        except (KeyError, TypeError) as err:
            msg = 'Invalid definable set document: {}'.format(err)
            LOGGER.error(msg)
            raise ValueError(msg)

    def __eq__(self, other):
        if not isinstance(other, DefinableSet):
            return NotImplemented
        return (self.n, self.disjuncts) == (other.n, other.disjuncts)

    def __hash__(self):
        return hash((self.n, self.disjuncts))

    def __str__(self):
        if not self.disjuncts:
            return 'empty'
        return ' or '.join(
            '(' + ' and '.join(str(a) for a in atoms) + ')' if atoms
            else 'true' for atoms in self.disjuncts)

    def __repr__(self):
        return '<DefinableSet> n={} {}'.format(self.n, self)


class Box:
    """
    Rationally sheared product of open intervals and points: the image
    of prod(]r_i; R_i[) x {g} under u -> u^M
    """

    def __init__(self, matrix, intervals, fixed=()):
        """
        Initialize object

        :param matrix: invertible n x n rational matrix
        :param intervals: `list` of `(r, R)` with r < R (first d coords)
        :param fixed: `list` of fixed `GroupElement` values (other coords)

        :returns: `tropskel.linarith.Box`
        """

        self.matrix = sympy.Matrix([[sympy_rational(v) for v in row]
                                    for row in matrix])
        self.intervals = [(GroupElement.coerce(r), GroupElement.coerce(s))
                          for r, s in intervals]
        self.fixed = [GroupElement.coerce(g) for g in fixed]

        n = len(self.intervals) + len(self.fixed)
        if self.matrix.shape != (n, n) or self.matrix.det() == 0:
            msg = 'Box matrix must be an invertible {0}x{0} matrix'.format(n)
            LOGGER.error(msg)
            raise ValueError(msg)

        for r, s in self.intervals:
            if compare(r, s) >= 0:
                msg = 'Empty box interval ]{}; {}['.format(r, s)
                LOGGER.error(msg)
                raise ValueError(msg)

    @classmethod
    def cube(cls, n, lower, upper):
        identity = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return cls(identity, [(lower, upper)] * n)

    @property
    def n(self):
        return self.matrix.shape[0]

    @property
    def dimension(self):
        return len(self.intervals)

    def to_definable(self, group=None):
        """
        :param group: parameter `ValueGroupDesc`

        :returns: `DefinableSet` describing the box
        """

        inverse = self.matrix.inv()
        rows = [[to_fraction(inverse[i, j]) for j in range(self.n)]
                for i in range(self.n)]

        atoms = []
        for i, (r, s) in enumerate(self.intervals):
            atoms.append(Atom(AffForm([-a for a in rows[i]], r), True))
            atoms.append(Atom(AffForm(rows[i], s.inverse()), True))
        for k, g in enumerate(self.fixed):
            row = rows[len(self.intervals) + k]
            atoms.append(Atom(AffForm([-a for a in row], g)))
            atoms.append(Atom(AffForm(row, g.inverse())))

        group = group if group is not None else ValueGroupDesc.rationals()
        return DefinableSet.conjunction(self.n, atoms, group)

    def __repr__(self):
        return '<Box> n={} d={}'.format(self.n, self.dimension)


def merge_groups(first, second):
    """
    Smallest descriptor containing both parameter groups

    :param first: `ValueGroupDesc`
    :param second: `ValueGroupDesc`

    :returns: `ValueGroupDesc`
    """

    if first == second:
        return first

    if first.full or second.full:
        merged = ValueGroupDesc.rationals()
    else:
        merged = ValueGroupDesc(first.constants).join(second.constants)

    tower = list(first.infinitesimals)
    for name, direction in second.infinitesimals:
        if name in first.infinitesimal_names:
            if first.direction(name) != direction:
                msg = 'Infinitesimal {} has conflicting directions'.format(
                    name)
                LOGGER.error(msg)
                raise ValueError(msg)
            continue
        tower.append((name, direction))

    return merged.adjoin(tower)


def _check_same_n(first, second):
    if first.n != second.n:
        msg = 'Sets in {} and {} variables'.format(first.n, second.n)
        LOGGER.error(msg)
        raise DimensionMismatchError(msg)


def _coerce_point(point, n):
    point = [GroupElement.coerce(t) for t in point]
    if len(point) != n:
        msg = 'Point {} has dimension {}, expected {}'.format(
            [str(t) for t in point], len(point), n)
        LOGGER.error(msg)
        raise DimensionMismatchError(msg)
    return point


def parse_point(text):
    """
    Parse a comma separated point such as `1/2,2^(1/2)`

    :param text: point text

    :returns: `list` of `GroupElement`
    """

    return [GroupElement.parse(token) for token in parse_list(text)]


def membership(D, x, group=None):
    """
    Point membership

    :param D: `DefinableSet`
    :param x: sequence of `GroupElement` (or rational-like)
    :param group: descriptor of a group extending D's parameter group,
                  needed when `x` carries infinitesimals

    :returns: `bool`
    """

    x = _coerce_point(x, D.n)
    group = group if group is not None else D.group
    return any(all(atom.holds(x, group) for atom in atoms)
               for atoms in D.disjuncts)


def _eliminate_atoms(atoms, i, group):
    upper, lower, rest = [], [], []

    for atom in atoms:
        a = atom.form.coefficients[i]
        if a == 0:
            rest.append(atom.drop(i))
        elif a > 0:
            upper.append(Atom(atom.form ** (1 / a), atom.strict))
        else:
            lower.append(Atom(atom.form ** (1 / -a), atom.strict))

    combined = [
        Atom((u.form * l.form).drop(i), u.strict or l.strict)
        for u in upper for l in lower
    ]

    return simplify_conjunction(rest + combined, group)


def eliminate(D, i):
    """
    Projection along one coordinate (Fourier-Motzkin per disjunct)

    :param D: `DefinableSet`
    :param i: coordinate index (0-based)

    :returns: `DefinableSet` in n - 1 variables
    """

    if not 0 <= i < D.n:
        msg = 'Coordinate {} out of range for n={}'.format(i, D.n)
        LOGGER.error(msg)
        raise DimensionMismatchError(msg)

    disjuncts = []
    for atoms in D.disjuncts:
        projected = _eliminate_atoms(atoms, i, D.group)
        if projected is None:
            LOGGER.debug('Disjunct pruned while eliminating t{}'.format(
                i + 1))
            continue
        disjuncts.append(projected)

    return DefinableSet(D.n - 1, disjuncts, D.group)


def project(D, keep):
    """
    Existential projection onto a subset of coordinates

    :param D: `DefinableSet`
    :param keep: iterable of coordinate indexes to keep

    :returns: `DefinableSet` in the kept coordinates (in index order)
    """

    keep = set(keep)
    result = D
    for i in reversed(range(D.n)):
        if i not in keep:
            result = eliminate(result, i)
    return result


def _elimination_cost(atoms, i):
    upper = sum(1 for a in atoms if a.form.coefficients[i] > 0)
    lower = sum(1 for a in atoms if a.form.coefficients[i] < 0)
    return upper * lower - upper - lower


def conjunction_empty(atoms, n, group):
    """Emptiness of one conjunction by full elimination"""

    atoms = simplify_conjunction(atoms, group)
    while atoms is not None and n > 0:
        i = min(range(n), key=lambda j: _elimination_cost(atoms, j))
        atoms = _eliminate_atoms(atoms, i, group)
        n -= 1
    return atoms is None


def emptiness(D):
    """
    :param D: `DefinableSet`

    :returns: `bool` whether D has no point in any divisible extension
    """

    return all(conjunction_empty(atoms, D.n, D.group) for atoms in D.disjuncts)


def closure(D):
    """
    Topological closure: drop empty disjuncts, then relax strict atoms

    :param D: `DefinableSet`

    :returns: `DefinableSet`
    """

    disjuncts = [
        [atom.relax() for atom in atoms] for atoms in D.disjuncts
        if not conjunction_empty(atoms, D.n, D.group)
    ]
    return DefinableSet(D.n, disjuncts, D.group)


def intersection(first, second):
    _check_same_n(first, second)
    group = merge_groups(first.group, second.group)
    disjuncts = []
    for left in first.disjuncts:
        for right in second.disjuncts:
            atoms = simplify_conjunction(left + right, group)
            if atoms is None:
                continue
            if not conjunction_empty(atoms, first.n, group):
                disjuncts.append(atoms)
    return DefinableSet(first.n, disjuncts, group)


def union(first, second):
    _check_same_n(first, second)
    group = merge_groups(first.group, second.group)
    return DefinableSet(first.n, first.disjuncts + second.disjuncts, group)


def complement(D):
    """
    Complement in G^n by atom negation and distribution, pruning empty
    conjunctions after every combination step

    :param D: `DefinableSet`

    :returns: `DefinableSet`
    """

    current = [()]
    for atoms in D.disjuncts:
        if not atoms:
            return DefinableSet.empty(D.n, D.group)
        negations = [atom.negate() for atom in atoms]
        following = []
        for partial in current:
            for negation in negations:
                combined = simplify_conjunction(partial + (negation,), D.group)
                if combined is None or combined in following:
                    continue
                if conjunction_empty(combined, D.n, D.group):
                    continue
                following.append(combined)
        current = following
        if not current:
            break

    return DefinableSet(D.n, current, D.group)


def difference(first, second):
    return intersection(first, complement(second))


def is_subset(first, second):
    return emptiness(difference(first, second))


def equals(first, second):
    return is_subset(first, second) and is_subset(second, first)


def substitute_monomial(D, matrix, constants=None, m=None):
    """
    Pull back along t = cst * s^M

    :param D: `DefinableSet` in the t variables
    :param matrix: n x m rational matrix
    :param constants: `list` of n constants (default 1)
    :param m: number of s variables (inferred from the matrix)

    :returns: `DefinableSet` in the s variables
    """

    m = m if m is not None else (len(matrix[0]) if matrix else 0)
    disjuncts = [[Atom(atom.form.substitute(matrix, constants), atom.strict)
                  for atom in atoms] for atoms in D.disjuncts]
    return DefinableSet(m, disjuncts, D.group)


class AffineHull:
    """Affine hull of a consistent conjunction in log coordinates"""

    def __init__(self, n, equalities, directions):
        self.n = n
        self.equalities = equalities
        self.directions = directions

    @property
    def dimension(self):
        return len(self.directions)

    def __repr__(self):
        return '<AffineHull> dim={} in n={}'.format(self.dimension, self.n)


def _integral(vector):
    denominators = [v.denominator for v in vector if v]
    scale = 1
    for d in denominators:
        scale = scale * d // math.gcd(scale, d)
    numerators = [int(v * scale) for v in vector]
    common = 0
    for v in numerators:
        common = math.gcd(common, abs(v))
    common = common or 1
    return tuple(Fraction(v, common) for v in numerators)


def _nullspace(rows, n):
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(n))
                for i in range(n)]
    matrix = sympy.Matrix([[sympy_rational(a) for a in row] for row in rows])
    return [_integral([to_fraction(v) for v in vector])
            for vector in matrix.nullspace()]


def rank(rows):
    """Rank over Q of a list of rational rows"""

    rows = [row for row in rows if any(row)]
    if not rows:
        return 0
    return sympy.Matrix([[sympy_rational(a) for a in row]
                         for row in rows]).rank()


def affine_hull(atoms, n, group):
    """
    Affine hull of a non-empty conjunction

    :param atoms: conjunction (`tuple` of `Atom`)
    :param n: ambient dimension
    :param group: `ValueGroupDesc`

    :returns: `AffineHull`, or `None` when the conjunction is empty
    """

    atoms = simplify_conjunction(atoms, group)
    if atoms is None or conjunction_empty(atoms, n, group):
        return None

    equalities = []
    for atom in atoms:
        if atom.strict:
            continue
        tightened = tuple(a for a in atoms if a is not atom) + (
            Atom(atom.form, True),)
        if conjunction_empty(tightened, n, group):
            equalities.append(atom.form)

    directions = _nullspace([form.coefficients for form in equalities], n)
    return AffineHull(n, equalities, directions)


def _conjunct_dimension(atoms, n, group):
    hull = affine_hull(atoms, n, group)
    return EMPTY_DIMENSION if hull is None else hull.dimension


def dimension(D):
    """
    :param D: `DefinableSet`

    :returns: `int` dimension, `EMPTY_DIMENSION` (-1) for the empty set
    """

    best = EMPTY_DIMENSION
    for atoms in D.disjuncts:
        best = max(best, _conjunct_dimension(atoms, D.n, D.group))
        if best == D.n:
            break
    return best


def _bounds_at(atoms, k, values, group):
    lower, upper = [], []
    for atom in atoms:
        form = atom.form
        constant = form.constant
        for j in range(k):
            if form.coefficients[j]:
                constant = constant * (values[j] ** form.coefficients[j])
        a = form.coefficients[k]
        if a > 0:
            upper.append(constant ** (-1 / a))
        elif a < 0:
            lower.append(constant ** (1 / -a))
    return lower, upper


def relative_interior_point(atoms, n, group):
    """
    A point in the relative interior of a conjunction, built by
    back-substitution through successive projections

    :param atoms: conjunction
    :param n: ambient dimension
    :param group: `ValueGroupDesc`

    :returns: `list` of `GroupElement`, or `None` when empty
    """

    stages = [simplify_conjunction(atoms, group)]
    for k in reversed(range(n)):
        if stages[-1] is None:
            return None
        stages.append(_eliminate_atoms(stages[-1], k, group))
    if stages[-1] is None:
        return None

    two = GroupElement.from_rational(2)
    values = []
    for k in range(n):
        stage = stages[n - 1 - k]
        lower, upper = _bounds_at(stage, k, values, group)
        low = maximum(lower, group) if lower else None
        high = minimum(upper, group) if upper else None

        if low is not None and high is not None:
            if compare(low, high, group) < 0:
                value = (low * high) ** Fraction(1, 2)
            else:
                value = low
        elif low is not None:
            value = low * two
        elif high is not None:
            value = high / two
        else:
            value = GroupElement.one()
        values.append(value)

    return values


def dimension_witness(D):
    """
    Rational point and direction frame realizing the dimension of D

    :param D: `DefinableSet`

    :returns: `tuple` (point, frame) or `None` for the empty set
    """

    best = None
    for atoms in D.disjuncts:
        hull = affine_hull(atoms, D.n, D.group)
        if hull is None:
            continue
        if best is None or hull.dimension > best[1].dimension:
            best = (atoms, hull)

    if best is None:
        return None

    atoms, hull = best
    point = relative_interior_point(atoms, D.n, D.group)
    return point, hull.directions


def probe_dimension(D, x, frame):
    """
    Check that x perturbed by independent infinitesimals along a
    direction frame stays in D

    :param D: `DefinableSet`
    :param x: rational point
    :param frame: `list` of direction vectors (rational tuples)

    :returns: `bool`
    """

    x = _coerce_point(x, D.n)
    if not frame:
        return membership(D, x)

    group, names = adjoin_infinitesimals(D.group, len(frame), prefix='probe')
    perturbed = []
    for i, t in enumerate(x):
        value = t
        for name, direction in zip(names, frame):
            value = value * (GroupElement.generator(name) **
                             to_fraction(direction[i]))
        perturbed.append(value)

    return membership(D, perturbed, group)


def dimension_at(D, x):
    """
    Local dimension: dimension of D cut by a box of infinitesimal radius
    around x

    :param D: `DefinableSet`
    :param x: point of D

    :returns: `int`
    """

    x = _coerce_point(x, D.n)
    if not membership(D, x):
        msg = 'Point {} is not in the set'.format([str(t) for t in x])
        LOGGER.error(msg)
        raise NotInSetError(msg)

    group, (name,) = adjoin_infinitesimals(D.group, 1, [ABOVE],
                                           prefix='radius')
    radius = GroupElement.generator(name)

    atoms = []
    for i, t in enumerate(x):
        atoms.append(Atom(AffForm.coordinate(D.n, i, (t * radius).inverse()),
                          True))
        atoms.append(Atom(AffForm.coordinate(D.n, i, radius / t).inverse(),
                          True))
    ball = DefinableSet.conjunction(D.n, atoms, group)

    return dimension(intersection(D.with_group(group), ball))


def tangent_cone(D, x, group=None):
    """
    Directions d (exponent vectors encoded as group elements) such that
    x perturbed infinitesimally along d stays in D

    :param D: `DefinableSet`
    :param x: point
    :param group: descriptor for points carrying infinitesimals

    :returns: `DefinableSet` cone with constants 1
    """

    x = _coerce_point(x, D.n)
    group = group if group is not None else D.group

    cones = []
    for atoms in D.disjuncts:
        cone = []
        for atom in atoms:
            s = sign(atom.form.evaluate(x), group)
            if s > 0:
                cone = None
                break
            if s == 0:
                cone.append(Atom(AffForm(atom.form.coefficients), atom.strict))
        if cone is not None:
            cones.append(cone)

    return DefinableSet(D.n, cones, D.group)


def is_connected(D):
    """
    Connectedness through the adjacency graph of the convex pieces:
    two pieces are adjacent when their closures meet inside D

    :param D: `DefinableSet`

    :returns: `bool`
    """

    cells = [atoms for atoms in D.disjuncts
             if not conjunction_empty(atoms, D.n, D.group)]
    if len(cells) <= 1:
        return True

    graph = nx.Graph()
    graph.add_nodes_from(range(len(cells)))

    closed = [tuple(atom.relax() for atom in atoms) for atoms in cells]
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            if nx.has_path(graph, i, j):
                continue
            for atoms in cells:
                meet = simplify_conjunction(closed[i] + closed[j] + atoms,
                                            D.group)
                if meet is None:
                    continue
                if not conjunction_empty(meet, D.n, D.group):
                    graph.add_edge(i, j)
                    break

    return nx.is_connected(graph)


def is_pure_dimensional(D, d=None):
    """
    Purity check at the relative-interior points of every piece

    :param D: `DefinableSet`
    :param d: expected dimension (default: dimension of D)

    :returns: `bool`
    """

    d = dimension(D) if d is None else d
    for atoms in D.disjuncts:
        point = relative_interior_point(atoms, D.n, D.group)
        if point is None:
            continue
        if dimension_at(D, point) != d:
            LOGGER.debug('Local dimension differs at {}'.format(
                [str(t) for t in point]))
            return False
    return True


def coordinate_bounds(D, i):
    """
    Bounds of one coordinate over D

    :param D: `DefinableSet`
    :param i: coordinate index

    :returns: `tuple` (lower, upper) of `GroupElement` or `None` when
              unbounded in that direction; `None` for the empty set
    """

    line = project(D, [i])
    lowers, uppers = [], []
    bounded_below = bounded_above = True

    for atoms in line.disjuncts:
        if conjunction_empty(atoms, 1, D.group):
            continue
        lower, upper = _bounds_at(atoms, 0, [], D.group)
        if lower:
            lowers.append(maximum(lower, D.group))
        else:
            bounded_below = False
        if upper:
            uppers.append(minimum(upper, D.group))
        else:
            bounded_above = False

    if not lowers and not uppers and bounded_below and bounded_above:
        return None

    return (minimum(lowers, D.group) if bounded_below else None,
            maximum(uppers, D.group) if bounded_above else None)


class DimensionMismatchError(DomainError):
    """dimension mismatch"""
    pass


class NotInSetError(DomainError):
    """point outside of the set"""
    pass


def _load_set(set_):
    return DefinableSet.from_dict(read_json_input(set_))


def _set_artifact(D):
    return {'set': D.to_dict(), 'empty': emptiness(D)}


@click.command('qe')
@click.pass_context
@cli_options.OPTION_SET()
@click.option('--var', 'var', type=int, multiple=True, required=True,
              help='Coordinate to eliminate (1-based, repeatable)')
@cli_options.OPTION_OUT()
@cli_options.cli_errors
def qe(ctx, set_, var, out):
    """Eliminate existential quantifiers (Fourier-Motzkin)"""

    D = _load_set(set_)
    for i in sorted(set(var), reverse=True):
        if not 1 <= i <= D.n:
            raise click.BadParameter('--var {} out of range'.format(i))
        D = eliminate(D, i - 1)

    cli_options.emit_artifact('definable-set', _set_artifact(D), out)


@click.command('closure')
@click.pass_context
@cli_options.OPTION_SET()
@cli_options.OPTION_OUT()
@cli_options.cli_errors
def closure_cli(ctx, set_, out):
    """Topological closure of a definable set"""

    D = closure(_load_set(set_))
    cli_options.emit_artifact('definable-set', _set_artifact(D), out)


@click.command('dim')
@click.pass_context
@cli_options.OPTION_SET()
@cli_options.OPTION_POINT(help='Also report the local dimension here')
@cli_options.OPTION_OUT()
@cli_options.cli_errors
def dim(ctx, set_, point, out):
    """Dimension (and local dimension) of a definable set"""

    D = _load_set(set_)
    data = {'dimension': dimension(D)}

    witness = dimension_witness(D)
    if witness is not None:
        x, frame = witness
        data['witness'] = {
            'point': [t.to_dict() for t in x],
            'frame': [[str(v) for v in d] for d in frame],
            'probe': probe_dimension(D, x, frame)
        }

    if point is not None:
        data['dimension_at'] = dimension_at(D, parse_point(point))

    cli_options.emit_artifact('dimension', data, out)


@click.command('connected')
@click.pass_context
@cli_options.OPTION_SET()
@cli_options.OPTION_OUT()
@cli_options.cli_errors
def connected(ctx, set_, out):
    """Connectedness of a definable set"""

    D = _load_set(set_)
    cli_options.emit_artifact('connected', {'connected': is_connected(D)}, out)
