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
Gauss valuations over desk-scale valued fields: evaluation, graded
residues, Newton polygons and extensions of a Gauss valuation to
K(T)[Y]/(P)
"""

from fractions import Fraction
import itertools
import logging
import math
import re
from tokenize import TokenError

import click
import sympy
from sympy.matrices.normalforms import hermite_normal_form
from sympy.parsing.sympy_parser import (convert_xor, parse_expr,
                                        standard_transformations)

from tropskel import cli_options
from tropskel.linarith import DimensionMismatchError, parse_point
from tropskel.ovalgroup import GroupElement, compare, maximum
from tropskel.plugin import load_field
from tropskel.util import DomainError, parse_list, to_fraction

LOGGER = logging.getLogger(__name__)

TRANSFORMATIONS = standard_transformations + (convert_xor,)

NAME_PATTERN = re.compile(r'[A-Za-z_][A-Za-z0-9_]*')

PI_SYMBOL = 'pi'
EXTENSION_VARIABLE = 'Y'
CURVE_VARIABLES = ('X', 'Y')

MAX_REFINEMENTS = 8


def _natural_key(name):
    return [int(t) if t.isdigit() else t for t in re.split(r'(\d+)', name)]


def _symbols(names):
    return [sympy.Symbol(name) for name in names]


class ValuedPolynomial:
    """Sparse Laurent polynomial over a valued field"""

    def __init__(self, field, variables, terms=None):
        """
        Initialize object

        :param field: valued field plugin
        :param variables: variable names
        :param terms: `dict` of integer exponent tuple to coefficient

        :returns: `tropskel.gaussfield.ValuedPolynomial`
        """

        self.field = field
        self.variables = tuple(variables)

        cleaned = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self.variables):
                msg = 'Monomial {} for variables {}'.format(
                    exps, self.variables)
                LOGGER.error(msg)
                raise DimensionMismatchError(msg)
            if not field.is_zero(c):
                cleaned[exps] = c

        self.terms = dict(sorted(cleaned.items()))
        self._values = {}

    @classmethod
    def parse(cls, text, field, variables=None):
        """
        Parse polynomial text such as `Y^2 - X*(X-1)` or `1 + 5*T`

        :param text: polynomial text (`^` or `**` for powers)
        :param field: valued field plugin (or descriptor)
        :param variables: variable names (default: every free name not
                          reserved by the field, in natural order)

        :returns: `tropskel.gaussfield.ValuedPolynomial`
        """

        field = load_field(field)
        local_dict = {name: sympy.Symbol(name)
                      for name in NAME_PATTERN.findall(text)}
        try:
            expr = parse_expr(text, local_dict=local_dict,
                              transformations=TRANSFORMATIONS)
        except (SyntaxError, TokenError, TypeError) as err:
            msg = 'Invalid polynomial text {!r}: {}'.format(text, err)
            LOGGER.error(msg)
            raise ValueError(msg)

        return cls.from_expr(expr, field, variables)

    @classmethod
    def from_expr(cls, expr, field, variables=None):
        """
        Build from a sympy expression

        :param expr: sympy expression, Laurent in the variables
        :param field: valued field plugin
        :param variables: variable names

        :returns: `tropskel.gaussfield.ValuedPolynomial`
        """

        reserved = set(_symbols(field.symbols))
        if variables is None:
            variables = sorted((s.name for s in expr.free_symbols
                                if s not in reserved), key=_natural_key)
        symbols = _symbols(variables)

        unknown = expr.free_symbols - set(symbols) - reserved
        if unknown:
            msg = 'Unknown symbols {} (variables: {})'.format(
                ', '.join(sorted(s.name for s in unknown)),
                ', '.join(variables))
            LOGGER.error(msg)
            raise ValueError(msg)

        terms = {}
        for term in sympy.Add.make_args(sympy.expand(expr)):
            powers = term.as_powers_dict()
            exps = []
            for symbol in symbols:
                e = sympy.sympify(powers.get(symbol, 0))
                if not e.is_Integer:
                    msg = 'Exponent {} of {} is not an integer'.format(
                        e, symbol)
                    LOGGER.error(msg)
                    raise ValueError(msg)
                exps.append(int(e))
            coeff = term
            for symbol, e in zip(symbols, exps):
                coeff = coeff * symbol ** -e
            c = field.coerce(coeff)
            exps = tuple(exps)
            terms[exps] = terms[exps] + c if exps in terms else c

        return cls(field, variables, terms)

    @classmethod
    def constant(cls, field, variables, value):
        value = field.coerce(value)
        return cls(field, variables, {(0,) * len(variables): value})

    @classmethod
    def monomial(cls, field, variables, exps, coeff=1):
        return cls(field, variables, {tuple(exps): field.coerce(coeff)})

    @classmethod
    def variable(cls, field, variables, index):
        exps = [0] * len(variables)
        exps[index] = 1
        return cls.monomial(field, variables, exps)

    @property
    def nvars(self):
        return len(self.variables)

    def is_zero(self):
        return not self.terms

    def value(self, exps):
        """Cached absolute value of one coefficient"""

        if exps not in self._values:
            self._values[exps] = self.field.abs(self.terms[exps])
        return self._values[exps]

    def degree(self, i):
        return max(e[i] for e in self.terms)

    def min_degree(self, i):
        return min(e[i] for e in self.terms)

    def coefficients_in(self, i):
        """
        Coefficients as a polynomial in variable i

        :param i: variable index

        :returns: `dict` of degree to `ValuedPolynomial` (same variables,
                  exponent of variable i set to 0)
        """

        grouped = {}
        for exps, c in self.terms.items():
            rest = exps[:i] + (0,) + exps[i + 1:]
            grouped.setdefault(exps[i], {})[rest] = c
        return {k: ValuedPolynomial(self.field, self.variables, terms)
                for k, terms in sorted(grouped.items())}

    def shift(self, i, value):
        """
        Substitute variable i by itself plus `value`

        :param i: variable index
        :param value: `ValuedPolynomial` free of variable i

        :returns: `ValuedPolynomial`
        """

        if value.is_zero():
            return self

        if self.min_degree(i) < 0:
            msg = 'Cannot shift {} in a Laurent polynomial'.format(
                self.variables[i])
            LOGGER.error(msg)
            raise ValueError(msg)

        moved = ValuedPolynomial.variable(self.field, self.variables, i) + \
            value
        result = ValuedPolynomial(self.field, self.variables)
        for k, coeff in self.coefficients_in(i).items():
            result = result + coeff * moved ** k
        return result

    def base_change(self, field):
        """Same polynomial with its coefficients read in `field`"""

        return ValuedPolynomial(field, self.variables, {
            exps: field.coerce(self.field.to_sympy(c))
            for exps, c in self.terms.items()})

    def ramify(self, i, k, name=None):
        """
        Substitute variable i by the k-th power of a new variable

        :param i: variable index
        :param k: positive integer exponent
        :param name: name of the new variable (default: unchanged)

        :returns: `ValuedPolynomial`
        """

        if int(k) < 1:
            msg = 'Invalid ramification exponent {}'.format(k)
            LOGGER.error(msg)
            raise ValueError(msg)

        variables = list(self.variables)
        if name is not None:
            variables[i] = name
        terms = {}
        for exps, c in self.terms.items():
            exps = list(exps)
            exps[i] *= int(k)
            terms[tuple(exps)] = c
        return ValuedPolynomial(self.field, variables, terms)

    def _coerce(self, other):
        if not isinstance(other, ValuedPolynomial):
            return ValuedPolynomial.constant(self.field, self.variables,
                                             other)
        if other.variables != self.variables or other.field != self.field:
            msg = 'Polynomials over different rings: {} / {}'.format(
                self.variables, other.variables)
            LOGGER.error(msg)
            raise ValueError(msg)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = terms[exps] + c if exps in terms else c
        return ValuedPolynomial(self.field, self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return ValuedPolynomial(self.field, self.variables,
                                {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                product = c1 * c2
                terms[exps] = terms[exps] + product if exps in terms \
                    else product
        return ValuedPolynomial(self.field, self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            msg = 'Only non-negative integer powers, got {}'.format(k)
            LOGGER.error(msg)
            raise ValueError(msg)
        result = ValuedPolynomial.constant(self.field, self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, ValuedPolynomial):
            return NotImplemented
        if other.variables != self.variables or other.field != self.field:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def to_sympy(self):
        symbols = _symbols(self.variables)
        expr = sympy.Integer(0)
        for exps, c in self.terms.items():
            monomial = self.field.to_sympy(c)
            for symbol, e in zip(symbols, exps):
                monomial = monomial * symbol ** e
            expr = expr + monomial
        return expr

    def to_dict(self):
        return {
            'text': str(self),
            'variables': list(self.variables),
            'field': self.field.to_dict()
        }

    def __str__(self):
        return str(self.to_sympy()).replace('**', '^')

    def __repr__(self):
        return '<ValuedPolynomial> {}'.format(self)


def _as_list(r):
    if isinstance(r, (list, tuple)):
        return list(r)
    return [r]


def _radii(P, r):
    radii = [GroupElement.coerce(x) for x in _as_list(r)]
    if len(radii) != P.nvars:
        msg = '{} radii for {} variables'.format(len(radii), P.nvars)
        LOGGER.error(msg)
        raise DimensionMismatchError(msg)
    return radii


def _monomial_value(radii, exps):
    value = GroupElement.one()
    for r, e in zip(radii, exps):
        if e:
            value = value * r ** e
    return value


def gauss_eval(P, r, group=None):
    """
    Gauss valuation max |a_I| r^I

    :param P: `ValuedPolynomial`
    :param r: radii (`GroupElement` per variable)
    :param group: descriptor for radii carrying infinitesimals

    :returns: `GroupElement`, `None` for the zero polynomial
    """

    radii = _radii(P, r)
    if P.is_zero():
        return None
    return maximum((P.value(exps) * _monomial_value(radii, exps)
                    for exps in P.terms), group)


def residue_symbols(variables):
    if len(variables) == 1:
        return ['S']
    return ['S{}'.format(i + 1) for i in range(len(variables))]


class GradedResidue:
    """Homogeneous element of the graded residue ring at a Gauss point"""

    def __init__(self, field, variables, degree, terms):
        """
        Initialize object

        :param field: valued field plugin
        :param variables: variable names of the source polynomial
        :param degree: `GroupElement` degree
        :param terms: `dict` of monomial exponents to
                      `(uniformizer exponent, residue)`

        :returns: `tropskel.gaussfield.GradedResidue`
        """

        self.field = field
        self.variables = tuple(variables)
        self.degree = degree
        self.terms = dict(sorted(terms.items()))

    def to_sympy(self):
        symbols = _symbols(residue_symbols(self.variables))
        pi = sympy.Symbol(PI_SYMBOL)
        expr = sympy.Integer(0)
        for exps, (k, z) in self.terms.items():
            monomial = self.field.residue_to_sympy(z) * pi ** sympy.Rational(
                k.numerator, k.denominator)
            for symbol, e in zip(symbols, exps):
                monomial = monomial * symbol ** e
            expr = expr + monomial
        return expr

    def __mul__(self, other):
        if not isinstance(other, GradedResidue):
            return NotImplemented

        terms = {}
        for e1, (k1, z1) in self.terms.items():
            for e2, (k2, z2) in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                k = k1 + k2
                z = self.field.reduce(z1 * z2)
                if exps in terms:
                    k0, z0 = terms[exps]
                    z = self.field.reduce(z0 + z)
                    k = k0
                terms[exps] = (k, z)

        terms = {e: (k, z) for e, (k, z) in terms.items() if z != 0}
        return GradedResidue(self.field, self.variables,
                             self.degree * other.degree, terms)

    def __eq__(self, other):
        if not isinstance(other, GradedResidue):
            return NotImplemented
        return (self.degree, self.terms) == (other.degree, other.terms)

    __hash__ = None

    def to_dict(self):
        return {
            'degree': self.degree.to_dict(),
            'representative': str(self),
            'terms': [{
                'monomial': list(exps),
                'pi': str(k),
                'residue': str(z)
            } for exps, (k, z) in self.terms.items()]
        }

    def __str__(self):
        return str(self.to_sympy()).replace('**', '^')

    def __repr__(self):
        return '<GradedResidue> {} in degree {}'.format(self, self.degree)


def gauss_residue(P, r, group=None):
    """
    Graded residue: sum of the residues of the dominant monomials

    :param P: nonzero `ValuedPolynomial`
    :param r: radii

    :returns: `GradedResidue`
    """

    if P.is_zero():
        msg = 'The zero polynomial has no graded residue'
        LOGGER.error(msg)
        raise ZeroPolynomialError(msg)

    radii = _radii(P, r)
    degree = gauss_eval(P, radii, group)

    terms = {}
    for exps, c in P.terms.items():
        value = P.value(exps) * _monomial_value(radii, exps)
        if compare(value, degree, group) == 0:
            terms[exps] = P.field.split(c)

    return GradedResidue(P.field, P.variables, degree, terms)


def residues_alg_independent(elements, characteristic=0):
    """
    Algebraic independence of residues through the Jacobian criterion

    :param elements: `list` of `GradedResidue`, sympy expressions or text
                     in the residue symbols
    :param characteristic: characteristic of the residue field

    :returns: `bool`
    """

    exprs = []
    for element in elements:
        if isinstance(element, GradedResidue):
            exprs.append(element.to_sympy())
        elif isinstance(element, str):
            local_dict = {name: sympy.Symbol(name)
                          for name in NAME_PATTERN.findall(element)}
            exprs.append(parse_expr(element, local_dict=local_dict,
                                    transformations=TRANSFORMATIONS))
        else:
            exprs.append(sympy.sympify(element))

    pi = sympy.Symbol(PI_SYMBOL)
    generators = sorted(set().union(*(e.free_symbols for e in exprs)) -
                        {pi}, key=lambda s: _natural_key(s.name))

    if len(exprs) > len(generators):
        LOGGER.debug('{} residues in {} variables are dependent'.format(
            len(exprs), len(generators)))
        return False
    if not exprs:
        return True

    jacobian = sympy.Matrix([[sympy.diff(e, g) for g in generators]
                             for e in exprs])

    for columns in itertools.combinations(range(len(generators)),
                                          len(exprs)):
        minor = sympy.cancel(
            jacobian[:, list(columns)].det(method='berkowitz'))
        if characteristic == 0:
            if minor != 0:
                return True
            continue
        numerator, _ = sympy.fraction(minor)
        poly = sympy.Poly(numerator, *(generators + [pi]),
                          modulus=characteristic)
        if not poly.is_zero:
            return True

    if characteristic:
        msg = 'Jacobian criterion inconclusive in characteristic {}'.format(
            characteristic)
        LOGGER.error(msg)
        raise UnsupportedResidueFieldError(msg)

    return False


class Segment:
    """Edge of a Newton polygon: roots of absolute value `slope`"""

    def __init__(self, start, end, slope):
        self.start = start
        self.end = end
        self.slope = slope

    @property
    def length(self):
        return self.end - self.start

    def to_dict(self):
        return {
            'slope': self.slope.to_dict(),
            'length': self.length,
            'start': self.start,
            'end': self.end
        }

    def __repr__(self):
        return '<Segment> {}..{} slope {}'.format(self.start, self.end,
                                                  self.slope)


class NewtonPolygon:
    """Lower hull of (i, -log|a_i|) with multiplicative slopes"""

    def __init__(self, points, segments):
        self.points = points
        self.segments = segments

    @property
    def ord(self):
        return self.points[0][0]

    @property
    def degree(self):
        return self.points[-1][0]

    def to_dict(self):
        return {
            'points': [[i, v.to_dict()] for i, v in self.points],
            'segments': [s.to_dict() for s in self.segments]
        }

    def __repr__(self):
        return '<NewtonPolygon> {}'.format(
            ', '.join('{}x{}'.format(s.slope, s.length)
                      for s in self.segments))


def _extension_index(P, var=None):
    if isinstance(var, int):
        return var
    name = var or (EXTENSION_VARIABLE if EXTENSION_VARIABLE in P.variables
                   else P.variables[-1])
    try:
        return P.variables.index(name)
    except ValueError:
        msg = 'Variable {} not in {}'.format(name, P.variables)
        LOGGER.error(msg)
        raise ValueError(msg)


def _full_radii(P, var, r):
    radii = [GroupElement.coerce(x) for x in _as_list(r)]
    if len(radii) == P.nvars - 1:
        radii = radii[:var] + [GroupElement.one()] + radii[var:]
    elif len(radii) == P.nvars:
        radii = radii[:var] + [GroupElement.one()] + radii[var + 1:]
    else:
        msg = '{} radii for {} base variables'.format(len(radii),
                                                      P.nvars - 1)
        LOGGER.error(msg)
        raise DimensionMismatchError(msg)
    return radii


def _slope(first, second):
    (i, vi), (j, vj) = first, second
    return (vi / vj) ** Fraction(1, j - i)


def newton_polygon(P, r, var=None, group=None):
    """
    Newton polygon of P as a polynomial in one variable over the Gauss
    valuation of the other variables

    :param P: nonzero `ValuedPolynomial`
    :param r: radii of the base variables
    :param var: extension variable (name or index, default `Y`)

    :returns: `NewtonPolygon`
    """

    if P.is_zero():
        msg = 'The zero polynomial has no Newton polygon'
        LOGGER.error(msg)
        raise ZeroPolynomialError(msg)

    var = _extension_index(P, var)
    radii = _full_radii(P, var, r)

    points = [(i, gauss_eval(a, radii, group))
              for i, a in P.coefficients_in(var).items()]

    hull = []
    for point in points:
        while len(hull) >= 2 and compare(
                _slope(hull[-2], hull[-1]), _slope(hull[-1], point),
                group) >= 0:
            hull.pop()
        hull.append(point)

    segments = [Segment(a[0], b[0], _slope(a, b))
                for a, b in zip(hull, hull[1:])]

    polygon = NewtonPolygon(points, segments)
    LOGGER.debug('Newton polygon: {!r}'.format(polygon))
    return polygon


def _check_squarefree(P, var):
    if P.min_degree(var) < 0:
        msg = '{} appears with a negative exponent'.format(
            P.variables[var])
        LOGGER.error(msg)
        raise ValueError(msg)

    if P.degree(var) < 1:
        msg = 'Polynomial does not involve {}'.format(P.variables[var])
        LOGGER.error(msg)
        raise ValueError(msg)

    if P.degree(var) == 1:
        return

    discriminant = sympy.discriminant(P.to_sympy(),
                                      sympy.Symbol(P.variables[var]))
    if sympy.cancel(discriminant) == 0:
        msg = '{} is not squarefree in {}'.format(P, P.variables[var])
        LOGGER.error(msg)
        raise NotSquarefreeError(msg)


def _exponent_columns(elements):
    primes = sorted(set().union(*(e.primes() for e in elements)))
    return primes, [[e.exponent(str(p)) for p in primes] for e in elements]


def _lcm_denominators(values):
    result = 1
    for v in values:
        d = to_fraction(v).denominator
        result = result * d // math.gcd(result, d)
    return result


def _solve(columns, target):
    """Rational solution of sum x_j columns_j = target (free part 0)"""

    if not columns:
        return []
    A = sympy.Matrix([[sympy.Rational(c[i].numerator, c[i].denominator)
                       for c in columns] for i in range(len(target))])
    b = sympy.Matrix([sympy.Rational(t.numerator, t.denominator)
                      for t in target])
    solution, params = A.gauss_jordan_solve(b)
    solution = solution.subs({p: 0 for p in params})
    return [to_fraction(v) for v in solution]


class GaussLattice:
    """Value group of a Gauss point: |pi|^Z (or Q) times r^Z"""

    def __init__(self, field, base_radii):
        for r in base_radii:
            if r.symbols():
                msg = 'Radius {} carries infinitesimals'.format(r)
                LOGGER.error(msg)
                raise ValueError(msg)

        self.field = field
        self.has_pi = field.pi_value is not None
        self.divisible_pi = self.has_pi and field.kind == 'Q-series'
        self.generators = ([field.pi_value] if self.has_pi else []) + \
            list(base_radii)

        if not self.generators:
            self.primes, self.vectors = [], []
            self.independent = True
            return

        self.primes, self.vectors = _exponent_columns(self.generators)
        if not self.primes:
            self.independent = False
        else:
            matrix = sympy.Matrix([[sympy.Rational(v.numerator,
                                                   v.denominator)
                                    for v in vector]
                                   for vector in self.vectors])
            self.independent = matrix.rank() == len(self.generators)

    def coordinates(self, s):
        """Rational coordinates of s on independent generators"""

        target = [s.exponent(str(p)) for p in self.primes]
        return _solve(self.vectors, target)

    def ramification(self, s):
        """Smallest e >= 1 with s^e in the lattice"""

        if self.independent:
            coordinates = self.coordinates(s)
            if self.divisible_pi:
                coordinates = coordinates[1:]
            return _lcm_denominators(coordinates)

        vectors = [v for v in self.vectors if any(v)]
        if not vectors:
            return 1

        target = [s.exponent(str(p)) for p in self.primes]
        scale = _lcm_denominators([x for v in vectors for x in v] + target)
        matrix = sympy.Matrix([[int(v[i] * scale) for v in vectors]
                               for i in range(len(self.primes))])
        basis = hermite_normal_form(matrix)
        columns = [[to_fraction(basis[i, j]) for i in range(basis.rows)]
                   for j in range(basis.cols)
                   if any(basis[i, j] for i in range(basis.rows))]
        return _lcm_denominators(_solve(columns, [t * scale
                                                  for t in target]))


class ResidualFactor:
    """Irreducible factor of a residual polynomial"""

    def __init__(self, text, multiplicity, ramification, residue_degree,
                 root=None):
        self.text = text
        self.multiplicity = multiplicity
        self.ramification = ramification
        self.residue_degree = residue_degree
        self.root = root

    @property
    def degree(self):
        return self.ramification * self.residue_degree

    def __repr__(self):
        return '<ResidualFactor> ({})^{} e={} f={}'.format(
            self.text, self.multiplicity, self.ramification,
            self.residue_degree)


def _segment_residues(P, radii, var, segment):
    coefficients = P.coefficients_in(var)
    top = gauss_eval(coefficients[segment.start], radii) * \
        segment.slope ** segment.start

    residues = {}
    for i in range(segment.start, segment.end + 1):
        if i not in coefficients:
            continue
        value = gauss_eval(coefficients[i], radii) * segment.slope ** i
        if compare(value, top) == 0:
            residues[i] = gauss_residue(coefficients[i], radii)
    return residues


def _independent_factors(P, base, lattice, segment, residues):
    """Residual factors when the Gauss point has no degree-one monomials"""

    field = P.field
    e = lattice.ramification(segment.slope)

    W = sympy.Symbol('W')
    expr = sympy.Integer(0)
    for i, residue in residues.items():
        if (i - segment.start) % e:
            continue
        (_, (_, z)), = residue.terms.items()
        expr = expr + field.residue_to_sympy(z) * W ** ((i - segment.start)
                                                         // e)

    poly = sympy.Poly(expr, W, domain=field.residue_domain())
    _, factors = poly.factor_list()

    theta = None
    if e == 1:
        coordinates = lattice.coordinates(segment.slope)
        theta = coordinates if lattice.has_pi else [0] + coordinates

    result = []
    for factor, multiplicity in factors:
        d = factor.degree()
        root = None
        if d == 1 and theta is not None and \
                all(c.is_Rational for c in factor.all_coeffs()):
            c1, c0 = factor.all_coeffs()
            w0 = field.reduce(-to_fraction(c0) / to_fraction(c1))
            exps = [0] * P.nvars
            for j, k in zip(base, theta[1:]):
                exps[j] = int(k)
            root = ValuedPolynomial.monomial(
                field, P.variables, exps, field.lift(w0, theta[0]))
        text = str(factor.as_expr()).replace('**', '^')
        result.append(ResidualFactor(text, multiplicity, e, d, root))

    return result


def _rational_coefficients(expr, symbols):
    if not symbols:
        return expr.is_Rational
    numerator, denominator = sympy.fraction(sympy.together(expr))
    return all(c.is_Rational for part in (numerator, denominator)
               for c in sympy.Poly(part, *symbols).coeffs())


def _dependent_factors(P, base, lattice, segment, residues):
    """Residual factors over a residue field with transcendental part"""

    field = P.field
    if field.characteristic or lattice.has_pi:
        msg = ('Residual factorization over the {} residue field is not '
               'supported at this Gauss point').format(field.kind)
        LOGGER.error(msg)
        raise UnsupportedResidueFieldError(msg)

    S = _symbols(['S{}'.format(j + 1) for j in range(len(base))])
    V = sympy.Symbol('V')

    lowest = [min(exps[j] for r in residues.values() for exps in r.terms)
              for j in base]

    expr = sympy.Integer(0)
    for i, residue in residues.items():
        for exps, (_, z) in residue.terms.items():
            monomial = field.residue_to_sympy(z) * V ** (i - segment.start)
            for symbol, j, low in zip(S, base, lowest):
                monomial = monomial * symbol ** (exps[j] - low)
            expr = expr + monomial

    _, factors = sympy.factor_list(sympy.expand(expr), *(S + [V]),
                                   **field.factor_options())
    e = lattice.ramification(segment.slope)

    result = []
    for factor, multiplicity in factors:
        d = int(sympy.degree(factor, V))
        if d == 0:
            continue

        root = None
        if d == 1:
            alpha, beta = sympy.Poly(factor, V).all_coeffs()
            if len(sympy.Add.make_args(sympy.expand(alpha))) == 1 and \
                    _rational_coefficients(-beta / alpha, S):
                value = sympy.expand(-beta / alpha).subs(
                    {s: sympy.Symbol(P.variables[j])
                     for s, j in zip(S, base)}, simultaneous=True)
                root = ValuedPolynomial.from_expr(value, field, P.variables)

        text = str(factor).replace('**', '^')
        if d % e:
            LOGGER.warning('Factor {} of degree {} with ramification '
                           '{}'.format(text, d, e))
        result.append(ResidualFactor(text, multiplicity, e,
                                     Fraction(d, e), root))

    return result


def residual_factors(P, r, segment, var=None):
    """
    Irreducible factors of the residual polynomial of a segment

    :param P: `ValuedPolynomial`
    :param r: radii of the base variables
    :param segment: `Segment` of the Newton polygon of P at r
    :param var: extension variable

    :returns: `list` of `ResidualFactor`
    """

    var = _extension_index(P, var)
    radii = _full_radii(P, var, r)
    occurring = set(j for exps in P.terms for j, e in enumerate(exps) if e)
    base = [j for j in range(P.nvars) if j != var and j in occurring]
    lattice = GaussLattice(P.field, [radii[j] for j in base])
    residues = _segment_residues(P, radii, var, segment)

    if lattice.independent:
        factors = _independent_factors(P, base, lattice, segment, residues)
    else:
        factors = _dependent_factors(P, base, lattice, segment, residues)

    LOGGER.debug('Residual factors on {!r}: {}'.format(segment, factors))
    return factors


class Branch:
    """One extension of a Gauss valuation, with its root data"""

    def __init__(self, slope, shift, ramification=1, residue_degree=1,
                 factor='', root=None, key=()):
        """
        Initialize object

        :param slope: absolute value of `Y - shift` on the branch, `None`
                      when `shift` is an exact root
        :param shift: `ValuedPolynomial` approximation already removed
        :param ramification: ramification index
        :param residue_degree: residue degree
        :param factor: residual factor text
        :param root: approximation of `Y - shift` of absolute value
                     `slope` (linear residual factors only)
        :param key: matching key (segment index, factor text, ...)

        :returns: `tropskel.gaussfield.Branch`
        """

        self.slope = slope
        self.shift = shift
        self.ramification = ramification
        self.residue_degree = residue_degree
        self.factor = factor
        self.root = root
        self.key = tuple(key)

    @property
    def exact(self):
        return self.slope is None

    def to_dict(self):
        return {
            'slope': None if self.slope is None else self.slope.to_dict(),
            'ramification': self.ramification,
            'residue_degree': str(self.residue_degree),
            'factor': self.factor,
            'shift': str(self.shift),
            'key': [str(k) for k in self.key]
        }

    def __repr__(self):
        return '<Branch> {} slope {}'.format(self.key, self.slope)


def _branches_below(P, radii, var, shift, slope, key, single=False):
    """Branches of the root cluster left after removing `shift`"""

    shifted = P.shift(var, shift)
    polygon = newton_polygon(shifted, radii, var)

    branches = []
    if polygon.ord >= 1:
        branches.append(Branch(None, shift, key=key + ('root',)))

    for index, segment in enumerate(polygon.segments):
        if compare(segment.slope, slope) >= 0:
            continue
        for factor in residual_factors(shifted, radii, segment, var):
            if factor.multiplicity != 1:
                msg = 'Repeated residual factor after one lifting step'
                LOGGER.error(msg)
                raise WildOrDeepRamificationError(msg)
            branches.append(Branch(
                segment.slope, shift, factor.ramification,
                factor.residue_degree, factor.text, factor.root,
                key + (index, factor.text)))

    if single and len(branches) != 1:
        msg = 'Root cluster of size {} where one root was expected'.format(
            len(branches))
        LOGGER.error(msg)
        raise WildOrDeepRamificationError(msg)

    return branches


def _lift(P, radii, var, slope, factor, key):
    p = P.field.characteristic
    if factor.root is None or factor.ramification != 1 or \
            (p and factor.multiplicity % p == 0):
        msg = 'Repeated residual factor {} (multiplicity {}) needs wild ' \
              'or deep ramification handling'.format(factor.text,
                                                    factor.multiplicity)
        LOGGER.error(msg)
        raise WildOrDeepRamificationError(msg)

    LOGGER.debug('Lifting repeated factor {} by {}'.format(factor.text,
                                                           factor.root))
    branches = _branches_below(P, radii, var, factor.root, slope, key)

    size = sum(b.ramification * b.residue_degree for b in branches)
    if size != factor.multiplicity * factor.degree:
        msg = 'Lifted cluster holds {} roots, expected {}'.format(
            size, factor.multiplicity * factor.degree)
        LOGGER.error(msg)
        raise WildOrDeepRamificationError(msg)

    return branches


def gauss_branches(P, r, var=None):
    """
    Extensions of the Gauss valuation at r to K(T)[Y]/(P)

    :param P: squarefree `ValuedPolynomial` in the base variables and Y
    :param r: radii of the base variables
    :param var: extension variable (default `Y`)

    :returns: `list` of `Branch`
    """

    var = _extension_index(P, var)
    _check_squarefree(P, var)
    radii = _full_radii(P, var, r)
    zero = ValuedPolynomial(P.field, P.variables)

    polygon = newton_polygon(P, radii, var)

    branches = []
    if polygon.ord >= 1:
        branches.append(Branch(None, zero, key=('root',)))

    for index, segment in enumerate(polygon.segments):
        for factor in residual_factors(P, radii, segment, var):
            key = (index, factor.text)
            if factor.multiplicity == 1:
                branches.append(Branch(
                    segment.slope, zero, factor.ramification,
                    factor.residue_degree, factor.text, factor.root, key))
            else:
                branches.extend(_lift(P, radii, var, segment.slope,
                                      factor, key))

    return branches


def count_gauss_extensions(P, r, var=None):
    """
    :param P: squarefree `ValuedPolynomial`
    :param r: radii of the base variables

    :returns: `int` number of extensions of the Gauss valuation
    """

    return len(gauss_branches(P, r, var))


def extension_report(P, r, var=None):
    """
    Extensions with their ramification data

    :param P: squarefree `ValuedPolynomial`
    :param r: radii of the base variables

    :returns: `dict` with count, branches and the sum of e * f
    """

    var = _extension_index(P, var)
    branches = gauss_branches(P, r, var)
    total = sum(Fraction(b.ramification) * Fraction(b.residue_degree)
                for b in branches)
    degree = P.degree(var)

    return {
        'count': len(branches),
        'branches': [b.to_dict() for b in branches],
        'degree': degree,
        'sum_ef': str(total),
        'fundamental_equality': total == degree
    }


def _refine(P, branch, radii, var):
    shift = branch.shift + branch.root
    return _branches_below(P, radii, var, shift, branch.slope,
                           branch.key, single=True)[0]


def branch_value(P, branch, g, r, var=None):
    """
    Absolute value of an element of K(T)[Y]/(P) along one extension

    :param P: `ValuedPolynomial`
    :param branch: `Branch` of P at r
    :param g: `ValuedPolynomial` in the same variables
    :param r: radii of the base variables

    :returns: `GroupElement`, `None` when g vanishes on the branch
    """

    var = _extension_index(P, var)
    radii = _full_radii(P, var, r)

    for depth in range(MAX_REFINEMENTS + 1):
        h = g.shift(var, branch.shift)
        coefficients = h.coefficients_in(var)
        if not coefficients:
            return None

        if branch.exact:
            constant = coefficients.get(0)
            return None if constant is None else gauss_eval(constant, radii)

        values = {j: gauss_eval(c, radii) * branch.slope ** j
                  for j, c in coefficients.items()}
        top = maximum(values.values())
        dominant = [j for j, v in values.items() if compare(v, top) == 0]
        if len(dominant) == 1:
            return top

        if branch.root is None:
            msg = 'Branch {} has no residue root to refine'.format(
                branch.key)
            LOGGER.error(msg)
            raise WildOrDeepRamificationError(msg)

        leading = ValuedPolynomial(P.field, P.variables)
        for j in dominant:
            leading = leading + coefficients[j] * branch.root ** j
        if not leading.is_zero() and compare(gauss_eval(leading, radii),
                                             top) == 0:
            return top

        LOGGER.debug('Refining branch {} (depth {})'.format(branch.key,
                                                            depth + 1))
        branch = _refine(P, branch, radii, var)

    msg = 'Branch value undecided after {} refinements'.format(
        MAX_REFINEMENTS)
    LOGGER.error(msg)
    raise WildOrDeepRamificationError(msg)


def separation_failures(P, E, samples, var=None):
    """
    Sample radii at which the value tuples of E do not tell the
    extensions apart

    :param P: `ValuedPolynomial`
    :param E: `list` of `ValuedPolynomial`
    :param samples: `list` of radii

    :returns: `list` of failing samples
    """

    failures = []
    for r in samples:
        branches = gauss_branches(P, r, var)
        if len(branches) <= 1:
            continue
        tuples = [tuple(branch_value(P, b, g, r, var) for g in E)
                  for b in branches]
        if len(set(tuples)) != len(tuples):
            LOGGER.debug('Values {} do not separate at r={}'.format(
                tuples, r))
            failures.append(r)
    return failures


def verify_separating_set(P, E, samples, var=None):
    """
    :param P: `ValuedPolynomial`
    :param E: candidate separating elements
    :param samples: `list` of radii

    :returns: `bool` whether E separates the extensions at every sample
    """

    return not separation_failures(P, E, samples, var)


class ProfilePiece:
    """Interval (or breakpoint) of constant extension count"""

    def __init__(self, kind, bounds, count, sample):
        self.kind = kind
        self.bounds = bounds
        self.count = count
        self.sample = sample

    def to_dict(self):
        if self.kind == 'between':
            bounds = [str(b) for b in self.bounds]
        elif self.kind == 'lt':
            bounds = str(self.bounds[1])
        else:
            bounds = str(self.bounds[0])
        return {self.kind: bounds, 'count': self.count}

    def __repr__(self):
        return '<ProfilePiece> {} {} count={}'.format(
            self.kind, [str(b) for b in self.bounds], self.count)


class Profile:
    """Piecewise constant extension count over an interval of radii"""

    def __init__(self, lower, upper, breakpoints, pieces):
        self.lower = lower
        self.upper = upper
        self.breakpoints = breakpoints
        self.pieces = pieces

    def count_at(self, r):
        """Count of the piece containing r"""

        r = GroupElement.coerce(r)
        for piece in self.pieces:
            if piece.kind == 'at':
                if r == piece.bounds[0]:
                    return piece.count
                continue
            low, high = piece.bounds
            if compare(low, r) < 0 and compare(r, high) < 0:
                return piece.count
        msg = 'r={} outside of the profile range'.format(r)
        LOGGER.error(msg)
        raise ValueError(msg)

    def open_samples(self):
        return [p.sample for p in self.pieces if p.kind != 'at']

    def to_dict(self):
        return {
            'range': [str(self.lower), str(self.upper)],
            'breakpoints': [str(b) for b in self.breakpoints],
            'pieces': [p.to_dict() for p in self.pieces]
        }

    def __repr__(self):
        return '<Profile> {}'.format(self.pieces)


def _monomial_data(P, var, base):
    data = {}
    for exps in P.terms:
        data.setdefault(exps[var], []).append(
            (exps[base], P.value(exps)))
    return data


def _candidates(P, var, base):
    data = _monomial_data(P, var, base)
    candidates = [GroupElement.one()] if any(
        exps[base] for exps in P.terms) else []

    for monomials in data.values():
        for (d1, v1), (d2, v2) in itertools.combinations(monomials, 2):
            if d1 != d2:
                candidates.append((v2 / v1) ** Fraction(1, d1 - d2))

    for i, j, k in itertools.combinations(sorted(data), 3):
        for (di, vi), (dj, vj), (dk, vk) in itertools.product(
                data[i], data[j], data[k]):
            q = (di - dj) * (k - j) - (dj - dk) * (j - i)
            if q == 0:
                continue
            C = (vi / vj) ** (k - j) / (vj / vk) ** (j - i)
            candidates.append(C ** Fraction(-1, q))

    return candidates


def is_generic(field, r):
    return GaussLattice(field, [r]).independent


def sample_between(field, low, high):
    half = Fraction(1, 2)
    third = Fraction(1, 3)
    for candidate in ((low * high) ** half,
                      low ** third * high ** (1 - third),
                      low ** (1 - third) * high ** third):
        if is_generic(field, candidate):
            return candidate

    middle = (low * high) ** half
    used = middle.primes() | low.primes() | high.primes()
    if field.pi_value is not None:
        used |= field.pi_value.primes()
    q = 2
    while q in used:
        q = sympy.nextprime(q)

    N = 2
    while N < 1 << 20:
        candidate = middle * GroupElement.from_rational(q) ** Fraction(1, N)
        if compare(low, candidate) < 0 < compare(high, candidate) and \
                is_generic(field, candidate):
            return candidate
        N *= 2

    msg = 'No generic sample radius in ]{}; {}['.format(low, high)
    LOGGER.error(msg)
    raise ArithmeticError(msg)


def extension_count_profile(P, lower, upper, var=None):
    """
    Extension count as a function of r = |X| on [lower, upper]

    :param P: squarefree `ValuedPolynomial` in X and Y
    :param lower: lower end of the range (positive rational-like)
    :param upper: upper end of the range

    :returns: `Profile`
    """

    var = _extension_index(P, var)
    base = [j for j in range(P.nvars) if j != var]
    if len(base) > 1:
        msg = 'Profiles need one base variable, got {}'.format(
            [P.variables[j] for j in base])
        LOGGER.error(msg)
        raise ValueError(msg)

    lower = GroupElement.coerce(lower)
    upper = GroupElement.coerce(upper)
    if compare(lower, upper) >= 0:
        msg = 'Empty range [{}; {}]'.format(lower, upper)
        LOGGER.error(msg)
        raise ValueError(msg)

    _check_squarefree(P, var)

    breakpoints = []
    if base:
        for candidate in _candidates(P, var, base[0]):
            if compare(lower, candidate) < 0 < compare(upper, candidate) \
                    and candidate not in breakpoints:
                breakpoints.append(candidate)
    breakpoints.sort(key=lambda b: b.log_float())
    LOGGER.debug('Breakpoints: {}'.format([str(b) for b in breakpoints]))

    def count(r):
        return count_gauss_extensions(P, [r] if base else [], var)

    ends = [lower] + breakpoints + [upper]
    pieces = []
    for index, (low, high) in enumerate(zip(ends, ends[1:])):
        sample = sample_between(P.field, low, high)
        if not breakpoints:
            kind = 'between'
        elif index == 0:
            kind = 'lt'
        elif index == len(breakpoints):
            kind = 'gt'
        else:
            kind = 'between'
        pieces.append(ProfilePiece(kind, (low, high), count(sample), sample))

        if index < len(breakpoints):
            point = breakpoints[index]
            try:
                value = count(point)
            except UnsupportedResidueFieldError:
                LOGGER.warning('Count at breakpoint {} not computed'.format(
                    point))
                value = None
            pieces.append(ProfilePiece('at', (point,), value, point))

    return Profile(lower, upper, breakpoints, pieces)


class NotSquarefreeError(DomainError):
    """polynomial not squarefree"""
    pass


class WildOrDeepRamificationError(DomainError):
    """wild or deep ramification"""
    pass


class UnsupportedResidueFieldError(DomainError):
    """unsupported residue field case"""
    pass


class ZeroPolynomialError(DomainError):
    """zero polynomial"""
    pass


def parse_radii(text):
    return parse_point(text)


def _load(poly, field, variables=None):
    return ValuedPolynomial.parse(poly, load_field(field), variables)


@click.command('gauss')
@click.pass_context
@cli_options.OPTION_POLY()
@cli_options.OPTION_R()
@cli_options.OPTION_FIELD()
@cli_options.OPTION_OUT()
@cli_options.cli_errors
def gauss(ctx, poly, r, field, out):
    """Gauss valuation of a polynomial"""

    P = _load(poly, field)
    radii = parse_radii(r)
    if len(radii) != P.nvars:
        raise click.BadParameter('{} radii for variables {}'.format(
            len(radii), ', '.join(P.variables)))

    value = gauss_eval(P, radii)
    cli_options.emit_artifact('gauss', {
        'poly': P.to_dict(),
        'r': [x.to_dict() for x in radii],
        'value': None if value is None else value.to_dict()
    }, out)


@click.command('residue')
@click.pass_context
@cli_options.OPTION_POLY()
@cli_options.OPTION_R()
@cli_options.OPTION_FIELD()
@cli_options.OPTION_OUT()
@cli_options.cli_errors
def residue(ctx, poly, r, field, out):
    """Graded residue of a polynomial at a Gauss point"""

    P = _load(poly, field)
    radii = parse_radii(r)
    if len(radii) != P.nvars:
        raise click.BadParameter('{} radii for variables {}'.format(
            len(radii), ', '.join(P.variables)))

    cli_options.emit_artifact('residue', {
        'poly': P.to_dict(),
        'residue': gauss_residue(P, radii).to_dict()
    }, out)


@click.command('extensions')
@click.pass_context
@cli_options.OPTION_POLY()
@cli_options.OPTION_R(help='Radius r = |X| of the base Gauss point')
@cli_options.OPTION_FIELD()
@click.option('--separators', help='Candidate separating elements, '
              'separated by ";" (e.g. "Y;Y-X")')
@cli_options.OPTION_OUT()
@cli_options.cli_errors
def extensions(ctx, poly, r, field, separators, out):
    """Extensions of a Gauss valuation to K(X)[Y]/(P)"""

    P = _load(poly, field, CURVE_VARIABLES)
    radii = parse_radii(r)

    data = extension_report(P, radii)
    if separators:
        E = [_load(text, P.field, CURVE_VARIABLES)
             for text in parse_list(separators, ';')]
        data['separates'] = verify_separating_set(P, E, [radii])

    cli_options.emit_artifact('extensions', data, out)


@click.command('profile')
@click.pass_context
@cli_options.OPTION_POLY()
@cli_options.OPTION_RANGE()
@cli_options.OPTION_FIELD()
@cli_options.OPTION_OUT()
@cli_options.cli_errors
def profile(ctx, poly, range_, field, out):
    """Extension count profile over a range of r = |X|"""

    P = _load(poly, field, CURVE_VARIABLES)
    lower, upper = range_
    cli_options.emit_artifact(
        'profile', extension_count_profile(P, lower, upper).to_dict(), out)
