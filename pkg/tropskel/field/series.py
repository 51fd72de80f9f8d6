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
import logging

import sympy
from sympy.polys.puiseux import puiseux_ring

from tropskel.field.base import BaseValuedField
from tropskel.ovalgroup import GroupElement
from tropskel.util import to_fraction

LOGGER = logging.getLogger(__name__)

EPSILON = 'eps'


def _qq(value):
    q = to_fraction(value)
    return sympy.QQ(q.numerator, q.denominator)


class SeriesField(BaseValuedField):
    """
    Generalized power series in `eps` over the rationals (finite sums
    with rational exponents), |eps| = r in (0, 1)
    """

    kind = 'Q-series'
    symbols = (EPSILON,)

    def __init__(self, plugin_def):
        """
        initializer

        :param plugin_def: `dict` with the absolute value `r` of `eps`
                           (default 1/2)

        :returns: `tropskel.field.series.SeriesField`
        """

        super().__init__(plugin_def)

        self.r = to_fraction(plugin_def.get('r', Fraction(1, 2)))
        if not 0 < self.r < 1:
            msg = '|eps| must lie in (0, 1), got {}'.format(self.r)
            LOGGER.error(msg)
            raise ValueError(msg)

        self.ring, self.eps = puiseux_ring(EPSILON, sympy.QQ)
        self._symbol = sympy.Symbol(EPSILON)

    @property
    def pi_value(self):
        return GroupElement.from_rational(self.r)

    def coerce(self, value):
        if hasattr(value, 'ring') and value.ring == self.ring:
            return value

        if isinstance(value, (int, Fraction)):
            return self.ring(_qq(value))

        expr = sympy.expand(sympy.sympify(value))
        terms = {}
        for term, coeff in expr.as_coefficients_dict().items():
            exponent = term.as_powers_dict().get(self._symbol, 0)
            if term != self._symbol ** exponent or not coeff.is_Rational:
                msg = 'Coefficient {} is not a series in {}'.format(
                    value, EPSILON)
                LOGGER.error(msg)
                raise ValueError(msg)
            key = (_qq(exponent),)
            terms[key] = terms.get(key, sympy.QQ(0)) + _qq(coeff)

        terms = {k: v for k, v in terms.items() if v}
        if not terms:
            return self.ring(0)
        return self.ring.from_dict(terms)

    def is_zero(self, c):
        return len(c) == 0

    def split(self, c):
        exponent, coeff = min(c.terms(), key=lambda t: to_fraction(t[0][0]))
        return to_fraction(exponent[0]), to_fraction(coeff)

    def lift(self, z, k=0):
        return self.ring.from_dict({(_qq(k),): _qq(z)})

    def to_sympy(self, c):
        return c.as_expr()

    def to_dict(self):
        data = super().to_dict()
        data['r'] = str(self.r)
        return data

    def __repr__(self):
        return '<SeriesField> |eps|={}'.format(self.r)
