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

from tropskel.field.base import BaseValuedField
from tropskel.ovalgroup import GroupElement
from tropskel.util import to_fraction

LOGGER = logging.getLogger(__name__)


class PadicField(BaseValuedField):
    """Rationals with a p-adic absolute value, |p| in (0, 1)"""

    kind = 'Q-padic'

    def __init__(self, plugin_def):
        """
        initializer

        :param plugin_def: `dict` with the prime `p` and optionally the
                           absolute value `abs` of p (default 1/p)

        :returns: `tropskel.field.padic.PadicField`
        """

        super().__init__(plugin_def)

        try:
            self.p = int(plugin_def['p'])
        except (KeyError, TypeError, ValueError):
            msg = 'Q-padic field needs an integer prime p'
            LOGGER.error(msg)
            raise ValueError(msg)

        if not sympy.isprime(self.p):
            msg = 'p={} is not prime'.format(self.p)
            LOGGER.error(msg)
            raise ValueError(msg)

        if self.adjoined:
            msg = 'Constant extensions of Q-padic are not supported'
            LOGGER.error(msg)
            raise ValueError(msg)

        self.abs_p = to_fraction(plugin_def.get('abs', Fraction(1, self.p)))
        if not 0 < self.abs_p < 1:
            msg = '|p| must lie in (0, 1), got {}'.format(self.abs_p)
            LOGGER.error(msg)
            raise ValueError(msg)

    @property
    def characteristic(self):
        return self.p

    @property
    def pi_value(self):
        return GroupElement.from_rational(self.abs_p)

    def coerce(self, value):
        try:
            return to_fraction(value)
        except TypeError:
            msg = 'Coefficient {} is not rational'.format(value)
            LOGGER.error(msg)
            raise ValueError(msg)

    def valuation(self, c):
        """p-adic order of a nonzero rational"""

        return (sympy.multiplicity(self.p, abs(c.numerator)) -
                sympy.multiplicity(self.p, c.denominator))

    def split(self, c):
        k = self.valuation(c)
        unit = c / Fraction(self.p) ** k
        return Fraction(k), self.reduce(unit)

    def reduce(self, z):
        z = to_fraction(z)
        return (z.numerator * sympy.mod_inverse(z.denominator, self.p)) \
            % self.p

    def lift(self, z, k=0):
        k = to_fraction(k)
        if k.denominator != 1:
            msg = 'p^{} is not a rational number'.format(k)
            LOGGER.error(msg)
            raise ValueError(msg)
        return Fraction(int(z) % self.p) * Fraction(self.p) ** int(k)

    def residue_domain(self):
        return sympy.GF(self.p)

    def residue_to_sympy(self, z):
        return sympy.Integer(int(z) % self.p)

    def to_sympy(self, c):
        return sympy.Rational(c.numerator, c.denominator)

    def to_dict(self):
        return {'field': self.kind, 'p': self.p, 'abs': str(self.abs_p)}

    def __repr__(self):
        return '<PadicField> p={} |p|={}'.format(self.p, self.abs_p)
