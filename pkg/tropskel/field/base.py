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

import logging

import sympy

from tropskel.ovalgroup import GroupElement, ValueGroupDesc
from tropskel.util import sympy_rational, to_fraction

LOGGER = logging.getLogger(__name__)


class BaseValuedField(object):
    """base valued field"""

    kind = None
    symbols = ()

    def __init__(self, plugin_def):
        """
        initializer

        :param plugin_def: `dict` field descriptor (`field` key plus
                           kind specific parameters, `adjoin` lists
                           rationals whose square roots extend the
                           constants)

        :returns: `tropskel.field.base.BaseValuedField`
        """

        self.plugin_def = plugin_def
        self.adjoined = tuple(
            to_fraction(c) for c in plugin_def.get('adjoin') or ())
        if any(c == 0 for c in self.adjoined):
            msg = 'Cannot adjoin the square root of 0'
            LOGGER.error(msg)
            raise ValueError(msg)
        LOGGER.debug('Field descriptor: {}'.format(self.plugin_def))

    @property
    def characteristic(self):
        """Characteristic of the residue field"""

        return 0

    @property
    def pi_value(self):
        """
        Absolute value of the uniformizer

        :returns: `GroupElement`, or `None` for a trivial valuation
        """

        return None

    def coerce(self, value):
        """
        Convert a number or sympy expression into a field element

        :param value: `int`, `Fraction` or sympy expression

        :returns: field element
        """

        raise NotImplementedError()

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def is_zero(self, c):
        return c == 0

    def split(self, c):
        """
        Decompose a nonzero element as `pi^k * u` with `|u| = 1`

        :param c: nonzero field element

        :returns: `tuple` of the exponent `k` (`Fraction`) and the
                  residue of `u`
        """

        raise NotImplementedError()

    def lift(self, z, k=0):
        """
        Element `pi^k * u` whose unit part has residue `z`

        :param z: residue field element
        :param k: exponent of the uniformizer

        :returns: field element
        """

        raise NotImplementedError()

    def reduce(self, z):
        """Normal form of a residue"""

        return z

    def residue_extension(self):
        """Square roots adjoined to the constants, as sympy numbers"""

        return [sympy.sqrt(sympy_rational(c)) for c in self.adjoined]

    def factor_options(self):
        """Keyword arguments of sympy factorizations over the residues"""

        if self.adjoined:
            return {'extension': self.residue_extension()}
        return {}

    def residue_domain(self):
        """sympy domain of the residue field"""

        if self.adjoined:
            return sympy.QQ.algebraic_field(*self.residue_extension())
        return sympy.QQ

    def residue_to_sympy(self, z):
        return sympy.Rational(z.numerator, z.denominator)

    def to_sympy(self, c):
        """sympy expression of a field element (display, factoring)"""

        raise NotImplementedError()

    def abs(self, c):
        """
        Absolute value

        :param c: nonzero field element

        :returns: `GroupElement`
        """

        if self.is_zero(c):
            msg = 'Absolute value of zero has no group element'
            LOGGER.error(msg)
            raise ZeroDivisionError(msg)

        k, _ = self.split(c)
        if self.pi_value is None or k == 0:
            return GroupElement.one()
        return self.pi_value ** k

    def value_group(self):
        if self.pi_value is None:
            return ValueGroupDesc()
        return ValueGroupDesc([self.pi_value])

    def to_dict(self):
        data = {'field': self.kind}
        if self.adjoined:
            data['adjoin'] = [str(c) for c in self.adjoined]
        return data

    def __eq__(self, other):
        if not isinstance(other, BaseValuedField):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(tuple(sorted((k, str(v))
                                 for k, v in self.to_dict().items())))

    def __repr__(self):
        return '<BaseValuedField> {}'.format(self.to_dict())