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

from tropskel.field.base import BaseValuedField
from tropskel.util import to_fraction

LOGGER = logging.getLogger(__name__)


class TrivialField(BaseValuedField):
    """Rationals with the trivial absolute value"""

    kind = 'Q-trivial'

    def coerce(self, value):
        try:
            return to_fraction(value)
        except TypeError:
            msg = 'Coefficient {} is not rational'.format(value)
            LOGGER.error(msg)
            raise ValueError(msg)

    def split(self, c):
        return Fraction(0), c

    def lift(self, z, k=0):
        if k != 0:
            msg = 'No uniformizer in a trivially valued field'
            LOGGER.error(msg)
            raise ValueError(msg)
        return to_fraction(z)

    def to_sympy(self, c):
        return self.residue_to_sympy(c)

    def __repr__(self):
        return '<TrivialField>'
