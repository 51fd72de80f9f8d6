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
import os


LOGGER = logging.getLogger(__name__)

LOGGER.info('Fetching environment variables')

TROPSKEL_LOGGING_LOGLEVEL = os.getenv('TROPSKEL_LOGGING_LOGLEVEL', 'ERROR')
TROPSKEL_LOGGING_LOGFILE = os.getenv('TROPSKEL_LOGGING_LOGFILE', None)

TROPCTL_PRECISION = int(os.getenv('TROPCTL_PRECISION', 64))

if TROPCTL_PRECISION < 8:
    LOGGER.warning(
        'TROPCTL_PRECISION={} too small, using 8 bits'.format(
            TROPCTL_PRECISION))
    TROPCTL_PRECISION = 8

TROPSKEL_SEED = int(os.getenv('TROPSKEL_SEED', 0))

TROPSKEL_BASEPATH = os.path.dirname(os.path.realpath(__file__))
