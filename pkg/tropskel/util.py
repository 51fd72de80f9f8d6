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
import json
import logging
import os

from parse import parse
import sympy
import yaml


LOGGER = logging.getLogger(__name__)

SCHEMA_FMT = 'tropskel/{}/1'


class DomainError(Exception):
    """domain error"""
    pass


def to_fraction(value):
    """
    Coerce a rational-like value into a `Fraction`

    :param value: `int`, `str` (`'3/4'`), `Fraction`, or any object
                  exposing `numerator`/`denominator` (sympy rationals,
                  ground domain elements)

    :returns: `Fraction`
    """

    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        msg = 'Boolean {} is not a rational'.format(value)
        LOGGER.error(msg)
        raise TypeError(msg)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as err:
            msg = 'Invalid rational {!r}: {}'.format(value, err)
            LOGGER.error(msg)
            raise ValueError(msg)
    if hasattr(value, 'numerator') and hasattr(value, 'denominator'):
        return Fraction(int(value.numerator), int(value.denominator))

    msg = 'Cannot convert {!r} to a rational'.format(value)
    LOGGER.error(msg)
    raise TypeError(msg)


def sympy_rational(value):
    """
    Convert a rational-like value into a `sympy.Rational`

    :param value: rational-like value (see `to_fraction`)

    :returns: `sympy.Rational`
    """

    q = to_fraction(value)
    return sympy.Rational(q.numerator, q.denominator)


def json_pretty_print(data):
    """
    Pretty print a JSON serialization

    :param data: `dict` of JSON

    :returns: `str` of pretty printed JSON representation
    """

    return json.dumps(data, indent=4, default=json_serial)


def json_serial(obj):
    """
    helper function to convert to JSON non-default types

    :param obj: `object` to be evaluated

    :returns: JSON non-default type to `str` or `dict`
    """

    if isinstance(obj, Fraction):
        return str(obj)
    elif hasattr(obj, 'to_dict'):
        return obj.to_dict()
    elif isinstance(obj, (set, frozenset)):
        return sorted(obj)
    elif isinstance(obj, bytes):
        return obj.decode('utf-8')

    msg = '{} type {} not serializable'.format(obj, type(obj))
    LOGGER.error(msg)
    raise TypeError(msg)


def with_schema(kind, data):
    """
    Tag a JSON artifact with its versioned schema key

    :param kind: artifact kind (`gauss`, `profile`, ...)
    :param data: `dict` payload

    :returns: `dict` with a leading `schema` key
    """

    artifact = {'schema': SCHEMA_FMT.format(kind)}
    artifact.update(data)
    return artifact


def parse_range(text):
    """
    Parse a multiplicative range of the form `s:t`

    :param text: range string, e.g. `1/4:4`

    :returns: `tuple` of two `Fraction` objects with 0 < s < t
    """

    result = parse('{lower}:{upper}', text.strip())
    if result is None:
        msg = 'Invalid range {!r}, expected s:t'.format(text)
        LOGGER.error(msg)
        raise ValueError(msg)

    lower = to_fraction(result.named['lower'])
    upper = to_fraction(result.named['upper'])

    if not 0 < lower < upper:
        msg = 'Invalid range {!r}, expected 0 < s < t'.format(text)
        LOGGER.error(msg)
        raise ValueError(msg)

    return lower, upper


def parse_list(text, separator=','):
    """
    Split a separated option string into stripped, non-empty tokens

    :param text: option string, e.g. `1/2,1`
    :param separator: token separator

    :returns: `list` of `str`
    """

    return [token.strip() for token in text.split(separator)
            if token.strip()]


def load_descriptor(text):
    """
    Read a field descriptor block

    :param text: YAML flow mapping (`{field: Q-padic, p: 5}`) or a bare
                 field name (`Q-trivial`)

    :returns: `dict` descriptor with at least a `field` key
    """

    try:
        descriptor = yaml.safe_load(text)
    except yaml.YAMLError as err:
        msg = 'Invalid field descriptor {!r}: {}'.format(text, err)
        LOGGER.error(msg)
        raise ValueError(msg)

    if isinstance(descriptor, str):
        descriptor = {'field': descriptor}

    if not isinstance(descriptor, dict) or 'field' not in descriptor:
        msg = 'Field descriptor {!r} has no field key'.format(text)
        LOGGER.error(msg)
        raise ValueError(msg)

    return descriptor


def read_json_input(value):
    """
    Read a JSON document given inline or as a path on disk

    :param value: inline JSON text or filepath

    :returns: decoded JSON object
    """

    if os.path.isfile(value):
        LOGGER.debug('Reading JSON from {}'.format(value))
        with open(value, encoding='utf-8') as fh:
            text = fh.read()
    else:
        text = value

    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        msg = 'Invalid JSON input: {}'.format(err)
        LOGGER.error(msg)
        raise ValueError(msg)


def write_output(text, out=None):
    """
    Write an artifact to a file or return it for echoing

    :param text: serialized artifact
    :param out: output filepath or `None`

    :returns: `str` when `out` is `None`, else `None`
    """

    if out is None:
        return text

    LOGGER.debug('Writing output to {}'.format(out))
    with open(out, 'w', encoding='utf-8') as fh:
        fh.write(text)
        fh.write('\n')

    return None
