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

import functools
import logging

import click

from tropskel.env import TROPSKEL_SEED
from tropskel.util import (DomainError, json_pretty_print, parse_range,
                           with_schema, write_output)

LOGGER = logging.getLogger(__name__)


class DomainFailure(click.ClickException):
    """domain error surfaced on the command line"""

    exit_code = 3


def cli_errors(func):
    """
    Map library errors onto exit codes: input errors exit with 2,
    domain errors with 3

    :param func: click command callback

    :returns: wrapped callback
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except DomainError as err:
            raise DomainFailure(str(err))
        except (ValueError, TypeError, KeyError) as err:
            LOGGER.debug('Input error: {}'.format(err))
            raise click.UsageError(str(err))

    return wrapper


def _range_callback(ctx, param, value):
    if value is None:
        return None
    try:
        return parse_range(value)
    except ValueError as err:
        raise click.BadParameter(str(err))


def OPTION_POLY(*args, **kwargs):

    default_args = ['--poly', '-p']

    default_kwargs = {
        'required': True,
        'help': 'Polynomial text, e.g. "Y^2 - X*(X-1)"',
    }

    if not args:
        args = default_args

    kwargs = {**default_kwargs, **kwargs} if kwargs else default_kwargs

    return click.option(*args, **kwargs)


def OPTION_FIELD(*args, **kwargs):

    default_args = ['--field', '-k']

    default_kwargs = {
        'default': 'Q-trivial',
        'show_default': True,
        'help': 'Field descriptor: a kind name or a YAML block such as '
                '"{field: Q-padic, p: 5}"',
    }

    if not args:
        args = default_args

    kwargs = {**default_kwargs, **kwargs} if kwargs else default_kwargs

    return click.option(*args, **kwargs)


def OPTION_R(*args, **kwargs):

    default_args = ['--r', '-r']

    default_kwargs = {
        'required': True,
        'help': 'Gauss point radii, comma separated (e.g. 2 or 1/2,3)',
    }

    if not args:
        args = default_args

    kwargs = {**default_kwargs, **kwargs} if kwargs else default_kwargs

    return click.option(*args, **kwargs)


def OPTION_RANGE(*args, **kwargs):

    default_args = ['--range', 'range_']

    default_kwargs = {
        'required': True,
        'callback': _range_callback,
        'help': 'Range s:t for r = |X|, e.g. 1/4:4',
    }

    if not args:
        args = default_args

    kwargs = {**default_kwargs, **kwargs} if kwargs else default_kwargs

    return click.option(*args, **kwargs)


def OPTION_SET(*args, **kwargs):

    default_args = ['--set', '-s', 'set_']

    default_kwargs = {
        'required': True,
        'help': 'Definable set as inline JSON or path to a JSON file',
    }

    if not args:
        args = default_args

    kwargs = {**default_kwargs, **kwargs} if kwargs else default_kwargs

    return click.option(*args, **kwargs)


def OPTION_POINT(*args, **kwargs):

    default_args = ['--point', '-x']

    default_kwargs = {
        'required': False,
        'help': 'Point, comma separated group elements (e.g. 1/2,1)',
    }

    if not args:
        args = default_args

    kwargs = {**default_kwargs, **kwargs} if kwargs else default_kwargs

    return click.option(*args, **kwargs)


def OPTION_OUT(*args, **kwargs):

    default_args = ['--out', '-o']

    default_kwargs = {
        'type': click.Path(dir_okay=False, writable=True),
        'required': False,
        'help': 'Write the JSON artifact to a file instead of stdout',
    }

    if not args:
        args = default_args

    kwargs = {**default_kwargs, **kwargs} if kwargs else default_kwargs

    return click.option(*args, **kwargs)


def OPTION_RENDER(*args, **kwargs):

    default_args = ['--render']

    default_kwargs = {
        'type': click.Path(dir_okay=False, writable=True),
        'required': False,
        'help': 'Also write an SVG rendering (n <= 2) to this path',
    }

    if not args:
        args = default_args

    kwargs = {**default_kwargs, **kwargs} if kwargs else default_kwargs

    return click.option(*args, **kwargs)


def OPTION_SEED(**kwargs):

    default_kwargs = {
        'type': int,
        'default': TROPSKEL_SEED,
        'show_default': True,
        'help': 'Seed for randomized checks',
    }

    kwargs = {**default_kwargs, **kwargs} if kwargs else default_kwargs

    return click.option('--seed', **kwargs)


def emit_artifact(kind, data, out=None):
    """
    Serialize an artifact with its schema key to stdout or a file

    :param kind: artifact kind
    :param data: `dict` payload
    :param out: output filepath (`None` for stdout)

    :returns: void
    """

    text = write_output(json_pretty_print(with_schema(kind, data)), out)
    if text is not None:
        click.echo(text)
