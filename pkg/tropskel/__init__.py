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

import click

from tropskel.env import (
    TROPSKEL_LOGGING_LOGLEVEL, TROPSKEL_LOGGING_LOGFILE)
from tropskel.gaussfield import extensions, gauss, profile, residue
from tropskel.linarith import closure_cli, connected, dim, qe
from tropskel.log import setup_logger
from tropskel.render import render
from tropskel.selftest import selftest
from tropskel.skeleton import skeleton_preimage, stabilize
from tropskel.tropicalizer import star_cli, trop


__version__ = '0.1.0'

setup_logger(TROPSKEL_LOGGING_LOGLEVEL, TROPSKEL_LOGGING_LOGFILE)


@click.group()
@click.version_option(version=__version__)
def cli():
    pass


cli.add_command(gauss)
cli.add_command(residue)
cli.add_command(trop)
cli.add_command(star_cli)
cli.add_command(qe)
cli.add_command(closure_cli)
cli.add_command(dim)
cli.add_command(connected)
cli.add_command(extensions)
cli.add_command(profile)
cli.add_command(skeleton_preimage)
cli.add_command(stabilize)
cli.add_command(selftest)
cli.add_command(render)


def run(argv=None):
    """
    Run `tropctl` without leaving the interpreter

    :param argv: `list` of arguments (default: `sys.argv[1:]`)

    :returns: `int` exit code
    """

    try:
        result = cli.main(args=argv, prog_name='tropctl',
                          standalone_mode=False)
    except click.exceptions.Exit as err:
        return err.exit_code
    except click.ClickException as err:
        err.show()
        return err.exit_code
    except click.exceptions.Abort:
        return 1
    return result if isinstance(result, int) else 0
