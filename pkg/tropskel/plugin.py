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

import importlib
import logging

from tropskel.util import load_descriptor

LOGGER = logging.getLogger(__name__)

PLUGINS = {
    'field': {
        'Q-trivial': {
            'handler': 'tropskel.field.trivial.TrivialField'
        },
        'Q-padic': {
            'handler': 'tropskel.field.padic.PadicField'
        },
        'Q-series': {
            'handler': 'tropskel.field.series.SeriesField'
        }
    }
}


def load_plugin(plugin_type, plugin_def, **kwargs):
    """
    loads plugin by type

    :param plugin_type: type of plugin (field, etc.)
    :param plugin_def: plugin definition

    :returns: plugin object
    """

    if plugin_type not in PLUGINS.keys():
        msg = 'Plugin {} not found'.format(plugin_type)
        LOGGER.exception(msg)
        raise InvalidPluginError(msg)

    handler = plugin_def['handler']

    packagename, classname = handler.rsplit('.', 1)

    LOGGER.debug('package name: {}'.format(packagename))
    LOGGER.debug('class name: {}'.format(classname))

    module = importlib.import_module(packagename)
    class_ = getattr(module, classname)
    plugin = class_(plugin_def)
    return plugin


def load_field(descriptor):
    """
    Resolve a field descriptor into a valued field

    :param descriptor: `dict` (`{'field': 'Q-padic', 'p': 5}`) or YAML
                       text, or an already loaded field

    :returns: `tropskel.field.base.BaseValuedField` subclass instance
    """

    if hasattr(descriptor, 'kind'):
        return descriptor

    if isinstance(descriptor, str):
        descriptor = load_descriptor(descriptor)

    kind = descriptor.get('field')
    if kind not in PLUGINS['field']:
        msg = 'Unknown field kind {!r} (known: {})'.format(
            kind, ', '.join(PLUGINS['field']))
        LOGGER.error(msg)
        raise InvalidPluginError(msg)

    plugin_def = dict(descriptor)
    plugin_def['handler'] = PLUGINS['field'][kind]['handler']
    return load_plugin('field', plugin_def)


class InvalidPluginError(ValueError):
    """Invalid plugin"""
    pass
