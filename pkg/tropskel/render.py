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

"""SVG rendering of definable sets (n <= 2) in log-log coordinates"""

import itertools
import logging
import math

import click
from lxml import etree

from tropskel import cli_options
from tropskel.linarith import DefinableSet
from tropskel.util import parse_range, read_json_input, write_output

LOGGER = logging.getLogger(__name__)

SVG_NS = 'http://www.w3.org/2000/svg'
SIZE = 400
MARGIN = 20
EPSILON = 1e-9
DEFAULT_WINDOW = '1/16:16'

STYLE = {
    'background': 'fill:#ffffff;stroke:none',
    'axis': 'stroke:#999999;stroke-width:1;stroke-dasharray:4,4',
    'polygon': 'fill:#9ecae1;fill-opacity:0.6;stroke:#08519c;'
               'stroke-width:1',
    'segment': 'stroke:#08519c;stroke-width:3;fill:none',
    'point': 'fill:#08519c;stroke:none'
}


def _halfplanes(atoms, n, bounds):
    """Constraints a.x + b <= 0 on x = log t, window included"""

    planes = [([float(a) for a in atom.form.coefficients],
               atom.form.constant.log_float()) for atom in atoms]
    low, high = bounds
    for i in range(n):
        unit = [0.0] * n
        unit[i] = 1.0
        planes.append((unit, -high))
        planes.append(([-u for u in unit], low))
    return planes


def _feasible(x, planes):
    return all(sum(a * v for a, v in zip(coeffs, x)) + b <= EPSILON
               for coeffs, b in planes)


def _vertices(planes, n):
    if n == 1:
        lower, upper = -math.inf, math.inf
        for (a,), b in planes:
            if abs(a) < EPSILON:
                if b > EPSILON:
                    return []
            elif a > 0:
                upper = min(upper, -b / a)
            else:
                lower = max(lower, -b / a)
        if lower > upper + EPSILON:
            return []
        return sorted({(round(lower, 6),), (round(upper, 6),)})

    points = set()
    for (a1, b1), (a2, b2) in itertools.combinations(planes, 2):
        det = a1[0] * a2[1] - a1[1] * a2[0]
        if abs(det) < EPSILON:
            continue
        x = (-b1 * a2[1] + b2 * a1[1]) / det
        y = (-a1[0] * b2 + a2[0] * b1) / det
        if _feasible((x, y), planes):
            points.add((round(x, 6), round(y, 6)))
    return sorted(points)


def _order(points):
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    return sorted(points, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))


def _collinear(points):
    (x0, y0), (x1, y1) = points[0], points[-1]
    return all(abs((x1 - x0) * (y - y0) - (y1 - y0) * (x - x0)) < 1e-6
               for x, y in points)


def _pixel(point, bounds, n):
    low, high = bounds
    scale = (SIZE - 2 * MARGIN) / (high - low)
    x = MARGIN + (point[0] - low) * scale
    y = SIZE / 2 if n == 1 else SIZE - MARGIN - (point[1] - low) * scale
    return round(x, 3), round(y, 3)


def _element(parent, tag, **attributes):
    element = etree.SubElement(parent, '{%s}%s' % (SVG_NS, tag))
    for key, value in attributes.items():
        element.set(key.replace('_', '-'), str(value))
    return element


def _draw_piece(group, points, bounds, n):
    pixels = [_pixel(p, bounds, n) for p in points]
    if len(pixels) == 1:
        (x, y), = pixels
        _element(group, 'circle', cx=x, cy=y, r=4, style=STYLE['point'])
    elif n == 1 or _collinear(points):
        (x1, y1), (x2, y2) = pixels[0], pixels[-1]
        _element(group, 'line', x1=x1, y1=y1, x2=x2, y2=y2,
                 style=STYLE['segment'])
    else:
        pixels = [_pixel(p, bounds, n) for p in _order(points)]
        _element(group, 'polygon', style=STYLE['polygon'],
                 points=' '.join('{},{}'.format(x, y) for x, y in pixels))


def render_set(D, path=None, window=DEFAULT_WINDOW):
    """
    Render a definable set clipped to a square window

    :param D: `DefinableSet` with n <= 2
    :param path: output filepath (`None` to only return the text)
    :param window: `s:t` range of every coordinate

    :returns: `str` SVG document
    """

    if D.n > 2:
        msg = 'Cannot render a set in dimension {}'.format(D.n)
        LOGGER.error(msg)
        raise ValueError(msg)

    lower, upper = parse_range(window)
    bounds = (math.log(lower), math.log(upper))

    root = etree.Element('{%s}svg' % SVG_NS, nsmap={None: SVG_NS})
    root.set('version', '1.1')
    root.set('width', str(SIZE))
    root.set('height', str(SIZE))
    root.set('viewBox', '0 0 {0} {0}'.format(SIZE))

    _element(root, 'rect', x=0, y=0, width=SIZE, height=SIZE,
             style=STYLE['background'])

    origin = _pixel((0.0, 0.0), bounds, D.n)
    axes = _element(root, 'g', id='axes')
    _element(axes, 'line', x1=MARGIN, y1=origin[1], x2=SIZE - MARGIN,
             y2=origin[1], style=STYLE['axis'])
    if D.n == 2:
        _element(axes, 'line', x1=origin[0], y1=MARGIN, x2=origin[0],
                 y2=SIZE - MARGIN, style=STYLE['axis'])
    label = _element(axes, 'text', x=MARGIN, y=SIZE - 4, font_size=10)
    label.text = 'log-log window [{}; {}]'.format(lower, upper)

    pieces = _element(root, 'g', id='set')
    for index, atoms in enumerate(D.disjuncts):
        points = _vertices(_halfplanes(atoms, D.n, bounds), D.n)
        if not points:
            LOGGER.debug('Piece {} outside of the window'.format(index))
            continue
        group = _element(pieces, 'g', id='piece-{}'.format(index))
        _draw_piece(group, points, bounds, D.n)

    text = etree.tostring(root, pretty_print=True, xml_declaration=True,
                          encoding='UTF-8').decode('utf-8')
    if path is not None:
        write_output(text, path)
    return text


def find_set(data):
    """
    Locate the definable set of a JSON artifact

    :param data: `dict` artifact

    :returns: `DefinableSet`
    """

    for key in ('carrier', 'set', 'cone'):
        if isinstance(data.get(key), dict) and 'or' in data[key]:
            return DefinableSet.from_dict(data[key])
    if isinstance(data.get('polytope'), dict):
        return find_set(data['polytope'])
    if 'or' in data:
        return DefinableSet.from_dict(data)

    msg = 'No definable set in artifact (keys: {})'.format(
        ', '.join(sorted(data)))
    LOGGER.error(msg)
    raise ValueError(msg)


@click.command('render')
@click.pass_context
@click.option('--input', '-i', 'input_', required=True,
              help='JSON artifact (inline or path)')
@click.option('--window', default=DEFAULT_WINDOW, show_default=True,
              help='Range s:t of every coordinate')
@cli_options.OPTION_OUT(required=True,
                        help='SVG output filepath')
@cli_options.cli_errors
def render(ctx, input_, window, out):
    """Render a JSON artifact as SVG"""

    render_set(find_set(read_json_input(input_)), out, window)
    click.echo('Wrote {}'.format(out))
