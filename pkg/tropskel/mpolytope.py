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

"""
Compact c-polytopes of (R*+)^n, their convex-cell decompositions and
piecewise multiplicative-affine maps
"""

import logging

import networkx as nx
import sympy

from tropskel.linarith import (AffForm, Atom, DefinableSet,
                               DimensionMismatchError,
                               NotInSetError, affine_hull, closure,
                               conjunction_empty, coordinate_bounds,
                               intersection, membership, merge_groups,
                               project, rank, relative_interior_point,
                               simplify_conjunction, tangent_cone)
from tropskel.ovalgroup import GroupElement, ValueGroupDesc, sign
from tropskel.util import DomainError, sympy_rational, to_fraction

LOGGER = logging.getLogger(__name__)

LESS = '<'
EQUAL = '='
GREATER = '>'


class CPolytope:
    """Certified compact definable set with constants in a group"""

    def __init__(self, carrier, group, bounds):
        """
        Initialize object

        :param carrier: closed `DefinableSet`
        :param group: parameter group (`ValueGroupDesc`)
        :param bounds: per-coordinate `(lower, upper)` certificate, `None`
                       for the empty polytope

        :returns: `tropskel.mpolytope.CPolytope`
        """

        self.carrier = carrier
        self.group = group
        self.bounds = bounds

    @property
    def n(self):
        return self.carrier.n

    def is_empty(self):
        return self.bounds is None

    def contains(self, x):
        return membership(self.carrier, x)

    def to_dict(self):
        return {
            'carrier': self.carrier.to_dict(),
            'group': self.group.to_dict(),
            'bounds': None if self.bounds is None else [
                [low.to_dict(), high.to_dict()] for low, high in self.bounds]
        }

    def __repr__(self):
        return '<CPolytope> n={} {}'.format(self.n, self.carrier)


def make_polytope(D, group=None):
    """
    Close a definable set and certify it as a c-polytope

    :param D: `DefinableSet`
    :param group: parameter group (default: generated by the constants)

    :returns: `CPolytope`
    """

    carrier = closure(D)
    if group is None:
        group = ValueGroupDesc.generated_by(carrier.constants())

    for constant in carrier.constants():
        if not group.contains(constant):
            msg = 'Constant {} is not in the parameter group {}'.format(
                constant, group)
            LOGGER.error(msg)
            raise ConstantOutsideParameterGroupError(msg)

    bounds = []
    for i in range(carrier.n):
        bound = coordinate_bounds(carrier, i)
        if bound is None:
            LOGGER.debug('Empty carrier, no compactness certificate needed')
            return CPolytope(carrier, group, None)
        low, high = bound
        if low is None:
            raise UnboundedError(i, '-')
        if high is None:
            raise UnboundedError(i, '+')
        bounds.append((low, high))

    return CPolytope(carrier, group, bounds)


def change_parameters(P, group):
    """
    Extend the parameter class of a polytope

    :param P: `CPolytope`
    :param group: larger `ValueGroupDesc`

    :returns: `CPolytope` with the same carrier
    """

    if not all(group.contains(c) for c in P.group.constants):
        msg = 'Group {} does not contain {}'.format(group, P.group)
        LOGGER.error(msg)
        raise ValueError(msg)
    return CPolytope(P.carrier, group, P.bounds)


def _hyperplane(form):
    """Orient a form so that its first nonzero exponent is positive"""

    for a in form.coefficients:
        if a:
            return form if a > 0 else form.inverse()
    return form


def _sign_atoms(hyperplane, sign_):
    if sign_ == LESS:
        return (Atom(hyperplane, True),)
    if sign_ == GREATER:
        return (Atom(hyperplane.inverse(), True),)
    return (Atom(hyperplane), Atom(hyperplane.inverse()))


def _is_face(smaller, larger):
    return all(s == t or s == EQUAL for s, t in zip(smaller, larger))


class Cell:
    """Closed convex cell of a decomposition"""

    def __init__(self, n, group, pattern, atoms):
        self.pattern = pattern
        self.polytope = DefinableSet.conjunction(
            n, [a.relax() for a in atoms], group)
        self.point = relative_interior_point(atoms, n, group)
        self.hull = affine_hull(self.polytope.disjuncts[0], n, group)

    @property
    def dimension(self):
        return self.hull.dimension

    def to_dict(self):
        return {
            'set': self.polytope.to_dict(),
            'dimension': self.dimension,
            'point': [t.to_dict() for t in self.point]
        }

    def __repr__(self):
        return '<Cell> dim={} {}'.format(self.dimension,
                                         ''.join(self.pattern))


class CellComplex:
    """Convex cells covering a closed set, with shared faces"""

    def __init__(self, carrier, hyperplanes, cells, faces, adjacency):
        self.carrier = carrier
        self.hyperplanes = hyperplanes
        self.cells = cells
        self.faces = faces
        self.adjacency = adjacency

    @property
    def n(self):
        return self.carrier.n

    def dimension(self):
        return max((c.dimension for c in self.cells), default=-1)

    def locate(self, x, group=None):
        """Indexes of the cells containing x"""

        return [i for i, cell in enumerate(self.cells)
                if membership(cell.polytope, x, group)]

    def graph(self):
        """
        :returns: `networkx.Graph` on the cells, edges through faces
        """

        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.cells)))
        for i, neighbours in self.adjacency.items():
            for j in neighbours:
                graph.add_edge(i, j)
        return graph

    def to_dict(self):
        return {
            'n': self.n,
            'cells': [cell.to_dict() for cell in self.cells],
            'faces': [face.to_dict() for face in self.faces],
            'adjacency': {str(i): sorted(j) for i, j in
                          sorted(self.adjacency.items())}
        }

    def __repr__(self):
        return '<CellComplex> {} cells, {} faces'.format(
            len(self.cells), len(self.faces))


def _enumerate_patterns(D, hyperplanes):
    patterns = []

    def visit(prefix, atoms):
        if not any(not conjunction_empty(atoms + disjunct, D.n, D.group)
                   for disjunct in D.disjuncts):
            return
        if len(prefix) == len(hyperplanes):
            patterns.append((prefix, atoms))
            return
        hyperplane = hyperplanes[len(prefix)]
        for sign_ in (LESS, EQUAL, GREATER):
            visit(prefix + (sign_,), atoms + _sign_atoms(hyperplane, sign_))

    visit((), ())
    return patterns


def decompose_set(D):
    """
    Convex-cell decomposition of a closed definable set by overlaying
    the arrangement of its forms

    :param D: closed `DefinableSet`

    :returns: `CellComplex`
    """

    hyperplanes = []
    for form in D.forms():
        hyperplane = _hyperplane(form)
        if hyperplane not in hyperplanes:
            hyperplanes.append(hyperplane)

    patterns = _enumerate_patterns(D, hyperplanes)
    LOGGER.debug('{} hyperplanes, {} relatively open pieces'.format(
        len(hyperplanes), len(patterns)))

    maximal = [
        (pattern, atoms) for pattern, atoms in patterns
        if not any(other != pattern and _is_face(pattern, other)
                   for other, _ in patterns)
    ]
    cells = [Cell(D.n, D.group, pattern, atoms)
             for pattern, atoms in maximal]

    faces = []
    face_keys = []
    adjacency = {i: set() for i in range(len(cells))}
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            meet = simplify_conjunction(
                cells[i].polytope.disjuncts[0] +
                cells[j].polytope.disjuncts[0], D.group)
            if meet is None or conjunction_empty(meet, D.n, D.group):
                continue
            adjacency[i].add(j)
            adjacency[j].add(i)

            point = relative_interior_point(meet, D.n, D.group)
            key = tuple(
                EQUAL if s == 0 else (LESS if s < 0 else GREATER)
                for s in (sign(h.evaluate(point), D.group)
                          for h in hyperplanes))
            if key not in face_keys:
                face_keys.append(key)
                faces.append(DefinableSet.conjunction(D.n, meet, D.group))

    return CellComplex(D, hyperplanes, cells, faces, adjacency)


def decompose(P):
    """
    :param P: `CPolytope`

    :returns: `CellComplex` of the carrier
    """

    return decompose_set(P.carrier)


def _monomial_rows(matrix, n):
    rows = [[to_fraction(v) for v in row] for row in matrix]
    if any(len(row) != n for row in rows):
        msg = 'Monomial matrix rows must have {} entries'.format(n)
        LOGGER.error(msg)
        raise DimensionMismatchError(msg)
    return rows


def monomial_forms(matrix, constants=None, n=None):
    """
    Forms `cst_k * prod(t_j ** M[k][j])`

    :param matrix: m x n rational matrix
    :param constants: `list` of m constants (default 1)
    :param n: source dimension (inferred from the matrix)

    :returns: `list` of `AffForm`
    """

    n = n if n is not None else len(matrix[0])
    rows = _monomial_rows(matrix, n)
    constants = constants or [GroupElement.one()] * len(rows)
    return [AffForm(row, c) for row, c in zip(rows, constants)]


def image_monomial(P, matrix, constants=None):
    """
    Image of a polytope under t -> cst * t^M

    :param P: `CPolytope`
    :param matrix: m x n rational matrix
    :param constants: `list` of m `GroupElement` (default 1)

    :returns: `CPolytope` in m coordinates
    """

    n = P.n
    forms = monomial_forms(matrix, constants, n)
    m = len(forms)

    atoms = []
    for k, form in enumerate(forms):
        s = [0] * m
        s[k] = -1
        graph = AffForm(form.coefficients + tuple(s), form.constant)
        atoms.append(Atom(graph))
        atoms.append(Atom(graph.inverse()))

    lifted = DefinableSet(n + m, [
        tuple(Atom(a.form.extend(m), a.strict) for a in disjunct) +
        tuple(atoms) for disjunct in P.carrier.disjuncts
    ], P.carrier.group)

    image = project(lifted, range(n, n + m))
    group = P.group.join(form.constant for form in forms)
    return make_polytope(image, group)


def star(P, xi):
    """
    Local cone of a polytope at one of its points

    :param P: `CPolytope` (or closed `DefinableSet`)
    :param xi: point of P

    :returns: `DefinableSet` cone of directions
    """

    carrier = P.carrier if isinstance(P, CPolytope) else P
    if not membership(carrier, xi):
        msg = 'Point {} is not in the polytope'.format(
            [str(GroupElement.coerce(t)) for t in xi])
        LOGGER.error(msg)
        raise NotInSetError(msg)
    return tangent_cone(carrier, xi)


class PLMap:
    """Piecewise multiplicative-affine map on a cell complex"""

    def __init__(self, complex_, forms):
        """
        Initialize object

        :param complex_: source `CellComplex`
        :param forms: per-cell `list` of m `AffForm`

        :returns: `tropskel.mpolytope.PLMap`
        """

        self.complex = complex_
        self.forms = [tuple(f) for f in forms]

        if len(self.forms) != len(complex_.cells):
            msg = '{} pieces for {} cells'.format(len(self.forms),
                                                 len(complex_.cells))
            LOGGER.error(msg)
            raise DimensionMismatchError(msg)

        self.m = len(self.forms[0]) if self.forms else 0
        self._check_faces()

    @classmethod
    def uniform(cls, complex_, forms):
        """Same forms on every cell"""

        return cls(complex_, [forms] * len(complex_.cells))

    @classmethod
    def identity(cls, complex_):
        n = complex_.n
        return cls.uniform(complex_, [AffForm.coordinate(n, i)
                                      for i in range(n)])

    def _check_faces(self):
        carrier = self.complex.carrier
        for i, neighbours in self.complex.adjacency.items():
            for j in neighbours:
                if j <= i:
                    continue
                face = (self.complex.cells[i].polytope.disjuncts[0] +
                        self.complex.cells[j].polytope.disjuncts[0])
                for f, g in zip(self.forms[i], self.forms[j]):
                    ratio = f * g.inverse()
                    for atom in (Atom(ratio, True),
                                 Atom(ratio.inverse(), True)):
                        if not conjunction_empty(face + (atom,), carrier.n,
                                                 carrier.group):
                            msg = 'Pieces {} and {} disagree on their ' \
                                  'shared face'.format(i, j)
                            LOGGER.error(msg)
                            raise ValueError(msg)

    def evaluate(self, x):
        """
        :param x: point of the source complex

        :returns: `list` of `GroupElement`
        """

        cells = self.complex.locate(x)
        if not cells:
            msg = 'Point {} is outside the source complex'.format(
                [str(GroupElement.coerce(t)) for t in x])
            LOGGER.error(msg)
            raise NotInSetError(msg)
        return [f.evaluate(x) for f in self.forms[cells[0]]]

    def compose_monomial(self, matrix, constants=None):
        """
        Post-compose with the monomial map u -> cst * u^M

        :param matrix: k x m rational matrix
        :param constants: `list` of k constants

        :returns: `PLMap`
        """

        outer = monomial_forms(matrix, constants, self.m)
        forms = []
        for piece in self.forms:
            composed = []
            for form in outer:
                value = AffForm([0] * self.complex.n, form.constant)
                for a, f in zip(form.coefficients, piece):
                    if a:
                        value = value * (f ** a)
                composed.append(value)
            forms.append(composed)
        return PLMap(self.complex, forms)

    def linear_parts(self, i):
        return [f.coefficients for f in self.forms[i]]

    def to_dict(self):
        return {
            'complex': self.complex.to_dict(),
            'forms': [[f.to_dict() for f in piece] for piece in self.forms]
        }

    def __repr__(self):
        return '<PLMap> {} pieces to n={}'.format(len(self.forms), self.m)


def _restricted_rank(rows, directions):
    if not rows or not directions:
        return 0
    A = sympy.Matrix([[sympy_rational(a) for a in row] for row in rows])
    B = sympy.Matrix([[sympy_rational(v) for v in d]
                      for d in directions]).T
    return (A * B).rank()


def is_piecewise_immersion(f):
    """
    :param f: `PLMap`

    :returns: `bool` whether the linear part is injective on every cell
    """

    for i, cell in enumerate(f.complex.cells):
        directions = cell.hull.directions
        if _restricted_rank(f.linear_parts(i), directions) != len(directions):
            LOGGER.debug('Cell {} collapses under the map'.format(i))
            return False
    return True


class Chart:
    """c-polytope with chart functions"""

    def __init__(self, polytope, forms=None):
        """
        Initialize object

        :param polytope: `CPolytope`
        :param forms: `list` of `AffForm` chart functions (default:
                      coordinates)

        :returns: `tropskel.mpolytope.Chart`
        """

        self.polytope = polytope
        if forms is None:
            forms = [AffForm.coordinate(polytope.n, i)
                     for i in range(polytope.n)]
        self.forms = list(forms)

    @classmethod
    def monomial(cls, polytope, matrix, constants=None):
        return cls(polytope, monomial_forms(matrix, constants, polytope.n))

    def rows(self):
        return [f.coefficients for f in self.forms]

    def __repr__(self):
        return '<Chart> {} functions on {!r}'.format(len(self.forms),
                                                     self.polytope)


def _as_chart(P):
    return P if isinstance(P, Chart) else Chart(P)


def _chart_relation(cell, source, target, directions):
    """
    Express the target chart on a cell as a monomial in the source chart
    and return the constant of that relation
    """

    A = sympy.Matrix([[sympy_rational(a) for a in f.coefficients]
                      for f in source]) * sympy.Matrix(
        [[sympy_rational(v) for v in d] for d in directions]).T

    constants = []
    for form in target:
        row = sympy.Matrix([[sympy_rational(a) for a in form.coefficients]]) \
            * sympy.Matrix([[sympy_rational(v) for v in d]
                            for d in directions]).T
        solution, params = A.T.gauss_jordan_solve(row.T)
        solution = solution.subs({p: 0 for p in params})
        value = form.evaluate(cell.point)
        for q, f in zip(solution, source):
            value = value / (f.evaluate(cell.point) ** to_fraction(q))
        constants.append(value)
    return constants


def atlas_compatible(P, Q):
    """
    Compatibility of two charted polytopes: the intersection is a
    polytope of both and on each of its cells the chart functions of
    one are monomial in those of the other

    :param P: `Chart` or `CPolytope`
    :param Q: `Chart` or `CPolytope`

    :returns: `bool`
    """

    P, Q = _as_chart(P), _as_chart(Q)
    if P.polytope.n != Q.polytope.n:
        msg = 'Charts on spaces of dimension {} and {}'.format(
            P.polytope.n, Q.polytope.n)
        LOGGER.error(msg)
        raise DimensionMismatchError(msg)

    meet = intersection(P.polytope.carrier, Q.polytope.carrier)
    if not meet.disjuncts:
        LOGGER.debug('Empty intersection, charts trivially compatible')
        return True

    for group in (P.polytope.group, Q.polytope.group):
        try:
            make_polytope(meet, group)
        except (ConstantOutsideParameterGroupError, UnboundedError) as err:
            LOGGER.debug('Intersection is not a polytope of both: {}'.format(
                err))
            return False

    rows_p, rows_q = P.rows(), Q.rows()
    for cell in decompose_set(meet).cells:
        directions = cell.hull.directions
        if not directions:
            continue
        d = len(directions)
        rank_p = _restricted_rank(rows_p, directions)
        rank_q = _restricted_rank(rows_q, directions)
        rank_pq = _restricted_rank(rows_p + rows_q, directions)
        if not rank_p == rank_q == rank_pq == d:
            LOGGER.debug('Chart ranks {} {} {} on a cell of dimension '
                         '{}'.format(rank_p, rank_q, rank_pq, d))
            return False

        for source, target, group in ((P.forms, Q.forms, P.polytope.group),
                                      (Q.forms, P.forms, Q.polytope.group)):
            for constant in _chart_relation(cell, source, target, directions):
                if not group.contains(constant):
                    LOGGER.debug('Relation constant {} outside {}'.format(
                        constant, group))
                    return False

    return True


def merge_polytopes(P, Q):
    """Union of two polytopes as one certified polytope"""

    carrier = DefinableSet(P.n, P.carrier.disjuncts + Q.carrier.disjuncts,
                           merge_groups(P.carrier.group, Q.carrier.group))
    return make_polytope(carrier, P.group.join(Q.group.constants)
                         if not Q.group.full else Q.group)


def rank_of(matrix):
    return rank([[to_fraction(v) for v in row] for row in matrix])


class UnboundedError(DomainError):
    """unbounded coordinate"""

    def __init__(self, coordinate, direction):
        self.coordinate = coordinate
        self.direction = direction
        msg = 'Coordinate t{} is unbounded ({})'.format(coordinate + 1,
                                                        direction)
        LOGGER.error(msg)
        super().__init__(msg)


class ConstantOutsideParameterGroupError(DomainError):
    """constant outside of the parameter group"""
    pass
