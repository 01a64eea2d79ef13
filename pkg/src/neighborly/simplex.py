"""From families of d-simplices in R^d to codes over {0, 1, *}.

Every facet of every simplex spans a hyperplane; the distinct hyperplanes
become the columns of the code.  All arithmetic uses :class:`Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .codes import Code
from .errors import DegenerateSimplex, DuplicateSimplex, ParseError, WrongDimension
from .words import ONE, STAR, ZERO, Word

Point = tuple[Fraction, ...]


def _det(rows: list[list[Fraction]]) -> Fraction:
    m = [list(r) for r in rows]
    size = len(m)
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, size):
            factor = m[r][col] / m[col][col]
            if factor:
                for c in range(col, size):
                    m[r][c] -= factor * m[col][c]
    return det


def _null_vector(rows: list[list[Fraction]], dim: int) -> list[Fraction]:
    """A nonzero vector orthogonal to ``rows`` (rank ``dim - 1`` assumed)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(dim):
        pivot = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
    free = next(c for c in range(dim) if c not in pivots)
    vec = [Fraction(0)] * dim
    vec[free] = Fraction(1)
    for k, c in enumerate(pivots):
        vec[c] = -m[k][free]
    return vec


@dataclass(frozen=True)
class Simplex:
    vertices: tuple[Point, ...]

    def __post_init__(self):
        verts = tuple(tuple(Fraction(x) for x in p) for p in self.vertices)
        object.__setattr__(self, "vertices", verts)
        d = len(verts) - 1
        if d < 1 or any(len(p) != d for p in verts):
            raise WrongDimension("a simplex in R^d needs d+1 points with d coordinates")

    @property
    def d(self) -> int:
        return len(self.vertices) - 1

    def is_degenerate(self) -> bool:
        p0 = self.vertices[0]
        rows = [[a - b for a, b in zip(p, p0)] for p in self.vertices[1:]]
        return _det(rows) == 0


@dataclass(frozen=True, order=True)
class OrientedHyperplane:
    """``{x : <normal, x> = offset}`` in lowest integer terms.

    The first nonzero normal coordinate is positive.  Side 1 is where
    ``<normal, x> > offset``.
    """

    normal: tuple[int, ...]
    offset: int

    @classmethod
    def through(cls, normal: Sequence[Fraction], offset: Fraction) -> "OrientedHyperplane":
        vals = [Fraction(x) for x in normal] + [Fraction(offset)]
        scale = lcm(*(v.denominator for v in vals))
        ints = [int(v * scale) for v in vals]
        g = 0
        for x in ints:
            g = gcd(g, x)
        ints = [x // g for x in ints]
        lead = next(x for x in ints[:-1] if x != 0)
        if lead < 0:
            ints = [-x for x in ints]
        return cls(tuple(ints[:-1]), ints[-1])

    def evaluate(self, p: Point) -> Fraction:
        return sum((a * x for a, x in zip(self.normal, p)), Fraction(0)) - self.offset

    def side(self, p: Point) -> int | None:
        v = self.evaluate(p)
        return None if v == 0 else int(v > 0)

    def __str__(self) -> str:
        return f"({','.join(map(str, self.normal))} | {self.offset})"


def facet_hyperplanes(s: Simplex) -> list[OrientedHyperplane]:
    """The hyperplane through each facet, facet ``k`` omitting vertex ``k``."""
    out = []
    for k in range(len(s.vertices)):
        pts = [p for i, p in enumerate(s.vertices) if i != k]
        base = pts[0]
        rows = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
        normal = _null_vector(rows, s.d)
        offset = sum((a * x for a, x in zip(normal, base)), Fraction(0))
        out.append(OrientedHyperplane.through(normal, offset))
    return out


@dataclass(frozen=True)
class SimplexFamily:
    d: int
    simplices: tuple[Simplex, ...]


def _parse_number(tok: str, lineno: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"line {lineno}: bad number {tok!r}") from None


def parse_simplices(text: str) -> SimplexFamily:
    """Read ``d=<d>`` followed by blank-line separated blocks of ``d+1`` points.

    Coordinates are integers or ``p/q`` rationals separated by whitespace or
    commas.  ``#`` starts a comment.
    """
    d = None
    blocks: list[list[Point]] = []
    current: list[Point] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if d is None:
            if not line:
                continue
            key, _, val = line.replace(" ", "").partition("=")
            if key != "d" or not val.isdigit() or int(val) < 1:
                raise ParseError(f"line {lineno}: expected header 'd=<d>'")
            d = int(val)
            continue
        if not line:
            if current:
                blocks.append(current)
                current = []
            continue
        toks = line.replace(",", " ").split()
        if len(toks) != d:
            raise ParseError(f"line {lineno}: expected {d} coordinates, got {len(toks)}")
        current.append(tuple(_parse_number(t, lineno) for t in toks))
    if current:
        blocks.append(current)
    if d is None:
        raise ParseError("missing header 'd=<d>'")
    simplices = []
    for idx, pts in enumerate(blocks, 1):
        if len(pts) != d + 1:
            raise ParseError(f"simplex {idx} has {len(pts)} points, expected {d + 1}")
        s = Simplex(tuple(pts))
        if s.is_degenerate():
            raise DegenerateSimplex(idx)
        simplices.append(s)
    return SimplexFamily(d, tuple(simplices))


def build_code(family: "SimplexFamily | Sequence[Simplex]") -> tuple[Code, list[OrientedHyperplane]]:
    """The code ``{v(sigma)}`` and its column legend.

    Columns follow first appearance of each hyperplane (simplex order, then
    facet order).  ``v(sigma)_i`` is the side of ``sigma`` when ``H_i`` spans
    one of its facets and ``*`` otherwise.
    """
    simplices = tuple(family.simplices if isinstance(family, SimplexFamily) else family)
    if not simplices:
        raise ValueError("empty simplex family")
    seen: dict[frozenset, int] = {}
    for idx, s in enumerate(simplices, 1):
        if s.is_degenerate():
            raise DegenerateSimplex(idx)
        key = frozenset(s.vertices)
        if key in seen:
            raise DuplicateSimplex(seen[key], idx)
        seen[key] = idx

    columns: dict[OrientedHyperplane, int] = {}
    facets = []
    for s in simplices:
        hs = facet_hyperplanes(s)
        facets.append(hs)
        for h in hs:
            columns.setdefault(h, len(columns))
    legend = list(columns)
    words = []
    for s, hs in zip(simplices, facets):
        letters = [STAR] * len(legend)
        for k, h in enumerate(hs):
            letters[columns[h]] = ONE if h.side(s.vertices[k]) else ZERO
        words.append(Word(tuple(letters)))
    return Code(len(legend), tuple(words)), legend


def _clip(poly: list[tuple[Fraction, Fraction]], a, b, c) -> list[tuple[Fraction, Fraction]]:
    # Keep the closed half-plane a*x + b*y <= c.
    out = []
    for k, p in enumerate(poly):
        q = poly[(k + 1) % len(poly)]
        fp = a * p[0] + b * p[1] - c
        fq = a * q[0] + b * q[1] - c
        if fp <= 0:
            out.append(p)
        if (fp < 0 < fq) or (fq < 0 < fp):
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def triangle_intersection(s1: Simplex, s2: Simplex) -> list[tuple[Fraction, Fraction]]:
    """Distinct vertices of the (possibly degenerate) convex intersection."""
    poly = [tuple(p) for p in s1.vertices]
    for h, opposite in zip(facet_hyperplanes(s2), s2.vertices):
        if not poly:
            break
        a, b = h.normal
        if h.side(opposite) == 1:
            poly = _clip(poly, -a, -b, -h.offset)
        else:
            poly = _clip(poly, a, b, h.offset)
    distinct: list[tuple[Fraction, Fraction]] = []
    for p in poly:
        if p not in distinct:
            distinct.append(p)
    return distinct


def _affine_dim(points) -> int:
    if not points:
        return -1
    base = points[0]
    vecs = [(p[0] - base[0], p[1] - base[1]) for p in points[1:]]
    vecs = [v for v in vecs if v != (0, 0)]
    if not vecs:
        return 0
    u = vecs[0]
    return 2 if any(u[0] * v[1] - u[1] * v[0] != 0 for v in vecs[1:]) else 1


def neighborly_pair_2d(s1: Simplex, s2: Simplex) -> bool:
    """True iff two triangles meet in a segment of positive length."""
    if s1.d != 2 or s2.d != 2:
        raise WrongDimension("neighborly_pair_2d works on triangles only")
    return _affine_dim(triangle_intersection(s1, s2)) == 1
