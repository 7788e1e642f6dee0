"""Marked polygons, glued fundamental domains, and curves drawn on them.

Sides of a polygon are numbered anticlockwise from 0; side ``s`` runs from
vertex ``s`` to vertex ``s + 1`` and a point on it has a parameter
``t`` in ``(0, 1)``. Orientable pairings map ``t`` to ``1 - t``, the others
(nonorientable pairs and mirror edges) map ``t`` to ``t``.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    DegenerateCurve,
    GeneratorNotPrimitive,
    MalformedSymbol,
    NotAdmissible,
    NotInGeneralPosition,
)
from .nec import PLUS, Epimorphism, NecSignature, is_admissible

ORIENTABLE = "orientable"
NONORIENTABLE = "nonorientable"
BOUNDARY = "boundary"

TYPE1 = "Type1"
TYPE2 = "Type2"


# -- surface symbols -----------------------------------------------------------


@dataclass(frozen=True)
class SurfaceSymbol:
    tokens: tuple[str, ...]

    def __post_init__(self):
        self._pairs  # validates

    @classmethod
    def parse(cls, text: str) -> "SurfaceSymbol":
        tokens = tuple(text.split())
        if not tokens:
            raise MalformedSymbol("empty symbol")
        return cls(tokens)

    def __str__(self):
        return " ".join(self.tokens)

    def __len__(self):
        return len(self.tokens)

    @staticmethod
    def label(token: str) -> str:
        return token.rstrip("'*")

    def pairs(self) -> dict[str, tuple[str, int, int | None]]:
        """``label -> (kind, plain_index, marked_index)``."""
        return dict(self._pairs)

    @functools.cached_property
    def _pairs(self) -> dict[str, tuple[str, int, int | None]]:
        seen: dict[str, list[int]] = {}
        for i, tok in enumerate(self.tokens):
            base = self.label(tok)
            if not base or len(tok) - len(base) > 1:
                raise MalformedSymbol(f"bad token {tok!r}")
            seen.setdefault(base, []).append(i)
        out = {}
        for base, idx in seen.items():
            marks = [self.tokens[i][len(base):] for i in idx]
            if len(idx) == 1 and marks == [""]:
                out[base] = (BOUNDARY, idx[0], None)
            elif len(idx) == 2 and sorted(marks) in (["", "'"], ["", "*"]):
                plain = idx[marks.index("")]
                marked = idx[1 - marks.index("")]
                kind = ORIENTABLE if "'" in marks else NONORIENTABLE
                out[base] = (kind, plain, marked)
            else:
                raise MalformedSymbol(f"label {base!r} occurs as {[self.tokens[i] for i in idx]}")
        return out

    @property
    def closed(self) -> bool:
        return all(kind != BOUNDARY for kind, _, _ in self.pairs().values())


@functools.lru_cache(maxsize=4096)
def surface_symbol(sig: NecSignature) -> SurfaceSymbol:
    """The marked polygon word of ``sig`` in token text.

    ``x`` stands for xi, ``e`` for epsilon, ``g`` for gamma, ``a`` for alpha
    and ``b`` for beta.
    """
    toks: list[str] = []
    for i in range(1, sig.r + 1):
        toks += [f"x{i}", f"x{i}'"]
    for j in range(1, sig.k + 1):
        toks += [f"e{j}", f"g{j}", f"e{j}'"]
    for l in range(1, sig.h + 1):
        if sig.sign == PLUS:
            toks += [f"a{l}", f"b{l}'", f"a{l}'", f"b{l}"]
        else:
            toks += [f"a{l}", f"a{l}*"]
    if not toks:
        raise MalformedSymbol(f"{sig} has an empty polygon")
    return SurfaceSymbol(tuple(toks))


# -- glued surfaces ------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    orientable: bool
    genus: int
    euler_characteristic: int


@dataclass(frozen=True)
class GluedSurface:
    """``n`` copies of one polygon with a perfect matching on their sides.

    ``partner[c][s] = (c2, s2, flip)``; the deck transformation shifts copy
    indices by one.
    """

    symbol: SurfaceSymbol
    n: int
    partner: tuple[tuple[tuple[int, int, bool], ...], ...]
    copy_values: tuple[int, ...] = ()

    @property
    def sides(self) -> int:
        return len(self.symbol)

    def glue(self, copy: int, side: int) -> tuple[int, int, bool]:
        return self.partner[copy][side]

    def map_point(self, copy: int, side: int, t: Fraction) -> tuple[int, int, Fraction]:
        c2, s2, flip = self.partner[copy][side]
        return c2, s2, (t if flip else 1 - t)

    def side_index(self, token: str) -> int:
        try:
            return self.symbol.tokens.index(token)
        except ValueError:
            raise MalformedSymbol(f"no side {token!r} in {self.symbol}") from None


def _glued_from_pairs(symbol: SurfaceSymbol, n: int, partner, values=()) -> GluedSurface:
    frozen = tuple(tuple(row) for row in partner)
    for c in range(n):
        for s in range(len(symbol)):
            c2, s2, flip = frozen[c][s]
            if frozen[c2][s2] != (c, s, flip) or (c2, s2) == (c, s):
                raise NotAdmissible(f"side pairing is not a perfect matching at copy {c} side {s}")
    return GluedSurface(symbol, n, frozen, tuple(values))


def glue_symbol(sym: SurfaceSymbol) -> GluedSurface:
    """The one-polygon surface described by a closed symbol."""
    partner: list[list] = [[None] * len(sym)]
    for label, (kind, p, q) in sym._pairs.items():
        if kind == BOUNDARY:
            raise MalformedSymbol(f"{label!r} is a boundary edge; symbol is not closed")
        flip = kind == NONORIENTABLE
        partner[0][p] = (0, q, flip)
        partner[0][q] = (0, p, flip)
    return _glued_from_pairs(sym, 1, partner)


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.parity = [0] * size
        self.odd = False  # some merge closed an odd loop

    def find(self, x: int) -> tuple[int, int]:
        par = 0
        root = x
        while self.parent[root] != root:
            par ^= self.parity[root]
            root = self.parent[root]
        # path compression
        cur, cur_par = x, par
        while self.parent[cur] != root and cur != root:
            nxt, nxt_par = self.parent[cur], cur_par ^ self.parity[cur]
            self.parent[cur], self.parity[cur] = root, cur_par
            cur, cur_par = nxt, nxt_par
        return root, par

    def union(self, a: int, b: int, parity: int = 0) -> None:
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            if pa ^ pb != parity:
                self.odd = True
            return
        self.parent[rb] = ra
        self.parity[rb] = pa ^ pb ^ parity

    def roots(self) -> set[int]:
        return {self.find(x)[0] for x in range(len(self.parent))}


def classify(glued: GluedSurface) -> Classification:
    """Euler characteristic from vertex cycles, orientability from face colouring."""
    L, n = glued.sides, glued.n
    parent = list(range(n * L))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    faces = _UnionFind(n)
    for c in range(n):
        for s in range(L):
            c2, s2, flip = glued.partner[c][s]
            nxt, nxt2 = (s + 1) % L, (s2 + 1) % L
            links = ((s, s2), (nxt, nxt2)) if flip else ((s, nxt2), (nxt, s2))
            for u, v in links:
                ru, rv = find(c * L + u), find(c2 * L + v)
                if ru != rv:
                    parent[ru] = rv
            faces.union(c, c2, int(flip))
    vertices = sum(1 for x in range(n * L) if find(x) == x)
    chi = vertices - n * L // 2 + n
    orientable = not faces.odd
    genus = (2 - chi) // 2 if orientable else 2 - chi
    return Classification(orientable, genus, chi)


def classify_symbol(sym: SurfaceSymbol | str) -> Classification:
    if isinstance(sym, str):
        sym = SurfaceSymbol.parse(sym)
    return classify(glue_symbol(sym))


def _generator_of(label: str, sig: NecSignature) -> str:
    kind, idx = label[0], label[1:]
    if kind == "g":
        return f"c{idx}"
    if kind == "a" and sig.sign != PLUS:
        return f"d{idx}"
    return label


def assemble_fundamental_domain(
    sig: NecSignature, theta: Epimorphism, y_generator: str | int | None = None
) -> GluedSurface:
    """Glue ``n`` copies of the marked polygon into ``H^2 / ker(theta)``.

    Copy ``i`` is ``y^i P`` where ``y`` is the named generator (or any
    element with the given image). Its side ``z`` is glued to side ``z'``
    of the copy whose coset differs by ``theta`` of the pairing generator.
    """
    n = theta.n
    if not is_admissible(sig, theta):
        raise NotAdmissible(f"theta is not admissible for {sig}")
    if y_generator is None:
        t = next((v for v in theta.values() if math.gcd(v, n) == 1), None)
        if t is None:
            raise GeneratorNotPrimitive("no generator maps to a unit")
    elif isinstance(y_generator, str):
        t = theta[y_generator]
    else:
        t = y_generator % n
    if math.gcd(t, n) != 1:
        raise GeneratorNotPrimitive(f"theta(y) = {t} does not generate Z_{n}")
    t_inv = pow(t, -1, n) if n > 1 else 0
    copy_of = lambda v: (v % n) * t_inv % n if n > 1 else 0  # noqa: E731

    sym = surface_symbol(sig)
    L = len(sym)
    partner: list[list] = [[None] * L for _ in range(n)]
    for label, (kind, p, q) in sym._pairs.items():
        shift = theta[_generator_of(label, sig)]
        for i in range(n):
            v = i * t % n
            j = copy_of(v + shift)
            if kind == BOUNDARY:
                if shift % n == 0:
                    raise NotAdmissible(f"mirror {label} stays on the boundary")
                partner[i][p] = (j, p, True)
            else:
                flip = kind == NONORIENTABLE
                partner[i][p] = (j, q, flip)
                partner[j][q] = (i, p, flip)
    values = tuple(i * t % n for i in range(n))
    return _glued_from_pairs(sym, n, partner, values)


# -- curves ---------------------------------------------------------------------


@dataclass(frozen=True)
class Chord:
    copy: int
    entry: tuple[int, Fraction]
    exit: tuple[int, Fraction]

    def to_json(self) -> dict:
        def pt(p):
            return [p[0], p[1].numerator, p[1].denominator]

        return {"copy": self.copy, "in": pt(self.entry), "out": pt(self.exit)}

    @classmethod
    def from_json(cls, data) -> "Chord":
        def pt(raw):
            side, num, den = raw
            return int(side), Fraction(int(num), int(den))

        return cls(int(data["copy"]), pt(data["in"]), pt(data["out"]))


@dataclass(frozen=True)
class CurveDiagram:
    chords: tuple[Chord, ...]

    @classmethod
    def from_json(cls, data) -> "CurveDiagram":
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, dict):
            data = data["chords"]
        return cls(tuple(Chord.from_json(c) for c in data))

    def to_json(self) -> list:
        return [c.to_json() for c in self.chords]

    def __len__(self):
        return len(self.chords)


def _boundary_point(glued: GluedSurface, copy: int, side: int, t: Fraction):
    """Canonical name of a boundary point (the smaller of its two copies)."""
    return min((copy, side, t), glued.map_point(copy, side, t))


def validate_curve(curve: CurveDiagram, glued: GluedSurface) -> None:
    if not curve.chords:
        raise DegenerateCurve("curve has no chords")
    m = len(curve.chords)
    for i, ch in enumerate(curve.chords):
        if not 0 <= ch.copy < glued.n:
            raise DegenerateCurve(f"chord {i}: copy {ch.copy} out of range")
        for side, t in (ch.entry, ch.exit):
            if not 0 <= side < glued.sides:
                raise DegenerateCurve(f"chord {i}: side {side} out of range")
            if not 0 < t < 1:
                raise DegenerateCurve(f"chord {i}: position {t} not in (0, 1)")
        if ch.entry == ch.exit:
            raise DegenerateCurve(f"chord {i} has identical endpoints")
        nxt = curve.chords[(i + 1) % m]
        if glued.map_point(ch.copy, *ch.exit) != (nxt.copy, *nxt.entry):
            raise DegenerateCurve(f"chord {i} exit is not glued to chord {(i + 1) % m} entry")


def deck_image(curve: CurveDiagram, glued: GluedSurface, power: int = 1) -> CurveDiagram:
    n = glued.n
    return CurveDiagram(
        tuple(Chord((ch.copy + power) % n, ch.entry, ch.exit) for ch in curve.chords)
    )


def _circle(p: tuple[int, Fraction]) -> Fraction:
    return p[0] + p[1]


def _crosses(u: Chord, v: Chord) -> bool:
    a, b = sorted((_circle(u.entry), _circle(u.exit)))
    x, y = _circle(v.entry), _circle(v.exit)
    return (a < x < b) != (a < y < b)


def _crossings(chords_a: Sequence[Chord], chords_b: Sequence[Chord], same: bool) -> int:
    count = 0
    for i, u in enumerate(chords_a):
        for j, v in enumerate(chords_b):
            if same and j <= i:
                continue
            if u.copy == v.copy and _crosses(u, v):
                count += 1
    return count


def _points(curve: CurveDiagram, glued: GluedSurface) -> list:
    return [_boundary_point(glued, ch.copy, *ch.exit) for ch in curve.chords]


@dataclass(frozen=True)
class CurveProperties:
    simple: bool
    two_sided: bool


def curve_properties(curve: CurveDiagram, glued: GluedSurface) -> CurveProperties:
    validate_curve(curve, glued)
    pts = _points(curve, glued)
    simple = len(set(pts)) == len(pts) and _crossings(curve.chords, curve.chords, True) == 0
    flips = sum(glued.glue(ch.copy, ch.exit[0])[2] for ch in curve.chords)
    return CurveProperties(simple, flips % 2 == 0)


def intersection_count(c1: CurveDiagram, c2: CurveDiagram, glued: GluedSurface) -> int:
    """Transverse crossings of the two representatives."""
    validate_curve(c1, glued)
    validate_curve(c2, glued)
    if set(_points(c1, glued)) & set(_points(c2, glued)):
        raise NotInGeneralPosition("the curves share a boundary point")
    return _crossings(c1.chords, c2.chords, False)


@dataclass(frozen=True)
class ComplementProfile:
    connected: bool
    non_orientable: bool


def complement_profile(curves: Iterable[CurveDiagram], glued: GluedSurface) -> ComplementProfile:
    """Cut every copy along all chords and reglue the pieces.

    Pieces touching the polygon boundary are named by which side of each
    chord they lie on; pieces cut off from the boundary entirely (possible
    only when chords cross) are counted from the face count of the chord
    arrangement and are isolated discs.
    """
    curves = list(curves)
    for c in curves:
        validate_curve(c, glued)
    points = [p for c in curves for p in _points(c, glued)]
    if len(set(points)) != len(points):
        raise NotInGeneralPosition("curves share boundary points")
    L = glued.sides
    per_copy: list[list[Chord]] = [[] for _ in range(glued.n)]
    for c in curves:
        for ch in c.chords:
            per_copy[ch.copy].append(ch)
    spans = [
        [tuple(sorted((_circle(ch.entry), _circle(ch.exit)))) for ch in chords]
        for chords in per_copy
    ]
    breaks: list[list[list[Fraction]]] = [[[] for _ in range(L)] for _ in range(glued.n)]
    for copy, chords in enumerate(per_copy):
        for ch in chords:
            for side, t in (ch.entry, ch.exit):
                breaks[copy][side].append(t)

    ids: dict[tuple, int] = {}

    def region(copy: int, pos: Fraction) -> int:
        key = (copy, tuple(a < pos < b for a, b in spans[copy]))
        return ids.setdefault(key, len(ids))

    edges = []
    for copy in range(glued.n):
        for side in range(L):
            cuts = sorted(breaks[copy][side])
            marks = [Fraction(0)] + cuts + [Fraction(1)]
            for lo, hi in zip(marks, marks[1:]):
                mid = (lo + hi) / 2
                c2, s2, t2 = glued.map_point(copy, side, mid)
                flip = glued.glue(copy, side)[2]
                edges.append((region(copy, side + mid), region(c2, s2 + t2), int(flip)))

    interior = 0
    for copy, chords in enumerate(per_copy):
        faces = 1 + len(chords) + _crossings(chords, chords, True)
        touching = sum(1 for key in ids if key[0] == copy)
        interior += faces - touching

    uf = _UnionFind(len(ids))
    for a, b, f in edges:
        uf.union(a, b, f)
    components = len(uf.roots()) + interior
    return ComplementProfile(components == 1, uf.odd)


def is_non_separating(curve: CurveDiagram, glued: GluedSurface) -> bool:
    return complement_profile([curve], glued).connected


def is_standard_pair(c: CurveDiagram, d: CurveDiagram, glued: GluedSurface) -> str | None:
    for curve in (c, d):
        props = curve_properties(curve, glued)
        if not (props.simple and props.two_sided):
            return None
        if not is_non_separating(curve, glued):
            return None
    i = intersection_count(c, d, glued)
    if i == 1:
        return TYPE1
    if i == 0 and complement_profile([c, d], glued) == ComplementProfile(True, True):
        return TYPE2
    return None


# -- figure fixtures ----------------------------------------------------------


@dataclass(frozen=True)
class Fixture:
    """A hand-encoded standard pair ``(c, y(c))`` on an assembled domain."""

    name: str
    caption: str
    signature: NecSignature
    theta: Epimorphism
    y_generator: str
    curve: CurveDiagram
    expected: str
    note: str = ""

    @classmethod
    def from_json(cls, data: dict) -> "Fixture":
        sig = NecSignature.parse(data["signature"])
        theta = Epimorphism.from_dict(int(data["n"]), data["theta"], sig)
        return cls(
            data["name"],
            data["caption"],
            sig,
            theta,
            data["y"],
            CurveDiagram.from_json(data["curve"]),
            data["expected"],
            data.get("note", ""),
        )

    def glued(self) -> GluedSurface:
        return assemble_fundamental_domain(self.signature, self.theta, self.y_generator)

    def verdict(self) -> str | None:
        glued = self.glued()
        return is_standard_pair(self.curve, deck_image(self.curve, glued), glued)


def load_fixtures(directory: str | Path | None = None) -> list[Fixture]:
    """Fixtures from ``directory`` or the bundled corpus, sorted by file name."""
    if directory is None:
        root = resources.files("periodic_mcg") / "fixtures"
        files = sorted((p for p in root.iterdir() if p.name.endswith(".json")), key=lambda p: p.name)
        texts = [p.read_text() for p in files]
    else:
        texts = [p.read_text() for p in sorted(Path(directory).glob("*.json"))]
    return [Fixture.from_json(json.loads(t)) for t in texts]
