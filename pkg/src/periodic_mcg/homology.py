"""Actions of involutions on ``H_1(N_g; Z_2)`` and determinants on ``H_1(N_g; R)``.

Vectors over ``Z_2`` are Python ints used as bitsets (bit ``i`` is the
coordinate on basis vector ``i``). A :class:`Z2Matrix` stores the images of
the basis vectors, i.e. its columns.

In a :class:`Layout` ``(h', k')`` the basis is ordered
``a_1, b_1, ..., a_h', b_h', c_1, ..., c_k'``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    GenusTooSmall,
    InvalidParameters,
    NotUnimodular,
    QuotientUndefined,
    UnsupportedModel,
)
from .involutions import (
    BLOW_UP_2_ORBIT,
    BLOW_UP_ISOLATED,
    BLOW_UP_NON_ISOLATED,
    Base,
    InvolutionClass,
    ModelRecipe,
    SurgeryStep,
    check_class,
    is_valid_class,
    model_recipe,
)


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


def _bits(x: int) -> Iterable[int]:
    i = 0
    while x:
        if x & 1:
            yield i
        x >>= 1
        i += 1


class _Reducer:
    """Incremental GF(2) elimination that remembers how each row was built."""

    def __init__(self):
        self.rows: dict[int, tuple[int, int]] = {}  # pivot bit -> (vector, combination)

    def reduce(self, v: int, combo: int = 0) -> tuple[int, int]:
        while v:
            top = v.bit_length() - 1
            if top not in self.rows:
                break
            rv, rc = self.rows[top]
            v ^= rv
            combo ^= rc
        return v, combo

    def add(self, v: int, combo: int) -> bool:
        v, combo = self.reduce(v, combo)
        if v:
            self.rows[v.bit_length() - 1] = (v, combo)
            return True
        return False


# -- layouts and forms -----------------------------------------------------------


@dataclass(frozen=True)
class Layout:
    h: int
    k: int

    def __post_init__(self):
        if self.h < 0 or self.k < 0 or self.g == 0:
            raise InvalidParameters(f"bad layout h'={self.h}, k'={self.k}")

    @property
    def g(self) -> int:
        return 2 * self.h + self.k

    def a(self, i: int) -> int:
        return 1 << (2 * (i - 1))

    def b(self, i: int) -> int:
        return 1 << (2 * i - 1)

    def c(self, j: int) -> int:
        return 1 << (2 * self.h + j - 1)

    @property
    def c_class(self) -> int:
        """``[c] = [c_1] + ... + [c_k']``."""
        return sum(self.c(j) for j in range(1, self.k + 1))

    def header(self) -> str:
        return f"layout h'={self.h},k'={self.k}"

    def names(self) -> list[str]:
        out = []
        for i in range(1, self.h + 1):
            out += [f"a{i}", f"b{i}"]
        return out + [f"c{j}" for j in range(1, self.k + 1)]


@dataclass(frozen=True)
class IntersectionForm:
    """Symmetric bilinear form given by its Gram rows."""

    gram: tuple[int, ...]

    @classmethod
    def standard(cls, layout: Layout) -> "IntersectionForm":
        rows = [0] * layout.g
        for i in range(1, layout.h + 1):
            ai, bi = 2 * (i - 1), 2 * i - 1
            rows[ai] = 1 << bi
            rows[bi] = 1 << ai
        for j in range(1, layout.k + 1):
            idx = 2 * layout.h + j - 1
            rows[idx] = 1 << idx
        return cls(tuple(rows))

    @property
    def dim(self) -> int:
        return len(self.gram)

    def __call__(self, u: int, v: int) -> int:
        return _parity(sum(1 << i for i in _bits(u) if _parity(self.gram[i] & v)))

    def is_symmetric(self) -> bool:
        n = self.dim
        return all(((self.gram[i] >> j) & 1) == ((self.gram[j] >> i) & 1) for i in range(n) for j in range(n))

    def is_nondegenerate(self) -> bool:
        red = _Reducer()
        return all(red.add(row, 0) for row in self.gram)

    def characteristic(self) -> int:
        """The unique ``c`` with ``<v, c> = <v, v>`` for every ``v``."""
        diag = sum(1 << i for i in range(self.dim) if (self.gram[i] >> i) & 1)
        return _solve(self.gram, diag, self.dim)

    def q_kernel(self) -> list[int]:
        """A basis of ``{v : <v, v> = 0}``."""
        diag = [(self.gram[i] >> i) & 1 for i in range(self.dim)]
        ones = [i for i in range(self.dim) if diag[i]]
        basis = [1 << i for i in range(self.dim) if not diag[i]]
        basis += [(1 << ones[0]) | (1 << i) for i in ones[1:]]
        return basis


def _solve(rows: Sequence[int], rhs: int, n: int) -> int:
    """Solve ``sum_j x_j rows[j] = rhs`` with rows symmetric, i.e. ``G x = rhs``."""
    red = _Reducer()
    for j in range(n):
        red.add(rows[j], 1 << j)
    rest, combo = red.reduce(rhs)
    if rest:
        raise InvalidParameters("form is degenerate")
    return combo


def vg_plus_basis(g: int, layout: Layout) -> tuple[list[int], int | None]:
    """Basis of ``V_g^+`` and, when ``k'`` is even, the class ``[c]``."""
    if layout.g != g:
        raise InvalidParameters(f"layout {layout} does not have g={g}")
    basis = []
    for i in range(1, layout.h + 1):
        basis += [layout.a(i), layout.b(i)]
    basis += [layout.c(j) | layout.c(j + 1) for j in range(1, layout.k)]
    return basis, (layout.c_class if layout.k % 2 == 0 else None)


# -- Z_2 matrices ------------------------------------------------------------------


@dataclass(frozen=True)
class Z2Matrix:
    columns: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "Z2Matrix":
        return cls(tuple(1 << i for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[str | Sequence[int]]) -> "Z2Matrix":
        n = len(rows)
        cols = [0] * n
        for i, row in enumerate(rows):
            for j, bit in enumerate(row):
                if int(bit):
                    cols[j] |= 1 << i
        return cls(tuple(cols))

    @property
    def dim(self) -> int:
        return len(self.columns)

    def __call__(self, v: int) -> int:
        out = 0
        for j in _bits(v):
            out ^= self.columns[j]
        return out

    def __matmul__(self, other: "Z2Matrix") -> "Z2Matrix":
        return Z2Matrix(tuple(self(c) for c in other.columns))

    def is_identity(self) -> bool:
        return all(c == 1 << i for i, c in enumerate(self.columns))

    def preserves(self, form: IntersectionForm) -> bool:
        n = self.dim
        return all(
            form(self.columns[i], self.columns[j]) == (form.gram[i] >> j) & 1
            for i in range(n)
            for j in range(i, n)
        )

    def rows(self) -> list[str]:
        return [
            "".join(str((c >> i) & 1) for c in self.columns) for i in range(self.dim)
        ]

    def export(self, layout: Layout) -> str:
        return "\n".join([layout.header()] + self.rows()) + "\n"


@dataclass(frozen=True)
class Z2Action:
    matrix: Z2Matrix
    layout: Layout

    def export(self) -> str:
        return self.matrix.export(self.layout)


# -- triviality profile ---------------------------------------------------------------


@dataclass(frozen=True)
class TrivialityProfile:
    trivial_on_vg: bool
    trivial_on_vg_plus: bool
    trivial_on_quotient: bool | None

    def as_tuple(self):
        return (self.trivial_on_vg, self.trivial_on_vg_plus, self.trivial_on_quotient)

    @property
    def any_trivial(self) -> bool:
        return bool(self.trivial_on_vg or self.trivial_on_vg_plus or self.trivial_on_quotient)


def triviality_profile(
    m: Z2Matrix, layout: Layout, require_quotient: bool = False
) -> TrivialityProfile:
    """Which of ``V_g``, ``V_g^+``, ``V_g^+/<[c]>`` the action fixes pointwise.

    The quotient flag is ``None`` when ``k'`` is odd (``[c]`` is then not in
    ``V_g^+``); pass ``require_quotient=True`` to get an error instead.
    """
    basis, c = vg_plus_basis(layout.g, layout)
    moved = [m(v) ^ v for v in basis]
    on_vg = m.is_identity()
    on_plus = not any(moved)
    if c is None:
        if require_quotient:
            raise QuotientUndefined(f"k'={layout.k} is odd, [c] is not in V_g^+")
        on_quot = None
    else:
        on_quot = all(d in (0, c) for d in moved)
    return TrivialityProfile(on_vg, on_plus, on_quot)


# -- homology of a glued surface -------------------------------------------------------


@dataclass(frozen=True)
class SurfaceHomology:
    """``H_1(N_g; Z_2)`` of a glued surface in a basis of primal cycles."""

    g: int
    form: IntersectionForm
    deck: Z2Matrix
    cycles: tuple[int, ...]  # edge bitsets of the basis cycles

    @property
    def characteristic(self) -> int:
        return self.form.characteristic()


def surface_homology(glued) -> SurfaceHomology:
    """Cellular homology of the glued polygons with the deck action.

    Primal cycles run along the polygon sides, dual cycles cross them; both
    live in the complex that cuts every copy into one quadrilateral per
    corner, where they are compared to get the intersection form.
    """
    n, L = glued.n, glued.sides
    edge_of: dict[tuple[int, int], int] = {}
    canon: list[tuple[int, int]] = []
    for c in range(n):
        for s in range(L):
            if (c, s) in edge_of:
                continue
            c2, s2, _ = glued.partner[c][s]
            edge_of[(c, s)] = edge_of[(c2, s2)] = len(canon)
            canon.append((c, s))
    E = len(canon)

    parent = list(range(n * L))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in range(n):
        for s in range(L):
            c2, s2, flip = glued.partner[c][s]
            nxt, nxt2 = (s + 1) % L, (s2 + 1) % L
            links = ((s, s2), (nxt, nxt2)) if flip else ((s, nxt2), (nxt, s2))
            for u, v in links:
                ru, rv = find(c * L + u), find(c2 * L + v)
                if ru != rv:
                    parent[ru] = rv
    roots = sorted({find(x) for x in range(n * L)})
    vid = {r: i for i, r in enumerate(roots)}
    vertex = lambda c, i: vid[find(c * L + i % L)]  # noqa: E731
    V = len(roots)

    # primal complex
    d1 = [(1 << vertex(c, s)) ^ (1 << vertex(c, s + 1)) for c, s in canon]
    d2 = []
    for c in range(n):
        chain = 0
        for s in range(L):
            chain ^= 1 << edge_of[(c, s)]
        d2.append(chain)
    primal = _homology_basis(d1, d2, E)

    # dual complex: boundaries are the transposes
    dd1 = []
    for c, s in canon:
        c2 = glued.partner[c][s][0]
        dd1.append((1 << c) ^ (1 << c2))
    dd2 = []
    for v in range(V):
        chain = 0
        for e, (c, s) in enumerate(canon):
            for end in (s, s + 1):
                if vertex(c, end) == v:
                    chain ^= 1 << e
        dd2.append(chain)
    dual = _homology_basis(dd1, dd2, E)
    g = len(primal)
    if len(dual) != g:
        raise UnsupportedModel("primal and dual homology disagree")

    # quadrilateral refinement: halves are bits [0, 2E), spokes [2E, 2E + nL)
    def half(c, s, at_start):
        e = edge_of[(c, s)]
        c0, s0 = canon[e]
        if (c0, s0) == (c, s) or glued.partner[c][s][2]:
            j = 0 if at_start else 1
        else:
            j = 1 if at_start else 0
        return 1 << (2 * e + j)

    spoke = lambda c, s: 1 << (2 * E + c * L + s % L)  # noqa: E731
    kites = []
    for c in range(n):
        for i in range(L):
            prev = (i - 1) % L
            kites.append(spoke(c, prev) ^ spoke(c, i) ^ half(c, prev, False) ^ half(c, i, True))

    def as_primal(chain):
        return sum(3 << (2 * e) for e in _bits(chain))

    def as_dual(chain):
        out = 0
        for e in _bits(chain):
            c, s = canon[e]
            c2, s2, _ = glued.partner[c][s]
            out ^= spoke(c, s) ^ spoke(c2, s2)
        return out

    red = _Reducer()
    for k in kites:
        red.add(k, 0)
    for j, d in enumerate(dual):
        red.add(as_dual(d), 1 << j)
    gram = [0] * g
    dual_rep = []
    for p in primal:
        rest, combo = red.reduce(as_primal(p))
        if rest:
            raise UnsupportedModel("primal cycle not homologous to a dual one")
        rep = 0
        for j in _bits(combo):
            rep ^= dual[j]
        dual_rep.append(rep)
    for i, p in enumerate(primal):
        for k in range(g):
            if _parity(p & dual_rep[k]):
                gram[i] |= 1 << k
    form = IntersectionForm(tuple(gram))

    # deck transformation on primal cycles, reduced modulo boundaries
    shift = [edge_of[((c + 1) % n, s)] for c, s in canon]
    prim_red = _Reducer()
    for b in d2:
        prim_red.add(b, 0)
    for j, p in enumerate(primal):
        prim_red.add(p, 1 << j)
    cols = []
    for p in primal:
        image = 0
        for e in _bits(p):
            image ^= 1 << shift[e]
        rest, combo = prim_red.reduce(image)
        if rest:
            raise UnsupportedModel("deck image is not a cycle")
        cols.append(combo)
    return SurfaceHomology(g, form, Z2Matrix(tuple(cols)), tuple(primal))


def _homology_basis(d1: Sequence[int], d2: Sequence[int], E: int) -> list[int]:
    """Cycles (as edge bitsets) completing a boundary basis to a cycle basis."""
    kern = _Reducer()
    cycles = []
    for e in range(E):
        rest, combo = kern.reduce(d1[e], 1 << e)
        if rest:
            kern.rows[rest.bit_length() - 1] = (rest, combo)
        else:
            cycles.append(combo)
    red = _Reducer()
    for b in d2:
        red.add(b, 0)
    return [z for z in cycles if red.add(z, 1)]


def standard_basis(form: IntersectionForm, k: int) -> list[int]:
    """A basis putting ``form`` in layout ``(h', k)`` order.

    The form must be nondegenerate and not alternating, ``k >= 1`` and
    ``k`` congruent to the dimension mod 2.
    """
    g = form.dim
    if not (1 <= k <= g and (g - k) % 2 == 0):
        raise InvalidParameters(f"cannot use k'={k} in dimension {g}")
    ortho = _orthonormal_basis(form)
    # fold an orthonormal triple (u, e, f) into a hyperbolic pair and a new unit
    pairs = []
    u = ortho[0]
    rest = ortho[1:]
    for t in range((g - k) // 2):
        e, f = rest[2 * t], rest[2 * t + 1]
        pairs += [u ^ e, e ^ f]
        u = u ^ e ^ f
    units = [u] + rest[g - k:]
    return pairs + units


def _orthonormal_basis(form: IntersectionForm) -> list[int]:
    g = form.dim
    space = [1 << i for i in range(g)]
    out: list[int] = []
    while space:
        unit = next((v for v in space if form(v, v)), None)
        if unit is None:
            if not out:
                raise InvalidParameters("form is alternating")
            x = space[0]
            y = next(v for v in space if form(x, v))
            v = out.pop()
            out += [v ^ x, v ^ y, v ^ x ^ y]
            space = _perp(form, space, [x, y])
            continue
        out.append(unit)
        space = _perp(form, space, [unit])
    return out


def _perp(form: IntersectionForm, space: list[int], vs: list[int]) -> list[int]:
    """Basis of the vectors of ``span(space)`` orthogonal to every ``vs``."""
    red = _Reducer()
    kept = []
    # adjust each basis vector by vs-combinations so it becomes orthogonal
    gram = [[form(a, b) for b in vs] for a in vs]
    for w in space:
        target = [form(w, v) for v in vs]
        # solve sum_j x_j <vs_j, vs_i> = target_i (small, brute force)
        for mask in range(1 << len(vs)):
            if all(
                sum(gram[j][i] for j in range(len(vs)) if mask >> j & 1) % 2 == target[i]
                for i in range(len(vs))
            ):
                break
        else:
            raise InvalidParameters("restriction to vs is degenerate")
        adj = w
        for j in range(len(vs)):
            if mask >> j & 1:
                adj ^= vs[j]
        if red.add(adj, 0):
            kept.append(adj)
    return kept


def _change_basis(m: Z2Matrix, basis: Sequence[int]) -> Z2Matrix:
    red = _Reducer()
    for j, v in enumerate(basis):
        red.add(v, 1 << j)
    cols = []
    for v in basis:
        rest, combo = red.reduce(m(v))
        if rest:
            raise InvalidParameters("basis does not span")
        cols.append(combo)
    return Z2Matrix(tuple(cols))


def crosscap_count(recipe: ModelRecipe) -> int:
    blow = {BLOW_UP_ISOLATED: 1, BLOW_UP_NON_ISOLATED: 1, BLOW_UP_2_ORBIT: 2}
    return sum(blow.get(step.kind, 0) for step in recipe.steps)


def model_layout(cls: InvolutionClass) -> Layout:
    """Crosscaps from the model's blow-ups; 2 (or 1) if it has none."""
    k = crosscap_count(model_recipe(cls))
    if k == 0:
        k = 2 if cls.g % 2 == 0 else 1
    return Layout((cls.g - k) // 2, k)


def induced_z2_action(cls: InvolutionClass, layout: Layout | None = None) -> Z2Action:
    """The action on ``V_g``, computed on the assembled fundamental domain.

    The result is expressed in a standard basis of ``layout`` (default:
    :func:`model_layout`) and checked to be a form-preserving involution
    fixing ``[c]``.
    """
    from .polygon import assemble_fundamental_domain

    check_class(cls)
    layout = layout or model_layout(cls)
    glued = assemble_fundamental_domain(cls.signature, cls.epimorphism())
    hom = surface_homology(glued)
    if hom.g != cls.g or layout.g != cls.g:
        raise UnsupportedModel(f"homology rank {hom.g} does not match g={cls.g}")
    basis = standard_basis(hom.form, layout.k)
    m = _change_basis(hom.deck, basis)
    _check_action(m, layout)
    return Z2Action(m, layout)


def _check_action(m: Z2Matrix, layout: Layout) -> None:
    form = IntersectionForm.standard(layout)
    if not (m @ m).is_identity():
        raise UnsupportedModel("induced action is not an involution")
    if not m.preserves(form):
        raise UnsupportedModel("induced action does not preserve the form")
    if m(layout.c_class) != layout.c_class:
        raise UnsupportedModel("induced action moves [c]")


# -- actions read off the surgery models --------------------------------------------------


def surgery_z2_action(recipe: ModelRecipe) -> Z2Action:
    """The action in the basis drawn from the model.

    Handles come from the orientable base: those meeting the fixed set are
    fixed mod 2, conjugate pairs are swapped. Each blown-up fixed point adds
    a fixed crosscap; each blown-up 2-orbit adds two swapped crosscaps. With
    ``t`` orbits the basis lists the fixed crosscaps first, then the first
    crosscap of every orbit, then the second ones.
    """
    base = recipe.base
    if base.kind == "reflection" and base.ovals > 0:
        q = (base.genus + 1 - base.ovals) // 2
    elif base.kind == "rotation" and base.fixed_points > 0:
        q = (2 * base.genus + 2 - base.fixed_points) // 4
    else:
        raise UnsupportedModel(f"no mod 2 rule for base {base}")
    fixed_cc = 0
    orbits = 0
    for step in recipe.steps:
        if step.kind in (BLOW_UP_ISOLATED, BLOW_UP_NON_ISOLATED):
            fixed_cc += 1
        elif step.kind == BLOW_UP_2_ORBIT:
            orbits += 1
        else:
            raise UnsupportedModel(f"no mod 2 rule for {step}")
    m_genus = base.genus
    k = fixed_cc + 2 * orbits
    if k == 0:
        raise UnsupportedModel("model surface is orientable")
    layout = Layout(m_genus, k)
    cols = [0] * layout.g
    for i in range(1, m_genus + 1):
        cols[2 * (i - 1)], cols[2 * i - 1] = layout.a(i), layout.b(i)
    first_pair = m_genus - 2 * q + 1
    for t in range(q):
        i, j = first_pair + t, first_pair + q + t
        cols[2 * (i - 1)], cols[2 * (j - 1)] = layout.a(j), layout.a(i)
        cols[2 * i - 1], cols[2 * j - 1] = layout.b(j), layout.b(i)
    for j in range(1, fixed_cc + 1):
        cols[2 * m_genus + j - 1] = layout.c(j)
    for t in range(orbits):
        i, j = fixed_cc + 1 + t, fixed_cc + orbits + 1 + t
        cols[2 * m_genus + i - 1], cols[2 * m_genus + j - 1] = layout.c(j), layout.c(i)
    m = Z2Matrix(tuple(cols))
    _check_action(m, layout)
    return Z2Action(m, layout)


EXAMPLES = (1, 2, 3)


def example_recipe(example: int, g: int) -> ModelRecipe:
    """The three example models at genus ``g`` (even, ``g >= 4``).

    1: reflection of genus ``(g-2)/2`` with all ovals, two non-isolated
       fixed points blown up;
    2: hyperelliptic involution of genus ``(g-2)/2`` with one 2-orbit;
    3: reflection of genus ``(g-4)/2`` with all ovals and two 2-orbits.
    """
    if g % 2 or g < 4 or example not in EXAMPLES or (example == 3 and g < 6):
        raise InvalidParameters(f"no example {example} model for g={g}")
    if example == 1:
        m = (g - 2) // 2
        steps = (SurgeryStep(BLOW_UP_NON_ISOLATED, "two"), SurgeryStep(BLOW_UP_NON_ISOLATED, "one"))
        return ModelRecipe(Base("reflection", m, ovals=m + 1), steps)
    if example == 2:
        m = (g - 2) // 2
        return ModelRecipe(Base("rotation", m, fixed_points=2 * m + 2), (SurgeryStep(BLOW_UP_2_ORBIT),))
    m = (g - 4) // 2
    return ModelRecipe(Base("reflection", m, ovals=m + 1), (SurgeryStep(BLOW_UP_2_ORBIT),) * 2)


def example_class(example: int, g: int) -> InvolutionClass:
    """The taxonomy class of :func:`example_recipe`."""
    state = example_recipe(example, g).replay()
    fam = {1: "F3", 2: "F1", 3: "F6"}[example]
    cls = InvolutionClass(
        fam, state.g, state.h, state.r, state.k_plus, state.k_minus,
        state.quotient_orientable, fam in ("F3", "F6"),
    )
    check_class(cls)
    return cls


# -- real homology -------------------------------------------------------------------------


@dataclass(frozen=True)
class IntegerMatrix:
    """Square integer matrix; column ``j`` is the image of basis vector ``j``."""

    rows: tuple[tuple[int, ...], ...]
    basis: tuple[str, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.rows)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        n = self.dim
        rows = tuple(
            tuple(sum(self.rows[i][t] * other.rows[t][j] for t in range(n)) for j in range(n))
            for i in range(n)
        )
        return IntegerMatrix(rows, self.basis)

    def is_identity(self) -> bool:
        return all(v == (i == j) for i, r in enumerate(self.rows) for j, v in enumerate(r))

    def determinant(self) -> int:
        from sympy import Matrix

        if self.dim == 0:
            return 1
        return int(Matrix(self.rows).det(method="bareiss"))

    def order(self, limit: int = 1000) -> int:
        power = self
        for k in range(1, limit + 1):
            if power.is_identity():
                return k
            power = power @ self
        raise InvalidParameters(f"order exceeds {limit}")

    def to_csv(self, layout: str | None = None) -> str:
        lines = [layout] if layout else []
        if self.basis:
            lines.append(",".join(self.basis))
        lines += [",".join(str(v) for v in row) for row in self.rows]
        return "\n".join(lines) + "\n"


def _from_columns(cols: Sequence[Sequence[int]], basis: Sequence[str]) -> IntegerMatrix:
    n = len(cols)
    return IntegerMatrix(tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)), tuple(basis))


@dataclass(frozen=True)
class DeterminantResult:
    det: int
    twist_member: bool


def determinant_hom(m: IntegerMatrix) -> DeterminantResult:
    det = m.determinant()
    if det not in (1, -1):
        raise NotUnimodular(f"determinant {det}")
    return DeterminantResult(det, det == 1)


def f4_variant_real_action(g: int, h: int, r: int, k_minus: int) -> IntegerMatrix:
    """Action of the ``k_+ = 0`` variant of ``f_4`` on ``H_1(N_g; R)``.

    Basis ``a_1..a_l, b_1..b_l, c_1..c_{2h-1}, d_1..d_{k_-}`` with
    ``l = (k_- + r - 2)/2``; ``c_{2h}`` is eliminated through the relation
    among crosscap classes. Terms naming a ``d_j`` with ``j > k_-`` are
    empty.
    """
    cls = InvolutionClass("F4", g, h, r, 0, k_minus, False, False)
    if not is_valid_class(cls) or r + k_minus < 2:
        raise InvalidParameters(f"no k_+=0 variant of f_4 with g={g}, h={h}, r={r}, k-={k_minus}")
    l = (k_minus + r - 2) // 2
    names = (
        [f"a{i}" for i in range(1, l + 1)]
        + [f"b{i}" for i in range(1, l + 1)]
        + [f"c{i}" for i in range(1, 2 * h)]
        + [f"d{j}" for j in range(1, k_minus + 1)]
    )
    idx = {name: t for t, name in enumerate(names)}
    size = len(names)
    if size != g - 1:
        raise InvalidParameters(f"basis has {size} elements, expected {g - 1}")

    def vec(terms):
        v = [0] * size
        for name, coef in terms:
            if name in idx:
                v[idx[name]] += coef
        return v

    half = -(-k_minus // 2)
    cols = []
    for name in names:
        kind, i = name[0], int(name[1:])
        if kind == "a":
            extra = [(f"d{j}", -2) for j in range(2 * i, k_minus + 1)] if i <= half - 1 else []
            cols.append(vec([(name, -1)] + extra))
        elif kind == "b":
            extra = [(f"d{2 * i - 1}", -2), (f"d{2 * i}", -2)] if i <= half else []
            cols.append(vec([(name, -1)] + extra))
        elif kind == "c":
            if i < h:
                cols.append(vec([(f"c{i + h}", 1)]))
            elif i == h:
                terms = [(f"c{t}", -1) for t in range(1, 2 * h)]
                terms += [(f"d{j}", -1) for j in range(1, k_minus + 1)]
                cols.append(vec(terms))
            else:
                cols.append(vec([(f"c{i - h}", 1)]))
        else:
            cols.append(vec([(name, 1)]))
    return _from_columns(cols, names)


def rotation_generator_action(g: int) -> IntegerMatrix:
    """The crosscap rotation of order ``g`` (even ``g``) or ``g - 1`` (odd).

    Basis ``mu_1..mu_{g-1}``; ``mu_g = -(mu_1 + ... + mu_{g-1})`` in real
    homology.
    """
    if g < 7:
        raise GenusTooSmall(f"g={g} < 7")
    cycle = g if g % 2 == 0 else g - 1

    def image(i):  # 1-based crosscap index
        return i % cycle + 1 if i <= cycle else i

    names = [f"mu{i}" for i in range(1, g)]
    cols = []
    for i in range(1, g):
        j = image(i)
        col = [0] * (g - 1)
        if j == g:
            col = [-1] * (g - 1)
        else:
            col[j - 1] = 1
        cols.append(col)
    return _from_columns(cols, names)


def quotient_first_betti(cls: InvolutionClass) -> int:
    """First Betti number of the underlying surface of the quotient orbifold."""
    if cls.quotient_orientable:
        return 2 * cls.h + cls.k - 1 if cls.k else 2 * cls.h
    return cls.h + cls.k - 1 if cls.k else cls.h - 1


def involution_determinant(cls: InvolutionClass) -> int:
    """``det`` of the action on ``H_1(N_g; R)``.

    The +1 eigenspace is the homology of the quotient (transfer), so the
    -1 eigenspace has dimension ``(g - 1) - b_1``.
    """
    check_class(cls)
    return -1 if ((cls.g - 1) - quotient_first_betti(cls)) % 2 else 1
