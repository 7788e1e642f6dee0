r"""NEC signatures of cyclic actions on non-orientable surfaces.

A cyclic action of :math:`\mathbb{Z}_n` on :math:`N_g` is encoded by an NEC
group :math:`\Lambda` with signature ``(h; +/-; [m_1, ..., m_r]; {()^k})`` and
an epimorphism :math:`\theta: \Lambda \to \mathbb{Z}_n` whose kernel is the
surface group. Since the target is abelian, :math:`\theta` is just a residue
per Wilkie generator and everything here is arithmetic on those residues.

EXAMPLES::

    >>> sig = NecSignature.parse("(1;-;[3,3];{})")
    >>> hurwitz_riemann_genus(sig, 3)
    3
    >>> [name for name, _ in presentation(sig).generators]
    ['x1', 'x2', 'd1']
"""

from __future__ import annotations

import functools
import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    AutomorphismNotApplicable,
    InvalidSignature,
    NonIntegralGenus,
    NotASurface,
    SearchSpaceTooLarge,
    SignatureMismatch,
    UnsupportedFamily,
)

DEFAULT_BUDGET = 2**24

PLUS = "+"
MINUS = "-"

# generator kinds
ELLIPTIC = "x"
REFLECTION = "c"
CONNECTOR = "e"
HANDLE_A = "a"
HANDLE_B = "b"
GLIDE = "d"

ORIENTATION_REVERSING = frozenset({REFLECTION, GLIDE})


@dataclass(frozen=True)
class NecSignature:
    """Signature ``(h; sign; [m_1..m_r]; {()^k})`` with empty period cycles only.

    Periods are kept sorted; reordering them is a relabelling by the
    :math:`\\rho_i` automorphisms.
    """

    h: int
    sign: str
    periods: tuple[int, ...] = ()
    k: int = 0

    def __post_init__(self):
        if self.sign not in (PLUS, MINUS):
            raise InvalidSignature(f"sign must be '+' or '-', got {self.sign!r}")
        if self.h < 0 or self.k < 0:
            raise InvalidSignature("h and k must be non-negative")
        periods = tuple(sorted(int(m) for m in self.periods))
        if any(m < 2 for m in periods):
            raise InvalidSignature(f"proper periods must be >= 2, got {periods}")
        if self.sign == MINUS and self.h == 0:
            raise InvalidSignature("a non-orientable quotient needs h >= 1")
        if self.sign == PLUS and self.h == 0 and not periods and self.k == 0:
            raise InvalidSignature("(0; +; []; {}) is not the signature of a group")
        object.__setattr__(self, "periods", periods)

    @property
    def r(self) -> int:
        return len(self.periods)

    @property
    def orientable_quotient(self) -> bool:
        return self.sign == PLUS

    @property
    def epsilon(self) -> int:
        return 2 if self.sign == PLUS else 1

    def __str__(self):
        periods = ",".join(str(m) for m in self.periods)
        cycles = f"{{()^{self.k}}}" if self.k else "{}"
        return f"({self.h};{self.sign};[{periods}];{cycles})"

    _PATTERN = re.compile(
        r"^\(\s*(\d+)\s*;\s*([+-])\s*;\s*\[([^\]]*)\]\s*;\s*\{([^}]*)\}\s*\)$"
    )

    @classmethod
    def parse(cls, text: str) -> "NecSignature":
        """Parse ``"(h;+|-;[m1,...];{()^k})"``.

        The cycle part also accepts ``{}``, ``{-}``, ``{()}``, ``{()()}`` and ``{(),()}``.
        """
        m = cls._PATTERN.match(text.strip())
        if not m:
            raise InvalidSignature(f"cannot parse signature {text!r}")
        h, sign, periods, cycles = m.groups()
        plist = [int(p) for p in re.split(r"\s*,\s*", periods.strip()) if p]
        return cls(int(h), sign, tuple(plist), _parse_cycles(cycles))


def _parse_cycles(text: str) -> int:
    text = text.replace(" ", "")
    if text in ("", "-"):
        return 0
    m = re.fullmatch(r"\(\)\^(\d+)", text)
    if m:
        return int(m.group(1))
    if re.fullmatch(r"\(\)(,?\(\))*", text):
        return text.count("()")
    raise InvalidSignature(f"only empty period cycles are supported, got {{{text}}}")


@dataclass(frozen=True)
class Presentation:
    """Wilkie presentation: generators in fixed order and the long relation."""

    generators: tuple[tuple[str, str], ...]
    long_relation: tuple[tuple[str, int], ...]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.generators)

    def kind(self, name: str) -> str:
        return dict(self.generators)[name]

    @staticmethod
    def orientation_reversing(kind: str) -> bool:
        return kind in ORIENTATION_REVERSING


@functools.lru_cache(maxsize=4096)
def presentation(sig: NecSignature) -> Presentation:
    gens = [(f"x{i}", ELLIPTIC) for i in range(1, sig.r + 1)]
    gens += [(f"c{j}", REFLECTION) for j in range(1, sig.k + 1)]
    gens += [(f"e{j}", CONNECTOR) for j in range(1, sig.k + 1)]
    word = [(f"x{i}", 1) for i in range(1, sig.r + 1)]
    word += [(f"e{j}", 1) for j in range(1, sig.k + 1)]
    if sig.sign == PLUS:
        for l in range(1, sig.h + 1):
            gens += [(f"a{l}", HANDLE_A), (f"b{l}", HANDLE_B)]
            word += [(f"a{l}", 1), (f"b{l}", 1), (f"a{l}", -1), (f"b{l}", -1)]
    else:
        for l in range(1, sig.h + 1):
            gens.append((f"d{l}", GLIDE))
            word += [(f"d{l}", 1), (f"d{l}", 1)]
    return Presentation(tuple(gens), tuple(word))


def hurwitz_riemann_genus(sig: NecSignature, n: int) -> int:
    """Genus of the non-orientable surface covering the quotient ``n`` times."""
    if n < 1:
        raise ValueError("order must be >= 1")
    area = sig.epsilon * sig.h + sig.k - 2 + sum(Fraction(m - 1, m) for m in sig.periods)
    g = n * area + 2
    if g.denominator != 1:
        raise NonIntegralGenus(f"{sig} with n={n} gives g={g}")
    bad = [m for m in sig.periods if n % m]
    if bad:
        raise ValueError(f"periods {bad} do not divide the order {n}")
    if g < 1:
        raise NotASurface(f"{sig} with n={n} gives g={g}")
    return int(g)


def signatures_for_genus(g: int, n: int) -> list[NecSignature]:
    """All signatures whose ``n``-fold cover has genus ``g``.

    Periods run over divisors of ``n``; reflections need ``n`` even. Whether
    an admissible epimorphism exists is a separate question.
    """
    if n < 1 or g < 1:
        return []
    divisors = [m for m in range(2, n + 1) if n % m == 0]
    # epsilon*h + k + sum(1 - 1/m) == (g - 2)/n + 2, each term at least 1/2
    total = Fraction(g - 2, n) + 2
    if total < 0:
        return []
    out = set()
    max_r = int(2 * total)
    for sign in (PLUS, MINUS):
        eps = 2 if sign == PLUS else 1
        for h in range(0, int(total / eps) + 1):
            for k in range(0, int(total - eps * h) + 1):
                if k and n % 2:
                    continue
                rest = total - eps * h - k
                for r in range(0, max_r + 1):
                    for periods in itertools.combinations_with_replacement(divisors, r):
                        if sum(Fraction(m - 1, m) for m in periods) != rest:
                            continue
                        try:
                            sig = NecSignature(h, sign, periods, k)
                        except InvalidSignature:
                            continue
                        out.add(sig)
    return sorted(out, key=_sig_key)


def _sig_key(sig: NecSignature):
    return (sig.sign != MINUS, sig.h, sig.k, sig.r, sig.periods)


@dataclass(frozen=True)
class Epimorphism:
    """Residues in :math:`\\mathbb{Z}_n` of the Wilkie generators."""

    n: int
    images: tuple[tuple[str, int], ...] = field(default=())

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        object.__setattr__(
            self, "images", tuple((name, int(v) % self.n) for name, v in self.images)
        )

    @classmethod
    def from_dict(cls, n: int, images: Mapping[str, int], sig: NecSignature | None = None):
        if sig is not None:
            order = presentation(sig).names
            if set(order) != set(images):
                raise SignatureMismatch(
                    f"generators {sorted(images)} do not match {sig}: {list(order)}"
                )
            return cls(n, tuple((name, images[name]) for name in order))
        return cls(n, tuple(images.items()))

    @functools.cached_property
    def _lookup(self) -> dict[str, int]:
        return dict(self.images)

    def __getitem__(self, name: str) -> int:
        return self._lookup[name]

    def get(self, name: str, default: int = 0) -> int:
        try:
            return self[name]
        except KeyError:
            return default

    def as_dict(self) -> dict[str, int]:
        return dict(self.images)

    def values(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.images)

    def to_json(self) -> dict:
        return {"n": self.n, "images": self.as_dict()}

    @classmethod
    def from_json(cls, data: Mapping, sig: NecSignature | None = None) -> "Epimorphism":
        return cls.from_dict(int(data["n"]), data["images"], sig)

    def replace(self, **changes: int) -> "Epimorphism":
        return Epimorphism(
            self.n, tuple((name, changes.get(name, v)) for name, v in self.images)
        )


def _check_generators(sig: NecSignature, theta: Epimorphism) -> Presentation:
    pres = presentation(sig)
    if tuple(name for name, _ in theta.images) != pres.names:
        if set(name for name, _ in theta.images) == set(pres.names):
            return pres
        raise SignatureMismatch(
            f"epimorphism generators {[n for n, _ in theta.images]} "
            f"do not match {sig}: {list(pres.names)}"
        )
    return pres


def long_relation_sum(sig: NecSignature, theta: Epimorphism) -> int:
    pres = presentation(sig)
    return sum(e * theta[name] for name, e in pres.long_relation) % theta.n


def satisfies_relations(sig: NecSignature, theta: Epimorphism) -> bool:
    """Relations 1, 2 and 4 in the abelian target (3 holds automatically)."""
    _check_generators(sig, theta)
    n = theta.n
    for i, m in enumerate(sig.periods, 1):
        if (m * theta[f"x{i}"]) % n:
            return False
    for j in range(1, sig.k + 1):
        if (2 * theta[f"c{j}"]) % n:
            return False
    return long_relation_sum(sig, theta) == 0


def generates(theta: Epimorphism) -> bool:
    return math.gcd(theta.n, *theta.values()) == 1 if theta.images else theta.n == 1


def orientation_preserving_image(sig: NecSignature, theta: Epimorphism) -> int:
    """Generator ``d`` (a divisor of n) of the subgroup :math:`\\theta(\\Lambda^+)`.

    :math:`\\Lambda^+` is generated by the orientation-preserving generators
    and products of two orientation-reversing ones.
    """
    pres = _check_generators(sig, theta)
    preserving = []
    reversing = []
    for name, kind in pres.generators:
        (reversing if kind in ORIENTATION_REVERSING else preserving).append(theta[name])
    sums = [u + v for u, v in itertools.combinations_with_replacement(reversing, 2)]
    return math.gcd(theta.n, *preserving, *sums)


def is_admissible(sig: NecSignature, theta: Epimorphism) -> bool:
    """Whether ``theta`` defines a ``Z_n`` action on a non-orientable surface."""
    _check_generators(sig, theta)
    n = theta.n
    if sig.sign == PLUS and sig.k == 0:
        # Lambda = Lambda^+, so the kernel cannot reverse orientation
        return False
    if not satisfies_relations(sig, theta) or not generates(theta):
        return False
    for i, m in enumerate(sig.periods, 1):
        if _order(theta[f"x{i}"], n) != m:
            return False
    for j in range(1, sig.k + 1):
        if _order(theta[f"c{j}"], n) != 2:
            return False
    return orientation_preserving_image(sig, theta) == 1


def _order(v: int, n: int) -> int:
    return n // math.gcd(v, n)


def _candidates(kind: str, period: int | None, n: int) -> list[int]:
    if kind == ELLIPTIC:
        return [v for v in range(n) if _order(v, n) == period]
    if kind == REFLECTION:
        return [n // 2] if n % 2 == 0 else []
    return list(range(n))


def search_space_size(sig: NecSignature, n: int) -> int:
    pres = presentation(sig)
    size = 1
    for name, kind in pres.generators:
        period = sig.periods[int(name[1:]) - 1] if kind == ELLIPTIC else None
        size *= len(_candidates(kind, period, n))
    return size


def iter_epimorphisms(
    sig: NecSignature, n: int, budget: int = DEFAULT_BUDGET
) -> Iterator[Epimorphism]:
    """Admissible epimorphisms in lexicographic order of their image tuples.

    Elliptic generators only range over residues of the right order and
    reflections over ``n/2``; every other generator ranges over all of ``Z_n``.
    """
    if n < 2:
        return
    if search_space_size(sig, n) > budget:
        raise SearchSpaceTooLarge(
            f"{sig} with n={n}: {search_space_size(sig, n)} candidates > budget {budget}"
        )
    pres = presentation(sig)
    pools = []
    for name, kind in pres.generators:
        period = sig.periods[int(name[1:]) - 1] if kind == ELLIPTIC else None
        pools.append(_candidates(kind, period, n))
    names = pres.names
    for values in itertools.product(*pools):
        theta = Epimorphism(n, tuple(zip(names, values)))
        if is_admissible(sig, theta):
            yield theta


def enumerate_epimorphisms(
    sig: NecSignature, n: int, budget: int = DEFAULT_BUDGET
) -> list[Epimorphism]:
    return list(iter_epimorphisms(sig, n, budget))


# -- topological conjugacy ---------------------------------------------------


@dataclass(frozen=True)
class OddPrimeInvariants:
    p: int
    multiset: tuple[int, ...]


@dataclass(frozen=True)
class Order2Invariants:
    k_minus: int
    d_sum: int | None = None
    all_d_zero: bool | None = None


ConjugacyInvariants = OddPrimeInvariants | Order2Invariants


def _is_odd_prime(n: int) -> bool:
    return n > 2 and n % 2 == 1 and all(n % q for q in range(3, math.isqrt(n) + 1, 2))


def canonical_elliptic_multiset(values: Sequence[int], p: int) -> tuple[int, ...]:
    """Least sorted tuple among all ``(eps_j * a * v_j)`` with ``a`` a unit."""
    best = None
    for a in range(1, p):
        cand = tuple(sorted(min(a * v % p, -a * v % p) for v in values))
        if best is None or cand < best:
            best = cand
    return best if best is not None else ()


def conjugacy_invariants(sig: NecSignature, theta: Epimorphism) -> ConjugacyInvariants:
    n = theta.n
    if (
        _is_odd_prime(n)
        and sig.sign == MINUS
        and sig.k == 0
        and all(m == n for m in sig.periods)
    ):
        values = [theta[f"x{i}"] for i in range(1, sig.r + 1)]
        return OddPrimeInvariants(n, canonical_elliptic_multiset(values, n))
    if n == 2 and all(m == 2 for m in sig.periods):
        k_minus = sum(theta[f"e{j}"] for j in range(1, sig.k + 1))
        if sig.r == 0 and k_minus == 0 and sig.sign == MINUS:
            ds = [theta[f"d{l}"] for l in range(1, sig.h + 1)]
            return Order2Invariants(k_minus, sum(ds) % 2, not any(ds))
        return Order2Invariants(k_minus)
    raise UnsupportedFamily(
        f"no conjugacy criterion for {sig} with n={n}"
    )


def are_conjugate(sig: NecSignature, theta1: Epimorphism, theta2: Epimorphism) -> bool:
    if theta1.n != theta2.n:
        return False
    return conjugacy_invariants(sig, theta1) == conjugacy_invariants(sig, theta2)


# -- automorphisms of Lambda acting on theta -----------------------------------


@dataclass(frozen=True)
class Automorphism:
    """One of sigma, pi, omega, gamma, epsilon, rho_i, lambda_j."""

    kind: str
    index: int | None = None

    def __str__(self):
        return self.kind if self.index is None else f"{self.kind}_{self.index}"

    @classmethod
    def parse(cls, text: str) -> "Automorphism":
        kind, _, idx = text.partition("_")
        return cls(kind, int(idx) if idx else None)


def _applicability(sig: NecSignature, aut: Automorphism) -> str | None:
    """Reason the automorphism does not apply, or None."""
    plus = sig.sign == PLUS
    if aut.kind in ("sigma", "pi", "omega"):
        if not plus or sig.h < 1:
            return "needs sign '+' and h >= 1"
        if aut.kind == "sigma" and sig.r < 1:
            return "needs r >= 1"
        if aut.kind == "pi" and sig.k < 1:
            return "needs k >= 1"
        return None
    if aut.kind in ("gamma", "epsilon"):
        if plus:
            return "needs sign '-'"
        if aut.kind == "gamma" and sig.r < 1:
            return "needs r >= 1"
        if aut.kind == "epsilon" and sig.k < 1:
            return "needs k >= 1"
        return None
    if aut.kind == "rho":
        i = aut.index
        if i is None or not 1 <= i < sig.r:
            return f"needs 1 <= i < r={sig.r}"
        if sig.periods[i - 1] != sig.periods[i]:
            return "swaps elliptic generators of different periods"
        return None
    if aut.kind == "lambda":
        j = aut.index
        if j is None or not 1 <= j < sig.k:
            return f"needs 1 <= j < k={sig.k}"
        return None
    return f"unknown automorphism {aut.kind!r}"


def applicable_automorphisms(sig: NecSignature) -> list[Automorphism]:
    cands = [Automorphism(k) for k in ("sigma", "pi", "omega", "gamma", "epsilon")]
    cands += [Automorphism("rho", i) for i in range(1, sig.r)]
    cands += [Automorphism("lambda", j) for j in range(1, sig.k)]
    return [a for a in cands if _applicability(sig, a) is None]


def apply_automorphism(
    sig: NecSignature, theta: Epimorphism, aut: Automorphism | str
) -> Epimorphism:
    """``theta o aut``; conjugations vanish in the abelian target."""
    if isinstance(aut, str):
        aut = Automorphism.parse(aut)
    reason = _applicability(sig, aut)
    if reason:
        raise AutomorphismNotApplicable(f"{aut} on {sig}: {reason}")
    _check_generators(sig, theta)
    t = theta
    r, k = sig.r, sig.k
    if aut.kind == "sigma":
        return t.replace(b1=t["b1"] + t[f"x{r}"])
    if aut.kind == "pi":
        return t.replace(b1=t["b1"] + t[f"e{k}"])
    if aut.kind == "omega":
        return t.replace(b1=t["b1"] + t["a1"])
    if aut.kind == "gamma":
        return t.replace(**{"d1": t["d1"] + t[f"x{r}"], f"x{r}": -t[f"x{r}"]})
    if aut.kind == "epsilon":
        return t.replace(**{"d1": t["d1"] + t[f"e{k}"], f"e{k}": -t[f"e{k}"]})
    if aut.kind == "rho":
        i = aut.index
        return t.replace(**{f"x{i}": t[f"x{i + 1}"], f"x{i + 1}": t[f"x{i}"]})
    j = aut.index
    return t.replace(
        **{f"e{j}": t[f"e{j + 1}"], f"e{j + 1}": t[f"e{j}"], f"c{j}": t[f"c{j + 1}"]}
    )


def scale(theta: Epimorphism, a: int) -> Epimorphism:
    """Compose with the automorphism ``v -> a v`` of ``Z_n`` (``a`` a unit)."""
    if math.gcd(a, theta.n) != 1:
        raise ValueError(f"{a} is not a unit mod {theta.n}")
    return Epimorphism(theta.n, tuple((name, a * v) for name, v in theta.images))


def orbit(sig: NecSignature, theta: Epimorphism) -> set[Epimorphism]:
    """Closure of ``theta`` under the listed automorphisms and units of Z_n.

    This is a subset of the topological conjugacy class; for signatures
    without a conjugacy criterion it is the best the library can offer.
    """
    auts = applicable_automorphisms(sig)
    units = [a for a in range(1, theta.n) if math.gcd(a, theta.n) == 1]
    seen = {theta}
    frontier = [theta]
    while frontier:
        cur = frontier.pop()
        nbrs = [apply_automorphism(sig, cur, a) for a in auts]
        nbrs += [scale(cur, a) for a in units]
        for nb in nbrs:
            if nb not in seen:
                seen.add(nb)
                frontier.append(nb)
    return seen


def conjugacy_classes(
    sig: NecSignature, epimorphisms: Iterable[Epimorphism]
) -> dict[ConjugacyInvariants, list[Epimorphism]]:
    """Bucket epimorphisms by their conjugacy invariants (insertion ordered)."""
    buckets: dict[ConjugacyInvariants, list[Epimorphism]] = {}
    for theta in epimorphisms:
        buckets.setdefault(conjugacy_invariants(sig, theta), []).append(theta)
    return buckets
