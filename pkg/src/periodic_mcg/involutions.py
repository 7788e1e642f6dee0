"""Conjugacy classes of involutions of N_g and the surgeries that build them.

An involution is described by its signed taxonomy: quotient genus ``h``,
isolated fixed points ``r``, ovals ``k = k_plus + k_minus`` (two-sided and
one-sided), orientability of the quotient orbifold, and, for the free and
``r = k_minus = 0`` cases, a family tag that carries the extra invariants.

Every class has a model recipe: a base involution of an orientable surface
followed by surgeries. Replaying the recipe on :class:`SurgeryState`
reproduces the class tuple.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Iterator

from .errors import GenusTooSmall, InvalidClass, NotApplicable
from .nec import MINUS, PLUS, Epimorphism, NecSignature, presentation

FAMILIES = ("F01", "F02", "F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8", "F9")
MIN_GENUS = 5


@dataclass(frozen=True, order=True)
class InvolutionClass:
    family: str
    g: int
    h: int
    r: int
    k_plus: int
    k_minus: int
    quotient_orientable: bool
    fixed_set_separating: bool = False

    @property
    def k(self) -> int:
        return self.k_plus + self.k_minus

    @property
    def epsilon(self) -> int:
        return 2 if self.quotient_orientable else 1

    @property
    def is_free(self) -> bool:
        return self.r == 0 and self.k == 0

    def __str__(self):
        q = "or" if self.quotient_orientable else "nonor"
        sep = str(self.fixed_set_separating).lower()
        return (
            f"{self.family}[g={self.g},h={self.h},r={self.r},k={self.k},"
            f"k+={self.k_plus},k-={self.k_minus},Q={q},sep={sep}]"
        )

    _PATTERN = re.compile(
        r"^(F0?\d)\[g=(\d+),h=(\d+),r=(\d+),k=(\d+),k\+=(\d+),k-=(\d+),"
        r"Q=(or|nonor),sep=(true|false)\]$"
    )

    @classmethod
    def parse(cls, text: str) -> "InvolutionClass":
        m = cls._PATTERN.match(text.replace(" ", ""))
        if not m:
            raise InvalidClass(f"cannot parse involution class {text!r}")
        fam, g, h, r, k, kp, km, q, sep = m.groups()
        cls_ = cls(fam, int(g), int(h), int(r), int(kp), int(km), q == "or", sep == "true")
        if cls_.k != int(k):
            raise InvalidClass(f"k={k} but k+ + k- = {cls_.k}")
        return cls_

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "g": self.g,
            "h": self.h,
            "r": self.r,
            "k": self.k,
            "k_plus": self.k_plus,
            "k_minus": self.k_minus,
            "quotient_orientable": self.quotient_orientable,
            "fixed_set_separating": self.fixed_set_separating,
            "text": str(self),
        }

    # -- NEC data ------------------------------------------------------------

    @property
    def signature(self) -> NecSignature:
        sign = PLUS if self.quotient_orientable else MINUS
        return NecSignature(self.h, sign, (2,) * self.r, self.k)

    def epimorphism(self) -> Epimorphism:
        """A representative ``Z_2`` epimorphism for this class.

        The ``d`` images encode the extra invariants: all zero for F6, one
        glide in the kernel complement (odd sum) for F7/F01, two for F8/F02.
        """
        sig = self.signature
        images = {}
        for name in presentation(sig).names:
            kind, idx = name[0], int(name[1:])
            if kind in "xc":
                images[name] = 1
            elif kind == "e":
                images[name] = 1 if idx <= self.k_minus else 0
            elif kind == "d":
                ones = {"F7": 1, "F01": 1, "F8": 2, "F02": 2}.get(self.family, 0)
                images[name] = 1 if idx <= ones else 0
            elif kind == "a":
                images[name] = 1 if (self.family == "F9" and idx == 1) else 0
            else:
                images[name] = 0
        return Epimorphism.from_dict(2, images, sig)


def check_class(c: InvolutionClass) -> None:
    """Raise :class:`InvalidClass` unless every taxonomy constraint holds."""
    problems = list(_violations(c))
    if problems:
        raise InvalidClass(f"{c}: " + "; ".join(problems))


def is_valid_class(c: InvolutionClass) -> bool:
    return not any(True for _ in _violations(c))


def _violations(c: InvolutionClass) -> Iterator[str]:
    if c.family not in FAMILIES:
        yield f"unknown family {c.family}"
        return
    if min(c.h, c.r, c.k_plus, c.k_minus) < 0:
        yield "negative invariant"
        return
    if c.g < MIN_GENUS:
        yield f"g < {MIN_GENUS}"
    if not c.quotient_orientable and c.h < 1:
        yield "a non-orientable quotient needs h >= 1"
    if (c.r + c.k_minus) % 2:
        yield "r + k_minus must be even"
    if (c.g - c.r) % 2:
        yield "g and r must have the same parity"
    if c.g != 2 * c.epsilon * c.h + 2 * c.k - 2 + c.r:
        yield "Hurwitz-Riemann: g != 2*eps*h + 2k - 2 + r"
    if c.r + 2 * c.k > c.g + 2:
        yield "r + 2k > g + 2"
    if not c.quotient_orientable and c.r + 2 * c.k > c.g:
        yield "r + 2k > g with non-orientable quotient"
    f = c.family
    nonor = not c.quotient_orientable
    expect_sep = f in ("F3", "F6")
    if c.fixed_set_separating != expect_sep:
        yield f"fixed_set_separating must be {expect_sep} for {f}"
    if f == "F1":
        ok = c.r > 0 and c.k == 0 and nonor
    elif f == "F2":
        ok = c.r > 0 and c.k_minus == 0 and c.k_plus > 0 and nonor
    elif f == "F3":
        ok = (
            c.r > 0
            and c.k_minus == 0
            and c.k_plus > 0
            and not nonor
            and (c.r + 2 * c.k - c.g - 2) % 4 == 0
        )
    elif f == "F4":
        ok = c.k_minus > 0 and nonor
    elif f == "F5":
        ok = c.k_minus > 0 and not nonor
    elif f == "F6":
        ok = c.r == 0 and c.k_minus == 0 and c.k > 0 and nonor
    elif f == "F7":
        ok = c.r == 0 and c.k_minus == 0 and c.k > 0 and nonor and 2 * c.k < c.g
    elif f == "F8":
        ok = c.r == 0 and c.k_minus == 0 and c.k > 0 and nonor and 2 * c.k < c.g - 2
    elif f == "F9":
        # h >= 1: with h = 0 the covering surface would be orientable
        ok = (
            c.r == 0
            and c.k_minus == 0
            and c.k > 0
            and not nonor
            and (2 * c.k - c.g - 2) % 4 == 0
            and c.h >= 1
        )
    else:  # F01, F02
        ok = c.r == 0 and c.k == 0 and c.g % 2 == 0 and nonor
    if not ok:
        yield f"family constraints for {f} fail"


def enumerate_classes(g: int) -> list[InvolutionClass]:
    """All conjugacy classes of involutions of ``N_g``, sorted."""
    if g < MIN_GENUS:
        raise GenusTooSmall(f"g={g} < {MIN_GENUS}")
    out: list[InvolutionClass] = []

    def add(fam, h, r, kp, km, orient):
        c = InvolutionClass(fam, g, h, r, kp, km, orient, fam in ("F3", "F6"))
        if is_valid_class(c):
            out.append(c)

    # non-orientable quotient: g = 2h + 2k - 2 + r, h >= 1
    for h in range(1, g // 2 + 2):
        for k in range(0, (g + 2 - 2 * h) // 2 + 1):
            r = g - 2 * h - 2 * k + 2
            if r < 0:
                continue
            if k == 0:
                if r > 0:
                    add("F1", h, r, 0, 0, False)
                else:
                    add("F01", h, 0, 0, 0, False)
                    add("F02", h, 0, 0, 0, False)
                continue
            for km in range(0, k + 1):
                kp = k - km
                if km > 0:
                    add("F4", h, r, kp, km, False)
                elif r > 0:
                    add("F2", h, r, kp, 0, False)
                else:
                    for fam in ("F6", "F7", "F8"):
                        add(fam, h, 0, kp, 0, False)
    # orientable quotient: g = 4h + 2k - 2 + r, k >= 1
    for h in range(0, g // 4 + 2):
        for k in range(1, (g + 2 - 4 * h) // 2 + 1):
            r = g - 4 * h - 2 * k + 2
            if r < 0:
                continue
            for km in range(0, k + 1):
                kp = k - km
                if km > 0:
                    add("F5", h, r, kp, km, True)
                elif r > 0:
                    add("F3", h, r, kp, 0, True)
                else:
                    add("F9", h, 0, kp, 0, True)
    return sorted(out, key=_class_key)


def _class_key(c: InvolutionClass):
    return (FAMILIES.index(c.family), c.h, c.r, c.k_plus, c.k_minus)


# -- surgeries -----------------------------------------------------------------


@dataclass(frozen=True)
class SurgeryState:
    """Invariants of an involution on a (possibly orientable) closed surface.

    ``g`` is ``2 - chi``, so an orientable surface of genus ``m`` has ``g = 2m``.
    """

    g: int
    h: int
    quotient_orientable: bool
    r: int
    k_plus: int
    k_minus: int
    surface_orientable: bool
    reflection: bool = False  # orientation-reversing involution of an orientable surface

    @property
    def k(self) -> int:
        return self.k_plus + self.k_minus

    @property
    def epsilon(self) -> int:
        return 2 if self.quotient_orientable else 1

    def hurwitz_riemann_holds(self) -> bool:
        return self.g == 2 * self.epsilon * self.h + 2 * self.k - 2 + self.r

    def matches(self, c: InvolutionClass) -> bool:
        return (
            not self.surface_orientable
            and (self.g, self.h, self.quotient_orientable, self.r, self.k_plus, self.k_minus)
            == (c.g, c.h, c.quotient_orientable, c.r, c.k_plus, c.k_minus)
        )


@dataclass(frozen=True)
class Base:
    """Starting involution of an orientable surface of genus ``genus``.

    kind ``reflection``: ``ovals`` fixed circles, quotient orientable of genus
    ``(genus + 1 - ovals) / 2``; with ``ovals = 0`` the quotient is
    non-orientable of genus ``genus + 1`` (antipodism).
    kind ``rotation``: ``fixed_points`` isolated fixed points and quotient
    genus ``(2 genus + 2 - fixed_points) / 4``.
    """

    kind: str
    genus: int
    ovals: int = 0
    fixed_points: int = 0

    def state(self) -> SurgeryState:
        m = self.genus
        if self.kind == "reflection":
            if self.ovals == 0:
                return SurgeryState(2 * m, m + 1, False, 0, 0, 0, True, True)
            q, rem = divmod(m + 1 - self.ovals, 2)
            if rem or q < 0:
                raise NotApplicable(f"no reflection of genus {m} with {self.ovals} ovals")
            return SurgeryState(2 * m, q, True, 0, self.ovals, 0, True, True)
        if self.kind == "rotation":
            q, rem = divmod(2 * m + 2 - self.fixed_points, 4)
            if rem or q < 0:
                raise NotApplicable(
                    f"no rotation of genus {m} with {self.fixed_points} fixed points"
                )
            return SurgeryState(2 * m, q, True, self.fixed_points, 0, 0, True, False)
        raise NotApplicable(f"unknown base kind {self.kind!r}")

    def __str__(self):
        if self.kind == "reflection":
            if self.ovals == 0:
                return f"antipodism(genus={self.genus})"
            return f"reflection(genus={self.genus},ovals={self.ovals})"
        return f"rotation(genus={self.genus},fixed={self.fixed_points})"


BLOW_UP_ISOLATED = "BlowUpIsolated"
BLOW_UP_NON_ISOLATED = "BlowUpNonIsolated"
BLOW_UP_2_ORBIT = "BlowUp2Orbit"
ADD_HANDLE = "AddHandle"
GLUE_SURFACES = "GlueSurfaces"

SURGERY_KINDS = (BLOW_UP_ISOLATED, BLOW_UP_NON_ISOLATED, BLOW_UP_2_ORBIT, ADD_HANDLE, GLUE_SURFACES)


@dataclass(frozen=True)
class SurgeryStep:
    """One surgery.

    ``oval_side`` (BlowUpNonIsolated) is the side of the blown-up oval
    *before* the surgery: ``"two"`` or ``"one"``. ``partner`` (GlueSurfaces)
    is the rotation factor glued to the current reflection.
    """

    kind: str
    oval_side: str | None = None
    partner: Base | None = None

    def __str__(self):
        if self.kind == BLOW_UP_NON_ISOLATED:
            return f"{self.kind}({self.oval_side}-sided)"
        if self.kind == GLUE_SURFACES:
            return f"{self.kind}({self.partner})"
        return self.kind


def apply_surgery(state: SurgeryState, step: SurgeryStep) -> SurgeryState:
    s = state
    if step.kind == BLOW_UP_ISOLATED:
        if s.r < 1:
            raise NotApplicable("no isolated fixed point to blow up")
        return replace(s, g=s.g + 1, r=s.r - 1, k_minus=s.k_minus + 1, surface_orientable=False)
    if step.kind == BLOW_UP_NON_ISOLATED:
        if step.oval_side == "two":
            if s.k_plus < 1:
                raise NotApplicable("no two-sided oval")
            kp, km = s.k_plus - 1, s.k_minus + 1
        elif step.oval_side == "one":
            if s.k_minus < 1:
                raise NotApplicable("no one-sided oval")
            kp, km = s.k_plus + 1, s.k_minus - 1
        else:
            raise NotApplicable(f"oval side must be 'one' or 'two', got {step.oval_side!r}")
        return replace(s, g=s.g + 1, r=s.r + 1, k_plus=kp, k_minus=km, surface_orientable=False)
    if step.kind == BLOW_UP_2_ORBIT:
        h = 2 * s.h + 1 if s.quotient_orientable else s.h + 1
        return replace(s, g=s.g + 2, h=h, quotient_orientable=False, surface_orientable=False)
    if step.kind == ADD_HANDLE:
        # the new surface stays orientable exactly when the involution reverses
        # the orientation of an orientable surface
        still = s.surface_orientable and s.reflection
        return replace(s, g=s.g + 2, k_plus=s.k_plus + 1, surface_orientable=still)
    if step.kind == GLUE_SURFACES:
        other = step.partner.state() if step.partner else None
        if other is None or step.partner.kind != "rotation":
            raise NotApplicable("gluing needs a rotation factor")
        if not (s.surface_orientable and s.reflection and s.quotient_orientable):
            raise NotApplicable("gluing needs a reflection of an orientable surface")
        if s.k_minus or s.r:
            raise NotApplicable("reflection factor must be unmodified")
        genus = s.g // 2 + step.partner.genus + 1
        return SurgeryState(
            2 * genus, s.h + other.h, True, other.r, s.k_plus, 0, False, False
        )
    raise NotApplicable(f"unknown surgery {step.kind!r}")


@dataclass(frozen=True)
class ModelRecipe:
    base: Base
    steps: tuple[SurgeryStep, ...] = field(default=())

    def replay(self) -> SurgeryState:
        state = self.base.state()
        for step in self.steps:
            state = apply_surgery(state, step)
        return state

    def __str__(self):
        return " -> ".join([str(self.base)] + [str(s) for s in self.steps])


def model_recipe(c: InvolutionClass) -> ModelRecipe:
    check_class(c)
    f = c.family
    two_orbits = lambda n: (SurgeryStep(BLOW_UP_2_ORBIT),) * n  # noqa: E731
    handles = lambda n: (SurgeryStep(ADD_HANDLE),) * n  # noqa: E731
    isolated = lambda n: (SurgeryStep(BLOW_UP_ISOLATED),) * n  # noqa: E731
    # r non-isolated points on the first oval, in pairs so the oval stays two-sided
    non_isolated = (
        SurgeryStep(BLOW_UP_NON_ISOLATED, "two"),
        SurgeryStep(BLOW_UP_NON_ISOLATED, "one"),
    ) * (c.r // 2)

    if f == "F1":
        return ModelRecipe(Base("rotation", c.r // 2 - 1, fixed_points=c.r), two_orbits(c.h))
    if f == "F2":
        return ModelRecipe(Base("reflection", c.k - 1, ovals=c.k), two_orbits(c.h) + non_isolated)
    if f == "F3":
        return ModelRecipe(Base("reflection", c.k - 1 + 2 * c.h, ovals=c.k), non_isolated)
    if f in ("F4", "F5"):
        fixed = c.r + c.k_minus
        q = 0 if f == "F4" else c.h
        rot = Base("rotation", 2 * q + fixed // 2 - 1, fixed_points=fixed)
        tail = isolated(c.k_minus) + (two_orbits(c.h) if f == "F4" else ())
        if c.k_plus:
            glue = SurgeryStep(GLUE_SURFACES, partner=rot)
            return ModelRecipe(Base("reflection", c.k_plus - 1, ovals=c.k_plus), (glue,) + tail)
        return ModelRecipe(rot, tail)
    if f == "F6":
        return ModelRecipe(Base("reflection", c.k - 1, ovals=c.k), two_orbits(c.h))
    if f in ("F7", "F01"):
        return ModelRecipe(Base("reflection", 0), two_orbits(c.h - 1) + handles(c.k))
    if f in ("F8", "F02"):
        return ModelRecipe(Base("reflection", 1), two_orbits(c.h - 2) + handles(c.k))
    # F9: free rotation of genus 2h - 1 with k handles added
    return ModelRecipe(Base("rotation", 2 * c.h - 1, fixed_points=0), handles(c.k))
