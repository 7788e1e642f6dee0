"""Normal closures of periodic mapping classes.

Decides whether the normal closure of a periodic element contains the
commutator subgroup of ``M(N_g)`` and, for ``g >= 7``, which of the twist
subgroup or the whole group it is.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import GenusTooSmall, InvalidParameters
from .homology import involution_determinant
from .involutions import InvolutionClass, check_class, is_valid_class

TWIST_SUBGROUP = "TwistSubgroup"
FULL_GROUP = "FullGroup"
PROPER_OTHER = "ProperOther"
UNKNOWN = "Unknown"

_SHORT = {TWIST_SUBGROUP: "T", FULL_GROUP: "M", PROPER_OTHER: "other", UNKNOWN: "unknown"}


@dataclass(frozen=True)
class ClosureVerdict:
    contains_commutator: bool
    closure_id: str
    rationale: str
    warning: str | None = None

    def __post_init__(self):
        if self.closure_id in (TWIST_SUBGROUP, FULL_GROUP) and not self.contains_commutator:
            raise InvalidParameters("T or M closure must contain the commutator subgroup")

    def to_dict(self) -> dict:
        out = {
            "contains_commutator": self.contains_commutator,
            "closure": _SHORT[self.closure_id],
            "clause": self.rationale,
        }
        if self.warning:
            out["warning"] = self.warning
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _closure_id(g: int, contains: bool, twist_member: bool) -> str:
    if not contains:
        return PROPER_OTHER
    if g < 7:
        # the commutator subgroup has index 4 below genus 7
        return UNKNOWN
    return TWIST_SUBGROUP if twist_member else FULL_GROUP


def decide_order_gt2(g: int, order: int, twist_member: bool) -> ClosureVerdict:
    if g < 5:
        raise GenusTooSmall(f"g={g} < 5")
    if order < 3:
        raise InvalidParameters(f"order {order} < 3; use decide_involution")
    return ClosureVerdict(True, _closure_id(g, True, twist_member), "order>2")


def _clause(c: InvolutionClass) -> tuple[bool, str, str | None]:
    g, r, k, k_minus = c.g, c.r, c.k, c.k_minus
    if r > 0 and k == 0:
        return g - r >= 4, "1", None
    if k > 0 and r + k_minus > 0:
        if not c.quotient_orientable:
            return True, "2a", None
        return g - r - 2 * k >= 2, "2b", None
    # r = k_minus = 0
    if c.fixed_set_separating:
        return g - 2 * k >= 4, "3a", None
    if c.family == "F9" and c.h == 1:
        # base torus: the rotation acts as a translation, trivially on the
        # quotient V_g^+/<[c]>, so no standard pair (c, f(c)) exists
        return False, "3b-torus", None
    if c.is_free and g == 6:
        warn = "free involution at g=6"
        if c.family == "F02":
            return False, "3b-free-g6", warn
        return True, "3b", warn
    return True, "3b", None


def decide_involution(c: InvolutionClass) -> bool:
    """Whether the normal closure of ``c`` contains the commutator subgroup."""
    return involution_verdict(c).contains_commutator


def involution_verdict(c: InvolutionClass) -> ClosureVerdict:
    if c.g < 5:
        raise GenusTooSmall(f"g={c.g} < 5")
    check_class(c)
    contains, clause, warning = _clause(c)
    det = involution_determinant(c)
    return ClosureVerdict(contains, _closure_id(c.g, contains, det == 1), clause, warning)


def is_normal_generator(
    c: InvolutionClass | None = None,
    *,
    g: int | None = None,
    order: int | None = None,
    det: int | None = None,
) -> bool:
    """Whether the element normally generates ``M(N_g)``.

    Pass an involution class, or ``g``, ``order`` (at least 3) and ``det``.
    """
    if c is not None:
        if c.g < 7:
            raise GenusTooSmall(f"g={c.g} < 7")
        return decide_involution(c) and involution_determinant(c) == -1
    if g is None or order is None or det not in (1, -1):
        raise InvalidParameters("need a class or g, order and det = +-1")
    if g < 7:
        raise GenusTooSmall(f"g={g} < 7")
    return decide_order_gt2(g, order, det == 1).closure_id == FULL_GROUP


def normal_generator_witness(g: int) -> InvolutionClass:
    """An ``f_4`` variant with ``k_+ = 0`` and odd ``h`` that normally generates."""
    if g < 7:
        raise GenusTooSmall(f"g={g} < 7")
    for h in range(1, g + 1, 2):
        for k_minus in range(1, g + 1):
            r = g - 2 * h - 2 * k_minus + 2
            if r < 0:
                break
            c = InvolutionClass("F4", g, h, r, 0, k_minus, False, False)
            if is_valid_class(c) and (r + k_minus) % 2 == 0 and is_normal_generator(c):
                return c
    raise InvalidParameters(f"no witness at g={g}")
