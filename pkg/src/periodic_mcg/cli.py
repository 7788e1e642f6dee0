"""Command line: ``periodic-mcg {signatures,involutions,verify}``.

Every command prints one table. ``--format json`` wraps the rows as
``{"schema": 1, "command": ..., "rows": [...]}``; CSV columns come in the
order listed in ``COLUMNS``.

Exit codes: 0 success, 1 a verification suite failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .closure import involution_verdict, is_normal_generator
from .errors import MCGError, SearchSpaceTooLarge, UnsupportedFamily, UnsupportedModel
from .homology import (
    induced_z2_action,
    involution_determinant,
    surgery_z2_action,
    triviality_profile,
)
from .involutions import enumerate_classes, model_recipe
from .nec import (
    DEFAULT_BUDGET,
    apply_automorphism,
    applicable_automorphisms,
    conjugacy_classes,
    conjugacy_invariants,
    enumerate_epimorphisms,
    hurwitz_riemann_genus,
    orbit,
    signatures_for_genus,
)
from .polygon import assemble_fundamental_domain, classify, load_fixtures

SCHEMA = 1
SUITES = ("hr", "homology", "conjugacy", "fixtures", "dichotomy")
FORMATS = ("text", "csv", "json")

COLUMNS = {
    "signatures": ["g", "n", "signature", "class", "size", "theta"],
    "involutions": [
        "class", "family", "g", "h", "r", "k", "k_plus", "k_minus", "quotient",
        "separating", "contains_commutator", "closure", "clause", "det", "normal_generator",
    ],
    "verify": ["suite", "g", "item", "checked", "failures", "status"],
}


@dataclass
class RunConfig:
    genus_min: int = 5
    genus_max: int = 5
    orders: list[int] = field(default_factory=lambda: [2])
    fmt: str = "text"
    budget: int = DEFAULT_BUDGET
    fixtures: str | None = None

    def __post_init__(self):
        if self.genus_min < 5:
            raise UsageError(f"genus must be at least 5, got {self.genus_min}")
        if self.genus_max < self.genus_min:
            raise UsageError("--genus-max is below --genus")
        if self.budget <= 0:
            raise UsageError("budget must be positive")
        if self.fmt not in FORMATS:
            raise UsageError(f"unknown format {self.fmt!r}")

    @property
    def genera(self) -> range:
        return range(self.genus_min, self.genus_max + 1)


class UsageError(Exception):
    pass


# -- commands ------------------------------------------------------------------------


def _theta_text(theta) -> str:
    return " ".join(f"{name}={v}" for name, v in theta.images)


def _classes(sig, thetas):
    """Conjugacy buckets; orbits under the listed automorphisms when no criterion applies."""
    try:
        return list(conjugacy_classes(sig, thetas).values())
    except UnsupportedFamily:
        pass
    remaining = list(thetas)
    out = []
    while remaining:
        orb = orbit(sig, remaining[0])
        out.append([t for t in remaining if t in orb])
        remaining = [t for t in remaining if t not in orb]
    return out


def cmd_signatures(cfg: RunConfig) -> list[dict]:
    rows = []
    for g in cfg.genera:
        for n in cfg.orders:
            for sig in signatures_for_genus(g, n):
                try:
                    thetas = enumerate_epimorphisms(sig, n, cfg.budget)
                except SearchSpaceTooLarge as exc:
                    print(f"skipped: {exc}", file=sys.stderr)
                    continue
                for idx, bucket in enumerate(_classes(sig, thetas), 1):
                    rows.append({
                        "g": g, "n": n, "signature": str(sig), "class": idx,
                        "size": len(bucket), "theta": _theta_text(bucket[0]),
                    })
    return rows


def cmd_involutions(cfg: RunConfig, only_normal_generators: bool = False) -> list[dict]:
    rows = []
    for g in cfg.genera:
        for c in enumerate_classes(g):
            v = involution_verdict(c)
            ng = g >= 7 and is_normal_generator(c)
            if only_normal_generators and not ng:
                continue
            rows.append({
                "class": str(c), "family": c.family, "g": c.g, "h": c.h, "r": c.r, "k": c.k,
                "k_plus": c.k_plus, "k_minus": c.k_minus,
                "quotient": "or" if c.quotient_orientable else "nonor",
                "separating": c.fixed_set_separating,
                "contains_commutator": v.contains_commutator,
                "closure": v.to_dict()["closure"], "clause": v.rationale,
                "det": involution_determinant(c), "normal_generator": ng,
            })
    return rows


# -- verification suites ---------------------------------------------------------------


def _row(suite, g, item, checked, failures):
    return {
        "suite": suite, "g": g, "item": item, "checked": checked,
        "failures": failures, "status": "PASS" if failures == 0 else "FAIL",
    }


def suite_hr(cfg: RunConfig) -> list[dict]:
    rows = []
    for g in cfg.genera:
        for n in cfg.orders:
            checked = bad = 0
            for sig in signatures_for_genus(g, n):
                if hurwitz_riemann_genus(sig, n) != g:
                    bad += 1
                    continue
                try:
                    thetas = enumerate_epimorphisms(sig, n, cfg.budget)
                except SearchSpaceTooLarge as exc:
                    print(f"skipped: {exc}", file=sys.stderr)
                    continue
                for theta in thetas:
                    cl = classify(assemble_fundamental_domain(sig, theta))
                    checked += 1
                    bad += cl.orientable or cl.genus != g
            rows.append(_row("hr", g, f"n={n}", checked, bad))
    return rows


def suite_homology(cfg: RunConfig) -> list[dict]:
    rows = []
    for g in cfg.genera:
        checked = bad = 0
        for c in enumerate_classes(g):
            checked += 1
            try:
                a = induced_z2_action(c)
            except MCGError:
                bad += 1
                continue
            try:
                rule = surgery_z2_action(model_recipe(c))
            except UnsupportedModel:
                continue
            p1 = triviality_profile(a.matrix, a.layout).as_tuple()
            p2 = triviality_profile(rule.matrix, rule.layout).as_tuple()
            bad += p1 != p2
        rows.append(_row("homology", g, "structure+rule", checked, bad))
    return rows


def suite_conjugacy(cfg: RunConfig) -> list[dict]:
    rows = []
    for g in cfg.genera:
        classes = checked = bad = 0
        for sig in signatures_for_genus(g, 2):
            if any(m != 2 for m in sig.periods):
                continue
            thetas = enumerate_epimorphisms(sig, 2, cfg.budget)
            classes += len(conjugacy_classes(sig, thetas))
            for theta in thetas:
                inv = conjugacy_invariants(sig, theta)
                for aut in applicable_automorphisms(sig):
                    checked += 1
                    bad += conjugacy_invariants(sig, apply_automorphism(sig, theta, aut)) != inv
        rows.append(_row("conjugacy", g, "automorphism-stability", checked, bad))
        taxonomy = len(enumerate_classes(g))
        rows.append(_row("conjugacy", g, f"cross-count {classes}={taxonomy}", 1, int(classes != taxonomy)))
    return rows


def suite_fixtures(cfg: RunConfig) -> list[dict]:
    rows = []
    for fx in load_fixtures(cfg.fixtures):
        g = classify(fx.glued()).genus
        rows.append(_row("fixtures", g, fx.name, 1, int(fx.verdict() != fx.expected)))
    return rows


def suite_dichotomy(cfg: RunConfig) -> list[dict]:
    rows = []
    for g in cfg.genera:
        checked = bad = 0
        for c in enumerate_classes(g):
            a = induced_z2_action(c)
            prof = triviality_profile(a.matrix, a.layout)
            checked += 1
            bad += involution_verdict(c).contains_commutator == prof.any_trivial
        rows.append(_row("dichotomy", g, "decide-vs-action", checked, bad))
    return rows


SUITE_FUNCS: dict[str, Callable[[RunConfig], list[dict]]] = {
    "hr": suite_hr,
    "homology": suite_homology,
    "conjugacy": suite_conjugacy,
    "fixtures": suite_fixtures,
    "dichotomy": suite_dichotomy,
}


def cmd_verify(suite: str, cfg: RunConfig) -> tuple[bool, list[dict]]:
    if suite not in SUITE_FUNCS:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    rows = SUITE_FUNCS[suite](cfg)
    return all(r["status"] == "PASS" for r in rows), rows


# -- output --------------------------------------------------------------------------------


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render(command: str, rows: Sequence[dict], fmt: str, extra: dict | None = None) -> str:
    cols = COLUMNS[command]
    if fmt == "json":
        doc = {"schema": SCHEMA, "command": command, **(extra or {}), "rows": list(rows)}
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_cell(r[c]) for c in cols])
        return buf.getvalue()
    table = [cols] + [[_cell(r[c]) for c in cols] for r in rows]
    widths = [max(len(line[i]) for line in table) for i in range(len(cols))]
    return "".join(
        "  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip() + "\n"
        for line in table
    )


# -- argument parsing ----------------------------------------------------------------------


def _orders(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad order list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--genus", type=int, help="genus (lower end of the range)")
    common.add_argument("--genus-max", type=int, help="upper end of the genus range")
    common.add_argument("--order", type=_orders, help="comma separated orders n")
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--budget", type=int, help="enumeration budget (env MCG_BUDGET)")
    common.add_argument("--fixtures", help="fixture directory (default: bundled corpus)")

    p = argparse.ArgumentParser(prog="periodic-mcg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("signatures", parents=[common], help="admissible signatures and classes")
    inv = sub.add_parser("involutions", parents=[common], help="involution taxonomy with verdicts")
    inv.add_argument("--only-normal-generators", action="store_true")
    ver = sub.add_parser("verify", parents=[common], help="run a verification suite")
    ver.add_argument("--suite", required=True, help=f"one of {', '.join(SUITES)}")
    return p


def _config(args, default_orders: list[int], default_span: int) -> RunConfig:
    budget = args.budget
    if budget is None:
        env = os.environ.get("MCG_BUDGET")
        try:
            budget = int(env) if env else DEFAULT_BUDGET
        except ValueError:
            raise UsageError(f"MCG_BUDGET is not an integer: {env!r}") from None
    lo = args.genus if args.genus is not None else 5
    hi = args.genus_max if args.genus_max is not None else lo + default_span
    return RunConfig(lo, hi, args.order or default_orders, args.format, budget, args.fixtures)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "signatures":
            if args.genus is None:
                raise UsageError("--genus is required")
            cfg = _config(args, [2], 0)
            out, code = render("signatures", cmd_signatures(cfg), cfg.fmt), 0
        elif args.command == "involutions":
            if args.genus is None:
                raise UsageError("--genus is required")
            cfg = _config(args, [2], 0)
            rows = cmd_involutions(cfg, args.only_normal_generators)
            out, code = render("involutions", rows, cfg.fmt), 0
        else:
            cfg = _config(args, [2, 3, 4, 5], 3)
            ok, rows = cmd_verify(args.suite, cfg)
            extra = {"suite": args.suite, "passed": ok}
            out, code = render("verify", rows, cfg.fmt, extra), (0 if ok else 1)
    except (UsageError, MCGError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
