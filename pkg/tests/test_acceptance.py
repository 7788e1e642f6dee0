"""Acceptance suite: one PASS/FAIL line per criterion."""

import itertools
from concurrent.futures import ProcessPoolExecutor

import pytest

from periodic_mcg.closure import (
    decide_involution,
    decide_order_gt2,
    is_normal_generator,
    normal_generator_witness,
)
from periodic_mcg.errors import MCGError
from periodic_mcg.homology import (
    example_recipe,
    f4_variant_real_action,
    induced_z2_action,
    rotation_generator_action,
    surgery_z2_action,
    triviality_profile,
)
from periodic_mcg.involutions import InvolutionClass, enumerate_classes, is_valid_class
from periodic_mcg.nec import (
    NecSignature,
    applicable_automorphisms,
    apply_automorphism,
    conjugacy_classes,
    conjugacy_invariants,
    enumerate_epimorphisms,
    hurwitz_riemann_genus,
    signatures_for_genus,
)
from periodic_mcg.polygon import assemble_fundamental_domain, classify, load_fixtures


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'} {title}: {detail}")
        assert ok, detail

    return emit


def _hr_job(job):
    g, n = job
    checked = bad = 0
    for sig in signatures_for_genus(g, n):
        if hurwitz_riemann_genus(sig, n) != g:
            bad += 1
            continue
        for theta in enumerate_epimorphisms(sig, n):
            cl = classify(assemble_fundamental_domain(sig, theta))
            checked += 1
            bad += cl.orientable or cl.genus != g
    return checked, bad


def test_criterion_1_hurwitz_riemann(report):
    jobs = [(g, n) for g in range(5, 21) for n in (2, 3, 4, 5)]
    with ProcessPoolExecutor() as pool:
        results = list(pool.map(_hr_job, jobs))
    checked = sum(c for c, _ in results)
    bad = sum(b for _, b in results)
    report(1, "HR consistency n in 2..5, g <= 20", bad == 0 and checked > 0,
           f"{checked} domains, {bad} mismatches")


def test_criterion_2_examples(report):
    # unpinned entries are left open: only the pinned prefix is compared
    expected = {1: (True,), 2: (False, True), 3: (False, False, True)}
    got = {}
    for ex, g in itertools.product((1, 2, 3), (6, 8, 10)):
        a = surgery_z2_action(example_recipe(ex, g))
        got[ex, g] = triviality_profile(a.matrix, a.layout).as_tuple()
    ok = all(got[ex, g][: len(expected[ex])] == expected[ex] for ex, g in got)
    report(2, "model involution profiles", ok, ", ".join(f"ex{e}/g{g}={p}" for (e, g), p in got.items()))


def test_criterion_3_dichotomy(report):
    total = bad = 0
    for g in range(5, 17):
        for c in enumerate_classes(g):
            a = induced_z2_action(c)
            prof = triviality_profile(a.matrix, a.layout)
            total += 1
            bad += decide_involution(c) != (not prof.any_trivial)
    report(3, "involution dichotomy g in 5..16", bad == 0, f"{total} classes, {bad} exceptions")


def test_criterion_4_determinant(report):
    total = bad = 0
    for g in range(5, 21):
        for h, km in itertools.product(range(1, g + 1), repeat=2):
            r = g - 2 * h - 2 * km + 2
            if r < 0 or r + km < 2:
                continue
            if not is_valid_class(InvolutionClass("F4", g, h, r, 0, km, False, False)):
                continue
            total += 1
            bad += f4_variant_real_action(g, h, r, km).determinant() != (-1) ** h
    report(4, "real-homology determinant (-1)^h", bad == 0 and total > 0, f"{total} tuples, {bad} wrong")


def test_criterion_5_generators(report):
    bad = []
    for g in range(7, 21):
        m = rotation_generator_action(g)
        det = m.determinant()
        verdict = decide_order_gt2(g, m.order(), twist_member=det == 1)
        if det != -1 or not verdict.contains_commutator or not is_normal_generator(g=g, order=m.order(), det=det):
            bad.append(f"rotation g={g}")
        w = normal_generator_witness(g)
        if not (w.g == g and decide_involution(w) and is_normal_generator(w)):
            bad.append(f"witness g={g}")
    report(5, "normal generators g in 7..20", not bad, "all verified" if not bad else ", ".join(bad))


def _stability_signatures():
    for p, h, r in itertools.product((3, 5), range(1, 4), range(0, 5)):
        yield (h, "-", (p,) * r, 0), p
    for h, sign, r, k in itertools.product(range(0, 3), "+-", range(0, 6), range(0, 6)):
        if r + k <= 5:
            yield (h, sign, (2,) * r, k), 2


def test_criterion_6_invariant_stability(report):
    sigs = thetas = checked = bad = 0
    for fields, n in _stability_signatures():
        try:
            sig = NecSignature(*fields)
            eps = enumerate_epimorphisms(sig, n)
        except MCGError:
            continue
        sigs += 1
        auts = applicable_automorphisms(sig)
        for theta in eps:
            thetas += 1
            inv = conjugacy_invariants(sig, theta)
            for aut in auts:
                checked += 1
                bad += conjugacy_invariants(sig, apply_automorphism(sig, theta, aut)) != inv
    report(6, "conjugacy invariants under automorphisms", bad == 0 and checked > 0,
           f"{sigs} signatures, {thetas} epimorphisms, {checked} images, {bad} changed")


def test_criterion_7_cross_count(report):
    mismatches = []
    for g in range(5, 13):
        buckets = 0
        for sig in signatures_for_genus(g, 2):
            buckets += len(conjugacy_classes(sig, enumerate_epimorphisms(sig, 2)))
        taxonomy = len(enumerate_classes(g))
        if buckets != taxonomy:
            mismatches.append(f"g={g}: {buckets} != {taxonomy}")
    report(7, "taxonomy vs epimorphism buckets g in 5..12", not mismatches,
           "all equal" if not mismatches else "; ".join(mismatches))


def test_criterion_8_fixtures(report):
    fixtures = load_fixtures()
    failed = [fx.name for fx in fixtures if fx.verdict() != fx.expected]
    report(8, "curve fixture corpus", not failed and len(fixtures) > 0,
           f"{len(fixtures) - len(failed)}/{len(fixtures)} pass" + (f" (failed: {failed})" if failed else ""))
