import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from periodic_mcg.errors import (
    AutomorphismNotApplicable,
    InvalidSignature,
    NonIntegralGenus,
    NotASurface,
    SearchSpaceTooLarge,
    SignatureMismatch,
    UnsupportedFamily,
)
from periodic_mcg.nec import (
    MINUS,
    PLUS,
    Epimorphism,
    NecSignature,
    apply_automorphism,
    applicable_automorphisms,
    are_conjugate,
    conjugacy_invariants,
    enumerate_epimorphisms,
    hurwitz_riemann_genus,
    is_admissible,
    presentation,
    signatures_for_genus,
)


def sig(text):
    return NecSignature.parse(text)


def hr_oracle(s, n):
    eps = 2 if s.sign == PLUS else 1
    rhs = n * (eps * s.h + s.k - 2 + sum(Fraction(m - 1, m) for m in s.periods))
    return rhs + 2


# -- signatures ---------------------------------------------------------------


def test_parse_round_trip():
    for text in ["(1;-;[3,3];{})", "(0;+;[2];{()^2})", "(2;+;[];{()})"]:
        assert str(sig(text)) == str(sig(str(sig(text))))


def test_periods_sorted():
    assert sig("(1;-;[5,3,3];{})").periods == (3, 3, 5)


def test_cycle_spellings_agree():
    assert sig("(0;+;[];{(),(),()})") == sig("(0;+;[];{()^3})")


@pytest.mark.parametrize("text", ["(0;+;[];{})", "(1;-;[1];{})", "(1;*;[];{})", "garbage"])
def test_rejects_bad_signatures(text):
    with pytest.raises(InvalidSignature):
        sig(text)


# -- Hurwitz-Riemann ------------------------------------------------------------


def test_hr_values():
    assert hurwitz_riemann_genus(sig("(1;-;[3,3];{})"), 3) == 3
    assert hurwitz_riemann_genus(sig("(5;-;[];{})"), 2) == 8
    for g0 in range(1, 6):
        assert hurwitz_riemann_genus(NecSignature(g0, MINUS, (), 0), 1) == g0


def test_hr_errors():
    with pytest.raises(NonIntegralGenus):
        hurwitz_riemann_genus(sig("(2;-;[3];{})"), 2)
    with pytest.raises(NotASurface):
        hurwitz_riemann_genus(sig("(1;-;[];{})"), 2)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_signatures_for_genus_match_formula(n):
    for g in range(5, 11):
        for s in signatures_for_genus(g, n):
            assert hr_oracle(s, n) == g


# -- presentations --------------------------------------------------------------


def test_presentation_generators():
    assert presentation(sig("(1;-;[3,3];{})")).names == ("x1", "x2", "d1")
    assert presentation(sig("(0;+;[2];{()^2})")).names == ("x1", "c1", "c2", "e1", "e2")
    assert presentation(sig("(1;+;[];{()})")).names == ("c1", "e1", "a1", "b1")


def test_orientation_reversing_kinds():
    pres = presentation(sig("(1;-;[2];{()})"))
    rev = {name for name, kind in pres.generators if pres.orientation_reversing(kind)}
    assert rev == {"c1", "d1"}


# -- admissibility and enumeration ---------------------------------------------------


def test_admissible_examples():
    s = sig("(1;-;[2,2,2,2];{})")
    assert is_admissible(s, Epimorphism.from_dict(2, {"x1": 1, "x2": 1, "x3": 1, "x4": 1, "d1": 0}, s))
    s1 = sig("(1;-;[];{})")
    assert not is_admissible(s1, Epimorphism.from_dict(2, {"d1": 1}, s1))
    s2 = sig("(1;-;[2,2];{})")
    assert not is_admissible(s2, Epimorphism.from_dict(2, {"x1": 0, "x2": 1, "d1": 1}, s2))


def test_signature_mismatch():
    s = sig("(1;-;[];{})")
    with pytest.raises(SignatureMismatch):
        is_admissible(s, Epimorphism.from_dict(2, {"a1": 1}))


def brute_admissible(s, n):
    """Independent oracle: Lemma 4.1 conditions evaluated from scratch."""
    pres = presentation(s)
    out = []
    for values in itertools.product(range(n), repeat=len(pres.names)):
        img = dict(zip(pres.names, values))
        ok = True
        for i, m in enumerate(s.periods, 1):
            v = img[f"x{i}"]
            ok &= v * m % n == 0 and all(v * d % n for d in range(1, m))
        for j in range(1, s.k + 1):
            ok &= img[f"c{j}"] != 0 and 2 * img[f"c{j}"] % n == 0
        total = sum(img[f"x{i}"] for i in range(1, s.r + 1)) + sum(img[f"e{j}"] for j in range(1, s.k + 1))
        if s.sign == MINUS:
            total += 2 * sum(img[f"d{l}"] for l in range(1, s.h + 1))
        ok &= total % n == 0
        if not ok:
            continue
        rev = [img[nm] for nm, kd in pres.generators if pres.orientation_reversing(kd)]
        pres_imgs = [img[nm] for nm, kd in pres.generators if not pres.orientation_reversing(kd)]
        gens = pres_imgs + [a + b for a in rev for b in rev]
        span = {0}
        for _ in range(n):
            span |= {(x + y) % n for x in span for y in gens}
        # surjectivity of theta itself plus the orientation-preserving condition
        whole = {0}
        for _ in range(n):
            whole |= {(x + y) % n for x in whole for y in values}
        if len(span) == n and len(whole) == n and rev:
            out.append(values)
    return out


@pytest.mark.parametrize(
    "text,n",
    [("(5;-;[];{})", 2), ("(1;-;[3,3];{})", 3), ("(0;+;[2];{()^2})", 2), ("(1;+;[];{()})", 4),
     ("(1;-;[2,2];{()})", 2), ("(1;-;[5,5,5];{})", 5), ("(1;-;[4,4];{})", 4)],
)
def test_enumeration_matches_brute_force(text, n):
    s = sig(text)
    got = [t.values() for t in enumerate_epimorphisms(s, n)]
    assert got == brute_admissible(s, n)
    assert got == sorted(set(got))


def test_free_z2_count_frozen():
    # 32 tuples minus all-zero and all-one (oracle above)
    assert len(enumerate_epimorphisms(sig("(5;-;[];{})"), 2)) == 30


def test_enumeration_empty_cases():
    assert enumerate_epimorphisms(sig("(0;+;[2,2,2,2,2];{})"), 2) == []
    assert enumerate_epimorphisms(sig("(5;-;[];{})"), 1) == []


def test_budget():
    with pytest.raises(SearchSpaceTooLarge):
        enumerate_epimorphisms(sig("(5;-;[];{})"), 2, budget=4)


# -- conjugacy ------------------------------------------------------------------------


def test_odd_prime_canonical_form():
    s = sig("(1;-;[5,5,5];{})")
    forms = set()
    for vals in [(1, 2, 2), (2, 4, 4), (4, 3, 3)]:
        th = Epimorphism.from_dict(5, dict(zip(["x1", "x2", "x3", "d1"], vals + (0,))), s)
        forms.add(conjugacy_invariants(s, th))
    assert len(forms) == 1


def test_odd_prime_scalar():
    s = sig("(1;-;[3,3,3];{})")
    t1 = Epimorphism.from_dict(3, {"x1": 1, "x2": 1, "x3": 1, "d1": 0}, s)
    t2 = Epimorphism.from_dict(3, {"x1": 2, "x2": 2, "x3": 2, "d1": 0}, s)
    assert are_conjugate(s, t1, t2)


def test_order2_invariants():
    s = sig("(0;+;[];{()^2})")
    th = Epimorphism.from_dict(2, {"c1": 1, "c2": 1, "e1": 1, "e2": 1}, s)
    assert conjugacy_invariants(s, th).k_minus == 2
    s4 = sig("(4;-;[];{})")
    th4 = Epimorphism.from_dict(2, {"d1": 1, "d2": 1, "d3": 0, "d4": 0}, s4)
    inv = conjugacy_invariants(s4, th4)
    assert (inv.d_sum, inv.all_d_zero) == (0, False)


def test_k_minus_distinguishes():
    s = sig("(1;+;[];{()^2})")
    thetas = enumerate_epimorphisms(s, 2)
    kms = {conjugacy_invariants(s, t).k_minus: t for t in thetas}
    assert len(kms) >= 2
    a, b = list(kms.values())[:2]
    assert not are_conjugate(s, a, b)


def test_unsupported_family():
    s = sig("(1;-;[4,4];{})")
    th = enumerate_epimorphisms(s, 4)[0]
    with pytest.raises(UnsupportedFamily):
        conjugacy_invariants(s, th)


# -- automorphisms ----------------------------------------------------------------------


def test_gamma_inverts_last_elliptic():
    s = sig("(1;-;[4,4];{})")
    th = Epimorphism.from_dict(4, {"x1": 1, "x2": 3, "d1": 0}, s)
    assert apply_automorphism(s, th, "gamma")["x2"] == 1


def test_rho_is_involution():
    s = sig("(1;-;[3,3,3];{})")
    th = Epimorphism.from_dict(3, {"x1": 1, "x2": 2, "x3": 0, "d1": 0}, s)
    assert apply_automorphism(s, apply_automorphism(s, th, "rho_1"), "rho_1") == th


def test_omega():
    s = sig("(1;+;[];{()})")
    th = Epimorphism.from_dict(4, {"c1": 2, "e1": 0, "a1": 1, "b1": 3}, s)
    assert apply_automorphism(s, th, "omega")["b1"] == 0


def test_not_applicable():
    s = sig("(1;-;[];{()^2})")
    th = enumerate_epimorphisms(s, 2)[0]
    with pytest.raises(AutomorphismNotApplicable):
        apply_automorphism(s, th, "sigma")


# -- properties -----------------------------------------------------------------------------

SMALL = [
    ("(1;-;[3,3];{})", 3), ("(1;-;[5,5,5,5];{})", 5), ("(2;-;[2,2];{})", 2),
    ("(0;+;[2];{()^2})", 2), ("(1;+;[2];{()})", 2), ("(3;-;[];{})", 2), ("(1;-;[];{()^2})", 2),
]


@settings(max_examples=60, deadline=None)
@given(case=st.sampled_from(SMALL), data=st.data())
def test_invariants_stable_under_automorphisms(case, data):
    s, n = sig(case[0]), case[1]
    thetas = enumerate_epimorphisms(s, n)
    th = data.draw(st.sampled_from(thetas))
    inv = conjugacy_invariants(s, th)
    for aut in applicable_automorphisms(s):
        image = apply_automorphism(s, th, aut)
        assert is_admissible(s, image)
        assert conjugacy_invariants(s, image) == inv


@settings(max_examples=40, deadline=None)
@given(case=st.sampled_from(SMALL), data=st.data())
def test_are_conjugate_equivalence(case, data):
    s, n = sig(case[0]), case[1]
    thetas = enumerate_epimorphisms(s, n)
    a, b, c = (data.draw(st.sampled_from(thetas)) for _ in range(3))
    assert are_conjugate(s, a, a)
    assert are_conjugate(s, a, b) == are_conjugate(s, b, a)
    if are_conjugate(s, a, b) and are_conjugate(s, b, c):
        assert are_conjugate(s, a, c)


def test_json_round_trip():
    s = sig("(1;-;[3,3];{})")
    th = enumerate_epimorphisms(s, 3)[0]
    assert Epimorphism.from_json(th.to_json(), s) == th
