import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix

from periodic_mcg.errors import (
    GenusTooSmall,
    InvalidParameters,
    NotUnimodular,
    QuotientUndefined,
    UnsupportedModel,
)
from periodic_mcg.homology import (
    IntegerMatrix,
    IntersectionForm,
    Layout,
    Z2Matrix,
    determinant_hom,
    example_class,
    example_recipe,
    f4_variant_real_action,
    induced_z2_action,
    involution_determinant,
    rotation_generator_action,
    surgery_z2_action,
    triviality_profile,
    vg_plus_basis,
)
from periodic_mcg.involutions import InvolutionClass, enumerate_classes, is_valid_class, model_recipe


def vec(layout, *names):
    out = 0
    for name in names:
        kind, i = name[0], int(name[1:])
        out ^= getattr(layout, kind)(i)
    return out


# -- V_g^+ ------------------------------------------------------------------------------


def test_vg_plus_g4():
    lay = Layout(1, 2)
    basis, c = vg_plus_basis(4, lay)
    assert basis == [vec(lay, "a1"), vec(lay, "b1"), vec(lay, "c1", "c2")]
    assert c == vec(lay, "c1", "c2")


def test_vg_plus_odd_k():
    lay = Layout(1, 3)
    basis, c = vg_plus_basis(5, lay)
    form = IntersectionForm.standard(lay)
    assert c is None
    assert form(lay.c_class, lay.c_class) == 1
    assert len(basis) == 4


@pytest.mark.parametrize("h,k", [(0, 5), (1, 4), (2, 2), (3, 1), (2, 6)])
def test_vg_plus_isotropic(h, k):
    lay = Layout(h, k)
    form = IntersectionForm.standard(lay)
    basis, _ = vg_plus_basis(lay.g, lay)
    assert len(basis) == lay.g - 1
    assert all(form(v, v) == 0 for v in basis)


def test_characteristic_element():
    for lay in [Layout(2, 2), Layout(0, 5), Layout(1, 4)]:
        assert IntersectionForm.standard(lay).characteristic() == lay.c_class


# -- triviality profiles ---------------------------------------------------------------------


def test_identity_profile():
    lay = Layout(2, 2)
    assert triviality_profile(Z2Matrix.identity(6), lay).as_tuple() == (True, True, True)


def test_quotient_undefined():
    lay = Layout(1, 3)
    assert triviality_profile(Z2Matrix.identity(5), lay).trivial_on_quotient is None
    with pytest.raises(QuotientUndefined):
        triviality_profile(Z2Matrix.identity(5), lay, require_quotient=True)


@pytest.mark.parametrize("g", [6, 8, 10])
def test_example_1(g):
    action = surgery_z2_action(example_recipe(1, g))
    assert action.matrix.is_identity()
    assert triviality_profile(action.matrix, action.layout).trivial_on_vg


@pytest.mark.parametrize("g", [6, 8, 10])
def test_example_2(g):
    action = surgery_z2_action(example_recipe(2, g))
    m, lay = action.matrix, action.layout
    assert m(lay.c(1)) == lay.c(2) and m(lay.c(2)) == lay.c(1)
    assert all(m(lay.a(i)) == lay.a(i) and m(lay.b(i)) == lay.b(i) for i in range(1, lay.h + 1))
    assert triviality_profile(m, lay).as_tuple() == (False, True, True)


@pytest.mark.parametrize("g", [6, 8, 10])
def test_example_3(g):
    action = surgery_z2_action(example_recipe(3, g))
    m, lay = action.matrix, action.layout
    assert m(vec(lay, "c1", "c2")) == vec(lay, "c3", "c4")
    assert m(vec(lay, "c1", "c3")) == vec(lay, "c1", "c3")
    assert triviality_profile(m, lay).as_tuple() == (False, False, True)


@pytest.mark.parametrize("ex", [1, 2, 3])
@pytest.mark.parametrize("g", [6, 8, 10])
def test_examples_agree_with_computed_action(ex, g):
    rule = surgery_z2_action(example_recipe(ex, g))
    computed = induced_z2_action(example_class(ex, g), rule.layout)
    assert (
        triviality_profile(computed.matrix, computed.layout).as_tuple()
        == triviality_profile(rule.matrix, rule.layout).as_tuple()
    )


def small_isometric_involutions(lay):
    """Every form-preserving involution fixing [c] (exhaustive)."""
    g = lay.g
    form = IntersectionForm.standard(lay)
    for cols in itertools.product(range(1 << g), repeat=g):
        m = Z2Matrix(cols)
        if (m @ m).is_identity() and m.preserves(form) and m(lay.c_class) == lay.c_class:
            yield m


@pytest.mark.parametrize("lay", [Layout(0, 3), Layout(1, 1), Layout(0, 4), Layout(1, 2)])
def test_monotone_exhaustive(lay):
    seen = 0
    for m in small_isometric_involutions(lay):
        p = triviality_profile(m, lay)
        seen += 1
        assert not p.trivial_on_vg or p.trivial_on_vg_plus
        assert not p.trivial_on_vg_plus or p.trivial_on_quotient in (True, None)
    assert seen > 1


def transvection(form, v, n):
    return Z2Matrix(tuple((1 << i) ^ (v if form(1 << i, v) else 0) for i in range(n)))


@settings(max_examples=60, deadline=None)
@given(g=st.sampled_from([6, 8, 10]), ex=st.sampled_from([1, 2, 3]), data=st.data())
def test_profile_is_conjugation_invariant(g, ex, data):
    action = surgery_z2_action(example_recipe(ex, g))
    lay = action.layout
    form = IntersectionForm.standard(lay)
    vs = [v for v in data.draw(st.lists(st.integers(1, (1 << g) - 1), min_size=1, max_size=6))
          if form(v, v) == 0]
    iso = inv = Z2Matrix.identity(g)
    for v in vs:
        t = transvection(form, v, g)  # an involution since <v, v> = 0
        iso, inv = t @ iso, inv @ t
    assert iso.preserves(form) and (iso @ inv).is_identity()
    conj = iso @ action.matrix @ inv
    p = triviality_profile(conj, lay)
    assert p.as_tuple() == triviality_profile(action.matrix, lay).as_tuple()
    assert not p.trivial_on_vg or p.trivial_on_vg_plus
    assert not p.trivial_on_vg_plus or p.trivial_on_quotient


# -- computed actions ---------------------------------------------------------------------------


@pytest.mark.parametrize("g", range(5, 13))
def test_induced_actions_are_isometric_involutions(g):
    for c in enumerate_classes(g):
        a = induced_z2_action(c)
        m, lay = a.matrix, a.layout
        assert lay.g == g
        assert (m @ m).is_identity()
        assert m.preserves(IntersectionForm.standard(lay))
        assert m(lay.c_class) == lay.c_class


@pytest.mark.parametrize("g", range(5, 11))
def test_rule_based_agrees(g):
    checked = 0
    for c in enumerate_classes(g):
        try:
            rule = surgery_z2_action(model_recipe(c))
        except UnsupportedModel:
            continue
        computed = induced_z2_action(c, rule.layout)
        assert (
            triviality_profile(computed.matrix, computed.layout).as_tuple()
            == triviality_profile(rule.matrix, rule.layout).as_tuple()
        ), c
        checked += 1
    assert checked > 0


def test_export_format():
    a = surgery_z2_action(example_recipe(2, 6))
    lines = a.export().splitlines()
    assert lines[0] == "layout h'=2,k'=2"
    assert len(lines) == 7 and all(len(row) == 6 and set(row) <= {"0", "1"} for row in lines[1:])
    assert Z2Matrix.from_rows(lines[1:]) == a.matrix


# -- real homology --------------------------------------------------------------------------------


def test_determinant_hom():
    ident = IntegerMatrix(((1, 0), (0, 1)))
    res = determinant_hom(ident)
    assert (res.det, res.twist_member) == (1, True)
    with pytest.raises(NotUnimodular):
        determinant_hom(IntegerMatrix(((2, 0), (0, 1))))


def f4_tuples(gmax=20):
    for g in range(5, gmax + 1):
        for h in range(1, g + 1):
            for km in range(1, g + 1):
                r = g - 2 * h - 2 * km + 2
                if r < 0 or r + km < 2:
                    continue
                if is_valid_class(InvolutionClass("F4", g, h, r, 0, km, False, False)):
                    yield g, h, r, km


def test_f4_examples():
    assert f4_variant_real_action(7, 1, 5, 1).determinant() == -1
    assert f4_variant_real_action(8, 2, 2, 2).determinant() == 1


def test_f4_invalid():
    with pytest.raises(InvalidParameters):
        f4_variant_real_action(8, 1, 3, 2)


@pytest.mark.parametrize("t", list(f4_tuples(12)))
def test_f4_involution_and_det(t):
    m = f4_variant_real_action(*t)
    assert m.dim == t[0] - 1
    assert (m @ m).is_identity()
    assert m.determinant() == (-1) ** t[1]


@pytest.mark.parametrize("t", list(f4_tuples(14)))
def test_f4_matches_quotient_betti(t):
    g, h, r, km = t
    c = InvolutionClass("F4", g, h, r, 0, km, False, False)
    assert involution_determinant(c) == f4_variant_real_action(*t).determinant()


def rotation_oracle(g):
    """Permutation on crosscaps restricted to the hyperplane, basis mu_i - mu_g."""
    cycle = g if g % 2 == 0 else g - 1
    perm = [i % cycle + 1 if i <= cycle else i for i in range(1, g + 1)]
    cols = []
    for i in range(1, g):
        col = [0] * (g - 1)
        a, b = perm[i - 1], perm[g - 1]
        if a != g:
            col[a - 1] += 1
        if b != g:
            col[b - 1] -= 1
        cols.append(col)
    return Matrix(cols).T


@pytest.mark.parametrize("g", range(7, 21))
def test_rotation_generator(g):
    m = rotation_generator_action(g)
    assert m.determinant() == -1
    assert int(rotation_oracle(g).det()) == -1
    assert m.order() == (g if g % 2 == 0 else g - 1)


def test_rotation_genus_gate():
    with pytest.raises(GenusTooSmall):
        rotation_generator_action(6)


def test_csv_export():
    text = rotation_generator_action(8).to_csv("layout h'=0,k'=8")
    lines = text.splitlines()
    assert lines[0] == "layout h'=0,k'=8"
    assert lines[1].split(",")[0] == "mu1"
    assert len(lines) == 2 + 7
