import pytest

from conftest import indecomposables
from repequiv.homalg import ext
from repequiv.rmod import direct_sum, injective, is_isomorphic, projective, simple
from repequiv.wtilt import (AddCategory, ApproximationError, CotorsionData, check_ext_projective_generator,
                            check_good, check_wakamatsu, derived_s_data, ext_range, finite_type_check,
                            in_auslander, in_co_auslander, special_precover, special_preenvelope,
                            universal_extension)


def regular(alg):
    return direct_sum([projective(alg, v) for v in range(alg.nverts)])[0]


def test_regular_module_is_certified(a3):
    rep = check_wakamatsu(regular(a3), 4)
    assert rep.certified and rep.complete
    assert rep.ext_R == [0] * 4 and rep.ext_S == [0] * 4
    assert rep.end_dim == a3.dim
    assert "certified" in rep.summary()


def test_tilting_module_is_certified(a3t):
    _, Tb, _, _, _ = a3t
    rep = check_wakamatsu(Tb, 4)
    assert rep.certified and rep.complete
    assert rep.coresolution[0].mono and rep.coresolution[0].hom_exact


def test_simple_sum_fails_at_ext_stage(a2):
    T = direct_sum([simple(a2, 0), simple(a2, 1)])[0]
    rep = check_wakamatsu(T, 2)
    assert not rep.certified
    assert "stage 1" in rep.failure


def test_non_faithful_module_fails_at_end_stage(a3):
    rep = check_wakamatsu(simple(a3, 2), 2)
    assert not rep.certified
    assert "stage 0" in rep.failure


def test_depth_must_be_positive(a3):
    with pytest.raises(ValueError):
        check_wakamatsu(regular(a3), 0)


def test_injectives_lie_in_co_auslander_class(a3t):
    _, Tb, _, _, _ = a3t
    for v in range(3):
        assert in_co_auslander(injective(Tb.right, v), Tb, 3)
    for v in range(3):
        assert in_auslander(projective(Tb.right, v), Tb, 3)
    assert in_auslander(Tb.module, Tb, 3)


def test_co_auslander_class_for_regular_is_everything(a3):
    R = regular(a3)
    assert all(in_co_auslander(M, R, 3) for M in indecomposables(a3))


def test_fixture_data_is_orthogonal(a3t):
    _, _, _, d_r, d_s = a3t
    assert d_r.validate()
    assert d_s.validate()
    for B in d_r.b_gens:
        for A in d_r.a_gens:
            assert ext_range(B, A, 3) == [0, 0, 0]


def test_missing_injective_is_reported(a3):
    d = CotorsionData(a3, [projective(a3, 0)], [projective(a3, v) for v in range(3)], depth=2)
    v = d.validate()
    assert not v and any("injective" in f for f in v.failures)


def test_universal_extension(a2):
    S1, S2 = simple(a2, 0), simple(a2, 1)
    E, j = universal_extension(S1, S2)
    assert is_isomorphic(E, projective(a2, 0))[0]
    assert j.is_mono()
    assert universal_extension(S2, S1) is None


def test_preenvelopes_and_precovers(a3t):
    _, _, _, d_r, d_s = a3t
    for X in indecomposables(d_r.alg):
        seq = special_preenvelope(X, d_r)
        assert seq.verify(d_r)
        assert seq.steps <= d_r.cap
    for A in d_r.a_gens:
        seq = special_preenvelope(A, d_r)
        assert seq.steps == 0 and seq.u == A.identity()
    for Y in indecomposables(d_s.alg):
        seq = special_precover(Y, d_s)
        assert seq.verify(d_s)


def test_cap_is_enforced(a2):
    d = CotorsionData(a2, [injective(a2, v) for v in range(2)], indecomposables(a2), depth=2, cap=0)
    with pytest.raises(ApproximationError):
        special_preenvelope(simple(a2, 1), d)


def test_check_good_on_fixture(a3t):
    _, Tb, _, d_r, d_s = a3t
    v = check_good(Tb, d_r, d_s)
    assert v, v.failures


def test_check_good_rejects_wrong_pairing(a3t):
    _, Tb, _, d_r, d_s = a3t
    swapped = CotorsionData(d_s.alg, d_s.b_gens, d_s.a_gens, depth=3)
    assert not check_good(Tb, d_r, swapped)


def test_derived_s_data_matches_fixture(a3t):
    ws, Tb, _, d_r, d_s = a3t
    fresh = derived_s_data(Tb, d_r)
    assert AddCategory(fresh.a_gens).contains(direct_sum(d_s.a_gens)[0])
    assert len(fresh.a_gens) == len(d_s.a_gens) and len(fresh.b_gens) == len(d_s.b_gens)


def test_ext_projective_generator(a3t):
    _, Tb, _, d_r, _ = a3t
    assert check_ext_projective_generator(Tb, d_r.a_gens, 3)
    assert not check_ext_projective_generator(Tb, indecomposables(d_r.alg), 3)


def test_finite_type_for_regular(a3):
    R = regular(a3)
    v = finite_type_check(R, [projective(a3, v) for v in range(3)], 3)
    assert v and v.details["certification"] == "relative certification"
    strict = finite_type_check(R, [simple(a3, 0)], 3)
    assert not strict
    loose = finite_type_check(R, [simple(a3, 0)], 3, strict=False)
    assert loose and loose.details["members"] == 0


def test_ext_range_hereditary(a3):
    for M in indecomposables(a3):
        for N in indecomposables(a3):
            r = ext_range(M, N, 3)
            assert r[0] == ext(M, N, 1) and r[1:] == [0, 0]
