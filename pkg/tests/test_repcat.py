import random

import pytest

from conftest import indecomposables
from repequiv.exactla import Matrix
from repequiv.qalg import Quiver, path_basis, rad_relations
from repequiv.repcat import (WINDOW_BOUND, F_T, RepeError, RepeHom, S_T, construct_phi, dual_regular,
                             make_repe, proj_object, random_repe, repe_cokernel, repe_direct_sum, repe_hom_basis,
                             repe_isomorphic, repe_kernel, repe_projective_cover, restriction_check, shift,
                             stable_hom, stable_hom_bruteforce, stably_isomorphic, stalk, strip_projectives,
                             verify_roundtrip_R, verify_roundtrip_S)
from repequiv.rmod import hom_dim, injective, is_isomorphic, projective, simple


def random_repe_hom(X, Y, rng):
    f = X.zero_to(Y)
    for h in repe_hom_basis(X, Y):
        f = f + h.scale(rng.randint(-3, 3))
    return f


def test_dual_regular_dimension(a3):
    DA = dual_regular(a3)
    assert DA.dim == a3.dim
    assert dual_regular(a3) is DA


def test_proj_object_shape(a3):
    # P(v) (x) DA is the injective I(v)
    for v in range(3):
        E = proj_object(a3, v, 1)
        assert E.comp(1).dims == projective(a3, v).dims
        assert is_isomorphic(E.comp(0), injective(a3, v))[0]
        assert E.deltas[1].is_iso()


def test_window_bound(a2):
    S = simple(a2, 0)
    stalk(S, WINDOW_BOUND)
    with pytest.raises(RepeError):
        stalk(S, WINDOW_BOUND + 1)


def test_square_zero_is_enforced(a3):
    # P3 -> nu(P3) = P1 -> nu(P1) with both structure maps invertible
    E = proj_object(a3, 2, 1)
    P, PD = E.comp(1), E.comp(0)
    X = make_repe({1: P, 0: PD}, {1: E.deltas[1].full()})
    PDD = X.tens(0)
    assert PDD.dim
    with pytest.raises(RepeError):
        make_repe({1: P, 0: PD, -1: PDD}, {1: E.deltas[1].full(), 0: PDD.identity().full()})


def test_structure_map_must_be_a_hom(a2):
    S1, S2 = simple(a2, 0), simple(a2, 1)
    X = make_repe({1: S2, 0: S1})
    bad = Matrix.from_list(S1.field, [[1]] * X.tens(1).dim)
    with pytest.raises(ValueError):
        make_repe({1: S2, 0: S1}, {1: bad})


def test_random_complexes_are_valid(a3):
    rng = random.Random(0)
    for _ in range(10):
        X = random_repe(a3, rng)
        X.check()
        assert X.identity().is_hom()


def test_hom_basis_elements_commute(a3):
    rng = random.Random(1)
    for _ in range(6):
        X, Y = random_repe(a3, rng), random_repe(a3, rng)
        for h in repe_hom_basis(X, Y):
            assert h.is_hom()


def test_stalk_homs_are_module_homs(a3):
    for M in indecomposables(a3):
        for N in indecomposables(a3):
            assert len(repe_hom_basis(stalk(M), stalk(N))) == hom_dim(M, N)


@pytest.mark.parametrize("rad2", [False, True])
def test_stable_hom_of_stalks_is_hom(rad2):
    Q = Quiver(3, (("a", 0, 1), ("b", 1, 2)))
    A = path_basis(Q, rad_relations(Q) if rad2 else ())
    mods = [projective(A, v) for v in range(3)] + [simple(A, v) for v in range(3)] + [injective(A, v) for v in range(3)]
    for M in mods:
        for N in mods:
            assert stable_hom(stalk(M), stalk(N)).dim == hom_dim(M, N)


def test_stable_hom_matches_bruteforce(a2):
    rng = random.Random(4)
    for _ in range(8):
        X = random_repe(a2, rng, window=(-1, 1))
        Y = random_repe(a2, rng, window=(-1, 1))
        assert stable_hom(X, Y).dim == stable_hom_bruteforce(X, Y).dim


def test_projective_objects_are_stably_zero(a3):
    E = proj_object(a3, 1, 0)
    rng = random.Random(2)
    X = random_repe(a3, rng)
    assert stable_hom(E, X).dim == 0
    assert stable_hom(X, E).dim == 0
    core, found = strip_projectives(E)
    assert core.is_zero() and found == [(1, 0)]


def test_strip_projectives_is_idempotent(a3):
    rng = random.Random(8)
    for _ in range(5):
        X = random_repe(a3, rng)
        E = proj_object(a3, rng.randrange(3), rng.randint(-1, 1))
        Z, _, _ = repe_direct_sum([X, E])
        core, found = strip_projectives(Z)
        assert found
        again, more = strip_projectives(core)
        assert more == [] and repe_isomorphic(core, again)[0]
        assert stably_isomorphic(Z, X)


def test_direct_sum_maps(a3):
    rng = random.Random(3)
    X, Y = random_repe(a3, rng), random_repe(a3, rng)
    Z, incs, projs = repe_direct_sum([X, Y])
    assert (incs[0] @ projs[0] - X.identity()).is_zero()
    assert (incs[0] @ projs[1]).is_zero()
    total = projs[0] @ incs[0] + projs[1] @ incs[1]
    assert (total - Z.identity()).is_zero()


def test_kernel_and_cokernel(a3):
    rng = random.Random(6)
    for _ in range(6):
        X, Y = random_repe(a3, rng), random_repe(a3, rng)
        f = random_repe_hom(X, Y, rng)
        K, inc = repe_kernel(f)
        C, p = repe_cokernel(f)
        assert inc.is_hom() and p.is_hom()
        assert (inc @ f).is_zero() and (f @ p).is_zero()
        rank = sum(f.at(i).rank() for i in f.degrees())
        assert K.dim + rank == X.dim and rank + C.dim == Y.dim


def test_projective_cover_is_epi(a3):
    rng = random.Random(9)
    for _ in range(5):
        Y = random_repe(a3, rng)
        P, pi, labels = repe_projective_cover(Y)
        assert pi.is_hom()
        assert all(pi.at(i).is_epi() for i in Y.comps)
        assert all(isinstance(v, int) for v, _ in labels)


def test_isomorphism_test(a3):
    rng = random.Random(10)
    X = random_repe(a3, rng)
    ok, w = repe_isomorphic(X, X)
    assert ok and w.is_iso() and w.is_hom()
    assert not repe_isomorphic(stalk(simple(a3, 0)), stalk(simple(a3, 0), 1))[0]


def test_shift(a3):
    X = stalk(simple(a3, 1), 0)
    Y = shift(X, 2)
    assert Y.lo == Y.hi == 2 and shift(Y, -2).comps[0] is X.comps[0]


def test_rephom_failure_reports_degree(a2):
    E = proj_object(a2, 0, 1)
    bad = RepeHom(E, E, {1: E.comp(1).identity()})
    assert not bad.is_hom()
    assert bad.failure() is not None


def test_identity_tilt_roundtrip(a2_identity, a2):
    ctx, d_r, d_s = a2_identity
    rng = random.Random(12)
    for _ in range(4):
        X = random_repe(a2, rng)
        assert repe_isomorphic(F_T(X, ctx, d_r), X)[0]


def test_roundtrip_on_fixture(a3t):
    _, _, ctx, d_r, d_s = a3t
    rng = random.Random(13)
    for _ in range(4):
        X = random_repe(ctx.R, rng)
        v = verify_roundtrip_R(X, ctx, d_r)
        assert v, v.failures
        d = construct_phi(X, ctx, d_r)
        assert d.phi.is_hom() and d.xi.is_hom()


def test_s_side_roundtrip_on_fixture(a3t):
    ws, _, ctx, d_r, d_s = a3t
    Y = ws.repe("Y")
    assert verify_roundtrip_S(Y, ctx, d_r, d_s)


def test_restriction_on_a_generators(a3t):
    _, _, ctx, d_r, _ = a3t
    for A in d_r.a_gens:
        assert restriction_check(A, ctx, d_r)


def test_projective_objects_go_to_projective_objects(a3t):
    _, _, ctx, d_r, _ = a3t
    for v in range(3):
        core, _ = strip_projectives(S_T(proj_object(ctx.R, v, 0), ctx, d_r))
        assert core.is_zero()
