import random

from hypothesis import HealthCheck, given, settings, strategies as st

from repequiv.homalg import ext, ext_via_duality, ext_via_injectives, hom_functor, tensor
from repequiv.qalg import Quiver, path_basis, rad_relations
from repequiv.repcat import random_repe, repe_hom_basis, stable_hom, stable_hom_bruteforce
from repequiv.rmod import direct_sum, hom_dim, hom_dim_raw, injective, projective, simple, split_summands

SETTINGS = settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])


@st.composite
def oriented_an(draw, max_n=4):
    """A type-A quiver with random arrow orientations, optionally with radical square zero."""
    n = draw(st.integers(2, max_n))
    arrows = []
    for i in range(n - 1):
        if draw(st.booleans()):
            arrows.append(("a%d" % i, i, i + 1))
        else:
            arrows.append(("a%d" % i, i + 1, i))
    Q = Quiver(n, tuple(arrows))
    rad2 = draw(st.booleans())
    return path_basis(Q, rad_relations(Q) if rad2 else ()), rad2


def pool(alg):
    out = []
    for v in range(alg.nverts):
        out += [projective(alg, v), injective(alg, v), simple(alg, v)]
    return out


@st.composite
def module_in(draw, alg, max_parts=3):
    mods = pool(alg)
    picks = draw(st.lists(st.integers(0, len(mods) - 1), min_size=1, max_size=max_parts))
    return direct_sum([mods[k] for k in picks])[0]


@SETTINGS
@given(st.data())
def test_hom_dimension_two_ways(data):
    alg, _ = data.draw(oriented_an())
    M = data.draw(module_in(alg))
    N = data.draw(module_in(alg))
    assert hom_dim(M, N) == hom_dim_raw(M, N)


@SETTINGS
@given(st.data())
def test_ext_three_ways(data):
    alg, _ = data.draw(oriented_an())
    M = data.draw(module_in(alg, 2))
    N = data.draw(module_in(alg, 2))
    i = data.draw(st.integers(0, 2))
    assert ext(M, N, i) == ext_via_injectives(M, N, i) == ext_via_duality(M, N, i)


@SETTINGS
@given(st.data())
def test_hereditary_euler_form(data):
    alg, rad2 = data.draw(oriented_an())
    if rad2 and alg.nverts > 2:
        return
    M = data.draw(module_in(alg, 2))
    N = data.draw(module_in(alg, 2))
    euler = sum(a * b for a, b in zip(M.dims, N.dims)) - sum(M.dims[s] * N.dims[t] for _, s, t in alg.gens)
    assert hom_dim(M, N) - ext(M, N, 1) == euler
    assert ext(M, N, 2) == 0


@SETTINGS
@given(st.data())
def test_krull_schmidt_preserves_dimension(data):
    alg, _ = data.draw(oriented_an())
    M = data.draw(module_in(alg, 4))
    parts = split_summands(M)
    assert sum(s.module.dim for s in parts) == M.dim
    assert all(hom_dim(s.module, s.module) >= 1 for s in parts)


@SETTINGS
@given(st.data())
def test_adjunction_dimensions(a3t, data):
    _, Tb, _, _, _ = a3t
    S, R = Tb.left, Tb.right
    X = data.draw(module_in(S, 2))
    Y = data.draw(module_in(R, 2))
    assert hom_dim(tensor(X, Tb), Y) == hom_dim(X, hom_functor(Tb, Y))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_complexes_square_zero_and_stable_oracle(seed):
    Q = Quiver(2, (("a", 0, 1),))
    alg = path_basis(Q)
    rng = random.Random(seed)
    X = random_repe(alg, rng, window=(-1, 1))
    Y = random_repe(alg, rng, window=(-1, 1))
    X.check()
    assert all(h.is_hom() for h in repe_hom_basis(X, Y))
    assert stable_hom(X, Y).dim == stable_hom_bruteforce(X, Y).dim
