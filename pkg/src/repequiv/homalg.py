"""Bimodules, the functors Hom and tensor, adjunction transport, Ext and Tor.

Conventions follow the rest of the package: elements are row vectors, a
matrix ``F`` is the map ``x -> x @ F`` and ``f @ g`` is "f, then g".

A bimodule ``_A M_B`` is stored as a right ``B``-module together with the
left action of every generator of ``A`` as a full matrix ``L(g)``, so that
``g . m = m @ L(g)``.  Every basis vector of ``M`` is homogeneous for the
left idempotents (its left vertex is recorded in ``lvert``).  This holds for
all bimodules built here, because every construction starts from such a
basis and only ever picks basis vectors that are pure tensors or
homogeneous maps.

Tensor products ``X (x)_A M`` are computed as a coequalizer of the pair
space ``(+)_v X e_v (x) e_v M`` one right vertex at a time.  The chosen
quotient basis consists of classes of pure tensors of basis vectors, so a
natural map out of a tensor product can be specified on basis pairs and is
then exact by construction.
"""

from __future__ import annotations

from .exactla import Matrix, sparse_coker, _sparse_echelon
from .rmod import (Module, ModHom, HomSpace, direct_sum, dual, hom_basis,
                   kernel, projective, regular_module, split_summands, group_summands,
                   minimal_polynomial, top, _right_inverse, UnsupportedCharacteristic)


class NotAnIsomorphism(ValueError):
    """A canonical map that should be invertible is rank deficient."""


def _sparse_rows(m):
    return [{j: v for j, v in enumerate(r) if v} for r in m.rows]


def _dict_to_list(d, n, field):
    out = [field.zero] * n
    for k, v in d.items():
        out[k] = v
    return out


def _as_dict(vec):
    if isinstance(vec, dict):
        return vec
    return {i: v for i, v in enumerate(vec) if v}


def _matrix_from_images(field, images, ncols):
    """Matrix whose rows are the given sparse or dense images."""
    rows = []
    for im in images:
        if isinstance(im, dict):
            rows.append(_dict_to_list(im, ncols, field))
        else:
            rows.append(list(im))
    return Matrix(field, rows, ncols)


def _full_to_hom(src, tgt, m, check=False):
    return ModHom.from_matrix(src, tgt, m, check=check)


# -- bimodules ---------------------------------------------------------------------

class Bimodule:
    """``_A M_B``: a right ``B``-module ``module`` with a commuting left ``A``-action.

    ``lgen[g]`` is the full matrix of the left action of generator ``g`` of
    ``A``; ``lvert[i]`` is the left vertex of basis vector ``i``.
    """

    def __init__(self, left, module, lgen, lvert, name=None, check=True):
        self.left = left
        self.right = module.alg
        self.module = module
        self.field = module.field
        self.lgen = list(lgen)
        self.lvert = list(lvert)
        self.name = name
        self.dim = module.dim
        self._lmats = None
        if len(self.lvert) != self.dim or len(self.lgen) != len(left.gens):
            raise ValueError("bimodule data has the wrong size")
        if check:
            self.check()

    def __repr__(self):
        return "Bimodule(%s, dim=%d)" % (self.name or "?", self.dim)

    def rows_at(self, a):
        """Basis indices of ``e_a M``."""
        return [i for i, v in enumerate(self.lvert) if v == a]

    def lidem(self, a):
        z, o = self.field.zero, self.field.one
        n = self.dim
        return Matrix(self.field, [[o if (i == j and self.lvert[i] == a) else z for j in range(n)]
                                   for i in range(n)], n)

    def laction_all(self):
        """Full matrix of the left action of every basis element of ``A``."""
        if self._lmats is None:
            A = self.left
            out = [None] * A.dim
            for k in sorted(range(A.dim), key=lambda k: len(A.basis[k][2])):
                s, t, w = A.basis[k]
                if not w:
                    out[k] = self.lidem(s)
                else:
                    prefix = A.word_index[(s, w[:-1])]
                    # (w' g) . m = w' . (g . m)
                    out[k] = self.lgen[w[-1]] @ out[prefix]
            self._lmats = out
        return self._lmats

    def check(self):
        """Verify the bimodule axioms on generators and structure constants."""
        A, M = self.left, self.module
        for g, (gname, s, t) in enumerate(A.gens):
            L = self.lgen[g]
            for i, row in enumerate(L.rows):
                for j, x in enumerate(row):
                    if x and (self.lvert[i] != t or self.lvert[j] != s):
                        raise ValueError("left generator %s does not respect the idempotents" % gname)
            for h in range(len(M.alg.gens)):
                R = M.gen_action(h)
                if L @ R != R @ L:
                    raise ValueError("left action of %s does not commute with the right action" % gname)
        lm = self.laction_all()
        for i in range(A.dim):
            for g in range(len(A.gens)):
                gb = A.gen_basis[g]
                lhs = self.lgen[g] @ lm[i]
                rhs = Matrix.zeros(self.field, self.dim, self.dim)
                for k, c in A.mult[i][gb].items():
                    rhs = rhs + lm[k].scale(c)
                if lhs != rhs:
                    raise ValueError("left action violates the relation %s * %s" % (A.labels[i], A.gens[g][0]))

    def e_module(self, a):
        """``e_a M`` as a right module, with its basis indices inside ``M``."""
        rows = self.rows_at(a)
        return _sub_on_indices(self.module, rows), rows

    def as_left_module(self):
        """``M`` as a right module over ``A^op``; returns ``(module, perm)``.

        ``perm[i]`` is the index in ``M`` of basis vector ``i`` of the result.
        """
        op = self.left.opposite()
        perm = sorted(range(self.dim), key=lambda i: (self.lvert[i], i))
        pos = {p: i for i, p in enumerate(perm)}
        dims = [sum(1 for v in self.lvert if v == a) for a in range(op.nverts)]
        offs = [sum(dims[:a]) for a in range(op.nverts)]
        mats = []
        for g, (_, s, t) in enumerate(op.gens):
            L = self.lgen[g]
            rows = []
            for i in perm[offs[s]:offs[s] + dims[s]]:
                r = [self.field.zero] * dims[t]
                for j, x in enumerate(L.rows[i]):
                    if x:
                        r[pos[j] - offs[t]] = x
                rows.append(r)
            mats.append(Matrix(self.field, rows, dims[t]))
        return Module(op, dims, mats, name=self.name, check=False), perm

    def hom_to(self, other, m, check=True):
        """Bimodule map from a full matrix, with an intertwining check on both sides."""
        f = ModHom.from_matrix(self.module, other.module, m, check=check)
        if check:
            for g in range(len(self.left.gens)):
                if self.lgen[g] @ m != m @ other.lgen[g]:
                    raise ValueError("matrix does not intertwine the left actions")
        return f


def _sub_on_indices(M, idx):
    """Module spanned by a set of basis vectors that is stable under the action."""
    alg = M.alg
    idx = sorted(idx)
    local = {}
    dims = [0] * alg.nverts
    for i in idx:
        v = M.vertex_of(i)
        local[i] = (v, dims[v])
        dims[v] += 1
    per_v = [[i - M.offsets[M.vertex_of(i)] for i in idx if M.vertex_of(i) == v] for v in range(alg.nverts)]
    mats = []
    for g, (_, s, t) in enumerate(alg.gens):
        mats.append(M.mats[g].submatrix(rows=per_v[s], cols=per_v[t]))
    return Module(alg, dims, mats, check=False)


def regular_bimodule(A):
    """``_A A_A``; basis vectors are the basis elements of ``A``."""
    R = regular_module(A)
    order = []  # algebra basis index of each module basis vector
    for w in range(A.nverts):
        for v in range(A.nverts):
            order.extend(k for k, (s, t, _) in enumerate(A.basis) if s == v and t == w)
    pos = {k: i for i, k in enumerate(order)}
    field = A.field
    lgen = []
    for g in range(len(A.gens)):
        gb = A.gen_basis[g]
        entries = {}
        for k in range(A.dim):
            for kk, c in A.mult[gb][k].items():
                entries[(pos[k], pos[kk])] = c
        lgen.append(Matrix.from_sparse(field, A.dim, A.dim, entries))
    B = Bimodule(A, R, lgen, [A.basis[k][0] for k in order], name="A", check=False)
    B.algebra_index = order
    return B


def dual_bimodule(M):
    """``_A M_B`` to ``_B DM_A``; ``perm[i]`` is the ``M``-index dual to basis vector ``i``."""
    A, B = M.left, M.right
    field = M.field
    perm = sorted(range(M.dim), key=lambda i: (M.lvert[i], i))
    pos = {p: i for i, p in enumerate(perm)}
    dims = [sum(1 for v in M.lvert if v == a) for a in range(A.nverts)]
    offs = [sum(dims[:a]) for a in range(A.nverts)]
    mats = []
    for g, (_, s, t) in enumerate(A.gens):
        # (phi . g)(m) = phi(g . m): D(e_s M) -> D(e_t M)
        L = M.lgen[g]
        rows_s = perm[offs[s]:offs[s] + dims[s]]
        rows_t = perm[offs[t]:offs[t] + dims[t]]
        mats.append(Matrix(field, [[L.rows[j][i] for j in rows_t] for i in rows_s], dims[t]))
    D = Module(A, dims, mats, name=("D" + M.name) if M.name else None, check=False)
    n = M.dim
    lgen = []
    for h in range(len(B.gens)):
        R = M.module.gen_action(h)
        # (h . phi)(m) = phi(m . h)
        entries = {}
        for i in range(n):
            for j, x in enumerate(R.rows[i]):
                if x:
                    entries[(pos[j], pos[i])] = x
        lgen.append(Matrix.from_sparse(field, n, n, entries))
    lvert = [M.module.vertex_of(p) for p in perm]
    out = Bimodule(B, D, lgen, lvert, name=D.name, check=False)
    out.perm = perm
    out.dual_of = M
    return out


def evaluate_dual(DM, phi, m):
    """``phi(m)`` for ``phi`` in ``DM`` and ``m`` in ``M`` (vectors)."""
    phi, m = _as_dict(phi), _as_dict(m)
    field = DM.field
    out = field.zero
    for i, c in phi.items():
        x = m.get(DM.perm[i])
        if x:
            out += c * x
    return out


# -- tensor products -----------------------------------------------------------------

class TensorModule(Module):
    """``X (x)_A M`` as a right module, remembering its pure-tensor basis.

    ``pairs[k] = (xi, mi)`` says that basis vector ``k`` is the class of
    ``x_xi (x) m_mi``.
    """

    @classmethod
    def build(cls, X, M):
        A = M.left
        if X.alg is not A:
            raise ValueError("tensor factors are over different algebras")
        field = X.field
        Mm = M.module
        B = Mm.alg
        xvert = [X.vertex_of(i) for i in range(X.dim)]
        by_vertex = [[i for i in range(X.dim) if xvert[i] == v] for v in range(A.nverts)]
        xgen = [_sparse_rows(X.gen_action(g)) for g in range(len(A.gens))]
        lgen = [_sparse_rows(L) for L in M.lgen]
        blocks = []
        pair_pos = {}
        for u in range(B.nverts):
            ms = range(Mm.offsets[u], Mm.offsets[u] + Mm.dims[u])
            pairs = []
            for v in range(A.nverts):
                for xi in by_vertex[v]:
                    for mi in ms:
                        if M.lvert[mi] == v:
                            pair_pos[(xi, mi)] = (u, len(pairs))
                            pairs.append((xi, mi))
            rels = []
            for g, (_, s, t) in enumerate(A.gens):
                for xi in by_vertex[s]:
                    for mi in ms:
                        if M.lvert[mi] != t:
                            continue
                        rel = {}
                        for xj, c in xgen[g][xi].items():
                            p = pair_pos[(xj, mi)][1]
                            rel[p] = rel.get(p, field.zero) + c
                        for mj, c in lgen[g][mi].items():
                            p = pair_pos[(xi, mj)][1]
                            rel[p] = rel.get(p, field.zero) - c
                        rel = {p: c for p, c in rel.items() if c}
                        if rel:
                            rels.append(rel)
            q, free = sparse_coker(rels, len(pairs), field)
            blocks.append((pairs, q, free))
        dims = [len(b[2]) for b in blocks]
        offsets = [sum(dims[:u]) for u in range(B.nverts)]
        qpairs = []
        for u, (pairs, q, free) in enumerate(blocks):
            qpairs.extend(pairs[j] for j in free)
        # right action: (x (x) m) . h = x (x) (m . h)
        rgen = [_sparse_rows(Mm.gen_action(h)) for h in range(len(B.gens))]

        def cls_(xi, mi):
            u, p = pair_pos[(xi, mi)]
            off = offsets[u]
            return {off + k: c for k, c in blocks[u][1][p].items()}

        mats = []
        for h, (_, s, t) in enumerate(B.gens):
            rows = []
            for k in range(offsets[s], offsets[s] + dims[s]):
                xi, mi = qpairs[k]
                img = {}
                for mj, c in rgen[h][mi].items():
                    for kk, d in cls_(xi, mj).items():
                        img[kk] = img.get(kk, field.zero) + c * d
                r = [field.zero] * dims[t]
                for kk, v in img.items():
                    r[kk - offsets[t]] += v
                rows.append(r)
            mats.append(Matrix(field, rows, dims[t]))
        obj = cls(B, dims, mats, check=False)
        obj.left_factor = X
        obj.right_factor = M
        obj.pairs = qpairs
        obj._pair_pos = pair_pos
        obj._blocks = blocks
        obj._cache = {}
        return obj

    def pair_class(self, xi, mi):
        """Class of ``x_xi (x) m_mi`` as a sparse dict (empty if the vertices differ)."""
        key = (xi, mi)
        c = self._cache.get(key)
        if c is None:
            pp = self._pair_pos.get(key)
            if pp is None:
                c = {}
            else:
                u, p = pp
                off = self.offsets[u]
                c = {off + k: v for k, v in self._blocks[u][1][p].items()}
            self._cache[key] = c
        return c

    def elem(self, x, m):
        """Class of ``x (x) m`` for vectors ``x`` and ``m`` (dicts or lists); sparse dict."""
        x, m = _as_dict(x), _as_dict(m)
        field = self.field
        out = {}
        for xi, a in x.items():
            for mi, b in m.items():
                for k, c in self.pair_class(xi, mi).items():
                    out[k] = out.get(k, field.zero) + a * b * c
        return {k: v for k, v in out.items() if v}

    def elem_list(self, x, m):
        return _dict_to_list(self.elem(x, m), self.dim, self.field)

    def map_from_pairs(self, target, fn, check=False):
        """Homomorphism to ``target`` given by ``fn(xi, mi)`` on the pure-tensor basis."""
        images = [fn(xi, mi) for xi, mi in self.pairs]
        m = _matrix_from_images(self.field, images, target.dim)
        return ModHom.from_matrix(self, target, m, check=check)

    def functor_map(self, other, fx=None, fm=None):
        """``fx (x) fm``: ``self -> other`` for full matrices on the factors (``None`` is identity)."""
        fxr = _sparse_rows(fx) if fx is not None else None
        fmr = _sparse_rows(fm) if fm is not None else None

        def fn(xi, mi):
            x = fxr[xi] if fxr is not None else {xi: self.field.one}
            m = fmr[mi] if fmr is not None else {mi: self.field.one}
            return other.elem(x, m)
        return self.map_from_pairs(other, fn)


def tensor(X, M):
    """``X (x)_A M`` for a right module or bimodule ``X`` and a bimodule ``_A M_B``.

    Returns a :class:`TensorModule`, or a :class:`Bimodule` wrapping one when
    ``X`` is itself a bimodule.
    """
    if isinstance(X, Bimodule):
        P = TensorModule.build(X.module, M)
        C = X.left
        lgen = []
        for g in range(len(C.gens)):
            L = _sparse_rows(X.lgen[g])
            lgen.append(_matrix_from_images(P.field, [P.elem(L[xi], {mi: P.field.one}) for xi, mi in P.pairs], P.dim))
        lvert = [X.lvert[xi] for xi, _ in P.pairs]
        return Bimodule(C, P, lgen, lvert, check=False)
    return TensorModule.build(X, M)


def tensor_functor(X, T):
    """``X (x)_S T`` (a right ``R``-module for a bimodule ``_S T_R``)."""
    return tensor(X, T)


def tensor_map(f, M, src=None, tgt=None):
    """``f (x) M`` for a module map ``f: X -> X'``."""
    src = src or tensor(f.src, M)
    tgt = tgt or tensor(f.tgt, M)
    return src.functor_map(tgt, fx=f.full())


# -- hom functor ---------------------------------------------------------------------

class HomModule(Module):
    """``Hom_B(M, N)`` for a bimodule ``_A M_B`` as a right ``A``-module.

    The vertex-``a`` part is ``Hom_B(e_a M, N)``; a vector is turned into a
    full ``dim M x dim N`` matrix by :meth:`as_map`.
    """

    @classmethod
    def build(cls, M, N):
        A = M.left
        if M.right is not N.alg:
            raise ValueError("hom between modules over different algebras")
        field = N.field
        parts = []
        for a in range(A.nverts):
            E, rows = M.e_module(a)
            parts.append((E, rows, HomSpace(E, N)))
        dims = [len(p[2]) for p in parts]
        mats = []
        for g, (_, s, t) in enumerate(A.gens):
            Es, rows_s, Hs = parts[s]
            Et, rows_t, Ht = parts[t]
            Lsub = M.lgen[g].submatrix(rows=rows_t, cols=rows_s)
            out = []
            for f in Hs.basis:
                img = ModHom.from_matrix(Et, N, Lsub @ f.full(), check=False)
                out.append(Ht.coords(img))
            mats.append(Matrix(field, out, dims[t]) if out else Matrix.zeros(field, 0, dims[t]))
        obj = cls(A, dims, mats, check=False)
        obj.bimod = M
        obj.target = N
        obj._parts = parts
        obj._full = None
        return obj

    def basis_maps(self):
        """Full matrices ``M -> N`` of the basis vectors."""
        if self._full is None:
            field = self.field
            M, N = self.bimod, self.target
            out = []
            for a, (E, rows, H) in enumerate(self._parts):
                for f in H.basis:
                    F = f.full()
                    full = [[field.zero] * N.dim for _ in range(M.dim)]
                    for i, r in enumerate(rows):
                        full[r] = list(F.rows[i])
                    out.append(Matrix(field, full, N.dim))
            self._full = out
        return self._full

    def as_map(self, vec):
        """Full matrix ``M -> N`` of a vector."""
        field = self.field
        res = [[field.zero] * self.target.dim for _ in range(self.bimod.dim)]
        for c, F in zip(vec, self.basis_maps()):
            if c:
                for i, r in enumerate(F.rows):
                    ri = res[i]
                    for j, x in enumerate(r):
                        if x:
                            ri[j] += c * x
        return Matrix(field, res, self.target.dim)

    def coords(self, F):
        """Coordinates of a full matrix ``M -> N`` (must be a homomorphism)."""
        out = []
        for E, rows, H in self._parts:
            sub = F.submatrix(rows=rows)
            out.extend(H.coords(ModHom.from_matrix(E, self.target, sub, check=False)))
        return out

    def map_by(self, other, fn):
        """Homomorphism ``self -> other`` sending the basis map ``F`` to ``fn(F)`` (a full matrix)."""
        rows = [other.coords(fn(F)) for F in self.basis_maps()]
        return ModHom.from_matrix(self, other, Matrix(self.field, rows, other.dim) if rows
                                  else Matrix.zeros(self.field, 0, other.dim), check=False)


def hom_functor(M, N):
    """``Hom_B(M, N)`` as a right ``A``-module for a bimodule ``_A M_B``."""
    return HomModule.build(M, N)


def hom_map(g, M, src=None, tgt=None):
    """``Hom(M, g)`` for ``g: N -> N'``."""
    src = src or hom_functor(M, g.src)
    tgt = tgt or hom_functor(M, g.tgt)
    G = g.full()
    return src.map_by(tgt, lambda F: F @ G)


# -- adjunction ----------------------------------------------------------------------

def gamma(f, P=None, H=None):
    """Adjunction transport: ``f: X (x)_A M -> Y`` to ``X -> Hom_B(M, Y)``.

    ``P`` (the tensor module, default ``f.src``) and ``H`` (the hom module)
    can be passed to pin down the exact objects used.
    """
    P = P or f.src
    X, M, Y = P.left_factor, P.right_factor, f.tgt
    H = H or hom_functor(M, Y)
    field = X.field
    F = f.full()
    Fr = _sparse_rows(F)
    rows = []
    for xi in range(X.dim):
        full = [[field.zero] * Y.dim for _ in range(M.dim)]
        for mi in range(M.dim):
            for k, c in P.pair_class(xi, mi).items():
                for j, x in Fr[k].items():
                    full[mi][j] += c * x
        rows.append(H.coords(Matrix(field, full, Y.dim)))
    return ModHom.from_matrix(X, H, Matrix(field, rows, H.dim) if rows else Matrix.zeros(field, 0, H.dim),
                              check=False)


def gamma_inv(g, P=None):
    """Inverse transport: ``g: X -> Hom_B(M, Y)`` to ``X (x)_A M -> Y``."""
    H = g.tgt
    X = g.src
    P = P or tensor(X, H.bimod)
    G = g.full()
    images = {}

    def fn(xi, mi):
        if xi not in images:
            images[xi] = H.as_map(G.rows[xi])
        return images[xi].rows[mi]
    return P.map_from_pairs(H.target, fn)


def unit_eta(X, M, P=None, H=None):
    """``eta_X: X -> Hom_B(M, X (x)_A M)``, ``x -> (m -> x (x) m)``."""
    P = P or tensor(X, M)
    H = H or hom_functor(M, P)
    return gamma(P.identity(), P=P, H=H)


def counit_eps(Y, M, H=None, P=None):
    """``eps_Y: Hom_B(M, Y) (x)_A M -> Y``, ``f (x) m -> f(m)``."""
    H = H or hom_functor(M, Y)
    P = P or tensor(H, M)
    return gamma_inv(H.identity(), P=P)


# -- canonical isomorphisms DS = T (x) DT and DR = DT (x) T -------------------------

def canonical_iso_DS(Tb, DT=None, DS=None, DR=None):
    """The pairings ``kappa: T (x)_R DT -> DS`` and ``mu: DT (x)_S T -> DR``.

    ``kappa(t (x) phi)(s) = phi(s . t)`` and ``mu(phi (x) t)(r) = phi(t . r)``.
    Both are bimodule maps; they are returned as ``(kappa, mu)`` module maps
    after checking invertibility and both intertwining conditions.
    """
    S, R = Tb.left, Tb.right
    DT = DT or dual_bimodule(Tb)
    DS = DS or dual_bimodule(regular_bimodule(S))
    DR = DR or dual_bimodule(regular_bimodule(R))
    TDT = tensor(Tb, DT)
    DTT = tensor(DT, Tb)
    Ls = Tb.laction_all()
    sreg = DS.dual_of.algebra_index
    rreg = DR.dual_of.algebra_index
    Tm = Tb.module
    Ra = [Tm.action(k) for k in range(R.dim)]

    def kappa_fn(ti, pi):
        col = DT.perm[pi]
        out = {}
        for i, p in enumerate(DS.perm):
            x = Ls[sreg[p]].rows[ti][col]
            if x:
                out[i] = x
        return out

    def mu_fn(pi, ti):
        col = DT.perm[pi]
        out = {}
        for i, p in enumerate(DR.perm):
            x = Ra[rreg[p]].rows[ti][col]
            if x:
                out[i] = x
        return out

    kappa = TDT.module.map_from_pairs(DS.module, kappa_fn)
    mu = DTT.module.map_from_pairs(DR.module, mu_fn)
    for name, f, src, tgt in (("T (x) DT -> DS", kappa, TDT, DS), ("DT (x) T -> DR", mu, DTT, DR)):
        if not f.is_iso():
            raise NotAnIsomorphism("%s is not an isomorphism (rank %d of %d)" % (name, f.rank(), tgt.dim))
        src.hom_to(tgt, f.full())
    return kappa, mu


# -- projective covers and resolutions ------------------------------------------------

class Resolution:
    """``... -> P_1 -> P_0 -> M`` (or the dual shape for injective coresolutions).

    ``modules[i]`` is ``P_i``, ``diffs[i]`` is ``d_i: P_i -> P_{i-1}`` for
    ``i >= 1`` (``diffs[0]`` is ``None``) and ``aug`` is ``P_0 -> M``.  For a
    projective resolution ``tops[i]`` lists the vertex of each indecomposable
    summand of ``P_i`` and ``gens[i]`` the index of its top generator.
    ``complete`` is true when the last kernel was zero.
    """

    def __init__(self, target, modules, diffs, aug, tops=None, gens=None, complete=False, kind="projective"):
        self.target = target
        self.modules = modules
        self.diffs = diffs
        self.aug = aug
        self.tops = tops
        self.gens = gens
        self.complete = complete
        self.kind = kind

    def __len__(self):
        return len(self.modules)

    def check_exact(self):
        """Exactness by rank arithmetic at every computed degree."""
        if self.kind == "projective":
            if self.aug.rank() != self.target.dim:
                return False
            prev = self.aug
            for i in range(1, len(self.modules)):
                d = self.diffs[i]
                if not (d @ prev).is_zero():
                    return False
                if d.rank() != self.modules[i - 1].dim - prev.rank():
                    return False
                prev = d
            return True
        if self.aug.rank() != self.target.dim:
            return False
        prev = self.aug
        for i in range(1, len(self.modules)):
            d = self.diffs[i]
            if not (prev @ d).is_zero():
                return False
            if d.rank() != self.modules[i - 1].dim - prev.rank():
                return False
            prev = d
        return True


def projective_cover(M):
    """Minimal projective cover ``p: P -> M``; returns ``(P, p, tops, gens)``."""
    alg = M.alg
    field = M.field
    Q, proj = top(M)
    pieces = []
    for v in range(alg.nverts):
        if alg.vertex_class[v] != v or Q.dims[v] == 0:
            continue
        sec = _right_inverse(proj.blocks[v])
        for y in sec.rows:
            pieces.append((v, y))
    if not pieces:
        P, _, _ = direct_sum([], alg)
        return P, P.zero_to(M), [], []
    mods = []
    maps = []
    words = M.word_mats()
    for v, y in pieces:
        Pv = projective(alg, v)
        blocks = []
        for w in range(alg.nverts):
            idx = [k for k, (s, t, _) in enumerate(alg.basis) if s == v and t == w]
            rows = []
            for k in idx:
                rows.append((Matrix(field, [list(y)], len(y)) @ words[k]).rows[0] if M.dims[w] else [])
            blocks.append(Matrix(field, rows, M.dims[w]) if rows else Matrix.zeros(field, 0, M.dims[w]))
        mods.append(Pv)
        maps.append(ModHom(Pv, M, blocks))
    P, incs, projs = direct_sum(mods)
    p = P.zero_to(M)
    for pr, h in zip(projs, maps):
        p = p + pr @ h
    gens = []
    for (v, _), inc in zip(pieces, incs):
        e = [k for k, (s, t, _) in enumerate(alg.basis) if s == v and t == v].index(alg.idem[v])
        col = inc.blocks[v].rows[e].index(field.one)
        gens.append(P.offsets[v] + col)
    return P, p, [v for v, _ in pieces], gens


def proj_resolution(M, n):
    """Minimal projective resolution of ``M`` through ``P_n``."""
    if n < 0:
        raise ValueError("length must be >= 0")
    modules, diffs, tops, gens = [], [None], [], []
    P, p, tp, gn = projective_cover(M)
    modules.append(P)
    tops.append(tp)
    gens.append(gn)
    aug = p
    K, inc = kernel(p)
    complete = K.dim == 0
    for i in range(1, n + 1):
        if complete:
            break
        P, p, tp, gn = projective_cover(K)
        modules.append(P)
        tops.append(tp)
        gens.append(gn)
        diffs.append(p @ inc)
        K, inc = kernel(p)
        complete = K.dim == 0
    return Resolution(M, modules, diffs, aug, tops, gens, complete)


def inj_coresolution(M, n):
    """Minimal injective coresolution ``M -> I_0 -> ... -> I_n`` (dual of a projective one)."""
    res = proj_resolution(dual(M), n)
    mods = [dual(P) for P in res.modules]
    diffs = [None] + [ModHom(mods[i - 1], mods[i], [b.T for b in res.diffs[i].blocks])
                      for i in range(1, len(mods))]
    aug = ModHom(M, mods[0], [b.T for b in res.aug.blocks])
    return Resolution(M, mods, diffs, aug, res.tops, res.gens, res.complete, kind="injective")


def _summand_coords(P, tops, gens):
    """Map a global index of ``P`` to ``(summand j, algebra basis index)``."""
    alg = P.alg
    out = {}
    counts = [0] * alg.nverts
    # the direct sum places summands one after another inside each vertex block
    for j, v in enumerate(tops):
        for w in range(alg.nverts):
            idx = [k for k, (s, t, _) in enumerate(alg.basis) if s == v and t == w]
            for i, k in enumerate(idx):
                out[P.offsets[w] + counts[w] + i] = (j, k)
            counts[w] += len(idx)
    return out


def _yoneda_matrix(res, i, N):
    """Matrix of ``Hom(P_{i-1}, N) -> Hom(P_i, N)`` in generator coordinates."""
    field = N.field
    words = N.word_mats()
    src_tops, tgt_tops = res.tops[i - 1], res.tops[i]
    sc = _summand_coords(res.modules[i - 1], src_tops, res.gens[i - 1])
    d = res.diffs[i].full()
    row_off = []
    o = 0
    for v in src_tops:
        row_off.append(o)
        o += N.dims[v]
    nrows = o
    col_off = []
    o = 0
    for w in tgt_tops:
        col_off.append(o)
        o += N.dims[w]
    ncols = o
    out = [[field.zero] * ncols for _ in range(nrows)]
    for kk, g in enumerate(res.gens[i]):
        w = tgt_tops[kk]
        for idx, c in enumerate(d.rows[g]):
            if not c:
                continue
            j, b = sc[idx]
            v = src_tops[j]
            W = words[b]
            for a in range(N.dims[v]):
                ra = W.rows[a]
                for bb in range(N.dims[w]):
                    if ra[bb]:
                        out[row_off[j] + a][col_off[kk] + bb] += c * ra[bb]
    return Matrix(field, out, ncols)


def _cohomology_dims(mats, dims, i):
    """``dim ker(d^{i+1}) - rank(d^i)`` for cochain maps ``mats[i]: C^{i-1} -> C^i``."""
    rank_in = mats[i].rank() if i >= 1 and mats[i] is not None and mats[i].nrows and mats[i].ncols else 0
    nxt = mats[i + 1] if i + 1 < len(mats) else None
    rank_out = nxt.rank() if nxt is not None and nxt.nrows and nxt.ncols else 0
    return dims[i] - rank_out - rank_in


def ext(M, N, i, res=None):
    """``dim Ext^i(M, N)`` from the minimal projective resolution of ``M``."""
    if i < 0:
        raise ValueError("degree must be >= 0")
    res = res or proj_resolution(M, i + 1)
    if i >= len(res.modules):
        return 0
    dims = [sum(N.dims[v] for v in tp) for tp in res.tops]
    mats = [None] + [_yoneda_matrix(res, k, N) for k in range(1, min(i + 2, len(res.modules)))]
    return _cohomology_dims(mats, dims, i)


def ext_via_injectives(M, N, i, cores=None):
    """``dim Ext^i(M, N)`` from the minimal injective coresolution of ``N``."""
    cores = cores or inj_coresolution(N, i + 1)
    if i >= len(cores.modules):
        return 0
    spaces = [HomSpace(M, I) for I in cores.modules[:i + 2]]
    dims = [len(h) for h in spaces]
    mats = [None]
    for k in range(1, len(spaces)):
        d = cores.diffs[k]
        rows = [spaces[k].coords(f @ d) for f in spaces[k - 1].basis]
        mats.append(Matrix(M.field, rows, dims[k]) if rows else Matrix.zeros(M.field, 0, dims[k]))
    return _cohomology_dims(mats, dims, i)


def ext_via_duality(M, N, i):
    """``dim Ext^i(DN, DM)`` over the opposite algebra."""
    return ext(dual(N), dual(M), i)


def ext1_classes(B, X):
    """Representatives of a basis of ``Ext^1(B, X)``.

    Returns ``(omega, inc, P, classes)`` where ``0 -> omega -> P -> B -> 0`` is
    the start of the minimal projective resolution and ``classes`` are maps
    ``omega -> X`` whose classes modulo those extending to ``P`` form a basis.
    """
    P, p, _, _ = projective_cover(B)
    K, inc = kernel(p)
    H = hom_basis(K, X)
    field = X.field
    ext_rows = [(inc @ g).flat() for g in hom_basis(P, X)]
    red, piv = _sparse_echelon(ext_rows, field)
    rows = list(red)
    classes = []
    for h in H:
        trial = rows + [h.flat()]
        r2, p2 = _sparse_echelon(trial, field)
        if len(p2) > len(rows):
            rows = r2
            classes.append(h)
    return K, inc, P, classes


def _tensor_gen_block(Tb, a_coeffs, src_v, tgt_v):
    """Matrix of ``t -> a . t`` from ``e_src T`` to ``e_tgt T`` for ``a`` in ``e_tgt S e_src``."""
    field = Tb.field
    L = Tb.laction_all()
    rows_src = Tb.rows_at(src_v)
    rows_tgt = Tb.rows_at(tgt_v)
    full = Matrix.zeros(field, Tb.dim, Tb.dim)
    for b, c in a_coeffs.items():
        full = full + L[b].scale(c)
    return full.submatrix(rows=rows_src, cols=rows_tgt)


def tor(X, Tb, i):
    """``dim Tor_i^S(X, T)`` from the minimal projective resolution of ``X``."""
    if i < 0:
        raise ValueError("degree must be >= 0")
    res = proj_resolution(X, i + 1)
    field = X.field
    if i >= len(res.modules):
        return 0
    # chain complex (+)_j e_{v_j} T with boundary from the resolution's differentials
    cdims = [sum(len(Tb.rows_at(v)) for v in tp) for tp in res.tops]

    def boundary(k):  # C_k -> C_{k-1}
        src_tops, tgt_tops = res.tops[k], res.tops[k - 1]
        sc = _summand_coords(res.modules[k - 1], tgt_tops, res.gens[k - 1])
        d = res.diffs[k].full()
        roff = [sum(len(Tb.rows_at(v)) for v in src_tops[:j]) for j in range(len(src_tops))]
        coff = [sum(len(Tb.rows_at(v)) for v in tgt_tops[:j]) for j in range(len(tgt_tops))]
        out = [[field.zero] * cdims[k - 1] for _ in range(cdims[k])]
        for kk, g in enumerate(res.gens[k]):
            coeffs = {}
            for idx, c in enumerate(d.rows[g]):
                if c:
                    j, b = sc[idx]
                    coeffs.setdefault(j, {})
                    coeffs[j][b] = coeffs[j].get(b, field.zero) + c
            for j, a in coeffs.items():
                blk = _tensor_gen_block(Tb, a, src_tops[kk], tgt_tops[j])
                for r, row in enumerate(blk.rows):
                    for cc, x in enumerate(row):
                        if x:
                            out[roff[kk] + r][coff[j] + cc] += x
        return Matrix(field, out, cdims[k - 1])

    rank_out = 0
    if i >= 1:
        b = boundary(i)
        rank_out = b.rank() if b.nrows and b.ncols else 0
    rank_in = 0
    if i + 1 < len(res.modules):
        b = boundary(i + 1)
        rank_in = b.rank() if b.nrows and b.ncols else 0
    return cdims[i] - rank_out - rank_in


# -- endomorphism algebras -------------------------------------------------------------

def _eigenvalue(f):
    """The unique eigenvalue of an endomorphism of an indecomposable module."""
    mp = minimal_polynomial(f)
    field = f.src.field
    # mp = (x - lam)^m; the coefficient of x^{m-1} is -m * lam
    m = len(mp) - 1
    if m == 0:
        return field.zero
    lam = -mp[m - 1] / field(m) if field.char == 0 or m % field.char else None
    if lam is None:
        raise UnsupportedCharacteristic("eigenvalue extraction needs m invertible")
    g = f - f.src.identity().scale(lam)
    power = f.src.identity()
    for _ in range(m):
        power = power @ g
    if not power.is_zero():
        raise UnsupportedCharacteristic("endomorphism ring is not split local")
    return lam


def end_algebra(T, name="T"):
    """``S = End_R(T)`` as an :class:`Algebra` and ``T`` as a bimodule ``_S T_R``.

    ``T`` is split into indecomposables and re-based as ``D = (+) T_i`` with
    summands of one isomorphism class replaced by the same representative.
    The vertices of ``S`` are the summands.  ``S`` acts on the left by
    ``s . t = t @ mat(s)``, so products in ``S`` compose in the order that
    makes this a left action.  Returns ``(S, Tb)``; ``Tb.to_original`` is the
    isomorphism ``D -> T`` and ``Tb.basis_mats[k]`` the matrix of basis
    element ``k`` of ``S``.
    """
    from .qalg import algebra_from_matrices

    field = T.field
    classes = group_summands(split_summands(T))
    mods, to_orig, vclass, labels = [], [], [], []
    for ci, (rep, members, isos) in enumerate(classes):
        first = len(mods)
        for j, (s, w) in enumerate(zip(members, isos)):
            # w: rep -> s.module; rep -> s.module -> T
            mods.append(rep.module)
            to_orig.append(w @ s.inc)
            vclass.append(first)
            labels.append("%s%d" % (name, len(mods)))
    D, incs, projs = direct_sum(mods)
    iso = D.zero_to(T)
    for p, t in zip(projs, to_orig):
        iso = iso + p @ t
    m = len(mods)
    idem = [(projs[i] @ incs[i]).full() for i in range(m)]
    # radical pieces block by block, between class representatives only
    reps = [i for i in range(m) if vclass[i] == i]
    J = []  # (matrix, i, j)
    for i in reps:
        for j in reps:
            H = _radical_of_local(hom_basis(mods[i], mods[i])) if i == j else hom_basis(mods[i], mods[j])
            for h in H:
                J.append(((projs[i] @ h @ incs[j]).full(), i, j))
    # J^2 and arrows
    def field_rows(mm):
        return {a * mm.ncols + b: x for a, r in enumerate(mm.rows) for b, x in enumerate(r) if x}

    sq = []
    for a, i, j in J:
        for b, j2, k in J:
            if j == j2:
                p = a @ b
                if not p.is_zero():
                    sq.append(field_rows(p))
    rows = list(_sparse_echelon(sq, field)[0]) if sq else []
    # arrows: a basis of J modulo J^2
    arrows = []
    for a, i, j in J:
        trial = rows + [field_rows(a)]
        red, piv = _sparse_echelon(trial, field)
        if len(piv) > len(rows):
            rows = red
            arrows.append((a, i, j))
    gens = [(a, i, j) for a, i, j in arrows]
    names = ["a%d" % (k + 1) for k in range(len(gens))]
    radical = list(range(len(gens)))
    for i in range(m):
        if vclass[i] != i:
            r = vclass[i]
            ident_rj = (projs[r] @ incs[i]).full()
            ident_jr = (projs[i] @ incs[r]).full()
            gens.append((ident_rj, r, i))
            names.append("i%d_%d" % (r + 1, i + 1))
            gens.append((ident_jr, i, r))
            names.append("i%d_%d" % (i + 1, r + 1))
    E, basis_mats = algebra_from_matrices(field, idem, gens, names=names, radical=radical,
                                          vertex_class=vclass, vertex_labels=labels)
    S = E.opposite()
    lvert = [None] * D.dim
    for i in range(m):
        for k, row in enumerate(idem[i].rows):
            if row[k]:
                lvert[k] = i
    lgen = [basis_mats[E.gen_basis[g]] for g in range(len(S.gens))]
    Tb = Bimodule(S, D, lgen, lvert, name=name)
    Tb.to_original = iso
    Tb.basis_mats = basis_mats
    Tb.summands = mods
    return S, Tb


def _radical_of_local(E):
    """Basis of the radical of a split local endomorphism algebra."""
    out = []
    idn = E[0].src.identity()
    for f in E:
        lam = _eigenvalue(f)
        g = f - idn.scale(lam)
        out.append(g)
    # independent subset
    field = idn.src.field
    rows = []
    keep = []
    for g in out:
        if g.is_zero():
            continue
        trial = rows + [g.flat()]
        red, piv = _sparse_echelon(trial, field)
        if len(piv) > len(rows):
            rows = red
            keep.append(g)
    return keep


def bimodule_from_algebra(A):
    """The tautological bimodule ``_A A_A`` (used for ``T = R``)."""
    return regular_bimodule(A)
