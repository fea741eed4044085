"""Right modules as representations, homomorphisms and Krull-Schmidt splitting.

A module over an :class:`~repequiv.qalg.Algebra` stores one vector space
per vertex and one matrix per generator ``g: u -> v`` mapping ``M_u`` to
``M_v``.  Elements are row vectors and the global basis lists the vertex
spaces one after another.  Homomorphisms are block diagonal and are stored
as one block per vertex; ``f @ g`` means "f, then g".
"""

from __future__ import annotations

import random

import sympy

from .exactla import Matrix, block_diag, coker, hstack, nullspace, vstack, _sparse_echelon


class UnsupportedCharacteristic(ValueError):
    pass


class DecompositionError(RuntimeError):
    pass


class Module:
    """Finite-dimensional right module given as a representation."""

    def __init__(self, alg, dims, mats, name=None, check=True):
        self.alg = alg
        self.field = alg.field
        self.dims = tuple(dims)
        if len(self.dims) != alg.nverts:
            raise ValueError("dimension vector has %d entries, algebra has %d vertices" % (len(self.dims), alg.nverts))
        self.mats = list(mats)
        if len(self.mats) != len(alg.gens):
            raise ValueError("need one matrix per generator")
        for g, (gname, s, t) in enumerate(alg.gens):
            m = self.mats[g]
            if m.shape != (self.dims[s], self.dims[t]):
                raise ValueError("matrix for %s has shape %s, expected %s" % (gname, m.shape, (self.dims[s], self.dims[t])))
        self.offsets = []
        off = 0
        for d in self.dims:
            self.offsets.append(off)
            off += d
        self.dim = off
        self.name = name
        self._words = None
        if check:
            self.check()

    # -- structure ---------------------------------------------------------
    def word_mats(self):
        """Block matrix of every basis element (from its word)."""
        if self._words is None:
            alg = self.alg
            out = [None] * alg.dim
            order = sorted(range(alg.dim), key=lambda k: len(alg.basis[k][2]))
            for k in order:
                s, t, w = alg.basis[k]
                if not w:
                    out[k] = Matrix.identity(self.field, self.dims[s])
                elif len(w) == 1:
                    out[k] = self.mats[w[0]]
                else:
                    prefix = alg.word_index[(s, w[:-1])]
                    out[k] = out[prefix] @ self.mats[w[-1]]
            self._words = out
        return self._words

    def check(self):
        """Verify the generator matrices satisfy the algebra's relations."""
        alg = self.alg
        words = self.word_mats()
        for i, (s, t, w) in enumerate(alg.basis):
            for g, (_, gs, gt) in enumerate(alg.gens):
                if gs != t:
                    continue
                lhs = words[i] @ self.mats[g]
                rhs = Matrix.zeros(self.field, self.dims[s], self.dims[gt])
                for k, c in alg.mult[i][alg.gen_basis[g]].items():
                    rhs = rhs + words[k].scale(c)
                if lhs != rhs:
                    raise ValueError("module relation fails for %s * %s" % (alg.labels[i], alg.gens[g][0]))

    def action(self, k):
        """Full ``dim x dim`` matrix of the right action of basis element ``k``."""
        s, t, _ = self.alg.basis[k]
        return _embed(self.word_mats()[k], self.offsets[s], self.offsets[t], self.dim, self.field)

    def gen_action(self, g):
        _, s, t = self.alg.gens[g]
        return _embed(self.mats[g], self.offsets[s], self.offsets[t], self.dim, self.field)

    def vertex_of(self, i):
        for v in range(len(self.dims) - 1, -1, -1):
            if i >= self.offsets[v]:
                return v
        raise IndexError(i)

    def dim_vector(self):
        return self.dims

    def is_zero(self):
        return self.dim == 0

    def identity(self):
        return ModHom(self, self, [Matrix.identity(self.field, d) for d in self.dims])

    def zero_to(self, other):
        return ModHom(self, other, [Matrix.zeros(self.field, a, b) for a, b in zip(self.dims, other.dims)])

    def __repr__(self):
        nm = self.name or "Module"
        return "%s(dims=%s)" % (nm, self.dims)

    def same_as(self, other):
        return self.alg is other.alg and self.dims == other.dims and self.mats == other.mats

    def split_vector(self, vec):
        """Vertex components of a global row vector."""
        return [vec[o:o + d] for o, d in zip(self.offsets, self.dims)]


def _embed(block, r0, c0, n, field):
    z = field.zero
    rows = [[z] * n for _ in range(n)]
    for i, r in enumerate(block.rows):
        rows[r0 + i][c0:c0 + block.ncols] = r
    return Matrix(field, rows, n)


class ModHom:
    """Module homomorphism stored as one block per vertex."""

    def __init__(self, src, tgt, blocks, check=False):
        self.src = src
        self.tgt = tgt
        self.blocks = list(blocks)
        for v, b in enumerate(self.blocks):
            if b.shape != (src.dims[v], tgt.dims[v]):
                raise ValueError("block %d has shape %s, expected %s" % (v, b.shape, (src.dims[v], tgt.dims[v])))
        if check and not self.is_hom():
            raise ValueError("matrix does not intertwine the module actions")

    @classmethod
    def from_matrix(cls, src, tgt, m, check=True):
        """From a full ``src.dim x tgt.dim`` matrix (must be block diagonal)."""
        blocks = []
        for v in range(len(src.dims)):
            rs = range(src.offsets[v], src.offsets[v] + src.dims[v])
            cs = range(tgt.offsets[v], tgt.offsets[v] + tgt.dims[v])
            blocks.append(m.submatrix(rows=rs, cols=cs))
        f = cls(src, tgt, blocks)
        if f.matrix() != m:
            raise ValueError("matrix is not vertex-diagonal")
        if check and not f.is_hom():
            raise ValueError("matrix does not intertwine the module actions")
        return f

    def matrix(self):
        return block_diag(self.blocks, self.src.field) if self.blocks else Matrix.zeros(self.src.field, 0, 0)

    def full(self):
        m = block_diag(self.blocks, self.src.field)
        return m if m.nrows == self.src.dim else Matrix.zeros(self.src.field, self.src.dim, self.tgt.dim)

    def is_hom(self):
        for g, (_, s, t) in enumerate(self.src.alg.gens):
            if self.src.mats[g] @ self.blocks[t] != self.blocks[s] @ self.tgt.mats[g]:
                return False
        return True

    def __matmul__(self, other):
        """``self @ other``: first ``self``, then ``other``."""
        if other.src.dims != self.tgt.dims:
            raise ValueError("composition of incompatible homomorphisms")
        return ModHom(self.src, other.tgt, [a @ b for a, b in zip(self.blocks, other.blocks)])

    def __add__(self, other):
        return ModHom(self.src, self.tgt, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        return ModHom(self.src, self.tgt, [a - b for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self):
        return ModHom(self.src, self.tgt, [-a for a in self.blocks])

    def scale(self, c):
        return ModHom(self.src, self.tgt, [a.scale(c) for a in self.blocks])

    def is_zero(self):
        return all(b.is_zero() for b in self.blocks)

    def rank(self):
        return sum(b.rank() for b in self.blocks)

    def is_iso(self):
        return self.src.dims == self.tgt.dims and all(b.is_invertible() for b in self.blocks)

    def is_mono(self):
        return self.rank() == self.src.dim

    def is_epi(self):
        return self.rank() == self.tgt.dim

    def inverse(self):
        return ModHom(self.tgt, self.src, [b.inverse() for b in self.blocks])

    def apply(self, vec):
        """Image of a global row vector."""
        parts = self.src.split_vector(vec)
        out = []
        for p, b in zip(parts, self.blocks):
            if b.ncols:
                out.extend((Matrix(self.src.field, [list(p)], b.nrows) @ b).rows[0])
        return out

    def flat(self):
        """Sparse dict of all block entries (for linear algebra on hom spaces)."""
        d = {}
        off = 0
        for b in self.blocks:
            nc = b.ncols
            for i, r in enumerate(b.rows):
                for j, v in enumerate(r):
                    if v:
                        d[off + i * nc + j] = v
            off += b.nrows * nc
        return d

    def __eq__(self, other):
        if not isinstance(other, ModHom):
            return NotImplemented
        return self.blocks == other.blocks

    def __repr__(self):
        return "ModHom(%s -> %s)" % (self.src.dims, self.tgt.dims)


def flat_size(src, tgt):
    return sum(a * b for a, b in zip(src.dims, tgt.dims))


def hom_from_flat(src, tgt, vec):
    """Inverse of :meth:`ModHom.flat`; ``vec`` is a dict or list."""
    field = src.field
    get = vec.get if isinstance(vec, dict) else (lambda i, d=None: vec[i])
    blocks = []
    off = 0
    z = field.zero
    for a, b in zip(src.dims, tgt.dims):
        rows = [[get(off + i * b + j, z) or z for j in range(b)] for i in range(a)]
        blocks.append(Matrix(field, rows, b))
        off += a * b
    return ModHom(src, tgt, blocks)


# -- hom spaces ---------------------------------------------------------------

def _hom_equations(M, N):
    alg = M.alg
    field = M.field
    voff = []
    off = 0
    for a, b in zip(M.dims, N.dims):
        voff.append(off)
        off += a * b
    nvars = off
    rows = []
    for g, (_, u, v) in enumerate(alg.gens):
        Mg = M.mats[g].rows
        Ng = N.mats[g].rows
        du_m = M.dims[u]
        du_n, dv_n = N.dims[u], N.dims[v]
        if du_m == 0 or dv_n == 0:
            continue
        for i in range(du_m):
            mrow = [(k, x) for k, x in enumerate(Mg[i]) if x]
            for j in range(dv_n):
                eq = {}
                for k, x in mrow:  # (M_g f_v)_{ij}
                    idx = voff[v] + k * dv_n + j
                    eq[idx] = eq.get(idx, field.zero) + x
                for k in range(du_n):  # -(f_u N_g)_{ij}
                    y = Ng[k][j]
                    if y:
                        idx = voff[u] + i * du_n + k
                        eq[idx] = eq.get(idx, field.zero) - y
                eq = {a: b for a, b in eq.items() if b}
                if eq:
                    rows.append(eq)
    return rows, nvars


def hom_basis(M, N):
    """Basis of ``Hom(M, N)`` as a list of :class:`ModHom`."""
    if M.alg is not N.alg:
        raise ValueError("modules over different algebras")
    rows, nvars = _hom_equations(M, N)
    return [hom_from_flat(M, N, v) for v in nullspace(rows, nvars, M.field)]


def hom_dim(M, N):
    rows, nvars = _hom_equations(M, N)
    return nvars - len(_sparse_echelon(rows, M.field)[1])


def hom_dim_raw(M, N):
    """``dim Hom(M, N)`` from the full algebra action (independent of the generators).

    Solves ``A_M(b) X = X A_N(b)`` for every basis element ``b`` with a dense
    unknown ``X`` of size ``dim M x dim N``.
    """
    field = M.field
    n, m = M.dim, N.dim
    rows = []
    for b in range(M.alg.dim):
        A = M.action(b).rows
        B = N.action(b).rows
        for i in range(n):
            for j in range(m):
                eq = {}
                for k in range(n):
                    if A[i][k]:
                        idx = k * m + j
                        eq[idx] = eq.get(idx, field.zero) + A[i][k]
                for k in range(m):
                    if B[k][j]:
                        idx = i * m + k
                        eq[idx] = eq.get(idx, field.zero) - B[k][j]
                eq = {a: c for a, c in eq.items() if c}
                if eq:
                    rows.append(eq)
    return n * m - len(_sparse_echelon(rows, field)[1])


class HomSpace:
    """A basis of ``Hom(M, N)`` with coordinate lookup."""

    def __init__(self, M, N, basis=None):
        from .qalg import Coordinates

        self.src, self.tgt = M, N
        self.basis = hom_basis(M, N) if basis is None else basis
        self._coords = Coordinates([f.flat() for f in self.basis], flat_size(M, N), M.field)

    def __len__(self):
        return len(self.basis)

    def coords(self, f):
        c = self._coords.coords(f.flat())
        if c is None:
            raise ValueError("not in the hom space")
        return c

    def combine(self, coeffs):
        f = self.src.zero_to(self.tgt)
        for c, b in zip(coeffs, self.basis):
            if c:
                f = f + b.scale(c)
        return f


# -- constructions ------------------------------------------------------------

def zero_module(alg):
    return Module(alg, [0] * alg.nverts, [Matrix.zeros(alg.field, 0, 0) for _ in alg.gens], check=False)


def direct_sum(mods, alg=None):
    """Direct sum with inclusions and projections.

    Returns ``(S, incs, projs)``.
    """
    mods = list(mods)
    if not mods:
        z = zero_module(alg)
        return z, [], []
    alg = mods[0].alg
    field = alg.field
    dims = [sum(M.dims[v] for M in mods) for v in range(alg.nverts)]
    mats = [block_diag([M.mats[g] for M in mods], field) for g in range(len(alg.gens))]
    for g, (_, s, t) in enumerate(alg.gens):
        if mats[g].nrows != dims[s]:
            mats[g] = Matrix.zeros(field, dims[s], dims[t])
    S = Module(alg, dims, mats, check=False)
    incs, projs = [], []
    before = [0] * alg.nverts
    for M in mods:
        ib, pb = [], []
        for v in range(alg.nverts):
            d = M.dims[v]
            ib.append(Matrix(field, [[field.one if c == before[v] + i else field.zero for c in range(dims[v])] for i in range(d)], dims[v]))
            pb.append(ib[-1].T if d else Matrix.zeros(field, dims[v], 0))
            before[v] += d
        incs.append(ModHom(M, S, ib))
        projs.append(ModHom(S, M, pb))
    return S, incs, projs


def direct_sum_hom(fs, src=None, tgt=None):
    """Block-diagonal map ``(+) f_i``."""
    S = src or direct_sum([f.src for f in fs])[0]
    T = tgt or direct_sum([f.tgt for f in fs])[0]
    blocks = [block_diag([f.blocks[v] for f in fs], S.field) for v in range(len(S.dims))]
    blocks = [b if b.shape == (S.dims[v], T.dims[v]) else Matrix.zeros(S.field, S.dims[v], T.dims[v]) for v, b in enumerate(blocks)]
    return ModHom(S, T, blocks)


def hom_matrix(src, tgt, grid):
    """Map between direct sums from a grid of component maps (``None`` is zero).

    ``src`` and ``tgt`` are ``(S, incs, projs)`` triples from :func:`direct_sum`;
    ``grid[i][j]`` maps summand ``i`` of the source to summand ``j`` of the target.
    """
    S, s_inc, s_proj = src
    T, t_inc, t_proj = tgt
    f = S.zero_to(T)
    for i, row in enumerate(grid):
        for j, h in enumerate(row):
            if h is not None:
                f = f + s_proj[i] @ h @ t_inc[j]
    return f


def submodule(M, sub):
    """Submodule on a graded subspace ``sub[v]`` (rows in ``M_v``); returns ``(K, inclusion)``.

    The subspace must be stable under the generators.
    """
    field = M.field
    alg = M.alg
    mats = []
    for g, (_, s, t) in enumerate(alg.gens):
        img = sub[s] @ M.mats[g] if sub[s].nrows else Matrix.zeros(field, 0, M.dims[t])
        if sub[t].nrows == 0:
            if not img.is_zero():
                raise ValueError("subspace is not a submodule")
            mats.append(Matrix.zeros(field, sub[s].nrows, 0))
            continue
        if img.nrows == 0:
            mats.append(Matrix.zeros(field, 0, sub[t].nrows))
            continue
        from .exactla import solve_left, Inconsistent

        try:
            x, _ = solve_left(sub[t], img)
        except Inconsistent:
            raise ValueError("subspace is not a submodule")
        mats.append(x)
    K = Module(alg, [b.nrows for b in sub], mats, check=False)
    return K, ModHom(K, M, list(sub))


def quotient(M, sub):
    """Quotient by a graded submodule ``sub``; returns ``(Q, projection, section blocks)``."""
    field = M.field
    alg = M.alg
    qs, ss = [], []
    for v in range(alg.nverts):
        rel = sub[v] if sub[v].nrows else Matrix.zeros(field, 0, M.dims[v])
        q, s = coker(rel) if M.dims[v] else (Matrix.zeros(field, 0, 0), Matrix.zeros(field, 0, 0))
        qs.append(q)
        ss.append(s)
    mats = []
    for g, (_, s, t) in enumerate(alg.gens):
        if ss[s].nrows == 0 or M.dims[t] == 0:
            mats.append(Matrix.zeros(field, ss[s].nrows, qs[t].ncols))
        else:
            mats.append(ss[s] @ M.mats[g] @ qs[t])
    Q = Module(alg, [q.ncols for q in qs], mats, check=False)
    return Q, ModHom(M, Q, qs), ss


def _row_basis(m):
    return m.row_space() if m.nrows else m


def kernel(f):
    """``(K, inclusion)`` with ``K = ker f``."""
    field = f.src.field
    sub = []
    for v, b in enumerate(f.blocks):
        if b.nrows == 0:
            sub.append(Matrix.zeros(field, 0, 0))
        elif b.ncols == 0:
            sub.append(Matrix.identity(field, b.nrows))
        else:
            lk = b.left_kernel()
            sub.append(lk.row_space() if lk.nrows else Matrix.zeros(field, 0, b.nrows))
    return submodule(f.src, sub)


def image_subspace(f):
    field = f.src.field
    out = []
    for v, b in enumerate(f.blocks):
        if b.nrows == 0 or b.ncols == 0:
            out.append(Matrix.zeros(field, 0, b.ncols))
        else:
            out.append(b.row_space())
    return out


def cokernel(f):
    """``(C, projection)`` with ``C = coker f``."""
    Q, p, _ = quotient(f.tgt, image_subspace(f))
    return Q, p


def image(f):
    """``(I, epi, mono)`` with ``f = epi @ mono``."""
    I, mono = submodule(f.tgt, image_subspace(f))
    from .exactla import solve_left

    blocks = []
    for v, b in enumerate(f.blocks):
        if I.dims[v] == 0:
            blocks.append(Matrix.zeros(f.src.field, b.nrows, 0))
        elif b.nrows == 0:
            blocks.append(Matrix.zeros(f.src.field, 0, I.dims[v]))
        else:
            x, _ = solve_left(mono.blocks[v].T, b.T)
            blocks.append(x.T)
    return I, ModHom(f.src, I, blocks), mono


def restrict_hom(f, inc, new_tgt_inc=None):
    """Compose ``inc @ f`` and, if given, factor through the mono ``new_tgt_inc``."""
    g = inc @ f
    if new_tgt_inc is None:
        return g
    return factor_through_mono(g, new_tgt_inc)


def factor_through_mono(g, mono):
    """Return ``h`` with ``h @ mono == g``; raises if ``g`` does not factor."""
    from .exactla import solve_left

    field = g.src.field
    blocks = []
    for v in range(len(g.blocks)):
        b = g.blocks[v]
        m = mono.blocks[v]
        if m.nrows == 0:
            if not b.is_zero():
                raise ValueError("map does not factor through the mono")
            blocks.append(Matrix.zeros(field, b.nrows, 0))
        elif b.nrows == 0:
            blocks.append(Matrix.zeros(field, 0, m.nrows))
        else:
            x, _ = solve_left(m, b)
            blocks.append(x)
    h = ModHom(g.src, mono.src, blocks)
    if h @ mono != g:
        raise ValueError("map does not factor through the mono")
    return h


def factor_through_epi(g, epi):
    """Return ``h`` with ``epi @ h == g`` (``g`` must kill ``ker epi``)."""
    field = g.src.field
    blocks = []
    for v in range(len(g.blocks)):
        e = epi.blocks[v]
        b = g.blocks[v]
        if e.ncols == 0:
            blocks.append(Matrix.zeros(field, 0, b.ncols))
            continue
        blocks.append(_right_inverse(e) @ b)
    h = ModHom(epi.tgt, g.tgt, blocks)
    if epi @ h != g:
        raise ValueError("map does not factor through the epi")
    return h


def _right_inverse(e):
    """Matrix ``s`` with ``s @ e == I`` for a surjective row map ``e``."""
    from .exactla import solve_left

    field = e.field
    x, _ = solve_left(e, Matrix.identity(field, e.ncols))
    return x


def generated_submodule(M, gens_per_vertex):
    """Smallest submodule containing the given rows (``gens_per_vertex[v]``)."""
    field = M.field
    alg = M.alg
    sub = []
    for v in range(alg.nverts):
        g = gens_per_vertex[v]
        sub.append(g.row_space() if g is not None and g.nrows else Matrix.zeros(field, 0, M.dims[v]))
    changed = True
    while changed:
        changed = False
        for gi, (_, s, t) in enumerate(alg.gens):
            if sub[s].nrows == 0 or M.dims[t] == 0:
                continue
            img = sub[s] @ M.mats[gi]
            new = vstack([sub[t], img]).row_space() if sub[t].nrows else img.row_space()
            if new.nrows > sub[t].nrows:
                sub[t] = new
                changed = True
    return sub


def radical(M):
    """``(rad M, inclusion)`` with ``rad M = M J``."""
    alg = M.alg
    gens = [None] * alg.nverts
    for g in alg.radical_gens:
        _, s, t = alg.gens[g]
        if M.dims[s] and M.dims[t]:
            img = M.mats[g]
            gens[t] = img if gens[t] is None else vstack([gens[t], img])
    return submodule(M, generated_submodule(M, gens))


def top(M):
    """``(M / rad M, projection)``."""
    R, inc = radical(M)
    return cokernel(inc)


def socle(M):
    """``(soc M, inclusion)``: the largest submodule annihilated by the radical."""
    field = M.field
    alg = M.alg
    sub = []
    for v in range(alg.nverts):
        maps = [M.mats[g] for g in sorted(alg.radical_gens) if alg.gens[g][1] == v and M.dims[alg.gens[g][2]]]
        if M.dims[v] == 0:
            sub.append(Matrix.zeros(field, 0, 0))
        elif not maps:
            sub.append(Matrix.identity(field, M.dims[v]))
        else:
            k = hstack(maps).left_kernel()
            sub.append(k.row_space() if k.nrows else Matrix.zeros(field, 0, M.dims[v]))
    # shrink to the largest submodule inside
    changed = True
    while changed:
        changed = False
        for g, (_, s, t) in enumerate(alg.gens):
            if sub[s].nrows == 0 or M.dims[t] == 0:
                continue
            img = sub[s] @ M.mats[g]
            ok = vstack([sub[t], img]).rank() == sub[t].nrows if sub[t].nrows else img.is_zero()
            if not ok:
                # keep the part of sub[s] mapping into sub[t]
                if sub[t].nrows:
                    q, _ = coker(sub[t])
                    k = (img @ q).left_kernel()
                else:
                    k = img.left_kernel()
                sub[s] = (k @ sub[s]).row_space() if k.nrows else Matrix.zeros(field, 0, M.dims[s])
                changed = True
    return submodule(M, sub)


# -- projectives, injectives, duality -------------------------------------------

def projective(alg, v):
    """``P(v) = e_v A`` with basis the basis elements starting at ``v``."""
    field = alg.field
    idx = [[k for k, (s, t, _) in enumerate(alg.basis) if s == v and t == w] for w in range(alg.nverts)]
    pos = {}
    for w in range(alg.nverts):
        for i, k in enumerate(idx[w]):
            pos[k] = i
    mats = []
    for g, (_, s, t) in enumerate(alg.gens):
        gb = alg.gen_basis[g]
        rows = []
        for k in idx[s]:
            r = [field.zero] * len(idx[t])
            for kk, c in alg.mult[k][gb].items():
                r[pos[kk]] += c
            rows.append(r)
        mats.append(Matrix(field, rows, len(idx[t])))
    P = Module(alg, [len(i) for i in idx], mats, name="P(%s)" % alg.vertex_labels[v], check=False)
    P.top_vertex = v
    return P


def dual(M):
    """Linear dual ``D M`` as a module over the opposite algebra."""
    op = M.alg.opposite()
    return Module(op, M.dims, [m.T for m in M.mats], name=("D" + M.name) if M.name else None, check=False)


def dual_hom(f):
    """``D f: D N -> D M`` for ``f: M -> N``."""
    return ModHom(dual(f.tgt), dual(f.src), [b.T for b in f.blocks])


def injective(alg, v):
    """``I(v) = D(A e_v)``, the dual of the left projective at ``v``."""
    I = dual(projective(alg.opposite(), v))
    I.name = "I(%s)" % alg.vertex_labels[v]
    return I


def simple(alg, v):
    dims = [1 if w == v else 0 for w in range(alg.nverts)]
    mats = [Matrix.zeros(alg.field, dims[s], dims[t]) for _, s, t in alg.gens]
    return Module(alg, dims, mats, name="S(%s)" % alg.vertex_labels[v], check=False)


def regular_module(alg):
    S, _, _ = direct_sum([projective(alg, v) for v in range(alg.nverts)])
    return S


# -- decomposition -----------------------------------------------------------------

def _trace_gram(basis):
    field = basis[0].src.field
    n = len(basis)
    G = []
    for i in range(n):
        row = []
        for j in range(n):
            t = field.zero
            for a, b in zip(basis[i].blocks, basis[j].blocks):
                ar, br = a.rows, b.rows
                for p in range(a.nrows):
                    rp = ar[p]
                    for q in range(a.ncols):
                        if rp[q]:
                            t += rp[q] * br[q][p]
            row.append(t)
        G.append(row)
    return Matrix(field, G, n)


def radical_rank(basis):
    """``dim E / rad E`` for ``E`` spanned by the given endomorphisms (char 0 trace form)."""
    return _trace_gram(basis).rank()


def _poly_of(f, coeffs):
    """Evaluate ``sum coeffs[i] f^i`` (coefficients low-to-high)."""
    M = f.src
    res = M.zero_to(M)
    power = M.identity()
    for c in coeffs:
        if c:
            res = res + power.scale(c)
        power = power @ f
    return res


def minimal_polynomial(f):
    """Minimal polynomial of an endomorphism as a low-to-high coefficient list."""
    from .qalg import Coordinates

    M = f.src
    field = M.field
    powers = [M.identity()]
    rows = [powers[0].flat()]
    size = flat_size(M, M)
    while True:
        nxt = powers[-1] @ f
        try:
            co = Coordinates(rows, size, field).coords(nxt.flat())
        except ValueError:
            co = None
        if co is not None:
            return [-c for c in co] + [field.one]
        powers.append(nxt)
        rows.append(nxt.flat())


def _factor(coeffs):
    x = sympy.Symbol("x")
    poly = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * x ** i for i, c in enumerate(coeffs))
    _, facs = sympy.factor_list(sympy.Poly(poly, x, domain="QQ"))
    out = []
    for p, m in facs:
        cs = sympy.Poly(p, x).all_coeffs()[::-1]
        out.append(([sympy.Rational(c) for c in cs], m))
    return out


def _graded_kernel(f):
    field = f.src.field
    sub = []
    for b in f.blocks:
        if b.nrows == 0:
            sub.append(Matrix.zeros(field, 0, 0))
        elif b.ncols == 0:
            sub.append(Matrix.identity(field, b.nrows))
        else:
            k = b.left_kernel()
            sub.append(k.row_space() if k.nrows else Matrix.zeros(field, 0, b.nrows))
    return sub


class Summand:
    """A direct summand ``N`` of ``M`` with ``inc @ proj == id_N``."""

    def __init__(self, module, inc, proj):
        self.module, self.inc, self.proj = module, inc, proj


def _fitting_split(M, f):
    """Split ``M`` along the primary decomposition of ``f``; ``None`` if primary."""
    field = M.field
    facs = _factor(minimal_polynomial(f))
    if len(facs) < 2:
        return None
    subs = []
    for p, m in facs:
        coeffs = [field(int(c.p)) / field(int(c.q)) for c in p]
        pf = _poly_of(f, coeffs)
        pm = M.identity()
        for _ in range(m):
            pm = pm @ pf
        subs.append(_graded_kernel(pm))
    # change of basis per vertex
    parts = []
    for sub in subs:
        parts.append(submodule(M, sub))
    projs_blocks = [[] for _ in subs]
    for v in range(M.alg.nverts):
        if M.dims[v] == 0:
            for i in range(len(subs)):
                projs_blocks[i].append(Matrix.zeros(field, 0, subs[i][v].nrows))
            continue
        stacked = vstack([s[v] for s in subs if s[v].nrows])
        inv = stacked.inverse()
        c = 0
        for i, s in enumerate(subs):
            d = s[v].nrows
            projs_blocks[i].append(inv.submatrix(cols=range(c, c + d)))
            c += d
    out = []
    for (K, inc), pb in zip(parts, projs_blocks):
        out.append(Summand(K, inc, ModHom(M, K, pb)))
    return out


def _candidates(E, rng):
    n = len(E)
    for b in E:
        yield b
    for i in range(n):
        for j in range(i + 1, n):
            yield E[i] + E[j]
    for _ in range(40):
        f = E[0].scale(0)
        for b in E:
            c = rng.randint(-3, 3)
            if c:
                f = f + b.scale(c)
        yield f


def split_summands(M, seed=0):
    """Krull-Schmidt: indecomposable summands of ``M`` with inclusion/projection maps."""
    if M.field.char != 0:
        raise UnsupportedCharacteristic("decompose needs characteristic 0 (trace-form radical)")
    if M.dim == 0:
        return []
    E = hom_basis(M, M)
    if len(E) == 1 or radical_rank(E) == 1:
        return [Summand(M, M.identity(), M.identity())]
    rng = random.Random(seed * 7919 + M.dim)
    tried = 0
    for f in _candidates(E, rng):
        tried += 1
        parts = _fitting_split(M, f)
        if parts is None:
            continue
        out = []
        for s in parts:
            for t in split_summands(s.module, seed):
                out.append(Summand(t.module, t.inc @ s.inc, s.proj @ t.proj))
        return out
    # no splitting element: accept only if E / rad E is visibly a field
    r = radical_rank(E)
    f = next(_candidates(E[1:] + E[:1], rng))
    facs = _factor(minimal_polynomial(f))
    if len(facs) == 1 and len(facs[0][0]) - 1 == r:
        return [Summand(M, M.identity(), M.identity())]
    raise DecompositionError("could not split a module with dim End/rad = %d" % r)


def is_indecomposable(M):
    return M.dim > 0 and len(split_summands(M)) == 1


def _indec_iso(A, B):
    """Isomorphism witness between two indecomposables or ``None``."""
    if A.dims != B.dims:
        return None
    H = hom_basis(A, B)
    if not H:
        return None
    for h in H:
        if h.is_iso():
            return h
    K = hom_basis(B, A)
    for h in H:
        for k in K:
            if (h @ k).is_iso():
                return h
    return None


def group_summands(summands):
    """Group indecomposable summands into isomorphism classes."""
    classes = []  # list of (representative, [summands], [iso rep->summand])
    for s in summands:
        for cl in classes:
            w = _indec_iso(cl[0].module, s.module)
            if w is not None:
                cl[1].append(s)
                cl[2].append(w)
                break
        else:
            classes.append((s, [s], [s.module.identity()]))
    return classes


def decompose(M):
    """List of ``(indecomposable, multiplicity)`` with ``M`` isomorphic to the direct sum."""
    return [(cl[0].module, len(cl[1])) for cl in group_summands(split_summands(M))]


def _random_iso(M, N, basis, tries=4, seed=1):
    rng = random.Random(seed)
    for _ in range(tries):
        f = M.zero_to(N)
        for b in basis:
            f = f + b.scale(rng.randint(-50, 50))
        if f.is_iso():
            return f
    return None


def is_isomorphic(M, N):
    """``(True, witness)`` or ``(False, None)``."""
    if M.alg is not N.alg:
        raise ValueError("modules over different algebras")
    if M.dims != N.dims:
        return False, None
    if M.dim == 0:
        return True, M.zero_to(N)
    H = hom_basis(M, N)
    if not H:
        return False, None
    w = _random_iso(M, N, H)
    if w is not None:
        return True, w
    if M.field.char != 0:
        raise UnsupportedCharacteristic("isomorphism test needs characteristic 0")
    cm = group_summands(split_summands(M))
    cn = group_summands(split_summands(N))
    if len(cm) != len(cn):
        return False, None
    used = set()
    wit = M.zero_to(N)
    for a in cm:
        for j, b in enumerate(cn):
            if j in used or len(a[1]) != len(b[1]):
                continue
            iso = _indec_iso(a[0].module, b[0].module)
            if iso is None:
                continue
            used.add(j)
            # match summands of the class pairwise through the representatives
            for sa, wa, sb, wb in zip(a[1], a[2], b[1], b[2]):
                # sa ~ rep_a via wa: rep_a -> sa;  rep_b -> sb via wb
                piece = sa.proj @ wa.inverse() @ iso @ wb @ sb.inc
                wit = wit + piece
            break
        else:
            return False, None
    if not wit.is_iso():
        raise DecompositionError("assembled witness is not invertible")
    return True, wit


def in_add(M, gens):
    """Is every indecomposable summand of ``M`` isomorphic to a summand of some module in ``gens``?"""
    pool = []
    for G in gens:
        pool.extend(s.module for s in split_summands(G))
    for s in split_summands(M):
        if not any(_indec_iso(s.module, P) is not None for P in pool):
            return False
    return True
