"""Quivers with relations and finite-dimensional algebras.

An :class:`Algebra` is stored the way a bounded quiver algebra looks: a
complete set of primitive orthogonal idempotents (the vertices), a list of
generators ``g = e_u g e_v`` (the arrows), and a basis made of words in the
generators.  Every basis element is a single word, so a module only needs
one matrix per generator and the action of any basis element is a product
of those.  Paths compose left to right: for ``p: u -> v`` and ``q: v -> w``
the product ``p q`` is defined.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .exactla import QQ, Matrix, _sparse_echelon


class NotFiniteDimensional(ValueError):
    """Raised when nonzero paths survive beyond the length cap."""


class NotAdmissible(ValueError):
    pass


@dataclass(frozen=True)
class Quiver:
    """Vertices ``0..n-1`` and named arrows ``(name, source, target)``."""

    nverts: int
    arrows: tuple

    def __post_init__(self):
        if self.nverts < 1:
            raise ValueError("a quiver needs at least one vertex")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow names must be unique")
        for name, s, t in self.arrows:
            if not (0 <= s < self.nverts and 0 <= t < self.nverts):
                raise ValueError("arrow %s has an endpoint out of range" % name)

    def arrow_index(self, name):
        for i, a in enumerate(self.arrows):
            if a[0] == name:
                return i
        raise KeyError(name)

    def opposite(self):
        return Quiver(self.nverts, tuple((n, t, s) for n, s, t in self.arrows))

    def paths(self, length):
        """All paths of the given length as ``(src, tgt, arrow-tuple)``, in lex order."""
        if length == 0:
            return [(v, v, ()) for v in range(self.nverts)]
        out = []
        for p in self.paths(length - 1):
            for i, (_, s, t) in enumerate(self.arrows):
                if s == p[1]:
                    out.append((p[0], t, p[2] + (i,)))
        out.sort(key=lambda p: p[2] if p[2] else (p[0],))
        return out


@dataclass(frozen=True)
class Relation:
    """A linear combination ``sum c_i p_i`` of parallel paths (arrow-index tuples)."""

    terms: tuple  # of (coefficient, path)

    def lengths(self):
        return [len(p) for _, p in self.terms]


def rad_relations(quiver, power=2, field=QQ):
    """Every path of length ``power`` as a monomial relation."""
    return [Relation(((field.one, p[2]),)) for p in quiver.paths(power)]


def _path_endpoints(quiver, path):
    s = quiver.arrows[path[0]][1]
    t = s
    for a in path:
        if quiver.arrows[a][1] != t:
            return None
        t = quiver.arrows[a][2]
    return s, t


def validate_admissible(quiver, relations, cap=64, field=QQ):
    """Check relations lie in the square of the arrow ideal and bound path length.

    Returns ``(True, None)`` or ``(False, report)``.
    """
    for k, rel in enumerate(relations):
        ends = set()
        for c, p in rel.terms:
            if len(p) < 2:
                return False, "relation %d contains a path of length %d" % (k, len(p))
            e = _path_endpoints(quiver, p)
            if e is None:
                return False, "relation %d contains a non-composable word" % k
            ends.add(e)
        if len(ends) > 1:
            return False, "relation %d mixes non-parallel paths" % k
    try:
        _truncation_length(quiver, relations, cap, field)
    except NotFiniteDimensional as exc:
        return False, str(exc)
    return True, None


def _ideal_rows(quiver, relations, maxlen, index, field):
    """Rows spanning ``I`` modulo paths longer than ``maxlen`` (sparse, on ``index``)."""
    rows = []
    by_len = {L: quiver.paths(L) for L in range(maxlen + 1)}
    for rel in relations:
        ends = _path_endpoints(quiver, rel.terms[0][1])
        src, tgt = ends
        lmin = min(rel.lengths())
        for lp in range(maxlen - lmin + 1):
            lefts = [p for p in by_len[lp] if p[1] == src]
            for lq in range(maxlen - lmin - lp + 1):
                rights = [q for q in by_len[lq] if q[0] == tgt]
                for p, q in iproduct(lefts, rights):
                    row = {}
                    for c, r in rel.terms:
                        w = p[2] + r + q[2]
                        if len(w) <= maxlen and c:
                            j = index[w if w else ("e", src)]
                            row[j] = row.get(j, field.zero) + c
                    row = {j: v for j, v in row.items() if v}
                    if row:
                        rows.append(row)
    return rows


def _path_index(quiver, maxlen):
    """Paths up to ``maxlen`` in DESCENDING canonical order (largest first).

    Elimination then pivots on the largest paths, leaving the smallest ones
    as normal forms.
    """
    allp = []
    for L in range(maxlen + 1):
        allp.extend(quiver.paths(L))
    allp.reverse()
    keys = [p[2] if p[2] else ("e", p[0]) for p in allp]
    return allp, {k: i for i, k in enumerate(keys)}


def _truncation_length(quiver, relations, cap, field):
    """Smallest N with every path of length N inside I + J^(N+1)."""
    for N in range(1, cap + 1):
        longest = quiver.paths(N)
        if not longest:
            return N
        allp, index = _path_index(quiver, N)
        rows = _ideal_rows(quiver, relations, N, index, field)
        _, piv = _sparse_echelon(rows, field)
        pset = set(piv)
        if all(index[p[2]] in pset for p in longest):
            return N
    # witness: a surviving path of length cap
    witness = quiver.paths(cap)[:1]
    w = witness[0][2] if witness else ()
    names = " ".join(quiver.arrows[a][0] for a in w)
    raise NotFiniteDimensional("not finite-dimensional within cap %d; surviving path: %s" % (cap, names))


class Algebra:
    """Finite-dimensional basic-or-not algebra presented by generators and words.

    Attributes
    ----------
    nverts: number of primitive idempotents.
    gens: list of ``(name, src, tgt)``.
    basis: list of ``(src, tgt, word)`` where ``word`` is a tuple of generator indices;
        the empty word at ``v`` is the idempotent ``e_v``.
    mult: ``mult[i][j]`` is a sparse dict ``{k: c}`` with ``b_i b_j = sum c b_k``.
    radical_gens: generators lying in the Jacobson radical (all of them for basic algebras).
    vertex_class: representative vertex of each isomorphism class of indecomposable projectives.
    """

    def __init__(self, field, nverts, gens, basis, mult, labels=None, radical_gens=None,
                 vertex_class=None, vertex_labels=None, check=True):
        self.field = field
        self.nverts = nverts
        self.gens = list(gens)
        self.basis = list(basis)
        self.mult = mult
        self.dim = len(self.basis)
        self.labels = labels or [self._word_label(b) for b in self.basis]
        self.radical_gens = frozenset(range(len(self.gens)) if radical_gens is None else radical_gens)
        self.vertex_class = list(range(nverts)) if vertex_class is None else list(vertex_class)
        self.vertex_labels = vertex_labels or [str(v + 1) for v in range(nverts)]
        self.idem = [None] * nverts
        self.gen_basis = [None] * len(self.gens)
        self.word_index = {}
        self._op = None
        for k, (s, t, w) in enumerate(self.basis):
            self.word_index[(s, w)] = k
            if not w:
                self.idem[s] = k
            elif len(w) == 1:
                self.gen_basis[w[0]] = k
        if any(i is None for i in self.idem) or any(g is None for g in self.gen_basis):
            raise ValueError("basis must contain every idempotent and every generator")
        if check:
            self.check_axioms()

    def _word_label(self, b):
        s, t, w = b
        if not w:
            return "e%d" % (s + 1)
        return "*".join(self.gens[g][0] for g in w)

    # -- arithmetic ------------------------------------------------------
    def vector(self, k):
        v = [self.field.zero] * self.dim
        v[k] = self.field.one
        return v

    def unit(self):
        v = [self.field.zero] * self.dim
        for k in self.idem:
            v[k] = self.field.one
        return v

    def multiply(self, x, y):
        """Bilinear product of coefficient vectors."""
        out = [self.field.zero] * self.dim
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.mult[i]
            for j, b in ys:
                for k, c in row[j].items():
                    out[k] += a * b * c
        return out

    def is_basic(self):
        return self.vertex_class == list(range(self.nverts))

    def check_axioms(self):
        """Assert associativity, unit laws and orthogonality of the idempotents."""
        n = self.dim
        unit = self.unit()
        for k in range(n):
            e = self.vector(k)
            if self.multiply(unit, e) != e or self.multiply(e, unit) != e:
                raise ValueError("unit law fails on basis element %s" % self.labels[k])
        for u in range(self.nverts):
            for v in range(self.nverts):
                p = self.mult[self.idem[u]][self.idem[v]]
                expect = {self.idem[u]: self.field.one} if u == v else {}
                if p != expect:
                    raise ValueError("idempotents %d, %d are not orthogonal" % (u, v))
        for i in range(n):
            for j in range(n):
                ij = self.mult[i][j]
                if not ij and self.basis[i][1] != self.basis[j][0]:
                    continue
                for k in range(n):
                    left = {}
                    for m, c in ij.items():
                        for r, d in self.mult[m][k].items():
                            left[r] = left.get(r, self.field.zero) + c * d
                    right = {}
                    for m, c in self.mult[j][k].items():
                        for r, d in self.mult[i][m].items():
                            right[r] = right.get(r, self.field.zero) + c * d
                    left = {r: c for r, c in left.items() if c}
                    right = {r: c for r, c in right.items() if c}
                    if left != right:
                        raise ValueError("associativity fails on (%s, %s, %s)" % (
                            self.labels[i], self.labels[j], self.labels[k]))

    def opposite(self):
        """Same basis with the multiplication reversed.

        The result is cached, and the opposite of the opposite is this very
        object, so modules over ``A`` and over ``A^op^op`` are interchangeable.
        """
        if getattr(self, "_op", None) is not None:
            return self._op
        gens = [(n, t, s) for n, s, t in self.gens]
        basis = [(t, s, tuple(reversed(w))) for s, t, w in self.basis]
        mult = [[self.mult[j][i] for j in range(self.dim)] for i in range(self.dim)]
        op = Algebra(self.field, self.nverts, gens, basis, mult, labels=list(self.labels),
                     radical_gens=self.radical_gens, vertex_class=self.vertex_class,
                     vertex_labels=self.vertex_labels, check=False)
        op._op = self
        self._op = op
        return op

    def same_structure(self, other):
        return (self.dim == other.dim and self.nverts == other.nverts and self.gens == other.gens
                and self.basis == other.basis and self.mult == other.mult)

    def e_block(self, u, v):
        """Indices of basis elements in ``e_u A e_v``."""
        return [k for k, (s, t, _) in enumerate(self.basis) if s == u and t == v]

    def __repr__(self):
        return "Algebra(dim=%d, vertices=%d, generators=%d)" % (self.dim, self.nverts, len(self.gens))


def path_basis(quiver, relations=(), cap=64, field=QQ):
    """Build ``kQ/I`` with the canonical basis of normal paths.

    Basis order: idempotents by vertex, then paths by (length, lexicographic
    arrow order).  Raises :class:`NotFiniteDimensional` if nonzero paths
    survive beyond ``cap``.
    """
    ok, report = validate_admissible(quiver, relations, cap, field) if relations else (True, None)
    if not ok:
        if report.startswith("not finite"):
            raise NotFiniteDimensional(report)
        raise NotAdmissible(report)
    N = _truncation_length(quiver, relations, cap, field)
    # normal forms live among the paths of length < N
    maxlen = N
    allp, index = _path_index(quiver, maxlen)
    rows = _ideal_rows(quiver, relations, maxlen, index, field)
    # paths of length N are zero: add them as relations
    for p in quiver.paths(N):
        rows.append({index[p[2]]: field.one})
    red, piv = _sparse_echelon(rows, field)
    pset = set(piv)
    keys = [p[2] if p[2] else ("e", p[0]) for p in allp]
    normal = [i for i in range(len(allp)) if i not in pset]
    # canonical order is ascending, allp is descending
    normal.sort(reverse=True)
    basis = [allp[i] for i in normal]
    bpos = {i: k for k, i in enumerate(normal)}
    reduce_table = {}
    for i in normal:
        reduce_table[keys[i]] = {bpos[i]: field.one}
    for pc, row in zip(piv, red):
        reduce_table[keys[pc]] = {bpos[j]: -c for j, c in row.items() if j != pc}

    def reduce(word, src):
        if len(word) >= N:
            return {}
        return reduce_table[word if word else ("e", src)]

    bas = [(s, t, w) for s, t, w in basis]
    n = len(bas)
    mult = [[{} for _ in range(n)] for _ in range(n)]
    for i, (s1, t1, w1) in enumerate(bas):
        for j, (s2, t2, w2) in enumerate(bas):
            if t1 != s2:
                continue
            mult[i][j] = dict(reduce(w1 + w2, s1))
    labels = ["e%d" % (s + 1) if not w else "*".join(quiver.arrows[a][0] for a in w) for s, t, w in bas]
    gens = list(quiver.arrows)
    return Algebra(field, quiver.nverts, gens, bas, mult, labels=labels)


class Coordinates:
    """Express vectors in terms of a fixed list of independent rows."""

    def __init__(self, rows, ncols, field):
        from .exactla import hstack

        self.field = field
        self.n = len(rows)
        m = Matrix.from_row_dicts(field, rows, ncols) if rows else Matrix.zeros(field, 0, ncols)
        aug = hstack([m, Matrix.identity(field, self.n)]) if self.n else m
        red, piv = aug.rref()
        piv = [p for p in piv if p < ncols]
        if len(piv) != self.n:
            raise ValueError("rows are not independent")
        self.piv = piv
        self.echelon = [{j: v for j, v in enumerate(red.rows[i][:ncols]) if v} for i in range(self.n)]
        self.transform = [red.rows[i][ncols:] for i in range(self.n)]

    def coords(self, vec):
        """``vec`` as a dict; returns the coefficient list or ``None`` if outside the span."""
        z = self.field.zero
        vec = dict(vec)
        ce = []
        for p, row in zip(self.piv, self.echelon):
            c = vec.get(p, z)
            ce.append(c)
            if c:
                for j, v in row.items():
                    nv = vec.get(j, z) - c * v
                    if nv:
                        vec[j] = nv
                    else:
                        vec.pop(j, None)
        if vec:
            return None
        out = [z] * self.n
        for c, t in zip(ce, self.transform):
            if c:
                for k, v in enumerate(t):
                    if v:
                        out[k] += c * v
        return out


def algebra_from_matrices(field, idempotents, generators, names=None, radical=None,
                          vertex_class=None, vertex_labels=None):
    """Algebra generated inside a matrix algebra.

    ``idempotents`` are matrices of a complete set of primitive orthogonal
    idempotents; ``generators`` are ``(matrix, src, tgt)`` with
    ``g = e_src g e_tgt``.  The basis is chosen greedily among words in the
    generators, ordered by (length, lexicographic generator order).
    Returns ``(algebra, basis_matrices)``.
    """
    nv = len(idempotents)

    def flat(m):
        d = {}
        nc = m.ncols
        for i, r in enumerate(m.rows):
            for j, v in enumerate(r):
                if v:
                    d[i * nc + j] = v
        return d

    size = idempotents[0].nrows * idempotents[0].ncols if idempotents else 0
    chosen = []  # (src, tgt, word, matrix)
    rows = []

    def independent(m):
        trial = rows + [flat(m)]
        return len(_sparse_echelon(trial, field)[1]) == len(trial)

    for v, e in enumerate(idempotents):
        chosen.append((v, v, (), e))
        rows.append(flat(e))
    frontier = []
    for g, (m, s, t) in enumerate(generators):
        if m.is_zero() or not independent(m):
            raise ValueError("generator %d is zero or redundant" % g)
        chosen.append((s, t, (g,), m))
        rows.append(flat(m))
        frontier.append(len(chosen) - 1)
    while frontier:
        nxt = []
        for k in frontier:
            s, t, w, m = chosen[k]
            for g, (gm, gs, gt) in enumerate(generators):
                if gs != t:
                    continue
                p = m @ gm
                if p.is_zero():
                    continue
                if independent(p):
                    chosen.append((s, gt, w + (g,), p))
                    rows.append(flat(p))
                    nxt.append(len(chosen) - 1)
        frontier = nxt
    # canonical ordering: idempotents, then (length, word)
    order = sorted(range(len(chosen)), key=lambda k: (len(chosen[k][2]), chosen[k][2], chosen[k][0]))
    chosen = [chosen[k] for k in order]
    rows = [flat(c[3]) for c in chosen]
    coordinates = Coordinates(rows, size, field)
    n = len(chosen)
    mult = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if chosen[i][1] != chosen[j][0]:
                continue
            p = chosen[i][3] @ chosen[j][3]
            if p.is_zero():
                continue
            c = coordinates.coords(flat(p))
            if c is None:
                raise ValueError("generators do not close up into an algebra")
            mult[i][j] = {k: x for k, x in enumerate(c) if x}
    gens = [(names[g] if names else "s%d" % (g + 1), s, t) for g, (_, s, t) in enumerate(generators)]
    alg = Algebra(field, nv, gens, [(s, t, w) for s, t, w, _ in chosen], mult,
                  radical_gens=radical, vertex_class=vertex_class, vertex_labels=vertex_labels)
    return alg, [c[3] for c in chosen]
