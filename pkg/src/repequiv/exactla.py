"""Exact dense linear algebra over the rationals and prime fields.

Everything downstream (hom spaces, Ext, tensor products) reduces to the
routines here.  Vectors are rows and a matrix ``F`` of shape ``m x n``
describes the linear map ``x -> x @ F`` from ``k^m`` to ``k^n``.  With
that convention "first f, then g" is the plain product ``f @ g``.
"""

from __future__ import annotations

import re
from fractions import Fraction

import gmpy2
from gmpy2 import mpq


def _is_prime(p):
    return p >= 2 and gmpy2.is_prime(p)


class Fp:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            return other.v
        return int(other) % self.p

    def __add__(self, other):
        return Fp(self.v + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Fp(self.v - self._coerce(other), self.p)

    def __rsub__(self, other):
        return Fp(self._coerce(other) - self.v, self.p)

    def __mul__(self, other):
        return Fp(self.v * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __truediv__(self, other):
        d = self._coerce(other)
        if d == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Fp(self.v * pow(d, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return Fp(self._coerce(other), self.p) / self

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.v == other.v and self.p == other.p
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return "%d %% %d" % (self.v, self.p)


class Field:
    """A prime field (``char = p``) or the rationals (``char = 0``)."""

    _cache: dict = {}

    def __new__(cls, char=0):
        if char in cls._cache:
            return cls._cache[char]
        if char != 0 and not (_is_prime(char) and char <= 2**31):
            raise ValueError("characteristic must be 0 or a prime <= 2^31, got %r" % char)
        obj = super().__new__(cls)
        obj.char = char
        obj.zero = obj(0)
        obj.one = obj(1)
        cls._cache[char] = obj
        return obj

    def __call__(self, x):
        """Convert an int, Fraction, mpq, ``Fp`` or ``"p/q"`` string."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.char == 0:
            if isinstance(x, Fp):
                raise TypeError("cannot coerce a residue class into Q")
            if isinstance(x, Fraction):
                return mpq(x.numerator, x.denominator)
            return mpq(x)
        if isinstance(x, Fp):
            return Fp(x.v, self.char)
        if isinstance(x, Fraction):
            return Fp(x.numerator, self.char) / Fp(x.denominator, self.char)
        if isinstance(x, type(mpq(0))):
            return Fp(int(x.numerator), self.char) / Fp(int(x.denominator), self.char)
        return Fp(int(x), self.char)

    def __repr__(self):
        return "Field(%d)" % self.char

    def __reduce__(self):
        return (Field, (self.char,))


QQ = Field(0)


def _fmt(x):
    if isinstance(x, Fp):
        return str(x.v)
    if x.denominator == 1:
        return str(x.numerator)
    return "%s/%s" % (x.numerator, x.denominator)


class Matrix:
    """Immutable dense matrix with exact entries.

    ``rows`` is a list of lists; nothing in the library mutates it after
    construction.
    """

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, rows, ncols=None):
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        self.ncols = ncols

    # -- construction -------------------------------------------------
    @classmethod
    def from_list(cls, field, data, ncols=None):
        rows = [[field(x) for x in r] for r in data]
        return cls(field, rows, ncols)

    @classmethod
    def zeros(cls, field, m, n):
        z = field.zero
        return cls(field, [[z] * n for _ in range(m)], n)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_sparse(cls, field, m, n, entries):
        """Build from ``{(i, j): value}``."""
        z = field.zero
        rows = [[z] * n for _ in range(m)]
        for (i, j), v in entries.items():
            rows[i][j] = v
        return cls(field, rows, n)

    @classmethod
    def from_row_dicts(cls, field, dicts, n):
        z = field.zero
        rows = []
        for d in dicts:
            r = [z] * n
            for j, v in d.items():
                r[j] = v
            rows.append(r)
        return cls(field, rows, n)

    # -- basic protocol -----------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        return "Matrix(%s)" % self.to_literal()

    def to_literal(self):
        """Render in the fixture literal syntax ``[[a,b],[c,d]]``."""
        body = "[" + ",".join("[" + ",".join(_fmt(x) for x in r) + "]" for r in self.rows) + "]"
        if self.field.char:
            body += " %% %d" % self.field.char
        return body

    def is_zero(self):
        return not any(any(r) for r in self.rows)

    def row(self, i):
        return Matrix(self.field, [list(self.rows[i])], self.ncols)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        self._same_shape(other)
        return Matrix(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other):
        self._same_shape(other)
        return Matrix(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self):
        return Matrix(self.field, [[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, c):
        c = self.field(c) if not isinstance(c, (Fp, type(mpq(0)))) else c
        return Matrix(self.field, [[c * a for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        z = self.field.zero
        n = other.ncols
        orows = other.rows
        # sparse form of the right factor: list of (col, value) per row
        osp = [[(j, v) for j, v in enumerate(r) if v] for r in orows]
        out = []
        for r in self.rows:
            acc = {}
            for k, a in enumerate(r):
                if a:
                    for j, v in osp[k]:
                        if j in acc:
                            acc[j] += a * v
                        else:
                            acc[j] = a * v
            row = [z] * n
            for j, v in acc.items():
                row[j] = v
            out.append(row)
        return Matrix(self.field, out, n)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch %s vs %s" % (self.shape, other.shape))

    @property
    def T(self):
        if self.nrows == 0:
            return Matrix.zeros(self.field, self.ncols, 0)
        return Matrix(self.field, [list(c) for c in zip(*self.rows)], self.nrows)

    def submatrix(self, rows=None, cols=None):
        rs = range(self.nrows) if rows is None else rows
        if cols is None:
            return Matrix(self.field, [list(self.rows[i]) for i in rs], self.ncols)
        cols = list(cols)
        return Matrix(self.field, [[self.rows[i][j] for j in cols] for i in rs], len(cols))

    # -- elimination ---------------------------------------------------
    def rref(self):
        """Reduced row-echelon form and the list of pivot columns."""
        rows = [list(r) for r in self.rows]
        pivots = []
        rank = 0
        for c in range(self.ncols):
            p = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
            if p is None:
                continue
            rows[rank], rows[p] = rows[p], rows[rank]
            piv = rows[rank]
            inv = 1 / piv[c] if self.field.char == 0 else self.field.one / piv[c]
            if piv[c] != self.field.one:
                piv = [x * inv for x in piv]
                rows[rank] = piv
            nz = [j for j in range(c, self.ncols) if piv[j]]
            for i in range(len(rows)):
                if i != rank:
                    f = rows[i][c]
                    if f:
                        ri = rows[i]
                        for j in nz:
                            ri[j] = ri[j] - f * piv[j]
            pivots.append(c)
            rank += 1
            if rank == len(rows):
                break
        return Matrix(self.field, rows, self.ncols), pivots

    def rank(self):
        return len(_sparse_echelon(self._row_dicts(), self.field)[1])

    def _row_dicts(self):
        return [{j: v for j, v in enumerate(r) if v} for r in self.rows]

    def left_kernel(self):
        """Rows spanning ``{x : x @ self = 0}``."""
        return self.T.right_kernel().T

    def right_kernel(self):
        """Columns spanning ``{x : self @ x = 0}`` (returned as a matrix whose columns are the basis)."""
        basis = nullspace(self._row_dicts(), self.ncols, self.field)
        return Matrix.from_row_dicts(self.field, basis, self.ncols).T if basis else Matrix.zeros(self.field, self.ncols, 0)

    def row_space(self):
        """Rows of the reduced echelon form (a basis of the row space)."""
        red, piv = self.rref()
        return red.submatrix(rows=range(len(piv)))

    def inverse(self):
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        aug = hstack([self, Matrix.identity(self.field, n)])
        red, piv = aug.rref()
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return red.submatrix(cols=range(n, 2 * n))

    def is_invertible(self):
        return self.nrows == self.ncols and self.rank() == self.nrows


# -- free functions ------------------------------------------------------

def hstack(ms):
    ms = list(ms)
    field = ms[0].field
    m = ms[0].nrows
    if any(x.nrows != m for x in ms):
        raise ValueError("hstack: row counts differ")
    rows = [sum((x.rows[i] for x in ms), []) for i in range(m)]
    return Matrix(field, rows, sum(x.ncols for x in ms))


def vstack(ms, field=None, ncols=None):
    ms = list(ms)
    if not ms:
        return Matrix(field, [], ncols)
    n = ms[0].ncols
    if any(x.ncols != n for x in ms):
        raise ValueError("vstack: column counts differ")
    rows = []
    for x in ms:
        rows.extend(list(r) for r in x.rows)
    return Matrix(ms[0].field, rows, n)


def block_diag(ms, field=None):
    ms = list(ms)
    if not ms:
        return Matrix(field, [], 0)
    field = ms[0].field
    z = field.zero
    n = sum(x.ncols for x in ms)
    rows = []
    off = 0
    for x in ms:
        for r in x.rows:
            rows.append([z] * off + list(r) + [z] * (n - off - x.ncols))
        off += x.ncols
    return Matrix(field, rows, n)


def block_matrix(blocks, row_dims, col_dims, field):
    """Assemble ``blocks[i][j]`` (``None`` meaning zero) into one matrix."""
    z = field.zero
    n = sum(col_dims)
    rows = []
    for i, rd in enumerate(row_dims):
        part = [[z] * n for _ in range(rd)]
        off = 0
        for j, cd in enumerate(col_dims):
            b = blocks[i][j]
            if b is not None:
                if b.shape != (rd, cd):
                    raise ValueError("block (%d,%d) has shape %s, expected %s" % (i, j, b.shape, (rd, cd)))
                for r in range(rd):
                    part[r][off:off + cd] = b.rows[r]
            off += cd
        rows.extend(part)
    return Matrix(field, rows, n)


def kronecker(a, b):
    """Kronecker product, left-factor-major: index ``(i, j) -> i * dim_b + j``."""
    z = a.field.zero
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            row = []
            for x in ra:
                if x:
                    row.extend(x * y for y in rb)
                else:
                    row.extend([z] * b.ncols)
            rows.append(row)
    return Matrix(a.field, rows, a.ncols * b.ncols)


def _sparse_echelon(rows, field):
    """Fully reduce sparse rows; returns (reduced rows, pivot columns)."""
    piv_rows = {}  # pivot col -> row dict with 1 at pivot
    for r in rows:
        r = dict(r)
        # pivot rows are fully reduced, so one pass clears every pivot column
        for c in [c for c in r if c in piv_rows]:
            f = r[c]
            for j, v in piv_rows[c].items():
                nv = r.get(j, field.zero) - f * v
                if nv:
                    r[j] = nv
                else:
                    r.pop(j, None)
        if not r:
            continue
        c = min(r)
        inv = field.one / r[c]
        r = {j: v * inv for j, v in r.items()}
        # back-substitute into existing pivot rows
        for pc, pr in piv_rows.items():
            f = pr.get(c)
            if f:
                for j, v in r.items():
                    nv = pr.get(j, field.zero) - f * v
                    if nv:
                        pr[j] = nv
                    else:
                        pr.pop(j, None)
        piv_rows[c] = r
    pivots = sorted(piv_rows)
    return [piv_rows[c] for c in pivots], pivots


def nullspace(rows, ncols, field):
    """Basis (as sparse dicts) of ``{x : r . x = 0 for every row r}``."""
    red, pivots = _sparse_echelon(rows, field)
    pset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        v = {f: field.one}
        for pc, pr in zip(pivots, red):
            c = pr.get(f)
            if c:
                v[pc] = -c
        basis.append(v)
    return basis


def sparse_rank(rows, field):
    return len(_sparse_echelon(rows, field)[1])


class Inconsistent(ValueError):
    """Raised when a linear system has no solution."""


def solve(a, b):
    """Solve ``a @ x = b``; returns ``(particular, kernel)``.

    ``particular`` has the shape of ``x``; ``kernel`` has the null-space basis
    as columns.  Raises :class:`Inconsistent` when there is no solution.
    """
    if a.nrows != b.nrows:
        raise ValueError("solve: a and b need the same number of rows")
    aug = hstack([a, b]) if b.ncols else a
    red, piv = aug.rref()
    n = a.ncols
    if any(p >= n for p in piv):
        raise Inconsistent("inconsistent linear system")
    z = a.field.zero
    x = [[z] * b.ncols for _ in range(n)]
    for i, p in enumerate(piv):
        x[p] = list(red.rows[i][n:])
    return Matrix(a.field, x, b.ncols), a.right_kernel()


def solve_left(a, b):
    """Solve ``x @ a = b`` for ``x``; returns ``(particular, kernel rows)``."""
    x, k = solve(a.T, b.T)
    return x.T, k.T


def in_row_space(a, v):
    """Coordinates of row vector ``v`` in terms of the rows of ``a`` or ``None``."""
    try:
        x, _ = solve_left(a, v)
    except Inconsistent:
        return None
    return x


def coker(f):
    """Cokernel of the row map ``f: k^m -> k^n``.

    Returns ``(q, s)`` with ``q: k^n -> k^c`` the canonical projection and
    ``s: k^c -> k^n`` a section (unit vectors on the non-pivot columns).
    """
    field = f.field
    n = f.ncols
    red, piv = f.rref()
    free = [j for j in range(n) if j not in set(piv)]
    pos = {j: k for k, j in enumerate(free)}
    z, o = field.zero, field.one
    q = [[z] * len(free) for _ in range(n)]
    for j in free:
        q[j][pos[j]] = o
    for i, p in enumerate(piv):
        r = red.rows[i]
        q[p] = [-r[j] for j in free]
    s = Matrix(field, [[z] * n for _ in free], n)
    for k, j in enumerate(free):
        s.rows[k][j] = o
    return Matrix(field, q, len(free)), s


def pushout(f, g):
    """Pushout of ``f: X -> A`` and ``g: X -> B``.

    Returns ``(dim P, inA, inB)`` where ``f @ inA == g @ inB``.
    """
    rel = hstack([f, -g])
    q, _ = coker(rel)
    a = f.ncols
    return q.ncols, q.submatrix(rows=range(a)), q.submatrix(rows=range(a, q.nrows))


def pullback(f, g):
    """Pullback of ``f: A -> Y`` and ``g: B -> Y``.

    Returns ``(dim Q, prA, prB)`` where ``prA @ f == prB @ g``.
    """
    k = vstack([f, -g]).left_kernel()
    a = f.nrows
    return k.nrows, k.submatrix(cols=range(a)), k.submatrix(cols=range(a, k.ncols))


_LIT_RE = re.compile(r"^\s*(\[.*\])\s*(?:%\s*(\d+))?\s*$", re.S)


def parse_matrix(text, field=None, shape=None):
    """Parse ``[[a,b],[c,d]]`` with optional ``% p`` suffix.

    Entries are integers or ``p/q`` rationals.  An explicit ``field``
    overrides the default when no suffix is present; a suffix that
    disagrees with ``field`` is an error.
    """
    m = _LIT_RE.match(text)
    if not m:
        raise ValueError("not a matrix literal: %r" % text)
    body, mod = m.group(1), m.group(2)
    fld = field or QQ
    if mod is not None:
        suffixed = Field(int(mod))
        if field is not None and field.char != suffixed.char:
            raise ValueError("matrix literal is over F_%s but the workspace field has char %d" % (mod, field.char))
        fld = suffixed
    inner = body.strip()[1:-1].strip()
    if not inner:
        rows = []
    else:
        rows = re.findall(r"\[([^\[\]]*)\]", inner)
        if re.sub(r"\[[^\[\]]*\]", "", inner).replace(",", "").strip():
            raise ValueError("malformed matrix literal: %r" % text)
    data = []
    for r in rows:
        entries = [e.strip() for e in r.split(",")] if r.strip() else []
        data.append([fld(Fraction(e)) for e in entries])
    if data and len({len(r) for r in data}) != 1:
        raise ValueError("ragged matrix literal: %r" % text)
    if shape is not None:
        if not data:
            return Matrix.zeros(fld, *shape)
        if (len(data), len(data[0])) != tuple(shape):
            raise ValueError("matrix literal has shape %s, expected %s" % ((len(data), len(data[0])), tuple(shape)))
    ncols = len(data[0]) if data else 0
    return Matrix(fld, data, ncols)


def rref(m):
    return m.rref()


def sparse_coker(rows, ncols, field):
    """Cokernel of the span of sparse ``rows`` inside ``k^ncols``.

    Returns ``(q, free)``: ``q`` is a list of ``ncols`` sparse dicts giving the
    image of each unit vector in the quotient, whose basis is the list of
    non-pivot columns ``free``.
    """
    red, piv = _sparse_echelon(rows, field)
    pset = set(piv)
    free = [j for j in range(ncols) if j not in pset]
    pos = {j: k for k, j in enumerate(free)}
    q = [None] * ncols
    for j in free:
        q[j] = {pos[j]: field.one}
    for p, r in zip(piv, red):
        q[p] = {pos[j]: -v for j, v in r.items() if j != p}
    return q, free
