"""
Exact arithmetic over Q(i) and sparse row-echelon linear algebra.

Vectors are plain dicts mapping a sortable key to a nonzero
GaussianRational.  Keys are usually ints (1-form and vector coordinates)
or sorted index tuples (2-form coordinates); the pivot of a row is its
smallest key.
"""

from fractions import Fraction
import re

from gmpy2 import mpq

__all__ = [
    "GaussianRational", "gq", "ZERO", "ONE", "I",
    "Matrix", "rref", "Echelon", "Subspace",
    "left_kernel", "solve_in_span", "subspace_sum", "subspace_intersect",
    "contains", "conjugate_subspace", "annihilator", "AmbientMismatch", "axpy",
]


class AmbientMismatch(ValueError):
    """Two subspaces over different ambient spaces were combined."""


def _q(x):
    if isinstance(x, str):
        return mpq(Fraction(x.strip()))
    return mpq(x)


class GaussianRational:
    """An element re + im*i of Q(i) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is _MPQ else _q(re)
        self.im = im if type(im) is _MPQ else _q(im)

    @classmethod
    def parse(cls, text):
        """Parse strings such as '3', '-1/2', 'i', '2i', '1/2-3/4i'."""
        s = text.replace(" ", "").replace("*", "")
        m = _COMPLEX_RE.fullmatch(s)
        if not m or not s:
            raise ValueError("not a Gaussian rational: %r" % text)
        re_part, im_sign, im_mag, im_only = m.group(1, 2, 3, 4)
        z = cls(re_part) if re_part else cls(0)
        if im_only is not None:
            mag = _q(im_only.rstrip("i") or "1")
            z = cls(0, -mag if im_only.startswith("-") else mag)
            return z
        if im_sign:
            mag = _q(im_mag or "1")
            z = cls(z.re, -mag if im_sign == "-" else mag)
        return z

    # arithmetic
    def __add__(self, other):
        if type(other) is not GaussianRational:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return _mk(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not GaussianRational:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return _mk(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return gq(other) - self

    def __mul__(self, other):
        if type(other) is not GaussianRational:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return _mk(a * c, b)
        return _mk(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if type(other) is not GaussianRational:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return gq(other) * self.inverse()

    def __neg__(self):
        return _mk(-self.re, -self.im)

    def __pos__(self):
        return self

    def inverse(self):
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("inverse of zero")
            return _mk(1 / a, b)
        nrm = a * a + b * b
        return _mk(a / nrm, -b / nrm)

    def conjugate(self):
        return _mk(self.re, -self.im)

    def norm(self):
        """z * conj(z) as a rational."""
        return self.re * self.re + self.im * self.im

    def is_zero(self):
        return not self.re and not self.im

    def is_real(self):
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if type(other) is not GaussianRational:
            try:
                other = gq(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(Fraction(int(self.re.numerator), int(self.re.denominator)))
        return hash((int(self.re.numerator), int(self.re.denominator),
                     int(self.im.numerator), int(self.im.denominator)))

    def __repr__(self):
        return "GaussianRational(%s)" % self

    def __str__(self):
        re_s, im_s = _rat_str(self.re), _rat_str(abs(self.im))
        if not self.im:
            return re_s
        im_s = "i" if im_s == "1" else im_s + "i"
        if not self.re:
            return ("-" if self.im < 0 else "") + im_s
        return re_s + ("-" if self.im < 0 else "+") + im_s

    def to_fraction_pair(self):
        return (Fraction(int(self.re.numerator), int(self.re.denominator)),
                Fraction(int(self.im.numerator), int(self.im.denominator)))


_MPQ = type(mpq(0))
_COMPLEX_RE = re.compile(
    r"([+-]?\d+(?:/\d+)?)?(?:([+-])(\d+(?:/\d+)?)?i)?|([+-]?(?:\d+(?:/\d+)?)?i)")


def _coerce(x):
    try:
        return gq(x)
    except (TypeError, ValueError):
        return None


def _mk(re, im):
    z = object.__new__(GaussianRational)
    z.re = re
    z.im = im
    return z


def _rat_str(q):
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def gq(x):
    """Coerce ints, Fractions, mpq, strings, complex with integral parts,
    or (re, im) pairs to GaussianRational."""
    if type(x) is GaussianRational:
        return x
    if isinstance(x, (int, Fraction, _MPQ)):
        return _mk(mpq(x), mpq(0))
    if isinstance(x, str):
        return GaussianRational.parse(x)
    if isinstance(x, tuple) and len(x) == 2:
        return GaussianRational(x[0], x[1])
    if isinstance(x, complex):
        if x.real != int(x.real) or x.imag != int(x.imag):
            raise ValueError("only integral complex literals are exact: %r" % x)
        return _mk(mpq(int(x.real)), mpq(int(x.imag)))
    raise TypeError("cannot convert %r to GaussianRational" % (x,))


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# sparse vector helpers

def axpy(v, c, w):
    """In place v += c*w for sparse dict vectors; zeros are dropped."""
    for k, x in w.items():
        y = v.get(k)
        if y is None:
            v[k] = c * x
        else:
            y = y + c * x
            if y:
                v[k] = y
            else:
                del v[k]


def scaled(v, c):
    return {k: c * x for k, x in v.items()}


def clean(v):
    """Coerce values and drop zeros."""
    out = {}
    for k, x in v.items():
        x = gq(x)
        if x:
            out[k] = x
    return out


# ---------------------------------------------------------------------------
# reduced echelon form, maintained incrementally

class Echelon:
    """Reduced row echelon basis built one vector at a time.

    With ``track=True`` every stored row carries the combination of input
    vectors that produced it, which is what kernels and span-solves need.
    """

    def __init__(self, track=False):
        self.rows = {}
        self.combos = {} if track else None

    def __len__(self):
        return len(self.rows)

    def reduce(self, v, combo=None):
        """Return (remainder, combo) of v modulo the stored rows."""
        v = dict(v)
        if combo is not None:
            combo = dict(combo)
        rows = self.rows
        for p in [k for k in v if k in rows]:
            c = v.get(p)
            if c is None:
                continue
            axpy(v, -c, rows[p])
            if combo is not None:
                axpy(combo, -c, self.combos[p])
        return v, combo

    def insert_reduced(self, v, combo=None):
        """Insert an already reduced nonzero vector; return its pivot."""
        p = min(v)
        inv = v[p].inverse()
        if inv != ONE:
            v = scaled(v, inv)
            if combo is not None:
                combo = scaled(combo, inv)
        v[p] = ONE
        for q, row in self.rows.items():
            c = row.get(p)
            if c is not None:
                axpy(row, -c, v)
                if combo is not None:
                    axpy(self.combos[q], -c, combo)
        self.rows[p] = v
        if combo is not None:
            self.combos[p] = combo
        return p

    def add(self, v, combo=None):
        """Add v; return None if it was new, else the dependency combo."""
        r, c = self.reduce(v, combo)
        if r:
            self.insert_reduced(r, c)
            return None
        return c if c is not None else {}

    def sorted_rows(self):
        return [(p, self.rows[p]) for p in sorted(self.rows)]


def left_kernel(vectors):
    """Basis of {x : sum x_i vectors[i] = 0}, as sparse dicts over indices."""
    ech = Echelon(track=True)
    kernel = []
    for i, v in enumerate(vectors):
        dep = ech.add(v, {i: ONE})
        if dep is not None:
            kernel.append(dep)
    return kernel


def solve_in_span(target, generators):
    """Coefficients c with sum c_i generators[i] == target, or None.

    ``generators`` may be a Matrix or a sequence of sparse vectors.
    Returns a dense list of coefficients.
    """
    if isinstance(generators, Matrix):
        gens = generators.sparse_rows()
    else:
        gens = [_as_sparse(g) for g in generators]
    target = _as_sparse(target)
    ech = Echelon(track=True)
    for i, g in enumerate(gens):
        ech.add(g, {i: ONE})
    r, c = ech.reduce(target, {})
    if r:
        return None
    out = [ZERO] * len(gens)
    for i, x in c.items():
        out[i] = -x
    return out


def _as_sparse(v):
    if isinstance(v, dict):
        # elimination keys on stored entries, so explicit zeros must go
        return v if all(v.values()) else {k: x for k, x in v.items() if x}
    if hasattr(v, "coords"):
        return v.coords
    return {i: gq(x) for i, x in enumerate(v) if gq(x)}


# ---------------------------------------------------------------------------
# dense matrices

class Matrix:
    """Dense grid of GaussianRational entries (immutable)."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows, ncols=None):
        rows = tuple(tuple(gq(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self.rows = rows
        self.ncols = ncols

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_sparse(cls, vectors, ncols):
        return cls([[v.get(j, ZERO) for j in range(ncols)] for v in vectors], ncols)

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def shape(self):
        return (len(self.rows), self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "Matrix([%s])" % ", ".join(
            "[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)

    def sparse_rows(self):
        return [{j: x for j, x in enumerate(r) if x} for r in self.rows]

    def __matmul__(self, other):
        cols = list(zip(*other.rows))
        return Matrix([[sum((a * b for a, b in zip(r, c)), ZERO) for c in cols]
                       for r in self.rows], other.ncols)

    def conjugate(self):
        return Matrix([[x.conjugate() for x in r] for r in self.rows], self.ncols)

    def transpose(self):
        return Matrix(list(zip(*self.rows)), self.nrows) if self.rows else Matrix([], 0)

    def inverse(self):
        """Gauss-Jordan inverse; raises ZeroDivisionError when singular."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of non-square matrix")
        aug = []
        for i, r in enumerate(self.rows):
            v = {j: x for j, x in enumerate(r) if x}
            v[n + i] = ONE
            aug.append(v)
        ech = Echelon()
        for v in aug:
            if ech.add(v) is not None:
                raise ZeroDivisionError("singular matrix")
        if any(p >= n for p in ech.rows):
            raise ZeroDivisionError("singular matrix")
        return Matrix([[ech.rows[i].get(n + j, ZERO) for j in range(n)] for i in range(n)])


def rref(m):
    """Reduced row echelon form: returns (matrix, rank, pivots)."""
    ech = Echelon()
    for v in m.sparse_rows():
        ech.add(v)
    rows = ech.sorted_rows()
    pivots = [p for p, _ in rows]
    return Matrix.from_sparse([r for _, r in rows], m.ncols), len(rows), pivots


# ---------------------------------------------------------------------------
# subspaces

class Subspace:
    """Subspace of a coordinate space, stored as its reduced echelon basis.

    ``kind`` tags the ambient coordinates ('one_forms', 'two_forms', 'dual',
    or anything else); ``n`` is the complex dimension the ambient is built
    from and ``dim_ambient`` its dimension.  Equality is equality of the
    echelon bases.
    """

    __slots__ = ("kind", "n", "dim_ambient", "_rows", "_key")

    def __init__(self, kind, n, dim_ambient, echelon=None):
        self.kind = kind
        self.n = n
        self.dim_ambient = dim_ambient
        self._rows = dict(echelon.rows) if echelon is not None else {}
        self._key = None

    @classmethod
    def span(cls, kind, n, dim_ambient, vectors):
        ech = Echelon()
        for v in vectors:
            ech.add(_as_sparse(v))
        return cls(kind, n, dim_ambient, ech)

    @classmethod
    def zero(cls, kind, n, dim_ambient):
        return cls(kind, n, dim_ambient)

    @classmethod
    def full(cls, kind, n, dim_ambient, keys=None):
        keys = range(dim_ambient) if keys is None else keys
        return cls.span(kind, n, dim_ambient, [{k: ONE} for k in keys])

    @property
    def dim(self):
        return len(self._rows)

    def __len__(self):
        return len(self._rows)

    @property
    def pivots(self):
        return sorted(self._rows)

    def basis(self):
        """Echelon basis rows as sparse dicts, in pivot order (copies)."""
        return [dict(self._rows[p]) for p in sorted(self._rows)]

    def basis_matrix(self, keys=None):
        keys = list(range(self.dim_ambient)) if keys is None else keys
        return Matrix([[r.get(k, ZERO) for k in keys] for r in self.basis()], len(keys))

    def echelon(self):
        e = Echelon()
        e.rows = {p: dict(r) for p, r in self._rows.items()}
        return e

    def _check(self, other):
        if (self.kind, self.n, self.dim_ambient) != (other.kind, other.n, other.dim_ambient):
            raise AmbientMismatch("%s/%s vs %s/%s" % (self.kind, self.dim_ambient,
                                                      other.kind, other.dim_ambient))

    def reduce(self, v):
        """Normal form of v modulo this subspace (zero iff v is inside)."""
        v = dict(_as_sparse(v))
        rows = self._rows
        for p in [k for k in v if k in rows]:
            c = v.get(p)
            if c is not None:
                axpy(v, -c, rows[p])
        return v

    def contains(self, v):
        return not self.reduce(v)

    __contains__ = contains

    def is_subspace_of(self, other):
        self._check(other)
        return all(other.contains(r) for r in self._rows.values())

    def __add__(self, other):
        return subspace_sum(self, other)

    def __and__(self, other):
        return subspace_intersect(self, other)

    def _canon(self):
        if self._key is None:
            self._key = tuple((p, tuple(sorted(self._rows[p].items(), key=lambda kv: kv[0])))
                              for p in sorted(self._rows))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.kind, self.n, self.dim_ambient) == (other.kind, other.n, other.dim_ambient) \
            and self._canon() == other._canon()

    def __hash__(self):
        return hash((self.kind, self.dim_ambient, self._canon()))

    def __repr__(self):
        return "Subspace(%s, dim=%d/%d)" % (self.kind, self.dim, self.dim_ambient)

    def map(self, f, kind=None, dim_ambient=None):
        """Image under a linear map given on sparse vectors."""
        return Subspace.span(kind or self.kind, self.n, dim_ambient or self.dim_ambient,
                             [f(r) for r in self.basis()])


def subspace_sum(a, b):
    a._check(b)
    ech = a.echelon()
    for r in b.basis():
        ech.add(r)
    return Subspace(a.kind, a.n, a.dim_ambient, ech)


def subspace_intersect(a, b):
    """Intersection via the kernel of the stacked system [A; -B]."""
    a._check(b)
    ra, rb = a.basis(), b.basis()
    ker = left_kernel(ra + [scaled(r, -ONE) for r in rb])
    vecs = []
    for x in ker:
        v = {}
        for i, c in x.items():
            if i < len(ra):
                axpy(v, c, ra[i])
        vecs.append(v)
    return Subspace.span(a.kind, a.n, a.dim_ambient, vecs)


def annihilator(a, kind, keys=None):
    """Null space {x : sum_j x_j r_j = 0 for every basis row r} of a.

    The pairing is the plain coordinate pairing (no conjugation), which is
    the natural pairing between forms and vectors in matching bases.
    """
    keys = range(a.dim_ambient) if keys is None else keys
    rows = a._rows
    vecs = []
    for f in keys:
        if f in rows:
            continue
        v = {f: ONE}
        for p, r in rows.items():
            c = r.get(f)
            if c is not None:
                v[p] = -c
        vecs.append(v)
    return Subspace.span(kind, a.n, a.dim_ambient, vecs)


def contains(a, v):
    return a.contains(v)


def conjugate_subspace(a, conj_vector=None):
    """Entrywise conjugate plus block swap.

    For 'one_forms' and 'dual' ambients of dimension 2n the swap exchanges
    index k with k+n; other ambients need an explicit ``conj_vector``.
    """
    if conj_vector is None:
        if a.kind not in ("one_forms", "dual") or a.dim_ambient != 2 * a.n:
            raise AmbientMismatch("no default conjugation for %s" % a.kind)
        n = a.n

        def conj_vector(v):
            return {(k + n if k < n else k - n): x.conjugate() for k, x in v.items()}
    return a.map(conj_vector)
