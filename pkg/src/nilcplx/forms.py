"""
Exterior algebra on the complexified dual of an n-dimensional complex
coframe: forms up to degree three, conjugation, bidegrees and contraction.

Generators are indexed 0..2n-1: index k-1 is the k-th holomorphic
generator w_k and index n+k-1 its conjugate.  This is also the total order
used for canonical monomials, so a 2-form key (a, b) always has a < b and
mixed terms always put the holomorphic factor first.
"""

from .errors import InternalConsistencyError
from .exact import GaussianRational, ONE, ZERO, gq, axpy, Subspace

__all__ = [
    "OneForm", "TwoForm", "ThreeForm", "DualVector",
    "gen", "gen_bar", "frame", "frame_bar",
    "wedge", "conjugate_form", "bidegree_split", "contract", "evaluate",
    "WedgeSquare", "in_wedge_square", "in_wedge_square_expand",
    "in_wedge_square_contract", "one_form_space", "two_form_dim",
    "substitute", "conj_index",
]


def conj_index(a, n):
    return a + n if a < n else a - n


class _Sparse:
    __slots__ = ("n", "coords", "_hash")
    degree = None

    def __init__(self, n, coords=None, _trusted=False):
        self.n = n
        if _trusted:
            self.coords = coords
        else:
            c = {}
            for k, x in (coords or {}).items():
                k = self._norm_key(k, n)
                x = gq(x)
                if x:
                    c[k] = x
            self.coords = c
        self._hash = None

    @staticmethod
    def _norm_key(k, n):
        return k

    @classmethod
    def _make(cls, n, coords):
        obj = object.__new__(cls)
        obj.n = n
        obj.coords = coords
        obj._hash = None
        return obj

    def _same(self, other):
        if type(other) is not type(self):
            raise TypeError("cannot combine %s with %s" % (type(self).__name__, type(other).__name__))
        if other.n != self.n:
            raise ValueError("dimension mismatch: n=%d vs n=%d" % (self.n, other.n))

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._same(other)
        c = dict(self.coords)
        axpy(c, ONE, other.coords)
        return self._make(self.n, c)

    __radd__ = __add__

    def __sub__(self, other):
        self._same(other)
        c = dict(self.coords)
        axpy(c, -ONE, other.coords)
        return self._make(self.n, c)

    def __neg__(self):
        return self._make(self.n, {k: -x for k, x in self.coords.items()})

    def __mul__(self, s):
        if isinstance(s, _Sparse):
            return NotImplemented
        s = gq(s)
        if not s:
            return self._make(self.n, {})
        return self._make(self.n, {k: s * x for k, x in self.coords.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if type(other) is not type(self):
            if isinstance(other, int) and other == 0:
                return not self.coords
            return NotImplemented
        return self.n == other.n and self.coords == other.coords

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.n, frozenset(self.coords.items())))
        return self._hash

    def __bool__(self):
        return bool(self.coords)

    def is_zero(self):
        return not self.coords

    def __getitem__(self, key):
        return self.coords.get(self._norm_key(key, self.n), ZERO)

    def items(self):
        return self.coords.items()

    def __repr__(self):
        return "%s(n=%d, %s)" % (type(self).__name__, self.n, self.pretty())

    def pretty(self):
        if not self.coords:
            return "0"
        parts = []
        for k in sorted(self.coords, key=self._print_order):
            parts.append("(%s)%s" % (self.coords[k], self._key_name(k)))
        return " + ".join(parts)

    @staticmethod
    def _print_order(k):
        return k

    def _key_name(self, k):
        return str(k)

    def conjugate(self):
        return conjugate_form(self)


def _gname(a, n):
    return "w%d" % (a + 1) if a < n else "c(w%d)" % (a - n + 1)


class OneForm(_Sparse):
    """Linear combination of the 2n generators."""
    __slots__ = ()
    degree = 1

    def _key_name(self, k):
        return "·" + _gname(k, self.n)

    def to_vector(self):
        return self.coords


class DualVector(_Sparse):
    """Element of the complexified Lie algebra in the dual frame."""
    __slots__ = ()
    degree = -1

    def _key_name(self, k):
        return "·X%d" % (k + 1) if k < self.n else "·Xbar%d" % (k - self.n + 1)


def _sort_sign(keys):
    """Sort a tuple of distinct ints, returning (sorted, sign) or (None, 0)."""
    keys = list(keys)
    if len(set(keys)) != len(keys):
        return None, 0
    sign = 1
    for i in range(1, len(keys)):
        j = i
        while j > 0 and keys[j - 1] > keys[j]:
            keys[j - 1], keys[j] = keys[j], keys[j - 1]
            sign = -sign
            j -= 1
    return tuple(keys), sign


class TwoForm(_Sparse):
    """Sparse 2-form keyed by increasing generator pairs (a, b)."""
    __slots__ = ()
    degree = 2

    @staticmethod
    def _norm_key(k, n):
        a, b = k
        if a >= b:
            raise ValueError("non-canonical 2-form key %r" % (k,))
        return (a, b)

    @staticmethod
    def _print_order(k):
        return (k[1], k[0])

    def _key_name(self, k):
        return "·" + _gname(k[0], self.n) + "^" + _gname(k[1], self.n)

    @classmethod
    def from_pairs(cls, n, terms):
        """Build from (coef, a, b) with arbitrary a, b; signs normalized."""
        c = {}
        for coef, a, b in terms:
            if a == b:
                continue
            s = gq(coef)
            if a > b:
                a, b, s = b, a, -s
            axpy(c, ONE, {(a, b): s})
        return cls._make(n, c)

    def part(self, bidegree):
        n = self.n

        def bd(k):
            return (k[0] < n) + (k[1] < n)
        want = {(2, 0): 2, (1, 1): 1, (0, 2): 0}[tuple(bidegree)]
        return TwoForm._make(n, {k: x for k, x in self.coords.items() if bd(k) == want})


class ThreeForm(_Sparse):
    """Sparse 3-form keyed by strictly increasing triples; used for d^2 checks."""
    __slots__ = ()
    degree = 3

    @staticmethod
    def _norm_key(k, n):
        a, b, c = k
        if not a < b < c:
            raise ValueError("non-canonical 3-form key %r" % (k,))
        return (a, b, c)

    def _key_name(self, k):
        return "·" + "^".join(_gname(a, self.n) for a in k)


# ---------------------------------------------------------------------------
# constructors

def gen(k, n):
    """The k-th holomorphic generator (1-based)."""
    _check_index(k, n)
    return OneForm._make(n, {k - 1: ONE})


def gen_bar(k, n):
    """Conjugate of the k-th holomorphic generator."""
    _check_index(k, n)
    return OneForm._make(n, {n + k - 1: ONE})


def frame(k, n):
    """Dual frame vector of the k-th holomorphic generator."""
    _check_index(k, n)
    return DualVector._make(n, {k - 1: ONE})


def frame_bar(k, n):
    _check_index(k, n)
    return DualVector._make(n, {n + k - 1: ONE})


def _check_index(k, n):
    if not 1 <= k <= n:
        raise IndexError("generator index %d out of range 1..%d" % (k, n))


def two_form_dim(n):
    return n * (2 * n - 1)


def one_form_space(n, vectors=()):
    return Subspace.span("one_forms", n, 2 * n, [_vec(v) for v in vectors])


def _vec(v):
    return v.coords if isinstance(v, _Sparse) else v


# ---------------------------------------------------------------------------
# operations

def wedge(a, b):
    """Wedge of a 1-form with a 1-form or 2-form (either side)."""
    if a.n != b.n:
        raise ValueError("dimension mismatch: n=%d vs n=%d" % (a.n, b.n))
    n = a.n
    if a.degree == 1 and b.degree == 1:
        c = {}
        bc = b.coords
        for i, x in a.coords.items():
            for j, y in bc.items():
                if i == j:
                    continue
                if i < j:
                    k, s = (i, j), x * y
                else:
                    k, s = (j, i), -(x * y)
                v = c.get(k)
                if v is None:
                    c[k] = s
                else:
                    v = v + s
                    if v:
                        c[k] = v
                    else:
                        del c[k]
        return TwoForm._make(n, c)
    if {a.degree, b.degree} == {1, 2}:
        c = {}
        for ka, x in a.coords.items():
            ka = (ka,) if a.degree == 1 else ka
            for kb, y in b.coords.items():
                kb = (kb,) if b.degree == 1 else kb
                key, sign = _sort_sign(ka + kb)
                if key is None:
                    continue
                s = x * y
                axpy(c, ONE, {key: s if sign > 0 else -s})
        return ThreeForm._make(n, c)
    raise TypeError("unsupported wedge of degrees %s and %s" % (a.degree, b.degree))


def conjugate_form(f):
    """Conjugate coefficients and swap each generator with its conjugate."""
    n = f.n
    if f.degree in (1, -1):
        return type(f)._make(n, {conj_index(k, n): x.conjugate() for k, x in f.coords.items()})
    c = {}
    for k, x in f.coords.items():
        key, sign = _sort_sign(conj_index(a, n) for a in k)
        x = x.conjugate()
        c[key] = x if sign > 0 else -x
    return type(f)._make(n, c)


def bidegree_split(f):
    """Return the (2,0), (1,1) and (0,2) parts of a 2-form."""
    return f.part((2, 0)), f.part((1, 1)), f.part((0, 2))


def contract(v, f):
    """Interior product of a dual vector with a 1-form (scalar) or 2-form."""
    if v.n != f.n:
        raise ValueError("dimension mismatch")
    vc = v.coords
    if f.degree == 1:
        return sum((x * vc[k] for k, x in f.coords.items() if k in vc), ZERO)
    if f.degree != 2:
        raise TypeError("contraction defined here for 1- and 2-forms")
    c = {}
    for (a, b), x in f.coords.items():
        va, vb = vc.get(a), vc.get(b)
        if va is not None:
            _acc(c, b, va * x)
        if vb is not None:
            _acc(c, a, -(vb * x))
    return OneForm._make(f.n, c)


def _acc(c, k, s):
    y = c.get(k)
    if y is None:
        c[k] = s
    else:
        y = y + s
        if y:
            c[k] = y
        else:
            del c[k]


def evaluate(f, u, v):
    """Value of a 2-form on a pair of dual vectors: f(u, v)."""
    uc, vc = u.coords, v.coords
    total = ZERO
    for (a, b), x in f.coords.items():
        s = ZERO
        if a in uc and b in vc:
            s = s + uc[a] * vc[b]
        if b in uc and a in vc:
            s = s - uc[b] * vc[a]
        if s:
            total = total + x * s
    return total


def substitute(f, images):
    """Replace generator a by the 1-form images[a] and expand."""
    n = images[0].n if images else f.n
    if f.degree == 1:
        c = {}
        for a, x in f.coords.items():
            axpy(c, x, images[a].coords)
        return OneForm._make(n, c)
    if f.degree == 2:
        fixed = [im.coords.keys() == {a} and im.coords[a] == ONE for a, im in enumerate(images)]
        c = {}
        for (a, b), x in f.coords.items():
            if fixed[a] and fixed[b]:
                axpy(c, ONE, {(a, b): x})
            else:
                axpy(c, x, wedge(images[a], images[b]).coords)
        return TwoForm._make(n, c)
    raise TypeError("substitute handles 1- and 2-forms")


# ---------------------------------------------------------------------------
# membership in the exterior square of a subspace of 1-forms

class WedgeSquare:
    """The span of u_i ^ u_j for an echelon basis u of U.

    The leading pair of u_i ^ u_j (lexicographic on generator pairs) is the
    pair of pivots, which are pairwise distinct, so these products are
    already an echelon basis and need no elimination.  Products are built
    lazily as reduction touches their leading pair.
    """

    def __init__(self, U):
        if U.kind != "one_forms":
            raise ValueError("WedgeSquare needs a subspace of 1-forms")
        self.U = U
        self.n = U.n
        self._basis = {p: OneForm._make(U.n, r) for p, r in zip(U.pivots, U.basis())}
        self._cache = {}

    @property
    def dim(self):
        m = len(self._basis)
        return m * (m - 1) // 2

    def _row(self, key):
        row = self._cache.get(key)
        if row is None:
            a, b = key
            row = wedge(self._basis[a], self._basis[b]).coords
            self._cache[key] = row
        return row

    def basis(self):
        ps = sorted(self._basis)
        return [TwoForm._make(self.n, dict(self._row((a, b))))
                for i, a in enumerate(ps) for b in ps[i + 1:]]

    def reduce(self, f):
        """Normal form of a 2-form modulo the wedge square (a dict)."""
        import heapq
        v = dict(f.coords if isinstance(f, TwoForm) else f)
        piv = self._basis
        heap = [k for k in v if k[0] in piv and k[1] in piv]
        heapq.heapify(heap)
        seen = set()
        while heap:
            k = heapq.heappop(heap)
            if k in seen:
                continue
            seen.add(k)
            c = v.get(k)
            if c is None:
                continue
            row = self._row(k)
            for kk, x in row.items():
                y = v.get(kk)
                y = -(c * x) if y is None else y - c * x
                if y:
                    v[kk] = y
                    if kk not in seen and kk[0] in piv and kk[1] in piv:
                        heapq.heappush(heap, kk)
                else:
                    del v[kk]
        return v

    def contains(self, f):
        return not self.reduce(f)


def in_wedge_square_expand(f, U):
    return WedgeSquare(U).contains(f)


def in_wedge_square_contract(f, U):
    """Contraction test: f lies in U^U iff every contraction of f lies in U."""
    n = f.n
    for a in range(2 * n):
        iv = contract(DualVector._make(n, {a: ONE}), f)
        if iv and not U.contains(iv.coords):
            return False
    return True


class InconsistentMembership(InternalConsistencyError):
    pass


def in_wedge_square(f, U):
    """Membership of f in U^U, decided twice; disagreement is a bug."""
    x = in_wedge_square_expand(f, U)
    y = in_wedge_square_contract(f, U)
    if x != y:
        raise InconsistentMembership("wedge-square membership disagrees: expand=%s contract=%s" % (x, y))
    return x
