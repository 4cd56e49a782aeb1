"""
Central series, the form-side filtrations, and the nilpotency steps of
the Lie algebra and of its complex structure.

All subspaces live in complexified coordinates: forms in the 'one_forms'
ambient (dimension 2n), vectors in the 'dual' ambient (dimension 2n).

    descending_central   g^0 = g,  g^k = [g^{k-1}, g]
    ascending_central    g_0 = 0,  g_k = {X : [X, g] in g_{k-1}}
    v_series             V^0 = 0,  V^k = {a : da in V^{k-1} ^ V^{k-1}}
    w_series             holomorphic forms whose d lies in the wedge
                         square of the previous term plus its conjugate
    a_series             a_k = {X : [X, g] and [JX, g] in a_{k-1}}
    h_series             h^0 = g,  h^k = [h^{k-1}, g] + J[h^{k-1}, g]

The step of J is read off three ways (a, W and h) and the three must agree.
"""

from dataclasses import dataclass, field
from typing import Optional

from .algebra import (apply_J, conjugate_vector, holomorphic_forms, holomorphic_vectors,
                      change_coframe)
from .errors import NotNilpotent, InternalConsistencyError
from .exact import (ONE, ZERO, I as _I, Echelon, Matrix, Subspace, left_kernel, annihilator,
                    conjugate_subspace, axpy)
from .forms import WedgeSquare, OneForm, DualVector, contract

__all__ = ["SeriesChain", "Classification", "descending_central", "ascending_central",
           "v_series", "w_series", "a_series", "h_series", "classify",
           "dual_of_quotient", "kernel_by_contraction"]


@dataclass(frozen=True)
class SeriesChain:
    kind: str
    terms: tuple
    step: Optional[int]           # index where the chain reaches its target
    stabilized_at: int            # first index after which nothing changes

    @property
    def dims(self):
        return tuple(t.dim for t in self.terms)

    @property
    def complex_dims(self):
        """Dimensions over C with respect to J (halved); for a and h chains."""
        return tuple(t.dim // 2 for t in self.terms)

    def __getitem__(self, k):
        """Term k, extended constantly past stabilization."""
        if k < len(self.terms):
            return self.terms[k]
        return self.terms[-1]

    def __len__(self):
        return len(self.terms)


def _cached(key):
    def deco(fn):
        def wrapper(alg):
            c = alg.cache
            if key not in c:
                c[key] = fn(alg)
            return c[key]
        wrapper.__name__ = fn.__name__
        wrapper.__doc__ = fn.__doc__
        return wrapper
    return deco


def _dual(n, vecs=()):
    return Subspace.span("dual", n, 2 * n, vecs)


def _forms(n, vecs=()):
    return Subspace.span("one_forms", n, 2 * n, vecs)


def _combine(kernel, basis_vectors):
    out = []
    for x in kernel:
        v = {}
        for i, c in x.items():
            axpy(v, c, basis_vectors[i])
        out.append(v)
    return out


def _run(kind, start, step_fn, done, limit):
    terms = [start]
    step = 0 if done(start) else None
    while step is None and len(terms) <= limit:
        nxt = step_fn(terms[-1])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
        if done(nxt):
            step = len(terms) - 1
    return SeriesChain(kind, tuple(terms), step, len(terms) - 1)


# ---------------------------------------------------------------------------
# Lie algebra side

@_cached("descending_central")
def descending_central(alg):
    """g^k; its step is the nilpotency step of the Lie algebra."""
    n = alg.n
    bt = alg.brackets()

    def nxt(S):
        return _dual(n, [bt.bracket_coords(r, {b: ONE}) for r in S.basis() for b in range(2 * n)])

    ch = _run("descending_central", Subspace.full("dual", n, 2 * n), nxt,
              lambda S: S.dim == 0, 2 * n)
    if ch.step is None:
        raise NotNilpotent("lower central series stalls at dimension %d" % ch.terms[-1].dim)
    return ch


def _bracket_kernel(alg, prev, sources):
    """{X in span(e_a : a in sources) : [X, e_b] lies in prev for every b}."""
    n = alg.n
    bt = alg.brackets()
    rows = []
    for a in sources:
        row = {}
        for b in range(2 * n):
            for key, x in prev.reduce(bt.basis_bracket(a, b)).items():
                row[(b, key)] = x
        rows.append(row)
    return [{sources[i]: c for i, c in x.items()} for x in left_kernel(rows)]


def _a_next(alg, prev):
    # JX = iX' - iX'' for the holomorphic and antiholomorphic parts of X, so
    # [X, .] and [JX, .] both land in prev iff [X', .] and [X'', .] do; prev
    # is conjugation-stable, so the antiholomorphic solutions are conjugates
    n = alg.n
    hol = _bracket_kernel(alg, prev, list(range(n)))
    return _dual(n, hol + [conjugate_vector(v, n) for v in hol])


@_cached("ascending_central")
def ascending_central(alg):
    n = alg.n
    src = list(range(2 * n))
    return _run("ascending_central", _dual(n), lambda S: _dual(n, _bracket_kernel(alg, S, src)),
                lambda S: S.dim == 2 * n, 2 * n)


@_cached("a_series")
def a_series(alg):
    """a_k; its step is the nilpotency step of J (None if J is not nilpotent)."""
    n = alg.n
    return _run("a", _dual(n), lambda S: _a_next(alg, S),
                lambda S: S.dim == 2 * n, 2 * n)


@_cached("h_series")
def h_series(alg):
    n = alg.n
    bt = alg.brackets()

    def nxt(S):
        # every term is J-invariant and conjugation-stable, so it is fixed by
        # its holomorphic half; brackets from the other half are conjugates,
        # and the J-closure of a span is the span of its block projections
        hol = (S & holomorphic_vectors(n)).basis()
        vecs = []
        for r in hol:
            for b in range(2 * n):
                br = bt.bracket_coords(r, {b: ONE})
                vecs.append({k: x for k, x in br.items() if k < n})
                vecs.append({k - n: x.conjugate() for k, x in br.items() if k >= n})
        half = _dual(n, vecs)
        return half + conjugate_subspace(half)

    return _run("h", Subspace.full("dual", n, 2 * n), nxt, lambda S: S.dim == 0, 2 * n)


# ---------------------------------------------------------------------------
# form side

def _wedge_kernel(alg, U, sources):
    """{sum x_a e_a over a in sources : d(sum) lies in U ^ U}, via the
    explicit wedge-square basis."""
    ws = WedgeSquare(U)
    im = alg.images
    rows = [ws.reduce(im[a]) for a in sources]
    ker = left_kernel(rows)
    return _forms(alg.n, [{sources[i]: c for i, c in x.items()} for x in ker])


def kernel_by_contraction(alg, U, sources):
    """Same kernel as the wedge-square route, decided by contractions:
    f lies in U ^ U iff every contraction of f by a vector killing U is 0."""
    n = alg.n
    ann = annihilator(U, "dual")
    im = alg.images
    rows = []
    for a in sources:
        row = {}
        for j, eta in enumerate(ann.basis()):
            c = contract(DualVector._make(n, eta), im[a])
            for key, x in c.coords.items():
                row[(j, key)] = x
        rows.append(row)
    ker = left_kernel(rows)
    return _forms(n, [{sources[i]: c for i, c in x.items()} for x in ker])


@_cached("v_series")
def v_series(alg):
    """V^k; V^1 is the space of closed 1-forms."""
    n = alg.n
    src = list(range(2 * n))
    return _run("V", _forms(n), lambda U: _wedge_kernel(alg, U, src),
                lambda U: U.dim == 2 * n, 2 * n)


@_cached("w_series")
def w_series(alg):
    """W^k inside the holomorphic block; its step is the other reading of
    the step of J.

    Computed in adapted coordinates: after each step the coframe is changed
    so that W^k is spanned by the leading generators, which turns the wedge
    square of W^k + conj into a support condition.  The final adapted coframe
    and its transform are kept in alg.cache["w_adapted"].
    """
    n = alg.n
    cur, T = alg, Matrix.identity(n)
    terms = [_forms(n)]
    m = 0
    while len(terms) <= 2 * n:
        inside = set(range(m)) | set(range(n, n + m))
        rows = [{k: x for k, x in cur.images[a].coords.items()
                 if k[0] not in inside or k[1] not in inside} for a in range(n)]
        ech = Echelon()
        for e in range(m):
            ech.add({e: ONE})
        new = []
        for x in left_kernel(rows):
            r, _ = ech.reduce(x)
            if r:
                ech.insert_reduced(r)
                new.append(r)
        if not new:
            break
        # reduce the new rows against each other as well
        new = [ech.rows[p] for p in sorted(ech.rows) if p >= m]
        pivots = set(ech.rows)
        M = [[ONE if j == e else ZERO for j in range(n)] for e in range(m)]
        M += [[r.get(j, ZERO) for j in range(n)] for r in new]
        M += [[ONE if j == e else ZERO for j in range(n)] for e in range(n) if e not in pivots]
        M = Matrix(M)
        m += len(new)
        if M != Matrix.identity(n):
            cur = change_coframe(cur, M, provenance=alg.provenance)
            T = M @ T
        terms.append(_forms(n, [dict((j, x) for j, x in enumerate(T.rows[e]) if x)
                                for e in range(m)]))
        if m == n:
            break
    alg.cache["w_adapted"] = (cur, T)
    step = len(terms) - 1 if terms[-1].dim == n else None
    return SeriesChain("W", tuple(terms), step, len(terms) - 1)


def with_conjugate(W):
    return W + conjugate_subspace(W)


def dual_of_quotient(a_term):
    """Forms vanishing on a subspace of vectors: the dual of g / a."""
    return annihilator(a_term, "one_forms")


# ---------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class Classification:
    n: int
    nu_g: int
    mu_J: Optional[int]
    nu_J: Optional[int]
    nilpotent_J: bool
    maxn: bool
    chains: dict = field(compare=False, repr=False)
    inclusions: tuple = field(default=(), compare=False)   # (k, "equal"|"strict")

    @property
    def step_gap(self):
        """nu(J) - nu(g), reported without any claimed bound."""
        return None if self.nu_J is None else self.nu_J - self.nu_g

    def dims(self):
        c = self.chains
        return {
            "V": list(c["V"].dims),
            "W": list(c["W"].dims),
            "a": list(c["a"].complex_dims),
            "h": list(c["h"].complex_dims),
            "lower_central": list(c["descending_central"].dims),
            "upper_central": list(c["ascending_central"].dims),
        }


def _fail(msg):
    raise InternalConsistencyError(msg)


def _pull_back(S, T, Tinv):
    """Coordinates in the original coframe of a subspace computed in the
    coframe T @ w (forms pull back by T, vectors by the inverse)."""
    n = S.n
    M = T if S.kind == "one_forms" else Tinv.transpose()
    Mc = M.conjugate()
    vecs = []
    for r in S.basis():
        v = {}
        for k, x in r.items():
            row = M.rows[k] if k < n else Mc.rows[k - n]
            off = 0 if k < n else n
            for j, y in enumerate(row):
                if y:
                    axpy(v, x, {off + j: y})
        vecs.append(v)
    return Subspace.span(S.kind, n, S.dim_ambient, vecs)


_CHAIN_CACHE = {"descending_central": "descending_central", "ascending_central":
                "ascending_central", "V": "v_series", "a": "a_series", "h": "h_series"}


def classify(alg, cross_check=True, adapted=True):
    """Run every series and verify the relations between them.

    Any failed relation raises InternalConsistencyError: these are theorems,
    so a failure means a bug, never a property of the input.

    With ``adapted`` the work happens in the coframe adapted to the W series,
    which is sparse however dense the input is, and every chain is pulled
    back to the input coordinates.  ``adapted=False`` computes directly.
    """
    cached = alg.cache.get(("classify", cross_check, adapted))
    if cached is not None:
        return cached
    if adapted:
        W = w_series(alg)
        cur, T = alg.cache["w_adapted"]
        if cur is not alg:
            base = classify(cur, cross_check, adapted=False)
            Tinv = T.inverse()
            chains = {"W": W}
            for key, ch in base.chains.items():
                if key == "W":
                    continue
                ch = SeriesChain(ch.kind, tuple(_pull_back(S, T, Tinv) for S in ch.terms),
                                 ch.step, ch.stabilized_at)
                chains[key] = ch
                alg.cache.setdefault(_CHAIN_CACHE[key], ch)
            if [S.dim for S in W.terms] != [S.dim for S in base.chains["W"].terms]:
                _fail("W series changes under the adapting coframe change")
            cl = Classification(n=base.n, nu_g=base.nu_g, mu_J=base.mu_J, nu_J=base.nu_J,
                                nilpotent_J=base.nilpotent_J, maxn=base.maxn, chains=chains,
                                inclusions=base.inclusions)
            alg.cache[("classify", cross_check, adapted)] = cl
            return cl
    n = alg.n
    dc = descending_central(alg)
    nu_g = dc.step
    uc = ascending_central(alg)
    V = v_series(alg)
    W = w_series(alg)
    A = a_series(alg)
    H = h_series(alg)

    # Lie algebra side: both central series and V have the same step
    if uc.step != nu_g or V.step != nu_g:
        _fail("steps disagree: lower %s, upper %s, V %s" % (nu_g, uc.step, V.step))
    for k in range(nu_g + 1):
        if annihilator(dc[k], "one_forms") != V[k]:
            _fail("V^%d is not the annihilator of g^%d" % (k, k))

    # three readings of the step of J
    h_step = H.step
    if not (A.step == W.step == h_step):
        _fail("step of J disagrees: a %s, W %s, h %s" % (A.step, W.step, h_step))
    nu_J = A.step
    nilpotent = nu_J is not None
    last = max(len(W), len(H), len(A))
    for k in range(last + 1):
        Wk = with_conjugate(W[k])
        if annihilator(Wk, "dual") != H[k]:
            _fail("annihilator of W^%d + conj differs from h^%d" % (k, k))
        if not Wk.is_subspace_of(V[k]):
            _fail("W^%d + conj not inside V^%d" % (k, k))
        if not A[k].is_subspace_of(uc[k]):
            _fail("a_%d not inside g_%d" % (k, k))
        g_k = dc[k]
        gJ = g_k + g_k.map(lambda v: apply_J(v, n))
        if not gJ.is_subspace_of(H[k]):
            _fail("g^%d + J g^%d not inside h^%d" % (k, k, k))
    for S in list(V.terms) + list(A.terms) + list(H.terms) + list(dc.terms) + list(uc.terms):
        if conjugate_subspace(S) != S:
            _fail("a real series term is not conjugation-stable")

    inclusions = []
    if nilpotent:
        if not nu_g <= nu_J <= n:
            _fail("step bounds violated: nu(g)=%d nu(J)=%d n=%d" % (nu_g, nu_J, n))
        if nu_g == 2 and not 2 <= nu_J <= 3:
            _fail("two-step algebra with nu(J)=%d" % nu_J)
        for k in range(nu_J + 1):
            Wk = with_conjugate(W[k])
            Q = dual_of_quotient(A[nu_J - k])
            if not Q.is_subspace_of(Wk):
                _fail("(g/a_%d)* not inside W^%d + conj" % (nu_J - k, k))
            inclusions.append((k, "equal" if Q == Wk else "strict"))
            if k <= nu_J - 1:
                Q2 = dual_of_quotient(A[nu_J - k - 1])
                if Q2.is_subspace_of(Wk):
                    _fail("(g/a_%d)* unexpectedly inside W^%d + conj" % (nu_J - k - 1, k))
            if not H[k].is_subspace_of(A[nu_J - k]):
                _fail("h^%d not inside a_%d" % (k, nu_J - k))
    for S in A.terms + H.terms:
        if not all(S.contains(apply_J(r, n)) for r in S.basis()):
            _fail("J-compatible series term is not J-invariant")

    if cross_check:
        for k in range(1, len(V)):
            if kernel_by_contraction(alg, V[k - 1], list(range(2 * n))) != V[k]:
                _fail("contraction route disagrees on V^%d" % k)
        for k in range(1, len(W)):
            if kernel_by_contraction(alg, with_conjugate(W[k - 1]), list(range(n))) != W[k]:
                _fail("contraction route disagrees on W^%d" % k)

    cl = Classification(n=n, nu_g=nu_g, mu_J=W.step, nu_J=nu_J, nilpotent_J=nilpotent,
                        maxn=(nu_J == n), chains={"descending_central": dc,
                                                  "ascending_central": uc, "V": V, "W": W,
                                                  "a": A, "h": H},
                        inclusions=tuple(inclusions))
    alg.cache[("classify", cross_check, adapted)] = cl
    return cl
