"""
Normal forms for complex structures of maximal nilpotency step (nu(J) = n).

    triangular_coframe    coframe adapted to the W filtration
    admissible_normalize  every generator either satisfies dw + c(dw) = 0
                          ("Dependent") or has d independent of the lower
                          differentials ("Independent")
    strictly_admissible   for 3-step algebras: as many generators as
                          possible moved into V^2, plus a labeled V^2 basis
    structure_report      Betti number, derived-algebra dimensions, bounds

Indices in the public results (dpt, flags, labels) are 1-based like the
generator names w1..wn.  Every step checks the facts it relies on and
raises an InternalError when one fails.
"""

from dataclasses import dataclass
from typing import Optional

from .algebra import change_coframe
from .errors import (NotMaxN, PreconditionFailed, InternalConsistencyError,
                     InternalContradiction, StructureTheoremViolation)
from .exact import ONE, ZERO, I, Echelon, Matrix, Subspace, gq, axpy, solve_in_span, left_kernel
from .forms import OneForm, conjugate_form
from .series import descending_central, v_series, w_series

__all__ = ["AdmissibleCoframe", "StructureReport", "triangular_coframe",
           "admissible_normalize", "dpt", "dependence_flags", "v1_basis",
           "strictly_admissible", "structure_report", "coefficient_pattern_violations",
           "v2_membership_violations", "explicit_v2_shift", "v2_membership_predicate",
           "parity_violations", "betti_bounds"]

DEPENDENT = "Dependent"
INDEPENDENT = "Independent"


@dataclass(frozen=True)
class AdmissibleCoframe:
    base: object                    # CoframeAlgebra in the admissible coframe
    dpt: frozenset                  # 1-based indices flagged Dependent
    flags: tuple                    # flags[k-1] for generator wk
    transform: Matrix               # base coframe = transform @ input coframe

    @property
    def n(self):
        return self.base.n


@dataclass(frozen=True)
class StructureReport:
    n: int
    maxn: bool
    nu_g: int
    b1: int
    dim_g1: int
    dim_g2: int
    algebraic_dimension: int
    dpt: Optional[frozenset] = None
    parity_anchor: Optional[bool] = None       # is n-2 in dpt
    bounds_ok: Optional[bool] = None
    bounds: Optional[dict] = None
    v2_basis: Optional[tuple] = None           # ((label, OneForm), ...)
    case_tag: Optional[str] = None
    coframe: Optional[AdmissibleCoframe] = None

    @property
    def full(self):
        return self.bounds_ok is not None


# ---------------------------------------------------------------------------
# small helpers

def _require_maxn(alg):
    # the W step is the step of J; classify() checks it against the other two
    step = w_series(alg).step
    if step != alg.n:
        raise NotMaxN("nu(J) = %s but n = %d: not of maximal step" % (step, alg.n))


def _unit_row(n, k):
    return [ONE if j == k else ZERO for j in range(n)]


def _step(n, k, row):
    """Identity except row k (0-based), which becomes the given sparse row."""
    rows = [_unit_row(n, j) for j in range(n)]
    rows[k] = [row.get(j, ZERO) for j in range(n)]
    return Matrix(rows)


def _apply(state, M):
    alg, T = state
    return change_coframe(alg, M, provenance=alg.provenance), M @ T


def _gen_form(n, k, bar=False):
    return OneForm._make(n, {(n if bar else 0) + k - 1: ONE})


def _real_form(n, k):
    return OneForm._make(n, {k - 1: ONE, n + k - 1: ONE})


def _label(k, kind):
    return {"hol": "w%d" % k, "bar": "c(w%d)" % k, "real": "w%d+c(w%d)" % (k, k)}[kind]


# ---------------------------------------------------------------------------
# triangular coframe

def triangular_coframe(alg):
    """Coframe with span{w1..wk} = W^k; dwk involves only indices below k."""
    _require_maxn(alg)
    out, M = alg.cache["w_adapted"]
    if M == Matrix.identity(alg.n):
        out = alg
    _check_triangular(out)
    out.cache["triangular_transform"] = M
    return out


def _check_triangular(alg):
    n = alg.n
    for k, f in enumerate(alg.d_table, 1):
        allowed = set(range(k - 1)) | set(range(n, n + k - 1))
        if any(a not in allowed or b not in allowed for a, b in f.coords):
            raise InternalConsistencyError("dw%d involves an index not below %d" % (k, k))
        if k >= 2 and not any(k - 2 in key or n + k - 2 in key for key in f.coords):
            raise InternalConsistencyError("dw%d misses index %d" % (k, k - 1))


# ---------------------------------------------------------------------------
# dependence test

def _dependence(rdf, rdfb):
    """Given reduced d(wk) and d(c(wk)) return u with rdf + u*rdfb = 0, or None."""
    if not rdf and not rdfb:
        return "both"
    if not rdf or not rdfb:
        return "one"
    p = min(rdf)
    if p not in rdfb:
        return None
    lam = rdf[p] / rdfb[p]
    diff = dict(rdf)
    axpy(diff, -lam, rdfb)
    return -lam if not diff else None


def dependence_flags(alg):
    """Dependent/Independent per generator by the rank test against the lower
    differentials (no normalization)."""
    n = alg.n
    lower = Echelon()
    flags = []
    for k in range(n):
        df = alg.images[k].coords
        dfb = alg.images[n + k].coords
        rdf, _ = lower.reduce(df)
        rdfb, _ = lower.reduce(dfb)
        if k == 0 and not df:
            flags.append(DEPENDENT)
        else:
            u = _dependence(rdf, rdfb)
            flags.append(INDEPENDENT if u is None else DEPENDENT)
        lower.add(df)
        lower.add(dfb)
    return tuple(flags)


def _unit_ratio_scale(u):
    """c with conj(c)/c = u for |u| = 1, kept inside Q(i)."""
    if u == ONE:
        return ONE
    if u == -ONE:
        return I
    return ONE + u.conjugate()


# ---------------------------------------------------------------------------
# admissible coframe

def admissible_normalize(alg):
    """Admissible coframe with dw1 = 0, dw2 = w1^c(w1) and no w1^c(w1)
    summand in dwk for k >= 3."""
    tri = triangular_coframe(alg)
    n = alg.n
    state = (tri, tri.cache["triangular_transform"])
    flags = []
    for k in range(n):
        cur = state[0]
        df = cur.images[k].coords
        if k == 0:
            if df:
                raise InternalConsistencyError("dw1 is not zero in a triangular coframe")
            flags.append(DEPENDENT)
            continue
        lower = Echelon()
        gens = []
        for i in range(k):
            for f in (cur.images[i].coords, cur.images[n + i].coords):
                gens.append(f)
                lower.add(f)
        rdf, _ = lower.reduce(df)
        rdfb, _ = lower.reduce(cur.images[n + k].coords)
        u = _dependence(rdf, rdfb)
        if u is None:
            flags.append(INDEPENDENT)
            continue
        if u in ("both", "one") or u.norm() != ONE:
            raise InternalContradiction(
                "dependence test for w%d gives coefficients of different modulus" % (k + 1))
        c = _unit_ratio_scale(u)
        total = {}
        axpy(total, c, df)
        axpy(total, c.conjugate(), cur.images[n + k].coords)
        sol = solve_in_span(total, gens)
        if sol is None:
            raise InternalContradiction("w%d: real part of d not in the lower span" % (k + 1))
        row = {k: c}
        for i in range(k):
            a, b = sol[2 * i], sol[2 * i + 1]
            s = (a + b.conjugate()) / 2
            if s:
                row[i] = -s
        state = _apply(state, _step(n, k, row))
        f = state[0].d_table[k]
        if f + conjugate_form(f):
            raise InternalContradiction("w%d: dw + c(dw) did not vanish" % (k + 1))
        flags.append(DEPENDENT)
    state = _convention(state)
    base, T = state
    flags = tuple(flags)
    if dependence_flags(base) != flags:
        raise InternalConsistencyError("dependence flags changed during normalization")
    _check_admissible(base, flags)
    d = frozenset(k + 1 for k, f in enumerate(flags) if f == DEPENDENT)
    return AdmissibleCoframe(base=base, dpt=d, flags=flags, transform=T)


def _convention(state):
    """Scale w2 so that dw2 = w1^c(w1), then strip w1^c(w1) from dwk, k >= 3."""
    alg = state[0]
    n = alg.n
    if n < 2:
        return state
    key = (0, n)
    f2 = alg.d_table[1]
    B = f2.coords.get(key)
    if not B or set(f2.coords) != {key} or not B.is_real():
        raise InternalContradiction("dw2 is not a real multiple of w1^c(w1)")
    rows = [_unit_row(n, j) for j in range(n)]
    rows[1][1] = B.inverse()
    for k in range(2, n):
        c = alg.d_table[k].coords.get(key)
        if c:
            rows[k][1] = -c / B
    M = Matrix(rows)
    if M == Matrix.identity(n):
        return state
    return _apply(state, M)


def _check_admissible(alg, flags):
    n = alg.n
    for k, fl in enumerate(flags):
        f = alg.d_table[k]
        if fl == DEPENDENT and f + conjugate_form(f):
            raise InternalConsistencyError("w%d flagged Dependent but dw + c(dw) != 0" % (k + 1))
    if n >= 1 and (flags[0] != DEPENDENT or alg.d_table[0]):
        raise InternalConsistencyError("dw1 must vanish")
    if n >= 2:
        if flags[1] != DEPENDENT or alg.d_table[1].coords != {(0, n): ONE}:
            raise InternalConsistencyError("dw2 must equal w1^c(w1)")
        for k in range(2, n):
            if (0, n) in alg.d_table[k].coords:
                raise InternalConsistencyError("dw%d keeps a w1^c(w1) summand" % (k + 1))


def dpt(alg):
    """1-based indices of the Dependent generators of an admissible coframe."""
    return admissible_normalize(alg).dpt


def v1_basis(adm):
    """Labeled basis of V^1: w1, c(w1) and wk + c(wk) for dependent k >= 2."""
    n = adm.n
    out = [(_label(1, "hol"), _gen_form(n, 1)), (_label(1, "bar"), _gen_form(n, 1, True))]
    for k in sorted(adm.dpt):
        if k >= 2:
            out.append((_label(k, "real"), _real_form(n, k)))
    V1 = v_series(adm.base)[1]
    S = Subspace.span("one_forms", n, 2 * n, [f for _, f in out])
    if S != V1 or S.dim != len(out):
        raise StructureTheoremViolation("closed forms are not spanned by the expected basis")
    return tuple(out)


# ---------------------------------------------------------------------------
# coefficient patterns of an admissible coframe

def _A(f, n, i, j):
    """Coefficient of wi^wj (1-based, i < j)."""
    return f.coords.get((i - 1, j - 1), ZERO)


def _B(f, n, i, j):
    """Coefficient of wi^c(wj) (1-based)."""
    return f.coords.get((i - 1, n + j - 1), ZERO)


def coefficient_pattern_violations(adm):
    """Forced vanishing and symmetry of structure constants.

    Always:           B^k_{k-1,k-1} = 0 and B^k_{i,k-1} = 0 for 2 <= i <= k-2.
    For dependent k:  no (2,0) part, B^k_{k-1,i} = 0 for 2 <= i <= k-2,
                      B^k_{1,k-1} = conj(B^k_{k-1,1}) != 0, B^k_ij = conj(B^k_ji).
    Returns a list of readable failures (empty when all hold).
    """
    base, n = adm.base, adm.n
    bad = []
    for k in range(3, n + 1):
        f = base.d_table[k - 1]
        if _B(f, n, k - 1, k - 1):
            bad.append("B^%d_{%d,%d} != 0" % (k, k - 1, k - 1))
        for i in range(2, k - 1):
            if _B(f, n, i, k - 1):
                bad.append("B^%d_{%d,%d} != 0" % (k, i, k - 1))
        if k not in adm.dpt:
            continue
        if f.part((2, 0)):
            bad.append("dw%d has a (2,0) part" % k)
        for i in range(2, k - 1):
            if _B(f, n, k - 1, i):
                bad.append("B^%d_{%d,%d} != 0" % (k, k - 1, i))
        b1 = _B(f, n, 1, k - 1)
        if not b1 or b1 != _B(f, n, k - 1, 1).conjugate():
            bad.append("B^%d_{1,%d} is zero or not conj(B^%d_{%d,1})" % (k, k - 1, k, k - 1))
        for i in range(1, k):
            for j in range(1, k):
                if _B(f, n, i, j) != _B(f, n, j, i).conjugate():
                    bad.append("B^%d_{%d,%d} != conj(B^%d_{%d,%d})" % (k, i, j, k, j, i))
    return bad


def _is_v2_shape(f, n, k, d):
    """dwk = sum_{j in d, 2 <= j < k} a_j w1^(wj + c(wj)) with a_{k-1} != 0."""
    c = dict(f.coords)
    for j in range(2, k):
        a = c.pop((0, j - 1), ZERO)
        b = c.pop((0, n + j - 1), ZERO)
        if a != b or (a and j not in d):
            return False
        if j == k - 1 and not a:
            return False
    return not c


def v2_membership_violations(adm):
    """wk in V^2 exactly when dwk has the shape above (3 <= k <= n); and
    then k-1 is dependent, k is not, and w(k+1) is not in V^2."""
    base, n, d = adm.base, adm.n, adm.dpt
    V2 = v_series(base)[2]
    inside = {k: V2.contains(_gen_form(n, k).coords) for k in range(1, n + 1)}
    bad = []
    for k in range(3, n + 1):
        shape = _is_v2_shape(base.d_table[k - 1], n, k, d)
        if inside[k] != shape:
            bad.append("w%d: membership %s but shape %s" % (k, inside[k], shape))
        if inside[k]:
            if k - 1 not in d or k in d or (k < n and inside[k + 1]):
                bad.append("w%d in V^2 without the implied dependence pattern" % k)
    return bad


def v2_membership_predicate(d, n, a, b):
    """Predicted membership of sum_{k <= n-2} a_k wk + b_k c(wk) in V^2 for a
    strictly admissible coframe: a_k = b_k for dependent 3 <= k <= n-2.
    a and b are 1-based dicts (missing entries are zero)."""
    return all(gq(a.get(k, 0)) == gq(b.get(k, 0)) for k in d if 3 <= k <= n - 2)


def parity_violations(d, n):
    """Alternation of the dependent set for 3-step algebras with n >= 5."""
    bad = []
    for k in range(3, n - 2):
        if k not in d and k + 1 not in d:
            bad.append("%d and %d both independent" % (k, k + 1))
    for k in range(3, n):
        if k in d and k + 1 in d:
            bad.append("%d and %d both dependent" % (k, k + 1))
    anchor = (n - 2) in d
    for k in range(3, n - 1):
        same = (k - (n - 2)) % 2 == 0
        if (k in d) != (same == anchor):
            bad.append("%d breaks the parity anchored at %d" % (k, n - 2))
    return bad


def explicit_v2_shift(adm, k):
    """Closed-form shift for an independent 3 <= k <= n-2:
    wk + sum_{i<k} c_i wi with c_i = B^{k+1}_{i,1} / B^{k+1}_{k,1}, read off
    from the contraction of d w(k+1) with the conjugate of the first frame
    vector."""
    base, n = adm.base, adm.n
    f = base.d_table[k]
    den = _B(f, n, k, 1)
    if not den:
        raise StructureTheoremViolation("B^%d_{%d,1} vanishes" % (k + 1, k))
    row = {k - 1: ONE}
    for i in range(1, k):
        c = _B(f, n, i, 1) / den
        if c:
            row[i - 1] = c
    return OneForm._make(n, row)


# ---------------------------------------------------------------------------
# strictly admissible coframe

def _holo_solve(alg, V2, k):
    """Row {i: c_i} with wk + sum_{i<k} c_i wi in V^2, or None (0-based keys)."""
    n = alg.n
    gens = [V2.reduce({i: ONE}) for i in range(k - 1)]
    target = V2.reduce({k - 1: -ONE})
    sol = solve_in_span(target, gens)
    if sol is None:
        return None
    row = {k - 1: ONE}
    for i, c in enumerate(sol):
        if c:
            row[i] = c
    return row


def _real_solve(alg, V2, k):
    """Row alpha = sum_{i<=k} z_i wi with z_k != 0 and alpha + c(alpha) in V^2."""
    n = alg.n
    vecs = []
    for i in range(k):
        vecs.append(V2.reduce({i: ONE, n + i: ONE}))
        vecs.append(V2.reduce({i: I, n + i: -I}))
    for x in left_kernel(vecs):
        for part in (_re_part(x), _im_part(x)):
            xk, yk = part.get(2 * (k - 1), ZERO), part.get(2 * k - 1, ZERO)
            if xk or yk:
                row = {}
                for i in range(k):
                    z = part.get(2 * i, ZERO) + I * part.get(2 * i + 1, ZERO)
                    if z:
                        row[i] = z
                return row
    return None


def _re_part(x):
    return {i: gq((c.re, 0)) for i, c in x.items() if c.re}


def _im_part(x):
    return {i: gq((c.im, 0)) for i, c in x.items() if c.im}


def _check_v2todpt(k, d):
    if k - 1 not in d:
        raise StructureTheoremViolation(
            "w%d + lower terms lies in V^2 although %d is independent" % (k, k - 1))


def _strip_w1w1(state):
    alg = state[0]
    n = alg.n
    rows = [_unit_row(n, j) for j in range(n)]
    for k in range(2, n):
        c = alg.d_table[k].coords.get((0, n))
        if c:
            rows[k][1] = -c
    M = Matrix(rows)
    return state if M == Matrix.identity(n) else _apply(state, M)


def _normalize_top(state, d):
    """After w(n-1) + c(w(n-1)) enters V^2: check dwn = A w1^w(n-1) + A w1^c(w(n-1))
    + lower and scale wn by 1/A."""
    alg = state[0]
    n = alg.n
    f = alg.d_table[n - 1]
    A = f.coords.get((0, n - 2), ZERO)
    B = f.coords.get((0, 2 * n - 2), ZERO)
    others = [key for key in f.coords if (n - 2 in key or 2 * n - 2 in key)
              and key not in ((0, n - 2), (0, 2 * n - 2))]
    if not A or A != B or others:
        raise StructureTheoremViolation("dw%d does not pair w1 with w%d + c(w%d)" % (n, n - 1, n - 1))
    if n in d and not A.is_real():
        raise StructureTheoremViolation("complex rescaling of a dependent generator")
    if A == ONE:
        return state
    return _apply(state, _step(n, n - 1, {n - 1: A.inverse()}))


def strictly_admissible(adm):
    """Strictly admissible coframe and structure report for 3-step algebras
    with nu(J) = n >= 5."""
    base, n, d = adm.base, adm.n, adm.dpt
    nu_J, nu_g = w_series(base).step, descending_central(base).step
    if nu_J != n or nu_g != 3 or n < 5:
        raise PreconditionFailed("needs nu(J) = n, nu(g) = 3 and n >= 5 (got nu(J)=%s, "
                                 "nu(g)=%s, n=%d)" % (nu_J, nu_g, n))
    bad = parity_violations(d, n)
    if bad:
        raise StructureTheoremViolation("dependent set: " + "; ".join(bad))
    state = (base, adm.transform)

    # middle indices: independent wk moved into V^2
    V2 = v_series(base)[2]
    rows = [_unit_row(n, j) for j in range(n)]
    for k in range(3, n - 1):
        if k in d:
            continue
        row = _holo_solve(base, V2, k)
        if row is None:
            raise StructureTheoremViolation("w%d cannot be moved into V^2" % k)
        _check_v2todpt(k, d)
        if not V2.contains(explicit_v2_shift(adm, k).coords):
            raise StructureTheoremViolation("closed-form shift of w%d is not in V^2" % k)
        rows[k - 1] = [row.get(j, ZERO) for j in range(n)]
    M = Matrix(rows)
    if M != Matrix.identity(n):
        state = _apply(state, M)
    alg = state[0]
    V2 = v_series(alg)[2]
    for k in range(3, n - 1):
        if (k not in d) != V2.contains({k - 1: ONE}):
            raise StructureTheoremViolation("w%d: V^2 membership disagrees with dependence" % k)

    # top two indices
    top = {}            # index -> "hol" | "real" | None
    if n - 2 in d:
        if n - 1 in d or V2.contains({n - 1: ONE}):
            raise StructureTheoremViolation("n-2 dependent forces n-1 independent, wn outside V^2")
        row = _holo_solve(alg, V2, n - 1)
        if row is not None:
            _check_v2todpt(n - 1, d)
            state = _apply(state, _step(n, n - 2, row))
            top[n - 1], sub = "hol", "a"
        else:
            row = _real_solve(alg, V2, n - 1)
            if row is None:
                raise StructureTheoremViolation("no real combination for w%d" % (n - 1))
            state = _apply(state, _step(n, n - 2, row))
            state = _normalize_top(state, d)
            top[n - 1], sub = "real", "b"
        alg = state[0]
        V2 = v_series(alg)[2]
        if n in d:
            if sub != "a":
                raise StructureTheoremViolation("n dependent needs w%d in V^2" % (n - 1))
            top[n], tag = "real", "n-2 dependent (1)"
        elif sub == "a":
            state, top[n] = _adjust_last(state, V2, d)
            tag = "n-2 dependent (2a-i)" if top[n] else "n-2 dependent (2a-ii)"
        else:
            top[n], tag = None, "n-2 dependent (2b)"
    else:
        if n in d:
            raise StructureTheoremViolation("n-2 independent forces n independent")
        if _holo_solve(alg, V2, n - 1) is not None:
            raise StructureTheoremViolation("w%d + lower terms in V^2 with n-2 independent" % (n - 1))
        if n - 1 not in d:
            row = _real_solve(alg, V2, n - 1)
            if row is None:
                raise StructureTheoremViolation("no real combination for w%d" % (n - 1))
            state = _apply(state, _step(n, n - 2, row))
        elif not V2.contains({n - 2: ONE, 2 * n - 2: ONE}):
            raise InternalConsistencyError("dependent w%d has w + c(w) outside V^2" % (n - 1))
        state = _normalize_top(state, d)
        top[n - 1] = "real"
        alg = state[0]
        V2 = v_series(alg)[2]
        if n - 1 in d:
            state, top[n] = _adjust_last(state, V2, d)
            tag = "n-2 independent (1-%s)" % {None: "i", "hol": "ii", "real": "iii"}[top[n]]
        else:
            top[n], tag = None, "n-2 independent (2)"

    state = _strip_w1w1(state)
    alg, T = state
    flags = dependence_flags(alg)
    if flags != adm.flags:
        raise StructureTheoremViolation("dependence flags changed in the strict coframe")
    _check_admissible(alg, flags)
    out = AdmissibleCoframe(base=alg, dpt=d, flags=flags, transform=T)

    basis = []
    for k in range(1, n + 1):
        kind = "hol" if k <= 2 or (k <= n - 2 and k not in d) else "real"
        if k <= n - 2:
            kinds = ("hol", "bar") if kind == "hol" else ("real",)
        else:
            t = top.get(k)
            kinds = () if t is None else (("hol", "bar") if t == "hol" else ("real",))
        for kd in kinds:
            f = _real_form(n, k) if kd == "real" else _gen_form(n, k, kd == "bar")
            basis.append((_label(k, kd), f))
    V2 = v_series(alg)[2]
    S = Subspace.span("one_forms", n, 2 * n, [f for _, f in basis])
    if S != V2 or S.dim != len(basis):
        raise StructureTheoremViolation("labeled basis does not span V^2 (%d vs %d)"
                                        % (S.dim, V2.dim))
    report = _report(alg, True, nu_g, d, out, tuple(basis), tag)
    return out, report


def _adjust_last(state, V2, d):
    """Try to move wn (holomorphically, else its real part) into V^2."""
    alg = state[0]
    n = alg.n
    row = _holo_solve(alg, V2, n)
    if row is not None:
        _check_v2todpt(n, d)
        return _apply(state, _step(n, n - 1, row)), "hol"
    if n in d:
        return state, "real"
    row = _real_solve(alg, V2, n)
    if row is not None:
        return _apply(state, _step(n, n - 1, row)), "real"
    return state, None


# ---------------------------------------------------------------------------
# report

def betti_bounds(n):
    """Closed ranges for dim g^1, dim g^2 and b1."""
    return {"dim_g1": ((3 * n - 4) // 2, (3 * n - 1) // 2),
            "dim_g2": ((n - 2) // 2, (n + 3) // 2),
            "b1": ((n + 2) // 2, (n + 5) // 2)}


def _report(alg, maxn, nu_g, d, adm, basis, tag):
    n = alg.n
    V = v_series(alg)
    b1 = V[1].dim
    full = maxn and nu_g == 3 and n >= 5
    vals = {"b1": b1, "dim_g1": 2 * n - b1, "dim_g2": 2 * n - V[2].dim}
    bounds = betti_bounds(n) if full else None
    ok = all(lo <= vals[key] <= hi for key, (lo, hi) in bounds.items()) if full else None
    if d is not None and b1 != len(d) + 1:
        raise StructureTheoremViolation("b1 = %d but %d dependent generators" % (b1, len(d)))
    return StructureReport(
        n=n, maxn=maxn, nu_g=nu_g, b1=b1, dim_g1=vals["dim_g1"],
        dim_g2=vals["dim_g2"],
        algebraic_dimension=1 if maxn else w_series(alg)[1].dim,
        dpt=d, parity_anchor=(n - 2 in d) if d is not None and n >= 3 else None,
        bounds_ok=ok, bounds=bounds, v2_basis=basis, case_tag=tag, coframe=adm)


def structure_report(alg):
    """Full report for 3-step algebras with nu(J) = n >= 5, partial otherwise."""
    if w_series(alg).step != alg.n:
        return _report(alg, False, descending_central(alg).step, None, None, None, None)
    adm = admissible_normalize(alg)
    # the step of g does not depend on the coframe; the normalized one is cheaper
    nu_g = descending_central(adm.base).step
    if nu_g == 3 and alg.n >= 5:
        return strictly_admissible(adm)[1]
    v1_basis(adm)
    return _report(alg, True, nu_g, adm.dpt, adm, None, None)
