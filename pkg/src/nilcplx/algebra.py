"""
Validated nilpotent Lie algebras with a complex structure, given by the
differentials of a (1,0)-coframe.

The complex structure is never stored: the holomorphic generators span the
+i eigenspace on forms, and on vectors J multiplies the first n dual-frame
coordinates by i and the last n by -i.
"""

from .dsl import ParsedPresentation, print_canonical
from .errors import (JacobiViolation, NotIntegrable, SingularCoframeChange,
                     NotAnIdeal, NotASubalgebra, InternalConsistencyError)
from .exact import (ONE, ZERO, I, Matrix, Subspace, gq, axpy, solve_in_span,
                    annihilator, conjugate_subspace)
from .forms import (OneForm, TwoForm, ThreeForm, DualVector, conjugate_form,
                    wedge, substitute)

__all__ = ["CoframeAlgebra", "BracketTable", "validate", "d_one", "d_two",
           "brackets", "change_coframe", "quotient_by_ideal",
           "subalgebra_restrict", "apply_J", "conjugate_vector",
           "vector_space", "holomorphic_forms", "holomorphic_vectors",
           "is_J_invariant", "is_conjugation_stable"]


class CoframeAlgebra:
    """A pair (g, J) presented by d of each holomorphic generator.

    Construction checks integrability (no (0,2) parts) and d^2 = 0, so every
    instance is valid.
    """

    __slots__ = ("n", "d_table", "name", "provenance", "_images", "_brackets", "cache")

    def __init__(self, n, d_table, name=None, provenance="constructed", _checked=True):
        d_table = tuple(d_table)
        if len(d_table) != n:
            raise ValueError("expected %d differentials, got %d" % (n, len(d_table)))
        for f in d_table:
            if not isinstance(f, TwoForm) or f.n != n:
                raise ValueError("differentials must be 2-forms over n=%d" % n)
        self.n = n
        self.d_table = d_table
        self.name = name
        self.provenance = provenance
        self._images = d_table + tuple(conjugate_form(f) for f in d_table)
        self._brackets = None
        self.cache = {}
        if not _checked:
            return
        for k, f in enumerate(d_table, 1):
            p02 = f.part((0, 2))
            if p02:
                raise NotIntegrable(k, p02)
        for k, f in enumerate(d_table, 1):
            r = self.d_two(f)
            if r:
                raise JacobiViolation(k, r)

    # differential ----------------------------------------------------------
    @property
    def images(self):
        """d of all 2n generators (holomorphic first, then conjugates)."""
        return self._images

    def d_one(self, f):
        c = {}
        im = self._images
        for a, x in f.coords.items():
            axpy(c, x, im[a].coords)
        return TwoForm._make(self.n, c)

    def d_two(self, f):
        c = {}
        im = self._images
        for (a, b), x in f.coords.items():
            # d(e_a ^ e_b) = d(e_a) ^ e_b - e_a ^ d(e_b)
            for (p, q), y in im[a].coords.items():
                _acc3(c, (p, q, b), x * y)
            for (p, q), y in im[b].coords.items():
                _acc3(c, (a, p, q), -(x * y))
        return ThreeForm._make(self.n, c)

    # structure ---------------------------------------------------------------
    def brackets(self):
        if self._brackets is None:
            self._brackets = BracketTable(self)
        return self._brackets

    def bracket(self, u, v):
        return self.brackets().bracket(u, v)

    def to_presentation(self):
        return ParsedPresentation.from_table(self.n, self.d_table, self.name)

    def canonical_text(self, comments=()):
        return print_canonical(self.to_presentation(), comments)

    def with_name(self, name, provenance=None):
        alg = object.__new__(CoframeAlgebra)
        alg.n, alg.d_table, alg.name = self.n, self.d_table, name
        alg.provenance = provenance or self.provenance
        alg._images, alg._brackets, alg.cache = self._images, self._brackets, {}
        return alg

    def __eq__(self, other):
        return isinstance(other, CoframeAlgebra) and self.n == other.n and self.d_table == other.d_table

    def __hash__(self):
        return hash((self.n, self.d_table))

    def __repr__(self):
        return "CoframeAlgebra(n=%d%s)" % (self.n, ", %r" % self.name if self.name else "")


def _acc3(c, key, s):
    a, b, d = key
    if a == b or b == d or a == d:
        return
    # sort three distinct ints, tracking parity
    sign = 1
    if a > b:
        a, b, sign = b, a, -sign
    if b > d:
        b, d, sign = d, b, -sign
        if a > b:
            a, b, sign = b, a, -sign
    k = (a, b, d)
    if sign < 0:
        s = -s
    y = c.get(k)
    if y is None:
        c[k] = s
    else:
        y = y + s
        if y:
            c[k] = y
        else:
            del c[k]


def validate(p):
    """Turn a parsed presentation into a CoframeAlgebra or raise a diagnostic."""
    return CoframeAlgebra(p.n, p.d_table, name=p.name, provenance="parsed")


def d_one(alg, f):
    return alg.d_one(f)


def d_two(alg, f):
    return alg.d_two(f)


# ---------------------------------------------------------------------------
# brackets and J

class BracketTable:
    """Brackets of dual-frame vectors from  alpha([u, v]) = -d alpha(u, v)."""

    def __init__(self, alg):
        self.n = n = alg.n
        table = {}
        for c, f in enumerate(alg.images):
            for key, x in f.coords.items():
                table.setdefault(key, {})[c] = -x
        self.table = table

    def basis_bracket(self, a, b):
        if a == b:
            return {}
        if a < b:
            return self.table.get((a, b), {})
        return {k: -x for k, x in self.table.get((b, a), {}).items()}

    def bracket_coords(self, u, v):
        out = {}
        table = self.table
        for a, x in u.items():
            for b, y in v.items():
                if a == b:
                    continue
                if a < b:
                    row = table.get((a, b))
                    s = x * y
                else:
                    row = table.get((b, a))
                    s = -(x * y)
                if row:
                    axpy(out, s, row)
        return out

    def bracket(self, u, v):
        return DualVector._make(self.n, self.bracket_coords(u.coords, v.coords))

    def jacobi_residuals(self):
        """Nonzero Jacobi sums over basis triples (empty for a Lie algebra)."""
        n2 = 2 * self.n
        bad = []
        for a in range(n2):
            for b in range(a + 1, n2):
                for c in range(b + 1, n2):
                    ea, eb, ec = {a: ONE}, {b: ONE}, {c: ONE}
                    s = {}
                    axpy(s, ONE, self.bracket_coords(ea, self.bracket_coords(eb, ec)))
                    axpy(s, ONE, self.bracket_coords(eb, self.bracket_coords(ec, ea)))
                    axpy(s, ONE, self.bracket_coords(ec, self.bracket_coords(ea, eb)))
                    if s:
                        bad.append(((a, b, c), s))
        return bad


def brackets(alg):
    return alg.brackets()


def apply_J(v, n):
    """J on vector coordinates: i on the holomorphic block, -i on the other."""
    mi = -I
    return {k: (I * x if k < n else mi * x) for k, x in v.items()}


def conjugate_vector(v, n):
    return {(k + n if k < n else k - n): x.conjugate() for k, x in v.items()}


def vector_space(n, vectors=()):
    return Subspace.span("dual", n, 2 * n, vectors)


def holomorphic_forms(n):
    return Subspace.full("one_forms", n, 2 * n, range(n))


def holomorphic_vectors(n):
    return Subspace.full("dual", n, 2 * n, range(n))


def is_conjugation_stable(S):
    return conjugate_subspace(S) == S


def is_J_invariant(S):
    return all(S.contains(apply_J(r, S.n)) for r in S.basis())


# ---------------------------------------------------------------------------
# coframe changes and derived algebras

def _as_matrix(M, n):
    if not isinstance(M, Matrix):
        M = Matrix(M)
    if M.shape != (n, n):
        raise ValueError("coframe change must be %dx%d" % (n, n))
    return M


def change_coframe(alg, M, provenance="transformed"):
    """Re-express alg in the coframe w'_k = sum_j M[k][j] w_j."""
    n = alg.n
    M = _as_matrix(M, n)
    try:
        N = M.inverse()
    except ZeroDivisionError:
        raise SingularCoframeChange("coframe change matrix is singular")
    # old generators written in the new coframe
    images = []
    for j in range(n):
        images.append(OneForm._make(n, {l: x for l, x in enumerate(N.rows[j]) if x}))
    for j in range(n):
        images.append(OneForm._make(n, {n + l: x.conjugate() for l, x in enumerate(N.rows[j]) if x}))
    table = []
    for k in range(n):
        old = {}
        for j, x in enumerate(M.rows[k]):
            if x:
                axpy(old, x, alg.d_table[j].coords)
        table.append(substitute(TwoForm._make(n, old), images))
    # a change of basis cannot break integrability or d^2 = 0
    return CoframeAlgebra(n, table, name=alg.name, provenance=provenance, _checked=False)


def _check_J_real(S, what, exc):
    if S.kind != "dual":
        raise exc("%s must be a subspace of vectors" % what)
    if not is_conjugation_stable(S):
        raise exc("%s is not stable under conjugation" % what)
    if not is_J_invariant(S):
        raise exc("%s is not J-invariant" % what)


def quotient_by_ideal(alg, ideal, name=None):
    """The quotient algebra, built on the annihilator of a J-invariant ideal."""
    n = alg.n
    _check_J_real(ideal, "ideal", NotAnIdeal)
    bt = alg.brackets()
    for r in ideal.basis():
        for b in range(2 * n):
            if not ideal.contains(bt.bracket_coords(r, {b: ONE})):
                raise NotAnIdeal("subspace does not absorb brackets")
    ann = annihilator(ideal, "one_forms")
    hol = ann & holomorphic_forms(n)
    rows = hol.basis()
    m = len(rows)
    if 2 * m != ann.dim:
        raise InternalConsistencyError("annihilator of a J-invariant ideal must split evenly")
    pivots = set(hol.pivots)
    full = [[r.get(j, ZERO) for j in range(n)] for r in rows]
    full += [[ONE if j == c else ZERO for j in range(n)] for c in range(n) if c not in pivots]
    moved = change_coframe(alg, full)
    keep = {a: a for a in range(m)}
    keep.update({n + a: m + a for a in range(m)})
    table = []
    for f in moved.d_table[:m]:
        c = {}
        for (a, b), x in f.coords.items():
            if a not in keep or b not in keep:
                raise InternalConsistencyError("quotient differential leaves the annihilator")
            c[(keep[a], keep[b])] = x
        table.append(TwoForm._make(m, c))
    return CoframeAlgebra(m, table, name=name, provenance="quotient")


def subalgebra_restrict(alg, sub, name=None):
    """Structure equations of a J-invariant subalgebra, from its brackets."""
    n = alg.n
    _check_J_real(sub, "subalgebra", NotASubalgebra)
    bt = alg.brackets()
    basis = sub.basis()
    for i, u in enumerate(basis):
        for v in basis[i + 1:]:
            if not sub.contains(bt.bracket_coords(u, v)):
                raise NotASubalgebra("subspace is not closed under brackets")
    hol = (sub & holomorphic_vectors(n)).basis()
    m = len(hol)
    frame = hol + [conjugate_vector(y, n) for y in hol]
    table = [dict() for _ in range(m)]
    for a in range(2 * m):
        for b in range(a + 1, 2 * m):
            br = bt.bracket_coords(frame[a], frame[b])
            if not br:
                continue
            coeffs = solve_in_span(br, frame)
            if coeffs is None:
                raise InternalConsistencyError("bracket escaped the subalgebra")
            for c in range(m):
                if coeffs[c]:
                    table[c][(a, b)] = -coeffs[c]
    return CoframeAlgebra(m, [TwoForm._make(m, t) for t in table], name=name,
                          provenance="subalgebra")
