"""
Example algebras and a seeded coframe-change fuzzer.

``gen_family("I", n)`` and ``gen_family("II", n)`` build the two families
of complex structures whose nilpotency step equals the complex dimension
while the Lie algebra stays 3-step.  Both start with dw1 = 0 and
dw2 = w1^c(w1); beyond that the two kinds of equation alternate, in
opposite phase:

    "conjugate pair"  dwj = i*(w{j-1}^c(w1) - w1^c(w{j-1}))
    "real sum"        dwj = w1^(w{j-1} + c(w{j-1}))
"""

import random
from dataclasses import dataclass, field

from .algebra import CoframeAlgebra, change_coframe
from .exact import GaussianRational, Matrix, ONE, ZERO, I, gq
from .forms import TwoForm

__all__ = ["FamilyTag", "gen_family", "fixture_cfgu_example4", "abelian",
           "FuzzPlan", "fuzz_transform", "random_coframe_matrix", "DEFAULT_POOL"]


@dataclass(frozen=True)
class FamilyTag:
    family: str
    n: int

    def __post_init__(self):
        if self.family not in ("I", "II"):
            raise ValueError("family must be 'I' or 'II'")
        if self.n < 1:
            raise ValueError("n must be at least 1")


def _pair_term(n, j):
    # i*(w_{j-1} ^ c(w1) - w1 ^ c(w_{j-1})), 0-based generator indices
    p = j - 2
    return TwoForm.from_pairs(n, [(I, p, n), (-I, 0, n + p)])


def _sum_term(n, j):
    # w1 ^ (w_{j-1} + c(w_{j-1}))
    p = j - 2
    return TwoForm.from_pairs(n, [(ONE, 0, p), (ONE, 0, n + p)])


def gen_family(tag, n=None):
    """gen_family(FamilyTag("I", 6)) or gen_family("I", 6)."""
    if n is not None:
        tag = FamilyTag(tag, n)
    n = tag.n
    table = []
    for j in range(1, n + 1):
        if j == 1:
            table.append(TwoForm(n))
        elif j == 2:
            table.append(TwoForm.from_pairs(n, [(ONE, 0, n)]))
        elif (j % 2 == 1) == (tag.family == "I"):
            table.append(_pair_term(n, j))
        else:
            table.append(_sum_term(n, j))
    return CoframeAlgebra(n, table, name="type-%s n=%d" % (tag.family, n), provenance="generated")


def fixture_cfgu_example4():
    """Five-dimensional example with nilpotency step 4 for J but not maximal."""
    n = 5
    h = GaussianRational("1/2")
    table = [
        TwoForm(n),
        TwoForm.from_pairs(n, [(1, 0, 5)]),
        TwoForm.from_pairs(n, [(-1, 0, 5)]),
        TwoForm.from_pairs(n, [(1, 0, 1), (1, 0, 6)]),
        TwoForm.from_pairs(n, [(-h, 0, 1), (-h, 0, 2), (1, 0, 3), (h, 0, 6), (h, 0, 7)]),
    ]
    return CoframeAlgebra(n, table, name="cfgu-example-4", provenance="generated")


def abelian(n):
    return CoframeAlgebra(n, [TwoForm(n) for _ in range(n)], name="abelian n=%d" % n,
                          provenance="generated")


# ---------------------------------------------------------------------------
# fuzzing

DEFAULT_POOL = tuple(gq(x) for x in (
    0, 1, -1, 2, -2, (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1), "1/2", "-1/2"))


@dataclass(frozen=True)
class FuzzPlan:
    seed: int = 0
    iterations: int = 10
    transform_kind: str = "full"        # "full", "triangular" or "identity"
    coefficient_pool: tuple = field(default=DEFAULT_POOL)


def random_coframe_matrix(rng, n, kind="full", pool=DEFAULT_POOL):
    """A random invertible n x n matrix with entries from the pool."""
    nonzero = [x for x in pool if x]
    if kind == "identity":
        return Matrix.identity(n)
    if kind == "triangular":
        rows = [[(rng.choice(nonzero) if i == j else rng.choice(pool)) if j <= i else ZERO
                 for j in range(n)] for i in range(n)]
        return Matrix(rows)
    if kind != "full":
        raise ValueError("unknown transform kind %r" % kind)
    while True:
        m = Matrix([[rng.choice(pool) for _ in range(n)] for _ in range(n)])
        try:
            m.inverse()
        except ZeroDivisionError:
            continue
        return m


def fuzz_transform(alg, plan):
    """Yield plan.iterations coframe changes of alg, reproducibly from the seed."""
    rng = random.Random(plan.seed)
    for it in range(plan.iterations):
        M = random_coframe_matrix(rng, alg.n, plan.transform_kind, plan.coefficient_pool)
        yield change_coframe(alg, M, provenance="fuzz seed=%d iter=%d kind=%s"
                             % (plan.seed, it, plan.transform_kind))
