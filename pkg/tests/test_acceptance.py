"""Acceptance suite: one or more tests per numbered criterion.

Test names start with test_criterion_NN so the summary hook in conftest can
print a single PASS/FAIL line per criterion at the end of the run.
"""

import random

import pytest

from nilcplx.algebra import change_coframe, quotient_by_ideal, subalgebra_restrict
from nilcplx.cli import analyze
from nilcplx.dsl import parse, print_canonical
from nilcplx.exact import ONE, I, gq, Subspace, annihilator
from nilcplx.families import (gen_family, fixture_cfgu_example4, abelian, FuzzPlan,
                              fuzz_transform, random_coframe_matrix, DEFAULT_POOL)
from nilcplx.forms import (OneForm, TwoForm, wedge, one_form_space, in_wedge_square_expand,
                           in_wedge_square_contract)
from nilcplx.maxn import (admissible_normalize, dpt, strictly_admissible, structure_report,
                          parity_violations, v2_membership_predicate, betti_bounds)
from nilcplx.series import classify, a_series, h_series, v_series, with_conjugate

from conftest import scramble, perturbed

FAMILIES = [(tag, n) for tag in ("I", "II") for n in range(3, 11)]


# 1 ---------------------------------------------------------------------------

def test_criterion_01_family_steps(detail):
    bad = []
    for tag, n in FAMILIES:
        r = analyze(gen_family(tag, n))
        want_g = 2 if (tag, n) == ("II", 3) else 3
        if (r.nu_J, r.maxn, r.nu_g) != (n, True, want_g):
            bad.append("%s,%d: nu_J=%s maxn=%s nu_g=%s" % (tag, n, r.nu_J, r.maxn, r.nu_g))
    detail("%d family members checked" % len(FAMILIES))
    assert bad == []


# 2 ---------------------------------------------------------------------------

def test_criterion_02_step_four_example(detail):
    alg = fixture_cfgu_example4()
    cl = classify(alg)
    A, W, H = cl.chains["a"], cl.chains["W"], cl.chains["h"]
    assert A.complex_dims[1:] == (1, 3, 4, 5)
    assert W.dims[1:] == (2, 3, 4, 5)
    assert W[1] == Subspace.span("one_forms", 5, 10, [{0: ONE}, {1: ONE, 2: ONE}])
    assert dict(cl.inclusions) == {0: "equal", 1: "strict", 2: "strict", 3: "equal",
                                   4: "equal"}
    assert A.step == W.step == H.step == cl.nu_J == 4 and not cl.maxn
    detail("inclusions: " + ", ".join("%d %s" % k for k in cl.inclusions))


# 3 ---------------------------------------------------------------------------

FIXTURES = ([gen_family(tag, n) for tag in ("I", "II") for n in range(1, 11)]
            + [fixture_cfgu_example4(), abelian(1), abelian(3),
               perturbed(5, 5, [(-1, 1, 5)]), perturbed(6, 6, [(-I, 0, 7)])])
FUZZ_BASES = ([gen_family(tag, n) for tag in ("I", "II") for n in range(2, 6)]
              + [fixture_cfgu_example4(), abelian(2), perturbed(5, 5, [(-1, 0, 1)])])


def _step_readings_agree(alg, adapted):
    cl = classify(alg, adapted=adapted)
    A, W, H = cl.chains["a"], cl.chains["W"], cl.chains["h"]
    if not A.step == W.step == H.step:
        return False
    return all(annihilator(with_conjugate(W[k]), "dual") == H[k]
               for k in range(max(len(W), len(H))))


def test_criterion_03_step_equivalence(detail):
    bad = [a.name for a in FIXTURES if not _step_readings_agree(a, adapted=False)]
    rng = random.Random(3)
    count = 0
    for i in range(200):
        base = FUZZ_BASES[i % len(FUZZ_BASES)]
        moved = change_coframe(base, random_coframe_matrix(rng, base.n))
        # half the presentations go through the direct route, half the adapted one
        if not _step_readings_agree(moved, adapted=bool(i % 2)):
            bad.append("%s fuzz %d" % (base.name, i))
        count += 1
    detail("%d fixtures, %d fuzzed presentations" % (len(FIXTURES), count))
    assert bad == []


# 4 ---------------------------------------------------------------------------

def _two_step_algebras():
    out = [gen_family("II", 3), gen_family("I", 2), gen_family("II", 2)]
    for tag, n in FAMILIES[:6] + FAMILIES[8:14]:
        g = gen_family(tag, n)
        A = a_series(g)
        for k in range(1, n + 1):
            q = quotient_by_ideal(g, A[n - k], name="%s,%d / a_%d" % (tag, n, n - k))
            if classify(q).nu_g == 2:
                out.append(q)
    rng = random.Random(4)
    for alg in list(out):
        for _ in range(5):
            out.append(change_coframe(alg, random_coframe_matrix(rng, alg.n)))
    return out


def test_criterion_04_two_step_bound(detail):
    algs = _two_step_algebras()
    seen = set()
    for alg in algs:
        cl = classify(alg)
        assert cl.nu_g == 2
        assert 2 <= cl.nu_J <= 3, alg.name
        seen.add(cl.nu_J)
    assert seen == {2, 3}
    detail("%d two-step presentations, nu(J) values seen: %s" % (len(algs), sorted(seen)))


# 5 ---------------------------------------------------------------------------

@pytest.mark.parametrize("tag", [("I", 6), ("II", 7), ("I", 9)], ids=lambda t: "%s%d" % t)
def test_criterion_05_dpt_invariance(tag, detail):
    alg = gen_family(*tag)
    ref = (dpt(alg), classify(alg).dims())
    bad = 0
    for seed in range(100):
        moved = scramble(alg, 5000 + seed)
        if (dpt(moved), classify(moved).dims()) != ref:
            bad += 1
    detail("%s,%d: 100 scrambles, Dpt %s" % (tag + (sorted(ref[0]),)))
    assert bad == 0


# 6 ---------------------------------------------------------------------------

def _sample_collection(rng, n, d, satisfy):
    """Coefficients a_k, b_k for k <= n-2 on either side of the criterion."""
    pool = list(DEFAULT_POOL)
    a = {k: rng.choice(pool) for k in range(1, n - 1)}
    b = {k: rng.choice(pool) for k in range(1, n - 1)}
    tied = [k for k in sorted(d) if 3 <= k <= n - 2]
    for k in tied:
        b[k] = a[k]
    if not satisfy:
        k = rng.choice(tied)
        b[k] = a[k] + rng.choice([x for x in pool if x])
    return a, b


@pytest.mark.parametrize("tag", [(t, n) for t in ("I", "II") for n in range(5, 13)],
                         ids=lambda t: "%s%d" % t)
def test_criterion_06_structure(tag, detail):
    alg = gen_family(*tag)
    n = alg.n
    rng = random.Random("%s%d" % tag)
    samples = 0
    for seed in range(20):
        moved = scramble(alg, 6000 + seed)
        strict, rep = strictly_admissible(admissible_normalize(moved))
        assert parity_violations(rep.dpt, n) == []
        V2 = v_series(strict.base)[2]
        for k in range(3, n - 1):
            assert V2.contains({k - 1: ONE}) == (k not in rep.dpt)
        # sampled membership: spread 50 collections over the scrambles
        quota = 50 // 20 + (1 if seed < 50 % 20 else 0)
        tied = [k for k in rep.dpt if 3 <= k <= n - 2]
        for j in range(quota):
            satisfy = (samples % 2 == 0) or not tied
            a, b = _sample_collection(rng, n, rep.dpt, satisfy)
            form = {}
            for k in a:
                if a[k]:
                    form[k - 1] = a[k]
                if b[k]:
                    form[n + k - 1] = b[k]
            assert V2.contains(form) == v2_membership_predicate(rep.dpt, n, a, b) == satisfy
            samples += 1
    assert samples == 50
    detail("%s,%d: 20 scrambles, tag %s, %d membership samples%s"
           % (tag[0], n, rep.case_tag, samples,
              "" if tied else " (criterion vacuous: all satisfying)"))


# 7 ---------------------------------------------------------------------------

def test_criterion_07_bounds(detail):
    algs = [gen_family(t, n) for t in ("I", "II") for n in range(5, 13)]
    algs += [perturbed(5, 5, [(-1, 1, 5)]), perturbed(5, 5, [(-1, 1, 5), (1, 0, 3)]),
             perturbed(5, 5, [(-1, 0, 1)]), perturbed(6, 6, [(1, 0, 3)]),
             perturbed(6, 6, [(-I, 0, 6)]), perturbed(6, 6, [(-I, 0, 7)])]
    algs += [scramble(a, 700 + i) for i, a in enumerate(algs[:10])]
    for alg in algs:
        rep = structure_report(alg)
        assert rep.maxn and rep.nu_g == 3 and rep.full
        n = alg.n
        assert rep.b1 == len(rep.dpt) + 1
        lo_b, hi_b = (n + 2) // 2, (n + 5) // 2
        lo_1, hi_1 = (3 * n - 4) // 2, (3 * n - 1) // 2
        lo_2, hi_2 = (n - 2) // 2, (n + 3) // 2
        assert lo_b <= rep.b1 <= hi_b
        assert lo_1 <= rep.dim_g1 <= hi_1
        assert lo_2 <= rep.dim_g2 <= hi_2
        assert rep.bounds_ok and betti_bounds(n)["b1"] == (lo_b, hi_b)
    assert structure_report(gen_family("I", 6)).b1 == 5
    assert structure_report(gen_family("II", 6)).b1 == 5
    assert structure_report(gen_family("II", 5)).b1 == 4
    detail("%d algebras with nu(g) = 3, n >= 5" % len(algs))


# 8 ---------------------------------------------------------------------------

@pytest.mark.parametrize("tag", [("I", 7), ("II", 8)], ids=lambda t: "%s%d" % t)
def test_criterion_08_quotients(tag, detail):
    g = gen_family(*tag)
    nu = classify(g).nu_J
    A, H = a_series(g), h_series(g)
    for k in range(nu + 1):
        assert A[nu - k] == H[k]
    for k in range(1, nu + 1):
        cl = classify(quotient_by_ideal(g, A[nu - k]))
        assert cl.maxn and cl.nu_J == k
    detail("%s,%d: quotients by a_(nu-k) are MaxN of step k; a_(nu-k) = h^k" % tag)


@pytest.mark.parametrize("tag", [("I", 7), ("II", 8)], ids=lambda t: "%s%d" % t)
def test_criterion_08_subalgebras(tag, detail):
    g = gen_family(*tag)
    nu = classify(g).nu_J
    A = a_series(g)
    steps = [classify(subalgebra_restrict(g, A[k])).nu_J for k in range(1, nu + 1)]
    if steps != list(range(1, nu + 1)):
        detail("%s,%d: restriction to a_k has nu(J) %s, expected %s (a_k is abelian "
               "for k < n; see ledger)" % (tag + (steps, list(range(1, nu + 1)))))
    assert steps == list(range(1, nu + 1))


# 9 ---------------------------------------------------------------------------

def _generated_presentations(count):
    rng = random.Random(9)
    out = []
    i = 0
    while len(out) < count:
        tag = ("I", "II")[i % 2]
        n = 1 + (i // 2) % 8
        plan = FuzzPlan(seed=rng.randrange(10 ** 6), iterations=1,
                        transform_kind=("full", "triangular", "identity")[i % 3])
        out.extend(fuzz_transform(gen_family(tag, n), plan))
        i += 1
    return out


def test_criterion_09_normalization_and_round_trips(detail):
    algs = _generated_presentations(500)
    for alg in algs:
        p = alg.to_presentation()
        text = print_canonical(p)
        assert parse(text) == p
        assert print_canonical(parse(text)) == text
    normalized = 0
    for alg in algs:
        if alg.n >= 3:
            once = admissible_normalize(alg).base
            twice = admissible_normalize(once).base
            assert twice.canonical_text() == once.canonical_text()
            normalized += 1
    detail("%d round-trips, %d idempotence checks" % (len(algs), normalized))


# 10 --------------------------------------------------------------------------

def _random_query(rng):
    n = rng.choice([2, 3, 4])
    pool = [gq(x) for x in (0, 0, 1, -1, 2, "1/2", (0, 1), (1, -1))]

    def rand_form():
        return OneForm(n, {k: rng.choice(pool) for k in range(2 * n)})
    U_gens = [rand_form() for _ in range(rng.randint(0, 2 * n - 1))]
    U = one_form_space(n, U_gens)
    if U_gens and rng.random() < 0.5:
        f = TwoForm(n)
        for _ in range(3):
            f = f + wedge(rng.choice(U_gens), rng.choice(U_gens)) * rng.choice(pool)
        if rng.random() < 0.3:
            f = f + wedge(rand_form(), rand_form())
    else:
        f = wedge(rand_form(), rand_form()) + wedge(rand_form(), rand_form())
    return f, U


def test_criterion_10_membership_oracles(detail):
    rng = random.Random(10)
    counts = {True: 0, False: 0}
    for _ in range(500):
        f, U = _random_query(rng)
        x, y = in_wedge_square_expand(f, U), in_wedge_square_contract(f, U)
        assert x == y
        counts[x] += 1
    assert counts[True] > 50 and counts[False] > 50
    detail("500 queries: %d inside, %d outside" % (counts[True], counts[False]))
