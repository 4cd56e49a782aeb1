"""
Two families with step equal to the dimension
==============================================

Both families are 3-step Lie algebras whose complex structure has the
largest possible step.  The set Dpt of "dependent" indices tells them
apart and fixes the first Betti number.
"""

from nilcplx import gen_family, classify, admissible_normalize, v1_basis, structure_report

for tag in ("I", "II"):
    for n in (5, 6, 7, 8):
        alg = gen_family(tag, n)
        cl = classify(alg)
        rep = structure_report(alg)
        print("%-3s n=%d  nu(g)=%d nu(J)=%d  Dpt=%s  b1=%d  dim g^1=%d  dim g^2=%d"
              % (tag, n, cl.nu_g, cl.nu_J, sorted(rep.dpt), rep.b1, rep.dim_g1, rep.dim_g2))

# the closed 1-forms come straight from Dpt
adm = admissible_normalize(gen_family("II", 6))
print([label for label, _ in v1_basis(adm)])

# the smallest case where the Lie algebra is only 2-step
small = gen_family("II", 3)
print(small.canonical_text())
cl = classify(small)
print("nu(g) = %d, nu(J) = %d" % (cl.nu_g, cl.nu_J))
