"""
Measuring the step of a complex structure
=========================================

A five-dimensional example where J is nilpotent of step 4, one short of
its complex dimension.
"""

from nilcplx import fixture_cfgu_example4, classify, parse, frame, frame_bar

alg = fixture_cfgu_example4()
print(alg.canonical_text())

# the same algebra, written by hand in the .nla format
text = """
n = 5
d w1 = 0
d w2 = w1^c(w1)
d w3 = -w1^c(w1)
d w4 = w1 ^ (w2 + c(w2))
d w5 = (1/2) * w1 ^ (0 - w2 - w3 + 2*w4 + c(w2) + c(w3))
"""
assert parse(text).d_table == alg.d_table

# brackets of the dual frame X1..X5 and their conjugates
print("[X1, X4] =", alg.bracket(frame(1, 5), frame(4, 5)).pretty())
print("[X1, Xbar1] =", alg.bracket(frame(1, 5), frame_bar(1, 5)).pretty())

# every series at once, with the relations between them verified
cl = classify(alg)
for key, dims in cl.dims().items():
    print("%-14s %s" % (key, dims))
print("nu(g) = %d, nu(J) = %d, maximal: %s" % (cl.nu_g, cl.nu_J, cl.maxn))

# (g/a_(nu-k))* sits inside W^k + conj(W^k); here the inclusion is strict twice
for k, how in cl.inclusions:
    print("k = %d: %s" % (k, how))
