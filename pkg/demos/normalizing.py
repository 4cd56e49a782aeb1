"""
Recovering a normal form from a scrambled coframe
=================================================

A random change of coframe hides all structure in dense coefficients.
Normalization finds it again: first an admissible coframe, then a
strictly admissible one adapted to the second term of the V series.
"""

import random

from nilcplx import gen_family, change_coframe, admissible_normalize, strictly_admissible
from nilcplx.families import random_coframe_matrix

alg = gen_family("I", 7)
M = random_coframe_matrix(random.Random(1), alg.n)
moved = change_coframe(alg, M)
print("terms before:", sum(len(f.coords) for f in moved.d_table))

adm = admissible_normalize(moved)
print("terms after: ", sum(len(f.coords) for f in adm.base.d_table))
print("Dpt =", sorted(adm.dpt))

# the transform maps the scrambled coframe onto the normalized one
assert change_coframe(moved, adm.transform) == adm.base

strict, report = strictly_admissible(adm)
print(strict.base.canonical_text())
print("top indices:", report.case_tag)
print("V^2 basis:", ", ".join(label for label, _ in report.v2_basis))
print("bounds hold:", report.bounds_ok)
