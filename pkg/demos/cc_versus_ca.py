"""Correlated (q = 1) versus anticorrelated (q = -1) separable states at c = 9.

Both share the same local statistics and the same best single-side entropy,
yet only the anticorrelated state rewards a joint measurement.  The Gaussian
quantum discord orders them the other way around.

Run:  python demos/cc_versus_ca.py
"""

import math

from gaussdiscord import CCCA, closed_form_ogd, family_state, ogd
from gaussdiscord.discord import classical_conditional_entropy

C = 9.0


def describe(q):
    state = family_state(CCCA(C, q))
    rep = ogd(state)
    hmin, _ = classical_conditional_entropy(state)
    print(f"q = {q:+.0f}")
    print(f"  ogd     {rep.ogd:.10f}")
    print(f"  gqd     {rep.gqd:.10f}")
    print(f"  renyi2  {rep.renyi2:.10f}")
    print(f"  Hmin    {hmin:.10f}")
    print(f"  sqrt det local / joint: {math.sqrt(rep.det_local):.8f} / {math.sqrt(rep.det_joint):.8f}")


def main():
    for q in (1.0, -1.0):
        describe(q)
    print(f"ln(20/11) = {math.log(20 / 11):.10f}")

    # discord falls monotonically to zero at q = 1/sqrt(1 + 2c)
    q0 = CCCA(C, 0).threshold
    print(f"\nthreshold q0 = {q0:.6f}")
    for q in (-1.0, -0.75, -0.5, -0.25, 0.0, 0.2, 0.23, 0.5):
        print(f"  q = {q:+.2f}  ogd = {closed_form_ogd(CCCA(C, q)).ogd:.8f}")


if __name__ == "__main__":
    main()
