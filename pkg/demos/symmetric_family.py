"""Walk the symmetric family a = b = 10, c = -d = t sqrt(99) from t = 0 to 1.

Below the separability boundary t = sqrt(9/11) the best joint measurement is a
two-mode-squeezed POVM; above it the optimum becomes a balanced beamsplitter
followed by two homodynes, and the curve has a kink where the branches meet.
At t = 1 the state is a two-mode squeezed vacuum and OGD = arccosh(10).

Run:  python demos/symmetric_family.py
"""

import math

import numpy as np

from gaussdiscord import SymmetricT, closed_form_ogd, family_state, ogd

A = 10.0


def main():
    boundary = SymmetricT(A, 0).threshold
    print(f"separability boundary t* = {boundary:.6f}")
    print(f"{'t':>5} {'numeric':>12} {'closed':>12} {'gqd':>10} {'eta':>6} {'L_A':>8}  branch")
    for t in sorted(set(np.round(np.linspace(0, 1, 11), 2).tolist()) | {0.91}):
        fam = SymmetricT(A, float(t))
        rep = ogd(family_state(fam))
        cf = closed_form_ogd(fam)
        j = rep.opt_joint
        print(f"{t:5.2f} {rep.ogd:12.8f} {cf.ogd:12.8f} {rep.gqd:10.6f} {j.eta:6.3f} {j.m_a.l:8.5f}  {cf.branch}")
    print(f"arccosh(10) = {math.acosh(A):.8f}")


if __name__ == "__main__":
    main()
