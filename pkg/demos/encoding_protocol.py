"""Gaussian signal encoding on mode A and the local/joint information gap.

A Gaussian signal of variance Vs displaces mode A.  For large Vs the extra
information a joint measurement of A and B extracts over the best local pair
tends to the operational discord.

Run:  python demos/encoding_protocol.py
"""

from gaussdiscord import Asymmetric, TwoModeCov, family_state, ogd_convergence

STATES = {
    "two-mode squeezed vacuum, r = 0.5": TwoModeCov.tmsv(0.5),
    "asymmetric b=3, v=1, s=-1": family_state(Asymmetric(3, 1, -1)),
}


def main():
    for label, state in STATES.items():
        rows = ogd_convergence(state)
        print(label)
        print(f"  target ogd = {rows[0].ogd:.10f}")
        print(f"  {'Vs':>8} {'I_local':>12} {'I_joint':>12} {'gap':>12} {'|gap-ogd|':>10}")
        for r in rows:
            print(f"  {r.vs:8.0e} {r.i_local:12.6f} {r.i_joint:12.6f} {r.gap:12.8f} {r.distance:10.2e}")
        print()


if __name__ == "__main__":
    main()
