"""The limit measure does not have to be non-negative.

For a = diag(2, 0) and b the symmetric 0/1 flip, the measures converge toward
a representation of e^(ta+b) whose first moment is

    D = [[e, sinh 1], [sinh 1, 1/e]],    det D = (6 - e^2 - e^(-2))/4 < 0.

An indefinite first moment rules out any limit with positive semidefinite
weights, even though every finite-N measure has total mass e^b exactly.
"""

import numpy as np

from liemeasure.experiments import counterexample_demo


def main():
    res = counterexample_demo((16, 32, 64, 128, 256, 512))
    print("D =")
    print(np.array2string(res.d_matrix, precision=10))
    print(f"det D   = {res.det_d:.10f}")
    print(f"eigs(D) = {res.eigs_of_d[0]:.10f}, {res.eigs_of_d[1]:.10f}")
    print(f"positive semidefinite: {res.psd}")
    print()
    print(f"{'N':>5} {'|moment1 - D|':>15} {'det(moment1)':>15}")
    for n_steps, m1, err in res.moment1_by_n:
        det = float(np.linalg.det(m1).real)
        print(f"{n_steps:>5} {err:>15.8f} {det:>15.8f}")
    print()
    print(f"determinant already negative at N = {res.onset_negative_det}")


if __name__ == "__main__":
    main()
