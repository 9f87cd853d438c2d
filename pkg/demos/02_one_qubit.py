"""One qubit: which Pauli measurements expose a change of state."""
import numpy as np

from jsdseg import build_scenario, estimate_changepoint

for name in ("q1_xyz_pure", "q1_x_pure", "q1_z_pure", "q1_xyz_mixed", "q1_x_mixed"):
    sc = build_scenario(name)
    est = np.array([estimate_changepoint(sc.generate(s)).estimated_changepoint for s in range(50)])
    err = np.abs(est - sc.true_changepoint)
    print(f"{name:14s} distinguishing={sc.distinguishing_observables!s:12s} "
          f"median |err|={np.median(err):6.1f}  within 100: {np.mean(err <= 100):.0%}")
