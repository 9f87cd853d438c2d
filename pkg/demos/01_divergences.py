"""Entropy, relative entropy and the weighted Jensen-Shannon divergence."""
import numpy as np

from jsdseg import UndefinedDivergenceError, jsd_weighted, kl_divergence, shannon_entropy

p = np.array([0.9, 0.1])
q = np.array([0.1, 0.9])

print(f"H(p)            = {shannon_entropy(p):.6f} nats")
print(f"KL(p || q)      = {kl_divergence(p, q):.6f}")
try:
    kl_divergence([1, 0], [0, 1])
except UndefinedDivergenceError as exc:
    print(f"KL on disjoint supports: {exc}")

# the divergence stays finite where KL does not, and is capped by H(weights)
for w in (0.5, 0.25, 0.05):
    print(f"JSD weights ({w:.2f}, {1 - w:.2f}): p,q -> {jsd_weighted(p, q, (w, 1 - w)):.6f}  "
          f"disjoint -> {jsd_weighted([1, 0], [0, 1], (w, 1 - w)):.6f}  "
          f"cap {shannon_entropy([w, 1 - w]):.6f}")
