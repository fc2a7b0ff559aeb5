"""
Checking the 9/8 bound
======================

Random channels never show partial decoding more than 12.5% ahead of complete
decoding, and a search over (lambda01, lambda02) shows how close it gets.
"""
import numpy as np

from relaylab import h_of_s
from relaylab.experiments import bound_approach_search, theorem_fuzz

# %%
# h(s) is the reciprocal of the relay-power-free bound; its minimum 8 gives 1/8.
s = np.array([1.1, 1.5, 2.0, 3.0, 10.0])
print("h(s):", {float(x): round(h_of_s(float(x)), 4) for x in s})

# %%
# Seeded log-uniform channels in [1e-2, 1e6] with lambda01 > lambda02.
summary = theorem_fuzz(seed=42, n_samples=10_000)
print(f"\n{summary.samples} channels, {summary.violations} violations, "
      f"worst g_bar = {summary.worst_g_bar:.5f} at {summary.worst_channel}")

# %%
# Largest normalized gap for a few relay-destination SNRs.
for row in bound_approach_search([1e1, 1e3, 1e5]):
    print(f"lambda12={row.lambda12:8.0e}  best lambda01={row.lambda01:10.1f}  "
          f"lambda02={row.lambda02:8.2f}  g_bar={row.g_bar:.5f}")
