"""
Where the gap vanishes
======================

Gap bounds as the relay approaches either endpoint and as the transmit power
goes to zero or infinity.
"""
from relaylab import high_snr_limit_g_ub, low_snr_limit_gbar_ub
from relaylab.experiments import ASYMPTOTIC_GEOMETRY, power_scan, proximity_scan

geom = ASYMPTOTIC_GEOMETRY
print("base geometry:", geom.to_dict())

# %%
# Relay moving toward the source and toward the destination.
for kind in ("RelayNearSource", "RelayNearDest"):
    print(f"\n{kind}")
    for d, r in proximity_scan(kind, [1e-1, 1e-2, 1e-3, 1e-4]):
        print(f"  d={d:7.0e}  g_bar_ub={r.g_bar_ub:.3e}  g_ub={r.g_ub:.3e} bits")

# %%
# Scaling both powers by P.  At high SNR the absolute bound tends to a
# constant while the normalized bound goes to zero; at low SNR the normalized
# bound tends to C3 * C4 * C5.
print(f"\nhigh-SNR constant = {high_snr_limit_g_ub(geom):.5f} bits")
low = low_snr_limit_gbar_ub(geom)
print(f"low-SNR limit C3*C4*C5 = {low.c3:.4f} * {low.c4:.4f} * {low.c5:.4f} = {low.value:.5f}")
for row in power_scan(geom, [1e-6, 1e-3, 1.0, 1e3, 1e6, 1e9]):
    print(f"  P={row.p:7.0e}  g_ub={row.g_ub:.5f} bits  g_bar_ub={row.gbar_ub:.5f}")
