"""
Partial versus complete decode-forward on one channel
=====================================================

Rates, the gap between them, and every closed-form bound for the channel
lambda01 = 62000, lambda02 = 230, lambda12 = 1e5.
"""

# %%
# A channel is three link SNRs: source-relay, source-destination and
# relay-destination.
from relaylab import (SnrTriple, gap_report, solve_cdf, solve_direct, solve_pdf,
                      solve_pdf_ub)

s = SnrTriple(lambda01=62000, lambda02=230, lambda12=1e5)

# %%
# Direct transmission ignores the relay.  Complete decoding (CDF) makes the
# relay decode the whole message; partial decoding (PDF) lets it decode only a
# part and optimizes the coherent power share beta as well.
for name, solver in (("direct", solve_direct), ("cdf", solve_cdf), ("pdf", solve_pdf),
                     ("pdf upper bound", solve_pdf_ub)):
    sol = solver(s)
    print(f"{name:16s} rate={sol.rate:.6f}  alpha={sol.alpha:.4f}  beta={sol.beta:.4f}  "
          f"binding={sol.binding.value}")

# %%
# The normalized gap is about 12.2%; the bounds sit between it and 1/8.
r = gap_report(s)
print(f"\ng_bar={r.g_bar:.4f} <= g_bar_ub={r.g_bar_ub:.4f} <= "
      f"lemma5={r.lemma5_bound:.4f} <= 0.125")
print(f"absolute gap g={r.g:.4f} bits <= g_ub={r.g_ub:.4f} bits")
