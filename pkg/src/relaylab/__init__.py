"""Decode-forward rates and gap bounds for the half-duplex AWGN single-relay channel."""
from .channel import (DomainError, Geometry, Regime, SnrTriple, classify_regime,
                      load_scenario, snr_from_geometry)
from .gaps import (GapReport, LogVariables, LowSnrLimit, g_ub, gap_report, gbar_ub, h_of_s,
                   high_snr_limit_g_ub, lemma5_bound, log_variables, low_snr_limit_gbar_ub)
from .rates import (Binding, ObjectivePair, RateSolution, cdf_objective, direct_rate,
                    pdf_objective, solve_cdf, solve_direct, solve_pdf, solve_pdf_many,
                    solve_pdf_ub)

__version__ = "0.1.0"

__all__ = [
    "Binding", "DomainError", "GapReport", "Geometry", "LogVariables", "LowSnrLimit",
    "ObjectivePair", "RateSolution", "Regime", "SnrTriple", "cdf_objective",
    "classify_regime", "direct_rate", "g_ub", "gap_report", "gbar_ub", "h_of_s",
    "high_snr_limit_g_ub", "lemma5_bound", "load_scenario", "log_variables",
    "low_snr_limit_gbar_ub", "pdf_objective", "snr_from_geometry", "solve_cdf",
    "solve_direct", "solve_pdf", "solve_pdf_many", "solve_pdf_ub",
]
