"""Zuk's spectral criterion as a decision rule over a SpectralReport."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InputError
from .exact import Root
from .spectral import SpectralReport

HOLDS = "holds"
BOUNDARY = "boundary"
BELOW = "below"
INAPPLICABLE = "inapplicable"

CONCLUSION_HOLDS = "Γ has Property (T) by Żuk's criterion"
CONCLUSION_NONE = "criterion does not apply; no conclusion about Property (T)"


@dataclass(frozen=True)
class Verdict:
    kind: str
    lambda1: Optional[Root]
    reason: str

    @property
    def conclusion(self) -> str:
        return CONCLUSION_HOLDS if self.kind == HOLDS else CONCLUSION_NONE

    def summary(self) -> str:
        """One-line form, e.g. ``boundary (λ₁ = 1/2 exactly)``."""
        lam = self.lambda1
        if self.kind == INAPPLICABLE:
            return f"{self.kind} ({self.reason})"
        if lam.is_exact:
            rel = {HOLDS: f"= {lam.value} > 1/2", BOUNDARY: "= 1/2 exactly", BELOW: f"= {lam.value} < 1/2"}
            return f"{self.kind} (λ₁ {rel[self.kind]})"
        rel = {HOLDS: "> 1/2", BELOW: "< 1/2"}[self.kind]
        return f"{self.kind} (λ₁ in ({float(lam.lo):.12f}, {float(lam.hi):.12f}), certified {rel})"


def evaluate(report: SpectralReport) -> Verdict:
    """Map the exact spectrum to holds / boundary / below / inapplicable.

    Only ``holds`` licenses a conclusion; the criterion is sufficient, so the
    other kinds say nothing either way about Property (T).
    """
    if report.undefined_labels:
        return Verdict(INAPPLICABLE, None, "kernel undefined: degree-0 vertices " + ", ".join(report.undefined_labels))
    if not report.connected:
        sizes = ", ".join(str(len(b)) for b in report.components)
        return Verdict(INAPPLICABLE, None, f"disconnected: {len(report.components)} components of sizes {sizes}")
    if report.n < 2:
        return Verdict(INAPPLICABLE, None, "single vertex: no nonzero eigenvalue")
    if not report.has_exact:
        raise InputError("a verdict needs the exact engine; numeric spectra cannot certify λ₁ against 1/2")
    kind = {"greater": HOLDS, "equal": BOUNDARY, "less": BELOW}[report.lambda1_vs_half]
    reason = {HOLDS: "λ₁ > 1/2", BOUNDARY: "λ₁ = 1/2", BELOW: "λ₁ < 1/2"}[kind]
    return Verdict(kind, report.lambda1, reason)
