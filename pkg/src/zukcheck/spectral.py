"""Spectrum of the random-walk Laplacian, exactly and numerically."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

import numpy as np

from . import _kernels
from .errors import InconsistencyError, InputError, KernelUndefinedError
from .exact import (
    DEFAULT_PRECISION,
    RationalMatrix,
    RationalPolynomial,
    Root,
    RootIsolation,
    char_poly,
    isolate_roots,
    root_bound,
    square_free_part,
    sturm_count,
)
from .graph import LinkGraph, connected_components, walk_data

DEFAULT_TOLERANCE = 1e-9
HALF = Fraction(1, 2)

EXACT = "exact"
NUMERIC = "numeric"
BOTH = "both"


def laplacian_matrix(g: LinkGraph) -> RationalMatrix:
    """I minus the walk kernel, in the graph's vertex order."""
    w = walk_data(g)
    n = g.n
    return tuple(
        tuple((Fraction(1) if x == y else Fraction(0)) - w.mu(x, y) for y in range(n)) for x in range(n)
    )


def symmetrized_laplacian(g: LinkGraph) -> np.ndarray:
    """D^(1/2) L D^(-1/2): symmetric and cospectral with the Laplacian."""
    deg = walk_data(g).stationary()
    n = g.n
    out = np.eye(n)
    for i, j in g.edges():
        v = -1.0 / math.sqrt(deg[i] * deg[j])
        out[i, j] = out[j, i] = v
    return out


@dataclass(frozen=True)
class SpectralReport:
    labels: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    degrees: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    char_poly: Optional[RationalPolynomial] = None
    eigenvalues: Optional[RootIsolation] = None
    lambda1: Optional[Root] = None
    lambda1_vs_half: Optional[str] = None
    numeric_eigenvalues: Optional[tuple[float, ...]] = None
    cross_check: Optional[float] = None
    undefined_labels: tuple[str, ...] = field(default=())

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    @property
    def has_exact(self) -> bool:
        return self.eigenvalues is not None


def _graph_summary(g: LinkGraph) -> dict:
    return dict(
        labels=g.labels,
        edges=tuple(g.edges()),
        degrees=g.degrees,
        components=tuple(tuple(b) for b in connected_components(g)),
    )


def compare_with_half(sqf: RationalPolynomial, lam: Root) -> str:
    """Decide lambda_1 against 1/2 exactly, given the square-free char poly."""
    below = sturm_count(sqf, 0, HALF) - (1 if sqf(HALF) == 0 else 0)
    if below > 0:
        verdict = "less"
    elif sqf(HALF) == 0:
        verdict = "equal"
    else:
        verdict = "greater"
    if lam.is_exact:
        direct = {-1: "less", 0: "equal", 1: "greater"}[(lam.value > HALF) - (lam.value < HALF)]
        if direct != verdict:
            raise InconsistencyError(f"Sturm comparison says {verdict}, exact root {lam.value} says {direct}")
    return verdict


def _check_exact(g: LinkGraph, p: RationalPolynomial, iso: RootIsolation, n_components: int) -> None:
    n = g.n
    if sum(r.multiplicity for r in iso.roots) != n:
        raise InconsistencyError("eigenvalue multiplicities do not sum to the vertex count")
    # trace of the Laplacian is n; for a monic poly it is -coeff[n-1]
    if -p.coeffs[n - 1] != n:
        raise InconsistencyError(f"eigenvalue sum {-p.coeffs[n - 1]} != trace {n}")
    sqf = square_free_part(p)
    bound = root_bound(sqf)
    negative = sturm_count(sqf, -bound, 0) - (1 if sqf(0) == 0 else 0)
    above_two = sturm_count(sqf, 2, bound) if bound > 2 else 0
    if negative or above_two:
        raise InconsistencyError(f"eigenvalues outside [0, 2]: {negative} below, {above_two} above")
    zero = [r for r in iso.roots if r.is_exact and r.value == 0]
    zero_mult = zero[0].multiplicity if zero else 0
    if zero_mult != n_components:
        raise InconsistencyError(f"eigenvalue 0 has multiplicity {zero_mult}, graph has {n_components} components")


def exact_spectrum(g: LinkGraph, precision=DEFAULT_PRECISION) -> SpectralReport:
    lap = laplacian_matrix(g)
    p = char_poly(lap)
    iso = isolate_roots(p, precision)
    summary = _graph_summary(g)
    _check_exact(g, p, iso, len(summary["components"]))
    lam = None
    vs_half = None
    if len(summary["components"]) == 1 and g.n >= 2:
        lam = next(r for r in iso.roots if not (r.is_exact and r.value == 0))
        vs_half = compare_with_half(square_free_part(p), lam)
    return SpectralReport(char_poly=p, eigenvalues=iso, lambda1=lam, lambda1_vs_half=vs_half, **summary)


def numeric_spectrum(g: LinkGraph) -> np.ndarray:
    """Sorted eigenvalues of the symmetrized Laplacian via cyclic Jacobi."""
    sym = symmetrized_laplacian(g)
    vals, sweeps, off = _kernels.jacobi_eigenvalues(sym, _kernels.OFF_TOL, _kernels.MAX_SWEEPS)
    if off >= _kernels.OFF_TOL:
        raise InconsistencyError(f"Jacobi did not converge after {sweeps} sweeps (off-diagonal norm {off:.3e})")
    return np.sort(vals)


def cross_check(iso: RootIsolation, numeric) -> float:
    exact = iso.expanded()
    if len(exact) != len(numeric):
        raise InconsistencyError(f"{len(exact)} exact eigenvalues vs {len(numeric)} numeric")
    return max((abs(float(r.midpoint) - float(v)) for r, v in zip(exact, numeric)), default=0.0)


def full_report(
    g: LinkGraph,
    precision=DEFAULT_PRECISION,
    tolerance: float = DEFAULT_TOLERANCE,
    engines: str = BOTH,
) -> SpectralReport:
    if engines not in (EXACT, NUMERIC, BOTH):
        raise InputError(f"unknown engine selection {engines!r}")
    if engines == NUMERIC:
        return SpectralReport(
            numeric_eigenvalues=tuple(float(v) for v in numeric_spectrum(g)), **_graph_summary(g)
        )
    report = exact_spectrum(g, precision)
    if engines == EXACT:
        return report
    numeric = numeric_spectrum(g)
    err = cross_check(report.eigenvalues, numeric)
    if not err <= tolerance:
        raise InconsistencyError(f"exact and numeric spectra disagree by {err:.3e} > {tolerance:.1e}")
    return replace(report, numeric_eigenvalues=tuple(float(v) for v in numeric), cross_check=err)


def analyze(
    g: LinkGraph,
    precision=DEFAULT_PRECISION,
    tolerance: float = DEFAULT_TOLERANCE,
    engines: str = BOTH,
) -> SpectralReport:
    """Like :func:`full_report`, but a degree-0 vertex yields a spectrum-less report."""
    try:
        return full_report(g, precision, tolerance, engines)
    except KernelUndefinedError as exc:
        return SpectralReport(undefined_labels=exc.labels, **_graph_summary(g))
