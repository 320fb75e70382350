"""Independent numerical verification engine for the closed-form spectra.

Every radial problem is cast as a Sturm-Liouville triple (p, w, V) with the
operator (-1/w) d/dx (p w d/dx) + V, discretized on a half-cell-offset uniform
grid in conservative (flux) form, symmetrized by the similarity transform
W^(1/2) H W^(-1/2), and solved by Sturm-sequence bisection.  Eigenvalues are
reported in the doubled convention (2E).

The PDM flat pictures use w = 1: BD is -d/dx (1/m) d/dx + V1 (or U) directly;
the MM quarter-power operator and any von Roos ordering are reduced exactly to
that BD form by the substitution psi = m^(1/4) u, which turns the ordering
ambiguity into the closed-form potential term ``_von_roos_shift``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import kernels
from .models import (
    BD,
    CoulombLike,
    EuclideanCoulomb,
    EuclideanOscillator,
    NonlinearOscillator,
    PdmOrdering,
    QuantumNumbers,
    RadialState,
    energy,
    flat_factor_derivatives,
    is_bound,
    model_kind,
    pdm_energy,
    wavefunction_derivatives,
)

__all__ = [
    "ConvergenceReport",
    "DiscreteOperator",
    "SturmLiouvilleProblem",
    "analytic_reference",
    "build_problem",
    "convergence_study",
    "default_samples",
    "discretize",
    "lowest_eigenvalues",
    "residual_norm",
    "truncation_radius",
]


@dataclass(frozen=True)
class SturmLiouvilleProblem:
    """Coefficients of (-1/w) d/dx (p w d/dx) + V on (a, b), self-adjoint in L^2(w dx)."""

    p: Callable
    w: Callable
    potential: Callable
    domain: tuple[float, float]
    bc_inner: str = "natural"  # "natural" (zero flux) | "dirichlet"
    bc_outer: str = "dirichlet"
    label: str = ""


@dataclass(frozen=True)
class DiscreteOperator:
    """Symmetric tridiagonal representation W^(1/2) H W^(-1/2) on cell centers."""

    diag: np.ndarray
    off: np.ndarray
    h: float
    nodes: np.ndarray


@dataclass(frozen=True)
class ConvergenceReport:
    """Grid study of one (model, ang) channel: eigenvalues per grid plus
    observed order, Richardson extrapolation from the two finest grids, and
    the analytic reference."""

    grids: tuple
    eigenvalues: tuple  # eigenvalues[i][j]: grid i, state j
    observed_order: tuple
    extrapolated: tuple
    reference: tuple
    rel_error: tuple
    monotone: tuple

    def to_dict(self) -> dict:
        return {
            "grids": list(self.grids),
            "eigenvalues": [list(row) for row in self.eigenvalues],
            "observed_order": list(self.observed_order),
            "extrapolated": list(self.extrapolated),
            "reference": list(self.reference),
            "rel_error": list(self.rel_error),
            "monotone": list(self.monotone),
        }


def _von_roos_shift(kind: str, lam: float, ordering: PdmOrdering, x):
    """2 U_vr: the potential the von Roos kinetic operator adds over the BD one.

    With K1 = zeta(eta+zeta-1) + xi(eta+xi-1):
    2 U_vr = -K1/2 * m'^2/m^3 - (xi+zeta)/2 * m''/m^2, in closed form per mass.
    Identically zero for the BD triple; for MM it cancels V2 - V1 exactly
    (oscillator) or equals the constant -lam^2/4 (coulomb).
    """
    xi, eta, zeta = ordering.xi, ordering.eta, ordering.zeta
    k1 = zeta * (eta + zeta - 1.0) + xi * (eta + xi - 1.0)
    s = xi + zeta
    xa = np.asarray(x, dtype=float)
    if kind == "oscillator":
        t = 1.0 + lam * xa * xa
        ratio1 = 4.0 * lam**2 * xa * xa / t  # m'^2/m^3
        ratio2 = -2.0 * lam + 8.0 * lam**2 * xa * xa / t  # m''/m^2
    else:
        ratio1 = np.full_like(xa, 4.0 * lam**2)
        ratio2 = np.full_like(xa, 6.0 * lam**2)
    return -0.5 * k1 * ratio1 - 0.5 * s * ratio2


def _weighted_coefficients(model, ang: float):
    """(p, w, V) plus the first-derivative coefficient c1 = p' + p w'/w."""
    if isinstance(model, EuclideanOscillator):
        d, om = model.d, model.omega
        return dict(
            p=lambda r: np.ones_like(np.asarray(r, dtype=float)),
            w=lambda r: r ** (d - 1.0),
            V=lambda r: ang * (ang + d - 2.0) / (r * r) + om**2 * r * r,
            c1=lambda r: (d - 1.0) / r,
        )
    if isinstance(model, NonlinearOscillator):
        d, lam, beta = model.d, model.lam, model.beta
        return dict(
            p=lambda r: 1.0 + lam * r * r,
            w=lambda r: (1.0 + lam * r * r) ** (-0.5) * r ** (d - 1.0),
            V=lambda r: ang * (ang + d - 2.0) / (r * r)
            + beta * (beta + lam) * r * r / (1.0 + lam * r * r),
            c1=lambda r: (d - 1.0 + d * lam * r * r) / r,
        )
    if isinstance(model, EuclideanCoulomb):
        D, Q = model.D, model.Q
        return dict(
            p=lambda R: np.ones_like(np.asarray(R, dtype=float)),
            w=lambda R: R ** (D - 1.0),
            V=lambda R: ang * (ang + D - 2.0) / (R * R) - Q / R,
            c1=lambda R: (D - 1.0) / R,
        )
    if isinstance(model, CoulombLike):
        D, lam, Q = model.D, model.lam, model.Q
        return dict(
            p=lambda R: (1.0 + lam * R) ** 2,
            w=lambda R: (1.0 + lam * R) ** (-1.5) * R ** (D - 1.0),
            V=lambda R: ang * (ang + D - 2.0) / (R * R) - Q / R,
            c1=lambda R: (D - 1.0)
            / R
            * (1.0 + lam * R)
            * (1.0 + (2.0 * D - 1.0) / (2.0 * D - 2.0) * lam * R),
        )
    raise ValueError(f"not a radial model: {model!r}")


def _flat_coefficients(model, ang: float, ordering: PdmOrdering):
    """Reduced flat-picture (p, w=1, V): BD potential plus the von Roos shift.

    For the oscillator the paper's V2 plus the MM shift collapses to V1, so
    every ordering shares V1 there; the Coulomb problem keeps U plus the
    (constant) shift.
    """
    kind = model_kind(model)
    lam = model.lam
    if kind == "oscillator":
        d, beta = model.d, model.beta

        def v_eff(r):
            cent = (ang + (d - 1.0) / 2.0) * (ang + (d - 3.0) / 2.0) / (r * r)
            return cent + (beta * (beta + lam) * r * r - 0.25 * lam) / (1.0 + lam * r * r)

        return dict(
            p=lambda r: 1.0 + lam * r * r,
            w=lambda r: np.ones_like(np.asarray(r, dtype=float)),
            V=v_eff,
            c1=lambda r: 2.0 * lam * r,
        )
    D, Q = model.D, model.Q

    def v_eff(R):
        cent = (ang + (D - 1.0) / 2.0) * (ang + (D - 3.0) / 2.0) / (R * R)
        u = cent - (Q - 0.25 * (D - 1.0) * (2.0 * D - 5.0) * lam) / R
        return u + _von_roos_shift("coulomb", lam, ordering, R)

    return dict(
        p=lambda R: (1.0 + lam * R) ** 2,
        w=lambda R: np.ones_like(np.asarray(R, dtype=float)),
        V=v_eff,
        c1=lambda R: 2.0 * lam * (1.0 + lam * R),
    )


def _geodesic_coefficients(model, ang: float):
    """(p, w, V) of the lam > 0 weighted problem in its geodesic coordinate.

    Bound states of the curved models decay only as a power of r, so the
    radial truncation rule is useless there; the arc-length substitution
    s = arcsinh(sqrt(lam) r)/sqrt(lam) (oscillator) or s = log(1+lam R)/lam
    (Coulomb-like) keeps the spectrum and the measure (w_s ds = w_r dr) while
    making the tails exponential.  In both cases p becomes 1.
    """
    lam = model.lam
    if isinstance(model, NonlinearOscillator):
        d, beta = model.d, model.beta
        rt = math.sqrt(lam)

        def to_r(s):
            return np.sinh(rt * np.asarray(s, dtype=float)) / rt

        def w(s):
            return to_r(s) ** (d - 1.0)

        def V(s):
            r = to_r(s)
            return ang * (ang + d - 2.0) / (r * r) + beta * (beta + lam) * r * r / (
                1.0 + lam * r * r
            )

    elif isinstance(model, CoulombLike):
        D, Q = model.D, model.Q

        def to_r(s):
            return np.expm1(lam * np.asarray(s, dtype=float)) / lam

        def w(s):
            R = to_r(s)
            return (1.0 + lam * R) ** (-0.5) * R ** (D - 1.0)

        def V(s):
            R = to_r(s)
            return ang * (ang + D - 2.0) / (R * R) - Q / R

    else:
        raise ValueError("geodesic coordinates apply to the curved models only")
    return dict(
        p=lambda s: np.ones_like(np.asarray(s, dtype=float)),
        w=w,
        V=V,
        to_r=to_r,
    )


def analytic_reference(
    model, ang: float, n_r: int, picture: str = "weighted", ordering: PdmOrdering = BD
) -> float:
    """Closed-form eigenvalue in the oracle's 2E convention."""
    q = QuantumNumbers(n_r, ang)
    if picture == "weighted":
        return 2.0 * energy(model, q)
    return 2.0 * pdm_energy(ordering, model, q)


def _state_scale(model, ang: float, n_r: int) -> float:
    """Radius by which the target state has decayed to 1e-3 of its peak."""
    lo, hi = model.domain
    probe_hi = hi if math.isfinite(hi) else 1e9
    grid = np.geomspace(max(1e-9 * probe_hi, 1e-12), probe_hi * (1 - 1e-12), 8192)
    state = RadialState(model, QuantumNumbers(n_r, ang))
    with np.errstate(over="ignore"):
        vals = np.abs(np.asarray(state(grid)))
    vals = np.where(np.isfinite(vals), vals, np.inf)
    ipk = int(np.argmax(np.where(np.isfinite(vals), vals, -np.inf)))
    peak = vals[ipk]
    tail = np.nonzero(vals[ipk:] < 1e-3 * peak)[0]
    return float(grid[ipk + tail[0]]) if tail.size else float(probe_hi)


def _exp_cutoff(amp, hi0: float = 16.0) -> float:
    """Smallest coordinate where the state's density amp^2 falls to 1e-12 of its peak.

    The eigenvalue perturbation from a Dirichlet cutoff scales with the density
    left outside, so thresholding amp^2 (not amp) keeps the truncation error at
    the 1e-12 level without inflating the grid spacing.
    """
    hi = hi0
    for _ in range(40):
        grid = np.linspace(hi * 1e-4, hi, 8192)
        with np.errstate(over="ignore", invalid="ignore"):
            vals = np.abs(np.asarray(amp(grid))) ** 2
        vals = np.nan_to_num(vals, nan=0.0, posinf=0.0)
        ipk = int(np.argmax(vals))
        peak = vals[ipk]
        tail = np.nonzero(vals[ipk:] < 1e-12 * peak)[0]
        if peak > 0 and tail.size:
            return float(grid[ipk + tail[0]])
        hi *= 2.0
        if hi > 1e4:
            break
    raise ValueError("state density does not decay below 1e-12 of its peak")


def truncation_radius(
    model, ang: float, n_r: int, picture: str = "weighted", ordering: PdmOrdering = BD
) -> float:
    """Domain cutoff for infinite-domain problems, in the solved coordinate.

    The target state must have decayed to 1e-12 of its peak by half the cutoff.
    For lam > 0 weighted problems the coordinate is the geodesic one (where the
    tails are exponential); for the flat PDM picture, which stays radial, the
    cutoff is instead set where a boundary-flux estimate of the truncation
    error drops below a tenth of the 1e-6 verification budget.
    """
    lo, hi = model.domain
    if math.isfinite(hi):
        return hi
    q = QuantumNumbers(n_r, ang)
    if not is_bound(model, q):
        raise ValueError("truncation undefined: target state is not normalizable")
    lam = getattr(model, "lam", 0.0)
    state = RadialState(model, q)
    if picture == "weighted":
        if lam > 0:
            geo = _geodesic_coefficients(model, ang)
            return _exp_cutoff(lambda s: state(geo["to_r"](s)) * np.sqrt(geo["w"](s)))
        coeff = _weighted_coefficients(model, ang)
        return _exp_cutoff(lambda r: state(r) * np.sqrt(coeff["w"](r)))
    # flat picture, radial coordinate
    coeff = _flat_coefficients(model, ang, ordering)
    kind = model_kind(model)
    if lam <= 0:
        def amp(r):
            return flat_factor_derivatives(kind, _dim_of(model), lam, r)[0] * state(r)

        return _exp_cutoff(amp)
    grid = np.geomspace(1e-4, 1e9, 16384)
    psi, dpsi, _ = state.derivatives(grid)
    f, df, _ = flat_factor_derivatives(kind, _dim_of(model), lam, grid)
    psi, dpsi = f * psi, df * psi + f * dpsi
    amp_vals = np.abs(psi)
    ipk = int(np.argmax(amp_vals))
    peak = amp_vals[ipk]
    dens = psi * psi
    part = np.concatenate(([0.0], np.cumsum(0.5 * (dens[1:] + dens[:-1]) * np.diff(grid))))
    est = np.asarray(coeff["p"](grid)) * np.abs(psi * dpsi) / np.maximum(part, 1e-300)
    target = 1e-7 * max(abs(analytic_reference(model, ang, n_r, picture, ordering)), 1e-2)
    ok = np.nonzero((est < target) & (np.arange(grid.size) > ipk) & (amp_vals < 1e-3 * peak))[0]
    if not ok.size:
        raise ValueError("no truncation radius meets the error budget")
    return float(grid[ok[0]])


def _dim_of(model) -> float:
    return float(model.d if hasattr(model, "d") else model.D)


def build_problem(
    model,
    ang: float,
    picture: str = "weighted",
    ordering: Optional[PdmOrdering] = None,
    n_states: int = 2,
    r_max: Optional[float] = None,
) -> SturmLiouvilleProblem:
    """Sturm-Liouville form of one radial problem.

    picture "weighted" solves the curved radial equation against its measure;
    "flat" solves the PDM picture (w = 1) for the given von Roos ordering.
    The domain is truncated (if infinite) to cover the lowest ``n_states``
    states of the channel; ``r_max`` overrides the automatic rule.
    """
    if picture == "weighted":
        if ordering is not None:
            raise ValueError("ordering applies to the flat picture only")
        lam = getattr(model, "lam", 0.0)
        if lam > 0:
            coeff = _geodesic_coefficients(model, ang)
            label = f"weighted-geodesic {type(model).__name__} ang={ang}"
        else:
            coeff = _weighted_coefficients(model, ang)
            label = f"weighted {type(model).__name__} ang={ang}"
        bc_inner = "natural"
    elif picture == "flat":
        if not isinstance(model, (NonlinearOscillator, CoulombLike)):
            raise ValueError("the PDM flat picture applies to the curved models only")
        ordering = BD if ordering is None else ordering
        coeff = _flat_coefficients(model, ang, ordering)
        label = f"flat {type(model).__name__} ang={ang}"
        bc_inner = "dirichlet-wall"
    else:
        raise ValueError(f"unknown picture {picture!r}")
    if r_max is None:
        r_max = truncation_radius(
            model, ang, n_states - 1, picture, ordering if ordering else BD
        )
    lo, hi = model.domain
    if not lo < r_max <= (hi if math.isfinite(hi) else math.inf):
        raise ValueError("r_max outside the model domain")
    return SturmLiouvilleProblem(
        p=coeff["p"],
        w=coeff["w"],
        potential=coeff["V"],
        domain=(lo, float(r_max)),
        bc_inner=bc_inner,
        bc_outer="dirichlet",
        label=label,
    )


def discretize(problem: SturmLiouvilleProblem, N: int) -> DiscreteOperator:
    """Symmetric tridiagonal flux-form discretization on N half-offset cells.

    Interior interfaces carry the flux coefficient (p w)(x_(i+-1/2)); after the
    W^(1/2) similarity transform row i couples its neighbours with
    -(p w)(x_(i+-1/2)) / (h^2 sqrt(w_i w_(i+-1))).  Sampling w at the interface
    (rather than the geometric mean of the cell centers) keeps the eigenvalue
    error a clean h^2 series even for half-integer-power weights.  Dirichlet
    rows keep both flux terms on the diagonal but drop the outside coupling
    (the boundary one with the cell-center weight, since the measure may be
    singular at the endpoint itself); the natural row at the origin sets the
    inner flux to zero.
    """
    if not isinstance(N, (int, np.integer)) or N < 3:
        raise ValueError(f"need N >= 3 cells, got {N}")
    a, b = problem.domain
    h = (b - a) / N
    x = a + (np.arange(1, N + 1) - 0.5) * h
    xh = a + np.arange(N + 1) * h
    w = np.asarray(problem.w(x), dtype=float)
    v = np.asarray(problem.potential(x), dtype=float)
    p_half = np.asarray(problem.p(xh), dtype=float)
    w_half = np.asarray(problem.w(xh[1:-1]), dtype=float)
    if not (
        np.all(np.isfinite(w))
        and np.all(np.isfinite(v))
        and np.all(np.isfinite(p_half))
        and np.all(np.isfinite(w_half))
    ):
        raise ValueError("non-finite coefficient sampled on the grid")
    if not (np.all(w > 0) and np.all(w_half > 0)):
        raise ValueError("weight must be positive on the open domain")
    h2 = h * h
    g = p_half[1:-1] * w_half
    diag = v.copy()
    diag[:-1] += g / (h2 * w[:-1])
    diag[1:] += g / (h2 * w[1:])
    off = -g / (h2 * np.sqrt(w[:-1] * w[1:]))
    # "dirichlet" zeroes the ghost cell center (wall at a - h/2, the spec form);
    # "dirichlet-wall" reflects it (ghost = -u_1, wall at the endpoint itself),
    # needed at the origin of the flat picture where the eigenfunction has a
    # nonzero slope and the half-cell wall shift would cost O(h).
    if problem.bc_inner == "dirichlet":
        diag[0] += p_half[0] / h2
    elif problem.bc_inner == "dirichlet-wall":
        diag[0] += 2.0 * p_half[0] / h2
    elif problem.bc_inner != "natural":
        raise ValueError(f"unknown inner boundary {problem.bc_inner!r}")
    if problem.bc_outer == "dirichlet":
        diag[-1] += p_half[-1] / h2
    elif problem.bc_outer == "dirichlet-wall":
        diag[-1] += 2.0 * p_half[-1] / h2
    elif problem.bc_outer != "natural":
        raise ValueError(f"unknown outer boundary {problem.bc_outer!r}")
    return DiscreteOperator(diag=diag, off=off, h=h, nodes=x)


def lowest_eigenvalues(op: DiscreteOperator, k: int, rel_tol: float = 1e-12) -> np.ndarray:
    """The k smallest eigenvalues of the discretized operator (2E convention)."""
    return kernels.lowest_eigenvalues_tridiag(op.diag, op.off, k, rel_tol)


def residual_norm(
    state: RadialState,
    samples,
    picture: str = "weighted",
    ordering: PdmOrdering = BD,
) -> float:
    """Max scaled residual |L[psi] - 2E psi| / (|2E psi| + local operator scale).

    Uses exact analytic derivatives only.  Samples where every term underflows
    are skipped; if all are skipped a ValueError is raised.
    """
    model, q = state.model, state.q
    x = np.atleast_1d(np.asarray(samples, dtype=float))
    lam = getattr(model, "lam", 0.0)
    if picture == "weighted":
        coeff = _weighted_coefficients(model, q.ang)
        psi, dpsi, d2psi = state.derivatives(x)
        lam2e = 2.0 * energy(model, q)
        kin2 = np.asarray(coeff["p"](x)) * d2psi
        kin1 = np.asarray(coeff["c1"](x)) * dpsi
        pot = np.asarray(coeff["V"](x)) * psi
    elif picture == "flat":  # -(p psi')' + V psi = 2E psi, c1 = p'
        coeff = _flat_coefficients(model, q.ang, ordering)
        kind = model_kind(model)
        f, df, d2f = flat_factor_derivatives(kind, _dim_of(model), lam, x)
        psi0, dpsi0, d2psi0 = state.derivatives(x)
        psi = f * psi0
        dpsi = df * psi0 + f * dpsi0
        d2psi = d2f * psi0 + 2.0 * df * dpsi0 + f * d2psi0
        lam2e = 2.0 * pdm_energy(ordering, model, q)
        kin2 = np.asarray(coeff["p"](x)) * d2psi
        kin1 = np.asarray(coeff["c1"](x)) * dpsi
        pot = np.asarray(coeff["V"](x)) * psi
    else:
        raise ValueError(f"unknown picture {picture!r}")
    # both pictures: p psi'' + c1 psi' - V psi + 2E psi = 0
    resid = np.abs(kin2 + kin1 - pot + lam2e * psi)
    scale = np.abs(lam2e * psi) + np.abs(kin2) + np.abs(kin1) + np.abs(pot)
    usable = scale > 1e-290
    if not np.any(usable):
        raise ValueError("all samples sit where the operator underflows")
    return float(np.max(resid[usable] / (np.abs(lam2e * psi[usable]) + scale[usable])))


def convergence_study(
    model,
    ang: float,
    k: int,
    grids,
    picture: str = "weighted",
    ordering: Optional[PdmOrdering] = None,
    r_max: Optional[float] = None,
) -> ConvergenceReport:
    """Eigenvalues of the k lowest states across grids, with observed order and
    Richardson extrapolation from the two finest grids."""
    grids = [int(N) for N in grids]
    if len(grids) < 3 or any(b <= a for a, b in zip(grids, grids[1:])):
        raise ValueError("need at least 3 strictly increasing grid sizes")
    # each target state gets its own truncation, so low states keep a fine grid
    eig = np.empty((len(grids), k))
    for j in range(k):
        problem = build_problem(model, ang, picture, ordering, n_states=j + 1, r_max=r_max)
        for i, N in enumerate(grids):
            eig[i, j] = lowest_eigenvalues(discretize(problem, N), j + 1)[j]
    hs = 1.0 / np.asarray(grids, dtype=float)
    orders, extrap, refs, errs, mono = [], [], [], [], []
    ordering_eff = ordering if ordering is not None else BD
    for j in range(k):
        seq = eig[:, j]
        d1 = seq[-2] - seq[-3]
        d2 = seq[-1] - seq[-2]
        monotone = d1 * d2 > 0 and abs(d2) < abs(d1)
        mono.append(bool(monotone))
        if monotone:
            order = math.log(abs(d1 / d2)) / math.log(hs[-3] / hs[-2])
            rich = seq[-1] + (seq[-1] - seq[-2]) / ((hs[-2] / hs[-1]) ** 2 - 1.0)
        else:
            order = math.nan
            rich = math.nan
        ref = analytic_reference(model, ang, j, picture, ordering_eff)
        orders.append(float(order))
        extrap.append(float(rich))
        refs.append(float(ref))
        errs.append(float(abs(rich - ref) / abs(ref)) if math.isfinite(rich) else math.nan)
    return ConvergenceReport(
        grids=tuple(grids),
        eigenvalues=tuple(tuple(row) for row in eig),
        observed_order=tuple(orders),
        extrapolated=tuple(extrap),
        reference=tuple(refs),
        rel_error=tuple(errs),
        monotone=tuple(mono),
    )


def default_samples(model, q: QuantumNumbers, n: int = 50) -> np.ndarray:
    """Deterministic interior sample points covering the bulk of the state."""
    lo, hi = model.domain
    if math.isfinite(hi):
        return np.linspace(lo + 0.02 * (hi - lo), hi - 0.05 * (hi - lo), n)
    scale = _state_scale(model, q.ang, q.n_r)
    return np.linspace(0.02 * scale, scale, n)
