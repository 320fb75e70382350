"""Closed-form radial problems and their position-dependent-mass forms.

Six models: the Euclidean oscillator and Coulomb problems, the nonlinear
(constant-curvature) oscillator and its dual Coulomb-like problem in a
nonconstant-curvature space, and the PDM reinterpretations of the latter two.
Energies are exact; wavefunctions are returned unnormalized (numerical
normalization lives in ``oscoul.quadrature``).  Units hbar = m = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Union

import numpy as np

from . import specfun

__all__ = [
    "BD",
    "MM",
    "CoulombLike",
    "EuclideanCoulomb",
    "EuclideanOscillator",
    "NonlinearOscillator",
    "PdmOrdering",
    "QuantumNumbers",
    "RadialState",
    "WavefunctionParams",
    "clike_bound_states",
    "clike_energy",
    "clike_is_bound",
    "clike_wavefunction",
    "clike_wavefunction_params",
    "coulomb_energy",
    "coulomb_wavefunction",
    "energy",
    "flat_picture_factor",
    "is_bound",
    "model_kind",
    "nlo_energy",
    "nlo_is_bound",
    "nlo_n_max",
    "nlo_wavefunction",
    "osc_energy",
    "osc_wavefunction",
    "pdm_energy",
    "pdm_mass",
    "pdm_potential",
    "wavefunction",
    "wavefunction_derivatives",
]


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def _finite(value) -> bool:
    return math.isfinite(float(value))


@dataclass(frozen=True)
class EuclideanOscillator:
    """Isotropic harmonic oscillator in d Euclidean dimensions."""

    d: int
    omega: float

    def __post_init__(self):
        _require(
            isinstance(self.d, (int, np.integer)) and self.d >= 2,
            "dimension d must be an integer >= 2",
        )
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "omega", float(self.omega))
        _require(_finite(self.omega) and self.omega > 0, "omega must be positive")

    @property
    def domain(self) -> tuple[float, float]:
        return (0.0, math.inf)


@dataclass(frozen=True)
class EuclideanCoulomb:
    """Attractive -Q/R problem in D dimensions.

    D is a real > 1: the duality image of a d-dimensional oscillator has
    D = (d+2)/2, a half-integer for odd d.
    """

    D: float
    Q: float

    def __post_init__(self):
        object.__setattr__(self, "D", float(self.D))
        object.__setattr__(self, "Q", float(self.Q))
        _require(_finite(self.D) and self.D > 1, "dimension D must be > 1")
        _require(_finite(self.Q) and self.Q > 0, "coupling Q must be positive")

    @property
    def domain(self) -> tuple[float, float]:
        return (0.0, math.inf)


@dataclass(frozen=True)
class NonlinearOscillator:
    """Nonlinear (Mathews-Lakshmanan type) oscillator in d dimensions.

    Equivalently an oscillator on a space of constant curvature -lam.  The
    potential strength is pinned to alpha^2 = beta*(beta+lam); only that
    one-parameter family is exactly solvable, so alpha is never an input.
    """

    d: int
    lam: float
    beta: float

    def __post_init__(self):
        _require(
            isinstance(self.d, (int, np.integer)) and self.d >= 2,
            "dimension d must be an integer >= 2",
        )
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "beta", float(self.beta))
        _require(_finite(self.lam) and self.lam != 0, "lam must be nonzero")
        _require(_finite(self.beta) and self.beta > 0, "beta must be positive")
        _require(self.beta * (self.beta + self.lam) > 0, "need beta*(beta+lam) > 0")

    @property
    def alpha2(self) -> float:
        return self.beta * (self.beta + self.lam)

    @property
    def domain(self) -> tuple[float, float]:
        if self.lam > 0:
            return (0.0, math.inf)
        return (0.0, 1.0 / math.sqrt(-self.lam))


@dataclass(frozen=True)
class CoulombLike:
    """-Q/R problem in the nonconstant-curvature space dual to the nonlinear oscillator."""

    D: float
    lam: float
    Q: float

    def __post_init__(self):
        object.__setattr__(self, "D", float(self.D))
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "Q", float(self.Q))
        _require(_finite(self.D) and self.D > 1, "dimension D must be > 1")
        _require(_finite(self.lam) and self.lam != 0, "lam must be nonzero")
        _require(_finite(self.Q) and self.Q > 0, "coupling Q must be positive")

    @property
    def domain(self) -> tuple[float, float]:
        if self.lam > 0:
            return (0.0, math.inf)
        return (0.0, 1.0 / abs(self.lam))


RadialModel = Union[EuclideanOscillator, EuclideanCoulomb, NonlinearOscillator, CoulombLike]

_OSCILLATOR_TYPES = (EuclideanOscillator, NonlinearOscillator)
_COULOMB_TYPES = (EuclideanCoulomb, CoulombLike)


def model_kind(model: RadialModel) -> str:
    """"oscillator" or "coulomb" side of the duality."""
    if isinstance(model, _OSCILLATOR_TYPES):
        return "oscillator"
    if isinstance(model, _COULOMB_TYPES):
        return "coulomb"
    raise ValueError(f"not a radial model: {model!r}")


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial quantum number n_r plus the angular quantum number (l or L).

    ang is an integer l on the oscillator side; Coulomb-side states produced by
    the duality carry L = l/2, which is a half-integer when l is odd.  Derived:
    n = 2 n_r + l (principal, oscillator side) and nu = n_r + L (Coulomb side).
    """

    n_r: int
    ang: float = 0.0

    def __post_init__(self):
        _require(
            isinstance(self.n_r, (int, np.integer)) and self.n_r >= 0,
            "n_r must be an integer >= 0",
        )
        object.__setattr__(self, "n_r", int(self.n_r))
        object.__setattr__(self, "ang", float(self.ang))
        _require(_finite(self.ang) and self.ang >= 0, "ang must be >= 0")

    @property
    def n(self) -> float:
        return 2 * self.n_r + self.ang

    @property
    def nu(self) -> float:
        return self.n_r + self.ang


@dataclass(frozen=True)
class WavefunctionParams:
    """(rho, sigma, tau) of the Coulomb-like bound state R^L (1+lam R)^tau P^(rho,sigma)(1+2 lam R)."""

    rho: float
    sigma: float
    tau: float


@dataclass(frozen=True)
class PdmOrdering:
    """von Roos kinetic-operator ordering (xi, eta, zeta), with xi+eta+zeta = -1."""

    xi: float
    eta: float
    zeta: float

    def __post_init__(self):
        object.__setattr__(self, "xi", float(self.xi))
        object.__setattr__(self, "eta", float(self.eta))
        object.__setattr__(self, "zeta", float(self.zeta))
        _require(
            all(_finite(v) for v in (self.xi, self.eta, self.zeta)),
            "ordering parameters must be finite",
        )
        _require(
            abs(self.xi + self.eta + self.zeta + 1.0) <= 1e-12,
            "von Roos parameters must satisfy xi + eta + zeta = -1",
        )

    @property
    def is_bd(self) -> bool:
        return (self.xi, self.eta, self.zeta) == (0.0, -1.0, 0.0)

    @property
    def is_mm(self) -> bool:
        return (self.xi, self.eta, self.zeta) == (-0.25, -0.5, -0.25)


BD = PdmOrdering(0.0, -1.0, 0.0)
MM = PdmOrdering(-0.25, -0.5, -0.25)


# ---------------------------------------------------------------------------
# energies and bound-state admissibility
# ---------------------------------------------------------------------------


def osc_energy(model: EuclideanOscillator, q: QuantumNumbers) -> float:
    """E_n = omega (n + d/2), n = 2 n_r + l."""
    return model.omega * (q.n + model.d / 2.0)


def coulomb_energy(model: EuclideanCoulomb, q: QuantumNumbers) -> float:
    """E_nu = -Q^2 / (2 (2 nu + D - 1)^2); depends on (n_r, L) through nu only."""
    return -model.Q**2 / (2.0 * (2.0 * q.nu + model.D - 1.0) ** 2)


def nlo_energy(model: NonlinearOscillator, q: QuantumNumbers) -> float:
    """E_n = beta (n + d/2) - (lam/2) n (n + d - 1).

    The formula is returned for every n; for lam > 0 states above
    ``nlo_n_max`` it is a formal value of a non-normalizable state (see
    ``nlo_is_bound``).
    """
    n = q.n
    return model.beta * (n + model.d / 2.0) - 0.5 * model.lam * n * (n + model.d - 1.0)


def nlo_n_max(model: NonlinearOscillator):
    """Largest normalizable n for lam > 0; None marks the unbounded lam < 0 ladder.

    A negative return value means the model has no bound states at all.
    """
    if model.lam < 0:
        return None
    x = model.beta / model.lam - (model.d + 1) / 2.0
    return math.ceil(x - 1e-12)


def nlo_is_bound(model: NonlinearOscillator, q: QuantumNumbers) -> bool:
    n_max = nlo_n_max(model)
    return n_max is None or q.n <= n_max


def clike_energy(model: CoulombLike, q: QuantumNumbers) -> float:
    """Bound-state energy of the Coulomb-like problem; nu-degeneracy is broken."""
    nu = q.nu
    ll = q.ang * (q.ang + model.D - 2.0)
    f1 = model.Q + model.lam * (-nu * (nu + 0.5) + ll)
    f2 = model.Q + model.lam * (-(nu + model.D - 1.0) * (nu + model.D - 1.5) + ll)
    return -f1 * f2 / (2.0 * (2.0 * nu + model.D - 1.0) ** 2)


def clike_is_bound(model: CoulombLike, q: QuantumNumbers) -> bool:
    """Normalizability inequality for (n_r, L); strict on the boundary."""
    n_r, L, D = q.n_r, q.ang, model.D
    if model.lam < 0:
        lhs = n_r**2 + (2 * L + D - 1) * n_r + 2 * L**2 + (2 * D - 3) * L + (D - 1) / 4.0
        return lhs < model.Q / abs(model.lam)
    lhs = n_r**2 + (2 * L + D - 1) * n_r + L + (D - 1) * (2 * D - 3) / 4.0
    return lhs < model.Q / model.lam


def clike_bound_states(model: CoulombLike, caps: tuple[int, int] | None = None) -> list[QuantumNumbers]:
    """All admissible (n_r, L), ordered by (L, n_r).

    With explicit ``caps = (n_r_max, L_max)`` the search box boundary must be
    fully inadmissible, otherwise a ValueError is raised.  Without caps the box
    is doubled until that holds (the admissible set is finite, so this
    terminates).
    """

    def boundary_clear(n_cap: int, l_cap: int) -> bool:
        edge = [QuantumNumbers(n_cap, L) for L in range(l_cap + 1)]
        edge += [QuantumNumbers(n_r, l_cap) for n_r in range(n_cap + 1)]
        return not any(clike_is_bound(model, q) for q in edge)

    if caps is not None:
        n_cap, l_cap = caps
        if not boundary_clear(n_cap, l_cap):
            raise ValueError(
                "caps too small: admissible states found on the search-box boundary"
            )
    else:
        n_cap = l_cap = 4
        while not boundary_clear(n_cap, l_cap):
            n_cap *= 2
            l_cap *= 2
    states = [
        QuantumNumbers(n_r, L)
        for L in range(l_cap + 1)
        for n_r in range(n_cap + 1)
        if clike_is_bound(model, QuantumNumbers(n_r, L))
    ]
    return states


def is_bound(model: RadialModel, q: QuantumNumbers) -> bool:
    if isinstance(model, NonlinearOscillator):
        return nlo_is_bound(model, q)
    if isinstance(model, CoulombLike):
        return clike_is_bound(model, q)
    return True


def energy(model: RadialModel, q: QuantumNumbers) -> float:
    if isinstance(model, EuclideanOscillator):
        return osc_energy(model, q)
    if isinstance(model, EuclideanCoulomb):
        return coulomb_energy(model, q)
    if isinstance(model, NonlinearOscillator):
        return nlo_energy(model, q)
    if isinstance(model, CoulombLike):
        return clike_energy(model, q)
    raise ValueError(f"not a radial model: {model!r}")


# ---------------------------------------------------------------------------
# wavefunctions
# ---------------------------------------------------------------------------


def _check_coordinate(model: RadialModel, x):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("coordinate must be finite")
    lo, hi = model.domain
    if not np.all((arr >= lo) & (arr < hi)):
        raise ValueError(f"coordinate outside the domain [{lo}, {hi})")
    return arr


def _like_input(value, x):
    return value if np.ndim(x) else float(value)


def osc_wavefunction(model: EuclideanOscillator, q: QuantumNumbers, r):
    """Unnormalized r^l exp(-omega r^2/2) L_{n_r}^(l+(d-2)/2)(omega r^2)."""
    ra = _check_coordinate(model, r)
    u = model.omega * ra * ra
    alpha = q.ang + (model.d - 2.0) / 2.0
    val = ra**q.ang * np.exp(-0.5 * u) * specfun.laguerre(q.n_r, alpha, u)
    return _like_input(val, r)


def coulomb_wavefunction(model: EuclideanCoulomb, q: QuantumNumbers, R):
    """Unnormalized R^L exp(-kappa R) L_{n_r}^(2L+D-2)(2 kappa R), kappa = sqrt(2|E_nu|)."""
    Ra = _check_coordinate(model, R)
    kappa = math.sqrt(2.0 * abs(coulomb_energy(model, q)))
    alpha = 2.0 * q.ang + model.D - 2.0
    val = Ra**q.ang * np.exp(-kappa * Ra) * specfun.laguerre(q.n_r, alpha, 2.0 * kappa * Ra)
    return _like_input(val, R)


def nlo_wavefunction(model: NonlinearOscillator, q: QuantumNumbers, r):
    """Unnormalized r^l (1+lam r^2)^(-beta/(2 lam)) P_{n_r}^(l+(d-2)/2, -beta/lam-1/2)(1+2 lam r^2)."""
    ra = _check_coordinate(model, r)
    t = 1.0 + model.lam * ra * ra
    a = q.ang + (model.d - 2.0) / 2.0
    b = -model.beta / model.lam - 0.5
    val = ra**q.ang * t ** (-model.beta / (2.0 * model.lam)) * specfun.jacobi(
        q.n_r, a, b, 1.0 + 2.0 * model.lam * ra * ra
    )
    return _like_input(val, r)


def clike_wavefunction_params(model: CoulombLike, q: QuantumNumbers) -> WavefunctionParams:
    """The (rho, sigma, tau) triple of the Coulomb-like bound-state wavefunction."""
    nu, L, D, lam, Q = q.nu, q.ang, model.D, model.lam, model.Q
    ll = L * (L + D - 2.0)
    rho = 2.0 * L + D - 2.0
    sigma = -(Q + lam * (nu**2 + (D - 1.0) * nu + 0.25 * (D - 1.0) + ll)) / (
        lam * (nu + 0.5 * (D - 1.0))
    )
    tau = -(Q + lam * (nu * (nu + D - 1.5) + ll)) / (lam * (2.0 * nu + D - 1.0))
    return WavefunctionParams(rho=rho, sigma=sigma, tau=tau)


def clike_wavefunction(model: CoulombLike, q: QuantumNumbers, R):
    """Unnormalized R^L (1+lam R)^tau P_{n_r}^(rho,sigma)(1+2 lam R)."""
    Ra = _check_coordinate(model, R)
    wp = clike_wavefunction_params(model, q)
    t = 1.0 + model.lam * Ra
    val = Ra**q.ang * t**wp.tau * specfun.jacobi(
        q.n_r, wp.rho, wp.sigma, 1.0 + 2.0 * model.lam * Ra
    )
    return _like_input(val, R)


def wavefunction(model: RadialModel, q: QuantumNumbers, x):
    if isinstance(model, EuclideanOscillator):
        return osc_wavefunction(model, q, x)
    if isinstance(model, EuclideanCoulomb):
        return coulomb_wavefunction(model, q, x)
    if isinstance(model, NonlinearOscillator):
        return nlo_wavefunction(model, q, x)
    if isinstance(model, CoulombLike):
        return clike_wavefunction(model, q, x)
    raise ValueError(f"not a radial model: {model!r}")


# ---------------------------------------------------------------------------
# exact derivative triples (psi, psi', psi'') for ODE-residual checks
# ---------------------------------------------------------------------------


def _mul3(fa, fb):
    f0, f1, f2 = fa
    g0, g1, g2 = fb
    return (f0 * g0, f1 * g0 + f0 * g1, f2 * g0 + 2.0 * f1 * g1 + f0 * g2)


def _pow3(x, a):
    if a == 0:
        one = np.ones_like(x)
        zero = np.zeros_like(x)
        return (one, zero, zero)
    return (x**a, a * x ** (a - 1.0), a * (a - 1.0) * x ** (a - 2.0))


def _cpow3(t, dt, ddt, b):
    # (t(x))^b with t > 0
    f = t**b
    f1 = b * t ** (b - 1.0) * dt
    f2 = b * (b - 1.0) * t ** (b - 2.0) * dt * dt + b * t ** (b - 1.0) * ddt
    return (f, f1, f2)


def _exp3(u, du, ddu):
    # exp(-u(x)/2)
    f = np.exp(-0.5 * u)
    return (f, -0.5 * du * f, (0.25 * du * du - 0.5 * ddu) * f)


def _laguerre3(n, alpha, z, dz, ddz):
    p0 = np.asarray(specfun.laguerre(n, alpha, z))
    p1 = np.asarray(specfun.laguerre_derivative(n, alpha, z, order=1))
    p2 = np.asarray(specfun.laguerre_derivative(n, alpha, z, order=2))
    return (p0, p1 * dz, p2 * dz * dz + p1 * ddz)


def _jacobi3(n, a, b, z, dz, ddz):
    p0 = np.asarray(specfun.jacobi(n, a, b, z))
    p1 = np.asarray(specfun.jacobi_derivative(n, a, b, z, order=1))
    p2 = np.asarray(specfun.jacobi_derivative(n, a, b, z, order=2))
    return (p0, p1 * dz, p2 * dz * dz + p1 * ddz)


def wavefunction_derivatives(model: RadialModel, q: QuantumNumbers, x):
    """(psi, psi', psi'') of the closed-form radial function, exact in x > 0."""
    xa = _check_coordinate(model, x)
    if isinstance(model, EuclideanOscillator):
        u = model.omega * xa * xa
        trip = _mul3(_pow3(xa, q.ang), _exp3(u, 2.0 * model.omega * xa, 2.0 * model.omega))
        alpha = q.ang + (model.d - 2.0) / 2.0
        trip = _mul3(trip, _laguerre3(q.n_r, alpha, u, 2.0 * model.omega * xa, 2.0 * model.omega))
    elif isinstance(model, EuclideanCoulomb):
        kappa = math.sqrt(2.0 * abs(coulomb_energy(model, q)))
        u = 2.0 * kappa * xa
        trip = _mul3(_pow3(xa, q.ang), _exp3(u, 2.0 * kappa, 0.0))
        alpha = 2.0 * q.ang + model.D - 2.0
        trip = _mul3(trip, _laguerre3(q.n_r, alpha, u, 2.0 * kappa, 0.0))
    elif isinstance(model, NonlinearOscillator):
        lam = model.lam
        t = 1.0 + lam * xa * xa
        trip = _mul3(
            _pow3(xa, q.ang),
            _cpow3(t, 2.0 * lam * xa, 2.0 * lam, -model.beta / (2.0 * lam)),
        )
        a = q.ang + (model.d - 2.0) / 2.0
        b = -model.beta / lam - 0.5
        z = 1.0 + 2.0 * lam * xa * xa
        trip = _mul3(trip, _jacobi3(q.n_r, a, b, z, 4.0 * lam * xa, 4.0 * lam))
    elif isinstance(model, CoulombLike):
        lam = model.lam
        wp = clike_wavefunction_params(model, q)
        t = 1.0 + lam * xa
        trip = _mul3(_pow3(xa, q.ang), _cpow3(t, lam, 0.0, wp.tau))
        z = 1.0 + 2.0 * lam * xa
        trip = _mul3(trip, _jacobi3(q.n_r, wp.rho, wp.sigma, z, 2.0 * lam, 0.0))
    else:
        raise ValueError(f"not a radial model: {model!r}")
    return trip


# ---------------------------------------------------------------------------
# PDM reinterpretation
# ---------------------------------------------------------------------------


def pdm_mass(kind: str, lam: float, x):
    """Position-dependent mass: (1+lam r^2)^-1 (oscillator) or (1+lam R)^-2 (coulomb)."""
    xa = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xa)) or not np.all(xa > 0):
        raise ValueError("coordinate must be finite and > 0")
    if kind == "oscillator":
        t = 1.0 + lam * xa * xa
    elif kind == "coulomb":
        t = 1.0 + lam * xa
    else:
        raise ValueError(f"unknown PDM kind {kind!r}")
    if not np.all(t > 0):
        raise ValueError("coordinate outside the domain (1 + lam x^... <= 0)")
    val = 1.0 / t if kind == "oscillator" else 1.0 / (t * t)
    return _like_input(val, x)


def pdm_potential(ordering: PdmOrdering, model, ang: float, x):
    """Closed-form PDM potential: V1/V2 for the oscillator, U for the Coulomb problem.

    Only the BD and MM orderings have closed-form potentials; a general von
    Roos triple is handled numerically by the oracle.
    """
    if not (ordering.is_bd or ordering.is_mm):
        raise ValueError(
            "closed-form PDM potentials exist only for the BD and MM orderings"
        )
    if isinstance(model, NonlinearOscillator):
        ra = _check_coordinate(model, x)
        d, lam, beta = model.d, model.lam, model.beta
        t = 1.0 + lam * ra * ra
        cent = (ang + (d - 1.0) / 2.0) * (ang + (d - 3.0) / 2.0) / (ra * ra)
        if ordering.is_bd:
            val = cent + (beta * (beta + lam) * ra * ra - 0.25 * lam) / t
        else:
            val = cent + ((beta + 0.5 * lam) ** 2 * ra * ra + 0.25 * lam) / t
        return _like_input(val, x)
    if isinstance(model, CoulombLike):
        Ra = _check_coordinate(model, x)
        D, lam, Q = model.D, model.lam, model.Q
        cent = (ang + (D - 1.0) / 2.0) * (ang + (D - 3.0) / 2.0) / (Ra * Ra)
        val = cent - (Q - 0.25 * (D - 1.0) * (2.0 * D - 5.0) * lam) / Ra
        return _like_input(val, x)
    raise ValueError("PDM potentials are defined for curved models only")


def pdm_energy(ordering: PdmOrdering, model, q: QuantumNumbers) -> float:
    """PDM energy: the curved energy plus the ordering-dependent shift."""
    if not (ordering.is_bd or ordering.is_mm):
        raise ValueError("closed-form PDM energies exist only for the BD and MM orderings")
    if isinstance(model, NonlinearOscillator):
        # BD and MM coincide for the oscillator
        return nlo_energy(model, q) - model.d * (model.d - 2.0) * model.lam / 8.0
    if isinstance(model, CoulombLike):
        D, lam = model.D, model.lam
        base = clike_energy(model, q)
        if ordering.is_bd:
            return base - (2.0 * D - 1.0) * (2.0 * D - 5.0) * lam**2 / 32.0
        return base - (2.0 * D - 3.0) ** 2 * lam**2 / 32.0
    raise ValueError("PDM energies are defined for curved models only")


def flat_picture_factor(kind: str, dim: float, lam: float, x):
    """Multiplier turning a weighted-measure eigenfunction into the flat-measure one.

    oscillator: r^((d-1)/2) (1+lam r^2)^(-1/4); coulomb: R^((D-1)/2) (1+lam R)^(-3/4).
    Accepts lam = 0 (Euclidean limit) and any real dim.
    """
    xa = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xa)) or not np.all(xa > 0):
        raise ValueError("coordinate must be finite and > 0")
    if kind == "oscillator":
        t = 1.0 + lam * xa * xa
        expo = -0.25
    elif kind == "coulomb":
        t = 1.0 + lam * xa
        expo = -0.75
    else:
        raise ValueError(f"unknown PDM kind {kind!r}")
    if not np.all(t > 0):
        raise ValueError("coordinate outside the domain")
    return _like_input(xa ** ((dim - 1.0) / 2.0) * t**expo, x)


def flat_factor_derivatives(kind: str, dim: float, lam: float, x):
    """(f, f', f'') of the flat-picture factor; used by the oracle residuals."""
    xa = np.asarray(x, dtype=float)
    a = (dim - 1.0) / 2.0
    if kind == "oscillator":
        t = 1.0 + lam * xa * xa
        return _mul3(_pow3(xa, a), _cpow3(t, 2.0 * lam * xa, 2.0 * lam, -0.25))
    if kind == "coulomb":
        t = 1.0 + lam * xa
        return _mul3(_pow3(xa, a), _cpow3(t, lam, 0.0, -0.75))
    raise ValueError(f"unknown PDM kind {kind!r}")


@dataclass(frozen=True)
class RadialState:
    """A model, its quantum numbers, and an amplitude; callable as psi(x)."""

    model: RadialModel
    q: QuantumNumbers
    amplitude: float = 1.0

    def __call__(self, x):
        return self.amplitude * wavefunction(self.model, self.q, x)

    def derivatives(self, x):
        f, f1, f2 = wavefunction_derivatives(self.model, self.q, x)
        a = self.amplitude
        return (a * f, a * f1, a * f2)

    @property
    def energy(self) -> float:
        return energy(self.model, self.q)

    def scaled(self, factor: float) -> "RadialState":
        return replace(self, amplitude=self.amplitude * factor)
