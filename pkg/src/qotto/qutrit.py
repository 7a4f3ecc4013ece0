"""Exact-state tools for a single three-level particle.

States are plain 3x3 complex numpy arrays (density matrices).  Level
indexing is fixed throughout the package:

    index 0 - ground level (energy 0)
    index 1 - cold excited level
    index 2 - hot excited level

Only the coherence between the two excited levels is ever generated;
the 0-1 and 0-2 off-diagonals stay exactly zero.  The dynamics of the
excited pair lives in a y-z Bloch plane with the conventions

    z = p3 - p2          (population inversion)
    y = i (rho_23 - rho_32)

so a diagonal state with inversion sits at the north pole (+z).  The
work-stroke unitary rotates this plane by +dtheta from +z toward +y
(an x-axis generator with the phase pinned in :func:`work_unitary`).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidState, InfiniteDivergence

# Validity tolerance for Hermiticity, trace and eigenvalue positivity.
STATE_TOL = 1e-12

# Eigenvalues of a second argument below this count as "no support" for
# relative-entropy purposes.
SUPPORT_TOL = 1e-14

MAX_ENTROPY = float(np.log(3.0))


@dataclass(frozen=True)
class BlochVector23:
    """Bloch-plane coordinates of the excited-levels (2,3) subspace."""

    y: float
    z: float

    @property
    def radius(self) -> float:
        return float(np.hypot(self.y, self.z))

    @property
    def angle(self) -> float:
        """Angle from +z toward +y, in (-pi, pi]."""
        return float(np.arctan2(self.y, self.z))


def check_state(rho: np.ndarray, tol: float = STATE_TOL) -> np.ndarray:
    """Validate a 3x3 density matrix and return it as a complex array.

    Raises InvalidState unless rho is Hermitian with unit trace and all
    eigenvalues >= -tol.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (3, 3):
        raise InvalidState(f"expected a 3x3 matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise InvalidState("matrix is not Hermitian within tolerance")
    if abs(rho.trace().real - 1.0) > tol or abs(rho.trace().imag) > tol:
        raise InvalidState(f"trace is {rho.trace():.17g}, expected 1")
    if np.min(np.linalg.eigvalsh(rho)) < -tol:
        raise InvalidState("matrix has a negative eigenvalue beyond tolerance")
    return rho


def check_populations(p, tol: float = STATE_TOL) -> np.ndarray:
    """Validate a length-3 probability vector."""
    p = np.asarray(p, dtype=float)
    if p.shape != (3,):
        raise InvalidState(f"expected 3 probabilities, got shape {p.shape}")
    if np.min(p) < -tol or np.max(p) > 1.0 + tol:
        raise InvalidState("probabilities must lie in [0, 1]")
    if abs(p.sum() - 1.0) > tol:
        raise InvalidState(f"probabilities sum to {p.sum():.17g}, expected 1")
    return p


def _eigenvalues_clipped(rho: np.ndarray, tol: float = STATE_TOL) -> np.ndarray:
    vals = np.linalg.eigvalsh(rho)
    if vals.min() < -tol:
        raise InvalidState("matrix has a negative eigenvalue beyond tolerance")
    return np.clip(vals, 0.0, None)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Von Neumann entropy -sum lambda ln lambda in nats (0 ln 0 := 0)."""
    rho = check_state(rho)
    vals = _eigenvalues_clipped(rho)
    mask = vals > 0.0
    return float(-(vals[mask] * np.log(vals[mask])).sum())


def relative_entropy(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Quantum relative entropy D(rho || sigma) = tr[rho (ln rho - ln sigma)].

    Requires the support of rho to lie inside the support of sigma;
    otherwise the divergence is infinite and InfiniteDivergence is raised.
    """
    rho = check_state(rho)
    sigma = check_state(sigma)
    r_vals, r_vecs = np.linalg.eigh(rho)
    s_vals, s_vecs = np.linalg.eigh(sigma)
    r_vals = np.clip(r_vals, 0.0, None)
    s_vals = np.clip(s_vals, 0.0, None)

    # overlap[k, l] = |<r_k | s_l>|^2
    overlap = np.abs(r_vecs.conj().T @ s_vecs) ** 2
    weight_on_sigma_kernel = r_vals @ overlap  # <s_l| rho |s_l> per sigma mode
    dead = s_vals <= SUPPORT_TOL
    if np.any(weight_on_sigma_kernel[dead] > 1e-12):
        raise InfiniteDivergence(
            "first state has support where the second one vanishes"
        )

    r_mask = r_vals > 0.0
    term_rho = float((r_vals[r_mask] * np.log(r_vals[r_mask])).sum())
    live = ~dead
    cross = overlap[:, live] * np.log(s_vals[live])
    term_sigma = float(r_vals @ cross.sum(axis=1))
    return term_rho - term_sigma


def dephase(rho: np.ndarray) -> np.ndarray:
    """Drop all off-diagonal elements, keeping the populations."""
    rho = check_state(rho)
    return np.diag(np.diag(rho).real).astype(complex)


def coherence_measure(rho: np.ndarray) -> float:
    """Coherence in nats: entropy gap S(dephase(rho)) - S(rho), which equals
    the relative entropy of rho to its dephased version.  Zero iff diagonal.
    """
    value = von_neumann_entropy(dephase(rho)) - von_neumann_entropy(rho)
    return max(value, 0.0)


def work_unitary(dtheta: float) -> np.ndarray:
    """The 3x3 rotating-frame propagator of the work stroke.

    Acts as the identity on the ground level and as
    [[cos(t/2), -i sin(t/2)], [-i sin(t/2), cos(t/2)]] on levels (2,3),
    which rotates the (y, z) Bloch vector by +dtheta from +z toward +y.
    """
    half = 0.5 * dtheta
    c, s = np.cos(half), np.sin(half)
    return np.array(
        [[1.0, 0.0, 0.0],
         [0.0, c, -1j * s],
         [0.0, -1j * s, c]],
        dtype=complex,
    )


def apply_work_unitary(rho: np.ndarray, dtheta: float) -> np.ndarray:
    """Apply the work-stroke rotation by dtheta to the state."""
    rho = check_state(rho)
    u = work_unitary(dtheta)
    out = u @ rho @ u.conj().T
    return 0.5 * (out + out.conj().T)  # re-hermitize round-off


def to_bloch(rho: np.ndarray) -> BlochVector23:
    """Excited-subspace Bloch coordinates of a state."""
    rho = check_state(rho)
    y = float((1j * (rho[1, 2] - rho[2, 1])).real)
    z = float((rho[2, 2] - rho[1, 1]).real)
    return BlochVector23(y=y, z=z)


def from_bloch(p1: float, bloch: BlochVector23, s: float) -> np.ndarray:
    """Build the state with ground population p1 and excited-subspace
    weight s = p2 + p3 from Bloch coordinates.

    Requires p1 + s = 1 and bloch.radius <= s (positivity of the excited
    block; for this y-z family the two conditions coincide).
    """
    if abs(p1 + s - 1.0) > STATE_TOL:
        raise InvalidState(f"p1 + s = {p1 + s:.17g}, expected 1")
    if not 0.0 <= p1 <= 1.0 or s < -STATE_TOL:
        raise InvalidState("p1 and s must be probabilities")
    if bloch.radius > s + STATE_TOL:
        raise InvalidState(
            f"Bloch radius {bloch.radius:.17g} exceeds excited weight {s:.17g}"
        )
    rho = np.zeros((3, 3), dtype=complex)
    rho[0, 0] = p1
    rho[1, 1] = 0.5 * (s - bloch.z)
    rho[2, 2] = 0.5 * (s + bloch.z)
    rho[1, 2] = -0.5j * bloch.y
    rho[2, 1] = 0.5j * bloch.y
    return rho
