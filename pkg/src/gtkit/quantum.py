"""Two-qubit state machinery and the entangled quantumization of 2x2 games.

The quantumization follows the probabilistic identity/bit-flip scheme applied
to a shared initial state alpha|00> + beta|11>: player 1 applies the identity
with probability p (the bit-flip otherwise), player 2 with probability q, and
payoffs are read from the diagonal of the resulting density operator in the
computational basis.  Equilibria are located by exhaustive grid search, which
doubles as the verifiable oracle at desk scale.

binary64 throughout; reductions use math.fsum so results are independent of
accumulation order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import errors, games

NORM_TOL = 1e-10
PSD_TOL = 1e-9
EQ_TOL = 1e-9

_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_I = np.eye(2, dtype=complex)


class Ket:
    """Unit state vector of a 1- or 2-qubit system (dimension 2 or 4)."""

    def __init__(self, amplitudes):
        v = np.asarray(amplitudes, dtype=complex)
        if v.ndim != 1 or v.size not in (2, 4):
            raise errors.InvalidState(f"ket dimension must be 2 or 4, got shape {v.shape}")
        if not np.all(np.isfinite(v.view(float))):
            raise errors.InvalidState("amplitudes must be finite")
        if abs(math.fsum(float(a) for a in np.abs(v) ** 2) - 1.0) > NORM_TOL:
            raise errors.InvalidState("state vector is not normalized")
        self.v = v

    @property
    def dim(self):
        return self.v.size

    def __repr__(self):
        return f"Ket({np.array2string(self.v, precision=6)})"


def basis_ket(dim, index):
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return Ket(v)


def tensor(a, b):
    """Tensor (Kronecker) product of two kets; preserves normalization."""
    return Ket(np.kron(a.v, b.v))


def born_probabilities(psi, basis):
    """Born-rule outcome probabilities |<b_i|psi>|^2 for an orthonormal basis."""
    vecs = [b.v for b in basis]
    if len(vecs) != psi.dim or any(v.size != psi.dim for v in vecs):
        raise errors.InvalidBasis("basis size must match the state dimension")
    gram = np.array([[np.vdot(u, w) for w in vecs] for u in vecs])
    if np.max(np.abs(gram - np.eye(psi.dim))) > NORM_TOL:
        raise errors.InvalidBasis("basis is not orthonormal within 1e-10")
    probs = np.array([abs(np.vdot(v, psi.v)) ** 2 for v in vecs])
    assert abs(math.fsum(probs.tolist()) - 1.0) <= NORM_TOL
    return probs


class DensityOperator:
    """Hermitian, PSD, trace-1 complex matrix."""

    def __init__(self, matrix):
        m = np.asarray(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise errors.InvalidState("density operator must be a square matrix")
        if np.max(np.abs(m - m.conj().T)) > NORM_TOL:
            raise errors.InvalidState("not Hermitian within 1e-10")
        if abs(np.trace(m).real - 1.0) > NORM_TOL or abs(np.trace(m).imag) > NORM_TOL:
            raise errors.InvalidState("trace is not 1 within 1e-10")
        if np.min(np.linalg.eigvalsh(m)) < -PSD_TOL:
            raise errors.InvalidState("not positive semidefinite (eigenvalue < -1e-9)")
        self.matrix = m

    @property
    def dim(self):
        return self.matrix.shape[0]

    def diagonal(self):
        return self.matrix.diagonal().real.copy()

    def __repr__(self):
        return f"DensityOperator(dim={self.dim})"


def density_of(psi):
    """Pure-state density operator psi psi^dagger."""
    return DensityOperator(np.outer(psi.v, psi.v.conj()))


@dataclass(frozen=True)
class QuantumizedGame:
    """A 2x2 base game plus the shared entangled initial state alpha|00> + beta|11>."""

    base: games.StrategicGame
    alpha: complex
    beta: complex

    def __post_init__(self):
        if self.base.shape != (2, 2):
            raise errors.UnsupportedShape("quantumization needs a 2x2 base game")
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        if abs(abs(self.alpha) ** 2 + abs(self.beta) ** 2 - 1.0) > NORM_TOL:
            raise errors.InvalidState("|alpha|^2 + |beta|^2 must be 1")

    def initial_ket(self):
        return Ket([self.alpha, 0.0, 0.0, self.beta])

    def payoff_columns(self):
        """Float payoffs of the four basis profiles 00, 01, 10, 11, per player."""
        order = [(0, 0), (0, 1), (1, 0), (1, 1)]
        u = [self.base.payoff(s) for s in order]
        return (
            np.array([float(x[0]) for x in u]),
            np.array([float(x[1]) for x in u]),
        )


def maximally_entangled(base):
    r = 1.0 / math.sqrt(2.0)
    return QuantumizedGame(base, r, r)


def _check_prob(value, name):
    if not (0.0 <= value <= 1.0):
        raise errors.InvalidArgument(f"{name} must lie in [0, 1], got {value}")


def mw_final_density(qg, p, q):
    """Final state of the probabilistic identity/bit-flip channel.

    rho' = sum over U, V in {I, X} of w_UV (U x V) rho (U x V)^dagger with
    weights (pq, p(1-q), (1-p)q, (1-p)(1-q)); computed by explicit Kraus-sum
    matrix products.
    """
    _check_prob(p, "p")
    _check_prob(q, "q")
    rho = density_of(qg.initial_ket()).matrix
    weights = {
        (0, 0): p * q,
        (0, 1): p * (1.0 - q),
        (1, 0): (1.0 - p) * q,
        (1, 1): (1.0 - p) * (1.0 - q),
    }
    total = np.zeros((4, 4), dtype=complex)
    for (a, b), w in weights.items():
        op = np.kron(_X if a else _I, _X if b else _I)
        total += w * (op @ rho @ op.conj().T)
    return DensityOperator(total)


def mw_diagonal(qg, p, q):
    """Closed-form diagonal of the channel output (oracle partner of mw_final_density)."""
    a2 = abs(qg.alpha) ** 2
    b2 = abs(qg.beta) ** 2
    return np.array(
        [
            p * q * a2 + (1.0 - p) * (1.0 - q) * b2,
            p * (1.0 - q) * a2 + (1.0 - p) * q * b2,
            (1.0 - p) * q * a2 + p * (1.0 - q) * b2,
            (1.0 - p) * (1.0 - q) * a2 + p * q * b2,
        ]
    )


def mw_expected_payoffs(qg, p, q):
    """Expected payoffs: payoff-weighted diagonal of the final density operator."""
    diag = mw_final_density(qg, p, q).diagonal()
    u1, u2 = qg.payoff_columns()
    return (
        math.fsum((diag * u1).tolist()),
        math.fsum((diag * u2).tolist()),
    )


def _payoff_surfaces(qg, grid_n):
    """Payoff arrays over the (grid_n+1)^2 probability grid, via the closed form."""
    ps = np.array([i / grid_n for i in range(grid_n + 1)])
    a2 = abs(qg.alpha) ** 2
    b2 = abs(qg.beta) ** 2
    P, Q = np.meshgrid(ps, ps, indexing="ij")
    d = [
        P * Q * a2 + (1 - P) * (1 - Q) * b2,
        P * (1 - Q) * a2 + (1 - P) * Q * b2,
        (1 - P) * Q * a2 + P * (1 - Q) * b2,
        (1 - P) * (1 - Q) * a2 + P * Q * b2,
    ]
    u1, u2 = qg.payoff_columns()
    pay1 = sum(d[k] * u1[k] for k in range(4))
    pay2 = sum(d[k] * u2[k] for k in range(4))
    return ps, pay1, pay2


def mw_nash_search(qg, grid_n=100):
    """Exhaustive equilibrium search on the (p, q) grid.

    A grid point is an equilibrium when no unilateral grid deviation improves
    either player's payoff by 1e-9 or more (ties count as no improvement, so
    weak equilibria are reported).  Returns ((p, q), (payoff1, payoff2)) rows
    in row-major grid order.
    """
    if grid_n < 1:
        raise errors.InvalidArgument("grid_n must be >= 1")
    ps, pay1, pay2 = _payoff_surfaces(qg, grid_n)
    col_best = pay1.max(axis=0)
    row_best = pay2.max(axis=1)
    out = []
    for i in range(grid_n + 1):
        for j in range(grid_n + 1):
            if pay1[i, j] >= col_best[j] - EQ_TOL and pay2[i, j] >= row_best[i] - EQ_TOL:
                out.append(((ps[i], ps[j]), (pay1[i, j], pay2[i, j])))
    return out


def payoff_surface_rows(qg, grid_n=100):
    """CSV-ready rows (p, q, payoff1, payoff2) over the full grid."""
    ps, pay1, pay2 = _payoff_surfaces(qg, grid_n)
    rows = ["p,q,payoff1,payoff2"]
    for i, j in itertools.product(range(grid_n + 1), repeat=2):
        rows.append(
            ",".join(f"{v:.17g}" for v in (ps[i], ps[j], pay1[i, j], pay2[i, j]))
        )
    return rows


def classical_product_payoffs(base, p, q):
    """Exact classical expected payoffs under the product profile ((p,1-p),(q,1-q))."""
    p, q = Fraction(p), Fraction(q)
    sigma = ((p, 1 - p), (q, 1 - q))
    return games.expected_payoff(base, sigma)
