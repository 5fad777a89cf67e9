"""Replicator dynamics on the probability simplex for evolution matrix games.

Integration uses binary64 floats (fixed-step RK4 with clamp-and-renormalize
projection); rest points, interior equilibria and the ESS face analysis use
exact rational elimination.  Every operation is deterministic: there is no
randomness anywhere in this module.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import errors
from ._linsolve import solve_exact

SUM_TOL = 1e-12
CLAMP = 1e-12
DIVERGE_TOL = 1e-9
NASH_TOL = 1e-10
REST_TOL = 1e-9

_trapezoid = getattr(np, "trapezoid", None) or np.trapz


def _to_fraction(value):
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, (int, Fraction, str)):
        return Fraction(value)
    if isinstance(value, np.floating):
        return Fraction(float(value))
    if isinstance(value, np.integer):
        return Fraction(int(value))
    raise errors.InvalidArgument(f"not a real matrix entry: {value!r}")


class EvolutionGame:
    """Symmetric evolution matrix game: an n x n payoff matrix A.

    Rational (or integer / string) entries are kept exactly alongside the
    float matrix; float inputs are rationalized exactly (binary64 floats are
    rationals), so the exact and float views always agree.
    """

    def __init__(self, matrix):
        exact = tuple(tuple(_to_fraction(v) for v in row) for row in matrix)
        n = len(exact)
        if n < 2 or any(len(row) != n for row in exact):
            raise errors.InvalidArgument("payoff matrix must be square with n >= 2")
        self.exact = exact
        self.matrix = np.array([[float(v) for v in row] for row in exact], dtype=float)

    @property
    def n(self):
        return len(self.exact)

    @property
    def is_symmetric(self):
        return all(
            self.exact[i][j] == self.exact[j][i]
            for i in range(self.n)
            for j in range(i + 1, self.n)
        )

    def __repr__(self):
        return f"EvolutionGame(n={self.n})"


class SimplexState:
    """Point of the (n-1)-simplex.

    Exact entries (ints, Fractions, strings) are preserved for the rational
    solvers; float input is accepted when it sums to 1 within 1e-12.
    """

    def __init__(self, probs):
        values = list(probs)
        floaty = any(isinstance(v, (float, np.floating)) for v in values)
        if floaty:
            p = np.asarray([float(v) for v in values], dtype=float)
            self.exact = None
        else:
            exact = tuple(_to_fraction(v) for v in values)
            if any(q < 0 for q in exact) or sum(exact) != 1:
                raise errors.InvalidState(f"not an exact simplex point: {exact}")
            self.exact = exact
            p = np.asarray([float(q) for q in exact], dtype=float)
        if p.ndim != 1 or p.size < 2:
            raise errors.InvalidState("simplex state needs at least 2 coordinates")
        if np.any(p < 0):
            raise errors.InvalidState(f"negative probability in {p}")
        if abs(p.sum() - 1.0) > SUM_TOL:
            raise errors.InvalidState(f"coordinates sum to {p.sum()!r}, not 1")
        self.p = p

    @property
    def n(self):
        return self.p.size

    def support(self, tol=CLAMP):
        if self.exact is not None:
            return tuple(i for i, q in enumerate(self.exact) if q > 0)
        return tuple(i for i, v in enumerate(self.p) if v > tol)

    def __repr__(self):
        return f"SimplexState({np.array2string(self.p, precision=6)})"


def _state_array(g, state):
    p = state.p if isinstance(state, SimplexState) else SimplexState(list(state)).p
    if p.size != g.n:
        raise errors.InvalidArgument(f"state has {p.size} coordinates for an {g.n}-strategy game")
    return p


def fitness(g, state):
    """Per-strategy expected payoff u(p) = A p."""
    return g.matrix @ _state_array(g, state)


def mean_fitness(g, state):
    """Population average payoff p A p^T."""
    p = _state_array(g, state)
    return float(p @ g.matrix @ p)


def excess(g, state):
    """Excess payoff h(p) = A p - (p A p^T) 1."""
    p = _state_array(g, state)
    u = g.matrix @ p
    return u - float(p @ u)


def _rhs(A, x):
    u = A @ x
    return x * (u - x @ u)


def replicator_rhs(g, state):
    """Replicator vector field p_i * (u_i(p) - mean); tangent to the simplex."""
    p = _state_array(g, state)
    return _rhs(g.matrix, p)


@dataclass(frozen=True)
class Trajectory:
    """Fixed-step trajectory: strictly increasing times and simplex states."""

    times: np.ndarray
    states: np.ndarray
    h: float

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        s = np.asarray(self.states, dtype=float)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "states", s)
        if t.ndim != 1 or s.ndim != 2 or s.shape[0] != t.size:
            raise errors.InvalidArgument("trajectory needs matching times and states")
        if np.any(np.diff(t) <= 0):
            raise errors.InvalidArgument("times must be strictly increasing")
        if np.any(s < 0) or np.max(np.abs(s.sum(axis=1) - 1.0)) > SUM_TOL:
            raise errors.InvalidState("trajectory left the simplex")

    def __len__(self):
        return self.times.size

    @property
    def final(self):
        return self.states[-1]

    def csv_rows(self, names=None):
        """CSV with 17-significant-digit floats: t, p_1, ..., p_n."""
        n = self.states.shape[1]
        header = ",".join(["t"] + [names[i] if names else f"p_{i + 1}" for i in range(n)])
        rows = [header]
        for t, row in zip(self.times, self.states):
            rows.append(",".join(f"{v:.17g}" for v in [t, *row]))
        return rows


def _rhs_list(A_rows, x, n):
    u = [sum(row[j] * x[j] for j in range(n)) for row in A_rows]
    s = sum(x[j] * u[j] for j in range(n))
    return [x[j] * (u[j] - s) for j in range(n)]


def _step_list(A_rows, p, h, n):
    """One RK4 step plus the clamp/renormalize projection, on plain floats.

    Plain-float arithmetic keeps the 2e5-step desk runs fast; results are
    deterministic (fixed evaluation order, no reductions over numpy views).
    """
    k1 = _rhs_list(A_rows, p, n)
    k2 = _rhs_list(A_rows, [p[j] + 0.5 * h * k1[j] for j in range(n)], n)
    k3 = _rhs_list(A_rows, [p[j] + 0.5 * h * k2[j] for j in range(n)], n)
    k4 = _rhs_list(A_rows, [p[j] + h * k3[j] for j in range(n)], n)
    new = [p[j] + (h / 6.0) * (k1[j] + 2.0 * (k2[j] + k3[j]) + k4[j]) for j in range(n)]
    low = min(new)
    if low < -DIVERGE_TOL:
        raise errors.IntegrationDiverged(f"state entry {low} below -{DIVERGE_TOL}")
    new = [0.0 if abs(v) < CLAMP or v < 0.0 else v for v in new]
    total = sum(new)
    return [v / total for v in new]


def rk4_step(g, p, h):
    """One RK4 step of the replicator flow plus the clamp/renormalize projection."""
    x = [float(v) for v in np.asarray(p, dtype=float)]
    rows = tuple(tuple(row) for row in g.matrix.tolist())
    return np.asarray(_step_list(rows, x, h, g.n), dtype=float)


def integrate(g, p0, t_end, h=1e-3):
    """Classical fixed-step RK4 on the replicator equation.

    After every step, entries of magnitude below 1e-12 are clamped to zero and
    the state renormalized to sum 1.  Deterministic; t_end is realized as
    round(t_end / h) steps of exactly h.
    """
    if h <= 0 or t_end <= 0:
        raise errors.InvalidArgument("need h > 0 and t_end > 0")
    p = _state_array(g, p0 if isinstance(p0, SimplexState) else SimplexState(list(p0)))
    steps = max(1, int(round(t_end / h)))
    rows = tuple(tuple(row) for row in g.matrix.tolist())
    n = g.n
    states = np.empty((steps + 1, n), dtype=float)
    states[0] = p
    x = [float(v) for v in p]
    for k in range(steps):
        x = _step_list(rows, x, h, n)
        states[k + 1] = x
    times = np.arange(steps + 1, dtype=float) * h
    return Trajectory(times, states, h)


def time_average(traj):
    """Trapezoidal time average (1/T) * integral of p(t) dt over the trajectory."""
    span = traj.times[-1] - traj.times[0]
    return _trapezoid(traj.states, traj.times, axis=0) / span


# ---------------------------------------------------------------------------
# rest points and equilibrium structure


class InteriorRestPoints(NamedTuple):
    points: list
    continuum: bool


def _face_rest_point(exact, support):
    """Exact rest point of the subgame on `support`; (coords | None, continuum)."""
    m = len(support)
    if m == 1:
        return (Fraction(1),), False
    rows, rhs = [], []
    base = support[0]
    for i in support[1:]:
        rows.append([exact[base][j] - exact[i][j] for j in support])
        rhs.append(Fraction(0))
    rows.append([Fraction(1)] * m)
    rhs.append(Fraction(1))
    status, sol = solve_exact(rows, rhs)
    if status == "unique":
        return tuple(sol), False
    if status == "many":
        return None, True
    return None, False


def interior_rest_points(g):
    """Exact solutions of (Ap)_1 = ... = (Ap)_n, sum p = 1 with all p_i > 0.

    The continuum flag reports an underdetermined system (a face of rest
    points rather than isolated ones).
    """
    coords, continuum = _face_rest_point(g.exact, tuple(range(g.n)))
    points = []
    if coords is not None and all(q > 0 for q in coords):
        points.append(SimplexState(coords))
    return InteriorRestPoints(points, continuum)


def is_nash_state(g, state):
    """Nash state test: every pure payoff against p is at most the mean (vertex check)."""
    p = _state_array(g, state)
    u = g.matrix @ p
    return bool(np.max(u) <= float(p @ u) + NASH_TOL)


def transversal_eigenvalues(g, state):
    """Eigenvalues transversal to the support faces at a boundary rest point.

    Returns (index, h_i(p)) for every strategy outside the support; the point
    is a Nash state iff all returned values are <= 1e-10.
    """
    st = state if isinstance(state, SimplexState) else SimplexState(list(state))
    p = _state_array(g, st)
    if np.max(np.abs(_rhs(g.matrix, p))) > REST_TOL:
        raise errors.InvalidArgument("not a rest point (residual above 1e-9)")
    support = st.support()
    outside = [i for i in range(g.n) if i not in support]
    if not outside:
        raise errors.InvalidArgument("interior point has no transversal directions")
    h = excess(g, st)
    return [(i, float(h[i])) for i in outside]


@dataclass(frozen=True)
class RestPointReport:
    point: SimplexState
    residual: float
    classification: str
    is_nash: bool
    transversal_eigenvalues: tuple


def rest_point_reports(g):
    """Isolated rest points on every face, with Nash and transversal diagnostics.

    Returns (reports, continuum_supports); supports whose indifference system
    is underdetermined are listed rather than expanded.
    """
    reports = []
    continua = []
    for m in range(1, g.n + 1):
        for support in itertools.combinations(range(g.n), m):
            coords, continuum = _face_rest_point(g.exact, support)
            if continuum:
                continua.append(support)
                continue
            if coords is None or any(q <= 0 for q in coords):
                continue
            full = [Fraction(0)] * g.n
            for idx, q in zip(support, coords):
                full[idx] = q
            state = SimplexState(full)
            residual = float(np.max(np.abs(replicator_rhs(g, state))))
            interior = m == g.n
            trans = ()
            if not interior:
                trans = tuple(transversal_eigenvalues(g, state))
            reports.append(
                RestPointReport(
                    point=state,
                    residual=residual,
                    classification="interior" if interior else "boundary",
                    is_nash=is_nash_state(g, state),
                    transversal_eigenvalues=trans,
                )
            )
    return reports, continua


# ---------------------------------------------------------------------------
# evolutionary stability


@dataclass(frozen=True)
class EssReport:
    is_ess: bool
    method: str


def _exact_state(state):
    if state.exact is not None:
        total = sum(state.exact)
        return tuple(q / total for q in state.exact)
    vals = [Fraction(float(v)) for v in state.p]
    total = sum(vals)
    return tuple(q / total for q in vals)


def _psi_coefficients(exact, p, face):
    """psi(x) = c . x - x^T M x on the face simplex: best-reply invasion margin."""
    c = [sum(p[i] * exact[i][k] for i in range(len(p))) for k in face]
    M = [[exact[k][l] for l in face] for k in face]
    return c, M


def _psi_value(c, M, x):
    lin = sum(ck * xk for ck, xk in zip(c, x))
    quad = sum(M[k][l] * x[k] * x[l] for k in range(len(x)) for l in range(len(x)))
    return lin - quad


def _edge_coefficients(c, M, k, l):
    """psi restricted to the edge (1-t) e_k + t e_l as quad*t^2 + lin*t + const."""
    s_kl = M[k][l] + M[l][k]
    const = c[k] - M[k][k]
    lin = (c[l] - c[k]) - (s_kl - 2 * M[k][k])
    quad = -(M[k][k] + M[l][l] - s_kl)
    return quad, lin, const


def _ess_exact_face(c, M, x_star):
    """Exact decision: min psi over the face simplex is 0 and attained only at x_star.

    Candidate minima: face vertices, edge-interior critical points, and
    face-interior critical points (quadratics are constant on degenerate
    critical sets).  Supports faces of dimension <= 2.
    """
    m = len(c)
    witnesses = []  # (value, point or ("line", data))
    for k in range(m):
        x = tuple(Fraction(int(k == i)) for i in range(m))
        witnesses.append((_psi_value(c, M, x), x))
    for k in range(m):
        for l in range(k + 1, m):
            quad, lin, const = _edge_coefficients(c, M, k, l)
            if quad == 0:
                continue
            t = -lin / (2 * quad)
            if 0 < t < 1:
                x = tuple(
                    (1 - t) if i == k else (t if i == l else Fraction(0)) for i in range(m)
                )
                witnesses.append((quad * t * t + lin * t + const, x))
    if m == 3:
        witnesses.extend(_interior_critical_points_3(c, M))

    min_val = min(v for v, _ in witnesses)
    if min_val < 0:
        return False
    if min_val > 0:
        # psi(x_star) = 0 always, so min over the face cannot exceed 0
        raise AssertionError("invasion margin positive at the equilibrium itself")
    for value, witness in witnesses:
        if value != 0:
            continue
        if isinstance(witness, tuple) and witness and witness[0] == "line":
            _, point, direction = witness
            if _line_meets_simplex_beyond(point, direction, x_star):
                return False
            continue
        if witness != x_star:
            return False
    return True


def _interior_critical_points_3(c, M):
    """Critical points of psi on the interior of a 2-simplex face (m = 3)."""
    s12 = M[0][1] + M[1][0]
    s13 = M[0][2] + M[2][0]
    s23 = M[1][2] + M[2][1]
    const = c[2] - M[2][2]
    a1 = c[0] - c[2] - s13 + 2 * M[2][2]
    a2 = c[1] - c[2] - s23 + 2 * M[2][2]
    a11 = -M[0][0] - M[2][2] + s13
    a22 = -M[1][1] - M[2][2] + s23
    a12 = -s12 - 2 * M[2][2] + s13 + s23

    def tilde(u, v):
        return const + a1 * u + a2 * v + a11 * u * u + a22 * v * v + a12 * u * v

    # algebra self-check against the direct quadratic at two rational points
    for u, v in ((Fraction(1, 3), Fraction(1, 3)), (Fraction(1, 5), Fraction(2, 5))):
        assert tilde(u, v) == _psi_value(c, M, (u, v, 1 - u - v))

    rows = [[2 * a11, a12], [a12, 2 * a22]]
    rhs = [-a1, -a2]
    det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    out = []
    if det != 0:
        status, sol = solve_exact(rows, rhs)
        u, v = sol
        if u >= 0 and v >= 0 and u + v <= 1:
            out.append((tilde(u, v), (u, v, 1 - u - v)))
        return out
    status, sol = solve_exact(rows, rhs)
    if status == "none":
        return out
    # a line (or plane) of critical points; psi is constant along it
    u0, v0 = sol
    if rows[0] == [0, 0] and rows[1] == [0, 0]:
        # gradient constant: critical only if a1 = a2 = 0, value covered by vertices
        return out
    # direction orthogonal to the (rank-1) gradient system
    gu, gv = (rows[0] if rows[0] != [0, 0] else rows[1])
    direction = (-gv, gu)
    value = tilde(u0, v0)
    out.append((value, ("line", (u0, v0, 1 - u0 - v0), (direction[0], direction[1], -direction[0] - direction[1]))))
    return out


def _line_meets_simplex_beyond(point, direction, x_star):
    """Does {point + t*direction} intersect the simplex at any point != x_star?"""
    lo, hi = None, None  # open = unbounded
    for pk, dk in zip(point, direction):
        if dk == 0:
            if pk < 0:
                return False
        else:
            bound = -pk / dk
            if dk > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
    if lo is not None and hi is not None and lo > hi:
        return False
    if lo is None or hi is None or lo < hi:
        return True  # a whole segment of critical points inside the simplex
    t = lo
    pt = tuple(pk + t * dk for pk, dk in zip(point, direction))
    return pt != x_star


def _face_grid(m, resolution):
    """Deterministic barycentric grid x = k/resolution on an (m-1)-face."""
    for combo in itertools.combinations(range(resolution + m - 1), m - 1):
        parts = []
        prev = -1
        for c in combo:
            parts.append(c - prev - 1)
            prev = c
        parts.append(resolution + m - 2 - prev)
        yield tuple(Fraction(k, resolution) for k in parts)


def ess_check(g, state):
    """Evolutionary stability of a Nash state.

    Faces of dimension <= 2 (always the case for n <= 3) get an exact
    rational decision over the whole best-reply face; larger faces are
    sampled on a deterministic barycentric grid (resolution 1/64, coarsened
    on very high-dimensional faces) and the verdict is sampled, not
    certified.
    """
    st = state if isinstance(state, SimplexState) else SimplexState(list(state))
    if not is_nash_state(g, st):
        raise errors.InvalidState("evolutionary stability is defined for Nash states only")
    p = _exact_state(st)
    exact = g.exact
    u = [sum(exact[i][j] * p[j] for j in range(g.n)) for i in range(g.n)]
    if st.exact is not None:
        top = max(u)
        face = [i for i in range(g.n) if u[i] == top]
    else:
        top = max(u)
        face = [i for i in range(g.n) if top - u[i] <= Fraction(1, 10**9)]
    support = [i for i in range(g.n) if p[i] > 0]
    if any(i not in face for i in support):
        raise errors.InvalidState(
            "state support is not contained in its best-reply set; "
            "use an exactly specified Nash state"
        )
    if len(face) == 1:
        return EssReport(True, "exact-face")

    c, M = _psi_coefficients(exact, p, face)
    x_star = tuple(p[i] for i in face)
    if len(face) <= 3:
        return EssReport(_ess_exact_face(c, M, x_star), "exact-face")

    resolution = 64
    while math.comb(resolution + len(face) - 1, len(face) - 1) > 200_000 and resolution > 4:
        resolution //= 2
    ok = True
    for x in _face_grid(len(face), resolution):
        if x == x_star:
            continue
        if _psi_value(c, M, x) <= 0:
            ok = False
            break
    return EssReport(ok, f"sampled-1/{resolution}")


def is_ess(g, state):
    """Boolean view of ess_check (see its docstring for the certification caveat)."""
    return ess_check(g, state).is_ess


# ---------------------------------------------------------------------------
# rate identities


def fisher_rate_check(g, state):
    """Residual of the mean-payoff growth identity for symmetric games.

    Compares the analytic derivative of p A p^T along the flow with
    2 * sum p_i h_i(p)^2; the residual is <= 1e-10 for symmetric A.
    """
    if not g.is_symmetric:
        raise errors.UnsupportedMatrix("the rate identity holds for symmetric matrices only")
    p = _state_array(g, state)
    A = g.matrix
    r = _rhs(A, p)
    lhs = float(r @ (A + A.T) @ p)
    h = A @ p - float(p @ A @ p)
    rhs_val = 2.0 * float(np.sum(p * h * h))
    return abs(lhs - rhs_val)


def power_product_rate(g, state, alphas):
    """Analytic derivative of V(p) = prod p_i**alpha_i along the replicator flow."""
    p = _state_array(g, state)
    alphas = np.asarray(alphas, dtype=float)
    if np.any(p <= 0):
        raise errors.InvalidArgument("power product needs an interior state")
    V = float(np.prod(p**alphas))
    u = g.matrix @ p
    return V * float(np.sum(alphas * (u - float(p @ u))))


# ---------------------------------------------------------------------------
# recurrence detection


@dataclass(frozen=True)
class RecurrenceReport:
    kind: str  # "none" | "convergent" | "recurrent"
    period: float | None = None
    detail: str = ""


def detect_recurrence(traj, tol=1e-3):
    """Classify a trajectory as convergent, recurrent, or neither.

    Convergent: the terminal window's diameter falls below tol.  Recurrent:
    the state re-enters the tol-ball around the initial state in episodes
    whose spacing is stable within +-10%; the period estimate is the mean
    spacing.
    """
    n = len(traj)
    if n < 10:
        raise errors.InsufficientData(f"need at least 10 samples, got {n}")
    window = traj.states[-max(10, n // 10):]
    diameter = float(np.max(window.max(axis=0) - window.min(axis=0)))
    if diameter < tol:
        return RecurrenceReport("convergent", detail=f"terminal window diameter {diameter:.3g}")

    ref = traj.states[0]
    dist = np.max(np.abs(traj.states - ref), axis=1)
    inside = dist < tol
    episodes = []
    for k in range(1, n):
        if inside[k] and not inside[k - 1]:
            episodes.append(traj.times[k])
    if len(episodes) >= 2:
        spacings = np.diff(np.asarray(episodes))
        mean = float(spacings.mean())
        if mean > 0 and np.all(np.abs(spacings - mean) <= 0.10 * mean):
            return RecurrenceReport(
                "recurrent", period=mean, detail=f"{len(episodes)} returns to the start ball"
            )
    return RecurrenceReport("none")
