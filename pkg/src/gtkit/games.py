"""Exact-rational normal-form games: equilibria, dominance, welfare, bargaining.

All payoffs are ``fractions.Fraction``; no floats enter any equilibrium
decision, so every result here is bit-reproducible.  Games are immutable
after construction and all operations are pure functions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import errors
from ._linsolve import solve_exact


def as_fraction(value):
    """Convert ints, Fractions and strings like "2/5" to Fraction; floats are rejected."""
    if isinstance(value, bool):
        raise errors.InvalidArgument(f"not a rational payoff: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise errors.InvalidArgument(f"not a rational: {value!r}") from exc
    raise errors.InvalidArgument(
        f"exact rational required, got {type(value).__name__}: {value!r}"
    )


class StrategicGame:
    """Finite n-player normal-form game with an exact-rational payoff tensor.

    ``payoffs`` may be a nested sequence (one level per player, leaf = one
    rational per player) or a mapping from index-tuple profiles to payoff
    sequences; it must be total over the product of the strategy sets.
    """

    def __init__(self, strategy_names, payoffs):
        names = tuple(tuple(str(s) for s in per_player) for per_player in strategy_names)
        if len(names) < 2:
            raise errors.InvalidArgument("a strategic game needs at least 2 players")
        if any(len(per_player) == 0 for per_player in names):
            raise errors.InvalidArgument("every strategy set must be non-empty")
        self._names = names
        self._shape = tuple(len(per_player) for per_player in names)
        n = len(names)

        table = {}
        if hasattr(payoffs, "keys"):
            for profile, vector in payoffs.items():
                table[tuple(profile)] = tuple(as_fraction(v) for v in vector)
        else:
            for profile in itertools.product(*(range(k) for k in self._shape)):
                cell = payoffs
                for idx in profile:
                    cell = cell[idx]
                table[profile] = tuple(as_fraction(v) for v in cell)
        for profile in itertools.product(*(range(k) for k in self._shape)):
            if profile not in table:
                raise errors.InvalidArgument(f"payoff map is not total: missing {profile}")
            if len(table[profile]) != n:
                raise errors.InvalidArgument(
                    f"profile {profile}: expected {n} payoffs, got {len(table[profile])}"
                )
        self._table = table

    @property
    def n_players(self):
        return len(self._names)

    @property
    def shape(self):
        return self._shape

    @property
    def strategy_names(self):
        return self._names

    def profiles(self):
        """Iterate all pure profiles in lexicographic order."""
        return itertools.product(*(range(k) for k in self._shape))

    def validate_profile(self, profile):
        profile = tuple(profile)
        if len(profile) != self.n_players or any(
            not isinstance(s, int) or not (0 <= s < k)
            for s, k in zip(profile, self._shape)
        ):
            raise errors.InvalidProfile(f"profile {profile} invalid for shape {self._shape}")
        return profile

    def payoff(self, profile):
        """Payoff vector u(s), one Fraction per player."""
        return self._table[self.validate_profile(profile)]

    def labels(self, profile):
        return tuple(self._names[i][s] for i, s in enumerate(profile))

    def __eq__(self, other):
        return (
            isinstance(other, StrategicGame)
            and self._names == other._names
            and self._table == other._table
        )

    def __hash__(self):
        return hash((self._names, tuple(sorted(self._table.items()))))

    def __repr__(self):
        return f"StrategicGame(shape={self._shape})"


@dataclass(frozen=True)
class CongestionGame:
    """Players pick resource subsets; per-resource cost depends on the user count.

    ``costs[j][k-1]`` is the cost of resource j when k players use it and must
    be defined for every k in 1..player_count.  ``strategies[i]`` lists player
    i's allowable strategies, each a tuple of resource indices.
    """

    resource_names: tuple
    costs: tuple
    strategies: tuple

    def __post_init__(self):
        n = len(self.strategies)
        object.__setattr__(
            self, "costs", tuple(tuple(as_fraction(c) for c in per_res) for per_res in self.costs)
        )
        object.__setattr__(
            self,
            "strategies",
            tuple(tuple(tuple(sorted(set(s))) for s in per_player) for per_player in self.strategies),
        )
        if n < 2:
            raise errors.InvalidArgument("congestion game needs at least 2 players")
        for per_res in self.costs:
            if len(per_res) < n:
                raise errors.InvalidArgument("cost function must be total on counts 1..player_count")
        for per_player in self.strategies:
            if not per_player:
                raise errors.InvalidArgument("every player needs at least one strategy")
            for strat in per_player:
                if not strat:
                    raise errors.InvalidArgument("allowable strategies must be non-empty")
                if any(not (0 <= j < len(self.costs)) for j in strat):
                    raise errors.InvalidArgument("strategy references an unknown resource")

    @property
    def n_players(self):
        return len(self.strategies)

    def usage(self, profile):
        """Per-resource user counts under the profile of strategy indices."""
        counts = [0] * len(self.costs)
        for i, s in enumerate(profile):
            for j in self.strategies[i][s]:
                counts[j] += 1
        return tuple(counts)

    def player_cost(self, profile, player):
        counts = self.usage(profile)
        return sum(
            (self.costs[j][counts[j] - 1] for j in self.strategies[player][profile[player]]),
            Fraction(0),
        )


@dataclass(frozen=True)
class BargainingProblem:
    """Finite utility-point set (its convex hull is the feasible set) plus a disagreement point."""

    points: tuple
    disagreement: tuple

    def __post_init__(self):
        pts = tuple(sorted({(as_fraction(x), as_fraction(y)) for x, y in self.points}))
        if not pts:
            raise errors.InvalidArgument("bargaining problem needs at least one utility point")
        object.__setattr__(self, "points", pts)
        d = self.disagreement
        object.__setattr__(self, "disagreement", (as_fraction(d[0]), as_fraction(d[1])))


# ---------------------------------------------------------------------------
# mixed profiles


def validate_mixed(game, mixed):
    """Normalize a mixed profile to tuples of Fractions; entries >= 0 and exact sum 1."""
    if len(mixed) != game.n_players:
        raise errors.InvalidProfile("one probability vector per player required")
    out = []
    for i, probs in enumerate(mixed):
        vec = tuple(as_fraction(q) for q in probs)
        if len(vec) != game.shape[i]:
            raise errors.InvalidProfile(
                f"player {i}: {len(vec)} probabilities for {game.shape[i]} strategies"
            )
        if any(q < 0 for q in vec) or sum(vec) != 1:
            raise errors.InvalidProfile(f"player {i}: not a probability vector: {vec}")
        out.append(vec)
    return tuple(out)


def pure_to_mixed(game, profile):
    profile = game.validate_profile(profile)
    return tuple(
        tuple(Fraction(1) if s == choice else Fraction(0) for s in range(k))
        for choice, k in zip(profile, game.shape)
    )


def payoff(game, profile):
    """Payoff vector of a pure profile (tensor lookup)."""
    return game.payoff(profile)


def expected_payoff(game, mixed):
    """Expected payoff vector under independent mixing, exact."""
    mixed = validate_mixed(game, mixed)
    totals = [Fraction(0)] * game.n_players
    for profile in game.profiles():
        prob = Fraction(1)
        for j, s in enumerate(profile):
            prob *= mixed[j][s]
            if prob == 0:
                break
        if prob == 0:
            continue
        u = game.payoff(profile)
        for i in range(game.n_players):
            totals[i] += prob * u[i]
    return tuple(totals)


def _pure_vs_opponents(game, player, strategy, opponents):
    """Expected payoff to `player` using `strategy` against independent opponents."""
    others = [j for j in range(game.n_players) if j != player]
    total = Fraction(0)
    for combo in itertools.product(*(range(game.shape[j]) for j in others)):
        prob = Fraction(1)
        for j, s in zip(others, combo):
            prob *= opponents[j][s]
            if prob == 0:
                break
        if prob == 0:
            continue
        profile = [0] * game.n_players
        profile[player] = strategy
        for j, s in zip(others, combo):
            profile[j] = s
        total += prob * game.payoff(tuple(profile))[player]
    return total


def best_responses(game, player, opponents):
    """Argmax set of pure strategies for `player` against the opponents' mixed profile.

    `opponents` maps every other player's index to their probability vector.
    """
    if not (0 <= player < game.n_players):
        raise errors.InvalidProfile(f"no player {player}")
    probs = {}
    for j in range(game.n_players):
        if j == player:
            continue
        if j not in opponents:
            raise errors.InvalidProfile(f"missing mixed strategy for player {j}")
        vec = tuple(as_fraction(q) for q in opponents[j])
        if len(vec) != game.shape[j] or any(q < 0 for q in vec) or sum(vec) != 1:
            raise errors.InvalidProfile(f"player {j}: not a probability vector")
        probs[j] = vec
    values = [_pure_vs_opponents(game, player, s, probs) for s in range(game.shape[player])]
    top = max(values)
    return {s for s, v in enumerate(values) if v == top}


# ---------------------------------------------------------------------------
# equilibria


def pure_nash(game):
    """All pure Nash equilibria (weak inequality) by full enumeration."""
    out = set()
    for profile in game.profiles():
        u = game.payoff(profile)
        stable = True
        for i in range(game.n_players):
            for dev in range(game.shape[i]):
                if dev == profile[i]:
                    continue
                alt = profile[:i] + (dev,) + profile[i + 1:]
                if game.payoff(alt)[i] > u[i]:
                    stable = False
                    break
            if not stable:
                break
        if stable:
            out.add(profile)
    return out


@dataclass(frozen=True)
class EliminationStep:
    round: int
    player: int
    strategy: int
    label: str
    dominated_by: int


@dataclass(frozen=True)
class EliminationResult:
    game: StrategicGame
    surviving: tuple
    trace: tuple


def iterated_elimination(game):
    """Iterated elimination of strictly dominated pure strategies, with trace.

    Dominance is tested by pure strategies against all surviving opponent
    profiles; passes repeat until a fixpoint.  The trace records eliminations
    in order with original strategy indices.
    """
    surviving = [list(range(k)) for k in game.shape]
    trace = []
    rnd = 0
    changed = True
    while changed:
        changed = False
        rnd += 1
        for i in range(game.n_players):
            if len(surviving[i]) == 1:
                continue
            others = [j for j in range(game.n_players) if j != i]
            opp_profiles = list(itertools.product(*(surviving[j] for j in others)))

            def u_i(own, opp):
                profile = [0] * game.n_players
                profile[i] = own
                for j, s in zip(others, opp):
                    profile[j] = s
                return game.payoff(tuple(profile))[i]

            doomed = []
            for a in surviving[i]:
                for b in surviving[i]:
                    if b == a:
                        continue
                    if all(u_i(b, opp) > u_i(a, opp) for opp in opp_profiles):
                        doomed.append((a, b))
                        break
            for a, b in doomed:
                surviving[i].remove(a)
                trace.append(EliminationStep(rnd, i, a, game.strategy_names[i][a], b))
                changed = True

    names = tuple(tuple(game.strategy_names[i][s] for s in surviving[i]) for i in range(game.n_players))
    table = {}
    for new_profile in itertools.product(*(range(len(s)) for s in surviving)):
        old = tuple(surviving[i][s] for i, s in enumerate(new_profile))
        table[new_profile] = game.payoff(old)
    reduced = StrategicGame(names, table)
    return EliminationResult(reduced, tuple(tuple(s) for s in surviving), tuple(trace))


def _profile_sort_key(mixed):
    return tuple(tuple(vec) for vec in mixed)


def mixed_ne_2x2(game):
    """All equilibria of a 2x2 game: pure NE plus the interior indifference point.

    The interior solution is included only when it lies strictly inside
    (0,1) x (0,1); everything is exact.
    """
    if game.n_players != 2 or game.shape != (2, 2):
        raise errors.UnsupportedShape(f"mixed_ne_2x2 needs a 2x2 game, got {game.shape}")
    results = [pure_to_mixed(game, ne) for ne in pure_nash(game)]

    a = {s: game.payoff(s)[0] for s in game.profiles()}
    b = {s: game.payoff(s)[1] for s in game.profiles()}
    # player 1 indifferent between rows given column prob y on strategy 0
    c1 = a[(0, 0)] - a[(1, 0)] - a[(0, 1)] + a[(1, 1)]
    d1 = a[(0, 1)] - a[(1, 1)]
    # player 2 indifferent between columns given row prob x on strategy 0
    c2 = b[(0, 0)] - b[(0, 1)] - b[(1, 0)] + b[(1, 1)]
    d2 = b[(1, 0)] - b[(1, 1)]
    if c1 != 0 and c2 != 0:
        y = -d1 / c1
        x = -d2 / c2
        if 0 < x < 1 and 0 < y < 1:
            results.append(((x, 1 - x), (y, 1 - y)))

    results = sorted({_profile_sort_key(m) for m in results})
    return [(m, expected_payoff(game, m)) for m in results]


def support_enumeration(game, max_support=None):
    """Equilibria of a 2-player game by exact support enumeration.

    Enumerates equal-size support pairs (a nondegenerate game has no
    equilibrium with unequal supports), solves the rational indifference
    system for each, and keeps solutions with positive support probabilities
    and no profitable outside deviation.  Returns the full equilibrium list
    for nondegenerate games, sorted canonically.
    """
    if game.n_players != 2:
        raise errors.UnsupportedShape("support enumeration handles 2-player games only")
    m, n = game.shape
    if m > 5 or n > 5:
        raise errors.SizeLimit("support enumeration is limited to 5 strategies per player")
    if max_support is None:
        max_support = min(m, n)
    max_support = max(1, min(max_support, m, n))

    def u(player, i, j):
        return game.payoff((i, j))[player]

    found = set()
    for k in range(1, max_support + 1):
        for sup1 in itertools.combinations(range(m), k):
            for sup2 in itertools.combinations(range(n), k):
                sigma2 = _solve_indifference(sup1, sup2, lambda i, j: u(0, i, j), (sup1, sup2))
                if sigma2 is None:
                    continue
                sigma1 = _solve_indifference(sup2, sup1, lambda j, i: u(1, i, j), (sup1, sup2))
                if sigma1 is None:
                    continue
                if any(q <= 0 for q in sigma1.values()) or any(q <= 0 for q in sigma2.values()):
                    continue
                v1 = sum(sigma2[j] * u(0, sup1[0], j) for j in sup2)
                v2 = sum(sigma1[i] * u(1, i, sup2[0]) for i in sup1)
                if any(sum(sigma2[j] * u(0, i, j) for j in sup2) > v1 for i in range(m) if i not in sup1):
                    continue
                if any(sum(sigma1[i] * u(1, i, j) for i in sup1) > v2 for j in range(n) if j not in sup2):
                    continue
                full1 = tuple(sigma1.get(i, Fraction(0)) for i in range(m))
                full2 = tuple(sigma2.get(j, Fraction(0)) for j in range(n))
                found.add((full1, full2))
    return [tuple(m_) for m_ in sorted(found)]


def _solve_indifference(own_support, opp_support, u, pair):
    """Opponent mixture on `opp_support` equalizing `u` across `own_support`.

    Returns {index: Fraction} on success, None if inconsistent; raises
    DegenerateGame on a consistent underdetermined system.
    """
    base = own_support[0]
    rows, rhs = [], []
    for i in own_support[1:]:
        rows.append([u(base, j) - u(i, j) for j in opp_support])
        rhs.append(Fraction(0))
    rows.append([Fraction(1)] * len(opp_support))
    rhs.append(Fraction(1))
    status, sol = solve_exact(rows, rhs)
    if status == "none":
        return None
    if status == "many":
        raise errors.DegenerateGame(
            f"solution continuum on support pair {pair}: the game is degenerate"
        )
    return dict(zip(opp_support, sol))


def is_epsilon_nash(game, mixed, eps):
    """True iff no player's best unilateral pure deviation gains more than eps."""
    eps = as_fraction(eps)
    if eps < 0:
        raise errors.InvalidArgument("epsilon must be non-negative")
    mixed = validate_mixed(game, mixed)
    current = expected_payoff(game, mixed)
    for i in range(game.n_players):
        opponents = {j: mixed[j] for j in range(game.n_players) if j != i}
        best = max(
            _pure_vs_opponents(game, i, s, opponents) for s in range(game.shape[i])
        )
        if best - current[i] > eps:
            return False
    return True


# ---------------------------------------------------------------------------
# welfare


def pareto_optimal_profiles(game):
    """Profiles not weakly dominated (with one strict improvement) by any other profile."""
    table = {s: game.payoff(s) for s in game.profiles()}
    out = set()
    for s, u in table.items():
        dominated = any(
            all(v[i] >= u[i] for i in range(game.n_players))
            and any(v[i] > u[i] for i in range(game.n_players))
            for t, v in table.items()
            if t != s
        )
        if not dominated:
            out.add(s)
    return out


def social_optimum(game):
    """Welfare-maximizing profiles and the maximal welfare, ties included."""
    welfare = {s: sum(game.payoff(s)) for s in game.profiles()}
    best = max(welfare.values())
    return {s for s, w in welfare.items() if w == best}, best


def price_of_anarchy(game):
    """Max welfare over all profiles divided by min welfare over pure NE.

    Restricted to pure equilibria (mixed equilibria are not enumerable in
    general); reported as such by the CLI metadata.
    """
    equilibria = pure_nash(game)
    if not equilibria:
        raise errors.NoEquilibrium("no pure Nash equilibrium")
    best = max(sum(game.payoff(s)) for s in game.profiles())
    worst_ne = min(sum(game.payoff(s)) for s in equilibria)
    if worst_ne <= 0:
        raise errors.UndefinedRatio(f"equilibrium welfare {worst_ne} is not positive")
    return Fraction(best) / worst_ne


@dataclass(frozen=True)
class CorrelatedCheck:
    holds: bool
    worst_margin: Fraction
    violations: tuple


def is_correlated_equilibrium(game, dist):
    """Check the correlated-equilibrium inequalities for a joint distribution.

    `dist` maps pure profiles to probabilities (missing profiles are 0).
    Returns the truth value together with the most violated (minimal) margin
    over every player and recommended/deviation strategy pair, exact.
    """
    table = {}
    for profile, q in dist.items():
        table[game.validate_profile(profile)] = as_fraction(q)
    if any(q < 0 for q in table.values()) or sum(table.values(), Fraction(0)) != 1:
        raise errors.InvalidArgument("not a joint probability distribution")

    worst = None
    violations = []
    for i in range(game.n_players):
        for rec in range(game.shape[i]):
            for dev in range(game.shape[i]):
                margin = Fraction(0)
                for profile, q in table.items():
                    if profile[i] != rec or q == 0:
                        continue
                    alt = profile[:i] + (dev,) + profile[i + 1:]
                    margin += q * (game.payoff(profile)[i] - game.payoff(alt)[i])
                if worst is None or margin < worst:
                    worst = margin
                if margin < 0:
                    violations.append((i, rec, dev, margin))
    return CorrelatedCheck(worst >= 0, worst, tuple(violations))


# ---------------------------------------------------------------------------
# bargaining


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _convex_hull(points):
    """Monotone-chain hull over exact points, counter-clockwise, no duplicates."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def nash_bargaining(problem, grid=64):
    """Maximize the Nash product over the hull of the utility points.

    Exact evaluation at hull vertices plus closed-form maximization of the
    quadratic product on each edge; `grid` only controls the density of the
    sampling self-check.  Raises InfeasibleBargain when no hull point weakly
    dominates the disagreement point.
    """
    if grid < 1:
        raise errors.InvalidArgument("grid must be a positive integer")
    lam = problem.disagreement
    hull = _convex_hull(problem.points)
    edges = []
    if len(hull) == 1:
        edges = []
    elif len(hull) == 2:
        edges = [(hull[0], hull[1])]
    else:
        edges = [(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))]

    def product(pt):
        return (pt[0] - lam[0]) * (pt[1] - lam[1])

    def feasible(pt):
        return pt[0] >= lam[0] and pt[1] >= lam[1]

    candidates = [p for p in hull if feasible(p)]
    for a, b in edges:
        d = (b[0] - a[0], b[1] - a[1])
        # t-interval within [0,1] where both coordinates stay >= disagreement
        t_lo, t_hi = Fraction(0), Fraction(1)
        empty = False
        for coord in (0, 1):
            if d[coord] == 0:
                if a[coord] < lam[coord]:
                    empty = True
                    break
            else:
                bound = (lam[coord] - a[coord]) / d[coord]
                if d[coord] > 0:
                    t_lo = max(t_lo, bound)
                else:
                    t_hi = min(t_hi, bound)
        if empty or t_lo > t_hi:
            continue

        def at(t):
            return (a[0] + t * d[0], a[1] + t * d[1])

        candidates.extend([at(t_lo), at(t_hi)])
        # stationary point of the quadratic (x(t)-l1)(y(t)-l2)
        quad = 2 * d[0] * d[1]
        lin = d[0] * (a[1] - lam[1]) + d[1] * (a[0] - lam[0])
        if quad != 0:
            t_star = -lin / quad
            if t_lo <= t_star <= t_hi:
                candidates.append(at(t_star))

    if not candidates:
        raise errors.InfeasibleBargain(
            f"no feasible utility point dominates the disagreement point {lam}"
        )

    best = max(candidates, key=lambda pt: (product(pt), pt))
    # sampling self-check at the requested verification density
    for a, b in edges:
        d = (b[0] - a[0], b[1] - a[1])
        for j in range(grid + 1):
            t = Fraction(j, grid)
            pt = (a[0] + t * d[0], a[1] + t * d[1])
            if feasible(pt):
                assert product(pt) <= product(best)
    return best


# ---------------------------------------------------------------------------
# potential / congestion games


def rosenthal_potential(cg, profile):
    """Rosenthal potential: per resource, sum the cost ladder up to its usage count."""
    profile = tuple(profile)
    if len(profile) != cg.n_players or any(
        not (0 <= s < len(cg.strategies[i])) for i, s in enumerate(profile)
    ):
        raise errors.InvalidProfile(f"profile {profile} invalid for this congestion game")
    counts = cg.usage(profile)
    total = Fraction(0)
    for j, x in enumerate(counts):
        for k in range(1, x + 1):
            total += cg.costs[j][k - 1]
    return total


def congestion_to_strategic(cg):
    """View a congestion game as a StrategicGame with payoffs = negated costs."""
    names = tuple(
        tuple("+".join(cg.resource_names[j] for j in strat) for strat in per_player)
        for per_player in cg.strategies
    )
    table = {}
    for profile in itertools.product(*(range(len(s)) for s in cg.strategies)):
        table[profile] = tuple(-cg.player_cost(profile, i) for i in range(cg.n_players))
    return StrategicGame(names, table)


def check_potential(game, potential):
    """True iff the map is an exact potential: unilateral differences match payoff differences."""
    table = {}
    for profile, value in potential.items():
        table[game.validate_profile(profile)] = as_fraction(value)
    for profile in game.profiles():
        if profile not in table:
            raise errors.InvalidArgument(f"potential is not total: missing {profile}")
    for profile in game.profiles():
        for i in range(game.n_players):
            for dev in range(game.shape[i]):
                if dev == profile[i]:
                    continue
                alt = profile[:i] + (dev,) + profile[i + 1:]
                lhs = table[profile] - table[alt]
                rhs = game.payoff(profile)[i] - game.payoff(alt)[i]
                if lhs != rhs:
                    return False
    return True


@dataclass(frozen=True)
class BRDResult:
    profile: tuple
    trace: tuple
    steps: int


@dataclass(frozen=True)
class CycleReport:
    cycle: tuple
    trace: tuple
    steps: int


def best_response_dynamics(game, start, max_steps=None):
    """Deterministic single-player best-response improvement path.

    At each step the lowest-index player with a strict improvement moves to
    their lowest-index best response.  Stops at a fixed profile (returned with
    the step trace) or on a repeated profile (returned as a CycleReport).
    """
    current = game.validate_profile(start)
    trace = [current]
    seen = {current: 0}
    steps = 0
    while True:
        if max_steps is not None and steps >= max_steps:
            raise errors.StepLimit(f"no fixpoint or cycle within {max_steps} steps")
        mover = None
        target = None
        for i in range(game.n_players):
            values = [
                game.payoff(current[:i] + (s,) + current[i + 1:])[i]
                for s in range(game.shape[i])
            ]
            top = max(values)
            if top > values[current[i]]:
                mover, target = i, values.index(top)
                break
        if mover is None:
            return BRDResult(current, tuple(trace), steps)
        current = current[:mover] + (target,) + current[mover + 1:]
        steps += 1
        if current in seen:
            cycle = tuple(trace[seen[current]:])
            return CycleReport(cycle, tuple(trace + [current]), steps)
        seen[current] = len(trace)
        trace.append(current)


def affine_transform(game, player, a, b):
    """Rescale one player's payoffs u <- a*u + b (a > 0 preserves all argmax structure)."""
    a, b = as_fraction(a), as_fraction(b)
    if a <= 0:
        raise errors.InvalidArgument("affine payoff rescaling needs a > 0")
    table = {}
    for profile in game.profiles():
        u = list(game.payoff(profile))
        u[player] = a * u[player] + b
        table[profile] = tuple(u)
    return StrategicGame(game.strategy_names, table)
