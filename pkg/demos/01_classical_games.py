#!/usr/bin/env python3
"""Classical game analysis walkthrough: Battle of the Sexes, Prisoner's
Dilemma and Matching Pennies, all in exact rational arithmetic.

Covers pure and mixed equilibria, iterated dominance, Pareto/welfare
analysis, price of anarchy, correlated equilibria and Nash bargaining.
"""

from fractions import Fraction

from gtkit import games
from gtkit.gamefile import load_scenario

F = Fraction


def header(title):
    print("\n" + "=" * 72)
    print(title)
    print("=" * 72)


header("Battle of the Sexes")
bos = load_scenario("bos").game
print("payoff table (wife rows O/F, husband columns O/F):")
for i in range(2):
    print("   ", [tuple(map(str, bos.payoff((i, j)))) for j in range(2)])

ne = sorted(games.pure_nash(bos))
print("pure Nash equilibria:", [bos.labels(s) for s in ne])

for sigma, pay in games.mixed_ne_2x2(bos):
    kind = "mixed" if any(0 < q < 1 for q in sigma[0]) else "pure "
    print(f"{kind} equilibrium  wife={tuple(map(str, sigma[0]))} "
          f"husband={tuple(map(str, sigma[1]))}  payoffs={tuple(map(str, pay))}")

sigma = ((F(3, 5), F(2, 5)), (F(2, 5), F(3, 5)))
print("outcome probabilities at the mixed equilibrium:")
for profile in bos.profiles():
    prob = sigma[0][profile[0]] * sigma[1][profile[1]]
    print(f"    {bos.labels(profile)}: {prob}")

print("cross-check: support enumeration finds", len(games.support_enumeration(bos)),
      "equilibria (same list)")

header("Prisoner's Dilemma (T=5 > R=3 > P=1 > S=0)")
pd = load_scenario("pd").game
print("pure NE:", [pd.labels(s) for s in sorted(games.pure_nash(pd))])
elim = games.iterated_elimination(pd)
print("iterated strict dominance leaves:", elim.game.strategy_names,
      "| eliminated:", [(s.player, s.label) for s in elim.trace])
pareto = sorted(games.pareto_optimal_profiles(pd))
print("Pareto-optimal profiles:", [pd.labels(s) for s in pareto],
      "((D,D) is Pareto inferior)")
opt, welfare = games.social_optimum(pd)
print(f"social optimum: {[pd.labels(s) for s in sorted(opt)]} with welfare {welfare}")
print("price of anarchy:", games.price_of_anarchy(pd))

header("Matching Pennies")
mp = load_scenario("matching-pennies").game
print("pure NE:", sorted(games.pure_nash(mp)) or "none (zero-sum, mixing required)")
((sigma, pay),) = games.mixed_ne_2x2(mp)
print("unique mixed equilibrium:", tuple(map(str, sigma[0])), tuple(map(str, sigma[1])))
res = games.best_response_dynamics(mp, (0, 0))
print("best-response dynamics from (H,H):",
      f"cycles with period {len(res.cycle)}" if isinstance(res, games.CycleReport)
      else res.profile)

header("Correlated equilibrium via a coordination device")
fair_coin = {(0, 0): F(1, 2), (1, 1): F(1, 2)}
check = games.is_correlated_equilibrium(bos, fair_coin)
print(f"fair coin over (O,O)/(F,F): CE={check.holds}, worst margin={check.worst_margin}")
bad = {(0, 1): F(1, 2), (1, 0): F(1, 2)}
check = games.is_correlated_equilibrium(bos, bad)
print(f"coin over miscoordinated cells: CE={check.holds}, worst margin={check.worst_margin}")

header("Nash bargaining")
problem = games.BargainingProblem(points=((0, 0), (3, 2), (2, 3)), disagreement=(0, 0))
point = games.nash_bargaining(problem)
product = (point[0] - 0) * (point[1] - 0)
print(f"hull of (0,0),(3,2),(2,3) with disagreement (0,0):")
print(f"    solution {tuple(map(str, point))} with Nash product {product}")
print("    (the quadratic attains its maximum at the midpoint of the Pareto edge)")
