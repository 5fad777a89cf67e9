"""Batch command-line front end: `gt analyze|evolve|quantumize|padic`.

Reads gt-game/1 files (or packaged scenario names) and writes deterministic
JSON/CSV reports: ordered keys, rationals as strings, floats at 17
significant digits.  Exit codes: 0 success, 2 parse error, 3 validation
error, 4 size limit.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import errors, evolution, gamefile, games, padic, padic_quantum, quantum

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_SIZE = 4
PROFILE_CAP = 200_000


# ---------------------------------------------------------------------------
# serialization helpers


def _frac(x):
    return str(Fraction(x))


def _float(x):
    return float(f"{x:.17g}")


def _write_json(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")
    return path


def _write_lines(path, rows):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(rows) + "\n")
    return path


def _outdir(args):
    os.makedirs(args.out, exist_ok=True)
    return args.out


def _parse_rational_vector(text):
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            out.append(float(tok) if "." in tok or "e" in tok.lower() else Fraction(tok))
        except (ValueError, ZeroDivisionError) as exc:
            raise errors.ParseError(f"bad number {tok!r}") from exc
    return out


def _mixed_to_json(mixed):
    return [[_frac(q) for q in vec] for vec in mixed]


def _profile_labels(game, profile):
    return list(game.labels(profile))


# ---------------------------------------------------------------------------
# scenario conversion


def _to_strategic(scn):
    """StrategicGame view of any scenario kind, plus congestion extras."""
    if scn.kind == "strategic":
        return scn.game, None
    if scn.kind == "evolution":
        g = scn.game
        names = scn.metadata.get("strategy_names") or [f"s{i + 1}" for i in range(g.n)]
        cells = {
            (i, j): (g.exact[i][j], g.exact[j][i])
            for i in range(g.n)
            for j in range(g.n)
        }
        return games.StrategicGame([names, names], cells), None
    if scn.kind == "congestion":
        return games.congestion_to_strategic(scn.game), scn.game
    raise errors.InvalidArgument(f"unknown scenario kind {scn.kind!r}")


def _to_evolution(scn):
    if scn.kind == "evolution":
        return scn.game
    if scn.kind == "strategic":
        g = scn.game
        if g.n_players != 2 or g.shape[0] != g.shape[1]:
            raise errors.InvalidArgument("evolve needs a square symmetric-role game")
        n = g.shape[0]
        for i in range(n):
            for j in range(n):
                if g.payoff((i, j))[1] != g.payoff((j, i))[0]:
                    raise errors.InvalidArgument(
                        "evolve needs symmetric roles: u2(i,j) must equal u1(j,i)"
                    )
        return evolution.EvolutionGame([[g.payoff((i, j))[0] for j in range(n)] for i in range(n)])
    raise errors.InvalidArgument(f"cannot evolve a {scn.kind!r} scenario")


# ---------------------------------------------------------------------------
# analyze


def _analyze_equilibria(game, eps):
    """Equilibrium sections plus the epsilon verification of everything found."""
    report = {}
    found = []
    if game.n_players == 2 and game.shape == (2, 2):
        rows = []
        for sigma, pay in games.mixed_ne_2x2(game):
            rows.append({"profile": _mixed_to_json(sigma), "payoffs": [_frac(v) for v in pay]})
            found.append(sigma)
        report["mixed_ne_2x2"] = rows
    else:
        report["mixed_ne_2x2"] = None
    if game.n_players == 2 and max(game.shape) <= 5:
        try:
            eqs = games.support_enumeration(game)
            report["support_enumeration"] = {
                "equilibria": [_mixed_to_json(sigma) for sigma in eqs]
            }
            found.extend(eqs)
        except errors.DegenerateGame as exc:
            report["support_enumeration"] = {"degenerate": str(exc)}
    else:
        report["support_enumeration"] = {
            "skipped": "support enumeration runs on 2-player games with at most 5 strategies"
        }
    all_pass = all(games.is_epsilon_nash(game, sigma, eps) for sigma in found)
    report["epsilon_check"] = {
        "epsilon": _frac(eps),
        "equilibria_checked": len(found),
        "all_pass": bool(all_pass),
    }
    return report


def _congestion_section(cg, game):
    phi = {s: games.rosenthal_potential(cg, s) for s in game.profiles()}
    potential_ok = games.check_potential(game, {s: -v for s, v in phi.items()})
    dynamics = []
    n_profiles = len(list(game.profiles()))
    for start in game.profiles():
        res = games.best_response_dynamics(game, start, max_steps=n_profiles + 1)
        if isinstance(res, games.CycleReport):
            dynamics.append({"start": _profile_labels(game, start), "cycle": True})
        else:
            dynamics.append(
                {
                    "start": _profile_labels(game, start),
                    "equilibrium": _profile_labels(game, res.profile),
                    "steps": res.steps,
                }
            )
    return {
        "rosenthal_potential": {
            "/".join(_profile_labels(game, s)): _frac(v) for s, v in phi.items()
        },
        "negated_potential_is_exact_potential": bool(potential_ok),
        "best_response_dynamics": dynamics,
    }


def cmd_analyze(args):
    scn = gamefile.resolve_input(args.infile)
    game, cg = _to_strategic(scn)
    if math.prod(game.shape) > PROFILE_CAP:
        raise errors.SizeLimit(f"{math.prod(game.shape)} profiles exceed the desk-scale cap")

    ne = sorted(games.pure_nash(game))
    elim = games.iterated_elimination(game)
    pareto = sorted(games.pareto_optimal_profiles(game))
    opt_profiles, welfare = games.social_optimum(game)
    try:
        poa = {"value": _frac(games.price_of_anarchy(game)), "note": None}
    except errors.NoEquilibrium:
        poa = {"value": None, "note": "no pure Nash equilibrium"}
    except errors.UndefinedRatio as exc:
        poa = {"value": None, "note": str(exc)}

    report = {
        "command": "analyze",
        "scenario": scn.name,
        "kind": scn.kind,
        "players": game.n_players,
        "strategies": [list(s) for s in game.strategy_names],
        "pure_nash": [_profile_labels(game, s) for s in ne],
        "elimination": {
            "trace": [
                {
                    "round": step.round,
                    "player": step.player,
                    "strategy": step.label,
                    "dominated_by": game.strategy_names[step.player][step.dominated_by],
                }
                for step in elim.trace
            ],
            "surviving": [list(s) for s in elim.game.strategy_names],
        },
        "pareto_optimal": [_profile_labels(game, s) for s in pareto],
        "social_optimum": {
            "profiles": [_profile_labels(game, s) for s in sorted(opt_profiles)],
            "welfare": _frac(welfare),
        },
        "price_of_anarchy": poa,
        "metadata": {"poa_scope": "pure-strategy equilibria only"},
    }
    report.update(_analyze_equilibria(game, Fraction(args.epsilon)))
    if cg is not None:
        report["congestion"] = _congestion_section(cg, game)
    if args.ce:
        report["correlated_check"] = _correlated_section(game, args.ce)

    path = _write_json(os.path.join(_outdir(args), "analyze.json"), report)
    print(f"scenario        {scn.name}")
    print(f"pure NE         {report['pure_nash']}")
    if report["mixed_ne_2x2"]:
        for row in report["mixed_ne_2x2"]:
            print(f"equilibrium     {row['profile']} payoffs {row['payoffs']}")
    print(f"pareto optimal  {report['pareto_optimal']}")
    print(f"social optimum  {report['social_optimum']['profiles']} welfare {report['social_optimum']['welfare']}")
    print(f"PoA             {poa['value'] or poa['note']}")
    print(f"report          {path}")
    return EXIT_OK


def _correlated_section(game, ce_path):
    try:
        with open(ce_path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise errors.ParseError(f"cannot read {ce_path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise errors.ParseError(
            f"{ce_path}:{exc.lineno}:{exc.colno}: {exc.msg}", line=exc.lineno, position=exc.colno
        ) from exc
    rows = doc.get("distribution")
    if not isinstance(rows, list):
        raise errors.ParseError(f"{ce_path}: expected a 'distribution' list")
    dist = {}
    for row in rows:
        profile = row.get("profile")
        idx = []
        for player, s in enumerate(profile):
            if isinstance(s, str):
                try:
                    s = game.strategy_names[player].index(s)
                except ValueError as exc:
                    raise errors.ParseError(f"{ce_path}: unknown strategy {s!r}") from exc
            idx.append(int(s))
        dist[tuple(idx)] = Fraction(str(row.get("prob")))
    check = games.is_correlated_equilibrium(game, dist)
    return {
        "is_correlated_equilibrium": bool(check.holds),
        "worst_margin": _frac(check.worst_margin),
        "violations": len(check.violations),
    }


# ---------------------------------------------------------------------------
# evolve


def cmd_evolve(args):
    scn = gamefile.resolve_input(args.infile)
    g = _to_evolution(scn)
    p0_text = args.p0 or ",".join(scn.metadata.get("default_p0", []))
    if not p0_text:
        raise errors.InvalidArgument("no initial state: pass --p0 or use a scenario with default_p0")
    raw = _parse_rational_vector(p0_text)
    if len(raw) != g.n:
        raise errors.InvalidState(f"p0 has {len(raw)} coordinates for an {g.n}-strategy game")
    total = sum(Fraction(v) if not isinstance(v, float) else Fraction(v) for v in raw)
    if abs(float(total) - 1.0) > 1e-9:
        raise errors.InvalidState(f"p0 sums to {float(total)}, off the simplex beyond 1e-9")
    p0 = evolution.SimplexState([Fraction(v) / total for v in raw])

    traj = evolution.integrate(g, p0, t_end=args.t_end, h=args.h)
    names = scn.metadata.get("strategy_names")
    out = _outdir(args)
    csv_path = _write_lines(os.path.join(out, "trajectory.csv"), traj.csv_rows(names))

    reports, continua = evolution.rest_point_reports(g)
    rest = []
    for rep in reports:
        entry = {
            "point": [_frac(q) for q in rep.point.exact],
            "residual": _float(rep.residual),
            "classification": rep.classification,
            "is_nash": rep.is_nash,
            "transversal_eigenvalues": [
                {"strategy": i, "value": _float(v)} for i, v in rep.transversal_eigenvalues
            ],
        }
        if rep.is_nash:
            try:
                ess = evolution.ess_check(g, rep.point)
                entry["ess"] = {"is_ess": ess.is_ess, "method": ess.method}
            except errors.GTError as exc:
                entry["ess"] = {"error": str(exc)}
        rest.append(entry)

    avg = evolution.time_average(traj)
    rec = evolution.detect_recurrence(traj, tol=args.tol)
    analysis = {
        "command": "evolve",
        "scenario": scn.name,
        "h": _float(args.h),
        "t_end": _float(args.t_end),
        "p0": [_frac(Fraction(v)) for v in raw],
        "rest_points": rest,
        "rest_point_continua": [list(s) for s in continua],
        "time_average": [_float(v) for v in avg],
        "recurrence": {
            "kind": rec.kind,
            "period": _float(rec.period) if rec.period else None,
            "detail": rec.detail,
        },
        "samples": len(traj),
    }
    json_path = _write_json(os.path.join(out, "evolve.json"), analysis)
    print(f"scenario        {scn.name}")
    print(f"trajectory      {csv_path} ({len(traj)} samples)")
    print(f"time average    {[f'{v:.6f}' for v in avg]}")
    print(f"recurrence      {rec.kind}" + (f" (period {rec.period:.3f})" if rec.period else ""))
    print(f"report          {json_path}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# quantumize


def _complex_alpha(text):
    if text in (None, "max"):
        r = 1.0 / math.sqrt(2.0)
        return r, r
    try:
        a = float(Fraction(text)) if "/" in text else float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise errors.ParseError(f"bad --alpha {text!r}") from exc
    if not (0.0 <= a <= 1.0):
        raise errors.InvalidArgument("--alpha must lie in [0, 1] (amplitude of |00>)")
    return a, math.sqrt(max(0.0, 1.0 - a * a))


def cmd_quantumize(args):
    scn = gamefile.resolve_input(args.infile)
    game, _ = _to_strategic(scn)
    if game.shape != (2, 2):
        raise errors.UnsupportedShape("quantumize needs a 2x2 game")
    out = _outdir(args)
    if args.padic:
        return _quantumize_padic(args, scn, game, out)

    alpha, beta = _complex_alpha(args.alpha)
    qg = quantum.QuantumizedGame(game, alpha, beta)
    grid = args.grid if args.grid is not None else 100
    found = quantum.mw_nash_search(qg, grid)
    surface = quantum.payoff_surface_rows(qg, grid)

    classical_mixed = None
    for sigma, pay in games.mixed_ne_2x2(game):
        if all(0 < q < 1 for q in sigma[0]):
            classical_mixed = pay
    best1 = max(pay[0] for _, pay in found)
    best2 = max(pay[1] for _, pay in found)
    rows = []
    for (p, q), pay in found:
        pareto = not any(
            (o[0] >= pay[0] - 1e-12 and o[1] >= pay[1] - 1e-12)
            and (o[0] > pay[0] + 1e-12 or o[1] > pay[1] + 1e-12)
            for _, o in found
        )
        entry = {
            "p": _float(p),
            "q": _float(q),
            "payoffs": [_float(pay[0]), _float(pay[1])],
            "pareto_optimal_among_equilibria": pareto,
        }
        if classical_mixed is not None:
            entry["exceeds_classical_mixed"] = bool(
                pay[0] > float(classical_mixed[0]) + 1e-12
                and pay[1] > float(classical_mixed[1]) + 1e-12
            )
        rows.append(entry)
    doc = {
        "command": "quantumize",
        "mode": "complex",
        "scenario": scn.name,
        "alpha": _float(alpha),
        "beta": _float(beta),
        "grid": grid,
        "equilibria": rows,
        "classical_mixed_payoffs": (
            [_frac(v) for v in classical_mixed] if classical_mixed else None
        ),
        "best_equilibrium_payoffs": [_float(best1), _float(best2)],
    }
    csv_path = _write_lines(os.path.join(out, "surface.csv"), surface)
    json_path = _write_json(os.path.join(out, "equilibria.json"), doc)
    print(f"scenario        {scn.name}")
    print(f"equilibria      {[(r['p'], r['q']) for r in rows]}")
    print(f"best payoffs    {doc['best_equilibrium_payoffs']}")
    if classical_mixed:
        print(f"classical mixed {doc['classical_mixed_payoffs']}")
    print(f"surface         {csv_path}")
    print(f"report          {json_path}")
    return EXIT_OK


def _padic_alpha(text, p, mu, prec):
    """alpha for the p-adic mode: 'max' -> sqrt(1/2), else an exact rational."""
    if text in (None, "max"):
        half = padic.padic_from_rational(1, 2, p, prec)
        if not padic.is_square(half):
            raise errors.InvalidArgument(
                f"1/2 is not a square in Q_{p}; pass an explicit rational --alpha"
            )
        root = padic.hensel_sqrt(half)
        alpha = padic.PAdicExtElement(root, padic.PAdicNumber.zero(p), mu)
        return alpha, alpha
    try:
        a = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise errors.ParseError(f"bad --alpha {text!r}") from exc
    rest = 1 - a * a
    alpha = padic.PAdicExtElement(
        padic.padic_from_rational(a.numerator, a.denominator, p, prec),
        padic.PAdicNumber.zero(p),
        mu,
    )
    if rest == 0:
        return alpha, padic.ext_zero(p, mu)
    beta_sq = padic.padic_from_rational(rest.numerator, rest.denominator, p, prec)
    if not padic.is_square(beta_sq):
        raise errors.InvalidArgument(f"1 - alpha^2 = {rest} is not a square in Q_{p}")
    beta = padic.PAdicExtElement(padic.hensel_sqrt(beta_sq), padic.PAdicNumber.zero(p), mu)
    return alpha, beta


def _quantumize_padic(args, scn, game, out):
    p = args.p
    prec = args.prec
    mu = args.mu if args.mu is not None else padic.find_nonresidue(p)
    alpha, beta = _padic_alpha(args.alpha, p, mu, prec)
    grid = args.grid if args.grid is not None else 10

    surface = ["p,q,payoff1,payoff2"]
    for i in range(grid + 1):
        for j in range(grid + 1):
            pt, qt = Fraction(i, grid), Fraction(j, grid)
            res = padic_quantum.padic_quantumize_2x2(game, alpha, beta, pt, qt)
            surface.append(
                ",".join(
                    [_frac(pt), _frac(qt), _frac(res.payoffs[0].value), _frac(res.payoffs[1].value)]
                )
            )

    res = padic_quantum.padic_quantumize_2x2(game, alpha, beta, Fraction(1), Fraction(1))
    doc = {
        "command": "quantumize",
        "mode": "padic",
        "scenario": scn.name,
        "p": p,
        "mu": mu,
        "precision": prec,
        "alpha": args.alpha or "max",
        "grid": grid,
        "distribution": [_frac(v) for v in res.distribution.entries],
        "payoffs": [
            {
                "value": _frac(v.value),
                "norm": _frac(v.norm),
                "valuation": None if v.valuation == math.inf else int(v.valuation),
            }
            for v in res.payoffs
        ],
        "hierarchy": [
            {
                "against": g.label,
                "payoffs": [_frac(v) for v in g.payoffs],
                "gap": [_frac(v) for v in g.gap],
                "gap_norms": [_frac(v) for v in g.gap_norms],
            }
            for g in res.hierarchy
        ],
        "note": "Q_p carries no canonical total order; payoffs and norms are reported "
        "without declaring a p-adic equilibrium",
    }
    csv_path = _write_lines(os.path.join(out, "surface.csv"), surface)
    json_path = _write_json(os.path.join(out, "equilibria.json"), doc)
    print(f"scenario        {scn.name} (p-adic mode, p={p}, mu={mu})")
    print(f"payoffs         {[e['value'] for e in doc['payoffs']]}")
    print(f"norms           {[e['norm'] for e in doc['payoffs']]}")
    print(f"surface         {csv_path}")
    print(f"report          {json_path}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# padic expression evaluator


def _eval_padic_expr(line, default_prec):
    tokens = line.split()
    if not tokens:
        raise errors.ParseError("empty expression")
    op = tokens[0].lower()

    def split_site(tok):
        if "^" in tok:
            p_s, n_s = tok.split("^", 1)
            return int(p_s), int(n_s)
        return int(tok), default_prec

    def rat(tok):
        try:
            return Fraction(tok)
        except (ValueError, ZeroDivisionError) as exc:
            raise errors.ParseError(f"bad rational {tok!r}") from exc

    if op == "distcheck":
        seq = [Fraction(t) for t in " ".join(tokens[1:]).split(",") if t.strip()]
        return {
            "op": "distcheck",
            "entries": [_frac(v) for v in seq],
            "sum": _frac(sum(seq, Fraction(0))),
            "is_distribution": padic.distribution_check(seq),
        }
    if op == "nonresidue":
        if len(tokens) != 2:
            raise errors.ParseError("usage: nonresidue <p>")
        p = int(tokens[1])
        return {"op": "nonresidue", "p": p, "mu": padic.find_nonresidue(p)}

    if "@" not in tokens:
        raise errors.ParseError(f"expression needs '@ p[^N]': {line!r}")
    at = tokens.index("@")
    operands, site = tokens[1:at], tokens[at + 1:]
    if len(site) != 1:
        raise errors.ParseError(f"exactly one site spec after '@': {line!r}")
    p, n = split_site(site[0])

    if op == "expand":
        (a,) = (rat(t) for t in operands)
        x = padic.padic_from_rational(a.numerator, a.denominator, p, n)
        return {
            "op": "expand",
            "input": _frac(a),
            "valuation": None if x.is_zero else x.valuation,
            "digits": list(x.digits),
            "literal": padic.format_padic(x),
        }
    if op in ("norm", "val"):
        (a,) = (rat(t) for t in operands)
        v = padic.rational_valuation(a, p)
        return {
            "op": op,
            "input": _frac(a),
            "valuation": None if v == math.inf else int(v),
            "norm": _frac(padic.rational_norm(a, p)),
        }
    if op == "dist":
        a, b = (rat(t) for t in operands)
        x = padic.padic_from_rational(a.numerator, a.denominator, p, n)
        y = padic.padic_from_rational(b.numerator, b.denominator, p, n)
        return {"op": "dist", "inputs": [_frac(a), _frac(b)], "distance": _frac(padic.distance(x, y))}
    if op in ("add", "sub", "mul", "div"):
        a, b = (rat(t) for t in operands)
        x = padic.padic_from_rational(a.numerator, a.denominator, p, n)
        y = padic.padic_from_rational(b.numerator, b.denominator, p, n)
        z = {"add": padic.add, "sub": padic.sub, "mul": padic.mul, "div": padic.div}[op](x, y)
        return {
            "op": op,
            "inputs": [_frac(a), _frac(b)],
            "literal": padic.format_padic(z),
            "rational": _frac(z.to_rational()),
        }
    if op == "sqrt":
        (a,) = (rat(t) for t in operands)
        x = padic.padic_from_rational(a.numerator, a.denominator, p, n)
        if not padic.is_square(x):
            return {"op": "sqrt", "input": _frac(a), "is_square": False}
        r = padic.hensel_sqrt(x)
        return {
            "op": "sqrt",
            "input": _frac(a),
            "is_square": True,
            "literal": padic.format_padic(r),
        }
    raise errors.ParseError(f"unknown p-adic operation {op!r}")


def cmd_padic(args):
    lines = []
    if args.infile:
        try:
            with open(args.infile, "r", encoding="utf-8") as fh:
                lines.extend(fh.read().splitlines())
        except OSError as exc:
            raise errors.ParseError(f"cannot read {args.infile}: {exc}") from exc
    lines.extend(args.expr or [])
    expressions = [ln for ln in lines if ln.strip() and not ln.strip().startswith("#")]
    if not expressions:
        raise errors.ParseError("no expressions: pass --in FILE or --expr")

    results = []
    for i, line in enumerate(expressions, start=1):
        try:
            res = _eval_padic_expr(line.strip(), args.prec)
        except errors.ParseError as exc:
            raise errors.ParseError(f"line {i}: {exc}", line=i) from exc
        res["expr"] = line.strip()
        results.append(res)

    out = _outdir(args)
    path = _write_json(os.path.join(out, "padic.json"), {"command": "padic", "results": results})
    for res in results:
        summary = {k: v for k, v in res.items() if k not in ("op", "expr")}
        print(f"{res['expr']}  ->  {json.dumps(summary, sort_keys=True)}")
    print(f"report          {path}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser / entry point


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gt",
        description="Game-theory batch toolkit: classical, evolutionary, quantum and p-adic analysis",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_in=True):
        if needs_in:
            p.add_argument("--in", dest="infile", required=True,
                           help="gt-game/1 file or scenario name "
                                f"({', '.join(gamefile.SCENARIO_NAMES)})")
        p.add_argument("--out", required=True, help="output directory")

    a = sub.add_parser("analyze", help="equilibria, dominance, welfare, PoA")
    common(a)
    a.add_argument("--epsilon", default="0", help="epsilon for the equilibrium verification")
    a.add_argument("--ce", help="JSON file with a joint distribution to check for correlated equilibrium")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("evolve", help="replicator trajectory, rest points, recurrence")
    common(e)
    e.add_argument("--h", dest="h", type=float, default=1e-3, help="RK4 step size")
    e.add_argument("--t-end", dest="t_end", type=float, default=100.0, help="integration horizon")
    e.add_argument("--p0", help="initial state, e.g. 1/2,1/4,1/4")
    e.add_argument("--tol", type=float, default=1e-3, help="recurrence detection tolerance")
    e.set_defaults(func=cmd_evolve)

    q = sub.add_parser("quantumize", help="entangled quantumization of a 2x2 game")
    common(q)
    q.add_argument("--grid", type=int, default=None,
                   help="grid density (default 100 complex, 10 p-adic)")
    q.add_argument("--alpha", default="max",
                   help="initial-state amplitude of |00>: 'max' (maximally entangled) or a number")
    q.add_argument("--padic", action="store_true", help="run over Q_p(sqrt(mu)) instead of C")
    q.add_argument("--p", type=int, default=7, help="prime for the p-adic mode")
    q.add_argument("--prec", type=int, default=32, help="p-adic relative precision")
    q.add_argument("--mu", type=int, default=None, help="non-residue override")
    q.set_defaults(func=cmd_quantumize)

    d = sub.add_parser("padic", help="p-adic expression evaluation")
    d.add_argument("--in", dest="infile", help="file with one expression per line")
    d.add_argument("--out", required=True, help="output directory")
    d.add_argument("--expr", action="append", help="inline expression (repeatable)")
    d.add_argument("--p", type=int, default=7, help="default prime (expressions carry their own)")
    d.add_argument("--prec", type=int, default=32, help="default precision N")
    d.set_defaults(func=cmd_padic)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except errors.SizeLimit as exc:
        print(f"error (size limit): {exc}", file=sys.stderr)
        return EXIT_SIZE
    except errors.ParseError as exc:
        where = f" at line {exc.line}" if exc.line else ""
        print(f"error (parse{where}): {exc}", file=sys.stderr)
        return EXIT_PARSE
    except errors.GTError as exc:
        print(f"error (validation): {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
