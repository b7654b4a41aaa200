"""Command-line interface.

Exit codes: 0 success, 1 reproduction mismatch, 2 invalid input,
3 numerical failure. Set ``OPINION_RATIONAL=1`` to force exact rational
solves where supported.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import exact as ex
from .bias import BiasSpec, biased_result
from .dynamics import NumericalError, bonacich, simulate, steady_state_direct, weighted_bonacich
from .fileio import fmt, read_network, result_to_dict, trajectory_csv
from .homogeneous import HomogeneousSociety, NoAnchorError, comparative_statics, steady_state_homophily
from .netgen import complete_network, homogeneous_network, ring_network
from .signed_core import IdentityParams, InvalidNetworkError, build_opinion_exchange, check_structural_balance

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_NUMERICAL = 0, 1, 2, 3
REPRODUCE_TOL = 1e-12


def _rational_env() -> bool:
    return os.environ.get("OPINION_RATIONAL", "") == "1"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def cmd_steady_state(args) -> int:
    problem = read_network(args.file)
    x = problem.exchange()
    theta = problem.theta_star if args.theta is None else args.theta
    xi = problem.xi if args.xi is None else args.xi
    exact = args.exact or _rational_env()
    if xi is not None:
        if problem.groups is None:
            raise InvalidNetworkError("a bias needs a group assignment in the network file")
        result, b_tilde_B = biased_result(x, problem.groups, theta, BiasSpec(xi, args.biased_group))
    else:
        result, b_tilde_B = steady_state_direct(x, theta, exact=exact), None

    if args.format == "json":
        _emit(_dumps(result_to_dict(result, b_tilde_B, xi)), args.out)
        return EXIT_OK
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["agent", "mu", "b", "b_tilde"] + (["b_tilde_B"] if xi is not None else [])
    w.writerow(header)
    for i in range(x.n):
        row = [i, fmt(result.mu[i]), "" if result.b is None else fmt(result.b[i]), fmt(result.b_tilde[i])]
        if xi is not None:
            row.append(fmt(b_tilde_B[i]))
        w.writerow(row)
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    problem = read_network(args.file)
    x = problem.exchange()
    theta = problem.theta_star if args.theta is None else args.theta
    mu0 = np.zeros(x.n) if args.mu0 is None else np.array([float(v) for v in args.mu0.split(",")])
    traj = simulate(x, mu0, theta, max_steps=args.steps, tol=args.tol)
    if args.out:
        _emit(trajectory_csv(traj.states), args.out)
    else:
        sys.stdout.write(trajectory_csv(traj.states))
    resid = float(np.max(np.abs(traj.final - x.Wt @ traj.final - x.wt * theta))) if x.n else 0.0
    print(
        f"converged={traj.converged} iterations={traj.iterations} "
        f"final_change={fmt(traj.final_change)} residual={fmt(resid)}",
        file=sys.stderr if not args.out else sys.stdout,
    )
    return EXIT_OK


SWEEP_PARAMS = {"eta": "eta", "wA": "w_A", "wB": "w_B", "hA": "h_A", "hB": "h_B"}


def cmd_sweep(args) -> int:
    field = SWEEP_PARAMS[args.param]
    if args.points < 1:
        raise ValueError("--points must be >= 1")
    values = np.linspace(args.start, args.stop, args.points) if args.points > 1 else np.array([args.start])
    base = {"eta": args.eta, "w_A": args.wA, "w_B": args.wB, "h_A": args.hA, "h_B": args.hB}
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["param", "value", "mu_A", "mu_B", "d_muA_d_param", "d_muB_d_param"])
    for v in sorted(values):
        s = HomogeneousSociety(**{**base, field: float(v)}, theta_star=args.theta)
        mu_A, mu_B = steady_state_homophily(s)
        dA, dB = comparative_statics(s).for_param(field)
        w.writerow([args.param, fmt(v), fmt(mu_A), fmt(mu_B), fmt(dA), fmt(dB)])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def _F(*vals) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in vals)


def _reference_cases() -> dict:
    """Expected long-run opinions and Bonacich centralities, theta* = 1, alpha = -beta = 1."""
    third = Fraction(1, 3)
    return {
        "1": (complete_network((1, 3)), None, _F("-1/5", "3/5", "3/5", "3/5"), _F(5, 5, 5, 5)),
        "2": (ring_network("AAABBB"), None, _F("2/5", "3/5", "2/5", "2/5", "3/5", "2/5"), _F(*[4] * 6)),
        "3": (complete_network((2, 2)), None, _F(*["1/5"] * 4), _F(5, 5, 5, 5)),
        "4": (
            complete_network((1, 3), truth_weights=[0.5, 0.2, 0.2, 0.2]),
            None,
            _F("5/11", "3/11", "3/11", "3/11"),
            _F("31/11", "43/11", "43/11", "43/11"),
        ),
        "5": (
            homogeneous_network(HomogeneousSociety(0.25, 0.2, 0.2, h_B=0.5), 4),
            HomogeneousSociety(0.25, 0.2, 0.2, h_B=0.5),
            (-third, Fraction(7, 9), Fraction(7, 9), Fraction(7, 9)),
            _F(5, 5, 5, 5),
        ),
        "bias": (complete_network((2, 2)), None, _F("-2/5", "-2/5", "11/10", "11/10"), _F(5, 5, 5, 5)),
    }


def reproduce_table(table: str) -> tuple[bool, list[str]]:
    (net, groups), society, mu_expected, b_expected = _reference_cases()[table]
    x = build_opinion_exchange(net, groups, IdentityParams(1.0, -1.0))
    lines = [f"Table {table}" if table != "bias" else "Bias table (xi = 1.5 on group B)"]
    if table == "bias":
        xi = Fraction(3, 2)
        rhs = [ex.to_fraction(x.wt[i]) * (1 + (xi if groups.labels[i] == 1 else 0)) for i in range(x.n)]
        mu_exact = tuple(ex.solve_rational(ex.identity_minus(x.Wt), rhs))
        mu_float, _ = biased_result(x, groups, 1.0, BiasSpec(1.5, 1))
        mu_float = mu_float.mu
    else:
        mu_exact = weighted_bonacich(x, exact=True)
        mu_float = steady_state_direct(x, 1.0).mu
    b_exact = bonacich(net, exact=True)
    b_float = bonacich(net)

    ok = True
    lines.append(f"{'agent':>5} {'quantity':>8} {'expected':>10} {'exact':>10} {'float':>22} {'abs diff':>10}")
    for name, expected, got_exact, got_float in (
        ("mu", mu_expected, mu_exact, mu_float),
        ("b", b_expected, b_exact, b_float),
    ):
        for i, e in enumerate(expected):
            diff = abs(float(got_float[i]) - float(e))
            good = got_exact[i] == e and diff <= REPRODUCE_TOL
            ok &= good
            lines.append(
                f"{i + 1:>5} {name:>8} {str(e):>10} {str(got_exact[i]):>10} {fmt(got_float[i]):>22} "
                f"{diff:>10.2e}{'' if good else '  MISMATCH'}"
            )
    if society is not None:
        closed = steady_state_homophily(society)
        diff = max(abs(closed[0] - float(mu_expected[0])), abs(closed[1] - float(mu_expected[-1])))
        good = diff <= REPRODUCE_TOL
        ok &= good
        lines.append(
            f"closed form (mu_A, mu_B) = ({fmt(closed[0])}, {fmt(closed[1])}) abs diff {diff:.2e}"
            f"{'' if good else '  MISMATCH'}"
        )
    lines.append("PASS" if ok else "FAIL")
    return ok, lines


def cmd_reproduce(args) -> int:
    tables = list(_reference_cases()) if args.table == "all" else [args.table]
    all_ok = True
    for t in tables:
        ok, lines = reproduce_table(t)
        all_ok &= ok
        print("\n".join(lines))
        print()
    return EXIT_OK if all_ok else EXIT_MISMATCH


def cmd_balance(args) -> int:
    problem = read_network(args.file)
    report = check_structural_balance(problem.exchange())
    print(report.describe())
    if not report.strongly_balanced:
        print(f"strong-balance witness: {list(report.witness)}")
    if not report.weakly_balanced:
        print(f"weak-balance witness: {list(report.weak_witness)}")
    return EXIT_OK


def cmd_centrality(args) -> int:
    problem = read_network(args.file)
    x = problem.exchange()
    exact = args.exact or _rational_env()
    bt = weighted_bonacich(x, exact=exact)
    b = bonacich(problem.net, exact=exact) if problem.net is not None else None
    print("agent,b,b_tilde")
    for i in range(x.n):
        b_i = "" if b is None else (str(b[i]) if exact else fmt(b[i]))
        bt_i = str(bt[i]) if exact else fmt(bt[i])
        print(f"{i},{b_i},{bt_i}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="signed-opinion", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("steady-state", help="long-run opinions and centralities")
    s.add_argument("file")
    s.add_argument("--theta", type=float, help="true state (default: file's theta_star)")
    s.add_argument("--xi", type=float, help="bias added to the biased group's signal")
    s.add_argument("--biased-group", type=int, default=1)
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.add_argument("--exact", action="store_true", help="rational solve (n <= 32)")
    s.add_argument("--out")
    s.set_defaults(func=cmd_steady_state)

    s = sub.add_parser("simulate", help="iterate the opinion update and export the trajectory")
    s.add_argument("file")
    s.add_argument("--theta", type=float)
    s.add_argument("--steps", type=int, default=10_000)
    s.add_argument("--tol", type=float, default=1e-12)
    s.add_argument("--mu0", help="comma-separated initial opinions (default zeros)")
    s.add_argument("--out", help="trajectory CSV path (default stdout)")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("sweep", help="homogeneous-society comparative statics over one parameter")
    s.add_argument("--param", choices=tuple(SWEEP_PARAMS), required=True)
    s.add_argument("--from", dest="start", type=float, required=True)
    s.add_argument("--to", dest="stop", type=float, required=True)
    s.add_argument("--points", type=int, default=9)
    s.add_argument("--eta", type=float, default=0.25)
    s.add_argument("--wA", type=float, default=0.2)
    s.add_argument("--wB", type=float, default=0.2)
    s.add_argument("--hA", type=float, default=0.0)
    s.add_argument("--hB", type=float, default=0.0)
    s.add_argument("--theta", type=float, default=1.0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("reproduce", help="check the worked examples against their expected values")
    s.add_argument("--table", choices=("1", "2", "3", "4", "5", "bias", "all"), default="all")
    s.set_defaults(func=cmd_reproduce)

    s = sub.add_parser("balance", help="structural balance report")
    s.add_argument("file")
    s.set_defaults(func=cmd_balance)

    s = sub.add_parser("centrality", help="Bonacich and weighted Bonacich centralities")
    s.add_argument("file")
    s.add_argument("--exact", action="store_true")
    s.set_defaults(func=cmd_centrality)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (NumericalError, NoAnchorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (InvalidNetworkError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
