"""Command-line front end.

Machine-readable output (JSON, DOT) goes to stdout or --output; progress and
summaries go to stderr. Exit codes: 0 distinguishable or plain success,
10 indistinguishable, 20 undecided or budget exhausted, 1 usage/parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import serialize
from .criteria import (
    ALICE_FIRST,
    BOB_FIRST,
    DISTINGUISHABLE,
    DecideOptions,
    analyze,
    decide,
)
from .decomposition import chordal_decompose, feasibility_search
from .errors import LoccGraphError, SearchBudgetExceeded
from .families import FAMILIES, generate
from .graphs import is_chordal, maximal_cliques
from .linalg import DEFAULT_TOL, Tolerance

_EXIT_UNKNOWN = 20


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input JSON file (state set or graph)")
    common.add_argument("--output", help="write machine output here instead of stdout")
    common.add_argument(
        "--direction",
        choices=["alice-first", "bob-first"],
        default="alice-first",
        help="who measures first",
    )
    common.add_argument("--zero-tol", type=float, default=DEFAULT_TOL.zero_tol)
    common.add_argument("--psd-tol", type=float, default=DEFAULT_TOL.psd_tol)
    common.add_argument("--rank-tol", type=float, default=DEFAULT_TOL.rank_tol)
    common.add_argument("--max-iter", type=int, default=60000,
                        help="feasibility search iteration cap")
    common.add_argument("--sandwich-budget", type=int, default=25,
                        help="free-edge cap for the chordal sandwich search")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(
        prog="loccgraph",
        description="One-way local distinguishability of orthonormal product states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common],
                   help="overlap graphs, chordality, and graph parameters")
    sub.add_parser("decide", parents=[common],
                   help="full verdict with certificate")
    sub.add_parser("decompose", parents=[common],
                   help="clique-supported PSD splitting of the measuring side's Gram matrix")
    sub.add_parser("protocol", parents=[common],
                   help="synthesize and simulate a measurement protocol")
    gen = sub.add_parser("generate", parents=[common],
                         help="emit a built-in family as a state-set file")
    gen.add_argument("family",
                     help="family spec, e.g. " + ", ".join(FAMILIES[:4]) + ", bullseye:4")
    sub.add_parser("export-dot", parents=[common],
                   help="overlap graphs in DOT format")
    return parser


def _tolerance(args) -> Tolerance:
    return Tolerance(zero_tol=args.zero_tol, psd_tol=args.psd_tol,
                     rank_tol=args.rank_tol)


def _read_input(args) -> dict:
    if not args.input:
        raise LoccGraphError("this command needs --input")
    try:
        with open(args.input) as fh:
            return json.load(fh)
    except OSError as exc:
        raise LoccGraphError(f"cannot read {args.input}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise LoccGraphError(f"{args.input} is not valid JSON: {exc}") from None


def _load_states(args):
    return serialize.states_from_json(_read_input(args))


def _emit(args, text: str):
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, payload):
    _emit(args, json.dumps(payload, indent=2) + "\n")


def _say(msg: str):
    print(msg, file=sys.stderr)


def _direction(args) -> str:
    return ALICE_FIRST if args.direction == "alice-first" else BOB_FIRST


def _cmd_analyze(args) -> int:
    states = _load_states(args)
    work = states if _direction(args) == ALICE_FIRST else states.swapped()
    rep = analyze(work, _tolerance(args))
    _emit_json(args, serialize.jsonify(rep))
    _say(
        f"n={states.n} d_eff={rep.d_eff} "
        f"measuring-side chordal={rep.alice_chordality.chordal} "
        f"admissible-host chordal={rep.host_chordality.chordal} "
        f"alpha={rep.alpha_host} chi={rep.chi_bob}"
    )
    return 0


def _options(args) -> DecideOptions:
    return DecideOptions(
        tol=_tolerance(args),
        max_iter=args.max_iter,
        sandwich_budget=args.sandwich_budget,
        seed=args.seed,
    )


def _cmd_decide(args) -> int:
    states = _load_states(args)
    verdict = decide(states, _direction(args), _options(args))
    _emit_json(args, serialize.verdict_to_json(verdict))
    _say(f"{verdict.status} via {verdict.certificate.kind}")
    return verdict.exit_code


def _cmd_decompose(args) -> int:
    states = _load_states(args)
    work = states if _direction(args) == ALICE_FIRST else states.swapped()
    work.require_orthonormal(_tolerance(args))
    tol = _tolerance(args)
    graphs = work.build_graphs(tol)
    m = work.alice_gram()
    if is_chordal(graphs.alice).chordal:
        dec = chordal_decompose(m, graphs.alice, tol)
        _say(f"peeled {len(dec.terms)} rank-one terms along an elimination order")
    else:
        host = graphs.bob_orthogonality()
        supports = [frozenset(c) for c in maximal_cliques(host)]
        result = feasibility_search(m, supports, tol, max_iter=args.max_iter)
        if result is None:
            _say("feasibility search did not converge; no decomposition found")
            return _EXIT_UNKNOWN
        dec = result.decomposition
        _say(f"feasible split over {len(supports)} admissible supports, "
             f"gap {result.gap:.2e} after {result.iterations} iterations")
    _emit_json(args, serialize.decomposition_to_json(dec))
    return 0


def _cmd_protocol(args) -> int:
    states = _load_states(args)
    verdict = decide(states, _direction(args), _options(args))
    if verdict.protocol is None:
        _say(f"no protocol: verdict is {verdict.status} "
             f"via {verdict.certificate.kind}")
        return verdict.exit_code if verdict.status != DISTINGUISHABLE else 1
    payload = {
        "protocol": serialize.protocol_to_json(verdict.protocol),
        "simulation": serialize.jsonify(verdict.simulation),
    }
    _emit_json(args, payload)
    _say(f"min success {verdict.simulation.min_success:.12f} "
         f"over {len(verdict.simulation.per_state)} states")
    return 0


def _cmd_generate(args) -> int:
    states = generate(args.family, seed=args.seed)
    _emit_json(args, serialize.states_to_json(states))
    _say(f"{args.family}: {states.n} states in "
         f"C^{states.d_alice} x C^{states.d_bob}")
    return 0


def _cmd_export_dot(args) -> int:
    data = _read_input(args)
    if isinstance(data, dict) and "states" in data:
        states = serialize.states_from_json(data)
        graphs = states.build_graphs(_tolerance(args))
        text = (serialize.dot_graph(graphs.alice, "alice", states.labels)
                + serialize.dot_graph(graphs.bob, "bob", states.labels))
    elif isinstance(data, dict) and "edges" in data:
        text = serialize.dot_graph(serialize.graph_from_json(data))
    else:
        raise LoccGraphError("input is neither a state-set nor a graph file")
    _emit(args, text)
    return 0


_COMMANDS = {
    "analyze": _cmd_analyze,
    "decide": _cmd_decide,
    "decompose": _cmd_decompose,
    "protocol": _cmd_protocol,
    "generate": _cmd_generate,
    "export-dot": _cmd_export_dot,
}


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except SearchBudgetExceeded as exc:
        _say(f"search budget exhausted: {exc}")
        return _EXIT_UNKNOWN
    except LoccGraphError as exc:
        _say(f"error: {exc}")
        return 1
    except ValueError as exc:
        _say(f"error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
