"""Command-line front door.

Commands take their arguments positionally or through flags (``-m/--model``,
``-w/--world``, ``-f/--formula``); the flag form wins when both are given.
Exit status: 0 for a completed command (a "false" answer is still 0),
2 for usage or malformed input text, 3 for model load/validation errors,
4 for evaluation errors such as unknown worlds or undeclared names, and
5 when the two evaluation routes disagree, which is an internal error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fixtures
from .bisim import are_bisimilar, find_distinguishing_formula
from .dependency import generative_sets, is_generative, p_family, sigma
from .errors import EvalError, ModelError, ParseError
from .harness import GenParams, soundness_suite
from .model import KripkeModel, PointedModel, load_model_path
from .semantics import evaluate, evaluate_by_evidence
from .syntax import (GLOBAL, LOCAL, parse_formula, parse_varset,
                     render_formula, render_varset)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MODEL = 3
EXIT_EVAL = 4
EXIT_ROUTES = 5

_KIND = {"g": GLOBAL, "l": LOCAL}


class _UsageError(Exception):
    pass


class _RouteDisagreement(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="depmodal",
        description="Check dependency-epistemic formulas on finite two-relation "
                    "Kripke models.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, model=True, world=False, formula=False):
        if model:
            p.add_argument("model_pos", nargs="?", metavar="MODEL", help="model file")
            p.add_argument("-m", "--model", dest="model_flag")
        if world:
            p.add_argument("world_pos", nargs="?", metavar="WORLD")
            p.add_argument("-w", "--world", dest="world_flag")
        if formula:
            p.add_argument("formula_pos", nargs="?", metavar="FORMULA")
            p.add_argument("-f", "--formula", dest="formula_flag")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("check", help="truth of a formula at a world, both routes")
    add_common(p, world=True, formula=True)

    p = sub.add_parser("extension", help="worlds satisfying a formula")
    add_common(p, formula=True)

    p = sub.add_parser("generative", help="difference family, generative family, "
                                          "and verdicts for one candidate set")
    add_common(p, world=True)
    p.add_argument("varset_pos", nargs="?", metavar="VARSET",
                   help="candidate set, e.g. '{x,y}'")
    p.add_argument("--kind", choices=sorted(_KIND), required=True,
                   help="g: global, l: local")

    p = sub.add_parser("bisim", help="decide bisimilarity of two pointed models")
    add_common(p, world=True)
    p.add_argument("model2_pos", nargs="?", metavar="MODEL2")
    p.add_argument("world2_pos", nargs="?", metavar="WORLD2")
    p.add_argument("--model2", dest="model2_flag")
    p.add_argument("--world2", dest="world2_flag")
    p.add_argument("--depth", type=int, default=None,
                   help="search depth for a distinguishing formula")

    p = sub.add_parser("axioms", help="run the schema soundness suite")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("validate", help="load a model file and report diagnostics")
    add_common(p)

    p = sub.add_parser("examples", help="replay a bundled fixture's claims")
    p.add_argument("name", nargs="?",
                   help=f"one of: {', '.join(fixtures.fixture_names())}")
    p.add_argument("--json", action="store_true")

    return parser


def _pick(pos, flag, what: str) -> str:
    value = flag if flag is not None else pos
    if value is None:
        raise _UsageError(f"missing {what}")
    return value


def _load(path: str) -> KripkeModel:
    return load_model_path(path)


def _require_world(m: KripkeModel, w: str) -> str:
    m._world_index(w)
    return w


def _both(m: KripkeModel, s: str, f) -> bool:
    direct = evaluate(m, s, f)
    routed = evaluate_by_evidence(m, s, f)
    if direct != routed:
        raise _RouteDisagreement(
            f"evaluation routes disagree at world {s!r}: "
            f"direct={direct} evidence={routed}")
    return direct


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _fmt_family(members) -> str:
    ordered = sorted(members, key=lambda s: (len(s), sorted(s)))
    return " ".join(render_varset(m) for m in ordered) if ordered else "(empty)"


def cmd_check(args) -> int:
    m = _load(_pick(args.model_pos, args.model_flag, "model path"))
    w = _require_world(m, _pick(args.world_pos, args.world_flag, "world"))
    f = parse_formula(_pick(args.formula_pos, args.formula_flag, "formula"))
    value = _both(m, w, f)
    _emit(args, {"command": "check", "world": w, "formula": render_formula(f),
                 "value": value, "routes": {"direct": value, "evidence": value}},
          "true" if value else "false")
    return EXIT_OK


def cmd_extension(args) -> int:
    m = _load(_pick(args.model_pos, args.model_flag, "model path"))
    f = parse_formula(_pick(args.formula_pos, args.formula_flag, "formula"))
    sat = [w for w in m.worlds if _both(m, w, f)]
    _emit(args, {"command": "extension", "formula": render_formula(f), "worlds": sat},
          "\n".join(sat) if sat else "(no worlds)")
    return EXIT_OK


def cmd_generative(args) -> int:
    m = _load(_pick(args.model_pos, args.model_flag, "model path"))
    w = _require_world(m, _pick(args.world_pos, args.world_flag, "world"))
    kind = _KIND[args.kind]
    fam = p_family(m, w, kind)
    gen = generative_sets(m, w, kind)
    lines = [f"family: {_fmt_family(fam.members)}"]
    payload: dict = {"command": "generative", "world": w, "kind": kind,
                     "family": sorted(sorted(s) for s in fam.members),
                     "generative_family": sorted(sorted(s) for s in gen.members)}
    if args.varset_pos is not None:
        candidate = parse_varset(args.varset_pos)
        if not candidate:
            raise _UsageError("candidate set must be nonempty")
        sig = sigma(fam, candidate)
        verdicts = {method: is_generative(fam, candidate, method)
                    for method in ("lemma", "partition", "graph")}
        lines.append(f"sigma({render_varset(candidate)}): {_fmt_family(sig)}")
        lines.append("generative: " + " ".join(
            f"{k}={str(v).lower()}" for k, v in verdicts.items()))
        payload["candidate"] = sorted(candidate)
        payload["sigma"] = sorted(sorted(s) for s in sig)
        payload["verdicts"] = verdicts
    lines.append(f"generative family: {_fmt_family(gen.members)}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_bisim(args) -> int:
    m = _load(_pick(args.model_pos, args.model_flag, "model path"))
    w = _require_world(m, _pick(args.world_pos, args.world_flag, "world"))
    m2 = _load(_pick(args.model2_pos, args.model2_flag, "second model path"))
    w2 = _require_world(m2, _pick(args.world2_pos, args.world2_flag, "second world"))
    if set(m.propositions) != set(m2.propositions):
        raise EvalError("proposition signatures differ; models are not comparable")
    pm, pm2 = PointedModel(m, w), PointedModel(m2, w2)
    verdict = are_bisimilar(pm, pm2)
    payload: dict = {"command": "bisim", "bisimilar": verdict}
    if verdict:
        _emit(args, payload, "bisimilar")
        return EXIT_OK
    f = find_distinguishing_formula(pm, pm2, args.depth)
    if f is None:
        payload["distinguishing"] = None
        _emit(args, payload,
              "not bisimilar\nno distinguishing formula within the given depth")
    else:
        payload["distinguishing"] = render_formula(f)
        _emit(args, payload, f"not bisimilar\ndistinguishing: {render_formula(f)}")
    return EXIT_OK


def cmd_axioms(args) -> int:
    if args.trials < 1:
        raise _UsageError("--trials must be >= 1")
    report = soundness_suite(GenParams(seed=args.seed), args.trials)
    if args.json:
        print(json.dumps(report.to_dict(), sort_keys=True))
    else:
        print(report.summary())
    return EXIT_OK


def cmd_validate(args) -> int:
    m = _load(_pick(args.model_pos, args.model_flag, "model path"))
    text = "\n".join([
        f"worlds: {len(m.worlds)}",
        f"propositions: {len(m.propositions)}",
        f"variables: {len(m.named_variables)} named, {len(m.hidden_variables)} hidden",
        f"epistemic partition: {len(m.epistemic_partition)} cells",
        f"nomic partition: {len(m.nomic_partition)} cells",
        f"mirrors: {len(m.mirrors)}",
        "ok",
    ])
    _emit(args, {"command": "validate", "ok": True,
                 "worlds": len(m.worlds),
                 "propositions": len(m.propositions),
                 "named_variables": len(m.named_variables),
                 "hidden_variables": len(m.hidden_variables)}, text)
    return EXIT_OK


def cmd_examples(args) -> int:
    if args.name is None:
        raise _UsageError("missing fixture name")
    try:
        m = fixtures.load_fixture(args.name)
    except KeyError as e:
        raise _UsageError(str(e.args[0])) from None
    results = []
    for claim in fixtures.fixture_claims(args.name):
        f = parse_formula(claim.formula)
        targets = [claim.world] if claim.world is not None else list(m.worlds)
        for w in targets:
            got = _both(m, w, f)
            results.append({"world": w, "formula": claim.formula,
                            "expected": claim.expect, "got": got,
                            "ok": got == claim.expect})
    all_ok = all(r["ok"] for r in results)
    lines = [f"{'PASS' if r['ok'] else 'FAIL'} world={r['world']} "
             f"{r['formula']} = {str(r['got']).lower()}" for r in results]
    lines.append(f"{sum(r['ok'] for r in results)}/{len(results)} claims hold")
    _emit(args, {"command": "examples", "name": args.name,
                 "results": results, "ok": all_ok}, "\n".join(lines))
    return EXIT_OK if all_ok else 1


_HANDLERS = {
    "check": cmd_check,
    "extension": cmd_extension,
    "generative": cmd_generative,
    "bisim": cmd_bisim,
    "axioms": cmd_axioms,
    "validate": cmd_validate,
    "examples": cmd_examples,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return _HANDLERS[args.command](args)
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as e:
        print(f"syntax error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"invalid argument: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ModelError as e:
        print(f"model error: {e}", file=sys.stderr)
        return EXIT_MODEL
    except EvalError as e:
        print(f"evaluation error: {e}", file=sys.stderr)
        return EXIT_EVAL
    except _RouteDisagreement as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_ROUTES


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
