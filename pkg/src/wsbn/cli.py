"""Command-line front end.

Exit status: 0 for any completed verdict, 2 for unreadable or invalid
input, 3 when a resource limit stopped the run.
"""
from __future__ import annotations

import argparse
import sys
import time
from typing import Optional, Sequence

from .modelfile import Model, ModelError, load_model, parse_target
from .oracle import ExplorationBounds, explore_rbn, explore_static
from .order import Verdict
from .process import SpecError, complete_receives, min_enabling, receive_complete
from .rbn import rbn_coverable
from .topology import FixedGraph, parse_class, static_coverable

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_LIMIT = 3


class _Report:
    def __init__(self, quiet: bool, out):
        self.quiet = quiet
        self.out = out

    def verdict(self, line: str):
        print(line, file=self.out)

    def __call__(self, line: str):
        if not self.quiet:
            print(line, file=self.out)


def _letters(xs) -> str:
    return "{" + ", ".join(sorted(xs)) + "}"


def _prepare(args) -> tuple[Model, object]:
    model = load_model(args.model)
    spec = model.spec
    if args.complete_receives:
        try:
            spec = complete_receives(spec)
        except SpecError as exc:
            raise ModelError(str(exc), "--complete-receives") from None
        model = Model(spec, model.topology, model.vertex_names)
    target = parse_target(args.target, spec) if getattr(args, "target", None) is not None else None
    return model, target


def _cmd_check_rbn(args, say: _Report) -> int:
    model, target = _prepare(args)
    start = time.perf_counter()
    res = rbn_coverable(model.spec, target, args.max_iterations)
    elapsed = time.perf_counter() - start
    say.verdict(f"VERDICT: {res.verdict}")
    say("semantics: rbn")
    say(f"unlock iterations: {res.state.iteration}")
    say(f"inner coverability calls: {res.inner_calls}")
    if res.final is not None:
        say(f"final iterations: {res.final.iterations}")
        say(f"final basis size: {len(res.final.basis)}")
        say(f"max basis size: {res.final.max_basis_size}")
    say(f"unlocked: {_letters(res.state.unlocked)}")
    say(f"elapsed [nondeterministic]: {elapsed:.4f}s")
    return EXIT_LIMIT if res.verdict is Verdict.LIMIT_EXCEEDED else EXIT_OK


def _cmd_check_static(args, say: _Report) -> int:
    model, target = _prepare(args)
    if args.cls == "fixed":
        if model.topology is None:
            raise ModelError("class 'fixed' needs a topology section in the model", "topology")
        cls = FixedGraph(model.topology)
    else:
        try:
            cls = parse_class(args.cls)
        except ValueError as exc:
            raise ModelError(str(exc), "--class") from None
    start = time.perf_counter()
    res = static_coverable(model.spec, target, cls, args.max_iterations)
    elapsed = time.perf_counter() - start
    say.verdict(f"VERDICT: {res.verdict}")
    say(f"class: {cls}")
    if res.cover is not None:
        say(f"iterations: {res.cover.iterations}")
        say(f"final basis size: {len(res.cover.basis)}")
        say(f"max basis size: {res.cover.max_basis_size}")
    if res.shapes_checked:
        say(f"shapes checked: {res.shapes_checked}")
    say(f"receive-complete: {'yes' if receive_complete(model.spec) else 'no'}")
    say(f"exact: {'yes' if res.exact else 'no'}")
    if not res.exact:
        say("note: no replayable run was found and the process is not receive-complete;")
        say("      COVERABLE may be an over-approximation (try --complete-receives)")
    if res.run is not None:
        say(f"witness initial: {res.initial}")
        for k, mv in enumerate(res.run, 1):
            say(f"  step {k}: vertex {mv.broadcaster} !!{mv.letter} -> {mv.result}")
    say(f"elapsed [nondeterministic]: {elapsed:.4f}s")
    return EXIT_LIMIT if res.verdict is Verdict.LIMIT_EXCEEDED else EXIT_OK


def _cmd_oracle(args, say: _Report) -> int:
    model, target = _prepare(args)
    bounds = ExplorationBounds(args.max_nodes, args.max_counter, args.max_depth)
    if args.semantics == "static":
        if model.topology is None:
            raise ModelError("static exploration needs a topology section in the model", "topology")
        res = explore_static(model.spec, target, model.topology, bounds)
    else:
        res = explore_rbn(model.spec, target, bounds)
    say.verdict(f"RESULT: {res.status}")
    say(f"semantics: {args.semantics}")
    say(f"states visited: {res.states_visited}")
    if res.found:
        initial = res.initial if args.semantics == "static" else "[" + ", ".join(map(str, res.initial)) + "]"
        say(f"initial: {initial}")
        for k, mv in enumerate(res.trace, 1):
            if args.semantics == "static":
                receivers = [v for v, _ in mv.rules if v != mv.broadcaster]
                say(f"step {k}: broadcaster={mv.broadcaster} letter={mv.letter} "
                    f"receivers={{{', '.join(map(str, receivers))}}} -> {mv.result}")
            else:
                receivers = ", ".join(f"{c}/{rid}" for c, rid in mv.receivers)
                say(f"step {k}: broadcaster={mv.broadcaster}/{mv.rule} letter={mv.letter} "
                    f"receivers={{{receivers}}} -> [{', '.join(map(str, mv.result))}]")
    return EXIT_OK


def _cmd_info(args, say: _Report) -> int:
    model, _ = _prepare(args)
    spec = model.spec
    say.verdict(f"kind: {spec.kind}" + (f" (dimension {spec.dimension})" if spec.kind == "vass" else ""))
    say(f"states: {len(spec.states)}")
    say(f"letters: {len(spec.alphabet)}")
    say(f"initial states: {len(spec.initial)}")
    say(f"broadcast rules: {len(spec.broadcasts())}")
    say(f"receive rules: {len(spec.receives())}")
    say(f"receive-complete: {'yes' if receive_complete(spec) else 'no'}")
    for a in spec.alphabet:
        say(f"letter {a}: |B_{a}| = {len(spec.broadcasts(a))}, |R_{a}| = {len(spec.receives(a))}")
    for t in spec.broadcasts():
        say(f"min-enabling {t.id}: " + ", ".join(str(c) for c in min_enabling(t)))
    if model.topology is not None:
        say(f"topology: {model.topology.n} vertices, {len(model.topology.edges)} edges")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wsbn", description="Coverability for well-structured broadcast networks")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("model", help="model file (YAML or JSON)")
    common.add_argument("--max-iterations", type=int, default=None, help="cap on saturation iterations")
    common.add_argument("--complete-receives", action="store_true",
                        help="add ??a self-loops where a state has none (finite-state only)")
    common.add_argument("--quiet", action="store_true", help="print the verdict line only")

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check-rbn", parents=[common], help="coverability with reconfiguration")
    p.add_argument("--target", required=True)
    p.set_defaults(run=_cmd_check_rbn)

    p = sub.add_parser("check-static", parents=[common], help="coverability on a static topology class")
    p.add_argument("--target", required=True)
    p.add_argument("--class", dest="cls", required=True, help="clique | path:K | fixed | diamdeg:K,D,N")
    p.set_defaults(run=_cmd_check_static)

    p = sub.add_parser("oracle", parents=[common], help="bounded explicit-state exploration")
    p.add_argument("--target", required=True)
    p.add_argument("--max-nodes", type=int, default=3)
    p.add_argument("--max-counter", type=int, default=3)
    p.add_argument("--max-depth", type=int, default=10)
    p.add_argument("--semantics", choices=("rbn", "static"), default="rbn")
    p.set_defaults(run=_cmd_oracle)

    p = sub.add_parser("info", parents=[common], help="summarise a model")
    p.set_defaults(run=_cmd_info)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    say = _Report(args.quiet, out)
    try:
        return args.run(args, say)
    except (ModelError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
