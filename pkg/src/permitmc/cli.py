"""Command-line front end.

Exit codes are disjoint across all subcommands: 0 on success, 1 on a semantic
failure (counterexample, rejected derivation, failed witness, translation
mismatch, fixture regression), 2 on usage or input errors. Sets print in
sorted state order and ``--json`` payloads carry a schema tag, so outputs
diff cleanly in CI. Randomized subcommands echo their seed for replay.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Any, Sequence

from .algebra import SearchBounds, search_witness, verify_witness
from .atl import atl_model_to_dict, expand_model, verify_translation
from .checker import model_check
from .deduction import (
    AXIOMS,
    DERIVED_SCHEMAS,
    check_rule_locally,
    check_validity,
    derivation_from_dict,
    instantiate_axiom,
    verify_derivation,
)
from .errors import CapacityError, InputError
from .fixtures import (
    DERIVATION_IDS,
    FIXTURE_IDS,
    load_derivation_fixture,
    load_fixture,
    run_fixture,
)
from .formula import Modality, format_formula, implies, parse
from .generate import GenParams, random_formula, random_model
from .model import (
    TransitionSystem,
    model_from_dict,
    model_to_dict,
    validate_model,
)

SCHEMA = "permitmc/v1"

EXIT_OK = 0
EXIT_SEMANTIC = 1
EXIT_USAGE = 2


def _load_model(path: str, validate: bool = True) -> TransitionSystem:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    m = model_from_dict(data)
    if validate:
        report = validate_model(m)
        if report:
            lines = "\n".join(f"  {v}" for v in report)
            raise InputError(f"{path} violates model invariants:\n{lines}")
    return m


def _emit_json(payload: dict[str, Any]) -> None:
    print(json.dumps({"schema": SCHEMA, **payload}, indent=2, sort_keys=False))


def _cmd_check(args: argparse.Namespace) -> int:
    m = _load_model(args.model, validate=not args.no_validate)
    f = parse(args.formula)
    ts = model_check(m, f)
    if args.json:
        _emit_json({"formula": format_formula(f), "states": ts.sorted_members()})
    else:
        print(" ".join(ts.sorted_members()))
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    m = _load_model(args.model, validate=False)
    report = validate_model(m)
    if args.json:
        _emit_json(
            {
                "valid": not report,
                "violations": [
                    {"code": v.code, "message": v.message, "state": v.state, "agent": v.agent}
                    for v in report
                ],
            }
        )
    else:
        for v in report:
            print(v.message)
        print("valid" if not report else f"invalid ({len(report)} violations)")
    return EXIT_OK if not report else EXIT_SEMANTIC


def _random_bindings(schema, rng: random.Random, m: TransitionSystem, depth: int) -> dict:
    props = sorted(m.valuation) or ["p0"]
    bindings: dict[str, Any] = {}
    for var in schema.agent_vars:
        bindings[var] = rng.choice(m.agents)
    for var in schema.formula_vars:
        bindings[var] = random_formula(rng.getrandbits(32), depth, m.agents, props)
    return bindings


def _cmd_axioms(args: argparse.Namespace) -> int:
    m = _load_model(args.model)
    rng = random.Random(args.seed)
    print(f"seed: {args.seed}")
    ids = [args.axiom] if args.axiom else sorted(AXIOMS)
    failures = 0
    rows = []
    for axiom_id in ids:
        schema = AXIOMS.get(axiom_id)
        if schema is None:
            raise InputError(f"unknown axiom {axiom_id!r}; known: {', '.join(sorted(AXIOMS))}")
        for _ in range(args.count):
            instance = instantiate_axiom(schema, _random_bindings(schema, rng, m, args.depth))
            verdict = check_validity(m, instance)
            rows.append((axiom_id, instance, verdict))
            if not verdict.valid:
                failures += 1
    for axiom_id, instance, verdict in rows:
        status = "valid" if verdict.valid else f"counterexample at {verdict.counterexample}"
        print(f"{axiom_id}: {status}: {format_formula(instance)}")
    return EXIT_SEMANTIC if failures else EXIT_OK


def _soundness_round(m: TransitionSystem, rng: random.Random, depth: int) -> list[str]:
    """All axiom schemas, derived schemas, and local rule checks on one model;
    returns descriptions of any counterexamples."""
    problems: list[str] = []
    props = sorted(m.valuation) or ["p0"]
    for schema in list(AXIOMS.values()) + list(DERIVED_SCHEMAS.values()):
        instance = instantiate_axiom(schema, _random_bindings(schema, rng, m, depth))
        verdict = check_validity(m, instance)
        if not verdict.valid:
            problems.append(
                f"{schema.id} fails at {verdict.counterexample}: {format_formula(instance)}"
            )
    phi = random_formula(rng.getrandbits(32), depth, m.agents, props)
    psi = random_formula(rng.getrandbits(32), depth, m.agents, props)
    agent = rng.choice(m.agents)
    from .formula import Modal, Neg

    ir2 = check_rule_locally(
        m,
        "ir2",
        implies(phi, psi),
        implies(Modal(Modality.WA, agent, phi), Modal(Modality.WA, agent, psi)),
    )
    if not ir2.valid:
        problems.append(f"ir2 fails at {ir2.counterexample}")
    ir3 = check_rule_locally(
        m,
        "ir3",
        implies(phi, psi),
        implies(Modal(Modality.SA, agent, psi), Modal(Modality.SA, agent, phi)),
    )
    if not ir3.valid:
        problems.append(f"ir3 fails at {ir3.counterexample}")
    if len(m.agents) >= 2:
        a, b = rng.sample(list(m.agents), 2)
        ir4 = check_rule_locally(
            m,
            "ir4",
            implies(phi, Neg(psi)),
            implies(Modal(Modality.WE, a, phi), Modal(Modality.SE, b, psi)),
        )
        if not ir4.valid:
            problems.append(f"ir4 fails at {ir4.counterexample}")
    return problems


def _cmd_soundness(args: argparse.Namespace) -> int:
    rng = random.Random(args.seed)
    print(f"seed: {args.seed}")
    counterexamples = 0
    for k in range(args.count):
        params = GenParams(
            seed=rng.getrandbits(32),
            num_agents=rng.randint(1, args.max_agents),
            num_states=rng.randint(1, args.max_states),
            max_actions=args.max_actions,
            num_props=args.props,
            permitted_density=rng.choice((0.4, 0.7, 1.0)),
            branching=args.branching,
        )
        m = random_model(params)
        problems = _soundness_round(m, rng, args.depth)
        for p in problems:
            counterexamples += 1
            print(f"model {k} (gen seed {params.seed}): {p}")
    checks = args.count * (len(AXIOMS) + len(DERIVED_SCHEMAS) + 3)
    print(f"models: {args.count}  checks: ~{checks}  counterexamples: {counterexamples}")
    return EXIT_SEMANTIC if counterexamples else EXIT_OK


def _cmd_prove(args: argparse.Namespace) -> int:
    if args.builtin:
        derivation = load_derivation_fixture(args.builtin)
    else:
        try:
            with open(args.derivation, encoding="utf-8") as fh:
                derivation = derivation_from_dict(json.load(fh))
        except OSError as exc:
            raise InputError(f"cannot read {args.derivation}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.derivation} is not valid JSON: {exc}") from exc
    verdict = verify_derivation(derivation)
    if args.json:
        _emit_json(
            {
                "accepted": verdict.accepted,
                "steps": len(derivation.steps),
                "failed_step": verdict.failed_step,
                "reason": verdict.reason,
            }
        )
    elif verdict.accepted:
        print(f"accepted ({len(derivation.steps)} steps)")
    else:
        print(f"rejected at step {verdict.failed_step}: {verdict.reason}")
    return EXIT_OK if verdict.accepted else EXIT_SEMANTIC


def _cmd_witness(args: argparse.Namespace) -> int:
    target = Modality(args.target)
    if args.search:
        bounds = SearchBounds(
            max_states=args.max_states,
            num_agents=args.agents,
            max_actions=args.max_actions,
            allow_nonpermitted=not args.all_permitted,
            max_candidates=args.max_candidates,
        )
        print(f"seed: {args.seed}")
        result = search_witness(target, bounds, args.seed)
        if result.found:
            assert result.model is not None and result.report is not None
            _emit_json(
                {
                    "found": True,
                    "candidates": result.candidates,
                    "model": model_to_dict(result.model),
                    "report": result.report.to_dict(),
                }
            )
            return EXIT_OK
        _emit_json({"found": False, "exhausted": True, "candidates": result.candidates})
        return EXIT_SEMANTIC
    if not args.model:
        raise InputError("witness needs --model unless --search is given")
    m = _load_model(args.model)
    report = verify_witness(m, target, args.prop)
    _emit_json({"report": report.to_dict()})
    return EXIT_OK if report.ok else EXIT_SEMANTIC


def _cmd_translate(args: argparse.Namespace) -> int:
    m = _load_model(args.model)
    am = expand_model(m)
    payload = atl_model_to_dict(am)
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc}") from exc
    print(f"wrote {args.out} ({len(am.states)} expanded states"
          f"{', with the bookkeeping agent' if am.has_nature else ''})")
    if args.verify:
        if not args.formula:
            raise InputError("--verify needs --formula")
        verdict = verify_translation(m, parse(args.formula), max_modal_depth=args.max_depth)
        if verdict.ok:
            print(f"translation agrees at all {verdict.checked} expanded states")
            return EXIT_OK
        st = verdict.mismatch_state
        assert st is not None
        print(
            f"mismatch at <{st.base}, {{{', '.join(sorted(st.allowed))}}}>: "
            f"direct check says {verdict.expected}"
        )
        return EXIT_SEMANTIC
    return EXIT_OK


def _cmd_gen(args: argparse.Namespace) -> int:
    params = GenParams(
        seed=args.seed,
        num_agents=args.agents,
        num_states=args.states,
        max_actions=args.max_actions,
        num_props=args.props,
        permitted_density=args.density,
        branching=args.branching,
        deterministic=args.deterministic,
    )
    print(f"seed: {args.seed}")
    m = random_model(params)
    payload = model_to_dict(m)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, indent=2)
                fh.write("\n")
        except OSError as exc:
            raise InputError(f"cannot write {args.out}: {exc}") from exc
        print(f"wrote {args.out}")
    else:
        _emit_json({"model": payload})
    return EXIT_OK


def _cmd_fixtures(args: argparse.Namespace) -> int:
    if args.export:
        import pathlib

        out_dir = pathlib.Path(args.export)
        out_dir.mkdir(parents=True, exist_ok=True)
        for fid in FIXTURE_IDS:
            fx = load_fixture(fid)
            for variant, model in fx.models.items():
                name = fid if len(fx.models) == 1 else f"{fid}.{variant}"
                path = out_dir / f"{name}.json"
                path.write_text(json.dumps(model_to_dict(model), indent=2) + "\n")
                print(f"wrote {path}")
        return EXIT_OK
    if not args.run:
        for fid in FIXTURE_IDS:
            fx = load_fixture(fid)
            variants = ", ".join(sorted(fx.models))
            print(f"{fid}: variants [{variants}], {len(fx.expectations)} expectations")
        for name in DERIVATION_IDS:
            print(f"derivation {name}")
        return EXIT_OK
    failures = 0
    for fid in FIXTURE_IDS:
        for result in run_fixture(load_fixture(fid)):
            if not result.ok:
                failures += 1
            print(result.describe())
    for name in DERIVATION_IDS:
        verdict = verify_derivation(load_derivation_fixture(name))
        status = "ok" if verdict.accepted else "FAIL"
        if not verdict.accepted:
            failures += 1
        print(f"[{status}] derivation {name}")
    print(f"failures: {failures}")
    return EXIT_SEMANTIC if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permitmc",
        description="Model checking and reasoning for agentive permission modalities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="compute the truth set of a formula in a model")
    p.add_argument("--model", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--no-validate", action="store_true", help="skip model validation")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("validate", help="report model invariant violations")
    p.add_argument("--model", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("axioms", help="check axiom instances for validity on a model")
    p.add_argument("--model", required=True)
    p.add_argument("--axiom", help="restrict to one axiom id (A1..A9)")
    p.add_argument("--depth", type=int, default=2, help="formula depth for random bindings")
    p.add_argument("--count", type=int, default=3, help="instances per schema")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_axioms)

    p = sub.add_parser("soundness", help="fuzz axioms and rules over random models")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100, help="number of random models")
    p.add_argument("--max-states", type=int, default=5)
    p.add_argument("--max-agents", type=int, default=3)
    p.add_argument("--max-actions", type=int, default=3)
    p.add_argument("--branching", type=int, default=2)
    p.add_argument("--props", type=int, default=2)
    p.add_argument("--depth", type=int, default=3)
    p.set_defaults(func=_cmd_soundness)

    p = sub.add_parser("prove", help="verify a derivation")
    p.add_argument("--derivation", help="path to a derivation JSON file")
    p.add_argument("--builtin", choices=DERIVATION_IDS, help="verify a shipped derivation")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_prove)

    p = sub.add_parser("witness", help="verify or search for undefinability witnesses")
    p.add_argument("--target", required=True, choices=[m.value for m in Modality])
    p.add_argument("--model", help="model to verify as a witness")
    p.add_argument("--prop", default="p")
    p.add_argument("--search", action="store_true", help="search for a witness instead")
    p.add_argument("--max-states", type=int, default=3)
    p.add_argument("--max-actions", type=int, default=3)
    p.add_argument("--agents", type=int, default=2)
    p.add_argument("--all-permitted", action="store_true")
    p.add_argument("--max-candidates", type=int, default=50_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("translate", help="expand a model into the game structure")
    p.add_argument("--model", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--formula", help="formula for --verify")
    p.add_argument("--max-depth", type=int, default=2, help="modal depth cap for --verify")
    p.set_defaults(func=_cmd_translate)

    p = sub.add_parser("gen", help="generate a seeded random model")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--states", type=int, default=4)
    p.add_argument("--agents", type=int, default=2)
    p.add_argument("--max-actions", type=int, default=2)
    p.add_argument("--props", type=int, default=1)
    p.add_argument("--density", type=float, default=1.0)
    p.add_argument("--branching", type=int, default=1)
    p.add_argument("--deterministic", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("fixtures", help="list the fixture catalog or replay it")
    p.add_argument("--run", action="store_true", help="execute all golden expectations")
    p.add_argument("--export", metavar="DIR", help="write each fixture model as plain model JSON")
    p.set_defaults(func=_cmd_fixtures)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses exit code 2 for usage errors
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())
