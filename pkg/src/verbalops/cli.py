"""Command-line entry point: ``verbalops {eval,check,compose,solve,theorem,dims}``."""

from __future__ import annotations

import argparse
import dataclasses
import json
import re
import sys
import warnings
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ConstraintError, ParseError, SchemaError, VerbalOpsError
from .exactfield import FieldSpec
from .freemagma import monomial_count
from .relfree import VarietySpec, dim_component, normal_form

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
MAX_DEGREE, MAX_GENS = 5, 3


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    variety: VarietySpec | None
    field: FieldSpec
    degree_cap: int
    gens: int
    inputs: list[str] = field(default_factory=list)
    json: bool = False
    seed: int = 0
    samples: int = 100
    verify: bool = False

    def header(self) -> dict:
        return {
            "command": self.command,
            "variety": self.variety.cli_name if self.variety else None,
            "field": str(self.field),
            "degree_cap": self.degree_cap,
            "gens": self.gens,
            "seed": self.seed,
        }


def _with_cap(variety: VarietySpec, cap: int) -> VarietySpec:
    return dataclasses.replace(variety, degree_cap=cap)


def _emit(cfg: RunConfig, lines: list[str], payload: dict) -> None:
    if cfg.json:
        print(json.dumps({**cfg.header(), **payload}, indent=2, ensure_ascii=False))
    else:
        h = cfg.header()
        print("# " + " ".join(f"{k}={v}" for k, v in h.items() if v is not None and k != "command"))
        for line in lines:
            print(line)


# --- commands --------------------------------------------------------------------

def cmd_eval(cfg: RunConfig) -> int:
    from .exprio import format_expression, parse_expression

    text = cfg.inputs[0]
    gens = cfg.gens
    if gens == 0:
        used = [int(n) for n in re.findall(r"x(\d+)", text)]
        gens = max(used, default=1)
        cfg.gens = gens
    variety = cfg.variety or VarietySpec.free()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        e = parse_expression(text, gens, cfg.field)
    nf = normal_form(variety, e)
    out = format_expression(nf)
    _emit(cfg, [out], {"input": text, "normal_form": out})
    return EXIT_OK


def cmd_check(cfg: RunConfig) -> int:
    from .exprio import load_wordsystem, read_json
    from .verbal import check_b1, check_op1, check_op2_axioms, check_sigma_iso, inner_solve

    W = load_wordsystem(read_json(cfg.inputs[0]))
    W = dataclasses.replace(W, variety=_with_cap(W.variety, cfg.degree_cap))
    cfg.variety, cfg.field = W.variety, W.field
    reports = [check_op1(W), check_op2_axioms(W, generator_cap=cfg.gens), check_sigma_iso(W)]
    if cfg.verify:
        reports.append(check_b1(W, samples=cfg.samples, seed=cfg.seed))
    inner = inner_solve(W)
    lines = [r.summary() for r in reports]
    if inner:
        lines.append(f"inner: yes, certificate c(x1) = {inner.certificate}")
    else:
        lines.append(f"inner: no (phi = {W.phi.kind}; {inner.reason})")
    ok = all(reports)
    payload = {
        "checks": [{"condition": r.condition, "passed": bool(r),
                    "witnesses": [str(w) for w in r.witnesses]} for r in reports],
        "inner": bool(inner),
        "certificate": str(inner.certificate) if inner else None,
        "inner_reason": None if inner else inner.reason,
        "passed": ok,
    }
    _emit(cfg, lines, payload)
    return EXIT_OK if ok else EXIT_FAIL


def _oracle_match(p2, p1) -> bool:
    from .autgroup import compose, params_to_wordsystem
    from .verbal import StarAlgebra, sigma_eval, words_from_bijection

    W1, W2 = params_to_wordsystem(p1), params_to_wordsystem(p2)
    S1, S2 = StarAlgebra(W1), StarAlgebra(W2)
    got = words_from_bijection(lambda e: sigma_eval(W2, sigma_eval(W1, e, S1), S2), p1.variety, p1.field)
    return got == params_to_wordsystem(compose(p2, p1))


def cmd_compose(cfg: RunConfig) -> int:
    from .autgroup import compose
    from .exprio import load_params, read_json, save_params

    outer, inner = (load_params(read_json(p)) for p in cfg.inputs[:2])
    if outer.variety != inner.variety or outer.field != inner.field:
        raise InputError("both parameter documents must share variety and field")
    cfg.variety, cfg.field = outer.variety, outer.field
    result = compose(outer, inner)
    doc = save_params(result)
    lines = [json.dumps(doc, ensure_ascii=False)]
    payload = {"result": doc}
    status = EXIT_OK
    if cfg.verify:
        match = _oracle_match(outer, inner)
        lines.append("oracle match: exact" if match else "oracle match: MISMATCH")
        payload["oracle_match"] = match
        status = EXIT_OK if match else EXIT_FAIL
    _emit(cfg, lines, payload)
    return status


def _family_lines(fam, indent: str = "") -> list[str]:
    from .freemagma import AlgebraElement
    from .polynomial import format_poly

    lines = [f"{indent}free parameters: {', '.join(fam.free_parameters)}"]
    for ineq in fam.inequations:
        lines.append(f"{indent}nondegeneracy: {format_poly(ineq)} != 0")
    if fam.solution:
        lines.append(f"{indent}eliminated coefficients:")
        lines.extend(f"{indent}  {k} = {format_poly(v)}" for k, v in fam.solution.items())
    W = fam.closed_form
    if W is not None:
        lines.append(f"{indent}w_plus = {W.w_plus}")
        lines.append(f"{indent}w_dot = {W.w_dot}")
        for m, p in W.scalar_family.coefficients:
            lines.append(f"{indent}w_lambda coefficient of {AlgebraElement.from_monomial(m, 1)}: {format_poly(p)}")
    return lines


def _family_payload(fam) -> dict:
    from .exprio import format_expression
    from .polynomial import format_poly

    W = fam.closed_form
    return {
        "label": fam.label,
        "free_parameters": fam.free_parameters,
        "inequations": [format_poly(p) for p in fam.inequations],
        "solution": {k: format_poly(v) for k, v in fam.solution.items()},
        "relation_count": len(fam.constraint_relations),
        "w_plus": format_expression(W.w_plus) if W else None,
        "w_dot": format_expression(W.w_dot) if W else None,
        "scalar_family": {str(m): format_poly(p) for m, p in W.scalar_family.coefficients} if W else None,
        "branches": [_family_payload(b) for b in fam.branches],
    }


def cmd_solve(cfg: RunConfig) -> int:
    from .autgroup import solve_general_wordsystem

    variety = _with_cap(cfg.variety or VarietySpec.parse(cfg.inputs[0]), cfg.degree_cap)
    cfg.variety = variety
    fam = solve_general_wordsystem(variety)
    lines = [f"constraint relations: {len(fam.constraint_relations)}"]
    if fam.branches:
        lines.append(f"free parameters: {', '.join(fam.free_parameters)}")
        for b in fam.branches:
            lines.append(f"branch {b.label}:")
            lines.extend(_family_lines(b, "  "))
    else:
        lines.extend(_family_lines(fam))
    _emit(cfg, lines, _family_payload(fam))
    return EXIT_OK


def cmd_theorem(cfg: RunConfig) -> int:
    from .autgroup import TABLE, theorem_report

    name = cfg.inputs[0] if cfg.inputs else (cfg.variety.cli_name if cfg.variety else None)
    if name is None:
        raise InputError("theorem needs a table row name")
    variety = VarietySpec.parse(name)
    key = variety.cli_name.replace("-", "_")
    if key not in TABLE:
        raise InputError(f"{name!r} is not one of the table rows: {', '.join(TABLE)}")
    cfg.variety = variety
    report = theorem_report(variety, cfg.field, seed=cfg.seed, pair_samples=cfg.samples)
    _emit(cfg, report.lines(), report.as_dict())
    return EXIT_OK if report.matches else EXIT_FAIL


def cmd_dims(cfg: RunConfig) -> int:
    variety = _with_cap(cfg.variety or VarietySpec.free(), cfg.degree_cap)
    cfg.variety = variety
    gens = cfg.gens or 2
    top = cfg.degree_cap
    if variety.is_nilpotent:
        top = min(top, variety.nilpotency - 1)
    rows = []
    for n in range(1, top + 1):
        rows.append({"degree": n, "dim": dim_component(variety, gens, n), "free_monomials": monomial_count_total(gens, n)})
    total = sum(r["dim"] for r in rows)
    lines = [f"degree {r['degree']}: dim {r['dim']} (free magma monomials {r['free_monomials']})" for r in rows]
    lines.append(f"total through degree {top}: {total}")
    _emit(cfg, lines, {"dims": rows, "total": total})
    return EXIT_OK


def monomial_count_total(g: int, n: int) -> int:
    from .freemagma import compositions

    return sum(monomial_count(mu) for mu in compositions(n, g))


COMMANDS = {
    "eval": cmd_eval,
    "check": cmd_check,
    "compose": cmd_compose,
    "solve": cmd_solve,
    "theorem": cmd_theorem,
    "dims": cmd_dims,
}

_NARGS = {"eval": 1, "check": 1, "compose": 2, "solve": (0, 1), "theorem": (0, 1), "dims": 0}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="verbalops", description="Exact verbal-operation computations.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("inputs", nargs="*", help="expression, document paths, or variety name")
    p.add_argument("--variety", help="free, commutative, anticommutative, power-associative, "
                                     "alternative, jordan, nilpotentN")
    p.add_argument("--field", default="quadratic:2", help="rationals or quadratic:d (default quadratic:2)")
    p.add_argument("--degree-cap", type=int, default=MAX_DEGREE)
    p.add_argument("--gens", type=int, default=None, help=f"generator cap, at most {MAX_GENS}")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100, help="sample count for randomized checks")
    p.add_argument("--verify", action="store_true", help="run the extra oracle or sampled checks")
    return p


def _config(args: argparse.Namespace) -> RunConfig:
    expected = _NARGS[args.command]
    lo, hi = expected if isinstance(expected, tuple) else (expected, expected)
    if not lo <= len(args.inputs) <= hi:
        raise InputError(f"{args.command} takes {lo if lo == hi else f'{lo} to {hi}'} positional argument(s)")
    if not 1 <= args.degree_cap <= MAX_DEGREE:
        raise InputError(f"--degree-cap must lie in 1..{MAX_DEGREE}")
    if args.gens is not None and not 1 <= args.gens <= MAX_GENS:
        raise InputError(f"--gens must lie in 1..{MAX_GENS}")
    try:
        fld = FieldSpec.parse(args.field)
        variety = VarietySpec.parse(args.variety) if args.variety else None
    except (ValueError, VerbalOpsError) as exc:
        raise InputError(str(exc)) from None
    if variety is not None:
        variety = _with_cap(variety, args.degree_cap)
    default_gens = 0 if args.command == "eval" else (2 if args.command == "dims" else MAX_GENS)
    return RunConfig(args.command, variety, fld, args.degree_cap,
                     args.gens if args.gens is not None else default_gens,
                     list(args.inputs), args.json, args.seed, args.samples, args.verify)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_intermixed_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[cfg.command](cfg)
    except (InputError, ParseError, SchemaError, ConstraintError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerbalOpsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
