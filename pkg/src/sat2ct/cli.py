"""Command-line front end wiring the pipeline.

Subcommands: sparsify, compile, verify, constants, and pipeline
(sparsify, then compile and verify every leaf). All reports are JSON
with canonical key order so identical inputs give byte-identical output.

Exit codes: 0 success, 2 parse/usage error, 3 recursion budget exceeded,
4 qubit or brute-force budget exceeded, 5 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from . import bounds
from .amplitude import verify_counting_identity
from .cliffordt import build_counting_circuit, emit_qasm, lower_circuit
from .errors import (
    DimacsError,
    Overflow,
    QubitBudgetExceeded,
    RecursionBudgetExceeded,
    Sat2ctError,
    TooManyVariables,
)
from .formula import (
    Formula,
    count_satisfying,
    emit_dimacs,
    length,
    parse_dimacs,
    reduce,
)
from .revcomp import compile_formula, emit_revc
from .sparsify import SparsifyResult, ThetaParams, check_leaf_bounds, sparsify

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NODE_BUDGET = 3
EXIT_RESOURCE = 4
EXIT_MISMATCH = 5


@dataclass(frozen=True)
class PipelineConfig:
    theta1: float = bounds.DEFAULT_THETA1
    theta2: float = bounds.DEFAULT_THETA2
    qubit_cap: int = 26
    brute_force_cap: int = 24
    node_budget: int = 10_000_000
    tolerance: float = 1e-9
    output_dir: Path = Path("out")

    def __post_init__(self) -> None:
        if min(self.qubit_cap, self.brute_force_cap, self.node_budget) <= 0:
            raise ValueError("all caps must be positive")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")

    @property
    def thetas(self) -> ThetaParams:
        return ThetaParams(self.theta1, self.theta2)

    def to_json(self) -> dict:
        return {
            "theta1": self.theta1,
            "theta2": self.theta2,
            "qubit_cap": self.qubit_cap,
            "bf_cap": self.brute_force_cap,
            "node_budget": self.node_budget,
            "tol": self.tolerance,
        }


_CONFIG_KEYS = {
    "theta1": "theta1",
    "theta2": "theta2",
    "qubit_cap": "qubit_cap",
    "bf_cap": "brute_force_cap",
    "node_budget": "node_budget",
    "tol": "tolerance",
    "out": "output_dir",
}


def _resolve_config(args: argparse.Namespace) -> PipelineConfig:
    """Defaults, overridden by the config file, overridden by flags."""
    values: dict = {}
    config_path = getattr(args, "config", None)
    if config_path is not None:
        with open(config_path, "rb") as fh:
            data = tomllib.load(fh)
        for key, value in data.items():
            if key not in _CONFIG_KEYS:
                raise ValueError(f"unknown config key {key!r}")
            values[_CONFIG_KEYS[key]] = value
    flag_map = {
        "theta1": "theta1",
        "theta2": "theta2",
        "qubit_cap": "qubit_cap",
        "bf_cap": "brute_force_cap",
        "node_budget": "node_budget",
        "tol": "tolerance",
        "out": "output_dir",
    }
    for flag, field in flag_map.items():
        value = getattr(args, flag, None)
        if value is not None:
            values[field] = value
    if "output_dir" in values:
        values["output_dir"] = Path(values["output_dir"])
    return PipelineConfig(**values)


def _dump_json(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write_json(path: Path, obj: dict) -> None:
    path.write_text(_dump_json(obj))


def _read_formula(path: Path) -> Formula:
    return parse_dimacs(path.read_bytes()).formula


def _leaf_name(i: int) -> str:
    return f"leaf_{i:04d}"


def _sparsify_report(
    input_name: str, root: Formula, result: SparsifyResult
) -> dict:
    s = result.stats
    return {
        "input": input_name,
        "thetas": {
            "theta1": result.thetas.theta1,
            "theta2": result.thetas.theta2,
        },
        "root": {"n": root.n, "m": root.m, "L": length(root)},
        "leaves": [
            {
                "id": i,
                "file": _leaf_name(i) + ".cnf",
                "L": length(leaf),
                "m1": leaf.m1,
                "m2": leaf.m2,
                "m3": leaf.m3,
            }
            for i, leaf in enumerate(result.leaves)
        ],
        "stats": {
            "node_count": s.node_count,
            "leaf_count": s.leaf_count,
            "max_depth": s.max_depth,
            "max_r2": s.max_r2,
            "immigrant_1_total": s.immigrant_1_total,
            "immigrant_2_total": s.immigrant_2_total,
            "petal_steps_per_path_max": s.petal_steps_per_path_max,
        },
        "bounds": check_leaf_bounds(result, root.n).to_json(),
    }


def _run_sparsify(path: Path, config: PipelineConfig, out: Path) -> dict:
    formula = _read_formula(path)
    root = reduce(formula)
    result = sparsify(root, config.thetas, node_budget=config.node_budget)
    out.mkdir(parents=True, exist_ok=True)
    for i, leaf in enumerate(result.leaves):
        (out / (_leaf_name(i) + ".cnf")).write_text(emit_dimacs(leaf))
    report = _sparsify_report(path.name, root, result)
    _write_json(out / "sparsify_report.json", report)
    return report


def cmd_sparsify(args: argparse.Namespace, config: PipelineConfig) -> int:
    report = _run_sparsify(args.input, config, config.output_dir)
    sys.stdout.write(_dump_json(report))
    return EXIT_OK


def _compile_report(input_name: str, formula: Formula, config: PipelineConfig) -> tuple[dict, str, str]:
    rev = compile_formula(formula)
    counting = build_counting_circuit(formula, qubit_cap=config.qubit_cap)
    formula_length = length(formula)
    t_bound = 14 * formula_length
    report = {
        "input": input_name,
        "n": formula.n,
        "L": formula_length,
        "toffoli_count": rev.toffoli_count,
        "ancilla_count": rev.n_ancillas,
        "qubits": counting.n_qubits,
        "t_count": counting.t_count,
        "t_bound": t_bound,
        "within_bound": counting.t_count <= t_bound,
    }
    return report, emit_revc(rev), emit_qasm(counting)


def cmd_compile(args: argparse.Namespace, config: PipelineConfig) -> int:
    formula = _read_formula(args.input)
    report, revc_text, qasm_text = _compile_report(args.input.name, formula, config)
    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)
    stem = args.input.stem
    (out / f"{stem}.revc").write_text(revc_text)
    (out / f"{stem}.qasm").write_text(qasm_text)
    _write_json(out / "compile_report.json", report)
    sys.stdout.write(_dump_json(report))
    return EXIT_OK


def _verify_one(path_name: str, formula: Formula, config: PipelineConfig) -> dict:
    report = verify_counting_identity(
        formula,
        tolerance=config.tolerance,
        qubit_cap=config.qubit_cap,
        brute_force_cap=config.brute_force_cap,
    )
    return {"input": path_name, **report.to_json()}


def cmd_verify(args: argparse.Namespace, config: PipelineConfig) -> int:
    results = []
    for path in args.inputs:
        formula = _read_formula(path)
        results.append(_verify_one(path.name, formula, config))
    report = {"results": results, "all_match": all(r["match"] for r in results)}
    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)
    _write_json(out / "verify_report.json", report)
    sys.stdout.write(_dump_json(report))
    return EXIT_OK if report["all_match"] else EXIT_MISMATCH


def cmd_constants(args: argparse.Namespace, config: PipelineConfig) -> int:
    a = args.a if args.a is not None else bounds.SOLVER_EXPONENT_PER_LENGTH
    budget = args.budget if args.budget is not None else bounds.DEFAULT_BUDGET_BITS
    thetas = config.thetas
    report: dict = {"exponents": bounds.compose_exponent(a, thetas, budget).to_json()}
    if args.check_14x:
        report["check_14x"] = bounds.tcount_constant_check().to_json()
    if args.optimize:
        result = bounds.optimize_thetas(a, budget, reference=thetas)
        report["optimization"] = result.to_json()
    sys.stdout.write(_dump_json(report))
    return EXIT_OK


def cmd_pipeline(args: argparse.Namespace, config: PipelineConfig) -> int:
    out = config.output_dir
    sparsify_report = _run_sparsify(args.input, config, out)
    root = reduce(_read_formula(args.input))

    leaves = []
    for entry in sparsify_report["leaves"]:
        leaf_path = out / entry["file"]
        leaf = _read_formula(leaf_path)
        stem = leaf_path.stem
        compile_report, revc_text, qasm_text = _compile_report(
            entry["file"], leaf, config
        )
        (out / f"{stem}.revc").write_text(revc_text)
        (out / f"{stem}.qasm").write_text(qasm_text)
        verify_report = _verify_one(entry["file"], leaf, config)
        leaves.append(
            {
                "id": entry["id"],
                "file": entry["file"],
                "compile": compile_report,
                "verify": verify_report,
            }
        )

    root_satisfiable = count_satisfying(root, cap=config.brute_force_cap) > 0
    any_leaf_satisfiable = any(l["verify"]["satisfiable"] for l in leaves)
    all_match = all(l["verify"]["match"] for l in leaves)
    report = {
        "input": args.input.name,
        "config": config.to_json(),
        "sparsify": sparsify_report,
        "leaves": leaves,
        "root_satisfiable": root_satisfiable,
        "any_leaf_satisfiable": any_leaf_satisfiable,
        "equivalence_ok": root_satisfiable == any_leaf_satisfiable,
        "all_match": all_match,
    }
    _write_json(out / "pipeline_report.json", report)
    sys.stdout.write(_dump_json(report))
    if not all_match or not report["equivalence_ok"]:
        return EXIT_MISMATCH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sat2ct",
        description="3-SAT sparsification and compilation to Clifford+T circuits",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--theta1", type=float, help="(2,1)/(3,2)-sunflower size threshold")
    common.add_argument("--theta2", type=float, help="(3,1)-sunflower size threshold")
    common.add_argument("--qubit-cap", dest="qubit_cap", type=int)
    common.add_argument("--bf-cap", dest="bf_cap", type=int)
    common.add_argument("--node-budget", dest="node_budget", type=int)
    common.add_argument("--tol", type=float, help="amplitude match tolerance")
    common.add_argument("--out", type=Path, help="output directory")
    common.add_argument("--format", choices=["json"], default="json")
    common.add_argument("--config", type=Path, help="TOML config file (flags win)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sparsify", parents=[common], help="split into leaf instances")
    p.add_argument("input", type=Path)
    p.set_defaults(func=cmd_sparsify)

    p = sub.add_parser("compile", parents=[common], help="compile to circuits")
    p.add_argument("input", type=Path)
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("verify", parents=[common], help="check the amplitude identity")
    p.add_argument("inputs", type=Path, nargs="+")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("constants", parents=[common], help="exponent arithmetic")
    p.add_argument("--a", type=float, help="per-length solver exponent")
    p.add_argument("--budget", type=float, help="bits-per-variable budget")
    p.add_argument("--check-14x", dest="check_14x", action="store_true")
    p.add_argument("--optimize", action="store_true")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser(
        "pipeline", parents=[common], help="sparsify, then compile and verify each leaf"
    )
    p.add_argument("input", type=Path)
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _resolve_config(args)
    except (ValueError, OSError, tomllib.TOMLDecodeError) as exc:
        print(f"sat2ct: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, config)
    except DimacsError as exc:
        print(f"sat2ct: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RecursionBudgetExceeded as exc:
        print(f"sat2ct: {exc}", file=sys.stderr)
        return EXIT_NODE_BUDGET
    except (QubitBudgetExceeded, TooManyVariables, Overflow) as exc:
        print(f"sat2ct: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (Sat2ctError, OSError) as exc:
        print(f"sat2ct: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
