"""Command-line front end.

Every subcommand prints a JSON report (``"schema": 1``) and exits with
0 on pass, 1 on a verified failure, 2 on bad input and 3 when a
precondition is not met.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import exactla as la
from .algmod.algebra import Algebra, algebra_from_json
from .catcore import FaultyMatCat, MatCat
from .cells import (
    FLAVORS,
    action_matrices,
    adjunction_check,
    build_table,
    cell_structure,
    mult_vectors,
    table_coherence,
    verify_identities,
)
from .pyramid.core import check_axioms, pyramid_from_json
from .pyramid.strictness import run_strictness
from .rng import make_rng, resolve_seed
from .verify import PreconditionError, build_instance, report, verify_da_table

SCHEMA = 1
EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3
BUNDLED = {"kx2": "kx2.json", "a2": "a2.json"}


class InputError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):
        return _jsonable(x.item())
    return x


def render(rep: dict) -> str:
    return json.dumps(_jsonable(rep), indent=2, ensure_ascii=False) + "\n"


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror or e}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON in {path}: {e}") from e


def load_algebra(source: str) -> Algebra:
    """A bundled name (``kx2``, ``a2``) or a path; rejects algebras failing validation."""
    if source in BUNDLED:
        data = json.loads(resources.files("pyracat.data").joinpath(BUNDLED[source]).read_text())
    else:
        data = _read_json(source)
    try:
        A = algebra_from_json(data)
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as e:
        raise InputError(f"cannot parse algebra: {e!r}") from e
    val = A.validate()
    if not val.ok:
        raise InputError("invalid algebra: " + "; ".join(val.problems))
    if not A.is_adapted:
        raise InputError("algebra basis is not adapted to the idempotents")
    return A


def _seed(args) -> int:
    try:
        return resolve_seed(args.seed)
    except ValueError as e:
        raise InputError(f"PYRACAT_SEED is not an integer: {e}") from e


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, report)


def cmd_check(args) -> tuple[int, dict]:
    data = _read_json(args.pyramid)
    try:
        char = int(data.get("char", 0)) if isinstance(data, dict) else 0
        cat = MatCat(la.GF(char) if char else la.QQ)
        P = pyramid_from_json(data, cat)
    except (ValueError, KeyError, TypeError) as e:
        raise InputError(f"cannot parse pyramid: {e!r}") from e
    bad = check_axioms(P)
    rep = {
        "command": "check",
        "width": P.width,
        "cells": len(P.cells),
        "violations": [v.to_json() for v in bad],
        "ok": not bad,
    }
    return (EXIT_PASS if not bad else EXIT_FAIL), rep


def cmd_monoidal(args) -> tuple[int, dict]:
    seed = _seed(args)
    cat = FaultyMatCat() if args.inject_fault else MatCat()
    res = run_strictness(cat, make_rng(seed), args.trials)
    rep = {"command": "monoidal", "seed": seed, "fault_injected": bool(args.inject_fault)}
    rep.update(res.to_json())
    if args.trials == 0:
        rep["warning"] = "no trials requested; pass is vacuous"
        print("warning: no trials requested; pass is vacuous", file=sys.stderr)
    return (EXIT_PASS if res.ok else EXIT_FAIL), rep


def cmd_algebra(args) -> tuple[int, dict]:
    A = load_algebra(args.algebra)
    flavor = args.flavor
    table = build_table(A.cartan(), flavor)
    assoc = table.associativity_failures()
    coherence = table_coherence(table, A)
    cells = cell_structure(table)
    rep_mats = action_matrices(A, flavor)
    vectors = mult_vectors(A)
    ids = verify_identities(vectors)
    checks = {
        "unital": table.is_unital(),
        "associative": not assoc,
        "coherent_with_bimodules": not coherence,
        "identities": all(c.holds for c in ids),
    }
    out = {
        "command": "algebra",
        "algebra": A.name,
        "flavor": flavor,
        "cartan": A.cartan(),
        "dim": A.dim,
        "table": table.to_json(),
        "coherence_failures": coherence,
        "cells": cells.to_json(),
        "action_matrices": {
            "objects": rep_mats.names,
            "by_symbol": {str(s): m for s, m in sorted(rep_mats.matrices.items())},
        },
        "vectors": vectors.to_json(),
        "identities": [c.to_json() for c in ids],
    }
    if flavor == "DA":
        adj = adjunction_check(A)
        checks["F_transpose_is_G"] = adj.transpose_holds
        out["adjunction"] = adj.to_json()
    out["checks"] = checks
    out["ok"] = all(checks.values())
    return (EXIT_PASS if out["ok"] else EXIT_FAIL), out


def cmd_da_verify(args) -> tuple[int, dict]:
    A = load_algebra(args.algebra)
    if args.length < 0:
        raise InputError("length must be nonnegative")
    inst = build_instance(A, args.length)
    seed = _seed(args)
    results = verify_da_table(inst, seed)
    out = {"command": "da-verify", "seed": seed}
    out.update(report(inst, results))
    return (EXIT_PASS if out["ok"] else EXIT_FAIL), out


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pyracat", description="Verify pyramid and bimodule computations.")
    p.add_argument("--output", "-o", help="write the JSON report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="check the axioms of a pyramid over the matrix category")
    c.add_argument("pyramid", help="pyramid JSON file")
    c.set_defaults(run=cmd_check)

    m = sub.add_parser("monoidal", help="randomized strictness trials")
    m.add_argument("--trials", type=int, default=100)
    m.add_argument("--seed", type=lambda s: int(s, 0), default=None, help="defaults to $PYRACAT_SEED, then 0")
    m.add_argument("--inject-fault", action="store_true", help="use a matrix category with a composition bug")
    m.set_defaults(run=cmd_monoidal)

    a = sub.add_parser("algebra", help="composition table, cells and identities for an algebra")
    a.add_argument("--algebra", required=True, help="algebra JSON file or bundled name (kx2, a2)")
    a.add_argument("--flavor", choices=FLAVORS, default="DA")
    a.set_defaults(run=cmd_algebra)

    d = sub.add_parser("da-verify", help="homotopy-category check of the F, Q products")
    d.add_argument("--algebra", required=True, help="algebra JSON file or bundled name (kx2, a2)")
    d.add_argument("--length", type=int, default=1, help="maximal resolution length L")
    d.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    d.set_defaults(run=cmd_da_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "trials", 0) < 0:
        parser.error("--trials must be nonnegative")
    try:
        code, rep = args.run(args)
    except InputError as e:
        code, rep = EXIT_INPUT, {"command": args.command, "error": "input", "detail": str(e)}
    except PreconditionError as e:
        code, rep = EXIT_PRECONDITION, {"command": args.command, "error": "precondition", "detail": str(e)}
    text = render({"schema": SCHEMA, **rep, "exit_code": code})
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if code in (EXIT_INPUT, EXIT_PRECONDITION):
        print(f"pyracat: {rep['detail']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
