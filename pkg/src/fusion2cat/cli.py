"""Command-line front end.

Usage::

    fusion2cat simples --config cat.json
    fusion2cat fuse    --config cat.json --left @1 --right '{"subgroup": [[1]]}' --oracle
    fusion2cat dual    --config cat.json --object @3 --json
    fusion2cat table   --config cat.json
    fusion2cat verify  --config cat.json

The config is a JSON document::

    {"group": [5], "braiding": [["1/5"]], "limits": {"enumeration": 4096, "oracle": 4096}}

Exit status: 0 success, 1 invalid input, 2 resource limit, 3 verification
failure or oracle disagreement, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .abelian import DEFAULT_ENUMERATION_LIMIT, AbelianGroup
from .errors import (
    InternalInvariantError,
    InvalidInputError,
    ResourceLimitError,
)
from .forms import AlternatingForm, Bicharacter, parse_rational
from .fusion import (
    BraidedPointedCategory,
    SimpleObject,
    dual,
    enumerate_simples,
    fuse,
    fusion_table,
    make_simple,
    verify_ring,
)
from .oracle import ORACLE_LIMIT, oracle_fuse

EXIT_OK, EXIT_INPUT, EXIT_LIMIT, EXIT_VERIFY, EXIT_INTERNAL = range(5)


class Config:
    def __init__(self, category: BraidedPointedCategory, enumeration_limit: int, oracle_limit: int):
        self.category = category
        self.enumeration_limit = enumeration_limit
        self.oracle_limit = oracle_limit
        self._catalog = None

    @property
    def catalog(self) -> list[SimpleObject]:
        if self._catalog is None:
            self._catalog = enumerate_simples(self.category, self.enumeration_limit)
        return self._catalog


def parse_config(doc) -> Config:
    """Build a :class:`Config` from a decoded JSON document."""
    if not isinstance(doc, dict):
        raise InvalidInputError("config must be a JSON object")
    unknown = set(doc) - {"group", "braiding", "limits", "associator"}
    if unknown:
        raise InvalidInputError(f"unknown config keys: {sorted(unknown)}")
    assoc = doc.get("associator", "trivial")
    if assoc not in ("trivial", None):
        raise InvalidInputError("associator: only the trivial associator is supported")
    factors = doc.get("group")
    if not isinstance(factors, list) or not all(type(n) is int for n in factors):
        raise InvalidInputError("group: expected a list of integer cyclic orders")
    try:
        A = AbelianGroup(tuple(factors))
    except InvalidInputError as exc:
        raise InvalidInputError(f"group: {exc}") from None
    matrix = doc.get("braiding")
    if matrix is None:
        beta = Bicharacter.zero(A)
    else:
        try:
            beta = Bicharacter.from_matrix(A, _rational_matrix(matrix, "braiding", A.rank))
        except InvalidInputError as exc:
            msg = str(exc)
            raise InvalidInputError(msg if msg.startswith("braiding") else f"braiding: {msg}") from None
    limits = doc.get("limits") or {}
    if not isinstance(limits, dict) or set(limits) - {"enumeration", "oracle"}:
        raise InvalidInputError("limits: expected an object with keys 'enumeration' and/or 'oracle'")
    for key, value in limits.items():
        if type(value) is not int or value < 1:
            raise InvalidInputError(f"limits.{key}: expected a positive integer")
    return Config(
        BraidedPointedCategory(A, beta),
        limits.get("enumeration", DEFAULT_ENUMERATION_LIMIT),
        limits.get("oracle", ORACLE_LIMIT),
    )


def _rational_matrix(matrix, where: str, size: int) -> list[list[Fraction]]:
    if not isinstance(matrix, list) or len(matrix) != size:
        raise InvalidInputError(f"{where}: expected a {size}x{size} matrix")
    out = []
    for i, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != size:
            raise InvalidInputError(f"{where}[{i}]: expected a row of length {size}")
        vals = []
        for j, entry in enumerate(row):
            try:
                vals.append(parse_rational(entry))
            except InvalidInputError as exc:
                raise InvalidInputError(f"{where}[{i}][{j}]: {exc}") from None
        out.append(vals)
    return out


def parse_simple(text: str, cfg: Config, where: str) -> SimpleObject:
    """``@k`` picks catalog entry ``k``; anything else is an inline JSON simple spec."""
    text = text.strip()
    if text.startswith("@"):
        try:
            k = int(text[1:])
        except ValueError:
            raise InvalidInputError(f"{where}: bad catalog index {text!r}") from None
        if not 0 <= k < len(cfg.catalog):
            raise InvalidInputError(f"{where}: catalog index {k} out of range 0..{len(cfg.catalog) - 1}")
        return cfg.catalog[k]
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{where}: not valid JSON ({exc})") from None
    if not isinstance(spec, dict) or "subgroup" not in spec or set(spec) - {"subgroup", "form"}:
        raise InvalidInputError(f"{where}: expected {{'subgroup': [...], 'form': [...]}}")
    A = cfg.category.group
    gens = spec["subgroup"]
    if not isinstance(gens, list) or not all(isinstance(g, list) for g in gens):
        raise InvalidInputError(f"{where}.subgroup: expected a list of coordinate vectors")
    try:
        X = make_simple(A, gens)
        if spec.get("form") is not None:
            form = _rational_matrix(spec["form"], f"{where}.form", X.subgroup.abstract.rank)
            X = SimpleObject(X.subgroup, AlternatingForm.from_matrix(X.subgroup.abstract, form))
    except InvalidInputError as exc:
        raise InvalidInputError(f"{where}: {exc}") from None
    return X


# --- structured output -------------------------------------------------------


def _q(num: int, den: int) -> str:
    return str(Fraction(num, den) % 1)


def form_data(form: Bicharacter) -> list[list[str]]:
    return [[_q(a, form.den) for a in row] for row in form.numerators]


def simple_data(X: SimpleObject, cfg: Config | None = None) -> dict:
    data = {
        "invariant_factors": list(X.subgroup.inv_factors),
        "generators": [list(g) for g in X.subgroup.basis_embed],
        "form": form_data(X.form),
    }
    if cfg is not None and cfg._catalog is not None:
        try:
            data["index"] = cfg.catalog.index(X)
        except ValueError:
            pass
    return data


def category_data(cfg: Config) -> dict:
    C = cfg.category
    return {"group": list(C.group.factors), "braiding": form_data(C.braiding)}


def run_command(args, cfg: Config) -> tuple[dict, int]:
    C = cfg.category
    data = {"command": args.command, **category_data(cfg)}
    status = EXIT_OK
    if args.command == "simples":
        data["simples"] = [simple_data(X) | {"index": i} for i, X in enumerate(cfg.catalog)]
    elif args.command == "fuse":
        X = parse_simple(args.left, cfg, "--left")
        Y = parse_simple(args.right, cfg, "--right")
        r = fuse(X, Y, C)
        data.update(
            left=simple_data(X, cfg),
            right=simple_data(Y, cfg),
            multiplicity=r.multiplicity,
            result=simple_data(r.simple, cfg),
        )
        if args.oracle:
            o = oracle_fuse(X, Y, C, cfg.oracle_limit)
            agrees = o == r
            data["oracle"] = {
                "multiplicity": o.multiplicity,
                "result": simple_data(o.simple, cfg),
                "agrees": agrees,
            }
            if not agrees:
                status = EXIT_VERIFY
    elif args.command == "dual":
        X = parse_simple(args.object, cfg, "--object")
        data.update(object=simple_data(X, cfg), dual=simple_data(dual(X, C), cfg))
    elif args.command == "table":
        table = fusion_table(C, cfg.enumeration_limit)
        n = len(table)
        data["simples"] = [simple_data(X) | {"index": i} for i, X in enumerate(table.catalog)]
        data["entries"] = [
            [list(table.product(i, j)) for j in range(n)] for i in range(n)
        ]
    elif args.command == "verify":
        table = fusion_table(C, cfg.enumeration_limit)
        report = verify_ring(C, table)
        data.update(
            size=report.size,
            passed=report.passed,
            checks={k: {"passed": not v, "failures": v} for k, v in report.checks.items()},
            notes=report.notes,
        )
        if not report.passed:
            status = EXIT_VERIFY
    return data, status


# --- human-readable rendering (from the structured data only) ---------------


def _group_str(factors) -> str:
    return " x ".join(f"Z/{n}" for n in factors) or "trivial"


def _matrix_str(rows) -> str:
    return "[" + "; ".join(" ".join(r) for r in rows) + "]"


def _simple_str(s: dict) -> str:
    idx = f"#{s['index']} " if "index" in s else ""
    gens = ", ".join("(" + ",".join(map(str, g)) + ")" for g in s["generators"]) or "0"
    return f"{idx}E = {_group_str(s['invariant_factors'])} on <{gens}>, form {_matrix_str(s['form'])}"


def render(data: dict) -> str:
    lines = [
        f"group: {_group_str(data['group'])}",
        f"braiding: {_matrix_str(data['braiding'])}",
    ]
    cmd = data["command"]
    if cmd in ("simples", "table"):
        lines.append(f"simples: {len(data['simples'])}")
        lines += ["  " + _simple_str(s) for s in data["simples"]]
    if cmd == "table":
        lines.append("table: row i, column j shows m#k for #i [] #j = m #k")
        for i, row in enumerate(data["entries"]):
            lines.append(f"  #{i}: " + "  ".join(f"{m}#{k}" for m, k in row))
    elif cmd == "fuse":
        lines += [
            "left:  " + _simple_str(data["left"]),
            "right: " + _simple_str(data["right"]),
            f"multiplicity: {data['multiplicity']}",
            "result: " + _simple_str(data["result"]),
        ]
        if "oracle" in data:
            o = data["oracle"]
            lines += [
                f"oracle multiplicity: {o['multiplicity']}",
                "oracle result: " + _simple_str(o["result"]),
                f"oracle agrees: {'yes' if o['agrees'] else 'NO'}",
            ]
    elif cmd == "dual":
        lines += ["object: " + _simple_str(data["object"]), "dual:   " + _simple_str(data["dual"])]
    elif cmd == "verify":
        lines.append(f"simples: {data['size']}")
        for name, check in data["checks"].items():
            state = "pass" if check["passed"] else f"FAIL ({len(check['failures'])})"
            lines.append(f"  {name}: {state}")
            lines += [f"    {f}" for f in check["failures"]]
        lines += [f"note: {n}" for n in data["notes"]]
        lines.append(f"verdict: {'PASS' if data['passed'] else 'FAIL'}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fusion2cat",
        description="Fusion rules of module categories over pointed braided fusion categories.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="JSON config with 'group' and 'braiding'")
    common.add_argument("--json", action="store_true", help="emit structured JSON")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("simples", parents=[common], help="list the simple objects")
    p = sub.add_parser("fuse", parents=[common], help="fuse two simple objects")
    p.add_argument("--left", required=True, help="@index or inline JSON simple spec")
    p.add_argument("--right", required=True, help="@index or inline JSON simple spec")
    p.add_argument("--oracle", action="store_true", help="cross-check with the brute-force oracle")
    p = sub.add_parser("dual", parents=[common], help="dual of a simple object")
    p.add_argument("--object", required=True, help="@index or inline JSON simple spec")
    sub.add_parser("table", parents=[common], help="full fusion table")
    sub.add_parser("verify", parents=[common], help="verify the fusion ring axioms")
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        try:
            doc = json.loads(Path(args.config).read_text())
        except OSError as exc:
            raise InvalidInputError(f"cannot read config {args.config}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"config {args.config} is not valid JSON: {exc}") from None
        cfg = parse_config(doc)
        data, status = run_command(args, cfg)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=stderr)
        return EXIT_LIMIT
    except InternalInvariantError as exc:
        print(f"internal invariant violated: {exc}", file=stderr)
        return EXIT_INTERNAL
    if args.json:
        stdout.write(json.dumps(data, indent=2) + "\n")
    else:
        stdout.write(render(data))
    return status


if __name__ == "__main__":
    sys.exit(main())
