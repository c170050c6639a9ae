"""``vknot``: compute invariants, run verification suites, dump family data.

Exit codes: 0 success, 1 verification failure or closed-form mismatch,
2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import families
from .gauss import GaussCodeError, parse_long
from .laurent import ZERO
from .invariants import full_report, render_latex, render_text, report_document
from .surface import build_carter, genus, pairing_tables
from .verify import DEFAULT_TRIALS, SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FORMATS = ("json", "text", "latex")


@dataclass
class RunConfig:
    subcommand: str
    codes: list[str] = field(default_factory=list)
    seed: int = 0
    trials: int | None = None
    fmt: str = "text"
    suite: str | None = None
    family: str | None = None
    n: int | None = None


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def read_codes(path: str) -> list[str]:
    """One code per line; blank lines and ``#`` comments are skipped."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    codes = []
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if line:
            codes.append(line)
    return codes


# invariants -------------------------------------------------------------------

def _closure_text(doc: dict) -> list[str]:
    rows = [f"closure {k} = {v}" for k, v in doc["closure"].items()]
    rows += [f"check {k} = {str(v).lower()}" for k, v in doc["derivative_checks"].items()]
    return rows


def render_invariants(code: str, fmt: str, line: int | None = None) -> tuple[str, dict]:
    try:
        D = parse_long(code)
    except GaussCodeError as exc:
        where = f"line {line}: " if line is not None else ""
        raise UsageError(f"{where}{exc}") from exc
    doc = report_document(D)
    doc["genus"] = genus(build_carter(D))
    if fmt == "json":
        return "", doc
    rep = full_report(D)
    if fmt == "latex":
        return render_latex(rep), doc
    head = [f"code = {doc['code'] or '(empty)'}", f"genus = {doc['genus']}"]
    return "\n".join(head + [render_text(rep)] + _closure_text(doc)), doc


def cmd_invariants(cfg: RunConfig, out) -> int:
    docs, texts = [], []
    for k, code in enumerate(cfg.codes):
        text, doc = render_invariants(code, cfg.fmt, line=k + 1 if len(cfg.codes) > 1 else None)
        docs.append(doc)
        texts.append(text)
    if cfg.fmt == "json":
        out.write(_dump(docs[0] if len(docs) == 1 else docs) + "\n")
    else:
        out.write("\n\n".join(texts) + "\n")
    return EXIT_OK


# verify -----------------------------------------------------------------------

def cmd_verify(cfg: RunConfig, out) -> int:
    res = run_suite(cfg.suite, cfg.trials, cfg.seed)
    doc = res.to_dict()
    if cfg.fmt == "json":
        out.write(_dump(doc) + "\n")
    else:
        status = "PASS" if res.passed else "FAIL"
        out.write(f"{res.suite}: {status} ({res.trials} trials, seed {res.seed}, "
                  f"{res.checked} checks)\n")
        for key, val in res.info.items():
            out.write(f"{key}: {json.dumps(val, sort_keys=True)}\n")
        if not res.passed:
            out.write("certificate:\n" + _dump(res.failures[0]) + "\n")
    return EXIT_OK if res.passed else EXIT_FAIL


# family -----------------------------------------------------------------------

def family_document(name: str, n: int) -> dict:
    D = families.family(name, n)
    rep = full_report(D)
    polys = rep.polynomials()
    expected = families.closed_forms(name, n)
    mismatches = {}
    for slot, p in polys.items():
        if slot.startswith("t"):
            continue
        want = expected.get(slot, ZERO)
        if p != want:
            mismatches[slot] = {"expected": want.to_text(), "actual": p.to_text()}
    T = pairing_tables(D)
    gold = families.gamma_tables(n)
    order = [lab - 1 for lab in T.labels]
    for key in ("A", "B", "C"):
        M = gold[key][order][:, order]
        if not (M == getattr(T, key)).all():
            mismatches[f"table {key}"] = {"expected": M.tolist(), "actual": getattr(T, key).tolist()}
    if not (gold["v"][order] == T.v).all():
        mismatches["table v"] = {"expected": gold["v"][order].tolist(), "actual": T.v.tolist()}
    return {
        "schema": "vknot.family/1",
        "family": name,
        "n": n,
        "code": D.to_code(),
        "genus": genus(build_carter(D)),
        "tables_tsv": T.to_tsv(),
        "polynomials": {k: p.to_text() for k, p in polys.items()},
        "mismatches": mismatches,
    }


def cmd_family(cfg: RunConfig, out) -> int:
    if cfg.n is None or cfg.n < 2:
        raise UsageError(f"family index must be >= 2, got {cfg.n}")
    doc = family_document(cfg.family, cfg.n)
    if cfg.fmt == "json":
        out.write(_dump(doc) + "\n")
    elif cfg.fmt == "latex":
        out.write(render_latex(full_report(families.family(cfg.family, cfg.n))) + "\n")
    else:
        out.write(f"{cfg.family}({cfg.n}) = {doc['code']}\ngenus = {doc['genus']}\n\n")
        out.write(doc["tables_tsv"] + "\n")
        out.write("\n".join(f"{k} = {v}" for k, v in doc["polynomials"].items()) + "\n")
        if doc["mismatches"]:
            out.write("MISMATCH with closed forms:\n" + _dump(doc["mismatches"]) + "\n")
        else:
            out.write("closed forms: all match\n")
    return EXIT_FAIL if doc["mismatches"] else EXIT_OK


# argument handling ------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_format(p):
    p.add_argument("--format", choices=FORMATS, default="text", dest="fmt")
    p.add_argument("--latex", action="store_true", help="shorthand for --format latex")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vknot", description="Writhe and intersection polynomials "
                     "of long virtual knots.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p = sub.add_parser("invariants", help="invariants of one or more Gauss codes")
    p.add_argument("code", nargs="?", help="Gauss code such as 'O1+ O2+ U1+ U2+'")
    p.add_argument("--file", help="file with one Gauss code per line")
    _add_format(p)

    p = sub.add_parser("verify", help="run a randomized verification suite")
    p.add_argument("suite", choices=list(SUITES))
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    _add_format(p)

    p = sub.add_parser("family", help="the K(n) and K'(n) families")
    p.add_argument("family", choices=["K", "Kprime"])
    p.add_argument("n", type=int)
    _add_format(p)
    return parser


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    fmt = "latex" if ns.latex else ns.fmt
    cfg = RunConfig(subcommand=ns.subcommand, fmt=fmt)
    if ns.subcommand == "invariants":
        if ns.file is not None and ns.code is not None:
            raise UsageError("give either a code or --file, not both")
        if ns.file is not None:
            cfg.codes = read_codes(ns.file)
        elif ns.code is not None:
            cfg.codes = [ns.code]
        else:
            raise UsageError("missing Gauss code (or --file)")
        if not cfg.codes:
            raise UsageError("no Gauss codes found")
    elif ns.subcommand == "verify":
        if ns.trials is not None and ns.trials < 0:
            raise UsageError("--trials must be non-negative")
        cfg.suite, cfg.seed = ns.suite, ns.seed
        cfg.trials = DEFAULT_TRIALS[ns.suite] if ns.trials is None else ns.trials
    else:
        cfg.family, cfg.n = ns.family, ns.n
    return cfg


COMMANDS = {"invariants": cmd_invariants, "verify": cmd_verify, "family": cmd_family}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
        return COMMANDS[cfg.subcommand](cfg, out)
    except UsageError as exc:
        err.write(f"vknot: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
