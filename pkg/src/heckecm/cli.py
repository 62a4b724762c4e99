"""Command-line front end.

Exit codes: 0 ok, 1 computational error, 2 verification or oracle mismatch,
64 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .eisenstein import EisensteinError, SquarefreeD, canonical_associate, find_primes
from .hecke import formula_l1, identity_checks, symbol_checks
from .numerics import default_precision, numerics
from .oracle import METHODS, OracleError, oracle_l1
from .valuation import certificate
from .weierstrass import OmegaConsistencyError, PrecisionError, lattice_context, special_values

EXIT_OK, EXIT_ERROR, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2, 64
ORACLE_TOLERANCE = {"closed-form": 1e-35, "curve-q": 1e-8, "afe": 1e-8}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    precision: int
    primes: str
    subset: int | None
    oracle: str | None
    json_path: str | None
    workers: int

    def prime_list(self) -> SquarefreeD:
        try:
            return SquarefreeD.parse(self.primes)
        except EisensteinError as exc:
            raise UsageError(str(exc)) from exc


def _mask(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid subset mask {text!r}") from None


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _emit(payload: dict, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _table(rows, headers) -> str:
    widths = [max(len(str(h)), *(len(str(r[i])) for r in rows)) if rows else len(str(h))
              for i, h in enumerate(headers)]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(headers, widths))]
    lines += ["  ".join(str(c).ljust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands


def cmd_find_primes(args) -> int:
    if args.norm_bound > 10**7:
        raise UsageError("norm bound must be at most 10^7")
    primes = find_primes(args.norm_bound, args.flag)
    rows = []
    for p in primes:
        conj = p.conjugate()
        partner = next((q for q in primes if canonical_associate(q) == canonical_associate(conj)), None)
        rows.append({"prime": str(p), "norm": p.norm(),
                     "conjugate": str(partner) if partner is not None else None})
    print(_table([(r["prime"], r["norm"], r["conjugate"] or "-") for r in rows],
                 ("prime", "norm", "conjugate")))
    _emit({"schema": 1, "norm_bound": args.norm_bound, "flag": args.flag, "primes": rows}, args.json)
    return EXIT_OK


def cmd_l1(config: RunConfig) -> int:
    D = config.prime_list()
    T = D.full() if config.subset is None else config.subset
    if config.subset is not None and not 0 <= config.subset < (1 << D.n):
        raise UsageError(f"subset mask {config.subset:#b} out of range for {D.n} primes")
    report = formula_l1(D, T, config.precision, workers=config.workers)
    code = EXIT_OK
    if config.oracle:
        result = oracle_l1(D, report.T, config.precision, config.oracle)
        report.oracle_method = result.method
        report.oracle_value = result.L_S
        report.abs_diff = abs(result.L_S - report.L_S_formula)
        if report.abs_diff > ORACLE_TOLERANCE[result.method]:
            code = EXIT_MISMATCH
    num = numerics(config.precision)
    rows = [("D", str(D.D)), ("D_T", str(report.T.D_T)), ("terms", report.term_count),
            ("sum2", report.sum2), ("L_S (formula)", num.mp.nstr(report.L_S_formula, 30)),
            ("L (Euler-adjusted)", num.mp.nstr(report.L_adjusted, 30))]
    if config.oracle:
        rows += [("oracle", report.oracle_method), ("L_S (oracle)", num.mp.nstr(report.oracle_value, 30)),
                 ("|diff|", num.mp.nstr(report.abs_diff, 5))]
    print(_table(rows, ("quantity", "value")))
    _emit(report.to_json(), config.json_path)
    if code == EXIT_MISMATCH:
        print("oracle mismatch", file=sys.stderr)
    return code


def _verify_special_values(config: RunConfig) -> tuple[list[dict], bool]:
    ctx = lattice_context(config.precision)
    tol = numerics(config.precision).eps(10)
    rows = []
    for r in special_values(ctx):
        ok = r["error"] <= tol
        rows.append({"name": r["name"], "passed": bool(ok), "error": ctx.num.mp.nstr(r["error"], 3)})
    return rows, all(r["passed"] for r in rows)


def _checks_to_rows(checks, num):
    return [c.to_json(num) for c in checks]


def cmd_verify(suite: str, config: RunConfig) -> int:
    num = numerics(config.precision)
    if suite == "special-values":
        rows, ok = _verify_special_values(config)
    else:
        D = config.prime_list()
        if D.n == 0:
            raise UsageError(f"verify {suite} needs --primes")
        if suite == "identities":
            checks = identity_checks(D, config.subset, config.precision)
        else:
            checks = symbol_checks(D)
        rows = _checks_to_rows(checks, num)
        ok = all(r["passed"] for r in rows)
    passed = sum(r["passed"] for r in rows)
    print(_table([(r["name"], "pass" if r["passed"] else "FAIL") for r in rows], ("check", "result")))
    print(f"{passed}/{len(rows)} pass")
    _emit({"schema": 1, "suite": suite, "precision": config.precision, "passed": passed,
           "total": len(rows), "checks": rows}, config.json_path)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_valuation(config: RunConfig) -> int:
    D = config.prime_list()
    if D.n == 0:
        raise UsageError(str(_n0_message()))
    cert = certificate(D)
    print(_table([(s.id, s.status + (" (conditional)" if s.conditional and s.status != "ASSUMED" else ""),
                   s.claim) for s in cert.steps], ("step", "status", "claim")))
    print(f"bound: v2(L/omega) >= {cert.bound}")
    _emit(cert.to_json(), config.json_path)
    return EXIT_OK


def _n0_message():
    try:
        certificate(SquarefreeD(()))
    except ValueError as exc:
        return exc


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="heckecm", description="L-values of CM elliptic curves y^2 = x^3 + D^3.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, primes=True):
        p.add_argument("--precision", type=int, default=None, help="decimal digits (default $HECKECM_PRECISION or 50)")
        if primes:
            p.add_argument("--primes", default="", help='comma separated, e.g. "13+12t,1-12t"')
            p.add_argument("--subset", type=_mask, default=None, help="bitmask of T, e.g. 0b11")
        p.add_argument("--json", default=None, help="write a JSON report here")
        p.add_argument("--workers", type=_positive, default=1)

    p = sub.add_parser("find-primes", help="primes congruent to 1 mod 12 (or 4 sqrt(-3))")
    p.add_argument("--norm-bound", type=int, required=True)
    p.add_argument("--flag", choices=("12", "4sqrt-3"), default="12")
    p.add_argument("--json", default=None)

    p = sub.add_parser("l1", help="evaluate the closed formula, optionally against an oracle")
    common(p)
    p.add_argument("--oracle", choices=METHODS, default=None)

    p = sub.add_parser("verify", help="run an invariant suite")
    p.add_argument("suite", choices=("special-values", "identities", "symbols"))
    common(p)

    p = sub.add_parser("valuation", help="2-adic certificate")
    common(p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "find-primes":
            return cmd_find_primes(args)
        precision = args.precision if args.precision is not None else default_precision()
        if precision < 20:
            raise UsageError("precision must be at least 20")
        config = RunConfig(precision, args.primes, args.subset, getattr(args, "oracle", None),
                           args.json, args.workers)
        if args.command == "l1":
            return cmd_l1(config)
        if args.command == "verify":
            return cmd_verify(args.suite, config)
        return cmd_valuation(config)
    except UsageError as exc:
        print(f"heckecm: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PrecisionError, OmegaConsistencyError, OracleError, ArithmeticError, ValueError) as exc:
        print(f"heckecm: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
