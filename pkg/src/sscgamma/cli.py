"""Command-line front end.

Exit codes: 0 success (or suite passed), 1 a verification suite found a
counterexample, 2 invalid configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .chargrp import build_quotient
from .ff import FieldError, solve_trace_zero
from .lf import RAMIFIED, UNRAMIFIED, enumerate_chars, make_local_field
from .ssc import (central_char_trivial_on_F, gamma_condition_tame, gamma_table_rows,
                  is_distinguished, is_sigma_self_dual, make_triple)
from .verify import (suite_appendix, suite_equivalence, suite_odd_n,
                     suite_pontryagin_and_counts, suite_self_dual)

HALF = Fraction(1, 2)
TSV_COLUMNS = ("lambda_id", "residue_index", "value_at_uniformizer", "c_lambda",
               "unit_root_exponent", "alpha", "beta", "value_at_half")


class ConfigError(ValueError):
    pass


def _session(args):
    if args.shells < 1 or args.level < 1:
        raise ConfigError("shell window and unit level must be positive")
    if args.level > args.precision:
        raise ConfigError("unit level cannot exceed the precision")
    try:
        return make_local_field(args.p, args.f, args.kind, args.epsilon, args.precision,
                                args.zeta_order)
    except (FieldError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def _zeta_exponent(text: str, Z: int) -> int:
    """Parse 'k/N' (zeta = exp(2 pi i k / N)) or a bare exponent of the session root."""
    if "/" in text:
        k, n = (int(part) for part in text.split("/", 1))
        if n <= 0 or Z % n:
            raise ConfigError(f"root order {n} must divide the session bound {Z}")
        return k * (Z // n) % Z
    return int(text) % Z


def _emit(obj, fmt: str, rows=None) -> None:
    if fmt == "tsv" and rows is not None:
        header, body = rows
        print("\t".join(header))
        for row in body:
            print("\t".join("" if c is None else str(c) for c in row))
    else:
        print(json.dumps(obj, indent=2, sort_keys=True))


def cmd_field_info(args) -> int:
    lf = _session(args)
    info = {
        "p": lf.p,
        "q_F": lf.qF,
        "q_E": lf.qE,
        "kind": lf.kind,
        "k_F": {"modulus_ascending": list(lf.kF.modulus), "generator_code": lf.kF.generator},
        "k_E": {"modulus_ascending": list(lf.kE.modulus), "generator_code": lf.kE.generator},
        "root_order_m": lf.m,
        "zeta_order_Z": lf.zeta_order,
        "precision": lf.precision,
        "psi_twist_dlog": lf.psi.s,
        "psi_trivial_on_F": lf.psi.trivial_on_F,
    }
    if lf.unramified:
        info["trace_zero_element_dlog"] = solve_trace_zero(lf.kE).log
    else:
        info["epsilon_dlog"] = lf.epsilon
    _emit(info, "json")
    return 0


def cmd_group_structure(args) -> int:
    lf = _session(args)
    G = build_quotient(lf)
    out = G.describe()
    out["pairing_exponents"] = G.pairing_table()
    out["root_order_m"] = lf.m
    out["dual"] = [chi.to_json() for chi in G.dual]
    _emit(out, "json")
    return 0


def cmd_list_chars(args) -> int:
    lf = _session(args)
    chars = enumerate_chars(lf, args.depth, args.trivial_on_F)
    rows = (("lambda_id", "residue_index", "value_at_uniformizer", "c_lambda"),
            [(ch.label(), ch.residue_index, ch.pi_exp, ch.c) for ch in chars])
    _emit({"root_order_m": lf.m, "count": len(chars),
           "characters": [{"id": ch.label(), **ch.to_json()} for ch in chars]},
          args.format, rows)
    return 0


def _triple(args, lf):
    try:
        return make_triple(lf, args.n, args.v, args.phi, _zeta_exponent(args.zeta, lf.zeta_order))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _table(t, lf, depth: int, trivial_on_F: bool):
    if depth not in (0, 1):
        raise ConfigError("depth must be 0 or 1")
    if depth == 1 and t.n != 2:
        raise ConfigError("depth-one gamma factors are available for n = 2 only")
    out = []
    for lam, g in gamma_table_rows(t, lf, depth, trivial_on_F):
        out.append({
            "lambda_id": lam.label(),
            "residue_index": lam.residue_index,
            "value_at_uniformizer": lam.pi_exp,
            "c_lambda": lam.c,
            "unit_root_exponent": g.u_exp,
            "alpha": str(g.alpha),
            "beta": g.beta,
            "value_at_half": g.value_str(HALF),
            "is_one_at_half": g.is_one_at(HALF),
        })
    return out


def cmd_gamma_table(args) -> int:
    lf = _session(args)
    t = _triple(args, lf)
    table = _table(t, lf, args.depth, not args.all_chars)
    rows = (TSV_COLUMNS, [tuple(r[c] for c in TSV_COLUMNS) for r in table])
    _emit({"triple": t.to_json(), "root_order_m": lf.m, "rows": table}, args.format, rows)
    return 0


def cmd_check_distinction(args) -> int:
    lf = _session(args)
    t = _triple(args, lf)
    verdict = {
        "triple": t.to_json(),
        "kind": lf.kind,
        "q_F": lf.qF,
        "root_order_m": lf.m,
        "central_char_trivial_on_F": central_char_trivial_on_F(t, lf),
        "sigma_self_dual": is_sigma_self_dual(t, lf),
        "gamma_condition_tame": gamma_condition_tame(t, lf),
        "distinguished": is_distinguished(t, lf),
        "gamma_table": _table(t, lf, 0, True),
    }
    _emit(verdict, "json")
    return 0


def _run_suite(name: str, args):
    qs = tuple(args.q) if args.q else None
    if name == "equivalence":
        return suite_equivalence(qs or (3, 5, 7), zeta_order=args.zeta_order)
    if name == "odd_n":
        return suite_odd_n(qs or (3, 5), zeta_order=args.zeta_order)
    if name == "self_dual":
        return suite_self_dual(qs or (3, 5), zeta_order=args.zeta_order)
    if name == "pontryagin":
        return suite_pontryagin_and_counts(qs or (3, 5))
    if name == "appendix":
        q = qs[0] if qs else 3
        return suite_appendix(q, args.precision, seed=args.seed, shells=args.shells,
                              level=args.level)
    raise ConfigError(f"unknown suite {name!r}")


def cmd_verify(args) -> int:
    _session(args)
    for q in args.q or ():
        _check_prime(q)
    report = _run_suite(args.suite, args)
    _emit(report.to_json(), "json")
    return 0 if report.passed else 1


def cmd_verify_appendix(args) -> int:
    args.suite = "appendix"
    return cmd_verify(args)


def _check_prime(q: int) -> None:
    try:
        make_local_field(q)
    except (FieldError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=3, help="residue characteristic (odd prime)")
    common.add_argument("--f", type=int, default=1, help="degree of k_F over F_p")
    common.add_argument("--kind", choices=(UNRAMIFIED, RAMIFIED), default=UNRAMIFIED)
    common.add_argument("--epsilon", type=int, default=0,
                        help="discrete log of eps in u^2 = eps t (ramified only)")
    common.add_argument("--precision", type=int, default=6)
    common.add_argument("--shells", type=int, default=6, help="valuation window V of the integrals")
    common.add_argument("--level", type=int, default=3, help="unit level M of the transversals")
    common.add_argument("--zeta-order", type=int, default=24, help="bound Z on the order of zeta")
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized spot checks")

    parser = argparse.ArgumentParser(prog="sscgamma", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("field-info", parents=[common]).set_defaults(fn=cmd_field_info)
    sub.add_parser("group-structure", parents=[common]).set_defaults(fn=cmd_group_structure)

    lc = sub.add_parser("list-chars", parents=[common])
    lc.add_argument("--depth", type=int, choices=(0, 1), default=0)
    lc.add_argument("--trivial-on-F", dest="trivial_on_F", action="store_true")
    lc.set_defaults(fn=cmd_list_chars)

    for name, fn in (("gamma-table", cmd_gamma_table), ("check-distinction", cmd_check_distinction)):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--n", type=int, default=2)
        sp.add_argument("--v", type=int, required=True, help="discrete log of v in k_E^x")
        sp.add_argument("--phi", type=int, default=0, help="residue character index")
        sp.add_argument("--zeta", default="0", help="k/N for zeta = e^(2 pi i k/N), or an exponent mod Z")
        if name == "gamma-table":
            sp.add_argument("--depth", type=int, default=0)
            sp.add_argument("--all-chars", action="store_true",
                            help="include characters that are not trivial on F^x")
        sp.set_defaults(fn=fn)

    vf = sub.add_parser("verify", parents=[common])
    vf.add_argument("--suite", required=True,
                    choices=("equivalence", "odd_n", "appendix", "pontryagin", "self_dual"))
    vf.add_argument("--q", type=int, nargs="*", help="residue field sizes (default: the suite's list)")
    vf.set_defaults(fn=cmd_verify)

    va = sub.add_parser("verify-appendix", parents=[common])
    va.add_argument("--q", type=int, nargs="*", default=[3])
    va.set_defaults(fn=cmd_verify_appendix)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"sscgamma: configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
