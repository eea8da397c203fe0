"""Batch front-end: fixture ingestion, built-in catalog, command dispatch.

Fixture schema (JSON):

    { "name": str, "chi": int, "sigma": int, "b_plus": int,
      "gram": [[int]],
      "basic_classes": [{"c1": [int], "sw": int, "moment": optional int}],
      "w": [int] optional, "lambda": [int] optional,
      "attributes": {"simple_type": bool, "abundant": bool, "effective": bool} }

Exit codes: 0 all checks pass, 1 a mathematical comparison failed,
2 input or usage error.  Output is deterministic: one line per check,
"CHECK <id> PASS|FAIL <details>", then a summary block.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from .combinatorics import (
    JacobiParams,
    jacobi_at_zero,
    pochhammer,
    triple_sum_lhs,
    vandermonde_check,
    ext_binomial,
)
from .errors import (
    FixtureError,
    HypothesisViolated,
    InvariantError,
    MonolinkError,
    ParseError,
    SchemaError,
)
from .lattice import CohomologyClass, IntersectionForm, square
from .manifold import FourManifoldData, SpincData, SpinuData, dims_asd, dim_sw
from .pairings import (
    PairingInput,
    blow_up_pairing_closed,
    blow_up_pairing_polarized,
    link_pairing_closed,
    link_pairing_raw,
    segre_coefficient,
    segre_coefficient_by_inversion,
    SegreInput,
)
from .witten import donaldson_moment, verify_witten

__all__ = ["Fixture", "load_fixture", "catalog_names", "load_catalog_fixture", "main"]

CATALOG = ("k3", "e3", "e5")


@dataclass(frozen=True)
class Fixture:
    """A validated manifold fixture plus its declared attributes."""

    manifold: FourManifoldData
    w: Optional[CohomologyClass]
    lam: Optional[CohomologyClass]
    attributes: dict[str, bool]


def _expect(doc: dict, key: str, kind, where: str):
    if key not in doc:
        raise SchemaError(f"{where}: missing field {key!r}")
    value = doc[key]
    if kind is int and isinstance(value, bool):
        raise SchemaError(f"{where}: field {key!r} must be an integer")
    if not isinstance(value, kind):
        raise SchemaError(f"{where}: field {key!r} has wrong type")
    return value


def _int_vector(raw, where: str) -> tuple[int, ...]:
    if not isinstance(raw, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in raw
    ):
        raise SchemaError(f"{where}: expected a list of integers")
    return tuple(raw)


def parse_fixture(doc: dict, where: str = "fixture") -> Fixture:
    """Validate a parsed JSON document into a Fixture."""
    if not isinstance(doc, dict):
        raise SchemaError(f"{where}: top level must be an object")
    name = _expect(doc, "name", str, where)
    chi = _expect(doc, "chi", int, where)
    sigma = _expect(doc, "sigma", int, where)
    b_plus = _expect(doc, "b_plus", int, where)
    gram_raw = _expect(doc, "gram", list, where)
    rows = [_int_vector(r, f"{where}.gram") for r in gram_raw]
    try:
        form = IntersectionForm(rows, b_plus=b_plus)
    except (ValueError, MonolinkError) as exc:
        raise InvariantError(f"{where}: {exc}") from exc
    if form.b_plus < 3 or form.b_plus % 2 == 0:
        raise InvariantError(f"{where}: b2+ must be odd >= 3, got {form.b_plus}")

    classes = []
    for idx, entry in enumerate(_expect(doc, "basic_classes", list, where)):
        tag = f"{where}.basic_classes[{idx}]"
        if not isinstance(entry, dict):
            raise SchemaError(f"{tag}: expected an object")
        c1 = _int_vector(_expect(entry, "c1", list, tag), tag)
        sw = _expect(entry, "sw", int, tag)
        moment = entry.get("moment")
        if moment is not None and (isinstance(moment, bool) or not isinstance(moment, int)):
            raise SchemaError(f"{tag}: moment must be an integer")
        if len(c1) != form.rank:
            raise InvariantError(f"{tag}: class length != form rank")
        classes.append(SpincData(CohomologyClass(c1), sw, moment))

    try:
        manifold = FourManifoldData(
            name=name, chi=chi, sigma=sigma, form=form, basic_classes=tuple(classes)
        )
    except (ValueError, MonolinkError) as exc:
        raise InvariantError(f"{where}: {exc}") from exc
    for s in manifold.basic_classes:
        try:
            dim_sw(manifold, s)
        except MonolinkError as exc:
            raise InvariantError(f"{where}: class {s.c1.coords}: {exc}") from exc

    def opt_class(key: str) -> Optional[CohomologyClass]:
        if key not in doc or doc[key] is None:
            return None
        vec = _int_vector(doc[key], f"{where}.{key}")
        if len(vec) != form.rank:
            raise InvariantError(f"{where}.{key}: class length != form rank")
        return CohomologyClass(vec)

    attributes = {}
    raw_attr = _expect(doc, "attributes", dict, where)
    for key in ("simple_type", "abundant", "effective"):
        if key not in raw_attr or not isinstance(raw_attr[key], bool):
            raise SchemaError(f"{where}.attributes: missing boolean {key!r}")
        attributes[key] = raw_attr[key]

    return Fixture(
        manifold=manifold,
        w=opt_class("w"),
        lam=opt_class("lambda"),
        attributes=attributes,
    )


def load_fixture(path: str | Path) -> Fixture:
    """Load and validate a fixture file."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {p}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{p}: invalid JSON: {exc}") from exc
    return parse_fixture(doc, where=str(p))


def catalog_names() -> tuple[str, ...]:
    return CATALOG


def load_catalog_fixture(name: str) -> Fixture:
    """Load a built-in fixture by short name (k3, e3, e5)."""
    key = name.lower().removesuffix(".json")
    if key not in CATALOG:
        raise ParseError(f"unknown catalog fixture {name!r}; have {CATALOG}")
    data = resources.files("monolink").joinpath(f"fixtures/{key}.json").read_text()
    return parse_fixture(json.loads(data), where=f"catalog:{key}")


def _resolve_fixture(ref: str) -> Fixture:
    if ref.lower().removesuffix(".json") in CATALOG and not Path(ref).exists():
        return load_catalog_fixture(ref)
    return load_fixture(ref)


# ---------------------------------------------------------------------------
# Command implementations
# ---------------------------------------------------------------------------


class _Checker:
    """Collects CHECK lines and the final exit status."""

    def __init__(self, out) -> None:
        self.out = out
        self.passed = 0
        self.failed = 0

    def record(self, check_id: str, ok: bool, detail: str = "") -> None:
        status = "PASS" if ok else "FAIL"
        suffix = f" {detail}" if detail else ""
        print(f"CHECK {check_id} {status}{suffix}", file=self.out)
        if ok:
            self.passed += 1
        else:
            self.failed += 1

    def summary(self, title: str) -> int:
        total = self.passed + self.failed
        verdict = "ALL-PASS" if self.failed == 0 else "FAILURES"
        print(
            f"SUMMARY {title} total={total} pass={self.passed} "
            f"fail={self.failed} verdict={verdict}",
            file=self.out,
        )
        return 0 if self.failed == 0 else 1


def _require_w_lambda(fx: Fixture) -> tuple[CohomologyClass, CohomologyClass]:
    if fx.w is None or fx.lam is None:
        raise HypothesisViolated(
            "fixture must supply both 'w' and 'lambda' for this command"
        )
    return fx.w, fx.lam


def cmd_verify(fx: Fixture, out) -> int:
    w, lam = _require_w_lambda(fx)
    report = verify_witten(fx.manifold, w, lam, attributes=fx.attributes)
    checker = _Checker(out)
    print(
        f"REPORT manifold={report.manifold} c={report.c} "
        f"w={list(report.w.coords)} lambda={list(report.lam.coords)}",
        file=out,
    )
    for check_id, ok, detail in report.check_lines():
        checker.record(check_id, ok, detail)
    return checker.summary(f"verify:{report.manifold}")


def cmd_moment(fx: Fixture, delta: int, m: int, out) -> int:
    w, lam = _require_w_lambda(fx)
    poly = donaldson_moment(fx.manifold, w, lam, delta, m)
    print(
        f"MOMENT manifold={fx.manifold.name} delta={delta} m={m} value={poly.render()}",
        file=out,
    )
    return 0


def _pairing_inputs(fx: Fixture, delta: int, m: int, h: CohomologyClass):
    """One level-one pairing input per basic class, eta fixed by the dims."""
    w, lam = _require_w_lambda(fx)
    X = fx.manifold
    for s in X.basic_classes:
        p1 = square(X.form, s.c1 - lam) - 4
        t_prime = SpinuData(c1=lam, p1=p1, w=w)
        d_a, n_a = dims_asd(X, t_prime)
        two_eta = d_a + 2 * n_a - 2 - 2 * delta
        if two_eta < 0 or two_eta % 2 != 0:
            raise HypothesisViolated(
                f"no admissible eta for class {s.c1.coords} at delta={delta}"
            )
        yield PairingInput(
            X=X, t_prime=t_prime, s=s, delta=delta, m=m, eta=two_eta // 2, h=h
        )


def cmd_pairing(
    fx: Fixture,
    delta: int,
    m: int,
    h: Optional[CohomologyClass],
    oracle: bool,
    blowup_k: Optional[int],
    out,
) -> int:
    X = fx.manifold
    if h is None:
        h = CohomologyClass.basis_vector(0, X.form.rank)
    checker = _Checker(out)
    for idx, inp in enumerate(_pairing_inputs(fx, delta, m, h)):
        closed = link_pairing_closed(inp)
        detail = f"value={closed.at_h} poly={closed.polynomial.render()}"
        if oracle:
            raw = link_pairing_raw(inp)
            ok = closed.polynomial == raw.polynomial and closed.at_h == raw.at_h
            checker.record(f"pairing.s{idx}.closed_vs_raw", ok, detail)
        else:
            checker.record(f"pairing.s{idx}.closed", True, detail)
        if blowup_k is not None:
            bc = blow_up_pairing_closed(inp, blowup_k)
            bp = blow_up_pairing_polarized(inp, blowup_k)
            ok = bc.polynomial == bp.polynomial
            if blowup_k % 2 == 1:
                ok = ok and bc.polynomial.is_zero() and bp.polynomial.is_zero()
            checker.record(
                f"pairing.s{idx}.blowup_k{blowup_k}",
                ok,
                f"value={bc.at_h}",
            )
    return checker.summary(f"pairing:{X.name}")


def cmd_fuzz_identities(
    out,
    a_range: tuple[int, int] = (-6, 10),
    mn_bound: int = 6,
    d_max: int = 8,
    poch_bound: int = 10,
) -> int:
    checker = _Checker(out)

    bad = 0
    count = 0
    for A in range(a_range[0], a_range[1] + 1):
        for M in range(-mn_bound, mn_bound + 1):
            for N in range(-mn_bound, mn_bound + 1):
                for d in range(d_max + 1):
                    rhs_base = jacobi_at_zero(
                        JacobiParams(3 - N - A - M, A + M - 4 - d, d)
                    ) * (2**d)
                    for v in range(4):
                        count += 1
                        if triple_sum_lhs(A, M, N, d, v) != rhs_base:
                            bad += 1
    checker.record(
        "identity.triple_sum", bad == 0, f"tuples={count} mismatches={bad}"
    )

    bad = sum(
        1
        for r in range(-poch_bound, poch_bound + 1)
        for ell in range(poch_bound + 1)
        if pochhammer(r, ell) != (-1) ** ell * pochhammer(1 - r - ell, ell)
    )
    checker.record("identity.pochhammer_reflection", bad == 0, f"mismatches={bad}")

    bad = 0
    for d in range(d_max + 1):
        for v in range(4):
            for i in range(d + 1):
                for j in range(d - i + 1):
                    lhs = ext_binomial(d + 3 - v - i - j, d - i - j)
                    rhs = (-1) ** (d - i - j) * ext_binomial(v - 4, d - i - j)
                    if lhs != rhs:
                        bad += 1
    checker.record("identity.binomial_reversal", bad == 0, f"mismatches={bad}")

    bad = sum(
        1
        for mm in range(-6, 7)
        for nn in range(-6, 7)
        for p in range(9)
        if not vandermonde_check(mm, nn, p)
    )
    checker.record("identity.vandermonde", bad == 0, f"mismatches={bad}")

    bad = 0
    for n1 in range(-5, 6):
        for n2 in range(-5, 6):
            for p in range(11):
                direct = segre_coefficient(SegreInput(n1, n2, p))
                if segre_coefficient_by_inversion(n1, n2, p) != direct:
                    bad += 1
    checker.record("identity.segre_inversion", bad == 0, f"mismatches={bad}")

    return checker.summary("fuzz-identities")


def cmd_catalog(out) -> int:
    for name in CATALOG:
        fx = load_catalog_fixture(name)
        X = fx.manifold
        print(
            f"FIXTURE {name} manifold={X.name} chi={X.chi} sigma={X.sigma} "
            f"b2={X.b2} b_plus={X.form.b_plus} basic_classes={len(X.basic_classes)}",
            file=out,
        )
    return 0


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _parse_class(text: str) -> CohomologyClass:
    try:
        return CohomologyClass(int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad class vector {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monolink",
        description="Exact calculator for low-degree Donaldson/Seiberg-Witten "
        "series identities and level-one link pairings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list built-in fixtures")

    p = sub.add_parser("verify", help="run the full series comparison")
    p.add_argument("fixture", help="fixture path or catalog name")

    p = sub.add_parser("moment", help="one Donaldson moment")
    p.add_argument("fixture")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("pairing", help="level-one link pairings")
    p.add_argument("fixture")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--h", type=_parse_class, default=None, help="comma-separated class")
    p.add_argument("--oracle", action="store_true", help="compare closed vs raw")
    p.add_argument("--blowup-k", type=int, default=None)

    p = sub.add_parser("fuzz-identities", help="combinatorial identity sweeps")
    p.add_argument("--a-min", type=int, default=-6)
    p.add_argument("--a-max", type=int, default=10)
    p.add_argument("--mn-bound", type=int, default=6)
    p.add_argument("--d-max", type=int, default=8)

    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "catalog":
            return cmd_catalog(out)
        if args.command == "verify":
            return cmd_verify(_resolve_fixture(args.fixture), out)
        if args.command == "moment":
            return cmd_moment(_resolve_fixture(args.fixture), args.delta, args.m, out)
        if args.command == "pairing":
            return cmd_pairing(
                _resolve_fixture(args.fixture),
                args.delta,
                args.m,
                args.h,
                args.oracle,
                args.blowup_k,
                out,
            )
        if args.command == "fuzz-identities":
            return cmd_fuzz_identities(
                out,
                a_range=(args.a_min, args.a_max),
                mn_bound=args.mn_bound,
                d_max=args.d_max,
            )
        parser.error(f"unknown command {args.command!r}")
    except FixtureError as exc:
        print(f"ERROR input: {exc}", file=out)
        return 2
    except MonolinkError as exc:
        print(f"ERROR {type(exc).__name__}: {exc}", file=out)
        return 2
    return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
