"""Command-line front end: coset listings, single-code analysis, subset
search, and the built-in reproduction suite.

Exit codes: 0 ok, 2 validation, 3 resource cap, 4 reproduction mismatch,
5 internal consistency (formula and oracle disagree).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from math import gcd
from typing import Any, Iterable, Sequence

from .constacode import (
    DEFAULT_ENUM_CAP,
    Code,
    build_code,
    build_context,
    code_spec,
    parse_lambda,
)
from .cyclotomic import CosetSystem, coset_of, cosets_in_S, mult_order
from .errors import ConsistencyError, ResourceError, ValidationError
from .gf import DEFAULT_FIELD_CAP, FieldTable, build_field
from .orbitcount import (
    DEFAULT_ORACLE_CAP,
    component_params,
    delsarte_upper_bound,
    subset_terms,
    tightness_report,
)
from .sweep import bounded_subsets

SCHEMA = 1

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RESOURCE = 3
EXIT_MISMATCH = 4
EXIT_CONSISTENCY = 5


class ReproductionMismatch(Exception):
    pass


# ----------------------------------------------------------------------
# Requests
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class AnalysisRequest:
    p: int
    e: int
    n: int
    lambda_spec: int | str
    components: tuple[int, ...] | str = "all"
    with_weights: bool = False
    with_oracle: bool = False
    enum_cap: int = DEFAULT_ENUM_CAP
    oracle_cap: int = DEFAULT_ORACLE_CAP
    field_cap: int = DEFAULT_FIELD_CAP

    def echo(self) -> dict[str, Any]:
        d = asdict(self)
        d["components"] = self.components if isinstance(self.components, str) else list(self.components)
        return d

    @classmethod
    def from_echo(cls, d: dict[str, Any]) -> "AnalysisRequest":
        d = dict(d)
        comps = d.get("components", "all")
        d["components"] = comps if isinstance(comps, str) else tuple(comps)
        return cls(**d)


def parse_components(text: str) -> tuple[int, ...] | str:
    text = text.strip()
    if text.lower() == "all":
        return "all"
    try:
        reps = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ValidationError(f"component list must be comma-separated integers or 'all', got {text!r}") from None
    if not reps:
        raise ValidationError("empty component list")
    return reps


def lambda_arg(text: str) -> int | str:
    try:
        return int(text)
    except ValueError:
        return text


@dataclass
class Plan:
    """Everything cheap that validation resolves before real work starts."""

    request: AnalysisRequest
    q_field: FieldTable
    lam: int
    system: CosetSystem
    reps: list[int] = field(default_factory=list)
    k: int = 0


def _field_for(p: int, e: int, cap: int) -> FieldTable:
    if p < 2 or e < 1:
        raise ValidationError(f"need a prime p and e >= 1, got p={p}, e={e}")
    return build_field(p, e, cap)


def validate_system(p: int, e: int, n: int, lambda_spec: int | str, field_cap: int = DEFAULT_FIELD_CAP):
    F = _field_for(p, e, field_cap)
    lam = parse_lambda(F, lambda_spec)
    if lam == 0:
        raise ValidationError("lambda must be nonzero")
    if n < 1:
        raise ValidationError(f"length n must be >= 1, got {n}")
    return F, lam, cosets_in_S(F.order, n, F.element_order(lam))


def validate(req: AnalysisRequest) -> Plan:
    """All input checks and cap estimates; raises before any table over F_{q^m}."""
    for name in ("enum_cap", "oracle_cap", "field_cap"):
        if getattr(req, name) < 1:
            raise ValidationError(f"{name} must be positive")
    F, lam, system = validate_system(req.p, req.e, req.n, req.lambda_spec, req.field_cap)
    if req.components == "all":
        cosets = list(system.cosets)
    else:
        cosets = sorted({coset_of(r, system) for r in req.components}, key=lambda c: c.alpha)
    plan = Plan(req, F, lam, system, [c.rep for c in cosets], sum(c.size for c in cosets))
    check_caps(plan)
    return plan


def check_caps(plan: Plan) -> None:
    req, q = plan.request, plan.q_field.order
    size = q**plan.k
    if req.with_oracle and size > req.oracle_cap:
        raise ResourceError(f"code has {size} codewords, above oracle cap {req.oracle_cap}")
    if req.with_weights and size > req.enum_cap:
        raise ResourceError(f"code has {size} codewords, above enumeration cap {req.enum_cap}")
    tn = plan.system.tn
    full = q ** mult_order(q, tn)
    if full > req.field_cap:
        g = gcd(tn, *plan.reps)
        reduced = q ** mult_order(q, tn // g)
        if reduced > req.field_cap:
            raise ResourceError(
                f"selected roots need a field of {reduced} elements, above field cap {req.field_cap}"
            )


# ----------------------------------------------------------------------
# Serialization
# ----------------------------------------------------------------------

def element_json(F: FieldTable, a: int) -> dict[str, Any]:
    return {"log": None if a == 0 else F.log(a), "poly": F.to_str(a)}


def cosets_json(system: CosetSystem) -> list[dict[str, Any]]:
    return [
        {"alpha": c.alpha, "rep": c.rep, "size": c.size, "members": list(c.members)}
        for c in system.cosets
    ]


def _code_from_plan(plan: Plan) -> Code:
    req = plan.request
    ctx = build_context(
        req.p, req.e, req.n, req.lambda_spec, components=plan.reps, field_cap=req.field_cap
    )
    return build_code(code_spec(ctx, plan.reps))


def analyze(req: AnalysisRequest, plan: Plan | None = None) -> dict[str, Any]:
    """Full pipeline for one code; returns the JSON-ready report document."""
    t0 = time.perf_counter()
    plan = plan or validate(req)
    code = _code_from_plan(plan)
    ctx = code.context
    F = code.field
    q, t, n = ctx.q, ctx.t, ctx.n

    enumerate_words = req.with_weights or req.with_oracle
    if enumerate_words:
        rep = tightness_report(
            code, with_oracle=req.with_oracle, oracle_cap=req.oracle_cap, enum_cap=req.enum_cap
        )
        terms = rep.terms
        n_rho, n_rho_m, n_rho_m_shared = rep.n_rho, rep.n_rho_m, rep.n_rho_m_shared
    else:
        rep = None
        terms = subset_terms(component_params(code), q, t, n)
        n_rho = sum(x.n_rho for x in terms)
        n_rho_m = sum(x.n_rho_m for x in terms)
        n_rho_m_shared = sum(x.n_rho_m_shared for x in terms)

    doc: dict[str, Any] = {
        "schema": SCHEMA,
        "request": req.echo(),
        "context": {
            "q": q,
            "t": t,
            "m": ctx.m,
            "tn": ctx.tn,
            "lambda": element_json(F, ctx.lam),
            "field_modulus": list(F.modulus),
            "ext_degree": ctx.ext_degree,
            "ext_modulus": list(ctx.ext_field.modulus),
            "reduced": not ctx.is_full,
            "stride": ctx.stride,
            "zeta_exponent": ctx.zeta_u,
        },
        "cosets": cosets_json(ctx.system),
        "code": {
            "n": n,
            "k": code.dimension,
            "size": code.size,
            "components": [{"alpha": c.alpha, "rep": c.rep, "size": c.size} for c in code.spec.cosets],
            "generator": [element_json(F, a) for a in code.generator],
            "check": [element_json(F, a) for a in code.check],
        },
        "bounds": {
            "n_rho": n_rho,
            "n_rho_m": n_rho_m,
            "n_rho_m_shared": n_rho_m_shared,
            "delta_all_one": all(x.delta == 1 for x in terms),
            "divisible_all": all(x.divisible for x in terms),
            "terms": [
                {
                    "alphas": list(x.alphas),
                    "reps": list(x.reps),
                    "n_rho": x.n_rho,
                    "n_rho_m": x.n_rho_m,
                    "n_rho_m_shared": x.n_rho_m_shared,
                    "delta": str(x.delta),
                    "divisible": x.divisible,
                }
                for x in terms
            ],
        },
        "weights": None,
        "tightness": None,
        "oracle": None,
        "delsarte": None,
        "timing_ms": None,
    }
    if rep is not None:
        doc["weights"] = {
            "distribution": {str(w): c for w, c in rep.weights.as_dict().items()},
            "distinct_nonzero": rep.distinct_weights,
            "enumerator": str(rep.weights),
        }
        doc["tightness"] = {"tight_rho": rep.tight_rho, "tight_rho_m": rep.tight_rho_m}
        doc["delsarte"] = {
            "size": code.size,
            "bound": delsarte_upper_bound(n, q, rep.distinct_weights),
            "ok": rep.delsarte_ok,
        }
        if rep.oracle_rho is not None:
            doc["oracle"] = {
                "rho": rep.oracle_rho,
                "rho_m": rep.oracle_rho_m,
                "matches_n_rho": rep.oracle_rho == n_rho,
                "matches_n_rho_m": rep.oracle_rho_m == n_rho_m,
                "matches_n_rho_m_shared": rep.oracle_rho_m == n_rho_m_shared,
                "weight_classes_single_orbit_rho": rep.classes_single_orbit_rho,
                "weight_classes_single_orbit_rho_m": rep.classes_single_orbit_rho_m,
            }
            doc["tightness"]["tight_rho_oracle"] = rep.tight_rho_true
            doc["tightness"]["tight_rho_m_oracle"] = rep.tight_rho_m_true
    doc["timing_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    return doc


def oracle_disagreement(doc: dict[str, Any]) -> str | None:
    o = doc.get("oracle")
    if not o:
        return None
    bad = [k for k in ("matches_n_rho", "matches_n_rho_m") if not o[k]]
    if not bad:
        return None
    b = doc["bounds"]
    return (
        f"oracle rho={o['rho']} rho_m={o['rho_m']} vs formula "
        f"n_rho={b['n_rho']} n_rho_m={b['n_rho_m']}"
    )


def strip_timing(doc: dict[str, Any]) -> dict[str, Any]:
    return {k: v for k, v in doc.items() if k != "timing_ms"}


def _dump(doc: Any, path: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=False)
    if path is None or path == "-":
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


# ----------------------------------------------------------------------
# Reproduction suite
# ----------------------------------------------------------------------

EXAMPLES: dict[str, dict[str, Any]] = {
    "q5-n18-tight": {
        "request": dict(p=5, e=1, n=18, lambda_spec=4, components=(3,)),
        "n_rho": 2,
        "n_rho_m": 2,
        "terms_rho": [2],
        "distribution": {0: 1, 12: 12, 18: 12},
        "tight_rho": True,
        "tight_rho_m": True,
    },
    "q3-n65-tight": {
        "request": dict(p=3, e=1, n=65, lambda_spec=2, components=(65, 5)),
        "n_rho": 4,
        "n_rho_m": 4,
        "terms_rho": [1, 1, 2],
        "distribution": {0: 1, 35: 26, 45: 26, 50: 26, 65: 2},
        "tight_rho": True,
        "tight_rho_m": True,
    },
    "q7-n32-one-weight": {
        "request": dict(p=7, e=1, n=32, lambda_spec=2, components=(10,)),
        "n_rho": 1,
        "n_rho_m": 1,
        "terms_rho": [1],
        "distribution": {0: 1, 28: 48},
        "tight_rho": True,
        "tight_rho_m": True,
    },
    "q3-n91-tight": {
        "request": dict(p=3, e=1, n=91, lambda_spec=2, components=(91, 7)),
        "n_rho": 4,
        "n_rho_m": 4,
        "terms_rho": [1, 1, 2],
        "distribution": {0: 1, 49: 26, 63: 26, 70: 26, 91: 2},
        "tight_rho": True,
        "tight_rho_m": True,
    },
}


def reproduce(examples: dict[str, dict[str, Any]] | None = None) -> list[dict[str, Any]]:
    """Run each built-in example and diff it against its expected values."""
    examples = EXAMPLES if examples is None else examples
    rows = []
    for name, exp in examples.items():
        t0 = time.perf_counter()
        req = AnalysisRequest(**exp["request"], with_weights=True, with_oracle=True)
        doc = analyze(req)
        got = {
            "n_rho": doc["bounds"]["n_rho"],
            "n_rho_m": doc["bounds"]["n_rho_m"],
            "terms_rho": sorted(x["n_rho"] for x in doc["bounds"]["terms"]),
            "distribution": {int(w): c for w, c in doc["weights"]["distribution"].items()},
            "tight_rho": doc["tightness"]["tight_rho"],
            "tight_rho_m": doc["tightness"]["tight_rho_m"],
            "oracle_rho": doc["oracle"]["rho"],
            "oracle_rho_m": doc["oracle"]["rho_m"],
        }
        want = {k: v for k, v in exp.items() if k != "request"}
        want["terms_rho"] = sorted(want["terms_rho"])
        want.setdefault("oracle_rho", want["n_rho"])
        want.setdefault("oracle_rho_m", want["n_rho_m"])
        diff = {k: {"expected": want[k], "got": got[k]} for k in want if got[k] != want[k]}
        rows.append(
            {
                "example": name,
                "pass": not diff,
                "diff": diff,
                "seconds": round(time.perf_counter() - t0, 4),
            }
        )
    return rows


# ----------------------------------------------------------------------
# Search
# ----------------------------------------------------------------------

SEARCH_COLUMNS = (
    "reps", "alphas", "k", "n_rho", "n_rho_m", "n_rho_m_shared",
    "distinct_weights", "tight_rho", "tight_rho_m", "oracle_rho", "oracle_rho_m",
)


def search(
    p: int,
    e: int,
    n: int,
    lambda_spec: int | str,
    *,
    max_components: int | None = 1,
    with_oracle: bool = False,
    enum_cap: int = DEFAULT_ENUM_CAP,
    oracle_cap: int = DEFAULT_ORACLE_CAP,
    field_cap: int = DEFAULT_FIELD_CAP,
):
    """Yield one report per component subset whose code fits under the caps."""
    _, _, system = validate_system(p, e, n, lambda_spec, field_cap)
    if max_components is not None and max_components < 1:
        raise ValidationError("max-components must be >= 1")
    budget = min(enum_cap, oracle_cap) if with_oracle else enum_cap
    for subset in bounded_subsets(system, budget, max_components):
        req = AnalysisRequest(
            p, e, n, lambda_spec,
            components=tuple(c.rep for c in subset),
            with_weights=True,
            with_oracle=with_oracle,
            enum_cap=enum_cap,
            oracle_cap=oracle_cap,
            field_cap=field_cap,
        )
        try:
            plan = validate(req)
        except ResourceError:
            continue  # needs a field beyond the cap
        yield analyze(req, plan)


def search_row(doc: dict[str, Any]) -> list[Any]:
    comps = doc["code"]["components"]
    oracle = doc["oracle"] or {}
    return [
        " ".join(str(c["rep"]) for c in comps),
        " ".join(str(c["alpha"]) for c in comps),
        doc["code"]["k"],
        doc["bounds"]["n_rho"],
        doc["bounds"]["n_rho_m"],
        doc["bounds"]["n_rho_m_shared"],
        doc["weights"]["distinct_nonzero"],
        doc["tightness"]["tight_rho"],
        doc["tightness"]["tight_rho_m"],
        oracle.get("rho", ""),
        oracle.get("rho_m", ""),
    ]


# ----------------------------------------------------------------------
# argparse
# ----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        fail("validation", message)


def fail(kind: str, message: str, code: int | None = None):
    codes = {"validation": EXIT_VALIDATION, "resource": EXIT_RESOURCE,
             "mismatch": EXIT_MISMATCH, "consistency": EXIT_CONSISTENCY}
    code = codes[kind] if code is None else code
    line = json.dumps({"error": kind, "exit": code, "message": " ".join(str(message).split())})
    print(line, file=sys.stderr)
    raise SystemExit(code)


def _add_instance(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--p", type=int, required=True, help="field characteristic")
    sp.add_argument("--e", type=int, default=1, help="q = p^e")
    sp.add_argument("--n", type=int, required=True, help="code length")
    sp.add_argument("--lambda", dest="lam", type=lambda_arg, required=True,
                    help="integer (prime field) or g^a")


def _add_caps(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP)
    sp.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
    sp.add_argument("--field-cap", type=int, default=DEFAULT_FIELD_CAP)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="constaorbit", description=__doc__.split("\n\n")[0].replace("\n", " "))
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("cosets", help="list q-cyclotomic cosets in S")
    _add_instance(sp)
    sp.add_argument("--json", metavar="PATH")
    sp.add_argument("--field-cap", type=int, default=DEFAULT_FIELD_CAP)

    sp = sub.add_parser("analyze", help="orbit bounds, weights and oracle for one code")
    sp.add_argument("--request", metavar="PATH", help="re-run the request echoed in a report")
    sp.add_argument("--p", type=int)
    sp.add_argument("--e", type=int, default=1)
    sp.add_argument("--n", type=int)
    sp.add_argument("--lambda", dest="lam", type=lambda_arg)
    sp.add_argument("--cosets", default="all", help="comma-separated reps or 'all'")
    sp.add_argument("--weights", action="store_true", help="enumerate the weight distribution")
    sp.add_argument("--oracle", action="store_true", help="exhaustive orbit counts")
    _add_caps(sp)
    sp.add_argument("--json", metavar="PATH", help="write the report here instead of stdout")
    sp.add_argument("--csv", metavar="PATH", help="weight distribution as CSV")

    sp = sub.add_parser("search", help="analyze every component subset under the caps")
    _add_instance(sp)
    sp.add_argument("--max-components", type=int, default=1)
    sp.add_argument("--oracle", action="store_true")
    _add_caps(sp)
    sp.add_argument("--json", metavar="PATH", help="write reports as a JSON list")
    sp.add_argument("--csv", metavar="PATH", help="one summary row per subset")

    sp = sub.add_parser("reproduce", help="check the four built-in worked examples")
    sp.add_argument("--json", metavar="PATH")
    return ap


def _request_from_args(args) -> AnalysisRequest:
    if args.request:
        try:
            with open(args.request) as fh:
                doc = json.load(fh)
            return AnalysisRequest.from_echo(doc["request"] if "request" in doc else doc)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise ValidationError(f"cannot read request from {args.request}: {exc}") from None
    missing = [f"--{k}" for k, v in (("p", args.p), ("n", args.n), ("lambda", args.lam)) if v is None]
    if missing:
        raise ValidationError(f"missing {' '.join(missing)}")
    return AnalysisRequest(
        args.p, args.e, args.n, args.lam,
        components=parse_components(args.cosets),
        with_weights=args.weights,
        with_oracle=args.oracle,
        enum_cap=args.enum_cap,
        oracle_cap=args.oracle_cap,
        field_cap=args.field_cap,
    )


def cmd_cosets(args) -> int:
    F, lam, system = validate_system(args.p, args.e, args.n, args.lam, args.field_cap)
    if args.json:
        _dump({"schema": SCHEMA, "q": F.order, "n": args.n, "t": system.t, "tn": system.tn,
               "cosets": cosets_json(system)}, args.json)
        return EXIT_OK
    print(f"q={F.order} n={args.n} t={system.t} tn={system.tn} cosets={len(system)}")
    for c in system.cosets:
        print(f"alpha={c.alpha} rep={c.rep} size={c.size} members={{{','.join(map(str, c.members))}}}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    req = _request_from_args(args)
    plan = validate(req)
    doc = analyze(req, plan)
    _dump(doc, args.json)
    if args.csv and doc["weights"] is not None:
        _write_csv(args.csv, ("weight", "count"),
                   ((int(w), c) for w, c in doc["weights"]["distribution"].items()))
    bad = oracle_disagreement(doc)
    if bad:
        raise ConsistencyError(f"BUG formula/oracle disagreement: {bad}")
    return EXIT_OK


def cmd_search(args) -> int:
    docs = search(
        args.p, args.e, args.n, args.lam,
        max_components=args.max_components,
        with_oracle=args.oracle,
        enum_cap=args.enum_cap,
        oracle_cap=args.oracle_cap,
        field_cap=args.field_cap,
    )
    collected = []
    for doc in docs:
        if args.json or args.csv:
            collected.append(doc)
        if not args.json:
            print(json.dumps(doc, separators=(",", ":")))
    if args.json:
        _dump(collected, args.json)
    if args.csv:
        _write_csv(args.csv, SEARCH_COLUMNS, (search_row(d) for d in collected))
    return EXIT_OK


def cmd_reproduce(args) -> int:
    rows = reproduce()
    for r in rows:
        status = "PASS" if r["pass"] else "FAIL"
        print(f"{status} {r['example']} ({r['seconds']:.3f}s)")
        for k, d in r["diff"].items():
            print(f"    {k}: expected {d['expected']} got {d['got']}")
    passed = sum(r["pass"] for r in rows)
    print(f"{passed}/{len(rows)} PASS")
    if args.json:
        _dump({"schema": SCHEMA, "results": rows}, args.json)
    if passed != len(rows):
        raise ReproductionMismatch(f"{len(rows) - passed} example(s) differ from expected values")
    return EXIT_OK


COMMANDS = {"cosets": cmd_cosets, "analyze": cmd_analyze, "search": cmd_search, "reproduce": cmd_reproduce}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ValidationError as exc:
        fail("validation", exc)
    except ResourceError as exc:
        fail("resource", exc)
    except ReproductionMismatch as exc:
        fail("mismatch", exc)
    except ConsistencyError as exc:
        fail("consistency", exc)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
