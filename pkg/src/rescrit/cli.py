"""Command-line workbench tying the catalog, reports, and ideal tools together.

Every data subcommand emits JSON on stdout (reports carry a schema_version
field); `catalog list`, `self-test`, and the sweep summary default to a
human-readable table over the same data.  Exit codes: 0 when every verdict
is acceptable (theorem-satisfied, vacuous, inapplicable, recorded), 1 on a
violation, 2 on budget exhaustion or usage errors.

Generator files for the `ideal` subcommands use a tiny text format: a
header line `vars: x, y`, then one polynomial per line (explicit `*`,
`^` or `**` powers, rational literals); `#` starts a comment line.

Sweep family files are JSON:

    {
      "arrangement": "pencil-4",            # catalog name, or an inline
                                            # arrangement JSON object
      "base": ["1", "1", "1", "-3"],        # optional, default all zero
      "lines": [{"direction": [...], "values": ["0", "1/2"]}, ...],
      "points": [["1", "-1", "0"], ...],    # coefficients over the lines
      "samples": [["2", "0", "-1", "-1"]]   # explicit weight vectors
    }

Weight vectors are collected from `samples`, from the grid over each
line's `values`, and from `points` (one coefficient per line); every
vector is base + sum of coefficient * direction.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from itertools import product as iter_product
from pathlib import Path

from .arrangement import (
    Arrangement,
    ArrangementError,
    cone,
    from_json_dict,
    to_json_dict,
)
from .catalog import entries as catalog_entries
from .catalog import get as catalog_get
from .catalog import self_test as catalog_self_test
from .critical import logarithmic_ideal_generators
from .groebner import (
    BudgetExceededError,
    groebner_basis,
    ideal_quotient,
    saturate,
)
from .logmod import free_certificate, log_complex_betti, minimal_derivation_generators
from .orlik_solomon import euler_characteristic_magnitude, poincare_coefficients
from .polyring import Ring, parse_polynomial
from .verify import SCHEMA_VERSION, aomoto_data, check_weights, sweep

ACCEPTABLE_VERDICTS = {"theorem-satisfied", "vacuous", "inapplicable", "recorded"}


def _exit_code(verdicts) -> int:
    """Map a collection of verdicts to the process exit code."""
    pool = list(verdicts)
    if any(v == "violated" for v in pool):
        return 1
    if any(v not in ACCEPTABLE_VERDICTS for v in pool):
        return 2
    return 0


def _emit(payload) -> None:
    print(json.dumps(payload, indent=2))


def _parse_weights(text: str, expected: int) -> tuple[Fraction, ...]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if len(parts) != expected:
        raise ValueError(
            f"expected {expected} weights, got {len(parts)} in {text!r}"
        )
    return tuple(Fraction(p) for p in parts)


def _parse_degrees(text: str) -> list[int]:
    """Accept '0..4', a single number, or a comma list."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        start, stop = int(lo), int(hi)
        if stop < start:
            raise ValueError(f"empty degree range {text!r}")
        return list(range(start, stop + 1))
    return [int(p) for p in text.split(",") if p.strip()]


def _load_arrangement(args) -> tuple[str, Arrangement]:
    """Resolve --name (catalog) or --arrangement (JSON file)."""
    if getattr(args, "name", None):
        entry = catalog_get(args.name)
        return entry.name, entry.arrangement
    path = Path(args.arrangement)
    payload = json.loads(path.read_text())
    return path.stem, from_json_dict(payload)


def _arrangement_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--name", help="catalog entry name")
    group.add_argument("--arrangement", help="arrangement JSON file")


def _str_weights(weights) -> list[str]:
    return [str(w) for w in weights]


# -- catalog -----------------------------------------------------------------------


def cmd_catalog(args) -> int:
    if args.action == "list":
        rows = []
        for e in catalog_entries():
            rows.append(
                {
                    "name": e.name,
                    "size": e.size,
                    "rank": e.arrangement.rank,
                    "central": e.arrangement.is_central,
                    "free": e.free,
                    "reduced_scope": e.reduced_scope,
                    "summary": e.summary,
                }
            )
        if args.json:
            _emit(rows)
            return 0
        for r in rows:
            free = {True: "free", False: "nonfree", None: "open"}[r["free"]]
            kind = "central" if r["central"] else "affine"
            print(
                f"{r['name']:<22} n={r['size']:<2} rank={r['rank']} "
                f"{kind:<7} {free:<8} {r['summary']}"
            )
        return 0
    entry = catalog_get(args.entry)
    payload = {
        "name": entry.name,
        "summary": entry.summary,
        "size": entry.size,
        "rank": entry.arrangement.rank,
        "central": entry.arrangement.is_central,
        "free": entry.free,
        "exponents": list(entry.exponents) if entry.exponents else None,
        "whitney": list(entry.whitney),
        "resonant_weights": [_str_weights(w) for w in entry.resonant_weights],
        "derivation_bound": entry.derivation_bound,
        "reduced_scope": entry.reduced_scope,
        "cited_notes": list(entry.cited_notes),
        "arrangement": to_json_dict(entry.arrangement),
    }
    _emit(payload)
    return 0


def cmd_info(args) -> int:
    name, A = _load_arrangement(args)
    irreducible = A.is_irreducible if A.is_central else None
    payload = {
        "arrangement": name,
        "size": A.size,
        "dimension": A.dimension,
        "rank": A.rank,
        "central": A.is_central,
        "essential": A.is_essential,
        "irreducible": irreducible,
        "poincare": list(poincare_coefficients(A)),
        "euler_characteristic_magnitude": euler_characteristic_magnitude(A),
        "forms": [str(f) for f in A.forms],
    }
    _emit(payload)
    return 0


def cmd_self_test(args) -> int:
    rows = catalog_self_test()
    failed = 0
    for name, check, ok, detail in rows:
        mark = "ok  " if ok else "FAIL"
        if not ok:
            failed += 1
        print(f"{mark} {name:<22} {check:<12} {detail}")
    print(f"{len(rows) - failed}/{len(rows)} checks passed")
    return 0 if failed == 0 else 1


# -- cohomology and derivations ----------------------------------------------------


def cmd_os_betti(args) -> int:
    name, A = _load_arrangement(args)
    lam = _parse_weights(args.weights, A.size)
    betti, least = aomoto_data(A, lam)
    _emit(
        {
            "schema_version": SCHEMA_VERSION,
            "arrangement": name,
            "weights": _str_weights(lam),
            "betti": list(betti),
            "least_p": least,
        }
    )
    return 0


def cmd_derivations(args) -> int:
    name, A = _load_arrangement(args)
    search = minimal_derivation_generators(A, bound=args.bound)
    payload = {
        "arrangement": name,
        "bound": search.bound,
        "degrees": [d.coefficient_degree for d in search.generators],
        "exhausted": search.exhausted,
        "generators": [
            {
                "degree": d.coefficient_degree,
                "components": [str(c) for c in d.components],
            }
            for d in search.generators
        ],
    }
    _emit(payload)
    return 0


def cmd_free_check(args) -> int:
    name, A = _load_arrangement(args)
    search = minimal_derivation_generators(A, bound=args.bound)
    cert = free_certificate(A, search)
    if cert is not None:
        payload = {
            "arrangement": name,
            "status": "free",
            "exponents": list(cert.exponents),
        }
    elif len(search.generators) > A.dimension:
        # found generators sit inside every minimal generating set, so
        # exceeding the ambient dimension already refutes freeness
        payload = {
            "arrangement": name,
            "status": "not-free",
            "generator_degrees": [d.coefficient_degree for d in search.generators],
            "reason": "more minimal generators than the ambient dimension",
        }
    elif search.exhausted and len(search.generators) == A.dimension:
        payload = {
            "arrangement": name,
            "status": "not-free",
            "generator_degrees": [d.coefficient_degree for d in search.generators],
            "reason": "determinant test fails on the complete generator set",
        }
    else:
        payload = {
            "arrangement": name,
            "status": "undetermined",
            "generator_degrees": [d.coefficient_degree for d in search.generators],
            "reason": f"generator search not exhausted at bound {search.bound}",
        }
    _emit(payload)
    return 0


def cmd_log_betti(args) -> int:
    name, A = _load_arrangement(args)
    if not A.is_central:
        raise ValueError("log-betti needs a central arrangement; cone the input first")
    lam = _parse_weights(args.weights, A.size)
    rows = [
        {"total_degree": d, "betti": list(log_complex_betti(A, lam, d))}
        for d in _parse_degrees(args.degrees)
    ]
    _emit(
        {
            "schema_version": SCHEMA_VERSION,
            "arrangement": name,
            "weights": _str_weights(lam),
            "degrees": rows,
        }
    )
    return 0


# -- critical ideals ---------------------------------------------------------------


def cmd_critical_ideal(args) -> int:
    name, A = _load_arrangement(args)
    if not A.is_central:
        raise ValueError(
            "critical-ideal needs a central arrangement; cone the input first"
        )
    if args.universal:
        gens = logarithmic_ideal_generators(A)
    else:
        if args.weights is None:
            raise ValueError("--weights is required unless --universal is set")
        lam = _parse_weights(args.weights, A.size)
        gens = logarithmic_ideal_generators(A, lam)
    ring = gens[0].ring if gens else A.ring
    _emit(
        {
            "arrangement": name,
            "universal": bool(args.universal),
            "weights": None if args.universal else _str_weights(lam),
            "variables": list(ring.variables),
            "generators": [str(g) for g in gens],
        }
    )
    return 0


def cmd_codim(args) -> int:
    name, A = _load_arrangement(args)
    lam = _parse_weights(args.weights, A.size)
    report = check_weights(A, lam, guaranteed=False, budget=args.budget)
    _emit(
        {
            "schema_version": SCHEMA_VERSION,
            "arrangement": name,
            "weights": _str_weights(lam),
            "critical_empty": report.critical_empty,
            "critical_codim": report.critical_codim,
            "saturated_empty": report.saturated_empty,
            "saturated_codim": report.saturated_codim,
            "notes": list(report.notes),
        }
    )
    return 0 if report.verdict != "incomplete" else 2


# -- theorem verification ----------------------------------------------------------


def _verify_one(
    name: str,
    A: Arrangement,
    lam,
    bound: int | None,
    recorded_only: bool,
    budget: int | None,
) -> dict:
    """VerificationReport payload for one (arrangement, weights) pair.

    Affine inputs are coned first, with the extra weight forced to make
    the total vanish; the theorem is then read off the cone.
    """
    started = time.time()
    coned = not A.is_central
    original = tuple(lam)
    if coned:
        A, lam = cone(A, lam)
    if not A.is_essential:
        raise ValueError(
            "the theorem harness needs an essential arrangement "
            "(rank equal to dimension)"
        )
    search = minimal_derivation_generators(A, bound=bound)
    cert = free_certificate(A, search)
    rank_le_3 = A.rank <= 3
    guaranteed = (cert is not None) or rank_le_3
    report = check_weights(
        A,
        lam,
        guaranteed=guaranteed,
        recorded_only=recorded_only,
        search=search,
        budget=budget,
    )
    payload = report.as_dict()
    payload.update(
        {
            "schema_version": SCHEMA_VERSION,
            "arrangement": name,
            "weights": _str_weights(original),
            "coned": coned,
            "applicability": {
                "free": cert is not None,
                "rank_le_3": rank_le_3,
                "p_le_2": (
                    None
                    if report.least_degree is None
                    else report.least_degree <= 2
                ),
            },
            "guaranteed": guaranteed,
            "elapsed_seconds": round(time.time() - started, 3),
        }
    )
    if coned:
        payload["coned_weights"] = _str_weights(lam)
    return payload


def cmd_verify(args) -> int:
    name, A = _load_arrangement(args)
    lam = _parse_weights(args.weights, A.size)
    bound = None
    recorded_only = False
    if args.name:
        entry = catalog_get(args.name)
        bound = entry.derivation_bound
        recorded_only = entry.reduced_scope
    payload = _verify_one(name, A, lam, bound, recorded_only, args.budget)
    _emit(payload)
    return _exit_code([payload["verdict"]])


# -- sweeps ------------------------------------------------------------------------


def _family_weights(spec: dict, size: int) -> list[tuple[Fraction, ...]]:
    """Expand a family file into concrete weight vectors, sorted."""

    def vector(values, label) -> tuple[Fraction, ...]:
        out = tuple(Fraction(str(v)) for v in values)
        if len(out) != size:
            raise ValueError(
                f"{label} has {len(out)} entries, arrangement needs {size}"
            )
        return out

    base = vector(spec.get("base", ["0"] * size), "base")
    lines = [
        vector(line["direction"], "line direction") for line in spec.get("lines", [])
    ]
    collected: list[tuple[Fraction, ...]] = []
    for sample in spec.get("samples", []):
        collected.append(vector(sample, "sample"))

    def combine(coefficients) -> tuple[Fraction, ...]:
        out = list(base)
        for c, direction in zip(coefficients, lines):
            for i, d in enumerate(direction):
                out[i] += c * d
        return tuple(out)

    value_axes = [
        [Fraction(str(v)) for v in line.get("values", [])]
        for line in spec.get("lines", [])
    ]
    if lines and all(value_axes):
        for point in iter_product(*value_axes):
            collected.append(combine(point))
    for point in spec.get("points", []):
        if len(point) != len(lines):
            raise ValueError(
                f"point {point} has {len(point)} coefficients for {len(lines)} lines"
            )
        collected.append(combine([Fraction(str(c)) for c in point]))
    if not collected:
        raise ValueError("family file produced no weight vectors")
    # reports are keyed and emitted in sample order, so fix that order here
    unique = sorted(set(collected))
    return unique


def _family_sweep(args) -> int:
    spec = json.loads(Path(args.family).read_text())
    source = spec.get("arrangement")
    if isinstance(source, str):
        entry = catalog_get(source)
        name, A = entry.name, entry.arrangement
        bound, recorded_only = entry.derivation_bound, entry.reduced_scope
    elif isinstance(source, dict):
        name, A = "family-arrangement", from_json_dict(source)
        bound, recorded_only = None, False
    else:
        raise ValueError("family file needs an 'arrangement' name or object")
    samples = _family_weights(spec, A.size)
    reports = [
        _verify_one(name, A, lam, bound, recorded_only, args.budget)
        for lam in samples
    ]
    payload = {
        "schema_version": SCHEMA_VERSION,
        "arrangement": name,
        "sample_count": len(reports),
        "reports": reports,
    }
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2))
    if args.json:
        _emit(payload)
    else:
        print(f"{'weights':<40} {'p':>4} {'codim':>6} verdict")
        for r in reports:
            least = r["least_degree"]
            codim = r["critical_codim"]
            print(
                f"{','.join(r['weights']):<40} "
                f"{'-' if least is None else least:>4} "
                f"{'-' if codim is None else codim:>6} {r['verdict']}"
            )
    return _exit_code(r["verdict"] for r in reports)


def cmd_sweep(args) -> int:
    if args.family:
        return _family_sweep(args)
    data = sweep(
        names=args.names or None,
        generic=args.generic,
        seed=args.seed,
        budget=args.budget,
    )
    if args.out:
        Path(args.out).write_text(json.dumps(data, indent=2))
    if args.json:
        _emit(data)
    else:
        for entry in data["entries"]:
            verdicts = [w["verdict"] for w in entry["weights"]]
            counts = {}
            for v in verdicts:
                counts[v] = counts.get(v, 0) + 1
            joined = ", ".join(f"{v} x{c}" for v, c in sorted(counts.items()))
            print(f"{entry['name']:<22} {joined}")
        print(f"seed={data['seed']} worst={data['worst']}")
    worst = data["worst"]
    if worst == "violated":
        return 1
    if worst == "incomplete":
        return 2
    return 0


# -- ideal utilities ---------------------------------------------------------------


def load_generator_file(path) -> tuple[Ring, list]:
    """Parse the documented generator-file grammar."""
    ring = None
    gens = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.lower().startswith("vars:"):
            if ring is not None:
                raise ValueError("duplicate 'vars:' header")
            names = [n.strip() for n in line[5:].split(",") if n.strip()]
            if not names:
                raise ValueError("'vars:' header names no variables")
            ring = Ring(tuple(names))
            continue
        if ring is None:
            raise ValueError("generator files start with a 'vars:' header line")
        gens.append(parse_polynomial(ring, line))
    if ring is None:
        raise ValueError(f"no 'vars:' header in {path}")
    if not gens:
        raise ValueError(f"no generators in {path}")
    return ring, gens


def cmd_ideal(args) -> int:
    ring, gens = load_generator_file(args.file)
    nonzero = [g for g in gens if not g.is_zero()]
    if args.action in ("dim", "count"):
        if not nonzero:
            if args.action == "dim":
                _emit({"trivial": False, "dimension": ring.nvars, "codimension": 0})
                return 0
            raise ValueError("the zero ideal is not zero-dimensional")
        gb = groebner_basis(nonzero, budget=args.budget)
        if args.action == "dim":
            payload = {
                "trivial": gb.is_trivial,
                "dimension": None if gb.is_trivial else gb.dimension(),
                "codimension": None if gb.is_trivial else gb.codimension(),
            }
            _emit(payload)
            return 0
        if gb.is_trivial:
            _emit({"count": 0})
            return 0
        if gb.dimension() > 0:
            raise ValueError(
                f"ideal is not zero-dimensional (dimension {gb.dimension()})"
            )
        _emit({"count": gb.standard_monomial_count()})
        return 0
    divisor = parse_polynomial(ring, args.by)
    if not nonzero:
        nonzero = [ring.zero()]
    if args.action == "quotient":
        out = ideal_quotient(nonzero, divisor, budget=args.budget)
    else:
        out = saturate(nonzero, divisor, budget=args.budget)
    live = [g for g in out if not g.is_zero()]
    if live:
        live = list(groebner_basis(live, budget=args.budget))
    _emit(
        {
            "variables": list(ring.variables),
            "by": str(divisor),
            "generators": [str(g) for g in live] or ["0"],
        }
    )
    return 0


# -- argument wiring ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rescrit",
        description=(
            "Hyperplane arrangement workbench: Orlik-Solomon cohomology, "
            "logarithmic derivations, critical ideals, and the resonance/"
            "critical-set theorem harness."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list or show the built-in arrangements")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("entry", nargs="?", help="entry name (for show)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("info", help="combinatorial profile of an arrangement")
    _arrangement_options(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("os-betti", help="Aomoto complex Betti numbers at weights")
    _arrangement_options(p)
    p.add_argument("--weights", required=True, help='e.g. "1,1,-2"')
    p.set_defaults(func=cmd_os_betti)

    p = sub.add_parser("derivations", help="minimal logarithmic derivation generators")
    _arrangement_options(p)
    p.add_argument("--bound", type=int, default=None, help="degree search cap")
    p.set_defaults(func=cmd_derivations)

    p = sub.add_parser("free-check", help="freeness certificate via the determinant test")
    _arrangement_options(p)
    p.add_argument("--bound", type=int, default=None)
    p.set_defaults(func=cmd_free_check)

    p = sub.add_parser("log-betti", help="log-form complex cohomology by total degree")
    _arrangement_options(p)
    p.add_argument("--weights", required=True)
    p.add_argument("--degrees", required=True, help="e.g. 0..4")
    p.set_defaults(func=cmd_log_betti)

    p = sub.add_parser("critical-ideal", help="pairing generators of the critical ideal")
    _arrangement_options(p)
    p.add_argument("--weights", help="omit with --universal")
    p.add_argument("--universal", action="store_true", help="weight-variable mode")
    p.set_defaults(func=cmd_critical_ideal)

    p = sub.add_parser("codim", help="codimension of the critical variety at weights")
    _arrangement_options(p)
    p.add_argument("--weights", required=True)
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=cmd_codim)

    p = sub.add_parser("verify", help="theorem check at one weight vector")
    _arrangement_options(p)
    p.add_argument("--weights", required=True)
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="catalog sweep, or a weight-family sweep")
    p.add_argument("--family", help="family JSON file")
    p.add_argument("--name", action="append", dest="names", help="catalog subset")
    p.add_argument("--generic", type=int, default=5, help="generic samples per entry")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--json", action="store_true", help="emit the full JSON report")
    p.add_argument("--out", help="also write the JSON report to a file")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("self-test", help="re-verify the catalog's frozen facts")
    p.set_defaults(func=cmd_self_test)

    p = sub.add_parser("ideal", help="Groebner utilities on generator files")
    p.add_argument("action", choices=["dim", "quotient", "saturate", "count"])
    p.add_argument("file", help="generator file (vars: header plus one poly per line)")
    p.add_argument("--by", help="divisor polynomial (quotient and saturate)")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=cmd_ideal)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "catalog" and args.action == "show" and not args.entry:
        parser.error("catalog show needs an entry name")
    if args.command == "ideal" and args.action in ("quotient", "saturate") and not args.by:
        parser.error(f"ideal {args.action} needs --by")
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return 2
    except KeyError as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return 2
    except (ArrangementError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
