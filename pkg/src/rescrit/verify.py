"""Verification harness: per-weight theorem checks and the catalog sweep.

The statement under test: whenever the weighted cohomology of the
arrangement's exterior-algebra complex first fails to vanish in degree
p, the closure of the weighted critical set has codimension at most p.
A report is produced for every (arrangement, weights) pair.

Verdicts are deliberately conservative.  "theorem-satisfied" and
"violated" are only issued when the inequality was actually decided;
"violated" additionally requires certified hypotheses (a determinant
certificate for freeness, or ambient rank at most 3), since outside
that class the statement is not asserted.  Weights with acyclic
cohomology yield "vacuous", undecided hypothesis classes yield
"inapplicable", and budget exhaustion yields "incomplete".  Entries
flagged reduced-scope (the nine-plane rank-4 example) always report
"recorded": their data is collected as evidence without a claim.

Generic weights are drawn from a seeded generator (environment
variable WORKBENCH_SEED) and rejected while any localization sum over
a flat of rank at most 2, or the total sum, vanishes; the seed is
embedded in every report.
"""

from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arrangement import Arrangement, cone, to_json_dict as arrangement_json
from .catalog import CatalogEntry, entries as catalog_entries, get as catalog_get
from .critical import (
    fibre_kernel_dimension,
    logarithmic_ideal_generators,
    naive_ideal_generators,
    remap_variables,
    saturated_critical_generators,
)
from .groebner import BudgetExceededError, groebner_basis, ideal_quotient, ideals_equal
from .linalg import rank_of_rows
from .logmod import (
    GeneratorSearch,
    free_certificate,
    log_form_space,
    minimal_derivation_generators,
)
from .orlik_solomon import (
    OrlikSolomon,
    brute_force_aomoto_betti,
    euler_characteristic_magnitude,
)
from .polyring import Polynomial, Ring

SCHEMA_VERSION = 1
DEFAULT_SEED = 41
SLICE_ATTEMPTS = 3

Weights = tuple[Fraction, ...]


def harness_seed() -> int:
    raw = os.environ.get("WORKBENCH_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"WORKBENCH_SEED must be an integer, got {raw!r}") from None


# -- weight sampling ---------------------------------------------------------------


def sample_generic_weights(
    arrangement: Arrangement, rng: random.Random, tries: int = 500
) -> Weights:
    """Random rational weights avoiding the cheap degeneracies.

    Rejected while any weight is zero, the total sum is zero, or the sum
    over the hyperplanes of a flat of rank at most 2 is zero.  Higher
    degeneracies stay possible; downstream checks compute honestly.
    """
    flats = [f for f in arrangement.flats_up_to_rank(2) if f.indices]
    for _ in range(tries):
        values = tuple(
            Fraction(rng.randint(-999, 999), rng.randint(1, 999))
            for _ in range(arrangement.size)
        )
        if any(v == 0 for v in values):
            continue
        if sum(values) == 0:
            continue
        if any(sum(values[i] for i in flat.indices) == 0 for flat in flats):
            continue
        return values
    raise RuntimeError("weight sampling kept hitting degeneracies")


def aomoto_data(
    arrangement: Arrangement, weights: Sequence
) -> tuple[tuple[int, ...], int | None]:
    """Cohomology dimensions and the least degree >= 1 with nonzero one."""
    if arrangement.is_central:
        betti = OrlikSolomon(arrangement).aomoto_betti(weights)
    else:
        betti = brute_force_aomoto_betti(arrangement, weights)
    least = None
    for p in range(1, len(betti)):
        if betti[p]:
            least = p
            break
    return betti, least


# -- per-weight check --------------------------------------------------------------


@dataclass(frozen=True)
class WeightReport:
    """Outcome of the theorem check at one weight vector.

    `critical_codim` measures the pairing-ideal variety, the object the
    inequality is about; `saturated_codim` measures the closure of the
    honest critical set off the hyperplanes, which can be strictly
    smaller (or empty while the former is not).
    """

    weights: Weights
    source: str  # "generic", "scripted", or "user"
    betti: tuple[int, ...] | None
    least_degree: int | None
    critical_empty: bool | None
    critical_codim: int | None
    saturated_empty: bool | None
    saturated_codim: int | None
    converse_failure: bool
    codim_equals_rank: bool | None
    verdict: str
    notes: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "weights": [str(w) for w in self.weights],
            "source": self.source,
            "betti": list(self.betti) if self.betti is not None else None,
            "least_degree": self.least_degree,
            "critical_empty": self.critical_empty,
            "critical_codim": self.critical_codim,
            "saturated_empty": self.saturated_empty,
            "saturated_codim": self.saturated_codim,
            "converse_failure": self.converse_failure,
            "codim_equals_rank": self.codim_equals_rank,
            "verdict": self.verdict,
            "notes": list(self.notes),
        }


def _verdict(
    guaranteed: bool,
    least: int | None,
    empty: bool,
    codim: int | None,
    recorded_only: bool,
) -> str:
    if recorded_only:
        return "recorded"
    if least is None:
        return "vacuous"
    if empty:
        return "violated" if guaranteed else "inapplicable"
    if codim is not None and codim <= least:
        return "theorem-satisfied"
    return "violated" if guaranteed else "inapplicable"


def _ideal_codimension(
    arrangement: Arrangement, generators: Sequence[Polynomial], budget: int | None
) -> int | None:
    """Codimension of a specialized ideal's variety; None when empty."""
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        return 0
    gb = groebner_basis(gens, budget=budget)
    if gb.is_trivial:
        return None
    return gb.codimension()


def check_weights(
    arrangement: Arrangement,
    weights: Sequence,
    guaranteed: bool,
    source: str = "user",
    recorded_only: bool = False,
    search: GeneratorSearch | None = None,
    budget: int | None = None,
) -> WeightReport:
    """Run the theorem check at one weight vector and classify the outcome.

    Central arrangements measure the pairing ideal directly (its variety
    is what the inequality bounds); affine ones fall back to the
    saturated ideal, which carries the same geometry there since every
    critical point already avoids the hyperplanes.
    """
    lam = arrangement.weights(weights)
    notes: list[str] = []
    try:
        betti, least = aomoto_data(arrangement, lam)
        sat = saturated_critical_generators(arrangement, lam, budget=budget)
        sat_codim = _ideal_codimension(arrangement, sat, budget)
        if arrangement.is_central:
            if search is None:
                search = minimal_derivation_generators(arrangement)
            log_gens = logarithmic_ideal_generators(arrangement, lam, search)
            codim = _ideal_codimension(arrangement, log_gens, budget)
        else:
            codim = sat_codim
            coned, coned_lam = cone(arrangement, lam)
            coned_sat = saturated_critical_generators(
                coned, coned_lam, budget=budget
            )
            coned_codim = _ideal_codimension(coned, coned_sat, budget)
            if coned_codim != sat_codim:
                notes.append(
                    f"cone/chart codimension disagreement: cone "
                    f"{coned_codim}, chart {sat_codim}"
                )
            else:
                notes.append("cone and affine chart codimensions agree")
    except BudgetExceededError as exc:
        return WeightReport(
            weights=lam,
            source=source,
            betti=None,
            least_degree=None,
            critical_empty=None,
            critical_codim=None,
            saturated_empty=None,
            saturated_codim=None,
            converse_failure=False,
            codim_equals_rank=None,
            verdict="incomplete",
            notes=(f"computation budget exhausted: {exc}",),
        )
    empty = codim is None
    converse = sat_codim is not None and least is not None and sat_codim < least
    if converse:
        notes.append(
            "actual critical locus is larger than the least nonvanishing "
            "cohomology degree predicts; the converse direction fails here"
        )
    if least is None and sat_codim is not None:
        notes.append("critical points without resonance")
    matches_rank = None if sat_codim is None else sat_codim == arrangement.rank
    verdict = _verdict(guaranteed, least, empty, codim, recorded_only)
    return WeightReport(
        weights=lam,
        source=source,
        betti=betti,
        least_degree=least,
        critical_empty=empty,
        critical_codim=codim,
        saturated_empty=sat_codim is None,
        saturated_codim=sat_codim,
        converse_failure=converse,
        codim_equals_rank=matches_rank,
        verdict=verdict,
        notes=tuple(notes),
    )


# -- universal codimension via a random linear slice -------------------------------


def _fresh_names(base: Ring, count: int, stem: str) -> tuple[str, ...]:
    names = []
    for i in range(count):
        name = f"{stem}{i + 1}"
        while name in base.variables or name in names:
            name = "_" + name
        names.append(name)
    return tuple(names)


def _random_full_rank_matrix(
    rng: random.Random, rows: int, cols: int, need_rank: int
) -> list[list[Fraction]]:
    for _ in range(100):
        m = [
            [Fraction(rng.randint(-9, 9)) for _ in range(cols)]
            for _ in range(rows)
        ]
        if rank_of_rows(m) >= need_rank:
            return m
    raise RuntimeError("random matrix sampling failed")


def sliced_universal_dimension(
    generators: Sequence[Polynomial],
    coordinate_count: int,
    rng: random.Random,
    budget: int | None = None,
) -> int:
    """Dimension of the universal variety cut by one random linear slice.

    Every ring variable (coordinates and weights alike) is replaced by a
    random linear form in `coordinate_count` fresh variables, the
    coordinate block by an invertible square matrix.  The slice passes
    through the origin, which lies on the variety because the
    generators are weight-linear, so a zero-dimensional result proves
    the variety's codimension is at least `coordinate_count`.
    """
    base = generators[0].ring
    ell = coordinate_count
    total = base.nvars
    y_names = _fresh_names(base, ell, "y")
    extended = base.extend(y_names)
    y_vars = [extended.var(total + i) for i in range(ell)]
    coord_matrix = _random_full_rank_matrix(rng, ell, ell, ell)
    weight_matrix = [
        [Fraction(rng.randint(-9, 9)) for _ in range(ell)]
        for _ in range(total - ell)
    ]
    replacements: dict[int, Polynomial] = {}
    for i, row in enumerate(coord_matrix + weight_matrix):
        image = extended.zero()
        for j, c in enumerate(row):
            if c:
                image = image + y_vars[j] * c
        replacements[i] = image
    target = Ring(y_names)
    down = {total + i: i for i in range(ell)}
    sliced = []
    for g in generators:
        s = g.map_to_ring(extended).substitute(replacements)
        if not s.is_zero():
            sliced.append(remap_variables(s, target, down))
    if not sliced:
        raise RuntimeError("slice unexpectedly killed every generator")
    gb = groebner_basis(sliced, budget=budget)
    if gb.is_trivial:
        raise RuntimeError("slice through the origin cannot be empty")
    return gb.dimension()


def universal_codim_report(
    arrangement: Arrangement,
    search: GeneratorSearch,
    rng: random.Random,
    budget: int | None = None,
    attempts: int = SLICE_ATTEMPTS,
) -> dict:
    """Check that the universal critical variety has codimension = rank.

    Lower bound: a random linear slice of complementary dimension is
    zero-dimensional (sound regardless of the slice drawn; failures are
    retried since a special slice can only err in that direction).
    Upper bound: the weight-space fibre over a random point off the
    hyperplanes has dimension n - rank, so the variety is at least
    n-dimensional over an open set of base points.
    """
    n = arrangement.size
    rank = arrangement.rank
    gens = [
        g
        for g in logarithmic_ideal_generators(arrangement, None, search)
        if not g.is_zero()
    ]
    report = {
        "expected_codim": rank,
        "slice_dimension": None,
        "slice_attempts": 0,
        "slice_ok": False,
        "fibre_dimension": None,
        "fibre_expected": n - rank,
        "fibre_ok": False,
    }
    for attempt in range(1, attempts + 1):
        report["slice_attempts"] = attempt
        dim = sliced_universal_dimension(gens, rank, rng, budget=budget)
        report["slice_dimension"] = dim
        if dim == 0:
            report["slice_ok"] = True
            break
    report.update(fibre_spot_check(arrangement, rng))
    report["fibre_dimension"] = report["fibre_dimensions"][0]
    return report


def fibre_spot_check(
    arrangement: Arrangement, rng: random.Random, points: int = 3
) -> dict:
    """Weight-space fibre dimension at random base points off the hyperplanes.

    The fibre over any such point is the kernel of an n x dim linear
    system, expected to have dimension n - rank everywhere.
    """
    expected = arrangement.size - arrangement.rank
    dims = [
        fibre_kernel_dimension(arrangement, _point_off_hyperplanes(arrangement, rng))
        for _ in range(points)
    ]
    return {
        "fibre_dimensions": dims,
        "fibre_expected": expected,
        "fibre_ok": all(d == expected for d in dims),
    }


def critical_count_check(
    arrangement: Arrangement,
    rng: random.Random,
    budget: int | None = None,
    attempts: int = 5,
) -> dict:
    """Count critical points at generic weights against the Euler number.

    Degenerate draws (a positive-dimensional or empty saturation) are
    resampled a few times before giving up, since genericity is only
    heuristic.
    """
    expected = euler_characteristic_magnitude(arrangement)
    for attempt in range(1, attempts + 1):
        lam = sample_generic_weights(arrangement, rng)
        try:
            sat = saturated_critical_generators(arrangement, lam, budget=budget)
            gb = groebner_basis(sat, budget=budget)
            if gb.is_trivial or gb.dimension() != 0:
                continue
            count = gb.standard_monomial_count()
        except BudgetExceededError:
            return {
                "expected": expected,
                "status": "incomplete",
                "attempts": attempt,
            }
        return {
            "expected": expected,
            "count": count,
            "ok": count == expected,
            "attempts": attempt,
        }
    return {"expected": expected, "status": "degenerate", "attempts": attempts}


def _point_off_hyperplanes(
    arrangement: Arrangement, rng: random.Random, tries: int = 200
) -> tuple[Fraction, ...]:
    for _ in range(tries):
        point = tuple(
            Fraction(rng.randint(-50, 50), rng.randint(1, 20))
            for _ in range(arrangement.dimension)
        )
        if all(f.evaluate(point) != 0 for f in arrangement.forms):
            return point
    raise RuntimeError("could not find a point off the hyperplanes")


# -- evidence for the reduced-scope entry -------------------------------------------


def reduced_scope_evidence(
    entry: CatalogEntry, budget: int | None = None
) -> dict:
    """Degreewise logarithmic data recorded without drawing a conclusion.

    Collects the low-degree dimensions of the logarithmic form spaces
    and, at each scripted weight vector, whether the naive-quotient
    ideal still agrees with the pairing ideal.
    """
    A = entry.arrangement
    search = minimal_derivation_generators(A, bound=entry.derivation_bound)
    strands = {}
    for p in range(1, min(A.dimension, 3) + 1):
        strands[p] = [len(log_form_space(A, p, d)) for d in range(4)]
    quotient_flags = {}
    q = A.defining_polynomial
    for lam in entry.resonant_weights:
        key = ",".join(str(w) for w in lam)
        try:
            naive = naive_ideal_generators(A, lam)
            quot = ideal_quotient(naive, q, budget=budget)
            log_gens = [
                g
                for g in logarithmic_ideal_generators(A, lam, search)
                if not g.is_zero()
            ]
            quotient_flags[key] = (
                "holds" if ideals_equal(quot, log_gens, budget=budget) else "fails"
            )
        except BudgetExceededError:
            quotient_flags[key] = "incomplete"
    return {
        "derivation_degrees": list(search.degrees),
        "log_form_dimensions": {
            str(p): dims for p, dims in strands.items()
        },
        "quotient_identity_at_scripted_weights": quotient_flags,
    }


# -- entry-level verification -------------------------------------------------------


@dataclass(frozen=True)
class EntryReport:
    """Everything the harness decided about one catalog entry."""

    name: str
    seed: int
    rank: int
    size: int
    central: bool
    free_certified: bool
    exponents: tuple[int, ...] | None
    rank_le_3: bool
    guaranteed: bool
    reduced_scope: bool
    cited_notes: tuple[str, ...]
    universal: dict | None
    evidence: dict | None
    weight_reports: tuple[WeightReport, ...]
    repro_bundle: dict | None
    elapsed: float

    @property
    def verdicts(self) -> tuple[str, ...]:
        return tuple(r.verdict for r in self.weight_reports)

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "name": self.name,
            "seed": self.seed,
            "rank": self.rank,
            "size": self.size,
            "central": self.central,
            "free_certified": self.free_certified,
            "exponents": list(self.exponents) if self.exponents else None,
            "rank_le_3": self.rank_le_3,
            "guaranteed": self.guaranteed,
            "reduced_scope": self.reduced_scope,
            "cited_notes": list(self.cited_notes),
            "universal": self.universal,
            "evidence": self.evidence,
            "weights": [r.as_dict() for r in self.weight_reports],
            "repro_bundle": self.repro_bundle,
            "elapsed_seconds": round(self.elapsed, 3),
        }


def verify_entry(
    entry: CatalogEntry,
    generic: int = 5,
    seed: int | None = None,
    budget: int | None = None,
    extra_weights: Sequence[Sequence] = (),
) -> EntryReport:
    """Full theorem verification of one catalog entry.

    Runs the scripted resonant weights plus `generic` sampled ones, and
    for central entries the universal codimension check.  Reduced-scope
    entries get evidence recording instead of verdicts.
    """
    started = time.time()
    if seed is None:
        seed = harness_seed()
    rng = random.Random((seed, entry.name).__repr__())
    A = entry.arrangement
    search = None
    cert = None
    if A.is_central:
        search = minimal_derivation_generators(A, bound=entry.derivation_bound)
        cert = free_certificate(A, search)
    rank_le_3 = A.rank <= 3
    guaranteed = (cert is not None) or rank_le_3
    universal = None
    if A.is_central and search is not None:
        try:
            universal = universal_codim_report(A, search, rng, budget=budget)
        except BudgetExceededError:
            universal = {"slice_ok": False, "error": "budget exhausted"}
    elif not A.is_central:
        # no slice check without a derivation module; the chart-side
        # geometry is covered by the fibre and critical-count checks
        universal = fibre_spot_check(A, rng)
        universal["critical_count"] = critical_count_check(A, rng, budget=budget)
    evidence = None
    if entry.reduced_scope:
        evidence = reduced_scope_evidence(entry, budget=budget)
    cases: list[WeightReport] = []
    scheduled = [("scripted", lam) for lam in entry.resonant_weights]
    scheduled += [
        ("generic", sample_generic_weights(A, rng)) for _ in range(generic)
    ]
    scheduled += [("user", lam) for lam in extra_weights]
    for source, lam in scheduled:
        cases.append(
            check_weights(
                A,
                lam,
                guaranteed,
                source=source,
                recorded_only=entry.reduced_scope,
                search=search,
                budget=budget,
            )
        )
    bundle = None
    violations = [c for c in cases if c.verdict == "violated"]
    if violations:
        bundle = {
            "arrangement": arrangement_json(A),
            "weights": [[str(w) for w in c.weights] for c in violations],
            "seed": seed,
        }
    return EntryReport(
        name=entry.name,
        seed=seed,
        rank=A.rank,
        size=A.size,
        central=A.is_central,
        free_certified=cert is not None,
        exponents=cert.exponents if cert else None,
        rank_le_3=rank_le_3,
        guaranteed=guaranteed,
        reduced_scope=entry.reduced_scope,
        cited_notes=entry.cited_notes,
        universal=universal,
        evidence=evidence,
        weight_reports=tuple(cases),
        repro_bundle=bundle,
        elapsed=time.time() - started,
    )


def sweep(
    names: Sequence[str] | None = None,
    generic: int = 5,
    seed: int | None = None,
    budget: int | None = None,
) -> dict:
    """Verify every catalog entry (or the named subset); returns the report.

    The report's "worst" field is the most severe verdict encountered,
    with severity violated > incomplete > everything else.
    """
    if seed is None:
        seed = harness_seed()
    chosen = (
        catalog_entries()
        if names is None
        else tuple(catalog_get(n) for n in names)
    )
    reports = [
        verify_entry(e, generic=generic, seed=seed, budget=budget) for e in chosen
    ]
    all_verdicts = [v for r in reports for v in r.verdicts]
    if any(v == "violated" for v in all_verdicts):
        worst = "violated"
    elif any(v == "incomplete" for v in all_verdicts):
        worst = "incomplete"
    else:
        worst = "clean"
    return {
        "schema_version": SCHEMA_VERSION,
        "seed": seed,
        "generic_per_entry": generic,
        "worst": worst,
        "entries": [r.as_dict() for r in reports],
    }
