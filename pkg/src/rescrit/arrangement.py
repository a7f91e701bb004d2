"""Hyperplane arrangements over Q: construction, matroid data, coning.

An arrangement is an ordered tuple of degree-one polynomials (the
defining forms) in a shared ambient ring.  The order of the forms is
part of the data: broken-circuit computations downstream depend on it.
Central arrangements have homogeneous forms; affine ones may carry
constants.  All rank/dependence questions about forms are answered by
exact elimination on coefficient rows.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .linalg import rank_of_rows
from .polyring import Polynomial, Ring, product

Weights = tuple[Fraction, ...]


class ArrangementError(ValueError):
    """Invalid arrangement input (zero, duplicate or non-linear forms)."""


def _linear_data(form: Polynomial) -> tuple[tuple[Fraction, ...], Fraction]:
    """Split a degree-<=1 polynomial into (coefficient row, constant)."""
    if form.total_degree() > 1:
        raise ArrangementError(f"form {form} is not linear")
    n = form.ring.nvars
    coeffs = [Fraction(0)] * n
    constant = Fraction(0)
    for exp, c in form.items():
        if sum(exp) == 0:
            constant = c
        else:
            coeffs[exp.index(1)] = c
    return tuple(coeffs), constant


def _proportional(a: tuple[tuple[Fraction, ...], Fraction],
                  b: tuple[tuple[Fraction, ...], Fraction]) -> bool:
    row_a = list(a[0]) + [a[1]]
    row_b = list(b[0]) + [b[1]]
    return rank_of_rows([row_a, row_b]) < 2


@dataclass(frozen=True)
class Flat:
    """A closed set of hyperplane indices together with its rank."""

    indices: tuple[int, ...]
    rank: int


class Arrangement:
    """An ordered, simple (no repeated hyperplane) arrangement."""

    def __init__(self, forms: Sequence[Polynomial], labels: Sequence[str] | None = None):
        if not forms:
            raise ArrangementError("an arrangement needs at least one form")
        ring = forms[0].ring
        parsed = []
        for f in forms:
            if f.ring != ring:
                raise ArrangementError("forms live in different rings")
            coeffs, constant = _linear_data(f)
            if all(c == 0 for c in coeffs):
                raise ArrangementError(f"form {f} has no linear part")
            parsed.append((coeffs, constant))
        for i, j in combinations(range(len(parsed)), 2):
            if _proportional(parsed[i], parsed[j]):
                raise ArrangementError(
                    f"forms {i} and {j} define the same hyperplane"
                )
        self.ring: Ring = ring
        self.forms: tuple[Polynomial, ...] = tuple(forms)
        self.coefficient_rows: tuple[tuple[Fraction, ...], ...] = tuple(
            p[0] for p in parsed
        )
        self.constants: tuple[Fraction, ...] = tuple(p[1] for p in parsed)
        if labels is None:
            labels = [str(i + 1) for i in range(len(forms))]
        if len(labels) != len(forms):
            raise ArrangementError("label count does not match form count")
        self.labels: tuple[str, ...] = tuple(str(x) for x in labels)

    # -- elementary structure ------------------------------------------

    @property
    def size(self) -> int:
        return len(self.forms)

    @property
    def dimension(self) -> int:
        return self.ring.nvars

    @cached_property
    def is_central(self) -> bool:
        return all(c == 0 for c in self.constants)

    @cached_property
    def defining_polynomial(self) -> Polynomial:
        return product(self.ring, self.forms)

    def __repr__(self) -> str:
        kind = "central" if self.is_central else "affine"
        return (
            f"Arrangement({self.size} {kind} hyperplanes in "
            f"{len(self.ring.variables)} variables)"
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Arrangement)
            and self.ring == other.ring
            and self.forms == other.forms
        )

    def __hash__(self):
        return hash((self.ring, self.forms))

    # -- matroid of the normal vectors ----------------------------------

    def subset_rank(self, subset: Iterable[int]) -> int:
        rows = [self.coefficient_rows[i] for i in subset]
        return rank_of_rows(rows) if rows else 0

    @cached_property
    def rank(self) -> int:
        return self.subset_rank(range(self.size))

    @cached_property
    def is_essential(self) -> bool:
        return self.rank == self.dimension

    @cached_property
    def circuits(self) -> tuple[tuple[int, ...], ...]:
        """Minimal dependent subsets of the normal vectors, sorted."""
        found: list[tuple[int, ...]] = []
        max_size = self.rank + 1
        for size in range(2, max_size + 1):
            for subset in combinations(range(self.size), size):
                if any(set(c) <= set(subset) for c in found):
                    continue
                if self.subset_rank(subset) < size:
                    found.append(subset)
        return tuple(sorted(found))

    @cached_property
    def is_irreducible(self) -> bool:
        """True when the matroid is connected (no direct-sum split).

        Every hyperplane must be linked to every other through chains of
        circuits; an element on no circuit is its own component.
        """
        if not self.is_central:
            raise ArrangementError("irreducibility is defined for central arrangements")
        if self.size == 1:
            return True
        parent = list(range(self.size))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for circuit in self.circuits:
            root = find(circuit[0])
            for other in circuit[1:]:
                parent[find(other)] = root
        return len({find(i) for i in range(self.size)}) == 1

    # -- flats ------------------------------------------------------------

    def closure(self, subset: Iterable[int]) -> Flat | None:
        """Smallest flat containing the given hyperplanes.

        Returns None when the hyperplanes have empty common intersection
        (possible only in the affine case).
        """
        subset = sorted(set(subset))
        aug = [list(self.coefficient_rows[i]) + [self.constants[i]] for i in subset]
        coeff_rank = self.subset_rank(subset)
        if aug and rank_of_rows(aug) > coeff_rank:
            return None  # inconsistent: the flat is empty
        members = []
        for j in range(self.size):
            row_j = list(self.coefficient_rows[j]) + [self.constants[j]]
            if rank_of_rows(aug + [row_j]) == coeff_rank:
                members.append(j)
        return Flat(tuple(members), coeff_rank)

    def flats_of_rank(self, r: int) -> tuple[Flat, ...]:
        if r == 0:
            return (Flat((), 0),) if self.is_central else (Flat((), 0),)
        seen: dict[tuple[int, ...], Flat] = {}
        for subset in combinations(range(self.size), r):
            if self.subset_rank(subset) != r:
                continue
            flat = self.closure(subset)
            if flat is not None:
                seen.setdefault(flat.indices, flat)
        return tuple(seen[k] for k in sorted(seen))

    def flats_up_to_rank(self, max_rank: int = 3) -> tuple[Flat, ...]:
        """Flats of rank <= max_rank (the default covers localization needs)."""
        out: list[Flat] = []
        for r in range(min(max_rank, self.rank) + 1):
            out.extend(self.flats_of_rank(r))
        return tuple(out)

    def localization(self, flat: Flat) -> "Arrangement":
        """Subarrangement of the hyperplanes containing the flat."""
        check = self.closure(flat.indices)
        if check is None or check.indices != tuple(sorted(flat.indices)):
            raise ArrangementError("localization requires a closed flat")
        return Arrangement(
            [self.forms[i] for i in flat.indices],
            labels=[self.labels[i] for i in flat.indices],
        )

    def subarrangement(self, indices: Sequence[int]) -> "Arrangement":
        return Arrangement(
            [self.forms[i] for i in indices],
            labels=[self.labels[i] for i in indices],
        )

    # -- weights -----------------------------------------------------------

    def weights(self, values: Sequence) -> Weights:
        w = tuple(Fraction(v) for v in values)
        if len(w) != self.size:
            raise ArrangementError(
                f"expected {self.size} weights, got {len(w)}"
            )
        return w


# -- constructors -------------------------------------------------------------


def from_rows(
    rows: Sequence[Sequence],
    constants: Sequence | None = None,
    variables: Sequence[str] | None = None,
    labels: Sequence[str] | None = None,
) -> Arrangement:
    """Build an arrangement from coefficient rows (and optional constants)."""
    if not rows:
        raise ArrangementError("no coefficient rows")
    n_vars = len(rows[0])
    if variables is None:
        variables = [f"x{i + 1}" for i in range(n_vars)]
    ring = Ring(tuple(variables))
    if constants is None:
        constants = [0] * len(rows)
    forms = [
        ring.linear_form([Fraction(c) for c in row], Fraction(k))
        for row, k in zip(rows, constants)
    ]
    return Arrangement(forms, labels=labels)


def cone(arrangement: Arrangement, weights: Weights | None = None):
    """Homogenize with a new first variable x0 and the extra hyperplane x0=0.

    Weights transform so that the new weight vector sums to zero: the
    added hyperplane receives minus the sum of the original weights.
    Returns (coned arrangement, coned weights) or just the arrangement
    when no weights are supplied.
    """
    base = arrangement.ring.variables
    new_name = "x0"
    while new_name in base:
        new_name = "_" + new_name
    ring = Ring((new_name,) + base)
    x0 = ring.var(0)
    forms = [x0]
    for row, const in zip(arrangement.coefficient_rows, arrangement.constants):
        forms.append(ring.linear_form((Fraction(0),) + row) + const * x0)
    labels = ("0",) + arrangement.labels
    coned = Arrangement(forms, labels=labels)
    if weights is None:
        return coned
    weights = arrangement.weights(weights)
    coned_weights = (-sum(weights, Fraction(0)),) + weights
    return coned, coned_weights


def decone(arrangement: Arrangement, hyperplane: int = 0) -> Arrangement:
    """Affine chart f_h = 1 of a central arrangement, dropping H_h.

    The chart coordinates are the ambient variables with the pivot
    variable of f_h eliminated; hyperplanes through f_h = 1 keep their
    order.
    """
    if not arrangement.is_central:
        raise ArrangementError("decone expects a central arrangement")
    row = arrangement.coefficient_rows[hyperplane]
    pivot = _pivot_variable(row)
    ring = arrangement.ring
    names = tuple(n for i, n in enumerate(ring.variables) if i != pivot)
    chart = Ring(names)
    # x_pivot = (1 - sum of the other terms of f_h) / row[pivot]
    replacement_coeffs = []
    for i, c in enumerate(row):
        if i != pivot:
            replacement_coeffs.append(-c / row[pivot])
    replacement = chart.linear_form(replacement_coeffs, Fraction(1) / row[pivot])
    forms = []
    labels = []
    for j in range(arrangement.size):
        if j == hyperplane:
            continue
        coeffs = arrangement.coefficient_rows[j]
        pieces = [
            coeffs[i] * chart.var(names.index(ring.variables[i]))
            for i in range(len(coeffs))
            if i != pivot and coeffs[i] != 0
        ]
        form = chart.zero()
        for p in pieces:
            form = form + p
        form = form + coeffs[pivot] * replacement + arrangement.constants[j]
        forms.append(form)
        labels.append(arrangement.labels[j])
    return Arrangement(forms, labels=labels)


def _pivot_variable(row: Sequence[Fraction]) -> int:
    """Variable eliminated when reducing modulo a linear form.

    Deterministic choice: largest absolute coefficient, ties to the
    lowest index.
    """
    best = None
    best_size = Fraction(-1)
    for i, c in enumerate(row):
        if abs(c) > best_size:
            best = i
            best_size = abs(c)
    if best is None or best_size == 0:
        raise ArrangementError("form has no linear part")
    return best


def direct_sum(left: Arrangement, right: Arrangement) -> Arrangement:
    """Product arrangement on the concatenated ambient coordinates."""
    if not (left.is_central and right.is_central):
        raise ArrangementError("direct sums are defined for central arrangements")
    n_left = left.dimension
    n_right = right.dimension
    variables = [f"x{i + 1}" for i in range(n_left + n_right)]
    ring = Ring(tuple(variables))
    rows = []
    for row in left.coefficient_rows:
        rows.append(tuple(row) + (Fraction(0),) * n_right)
    for row in right.coefficient_rows:
        rows.append((Fraction(0),) * n_left + tuple(row))
    forms = [ring.linear_form(r) for r in rows]
    labels = [f"L{lab}" for lab in left.labels] + [f"R{lab}" for lab in right.labels]
    return Arrangement(forms, labels=labels)


# -- JSON interchange ----------------------------------------------------------


def _fraction_to_text(x: Fraction) -> str:
    return str(x)


def to_json_dict(arrangement: Arrangement) -> dict:
    return {
        "variables": list(arrangement.ring.variables),
        "forms": [
            [_fraction_to_text(c) for c in row] + [_fraction_to_text(k)]
            for row, k in zip(arrangement.coefficient_rows, arrangement.constants)
        ],
        "labels": list(arrangement.labels),
    }


def from_json_dict(payload: dict) -> Arrangement:
    spec = payload["variables"]
    # a bare count is accepted as shorthand for x1..xn
    names = (
        [f"x{i + 1}" for i in range(int(spec))]
        if isinstance(spec, int)
        else [str(v) for v in spec]
    )
    rows = []
    constants = []
    for entry in payload["forms"]:
        if len(entry) != len(names) + 1:
            raise ArrangementError(
                f"each form needs {len(names)} coefficients plus a constant"
            )
        rows.append([Fraction(str(v)) for v in entry[: len(names)]])
        constants.append(Fraction(str(entry[len(names)])))
    labels = payload.get("labels")
    return from_rows(rows, constants, variables=names, labels=labels)


def dump_json(arrangement: Arrangement) -> str:
    return json.dumps(to_json_dict(arrangement), indent=2)


def load_json(text: str) -> Arrangement:
    return from_json_dict(json.loads(text))


# -- Poincare polynomial by deletion and restriction ---------------------------


def poincare_by_deletion_restriction(arrangement: Arrangement) -> tuple[int, ...]:
    """Whitney-number coefficients of the complement's Poincare polynomial.

    Computed by the two-term recursion on (deletion, restriction) with
    the empty arrangement contributing 1; works for central and affine
    arrangements alike and is independent of broken-circuit machinery,
    so it doubles as an oracle for the Orlik-Solomon layer.
    """
    rows = [
        tuple(r) + (k,)
        for r, k in zip(arrangement.coefficient_rows, arrangement.constants)
    ]
    coeffs = _poincare_rows(tuple(rows))
    return tuple(coeffs)


def _poincare_rows(rows: tuple[tuple[Fraction, ...], ...]) -> list[int]:
    if not rows:
        return [1]
    rest, last = rows[:-1], rows[-1]
    deleted = _poincare_rows(rest)
    restricted = _poincare_rows(_restrict_rows(rest, last))
    out = [0] * max(len(deleted), len(restricted) + 1)
    for i, c in enumerate(deleted):
        out[i] += c
    for i, c in enumerate(restricted):
        out[i + 1] += c
    while out and out[-1] == 0:
        out.pop()
    return out


def _restrict_rows(
    rows: tuple[tuple[Fraction, ...], ...], wall: tuple[Fraction, ...]
) -> tuple[tuple[Fraction, ...], ...]:
    """Intersect each row's hyperplane with the wall, dropping parallels."""
    n = len(wall) - 1
    pivot = _pivot_variable(wall[:n])
    out: list[tuple[Fraction, ...]] = []
    for row in rows:
        scale = row[pivot] / wall[pivot]
        reduced = tuple(
            row[i] - scale * wall[i] for i in range(n + 1) if i != pivot
        )
        if all(c == 0 for c in reduced[:-1]):
            continue  # parallel to the wall (or met only at infinity)
        if not any(_rows_proportional(reduced, seen) for seen in out):
            out.append(reduced)
    return tuple(out)


def _rows_proportional(a: tuple[Fraction, ...], b: tuple[Fraction, ...]) -> bool:
    return rank_of_rows([list(a), list(b)]) < 2
