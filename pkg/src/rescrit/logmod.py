"""Logarithmic derivations and forms of a central arrangement.

A derivation sum(g_j d/dx_j) is logarithmic when every defining form
divides its own image; a p-form eta is logarithmic when both Q*eta and
Q*d(eta) are polynomial, which reduces to the divisibility f_i | df_i ^ P
for the cleared numerator P = Q*eta.  Both membership conditions are
linear on coefficients once degrees are fixed, so graded pieces are
exact nullspace computations: conditions are imposed hyperplane by
hyperplane by substituting out one variable of the form and collecting
the surviving monomial coefficients.

Minimal generators of the derivation module are found degree by degree:
in each degree the span of (variables times lower-degree elements) is
subtracted and any complement becomes new generators.  The search is
truncated at a caller-controlled degree bound; the report says whether
the tail of the search window produced nothing new.  Saito's criterion
turns a successful determinant match into a freeness certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .arrangement import Arrangement, _pivot_variable
from .linalg import independent_row_indices, nullspace_of_rows, rank_of_rows
from .polyring import Polynomial, Ring, exact_divide, try_exact_divide

Weights = tuple[Fraction, ...]


# -- monomial bookkeeping -------------------------------------------------------


def monomials_of_degree(ring: Ring, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of the given total degree, deterministic order."""
    n = ring.nvars
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], remaining: int, i: int):
        if i == n - 1:
            out.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining, -1, -1):
            prefix.append(e)
            rec(prefix, remaining - e, i + 1)
            prefix.pop()

    if degree < 0:
        return []
    rec([], degree, 0)
    return out


def _coeff_vector(
    p: Polynomial, index: dict[tuple[int, ...], int]
) -> list[Fraction]:
    row = [Fraction(0)] * len(index)
    for e, c in p.items():
        row[index[e]] = c
    return row


def _restrict_to_kernel(
    sparse_rows: Iterable[dict[int, Fraction]],
    basis_columns: list[list[Fraction]] | None,
    unknowns: int,
) -> list[list[Fraction]] | None:
    """Cut the current solution space by new conditions (sparse rows).

    None for the basis means the full space; the return value is the new
    column basis, or an empty list when the conditions kill everything.
    """
    if basis_columns is None:
        restricted = []
        for raw in sparse_rows:
            row = [Fraction(0)] * unknowns
            for k, v in raw.items():
                row[k] = v
            restricted.append(row)
        kernel = nullspace_of_rows(restricted, ncols=unknowns)
        return [list(vec) for vec in kernel]
    width = len(basis_columns)
    restricted = []
    for raw in sparse_rows:
        row = [Fraction(0)] * width
        for k, v in raw.items():
            for c in range(width):
                b = basis_columns[c][k]
                if b:
                    row[c] += v * b
        restricted.append(row)
    kernel = nullspace_of_rows(restricted, ncols=width)
    return [
        [
            sum(vec[k] * basis_columns[k][r] for k in range(width) if vec[k])
            for r in range(unknowns)
        ]
        for vec in kernel
    ]


def _substitution_for(arrangement: Arrangement, i: int) -> tuple[int, Polynomial]:
    """Pivot variable of form i and its elimination image."""
    row = arrangement.coefficient_rows[i]
    pivot = _pivot_variable(row)
    ring = arrangement.ring
    terms = {}
    for j, c in enumerate(row):
        if j == pivot or c == 0:
            continue
        exp = tuple(1 if k == j else 0 for k in range(ring.nvars))
        terms[exp] = -c / row[pivot]
    if arrangement.constants[i]:
        terms[(0,) * ring.nvars] = -arrangement.constants[i] / row[pivot]
    return pivot, ring.polynomial(terms)


# -- derivations -----------------------------------------------------------------


@dataclass(frozen=True)
class Derivation:
    """Polynomial vector field with homogeneous components of one degree."""

    components: tuple[Polynomial, ...]

    @property
    def ring(self) -> Ring:
        return self.components[0].ring

    @property
    def coefficient_degree(self) -> int:
        degrees = [c.total_degree() for c in self.components if not c.is_zero()]
        return max(degrees) if degrees else -1

    def apply(self, p: Polynomial) -> Polynomial:
        out = p.ring.zero()
        for j, g in enumerate(self.components):
            if g.is_zero():
                continue
            out = out + g * p.partial_derivative(j)
        return out

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __str__(self) -> str:
        names = self.ring.variables
        parts = [
            f"({g})*d/d{names[j]}"
            for j, g in enumerate(self.components)
            if not g.is_zero()
        ]
        return " + ".join(parts) if parts else "0"


def euler_derivation(ring: Ring) -> Derivation:
    return Derivation(tuple(ring.var(i) for i in range(ring.nvars)))


def is_log_derivation(arrangement: Arrangement, derivation: Derivation) -> bool:
    for i, f in enumerate(arrangement.forms):
        image = derivation.apply(f)
        if image.is_zero():
            continue
        if try_exact_divide(image, f) is None:
            return False
    return True


def derivation_space(arrangement: Arrangement, degree: int) -> list[Derivation]:
    """Basis of the homogeneous logarithmic derivations of one coefficient degree."""
    if not arrangement.is_central:
        raise ValueError("the graded derivation module needs a central arrangement")
    if degree < 0:
        return []
    ring = arrangement.ring
    nvars = ring.nvars
    monomials = monomials_of_degree(ring, degree)
    unknowns = nvars * len(monomials)
    basis_columns: list[list[Fraction]] | None = None  # None = everything

    for i in range(arrangement.size):
        pivot, image = _substitution_for(arrangement, i)
        row_i = arrangement.coefficient_rows[i]
        # reduced monomial images, shared across components
        reduced: dict[tuple[int, ...], Polynomial] = {}
        for m in monomials:
            reduced[m] = ring.monomial(m).substitute({pivot: image})
        raw_rows: dict[tuple[int, ...], dict[int, Fraction]] = {}
        for j in range(nvars):
            c = row_i[j]
            if c == 0:
                continue
            for mi, m in enumerate(monomials):
                col = j * len(monomials) + mi
                for e, v in reduced[m].items():
                    row = raw_rows.setdefault(e, {})
                    acc = row.get(col, Fraction(0)) + c * v
                    if acc:
                        row[col] = acc
                    else:
                        row.pop(col, None)
        basis_columns = _restrict_to_kernel(
            raw_rows.values(), basis_columns, unknowns
        )
        if not basis_columns:
            return []
    if basis_columns is None:
        basis_columns = [
            [Fraction(1) if r == c else Fraction(0) for r in range(unknowns)]
            for c in range(unknowns)
        ]

    out = []
    for col in basis_columns:
        components = []
        for j in range(nvars):
            terms = {}
            for mi, m in enumerate(monomials):
                v = col[j * len(monomials) + mi]
                if v:
                    terms[m] = v
            components.append(ring.polynomial(terms))
        out.append(Derivation(tuple(components)))
    return out


def _derivation_vector(
    derivation: Derivation, monomial_index: dict[tuple[int, ...], int], nvars: int
) -> list[Fraction]:
    width = len(monomial_index)
    row = [Fraction(0)] * (nvars * width)
    for j, g in enumerate(derivation.components):
        for e, c in g.items():
            row[j * width + monomial_index[e]] = c
    return row


@dataclass
class GeneratorSearch:
    """Minimal generators of the derivation module found up to a degree bound."""

    arrangement: Arrangement
    generators: tuple[Derivation, ...]
    degrees: tuple[int, ...]
    space_dimensions: tuple[int, ...]  # dim of the graded piece, degree 0..bound
    bound: int
    quiet_tail: int  # consecutive top degrees that produced no new generator
    saito_complete: bool = False  # generators passed the determinant test

    @property
    def exhausted(self) -> bool:
        """Completeness: proven by a determinant certificate, or heuristic
        (a silent tail at least two degrees long)."""
        return self.saito_complete or self.quiet_tail >= 2


def minimal_derivation_generators(
    arrangement: Arrangement, bound: int | None = None
) -> GeneratorSearch:
    """Degreewise minimal generating set of the derivation module, up to bound.

    In each degree the graded piece is compared with what lower-degree
    generators already span after multiplication by the variables; a
    basis of any complement joins the generating set (front-to-back
    greedy choice, so results are deterministic).
    """
    n = arrangement.size
    ell = arrangement.dimension
    if bound is None:
        bound = max(1, 2 * n - ell)
    ring = arrangement.ring
    generators: list[Derivation] = []
    degrees: list[int] = []
    dims: list[int] = []
    quiet = 0
    saito_complete = False
    # generated_by_degree[d] = vectors spanning the degree-d part of the
    # submodule generated so far, in the monomial coordinates of degree d
    previous_layer: list[Derivation] = []
    for d in range(bound + 1):
        monomials = monomials_of_degree(ring, d)
        index = {m: i for i, m in enumerate(monomials)}
        space = derivation_space(arrangement, d)
        dims.append(len(space))
        # degree-d part of the generated submodule: variables times the
        # degree-(d-1) layer
        generated_rows: list[list[Fraction]] = []
        generated_layer: list[Derivation] = []
        for theta in previous_layer:
            for v in range(ell):
                xv = ring.var(v)
                scaled = Derivation(tuple(xv * g for g in theta.components))
                generated_layer.append(scaled)
                generated_rows.append(_derivation_vector(scaled, index, ell))
        if not space:
            previous_layer = generated_layer
            quiet += 1
            continue
        space_rows = [_derivation_vector(t, index, ell) for t in space]
        chosen = independent_row_indices(generated_rows + space_rows)
        offset = len(generated_rows)
        new_indices = [i - offset for i in chosen if i >= offset]
        if new_indices:
            quiet = 0
        else:
            quiet += 1
        for i in new_indices:
            generators.append(space[i])
            degrees.append(d)
        # a passing determinant test proves the module free on the current
        # generators, so no later degree can contribute: stop early
        if new_indices and len(generators) == ell and sum(degrees) == n:
            if saito_check(arrangement, generators) is not None:
                saito_complete = True
                break
        # the full graded piece is the layer for the next degree: the
        # submodule generated by everything found so far agrees with the
        # module itself in degrees <= d by construction
        previous_layer = space
    return GeneratorSearch(
        arrangement=arrangement,
        generators=tuple(generators),
        degrees=tuple(degrees),
        space_dimensions=tuple(dims),
        bound=bound,
        quiet_tail=quiet,
        saito_complete=saito_complete,
    )


# -- Saito's criterion ------------------------------------------------------------


def coefficient_matrix_determinant(derivations: Sequence[Derivation]) -> Polynomial:
    """Determinant of the matrix of derivation components (Laplace expansion)."""
    ring = derivations[0].ring
    size = len(derivations)
    if size != ring.nvars:
        raise ValueError("need exactly one derivation per variable")

    def minor(rows: tuple[int, ...], cols: tuple[int, ...]) -> Polynomial:
        if len(rows) == 1:
            return derivations[rows[0]].components[cols[0]]
        total = ring.zero()
        first = rows[0]
        for k, c in enumerate(cols):
            entry = derivations[first].components[c]
            if entry.is_zero():
                continue
            sub = minor(rows[1:], cols[:k] + cols[k + 1 :])
            term = entry * sub
            total = total + term if k % 2 == 0 else total - term
        return total

    return minor(tuple(range(size)), tuple(range(size)))


@dataclass(frozen=True)
class FreenessCertificate:
    """A Saito basis: derivations whose determinant is a nonzero scalar times Q."""

    derivations: tuple[Derivation, ...]
    exponents: tuple[int, ...]  # coefficient degree minus one, Euler contributes 0
    scalar: Fraction


def saito_check(
    arrangement: Arrangement, derivations: Sequence[Derivation]
) -> FreenessCertificate | None:
    """Certificate if the given derivations form a Saito basis, else None."""
    if len(derivations) != arrangement.dimension:
        return None
    det = coefficient_matrix_determinant(derivations)
    if det.is_zero():
        return None
    quotient = try_exact_divide(det, arrangement.defining_polynomial)
    if quotient is None or not quotient.is_constant():
        return None
    scalar = quotient.constant_term()
    if scalar == 0:
        return None
    exponents = tuple(sorted(d.coefficient_degree - 1 for d in derivations))
    return FreenessCertificate(tuple(derivations), exponents, scalar)


def free_certificate(
    arrangement: Arrangement, search: GeneratorSearch | None = None
) -> FreenessCertificate | None:
    """Try Saito's criterion over subsets of the minimal generators.

    Only subsets whose coefficient degrees sum to the number of
    hyperplanes can work, since the determinant must match Q.
    """
    if search is None:
        search = minimal_derivation_generators(arrangement)
    ell = arrangement.dimension
    n = arrangement.size
    candidates = list(range(len(search.generators)))
    for subset in combinations(candidates, ell):
        if sum(search.degrees[i] for i in subset) != n:
            continue
        cert = saito_check(
            arrangement, [search.generators[i] for i in subset]
        )
        if cert is not None:
            return cert
    return None


def free_hilbert_prediction(exponents: Sequence[int], nvars: int, degree: int) -> int:
    """Graded dimension a free module with the given exponents would have."""
    from math import comb

    total = 0
    for e in exponents:
        d = degree - (e + 1)
        if d >= 0:
            total += comb(d + nvars - 1, nvars - 1)
    return total


# -- logarithmic forms -------------------------------------------------------------


@dataclass(frozen=True)
class LogForm:
    """A logarithmic p-form stored through its cleared numerator.

    The dictionary maps ascending index tuples (the wedge monomial in
    the coordinate differentials) to polynomial coefficients of P = Q*eta.
    """

    ring: Ring
    form_degree: int
    numerator: tuple[tuple[tuple[int, ...], Polynomial], ...]

    def coefficients(self) -> dict[tuple[int, ...], Polynomial]:
        return dict(self.numerator)

    def is_zero(self) -> bool:
        return all(c.is_zero() for _, c in self.numerator)


def _wedge_with_linear(
    row: Sequence[Fraction],
    coeffs: dict[tuple[int, ...], Polynomial],
    ring: Ring,
    p: int,
) -> dict[tuple[int, ...], Polynomial]:
    """(sum row_k dx_k) wedged onto a p-form's coefficient dictionary."""
    out: dict[tuple[int, ...], Polynomial] = {}
    for J, poly in coeffs.items():
        if poly.is_zero():
            continue
        for k, c in enumerate(row):
            if c == 0 or k in J:
                continue
            position = sum(1 for j in J if j < k)
            sign = -1 if position % 2 else 1
            merged = tuple(sorted(J + (k,)))
            inc = poly * (c * sign)
            if merged in out:
                out[merged] = out[merged] + inc
            else:
                out[merged] = inc
    return {J: v for J, v in out.items() if not v.is_zero()}


def log_form_space(
    arrangement: Arrangement, form_degree: int, coefficient_degree: int
) -> list[LogForm]:
    """Basis of the logarithmic p-forms with numerators of one degree.

    A numerator of coefficient degree m - p + n represents a form of
    total degree m (coefficients lose n from clearing Q and the wedge
    factors contribute p).
    """
    if not arrangement.is_central:
        raise ValueError("graded log forms need a central arrangement")
    ring = arrangement.ring
    nvars = ring.nvars
    p = form_degree
    if p < 0 or p > nvars or coefficient_degree < 0:
        return []
    wedge_basis = list(combinations(range(nvars), p))
    monomials = monomials_of_degree(ring, coefficient_degree)
    width = len(monomials)
    unknowns = len(wedge_basis) * width
    if unknowns == 0:
        return []
    basis_columns: list[list[Fraction]] | None = None
    monomial_polys = {m: ring.monomial(m) for m in monomials}

    for i in range(arrangement.size):
        pivot, image = _substitution_for(arrangement, i)
        row_i = arrangement.coefficient_rows[i]
        reduced = {m: monomial_polys[m].substitute({pivot: image}) for m in monomials}
        # condition: every coefficient of df_i ^ P reduces to zero mod f_i.
        # rows indexed by (target wedge (p+1)-tuple, reduced monomial)
        target_rows: dict[tuple, dict[int, Fraction]] = {}
        for wi, J in enumerate(wedge_basis):
            for k, c in enumerate(row_i):
                if c == 0 or k in J:
                    continue
                position = sum(1 for j in J if j < k)
                sign = Fraction(-1 if position % 2 else 1) * c
                merged = tuple(sorted(J + (k,)))
                for mi, m in enumerate(monomials):
                    col = wi * width + mi
                    for e, v in reduced[m].items():
                        row = target_rows.setdefault((merged, e), {})
                        acc = row.get(col, Fraction(0)) + sign * v
                        if acc:
                            row[col] = acc
                        else:
                            row.pop(col, None)
        basis_columns = _restrict_to_kernel(
            target_rows.values(), basis_columns, unknowns
        )
        if not basis_columns:
            return []
    if basis_columns is None:
        basis_columns = [
            [Fraction(1) if r == c else Fraction(0) for r in range(unknowns)]
            for c in range(unknowns)
        ]

    out = []
    for col in basis_columns:
        entries = []
        for wi, J in enumerate(wedge_basis):
            terms = {}
            for mi, m in enumerate(monomials):
                v = col[wi * width + mi]
                if v:
                    terms[m] = v
            poly = ring.polynomial(terms)
            if not poly.is_zero():
                entries.append((J, poly))
        out.append(LogForm(ring, p, tuple(entries)))
    return out


def omega_wedge(
    arrangement: Arrangement, weights: Sequence, form: LogForm
) -> LogForm:
    """Left multiplication by the weighted logarithmic one-form.

    On cleared numerators this is the weighted sum of (df_i ^ P)/f_i;
    the divisions are exact precisely because P satisfies the
    logarithmic conditions.
    """
    lam = arrangement.weights(weights)
    ring = form.ring
    acc: dict[tuple[int, ...], Polynomial] = {}
    coeffs = form.coefficients()
    for i in range(arrangement.size):
        if lam[i] == 0:
            continue
        wedge = _wedge_with_linear(
            arrangement.coefficient_rows[i], coeffs, ring, form.form_degree
        )
        for J, poly in wedge.items():
            divided = exact_divide(poly, arrangement.forms[i]) * lam[i]
            if J in acc:
                acc[J] = acc[J] + divided
            else:
                acc[J] = divided
    entries = tuple(
        (J, poly) for J, poly in sorted(acc.items()) if not poly.is_zero()
    )
    return LogForm(ring, form.form_degree + 1, entries)


def log_complex_betti(
    arrangement: Arrangement, weights: Sequence, total_degree: int
) -> tuple[int, ...]:
    """Cohomology dimensions of (log forms, weighted wedge) in one total degree.

    The weighted one-form has total degree zero, so each total degree is a
    finite subcomplex: form degree p carries numerator degree
    total_degree - p + n.
    """
    ring = arrangement.ring
    nvars = ring.nvars
    n = arrangement.size
    spaces: list[list[LogForm]] = []
    for p in range(nvars + 1):
        spaces.append(
            log_form_space(arrangement, p, total_degree - p + n)
        )
    # matrices of the wedge map in these bases
    betti = []
    ranks = []
    for p in range(nvars):
        source = spaces[p]
        target = spaces[p + 1]
        if not source or not target:
            ranks.append(0)
            continue
        tindex: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
        columns: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
        for t in target:
            for J, poly in t.numerator:
                for e, _ in poly.items():
                    if (J, e) not in tindex.setdefault(J, {}):
                        tindex[J][e] = len(columns)
                        columns.append((J, e))
        rows = []
        target_rows = []
        for t in target:
            row = [Fraction(0)] * len(columns)
            for J, poly in t.numerator:
                for e, c in poly.items():
                    row[tindex[J][e]] = c
            target_rows.append(row)
        images = []
        for s in source:
            image = omega_wedge(arrangement, weights, s)
            row = [Fraction(0)] * len(columns)
            for J, poly in image.numerator:
                for e, c in poly.items():
                    if J not in tindex or e not in tindex[J]:
                        raise AssertionError(
                            "wedge image escaped the graded log-form space"
                        )
                    row[tindex[J][e]] = c
            images.append(row)
        ranks.append(rank_of_rows(images) if images else 0)
    ranks.append(0)
    for p in range(nvars + 1):
        below = ranks[p - 1] if p > 0 else 0
        betti.append(len(spaces[p]) - ranks[p] - below)
    return tuple(betti)


# -- pairings ----------------------------------------------------------------------


def derivation_form_pairing(
    arrangement: Arrangement, weights: Sequence, derivation: Derivation
) -> Polynomial:
    """Contraction of a logarithmic derivation with the weighted one-form.

    The result sum of weights * theta(f_i)/f_i is a polynomial of
    coefficient degree one less than the derivation's.
    """
    lam = arrangement.weights(weights)
    ring = arrangement.ring
    out = ring.zero()
    for i, f in enumerate(arrangement.forms):
        if lam[i] == 0:
            continue
        image = derivation.apply(f)
        if image.is_zero():
            continue
        out = out + exact_divide(image, f) * lam[i]
    return out


def euler_pairing_scalar(arrangement: Arrangement, weights: Sequence) -> Fraction:
    """Pairing of the Euler derivation: the weight sum (central case)."""
    lam = arrangement.weights(weights)
    return sum(lam, Fraction(0))
