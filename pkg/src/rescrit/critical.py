"""Critical ideals of the weighted master function of an arrangement.

Two ideals describe where the weighted logarithmic one-form vanishes.
The naive one clears denominators coordinatewise: its generators are
the numerators of Q * (each partial of the log of the master function).
The logarithmic one pairs the one-form against generators of the
derivation module and cuts out the closure of the critical set.  Both
come in a specialized flavor (rational weights) and a universal one
(weights as extra ring variables appended after the coordinates).

The module also provides the checks built on those ideals: the quotient
identity relating the two, origin membership, the direct-sum splitting
of the universal ideal, fibre dimension at rational points, and critical
point counting through saturation by Q.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .arrangement import Arrangement
from .groebner import (
    GroebnerBasis,
    groebner_basis,
    ideal_quotient,
    ideals_equal,
    radical_membership,
    saturate,
)
from .linalg import rank_of_rows
from .logmod import Derivation, GeneratorSearch, minimal_derivation_generators
from .polyring import Polynomial, Ring, exact_divide

Weights = tuple[Fraction, ...]


# -- rings and lifts ---------------------------------------------------------------


def universal_ring(arrangement: Arrangement, prefix: str = "a") -> Ring:
    """Coordinates first, then one weight variable per hyperplane."""
    names = []
    for i in range(arrangement.size):
        name = f"{prefix}{i + 1}"
        while name in arrangement.ring.variables or name in names:
            name = "_" + name
        names.append(name)
    return arrangement.ring.extend(names)


def _weight_symbols(arrangement: Arrangement, ring: Ring) -> list[Polynomial]:
    ell = arrangement.dimension
    return [ring.var(ell + i) for i in range(arrangement.size)]


def remap_variables(
    poly: Polynomial, target: Ring, mapping: dict[int, int]
) -> Polynomial:
    """Re-index variables into another ring (used to splice direct sums)."""
    terms = {}
    for e, c in poly.items():
        new = [0] * target.nvars
        for i, power in enumerate(e):
            if power:
                new[mapping[i]] = power
        terms[tuple(new)] = c
    return target.polynomial(terms)


# -- numerators of the critical one-form -------------------------------------------


def partial_products(arrangement: Arrangement) -> list[Polynomial]:
    """Q divided by each form, via prefix and suffix products."""
    forms = arrangement.forms
    n = len(forms)
    ring = arrangement.ring
    prefix = [ring.one()]
    for f in forms:
        prefix.append(prefix[-1] * f)
    suffix = [ring.one()]
    for f in reversed(forms):
        suffix.append(suffix[-1] * f)
    suffix.reverse()
    return [prefix[i] * suffix[i + 1] for i in range(n)]


def naive_ideal_generators(
    arrangement: Arrangement, weights: Sequence | None = None
) -> list[Polynomial]:
    """Cleared numerators of the critical equations, one per coordinate.

    With weights=None the result lives in the universal ring and is
    linear in the weight variables.
    """
    products = partial_products(arrangement)
    ell = arrangement.dimension
    if weights is None:
        ring = universal_ring(arrangement)
        symbols = _weight_symbols(arrangement, ring)
        lifted = [p.map_to_ring(ring) for p in products]
        out = []
        for j in range(ell):
            total = ring.zero()
            for i in range(arrangement.size):
                c = arrangement.coefficient_rows[i][j]
                if c:
                    total = total + symbols[i] * lifted[i] * c
            out.append(total)
        return out
    lam = arrangement.weights(weights)
    ring = arrangement.ring
    out = []
    for j in range(ell):
        total = ring.zero()
        for i in range(arrangement.size):
            c = arrangement.coefficient_rows[i][j] * lam[i]
            if c:
                total = total + products[i] * c
        out.append(total)
    return out


def pairing(
    arrangement: Arrangement,
    derivation: Derivation,
    weights: Sequence | None = None,
    numerators: Sequence[Polynomial] | None = None,
) -> Polynomial:
    """Pairing of a logarithmic derivation with the critical one-form.

    Computed as (sum of component * cleared numerator) / Q; the division
    is exact exactly when the derivation is logarithmic, so a failure
    here signals corrupt input.  Specialized results are homogeneous of
    the derivation's exponent (coefficient degree minus one).
    """
    if numerators is None:
        numerators = naive_ideal_generators(arrangement, weights)
    ring = numerators[0].ring
    total = ring.zero()
    for j, g in enumerate(derivation.components):
        if g.is_zero():
            continue
        total = total + g.map_to_ring(ring) * numerators[j]
    if total.is_zero():
        return total
    q = arrangement.defining_polynomial
    if ring != arrangement.ring:
        q = q.map_to_ring(ring)
    return exact_divide(total, q)


def pairing_per_form(
    arrangement: Arrangement,
    derivation: Derivation,
    weights: Sequence | None = None,
) -> Polynomial:
    """The same pairing summed form by form: weights * theta(f_i)/f_i.

    Kept as an independent route for cross-checking `pairing`.
    """
    per_form = []
    for f in arrangement.forms:
        image = derivation.apply(f)
        per_form.append(
            arrangement.ring.zero() if image.is_zero() else exact_divide(image, f)
        )
    if weights is None:
        ring = universal_ring(arrangement)
        symbols = _weight_symbols(arrangement, ring)
        total = ring.zero()
        for i, q in enumerate(per_form):
            if not q.is_zero():
                total = total + symbols[i] * q.map_to_ring(ring)
        return total
    lam = arrangement.weights(weights)
    total = arrangement.ring.zero()
    for i, q in enumerate(per_form):
        if lam[i] and not q.is_zero():
            total = total + q * lam[i]
    return total


def logarithmic_ideal_generators(
    arrangement: Arrangement,
    weights: Sequence | None = None,
    search: GeneratorSearch | None = None,
) -> list[Polynomial]:
    """Pairings of the derivation-module generators with the one-form.

    Universal mode (weights=None) produces polynomials in coordinates
    and weight variables, each linear in the weights.
    """
    if search is None:
        search = minimal_derivation_generators(arrangement)
    numerators = naive_ideal_generators(arrangement, weights)
    return [
        pairing(arrangement, theta, weights, numerators)
        for theta in search.generators
    ]


def pairing_injectivity_holds(
    arrangement: Arrangement, degree: int
) -> bool:
    """Faithfulness of the universal pairing on one graded piece.

    For an essential arrangement a vanishing pairing forces the
    derivation to kill every form, hence to vanish; concretely the
    pairings of a basis must stay linearly independent.
    """
    from .logmod import derivation_space

    basis = derivation_space(arrangement, degree)
    if not basis:
        return True
    numerators = naive_ideal_generators(arrangement, None)
    images = [pairing(arrangement, theta, None, numerators) for theta in basis]
    index: dict[tuple[int, ...], int] = {}
    for p in images:
        for e, _ in p.items():
            if e not in index:
                index[e] = len(index)
    rows = []
    for p in images:
        row = [Fraction(0)] * len(index)
        for e, c in p.items():
            row[index[e]] = c
        rows.append(row)
    return rank_of_rows(rows) == len(basis)


# -- ideal-level checks -------------------------------------------------------------


def is_unit_ideal(generators: Sequence[Polynomial], budget: int | None = None) -> bool:
    nonzero = [g for g in generators if not g.is_zero()]
    if not nonzero:
        return False
    if any(g.is_constant() for g in nonzero):
        return True
    return groebner_basis(nonzero, budget=budget).is_trivial


def origin_in_variety(generators: Sequence[Polynomial]) -> bool:
    ring = generators[0].ring
    zero_point = [Fraction(0)] * ring.nvars
    return all(g.evaluate(zero_point) == 0 for g in generators)


def quotient_identity_holds(
    arrangement: Arrangement,
    weights: Sequence | None = None,
    search: GeneratorSearch | None = None,
    budget: int | None = None,
) -> bool:
    """Whether (naive ideal : Q) equals the logarithmic ideal."""
    naive = naive_ideal_generators(arrangement, weights)
    logarithmic = logarithmic_ideal_generators(arrangement, weights, search)
    ring = naive[0].ring
    q = arrangement.defining_polynomial
    if weights is None:
        q = q.map_to_ring(ring)
    quotient = ideal_quotient(naive, q, budget=budget)
    return ideals_equal(quotient, logarithmic, budget=budget)


def saturated_critical_generators(
    arrangement: Arrangement,
    weights: Sequence,
    budget: int | None = None,
) -> list[Polynomial]:
    """The critical ideal with all hyperplane components removed.

    This is the ideal of the critical set taken inside the complement:
    the naive ideal saturated by Q.
    """
    naive = naive_ideal_generators(arrangement, weights)
    if all(g.is_zero() for g in naive):
        return [arrangement.ring.zero()]
    return saturate(naive, arrangement.defining_polynomial, budget=budget)


def critical_point_count(
    arrangement: Arrangement,
    weights: Sequence,
    budget: int | None = None,
) -> int:
    """Number of critical points (with multiplicity) off the hyperplanes.

    Only meaningful when the saturated ideal is zero-dimensional; the
    count is its standard-monomial dimension.
    """
    sat = saturated_critical_generators(arrangement, weights, budget=budget)
    gb = groebner_basis(sat, budget=budget)
    if gb.is_trivial:
        return 0
    return gb.standard_monomial_count()


def direct_sum_identity_holds(
    left: Arrangement,
    right: Arrangement,
    weights_left: Sequence | None = None,
    weights_right: Sequence | None = None,
    budget: int | None = None,
) -> bool:
    """Critical ideal of a product arrangement splits as a sum of lifts.

    With no weights the comparison runs in the universal ring, factor
    ideals lifted with coordinates and weight variables re-indexed into
    place.  With weights given for both factors the comparison runs over
    the product's coordinate ring at the concatenated weights.
    """
    from .arrangement import direct_sum

    if (weights_left is None) != (weights_right is None):
        raise ValueError("give weights for both factors or for neither")
    combined = direct_sum(left, right)
    ell_left = left.dimension
    ell = combined.dimension
    n_left = left.size
    specialized = weights_left is not None
    if specialized:
        joint = tuple(weights_left) + tuple(weights_right)
        total_gens = logarithmic_ideal_generators(combined, joint)
    else:
        total_gens = logarithmic_ideal_generators(combined)
    ring = total_gens[0].ring

    def lift(A: Arrangement, w: Sequence | None, coord_offset: int, weight_offset: int):
        gens = logarithmic_ideal_generators(A, w)
        mapping = {}
        for i in range(A.dimension):
            mapping[i] = coord_offset + i
        if w is None:
            for i in range(A.size):
                mapping[A.dimension + i] = ell + weight_offset + i
        return [remap_variables(g, ring, mapping) for g in gens]

    summed = lift(left, weights_left, 0, 0) + lift(
        right, weights_right, ell_left, n_left
    )
    summed = [g for g in summed if not g.is_zero()]
    total_gens = [g for g in total_gens if not g.is_zero()]
    if not summed or not total_gens:
        return not summed and not total_gens
    return ideals_equal(total_gens, summed, budget=budget)


def fibre_kernel_dimension(
    arrangement: Arrangement, point: Sequence
) -> int:
    """Dimension of the weight-space fibre of the critical variety at a point.

    The point must avoid every hyperplane; the fibre is the kernel of
    the residue matrix (c_ij / f_i(point)) and should have dimension
    (number of hyperplanes) - (rank of the arrangement).
    """
    values = [Fraction(v) for v in point]
    rows = []
    for i in range(arrangement.size):
        fi = arrangement.forms[i].evaluate(values)
        if fi == 0:
            raise ValueError(f"point lies on hyperplane {i}")
        rows.append([c / fi for c in arrangement.coefficient_rows[i]])
    return arrangement.size - rank_of_rows(rows)


def radical_equal(
    left: Sequence[Polynomial],
    right: Sequence[Polynomial],
    budget: int | None = None,
) -> bool:
    """Mutual radical membership of two generator sets."""
    return all(
        radical_membership(right, g, budget=budget) for g in left
    ) and all(radical_membership(left, g, budget=budget) for g in right)
