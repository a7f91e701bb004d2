"""Orlik-Solomon algebra, Aomoto complex, and resonance detection.

The algebra is presented on the no-broken-circuit (NBC) basis of a
central arrangement: independent hyperplane subsets containing no
circuit-minus-its-least-element.  Products of generators with basis
elements are straightened through the circuit boundary relations; the
recursion always replaces an element by a strictly smaller one, so it
terminates, and results are memoized per arrangement.

The weight-dependent differential is left multiplication by the sum of
weighted generators.  Cohomology is computed by exact rank-nullity.
Two cross-checks live here as well: a brute-force model of the algebra
inside the full exterior algebra (used to validate the NBC model on
small instances, central and affine alike), and the contraction
homotopy that forces acyclicity when the weights do not sum to zero.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .arrangement import Arrangement
from .linalg import rank_of_rows
from .polyring import Polynomial

Weights = tuple[Fraction, ...]
Combo = dict[tuple[int, ...], Fraction]


def _shuffle_sign(left: Sequence[int], right: Sequence[int]) -> int:
    """Sign of merging two disjoint ascending runs into ascending order."""
    inversions = 0
    for a in left:
        for b in right:
            if a > b:
                inversions += 1
    return -1 if inversions % 2 else 1


class OrlikSolomon:
    """NBC-basis model of the cohomology algebra of a central arrangement."""

    def __init__(self, arrangement: Arrangement):
        if not arrangement.is_central:
            raise ValueError(
                "the NBC model needs a central arrangement; cone affine ones first"
            )
        self.arrangement = arrangement
        self.rank = arrangement.rank
        self._expand_cache: dict[tuple[int, ...], Combo] = {}
        circuits = arrangement.circuits
        # broken circuit -> its circuit, kept in construction order
        self.broken_circuits: dict[tuple[int, ...], tuple[int, ...]] = {}
        for circuit in circuits:
            self.broken_circuits.setdefault(circuit[1:], circuit)

    # -- basis enumeration ------------------------------------------------

    def nbc_sets(self, degree: int) -> tuple[tuple[int, ...], ...]:
        if degree < 0 or degree > self.rank:
            return ()
        n = self.arrangement.size
        broken = list(self.broken_circuits)
        out = []
        for subset in combinations(range(n), degree):
            sset = set(subset)
            if any(sset >= set(b) for b in broken):
                continue
            out.append(subset)
        return tuple(out)

    def nbc_sizes(self) -> tuple[int, ...]:
        return tuple(len(self.nbc_sets(p)) for p in range(self.rank + 1))

    # -- straightening -----------------------------------------------------

    def expand(self, indices: Sequence[int]) -> Combo:
        """Rewrite a wedge of generators (ascending indices) in the NBC basis.

        Dependent index sets collapse to zero; sets containing a broken
        circuit are rewritten through the corresponding circuit boundary
        relation, each step replacing one index by the circuit's least
        element.
        """
        key = tuple(indices)
        if any(key[i] >= key[i + 1] for i in range(len(key) - 1)):
            raise ValueError("expand() wants strictly ascending indices")
        cached = self._expand_cache.get(key)
        if cached is not None:
            return dict(cached)
        result = self._expand_uncached(key)
        self._expand_cache[key] = result
        return dict(result)

    def _expand_uncached(self, key: tuple[int, ...]) -> Combo:
        broken = None
        for candidate, circuit in self.broken_circuits.items():
            if set(candidate) <= set(key):
                broken = (candidate, circuit)
                break
        if broken is None:
            if self.arrangement.subset_rank(key) < len(key):
                return {}
            return {key: Fraction(1)}
        candidate, circuit = broken
        rest = tuple(i for i in key if i not in set(candidate))
        front_sign = _shuffle_sign(candidate, rest)
        least = circuit[0]
        result: Combo = {}
        # boundary relation: the broken circuit equals a signed sum of the
        # circuit's other facets, each containing the least element
        for j in range(1, len(circuit)):
            facet = circuit[:j] + circuit[j + 1 :]
            coeff = Fraction(front_sign * (-1 if (j + 1) % 2 else 1))
            if set(facet) & set(rest):
                continue
            merge_sign = _shuffle_sign(facet, rest)
            merged = tuple(sorted(facet + rest))
            for term, sub in self._expand_term(merged).items():
                total = coeff * merge_sign * sub
                acc = result.get(term, Fraction(0)) + total
                if acc:
                    result[term] = acc
                else:
                    result.pop(term, None)
        return result

    def _expand_term(self, key: tuple[int, ...]) -> Combo:
        cached = self._expand_cache.get(key)
        if cached is None:
            cached = self._expand_uncached(key)
            self._expand_cache[key] = cached
        return cached

    def multiply_generator(self, j: int, basis_set: Sequence[int]) -> Combo:
        """Expansion of e_j wedged onto an NBC basis element."""
        s = tuple(basis_set)
        if j in s:
            return {}
        position = sum(1 for i in s if i < j)
        sign = -1 if position % 2 else 1
        merged = tuple(sorted(s + (j,)))
        return {
            term: sign * coeff for term, coeff in self.expand(merged).items()
        }

    # -- the weight differential --------------------------------------------

    def omega_rows(self, weights: Weights, degree: int) -> list[list[Fraction]]:
        """Matrix rows of multiplication by the weighted generator sum.

        Row per degree-`degree` basis element, column per degree+1 element.
        """
        source = self.nbc_sets(degree)
        target = self.nbc_sets(degree + 1)
        index = {s: i for i, s in enumerate(target)}
        rows = []
        for s in source:
            row = [Fraction(0)] * len(target)
            for j, lam in enumerate(weights):
                if lam == 0:
                    continue
                for term, coeff in self.multiply_generator(j, s).items():
                    row[index[term]] += lam * coeff
            rows.append(row)
        return rows

    def aomoto_betti(self, weights: Sequence) -> tuple[int, ...]:
        """Cohomology dimensions of (A, weighted multiplication), degrees 0..rank."""
        lam = self.arrangement.weights(weights)
        sizes = self.nbc_sizes()
        ranks = []
        for p in range(self.rank):
            rows = self.omega_rows(lam, p)
            ranks.append(rank_of_rows(rows) if rows else 0)
        ranks.append(0)  # nothing above the top degree
        betti = []
        for p in range(self.rank + 1):
            below = ranks[p - 1] if p > 0 else 0
            betti.append(sizes[p] - ranks[p] - below)
        return tuple(betti)

    def least_nonvanishing(self, weights: Sequence) -> int | None:
        """Least degree with nonzero cohomology; None when acyclic."""
        betti = self.aomoto_betti(weights)
        for p, b in enumerate(betti):
            if b:
                return p
        return None

    # -- boundary contraction (oracle support) -------------------------------

    def boundary_rows(self, degree: int) -> list[list[Fraction]]:
        """Rows of the alternating-sum contraction A_p -> A_{p-1}.

        Subsets of NBC sets stay NBC, so no straightening is needed.
        """
        source = self.nbc_sets(degree)
        target = self.nbc_sets(degree - 1)
        index = {s: i for i, s in enumerate(target)}
        rows = []
        for s in source:
            row = [Fraction(0)] * len(target)
            for j in range(len(s)):
                facet = s[:j] + s[j + 1 :]
                row[index[facet]] += Fraction(-1 if j % 2 else 1)
            rows.append(row)
        return rows


# -- Poincare data -----------------------------------------------------------


def poincare_coefficients(arrangement: Arrangement) -> tuple[int, ...]:
    """Betti numbers of the complement, via NBC sizes (coning when affine)."""
    if arrangement.is_central:
        return OrlikSolomon(arrangement).nbc_sizes()
    from .arrangement import cone

    coned = cone(arrangement)
    upstairs = OrlikSolomon(coned).nbc_sizes()
    # divide the polynomial by (1+t)
    out = []
    carry = 0
    for c in upstairs:
        out.append(c - carry)
        carry = c - carry
    if carry != 0:
        raise AssertionError("cone Poincare polynomial not divisible by 1+t")
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def euler_characteristic_magnitude(arrangement: Arrangement) -> int:
    """|chi| of the complement: alternating sum of the Betti numbers."""
    coeffs = poincare_coefficients(arrangement)
    return abs(sum((-1) ** i * c for i, c in enumerate(coeffs)))


# -- brute-force exterior-algebra model (oracle) --------------------------------


def _affine_intersection_empty(arrangement: Arrangement, subset: tuple[int, ...]) -> bool:
    rows = [list(arrangement.coefficient_rows[i]) for i in subset]
    aug = [
        list(arrangement.coefficient_rows[i]) + [arrangement.constants[i]]
        for i in subset
    ]
    return rank_of_rows(aug) > rank_of_rows(rows)


def _exterior_ideal_rows(
    arrangement: Arrangement, degree: int
) -> tuple[list[list[Fraction]], dict[tuple[int, ...], int]]:
    """Spanning rows of the relation subspace inside the degree-p exterior power.

    Central relations: boundaries of dependent sets.  Affine arrangements
    add the sets with empty common intersection as outright relations,
    and only consistent dependent sets contribute boundaries.
    """
    n = arrangement.size
    basis = list(combinations(range(n), degree))
    index = {s: i for i, s in enumerate(basis)}
    rows: list[list[Fraction]] = []
    for size in (degree, degree + 1):
        for subset in combinations(range(n), size):
            dependent = arrangement.subset_rank(subset) < len(subset)
            empty = (not arrangement.is_central) and _affine_intersection_empty(
                arrangement, subset
            )
            if size == degree and empty:
                row = [Fraction(0)] * len(basis)
                row[index[subset]] = Fraction(1)
                rows.append(row)
                continue
            if size != degree + 1 or not dependent or empty:
                continue
            # boundary of e_subset landing in degree p
            row = [Fraction(0)] * len(basis)
            for j in range(len(subset)):
                facet = subset[:j] + subset[j + 1 :]
                row[index[facet]] += Fraction(-1 if j % 2 else 1)
            rows.append(row)
    # pad with products: e_T * (relation in lower degree) for affine emptiness
    # and boundary relations are generated in all degrees by multiplication,
    # realized here by taking boundaries of all dependent/empty sets of each
    # size and wedging with complementary generators
    extra: list[list[Fraction]] = []
    for size in range(2, degree + 1):
        for subset in combinations(range(n), size):
            dependent = arrangement.subset_rank(subset) < len(subset)
            empty = (not arrangement.is_central) and _affine_intersection_empty(
                arrangement, subset
            )
            if empty:
                # e_subset itself is a relation; wedge with anything disjoint
                others = [i for i in range(n) if i not in subset]
                for rest in combinations(others, degree - size):
                    merged = tuple(sorted(subset + rest))
                    row = [Fraction(0)] * len(basis)
                    row[index[merged]] = Fraction(1)
                    extra.append(row)
                continue
            if not dependent or size > degree + 1:
                continue
            boundary: dict[tuple[int, ...], int] = {}
            for j in range(len(subset)):
                facet = subset[:j] + subset[j + 1 :]
                boundary[facet] = boundary.get(facet, 0) + (-1 if j % 2 else 1)
            # the wedge factor may overlap the subset: only the facets it
            # misses survive, and those products are what put every
            # dependent-set monomial into the span
            for rest in combinations(range(n), degree - size + 1):
                row = [Fraction(0)] * len(basis)
                for facet, c in boundary.items():
                    if set(facet) & set(rest):
                        continue
                    sign = _shuffle_sign(facet, rest)
                    merged = tuple(sorted(facet + rest))
                    row[index[merged]] += Fraction(c * sign)
                if any(row):
                    extra.append(row)
    return rows + extra, index


def brute_force_os_dimensions(arrangement: Arrangement) -> tuple[int, ...]:
    """Graded dimensions of the algebra computed in the full exterior algebra."""
    n = arrangement.size
    top = arrangement.rank
    out = []
    for p in range(top + 1):
        total = len(list(combinations(range(n), p)))
        rows, _ = _exterior_ideal_rows(arrangement, p)
        cut = rank_of_rows(rows) if rows else 0
        out.append(total - cut)
    return tuple(out)


def brute_force_aomoto_betti(
    arrangement: Arrangement, weights: Sequence
) -> tuple[int, ...]:
    """Aomoto cohomology computed in the exterior algebra modulo relations.

    Independent of the NBC model: cocycles are the preimage of the
    degree-(p+1) relation space under multiplication by the weighted
    generator sum, coboundaries the image of degree p-1 plus relations.
    """
    lam = arrangement.weights(weights)
    n = arrangement.size
    top = arrangement.rank

    def wedge_rows(degree: int) -> list[list[Fraction]]:
        source = list(combinations(range(n), degree))
        target = list(combinations(range(n), degree + 1))
        tindex = {s: i for i, s in enumerate(target)}
        rows = []
        for s in source:
            row = [Fraction(0)] * len(target)
            for j in range(n):
                if j in s:
                    continue
                if lam[j] == 0:
                    continue
                position = sum(1 for i in s if i < j)
                sign = -1 if position % 2 else 1
                merged = tuple(sorted(s + (j,)))
                row[tindex[merged]] += lam[j] * sign
            rows.append(row)
        return rows

    ideal_rank = []
    ideal_rows_per_degree = []
    for p in range(top + 2):
        rows, _ = _exterior_ideal_rows(arrangement, p)
        ideal_rows_per_degree.append(rows)
        ideal_rank.append(rank_of_rows(rows) if rows else 0)

    betti = []
    for p in range(top + 1):
        dim_p = len(list(combinations(range(n), p)))
        quotient_dim = dim_p - ideal_rank[p]
        # cocycles: v with (omega ^ v) inside the relation space one degree up;
        # the composite rank is rank([relations; mul]) minus the relation rank
        mul = wedge_rows(p)
        relations_up = ideal_rows_per_degree[p + 1]
        up_rank = ideal_rank[p + 1]
        image_rows = [list(r) for r in relations_up] + [list(r) for r in mul]
        img_rank = rank_of_rows(image_rows) if image_rows else 0
        kernel_dim = dim_p - (img_rank - up_rank)
        # coboundaries within the quotient
        if p == 0:
            boundary_dim = 0
        else:
            prev = wedge_rows(p - 1)
            low = [list(r) for r in ideal_rows_per_degree[p]]
            both = low + [list(r) for r in prev]
            boundary_dim = (rank_of_rows(both) if both else 0) - ideal_rank[p]
        betti.append(kernel_dim - ideal_rank[p] - boundary_dim)
    return tuple(betti)
