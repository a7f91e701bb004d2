"""Groebner bases over Q with fraction-free internals.

The Buchberger loop works on primitive integer coefficient dictionaries
(content stripped, positive leading coefficient) so that every division
performed is exact; rational arithmetic only enters when the final
reduced basis is normalized to monic form.  Orders are plain key
functions on exponent tuples, so elimination orders are just a
different key.  All computations are deterministic: pair selection is
by (lcm key, i, j) and every tie is broken by construction order.

A step budget guards against runaway computations.  Exceeding it raises
BudgetExceededError rather than returning a partial basis.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from heapq import heappop, heappush
from math import gcd
from typing import Callable, Iterable, Sequence

from .polyring import Polynomial, Ring, exact_divide, grevlex_key

Exponent = tuple[int, ...]
OrderKey = Callable[[Exponent], object]

DEFAULT_BUDGET = 2_000_000
BUDGET_ENV_VAR = "WORKBENCH_BUDGET"


class BudgetExceededError(RuntimeError):
    """The Groebner computation hit its step budget before finishing."""

    def __init__(self, steps: int, budget: int):
        super().__init__(
            f"Groebner computation exceeded its budget ({steps} steps, "
            f"budget {budget}); raise it via the budget argument or the "
            f"{BUDGET_ENV_VAR} environment variable"
        )
        self.steps = steps
        self.budget = budget


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None:
        return DEFAULT_BUDGET
    return int(raw)


# -- monomial orders -----------------------------------------------------------


@dataclass(frozen=True)
class MonomialOrder:
    """A total order on exponent tuples given by a sort key (max = leading)."""

    name: str
    key: OrderKey

    def leading(self, exponents: Iterable[Exponent]) -> Exponent:
        return max(exponents, key=self.key)


def grevlex_order() -> MonomialOrder:
    return MonomialOrder("grevlex", grevlex_key)


def elimination_order(main: int, tags: int) -> MonomialOrder:
    """Block order with the last `tags` variables dominating the first `main`.

    Leading monomial free of the tag block forces the whole polynomial
    to be tag-free, which is what elimination needs.
    """

    def key(exp: Exponent):
        return (grevlex_key(exp[main:]), grevlex_key(exp[:main]))

    return MonomialOrder(f"eliminate-last-{tags}", key)


# -- integer polynomial helpers -------------------------------------------------

IntPoly = dict  # Exponent -> int


def _content(poly: IntPoly) -> int:
    return reduce(gcd, poly.values(), 0)


def _primitive(poly: IntPoly, lead_exp: Exponent | None = None) -> IntPoly:
    """Strip content; make the leading coefficient positive when known."""
    if not poly:
        return poly
    c = _content(poly)
    if lead_exp is not None and poly[lead_exp] < 0:
        c = -c
    if c != 1:
        return {e: v // c for e, v in poly.items()}
    return dict(poly)


def _to_int_poly(p: Polynomial) -> IntPoly:
    denominator = 1
    for _, c in p.items():
        denominator = denominator * c.denominator // gcd(denominator, c.denominator)
    out = {e: int(c * denominator) for e, c in p.items()}
    return _primitive(out)


def _divides_exp(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def _lcm_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


class _Budget:
    __slots__ = ("limit", "steps")

    def __init__(self, limit: int):
        self.limit = limit
        self.steps = 0

    def spend(self, amount: int = 1):
        self.steps += amount
        if self.steps > self.limit:
            raise BudgetExceededError(self.steps, self.limit)


def _normal_form_int(
    poly: IntPoly,
    basis: Sequence[IntPoly],
    lms: Sequence[Exponent],
    order: MonomialOrder,
    budget: _Budget,
) -> IntPoly:
    """Fraction-free full normal form, returned primitive. Scale is dropped."""
    work = dict(poly)
    out: IntPoly = {}
    key = order.key
    strip_countdown = 32
    while work:
        exp = max(work, key=key)
        coeff = work.pop(exp)
        if coeff == 0:
            continue
        reducer = None
        for idx, lm in enumerate(lms):
            if _divides_exp(lm, exp):
                reducer = idx
                break
        if reducer is None:
            out[exp] = coeff
            continue
        g = basis[reducer]
        glm = lms[reducer]
        glc = g[glm]
        d = gcd(coeff, glc)
        scale_self = glc // d
        scale_g = coeff // d
        if scale_self != 1:
            for e in work:
                work[e] *= scale_self
            for e in out:
                out[e] *= scale_self
        shift = _sub_exp(exp, glm)
        for e, v in g.items():
            if e == glm:
                continue
            target = _add_exp(e, shift)
            new = work.get(target, 0) - scale_g * v
            if new:
                work[target] = new
            else:
                work.pop(target, None)
        budget.spend()
        strip_countdown -= 1
        if strip_countdown == 0:
            strip_countdown = 32
            everything = list(work.values()) + list(out.values())
            c = reduce(gcd, everything, 0)
            if c > 1:
                for e in work:
                    work[e] //= c
                for e in out:
                    out[e] //= c
    if not out:
        return {}
    return _primitive(out, max(out, key=key))


def _buchberger(
    generators: Sequence[IntPoly], order: MonomialOrder, budget: _Budget
) -> list[IntPoly]:
    key = order.key
    basis: list[IntPoly] = []
    lms: list[Exponent] = []

    for g in generators:
        if g:
            basis.append(_primitive(g, max(g, key=key)))
            lms.append(max(g, key=key))

    heap: list = []
    processed: set[tuple[int, int]] = set()

    def push_pairs(j: int):
        for i in range(j):
            lcm = _lcm_exp(lms[i], lms[j])
            heappush(heap, (key(lcm), i, j, lcm))

    for j in range(len(basis)):
        push_pairs(j)

    while heap:
        _, i, j, lcm = heappop(heap)
        processed.add((i, j))
        # product criterion: coprime leading monomials reduce to zero
        if lcm == _add_exp(lms[i], lms[j]):
            continue
        # chain criterion: a third element dividing the lcm, both of whose
        # pairs with i and j are already handled, makes this pair redundant
        skip = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if not _divides_exp(lms[k], lcm):
                continue
            pik = (min(i, k), max(i, k))
            pjk = (min(j, k), max(j, k))
            if pik in processed and pjk in processed:
                skip = True
                break
        if skip:
            continue
        f, g = basis[i], basis[j]
        cf, cg = f[lms[i]], g[lms[j]]
        d = gcd(cf, cg)
        shift_f = _sub_exp(lcm, lms[i])
        shift_g = _sub_exp(lcm, lms[j])
        spoly: IntPoly = {}
        mf = cg // d
        for e, v in f.items():
            spoly[_add_exp(e, shift_f)] = mf * v
        mg = cf // d
        for e, v in g.items():
            target = _add_exp(e, shift_g)
            new = spoly.get(target, 0) - mg * v
            if new:
                spoly[target] = new
            else:
                spoly.pop(target, None)
        budget.spend()
        remainder = _normal_form_int(spoly, basis, lms, order, budget)
        if remainder:
            basis.append(remainder)
            lms.append(max(remainder, key=key))
            push_pairs(len(basis) - 1)
    return basis


def _minimalize(
    basis: list[IntPoly], order: MonomialOrder
) -> list[IntPoly]:
    key = order.key
    lms = [max(g, key=key) for g in basis]
    keep = []
    for i, lm in enumerate(lms):
        redundant = False
        for j, other in enumerate(lms):
            if i == j:
                continue
            if _divides_exp(other, lm) and (other != lm or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    return [basis[i] for i in keep]


# -- public objects --------------------------------------------------------------


class GroebnerBasis:
    """A reduced Groebner basis: monic, tail-reduced, canonically sorted."""

    def __init__(self, ring: Ring, order: MonomialOrder, polys: Sequence[Polynomial]):
        self.ring = ring
        self.order = order
        self.polys = tuple(polys)
        self._lms = tuple(
            max((e for e, _ in p.items()), key=order.key) for p in self.polys
        )

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroebnerBasis)
            and self.ring == other.ring
            and self.order.name == other.order.name
            and self.polys == other.polys
        )

    def __hash__(self):
        return hash((self.ring, self.order.name, self.polys))

    def __repr__(self):
        return f"GroebnerBasis({len(self.polys)} elements, {self.order.name})"

    @property
    def is_trivial(self) -> bool:
        """True when 1 lies in the ideal (the variety is empty)."""
        return len(self.polys) == 1 and self.polys[0].is_constant()

    def leading_exponents(self) -> tuple[Exponent, ...]:
        return self._lms

    def normal_form(self, p: Polynomial) -> Polynomial:
        """Remainder of p modulo the basis; canonical since the basis is reduced."""
        if p.ring != self.ring:
            p = p.map_to_ring(self.ring)
        key = self.order.key
        work = {e: c for e, c in p.items()}
        out: dict[Exponent, Fraction] = {}
        while work:
            exp = max(work, key=key)
            coeff = work.pop(exp)
            if coeff == 0:
                continue
            hit = None
            for idx, lm in enumerate(self._lms):
                if _divides_exp(lm, exp):
                    hit = idx
                    break
            if hit is None:
                out[exp] = coeff
                continue
            g = self.polys[hit]
            shift = _sub_exp(exp, self._lms[hit])
            for e, v in g.items():
                if e == self._lms[hit]:
                    continue
                target = _add_exp(e, shift)
                new = work.get(target, Fraction(0)) - coeff * v
                if new:
                    work[target] = new
                else:
                    work.pop(target, None)
        return self.ring.polynomial(out)

    def contains(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero()

    def contains_ideal(self, gens: Iterable[Polynomial]) -> bool:
        return all(self.contains(g) for g in gens)

    # -- dimension theory -----------------------------------------------

    def dimension(self) -> int:
        """Krull dimension of the quotient (-1 for the unit ideal).

        The dimension equals the largest number of variables spanning a
        coordinate subspace that meets no leading-monomial support,
        which is the variable count minus a minimum hitting set of the
        supports.
        """
        if self.is_trivial:
            return -1
        supports = sorted(
            {frozenset(i for i, e in enumerate(lm) if e) for lm in self._lms},
            key=lambda s: (len(s), sorted(s)),
        )
        if not supports:
            return self.ring.nvars
        best = len(supports[0]) if supports else 0
        # branch and bound on the minimum hitting set
        nvars = self.ring.nvars
        best_size = nvars + 1

        def search(chosen: frozenset, remaining: tuple):
            nonlocal best_size
            if len(chosen) >= best_size:
                return
            uncovered = None
            for s in remaining:
                if not (s & chosen):
                    uncovered = s
                    break
            if uncovered is None:
                best_size = len(chosen)
                return
            for var in sorted(uncovered):
                search(chosen | {var}, remaining)

        search(frozenset(), tuple(supports))
        return nvars - best_size

    def codimension(self) -> int:
        if self.is_trivial:
            raise ValueError("unit ideal: the variety is empty, codimension undefined")
        return self.ring.nvars - self.dimension()

    def standard_monomial_count(self) -> int:
        """Number of monomials outside the leading-term ideal (must be finite)."""
        caps = self._pure_power_caps()
        count = 0
        for exp in self._standard_monomials(caps):
            count += 1
        return count

    def standard_monomials(self) -> list[Exponent]:
        caps = self._pure_power_caps()
        return sorted(self._standard_monomials(caps), key=self.order.key)

    def _pure_power_caps(self) -> list[int]:
        nvars = self.ring.nvars
        caps = [None] * nvars
        for lm in self._lms:
            support = [i for i, e in enumerate(lm) if e]
            if len(support) == 1:
                i = support[0]
                if caps[i] is None or lm[i] < caps[i]:
                    caps[i] = lm[i]
        missing = [self.ring.variables[i] for i in range(nvars) if caps[i] is None]
        if missing:
            raise ValueError(
                "not a zero-dimensional ideal: no pure power of "
                + ", ".join(missing)
            )
        return caps

    def _standard_monomials(self, caps: list[int]):
        nvars = self.ring.nvars

        def rec(prefix: list[int], i: int):
            if i == nvars:
                exp = tuple(prefix)
                if not any(_divides_exp(lm, exp) for lm in self._lms):
                    yield exp
                return
            for e in range(caps[i]):
                prefix.append(e)
                yield from rec(prefix, i + 1)
                prefix.pop()

        yield from rec([], 0)


def groebner_basis(
    generators: Sequence[Polynomial],
    order: MonomialOrder | None = None,
    budget: int | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the given generators (all in one ring)."""
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        raise ValueError("no nonzero generators")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators live in different rings")
    if order is None:
        order = grevlex_order()
    tracker = _Budget(default_budget() if budget is None else budget)
    raw = _buchberger([_to_int_poly(g) for g in gens], order, tracker)
    minimal = _minimalize(raw, order)
    # tail-reduce over Q for the canonical reduced basis
    key = order.key
    minimal.sort(key=lambda g: key(max(g, key=key)))
    reduced: list[dict] = []
    lms = [max(g, key=key) for g in minimal]
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        other_lms = lms[:i] + lms[i + 1 :]
        remainder = _normal_form_int(dict(g), others, other_lms, order, tracker)
        reduced.append(remainder)
    polys = []
    for g in reduced:
        lm = max(g, key=key)
        lc = g[lm]
        polys.append(ring.polynomial({e: Fraction(v, lc) for e, v in g.items()}))
    polys.sort(key=lambda p: key(max(e for e, _ in p.items())))
    return GroebnerBasis(ring, order, polys)


# -- derived ideal operations ------------------------------------------------------


def _tagged_ring(ring: Ring) -> tuple[Ring, int]:
    name = "_t"
    while name in ring.variables:
        name = "_" + name
    extended = ring.extend((name,))
    return extended, extended.nvars - 1


def _drop_tag(p: Polynomial, ring: Ring, tag: int) -> Polynomial | None:
    """Map a tag-free polynomial down to the base ring (None if tag occurs)."""
    terms = {}
    for e, c in p.items():
        if e[tag] != 0:
            return None
        terms[e[:tag] + e[tag + 1 :]] = c
    return ring.polynomial(terms)


def ideal_quotient(
    generators: Sequence[Polynomial],
    divisor: Polynomial,
    budget: int | None = None,
) -> list[Polynomial]:
    """Generators of (I : f) via I ∩ (f) computed with one tag variable."""
    if divisor.is_zero():
        raise ValueError("cannot take a quotient by zero")
    ring = generators[0].ring
    extended, tag = _tagged_ring(ring)
    t = extended.var(tag)
    lifted = [g.map_to_ring(extended) * t for g in generators]
    f_ext = divisor.map_to_ring(extended)
    lifted.append((t - 1) * f_ext)
    order = elimination_order(ring.nvars, 1)
    basis = groebner_basis(lifted, order, budget=budget)
    out = []
    for p in basis:
        low = _drop_tag(p, ring, tag)
        if low is not None:
            out.append(exact_divide(low, divisor))
    if not out:
        out = [ring.zero()]
    return out


def saturate(
    generators: Sequence[Polynomial],
    divisor: Polynomial,
    budget: int | None = None,
) -> list[Polynomial]:
    """Generators of (I : f^∞) by inverting f with one tag variable."""
    if divisor.is_zero():
        raise ValueError("cannot saturate by zero")
    ring = generators[0].ring
    extended, tag = _tagged_ring(ring)
    t = extended.var(tag)
    lifted = [g.map_to_ring(extended) for g in generators]
    lifted.append(t * divisor.map_to_ring(extended) - 1)
    order = elimination_order(ring.nvars, 1)
    basis = groebner_basis(lifted, order, budget=budget)
    out = []
    for p in basis:
        low = _drop_tag(p, ring, tag)
        if low is not None:
            out.append(low)
    if not out:
        out = [ring.zero()]
    return out


def radical_membership(
    generators: Sequence[Polynomial],
    candidate: Polynomial,
    budget: int | None = None,
) -> bool:
    """True when the candidate vanishes on V(I) (Rabinowitsch trick)."""
    if candidate.is_zero():
        return True
    ring = generators[0].ring
    extended, tag = _tagged_ring(ring)
    t = extended.var(tag)
    lifted = [g.map_to_ring(extended) for g in generators]
    lifted.append(t * candidate.map_to_ring(extended) - 1)
    basis = groebner_basis(lifted, grevlex_order(), budget=budget)
    return basis.is_trivial


def ideals_equal(
    left: Sequence[Polynomial],
    right: Sequence[Polynomial],
    budget: int | None = None,
) -> bool:
    """Ideal equality through mutual membership against reduced bases."""
    left_nonzero = [g for g in left if not g.is_zero()]
    right_nonzero = [g for g in right if not g.is_zero()]
    if not left_nonzero or not right_nonzero:
        return not left_nonzero and not right_nonzero
    gb_left = groebner_basis(left_nonzero, budget=budget)
    gb_right = groebner_basis(right_nonzero, budget=budget)
    return gb_left.polys == gb_right.polys
