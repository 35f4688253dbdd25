"""Squarefree monomial ideals, edge ideals and colon/sum arithmetic.

Monomial supports are bitmasks over variable indices.  The one nontrivial
operation here is the colon decomposition of (I(G) : pivot)/I(G) into free
summands over smaller rings, together with a degree-by-degree dimension
verifier that counts standard monomials on both sides independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Sequence

from .graphs import Graph, bits, is_connected

DEFAULT_DEGREE_CAP = 6


class DegreeCapError(ValueError):
    """Requested standard-monomial degree exceeds the configured cap."""


@dataclass(frozen=True, order=True)
class SquarefreeMonomial:
    """A squarefree monomial, stored as the bitmask of its support."""

    support: int

    def __post_init__(self) -> None:
        if self.support < 0:
            raise ValueError("support mask must be nonnegative")

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> "SquarefreeMonomial":
        mask = 0
        for i in indices:
            mask |= 1 << i
        return cls(mask)

    @property
    def degree(self) -> int:
        return self.support.bit_count()

    def variables(self) -> tuple[int, ...]:
        return tuple(bits(self.support))

    def divides_support(self, support: int) -> bool:
        return self.support & ~support == 0


@dataclass(frozen=True)
class MonomialIdeal:
    """Squarefree monomial ideal with a minimal generating set.

    ambient_vars is carried explicitly so quotients over different subrings
    can never be silently conflated.
    """

    ambient_vars: int
    generators: tuple[SquarefreeMonomial, ...]

    def __post_init__(self) -> None:
        full = (1 << self.ambient_vars) - 1
        seen = set()
        for gen in self.generators:
            if gen.support == 0:
                raise ValueError("generators must have nonempty support")
            if gen.support & ~full:
                raise ValueError("generator support exceeds ambient variables")
            if gen.support in seen:
                raise ValueError("duplicate generator")
            seen.add(gen.support)
        for g1 in seen:
            for g2 in seen:
                if g1 != g2 and g1 & ~g2 == 0:
                    raise ValueError("generating set is not minimal")
        ordered = tuple(sorted(self.generators, key=lambda m: (m.degree, m.support)))
        object.__setattr__(self, "generators", ordered)

    @classmethod
    def create(cls, ambient_vars: int, supports: Iterable[int]) -> "MonomialIdeal":
        """Build from arbitrary supports, discarding non-minimal generators."""
        return cls(ambient_vars, tuple(map(SquarefreeMonomial, _minimalize(supports))))

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def generator_supports(self) -> tuple[int, ...]:
        return tuple(g.support for g in self.generators)

    def contains_support(self, support: int) -> bool:
        """Membership of the squarefree monomial with the given support."""
        return any(g.support & ~support == 0 for g in self.generators)

    def contains_exponents(self, exponents: Sequence[int]) -> bool:
        """Membership of an arbitrary monomial given by its exponent vector."""
        support = 0
        for i, e in enumerate(exponents):
            if e:
                support |= 1 << i
        return self.contains_support(support)


def _minimalize(supports: Iterable[int]) -> list[int]:
    uniq = sorted(set(supports), key=lambda m: (m.bit_count(), m))
    out: list[int] = []
    for m in uniq:
        if not any(kept & ~m == 0 for kept in out):
            out.append(m)
    return out


def edge_ideal(g: Graph) -> MonomialIdeal:
    """One degree-2 generator per edge of the graph."""
    return MonomialIdeal.create(
        g.num_vertices, ((1 << u) | (1 << v) for u, v in g.edges())
    )


def colon_by_monomial(ideal: MonomialIdeal, u: SquarefreeMonomial) -> MonomialIdeal:
    """(I : u) for a squarefree monomial u not in I."""
    if ideal.contains_support(u.support):
        raise ValueError("colon by a monomial inside the ideal is the unit ideal")
    return MonomialIdeal.create(
        ideal.ambient_vars, (g.support & ~u.support for g in ideal.generators)
    )


def add_monomials(
    ideal: MonomialIdeal, monomials: Iterable[SquarefreeMonomial]
) -> MonomialIdeal:
    """(I, m1, m2, ...), reminimalized."""
    sups = list(ideal.generator_supports()) + [m.support for m in monomials]
    return MonomialIdeal.create(ideal.ambient_vars, sups)


def extend_ring(ideal: MonomialIdeal, extra_vars: int = 1) -> MonomialIdeal:
    """Same generators viewed in a ring with extra free variables appended."""
    if extra_vars < 0:
        raise ValueError("extra_vars must be nonnegative")
    return MonomialIdeal(ideal.ambient_vars + extra_vars, ideal.generators)


# ---------------------------------------------------------------------------
# Standard monomial counting (two independent routes)
# ---------------------------------------------------------------------------


def standard_monomial_count(
    ideal: MonomialIdeal,
    degree: int,
    method: str = "inclusion-exclusion",
    cap: int = DEFAULT_DEGREE_CAP,
) -> int:
    """Number of degree-d monomials of the ambient ring not lying in the ideal.

    method='inclusion-exclusion' sums signed multiple-counts over lcms of
    generator subsets; method='enumeration' walks every degree-d monomial.
    The two must agree; tests cross-check them.
    """
    if degree < 0:
        return 0
    if degree > cap:
        raise DegreeCapError(f"degree {degree} exceeds cap {cap}")
    if method == "inclusion-exclusion":
        return _count_inclusion_exclusion(ideal, degree)
    if method == "enumeration":
        return _count_enumeration(ideal, degree)
    raise ValueError(f"unknown method {method!r}")


def _monomials_of_degree(q: int, d: int) -> int:
    return comb(d + q - 1, q - 1) if q > 0 else (1 if d == 0 else 0)


def _count_inclusion_exclusion(ideal: MonomialIdeal, degree: int) -> int:
    q = ideal.ambient_vars
    gens = ideal.generator_supports()
    total = _monomials_of_degree(q, degree)

    # DFS over generator subsets; the lcm of a squarefree set is the support
    # union, and once it outgrows the degree every superset contributes 0.
    in_ideal = 0

    def walk(start: int, lcm: int, sign: int) -> None:
        nonlocal in_ideal
        for idx in range(start, len(gens)):
            new = lcm | gens[idx]
            k = new.bit_count()
            if k > degree:
                continue
            in_ideal += sign * _monomials_of_degree(q, degree - k)
            walk(idx + 1, new, -sign)

    walk(0, 0, 1)
    return total - in_ideal


def _count_enumeration(ideal: MonomialIdeal, degree: int) -> int:
    q = ideal.ambient_vars
    if q == 0:
        return 1 if degree == 0 else 0
    count = 0
    for combo in combinations_with_replacement(range(q), degree):
        support = 0
        for v in combo:
            support |= 1 << v
        if not ideal.contains_support(support):
            count += 1
    return count


# ---------------------------------------------------------------------------
# Colon decomposition of (I(G) : pivot)/I(G)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ColonSummand:
    """One free summand (S_t/J_t)[adjoined variable] of a colon quotient.

    ring_vars is the bitmask of the summand's ring variables in the parent
    graph's indexing; ideal is J_t re-indexed to those variables (sorted
    ascending).  The adjoined variable is kept separate from ring_vars.
    """

    ring_vars: int
    ideal: MonomialIdeal
    adjoined_var: int

    def __post_init__(self) -> None:
        if (self.ring_vars >> self.adjoined_var) & 1:
            raise ValueError("adjoined variable must not lie in the summand ring")
        if self.ideal.ambient_vars != self.ring_vars.bit_count():
            raise ValueError("summand ideal ambient must match ring variable count")


def colon_decomposition(
    g: Graph, pivot: int, order: Sequence[int] | None = None
) -> list[ColonSummand]:
    """Free-summand decomposition of (I(G) : x_pivot)/I(G) for connected G.

    A monomial of the colon quotient is divisible by some neighbor of the
    pivot; bucketing by the first neighbor (in ``order``) that divides it
    yields one summand per neighbor t:

        ring_t = V minus N(neighbor_t) minus earlier neighbors,
        J_t    = edges of G inside ring_t,

    with neighbor_t itself adjoined as a free variable.  ``order`` defaults
    to ascending vertex index; the summand list depends on it, the direct sum
    does not.
    """
    if not is_connected(g):
        raise ValueError("colon decomposition requires a connected graph")
    nbrs = sorted(bits(g.adjacency[pivot]))
    if not nbrs:
        raise ValueError("pivot vertex has no neighbors")
    if order is None:
        order = nbrs
    elif sorted(order) != nbrs:
        raise ValueError("order must be a permutation of the pivot's neighborhood")

    full = (1 << g.num_vertices) - 1
    ideal = edge_ideal(g)
    summands = []
    earlier = 0
    for nb in order:
        ring = full & ~g.adjacency[nb] & ~earlier & ~(1 << nb)
        keep = list(bits(ring))
        pos = {v: i for i, v in enumerate(keep)}
        gens = []
        for gen in ideal.generator_supports():
            if gen & ~ring == 0:
                reindexed = 0
                for v in bits(gen):
                    reindexed |= 1 << pos[v]
                gens.append(reindexed)
        summands.append(
            ColonSummand(
                ring_vars=ring,
                ideal=MonomialIdeal.create(len(keep), gens),
                adjoined_var=nb,
            )
        )
        earlier |= 1 << nb
    return summands


def verify_colon_decomposition(
    g: Graph,
    pivot: int,
    dmax: int,
    order: Sequence[int] | None = None,
    cap: int = DEFAULT_DEGREE_CAP,
) -> bool:
    """Check the colon decomposition degree by degree up to dmax.

    The left side counts monomials of each degree d lying in (I : pivot) but
    not in I by direct enumeration; the right side sums, over summands, the
    degree d-1 standard monomials of J_t with the adjoined variable free.
    Degree d-1 because each summand sits inside the quotient shifted by one
    (its elements are multiples of the adjoined variable).
    """
    if dmax > cap:
        raise DegreeCapError(f"dmax {dmax} exceeds cap {cap}")
    ideal = edge_ideal(g)
    summands = colon_decomposition(g, pivot, order=order)
    q = g.num_vertices
    pivot_bit = 1 << pivot
    for d in range(dmax + 1):
        lhs = 0
        for combo in combinations_with_replacement(range(q), d):
            support = 0
            for v in combo:
                support |= 1 << v
            if ideal.contains_support(support | pivot_bit) and not ideal.contains_support(support):
                lhs += 1
        rhs = sum(
            standard_monomial_count(extend_ring(s.ideal), d - 1, cap=cap)
            for s in summands
        )
        if lhs != rhs:
            return False
    return True
