"""Graded Betti numbers of edge-ideal quotients via induced-subcomplex homology.

For a graph G on q vertices, beta_{i,j} of S/I(G) equals the sum over
j-subsets sigma of dim H~_{j-i-1} of the independence complex of G[sigma].
This module enumerates the 2^q subsets, computes reduced homology by exact
rank computations over a chosen field, and extracts depth, projective
dimension and regularity from the resulting table.

Two speedups, both exact:
  * subsets inducing an isolated vertex are skipped (their complex is a cone),
  * per-subset homology factors over connected components (topological join),
    so each connected piece is computed once and reused.
A flag disables the first so tests can confirm it changes nothing.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graphs import Graph, bits, components_of_mask

ORACLE_VERTEX_CAP = 20
SLOW_TIER_MIN = 16


class OracleSizeError(ValueError):
    """Graph too large for the subset-enumeration oracle."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: characteristic p > 0 for GF(p), 0 for the rationals."""

    characteristic: int

    def __post_init__(self) -> None:
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise ValueError("field characteristic must be 0 or a prime")

    def __str__(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


GF2 = FieldSpec(2)
GF32003 = FieldSpec(32003)
RATIONALS = FieldSpec(0)
DEFAULT_FIELDS = (GF2, GF32003)


@dataclass(frozen=True)
class BettiTable:
    """Nonzero beta_{i,j} multiplicities of S/I(G)."""

    ambient_vars: int
    entries: tuple[tuple[tuple[int, int], int], ...]

    @classmethod
    def from_dict(cls, ambient_vars: int, data: dict[tuple[int, int], int]) -> "BettiTable":
        items = tuple(sorted((ij, m) for ij, m in data.items() if m))
        return cls(ambient_vars, items)

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.entries)

    def betti(self, i: int, j: int) -> int:
        return self.as_dict().get((i, j), 0)

    @property
    def pdim(self) -> int:
        return max(i for (i, _j), _m in self.entries)

    @property
    def reg(self) -> int:
        return max(j - i for (i, j), _m in self.entries)


@dataclass(frozen=True)
class InvariantReport:
    """depth/pdim/reg of one quotient ring, with computation provenance."""

    depth: int
    pdim: int
    reg: int
    ambient_vars: int
    field: FieldSpec
    method: str

    def __post_init__(self) -> None:
        if self.depth + self.pdim != self.ambient_vars:
            raise ValueError("depth + pdim must equal the number of variables")


@dataclass(frozen=True)
class CrossFieldReport:
    """Comparison of Betti tables over two prime fields, with rational arbiter."""

    fields: tuple[FieldSpec, FieldSpec]
    tables: tuple[BettiTable, BettiTable]
    equal: bool
    differing: tuple[tuple[int, int, int, int], ...]  # (i, j, mult_1, mult_2)
    arbiter: BettiTable | None


# ---------------------------------------------------------------------------
# Exact rank computation
# ---------------------------------------------------------------------------

SparseColumns = list[list[tuple[int, int]]]


def _rank_gf2(columns: SparseColumns) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for col in columns:
        acc = 0
        for row, _sign in col:
            acc ^= 1 << row
        while acc:
            p = acc.bit_length() - 1
            other = pivots.get(p)
            if other is None:
                pivots[p] = acc
                rank += 1
                break
            acc ^= other
    return rank


def _rank_mod_p(columns: SparseColumns, p: int) -> int:
    # sparse column reduction: keep one normalized column per pivot row
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for col in columns:
        cur = {row: sign % p for row, sign in col}
        while cur:
            piv = max(cur)
            other = pivots.get(piv)
            if other is None:
                inv = pow(cur[piv], p - 2, p)
                pivots[piv] = {r: (c * inv) % p for r, c in cur.items()}
                rank += 1
                break
            f = cur[piv]
            for r, c in other.items():
                v = (cur.get(r, 0) - f * c) % p
                if v:
                    cur[r] = v
                else:
                    cur.pop(r, None)
    return rank


def _rank_rational(nrows: int, columns: SparseColumns) -> int:
    ncols = len(columns)
    mat = [[Fraction(0)] * ncols for _ in range(nrows)]
    for j, col in enumerate(columns):
        for row, sign in col:
            mat[row][j] = Fraction(sign)
    rank = 0
    for j in range(ncols):
        piv = next((i for i in range(rank, nrows) if mat[i][j]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][j]
        mat[rank] = [x * inv for x in mat[rank]]
        for i in range(rank + 1, nrows):
            f = mat[i][j]
            if f:
                row = mat[rank]
                mat[i] = [a - f * b for a, b in zip(mat[i], row)]
        rank += 1
        if rank == nrows:
            break
    return rank


def _boundary_columns(lower: Sequence[int], upper: Sequence[int]) -> SparseColumns:
    row_index = {m: i for i, m in enumerate(lower)}
    columns = []
    for m in upper:
        col = []
        sign = 1
        rest = m
        while rest:
            low = rest & -rest
            col.append((row_index[m ^ low], sign))
            sign = -sign
            rest ^= low
        columns.append(col)
    return columns


def _boundary_rank(lower: Sequence[int], upper: Sequence[int], field: FieldSpec) -> int:
    if not lower or not upper:
        return 0
    columns = _boundary_columns(lower, upper)
    if field.characteristic == 2:
        return _rank_gf2(columns)
    if field.characteristic == 0:
        return _rank_rational(len(lower), columns)
    return _rank_mod_p(columns, field.characteristic)


# ---------------------------------------------------------------------------
# Reduced homology
# ---------------------------------------------------------------------------


def _homology_from_faces(faces_by_size: Sequence[Sequence[int]], field: FieldSpec) -> list[int]:
    """Reduced homology dims from faces-as-masks grouped by cardinality.

    faces_by_size[s] holds the size-s faces; faces_by_size[0] must be [0]
    (the empty face).  Returns h with h[s] = dim H~_{s-1}, trailing zeros
    stripped.
    """
    top = len(faces_by_size) - 1
    ranks = [0] * (top + 2)
    for s in range(1, top + 1):
        ranks[s] = _boundary_rank(faces_by_size[s - 1], faces_by_size[s], field)
    h = [len(faces_by_size[s]) - ranks[s] - ranks[s + 1] for s in range(top + 1)]
    while h and h[-1] == 0:
        h.pop()
    return h


def reduced_homology_dims(
    faces_by_dim: Sequence[Sequence[Sequence[int]]], field: FieldSpec
) -> list[int]:
    """Reduced homology dimensions of a simplicial complex, indexed from -1.

    faces_by_dim[k] lists the k-dimensional faces as vertex-index iterables;
    the empty face is implicit.  The complex must be closed under taking
    subsets (checked).  Position s of the result is dim H~_{s-1}, so a
    2-sphere yields [0, 0, 0, 1].
    """
    faces_by_size: list[list[int]] = [[0]]
    seen: set[int] = {0}
    for k, faces in enumerate(faces_by_dim):
        size = k + 1
        masks = []
        for face in faces:
            verts = sorted(set(face))
            if len(verts) != size:
                raise ValueError(f"face {tuple(face)} is not {k}-dimensional")
            mask = 0
            for v in verts:
                if v < 0:
                    raise ValueError("vertex indices must be nonnegative")
                mask |= 1 << v
            if mask in seen:
                raise ValueError(f"duplicate face {tuple(face)}")
            masks.append(mask)
            seen.add(mask)
        faces_by_size.append(sorted(masks))
    for s in range(2, len(faces_by_size)):
        for mask in faces_by_size[s]:
            for v in bits(mask):
                if mask ^ (1 << v) not in seen:
                    raise ValueError("complex is not closed under subsets")
    h = _homology_from_faces(faces_by_size, field)
    h += [0] * (len(faces_by_size) - len(h))
    return h


def _independence_faces_by_size(adjacency: Sequence[int], mask: int) -> list[list[int]]:
    """Independent subsets of ``mask`` grouped by cardinality ([0] at size 0)."""
    verts = list(bits(mask))
    faces: list[list[int]] = [[0]]

    def extend(start: int, cur: int, size: int, banned: int) -> None:
        for idx in range(start, len(verts)):
            v = verts[idx]
            if (banned >> v) & 1:
                continue
            new = cur | (1 << v)
            if size + 1 == len(faces):
                faces.append([])
            faces[size + 1].append(new)
            extend(idx + 1, new, size + 1, banned | adjacency[v])

    extend(0, 0, 0, 0)
    return faces


def _has_isolated(adjacency: Sequence[int], mask: int) -> bool:
    m = mask
    while m:
        low = m & -m
        if not adjacency[low.bit_length() - 1] & mask:
            return True
        m ^= low
    return False


def _convolve(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _hochster_chunk(
    adjacency: tuple[int, ...],
    lo: int,
    hi: int,
    field: FieldSpec,
    skip_isolated: bool,
) -> dict[tuple[int, int], int]:
    """Accumulate beta_{i,j} contributions of the subset range [lo, hi)."""
    beta: dict[tuple[int, int], int] = {}
    memo: dict[int, list[int]] = {}
    for mask in range(lo, hi):
        if skip_isolated and _has_isolated(adjacency, mask):
            continue
        hvec = [1]
        for comp in components_of_mask(adjacency, mask):
            hv = memo.get(comp)
            if hv is None:
                hv = _homology_from_faces(
                    _independence_faces_by_size(adjacency, comp), field
                )
                memo[comp] = hv
            if not hv:
                hvec = []
                break
            hvec = _convolve(hvec, hv)
        if not hvec:
            continue
        j = mask.bit_count()
        for s, dim in enumerate(hvec):
            if dim:
                key = (j - s, j)
                beta[key] = beta.get(key, 0) + dim
    return beta


def resolve_workers(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get("CIRC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def hochster_betti_table(
    g: Graph,
    field: FieldSpec = GF32003,
    skip_isolated: bool = True,
    workers: int | None = None,
) -> BettiTable:
    """Full graded Betti table of S/I(G) over the given field.

    Cost is a sum over all 2^q vertex subsets; graphs above
    ORACLE_VERTEX_CAP vertices are refused (use the closed-form route for
    family members instead).  The subset range is split into contiguous
    chunks when workers > 1; results do not depend on the worker count.
    """
    q = g.num_vertices
    if q > ORACLE_VERTEX_CAP:
        raise OracleSizeError(
            f"{q} vertices exceeds the oracle cap of {ORACLE_VERTEX_CAP}; "
            "closed-form family values remain available"
        )
    workers = resolve_workers(workers)
    total = 1 << q
    if workers == 1 or total < 4096:
        beta = _hochster_chunk(g.adjacency, 0, total, field, skip_isolated)
    else:
        chunk_count = workers * 4
        bounds = [total * k // chunk_count for k in range(chunk_count + 1)]
        beta = {}
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(
                    _hochster_chunk, g.adjacency, bounds[k], bounds[k + 1],
                    field, skip_isolated,
                )
                for k in range(chunk_count)
            ]
            for fut in futures:
                for key, mult in fut.result().items():
                    beta[key] = beta.get(key, 0) + mult
    return BettiTable.from_dict(q, beta)


def oracle_invariants(
    g: Graph,
    field: FieldSpec = GF32003,
    workers: int | None = None,
) -> InvariantReport:
    """depth/pdim/reg of S/I(G), read off the Betti table."""
    table = hochster_betti_table(g, field, workers=workers)
    pdim = table.pdim
    return InvariantReport(
        depth=g.num_vertices - pdim,
        pdim=pdim,
        reg=table.reg,
        ambient_vars=g.num_vertices,
        field=field,
        method="hochster",
    )


def cross_field_check(
    g: Graph,
    fields: tuple[FieldSpec, FieldSpec] = DEFAULT_FIELDS,
    workers: int | None = None,
) -> CrossFieldReport:
    """Compare Betti tables over two prime fields; arbitrate over QQ if they differ."""
    t1 = hochster_betti_table(g, fields[0], workers=workers)
    t2 = hochster_betti_table(g, fields[1], workers=workers)
    if t1.entries == t2.entries:
        return CrossFieldReport(fields, (t1, t2), True, (), None)
    d1, d2 = t1.as_dict(), t2.as_dict()
    differing = tuple(
        sorted(
            (i, j, d1.get((i, j), 0), d2.get((i, j), 0))
            for (i, j) in set(d1) | set(d2)
            if d1.get((i, j), 0) != d2.get((i, j), 0)
        )
    )
    arbiter = hochster_betti_table(g, RATIONALS, workers=workers)
    return CrossFieldReport(fields, (t1, t2), False, differing, arbiter)
