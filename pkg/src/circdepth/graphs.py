"""Labeled simple graphs and every graph family this package computes with.

Vertices are 0-based indices internally; display labels keep the 1-based
x/y naming (``x1``, ``y3``, ...) so reports and fixtures stay readable.
Adjacency is one bitset per vertex, which keeps induced subgraphs,
component splits and subset enumeration cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator, Sequence, Union

MAX_ISO_VERTICES = 24


class GraphSpecError(ValueError):
    """Invalid family parameters or an unparsable graph-spec string."""


class IsomorphismSizeError(ValueError):
    """Graph too large for exact isomorphism search."""


class DecompositionError(RuntimeError):
    """A structural decomposition failed to validate against the built graph.

    Raised when the claimed component count or per-component isomorphisms do
    not hold; this is a finding, not a user error.
    """


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph: unique labels plus per-vertex adjacency bitsets."""

    labels: tuple[str, ...]
    adjacency: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.labels)
        if len(self.adjacency) != n:
            raise ValueError("adjacency length must equal number of labels")
        if len(set(self.labels)) != n:
            raise ValueError("vertex labels must be unique")
        full = (1 << n) - 1
        for v, row in enumerate(self.adjacency):
            if row & ~full:
                raise ValueError(f"adjacency bitset of vertex {v} exceeds width {n}")
            if (row >> v) & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not (self.adjacency[u] >> v) & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")

    @property
    def num_vertices(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as index pairs (u, v) with u < v, sorted."""
        out = []
        for v, row in enumerate(self.adjacency):
            for u in bits(row >> (v + 1)):
                out.append((v, v + 1 + u))
        return out

    def edge_labels(self) -> set[frozenset[str]]:
        return {frozenset((self.labels[u], self.labels[v])) for u, v in self.edges()}

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adjacency[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(row.bit_count() for row in self.adjacency))

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no vertex labeled {label!r}") from None

    def is_regular(self, d: int) -> bool:
        return all(row.bit_count() == d for row in self.adjacency)


def graph_from_edges(labels: Sequence[str], edges: Sequence[tuple[int, int]]) -> Graph:
    n = len(labels)
    adj = [0] * n
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(tuple(labels), tuple(adj))


# ---------------------------------------------------------------------------
# Graph specs (closed family grammar)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PathSpec:
    q: int

    def __post_init__(self) -> None:
        if self.q < 1:
            raise GraphSpecError("path needs q >= 1")


@dataclass(frozen=True)
class CycleSpec:
    q: int

    def __post_init__(self) -> None:
        if self.q < 3:
            raise GraphSpecError("cycle needs q >= 3")


@dataclass(frozen=True)
class StarSpec:
    q: int

    def __post_init__(self) -> None:
        if self.q < 2:
            raise GraphSpecError("star needs q >= 2")


@dataclass(frozen=True)
class CompleteSpec:
    q: int

    def __post_init__(self) -> None:
        if self.q < 1:
            raise GraphSpecError("complete graph needs q >= 1")


@dataclass(frozen=True)
class CirculantSpec:
    q: int
    shifts: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.q < 2:
            raise GraphSpecError("circulant needs q >= 2")
        shifts = tuple(sorted(set(self.shifts)))
        if not shifts:
            raise GraphSpecError("circulant needs a nonempty shift set")
        if any(s < 1 or s > self.q // 2 for s in shifts):
            raise GraphSpecError(
                f"circulant shifts must lie in 1..{self.q // 2} for q={self.q}"
            )
        object.__setattr__(self, "shifts", shifts)


@dataclass(frozen=True)
class CubicCirculantSpec:
    """The 3-regular circulant on 2n vertices with shifts {a, n}, 1 <= a < n."""

    n: int
    a: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise GraphSpecError("cubic circulant needs n >= 2")
        if not 1 <= self.a < self.n:
            # a = n degenerates to a multigraph matching; rejected outright.
            raise GraphSpecError("cubic circulant needs 1 <= a < n")


@dataclass(frozen=True)
class LadderSpec:
    """Ladder graph family: 'A' is the 2n-vertex ladder, 'B'/'C'/'D' its supergraphs."""

    family: str
    n: int

    def __post_init__(self) -> None:
        if self.family not in ("A", "B", "C", "D"):
            raise GraphSpecError("ladder family must be one of A, B, C, D")
        low = 0 if self.family == "B" else 1
        if self.n < low:
            raise GraphSpecError(f"ladder {self.family} needs n >= {low}")


@dataclass(frozen=True)
class UnionSpec:
    parts: tuple["GraphSpec", ...]

    def __post_init__(self) -> None:
        if not self.parts:
            raise GraphSpecError("union needs at least one part")
        object.__setattr__(self, "parts", tuple(self.parts))


GraphSpec = Union[
    PathSpec,
    CycleSpec,
    StarSpec,
    CompleteSpec,
    CirculantSpec,
    CubicCirculantSpec,
    LadderSpec,
    UnionSpec,
]


def _x_labels(q: int) -> list[str]:
    return [f"x{i}" for i in range(1, q + 1)]


def _path(q: int) -> Graph:
    return graph_from_edges(_x_labels(q), [(i, i + 1) for i in range(q - 1)])


def _cycle(q: int) -> Graph:
    return graph_from_edges(_x_labels(q), [(i, (i + 1) % q) for i in range(q)])


def _star(q: int) -> Graph:
    # center x1, q-1 leaves
    return graph_from_edges(_x_labels(q), [(0, i) for i in range(1, q)])


def _complete(q: int) -> Graph:
    return graph_from_edges(
        _x_labels(q), [(i, j) for i in range(q) for j in range(i + 1, q)]
    )


def _circulant(q: int, shifts: tuple[int, ...]) -> Graph:
    edges = []
    for i in range(q):
        for j in range(i + 1, q):
            d = j - i
            if d in shifts or q - d in shifts:
                edges.append((i, j))
    return graph_from_edges(_x_labels(q), edges)


def _ladder_edges(n: int) -> list[tuple[str, str]]:
    # x1..xn bottom row, y1..yn top row, rung at every column
    edges: list[tuple[str, str]] = []
    for i in range(1, n):
        edges += [(f"x{i}", f"y{i}"), (f"x{i}", f"x{i+1}"), (f"y{i}", f"y{i+1}")]
    edges.append((f"x{n}", f"y{n}"))
    return edges


def _ladder(family: str, n: int) -> Graph:
    if family == "B" and n == 0:
        return graph_from_edges(["y1"], [])
    labels = _x_labels(n) + [f"y{i}" for i in range(1, n + 1)]
    edges = _ladder_edges(n)
    if family == "B":
        labels.append(f"y{n+1}")
        edges.append((f"y{n}", f"y{n+1}"))
    elif family == "C":
        labels += [f"y{n+1}", f"y{n+2}"]
        edges += [(f"y{n}", f"y{n+1}"), ("y1", f"y{n+2}")]
    elif family == "D":
        labels.insert(n, f"x{n+1}")
        labels.append(f"y{n+1}")
        edges += [(f"y{n}", f"y{n+1}"), ("x1", f"x{n+1}")]
    index = {lab: i for i, lab in enumerate(labels)}
    return graph_from_edges(labels, [(index[u], index[v]) for u, v in edges])


def build_graph(spec: GraphSpec) -> Graph:
    """Construct the labeled graph a spec describes."""
    match spec:
        case PathSpec(q):
            return _path(q)
        case CycleSpec(q):
            return _cycle(q)
        case StarSpec(q):
            return _star(q)
        case CompleteSpec(q):
            return _complete(q)
        case CirculantSpec(q, shifts):
            return _circulant(q, shifts)
        case CubicCirculantSpec(n, a):
            return _circulant(2 * n, (a, n))
        case LadderSpec(family, n):
            return _ladder(family, n)
        case UnionSpec(parts):
            return disjoint_union([build_graph(p) for p in parts])
    raise GraphSpecError(f"unknown graph spec {spec!r}")


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    """Disjoint union; labels get a part prefix ('1:x2') to stay unique."""
    labels: list[str] = []
    adj: list[int] = []
    offset = 0
    for k, g in enumerate(graphs, start=1):
        labels += [f"{k}:{lab}" for lab in g.labels]
        adj += [row << offset for row in g.adjacency]
        offset += g.num_vertices
    return Graph(tuple(labels), tuple(adj))


def moebius_ladder(n: int) -> Graph:
    """The connected cubic circulant on 2n vertices with shifts {1, n}, in x/y labels.

    Two n-paths x1..xn and y1..yn, rungs xi-yi, closed up by xn-y1 and yn-x1.
    Isomorphic to build_graph(CubicCirculantSpec(n, 1)); this labeling is the
    one the colon-decomposition fixtures pivot on.
    """
    if n < 2:
        raise GraphSpecError("moebius ladder needs n >= 2")
    labels = _x_labels(n) + [f"y{i}" for i in range(1, n + 1)]
    index = {lab: i for i, lab in enumerate(labels)}
    edges = []
    for i in range(1, n):
        edges += [(f"x{i}", f"x{i+1}"), (f"y{i}", f"y{i+1}")]
    edges += [(f"x{i}", f"y{i}") for i in range(1, n + 1)]
    edges += [(f"x{n}", "y1"), (f"y{n}", "x1")]
    return graph_from_edges(labels, [(index[u], index[v]) for u, v in edges])


def prism(n: int) -> Graph:
    """Two n-cycles x1..xn and y1..yn joined by rungs xi-yi.

    For odd n this is the connected cubic circulant on 2n vertices with
    shifts {2, n} (for even n that circulant is disconnected and is *not*
    this graph).
    """
    if n < 3:
        raise GraphSpecError("prism needs n >= 3")
    labels = _x_labels(n) + [f"y{i}" for i in range(1, n + 1)]
    index = {lab: i for i, lab in enumerate(labels)}
    edges = []
    for i in range(1, n + 1):
        j = i % n + 1
        edges += [(f"x{i}", f"x{j}"), (f"y{i}", f"y{j}")]
    edges += [(f"x{i}", f"y{i}") for i in range(1, n + 1)]
    return graph_from_edges(labels, [(index[u], index[v]) for u, v in edges])


# ---------------------------------------------------------------------------
# Spec grammar (CLI / JSON surface)
# ---------------------------------------------------------------------------

_GRAMMAR = (
    "path:Q | cycle:Q | star:Q | complete:Q | circulant:Q:a1,a2,... | "
    "cubic:N:A | ladderA:N | ladderB:N | ladderC:N | ladderD:N | "
    "union:(spec;spec;...)"
)


def parse_graph_spec(text: str) -> GraphSpec:
    """Parse the spec grammar used by the CLI and JSON reports."""
    s = text.strip()
    if s.startswith("union:"):
        body = s[len("union:"):]
        if not (body.startswith("(") and body.endswith(")")):
            raise GraphSpecError(f"union spec needs parentheses: {text!r}")
        parts, depth, cur = [], 0, []
        for ch in body[1:-1]:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if ch == ";" and depth == 0:
                parts.append("".join(cur))
                cur = []
            else:
                cur.append(ch)
        parts.append("".join(cur))
        return UnionSpec(tuple(parse_graph_spec(p) for p in parts))

    fields = s.split(":")
    kind = fields[0]
    try:
        if kind in ("path", "cycle", "star", "complete") and len(fields) == 2:
            q = int(fields[1])
            cls = {"path": PathSpec, "cycle": CycleSpec,
                   "star": StarSpec, "complete": CompleteSpec}[kind]
            return cls(q)
        if kind == "circulant" and len(fields) == 3:
            q = int(fields[1])
            shifts = tuple(int(t) for t in fields[2].split(","))
            return CirculantSpec(q, shifts)
        if kind == "cubic" and len(fields) == 3:
            return CubicCirculantSpec(int(fields[1]), int(fields[2]))
        if kind in ("ladderA", "ladderB", "ladderC", "ladderD") and len(fields) == 2:
            return LadderSpec(kind[-1], int(fields[1]))
    except GraphSpecError:
        raise
    except ValueError as exc:
        raise GraphSpecError(f"bad number in graph spec {text!r}: {exc}") from None
    raise GraphSpecError(f"cannot parse graph spec {text!r}; grammar: {_GRAMMAR}")


def spec_to_string(spec: GraphSpec) -> str:
    match spec:
        case PathSpec(q):
            return f"path:{q}"
        case CycleSpec(q):
            return f"cycle:{q}"
        case StarSpec(q):
            return f"star:{q}"
        case CompleteSpec(q):
            return f"complete:{q}"
        case CirculantSpec(q, shifts):
            return f"circulant:{q}:{','.join(map(str, shifts))}"
        case CubicCirculantSpec(n, a):
            return f"cubic:{n}:{a}"
        case LadderSpec(family, n):
            return f"ladder{family}:{n}"
        case UnionSpec(parts):
            return "union:(" + ";".join(spec_to_string(p) for p in parts) + ")"
    raise GraphSpecError(f"unknown graph spec {spec!r}")


def spec_display_name(spec: GraphSpec) -> str:
    """Mathematical display name, e.g. C_10(2,5) or A_4."""
    match spec:
        case PathSpec(q):
            return f"P_{q}"
        case CycleSpec(q):
            return f"C_{q}"
        case StarSpec(q):
            return f"S_{q}"
        case CompleteSpec(q):
            return f"K_{q}"
        case CirculantSpec(q, shifts):
            return f"C_{q}({','.join(map(str, shifts))})"
        case CubicCirculantSpec(n, a):
            return f"C_{2*n}({a},{n})"
        case LadderSpec(family, n):
            return f"{family}_{n}"
        case UnionSpec(parts):
            return " + ".join(spec_display_name(p) for p in parts)
    raise GraphSpecError(f"unknown graph spec {spec!r}")


# ---------------------------------------------------------------------------
# Induced subgraphs and components
# ---------------------------------------------------------------------------


def induced_subgraph(g: Graph, vertex_mask: int) -> Graph:
    """Restrict to the vertices of ``vertex_mask``; original labels retained."""
    if vertex_mask & ~((1 << g.num_vertices) - 1):
        raise ValueError("vertex mask exceeds graph width")
    keep = list(bits(vertex_mask))
    pos = {v: i for i, v in enumerate(keep)}
    adj = [0] * len(keep)
    for v in keep:
        for u in bits(g.adjacency[v] & vertex_mask):
            adj[pos[v]] |= 1 << pos[u]
    return Graph(tuple(g.labels[v] for v in keep), tuple(adj))


def components_of_mask(adjacency: Sequence[int], mask: int) -> list[int]:
    """Connected components of the induced subgraph on ``mask``, as submasks."""
    comps = []
    remaining = mask
    while remaining:
        seed = remaining & -remaining
        comp = 0
        frontier = seed
        while frontier:
            comp |= frontier
            nxt = 0
            for v in bits(frontier):
                nxt |= adjacency[v]
            frontier = nxt & mask & ~comp
        comps.append(comp)
        remaining &= ~comp
    return comps


def connected_components(g: Graph) -> list[tuple[int, Graph]]:
    """Maximal connected pieces as (vertex mask, induced graph) pairs."""
    full = (1 << g.num_vertices) - 1
    return [(m, induced_subgraph(g, m)) for m in components_of_mask(g.adjacency, full)]


def is_connected(g: Graph) -> bool:
    if g.num_vertices == 0:
        return True
    full = (1 << g.num_vertices) - 1
    return components_of_mask(g.adjacency, full)[0] == full


# ---------------------------------------------------------------------------
# Exact isomorphism (degree-partition refinement + backtracking)
# ---------------------------------------------------------------------------


def _refined_colors(g: Graph) -> tuple[int, ...]:
    """Stable vertex coloring under iterated neighbor-color refinement."""
    colors = [g.degree(v) for v in range(g.num_vertices)]
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in bits(g.adjacency[v]))))
            for v in range(g.num_vertices)
        ]
        relabel = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new = [relabel[sig] for sig in sigs]
        if new == colors:
            return tuple(new)
        colors = new


def find_isomorphism(g: Graph, h: Graph) -> tuple[int, ...] | None:
    """Edge-preserving bijection as a tuple mapping g-vertex -> h-vertex, or None.

    Exact deterministic backtracking; both graphs must have at most
    MAX_ISO_VERTICES vertices.
    """
    n = g.num_vertices
    if max(n, h.num_vertices) > MAX_ISO_VERTICES:
        raise IsomorphismSizeError(
            f"too large for exact isomorphism (limit {MAX_ISO_VERTICES} vertices)"
        )
    if n != h.num_vertices or g.edge_count != h.edge_count:
        return None
    if g.degree_sequence() != h.degree_sequence():
        return None

    gc = _refined_colors(g)
    hc = _refined_colors(h)
    if sorted(gc) != sorted(hc):
        return None

    h_by_color: dict[int, list[int]] = {}
    for w in range(n):
        h_by_color.setdefault(hc[w], []).append(w)

    # Assign g-vertices so each new one touches the already-assigned region
    # when possible; that keeps the adjacency constraint binding early.
    order: list[int] = []
    placed = 0
    while len(order) < n:
        cand = [
            v for v in range(n)
            if not (placed >> v) & 1 and (g.adjacency[v] & placed or not order)
        ]
        if not cand:
            cand = [v for v in range(n) if not (placed >> v) & 1]
        v = min(cand, key=lambda v: (len(h_by_color[gc[v]]), v))
        order.append(v)
        placed |= 1 << v

    mapping = [-1] * n
    used = 0

    def extend(idx: int) -> bool:
        nonlocal used
        if idx == n:
            return True
        v = order[idx]
        image_adj = 0
        for u in bits(g.adjacency[v]):
            if mapping[u] >= 0:
                image_adj |= 1 << mapping[u]
        for w in h_by_color[gc[v]]:
            if (used >> w) & 1:
                continue
            if h.adjacency[w] & used != image_adj:
                continue
            mapping[v] = w
            used |= 1 << w
            if extend(idx + 1):
                return True
            mapping[v] = -1
            used &= ~(1 << w)
        return False

    if extend(0):
        return tuple(mapping)
    return None


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None


# ---------------------------------------------------------------------------
# Structural decomposition of cubic circulants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecompositionReport:
    """gcd-decomposition of a cubic circulant into isomorphic connected pieces."""

    n: int
    a: int
    t: int
    parity: str  # parity of 2n/t
    copy_count: int
    component_spec: CirculantSpec
    witness_isos: tuple[dict[str, str], ...]  # component-spec label -> original label


def davis_domke_decompose(n: int, a: int) -> DecompositionReport:
    """Split the cubic circulant C_{2n}(a, n) into copies of one connected circulant.

    With t = gcd(2n, a): if 2n/t is even the graph is t copies of
    C_{2n/t}(1, n/t), otherwise t/2 copies of C_{4n/t}(2, 2n/t).  The claim is
    validated against the built graph (component count and per-component
    isomorphism witnesses); a failure raises DecompositionError.
    """
    spec = CubicCirculantSpec(n, a)  # validates n, a
    t = gcd(2 * n, a)
    m = (2 * n) // t
    if m % 2 == 0:
        parity = "even"
        copy_count = t
        component_spec = CirculantSpec(m, (1, n // t))
    else:
        parity = "odd"
        copy_count = t // 2
        component_spec = CirculantSpec(2 * m, (2, m))

    g = build_graph(spec)
    comps = connected_components(g)
    if len(comps) != copy_count:
        raise DecompositionError(
            f"C_{2*n}({a},{n}): expected {copy_count} components, found {len(comps)}"
        )
    model = build_graph(component_spec)
    witnesses = []
    for mask, comp in comps:
        iso = find_isomorphism(model, comp)
        if iso is None:
            raise DecompositionError(
                f"C_{2*n}({a},{n}): component not isomorphic to "
                f"{spec_display_name(component_spec)}"
            )
        witnesses.append({model.labels[i]: comp.labels[w] for i, w in enumerate(iso)})
    return DecompositionReport(
        n=n,
        a=a,
        t=t,
        parity=parity,
        copy_count=copy_count,
        component_spec=component_spec,
        witness_isos=tuple(witnesses),
    )
