"""Weighted plumbing forests, the star construction for Brieskorn spheres,
blow-down reduction and the ``.plb`` text format.

A note on "bad" vertices. A vertex ``x`` with weight ``d(x)`` and valence
``v(x)`` is counted as bad when ``d(x) > -v(x)``. The inequality is
sometimes printed the other way round (``d(x) < -v(x)``), but that reading
would give the -2/-4/-1/-2/-5 graph of ``Sigma(2, 5, 7)`` four bad
vertices (every leaf and the -4) instead of the single trivalent -1.
Under the convention used here the trivalent vertex of the E8 tree is
also bad, so E8 has one bad vertex.

The star construction solves ``a1 a2 b3 + a1 b2 a3 + b1 a2 a3 = 1``. With
``b1`` in the first and last terms instead, the worked solution
``(1, -1, -2)`` for ``(2, 5, 7)`` would not satisfy it; the symmetric form
above gives ``-20 - 14 + 35 = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from . import _linalg
from .topology import BrieskornTriple

CF_MAX_TERMS = 1000


class PlumbingError(ValueError):
    pass


class ReductionError(PlumbingError):
    pass


class NoAdmissibleGraph(PlumbingError):
    pass


class PlbSyntaxError(PlumbingError):
    def __init__(self, lineno: Optional[int], message: str):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno is not None else ""
        super().__init__(prefix + message)


Edge = Tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class PlumbingGraph:
    """Immutable weighted forest.

    Parameters
    ----------
    vertices
        Mapping from positive integer vertex id to integer weight.
    edges
        Iterable of unordered vertex-id pairs.
    """

    __slots__ = ("_weights", "_edges", "_adj")

    def __init__(self, vertices: Mapping[int, int], edges: Iterable[Tuple[int, int]] = ()):
        self._weights: Dict[int, int] = {int(v): int(w) for v, w in vertices.items()}
        adj: Dict[int, set] = {v: set() for v in self._weights}
        es = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise PlumbingError(f"self-loop at vertex {u}")
            if u not in adj or v not in adj:
                missing = u if u not in adj else v
                raise PlumbingError(f"edge references unknown vertex {missing}")
            e = _edge(u, v)
            if e in es:
                raise PlumbingError(f"multi-edge between {u} and {v}")
            es.add(e)
            adj[u].add(v)
            adj[v].add(u)
        self._edges: FrozenSet[Edge] = frozenset(es)
        self._adj = {v: frozenset(n) for v, n in adj.items()}
        if not self._is_forest():
            raise PlumbingError("plumbing graph contains a cycle")

    def _is_forest(self) -> bool:
        # a graph is a forest iff |E| = |V| - #components
        seen = set()
        components = 0
        for start in self._weights:
            if start in seen:
                continue
            components += 1
            stack = [start]
            seen.add(start)
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
        return len(self._edges) == len(self._weights) - components

    # -- accessors ------------------------------------------------------------
    @property
    def vertex_ids(self) -> List[int]:
        return sorted(self._weights)

    @property
    def weights(self) -> Dict[int, int]:
        return dict(self._weights)

    @property
    def edges(self) -> List[Edge]:
        return sorted(self._edges)

    def weight(self, v: int) -> int:
        return self._weights[v]

    def neighbors(self, v: int) -> List[int]:
        return sorted(self._adj[v])

    def valence(self, v: int) -> int:
        return len(self._adj[v])

    def __len__(self):
        return len(self._weights)

    def __eq__(self, other):
        if not isinstance(other, PlumbingGraph):
            return NotImplemented
        return self._weights == other._weights and self._edges == other._edges

    def __hash__(self):
        return hash((frozenset(self._weights.items()), self._edges))

    def __repr__(self):
        return f"PlumbingGraph({self._weights}, {sorted(self._edges)})"

    def intersection_matrix(self) -> List[List[int]]:
        """Weights on the diagonal, 1 per edge; indexed by ascending vertex id."""
        ids = self.vertex_ids
        index = {v: i for i, v in enumerate(ids)}
        n = len(ids)
        q = [[0] * n for _ in range(n)]
        for v in ids:
            q[index[v]][index[v]] = self._weights[v]
        for u, v in self._edges:
            q[index[u]][index[v]] = q[index[v]][index[u]] = 1
        return q

    def relabeled(self) -> "PlumbingGraph":
        """Same graph with ids renumbered 1..n in ascending order."""
        index = {v: i + 1 for i, v in enumerate(self.vertex_ids)}
        return PlumbingGraph(
            {index[v]: w for v, w in self._weights.items()},
            [(index[u], index[v]) for u, v in self._edges],
        )

    def disjoint_union(self, other: "PlumbingGraph") -> "PlumbingGraph":
        """Union with ``other``'s ids shifted past this graph's largest id."""
        off = max(self._weights, default=0)
        verts = dict(self._weights)
        verts.update({v + off: w for v, w in other._weights.items()})
        edges = list(self._edges) + [(u + off, v + off) for u, v in other._edges]
        return PlumbingGraph(verts, edges)

    @classmethod
    def chain(cls, weights: Sequence[int]) -> "PlumbingGraph":
        verts = {i + 1: w for i, w in enumerate(weights)}
        return cls(verts, [(i, i + 1) for i in range(1, len(weights))])

    @classmethod
    def star(cls, center: int, arms: Sequence[Sequence[int]]) -> "PlumbingGraph":
        """Central vertex (id 1) with one chain per arm, arm entry 0 next to the center."""
        verts = {1: center}
        edges = []
        nxt = 2
        for arm in arms:
            prev = 1
            for w in arm:
                verts[nxt] = w
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
        return cls(verts, edges)


# -- continued fractions ------------------------------------------------------


def negative_cf_expand(r) -> List[int]:
    """Expand ``r = x1 - 1/(x2 - 1/(... - 1/xk))`` with every ``xi <= -1``.

    A negative integer is its own one-term expansion. Otherwise
    ``x = min(-1, ceil(r) - 1)`` and the expansion continues with
    ``1 / (x - r)``.

    >>> negative_cf_expand(Fraction(7, -2))
    [-4, -2]
    """
    r = Fraction(r)
    if r == 0:
        raise ValueError("cannot expand 0")
    out = []
    while True:
        if len(out) >= CF_MAX_TERMS:
            raise ValueError(f"continued fraction expansion exceeded {CF_MAX_TERMS} terms")
        if r.denominator == 1 and r <= -1:
            out.append(int(r))
            return out
        x = min(-1, ceil(r) - 1)
        out.append(x)
        r = 1 / (x - r)


def evaluate_cf(terms: Sequence[int]) -> Fraction:
    """Inverse of :func:`negative_cf_expand`."""
    if not terms:
        raise ValueError("empty continued fraction")
    val = Fraction(terms[-1])
    for x in reversed(terms[:-1]):
        val = x - 1 / val
    return val


def hirzebruch_jung(p: int, q: int) -> List[int]:
    """``p/q = c1 - 1/(c2 - ...)`` with every ``ci >= 2`` (requires ``p > q > 0``)."""
    if not 0 < q < p:
        raise ValueError(f"need p > q > 0, got ({p}, {q})")
    out = []
    while q:
        c = -(-p // q)
        out.append(c)
        p, q = q, c * q - p
    return out


# -- reduction ----------------------------------------------------------------


def _apply_r1(w: Dict[int, int], adj: Dict[int, set], v: int) -> None:
    nbrs = list(adj[v])
    for u in nbrs:
        adj[u].discard(v)
        w[u] += 1
    if len(nbrs) == 2:
        x, y = nbrs
        if y in adj[x]:
            raise ReductionError(f"blowing down {v} would create a multi-edge")
        adj[x].add(y)
        adj[y].add(x)
    del adj[v], w[v]


def _apply_r2(w: Dict[int, int], adj: Dict[int, set], v: int) -> None:
    x, y = sorted(adj[v])
    keep, gone = x, y
    for u in (x, y):
        adj[u].discard(v)
    del adj[v], w[v]
    others = adj.pop(gone)
    if keep in others:
        raise ReductionError(f"absorbing {v} would create a cycle")
    for u in others:
        if u in adj[keep]:
            raise ReductionError(f"absorbing {v} would create a multi-edge")
        adj[u].discard(gone)
        adj[u].add(keep)
        adj[keep].add(u)
    w[keep] += w.pop(gone)


def reduce_graph(g: PlumbingGraph) -> PlumbingGraph:
    """Blow down -1 vertices of valence <= 2 and absorb 0-weight valence-2 vertices.

    Moves are applied at the lowest eligible id, blow-downs first, until
    neither applies. A surviving 0-weight vertex of valence <= 1 is an
    error.
    """
    w = g.weights
    adj = {v: set(g.neighbors(v)) for v in g.vertex_ids}
    while True:
        r1 = [v for v in sorted(w) if w[v] == -1 and len(adj[v]) <= 2]
        if r1:
            _apply_r1(w, adj, r1[0])
            continue
        r2 = [v for v in sorted(w) if w[v] == 0 and len(adj[v]) == 2]
        if r2:
            _apply_r2(w, adj, r2[0])
            continue
        break
    leftovers = [v for v in sorted(w) if w[v] == 0 and len(adj[v]) <= 1]
    if leftovers:
        raise ReductionError(f"0-weight vertex {leftovers[0]} of valence {len(adj[leftovers[0]])} survives reduction")
    edges = {_edge(u, v) for u in adj for v in adj[u]}
    return PlumbingGraph(w, edges)


# -- analysis -----------------------------------------------------------------


@dataclass(frozen=True)
class GraphAnalysis:
    negative_definite: bool
    bad_vertex_count: int
    determinant: int

    @property
    def first_homology_order(self) -> int:
        return abs(self.determinant)


def bad_vertices(g: PlumbingGraph) -> List[int]:
    return [v for v in g.vertex_ids if g.weight(v) > -g.valence(v)]


def analyze_graph(g: PlumbingGraph) -> GraphAnalysis:
    q = g.intersection_matrix()
    return GraphAnalysis(
        negative_definite=_linalg.is_negative_definite(q),
        bad_vertex_count=len(bad_vertices(g)),
        determinant=_linalg.determinant(q),
    )


# -- the star construction ----------------------------------------------------


def diophantine_solutions(t: BrieskornTriple) -> Iterator[Tuple[int, int, int]]:
    """Solutions of ``a1 a2 b3 + a1 b2 a3 + b1 a2 a3 = 1`` with ``0 < |bi| < ai``.

    Ordered by ``max |bi|``, ties broken lexicographically.
    """
    a1, a2, a3 = t.values
    sols = []
    for b1 in range(-a1 + 1, a1):
        for b2 in range(-a2 + 1, a2):
            if b1 == 0 or b2 == 0:
                continue
            rest = 1 - a1 * b2 * a3 - b1 * a2 * a3
            if rest % (a1 * a2):
                continue
            b3 = rest // (a1 * a2)
            if b3 != 0 and abs(b3) < a3:
                sols.append((b1, b2, b3))
    sols.sort(key=lambda b: (max(map(abs, b)), b))
    return iter(sols)


def brieskorn_star(t: BrieskornTriple, b: Tuple[int, int, int]) -> PlumbingGraph:
    """Unreduced star: 0-weight center, arms from ``ai / bi``."""
    arms = [negative_cf_expand(Fraction(a, bi)) for a, bi in zip(t.values, b)]
    return PlumbingGraph.star(0, arms)


def build_brieskorn_plumbing(t: BrieskornTriple, *, max_bad: int = 2) -> PlumbingGraph:
    """Negative definite plumbing forest bounded by ``Sigma(a1, a2, a3)``."""
    tried = 0
    for b in diophantine_solutions(t):
        tried += 1
        try:
            g = reduce_graph(brieskorn_star(t, b))
        except PlumbingError:
            continue
        if len(g) == 0:
            continue
        info = analyze_graph(g)
        if info.negative_definite and info.bad_vertex_count <= max_bad:
            return g.relabeled()
    raise NoAdmissibleGraph(f"no admissible plumbing for {t} among {tried} candidate solutions")


# -- .plb text format ---------------------------------------------------------


def _parse_int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise PlbSyntaxError(lineno, f"expected integer {what}, got {tok!r}") from None


def parse_plb(text: str) -> PlumbingGraph:
    """Parse ``v <id> <weight>`` / ``e <id> <id>`` lines (``#`` comments)."""
    verts: Dict[int, int] = {}
    edges: List[Tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "v":
            if len(toks) != 3:
                raise PlbSyntaxError(lineno, "vertex line must be 'v <id> <weight>'")
            vid = _parse_int(toks[1], lineno, "vertex id")
            wt = _parse_int(toks[2], lineno, "weight")
            if vid < 1:
                raise PlbSyntaxError(lineno, f"vertex ids must be positive, got {vid}")
            if vid in verts:
                raise PlbSyntaxError(lineno, f"duplicate vertex id {vid}")
            verts[vid] = wt
        elif toks[0] == "e":
            if len(toks) != 3:
                raise PlbSyntaxError(lineno, "edge line must be 'e <id> <id>'")
            edges.append((lineno, _parse_int(toks[1], lineno, "vertex id"), _parse_int(toks[2], lineno, "vertex id")))
        else:
            raise PlbSyntaxError(lineno, f"unknown record type {toks[0]!r}")
    seen = set()
    for lineno, u, v in edges:
        for x in (u, v):
            if x not in verts:
                raise PlbSyntaxError(lineno, f"edge references unknown vertex {x}")
        if u == v:
            raise PlbSyntaxError(lineno, f"self-loop at vertex {u}")
        if _edge(u, v) in seen:
            raise PlbSyntaxError(lineno, f"duplicate edge {u} {v}")
        seen.add(_edge(u, v))
    try:
        return PlumbingGraph(verts, [(u, v) for _, u, v in edges])
    except PlumbingError as exc:
        raise PlbSyntaxError(None, str(exc)) from None


def emit_plb(g: PlumbingGraph) -> str:
    lines = [f"v {v} {g.weight(v)}" for v in g.vertex_ids]
    lines += [f"e {u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def read_plb(path) -> PlumbingGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_plb(fh.read())


def write_plb(g: PlumbingGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit_plb(g))
