"""Inverse automata over signed label sets: foldings, languages, morphisms.

Vertices and labels are names; every edge u --x--> v has a companion edge
v --x^-1--> u, and an inverse automaton keeps at most one x-edge out of each
vertex.  Words are read along paths starting at the base vertex, and the
language of a marked graph is the set of reduced words labelling loops at
the base.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .errors import BudgetExceeded
from .machines import inverse_name, invert_word, reduce_word


def signed_labels(positives):
    """Label tuple closed under formal inversion, positives first."""
    positives = tuple(positives)
    return positives + tuple(inverse_name(x) for x in positives)

DEFAULT_PAIR_BUDGET = 10**6


@dataclass
class InverseAutomaton:
    """A folded involutive graph: at most one edge per (vertex, label)."""

    vertices: tuple
    labels: tuple
    edges: dict  # (vertex, label) -> vertex
    base: str

    def step(self, vertex, label):
        return self.edges.get((vertex, label))

    def read(self, word):
        """Endpoint of the path reading ``word`` from the base, or None."""
        v = self.base
        for x in word:
            v = self.edges.get((v, x))
            if v is None:
                return None
        return v

    def adjacency(self):
        adj = {v: [] for v in self.vertices}
        for (v, x), w in self.edges.items():
            adj[v].append((x, w))
        return adj

    def positive_edges(self):
        """One representative per geometric edge, positively labelled."""
        for (v, x), w in sorted(self.edges.items()):
            if not x.endswith("^-1"):
                yield (v, x, w)

    def canonical(self):
        """Rename vertices breadth-first from the base (labels in declared order)."""
        order = {self.base: 0}
        queue = deque([self.base])
        while queue:
            v = queue.popleft()
            for x in self.labels:
                w = self.edges.get((v, x))
                if w is not None and w not in order:
                    order[w] = len(order)
                    queue.append(w)
        for v in self.vertices:  # unreachable vertices, in declared order
            if v not in order:
                order[v] = len(order)
        name = {v: str(i) for v, i in order.items()}
        vertices = tuple(sorted(name.values(), key=int))
        edges = {(name[v], x): name[w] for (v, x), w in self.edges.items()}
        return InverseAutomaton(vertices, self.labels, edges, name[self.base])


def involutive_closure(edges):
    """Add the companion of every directed edge."""
    out = set()
    for u, x, v in edges:
        out.add((u, x, v))
        out.add((v, inverse_name(x), u))
    return out


def fold(vertices, edges, base, labels, order_seed=None):
    """Stallings folding: identify targets of equally-labelled edges.

    ``edges`` is an iterable of directed (u, label, v) triples; companions
    are added automatically.  ``order_seed`` shuffles the processing order
    (the folded automaton is independent of it up to renaming, and the
    result is returned canonically renamed so equal inputs fold equal).
    """
    vertices = list(vertices)
    edge_list = sorted(involutive_closure(edges))
    if order_seed is not None:
        random.Random(order_seed).shuffle(edge_list)
    parent = {v: v for v in vertices}
    size = {v: 1 for v in vertices}
    out = {v: {} for v in vertices}

    def find(v):
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def union(a, b):
        stack = [(a, b)]
        while stack:
            x, y = stack.pop()
            rx, ry = find(x), find(y)
            if rx == ry:
                continue
            if size[rx] < size[ry]:
                rx, ry = ry, rx
            parent[ry] = rx
            size[rx] += size[ry]
            small = out.pop(ry)
            big = out[rx]
            for lab, tgt in small.items():
                if lab in big:
                    stack.append((big[lab], tgt))
                else:
                    big[lab] = tgt

    for u, x, v in edge_list:
        while True:
            ru = find(u)
            d = out[ru]
            if x in d:
                if find(d[x]) == find(v):
                    break
                union(d[x], v)
                continue
            d[x] = v
            break

    roots = sorted({find(v) for v in vertices}, key=vertices.index)
    edges_out = {}
    for r in roots:
        for x, tgt in out[r].items():
            edges_out[(r, x)] = find(tgt)
    aut = InverseAutomaton(tuple(roots), tuple(labels), edges_out, find(base))
    return aut.canonical()


def core(aut):
    """Iteratively strip vertices of degree one other than the base."""
    degree = {v: 0 for v in aut.vertices}
    for v, x, w in aut.positive_edges():
        degree[v] += 1
        degree[w] += 1
    alive = set(aut.vertices)
    queue = deque(v for v in aut.vertices if degree[v] <= 1 and v != aut.base)
    incident = {v: [] for v in aut.vertices}
    for v, x, w in aut.positive_edges():
        incident[v].append((w, (v, x, w)))
        incident[w].append((v, (v, x, w)))
    dead_edges = set()
    while queue:
        v = queue.popleft()
        if v not in alive or degree[v] > 1 or v == aut.base:
            continue
        alive.discard(v)
        for other, e in incident[v]:
            if e in dead_edges:
                continue
            dead_edges.add(e)
            degree[other] -= 1
            degree[v] -= 1
            if other in alive and degree[other] <= 1 and other != aut.base:
                queue.append(other)
    edges = {
        (v, x): w
        for (v, x), w in aut.edges.items()
        if v in alive and w in alive
        and (v, x, w) not in dead_edges
        and (w, inverse_name(x), v) not in dead_edges
    }
    vertices = tuple(v for v in aut.vertices if v in alive)
    return InverseAutomaton(vertices, aut.labels, edges, aut.base).canonical()


def flower(generators):
    """Wedge of subdivided loops at a base vertex, one per generator word."""
    vertices = ["*"]
    edges = []
    for i, word in enumerate(generators):
        word = reduce_word(tuple(word))
        prev = "*"
        for j, x in enumerate(word):
            nxt = "*" if j == len(word) - 1 else "p%d_%d" % (i, j)
            if nxt != "*":
                vertices.append(nxt)
            edges.append((prev, x, nxt))
            prev = nxt
    return vertices, edges, "*"


def stallings_automaton(generators, labels, order_seed=None):
    """Folded core automaton of the subgroup generated by the given words."""
    vertices, edges, base = flower(generators)
    return core(fold(vertices, edges, base, labels, order_seed=order_seed))


def membership(aut, word):
    """Whether the reduced word labels a loop at the base."""
    return aut.read(reduce_word(tuple(word))) == aut.base


def basis(aut):
    """Free basis of the loop language, from a breadth-first spanning tree.

    Returns one reduced word per geometric edge outside the tree; the count
    equals (number of geometric edges) - (number of vertices) + 1.
    """
    tree = set()
    path = {aut.base: ()}
    order = [aut.base]
    queue = deque([aut.base])
    while queue:
        v = queue.popleft()
        for x in aut.labels:
            w = aut.edges.get((v, x))
            if w is not None and w not in path:
                path[w] = path[v] + (x,)
                tree.add((v, x, w))
                tree.add((w, inverse_name(x), v))
                order.append(w)
                queue.append(w)
    rank = {v: i for i, v in enumerate(order)}
    words = []
    for v, x, w in sorted(aut.positive_edges(), key=lambda e: (rank[e[0]], e[1])):
        if (v, x, w) in tree:
            continue
        words.append(reduce_word(path[v] + (x,) + invert_word(path[w])))
    return words


@dataclass
class InclusionResult:
    included: bool
    witness: tuple | None = None


def language_included(adj1, v1, adj2, v2, budget=DEFAULT_PAIR_BUDGET):
    """Decide path-language inclusion L(g1, v1) <= L(g2, v2).

    ``adj1``/``adj2`` map vertices to iterables of (label, target); the
    second graph may be nondeterministic, handled by subset construction.
    Languages here consist of all loop labellings (not only reduced ones);
    when the second graph is complete this coincides with reduced-language
    inclusion, and on involutive deterministic graphs it holds exactly when
    a base-respecting morphism exists.  On failure the result carries a
    loop word witnessing non-inclusion.
    """
    start = (v1, frozenset([v2]))
    seen = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        x, subset = state
        if x == v1 and v2 not in subset:
            word = []
            cur = state
            while seen[cur] is not None:
                cur, label = seen[cur]
                word.append(label)
            return InclusionResult(False, tuple(reversed(word)))
        for label, y in adj1.get(x, ()):
            targets = frozenset(
                t for s in subset for lab, t in adj2.get(s, ()) if lab == label
            )
            nxt = (y, targets)
            if nxt not in seen:
                if len(seen) >= budget:
                    raise BudgetExceeded("language inclusion pair budget exhausted")
                seen[nxt] = (state, label)
                queue.append(nxt)
    return InclusionResult(True, None)


def morphism_exists(a1, a2):
    """Base-respecting labelled-graph morphism a1 -> a2, or None.

    The morphism is forced: the image of each vertex is determined by any
    path from the base, so a single breadth-first pass either completes the
    map consistently or proves none exists.
    """
    f = {a1.base: a2.base}
    queue = deque([a1.base])
    while queue:
        v = queue.popleft()
        for x in a1.labels:
            w = a1.edges.get((v, x))
            if w is None:
                continue
            img = a2.edges.get((f[v], x))
            if img is None:
                return None
            if w in f:
                if f[w] != img:
                    return None
            else:
                f[w] = img
                queue.append(w)
    for (v, x), w in a1.edges.items():
        if v in f and w in f and a2.edges.get((f[v], x)) != f[w]:
            return None
    return f


def canonical_marked(step, base, labels):
    """Breadth-first canonical form of a deterministic labelled graph.

    ``step(vertex, label)`` returns the target vertex, a (target, payload)
    pair, or None; the serialization replaces vertices by discovery indices
    and is identical for isomorphic marked graphs.
    """
    order = {base: 0}
    queue = deque([base])
    rows = []
    while queue:
        v = queue.popleft()
        row = []
        for x in labels:
            res = step(v, x)
            if res is None:
                row.append(None)
                continue
            if isinstance(res, tuple) and len(res) == 2:
                target, payload = res
            else:
                target, payload = res, None
            if target not in order:
                order[target] = len(order)
                queue.append(target)
            row.append((order[target], payload))
        rows.append(tuple(row))
    return tuple(rows)


def automaton_canonical_form(aut):
    """Canonical form of an inverse automaton marked at its base."""
    return canonical_marked(lambda v, x: aut.edges.get((v, x)), aut.base, aut.labels)
