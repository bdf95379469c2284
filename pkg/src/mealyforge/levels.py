"""Level graphs, Schreier structures and relations of automaton (semi)groups.

An invertible machine acts on words over its alphabet through signed state
words.  Level k of the action is an involutive graph on the words of length
k: every signed state q contributes an edge v --q|q'--> w where w is the
transformed word and q' the signed state reached after the transformation.
Reading a path therefore composes states so that the word acting is the
reversed path label; helpers here convert back to the acting convention.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass

from .errors import BudgetExceeded, NotInvertible
from .graphs import InverseAutomaton, basis, canonical_marked
from .machines import (
    SignedTables,
    _run,
    act_output,
    act_pair,
    act_transition,
    action_signature,
    inverse_name,
    parse_word,
    states_equivalent,
)

DEFAULT_VERTEX_BUDGET = 10**7
DEFAULT_ORDER_BUDGET = 10**6


def word_name(alphabet, word):
    """Readable name of a word given as a tuple of letter indices."""
    letters = [alphabet[a] for a in word]
    if all(len(x) == 1 for x in alphabet):
        return "".join(letters)
    return ",".join(letters)


def norm(machine):
    """Largest weak component of the machine's underlying digraph."""
    n = len(machine.states)
    parent = list(range(n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for q in range(n):
        for t in machine.transitions[q]:
            rq, rt = find(q), find(t)
            if rq != rt:
                parent[rq] = rt
    sizes = Counter(find(q) for q in range(n))
    return max(sizes.values())


def _signed_tables(machine):
    tables = SignedTables(machine)
    if not tables.invertible:
        raise NotInvertible("level structures require an invertible machine")
    return tables


def _gen_codes(tables):
    return list(range(2 * tables.n))


def _gen_names(tables):
    return tuple(tables.state_name(c) for c in _gen_codes(tables))


def _apply_state(tables, code, word):
    """Run one signed state over a word of letter indices."""
    out = []
    s = code
    delta, lam = tables.delta, tables.lam
    for a in word:
        out.append(lam[s][a])
        s = delta[s][a]
    return tuple(out), s


def _component_raw(tables, word, budget=DEFAULT_VERTEX_BUDGET):
    """Breadth-first orbit of a word under all signed states.

    Returns (vertices in discovery order, edges) with edges mapping
    (word, state code) to (image word, reached state code).
    """
    gens = _gen_codes(tables)
    seen = {word}
    order = [word]
    edges = {}
    queue = deque([word])
    while queue:
        v = queue.popleft()
        for g in gens:
            w, s = _apply_state(tables, g, v)
            edges[(v, g)] = (w, s)
            if w not in seen:
                if len(seen) >= budget:
                    raise BudgetExceeded("orbit vertex budget exhausted")
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order, edges


def _component_canon(tables, word, budget=DEFAULT_VERTEX_BUDGET):
    """Canonical form of the marked orbit transducer of a word."""
    _, edges = _component_raw(tables, word, budget)
    gens = _gen_codes(tables)
    return canonical_marked(lambda v, g: edges[(v, g)], word, gens)


@dataclass
class TransducerComponent:
    """One weak component of a level graph, with input and output labels."""

    machine: object
    base: str
    vertices: tuple
    edges: dict  # (vertex, state name) -> (vertex, state name)
    generators: tuple

    @property
    def size(self):
        return len(self.vertices)

    def canonical_form(self):
        """Marked canonical serialization; equal forms mean isomorphic
        components with matching labels."""
        return canonical_marked(
            lambda v, g: self.edges[(v, g)], self.base, self.generators
        )

    def input_automaton(self):
        edges = {(v, g): w for (v, g), (w, _) in self.edges.items()}
        return InverseAutomaton(self.vertices, self.generators, edges, self.base)

    def input_adjacency(self):
        adj = {v: [] for v in self.vertices}
        for (v, g), (w, _) in self.edges.items():
            adj[v].append((g, w))
        return adj

    def output_adjacency(self):
        """Adjacency with edges labelled by their output states (may be
        nondeterministic)."""
        adj = {v: [] for v in self.vertices}
        for (v, _), (w, s) in self.edges.items():
            adj[v].append((s, w))
        return adj


def _component_named(machine, tables, order, edges):
    names = {w: word_name(machine.alphabet, w) for w in order}
    gens = _gen_names(tables)
    named_edges = {
        (names[v], tables.state_name(g)): (names[w], tables.state_name(s))
        for (v, g), (w, s) in edges.items()
    }
    return TransducerComponent(
        machine, names[order[0]], tuple(names[w] for w in order), named_edges, gens
    )


def level_component(machine, word, budget=DEFAULT_VERTEX_BUDGET):
    """The marked component of ``word`` in its level graph."""
    tables = _signed_tables(machine)
    word_idx = tuple(machine.alphabet.index(x) for x in parse_word(machine.alphabet, word))
    order, edges = _component_raw(tables, word_idx, budget)
    return _component_named(machine, tables, order, edges)


def orbit_oracle(machine, word, budget=DEFAULT_VERTEX_BUDGET):
    """Independent construction of the component of ``word``.

    Runs breadth-first search directly through the public action functions
    instead of the level-graph tables; used to cross-check level_graph.
    """
    start = parse_word(machine.alphabet, word)
    if not all(
        len({machine.outputs[q][a] for a in range(len(machine.alphabet))})
        == len(machine.alphabet)
        for q in range(len(machine.states))
    ):
        raise NotInvertible("level structures require an invertible machine")
    gens = tuple(machine.states) + tuple(inverse_name(s) for s in machine.states)
    tables = SignedTables(machine)
    seen = {start}
    order = [start]
    edges = {}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for g in gens:
            w, next_states = act_pair(machine, (g,), v, _tables=tables)
            edges[(v, g)] = (w, next_states[0])
            if w not in seen:
                if len(seen) >= budget:
                    raise BudgetExceeded("orbit vertex budget exhausted")
                seen.add(w)
                order.append(w)
                queue.append(w)

    def name(w):
        return word_name(machine.alphabet, tuple(machine.alphabet.index(x) for x in w))

    named_edges = {
        (name(v), g): (name(w), s) for (v, g), (w, s) in edges.items()
    }
    return TransducerComponent(
        machine, name(start), tuple(name(w) for w in order), named_edges, gens
    )


@dataclass
class LevelGraph:
    """The full level-k action graph of an invertible machine."""

    machine: object
    k: int
    vertices: tuple  # word names, lexicographic
    edges: dict  # (vertex, state name) -> (vertex, state name)
    generators: tuple

    def input_automaton(self, base):
        edges = {(v, g): w for (v, g), (w, _) in self.edges.items()}
        return InverseAutomaton(self.vertices, self.generators, edges, base)

    def components(self):
        """Vertex sets of the weak components, each sorted."""
        index = {v: i for i, v in enumerate(self.vertices)}
        parent = list(range(len(self.vertices)))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for (v, _), (w, _) in self.edges.items():
            rv, rw = find(index[v]), find(index[w])
            if rv != rw:
                parent[rv] = rw
        groups = {}
        for v in self.vertices:
            groups.setdefault(find(index[v]), []).append(v)
        return [sorted(g) for g in groups.values()]

    def component(self, word):
        """The marked component of one vertex, as a transducer component."""
        return level_component(self.machine, word)


def level_graph(machine, k, budget=DEFAULT_VERTEX_BUDGET):
    """Materialize the full level-k graph of an invertible machine."""
    tables = _signed_tables(machine)
    m = len(machine.alphabet)
    if (m**k) * 2 * tables.n > budget:
        raise BudgetExceeded("level graph budget exhausted")
    gens = _gen_codes(tables)
    edges = {}
    names = {}
    for word in itertools.product(range(m), repeat=k):
        names[word] = word_name(machine.alphabet, word)
    for word in names:
        for g in gens:
            w, s = _apply_state(tables, g, word)
            edges[(names[word], tables.state_name(g))] = (
                names[w],
                tables.state_name(s),
            )
    return LevelGraph(
        machine, k, tuple(names[w] for w in sorted(names)), edges, _gen_names(tables)
    )


def schreier_stabilizer_generators(machine, word):
    """Generators of the stabilizer of ``word`` in the machine's group.

    Takes the spanning-tree basis of the loop language of the component and
    reverses each word, converting path reading into the acting convention:
    every returned state word w satisfies act_output(machine, w, word) == word.
    """
    comp = level_component(machine, word)
    aut = comp.input_automaton()
    return [tuple(reversed(b)) for b in basis(aut)]


@dataclass
class GrowthReport:
    """Per-level component statistics of the level graphs."""

    levels: int
    chi: list  # chi[i] = smallest component size at level i+1
    component_sizes: list  # sorted (size, count) pairs per level
    monotone: bool
    strictly_increasing: bool
    stabilization_level: int  # first level from which chi stays constant
    dual_norm: int
    bound_satisfied: bool  # chi(n) <= dual_norm ** n at every level


def growth_chi(machine, levels, budget=DEFAULT_VERTEX_BUDGET):
    """Smallest-component growth over levels 1..levels."""
    tables = _signed_tables(machine)
    m = len(machine.alphabet)
    spent = 0
    chi = []
    multisets = []
    for k in range(1, levels + 1):
        count = m**k
        spent += count
        if spent > budget:
            raise BudgetExceeded(
                "growth budget exhausted at level %d" % k,
                partial=_growth_report(machine, chi, multisets),
            )
        parent = list(range(count))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        words = list(itertools.product(range(m), repeat=k))
        index = {w: i for i, w in enumerate(words)}
        for w in words:
            for g in range(tables.n):  # positive states suffice for connectivity
                img, _ = _apply_state(tables, g, w)
                a, b = find(index[w]), find(index[img])
                if a != b:
                    parent[a] = b
        sizes = Counter(find(i) for i in range(count))
        multiset = sorted(Counter(sizes.values()).items())
        chi.append(min(sizes.values()))
        multisets.append(multiset)
    return _growth_report(machine, chi, multisets)


def _growth_report(machine, chi, multisets):
    from .constructions import dual

    c = norm(dual(machine))
    monotone = all(chi[i] <= chi[i + 1] for i in range(len(chi) - 1))
    strict = all(chi[i] < chi[i + 1] for i in range(len(chi) - 1))
    stab = len(chi)
    for i in range(len(chi) - 1, -1, -1):
        if chi[i] == chi[-1]:
            stab = i + 1
        else:
            break
    bound = all(chi[i] <= c ** (i + 1) for i in range(len(chi)))
    return GrowthReport(
        levels=len(chi),
        chi=chi,
        component_sizes=multisets,
        monotone=monotone,
        strictly_increasing=strict,
        stabilization_level=stab,
        dual_norm=c,
        bound_satisfied=bound,
    )


@dataclass
class LevelGroupReport:
    """The finite permutation group induced on one level."""

    order: int
    automaton: InverseAutomaton  # Cayley graph on signed state generators
    generator_perms: dict  # state name -> tuple permutation of word indices
    words: tuple  # word names in permutation index order


def level_group(machine, k, order_budget=DEFAULT_ORDER_BUDGET):
    """Permutation group induced by the machine's states on level k.

    Vertices of the returned automaton are group elements (named by
    discovery index, identity first); reading a state word from the
    identity vertex ends at the vertex of that word's action.
    """
    tables = _signed_tables(machine)
    m = len(machine.alphabet)
    words = list(itertools.product(range(m), repeat=k))
    index = {w: i for i, w in enumerate(words)}
    perms = {}
    for g in _gen_codes(tables):
        perms[tables.state_name(g)] = tuple(
            index[_apply_state(tables, g, w)[0]] for w in words
        )
    identity = tuple(range(len(words)))
    elements = {identity: 0}
    queue = deque([identity])
    edges = {}
    gen_names = _gen_names(tables)
    while queue:
        pi = queue.popleft()
        for gname in gen_names:
            pg = perms[gname]
            nxt = tuple(pi[pg[x]] for x in range(len(words)))
            if nxt not in elements:
                if len(elements) >= order_budget:
                    raise BudgetExceeded("level group order budget exhausted")
                elements[nxt] = len(elements)
                queue.append(nxt)
            edges[(str(elements[pi]), gname)] = str(elements[nxt])
    aut = InverseAutomaton(
        tuple(str(i) for i in range(len(elements))), gen_names, edges, "0"
    )
    return LevelGroupReport(
        order=len(elements),
        automaton=aut,
        generator_perms=perms,
        words=tuple(word_name(machine.alphabet, w) for w in words),
    )


def is_group_relation_up_to(machine, state_word, depth):
    """Whether the state word acts as the identity on all words of the
    given length (hence on all shorter ones)."""
    tables = _signed_tables(machine)
    codes = tables.codes(state_word)
    m = len(machine.alphabet)
    for u in itertools.product(range(m), repeat=depth):
        out = []
        cur_codes = list(codes)
        for a in u:
            cur = a
            for i in range(len(cur_codes) - 1, -1, -1):
                s = cur_codes[i]
                cur_codes[i] = tables.delta[s][cur]
                cur = tables.lam[s][cur]
            out.append(cur)
            if cur != a:
                break
        if tuple(out) != u[: len(out)]:
            return False
    return True


def find_relations(machine, max_len, depth):
    """Reduced signed state words up to max_len acting trivially to depth.

    Sorted length-lexicographically in generator declaration order (states
    first, then their inverses).  Witnesses relations of the group only up
    to the chosen verification depth.
    """
    tables = _signed_tables(machine)
    gens = _gen_names(tables)
    found = []
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for g in gens:
                if w and w[-1] == inverse_name(g):
                    continue
                nxt.append(w + (g,))
        for w in nxt:
            if is_group_relation_up_to(machine, w, depth):
                found.append(w)
        frontier = nxt
    return found


def colliding_pair(machine, u, v):
    """Single-letter output agreement of two state words.

    This is the depth-one part of action equality: exact equality implies
    it, and it is preserved under simultaneous transitions.
    """
    tables = SignedTables(machine)
    cu = tables.codes(u)
    cv = tables.codes(v)
    for a in range(len(machine.alphabet)):
        if _run(tables, list(cu), [a]) != _run(tables, list(cv), [a]):
            return False
    return True


def semigroup_relation_exact(machine, u, v, budget=10**6):
    """Exact action equality of two state words (see states_equivalent)."""
    return states_equivalent(machine, u, v, budget=budget)


def free_semigroup_check(machine, max_len, budget=10**6):
    """Search positive state words up to max_len for an action collision.

    Returns None when all actions are pairwise distinct (the semigroup is
    free up to that length), else the first colliding pair length-lex.
    """
    seen = {}
    for length in range(1, max_len + 1):
        for w in itertools.product(machine.states, repeat=length):
            sig = action_signature(machine, w, budget=budget)
            if sig in seen:
                return (seen[sig], w)
            seen[sig] = w
    return None
