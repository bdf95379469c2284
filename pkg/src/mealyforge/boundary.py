"""Boundary dynamics: bounded orbits, finiteness evidence, torsion.

The component of a word w in its level graph is a transducer in its own
right, with input and output labels both drawn from the signed states.  Two
facts drive everything here: the component of an extension wu is determined
up to marked isomorphism by the component of w together with the base
machine, and components can only shrink or keep their size along prefixes.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .constructions import dual
from .errors import BudgetExceeded, NotInvertible
from .graphs import canonical_marked, language_included
from .levels import (
    _component_raw,
    _gen_codes,
    _signed_tables,
    is_group_relation_up_to,
    level_group,
    norm,
    word_name,
)
from .machines import (
    act_output,
    act_transition,
    action_signature,
    inverse_name,
    is_bireversible,
    is_invertible,
    is_reversible,
    parse_word,
)

DEFAULT_VERTEX_BUDGET = 10**7


# ---------------------------------------------------------------------------
# Swapping structure of components


def swapping_inclusion(component, p1, p2, budget=10**6):
    """Whether every output-path label from p1 is an input-path label from p2."""
    result = language_included(
        component.output_adjacency(), p1, component.input_adjacency(), p2, budget
    )
    return result.included


def swapping_invariant(component, p1, p2, budget=10**6):
    """Mutual output/input language inclusion between two vertices."""
    return swapping_inclusion(component, p1, p2, budget) and swapping_inclusion(
        component, p2, p1, budget
    )


def is_supersymmetric(component, budget=10**6):
    """Whether the swapping invariant holds for every ordered vertex pair."""
    return all(
        swapping_inclusion(component, p1, p2, budget)
        for p1 in component.vertices
        for p2 in component.vertices
    )


def _path_between(component, p1, p2):
    """Input word and output word of some path p1 -> p2."""
    prev = {p1: None}
    queue = deque([p1])
    while queue:
        v = queue.popleft()
        if v == p2:
            break
        for g in component.generators:
            w, s = component.edges[(v, g)]
            if w not in prev:
                prev[w] = (v, g, s)
                queue.append(w)
    if p2 not in prev:
        raise ValueError("vertices lie in different components")
    ins, outs = [], []
    v = p2
    while prev[v] is not None:
        u, g, s = prev[v]
        ins.append(g)
        outs.append(s)
        v = u
    return tuple(reversed(ins)), tuple(reversed(outs))


def _read_path(component, start, word):
    """Endpoint and output word of reading ``word`` from ``start``."""
    v = start
    out = []
    for g in word:
        v, s = component.edges[(v, g)]
        out.append(s)
    return v, tuple(out)


@dataclass
class SwappingCycle:
    """A cycle of vertices produced by iterated output/input swapping."""

    vertices: list
    period_word: str  # concatenation of the cycle's vertex words


def swapping_cycle(component, p1, p2, max_steps=10**4):
    """Iterate the swapping step from a path p1 -> p2 until a vertex repeats.

    Requires the swapping inclusion from p1 to p2.  Each step reads the
    previous output word as an input word; the visited vertices eventually
    cycle, and concatenating the cycle's vertex words yields a word whose
    periodic extensions have components of bounded size.
    """
    if not swapping_inclusion(component, p1, p2):
        raise ValueError("swapping inclusion fails; the iteration is not defined")
    h_in, h_out = _path_between(component, p1, p2)
    visited = {p1: 0}
    sequence = [p1]
    p, h = p2, h_out
    for _ in range(max_steps):
        if p in visited:
            start = visited[p]
            cycle = sequence[start:]
            sep = "," if any("," in v for v in cycle) else ""
            return SwappingCycle(cycle, sep.join(cycle) if sep else "".join(cycle))
        visited[p] = len(sequence)
        sequence.append(p)
        p, h = _read_path(component, p, h)
    raise BudgetExceeded("swapping cycle step budget exhausted")


# ---------------------------------------------------------------------------
# Finiteness and infiniteness evidence


@dataclass
class InfinitenessCertificate:
    """Witness that a reversible invertible machine is not bireversible.

    For such machines the generated group is infinite: some output letter's
    reverse transition relation fails to be a permutation.
    """

    output_letter: str
    reason: str


def infiniteness_certificate(machine):
    """Certificate that the machine generates an infinite group, or None.

    Sound but not complete: applies only to invertible reversible machines
    that are not bireversible.
    """
    if not (is_invertible(machine) and is_reversible(machine)):
        return None
    if is_bireversible(machine):
        return None
    n = len(machine.states)
    for b in range(len(machine.alphabet)):
        sources = []
        targets = []
        for q in range(n):
            for a in range(len(machine.alphabet)):
                if machine.outputs[q][a] == b:
                    sources.append(q)
                    targets.append(machine.transitions[q][a])
        if len(set(sources)) != n:
            return InfinitenessCertificate(
                machine.alphabet[b],
                "some state has no or several edges with this output letter",
            )
        if len(set(targets)) != n:
            return InfinitenessCertificate(
                machine.alphabet[b],
                "two edges with this output letter share a target state",
            )
    return None


@dataclass
class FinitenessVerdict:
    kind: str  # "finite" | "infinite" | "unknown"
    bound: int | None = None  # for "finite": every component has at most this size
    level: int | None = None  # level at which the evidence appeared
    evidence: str = ""


def finiteness_semidecision(machine, horizon=6, budget=DEFAULT_VERTEX_BUDGET):
    """Search for finiteness or infiniteness evidence up to a level horizon.

    Finite: at some level every word's marked component is isomorphic to the
    component of its length-(k-1) prefix; components then stay isomorphic on
    all deeper levels, so their sizes are bounded.  Infinite: either the
    non-bireversibility certificate fires, or (heuristically) the smallest
    component size grows strictly through the whole horizon.
    """
    cert = infiniteness_certificate(machine)
    if cert is not None:
        return FinitenessVerdict(
            kind="infinite",
            evidence="reversible but not bireversible: output letter %r (%s)"
            % (cert.output_letter, cert.reason),
        )
    tables = _signed_tables(machine)
    m = len(machine.alphabet)
    prev = {(): _component_canon(tables, ())}
    spent = 0
    chi = []
    for k in range(1, horizon + 1):
        canons = {}
        sizes = []
        stable = True
        for w in itertools.product(range(m), repeat=k):
            comp_vertices, comp_edges = _component_raw(tables, w, budget)
            spent += len(comp_vertices)
            if spent > budget:
                raise BudgetExceeded("finiteness scan budget exhausted")
            sizes.append(len(comp_vertices))
            canon = canonical_marked(
                lambda v, g: comp_edges[(v, g)], w, _gen_codes(tables)
            )
            canons[w] = canon
            if canon != prev[w[:-1]]:
                stable = False
        if stable:
            return FinitenessVerdict(
                kind="finite",
                bound=max(sizes),
                level=k,
                evidence="every level-%d component matches its prefix component" % k,
            )
        chi.append(min(sizes))
        prev = canons
    if len(chi) >= 2 and all(chi[i] < chi[i + 1] for i in range(len(chi) - 1)):
        return FinitenessVerdict(
            kind="infinite",
            level=horizon,
            evidence="smallest component size grew strictly through the horizon "
            "(heuristic): %r" % (chi,),
        )
    return FinitenessVerdict(kind="unknown", evidence="no evidence within horizon")


def _component_canon(tables, word, budget=DEFAULT_VERTEX_BUDGET):
    _, edges = _component_raw(tables, word, budget)
    return canonical_marked(lambda v, g: edges[(v, g)], word, _gen_codes(tables))


# ---------------------------------------------------------------------------
# The gap function and the boundedness decision


@dataclass
class ZetaValue:
    value: int
    below_threshold: bool


def zeta(machine, n):
    """Guaranteed number of initial levels with a component of size <= y.

    Exact integer evaluation of the threshold sum; returns the largest y
    whose threshold is at most n, together with a flag marking n below the
    first threshold.  Undefined when the dual's largest component is a
    single state.
    """
    if not is_invertible(machine):
        raise NotInvertible("zeta requires an invertible machine")
    c = norm(dual(machine))
    m = len(machine.alphabet)
    if c < 2:
        raise ValueError("zeta is undefined when the dual has norm 1")
    e = m**2

    def threshold(y):
        total = (m**e) * sum(c ** (e * j) for j in range(1, y + 1))
        return total - y * (y + 1) // 2

    if n < threshold(1):
        return ZetaValue(0, True)
    y = 1
    while threshold(y + 1) <= n:
        y += 1
    return ZetaValue(y, False)


@dataclass
class BoundedVerdict:
    """Outcome of the bounded-component decision procedure."""

    kind: str  # "yes" | "no" | "exhausted"
    limit: int
    prefix: str | None = None  # yes: word x with comp(x) recurring
    period: str | None = None  # yes: word y with comp(x (y^t)) all isomorphic
    component_size: int | None = None  # yes: the recurring component's size
    level: int | None = None  # no: first level with all components > limit
    chi_at_level: int | None = None  # no: smallest component size there
    horizon: int | None = None  # exhausted: levels actually searched
    best_size: int | None = None  # exhausted: smallest component at horizon
    completion_bound: int | None = None  # exhausted: level sufficient to decide


@dataclass
class _ChainNode:
    word: tuple
    canon: tuple
    size: int
    parent: object


def decide_bounded_schreier(machine, limit, horizon=24, budget=DEFAULT_VERTEX_BUDGET):
    """Decide whether some boundary point keeps components of size <= limit.

    Grows a tree of finite words whose components stay within the limit,
    deduplicating each level by marked component isomorphism (sound because
    the component of an extension depends only on the marked component of
    the prefix).  A node isomorphic to one of its ancestors proves "yes"
    with an eventually-periodic witness; a level with no surviving words
    proves "no"; otherwise the search reports exhaustion together with a
    level bound that would settle the question.
    """
    tables = _signed_tables(machine)
    m = len(machine.alphabet)
    letters = range(m)
    spent = 0
    frontier = []
    chi_history = []
    for k in range(1, horizon + 1):
        candidates = []
        if k == 1:
            for a in letters:
                candidates.append(((a,), None))
        else:
            for node in frontier:
                for a in letters:
                    candidates.append((node.word + (a,), node))
        level_nodes = []
        level_canons = set()
        level_min_size = None
        for word, parent in candidates:
            vertices, edges = _component_raw(tables, word, budget)
            spent += len(vertices)
            if spent > budget:
                raise BudgetExceeded(
                    "bounded-orbit search budget exhausted",
                    partial=BoundedVerdict(kind="exhausted", limit=limit, horizon=k - 1),
                )
            size = len(vertices)
            if level_min_size is None or size < level_min_size:
                level_min_size = size
            if size > limit:
                continue
            canon = canonical_marked(
                lambda v, g: edges[(v, g)], word, _gen_codes(tables)
            )
            anc = parent
            while anc is not None:
                if anc.canon == canon:
                    alphabet = machine.alphabet
                    return BoundedVerdict(
                        kind="yes",
                        limit=limit,
                        prefix=word_name(alphabet, anc.word),
                        period=word_name(alphabet, word[len(anc.word):]),
                        component_size=size,
                    )
                anc = anc.parent
            if canon in level_canons:
                continue
            level_canons.add(canon)
            level_nodes.append(_ChainNode(word, canon, size, parent))
        if not level_nodes:
            # No word of this length has a small component; the whole level
            # settles the question.
            chi_here = _full_level_chi(tables, m, k, budget)
            return BoundedVerdict(
                kind="no", limit=limit, level=k, chi_at_level=chi_here
            )
        chi_history.append(level_min_size)
        frontier = level_nodes
    c = norm(dual(machine))
    plateau = len(chi_history)
    for i in range(len(chi_history) - 1, -1, -1):
        if chi_history[i] == chi_history[-1]:
            plateau = i + 1
        else:
            break
    completion = (m * c**plateau) ** (m**2)
    best = min(node.size for node in frontier)
    return BoundedVerdict(
        kind="exhausted",
        limit=limit,
        horizon=horizon,
        best_size=best,
        completion_bound=completion,
    )


def _full_level_chi(tables, m, k, budget):
    """Smallest component size over the entire level k."""
    best = None
    seen = set()
    for w in itertools.product(range(m), repeat=k):
        if w in seen:
            continue
        vertices, _ = _component_raw(tables, w, budget)
        seen.update(v for v in vertices)
        if best is None or len(vertices) < best:
            best = len(vertices)
    return best


def verify_bounded_witness(machine, verdict, periods=4):
    """Re-expand a "yes" verdict: the components of prefix + t copies of the
    period must all match the witness component, for t = 0..periods."""
    if verdict.kind != "yes":
        raise ValueError("only yes-verdicts carry a witness")
    tables = _signed_tables(machine)
    alphabet = machine.alphabet
    prefix = parse_word(alphabet, verdict.prefix)
    period = parse_word(alphabet, verdict.period)
    base = tuple(alphabet.index(x) for x in prefix)
    per = tuple(alphabet.index(x) for x in period)
    reference = _component_canon(tables, base)
    sizes = []
    for t in range(periods + 1):
        word = base + per * t
        vertices, edges = _component_raw(tables, word)
        canon = canonical_marked(lambda v, g: edges[(v, g)], word, _gen_codes(tables))
        if canon != reference:
            return False
        sizes.append(len(vertices))
    return all(s == sizes[0] for s in sizes)


# ---------------------------------------------------------------------------
# Torsion


@dataclass
class TorsionWitness:
    """A word whose action has equal powers: u^index acts like u^(index+period)."""

    word: tuple
    index: int
    period: int


def torsion_search(machine, max_len, max_exp, budget=10**6):
    """Scan short input words for torsion in the dual semigroup's action.

    For each word u the actions of u, uu, uuu, ... on the machine's states
    (through the coupled action) eventually repeat iff u generates a finite
    monogenic semigroup; the first repetition gives the minimal index and
    period.  Returns the list of witnesses found.
    """
    dual_machine = dual(machine)
    witnesses = []
    for length in range(1, max_len + 1):
        for u in itertools.product(tuple(machine.alphabet), repeat=length):
            seen = {}
            for e in range(1, max_exp + 1):
                sig = action_signature(dual_machine, u * e, budget=budget)
                if sig in seen:
                    witnesses.append(
                        TorsionWitness(word=u, index=seen[sig], period=e - seen[sig])
                    )
                    break
                seen[sig] = e
    return witnesses


def torsion_bound_ell(machine, witness, order_budget=10**6):
    """Size bound for components of periodic points built from a torsion word.

    Uses the order of the level group at the witness word's length, raised
    to index + period - 1; exact big-integer arithmetic.
    """
    k = len(parse_word(machine.alphabet, witness.word))
    report = level_group(machine, k, order_budget)
    return report.order ** (witness.index + witness.period - 1)


@dataclass
class PeriodicFixEntry:
    period_word: str
    state_word: tuple
    nontrivial: bool


def periodic_stabilizer_scan(machine, max_period, max_gen_len, depth=4):
    """Find state words fixing some periodic boundary point w^infinity.

    A state word fixes w^infinity iff iterating "act on w, take the reached
    state word" only ever outputs w again until a state word repeats.  Each
    fixing word is also checked for acting nontrivially on words of the
    configured depth, which makes it interesting evidence.
    """
    _signed_tables(machine)  # validates invertibility
    gens = tuple(machine.states) + tuple(inverse_name(s) for s in machine.states)
    entries = []
    for plen in range(1, max_period + 1):
        for w in itertools.product(tuple(machine.alphabet), repeat=plen):
            wname = word_name(
                machine.alphabet, tuple(machine.alphabet.index(x) for x in w)
            )
            for glen in range(1, max_gen_len + 1):
                for g in itertools.product(gens, repeat=glen):
                    if any(
                        g[i] == inverse_name(g[i + 1]) for i in range(len(g) - 1)
                    ):
                        continue
                    s = g
                    seen = set()
                    fixes = True
                    while s not in seen:
                        seen.add(s)
                        out = act_output(machine, s, w)
                        if out != w:
                            fixes = False
                            break
                        s = act_transition(machine, s, w)
                    if fixes:
                        entries.append(
                            PeriodicFixEntry(
                                period_word=wname,
                                state_word=g,
                                nontrivial=not is_group_relation_up_to(
                                    machine, g, depth
                                ),
                            )
                        )
    return entries
