"""Machine constructions: dual, inverse, union, enrichment, products, powers.

Composition convention: in ``product(m1, m2)`` the left factor reads the raw
input letter and feeds its output to the right factor, so the product's
action on words is "m1 first, then m2".  Powers iterate that product, and a
power state tuple (q1, ..., qk) therefore acts like the state word qk...q1.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .errors import AlphabetMismatch, BudgetExceeded, NotInvertible, NotReversible
from .machines import (
    Alphabet,
    MealyMachine,
    inverse_name,
    is_invertible,
    is_reversible,
)

DEFAULT_STATE_BUDGET = 10**7


def dual(machine):
    """Dual machine: swaps the roles of states and letters.

    The dual has an edge a --p|q--> b exactly when the machine has an edge
    p --a|b--> q; it is always deterministic and complete.
    """
    n = len(machine.states)
    m = len(machine.alphabet)
    trans = [[0] * n for _ in range(m)]
    outs = [[0] * n for _ in range(m)]
    for q in range(n):
        for a in range(m):
            trans[a][q] = machine.outputs[q][a]
            outs[a][q] = machine.transitions[q][a]
    return MealyMachine.from_tables(
        tuple(machine.alphabet), Alphabet(machine.states), trans, outs
    )


def inverse_machine(machine):
    """Machine of formal inverses: q^-1 --a|b--> p^-1 iff q --b|a--> p."""
    if not is_invertible(machine):
        raise NotInvertible("inverse machine requires an invertible machine")
    n = len(machine.states)
    m = len(machine.alphabet)
    trans = [[0] * m for _ in range(n)]
    outs = [[0] * m for _ in range(n)]
    for q in range(n):
        for b in range(m):
            a = machine.outputs[q][b]
            trans[q][a] = machine.transitions[q][b]
            outs[q][a] = b
    return MealyMachine.from_tables(
        tuple(inverse_name(s) for s in machine.states),
        machine.alphabet,
        trans,
        outs,
    )


def disjoint_union(m1, m2):
    """Disjoint union of two machines over the same alphabet."""
    if tuple(m1.alphabet) != tuple(m2.alphabet):
        raise AlphabetMismatch("disjoint union requires equal alphabets")
    states = tuple(m1.states) + tuple(m2.states)
    if len(set(states)) != len(states):
        raise AlphabetMismatch("disjoint union requires distinct state names")
    n1 = len(m1.states)
    trans = [tuple(row) for row in m1.transitions]
    trans += [tuple(t + n1 for t in row) for row in m2.transitions]
    outs = [tuple(row) for row in m1.outputs] + [tuple(row) for row in m2.outputs]
    return MealyMachine.from_tables(states, m1.alphabet, trans, outs)


@dataclass(frozen=True)
class EnrichedMachine:
    """A machine whose alphabet is closed under formal inversion.

    The first ``positive`` letters are the original alphabet; letter i and
    letter i + positive are formal inverses of each other.
    """

    machine: MealyMachine
    positive: int

    @property
    def alphabet(self):
        return self.machine.alphabet

    @property
    def states(self):
        return self.machine.states

    def involution(self, letter):
        """The formally inverse letter name."""
        i = self.machine.alphabet.index(letter)
        j = i + self.positive if i < self.positive else i - self.positive
        return self.machine.alphabet[j]

    def positive_letters(self):
        return self.machine.alphabet.symbols[: self.positive]


def enrich(machine):
    """Add, for every edge q --a|b--> p, the reversed edge p --a^-1|b^-1--> q.

    Requires a reversible machine; the result is a complete deterministic
    machine over the alphabet extended with formal inverse letters.
    """
    if not is_reversible(machine):
        raise NotReversible("enrichment requires a reversible machine")
    n = len(machine.states)
    m = len(machine.alphabet)
    symbols = tuple(machine.alphabet) + tuple(inverse_name(a) for a in machine.alphabet)
    trans = [list(row) + [0] * m for row in machine.transitions]
    outs = [list(row) + [0] * m for row in machine.outputs]
    for a in range(m):
        for q in range(n):
            p = machine.transitions[q][a]
            b = machine.outputs[q][a]
            trans[p][m + a] = q
            outs[p][m + a] = m + b
    enriched = MealyMachine.from_tables(machine.states, Alphabet(symbols), trans, outs)
    return EnrichedMachine(enriched, m)


def enriched_dual(machine):
    """The enriched dual (the dual with formally inverted letters added).

    Defined whenever the machine is invertible, since the dual of an
    invertible machine is reversible.
    """
    if not is_invertible(machine):
        raise NotInvertible("the enriched dual requires an invertible machine")
    return enrich(dual(machine))


def product(m1, m2):
    """Product machine: the left factor reads the input, the right factor
    reads the left factor's output."""
    if tuple(m1.alphabet) != tuple(m2.alphabet):
        raise AlphabetMismatch("product requires equal alphabets")
    n1, n2 = len(m1.states), len(m2.states)
    m = len(m1.alphabet)
    states = tuple(
        "%s,%s" % (s1, s2) for s1 in m1.states for s2 in m2.states
    )
    trans = []
    outs = []
    for q1 in range(n1):
        for q2 in range(n2):
            trow = []
            orow = []
            for a in range(m):
                c = m1.outputs[q1][a]
                trow.append(m1.transitions[q1][a] * n2 + m2.transitions[q2][c])
                orow.append(m2.outputs[q2][c])
            trans.append(tuple(trow))
            outs.append(tuple(orow))
    return MealyMachine.from_tables(states, m1.alphabet, trans, outs)


def product_of_enriched(e1, e2):
    """Product of two enriched machines, kept enriched."""
    if e1.positive != e2.positive:
        raise AlphabetMismatch("enriched product requires matching signings")
    return EnrichedMachine(product(e1.machine, e2.machine), e1.positive)


@dataclass(frozen=True)
class PowerMachine:
    """A materialized power of a machine.

    ``machine`` is the power itself (possibly only the part reachable from a
    chosen base tuple); its state names are comma-joined base-state tuples,
    left component acting first.
    """

    machine: MealyMachine
    base: MealyMachine
    exponent: int

    def state_tuple(self, name):
        return tuple(name.split(","))


def power(machine, k, base=None, budget=None):
    """k-th power of the machine under the product.

    With ``base`` (a tuple of state names) only the part reachable from that
    tuple is materialized.  Raises BudgetExceeded when the number of table
    cells would exceed the budget.
    """
    if k < 1:
        raise ValueError("power exponent must be >= 1")
    budget = DEFAULT_STATE_BUDGET if budget is None else budget
    n = len(machine.states)
    m = len(machine.alphabet)

    def step(tup, a):
        cur = a
        out = []
        for q in tup:
            out.append(machine.transitions[q][cur])
            cur = machine.outputs[q][cur]
        return tuple(out), cur

    if base is None:
        if (n**k) * m > budget:
            raise BudgetExceeded("power machine would exceed the state budget")
        tuples = list(itertools.product(range(n), repeat=k))
    else:
        start = tuple(machine.state_index(s) for s in base)
        if len(start) != k:
            raise ValueError("base tuple length must equal the exponent")
        seen = {start}
        queue = deque([start])
        tuples = []
        while queue:
            tup = queue.popleft()
            tuples.append(tup)
            for a in range(m):
                nxt, _ = step(tup, a)
                if nxt not in seen:
                    if (len(seen) + 1) * m > budget:
                        raise BudgetExceeded("power machine budget exhausted")
                    seen.add(nxt)
                    queue.append(nxt)
    index = {tup: i for i, tup in enumerate(tuples)}
    trans = []
    outs = []
    for tup in tuples:
        trow = []
        orow = []
        for a in range(m):
            nxt, c = step(tup, a)
            trow.append(index[nxt])
            orow.append(c)
        trans.append(tuple(trow))
        outs.append(tuple(orow))
    states = tuple(",".join(machine.states[q] for q in tup) for tup in tuples)
    power_machine = MealyMachine.from_tables(states, machine.alphabet, trans, outs)
    return PowerMachine(power_machine, machine, k)


def symmetric_power(machine, j, budget=None):
    """Repeated self-product of the enriched dual: S_0 = enriched dual,
    S_{i+1} = S_i S_i.  Requires an invertible, reversible machine."""
    if not (is_invertible(machine) and is_reversible(machine)):
        raise NotReversible("symmetric powers require an invertible reversible machine")
    budget = DEFAULT_STATE_BUDGET if budget is None else budget
    current = enriched_dual(machine)
    for _ in range(j):
        size = len(current.machine.states) ** 2 * len(current.machine.alphabet)
        if size > budget:
            raise BudgetExceeded("symmetric power budget exhausted")
        current = product_of_enriched(current, current)
    return current


def inverse_of_product_matches(m1, m2):
    """Check that enriching a product equals the product of enrichments."""
    lhs = enrich(product(m1, m2)).machine
    rhs = product(enrich(m1).machine, enrich(m2).machine)
    return lhs == rhs


def product_reversibility_converse(m1, m2):
    """Whether reversibility of the product forces it for both factors.

    Valid only when every letter occurs as an output letter of the left
    factor; returns None when that side condition fails.
    """
    used = {b for row in m1.outputs for b in row}
    if used != set(range(len(m1.alphabet))):
        return None
    both = is_reversible(m1) and is_reversible(m2)
    return is_reversible(product(m1, m2)) == both
