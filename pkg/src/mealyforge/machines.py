"""Letter-to-letter Mealy transducers and their coupled actions.

A machine has a finite state set Q and a finite alphabet A, and for every
pair (q, a) a next state delta(q, a) and an output letter lambda(q, a).
Machines act on input words letter by letter; words of states act with the
rightmost state touching the raw input first, so that appending a state to
the right of a state word pre-composes its action.

Formally-inverted states are written with a ``^-1`` suffix ("q^-1") and are
available whenever the machine is invertible; they act by the inverse of
the state's output permutation, with transitions mirrored accordingly.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .errors import (
    BudgetExceeded,
    DuplicateTransition,
    MissingTransition,
    NotInvertible,
    SignedStateOnNonInvertible,
    UnknownSymbol,
)

INVERSE_SUFFIX = "^-1"


def inverse_name(name):
    """Formal inverse of a state or letter name ("q" <-> "q^-1")."""
    if name.endswith(INVERSE_SUFFIX):
        return name[: -len(INVERSE_SUFFIX)]
    return name + INVERSE_SUFFIX


def is_inverse_name(name):
    return name.endswith(INVERSE_SUFFIX)


def base_name(name):
    return name[: -len(INVERSE_SUFFIX)] if is_inverse_name(name) else name


@dataclass(frozen=True)
class SignedLetter:
    """A symbol together with a formal sign; positive letters embed."""

    name: str
    sign: int = 1

    def inverse(self):
        return SignedLetter(self.name, -self.sign)

    def __str__(self):
        return self.name if self.sign > 0 else self.name + INVERSE_SUFFIX

    @classmethod
    def parse(cls, token: str) -> "SignedLetter":
        if token.endswith(INVERSE_SUFFIX):
            return cls(token[: -len(INVERSE_SUFFIX)], -1)
        return cls(token, 1)


def invert_word(word):
    """Group inverse of a signed word: reverse and flip every sign."""
    return tuple(inverse_name(x) for x in reversed(word))


def reduce_word(word):
    """Free reduction: cancel adjacent x, x^-1 pairs."""
    out = []
    for token in word:
        if out and out[-1] == inverse_name(token):
            out.pop()
        else:
            out.append(token)
    return tuple(out)


@dataclass(frozen=True)
class Alphabet:
    """An immutable, ordered set of symbol names."""

    symbols: tuple

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if len(set(self.symbols)) != len(self.symbols):
            raise UnknownSymbol("duplicate symbols in alphabet: %r" % (self.symbols,))
        for s in self.symbols:
            if not s or any(c.isspace() for c in s) or "#" in s or ":" in s:
                raise UnknownSymbol("bad symbol name: %r" % (s,))

    def index(self, symbol):
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise UnknownSymbol("symbol %r not in alphabet %r" % (symbol, self.symbols)) from None

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol):
        return symbol in self.symbols

    def __getitem__(self, i):
        return self.symbols[i]


@dataclass(frozen=True)
class MealyMachine:
    """A complete deterministic letter-to-letter transducer.

    ``transitions[q][a]`` and ``outputs[q][a]`` are state/letter indices.
    """

    states: tuple
    alphabet: Alphabet
    transitions: tuple
    outputs: tuple

    @classmethod
    def from_tables(cls, states, alphabet, transitions, outputs):
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(tuple(alphabet))
        states = tuple(states)
        if len(set(states)) != len(states):
            raise UnknownSymbol("duplicate state names: %r" % (states,))
        for s in states:
            if not s or any(c.isspace() for c in s) or "#" in s or ":" in s:
                raise UnknownSymbol("bad state name: %r" % (s,))
        transitions = tuple(tuple(row) for row in transitions)
        outputs = tuple(tuple(row) for row in outputs)
        n, m = len(states), len(alphabet)
        if len(transitions) != n or len(outputs) != n:
            raise MissingTransition("tables must have one row per state")
        for q in range(n):
            if len(transitions[q]) != m or len(outputs[q]) != m:
                raise MissingTransition("state %r has an incomplete row" % (states[q],))
            for a in range(m):
                if not 0 <= transitions[q][a] < n:
                    raise UnknownSymbol("bad target index in row of %r" % (states[q],))
                if not 0 <= outputs[q][a] < m:
                    raise UnknownSymbol("bad output index in row of %r" % (states[q],))
        return cls(states, alphabet, transitions, outputs)

    @classmethod
    def from_edges(cls, states, alphabet, edges):
        """Build a machine from (state, in_letter, next_state, out_letter) tuples."""
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(tuple(alphabet))
        states = tuple(states)
        sidx = {s: i for i, s in enumerate(states)}
        if len(sidx) != len(states):
            raise UnknownSymbol("duplicate state names: %r" % (states,))
        n, m = len(states), len(alphabet)
        trans = [[None] * m for _ in range(n)]
        outs = [[None] * m for _ in range(n)]
        for src, a_in, dst, a_out in edges:
            if src not in sidx:
                raise UnknownSymbol("unknown state %r" % (src,))
            if dst not in sidx:
                raise UnknownSymbol("unknown state %r" % (dst,))
            q, a = sidx[src], alphabet.index(a_in)
            b = alphabet.index(a_out)
            if trans[q][a] is not None:
                raise DuplicateTransition("two edges at (%r, %r)" % (src, a_in))
            trans[q][a] = sidx[dst]
            outs[q][a] = b
        for q in range(n):
            for a in range(m):
                if trans[q][a] is None:
                    raise MissingTransition(
                        "no edge at (%r, %r)" % (states[q], alphabet[a])
                    )
        return cls.from_tables(states, alphabet, trans, outs)

    def state_index(self, name):
        try:
            return self.states.index(name)
        except ValueError:
            raise UnknownSymbol("state %r not in machine" % (name,)) from None

    def edges(self):
        """Iterate (state, in_letter, next_state, out_letter) name tuples."""
        for q, s in enumerate(self.states):
            for a, x in enumerate(self.alphabet):
                yield (s, x, self.states[self.transitions[q][a]], self.alphabet[self.outputs[q][a]])

    def word(self, text):
        """Parse an input word: a string splits per character for one-character
        alphabets, otherwise on commas or whitespace."""
        return parse_word(self.alphabet, text)


def parse_word(alphabet, text):
    """Coerce ``text`` to a tuple of letters of ``alphabet``."""
    if isinstance(text, str):
        if text in alphabet:
            parts = [text]
        elif "," in text:
            parts = [p for p in text.split(",") if p]
        elif any(c.isspace() for c in text):
            parts = text.split()
        elif all(len(s) == 1 for s in alphabet):
            parts = list(text)
        else:
            parts = [text] if text else []
        word = tuple(parts)
    else:
        word = tuple(text)
    for x in word:
        if x not in alphabet:
            raise UnknownSymbol("letter %r not in alphabet %r" % (x, tuple(alphabet)))
    return word


def is_invertible(machine):
    """True when every state's output map is a permutation of the alphabet."""
    m = len(machine.alphabet)
    return all(len(set(row)) == m for row in machine.outputs)


def is_reversible(machine):
    """True when every letter's transition map is a permutation of the states."""
    n = len(machine.states)
    for a in range(len(machine.alphabet)):
        if len({machine.transitions[q][a] for q in range(n)}) != n:
            return False
    return True


def is_bireversible(machine):
    """True when the machine and its output automaton are both reversible."""
    if not is_reversible(machine):
        return False
    n = len(machine.states)
    for b in range(len(machine.alphabet)):
        sources = []
        targets = []
        for q in range(n):
            for a in range(len(machine.alphabet)):
                if machine.outputs[q][a] == b:
                    sources.append(q)
                    targets.append(machine.transitions[q][a])
        if len(sources) != n or len(set(sources)) != n or len(set(targets)) != n:
            return False
    return True


class SignedTables:
    """Transition/output tables extended to formally inverted states.

    State indices 0..n-1 are the machine's own states; when the machine is
    invertible, indices n..2n-1 are their formal inverses.
    """

    def __init__(self, machine):
        self.machine = machine
        n = len(machine.states)
        self.n = n
        self.n_letters = len(machine.alphabet)
        delta = [list(row) for row in machine.transitions]
        lam = [list(row) for row in machine.outputs]
        self.invertible = is_invertible(machine)
        if self.invertible:
            for q in range(n):
                drow = [0] * self.n_letters
                lrow = [0] * self.n_letters
                for a in range(self.n_letters):
                    b = machine.outputs[q][a]
                    lrow[b] = a
                    drow[b] = machine.transitions[q][a] + n
                delta.append(drow)
                lam.append(lrow)
        self.delta = delta
        self.lam = lam

    def state_code(self, name):
        """Index of a possibly-signed state name; literal state names take
        precedence over the signed reading of an inverse suffix."""
        if name in self.machine.states:
            return self.machine.states.index(name)
        if is_inverse_name(name):
            if not self.invertible:
                raise SignedStateOnNonInvertible(
                    "state %r used on a non-invertible machine" % (name,)
                )
            return self.machine.state_index(base_name(name)) + self.n
        return self.machine.state_index(name)

    def state_name(self, code):
        if code < self.n:
            return self.machine.states[code]
        return inverse_name(self.machine.states[code - self.n])

    def codes(self, state_word):
        if isinstance(state_word, str):
            raise TypeError(
                "state words must be sequences of state names, not a bare string"
            )
        return [self.state_code(s) for s in state_word]


def _run(tables, codes, letters):
    """Thread every input letter through the state word, rightmost state first."""
    delta, lam = tables.delta, tables.lam
    out = []
    for a in letters:
        cur = a
        for i in range(len(codes) - 1, -1, -1):
            s = codes[i]
            codes[i] = delta[s][cur]
            cur = lam[s][cur]
        out.append(cur)
    return out


def act_output(machine, states, word, _tables=None):
    """Output word produced by the state word acting on ``word``."""
    tables = _tables or SignedTables(machine)
    codes = tables.codes(states)
    letters = [machine.alphabet.index(x) for x in parse_word(machine.alphabet, word)]
    out = _run(tables, codes, letters)
    return tuple(machine.alphabet[b] for b in out)


def act_transition(machine, states, word, _tables=None):
    """State word reached after the state word processes ``word``."""
    tables = _tables or SignedTables(machine)
    codes = tables.codes(states)
    letters = [machine.alphabet.index(x) for x in parse_word(machine.alphabet, word)]
    _run(tables, codes, letters)
    return tuple(tables.state_name(c) for c in codes)


def act_pair(machine, states, word, _tables=None):
    """Both halves of the coupled action: (output word, next state word)."""
    tables = _tables or SignedTables(machine)
    codes = tables.codes(states)
    letters = [machine.alphabet.index(x) for x in parse_word(machine.alphabet, word)]
    out = _run(tables, codes, letters)
    return (
        tuple(machine.alphabet[b] for b in out),
        tuple(tables.state_name(c) for c in codes),
    )


def states_equivalent(machine, u, v, budget=10**6):
    """Exact action equality of two state words, by breadth-first bisimulation.

    Explores the closure of the pair (u, v) under single-letter transitions,
    comparing single-letter outputs; equivalent to partition refinement on
    the reachable part of the coupled power machine.
    """
    tables = SignedTables(machine)
    start = (tuple(tables.codes(u)), tuple(tables.codes(v)))
    seen = {start}
    queue = deque([start])
    n_letters = tables.n_letters
    while queue:
        cu, cv = queue.popleft()
        for a in range(n_letters):
            xu = list(cu)
            xv = list(cv)
            ou = _run(tables, xu, [a])[0]
            ov = _run(tables, xv, [a])[0]
            if ou != ov:
                return False
            nxt = (tuple(xu), tuple(xv))
            if nxt not in seen:
                if len(seen) >= budget:
                    raise BudgetExceeded("bisimulation pair budget exhausted")
                seen.add(nxt)
                queue.append(nxt)
    return True


def minimize(machine):
    """Quotient of the machine by action equality of single states."""
    n = len(machine.states)
    m = len(machine.alphabet)
    block = {q: machine.outputs[q] for q in range(n)}
    labels = {}
    for q in range(n):
        labels.setdefault(block[q], len(labels))
    cls = [labels[block[q]] for q in range(n)]
    while True:
        sig = {}
        new = [0] * n
        for q in range(n):
            key = (cls[q], tuple(cls[machine.transitions[q][a]] for a in range(m)))
            if key not in sig:
                sig[key] = len(sig)
            new[q] = sig[key]
        if new == cls:
            break
        cls = new
    n_classes = max(cls) + 1
    reps = [None] * n_classes
    for q in range(n):
        if reps[cls[q]] is None:
            reps[cls[q]] = q
    order = sorted(range(n_classes), key=lambda c: reps[c])
    relabel = {c: i for i, c in enumerate(order)}
    reps = [reps[c] for c in order]
    trans = []
    outs = []
    for q in reps:
        trans.append(tuple(relabel[cls[machine.transitions[q][a]]] for a in range(m)))
        outs.append(tuple(machine.outputs[q]))
    return MealyMachine.from_tables(
        tuple(machine.states[q] for q in reps), machine.alphabet, trans, outs
    )


def action_signature(machine, states, budget=10**6):
    """Canonical fingerprint of the action of a state word.

    Materializes the sub-machine reachable from the state word, minimizes it
    and serializes it breadth-first from the initial class; two state words
    act identically on all input words iff their signatures are equal.
    """
    tables = SignedTables(machine)
    start = tuple(tables.codes(states))
    n_letters = tables.n_letters
    nodes = {start: 0}
    rows = []  # rows[i] = (outputs tuple, targets tuple)
    queue = deque([start])
    while queue:
        node = queue.popleft()
        outs = []
        targets = []
        for a in range(n_letters):
            codes = list(node)
            b = _run(tables, codes, [a])[0]
            nxt = tuple(codes)
            if nxt not in nodes:
                if len(nodes) >= budget:
                    raise BudgetExceeded("action signature node budget exhausted")
                nodes[nxt] = len(nodes)
                queue.append(nxt)
            outs.append(b)
            targets.append(nodes[nxt])
        rows.append((tuple(outs), tuple(targets)))
    # Moore refinement over the reachable nodes.
    cls = {}
    for i, (outs, _) in enumerate(rows):
        cls.setdefault(outs, len(cls))
    labels = [cls[rows[i][0]] for i in range(len(rows))]
    while True:
        sig = {}
        new = [0] * len(rows)
        for i in range(len(rows)):
            key = (labels[i], tuple(labels[t] for t in rows[i][1]))
            if key not in sig:
                sig[key] = len(sig)
            new[i] = sig[key]
        if new == labels:
            break
        labels = new
    # Canonical breadth-first serialization of the quotient from the start class.
    rep = {}
    for i in range(len(rows)):
        rep.setdefault(labels[i], i)
    order = {labels[0]: 0}
    queue = deque([labels[0]])
    serial = []
    while queue:
        c = queue.popleft()
        i = rep[c]
        outs, targets = rows[i]
        row = []
        for a in range(n_letters):
            t = labels[targets[a]]
            if t not in order:
                order[t] = len(order)
                queue.append(t)
            row.append((outs[a], order[t]))
        serial.append(tuple(row))
    return tuple(serial)


def all_words(alphabet, length):
    """All words of the given length, in lexicographic order."""
    return itertools.product(tuple(alphabet), repeat=length)


def machine_isomorphic(m1, m2):
    """Equality of machines up to renaming states (alphabets must match).

    Tries base-point-free canonical forms: minimally, checks all matchings of
    states via backtracking; machines here are small enough for that.
    """
    if tuple(m1.alphabet) != tuple(m2.alphabet):
        return False
    if len(m1.states) != len(m2.states):
        return False
    n = len(m1.states)
    m = len(m1.alphabet)

    def consistent(mapping):
        for p, img in mapping.items():
            for a in range(m):
                if m1.outputs[p][a] != m2.outputs[img][a]:
                    return False
                t = m1.transitions[p][a]
                if t in mapping and mapping[t] != m2.transitions[img][a]:
                    return False
        return True

    def extend(mapping, q):
        if q == n:
            return True
        for cand in range(n):
            if cand in mapping.values():
                continue
            mapping[q] = cand
            if consistent(mapping) and extend(mapping, q + 1):
                return True
            del mapping[q]
        return False

    return extend({}, 0)
