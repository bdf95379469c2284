"""Plain-text machine and group formats, DOT export, JSON serialization.

Machine files:

    # optional comments
    states: q e
    alphabet: 0 1
    q 0 -> e 1
    q 1 -> q 0
    e 0 -> e 0
    e 1 -> e 1

Group files (identity first, one multiplication row per element):

    elements: e a
    e: e a
    a: a e

Both formats are whitespace-insensitive and round-trip through their
formatters verbatim.
"""

from __future__ import annotations

import hashlib
import json

from .cayley import GroupTable
from .errors import ParseError
from .machines import MealyMachine


def parse_machine(text):
    """Parse the machine file format into a MealyMachine."""
    states = None
    alphabet = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("states:"):
            if states is not None:
                raise ParseError("duplicate states line", lineno)
            states = tuple(line[len("states:"):].split())
            if not states:
                raise ParseError("empty states line", lineno)
            continue
        if line.startswith("alphabet:"):
            if alphabet is not None:
                raise ParseError("duplicate alphabet line", lineno)
            alphabet = tuple(line[len("alphabet:"):].split())
            if not alphabet:
                raise ParseError("empty alphabet line", lineno)
            continue
        parts = line.split()
        if len(parts) != 5 or parts[2] != "->":
            raise ParseError(
                "expected 'STATE LETTER -> STATE LETTER', got %r" % (line,), lineno
            )
        if states is None or alphabet is None:
            raise ParseError("edges must follow the states and alphabet lines", lineno)
        src, a_in, _, dst, a_out = parts
        edges.append((src, a_in, dst, a_out))
    if states is None:
        raise ParseError("missing states line")
    if alphabet is None:
        raise ParseError("missing alphabet line")
    return MealyMachine.from_edges(states, alphabet, edges)


def format_machine(machine):
    """Canonical machine file text (edges in declaration order)."""
    lines = [
        "states: %s" % " ".join(machine.states),
        "alphabet: %s" % " ".join(machine.alphabet),
    ]
    for src, a_in, dst, a_out in machine.edges():
        lines.append("%s %s -> %s %s" % (src, a_in, dst, a_out))
    return "\n".join(lines) + "\n"


def load_machine(path):
    with open(path, encoding="utf-8") as fh:
        return parse_machine(fh.read())


def parse_group(text):
    """Parse the group file format into a validated GroupTable."""
    elements = None
    rows = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("elements:"):
            if elements is not None:
                raise ParseError("duplicate elements line", lineno)
            elements = tuple(line[len("elements:"):].split())
            if not elements:
                raise ParseError("empty elements line", lineno)
            continue
        if ":" not in line:
            raise ParseError("expected 'ELEMENT: products...', got %r" % (line,), lineno)
        head, _, tail = line.partition(":")
        name = head.strip()
        if elements is None:
            raise ParseError("rows must follow the elements line", lineno)
        if name in rows:
            raise ParseError("duplicate row for %r" % (name,), lineno)
        rows[name] = tuple(tail.split())
    if elements is None:
        raise ParseError("missing elements line")
    missing = [g for g in elements if g not in rows]
    if missing:
        raise ParseError("missing multiplication rows for %s" % ", ".join(missing))
    return GroupTable.from_rows(elements, [rows[g] for g in elements])


def format_group(group):
    lines = ["elements: %s" % " ".join(group.elements)]
    for i, g in enumerate(group.elements):
        products = " ".join(group.elements[j] for j in group.table[i])
        lines.append("%s: %s" % (g, products))
    return "\n".join(lines) + "\n"


def load_group(path):
    with open(path, encoding="utf-8") as fh:
        return parse_group(fh.read())


def machine_to_dot(machine, name="machine"):
    """GraphViz rendering with a|b edge labels."""
    lines = ["digraph %s {" % name, "  rankdir=LR;"]
    for src, a_in, dst, a_out in machine.edges():
        lines.append('  "%s" -> "%s" [label="%s|%s"];' % (src, dst, a_in, a_out))
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dot(vertices, positive_edges, name="graph"):
    """GraphViz rendering of an involutive graph, one arc per edge pair."""
    lines = ["digraph %s {" % name, "  rankdir=LR;"]
    for v in vertices:
        lines.append('  "%s";' % v)
    for v, label, w in positive_edges:
        lines.append('  "%s" -> "%s" [label="%s"];' % (v, w, label))
    lines.append("}")
    return "\n".join(lines) + "\n"


def machine_to_dict(machine):
    return {
        "states": list(machine.states),
        "alphabet": list(machine.alphabet),
        "edges": [list(e) for e in machine.edges()],
    }


def machine_digest(machine):
    """Stable content hash of a machine's canonical text."""
    return hashlib.sha256(format_machine(machine).encode()).hexdigest()


def dump_json(payload, indent=2):
    return json.dumps(payload, indent=indent, sort_keys=True, default=_coerce) + "\n"


def _coerce(value):
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    if isinstance(value, tuple):
        return list(value)
    if hasattr(value, "__dict__"):
        return vars(value)
    raise TypeError("cannot serialize %r" % (type(value),))
