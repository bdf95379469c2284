"""Seeded random machine samplers and small oracles shared by test modules."""

from collections import deque

import mealyforge as mf


def ball_membership(generators, cap):
    """All subgroup elements of reduced length <= cap, by saturating products."""
    signed = [tuple(g) for g in generators] + [
        mf.invert_word(g) for g in generators
    ]
    seen = {()}
    queue = deque([()])
    while queue:
        word = queue.popleft()
        for g in signed:
            nxt = mf.reduce_word(word + g)
            if len(nxt) <= cap and nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def make(n, m, transitions, outputs):
    return mf.MealyMachine.from_tables(
        tuple("s%d" % i for i in range(n)),
        tuple(str(j) for j in range(m)),
        transitions,
        outputs,
    )


def rand_machine(rng, n, m):
    """Uniformly random transition and output tables."""
    transitions = [[rng.randrange(n) for _ in range(m)] for _ in range(n)]
    outputs = [[rng.randrange(m) for _ in range(m)] for _ in range(n)]
    return make(n, m, transitions, outputs)


def rand_invertible(rng, n, m):
    """Random machine whose output rows are permutations of the alphabet."""
    transitions = [[rng.randrange(n) for _ in range(m)] for _ in range(n)]
    outputs = []
    for _ in range(n):
        row = list(range(m))
        rng.shuffle(row)
        outputs.append(row)
    return make(n, m, transitions, outputs)


def rand_reversible(rng, n, m):
    """Random machine whose transition columns are permutations of the states."""
    cols = []
    for _ in range(m):
        col = list(range(n))
        rng.shuffle(col)
        cols.append(col)
    transitions = [[cols[a][q] for a in range(m)] for q in range(n)]
    outputs = [[rng.randrange(m) for _ in range(m)] for _ in range(n)]
    return make(n, m, transitions, outputs)


def rand_bireversible(rng, n, m, tries=10000):
    """Rejection-sample a bireversible machine (permutation rows and columns)."""
    for _ in range(tries):
        cols = []
        for _ in range(m):
            col = list(range(n))
            rng.shuffle(col)
            cols.append(col)
        transitions = [[cols[a][q] for a in range(m)] for q in range(n)]
        outputs = []
        for _ in range(n):
            row = list(range(m))
            rng.shuffle(row)
            outputs.append(row)
        candidate = make(n, m, transitions, outputs)
        if mf.is_bireversible(candidate):
            return candidate
    raise RuntimeError("no bireversible machine found in %d tries" % tries)
