#!/usr/bin/env python3
"""Census of the machines attached to a small finite group.

For a built-in group (z2, z3, klein, s3) or a .group file, builds the
standard, palindrome, and identity machines, then reports reversibility
profiles, the relation ledger of the dual group, palindromic
diagnostics, torsion witnesses on the enriched duals, and the bounded
component decision for the identity machine's dual.
"""

import argparse
import sys

import mealyforge as mf

BUILTINS = {
    "z2": lambda: mf.GroupTable.cyclic(2),
    "z3": lambda: mf.GroupTable.cyclic(3),
    "klein": mf.GroupTable.klein,
    "s3": mf.GroupTable.symmetric3,
}


def load(name):
    if name in BUILTINS:
        return BUILTINS[name]()
    return mf.load_group(name)


def profile(label, machine):
    print(
        "%-18s invertible %-5s reversible %-5s bireversible %s"
        % (
            label,
            mf.is_invertible(machine),
            mf.is_reversible(machine),
            mf.is_bireversible(machine),
        )
    )


def census(group, k_max, depth):
    print("group of order %d: %s" % (len(group.elements), " ".join(group.elements)))
    standard = mf.cayley_machine(group)
    palindrome = mf.palindrome_machine(group)
    identity = mf.identity_machine_of(group)
    profile("standard", standard)
    profile("palindrome", palindrome)
    profile("identity", identity)

    print()
    ledger = mf.relation_recursion(group, k_max, verify_depth=depth)
    for length in sorted(ledger.n_sets):
        print(
            "relations of length %d: %d (invariant cores: %d)"
            % (length, len(ledger.n_sets[length]), len(ledger.v_sets[length]))
        )
    print("ledger verified to depth %d: %s" % (ledger.verified_depth, ledger.all_verified))

    print()
    diag = mf.palindromic_diagnostics(group, max_len=4)
    print("palindromic: %s" % diag.palindromic)
    print("level orders of the palindrome dual: %s" % diag.level_orders)

    print()
    check = mf.identity_machine_group_check(group, k_max=min(k_max, 4))
    print(
        "identity-machine dual: level orders %s, match %s, trivial stabilizers %s"
        % (check.level_orders, check.orders_match, check.stabilizers_trivial)
    )

    print()
    for label, machine in (("standard", standard), ("identity", identity)):
        enriched = mf.enriched_dual(machine).machine
        print("torsion witnesses on the enriched %s dual:" % label)
        try:
            witnesses = mf.torsion_search(enriched, 1, 8, budget=10**5)
        except mf.BudgetExceeded:
            print("  search budget exhausted (orbits too large to exponentiate)")
            continue
        if not witnesses:
            print("  none up to length 1")
        for w in witnesses:
            bound = mf.torsion_bound_ell(enriched, w)
            print(
                "  %-6s index %d period %d (orbit bound %d)"
                % (",".join(w.word), w.index, w.period, bound)
            )

    print()
    flipped = mf.dual(identity)
    verdict = mf.decide_bounded_schreier(flipped, len(group.elements))
    if verdict.kind == "yes":
        print(
            "bounded components of the identity dual: yes"
            " (size %d, witness prefix %r period %r)"
            % (verdict.component_size, verdict.prefix, verdict.period)
        )
    else:
        print(
            "bounded components of the identity dual: %s (level %s)"
            % (verdict.kind, verdict.level)
        )


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "group", help="builtin name (%s) or .group file" % ", ".join(sorted(BUILTINS))
    )
    parser.add_argument(
        "--k-max",
        type=int,
        default=None,
        help="largest ledger length (default: 4 for groups of order <= 3, else 2)",
    )
    parser.add_argument(
        "--depth",
        type=int,
        default=None,
        help="verification depth (default: 6 for groups of order <= 3, else 3)",
    )
    args = parser.parse_args(argv)
    group = load(args.group)
    small = len(group.elements) <= 3
    k_max = args.k_max if args.k_max is not None else (4 if small else 2)
    depth = args.depth if args.depth is not None else (6 if small else 3)
    census(group, k_max, depth)
    return 0


if __name__ == "__main__":
    sys.exit(main())
