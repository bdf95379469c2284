"""Groups and semigroups generated by Mealy machines, via the enriched dual."""

from .errors import (
    AlphabetMismatch,
    BudgetExceeded,
    DuplicateTransition,
    MealyError,
    MissingTransition,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotInvertible,
    NotReversible,
    OddLength,
    ParseError,
    SignedStateOnNonInvertible,
    UnknownSymbol,
)
from .machines import (
    Alphabet,
    MealyMachine,
    SignedLetter,
    act_output,
    act_pair,
    act_transition,
    action_signature,
    all_words,
    inverse_name,
    invert_word,
    is_bireversible,
    is_invertible,
    is_reversible,
    machine_isomorphic,
    minimize,
    parse_word,
    reduce_word,
    states_equivalent,
)
from .constructions import (
    EnrichedMachine,
    PowerMachine,
    disjoint_union,
    dual,
    enrich,
    enriched_dual,
    inverse_machine,
    inverse_of_product_matches,
    power,
    product,
    product_of_enriched,
    product_reversibility_converse,
    symmetric_power,
)
from .graphs import (
    InclusionResult,
    InverseAutomaton,
    automaton_canonical_form,
    basis,
    canonical_marked,
    core,
    fold,
    involutive_closure,
    language_included,
    membership,
    morphism_exists,
    signed_labels,
    stallings_automaton,
)
from .levels import (
    GrowthReport,
    LevelGraph,
    LevelGroupReport,
    TransducerComponent,
    colliding_pair,
    find_relations,
    free_semigroup_check,
    growth_chi,
    is_group_relation_up_to,
    level_component,
    level_graph,
    level_group,
    norm,
    orbit_oracle,
    schreier_stabilizer_generators,
    semigroup_relation_exact,
)
from .boundary import (
    BoundedVerdict,
    FinitenessVerdict,
    InfinitenessCertificate,
    SwappingCycle,
    TorsionWitness,
    ZetaValue,
    decide_bounded_schreier,
    finiteness_semidecision,
    infiniteness_certificate,
    is_supersymmetric,
    periodic_stabilizer_scan,
    swapping_cycle,
    swapping_inclusion,
    swapping_invariant,
    torsion_bound_ell,
    torsion_search,
    verify_bounded_witness,
    zeta,
)
from .cayley import (
    GroupTable,
    IdentityMachineReport,
    PalindromicReport,
    RelationLedger,
    alternating_map,
    cayley_machine,
    group_from_table,
    identity_machine_group_check,
    identity_machine_of,
    palindrome_machine,
    palindromic_diagnostics,
    phi_machine,
    relation_recursion,
)
from .fileio import (
    dump_json,
    format_group,
    format_machine,
    graph_to_dot,
    load_group,
    load_machine,
    machine_digest,
    machine_to_dict,
    machine_to_dot,
    parse_group,
    parse_machine,
)

__version__ = "0.1.0"
