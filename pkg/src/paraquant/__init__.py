"""Paraconsistent propositional logic (da Costa's first calculus) with an
exact two-qubit CHSH harness: parse and check formulas and proofs, decide
validity and entailment with countermodels, simulate the nonlocal game, and
certify that quantum-style gluts do not explode.
"""

from .formulas import (
    And,
    Formula,
    Iff,
    Implies,
    Neg,
    Or,
    ParseError,
    UnboundVariableError,
    Var,
    expand_iff,
    node_count,
    parse,
    render,
    strong_negation,
    subformulas,
    substitute,
    variables,
    well_behaved,
)
from .semantics import (
    BudgetExceededError,
    DEFAULT_BRANCH_BUDGET,
    NonClosedSetError,
    Valuation,
    Verdict,
    classical_entails,
    closure,
    entails,
    enumerate_valuations,
    is_admissible,
    is_valid,
)
from .proofs import (
    Axiom,
    AxiomSchema,
    Derivation,
    DerivationError,
    ModusPonens,
    Premise,
    ProofLine,
    ProofScriptError,
    axiom_schemas,
    check_derivation,
    match_schema,
    parse_proof_script,
)
from .lp import (
    TruthDegree,
    TruthValue3,
    and3,
    angle_to_truth_degree,
    assign_superposition,
    implies3,
    is_designated,
    neg3,
    or3,
)
from .chsh import (
    CLASSICAL_LIMIT,
    ChshResult,
    GameResult,
    Observable,
    TSIRELSON_BOUND,
    TwoQubitState,
    bell_phi_plus,
    chsh_s,
    entangled_state,
    epr_state,
    expectation,
    inconsistency_degree,
    joint_probabilities,
    pair_superposition,
    play_chsh_game,
    product_state,
    result_for_s,
    scan_surface,
    surface_csv,
)
from .bridge import (
    InconsistencyReport,
    UnsatisfiableFormulaError,
    locality_report,
    non_explosion_certificate,
    superposition_formula,
)

__version__ = "0.1.0"
