//! Cohomology of `V = F2^n` with coefficients in `Z = F2^m`.

pub mod cocycle;
pub mod pairs;
pub mod universal;

pub use cocycle::{
    coboundary, coboundary_preimage, decompose, same_h2_class, validate_cocycle, Cochain, Cocycle,
    CocycleLaw, Decomposition, Violation,
};
pub use pairs::{
    classify_pair, orbit_of, regular_count_formula, regular_pair_count, sr_count_formula,
    strongly_regular_pairs, Orbit, PairClass, SubsetPair,
};
pub use universal::{
    associator_formula, theorem_basis, universal_cocycle, verify_theorem_basis, BasisTriple,
    TheoremBasisReport, UniversalCoordinates,
};
