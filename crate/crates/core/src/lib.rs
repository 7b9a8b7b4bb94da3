//! Congruence of even symmetric integer matrices modulo 4, quadratic forms
//! over F2, and mutation invariants of skew-symmetric matrices.
//!
//! ```
//! use quasicartan_core::{reduce_mod4, IntMatrix, SymEvenMatrix};
//!
//! let a = SymEvenMatrix::new(IntMatrix::from_rows([[2, 1], [1, 2]]).unwrap()).unwrap();
//! let r = reduce_mod4(&a).unwrap();
//! assert_eq!((r.params.r, r.params.s), (1, 0));
//! ```

pub mod error;
pub mod f2forms;
pub mod int;
pub mod matrices;
pub mod mutation;
pub mod normalform;

pub use error::{Error, Result};
pub use f2forms::{
    alternating_reduce, arf, classify_form, classify_quadratic, forms_isomorphic, q_eval, q_from_skew, q_from_sym_even,
    radical_dims, F2Matrix, F2Vec, FormClass, FormKind, QuadraticFormF2, RadicalDims, SymplecticFrame,
};
pub use int::Int;
pub use matrices::{
    congruence_apply, det_exact, validate_skew, validate_sym_even, Congruence, IntMatrix, SkewSymMatrix, SymEvenMatrix,
    UnimodularTransform,
};
pub use mutation::{
    companion_q_coincidence, companion_with_signs, delta, delta_discrepancy, is_companion, mutate, mutate_seq,
    scan_class, scan_class_with, standard_companion, ClassScanReport, DeltaDiscrepancy, MutationSequence, ScanConfig,
    SignChoice,
};
pub use normalform::{
    brute_force_congruent_mod4, brute_force_orbit_mod4, canonicalize_params, check_congruence_witness, congruent_mod4,
    det_mod4_classify, det_mod4_from_dims, invariant_profile, normal_form_matrix, params_to_matrix, reduce_mod4,
    verify_witness, BlockBasis, CanonicalParams, CongruenceDecision, InvariantProfile, NormalFormParams,
    ReductionResult,
};
