//! Exact computation in cyclically amalgamated free products `H1 *_A H2`
//! of free products of cyclic groups: normal forms, Nielsen reduction and
//! classification of subgroups of rank at most four.

pub mod amalgam;
pub mod batch;
pub mod classify;
pub mod error;
pub mod factor;
pub mod factor_nielsen;
pub mod nielsen;
pub mod ordering;
pub mod random;
pub mod selftest;
pub mod text;

pub use amalgam::{
    AmalgamPresentation, ConjugacyCertificate, GroupWord, Kernel, Letter, ReducedForm, Side, SymmetricNormalForm,
};
pub use classify::{
    build_ftype, classify_subgroup, example_group, Classification, ClassifyConfig, FTypeSpec, Structure,
};
pub use error::{Error, Result};
pub use factor::{CyclicFactorPresentation, FactorWord, Order, Syllable};
pub use nielsen::{reduce_tuple, GeneratingTuple, NielsenMove, Outcome, ReductionConfig, ReductionOutcome};
pub use ordering::{preorder_key, preorder_less, PreorderKey};
