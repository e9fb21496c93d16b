//! Exact computations for the Whitehead groups and rational K-theory of
//! Hilbert modular groups `PSL_2(O_k)` and `SL_2(O_k)` over real quadratic
//! fields, expressed through their maximal finite (cyclic) subgroups.

pub mod ab_group;
pub mod assembler;
pub mod class_numbers;
pub mod cli;
pub mod cyclic_reps;
pub mod exact_arith;
pub mod finite_k;
pub mod pchain;
pub mod quad_field;

pub use ab_group::AbGroupExpr;
pub use assembler::{ClassCounts, GroupData, Mode};
pub use exact_arith::Rational;
pub use quad_field::{FieldSpec, QuadElem};
