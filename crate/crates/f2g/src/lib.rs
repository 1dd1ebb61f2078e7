//! Exact computation in group algebras F2[G] of finite abelian 2-groups:
//! the normalized unit group V(FG), its symmetric and unitary subgroups
//! under an involutory involution, closed-form order predictions, and a
//! verification harness checking every prediction against brute force.

pub mod algebra;
pub mod error;
pub mod formulas;
pub mod group;
pub mod harness;
pub mod textfmt;
pub mod units;

pub use algebra::{AlgebraElement, GroupAlgebra};
pub use error::{Error, Result};
pub use group::{AbelianTwoGroup, GroupElement, InvolutionSpec, SubgroupOfG};
pub use units::UnitSubgroup;
