//! Signed bases of **W**: verification, triangular search, duals, crystal
//! lattice checks, tensor factorization and the ℓ = 1 eigenvalue check.

pub mod block;
pub mod linalg;

pub use block::{default_filtration, slot_class, BlockSpace, FilterSlot};
pub mod signed;

pub use signed::{
    dual_basis, near_delta, primal_basis, primed_gram, same_family, same_up_to_character, solve_signed_basis, verify_signed_basis,
    PrimedGram, SignedBasisReport, SolvedBasis,
};
pub mod crystal;

pub use crystal::{crystal_checks, h_eigenvalue_check, rank_one_basis, CrystalReport, EigenvalueReport};
pub mod tensor;

pub use tensor::{tensor_factorization_check, FactorizationReport};
pub mod record;

pub use record::{tautological_basis, BasisRecord, ElementRecord};
