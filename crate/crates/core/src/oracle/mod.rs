//! Brute-force ground truth over small orthogonal groups.

mod brute;
mod group;

pub use brute::{
    brute_bireflectional, brute_centralizer, brute_inverting_involutions, brute_reversible, brute_square_roots,
};
pub use group::{orthogonal_group_order, GroupKind, GroupTable, DEFAULT_BUDGET, MAX_DIM};
mod verify;

pub use verify::{verify_theorems, verify_with_budget, ClaimReport, Evidence, Failure, VerifyReport, CLAIMS};
