//! Exact length vectors, short/long subset tests, the hook order and
//! genetic codes.

mod code;
mod length;
mod subset;

pub(crate) use code::short_top_family;
pub use code::{genetic_code, genetic_code_with, DownSet, GeneticCode};
pub use length::{EpsilonRule, LengthVector, Side};
pub use subset::{SubsetMask, MAX_EDGES};

/// `A ↪ B` in the hook order.
pub fn hook_leq(a: SubsetMask, b: SubsetMask) -> bool {
    a.hook_leq(b)
}

pub fn compare_subset_sums(a: &LengthVector, j: SubsetMask) -> crate::Result<Side> {
    a.compare_subset_sums(j)
}

pub fn is_generic(a: &LengthVector) -> bool {
    a.is_generic()
}

pub fn down_closure(code: &GeneticCode) -> Vec<SubsetMask> {
    code.down_closure()
}

pub fn full_short_family(code: &GeneticCode) -> Vec<SubsetMask> {
    code.full_short_family()
}
