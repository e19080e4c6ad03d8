//! Permutations, posets, block sequences and exact counting.

pub mod blockseq;
pub mod downset;
pub mod perm;
pub mod poset;

pub use blockseq::{count_blockseq_ideal, count_blockseq_ideal_mod, BlockSequence, Item};
pub use downset::{ModTally, Tally, DEFAULT_STATE_BUDGET};
pub use perm::{
    bruhat_leq, count_bruhat_ideal, count_bruhat_ideal_mod, enumerate_bruhat_ideal, inversions,
    permutation_from_points, poset_from_permutation, relabel, GeneralizedSequence, Permutation,
};
pub use poset::{
    all_labeled_posets, random_poset, count_linear_extensions, count_linear_extensions_filtered, count_linear_extensions_mod, Method,
    Poset,
};
