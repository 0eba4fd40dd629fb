//! Permutations, stabilizer chains, subgroup search and coset actions.

mod chain;
mod coset;
mod group;
mod permutation;
mod recognize;
mod subgroups;

pub use chain::{ChainLevel, StabilizerChain};
pub use coset::{CosetAction, Suborbit, DEFAULT_INDEX_CEILING};
pub use group::{closure, PermGroup};
pub use permutation::Permutation;
pub use recognize::{recognize_small_group, GroupKind};
pub use subgroups::{MAX_SEARCH_ORDER, find_subgroups_of_order, sylow5_subgroup};

pub(crate) use group::orbits_of;
pub(crate) use permutation::{fingerprint_images, gcd};
