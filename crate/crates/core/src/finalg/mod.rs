//! Finite abelian groups, finite rings and the exhaustive ring-isomorphism oracle.

mod group;
mod iso;
mod ring;
pub(crate) mod search;

pub use group::{AbGroup, Elem, Subgroup};
pub use iso::{inner_automorphism, MapFlags, RingIso};
pub use ring::FinRing;
pub use search::{ring_isos_bruteforce, ring_isos_naive, SearchOptions, DEFAULT_SEARCH_BOUND};

#[allow(unused_imports)]
pub(crate) use iso::{is_bijection, same_ring};
