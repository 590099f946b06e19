//! Solid partitions, colourings by finite diagonal groups, and the disk cache.

pub mod cache;
pub mod group;
pub mod solid;

pub use cache::{read_cache, resolve_cache_dir, solid_partitions_cached, write_cache};
pub use group::{color_counts, enumerate_colored, sign_exponent, ColorProfile, GroupAction};
pub use solid::{enumerate_solid_partitions, is_downward_closed, PartitionStream, Point, SolidPartition};

use crate::exactalg::{KClass, Monomial};

/// `Z_pi = sum t^box`, CY-reduced.
pub fn character(p: &SolidPartition) -> KClass {
    character_unreduced(p).cy_reduce()
}

/// `Z_pi` in the four-variable ring.
pub fn character_unreduced(p: &SolidPartition) -> KClass {
    let mut k = KClass::zero();
    for b in p.boxes() {
        k.add_term(Monomial::t(b[0] as i32, b[1] as i32, b[2] as i32, b[3] as i32), 1);
    }
    k
}

/// All partitions of size at most `n`, grouped by size.
pub fn partitions_up_to(n: usize, cache_dir: Option<&std::path::Path>) -> crate::Result<Vec<Vec<SolidPartition>>> {
    (0..=n).map(|k| solid_partitions_cached(k, cache_dir)).collect()
}
