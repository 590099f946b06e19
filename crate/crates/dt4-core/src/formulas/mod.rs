//! Closed formulas: Nekrasov-type plethystic arguments for the orbifold
//! partition functions, Gopakumar-Vafa data, PT arguments, MacMahon-type
//! limits, and the verification drivers that compare them with the vertex.

pub mod age;
pub mod crc;
pub mod gv;
pub mod limits;
pub mod macmahon;
pub mod nekrasov;
pub mod pt;
pub mod verify;

use crate::error::{Error, Result};
use crate::partitions::GroupAction;

pub use age::{age, age_witness, is_age_at_most_one};
pub use crc::verify_crc;
pub use gv::{gv_invariant, root_system, A5_HYPOTHESIS};
pub use limits::limits_suite;
pub use nekrasov::{build_orbifold_argument, build_orbifold_argument_3d, nekrasov_f, nekrasov_f_3d};
pub use pt::{pt_argument, pt_irreducible_series};
pub use verify::{verify_orbifold_conjecture, Check, Report, Status};

/// Groups with a closed formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Zr(u32),
    Z2Z2,
}

impl Family {
    pub fn of(g: &GroupAction) -> Result<Family> {
        if g.is_trivial() {
            return Ok(Family::Zr(1));
        }
        if g.orders().len() == 1 && GroupAction::zr(g.orders()[0]).map(|z| z.weights() == g.weights()).unwrap_or(false) {
            return Ok(Family::Zr(g.orders()[0]));
        }
        let z = GroupAction::z2z2();
        if g.orders() == z.orders() && g.weights() == z.weights() {
            return Ok(Family::Z2Z2);
        }
        Err(Error::UnsupportedGroup(g.name().to_string()))
    }

    pub fn nvars(self) -> usize {
        match self {
            Family::Zr(r) => r as usize,
            Family::Z2Z2 => 4,
        }
    }

    pub fn action(self) -> GroupAction {
        match self {
            Family::Zr(1) => GroupAction::trivial(),
            Family::Zr(r) => GroupAction::zr(r).expect("r > 0"),
            Family::Z2Z2 => GroupAction::z2z2(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families() {
        assert_eq!(Family::of(&GroupAction::trivial()).unwrap(), Family::Zr(1));
        assert_eq!(Family::of(&GroupAction::parse("custom:orders=3;W=1,2,0,0").unwrap()).ok(), None);
        assert_eq!(Family::of(&GroupAction::parse("custom:orders=2;W=1,-1,0,0").unwrap()).unwrap(), Family::Zr(2));
        assert_eq!(Family::of(&GroupAction::parse("custom:orders=2,2;W=1,0,1,0/0,1,1,0").unwrap()).unwrap(), Family::Z2Z2);
        assert!(matches!(Family::of(&GroupAction::z3age2()), Err(Error::UnsupportedGroup(_))));
    }
}
