//! Combination rules for belief assignments.
//!
//! [`dsm`] works on generalized assignments over `D^Θ`, where atoms may
//! overlap and conflicting evidence lands on intersections. [`classical`]
//! works on ordinary assignments over `2^Θ` with exclusive atoms: the
//! conjunctive consensus, Dempster's normalization, and the family of rules
//! that hand the conflict mass back through redistribution weights.
//!
//! All rules iterate over focal cross-products only. Products pooled onto the
//! same focal element are summed in ascending order, so results do not depend
//! on the order of the arguments.

pub mod classical;
pub mod dsm;

use alloc::vec::Vec;

pub use classical::{
    conjunctive_consensus, dempster_combine, dempster_weights, dst_bel_pl, weighted_redistribution,
    ClassicalBba, FusionOutcome, RedistributionWeights,
};
pub use dsm::{dsm_bel_pl, dsm_combine, dsm_fuse_many, GeneralizedBba};

/// Tolerance on the total of input masses and weights.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// Conflicts within this distance of 1 count as full contradiction.
pub const CONTRADICTION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BelPl {
    pub bel: f64,
    pub pl: f64,
}

fn check_mass(mass: f64) -> crate::Result<()> {
    if !(0.0..=1.0).contains(&mass) {
        return Err(crate::Error::InvalidMass { mass });
    }
    Ok(())
}

fn check_total(sum: f64) -> crate::Result<()> {
    if (sum - 1.0).abs() > MASS_TOLERANCE {
        return Err(crate::Error::MassSum { sum });
    }
    Ok(())
}

/// Order-independent sum: sort, then add.
fn pooled_sum(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(f64::total_cmp);
    terms.into_iter().sum()
}
