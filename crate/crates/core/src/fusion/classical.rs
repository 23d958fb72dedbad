use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{check_mass, check_total, pooled_sum, BelPl, CONTRADICTION_TOLERANCE, MASS_TOLERANCE};
use crate::error::{Error, Result};
use crate::venn::{AtomSet, Frame};

/// Basic belief assignment over the powerset `2^Θ` (exclusive atoms).
///
/// Closed-world assignments keep `m(∅) = 0`; open-world ones (Smets-style
/// outputs) may carry mass on the empty set.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalBba {
    frame: Frame,
    masses: BTreeMap<AtomSet, f64>,
    open_world: bool,
}

impl ClassicalBba {
    /// A closed-world assignment. Zero masses are skipped.
    pub fn new<I>(frame: Frame, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (AtomSet, f64)>,
    {
        let mut masses = BTreeMap::new();
        for (set, mass) in entries {
            if !set.fits(frame) {
                return Err(Error::AtomOutOfRange { atom: set.highest_atom(), n: frame.n() });
            }
            check_mass(mass)?;
            if mass == 0.0 {
                continue;
            }
            if set.is_empty() {
                return Err(Error::EmptySetMass { mass });
            }
            if masses.insert(set, mass).is_some() {
                return Err(Error::DuplicateFocal);
            }
        }
        check_total(pooled_sum(masses.values().copied().collect()))?;
        Ok(ClassicalBba { frame, masses, open_world: false })
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn open_world(&self) -> bool {
        self.open_world
    }

    /// Focal subsets in ascending bit order, the empty set first if present.
    pub fn focal(&self) -> impl Iterator<Item = (AtomSet, f64)> + '_ {
        self.masses.iter().map(|(&k, &v)| (k, v))
    }

    pub fn mass(&self, a: AtomSet) -> f64 {
        self.masses.get(&a).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn total(&self) -> f64 {
        pooled_sum(self.masses.values().copied().collect())
    }

    fn from_pooled(frame: Frame, masses: BTreeMap<AtomSet, f64>, open_world: bool) -> Self {
        let masses = masses.into_iter().filter(|&(_, m)| m > 0.0).collect();
        ClassicalBba { frame, masses, open_world }
    }
}

/// Result of a classical rule, with the conflict `k12` of the consensus step.
#[derive(Debug, Clone, PartialEq)]
pub struct FusionOutcome {
    pub result: ClassicalBba,
    pub conflict: f64,
}

/// Per-subset shares `w(A)` of the conflict mass, summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct RedistributionWeights {
    weights: BTreeMap<AtomSet, f64>,
}

impl RedistributionWeights {
    pub fn new<I: IntoIterator<Item = (AtomSet, f64)>>(entries: I) -> Result<Self> {
        let mut weights = BTreeMap::new();
        for (set, w) in entries {
            if !(0.0..=1.0).contains(&w) {
                return Err(Error::InvalidWeight { weight: w });
            }
            if w > 0.0 {
                *weights.entry(set).or_insert(0.0) += w;
            }
        }
        let sum = pooled_sum(weights.values().copied().collect());
        if (sum - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::WeightSum { sum });
        }
        Ok(RedistributionWeights { weights })
    }

    /// Everything to total ignorance, `w(Θ) = 1`.
    pub fn yager(frame: Frame) -> Self {
        RedistributionWeights { weights: BTreeMap::from([(AtomSet::full(frame), 1.0)]) }
    }

    /// Everything kept on the empty set, `w(∅) = 1`.
    pub fn smets() -> Self {
        RedistributionWeights { weights: BTreeMap::from([(AtomSet::EMPTY, 1.0)]) }
    }

    pub fn weight(&self, a: AtomSet) -> f64 {
        self.weights.get(&a).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (AtomSet, f64)> + '_ {
        self.weights.iter().map(|(&k, &v)| (k, v))
    }
}

fn check_frames(m1: &ClassicalBba, m2: &ClassicalBba) -> Result<()> {
    if m1.frame != m2.frame {
        return Err(Error::FrameMismatch { left: m1.frame.n(), right: m2.frame.n() });
    }
    Ok(())
}

/// Unnormalized conjunctive combination; the mass falling on `∅` is the conflict.
/// The result is always flagged open-world.
pub fn conjunctive_consensus(m1: &ClassicalBba, m2: &ClassicalBba) -> Result<FusionOutcome> {
    check_frames(m1, m2)?;
    if m1.open_world || m2.open_world {
        return Err(Error::OpenWorldInput);
    }
    let mut products: BTreeMap<AtomSet, Vec<f64>> = BTreeMap::new();
    for (a, ma) in m1.focal() {
        for (b, mb) in m2.focal() {
            products.entry(AtomSet(a.bits() & b.bits())).or_default().push(ma * mb);
        }
    }
    let pooled: BTreeMap<AtomSet, f64> = products.into_iter().map(|(k, v)| (k, pooled_sum(v))).collect();
    let conflict = pooled.get(&AtomSet::EMPTY).copied().unwrap_or(0.0);
    Ok(FusionOutcome { result: ClassicalBba::from_pooled(m1.frame, pooled, true), conflict })
}

fn check_contradiction(conflict: f64) -> Result<()> {
    if 1.0 - conflict <= CONTRADICTION_TOLERANCE {
        return Err(Error::FullContradiction { conflict });
    }
    Ok(())
}

/// Dempster's orthogonal sum: consensus renormalized by `1 - k12`.
pub fn dempster_combine(m1: &ClassicalBba, m2: &ClassicalBba) -> Result<FusionOutcome> {
    let consensus = conjunctive_consensus(m1, m2)?;
    let k = consensus.conflict;
    check_contradiction(k)?;
    let masses =
        consensus.result.focal().filter(|(a, _)| !a.is_empty()).map(|(a, m)| (a, m / (1.0 - k))).collect();
    Ok(FusionOutcome { result: ClassicalBba::from_pooled(m1.frame, masses, false), conflict: k })
}

/// Weights that turn [`weighted_redistribution`] into Dempster's rule:
/// `w(∅) = 0`, `w(A) = m(A) / (1 - m(∅))`.
pub fn dempster_weights(consensus: &FusionOutcome) -> Result<RedistributionWeights> {
    let k = consensus.conflict;
    check_contradiction(k)?;
    let weights =
        consensus.result.focal().filter(|(a, _)| !a.is_empty()).map(|(a, m)| (a, m / (1.0 - k))).collect();
    Ok(RedistributionWeights { weights })
}

/// Consensus followed by handing the conflict back: `w(∅) k12` stays on the
/// empty set and every other subset gains `w(A) k12`. No normalization.
pub fn weighted_redistribution(
    m1: &ClassicalBba,
    m2: &ClassicalBba,
    w: &RedistributionWeights,
) -> Result<FusionOutcome> {
    let frame = m1.frame;
    for (set, _) in w.iter() {
        if !set.fits(frame) {
            return Err(Error::AtomOutOfRange { atom: set.highest_atom(), n: frame.n() });
        }
    }
    let consensus = conjunctive_consensus(m1, m2)?;
    let k = consensus.conflict;
    let mut masses: BTreeMap<AtomSet, f64> =
        consensus.result.focal().filter(|(a, _)| !a.is_empty()).collect();
    for (set, weight) in w.iter() {
        *masses.entry(set).or_insert(0.0) += weight * k;
    }
    let open_world = w.weight(AtomSet::EMPTY) > 0.0;
    Ok(FusionOutcome { result: ClassicalBba::from_pooled(frame, masses, open_world), conflict: k })
}

/// Belief and plausibility over `2^Θ`. Mass on `∅` (open world) counts toward neither.
pub fn dst_bel_pl(m: &ClassicalBba, a: AtomSet) -> Result<BelPl> {
    if !a.fits(m.frame) {
        return Err(Error::AtomOutOfRange { atom: a.highest_atom(), n: m.frame.n() });
    }
    let mut bel = Vec::new();
    let mut pl = Vec::new();
    for (b, mass) in m.focal().filter(|(b, _)| !b.is_empty()) {
        if b.is_subset(a) {
            bel.push(mass);
        }
        if b.bits() & a.bits() != 0 {
            pl.push(mass);
        }
    }
    Ok(BelPl { bel: pooled_sum(bel), pl: pooled_sum(pl) })
}
