use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{check_mass, check_total, pooled_sum, BelPl};
use crate::error::{Error, Result};
use crate::venn::{is_isotone, mask_relations, Frame, VennMask};

/// Generalized basic belief assignment: masses on nonempty elements of `D^Θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedBba {
    frame: Frame,
    masses: BTreeMap<VennMask, f64>,
}

impl GeneralizedBba {
    /// Validates and stores focal elements. Zero masses are skipped; the empty
    /// set may only appear with mass zero.
    pub fn new<I>(frame: Frame, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VennMask, f64)>,
    {
        let mut masses = BTreeMap::new();
        let mut total = Vec::new();
        for (mask, mass) in entries {
            if mask.frame() != frame {
                return Err(Error::FrameMismatch { left: frame.n(), right: mask.frame().n() });
            }
            check_mass(mass)?;
            if !is_isotone(&mask) {
                return Err(Error::NotIsotone);
            }
            if mass == 0.0 {
                continue;
            }
            if mask.is_zero() {
                return Err(Error::EmptySetMass { mass });
            }
            if masses.insert(mask, mass).is_some() {
                return Err(Error::DuplicateFocal);
            }
            total.push(mass);
        }
        check_total(pooled_sum(total))?;
        Ok(GeneralizedBba { frame, masses })
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    /// Focal elements in canonical order.
    pub fn focal(&self) -> impl Iterator<Item = (&VennMask, f64)> {
        self.masses.iter().map(|(k, &v)| (k, v))
    }

    pub fn mass(&self, a: &VennMask) -> f64 {
        self.masses.get(a).copied().unwrap_or(0.0)
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
}

/// DSm conjunctive rule: `m(C) = Σ_{A ∩ B = C} m1(A) m2(B)`.
///
/// Nonempty elements of `D^Θ` all contain the region covered by every atom, so
/// no product ever falls on the empty set.
pub fn dsm_combine(m1: &GeneralizedBba, m2: &GeneralizedBba) -> Result<GeneralizedBba> {
    if m1.frame != m2.frame {
        return Err(Error::FrameMismatch { left: m1.frame.n(), right: m2.frame.n() });
    }
    let mut products: BTreeMap<VennMask, Vec<f64>> = BTreeMap::new();
    for (a, ma) in m1.focal() {
        for (b, mb) in m2.focal() {
            let c = a.intersect(b)?;
            debug_assert!(!c.is_zero());
            products.entry(c).or_default().push(ma * mb);
        }
    }
    let masses = products.into_iter().map(|(c, terms)| (c, pooled_sum(terms))).collect();
    Ok(GeneralizedBba { frame: m1.frame, masses })
}

/// Chains [`dsm_combine`] over the sources, left to right.
pub fn dsm_fuse_many(sources: &[GeneralizedBba]) -> Result<GeneralizedBba> {
    let (first, rest) = sources.split_first().ok_or(Error::EmptyInput)?;
    rest.iter().try_fold(first.clone(), |acc, m| dsm_combine(&acc, m))
}

/// Generalized belief (focal elements inside `a`) and plausibility (focal elements meeting `a`).
pub fn dsm_bel_pl(m: &GeneralizedBba, a: &VennMask) -> Result<BelPl> {
    if a.frame() != m.frame {
        return Err(Error::FrameMismatch { left: m.frame.n(), right: a.frame().n() });
    }
    if !is_isotone(a) {
        return Err(Error::NotIsotone);
    }
    let mut bel = Vec::new();
    let mut pl = Vec::new();
    for (b, mass) in m.focal() {
        let rel = mask_relations(b, a)?;
        if rel.is_subset {
            bel.push(mass);
        }
        if rel.intersects {
            pl.push(mass);
        }
    }
    Ok(BelPl { bel: pooled_sum(bel), pl: pooled_sum(pl) })
}
