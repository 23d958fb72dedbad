//! Generation of the hyper-powerset and the minimal-DNF view of its elements.
//!
//! Elements of `D^Θ` are exactly the isotone Boolean functions on `n` inputs
//! with `f(0…0) = 0`, read on the nonzero inputs (= Venn regions). They are
//! produced by the row-adjoining recursion: the isotone functions on `k`
//! inputs are the pairs `(low, high)` of isotone functions on `k - 1` inputs
//! with `low ⊆ high`, where `low` is the half with `x_k = 0`. Walking the
//! pairs in nested order keeps the rows sorted as big-endian numbers, which is
//! the canonical order.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::venn::{is_isotone, AtomSet, Frame, RegionIndex, VennMask};

/// Largest frame for which `D^Θ` is materialized or streamed.
pub const MAX_GENERATE_ATOMS: usize = 6;

/// Dedekind numbers d(0)..=d(8).
const DEDEKIND: [u128; 9] = [2, 3, 6, 20, 168, 7581, 7828354, 2414682040998, 56130437228687557907788];

/// The published Dedekind number d(n), the count of monotone Boolean functions of n variables.
pub fn known_cardinality(n: usize) -> Result<BigUint> {
    DEDEKIND.get(n).map(|&d| BigUint::from(d)).ok_or(Error::UnknownValue { n })
}

/// Bytes needed per stored element at one bit per region, rounded up to whole bytes.
pub(crate) fn bytes_per_element(n: usize) -> u64 {
    let bits = (1u64 << n) - 1;
    bits.div_ceil(8).max(1)
}

fn capacity_error(n: usize) -> Error {
    let elements = known_cardinality(n).ok().map(|d| d - 1u32);
    let bytes = elements.as_ref().map(|e| e * bytes_per_element(n));
    Error::Capacity { what: "hyper-powerset generation", n, limit: MAX_GENERATE_ATOMS, elements, bytes }
}

/// Isotone truth tables on `k` inputs, including `f(0…0)`, bit `x` = `f(x)`,
/// sorted canonically (input 0 most significant).
fn complete_tables(k: usize) -> Vec<u64> {
    let mut rows: Vec<u64> = alloc::vec![0, 1];
    for level in 1..=k {
        rows = adjoin(&rows, level);
    }
    rows
}

/// One step of the recursion: `(low, high)` with `low ⊆ high`.
fn adjoin(rows: &[u64], level: usize) -> Vec<u64> {
    let half = 1u32 << (level - 1);
    let mut next = Vec::new();
    for &low in rows {
        for &high in rows {
            if low & !high == 0 {
                next.push(low | (high << half));
            }
        }
    }
    next
}

/// Streams the raw masks of `D^Θ` for `n ≤ 6` in canonical order, retaining
/// only the previous level of the recursion.
fn for_each_raw<F: FnMut(u64)>(n: usize, mut visit: F) -> u64 {
    if n == 0 {
        visit(0);
        return 1;
    }
    let rows = complete_tables(n - 1);
    let half = 1u32 << (n - 1);
    let top = *rows.last().expect("constant-one row");
    let mut count = 0u64;
    for &low in &rows {
        for &high in &rows {
            if low & !high != 0 {
                continue;
            }
            // The tautology is the only row with f(0…0) = 1; dropping that
            // input would make it collide with t1 ∪ … ∪ tn.
            if low == top {
                continue;
            }
            visit((low | (high << half)) >> 1);
            count += 1;
        }
    }
    count
}

/// Big-endian key of a raw single-word mask over `len` regions.
fn canonical_key(raw: u64, len: usize) -> u64 {
    if len == 0 {
        0
    } else {
        raw.reverse_bits() >> (64 - len)
    }
}

/// All of `D^Θ` in canonical order.
///
/// Elements are held as single words, so the frame is capped at six atoms
/// (7 828 353 elements, about 63 MB).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperPowerset {
    frame: Frame,
    raw: Vec<u64>,
}

impl HyperPowerset {
    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<VennMask> {
        self.raw.get(index).map(|&bits| self.wrap(bits))
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = VennMask> + '_ {
        self.raw.iter().map(|&bits| self.wrap(bits))
    }

    /// Raw words, region `r` at bit `r - 1`.
    pub fn raw(&self) -> &[u64] {
        &self.raw
    }

    /// Index of `mask` in canonical order, by binary search.
    pub fn position(&self, mask: &VennMask) -> Option<usize> {
        if mask.frame() != self.frame {
            return None;
        }
        let len = self.frame.region_count();
        let key = canonical_key(mask.as_u64()?, len);
        self.raw.binary_search_by(|&probe| canonical_key(probe, len).cmp(&key)).ok()
    }

    pub fn contains(&self, mask: &VennMask) -> bool {
        self.position(mask).is_some()
    }

    fn wrap(&self, bits: u64) -> VennMask {
        VennMask::from_u64(self.frame, bits).expect("generated mask fits the frame")
    }
}

/// Materializes `D^Θ` for a frame of at most six atoms.
pub fn generate(frame: Frame) -> Result<HyperPowerset> {
    let n = frame.n() as usize;
    if n > MAX_GENERATE_ATOMS {
        return Err(capacity_error(n));
    }
    let expected = DEDEKIND[n] as usize - 1;
    let mut raw = Vec::with_capacity(expected);
    for_each_raw(n, |bits| raw.push(bits));
    debug_assert_eq!(raw.len(), expected);
    Ok(HyperPowerset { frame, raw })
}

/// Visits each element of `D^Θ` once, in canonical order, without keeping the
/// list. Returns the number of elements visited.
pub fn generate_stream<F: FnMut(&VennMask)>(frame: Frame, mut visitor: F) -> Result<u64> {
    let n = frame.n() as usize;
    if n > MAX_GENERATE_ATOMS {
        return Err(capacity_error(n));
    }
    Ok(for_each_raw(n, |bits| {
        let m = VennMask::from_u64(frame, bits).expect("generated mask fits the frame");
        visitor(&m)
    }))
}

/// Inclusion-minimal atom sets of an element: its minimal DNF.
///
/// Members are kept sorted by size, then lexicographically by their ascending
/// atom lists, so equal antichains compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Antichain {
    members: Vec<AtomSet>,
}

fn term_order(a: &AtomSet, b: &AtomSet) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.atoms().cmp(b.atoms()))
}

impl Antichain {
    /// Builds an antichain from arbitrary atom sets. Members containing another
    /// member, and repeats, are dropped; the flag reports whether anything was.
    pub fn reduce<I: IntoIterator<Item = AtomSet>>(sets: I) -> (Antichain, bool) {
        let mut sets: Vec<AtomSet> = sets.into_iter().collect();
        let given = sets.len();
        sets.sort_by(term_order);
        sets.dedup();
        let mut members: Vec<AtomSet> = Vec::with_capacity(sets.len());
        for s in sets {
            // Sorted by size, so any subset of `s` is already in place.
            if !members.iter().any(|m| m.is_subset(s)) {
                members.push(s);
            }
        }
        let dropped = members.len() != given;
        (Antichain { members }, dropped)
    }

    pub fn members(&self) -> &[AtomSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Minimal true regions of an isotone mask.
pub fn to_dnf(a: &VennMask) -> Result<Antichain> {
    if !is_isotone(a) {
        return Err(Error::NotIsotone);
    }
    let mut members: Vec<AtomSet> = a
        .regions()
        .filter(|r| {
            let label = r.get();
            // Upward closure makes one-atom removals enough to test minimality.
            (0..a.frame().n()).map(|i| 1u32 << i).filter(|bit| label & bit != 0).all(|bit| {
                let below = label & !bit;
                below == 0 || !a.contains(RegionIndex::new(below, a.frame()).expect("sub-region"))
            })
        })
        .map(|r| r.label())
        .collect();
    members.sort_by(term_order);
    Ok(Antichain { members })
}

/// Upward closure of an antichain: region `r` is set iff some member is a subset of its label.
pub fn from_antichain(c: &Antichain, frame: Frame) -> Result<VennMask> {
    for m in c.members() {
        if m.is_empty() {
            return Err(Error::AtomOutOfRange { atom: 0, n: frame.n() });
        }
        if !m.fits(frame) {
            return Err(Error::AtomOutOfRange { atom: m.highest_atom(), n: frame.n() });
        }
    }
    VennMask::from_regions(
        frame,
        frame.regions().filter(|r| c.members().iter().any(|m| m.is_subset(r.label()))),
    )
}

/// Upward closure of arbitrary atom sets, reporting whether non-minimal members were dropped.
pub fn from_sets<I: IntoIterator<Item = AtomSet>>(sets: I, frame: Frame) -> Result<(VennMask, bool)> {
    let (c, dropped) = Antichain::reduce(sets);
    Ok((from_antichain(&c, frame)?, dropped))
}

/// `t1&t2|t3` style text; `0` for the empty antichain.
pub fn render_expr(c: &Antichain) -> String {
    if c.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, term) in c.members().iter().enumerate() {
        if i > 0 {
            s.push('|');
        }
        for (j, atom) in term.atoms().enumerate() {
            if j > 0 {
                s.push('&');
            }
            s.push('t');
            s.push_str(&alloc::format!("{atom}"));
        }
    }
    s
}

/// The element obtained by swapping `∪` and `∩` in any expression of `a`,
/// i.e. the dual function `x ↦ ¬f(¬x)`. `None` for the empty set, whose
/// dual is the excluded tautology.
pub fn dual(a: &VennMask) -> Result<Option<VennMask>> {
    if !is_isotone(a) {
        return Err(Error::NotIsotone);
    }
    if a.is_zero() {
        return Ok(None);
    }
    let frame = a.frame();
    let top = frame.top_region();
    let regions = frame.regions().filter(|r| {
        let complement = top & !r.get();
        complement == 0 || !a.contains(RegionIndex::new(complement, frame).expect("complement region"))
    });
    VennMask::from_regions(frame, regions).map(Some)
}
