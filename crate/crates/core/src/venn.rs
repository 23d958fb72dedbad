//! Frames, Venn regions and the bit-mask algebra of `D^Θ`.
//!
//! A frame of `n` atoms cuts the Venn diagram into `2^n - 1` disjoint regions.
//! Region `r` (an integer in `1..2^n`) is the part covered by exactly the atoms
//! whose bits are set in `r`: bit `i - 1` of `r` stands for atom `ti`. Counting
//! regions in integer order reproduces the recursive `u_n` basis, so
//! `<1> <2> <12> <3> <13> <23> <123>` for three atoms.
//!
//! A [`VennMask`] stores one bit per region, region `r` at bit `r - 1`. The
//! textual forms list the regions left to right in basis order.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest frame the mask algebra accepts.
pub const MAX_ATOMS: u8 = 16;

/// Largest frame whose region labels are rendered with one decimal digit per atom.
pub const MAX_LABEL_ATOMS: u8 = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Frame(u8);

impl Frame {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_ATOMS as usize {
            return Err(Error::FrameTooLarge { n, max: MAX_ATOMS as usize });
        }
        Ok(Frame(n as u8))
    }

    pub fn n(self) -> u8 {
        self.0
    }

    /// Number of Venn regions, `2^n - 1`.
    pub fn region_count(self) -> usize {
        (1usize << self.0) - 1
    }

    /// The region covered by every atom.
    pub fn top_region(self) -> u32 {
        ((1u64 << self.0) - 1) as u32
    }

    pub fn regions(self) -> impl DoubleEndedIterator<Item = RegionIndex> + Clone {
        (1..=self.top_region()).map(RegionIndex)
    }

    fn words(self) -> usize {
        self.region_count().div_ceil(64)
    }

    fn check_same(self, other: Frame) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FrameMismatch { left: self.0, right: other.0 })
        }
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.0)
    }
}

/// A set of atoms, bit `i - 1` for atom `ti`. Used for region labels, for the
/// members of an [`Antichain`](crate::Antichain) and for the subsets of the
/// classical powerset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AtomSet(pub u32);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    /// All atoms of the frame.
    pub fn full(frame: Frame) -> Self {
        AtomSet(frame.top_region())
    }

    pub fn singleton(atom: usize) -> Self {
        AtomSet(1 << (atom - 1))
    }

    pub fn from_atoms<I: IntoIterator<Item = usize>>(atoms: I) -> Self {
        AtomSet(atoms.into_iter().fold(0, |acc, a| acc | (1 << (a - 1))))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, atom: usize) -> bool {
        (1..=32).contains(&atom) && self.0 & (1 << (atom - 1)) != 0
    }

    pub fn is_subset(self, other: AtomSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Atom numbers in ascending order.
    pub fn atoms(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits & (1 << i) != 0).map(|i| i + 1)
    }

    pub fn highest_atom(self) -> usize {
        (32 - self.0.leading_zeros()) as usize
    }

    pub fn fits(self, frame: Frame) -> bool {
        self.0 & !frame.top_region() == 0
    }
}

/// A Venn region, `1 ..= 2^n - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RegionIndex(u32);

impl RegionIndex {
    pub fn new(r: u32, frame: Frame) -> Result<Self> {
        if r == 0 || r > frame.top_region() {
            return Err(Error::RegionOutOfRange { region: r, n: frame.n() });
        }
        Ok(RegionIndex(r))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// The atoms covering this region.
    pub fn label(self) -> AtomSet {
        AtomSet(self.0)
    }
}

/// Smarandache code of a region: `<` + ascending atom digits + `>`.
pub fn region_label(r: RegionIndex, frame: Frame) -> Result<String> {
    if frame.n() > MAX_LABEL_ATOMS {
        return Err(Error::LabelUnsupported { n: frame.n() });
    }
    let r = RegionIndex::new(r.get(), frame)?;
    let mut s = String::with_capacity(frame.n() as usize + 2);
    s.push('<');
    for atom in r.label().atoms() {
        s.push(char::from(b'0' + atom as u8));
    }
    s.push('>');
    Ok(s)
}

/// The `u_n` basis: an ordering of all regions of a frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisOrder {
    regions: Vec<RegionIndex>,
}

impl BasisOrder {
    pub fn regions(&self) -> &[RegionIndex] {
        &self.regions
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    pub fn labels(&self, frame: Frame) -> Result<Vec<String>> {
        self.regions.iter().map(|&r| region_label(r, frame)).collect()
    }
}

/// Builds `u_n` by the recursion `u_n = [u_{n-1}, <n>, u_{n-1} with n appended]`.
///
/// The result always equals the regions in ascending integer order; the
/// recursion is kept as written and the equality is checked on the way out.
pub fn basis_order(frame: Frame) -> BasisOrder {
    let mut regions: Vec<u32> = Vec::with_capacity(frame.region_count());
    for k in 1..=frame.n() {
        let atom = 1u32 << (k - 1);
        let previous = regions.len();
        regions.push(atom);
        for i in 0..previous {
            let r = regions[i] | atom;
            regions.push(r);
        }
    }
    debug_assert!(regions.iter().copied().eq(1..=frame.top_region()));
    BasisOrder { regions: regions.into_iter().map(RegionIndex).collect() }
}

/// An element of `D^Θ` (or any region set) as one bit per Venn region.
///
/// Equality is bitwise. Ordering is the canonical order of the hyper-powerset:
/// the bit string read left to right in basis order as a big-endian binary
/// number, so `<1>` is the most significant position.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VennMask {
    frame: Frame,
    words: SmallVec<[u64; 1]>,
}

impl VennMask {
    pub fn zero(frame: Frame) -> Self {
        let words = SmallVec::from_elem(0, frame.words().max(1));
        VennMask { frame, words }
    }

    /// Every region set: `t1 ∪ … ∪ tn`.
    pub fn full(frame: Frame) -> Self {
        let mut m = Self::zero(frame);
        for (w, word) in m.words.iter_mut().enumerate() {
            let remaining = frame.region_count().saturating_sub(w * 64);
            *word = low_bits(remaining.min(64));
        }
        m
    }

    /// Builds a mask from a single word; valid for frames of at most 6 atoms.
    pub fn from_u64(frame: Frame, bits: u64) -> Result<Self> {
        if frame.n() > 6 {
            return Err(Error::MalformedMask(alloc::format!(
                "single-word mask for a frame of {} atoms",
                frame.n()
            )));
        }
        if bits & !low_bits(frame.region_count()) != 0 {
            return Err(Error::MalformedMask(alloc::format!(
                "bits beyond the {} regions of the frame",
                frame.region_count()
            )));
        }
        let mut m = Self::zero(frame);
        m.words[0] = bits;
        Ok(m)
    }

    /// The single word of a frame with at most 6 atoms (region `r` at bit `r - 1`).
    pub fn as_u64(&self) -> Option<u64> {
        (self.frame.n() <= 6).then(|| self.words[0])
    }

    pub fn from_regions<I: IntoIterator<Item = RegionIndex>>(frame: Frame, regions: I) -> Result<Self> {
        let mut m = Self::zero(frame);
        for r in regions {
            let r = RegionIndex::new(r.get(), frame)?;
            m.set(r);
        }
        Ok(m)
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn contains(&self, r: RegionIndex) -> bool {
        self.bit(r.get())
    }

    fn bit(&self, r: u32) -> bool {
        let i = (r - 1) as usize;
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    fn set(&mut self, r: RegionIndex) {
        let i = (r.get() - 1) as usize;
        self.words[i / 64] |= 1 << (i % 64);
    }

    /// Regions present in the mask, ascending.
    pub fn regions(&self) -> impl Iterator<Item = RegionIndex> + '_ {
        self.frame.regions().filter(move |r| self.contains(*r))
    }

    pub fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.frame)
    }

    pub fn intersect(&self, other: &VennMask) -> Result<VennMask> {
        combine_masks(self, other, MaskOp::Intersect)
    }

    pub fn union(&self, other: &VennMask) -> Result<VennMask> {
        combine_masks(self, other, MaskOp::Union)
    }

    /// `'0'`/`'1'` per region in basis order, `<1>` first.
    pub fn to_bit_string(&self) -> String {
        self.frame.regions().map(|r| if self.contains(r) { '1' } else { '0' }).collect()
    }

    pub fn from_bit_string(frame: Frame, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.len() != frame.region_count() {
            return Err(Error::MalformedMask(alloc::format!(
                "expected {} bits for a frame of {} atoms, got {}",
                frame.region_count(),
                frame.n(),
                text.len()
            )));
        }
        let mut m = Self::zero(frame);
        for (r, c) in frame.regions().zip(text.chars()) {
            match c {
                '1' => m.set(r),
                '0' => {}
                other => return Err(Error::MalformedMask(alloc::format!("unexpected character {other:?}"))),
            }
        }
        Ok(m)
    }

    /// The bit string as a big-endian hexadecimal number, zero-padded to
    /// `ceil((2^n - 1) / 4)` digits.
    pub fn to_hex(&self) -> String {
        let len = self.frame.region_count();
        let digits = len.div_ceil(4);
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let mut nibble = 0u32;
            for k in 0..4 {
                // Numeric bit `p` (LSB = 0) is region `len - p`.
                let p = 4 * d + k;
                if p < len && self.bit((len - p) as u32) {
                    nibble |= 1 << k;
                }
            }
            s.push(char::from_digit(nibble, 16).unwrap());
        }
        s
    }

    pub fn from_hex(frame: Frame, text: &str) -> Result<Self> {
        let len = frame.region_count();
        let text = text.trim();
        if text.len() != len.div_ceil(4) {
            return Err(Error::MalformedMask(alloc::format!(
                "expected {} hex digits for a frame of {} atoms",
                len.div_ceil(4),
                frame.n()
            )));
        }
        let mut m = Self::zero(frame);
        for (d, c) in text.chars().rev().enumerate() {
            let nibble = c
                .to_digit(16)
                .ok_or_else(|| Error::MalformedMask(alloc::format!("unexpected character {c:?}")))?;
            for k in 0..4 {
                if nibble & (1 << k) == 0 {
                    continue;
                }
                let p = 4 * d + k;
                if p >= len {
                    return Err(Error::MalformedMask("bits beyond the frame's regions".into()));
                }
                m.set(RegionIndex((len - p) as u32));
            }
        }
        Ok(m)
    }
}

impl Ord for VennMask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.frame.cmp(&other.frame).then_with(|| {
            // Region 1 sits at bit 0 of word 0 and is the most significant position.
            self.words.iter().map(|w| w.reverse_bits()).cmp(other.words.iter().map(|w| w.reverse_bits()))
        })
    }
}

impl PartialOrd for VennMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VennMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VennMask({}, {})", self.frame, self.to_bit_string())
    }
}

impl fmt::Display for VennMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

fn low_bits(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Mask of atom `ti`: every region whose label contains `i`.
pub fn atom_mask(atom: usize, frame: Frame) -> Result<VennMask> {
    if atom == 0 || atom > frame.n() as usize {
        return Err(Error::AtomOutOfRange { atom, n: frame.n() });
    }
    let bit = 1u32 << (atom - 1);
    let mut m = VennMask::zero(frame);
    for r in frame.regions().filter(|r| r.get() & bit != 0) {
        m.set(r);
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaskOp {
    Intersect,
    Union,
}

/// `∩` is bitwise AND of the region sets, `∪` bitwise OR.
pub fn combine_masks(a: &VennMask, b: &VennMask, op: MaskOp) -> Result<VennMask> {
    a.frame.check_same(b.frame)?;
    let words = a
        .words
        .iter()
        .zip(b.words.iter())
        .map(|(x, y)| match op {
            MaskOp::Intersect => x & y,
            MaskOp::Union => x | y,
        })
        .collect();
    Ok(VennMask { frame: a.frame, words })
}

/// Whether the region set is upward-closed: a region present implies every
/// region whose label is a superset is present too. Checking the one-atom
/// extensions suffices.
pub fn is_isotone(a: &VennMask) -> bool {
    let n = a.frame.n();
    a.regions()
        .all(|r| (0..n).map(|i| 1u32 << i).filter(|bit| r.get() & bit == 0).all(|bit| a.bit(r.get() | bit)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaskRelations {
    /// `a ⊆ b`
    pub is_subset: bool,
    /// `a ∩ b ≠ ∅`
    pub intersects: bool,
}

pub fn mask_relations(a: &VennMask, b: &VennMask) -> Result<MaskRelations> {
    a.frame.check_same(b.frame)?;
    let mut is_subset = true;
    let mut intersects = false;
    for (x, y) in a.words.iter().zip(b.words.iter()) {
        is_subset &= x & !y == 0;
        intersects |= x & y != 0;
    }
    Ok(MaskRelations { is_subset, intersects })
}
