//! Independent ways to count and size the hyper-powerset.
//!
//! [`brute_force_mbf`] enumerates every Boolean function and keeps the
//! monotone ones. [`kisielewicz_d`] evaluates Kisielewicz's closed form for
//! the Dedekind numbers term by term. Neither shares code with the generator,
//! so agreement between the three is meaningful. [`memsize_report`] sizes the
//! storage of `D^Θ` at one bit per region.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{bytes_per_element, known_cardinality};

pub const MAX_BRUTE_FORCE_ATOMS: usize = 4;
pub const MAX_FORMULA_ATOMS: usize = 4;
/// Reachable with [`kisielewicz_d`]'s long-running flag (2^32 outer terms).
pub const MAX_FORMULA_ATOMS_LONG: usize = 5;
pub const MAX_REPORT_ATOMS: usize = 8;

/// Boolean function of `n ≤ 6` inputs; bit `x` holds `f(x)`, input `x` having
/// `x_i` at bit `i - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TruthTable {
    n: u8,
    bits: u64,
}

impl TruthTable {
    pub fn new(n: usize, bits: u64) -> Option<Self> {
        if n > 6 || (n < 6 && bits >> (1u32 << n) != 0) {
            return None;
        }
        Some(TruthTable { n: n as u8, bits })
    }

    pub fn n(self) -> usize {
        self.n as usize
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn value(self, x: usize) -> bool {
        self.bits >> x & 1 == 1
    }

    /// Monotone iff no single `0 → 1` input flip takes the output from 1 to 0.
    pub fn is_monotone(self) -> bool {
        let inputs = 1usize << self.n;
        (0..inputs)
            .filter(|&x| self.value(x))
            .all(|x| (0..self.n as usize).filter(|i| x & (1 << i) == 0).all(|i| self.value(x | (1 << i))))
    }

    /// The table on nonzero inputs (bit `x - 1` for input `x`), i.e. the
    /// region mask of the function, when `f(0…0) = 0`.
    pub fn restrict_nonzero(self) -> Option<u64> {
        (!self.value(0)).then_some(self.bits >> 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForce {
    pub count: u64,
    /// Monotone tables in ascending numeric order.
    pub tables: Vec<TruthTable>,
}

/// Scans all `2^(2^n)` truth tables for the monotone ones.
pub fn brute_force_mbf(n: usize) -> Result<BruteForce> {
    if n > MAX_BRUTE_FORCE_ATOMS {
        return Err(Error::Capacity {
            what: "brute-force enumeration",
            n,
            limit: MAX_BRUTE_FORCE_ATOMS,
            elements: Some(BigUint::one() << (1usize << n)),
            bytes: None,
        });
    }
    let tables: Vec<TruthTable> = (0..1u64 << (1u32 << n))
        .map(|bits| TruthTable { n: n as u8, bits })
        .filter(|t| t.is_monotone())
        .collect();
    Ok(BruteForce { count: tables.len() as u64, tables })
}

/// `b_i^k = ⌊k / 2^i⌋ - 2⌊k / 2^(i+1)⌋`: bit `i` of `k`.
fn digit(k: u64, i: u32) -> i64 {
    let i = i as u64;
    let hi = if i + 1 >= 64 { 0 } else { k >> (i + 1) };
    let lo = if i >= 64 { 0 } else { k >> i };
    lo as i64 - 2 * hi as i64
}

/// `l(0) = 0`, `l(i) = ⌊log2 i⌋`.
fn floor_log2(i: u32) -> u32 {
    if i == 0 {
        0
    } else {
        31 - i.leading_zeros()
    }
}

/// One summand of the closed form for outer index `k`; asserted to be 0 or 1.
fn kisielewicz_term(k: u64, n: usize) -> i64 {
    let inputs = 1u32 << n;
    let mut product: i64 = 1;
    for j in 1..inputs {
        for i in 0..j {
            let mut inner: i64 = 1;
            for m in 0..=floor_log2(i) {
                let f = 1 - digit(i as u64, m) * (1 - digit(j as u64, m));
                assert!(f == 0 || f == 1, "inner factor {f} is not an indicator");
                inner *= f;
            }
            let factor = 1 - digit(k, i) * (1 - digit(k, j)) * inner;
            assert!(factor == 0 || factor == 1, "factor {factor} is not an indicator");
            product *= factor;
            if product == 0 {
                return 0;
            }
        }
    }
    product
}

/// Kisielewicz's formula
/// `d(n) = Σ_{k=1}^{2^(2^n)} Π_{j=1}^{2^n-1} Π_{i=0}^{j-1} (1 - b_i^k (1 - b_j^k) Π_{m=0}^{l(i)} (1 - b_m^i (1 - b_m^j)))`.
///
/// Capped at four atoms; five (2^32 terms) needs `allow_long_running`.
pub fn kisielewicz_d(n: usize, allow_long_running: bool) -> Result<BigUint> {
    let limit = if allow_long_running { MAX_FORMULA_ATOMS_LONG } else { MAX_FORMULA_ATOMS };
    if n > limit {
        return Err(Error::Capacity {
            what: "closed-form evaluation",
            n,
            limit,
            elements: Some(BigUint::one() << (1usize << n)),
            bytes: None,
        });
    }
    let last = 1u64 << (1u32 << n);
    let mut total: u64 = 0;
    for k in 1..=last {
        let term = kisielewicz_term(k, n);
        debug_assert!(term == 0 || term == 1);
        total += term as u64;
    }
    Ok(BigUint::from(total))
}

/// Storage estimate for `D^Θ` minus the empty set, at whole bytes per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemRow {
    pub n: usize,
    pub bytes_per_elem: u64,
    /// `d(n) - 2`: neither the empty set nor the tautology is stored.
    pub elem_count: BigUint,
    pub total_bytes: BigUint,
    /// `2^(2^n - 1)`, the size of the powerset of the refined frame.
    pub refined_powerset_size: BigUint,
}

impl MemRow {
    /// Element count as printed in the report: exact below 10^9, `≈m·10^e` above.
    pub fn count_human(&self) -> String {
        approx_integer(&self.elem_count)
    }

    pub fn total_human(&self) -> String {
        human_bytes(&self.total_bytes)
    }

    /// `2^(2^n-1)`, spelled out exactly when it fits in 20 digits.
    pub fn refined_human(&self) -> String {
        let exp = (1u64 << self.n) - 1;
        if self.refined_powerset_size.bits() <= 64 {
            alloc::format!("2^{exp}={}", self.refined_powerset_size)
        } else {
            alloc::format!("2^{exp}")
        }
    }
}

/// Rows for `n_min..=n_max`, using the known Dedekind numbers.
pub fn memsize_report(n_min: usize, n_max: usize) -> Result<Vec<MemRow>> {
    if n_max > MAX_REPORT_ATOMS {
        return Err(Error::UnknownValue { n: n_max });
    }
    (n_min..=n_max)
        .map(|n| {
            let d = known_cardinality(n)?;
            let elem_count = d - 2u32;
            let bytes_per_elem = bytes_per_element(n);
            let total_bytes = &elem_count * bytes_per_elem;
            let refined_powerset_size = BigUint::one() << ((1usize << n) - 1);
            Ok(MemRow { n, bytes_per_elem, elem_count, total_bytes, refined_powerset_size })
        })
        .collect()
}

const UNITS: [(&str, u32); 3] = [("Gb", 30), ("Mb", 20), ("Kb", 10)];

/// Sizes in binary units, two significant digits past the byte range:
/// `18 bytes`, `0.32 Kb`, `30 Kb`, `3.6·10^4 Gb`. The largest unit in which
/// the value reaches 0.1 is used.
pub fn human_bytes(bytes: &BigUint) -> String {
    let value = bytes.to_f64().unwrap_or(f64::INFINITY);
    for (unit, shift) in UNITS {
        let scaled = value / (1u64 << shift) as f64;
        if scaled >= 0.1 {
            return alloc::format!("{} {unit}", two_digits(scaled));
        }
    }
    if bytes.is_one() {
        "1 byte".into()
    } else {
        alloc::format!("{bytes} bytes")
    }
}

fn two_digits(v: f64) -> String {
    if v >= 1e4 {
        scientific(v)
    } else if v >= 10.0 {
        alloc::format!("{v:.0}")
    } else if v >= 1.0 {
        alloc::format!("{v:.1}")
    } else {
        alloc::format!("{v:.2}")
    }
}

/// `3.6·10^4` from `{:.1e}` formatting.
fn scientific(v: f64) -> String {
    let s = alloc::format!("{v:.1e}");
    match s.split_once('e') {
        Some((mantissa, exp)) => alloc::format!("{mantissa}·10^{exp}"),
        None => s,
    }
}

fn approx_integer(x: &BigUint) -> String {
    if x.is_zero() || x.bits() < 30 {
        return alloc::format!("{x}");
    }
    let v = x.to_f64().unwrap_or(f64::INFINITY);
    if v < 1e9 {
        alloc::format!("{x}")
    } else {
        alloc::format!("≈{}", scientific(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn brute_force_counts() {
        let counts: Vec<u64> = (0..=4).map(|n| brute_force_mbf(n).unwrap().count).collect();
        assert_eq!(counts, [2, 3, 6, 20, 168]);
        assert!(matches!(brute_force_mbf(5), Err(Error::Capacity { .. })));
    }

    #[test]
    fn two_input_functions() {
        // Isotone among the 16 two-input functions, bit x = f(x) with x = x1 + 2 x2.
        let t = brute_force_mbf(2).unwrap();
        let bits: Vec<u64> = t.tables.iter().map(|t| t.bits()).collect();
        // False, x1∧x2, x1, x2, x1∨x2, True
        assert_eq!(bits, [0b0000, 0b1000, 0b1010, 0b1100, 0b1110, 0b1111]);
    }

    #[test]
    fn formula_counts() {
        assert_eq!(kisielewicz_d(0, false).unwrap(), BigUint::from(2u32));
        assert_eq!(kisielewicz_d(1, false).unwrap(), BigUint::from(3u32));
        assert_eq!(kisielewicz_d(3, false).unwrap(), BigUint::from(20u32));
        assert_eq!(kisielewicz_d(4, false).unwrap(), BigUint::from(168u32));
        assert!(matches!(kisielewicz_d(5, false), Err(Error::Capacity { limit: 4, .. })));
        assert!(matches!(kisielewicz_d(6, true), Err(Error::Capacity { limit: 5, .. })));
    }

    #[test]
    fn formula_terms_are_monotonicity_indicators() {
        for n in 0..=3 {
            for k in 1..=(1u64 << (1 << n)) {
                let table = TruthTable { n: n as u8, bits: k & ((1u64 << (1 << n)) - 1) };
                assert_eq!(kisielewicz_term(k, n) == 1, table.is_monotone(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn digits() {
        assert_eq!(digit(0b1011, 0), 1);
        assert_eq!(digit(0b1011, 2), 0);
        assert_eq!(digit(1 << 16, 16), 1);
        assert_eq!(floor_log2(0), 0);
        assert_eq!(floor_log2(1), 0);
        assert_eq!(floor_log2(15), 3);
    }

    #[test]
    fn memory_rows() {
        let rows = memsize_report(2, 8).unwrap();
        let per: Vec<u64> = rows.iter().map(|r| r.bytes_per_elem).collect();
        assert_eq!(per, [1, 1, 2, 4, 8, 16, 32]);
        let five = &rows[3];
        assert_eq!(five.elem_count, BigUint::from(7579u32));
        assert_eq!(five.total_bytes, BigUint::from(30316u32));
        assert_eq!(five.total_human(), "30 Kb");
        assert_eq!(rows[2].refined_powerset_size, BigUint::from(32768u32));
        assert_eq!(rows[0].total_human(), "4 bytes");
        assert_eq!(rows[1].total_human(), "18 bytes");
        assert_eq!(rows[2].total_human(), "0.32 Kb");
        assert_eq!(rows[5].total_human(), "3.6·10^4 Gb");
        assert_eq!(rows[6].total_human(), "1.7·10^15 Gb");
        assert_eq!(rows[5].count_human(), "≈2.4·10^12");
        assert_eq!(rows[6].count_human(), "≈5.6·10^22");
        assert_eq!(rows[4].count_human(), "7828352");
        assert_eq!(rows[2].refined_human(), "2^15=32768");
        assert_eq!(rows[6].refined_human(), "2^255");
        assert!(matches!(memsize_report(2, 9), Err(Error::UnknownValue { n: 9 })));
    }

    #[test]
    fn degenerate_rows() {
        let rows = memsize_report(0, 1).unwrap();
        assert_eq!(rows[0].elem_count.to_string(), "0");
        assert_eq!(rows[0].bytes_per_elem, 1);
        assert_eq!(rows[0].refined_powerset_size.to_string(), "1");
        assert_eq!(rows[1].total_human(), "1 byte");
    }

    #[test]
    fn tables() {
        assert!(TruthTable::new(2, 0b10000).is_none());
        let t = TruthTable::new(2, 0b1110).unwrap();
        assert!(t.is_monotone());
        assert_eq!(t.restrict_nonzero(), Some(0b111));
        assert_eq!(TruthTable::new(0, 1).unwrap().restrict_nonzero(), None);
    }
}
