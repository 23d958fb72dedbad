use std::collections::BTreeSet;

use dsmt_core::oracles::brute_force_mbf;
use dsmt_core::{
    canonicalize, from_antichain, generate, generate_stream, is_isotone, known_cardinality, to_dnf, Frame,
    VennMask,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn frame(n: usize) -> Frame {
    Frame::new(n).unwrap()
}

/// The 19 rows of the printed D_3 matrix, columns in u_3 order.
const D3_ROWS: [&str; 19] = [
    "0 0 0 0 0 0 0",
    "0 0 0 0 0 0 1",
    "0 0 0 0 0 1 1",
    "0 0 0 0 1 0 1",
    "0 0 0 0 1 1 1",
    "0 0 0 1 1 1 1",
    "0 0 1 0 0 0 1",
    "0 0 1 0 0 1 1",
    "0 0 1 0 1 0 1",
    "0 0 1 0 1 1 1",
    "0 0 1 1 1 1 1",
    "0 1 1 0 0 1 1",
    "0 1 1 0 1 1 1",
    "0 1 1 1 1 1 1",
    "1 0 1 0 1 0 1",
    "1 0 1 0 1 1 1",
    "1 0 1 1 1 1 1",
    "1 1 1 0 1 1 1",
    "1 1 1 1 1 1 1",
];

#[test]
fn three_atoms_match_printed_matrix() {
    let rows: Vec<String> = generate(frame(3)).unwrap().iter().map(|m| m.to_bit_string()).collect();
    let printed: Vec<String> = D3_ROWS.iter().map(|r| r.replace(' ', "")).collect();
    assert_eq!(rows, printed);
}

#[test]
fn two_atoms_match_printed_rows() {
    let rows: Vec<String> = generate(frame(2)).unwrap().iter().skip(1).map(|m| m.to_bit_string()).collect();
    // d1 = x1∩x2, d2 = x2, d3 = x1, d4 = x1∪x2
    assert_eq!(rows, ["001", "011", "101", "111"]);
}

/// Position of each `α_i` of the three-atom listing in canonical order.
#[test]
fn alpha_listing_maps_onto_canonical_order() {
    let alphas = [
        ("0", 0),
        ("t1&t2&t3", 1),
        ("t1&t2", 6),
        ("t1&t3", 3),
        ("t2&t3", 2),
        ("(t1|t2)&t3", 4),
        ("(t1|t3)&t2", 7),
        ("(t2|t3)&t1", 8),
        ("((t1&t2)|t3)&(t1|t2)", 9),
        ("t1", 14),
        ("t2", 11),
        ("t3", 5),
        ("(t1&t2)|t3", 10),
        ("(t1&t3)|t2", 12),
        ("(t2&t3)|t1", 15),
        ("t1|t2", 17),
        ("t1|t3", 16),
        ("t2|t3", 13),
        ("t1|t2|t3", 18),
    ];
    let all = generate(frame(3)).unwrap();
    let mut seen = BTreeSet::new();
    for (expr, index) in alphas {
        let c = canonicalize(expr, frame(3)).unwrap();
        assert_eq!(all.position(&c.mask), Some(index), "{expr}");
        seen.insert(index);
    }
    assert_eq!(seen.len(), 19);
}

#[test]
fn matches_brute_force_isotone_tables() {
    for n in 0..=4 {
        let f = frame(n);
        let generated: BTreeSet<u64> = generate(f).unwrap().raw().iter().copied().collect();
        let oracle: BTreeSet<u64> =
            brute_force_mbf(n).unwrap().tables.iter().filter_map(|t| t.restrict_nonzero()).collect();
        assert_eq!(generated, oracle, "n={n}");
        assert_eq!(generated.len() as u64 + 1, u64::try_from(known_cardinality(n).unwrap()).unwrap());
    }
}

#[test]
fn six_atoms_stream_count() {
    let mut last = None;
    let mut ordered = true;
    let count = generate_stream(frame(6), |m| {
        if let Some(prev) = &last {
            ordered &= prev < m;
        }
        last = Some(m.clone());
    })
    .unwrap();
    assert_eq!(count, 7_828_353);
    assert!(ordered);
    assert!(last.unwrap().is_full());
}

#[test]
fn dnf_round_trip_on_random_five_atom_elements() {
    let f = frame(5);
    let all = generate(f).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10_000 {
        let m = all.get(rng.gen_range(0..all.len())).unwrap();
        assert_eq!(from_antichain(&to_dnf(&m).unwrap(), f).unwrap(), m);
    }
}

#[test]
fn closure_under_both_operations() {
    for n in 1..=4 {
        let all = generate(frame(n)).unwrap();
        let elems: Vec<VennMask> = all.iter().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let pairs = if n <= 3 { elems.len() * elems.len() } else { 20_000 };
        for p in 0..pairs {
            let (a, b) = if n <= 3 {
                (&elems[p / elems.len()], &elems[p % elems.len()])
            } else {
                (&elems[rng.gen_range(0..elems.len())], &elems[rng.gen_range(0..elems.len())])
            };
            let meet = a.intersect(b).unwrap();
            let join = a.union(b).unwrap();
            assert!(is_isotone(&meet) && is_isotone(&join));
            assert!(all.contains(&meet), "{a:?} ∩ {b:?}");
            assert!(all.contains(&join), "{a:?} ∪ {b:?}");
        }
    }
}

#[test]
fn duals_stay_inside() {
    for n in 1..=3 {
        let all = generate(frame(n)).unwrap();
        for m in all.iter().skip(1) {
            let d = dsmt_core::dual(&m).unwrap().expect("nonempty element has a dual");
            assert!(all.contains(&d));
            assert_eq!(dsmt_core::dual(&d).unwrap(), Some(m));
        }
    }
}
