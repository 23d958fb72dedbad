use std::collections::BTreeMap;

use dsmt_core::fusion::MASS_TOLERANCE;
use dsmt_core::{
    atom_mask, conjunctive_consensus, dempster_combine, dempster_weights, dsm_bel_pl, dsm_combine,
    dsm_fuse_many, dst_bel_pl, generate, weighted_redistribution, AtomSet, ClassicalBba, Error, Frame,
    GeneralizedBba, RedistributionWeights, VennMask,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-12;

fn normalized(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

fn random_gbba(rng: &mut ChaCha8Rng, elements: &[VennMask]) -> GeneralizedBba {
    let frame = elements[0].frame();
    let k = rng.gen_range(1..=elements.len().min(5));
    let focal: Vec<VennMask> = elements.choose_multiple(rng, k).cloned().collect();
    let masses = normalized(rng, k);
    GeneralizedBba::new(frame, focal.into_iter().zip(masses)).unwrap()
}

fn random_classical(rng: &mut ChaCha8Rng, frame: Frame) -> ClassicalBba {
    let subsets: Vec<AtomSet> = (1..=frame.top_region()).map(AtomSet).collect();
    let k = rng.gen_range(1..=subsets.len().min(4));
    let focal: Vec<AtomSet> = subsets.choose_multiple(rng, k).copied().collect();
    let masses = normalized(rng, k);
    ClassicalBba::new(frame, focal.into_iter().zip(masses)).unwrap()
}

fn nonempty_elements(n: usize) -> Vec<VennMask> {
    generate(Frame::new(n).unwrap()).unwrap().iter().skip(1).collect()
}

fn assert_close(a: &GeneralizedBba, b: &GeneralizedBba) {
    let left: Vec<&VennMask> = a.focal().map(|(k, _)| k).collect();
    let right: Vec<&VennMask> = b.focal().map(|(k, _)| k).collect();
    assert_eq!(left, right);
    for (k, m) in a.focal() {
        assert!((m - b.mass(k)).abs() <= TOL, "{k:?}: {m} vs {}", b.mass(k));
    }
}

/// Cross-product oracle written against the definition, with no pooling order tricks.
fn cross_product(m1: &GeneralizedBba, m2: &GeneralizedBba) -> BTreeMap<String, f64> {
    let mut out = BTreeMap::new();
    for (a, ma) in m1.focal() {
        for (b, mb) in m2.focal() {
            let c: String = a
                .to_bit_string()
                .chars()
                .zip(b.to_bit_string().chars())
                .map(|(x, y)| if x == '1' && y == '1' { '1' } else { '0' })
                .collect();
            *out.entry(c).or_insert(0.0) += ma * mb;
        }
    }
    out
}

#[test]
fn dsm_rule_matches_cross_product_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=3 {
        let elements = nonempty_elements(n);
        for _ in 0..200 {
            let m1 = random_gbba(&mut rng, &elements);
            let m2 = random_gbba(&mut rng, &elements);
            let fused = dsm_combine(&m1, &m2).unwrap();
            let oracle = cross_product(&m1, &m2);
            assert_eq!(fused.len(), oracle.len());
            for (k, m) in fused.focal() {
                assert!((m - oracle[&k.to_bit_string()]).abs() <= TOL);
            }
            assert!((fused.total() - 1.0).abs() <= TOL);
        }
    }
}

#[test]
fn dsm_rule_is_commutative_and_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..1000 {
        let n = 1 + trial % 3;
        let elements = nonempty_elements(n);
        let m1 = random_gbba(&mut rng, &elements);
        let m2 = random_gbba(&mut rng, &elements);
        let m3 = random_gbba(&mut rng, &elements);
        assert_eq!(dsm_combine(&m1, &m2).unwrap(), dsm_combine(&m2, &m1).unwrap());
        let left = dsm_combine(&dsm_combine(&m1, &m2).unwrap(), &m3).unwrap();
        let right = dsm_combine(&m1, &dsm_combine(&m2, &m3).unwrap()).unwrap();
        assert_close(&left, &right);
        let reordered = dsm_fuse_many(&[m3.clone(), m1.clone(), m2.clone()]).unwrap();
        assert_close(&dsm_fuse_many(&[m1, m2, m3]).unwrap(), &reordered);
    }
}

#[test]
fn belief_is_below_plausibility_everywhere() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=3 {
        let elements = generate(Frame::new(n).unwrap()).unwrap();
        let nonempty: Vec<VennMask> = elements.iter().skip(1).collect();
        for _ in 0..100 {
            let m = random_gbba(&mut rng, &nonempty);
            for a in elements.iter() {
                let bp = dsm_bel_pl(&m, &a).unwrap();
                assert!(0.0 <= bp.bel && bp.bel <= bp.pl + TOL && bp.pl <= 1.0 + TOL, "{a:?} {bp:?}");
            }
            let bp = dsm_bel_pl(&m, &VennMask::full(m.frame())).unwrap();
            assert!((bp.bel - 1.0).abs() <= TOL);
        }
    }
}

#[test]
fn redistribution_family_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for n in 1..=4 {
        let frame = Frame::new(n).unwrap();
        for _ in 0..250 {
            let m1 = random_classical(&mut rng, frame);
            let m2 = random_classical(&mut rng, frame);
            let consensus = conjunctive_consensus(&m1, &m2).unwrap();
            let k = consensus.conflict;
            assert!((consensus.result.total() - 1.0).abs() <= TOL);

            let yager = weighted_redistribution(&m1, &m2, &RedistributionWeights::yager(frame)).unwrap();
            let theta = AtomSet::full(frame);
            assert!((yager.result.mass(theta) - (consensus.result.mass(theta) + k)).abs() <= TOL);
            assert!((yager.result.total() - 1.0).abs() <= TOL);

            let smets = weighted_redistribution(&m1, &m2, &RedistributionWeights::smets()).unwrap();
            assert!((smets.result.mass(AtomSet::EMPTY) - k).abs() <= TOL);
            assert!(smets.result.open_world());

            match dempster_combine(&m1, &m2) {
                Ok(direct) => {
                    let w = dempster_weights(&consensus).unwrap();
                    let via = weighted_redistribution(&m1, &m2, &w).unwrap();
                    assert!((direct.result.total() - 1.0).abs() <= TOL);
                    for s in (0..=frame.top_region()).map(AtomSet) {
                        assert!((via.result.mass(s) - direct.result.mass(s)).abs() <= TOL);
                    }
                }
                Err(Error::FullContradiction { conflict }) => assert!((conflict - 1.0).abs() <= TOL),
                Err(other) => panic!("{other:?}"),
            }
        }
    }
}

#[test]
fn dsm_and_dst_beliefs_agree_on_atoms_and_total_ignorance() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    // With one atom, the atom is already the whole frame.
    for n in 2..=4 {
        let frame = Frame::new(n).unwrap();
        for _ in 0..100 {
            let weights = normalized(&mut rng, n + 1);
            let mut generalized: Vec<(VennMask, f64)> =
                (1..=n).map(|i| (atom_mask(i, frame).unwrap(), weights[i - 1])).collect();
            generalized.push((VennMask::full(frame), weights[n]));
            let mut classical: Vec<(AtomSet, f64)> =
                (1..=n).map(|i| (AtomSet::singleton(i), weights[i - 1])).collect();
            classical.push((AtomSet::full(frame), weights[n]));
            let g = GeneralizedBba::new(frame, generalized).unwrap();
            let c = ClassicalBba::new(frame, classical).unwrap();
            for i in 1..=n {
                let dsm = dsm_bel_pl(&g, &atom_mask(i, frame).unwrap()).unwrap();
                let dst = dst_bel_pl(&c, AtomSet::singleton(i)).unwrap();
                assert!((dsm.bel - dst.bel).abs() <= TOL);
            }
        }
    }
}

#[test]
fn input_mass_tolerance_is_enforced() {
    let f = Frame::new(2).unwrap();
    let t1 = atom_mask(1, f).unwrap();
    let t2 = atom_mask(2, f).unwrap();
    assert!(GeneralizedBba::new(f, [(t1.clone(), 0.5), (t2.clone(), 0.5 + MASS_TOLERANCE / 2.0)]).is_ok());
    assert!(GeneralizedBba::new(f, [(t1, 0.5), (t2, 0.5 + MASS_TOLERANCE * 2.0)]).is_err());
}
