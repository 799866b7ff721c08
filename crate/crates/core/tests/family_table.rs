use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use perflat::family::{
    construct_ld, essential_partner, family_members, ld_minimal_vectors, table9_entries, HoleSequence,
};
use perflat::lattice::minimal_vectors_general;
use perflat::perfection::{is_perfect, ld_invariants};

const TABLE: [(usize, &[u64], &str, u32, usize, usize); 16] = [
    (9, &[], "1,2,3,4,5,6,7,8,9,10,11", 1210, 70, 45),
    (9, &[2], "1,3,4,5,6,7,8,9,10,11,12", 1330, 66, 45),
    (9, &[3], "1,2,4,5,6,7,8,9,10,11,12", 1426, 63, 45),
    (9, &[4], "1,2,3,5,6,7,8,9,10,11,12", 1498, 61, 45),
    (9, &[5], "1,2,3,4,6,7,8,9,10,11,12", 1546, 60, 45),
    (9, &[6], "1,2,3,4,5,7,8,9,10,11,12", 1570, 60, 45),
    (9, &[2, 8], "1,3,4,5,6,7,9,10,11,12,13", 1700, 56, 45),
    (9, &[2, 9], "1,3,4,5,6,7,8,10,11,12,13", 1674, 57, 45),
    (9, &[2, 10], "1,3,4,5,6,7,8,9,11,12,13", 1624, 57, 45),
    (9, &[2, 11], "1,3,4,5,6,7,8,9,10,12,13", 1550, 60, 45),
    (9, &[2, 12], "1,3,4,5,6,7,8,9,10,11,13", 1452, 62, 45),
    (9, &[3, 9], "1,2,4,5,6,7,8,10,11,12,13", 1778, 55, 45),
    (9, &[3, 10], "1,2,4,5,6,7,8,9,11,12,13", 1726, 56, 45),
    (9, &[3, 11], "1,2,4,5,6,7,8,9,10,12,13", 1650, 58, 45),
    (9, &[4, 10], "1,2,3,5,6,7,8,9,11,12,13", 1804, 54, 44),
    (10, &[4, 10], "1,2,3,5,6,7,8,9,11,12,13,14", 2507, 75, 55),
];

fn hs(h: &[u64]) -> HoleSequence {
    HoleSequence::new(h.to_vec()).unwrap()
}

#[test]
fn table_of_nine_dimensional_lattices() {
    let entries = table9_entries();
    assert_eq!(entries.len(), TABLE.len());
    for ((d, holes), row) in entries.iter().zip(TABLE) {
        assert_eq!((*d, holes.holes()), (row.0, row.1));
        let l = construct_ld(*d, holes).unwrap();
        let weight: Vec<String> = l.support().iter().map(|x| x.to_string()).collect();
        assert_eq!(weight.join(","), row.2);
        let inv = ld_invariants(&l).unwrap();
        assert_eq!(inv.det, BigUint::from(row.3), "det of {holes}");
        assert_eq!(inv.pairs, row.4, "pairs of {holes}");
        assert_eq!(inv.d2, row.5, "rank of {holes}");
        // The closed-form determinant agrees with the Gram determinant.
        assert_eq!(l.gram().determinant(), BigRational::from_integer(BigInt::from(row.3)));
    }
}

#[test]
fn lattice_invariants_hold_for_random_holes() {
    for (d, h) in [(9, &[2, 8][..]), (12, &[3, 9, 15]), (15, &[7]), (11, &[]), (8, &[2, 5])] {
        let l = construct_ld(d, &hs(h)).unwrap();
        for b in l.basis().vectors() {
            let sum: BigInt = b.coords().iter().sum();
            assert_eq!(sum, BigInt::from(0));
            assert_eq!(b.dot(l.weight()), BigInt::from(0));
        }
        for i in 0..d {
            assert!(l.gram().get(i, i).to_integer() % 2 == BigInt::from(0));
        }
    }
}

#[test]
fn quadruples_agree_with_general_enumeration() {
    for (d, h) in [(5, &[][..]), (6, &[2, 5, 6, 9]), (9, &[4, 10]), (10, &[4, 10]), (12, &[3, 9]), (7, &[2])] {
        let l = construct_ld(d, &hs(h)).unwrap();
        let a = ld_minimal_vectors(&l).unwrap();
        let b = minimal_vectors_general(l.gram()).unwrap();
        assert_eq!(a, b, "L_{d}({h:?})");
    }
}

#[test]
fn perfection_of_named_lattices() {
    assert!(is_perfect(construct_ld(10, &hs(&[4, 10])).unwrap().gram()).unwrap());
    assert!(!is_perfect(construct_ld(9, &hs(&[4, 10])).unwrap().gram()).unwrap());
}

#[test]
fn partner_is_an_involution_with_equal_determinant() {
    for (d, h) in [(6, &[2, 5, 6, 9][..]), (10, &[4, 10]), (12, &[3, 9, 13]), (20, &[7, 13, 19])] {
        let p = essential_partner(d, &hs(h)).unwrap();
        assert_eq!(essential_partner(d, &p).unwrap(), hs(h));
        let a = construct_ld(d, &hs(h)).unwrap();
        let b = construct_ld(d, &p).unwrap();
        assert_eq!(a.gram().determinant(), b.gram().determinant());
    }
}

/// Independent oracle: backtracking directly over hole sequences.
fn constrained_sequences(d: usize) -> Vec<Vec<u64>> {
    fn go(d: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let k = cur.len() as u64;
        if let Some(&last) = cur.last() {
            if last == d + k + 1 {
                out.push(cur.clone());
            }
            if last >= d + k + 1 {
                return;
            }
        }
        let start = cur.last().map_or(7, |&h| h + 6);
        for h in start..=d + k + 2 {
            cur.push(h);
            go(d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d as u64, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[test]
fn family_members_match_backtracking() {
    for d in 46..=48 {
        let got: Vec<Vec<u64>> = family_members(d).unwrap().iter().map(|h| h.holes().to_vec()).collect();
        let want = constrained_sequences(d);
        assert_eq!(got.len(), want.len());
        assert_eq!(got, want);
        assert!(family_members(d).unwrap().iter().all(|h| h.satisfies_auto(d) && h.satisfies_perf()));
    }
    assert!(family_members(45).is_err());
}

#[test]
fn partner_is_an_involution_on_random_sequences() {
    use perflat::family::support;
    use rand::seq::index::sample;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(50);
    let mut done = 0;
    while done < 50 {
        let d = rng.gen_range(4..=40usize);
        let k = rng.gen_range(0..=4usize);
        // Holes strictly inside the support range, so omega stays d + k + 2.
        let mut holes: Vec<u64> = sample(&mut rng, d + k - 1, k).into_iter().map(|i| i as u64 + 2).collect();
        holes.sort_unstable();
        let h = hs(&holes);
        let Ok(p) = essential_partner(d, &h) else {
            continue;
        };
        assert_eq!(essential_partner(d, &p).unwrap(), h);
        // The partner's support is the mirror image of the support.
        let s = support(d, &h);
        let omega = *s.last().unwrap();
        let mut mirrored: Vec<u64> = s.iter().map(|x| omega + 1 - x).collect();
        mirrored.sort_unstable();
        assert_eq!(support(d, &p), mirrored);
        if d <= 12 {
            let a = construct_ld(d, &h).unwrap();
            let b = construct_ld(d, &p).unwrap();
            assert_eq!(a.gram().determinant(), b.gram().determinant());
        }
        done += 1;
    }
}
