mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use perflat::counting::sigma;
use perflat::family::{construct_ld, HoleSequence};
use perflat::isometry::isometry_equivalent;
use perflat::lattice::{minimal_vectors_general, GramMatrix, IntVector};
use perflat::matrix::{det_int, Matrix};
use perflat::overlattice::overlattices_of_index;
use perflat::perfection::{gram_from_perfect_set, symmetric_rank, PerfectSet};
use num_traits::Signed;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::random_unimodular;

fn cartan_a(n: usize) -> GramMatrix {
    let m = Matrix::from_fn(n, n, |i, j| {
        BigInt::from(match i.abs_diff(j) {
            0 => 2,
            1 => -1,
            _ => 0,
        })
    });
    GramMatrix::from_integers(&m).unwrap()
}

fn cartan_d(n: usize) -> GramMatrix {
    // Chain 0..n-2 with the last node attached to n-3.
    let mut m = Matrix::<BigInt>::zeros(n, n);
    for i in 0..n {
        m.row_mut(i)[i] = BigInt::from(2);
    }
    let mut link = |a: usize, b: usize| {
        m.row_mut(a)[b] = BigInt::from(-1);
        m.row_mut(b)[a] = BigInt::from(-1);
    };
    for i in 0..n - 2 {
        link(i, i + 1);
    }
    link(n - 3, n - 1);
    GramMatrix::from_integers(&m).unwrap()
}

fn cartan_e6() -> GramMatrix {
    let mut m = Matrix::<BigInt>::zeros(6, 6);
    for i in 0..6 {
        m.row_mut(i)[i] = BigInt::from(2);
    }
    for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)] {
        m.row_mut(a)[b] = BigInt::from(-1);
        m.row_mut(b)[a] = BigInt::from(-1);
    }
    GramMatrix::from_integers(&m).unwrap()
}

fn test_lattices() -> Vec<GramMatrix> {
    vec![
        cartan_a(2),
        cartan_a(3),
        cartan_a(4),
        cartan_d(4),
        cartan_a(5),
        cartan_d(5),
        cartan_e6(),
        GramMatrix::from_i64(&[&[1, 0], &[0, 1]]).unwrap(),
        GramMatrix::from_i64(&[&[3, 1, 0], &[1, 4, 1], &[0, 1, 5]]).unwrap(),
    ]
}

/// Sorted multiset of all pairwise inner products of the minimal vectors.
fn ip_multiset(g: &GramMatrix) -> Vec<BigRational> {
    let mv = minimal_vectors_general(g).unwrap();
    let mut out: Vec<BigRational> = (0..mv.len())
        .flat_map(|i| (i..mv.len()).map(move |j| (i, j)))
        .map(|(i, j)| mv.inner(i, j).abs())
        .collect();
    out.sort();
    out
}

fn rank_of(g: &GramMatrix) -> usize {
    symmetric_rank(minimal_vectors_general(g).unwrap().representatives()).unwrap()
}

#[test]
fn minimal_vectors_survive_basis_change() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for g in test_lattices() {
        let base = ip_multiset(&g);
        for _ in 0..5 {
            let (u, _) = random_unimodular(g.dim(), 12, &mut rng);
            assert_eq!(ip_multiset(&g.transform(&u).unwrap()), base);
        }
    }
}

#[test]
fn symmetric_rank_survives_twenty_basis_changes() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for g in test_lattices() {
        let r = rank_of(&g);
        for _ in 0..20 {
            let (u, _) = random_unimodular(g.dim(), 15, &mut rng);
            assert_eq!(rank_of(&g.transform(&u).unwrap()), r);
        }
    }
    assert_eq!(rank_of(&cartan_d(4)), 10);
    assert_eq!(rank_of(&cartan_e6()), 21);
    assert_eq!(rank_of(&GramMatrix::from_i64(&[&[1, 0], &[0, 1]]).unwrap()), 2);
}

fn half_gram(rows: &[&[i64]]) -> GramMatrix {
    let m = Matrix::from_fn(rows.len(), rows.len(), |i, j| BigRational::new(rows[i][j].into(), 2.into()));
    GramMatrix::new(m).unwrap()
}

fn from_set(vs: &[&[i64]]) -> GramMatrix {
    let set = PerfectSet::new(vs.iter().map(|v| IntVector::from_i64(v).unwrap()).collect()).unwrap();
    assert!(set.is_perfect());
    let ones = vec![BigRational::from_integer(1.into()); vs.len()];
    gram_from_perfect_set(&set, &ones).unwrap()
}

#[test]
fn small_dimensional_forms_from_perfect_sets() {
    assert_eq!(from_set(&[&[1, 0], &[0, 1], &[1, 1]]), half_gram(&[&[2, -1], &[-1, 2]]));
    let b = [&[1, 0, 0][..], &[0, 1, 0], &[0, 0, 1]];
    let first = from_set(&[b[0], b[1], b[2], &[1, 1, 1], &[1, 1, 0], &[0, 1, 1]]);
    assert_eq!(first, half_gram(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]));
    let second = from_set(&[b[0], b[1], b[2], &[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
    assert_eq!(second, half_gram(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]));
    assert!(!second.is_positive_definite());
    let third = from_set(&[b[0], b[1], b[2], &[1, 1, 0], &[0, 1, 1], &[1, 0, -1]]);
    assert_eq!(third, half_gram(&[&[2, -1, 1], &[-1, 2, -1], &[1, -1, 2]]));
    assert!(isometry_equivalent(&first.scaled(2), &third.scaled(2), 10_000).unwrap().is_some());
}

trait Scale {
    fn scaled(&self, k: i64) -> GramMatrix;
}

impl Scale for GramMatrix {
    fn scaled(&self, k: i64) -> GramMatrix {
        let k = BigRational::from_integer(k.into());
        GramMatrix::new(self.entries().map(|x| x * &k)).unwrap()
    }
}

fn hs(h: &[u64]) -> HoleSequence {
    HoleSequence::new(h.to_vec()).unwrap()
}

#[test]
fn essentially_isomorphic_family_members() {
    for (d, a, b) in [(6, &[2u64, 5, 6, 9][..], &[4u64, 7, 8, 11][..]), (10, &[4, 10], &[5, 11])] {
        let g1 = construct_ld(d, &hs(a)).unwrap().gram().clone();
        let g2 = construct_ld(d, &hs(b)).unwrap().gram().clone();
        let t = isometry_equivalent(&g1, &g2, 10_000_000).unwrap().expect("isometric");
        assert_eq!(g1.transform(&t).unwrap(), g2);
        assert_eq!(det_int(&t).unwrap().magnitude(), &1u32.into());
    }
    let g1 = construct_ld(9, &hs(&[2, 8])).unwrap().gram().clone();
    let g2 = construct_ld(9, &hs(&[2, 9])).unwrap().gram().clone();
    assert_eq!(isometry_equivalent(&g1, &g2, 1000).unwrap(), None);
}

#[test]
fn signed_permutation_witness() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for g in test_lattices() {
        let n = g.dim();
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let p = Matrix::from_fn(n, n, |i, j| {
            let s = if rng.gen_bool(0.5) { 1 } else { -1 };
            BigInt::from(if perm[i] == j { s } else { 0 })
        });
        let h = g.transform(&p).unwrap();
        let t = isometry_equivalent(&g, &h, 1_000_000).unwrap().unwrap();
        assert_eq!(g.transform(&t).unwrap(), h);
    }
}

#[test]
fn overlattice_counts_match_sigma() {
    for d in 1..=3 {
        for n in 1..=30 {
            let level = overlattices_of_index(d, n);
            let mut dedup = level.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), level.len(), "duplicates at d={d} N={n}");
            assert_eq!(BigInt::from(level.len()), sigma(d, n).unwrap().into(), "d={d} N={n}");
            assert!(level.len() as u64 <= n.pow(d as u32));
        }
    }
}

fn random_form(rng: &mut ChaCha8Rng, n: usize) -> GramMatrix {
    // B Bᵀ for a random nonsingular integer B.
    loop {
        let b = Matrix::from_fn(n, n, |_, _| BigInt::from(rng.gen_range(-2i64..=2)));
        if det_int(&b).unwrap() != BigInt::from(0) {
            let g = b.mul(&b.transpose()).unwrap();
            return GramMatrix::from_integers(&g).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn isometry_is_reflexive_and_symmetric(seed in any::<u64>(), n in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_form(&mut rng, n);
        let (u, _) = random_unimodular(n, 10, &mut rng);
        let h = g.transform(&u).unwrap();
        let t = isometry_equivalent(&g, &g, 10_000_000).unwrap().unwrap();
        prop_assert_eq!(g.transform(&t).unwrap(), g.clone());
        let forward = isometry_equivalent(&g, &h, 10_000_000).unwrap().unwrap();
        prop_assert_eq!(g.transform(&forward).unwrap(), h.clone());
        let back = isometry_equivalent(&h, &g, 10_000_000).unwrap().unwrap();
        prop_assert_eq!(h.transform(&back).unwrap(), g.clone());
        let other = random_form(&mut rng, n);
        let a = isometry_equivalent(&g, &other, 10_000_000).unwrap().is_some();
        let b = isometry_equivalent(&other, &g, 10_000_000).unwrap().is_some();
        prop_assert_eq!(a, b);
    }
}
