use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use perflat::arith::factorial;
use perflat::geometry::{
    hollow_systems, hull_lattice_points, hull_vertices, interior_lattice_points, max_root_index_exhaustive,
    maximal_index_system, parallelepiped_coordinates, root_lattice_extremes, small_height_basis, RootType,
    SymmetricGeneratorSet,
};
use perflat::lattice::{minimal_vectors_general, short_vectors, GramMatrix, IntVector, LatticeBasis};
use perflat::matrix::{det_int, int_matrix, solve_rational, to_rational, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_nonsingular(rng: &mut ChaCha8Rng, d: usize, r: i64) -> Matrix<BigInt> {
    loop {
        let m = Matrix::from_fn(d, d, |_, _| BigInt::from(rng.gen_range(-r..=r)));
        if !det_int(&m).unwrap().is_zero() {
            return m;
        }
    }
}

fn to_vectors(m: &Matrix<BigInt>) -> Vec<IntVector> {
    m.to_rows().into_iter().map(|r| IntVector::new(r).unwrap()).collect()
}

/// Lattice points of `conv(V)` by Caratheodory: `x` lies in the simplex on
/// `0` and some `d` independent points of `V`.
fn hull_points_oracle(points: &[IntVector], d: usize, reach: i64) -> Vec<IntVector> {
    let mut simplices = Vec::new();
    let n = points.len();
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        let m = Matrix::from_rows(idx.iter().map(|&i| points[i].coords().to_vec()).collect()).unwrap();
        if !det_int(&m).unwrap().is_zero() {
            simplices.push(to_rational(&m).transpose());
        }
        let mut k = d;
        let mut moved = false;
        while k > 0 {
            k -= 1;
            if idx[k] < n - d + k {
                idx[k] += 1;
                for j in k + 1..d {
                    idx[j] = idx[j - 1] + 1;
                }
                moved = true;
                break;
            }
        }
        if !moved {
            break;
        }
    }
    let mut out = Vec::new();
    let total = (2 * reach + 1).pow(d as u32);
    for code in 0..total {
        let mut c = code;
        let x: Vec<i64> = (0..d)
            .map(|_| {
                let v = c % (2 * reach + 1) - reach;
                c /= 2 * reach + 1;
                v
            })
            .collect();
        let xr: Vec<BigRational> = x.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        let inside = simplices.iter().any(|s| {
            let l = solve_rational(s, &xr).unwrap();
            l.iter().all(|c| !c.is_negative()) && l.iter().sum::<BigRational>() <= BigRational::one()
        });
        if inside {
            out.push(IntVector::from_i64(&x).unwrap());
        }
    }
    out.sort();
    out
}

#[test]
fn short_generators_leave_the_interior_empty() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut done = 0;
    while done < 100 {
        let d = 2 + done % 3;
        let b = random_nonsingular(&mut rng, d, 2);
        let g = b.mul(&b.transpose()).unwrap();
        let gram = GramMatrix::from_integers(&g).unwrap();
        let mv = minimal_vectors_general(&gram).unwrap();
        let m = mv.minimum().to_integer();
        // Squared norm < 2 after scaling the minimum to 1.
        let short: Vec<IntVector> = short_vectors(&g, &(&m * 2 - 1))
            .unwrap()
            .into_iter()
            .map(|(v, _)| v)
            .collect();
        let chosen: Vec<IntVector> = short.iter().filter(|_| rng.gen_bool(0.7)).cloned().collect();
        if chosen.is_empty() {
            continue;
        }
        let rows = Matrix::from_rows(chosen.iter().map(|v| v.coords().to_vec()).collect()).unwrap();
        if perflat::matrix::rank_int(&rows) < d {
            continue;
        }
        let set = SymmetricGeneratorSet::new(chosen).unwrap();
        let zero = IntVector::new(vec![BigInt::zero(); d]).unwrap();
        assert_eq!(interior_lattice_points(&set).unwrap(), [zero.clone()]);
        let mut expected = set.points();
        expected.push(zero);
        expected.sort();
        let closed = hull_lattice_points(&set).unwrap();
        assert_eq!(closed, expected);
        let reach = set
            .points()
            .iter()
            .flat_map(|v| v.coords().iter().map(|c| i64::try_from(c.abs()).unwrap()).collect::<Vec<_>>())
            .max()
            .unwrap();
        if d <= 3 {
            assert_eq!(hull_points_oracle(&set.points(), d, reach), closed);
        }
        let mut verts = set.points();
        verts.sort();
        assert_eq!(hull_vertices(&set).unwrap(), verts);
        done += 1;
    }
}

#[test]
fn hollow_systems_have_index_at_most_factorial() {
    let expected_max = [1u64, 2, 4];
    for d in 1..=3usize {
        let fact = factorial(d as u64);
        let limit = 2 * u64::try_from(&fact).unwrap();
        let systems = hollow_systems(d, limit).unwrap();
        let mut max = 0;
        for (v, index) in &systems {
            assert!(BigUint::from(*index) <= fact, "d={d} index={index}");
            // The cross-polytope on the system has volume 2^d I / d! <= 2^d.
            assert!(BigUint::from(*index) << d <= (BigUint::one() << d) * &fact);
            max = max.max(*index);
            let set = SymmetricGeneratorSet::new(to_vectors(v)).unwrap();
            assert_eq!(interior_lattice_points(&set).unwrap().len(), 1);
        }
        assert_eq!(max, expected_max[d - 1], "d={d}");
    }
    // Non-hollow systems are detected by the facet description too.
    let v = int_matrix(&[&[2, 0], &[0, 1]]);
    let set = SymmetricGeneratorSet::new(to_vectors(&v)).unwrap();
    assert_eq!(interior_lattice_points(&set).unwrap().len(), 3);
}

fn check_small_height(lattice: &LatticeBasis, vs: &[IntVector]) {
    let b = small_height_basis(lattice, vs).unwrap();
    assert!(b.satisfies_bound(), "{:?}", b.alpha);
    let d = vs.len();
    // v_i = sum_j alpha_ij f_j.
    for (i, v) in vs.iter().enumerate() {
        let mut acc = vec![BigInt::zero(); v.len()];
        for j in 0..d {
            for (a, c) in acc.iter_mut().zip(b.basis[j].coords()) {
                *a += &b.alpha[(i, j)] * c;
            }
        }
        assert_eq!(acc, v.coords());
    }
    // f is a basis of the lattice.
    let f = LatticeBasis::new(b.basis.clone()).unwrap();
    assert_eq!(f.gram().determinant(), lattice.gram().determinant());
    // Each f_i lies in the closed parallelepiped spanned by the v_i.
    let vrows: Vec<Vec<BigInt>> = vs.iter().map(|v| v.coords().to_vec()).collect();
    for fi in &b.basis {
        for l in parallelepiped_coordinates(&vrows, fi.coords()) {
            assert!(!l.is_negative() && l <= BigRational::one());
        }
    }
}

#[test]
fn small_height_bounds_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for d in 1..=6 {
        for _ in 0..100 {
            let basis = random_nonsingular(&mut rng, d, 2);
            let lattice = LatticeBasis::new(to_vectors(&basis)).unwrap();
            let c = random_nonsingular(&mut rng, d, 2);
            let vs = to_vectors(&c.mul(&basis).unwrap());
            check_small_height(&lattice, &vs);
        }
    }
}

fn unit_basis(d: usize) -> LatticeBasis {
    LatticeBasis::new(to_vectors(&Matrix::identity(d))).unwrap()
}

#[test]
fn minimal_vectors_have_small_height() {
    let cases = [
        (RootType::A, 2),
        (RootType::A, 3),
        (RootType::A, 4),
        (RootType::A, 5),
        (RootType::D, 4),
        (RootType::D, 5),
    ];
    for (t, n) in cases {
        let gram = perflat::geometry::cartan_gram(t, n).unwrap();
        let mv = minimal_vectors_general(&gram).unwrap();
        let (idx, index) = maximal_index_system(&mv).unwrap();
        assert_eq!(index, if (t, n) == (RootType::D, 4) || (t, n) == (RootType::D, 5) { 2u32 } else { 1 }.into());
        let vs: Vec<IntVector> = idx.iter().map(|&i| mv.representatives()[i].clone()).collect();
        let vm = to_rational(&Matrix::from_rows(vs.iter().map(|v| v.coords().to_vec()).collect()).unwrap());
        // Every minimal vector has coordinates in [-1, 1] over the system.
        for v in mv.representatives() {
            let x: Vec<BigRational> = v.coords().iter().cloned().map(BigRational::from_integer).collect();
            let lam = solve_rational(&vm.transpose(), &x).unwrap();
            assert!(lam.iter().all(|l| l.abs() <= BigRational::one()), "{t}{n}");
        }
        let lattice = unit_basis(n);
        check_small_height(&lattice, &vs);
        let b = small_height_basis(&lattice, &vs).unwrap();
        let fm = to_rational(&Matrix::from_rows(b.basis.iter().map(|v| v.coords().to_vec()).collect()).unwrap());
        for v in mv.representatives() {
            let x: Vec<BigRational> = v.coords().iter().cloned().map(BigRational::from_integer).collect();
            let beta = solve_rational(&fm.transpose(), &x).unwrap();
            for (j, bj) in beta.iter().enumerate() {
                let bound = BigRational::from_integer(BigInt::from(&index << j));
                assert!(bj.abs() <= bound, "{t}{n}: beta_{j} = {bj}");
            }
        }
    }
}

#[test]
fn root_lattice_extremes_agree_with_search() {
    for n in 1..=6 {
        assert_eq!(max_root_index_exhaustive(RootType::A, n).unwrap(), BigUint::one());
        assert_eq!(root_lattice_extremes(RootType::A, n).unwrap(), BigUint::one());
    }
    for n in [4, 6, 8] {
        let want = BigUint::one() << (n / 2 - 1);
        assert_eq!(max_root_index_exhaustive(RootType::D, n).unwrap(), want);
        assert_eq!(root_lattice_extremes(RootType::D, n).unwrap(), want);
    }
    // Odd rank: the searched value 2^((n-1)/2 - 1) for n = 5, 7.
    assert_eq!(max_root_index_exhaustive(RootType::D, 5).unwrap(), BigUint::from(2u32));
    assert_eq!(max_root_index_exhaustive(RootType::D, 7).unwrap(), BigUint::from(4u32));
}
