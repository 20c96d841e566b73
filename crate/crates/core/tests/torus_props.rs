mod oracle {
    pub mod torus;
}

use fibcheck_core::snf::Matrix;
use fibcheck_core::torusquot::{
    compose, fixed_point_free, generate_group, invariant_forms, lattice_fixed_point_free, q,
    AffineAuto, FormalShift, TorusModel, Q,
};
use oracle::torus::{brute_force_has_fixed_point, random_auto};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn snf_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut free, mut fixed) = (0, 0);
    for _ in 0..300 {
        let f = random_auto(&mut rng);
        let snf = fixed_point_free(&f).unwrap().free;
        assert_eq!(snf, !brute_force_has_fixed_point(&f), "{f}");
        if snf {
            free += 1;
        } else {
            fixed += 1;
        }
    }
    // both outcomes are exercised
    assert!(free > 30 && fixed > 30, "{free} free, {fixed} with fixed points");
}

#[test]
fn negation_has_four_fixed_points_on_half_lattice() {
    // z -> -z on one curve: (x, y) with 2x, 2y integral
    let count = (0..2)
        .flat_map(|a| (0..2).map(move |b| (q(a, 2), q(b, 2))))
        .filter(|(x, y)| (x * 2).is_integer() && (y * 2).is_integer())
        .count();
    assert_eq!(count, 4);
    let m = TorusModel::generic(1);
    let neg = AffineAuto::new(&m, vec![vec![-1]], vec![FormalShift::zero()], vec![]).unwrap();
    assert!(brute_force_has_fixed_point(&neg));
    assert!(!fixed_point_free(&neg).unwrap().free);
}

/// Random unimodular matrix and its inverse, as products of elementary moves.
fn unimodular<R: Rng>(rng: &mut R, m: usize) -> (Matrix<i64>, Matrix<i64>) {
    let id = |m: usize| -> Matrix<i64> {
        (0..m).map(|i| (0..m).map(|j| (i == j) as i64).collect()).collect()
    };
    let (mut p, mut pinv) = (id(m), id(m));
    for _ in 0..6 {
        let i = rng.gen_range(0..m);
        let j = rng.gen_range(0..m);
        if i == j {
            continue;
        }
        let c = rng.gen_range(-2..=2);
        // p <- E p with E = I + c e_ij ; pinv <- pinv E^{-1}
        let pj = p[j].clone();
        for (x, y) in p[i].iter_mut().zip(pj) {
            *x += c * y;
        }
        for row in pinv.iter_mut() {
            row[j] -= c * row[i];
        }
    }
    (p, pinv)
}

fn mul(a: &Matrix<i64>, b: &Matrix<i64>) -> Matrix<i64> {
    let n = b[0].len();
    a.iter()
        .map(|r| (0..n).map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum()).collect())
        .collect()
}

#[test]
fn fixed_points_invariant_under_basis_change() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let f = random_auto(&mut rng);
        let m = f.lattice_matrix().len();
        let (p, pinv) = unimodular(&mut rng, m);
        assert_eq!(mul(&p, &pinv), mul(&pinv, &p));
        let lhat = mul(&mul(&p, f.lattice_matrix()), &pinv);
        let that: Vec<Q> = p
            .iter()
            .map(|row| row.iter().zip(f.lattice_translation()).map(|(a, t)| t * *a).sum())
            .collect();
        assert_eq!(
            lattice_fixed_point_free(&lhat, &that).free,
            fixed_point_free(&f).unwrap().free
        );
    }
}

proptest! {
    #[test]
    fn forms_ignore_translations(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // one generator keeps the closure small; two random affine maps can
        // generate thousands of translations
        let gens = vec![random_auto(&mut rng)];
        let n = gens[0].n();
        let model = TorusModel::new(vec!["tau".into(); n], vec![]);
        let g = generate_group(&model, &gens).unwrap();
        let linear: Vec<AffineAuto> = gens
            .iter()
            .map(|f| AffineAuto::new(&model, f.linear().clone(), vec![FormalShift::zero(); n], vec![]).unwrap())
            .collect();
        let h = generate_group(&model, &linear).unwrap();
        for p in 0..=n {
            prop_assert_eq!(invariant_forms(&g, p), invariant_forms(&h, p));
        }
        // closure and inverses
        for i in 0..g.order() {
            prop_assert_eq!(g.mul(i, g.inverse(i)), 0);
            prop_assert_eq!(g.order() % g.element_order(i), 0);
        }
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_auto(&mut rng);
        let n = a.n();
        let mut pick = || loop {
            let f = random_auto(&mut rng);
            if f.n() == n {
                return f;
            }
        };
        let (b, c) = (pick(), pick());
        let left = compose(&compose(&a, &b).unwrap(), &c).unwrap();
        let right = compose(&a, &compose(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}
