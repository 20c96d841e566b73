//! Brute-force fixed-point search on the torsion grid, independent of the
//! Smith normal form code.

use fibcheck_core::torusquot::{AffineAuto, FormalShift, TorusModel, Q};
use num_integer::Integer;
use rand::Rng;

/// `(source index, sign)` per row of a signed permutation.
fn rows(f: &AffineAuto) -> Vec<(usize, i64)> {
    f.linear()
        .iter()
        .map(|row| {
            let j = row.iter().position(|&x| x != 0).unwrap();
            (j, row[j])
        })
        .collect()
}

/// Cycles of `i -> source(i)`.
fn cycles(src: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; src.len()];
    let mut out = Vec::new();
    for start in 0..src.len() {
        if seen[start] {
            continue;
        }
        let mut c = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            c.push(i);
            i = src[i];
        }
        out.push(c);
    }
    out
}

fn is_integer(q: Q) -> bool {
    q.is_integer()
}

/// Search `(1/N) Z^k / Z^k` for `w_i = s_i w_{src(i)} + shift_i (mod 1)` on one cycle.
fn cycle_has_solution(cycle: &[usize], perm: &[(usize, i64)], shift: &[Q], grid: i64) -> bool {
    let k = cycle.len();
    let pos = |i: usize| cycle.iter().position(|&c| c == i).unwrap();
    let total = grid.pow(k as u32);
    (0..total).any(|code| {
        let mut w = vec![Q::from(0); k];
        let mut c = code;
        for slot in w.iter_mut() {
            *slot = Q::new(c % grid, grid);
            c /= grid;
        }
        cycle.iter().enumerate().all(|(a, &i)| {
            let (j, s) = perm[i];
            is_integer(w[pos(j)] * Q::from(s) + shift[i] - w[a])
        })
    })
}

/// Whether `f` has a fixed point, found by exhaustive search.
pub fn brute_force_has_fixed_point(f: &AffineAuto) -> bool {
    let perm = rows(f);
    let src: Vec<usize> = perm.iter().map(|p| p.0).collect();
    let t = f.translation();
    let den = t
        .iter()
        .fold(1i64, |acc, s| acc.lcm(s.re.denom()).lcm(s.tau.denom()));
    // elementary divisors of a signed permutation minus identity are 0, 1 or 2
    let grid = 2 * den;
    let re: Vec<Q> = t.iter().map(|s| s.re).collect();
    let tau: Vec<Q> = t.iter().map(|s| s.tau).collect();
    cycles(&src).iter().all(|c| {
        cycle_has_solution(c, &perm, &re, grid) && cycle_has_solution(c, &perm, &tau, grid)
    })
}

/// Random signed permutation on `n <= 4` curves sharing one period, with
/// translations of denominator at most 8.
pub fn random_auto<R: Rng>(rng: &mut R) -> AffineAuto {
    let n = rng.gen_range(1..=4);
    let model = TorusModel::new(vec!["tau".into(); n], vec![]);
    loop {
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let l = (0..n)
            .map(|i| {
                let s = if rng.gen_bool(0.5) { 1 } else { -1 };
                (0..n).map(|j| if j == perm[i] { s } else { 0 }).collect()
            })
            .collect();
        let den = rng.gen_range(1..=8);
        let zero_shift = rng.gen_bool(0.2);
        let t = (0..n)
            .map(|_| {
                if zero_shift {
                    FormalShift::zero()
                } else {
                    FormalShift::new(Q::new(rng.gen_range(0..den), den), Q::new(rng.gen_range(0..den), den))
                }
            })
            .collect();
        let f = AffineAuto::new(&model, l, t, vec![]).unwrap();
        if !f.is_torus_identity() {
            return f;
        }
    }
}
