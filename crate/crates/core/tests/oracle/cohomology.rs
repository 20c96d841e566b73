//! Cohomology of twisted cotangent bundles from the Euler sequence, with the
//! multiplication map written out as a matrix.

use num_rational::Ratio;

/// Exponent triples of degree `d` monomials in three variables.
pub fn monomials(d: i64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    for i in 0..=d {
        for j in 0..=d - i {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

/// Rank over Q by plain Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Ratio<i64>>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != Ratio::from_integer(0)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c];
        for i in 0..rows.len() {
            if i != r && rows[i][c] != Ratio::from_integer(0) {
                let f = rows[i][c] / pivot;
                let pivot_row = rows[r].clone();
                for (x, v) in rows[i].iter_mut().zip(pivot_row) {
                    *x -= f * v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Rank of `(f0, f1, f2) -> x0 f0 + x1 f1 + x2 f2` from degree `k-1` triples to degree `k`.
pub fn euler_h0_map_rank(k: i64) -> usize {
    let src = monomials(k - 1);
    let tgt = monomials(k);
    if src.is_empty() || tgt.is_empty() {
        return 0;
    }
    let mut cols = Vec::new();
    for var in 0..3 {
        for m in &src {
            let mut img = *m;
            img[var] += 1;
            let col: Vec<Ratio<i64>> = tgt
                .iter()
                .map(|t| Ratio::from_integer((*t == img) as i64))
                .collect();
            cols.push(col);
        }
    }
    rank(cols)
}

/// Cohomology of Omega^1(k) from the long exact sequence of
/// `0 -> Omega^1(k) -> O(k-1)^3 -> O(k) -> 0`, with the H^0 map rank computed
/// explicitly and the H^2 map surjective because H^1(O(k)) = 0.
pub fn euler_oracle(k: i64) -> [i64; 3] {
    let h0 = |d: i64| monomials(d).len() as i64;
    let r = euler_h0_map_rank(k) as i64;
    let h0_omega = 3 * h0(k - 1) - r;
    let h1_omega = h0(k) - r;
    let h2 = |d: i64| h0(-d - 3);
    // dual map O(-k-3) -> O(-k-2)^3 is injective, so the H^2 map is onto
    let dual_rank = if h2(k) > 0 { h2(k) } else { 0 };
    let h2_omega = 3 * h2(k - 1) - dual_rank;
    [h0_omega, h1_omega, h2_omega]
}
