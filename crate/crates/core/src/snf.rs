//! Smith normal form over the integers.

use crate::scalar::ExactInt;

pub type Matrix<T> = Vec<Vec<T>>;

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal, non-negative,
/// each diagonal entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: ExactInt> Smith<T> {
    pub fn diagonal(&self) -> Vec<T> {
        let k = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..k).map(|i| self.d[i][i].clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn identity<T: ExactInt>(n: usize) -> Matrix<T> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

pub fn mat_mul<T: ExactInt>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            debug_assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| {
                    (0..inner).fold(T::zero(), |acc, k| acc + row[k].clone() * b[k][j].clone())
                })
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free elimination (Bareiss).
pub fn determinant<T: ExactInt>(m: &Matrix<T>) -> T {
    let n = m.len();
    let mut a = m.clone();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone())
                    / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        T::one()
    } else {
        sign * a[n - 1][n - 1].clone()
    }
}

struct Work<T> {
    a: Matrix<T>,
    u: Matrix<T>,
    v: Matrix<T>,
}

impl<T: ExactInt> Work<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_i -= q * row_j
    fn sub_row(&mut self, i: usize, j: usize, q: &T) {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m[i].len() {
                let x = m[j][c].clone() * q.clone();
                m[i][c] = m[i][c].clone() - x;
            }
        }
    }

    /// col_i -= q * col_j
    fn sub_col(&mut self, i: usize, j: usize, q: &T) {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                let x = row[j].clone() * q.clone();
                row[i] = row[i].clone() - x;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

pub fn smith_normal_form<T: ExactInt>(m: &Matrix<T>) -> Smith<T> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut w = Work {
        a: m.clone(),
        u: identity(rows),
        v: identity(cols),
    };
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pi, pj)) = smallest_nonzero(&w.a, t, t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !w.a[i][t].is_zero() {
                    let q = nearest_quotient(&w.a[i][t], &w.a[t][t]);
                    w.sub_row(i, t, &q);
                    dirty |= !w.a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !w.a[t][j].is_zero() {
                    let q = nearest_quotient(&w.a[t][j], &w.a[t][t]);
                    w.sub_col(j, t, &q);
                    dirty |= !w.a[t][j].is_zero();
                }
            }
            if dirty {
                let (i, j) = smallest_in_cross(&w.a, t);
                w.swap_rows(t, i);
                w.swap_cols(t, j);
                continue;
            }
            // pivot must divide the rest of the block
            let bad = (t + 1..rows).find_map(|i| {
                (t + 1..cols)
                    .find(|&j| !w.a[i][j].is_multiple_of(&w.a[t][t]))
                    .map(|_| i)
            });
            match bad {
                Some(i) => {
                    let minus_one = -T::one();
                    w.sub_row(t, i, &minus_one);
                }
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    Smith {
        u: w.u,
        d: w.a,
        v: w.v,
    }
}

/// Quotient leaving a remainder of least absolute value, which keeps the
/// transforms small.
fn nearest_quotient<T: ExactInt>(a: &T, p: &T) -> T {
    let (q, r) = a.div_mod_floor(p);
    let two = T::one() + T::one();
    if (r.clone() * two).abs() > p.abs() {
        q + T::one()
    } else {
        q
    }
}

fn smallest_nonzero<T: ExactInt>(a: &Matrix<T>, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(r0) {
        for (j, x) in row.iter().enumerate().skip(c0) {
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smallest nonzero entry in row `t` or column `t` (from the diagonal on).
fn smallest_in_cross<T: ExactInt>(a: &Matrix<T>, t: usize) -> (usize, usize) {
    let cells = (t..a.len())
        .map(|i| (i, t))
        .chain((t + 1..a[t].len()).map(|j| (t, j)));
    cells
        .filter(|&(i, j)| !a[i][j].is_zero())
        .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
        .expect("a dirty cross has a nonzero entry")
}
