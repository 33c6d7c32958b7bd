use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;

/// Invariant factors `d_1 | d_2 | ... | d_r` of an integer matrix, all positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithForm {
    pub rank: usize,
    pub elementary_divisors: Vec<BigInt>,
}

impl SmithForm {
    /// The divisors greater than one, i.e. the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.elementary_divisors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Smith normal form by repeated gcd reduction, pivoting on the entry of
/// least absolute value (lowest `(row, col)` on ties).
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut a = m.to_dense();
    let rows = m.rows();
    let cols = m.cols();
    let mut divisors = Vec::new();

    for t in 0..rows.min(cols) {
        if !select_pivot(&mut a, t) {
            break;
        }
        loop {
            reduce_cross(&mut a, t);
            // the pivot must divide the remaining block
            let p = a[t][t].clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_multiple_of(&p));
            match offender {
                None => break,
                Some((i, _)) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
            }
        }
        divisors.push(a[t][t].abs());
    }

    SmithForm { rank: divisors.len(), elementary_divisors: divisors }
}

/// Moves the least nonzero entry of the trailing block to `(t, t)`.
fn select_pivot(a: &mut [Vec<BigInt>], t: usize) -> bool {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            let av = v.abs();
            if best.as_ref().is_none_or(|(b, _, _)| av < *b) {
                best = Some((av, i, j));
            }
        }
    }
    let Some((_, i, j)) = best else {
        return false;
    };
    a.swap(t, i);
    for row in a.iter_mut() {
        row.swap(t, j);
    }
    true
}

/// Clears row `t` and column `t` beyond the pivot, re-pivoting on remainders.
fn reduce_cross(a: &mut [Vec<BigInt>], t: usize) {
    let rows = a.len();
    let cols = a[0].len();
    loop {
        let mut dirty = false;
        for i in t + 1..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].div_floor(&a[t][t]);
            for j in t..cols {
                let s = &q * &a[t][j];
                a[i][j] -= s;
            }
            if !a[i][t].is_zero() {
                dirty = true;
            }
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].div_floor(&a[t][t]);
            for row in a.iter_mut().skip(t) {
                let s = &q * &row[t];
                row[j] -= s;
            }
            if !a[t][j].is_zero() {
                dirty = true;
            }
        }
        if !dirty {
            return;
        }
        // a smaller remainder now sits in the cross; bring it to the pivot
        let mut best = (a[t][t].abs(), t, t);
        for i in t + 1..rows {
            if !a[i][t].is_zero() && a[i][t].abs() < best.0 {
                best = (a[i][t].abs(), i, t);
            }
        }
        for j in t + 1..cols {
            if !a[t][j].is_zero() && a[t][j].abs() < best.0 {
                best = (a[t][j].abs(), t, j);
            }
        }
        let (_, i, j) = best;
        a.swap(t, i);
        for row in a.iter_mut() {
            row.swap(t, j);
        }
    }
}
