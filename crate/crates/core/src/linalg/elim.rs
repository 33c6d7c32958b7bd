//! Sparse Gaussian elimination shared by every exact field.
//!
//! Rows are sorted sparse vectors. Pivots follow a Markowitz rule restricted
//! to the currently shortest rows: among their entries the one minimising
//! `(row_len - 1) * (col_len - 1)` wins, ties going to the lowest `(row, col)`.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;

use super::field::{inv_mod, mul_mod};

pub(crate) trait Arith {
    type E: Clone;

    fn zero(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    /// `a - f * b`
    fn sub_mul(&self, a: &Self::E, f: &Self::E, b: &Self::E) -> Self::E;
    fn neg_mul(&self, f: &Self::E, b: &Self::E) -> Self::E;
    fn div(&self, a: &Self::E, b: &Self::E) -> Self::E;
}

pub(crate) struct ModP(pub u64);

impl Arith for ModP {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn sub_mul(&self, a: &u64, f: &u64, b: &u64) -> u64 {
        let p = self.0;
        let fb = mul_mod(*f, *b, p);
        if *a >= fb {
            a - fb
        } else {
            a + (p - fb)
        }
    }

    fn neg_mul(&self, f: &u64, b: &u64) -> u64 {
        let fb = mul_mod(*f, *b, self.0);
        (self.0 - fb) % self.0
    }

    fn div(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, inv_mod(*b, self.0), self.0)
    }
}

pub(crate) struct Rat;

impl Arith for Rat {
    type E = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn sub_mul(&self, a: &BigRational, f: &BigRational, b: &BigRational) -> BigRational {
        a - f * b
    }

    fn neg_mul(&self, f: &BigRational, b: &BigRational) -> BigRational {
        -(f * b)
    }

    fn div(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a / b
    }
}

pub(crate) type SparseRow<E> = Vec<(usize, E)>;

pub(crate) struct Pivot<E> {
    pub col: usize,
    pub row: SparseRow<E>,
}

pub(crate) struct Outcome<E> {
    pub pivots: Vec<Pivot<E>>,
    /// Rows that still had entries left only in columns at or past the barrier.
    pub leftover: Vec<SparseRow<E>>,
}

/// Eliminates `rows` (each sorted by column) over columns `< barrier`.
///
/// Columns at or past `barrier` are carried along but never pivoted on,
/// which is how augmented right-hand sides are handled.
pub(crate) fn eliminate<A: Arith>(
    arith: &A,
    mut rows: Vec<SparseRow<A::E>>,
    ncols: usize,
    barrier: usize,
) -> Outcome<A::E> {
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    let mut active: BTreeSet<usize> = BTreeSet::new();
    for (i, row) in rows.iter_mut().enumerate() {
        row.retain(|(_, v)| !arith.is_zero(v));
        if row.iter().any(|(c, _)| *c < barrier) {
            active.insert(i);
        }
        for (c, _) in row.iter() {
            col_rows[*c].insert(i);
        }
    }

    let mut pivots = Vec::new();
    loop {
        // shortest rows holding an eligible entry
        let mut best_len = usize::MAX;
        let mut short: Vec<usize> = Vec::new();
        for &i in &active {
            let len = rows[i].len();
            if len < best_len {
                best_len = len;
                short.clear();
                short.push(i);
            } else if len == best_len {
                short.push(i);
            }
        }
        if short.is_empty() {
            break;
        }
        let mut choice: Option<(usize, usize, usize)> = None; // (cost, row, col)
        for &i in &short {
            for (c, _) in rows[i].iter().filter(|(c, _)| *c < barrier) {
                let cost = (best_len - 1) * (col_rows[*c].len() - 1);
                let cand = (cost, i, *c);
                if choice.is_none_or(|cur| cand < cur) {
                    choice = Some(cand);
                }
            }
        }
        let (_, pr, pc) = choice.expect("active rows carry eligible entries");

        let pivot_row = std::mem::take(&mut rows[pr]);
        let pivot_val = pivot_row
            .iter()
            .find(|(c, _)| *c == pc)
            .map(|(_, v)| v.clone())
            .expect("pivot entry present");
        active.remove(&pr);
        for (c, _) in &pivot_row {
            col_rows[*c].remove(&pr);
        }

        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for t in targets {
            let old = std::mem::take(&mut rows[t]);
            let tv = old
                .iter()
                .find(|(c, _)| *c == pc)
                .map(|(_, v)| v.clone())
                .expect("column index consistent");
            let factor = arith.div(&tv, &pivot_val);
            let merged = axpy(arith, &old, &factor, &pivot_row);
            // refresh column membership
            let (mut a, mut b) = (0, 0);
            while a < old.len() || b < merged.len() {
                let ca = old.get(a).map(|e| e.0);
                let cb = merged.get(b).map(|e| e.0);
                match (ca, cb) {
                    (Some(x), Some(y)) if x == y => {
                        a += 1;
                        b += 1;
                    }
                    (Some(x), Some(y)) if x < y => {
                        col_rows[x].remove(&t);
                        a += 1;
                    }
                    (Some(x), None) => {
                        col_rows[x].remove(&t);
                        a += 1;
                    }
                    (_, Some(y)) => {
                        col_rows[y].insert(t);
                        b += 1;
                    }
                    (None, None) => unreachable!(),
                }
            }
            if !merged.iter().any(|(c, _)| *c < barrier) {
                active.remove(&t);
            }
            rows[t] = merged;
        }
        pivots.push(Pivot { col: pc, row: pivot_row });
    }

    let leftover = rows.into_iter().filter(|r| !r.is_empty()).collect();
    Outcome { pivots, leftover }
}

/// `x - f * y` on sorted sparse rows, dropping zeros.
fn axpy<A: Arith>(arith: &A, x: &[(usize, A::E)], f: &A::E, y: &[(usize, A::E)]) -> SparseRow<A::E> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        match (x.get(i), y.get(j)) {
            (Some((cx, vx)), Some((cy, vy))) if cx == cy => {
                let v = arith.sub_mul(vx, f, vy);
                if !arith.is_zero(&v) {
                    out.push((*cx, v));
                }
                i += 1;
                j += 1;
            }
            (Some((cx, vx)), Some((cy, _))) if cx < cy => {
                out.push((*cx, vx.clone()));
                i += 1;
            }
            (Some((cx, vx)), None) => {
                out.push((*cx, vx.clone()));
                i += 1;
            }
            (_, Some((cy, vy))) => {
                let v = arith.neg_mul(f, vy);
                if !arith.is_zero(&v) {
                    out.push((*cy, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

pub(crate) fn rank<A: Arith>(arith: &A, rows: Vec<SparseRow<A::E>>, ncols: usize) -> usize {
    eliminate(arith, rows, ncols, ncols).pivots.len()
}

/// Solves `M x = b` where `rows` are the rows of `M` and `rhs[i]` the entry of `b`.
pub(crate) fn solve<A: Arith>(
    arith: &A,
    mut rows: Vec<SparseRow<A::E>>,
    ncols: usize,
    rhs: Vec<A::E>,
) -> Option<Vec<A::E>> {
    for (row, b) in rows.iter_mut().zip(rhs) {
        if !arith.is_zero(&b) {
            row.push((ncols, b));
        }
    }
    let out = eliminate(arith, rows, ncols + 1, ncols);
    if !out.leftover.is_empty() {
        // only the augmented column survives in these rows
        return None;
    }
    let mut x = vec![arith.zero(); ncols];
    for piv in out.pivots.iter().rev() {
        let mut total = arith.zero();
        let mut pv = None;
        for (c, v) in &piv.row {
            if *c == ncols {
                total = v.clone();
            }
        }
        for (c, v) in &piv.row {
            if *c == piv.col {
                pv = Some(v.clone());
            } else if *c != ncols {
                total = arith.sub_mul(&total, v, &x[*c]);
            }
        }
        x[piv.col] = arith.div(&total, &pv.expect("pivot entry present"));
    }
    Some(x)
}
