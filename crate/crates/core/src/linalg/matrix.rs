use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::elim::{self, ModP, Rat, SparseRow};
use super::field::{parse_rational, FieldSpec, Scalar};
use super::LinalgError;

/// Sparse matrix over [`FieldSpec`]; zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize, field: FieldSpec) -> Self {
        ExactMatrix { rows, cols, field, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.entries.insert((i, i), field.one());
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triples, summing repeated positions.
    pub fn from_triples(
        rows: usize,
        cols: usize,
        field: FieldSpec,
        triples: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows, cols, field);
        for (r, c, v) in triples {
            if r >= rows || c >= cols {
                return Err(LinalgError::OutOfBounds { row: r, col: c, rows, cols });
            }
            if !field.contains(&v) {
                return Err(LinalgError::WrongField(v.to_text(), field));
            }
            m.add_to(r, c, &v);
        }
        Ok(m)
    }

    pub fn from_i64_rows(field: FieldSpec, data: &[Vec<i64>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows, cols, field);
        for (r, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for (c, v) in row.iter().enumerate() {
                m.add_to(r, c, &field.from_i64(*v));
            }
        }
        m
    }

    pub fn from_int_matrix(m: &IntMatrix, field: FieldSpec) -> Self {
        let mut out = Self::zeros(m.rows, m.cols, field);
        for (&(r, c), v) in &m.entries {
            out.add_to(r, c, &field.from_bigint(v));
        }
        out
    }

    pub(crate) fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let field = self.field;
        match self.entries.get_mut(&(r, c)) {
            Some(cur) => {
                let s = field.add(cur, v);
                if s.is_zero() {
                    self.entries.remove(&(r, c));
                } else {
                    *cur = s;
                }
            }
            None => {
                self.entries.insert((r, c), v.clone());
            }
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> Self {
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.cols != other.rows || self.field != other.field {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for (&(r, c), v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = Self::zeros(self.rows, other.cols, self.field);
        for (&(r, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for (c, b) in row {
                    let prod = self.field.mul(a, b);
                    out.add_to(r, *c, &prod);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        let mut out = vec![self.field.zero(); self.rows];
        for (&(r, c), v) in &self.entries {
            let prod = self.field.mul(v, &x[c]);
            out[r] = self.field.add(&out[r], &prod);
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn rows_mod(&self) -> Vec<SparseRow<u64>> {
        let mut rows: Vec<SparseRow<u64>> = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            match v {
                Scalar::Residue(x) => rows[r].push((c, *x)),
                Scalar::Rational(_) => unreachable!("field checked on insertion"),
            }
        }
        rows
    }

    fn rows_rat(&self) -> Vec<SparseRow<num_rational::BigRational>> {
        let mut rows: Vec<SparseRow<_>> = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            match v {
                Scalar::Rational(x) => rows[r].push((c, x.clone())),
                Scalar::Residue(_) => unreachable!("field checked on insertion"),
            }
        }
        rows
    }

    /// Rank over the matrix's field.
    pub fn rank(&self) -> usize {
        match self.field {
            FieldSpec::Prime(p) => elim::rank(&ModP(p), self.rows_mod(), self.cols),
            FieldSpec::Rationals => elim::rank(&Rat, self.rows_rat(), self.cols),
        }
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        if let Some(bad) = b.iter().find(|s| !self.field.contains(s)) {
            return Err(LinalgError::WrongField(bad.to_text(), self.field));
        }
        Ok(match self.field {
            FieldSpec::Prime(p) => {
                let rhs = b
                    .iter()
                    .map(|s| match s {
                        Scalar::Residue(x) => *x,
                        Scalar::Rational(_) => unreachable!(),
                    })
                    .collect();
                elim::solve(&ModP(p), self.rows_mod(), self.cols, rhs)
                    .map(|x| x.into_iter().map(Scalar::Residue).collect())
            }
            FieldSpec::Rationals => {
                let rhs = b
                    .iter()
                    .map(|s| match s {
                        Scalar::Rational(x) => x.clone(),
                        Scalar::Residue(_) => unreachable!(),
                    })
                    .collect();
                elim::solve(&Rat, self.rows_rat(), self.cols, rhs)
                    .map(|x| x.into_iter().map(Scalar::Rational).collect())
            }
        })
    }

    /// A basis of the right null space, one vector per free column of the
    /// reduced row echelon form (dense; meant for small systems).
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let mut a: Vec<Vec<Scalar>> = vec![vec![f.zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            a[r][c] = v.clone();
        }
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(p) = (row..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(row, p);
            let inv = f.inv(&a[row][col]).expect("nonzero pivot");
            a[row] = a[row].iter().map(|x| f.mul(x, &inv)).collect();
            for r in 0..self.rows {
                if r != row && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for c in 0..self.cols {
                        let t = f.mul(&factor, &a[row][c]);
                        a[r][c] = f.sub(&a[r][c], &t);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut x = vec![f.zero(); self.cols];
            x[free] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = f.neg(&a[r][free]);
            }
            basis.push(x);
        }
        basis
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            field: Some(self.field),
            entries: self.entries.iter().map(|(&(r, c), v)| (r, c, v.to_text())).collect(),
        }
    }

    pub fn from_json(json: &MatrixJson, default_field: FieldSpec) -> Result<Self, LinalgError> {
        let field = json.field.unwrap_or(default_field);
        let triples = json
            .entries
            .iter()
            .map(|(r, c, v)| Ok((*r, *c, field.from_rational(&parse_rational(v)?)?)))
            .collect::<Result<Vec<_>, LinalgError>>()?;
        Self::from_triples(json.rows, json.cols, field, triples)
    }
}

/// Debug serialization: `{rows, cols, entries: [[r, c, "num/den"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub entries: Vec<(usize, usize, String)>,
}

/// Sparse integer matrix with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn from_i64_rows(data: &[Vec<i64>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows, cols);
        for (r, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for (c, v) in row.iter().enumerate() {
                m.add_to(r, c, &BigInt::from(*v));
            }
        }
        m
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &BigInt) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        if v.is_zero() {
            return;
        }
        let e = self.entries.entry((r, c)).or_insert_with(BigInt::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn transpose(&self) -> Self {
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut by_row: BTreeMap<usize, Vec<(usize, &BigInt)>> = BTreeMap::new();
        for (&(r, c), v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (&(r, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for (c, b) in row {
                    out.add_to(r, *c, &(a * *b));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            d[r][c] = v.clone();
        }
        d
    }

    pub fn to_field(&self, field: FieldSpec) -> ExactMatrix {
        ExactMatrix::from_int_matrix(self, field)
    }

    /// Rank over a field after reducing the integer entries.
    pub fn rank_over(&self, field: FieldSpec) -> usize {
        self.to_field(field).rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_rank() {
        assert_eq!(ExactMatrix::zeros(0, 0, FieldSpec::Q).rank(), 0);
        assert_eq!(ExactMatrix::zeros(3, 0, FieldSpec::F2).rank(), 0);
    }

    #[test]
    fn identity_rank_and_solve() {
        let id = ExactMatrix::identity(3, FieldSpec::F2);
        assert_eq!(id.rank(), 3);
        let b = vec![Scalar::Residue(1), Scalar::Residue(0), Scalar::Residue(1)];
        assert_eq!(id.solve(&b).unwrap().unwrap(), b);
    }

    #[test]
    fn characteristic_drops_rank() {
        let data = vec![vec![2, 4], vec![1, 2]];
        assert_eq!(ExactMatrix::from_i64_rows(FieldSpec::Q, &data).rank(), 1);
        // mod 2 this is [[0, 0], [1, 0]]
        assert_eq!(ExactMatrix::from_i64_rows(FieldSpec::F2, &data).rank(), 1);
        let even = vec![vec![2, 4], vec![4, 2]];
        assert_eq!(ExactMatrix::from_i64_rows(FieldSpec::Q, &even).rank(), 2);
        assert_eq!(ExactMatrix::from_i64_rows(FieldSpec::F2, &even).rank(), 0);
    }

    #[test]
    fn zero_matrix_has_no_solution() {
        let z = ExactMatrix::zeros(2, 2, FieldSpec::Q);
        let b = vec![FieldSpec::Q.one(), FieldSpec::Q.zero()];
        assert_eq!(z.solve(&b).unwrap(), None);
        assert!(z.solve(&b[..1]).is_err());
    }

    #[test]
    fn solve_row_vector_over_f2() {
        let m = ExactMatrix::from_i64_rows(FieldSpec::F2, &[vec![1, 1]]);
        let x = m.solve(&[Scalar::Residue(1)]).unwrap().unwrap();
        let support: u64 = x
            .iter()
            .map(|s| match s {
                Scalar::Residue(r) => *r,
                _ => unreachable!(),
            })
            .sum();
        assert_eq!(support % 2, 1);
        assert_eq!(m.mul_vec(&x).unwrap(), vec![Scalar::Residue(1)]);
    }

    #[test]
    fn kernel_dimension_and_membership() {
        for field in [FieldSpec::Q, FieldSpec::F2, FieldSpec::F3] {
            let m = ExactMatrix::from_i64_rows(field, &[vec![1, 1, 0, 2], vec![0, 1, 1, 1], vec![1, 2, 1, 3]]);
            let basis = m.kernel_basis();
            assert_eq!(basis.len(), 4 - m.rank());
            for x in &basis {
                assert!(m.mul_vec(x).unwrap().iter().all(Scalar::is_zero));
            }
        }
        assert_eq!(ExactMatrix::zeros(2, 3, FieldSpec::Q).kernel_basis().len(), 3);
    }

    #[test]
    fn json_round_trip() {
        let m = ExactMatrix::from_triples(
            2,
            3,
            FieldSpec::Q,
            vec![(0, 1, Scalar::Rational(parse_rational("-3/4").unwrap()))],
        )
        .unwrap();
        let json = m.to_json();
        assert_eq!(json.entries, vec![(0, 1, "-3/4".to_string())]);
        let text = serde_json::to_string(&json).unwrap();
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(ExactMatrix::from_json(&back, FieldSpec::Q).unwrap(), m);
    }

    #[test]
    fn bounds_are_checked() {
        let err = ExactMatrix::from_triples(1, 1, FieldSpec::Q, vec![(1, 0, FieldSpec::Q.one())]);
        assert!(matches!(err, Err(LinalgError::OutOfBounds { .. })));
    }
}
