use std::collections::BTreeMap;

use super::{Simplex, SimplicialComplex};
use crate::linalg::{FieldSpec, Scalar};

/// A simplex written with strictly increasing vertex positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedSimplex(Simplex);

impl OrderedSimplex {
    /// `None` unless `vertices` is strictly increasing.
    pub fn new(vertices: Vec<usize>) -> Option<Self> {
        vertices.windows(2).all(|w| w[0] < w[1]).then_some(OrderedSimplex(vertices))
    }

    pub fn empty() -> Self {
        OrderedSimplex(Vec::new())
    }

    /// Sorts an arbitrary vertex sequence, returning the sign of the sorting
    /// permutation; `None` on a repeated vertex (a degenerate simplex).
    pub fn orient(vertices: &[usize]) -> Option<(i64, OrderedSimplex)> {
        let mut v = vertices.to_vec();
        let mut sign = 1i64;
        // insertion sort counting transpositions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((sign, OrderedSimplex(v)))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn into_vec(self) -> Simplex {
        self.0
    }
}

/// A simplicial chain with coefficients in a field; zero coefficients are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainVector {
    dim: isize,
    field: FieldSpec,
    terms: BTreeMap<OrderedSimplex, Scalar>,
}

impl ChainVector {
    pub fn zero(field: FieldSpec, dim: isize) -> Self {
        ChainVector { dim, field, terms: BTreeMap::new() }
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OrderedSimplex, &Scalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &OrderedSimplex> {
        self.terms.keys()
    }

    pub fn coefficient(&self, s: &OrderedSimplex) -> Scalar {
        self.terms.get(s).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Adds `coeff * s`.
    pub fn add_term(&mut self, s: OrderedSimplex, coeff: &Scalar) {
        assert_eq!(s.dim(), self.dim, "simplex of the wrong degree");
        if coeff.is_zero() {
            return;
        }
        let field = self.field;
        match self.terms.get_mut(&s) {
            Some(cur) => {
                let v = field.add(cur, coeff);
                if v.is_zero() {
                    self.terms.remove(&s);
                } else {
                    *cur = v;
                }
            }
            None => {
                self.terms.insert(s, coeff.clone());
            }
        }
    }

    /// Adds `coeff * [v_0, ..., v_d]` for a vertex sequence in any order,
    /// converting to the increasing orientation with its sign. Degenerate
    /// sequences contribute nothing.
    pub fn add_ordered(&mut self, vertices: &[usize], coeff: &Scalar) {
        if let Some((sign, s)) = OrderedSimplex::orient(vertices) {
            let c = if sign < 0 { self.field.neg(coeff) } else { coeff.clone() };
            self.add_term(s, &c);
        }
    }

    pub fn add_chain(&mut self, other: &ChainVector, scale: &Scalar) {
        assert_eq!(self.dim, other.dim, "chains of different degrees");
        for (s, c) in &other.terms {
            let v = self.field.mul(scale, c);
            self.add_term(s.clone(), &v);
        }
    }

    pub fn scaled(&self, scale: &Scalar) -> ChainVector {
        let mut out = ChainVector::zero(self.field, self.dim);
        out.add_chain(self, scale);
        out
    }

    pub fn sub(&self, other: &ChainVector) -> ChainVector {
        let mut out = self.clone();
        out.add_chain(other, &self.field.from_i64(-1));
        out
    }

    /// Augmented simplicial boundary: a vertex maps to the empty face.
    pub fn boundary(&self) -> ChainVector {
        let mut out = ChainVector::zero(self.field, self.dim - 1);
        if self.dim < 0 {
            return out;
        }
        for (s, c) in &self.terms {
            for i in 0..s.0.len() {
                let mut face = s.0.clone();
                face.remove(i);
                let coeff = if i % 2 == 0 { c.clone() } else { self.field.neg(c) };
                out.add_term(OrderedSimplex(face), &coeff);
            }
        }
        out
    }

    pub fn is_cycle(&self) -> bool {
        self.boundary().is_zero()
    }

    pub fn is_supported_in(&self, k: &SimplicialComplex) -> bool {
        self.terms.keys().all(|s| k.contains(&s.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_sign() {
        assert_eq!(OrderedSimplex::orient(&[2, 0, 1]).unwrap().0, 1);
        assert_eq!(OrderedSimplex::orient(&[1, 0]).unwrap().0, -1);
        assert!(OrderedSimplex::orient(&[1, 1]).is_none());
        assert!(OrderedSimplex::new(vec![0, 0]).is_none());
    }

    #[test]
    fn boundary_squares_to_zero() {
        let f = FieldSpec::Q;
        let mut c = ChainVector::zero(f, 2);
        c.add_ordered(&[0, 1, 2], &f.one());
        c.add_ordered(&[3, 1, 2], &f.from_i64(5));
        assert!(c.boundary().boundary().is_zero());
        assert!(!c.is_cycle());
    }

    #[test]
    fn reduced_zero_cycles() {
        let f = FieldSpec::F3;
        let mut c = ChainVector::zero(f, 0);
        c.add_ordered(&[4], &f.one());
        c.add_ordered(&[7], &f.from_i64(-1));
        assert!(c.is_cycle());
        c.add_ordered(&[7], &f.one());
        assert!(!c.is_cycle());
    }
}
