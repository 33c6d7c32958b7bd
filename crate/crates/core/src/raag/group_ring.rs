use std::collections::BTreeMap;

use crate::linalg::{FieldSpec, Scalar};

use super::Raag;

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }
}

pub type Word = Vec<Letter>;

/// Cancels adjacent `g g^-1` pairs until none remain.
pub fn free_reduce(word: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Finite formal sum `Σ λ_w w` of group words with field coefficients.
///
/// Words are kept freely reduced but not commutation-normalised, so two
/// elements equal in the group ring of the RAAG may compare unequal here;
/// use [`GroupRingElement::is_zero_in`] or specialise to a quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    field: FieldSpec,
    terms: BTreeMap<Word, Scalar>,
}

impl GroupRingElement {
    pub fn zero(field: FieldSpec) -> Self {
        GroupRingElement { field, terms: BTreeMap::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::monomial(field, field.one(), Vec::new())
    }

    pub fn monomial(field: FieldSpec, coeff: Scalar, word: Word) -> Self {
        let mut e = Self::zero(field);
        e.add_term(coeff, &word);
        e
    }

    /// `g - 1`, the Fox-derivative building block of Salvetti boundaries.
    pub fn generator_minus_one(field: FieldSpec, g: usize) -> Self {
        let mut e = Self::monomial(field, field.one(), vec![Letter::new(g)]);
        e.add_term(field.from_i64(-1), &[]);
        e
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Scalar, &Word)> {
        self.terms.iter().map(|(w, c)| (c, w))
    }

    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().flatten().map(|l| l.generator)
    }

    pub fn add_term(&mut self, coeff: Scalar, word: &[Letter]) {
        if coeff.is_zero() {
            return;
        }
        let w = free_reduce(word);
        let field = self.field;
        match self.terms.get_mut(&w) {
            Some(cur) => {
                let v = field.add(cur, &coeff);
                if v.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *cur = v;
                }
            }
            None => {
                self.terms.insert(w, coeff);
            }
        }
    }

    pub fn add(&self, other: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(c.clone(), w);
        }
        out
    }

    pub fn neg(&self) -> GroupRingElement {
        let mut out = Self::zero(self.field);
        for (w, c) in &self.terms {
            out.add_term(self.field.neg(c), w);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> GroupRingElement {
        let mut out = Self::zero(self.field);
        for (w, c) in &self.terms {
            out.add_term(self.field.mul(s, c), w);
        }
        out
    }

    /// Product in the free group ring: words concatenate.
    pub fn mul(&self, other: &GroupRingElement) -> GroupRingElement {
        let mut out = Self::zero(self.field);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(self.field.mul(c1, c2), &w);
            }
        }
        out
    }

    /// Collects terms after rewriting every word into the RAAG normal form.
    pub fn normalized(&self, raag: &Raag) -> GroupRingElement {
        let mut out = Self::zero(self.field);
        for (w, c) in &self.terms {
            out.add_term(c.clone(), &raag.normal_form(w));
        }
        out
    }

    /// Whether the element vanishes in the group ring of the RAAG.
    pub fn is_zero_in(&self, raag: &Raag) -> bool {
        self.normalized(raag).is_zero()
    }
}

/// Matrix with group ring entries; absent entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingMatrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: BTreeMap<(usize, usize), GroupRingElement>,
}

impl GroupRingMatrix {
    pub fn zeros(rows: usize, cols: usize, field: FieldSpec) -> Self {
        GroupRingMatrix { rows, cols, field, entries: BTreeMap::new() }
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

    pub fn get(&self, r: usize, c: usize) -> GroupRingElement {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(|| GroupRingElement::zero(self.field))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &GroupRingElement)> {
        self.entries.iter().map(|(&(r, c), e)| (r, c, e))
    }

    pub fn add_to(&mut self, r: usize, c: usize, e: &GroupRingElement) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        let sum = self.get(r, c).add(e);
        if sum.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), sum);
        }
    }

    /// Row-by-column product, entries multiplied left to right.
    pub fn mul(&self, other: &GroupRingMatrix) -> GroupRingMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = GroupRingMatrix::zeros(self.rows, other.cols, self.field);
        for (&(r, k), a) in &self.entries {
            for (&(k2, c), b) in other.entries.range((k, 0)..(k + 1, 0)) {
                debug_assert_eq!(k, k2);
                out.add_to(r, c, &a.mul(b));
            }
        }
        out
    }

    /// Whether every entry vanishes in the group ring of the RAAG.
    pub fn is_zero_in(&self, raag: &Raag) -> bool {
        self.entries.values().all(|e| e.is_zero_in(raag))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let a = Letter::new(0);
        let b = Letter::new(1);
        assert_eq!(free_reduce(&[a, b, b.inv(), a.inv()]), Vec::<Letter>::new());
        assert_eq!(free_reduce(&[a, b, a.inv()]), vec![a, b, a.inv()]);
    }

    #[test]
    fn cancellation_drops_terms() {
        let f = FieldSpec::Q;
        let x = GroupRingElement::generator_minus_one(f, 0);
        assert!(x.add(&x.neg()).is_zero());
        assert_eq!(x.terms().count(), 2);
        let sq = x.mul(&x);
        // a^2 - 2a + 1
        assert_eq!(sq.terms().count(), 3);
    }
}
