//! Right-angled Artin groups through their Salvetti complexes.
//!
//! The `k`-cells of the Salvetti complex `T_L` are the `(k-1)`-simplices of
//! `L` (the empty simplex is the single 0-cell), listed lexicographically.
//! On the universal cover the boundary of the cell `e_σ`,
//! `σ = [v_1 < ... < v_k]`, is
//!
//! ```text
//! ∂ e_σ = Σ_i (-1)^(i-1) (v_i - 1) e_{σ \ v_i}
//! ```
//!
//! with coefficients in the group ring. Finite covers are obtained by
//! letting each generator act on `{0, .., N-1}` by a permutation and
//! replacing every group ring entry by the corresponding `N x N` block.

mod closed_form;
mod cover;
mod group_ring;
mod quotient;

use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex};
use crate::linalg::FieldSpec;

pub use closed_form::{dfg_betti_raag, graph_product_betti, weighted_nerve_betti};
pub use cover::{
    cover_betti, cover_betti_cached, gradient_sequence, specialize, CoverHomologyReport,
    CoverReportJson, RankStore,
};
pub use group_ring::{free_reduce, GroupRingElement, GroupRingMatrix, Letter, Word};
pub use quotient::{abelian_quotient, FiniteQuotient, QuotientJson};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RaagError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("quotient does not define an action of generator {0:?}")]
    MissingGenerator(String),
    #[error("action of {generator:?} is not a permutation of 0..{order}")]
    NotAPermutation { generator: String, order: usize },
    #[error("actions of adjacent generators {0:?} and {1:?} do not commute")]
    RelatorFails(String, String),
    #[error("modulus for {0:?} must be at least 1")]
    BadModulus(String),
    #[error("quotient order must be positive")]
    EmptyQuotient,
    #[error("quotient orders must be nondecreasing along a chain")]
    ChainNotMonotone,
    #[error("weighted vertices {0:?} and {1:?} are adjacent")]
    AdjacentWeights(String, String),
    #[error("weight of {0:?} must be positive")]
    BadWeight(String),
}

/// `A_L` for a flag complex `L`; generators are the vertices of `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raag {
    complex: SimplicialComplex,
}

impl Raag {
    pub fn new(complex: SimplicialComplex) -> Result<Self, RaagError> {
        complex.check_flag()?;
        Ok(Raag { complex })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn num_generators(&self) -> usize {
        self.complex.num_vertices()
    }

    pub fn generator_label(&self, g: usize) -> &str {
        self.complex.label(g)
    }

    /// Generators commute iff they are equal or adjacent in `L`.
    pub fn commute(&self, a: usize, b: usize) -> bool {
        a == b || self.complex.adjacent(a, b)
    }

    /// Number of Salvetti cells in dimension `k`.
    pub fn cell_count(&self, k: usize) -> usize {
        self.complex.num_faces(k as isize - 1)
    }

    /// Top dimension of the Salvetti complex, `dim L + 1`.
    pub fn salvetti_dim(&self) -> usize {
        (self.complex.dim() + 1) as usize
    }

    /// Euler characteristic of the Salvetti complex.
    pub fn salvetti_euler_characteristic(&self) -> i64 {
        (0..=self.salvetti_dim())
            .map(|k| if k % 2 == 0 { 1 } else { -1 } * self.cell_count(k) as i64)
            .sum()
    }

    /// Canonical representative of a word in `A_L`.
    ///
    /// First cancels every pair `g ... g^-1` whose interior commutes with
    /// `g`, then emits the lexicographically least letter that can be
    /// shuffled to the front, repeatedly. Reduced words for the same element
    /// differ only by commutations, so the result is unique.
    pub fn normal_form(&self, word: &[Letter]) -> Word {
        let mut w: Word = word.to_vec();
        'cancel: loop {
            for i in 0..w.len() {
                for j in i + 1..w.len() {
                    if !self.commute(w[j].generator, w[i].generator) {
                        break;
                    }
                    if w[j] == w[i].inv() {
                        w.remove(j);
                        w.remove(i);
                        continue 'cancel;
                    }
                }
            }
            break;
        }
        let mut out = Vec::with_capacity(w.len());
        while !w.is_empty() {
            let mut best: Option<(Letter, usize)> = None;
            for p in 0..w.len() {
                if w[..p].iter().all(|x| self.commute(x.generator, w[p].generator))
                    && best.is_none_or(|(l, _)| w[p] < l)
                {
                    best = Some((w[p], p));
                }
            }
            let (l, p) = best.expect("first letter is always movable");
            w.remove(p);
            out.push(l);
        }
        out
    }

    /// Boundary `∂_k` of the universal cover of the Salvetti complex.
    ///
    /// Rows index `(k-1)`-cells, columns `k`-cells, for `0 <= k <= dim L + 1`
    /// (higher `k` give empty matrices).
    pub fn salvetti_boundary(&self, k: usize, field: FieldSpec) -> GroupRingMatrix {
        let cols = self.complex.faces_of_dim(k as isize - 1);
        if k == 0 {
            return GroupRingMatrix::zeros(0, cols.len(), field);
        }
        let mut m = GroupRingMatrix::zeros(self.cell_count(k - 1), cols.len(), field);
        for (c, sigma) in cols.iter().enumerate() {
            for (i, &v) in sigma.iter().enumerate() {
                let mut face = sigma.clone();
                face.remove(i);
                let r = self.complex.face_position(&face).expect("complex is closed");
                let mut e = GroupRingElement::generator_minus_one(field, v);
                if i % 2 == 1 {
                    e = e.neg();
                }
                m.add_to(r, c, &e);
            }
        }
        m
    }
}

pub fn salvetti_boundary(raag: &Raag, k: usize, field: FieldSpec) -> GroupRingMatrix {
    raag.salvetti_boundary(k, field)
}
