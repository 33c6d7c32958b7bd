use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::SimplicialComplex;
use crate::linalg::{smith_normal_form, FieldSpec, IntMatrix};

/// Betti numbers `b̃_{-1}, b̃_0, ..., b̃_dim` over one field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub field: FieldSpec,
    pub reduced_betti: Vec<usize>,
}

impl HomologyProfile {
    /// `b̃_i`, zero outside the stored range.
    pub fn get(&self, i: isize) -> usize {
        if i < -1 {
            return 0;
        }
        self.reduced_betti.get((i + 1) as usize).copied().unwrap_or(0)
    }

    /// Alternating sum starting at degree `-1`.
    pub fn euler_characteristic(&self) -> i64 {
        self.reduced_betti
            .iter()
            .enumerate()
            .map(|(k, b)| if k % 2 == 1 { *b as i64 } else { -(*b as i64) })
            .sum()
    }

    pub fn is_acyclic_through(&self, n: isize) -> bool {
        (-1..=n).all(|i| self.get(i) == 0)
    }
}

/// Reduced integral homology in one degree: free rank plus torsion divisors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralHomology {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl IntegralHomology {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup (1 when torsion-free).
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

impl SimplicialComplex {
    /// Simplicial boundary `∂_k : C_k → C_{k-1}` in the global vertex order.
    ///
    /// Rows index `(k-1)`-faces, columns `k`-faces, both lexicographic.
    /// With `augmented`, `∂_0` sends every vertex to the empty face with
    /// coefficient 1; otherwise `∂_0` has no rows.
    pub fn boundary_matrix(&self, k: isize, augmented: bool) -> IntMatrix {
        if k < 0 {
            return IntMatrix::zeros(0, self.num_faces(k));
        }
        let cols = self.faces_of_dim(k);
        if k == 0 && !augmented {
            return IntMatrix::zeros(0, cols.len());
        }
        let mut m = IntMatrix::zeros(self.num_faces(k - 1), cols.len());
        for (c, s) in cols.iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let r = self.face_position(&face).expect("complex is closed");
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m.add_to(r, c, &BigInt::from(sign));
            }
        }
        m
    }

    /// Ranks of the augmented boundaries `∂_0 .. ∂_{dim+1}`.
    fn boundary_ranks(&self, field: FieldSpec, augmented: bool) -> Vec<usize> {
        (0..=self.dim() + 1)
            .map(|k| self.boundary_matrix(k, augmented).rank_over(field))
            .collect()
    }

    /// Reduced Betti numbers in degrees `-1 ..= dim`.
    pub fn reduced_betti(&self, field: FieldSpec) -> HomologyProfile {
        let ranks = self.boundary_ranks(field, true);
        let rank = |k: isize| if k < 0 { 0 } else { ranks.get(k as usize).copied().unwrap_or(0) };
        let reduced_betti = (-1..=self.dim())
            .map(|d| self.num_faces(d) - rank(d) - rank(d + 1))
            .collect();
        HomologyProfile { field, reduced_betti }
    }

    /// Unreduced Betti numbers `b_0 ..= b_dim`.
    pub fn unreduced_betti(&self, field: FieldSpec) -> Vec<usize> {
        let ranks = self.boundary_ranks(field, false);
        (0..=self.dim())
            .map(|d| self.num_faces(d) - ranks[d as usize] - ranks[d as usize + 1])
            .collect()
    }

    /// Reduced integral homology in degree `k` via Smith normal form.
    pub fn integral_homology(&self, k: isize) -> IntegralHomology {
        if k < -1 || k > self.dim() {
            return IntegralHomology { betti: 0, torsion: Vec::new() };
        }
        let out = self.boundary_matrix(k, true);
        let inc = self.boundary_matrix(k + 1, true);
        let rank_out = if k < 0 { 0 } else { out.rank_over(FieldSpec::Rationals) };
        let snf = smith_normal_form(&inc);
        IntegralHomology {
            betti: self.num_faces(k) - rank_out - snf.rank,
            torsion: snf.torsion(),
        }
    }

    /// Whether `b̃_i(K; field) = 0` for all `-1 <= i <= n`; vacuous for `n < -1`.
    pub fn is_n_acyclic(&self, n: isize, field: FieldSpec) -> bool {
        if n < -1 {
            return true;
        }
        self.reduced_betti(field).is_acyclic_through(n)
    }

    /// Integral version of [`is_n_acyclic`](Self::is_n_acyclic): free part and torsion vanish.
    pub fn is_n_acyclic_over_z(&self, n: isize) -> bool {
        (-1..=n).all(|i| self.integral_homology(i).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::super::standard;
    use super::*;
    use crate::linalg::ExactMatrix;

    #[test]
    fn edge_boundary_signs() {
        let e = standard::full_simplex(2);
        let d1 = e.boundary_matrix(1, true);
        assert_eq!(d1.get(0, 0), BigInt::from(-1));
        assert_eq!(d1.get(1, 0), BigInt::from(1));
        let pts = standard::points(3);
        let d0 = pts.boundary_matrix(0, true);
        assert_eq!((d0.rows(), d0.cols()), (1, 3));
        assert!((0..3).all(|c| d0.get(0, c) == BigInt::from(1)));
        assert_eq!(pts.boundary_matrix(0, false).rows(), 0);
    }

    #[test]
    fn rp2_boundary_ranks() {
        let rp2 = standard::rp2_six_vertex();
        let d2 = rp2.boundary_matrix(2, true);
        assert_eq!(d2.rank_over(FieldSpec::F2), 9);
        assert_eq!(d2.rank_over(FieldSpec::Q), 10);
    }

    #[test]
    fn empty_complex_profile() {
        let p = SimplicialComplex::empty().reduced_betti(FieldSpec::Q);
        assert_eq!(p.reduced_betti, vec![1]);
        assert!(!SimplicialComplex::empty().is_n_acyclic(-1, FieldSpec::F2));
        assert!(SimplicialComplex::empty().is_n_acyclic(-2, FieldSpec::F2));
    }

    #[test]
    fn four_cycle_profile() {
        for f in [FieldSpec::Q, FieldSpec::F2, FieldSpec::F3] {
            let p = standard::cycle(4).reduced_betti(f);
            assert_eq!(p.reduced_betti, vec![0, 0, 1]);
            assert!(!standard::cycle(4).is_n_acyclic(1, f));
            assert!(standard::cycle(4).is_n_acyclic(0, f));
        }
    }

    #[test]
    fn flag_rp2_profiles() {
        let rp2 = standard::flag_rp2();
        assert_eq!(rp2.reduced_betti(FieldSpec::F2).reduced_betti, vec![0, 0, 1, 1]);
        assert_eq!(rp2.reduced_betti(FieldSpec::Q).reduced_betti, vec![0, 0, 0, 0]);
        let h1 = rp2.integral_homology(1);
        assert_eq!(h1.betti, 0);
        assert_eq!(h1.torsion, vec![BigInt::from(2)]);
        assert!(rp2.integral_homology(2).is_zero());
    }

    #[test]
    fn circle_and_cone_integral() {
        let c3 = standard::simplex_boundary(3);
        let h = c3.integral_homology(1);
        assert_eq!((h.betti, h.torsion.len()), (1, 0));
        let cone = standard::cycle(5).cone("x").unwrap();
        assert!((-1..=2).all(|k| cone.integral_homology(k).is_zero()));
    }

    #[test]
    fn point_is_acyclic_everywhere() {
        let pt = standard::points(1);
        assert!((-1..6).all(|n| pt.is_n_acyclic(n, FieldSpec::Q)));
    }

    #[test]
    fn octahedron_is_a_sphere() {
        let oct = standard::octahedron();
        let d1 = ExactMatrix::from_int_matrix(&oct.boundary_matrix(1, true), FieldSpec::Q);
        let d2 = ExactMatrix::from_int_matrix(&oct.boundary_matrix(2, true), FieldSpec::Q);
        let d3 = ExactMatrix::from_int_matrix(&oct.boundary_matrix(3, true), FieldSpec::Q);
        assert_eq!(crate::linalg::betti_from_boundaries(&d2, &d3).unwrap(), 1);
        assert_eq!(crate::linalg::betti_from_boundaries(&d1, &d2).unwrap(), 0);
    }
}
