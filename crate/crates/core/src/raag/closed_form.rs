//! Closed forms for agrarian Betti numbers over the Hughes-free division ring.
//!
//! For RAAGs and for graph products of `D`-acyclic groups the `p`-th Betti
//! number equals `b̃_{p-1}` of the defining flag complex. Confident covers
//! of a nerve give the weighted sum `Σ_α n_α b̃_{p-1}(lk α)`.

use std::collections::BTreeMap;

use crate::complex::SimplicialComplex;
use crate::linalg::FieldSpec;

use super::{Raag, RaagError};

/// `b_k` of `A_L` over the Hughes-free division ring of `F[A_L]`, i.e. `b̃_{k-1}(L; F)`.
pub fn dfg_betti_raag(raag: &Raag, field: FieldSpec, k: usize) -> usize {
    raag.complex().reduced_betti(field).get(k as isize - 1)
}

/// `b_k` of a graph product over a flag complex `K` whose vertex groups are
/// all acyclic over the division ring. That hypothesis is the caller's;
/// only flagness is checked.
pub fn graph_product_betti(k_complex: &SimplicialComplex, field: FieldSpec, k: usize) -> Result<usize, RaagError> {
    k_complex.check_flag()?;
    Ok(k_complex.reduced_betti(field).get(k as isize - 1))
}

/// `Σ_{α ∈ S} n_α · b̃_{p-1}(lk α; F)` over a set `S` of pairwise
/// non-adjacent vertices with positive weights.
pub fn weighted_nerve_betti(
    complex: &SimplicialComplex,
    weights: &BTreeMap<String, u64>,
    field: FieldSpec,
    p: usize,
) -> Result<u64, RaagError> {
    let mut verts = Vec::with_capacity(weights.len());
    for (label, &w) in weights {
        let v = complex
            .index_of(label)
            .ok_or_else(|| RaagError::UnknownGenerator(label.clone()))?;
        if w == 0 {
            return Err(RaagError::BadWeight(label.clone()));
        }
        verts.push((v, w));
    }
    for (i, &(a, _)) in verts.iter().enumerate() {
        for &(b, _) in &verts[i + 1..] {
            if complex.adjacent(a, b) {
                return Err(RaagError::AdjacentWeights(
                    complex.label(a).to_string(),
                    complex.label(b).to_string(),
                ));
            }
        }
    }
    let mut total = 0u64;
    for (v, w) in verts {
        let lk = complex.link(&[v])?;
        total += w * lk.reduced_betti(field).get(p as isize - 1) as u64;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::standard;

    #[test]
    fn raag_closed_forms() {
        let rp2 = Raag::new(standard::flag_rp2()).unwrap();
        assert_eq!(dfg_betti_raag(&rp2, FieldSpec::F2, 3), 1);
        assert_eq!(dfg_betti_raag(&rp2, FieldSpec::Q, 3), 0);
        let pts = Raag::new(standard::points(2)).unwrap();
        for f in [FieldSpec::Q, FieldSpec::F2] {
            assert_eq!(dfg_betti_raag(&pts, f, 1), 1);
        }
        let c4 = Raag::new(standard::cycle(4)).unwrap();
        assert_eq!(dfg_betti_raag(&c4, FieldSpec::F3, 2), 1);
    }

    #[test]
    fn graph_products() {
        assert_eq!(graph_product_betti(&standard::cycle(4), FieldSpec::Q, 2).unwrap(), 1);
        for k in 1..5 {
            assert_eq!(graph_product_betti(&standard::full_simplex(4), FieldSpec::Q, k).unwrap(), 0);
        }
        let two = standard::full_simplex(3)
            .disjoint_union(&SimplicialComplex::from_faces(&["a", "b", "c"], &[vec!["a", "b", "c"]]).unwrap())
            .unwrap();
        assert_eq!(graph_product_betti(&two, FieldSpec::Q, 1).unwrap(), 1);
        assert!(graph_product_betti(&standard::simplex_boundary(3), FieldSpec::Q, 1).is_err());
    }

    #[test]
    fn weighted_nerve() {
        let cone = standard::cycle(4).cone("apex").unwrap();
        let mut w = BTreeMap::new();
        assert_eq!(weighted_nerve_betti(&cone, &w, FieldSpec::Q, 2).unwrap(), 0);
        w.insert("apex".to_string(), 1);
        assert_eq!(weighted_nerve_betti(&cone, &w, FieldSpec::Q, 2).unwrap(), 1);
        w.insert("apex".to_string(), 2);
        assert_eq!(weighted_nerve_betti(&cone, &w, FieldSpec::Q, 2).unwrap(), 2);
        w.insert("0".to_string(), 1);
        assert!(matches!(
            weighted_nerve_betti(&cone, &w, FieldSpec::Q, 2),
            Err(RaagError::AdjacentWeights(_, _))
        ));
    }
}
