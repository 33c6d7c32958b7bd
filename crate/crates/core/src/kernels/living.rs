use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{ChainVector, OrderedSimplex, SimplicialComplex};
use crate::linalg::{ExactMatrix, Scalar};

use super::{fpn_violation, Character, KernelError};

/// Result of pushing a link cycle `z` off the dead vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclePush {
    /// `z'`, supported in `lk_{L^a}(v)`.
    pub pushed: ChainVector,
    /// `w` with `z - z' = ∂w`, supported in `lk_L(v)`.
    pub witness: ChainVector,
}

fn split(s: &[usize], phi: &Character) -> (Vec<usize>, Vec<usize>) {
    s.iter().partition(|&&x| !phi.is_living(x))
}

/// Replaces a reduced `(n-1)`-cycle in `lk_L(v)` of a dead vertex `v` by a
/// homologous cycle in `lk_{L^a}(v)`.
///
/// Stage `m` removes the simplices with exactly `m` living vertices. They
/// are grouped by their dead part `λ`; the living parts form a cycle `c` in
/// `lk_{L^a}(v ∪ λ)`, which is filled by `ψ`, and the boundary of the join
/// `λ * ψ` is subtracted. At stage 0 the filling is a single living cone
/// point, the one with the least label. The result is checked exactly
/// before returning.
pub fn push_cycle_to_living(
    complex: &SimplicialComplex,
    phi: &Character,
    v: usize,
    z: &ChainVector,
    n: usize,
) -> Result<CyclePush, KernelError> {
    phi.assert_on(complex);
    let f = z.field();
    if phi.is_living(v) {
        return Err(KernelError::LivingVertex(complex.label(v).to_string()));
    }
    let top = n as isize - 1;
    if z.dim() != top {
        return Err(KernelError::WrongDegree { expected: top, found: z.dim() });
    }
    let in_link = |s: &[usize]| {
        let mut t = s.to_vec();
        t.push(v);
        t.sort_unstable();
        !s.contains(&v) && complex.contains(&t)
    };
    if let Some(s) = z.support().find(|s| !in_link(s.vertices())) {
        return Err(KernelError::OutsideLink(complex.simplex_labels(s.vertices())));
    }
    if !z.is_cycle() {
        return Err(KernelError::NotACycle);
    }
    if let Some(violation) = fpn_violation(complex, phi, n, f) {
        return Err(KernelError::NotFpn { n, violation });
    }

    let mut cur = z.clone();
    let mut witness = ChainVector::zero(f, n as isize);
    for m in 0..n {
        let groups: BTreeSet<Vec<usize>> = cur
            .support()
            .map(|s| split(s.vertices(), phi))
            .filter(|(_, alive)| alive.len() == m)
            .map(|(dead, _)| dead)
            .collect();
        for lambda in groups {
            let mut c = ChainVector::zero(f, m as isize - 1);
            let mut first = None;
            for (s, a) in cur.terms() {
                let (dead, alive) = split(s.vertices(), phi);
                if dead != lambda || alive.len() != m {
                    continue;
                }
                first.get_or_insert_with(|| s.clone());
                // s = ε [λ, τ]
                let (eps, _) = OrderedSimplex::orient(&[lambda.as_slice(), &alive].concat()).expect("distinct");
                c.add_ordered(&alive, &if eps < 0 { f.neg(a) } else { a.clone() });
            }
            let mut base = lambda.clone();
            base.push(v);
            base.sort_unstable();
            let psi = if m == 0 {
                let u = complex
                    .link_vertices(&base)
                    .into_iter()
                    .filter(|&u| phi.is_living(u))
                    .min_by(|&a, &b| complex.label(a).cmp(complex.label(b)))
                    .ok_or_else(|| {
                        KernelError::Inconsistency(format!(
                            "living link of {:?} is empty",
                            complex.simplex_labels(&base)
                        ))
                    })?;
                let mut psi = ChainVector::zero(f, 0);
                psi.add_ordered(&[u], &c.coefficient(&OrderedSimplex::empty()));
                psi
            } else {
                fill(complex, phi, &base, &c)?
            };
            let mut join = ChainVector::zero(f, n as isize);
            for (rho, coeff) in psi.terms() {
                join.add_ordered(&[lambda.as_slice(), rho.vertices()].concat(), coeff);
            }
            let b = join.boundary();
            let first = first.expect("group is nonempty");
            let inv = f.inv(&b.coefficient(&first)).ok_or_else(|| {
                KernelError::Inconsistency(format!("filling misses {:?}", complex.simplex_labels(first.vertices())))
            })?;
            let scale = f.mul(&cur.coefficient(&first), &inv);
            cur = cur.sub(&b.scaled(&scale));
            witness.add_chain(&join, &scale);
            if cur.support().any(|s| {
                let (dead, alive) = split(s.vertices(), phi);
                dead == lambda && alive.len() == m
            }) {
                return Err(KernelError::Inconsistency(format!(
                    "simplices over {:?} survive elimination",
                    complex.simplex_labels(&lambda)
                )));
            }
        }
    }

    if let Some(s) = cur.support().find(|s| s.vertices().iter().any(|&x| !phi.is_living(x))) {
        return Err(KernelError::Inconsistency(format!(
            "dead vertex left in {:?}",
            complex.simplex_labels(s.vertices())
        )));
    }
    if let Some(s) = witness.support().find(|s| !in_link(s.vertices())) {
        return Err(KernelError::Inconsistency(format!(
            "witness leaves the link at {:?}",
            complex.simplex_labels(s.vertices())
        )));
    }
    if !cur.is_cycle() || z.sub(&cur) != witness.boundary() {
        return Err(KernelError::Inconsistency("homology witness does not check out".into()));
    }
    Ok(CyclePush { pushed: cur, witness })
}

/// Some `ψ` in `lk_{L^a}(base)` with `∂ψ = c`, where `c` has degree `m - 1 ≥ 0`.
fn fill(
    complex: &SimplicialComplex,
    phi: &Character,
    base: &[usize],
    c: &ChainVector,
) -> Result<ChainVector, KernelError> {
    let f = c.field();
    let m = (c.dim() + 1) as usize;
    let faces: Vec<Vec<usize>> = complex
        .link_faces(base)
        .into_iter()
        .filter(|s| s.iter().all(|&x| phi.is_living(x)))
        .collect();
    let rows: BTreeMap<&[usize], usize> = faces
        .iter()
        .filter(|s| s.len() == m)
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let cols: Vec<&Vec<usize>> = faces.iter().filter(|s| s.len() == m + 1).collect();
    let mut triples = Vec::new();
    for (j, rho) in cols.iter().enumerate() {
        for i in 0..rho.len() {
            let mut face = rho.to_vec();
            face.remove(i);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            triples.push((rows[face.as_slice()], j, f.from_i64(sign)));
        }
    }
    let d = ExactMatrix::from_triples(rows.len(), cols.len(), f, triples).expect("indices in range");
    let mut rhs: Vec<Scalar> = vec![f.zero(); rows.len()];
    for (s, a) in c.terms() {
        let r = rows.get(s.vertices()).ok_or_else(|| {
            KernelError::Inconsistency(format!("{:?} is not a living link face", complex.simplex_labels(s.vertices())))
        })?;
        rhs[*r] = a.clone();
    }
    let x = d
        .solve(&rhs)
        .expect("dimensions agree")
        .ok_or_else(|| {
            KernelError::Inconsistency(format!(
                "no filling in the living link of {:?}; the finiteness hypothesis fails",
                complex.simplex_labels(base)
            ))
        })?;
    let mut psi = ChainVector::zero(f, m as isize);
    for (rho, coeff) in cols.iter().zip(&x) {
        psi.add_ordered(rho, coeff);
    }
    Ok(psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::standard;
    use crate::linalg::FieldSpec;

    fn chain(f: FieldSpec, dim: isize, terms: &[(&[usize], i64)]) -> ChainVector {
        let mut c = ChainVector::zero(f, dim);
        for (s, a) in terms {
            c.add_ordered(s, &f.from_i64(*a));
        }
        c
    }

    #[test]
    fn living_cycle_is_untouched() {
        let c4 = standard::cycle(4).cone("v").unwrap();
        let v = c4.index_of("v").unwrap();
        let mut vals = vec![1; 5];
        vals[v] = 0;
        let phi = Character::from_values(&c4, vals).unwrap();
        let z = chain(FieldSpec::Q, 0, &[(&[0], 1), (&[2], -1)]);
        let out = push_cycle_to_living(&c4, &phi, v, &z, 1).unwrap();
        assert_eq!(out.pushed, z);
        assert!(out.witness.is_zero());
    }

    #[test]
    fn dead_point_moves_to_living_cone_point() {
        // triangle {v, x, y} with v, x dead
        let l = SimplicialComplex::from_faces(&["v", "x", "y"], &[vec!["v", "x", "y"]]).unwrap();
        let phi = Character::from_values(&l, vec![0, 0, 1]).unwrap();
        let z = chain(FieldSpec::Q, 0, &[(&[1], 1), (&[2], -1)]);
        let out = push_cycle_to_living(&l, &phi, 0, &z, 1).unwrap();
        assert!(out.pushed.is_zero());
        assert_eq!(z.sub(&out.pushed), out.witness.boundary());
    }

    #[test]
    fn octahedron_link_cycle() {
        // v = 0 with lk(v) the square 2-4-3-5; 2 and 3 are dead
        let l = standard::octahedron();
        let phi = Character::from_values(&l, vec![0, 1, 0, 0, 1, 1]).unwrap();
        for f in [FieldSpec::Q, FieldSpec::F2, FieldSpec::F3] {
            assert!(!super::super::is_fpn(&l, &phi, 1, f));
        }
        // make the living links connected by also reviving 3
        let phi = Character::from_values(&l, vec![0, 1, 1, 0, 1, 1]).unwrap();
        for f in [FieldSpec::Q, FieldSpec::F2] {
            assert!(super::super::is_fpn(&l, &phi, 1, f));
            let z = chain(f, 0, &[(&[3], 1), (&[2], -1)]);
            let out = push_cycle_to_living(&l, &phi, 0, &z, 1).unwrap();
            assert!(out.pushed.support().all(|s| s.vertices().iter().all(|&x| phi.is_living(x))));
            assert_eq!(z.sub(&out.pushed), out.witness.boundary());
        }
    }

    #[test]
    fn preconditions() {
        let l = standard::octahedron();
        let phi = Character::from_values(&l, vec![0, 1, 0, 0, 1, 1]).unwrap();
        let z = chain(FieldSpec::Q, 0, &[(&[3], 1), (&[2], -1)]);
        assert!(matches!(push_cycle_to_living(&l, &phi, 0, &z, 1), Err(KernelError::NotFpn { .. })));
        assert!(matches!(push_cycle_to_living(&l, &phi, 1, &z, 1), Err(KernelError::LivingVertex(_))));
        let not_cycle = chain(FieldSpec::Q, 0, &[(&[3], 1)]);
        assert!(matches!(push_cycle_to_living(&l, &phi, 0, &not_cycle, 1), Err(KernelError::NotACycle)));
        let outside = chain(FieldSpec::Q, 0, &[(&[1], 1), (&[2], -1)]);
        assert!(matches!(push_cycle_to_living(&l, &phi, 0, &outside, 1), Err(KernelError::OutsideLink(_))));
        assert!(matches!(push_cycle_to_living(&l, &phi, 0, &z, 2), Err(KernelError::WrongDegree { .. })));
    }

    #[test]
    fn one_cycle_through_dead_vertices() {
        // suspension of a square with a dead pole, and a dead equator vertex
        let l = standard::octahedron().cone("c").unwrap();
        let phi = Character::from_values(&l, vec![0, 1, 0, 1, 1, 1, 1]).unwrap();
        let f = FieldSpec::Q;
        assert!(super::super::is_fpn(&l, &phi, 2, f));
        // lk(0) is the cone on the square 2-4-3-5 with apex c = 6
        let z = chain(f, 1, &[(&[2, 4], 1), (&[4, 3], 1), (&[3, 5], 1), (&[5, 2], 1)]);
        let out = push_cycle_to_living(&l, &phi, 0, &z, 2).unwrap();
        assert!(out.pushed.support().all(|s| s.vertices().iter().all(|&x| phi.is_living(x))));
        assert!(out.pushed.is_cycle());
        assert_eq!(z.sub(&out.pushed), out.witness.boundary());
    }
}
