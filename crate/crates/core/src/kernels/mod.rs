//! Artin kernels `BB_L^φ = ker(φ: A_L → Z)`.
//!
//! A vertex is living when `φ(v) ≠ 0` and dead otherwise. Finiteness of the
//! kernel is read off the living/dead structure, and its Betti numbers over
//! the Hughes-free division ring are a weighted sum of link homology.

mod living;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex};
use crate::linalg::FieldSpec;

pub use living::{push_cycle_to_living, CyclePush};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("character has no value for vertex {0:?}")]
    MissingValue(String),
    #[error("character names unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("character vanishes on every vertex")]
    ZeroCharacter,
    #[error("character is not surjective: its values have gcd {0}")]
    NotSurjective(u64),
    #[error("kernel is not of type FP_{n}: {violation}")]
    NotFpn { n: usize, violation: FpnViolation },
    #[error("vertex {0:?} is dead")]
    DeadVertex(String),
    #[error("vertex {0:?} is living")]
    LivingVertex(String),
    #[error("chain has degree {found}, expected {expected}")]
    WrongDegree { expected: isize, found: isize },
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("simplex {0:?} is not in the link")]
    OutsideLink(Vec<String>),
    #[error("inconsistent state while pushing a cycle: {0}")]
    Inconsistency(String),
}

/// A homomorphism `A_L → Z`, given by its values on the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    labels: Vec<String>,
    values: Vec<i64>,
}

impl Character {
    /// Every vertex of `complex` needs a value and at least one must be nonzero.
    pub fn new(complex: &SimplicialComplex, values: &BTreeMap<String, i64>) -> Result<Self, KernelError> {
        if let Some(extra) = values.keys().find(|l| complex.index_of(l).is_none()) {
            return Err(KernelError::UnknownVertex(extra.clone()));
        }
        let values = complex
            .labels()
            .iter()
            .map(|l| values.get(l).copied().ok_or_else(|| KernelError::MissingValue(l.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_values(complex, values)
    }

    /// Values listed in vertex order.
    pub fn from_values(complex: &SimplicialComplex, values: Vec<i64>) -> Result<Self, KernelError> {
        if values.len() != complex.num_vertices() {
            let missing = complex.labels().get(values.len()).cloned().unwrap_or_default();
            return Err(KernelError::MissingValue(missing));
        }
        if values.iter().all(|&x| x == 0) {
            return Err(KernelError::ZeroCharacter);
        }
        Ok(Character { labels: complex.labels().to_vec(), values })
    }

    /// `φ ≡ c`; `c = 1` gives the Bestvina-Brady character.
    pub fn constant(complex: &SimplicialComplex, c: i64) -> Result<Self, KernelError> {
        Self::from_values(complex, vec![c; complex.num_vertices()])
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, v: usize) -> i64 {
        self.values[v]
    }

    pub fn is_living(&self, v: usize) -> bool {
        self.values[v] != 0
    }

    pub fn living_vertices(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&v| self.is_living(v)).collect()
    }

    pub fn dead_vertices(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&v| !self.is_living(v)).collect()
    }

    /// gcd of the absolute values; `φ` is onto `Z` iff this is 1.
    pub fn gcd(&self) -> u64 {
        self.values.iter().fold(0u64, |g, &x| g.gcd(&x.unsigned_abs()))
    }

    pub fn is_surjective(&self) -> bool {
        self.gcd() == 1
    }

    pub fn negated(&self) -> Character {
        Character { labels: self.labels.clone(), values: self.values.iter().map(|x| -x).collect() }
    }

    /// `c·φ`; not surjective for `|c| > 1`.
    pub fn scaled(&self, c: i64) -> Character {
        assert!(c != 0, "scaling by zero kills the character");
        Character { labels: self.labels.clone(), values: self.values.iter().map(|x| c * x).collect() }
    }

    pub fn to_json(&self) -> CharacterJson {
        CharacterJson { phi: self.labels.iter().cloned().zip(self.values.iter().copied()).collect() }
    }

    fn assert_on(&self, complex: &SimplicialComplex) {
        assert!(self.labels == complex.labels(), "character is defined on a different complex");
    }
}

/// `{"phi": {"v": int, ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterJson {
    pub phi: BTreeMap<String, i64>,
}

impl CharacterJson {
    pub fn build(&self, complex: &SimplicialComplex) -> Result<Character, KernelError> {
        Character::new(complex, &self.phi)
    }
}

/// The full subcomplexes `L^a` and `L^d` spanned by living and dead vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LivingDeadPartition {
    pub living: SimplicialComplex,
    pub dead: SimplicialComplex,
}

pub fn partition(complex: &SimplicialComplex, phi: &Character) -> LivingDeadPartition {
    phi.assert_on(complex);
    LivingDeadPartition {
        living: complex.full_subcomplex(&phi.living_vertices()),
        dead: complex.full_subcomplex(&phi.dead_vertices()),
    }
}

/// A dead simplex `σ` (possibly empty) where `L^a ∩ lk(σ)` fails to be
/// `required`-acyclic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpnViolation {
    pub simplex: Vec<String>,
    pub required: isize,
}

impl fmt::Display for FpnViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.simplex.is_empty() {
            write!(f, "living subcomplex is not {}-acyclic", self.required)
        } else {
            write!(
                f,
                "living link of dead simplex {{{}}} is not {}-acyclic",
                self.simplex.join(", "),
                self.required
            )
        }
    }
}

/// First failure of the living-link criterion for `FP_n(F)`, given only the
/// set of living vertices.
///
/// The empty simplex asks for `L^a` to be `(n-1)`-acyclic; a nonempty dead
/// `σ` asks for `L^a ∩ lk(σ)` to be `(n - dim σ - 1)`-acyclic. Dead simplices
/// are scanned by dimension, then lexicographically.
pub fn fpn_violation_for_support(
    complex: &SimplicialComplex,
    living: &[bool],
    n: usize,
    field: FieldSpec,
) -> Option<FpnViolation> {
    let alive: Vec<usize> = (0..complex.num_vertices()).filter(|&v| living[v]).collect();
    let n = n as isize;
    if !complex.full_subcomplex(&alive).is_n_acyclic(n - 1, field) {
        return Some(FpnViolation { simplex: Vec::new(), required: n - 1 });
    }
    for d in 0..=complex.dim() {
        let required = n - d - 1;
        if required < -1 {
            break;
        }
        for sigma in complex.faces_of_dim(d) {
            if sigma.iter().any(|&v| living[v]) {
                continue;
            }
            let lk = complex.link_within(sigma, &alive).expect("sigma is a face");
            if !lk.is_n_acyclic(required, field) {
                return Some(FpnViolation { simplex: complex.simplex_labels(sigma), required });
            }
        }
    }
    None
}

pub fn fpn_violation(
    complex: &SimplicialComplex,
    phi: &Character,
    n: usize,
    field: FieldSpec,
) -> Option<FpnViolation> {
    phi.assert_on(complex);
    let living: Vec<bool> = phi.values.iter().map(|&x| x != 0).collect();
    fpn_violation_for_support(complex, &living, n, field)
}

/// Whether `BB_L^φ` is of type `FP_n(F)`.
pub fn is_fpn(complex: &SimplicialComplex, phi: &Character, n: usize, field: FieldSpec) -> bool {
    fpn_violation(complex, phi, n, field).is_none()
}

/// `Σ_v |φ(v)| · b̃_{m-1}(lk v; F)` with no hypotheses checked.
pub fn theorem_b_betti_unchecked(complex: &SimplicialComplex, phi: &Character, m: usize, field: FieldSpec) -> u64 {
    phi.assert_on(complex);
    phi.living_vertices()
        .into_iter()
        .map(|v| {
            let lk = complex.link(&[v]).expect("vertex is a face");
            phi.value(v).unsigned_abs() * lk.reduced_betti(field).get(m as isize - 1) as u64
        })
        .sum()
}

/// `b_m` of `BB_L^φ` over the Hughes-free division ring.
///
/// Requires `φ` onto `Z` and the kernel of type `FP_m(F)`; the error names
/// the first offending dead simplex. See [`theorem_b_betti_unchecked`] for
/// the raw sum.
pub fn theorem_b_betti(
    complex: &SimplicialComplex,
    phi: &Character,
    m: usize,
    field: FieldSpec,
) -> Result<u64, KernelError> {
    if !phi.is_surjective() {
        return Err(KernelError::NotSurjective(phi.gcd()));
    }
    if let Some(violation) = fpn_violation(complex, phi, m, field) {
        return Err(KernelError::NotFpn { n: m, violation });
    }
    Ok(theorem_b_betti_unchecked(complex, phi, m, field))
}

/// Number of orbits of lines through a lift of a living vertex `v`: `|φ(v)|`.
pub fn count_vertex_orbits(complex: &SimplicialComplex, phi: &Character, v: usize) -> Result<u64, KernelError> {
    phi.assert_on(complex);
    match phi.value(v) {
        0 => Err(KernelError::DeadVertex(complex.label(v).to_string())),
        x => Ok(x.unsigned_abs()),
    }
}

/// `Σ_v |φ(v)| · |H_{p-1}(lk v; Z)_tors|`; a torsion-free link counts 1.
pub fn torsion_term(complex: &SimplicialComplex, phi: &Character, p: usize) -> BigInt {
    phi.assert_on(complex);
    phi.living_vertices()
        .into_iter()
        .map(|v| {
            let lk = complex.link(&[v]).expect("vertex is a face");
            BigInt::from(phi.value(v).unsigned_abs()) * lk.integral_homology(p as isize - 1).torsion_order()
        })
        .sum()
}

/// Whether some living vertex has `H̃_{p-1}(lk v; Z) ≠ 0`.
///
/// Positivity of minimal volume entropy follows when the kernel has type F,
/// which the caller must know independently.
pub fn mve_positive_criterion(complex: &SimplicialComplex, phi: &Character, p: usize) -> bool {
    phi.assert_on(complex);
    phi.living_vertices().into_iter().any(|v| {
        let lk = complex.link(&[v]).expect("vertex is a face");
        !lk.integral_homology(p as isize - 1).is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::standard;

    fn phi(l: &SimplicialComplex, v: &[i64]) -> Character {
        Character::from_values(l, v.to_vec()).unwrap()
    }

    #[test]
    fn character_validation() {
        let c4 = standard::cycle(4);
        assert_eq!(Character::from_values(&c4, vec![0; 4]), Err(KernelError::ZeroCharacter));
        let mut m = BTreeMap::new();
        m.insert("0".to_string(), 1);
        assert!(matches!(Character::new(&c4, &m), Err(KernelError::MissingValue(_))));
        m.insert("x".to_string(), 1);
        assert!(matches!(Character::new(&c4, &m), Err(KernelError::UnknownVertex(_))));
        let p = phi(&c4, &[2, 0, -4, 6]);
        assert_eq!(p.gcd(), 2);
        assert!(!p.is_surjective());
        let json = serde_json::to_string(&phi(&c4, &[1, 0, -1, 0]).to_json()).unwrap();
        assert_eq!(json, r#"{"phi":{"0":1,"1":0,"2":-1,"3":0}}"#);
    }

    #[test]
    fn partitions() {
        let c4 = standard::cycle(4);
        let all = partition(&c4, &phi(&c4, &[1, 1, 1, 1]));
        assert_eq!(all.living, c4);
        assert_eq!(all.dead.num_vertices(), 0);
        let alt = partition(&c4, &phi(&c4, &[1, 0, 1, 0]));
        assert_eq!((alt.living.num_vertices(), alt.living.num_faces(1)), (2, 0));
        assert_eq!((alt.dead.num_vertices(), alt.dead.num_faces(1)), (2, 0));
    }

    #[test]
    fn fpn_examples() {
        let c4 = standard::cycle(4);
        let ones = phi(&c4, &[1; 4]);
        assert!(is_fpn(&c4, &ones, 1, FieldSpec::Q));
        assert!(!is_fpn(&c4, &ones, 2, FieldSpec::Q));
        let alt = phi(&c4, &[1, 0, 1, 0]);
        assert!(is_fpn(&c4, &alt, 0, FieldSpec::Q));
        let v = fpn_violation(&c4, &alt, 1, FieldSpec::Q).unwrap();
        assert_eq!(v, FpnViolation { simplex: vec![], required: 0 });
        let pt = standard::points(1);
        assert!(is_fpn(&pt, &phi(&pt, &[1]), 0, FieldSpec::F2));
        // F_2 with one dead generator: the kernel is not finitely generated
        let two = standard::points(2);
        assert!(!is_fpn(&two, &phi(&two, &[1, 0]), 1, FieldSpec::Q));
        let edge = standard::full_simplex(2);
        assert!(is_fpn(&edge, &phi(&edge, &[1, 0]), 1, FieldSpec::Q));
    }

    #[test]
    fn theorem_b_examples() {
        let pt = standard::points(1);
        assert_eq!(theorem_b_betti(&pt, &phi(&pt, &[1]), 0, FieldSpec::Q), Ok(1));
        let c4 = standard::cycle(4);
        assert_eq!(theorem_b_betti(&c4, &phi(&c4, &[1; 4]), 1, FieldSpec::Q), Ok(4));
        assert_eq!(theorem_b_betti(&c4, &phi(&c4, &[1, -1, 1, -1]), 1, FieldSpec::Q), Ok(4));
        let err = theorem_b_betti(&c4, &phi(&c4, &[1; 4]), 2, FieldSpec::Q).unwrap_err();
        assert!(matches!(err, KernelError::NotFpn { n: 2, .. }));
        let doubled = phi(&c4, &[2; 4]);
        assert_eq!(theorem_b_betti(&c4, &doubled, 1, FieldSpec::Q), Err(KernelError::NotSurjective(2)));
        assert_eq!(theorem_b_betti_unchecked(&c4, &doubled, 1, FieldSpec::Q), 8);
        for k in 2..=4 {
            let s = standard::full_simplex(k);
            for m in 0..=k {
                assert_eq!(theorem_b_betti(&s, &Character::constant(&s, 1).unwrap(), m, FieldSpec::Q), Ok(0));
            }
        }
    }

    #[test]
    fn vertex_orbits() {
        let c4 = standard::cycle(4);
        let p = phi(&c4, &[1, -3, 2, 0]);
        assert_eq!(count_vertex_orbits(&c4, &p, 0), Ok(1));
        assert_eq!(count_vertex_orbits(&c4, &p, 1), Ok(3));
        assert_eq!(count_vertex_orbits(&c4, &p, 2), Ok(2));
        assert!(matches!(count_vertex_orbits(&c4, &p, 3), Err(KernelError::DeadVertex(_))));
    }

    #[test]
    fn torsion_and_entropy() {
        let c4 = standard::cycle(4);
        let ones = phi(&c4, &[1; 4]);
        assert_eq!(torsion_term(&c4, &ones, 1), BigInt::from(4));
        assert!(mve_positive_criterion(&c4, &ones, 1));
        let cone = standard::flag_rp2().cone("apex").unwrap();
        let apex = cone.index_of("apex").unwrap();
        let mut vals = vec![0; cone.num_vertices()];
        vals[apex] = 2;
        let p = phi(&cone, &vals);
        assert_eq!(torsion_term(&cone, &p, 2), BigInt::from(4));
        assert!(mve_positive_criterion(&cone, &p, 2));
        assert!(!mve_positive_criterion(&cone, &p, 1));
        let s = standard::full_simplex(3);
        let ones = Character::constant(&s, 1).unwrap();
        assert!((0..4).all(|p| !mve_positive_criterion(&s, &ones, p)));
    }
}
