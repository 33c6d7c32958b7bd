//! Deciding when a RAAG (virtually) fibres with kernel of type `FP_n(R)`.
//!
//! Over a field everything reduces to the reduced homology of `L`: the
//! group virtually `FP_n(F)`-fibres iff `b̃_i(L; F) = 0` for `i ≤ n - 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{ComplexError, HomologyProfile, SimplicialComplex};
use crate::kernels::{fpn_violation_for_support, is_fpn, Character, CharacterJson};
use crate::linalg::{prime_factors, FieldSpec, LinalgError};
use crate::raag::{cover_betti, dfg_betti_raag, FiniteQuotient, Raag, RaagError};

/// Coefficients for fibring questions: a prime or rational field, `Z`, or `Z/m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Field(FieldSpec),
    Integers,
    IntegersMod(u64),
}

impl CoefficientRing {
    pub fn integers_mod(m: u64) -> Result<Self, LinalgError> {
        if m < 2 {
            return Err(LinalgError::UnknownField(format!("Z/{m}")));
        }
        Ok(CoefficientRing::IntegersMod(m))
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Field(k) => write!(f, "{k}"),
            CoefficientRing::Integers => f.write_str("Z"),
            CoefficientRing::IntegersMod(m) => write!(f, "Z/{m}"),
        }
    }
}

impl FromStr for CoefficientRing {
    type Err = LinalgError;

    /// `"Z"`, `"Z/m"` with `m ≥ 2`, or any field token.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "Z" {
            return Ok(CoefficientRing::Integers);
        }
        if let Some(m) = s.strip_prefix("Z/") {
            let m: u64 = m.parse().map_err(|_| LinalgError::UnknownField(s.to_string()))?;
            return Self::integers_mod(m);
        }
        Ok(CoefficientRing::Field(s.parse()?))
    }
}

impl Serialize for CoefficientRing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CoefficientRing {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibringReport {
    pub ring: CoefficientRing,
    pub n: usize,
    pub verdict: bool,
    pub witnesses: Vec<Character>,
    /// Least `m ≤ n` with a nonvanishing invariant; present iff `verdict` is false.
    pub obstruction: Option<usize>,
}

impl FibringReport {
    pub fn to_json(&self) -> FibringReportJson {
        FibringReportJson {
            verdict: self.verdict,
            ring: self.ring,
            n: self.n,
            witnesses: self.witnesses.iter().map(Character::to_json).collect(),
            obstruction_degree: self.obstruction,
        }
    }
}

/// `{"verdict", "ring", "n", "witnesses": [{"phi": ...}], "obstruction_degree"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibringReportJson {
    pub verdict: bool,
    pub ring: CoefficientRing,
    pub n: usize,
    pub witnesses: Vec<CharacterJson>,
    pub obstruction_degree: Option<usize>,
}

impl FibringReportJson {
    /// Internal consistency: a false verdict has an obstruction `≤ n`, a true one has none.
    pub fn is_consistent(&self) -> bool {
        match self.obstruction_degree {
            Some(m) => !self.verdict && m <= self.n,
            None => self.verdict,
        }
    }
}

/// Least `m ≤ n` with `b̃_{m-1}(L; F) ≠ 0`.
pub fn no_fibring_obstruction(complex: &SimplicialComplex, n: usize, field: FieldSpec) -> Option<usize> {
    let b = complex.reduced_betti(field);
    (0..=n).find(|&m| b.get(m as isize - 1) != 0)
}

fn integral_obstruction(complex: &SimplicialComplex, n: usize) -> Option<usize> {
    (0..=n).find(|&m| !complex.integral_homology(m as isize - 1).is_zero())
}

/// Decides virtual `FP_n(R)`-fibring of `A_L`, which coincides with
/// `FP_n(R)`-fibring.
///
/// `Z/m` is handled through the primes dividing `m`, and `Z` through the
/// integral homology of `L` (free part and torsion) in degrees `≤ n - 1`.
/// A positive verdict carries the all-ones character as witness.
pub fn virtually_fpn_fibred(
    complex: &SimplicialComplex,
    n: usize,
    ring: CoefficientRing,
) -> Result<FibringReport, ComplexError> {
    complex.check_flag()?;
    let obstruction = match ring {
        CoefficientRing::Field(f) => no_fibring_obstruction(complex, n, f),
        CoefficientRing::IntegersMod(m) => prime_factors(m)
            .into_iter()
            .filter_map(|p| no_fibring_obstruction(complex, n, FieldSpec::Prime(p)))
            .min(),
        CoefficientRing::Integers => integral_obstruction(complex, n),
    };
    let verdict = obstruction.is_none();
    let mut witnesses = Vec::new();
    if verdict {
        let certify: Vec<FieldSpec> = match ring {
            CoefficientRing::Field(f) => vec![f],
            CoefficientRing::IntegersMod(m) => prime_factors(m).into_iter().map(FieldSpec::Prime).collect(),
            CoefficientRing::Integers => vec![FieldSpec::Q],
        };
        if let Ok(ones) = Character::constant(complex, 1) {
            if certify.iter().all(|&f| is_fpn(complex, &ones, n, f)) {
                witnesses.push(ones);
            }
        }
    }
    Ok(FibringReport { ring, n, verdict, witnesses, obstruction })
}

/// Every character with values in `[-bound, bound]`, onto `Z`, whose kernel
/// is of type `FP_n(F)`, in lexicographic order of the value vectors.
///
/// Candidates are enumerated up to sign and the negatives added back, so
/// the output is closed under `φ ↦ -φ`. The finiteness test depends only on
/// the set of living vertices and is evaluated once per such set. The
/// search has `(2 bound + 1)^V` candidates.
pub fn find_characters(complex: &SimplicialComplex, n: usize, field: FieldSpec, bound: u32) -> Vec<Character> {
    let bound = bound as i64;
    let nv = complex.num_vertices();
    let mut normalized = Vec::new();
    let mut values = vec![-bound; nv];
    if nv > 0 {
        loop {
            let first = values.iter().find(|&&x| x != 0);
            if first.is_some_and(|&x| x > 0) {
                if let Ok(phi) = Character::from_values(complex, values.clone()) {
                    if phi.is_surjective() {
                        normalized.push(phi);
                    }
                }
            }
            // odometer, last coordinate fastest
            let mut i = nv;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if values[i] < bound {
                    values[i] += 1;
                    break;
                }
                values[i] = -bound;
            }
            if values.iter().all(|&x| x == -bound) {
                break;
            }
        }
    }
    let supports: BTreeSet<Vec<bool>> =
        normalized.iter().map(|p| p.values().iter().map(|&x| x != 0).collect()).collect();
    let passing: BTreeMap<Vec<bool>, bool> = supports
        .into_par_iter()
        .map(|s| {
            let ok = fpn_violation_for_support(complex, &s, n, field).is_none();
            (s, ok)
        })
        .collect();
    let mut out: Vec<Character> = normalized
        .into_iter()
        .filter(|p| passing[&p.values().iter().map(|&x| x != 0).collect::<Vec<_>>()])
        .flat_map(|p| {
            let neg = p.negated();
            [p, neg]
        })
        .collect();
    out.sort_by(|a, b| a.values().cmp(b.values()));
    out
}

/// Reduced link Betti numbers, one profile per vertex.
fn link_profiles(complex: &SimplicialComplex, field: FieldSpec) -> Vec<HomologyProfile> {
    (0..complex.num_vertices())
        .map(|v| complex.link(&[v]).expect("vertex is a face").reduced_betti(field))
        .collect()
}

/// Whether all `FP_n(F)`-fibres found by [`find_characters`] agree on
/// having vanishing Betti numbers over the division ring through degree `n`.
///
/// Each found kernel is `FP_n(F)`, hence `FP_m(F)` for `m ≤ n`, so the
/// weighted link sums are the genuine Betti numbers.
pub fn fibres_fibre_check(complex: &SimplicialComplex, n: usize, field: FieldSpec, bound: u32) -> bool {
    let links = link_profiles(complex, field);
    let acyclic = |phi: &Character| {
        (0..=n).all(|m| {
            phi.living_vertices()
                .iter()
                .all(|&v| links[v].get(m as isize - 1) == 0)
        })
    };
    let verdicts: BTreeSet<bool> = find_characters(complex, n, field, bound).iter().map(acyclic).collect();
    verdicts.len() <= 1
}

/// One failure of `b_m^{D}(A_L) ≤ b_m(X_N) / N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KazViolation {
    pub order: usize,
    pub degree: usize,
    pub dfg_betti: usize,
    pub cover_betti: usize,
}

/// Every degree `m ≤ max_degree` and quotient where the lower bound fails.
pub fn kaz_violations(
    raag: &Raag,
    quotients: &[FiniteQuotient],
    field: FieldSpec,
    max_degree: usize,
) -> Result<Vec<KazViolation>, RaagError> {
    let reports = quotients
        .par_iter()
        .map(|q| cover_betti(raag, q, field))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::new();
    for rep in reports {
        for m in 0..=max_degree {
            let d = dfg_betti_raag(raag, field, m);
            let b = rep.betti_in(m);
            if d * rep.order > b {
                out.push(KazViolation { order: rep.order, degree: m, dfg_betti: d, cover_betti: b });
            }
        }
    }
    Ok(out)
}

pub fn kaz_inequality_check(
    raag: &Raag,
    quotients: &[FiniteQuotient],
    field: FieldSpec,
    max_degree: usize,
) -> Result<bool, RaagError> {
    Ok(kaz_violations(raag, quotients, field, max_degree)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::standard;
    use crate::kernels::theorem_b_betti;
    use crate::raag::abelian_quotient;

    fn ring(s: &str) -> CoefficientRing {
        s.parse().unwrap()
    }

    #[test]
    fn ring_tokens() {
        assert_eq!(ring("Z"), CoefficientRing::Integers);
        assert_eq!(ring("Z/6"), CoefficientRing::IntegersMod(6));
        assert_eq!(ring("F3"), CoefficientRing::Field(FieldSpec::F3));
        assert!("Z/1".parse::<CoefficientRing>().is_err());
        assert!("Z/x".parse::<CoefficientRing>().is_err());
        assert!("R".parse::<CoefficientRing>().is_err());
        assert_eq!(ring("Z/6").to_string(), "Z/6");
    }

    #[test]
    fn rp2_verdicts() {
        let l = standard::flag_rp2();
        let q = virtually_fpn_fibred(&l, 2, ring("Q")).unwrap();
        assert!(q.verdict);
        assert_eq!(q.witnesses.len(), 1);
        let f2 = virtually_fpn_fibred(&l, 2, ring("F2")).unwrap();
        assert_eq!((f2.verdict, f2.obstruction), (false, Some(2)));
        let z = virtually_fpn_fibred(&l, 2, ring("Z")).unwrap();
        assert_eq!((z.verdict, z.obstruction), (false, Some(2)));
        assert!(!virtually_fpn_fibred(&l, 2, ring("Z/6")).unwrap().verdict);
        assert!(virtually_fpn_fibred(&l, 2, ring("Z/9")).unwrap().verdict);
        assert!(virtually_fpn_fibred(&l, 1, ring("Z")).unwrap().verdict);
    }

    #[test]
    fn simplex_always_fibres() {
        let s = standard::full_simplex(4);
        for r in ["Q", "F2", "Z", "Z/12"] {
            for n in 0..5 {
                assert!(virtually_fpn_fibred(&s, n, ring(r)).unwrap().verdict);
            }
        }
        assert_eq!(no_fibring_obstruction(&s, 4, FieldSpec::Q), None);
        assert!(virtually_fpn_fibred(&standard::simplex_boundary(3), 1, ring("Q")).is_err());
    }

    #[test]
    fn obstructions() {
        assert_eq!(no_fibring_obstruction(&standard::cycle(4), 2, FieldSpec::F3), Some(2));
        assert_eq!(no_fibring_obstruction(&standard::flag_rp2(), 3, FieldSpec::F2), Some(2));
        assert_eq!(no_fibring_obstruction(&standard::flag_rp2(), 3, FieldSpec::Q), None);
    }

    #[test]
    fn report_json() {
        let rep = virtually_fpn_fibred(&standard::full_simplex(2), 1, ring("Z")).unwrap();
        let text = serde_json::to_string(&rep.to_json()).unwrap();
        assert_eq!(
            text,
            r#"{"verdict":true,"ring":"Z","n":1,"witnesses":[{"phi":{"0":1,"1":1}}],"obstruction_degree":null}"#
        );
        let back: FibringReportJson = serde_json::from_str(&text).unwrap();
        assert!(back.is_consistent());
    }

    #[test]
    fn character_search() {
        let c4 = standard::cycle(4);
        let found = find_characters(&c4, 1, FieldSpec::Q, 1);
        assert!(found.iter().any(|p| p.values() == [1, 1, 1, 1]));
        assert!(!found.iter().any(|p| p.values() == [1, 0, 1, 0]));
        assert!(find_characters(&standard::points(2), 1, FieldSpec::Q, 1).is_empty());
        let edge = find_characters(&standard::full_simplex(2), 1, FieldSpec::Q, 1);
        let vals: Vec<&[i64]> = edge.iter().map(|p| p.values()).collect();
        assert_eq!(
            vals,
            vec![&[-1, -1][..], &[-1, 0], &[-1, 1], &[0, -1], &[0, 1], &[1, -1], &[1, 0], &[1, 1]]
        );
        for p in &found {
            assert!(found.contains(&p.negated()));
            assert!(p.is_surjective());
        }
    }

    #[test]
    fn fibres_fibre_examples() {
        assert!(fibres_fibre_check(&standard::full_simplex(2), 1, FieldSpec::Q, 1));
        assert!(fibres_fibre_check(&standard::cycle(4), 1, FieldSpec::Q, 2));
        assert!(fibres_fibre_check(&standard::full_simplex(3), 2, FieldSpec::F2, 1));
    }

    #[test]
    fn link_profiles_match_theorem_b() {
        let l = standard::octahedron().cone("c").unwrap();
        let links = link_profiles(&l, FieldSpec::Q);
        for phi in find_characters(&l, 2, FieldSpec::Q, 1).iter().take(40) {
            for m in 0..=2 {
                let direct = theorem_b_betti(&l, phi, m, FieldSpec::Q).unwrap();
                let cached: u64 = phi
                    .living_vertices()
                    .iter()
                    .map(|&v| phi.value(v).unsigned_abs() * links[v].get(m as isize - 1) as u64)
                    .sum();
                assert_eq!(direct, cached);
            }
        }
    }

    #[test]
    fn kaz_examples() {
        let two = Raag::new(standard::points(2)).unwrap();
        let qs: Vec<_> = (1..=3u64)
            .map(|n| abelian_quotient(&two, &[("0".to_string(), n), ("1".to_string(), n)].into()).unwrap())
            .collect();
        assert!(kaz_inequality_check(&two, &qs, FieldSpec::Q, 2).unwrap());
        let c4 = Raag::new(standard::cycle(4)).unwrap();
        let t = [FiniteQuotient::trivial(&c4)];
        assert!(kaz_inequality_check(&c4, &t, FieldSpec::F2, 3).unwrap());
    }
}
