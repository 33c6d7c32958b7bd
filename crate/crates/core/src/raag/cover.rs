use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::{parse_rational, ExactMatrix, FieldSpec, LinalgError};

use super::{FiniteQuotient, GroupRingMatrix, Raag, RaagError};

/// Replaces each group ring entry by its `N x N` block, a word acting by
/// the permutation matrix `P` with `P e_j = e_{w(j)}`.
pub fn specialize(m: &GroupRingMatrix, q: &FiniteQuotient) -> Result<ExactMatrix, RaagError> {
    let n = q.order();
    let field = m.field();
    let mut triples = Vec::new();
    for (r, c, e) in m.entries() {
        for (coeff, word) in e.terms() {
            for j in 0..n {
                let i = q.apply_word(word, j)?;
                triples.push((r * n + i, c * n + j, coeff.clone()));
            }
        }
    }
    Ok(ExactMatrix::from_triples(m.rows() * n, m.cols() * n, field, triples)
        .expect("block indices are in range"))
}

/// Persistent memo for cover boundary ranks, keyed by a descriptor string.
pub trait RankStore: Sync {
    fn get(&self, key: &str) -> Option<usize>;
    fn put(&self, key: &str, rank: usize);
}

fn rank_key(raag: &Raag, q: &FiniteQuotient, k: usize, field: FieldSpec) -> String {
    let complex = serde_json::to_string(&raag.complex().to_json()).expect("serialisable");
    let quotient = serde_json::to_string(&q.to_json()).expect("serialisable");
    format!("salvetti-cover-rank|{complex}|{quotient}|{field}|{k}")
}

/// Rank of the specialised `∂_k`; zero outside `1..=dim L + 1`.
fn boundary_rank(
    raag: &Raag,
    q: &FiniteQuotient,
    k: usize,
    field: FieldSpec,
    store: Option<&dyn RankStore>,
) -> Result<usize, RaagError> {
    if k == 0 || k > raag.salvetti_dim() {
        return Ok(0);
    }
    let key = store.map(|_| rank_key(raag, q, k, field));
    if let (Some(s), Some(key)) = (store, &key) {
        if let Some(r) = s.get(key) {
            return Ok(r);
        }
    }
    let r = specialize(&raag.salvetti_boundary(k, field), q)?.rank();
    if let (Some(s), Some(key)) = (store, &key) {
        s.put(key, r);
    }
    Ok(r)
}

/// Betti numbers of the finite cover `X_N` of the Salvetti complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverHomologyReport {
    pub order: usize,
    /// `b_k(X_N)` for `k = 0 ..= dim L + 1`.
    pub betti: Vec<usize>,
    /// `b_k / N`, exact.
    pub normalized: Vec<BigRational>,
}

impl CoverHomologyReport {
    pub fn betti_in(&self, k: usize) -> usize {
        self.betti.get(k).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(k, b)| if k % 2 == 0 { *b as i64 } else { -(*b as i64) })
            .sum()
    }

    pub fn to_json(&self) -> CoverReportJson {
        CoverReportJson {
            order: self.order,
            betti: self.betti.clone(),
            normalized: self.normalized.iter().map(|r| r.to_string()).collect(),
        }
    }
}

/// `{"N": ..., "betti": [...], "normalized": ["p/q", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverReportJson {
    #[serde(rename = "N")]
    pub order: usize,
    pub betti: Vec<usize>,
    pub normalized: Vec<String>,
}

impl CoverReportJson {
    /// Re-validates the report: positive order and `normalized = betti / N` exactly.
    pub fn validate(&self) -> Result<CoverHomologyReport, LinalgError> {
        if self.order == 0 || self.normalized.len() != self.betti.len() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.betti.len(),
                found: self.normalized.len(),
            });
        }
        let n = BigInt::from(self.order);
        let mut normalized = Vec::with_capacity(self.betti.len());
        for (b, s) in self.betti.iter().zip(&self.normalized) {
            let v = parse_rational(s)?;
            if v != BigRational::new(BigInt::from(*b), n.clone()) {
                return Err(LinalgError::BadScalar(s.clone()));
            }
            normalized.push(v);
        }
        Ok(CoverHomologyReport { order: self.order, betti: self.betti.clone(), normalized })
    }
}

pub fn cover_betti(raag: &Raag, q: &FiniteQuotient, field: FieldSpec) -> Result<CoverHomologyReport, RaagError> {
    cover_betti_cached(raag, q, field, None)
}

/// [`cover_betti`] with boundary ranks memoised in `store`.
pub fn cover_betti_cached(
    raag: &Raag,
    q: &FiniteQuotient,
    field: FieldSpec,
    store: Option<&dyn RankStore>,
) -> Result<CoverHomologyReport, RaagError> {
    q.covers_all_generators()?;
    let top = raag.salvetti_dim();
    let ranks: Vec<usize> = (0..=top + 1)
        .into_par_iter()
        .map(|k| boundary_rank(raag, q, k, field, store))
        .collect::<Result<_, _>>()?;
    let n = q.order();
    let betti: Vec<usize> = (0..=top).map(|k| raag.cell_count(k) * n - ranks[k] - ranks[k + 1]).collect();
    let normalized = betti
        .iter()
        .map(|&b| BigRational::new(BigInt::from(b), BigInt::from(n)))
        .collect();
    Ok(CoverHomologyReport { order: n, betti, normalized })
}

/// `b_k(X_N) / N` along a chain of quotients with nondecreasing orders.
/// Values are reported as computed; no limit is inferred.
pub fn gradient_sequence(
    raag: &Raag,
    chain: &[FiniteQuotient],
    field: FieldSpec,
    k: usize,
    store: Option<&dyn RankStore>,
) -> Result<Vec<BigRational>, RaagError> {
    if chain.windows(2).any(|w| w[0].order() > w[1].order()) {
        return Err(RaagError::ChainNotMonotone);
    }
    chain
        .par_iter()
        .map(|q| {
            q.covers_all_generators()?;
            let n = q.order();
            let b = if k > raag.salvetti_dim() {
                0
            } else {
                raag.cell_count(k) * n
                    - boundary_rank(raag, q, k, field, store)?
                    - boundary_rank(raag, q, k + 1, field, store)?
            };
            Ok(BigRational::new(BigInt::from(b), BigInt::from(n)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::complex::standard;
    use crate::raag::{abelian_quotient, GroupRingElement, Letter};

    fn uniform(raag: &Raag, n: u64) -> FiniteQuotient {
        let m: BTreeMap<String, u64> = raag.complex().labels().iter().map(|l| (l.clone(), n)).collect();
        abelian_quotient(raag, &m).unwrap()
    }

    fn rat(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn generator_minus_one_blocks() {
        let a = Raag::new(standard::points(1)).unwrap();
        let mut m = GroupRingMatrix::zeros(1, 1, FieldSpec::Q);
        m.add_to(0, 0, &GroupRingElement::generator_minus_one(FieldSpec::Q, 0));
        let s = specialize(&m, &FiniteQuotient::trivial(&a)).unwrap();
        assert!(s.is_zero());
        let s = specialize(&m, &uniform(&a, 2)).unwrap();
        let expect = ExactMatrix::from_i64_rows(FieldSpec::Q, &[vec![-1, 1], vec![1, -1]]);
        assert_eq!(s, expect);
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn missing_generator_is_reported() {
        let a = Raag::new(standard::points(2)).unwrap();
        let mut act = BTreeMap::new();
        act.insert("0".to_string(), vec![1, 0]);
        let q = FiniteQuotient::explicit(&a, 2, &act).unwrap();
        let d1 = a.salvetti_boundary(1, FieldSpec::Q);
        assert!(matches!(specialize(&d1, &q), Err(RaagError::MissingGenerator(_))));
        assert!(cover_betti(&a, &q, FieldSpec::Q).is_err());
        let mut only_a = GroupRingMatrix::zeros(1, 1, FieldSpec::Q);
        only_a.add_to(0, 0, &GroupRingElement::monomial(FieldSpec::Q, FieldSpec::Q.one(), vec![Letter::new(0)]));
        assert!(specialize(&only_a, &q).is_ok());
    }

    #[test]
    fn free_group_covers() {
        let a = Raag::new(standard::points(2)).unwrap();
        for n in 1..=3u64 {
            let q = uniform(&a, n);
            let d1 = specialize(&a.salvetti_boundary(1, FieldSpec::F2), &q).unwrap();
            assert_eq!(d1.rank() as u64, n * n - 1);
            let rep = cover_betti(&a, &q, FieldSpec::F2).unwrap();
            assert_eq!(rep.betti, vec![1, (n * n + 1) as usize]);
        }
    }

    #[test]
    fn torus_of_full_simplex() {
        // binomial coefficients C(3, p)
        let a = Raag::new(standard::full_simplex(3)).unwrap();
        let rep = cover_betti(&a, &FiniteQuotient::trivial(&a), FieldSpec::Q).unwrap();
        assert_eq!(rep.betti, vec![1, 3, 3, 1]);
    }

    #[test]
    fn f2_times_f2() {
        let a = Raag::new(standard::cycle(4)).unwrap();
        let rep = cover_betti(&a, &uniform(&a, 2), FieldSpec::F3).unwrap();
        assert_eq!(rep.betti, vec![1, 10, 25]);
        assert_eq!(rep.euler_characteristic(), 16 * a.salvetti_euler_characteristic());
    }

    #[test]
    fn gradients() {
        let edge = Raag::new(standard::full_simplex(2)).unwrap();
        let chain: Vec<_> = (1..=3).map(|n| uniform(&edge, n)).collect();
        let g = gradient_sequence(&edge, &chain, FieldSpec::Q, 1, None).unwrap();
        assert_eq!(g, vec![rat("2"), rat("1/2"), rat("2/9")]);
        let g0 = gradient_sequence(&edge, &chain, FieldSpec::Q, 0, None).unwrap();
        assert_eq!(g0, vec![rat("1"), rat("1/4"), rat("1/9")]);

        let free = Raag::new(standard::points(2)).unwrap();
        let chain: Vec<_> = (1..=3).map(|n| uniform(&free, n)).collect();
        let g = gradient_sequence(&free, &chain, FieldSpec::F2, 1, None).unwrap();
        assert_eq!(g, vec![rat("2"), rat("5/4"), rat("10/9")]);

        let reversed: Vec<_> = chain.into_iter().rev().collect();
        assert!(matches!(
            gradient_sequence(&free, &reversed, FieldSpec::F2, 1, None),
            Err(RaagError::ChainNotMonotone)
        ));
    }

    #[test]
    fn report_json_round_trip() {
        let a = Raag::new(standard::points(2)).unwrap();
        let rep = cover_betti(&a, &uniform(&a, 2), FieldSpec::Q).unwrap();
        let text = serde_json::to_string(&rep.to_json()).unwrap();
        assert_eq!(text, r#"{"N":4,"betti":[1,5],"normalized":["1/4","5/4"]}"#);
        let back: CoverReportJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.validate().unwrap(), rep);
        let tampered = CoverReportJson { normalized: vec!["1/4".into(), "1".into()], ..back };
        assert!(tampered.validate().is_err());
    }
}
