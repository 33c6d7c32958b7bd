use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Letter, Raag, RaagError};

/// A finite permutation action of (some of) the generators of `A_L`,
/// i.e. the coset action on `A_L / H` for a finite-index subgroup `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuotient {
    order: usize,
    /// Indexed by generator position; `None` when the generator is not covered.
    action: Vec<Option<Vec<usize>>>,
    inverse: Vec<Option<Vec<usize>>>,
    labels: Vec<String>,
    transitive: bool,
}

impl FiniteQuotient {
    /// Validates an explicit action: each listed generator must act by a
    /// permutation of `0..order`, and adjacent generators must commute.
    pub fn explicit(
        raag: &Raag,
        order: usize,
        action: &BTreeMap<String, Vec<usize>>,
    ) -> Result<Self, RaagError> {
        if order == 0 {
            return Err(RaagError::EmptyQuotient);
        }
        let n = raag.num_generators();
        let mut perms: Vec<Option<Vec<usize>>> = vec![None; n];
        for (label, perm) in action {
            let g = raag
                .complex()
                .index_of(label)
                .ok_or_else(|| RaagError::UnknownGenerator(label.clone()))?;
            let mut seen = vec![false; order];
            let ok = perm.len() == order
                && perm.iter().all(|&x| x < order && !std::mem::replace(&mut seen[x], true));
            if !ok {
                return Err(RaagError::NotAPermutation { generator: label.clone(), order });
            }
            perms[g] = Some(perm.clone());
        }
        for (a, b) in raag.complex().edges() {
            if let (Some(pa), Some(pb)) = (&perms[a], &perms[b]) {
                if (0..order).any(|x| pa[pb[x]] != pb[pa[x]]) {
                    return Err(RaagError::RelatorFails(
                        raag.generator_label(a).to_string(),
                        raag.generator_label(b).to_string(),
                    ));
                }
            }
        }
        let inverse = perms
            .iter()
            .map(|p| {
                p.as_ref().map(|p| {
                    let mut inv = vec![0; order];
                    for (x, &y) in p.iter().enumerate() {
                        inv[y] = x;
                    }
                    inv
                })
            })
            .collect();
        let transitive = orbit_count(order, &perms) == 1;
        Ok(FiniteQuotient {
            order,
            action: perms,
            inverse,
            labels: raag.complex().labels().to_vec(),
            transitive,
        })
    }

    /// The trivial quotient: one point, every generator acting trivially.
    pub fn trivial(raag: &Raag) -> Self {
        let ones: BTreeMap<String, u64> =
            raag.complex().labels().iter().map(|l| (l.clone(), 1)).collect();
        abelian_quotient(raag, &ones).expect("moduli are positive")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_transitive(&self) -> bool {
        self.transitive
    }

    pub fn orbits(&self) -> usize {
        orbit_count(self.order, &self.action)
    }

    pub fn permutation(&self, g: usize) -> Option<&[usize]> {
        self.action.get(g).and_then(|p| p.as_deref())
    }

    pub fn covers_all_generators(&self) -> Result<(), RaagError> {
        match self.action.iter().position(Option::is_none) {
            None => Ok(()),
            Some(g) => Err(RaagError::MissingGenerator(self.labels[g].clone())),
        }
    }

    pub(crate) fn letter_perm(&self, l: Letter) -> Result<&[usize], RaagError> {
        let table = if l.inverse { &self.inverse } else { &self.action };
        table
            .get(l.generator)
            .and_then(|p| p.as_deref())
            .ok_or_else(|| RaagError::MissingGenerator(self.labels[l.generator].clone()))
    }

    /// Image of `x` under the word, acting as `P_{l_1} P_{l_2} ... P_{l_k}`
    /// (the last letter is applied first).
    pub fn apply_word(&self, word: &[Letter], x: usize) -> Result<usize, RaagError> {
        let mut y = x;
        for &l in word.iter().rev() {
            y = self.letter_perm(l)?[y];
        }
        Ok(y)
    }

    pub fn to_json(&self) -> QuotientJson {
        QuotientJson::Explicit {
            order: self.order,
            action: self
                .action
                .iter()
                .enumerate()
                .filter_map(|(g, p)| p.as_ref().map(|p| (self.labels[g].clone(), p.clone())))
                .collect(),
        }
    }
}

fn orbit_count(order: usize, perms: &[Option<Vec<usize>>]) -> usize {
    let mut parent: Vec<usize> = (0..order).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for p in perms.iter().flatten() {
        for (x, &y) in p.iter().enumerate() {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
            }
        }
    }
    (0..order).filter(|&x| find(&mut parent, x) == x).count()
}

/// The regular action of `⊕_v Z/n_v` on itself, generator `v` adding one in
/// coordinate `v`. Points are encoded in mixed radix with the first vertex
/// varying fastest. Every vertex needs a modulus.
pub fn abelian_quotient(raag: &Raag, moduli: &BTreeMap<String, u64>) -> Result<FiniteQuotient, RaagError> {
    let labels = raag.complex().labels();
    for (l, &n) in moduli {
        if raag.complex().index_of(l).is_none() {
            return Err(RaagError::UnknownGenerator(l.clone()));
        }
        if n == 0 {
            return Err(RaagError::BadModulus(l.clone()));
        }
    }
    let mods: Vec<usize> = labels
        .iter()
        .map(|l| moduli.get(l).map(|&n| n as usize).ok_or_else(|| RaagError::MissingGenerator(l.clone())))
        .collect::<Result<_, _>>()?;
    let order: usize = mods.iter().product();
    let mut action = BTreeMap::new();
    let mut stride = 1usize;
    for (g, &n) in mods.iter().enumerate() {
        let perm: Vec<usize> = (0..order)
            .map(|x| {
                let digit = (x / stride) % n;
                x - digit * stride + ((digit + 1) % n) * stride
            })
            .collect();
        action.insert(labels[g].clone(), perm);
        stride *= n;
    }
    FiniteQuotient::explicit(raag, order, &action)
}

/// `{"type": "abelian", "moduli": {...}}` or
/// `{"type": "explicit", "order": N, "action": {"v": [perm], ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum QuotientJson {
    Abelian { moduli: BTreeMap<String, u64> },
    Explicit { order: usize, action: BTreeMap<String, Vec<usize>> },
}

impl QuotientJson {
    pub fn build(&self, raag: &Raag) -> Result<FiniteQuotient, RaagError> {
        match self {
            QuotientJson::Abelian { moduli } => abelian_quotient(raag, moduli),
            QuotientJson::Explicit { order, action } => FiniteQuotient::explicit(raag, *order, action),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::standard;

    fn uniform(raag: &Raag, n: u64) -> BTreeMap<String, u64> {
        raag.complex().labels().iter().map(|l| (l.clone(), n)).collect()
    }

    #[test]
    fn trivial_and_regular() {
        let a = Raag::new(standard::points(2)).unwrap();
        let q = FiniteQuotient::trivial(&a);
        assert_eq!(q.order(), 1);
        assert!(q.is_transitive());
        let q = abelian_quotient(&a, &uniform(&a, 3)).unwrap();
        assert_eq!(q.order(), 9);
        assert!(q.is_transitive());
        // generator "0" adds one in the first coordinate
        assert_eq!(q.permutation(0).unwrap()[0], 1);
        assert_eq!(q.permutation(0).unwrap()[2], 0);
        assert_eq!(q.permutation(1).unwrap()[0], 3);
        let c4 = Raag::new(standard::cycle(4)).unwrap();
        assert_eq!(abelian_quotient(&c4, &uniform(&c4, 2)).unwrap().order(), 16);
    }

    #[test]
    fn validates_explicit_actions() {
        let edge = Raag::new(standard::full_simplex(2)).unwrap();
        let mut act = BTreeMap::new();
        act.insert("0".to_string(), vec![1, 2, 0]);
        act.insert("1".to_string(), vec![1, 0, 2]);
        assert!(matches!(
            FiniteQuotient::explicit(&edge, 3, &act),
            Err(RaagError::RelatorFails(_, _))
        ));
        act.insert("1".to_string(), vec![0, 0, 2]);
        assert!(matches!(
            FiniteQuotient::explicit(&edge, 3, &act),
            Err(RaagError::NotAPermutation { .. })
        ));
        // a free group accepts non-commuting actions
        let free = Raag::new(standard::points(2)).unwrap();
        act.insert("1".to_string(), vec![1, 0, 2]);
        let q = FiniteQuotient::explicit(&free, 3, &act).unwrap();
        assert!(q.is_transitive());
        let l = Letter::new(0);
        assert_eq!(q.apply_word(&[l, l.inv()], 2).unwrap(), 2);
    }

    #[test]
    fn partial_actions_and_orbits() {
        let free = Raag::new(standard::points(2)).unwrap();
        let mut act = BTreeMap::new();
        act.insert("0".to_string(), vec![1, 0, 3, 2]);
        let q = FiniteQuotient::explicit(&free, 4, &act).unwrap();
        assert_eq!(q.orbits(), 2);
        assert!(!q.is_transitive());
        assert!(q.covers_all_generators().is_err());
    }

    #[test]
    fn json_forms() {
        let a = Raag::new(standard::points(2)).unwrap();
        let j: QuotientJson =
            serde_json::from_str(r#"{"type":"abelian","moduli":{"0":2,"1":2}}"#).unwrap();
        assert_eq!(j.build(&a).unwrap().order(), 4);
        let j: QuotientJson =
            serde_json::from_str(r#"{"type":"explicit","order":2,"action":{"0":[1,0],"1":[0,1]}}"#)
                .unwrap();
        let q = j.build(&a).unwrap();
        assert_eq!(q.to_json().build(&a).unwrap(), q);
        let bad: QuotientJson = serde_json::from_str(r#"{"type":"abelian","moduli":{"0":0,"1":1}}"#).unwrap();
        assert!(bad.build(&a).is_err());
    }
}
