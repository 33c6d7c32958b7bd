use agrarian::complex::standard;
use agrarian::fibring::{find_characters, virtually_fpn_fibred, CoefficientRing};
use agrarian::kernels::{is_fpn, theorem_b_betti, theorem_b_betti_unchecked, Character};
use agrarian::raag::{abelian_quotient, cover_betti, FiniteQuotient, Raag};
use agrarian::{FieldSpec, SimplicialComplex};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn graph(max_vertices: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_vertices, prop::collection::vec(any::<bool>(), max_vertices * max_vertices)).prop_map(
        |(n, bits)| {
            let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if bits[a * n + b] {
                        edges.push((labels[a].clone(), labels[b].clone()));
                    }
                }
            }
            SimplicialComplex::flag_completion(&labels, &edges).unwrap()
        },
    )
}

fn with_character(max_vertices: usize) -> impl Strategy<Value = (SimplicialComplex, Character)> {
    graph(max_vertices).prop_flat_map(|l| {
        let n = l.num_vertices();
        (Just(l), prop::collection::vec(-3i64..=3, n))
            .prop_filter_map("zero character", |(l, v)| Character::from_values(&l, v).ok().map(|p| (l, p)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn salvetti_boundaries_compose_to_zero(l in graph(7)) {
        let a = Raag::new(l).unwrap();
        for k in 1..=a.salvetti_dim() {
            let prod = a.salvetti_boundary(k, FieldSpec::Q).mul(&a.salvetti_boundary(k + 1, FieldSpec::Q));
            prop_assert!(prod.is_zero_in(&a));
        }
    }

    #[test]
    fn cover_euler_characteristic_is_multiplicative(l in graph(5), n in 1u64..=3) {
        let a = Raag::new(l).unwrap();
        let moduli: BTreeMap<String, u64> = a.complex().labels().iter().map(|s| (s.clone(), n)).collect();
        let q = abelian_quotient(&a, &moduli).unwrap();
        let rep = cover_betti(&a, &q, FieldSpec::F3).unwrap();
        prop_assert_eq!(rep.euler_characteristic(), q.order() as i64 * a.salvetti_euler_characteristic());
        prop_assert_eq!(rep.betti_in(0), 1);
    }

    #[test]
    fn trivial_cover_is_the_salvetti_complex(l in graph(6)) {
        // H_k of the Salvetti complex is free of rank equal to the number of (k-1)-simplices
        let a = Raag::new(l).unwrap();
        let rep = cover_betti(&a, &FiniteQuotient::trivial(&a), FieldSpec::Q).unwrap();
        for k in 0..=a.salvetti_dim() {
            prop_assert_eq!(rep.betti_in(k), a.cell_count(k));
        }
    }

    #[test]
    fn theorem_b_ignores_sign((l, phi) in with_character(6), m in 0usize..4) {
        let f = FieldSpec::F2;
        prop_assert_eq!(theorem_b_betti(&l, &phi, m, f), theorem_b_betti(&l, &phi.negated(), m, f));
        prop_assert_eq!(theorem_b_betti_unchecked(&l, &phi.scaled(3), m, f), 3 * theorem_b_betti_unchecked(&l, &phi, m, f));
    }

    #[test]
    fn fpn_is_monotone_in_n((l, phi) in with_character(6)) {
        for f in [FieldSpec::Q, FieldSpec::F2] {
            for n in 1..4 {
                if is_fpn(&l, &phi, n, f) {
                    prop_assert!(is_fpn(&l, &phi, n - 1, f));
                }
            }
        }
    }

    #[test]
    fn bestvina_brady_calibration(l in graph(7), n in 0usize..4) {
        let ones = Character::constant(&l, 1).unwrap();
        for f in [FieldSpec::Q, FieldSpec::F2, FieldSpec::F3] {
            let b = l.reduced_betti(f);
            let acyclic = (-1..n as isize).all(|i| b.get(i) == 0);
            prop_assert_eq!(is_fpn(&l, &ones, n, f), acyclic);
        }
    }

    #[test]
    fn integral_verdict_implies_field_verdicts(l in graph(6), n in 0usize..4) {
        if virtually_fpn_fibred(&l, n, CoefficientRing::Integers).unwrap().verdict {
            for p in ["Q", "F2", "F3", "F5", "Z/30"] {
                prop_assert!(virtually_fpn_fibred(&l, n, p.parse().unwrap()).unwrap().verdict);
            }
        }
    }

    #[test]
    fn mod_m_matches_its_primes(l in graph(6), n in 0usize..4) {
        let both = ["F2", "F3"].iter().all(|p| virtually_fpn_fibred(&l, n, p.parse().unwrap()).unwrap().verdict);
        prop_assert_eq!(virtually_fpn_fibred(&l, n, "Z/12".parse().unwrap()).unwrap().verdict, both);
    }

    #[test]
    fn character_search_is_closed_under_negation(l in graph(4), n in 0usize..3) {
        let found = find_characters(&l, n, FieldSpec::Q, 1);
        for p in &found {
            prop_assert!(found.contains(&p.negated()));
            prop_assert!(is_fpn(&l, p, n, FieldSpec::Q));
        }
    }
}

#[test]
fn full_simplex_covers_have_binomial_betti() {
    for k in 1..=5usize {
        let a = Raag::new(standard::full_simplex(k)).unwrap();
        let rep = cover_betti(&a, &FiniteQuotient::trivial(&a), FieldSpec::Q).unwrap();
        let mut binom = vec![1usize];
        for p in 1..=k {
            binom.push(binom[p - 1] * (k + 1 - p) / p);
        }
        assert_eq!(rep.betti, binom);
    }
}

#[test]
fn free_and_product_cover_closed_forms() {
    let two = Raag::new(standard::points(2)).unwrap();
    for n in 1..=5u64 {
        let m: BTreeMap<String, u64> = [("0".into(), n), ("1".into(), n)].into();
        let rep = cover_betti(&two, &abelian_quotient(&two, &m).unwrap(), FieldSpec::F2).unwrap();
        assert_eq!(rep.betti_in(1) as u64, n * n + 1);
    }
    let c4 = Raag::new(standard::cycle(4)).unwrap();
    for n in 1..=2u64 {
        let m: BTreeMap<String, u64> = c4.complex().labels().iter().map(|l| (l.clone(), n)).collect();
        let rep = cover_betti(&c4, &abelian_quotient(&c4, &m).unwrap(), FieldSpec::Q).unwrap();
        assert_eq!(rep.betti_in(2) as u64, (n * n + 1).pow(2));
    }
}
