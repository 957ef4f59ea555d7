use std::collections::BTreeMap;

use proptest::prelude::*;

use grassbwb::bwb::{bwb_bundle, bwb_irreducible, HomogeneousBundle};
use grassbwb::charring::{monomials_to_schur, schur_to_monomials, CharElement};
use grassbwb::exactness::{solve_abutment, AbutmentResult, E1Page};
use grassbwb::schubert::{
    chern_classes, euler_characteristic, segre_difference, Class, Grassmannian, RootBundle,
};
use grassbwb::weights::{rho, sort_regular, weyl_dimension, IntegerWeight, Partition, SortOutcome};

fn dominant(len: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntegerWeight> {
    prop::collection::vec(lo..=hi, len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        IntegerWeight::new(v)
    })
}

fn character(rank: usize) -> impl Strategy<Value = CharElement> {
    prop::collection::vec((dominant(rank, -3, 3), 1i64..3), 1..4).prop_map(move |terms| {
        CharElement::from_terms(rank, terms).unwrap()
    })
}

fn box_partition(rows: usize, cols: u32) -> impl Strategy<Value = Partition> {
    let all = Partition::all_in_box(rows, cols as usize);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sorting_is_a_permutation(v in prop::collection::vec(-6i64..6, 1..7)) {
        let w = IntegerWeight::new(v.clone());
        match sort_regular(&w) {
            SortOutcome::NotRegular => {
                let mut s = v.clone();
                s.sort_unstable();
                s.dedup();
                prop_assert!(s.len() < v.len());
            }
            SortOutcome::Regular { sorted, length } => {
                prop_assert!(sorted.entries().windows(2).all(|p| p[0] > p[1]));
                let inversions = (0..v.len())
                    .flat_map(|i| (i + 1..v.len()).map(move |j| (i, j)))
                    .filter(|&(i, j)| v[i] < v[j])
                    .count();
                prop_assert_eq!(length, inversions);
                prop_assert_eq!(sorted.sum(), w.sum());
            }
        }
    }

    #[test]
    fn weyl_dimension_is_shift_invariant(w in dominant(4, -4, 4), t in -3i64..3) {
        prop_assert_eq!(weyl_dimension(&w).unwrap(), weyl_dimension(&w.shift(t)).unwrap());
        prop_assert_eq!(weyl_dimension(&w).unwrap(), weyl_dimension(&w.dual()).unwrap());
    }

    #[test]
    fn monomial_round_trip(x in character(3)) {
        prop_assert_eq!(monomials_to_schur(&schur_to_monomials(&x)).unwrap(), x);
    }

    #[test]
    fn dimension_is_a_ring_map(x in character(3), y in character(3)) {
        let dx = x.dimension().unwrap();
        let dy = y.dimension().unwrap();
        prop_assert_eq!(x.add(&y).unwrap().dimension().unwrap(), dx + dy);
        prop_assert_eq!(x.multiply(&y).unwrap().dimension().unwrap(), dx * dy);
    }

    #[test]
    fn lr_matches_monomial_oracle(a in box_partition(3, 3), b in box_partition(3, 3)) {
        let x = CharElement::irreducible(a.to_weight(3)).unwrap();
        let y = CharElement::irreducible(b.to_weight(3)).unwrap();
        prop_assert_eq!(x.multiply(&y).unwrap(), x.multiply_via_monomials(&y).unwrap());
    }

    #[test]
    fn exterior_powers_alternate(w in dominant(2, -2, 2), m in 1usize..4) {
        // Σ (-1)^i ∧^i V ⊗ Sym^{m-i} V = 0 for m ≥ 1
        let v = CharElement::irreducible(w).unwrap();
        let mut acc = CharElement::zero(2);
        for i in 0..=m {
            let term = v.exterior_power(i).unwrap().multiply(&v.symmetric_power(m - i).unwrap()).unwrap();
            acc = acc.add(&term.scale(if i % 2 == 0 { 1 } else { -1 })).unwrap();
        }
        prop_assert!(acc.is_zero());
    }

    #[test]
    fn schubert_ring_axioms(a in box_partition(2, 4), b in box_partition(2, 4), c in box_partition(2, 4)) {
        let g = Grassmannian::get(2, 6).unwrap();
        let x = Class::sigma(&g, a.parts()).unwrap();
        let y = Class::sigma(&g, b.parts()).unwrap();
        let z = Class::sigma(&g, c.parts()).unwrap();
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn bwb_is_serre_symmetric(
        sub in dominant(2, -5, 3),
        quot in dominant(4, -4, 3),
    ) {
        let b = HomogeneousBundle::new(
            2, 6,
            CharElement::irreducible(sub).unwrap(),
            CharElement::irreducible(quot).unwrap(),
        ).unwrap();
        let here = bwb_bundle(&b).unwrap().totals;
        let there: BTreeMap<usize, i128> =
            bwb_bundle(&b.serre_dual()).unwrap().totals.into_iter().map(|(q, d)| (8 - q, d)).collect();
        prop_assert_eq!(here, there);
    }

    #[test]
    fn bwb_matches_hrr(sub in dominant(2, -3, 2), quot in dominant(2, -2, 2)) {
        let b = HomogeneousBundle::new(
            2, 4,
            CharElement::irreducible(sub).unwrap(),
            CharElement::irreducible(quot).unwrap(),
        ).unwrap();
        prop_assert_eq!(bwb_bundle(&b).unwrap().euler_characteristic(), euler_characteristic(&b).unwrap());
    }

    #[test]
    fn bwb_has_at_most_one_degree(sub in dominant(2, -6, 3), quot in dominant(4, -4, 4)) {
        let r = bwb_irreducible(2, 6, &sub, &quot).unwrap();
        match r.degree() {
            None => prop_assert_eq!(r.dimension(), 0),
            Some(_) => prop_assert!(r.dimension() > 0),
        }
        let w = sub.concat(&quot).add(&rho(6));
        prop_assert_eq!(r.shifted(), &w);
    }

    #[test]
    fn forced_abutments_keep_the_euler_characteristic(
        entries in prop::collection::btree_map((-3i64..=0, 0i64..6), 0u64..5, 0..6),
    ) {
        let page = E1Page::new(4, entries.iter().map(|(&(p, q), &d)| (p, q, d))).unwrap();
        if let Ok(AbutmentResult::Forced { dims }) = solve_abutment(&page) {
            let chi: i128 = dims.iter().map(|(&n, &d)| if n % 2 == 0 { d as i128 } else { -(d as i128) }).sum();
            prop_assert_eq!(chi, page.euler_characteristic());
            prop_assert!(dims.keys().all(|&n| (0..=4).contains(&n)));
        }
    }
}

#[test]
fn poincare_duality_on_the_full_box() {
    let g = Grassmannian::get(2, 6).unwrap();
    for a in g.basis() {
        for b in g.basis() {
            let p = &Class::sigma(&g, a.parts()).unwrap() * &Class::sigma(&g, b.parts()).unwrap();
            assert_eq!(p.integrate(), i128::from(*b == a.complement(2, 4)), "{a:?} {b:?}");
        }
    }
}

#[test]
fn whitney_sum_of_tautological_sequence() {
    for (k, n) in [(2, 4), (2, 5), (2, 6), (3, 6)] {
        let u = RootBundle::sub(k, n).unwrap();
        let q = RootBundle::quot(k, n).unwrap();
        let total = |b: &RootBundle| {
            chern_classes(b).unwrap().into_iter().reduce(|a, c| &a + &c).unwrap()
        };
        let g = Grassmannian::get(k, n).unwrap();
        assert_eq!(&total(&u) * &total(&q), Class::one(&g), "G({k},{n})");
    }
}

#[test]
fn segre_inverts_chern() {
    // s(E - F) · c(E) = c(F), degree by degree.
    let g = Grassmannian::get(2, 6).unwrap();
    let e = RootBundle::quot(2, 6).unwrap();
    let f = RootBundle::sub(2, 6).unwrap();
    let s = segre_difference(&e, &f).unwrap();
    let ce = chern_classes(&e).unwrap();
    let cf = chern_classes(&f).unwrap();
    for d in 0..=g.dim() {
        let mut lhs = Class::zero(&g);
        for i in 0..=d {
            if let (Some(a), Some(b)) = (s.get(i), ce.get(d - i)) {
                lhs = &lhs + &(a * b);
            }
        }
        let rhs = cf.get(d).cloned().unwrap_or_else(|| Class::zero(&g));
        assert_eq!(lhs, rhs, "degree {d}");
    }
}
