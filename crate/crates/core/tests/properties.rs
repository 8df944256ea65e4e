//! Invariants checked on generated inputs.

mod common;

use common::{ideal, ring, transverse_pairs};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use transverse::complex::star_product_all;
use transverse::dg::{koszul_module_action, star_degree_one_product, taylor_dg_product};
use transverse::golod::koszul_homology;
use transverse::ideal::{is_sequentially_transverse, is_transverse};
use transverse::obstruction::{avramov_obstruction, tate_rank, tate_resolution};
use transverse::resolution::{minimize_complex, taylor_complex, verify_resolution};
use transverse::strand::strand_homology;
use transverse::{Monomial, MonomialIdeal, Polynomial};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn pair(seed: u64) -> (transverse::Ring, MonomialIdeal, MonomialIdeal) {
    transverse_pairs(seed, 1).pop().unwrap()
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn taylor_complexes_are_valid(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = ring(4);
        let i = common::random_ideal(&mut rng, 4, &[0, 1, 2, 3], 5);
        let t = taylor_complex(&r, &i).unwrap();
        prop_assert!(t.is_valid());
        prop_assert!(minimize_complex(&t).unwrap().is_valid());
    }

    #[test]
    fn tensor_and_star_are_complexes(seed in any::<u64>()) {
        let (r, i, j) = pair(seed);
        let f = taylor_complex(&r, &i).unwrap();
        let g = taylor_complex(&r, &j).unwrap();
        prop_assert!(f.tensor(&g).unwrap().is_valid());
        let s = f.star_product(&g).unwrap();
        prop_assert!(s.is_valid());
        // rank (F*G)_n = Σ_{a+b=n+1} rank F_a · rank G_b
        for n in 1..=s.length() {
            let want: usize = (1..=n).map(|a| f.rank(a) * g.rank(n + 1 - a)).sum();
            prop_assert_eq!(s.rank(n), want);
        }
    }

    #[test]
    fn star_betti_table_is_symmetric(seed in any::<u64>()) {
        let (r, i, j) = pair(seed);
        let f = minimize_complex(&taylor_complex(&r, &i).unwrap()).unwrap();
        let g = minimize_complex(&taylor_complex(&r, &j).unwrap()).unwrap();
        let fg = f.star_product(&g).unwrap().betti_table().unwrap();
        let gf = g.star_product(&f).unwrap().betti_table().unwrap();
        prop_assert_eq!(fg, gf);
    }

    #[test]
    fn minimization_keeps_the_resolution(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = ring(3);
        let i = common::random_ideal(&mut rng, 3, &[0, 1, 2], 4);
        let m = minimize_complex(&taylor_complex(&r, &i).unwrap()).unwrap();
        prop_assert!(m.is_minimal());
        prop_assert!(verify_resolution(&m, &i, None).unwrap().pass());
    }

    #[test]
    fn koszul_homology_gives_betti_numbers(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = ring(4);
        let i = common::random_ideal(&mut rng, 4, &[0, 1, 2, 3], 4);
        let betti = minimize_complex(&taylor_complex(&r, &i).unwrap()).unwrap().betti_table().unwrap();
        let h = koszul_homology(&r, &i).unwrap();
        let from_koszul: Vec<((usize, u32), usize)> = h.graded_dims();
        let from_betti: Vec<((usize, u32), usize)> = betti.entries().filter(|((i, _), _)| *i > 0).collect();
        prop_assert_eq!(from_koszul, from_betti);
    }

    #[test]
    fn tate_ranks_follow_the_formula(seed in any::<u64>(), n_max in 1usize..5) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = ring(4);
        // one or two generators on disjoint variables
        let a = common::random_ideal(&mut rng, 4, &[0, 1], 1);
        let b = common::random_ideal(&mut rng, 4, &[2, 3], 1);
        let seq = if seed % 2 == 0 { a.clone() } else { a.sum(&b).unwrap() };
        let t = tate_resolution(&r, &seq, n_max).unwrap();
        let want: Vec<usize> = (0..=n_max).map(|n| tate_rank(4, seq.len(), n)).collect();
        prop_assert_eq!(t.ranks(), want);
        prop_assert!(t.complex().is_valid());
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn star_products_resolve_transverse_products(seed in any::<u64>()) {
        let (r, i, j) = pair(seed);
        prop_assert!(is_transverse(&i, &j).unwrap());
        let f = minimize_complex(&taylor_complex(&r, &i).unwrap()).unwrap();
        let g = minimize_complex(&taylor_complex(&r, &j).unwrap()).unwrap();
        let ij = i.product(&j).unwrap();
        let cert = verify_resolution(&f.star_product(&g).unwrap(), &ij, None).unwrap();
        prop_assert!(cert.pass(), "{:?}", cert);
    }

    #[test]
    fn sequential_triples(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = ring(6);
        let ideals = [
            common::random_ideal(&mut rng, 6, &[0, 1], 2),
            common::random_ideal(&mut rng, 6, &[2, 3], 2),
            common::random_ideal(&mut rng, 6, &[4, 5], 2),
        ];
        prop_assert!(is_sequentially_transverse(&ideals).unwrap());
        let cs: Vec<_> = ideals.iter().map(|i| minimize_complex(&taylor_complex(&r, i).unwrap()).unwrap()).collect();
        let s = star_product_all(&cs).unwrap();
        let prod = ideals[0].product(&ideals[1]).unwrap().product(&ideals[2]).unwrap();
        prop_assert!(verify_resolution(&s, &prod, None).unwrap().pass());
    }

    #[test]
    fn star_degree_one_products_certify(seed in any::<u64>()) {
        let (r, i, j) = pair(seed);
        let f = taylor_dg_product(&r, &i).unwrap();
        let g = taylor_dg_product(&r, &j).unwrap();
        let s = star_degree_one_product(f.complex(), g.complex(), &f.degree_one(), &g.degree_one()).unwrap();
        prop_assert!(s.certify().pass());
    }

    #[test]
    fn module_action_forces_vanishing_obstructions(seed in any::<u64>()) {
        // a single minimal generator of IJ is a regular sequence inside IJ
        let (r, i, j) = pair(seed);
        let f = taylor_dg_product(&r, &i).unwrap();
        let g = taylor_dg_product(&r, &j).unwrap();
        let s = star_degree_one_product(f.complex(), g.complex(), &f.degree_one(), &g.degree_one()).unwrap();
        let ij = i.product(&j).unwrap();
        let gen: &Monomial = &ij.gens()[(seed % ij.len() as u64) as usize];
        let a = Polynomial::monomial(gen.clone(), r.field());
        let action = koszul_module_action(&s, &[a]).unwrap();
        prop_assert!(action.certify().pass());
        let seq = MonomialIdeal::new(r.nvars(), vec![gen.clone()]).unwrap();
        let report = avramov_obstruction(&r, &seq, &ij, None).unwrap();
        prop_assert!(report.well_defined());
        prop_assert!(report.vanishes(), "{}", report.render());
        for row in &report.rows {
            prop_assert!(row.obstruction <= row.tor_r);
        }
    }
}

#[test]
fn strand_homology_of_koszul_matches_taylor_betti_numbers() {
    let r = ring(4);
    let i = ideal(&r, &["x1^2", "x1*x2", "x2*x3", "x3*x4", "x4^2"]);
    let betti = minimize_complex(&taylor_complex(&r, &i).unwrap())
        .unwrap()
        .betti_table()
        .unwrap();
    let k = transverse::koszul::KoszulAlgebra::new(&r);
    for ((hom, t), b) in betti.entries() {
        assert_eq!(
            strand_homology(k.complex(), Some(&i), t, hom).dim(),
            b,
            "β_({hom},{t})"
        );
    }
}
