use lieherm::coordgeo::{cmax, hopf_factor, CMat, C};
use lieherm::flagspace::{
    build_flag, closed_form_witness, enumerate_complex_structures, flag_model, FlagComplexStructure, FlagMetric,
};
use lieherm::groupgeom::canonical_metric;
use lieherm::groupgeom::nilpotent::{nilpotent_report, NilpotentNormalForm};
use lieherm::hermgeo::check_conditions;
use lieherm::rootsys::{build_root_system, chevalley_constants, CartanType};
use lieherm::scalar::{fmt_q, parse_q, Q, Qi};
use proptest::prelude::*;

fn ct(s: &str) -> CartanType {
    s.parse().unwrap()
}

fn positive_q() -> impl Strategy<Value = Q> {
    (1i128..12, 1i128..6).prop_map(|(n, d)| Q::new(n, d))
}

fn gaussian() -> impl Strategy<Value = Qi> {
    (-6i128..=6, -6i128..=6, 1i128..5).prop_map(|(a, b, d)| Qi::new(Q::new(a, d), Q::new(b, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rationals_round_trip(n in -1000i128..1000, d in 1i128..200) {
        let x = Q::new(n, d);
        prop_assert_eq!(parse_q(&fmt_q(&x)).unwrap(), x);
    }

    #[test]
    fn chevalley_constants_antisymmetric_and_sized_by_strings(
        t in prop::sample::select(vec!["A2", "A3", "B2", "B3", "C3", "G2"]),
        i in 0usize..64,
        j in 0usize..64,
    ) {
        let rs = build_root_system(ct(t));
        let ch = chevalley_constants(&rs);
        let (a, b) = (i % rs.len(), j % rs.len());
        prop_assert_eq!(ch.n(b, a), -ch.n(a, b));
        prop_assert_eq!(ch.n(rs.neg(a), rs.neg(b)), -ch.n(a, b));
        if rs.sum(a, b).is_some() {
            let (p, _) = rs.root_string(a, b).unwrap();
            prop_assert_eq!(ch.n(a, b).unsigned_abs() as usize, p + 1);
        } else {
            prop_assert_eq!(ch.n(a, b), 0);
        }
    }

    #[test]
    fn full_su3_flag_metrics(g in prop::collection::vec(positive_q(), 3), k in 0usize..6) {
        let fm = build_flag(ct("A2"), &[]).unwrap();
        let cs = enumerate_complex_structures(&fm).swap_remove(k);
        let metric = FlagMetric::new(&fm, g.clone()).unwrap();
        prop_assert_eq!(closed_form_witness(&fm, &cs, &metric).unwrap(), None);
        let r = check_conditions(&flag_model(&fm, &cs, &metric).unwrap());
        prop_assert!(r.balanced.holds);
        prop_assert!(r.bismut_torsion_skew.holds);
        prop_assert!(r.paths_agree);
        if r.btp.holds && !r.kahler.holds {
            prop_assert!(g.iter().all(|x| *x == g[0]), "non-Kähler BTP metric {:?} is not constant", g);
        }
    }

    #[test]
    fn standard_su3_sum_rule_is_kahler(g in prop::collection::vec(positive_q(), 2)) {
        let fm = build_flag(ct("A2"), &[]).unwrap();
        let cs = FlagComplexStructure::standard(&fm);
        // Orbits of the full flag are single roots: α, β and α + β.
        let rs = fm.root_system();
        let values: Vec<Q> = fm
            .classes()
            .iter()
            .map(|c| match &rs.root(c[0]).0[..] {
                [1, 0] => g[0],
                [0, 1] => g[1],
                _ => g[0] + g[1],
            })
            .collect();
        let metric = FlagMetric::new(&fm, values).unwrap();
        let r = check_conditions(&flag_model(&fm, &cs, &metric).unwrap());
        prop_assert!(r.kahler.holds && r.btp.holds);
    }

    #[test]
    fn nilpotent_normal_forms(n in 2usize..=3, r_off in 0usize..2, ys in prop::collection::vec(gaussian(), 4)) {
        let r = 1 + r_off % (n - 1);
        let y: Vec<Vec<Qi>> = (0..n - r).map(|a| (0..r).map(|i| ys[(a * r + i) % ys.len()]).collect()).collect();
        let nf = NilpotentNormalForm::new(n, r, y).unwrap();
        let rep = nilpotent_report(&nf).unwrap();
        prop_assert!(rep.two_step && rep.j_abelian && rep.c_vanishes && rep.d_matches);
        prop_assert!(rep.theta_b_diagonal);
        prop_assert!(rep.curvature_formula_matches && rep.curvature_closed_form_matches);
        prop_assert!(!rep.btp || rep.bas);
    }

    #[test]
    fn hopf_factor_is_the_projector_off_z(re in prop::collection::vec(-2.0f64..2.0, 3), im in prop::collection::vec(-2.0f64..2.0, 3)) {
        let z: Vec<C> = re.iter().zip(&im).map(|(a, b)| C::new(*a, *b)).collect();
        prop_assume!(z.iter().map(|w| w.norm_sqr()).sum::<f64>() > 0.1);
        let xi = hopf_factor(&z);
        prop_assert!(cmax(&(&xi * &xi - &xi)) < 1e-12);
        prop_assert!(cmax(&(xi.adjoint() - &xi)) < 1e-12);
        let zbar = CMat::from_fn(3, 1, |i, _| z[i].conj());
        prop_assert!(cmax(&(&xi * zbar)) < 1e-12);
    }
}

#[test]
fn killing_forms_are_ad_invariant() {
    for t in ["A1", "A2", "B2", "G2"] {
        let c = canonical_metric(ct(t));
        let b = c.metric.algebra.killing_form();
        assert_eq!(c.metric.algebra.ad_invariance_witness(&b), None, "{t}");
        assert_eq!(c.metric.algebra.jacobi_residual().1, None, "{t}");
    }
}
