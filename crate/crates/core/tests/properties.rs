//! Property tests for the invariants of each module, checked against the
//! reference implementations in `common`.

mod common;

use argeq::afn::{equation_residual, extension_to_solution, preferred_extension_solution, AfnKind};
use argeq::cp::{
    cp_pipeline, cp_pipeline_ordered, down_admissible, down_admissible_ordered, equilibrium_oracle, up_complete,
    up_complete_ordered, PickOrder,
};
use argeq::enhanced::{enhanced_run, EquilibriumMode};
use argeq::gr::{gr_step, run_to_equilibrium, run_to_stable, GRConfig};
use argeq::solver::damped_fixed_point;
use argeq::models::{numafn_solve, pereira_alpha, pereira_beta, NumericalNetwork};
use argeq::semantics::{
    classify_illegal, enumerate_extensions, extension_properties, grounded_extension, is_legal_assignment,
    is_legal_labelling, Semantics, DEFAULT_ORACLE_CAP,
};
use argeq::{ArgSet, Framework, FrameworkFormat, Label, Labelling, Valuation};
use proptest::prelude::*;

/// `(n, edges)` with each ordered pair (self-loops included) present with
/// probability `p`.
fn arb_framework(max_nodes: usize, p: f64) -> impl Strategy<Value = Framework> {
    (1..=max_nodes).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::bool::weighted(p), n * n).prop_map(move |bits| {
            let edges: Vec<(usize, usize)> = (0..n * n).filter(|&i| bits[i]).map(|i| (i / n, i % n)).collect();
            common::framework_from(n, &edges)
        })
    })
}

fn arb_labelled(max_nodes: usize, p: f64) -> impl Strategy<Value = (Framework, Labelling)> {
    arb_framework(max_nodes, p).prop_flat_map(|fw| {
        let n = fw.len();
        proptest::collection::vec(prop_oneof![Just(Label::In), Just(Label::Out), Just(Label::Undec)], n)
            .prop_map(move |labels| (fw.clone(), Labelling::new(labels)))
    })
}

fn binomial_lower_tail(n: usize, d: usize) -> f64 {
    let mut c = 1.0;
    let mut sum = 0.0;
    for j in 0..d.min(n + 1) {
        sum += c;
        c = c * (n - j) as f64 / (j + 1) as f64;
    }
    sum * 2f64.powi(-(n as i32))
}

fn arb_valued(max_nodes: usize, p: f64) -> impl Strategy<Value = (Framework, Valuation)> {
    arb_framework(max_nodes, p).prop_flat_map(|fw| {
        let n = fw.len();
        proptest::collection::vec(prop_oneof![Just(0.0), Just(0.5), Just(1.0), 0.0..=1.0], n)
            .prop_map(move |values| {
                let v = Valuation::new(&fw, values).unwrap();
                (fw.clone(), v)
            })
    })
}

fn all_args(fw: &Framework) -> ArgSet {
    (0..fw.len()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn attackers_and_attacked_set(fw in arb_framework(8, 0.3)) {
        let with_attackers: ArgSet = (0..fw.len()).filter(|&x| !fw.attackers(x).is_empty()).collect();
        prop_assert_eq!(fw.attacked_set(&all_args(&fw)).unwrap(), with_attackers);
        for x in 0..fw.len() {
            prop_assert!(fw.attackers(x).iter().all(|&y| y < fw.len() && fw.has_attack(y, x)));
        }
    }

    #[test]
    fn sccs_partition_and_reachability(fw in arb_framework(12, 0.15)) {
        let comps = fw.sccs();
        let mut seen = ArgSet::new();
        for c in &comps {
            for &x in c {
                prop_assert!(seen.insert(x));
                for &y in c {
                    prop_assert!(common::reachable(&fw, x, y));
                }
            }
        }
        prop_assert_eq!(seen, all_args(&fw));
        // maximality: no two components are mutually reachable
        for (i, a) in comps.iter().enumerate() {
            for b in &comps[i + 1..] {
                let (x, y) = (*a.iter().next().unwrap(), *b.iter().next().unwrap());
                prop_assert!(!(common::reachable(&fw, x, y) && common::reachable(&fw, y, x)));
            }
        }
    }

    #[test]
    fn attack_depth_matches_path_search(fw in arb_framework(8, 0.15)) {
        for x in 0..fw.len() {
            prop_assert_eq!(fw.attack_depth(x).ok(), common::brute_depth(&fw, x));
        }
    }

    #[test]
    fn framework_text_round_trip(fw in arb_framework(8, 0.3)) {
        for format in [FrameworkFormat::Apx, FrameworkFormat::EdgeList] {
            prop_assert_eq!(Framework::parse(&fw.to_text(format), format).unwrap(), fw.clone());
        }
    }

    #[test]
    fn enumeration_matches_subset_search(fw in arb_framework(7, 0.25)) {
        let to_sets = |v: Vec<ArgSet>| v;
        let complete = enumerate_extensions(&fw, Semantics::Complete, DEFAULT_ORACLE_CAP).unwrap();
        prop_assert_eq!(to_sets(complete.clone()), common::brute_complete(&fw));
        prop_assert_eq!(
            enumerate_extensions(&fw, Semantics::Preferred, DEFAULT_ORACLE_CAP).unwrap(),
            common::brute_preferred(&fw)
        );
        prop_assert_eq!(
            enumerate_extensions(&fw, Semantics::Stable, DEFAULT_ORACLE_CAP).unwrap(),
            common::brute_stable(&fw)
        );
        let grounded = grounded_extension(&fw);
        prop_assert!(complete.contains(&grounded));
        prop_assert!(complete.iter().all(|e| grounded.is_subset(e)));
    }

    #[test]
    fn legal_labelling_iff_complete((fw, lab) in arb_labelled(7, 0.25)) {
        let legal = classify_illegal(&fw, &lab).is_legal();
        prop_assert_eq!(legal, is_legal_labelling(&fw, &lab));
        if legal {
            prop_assert!(common::complete(&fw, &lab.in_set()));
        }
        let from_in = Labelling::from_extension(&fw, &lab.in_set()).unwrap();
        prop_assert_eq!(common::complete(&fw, &lab.in_set()), is_legal_labelling(&fw, &from_in));
        prop_assert_eq!(is_legal_assignment(&fw, &lab.to_valuation()), legal);
    }

    #[test]
    fn extension_flags_chain((fw, lab) in arb_labelled(7, 0.25)) {
        let e = lab.in_set();
        let r = extension_properties(&fw, &e, DEFAULT_ORACLE_CAP).unwrap();
        prop_assert!(!r.complete || r.admissible);
        prop_assert!(!r.admissible || r.conflict_free);
        prop_assert!(!r.stable || r.conflict_free);
        prop_assert!(r.preferred != Some(true) || r.complete);
        prop_assert_eq!(r.admissible, common::admissible(&fw, &e));
        prop_assert_eq!(r.complete, common::complete(&fw, &e));
    }

    #[test]
    fn complete_extensions_solve_min_equations(fw in arb_framework(7, 0.25)) {
        for e in common::brute_complete(&fw) {
            let v = extension_to_solution(&fw, &e).unwrap();
            prop_assert_eq!(equation_residual(&fw, &AfnKind::Min, &v), 0.0);
            prop_assert_eq!(v.in_set(), e);
        }
    }

    #[test]
    fn eq_max_min_duality((fw, v) in arb_valued(7, 0.3)) {
        for x in 0..fw.len() {
            let one_minus_max = 1.0 - fw.attackers(x).iter().map(|&y| v.get(y)).fold(0.0, f64::max);
            let min_of_complements = AfnKind::Min.eval(
                &fw.attackers(x).iter().map(|&y| 1.0 - v.get(y)).collect::<Vec<_>>()
            ).unwrap();
            prop_assert_eq!(one_minus_max, min_of_complements);
        }
    }

    #[test]
    fn gr_equilibria_solve_equations((fw, v) in arb_valued(7, 0.25)) {
        let r = run_to_equilibrium(&fw, &v, &AfnKind::Min, &GRConfig::default()).unwrap();
        prop_assert!(r.converged());
        prop_assert_eq!(equation_residual(&fw, &AfnKind::Min, &r.equilibrium), 0.0);
        prop_assert!(common::complete(&fw, &r.equilibrium.in_set()));
    }

    #[test]
    fn gr_step_preserves_range_and_crisp_values((fw, v) in arb_valued(8, 0.3)) {
        let next = gr_step(&fw, &v, &AfnKind::Min);
        for x in 0..fw.len() {
            let (a, b) = (v.get(x), next.get(x));
            prop_assert!((0.0..=1.0).contains(&b));
            prop_assert!(!(a == 0.0 && b == 1.0));
            prop_assert!(!(a == 1.0 && b == 0.0));
            prop_assert!(!(a > 0.0 && a < 1.0) || (b > 0.0 && b < 1.0));
        }
        let (ia, oa) = v.in_out_sets();
        let (ib, ob) = next.in_out_sets();
        prop_assert!(ib.is_subset(&ia) && ob.is_subset(&oa));
    }

    #[test]
    fn stable_index_bound_and_down_admissible((fw, v) in arb_valued(10, 0.25)) {
        let (k, settled) = run_to_stable(&fw, &v, &AfnKind::Min).unwrap();
        prop_assert!(k <= fw.len());
        let da = down_admissible(&fw, &v.to_labelling()).final_labelling;
        prop_assert_eq!(settled.in_out_sets(), (da.in_set(), da.out_set()));
    }

    #[test]
    fn equilibrium_matches_labelling_pipeline((fw, v) in arb_valued(10, 0.25)) {
        let r = run_to_equilibrium(&fw, &v, &AfnKind::Min, &GRConfig::default()).unwrap();
        prop_assert!(r.converged());
        prop_assert_eq!(&r.equilibrium, &equilibrium_oracle(&fw, &v));
        prop_assert_eq!(r.equilibrium.to_labelling(), cp_pipeline(&fw, &v.to_labelling()));
    }

    #[test]
    fn product_kind_keeps_stability_bound((fw, v) in arb_valued(8, 0.25)) {
        let (k, _) = run_to_stable(&fw, &v, &AfnKind::Product).unwrap();
        prop_assert!(k <= fw.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn contraction_and_expansion_order_independent((fw, lab) in arb_labelled(8, 0.25)) {
        let first = down_admissible_ordered(&fw, &lab, PickOrder::First);
        let last = down_admissible_ordered(&fw, &lab, PickOrder::Last);
        prop_assert_eq!(&first.final_labelling, &last.final_labelling);
        prop_assert!(first.steps.len() <= fw.len());
        let up_first = up_complete_ordered(&fw, &first.final_labelling, PickOrder::First).unwrap();
        let up_last = up_complete_ordered(&fw, &first.final_labelling, PickOrder::Last).unwrap();
        prop_assert_eq!(&up_first.final_labelling, &up_last.final_labelling);
        prop_assert_eq!(
            cp_pipeline_ordered(&fw, &lab, PickOrder::Last),
            cp_pipeline(&fw, &lab)
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn down_admissible_is_largest_below((fw, lab) in arb_labelled(7, 0.25)) {
        let trace = down_admissible(&fw, &lab);
        let fin = &trace.final_labelling;
        prop_assert!(trace.steps.iter().all(|s| s.to == Label::Undec && s.from != Label::Undec));
        prop_assert!(common::labelling_admissible(&fw, fin));
        prop_assert!(common::admissible(&fw, &fin.in_set()));
        prop_assert_eq!(
            common::largest_admissible_below(&fw, &lab),
            Some((fin.in_set(), fin.out_set()))
        );
    }

    #[test]
    fn up_complete_is_least_complete_above((fw, lab) in arb_labelled(7, 0.25)) {
        let da = down_admissible(&fw, &lab).final_labelling;
        let trace = up_complete(&fw, &da).unwrap();
        prop_assert!(trace.steps.iter().all(|s| s.from == Label::Undec));
        let fin = trace.final_labelling.in_set();
        let supersets: Vec<ArgSet> = common::brute_complete(&fw)
            .into_iter()
            .filter(|e| da.in_set().is_subset(e))
            .collect();
        prop_assert!(supersets.contains(&fin));
        prop_assert!(supersets.iter().all(|e| fin.is_subset(e)));
    }

    #[test]
    fn enhanced_sound_terminating_improving((fw, v) in arb_valued(8, 0.25)) {
        let cfg = GRConfig::default();
        let r = enhanced_run(&fw, &v, &cfg, EquilibriumMode::Oracle).unwrap();
        prop_assert!(common::complete(&fw, &r.final_extension));
        prop_assert!(r.rounds.len() <= fw.len() + 1);
        prop_assert!(equilibrium_oracle(&fw, &v).in_set().is_subset(&r.final_extension));
        for w in r.rounds.windows(2) {
            prop_assert!(w[0].crisp.is_subset(&w[1].crisp));
        }
        // the reported extension is the in-set of the last two equilibria alike
        if r.rounds.len() >= 2 {
            let prev = &r.rounds[r.rounds.len() - 2].equilibrium;
            prop_assert_eq!(prev.in_set(), r.final_extension.clone());
        }
        let it = enhanced_run(&fw, &v, &cfg, EquilibriumMode::Iterative).unwrap();
        prop_assert_eq!(it.final_extension, r.final_extension);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn preferred_extensions_have_product_solutions(fw in arb_framework(6, 0.3)) {
        for e in common::brute_preferred(&fw) {
            let v = preferred_extension_solution(&fw, &AfnKind::Product, &e, 1e-13, 1_000_000).unwrap();
            prop_assert!(equation_residual(&fw, &AfnKind::Product, &v) < 1e-9);
            prop_assert_eq!(v.in_set(), e.clone());
            let attacked = fw.attacked_set(&e).unwrap();
            prop_assert_eq!(v.in_out_sets().1, attacked);
        }
    }

    #[test]
    fn near_solutions_give_complete_extensions((fw, v) in arb_valued(7, 0.25)) {
        for kind in [AfnKind::Min, AfnKind::Product] {
            let solved = damped_fixed_point(
                v.values(),
                |cur, next| {
                    for (x, out) in next.iter_mut().enumerate() {
                        *out = kind.attack_value(&fw, cur, x);
                    }
                },
                0.5,
                1e-15,
                200_000,
            );
            let Ok((values, _)) = solved else { continue };
            let sol = Valuation::new(&fw, values).unwrap();
            if equation_residual(&fw, &kind, &sol) < 1e-12 {
                // float solutions land next to 1, not on it
                let near_in: ArgSet = (0..fw.len()).filter(|&x| sol.get(x) > 1.0 - 1e-6).collect();
                prop_assert!(common::complete(&fw, &near_in), "{:?} from {:?}", sol.values(), v.values());
            }
        }
    }

    #[test]
    fn pereira_alpha_approaches_beta(fw in arb_framework(8, 0.2), seed in proptest::collection::vec(0.0..=1.0f64, 8)) {
        prop_assume!(fw.is_acyclic());
        let f = Valuation::new(&fw, seed[..fw.len()].to_vec()).unwrap();
        let beta = pereira_beta(&fw, &f).unwrap();
        let depth = fw.attack_depths().unwrap().into_iter().max().unwrap_or(0);
        let alpha = pereira_alpha(&fw, &f, 80);
        for (n, a) in alpha.iter().enumerate().skip(depth) {
            // error at depth d is at most P(Bin(n, 1/2) < d); 2^-n alone is only right for d <= 1
            let bound = binomial_lower_tail(n, depth) * fw.len() as f64 + 4.0 * f64::EPSILON;
            prop_assert!(a.max_abs_diff(&beta) <= bound, "n = {} diff {} bound {}", n, a.max_abs_diff(&beta), bound);
        }
    }

    #[test]
    fn product_numafn_reproduces_grounded_on_acyclic(fw in arb_framework(8, 0.2)) {
        prop_assume!(fw.is_acyclic());
        let net = NumericalNetwork::new(fw.clone(), Valuation::constant(fw.len(), 1.0), AfnKind::Product, AfnKind::Product)
            .unwrap();
        let v = numafn_solve(&net, 0.5, &GRConfig::default()).unwrap();
        let grounded = grounded_extension(&fw);
        for x in 0..fw.len() {
            let want = if grounded.contains(&x) { 1.0 } else { 0.0 };
            prop_assert!((v.get(x) - want).abs() < 1e-10);
        }
    }
}
