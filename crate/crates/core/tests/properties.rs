use pretab_core::decision::{equivalent, member, Fingerprinter, Verdict, DEFAULT_MAX_BITS};
use pretab_core::finitary::{build_char_model, complete_set, factor_through, to_rnf};
use pretab_core::formula::simplify;
use pretab_core::kripke::{make_frame, valid_on_frame_exhaustive};
use pretab_core::unify::{constant_assignments, ground_unifiers, is_unifier, Budget};
use pretab_core::{parse, Formula, Logic, Substitution};
use proptest::prelude::*;

fn leaf(vars: &'static [&'static str]) -> impl Strategy<Value = Formula> {
    prop_oneof![
        4 => proptest::sample::select(vars).prop_map(Formula::var),
        1 => any::<bool>().prop_map(Formula::constant),
    ]
}

fn formula_over(vars: &'static [&'static str], depth: u32) -> impl Strategy<Value = Formula> {
    leaf(vars).prop_recursive(depth, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            inner.clone().prop_map(Formula::boxed),
            inner.clone().prop_map(Formula::diamond),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

fn small_formula() -> impl Strategy<Value = Formula> {
    formula_over(&["p", "q"], 4)
}

fn logic() -> impl Strategy<Value = Logic> {
    proptest::sample::select(Logic::ALL.to_vec())
}

/// Classical value of a ground formula; in every logic here `[]c` and
/// `<>c` are equivalent to `c` for a constant `c`.
fn fold(f: &Formula) -> bool {
    match f {
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Var(v) => panic!("not ground: {v}"),
        Formula::Not(a) => !fold(a),
        Formula::Box(a) | Formula::Diamond(a) => fold(a),
        Formula::And(a, b) => fold(a) && fold(b),
        Formula::Or(a, b) => fold(a) || fold(b),
        Formula::Implies(a, b) => !fold(a) || fold(b),
        Formula::Iff(a, b) => fold(a) == fold(b),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_is_identity(f in formula_over(&["p", "q", "r"], 6)) {
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn substitution_vars_come_from_images(
        f in formula_over(&["p", "q"], 4),
        a in formula_over(&["q", "s"], 2),
        b in formula_over(&["t"], 2),
    ) {
        let sigma: Substitution = [("p".to_string(), a), ("q".to_string(), b)].into_iter().collect();
        let image = sigma.apply(&f);
        let expected = sigma.range_vars(&f.vars());
        prop_assert_eq!(image.vars(), expected);
    }

    #[test]
    fn composition_applies_inner_first(
        f in formula_over(&["p", "q"], 3),
        a in formula_over(&["q"], 2),
        b in formula_over(&["p"], 2),
    ) {
        let inner: Substitution = [("p".to_string(), a)].into_iter().collect();
        let outer: Substitution = [("q".to_string(), b)].into_iter().collect();
        prop_assert_eq!(inner.then(&outer).apply(&f), outer.apply(&inner.apply(&f)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simplify_is_sound_and_never_grows(f in small_formula(), l in logic()) {
        let s = simplify(&f);
        prop_assert!(s.node_count() <= f.node_count());
        prop_assert_eq!(equivalent(l, &f, &s), Ok(true));
    }

    #[test]
    fn ground_unifiers_match_constant_folding(f in small_formula(), l in logic()) {
        let vars: Vec<String> = f.vars().into_iter().collect();
        let expected: Vec<String> = constant_assignments(&vars)
            .filter(|g| fold(&g.to_substitution().apply(&f)))
            .map(|g| g.to_string())
            .collect();
        let found = ground_unifiers(l, &f).unwrap();
        for g in &found {
            prop_assert_eq!(is_unifier(l, &g.to_substitution(), &f), Ok(true));
        }
        let found: Vec<String> = found.iter().map(ToString::to_string).collect();
        prop_assert_eq!(found, expected);
    }

    #[test]
    fn member_agrees_with_exhaustive_frame_scan(f in small_formula(), l in logic()) {
        let least = (1..=4).find(|&m| !valid_on_frame_exhaustive(&make_frame(l, m).unwrap(), &f).is_valid());
        match (member(l, &f, None).verdict, least) {
            (Verdict::Valid, None) => {}
            (Verdict::Refuted { size, .. }, Some(m)) => prop_assert_eq!(size, m),
            // Refutations past the scanned frames are out of the oracle's reach.
            (Verdict::Refuted { size, .. }, None) => prop_assert!(size > 4),
            (v, l) => prop_assert!(false, "{:?} vs least refuting frame {:?}", v, l),
        }
    }

    #[test]
    fn exact_fingerprints_decide_equivalence(
        f in formula_over(&["p"], 3),
        g in formula_over(&["p"], 3),
        l in proptest::sample::select(vec![Logic::Pm2, Logic::Pm3, Logic::Pm4, Logic::Pm5]),
    ) {
        let fp = Fingerprinter::new(l, &["p".to_string()], DEFAULT_MAX_BITS);
        prop_assert!(fp.is_exact());
        let same = fp.eval(&f) == fp.eval(&g);
        prop_assert_eq!(equivalent(l, &f, &g), Ok(same));
    }

    #[test]
    fn rnf_expands_to_an_equivalent_formula(f in small_formula()) {
        let r = to_rnf(&f).unwrap();
        let back = r.expansion().apply(&r.to_formula());
        for l in [Logic::Pm3, Logic::Pm5] {
            prop_assert_eq!(equivalent(l, &f, &back), Ok(true));
        }
        for d in r.disjuncts() {
            prop_assert_eq!(d.theta1() & !d.theta2(), 0, "reflexivity");
        }
    }

    #[test]
    fn pm2_membership_is_validity_in_t22(f in small_formula()) {
        let model = build_char_model(2, 2).unwrap();
        let valid = member(Logic::Pm2, &f, None).decided().unwrap();
        prop_assert_eq!(model.validates(&f).unwrap(), valid);
    }

    #[test]
    fn pm3_membership_is_validity_in_t23(f in small_formula()) {
        let model = build_char_model(2, 3).unwrap();
        let valid = member(Logic::Pm3, &f, None).decided().unwrap();
        prop_assert_eq!(model.validates(&f).unwrap(), valid);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn complete_sets_unify_and_cover_ground_unifiers(
        f in formula_over(&["p", "q"], 3),
        l in proptest::sample::select(vec![Logic::Pm2, Logic::Pm3]),
    ) {
        let cs = complete_set(&f, l).unwrap();
        let gus = ground_unifiers(l, &f).unwrap();
        prop_assert_eq!(cs.unifiers.is_empty(), gus.is_empty());
        for sigma in &cs.unifiers {
            prop_assert_eq!(is_unifier(l, sigma, &f), Ok(true));
        }
        for gu in gus {
            let hit = factor_through(l, &cs.unifiers, &gu.to_substitution(), &f, &Budget::constants_only());
            prop_assert!(hit.is_some(), "{} does not factor", gu);
        }
    }
}
