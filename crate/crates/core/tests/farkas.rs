use std::collections::BTreeSet;

use irrtri::catalog;
use irrtri::certificate::{build_good_s, full_partition, Mode};
use irrtri::farkas::{
    builtin_table, combine, hypotheses, instantiate, parse_table, rat, verify_derivation, verify_paper_derivation,
    verify_step, FarkasError, Inequality, LinForm, Registry,
};
use num_rational::BigRational;

#[test]
fn full_derivation_reaches_13g_minus_4() {
    let log = verify_paper_derivation(Mode::Full).unwrap();
    assert_eq!(log.conclusion.to_string(), "21|V(G)| <= 273g - 72");
    assert_eq!(log.conclusion.pretty(), "21|V(G)| ≤ 273g − 72");
    let r = log.rounded.unwrap();
    assert_eq!(r.to_string(), "|V(G)| <= 13g - 4");
    assert_eq!(r.at(1), 9);
    assert_eq!(r.at(2), 22);
    let names: Vec<&str> = log.steps.iter().map(|s| s.name.as_str()).collect();
    for k in 1..=8 {
        assert!(names.contains(&format!("step{k}").as_str()));
    }
}

#[test]
fn simple_derivation_reaches_25g_minus_12() {
    let log = verify_paper_derivation(Mode::Simple).unwrap();
    assert_eq!(log.conclusion.to_string(), "|V(G)| <= 25g - 12");
    assert_eq!(log.rounded.unwrap().at(1), 13);
}

#[test]
fn step1_matches_the_quoted_form() {
    let steps = parse_table(builtin_table(Mode::Full)).unwrap();
    let step1 = steps.iter().find(|s| s.name == "step1").unwrap();
    let quoted = Inequality::parse(
        "q",
        "4|U_5| + 2|U_7| + 5|A_4| + 3|A_5| + |A_6| + |A_7| + 10|S_8| + 10|S_9| \
         <= 38|S_4| + 35|S_5| + 8|S_6| + 11|S_7| + 10g",
    )
    .unwrap();
    assert!(step1.claim.same_as(&quoted));
    assert_eq!(step1.slacks, vec![LinForm::parse("4c_4").unwrap()]);
    assert!(verify_step(step1, &Registry::for_mode(Mode::Full)).unwrap().ok);
}

#[test]
fn step3_is_a_plain_combination() {
    let reg = Registry::for_mode(Mode::Full);
    let f = combine(&[
        (rat(12), reg.get("Ui.6").unwrap()),
        (rat(5), reg.get("Ui.7").unwrap()),
        (rat(11), reg.get("Ui.8").unwrap()),
    ])
    .unwrap();
    let quoted = Inequality::parse(
        "step3",
        "7|U_6| + 11|U_8| <= 12|U_5| + 6|U_7| + 72|S_6| + 35|S_7| + 88|S_8|",
    )
    .unwrap();
    assert_eq!(f, quoted.normalized());
}

#[test]
fn corrupted_multiplier_leaves_a_residual() {
    let mut steps = parse_table(builtin_table(Mode::Full)).unwrap();
    let step3 = steps.iter_mut().find(|s| s.name == "step3").unwrap();
    let slot = step3.multipliers.iter_mut().find(|(_, id)| id == "Ui.8").unwrap();
    slot.0 = rat(10);
    let check = verify_step(step3, &Registry::for_mode(Mode::Full)).unwrap();
    assert!(!check.ok);
    assert!(check.residual.variables().any(|v| v == "|U_8|"));
}

fn replay(mode: Mode, steps: &[irrtri::farkas::DerivationStep]) -> Result<(), FarkasError> {
    verify_derivation(mode, steps, Registry::for_mode(mode)).map(|_| ())
}

#[test]
fn every_single_mutation_is_caught() {
    for mode in [Mode::Full, Mode::Simple] {
        let steps = parse_table(builtin_table(mode)).unwrap();
        replay(mode, &steps).unwrap();
        let mut mutants = 0;
        for (k, step) in steps.iter().enumerate() {
            for (m, (coef, id)) in step.multipliers.iter().enumerate() {
                let half = BigRational::new(1.into(), 2.into());
                for new in [coef + rat(1), coef * rat(2), coef * &half, coef - &half] {
                    let mut mutated = steps.clone();
                    mutated[k].multipliers[m].0 = new.clone();
                    let err = replay(mode, &mutated);
                    assert!(err.is_err(), "{mode:?} {}: {id} -> {new} still verifies", step.name);
                    mutants += 1;
                }
                let mut dropped = steps.clone();
                dropped[k].multipliers.remove(m);
                assert!(replay(mode, &dropped).is_err(), "{mode:?} {}: dropping {id} still verifies", step.name);
                mutants += 1;
            }
            for s in 0..step.slacks.len() {
                let mut dropped = steps.clone();
                dropped[k].slacks.remove(s);
                assert!(replay(mode, &dropped).is_err());
                mutants += 1;
            }
        }
        assert!(mutants > 20);
    }
}

#[test]
fn removing_a_used_hypothesis_fails() {
    for mode in [Mode::Full, Mode::Simple] {
        let steps = parse_table(builtin_table(mode)).unwrap();
        let step_names: BTreeSet<&str> = steps.iter().map(|s| s.name.as_str()).collect();
        let used: BTreeSet<&str> = steps
            .iter()
            .flat_map(|s| s.multipliers.iter().map(|(_, id)| id.as_str()))
            .filter(|id| !step_names.contains(id))
            .collect();
        for id in used {
            let mut reg = Registry::for_mode(mode);
            reg.remove(id).unwrap();
            let err = verify_derivation(mode, &steps, reg).unwrap_err();
            assert!(matches!(err, FarkasError::UnknownId { .. }), "{id}: {err}");
        }
    }
}

#[test]
fn negative_multipliers_and_slacks_are_rejected() {
    let reg = Registry::for_mode(Mode::Full);
    let mut steps = parse_table(builtin_table(Mode::Full)).unwrap();
    steps[0].multipliers[0].0 = rat(-4);
    assert!(matches!(
        verify_step(&steps[0], &reg),
        Err(FarkasError::NegativeMultiplier { .. })
    ));
    let mut steps = parse_table(builtin_table(Mode::Full)).unwrap();
    steps[0].slacks[0] = LinForm::parse("-4c_4").unwrap();
    assert!(matches!(verify_step(&steps[0], &reg), Err(FarkasError::NegativeSlack { .. })));
}

#[test]
fn hypotheses_instantiate_on_small_instances() {
    for (name, t) in [
        ("k6", catalog::k6_projective()),
        ("k7-k3", catalog::k7_minus_k3()),
        ("k7", catalog::k7_torus()),
    ] {
        let good = build_good_s(&t).unwrap();
        let vars = full_partition(&t, &good).unwrap().variables();
        for h in hypotheses(Mode::Full) {
            let i = instantiate(&h, &vars).unwrap();
            assert!(i.holds, "{name}: {} fails with gap {}", h.id, i.gap);
        }
        let log = verify_paper_derivation(Mode::Full).unwrap();
        for s in &log.steps {
            assert!(instantiate(&s.claim, &vars).unwrap().holds, "{name}: {}", s.name);
        }
    }
}

#[test]
fn instantiation_examples() {
    let hyps = hypotheses(Mode::Full);
    let get = |id: &str| hyps.iter().find(|h| h.id == id).unwrap().clone();

    let t = catalog::k7_torus();
    let vars = full_partition(&t, &build_good_s(&t).unwrap()).unwrap().variables();
    let whole = instantiate(&get("WholeGraph"), &vars).unwrap();
    assert!(whole.holds);
    assert_eq!(whole.gap, "0");
    assert_eq!(vars["e(N)"] + vars["e(S,N)"], 21);
    let sg = instantiate(&get("Sg"), &vars).unwrap();
    assert!(sg.holds);
    assert_eq!(sg.gap, "1");

    let t = catalog::k6_projective();
    let vars = full_partition(&t, &build_good_s(&t).unwrap()).unwrap().variables();
    let n = instantiate(&get("N"), &vars).unwrap();
    assert!(n.holds);
    assert_eq!(n.gap, "0");
}
