//! Property tests over seed-generated charts.

use proptest::prelude::*;

use sfc2bip::bip::BipOptions;
use sfc2bip::expr::Value;
use sfc2bip::graph::Limits;
use sfc2bip::invariants::{
    eval_sfc, parse_sfc_inv, resolve_bip, resolve_sfc, structural_invariant, t_i, t_r, Inv, SfcAtom, SfcInv,
};
use sfc2bip::random::{random_sfc, random_translatable, Shape};
use sfc2bip::sfc::{reachable_configs, Configuration, Sem, SemOptions, SfcLabel, SfcModel};
use sfc2bip::simcheck::{check_g1b, replay_witness, settled_initial, static_raw_warning, Relation, RelationOptions, Rule3, Verdict};
use sfc2bip::transform::{transform, TransformOptions};

fn configs(m: &SfcModel) -> Vec<Configuration> {
    reachable_configs(m, SemOptions::default(), Limits { max_states: 400, max_edges: 20_000 }).nodes
}

/// Random formula text over a chart's names.
#[derive(Debug, Clone)]
enum F {
    Active(usize),
    Enabled(usize),
    Cmp(usize, i64),
    Not(Box<F>),
    And(Box<F>, Box<F>),
    Or(Box<F>, Box<F>),
}

fn formula() -> impl Strategy<Value = F> {
    let leaf = prop_oneof![
        (0usize..8).prop_map(F::Active),
        (0usize..8).prop_map(F::Enabled),
        (0usize..8, 0i64..8).prop_map(|(v, k)| F::Cmp(v, k)),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|f| F::Not(Box::new(f))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| F::And(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| F::Or(Box::new(a), Box::new(b))),
        ]
    })
}

fn render(f: &F, m: &SfcModel) -> String {
    match f {
        F::Active(i) => format!("active({})", m.steps[i % m.steps.len()].name),
        F::Enabled(i) => format!("enabled({})", m.actions[i % m.actions.len()].name),
        F::Cmp(i, k) => {
            let d = &m.vars.0[i % m.vars.len()];
            match d.init {
                Value::Int(_) => format!("{} <= {k}", d.name),
                Value::Bool(_) => d.name.clone(),
            }
        }
        F::Not(a) => format!("!({})", render(a, m)),
        F::And(a, b) => format!("({}) && ({})", render(a, m), render(b, m)),
        F::Or(a, b) => format!("({}) || ({})", render(a, m), render(b, m)),
    }
}

/// The formula with every atom blanked; `active` atoms carry the negation
/// the step translation introduces.
fn skeleton<A>(i: &Inv<A>, active_negated: impl Fn(&A) -> bool + Copy) -> Inv<()> {
    let r: Result<Inv<()>, ()> = i.map_atoms(&mut |a| {
        Ok(if active_negated(a) {
            Inv::not(Inv::Atom(()))
        } else {
            Inv::Atom(())
        })
    });
    r.unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn component_count_law(seed in 0u64..100_000) {
        let m = random_translatable(seed, Shape::default());
        let (b, tm) = transform(&m, &TransformOptions::default()).unwrap();
        let expect = m.vars.len() + 2 * m.actions.len() + m.steps.len() + m.initial.len() + m.transitions.len() + 1;
        prop_assert_eq!(b.atomics.len(), expect);
        prop_assert_eq!(tm.component_count(), expect);
    }

    #[test]
    fn ordered_saturation_then_rest_is_one_cycle(seed in 0u64..100_000) {
        let m = random_sfc(seed, Shape::default());
        let sem = Sem::new(&m, SemOptions::default());
        for c in configs(&m).into_iter().take(40) {
            let Ok(expected) = sem.run_cycle(&c) else { continue };
            // phase 1 by repeated ordered executeAction micro-steps
            let mut cur = c.clone();
            let mut failed = false;
            loop {
                let exec = sem.micro_successors(&cur).into_iter().find(|s| matches!(s.label, SfcLabel::Execute(_)));
                match exec {
                    Some(s) => match s.target {
                        Ok(n) => cur = n,
                        Err(_) => { failed = true; break; }
                    },
                    None => break,
                }
            }
            prop_assert!(!failed);
            prop_assert!(cur.active_a.is_empty());
            let ts = sem.takeable(&cur);
            let mut after = sem.take(&cur, &ts);
            after.active_a = after.active_s.iter().flat_map(|&s| m.step_actions(s)).collect();
            prop_assert_eq!(after, expected);
        }
    }

    #[test]
    fn fault_injection_breaks_exactly_one_rule(seed in 0u64..100_000, pick in 0usize..16) {
        let m = random_translatable(seed, Shape::default());
        let (b, tm) = transform(&m, &TransformOptions::default()).unwrap();
        let rel = Relation::new(&m, &b, &tm);
        let c0 = m.initial_config();
        let s0 = settled_initial(&b, &tm);
        prop_assert!(rel.check(&m, &c0, &s0, Rule3::Pending).holds());

        let step = &m.steps[pick % m.steps.len()].name;
        let comp = b.atomic_index(&tm.steps[step]).unwrap();
        let dis = b.atomics[comp].loc_index("DISABLED").unwrap();
        let act = b.atomics[comp].loc_index("ACTIVE").unwrap();
        let mut s = s0.clone();
        s.locs[comp] = if s.locs[comp] == dis { act } else { dis };
        prop_assert_eq!(rel.check(&m, &c0, &s, Rule3::Pending).failed(), vec!["rule1"]);

        let action = &m.actions[pick % m.actions.len()].name;
        let comp = b.atomic_index(&tm.actions[action].acb).unwrap();
        let e = b.atomics[comp].vars.index_of("e").unwrap();
        let mut s = s0.clone();
        s.vals[comp][e] = Value::Bool(!s.vals[comp][e].as_bool());
        prop_assert_eq!(rel.check(&m, &c0, &s, Rule3::Pending).failed(), vec!["rule2"]);

        let var = &m.vars.0[pick % m.vars.len()];
        let comp = b.atomic_index(&tm.vars[&var.name]).unwrap();
        for (field, mode) in [("t", Rule3::Pending), ("v", Rule3::Committed)] {
            let i = b.atomics[comp].vars.index_of(field).unwrap();
            let mut s = s0.clone();
            s.vals[comp][i] = match s.vals[comp][i] {
                Value::Bool(x) => Value::Bool(!x),
                Value::Int(0) => Value::Int(1),
                Value::Int(_) => Value::Int(0),
            };
            prop_assert!(rel.check(&m, &c0, &s0, mode).holds());
            prop_assert_eq!(rel.check(&m, &c0, &s, mode).failed(), vec!["rule3"]);
        }
    }

    #[test]
    fn witnesses_replay(seed in 0u64..100_000) {
        let m = random_translatable(seed, Shape::default());
        let (b, tm) = transform(&m, &TransformOptions::default()).unwrap();
        let r = check_g1b(&m, &b, &tm, SemOptions::default(), BipOptions::default(), RelationOptions::default(), Limits::default());
        if static_raw_warning(&m).is_empty() {
            prop_assert_eq!(r.verdict, Verdict::Holds);
        }
        for w in &r.witnesses {
            prop_assert!(replay_witness(&m, &b, &tm, w, BipOptions::default(), Rule3::Pending));
        }
    }

    #[test]
    fn requirement_round_trip_keeps_skeleton_and_meaning(seed in 0u64..100_000, f in formula()) {
        let m = random_translatable(seed, Shape::default());
        let (b, tm) = transform(&m, &TransformOptions::default()).unwrap();
        let phi = parse_sfc_inv(&render(&f, &m), &m).unwrap();
        let mut r = t_r(&phi, &tm);
        resolve_bip(&mut r, &b).unwrap();
        prop_assert_eq!(
            skeleton(&r, |_| false),
            skeleton(&phi, |a| matches!(a, SfcAtom::Active(_)))
        );
        let mut back: SfcInv = t_i(&r, &tm).unwrap();
        resolve_sfc(&mut back, &m).unwrap();
        for c in configs(&m) {
            prop_assert_eq!(eval_sfc(&phi, &c), eval_sfc(&back, &c), "{} vs {}", phi, back);
        }
    }

    #[test]
    fn structural_invariant_translates_without_error(seed in 0u64..100_000) {
        let m = random_translatable(seed, Shape::default());
        let (b, tm) = transform(&m, &TransformOptions::default()).unwrap();
        let phi = structural_invariant(&m);
        let mut r = t_r(&phi, &tm);
        resolve_bip(&mut r, &b).unwrap();
        prop_assert!(t_i(&r, &tm).is_ok());
    }
}
