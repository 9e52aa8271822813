//! Seeded generator of small non-extended SFCs for property tests.
//!
//! Integer variables range over `0..7` and every generated update keeps
//! them there, so generated charts never hit a range violation.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sfc::{parse_sfc, Dialect, SfcModel};
use crate::simcheck::{static_conflict_warning, static_reentry_warning};

const INT_MAX: i64 = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub steps: (usize, usize),
    pub vars: (usize, usize),
    pub actions: (usize, usize),
    pub transitions: (usize, usize),
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            steps: (2, 5),
            vars: (1, 3),
            actions: (1, 4),
            transitions: (1, 6),
        }
    }
}

struct Var {
    name: String,
    int: bool,
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, xs: &'a [T]) -> &'a T {
    xs.choose(rng).expect("non-empty choice")
}

fn update(rng: &mut ChaCha8Rng, vars: &[Var], target: &Var) -> String {
    let same: Vec<&Var> = vars.iter().filter(|v| v.int == target.int).collect();
    let other = pick(rng, &same).name.clone();
    let x = &target.name;
    if target.int {
        match rng.gen_range(0..3) {
            0 => format!("{x} := {};", rng.gen_range(0..=INT_MAX)),
            1 => format!("{x} := {other};"),
            _ => format!("{x} := {INT_MAX} - {other};"),
        }
    } else {
        let ints: Vec<&Var> = vars.iter().filter(|v| v.int).collect();
        match rng.gen_range(0..4) {
            0 => format!("{x} := !{other};"),
            1 => format!("{x} := {};", rng.gen_bool(0.5)),
            2 if !ints.is_empty() => format!("{x} := {} < {};", pick(rng, &ints).name, rng.gen_range(1..=INT_MAX)),
            _ => format!("{x} := !{x};"),
        }
    }
}

fn guard(rng: &mut ChaCha8Rng, vars: &[Var]) -> String {
    if rng.gen_ratio(1, 6) {
        return "true".into();
    }
    let v = pick(rng, vars);
    if v.int {
        let k = rng.gen_range(0..=INT_MAX);
        let op = *pick(rng, &["<", "<=", ">", ">=", "==", "!="]);
        format!("{} {op} {k}", v.name)
    } else if rng.gen_bool(0.5) {
        v.name.clone()
    } else {
        format!("!{}", v.name)
    }
}

fn steplist(names: &[String]) -> String {
    if names.len() == 1 {
        names[0].clone()
    } else {
        format!("({})", names.join(", "))
    }
}

fn subset(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let size = if n > 1 && rng.gen_ratio(1, 5) { 2 } else { 1 };
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    let mut v: Vec<usize> = all.into_iter().take(size).collect();
    v.sort_unstable();
    v
}

/// DSL text of a random chart.
pub fn random_sfc_text(seed: u64, shape: Shape) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_steps = rng.gen_range(shape.steps.0..=shape.steps.1);
    let n_vars = rng.gen_range(shape.vars.0..=shape.vars.1);
    let n_actions = rng.gen_range(shape.actions.0..=shape.actions.1);
    let n_trans = rng.gen_range(shape.transitions.0..=shape.transitions.1);

    let vars: Vec<Var> = (0..n_vars)
        .map(|i| Var {
            name: format!("v{i}"),
            int: rng.gen_bool(0.5),
        })
        .collect();
    let mut out = format!("sfc random_{seed} {{\n");
    for v in &vars {
        if v.int {
            out += &format!("  var {} : int[0..{INT_MAX}] = {};\n", v.name, rng.gen_range(0..=INT_MAX));
        } else {
            out += &format!("  var {} : bool = {};\n", v.name, rng.gen_bool(0.5));
        }
    }
    let actions: Vec<String> = (0..n_actions).map(|i| format!("a{i}")).collect();
    for a in &actions {
        let n = rng.gen_range(1..=2);
        let body: Vec<String> = (0..n)
            .map(|_| {
                let t = pick(&mut rng, &vars);
                update(&mut rng, &vars, t)
            })
            .collect();
        out += &format!("  action {a} {{ {} }}\n", body.join(" "));
    }
    let steps: Vec<String> = (0..n_steps).map(|i| format!("S{i}")).collect();
    let second_initial = n_steps > 2 && rng.gen_ratio(1, 5);
    for (i, s) in steps.iter().enumerate() {
        let init = if i == 0 || (second_initial && i == n_steps - 1) { " init" } else { "" };
        let k = rng.gen_range(0..=2.min(n_actions));
        let mut acts = actions.clone();
        acts.shuffle(&mut rng);
        let blocks: String = acts.iter().take(k).map(|a| format!(" {a};")).collect();
        out += &format!("  step {s}{init} {{{blocks} }}\n");
    }
    let mut srcs = Vec::new();
    for i in 0..n_trans {
        let src: Vec<String> = subset(&mut rng, n_steps).into_iter().map(|s| steps[s].clone()).collect();
        let tgt: Vec<String> = subset(&mut rng, n_steps).into_iter().map(|s| steps[s].clone()).collect();
        out += &format!(
            "  transition t{i} : {} -> {} when {};\n",
            steplist(&src),
            steplist(&tgt),
            guard(&mut rng, &vars)
        );
        srcs.push(src);
    }
    let mut order = actions.clone();
    order.shuffle(&mut rng);
    out += &format!("  order {};\n", order.join(" < "));
    // every conflicting pair is ordered along one random ranking, so the
    // priority relation is acyclic
    let mut rank: Vec<usize> = (0..n_trans).collect();
    rank.shuffle(&mut rng);
    for i in 0..n_trans {
        for j in i + 1..n_trans {
            if srcs[i].iter().any(|s| srcs[j].contains(s)) {
                let (hi, lo) = if rank[i] < rank[j] { (i, j) } else { (j, i) };
                out += &format!("  priority t{hi} > t{lo};\n");
            }
        }
    }
    out += "}\n";
    out
}

/// A random chart; the text always parses and validates.
pub fn random_sfc(seed: u64, shape: Shape) -> SfcModel {
    let text = random_sfc_text(seed, shape);
    parse_sfc(&text, Dialect::NonExtended).unwrap_or_else(|e| panic!("generated chart does not parse:\n{text}\n{e}"))
}

/// Like [`random_sfc_text`], but skips draws that the translation cannot
/// follow: self-loops, unordered conflicts, and transitions that may enter
/// an active step. The
/// result for a seed is still fixed.
pub fn random_translatable_text(seed: u64, shape: Shape) -> String {
    (0u64..)
        .map(|k| random_sfc_text(seed.wrapping_mul(1_000_003).wrapping_add(k), shape))
        .find(|text| {
            let m = parse_sfc(text, Dialect::NonExtended).expect("generated chart parses");
            static_reentry_warning(&m).is_empty()
                && static_conflict_warning(&m).is_empty()
                && m.transitions.iter().all(|t| t.src.is_disjoint(&t.tgt))
        })
        .expect("some draw is translatable")
}

pub fn random_translatable(seed: u64, shape: Shape) -> SfcModel {
    parse_sfc(&random_translatable_text(seed, shape), Dialect::NonExtended).expect("generated chart parses")
}
