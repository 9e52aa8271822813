//! Acceptance suite: one line per criterion, each run at its stated budget.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use sfc2bip::bip::{parse_bip, AtomicComponent, BipOptions, ComposedModel};
use sfc2bip::expr::{Expr, Program};
use sfc2bip::fixtures::{fixture, sfc_fixtures, FIXTURES, PINNED_JSON};
use sfc2bip::graph::Limits;
use sfc2bip::invariants::{
    check_bip_invariant, check_sfc_invariant, parse_bip_inv, parse_sfc_inv, resolve_bip, structural_invariant, t_i,
    t_r, Observe,
};
use sfc2bip::random::{random_translatable, Shape};
use sfc2bip::sfc::{
    parse_sfc, reachable_configs, reachable_cycles, reachable_phased, Dialect, Mode, SemOptions, SfcModel,
};
use sfc2bip::simcheck::{
    check_cycle_equivalence, check_g1a, check_g1b, check_g2_instance, static_raw_warning, RawWarning,
    RelationOptions, Rule3, Verdict,
};
use sfc2bip::transform::{create_acb, transform, TemplateMode, TraceMap, TransformOptions};

const RANDOM_MODELS: u64 = 200;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sfc(name: &str) -> SfcModel {
    parse_sfc(fixture(name).unwrap().source, Dialect::NonExtended).unwrap()
}

fn translate(m: &SfcModel, opts: &TransformOptions) -> (ComposedModel, TraceMap) {
    transform(m, opts).unwrap()
}

fn randoms() -> impl Iterator<Item = (u64, SfcModel)> {
    (0..RANDOM_MODELS).map(|s| (s, random_translatable(s, Shape::default())))
}

// ------------------------------------------------------------ criterion 1

/// A component as sets: locations, ports, transitions `(src, guard, update,
/// port, tgt)` with normalized expression text, and the initial location.
type Listing = (BTreeSet<String>, BTreeSet<String>, BTreeSet<[String; 5]>, String);

fn norm_guard(g: &str) -> String {
    if g.is_empty() {
        "true".into()
    } else {
        Expr::parse(g).unwrap().to_string()
    }
}

fn norm_update(u: &str) -> String {
    Program::parse(u).unwrap().to_string()
}

fn listing(c: &AtomicComponent) -> Listing {
    let locs = c.locations.iter().cloned().collect();
    let ports = c.ports.iter().map(|p| p.name.clone()).collect();
    let trans = c
        .transitions
        .iter()
        .map(|t| {
            [
                c.locations[t.src].clone(),
                t.guard.to_string(),
                t.update.to_string(),
                c.ports[t.port].name.clone(),
                c.locations[t.tgt].clone(),
            ]
        })
        .collect();
    (locs, ports, trans, c.locations[c.init_loc].clone())
}

fn expected(locs: &[&str], ports: &[&str], trans: &[(&str, &str, &str, &str, &str)], init: &str) -> Listing {
    (
        locs.iter().map(|s| s.to_string()).collect(),
        ports.iter().map(|s| s.to_string()).collect(),
        trans
            .iter()
            .map(|&(s, g, u, p, t)| [s.into(), norm_guard(g), norm_update(u), p.into(), t.into()])
            .collect(),
        init.into(),
    )
}

fn step_listing() -> Listing {
    expected(
        &["DISABLED", "ACTIVE", "ACTION"],
        &["tIn", "tOut", "fTick", "act"],
        &[
            ("ACTIVE", "", "", "tOut", "DISABLED"),
            ("DISABLED", "", "", "tIn", "ACTIVE"),
            ("DISABLED", "", "", "fTick", "DISABLED"),
            ("ACTIVE", "", "", "fTick", "ACTION"),
            ("ACTION", "", "", "act", "ACTIVE"),
        ],
        "DISABLED",
    )
}

fn simple_acb_listing() -> Listing {
    expected(
        &["WAIT", "ENABLE", "ACTIVE", "WORK", "WORKED"],
        &["wTick", "tTick", "N", "work", "done"],
        &[
            ("WAIT", "", "e := true;", "N", "ENABLE"),
            ("ENABLE", "", "", "N", "ENABLE"),
            ("WAIT", "", "", "wTick", "ACTIVE"),
            ("ENABLE", "", "", "wTick", "ACTIVE"),
            ("ACTIVE", "e", "", "work", "WORK"),
            ("WORK", "", "e := false;", "done", "WORKED"),
            ("WORKED", "", "", "tTick", "WAIT"),
            ("ACTIVE", "", "", "tTick", "WAIT"),
        ],
        "WAIT",
    )
}

fn extended_acb_listing() -> Listing {
    expected(
        &["ACTIVE", "WORK", "WORKED", "WAIT"],
        &["wTick", "tTick", "N", "S", "R", "work", "done"],
        &[
            ("ACTIVE", "", "", "tTick", "WAIT"),
            ("WAIT", "", "e := !r && (s || n); s := !r && s; r := false; n := false;", "wTick", "ACTIVE"),
            ("ACTIVE", "e", "", "work", "WORK"),
            ("WORK", "", "", "done", "WORKED"),
            ("WORKED", "", "", "tTick", "WAIT"),
            ("WAIT", "", "n := true;", "N", "WAIT"),
            ("WAIT", "", "r := true;", "R", "WAIT"),
            ("WAIT", "", "s := true;", "S", "WAIT"),
        ],
        "WAIT",
    )
}

fn gv_listing() -> Listing {
    expected(
        &["READ", "WRITE"],
        &["read", "write", "tTick", "wTick"],
        &[
            ("READ", "", "", "read", "READ"),
            ("READ", "", "t := w;", "write", "READ"),
            ("READ", "", "v := t;", "tTick", "WRITE"),
            ("WRITE", "", "", "read", "WRITE"),
            ("WRITE", "", "", "wTick", "READ"),
        ],
        "READ",
    )
}

fn guard_listing(cond: &str, reads: &[&str]) -> Listing {
    let mut locs = vec!["WAIT".to_string(), "GUARD".into(), "DONE".into()];
    let mut ports = vec!["guard".to_string(), "tTick".into(), "fTick".into()];
    let mut trans = Vec::new();
    let (mut from, mut port) = ("WAIT".to_string(), "tTick".to_string());
    for x in reads {
        let l = format!("READ_{x}");
        locs.push(l.clone());
        ports.push(format!("read_{x}"));
        trans.push((from.clone(), String::new(), String::new(), port.clone(), l.clone()));
        from = l;
        port = format!("read_{x}");
    }
    trans.push((from, String::new(), String::new(), port, "GUARD".into()));
    trans.push(("GUARD".into(), String::new(), String::new(), "fTick".into(), "WAIT".into()));
    trans.push(("GUARD".into(), cond.into(), String::new(), "guard".into(), "DONE".into()));
    trans.push(("DONE".into(), String::new(), String::new(), "fTick".into(), "WAIT".into()));
    let locs: Vec<&str> = locs.iter().map(String::as_str).collect();
    let ports: Vec<&str> = ports.iter().map(String::as_str).collect();
    let trans: Vec<(&str, &str, &str, &str, &str)> = trans
        .iter()
        .map(|(a, b, c, d, e)| (a.as_str(), b.as_str(), c.as_str(), d.as_str(), e.as_str()))
        .collect();
    expected(&locs, &ports, &trans, "WAIT")
}

fn manager_listing() -> Listing {
    expected(
        &["WORK", "TRAN", "DONE"],
        &["wTick", "tTick", "fTick"],
        &[
            ("WORK", "", "", "tTick", "TRAN"),
            ("TRAN", "", "", "fTick", "DONE"),
            ("DONE", "", "", "wTick", "WORK"),
        ],
        "DONE",
    )
}

fn starter_listing() -> Listing {
    expected(
        &["DISABLED", "ACTIVE"],
        &["tOut", "wTick"],
        &[("ACTIVE", "", "", "tOut", "DISABLED"), ("DISABLED", "", "", "wTick", "DISABLED")],
        "ACTIVE",
    )
}

/// Action chain: work, one read per variable read, one write per variable
/// written, done. `body` sits on the last read (or on work if none).
fn action_listing(reads: &[&str], writes: &[&str], body: &str) -> Listing {
    let mut locs = vec!["IDLE".to_string()];
    let mut ports = vec!["work".to_string(), "done".into()];
    let mut hops: Vec<(String, String)> = Vec::new(); // (port, target)
    for x in reads {
        locs.push(format!("READ_{x}"));
        ports.push(format!("read_{x}"));
    }
    for x in writes {
        locs.push(format!("WRITE_{x}"));
        ports.push(format!("write_{x}"));
    }
    locs.push("FIN".into());
    let chain: Vec<String> = locs[1..].to_vec();
    let mut labels = vec!["work".to_string()];
    labels.extend(reads.iter().map(|x| format!("read_{x}")));
    labels.extend(writes.iter().map(|x| format!("write_{x}")));
    for (p, t) in labels.iter().zip(&chain) {
        hops.push((p.clone(), t.clone()));
    }
    let body_at = reads.len();
    let mut trans = Vec::new();
    let mut from = "IDLE".to_string();
    for (i, (p, t)) in hops.iter().enumerate() {
        let u = if i == body_at { body } else { "" };
        trans.push((from.clone(), String::new(), u.to_string(), p.clone(), t.clone()));
        from = t.clone();
    }
    trans.push(("FIN".into(), String::new(), String::new(), "done".into(), "IDLE".into()));
    let locs: Vec<&str> = locs.iter().map(String::as_str).collect();
    let ports: Vec<&str> = ports.iter().map(String::as_str).collect();
    let trans: Vec<(&str, &str, &str, &str, &str)> = trans
        .iter()
        .map(|(a, b, c, d, e)| (a.as_str(), b.as_str(), c.as_str(), d.as_str(), e.as_str()))
        .collect();
    expected(&locs, &ports, &trans, "IDLE")
}

fn criterion_1() -> Outcome {
    let m = sfc("fig3");
    let (b, _) = translate(&m, &TransformOptions::as_listed());
    let mut want: Vec<(String, Listing)> = [
        ("gv_x", gv_listing()),
        ("gv_y", gv_listing()),
        ("act_a1", action_listing(&["x"], &["x"], "x := x + 1;")),
        ("act_a2", action_listing(&["x"], &["x"], "x := x + 2;")),
        ("act_a3", action_listing(&[], &["x"], "x := 0;")),
        ("starter_S1", starter_listing()),
        ("guard_t1", guard_listing("x < 10", &["x"])),
        ("guard_t2", guard_listing("x > 10", &["x"])),
        ("guard_t3", guard_listing("x > 15", &["x"])),
        ("guard_t4", guard_listing("x < 5", &["x"])),
        ("guard_t5", guard_listing("true", &[])),
        ("mgr", manager_listing()),
    ]
    .into_iter()
    .map(|(n, l)| (n.to_string(), l))
    .collect();
    for a in ["a1", "a2", "a3"] {
        want.push((format!("acb_{a}"), simple_acb_listing()));
    }
    for s in ["S1", "S2", "S3", "S4"] {
        want.push((format!("step_{s}"), step_listing()));
    }
    ensure(b.atomics.len() == want.len(), || format!("{} atomics, expected {}", b.atomics.len(), want.len()))?;
    for (name, l) in &want {
        let c = b
            .atomics
            .iter()
            .find(|c| &c.name == name)
            .ok_or_else(|| format!("missing {name}"))?;
        ensure(&listing(c) == l, || format!("{name} differs from its listing:\n{:?}\nvs\n{:?}", listing(c), l))?;
    }
    let ext = create_acb(&m.actions[0], TemplateMode::Extended);
    ensure(listing(&ext) == extended_acb_listing(), || "extended ACB differs".into())?;
    Ok(format!("{} components plus the extended ACB match", want.len()))
}

// ------------------------------------------------------------ criteria 2-4

fn criterion_2() -> Outcome {
    for (seed, m) in randoms() {
        let (b, tm) = translate(&m, &TransformOptions::default());
        let law = m.vars.len() + 2 * m.actions.len() + m.steps.len() + m.initial.len() + m.transitions.len() + 1;
        ensure(b.atomics.len() == law && tm.component_count() == law, || {
            format!("seed {seed}: {} atomics, law says {law}", b.atomics.len())
        })?;
    }
    Ok(format!("{RANDOM_MODELS} random charts"))
}

fn criterion_3() -> Outcome {
    let mut models: Vec<(String, SfcModel)> = sfc_fixtures().map(|f| (f.name.to_string(), sfc(f.name))).collect();
    models.extend(randoms().map(|(s, m)| (format!("seed {s}"), m)));
    for (name, m) in &models {
        let (b, tm) = translate(m, &TransformOptions::default());
        for rule3 in [Rule3::Pending, Rule3::Committed] {
            let r = check_g1a(m, &b, &tm, RelationOptions { rule3, depth: None });
            ensure(r.holds, || format!("{name} ({rule3}): {:?}", r.settled.mismatches))?;
        }
    }
    Ok(format!("{} models, both rule3 variants", models.len()))
}

fn criterion_4() -> Outcome {
    let mut lines = Vec::new();
    for name in ["fig3", "pattern_simple", "pattern_divergence", "pattern_convergence", "pattern_parallel_div", "pattern_parallel_conv"] {
        let t = Instant::now();
        let m = sfc(name);
        let (b, tm) = translate(&m, &TransformOptions::default());
        let r = check_g1b(&m, &b, &tm, SemOptions::default(), BipOptions::default(), RelationOptions::default(), Limits::default());
        let took = t.elapsed();
        ensure(r.verdict == Verdict::Holds, || format!("{name}: {}", r.verdict))?;
        ensure(took <= Duration::from_secs(10), || format!("{name} took {took:?}"))?;
        lines.push(format!("{name} {} pairs", r.pairs_checked));
    }
    let m = sfc("raw");
    let (b, tm) = translate(&m, &TransformOptions::default());
    let r = check_g1b(&m, &b, &tm, SemOptions::default(), BipOptions::default(), RelationOptions::default(), Limits::default());
    ensure(r.verdict == Verdict::Fails, || format!("raw: {}", r.verdict))?;
    let f = &r.failures[0];
    ensure(f.closest_failed_rules == vec!["rule3"], || format!("raw witness fails {:?}", f.closest_failed_rules))?;
    let w = static_raw_warning(&m);
    let want = RawWarning {
        writer: "a1".into(),
        reader: "a2".into(),
        var: "x".into(),
    };
    ensure(w.contains(&want), || format!("raw warnings {w:?}"))?;
    Ok(format!("{}; raw refuted on rule3", lines.join(", ")))
}

// ------------------------------------------------------------ criteria 5-8

fn criterion_5() -> Outcome {
    let m = sfc("fig3");
    let (b, tm) = translate(&m, &TransformOptions::default());
    let cases = [
        ("a1", "!active(S1) || (active(S1) && enabled(a1))"),
        ("a2", "!active(S2) || (active(S2) && enabled(a2))"),
        ("a3", "!(active(S3) || active(S4)) || ((active(S3) || active(S4)) && enabled(a3))"),
    ];
    for (a, image) in cases {
        let t = Instant::now();
        let text = format!("!at(acb_{a}, ENABLE) || (at(acb_{a}, ENABLE) && acb_{a}.e)");
        let inv = parse_bip_inv(&text, &b).map_err(|e| e.to_string())?;
        let r = check_g2_instance(&m, &b, &tm, &inv, Observe::Boundaries, SemOptions::default(), BipOptions::default(), Limits::default())
            .map_err(|e| e.to_string())?;
        ensure(r.holds, || format!("{text}: {r:?}"))?;
        let want = parse_sfc_inv(image, &m).map_err(|e| e.to_string())?.to_string();
        ensure(r.translated.as_deref() == Some(want.as_str()), || format!("T_I gave {:?}, expected {want}", r.translated))?;
        ensure(t.elapsed() <= Duration::from_secs(5), || format!("{a} took {:?}", t.elapsed()))?;
    }
    let m = sfc("pattern_simple");
    let (b, tm) = translate(&m, &TransformOptions::default());
    let inv = parse_bip_inv("at(step_S3, DISABLED) || at(step_S4, DISABLED)", &b).map_err(|e| e.to_string())?;
    let r = check_g2_instance(&m, &b, &tm, &inv, Observe::Boundaries, SemOptions::default(), BipOptions::default(), Limits::default())
        .map_err(|e| e.to_string())?;
    ensure(r.holds, || format!("interaction invariant: {r:?}"))?;
    let want = parse_sfc_inv("!active(S3) || !active(S4)", &m).unwrap().to_string();
    ensure(r.translated.as_deref() == Some(want.as_str()), || format!("T_I gave {:?}", r.translated))?;
    let micro = check_sfc_invariant(&m, &t_i(&inv, &tm).map(|mut i| {
        sfc2bip::invariants::resolve_sfc(&mut i, &m).unwrap();
        i
    }).unwrap(), Observe::Micro, SemOptions::default(), Limits::default())
    .map_err(|e| e.to_string())?;
    ensure(micro.holds, || "image fails at some micro-step".into())?;
    Ok("three ACB invariants on fig3 and the interaction invariant on pattern_simple".into())
}

fn criterion_6() -> Outcome {
    let mut n = 0;
    let mut models: Vec<(String, SfcModel)> = sfc_fixtures().map(|f| (f.name.to_string(), sfc(f.name))).collect();
    models.extend(randoms().map(|(s, m)| (format!("seed {s}"), m)));
    for (name, m) in &models {
        if !static_raw_warning(m).is_empty() && name.starts_with("seed") {
            continue;
        }
        let r = check_sfc_invariant(m, &structural_invariant(m), Observe::Boundaries, SemOptions::default(), Limits::default())
            .map_err(|e| format!("{name}: {e}"))?;
        ensure(r.holds, || format!("{name}: {:?}", r.trace))?;
        n += 1;
    }
    Ok(format!("{n} models"))
}

fn criterion_7() -> Outcome {
    let mut done = Vec::new();
    for f in sfc_fixtures() {
        let m = sfc(f.name);
        if !static_raw_warning(&m).is_empty() {
            continue;
        }
        let (b, tm) = translate(&m, &TransformOptions::default());
        let r = check_cycle_equivalence(&m, &b, &tm, SemOptions::default(), BipOptions::default(), 25, Limits::default());
        ensure(r.holds, || format!("{}: {:?}", f.name, r.steps.last()))?;
        done.push(f.name);
    }
    Ok(format!("25 cycles on {}", done.join(", ")))
}

fn criterion_8() -> Outcome {
    let m = sfc("fig3");
    let (_, confs) = common::sfc_phased(&m);
    let bound = confs
        .iter()
        .map(|(c, _)| match c.f["x"] {
            sfc2bip::expr::Value::Int(i) => i,
            _ => unreachable!(),
        })
        .max()
        .unwrap();
    // Micro-steps may repeat an action without a cycle boundary, so the bound
    // is a cycle-level one.
    let inv = parse_sfc_inv(&format!("x <= {bound}"), &m).unwrap();
    let lib = check_sfc_invariant(&m, &inv, Observe::Boundaries, SemOptions::default(), Limits::default())
        .map_err(|e| e.to_string())?;
    ensure(lib.holds, || "x bound fails at a cycle boundary".into())?;
    let (b, tm) = translate(&m, &TransformOptions::default());
    let mut req = t_r(&parse_sfc_inv(&format!("x <= {bound}"), &m).unwrap(), &tm);
    resolve_bip(&mut req, &b).map_err(|e| e.to_string())?;
    let r = check_bip_invariant(&b, &req, BipOptions::default(), Limits::default()).map_err(|e| e.to_string())?;
    ensure(r.holds, || format!("{req} fails: {:?}", r.trace))?;
    Ok(format!("B = {bound}; {req} certified over {} states", r.states))
}

// ------------------------------------------------------------ criteria 9-11

fn criterion_9() -> Outcome {
    let limits = Limits::default();
    let mut checked = 0;
    for f in sfc_fixtures() {
        let m = sfc(f.name);
        for (ordered, mode) in [(true, Mode::Ordered), (false, Mode::Literal)] {
            let g = reachable_configs(&m, SemOptions { mode, priority: true }, limits);
            let o = common::sfc_micro(&m, ordered);
            ensure((g.node_count(), g.edge_count()) == (o.nodes, o.edges), || format!("{} micro {mode:?}", f.name))?;
        }
        let g = reachable_phased(&m, SemOptions::default(), limits);
        let o = common::sfc_phased(&m).0;
        ensure((g.node_count(), g.edge_count()) == (o.nodes, o.edges), || format!("{} phased", f.name))?;
        let g = reachable_cycles(&m, SemOptions::default(), limits);
        let o = common::sfc_cycles(&m).0;
        ensure((g.node_count(), g.edge_count()) == (o.nodes, o.edges), || format!("{} cycles", f.name))?;
        checked += 4;
    }
    for f in FIXTURES {
        let b = if f.is_sfc() {
            let ext = f.name == "extended";
            let dialect = if ext { Dialect::ExtendedSyntax } else { Dialect::NonExtended };
            let opts = if ext { TransformOptions::extended() } else { TransformOptions::default() };
            translate(&parse_sfc(f.source, dialect).unwrap(), &opts).0
        } else {
            parse_bip(f.source).unwrap()
        };
        let g = sfc2bip::bip::reachable_states(&b, BipOptions::default(), limits);
        let o = common::bip_reach(&b).0;
        ensure((g.node_count(), g.edge_count()) == (o.nodes, o.edges), || format!("{} bip", f.name))?;
        checked += 1;
    }
    Ok(format!("{checked} graphs match exactly"))
}

const I1: &str = "(at(Controller, l5) && 100 <= Controller.theta && Controller.theta <= 1000) \
                  || (at(Controller, l6) && 100 <= Controller.theta && Controller.theta <= 1000)";
const I2: &str = "(at(Rod1, l1) && Rod1.t1 == 0) || (at(Rod2, l3) && Rod2.t2 == 0) \
                  || (at(Controller, l5) && 101 <= Controller.theta && Controller.theta <= 1000) \
                  || (at(Controller, l6) && (Controller.theta == 1000 || (100 <= Controller.theta && Controller.theta <= 998)))";

fn criterion_10() -> Outcome {
    let b = parse_bip(fixture("temperature").unwrap().source).unwrap();
    let pinned: serde_json::Value = serde_json::from_str(PINNED_JSON).unwrap();
    let i1 = parse_bip_inv(I1, &b).map_err(|e| e.to_string())?;
    let r1 = check_bip_invariant(&b, &i1, BipOptions::default(), Limits::default()).map_err(|e| e.to_string())?;
    ensure(r1.holds, || format!("I1 violated: {:?}", r1.trace))?;
    let i2 = parse_bip_inv(I2, &b).map_err(|e| e.to_string())?;
    let runs: Vec<_> = (0..3)
        .map(|_| check_bip_invariant(&b, &i2, BipOptions::default(), Limits::default()).unwrap())
        .collect();
    ensure(runs.windows(2).all(|w| w[0] == w[1]), || "I2 verdict unstable".into())?;
    let verdict = if runs[0].holds { "holds" } else { "violated" };
    ensure(pinned["temperature"]["I2"] == verdict, || format!("I2 {verdict}, pinned {}", pinned["temperature"]["I2"]))?;
    ensure(pinned["temperature"]["I1"] == "holds", || "pinned I1 differs".into())?;
    Ok(format!("I1 holds over {} states; I2 {verdict} (pinned)", r1.states))
}

fn criterion_11() -> Outcome {
    let fix = |n: &str| format!("{}/../core/fixtures/{n}", env!("CARGO_MANIFEST_DIR"));
    let commands: Vec<Vec<String>> = vec![
        vec!["random".into(), "--seed".into(), "7".into(), "--format".into(), "json".into()],
        vec!["random".into(), "--seed".into(), "123".into(), "--format".into(), "json".into()],
        vec!["simrel".into(), fix("fig3.sfc"), "--format".into(), "json".into(), "--cycles".into(), "3".into()],
        vec!["simrel".into(), fix("raw.sfc"), "--format".into(), "json".into()],
        vec!["reach".into(), fix("fig3.sfc"), "--format".into(), "json".into()],
        vec!["reach".into(), fix("temperature.bip"), "--format".into(), "json".into()],
        vec!["check-inv".into(), fix("temperature.bip"), I2.into(), "--format".into(), "json".into()],
        vec!["transform".into(), fix("fig3.sfc"), "--format".into(), "json".into()],
        vec!["translate-inv".into(), "t_r".into(), "x <= 17".into(), "--sfc".into(), fix("fig3.sfc"), "--format".into(), "json".into()],
    ];
    for args in &commands {
        let outs: Vec<Vec<u8>> = (0..3)
            .map(|_| Command::new(env!("CARGO_BIN_EXE_sfc2bip")).args(args).output().unwrap().stdout)
            .collect();
        ensure(!outs[0].is_empty(), || format!("{args:?} printed nothing"))?;
        serde_json::from_slice::<serde_json::Value>(&outs[0]).map_err(|e| format!("{args:?}: {e}"))?;
        ensure(outs[0] == outs[1] && outs[1] == outs[2], || format!("{args:?} differs between runs"))?;
    }
    Ok(format!("{} commands, 3 runs each", commands.len()))
}

#[test]
fn acceptance() {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 11] = [
        (1, "template conformance", 1, criterion_1),
        (2, "component-count law", 10, criterion_2),
        (3, "G1a", 10, criterion_3),
        (4, "G1b", 60, criterion_4),
        (5, "G2 instances", 15, criterion_5),
        (6, "structural invariant", 30, criterion_6),
        (7, "macro-cycle equivalence", 20, criterion_7),
        (8, "T_R soundness instance", 10, criterion_8),
        (9, "interpreter cross-checks", 60, criterion_9),
        (10, "temperature fixture", 10, criterion_10),
        (11, "determinism", 60, criterion_11),
    ];
    let mut failed = Vec::new();
    for (n, name, budget, run) in criteria {
        let t = Instant::now();
        let out = run();
        let took = t.elapsed();
        let over = took > Duration::from_secs(budget);
        let (status, detail) = match (&out, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("over budget {budget}s: {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        println!("criterion {n:>2} {status} [{name}] {:.2}s: {detail}", took.as_secs_f64());
        if status == "FAIL" {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
