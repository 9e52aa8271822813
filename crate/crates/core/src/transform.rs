//! SFC to BIP translation: one component factory per SFC element, the
//! connector wiring between them, the interaction priorities, and the trace
//! map linking source elements to generated components.
//!
//! Two behaviours of the as-listed templates are repaired by default and can
//! be switched off through [`TransformOptions`]:
//!
//! * Global-variable components start in `WRITE`. Starting in `READ` leaves
//!   no component able to take part in the first `wTick`, so the generated
//!   model deadlocks right after the starters fire.
//! * Steps entered by a guard wait in `ENTERED` until `fTick`. Without the
//!   latch a step entered during the transition phase can be left again in
//!   the same phase, chaining transitions that an SFC takes in separate
//!   cycles.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::bip::{AtomicComponent, ComposedModel};
use crate::diag::Diagnostics;
use crate::expr::{Expr, Program, Type};
use crate::sfc::{ActionDef, Qualifier, SfcModel, SfcStep, SfcTransition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum TemplateMode {
    /// Simplified ACB and guard for non-extended SFCs.
    #[default]
    Simple,
    /// Qualifier-collecting ACB and guard with pulse activation. Generated
    /// only; never simulated.
    Extended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TransformOptions {
    pub mode: TemplateMode,
    /// Give guard connectors the priority order of conflicting SFC transitions.
    pub sfc_priority_in_bip: bool,
    /// Start global-variable components in `WRITE`.
    pub gv_initial_write: bool,
    /// Hold guard-entered steps in `ENTERED` until `fTick`.
    pub latch_entered_steps: bool,
}

impl Default for TransformOptions {
    fn default() -> Self {
        TransformOptions {
            mode: TemplateMode::Simple,
            sfc_priority_in_bip: true,
            gv_initial_write: true,
            latch_entered_steps: true,
        }
    }
}

impl TransformOptions {
    /// Templates exactly as listed, without the two repairs.
    pub fn as_listed() -> Self {
        TransformOptions {
            gv_initial_write: false,
            latch_entered_steps: false,
            ..TransformOptions::default()
        }
    }

    pub fn extended() -> Self {
        TransformOptions {
            mode: TemplateMode::Extended,
            ..TransformOptions::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("model uses extended qualifiers; transform it with extended templates")]
    ExtendedInput,
    #[error("invalid SFC:\n{0}")]
    Invalid(Diagnostics),
    /// A transition whose source and target share a step would need the
    /// step component on two ports of one connector.
    #[error("transition `{transition}` both leaves and enters step `{step}`")]
    SelfLoop { transition: String, step: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionTrace {
    pub component: String,
    pub acb: String,
    /// Steps whose blocks mention the action.
    pub steps: Vec<String>,
}

/// Names of the components generated for each SFC element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceMap {
    pub steps: BTreeMap<String, String>,
    pub actions: BTreeMap<String, ActionTrace>,
    pub vars: BTreeMap<String, String>,
    pub transitions: BTreeMap<String, String>,
    pub starters: BTreeMap<String, String>,
    pub manager: String,
}

impl TraceMap {
    pub fn new(m: &SfcModel) -> Self {
        TraceMap {
            steps: m.steps.iter().map(|s| (s.name.clone(), step_name(&s.name))).collect(),
            actions: m
                .actions
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    (
                        a.name.clone(),
                        ActionTrace {
                            component: action_name(&a.name),
                            acb: acb_name(&a.name),
                            steps: m
                                .steps_of_action(i)
                                .into_iter()
                                .map(|s| m.steps[s].name.clone())
                                .collect(),
                        },
                    )
                })
                .collect(),
            vars: m.vars.iter().map(|d| (d.name.clone(), gv_name(&d.name))).collect(),
            transitions: m
                .transitions
                .iter()
                .map(|t| (t.name.clone(), guard_name(&t.name)))
                .collect(),
            starters: m
                .initial
                .iter()
                .map(|&s| (m.steps[s].name.clone(), starter_name(&m.steps[s].name)))
                .collect(),
            manager: MANAGER.to_string(),
        }
    }

    /// The SFC step generated as `component`, if it is a step component.
    pub fn step_of(&self, component: &str) -> Option<&str> {
        self.steps
            .iter()
            .find(|(_, c)| c.as_str() == component)
            .map(|(s, _)| s.as_str())
    }

    pub fn action_of_acb(&self, component: &str) -> Option<(&str, &ActionTrace)> {
        self.actions
            .iter()
            .find(|(_, t)| t.acb == component)
            .map(|(a, t)| (a.as_str(), t))
    }

    pub fn var_of_gv(&self, component: &str) -> Option<&str> {
        self.vars
            .iter()
            .find(|(_, c)| c.as_str() == component)
            .map(|(x, _)| x.as_str())
    }

    /// Total number of generated components.
    pub fn component_count(&self) -> usize {
        self.vars.len() + 2 * self.actions.len() + self.steps.len() + self.starters.len() + self.transitions.len() + 1
    }
}

pub const MANAGER: &str = "mgr";

pub fn step_name(s: &str) -> String {
    format!("step_{s}")
}
pub fn action_name(a: &str) -> String {
    format!("act_{a}")
}
pub fn acb_name(a: &str) -> String {
    format!("acb_{a}")
}
pub fn gv_name(x: &str) -> String {
    format!("gv_{x}")
}
pub fn guard_name(t: &str) -> String {
    format!("guard_{t}")
}
pub fn starter_name(s: &str) -> String {
    format!("starter_{s}")
}

pub fn create_acb(a: &ActionDef, mode: TemplateMode) -> AtomicComponent {
    let mut c = AtomicComponent::new(acb_name(&a.name));
    match mode {
        TemplateMode::Extended => {
            c.bool_var("n", false)
                .bool_var("s", false)
                .bool_var("r", false)
                .bool_var("e", false)
                .locs(&["ACTIVE", "WORK", "WORKED", "WAIT"])
                .initial("WAIT")
                .ports(&["wTick", "tTick", "N", "S", "R", "work", "done"])
                .tr("ACTIVE", "tTick", "WAIT", "", "")
                .tr(
                    "WAIT",
                    "wTick",
                    "ACTIVE",
                    "",
                    "e := !r && (s || n); s := !r && s; r := false; n := false;",
                )
                .tr("ACTIVE", "work", "WORK", "e", "")
                .tr("WORK", "done", "WORKED", "", "")
                .tr("WORKED", "tTick", "WAIT", "", "")
                .tr("WAIT", "N", "WAIT", "", "n := true;")
                .tr("WAIT", "R", "WAIT", "", "r := true;")
                .tr("WAIT", "S", "WAIT", "", "s := true;");
        }
        TemplateMode::Simple => {
            c.bool_var("e", false)
                .locs(&["WAIT", "ENABLE", "ACTIVE", "WORK", "WORKED"])
                .initial("WAIT")
                .ports(&["wTick", "tTick", "N", "work", "done"])
                .tr("WAIT", "N", "ENABLE", "", "e := true;")
                .tr("ENABLE", "N", "ENABLE", "", "")
                .tr("WAIT", "wTick", "ACTIVE", "", "")
                .tr("ENABLE", "wTick", "ACTIVE", "", "")
                .tr("ACTIVE", "work", "WORK", "e", "")
                .tr("WORK", "done", "WORKED", "", "e := false;")
                .tr("WORKED", "tTick", "WAIT", "", "")
                .tr("ACTIVE", "tTick", "WAIT", "", "");
        }
    }
    c
}

/// Action component: `work`, then one read per variable read, the body
/// evaluated on local copies, one write per variable written, then `done`.
pub fn create_action_component(m: &SfcModel, a: &ActionDef) -> AtomicComponent {
    let reads = a.body.read_set();
    let writes = a.body.write_set();
    let mut c = AtomicComponent::new(action_name(&a.name));
    let locals: BTreeSet<usize> = reads.union(&writes).copied().collect();
    for &x in &locals {
        let d = &m.vars.0[x];
        c.var(&d.name, d.ty, d.init);
    }
    c.locs(&["IDLE"]);
    let mut chain: Vec<(String, String)> = Vec::new();
    for &x in &reads {
        let n = &m.vars.0[x].name;
        chain.push((format!("READ_{n}"), format!("read_{n}")));
    }
    for &x in &writes {
        let n = &m.vars.0[x].name;
        chain.push((format!("WRITE_{n}"), format!("write_{n}")));
    }
    for (loc, _) in &chain {
        c.locs(&[loc.as_str()]);
    }
    c.locs(&["FIN"]).initial("IDLE");
    c.ports(&["work", "done"]);
    for (_, port) in &chain {
        let var = port.split_once('_').map(|(_, v)| v).unwrap_or_default();
        c.port(port, Some(var));
    }
    // The body runs on the transition that completes the reads, so written
    // values are staged before the first write port samples them.
    let body_at = reads.len();
    let mut from = "IDLE".to_string();
    let mut port = "work".to_string();
    for (i, (loc, p)) in chain.iter().enumerate() {
        let update = if i == body_at { local_body(&c, a) } else { Program::default() };
        c.add_transition(&from, &port, loc, Expr::bool(true), update)
            .expect("action chain is well formed");
        from = loc.clone();
        port = p.clone();
    }
    let update = if body_at == chain.len() { local_body(&c, a) } else { Program::default() };
    c.add_transition(&from, &port, "FIN", Expr::bool(true), update)
        .expect("action chain is well formed");
    c.tr("FIN", "done", "IDLE", "", "");
    c
}

/// The action body with references re-resolved against the component locals.
fn local_body(c: &AtomicComponent, a: &ActionDef) -> Program {
    let mut p = a.body.clone();
    p.resolve(&c.vars).expect("locals mirror the body's variables");
    p
}

pub fn create_step(s: &SfcStep, latch: bool) -> AtomicComponent {
    let mut c = AtomicComponent::new(step_name(&s.name));
    c.locs(&["DISABLED", "ACTIVE", "ACTION"])
        .initial("DISABLED")
        .ports(&["tIn", "tOut", "fTick", "act"])
        .tr("ACTIVE", "tOut", "DISABLED", "", "");
    if latch {
        c.locs(&["ENTERED"])
            .ports(&["tInit"])
            .tr("DISABLED", "tIn", "ENTERED", "", "")
            .tr("DISABLED", "tInit", "ACTIVE", "", "")
            .tr("ENTERED", "fTick", "ACTION", "", "");
    } else {
        c.tr("DISABLED", "tIn", "ACTIVE", "", "");
    }
    c.tr("DISABLED", "fTick", "DISABLED", "", "")
        .tr("ACTIVE", "fTick", "ACTION", "", "")
        .tr("ACTION", "act", "ACTIVE", "", "");
    c
}

/// Guard component. One read location per variable of the condition, in
/// declaration order.
pub fn create_guard(m: &SfcModel, t: &SfcTransition, mode: TemplateMode) -> AtomicComponent {
    let mut c = AtomicComponent::new(guard_name(&t.name));
    let reads: BTreeSet<usize> = t.guard.vars().iter().map(|v| v.index).collect();
    for &x in &reads {
        let d = &m.vars.0[x];
        c.var(&d.name, d.ty, d.init);
    }
    let read_locs: Vec<String> = reads.iter().map(|&x| format!("READ_{}", m.vars.0[x].name)).collect();
    c.locs(&["WAIT"]);
    for l in &read_locs {
        c.locs(&[l.as_str()]);
    }
    c.locs(&["GUARD"]);
    if mode == TemplateMode::Extended {
        c.locs(&["ACT"]);
    }
    c.locs(&["DONE"]).initial("WAIT");
    for &x in &reads {
        let n = &m.vars.0[x].name;
        c.port(&format!("read_{n}"), Some(n));
    }
    c.ports(&["guard", "tTick", "fTick"]);
    if mode == TemplateMode::Extended {
        c.ports(&["act"]);
    }
    let mut g = t.guard.clone();
    g.resolve(&c.vars).expect("guard locals mirror the condition");
    let mut from = "WAIT".to_string();
    let mut port = "tTick".to_string();
    for (l, &x) in read_locs.iter().zip(&reads) {
        c.tr(&from, &port, l, "", "");
        from = l.clone();
        port = format!("read_{}", m.vars.0[x].name);
    }
    c.tr(&from, &port, "GUARD", "", "");
    c.tr("GUARD", "fTick", "WAIT", "", "");
    match mode {
        TemplateMode::Extended => {
            c.add_transition("GUARD", "guard", "ACT", g.clone(), Program::default())
                .expect("guard transition");
            c.add_transition("ACT", "act", "DONE", g, Program::default())
                .expect("act transition");
        }
        TemplateMode::Simple => {
            c.add_transition("GUARD", "guard", "DONE", g, Program::default())
                .expect("guard transition");
        }
    }
    c.tr("DONE", "fTick", "WAIT", "", "");
    c
}

pub fn create_manager() -> AtomicComponent {
    let mut c = AtomicComponent::new(MANAGER);
    c.locs(&["WORK", "TRAN", "DONE"])
        .initial("DONE")
        .ports(&["wTick", "tTick", "fTick"])
        .tr("WORK", "tTick", "TRAN", "", "")
        .tr("TRAN", "fTick", "DONE", "", "")
        .tr("DONE", "wTick", "WORK", "", "");
    c
}

/// Global-variable component: committed value `v`, write buffer `t`, and
/// `w` receiving values sent to the write port.
pub fn create_gv(x: &crate::expr::VarDecl, initial_write: bool) -> AtomicComponent {
    let mut c = AtomicComponent::new(gv_name(&x.name));
    let ty: Type = x.ty;
    c.var("t", ty, x.init)
        .var("v", ty, x.init)
        .var("w", ty, x.init)
        .locs(&["READ", "WRITE"])
        .initial(if initial_write { "WRITE" } else { "READ" })
        .port("read", Some("v"))
        .port("write", Some("w"))
        .ports(&["tTick", "wTick"])
        .tr("READ", "read", "READ", "", "")
        .tr("READ", "write", "READ", "", "t := w;")
        .tr("READ", "tTick", "WRITE", "", "v := t;")
        .tr("WRITE", "read", "WRITE", "", "")
        .tr("WRITE", "wTick", "READ", "", "");
    c
}

pub fn create_starter(s: &str) -> AtomicComponent {
    let mut c = AtomicComponent::new(starter_name(s));
    c.locs(&["DISABLED", "ACTIVE"])
        .initial("ACTIVE")
        .ports(&["tOut", "wTick"])
        .tr("ACTIVE", "tOut", "DISABLED", "", "")
        .tr("DISABLED", "wTick", "DISABLED", "", "");
    c
}

fn qualifier_port(q: Qualifier) -> Option<&'static str> {
    match q {
        Qualifier::N => Some("N"),
        Qualifier::S => Some("S"),
        Qualifier::R => Some("R"),
        Qualifier::P0 | Qualifier::P1 => None,
    }
}

/// Translates a valid SFC into a composed model plus trace map.
pub fn transform(m: &SfcModel, opts: &TransformOptions) -> Result<(ComposedModel, TraceMap), TransformError> {
    let diags = m.validate();
    if !diags.is_empty() {
        return Err(TransformError::Invalid(Diagnostics(diags)));
    }
    if opts.mode == TemplateMode::Simple && m.is_extended() {
        return Err(TransformError::ExtendedInput);
    }
    for t in &m.transitions {
        if let Some(&s) = t.src.intersection(&t.tgt).next() {
            return Err(TransformError::SelfLoop {
                transition: t.name.clone(),
                step: m.steps[s].name.clone(),
            });
        }
    }
    let tm = TraceMap::new(m);
    let mut b = ComposedModel {
        name: m.name.clone(),
        ..ComposedModel::default()
    };

    for x in m.vars.iter() {
        b.atomics.push(create_gv(x, opts.gv_initial_write));
    }
    for a in &m.actions {
        b.atomics.push(create_action_component(m, a));
    }
    for a in &m.actions {
        b.atomics.push(create_acb(a, opts.mode));
    }
    for s in &m.steps {
        b.atomics.push(create_step(s, opts.latch_entered_steps));
    }
    for &s in &m.initial {
        b.atomics.push(create_starter(&m.steps[s].name));
    }
    for t in &m.transitions {
        b.atomics.push(create_guard(m, t, opts.mode));
    }
    b.atomics.push(create_manager());

    let mut works = Vec::new();
    let mut guards = Vec::new();

    // variable access
    for a in &m.actions {
        let an = action_name(&a.name);
        for x in a.body.read_set() {
            let xn = &m.vars.0[x].name;
            b.connect(
                &format!("read_{xn}_{an}"),
                (&gv_name(xn), "read"),
                &[(&an, &format!("read_{xn}"))],
            );
        }
        for x in a.body.write_set() {
            let xn = &m.vars.0[x].name;
            b.connect(
                &format!("write_{xn}_{an}"),
                (&an, &format!("write_{xn}")),
                &[(&gv_name(xn), "write")],
            );
        }
    }
    for t in &m.transitions {
        let gn = guard_name(&t.name);
        let reads: BTreeSet<usize> = t.guard.vars().iter().map(|v| v.index).collect();
        for x in reads {
            let xn = &m.vars.0[x].name;
            b.connect(
                &format!("read_{xn}_{gn}"),
                (&gv_name(xn), "read"),
                &[(&gn, &format!("read_{xn}"))],
            );
        }
    }
    // action control
    for a in &m.actions {
        let (an, bn) = (action_name(&a.name), acb_name(&a.name));
        works.push(b.connect(&format!("work_{}", a.name), (&bn, "work"), &[(&an, "work")]));
        b.connect(&format!("done_{}", a.name), (&an, "done"), &[(&bn, "done")]);
    }
    // initial steps
    let start_port = if opts.latch_entered_steps { "tInit" } else { "tIn" };
    for &s in &m.initial {
        let sn = &m.steps[s].name;
        b.connect(
            &format!("start_{sn}"),
            (&starter_name(sn), "tOut"),
            &[(&step_name(sn), start_port)],
        );
    }
    // transitions
    for t in &m.transitions {
        let src: Vec<String> = t.src.iter().map(|&s| step_name(&m.steps[s].name)).collect();
        let tgt: Vec<String> = t.tgt.iter().map(|&s| step_name(&m.steps[s].name)).collect();
        let mut recv: Vec<(&str, &str)> = src.iter().map(|s| (s.as_str(), "tOut")).collect();
        recv.extend(tgt.iter().map(|s| (s.as_str(), "tIn")));
        guards.push(b.connect(&format!("trans_{}", t.name), (&guard_name(&t.name), "guard"), &recv));
    }
    // action activation
    for s in &m.steps {
        let recv: Vec<(String, &str)> = s
            .blocks
            .iter()
            .filter_map(|bl| qualifier_port(bl.qualifier).map(|p| (acb_name(&m.actions[bl.action].name), p)))
            .collect();
        let recv: Vec<(&str, &str)> = recv.iter().map(|(c, p)| (c.as_str(), *p)).collect();
        b.connect(&format!("act_{}", s.name), (&step_name(&s.name), "act"), &recv);
    }
    if opts.mode == TemplateMode::Extended {
        for t in &m.transitions {
            let mut recv: BTreeSet<String> = BTreeSet::new();
            for (set, q) in [(&t.src, Qualifier::P0), (&t.tgt, Qualifier::P1)] {
                for &s in set {
                    for bl in &m.steps[s].blocks {
                        if bl.qualifier == q {
                            recv.insert(acb_name(&m.actions[bl.action].name));
                        }
                    }
                }
            }
            let recv: Vec<(&str, &str)> = recv.iter().map(|c| (c.as_str(), "N")).collect();
            b.connect(&format!("pulse_{}", t.name), (&guard_name(&t.name), "act"), &recv);
        }
    }
    // phase ticks
    let acbs: Vec<String> = m.actions.iter().map(|a| acb_name(&a.name)).collect();
    let gvs: Vec<String> = m.vars.iter().map(|x| gv_name(&x.name)).collect();
    let starters: Vec<String> = m.initial.iter().map(|&s| starter_name(&m.steps[s].name)).collect();
    let steps: Vec<String> = m.steps.iter().map(|s| step_name(&s.name)).collect();
    let guard_comps: Vec<String> = m.transitions.iter().map(|t| guard_name(&t.name)).collect();
    let tick = |port: &'static str, groups: &[&Vec<String>]| -> Vec<(String, &'static str)> {
        groups
            .iter()
            .flat_map(|g| g.iter().map(move |c| (c.clone(), port)))
            .collect()
    };
    let mut tick_ids = Vec::new();
    for (port, groups) in [
        ("wTick", vec![&acbs, &gvs, &starters]),
        ("tTick", vec![&acbs, &guard_comps, &gvs]),
        ("fTick", vec![&steps, &guard_comps]),
    ] {
        let recv = tick(port, &groups);
        let recv: Vec<(&str, &str)> = recv.iter().map(|(c, p)| (c.as_str(), *p)).collect();
        tick_ids.push(b.connect(port, (MANAGER, port), &recv));
    }

    // priorities: ticks below everything, work above the rest, work ordered
    // by the action order, guards ordered like their SFC transitions
    let n = b.connectors.len();
    let middle: Vec<usize> = (0..n)
        .filter(|c| !tick_ids.contains(c) && !works.contains(c))
        .collect();
    for &t in &tick_ids {
        for c in (0..n).filter(|c| !tick_ids.contains(c)) {
            b.priority.push((t, c));
        }
    }
    for &c in &middle {
        for &w in &works {
            b.priority.push((c, w));
        }
    }
    for pair in m.action_order.windows(2) {
        b.priority.push((works[pair[1]], works[pair[0]]));
    }
    if opts.sfc_priority_in_bip {
        let above = m.higher_than();
        for (t, set) in above.iter().enumerate() {
            for &u in set {
                if m.conflicting(t, u) {
                    b.priority.push((guards[t], guards[u]));
                }
            }
        }
    }

    debug_assert!(b.validate().is_empty(), "{:?}", b.validate());
    Ok((b, tm))
}
