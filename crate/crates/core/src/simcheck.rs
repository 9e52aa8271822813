//! The correspondence between SFC configurations and states of the
//! translated model, and checks built on it: initial relatedness, a bounded
//! weak-simulation search, invariant transfer, cycle-by-cycle equivalence,
//! and a static warning for reads of values written earlier in a cycle.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::bip::{initial_state, BipOptions, BipSem, BipState, ComposedModel, Interaction};
use crate::expr::Value;
use crate::graph::{Limits, PartialGraph};
use crate::invariants::{check_bip_invariant, check_sfc_invariant, resolve_sfc, t_i, BipInv, InvReport, Observe};
use crate::sfc::{Configuration, PhasedNode, Sem, SemOptions, SfcModel};
use crate::transform::TraceMap;

/// Which GV variable the SFC valuation is compared with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule3 {
    /// The write buffer `t`: the latest value written, committed or not.
    #[default]
    Pending,
    /// The committed value `v`.
    Committed,
}

impl fmt::Display for Rule3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule3::Pending => "pending",
            Rule3::Committed => "committed",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RelationOptions {
    pub rule3: Rule3,
    /// Interactions allowed to match one SFC micro-step. `None` means four
    /// per connector.
    pub depth: Option<usize>,
}

impl RelationOptions {
    pub fn depth_for(&self, b: &ComposedModel) -> usize {
        self.depth.unwrap_or(4 * b.connectors.len()).max(1)
    }
}

/// Index form of the trace map against one composed model.
#[derive(Debug, Clone)]
pub struct Relation {
    /// Per SFC step: component and its `DISABLED` location.
    steps: Vec<(usize, usize)>,
    /// Per action: ACB component and its `e` variable.
    acbs: Vec<(usize, usize)>,
    /// Per variable: GV component, `t` and `v`.
    gvs: Vec<(usize, usize, usize)>,
}

/// Outcome of the three rules for one pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleCheck {
    pub rule1: bool,
    pub rule2: bool,
    pub rule3: bool,
    pub mismatches: Vec<String>,
}

impl RuleCheck {
    pub fn holds(&self) -> bool {
        self.rule1 && self.rule2 && self.rule3
    }

    pub fn failed(&self) -> Vec<&'static str> {
        [(self.rule1, "rule1"), (self.rule2, "rule2"), (self.rule3, "rule3")]
            .into_iter()
            .filter_map(|(ok, n)| (!ok).then_some(n))
            .collect()
    }
}

impl Relation {
    pub fn new(m: &SfcModel, b: &ComposedModel, tm: &TraceMap) -> Relation {
        let comp = |name: &str| {
            b.atomic_index(name)
                .unwrap_or_else(|| panic!("trace map names `{name}`, missing from the model"))
        };
        let steps = m
            .steps
            .iter()
            .map(|s| {
                let c = comp(&tm.steps[&s.name]);
                (c, b.atomics[c].loc_index("DISABLED").expect("step components have DISABLED"))
            })
            .collect();
        let acbs = m
            .actions
            .iter()
            .map(|a| {
                let c = comp(&tm.actions[&a.name].acb);
                (c, b.atomics[c].vars.index_of("e").expect("ACBs have e"))
            })
            .collect();
        let gvs = m
            .vars
            .iter()
            .map(|x| {
                let c = comp(&tm.vars[&x.name]);
                let v = &b.atomics[c].vars;
                (c, v.index_of("t").expect("GV t"), v.index_of("v").expect("GV v"))
            })
            .collect();
        Relation { steps, acbs, gvs }
    }

    pub fn check(&self, m: &SfcModel, c: &Configuration, s: &BipState, rule3: Rule3) -> RuleCheck {
        let mut mismatches = Vec::new();
        let mut rule1 = true;
        for (i, &(comp, dis)) in self.steps.iter().enumerate() {
            if c.active_s.contains(&i) != (s.locs[comp] != dis) {
                rule1 = false;
                mismatches.push(format!("step {}", m.steps[i].name));
            }
        }
        let mut rule2 = true;
        for (i, &(comp, e)) in self.acbs.iter().enumerate() {
            if c.active_a.contains(&i) != (s.vals[comp][e] == Value::Bool(true)) {
                rule2 = false;
                mismatches.push(format!("action {}", m.actions[i].name));
            }
        }
        let mut rule3_ok = true;
        for (i, &(comp, t, v)) in self.gvs.iter().enumerate() {
            let got = s.vals[comp][if rule3 == Rule3::Pending { t } else { v }];
            if c.f.0[i] != got {
                rule3_ok = false;
                mismatches.push(format!("variable {}: {} vs {got}", m.vars.0[i].name, c.f.0[i]));
            }
        }
        RuleCheck {
            rule1,
            rule2,
            rule3: rule3_ok,
            mismatches,
        }
    }

    pub fn relates(&self, c: &Configuration, s: &BipState, rule3: Rule3) -> bool {
        self.steps
            .iter()
            .enumerate()
            .all(|(i, &(comp, dis))| c.active_s.contains(&i) == (s.locs[comp] != dis))
            && self
                .acbs
                .iter()
                .enumerate()
                .all(|(i, &(comp, e))| c.active_a.contains(&i) == (s.vals[comp][e] == Value::Bool(true)))
            && self.gvs.iter().enumerate().all(|(i, &(comp, t, v))| {
                c.f.0[i] == s.vals[comp][if rule3 == Rule3::Pending { t } else { v }]
            })
    }
}

/// `R(c, ŝ)` under the given rule-3 variant.
pub fn relates(m: &SfcModel, b: &ComposedModel, tm: &TraceMap, c: &Configuration, s: &BipState, opts: RelationOptions) -> bool {
    Relation::new(m, b, tm).relates(c, s, opts.rule3)
}

/// The initial state after every starter connector has fired.
pub fn settled_initial(b: &ComposedModel, tm: &TraceMap) -> BipState {
    let sem = BipSem::new(b, BipOptions::default());
    let mut s = initial_state(b);
    for step in tm.starters.keys() {
        let Some(c) = b.connector_index(&format!("start_{step}")) else { continue };
        if let Some(i) = sem.connector_interactions(&s, c).into_iter().next() {
            if let Ok(next) = sem.apply(&s, &i) {
                s = next;
            }
        }
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct G1aReport {
    pub holds: bool,
    pub rule3_variant: Rule3,
    /// Against the initial state before any interaction.
    pub raw: RuleCheck,
    /// Against the state after the starters fired; this is the verdict.
    pub settled: RuleCheck,
}

pub fn check_g1a(m: &SfcModel, b: &ComposedModel, tm: &TraceMap, opts: RelationOptions) -> G1aReport {
    let rel = Relation::new(m, b, tm);
    let c0 = m.initial_config();
    let raw = rel.check(m, &c0, &initial_state(b), opts.rule3);
    let settled = rel.check(m, &c0, &settled_initial(b, tm), opts.rule3);
    G1aReport {
        holds: settled.holds(),
        rule3_variant: opts.rule3,
        raw,
        settled,
    }
}

// ------------------------------------------------------------------- G1b

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    DepthExhausted,
    LimitExceeded,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::DepthExhausted => "depth-exhausted",
            Verdict::LimitExceeded => "limit-exceeded",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub sfc_step_label: String,
    pub c: String,
    pub c_prime: String,
    pub c_hat: String,
    pub frontier_size: usize,
    /// `refuted` when every state within reach was examined, otherwise
    /// `depth-exhausted`.
    pub reason: &'static str,
    /// Among the examined states, one violating the fewest rules.
    pub closest: String,
    pub closest_failed_rules: Vec<&'static str>,
    pub closest_mismatches: Vec<String>,
}

/// One discharged obligation: from `from` the interactions in `path` lead to
/// a state related to `target`.
#[derive(Debug, Clone)]
pub struct Witness {
    pub from: BipState,
    pub target: Configuration,
    pub path: Vec<Interaction>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimReport {
    pub verdict: Verdict,
    pub rule3_variant: Rule3,
    pub depth_bound: usize,
    pub pairs_checked: usize,
    pub max_match_depth: usize,
    /// SFC micro-steps ending in a range violation; nothing to match.
    pub sfc_defects: usize,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub witnesses: Vec<Witness>,
}

enum Match {
    Found(Vec<Interaction>, BipState),
    Closed { explored: Vec<BipState> },
    Bounded { frontier: usize, explored: Vec<BipState> },
}

/// Breadth-first search (at least one interaction, at most `depth`) for a
/// state satisfying `goal`.
fn search(sem: &BipSem, from: &BipState, depth: usize, limit: usize, mut goal: impl FnMut(&BipState) -> bool) -> Match {
    let mut parent: HashMap<BipState, Option<(BipState, Interaction)>> = HashMap::new();
    parent.insert(from.clone(), None);
    let mut order = vec![from.clone()];
    let mut layer = vec![from.clone()];
    let rebuild = |parent: &HashMap<BipState, Option<(BipState, Interaction)>>, mut cur: BipState, last: Interaction| {
        let mut path = vec![last];
        while let Some(Some((p, i))) = parent.get(&cur) {
            path.push(i.clone());
            cur = p.clone();
        }
        path.reverse();
        path
    };
    for d in 1..=depth {
        let mut next = Vec::new();
        for s in &layer {
            for (i, r) in sem.successors(s) {
                let Ok(t) = r else { continue };
                if goal(&t) {
                    return Match::Found(rebuild(&parent, s.clone(), i), t);
                }
                if !parent.contains_key(&t) && parent.len() < limit {
                    parent.insert(t.clone(), Some((s.clone(), i)));
                    order.push(t.clone());
                    next.push(t);
                }
            }
        }
        if next.is_empty() {
            return Match::Closed { explored: order };
        }
        layer = next;
        if d == depth {
            return Match::Bounded {
                frontier: layer.len(),
                explored: order,
            };
        }
    }
    Match::Bounded {
        frontier: layer.len(),
        explored: order,
    }
}

/// Bounded weak-simulation check of the phased SFC scheduler against the
/// translated model.
pub fn check_g1b(
    m: &SfcModel,
    b: &ComposedModel,
    tm: &TraceMap,
    sfc_opts: SemOptions,
    bip_opts: BipOptions,
    opts: RelationOptions,
    limits: Limits,
) -> SimReport {
    let sem = Sem::new(m, sfc_opts);
    let bsem = BipSem::new(b, bip_opts);
    let rel = Relation::new(m, b, tm);
    let depth = opts.depth_for(b);
    let mut report = SimReport {
        verdict: Verdict::Holds,
        rule3_variant: opts.rule3,
        depth_bound: depth,
        pairs_checked: 0,
        max_match_depth: 0,
        sfc_defects: 0,
        failures: Vec::new(),
        witnesses: Vec::new(),
    };
    let start = (sem.phased_initial(), settled_initial(b, tm));
    if !rel.relates(&start.0.c, &start.1, opts.rule3) {
        let chk = rel.check(m, &start.0.c, &start.1, opts.rule3);
        report.verdict = Verdict::Fails;
        report.failures.push(Failure {
            sfc_step_label: "initial".into(),
            c: start.0.c.render(m),
            c_prime: start.0.c.render(m),
            c_hat: start.1.render(b),
            frontier_size: 0,
            reason: "refuted",
            closest: start.1.render(b),
            closest_failed_rules: chk.failed(),
            closest_mismatches: chk.mismatches,
        });
        return report;
    }
    let mut seen: HashSet<(PhasedNode, BipState)> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some((node, s)) = queue.pop_front() {
        report.pairs_checked += 1;
        for (label, next) in sem.phased_successors(&node) {
            let Ok(next) = next else {
                report.sfc_defects += 1;
                continue;
            };
            let target = next.c.clone();
            match search(&bsem, &s, depth, limits.max_states, |t| rel.relates(&target, t, opts.rule3)) {
                Match::Found(path, t) => {
                    report.max_match_depth = report.max_match_depth.max(path.len());
                    report.witnesses.push(Witness {
                        from: s.clone(),
                        target: target.clone(),
                        path,
                    });
                    let pair = (next, t);
                    if !seen.contains(&pair) {
                        if seen.len() >= limits.max_states {
                            report.verdict = Verdict::LimitExceeded;
                            return report;
                        }
                        seen.insert(pair.clone());
                        queue.push_back(pair);
                    }
                }
                Match::Closed { explored } => {
                    report.verdict = Verdict::Fails;
                    report
                        .failures
                        .push(failure(m, b, &rel, opts.rule3, &label.render(m), &node.c, &target, &s, 0, "refuted", &explored));
                }
                Match::Bounded { frontier, explored } => {
                    if report.verdict == Verdict::Holds {
                        report.verdict = Verdict::DepthExhausted;
                    }
                    report.failures.push(failure(
                        m,
                        b,
                        &rel,
                        opts.rule3,
                        &label.render(m),
                        &node.c,
                        &target,
                        &s,
                        frontier,
                        "depth-exhausted",
                        &explored,
                    ));
                }
            }
        }
        if !report.failures.is_empty() {
            return report;
        }
    }
    report
}

#[allow(clippy::too_many_arguments)]
fn failure(
    m: &SfcModel,
    b: &ComposedModel,
    rel: &Relation,
    rule3: Rule3,
    label: &str,
    c: &Configuration,
    target: &Configuration,
    s: &BipState,
    frontier: usize,
    reason: &'static str,
    explored: &[BipState],
) -> Failure {
    let (closest, chk) = explored
        .iter()
        .skip(1)
        .map(|t| (t, rel.check(m, target, t, rule3)))
        .min_by_key(|(_, k)| (k.failed().len(), k.mismatches.len()))
        .unwrap_or_else(|| (s, rel.check(m, target, s, rule3)));
    Failure {
        sfc_step_label: label.to_string(),
        c: c.render(m),
        c_prime: target.render(m),
        c_hat: s.render(b),
        frontier_size: frontier,
        reason,
        closest: closest.render(b),
        closest_failed_rules: chk.failed(),
        closest_mismatches: chk.mismatches,
    }
}

/// Replays a witness and re-checks the relation at its end.
pub fn replay_witness(m: &SfcModel, b: &ComposedModel, tm: &TraceMap, w: &Witness, bip_opts: BipOptions, rule3: Rule3) -> bool {
    let sem = BipSem::new(b, bip_opts);
    let mut s = w.from.clone();
    for i in &w.path {
        if !sem.enabled(&s).contains(i) {
            return false;
        }
        match sem.apply(&s, i) {
            Ok(t) => s = t,
            Err(_) => return false,
        }
    }
    !w.path.is_empty() && Relation::new(m, b, tm).relates(&w.target, &s, rule3)
}

// -------------------------------------------------------------------- G2

#[derive(Debug, Clone, Serialize)]
pub struct G2Report {
    pub holds: bool,
    pub bip: InvReport,
    /// Absent when the BIP side already fails or the translation is refused.
    pub translated: Option<String>,
    pub sfc: Option<InvReport>,
    pub note: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum G2Error {
    #[error(transparent)]
    Partial(#[from] PartialGraph),
    #[error("{0}")]
    Translate(#[from] crate::invariants::TranslateError),
    #[error("{0}")]
    Resolve(#[from] crate::diag::Diagnostics),
}

/// Checks `inv` on the translated model, then its image under `t_i` on the
/// chart.
#[allow(clippy::too_many_arguments)]
pub fn check_g2_instance(
    m: &SfcModel,
    b: &ComposedModel,
    tm: &TraceMap,
    inv: &BipInv,
    observe: Observe,
    sfc_opts: SemOptions,
    bip_opts: BipOptions,
    limits: Limits,
) -> Result<G2Report, G2Error> {
    let bip = check_bip_invariant(b, inv, bip_opts, limits)?;
    if !bip.holds {
        return Ok(G2Report {
            holds: false,
            bip,
            translated: None,
            sfc: None,
            note: Some("not a BIP invariant".into()),
        });
    }
    let mut s = t_i(inv, tm)?;
    resolve_sfc(&mut s, m)?;
    let sfc = check_sfc_invariant(m, &s, observe, sfc_opts, limits)?;
    Ok(G2Report {
        holds: sfc.holds,
        bip,
        translated: Some(s.to_string()),
        sfc: Some(sfc),
        note: None,
    })
}

// ------------------------------------------------------- static warning

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct RawWarning {
    pub writer: String,
    pub reader: String,
    pub var: String,
}

impl fmt::Display for RawWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "`{}` reads `{}` after `{}` wrote it in the same cycle; the translated model serves the value committed in the previous cycle",
            self.reader, self.var, self.writer
        )
    }
}

/// Step sets reachable when every guard may be true.
fn skeleton_step_sets(m: &SfcModel) -> BTreeSet<BTreeSet<usize>> {
    let mut seen = BTreeSet::from([m.initial.clone()]);
    let mut queue = VecDeque::from([m.initial.clone()]);
    while let Some(set) = queue.pop_front() {
        for t in &m.transitions {
            if t.src.is_subset(&set) {
                let next: BTreeSet<usize> = set.difference(&t.src).chain(&t.tgt).copied().collect();
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

/// A transition that may enter a step that is already active.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ReentryWarning {
    pub transition: String,
    pub step: String,
}

impl fmt::Display for ReentryWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "`{}` may enter `{}` while it is active; the step component only accepts entry when disabled",
            self.transition, self.step
        )
    }
}

/// Transitions that, with every guard treated as true, can fire while one of
/// their target steps stays active.
pub fn static_reentry_warning(m: &SfcModel) -> Vec<ReentryWarning> {
    let mut out = BTreeSet::new();
    for set in skeleton_step_sets(m) {
        for t in m.transitions.iter().filter(|t| t.src.is_subset(&set)) {
            for &s in &t.tgt {
                if set.contains(&s) {
                    out.insert(ReentryWarning {
                        transition: t.name.clone(),
                        step: m.steps[s].name.clone(),
                    });
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Conflicting transitions with no priority between them. Both can be taken
/// in one cycle, which the guard components cannot reproduce.
pub fn static_conflict_warning(m: &SfcModel) -> Vec<(String, String)> {
    let above = m.higher_than();
    let mut out = Vec::new();
    for t in 0..m.transitions.len() {
        for u in t + 1..m.transitions.len() {
            if m.conflicting(t, u) && !above[t].contains(&u) && !above[u].contains(&t) {
                out.push((m.transitions[t].name.clone(), m.transitions[u].name.clone()));
            }
        }
    }
    out
}

/// Pairs `writer ⊑ reader` of possibly co-active actions where the reader
/// reads a variable the writer writes.
pub fn static_raw_warning(m: &SfcModel) -> Vec<RawWarning> {
    let sets = skeleton_step_sets(m);
    let mut co: BTreeSet<(usize, usize)> = BTreeSet::new();
    for set in &sets {
        let acts: BTreeSet<usize> = set.iter().flat_map(|&s| m.step_actions(s)).collect();
        for &a in &acts {
            for &b in &acts {
                co.insert((a, b));
            }
        }
    }
    let rank = m.order_rank();
    let mut out = BTreeSet::new();
    for &(w, r) in &co {
        if w == r || rank[w] >= rank[r] {
            continue;
        }
        let writes = m.actions[w].body.write_set();
        for x in m.actions[r].body.read_set().intersection(&writes) {
            out.insert(RawWarning {
                writer: m.actions[w].name.clone(),
                reader: m.actions[r].name.clone(),
                var: m.vars.0[*x].name.clone(),
            });
        }
    }
    out.into_iter().collect()
}

// ------------------------------------------------ cycle-by-cycle equality

/// End of a manager cycle: the manager is idle and only `wTick` can fire,
/// or nothing can.
pub fn is_boundary(sem: &BipSem, tm: &TraceMap, s: &BipState) -> bool {
    let b = sem.m;
    let mgr = b.atomic_index(&tm.manager).expect("manager present");
    let done = b.atomics[mgr].loc_index("DONE");
    let en = sem.enabled(s);
    en.is_empty()
        || (Some(s.locs[mgr]) == done && en.iter().all(|i| b.connectors[i.connector].name == "wTick"))
}

/// Boundary states reachable from `s` without passing another boundary.
fn next_boundaries(sem: &BipSem, tm: &TraceMap, s: &BipState, limit: usize, include_self: bool) -> Result<Vec<BipState>, usize> {
    let mut seen: HashSet<BipState> = HashSet::from([s.clone()]);
    let mut queue = VecDeque::from([s.clone()]);
    let mut out = Vec::new();
    if include_self && is_boundary(sem, tm, s) {
        return Ok(vec![s.clone()]);
    }
    while let Some(cur) = queue.pop_front() {
        for (_, r) in sem.successors(&cur) {
            let Ok(t) = r else { continue };
            if is_boundary(sem, tm, &t) {
                if !out.contains(&t) {
                    out.push(t);
                }
                continue;
            }
            if !seen.insert(t.clone()) {
                continue;
            }
            if seen.len() > limit {
                return Err(queue.len());
            }
            queue.push_back(t);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleStep {
    pub cycle: usize,
    pub sfc: String,
    pub bip: Option<String>,
    pub related: bool,
    pub mismatches: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleReport {
    pub holds: bool,
    pub cycles: usize,
    pub steps: Vec<CycleStep>,
}

/// Runs `k` SFC cycles next to `k` manager cycles and compares them at every
/// boundary with the committed rule-3 variant.
pub fn check_cycle_equivalence(
    m: &SfcModel,
    b: &ComposedModel,
    tm: &TraceMap,
    sfc_opts: SemOptions,
    bip_opts: BipOptions,
    k: usize,
    limits: Limits,
) -> CycleReport {
    let sem = Sem::new(m, sfc_opts);
    let bsem = BipSem::new(b, bip_opts);
    let rel = Relation::new(m, b, tm);
    let mut steps = Vec::new();
    let mut c = m.initial_config();
    let mut s = initial_state(b);
    for cycle in 0..=k {
        if cycle > 0 {
            match sem.run_cycle(&c) {
                Ok(n) => c = n,
                Err(e) => {
                    steps.push(CycleStep {
                        cycle,
                        sfc: format!("range violation: {e}"),
                        bip: None,
                        related: false,
                        mismatches: Vec::new(),
                    });
                    break;
                }
            }
        }
        let cands = match next_boundaries(&bsem, tm, &s, limits.max_states, cycle == 0) {
            Ok(v) => v,
            Err(_) => Vec::new(),
        };
        let hit = cands.iter().find(|t| rel.relates(&c, t, Rule3::Committed));
        match hit {
            Some(t) => {
                steps.push(CycleStep {
                    cycle,
                    sfc: c.render(m),
                    bip: Some(t.render(b)),
                    related: true,
                    mismatches: Vec::new(),
                });
                s = t.clone();
            }
            None => {
                let first = cands.first();
                steps.push(CycleStep {
                    cycle,
                    sfc: c.render(m),
                    bip: first.map(|t| t.render(b)),
                    related: false,
                    mismatches: first
                        .map(|t| rel.check(m, &c, t, Rule3::Committed).mismatches)
                        .unwrap_or_default(),
                });
                break;
            }
        }
    }
    CycleReport {
        holds: steps.len() == k + 1 && steps.iter().all(|s| s.related),
        cycles: k,
        steps,
    }
}
