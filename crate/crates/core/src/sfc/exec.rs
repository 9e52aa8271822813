//! Operational semantics of non-extended SFCs: the micro-step relation, the
//! three-phase cycle, and a phase-disciplined scheduler whose micro-steps
//! are what the simulation checker matches against BIP.

use std::collections::BTreeSet;
use std::fmt;

use crate::expr::RangeViolation;
use crate::graph::{explore, Dest, Graph, Limits};

use super::model::{Configuration, SfcModel};

/// How `executeAction` picks the action to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Any active action.
    Literal,
    /// Only the least active action in the action order.
    #[default]
    Ordered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SemOptions {
    pub mode: Mode,
    /// Apply the transition priority filter. Off reproduces the bare
    /// micro-step formula that ignores priorities.
    pub priority: bool,
}

impl Default for SemOptions {
    fn default() -> Self {
        SemOptions {
            mode: Mode::Ordered,
            priority: true,
        }
    }
}

/// Micro-step labels. Literal micro-steps use singleton vectors; the phased
/// scheduler fires whole transition sets and whole activation batches.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SfcLabel {
    Execute(usize),
    Transition(Vec<usize>),
    Activate(usize, Vec<usize>),
}

impl SfcLabel {
    pub fn render(&self, m: &SfcModel) -> String {
        let acts = |v: &[usize]| {
            v.iter()
                .map(|&a| m.actions[a].name.as_str())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            SfcLabel::Execute(a) => format!("executeAction({})", m.actions[*a].name),
            SfcLabel::Transition(ts) => format!(
                "stepTransition({})",
                ts.iter()
                    .map(|&t| m.transitions[t].name.as_str())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            SfcLabel::Activate(s, a) => format!("activateAction({},{})", m.steps[*s].name, acts(a)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MicroStep {
    pub label: SfcLabel,
    pub target: Result<Configuration, RangeViolation>,
}

pub type ConfigGraph = Graph<Configuration, SfcLabel>;

/// Model plus precomputed order ranks and priority closure.
#[derive(Debug, Clone)]
pub struct Sem<'a> {
    pub m: &'a SfcModel,
    pub opts: SemOptions,
    rank: Vec<usize>,
    above: Vec<BTreeSet<usize>>,
}

impl<'a> Sem<'a> {
    pub fn new(m: &'a SfcModel, opts: SemOptions) -> Self {
        Sem {
            m,
            opts,
            rank: m.order_rank(),
            above: m.higher_than(),
        }
    }

    pub fn enabled(&self, c: &Configuration) -> Vec<usize> {
        (0..self.m.transitions.len())
            .filter(|&t| {
                let tr = &self.m.transitions[t];
                tr.src.is_subset(&c.active_s) && tr.guard.eval(&c.f).as_bool()
            })
            .collect()
    }

    /// Enabled transitions with no enabled conflicting transition of higher
    /// priority: the set taken simultaneously in the transition phase.
    pub fn takeable(&self, c: &Configuration) -> Vec<usize> {
        let en = self.enabled(c);
        if !self.opts.priority {
            return en;
        }
        en.iter()
            .copied()
            .filter(|&t| {
                !en.iter()
                    .any(|&u| self.above[t].contains(&u) && self.m.conflicting(t, u))
            })
            .collect()
    }

    /// Active actions ordered by the action order.
    pub fn ordered_active(&self, c: &Configuration) -> Vec<usize> {
        let mut v: Vec<usize> = c.active_a.iter().copied().collect();
        v.sort_by_key(|&a| self.rank[a]);
        v
    }

    pub fn execute(&self, c: &Configuration, a: usize) -> Result<Configuration, RangeViolation> {
        let mut next = c.clone();
        self.m.actions[a].body.exec(&mut next.f.0, &self.m.vars)?;
        next.active_a.remove(&a);
        Ok(next)
    }

    pub fn take(&self, c: &Configuration, ts: &[usize]) -> Configuration {
        let mut next = c.clone();
        for &t in ts {
            for s in &self.m.transitions[t].src {
                next.active_s.remove(s);
            }
        }
        for &t in ts {
            next.active_s.extend(self.m.transitions[t].tgt.iter().copied());
        }
        next
    }

    /// Successors under the three micro-step predicates.
    pub fn micro_successors(&self, c: &Configuration) -> Vec<MicroStep> {
        let mut out = Vec::new();
        let acts = self.ordered_active(c);
        let chosen: &[usize] = match self.opts.mode {
            Mode::Literal => &acts,
            Mode::Ordered => &acts[..acts.len().min(1)],
        };
        for &a in chosen {
            out.push(MicroStep {
                label: SfcLabel::Execute(a),
                target: self.execute(c, a),
            });
        }
        for t in self.takeable(c) {
            out.push(MicroStep {
                label: SfcLabel::Transition(vec![t]),
                target: Ok(self.take(c, &[t])),
            });
        }
        for &s in &c.active_s {
            for a in self.m.step_actions(s) {
                if !c.active_a.contains(&a) {
                    let mut next = c.clone();
                    next.active_a.insert(a);
                    out.push(MicroStep {
                        label: SfcLabel::Activate(s, vec![a]),
                        target: Ok(next),
                    });
                }
            }
        }
        out
    }

    /// One full cycle: execute every active action in order, take the
    /// transition set, then activate the actions of all active steps.
    pub fn run_cycle(&self, c: &Configuration) -> Result<Configuration, RangeViolation> {
        let mut cur = c.clone();
        for a in self.ordered_active(c) {
            cur = self.execute(&cur, a)?;
        }
        let ts = self.takeable(&cur);
        cur = self.take(&cur, &ts);
        cur.active_a = cur
            .active_s
            .iter()
            .flat_map(|&s| self.m.step_actions(s))
            .collect();
        Ok(cur)
    }

    /// The micro-step available in `phase`, if any, with the phase that follows it.
    fn phase_step(
        &self,
        c: &Configuration,
        phase: Phase,
    ) -> Option<(SfcLabel, Result<Configuration, RangeViolation>, Phase)> {
        match phase {
            Phase::Execute => {
                let a = *self.ordered_active(c).first()?;
                Some((SfcLabel::Execute(a), self.execute(c, a), Phase::Execute))
            }
            Phase::Transition => {
                let ts = self.takeable(c);
                if ts.is_empty() {
                    return None;
                }
                let next = self.take(c, &ts);
                Some((SfcLabel::Transition(ts), Ok(next), Phase::Activate))
            }
            Phase::Activate => c.active_s.iter().find_map(|&s| {
                let missing: Vec<usize> = self
                    .m
                    .step_actions(s)
                    .difference(&c.active_a)
                    .copied()
                    .collect();
                if missing.is_empty() {
                    return None;
                }
                let mut next = c.clone();
                next.active_a.extend(missing.iter().copied());
                Some((SfcLabel::Activate(s, missing), Ok(next), Phase::Activate))
            }),
        }
    }

    /// Advances through phases that offer no micro-step. A node where a whole
    /// round offers nothing is terminal.
    pub fn normalize(&self, c: Configuration, mut phase: Phase) -> PhasedNode {
        for _ in 0..3 {
            if self.phase_step(&c, phase).is_some() {
                return PhasedNode { c, phase, terminal: false };
            }
            phase = phase.next();
        }
        PhasedNode {
            c,
            phase: Phase::Execute,
            terminal: true,
        }
    }

    pub fn phased_initial(&self) -> PhasedNode {
        self.normalize(self.m.initial_config(), Phase::Execute)
    }

    /// The unique phased successor of a node (none if terminal).
    pub fn phased_successors(&self, n: &PhasedNode) -> Vec<(SfcLabel, Result<PhasedNode, RangeViolation>)> {
        if n.terminal {
            return Vec::new();
        }
        match self.phase_step(&n.c, n.phase) {
            Some((label, res, next)) => vec![(label, res.map(|c| self.normalize(c, next)))],
            None => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    Execute,
    Transition,
    Activate,
}

impl Phase {
    pub fn next(self) -> Phase {
        match self {
            Phase::Execute => Phase::Transition,
            Phase::Transition => Phase::Activate,
            Phase::Activate => Phase::Execute,
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Execute => "execute",
            Phase::Transition => "transition",
            Phase::Activate => "activate",
        })
    }
}

/// A configuration positioned at the next phase that can make progress.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhasedNode {
    pub c: Configuration,
    pub phase: Phase,
    pub terminal: bool,
}

pub fn initial_config(m: &SfcModel) -> Configuration {
    m.initial_config()
}

pub fn micro_successors(m: &SfcModel, c: &Configuration, opts: SemOptions) -> Vec<MicroStep> {
    Sem::new(m, opts).micro_successors(c)
}

pub fn run_cycle(m: &SfcModel, c: &Configuration, opts: SemOptions) -> Result<Configuration, RangeViolation> {
    Sem::new(m, opts).run_cycle(c)
}

/// Breadth-first closure of the micro-step relation from the initial configuration.
pub fn reachable_configs(m: &SfcModel, opts: SemOptions, limits: Limits) -> ConfigGraph {
    let sem = Sem::new(m, opts);
    explore(m.initial_config(), limits, |c| {
        sem.micro_successors(c)
            .into_iter()
            .map(|s| (s.label, s.target))
            .collect()
    })
}

/// Closure under the phased scheduler.
pub fn reachable_phased(m: &SfcModel, opts: SemOptions, limits: Limits) -> Graph<PhasedNode, SfcLabel> {
    let sem = Sem::new(m, opts);
    explore(sem.phased_initial(), limits, |n| sem.phased_successors(n))
}

/// Closure under whole cycles.
pub fn reachable_cycles(m: &SfcModel, opts: SemOptions, limits: Limits) -> Graph<Configuration, ()> {
    let sem = Sem::new(m, opts);
    explore(m.initial_config(), limits, |c| vec![((), sem.run_cycle(c))])
}

/// Configurations observed at the end of some cycle: targets of cycle edges.
/// The initial configuration is included only if a cycle returns to it.
pub fn cycle_boundaries(g: &Graph<Configuration, ()>) -> Vec<&Configuration> {
    let mut hit = vec![false; g.nodes.len()];
    for es in &g.edges {
        for e in es {
            if let Dest::Node(i) = e.to {
                hit[i] = true;
            }
        }
    }
    g.nodes
        .iter()
        .zip(hit)
        .filter_map(|(n, h)| h.then_some(n))
        .collect()
}

/// Runs `k` cycles from the initial configuration.
pub fn cycle_trace(m: &SfcModel, opts: SemOptions, k: usize) -> Result<Vec<Configuration>, RangeViolation> {
    let sem = Sem::new(m, opts);
    let mut out = vec![m.initial_config()];
    for _ in 0..k {
        let next = sem.run_cycle(out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}
