//! SFC abstract syntax, configurations and structural validation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::diag::Diagnostic;
use crate::expr::{typecheck_expr, typecheck_program, Decls, Expr, Kind, Program, Valuation, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Qualifier {
    N,
    S,
    R,
    P0,
    P1,
}

impl Qualifier {
    pub fn parse(s: &str) -> Option<Qualifier> {
        Some(match s {
            "N" => Qualifier::N,
            "S" => Qualifier::S,
            "R" => Qualifier::R,
            "P0" => Qualifier::P0,
            "P1" => Qualifier::P1,
            _ => return None,
        })
    }
}

impl fmt::Display for Qualifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Which qualifiers a model may use. Only the non-extended fragment executes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Dialect {
    #[default]
    NonExtended,
    ExtendedSyntax,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionDef {
    pub name: String,
    pub body: Program,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ActionBlock {
    pub action: usize,
    pub qualifier: Qualifier,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SfcStep {
    pub name: String,
    pub blocks: Vec<ActionBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SfcTransition {
    pub name: String,
    pub src: BTreeSet<usize>,
    pub guard: Expr,
    pub tgt: BTreeSet<usize>,
}

/// An SFC. Cross references are indices into the owning vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SfcModel {
    pub name: String,
    pub vars: Decls,
    pub actions: Vec<ActionDef>,
    pub steps: Vec<SfcStep>,
    pub initial: BTreeSet<usize>,
    pub transitions: Vec<SfcTransition>,
    /// The total order on actions, least first.
    pub action_order: Vec<usize>,
    /// Pairs `(t, t2)` meaning `t2` has higher priority than `t`.
    pub priority: Vec<(usize, usize)>,
    pub dialect: Dialect,
}

impl SfcModel {
    pub fn step_index(&self, name: &str) -> Option<usize> {
        self.steps.iter().position(|s| s.name == name)
    }

    pub fn action_index(&self, name: &str) -> Option<usize> {
        self.actions.iter().position(|a| a.name == name)
    }

    pub fn transition_index(&self, name: &str) -> Option<usize> {
        self.transitions.iter().position(|t| t.name == name)
    }

    /// Actions of a step's N blocks (all blocks in a non-extended model).
    pub fn step_actions(&self, s: usize) -> BTreeSet<usize> {
        self.steps[s]
            .blocks
            .iter()
            .filter(|b| b.qualifier == Qualifier::N)
            .map(|b| b.action)
            .collect()
    }

    /// Steps whose blocks mention action `a`.
    pub fn steps_of_action(&self, a: usize) -> BTreeSet<usize> {
        (0..self.steps.len())
            .filter(|&s| self.steps[s].blocks.iter().any(|b| b.action == a))
            .collect()
    }

    /// Position of each action in the total order.
    pub fn order_rank(&self) -> Vec<usize> {
        let mut rank = vec![usize::MAX; self.actions.len()];
        for (i, &a) in self.action_order.iter().enumerate() {
            if a < rank.len() {
                rank[a] = i;
            }
        }
        rank
    }

    /// For each transition, the transitions of strictly higher priority
    /// (transitive closure of the stored pairs).
    pub fn higher_than(&self) -> Vec<BTreeSet<usize>> {
        let n = self.transitions.len();
        let mut above: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(lo, hi) in &self.priority {
            if lo < n && hi < n {
                above[lo].insert(hi);
            }
        }
        loop {
            let mut changed = false;
            for t in 0..n {
                let reach: Vec<usize> = above[t]
                    .iter()
                    .flat_map(|&u| above[u].iter().copied())
                    .collect();
                for u in reach {
                    changed |= above[t].insert(u);
                }
            }
            if !changed {
                return above;
            }
        }
    }

    /// Two transitions conflict when they share a source step.
    pub fn conflicting(&self, t: usize, u: usize) -> bool {
        !self.transitions[t].src.is_disjoint(&self.transitions[u].src)
    }

    pub fn is_extended(&self) -> bool {
        self.steps
            .iter()
            .any(|s| s.blocks.iter().any(|b| b.qualifier != Qualifier::N))
    }

    /// All structural diagnostics; empty iff the model is valid.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        for d in self.vars.iter() {
            out.extend(d.diagnostics());
            if matches!(d.name.as_str(), "true" | "false") {
                out.push(Diagnostic::new("reserved", format!("`{}` is reserved", d.name)));
            }
        }
        dup_check(&mut out, "variable", self.vars.iter().map(|d| d.name.as_str()));
        dup_check(&mut out, "action", self.actions.iter().map(|a| a.name.as_str()));
        dup_check(&mut out, "step", self.steps.iter().map(|s| s.name.as_str()));
        dup_check(&mut out, "transition", self.transitions.iter().map(|t| t.name.as_str()));

        for a in &self.actions {
            for mut d in typecheck_program(&a.body, &self.vars) {
                d.message = format!("action `{}`: {}", a.name, d.message);
                out.push(d);
            }
        }

        let (ns, na, nt) = (self.steps.len(), self.actions.len(), self.transitions.len());
        for s in &self.steps {
            let mut seen = BTreeSet::new();
            for b in &s.blocks {
                if b.action >= na {
                    out.push(Diagnostic::new(
                        "unknown-action",
                        format!("step `{}` references an unknown action", s.name),
                    ));
                    continue;
                }
                if !seen.insert(b.action) {
                    out.push(Diagnostic::new(
                        "duplicate",
                        format!(
                            "step `{}` lists action `{}` twice",
                            s.name, self.actions[b.action].name
                        ),
                    ));
                }
                if b.qualifier != Qualifier::N && self.dialect == Dialect::NonExtended {
                    out.push(Diagnostic::new(
                        "extended-feature",
                        format!(
                            "qualifier {} on `{}` in step `{}`: only N qualifier is supported for non-extended SFCs",
                            b.qualifier, self.actions[b.action].name, s.name
                        ),
                    ));
                }
            }
        }

        if self.initial.is_empty() {
            out.push(Diagnostic::new("no-initial-step", "no initial step"));
        }
        if self.initial.iter().any(|&s| s >= ns) {
            out.push(Diagnostic::new("unknown-step", "initial step out of range"));
        }

        for t in &self.transitions {
            if t.src.is_empty() || t.tgt.is_empty() {
                out.push(Diagnostic::new(
                    "empty-step-set",
                    format!("transition `{}` needs nonempty source and target", t.name),
                ));
            }
            if t.src.iter().chain(&t.tgt).any(|&s| s >= ns) {
                out.push(Diagnostic::new(
                    "unknown-step",
                    format!("transition `{}` references an unknown step", t.name),
                ));
            }
            let diags = typecheck_expr(&t.guard, &self.vars);
            if diags.is_empty() {
                let mut g = t.guard.clone();
                if g.resolve(&self.vars) != Ok(Kind::Bool) {
                    out.push(Diagnostic::new(
                        "type-mismatch",
                        format!("guard of `{}` is not boolean", t.name),
                    ));
                }
            }
            for mut d in diags {
                d.message = format!("guard of `{}`: {}", t.name, d.message);
                out.push(d);
            }
        }

        let mut counts = vec![0usize; na];
        for &a in &self.action_order {
            if a < na {
                counts[a] += 1;
            } else {
                out.push(Diagnostic::new("unknown-action", "action order names an unknown action"));
            }
        }
        for (a, &c) in counts.iter().enumerate() {
            if c == 0 {
                out.push(Diagnostic::new(
                    "order-incomplete",
                    format!("total order incomplete: action `{}` is not ordered", self.actions[a].name),
                ));
            } else if c > 1 {
                out.push(Diagnostic::new(
                    "order-duplicate",
                    format!("action `{}` appears {c} times in the order", self.actions[a].name),
                ));
            }
        }

        if self.priority.iter().any(|&(a, b)| a >= nt || b >= nt) {
            out.push(Diagnostic::new("unknown-transition", "priority names an unknown transition"));
        } else {
            let above = self.higher_than();
            for (t, set) in above.iter().enumerate() {
                if set.contains(&t) {
                    out.push(Diagnostic::new(
                        "priority-cycle",
                        format!(
                            "transition priority is not acyclic: `{}` is above itself",
                            self.transitions[t].name
                        ),
                    ));
                }
            }
        }
        out
    }

    pub fn initial_config(&self) -> Configuration {
        Configuration {
            f: self.vars.initial(),
            active_s: self.initial.clone(),
            active_a: BTreeSet::new(),
        }
    }
}

fn dup_check<'a>(out: &mut Vec<Diagnostic>, what: &str, names: impl Iterator<Item = &'a str>) {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            out.push(Diagnostic::new(
                "duplicate",
                format!("duplicate {what} `{n}`"),
            ));
        }
    }
}

fn name_list(names: impl Iterator<Item = String>) -> String {
    names.collect::<Vec<_>>().join(", ")
}

impl fmt::Display for SfcModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sfc {} {{", self.name)?;
        for d in self.vars.iter() {
            writeln!(f, "  {d}")?;
        }
        for a in &self.actions {
            if a.body.is_empty() {
                writeln!(f, "  action {} {{ }}", a.name)?;
            } else {
                writeln!(f, "  action {} {{ {} }}", a.name, a.body)?;
            }
        }
        for (i, s) in self.steps.iter().enumerate() {
            let init = if self.initial.contains(&i) { " init" } else { "" };
            write!(f, "  step {}{init} {{", s.name)?;
            for b in &s.blocks {
                write!(f, " {}", self.actions[b.action].name)?;
                if b.qualifier != Qualifier::N {
                    write!(f, " @{}", b.qualifier)?;
                }
                write!(f, ";")?;
            }
            writeln!(f, " }}")?;
        }
        let steplist = |set: &BTreeSet<usize>| {
            if set.len() == 1 {
                self.steps[*set.iter().next().unwrap()].name.clone()
            } else {
                format!("({})", name_list(set.iter().map(|&s| self.steps[s].name.clone())))
            }
        };
        for t in &self.transitions {
            writeln!(
                f,
                "  transition {} : {} -> {} when {};",
                t.name,
                steplist(&t.src),
                steplist(&t.tgt),
                t.guard
            )?;
        }
        if !self.action_order.is_empty() {
            let names: Vec<_> = self
                .action_order
                .iter()
                .map(|&a| self.actions[a].name.as_str())
                .collect();
            writeln!(f, "  order {};", names.join(" < "))?;
        }
        for &(lo, hi) in &self.priority {
            writeln!(
                f,
                "  priority {} > {};",
                self.transitions[hi].name, self.transitions[lo].name
            )?;
        }
        writeln!(f, "}}")
    }
}

/// A non-extended configuration `(f, activeS, activeA)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub f: Valuation,
    pub active_s: BTreeSet<usize>,
    pub active_a: BTreeSet<usize>,
}

/// Name-keyed rendering of a configuration; sorted keys make it canonical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigView {
    pub f: BTreeMap<String, Value>,
    pub active_s: BTreeSet<String>,
    pub active_a: BTreeSet<String>,
}

impl Configuration {
    pub fn view(&self, m: &SfcModel) -> ConfigView {
        ConfigView {
            f: self
                .f
                .named(&m.vars)
                .map(|(n, v)| (n.to_string(), v))
                .collect(),
            active_s: self.active_s.iter().map(|&s| m.steps[s].name.clone()).collect(),
            active_a: self.active_a.iter().map(|&a| m.actions[a].name.clone()).collect(),
        }
    }

    pub fn render(&self, m: &SfcModel) -> String {
        let v = self.view(m);
        let f: Vec<String> = v.f.iter().map(|(k, x)| format!("{k}={x}")).collect();
        format!(
            "({{{}}}, {{{}}}, {{{}}})",
            f.join(","),
            name_list(v.active_s.into_iter()),
            name_list(v.active_a.into_iter())
        )
    }
}

/// Extended configuration `(f, readyS, activeS, activeA, storedA)`. Only
/// represented, never executed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtConfiguration {
    pub f: Valuation,
    pub ready_s: BTreeSet<usize>,
    pub active_s: BTreeSet<usize>,
    pub active_a: BTreeSet<usize>,
    pub stored_a: BTreeSet<usize>,
}

impl ExtConfiguration {
    pub fn initial(m: &SfcModel) -> Self {
        ExtConfiguration {
            f: m.vars.initial(),
            ready_s: BTreeSet::new(),
            active_s: m.initial.clone(),
            active_a: BTreeSet::new(),
            stored_a: BTreeSet::new(),
        }
    }
}
