//! Execution of composed models: enabled interactions with global priority
//! filtering, data transfer from the sender, reachability.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::expr::{RangeViolation, Value};
use crate::graph::{explore, Graph, Limits};

use super::model::ComposedModel;

/// Global state: one location and one valuation per atomic component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BipState {
    pub locs: Vec<usize>,
    pub vals: Vec<Vec<Value>>,
}

impl BipState {
    pub fn render(&self, m: &ComposedModel) -> String {
        let parts: Vec<String> = m
            .atomics
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let vals: Vec<String> = a
                    .vars
                    .iter()
                    .zip(&self.vals[i])
                    .map(|(d, v)| format!("{}={v}", d.name))
                    .collect();
                if vals.is_empty() {
                    format!("{}@{}", a.name, a.locations[self.locs[i]])
                } else {
                    format!("{}@{}[{}]", a.name, a.locations[self.locs[i]], vals.join(","))
                }
            })
            .collect();
        parts.join(" ")
    }
}

/// One firing of a connector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interaction {
    pub connector: usize,
    /// Chosen transition index per endpoint, sender first.
    pub choice: Vec<usize>,
    /// Value sampled from the sender's bound variable, if it has one.
    pub transfer: Option<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InteractionView {
    pub connector: String,
    pub participants: Vec<String>,
    pub transfer: Option<Value>,
}

impl Interaction {
    pub fn view(&self, m: &ComposedModel) -> InteractionView {
        let c = &m.connectors[self.connector];
        InteractionView {
            connector: c.name.clone(),
            participants: c
                .endpoints()
                .zip(&self.choice)
                .map(|(e, &t)| {
                    let a = &m.atomics[e.comp];
                    let tr = &a.transitions[t];
                    format!(
                        "{}.{}:{}->{}",
                        a.name, a.ports[e.port].name, a.locations[tr.src], a.locations[tr.tgt]
                    )
                })
                .collect(),
            transfer: self.transfer,
        }
    }

    pub fn render(&self, m: &ComposedModel) -> String {
        let v = self.view(m);
        match v.transfer {
            Some(x) => format!("{}[{}]<{x}>", v.connector, v.participants.join(" ")),
            None => format!("{}[{}]", v.connector, v.participants.join(" ")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BipOptions {
    /// Run updates first, then overwrite receivers' bound variables.
    pub transfer_after: bool,
}

pub type StateGraph = Graph<BipState, Interaction>;

/// Model plus per-(component, port) transition index and priority closure.
#[derive(Debug, Clone)]
pub struct BipSem<'a> {
    pub m: &'a ComposedModel,
    pub opts: BipOptions,
    by_port: Vec<Vec<Vec<usize>>>,
    above: Vec<BTreeSet<usize>>,
}

impl<'a> BipSem<'a> {
    pub fn new(m: &'a ComposedModel, opts: BipOptions) -> Self {
        let by_port = m
            .atomics
            .iter()
            .map(|a| {
                let mut v = vec![Vec::new(); a.ports.len()];
                for (i, t) in a.transitions.iter().enumerate() {
                    v[t.port].push(i);
                }
                v
            })
            .collect();
        BipSem {
            m,
            opts,
            by_port,
            above: m.higher_than(),
        }
    }

    pub fn initial(&self) -> BipState {
        initial_state(self.m)
    }

    /// Transitions of `comp` on `port` that are enabled in `s`.
    fn ready(&self, s: &BipState, comp: usize, port: usize) -> Vec<usize> {
        let a = &self.m.atomics[comp];
        self.by_port[comp][port]
            .iter()
            .copied()
            .filter(|&t| {
                let tr = &a.transitions[t];
                tr.src == s.locs[comp] && tr.guard.eval(&s.vals[comp]).as_bool()
            })
            .collect()
    }

    /// All interactions of connector `c` in `s`, one per combination of
    /// enabled endpoint transitions.
    pub fn connector_interactions(&self, s: &BipState, c: usize) -> Vec<Interaction> {
        let con = &self.m.connectors[c];
        let mut combos: Vec<Vec<usize>> = vec![Vec::new()];
        for e in con.endpoints() {
            let ready = self.ready(s, e.comp, e.port);
            if ready.is_empty() {
                return Vec::new();
            }
            combos = combos
                .into_iter()
                .flat_map(|pre| {
                    ready.iter().map(move |&t| {
                        let mut v = pre.clone();
                        v.push(t);
                        v
                    })
                })
                .collect();
        }
        let sender = &self.m.atomics[con.sender.comp];
        let transfer = sender.ports[con.sender.port]
            .binds
            .map(|v| s.vals[con.sender.comp][v]);
        combos
            .into_iter()
            .map(|choice| Interaction {
                connector: c,
                choice,
                transfer,
            })
            .collect()
    }

    /// Enabled interactions before priority filtering.
    pub fn all_interactions(&self, s: &BipState) -> Vec<Interaction> {
        (0..self.m.connectors.len())
            .flat_map(|c| self.connector_interactions(s, c))
            .collect()
    }

    /// Enabled interactions whose connector has no enabled connector of
    /// strictly higher priority.
    pub fn enabled(&self, s: &BipState) -> Vec<Interaction> {
        let all = self.all_interactions(s);
        let live: BTreeSet<usize> = all.iter().map(|i| i.connector).collect();
        all.into_iter()
            .filter(|i| self.above[i.connector].is_disjoint(&live))
            .collect()
    }

    pub fn apply(&self, s: &BipState, i: &Interaction) -> Result<BipState, RangeViolation> {
        let con = &self.m.connectors[i.connector];
        let mut next = s.clone();
        let transfer = |next: &mut BipState| -> Result<(), RangeViolation> {
            let Some(v) = i.transfer else { return Ok(()) };
            for r in &con.receivers {
                let a = &self.m.atomics[r.comp];
                if let Some(bv) = a.ports[r.port].binds {
                    let d = &a.vars.0[bv];
                    if !d.ty.admits(v) {
                        return Err(RangeViolation {
                            var: format!("{}.{}", a.name, d.name),
                            value: v,
                            ty: d.ty,
                        });
                    }
                    next.vals[r.comp][bv] = v;
                }
            }
            Ok(())
        };
        if !self.opts.transfer_after {
            transfer(&mut next)?;
        }
        for (e, &t) in con.endpoints().zip(&i.choice) {
            let a = &self.m.atomics[e.comp];
            let tr = &a.transitions[t];
            tr.update
                .exec(&mut next.vals[e.comp], &a.vars)
                .map_err(|mut err| {
                    err.var = format!("{}.{}", a.name, err.var);
                    err
                })?;
            next.locs[e.comp] = tr.tgt;
        }
        if self.opts.transfer_after {
            transfer(&mut next)?;
        }
        Ok(next)
    }

    pub fn successors(&self, s: &BipState) -> Vec<(Interaction, Result<BipState, RangeViolation>)> {
        self.enabled(s)
            .into_iter()
            .map(|i| {
                let r = self.apply(s, &i);
                (i, r)
            })
            .collect()
    }
}

pub fn initial_state(m: &ComposedModel) -> BipState {
    BipState {
        locs: m.atomics.iter().map(|a| a.init_loc).collect(),
        vals: m.atomics.iter().map(|a| a.initial_valuation()).collect(),
    }
}

pub fn enabled_interactions(m: &ComposedModel, s: &BipState) -> Vec<Interaction> {
    BipSem::new(m, BipOptions::default()).enabled(s)
}

pub fn apply_interaction(m: &ComposedModel, s: &BipState, i: &Interaction) -> Result<BipState, RangeViolation> {
    BipSem::new(m, BipOptions::default()).apply(s, i)
}

pub fn reachable_states(m: &ComposedModel, opts: BipOptions, limits: Limits) -> StateGraph {
    reachable_from(m, opts, limits, initial_state(m))
}

pub fn reachable_from(m: &ComposedModel, opts: BipOptions, limits: Limits, init: BipState) -> StateGraph {
    let sem = BipSem::new(m, opts);
    explore(init, limits, |s| sem.successors(s))
}
