//! Naive reference enumerators used as test oracles.
//!
//! Everything here works on names rather than indices, keeps states in
//! ordered maps, and re-derives priorities, enabledness and updates straight
//! from the parsed models. Only the parsers are shared with the library.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use sfc2bip::bip::ComposedModel;
use sfc2bip::expr::{BinOp, Expr, Program, Type, UnOp, Value};
use sfc2bip::sfc::SfcModel;

pub type Env = BTreeMap<String, Value>;

pub fn eval(e: &Expr, env: &Env) -> Value {
    match e {
        Expr::Lit(v) => *v,
        Expr::Var(r) => *env.get(&r.name).unwrap_or_else(|| panic!("oracle: unbound {}", r.name)),
        Expr::Unary(UnOp::Not, x) => Value::Bool(!truth(eval(x, env))),
        Expr::Unary(UnOp::Neg, x) => Value::Int(-int(eval(x, env))),
        Expr::Binary(op, l, r) => {
            let (a, b) = (eval(l, env), eval(r, env));
            match op {
                BinOp::And => Value::Bool(truth(a) && truth(b)),
                BinOp::Or => Value::Bool(truth(a) || truth(b)),
                BinOp::Eq => Value::Bool(a == b),
                BinOp::Ne => Value::Bool(a != b),
                BinOp::Add => Value::Int(int(a) + int(b)),
                BinOp::Sub => Value::Int(int(a) - int(b)),
                BinOp::Mul => Value::Int(int(a) * int(b)),
                BinOp::Lt => Value::Bool(int(a) < int(b)),
                BinOp::Le => Value::Bool(int(a) <= int(b)),
                BinOp::Gt => Value::Bool(int(a) > int(b)),
                BinOp::Ge => Value::Bool(int(a) >= int(b)),
            }
        }
    }
}

fn truth(v: Value) -> bool {
    match v {
        Value::Bool(b) => b,
        Value::Int(i) => panic!("oracle: int {i} used as bool"),
    }
}

fn int(v: Value) -> i64 {
    match v {
        Value::Int(i) => i,
        Value::Bool(b) => panic!("oracle: bool {b} used as int"),
    }
}

fn fits(ty: &Type, v: Value) -> bool {
    match (ty, v) {
        (Type::Bool, Value::Bool(_)) => true,
        (Type::Int { lo, hi }, Value::Int(i)) => *lo <= i && i <= *hi,
        _ => false,
    }
}

/// Runs assignments left to right; `None` on a range violation.
pub fn run(p: &Program, env: &Env, types: &BTreeMap<String, Type>) -> Option<Env> {
    let mut out = env.clone();
    for st in &p.0 {
        let v = eval(&st.value, &out);
        if !fits(&types[&st.target.name], v) {
            return None;
        }
        out.insert(st.target.name.clone(), v);
    }
    Some(out)
}

/// Node and edge totals, with every range violation sent to one shared sink.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counts {
    pub nodes: usize,
    pub edges: usize,
}

/// Breadth-first closure; `succ` returns `None` entries for violations.
pub fn closure<S: Clone + Ord + std::hash::Hash>(init: S, mut succ: impl FnMut(&S) -> Vec<Option<S>>) -> (Counts, Vec<S>) {
    let mut seen: HashMap<S, ()> = HashMap::new();
    let mut order = vec![init.clone()];
    seen.insert(init.clone(), ());
    let mut queue = VecDeque::from([init]);
    let (mut edges, mut sink) = (0, false);
    while let Some(s) = queue.pop_front() {
        for n in succ(&s) {
            edges += 1;
            match n {
                None => sink = true,
                Some(n) => {
                    if seen.insert(n.clone(), ()).is_none() {
                        order.push(n.clone());
                        queue.push_back(n);
                    }
                }
            }
        }
    }
    let nodes = order.len() + usize::from(sink);
    (Counts { nodes, edges }, order)
}

// ---------------------------------------------------------------- SFC

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Conf {
    pub f: Env,
    pub steps: BTreeSet<String>,
    pub acts: BTreeSet<String>,
}

pub struct SfcOracle {
    types: BTreeMap<String, Type>,
    init: Env,
    initial: BTreeSet<String>,
    bodies: BTreeMap<String, Program>,
    /// Action names in execution order.
    order: Vec<String>,
    /// step -> actions of its blocks
    blocks: BTreeMap<String, BTreeSet<String>>,
    trans: Vec<(String, BTreeSet<String>, Expr, BTreeSet<String>)>,
    /// (lower, higher), transitively closed
    beats: BTreeSet<(String, String)>,
    pub ordered: bool,
    pub priority: bool,
}

impl SfcOracle {
    pub fn new(m: &SfcModel, ordered: bool, priority: bool) -> Self {
        let sname = |i: &usize| m.steps[*i].name.clone();
        let tname = |i: usize| m.transitions[i].name.clone();
        let mut beats: BTreeSet<(String, String)> =
            m.priority.iter().map(|&(lo, hi)| (tname(lo), tname(hi))).collect();
        loop {
            let more: Vec<(String, String)> = beats
                .iter()
                .flat_map(|(a, b)| beats.iter().filter(move |(c, _)| c == b).map(move |(_, d)| (a.clone(), d.clone())))
                .filter(|p| !beats.contains(p))
                .collect();
            if more.is_empty() {
                break;
            }
            beats.extend(more);
        }
        SfcOracle {
            types: m.vars.iter().map(|d| (d.name.clone(), d.ty)).collect(),
            init: m.vars.iter().map(|d| (d.name.clone(), d.init)).collect(),
            initial: m.initial.iter().map(sname).collect(),
            bodies: m.actions.iter().map(|a| (a.name.clone(), a.body.clone())).collect(),
            order: m.action_order.iter().map(|&a| m.actions[a].name.clone()).collect(),
            blocks: m
                .steps
                .iter()
                .map(|s| (s.name.clone(), s.blocks.iter().map(|b| m.actions[b.action].name.clone()).collect()))
                .collect(),
            trans: m
                .transitions
                .iter()
                .map(|t| (t.name.clone(), t.src.iter().map(sname).collect(), t.guard.clone(), t.tgt.iter().map(sname).collect()))
                .collect(),
            beats,
            ordered,
            priority,
        }
    }

    /// Initial steps active, no action active.
    pub fn initial(&self) -> Conf {
        Conf {
            f: self.init.clone(),
            steps: self.initial.clone(),
            acts: BTreeSet::new(),
        }
    }

    fn exec(&self, c: &Conf, a: &str) -> Option<Conf> {
        let f = run(&self.bodies[a], &c.f, &self.types)?;
        let mut acts = c.acts.clone();
        acts.remove(a);
        Some(Conf { f, steps: c.steps.clone(), acts })
    }

    fn enabled(&self, c: &Conf) -> Vec<usize> {
        (0..self.trans.len())
            .filter(|&i| {
                let (_, src, g, _) = &self.trans[i];
                src.is_subset(&c.steps) && truth(eval(g, &c.f))
            })
            .collect()
    }

    /// Enabled transitions not overridden by an enabled, higher, conflicting one.
    fn firable(&self, c: &Conf) -> Vec<usize> {
        let en = self.enabled(c);
        en.iter()
            .copied()
            .filter(|&t| {
                !self.priority
                    || !en.iter().any(|&u| {
                        self.beats.contains(&(self.trans[t].0.clone(), self.trans[u].0.clone()))
                            && !self.trans[t].1.is_disjoint(&self.trans[u].1)
                    })
            })
            .collect()
    }

    fn fire(&self, c: &Conf, ts: &[usize]) -> Conf {
        let mut steps = c.steps.clone();
        for &t in ts {
            steps = steps.difference(&self.trans[t].1).cloned().collect();
        }
        for &t in ts {
            steps.extend(self.trans[t].3.iter().cloned());
        }
        Conf { f: c.f.clone(), steps, acts: c.acts.clone() }
    }

    fn active_in_order(&self, c: &Conf) -> Vec<String> {
        self.order.iter().filter(|a| c.acts.contains(*a)).cloned().collect()
    }

    /// The three micro-step predicates, one successor per witness.
    pub fn micro(&self, c: &Conf) -> Vec<Option<Conf>> {
        let mut out = Vec::new();
        let acts = self.active_in_order(c);
        let chosen = if self.ordered { acts.into_iter().take(1).collect::<Vec<_>>() } else { acts };
        for a in chosen {
            out.push(self.exec(c, &a));
        }
        for t in self.firable(c) {
            out.push(Some(self.fire(c, &[t])));
        }
        for s in &c.steps {
            for a in &self.blocks[s] {
                if !c.acts.contains(a) {
                    let mut n = c.clone();
                    n.acts.insert(a.clone());
                    out.push(Some(n));
                }
            }
        }
        out
    }

    /// Execute all, fire the maximal set, activate all.
    pub fn cycle(&self, c: &Conf) -> Option<Conf> {
        let mut cur = c.clone();
        for a in self.active_in_order(c) {
            cur = self.exec(&cur, &a)?;
        }
        let ts = self.firable(&cur);
        cur = self.fire(&cur, &ts);
        cur.acts = cur.steps.iter().flat_map(|s| self.blocks[s].iter().cloned()).collect();
        Some(cur)
    }

    /// Phase 0 executes the least active action, phase 1 fires the whole
    /// firable set, phase 2 activates one step's missing actions at a time.
    /// A node sits at the first phase (cyclically) that can move; `3` marks
    /// a node where none can.
    pub fn phased_init(&self) -> (Conf, u8) {
        self.settle(self.initial(), 0)
    }

    fn can(&self, c: &Conf, phase: u8) -> bool {
        match phase {
            0 => !c.acts.is_empty(),
            1 => !self.firable(c).is_empty(),
            _ => c.steps.iter().any(|s| !self.blocks[s].is_subset(&c.acts)),
        }
    }

    fn settle(&self, c: Conf, phase: u8) -> (Conf, u8) {
        for k in 0..3 {
            let p = (phase + k) % 3;
            if self.can(&c, p) {
                return (c, p);
            }
        }
        (c, 3)
    }

    pub fn phased(&self, n: &(Conf, u8)) -> Vec<Option<(Conf, u8)>> {
        let (c, phase) = n;
        match phase {
            0 => {
                let a = self.active_in_order(c).remove(0);
                vec![self.exec(c, &a).map(|c| self.settle(c, 0))]
            }
            1 => {
                let ts = self.firable(c);
                vec![Some(self.settle(self.fire(c, &ts), 2))]
            }
            2 => {
                let s = c.steps.iter().find(|s| !self.blocks[*s].is_subset(&c.acts)).unwrap();
                let mut n = c.clone();
                n.acts.extend(self.blocks[s].iter().cloned());
                vec![Some(self.settle(n, 2))]
            }
            _ => vec![],
        }
    }
}

pub fn sfc_micro(m: &SfcModel, ordered: bool) -> Counts {
    let o = SfcOracle::new(m, ordered, true);
    closure(o.initial(), |c| o.micro(c)).0
}

pub fn sfc_phased(m: &SfcModel) -> (Counts, Vec<(Conf, u8)>) {
    let o = SfcOracle::new(m, true, true);
    closure(o.phased_init(), |n| o.phased(n))
}

pub fn sfc_cycles(m: &SfcModel) -> (Counts, Vec<Conf>) {
    let o = SfcOracle::new(m, true, true);
    closure(o.initial(), |c| vec![o.cycle(c)])
}

// ---------------------------------------------------------------- BIP

/// component -> (location, valuation)
pub type BState = BTreeMap<String, (String, Env)>;

struct BTrans {
    src: String,
    port: String,
    guard: Expr,
    update: Program,
    tgt: String,
}

struct BComp {
    types: BTreeMap<String, Type>,
    binds: BTreeMap<String, Option<String>>,
    trans: Vec<BTrans>,
}

pub struct BipOracle {
    init: BState,
    comps: BTreeMap<String, BComp>,
    /// name, sender (comp, port), receivers
    conns: Vec<(String, (String, String), Vec<(String, String)>)>,
    /// (lower, higher), transitively closed
    beats: BTreeSet<(String, String)>,
    pub transfer_after: bool,
}

impl BipOracle {
    pub fn new(m: &ComposedModel, transfer_after: bool) -> Self {
        let ep = |e: sfc2bip::bip::Endpoint| {
            let a = &m.atomics[e.comp];
            (a.name.clone(), a.ports[e.port].name.clone())
        };
        let mut beats: BTreeSet<(String, String)> = m
            .priority
            .iter()
            .map(|&(lo, hi)| (m.connectors[lo].name.clone(), m.connectors[hi].name.clone()))
            .collect();
        loop {
            let more: Vec<(String, String)> = beats
                .iter()
                .flat_map(|(a, b)| beats.iter().filter(move |(c, _)| c == b).map(move |(_, d)| (a.clone(), d.clone())))
                .filter(|p| !beats.contains(p))
                .collect();
            if more.is_empty() {
                break;
            }
            beats.extend(more);
        }
        BipOracle {
            init: m
                .atomics
                .iter()
                .map(|a| {
                    let env = a.vars.iter().map(|d| (d.name.clone(), d.init)).collect();
                    (a.name.clone(), (a.locations[a.init_loc].clone(), env))
                })
                .collect(),
            comps: m
                .atomics
                .iter()
                .map(|a| {
                    let c = BComp {
                        types: a.vars.iter().map(|d| (d.name.clone(), d.ty)).collect(),
                        binds: a
                            .ports
                            .iter()
                            .map(|p| (p.name.clone(), p.binds.map(|v| a.vars.0[v].name.clone())))
                            .collect(),
                        trans: a
                            .transitions
                            .iter()
                            .map(|t| BTrans {
                                src: a.locations[t.src].clone(),
                                port: a.ports[t.port].name.clone(),
                                guard: t.guard.clone(),
                                update: t.update.clone(),
                                tgt: a.locations[t.tgt].clone(),
                            })
                            .collect(),
                    };
                    (a.name.clone(), c)
                })
                .collect(),
            conns: m
                .connectors
                .iter()
                .map(|c| (c.name.clone(), ep(c.sender), c.receivers.iter().map(|&r| ep(r)).collect()))
                .collect(),
            beats,
            transfer_after,
        }
    }

    pub fn initial(&self) -> BState {
        self.init.clone()
    }

    /// Every way the connector can fire: one enabled transition per endpoint.
    fn firings(&self, s: &BState, k: usize) -> Vec<Vec<usize>> {
        let (_, snd, rcv) = &self.conns[k];
        let mut combos = vec![vec![]];
        for (comp, port) in std::iter::once(snd).chain(rcv) {
            let (loc, env) = &s[comp];
            let ok: Vec<usize> = self.comps[comp]
                .trans
                .iter()
                .enumerate()
                .filter(|(_, t)| &t.src == loc && &t.port == port && truth(eval(&t.guard, env)))
                .map(|(i, _)| i)
                .collect();
            combos = combos
                .into_iter()
                .flat_map(|c: Vec<usize>| {
                    ok.iter().map(move |&i| {
                        let mut c = c.clone();
                        c.push(i);
                        c
                    })
                })
                .collect();
        }
        combos
    }

    fn fire(&self, s: &BState, k: usize, choice: &[usize]) -> Option<BState> {
        let (_, snd, rcv) = &self.conns[k];
        let value = self.comps[&snd.0].binds[&snd.1].as_ref().map(|v| s[&snd.0].1[v]);
        let mut next = s.clone();
        let deliver = |next: &mut BState| -> Option<()> {
            let v = value?;
            for (comp, port) in rcv {
                if let Some(x) = &self.comps[comp].binds[port] {
                    if !fits(&self.comps[comp].types[x], v) {
                        return None;
                    }
                    next.get_mut(comp).unwrap().1.insert(x.clone(), v);
                }
            }
            Some(())
        };
        if !self.transfer_after && value.is_some() {
            deliver(&mut next)?;
        }
        for ((comp, _), &i) in std::iter::once(snd).chain(rcv).zip(choice) {
            let t = &self.comps[comp].trans[i];
            let env = run(&t.update, &next[comp].1, &self.comps[comp].types)?;
            next.insert(comp.clone(), (t.tgt.clone(), env));
        }
        if self.transfer_after && value.is_some() {
            deliver(&mut next)?;
        }
        Some(next)
    }

    pub fn succ(&self, s: &BState) -> Vec<Option<BState>> {
        let all: Vec<(usize, Vec<Vec<usize>>)> = (0..self.conns.len()).map(|k| (k, self.firings(s, k))).collect();
        let live: BTreeSet<&String> = all.iter().filter(|(_, f)| !f.is_empty()).map(|(k, _)| &self.conns[*k].0).collect();
        let mut out = Vec::new();
        for (k, fs) in &all {
            let me = &self.conns[*k].0;
            if live.iter().any(|h| self.beats.contains(&(me.clone(), (*h).clone()))) {
                continue;
            }
            for choice in fs {
                out.push(self.fire(s, *k, choice));
            }
        }
        out
    }
}

pub fn bip_reach(m: &ComposedModel) -> (Counts, Vec<BState>) {
    let o = BipOracle::new(m, false);
    closure(o.initial(), |s| o.succ(s))
}
