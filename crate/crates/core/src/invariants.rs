//! Invariants over SFC configurations and BIP states, their translations in
//! both directions, and reachability-based checkers.
//!
//! SFC syntax: `active(S)`, `enabled(a)` and boolean expressions over the
//! chart's variables. BIP syntax: `at(C, L)` and boolean expressions over
//! `C.var`. Both combine with `!`, `&&`, `||` and parentheses.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::bip::{initial_state, reachable_from, BipOptions, BipState, ComposedModel};
use crate::diag::{Diagnostic, Diagnostics, Pos};
use crate::expr::{parse_comparison, BinOp, Expr, Kind, Lookup, Scope, Value, VarRef};
use crate::graph::{Graph, Limits, PartialGraph};
use crate::lexer::{Cursor, Tok};
use crate::sfc::{cycle_boundaries, reachable_configs, reachable_cycles, Configuration, SemOptions, SfcModel};
use crate::transform::TraceMap;

/// Boolean skeleton shared by both invariant languages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inv<A> {
    True,
    False,
    Atom(A),
    Not(Box<Inv<A>>),
    And(Vec<Inv<A>>),
    Or(Vec<Inv<A>>),
}

/// A name plus its resolved index (`usize::MAX` until resolved).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Named {
    pub name: String,
    pub index: usize,
}

impl Named {
    pub fn new(name: impl Into<String>) -> Self {
        Named {
            name: name.into(),
            index: usize::MAX,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SfcAtom {
    Cond(Expr),
    Active(Named),
    Enabled(Named),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BipAtom {
    Cond(Expr),
    At(Named, Named),
}

pub type SfcInv = Inv<SfcAtom>;
pub type BipInv = Inv<BipAtom>;

impl<A> Inv<A> {
    pub fn not(i: Inv<A>) -> Inv<A> {
        Inv::Not(Box::new(i))
    }

    pub fn eval(&self, atom: &mut impl FnMut(&A) -> bool) -> bool {
        match self {
            Inv::True => true,
            Inv::False => false,
            Inv::Atom(a) => atom(a),
            Inv::Not(i) => !i.eval(atom),
            Inv::And(v) => v.iter().all(|i| i.eval(atom)),
            Inv::Or(v) => v.iter().any(|i| i.eval(atom)),
        }
    }

    /// Same skeleton, each atom replaced by a formula.
    pub fn map_atoms<B, E>(&self, f: &mut impl FnMut(&A) -> Result<Inv<B>, E>) -> Result<Inv<B>, E> {
        Ok(match self {
            Inv::True => Inv::True,
            Inv::False => Inv::False,
            Inv::Atom(a) => f(a)?,
            Inv::Not(i) => Inv::not(i.map_atoms(f)?),
            Inv::And(v) => Inv::And(v.iter().map(|i| i.map_atoms(f)).collect::<Result<_, _>>()?),
            Inv::Or(v) => Inv::Or(v.iter().map(|i| i.map_atoms(f)).collect::<Result<_, _>>()?),
        })
    }

    pub fn atoms(&self) -> Vec<&A> {
        let mut out = Vec::new();
        self.each_atom(&mut |a| out.push(a));
        out
    }

    fn each_atom<'a>(&'a self, f: &mut impl FnMut(&'a A)) {
        match self {
            Inv::Atom(a) => f(a),
            Inv::Not(i) => i.each_atom(f),
            Inv::And(v) | Inv::Or(v) => v.iter().for_each(|i| i.each_atom(f)),
            Inv::True | Inv::False => {}
        }
    }

    fn each_atom_mut(&mut self, f: &mut impl FnMut(&mut A)) {
        match self {
            Inv::Atom(a) => f(a),
            Inv::Not(i) => i.each_atom_mut(f),
            Inv::And(v) | Inv::Or(v) => v.iter_mut().for_each(|i| i.each_atom_mut(f)),
            Inv::True | Inv::False => {}
        }
    }
}

impl<A: Clone> Inv<A> {
    /// Negation normal form: `!` only directly above atoms.
    pub fn nnf(&self) -> Inv<A> {
        fn go<A: Clone>(i: &Inv<A>, neg: bool) -> Inv<A> {
            match (i, neg) {
                (Inv::True, false) | (Inv::False, true) => Inv::True,
                (Inv::True, true) | (Inv::False, false) => Inv::False,
                (Inv::Atom(a), false) => Inv::Atom(a.clone()),
                (Inv::Atom(a), true) => Inv::not(Inv::Atom(a.clone())),
                (Inv::Not(x), n) => go(x, !n),
                (Inv::And(v), false) | (Inv::Or(v), true) => Inv::And(v.iter().map(|x| go(x, neg)).collect()),
                (Inv::Or(v), false) | (Inv::And(v), true) => Inv::Or(v.iter().map(|x| go(x, neg)).collect()),
            }
        }
        go(self, false)
    }
}

/// Conjunction with constant folding and singleton flattening.
pub fn and<A>(parts: Vec<Inv<A>>) -> Inv<A> {
    let mut out = Vec::new();
    for p in parts {
        match p {
            Inv::True => {}
            Inv::False => return Inv::False,
            Inv::And(v) => out.extend(v),
            p => out.push(p),
        }
    }
    match out.len() {
        0 => Inv::True,
        1 => out.pop().unwrap(),
        _ => Inv::And(out),
    }
}

/// Disjunction with constant folding and singleton flattening.
pub fn or<A>(parts: Vec<Inv<A>>) -> Inv<A> {
    let mut out = Vec::new();
    for p in parts {
        match p {
            Inv::False => {}
            Inv::True => return Inv::True,
            Inv::Or(v) => out.extend(v),
            p => out.push(p),
        }
    }
    match out.len() {
        0 => Inv::False,
        1 => out.pop().unwrap(),
        _ => Inv::Or(out),
    }
}

pub fn not<A>(i: Inv<A>) -> Inv<A> {
    match i {
        Inv::True => Inv::False,
        Inv::False => Inv::True,
        Inv::Not(x) => *x,
        i => Inv::not(i),
    }
}

// ---------------------------------------------------------------- printing

fn is_compound<A>(i: &Inv<A>) -> bool {
    match i {
        Inv::And(v) | Inv::Or(v) => v.len() > 1,
        _ => false,
    }
}

fn cond_needs_parens(e: &Expr) -> bool {
    matches!(e, Expr::Binary(BinOp::And | BinOp::Or, ..))
}

impl<A: fmt::Display> fmt::Display for Inv<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child<A: fmt::Display>(i: &Inv<A>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if is_compound(i) {
                write!(f, "({i})")
            } else {
                write!(f, "{i}")
            }
        }
        match self {
            Inv::True => f.write_str("true"),
            Inv::False => f.write_str("false"),
            Inv::Atom(a) => write!(f, "{a}"),
            Inv::Not(i) => {
                f.write_str("!")?;
                match i.as_ref() {
                    Inv::Atom(_) | Inv::True | Inv::False | Inv::Not(_) => write!(f, "{i}"),
                    _ if !is_compound(i) => write!(f, "{i}"),
                    _ => write!(f, "({i})"),
                }
            }
            Inv::And(v) | Inv::Or(v) if v.is_empty() => {
                f.write_str(if matches!(self, Inv::And(_)) { "true" } else { "false" })
            }
            Inv::And(v) | Inv::Or(v) if v.len() == 1 => write!(f, "{}", v[0]),
            Inv::And(v) | Inv::Or(v) => {
                let sep = if matches!(self, Inv::And(_)) { " && " } else { " || " };
                for (k, i) in v.iter().enumerate() {
                    if k > 0 {
                        f.write_str(sep)?;
                    }
                    child(i, f)?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for SfcAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SfcAtom::Cond(e) if cond_needs_parens(e) => write!(f, "({e})"),
            SfcAtom::Cond(e) => write!(f, "{e}"),
            SfcAtom::Active(s) => write!(f, "active({})", s.name),
            SfcAtom::Enabled(a) => write!(f, "enabled({})", a.name),
        }
    }
}

impl fmt::Display for BipAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BipAtom::Cond(e) if cond_needs_parens(e) => write!(f, "({e})"),
            BipAtom::Cond(e) => write!(f, "{e}"),
            BipAtom::At(c, l) => write!(f, "at({}, {})", c.name, l.name),
        }
    }
}

// ----------------------------------------------------------------- parsing

type Call = (String, Pos, Vec<(String, Pos)>);

fn parse_or<A>(cur: &mut Cursor, atom: &mut impl FnMut(Result<Call, Expr>) -> Result<A, Diagnostic>) -> Result<Inv<A>, Diagnostic> {
    let mut parts = vec![parse_and(cur, atom)?];
    while cur.eat_sym("||") {
        parts.push(parse_and(cur, atom)?);
    }
    Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Inv::Or(parts) })
}

fn parse_and<A>(cur: &mut Cursor, atom: &mut impl FnMut(Result<Call, Expr>) -> Result<A, Diagnostic>) -> Result<Inv<A>, Diagnostic> {
    let mut parts = vec![parse_unary(cur, atom)?];
    while cur.eat_sym("&&") {
        parts.push(parse_unary(cur, atom)?);
    }
    Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Inv::And(parts) })
}

fn at_boundary(cur: &Cursor) -> bool {
    cur.at_eof() || cur.is_sym("&&") || cur.is_sym("||") || cur.is_sym(")")
}

const CALLS: &[&str] = &["active", "enabled", "at"];

fn parse_unary<A>(cur: &mut Cursor, atom: &mut impl FnMut(Result<Call, Expr>) -> Result<A, Diagnostic>) -> Result<Inv<A>, Diagnostic> {
    if cur.eat_sym("!") {
        return Ok(Inv::not(parse_unary(cur, atom)?));
    }
    if cur.is_sym("(") {
        // A parenthesised formula, unless it turns out to be the left operand
        // of a comparison such as `(x + 1) < 3`.
        let mark = cur.mark();
        cur.bump();
        if let Ok(inner) = parse_or(cur, atom) {
            if cur.eat_sym(")") && at_boundary(cur) {
                return Ok(inner);
            }
        }
        cur.reset(mark);
    }
    if let Tok::Ident(name) = cur.peek().clone() {
        if (name == "true" || name == "false") && {
            let m = cur.mark();
            cur.bump();
            let b = at_boundary(cur);
            cur.reset(m);
            b
        } {
            cur.bump();
            return Ok(if name == "true" { Inv::True } else { Inv::False });
        }
        if CALLS.contains(&name.as_str()) && cur.peek_at(1) == &Tok::Sym("(") {
            let pos = cur.pos();
            cur.bump();
            cur.bump();
            let mut args = Vec::new();
            if !cur.is_sym(")") {
                loop {
                    let p = cur.pos();
                    args.push((cur.ident()?, p));
                    if !cur.eat_sym(",") {
                        break;
                    }
                }
            }
            cur.expect_sym(")")?;
            return Ok(Inv::Atom(atom(Ok((name, pos, args)))?));
        }
    }
    let e = parse_comparison(cur)?;
    Ok(Inv::Atom(atom(Err(e))?))
}

fn arity(call: &Call, n: usize) -> Result<(), Diagnostic> {
    if call.2.len() == n {
        Ok(())
    } else {
        Err(Diagnostic::new(
            "syntax",
            format!("`{}` takes {n} argument(s), got {}", call.0, call.2.len()),
        )
        .at(call.1))
    }
}

fn parse_generic<A>(
    src: &str,
    mut atom: impl FnMut(Result<Call, Expr>) -> Result<A, Diagnostic>,
) -> Result<Inv<A>, Diagnostics> {
    let mut cur = Cursor::new(src)?;
    let inv = parse_or(&mut cur, &mut atom)?;
    cur.expect_eof()?;
    Ok(inv)
}

/// Parses and resolves an SFC invariant.
pub fn parse_sfc_inv(src: &str, m: &SfcModel) -> Result<SfcInv, Diagnostics> {
    let mut inv = parse_sfc_inv_names(src)?;
    resolve_sfc(&mut inv, m)?;
    Ok(inv)
}

/// Parses an SFC invariant without resolving names.
pub fn parse_sfc_inv_names(src: &str) -> Result<SfcInv, Diagnostics> {
    parse_generic(src, |a| match a {
        Err(e) => Ok(SfcAtom::Cond(e)),
        Ok(call) => match call.0.as_str() {
            "active" => {
                arity(&call, 1)?;
                Ok(SfcAtom::Active(Named::new(&call.2[0].0)))
            }
            "enabled" => {
                arity(&call, 1)?;
                Ok(SfcAtom::Enabled(Named::new(&call.2[0].0)))
            }
            other => Err(Diagnostic::new("syntax", format!("`{other}` is not an SFC atom")).at(call.1)),
        },
    })
}

/// Parses and resolves a BIP invariant.
pub fn parse_bip_inv(src: &str, b: &ComposedModel) -> Result<BipInv, Diagnostics> {
    let mut inv = parse_bip_inv_names(src)?;
    resolve_bip(&mut inv, b)?;
    Ok(inv)
}

/// Parses a BIP invariant without resolving names.
pub fn parse_bip_inv_names(src: &str) -> Result<BipInv, Diagnostics> {
    parse_generic(src, |a| match a {
        Err(e) => Ok(BipAtom::Cond(e)),
        Ok(call) if call.0 == "at" => {
            arity(&call, 2)?;
            Ok(BipAtom::At(Named::new(&call.2[0].0), Named::new(&call.2[1].0)))
        }
        Ok(call) => Err(Diagnostic::new("syntax", format!("`{}` is not a BIP atom", call.0)).at(call.1)),
    })
}

fn resolve_cond(e: &mut Expr, scope: &dyn Scope, diags: &mut Vec<Diagnostic>) {
    match e.resolve(scope) {
        Ok(Kind::Bool) => {}
        Ok(k) => diags.push(Diagnostic::new(
            "type-mismatch",
            format!("condition `{e}` has type {k}, expected bool"),
        )),
        Err(d) => diags.extend(d),
    }
}

/// Fills in step, action and variable indices.
pub fn resolve_sfc(inv: &mut SfcInv, m: &SfcModel) -> Result<(), Diagnostics> {
    let mut diags = Vec::new();
    inv.each_atom_mut(&mut |a| match a {
        SfcAtom::Cond(e) => resolve_cond(e, &m.vars, &mut diags),
        SfcAtom::Active(s) => match m.step_index(&s.name) {
            Some(i) => s.index = i,
            None => diags.push(Diagnostic::new("unknown-step", format!("unknown step `{}`", s.name))),
        },
        SfcAtom::Enabled(x) => match m.action_index(&x.name) {
            Some(i) => x.index = i,
            None => diags.push(Diagnostic::new("unknown-action", format!("unknown action `{}`", x.name))),
        },
    });
    if diags.is_empty() {
        Ok(())
    } else {
        Err(Diagnostics(diags))
    }
}

/// Fills in component, location and variable indices.
pub fn resolve_bip(inv: &mut BipInv, b: &ComposedModel) -> Result<(), Diagnostics> {
    let mut diags = Vec::new();
    inv.each_atom_mut(&mut |a| match a {
        BipAtom::Cond(e) => resolve_cond(e, b, &mut diags),
        BipAtom::At(c, l) => match b.atomic_index(&c.name) {
            None => diags.push(Diagnostic::new("unknown-component", format!("unknown component `{}`", c.name))),
            Some(ci) => {
                c.index = ci;
                match b.atomics[ci].loc_index(&l.name) {
                    Some(li) => l.index = li,
                    None => diags.push(Diagnostic::new(
                        "unknown-location",
                        format!("component `{}` has no location `{}`", c.name, l.name),
                    )),
                }
            }
        },
    });
    if diags.is_empty() {
        Ok(())
    } else {
        Err(Diagnostics(diags))
    }
}

// -------------------------------------------------------------- evaluation

impl Lookup for BipState {
    fn get(&self, v: &VarRef) -> Value {
        self.vals[v.scope][v.index]
    }
}

pub fn eval_sfc(inv: &SfcInv, c: &Configuration) -> bool {
    inv.eval(&mut |a| match a {
        SfcAtom::Cond(e) => e.eval(&c.f).as_bool(),
        SfcAtom::Active(s) => c.active_s.contains(&s.index),
        SfcAtom::Enabled(x) => c.active_a.contains(&x.index),
    })
}

pub fn eval_bip(inv: &BipInv, s: &BipState) -> bool {
    inv.eval(&mut |a| match a {
        BipAtom::Cond(e) => e.eval(s).as_bool(),
        BipAtom::At(c, l) => s.locs[c.index] == l.index,
    })
}

// -------------------------------------------------------------- generators

/// Per action: some step invoking it is active and it is active, or no such
/// step is active and it is not.
pub fn structural_invariant(m: &SfcModel) -> SfcInv {
    let active = |s: usize| Inv::Atom(SfcAtom::Active(Named { name: m.steps[s].name.clone(), index: s }));
    and(m
        .actions
        .iter()
        .enumerate()
        .map(|(a, def)| {
            let en = Inv::Atom(SfcAtom::Enabled(Named { name: def.name.clone(), index: a }));
            let steps = m.steps_of_action(a);
            or(vec![
                and(vec![or(steps.iter().map(|&s| active(s)).collect()), en.clone()]),
                and(vec![
                    and(steps.iter().map(|&s| not(active(s))).collect()),
                    not(en),
                ]),
            ])
        })
        .collect())
}

// ------------------------------------------------------------- translation

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("condition `{0}` mixes variables of several components")]
    MixedComponents(String),
    #[error("condition `{0}` constrains both the buffer and the committed value of a variable")]
    NotSeparable(String),
}

impl TranslateError {
    pub fn code(&self) -> &'static str {
        match self {
            TranslateError::MixedComponents(_) => "mixed-component",
            TranslateError::NotSeparable(_) => "gv-separability",
        }
    }
}

fn split_var(name: &str) -> (&str, &str) {
    name.split_once('.').unwrap_or(("", name))
}

/// BIP invariant to SFC invariant, atom by atom. The result is unresolved;
/// pass it through [`resolve_sfc`] before evaluating.
pub fn t_i(inv: &BipInv, tm: &TraceMap) -> Result<SfcInv, TranslateError> {
    let active = |s: &str| Inv::Atom(SfcAtom::Active(Named::new(s)));
    inv.map_atoms(&mut |a| match a {
        BipAtom::At(c, l) => {
            if let Some(s) = tm.step_of(&c.name) {
                Ok(if l.name == "DISABLED" { not(active(s)) } else { active(s) })
            } else if let Some((_, t)) = tm.action_of_acb(&c.name) {
                Ok(if l.name == "ENABLE" {
                    or(t.steps.iter().map(|s| active(s)).collect())
                } else {
                    Inv::False
                })
            } else {
                Ok(Inv::False)
            }
        }
        BipAtom::Cond(e) => {
            let comps: BTreeSet<&str> = e.vars().iter().map(|v| split_var(&v.name).0).collect();
            if comps.len() > 1 {
                return Err(TranslateError::MixedComponents(e.to_string()));
            }
            let Some(comp) = comps.into_iter().next() else {
                // variable-free: keep it as a constant condition
                return Ok(Inv::Atom(SfcAtom::Cond(e.clone())));
            };
            let locals: BTreeSet<&str> = e.vars().iter().map(|v| split_var(&v.name).1).collect();
            if let Some(x) = tm.var_of_gv(comp) {
                if !locals.contains("v") {
                    return Ok(Inv::True);
                }
                if locals.len() > 1 {
                    return Err(TranslateError::NotSeparable(e.to_string()));
                }
                let x = x.to_string();
                Ok(Inv::Atom(SfcAtom::Cond(e.map_vars(&mut |_| Expr::var(x.clone())))))
            } else if let Some((action, _)) = tm.action_of_acb(comp) {
                if locals.len() != 1 || !locals.contains("e") {
                    return Ok(Inv::True);
                }
                // truth table over e
                let at = |b: bool| {
                    e.map_vars(&mut |_| Expr::bool(b)).eval(&Vec::<Value>::new()).as_bool()
                };
                let en = Inv::Atom(SfcAtom::Enabled(Named::new(action)));
                Ok(match (at(false), at(true)) {
                    (true, true) => Inv::True,
                    (false, false) => Inv::False,
                    (false, true) => en,
                    (true, false) => not(en),
                })
            } else {
                Ok(Inv::True)
            }
        }
    })
}

/// SFC predicate to BIP predicate, atom by atom. The result is unresolved;
/// pass it through [`resolve_bip`] before evaluating.
pub fn t_r(req: &SfcInv, tm: &TraceMap) -> BipInv {
    let r: Result<BipInv, std::convert::Infallible> = req.map_atoms(&mut |a| {
        Ok(match a {
            SfcAtom::Active(s) => not(Inv::Atom(BipAtom::At(
                Named::new(tm.steps.get(&s.name).cloned().unwrap_or_else(|| s.name.clone())),
                Named::new("DISABLED"),
            ))),
            SfcAtom::Enabled(x) => {
                let acb = tm.actions.get(&x.name).map(|t| t.acb.clone()).unwrap_or_else(|| x.name.clone());
                Inv::Atom(BipAtom::Cond(Expr::bin(
                    BinOp::Eq,
                    Expr::var(format!("{acb}.e")),
                    Expr::bool(true),
                )))
            }
            SfcAtom::Cond(e) => Inv::Atom(BipAtom::Cond(e.map_vars(&mut |v| {
                let gv = tm.vars.get(&v.name).cloned().unwrap_or_else(|| v.name.clone());
                Expr::var(format!("{gv}.v"))
            }))),
        })
    });
    match r {
        Ok(i) => i,
        Err(never) => match never {},
    }
}

// ---------------------------------------------------------------- checking

/// Where SFC invariants are observed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Observe {
    /// After complete cycles (the initial configuration only if a cycle
    /// returns to it).
    #[default]
    Boundaries,
    /// Every configuration reachable by micro-steps.
    Micro,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvReport {
    pub holds: bool,
    pub states: usize,
    /// Rendered states from the initial one to the violation.
    pub trace: Vec<String>,
    /// Set when the violation is a reachable range error.
    pub defect: Option<String>,
}

fn report<N: Clone + Eq + std::hash::Hash, L>(
    g: &Graph<N, L>,
    candidates: &[usize],
    holds_at: impl Fn(&N) -> bool,
    render: impl Fn(&N) -> String,
) -> Result<InvReport, PartialGraph> {
    if let Some(l) = &g.limit {
        return Err(PartialGraph(l.clone()));
    }
    let trace = |i: usize| g.path_to(i).into_iter().map(|n| render(&g.nodes[n])).collect();
    if let Some(&bad) = candidates.iter().find(|&&i| !holds_at(&g.nodes[i])) {
        return Ok(InvReport {
            holds: false,
            states: g.nodes.len(),
            trace: trace(bad),
            defect: None,
        });
    }
    if let Some((src, msg)) = g
        .defects
        .iter()
        .min_by_key(|(src, _)| g.path_to(*src).len())
    {
        return Ok(InvReport {
            holds: false,
            states: g.nodes.len(),
            trace: trace(*src),
            defect: Some(msg.clone()),
        });
    }
    Ok(InvReport {
        holds: true,
        states: g.nodes.len(),
        trace: Vec::new(),
        defect: None,
    })
}

pub fn check_sfc_invariant(
    m: &SfcModel,
    inv: &SfcInv,
    observe: Observe,
    opts: SemOptions,
    limits: Limits,
) -> Result<InvReport, PartialGraph> {
    let render = |c: &Configuration| c.render(m);
    match observe {
        Observe::Micro => {
            let g = reachable_configs(m, opts, limits);
            let all: Vec<usize> = (0..g.nodes.len()).collect();
            report(&g, &all, |c| eval_sfc(inv, c), render)
        }
        Observe::Boundaries => {
            let g = reachable_cycles(m, opts, limits);
            let ids: Vec<usize> = cycle_boundaries(&g)
                .into_iter()
                .filter_map(|c| g.id(c))
                .collect();
            report(&g, &ids, |c| eval_sfc(inv, c), render)
        }
    }
}

/// Checks `inv` over the states reachable from the model's initial state.
pub fn check_bip_invariant(
    b: &ComposedModel,
    inv: &BipInv,
    opts: BipOptions,
    limits: Limits,
) -> Result<InvReport, PartialGraph> {
    let g = reachable_from(b, opts, limits, initial_state(b));
    let all: Vec<usize> = (0..g.nodes.len()).collect();
    report(&g, &all, |s| eval_bip(inv, s), |s| s.render(b))
}
