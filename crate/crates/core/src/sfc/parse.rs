//! Parser for the textual SFC format.
//!
//! ```text
//! sfc fig3 {
//!   var x : int[0..31] = 0;
//!   action a1 { x := x + 1; }
//!   step S1 init { a1; }
//!   step S2 { a2 @N; }
//!   transition t1 : S1 -> S2 when x < 10;
//!   order a1 < a2;
//!   priority t2 > t1;
//! }
//! ```
//!
//! Items may appear in any order; the serializer emits the order above.

use std::collections::BTreeSet;

use crate::diag::{Diagnostic, Diagnostics, Pos};
use crate::expr::{parse_expr, parse_literal, parse_stmts, parse_type, Decls, Expr, VarDecl};
use crate::lexer::Cursor;

use super::model::{ActionBlock, ActionDef, Dialect, Qualifier, SfcModel, SfcStep, SfcTransition};

struct RawStep {
    name: String,
    init: bool,
    blocks: Vec<(String, Qualifier, Pos)>,
}

struct RawTrans {
    name: String,
    src: Vec<(String, Pos)>,
    tgt: Vec<(String, Pos)>,
    guard: Expr,
}

#[derive(Default)]
struct Raw {
    vars: Vec<VarDecl>,
    actions: Vec<ActionDef>,
    steps: Vec<RawStep>,
    trans: Vec<RawTrans>,
    order: Option<Vec<(String, Pos)>>,
    prio: Vec<((String, Pos), (String, Pos))>,
}

fn named(cur: &mut Cursor) -> Result<(String, Pos), Diagnostic> {
    let p = cur.pos();
    Ok((cur.ident()?, p))
}

fn steplist(cur: &mut Cursor) -> Result<Vec<(String, Pos)>, Diagnostic> {
    if cur.eat_sym("(") {
        let mut out = vec![named(cur)?];
        while cur.eat_sym(",") {
            out.push(named(cur)?);
        }
        cur.expect_sym(")")?;
        Ok(out)
    } else {
        Ok(vec![named(cur)?])
    }
}

fn parse_raw(cur: &mut Cursor) -> Result<(String, Raw), Diagnostic> {
    cur.expect_kw("sfc")?;
    let name = cur.ident()?;
    cur.expect_sym("{")?;
    let mut raw = Raw::default();
    while !cur.eat_sym("}") {
        if cur.eat_kw("var") {
            let n = cur.ident()?;
            cur.expect_sym(":")?;
            let ty = parse_type(cur)?;
            cur.expect_sym("=")?;
            let init = parse_literal(cur)?;
            cur.expect_sym(";")?;
            raw.vars.push(VarDecl::new(n, ty, init));
        } else if cur.eat_kw("action") {
            let n = cur.ident()?;
            cur.expect_sym("{")?;
            let body = parse_stmts(cur, |c| c.is_sym("}"))?;
            cur.expect_sym("}")?;
            raw.actions.push(ActionDef { name: n, body });
        } else if cur.eat_kw("step") {
            let n = cur.ident()?;
            let init = cur.eat_kw("init");
            cur.expect_sym("{")?;
            let mut blocks = Vec::new();
            while !cur.eat_sym("}") {
                if cur.is_kw("sfc") {
                    return Err(Diagnostic::new(
                        "nested-sfc",
                        "action blocks referring to nested SFCs are not supported",
                    )
                    .at(cur.pos()));
                }
                let (a, p) = named(cur)?;
                let q = if cur.eat_sym("@") {
                    let qp = cur.pos();
                    let q = cur.ident()?;
                    Qualifier::parse(&q).ok_or_else(|| {
                        Diagnostic::new("syntax", format!("unknown qualifier `{q}`")).at(qp)
                    })?
                } else {
                    Qualifier::N
                };
                cur.expect_sym(";")?;
                blocks.push((a, q, p));
            }
            raw.steps.push(RawStep { name: n, init, blocks });
        } else if cur.eat_kw("transition") {
            let n = cur.ident()?;
            cur.expect_sym(":")?;
            let src = steplist(cur)?;
            cur.expect_sym("->")?;
            let tgt = steplist(cur)?;
            cur.expect_kw("when")?;
            let guard = parse_expr(cur)?;
            cur.expect_sym(";")?;
            raw.trans.push(RawTrans { name: n, src, tgt, guard });
        } else if cur.is_kw("order") {
            let p = cur.pos();
            cur.bump();
            if raw.order.is_some() {
                return Err(Diagnostic::new("syntax", "duplicate `order` item").at(p));
            }
            let mut names = vec![named(cur)?];
            while cur.eat_sym("<") {
                names.push(named(cur)?);
            }
            cur.expect_sym(";")?;
            raw.order = Some(names);
        } else if cur.eat_kw("priority") {
            let mut chain = vec![named(cur)?];
            while cur.eat_sym(">") {
                chain.push(named(cur)?);
            }
            cur.expect_sym(";")?;
            for w in chain.windows(2) {
                raw.prio.push((w[0].clone(), w[1].clone()));
            }
        } else {
            return Err(cur.unexpected("`var`, `action`, `step`, `transition`, `order`, `priority` or `}`"));
        }
    }
    cur.expect_eof()?;
    Ok((name, raw))
}

/// Parses and validates an SFC. Syntax errors stop at the first one;
/// resolution and validation problems are all reported.
pub fn parse_sfc(src: &str, dialect: Dialect) -> Result<SfcModel, Diagnostics> {
    let mut cur = Cursor::new(src)?;
    let (name, raw) = parse_raw(&mut cur)?;
    let mut diags = Vec::new();

    let vars = Decls(raw.vars);
    let mut actions = raw.actions;
    for a in &mut actions {
        // Resolution errors are reported again (with context) by validate.
        let _ = a.body.resolve(&vars);
    }
    let find = |names: &[String], n: &str| names.iter().position(|x| x == n);
    let action_names: Vec<String> = actions.iter().map(|a| a.name.clone()).collect();
    let step_names: Vec<String> = raw.steps.iter().map(|s| s.name.clone()).collect();
    let trans_names: Vec<String> = raw.trans.iter().map(|t| t.name.clone()).collect();

    let mut resolve = |names: &[String], what: &'static str, (n, p): &(String, Pos)| -> Option<usize> {
        let r = find(names, n);
        if r.is_none() {
            diags.push(Diagnostic::new(what, format!("{} `{n}`", what.replace('-', " "))).at(*p));
        }
        r
    };

    let mut steps = Vec::new();
    let mut initial = BTreeSet::new();
    for (i, s) in raw.steps.iter().enumerate() {
        if s.init {
            initial.insert(i);
        }
        let blocks = s
            .blocks
            .iter()
            .filter_map(|(a, q, p)| {
                resolve(&action_names, "unknown-action", &(a.clone(), *p)).map(|action| ActionBlock {
                    action,
                    qualifier: *q,
                })
            })
            .collect();
        steps.push(SfcStep {
            name: s.name.clone(),
            blocks,
        });
    }

    let mut transitions = Vec::new();
    for t in raw.trans {
        let src = t
            .src
            .iter()
            .filter_map(|r| resolve(&step_names, "unknown-step", r))
            .collect();
        let tgt = t
            .tgt
            .iter()
            .filter_map(|r| resolve(&step_names, "unknown-step", r))
            .collect();
        let mut guard = t.guard;
        let _ = guard.resolve(&vars);
        transitions.push(SfcTransition {
            name: t.name,
            src,
            guard,
            tgt,
        });
    }

    let action_order = raw
        .order
        .unwrap_or_default()
        .iter()
        .filter_map(|r| resolve(&action_names, "unknown-action", r))
        .collect();
    let priority = raw
        .prio
        .iter()
        .filter_map(|(hi, lo)| {
            let hi = resolve(&trans_names, "unknown-transition", hi);
            let lo = resolve(&trans_names, "unknown-transition", lo);
            Some((lo?, hi?))
        })
        .collect();

    let model = SfcModel {
        name,
        vars,
        actions,
        steps,
        initial,
        transitions,
        action_order,
        priority,
        dialect,
    };
    diags.extend(model.validate());
    if diags.is_empty() {
        Ok(model)
    } else {
        Err(Diagnostics(diags))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "sfc m {
        var x : int[0..7] = 0;
        action a { x := x + 1; }
        step S1 init { a; }
        step S2 { }
        transition t1 : S1 -> S2 when x > 2;
        transition t2 : S1 -> (S1, S2) when x > 3;
        order a;
        priority t2 > t1;
    }";

    #[test]
    fn parses_and_resolves() {
        let m = parse_sfc(SMALL, Dialect::NonExtended).unwrap();
        assert_eq!(m.steps.len(), 2);
        assert_eq!(m.transitions[1].tgt.len(), 2);
        assert_eq!(m.priority, vec![(0, 1)]);
        assert_eq!(m.initial.iter().copied().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn round_trip() {
        let m = parse_sfc(SMALL, Dialect::NonExtended).unwrap();
        let again = parse_sfc(&m.to_string(), Dialect::NonExtended).unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn unknown_step_has_position() {
        let e = parse_sfc(&SMALL.replace("-> S2 when x > 2", "-> S9 when x > 2"), Dialect::NonExtended)
            .unwrap_err();
        assert!(e.has("unknown-step"));
        assert!(e.0[0].pos.is_some());
        assert!(e.0[0].message.contains("S9"));
    }

    #[test]
    fn nested_sfc_rejected() {
        let e = parse_sfc(&SMALL.replace("step S2 { }", "step S2 { sfc inner; }"), Dialect::NonExtended)
            .unwrap_err();
        assert!(e.has("nested-sfc"));
    }

    #[test]
    fn syntax_error_position() {
        let e = parse_sfc("sfc m {\n  var x : int[0..3] = ;\n}", Dialect::NonExtended).unwrap_err();
        assert!(e.has("syntax"));
        assert_eq!(e.0[0].pos.unwrap().line, 2);
    }
}
