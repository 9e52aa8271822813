//! Parser for the textual BIP format.
//!
//! ```text
//! bip demo {
//!   atomic A {
//!     var n : int[0..3] = 0;
//!     port p binds n;
//!     location l0 init;
//!     on p from l0 to l0 when n < 3 do { n := n + 1; };
//!   }
//!   connector c : A.p -> (B.q, C.r);
//!   priority c < d;
//! }
//! ```
//!
//! A connector without receivers may omit the arrow.

use crate::diag::{Diagnostic, Diagnostics, Pos};
use crate::expr::{parse_expr, parse_literal, parse_stmts, parse_type, Expr, Program};
use crate::lexer::Cursor;

use super::model::{AtomicComponent, ComposedModel, Endpoint, Port};

type Named = (String, Pos);

fn named(cur: &mut Cursor) -> Result<Named, Diagnostic> {
    let p = cur.pos();
    Ok((cur.ident()?, p))
}

struct RawTrans {
    port: Named,
    src: Named,
    tgt: Named,
    guard: Expr,
    update: Program,
}

fn parse_atomic(cur: &mut Cursor, diags: &mut Vec<Diagnostic>) -> Result<AtomicComponent, Diagnostic> {
    let name = cur.ident()?;
    cur.expect_sym("{")?;
    let mut a = AtomicComponent::new(name);
    let mut init: Option<usize> = None;
    let mut binds: Vec<Option<Named>> = Vec::new();
    let mut trans = Vec::new();
    while !cur.eat_sym("}") {
        if cur.eat_kw("var") {
            let n = cur.ident()?;
            cur.expect_sym(":")?;
            let ty = parse_type(cur)?;
            cur.expect_sym("=")?;
            let v = parse_literal(cur)?;
            cur.expect_sym(";")?;
            a.var(&n, ty, v);
        } else if cur.eat_kw("port") {
            let n = cur.ident()?;
            let b = if cur.eat_kw("binds") { Some(named(cur)?) } else { None };
            cur.expect_sym(";")?;
            a.ports.push(Port { name: n, binds: None });
            binds.push(b);
        } else if cur.eat_kw("location") {
            let p = cur.pos();
            let n = cur.ident()?;
            if cur.eat_kw("init") {
                if init.is_some() {
                    diags.push(Diagnostic::new(
                        "duplicate",
                        format!("component `{}` has two initial locations", a.name),
                    )
                    .at(p));
                }
                init = Some(a.locations.len());
            }
            cur.expect_sym(";")?;
            a.locations.push(n);
        } else if cur.eat_kw("on") {
            let port = named(cur)?;
            cur.expect_kw("from")?;
            let src = named(cur)?;
            cur.expect_kw("to")?;
            let tgt = named(cur)?;
            let guard = if cur.eat_kw("when") {
                parse_expr(cur)?
            } else {
                Expr::bool(true)
            };
            let update = if cur.eat_kw("do") {
                cur.expect_sym("{")?;
                let p = parse_stmts(cur, |c| c.is_sym("}"))?;
                cur.expect_sym("}")?;
                p
            } else {
                Program::default()
            };
            cur.expect_sym(";")?;
            trans.push(RawTrans {
                port,
                src,
                tgt,
                guard,
                update,
            });
        } else {
            return Err(cur.unexpected("`var`, `port`, `location`, `on` or `}`"));
        }
    }
    match init {
        Some(i) => a.init_loc = i,
        None => diags.push(Diagnostic::new(
            "no-initial-location",
            format!("component `{}` has no initial location", a.name),
        )),
    }
    for (i, b) in binds.into_iter().enumerate() {
        if let Some((v, p)) = b {
            match a.vars.index_of(&v) {
                Some(vi) => a.ports[i].binds = Some(vi),
                None => diags.push(
                    Diagnostic::new(
                        "undeclared",
                        format!("port `{}` binds undeclared variable `{v}`", a.ports[i].name),
                    )
                    .at(p),
                ),
            }
        }
    }
    for t in trans {
        let src = a.loc_index(&t.src.0);
        let tgt = a.loc_index(&t.tgt.0);
        let port = a.port_index(&t.port.0);
        for (r, (n, p), what) in [
            (src, &t.src, "location"),
            (tgt, &t.tgt, "location"),
            (port, &t.port, "port"),
        ] {
            if r.is_none() {
                diags.push(
                    Diagnostic::new(
                        if what == "port" { "unknown-port" } else { "unknown-location" },
                        format!("component `{}`: unknown {what} `{n}`", a.name),
                    )
                    .at(*p),
                );
            }
        }
        let (Some(src), Some(tgt), Some(port)) = (src, tgt, port) else {
            continue;
        };
        let mut guard = t.guard;
        let _ = guard.resolve(&a.vars);
        let mut update = t.update;
        let _ = update.resolve(&a.vars);
        a.transitions.push(super::model::BipTransition {
            src,
            guard,
            update,
            port,
            tgt,
        });
    }
    Ok(a)
}

fn endpoint(cur: &mut Cursor) -> Result<(Named, Named), Diagnostic> {
    let c = named(cur)?;
    cur.expect_sym(".")?;
    let p = named(cur)?;
    Ok((c, p))
}

/// Parses and validates a composed model.
pub fn parse_bip(src: &str) -> Result<ComposedModel, Diagnostics> {
    let mut cur = Cursor::new(src)?;
    let mut diags = Vec::new();
    cur.expect_kw("bip")?;
    let name = cur.ident()?;
    cur.expect_sym("{")?;
    let mut m = ComposedModel {
        name,
        ..ComposedModel::default()
    };
    let mut raw_conns = Vec::new();
    let mut raw_prio: Vec<(Named, Named)> = Vec::new();
    while !cur.eat_sym("}") {
        if cur.eat_kw("atomic") {
            m.atomics.push(parse_atomic(&mut cur, &mut diags)?);
        } else if cur.eat_kw("connector") {
            let n = cur.ident()?;
            cur.expect_sym(":")?;
            let sender = endpoint(&mut cur)?;
            let mut receivers = Vec::new();
            if cur.eat_sym("->") {
                let paren = cur.eat_sym("(");
                if !(cur.is_sym(";") || (paren && cur.is_sym(")"))) {
                    receivers.push(endpoint(&mut cur)?);
                    while cur.eat_sym(",") {
                        receivers.push(endpoint(&mut cur)?);
                    }
                }
                if paren {
                    cur.expect_sym(")")?;
                }
            }
            cur.expect_sym(";")?;
            raw_conns.push((n, sender, receivers));
        } else if cur.eat_kw("priority") {
            let mut chain = vec![named(&mut cur)?];
            while cur.eat_sym("<") {
                chain.push(named(&mut cur)?);
            }
            cur.expect_sym(";")?;
            for w in chain.windows(2) {
                raw_prio.push((w[0].clone(), w[1].clone()));
            }
        } else {
            return Err(cur.unexpected("`atomic`, `connector`, `priority` or `}`").into());
        }
    }
    cur.expect_eof()?;

    let mut resolve_ep = |m: &ComposedModel, ((c, cp), (p, pp)): &(Named, Named)| -> Option<Endpoint> {
        let Some(comp) = m.atomic_index(c) else {
            diags.push(Diagnostic::new("unknown-component", format!("unknown component `{c}`")).at(*cp));
            return None;
        };
        let Some(port) = m.atomics[comp].port_index(p) else {
            diags.push(Diagnostic::new("unknown-port", format!("unknown port `{c}.{p}`")).at(*pp));
            return None;
        };
        Some(Endpoint { comp, port })
    };
    for (n, s, rs) in &raw_conns {
        let sender = resolve_ep(&m, s);
        let receivers: Vec<Option<Endpoint>> = rs.iter().map(|r| resolve_ep(&m, r)).collect();
        if let (Some(sender), Some(receivers)) = (sender, receivers.into_iter().collect::<Option<Vec<_>>>()) {
            m.connectors.push(super::model::Connector {
                name: n.clone(),
                sender,
                receivers,
            });
        }
    }
    for ((lo, lp), (hi, hp)) in raw_prio {
        let l = m.connector_index(&lo);
        let h = m.connector_index(&hi);
        for (r, n, p) in [(l, &lo, lp), (h, &hi, hp)] {
            if r.is_none() {
                diags.push(Diagnostic::new("unknown-connector", format!("unknown connector `{n}`")).at(p));
            }
        }
        if let (Some(l), Some(h)) = (l, h) {
            m.priority.push((l, h));
        }
    }
    diags.extend(m.validate());
    if diags.is_empty() {
        Ok(m)
    } else {
        Err(Diagnostics(diags))
    }
}
