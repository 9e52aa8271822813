//! Typed expressions and assignment programs shared by SFC guards, action
//! bodies, BIP guards/updates and invariant conditions.
//!
//! Integers are bounded by the declaration of the variable they live in.
//! Intermediate arithmetic is exact (checked `i64`); only the value stored by an
//! assignment is range-checked.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diag::{Diagnostic, Diagnostics};
use crate::lexer::{Cursor, Tok};

/// Declared integer bounds are restricted to this magnitude so that checked
/// arithmetic on well-typed programs cannot overflow in practice.
pub const MAX_BOUND: i64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Bool(bool),
    Int(i64),
}

impl Value {
    pub fn as_bool(self) -> bool {
        match self {
            Value::Bool(b) => b,
            Value::Int(i) => i != 0,
        }
    }

    pub fn as_int(self) -> i64 {
        match self {
            Value::Int(i) => i,
            Value::Bool(b) => b as i64,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{b}"),
            Value::Int(i) => write!(f, "{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Type {
    Bool,
    Int { lo: i64, hi: i64 },
}

/// Type without the range, which is all the checker needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Bool,
    Int,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Bool => "bool",
            Kind::Int => "int",
        })
    }
}

impl Type {
    pub fn kind(self) -> Kind {
        match self {
            Type::Bool => Kind::Bool,
            Type::Int { .. } => Kind::Int,
        }
    }

    pub fn admits(self, v: Value) -> bool {
        match (self, v) {
            (Type::Bool, Value::Bool(_)) => true,
            (Type::Int { lo, hi }, Value::Int(i)) => lo <= i && i <= hi,
            _ => false,
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Bool => write!(f, "bool"),
            Type::Int { lo, hi } => write!(f, "int[{lo}..{hi}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarDecl {
    pub name: String,
    pub ty: Type,
    pub init: Value,
}

impl VarDecl {
    pub fn new(name: impl Into<String>, ty: Type, init: Value) -> Self {
        VarDecl {
            name: name.into(),
            ty,
            init,
        }
    }

    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if let Type::Int { lo, hi } = self.ty {
            if lo > hi {
                out.push(Diagnostic::new(
                    "bad-range",
                    format!("variable `{}` has empty range [{lo}..{hi}]", self.name),
                ));
            }
            if lo.abs() > MAX_BOUND || hi.abs() > MAX_BOUND {
                out.push(Diagnostic::new(
                    "bad-range",
                    format!("variable `{}` bounds exceed +/-2^31", self.name),
                ));
            }
        }
        if !self.ty.admits(self.init) {
            out.push(Diagnostic::new(
                "bad-init",
                format!(
                    "initial value {} of `{}` is not a {}",
                    self.init, self.name, self.ty
                ),
            ));
        }
        out
    }
}

impl fmt::Display for VarDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "var {} : {} = {};", self.name, self.ty, self.init)
    }
}

/// A resolved variable reference. `scope` selects a component (BIP invariants
/// span several); everything else uses scope 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarRef {
    pub name: String,
    pub scope: usize,
    pub index: usize,
}

impl VarRef {
    pub fn unresolved(name: impl Into<String>) -> Self {
        VarRef {
            name: name.into(),
            scope: 0,
            index: usize::MAX,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnOp {
    Neg,
    Not,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
    And,
    Or,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
            BinOp::Eq => "==",
            BinOp::Ne => "!=",
            BinOp::And => "&&",
            BinOp::Or => "||",
        }
    }

    fn prec(self) -> u8 {
        match self {
            BinOp::Or => 1,
            BinOp::And => 2,
            BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge | BinOp::Eq | BinOp::Ne => 3,
            BinOp::Add | BinOp::Sub => 4,
            BinOp::Mul => 5,
        }
    }

    fn from_sym(s: &str) -> Option<BinOp> {
        Some(match s {
            "+" => BinOp::Add,
            "-" => BinOp::Sub,
            "*" => BinOp::Mul,
            "<" => BinOp::Lt,
            "<=" => BinOp::Le,
            ">" => BinOp::Gt,
            ">=" => BinOp::Ge,
            "==" => BinOp::Eq,
            "!=" => BinOp::Ne,
            "&&" => BinOp::And,
            "||" => BinOp::Or,
            _ => return None,
        })
    }

    pub fn is_comparison(self) -> bool {
        self.prec() == 3
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Lit(Value),
    Var(VarRef),
    Unary(UnOp, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn int(i: i64) -> Expr {
        Expr::Lit(Value::Int(i))
    }

    pub fn bool(b: bool) -> Expr {
        Expr::Lit(Value::Bool(b))
    }

    pub fn var(name: impl Into<String>) -> Expr {
        Expr::Var(VarRef::unresolved(name))
    }

    pub fn bin(op: BinOp, l: Expr, r: Expr) -> Expr {
        Expr::Binary(op, Box::new(l), Box::new(r))
    }

    pub fn not(e: Expr) -> Expr {
        Expr::Unary(UnOp::Not, Box::new(e))
    }

    /// Parses a complete expression from `src`.
    pub fn parse(src: &str) -> Result<Expr, Diagnostic> {
        let mut cur = Cursor::new(src)?;
        let e = parse_expr(&mut cur)?;
        cur.expect_eof()?;
        Ok(e)
    }

    /// Names of all variables referenced, in first-occurrence order.
    pub fn vars(&self) -> Vec<&VarRef> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a VarRef>) {
        match self {
            Expr::Lit(_) => {}
            Expr::Var(v) => {
                if !out.iter().any(|o| o.name == v.name) {
                    out.push(v)
                }
            }
            Expr::Unary(_, e) => e.collect_vars(out),
            Expr::Binary(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    /// Rewrites every variable reference through `f`.
    pub fn map_vars(&self, f: &mut dyn FnMut(&VarRef) -> Expr) -> Expr {
        match self {
            Expr::Lit(v) => Expr::Lit(*v),
            Expr::Var(v) => f(v),
            Expr::Unary(op, e) => Expr::Unary(*op, Box::new(e.map_vars(f))),
            Expr::Binary(op, l, r) => {
                Expr::Binary(*op, Box::new(l.map_vars(f)), Box::new(r.map_vars(f)))
            }
        }
    }

    /// Resolves variable slots against `scope` and type-checks in one pass.
    pub fn resolve(&mut self, scope: &dyn Scope) -> Result<Kind, Vec<Diagnostic>> {
        let mut diags = Vec::new();
        let k = self.resolve_inner(scope, &mut diags);
        match k {
            Some(k) if diags.is_empty() => Ok(k),
            _ => Err(diags),
        }
    }

    fn resolve_inner(&mut self, scope: &dyn Scope, diags: &mut Vec<Diagnostic>) -> Option<Kind> {
        let shown = self.to_string();
        match self {
            Expr::Lit(Value::Bool(_)) => Some(Kind::Bool),
            Expr::Lit(Value::Int(_)) => Some(Kind::Int),
            Expr::Var(v) => match scope.lookup(&v.name) {
                Some((s, i, ty)) => {
                    v.scope = s;
                    v.index = i;
                    Some(ty.kind())
                }
                None => {
                    diags.push(Diagnostic::new(
                        "undeclared",
                        format!("undeclared variable `{}`", v.name),
                    ));
                    None
                }
            },
            Expr::Unary(op, e) => {
                let k = e.resolve_inner(scope, diags)?;
                let want = match op {
                    UnOp::Neg => Kind::Int,
                    UnOp::Not => Kind::Bool,
                };
                if k != want {
                    diags.push(mismatch(&shown, want, k));
                }
                Some(want)
            }
            Expr::Binary(op, l, r) => {
                let lk = l.resolve_inner(scope, diags);
                let rk = r.resolve_inner(scope, diags);
                let (lk, rk) = (lk?, rk?);
                let (operand, result) = match op {
                    BinOp::Add | BinOp::Sub | BinOp::Mul => (Some(Kind::Int), Kind::Int),
                    BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge => (Some(Kind::Int), Kind::Bool),
                    BinOp::And | BinOp::Or => (Some(Kind::Bool), Kind::Bool),
                    BinOp::Eq | BinOp::Ne => (None, Kind::Bool),
                };
                match operand {
                    Some(want) => {
                        if lk != want {
                            diags.push(mismatch(&shown, want, lk));
                        } else if rk != want {
                            diags.push(mismatch(&shown, want, rk));
                        }
                    }
                    None if lk != rk => diags.push(mismatch(&shown, lk, rk)),
                    None => {}
                }
                Some(result)
            }
        }
    }

    pub fn eval<L: Lookup + ?Sized>(&self, env: &L) -> Value {
        match self {
            Expr::Lit(v) => *v,
            Expr::Var(v) => env.get(v),
            Expr::Unary(UnOp::Neg, e) => Value::Int(e.eval(env).as_int().saturating_neg()),
            Expr::Unary(UnOp::Not, e) => Value::Bool(!e.eval(env).as_bool()),
            Expr::Binary(BinOp::And, l, r) => {
                Value::Bool(l.eval(env).as_bool() && r.eval(env).as_bool())
            }
            Expr::Binary(BinOp::Or, l, r) => {
                Value::Bool(l.eval(env).as_bool() || r.eval(env).as_bool())
            }
            Expr::Binary(op, l, r) => {
                let (a, b) = (l.eval(env), r.eval(env));
                match op {
                    BinOp::Eq => Value::Bool(a == b),
                    BinOp::Ne => Value::Bool(a != b),
                    _ => {
                        let (x, y) = (a.as_int(), b.as_int());
                        match op {
                            // Saturation only triggers far outside any declarable range,
                            // so an assignment of a saturated value is always a range error.
                            BinOp::Add => Value::Int(x.saturating_add(y)),
                            BinOp::Sub => Value::Int(x.saturating_sub(y)),
                            BinOp::Mul => Value::Int(x.saturating_mul(y)),
                            BinOp::Lt => Value::Bool(x < y),
                            BinOp::Le => Value::Bool(x <= y),
                            BinOp::Gt => Value::Bool(x > y),
                            BinOp::Ge => Value::Bool(x >= y),
                            _ => unreachable!("handled above"),
                        }
                    }
                }
            }
        }
    }
}

fn mismatch(node: &str, want: Kind, got: Kind) -> Diagnostic {
    Diagnostic::new(
        "type-mismatch",
        format!("type mismatch in `{node}`: expected {want}, found {got}"),
    )
}

fn parse_primary(cur: &mut Cursor) -> Result<Expr, Diagnostic> {
    match cur.peek().clone() {
        Tok::Int(n) => {
            cur.bump();
            Ok(Expr::int(n))
        }
        Tok::Ident(s) if s == "true" => {
            cur.bump();
            Ok(Expr::bool(true))
        }
        Tok::Ident(s) if s == "false" => {
            cur.bump();
            Ok(Expr::bool(false))
        }
        Tok::Ident(s) => {
            cur.bump();
            if cur.is_sym(".") {
                if let Tok::Ident(field) = cur.peek_at(1).clone() {
                    cur.bump();
                    cur.bump();
                    return Ok(Expr::var(format!("{s}.{field}")));
                }
            }
            Ok(Expr::var(s))
        }
        Tok::Sym("(") => {
            cur.bump();
            let e = parse_expr(cur)?;
            cur.expect_sym(")")?;
            Ok(e)
        }
        Tok::Sym("!") => {
            cur.bump();
            Ok(Expr::not(parse_primary(cur)?))
        }
        Tok::Sym("-") => {
            cur.bump();
            match parse_primary(cur)? {
                Expr::Lit(Value::Int(n)) => Ok(Expr::int(-n)),
                e => Ok(Expr::Unary(UnOp::Neg, Box::new(e))),
            }
        }
        _ => Err(cur.unexpected("expression")),
    }
}

fn parse_bin(cur: &mut Cursor, min_prec: u8) -> Result<Expr, Diagnostic> {
    let mut lhs = parse_primary(cur)?;
    loop {
        let op = match cur.peek() {
            Tok::Sym(s) => match BinOp::from_sym(s) {
                Some(op) if op.prec() >= min_prec => op,
                _ => break,
            },
            _ => break,
        };
        cur.bump();
        let rhs = parse_bin(cur, op.prec() + 1)?;
        lhs = Expr::bin(op, lhs, rhs);
        if op.is_comparison() && matches!(cur.peek(), Tok::Sym(s) if BinOp::from_sym(s).is_some_and(|o| o.is_comparison()))
        {
            return Err(cur.unexpected("no chained comparison"));
        }
    }
    Ok(lhs)
}

/// Parses an expression at the cursor (stops before the first token that
/// cannot continue it).
pub fn parse_expr(cur: &mut Cursor) -> Result<Expr, Diagnostic> {
    parse_bin(cur, 1)
}

/// Parses arithmetic and comparison only (no `&&`/`||`); used by the
/// invariant parser, which owns the boolean skeleton.
pub fn parse_comparison(cur: &mut Cursor) -> Result<Expr, Diagnostic> {
    parse_bin(cur, 3)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(e: &Expr, parent: u8, right: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match e {
                Expr::Lit(v) if matches!(v, Value::Int(i) if *i < 0) && parent > 0 => {
                    write!(f, "({v})")
                }
                Expr::Lit(v) => write!(f, "{v}"),
                Expr::Var(v) => write!(f, "{}", v.name),
                Expr::Unary(op, inner) => {
                    f.write_str(match op {
                        UnOp::Neg => "-",
                        UnOp::Not => "!",
                    })?;
                    go(inner, 6, false, f)
                }
                Expr::Binary(op, l, r) => {
                    let p = op.prec();
                    let paren = p < parent || (p == parent && right);
                    if paren {
                        f.write_str("(")?;
                    }
                    go(l, p, false, f)?;
                    write!(f, " {} ", op.symbol())?;
                    go(r, p, true, f)?;
                    if paren {
                        f.write_str(")")?;
                    }
                    Ok(())
                }
            }
        }
        go(self, 0, false, f)
    }
}

/// Name resolution for [`Expr::resolve`].
pub trait Scope {
    /// Returns `(scope, index, type)` for a variable name.
    fn lookup(&self, name: &str) -> Option<(usize, usize, Type)>;
}

/// Value lookup for [`Expr::eval`].
pub trait Lookup {
    fn get(&self, v: &VarRef) -> Value;
}

impl Lookup for [Value] {
    fn get(&self, v: &VarRef) -> Value {
        self[v.index]
    }
}

impl Lookup for Vec<Value> {
    fn get(&self, v: &VarRef) -> Value {
        self[v.index]
    }
}

/// An ordered declaration set. Valuations are vectors aligned with it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decls(pub Vec<VarDecl>);

impl Decls {
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|d| d.name == name)
    }

    pub fn get(&self, name: &str) -> Option<&VarDecl> {
        self.0.iter().find(|d| d.name == name)
    }

    pub fn initial(&self) -> Valuation {
        Valuation(self.0.iter().map(|d| d.init).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &VarDecl> {
        self.0.iter()
    }
}

impl Scope for Decls {
    fn lookup(&self, name: &str) -> Option<(usize, usize, Type)> {
        self.0
            .iter()
            .position(|d| d.name == name)
            .map(|i| (0, i, self.0[i].ty))
    }
}

/// A total valuation over a [`Decls`], stored positionally.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Valuation(pub Vec<Value>);

impl Lookup for Valuation {
    fn get(&self, v: &VarRef) -> Value {
        self.0[v.index]
    }
}

impl Valuation {
    pub fn respects(&self, decls: &Decls) -> bool {
        self.0.len() == decls.len() && decls.iter().zip(&self.0).all(|(d, v)| d.ty.admits(*v))
    }

    pub fn named<'a>(&'a self, decls: &'a Decls) -> impl Iterator<Item = (&'a str, Value)> + 'a {
        decls.iter().map(|d| d.name.as_str()).zip(self.0.iter().copied())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Stmt {
    pub target: VarRef,
    pub value: Expr,
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} := {};", self.target.name, self.value)
    }
}

/// An ordered list of assignments.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Program(pub Vec<Stmt>);

/// An assignment stored a value outside the target's declared range.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("range violation: `{var}` := {value} leaves {ty}")]
pub struct RangeViolation {
    pub var: String,
    pub value: Value,
    pub ty: Type,
}

impl Program {
    pub fn parse(src: &str) -> Result<Program, Diagnostic> {
        let mut cur = Cursor::new(src)?;
        let p = parse_stmts(&mut cur, |c| c.at_eof())?;
        Ok(p)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn resolve(&mut self, scope: &dyn Scope) -> Result<(), Vec<Diagnostic>> {
        let mut diags = Vec::new();
        for st in &mut self.0 {
            let target_ty = match scope.lookup(&st.target.name) {
                Some((s, i, ty)) => {
                    st.target.scope = s;
                    st.target.index = i;
                    Some(ty)
                }
                None => {
                    diags.push(Diagnostic::new(
                        "undeclared",
                        format!("assignment to undeclared variable `{}`", st.target.name),
                    ));
                    None
                }
            };
            match st.value.resolve(scope) {
                Ok(k) => {
                    if let Some(ty) = target_ty {
                        if ty.kind() != k {
                            diags.push(Diagnostic::new(
                                "type-mismatch",
                                format!(
                                    "type mismatch in `{st}`: `{}` is {}, value is {k}",
                                    st.target.name,
                                    ty.kind()
                                ),
                            ));
                        }
                    }
                }
                Err(d) => diags.extend(d),
            }
        }
        if diags.is_empty() {
            Ok(())
        } else {
            Err(diags)
        }
    }

    /// Applies the statements in order to `vals` (aligned with `decls`).
    /// On a range violation `vals` holds the state before the failing statement.
    pub fn exec(&self, vals: &mut [Value], decls: &Decls) -> Result<(), RangeViolation> {
        for st in &self.0 {
            let v = st.value.eval(vals);
            let d = &decls.0[st.target.index];
            if !d.ty.admits(v) {
                return Err(RangeViolation {
                    var: d.name.clone(),
                    value: v,
                    ty: d.ty,
                });
            }
            vals[st.target.index] = v;
        }
        Ok(())
    }

    /// Variables written, in declaration order.
    pub fn write_set(&self) -> BTreeSet<usize> {
        self.0.iter().map(|s| s.target.index).collect()
    }

    /// Variables read by any right-hand side, in declaration order.
    pub fn read_set(&self) -> BTreeSet<usize> {
        self.0
            .iter()
            .flat_map(|s| s.value.vars().into_iter().map(|v| v.index))
            .collect()
    }

    /// Names of variables read/written, first-occurrence order. Works on
    /// unresolved programs.
    pub fn read_names(&self) -> BTreeSet<String> {
        self.0
            .iter()
            .flat_map(|s| s.value.vars().into_iter().map(|v| v.name.clone()))
            .collect()
    }

    pub fn write_names(&self) -> BTreeSet<String> {
        self.0.iter().map(|s| s.target.name.clone()).collect()
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Parses `IDENT := expr ;` statements until `stop` holds.
pub fn parse_stmts(cur: &mut Cursor, stop: impl Fn(&Cursor) -> bool) -> Result<Program, Diagnostic> {
    let mut out = Vec::new();
    while !stop(cur) {
        let name = cur.ident()?;
        cur.expect_sym(":=")?;
        let value = parse_expr(cur)?;
        cur.expect_sym(";")?;
        out.push(Stmt {
            target: VarRef::unresolved(name),
            value,
        });
    }
    Ok(Program(out))
}

/// Parses `bool` or `int[lo..hi]`.
pub fn parse_type(cur: &mut Cursor) -> Result<Type, Diagnostic> {
    if cur.eat_kw("bool") {
        return Ok(Type::Bool);
    }
    cur.expect_kw("int")?;
    cur.expect_sym("[")?;
    let lo = cur.int()?;
    cur.expect_sym("..")?;
    let hi = cur.int()?;
    cur.expect_sym("]")?;
    Ok(Type::Int { lo, hi })
}

pub fn parse_literal(cur: &mut Cursor) -> Result<Value, Diagnostic> {
    if cur.eat_kw("true") {
        Ok(Value::Bool(true))
    } else if cur.eat_kw("false") {
        Ok(Value::Bool(false))
    } else {
        Ok(Value::Int(cur.int()?))
    }
}

/// Free-standing type check of an expression: empty iff it resolves and is well typed.
pub fn typecheck_expr(e: &Expr, decls: &Decls) -> Vec<Diagnostic> {
    e.clone().resolve(decls).err().unwrap_or_default()
}

pub fn typecheck_program(p: &Program, decls: &Decls) -> Vec<Diagnostic> {
    p.clone().resolve(decls).err().unwrap_or_default()
}

/// Evaluates a resolved expression against a valuation.
pub fn eval_expr(e: &Expr, f: &Valuation) -> Value {
    e.eval(f)
}

/// Runs a resolved program, returning the updated valuation.
pub fn exec_program(p: &Program, f: &Valuation, decls: &Decls) -> Result<Valuation, RangeViolation> {
    let mut vals = f.0.clone();
    p.exec(&mut vals, decls)?;
    Ok(Valuation(vals))
}

/// Parses and resolves a guard-like expression, requiring it to be boolean.
pub fn parse_bool_expr(src: &str, scope: &dyn Scope) -> Result<Expr, Diagnostics> {
    let mut e = Expr::parse(src)?;
    match e.resolve(scope) {
        Ok(Kind::Bool) => Ok(e),
        Ok(k) => Err(mismatch(src, Kind::Bool, k).into()),
        Err(d) => Err(Diagnostics(d)),
    }
}
