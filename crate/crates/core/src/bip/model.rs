//! BIP atomic components, connectors with a designated sender, and
//! composed models with a priority order over connectors.

use std::collections::BTreeSet;
use std::fmt;

use crate::diag::Diagnostic;
use crate::expr::{Decls, Expr, Kind, Program, Scope, Type, Value, VarDecl};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Port {
    pub name: String,
    /// Index of the variable exchanged through this port.
    pub binds: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipTransition {
    pub src: usize,
    pub guard: Expr,
    pub update: Program,
    pub port: usize,
    pub tgt: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomicComponent {
    pub name: String,
    pub vars: Decls,
    pub ports: Vec<Port>,
    pub locations: Vec<String>,
    pub init_loc: usize,
    pub transitions: Vec<BipTransition>,
}

/// Error raised by the component builder for malformed templates.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("component `{component}`: {message}")]
pub struct BuildError {
    pub component: String,
    pub message: String,
}

impl AtomicComponent {
    pub fn new(name: impl Into<String>) -> Self {
        AtomicComponent {
            name: name.into(),
            vars: Decls::default(),
            ports: Vec::new(),
            locations: Vec::new(),
            init_loc: 0,
            transitions: Vec::new(),
        }
    }

    pub fn loc_index(&self, name: &str) -> Option<usize> {
        self.locations.iter().position(|l| l == name)
    }

    pub fn port_index(&self, name: &str) -> Option<usize> {
        self.ports.iter().position(|p| p.name == name)
    }

    pub fn var(&mut self, name: &str, ty: Type, init: Value) -> &mut Self {
        self.vars.0.push(VarDecl::new(name, ty, init));
        self
    }

    pub fn bool_var(&mut self, name: &str, init: bool) -> &mut Self {
        self.var(name, Type::Bool, Value::Bool(init))
    }

    /// Adds locations; the first location added overall is the initial one
    /// unless [`AtomicComponent::initial`] says otherwise.
    pub fn locs(&mut self, names: &[&str]) -> &mut Self {
        self.locations.extend(names.iter().map(|s| s.to_string()));
        self
    }

    pub fn initial(&mut self, loc: &str) -> &mut Self {
        self.init_loc = self.loc_index(loc).expect("initial location declared");
        self
    }

    pub fn port(&mut self, name: &str, binds: Option<&str>) -> &mut Self {
        let binds = binds.map(|v| self.vars.index_of(v).expect("bound variable declared"));
        self.ports.push(Port {
            name: name.to_string(),
            binds,
        });
        self
    }

    pub fn ports(&mut self, names: &[&str]) -> &mut Self {
        for n in names {
            self.port(n, None);
        }
        self
    }

    fn err(&self, message: String) -> BuildError {
        BuildError {
            component: self.name.clone(),
            message,
        }
    }

    /// Adds a transition from already-built guard and update ASTs, resolving
    /// them against this component's variables.
    pub fn add_transition(
        &mut self,
        src: &str,
        port: &str,
        tgt: &str,
        mut guard: Expr,
        mut update: Program,
    ) -> Result<&mut Self, BuildError> {
        let src_i = self
            .loc_index(src)
            .ok_or_else(|| self.err(format!("unknown location `{src}`")))?;
        let tgt_i = self
            .loc_index(tgt)
            .ok_or_else(|| self.err(format!("unknown location `{tgt}`")))?;
        let port_i = self
            .port_index(port)
            .ok_or_else(|| self.err(format!("unknown port `{port}`")))?;
        match guard.resolve(&self.vars) {
            Ok(Kind::Bool) => {}
            Ok(_) => return Err(self.err(format!("guard `{guard}` is not boolean"))),
            Err(d) => return Err(self.err(d[0].message.clone())),
        }
        update
            .resolve(&self.vars)
            .map_err(|d| self.err(d[0].message.clone()))?;
        self.transitions.push(BipTransition {
            src: src_i,
            guard,
            update,
            port: port_i,
            tgt: tgt_i,
        });
        Ok(self)
    }

    /// Template helper: guard and update given as source text (`""` means
    /// `true` / no update). Panics on malformed templates.
    pub fn tr(&mut self, src: &str, port: &str, tgt: &str, guard: &str, update: &str) -> &mut Self {
        let g = if guard.is_empty() {
            Expr::bool(true)
        } else {
            Expr::parse(guard).expect("template guard parses")
        };
        let u = Program::parse(update).expect("template update parses");
        self.add_transition(src, port, tgt, g, u)
            .expect("template transition is well formed");
        self
    }

    pub fn initial_valuation(&self) -> Vec<Value> {
        self.vars.initial().0
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let ctx = |m: String| format!("component `{}`: {m}", self.name);
        for d in self.vars.iter() {
            for mut diag in d.diagnostics() {
                diag.message = ctx(diag.message);
                out.push(diag);
            }
        }
        dup(&mut out, &self.name, "variable", self.vars.iter().map(|d| d.name.as_str()));
        dup(&mut out, &self.name, "port", self.ports.iter().map(|p| p.name.as_str()));
        dup(&mut out, &self.name, "location", self.locations.iter().map(String::as_str));
        if self.locations.is_empty() {
            out.push(Diagnostic::new("no-location", ctx("no locations".into())));
        } else if self.init_loc >= self.locations.len() {
            out.push(Diagnostic::new("unknown-location", ctx("initial location out of range".into())));
        }
        for p in &self.ports {
            if p.binds.is_some_and(|v| v >= self.vars.len()) {
                out.push(Diagnostic::new(
                    "undeclared",
                    ctx(format!("port `{}` binds an undeclared variable", p.name)),
                ));
            }
        }
        let nl = self.locations.len();
        for t in &self.transitions {
            if t.src >= nl || t.tgt >= nl {
                out.push(Diagnostic::new(
                    "unknown-location",
                    ctx("transition uses an undeclared location".into()),
                ));
            }
            if t.port >= self.ports.len() {
                out.push(Diagnostic::new("unknown-port", ctx("transition uses an undeclared port".into())));
            }
            let mut g = t.guard.clone();
            match g.resolve(&self.vars) {
                Ok(Kind::Bool) => {}
                Ok(_) => out.push(Diagnostic::new(
                    "type-mismatch",
                    ctx(format!("guard `{}` is not boolean", t.guard)),
                )),
                Err(ds) => out.extend(ds.into_iter().map(|mut d| {
                    d.message = ctx(d.message);
                    d
                })),
            }
            if let Err(ds) = t.update.clone().resolve(&self.vars) {
                out.extend(ds.into_iter().map(|mut d| {
                    d.message = ctx(d.message);
                    d
                }));
            }
        }
        out
    }
}

fn dup<'a>(out: &mut Vec<Diagnostic>, scope: &str, what: &str, names: impl Iterator<Item = &'a str>) {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            out.push(Diagnostic::new(
                "duplicate",
                format!("{scope}: duplicate {what} `{n}`"),
            ));
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    pub comp: usize,
    pub port: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connector {
    pub name: String,
    pub sender: Endpoint,
    pub receivers: Vec<Endpoint>,
}

impl Connector {
    /// Sender first, then receivers in declaration order.
    pub fn endpoints(&self) -> impl Iterator<Item = Endpoint> + '_ {
        std::iter::once(self.sender).chain(self.receivers.iter().copied())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ComposedModel {
    pub name: String,
    pub atomics: Vec<AtomicComponent>,
    pub connectors: Vec<Connector>,
    /// Pairs `(lo, hi)`: connector `hi` has strictly higher priority.
    pub priority: Vec<(usize, usize)>,
}

impl ComposedModel {
    pub fn atomic_index(&self, name: &str) -> Option<usize> {
        self.atomics.iter().position(|a| a.name == name)
    }

    pub fn connector_index(&self, name: &str) -> Option<usize> {
        self.connectors.iter().position(|c| c.name == name)
    }

    /// Adds a connector by component/port names. Panics if a name is unknown.
    pub fn connect(&mut self, name: &str, sender: (&str, &str), receivers: &[(&str, &str)]) -> usize {
        let ep = |(c, p): (&str, &str)| {
            let comp = self
                .atomic_index(c)
                .unwrap_or_else(|| panic!("unknown component {c}"));
            let port = self.atomics[comp]
                .port_index(p)
                .unwrap_or_else(|| panic!("unknown port {c}.{p}"));
            Endpoint { comp, port }
        };
        let c = Connector {
            name: name.to_string(),
            sender: ep(sender),
            receivers: receivers.iter().map(|&r| ep(r)).collect(),
        };
        self.connectors.push(c);
        self.connectors.len() - 1
    }

    /// For each connector, the connectors of strictly higher priority.
    pub fn higher_than(&self) -> Vec<BTreeSet<usize>> {
        let n = self.connectors.len();
        let mut above: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(lo, hi) in &self.priority {
            if lo < n && hi < n {
                above[lo].insert(hi);
            }
        }
        // Floyd-Warshall style closure; connector counts are small.
        for k in 0..n {
            for i in 0..n {
                if above[i].contains(&k) {
                    let add: Vec<usize> = above[k].iter().copied().collect();
                    above[i].extend(add);
                }
            }
        }
        above
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        dup(&mut out, &self.name, "component", self.atomics.iter().map(|a| a.name.as_str()));
        dup(&mut out, &self.name, "connector", self.connectors.iter().map(|c| c.name.as_str()));
        for a in &self.atomics {
            out.extend(a.validate());
        }
        for c in &self.connectors {
            let mut comps = BTreeSet::new();
            let mut ok = true;
            for e in c.endpoints() {
                let port_ok = self
                    .atomics
                    .get(e.comp)
                    .is_some_and(|a| e.port < a.ports.len());
                if !port_ok {
                    out.push(Diagnostic::new(
                        "unknown-port",
                        format!("connector `{}` names an unknown component or port", c.name),
                    ));
                    ok = false;
                } else if !comps.insert(e.comp) {
                    out.push(Diagnostic::new(
                        "duplicate",
                        format!(
                            "connector `{}` uses component `{}` twice",
                            c.name, self.atomics[e.comp].name
                        ),
                    ));
                }
            }
            if !ok {
                continue;
            }
            if let Some(sk) = self.bound_kind(c.sender) {
                for &r in &c.receivers {
                    if let Some(rk) = self.bound_kind(r) {
                        if rk != sk {
                            out.push(Diagnostic::new(
                                "type-mismatch",
                                format!(
                                    "connector `{}` transfers {sk} into {rk} variable of `{}`",
                                    c.name, self.atomics[r.comp].name
                                ),
                            ));
                        }
                    }
                }
            }
        }
        let nc = self.connectors.len();
        if self.priority.iter().any(|&(a, b)| a >= nc || b >= nc) {
            out.push(Diagnostic::new("unknown-connector", "priority names an unknown connector"));
        } else {
            for (i, above) in self.higher_than().iter().enumerate() {
                if above.contains(&i) {
                    out.push(Diagnostic::new(
                        "priority-cycle",
                        format!(
                            "connector priority is not acyclic: `{}` is above itself",
                            self.connectors[i].name
                        ),
                    ));
                }
            }
        }
        out
    }

    fn bound_kind(&self, e: Endpoint) -> Option<Kind> {
        let a = &self.atomics[e.comp];
        let v = a.ports[e.port].binds?;
        Some(a.vars.0.get(v)?.ty.kind())
    }
}

/// Resolves `comp.var` names for invariants over a composed model.
impl Scope for ComposedModel {
    fn lookup(&self, name: &str) -> Option<(usize, usize, Type)> {
        let (c, v) = name.split_once('.')?;
        let ci = self.atomic_index(c)?;
        let vi = self.atomics[ci].vars.index_of(v)?;
        Some((ci, vi, self.atomics[ci].vars.0[vi].ty))
    }
}

impl fmt::Display for ComposedModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bip {} {{", self.name)?;
        for a in &self.atomics {
            writeln!(f, "  atomic {} {{", a.name)?;
            for d in a.vars.iter() {
                writeln!(f, "    {d}")?;
            }
            for p in &a.ports {
                match p.binds {
                    Some(v) => writeln!(f, "    port {} binds {};", p.name, a.vars.0[v].name)?,
                    None => writeln!(f, "    port {};", p.name)?,
                }
            }
            for (i, l) in a.locations.iter().enumerate() {
                let init = if i == a.init_loc { " init" } else { "" };
                writeln!(f, "    location {l}{init};")?;
            }
            for t in &a.transitions {
                write!(
                    f,
                    "    on {} from {} to {}",
                    a.ports[t.port].name, a.locations[t.src], a.locations[t.tgt]
                )?;
                if t.guard != Expr::bool(true) {
                    write!(f, " when {}", t.guard)?;
                }
                if !t.update.is_empty() {
                    write!(f, " do {{ {} }}", t.update)?;
                }
                writeln!(f, ";")?;
            }
            writeln!(f, "  }}")?;
        }
        let ep = |e: Endpoint| {
            let a = &self.atomics[e.comp];
            format!("{}.{}", a.name, a.ports[e.port].name)
        };
        for c in &self.connectors {
            write!(f, "  connector {} : {}", c.name, ep(c.sender))?;
            if !c.receivers.is_empty() {
                let rs: Vec<String> = c.receivers.iter().map(|&r| ep(r)).collect();
                write!(f, " -> ({})", rs.join(", "))?;
            }
            writeln!(f, ";")?;
        }
        for &(lo, hi) in &self.priority {
            writeln!(
                f,
                "  priority {} < {};",
                self.connectors[lo].name, self.connectors[hi].name
            )?;
        }
        writeln!(f, "}}")
    }
}
