//! The command language: parse, canonically print, and run small scripts
//! that declare a ring, bind modules, and ask for invariants.
//!
//! Grammar (one statement per `;`, `#` starts a line comment):
//!
//! ```text
//! ring NAME = FIELD[v1, v2:3, ...] / (f);      FIELD = Q | F(p); "/ (f)" optional
//! NAME = ideal(p1, ..., pk);                    cyclic module R/(p1..pk)
//! NAME = coker [[a11, ...], ...];               cokernel of a matrix (rows listed)
//! NAME = dirsum(M1, ..., Mk);                   direct sum
//! NAME = free(n);                               free module of rank n
//! theta(M, N);            chi(M, N);            chi(M, N, i);
//! tor_table(M, N, upTo);  resolve(M, steps);    mf(M);
//! depth(M);               depth_formula(M, N, upTo);
//! decency(M, N);          rigidity_probe(M, N, upTo);
//! sing();                 ipd(M);               frob_tor(M, e, upTo);
//! verify_exact(Mk, [[..]], ..., [[..]], M0);    left-to-right = high-to-low
//! ```
//!
//! Module expressions are allowed anywhere a module argument appears.
//! A new `ring` declaration clears all module bindings. Polynomial sources
//! are kept verbatim, so printing a parsed script and reparsing it yields
//! the same syntax tree (spans aside).

mod lex;
mod parse;
mod run;

pub use parse::parse_script;
pub use run::{parse_field_name, parse_order_name, run_script, RunOptions, RunOutcome};

use crate::error::EngineError;
use crate::field::FieldSpec;
use std::fmt;

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingDecl {
    pub name: String,
    pub field: FieldSpec,
    /// Variable names with their positive weights (1 when unstated).
    pub vars: Vec<(String, u64)>,
    /// Hypersurface equation source, verbatim.
    pub equation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleExpr {
    Name(String),
    Ideal(Vec<String>),
    Coker(Vec<Vec<String>>),
    Free(u64),
    Dirsum(Vec<ModuleExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainItem {
    Module(ModuleExpr),
    Map(Vec<Vec<String>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Theta(ModuleExpr, ModuleExpr),
    Chi(ModuleExpr, ModuleExpr, Option<u64>),
    TorTable(ModuleExpr, ModuleExpr, u64),
    Resolve(ModuleExpr, u64),
    Mf(ModuleExpr),
    Depth(ModuleExpr),
    DepthFormula(ModuleExpr, ModuleExpr, u64),
    Decency(ModuleExpr, ModuleExpr),
    RigidityProbe(ModuleExpr, ModuleExpr, u64),
    Sing,
    Ipd(ModuleExpr),
    FrobTor(ModuleExpr, u64, u64),
    VerifyExact(Vec<ChainItem>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StatementKind {
    Ring(RingDecl),
    Bind { name: String, expr: ModuleExpr },
    Command(Command),
}

#[derive(Debug, Clone)]
pub struct Statement {
    pub kind: StatementKind,
    pub span: Span,
}

/// Statements compare by content; spans are diagnostics only.
impl PartialEq for Statement {
    fn eq(&self, other: &Statement) -> bool {
        self.kind == other.kind
    }
}
impl Eq for Statement {}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Script {
    pub statements: Vec<Statement>,
}

#[derive(Debug, thiserror::Error)]
pub enum ScriptError {
    #[error("{span}: syntax error: {message}")]
    Syntax { span: Span, message: String },
    #[error("{span}: unbound name `{name}`")]
    Unbound { span: Span, name: String },
    #[error("{span}: {source}")]
    Engine { span: Span, source: EngineError },
}

impl ScriptError {
    pub fn is_syntax(&self) -> bool {
        matches!(self, ScriptError::Syntax { .. } | ScriptError::Unbound { .. })
    }
}

// ---------------------------------------------------------------------------
// Canonical printing
// ---------------------------------------------------------------------------

fn print_matrix(rows: &[Vec<String>], out: &mut String) {
    out.push('[');
    for (i, row) in rows.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push('[');
        out.push_str(&row.join(", "));
        out.push(']');
    }
    out.push(']');
}

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleExpr::Name(n) => write!(f, "{n}"),
            ModuleExpr::Ideal(ps) => write!(f, "ideal({})", ps.join(", ")),
            ModuleExpr::Coker(rows) => {
                let mut s = String::new();
                print_matrix(rows, &mut s);
                write!(f, "coker {s}")
            }
            ModuleExpr::Free(n) => write!(f, "free({n})"),
            ModuleExpr::Dirsum(ms) => {
                let parts: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
                write!(f, "dirsum({})", parts.join(", "))
            }
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Theta(m, n) => write!(f, "theta({m}, {n})"),
            Command::Chi(m, n, None) => write!(f, "chi({m}, {n})"),
            Command::Chi(m, n, Some(i)) => write!(f, "chi({m}, {n}, {i})"),
            Command::TorTable(m, n, k) => write!(f, "tor_table({m}, {n}, {k})"),
            Command::Resolve(m, k) => write!(f, "resolve({m}, {k})"),
            Command::Mf(m) => write!(f, "mf({m})"),
            Command::Depth(m) => write!(f, "depth({m})"),
            Command::DepthFormula(m, n, k) => write!(f, "depth_formula({m}, {n}, {k})"),
            Command::Decency(m, n) => write!(f, "decency({m}, {n})"),
            Command::RigidityProbe(m, n, k) => write!(f, "rigidity_probe({m}, {n}, {k})"),
            Command::Sing => write!(f, "sing()"),
            Command::Ipd(m) => write!(f, "ipd({m})"),
            Command::FrobTor(m, e, k) => write!(f, "frob_tor({m}, {e}, {k})"),
            Command::VerifyExact(items) => {
                let parts: Vec<String> = items
                    .iter()
                    .map(|it| match it {
                        ChainItem::Module(m) => m.to_string(),
                        ChainItem::Map(rows) => {
                            let mut s = String::new();
                            print_matrix(rows, &mut s);
                            s
                        }
                    })
                    .collect();
                write!(f, "verify_exact({})", parts.join(", "))
            }
        }
    }
}

impl fmt::Display for StatementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatementKind::Ring(d) => {
                let vars: Vec<String> = d
                    .vars
                    .iter()
                    .map(|(v, w)| if *w == 1 { v.clone() } else { format!("{v}:{w}") })
                    .collect();
                write!(f, "ring {} = {}[{}]", d.name, d.field, vars.join(","))?;
                if let Some(eq) = &d.equation {
                    write!(f, " / ({eq})")?;
                }
                write!(f, ";")
            }
            StatementKind::Bind { name, expr } => write!(f, "{name} = {expr};"),
            StatementKind::Command(c) => write!(f, "{c};"),
        }
    }
}

/// Canonical source form; reparsing it reproduces the same tree.
pub fn print_script(script: &Script) -> String {
    let mut out = String::new();
    for st in &script.statements {
        out.push_str(&st.kind.to_string());
        out.push('\n');
    }
    out
}
