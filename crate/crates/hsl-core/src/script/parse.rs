//! Recursive-descent parser. Polynomial arguments are sliced verbatim from
//! the source (so printing reproduces them exactly) but are still parsed
//! against the declared ring right away: malformed polynomials are syntax
//! errors with a position, not runtime surprises.

use std::collections::HashSet;

use super::lex::{tokenize, SpannedTok, Tok};
use super::{
    ChainItem, Command, ModuleExpr, RingDecl, Script, ScriptError, Span, Statement, StatementKind,
};
use crate::field::FieldSpec;
use crate::monomial::OrderKind;
use crate::poly::{parse_poly, PolyRing, RingRef};
use crate::ring::RingSpec;

const COMMANDS: &[&str] = &[
    "theta",
    "chi",
    "tor_table",
    "resolve",
    "mf",
    "depth",
    "depth_formula",
    "decency",
    "rigidity_probe",
    "sing",
    "ipd",
    "frob_tor",
    "verify_exact",
];

const KEYWORDS: &[&str] = &["ring", "ideal", "coker", "dirsum", "free"];

fn is_reserved(name: &str) -> bool {
    COMMANDS.contains(&name) || KEYWORDS.contains(&name)
}

struct Parser<'s> {
    src: &'s str,
    toks: Vec<SpannedTok>,
    pos: usize,
    /// Module names bound so far (cleared by each ring declaration).
    bound: HashSet<String>,
    /// The statically declared ring, used to validate polynomial sources.
    ring: Option<RingRef>,
}

pub fn parse_script(src: &str) -> Result<Script, ScriptError> {
    let toks = tokenize(src)?;
    let mut p = Parser { src, toks, pos: 0, bound: HashSet::new(), ring: None };
    let mut statements = Vec::new();
    while p.pos < p.toks.len() {
        statements.push(p.statement()?);
    }
    Ok(Script { statements })
}

impl<'s> Parser<'s> {
    fn here(&self) -> Span {
        if self.pos < self.toks.len() {
            self.toks[self.pos].span
        } else {
            self.toks
                .last()
                .map(|t| Span { line: t.span.line, col: t.span.col + 1 })
                .unwrap_or_default()
        }
    }

    fn syntax<T>(&self, span: Span, message: impl Into<String>) -> Result<T, ScriptError> {
        Err(ScriptError::Syntax { span, message: message.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn next(&mut self) -> Option<SpannedTok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<SpannedTok, ScriptError> {
        match self.next() {
            Some(t) if t.tok == want => Ok(t),
            Some(t) => self.syntax(
                t.span,
                format!("expected {}, found {}", want.describe(), t.tok.describe()),
            ),
            None => self.syntax(
                self.here(),
                format!("unexpected end of input, expected {}", want.describe()),
            ),
        }
    }

    fn expect_ident(&mut self) -> Result<(String, Span), ScriptError> {
        match self.next() {
            Some(SpannedTok { tok: Tok::Ident(s), span, .. }) => Ok((s, span)),
            Some(t) => self.syntax(t.span, format!("expected a name, found {}", t.tok.describe())),
            None => self.syntax(self.here(), "unexpected end of input, expected a name"),
        }
    }

    fn expect_nat(&mut self) -> Result<(u64, Span), ScriptError> {
        match self.next() {
            Some(SpannedTok { tok: Tok::Nat(n), span, .. }) => Ok((n, span)),
            Some(t) => {
                self.syntax(t.span, format!("expected a number, found {}", t.tok.describe()))
            }
            None => self.syntax(self.here(), "unexpected end of input, expected a number"),
        }
    }

    fn active_ring(&self, span: Span) -> Result<RingRef, ScriptError> {
        self.ring.clone().map_or_else(
            || {
                Err(ScriptError::Syntax {
                    span,
                    message: "no ring has been declared yet".into(),
                })
            },
            Ok,
        )
    }

    // -- polynomial sources -------------------------------------------------

    /// Slices one polynomial verbatim: everything up to the next `,`, `)`,
    /// `]`, or `;` at bracket depth zero. The slice is validated against
    /// the declared ring immediately.
    fn poly_source(&mut self) -> Result<String, ScriptError> {
        let span = self.here();
        let start_byte = match self.toks.get(self.pos) {
            Some(t) => t.start,
            None => return self.syntax(span, "unexpected end of input, expected a polynomial"),
        };
        let mut depth = 0usize;
        let mut end_byte = start_byte;
        while let Some(t) = self.toks.get(self.pos) {
            match &t.tok {
                Tok::Comma | Tok::Semi if depth == 0 => break,
                Tok::RParen | Tok::RBracket if depth == 0 => break,
                Tok::LParen | Tok::LBracket => depth += 1,
                Tok::RParen | Tok::RBracket => depth -= 1,
                _ => {}
            }
            end_byte = t.end;
            self.pos += 1;
        }
        if end_byte == start_byte {
            return self.syntax(span, "expected a polynomial");
        }
        let slice = self.src[start_byte..end_byte].to_string();
        let ring = self.active_ring(span)?;
        parse_poly(&ring, &slice)
            .map_err(|e| ScriptError::Syntax { span, message: e.to_string() })?;
        Ok(slice)
    }

    fn poly_list(&mut self) -> Result<Vec<String>, ScriptError> {
        let mut out = vec![self.poly_source()?];
        while self.peek() == Some(&Tok::Comma) {
            self.next();
            out.push(self.poly_source()?);
        }
        Ok(out)
    }

    fn matrix(&mut self) -> Result<Vec<Vec<String>>, ScriptError> {
        let open = self.expect(Tok::LBracket)?;
        let mut rows = Vec::new();
        loop {
            self.expect(Tok::LBracket)?;
            rows.push(self.poly_list()?);
            self.expect(Tok::RBracket)?;
            match self.peek() {
                Some(Tok::Comma) => {
                    self.next();
                }
                Some(Tok::RBracket) => {
                    self.next();
                    break;
                }
                _ => {
                    let span = self.here();
                    return self.syntax(span, "expected `,` or `]` after a matrix row");
                }
            }
        }
        let width = rows[0].len();
        if rows.iter().any(|r| r.len() != width) {
            return self.syntax(open.span, "matrix rows have unequal lengths");
        }
        Ok(rows)
    }

    // -- module expressions -------------------------------------------------

    fn module_expr(&mut self) -> Result<ModuleExpr, ScriptError> {
        let span = self.here();
        match self.peek() {
            Some(Tok::Ident(name)) => match name.as_str() {
                "ideal" => {
                    self.next();
                    self.expect(Tok::LParen)?;
                    let polys = self.poly_list()?;
                    self.expect(Tok::RParen)?;
                    Ok(ModuleExpr::Ideal(polys))
                }
                "coker" => {
                    self.next();
                    Ok(ModuleExpr::Coker(self.matrix()?))
                }
                "dirsum" => {
                    self.next();
                    self.expect(Tok::LParen)?;
                    let mut parts = vec![self.module_expr()?];
                    while self.peek() == Some(&Tok::Comma) {
                        self.next();
                        parts.push(self.module_expr()?);
                    }
                    self.expect(Tok::RParen)?;
                    if parts.len() < 2 {
                        return self.syntax(span, "dirsum needs at least two summands");
                    }
                    Ok(ModuleExpr::Dirsum(parts))
                }
                "free" => {
                    self.next();
                    self.expect(Tok::LParen)?;
                    let (n, nspan) = self.expect_nat()?;
                    self.expect(Tok::RParen)?;
                    if n == 0 {
                        return self.syntax(nspan, "free module rank must be positive");
                    }
                    Ok(ModuleExpr::Free(n))
                }
                other if is_reserved(other) => {
                    self.syntax(span, format!("`{other}` cannot be used as a module here"))
                }
                _ => {
                    let (name, span) = self.expect_ident()?;
                    if !self.bound.contains(&name) {
                        return Err(ScriptError::Unbound { span, name });
                    }
                    Ok(ModuleExpr::Name(name))
                }
            },
            _ => self.syntax(span, "expected a module expression"),
        }
    }

    // -- statements ---------------------------------------------------------

    fn statement(&mut self) -> Result<Statement, ScriptError> {
        let span = self.here();
        let Some(Tok::Ident(head)) = self.peek() else {
            let found = self
                .peek()
                .map_or_else(|| "end of input".into(), |t| t.describe());
            return self.syntax(span, format!("expected a statement, found {found}"));
        };
        let head = head.clone();
        if head == "ring" {
            return self.ring_decl(span);
        }
        // `NAME = ...` binds a module; `name(...)` runs a command.
        if matches!(self.toks.get(self.pos + 1).map(|t| &t.tok), Some(Tok::Eq)) {
            self.active_ring(span)?;
            let (name, nspan) = self.expect_ident()?;
            if is_reserved(&name) {
                return self.syntax(nspan, format!("`{name}` is reserved"));
            }
            self.expect(Tok::Eq)?;
            let expr = self.module_expr()?;
            self.expect(Tok::Semi)?;
            self.bound.insert(name.clone());
            return Ok(Statement { kind: StatementKind::Bind { name, expr }, span });
        }
        if COMMANDS.contains(&head.as_str()) {
            self.active_ring(span)?;
            let cmd = self.command(&head)?;
            self.expect(Tok::Semi)?;
            return Ok(Statement { kind: StatementKind::Command(cmd), span });
        }
        self.syntax(span, format!("unknown command `{head}`"))
    }

    fn ring_decl(&mut self, span: Span) -> Result<Statement, ScriptError> {
        self.next(); // `ring`
        let (name, nspan) = self.expect_ident()?;
        if is_reserved(&name) {
            return self.syntax(nspan, format!("`{name}` is reserved"));
        }
        self.expect(Tok::Eq)?;
        let (field_name, fspan) = self.expect_ident()?;
        let field = match field_name.as_str() {
            "Q" => FieldSpec::Rationals,
            "F" => {
                self.expect(Tok::LParen)?;
                let (p, pspan) = self.expect_nat()?;
                self.expect(Tok::RParen)?;
                FieldSpec::prime(p)
                    .map_err(|e| ScriptError::Syntax { span: pspan, message: e.to_string() })?
            }
            other => {
                return self.syntax(
                    fspan,
                    format!("expected a field (`Q` or `F(p)`), found `{other}`"),
                )
            }
        };
        self.expect(Tok::LBracket)?;
        let mut vars: Vec<(String, u64)> = Vec::new();
        loop {
            let (v, vspan) = self.expect_ident()?;
            if vars.iter().any(|(w, _)| *w == v) {
                return self.syntax(vspan, format!("variable `{v}` declared twice"));
            }
            let weight = if self.peek() == Some(&Tok::Colon) {
                self.next();
                let (w, wspan) = self.expect_nat()?;
                if w == 0 {
                    return self.syntax(wspan, "weights must be positive");
                }
                w
            } else {
                1
            };
            vars.push((v, weight));
            match self.peek() {
                Some(Tok::Comma) => {
                    self.next();
                }
                _ => break,
            }
        }
        self.expect(Tok::RBracket)?;
        let names: Vec<String> = vars.iter().map(|(v, _)| v.clone()).collect();
        let weights: Vec<u64> = vars.iter().map(|(_, w)| *w).collect();
        let ring = PolyRing::new(field.clone(), names, weights, OrderKind::GrevLex)
            .map_err(|e| ScriptError::Syntax { span, message: e.to_string() })?;
        let equation = if self.peek() == Some(&Tok::Slash) {
            self.next();
            self.expect(Tok::LParen)?;
            let eq_span = self.here();
            self.ring = Some(ring.clone());
            let src = self.poly_source()?;
            self.expect(Tok::RParen)?;
            // The equation must define a hypersurface; check it statically.
            let f = parse_poly(&ring, &src)
                .map_err(|e| ScriptError::Syntax { span: eq_span, message: e.to_string() })?;
            RingSpec::hypersurface(ring.clone(), f)
                .map_err(|e| ScriptError::Syntax { span: eq_span, message: e.to_string() })?;
            Some(src)
        } else {
            None
        };
        self.expect(Tok::Semi)?;
        self.ring = Some(ring);
        self.bound.clear();
        Ok(Statement {
            kind: StatementKind::Ring(RingDecl { name, field, vars, equation }),
            span,
        })
    }

    fn command(&mut self, name: &str) -> Result<Command, ScriptError> {
        self.next(); // the command name
        self.expect(Tok::LParen)?;
        let cmd = match name {
            "sing" => Command::Sing,
            "theta" | "decency" | "chi" => {
                let m = self.module_expr()?;
                self.expect(Tok::Comma)?;
                let n = self.module_expr()?;
                match name {
                    "theta" => Command::Theta(m, n),
                    "decency" => Command::Decency(m, n),
                    _ => {
                        let start = if self.peek() == Some(&Tok::Comma) {
                            self.next();
                            Some(self.expect_nat()?.0)
                        } else {
                            None
                        };
                        Command::Chi(m, n, start)
                    }
                }
            }
            "tor_table" | "depth_formula" | "rigidity_probe" => {
                let m = self.module_expr()?;
                self.expect(Tok::Comma)?;
                let n = self.module_expr()?;
                self.expect(Tok::Comma)?;
                let (k, _) = self.expect_nat()?;
                match name {
                    "tor_table" => Command::TorTable(m, n, k),
                    "depth_formula" => Command::DepthFormula(m, n, k),
                    _ => Command::RigidityProbe(m, n, k),
                }
            }
            "resolve" => {
                let m = self.module_expr()?;
                self.expect(Tok::Comma)?;
                let (k, _) = self.expect_nat()?;
                Command::Resolve(m, k)
            }
            "mf" => Command::Mf(self.module_expr()?),
            "depth" => Command::Depth(self.module_expr()?),
            "ipd" => Command::Ipd(self.module_expr()?),
            "frob_tor" => {
                let m = self.module_expr()?;
                self.expect(Tok::Comma)?;
                let (e, _) = self.expect_nat()?;
                self.expect(Tok::Comma)?;
                let (k, _) = self.expect_nat()?;
                Command::FrobTor(m, e, k)
            }
            "verify_exact" => {
                let span = self.here();
                let mut items = Vec::new();
                loop {
                    if self.peek() == Some(&Tok::LBracket) {
                        items.push(ChainItem::Map(self.matrix()?));
                    } else {
                        items.push(ChainItem::Module(self.module_expr()?));
                    }
                    match self.peek() {
                        Some(Tok::Comma) => {
                            self.next();
                        }
                        _ => break,
                    }
                }
                let alternates = items.len() % 2 == 1
                    && items.iter().enumerate().all(|(i, it)| match it {
                        ChainItem::Module(_) => i % 2 == 0,
                        ChainItem::Map(_) => i % 2 == 1,
                    });
                if !alternates {
                    return self.syntax(
                        span,
                        "verify_exact expects modules alternating with matrices, \
                         starting and ending with a module",
                    );
                }
                Command::VerifyExact(items)
            }
            other => return self.syntax(self.here(), format!("unknown command `{other}`")),
        };
        self.expect(Tok::RParen)?;
        Ok(cmd)
    }
}
