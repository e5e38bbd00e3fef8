//! Executes a parsed script: builds rings, evaluates module expressions,
//! and turns each command into one result document. A failing command
//! produces an error document and stops the run; everything before it
//! stands.

use std::collections::HashMap;

use super::{ChainItem, Command, ModuleExpr, RingDecl, Script, ScriptError, StatementKind};
use crate::error::EngineError;
use crate::field::FieldSpec;
use crate::groebner::GbOptions;
use crate::invariants::InvariantEngine;
use crate::matrix::PolyMatrix;
use crate::modules::{BaseRing, ModulePresentation, PresComplex};
use crate::monomial::OrderKind;
use crate::output::{resolve_payload, Payload, ResultDocument};
use crate::poly::{parse_poly, Polynomial, PolyRing};
use crate::resolution::{default_max_steps, detect_periodicity, extract_matrix_factorization};
use crate::ring::RingSpec;

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Replaces the coefficient field of every ring declaration.
    pub field_override: Option<FieldSpec>,
    /// Replaces the term order used for all Groebner computation.
    pub order_override: Option<OrderKind>,
    /// Pair-step budget for the Groebner engine.
    pub max_steps: Option<u64>,
}

#[derive(Debug)]
pub struct RunOutcome {
    pub documents: Vec<ResultDocument>,
    /// Set when the run stopped early; documents up to that point stand.
    pub error: Option<ScriptError>,
}

struct Session {
    engine: InvariantEngine,
    ring: Option<RingSpec>,
    bindings: HashMap<String, ModulePresentation>,
}

pub fn run_script(script: &Script, opts: &RunOptions) -> RunOutcome {
    let gb = GbOptions {
        max_steps: opts.max_steps.unwrap_or_else(|| GbOptions::default().max_steps),
    };
    let mut session = Session {
        engine: InvariantEngine::new(gb),
        ring: None,
        bindings: HashMap::new(),
    };
    let mut documents = Vec::new();
    for st in &script.statements {
        match &st.kind {
            StatementKind::Ring(decl) => match build_ring(decl, opts) {
                Ok(rs) => {
                    session.ring = Some(rs);
                    session.bindings.clear();
                }
                Err(e) => {
                    return RunOutcome {
                        documents,
                        error: Some(ScriptError::Engine { span: st.span, source: e }),
                    }
                }
            },
            StatementKind::Bind { name, expr } => {
                let rs = session.ring.clone().expect("parser enforces a declared ring");
                match session.eval_module(expr, &rs) {
                    Ok(m) => {
                        session.bindings.insert(name.clone(), m);
                    }
                    Err(e) => {
                        return RunOutcome {
                            documents,
                            error: Some(ScriptError::Engine { span: st.span, source: e }),
                        }
                    }
                }
            }
            StatementKind::Command(cmd) => {
                let rs = session.ring.clone().expect("parser enforces a declared ring");
                match session.run_command(cmd, &rs) {
                    Ok(payload) => documents.push(ResultDocument {
                        command: cmd.to_string(),
                        ring: rs,
                        payload,
                    }),
                    Err(e) => {
                        documents.push(ResultDocument {
                            command: cmd.to_string(),
                            ring: rs,
                            payload: Payload::Error(e.to_string()),
                        });
                        return RunOutcome {
                            documents,
                            error: Some(ScriptError::Engine { span: st.span, source: e }),
                        };
                    }
                }
            }
        }
    }
    RunOutcome { documents, error: None }
}

fn build_ring(decl: &RingDecl, opts: &RunOptions) -> Result<RingSpec, EngineError> {
    let field = opts.field_override.clone().unwrap_or_else(|| decl.field.clone());
    let order = opts.order_override.unwrap_or(OrderKind::GrevLex);
    let names: Vec<String> = decl.vars.iter().map(|(v, _)| v.clone()).collect();
    let weights: Vec<u64> = decl.vars.iter().map(|(_, w)| *w).collect();
    let ring = PolyRing::new(field, names, weights, order)?;
    match &decl.equation {
        None => Ok(RingSpec::polynomial(ring)),
        Some(src) => {
            let f = parse_poly(&ring, src)?;
            RingSpec::hypersurface(ring, f)
        }
    }
}

impl Session {
    fn base(rs: &RingSpec) -> BaseRing {
        if rs.is_quotient() {
            BaseRing::Quotient
        } else {
            BaseRing::Ambient
        }
    }

    fn eval_module(
        &self,
        expr: &ModuleExpr,
        rs: &RingSpec,
    ) -> Result<ModulePresentation, EngineError> {
        let base = Session::base(rs);
        match expr {
            ModuleExpr::Name(n) => self
                .bindings
                .get(n)
                .cloned()
                .ok_or_else(|| EngineError::ShapeMismatch(format!("`{n}` is not bound"))),
            ModuleExpr::Ideal(srcs) => {
                let polys = srcs
                    .iter()
                    .map(|s| parse_poly(&rs.ambient, s))
                    .collect::<Result<Vec<_>, _>>()?;
                ModulePresentation::cyclic(rs, base, &polys)
            }
            ModuleExpr::Coker(rows) => {
                ModulePresentation::coker(rs, base, self.eval_matrix(rows, rs)?)
            }
            ModuleExpr::Free(n) => Ok(ModulePresentation::free(rs, base, *n as usize)),
            ModuleExpr::Dirsum(parts) => {
                let mods = parts
                    .iter()
                    .map(|p| self.eval_module(p, rs))
                    .collect::<Result<Vec<_>, _>>()?;
                let mut out = mods[0].clone();
                for m in &mods[1..] {
                    out = out.dirsum(m)?;
                }
                Ok(out)
            }
        }
    }

    fn eval_matrix(&self, rows: &[Vec<String>], rs: &RingSpec) -> Result<PolyMatrix, EngineError> {
        let entries: Vec<Vec<Polynomial>> = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_poly(&rs.ambient, s)).collect())
            .collect::<Result<_, _>>()?;
        let mut m = PolyMatrix::from_rows(&rs.ambient, entries)?;
        m.reinfer_col_degs()?;
        Ok(m)
    }

    fn run_command(&mut self, cmd: &Command, rs: &RingSpec) -> Result<Payload, EngineError> {
        match cmd {
            Command::Theta(m, n) => {
                let m = self.eval_module(m, rs)?;
                let n = self.eval_module(n, rs)?;
                Ok(Payload::Theta(self.engine.theta(&m, &n)?))
            }
            Command::Chi(m, n, start) => {
                let m = self.eval_module(m, rs)?;
                let n = self.eval_module(n, rs)?;
                let start = start.unwrap_or(0) as usize;
                Ok(Payload::Chi(self.engine.chi(&m, &n, start)?))
            }
            Command::TorTable(m, n, up_to) => {
                let m = self.eval_module(m, rs)?;
                let n = self.eval_module(n, rs)?;
                Ok(Payload::TorTable(self.engine.tor_table(&m, &n, *up_to as usize)?))
            }
            Command::Resolve(m, steps) => {
                let m = self.eval_module(m, rs)?;
                let res = self.engine.resolution(&m, *steps as usize)?;
                Ok(resolve_payload(&res))
            }
            Command::Mf(m) => {
                let m = self.eval_module(m, rs)?;
                let res = self.engine.resolution(&m, default_max_steps(rs))?;
                let report = detect_periodicity(&res)?;
                let mf = extract_matrix_factorization(&res, &report)?;
                Ok(Payload::Mf { report, mf })
            }
            Command::Depth(m) => {
                let m = self.eval_module(m, rs)?;
                Ok(Payload::Depth(self.engine.depth(&m)?))
            }
            Command::DepthFormula(m, n, up_to) => {
                let m = self.eval_module(m, rs)?;
                let n = self.eval_module(n, rs)?;
                let table = self.engine.tor_table(&m, &n, *up_to as usize)?;
                Ok(Payload::DepthFormula(self.engine.check_depth_formula(&m, &n, &table)?))
            }
            Command::Decency(m, n) => {
                let m = self.eval_module(m, rs)?;
                let n = self.eval_module(n, rs)?;
                Ok(Payload::Decency(self.engine.decency_check(&m, &n)?))
            }
            Command::RigidityProbe(m, n, up_to) => {
                let m = self.eval_module(m, rs)?;
                let n = self.eval_module(n, rs)?;
                let w = self.engine.rigidity_probe(&m, &n, *up_to as usize)?;
                Ok(Payload::Rigidity(w.map(|w| (w.vanishes_at, w.nonzero_at))))
            }
            Command::Sing => Ok(Payload::Sing(self.engine.singular_locus(rs)?)),
            Command::Ipd(m) => {
                let m = self.eval_module(m, rs)?;
                Ok(Payload::Ipd(self.engine.ipd_locus_dim(&m)?))
            }
            Command::FrobTor(m, e, up_to) => {
                let m = self.eval_module(m, rs)?;
                let e = u32::try_from(*e).map_err(|_| {
                    EngineError::WrongCharacteristic(format!("Frobenius power {e} is too large"))
                })?;
                Ok(Payload::TorTable(self.engine.frobenius_tor_table(
                    &m,
                    e,
                    *up_to as usize,
                )?))
            }
            Command::VerifyExact(items) => {
                // Listed left-to-right from the homological top; the
                // engine's complex is indexed from the right end.
                let mut listed_mods = Vec::new();
                let mut listed_maps = Vec::new();
                for it in items {
                    match it {
                        ChainItem::Module(m) => listed_mods.push(self.eval_module(m, rs)?),
                        ChainItem::Map(rows) => listed_maps.push(self.eval_matrix(rows, rs)?),
                    }
                }
                listed_mods.reverse();
                listed_maps.reverse();
                let complex = PresComplex { modules: listed_mods, maps: listed_maps };
                let mut report = self.engine.verify_exact(&complex)?;
                report.exact.reverse();
                Ok(Payload::VerifyExact(report))
            }
        }
    }
}

/// Parses `Q` or `F(p)` (CLI field override).
pub fn parse_field_name(s: &str) -> Result<FieldSpec, EngineError> {
    let s = s.trim();
    if s == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(body) = s.strip_prefix("F(").and_then(|t| t.strip_suffix(')')) {
        let p: u64 = body
            .trim()
            .parse()
            .map_err(|_| EngineError::ShapeMismatch(format!("bad field `{s}`")))?;
        return FieldSpec::prime(p);
    }
    Err(EngineError::ShapeMismatch(format!(
        "bad field `{s}` (expected `Q` or `F(p)`)"
    )))
}

/// Parses `grevlex` or `lex` (CLI order override).
pub fn parse_order_name(s: &str) -> Result<OrderKind, EngineError> {
    match s.trim() {
        "grevlex" => Ok(OrderKind::GrevLex),
        "lex" => Ok(OrderKind::Lex),
        other => Err(EngineError::ShapeMismatch(format!(
            "bad order `{other}` (expected `grevlex` or `lex`)"
        ))),
    }
}
