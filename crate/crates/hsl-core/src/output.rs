//! Result documents: one per executed command, with a canonical command
//! echo, ring metadata, a kind-tagged payload, and the engine version.
//! JSON rendering is deterministic (field order fixed here), so golden
//! comparisons can be structural.

use serde_json::{json, Value};

use crate::invariants::{
    ChiResult, DecencyReport, DepthFormulaReport, ExactnessReport, SingularLocusReport, TorEntry,
    TorTable, ThetaResult,
};
use crate::resolution::{MatrixFactorization, Period, PeriodicityReport, Resolution};
use crate::ring::RingSpec;

/// Everything a single command reports.
#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    TorTable(TorTable),
    Theta(ThetaResult),
    Chi(ChiResult),
    Depth(usize),
    DepthFormula(DepthFormulaReport),
    Decency(DecencyReport),
    Rigidity(Option<(usize, usize)>),
    Sing(SingularLocusReport),
    Ipd(Option<usize>),
    Resolve {
        ranks: Vec<usize>,
        complete: bool,
        projective_dimension: Option<usize>,
    },
    Mf {
        report: PeriodicityReport,
        mf: MatrixFactorization,
    },
    VerifyExact(ExactnessReport),
    /// A command failed; the error text is data (used by error-path cases).
    Error(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultDocument {
    pub command: String,
    pub ring: RingSpec,
    pub payload: Payload,
}

fn tor_table_value(t: &TorTable) -> Value {
    let entries: Vec<Value> = t
        .entries
        .iter()
        .enumerate()
        .map(|(i, e)| match e {
            TorEntry::Length(l) => json!({"i": i, "length": l}),
            TorEntry::Posdim(d) => json!({"i": i, "posdim": d}),
        })
        .collect();
    json!({
        "kind": "torTable",
        "entries": entries,
        "fliIndex": t.fli_index,
    })
}

fn matrix_value(m: &crate::matrix::PolyMatrix) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows)
        .map(|i| (0..m.cols).map(|j| m.at(i, j).to_string()).collect())
        .collect();
    json!(rows)
}

impl Payload {
    pub fn to_value(&self) -> Value {
        match self {
            Payload::TorTable(t) => tor_table_value(t),
            Payload::Theta(t) => json!({
                "kind": "theta",
                "value": t.value,
                "eUsed": t.e_used,
                "evidence": t.evidence,
            }),
            Payload::Chi(c) => json!({
                "kind": "chi",
                "value": c.value,
                "startIndex": c.start_index,
            }),
            Payload::Depth(d) => json!({"kind": "depth", "value": d}),
            Payload::DepthFormula(r) => json!({
                "kind": "depthFormula",
                "depthM": r.depth_m,
                "depthN": r.depth_n,
                "depthRing": r.depth_ring,
                "depthTensor": r.depth_tensor,
                "window": r.window,
                "holds": r.holds,
            }),
            Payload::Decency(r) => json!({
                "kind": "decency",
                "dimM": r.dim_m,
                "dimN": r.dim_n,
                "dimRing": r.dim_ring,
                "decent": r.decent,
                "theta": r.theta,
                "consistent": r.consistent,
            }),
            Payload::Rigidity(w) => json!({
                "kind": "rigidity",
                "witness": w.map(|(i, j)| json!({"vanishesAt": i, "nonzeroAt": j})),
            }),
            Payload::Sing(s) => json!({
                "kind": "sing",
                "dim": s.dim,
                "isolated": s.isolated,
                "charCaveat": s.char_caveat,
            }),
            Payload::Ipd(d) => json!({"kind": "ipd", "dim": d}),
            Payload::Resolve { ranks, complete, projective_dimension } => json!({
                "kind": "resolve",
                "ranks": ranks,
                "complete": complete,
                "projectiveDimension": projective_dimension,
            }),
            Payload::Mf { report, mf } => json!({
                "kind": "mf",
                "period": match report.period {
                    Period::One => "one",
                    Period::Two => "two",
                    Period::ZeroTail => "zeroTail",
                },
                "periodicFrom": report.periodic_from,
                "size": mf.a.rows,
                "f": mf.f.to_string(),
                "a": matrix_value(&mf.a),
                "b": matrix_value(&mf.b),
            }),
            Payload::VerifyExact(r) => json!({
                "kind": "verifyExact",
                "exact": r.exact,
            }),
            Payload::Error(msg) => json!({"kind": "error", "error": msg}),
        }
    }

    /// Short human-readable rendering.
    pub fn to_text(&self) -> String {
        match self {
            Payload::TorTable(t) => {
                let mut lines = vec![String::from("i   Tor_i")];
                for (i, e) in t.entries.iter().enumerate() {
                    let cell = match e {
                        TorEntry::Length(l) => format!("length {l}"),
                        TorEntry::Posdim(d) => format!("POSDIM({d})"),
                    };
                    lines.push(format!("{i:<3} {cell}"));
                }
                lines.push(match t.fli_index {
                    Some(i) => format!("finite-length onset: {i}"),
                    None => "finite-length onset: undefined".into(),
                });
                lines.join("\n")
            }
            Payload::Theta(t) => format!(
                "theta = {} (e = {}, lengths at 2e+1..2e+4: {:?})",
                t.value, t.e_used, t.evidence
            ),
            Payload::Chi(c) => format!("chi_{} = {}", c.start_index, c.value),
            Payload::Depth(d) => format!("depth = {d}"),
            Payload::DepthFormula(r) => format!(
                "depth {} + {} = {} + {} (ring + tensor): {} [Tor vanishing checked to {}]",
                r.depth_m,
                r.depth_n,
                r.depth_ring,
                r.depth_tensor,
                if r.holds { "holds" } else { "FAILS" },
                r.window
            ),
            Payload::Decency(r) => format!(
                "dim M = {}, dim N = {}, dim ring = {}; decent: {}; theta = {}; consistent: {}",
                fmt_opt(r.dim_m),
                fmt_opt(r.dim_n),
                r.dim_ring,
                r.decent,
                r.theta,
                r.consistent
            ),
            Payload::Rigidity(w) => match w {
                Some((i, j)) => format!("rigidity fails: Tor_{i} = 0 but Tor_{j} != 0"),
                None => "no rigidity failure in the window".into(),
            },
            Payload::Sing(s) => format!(
                "singular locus dim: {}; isolated: {}{}",
                fmt_opt(s.dim),
                s.isolated,
                if s.char_caveat {
                    "; WARNING: characteristic divides deg f, Jacobian criterion unreliable"
                } else {
                    ""
                }
            ),
            Payload::Ipd(d) => match d {
                Some(d) => format!("infinite-pd locus dim: {d}"),
                None => "infinite-pd locus: empty (finite projective dimension)".into(),
            },
            Payload::Resolve { ranks, complete, projective_dimension } => format!(
                "ranks {:?}{}",
                ranks,
                match (complete, projective_dimension) {
                    (true, Some(pd)) => format!(", projective dimension {pd}"),
                    _ => ", window exhausted (infinite projective dimension possible)".into(),
                }
            ),
            Payload::Mf { report, mf } => {
                let per = match report.period {
                    Period::One => "1",
                    Period::Two => "2",
                    Period::ZeroTail => "zero tail",
                };
                format!(
                    "period {per} from index {}; {}x{} factorization of {} verified (A*B = B*A = f*I)\nA = {}\nB = {}",
                    report.periodic_from,
                    mf.a.rows,
                    mf.a.rows,
                    mf.f,
                    matrix_text(&mf.a),
                    matrix_text(&mf.b),
                )
            }
            Payload::VerifyExact(r) => format!(
                "exact per listed spot: [{}]",
                r.exact
                    .iter()
                    .map(|b| if *b { "yes" } else { "NO" })
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            Payload::Error(e) => format!("error: {e}"),
        }
    }
}

fn fmt_opt(o: Option<usize>) -> String {
    match o {
        Some(d) => d.to_string(),
        None => "-".into(),
    }
}

fn matrix_text(m: &crate::matrix::PolyMatrix) -> String {
    let rows: Vec<String> = (0..m.rows)
        .map(|i| {
            let cells: Vec<String> = (0..m.cols).map(|j| m.at(i, j).to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

impl ResultDocument {
    pub fn to_value(&self) -> Value {
        let ring = &self.ring;
        let a = &ring.ambient;
        json!({
            "command": self.command,
            "ring": {
                "field": a.field.to_string(),
                "vars": a.vars,
                "weights": a.weights(),
                "f": ring.f.as_ref().map(|f| f.to_string()),
            },
            "payload": self.payload.to_value(),
            "engineVersion": crate::ENGINE_VERSION,
        })
    }

    pub fn to_text(&self) -> String {
        format!("== {} over {}\n{}", self.command, self.ring, self.payload.to_text())
    }
}

/// Convenience used by the resolve command.
pub fn resolve_payload(res: &Resolution) -> Payload {
    Payload::Resolve {
        ranks: res.ranks(),
        complete: res.complete,
        projective_dimension: res.projective_dimension(),
    }
}
