//! The regression corpus: small scripts with frozen expected output.
//!
//! Each case is a script plus a golden JSON file (the serialized result
//! documents), both embedded at compile time. Running a case executes the
//! script with default options and compares the produced documents to the
//! golden ones structurally; mismatches are reported as data, never as a
//! panic, so a red case is an observation rather than a crash.

use serde_json::Value;

use crate::script::{parse_script, run_script, RunOptions};

#[derive(Debug, Clone, Copy)]
pub struct CorpusCase {
    pub name: &'static str,
    pub tags: &'static [&'static str],
    pub script: &'static str,
    pub golden: &'static str,
}

macro_rules! corpus {
    ($($name:literal => [$($tag:literal),* $(,)?]),* $(,)?) => {
        &[$(CorpusCase {
            name: $name,
            tags: &[$($tag),*],
            script: include_str!(concat!("../corpus/", $name, ".hsl")),
            golden: include_str!(concat!("../corpus/", $name, ".golden.json")),
        }),*]
    };
}

/// Every registered case, in registry order.
pub fn cases() -> &'static [CorpusCase] {
    corpus![
        "ex2" => ["theta", "tor", "decency"],
        "theta_mixed" => ["theta", "tor", "rigidity"],
        "theta_self" => ["theta"],
        "biadditivity" => ["theta", "dirsum"],
        "nonrigid5" => ["rigidity", "five", "ipd", "sing", "theta", "tor"],
        "theta_chi" => ["theta", "chi"],
        "serre" => ["chi", "serre"],
        "mf_quadric" => ["mf", "resolve"],
        "mf_small" => ["mf"],
        "depth" => ["depth"],
        "depth_formula" => ["depth"],
        "frobenius" => ["frobenius"],
        "exactseq" => ["exact"],
        "ideal_pair" => ["tor", "theta", "rigidity"],
        "resolve_basics" => ["resolve", "tor"],
        "sing_suite" => ["sing"],
    ]
}

#[derive(Debug, Clone)]
pub struct CaseOutcome {
    pub name: String,
    pub passed: bool,
    /// One line per structural difference (or one setup failure).
    pub diffs: Vec<String>,
}

#[derive(Debug, Clone, Default)]
pub struct CorpusSummary {
    pub outcomes: Vec<CaseOutcome>,
}

impl CorpusSummary {
    pub fn passed(&self) -> usize {
        self.outcomes.iter().filter(|o| o.passed).count()
    }
    pub fn failed(&self) -> usize {
        self.outcomes.len() - self.passed()
    }
    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }
}

/// Produces the documents of a case as JSON values (shared by the runner
/// and by golden regeneration).
pub fn case_documents(case: &CorpusCase, max_steps: Option<u64>) -> Result<Vec<Value>, String> {
    let script =
        parse_script(case.script).map_err(|e| format!("script does not parse: {e}"))?;
    let opts = RunOptions { max_steps, ..RunOptions::default() };
    let out = run_script(&script, &opts);
    // A run that stopped early still produced documents, ending with an
    // error document; the golden decides whether that was expected.
    Ok(out.documents.iter().map(|d| d.to_value()).collect())
}

pub fn run_case(case: &CorpusCase, max_steps: Option<u64>) -> CaseOutcome {
    let mut diffs = Vec::new();
    match (case_documents(case, max_steps), serde_json::from_str::<Value>(case.golden)) {
        (Err(e), _) => diffs.push(e),
        (_, Err(e)) => diffs.push(format!("golden is not valid JSON: {e}")),
        (Ok(docs), Ok(golden)) => {
            let got = Value::Array(docs);
            diff_values("$", &got, &golden, &mut diffs);
        }
    }
    CaseOutcome { name: case.name.to_string(), passed: diffs.is_empty(), diffs }
}

/// Runs the (optionally tag-filtered) corpus. A seed shuffles execution
/// order deterministically; results do not depend on order.
pub fn run_corpus(tag: Option<&str>, seed: Option<u64>, max_steps: Option<u64>) -> CorpusSummary {
    let mut selected: Vec<&CorpusCase> = cases()
        .iter()
        .filter(|c| tag.is_none_or(|t| c.tags.contains(&t)))
        .collect();
    if let Some(seed) = seed {
        shuffle(&mut selected, seed);
    }
    CorpusSummary {
        outcomes: selected.iter().map(|c| run_case(c, max_steps)).collect(),
    }
}

fn shuffle<T>(items: &mut [T], seed: u64) {
    let mut state = seed;
    let mut next = move || {
        // splitmix64: tiny, deterministic, plenty for ordering.
        state = state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    };
    for i in (1..items.len()).rev() {
        let j = (next() % (i as u64 + 1)) as usize;
        items.swap(i, j);
    }
}

/// Structural comparison; every difference is one line naming the path.
pub fn diff_values(path: &str, got: &Value, want: &Value, out: &mut Vec<String>) {
    match (got, want) {
        (Value::Object(g), Value::Object(w)) => {
            for (k, wv) in w {
                match g.get(k) {
                    Some(gv) => diff_values(&format!("{path}.{k}"), gv, wv, out),
                    None => out.push(format!("{path}.{k}: missing (expected {wv})")),
                }
            }
            for k in g.keys() {
                if !w.contains_key(k) {
                    out.push(format!("{path}.{k}: unexpected key"));
                }
            }
        }
        (Value::Array(g), Value::Array(w)) => {
            if g.len() != w.len() {
                out.push(format!("{path}: length {} != expected {}", g.len(), w.len()));
            }
            for (i, (gv, wv)) in g.iter().zip(w.iter()).enumerate() {
                diff_values(&format!("{path}[{i}]"), gv, wv, out);
            }
        }
        (g, w) => {
            if g != w {
                out.push(format!("{path}: got {g}, expected {w}"));
            }
        }
    }
}

/// Regenerates every golden file on disk (source tree paths). Returns the
/// written paths.
pub fn bless(max_steps: Option<u64>) -> std::io::Result<Vec<String>> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");
    let mut written = Vec::new();
    for case in cases() {
        let docs = case_documents(case, max_steps)
            .map_err(|e| std::io::Error::other(format!("{}: {e}", case.name)))?;
        let path = format!("{dir}/{}.golden.json", case.name);
        let mut text = serde_json::to_string_pretty(&Value::Array(docs))
            .expect("values serialize");
        text.push('\n');
        std::fs::write(&path, text)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_wellformed() {
        let cs = cases();
        assert!(cs.len() >= 15, "corpus covers the command surface");
        for c in cs {
            assert!(!c.tags.is_empty(), "{} has tags", c.name);
            assert!(
                parse_script(c.script).is_ok(),
                "{} parses: {:?}",
                c.name,
                parse_script(c.script).err()
            );
        }
    }

    #[test]
    fn unknown_tag_selects_nothing() {
        let summary = run_corpus(Some("no-such-tag"), None, None);
        assert!(summary.outcomes.is_empty());
        assert!(summary.all_passed());
    }

    #[test]
    fn shuffle_is_deterministic() {
        let mut a: Vec<usize> = (0..16).collect();
        let mut b: Vec<usize> = (0..16).collect();
        shuffle(&mut a, 42);
        shuffle(&mut b, 42);
        assert_eq!(a, b);
        let mut c: Vec<usize> = (0..16).collect();
        shuffle(&mut c, 43);
        assert_ne!(a, c, "different seeds give different orders");
    }

    #[test]
    fn diffs_name_paths() {
        let got = serde_json::json!({"a": [1, 2], "b": {"c": 3}});
        let want = serde_json::json!({"a": [1, 5], "b": {"c": 3, "d": 4}});
        let mut out = Vec::new();
        diff_values("$", &got, &want, &mut out);
        assert_eq!(out.len(), 2);
        assert!(out.iter().any(|d| d.starts_with("$.a[1]:")), "{out:?}");
        assert!(out.iter().any(|d| d.contains("$.b.d")), "{out:?}");
    }
}
