//! Monomials in a fixed variable set, and term orders on them.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Exponent vector of a monomial; the variable set is fixed by the ambient ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial { exps: vec![0; nvars] }
    }

    /// x_i^e in an `nvars`-variable ring.
    pub fn var_pow(nvars: usize, i: usize, e: u32) -> Monomial {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Weighted total degree with respect to the given positive weights.
    pub fn degree(&self, weights: &[u64]) -> u64 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// Componentwise power, used by Frobenius twists.
    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|e| e * k).collect(),
        }
    }

    /// Indices of variables that occur in this monomial.
    pub fn support(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Kind of global term order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    /// Weighted degree first, reverse-lexicographic tie-break (the default).
    GrevLex,
    /// Pure lexicographic.
    Lex,
}

/// A global monomial order. Weights double as the grading of the ring, so the
/// degree used by `GrevLex` is the weighted degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermOrder {
    pub kind: OrderKind,
    pub weights: Vec<u64>,
}

impl TermOrder {
    pub fn grevlex(weights: Vec<u64>) -> TermOrder {
        TermOrder { kind: OrderKind::GrevLex, weights }
    }

    pub fn lex(weights: Vec<u64>) -> TermOrder {
        TermOrder { kind: OrderKind::Lex, weights }
    }

    pub fn degree(&self, m: &Monomial) -> u64 {
        m.degree(&self.weights)
    }

    /// Compares monomials; `Greater` means `a` is the larger monomial.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::GrevLex => {
                match self.degree(a).cmp(&self.degree(b)) {
                    Ordering::Equal => {}
                    o => return o,
                }
                // Reverse lex: scanning from the last variable, the first
                // difference decides, with the smaller exponent winning.
                for i in (0..a.exps.len()).rev() {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => {}
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Lex => {
                for i in 0..a.exps.len() {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
        }
    }
}
