//! Multivariate polynomials over an exact field, with a canonical text form.

use crate::error::{EngineError, Result};
use crate::field::{FieldSpec, Scalar};
use crate::monomial::{Monomial, OrderKind, TermOrder};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// The ambient polynomial ring: field, named weighted variables, term order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub order: TermOrder,
}

/// Shared handle to a [`PolyRing`].
pub type RingRef = Arc<PolyRing>;

impl PolyRing {
    /// Builds a ring, validating variable names and positive weights.
    pub fn new(field: FieldSpec, vars: Vec<String>, weights: Vec<u64>, kind: OrderKind) -> Result<RingRef> {
        if vars.is_empty() {
            return Err(EngineError::ShapeMismatch("ring needs at least one variable".into()));
        }
        if vars.len() != weights.len() || weights.iter().any(|&w| w == 0) {
            return Err(EngineError::ShapeMismatch(
                "weights must be positive and match the variable count".into(),
            ));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(EngineError::ShapeMismatch(format!("duplicate variable `{v}`")));
            }
        }
        let order = match kind {
            OrderKind::GrevLex => TermOrder::grevlex(weights),
            OrderKind::Lex => TermOrder::lex(weights),
        };
        Ok(Arc::new(PolyRing { field, vars, order }))
    }

    /// Standard-graded ring with the default grevlex order.
    pub fn standard(field: FieldSpec, vars: &[&str]) -> RingRef {
        let n = vars.len();
        PolyRing::new(
            field,
            vars.iter().map(|s| s.to_string()).collect(),
            vec![1; n],
            OrderKind::GrevLex,
        )
        .expect("valid standard ring")
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn weights(&self) -> &[u64] {
        &self.order.weights
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

/// Checks that two ring handles denote the same ring.
pub fn same_ring(a: &RingRef, b: &RingRef) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(EngineError::RingMismatch(format!(
            "{:?}[{}] vs {:?}[{}]",
            a.field,
            a.vars.join(","),
            b.field,
            b.vars.join(",")
        )))
    }
}

/// A single coefficient-monomial pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Scalar,
    pub mon: Monomial,
}

/// A polynomial: terms sorted strictly descending in the ring's order, no zero
/// coefficients. Equal data means equal polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    pub ring: RingRef,
    pub terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &RingRef) -> Polynomial {
        Polynomial::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &RingRef, c: Scalar) -> Polynomial {
        if ring.field.is_zero(&c) {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term { coeff: c, mon: Monomial::one(ring.nvars()) }],
        }
    }

    pub fn var(ring: &RingRef, i: usize) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term {
                coeff: ring.field.one(),
                mon: Monomial::var_pow(ring.nvars(), i, 1),
            }],
        }
    }

    /// Normalizes an arbitrary term list into canonical form.
    pub fn from_terms(ring: &RingRef, mut terms: Vec<Term>) -> Polynomial {
        terms.sort_by(|a, b| ring.order.cmp(&b.mon, &a.mon));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mon == t.mon => {
                    last.coeff = ring.field.add(&last.coeff, &t.coeff);
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !ring.field.is_zero(&t.coeff));
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The leading term under the ring's order.
    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// True when the polynomial is a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mon.is_one()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.checked_ring(other);
        let ring = &self.ring;
        let ord = &ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match ord.cmp(&a.mon, &b.mon) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ring.field.add(&a.coeff, &b.coeff);
                    if !ring.field.is_zero(&c) {
                        out.push(Term { coeff: c, mon: a.mon.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        let f = &self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term { coeff: f.neg(&t.coeff), mon: t.mon.clone() })
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    /// Multiplies by a single term (no renormalization needed: term-multiples
    /// preserve the strict descending order).
    pub fn mul_term(&self, coeff: &Scalar, mon: &Monomial) -> Polynomial {
        let f = &self.ring.field;
        if f.is_zero(coeff) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term { coeff: f.mul(&t.coeff, coeff), mon: t.mon.mul(mon) })
                .collect(),
        }
    }

    pub fn scale(&self, coeff: &Scalar) -> Polynomial {
        self.mul_term(coeff, &Monomial::one(self.ring.nvars()))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.checked_ring(other);
        let mut acc = Vec::with_capacity(self.terms.len() * other.terms.len());
        let f = &self.ring.field;
        for a in &self.terms {
            for b in &other.terms {
                acc.push(Term { coeff: f.mul(&a.coeff, &b.coeff), mon: a.mon.mul(&b.mon) });
            }
        }
        Polynomial::from_terms(&self.ring, acc)
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.lead() {
            None => self.clone(),
            Some(t) => {
                let inv = self.ring.field.inv(&t.coeff).expect("nonzero lead");
                self.scale(&inv)
            }
        }
    }

    /// Weighted degree of the highest term, or None for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        let w = self.ring.weights();
        self.terms.iter().map(|t| t.mon.degree(w)).max()
    }

    /// The common weighted degree of all terms, if the polynomial is
    /// homogeneous (zero counts as homogeneous of any degree).
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let w = self.ring.weights();
        let mut it = self.terms.iter().map(|t| t.mon.degree(w));
        match it.next() {
            None => Some(0),
            Some(d) => {
                if it.all(|e| e == d) {
                    Some(d)
                } else {
                    None
                }
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some() || self.is_zero()
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let f = &self.ring.field;
        let mut terms = Vec::new();
        for t in &self.terms {
            let e = t.mon.exps[i];
            if e == 0 {
                continue;
            }
            let c = f.mul(&t.coeff, &f.from_i64(e as i64));
            if f.is_zero(&c) {
                continue;
            }
            let mut mon = t.mon.clone();
            mon.exps[i] -= 1;
            terms.push(Term { coeff: c, mon });
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Applies the ring endomorphism x_i -> x_i^k, c -> c^k entry-wise.
    /// Over F_p with k a power of p this is the Frobenius twist.
    pub fn power_substitute(&self, k: u32) -> Polynomial {
        let f = &self.ring.field;
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: f.pow(&t.coeff, k as u64), mon: t.mon.pow(k) })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Exact division by `d`; returns None when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        self.checked_ring(d);
        if d.is_zero() {
            return None;
        }
        let ring = self.ring.clone();
        let f = &ring.field;
        let dl = d.lead().unwrap();
        let mut rem = self.clone();
        let mut quo = Vec::new();
        while let Some(rl) = rem.lead() {
            if !dl.mon.divides(&rl.mon) {
                return None;
            }
            let mon = dl.mon.quotient_into(&rl.mon);
            let coeff = f.div(&rl.coeff, &dl.coeff).expect("nonzero lead");
            rem = rem.sub(&d.mul_term(&coeff, &mon));
            quo.push(Term { coeff, mon });
        }
        Some(Polynomial::from_terms(&ring, quo))
    }

    fn checked_ring(&self, other: &Polynomial) {
        same_ring(&self.ring, &other.ring).expect("operands share a ring");
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = &self.ring.field;
        for (k, t) in self.terms.iter().enumerate() {
            let c = field.format(&t.coeff);
            let (sign, mag) = match c.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", c),
            };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != "1" || t.mon.is_one() {
                factors.push(mag);
            }
            for (i, &e) in t.mon.exps.iter().enumerate() {
                if e == 1 {
                    factors.push(self.ring.vars[i].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.ring.vars[i], e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Canonical text form: parser.
// ---------------------------------------------------------------------------

struct PolyParser<'a> {
    ring: &'a RingRef,
    src: &'a [u8],
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, msg: &str) -> EngineError {
        EngineError::ShapeMismatch(format!("polynomial syntax at byte {}: {}", self.pos, msg))
    }

    fn parse_expr(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        if let Some(c) = self.peek() {
            if c == b'-' {
                self.pos += 1;
                negate = true;
            } else if c == b'+' {
                self.pos += 1;
            }
        }
        let mut acc = self.parse_product()?;
        if negate {
            acc = acc.neg();
        }
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    let t = self.parse_product()?;
                    acc = acc.add(&t);
                }
                b'-' => {
                    self.pos += 1;
                    let t = self.parse_product()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_product(&mut self) -> Result<Polynomial> {
        let mut acc = self.parse_power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let t = self.parse_power()?;
                    acc = acc.mul(&t);
                }
                // Juxtaposition: `2x`, `x y`, `3(x+y)`.
                Some(c) if c == b'(' || c.is_ascii_alphabetic() || c == b'_' || c.is_ascii_digit() => {
                    let t = self.parse_power()?;
                    acc = acc.mul(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_power(&mut self) -> Result<Polynomial> {
        let base = self.parse_atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.parse_nat()?;
            let mut acc = Polynomial::one(self.ring);
            for _ in 0..n {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.parse_power()?.neg())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_nat()?;
                // A rational constant `a/b` (integer numerator and denominator).
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.parse_nat()?;
                    let c = self.ring.field.fraction(n as i64, d as i64)?;
                    return Ok(Polynomial::constant(self.ring, c));
                }
                Ok(Polynomial::constant(self.ring, self.ring.field.from_i64(n as i64)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let ident = self.parse_ident();
                match self.ring.var_index(&ident) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(EngineError::UnknownVariable(ident)),
                }
            }
            _ => Err(self.error("expected a term")),
        }
    }

    fn parse_nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("number out of range"))
    }

    fn parse_ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }
}

/// Parses the canonical polynomial text form, e.g. `x*u - y*v` or `x^2 + 3y`.
pub fn parse_poly(ring: &RingRef, src: &str) -> Result<Polynomial> {
    let mut p = PolyParser { ring, src: src.as_bytes(), pos: 0 };
    let out = p.parse_expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring4() -> RingRef {
        PolyRing::standard(FieldSpec::default_prime(), &["x", "y", "u", "v"])
    }

    #[test]
    fn difference_of_squares() {
        let r = ring4();
        let a = parse_poly(&r, "x + y").unwrap();
        let b = parse_poly(&r, "x - y").unwrap();
        assert_eq!(a.mul(&b), parse_poly(&r, "x^2 - y^2").unwrap());
    }

    #[test]
    fn quadric_times_conjugate() {
        let r = ring4();
        let a = parse_poly(&r, "x*u - y*v").unwrap();
        let b = parse_poly(&r, "x*u + y*v").unwrap();
        assert_eq!(a.mul(&b), parse_poly(&r, "x^2*u^2 - y^2*v^2").unwrap());
    }

    #[test]
    fn canonical_display_roundtrip() {
        let r = ring4();
        for src in ["x*u - y*v", "x^2 + 3*x*y - 1", "-x + 2", "0", "1/1"] {
            let p = parse_poly(&r, src).unwrap();
            let shown = p.to_string();
            assert_eq!(parse_poly(&r, &shown).unwrap(), p, "roundtrip of {src} via {shown}");
        }
    }

    #[test]
    fn implicit_multiplication_and_signs() {
        let r = ring4();
        assert_eq!(parse_poly(&r, "2x y").unwrap(), parse_poly(&r, "2*x*y").unwrap());
        assert_eq!(parse_poly(&r, "-(x - y)^2").unwrap(), parse_poly(&r, "-x^2 + 2x*y - y^2").unwrap());
        assert_eq!(parse_poly(&r, "x - -y").unwrap(), parse_poly(&r, "x + y").unwrap());
    }

    #[test]
    fn unknown_variable_is_reported() {
        let r = ring4();
        assert_eq!(parse_poly(&r, "x + t"), Err(EngineError::UnknownVariable("t".into())));
    }

    #[test]
    fn rational_coefficients_parse() {
        let r = PolyRing::standard(FieldSpec::Rationals, &["x", "y"]);
        let p = parse_poly(&r, "1/2x^2 - 2/3").unwrap();
        assert_eq!(p.to_string(), "1/2*x^2 - 2/3");
    }

    #[test]
    fn derivative_respects_characteristic() {
        let r = PolyRing::standard(FieldSpec::prime(2).unwrap(), &["x", "y"]);
        let p = parse_poly(&r, "x^2 + x*y").unwrap();
        // d/dx(x^2) = 2x = 0 in characteristic 2.
        assert_eq!(p.derivative(0), parse_poly(&r, "y").unwrap());
    }

    #[test]
    fn exact_division() {
        let r = ring4();
        let f = parse_poly(&r, "x*u - y*v").unwrap();
        let g = parse_poly(&r, "x + y").unwrap();
        let prod = f.mul(&g);
        assert_eq!(prod.exact_div(&f).unwrap(), g);
        assert_eq!(parse_poly(&r, "x").unwrap().exact_div(&f), None);
    }

    fn arb_poly(r: RingRef) -> impl Strategy<Value = Polynomial> {
        let ring = r.clone();
        prop::collection::vec((prop::collection::vec(0u32..3, 4), -9i64..10), 0..5).prop_map(
            move |terms| {
                let ts = terms
                    .into_iter()
                    .map(|(exps, c)| Term { coeff: ring.field.from_i64(c), mon: Monomial { exps } })
                    .collect();
                Polynomial::from_terms(&ring, ts)
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1024))]

        #[test]
        fn ring_axioms(a in arb_poly(ring4()), b in arb_poly(ring4()), c in arb_poly(ring4())) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.sub(&a), Polynomial::zero(&a.ring));
        }

        #[test]
        fn canonical_form_is_unique(a in arb_poly(ring4())) {
            // Re-normalizing a shuffled copy of the term list gives identical data.
            let mut terms = a.terms.clone();
            terms.reverse();
            let b = Polynomial::from_terms(&a.ring, terms);
            prop_assert_eq!(&a, &b);
            // Strictly descending monomials, no zero coefficients.
            for t in &a.terms {
                prop_assert!(!a.ring.field.is_zero(&t.coeff));
            }
            for w in a.terms.windows(2) {
                prop_assert_eq!(a.ring.order.cmp(&w[0].mon, &w[1].mon), std::cmp::Ordering::Greater);
            }
        }

        #[test]
        fn degree_of_product_adds_for_nonzero(a in arb_poly(ring4()), b in arb_poly(ring4())) {
            // Over a field (domain) the top terms cannot cancel.
            if !a.is_zero() && !b.is_zero() {
                prop_assert_eq!(a.mul(&b).degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
            }
        }

        #[test]
        fn display_parse_roundtrip(a in arb_poly(ring4())) {
            let shown = a.to_string();
            prop_assert_eq!(parse_poly(&a.ring, &shown).unwrap(), a);
        }
    }
}
