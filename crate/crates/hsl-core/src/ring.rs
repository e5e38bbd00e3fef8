//! The working ring: an ambient polynomial ring, optionally modulo one
//! homogeneous hypersurface equation `f`.
//!
//! All heavy computation happens in the ambient ring; residues modulo `f`
//! are kept in normal form by division by `f` (a one-element basis of the
//! principal ideal it generates).

use crate::error::{EngineError, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{same_ring, Polynomial, RingRef};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    pub ambient: RingRef,
    pub f: Option<Polynomial>,
}

impl RingSpec {
    /// The ambient polynomial ring itself.
    pub fn polynomial(ambient: RingRef) -> RingSpec {
        RingSpec { ambient, f: None }
    }

    /// Quotient by one homogeneous equation of positive degree.
    pub fn hypersurface(ambient: RingRef, f: Polynomial) -> Result<RingSpec> {
        same_ring(&ambient, &f.ring)?;
        if f.is_zero() {
            return Err(EngineError::ShapeMismatch("hypersurface equation is zero".into()));
        }
        if f.is_unit() {
            return Err(EngineError::UnitIdeal);
        }
        match f.homogeneous_degree() {
            Some(d) if d > 0 => Ok(RingSpec { ambient, f: Some(f) }),
            _ => Err(EngineError::InhomogeneousInput(format!(
                "hypersurface equation must be homogeneous of positive degree: {f}"
            ))),
        }
    }

    pub fn is_quotient(&self) -> bool {
        self.f.is_some()
    }

    /// Krull dimension of the ring.
    pub fn dim(&self) -> usize {
        self.ambient.nvars() - usize::from(self.f.is_some())
    }

    /// Division remainder modulo `f` (identity when there is no `f`).
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        match &self.f {
            None => p.clone(),
            Some(f) => {
                let lead = f.lead().expect("f nonzero");
                let field = &self.ambient.field;
                let mut rem = Polynomial::zero(&self.ambient);
                let mut work = p.clone();
                'outer: while let Some(_) = work.lead() {
                    // Find the highest term divisible by lt(f).
                    for (idx, t) in work.terms.iter().enumerate() {
                        if lead.mon.divides(&t.mon) {
                            let mon = lead.mon.quotient_into(&t.mon);
                            let coeff = field.div(&t.coeff, &lead.coeff).expect("nonzero lead");
                            work = work.sub(&f.mul_term(&coeff, &mon));
                            continue 'outer;
                        } else if idx + 1 == work.terms.len() {
                            break;
                        }
                    }
                    // No term reducible: all of `work` joins the remainder.
                    rem = rem.add(&work);
                    break;
                }
                rem
            }
        }
    }

    pub fn reduce_matrix(&self, m: &PolyMatrix) -> PolyMatrix {
        match &self.f {
            None => m.clone(),
            Some(_) => {
                let mut out = m.map_entries(|e| self.reduce(e));
                out.row_degs = m.row_degs.clone();
                out.col_degs = m.col_degs.clone();
                out
            }
        }
    }

    pub fn is_zero_mod(&self, p: &Polynomial) -> bool {
        self.reduce(p).is_zero()
    }

    pub fn characteristic(&self) -> u64 {
        self.ambient.field.characteristic()
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.ambient.field, self.ambient.vars.join(","))?;
        if let Some(eq) = &self.f {
            write!(f, "/({eq})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::{parse_poly, PolyRing};

    fn quadric() -> RingSpec {
        let r = PolyRing::standard(FieldSpec::default_prime(), &["x", "y", "u", "v"]);
        let f = parse_poly(&r, "x*u - y*v").unwrap();
        RingSpec::hypersurface(r, f).unwrap()
    }

    #[test]
    fn reduction_mod_quadric() {
        let rs = quadric();
        let r = &rs.ambient;
        // xu reduces to yv (grevlex lead of xu - yv is xu).
        let p = parse_poly(r, "x*u").unwrap();
        assert_eq!(rs.reduce(&p), parse_poly(r, "y*v").unwrap());
        // Multiples of f vanish.
        let f = rs.f.clone().unwrap();
        let g = parse_poly(r, "x^2 - u*v").unwrap();
        assert!(rs.is_zero_mod(&f.mul(&g)));
        // Reduced elements are fixed points.
        let q = parse_poly(r, "y*v + x^2").unwrap();
        assert_eq!(rs.reduce(&q), q);
    }

    #[test]
    fn reduction_is_linear_and_multiplicative_mod_f() {
        let rs = quadric();
        let r = &rs.ambient;
        let a = parse_poly(r, "x^2*u - y").unwrap();
        let b = parse_poly(r, "u*v + x*u").unwrap();
        assert_eq!(rs.reduce(&a.add(&b)), rs.reduce(&a).add(&rs.reduce(&b)));
        let prod_then = rs.reduce(&a.mul(&b));
        let then_prod = rs.reduce(&rs.reduce(&a).mul(&rs.reduce(&b)));
        assert_eq!(prod_then, then_prod);
    }

    #[test]
    fn validation() {
        let r = PolyRing::standard(FieldSpec::default_prime(), &["x", "y"]);
        assert!(matches!(
            RingSpec::hypersurface(r.clone(), parse_poly(&r, "x + 1").unwrap()),
            Err(EngineError::InhomogeneousInput(_))
        ));
        assert!(matches!(
            RingSpec::hypersurface(r.clone(), parse_poly(&r, "3").unwrap()),
            Err(EngineError::UnitIdeal)
        ));
        assert_eq!(quadric().dim(), 3);
        assert_eq!(quadric().to_string(), "F(32003)[x,y,u,v]/(x*u - y*v)");
    }
}
