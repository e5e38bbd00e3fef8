//! Minimal graded free resolutions over the ambient ring `S` (always
//! finite) and over a hypersurface quotient `R = S/(f)` (computed as a
//! truncated window; tails are eventually 2-periodic), plus detection of
//! that periodicity and extraction of the matrix factorization it carries.

use crate::error::{EngineError, Result};
use crate::groebner::GbOptions;
use crate::matrix::PolyMatrix;
use crate::modules::{
    kernel_gens, matrix_from_columns, minimal_generators, BaseRing, FreeComplex,
    ModulePresentation,
};
use crate::poly::Polynomial;
use crate::ring::RingSpec;

/// A computed window of a minimal free resolution. `diffs[i]` is
/// `d_{i+1} : F_{i+1} -> F_i`; `complete` means the next kernel was zero,
/// so the window is the whole (finite) resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub ring: RingSpec,
    pub base: BaseRing,
    pub rank0: usize,
    pub degs0: Vec<i64>,
    pub diffs: Vec<PolyMatrix>,
    pub complete: bool,
}

impl Resolution {
    pub fn ranks(&self) -> Vec<usize> {
        let mut out = vec![self.rank0];
        out.extend(self.diffs.iter().map(|d| d.cols));
        out
    }

    pub fn len(&self) -> usize {
        self.diffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diffs.is_empty()
    }

    /// Projective dimension, known only when the resolution terminated.
    pub fn projective_dimension(&self) -> Option<usize> {
        if self.complete {
            Some(self.diffs.len())
        } else {
            None
        }
    }

    pub fn to_free_complex(&self) -> FreeComplex {
        FreeComplex {
            ring: self.ring.clone(),
            base: self.base,
            rank0: self.rank0,
            degs0: self.degs0.clone(),
            diffs: self.diffs.clone(),
        }
    }

    fn f_active(&self) -> bool {
        self.base == BaseRing::Quotient && self.ring.f.is_some()
    }

    /// Continues the computation until `len` differentials are known or the
    /// resolution terminates. Already-computed differentials are untouched,
    /// so cached resolutions can be grown monotonically.
    pub fn extend_to(&mut self, len: usize, opts: &GbOptions) -> Result<()> {
        while self.diffs.len() < len && !self.complete {
            let (last_degs, last): (Vec<i64>, &PolyMatrix) = match self.diffs.last() {
                Some(d) => (d.col_degs.clone(), d),
                None => {
                    // rank0 generators, no relations yet: resolution of a
                    // free module is already complete (handled at creation),
                    // so reaching here means diffs was nonempty.
                    unreachable!("resolutions start with at least one differential")
                }
            };
            let ker = kernel_gens(&self.ring, self.f_active(), last, opts)?;
            let mins = minimal_generators(&self.ring, self.f_active(), &last_degs, &ker, opts)?;
            if mins.is_empty() {
                self.complete = true;
                return Ok(());
            }
            let d = matrix_from_columns(&self.ring, &last_degs, &mins)?;
            debug_assert!(
                d.entries.iter().all(|e| !e.is_unit()),
                "minimal resolution differential acquired a unit entry"
            );
            self.diffs.push(d);
        }
        Ok(())
    }
}

/// Default window length: `2*ceil((dim R + 2)/2) + 5`, wide enough for the
/// stabilization checks downstream with margin.
pub fn default_max_steps(ring: &RingSpec) -> usize {
    let d = ring.dim();
    2 * ((d + 2).div_ceil(2)) + 5
}

/// Minimal free resolution of a presented module, over the base its
/// presentation declares. Over the ambient ring this terminates by itself
/// (and `max_steps` is just a safety bound); over `R` it is a window of
/// `max_steps` differentials unless the module has finite projective
/// dimension.
pub fn resolve(pres: &ModulePresentation, max_steps: usize, opts: &GbOptions) -> Result<Resolution> {
    let min = pres.minimize(opts)?;
    let mut res = Resolution {
        ring: pres.ring.clone(),
        base: pres.base,
        rank0: min.ambient_rank,
        degs0: min.ambient_degs.clone(),
        diffs: Vec::new(),
        complete: false,
    };
    if min.rels.cols == 0 {
        // Free (or zero) module: nothing to resolve.
        res.complete = true;
        return Ok(res);
    }
    res.diffs.push(min.rels.clone());
    res.extend_to(max_steps, opts)?;
    Ok(res)
}

// ---------------------------------------------------------------------------
// Periodicity.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Period {
    One,
    Two,
    /// The resolution terminated: the tail is zero.
    ZeroTail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicityReport {
    pub period: Period,
    /// Smallest index `i` such that every computed differential from `d_i`
    /// on repeats with the stated period.
    pub periodic_from: usize,
    /// The repeating pair `(d_i, d_{i+1})` (both equal for period 1; empty
    /// for a zero tail).
    pub evidence: (PolyMatrix, PolyMatrix),
}

/// Comparable canonical form: uniform degree shift, column scaling to a
/// monic first entry, then column and row sorting by degree and printed
/// entries. Two differentials that agree up to graded twist, permutation
/// and unit column scaling get equal forms.
fn canonical_key(m: &PolyMatrix) -> (Vec<i64>, Vec<i64>, Vec<Vec<String>>) {
    let shift = m.row_degs.iter().copied().min().unwrap_or(0);
    let row_degs: Vec<i64> = m.row_degs.iter().map(|d| d - shift).collect();
    let col_degs: Vec<i64> = m.col_degs.iter().map(|d| d - shift).collect();
    // Columns as entry lists, scaled so the first nonzero entry is monic.
    let mut cols: Vec<(i64, Vec<Polynomial>)> = Vec::with_capacity(m.cols);
    for j in 0..m.cols {
        let mut col = m.col(j);
        if let Some(first) = col.iter().find(|e| !e.is_zero()) {
            let c = first.terms[0].coeff.clone();
            if let Ok(inv) = m.ring.field.inv(&c) {
                col = col.iter().map(|e| e.scale(&inv)).collect();
            }
        }
        cols.push((col_degs[j], col));
    }
    let render = |col: &[Polynomial]| -> Vec<String> { col.iter().map(|e| e.to_string()).collect() };
    cols.sort_by(|a, b| (a.0, render(&a.1)).cmp(&(b.0, render(&b.1))));
    let sorted_col_degs: Vec<i64> = cols.iter().map(|c| c.0).collect();
    // Rows of the column-sorted matrix, sorted by degree then content.
    let mut rows: Vec<(i64, Vec<String>)> = (0..m.rows)
        .map(|i| {
            (
                row_degs[i],
                cols.iter().map(|(_, col)| col[i].to_string()).collect::<Vec<_>>(),
            )
        })
        .collect();
    rows.sort();
    let sorted_row_degs: Vec<i64> = rows.iter().map(|r| r.0).collect();
    let body: Vec<Vec<String>> = rows.into_iter().map(|r| r.1).collect();
    (sorted_row_degs, sorted_col_degs, body)
}

/// True when the two matrices coincide as maps up to graded twist,
/// simultaneous permutation and unit column scaling. Literal entry
/// equality is checked first; the canonical form is the fallback.
fn equivalent(a: &PolyMatrix, b: &PolyMatrix) -> bool {
    if a.rows != b.rows || a.cols != b.cols {
        return false;
    }
    if a.entries == b.entries {
        return true;
    }
    canonical_key(a) == canonical_key(b)
}

/// True when the consecutive pair `(d_i, d_{i+1})` carries a matrix
/// factorization: both square, and the lifted product equals `f*C` with
/// `C` invertible over `S`. From such an index on, the tail of a minimal
/// resolution repeats with period 2 up to graded isomorphism, and
/// conversely a 2-periodic tail satisfies this at every index — so this is
/// the decisive, basis-independent repetition certificate.
fn factorization_certificate(ring: &RingSpec, a: &PolyMatrix, b: &PolyMatrix) -> bool {
    let Some(f) = ring.f.as_ref() else { return false };
    if a.rows != a.cols || b.rows != b.cols || a.cols != b.rows {
        return false;
    }
    let Ok(prod) = a.mul(b) else { return false };
    let n = a.rows;
    let mut c = PolyMatrix::zero(&ring.ambient, n, n);
    for i in 0..n {
        for j in 0..n {
            match prod.at(i, j).exact_div(f) {
                Some(q) => *c.at_mut(i, j) = q,
                None => return false,
            }
        }
    }
    matches!(c.det(), Ok(d) if d.is_unit())
}

/// Reports the smallest index from which the computed differentials repeat
/// with period 1 or 2 (period 1 when consecutive differentials moreover
/// coincide up to twist, permutation and unit scaling), or the degenerate
/// zero tail for a terminated resolution.
///
/// Repetition is certified through the factorization property of
/// consecutive pairs, which is exact for repetition up to graded
/// isomorphism; literal and canonical-form comparisons refine it to
/// distinguish period 1.
///
/// Errors with [`EngineError::WindowTooShort`] when the window is shorter
/// than `dim S + 3` or no repetition is certified in it; absence of
/// repetition is reported, never guessed.
pub fn detect_periodicity(res: &Resolution) -> Result<PeriodicityReport> {
    let a = &res.ring.ambient;
    if res.complete {
        let empty = PolyMatrix::zero(a, 0, 0);
        return Ok(PeriodicityReport {
            period: Period::ZeroTail,
            periodic_from: res.len() + 1,
            evidence: (empty.clone(), empty),
        });
    }
    let n = res.len();
    if n < a.nvars() + 3 {
        return Err(EngineError::WindowTooShort(format!(
            "have {} differentials, need at least {}",
            n,
            a.nvars() + 3
        )));
    }
    // Smallest p with the factorization certificate on every computed pair
    // (d_i, d_{i+1}), p <= i <= n-1.
    let mut from = None;
    for p in (1..n).rev() {
        if factorization_certificate(&res.ring, &res.diffs[p - 1], &res.diffs[p]) {
            from = Some(p);
        } else {
            break;
        }
    }
    let Some(p) = from else {
        return Err(EngineError::WindowTooShort(format!(
            "no repetition of period 1 or 2 certified in {n} differentials"
        )));
    };
    // Period 1 when every consecutive pair from p on is moreover equal.
    let period_one = (p..n).all(|i| equivalent(&res.diffs[i - 1], &res.diffs[i]));
    Ok(PeriodicityReport {
        period: if period_one { Period::One } else { Period::Two },
        periodic_from: p,
        evidence: (res.diffs[p - 1].clone(), res.diffs[p].clone()),
    })
}

// ---------------------------------------------------------------------------
// Matrix factorizations.
// ---------------------------------------------------------------------------

/// A pair of square matrices over `S` with `A*B = B*A = f*identity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFactorization {
    pub a: PolyMatrix,
    pub b: PolyMatrix,
    pub f: Polynomial,
}

/// Extracts the matrix factorization carried by a periodic tail: the pair
/// of consecutive repeating differentials, corrected by the invertible
/// scalar matrix `(A*B)/f` so the products are exactly `f*identity`.
pub fn extract_matrix_factorization(
    res: &Resolution,
    report: &PeriodicityReport,
) -> Result<MatrixFactorization> {
    let f = res
        .ring
        .f
        .clone()
        .ok_or_else(|| EngineError::FactorizationCheckFailed("no hypersurface equation".into()))?;
    let p = report.periodic_from;
    let (a, b_raw) = match report.period {
        Period::ZeroTail => {
            return Err(EngineError::FactorizationCheckFailed(
                "resolution has a zero tail; no periodic pair to extract".into(),
            ))
        }
        Period::One => (res.diffs[p - 1].clone(), res.diffs[p - 1].clone()),
        Period::Two => (res.diffs[p - 1].clone(), res.diffs[p].clone()),
    };
    if a.rows != a.cols || b_raw.rows != b_raw.cols || a.cols != b_raw.rows {
        return Err(EngineError::FactorizationCheckFailed(format!(
            "periodic pair is not square: {}x{} and {}x{}",
            a.rows, a.cols, b_raw.rows, b_raw.cols
        )));
    }
    let n = a.rows;
    let ring = &res.ring.ambient;
    let prod = a.mul(&b_raw)?;
    // C = (A*B)/f must divide exactly, entry by entry.
    let mut c = PolyMatrix::zero(ring, n, n);
    for i in 0..n {
        for j in 0..n {
            let q = prod.at(i, j).exact_div(&f).ok_or_else(|| {
                EngineError::FactorizationCheckFailed(format!(
                    "product entry ({i},{j}) is not a multiple of f"
                ))
            })?;
            *c.at_mut(i, j) = q;
        }
    }
    // C must be invertible over S: constant nonzero determinant.
    let det = c.det()?;
    if !det.is_unit() {
        return Err(EngineError::FactorizationCheckFailed(
            "correction matrix is not invertible".into(),
        ));
    }
    let det_inv = ring.field.inv(&det.terms[0].coeff).map_err(|_| {
        EngineError::FactorizationCheckFailed("determinant not invertible".into())
    })?;
    let c_inv = c.adjugate()?.map_entries(|e| e.scale(&det_inv));
    let b = b_raw.mul(&c_inv)?;
    // Exact verification of both products.
    let fid = PolyMatrix::identity(ring, n).map_entries(|e| e.mul(&f));
    let ab = a.mul(&b)?;
    let ba = b.mul(&a)?;
    if ab.entries != fid.entries || ba.entries != fid.entries {
        return Err(EngineError::FactorizationCheckFailed(
            "products do not equal f times the identity".into(),
        ));
    }
    Ok(MatrixFactorization { a, b, f })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::{parse_poly, PolyRing, RingRef};

    fn opts() -> GbOptions {
        GbOptions::default()
    }

    fn quadric() -> RingSpec {
        let r = PolyRing::standard(FieldSpec::default_prime(), &["x", "y", "u", "v"]);
        let f = parse_poly(&r, "x*u - y*v").unwrap();
        RingSpec::hypersurface(r, f).unwrap()
    }

    fn pl(r: &RingRef, srcs: &[&str]) -> Vec<crate::poly::Polynomial> {
        srcs.iter().map(|s| parse_poly(r, s).unwrap()).collect()
    }

    #[test]
    fn hypersurface_quotient_resolves_in_one_step_over_ambient() {
        let rs = quadric();
        let f = rs.f.clone().unwrap();
        let m = ModulePresentation::cyclic(&rs, BaseRing::Ambient, &[f]).unwrap();
        let res = resolve(&m, 10, &opts()).unwrap();
        assert_eq!(res.ranks(), vec![1, 1]);
        assert_eq!(res.projective_dimension(), Some(1));
    }

    #[test]
    fn two_variable_ideal_resolves_to_the_koszul_complex() {
        let rs = quadric();
        let a = &rs.ambient;
        let m = ModulePresentation::cyclic(&rs, BaseRing::Ambient, &pl(a, &["x", "y"])).unwrap();
        let res = resolve(&m, 10, &opts()).unwrap();
        assert_eq!(res.ranks(), vec![1, 2, 1]);
        assert_eq!(res.projective_dimension(), Some(2));
        res.to_free_complex().validate().unwrap();
    }

    #[test]
    fn free_modules_have_length_zero_resolutions() {
        let rs = quadric();
        let m = ModulePresentation::free(&rs, BaseRing::Quotient, 3);
        let res = resolve(&m, 10, &opts()).unwrap();
        assert_eq!(res.ranks(), vec![3]);
        assert_eq!(res.projective_dimension(), Some(0));
    }

    #[test]
    fn residue_field_over_ambient_is_the_full_koszul_resolution() {
        let rs = quadric();
        let a = &rs.ambient;
        let m = ModulePresentation::cyclic(&rs, BaseRing::Ambient, &pl(a, &["x", "y", "u", "v"]))
            .unwrap();
        let res = resolve(&m, 10, &opts()).unwrap();
        assert_eq!(res.ranks(), vec![1, 4, 6, 4, 1]);
        assert_eq!(res.projective_dimension(), Some(4));
    }

    #[test]
    fn plane_over_quadric_is_two_periodic_with_the_determinantal_factorization() {
        let rs = quadric();
        let a = &rs.ambient;
        let m = ModulePresentation::cyclic(&rs, BaseRing::Quotient, &pl(a, &["x", "y"])).unwrap();
        let res = resolve(&m, 8, &opts()).unwrap();
        assert_eq!(res.ranks(), vec![1, 2, 2, 2, 2, 2, 2, 2, 2]);
        assert!(!res.complete);
        let report = detect_periodicity(&res).unwrap();
        assert_eq!(report.period, Period::Two);
        assert!(report.periodic_from <= 2, "periodic from {}", report.periodic_from);
        let mf = extract_matrix_factorization(&res, &report).unwrap();
        // Products are exactly f*identity (also verified inside the
        // extractor); the determinant of each factor is ±f.
        let f = rs.f.clone().unwrap();
        let det_a = mf.a.det().unwrap();
        assert!(det_a == f || det_a == f.neg(), "det A = {det_a}");
        let det_b = mf.b.det().unwrap();
        assert!(det_b == f || det_b == f.neg(), "det B = {det_b}");
    }

    #[test]
    fn residue_field_of_the_cusp_point_is_one_periodic() {
        let r = PolyRing::standard(FieldSpec::Prime(2), &["x"]);
        let f = parse_poly(&r, "x^2").unwrap();
        let rs = RingSpec::hypersurface(r, f).unwrap();
        let a = &rs.ambient;
        let k = ModulePresentation::cyclic(&rs, BaseRing::Quotient, &pl(a, &["x"])).unwrap();
        let res = resolve(&k, 6, &opts()).unwrap();
        assert_eq!(res.ranks(), vec![1; 7]);
        let report = detect_periodicity(&res).unwrap();
        assert_eq!(report.period, Period::One);
        assert_eq!(report.periodic_from, 1);
        let mf = extract_matrix_factorization(&res, &report).unwrap();
        assert_eq!(mf.a.at(0, 0), mf.b.at(0, 0));
    }

    #[test]
    fn finite_projective_dimension_over_r_gives_a_zero_tail() {
        let rs = quadric();
        let a = &rs.ambient;
        // x is a nonzerodivisor on the quadric domain, so R/(x) has pd 1.
        let m = ModulePresentation::cyclic(&rs, BaseRing::Quotient, &pl(a, &["x"])).unwrap();
        let res = resolve(&m, 8, &opts()).unwrap();
        assert_eq!(res.projective_dimension(), Some(1));
        let report = detect_periodicity(&res).unwrap();
        assert_eq!(report.period, Period::ZeroTail);
        assert!(matches!(
            extract_matrix_factorization(&res, &report),
            Err(EngineError::FactorizationCheckFailed(_))
        ));
    }

    #[test]
    fn short_windows_are_reported_not_guessed() {
        let rs = quadric();
        let a = &rs.ambient;
        let m = ModulePresentation::cyclic(&rs, BaseRing::Quotient, &pl(a, &["x", "y"])).unwrap();
        let res = resolve(&m, 3, &opts()).unwrap();
        assert!(matches!(
            detect_periodicity(&res),
            Err(EngineError::WindowTooShort(_))
        ));
    }

    #[test]
    fn extension_matches_a_fresh_computation() {
        let rs = quadric();
        let a = &rs.ambient;
        let m = ModulePresentation::cyclic(&rs, BaseRing::Quotient, &pl(a, &["x", "y"])).unwrap();
        let mut short = resolve(&m, 4, &opts()).unwrap();
        short.extend_to(8, &opts()).unwrap();
        let full = resolve(&m, 8, &opts()).unwrap();
        assert_eq!(short, full);
    }

    #[test]
    fn default_window_for_the_quadric_is_eleven() {
        assert_eq!(default_max_steps(&quadric()), 11);
    }

    #[test]
    fn residue_field_over_the_elliptic_cone_has_the_expected_betti_tail() {
        let r = PolyRing::standard(FieldSpec::default_prime(), &["x", "y", "z"]);
        let f = parse_poly(&r, "x^3 + y^3 + z^3").unwrap();
        let rs = RingSpec::hypersurface(r, f).unwrap();
        let a = &rs.ambient;
        let k = ModulePresentation::cyclic(&rs, BaseRing::Quotient, &pl(a, &["x", "y", "z"]))
            .unwrap();
        let res = resolve(&k, 7, &opts()).unwrap();
        assert_eq!(res.ranks(), vec![1, 3, 4, 4, 4, 4, 4, 4]);
        let report = detect_periodicity(&res).unwrap();
        assert_eq!(report.period, Period::Two);
        assert!(report.periodic_from <= 4);
        let mf = extract_matrix_factorization(&res, &report).unwrap();
        assert_eq!(mf.a.rows, 4);
    }
}
