//! Numerical invariants of presented modules over a graded hypersurface
//! ring: Tor tables, the stable even/odd Tor-length difference `theta`,
//! partial Euler characteristics `chi_i`, depth, the depth formula,
//! decency of intersections, rigidity probes, the singular locus, the
//! infinite-projective-dimension locus, Frobenius-twisted Tor tables, and
//! exactness verification.
//!
//! All computations go through an [`InvariantEngine`], which memoizes
//! minimal resolutions per presentation and grows them monotonically.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{EngineError, Result};
use crate::groebner::{ideal_gb, krull_dim, GbOptions};
use crate::matrix::PolyMatrix;
use crate::modules::{BaseRing, ModulePresentation, PresComplex};
use crate::resolution::{resolve, Resolution};
use crate::ring::RingSpec;

/// One entry of a Tor table: an exact total length, or the dimension of
/// the (positive-dimensional) support when the length is infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorEntry {
    Length(u64),
    Posdim(usize),
}

impl TorEntry {
    pub fn is_zero(&self) -> bool {
        matches!(self, TorEntry::Length(0))
    }

    pub fn finite(&self) -> Option<u64> {
        match self {
            TorEntry::Length(l) => Some(*l),
            TorEntry::Posdim(_) => None,
        }
    }
}

/// Lengths (or support dimensions) of `Tor_i(M, N)` for `0 <= i <= up_to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorTable {
    pub up_to: usize,
    pub entries: Vec<TorEntry>,
    /// Smallest index from which every entry up to `up_to` is a finite
    /// length; `None` when even the top entry is positive-dimensional.
    pub fli_index: Option<usize>,
}

impl TorTable {
    fn from_entries(entries: Vec<TorEntry>) -> TorTable {
        let up_to = entries.len() - 1;
        let mut fli = None;
        for i in (0..entries.len()).rev() {
            match entries[i] {
                TorEntry::Length(_) => fli = Some(i),
                TorEntry::Posdim(_) => break,
            }
        }
        TorTable { up_to, entries, fli_index: fli }
    }
}

/// The stable difference `l(Tor_{2e+2}) - l(Tor_{2e+1})`, with the window
/// evidence that the even and odd lengths have stabilized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaResult {
    pub value: i64,
    pub e_used: usize,
    /// `[l(2e+1), l(2e+2), l(2e+3), l(2e+4)]`; stabilization means the
    /// first equals the third and the second equals the fourth.
    pub evidence: [u64; 4],
}

/// Partial Euler characteristic from a start index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiResult {
    pub value: i64,
    pub start_index: usize,
}

/// The four depths entering the depth formula, and whether it holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthFormulaReport {
    pub depth_m: usize,
    pub depth_n: usize,
    pub depth_ring: usize,
    pub depth_tensor: usize,
    /// Tor vanishing was verified for `1 <= i <= window`.
    pub window: usize,
    pub holds: bool,
}

/// Dimension data of an intersection, its decency flag, and agreement
/// with the vanishing of theta (observed, not assumed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecencyReport {
    pub dim_m: Option<usize>,
    pub dim_n: Option<usize>,
    pub dim_ring: usize,
    pub decent: bool,
    pub theta: i64,
    pub consistent: bool,
}

/// A failure of rigidity: `Tor_i = 0` but `Tor_j != 0` for some `j > i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RigidityWitness {
    pub vanishes_at: usize,
    pub nonzero_at: usize,
}

/// Dimension of the singular locus of the hypersurface (None = empty), and
/// the characteristic caveat for the Jacobian criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingularLocusReport {
    pub dim: Option<usize>,
    pub isolated: bool,
    /// In characteristic p > 0, set when p divides the weighted degree of
    /// f; the Jacobian criterion can then miss singularities, so the
    /// result is advisory.
    pub char_caveat: bool,
}

/// Per-spot exactness verdicts, indexed homologically (0 = rightmost).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactnessReport {
    pub exact: Vec<bool>,
}

/// Session-level engine: shared options plus a resolution cache keyed by a
/// canonical fingerprint of the presentation. Cached resolutions are only
/// ever extended, so contents are deterministic regardless of call order.
pub struct InvariantEngine {
    opts: GbOptions,
    cache: Mutex<HashMap<String, Resolution>>,
    tables: Mutex<HashMap<(String, String), Vec<TorEntry>>>,
}

impl Default for InvariantEngine {
    fn default() -> Self {
        InvariantEngine::new(GbOptions::default())
    }
}

fn fingerprint(m: &ModulePresentation) -> String {
    use std::fmt::Write;
    let mut s = String::new();
    let _ = write!(
        s,
        "{}|{:?}|{}|{:?}|",
        m.ring, m.base, m.ambient_rank, m.ambient_degs
    );
    for mat in [&m.gens, &m.rels] {
        let _ = write!(s, "[{}x{}:", mat.rows, mat.cols);
        for e in &mat.entries {
            let _ = write!(s, "{e};");
        }
        let _ = write!(s, "]");
    }
    s
}

impl InvariantEngine {
    pub fn new(opts: GbOptions) -> InvariantEngine {
        InvariantEngine {
            opts,
            cache: Mutex::new(HashMap::new()),
            tables: Mutex::new(HashMap::new()),
        }
    }

    /// Minimal free resolution window of `M`, served from the shared cache.
    pub fn resolution(&self, m: &ModulePresentation, steps: usize) -> Result<Resolution> {
        self.resolution_of(m, steps)
    }

    pub fn options(&self) -> &GbOptions {
        &self.opts
    }

    /// Cached minimal resolution with at least `steps` differentials
    /// (fewer when the module has finite projective dimension).
    fn resolution_of(&self, m: &ModulePresentation, steps: usize) -> Result<Resolution> {
        let key = fingerprint(m);
        let mut cache = self.cache.lock().expect("resolution cache poisoned");
        if let Some(res) = cache.get_mut(&key) {
            if res.len() < steps && !res.complete {
                res.extend_to(steps, &self.opts)?;
            }
            let mut out = res.clone();
            out.diffs.truncate(steps);
            if out.diffs.len() == steps {
                // A truncated window of an unfinished resolution is not
                // complete even if the cached one later terminates exactly
                // at `steps`; completeness only survives when nothing was
                // cut off.
                out.complete = res.complete && res.len() <= steps;
            }
            return Ok(out);
        }
        let res = resolve(m, steps, &self.opts)?;
        cache.insert(key, res.clone());
        Ok(res)
    }

    // -- Tor tables ---------------------------------------------------------

    /// Lengths of `Tor_i(M, N)` for `0 <= i <= up_to`, computed as the
    /// homology of (minimal resolution of M) tensored with N. Entries are
    /// memoized per module pair and grown monotonically.
    pub fn tor_table(
        &self,
        m: &ModulePresentation,
        n: &ModulePresentation,
        up_to: usize,
    ) -> Result<TorTable> {
        if m.ring != n.ring || m.base != n.base {
            return Err(EngineError::RingMismatch(
                "Tor requires both modules over the same ring".into(),
            ));
        }
        let key = (fingerprint(m), fingerprint(n));
        let cached: Vec<TorEntry> = self
            .tables
            .lock()
            .expect("table cache poisoned")
            .get(&key)
            .cloned()
            .unwrap_or_default();
        if cached.len() > up_to {
            return Ok(TorTable::from_entries(cached[..=up_to].to_vec()));
        }
        let res = self.resolution_of(m, up_to + 1)?;
        let complex = res.to_free_complex().tensor_with(n, &self.opts)?;
        let mut entries = cached;
        for i in entries.len()..=up_to {
            if i > res.len() {
                entries.push(TorEntry::Length(0));
                continue;
            }
            let h = complex.homology_at(i, &self.opts)?;
            entries.push(self.measure(&h)?);
        }
        self.tables
            .lock()
            .expect("table cache poisoned")
            .insert(key, entries.clone());
        Ok(TorTable::from_entries(entries))
    }

    /// Length when finite, else support dimension. Minimizes once and
    /// reuses the cokernel form for both measurements.
    fn measure(&self, h: &ModulePresentation) -> Result<TorEntry> {
        let min = h.minimize(&self.opts)?;
        match min.coker_length(&self.opts)? {
            Some(l) => Ok(TorEntry::Length(l)),
            None => {
                let d = min
                    .coker_dim(&self.opts)?
                    .expect("infinite length forces a nonzero module");
                Ok(TorEntry::Posdim(d))
            }
        }
    }

    // -- theta --------------------------------------------------------------

    /// Stable even-minus-odd Tor length difference.
    ///
    /// The comparison index `e` is the smallest with `2e+1` beyond both the
    /// finite-length onset of the table and `dim S + 1`; stabilization is
    /// then verified by comparing the windows at `e` and `e+1`.
    pub fn theta(&self, m: &ModulePresentation, n: &ModulePresentation) -> Result<ThetaResult> {
        if !m.is_homogeneous() || !n.is_homogeneous() {
            return Err(EngineError::InhomogeneousInput(
                "theta requires homogeneous presentations".into(),
            ));
        }
        let d_floor = m.ring.ambient.nvars() + 1;
        let mut bound = d_floor;
        for _ in 0..8 {
            let e = (bound - 1) / 2 + 1; // smallest e with 2e+1 > bound
            let window = 2 * e + 4;
            let table = self.tor_table(m, n, window)?;
            let fli = match table.fli_index {
                Some(i) => i,
                None => {
                    // Even the top entry has positive-dimensional support.
                    let TorEntry::Posdim(d) = table.entries[window] else {
                        unreachable!()
                    };
                    return Err(EngineError::UndefinedTheta { index: window, dim: d });
                }
            };
            let needed = fli.max(d_floor);
            if 2 * e + 1 <= needed {
                bound = needed;
                continue;
            }
            let mut ev = [0u64; 4];
            for (k, slot) in ev.iter_mut().enumerate() {
                let idx = 2 * e + 1 + k;
                match table.entries[idx] {
                    TorEntry::Length(l) => *slot = l,
                    TorEntry::Posdim(d) => {
                        return Err(EngineError::UndefinedTheta { index: idx, dim: d })
                    }
                }
            }
            if ev[0] != ev[2] || ev[1] != ev[3] {
                return Err(EngineError::StabilizationFailed(format!(
                    "windows at e = {e} disagree: odd {} vs {}, even {} vs {}",
                    ev[0], ev[2], ev[1], ev[3]
                )));
            }
            return Ok(ThetaResult {
                value: ev[1] as i64 - ev[0] as i64,
                e_used: e,
                evidence: ev,
            });
        }
        Err(EngineError::StabilizationFailed(
            "finite-length onset kept growing with the window".into(),
        ))
    }

    // -- chi ----------------------------------------------------------------

    /// Partial Euler characteristic over the ambient ring:
    /// `sum_{j >= i} (-1)^(j-i) l(Tor_j(M, N))`, from the finite ambient
    /// resolution. Presentations handed in over `R` are reinterpreted over
    /// `S` with the same matrices (their defining lifts).
    pub fn chi(
        &self,
        m: &ModulePresentation,
        n: &ModulePresentation,
        start: usize,
    ) -> Result<ChiResult> {
        let m = ambient_reinterpret(m);
        let n = ambient_reinterpret(n);
        if m.ring.ambient != n.ring.ambient {
            return Err(EngineError::RingMismatch(
                "chi requires both modules over the same ambient ring".into(),
            ));
        }
        let nv = m.ring.ambient.nvars();
        let res = self.resolution_of(&m, nv + 2)?;
        debug_assert!(res.complete, "ambient resolutions terminate within nvars steps");
        let pd = res.len();
        let complex = res.to_free_complex().tensor_with(&n, &self.opts)?;
        let mut value: i64 = 0;
        let mut sign: i64 = 1;
        for j in start..=pd.max(start) {
            if j > pd {
                break;
            }
            let h = complex.homology_at(j, &self.opts)?;
            match h.length(&self.opts)? {
                Some(l) => value += sign * l as i64,
                None => return Err(EngineError::InfiniteLengthAt { index: j }),
            }
            sign = -sign;
        }
        Ok(ChiResult { value, start_index: start })
    }

    // -- depth and the depth formula ----------------------------------------

    /// Depth with respect to the irrelevant maximal ideal, via the
    /// Auslander-Buchsbaum formula on the ambient lift:
    /// `nvars - pd_S(lift of M)`. Depth does not change along `S -> R`.
    pub fn depth(&self, m: &ModulePresentation) -> Result<usize> {
        if m.is_zero_module(&self.opts)? {
            return Err(EngineError::ZeroModule);
        }
        let lift = ambient_lift(m)?;
        let nv = lift.ring.ambient.nvars();
        let res = self.resolution_of(&lift, nv + 2)?;
        debug_assert!(res.complete);
        Ok(nv - res.len())
    }

    /// Checks `depth M + depth N = depth R + depth(M (x) N)` under the
    /// hypothesis that `Tor_i(M, N) = 0` for `1 <= i <= table.up_to`.
    pub fn check_depth_formula(
        &self,
        m: &ModulePresentation,
        n: &ModulePresentation,
        table: &TorTable,
    ) -> Result<DepthFormulaReport> {
        for i in 1..=table.up_to {
            if !table.entries[i].is_zero() {
                return Err(EngineError::HypothesisNotMet(format!(
                    "Tor_{i} does not vanish"
                )));
            }
        }
        let depth_m = self.depth(m)?;
        let depth_n = self.depth(n)?;
        let free = ModulePresentation::free(&m.ring, m.base, 1);
        let depth_ring = self.depth(&free)?;
        let tensor = m.tensor(n, &self.opts)?;
        let depth_tensor = self.depth(&tensor)?;
        Ok(DepthFormulaReport {
            depth_m,
            depth_n,
            depth_ring,
            depth_tensor,
            window: table.up_to,
            holds: depth_m + depth_n == depth_ring + depth_tensor,
        })
    }

    // -- decency ------------------------------------------------------------

    /// Dimension inequality `dim M + dim N <= dim R` for a finite-length
    /// intersection, with the observed relation to `theta = 0`.
    pub fn decency_check(
        &self,
        m: &ModulePresentation,
        n: &ModulePresentation,
    ) -> Result<DecencyReport> {
        let tensor = m.tensor(n, &self.opts)?;
        if tensor.length(&self.opts)?.is_none() {
            return Err(EngineError::NotFiniteIntersection);
        }
        let dim_m = m.dim(&self.opts)?;
        let dim_n = n.dim(&self.opts)?;
        let dim_ring = m.ring.dim();
        let decent = dim_m.unwrap_or(0) + dim_n.unwrap_or(0) <= dim_ring;
        let theta = self.theta(m, n)?.value;
        Ok(DecencyReport {
            dim_m,
            dim_n,
            dim_ring,
            decent,
            theta,
            consistent: decent == (theta == 0),
        })
    }

    // -- rigidity -----------------------------------------------------------

    /// Least `(i, j)` with `i < j <= up_to`, `Tor_i = 0` and `Tor_j != 0`;
    /// `None` when no such pair exists in the window.
    pub fn rigidity_probe(
        &self,
        m: &ModulePresentation,
        n: &ModulePresentation,
        up_to: usize,
    ) -> Result<Option<RigidityWitness>> {
        let table = self.tor_table(m, n, up_to)?;
        for i in 0..=up_to {
            if !table.entries[i].is_zero() {
                continue;
            }
            for j in (i + 1)..=up_to {
                if !table.entries[j].is_zero() {
                    return Ok(Some(RigidityWitness { vanishes_at: i, nonzero_at: j }));
                }
            }
        }
        Ok(None)
    }

    // -- loci ---------------------------------------------------------------

    /// Dimension of `V(f, all partials of f)`. `dim = None` means the
    /// Jacobian ideal is the unit ideal (smooth hypersurface); a ring
    /// without `f` is regular, reported the same way.
    pub fn singular_locus(&self, ring: &RingSpec) -> Result<SingularLocusReport> {
        let Some(f) = ring.f.as_ref() else {
            return Ok(SingularLocusReport { dim: None, isolated: true, char_caveat: false });
        };
        let a = &ring.ambient;
        let p = ring.characteristic();
        let deg_f = f.homogeneous_degree().unwrap_or(0);
        let char_caveat = p > 0 && deg_f % p == 0;
        let mut jac = vec![f.clone()];
        for i in 0..a.nvars() {
            let d = f.derivative(i);
            if !d.is_zero() {
                jac.push(d);
            }
        }
        let gb = ideal_gb(&jac, &self.opts)?;
        let dim = match krull_dim(a, &gb) {
            Err(EngineError::UnitIdeal) => None,
            Err(e) => return Err(e),
            Ok(d) => Some(d),
        };
        let isolated = dim.map(|d| d == 0).unwrap_or(true);
        Ok(SingularLocusReport { dim, isolated, char_caveat })
    }

    /// Dimension of the locus where `M` has infinite projective dimension:
    /// the union of the supports of two consecutive stable-range
    /// self-Tors, `Tor_{2n+1}(M, M)` and `Tor_{2n+2}(M, M)` for
    /// `n = dim S`. `None` means the locus is empty (finite projective
    /// dimension).
    pub fn ipd_locus_dim(&self, m: &ModulePresentation) -> Result<Option<usize>> {
        let nv = m.ring.ambient.nvars();
        let hi = 2 * nv + 2;
        let res = self.resolution_of(m, hi + 1)?;
        if res.complete {
            return Ok(None);
        }
        let complex = res.to_free_complex().tensor_with(m, &self.opts)?;
        let mut best: Option<usize> = None;
        for i in [hi - 1, hi] {
            let h = complex.homology_at(i, &self.opts)?;
            if let Some(d) = h.dim(&self.opts)? {
                best = Some(best.map_or(d, |b| b.max(d)));
            }
        }
        Ok(best)
    }

    // -- Frobenius ----------------------------------------------------------

    /// Tor table of `M` against the ring viewed through `e` iterations of
    /// Frobenius: the homology of the resolution of `M` with every
    /// differential entry raised to the `p^e`-th power.
    pub fn frobenius_tor_table(
        &self,
        m: &ModulePresentation,
        e: u32,
        up_to: usize,
    ) -> Result<TorTable> {
        let p = m.ring.characteristic();
        if p == 0 {
            return Err(EngineError::WrongCharacteristic(
                "Frobenius requires positive characteristic".into(),
            ));
        }
        let q64 = p.checked_pow(e).ok_or_else(|| {
            EngineError::WrongCharacteristic(format!("p^e overflows: p = {p}, e = {e}"))
        })?;
        let q = u32::try_from(q64).map_err(|_| {
            EngineError::WrongCharacteristic(format!("p^e too large: p = {p}, e = {e}"))
        })?;
        let res = self.resolution_of(m, up_to + 1)?;
        let mut twisted = res.to_free_complex();
        twisted.degs0 = twisted.degs0.iter().map(|d| d * q as i64).collect();
        let mut prev_degs = twisted.degs0.clone();
        for d in twisted.diffs.iter_mut() {
            let mut t = d.map_entries(|p| p.power_substitute(q));
            t.row_degs = prev_degs.clone();
            t.col_degs = d.col_degs.iter().map(|c| c * q as i64).collect();
            prev_degs = t.col_degs.clone();
            *d = t;
        }
        // In characteristic p the entry-wise power is a ring map, so the
        // twisted differentials still compose to zero modulo f.
        twisted.validate()?;
        let complex = twisted.to_pres_complex();
        let mut entries = Vec::with_capacity(up_to + 1);
        for i in 0..=up_to {
            if i > res.len() {
                entries.push(TorEntry::Length(0));
                continue;
            }
            let h = complex.homology_at(i, &self.opts)?;
            entries.push(self.measure(&h)?);
        }
        Ok(TorTable::from_entries(entries))
    }

    // -- exactness ----------------------------------------------------------

    /// Exactness verdict at every spot of a validated complex; `true`
    /// where the homology vanishes. Index 0 is the rightmost module.
    pub fn verify_exact(&self, complex: &PresComplex) -> Result<ExactnessReport> {
        complex.validate(&self.opts)?;
        let mut exact = Vec::with_capacity(complex.spots());
        for i in 0..complex.spots() {
            let h = complex.homology_at(i, &self.opts)?;
            exact.push(h.is_zero_module(&self.opts)?);
        }
        Ok(ExactnessReport { exact })
    }
}

/// The same matrices read as a presentation over the ambient ring: the
/// defining lift of an `R`-module (without the implicit `f`-relations).
pub fn ambient_reinterpret(m: &ModulePresentation) -> ModulePresentation {
    let mut out = m.clone();
    out.base = BaseRing::Ambient;
    out
}

/// The honest ambient lift: over `R`, `f` annihilates the module, so the
/// `f*identity` columns become explicit relations.
pub fn ambient_lift(m: &ModulePresentation) -> Result<ModulePresentation> {
    if m.base == BaseRing::Ambient || m.ring.f.is_none() {
        return Ok(ambient_reinterpret(m));
    }
    let f = m.ring.f.clone().unwrap();
    let a = &m.ring.ambient;
    let fid = PolyMatrix::identity_with_degs(a, &m.ambient_degs).map_entries(|e| e.mul(&f));
    let mut fid = fid;
    fid.row_degs = m.ambient_degs.clone();
    let fdeg = f.homogeneous_degree().unwrap_or(0) as i64;
    fid.col_degs = m.ambient_degs.iter().map(|d| d + fdeg).collect();
    let mut out = m.clone();
    out.base = BaseRing::Ambient;
    out.rels = m.rels.hcat(&fid)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::modules::koszul_complex;
    use crate::poly::{parse_poly, PolyRing, RingRef};

    fn engine() -> InvariantEngine {
        InvariantEngine::default()
    }

    fn quadric() -> RingSpec {
        let r = PolyRing::standard(FieldSpec::default_prime(), &["x", "y", "u", "v"]);
        let f = parse_poly(&r, "x*u - y*v").unwrap();
        RingSpec::hypersurface(r, f).unwrap()
    }

    fn pl(r: &RingRef, srcs: &[&str]) -> Vec<crate::poly::Polynomial> {
        srcs.iter().map(|s| parse_poly(r, s).unwrap()).collect()
    }

    fn cyc(rs: &RingSpec, base: BaseRing, gens: &[&str]) -> ModulePresentation {
        ModulePresentation::cyclic(rs, base, &pl(&rs.ambient, gens)).unwrap()
    }

    #[test]
    fn tor_against_a_free_module_vanishes_above_zero() {
        let rs = quadric();
        let eng = engine();
        let free = ModulePresentation::free(&rs, BaseRing::Quotient, 1);
        let n = cyc(&rs, BaseRing::Quotient, &["x", "y"]);
        let t = eng.tor_table(&free, &n, 5).unwrap();
        assert_eq!(t.entries[0], TorEntry::Posdim(2));
        for i in 1..=5 {
            assert!(t.entries[i].is_zero(), "Tor_{i} should vanish");
        }
        assert_eq!(t.fli_index, Some(1));
    }

    #[test]
    fn transverse_planes_have_the_alternating_table() {
        let rs = quadric();
        let eng = engine();
        let m = cyc(&rs, BaseRing::Quotient, &["x", "y"]);
        let n = cyc(&rs, BaseRing::Quotient, &["u", "v"]);
        let t = eng.tor_table(&m, &n, 10).unwrap();
        for i in 0..=10 {
            let expect = if i % 2 == 0 { TorEntry::Length(1) } else { TorEntry::Length(0) };
            assert_eq!(t.entries[i], expect, "index {i}");
        }
        assert_eq!(t.fli_index, Some(0));
    }

    #[test]
    fn planes_meeting_in_a_line_have_odd_torsion() {
        // M = R/(x,y) and N = R/(x,v) share the line x = y = v = 0 in
        // Tor_0, and then length-1 Tor at every odd index: resolving M by
        // its 2-periodic resolution and tensoring with N reduces the
        // differentials to multiplication maps on k[y=0...]: direct hand
        // computation on the u-line gives Tor_odd = k, Tor_{even >= 2} = 0.
        let rs = quadric();
        let eng = engine();
        let m = cyc(&rs, BaseRing::Quotient, &["x", "y"]);
        let n = cyc(&rs, BaseRing::Quotient, &["x", "v"]);
        let t = eng.tor_table(&m, &n, 10).unwrap();
        assert_eq!(t.entries[0], TorEntry::Posdim(1));
        for i in 1..=10 {
            let expect = if i % 2 == 1 { TorEntry::Length(1) } else { TorEntry::Length(0) };
            assert_eq!(t.entries[i], expect, "index {i}");
        }
        assert_eq!(t.fli_index, Some(1));
    }

    #[test]
    fn tor_tables_are_symmetric_in_the_arguments() {
        let rs = quadric();
        let eng = engine();
        let m = cyc(&rs, BaseRing::Quotient, &["x", "y"]);
        let n = cyc(&rs, BaseRing::Quotient, &["x", "v"]);
        let ab = eng.tor_table(&m, &n, 6).unwrap();
        let ba = eng.tor_table(&n, &m, 6).unwrap();
        assert_eq!(ab.entries, ba.entries);
    }

    #[test]
    fn theta_values_on_the_quadric() {
        let rs = quadric();
        let eng = engine();
        let p = cyc(&rs, BaseRing::Quotient, &["x", "y"]);
        let q = cyc(&rs, BaseRing::Quotient, &["x", "v"]);
        let uv = cyc(&rs, BaseRing::Quotient, &["u", "v"]);
        let free = ModulePresentation::free(&rs, BaseRing::Quotient, 1);

        let t = eng.theta(&p, &uv).unwrap();
        assert_eq!(t.value, 1);
        assert_eq!(t.e_used, 3);
        assert_eq!(t.evidence, [0, 1, 0, 1]);

        // Even entries vanish from index 2 on while odd entries are k, so
        // the stable difference is -1; the self-pairing gives +1, and the
        // two must be negatives of each other because P + Q presents a
        // free module in any additive invariant.
        let t = eng.theta(&p, &q).unwrap();
        assert_eq!(t.value, -1);
        let t = eng.theta(&p, &p).unwrap();
        assert_eq!(t.value, 1);

        let t = eng.theta(&free, &p).unwrap();
        assert_eq!(t.value, 0);
    }

    #[test]
    fn theta_is_additive_on_direct_sums() {
        let rs = quadric();
        let eng = engine();
        let p = cyc(&rs, BaseRing::Quotient, &["x", "y"]);
        let q = cyc(&rs, BaseRing::Quotient, &["x", "v"]);
        let uv = cyc(&rs, BaseRing::Quotient, &["u", "v"]);
        let sum = p.dirsum(&q).unwrap();
        for n in [&p, &uv] {
            let lhs = eng.theta(&sum, n).unwrap().value;
            let rhs = eng.theta(&p, n).unwrap().value + eng.theta(&q, n).unwrap().value;
            assert_eq!(lhs, rhs);
            // The two summands cancel against any argument.
            assert_eq!(lhs, 0);
        }
    }

    #[test]
    fn chi_of_disjoint_planes_is_one() {
        let rs = quadric();
        let eng = engine();
        let m = cyc(&rs, BaseRing::Ambient, &["x", "y"]);
        let n = cyc(&rs, BaseRing::Ambient, &["u", "v"]);
        let c = eng.chi(&m, &n, 0).unwrap();
        assert_eq!(c.value, 1);
    }

    #[test]
    fn chi_in_one_variable() {
        let rs = RingSpec::polynomial(PolyRing::standard(FieldSpec::default_prime(), &["x"]));
        let eng = engine();
        let m = cyc(&rs, BaseRing::Ambient, &["x"]);
        assert_eq!(eng.chi(&m, &m, 0).unwrap().value, 0);
        assert_eq!(eng.chi(&m, &m, 1).unwrap().value, 1);
    }

    #[test]
    fn chi_detects_infinite_lengths() {
        let rs = quadric();
        let eng = engine();
        let m = cyc(&rs, BaseRing::Ambient, &["x", "y"]);
        let n = cyc(&rs, BaseRing::Ambient, &["x", "v"]);
        assert!(matches!(
            eng.chi(&m, &n, 0),
            Err(EngineError::InfiniteLengthAt { index: 0 })
        ));
    }

    #[test]
    fn depths_on_the_quadric() {
        let rs = quadric();
        let eng = engine();
        let k = cyc(&rs, BaseRing::Quotient, &["x", "y", "u", "v"]);
        assert_eq!(eng.depth(&k).unwrap(), 0);
        let r_free = ModulePresentation::free(&rs, BaseRing::Quotient, 1);
        assert_eq!(eng.depth(&r_free).unwrap(), 3);
        let p = cyc(&rs, BaseRing::Quotient, &["x", "y"]);
        assert_eq!(eng.depth(&p).unwrap(), 2);
        let zero = cyc(&rs, BaseRing::Quotient, &["1"]);
        assert!(matches!(eng.depth(&zero), Err(EngineError::ZeroModule)));
    }

    #[test]
    fn depth_formula_on_a_regular_ring() {
        let rs = RingSpec::polynomial(PolyRing::standard(FieldSpec::default_prime(), &["x", "y"]));
        let eng = engine();
        let m = cyc(&rs, BaseRing::Ambient, &["x"]);
        let n = cyc(&rs, BaseRing::Ambient, &["y"]);
        let table = eng.tor_table(&m, &n, 4).unwrap();
        let rep = eng.check_depth_formula(&m, &n, &table).unwrap();
        assert!(rep.holds);
        assert_eq!(
            (rep.depth_m, rep.depth_n, rep.depth_ring, rep.depth_tensor),
            (1, 1, 2, 0)
        );

        // Self-intersection has Tor_1 = k: hypothesis fails.
        let t2 = eng.tor_table(&m, &m, 4).unwrap();
        assert!(matches!(
            eng.check_depth_formula(&m, &m, &t2),
            Err(EngineError::HypothesisNotMet(_))
        ));
    }

    #[test]
    fn decency_reports_on_the_quadric() {
        let rs = quadric();
        let eng = engine();
        let p = cyc(&rs, BaseRing::Quotient, &["x", "y"]);
        let uv = cyc(&rs, BaseRing::Quotient, &["u", "v"]);
        let rep = eng.decency_check(&p, &uv).unwrap();
        assert_eq!((rep.dim_m, rep.dim_n, rep.dim_ring), (Some(2), Some(2), 3));
        assert!(!rep.decent);
        assert_eq!(rep.theta, 1);
        assert!(rep.consistent);

        let k = cyc(&rs, BaseRing::Quotient, &["x", "y", "u", "v"]);
        let rep = eng.decency_check(&k, &k).unwrap();
        assert!(rep.decent);
        assert_eq!(rep.theta, 0);
        assert!(rep.consistent);

        let yu = cyc(&rs, BaseRing::Quotient, &["y", "u"]);
        assert!(matches!(
            eng.decency_check(&p, &yu),
            Err(EngineError::NotFiniteIntersection)
        ));
    }

    #[test]
    fn rigidity_probe_finds_the_least_gap() {
        let rs = quadric();
        let eng = engine();
        let free = ModulePresentation::free(&rs, BaseRing::Quotient, 1);
        let p = cyc(&rs, BaseRing::Quotient, &["x", "y"]);
        assert_eq!(eng.rigidity_probe(&free, &p, 6).unwrap(), None);

        // Tor_2 = 0 but Tor_3 = k for the pair of planes meeting in a line.
        let q = cyc(&rs, BaseRing::Quotient, &["x", "v"]);
        let w = eng.rigidity_probe(&p, &q, 10).unwrap().unwrap();
        assert_eq!((w.vanishes_at, w.nonzero_at), (2, 3));
    }

    #[test]
    fn singular_loci_of_the_corpus_hypersurfaces() {
        let eng = engine();
        let rep = eng.singular_locus(&quadric()).unwrap();
        assert_eq!(rep.dim, Some(0));
        assert!(rep.isolated);
        assert!(!rep.char_caveat);

        let r = PolyRing::standard(FieldSpec::default_prime(), &["x", "y", "u"]);
        let f = parse_poly(&r, "x*y").unwrap();
        let node3 = RingSpec::hypersurface(r, f).unwrap();
        let rep = eng.singular_locus(&node3).unwrap();
        assert_eq!(rep.dim, Some(1));
        assert!(!rep.isolated);

        let r = PolyRing::standard(FieldSpec::default_prime(), &["x", "y", "z"]);
        let f = parse_poly(&r, "x^3 + y^3 + z^3").unwrap();
        let cone = RingSpec::hypersurface(r, f).unwrap();
        let rep = eng.singular_locus(&cone).unwrap();
        assert_eq!(rep.dim, Some(0));
        assert!(rep.isolated);

        // Characteristic-3 caveat: the partials of x^3 + y^3 + z^3 vanish.
        let r = PolyRing::standard(FieldSpec::Prime(3), &["x", "y", "z"]);
        let f = parse_poly(&r, "x^3 + y^3 + z^3").unwrap();
        let bad = RingSpec::hypersurface(r, f).unwrap();
        let rep = eng.singular_locus(&bad).unwrap();
        assert!(rep.char_caveat);
        assert_eq!(rep.dim, Some(2));
    }

    #[test]
    fn ipd_locus_on_the_quadric() {
        let rs = quadric();
        let eng = engine();
        let free = ModulePresentation::free(&rs, BaseRing::Quotient, 1);
        assert_eq!(eng.ipd_locus_dim(&free).unwrap(), None);
        let p = cyc(&rs, BaseRing::Quotient, &["x", "y"]);
        assert_eq!(eng.ipd_locus_dim(&p).unwrap(), Some(0));
    }

    #[test]
    fn frobenius_tables() {
        // Over R = F_2[x]/(x^2) the twist turns the differential x into
        // x^2 = 0 in R, so every homology module is R itself, of length 2.
        // Cross-check: the ring seen through Frobenius is k^2 as a module,
        // and Tor_i(k, k^2) = k^2 for every i.
        let r = PolyRing::standard(FieldSpec::Prime(2), &["x"]);
        let f = parse_poly(&r, "x^2").unwrap();
        let rs = RingSpec::hypersurface(r, f).unwrap();
        let eng = engine();
        let k = cyc(&rs, BaseRing::Quotient, &["x"]);
        let t = eng.frobenius_tor_table(&k, 1, 6).unwrap();
        for i in 0..=6 {
            assert_eq!(t.entries[i], TorEntry::Length(2), "index {i}");
        }

        // A free module has no higher entries.
        let rs4 = quadric();
        let free = ModulePresentation::free(&rs4, BaseRing::Quotient, 1);
        let t = eng.frobenius_tor_table(&free, 1, 4).unwrap();
        for i in 1..=4 {
            assert!(t.entries[i].is_zero());
        }

        // Finite projective dimension: higher entries vanish after the
        // twist as well (the twisted complex of `0 -> R -x^q-> R` stays
        // exact above spot 0 because x^q is a nonzerodivisor). Small
        // characteristic keeps the twisted degrees manageable.
        let r2 = PolyRing::standard(FieldSpec::Prime(2), &["x", "y", "u", "v"]);
        let f2 = parse_poly(&r2, "x*u - y*v").unwrap();
        let rs2 = RingSpec::hypersurface(r2, f2).unwrap();
        let m = cyc(&rs2, BaseRing::Quotient, &["x"]);
        let t = eng.frobenius_tor_table(&m, 1, 4).unwrap();
        for i in 1..=4 {
            assert!(t.entries[i].is_zero(), "index {i}");
        }
        assert!(matches!(t.entries[0], TorEntry::Posdim(_)));

        // Characteristic zero is rejected.
        let rq = PolyRing::standard(FieldSpec::Rationals, &["x"]);
        let fq = parse_poly(&rq, "x^2").unwrap();
        let rsq = RingSpec::hypersurface(rq, fq).unwrap();
        let kq = cyc(&rsq, BaseRing::Quotient, &["x"]);
        assert!(matches!(
            eng.frobenius_tor_table(&kq, 1, 3),
            Err(EngineError::WrongCharacteristic(_))
        ));
    }

    #[test]
    fn exactness_verdicts() {
        let rs = quadric();
        let eng = engine();
        // 0 -> S -f-> S -> S/(f) -> 0 presented as the two-term free
        // complex: exact at the left spot, homology S/(f) at the right.
        let f = rs.f.clone().unwrap();
        let a = &rs.ambient;
        let mut d = PolyMatrix::zero(a, 1, 1);
        *d.at_mut(0, 0) = f;
        d.reinfer_col_degs().unwrap();
        let c = crate::modules::FreeComplex {
            ring: rs.clone(),
            base: BaseRing::Ambient,
            rank0: 1,
            degs0: vec![0],
            diffs: vec![d],
        };
        let rep = eng.verify_exact(&c.to_pres_complex()).unwrap();
        assert_eq!(rep.exact, vec![false, true]);

        // The two-variable Koszul complex over the quadric is not exact in
        // the middle: (u, -v) is a relation not generated by the trivial one.
        let kz = koszul_complex(&rs, BaseRing::Quotient, &pl(a, &["x", "y"])).unwrap();
        let rep = eng.verify_exact(&kz.to_pres_complex()).unwrap();
        assert!(!rep.exact[1]);
    }

    #[test]
    fn fli_index_never_increases_when_the_window_grows() {
        let rs = quadric();
        let eng = engine();
        let m = cyc(&rs, BaseRing::Quotient, &["x", "y"]);
        let n = cyc(&rs, BaseRing::Quotient, &["x", "v"]);
        let short = eng.tor_table(&m, &n, 6).unwrap();
        let long = eng.tor_table(&m, &n, 12).unwrap();
        assert!(long.fli_index.unwrap() <= short.fli_index.unwrap());
    }
}
