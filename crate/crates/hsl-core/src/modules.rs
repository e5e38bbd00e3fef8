//! Finitely generated graded modules presented as subquotients of free
//! modules, over the ambient ring `S` or the hypersurface quotient `R = S/(f)`.
//!
//! All matrices are stored as lifts to `S`. Over `R`, the columns `f*e_i`
//! are implicit extra relations: membership and equality are tested with
//! them adjoined, and stored relation matrices never list them.

use crate::error::{EngineError, Result};
use crate::groebner::{
    is_member, module_gb, module_quotient_length, syzygies, GbOptions, ModVec, ModuleOrder,
};
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::ring::RingSpec;

/// Which ring a presentation is a module over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseRing {
    /// The ambient polynomial ring `S`.
    Ambient,
    /// The hypersurface quotient `R = S/(f)` (same as `S` when `f` is absent).
    Quotient,
}

/// A subquotient `(<gens> + <rels>) / <rels>` of a graded free module.
///
/// `gens` and `rels` are `ambient_rank x *` matrices whose columns live in
/// the free module `F` with generator degrees `ambient_degs`. A cokernel
/// presentation is the special case `gens = identity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulePresentation {
    pub ring: RingSpec,
    pub base: BaseRing,
    pub ambient_rank: usize,
    pub ambient_degs: Vec<i64>,
    pub gens: PolyMatrix,
    pub rels: PolyMatrix,
}

impl ModulePresentation {
    // -- constructors -------------------------------------------------------

    pub fn free(ring: &RingSpec, base: BaseRing, rank: usize) -> ModulePresentation {
        ModulePresentation::free_with_degs(ring, base, &vec![0; rank])
    }

    pub fn free_with_degs(ring: &RingSpec, base: BaseRing, degs: &[i64]) -> ModulePresentation {
        let a = &ring.ambient;
        ModulePresentation {
            ring: ring.clone(),
            base,
            ambient_rank: degs.len(),
            ambient_degs: degs.to_vec(),
            gens: PolyMatrix::identity_with_degs(a, degs),
            rels: {
                let mut z = PolyMatrix::zero(a, degs.len(), 0);
                z.row_degs = degs.to_vec();
                z
            },
        }
    }

    /// The cokernel of a relation matrix (generators = ambient basis).
    pub fn coker(ring: &RingSpec, base: BaseRing, rels: PolyMatrix) -> Result<ModulePresentation> {
        let a = &ring.ambient;
        let rank = rels.rows;
        let degs = rels.row_degs.clone();
        let mut rels = rels;
        rels.reinfer_col_degs()?;
        Ok(ModulePresentation {
            ring: ring.clone(),
            base,
            ambient_rank: rank,
            ambient_degs: degs.clone(),
            gens: PolyMatrix::identity_with_degs(a, &degs),
            rels,
        })
    }

    /// The cyclic module `ring / (gens)`.
    pub fn cyclic(
        ring: &RingSpec,
        base: BaseRing,
        ideal: &[Polynomial],
    ) -> Result<ModulePresentation> {
        let a = &ring.ambient;
        let rels = PolyMatrix::from_rows(a, vec![ideal.to_vec()])?;
        ModulePresentation::coker(ring, base, rels)
    }

    /// Direct sum (block-diagonal generators and relations).
    pub fn dirsum(&self, other: &ModulePresentation) -> Result<ModulePresentation> {
        if self.ring != other.ring || self.base != other.base {
            return Err(EngineError::RingMismatch("direct sum across different rings".into()));
        }
        Ok(ModulePresentation {
            ring: self.ring.clone(),
            base: self.base,
            ambient_rank: self.ambient_rank + other.ambient_rank,
            ambient_degs: self
                .ambient_degs
                .iter()
                .chain(&other.ambient_degs)
                .copied()
                .collect(),
            gens: self.gens.block_diag(&other.gens)?,
            rels: self.rels.block_diag(&other.rels)?,
        })
    }

    // -- basic structure ----------------------------------------------------

    /// Number of listed generators.
    pub fn num_gens(&self) -> usize {
        self.gens.cols
    }

    pub fn gens_are_identity(&self) -> bool {
        self.gens.rows == self.gens.cols
            && (0..self.gens.rows).all(|i| {
                (0..self.gens.cols).all(|j| {
                    let e = self.gens.at(i, j);
                    if i == j {
                        e.is_unit() && self.ring.ambient.field.format(&e.terms[0].coeff) == "1"
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Does `f` act as an implicit relation here?
    fn f_active(&self) -> bool {
        self.base == BaseRing::Quotient && self.ring.f.is_some()
    }

    /// Relation columns with `f * e_i` adjoined when working over `R`.
    pub fn effective_rels(&self) -> Vec<ModVec> {
        let mut out = matrix_columns(&self.rels);
        if self.f_active() {
            let f = self.ring.f.as_ref().unwrap();
            for i in 0..self.ambient_rank {
                let mut v = ModVec::zero(&self.ring.ambient, self.ambient_rank);
                v.entries[i] = f.clone();
                out.push(v);
            }
        }
        out
    }

    fn rels_gb(&self, opts: &GbOptions) -> Result<Vec<ModVec>> {
        module_gb(&self.effective_rels(), &ModuleOrder::plain(&self.ring.ambient), opts)
    }

    /// All generators reduce into the relations.
    pub fn is_zero_module(&self, opts: &GbOptions) -> Result<bool> {
        if self.num_gens() == 0 {
            return Ok(true);
        }
        let gb = self.rels_gb(opts)?;
        let ord = ModuleOrder::plain(&self.ring.ambient);
        Ok(matrix_columns(&self.gens).iter().all(|c| is_member(c, &gb, &ord)))
    }

    /// Every entry of `gens` and `rels` homogeneous for the ambient degrees.
    pub fn is_homogeneous(&self) -> bool {
        self.gens.is_homogeneous() && self.rels.is_homogeneous()
    }

    /// Relations among the listed generators: all `t` with
    /// `gens * t` inside the relation submodule. Returned as a matrix whose
    /// columns generate that module (over `R`, up to the implicit `f`-part).
    pub fn relations_on_generators(&self, opts: &GbOptions) -> Result<PolyMatrix> {
        if self.gens_are_identity() {
            return Ok(self.rels.clone());
        }
        let g = self.num_gens();
        let mut vecs = matrix_columns(&self.gens);
        let rel_vecs = self.effective_rels();
        let total = g + rel_vecs.len();
        vecs.extend(rel_vecs);
        let syz = syzygies(&vecs, opts)?;
        let cols: Vec<ModVec> = syz
            .iter()
            .map(|s| s.slice(0, g))
            .filter(|c| !c.is_zero())
            .collect();
        let _ = total;
        matrix_from_columns(&self.ring, &self.gens.col_degs, &cols)
    }

    // -- minimization -------------------------------------------------------

    /// A minimal cokernel presentation of the same module: generators carry
    /// no unit coefficients in any relation, and the relation columns are a
    /// minimal generating set of the relation module.
    pub fn minimize(&self, opts: &GbOptions) -> Result<ModulePresentation> {
        let rels_on_gens = self.relations_on_generators(opts)?;
        let mut degs: Vec<i64> = self.gens.col_degs.clone();
        let mut t = reduce_entries(&self.ring, self.f_active(), &rels_on_gens);
        prune_unit_entries(&self.ring, &mut t, &mut degs);
        // Minimal generating set for the relation columns.
        let cols = matrix_columns(&t);
        let min = minimal_generators(&self.ring, self.f_active(), &degs, &cols, opts)?;
        let rels = matrix_from_columns(&self.ring, &degs, &min)?;
        ModulePresentation::coker(&self.ring, self.base, rels)
    }

    // -- numerical invariants ----------------------------------------------

    /// Krull dimension of the support, or None for the zero module.
    /// Computed from the maximal minors (zeroth Fitting ideal) of a minimal
    /// cokernel presentation, with `f` adjoined over `R`.
    pub fn dim(&self, opts: &GbOptions) -> Result<Option<usize>> {
        self.minimize(opts)?.coker_dim(opts)
    }

    /// [`Self::dim`] for an already-minimized cokernel presentation
    /// (generators = ambient basis), skipping re-minimization.
    pub fn coker_dim(&self, opts: &GbOptions) -> Result<Option<usize>> {
        debug_assert!(self.gens_are_identity());
        let g = self.ambient_rank;
        if g == 0 {
            return Ok(None);
        }
        let mut fitt = self.rels.minors(g);
        fitt.retain(|p| !p.is_zero());
        if self.f_active() {
            fitt.push(self.ring.f.clone().unwrap());
        }
        let gb = crate::groebner::ideal_gb(&fitt, opts)?;
        match crate::groebner::krull_dim(&self.ring.ambient, &gb) {
            Err(EngineError::UnitIdeal) => Ok(None),
            Err(e) => Err(e),
            Ok(d) => Ok(Some(d)),
        }
    }

    /// Total k-dimension of the module when finite, else None (INFINITE).
    /// Finiteness is decided by the per-position dimension test on the
    /// leading module of a cokernel presentation, never by enumeration.
    pub fn length(&self, opts: &GbOptions) -> Result<Option<u64>> {
        self.minimize(opts)?.coker_length(opts)
    }

    /// [`Self::length`] for an already-minimized cokernel presentation.
    pub fn coker_length(&self, opts: &GbOptions) -> Result<Option<u64>> {
        debug_assert!(self.gens_are_identity());
        if self.ambient_rank == 0 {
            return Ok(Some(0));
        }
        let gb = self.rels_gb(opts)?;
        let ord = ModuleOrder::plain(&self.ring.ambient);
        module_quotient_length(&self.ring.ambient, self.ambient_rank, &gb, &ord)
    }

    /// Tensor product `self (x) other`, as a cokernel presentation.
    pub fn tensor(&self, other: &ModulePresentation, opts: &GbOptions) -> Result<ModulePresentation> {
        if self.ring != other.ring || self.base != other.base {
            return Err(EngineError::RingMismatch("tensor across different rings".into()));
        }
        let a = self.minimize(opts)?;
        let b = other.minimize(opts)?;
        let ia = PolyMatrix::identity_with_degs(&self.ring.ambient, &a.ambient_degs);
        let ib = PolyMatrix::identity_with_degs(&self.ring.ambient, &b.ambient_degs);
        let left = a.rels.kronecker(&ib)?;
        let right = ia.kronecker(&b.rels)?;
        let rels = left.hcat(&right)?;
        ModulePresentation::coker(&self.ring, self.base, rels)
    }
}

// ---------------------------------------------------------------------------
// Column/matrix conversions and minimization helpers.
// ---------------------------------------------------------------------------

pub fn matrix_columns(m: &PolyMatrix) -> Vec<ModVec> {
    (0..m.cols)
        .map(|j| ModVec { ring: m.ring.clone(), entries: m.col(j) })
        .collect()
}

pub fn matrix_from_columns(
    ring: &RingSpec,
    row_degs: &[i64],
    cols: &[ModVec],
) -> Result<PolyMatrix> {
    let a = &ring.ambient;
    let mut m = PolyMatrix::zero(a, row_degs.len(), cols.len());
    m.row_degs = row_degs.to_vec();
    for (j, c) in cols.iter().enumerate() {
        if c.rank() != row_degs.len() {
            return Err(EngineError::ShapeMismatch("column rank mismatch".into()));
        }
        for i in 0..row_degs.len() {
            *m.at_mut(i, j) = c.entries[i].clone();
        }
    }
    m.reinfer_col_degs()?;
    Ok(m)
}

/// Entry-wise normal form modulo `f` (identity when `f` is inactive).
fn reduce_entries(ring: &RingSpec, f_active: bool, m: &PolyMatrix) -> PolyMatrix {
    if !f_active {
        return m.clone();
    }
    let mut out = m.map_entries(|e| ring.reduce(e));
    out.row_degs = m.row_degs.clone();
    out.col_degs = m.col_degs.clone();
    out
}

/// Removes unit (nonzero scalar) entries by row/column elimination: a unit
/// at `(i, j)` lets generator `i` be rewritten in terms of the others, so
/// row `i` and column `j` are deleted after clearing. `degs` tracks the
/// surviving generator degrees.
fn prune_unit_entries(ring: &RingSpec, m: &mut PolyMatrix, degs: &mut Vec<i64>) {
    let field = ring.ambient.field.clone();
    loop {
        let mut pivot = None;
        'search: for i in 0..m.rows {
            for j in 0..m.cols {
                if m.at(i, j).is_unit() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = pivot else { return };
        // Scale the pivot column so the pivot is exactly 1.
        let c = m.at(pi, pj).terms[0].coeff.clone();
        let inv = field.inv(&c).expect("unit entry");
        for i in 0..m.rows {
            *m.at_mut(i, pj) = m.at(i, pj).scale(&inv);
        }
        // Clear row pi from all other columns using the pivot column.
        for j in 0..m.cols {
            if j == pj || m.at(pi, j).is_zero() {
                continue;
            }
            let factor = m.at(pi, j).clone();
            for i in 0..m.rows {
                let sub = m.at(i, pj).mul(&factor);
                *m.at_mut(i, j) = m.at(i, j).sub(&sub);
            }
        }
        // Delete row pi and column pj.
        let rows: Vec<usize> = (0..m.rows).filter(|&i| i != pi).collect();
        let cols: Vec<usize> = (0..m.cols).filter(|&j| j != pj).collect();
        *m = m.select_rows(&rows).select_cols(&cols);
        degs.remove(pi);
    }
}

/// A minimal generating set of the submodule generated by homogeneous
/// `cols` (modulo the implicit `f`-part when active): greedy by ascending
/// degree with an incremental membership test, which is exact for graded
/// modules by the graded Nakayama lemma. Entries are kept in normal form
/// modulo `f`.
pub fn minimal_generators(
    ring: &RingSpec,
    f_active: bool,
    ambient_degs: &[i64],
    cols: &[ModVec],
    opts: &GbOptions,
) -> Result<Vec<ModVec>> {
    let a = &ring.ambient;
    let ord = ModuleOrder::plain(a);
    // Reduce mod f and drop zero columns.
    let mut work: Vec<(i64, usize, ModVec)> = Vec::new();
    for (idx, c) in cols.iter().enumerate() {
        let c = if f_active {
            ModVec { ring: a.clone(), entries: c.entries.iter().map(|e| ring.reduce(e)).collect() }
        } else {
            c.clone()
        };
        if c.is_zero() {
            continue;
        }
        let deg = column_degree(ambient_degs, &c)?;
        work.push((deg, idx, c));
    }
    work.sort_by_key(|(d, idx, _)| (*d, *idx));

    let mut base: Vec<ModVec> = Vec::new();
    if f_active {
        let f = ring.f.as_ref().unwrap();
        for i in 0..ambient_degs.len() {
            let mut v = ModVec::zero(a, ambient_degs.len());
            v.entries[i] = f.clone();
            base.push(v);
        }
    }
    let mut kept: Vec<ModVec> = Vec::new();
    let mut gb = module_gb(&base, &ord, opts)?;
    for (_, _, c) in work {
        if is_member(&c, &gb, &ord) {
            continue;
        }
        kept.push(c.clone());
        let mut all = base.clone();
        all.extend(kept.iter().cloned());
        gb = module_gb(&all, &ord, opts)?;
    }
    Ok(kept)
}

/// Common homogeneous degree of a column against ambient generator degrees.
fn column_degree(ambient_degs: &[i64], c: &ModVec) -> Result<i64> {
    let weights = c.ring.weights();
    let mut deg: Option<i64> = None;
    for (i, e) in c.entries.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        let d = e.homogeneous_degree().ok_or_else(|| {
            EngineError::InhomogeneousInput(format!("column entry {e} is inhomogeneous"))
        })? as i64
            + ambient_degs[i];
        match deg {
            None => deg = Some(d),
            Some(p) if p == d => {}
            Some(p) => {
                return Err(EngineError::InhomogeneousInput(format!(
                    "column mixes degrees {p} and {d}"
                )))
            }
        }
    }
    let _ = weights;
    Ok(deg.unwrap_or(0))
}

/// Generators of the kernel of the free-module map given by `d` (columns =
/// images). Over `R` (when `f_active`), the kernel is taken modulo `f`:
/// the `f * e_i` columns are adjoined before the syzygy computation and
/// their coefficients discarded.
pub fn kernel_gens(
    ring: &RingSpec,
    f_active: bool,
    d: &PolyMatrix,
    opts: &GbOptions,
) -> Result<Vec<ModVec>> {
    let a = &ring.ambient;
    let mut vecs = matrix_columns(d);
    let k = vecs.len();
    if f_active {
        let f = ring.f.as_ref().unwrap();
        for i in 0..d.rows {
            let mut v = ModVec::zero(a, d.rows);
            v.entries[i] = f.clone();
            vecs.push(v);
        }
    }
    let syz = syzygies(&vecs, opts)?;
    let mut out = Vec::new();
    for s in syz {
        let c = s.slice(0, k);
        let c = if f_active {
            ModVec { ring: a.clone(), entries: c.entries.iter().map(|e| ring.reduce(e)).collect() }
        } else {
            c
        };
        if !c.is_zero() {
            out.push(c);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Complexes.
// ---------------------------------------------------------------------------

/// A bounded complex of free modules `F_0 <- F_1 <- ... <- F_n`, with
/// `diffs[i] = d_{i+1} : F_{i+1} -> F_i` stored as S-lifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeComplex {
    pub ring: RingSpec,
    pub base: BaseRing,
    pub rank0: usize,
    pub degs0: Vec<i64>,
    pub diffs: Vec<PolyMatrix>,
}

impl FreeComplex {
    pub fn ranks(&self) -> Vec<usize> {
        let mut out = vec![self.rank0];
        out.extend(self.diffs.iter().map(|d| d.cols));
        out
    }

    /// Number of differentials stored.
    pub fn len(&self) -> usize {
        self.diffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diffs.is_empty()
    }

    /// Shape chaining and `d_i ∘ d_{i+1} = 0` (modulo `f` over `R`).
    pub fn validate(&self) -> Result<()> {
        let f_active = self.base == BaseRing::Quotient && self.ring.f.is_some();
        for (i, d) in self.diffs.iter().enumerate() {
            let expected_rows = if i == 0 { self.rank0 } else { self.diffs[i - 1].cols };
            if d.rows != expected_rows {
                return Err(EngineError::ShapeMismatch(format!(
                    "differential {} has {} rows, expected {}",
                    i + 1,
                    d.rows,
                    expected_rows
                )));
            }
            if i > 0 {
                let prod = self.diffs[i - 1].mul(d)?;
                let ok = if f_active {
                    self.ring.reduce_matrix(&prod).is_zero()
                } else {
                    prod.is_zero()
                };
                if !ok {
                    return Err(EngineError::NotAComplex { spot: i });
                }
            }
        }
        Ok(())
    }

    /// The free modules as presentations plus the differentials, for the
    /// homology engine.
    pub fn to_pres_complex(&self) -> PresComplex {
        let mut modules = Vec::with_capacity(self.len() + 1);
        modules.push(ModulePresentation::free_with_degs(&self.ring, self.base, &self.degs0));
        for d in &self.diffs {
            modules.push(ModulePresentation::free_with_degs(&self.ring, self.base, &d.col_degs));
        }
        PresComplex { modules, maps: self.diffs.clone() }
    }

    /// Tensors with a module: each free term `R^b` becomes `N^b` and the
    /// differentials act entry-wise (Kronecker with the identity on N's
    /// generators). `N` is first minimized to a cokernel presentation.
    pub fn tensor_with(&self, n: &ModulePresentation, opts: &GbOptions) -> Result<PresComplex> {
        if self.ring != n.ring || self.base != n.base {
            return Err(EngineError::RingMismatch("tensor across different rings".into()));
        }
        let n = n.minimize(opts)?;
        let g = n.ambient_rank;
        let id = PolyMatrix::identity_with_degs(&self.ring.ambient, &n.ambient_degs);
        let mut modules = Vec::with_capacity(self.len() + 1);
        let mut maps = Vec::with_capacity(self.len());
        let power = |b: usize, degs: &[i64]| -> Result<ModulePresentation> {
            let mut acc = ModulePresentation::free(&self.ring, self.base, 0);
            // N^b with ambient degrees shifted by the free generator degrees.
            for t in 0..b {
                let mut shifted = n.clone();
                for d in shifted.ambient_degs.iter_mut() {
                    *d += degs[t];
                }
                shifted.rels.row_degs = shifted.ambient_degs.clone();
                for cd in shifted.rels.col_degs.iter_mut() {
                    *cd += degs[t];
                }
                shifted.gens.row_degs = shifted.ambient_degs.clone();
                shifted.gens.col_degs = shifted.ambient_degs.clone();
                acc = acc.dirsum(&shifted)?;
            }
            Ok(acc)
        };
        modules.push(power(self.rank0, &self.degs0)?);
        for d in &self.diffs {
            modules.push(power(d.cols, &d.col_degs)?);
            let m = d.kronecker(&id)?;
            maps.push(m);
        }
        if g == 0 {
            // Tensor with the zero module: every term collapses.
        }
        Ok(PresComplex { modules, maps })
    }
}

/// A bounded complex of presented modules `C_0 <- C_1 <- ... <- C_n`;
/// `maps[i] : C_{i+1} -> C_i` is written on generators.
#[derive(Debug, Clone)]
pub struct PresComplex {
    pub modules: Vec<ModulePresentation>,
    pub maps: Vec<PolyMatrix>,
}

impl PresComplex {
    pub fn spots(&self) -> usize {
        self.modules.len()
    }

    /// Checks shapes, well-definedness of every map (relations map into
    /// relations), and composition-zero.
    pub fn validate(&self, opts: &GbOptions) -> Result<()> {
        let ord = self
            .modules
            .first()
            .map(|m| ModuleOrder::plain(&m.ring.ambient));
        let Some(ord) = ord else { return Ok(()) };
        // Precompute each module's relation data on generators.
        let mut rel_gbs: Vec<Vec<ModVec>> = Vec::with_capacity(self.modules.len());
        let mut rels_on_gens: Vec<PolyMatrix> = Vec::with_capacity(self.modules.len());
        for m in &self.modules {
            let t = m.relations_on_generators(opts)?;
            let mut vecs = matrix_columns(&t);
            if m.f_active() {
                let f = m.ring.f.as_ref().unwrap();
                for i in 0..m.num_gens() {
                    let mut v = ModVec::zero(&m.ring.ambient, m.num_gens());
                    v.entries[i] = f.clone();
                    vecs.push(v);
                }
            }
            rel_gbs.push(module_gb(&vecs, &ord, opts)?);
            rels_on_gens.push(t);
        }
        for (i, phi) in self.maps.iter().enumerate() {
            let (src, tgt) = (&self.modules[i + 1], &self.modules[i]);
            if phi.rows != tgt.num_gens() || phi.cols != src.num_gens() {
                return Err(EngineError::ShapeMismatch(format!(
                    "map {} is {}x{}, expected {}x{}",
                    i + 1,
                    phi.rows,
                    phi.cols,
                    tgt.num_gens(),
                    src.num_gens()
                )));
            }
            // Well-defined: phi * (source relations) inside target relations.
            let src_rels = &rels_on_gens[i + 1];
            if src_rels.cols > 0 {
                let image = phi.mul(src_rels)?;
                for c in matrix_columns(&image) {
                    if !is_member(&c, &rel_gbs[i], &ord) {
                        return Err(EngineError::IllDefinedMap(format!(
                            "map into spot {i} does not preserve relations"
                        )));
                    }
                }
            }
            // Composition zero at the level of the target module.
            if i > 0 {
                let comp = self.maps[i - 1].mul(phi)?;
                for c in matrix_columns(&comp) {
                    if !is_member(&c, &rel_gbs[i - 1], &ord) {
                        return Err(EngineError::NotAComplex { spot: i });
                    }
                }
            }
        }
        Ok(())
    }

    /// Homology `ker(d_i) / im(d_{i+1})` at spot `i`, as a subquotient in
    /// the generator coordinates of `C_i`.
    pub fn homology_at(&self, i: usize, opts: &GbOptions) -> Result<ModulePresentation> {
        let m = &self.modules[i];
        let g = m.num_gens();
        let gen_degs = m.gens.col_degs.clone();
        let rels_i = m.relations_on_generators(opts)?;

        // Kernel generators of the outgoing map (identity when i = 0).
        let kernel: PolyMatrix = if i == 0 {
            PolyMatrix::identity_with_degs(&m.ring.ambient, &gen_degs)
        } else {
            let phi = &self.maps[i - 1];
            let tgt = &self.modules[i - 1];
            let tgt_rels = tgt.relations_on_generators(opts)?;
            // t in ker iff phi * t lies in the target relation module.
            let mut vecs = matrix_columns(phi);
            let mut aug = matrix_columns(&tgt_rels);
            if tgt.f_active() {
                let f = tgt.ring.f.as_ref().unwrap();
                for r in 0..tgt.num_gens() {
                    let mut v = ModVec::zero(&tgt.ring.ambient, tgt.num_gens());
                    v.entries[r] = f.clone();
                    aug.push(v);
                }
            }
            vecs.append(&mut aug);
            let syz = syzygies(&vecs, opts)?;
            let cols: Vec<ModVec> = syz
                .iter()
                .map(|s| s.slice(0, g))
                .filter(|c| !c.is_zero())
                .collect();
            matrix_from_columns(&m.ring, &gen_degs, &cols)?
        };

        // Relations: the image columns of the incoming map plus C_i's own
        // relations on generators (f-part stays implicit via base).
        let rels = if i + 1 < self.modules.len() {
            self.maps[i].hcat(&rels_i)?
        } else {
            rels_i
        };

        Ok(ModulePresentation {
            ring: m.ring.clone(),
            base: m.base,
            ambient_rank: g,
            ambient_degs: gen_degs.clone(),
            gens: kernel,
            rels,
        })
    }
}

// ---------------------------------------------------------------------------
// Koszul complexes (test fixtures and property suites).
// ---------------------------------------------------------------------------

/// The Koszul complex on the given elements: `F_k = Λ^k` with the standard
/// differentials, as a [`FreeComplex`].
pub fn koszul_complex(ring: &RingSpec, base: BaseRing, elems: &[Polynomial]) -> Result<FreeComplex> {
    let a = &ring.ambient;
    let n = elems.len();
    // Basis of Λ^k: sorted index subsets of size k, in lexicographic order.
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }
    let mut diffs = Vec::new();
    for k in 1..=n {
        let rows_basis = subsets(n, k - 1);
        let cols_basis = subsets(n, k);
        let index: std::collections::HashMap<Vec<usize>, usize> =
            rows_basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        let mut d = PolyMatrix::zero(a, rows_basis.len(), cols_basis.len());
        for (j, cb) in cols_basis.iter().enumerate() {
            for (t, &var) in cb.iter().enumerate() {
                let mut rb = cb.clone();
                rb.remove(t);
                let i = index[&rb];
                let sign = if t % 2 == 0 { elems[var].clone() } else { elems[var].neg() };
                *d.at_mut(i, j) = sign;
            }
        }
        d.reinfer_col_degs()?;
        diffs.push(d);
    }
    // Fix up row degrees so consecutive matrices chain (col degs of d_k are
    // the row degs of d_{k+1}).
    for k in 1..diffs.len() {
        let degs = diffs[k - 1].col_degs.clone();
        diffs[k].row_degs = degs;
        diffs[k].reinfer_col_degs()?;
    }
    let c = FreeComplex { ring: ring.clone(), base, rank0: 1, degs0: vec![0], diffs };
    c.validate()?;
    Ok(c)
}
