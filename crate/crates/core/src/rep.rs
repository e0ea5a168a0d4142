//! Finite-dimensional modules as representations of a [`QuiverWindow`].
//!
//! A representation stores a dimension for every vertex of its window and a
//! matrix (`dim target × dim source`) for every arrow of the window. Modules
//! built on different windows are compared by embedding both into the union
//! window; supports are finite, so the zero padding loses nothing.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::{Arrow, Path2, QuiverWindow, Relation, Vertex};
use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Representation {
    field: Field,
    window: QuiverWindow,
    dims: BTreeMap<Vertex, usize>,
    mats: BTreeMap<Arrow, Matrix>,
}

/// A relation that fails on a representation, with the offending composite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationViolation {
    pub relation: Relation,
    pub residual: Matrix,
}

impl fmt::Display for RelationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} evaluates to {:?}", self.relation, self.residual)
    }
}

impl Representation {
    /// Builds a representation, filling omitted dimensions and arrows with zeros.
    ///
    /// Fails on vertices or nonzero arrows outside the window and on matrices
    /// whose shape disagrees with the dimensions. Relations are not checked
    /// here; see [`Representation::validate`].
    pub fn new(
        field: Field,
        window: QuiverWindow,
        dims: BTreeMap<Vertex, usize>,
        mats: BTreeMap<Arrow, Matrix>,
    ) -> Result<Representation> {
        let mut full_dims = BTreeMap::new();
        for &v in window.vertices() {
            full_dims.insert(v, 0);
        }
        for (v, d) in dims {
            if !window.contains_vertex(v) {
                if d == 0 {
                    continue;
                }
                return Err(Error::ShapeMismatch(format!("vertex {v} lies outside the window")));
            }
            full_dims.insert(v, d);
        }
        let mut full_mats = BTreeMap::new();
        for &a in window.arrows() {
            let shape = (full_dims[&a.target()], full_dims[&a.source()]);
            full_mats.insert(a, Matrix::zeros(field, shape.0, shape.1));
        }
        for (a, m) in mats {
            if m.field() != field {
                return Err(Error::FieldMismatch(m.field().to_string(), field.to_string()));
            }
            if !window.contains_arrow(a) {
                if m.is_zero() {
                    continue;
                }
                return Err(Error::ShapeMismatch(format!("arrow {a} lies outside the window")));
            }
            let shape = (full_dims[&a.target()], full_dims[&a.source()]);
            if m.shape() != shape {
                return Err(Error::ShapeMismatch(format!(
                    "arrow {a} has a {}x{} matrix, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    shape.0,
                    shape.1
                )));
            }
            full_mats.insert(a, m);
        }
        Ok(Representation {
            field,
            window,
            dims: full_dims,
            mats: full_mats,
        })
    }

    /// [`Representation::new`] followed by a relation check.
    pub fn new_valid(
        field: Field,
        window: QuiverWindow,
        dims: BTreeMap<Vertex, usize>,
        mats: BTreeMap<Arrow, Matrix>,
    ) -> Result<Representation> {
        let rep = Representation::new(field, window, dims, mats)?;
        let violations = rep.validate();
        if let Some(v) = violations.first() {
            return Err(Error::RelationViolation(v.to_string()));
        }
        Ok(rep)
    }

    pub fn zero(field: Field, window: QuiverWindow) -> Representation {
        Representation::new(field, window, BTreeMap::new(), BTreeMap::new())
            .expect("zero representation is well-formed")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn window(&self) -> &QuiverWindow {
        &self.window
    }

    pub fn dim(&self, v: Vertex) -> usize {
        self.dims.get(&v).copied().unwrap_or(0)
    }

    /// Matrix of an arrow; zero (of the right shape) for arrows outside the window.
    pub fn mat(&self, a: Arrow) -> Cow<'_, Matrix> {
        match self.mats.get(&a) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(Matrix::zeros(self.field, self.dim(a.target()), self.dim(a.source()))),
        }
    }

    pub fn arrow_matrices(&self) -> &BTreeMap<Arrow, Matrix> {
        &self.mats
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Nonzero dimensions only.
    pub fn dim_vector(&self) -> BTreeMap<Vertex, usize> {
        self.dims.iter().filter(|(_, &d)| d > 0).map(|(&v, &d)| (v, d)).collect()
    }

    pub fn support(&self) -> Vec<Vertex> {
        self.dim_vector().into_keys().collect()
    }

    pub fn composite(&self, p: Path2) -> Matrix {
        &*self.mat(p.second) * &*self.mat(p.first)
    }

    /// Relations of the window that fail on this representation.
    pub fn validate(&self) -> Vec<RelationViolation> {
        let mut out = Vec::new();
        for &relation in self.window.relations() {
            let residual = match relation {
                Relation::Commutativity { lhs, rhs } => &self.composite(lhs) - &self.composite(rhs),
                Relation::Zero(p) => self.composite(p),
            };
            if !residual.is_zero() {
                out.push(RelationViolation { relation, residual });
            }
        }
        out
    }

    /// Re-embeds into a window that contains the support.
    pub fn with_window(&self, window: &QuiverWindow) -> Representation {
        let dims = self.dim_vector();
        let mats = self.mats.iter().filter(|(_, m)| !m.is_zero()).map(|(&a, m)| (a, m.clone())).collect();
        Representation::new(self.field, window.clone(), dims, mats)
            .expect("window must contain the support")
    }

    /// Shrinks the window to the bounding box of the support (unchanged for the zero module).
    pub fn trimmed(&self) -> Representation {
        let support = self.support();
        let (Some(lo), Some(hi)) = (support.iter().map(|v| v.z).min(), support.iter().map(|v| v.z).max())
        else {
            return self.clone();
        };
        self.with_window(&QuiverWindow::new(lo, hi).expect("min <= max"))
    }

    /// Relabels every index `z` as `z + k`; matrices are unchanged.
    pub fn shifted(&self, k: i64) -> Representation {
        let dims = self.dims.iter().map(|(v, &d)| (v.shifted(k), d)).collect();
        let mats = self.mats.iter().map(|(a, m)| (a.shifted(k), m.clone())).collect();
        Representation::new(self.field, self.window.shifted(k), dims, mats).expect("shift is well-formed")
    }

    /// Builds a new representation on the same field from explicit parts.
    pub(crate) fn from_parts(
        field: Field,
        window: QuiverWindow,
        dims: BTreeMap<Vertex, usize>,
        mats: BTreeMap<Arrow, Matrix>,
    ) -> Representation {
        Representation::new(field, window, dims, mats).expect("internally constructed module")
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Representation<{}>[{}..{}] dims {{", self.field, self.window.z_min(), self.window.z_max())?;
        for (i, (v, d)) in self.dim_vector().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}: {d}")?;
        }
        write!(f, "}}")?;
        for (a, m) in &self.mats {
            if !m.is_zero() {
                write!(f, " {a}={m:?}")?;
            }
        }
        Ok(())
    }
}

/// Compact label `1@0:1 2@0:2`.
pub fn dim_vector_label(m: &Representation) -> String {
    let parts: Vec<String> = m.dim_vector().iter().map(|(v, d)| format!("{v}:{d}")).collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}

fn check_fields(m: &Representation, n: &Representation) -> Result<()> {
    if m.field != n.field {
        return Err(Error::FieldMismatch(m.field.to_string(), n.field.to_string()));
    }
    Ok(())
}

/// A module homomorphism given by one matrix per vertex.
///
/// Components are sparse: a missing vertex means the zero map there. A
/// morphism does not own its source and target; functions that need them take
/// the modules alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    comps: BTreeMap<Vertex, Matrix>,
}

impl Morphism {
    pub fn from_components(comps: BTreeMap<Vertex, Matrix>) -> Morphism {
        let comps = comps.into_iter().filter(|(_, m)| m.rows() > 0 && m.cols() > 0).collect();
        Morphism { comps }
    }

    pub fn zero() -> Morphism {
        Morphism { comps: BTreeMap::new() }
    }

    pub fn identity(m: &Representation) -> Morphism {
        Morphism::from_components(
            m.dim_vector().into_iter().map(|(v, d)| (v, Matrix::identity(m.field, d))).collect(),
        )
    }

    pub fn components(&self) -> &BTreeMap<Vertex, Matrix> {
        &self.comps
    }

    /// Component at `v` as a `dim_target(v) × dim_source(v)` matrix.
    pub fn component(&self, v: Vertex, source: &Representation, target: &Representation) -> Matrix {
        match self.comps.get(&v) {
            Some(m) => m.clone(),
            None => Matrix::zeros(source.field, target.dim(v), source.dim(v)),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Morphism) -> Morphism {
        let comps = self
            .comps
            .iter()
            .filter_map(|(v, g)| first.comps.get(v).map(|f| (*v, g * f)))
            .collect();
        Morphism::from_components(comps)
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        let mut comps = self.comps.clone();
        for (v, m) in &other.comps {
            let sum = match comps.get(v) {
                Some(x) => x + m,
                None => m.clone(),
            };
            comps.insert(*v, sum);
        }
        Morphism::from_components(comps)
    }

    pub fn scale(&self, s: &Scalar) -> Morphism {
        Morphism::from_components(self.comps.iter().map(|(v, m)| (*v, m.scale(s))).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(Matrix::is_zero)
    }

    /// Checks shapes and `f_target(a) · M_a = N_a · f_source(a)` for every arrow.
    pub fn is_intertwiner(&self, source: &Representation, target: &Representation) -> bool {
        for (v, m) in &self.comps {
            if m.shape() != (target.dim(*v), source.dim(*v)) {
                return false;
            }
        }
        let window = source.window.union(&target.window);
        window.arrows().iter().all(|&a| {
            let lhs = &self.component(a.target(), source, target) * &source.mat(a);
            let rhs = &*target.mat(a) * &self.component(a.source(), source, target);
            lhs == rhs
        })
    }

    /// True when every component over the union of supports is square and invertible.
    pub fn is_isomorphism(&self, source: &Representation, target: &Representation) -> bool {
        if source.dim_vector() != target.dim_vector() {
            return false;
        }
        source
            .support()
            .into_iter()
            .all(|v| self.component(v, source, target).is_invertible())
    }

    pub fn is_injective(&self, source: &Representation, target: &Representation) -> bool {
        source.support().into_iter().all(|v| self.component(v, source, target).rank() == source.dim(v))
    }

    pub fn is_surjective(&self, source: &Representation, target: &Representation) -> bool {
        target.support().into_iter().all(|v| self.component(v, source, target).rank() == target.dim(v))
    }

    /// Coordinates in the flattened layout of `Hom(source, target)`.
    pub fn flatten(&self, layout: &HomLayout) -> Vec<Scalar> {
        let mut out = vec![layout.field.zero(); layout.len];
        for block in &layout.blocks {
            if let Some(m) = self.comps.get(&block.vertex) {
                for r in 0..block.rows {
                    for c in 0..block.cols {
                        out[block.offset + r * block.cols + c] = m.get(r, c).clone();
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
struct HomBlock {
    vertex: Vertex,
    rows: usize,
    cols: usize,
    offset: usize,
}

/// Variable layout of `Hom(M, N)`: one `dim N(v) × dim M(v)` block per vertex.
#[derive(Clone, Debug)]
pub struct HomLayout {
    field: Field,
    blocks: Vec<HomBlock>,
    len: usize,
}

impl HomLayout {
    pub fn new(source: &Representation, target: &Representation) -> HomLayout {
        let window = source.window.union(&target.window);
        let mut blocks = Vec::new();
        let mut offset = 0;
        for &v in window.vertices() {
            let (rows, cols) = (target.dim(v), source.dim(v));
            if rows > 0 && cols > 0 {
                blocks.push(HomBlock { vertex: v, rows, cols, offset });
                offset += rows * cols;
            }
        }
        HomLayout {
            field: source.field,
            blocks,
            len: offset,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn unflatten(&self, x: &[Scalar]) -> Morphism {
        let mut comps = BTreeMap::new();
        for b in &self.blocks {
            let data = x[b.offset..b.offset + b.rows * b.cols].to_vec();
            comps.insert(b.vertex, Matrix::from_flat(self.field, b.rows, b.cols, data));
        }
        Morphism::from_components(comps)
    }

    fn offset_of(&self, v: Vertex) -> Option<&HomBlock> {
        self.blocks.iter().find(|b| b.vertex == v)
    }

    /// Columns are the flattened morphisms.
    pub fn to_matrix(&self, morphisms: &[Morphism]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = morphisms.iter().map(|f| f.flatten(self)).collect();
        Matrix::from_columns(self.field, self.len, &cols)
    }
}

/// The intertwining equations of `Hom(M, N)` as a matrix acting on the flattened layout.
fn hom_system(m: &Representation, n: &Representation, layout: &HomLayout) -> Matrix {
    let field = m.field;
    let window = m.window.union(&n.window);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for &a in window.arrows() {
        let (v, w) = (a.source(), a.target());
        let (ma, na) = (m.mat(a), n.mat(a));
        let (bv, bw) = (layout.offset_of(v), layout.offset_of(w));
        if bv.is_none() && bw.is_none() {
            continue;
        }
        // (h_w M_a - N_a h_v)[i, j] for i < dim N(w), j < dim M(v).
        for i in 0..n.dim(w) {
            for j in 0..m.dim(v) {
                let mut row = vec![field.zero(); layout.len];
                if let Some(b) = bw {
                    for k in 0..b.cols {
                        let c = ma.get(k, j);
                        if !c.is_zero() {
                            let idx = b.offset + i * b.cols + k;
                            row[idx] = &row[idx] + c;
                        }
                    }
                }
                if let Some(b) = bv {
                    for k in 0..b.rows {
                        let c = na.get(i, k);
                        if !c.is_zero() {
                            let idx = b.offset + k * b.cols + j;
                            row[idx] = &row[idx] - c;
                        }
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let nrows = rows.len();
    Matrix::from_fn(field, nrows, layout.len, |r, c| rows[r][c].clone())
}

/// Basis of `Hom(M, N)`.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<Morphism>> {
    check_fields(m, n)?;
    let layout = HomLayout::new(m, n);
    if layout.is_empty() {
        return Ok(Vec::new());
    }
    let kernel = hom_system(m, n, &layout).kernel_basis();
    Ok(kernel.columns().iter().map(|x| layout.unflatten(x)).collect())
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    check_fields(m, n)?;
    let layout = HomLayout::new(m, n);
    if layout.is_empty() {
        return Ok(0);
    }
    Ok(layout.len - hom_system(m, n, &layout).rank())
}

/// Direct sum of several modules on the union window, with the summand inclusions
/// and projections.
pub struct DirectSum {
    pub module: Representation,
    pub inclusions: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

pub fn direct_sum_all(field: Field, parts: &[&Representation]) -> Result<DirectSum> {
    let Some(first) = parts.first() else {
        return Err(Error::Precondition("direct sum of no modules".into()));
    };
    let mut window = first.window.clone();
    for p in parts {
        if p.field != field {
            return Err(Error::FieldMismatch(p.field.to_string(), field.to_string()));
        }
        window = window.union(&p.window);
    }
    let mut dims = BTreeMap::new();
    for &v in window.vertices() {
        dims.insert(v, parts.iter().map(|p| p.dim(v)).sum());
    }
    let mut mats = BTreeMap::new();
    for &a in window.arrows() {
        let blocks: Vec<Matrix> = parts.iter().map(|p| p.mat(a).into_owned()).collect();
        let refs: Vec<&Matrix> = blocks.iter().collect();
        mats.insert(a, Matrix::block_diag(field, &refs));
    }
    let module = Representation::from_parts(field, window.clone(), dims, mats);
    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    let mut offsets: BTreeMap<Vertex, usize> = BTreeMap::new();
    for p in parts {
        let mut inc = BTreeMap::new();
        let mut proj = BTreeMap::new();
        for &v in window.vertices() {
            let d = p.dim(v);
            let total = module.dim(v);
            let off = offsets.entry(v).or_insert(0);
            let mut i = Matrix::zeros(field, total, d);
            i.put_block(*off, 0, &Matrix::identity(field, d));
            proj.insert(v, i.transpose());
            inc.insert(v, i);
            *off += d;
        }
        inclusions.push(Morphism::from_components(inc));
        projections.push(Morphism::from_components(proj));
    }
    Ok(DirectSum {
        module,
        inclusions,
        projections,
    })
}

pub fn direct_sum(m: &Representation, n: &Representation) -> Result<Representation> {
    check_fields(m, n)?;
    Ok(direct_sum_all(m.field, &[m, n])?.module)
}

/// Submodule spanned at each vertex by the columns of `basis[v]` (assumed
/// independent and closed under the arrows), with its inclusion.
pub fn submodule(m: &Representation, basis: &BTreeMap<Vertex, Matrix>) -> Result<(Representation, Morphism)> {
    let field = m.field;
    let empty = |v: Vertex| Matrix::zeros(field, m.dim(v), 0);
    let get = |v: Vertex| basis.get(&v).cloned().unwrap_or_else(|| empty(v));
    let mut dims = BTreeMap::new();
    for &v in m.window.vertices() {
        dims.insert(v, get(v).cols());
    }
    let mut mats = BTreeMap::new();
    for &a in m.window.arrows() {
        let (bs, bt) = (get(a.source()), get(a.target()));
        let image = &*m.mat(a) * &bs;
        let coords = if image.cols() == 0 || bt.cols() == 0 {
            if !image.is_zero() {
                return Err(Error::InvariantBreach(format!("subspace not closed under {a}")));
            }
            Matrix::zeros(field, bt.cols(), bs.cols())
        } else {
            bt.coordinates(&image)
                .ok_or_else(|| Error::InvariantBreach(format!("subspace not closed under {a}")))?
        };
        mats.insert(a, coords);
    }
    let sub = Representation::from_parts(field, m.window.clone(), dims, mats);
    let incl = Morphism::from_components(m.window.vertices().iter().map(|&v| (v, get(v))).collect());
    Ok((sub, incl))
}

/// Quotient of `m` by the submodule spanned by `basis`, with the projection.
///
/// Each quotient space is represented by the standard basis vectors chosen
/// greedily outside the subspace.
pub fn quotient(m: &Representation, basis: &BTreeMap<Vertex, Matrix>) -> Result<(Representation, Morphism)> {
    let field = m.field;
    let mut proj = BTreeMap::new();
    let mut lift = BTreeMap::new();
    let mut dims = BTreeMap::new();
    for &v in m.window.vertices() {
        let d = m.dim(v);
        let sub = basis.get(&v).cloned().unwrap_or_else(|| Matrix::zeros(field, d, 0));
        let picks = sub.complement_columns(&Matrix::identity(field, d));
        let comp = Matrix::identity(field, d).select_columns(&picks);
        // Coordinates in [sub | comp], keep the comp part.
        let full = Matrix::hstack(field, d, &[&sub, &comp]);
        let inv = full.inverse().ok_or_else(|| Error::InvariantBreach("subspace basis is dependent".into()))?;
        let p = inv.block(sub.cols(), 0, comp.cols(), d);
        dims.insert(v, comp.cols());
        proj.insert(v, p);
        lift.insert(v, comp);
    }
    let mut mats = BTreeMap::new();
    for &a in m.window.arrows() {
        mats.insert(a, &(&proj[&a.target()] * &m.mat(a)) * &lift[&a.source()]);
    }
    let q = Representation::from_parts(field, m.window.clone(), dims, mats);
    Ok((q, Morphism::from_components(proj)))
}

/// `End(M)` with structure constants on the basis returned by [`hom_basis`].
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub basis: Vec<Morphism>,
    /// `products[i][j]` = coordinates of `basis[i] ∘ basis[j]`.
    pub products: Vec<Vec<Vec<Scalar>>>,
}

impl EndAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn end_algebra(m: &Representation) -> Result<EndAlgebra> {
    let basis = hom_basis(m, m)?;
    let d = basis.len();
    if d == 0 {
        return Ok(EndAlgebra { basis, products: Vec::new() });
    }
    let layout = HomLayout::new(m, m);
    let b = layout.to_matrix(&basis);
    let mut prods = Vec::with_capacity(d * d);
    for x in &basis {
        for y in &basis {
            prods.push(x.after(y));
        }
    }
    let rhs = layout.to_matrix(&prods);
    let sol = b
        .solve(&rhs)?
        .ok_or_else(|| Error::InvariantBreach("End(M) not closed under composition".into()))?;
    let coords = sol.particular;
    let products = (0..d)
        .map(|i| (0..d).map(|j| coords.column(i * d + j)).collect())
        .collect();
    Ok(EndAlgebra { basis, products })
}

/// Outcome of a semi-decision procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
    Undecided(String),
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes)
    }
}

/// Local-endomorphism-ring test using the trace form `(x, y) ↦ tr(L_{xy})`.
///
/// The radical of that form is the Jacobson radical in characteristic 0 and
/// when `p > dim End(M)`; other characteristics are reported as undecided.
pub fn is_indecomposable(m: &Representation) -> Result<Decision> {
    if m.is_zero() {
        return Ok(Decision::No);
    }
    let end = end_algebra(m)?;
    let d = end.dim();
    let p = m.field.characteristic();
    if p != 0 && p <= d as u64 {
        return Ok(Decision::Undecided(format!(
            "trace-form radical test needs characteristic 0 or p > {d}"
        )));
    }
    let field = m.field;
    // tr(L_k) = sum_j c[k][j][j]
    let traces: Vec<Scalar> = (0..d)
        .map(|k| (0..d).fold(field.zero(), |acc, j| &acc + &end.products[k][j][j]))
        .collect();
    let form = Matrix::from_fn(field, d, d, |i, j| {
        (0..d).fold(field.zero(), |acc, k| &acc + &(&end.products[i][j][k] * &traces[k]))
    });
    Ok(if form.rank() == 1 { Decision::Yes } else { Decision::No })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    Isomorphic(Morphism),
    NotIsomorphic,
    Undecided,
}

impl IsoOutcome {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }

    pub fn witness(&self) -> Option<&Morphism> {
        match self {
            IsoOutcome::Isomorphic(f) => Some(f),
            _ => None,
        }
    }
}

/// Pseudo-random trials with a fixed seed; the sequence never changes.
const ISO_TRIALS: usize = 64;
const ISO_COEFF_BOUND: i64 = 1000;
const ISO_SEED: u64 = 0x0005_EED0_F150;
/// Over `F_p` the hom space is enumerated exhaustively up to this many points.
pub const ISO_EXHAUSTIVE_LIMIT: u64 = 1_000_000;

/// Searches for an invertible combination of a `Hom(M, N)` basis.
pub fn is_isomorphic(m: &Representation, n: &Representation) -> Result<IsoOutcome> {
    check_fields(m, n)?;
    if m.dim_vector() != n.dim_vector() {
        return Ok(IsoOutcome::NotIsomorphic);
    }
    if m.is_zero() {
        return Ok(IsoOutcome::Isomorphic(Morphism::zero()));
    }
    let basis = hom_basis(m, n)?;
    let d = basis.len();
    if d == 0 {
        return Ok(IsoOutcome::NotIsomorphic);
    }
    // Isomorphic modules have equal hom dimensions in all four directions.
    if hom_dim(m, m)? != d || hom_dim(n, n)? != d || hom_dim(n, m)? != d {
        return Ok(IsoOutcome::NotIsomorphic);
    }
    let field = m.field;
    let combine = |coeffs: &[i64]| {
        coeffs
            .iter()
            .zip(&basis)
            .filter(|(c, _)| **c != 0)
            .fold(Morphism::zero(), |acc, (c, f)| acc.add(&f.scale(&field.from_i64(*c))))
    };
    let try_coeffs = |coeffs: &[i64]| {
        let f = combine(coeffs);
        f.is_isomorphism(m, n).then_some(f)
    };
    for i in 0..d {
        let mut unit = vec![0; d];
        unit[i] = 1;
        if let Some(f) = try_coeffs(&unit) {
            return Ok(IsoOutcome::Isomorphic(f));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ISO_SEED);
    for _ in 0..ISO_TRIALS {
        let coeffs: Vec<i64> = (0..d).map(|_| rng.gen_range(-ISO_COEFF_BOUND..=ISO_COEFF_BOUND)).collect();
        if let Some(f) = try_coeffs(&coeffs) {
            return Ok(IsoOutcome::Isomorphic(f));
        }
    }
    if let Field::Prime(p) = field {
        let points = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
        if points <= ISO_EXHAUSTIVE_LIMIT as u128 {
            let mut coeffs = vec![0i64; d];
            loop {
                if let Some(f) = try_coeffs(&coeffs) {
                    return Ok(IsoOutcome::Isomorphic(f));
                }
                // odometer increment
                let mut i = 0;
                while i < d {
                    coeffs[i] += 1;
                    if coeffs[i] < p as i64 {
                        break;
                    }
                    coeffs[i] = 0;
                    i += 1;
                }
                if i == d {
                    return Ok(IsoOutcome::NotIsomorphic);
                }
            }
        }
    }
    Ok(IsoOutcome::Undecided)
}
