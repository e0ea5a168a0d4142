//! Lifts of modules over `k[t]/(t^n)` and the versal deformation ring.
//!
//! A lift of `M` over `k[t]/(t^n)` is stored with its reduction normalized to
//! `M` itself: every arrow carries `M_a + t X_a^(1) + … + t^(n−1) X_a^(n−1)`.
//! Two such lifts are equivalent exactly when they differ by a gauge
//! `g = I + t(…)`, so the first-order classes are cocycles modulo the
//! coboundaries `h_w M_a − M_a h_v`.
//!
//! Extending a lift one order at a time is a linear problem: the `t^k`
//! coefficient of every relation is `D(X^(k)) + (terms in lower coefficients)`,
//! where `D` is the linearized relation map. The lift extends iff the lower
//! terms lie in the image of `D`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::frobenius::{ar_translate, ext1_dim, indecomposable_projective, nakayama_shift, stable_hom_dim, syzygy};
use crate::matrix::Matrix;
use crate::quiver::{Arrow, Path2, Relation, Vertex};
use crate::rep::{dim_vector_label, direct_sum, is_indecomposable, Decision, Morphism, Representation};
use crate::scalar::{Field, Scalar};
use crate::trunc::{PolyMatrix, TruncatedRing};

pub const DEFAULT_TEST_ORDER: usize = 6;

/// A lift of `base` over `k[t]/(t^n)` whose reduction is `base` on the nose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    ring: TruncatedRing,
    base: Representation,
    /// `coeffs[a][i]` is the `t^i` coefficient of arrow `a`; `coeffs[a][0]` is `M_a`.
    coeffs: BTreeMap<Arrow, Vec<Matrix>>,
}

impl Lift {
    /// The trivial lift `k[t]/(t^n) ⊗ M`.
    pub fn trivial(base: &Representation, order: usize) -> Result<Lift> {
        let ring = TruncatedRing::new(base.field(), order)?;
        let coeffs = base
            .arrow_matrices()
            .iter()
            .map(|(&a, m)| {
                let mut cs = vec![m.clone()];
                cs.resize(order, Matrix::zeros(base.field(), m.rows(), m.cols()));
                (a, cs)
            })
            .collect();
        Ok(Lift {
            ring,
            base: base.clone(),
            coeffs,
        })
    }

    /// The lift over the dual numbers given by a first-order class.
    pub fn from_first_order(base: &Representation, class: &FirstOrderClass) -> Result<Lift> {
        let mut lift = Lift::trivial(base, 2)?;
        for (a, m) in &class.cocycle {
            let slot = lift
                .coeffs
                .get_mut(a)
                .ok_or_else(|| Error::ShapeMismatch(format!("arrow {a} is not in the module's window")))?;
            if slot[1].shape() != m.shape() {
                return Err(Error::ShapeMismatch(format!("cocycle on {a} has the wrong shape")));
            }
            slot[1] = m.clone();
        }
        lift.check()?;
        Ok(lift)
    }

    /// Builds a lift from explicit coefficients (`t^0` terms must equal the base).
    pub fn new(base: &Representation, order: usize, coeffs: BTreeMap<Arrow, Vec<Matrix>>) -> Result<Lift> {
        let mut lift = Lift::trivial(base, order)?;
        for (a, cs) in coeffs {
            let slot = lift
                .coeffs
                .get_mut(&a)
                .ok_or_else(|| Error::ShapeMismatch(format!("arrow {a} is not in the module's window")))?;
            if cs.len() != order || cs.iter().any(|c| c.shape() != slot[0].shape()) {
                return Err(Error::ShapeMismatch(format!("coefficients of {a} have the wrong shape")));
            }
            if cs[0] != slot[0] {
                return Err(Error::Precondition(format!("lift of {a} does not reduce to the base module")));
            }
            *slot = cs;
        }
        lift.check()?;
        Ok(lift)
    }

    fn check(&self) -> Result<()> {
        if self.satisfies_relations() {
            Ok(())
        } else {
            Err(Error::InconsistentLift(self.order()))
        }
    }

    pub fn ring(&self) -> TruncatedRing {
        self.ring
    }

    pub fn order(&self) -> usize {
        self.ring.order()
    }

    pub fn base(&self) -> &Representation {
        &self.base
    }

    pub fn coefficients(&self) -> &BTreeMap<Arrow, Vec<Matrix>> {
        &self.coeffs
    }

    pub fn arrow_matrix(&self, a: Arrow) -> Option<PolyMatrix> {
        self.coeffs.get(&a).map(|cs| PolyMatrix::new(self.ring, cs.clone()).expect("consistent shapes"))
    }

    /// The identification of the reduction with the base module.
    pub fn reduction_iso(&self) -> Morphism {
        Morphism::identity(&self.base)
    }

    fn coeff(&self, a: Arrow, i: usize) -> Matrix {
        match self.coeffs.get(&a) {
            Some(cs) => cs[i].clone(),
            None => self.base.mat(a).into_owned().scale(&self.base.field().zero()),
        }
    }

    /// `t^k` coefficient of the composite along `path`, using only coefficients
    /// of index `< k` when `skip_ends` is set.
    fn path_coeff(&self, path: Path2, k: usize, skip_ends: bool) -> Matrix {
        let (first, second) = (path.first, path.second);
        let field = self.base.field();
        let mut acc = Matrix::zeros(field, self.base.dim(second.target()), self.base.dim(first.source()));
        for i in 0..=k {
            let j = k - i;
            if skip_ends && (i == k || j == k) {
                continue;
            }
            acc = &acc + &(&self.coeff(second, i) * &self.coeff(first, j));
        }
        acc
    }

    fn relation_coeff(&self, r: &Relation, k: usize, skip_ends: bool) -> Matrix {
        match r {
            Relation::Commutativity { lhs, rhs } => {
                &self.path_coeff(*lhs, k, skip_ends) - &self.path_coeff(*rhs, k, skip_ends)
            }
            Relation::Zero(p) => self.path_coeff(*p, k, skip_ends),
        }
    }

    pub fn satisfies_relations(&self) -> bool {
        self.base.window().relations().iter().all(|r| {
            (0..self.order()).all(|k| self.relation_coeff(r, k, false).is_zero())
        })
    }

    /// Reduction to `k[t]/(t^k)`.
    pub fn truncate(&self, k: usize) -> Result<Lift> {
        if k == 0 || k > self.order() {
            return Err(Error::Precondition(format!("cannot truncate an order-{} lift to {k}", self.order())));
        }
        Ok(Lift {
            ring: TruncatedRing::new(self.base.field(), k)?,
            base: self.base.clone(),
            coeffs: self.coeffs.iter().map(|(a, cs)| (*a, cs[..k].to_vec())).collect(),
        })
    }

    /// Conjugates by the gauge `g = I + t^power · h`: `L_a ↦ g_w L_a g_v^{-1}`.
    pub fn gauge(&self, h: &BTreeMap<Vertex, Matrix>, power: usize) -> Result<Lift> {
        if power == 0 {
            return Err(Error::Precondition("gauge must reduce to the identity".into()));
        }
        let n = self.order();
        let field = self.base.field();
        // g = I + t^p h and g^{-1} = sum_i (-t^p h)^i, truncated.
        let gauge_poly = |v: Vertex, inverse: bool| -> Result<PolyMatrix> {
            let d = self.base.dim(v);
            let hv = h.get(&v).cloned().unwrap_or_else(|| Matrix::zeros(field, d, d));
            if hv.shape() != (d, d) {
                return Err(Error::ShapeMismatch(format!("gauge at {v} has the wrong shape")));
            }
            let mut coeffs = vec![Matrix::zeros(field, d, d); n];
            coeffs[0] = Matrix::identity(field, d);
            if !inverse {
                if power < n {
                    coeffs[power] = hv;
                }
            } else {
                let step = -&hv;
                let mut pow = Matrix::identity(field, d);
                for deg in (power..n).step_by(power) {
                    pow = &pow * &step;
                    coeffs[deg] = pow.clone();
                }
            }
            PolyMatrix::new(self.ring, coeffs)
        };
        let mut coeffs = BTreeMap::new();
        for (&a, cs) in &self.coeffs {
            let la = PolyMatrix::new(self.ring, cs.clone())?;
            let g_w = gauge_poly(a.target(), false)?;
            let g_v_inv = gauge_poly(a.source(), true)?;
            let conj = g_w.checked_mul(&la)?.checked_mul(&g_v_inv)?;
            coeffs.insert(a, conj.coeffs().to_vec());
        }
        Lift::new(&self.base, n, coeffs)
    }

    /// Coefficient matrices as text, for reports.
    pub fn to_json(&self) -> serde_json::Value {
        let mats: serde_json::Map<String, serde_json::Value> = self
            .coeffs
            .iter()
            .filter(|(_, cs)| cs.iter().any(|c| !c.is_zero()))
            .map(|(a, cs)| {
                let per_coeff: Vec<serde_json::Value> = cs.iter().map(crate::json::matrix_to_json).collect();
                (a.to_string(), serde_json::Value::Array(per_coeff))
            })
            .collect();
        serde_json::json!({
            "order": self.order(),
            "field": self.base.field().to_string(),
            "coefficients": mats,
        })
    }
}

/// A tangent vector: the `t`-coefficients of a lift over the dual numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstOrderClass {
    pub cocycle: BTreeMap<Arrow, Matrix>,
}

/// Flattened layout of one matrix per arrow (`dim target × dim source`).
struct ArrowLayout {
    blocks: Vec<(Arrow, usize, usize, usize)>,
    len: usize,
}

impl ArrowLayout {
    fn new(m: &Representation) -> ArrowLayout {
        let mut blocks = Vec::new();
        let mut offset = 0;
        for &a in m.window().arrows() {
            let (r, c) = (m.dim(a.target()), m.dim(a.source()));
            if r > 0 && c > 0 {
                blocks.push((a, r, c, offset));
                offset += r * c;
            }
        }
        ArrowLayout { blocks, len: offset }
    }

    fn block(&self, a: Arrow) -> Option<(usize, usize, usize)> {
        self.blocks.iter().find(|b| b.0 == a).map(|&(_, r, c, o)| (r, c, o))
    }

    fn unflatten(&self, m: &Representation, x: &[Scalar]) -> BTreeMap<Arrow, Matrix> {
        self.blocks
            .iter()
            .map(|&(a, r, c, o)| (a, Matrix::from_flat(m.field(), r, c, x[o..o + r * c].to_vec())))
            .collect()
    }
}

/// Rows of the linearized relation map `X ↦ (B_0 X_a + X_b A_0)` summed over
/// the paths of each relation, one row per entry of each relation.
fn linearized_relations(m: &Representation, layout: &ArrowLayout) -> Matrix {
    let field = m.field();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for r in m.window().relations() {
        let signed: Vec<(Path2, i64)> = match r {
            Relation::Commutativity { lhs, rhs } => vec![(*lhs, 1), (*rhs, -1)],
            Relation::Zero(p) => vec![(*p, 1)],
        };
        let first = signed[0].0;
        let (nr, nc) = (m.dim(first.target()), m.dim(first.source()));
        for i in 0..nr {
            for j in 0..nc {
                let mut row = vec![field.zero(); layout.len];
                for &(p, sign) in &signed {
                    let s = field.from_i64(sign);
                    let (a, b) = (p.first, p.second);
                    // B_0 X_a: sum_k B0[i,k] X_a[k,j]
                    if let Some((_, ac, ao)) = layout.block(a) {
                        let b0 = m.mat(b);
                        for k in 0..b0.cols() {
                            let c = b0.get(i, k);
                            if !c.is_zero() {
                                let idx = ao + k * ac + j;
                                row[idx] = &row[idx] + &(c * &s);
                            }
                        }
                    }
                    // X_b A_0: sum_k X_b[i,k] A0[k,j]
                    if let Some((_, bc, bo)) = layout.block(b) {
                        let a0 = m.mat(a);
                        for k in 0..a0.rows() {
                            let c = a0.get(k, j);
                            if !c.is_zero() {
                                let idx = bo + i * bc + k;
                                row[idx] = &row[idx] + &(c * &s);
                            }
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    let n = rows.len();
    Matrix::from_fn(field, n, layout.len, |r, c| rows[r][c].clone())
}

/// Flattens the per-relation residual matrices in the row order of [`linearized_relations`].
fn flatten_relation_values(field: Field, values: &[Matrix]) -> Matrix {
    let data: Vec<Scalar> = values.iter().flat_map(|v| v.entries().iter().cloned()).collect();
    Matrix::from_flat(field, data.len(), 1, data)
}

/// Columns span the coboundaries `h_w M_a − M_a h_v`.
fn coboundaries(m: &Representation, layout: &ArrowLayout) -> Matrix {
    let field = m.field();
    let mut columns = Vec::new();
    for v in m.support() {
        let d = m.dim(v);
        for r in 0..d {
            for c in 0..d {
                let mut col = vec![field.zero(); layout.len];
                // h = E_{rc} at v.
                for &(a, nr, nc, off) in &layout.blocks {
                    let ma = m.mat(a);
                    if a.target() == v {
                        // (E_rc M_a)[r, j] = M_a[c, j]
                        for j in 0..nc {
                            let idx = off + r * nc + j;
                            col[idx] = &col[idx] + ma.get(c, j);
                        }
                    }
                    if a.source() == v {
                        // (M_a E_rc)[i, c] = M_a[i, r]
                        for i in 0..nr {
                            let idx = off + i * nc + c;
                            col[idx] = &col[idx] - ma.get(i, r);
                        }
                    }
                }
                columns.push(col);
            }
        }
    }
    Matrix::from_columns(field, layout.len, &columns)
}

/// A basis of the tangent space: cocycles modulo coboundaries.
pub fn first_order_lifts(m: &Representation) -> Result<Vec<FirstOrderClass>> {
    let layout = ArrowLayout::new(m);
    if layout.len == 0 {
        return Ok(Vec::new());
    }
    let cocycles = linearized_relations(m, &layout).kernel_basis();
    let bounds = coboundaries(m, &layout).column_space();
    let picks = bounds.complement_columns(&cocycles);
    Ok(picks
        .into_iter()
        .map(|c| FirstOrderClass {
            cocycle: layout.unflatten(m, &cocycles.column(c)),
        })
        .collect())
}

/// Where and why lifting stopped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    /// The ring order `n` such that no lift to `k[t]/(t^n)` exists.
    pub order: usize,
    /// Right-hand side of the inconsistent system, per relation.
    pub residual: Vec<(Relation, Matrix)>,
    /// The last lift reached.
    pub reached: Lift,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftOutcome {
    Lifted(Lift),
    Obstructed(Obstruction),
}

impl LiftOutcome {
    pub fn lift(&self) -> &Lift {
        match self {
            LiftOutcome::Lifted(l) => l,
            LiftOutcome::Obstructed(o) => &o.reached,
        }
    }

    pub fn obstruction_order(&self) -> Option<usize> {
        match self {
            LiftOutcome::Lifted(_) => None,
            LiftOutcome::Obstructed(o) => Some(o.order),
        }
    }
}

/// Extends `lift` order by order up to `k[t]/(t^target_order)`.
///
/// At each step the new coefficient is the deterministic particular solution
/// of the linear system; the solution set is a coset of the cocycles, which
/// contains every gauge-equivalent choice.
pub fn extend_lift(lift: &Lift, target_order: usize) -> Result<LiftOutcome> {
    if !lift.satisfies_relations() {
        return Err(Error::InconsistentLift(lift.order()));
    }
    if target_order <= lift.order() {
        return Err(Error::Precondition(format!(
            "target order {target_order} must exceed the current order {}",
            lift.order()
        )));
    }
    let m = lift.base.clone();
    let field = m.field();
    let layout = ArrowLayout::new(&m);
    let system = linearized_relations(&m, &layout);
    let relations = m.window().relations().to_vec();
    let mut current = lift.clone();
    for k in lift.order()..target_order {
        let residuals: Vec<Matrix> = relations.iter().map(|r| current.relation_coeff(r, k, true)).collect();
        let rhs = -&flatten_relation_values(field, &residuals);
        let solution = if layout.len == 0 {
            if rhs.is_zero() {
                Some(Vec::new())
            } else {
                None
            }
        } else {
            system.solve(&rhs)?.map(|s| s.particular.column(0))
        };
        let Some(x) = solution else {
            let residual = relations
                .iter()
                .cloned()
                .zip(residuals)
                .filter(|(_, r)| !r.is_zero())
                .collect();
            return Ok(LiftOutcome::Obstructed(Obstruction {
                order: k + 1,
                residual,
                reached: current,
            }));
        };
        let next = layout.unflatten(&m, &x);
        current.ring = TruncatedRing::new(field, k + 1)?;
        for (a, cs) in current.coeffs.iter_mut() {
            let add = next
                .get(a)
                .cloned()
                .unwrap_or_else(|| Matrix::zeros(field, cs[0].rows(), cs[0].cols()));
            cs.push(add);
        }
        debug_assert!(current.satisfies_relations());
    }
    Ok(LiftOutcome::Lifted(current))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `R ≅ k`.
    Field,
    /// `R ≅ k[[t]]`, supported by unobstructed lifting to the test order.
    PowerSeries,
    /// Some quotient of `k[[t_1, …, t_r]]` that this procedure does not pin down.
    Undetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Field => "k",
            Verdict::PowerSeries => "k[[t]]",
            Verdict::Undetermined => "versal: quotient of k[[t_1..t_r]] (undetermined)",
        })
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub module: String,
    pub stable_end_dim: usize,
    pub ext1_dim: usize,
    pub verdict: Verdict,
    /// True when the stable endomorphism ring is `k`, so the versal ring is universal.
    pub universal: bool,
    pub lift_order_reached: usize,
    pub obstruction: Option<usize>,
}

/// Classifies the versal deformation ring of `m` by its tangent dimension and
/// by lifting each tangent direction to `k[t]/(t^test_order)`.
pub fn classify_versal_ring(m: &Representation, test_order: usize) -> Result<ClassificationReport> {
    if test_order == 0 {
        return Err(Error::Precondition("test order must be at least 1".into()));
    }
    let stable_end_dim = stable_hom_dim(m, m)?;
    let r = ext1_dim(m, m)?;
    let tangent = first_order_lifts(m)?;
    if tangent.len() != r {
        return Err(Error::InvariantBreach(format!(
            "tangent space has dimension {} by cocycles but Ext^1 has dimension {r}",
            tangent.len()
        )));
    }
    let mut reached = test_order;
    let mut obstruction = None;
    if test_order > 2 {
        for class in &tangent {
            let lift = Lift::from_first_order(m, class)?;
            if let LiftOutcome::Obstructed(o) = extend_lift(&lift, test_order)? {
                reached = reached.min(o.order - 1);
                obstruction = Some(obstruction.map_or(o.order, |x: usize| x.min(o.order)));
            }
        }
    }
    let verdict = match (r, obstruction) {
        (0, _) => Verdict::Field,
        (1, None) => Verdict::PowerSeries,
        _ => Verdict::Undetermined,
    };
    Ok(ClassificationReport {
        module: dim_vector_label(m),
        stable_end_dim,
        ext1_dim: r,
        verdict,
        universal: stable_end_dim == 1,
        lift_order_reached: reached,
        obstruction,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceEntry {
    pub name: String,
    pub report: ClassificationReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub entries: Vec<InvarianceEntry>,
    /// Variants that were not run, with the reason.
    pub skipped: Vec<(String, String)>,
}

/// Classifies `M`, `Ω M`, `ν M`, `τ M` and `M ⊕ P` and checks that verdicts and
/// tangent dimensions agree.
pub fn verify_invariance(m: &Representation, test_order: usize) -> Result<InvarianceReport> {
    let stable_end = stable_hom_dim(m, m)?;
    if stable_end != 1 {
        return Err(Error::Precondition(format!(
            "stable endomorphism ring has dimension {stable_end}, expected 1"
        )));
    }
    let mut variants: Vec<(String, Representation)> = vec![
        ("M".into(), m.clone()),
        ("ΩM".into(), syzygy(m)?),
        ("νM".into(), nakayama_shift(m, 1)),
    ];
    let mut skipped = Vec::new();
    match is_indecomposable(m)? {
        Decision::Yes => variants.push(("τM".into(), ar_translate(m)?)),
        Decision::No => skipped.push(("τM".into(), "module is decomposable".into())),
        Decision::Undecided(why) => skipped.push(("τM".into(), why)),
    }
    let z = m.support().first().map_or(0, |v| v.z);
    let p = indecomposable_projective(Vertex::one(z), m.field());
    variants.push(("M⊕P".into(), direct_sum(m, &p)?));

    let mut entries = Vec::new();
    for (name, module) in variants {
        let report = classify_versal_ring(&module, test_order)?;
        entries.push(InvarianceEntry { name, report });
    }
    let reference = &entries[0].report;
    let diffs: Vec<String> = entries
        .iter()
        .skip(1)
        .filter(|e| e.report.verdict != reference.verdict || e.report.ext1_dim != reference.ext1_dim)
        .map(|e| {
            format!(
                "{}: verdict {} (ext1 {}) vs M: verdict {} (ext1 {})",
                e.name, e.report.verdict, e.report.ext1_dim, reference.verdict, reference.ext1_dim
            )
        })
        .collect();
    if !diffs.is_empty() {
        return Err(Error::InvarianceMismatch(diffs.join("\n")));
    }
    Ok(InvarianceReport { entries, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::{parse_string, simple, string_module};

    const Q: Field = Field::Rationals;

    fn word(s: &str) -> Representation {
        string_module(&parse_string(s).unwrap(), Q)
    }

    #[test]
    fn tangent_space_examples() {
        assert!(first_order_lifts(&simple(Vertex::one(0), Q)).unwrap().is_empty());
        let classes = first_order_lifts(&word("a0")).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(
            classes[0].cocycle,
            BTreeMap::from([
                (Arrow::alpha(0), Matrix::from_ints(Q, &[&[0]])),
                (Arrow::beta(0), Matrix::from_ints(Q, &[&[1]])),
            ])
        );
        let p = indecomposable_projective(Vertex::one(0), Q);
        assert!(first_order_lifts(&p).unwrap().is_empty());
    }

    #[test]
    fn arrow_lift_extends_with_beta_equal_to_t() {
        let m = word("a0");
        let class = &first_order_lifts(&m).unwrap()[0];
        let lift = Lift::from_first_order(&m, class).unwrap();
        let LiftOutcome::Lifted(l5) = extend_lift(&lift, 5).unwrap() else {
            panic!("obstructed");
        };
        assert_eq!(l5.order(), 5);
        let beta = &l5.coefficients()[&Arrow::beta(0)];
        let expected: Vec<Matrix> = (0..5).map(|i| Matrix::from_ints(Q, &[&[(i == 1) as i64]])).collect();
        assert_eq!(beta, &expected);
        assert!(l5.satisfies_relations());
    }

    #[test]
    fn trivial_lifts_extend() {
        let m = word("A0^-1 B0");
        let LiftOutcome::Lifted(l) = extend_lift(&Lift::trivial(&m, 1).unwrap(), 7).unwrap() else {
            panic!("trivial lift obstructed");
        };
        assert!(l.coefficients().values().all(|cs| cs[1..].iter().all(Matrix::is_zero)));
    }

    #[test]
    fn inconsistent_lift_rejected() {
        let m = word("a0");
        let bad = Lift::new(
            &m,
            2,
            BTreeMap::from([(Arrow::alpha(0), vec![Matrix::identity(Q, 1), Matrix::identity(Q, 1)])]),
        );
        assert!(bad.is_ok(), "no relations live on the support of M[a0]");
        let p = indecomposable_projective(Vertex::one(0), Q);
        let broken = Lift::new(
            &p,
            2,
            BTreeMap::from([(
                Arrow::alpha_star(0),
                vec![Matrix::from_ints(Q, &[&[1, 0]]), Matrix::from_ints(Q, &[&[0, 1]])],
            )]),
        );
        assert!(matches!(broken, Err(Error::InconsistentLift(2))));
    }

    #[test]
    fn gauge_preserves_relations() {
        let m = word("A0^-1 B0");
        let lift = extend_lift(&Lift::trivial(&m, 1).unwrap(), 3).unwrap().lift().clone();
        let h = BTreeMap::from([(Vertex::two(0), Matrix::from_ints(Q, &[&[1, 2], &[0, 3]]))]);
        let g = lift.gauge(&h, 1).unwrap();
        assert!(g.satisfies_relations());
        assert_eq!(g.truncate(1).unwrap(), lift.truncate(1).unwrap());
    }

    fn three_simples() -> Representation {
        let dims = BTreeMap::from([(Vertex::one(0), 1), (Vertex::two(0), 1), (Vertex::one(-1), 1)]);
        Representation::new(Q, crate::quiver::QuiverWindow::new(-1, 0).unwrap(), dims, BTreeMap::new()).unwrap()
    }

    fn one_t(ring_order: usize) -> Vec<Matrix> {
        (0..ring_order).map(|i| Matrix::from_ints(Q, &[&[(i == 1) as i64]])).collect()
    }

    #[test]
    fn commutativity_obstructs_at_order_three() {
        // a0 = A0 = t makes A0 a0 - B0 b0 = t^2, which nothing at order 2 can cancel.
        let m = three_simples();
        let coeffs = BTreeMap::from([(Arrow::alpha(0), one_t(2)), (Arrow::alpha_star(0), one_t(2))]);
        let lift = Lift::new(&m, 2, coeffs).unwrap();
        let LiftOutcome::Obstructed(o) = extend_lift(&lift, 5).unwrap() else {
            panic!("expected an obstruction");
        };
        assert_eq!(o.order, 3);
        assert_eq!(o.reached.order(), 2);
        assert_eq!(o.residual.len(), 1);
        assert!(matches!(o.residual[0].0, Relation::Commutativity { .. }));

        let report = classify_versal_ring(&m, 6).unwrap();
        assert_eq!(report.ext1_dim, 4);
        assert_eq!(report.verdict, Verdict::Undetermined);
    }

    #[test]
    fn gauge_keeps_obstruction_order() {
        let m = three_simples();
        let coeffs = BTreeMap::from([(Arrow::alpha(0), one_t(2)), (Arrow::alpha_star(0), one_t(2))]);
        let lift = Lift::new(&m, 2, coeffs).unwrap();
        let h = BTreeMap::from([
            (Vertex::one(0), Matrix::from_ints(Q, &[&[3]])),
            (Vertex::two(0), Matrix::from_ints(Q, &[&[-2]])),
        ]);
        let gauged = lift.gauge(&h, 1).unwrap();
        assert_eq!(
            extend_lift(&gauged, 5).unwrap().obstruction_order(),
            extend_lift(&lift, 5).unwrap().obstruction_order()
        );

        let m = word("a0 b0^-1 a0");
        for class in first_order_lifts(&m).unwrap() {
            let lift = Lift::from_first_order(&m, &class).unwrap();
            let h: BTreeMap<_, _> = m.support().into_iter().map(|v| (v, Matrix::identity(Q, m.dim(v)))).collect();
            let a = extend_lift(&lift, 5).unwrap().obstruction_order();
            let b = extend_lift(&lift.gauge(&h, 1).unwrap(), 5).unwrap().obstruction_order();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn classification_examples() {
        let s = classify_versal_ring(&simple(Vertex::one(0), Q), 6).unwrap();
        assert_eq!(s.verdict, Verdict::Field);
        for w in ["a0", "b-1"] {
            let r = classify_versal_ring(&word(w), 6).unwrap();
            assert_eq!(r.verdict, Verdict::PowerSeries, "{w}");
            assert_eq!(r.lift_order_reached, 6);
            assert_eq!(r.obstruction, None);
        }
    }

    #[test]
    fn invariance_examples() {
        let rep = verify_invariance(&word("a0"), 6).unwrap();
        assert_eq!(rep.entries.len(), 5);
        assert!(rep.entries.iter().all(|e| e.report.verdict == Verdict::PowerSeries));

        let rep = verify_invariance(&simple(Vertex::one(0), Q), 6).unwrap();
        assert_eq!(rep.entries.len(), 5);
        assert!(rep.entries.iter().all(|e| e.report.verdict == Verdict::Field));

        let p = indecomposable_projective(Vertex::one(0), Q);
        assert!(matches!(verify_invariance(&p, 6), Err(Error::Precondition(_))));
    }

    #[test]
    fn report_json_shape() {
        let r = classify_versal_ring(&word("a0"), 6).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["verdict"], "k[[t]]");
        assert_eq!(v["ext1_dim"], 1);
        assert_eq!(v["stable_end_dim"], 1);
        assert_eq!(v["lift_order_reached"], 6);
        assert!(v["obstruction"].is_null());
    }
}
