//! Projective-injectives, covers and hulls, syzygies, the Nakayama shift, the
//! Auslander–Reiten translate, stable Hom and `Ext¹`.
//!
//! Injective hulls are obtained by dualizing: `D = Hom_k(−, k)` followed by
//! the fixed relabeling `σ` of the opposite quiver onto the quiver itself,
//!
//! ```text
//! σ(1_z) = 2_{−z}   σ(2_z) = 1_{−z}   σ(α_z) = α_{−z}   σ(α*_z) = α*_{1−z}
//! ```
//!
//! (same for `β`). `σ` is an involution and maps relations to relations, so
//! the dual of a module is again a module and `D∘D` is the identity on the nose.
//!
//! The Nakayama shift moves support up one layer: `(ν M)` at `v_{z+1}` is `M`
//! at `v_z`. This is the convention under which `ν P_v` is the injective
//! envelope of the simple at `v`, and `τ = ν Ω²` fixes the arrow modules.

use std::collections::BTreeMap;

use log::warn;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::{Arrow, ArrowKind, Layer, QuiverWindow, Vertex};
use crate::rep::{
    direct_sum_all, hom_basis, hom_dim, is_indecomposable, quotient, submodule, Decision, HomLayout,
    Morphism, Representation,
};
use crate::scalar::{Field, Scalar};

/// Projective cover `P(M) ↠ M` and its kernel `Ω M ↪ P(M)`.
#[derive(Clone, Debug)]
pub struct CoverData {
    pub cover: Representation,
    pub map: Morphism,
    pub kernel: Representation,
    pub kernel_embed: Morphism,
    /// Vertex of each indecomposable summand of the cover, in block order.
    pub summands: Vec<Vertex>,
}

/// Injective hull `M ↪ I(M)` and its cokernel `I(M) ↠ Ω⁻¹ M`.
#[derive(Clone, Debug)]
pub struct HullData {
    pub hull: Representation,
    pub map: Morphism,
    pub cokernel: Representation,
    pub cokernel_proj: Morphism,
}

/// `M / rad M` together with the chosen generators of `M`.
#[derive(Clone, Debug)]
pub struct Top {
    pub module: Representation,
    pub projection: Morphism,
    /// One generator per basis vector of the top: a vertex and a vector of `M` there.
    pub generators: Vec<(Vertex, Vec<Scalar>)>,
}

impl Top {
    pub fn dim_vector(&self) -> BTreeMap<Vertex, usize> {
        self.module.dim_vector()
    }
}

/// Paths (arrows in order of application) indexing the basis of `P_v`, grouped
/// by the vertex where each path ends. Order matches the matrices of
/// [`indecomposable_projective`].
pub fn projective_basis_paths(v: Vertex) -> Vec<(Vertex, Vec<Arrow>)> {
    let z = v.z;
    match v.layer {
        Layer::One => vec![
            (v, vec![]),
            (Vertex::two(z), vec![Arrow::alpha(z)]),
            (Vertex::two(z), vec![Arrow::beta(z)]),
            (Vertex::one(z - 1), vec![Arrow::alpha(z), Arrow::alpha_star(z)]),
        ],
        Layer::Two => vec![
            (v, vec![]),
            (Vertex::one(z - 1), vec![Arrow::alpha_star(z)]),
            (Vertex::one(z - 1), vec![Arrow::beta_star(z)]),
            (Vertex::two(z - 1), vec![Arrow::alpha_star(z), Arrow::alpha(z - 1)]),
        ],
    }
}

/// The indecomposable projective-injective `P_v`.
///
/// `P_{1_z}` has top `1_z`, middle `2_z ⊕ 2_z` (reached by `α_z`, `β_z`) and
/// socle `1_{z−1}`, reached by both `α*_z α_z` and `β*_z β_z`. `P_{2_z}` is
/// the same picture one row down.
pub fn indecomposable_projective(v: Vertex, field: Field) -> Representation {
    let z = v.z;
    let window = QuiverWindow::new(z - 1, z).expect("valid window");
    let col = Matrix::from_ints(field, &[&[1], &[0]]);
    let col2 = Matrix::from_ints(field, &[&[0], &[1]]);
    let row = Matrix::from_ints(field, &[&[1, 0]]);
    let row2 = Matrix::from_ints(field, &[&[0, 1]]);
    let (dims, mats) = match v.layer {
        Layer::One => (
            BTreeMap::from([(v, 1), (Vertex::two(z), 2), (Vertex::one(z - 1), 1)]),
            BTreeMap::from([
                (Arrow::alpha(z), col),
                (Arrow::beta(z), col2),
                (Arrow::alpha_star(z), row),
                (Arrow::beta_star(z), row2),
            ]),
        ),
        Layer::Two => (
            BTreeMap::from([(v, 1), (Vertex::one(z - 1), 2), (Vertex::two(z - 1), 1)]),
            BTreeMap::from([
                (Arrow::alpha_star(z), col),
                (Arrow::beta_star(z), col2),
                (Arrow::alpha(z - 1), row),
                (Arrow::beta(z - 1), row2),
            ]),
        ),
    };
    Representation::from_parts(field, window, dims, mats)
}

/// Matrix of the path (arrows in order of application) acting on `m`.
fn path_action(m: &Representation, path: &[Arrow], start: Vertex) -> Matrix {
    path.iter()
        .fold(Matrix::identity(m.field(), m.dim(start)), |acc, &a| &*m.mat(a) * &acc)
}

/// Radical of `M` at each vertex: the span of the images of incoming arrows.
pub fn radical(m: &Representation) -> BTreeMap<Vertex, Matrix> {
    let field = m.field();
    let mut out = BTreeMap::new();
    for &v in m.window().vertices() {
        let images: Vec<Matrix> = v
            .arrows_in()
            .into_iter()
            .filter(|a| m.window().contains_arrow(*a))
            .map(|a| m.mat(a).into_owned())
            .collect();
        let refs: Vec<&Matrix> = images.iter().collect();
        let joined = Matrix::hstack(field, m.dim(v), &refs);
        out.insert(v, joined.column_space());
    }
    out
}

pub fn top(m: &Representation) -> Result<Top> {
    let field = m.field();
    let rad = radical(m);
    let mut generators = Vec::new();
    for &v in m.window().vertices() {
        let d = m.dim(v);
        if d == 0 {
            continue;
        }
        let id = Matrix::identity(field, d);
        for c in rad[&v].complement_columns(&id) {
            generators.push((v, id.column(c)));
        }
    }
    let (module, projection) = quotient(m, &rad)?;
    Ok(Top {
        module,
        projection,
        generators,
    })
}

pub fn projective_cover(m: &Representation) -> Result<CoverData> {
    let field = m.field();
    let window = m.window().grown(1, 0);
    if m.is_zero() {
        let zero = Representation::zero(field, window);
        return Ok(CoverData {
            cover: zero.clone(),
            map: Morphism::zero(),
            kernel: zero,
            kernel_embed: Morphism::zero(),
            summands: Vec::new(),
        });
    }
    let gens = top(m)?.generators;
    let projectives: Vec<Representation> = gens
        .iter()
        .map(|(v, _)| indecomposable_projective(*v, field).with_window(&window))
        .collect();
    let refs: Vec<&Representation> = projectives.iter().collect();
    let cover = direct_sum_all(field, &refs)?.module;

    let mut comps = BTreeMap::new();
    for &u in window.vertices() {
        let mut columns: Vec<Vec<Scalar>> = Vec::new();
        for (v, x) in &gens {
            let xm = Matrix::from_columns(field, x.len(), std::slice::from_ref(x));
            for (end, path) in projective_basis_paths(*v) {
                if end == u {
                    columns.push((&path_action(m, &path, *v) * &xm).column(0));
                }
            }
        }
        comps.insert(u, Matrix::from_columns(field, m.dim(u), &columns));
    }
    let map = Morphism::from_components(comps);
    debug_assert!(map.is_intertwiner(&cover, m));
    if !map.is_surjective(&cover, m) {
        return Err(Error::InvariantBreach("projective cover map is not surjective".into()));
    }
    let kernel_basis: BTreeMap<Vertex, Matrix> = window
        .vertices()
        .iter()
        .map(|&u| (u, map.component(u, &cover, m).kernel_basis()))
        .collect();
    let (kernel, kernel_embed) = submodule(&cover, &kernel_basis)?;
    Ok(CoverData {
        cover,
        map,
        kernel: kernel.trimmed(),
        kernel_embed,
        summands: gens.into_iter().map(|(v, _)| v).collect(),
    })
}

/// `Ω M`.
pub fn syzygy(m: &Representation) -> Result<Representation> {
    Ok(projective_cover(m)?.kernel)
}

fn sigma_vertex(v: Vertex) -> Vertex {
    match v.layer {
        Layer::One => Vertex::two(-v.z),
        Layer::Two => Vertex::one(-v.z),
    }
}

fn sigma_arrow(a: Arrow) -> Arrow {
    match a.kind {
        ArrowKind::Alpha | ArrowKind::Beta => Arrow { kind: a.kind, z: -a.z },
        ArrowKind::AlphaStar | ArrowKind::BetaStar => Arrow { kind: a.kind, z: 1 - a.z },
    }
}

/// `D M`, transported back to the quiver along `σ`.
pub fn dualize(m: &Representation) -> Representation {
    let w = m.window();
    let window = QuiverWindow::new(-w.z_max(), -w.z_min()).expect("valid window");
    let dims = m.dim_vector().into_iter().map(|(v, d)| (sigma_vertex(v), d)).collect();
    let mats = m
        .arrow_matrices()
        .iter()
        .map(|(&a, mat)| (sigma_arrow(a), mat.transpose()))
        .collect();
    Representation::from_parts(m.field(), window, dims, mats)
}

/// `D f : D N → D M` for `f : M → N`.
pub fn dualize_morphism(f: &Morphism) -> Morphism {
    Morphism::from_components(
        f.components().iter().map(|(&v, m)| (sigma_vertex(v), m.transpose())).collect(),
    )
}

pub fn injective_hull(m: &Representation) -> Result<HullData> {
    let cov = projective_cover(&dualize(m))?;
    Ok(HullData {
        hull: dualize(&cov.cover),
        map: dualize_morphism(&cov.map),
        cokernel: dualize(&cov.kernel),
        cokernel_proj: dualize_morphism(&cov.kernel_embed),
    })
}

/// `Ω⁻¹ M`.
pub fn cosyzygy(m: &Representation) -> Result<Representation> {
    Ok(injective_hull(m)?.cokernel.trimmed())
}

/// `ν^k M`: every index `z` becomes `z + k`.
pub fn nakayama_shift(m: &Representation, k: i64) -> Representation {
    m.shifted(k)
}

pub fn is_projective(m: &Representation) -> Result<bool> {
    Ok(syzygy(m)?.is_zero())
}

/// `τ M = ν Ω² M`.
pub fn ar_translate(m: &Representation) -> Result<Representation> {
    let omega = syzygy(m)?;
    if omega.is_zero() {
        return Err(Error::Projective("the AR translate of a projective is undefined".into()));
    }
    match is_indecomposable(m)? {
        Decision::Yes => {}
        Decision::No => warn!("ar_translate: input is decomposable; computing ν Ω² anyway"),
        Decision::Undecided(why) => warn!("ar_translate: indecomposability undecided ({why})"),
    }
    Ok(nakayama_shift(&syzygy(&omega)?, 1).trimmed())
}

/// Both computations of the maps `M → N` that factor through a projective.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StableHomRoutes {
    pub hom_dim: usize,
    /// Dimension of `{g ∘ ι}` for `ι : M ↪ I(M)`.
    pub through_hull: usize,
    /// Dimension of `{π ∘ h}` for `π : P(N) ↠ N`.
    pub through_cover: usize,
}

impl StableHomRoutes {
    pub fn agree(&self) -> bool {
        self.through_hull == self.through_cover
    }

    pub fn stable_dim(&self) -> usize {
        self.hom_dim - self.through_hull
    }
}

pub fn stable_hom_routes(m: &Representation, n: &Representation) -> Result<StableHomRoutes> {
    if m.field() != n.field() {
        return Err(Error::FieldMismatch(m.field().to_string(), n.field().to_string()));
    }
    let hom = hom_dim(m, n)?;
    if hom == 0 {
        return Ok(StableHomRoutes {
            hom_dim: 0,
            through_hull: 0,
            through_cover: 0,
        });
    }
    let layout = HomLayout::new(m, n);

    let hull = injective_hull(m)?;
    let via_hull: Vec<Morphism> = hom_basis(&hull.hull, n)?.iter().map(|g| g.after(&hull.map)).collect();

    let cover = projective_cover(n)?;
    let via_cover: Vec<Morphism> = hom_basis(m, &cover.cover)?.iter().map(|h| cover.map.after(h)).collect();

    Ok(StableHomRoutes {
        hom_dim: hom,
        through_hull: layout.to_matrix(&via_hull).rank(),
        through_cover: layout.to_matrix(&via_cover).rank(),
    })
}

/// `dim Hom(M, N)` modulo maps factoring through projectives.
pub fn stable_hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    let routes = stable_hom_routes(m, n)?;
    if !routes.agree() {
        return Err(Error::InvariantBreach(format!(
            "projectively trivial maps: {} via the injective hull, {} via the projective cover",
            routes.through_hull, routes.through_cover
        )));
    }
    Ok(routes.stable_dim())
}

/// `dim Ext¹(M, N) = dim Hom_stable(Ω M, N)`.
pub fn ext1_dim(m: &Representation, n: &Representation) -> Result<usize> {
    stable_hom_dim(&syzygy(m)?, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{is_isomorphic, IsoOutcome};

    const Q: Field = Field::Rationals;

    fn simple(v: Vertex) -> Representation {
        Representation::from_parts(Q, QuiverWindow::new(v.z, v.z).unwrap(), BTreeMap::from([(v, 1)]), BTreeMap::new())
    }

    fn arrow_module(a: Arrow) -> Representation {
        let (s, t) = (a.source(), a.target());
        let w = QuiverWindow::new(s.z.min(t.z), s.z.max(t.z)).unwrap();
        Representation::from_parts(
            Q,
            w,
            BTreeMap::from([(s, 1), (t, 1)]),
            BTreeMap::from([(a, Matrix::identity(Q, 1))]),
        )
    }

    #[test]
    fn projectives_match_radical_series() {
        let p1 = indecomposable_projective(Vertex::one(0), Q);
        assert_eq!(
            p1.dim_vector(),
            BTreeMap::from([(Vertex::one(0), 1), (Vertex::two(0), 2), (Vertex::one(-1), 1)])
        );
        assert!(p1.validate().is_empty());
        let p2 = indecomposable_projective(Vertex::two(0), Q);
        assert_eq!(
            p2.dim_vector(),
            BTreeMap::from([(Vertex::two(0), 1), (Vertex::one(-1), 2), (Vertex::two(-1), 1)])
        );
        assert!(p2.validate().is_empty());
    }

    #[test]
    fn basis_paths_agree_with_matrices() {
        for v in [Vertex::one(3), Vertex::two(-2)] {
            let p = indecomposable_projective(v, Q);
            let mut seen: BTreeMap<Vertex, usize> = BTreeMap::new();
            for (end, path) in projective_basis_paths(v) {
                let idx = seen.entry(end).or_insert(0);
                let image = path_action(&p, &path, v);
                assert_eq!(image, Matrix::identity(Q, p.dim(end)).select_columns(&[*idx]));
                *idx += 1;
            }
        }
    }

    #[test]
    fn tops() {
        let p1 = indecomposable_projective(Vertex::one(0), Q);
        assert_eq!(top(&p1).unwrap().dim_vector(), BTreeMap::from([(Vertex::one(0), 1)]));
        let s = simple(Vertex::two(1));
        assert_eq!(top(&s).unwrap().dim_vector(), s.dim_vector());
        let m = arrow_module(Arrow::alpha(0));
        assert_eq!(top(&m).unwrap().dim_vector(), BTreeMap::from([(Vertex::one(0), 1)]));
    }

    #[test]
    fn covers() {
        let s = simple(Vertex::one(0));
        let cov = projective_cover(&s).unwrap();
        let p1 = indecomposable_projective(Vertex::one(0), Q);
        assert!(is_isomorphic(&cov.cover, &p1).unwrap().is_iso());
        assert_eq!(cov.kernel.total_dim(), 3);

        assert_eq!(projective_cover(&p1).unwrap().kernel.total_dim(), 0);

        let m = arrow_module(Arrow::alpha(0));
        let cov = projective_cover(&m).unwrap();
        assert_eq!(cov.summands, vec![Vertex::one(0)]);
        assert_eq!(cov.kernel.total_dim(), 2);
        assert!(cov.kernel_embed.is_injective(&cov.kernel, &cov.cover));
        assert!(cov.map.after(&cov.kernel_embed).is_zero());
        for v in cov.cover.support() {
            assert_eq!(cov.kernel.dim(v) + m.dim(v), cov.cover.dim(v));
        }
    }

    #[test]
    fn syzygy_of_arrow_modules() {
        let om = syzygy(&arrow_module(Arrow::alpha(0))).unwrap();
        assert!(is_isomorphic(&om, &arrow_module(Arrow::beta_star(0))).unwrap().is_iso());
        let om = syzygy(&arrow_module(Arrow::beta(0))).unwrap();
        assert!(is_isomorphic(&om, &arrow_module(Arrow::alpha_star(0))).unwrap().is_iso());
    }

    #[test]
    fn duality_is_an_involution() {
        let m = arrow_module(Arrow::beta_star(2));
        assert_eq!(dualize(&dualize(&m)), m);
        let s = simple(Vertex::one(-1));
        assert_eq!(dualize(&s).dim_vector(), BTreeMap::from([(Vertex::two(1), 1)]));
        assert!(dualize(&indecomposable_projective(Vertex::two(0), Q)).validate().is_empty());
    }

    #[test]
    fn hulls() {
        let hull = injective_hull(&simple(Vertex::one(-1))).unwrap();
        let p1 = indecomposable_projective(Vertex::one(0), Q);
        assert!(is_isomorphic(&hull.hull, &p1).unwrap().is_iso());
        assert!(cosyzygy(&p1).unwrap().is_zero());
        let m = arrow_module(Arrow::alpha(1));
        let back = cosyzygy(&syzygy(&m).unwrap()).unwrap();
        assert!(is_isomorphic(&back, &m).unwrap().is_iso());
    }

    #[test]
    fn nakayama_shift_convention() {
        let s = simple(Vertex::one(0));
        assert_eq!(nakayama_shift(&s, 1).dim_vector(), BTreeMap::from([(Vertex::one(1), 1)]));
        assert_eq!(nakayama_shift(&s, 0), s);
        assert_eq!(nakayama_shift(&nakayama_shift(&s, 1), -1), s);
    }

    #[test]
    fn tau_fixes_arrow_modules() {
        for a in [Arrow::alpha(0), Arrow::beta(0), Arrow::alpha_star(1)] {
            let m = arrow_module(a);
            let t = ar_translate(&m).unwrap();
            assert!(is_isomorphic(&t, &m).unwrap().is_iso(), "{a}");
        }
        let p = indecomposable_projective(Vertex::one(0), Q);
        assert!(matches!(ar_translate(&p), Err(Error::Projective(_))));
    }

    #[test]
    fn stable_homs() {
        let p = indecomposable_projective(Vertex::one(0), Q);
        let s = simple(Vertex::one(0));
        assert_eq!(stable_hom_dim(&p, &s).unwrap(), 0);
        assert_eq!(stable_hom_dim(&s, &s).unwrap(), 1);
        let m = arrow_module(Arrow::alpha(0));
        assert_eq!(stable_hom_dim(&m, &m).unwrap(), 1);
    }

    #[test]
    fn ext_examples() {
        let s = simple(Vertex::one(0));
        assert_eq!(ext1_dim(&s, &s).unwrap(), 0);
        let m = arrow_module(Arrow::alpha(0));
        assert_eq!(ext1_dim(&m, &m).unwrap(), 1);
        let p = indecomposable_projective(Vertex::one(0), Q);
        assert_eq!(ext1_dim(&p, &m).unwrap(), 0);
        assert_eq!(ext1_dim(&p, &s).unwrap(), 0);
    }

    #[test]
    fn zero_module_edge_cases() {
        let z = Representation::zero(Q, QuiverWindow::new(0, 0).unwrap());
        let cov = projective_cover(&z).unwrap();
        assert!(cov.cover.is_zero() && cov.kernel.is_zero());
        assert!(cosyzygy(&z).unwrap().is_zero());
        assert_eq!(is_isomorphic(&z, &z).unwrap(), IsoOutcome::Isomorphic(Morphism::zero()));
    }
}
