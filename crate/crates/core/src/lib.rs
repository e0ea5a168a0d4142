//! Exact computations with finite-dimensional modules over the repetitive
//! algebra of the 2-Kronecker algebra.
//!
//! The quiver has vertices `1_z`, `2_z` for every integer `z`, arrows
//! `α_z, β_z : 1_z → 2_z` and `α*_z, β*_z : 2_z → 1_{z−1}`, and relations
//!
//! ```text
//! α*_z α_z = β*_z β_z      α_{z−1} α*_z = β_{z−1} β*_z
//! α*_z β_z = β*_z α_z = α_{z−1} β*_z = β_{z−1} α*_z = 0
//! ```
//!
//! Modules are representations on a finite [`QuiverWindow`]. On top of exact
//! linear algebra over `Q` and `F_p` the crate provides projective covers,
//! injective hulls, syzygies, the Nakayama shift and AR translate, stable Hom
//! and `Ext¹`, string modules, orbit graphs, and deformations over `k[t]/(t^n)`.
//!
//! ```
//! use repalg::{classify_versal_ring, parse_string, string_module, Field, Verdict};
//!
//! let m = string_module(&parse_string("a0").unwrap(), Field::Rationals);
//! let report = classify_versal_ring(&m, 6).unwrap();
//! assert_eq!(report.verdict, Verdict::PowerSeries);
//! ```

pub mod batch;
pub mod deformation;
pub mod error;
pub mod frobenius;
pub mod json;
pub mod matrix;
pub mod orbit;
pub mod quiver;
pub mod rep;
pub mod scalar;
pub mod strings;
pub mod trunc;

pub use batch::Exec;
pub use deformation::{
    classify_versal_ring, extend_lift, first_order_lifts, verify_invariance, ClassificationReport,
    FirstOrderClass, Lift, LiftOutcome, Obstruction, Verdict, DEFAULT_TEST_ORDER,
};
pub use error::{Error, Result};
pub use frobenius::{
    ar_translate, cosyzygy, ext1_dim, indecomposable_projective, injective_hull, nakayama_shift,
    projective_cover, stable_hom_dim, stable_hom_routes, syzygy,
};
pub use matrix::Matrix;
pub use orbit::{orbit_graph, OrbitGraph, OrbitOp};
pub use quiver::{make_window, Arrow, QuiverWindow, Relation, Vertex};
pub use rep::{hom_basis, hom_dim, is_indecomposable, is_isomorphic, Decision, IsoOutcome, Morphism, Representation};
pub use scalar::{Field, Scalar};
pub use strings::{enumerate_strings, parse_string, recognize_string, simple, string_module, StringWord};
pub use trunc::{reduce_mod_t, trunc_add, trunc_mul, TruncElem, TruncatedRing};
