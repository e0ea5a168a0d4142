//! Corpus-level fan-out.
//!
//! Every function here returns results in input order, whichever executor
//! runs it. Without the `parallel` feature, [`Exec::Parallel`] runs
//! sequentially.

use crate::deformation::{classify_versal_ring, first_order_lifts, ClassificationReport};
use crate::error::Result;
use crate::frobenius::{ext1_dim, stable_hom_routes, StableHomRoutes};
use crate::quiver::QuiverWindow;
use crate::rep::Representation;
use crate::scalar::Field;
use crate::strings::{enumerate_strings, string_module, StringWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Exec {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// Order-preserving map over a slice.
pub fn map<T, U, F>(exec: Exec, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// String modules of all canonical words of length `≤ max_len` in `window`.
pub fn string_corpus(window: &QuiverWindow, max_len: usize, field: Field) -> Vec<(StringWord, Representation)> {
    enumerate_strings(window, max_len)
        .into_iter()
        .map(|w| {
            let m = string_module(&w, field);
            (w, m)
        })
        .collect()
}

pub fn classify_all(exec: Exec, modules: &[Representation], test_order: usize) -> Vec<Result<ClassificationReport>> {
    map(exec, modules, |m| classify_versal_ring(m, test_order))
}

/// `(number of first-order classes, dim Ext¹(M, M))` for each module.
pub fn tangent_vs_ext(exec: Exec, modules: &[Representation]) -> Vec<Result<(usize, usize)>> {
    map(exec, modules, |m| Ok((first_order_lifts(m)?.len(), ext1_dim(m, m)?)))
}

/// Both routes to the stable Hom for every ordered pair, row-major.
pub fn stable_hom_table(exec: Exec, modules: &[Representation]) -> Vec<Result<StableHomRoutes>> {
    let pairs: Vec<(usize, usize)> = (0..modules.len())
        .flat_map(|i| (0..modules.len()).map(move |j| (i, j)))
        .collect();
    map(exec, &pairs, |&(i, j)| stable_hom_routes(&modules[i], &modules[j]))
}
