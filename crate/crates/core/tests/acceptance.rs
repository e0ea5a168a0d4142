//! Acceptance checks, one line per criterion. Runs as a plain binary so the
//! report is printed even when everything passes.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use repalg::batch::{self, string_corpus, Exec};
use repalg::deformation::{
    classify_versal_ring, extend_lift, first_order_lifts, verify_invariance, Lift, LiftOutcome, Verdict,
};
use repalg::frobenius::{
    ar_translate, cosyzygy, ext1_dim, indecomposable_projective, radical, stable_hom_dim, syzygy,
};
use repalg::matrix::Matrix;
use repalg::quiver::{Arrow, QuiverWindow, Vertex};
use repalg::rep::{is_isomorphic, submodule, IsoOutcome, Representation};
use repalg::scalar::Field;
use repalg::strings::{parse_string, simple, string_module};

type Outcome = Result<String, String>;
/// `(arrow, stable end, ext1, tangent, reached order, verdict)`.
type ArrowRow = (String, usize, usize, usize, usize, Verdict);
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn word(s: &str, f: Field) -> Representation {
    string_module(&parse_string(s).expect("valid word"), f)
}

fn window(lo: i64, hi: i64) -> QuiverWindow {
    QuiverWindow::new(lo, hi).expect("valid window")
}

fn iso_witnessed(a: &Representation, b: &Representation) -> bool {
    matches!(is_isomorphic(a, b), Ok(IsoOutcome::Isomorphic(ref w)) if w.is_isomorphism(a, b))
}

fn dims_of(m: &Representation) -> BTreeMap<Vertex, usize> {
    m.dim_vector()
}

/// Socle computed directly: vectors killed by every outgoing arrow.
fn socle_dims(m: &Representation) -> BTreeMap<Vertex, usize> {
    let f = m.field();
    m.support()
        .into_iter()
        .filter_map(|v| {
            let outs: Vec<Matrix> = v.arrows_out().iter().map(|&a| m.mat(a).into_owned()).collect();
            let stacked = Matrix::vstack(f, m.dim(v), &[&outs[0], &outs[1]]);
            let k = m.dim(v) - stacked.rank();
            (k > 0).then_some((v, k))
        })
        .collect()
}

fn radical_layers(m: &Representation) -> Vec<BTreeMap<Vertex, usize>> {
    let mut layers = Vec::new();
    let mut current = m.clone();
    while !current.is_zero() {
        let (rad, _) = submodule(&current, &radical(&current)).expect("radical is a submodule");
        let mut top = dims_of(&current);
        for (v, d) in dims_of(&rad) {
            *top.get_mut(&v).unwrap() -= d;
        }
        top.retain(|_, d| *d > 0);
        layers.push(top);
        current = rad;
    }
    layers
}

fn arrows_in(w: &QuiverWindow) -> Vec<Arrow> {
    w.arrows().to_vec()
}

fn criterion_1() -> Outcome {
    let q = Field::Rationals;
    for (v, middle, bottom) in [
        (Vertex::one(0), Vertex::two(0), Vertex::one(-1)),
        (Vertex::two(0), Vertex::one(-1), Vertex::two(-1)),
    ] {
        let p = indecomposable_projective(v, q);
        ensure(p.total_dim() == 4, || format!("P({v}) has dimension {}", p.total_dim()))?;
        ensure(p.validate().is_empty(), || format!("P({v}) violates relations"))?;
        let expected = vec![
            BTreeMap::from([(v, 1)]),
            BTreeMap::from([(middle, 2)]),
            BTreeMap::from([(bottom, 1)]),
        ];
        let layers = radical_layers(&p);
        ensure(layers == expected, || format!("radical layers of P({v}): {layers:?}"))?;
        let soc = socle_dims(&p);
        ensure(soc == BTreeMap::from([(bottom, 1)]), || format!("socle of P({v}): {soc:?}"))?;
    }
    Ok("P(1@0), P(2@0): dim 4, layers top/2 middle/socle, valid".into())
}

/// Per-simple `(ext1, stable end, verdict)` over window(−2, 2).
fn simples_table(f: Field) -> Result<Vec<(String, usize, usize, Verdict)>, String> {
    window(-2, 2)
        .vertices()
        .iter()
        .map(|&v| {
            let s = simple(v, f);
            let e = ext1_dim(&s, &s).map_err(|e| e.to_string())?;
            let st = stable_hom_dim(&s, &s).map_err(|e| e.to_string())?;
            let r = classify_versal_ring(&s, 6).map_err(|e| e.to_string())?;
            Ok((v.to_string(), e, st, r.verdict))
        })
        .collect()
}

fn criterion_2_over(f: Field) -> Outcome {
    let table = simples_table(f)?;
    for (v, e, st, verdict) in &table {
        ensure(*e == 0 && *st == 1 && *verdict == Verdict::Field, || {
            format!("S({v}) over {f}: ext1 {e}, stable end {st}, verdict {verdict}")
        })?;
    }
    Ok(format!("{} simples: Ext1 0, stable End 1, verdict k", table.len()))
}

fn arrows_table(f: Field) -> Result<Vec<ArrowRow>, String> {
    arrows_in(&window(-2, 2))
        .into_iter()
        .map(|a| {
            let m = word(&a.to_string(), f);
            let err = |e: repalg::Error| format!("{a}: {e}");
            let st = stable_hom_dim(&m, &m).map_err(err)?;
            let e = ext1_dim(&m, &m).map_err(err)?;
            let tangent = first_order_lifts(&m).map_err(err)?;
            let reached = match tangent.first() {
                Some(c) => {
                    let lift = Lift::from_first_order(&m, c).map_err(err)?;
                    match extend_lift(&lift, 6).map_err(err)? {
                        LiftOutcome::Lifted(l) => l.order(),
                        LiftOutcome::Obstructed(o) => o.order - 1,
                    }
                }
                None => 0,
            };
            let verdict = classify_versal_ring(&m, 6).map_err(err)?.verdict;
            Ok((a.to_string(), st, e, tangent.len(), reached, verdict))
        })
        .collect()
}

fn criterion_3_over(f: Field) -> Outcome {
    let table = arrows_table(f)?;
    for (a, st, e, t, reached, verdict) in &table {
        ensure(
            *st == 1 && *e == 1 && *t == 1 && *reached == 6 && *verdict == Verdict::PowerSeries,
            || format!("M[{a}] over {f}: stable end {st}, ext1 {e}, tangent {t}, reached {reached}, verdict {verdict}"),
        )?;
    }
    Ok(format!("{} arrow modules: stable End 1, Ext1 1, lifts to order 6, verdict k[[t]]", table.len()))
}

fn corpus(f: Field) -> Vec<(String, Representation)> {
    string_corpus(&window(-2, 2), 4, f)
        .into_iter()
        .map(|(w, m)| (w.to_string(), m))
        .collect()
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let corpus = corpus(Field::Rationals);
    ensure(corpus.len() >= 20, || format!("corpus has only {} modules", corpus.len()))?;
    let modules: Vec<Representation> = corpus.iter().map(|(_, m)| m.clone()).collect();
    let results = batch::tangent_vs_ext(Exec::default(), &modules);
    for ((w, _), r) in corpus.iter().zip(results) {
        let (t, e) = r.map_err(|e| format!("{w}: {e}"))?;
        ensure(t == e, || format!("{w}: {t} first-order classes vs Ext1 {e}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("corpus took {elapsed:?}"))?;
    Ok(format!("{} string modules agree, {:.2?}", corpus.len(), elapsed))
}

fn criterion_5() -> Outcome {
    let corpus = corpus(Field::Rationals);
    let checked = batch::map(Exec::default(), &corpus, |(w, m)| -> Result<bool, String> {
        let st = stable_hom_dim(m, m).map_err(|e| format!("{w}: {e}"))?;
        if st != 1 {
            return Ok(false);
        }
        verify_invariance(m, 6).map_err(|e| format!("{w}: {e}"))?;
        Ok(true)
    });
    let mut count = 0;
    for r in checked {
        count += r? as usize;
    }
    ensure(count > 0, || "no corpus module has stable End of dimension 1".into())?;
    Ok(format!("{count} modules with stable End k: M, ΩM, νM, τM, M⊕P agree"))
}

fn criterion_6() -> Outcome {
    let q = Field::Rationals;
    ensure(iso_witnessed(&syzygy(&word("a0", q)).unwrap(), &word("B0", q)), || "Ω M[a0] ≇ M[B0]".into())?;
    ensure(iso_witnessed(&syzygy(&word("b0", q)).unwrap(), &word("A0", q)), || "Ω M[b0] ≇ M[A0]".into())?;
    for v in window(-2, 2).vertices() {
        let p = indecomposable_projective(*v, q);
        ensure(syzygy(&p).unwrap().is_zero(), || format!("Ω P({v}) is nonzero"))?;
    }
    let corpus = corpus(q);
    let ok = batch::map(Exec::default(), &corpus, |(w, m)| {
        let back = syzygy(m).and_then(|o| cosyzygy(&o)).map_err(|e| format!("{w}: {e}"))?;
        ensure(iso_witnessed(&back, m), || format!("Ω⁻¹Ω M[{w}] ≇ M[{w}]"))
    });
    for r in ok {
        r?;
    }
    Ok(format!("Ω M[a0] ≅ M[B0], Ω M[b0] ≅ M[A0], Ω P = 0, Ω⁻¹Ω ≅ id on {} modules", corpus.len()))
}

fn criterion_7() -> Outcome {
    let q = Field::Rationals;
    let mut modules: Vec<Representation> = ["1@0", "2@0", "a0", "b0", "A0", "B0", "B0 A0^-1 B0", "b0^-1 a0"]
        .iter()
        .map(|w| word(w, q))
        .collect();
    modules.push(indecomposable_projective(Vertex::one(0), q));
    modules.push(indecomposable_projective(Vertex::two(0), q));
    let table = batch::stable_hom_table(Exec::default(), &modules);
    ensure(table.len() == 100, || format!("{} pairs", table.len()))?;
    for (k, r) in table.into_iter().enumerate() {
        let r = r.map_err(|e| e.to_string())?;
        ensure(r.agree(), || {
            format!("pair {k}: hull route {} vs cover route {}", r.through_hull, r.through_cover)
        })?;
    }
    Ok("100 pairs: injective-hull and projective-cover routes agree".into())
}

fn criterion_8() -> Outcome {
    let q = Field::Rationals;
    let arrows = arrows_in(&window(-1, 1));
    for a in &arrows {
        let m = word(&a.to_string(), q);
        let t = ar_translate(&m).map_err(|e| e.to_string())?;
        ensure(iso_witnessed(&t, &m), || format!("τ M[{a}] ≇ M[{a}]"))?;
    }
    Ok(format!("τ M[C] ≅ M[C] for {} arrows", arrows.len()))
}

fn criterion_9() -> Outcome {
    let fields = [Field::Rationals, Field::prime(5).unwrap(), Field::prime(101).unwrap()];
    let mut simples = Vec::new();
    let mut arrows = Vec::new();
    for f in fields {
        criterion_2_over(f).map_err(|e| format!("case 1 over {f}: {e}"))?;
        criterion_3_over(f).map_err(|e| format!("case 2 over {f}: {e}"))?;
        simples.push(simples_table(f)?);
        arrows.push(arrows_table(f)?);
    }
    ensure(simples.windows(2).all(|w| w[0] == w[1]), || "simple tables differ across fields".into())?;
    ensure(arrows.windows(2).all(|w| w[0] == w[1]), || "arrow tables differ across fields".into())?;
    Ok("criteria 2 and 3 identical over Q, F5, F101".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("projective structure", criterion_1),
        ("simples: Ext1 0, verdict k", || criterion_2_over(Field::Rationals)),
        ("arrow modules: verdict k[[t]]", || criterion_3_over(Field::Rationals)),
        ("tangent space vs Ext1 on corpus", criterion_4),
        ("invariance under Ω, ν, τ, ⊕P", criterion_5),
        ("syzygy identities", criterion_6),
        ("stable Hom routes agree", criterion_7),
        ("τ fixes arrow modules", criterion_8),
        ("field robustness", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}  ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}  ({why})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
