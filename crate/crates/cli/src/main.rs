use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use repalg::deformation::{
    classify_versal_ring, extend_lift, first_order_lifts, verify_invariance, Lift, LiftOutcome,
};
use repalg::frobenius::{ar_translate, cosyzygy, ext1_dim, nakayama_shift, stable_hom_routes, syzygy};
use repalg::json::{module_from_str, module_to_json, violations_to_json};
use repalg::orbit::orbit_graph;
use repalg::rep::{dim_vector_label, hom_dim, is_isomorphic, IsoOutcome, Representation};
use repalg::strings::{enumerate_strings, parse_string, string_module};
use repalg::{Error, Field, QuiverWindow};

#[derive(Parser)]
#[command(name = "repalg", version, about = "Modules over the repetitive Kronecker algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Inputs {
    /// Module given as a string word, e.g. "a0" or "A0^-1 B0" (repeatable)
    #[arg(long = "string", value_name = "WORD")]
    strings: Vec<String>,
    /// Module given as a JSON file (repeatable; order is kept when mixed with --string)
    #[arg(long = "module", value_name = "FILE")]
    modules: Vec<PathBuf>,
    /// Ground field: Q or F<p>
    #[arg(long)]
    field: Option<Field>,
    /// Re-embed inputs into this window, as zmin:zmax
    #[arg(long, value_name = "ZMIN:ZMAX", allow_hyphen_values = true, value_parser = parse_window)]
    window: Option<QuiverWindow>,
    /// Machine-readable output, including errors
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone)]
struct Emit {
    /// Write the result to FILE instead of stdout
    #[arg(long, value_name = "FILE")]
    emit: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print a module
    Show(Inputs),
    /// List relation violations
    Validate(Inputs),
    /// dim Hom(M, N), and whether M ≅ N
    Hom(Inputs),
    /// dim of stable Hom(M, N), by both factorization routes
    Stablehom(Inputs),
    /// dim Ext¹(M, N); with one input, Ext¹(M, M)
    Ext(Inputs),
    /// Syzygy Ω M
    Omega {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        emit: Emit,
    },
    /// Cosyzygy Ω⁻¹ M
    Coomega {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        emit: Emit,
    },
    /// Nakayama shift ν^k M
    Nu {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        emit: Emit,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        shift: i64,
    },
    /// Auslander–Reiten translate τ M = ν Ω² M
    Tau {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        emit: Emit,
    },
    /// Classify the versal deformation ring of M
    Classify {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value_t = repalg::DEFAULT_TEST_ORDER)]
        order: usize,
        /// Also compare against Ω M, ν M, τ M and M ⊕ P
        #[arg(long)]
        check_invariance: bool,
    },
    /// Lift every tangent direction of M to k[t]/(t^order)
    Lift {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value_t = repalg::DEFAULT_TEST_ORDER)]
        order: usize,
    },
    /// Orbit graph under Ω, Ω⁻¹, ν, τ
    Orbit {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        emit: Emit,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long, value_enum, default_value = "dot")]
        format: GraphFormat,
    },
    /// List canonical string words in a window
    Enumerate {
        /// Window as zmin:zmax
        #[arg(long, value_name = "ZMIN:ZMAX", allow_hyphen_values = true, value_parser = parse_window,
              default_value = "0:0")]
        window: QuiverWindow,
        #[arg(long, default_value_t = 2)]
        max_len: usize,
        #[arg(long)]
        json: bool,
    },
}

fn parse_window(s: &str) -> Result<QuiverWindow, String> {
    let (lo, hi) = s.split_once(':').ok_or("expected zmin:zmax")?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("invalid zmin {lo:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("invalid zmax {hi:?}"))?;
    QuiverWindow::new(lo, hi).map_err(|e| e.to_string())
}

/// Failure of a command: usage problems exit 2, domain errors exit 1.
enum Failure {
    Usage(String),
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Domain(e)
    }
}

struct Named {
    label: String,
    module: Representation,
}

/// Inputs in command-line order, with `--string` and `--module` interleaved.
fn load_inputs(inputs: &Inputs, matches: &ArgMatches) -> Result<Vec<Named>, Failure> {
    let mut order: Vec<(usize, bool, usize)> = Vec::new();
    for (kind, id) in [(true, "strings"), (false, "modules")] {
        if let Some(idx) = matches.indices_of(id) {
            order.extend(idx.enumerate().map(|(k, i)| (i, kind, k)));
        }
    }
    order.sort();

    // The field comes from --field, else the first file that declares one, else Q.
    let mut files = Vec::new();
    for path in &inputs.modules {
        let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        files.push(text);
    }
    let mut field = inputs.field;
    if field.is_none() {
        for text in &files {
            if let Ok(v) = serde_json::from_str::<Value>(text) {
                if let Some(f) = v.get("field").and_then(Value::as_str) {
                    field = Some(f.parse()?);
                    break;
                }
            }
        }
    }
    let field = field.unwrap_or(Field::Rationals);

    let mut out = Vec::new();
    for (_, is_string, k) in order {
        let named = if is_string {
            let w = parse_string(&inputs.strings[k])?;
            Named {
                label: w.to_string(),
                module: string_module(&w, field),
            }
        } else {
            let path = &inputs.modules[k];
            let module = module_from_str(&files[k], Some(field))
                .map_err(|e| Failure::Domain(prefix_error(e, &path.display().to_string())))?;
            Named {
                label: path.display().to_string(),
                module,
            }
        };
        let module = match &inputs.window {
            Some(w) => {
                let union = named.module.trimmed().window().union(w);
                if union != *w {
                    return Err(Failure::Domain(Error::Precondition(format!(
                        "{} does not fit in window {}:{}",
                        named.label,
                        w.z_min(),
                        w.z_max()
                    ))));
                }
                named.module.with_window(w)
            }
            None => named.module,
        };
        out.push(Named { module, ..named });
    }
    Ok(out)
}

fn prefix_error(e: Error, path: &str) -> Error {
    match e {
        Error::Parse(s) => Error::Parse(format!("{path}: {s}")),
        Error::ShapeMismatch(s) => Error::ShapeMismatch(format!("{path}: {s}")),
        other => other,
    }
}

fn exactly<const N: usize>(mut v: Vec<Named>, verb: &str) -> Result<[Named; N], Failure> {
    if v.len() != N {
        return Err(Failure::Usage(format!("{verb} takes {N} module(s), got {}", v.len())));
    }
    v.truncate(N);
    Ok(v.try_into().ok().expect("length checked"))
}

fn require_valid(n: &Named) -> Result<(), Failure> {
    match n.module.validate().first() {
        Some(v) => Err(Failure::Domain(Error::RelationViolation(format!("{}: {v}", n.label)))),
        None => Ok(()),
    }
}

fn render_module(m: &Representation) -> String {
    let mut out = format!(
        "field {}\nwindow {}:{}\ndims {}\n",
        m.field(),
        m.window().z_min(),
        m.window().z_max(),
        dim_vector_label(m)
    );
    for (a, x) in m.arrow_matrices() {
        if x.is_zero() {
            continue;
        }
        let rows: Vec<String> = x
            .row_vecs()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        out.push_str(&format!("{a}: [{}]\n", rows.join("; ")));
    }
    out
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

/// Writes to `--emit` if given, else returns the text for stdout.
fn emit(text: String, target: &Emit) -> Result<String, Failure> {
    match &target.emit {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn module_output(m: &Representation, inputs: &Inputs, target: &Emit) -> Result<String, Failure> {
    // Emitted files are always JSON so they can be read back with --module.
    if target.emit.is_some() || inputs.json {
        emit(pretty(&module_to_json(m)), target)
    } else {
        Ok(render_module(m))
    }
}

fn iso_word(o: &IsoOutcome) -> &'static str {
    match o {
        IsoOutcome::Isomorphic(_) => "yes",
        IsoOutcome::NotIsomorphic => "no",
        IsoOutcome::Undecided => "undecided",
    }
}

fn run(command: &Command, sub: &ArgMatches) -> Result<String, Failure> {
    match command {
        Command::Show(inputs) => {
            let [m] = exactly::<1>(load_inputs(inputs, sub)?, "show")?;
            Ok(if inputs.json {
                pretty(&module_to_json(&m.module))
            } else {
                render_module(&m.module)
            })
        }
        Command::Validate(inputs) => {
            let [m] = exactly::<1>(load_inputs(inputs, sub)?, "validate")?;
            let violations = m.module.validate();
            if violations.is_empty() {
                return Ok(if inputs.json { pretty(&json!({"violations": []})) } else { "valid\n".into() });
            }
            if inputs.json {
                // Still a domain failure; the report goes to stdout first.
                print!("{}", pretty(&json!({"violations": violations_to_json(&violations)})));
            } else {
                for v in &violations {
                    println!("violated: {v}");
                }
            }
            Err(Failure::Domain(Error::RelationViolation(format!(
                "{}: {} relation(s) violated",
                m.label,
                violations.len()
            ))))
        }
        Command::Hom(inputs) => {
            let [m, n] = exactly::<2>(load_inputs(inputs, sub)?, "hom")?;
            require_valid(&m)?;
            require_valid(&n)?;
            let d = hom_dim(&m.module, &n.module)?;
            let iso = is_isomorphic(&m.module, &n.module)?;
            Ok(if inputs.json {
                pretty(&json!({"hom_dim": d, "isomorphic": iso_word(&iso)}))
            } else {
                format!("hom_dim {d}\nisomorphic {}\n", iso_word(&iso))
            })
        }
        Command::Stablehom(inputs) => {
            let [m, n] = exactly::<2>(load_inputs(inputs, sub)?, "stablehom")?;
            require_valid(&m)?;
            require_valid(&n)?;
            let r = stable_hom_routes(&m.module, &n.module)?;
            if !r.agree() {
                return Err(Failure::Domain(Error::InvariantBreach(format!(
                    "hull route {} vs cover route {}",
                    r.through_hull, r.through_cover
                ))));
            }
            Ok(if inputs.json {
                pretty(&json!({
                    "stable_hom_dim": r.stable_dim(),
                    "hom_dim": r.hom_dim,
                    "projectively_trivial": r.through_hull,
                }))
            } else {
                format!("{}\n", r.stable_dim())
            })
        }
        Command::Ext(inputs) => {
            let loaded = load_inputs(inputs, sub)?;
            let [m, n] = match loaded.len() {
                1 => {
                    let [m] = exactly::<1>(loaded, "ext")?;
                    let n = Named {
                        label: m.label.clone(),
                        module: m.module.clone(),
                    };
                    [m, n]
                }
                _ => exactly::<2>(loaded, "ext")?,
            };
            require_valid(&m)?;
            require_valid(&n)?;
            let d = ext1_dim(&m.module, &n.module)?;
            Ok(if inputs.json { pretty(&json!({"ext1_dim": d})) } else { format!("{d}\n") })
        }
        Command::Omega { inputs, emit: e } => {
            let [m] = exactly::<1>(load_inputs(inputs, sub)?, "omega")?;
            require_valid(&m)?;
            module_output(&syzygy(&m.module)?, inputs, e)
        }
        Command::Coomega { inputs, emit: e } => {
            let [m] = exactly::<1>(load_inputs(inputs, sub)?, "coomega")?;
            require_valid(&m)?;
            module_output(&cosyzygy(&m.module)?, inputs, e)
        }
        Command::Nu { inputs, emit: e, shift } => {
            let [m] = exactly::<1>(load_inputs(inputs, sub)?, "nu")?;
            require_valid(&m)?;
            module_output(&nakayama_shift(&m.module, *shift), inputs, e)
        }
        Command::Tau { inputs, emit: e } => {
            let [m] = exactly::<1>(load_inputs(inputs, sub)?, "tau")?;
            require_valid(&m)?;
            module_output(&ar_translate(&m.module)?, inputs, e)
        }
        Command::Classify {
            inputs,
            order,
            check_invariance,
        } => {
            let [m] = exactly::<1>(load_inputs(inputs, sub)?, "classify")?;
            require_valid(&m)?;
            let mut report = classify_versal_ring(&m.module, *order)?;
            report.module = m.label.clone();
            let mut v = serde_json::to_value(&report).expect("report serializes");
            if *check_invariance {
                let inv = verify_invariance(&m.module, *order)?;
                v["invariance"] = serde_json::to_value(&inv).expect("report serializes");
            }
            Ok(pretty(&v))
        }
        Command::Lift { inputs, order } => {
            let [m] = exactly::<1>(load_inputs(inputs, sub)?, "lift")?;
            require_valid(&m)?;
            let tangent = first_order_lifts(&m.module)?;
            let mut lifts = Vec::new();
            for class in &tangent {
                let first = Lift::from_first_order(&m.module, class)?;
                let outcome = if *order > 2 {
                    extend_lift(&first, *order)?
                } else {
                    LiftOutcome::Lifted(first.truncate((*order).max(1))?)
                };
                lifts.push(json!({
                    "reached": outcome.lift().order(),
                    "obstruction": outcome.obstruction_order(),
                    "lift": outcome.lift().to_json(),
                }));
            }
            Ok(pretty(&json!({
                "module": m.label,
                "tangent_dim": tangent.len(),
                "lifts": lifts,
            })))
        }
        Command::Orbit {
            inputs,
            emit: e,
            radius,
            format,
        } => {
            let [m] = exactly::<1>(load_inputs(inputs, sub)?, "orbit")?;
            require_valid(&m)?;
            let g = orbit_graph(&m.module, *radius)?;
            let text = match format {
                GraphFormat::Dot => g.to_dot(),
                GraphFormat::Json => pretty(&g.to_json()),
            };
            emit(text, e)
        }
        Command::Enumerate { window, max_len, json } => {
            let words: Vec<String> = enumerate_strings(window, *max_len).iter().map(ToString::to_string).collect();
            Ok(if *json {
                pretty(&json!(words))
            } else {
                words.iter().map(|w| format!("{w}\n")).collect()
            })
        }
    }
}

fn wants_json(command: &Command) -> bool {
    match command {
        Command::Show(i) | Command::Validate(i) | Command::Hom(i) | Command::Stablehom(i) | Command::Ext(i) => i.json,
        Command::Omega { inputs, .. }
        | Command::Coomega { inputs, .. }
        | Command::Nu { inputs, .. }
        | Command::Tau { inputs, .. }
        | Command::Classify { inputs, .. }
        | Command::Lift { inputs, .. }
        | Command::Orbit { inputs, .. } => inputs.json,
        Command::Enumerate { json, .. } => *json,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let matches = Cli::command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let (_, sub) = matches.subcommand().expect("a subcommand is required");
    match run(&cli.command, sub) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(failure) => {
            let (kind, detail) = match failure {
                Failure::Domain(e) => (e.kind(), e.to_string()),
                Failure::Io(msg) => ("io", msg),
                Failure::Usage(_) => unreachable!(),
            };
            if wants_json(&cli.command) {
                println!("{}", json!({"error": {"kind": kind, "detail": detail}}));
            } else {
                eprintln!("error: {detail}");
            }
            ExitCode::from(1)
        }
    }
}
