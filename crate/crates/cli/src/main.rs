//! `baire` — closure algebras of finite preorder frames on the command line:
//! quotients by the meager ideal, Baire resolutions, embeddings, and decision
//! procedures for S5, its cluster extensions, and the universal modality.

mod files;
mod report;

use baire_core::algebra::{
    kappa_disconnected, kur_algebra_from_frame, verify_axioms, AxiomVerdict, ClosureAlgebra,
    LawSet,
};
use baire_core::decision::{
    classify_scroggs_with_budget, entails_global_with_budget, s5_decide_with_budget,
    s5n_decide_with_budget, s5u_decide_with_bounds, valid_in_algebra_with_budget, Countermodel,
    ScroggsClass, DEFAULT_SCROGGS_CAP, DEFAULT_SWEEP_BUDGET,
};
use baire_core::formula::parse;
use baire_core::maps::{
    build_s5n_subalgebra, check_baire_map, embed_s5_frame, find_baire_resolution,
};
use baire_core::quotient::{build_quotient, BaireQuotient};
use baire_core::{Frame, Subset};
use clap::{Parser, Subcommand, ValueEnum};
use report::{Format, Report};
use serde_json::{json, Map, Value};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "baire", version, about, disable_help_subcommand = true)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Human => Format::Human,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Logic {
    S5,
    S5n,
    S5u,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyLaws {
    Closure,
    Monadic,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and report its shape.
    Parse { formula: String },
    /// Decide validity in S5, on the n-cluster (s5n), or with the universal
    /// modality (s5u).
    Decide {
        #[arg(long, value_enum, default_value_t = Logic::S5)]
        logic: Logic,
        /// Cluster size; required for --logic s5n.
        #[arg(long)]
        n: Option<usize>,
        /// Largest number of cases any sweep may enumerate.
        #[arg(long, default_value_t = DEFAULT_SWEEP_BUDGET)]
        budget: u64,
        formula: String,
    },
    /// Locate S5 + formula on the chain of consistent extensions of S5.
    Classify {
        /// Largest cluster level reported exactly.
        #[arg(long, default_value_t = DEFAULT_SCROGGS_CAP)]
        cap: usize,
        #[arg(long, default_value_t = DEFAULT_SWEEP_BUDGET)]
        budget: u64,
        formula: String,
    },
    /// Check validity in the closure algebra of a frame, or in the quotient
    /// of a frame by its meager ideal.
    Valid {
        #[arg(long, conflicts_with = "quotient_of_frame")]
        frame: Option<PathBuf>,
        #[arg(long)]
        quotient_of_frame: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SWEEP_BUDGET)]
        budget: u64,
        formula: String,
    },
    /// Build the quotient by the meager ideal and report its shape.
    Quotient {
        #[arg(long)]
        frame: PathBuf,
        /// Verify the closure laws, or the monadic law as well.
        #[arg(long, value_enum)]
        verify: Option<VerifyLaws>,
        /// List the quasimaximal worlds by name.
        #[arg(long)]
        show_qmax: bool,
    },
    /// Search for a Baire k-resolution of a frame.
    Resolve {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Split the quotient of a frame into k disjoint nonzero clopens.
    Disconnect {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Classify a partial map between two frames (Baire map flags).
    MapCheck {
        #[arg(long)]
        map: PathBuf,
    },
    /// Embed the algebra of an S5 frame into the quotient of a space.
    Embed {
        /// Frame whose algebra is embedded (a disjoint union of clusters).
        #[arg(long)]
        s5_frame: PathBuf,
        /// Space whose quotient receives the embedding.
        #[arg(long)]
        space: PathBuf,
    },
    /// Build the subalgebra of a quotient generated by the clopens and an
    /// embedded n-cluster algebra.
    SubalgebraS5n {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Global entailment: if every premise is valid, the conclusion must be.
    Entails {
        /// Premise file, one formula per line; # starts a comment.
        #[arg(long)]
        gamma: PathBuf,
        #[arg(long, conflicts_with = "quotient_of_frame")]
        frame: Option<PathBuf>,
        #[arg(long)]
        quotient_of_frame: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SWEEP_BUDGET)]
        budget: u64,
        formula: String,
    },
}

fn main() {
    let cli = Cli::parse();
    let report = run(cli.command);
    print!("{}", report.render(cli.format.into()));
    std::process::exit(report.exit_code());
}

fn run(cmd: Command) -> Report {
    match cmd {
        Command::Parse { formula } => cmd_parse(&formula),
        Command::Decide { logic, n, budget, formula } => cmd_decide(logic, n, budget, &formula),
        Command::Classify { cap, budget, formula } => cmd_classify(cap, budget, &formula),
        Command::Valid { frame, quotient_of_frame, budget, formula } => {
            cmd_valid(frame, quotient_of_frame, budget, &formula)
        }
        Command::Quotient { frame, verify, show_qmax } => cmd_quotient(&frame, verify, show_qmax),
        Command::Resolve { frame, k } => cmd_resolve(&frame, k),
        Command::Disconnect { frame, k } => cmd_disconnect(&frame, k),
        Command::MapCheck { map } => cmd_map_check(&map),
        Command::Embed { s5_frame, space } => cmd_embed(&s5_frame, &space),
        Command::SubalgebraS5n { frame, n } => cmd_subalgebra(&frame, n),
        Command::Entails { gamma, frame, quotient_of_frame, budget, formula } => {
            cmd_entails(&gamma, frame, quotient_of_frame, budget, &formula)
        }
    }
}

/// Subset as a JSON array of world indices.
fn indices_json(s: Subset) -> Value {
    Value::Array(s.iter().map(|i| json!(i)).collect())
}

/// Subset as a JSON array of world names of a frame.
fn names_json(fr: &Frame, s: Subset) -> Value {
    Value::Array(s.iter().map(|w| json!(fr.name(w))).collect())
}

/// Countermodel from a cluster procedure: sizes, assignment, and value, with
/// sets as world indices of the cluster frame.
fn countermodel_json(cm: &Countermodel) -> Value {
    let mut assignment = Map::new();
    for &(var, set) in &cm.assignment {
        assignment.insert(format!("p{var}"), indices_json(set));
    }
    json!({
        "cluster_sizes": cm.cluster_sizes,
        "assignment": Value::Object(assignment),
        "value": indices_json(cm.value),
    })
}

fn cmd_parse(src: &str) -> Report {
    const CMD: &str = "parse";
    let f = match parse(src) {
        Ok(f) => f,
        Err(e) => return Report::error(CMD, e.to_string()),
    };
    let vars: Vec<String> = f.variables().into_iter().map(|i| format!("p{i}")).collect();
    Report::ok(
        CMD,
        json!({
            "formula": f.render(),
            "size": f.size(),
            "variables": vars,
            "diamonds": f.diamond_count(),
            "foralls": f.forall_count(),
        }),
    )
}

fn cmd_decide(logic: Logic, n: Option<usize>, budget: u64, src: &str) -> Report {
    const CMD: &str = "decide";
    let f = match parse(src) {
        Ok(f) => f,
        Err(e) => return Report::error(CMD, e.to_string()),
    };
    let (name, result) = match logic {
        Logic::S5 => ("s5", s5_decide_with_budget(&f, budget)),
        Logic::S5n => {
            let Some(n) = n else {
                return Report::error(CMD, "--logic s5n requires --n");
            };
            ("s5n", s5n_decide_with_budget(&f, n, budget))
        }
        Logic::S5u => (
            "s5u",
            s5u_decide_with_bounds(&f, f.forall_count() + 1, f.diamond_count() + 1, budget),
        ),
    };
    let verdict = match result {
        Ok(v) => v,
        Err(e) => return Report::error(CMD, e.to_string()),
    };
    let mut payload = Map::new();
    payload.insert("logic".into(), json!(name));
    if let Some(n) = n {
        payload.insert("n".into(), json!(n));
    }
    payload.insert("formula".into(), json!(f.render()));
    payload.insert("valid".into(), json!(verdict.valid));
    match verdict.countermodel {
        None => Report::ok(CMD, Value::Object(payload)),
        Some(cm) => {
            payload.insert("countermodel".into(), countermodel_json(&cm));
            Report::fail(CMD, Value::Object(payload), "countermodel found")
        }
    }
}

fn cmd_classify(cap: usize, budget: u64, src: &str) -> Report {
    const CMD: &str = "classify";
    let f = match parse(src) {
        Ok(f) => f,
        Err(e) => return Report::error(CMD, e.to_string()),
    };
    match classify_scroggs_with_budget(&f, cap, budget) {
        Ok(ScroggsClass::S5) => {
            Report::ok(CMD, json!({"formula": f.render(), "class": "s5"}))
        }
        Ok(ScroggsClass::Inconsistent) => {
            Report::ok(CMD, json!({"formula": f.render(), "class": "inconsistent"}))
        }
        Ok(ScroggsClass::Level(n)) => Report::ok(
            CMD,
            json!({"formula": f.render(), "class": "level", "level": n, "cap": cap}),
        ),
        Err(e) => Report::error(CMD, e.to_string()),
    }
}

/// The algebra a validity command runs in: a frame's closure algebra, or the
/// quotient of a frame by its meager ideal.
enum AlgebraSource {
    Kur { frame: Frame, algebra: ClosureAlgebra },
    Quotient(BaireQuotient),
}

impl AlgebraSource {
    fn load(frame: Option<PathBuf>, quotient_of: Option<PathBuf>) -> Result<AlgebraSource, String> {
        match (frame, quotient_of) {
            (Some(path), None) => {
                let frame = files::load_frame(&path)?;
                let algebra = kur_algebra_from_frame(&frame);
                Ok(AlgebraSource::Kur { frame, algebra })
            }
            (None, Some(path)) => Ok(AlgebraSource::Quotient(build_quotient(&files::load_frame(
                &path,
            )?))),
            _ => Err("exactly one of --frame or --quotient-of-frame is required".to_string()),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            AlgebraSource::Kur { .. } => "kuratowski",
            AlgebraSource::Quotient(_) => "quotient",
        }
    }

    fn algebra(&self) -> &ClosureAlgebra {
        match self {
            AlgebraSource::Kur { algebra, .. } => algebra,
            AlgebraSource::Quotient(q) => q.algebra(),
        }
    }

    /// Render an algebra element as world names (class representatives for
    /// the quotient).
    fn set_repr(&self, s: Subset) -> Result<Value, String> {
        match self {
            AlgebraSource::Kur { frame, .. } => Ok(names_json(frame, s)),
            AlgebraSource::Quotient(q) => {
                let e = q.algebra().element(s).map_err(|e| e.to_string())?;
                Ok(names_json(q.frame(), q.decompress(e).rep()))
            }
        }
    }

    fn countermodel_json(&self, cm: &Countermodel) -> Result<Value, String> {
        let mut assignment = Map::new();
        for &(var, set) in &cm.assignment {
            assignment.insert(format!("p{var}"), self.set_repr(set)?);
        }
        Ok(json!({
            "assignment": Value::Object(assignment),
            "value": self.set_repr(cm.value)?,
        }))
    }
}

fn cmd_valid(
    frame: Option<PathBuf>,
    quotient_of: Option<PathBuf>,
    budget: u64,
    src: &str,
) -> Report {
    const CMD: &str = "valid";
    let f = match parse(src) {
        Ok(f) => f,
        Err(e) => return Report::error(CMD, e.to_string()),
    };
    let source = match AlgebraSource::load(frame, quotient_of) {
        Ok(s) => s,
        Err(e) => return Report::error(CMD, e),
    };
    let verdict = match valid_in_algebra_with_budget(source.algebra(), &f, budget) {
        Ok(v) => v,
        Err(e) => return Report::error(CMD, e.to_string()),
    };
    let mut payload = Map::new();
    payload.insert("algebra".into(), json!(source.kind()));
    payload.insert("formula".into(), json!(f.render()));
    payload.insert("valid".into(), json!(verdict.valid));
    match verdict.countermodel {
        None => Report::ok(CMD, Value::Object(payload)),
        Some(cm) => match source.countermodel_json(&cm) {
            Ok(v) => {
                payload.insert("countermodel".into(), v);
                Report::fail(CMD, Value::Object(payload), "countermodel found")
            }
            Err(e) => Report::error(CMD, e),
        },
    }
}

fn cmd_quotient(path: &PathBuf, verify: Option<VerifyLaws>, show_qmax: bool) -> Report {
    const CMD: &str = "quotient";
    let fr = match files::load_frame(path) {
        Ok(fr) => fr,
        Err(e) => return Report::error(CMD, e),
    };
    let q = build_quotient(&fr);
    let mut payload = Map::new();
    payload.insert("worlds".into(), json!(fr.len()));
    payload.insert("qmax_size".into(), json!(q.qmax().len()));
    payload.insert("classes".into(), json!(q.algebra().carrier_len()));
    payload.insert("trivial".into(), json!(q.is_trivial()));
    if show_qmax {
        payload.insert("qmax".into(), names_json(&fr, q.qmax()));
    }
    let Some(laws) = verify else {
        return Report::ok(CMD, Value::Object(payload));
    };
    let law_set = match laws {
        VerifyLaws::Closure => LawSet::Closure,
        VerifyLaws::Monadic => LawSet::Monadic,
    };
    match verify_axioms(q.algebra(), law_set) {
        Ok(AxiomVerdict::Pass) => {
            payload.insert("verify".into(), json!("pass"));
            Report::ok(CMD, Value::Object(payload))
        }
        Ok(AxiomVerdict::Fail(w)) => {
            let a = names_json(q.frame(), q.decompress(w.a).rep());
            let b = w.b.map(|b| names_json(q.frame(), q.decompress(b).rep()));
            payload.insert(
                "verify".into(),
                json!({"law": w.law.to_string(), "a": a, "b": b}),
            );
            Report::fail(CMD, Value::Object(payload), format!("law failed: {}", w.law))
        }
        Err(e) => Report::error(CMD, e.to_string()),
    }
}

fn cmd_resolve(path: &PathBuf, k: usize) -> Report {
    const CMD: &str = "resolve";
    let fr = match files::load_frame(path) {
        Ok(fr) => fr,
        Err(e) => return Report::error(CMD, e),
    };
    match find_baire_resolution(&fr, k) {
        Ok(Some(res)) => {
            let parts: Vec<Value> =
                res.parts().iter().map(|&p| names_json(&fr, p)).collect();
            Report::ok(CMD, json!({"k": k, "parts": parts}))
        }
        Ok(None) => Report::fail(
            CMD,
            json!({"k": k, "resolution": null}),
            format!("no Baire {k}-resolution"),
        ),
        Err(e) => Report::error(CMD, e.to_string()),
    }
}

fn cmd_disconnect(path: &PathBuf, k: usize) -> Report {
    const CMD: &str = "disconnect";
    let fr = match files::load_frame(path) {
        Ok(fr) => fr,
        Err(e) => return Report::error(CMD, e),
    };
    let q = build_quotient(&fr);
    match kappa_disconnected(q.algebra(), k) {
        Ok(Some(parts)) => {
            let classes: Vec<Value> = parts
                .iter()
                .map(|&e| names_json(q.frame(), q.decompress(e).rep()))
                .collect();
            Report::ok(CMD, json!({"k": k, "classes": classes}))
        }
        Ok(None) => Report::fail(
            CMD,
            json!({"k": k, "classes": null}),
            format!("the quotient has fewer than {k} clopen atoms"),
        ),
        Err(e) => Report::error(CMD, e.to_string()),
    }
}

fn cmd_map_check(path: &PathBuf) -> Report {
    const CMD: &str = "map-check";
    let map = match files::load_map(path) {
        Ok(m) => m,
        Err(e) => return Report::error(CMD, e),
    };
    match check_baire_map(&map) {
        Ok(r) => {
            let payload = json!({
                "almost_everywhere": r.almost_everywhere,
                "proper": r.proper,
                "baire_continuous": r.baire_continuous,
                "baire_open": r.baire_open,
                "exact": r.exact,
                "baire_map": r.is_baire_map,
            });
            if r.is_baire_map {
                Report::ok(CMD, payload)
            } else {
                Report::fail(CMD, payload, "not a Baire map")
            }
        }
        Err(e) => Report::error(CMD, e.to_string()),
    }
}

fn cmd_embed(s5_frame: &PathBuf, space: &PathBuf) -> Report {
    const CMD: &str = "embed";
    let w = match files::load_frame(s5_frame) {
        Ok(f) => f,
        Err(e) => return Report::error(CMD, e),
    };
    let sp = match files::load_frame(space) {
        Ok(f) => f,
        Err(e) => return Report::error(CMD, e),
    };
    let hom = match embed_s5_frame(&w, &sp) {
        Ok(Some(hom)) => hom,
        Ok(None) => {
            return Report::fail(
                CMD,
                json!({"embedding": null}),
                "no embedding exists for this pair",
            )
        }
        Err(e) => return Report::error(CMD, e.to_string()),
    };
    let graph: Vec<Value> = hom
        .map()
        .graph()
        .iter()
        .enumerate()
        .filter_map(|(x, y)| y.map(|y| json!([sp.name(x), w.name(y)])))
        .collect();
    let checks = (|| -> Result<(bool, bool), String> {
        let ops = hom.preserves_boolean_ops().map_err(|e| e.to_string())?;
        let clo = hom.preserves_closure().map_err(|e| e.to_string())?;
        let inj = hom.is_injective().map_err(|e| e.to_string())?;
        Ok((ops && clo, inj))
    })();
    match checks {
        Ok((homomorphism, injective)) => {
            let payload = json!({"map": graph, "homomorphism": homomorphism, "injective": injective});
            if homomorphism && injective {
                Report::ok(CMD, payload)
            } else {
                Report::fail(CMD, payload, "embedding check failed")
            }
        }
        Err(e) => Report::error(CMD, e),
    }
}

fn cmd_subalgebra(path: &PathBuf, n: usize) -> Report {
    const CMD: &str = "subalgebra-s5n";
    let fr = match files::load_frame(path) {
        Ok(fr) => fr,
        Err(e) => return Report::error(CMD, e),
    };
    match build_s5n_subalgebra(&fr, n) {
        Ok(Some(sub)) => {
            let q = build_quotient(&fr);
            let clopens = match q.algebra().clopen_elements() {
                Ok(c) => c,
                Err(e) => return Report::error(CMD, e.to_string()),
            };
            let contains = clopens.iter().all(|e| sub.contains(e.subset()));
            Report::ok(
                CMD,
                json!({
                    "n": n,
                    "atoms": sub.atoms(),
                    "classes": sub.carrier_len(),
                    "contains_clopens": contains,
                }),
            )
        }
        Ok(None) => Report::fail(
            CMD,
            json!({"n": n, "subalgebra": null}),
            format!("no Baire {n}-resolution"),
        ),
        Err(e) => Report::error(CMD, e.to_string()),
    }
}

fn cmd_entails(
    gamma_path: &PathBuf,
    frame: Option<PathBuf>,
    quotient_of: Option<PathBuf>,
    budget: u64,
    src: &str,
) -> Report {
    const CMD: &str = "entails";
    let gamma = match files::load_gamma(gamma_path) {
        Ok(g) => g,
        Err(e) => return Report::error(CMD, e),
    };
    let f = match parse(src) {
        Ok(f) => f,
        Err(e) => return Report::error(CMD, e.to_string()),
    };
    let source = match AlgebraSource::load(frame, quotient_of) {
        Ok(s) => s,
        Err(e) => return Report::error(CMD, e),
    };
    match entails_global_with_budget(source.algebra(), &gamma, &f, budget) {
        Ok(true) => Report::ok(
            CMD,
            json!({"algebra": source.kind(), "premises": gamma.len(), "entails": true}),
        ),
        Ok(false) => Report::fail(
            CMD,
            json!({"algebra": source.kind(), "premises": gamma.len(), "entails": false}),
            "premises hold but the conclusion fails",
        ),
        Err(e) => Report::error(CMD, e.to_string()),
    }
}
