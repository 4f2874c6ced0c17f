//! `qsober` — finite-model analyses of quantale-valued cotopological
//! spaces: validation, generation, closure, specialization, sobriety,
//! scaling of crisp spaces, negation duality and scripted scenarios.
//!
//! Exit codes: 0 on success, 1 when a scenario's computed values mismatch
//! its registry expectations, 2 on malformed input or a validation error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use qsober::corpus::{self, CorpusParams};
use qsober::{family_json, order_json, scenario, Caps};
use qsober_core::duality;
use qsober_core::error::Result;
use qsober_core::formats::{
    self, CotopologyFile, CrispFile, QOrderFile, QuantaleFile, SpaceSetsFile,
};
use qsober_core::sobriety;
use qsober_core::Quantale;

#[derive(Parser)]
#[command(
    name = "qsober",
    version,
    about = "Finite-model analyses of quantale-valued cotopological spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Cap on Q^X enumerations (env: QSOBER_CAP_ENUM).
    #[arg(long, global = true, value_name = "N")]
    cap_enum: Option<usize>,

    /// Cap on generated closed families (env: QSOBER_CAP_COTOPOLOGY).
    #[arg(long, global = true, value_name = "N")]
    cap_cotopology: Option<usize>,

    /// Write the machine-readable report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a quantale description and echo its derived tables.
    ValidateQuantale {
        #[arg(long, short)]
        quantale: PathBuf,
    },
    /// Generate a cotopology from a subbasis description.
    Generate {
        #[arg(long, short)]
        quantale: PathBuf,
        #[arg(long, short)]
        space: PathBuf,
    },
    /// Closures of named fuzzy sets in a generated space.
    Closure {
        #[arg(long, short)]
        quantale: PathBuf,
        #[arg(long, short)]
        space: PathBuf,
        /// Fuzzy sets to close, on the same points as the space.
        #[arg(long)]
        sets: PathBuf,
    },
    /// Specialization Q-order of a generated space.
    Specialization {
        #[arg(long, short)]
        quantale: PathBuf,
        #[arg(long, short)]
        space: PathBuf,
    },
    /// Alexandroff cotopology (all lower sets) of a Q-order.
    Alexandroff {
        #[arg(long, short)]
        quantale: PathBuf,
        #[arg(long, short)]
        order: PathBuf,
    },
    /// Sobrification of a generated stratified space.
    Sobrify {
        #[arg(long, short)]
        quantale: PathBuf,
        #[arg(long, short)]
        space: PathBuf,
    },
    /// Sober check with the full irreducibles report.
    CheckSober {
        #[arg(long, short)]
        quantale: PathBuf,
        #[arg(long, short)]
        space: PathBuf,
    },
    /// Hausdorff check: is the diagonal closed in the self-product?
    CheckHausdorff {
        #[arg(long, short)]
        quantale: PathBuf,
        #[arg(long, short)]
        space: PathBuf,
    },
    /// Scale a crisp space: the upper-semicontinuous fuzzy sets.
    Lowen {
        #[arg(long, short)]
        quantale: PathBuf,
        #[arg(long, short)]
        crisp: PathBuf,
    },
    /// Negate a cotopology into a topology (needs double negation).
    Dualize {
        #[arg(long, short)]
        quantale: PathBuf,
        #[arg(long, short)]
        space: PathBuf,
    },
    /// Frame-map points of the dual topology of a generated space.
    FrPoints {
        #[arg(long, short)]
        quantale: PathBuf,
        #[arg(long, short)]
        space: PathBuf,
    },
    /// Run a registry scenario by name, or all of them.
    Scenario {
        name: Option<String>,
        /// List scenario names and descriptions.
        #[arg(long)]
        list: bool,
        /// Run every scenario in the registry.
        #[arg(long)]
        all: bool,
    },
    /// Build the seeded corpus and run the property sweeps over it.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 60)]
        count: usize,
        /// Largest quantale size drawn.
        #[arg(long, default_value_t = 4)]
        max_q: usize,
        /// Largest point-set size drawn.
        #[arg(long, default_value_t = 3)]
        max_x: usize,
    },
}

fn load_quantale(path: &Path) -> Result<Quantale> {
    formats::load_json::<QuantaleFile>(path)?.into_quantale()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = Caps::resolve(cli.cap_enum, cli.cap_cotopology);
    match dispatch(&cli.command, &caps) {
        Ok((doc, status)) => {
            if let Some(path) = &cli.report {
                let pretty = serde_json::to_string_pretty(&doc).expect("reports serialize");
                if let Err(e) = std::fs::write(path, pretty + "\n") {
                    eprintln!("error: cannot write report to {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            status
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: &Command, caps: &Caps) -> Result<(Value, ExitCode)> {
    let ok = ExitCode::SUCCESS;
    match command {
        Command::ValidateQuantale { quantale } => {
            let q = load_quantale(quantale)?;
            let doc = formats::quantale_tables(&q);
            println!(
                "quantale OK: {} elements [{}]",
                q.size(),
                q.labels().join(", ")
            );
            println!(
                "linear: {}; double negation: {}; coprimes: [{}] (enough: {})",
                yes_no(q.is_linear()),
                yes_no(q.double_negation_witness().is_none()),
                q.coprimes()
                    .iter()
                    .map(|&p| q.label(p))
                    .collect::<Vec<_>>()
                    .join(", "),
                yes_no(q.has_enough_coprimes()),
            );
            Ok((doc, ok))
        }
        Command::Generate { quantale, space } => {
            let q = load_quantale(quantale)?;
            let tau = formats::load_json::<CotopologyFile>(space)?.resolve(&q, caps.cotopology)?;
            let doc = family_json(&q, &tau);
            println!(
                "generated {} closed sets (requested mode {}, derived {})",
                tau.len(),
                tau.mode().name(),
                tau.derived_mode(&q).name()
            );
            for (i, a) in tau.closed().iter().enumerate() {
                println!("  [{i}] ({})", a.value_labels(&q).join(", "));
            }
            Ok((doc, ok))
        }
        Command::Closure { quantale, space, sets } => {
            let q = load_quantale(quantale)?;
            let tau = formats::load_json::<CotopologyFile>(space)?.resolve(&q, caps.cotopology)?;
            let (_, named) = formats::load_json::<SpaceSetsFile>(sets)?.resolve(&q)?;
            let mut out = serde_json::Map::new();
            for (name, a) in &named {
                let cl = tau.closure(&q, a)?;
                println!(
                    "closure({name}) = ({}), index {}",
                    cl.value_labels(&q).join(", "),
                    tau.index_of(&cl).expect("closures are closed"),
                );
                out.insert(name.clone(), json!(cl.value_labels(&q)));
            }
            Ok((json!({ "closures": out }), ok))
        }
        Command::Specialization { quantale, space } => {
            let q = load_quantale(quantale)?;
            let tau = formats::load_json::<CotopologyFile>(space)?.resolve(&q, caps.cotopology)?;
            let omega = tau.specialization(&q);
            let doc = order_json(&q, &omega);
            println!("specialization order on [{}]:", omega.space().names().join(", "));
            for x in 0..omega.space().len() {
                let row: Vec<&str> =
                    (0..omega.space().len()).map(|y| q.label(omega.value(x, y))).collect();
                println!("  {}: ({})", omega.space().name(x), row.join(", "));
            }
            Ok((doc, ok))
        }
        Command::Alexandroff { quantale, order } => {
            let q = load_quantale(quantale)?;
            let r = formats::load_json::<QOrderFile>(order)?.resolve(&q)?;
            let gamma = r.alexandroff(&q, caps.enumeration)?;
            let doc = family_json(&q, &gamma);
            println!(
                "{} lower sets; the family is {}",
                gamma.len(),
                gamma.derived_mode(&q).name()
            );
            Ok((doc, ok))
        }
        Command::Sobrify { quantale, space } => {
            let q = load_quantale(quantale)?;
            let tau = formats::load_json::<CotopologyFile>(space)?.resolve(&q, caps.cotopology)?;
            let sob = sobriety::sobrify(&q, &tau)?;
            sobriety::verify_sobrification_lemma(&q, &tau, &sob)
                .map_err(|law| qsober_core::Error::BadInput(format!("`{law}` failed")))?;
            let eta: Vec<Value> = tau
                .space()
                .names()
                .iter()
                .enumerate()
                .map(|(x, name)| json!({ "point": name, "unit": sob.space.space().name(sob.eta.apply(x)) }))
                .collect();
            let doc = json!({
                "points": sob.space.space().names(),
                "family": family_json(&q, &sob.space),
                "eta": eta,
                "sober": sobriety::is_sober(&q, &sob.space).is_sober(),
            });
            println!(
                "sobrification has {} points and {} closed sets; lemma identities verified",
                sob.space.space().len(),
                sob.space.len()
            );
            for entry in &eta {
                println!("  η({}) = {}", entry["point"].as_str().unwrap(), entry["unit"].as_str().unwrap());
            }
            Ok((doc, ok))
        }
        Command::CheckSober { quantale, space } => {
            let q = load_quantale(quantale)?;
            let tau = formats::load_json::<CotopologyFile>(space)?.resolve(&q, caps.cotopology)?;
            let report = sobriety::is_sober(&q, &tau);
            let mut doc = report.to_json(&q).as_object().expect("object").clone();
            doc.insert("family_size".into(), json!(tau.len()));
            doc.insert("stratified".into(), json!(tau.is_stratified(&q)));
            println!(
                "verdict: {} ({} closed sets, {} irreducible)",
                report.verdict.name(),
                tau.len(),
                report.irreducibles.len()
            );
            for w in &report.witnesses {
                println!(
                    "  witness: ({}) is the closure of {} points",
                    report.irreducibles[w.irreducible].value_labels(&q).join(", "),
                    w.point_count
                );
            }
            Ok((Value::Object(doc), ok))
        }
        Command::CheckHausdorff { quantale, space } => {
            let q = load_quantale(quantale)?;
            let tau = formats::load_json::<CotopologyFile>(space)?.resolve(&q, caps.cotopology)?;
            let hausdorff = tau.is_hausdorff(&q, caps.enumeration)?;
            println!("hausdorff: {}", yes_no(hausdorff));
            Ok((json!({ "hausdorff": hausdorff }), ok))
        }
        Command::Lowen { quantale, crisp } => {
            let q = load_quantale(quantale)?;
            let x = formats::load_json::<CrispFile>(crisp)?.resolve()?;
            let crisp_report = x.is_sober();
            let scale = duality::lowen(&q, &x, caps.enumeration)?;
            let scale_report = sobriety::is_sober(&q, &scale);
            let good = match duality::good_extension_check(&q, &x, caps.enumeration) {
                Ok(g) => json!(if g.holds { "holds" } else { "fails" }),
                Err(e) => json!(format!("refused: {e}")),
            };
            println!(
                "scale has {} closed sets; crisp space {} sober, scale verdict {}",
                scale.len(),
                if crisp_report.sober { "is" } else { "is not" },
                scale_report.verdict.name()
            );
            println!("good extension: {}", good.as_str().unwrap());
            let doc = json!({
                "crisp_sober": crisp_report.sober,
                "crisp_irreducibles": crisp_report.irreducibles.iter().map(|&m| x.mask_label(m)).collect::<Vec<_>>(),
                "family": family_json(&q, &scale),
                "scale_verdict": scale_report.verdict.name(),
                "good_extension": good,
            });
            Ok((doc, ok))
        }
        Command::Dualize { quantale, space } => {
            let q = load_quantale(quantale)?;
            let tau = formats::load_json::<CotopologyFile>(space)?.resolve(&q, caps.cotopology)?;
            let topo = duality::negate_cotopology(&q, &tau)?;
            let back = duality::negate_topology(&q, &topo)?;
            let opens: Vec<Vec<String>> =
                topo.open().iter().map(|u| u.value_labels(&q)).collect();
            println!(
                "dual topology has {} open sets (mode {}); double dual recovers the input: {}",
                topo.len(),
                topo.mode().name(),
                yes_no(back.closed() == tau.closed())
            );
            let doc = json!({
                "opens": opens,
                "mode": topo.mode().name(),
                "involution": back.closed() == tau.closed(),
            });
            Ok((doc, ok))
        }
        Command::FrPoints { quantale, space } => {
            let q = load_quantale(quantale)?;
            let tau = formats::load_json::<CotopologyFile>(space)?.resolve(&q, caps.cotopology)?;
            let topo = duality::negate_cotopology(&q, &tau)?;
            let points = duality::fr_points(&q, &topo)?;
            let sober_top = duality::is_sober_topological(&q, &topo)?;
            let agree = sober_top == sobriety::is_sober(&q, &tau).is_sober();
            println!(
                "{} frame-map points on the dual topology; sober (topological): {}; agrees with the closed side: {}",
                points.len(),
                yes_no(sober_top),
                yes_no(agree)
            );
            let rendered: Vec<Value> = points
                .iter()
                .map(|fp| {
                    json!({
                        "irreducible": fp.irreducible.value_labels(&q),
                        "map": fp.map.values().iter().map(|&v| q.label(v)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let doc = json!({
                "points": rendered,
                "sober_topological": sober_top,
                "agrees_with_closed_side": agree,
            });
            Ok((doc, ok))
        }
        Command::Scenario { name, list, all } => scenario_command(name.as_deref(), *list, *all, caps),
        Command::Corpus { seed, count, max_q, max_x } => {
            let params =
                CorpusParams { seed: *seed, count: *count, max_q: *max_q, max_x: *max_x };
            let members = corpus::build(&params, caps.cotopology)?;
            let mut closure_checks = 0usize;
            let mut stratified_members = 0usize;
            for m in &members {
                closure_checks += corpus::check_closure_laws(m, caps.enumeration)?;
                if corpus::check_sobrification(m)? {
                    stratified_members += 1;
                }
            }
            println!(
                "corpus of {} members (seed {}): {} closure-law checks passed; sobrification verified on {} stratified members",
                members.len(),
                params.seed,
                closure_checks,
                stratified_members
            );
            let doc = json!({
                "seed": params.seed,
                "members": members.iter().map(|m| m.describe()).collect::<Vec<_>>(),
                "closure_checks": closure_checks,
                "stratified_members": stratified_members,
            });
            Ok((doc, ok))
        }
    }
}

fn scenario_command(
    name: Option<&str>,
    list: bool,
    all: bool,
    caps: &Caps,
) -> Result<(Value, ExitCode)> {
    let registry = scenario::registry();
    if list {
        for s in &registry.scenarios {
            println!("{}: {}", s.name, s.description);
        }
        let names: Vec<&str> = registry.scenarios.iter().map(|s| s.name.as_str()).collect();
        return Ok((json!({ "scenarios": names }), ExitCode::SUCCESS));
    }
    let selected: Vec<&scenario::Scenario> = if all {
        registry.scenarios.iter().collect()
    } else {
        let name = name.ok_or_else(|| {
            qsober_core::Error::BadInput("pass a scenario name, --all or --list".into())
        })?;
        vec![scenario::find(&registry, name)?]
    };
    let mut docs = Vec::new();
    let mut failures = 0usize;
    for s in selected {
        let (doc, ok) = s.run(caps)?;
        println!("scenario {}: {}", s.name, if ok { "ok" } else { "MISMATCH" });
        if !ok {
            failures += 1;
            for m in doc["mismatches"].as_array().unwrap() {
                println!(
                    "  field {}: expected {}, got {}",
                    m["field"], m["expected"], m["actual"]
                );
            }
        }
        docs.push(doc);
    }
    let doc = if docs.len() == 1 { docs.pop().unwrap() } else { json!({ "results": docs }) };
    let status = if failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) };
    Ok((doc, status))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
