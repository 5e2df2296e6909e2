use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gstar::category::{FinCategory, FunctorTable, NatTransformation, PointedFunctor};
use gstar::coend::{fskel_inclusion, stability_diagnostic, Lift};
use gstar::diagram::{nerve_levelwise, SetDiagram};
use gstar::emit::{
    classification_levels, hom_census, l_values, render_hom_census, render_l_values, render_levels, to_canonical_json,
    to_csv, Format, HomRow,
};
use gstar::fixtures::{named_category, walking_arrow, walking_iso};
use gstar::io::{set_diagram_json, DiagramJson, Index, LoadedDiagram};
use gstar::relative::{classification, homotopy_from_transformation, segal_map_check, RelativeCategory, SegalData};
use gstar::skeletal::{smash_objects, Fskel, ObjectTuple};
use gstar::suite::{run_suite, Fault, SuiteConfig};
use gstar::tuple::{simplex_tuple_category, Gstar};
use gstar::Error;

#[derive(Parser)]
#[command(
    name = "gstar",
    version,
    about = "Exact finite models of F, G* and the coend adjunction between their diagram categories"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Largest pointed set <N> (default 2, or whatever a hom query needs).
    #[arg(long, global = true)]
    trunc: Option<usize>,
    /// Longest tuple (default 2).
    #[arg(long, global = true)]
    qmax: Option<usize>,
    /// Simplicial degree truncation.
    #[arg(long, global = true, default_value_t = 3)]
    degree: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value = "json")]
    format: String,
    /// Extra F levels for the stability diagnostic; 0 disables it.
    #[arg(long, global = true, default_value_t = 0)]
    stability_margin: usize,
}

#[derive(Subcommand)]
enum Command {
    /// List G*(from, to), nonzero maps first and the zero map last.
    Hom {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        nonzero_only: bool,
    },
    /// The collapse ∧ of a tuple, or of every morphism between two tuples.
    Smash {
        #[arg(long)]
        tuple: Option<String>,
        #[arg(long, requires = "to")]
        from: Option<String>,
        #[arg(long, requires = "from")]
        to: Option<String>,
    },
    /// Build and validate a tuple category.
    Tuplecat {
        /// `fskel` or `delta`.
        #[arg(long, default_value = "fskel")]
        base: String,
    },
    /// Diagram utilities.
    #[command(subcommand)]
    Diagram(DiagramCommand),
    /// The coend L X of a diagram on F, at one tuple or everywhere.
    Lift {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        at: Option<String>,
    },
    /// Run the check suite.
    Check {
        /// Check names or prefixes, e.g. `adjunction`; repeatable.
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Inject a known defect (`broken-composition`).
        #[arg(long)]
        fault: Option<String>,
        /// Also check the axioms of a category JSON file; repeatable.
        #[arg(long = "category")]
        categories: Vec<PathBuf>,
        #[arg(long, default_value_t = 100)]
        randoms: usize,
        #[arg(long, default_value_t = gstar::diagram::DEFAULT_BUDGET)]
        budget: usize,
        /// Record per-check wall time (makes the report nondeterministic).
        #[arg(long)]
        timing: bool,
    },
    /// Level cardinalities of the classification diagram.
    Classify {
        #[command(flatten)]
        relative: RelativeArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Emit every level (m, j) with m <= n and j <= k.
        #[arg(long)]
        all: bool,
    },
    /// Set-level Segal maps of the classification diagram rows.
    Segal {
        #[command(flatten)]
        relative: RelativeArgs,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// The simplicial homotopy of a fixture transformation.
    Prism {
        /// `constant` (0 ⇒ 1 on the walking arrow), `identity`, or `swap`
        /// (identity ⇒ swap on the walking iso).
        #[arg(long, default_value = "constant")]
        transformation: String,
    },
    /// Serialize an artifact.
    Emit {
        /// `hom-census`, `l-values` or `classification`.
        #[arg(long)]
        artifact: String,
        #[arg(long)]
        diagram: Option<PathBuf>,
        #[command(flatten)]
        relative: RelativeArgs,
    },
}

#[derive(Subcommand)]
enum DiagramCommand {
    /// Check functoriality and the basepoint condition.
    Validate {
        #[arg(long)]
        diagram: PathBuf,
    },
    /// Restrict along `inclusion` (G* -> F) or pull back along `collapse` (F -> G*).
    Precompose {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        along: String,
    },
    /// Levelwise nerve of a category-valued diagram.
    Nerve {
        #[arg(long)]
        diagram: PathBuf,
    },
}

#[derive(Args, Clone)]
struct RelativeArgs {
    /// `walking-arrow`, `walking-iso` or `terminal`.
    #[arg(long)]
    fixture: Option<String>,
    /// A category JSON file.
    #[arg(long)]
    cat: Option<PathBuf>,
    /// `all`, `identities`, `isos`, or a comma list of morphism names.
    #[arg(long, default_value = "all")]
    weq: String,
}

/// An error with the exit code it should produce.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(2, e.to_string())
    }
}

type Outcome = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn format(g: &Global) -> Result<Format, Failure> {
    Ok(g.format.parse()?)
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    let fmt = format(g)?;
    match &cli.command {
        Command::Hom { from, to, nonzero_only } => hom(g, fmt, from, to, *nonzero_only),
        Command::Smash { tuple, from, to } => smash(g, fmt, tuple.as_deref(), from.as_deref(), to.as_deref()),
        Command::Tuplecat { base } => tuplecat(g, fmt, base),
        Command::Diagram(d) => diagram(g, fmt, d),
        Command::Lift { diagram, at } => lift(g, fmt, diagram, at.as_deref()),
        Command::Check {
            suites,
            fault,
            categories,
            randoms,
            budget,
            timing,
        } => {
            let config = SuiteConfig {
                n_max: g.trunc.unwrap_or(2),
                q_max: g.qmax.unwrap_or(2),
                degree: g.degree,
                seed: g.seed,
                randoms: *randoms,
                budget: *budget,
                stability_margin: g.stability_margin,
                select: suites.clone(),
                fault: fault.as_deref().map(str::parse::<Fault>).transpose()?,
                categories: categories.iter().map(read_category).collect::<Result<_, _>>()?,
                timing: *timing,
                ..SuiteConfig::default()
            };
            let report = run_suite(&config)?;
            let out = match fmt {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
                Format::Dot => return Err(Failure(2, "check reports have no dot form".into())),
            };
            for f in report.failures() {
                eprintln!("FAIL {}: {}", f.name, f.witness.as_deref().unwrap_or(""));
            }
            Ok((out, report.exit_code() as u8))
        }
        Command::Classify { relative, n, k, all } => classify(fmt, relative, *n, *k, *all),
        Command::Segal { relative, n } => segal(g, fmt, relative, *n),
        Command::Prism { transformation } => prism(g, fmt, transformation),
        Command::Emit {
            artifact,
            diagram,
            relative,
        } => emit(g, fmt, artifact, diagram.as_ref(), relative),
    }
}

fn json_only(fmt: Format, value: &Value) -> Result<String, Failure> {
    match fmt {
        Format::Json => Ok(to_canonical_json(value)?),
        _ => Err(Failure(2, "this output is only available as json".into())),
    }
}

fn parse_tuple(s: &str) -> Result<ObjectTuple, Failure> {
    Ok(s.parse::<ObjectTuple>()?)
}

/// The smallest `G*` truncation holding the given tuples, unless flags fix it.
fn gstar_for(g: &Global, tuples: &[&ObjectTuple]) -> Result<Gstar, Failure> {
    let need_n = tuples
        .iter()
        .filter_map(|t| t.entries())
        .flatten()
        .copied()
        .max()
        .unwrap_or(0);
    let need_q = tuples.iter().filter_map(|t| t.len()).max().unwrap_or(0);
    let n = g.trunc.unwrap_or(need_n.max(2));
    let q = g.qmax.unwrap_or(need_q.max(1));
    if need_n > n || need_q > q {
        return Err(Failure(2, format!("tuple exceeds the truncation N = {n}, q_max = {q}")));
    }
    let mut objects = vec![ObjectTuple::Basepoint, ObjectTuple::unit()];
    for t in tuples {
        if !objects.contains(t) {
            objects.push((*t).clone());
        }
    }
    Ok(Gstar::on_objects(Fskel::new(n)?, q, objects)?)
}

fn hom(g: &Global, fmt: Format, from: &str, to: &str, nonzero_only: bool) -> Outcome {
    let (s, t) = (parse_tuple(from)?, parse_tuple(to)?);
    let gs = gstar_for(g, &[&s, &t])?;
    let c = gs.category();
    let (a, b) = (gs.tuples().object_id(&s)?, gs.tuples().object_id(&t)?);
    let ids: Vec<usize> = if nonzero_only {
        c.nonzero_hom(a, b).collect()
    } else {
        c.hom(a, b).to_vec()
    };
    let morphisms: Vec<Value> = ids
        .iter()
        .map(|&m| serde_json::to_value(gs.morphism_json(m)).unwrap())
        .collect();
    let out = match fmt {
        Format::Json => to_canonical_json(&json!({
            "from": s.to_string(),
            "to": t.to_string(),
            "nonzero": c.nonzero_hom(a, b).count(),
            "count": ids.len(),
            "morphisms": morphisms,
        }))?,
        Format::Csv => {
            let rows: Vec<HomRow> = ids
                .iter()
                .enumerate()
                .map(|(position, &m)| HomRow {
                    position,
                    morphism: c.morphism_name(m).to_string(),
                    zero: c.is_zero(m),
                })
                .collect();
            to_csv(&rows)?
        }
        Format::Dot => return Err(Failure(2, "hom lists have no dot form".into())),
    };
    Ok((out, 0))
}

fn smash(g: &Global, fmt: Format, tuple: Option<&str>, from: Option<&str>, to: Option<&str>) -> Outcome {
    if let Some(t) = tuple {
        let t = parse_tuple(t)?;
        return Ok((
            json_only(fmt, &json!({"tuple": t.to_string(), "smash": smash_objects(&t)}))?,
            0,
        ));
    }
    let (Some(from), Some(to)) = (from, to) else {
        return Err(Failure(2, "give --tuple, or --from and --to".into()));
    };
    let (s, t) = (parse_tuple(from)?, parse_tuple(to)?);
    let gs = gstar_for(g, &[&s, &t])?;
    let (a, b) = (gs.tuples().object_id(&s)?, gs.tuples().object_id(&t)?);
    let mut rows = Vec::new();
    for &m in gs.category().hom(a, b) {
        rows.push(json!({
            "morphism": gs.morphism_json(m),
            "smash": gs.collapse_morphism(m)?,
        }));
    }
    Ok((
        json_only(fmt, &json!({"from": s.to_string(), "to": t.to_string(), "maps": rows}))?,
        0,
    ))
}

fn tuplecat(g: &Global, fmt: Format, base: &str) -> Outcome {
    let q = g.qmax.unwrap_or(2);
    let cat = match base {
        "fskel" => Gstar::over(Fskel::new(g.trunc.unwrap_or(2))?, q)?.category().clone(),
        "delta" => simplex_tuple_category(g.trunc.unwrap_or(1), q)?.category().clone(),
        other => return Err(Failure(2, format!("unknown base {other:?}; expected fskel or delta"))),
    };
    let report = cat.validate();
    match fmt {
        Format::Dot => Ok((cat.to_dot("tuples"), 0)),
        Format::Json => {
            let out = to_canonical_json(&json!({
                "objects": (0..cat.num_objects()).map(|a| cat.object_name(a)).collect::<Vec<_>>(),
                "morphisms": cat.num_morphisms(),
                "composable_pairs": cat.composable_pairs(),
                "report": report,
            }))?;
            Ok((out, if report.passed() { 0 } else { 1 }))
        }
        Format::Csv => Err(Failure(2, "tuple categories have no csv form".into())),
    }
}

fn load(path: &Path) -> Result<LoadedDiagram, Failure> {
    let json = DiagramJson::read(path).map_err(|e| Failure(2, format!("{}: {e}", path.display())))?;
    Ok(json.load()?)
}

fn diagram(g: &Global, fmt: Format, cmd: &DiagramCommand) -> Outcome {
    match cmd {
        DiagramCommand::Validate { diagram } => {
            let report = match load(diagram)? {
                LoadedDiagram::Set(_, d) => d.validate(),
                LoadedDiagram::Cat(_, d) => d.validate(),
            };
            let code = if report.passed() { 0 } else { 1 };
            Ok((
                json_only(fmt, &json!({"valid": report.passed(), "report": report}))?,
                code,
            ))
        }
        DiagramCommand::Precompose { diagram, along } => {
            let LoadedDiagram::Set(index, d) = load(diagram)? else {
                return Err(Failure(2, "precompose expects a set-valued diagram".into()));
            };
            let q = g.qmax.unwrap_or(2);
            let (out, reference) = match (along.as_str(), &index) {
                ("inclusion", Index::Gstar(gs)) => {
                    let n = gs.fskel().n_max();
                    (
                        d.precompose(&gs.tuples().length_one_inclusion()?)?,
                        format!("fskel:{n}"),
                    )
                }
                ("collapse", Index::Fskel(fs)) => {
                    let sub = Gstar::collapsible(fs.clone(), q)?;
                    (
                        d.precompose(&sub.collapse_functor(fs)?)?,
                        format!("gstar-smash:{},{q}", fs.n_max()),
                    )
                }
                _ => {
                    return Err(Failure(
                        2,
                        "use --along inclusion on a G* diagram or --along collapse on an F diagram".into(),
                    ))
                }
            };
            let json = serde_json::to_value(set_diagram_json(&reference, &out)).map_err(Error::from)?;
            Ok((json_only(fmt, &json)?, 0))
        }
        DiagramCommand::Nerve { diagram } => {
            let LoadedDiagram::Cat(index, d) = load(diagram)? else {
                return Err(Failure(2, "nerve expects a category-valued diagram".into()));
            };
            let nerve = nerve_levelwise(&d, g.degree)?;
            let ids = nerve.check_identities();
            let c = index.category();
            let counts: Vec<Value> = nerve
                .counts()
                .iter()
                .enumerate()
                .map(|(a, row)| json!({"object": c.object_name(a), "simplices": row}))
                .collect();
            let code = if ids.passed() { 0 } else { 1 };
            Ok((
                json_only(fmt, &json!({"degree": g.degree, "levels": counts, "identities": ids}))?,
                code,
            ))
        }
    }
}

fn fskel_diagram(path: &Path) -> Result<(Fskel, SetDiagram), Failure> {
    match load(path)? {
        LoadedDiagram::Set(Index::Fskel(fs), d) => Ok((fs, d)),
        _ => Err(Failure(2, "expected a set-valued diagram on fskel:N".into())),
    }
}

/// With a stability margin `K` the diagram must live on `F≤N+K`; its
/// restriction to `F≤N` is lifted and compared with the wider lift.
fn lift(g: &Global, fmt: Format, path: &Path, at: Option<&str>) -> Outcome {
    let (big, x_big) = fskel_diagram(path)?;
    let margin = g.stability_margin;
    let n = big.n_max().checked_sub(margin).filter(|&n| n >= 1).ok_or_else(|| {
        Failure(
            2,
            format!("a stability margin of {margin} needs a diagram on fskel:{}", margin + 1),
        )
    })?;
    let q = g.qmax.unwrap_or(2);
    let fs = Fskel::new(n)?;
    let x_big = Arc::new(x_big);
    let x = Arc::new(x_big.precompose(&fskel_inclusion(&fs, &big)?)?);
    let gs = Gstar::over(fs, q)?;
    let i = gs.tuples().length_one_inclusion()?;
    let l = Lift::new(x, &i)?;
    let mut out = match at {
        None => match fmt {
            Format::Json => json!({"values": l_values(&l)}),
            _ if margin == 0 => return Ok((render_l_values(&l_values(&l), fmt)?, 0)),
            _ => return Err(Failure(2, "the stability diagnostic is only available as json".into())),
        },
        Some(t) => {
            let t = parse_tuple(t)?;
            let id = gs.tuples().object_id(&t)?;
            let p = l.presentation(id);
            let c = gs.category();
            let elements: Vec<Value> = (1..=p.size())
                .map(|class| {
                    let r = p.representative(class);
                    json!({
                        "class": class,
                        "n": c.object_name(i.on_object(r.n)),
                        "theta": gs.morphism_json(r.theta),
                        "x": r.x,
                    })
                })
                .collect();
            json!({
                "at": t.to_string(),
                "cardinality": p.size() + 1,
                "nonbase": p.size(),
                "elements": elements,
            })
        }
    };
    if margin > 0 {
        let report = stability_diagnostic(&x_big, n, margin, q)?;
        out["stability"] = json!({
            "note": "observed agreement of truncations, not a proof of stability",
            "stable": report.stable(),
            "report": report,
        });
    }
    Ok((json_only(fmt, &out)?, 0))
}

fn read_category(path: &PathBuf) -> Result<(String, Arc<FinCategory>), Failure> {
    let bad = |e: String| Failure(2, format!("{}: {e}", path.display()));
    let text = std::fs::read_to_string(path).map_err(|e| bad(e.to_string()))?;
    let json = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    let cat = FinCategory::from_json(&json).map_err(|e| bad(e.to_string()))?;
    Ok((path.display().to_string(), Arc::new(cat)))
}

fn relative_category(r: &RelativeArgs) -> Result<(String, RelativeCategory), Failure> {
    let (name, cat) = match (&r.fixture, &r.cat) {
        (Some(f), None) => (
            f.clone(),
            named_category(f).ok_or_else(|| Failure(2, format!("unknown fixture {f:?}")))?,
        ),
        (None, Some(path)) => {
            let (name, cat) = read_category(path)?;
            (name, Arc::unwrap_or_clone(cat))
        }
        _ => return Err(Failure(2, "give exactly one of --fixture and --cat".into())),
    };
    let cat = Arc::new(cat);
    let rel = match r.weq.as_str() {
        "all" => RelativeCategory::all(cat)?,
        "identities" => RelativeCategory::identities(cat)?,
        "isos" => RelativeCategory::isomorphisms(cat)?,
        list => {
            let mut weq: Vec<bool> = cat.morphism_ids().map(|m| cat.is_identity(m)).collect();
            for name in list.split(',').map(str::trim) {
                let m = cat
                    .morphism_ids()
                    .find(|&m| cat.morphism_name(m) == name)
                    .ok_or_else(|| Failure(2, format!("no morphism named {name:?}")))?;
                weq[m] = true;
            }
            RelativeCategory::new(cat, weq)?
        }
    };
    Ok((name, rel))
}

fn classify(fmt: Format, r: &RelativeArgs, n: usize, k: usize, all: bool) -> Outcome {
    let (name, rel) = relative_category(r)?;
    let cl = classification(&rel, n, k)?;
    let rows = classification_levels(&cl);
    let rows: Vec<_> = if all {
        rows
    } else {
        rows.into_iter().filter(|l| l.n == n && l.k == k).collect()
    };
    let out = match fmt {
        Format::Json if !all => to_canonical_json(&json!({
            "category": name,
            "weq": r.weq,
            "n": n,
            "k": k,
            "size": rows[0].size,
        }))?,
        _ => render_levels(&rows, fmt)?,
    };
    Ok((out, 0))
}

fn segal(g: &Global, fmt: Format, r: &RelativeArgs, n: usize) -> Outcome {
    let (name, rel) = relative_category(r)?;
    if n < 2 || n > g.degree {
        return Err(Failure(2, format!("Segal maps need 2 <= n <= degree = {}", g.degree)));
    }
    let cl = classification(&rel, n, g.degree)?;
    let mut rows = Vec::new();
    let mut all = true;
    for (k, row) in cl.diagram.horizontal.iter().enumerate() {
        let report = segal_map_check(&SegalData::from_simplicial(row, n)?);
        all &= report.bijective();
        rows.push(json!({"k": k, "bijective": report.bijective(), "report": report}));
    }
    let out = json!({
        "category": name,
        "weq": r.weq,
        "n": n,
        "note": "set-level Segal maps: strict bijectivity, not weak equivalence",
        "rows": rows,
        "all_bijective": all,
    });
    Ok((json_only(fmt, &out)?, if all { 0 } else { 1 }))
}

fn prism(g: &Global, fmt: Format, which: &str) -> Outcome {
    let arrow = Arc::new(walking_arrow());
    let iso = Arc::new(walking_iso());
    let p = match which {
        "constant" => {
            let constant = |o: usize| {
                PointedFunctor::new(
                    arrow.clone(),
                    arrow.clone(),
                    FunctorTable {
                        objects: vec![o; 2],
                        morphisms: vec![arrow.identity(o); 3],
                    },
                )
            };
            NatTransformation::new(constant(0)?, constant(1)?, vec![Some(2), Some(2)])?
        }
        "identity" => NatTransformation::identity(PointedFunctor::identity(arrow)),
        "swap" => {
            let swap = PointedFunctor::new(
                iso.clone(),
                iso.clone(),
                FunctorTable {
                    objects: vec![1, 0],
                    morphisms: vec![3, 2, 1, 0],
                },
            )?;
            NatTransformation::new(PointedFunctor::identity(iso), swap, vec![Some(1), Some(2)])?
        }
        other => return Err(Failure(2, format!("unknown transformation {other:?}"))),
    };
    let report = homotopy_from_transformation(&p, g.degree)?;
    let code = if report.passed() { 0 } else { 1 };
    Ok((
        json_only(fmt, &serde_json::to_value(&report).map_err(Error::from)?)?,
        code,
    ))
}

fn emit(g: &Global, fmt: Format, artifact: &str, diagram: Option<&PathBuf>, r: &RelativeArgs) -> Outcome {
    let out = match artifact {
        "hom-census" => {
            let gs = Gstar::over(Fskel::new(g.trunc.unwrap_or(2))?, g.qmax.unwrap_or(2))?;
            render_hom_census(&hom_census(&gs), fmt)?
        }
        "l-values" => {
            let path = diagram.ok_or_else(|| Failure(2, "l-values needs --diagram".into()))?;
            let (fs, x) = fskel_diagram(path)?;
            let gs = Gstar::over(fs, g.qmax.unwrap_or(2))?;
            let l = Lift::new(Arc::new(x), &gs.tuples().length_one_inclusion()?)?;
            render_l_values(&l_values(&l), fmt)?
        }
        "classification" => {
            let (_, rel) = relative_category(r)?;
            let cl = classification(&rel, g.degree, g.degree)?;
            render_levels(&classification_levels(&cl), fmt)?
        }
        other => return Err(Failure(2, format!("unknown artifact {other:?}"))),
    };
    Ok((out, 0))
}
