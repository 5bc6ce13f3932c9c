use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use arcseed::arcs::{arc_to_reflection, reflection_to_arc, reflection_tuple_verdict, Arc};
use arcseed::coxeter::{canonical_reflection, Reflection, Word};
use arcseed::dot::{cayley_fragment_dot, exchange_tree_dot, DOT_NODE_CAP};
use arcseed::embed::{is_embeddable, DEFAULT_CROSSING_CAP};
use arcseed::explore::{explore, Check};
use arcseed::json::{parse_quiver, parse_root, root_to_json, seed_to_json};
use arcseed::quiver::ExchangeMatrix;
use arcseed::roots::{reflection_to_root, root_sign, root_to_reflection, RootSign, RootVector, YSeed};
use arcseed::search::{complete_arc, find_seed_containing, schur_by_search, SearchOutcome};

/// Y-seeds, reflections and arcs of 2-complete acyclic quivers.
#[derive(Parser)]
#[command(name = "arcseed", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate the exchange tree and check invariants at every seed.
    Explore {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// `all` or a comma-separated list of check names.
        #[arg(long, default_value = "all")]
        verify: String,
        /// Write one seed per line (JSON) to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit with status 1 if any invariant is violated.
        #[arg(long)]
        strict: bool,
    },
    /// Decide whether an ordered tuple of reflections or arcs is a Y-seed.
    CheckTuple {
        #[arg(long)]
        quiver: PathBuf,
        /// Reflection words separated by `;`, letters by `,` (e.g. `1,2,1;1,3,1;1`).
        #[arg(long, conflicts_with = "arcs")]
        words: Option<String>,
        /// JSON array of `{"crossings": [...], "endpoint": k}` objects.
        #[arg(long)]
        arcs: Option<String>,
        #[arg(long)]
        strict: bool,
    },
    /// Reflection word of an arc.
    Arc2refl {
        /// Comma-separated ray indices (may be empty).
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        crossings: String,
        #[arg(long)]
        endpoint: usize,
    },
    /// Arc of a reflection word.
    Refl2arc {
        #[arg(long)]
        word: String,
    },
    /// Reflection of a real root.
    Root2refl {
        #[arg(long)]
        quiver: PathBuf,
        /// Root as a JSON array or comma-separated integers.
        #[arg(long, allow_hyphen_values = true)]
        root: String,
    },
    /// Decide whether a reflection's root is a real Schur root.
    Schur {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long, conflicts_with = "root")]
        word: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        root: Option<String>,
        #[arg(long, default_value_t = 14)]
        depth: usize,
        /// Skip the exchange-tree search and report embeddability only.
        #[arg(long)]
        no_search: bool,
        /// Include the embedding witness and search statistics.
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = DEFAULT_CROSSING_CAP)]
        cap: usize,
        #[arg(long)]
        strict: bool,
    },
    /// A Y-seed containing the root of an embeddable arc.
    CompleteArc {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long, default_value = "")]
        crossings: String,
        #[arg(long)]
        endpoint: usize,
        #[arg(long, default_value_t = 14)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_CROSSING_CAP)]
        cap: usize,
    },
    /// Graphviz output.
    ExportDot {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long, value_enum)]
        target: DotTarget,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Mutation path of the seed drawn on the Cayley tree.
        #[arg(long, default_value = "")]
        path: String,
        #[arg(long, default_value_t = DOT_NODE_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Experiment: look for one seed containing all given reflections.
    Compat {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        words: String,
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DotTarget {
    ExchangeTree,
    CayleyFragment,
}

/// Failure kinds mapped to exit codes.
enum Exit {
    Negative,
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Exit {
    fn from(e: anyhow::Error) -> Self {
        Exit::Input(e)
    }
}

impl From<arcseed::Error> for Exit {
    fn from(e: arcseed::Error) -> Self {
        Exit::Input(e.into())
    }
}

fn parse_letters(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().with_context(|| format!("bad index {t:?}")))
        .collect()
}

fn parse_reflection(s: &str) -> Result<Reflection> {
    let w = Word::from_letters(parse_letters(s)?)?;
    Ok(canonical_reflection(&w)?)
}

fn parse_root_arg(s: &str) -> Result<RootVector> {
    let t = s.trim();
    let text = if t.starts_with('[') { t.to_string() } else { format!("[{t}]") };
    Ok(parse_root(&text)?)
}

/// Reads a quiver and relabels it so that arrows point from smaller to larger vertices.
fn load_quiver(path: &Path) -> Result<ExchangeMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let b = parse_quiver(&text)?;
    let (normal, perm) = b.normalize()?;
    if perm.iter().enumerate().any(|(i, &p)| p != i + 1) {
        eprintln!("note: vertices relabeled; new vertex i is input vertex {:?}[i-1]", perm);
    }
    if !normal.is_two_complete() {
        bail!("quiver is not 2-complete");
    }
    Ok(normal)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("values always serialize"));
}

fn run(cli: Cli) -> std::result::Result<(), Exit> {
    match cli.cmd {
        Cmd::Explore { quiver, depth, verify, out, strict } => {
            let b = load_quiver(&quiver)?;
            let checks = Check::parse_list(&verify)?;
            let mut sink: Option<BufWriter<File>> = match &out {
                Some(p) => Some(BufWriter::new(
                    File::create(p).with_context(|| format!("creating {}", p.display()))?,
                )),
                None => None,
            };
            let report = explore(&b, depth, &checks, |s| {
                if let Some(w) = sink.as_mut() {
                    writeln!(w, "{}", seed_to_json(s))
                        .map_err(|e| arcseed::Error::Parse(e.to_string()))?;
                }
                Ok(())
            })?;
            if let Some(mut w) = sink {
                w.flush().context("writing seeds")?;
            }
            print_json(&serde_json::to_value(&report).expect("reports serialize"));
            if strict && !report.violations.is_empty() {
                return Err(Exit::Negative);
            }
        }
        Cmd::CheckTuple { quiver, words, arcs, strict } => {
            let b = load_quiver(&quiver)?;
            let gram = YSeed::initial(&b)?.gram;
            let refls: Vec<Reflection> = match (words, arcs) {
                (Some(w), None) => w.split(';').map(parse_reflection).collect::<Result<_>>()?,
                (None, Some(a)) => {
                    let arcs: Vec<Arc> = serde_json::from_str(&a).context("parsing --arcs")?;
                    arcs.iter().map(arc_to_reflection).collect::<arcseed::Result<_>>()?
                }
                _ => return Err(anyhow!("give exactly one of --words or --arcs").into()),
            };
            let v = reflection_tuple_verdict(&refls, &gram)?;
            print_json(&serde_json::to_value(&v).expect("verdicts serialize"));
            if strict && !v.is_yseed {
                return Err(Exit::Negative);
            }
        }
        Cmd::Arc2refl { crossings, endpoint } => {
            let a = Arc::new(parse_letters(&crossings)?, endpoint)?;
            print_json(&json!(arc_to_reflection(&a)?));
        }
        Cmd::Refl2arc { word } => {
            print_json(&json!(reflection_to_arc(&parse_reflection(&word)?)));
        }
        Cmd::Root2refl { quiver, root } => {
            let b = load_quiver(&quiver)?;
            let gram = YSeed::initial(&b)?.gram;
            let u = parse_root_arg(&root)?;
            let r = root_to_reflection(&u, &gram)?;
            let sign = if root_sign(&u)? == RootSign::Positive { "+" } else { "-" };
            print_json(&json!({ "reflection": r, "sign": sign }));
        }
        Cmd::Schur { quiver, word, root, depth, no_search, witness, cap, strict } => {
            let b = load_quiver(&quiver)?;
            let gram = YSeed::initial(&b)?.gram;
            let (r, u) = match (word, root) {
                (Some(w), None) => {
                    let r = parse_reflection(&w)?;
                    let u = reflection_to_root(&r, &gram);
                    (r, u)
                }
                (None, Some(s)) => {
                    let u = parse_root_arg(&s)?;
                    (root_to_reflection(&u, &gram)?, u)
                }
                _ => return Err(anyhow!("give exactly one of --word or --root").into()),
            };
            if r.max_letter() > b.rank() {
                return Err(anyhow!("letter {} exceeds rank {}", r.max_letter(), b.rank()).into());
            }
            let v = is_embeddable(&reflection_to_arc(&r), cap)?;
            let mut out = json!({ "embeddable": v.embeddable });
            if !no_search {
                out["search"] = match schur_by_search(&u, &b, depth)? {
                    SearchOutcome::Found(path) => json!({ "found": true, "path": path }),
                    SearchOutcome::NotFoundWithinDepth(d) => json!({ "found": false, "depth": d }),
                };
            }
            if witness {
                out["witness"] = json!(v.witness);
                out["stats"] = json!(v.stats);
            }
            print_json(&out);
            if strict && !v.embeddable {
                return Err(Exit::Negative);
            }
        }
        Cmd::CompleteArc { quiver, crossings, endpoint, depth, cap } => {
            let b = load_quiver(&quiver)?;
            let a = Arc::new(parse_letters(&crossings)?, endpoint)?;
            let s = complete_arc(&a, &b, depth, cap)?;
            println!("{}", seed_to_json(&s));
        }
        Cmd::ExportDot { quiver, target, depth, path, cap, out } => {
            let b = load_quiver(&quiver)?;
            let text = match target {
                DotTarget::ExchangeTree => exchange_tree_dot(&b, depth, cap)?,
                DotTarget::CayleyFragment => {
                    let s = YSeed::initial(&b)?.mutate_path(&parse_letters(&path)?)?;
                    cayley_fragment_dot(&s, depth, cap)?
                }
            };
            match out {
                Some(p) => fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
                None => io::stdout().write_all(text.as_bytes()).context("writing output")?,
            }
        }
        Cmd::Compat { quiver, words, depth } => {
            let b = load_quiver(&quiver)?;
            let gram = YSeed::initial(&b)?.gram;
            let refls: Vec<Reflection> = words.split(';').map(parse_reflection).collect::<Result<_>>()?;
            let roots: Vec<RootVector> = refls.iter().map(|r| reflection_to_root(r, &gram)).collect();
            let found = find_seed_containing(&roots, &b, depth)?;
            print_json(&json!({
                "found": found.is_some(),
                "path": found.as_ref().map(|s| s.path.clone()),
                "roots": roots.iter().map(|u| serde_json::from_str::<Value>(&root_to_json(u)).unwrap()).collect::<Vec<_>>(),
                "depth": depth,
            }));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Exit::Negative) => ExitCode::from(1),
        Err(Exit::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
