use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use unary_fa::automata::{parse_ufa, to_dot};
use unary_fa::builders::{self, FiniteStructure, Template};
use unary_fa::classify;
use unary_fa::closure::{self, ClosureCertificate};
use unary_fa::fo::{self, StructureEnv};
use unary_fa::foundational::{self, parse_ufr, write_ufr};
use unary_fa::{Error, Relation};

#[derive(Parser)]
#[command(
    name = "ufa",
    version,
    about = "Unary automatic relations: query, close, classify, render"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Track count, state count, pumping constant and loop lengths.
    Info { input: PathBuf },
    /// Membership of a tuple.
    Eval {
        input: PathBuf,
        #[arg(required = true)]
        values: Vec<u64>,
    },
    /// Decide a sentence, or compile a formula with `-o`.
    Query {
        /// Binds a relation name to a file, as NAME=PATH.
        #[arg(long = "rel", value_parser = binding)]
        rels: Vec<(String, PathBuf)>,
        formula: String,
        #[arg(short)]
        output: Option<PathBuf>,
    },
    /// Reflexive-transitive, transitive or equivalence closure.
    Closure {
        #[command(flatten)]
        mode: ClosureMode,
        input: PathBuf,
        #[arg(short)]
        output: Option<PathBuf>,
        #[arg(long, env = "UFA_MAX_K", default_value_t = closure::DEFAULT_MAX_K)]
        max_k: usize,
    },
    /// Structural report for a binary relation.
    Classify {
        #[arg(long, value_enum)]
        kind: Kind,
        input: PathBuf,
    },
    /// Relation of a foundational relation (.ufr).
    Propagate {
        input: PathBuf,
        #[arg(short)]
        output: Option<PathBuf>,
    },
    /// Foundational relation read off a relation's diagram.
    Extract {
        input: PathBuf,
        #[arg(short)]
        output: Option<PathBuf>,
    },
    /// Constructions on relations, finite structures and templates.
    Build {
        #[command(subcommand)]
        what: Build,
    },
    /// Automaton graph or diagram coordinates.
    Render {
        #[arg(long, value_enum)]
        format: RenderFormat,
        input: PathBuf,
        /// Last diagram column shown by `grid`.
        #[arg(long, default_value_t = 5)]
        columns: u64,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ClosureMode {
    #[arg(long)]
    star: bool,
    #[arg(long)]
    plus: bool,
    #[arg(long)]
    equiv: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Order,
    Tournament,
    Components,
    Map,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Dot,
    Grid,
}

#[derive(Subcommand)]
enum Build {
    /// Interleaved disjoint union.
    Union {
        left: PathBuf,
        right: PathBuf,
        #[arg(short)]
        output: Option<PathBuf>,
    },
    /// Infinitely many copies of a finite structure (`vertex N`, `edge A B`).
    Copies {
        structure: PathBuf,
        #[arg(short)]
        output: Option<PathBuf>,
    },
    /// Quotient by an equivalence relation.
    Quotient {
        relation: PathBuf,
        equivalence: PathBuf,
        #[arg(short)]
        output: Option<PathBuf>,
    },
    /// Glue vertex T of the second graph onto vertex G of the first.
    Attach {
        graph: PathBuf,
        g: u64,
        tree: PathBuf,
        t: u64,
        #[arg(short)]
        output: Option<PathBuf>,
    },
    /// Shallow star from a template with t0 = t1.
    Star {
        template: PathBuf,
        #[arg(short)]
        output: Option<PathBuf>,
    },
    /// Periodic path from a template with t0 != t1.
    Path {
        template: PathBuf,
        #[arg(short)]
        output: Option<PathBuf>,
    },
}

fn binding(s: &str) -> Result<(String, PathBuf), String> {
    let (name, path) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=PATH, found `{s}`"))?;
    if name.is_empty() {
        return Err("empty relation name".to_string());
    }
    Ok((name.to_string(), PathBuf::from(path)))
}

enum Failure {
    Domain(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn load(path: &Path) -> Outcome<Relation> {
    Ok(Relation::parse(&read(path)?)?)
}

/// Writes `text` to `output`, or to stdout without one. `summary` goes to
/// stdout next to a file and to stderr next to inline output.
fn emit(output: Option<&Path>, text: &str, summary: Option<String>) -> Outcome<()> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
            if let Some(s) = summary {
                println!("{s}");
            }
        }
        None => {
            print!("{text}");
            if let Some(s) = summary {
                eprintln!("{s}");
            }
        }
    }
    Ok(())
}

fn certificate_line(c: &ClosureCertificate) -> String {
    format!(
        "certificate: k={} iterations={} contains_diagonal={} contains_relation={} transitive={}",
        c.k, c.iterations, c.contains_diagonal, c.contains_relation, c.transitive
    )
}

fn run(cli: Cli) -> Outcome<()> {
    match cli.command {
        Command::Info { input } => {
            let a = parse_ufa(&read(&input)?)?;
            let r = Relation::from_automaton(&a)?;
            let profile = r.dfa().loop_profile();
            let loops: Vec<String> = profile.loop_lengths.iter().map(u64::to_string).collect();
            println!("tracks: {}", r.arity());
            println!("states: {}", a.state_count());
            println!("minimal_states: {}", r.dfa().state_count());
            println!("pumping_constant: {}", r.pumping_constant());
            println!("loop_lengths: {}", loops.join(","));
            println!("finite: {}", r.is_finite());
        }
        Command::Eval { input, values } => {
            let r = load(&input)?;
            if values.len() != r.arity() {
                return Err(Error::ArityMismatch {
                    expected: r.arity(),
                    found: values.len(),
                }
                .into());
            }
            println!("{}", r.accepts(&values));
        }
        Command::Query {
            rels,
            formula,
            output,
        } => {
            let mut env = StructureEnv::new();
            for (name, path) in &rels {
                env.insert(name, load(path)?);
            }
            let phi = fo::parse_formula(&formula)?;
            match output {
                Some(path) => {
                    let r = fo::compile(&phi, &env)?;
                    let vars = phi.free_vars().join(",");
                    emit(Some(&path), &r.to_ufa(), Some(format!("vars: {vars}")))?;
                }
                None => println!("{}", fo::check_sentence(&phi, &env)?),
            }
        }
        Command::Closure {
            mode,
            input,
            output,
            max_k,
        } => {
            let r = load(&input)?;
            let base = if mode.equiv {
                r.union(&r.converse()?)?
            } else {
                r.clone()
            };
            let (star, cert) = closure::star_closure_with_budget(&base, max_k)?;
            let result = if mode.plus { r.compose(&star)? } else { star };
            emit(
                output.as_deref(),
                &result.to_ufa(),
                Some(certificate_line(&cert)),
            )?;
        }
        Command::Classify { kind, input } => {
            let r = load(&input)?;
            print!("{}", classify_report(kind, &r)?);
        }
        Command::Propagate { input, output } => {
            let f = parse_ufr(&read(&input)?)?;
            emit(
                output.as_deref(),
                &foundational::propagate(&f).to_ufa(),
                None,
            )?;
        }
        Command::Extract { input, output } => {
            let r = load(&input)?;
            let (f, d) = foundational::extract(&r)?;
            let text = format!("# pumping constant {d}\n{}", write_ufr(&f));
            emit(
                output.as_deref(),
                &text,
                Some(format!("pumping_constant: {d}")),
            )?;
        }
        Command::Build { what } => {
            let (result, output) = match what {
                Build::Union {
                    left,
                    right,
                    output,
                } => (
                    builders::disjoint_union(&load(&left)?, &load(&right)?)?,
                    output,
                ),
                Build::Copies { structure, output } => {
                    let s = FiniteStructure::parse(&read(&structure)?)?;
                    (builders::omega_copies(&s, "E")?, output)
                }
                Build::Quotient {
                    relation,
                    equivalence,
                    output,
                } => (
                    builders::quotient(&load(&relation)?, &load(&equivalence)?)?,
                    output,
                ),
                Build::Attach {
                    graph,
                    g,
                    tree,
                    t,
                    output,
                } => (
                    builders::attach(&load(&graph)?, g, &load(&tree)?, t)?,
                    output,
                ),
                Build::Star { template, output } => {
                    let tpl = Template::parse(&read(&template)?)?;
                    (builders::shallow_star(&tpl)?, output)
                }
                Build::Path { template, output } => {
                    let tpl = Template::parse(&read(&template)?)?;
                    (builders::periodic_path(&tpl)?, output)
                }
            };
            emit(output.as_deref(), &result.to_ufa(), None)?;
        }
        Command::Render {
            format,
            input,
            columns,
        } => {
            let r = load(&input)?;
            match format {
                RenderFormat::Dot => print!("{}", to_dot(&r.to_automaton())),
                RenderFormat::Grid => print!("{}", grid(&r, columns)?),
            }
        }
    }
    Ok(())
}

fn classify_report(kind: Kind, r: &Relation) -> Outcome<String> {
    let mut out = String::new();
    let mut line = |k: &str, v: &dyn std::fmt::Display| writeln!(out, "{k}: {v}").unwrap();
    match kind {
        Kind::Order => {
            let d = classify::decompose_order(r)?;
            line("kind", &"order");
            line("pumping_constant", &d.pumping_constant);
            line("trivial", &d.trivial_count);
            line("ascending_chains", &d.ascending_chains);
            line("descending_chains", &d.descending_chains);
            line("antichains", &d.antichains);
            line("strongly_connected", &d.strongly_connected);
        }
        Kind::Tournament => {
            let d = classify::decompose_tournament(r)?;
            line("kind", &"tournament");
            line("pumping_constant", &d.pumping_constant);
            line("trivial", &d.trivial_count);
            line("complete_ascending", &d.complete_ascending);
            line("complete_descending", &d.complete_descending);
            line("near_complete_ascending", &d.near_complete_ascending);
            line("near_complete_descending", &d.near_complete_descending);
        }
        Kind::Components => {
            let c = classify::components_report(r)?;
            line("kind", &"components");
            line("infinite_components", &c.infinite_component_count);
            line("finite_size_bound", &c.finite_size_bound);
            for (i, (rep, sample)) in c.samples.iter().enumerate() {
                let sample: Vec<String> = sample.iter().map(u64::to_string).collect();
                line(&format!("component[{i}].representative"), rep);
                line(&format!("component[{i}].sample"), &sample.join(","));
            }
        }
        Kind::Map => {
            let m = classify::classify_map(r)?;
            line("kind", &"map");
            line("partial_map", &m.is_partial_map);
            line("total", &m.is_total);
            line("injective", &m.is_injective);
            line("surjective", &m.is_surjective);
            line("finite_orbit_size_bound", &m.finite_orbit_size_bound);
            line("infinite_orbits", &m.infinite_orbit_count);
            for (i, o) in m.orbits.iter().enumerate() {
                line(&format!("orbit[{i}].representative"), &o.representative);
                line(&format!("orbit[{i}].contains_cycle"), &o.contains_cycle);
                line(
                    &format!("orbit[{i}].has_undefined_point"),
                    &o.has_undefined_point,
                );
                line(
                    &format!("orbit[{i}].has_infinite_indegree_vertex"),
                    &o.has_infinite_indegree_vertex,
                );
                line(&format!("orbit[{i}].path_type"), &o.path_type);
            }
        }
    }
    Ok(out)
}

/// The diagram of a binary relation as coordinate pairs, columns
/// `0..=columns`.
fn grid(r: &Relation, columns: u64) -> Outcome<String> {
    if r.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: r.arity(),
        }
        .into());
    }
    let d = r.pumping_constant();
    let size = ((columns + 1) * d.get()) as usize;
    let m = r.pair_matrix(size);
    let mut out = String::new();
    writeln!(out, "rows: 0..{}", d.get() - 1).unwrap();
    writeln!(out, "columns: 0..{columns}").unwrap();
    for (p, row) in m.iter().enumerate() {
        for (q, &edge) in row.iter().enumerate() {
            if edge {
                let a = unary_fa::diagram::coords(unary_fa::UnaryWord(p as u64), d);
                let b = unary_fa::diagram::coords(unary_fa::UnaryWord(q as u64), d);
                writeln!(out, "{a} -> {b}").unwrap();
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("{}: {e}", e.name());
            ExitCode::from(1)
        }
        Err(Failure::Io(path, e)) => {
            eprintln!("IoError: {}: {e}", path.display());
            ExitCode::from(1)
        }
    }
}
