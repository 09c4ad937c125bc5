//! The `odp` command line. [`run`] does all the work so tests can drive it
//! without a subprocess.

use std::io::Write;
use std::path::Path;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use odp_core::codedb::{self, catalog_get, catalog_list, verify_entry};
use odp_core::exact::feasibility::{feasibility_check, FeasibilityOutcome, FeasibilityProblem};
use odp_core::io::{format_matrix, parse_code, write_matrix};
use odp_core::search::{self, Maximality, Order, SearchConfig};
use odp_core::{canon, weights, Error, LinearCode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "odp", version, about = "Distance profiles, subcode chains and MacWilliams certificates for binary linear codes")]
struct Cli {
    /// Worker threads for searches.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Minimum distance.
    Distance { file: String },
    /// Weight distribution, one `weight count` pair per line.
    Wd { file: String },
    /// Generator matrix of the dual code.
    Dual { file: String },
    /// Permutation equivalence of two codes.
    Equiv { a: String, b: String },
    /// Optimum distance profile.
    Odp {
        file: String,
        #[arg(long, default_value = "dic")]
        order: Order,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget_secs: Option<f64>,
        /// Write the chain generator matrix here.
        #[arg(long)]
        witness: Option<String>,
    },
    /// Largest subcodes with minimum distance at least D, up to equivalence.
    Subcodes {
        file: String,
        #[arg(long)]
        dmin: usize,
        #[arg(long)]
        budget_secs: Option<f64>,
    },
    /// All inequivalent codes of dimension K containing the seed.
    Supercodes {
        file: String,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        dmin: usize,
        #[arg(long)]
        doubly_even: bool,
        #[arg(long)]
        self_orthogonal: bool,
        #[arg(long)]
        self_complementary: bool,
        #[arg(long)]
        within: Option<String>,
        #[arg(long)]
        budget_secs: Option<f64>,
    },
    /// Random maximal subcode.
    RandomSub(RandomArgs),
    /// Random maximal supercode inside the dual of the seed.
    RandomSuper(RandomArgs),
    /// Exact feasibility of a weight distribution.
    Macwilliams {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<usize>,
        #[arg(long)]
        self_complementary: bool,
        /// Known dual counts, e.g. `2=0,4=5`.
        #[arg(long, value_delimiter = ',')]
        fix_dual: Vec<String>,
    },
    /// Bundled codes.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Number of maximal subcode chains of a k-dimensional code.
    ChainsCount { k: usize },
}

#[derive(Args, Debug)]
struct RandomArgs {
    file: String,
    #[arg(long)]
    dmin: usize,
    /// Drawn from entropy and printed when omitted.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    restarts: usize,
    #[arg(long)]
    doubly_even: bool,
    #[arg(long)]
    self_orthogonal: bool,
    #[arg(long)]
    within: Option<String>,
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    List,
    Get { name: String },
    Verify { name: String },
}

/// A failed command: its exit code and message.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded => EXIT_BUDGET,
            Error::Parse { .. } | Error::InvalidArgument(_) | Error::UnknownEntry(_) => EXIT_USAGE,
            _ => EXIT_NEGATIVE,
        };
        Failure(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        // A closed pipe downstream (`odp ... | head`) is not an error.
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure(EXIT_OK, String::new());
        }
        Failure(EXIT_USAGE, e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs one command line; `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.cmd, cli.threads, out, err) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            if !msg.is_empty() {
                let _ = writeln!(err, "error: {msg}");
            }
            code
        }
    }
}

/// Reads a code from a file; a missing file whose stem names a catalog
/// entry loads that entry instead.
fn load(path: &str) -> std::result::Result<LinearCode, Failure> {
    let p = Path::new(path);
    if p.exists() {
        let text = std::fs::read_to_string(p)?;
        return Ok(parse_code(&text)?);
    }
    let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or(path);
    match catalog_get(stem) {
        Ok(e) => Ok(e.code()),
        Err(Error::UnknownEntry(_)) => Err(Failure(EXIT_USAGE, format!("no such file or catalog entry: {path}"))),
        Err(e) => Err(e.into()),
    }
}

fn budget(secs: Option<f64>) -> std::result::Result<Option<Duration>, Failure> {
    match secs {
        None => Ok(None),
        Some(s) if s.is_finite() && s >= 0.0 => Ok(Some(Duration::from_secs_f64(s))),
        Some(s) => Err(Failure(EXIT_USAGE, format!("bad budget {s}"))),
    }
}

fn dispatch(cmd: Cmd, threads: usize, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cmd {
        Cmd::Distance { file } => {
            let c = load(&file)?;
            writeln!(out, "{}", weights::min_distance(&c)?)?;
        }
        Cmd::Wd { file } => {
            let c = load(&file)?;
            let wd = weights::weight_distribution(&c)?;
            for (w, &a) in wd.counts().iter().enumerate() {
                if a > 0 {
                    writeln!(out, "{w} {a}")?;
                }
            }
        }
        Cmd::Dual { file } => {
            let c = load(&file)?;
            write!(out, "{}", format_matrix(c.dual().generator()))?;
        }
        Cmd::Equiv { a, b } => {
            let (a, b) = (load(&a)?, load(&b)?);
            return Ok(match canon::find_equivalence(&a, &b)? {
                Some(perm) => {
                    let p: Vec<String> = perm.iter().map(|x| x.to_string()).collect();
                    writeln!(out, "equivalent")?;
                    writeln!(out, "{}", p.join(" "))?;
                    EXIT_OK
                }
                None => {
                    writeln!(out, "inequivalent")?;
                    EXIT_NEGATIVE
                }
            });
        }
        Cmd::Odp {
            file,
            order,
            seed,
            budget_secs,
            witness,
        } => {
            let c = load(&file)?;
            let cfg = SearchConfig {
                seed,
                time_budget: budget(budget_secs)?,
                threads,
                ..SearchConfig::default()
            };
            let r = search::odp(&c, order, &cfg)?;
            let label = if r.proven { "proven" } else { "lower bound" };
            writeln!(out, "{} ({label})", r.profile)?;
            if let Some(path) = witness {
                let note = format!("chain with profile {} ({label})", r.profile);
                write_matrix(&path, &r.witness.matrix, Some(&note))?;
            }
            return Ok(if r.proven { EXIT_OK } else { EXIT_BUDGET });
        }
        Cmd::Subcodes { file, dmin, budget_secs } => {
            let c = load(&file)?;
            let cfg = SearchConfig {
                time_budget: budget(budget_secs)?,
                threads,
                ..SearchConfig::default()
            };
            let s = search::chain_subcodes(&c, dmin, &cfg)?;
            writeln!(out, "dimension {}", s.dim)?;
            writeln!(out, "classes {}", s.classes.len())?;
            print_codes(out, &s.classes)?;
        }
        Cmd::Supercodes {
            file,
            dim,
            dmin,
            doubly_even,
            self_orthogonal,
            self_complementary,
            within,
            budget_secs,
        } => {
            let seed = load(&file)?;
            let mut cfg = SearchConfig {
                time_budget: budget(budget_secs)?,
                within: within.as_deref().map(load).transpose()?,
                threads,
                ..SearchConfig::default()
            };
            cfg.filters.doubly_even = doubly_even;
            cfg.filters.self_orthogonal = self_orthogonal;
            cfg.filters.self_complementary = self_complementary;
            let codes = search::chain_supercodes(&[seed], dim, dmin, &cfg)?;
            writeln!(out, "codes {}", codes.len())?;
            print_codes(out, &codes)?;
            if codes.is_empty() {
                return Ok(EXIT_NEGATIVE);
            }
        }
        Cmd::RandomSub(a) => return random(a, false, threads, out, err),
        Cmd::RandomSuper(a) => return random(a, true, threads, out, err),
        Cmd::Macwilliams {
            n,
            k,
            weights,
            self_complementary,
            fix_dual,
        } => {
            let mut p = FeasibilityProblem::new(n, k, weights);
            if self_complementary {
                p = p.self_complementary();
            }
            for f in &fix_dual {
                let (j, v) = parse_fix(f)?;
                p = p.fix_dual(j, v);
            }
            return Ok(match feasibility_check(&p)? {
                FeasibilityOutcome::UniqueSolution { primal, dual } => {
                    writeln!(out, "feasible: unique solution")?;
                    for (w, a) in &primal {
                        writeln!(out, "A[{w}] = {a}")?;
                    }
                    for (j, a) in &dual {
                        writeln!(out, "A_dual[{j}] = {a}")?;
                    }
                    EXIT_OK
                }
                FeasibilityOutcome::Underdetermined { free } => {
                    writeln!(out, "feasible: underdetermined, {free} free")?;
                    EXIT_OK
                }
                FeasibilityOutcome::Infeasible(cert) => {
                    writeln!(out, "infeasible")?;
                    writeln!(out, "{cert}")?;
                    EXIT_NEGATIVE
                }
            });
        }
        Cmd::Catalog { cmd } => return catalog(cmd, out),
        Cmd::ChainsCount { k } => {
            writeln!(out, "{}", search::chain_count(k)?)?;
        }
    }
    Ok(EXIT_OK)
}

fn parse_fix(s: &str) -> std::result::Result<(usize, i64), Failure> {
    let bad = || Failure(EXIT_USAGE, format!("expected j=value, got {s:?}"));
    let (j, v) = s.split_once('=').ok_or_else(bad)?;
    Ok((j.trim().parse().map_err(|_| bad())?, v.trim().parse().map_err(|_| bad())?))
}

fn print_codes(out: &mut dyn Write, codes: &[LinearCode]) -> std::io::Result<()> {
    for (i, c) in codes.iter().enumerate() {
        writeln!(out)?;
        writeln!(out, "# code {}", i + 1)?;
        write!(out, "{}", format_matrix(c.generator()))?;
    }
    Ok(())
}

fn random(a: RandomArgs, supercode: bool, threads: usize, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let c = load(&a.file)?;
    let seed = match a.seed {
        Some(s) => s,
        None => {
            let s = rand::random::<u64>();
            writeln!(err, "seed {s}")?;
            s
        }
    };
    let mut cfg = SearchConfig {
        seed,
        restarts: a.restarts,
        within: a.within.as_deref().map(load).transpose()?,
        threads,
                ..SearchConfig::default()
    };
    cfg.filters.doubly_even = a.doubly_even;
    cfg.filters.self_orthogonal = a.self_orthogonal;
    let r = if supercode {
        search::random_supercode(&c, a.dmin, &cfg)?
    } else {
        search::random_subcode(&c, a.dmin, &cfg)?
    };
    let d = weights::min_distance(&r.code)?;
    let how = match r.maximality {
        Maximality::Proven => "maximal",
        Maximality::Probable => "probably maximal",
    };
    writeln!(
        out,
        "[{},{},{}] {how}, restart {}, seed {seed}",
        r.code.n(),
        r.code.k(),
        d,
        r.restart
    )?;
    write!(out, "{}", format_matrix(r.code.generator()))?;
    Ok(EXIT_OK)
}

fn catalog(cmd: CatalogCmd, out: &mut dyn Write) -> Outcome {
    match cmd {
        CatalogCmd::List => {
            for name in catalog_list() {
                let e = codedb::catalog_entry(name)?;
                let c = &e.claimed;
                let d = c.d.map_or("?".to_string(), |d| d.to_string());
                writeln!(out, "{name}\t[{},{},{d}]\t{}", c.n, c.k, e.source)?;
            }
        }
        CatalogCmd::Get { name } => {
            let e = catalog_get(&name)?;
            writeln!(out, "# {} ({})", e.name, e.source)?;
            write!(out, "{}", format_matrix(&e.matrix))?;
        }
        CatalogCmd::Verify { name } => {
            let e = codedb::catalog_entry(&name)?;
            let r = verify_entry(&e);
            write!(out, "{r}")?;
            return Ok(if r.passed() { EXIT_OK } else { EXIT_NEGATIVE });
        }
    }
    Ok(EXIT_OK)
}
