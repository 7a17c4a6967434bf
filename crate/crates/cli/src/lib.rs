//! Command-line front end for `hibi-core`.
//!
//! [`run`] parses arguments, dispatches to a subcommand and returns the
//! process exit code: 0 on success, 1 when input cannot be read or parsed,
//! 2 for invalid mathematical input, 3 when a checked property fails.

pub mod cache;
pub mod expr;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use hibi_core::betti::{check_np, graded_betti, BettiTable};
use hibi_core::homology::reduced_homology_dims;
use hibi_core::initial::koszul_verdicts;
use hibi_core::poset::{parse_text, PosetJson};
use hibi_core::semigroup::divisor_complex;
use hibi_core::verify::suite::{run_all, run_item, VerifyItem};
use hibi_core::{sweep, DistributiveLattice, Error, FieldSpec, Poset, SemigroupElement};
use serde::Serialize;
use serde_json::json;

pub use cache::BettiCache;
pub use expr::{builder_expression, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_MATH: i32 = 2;
pub const EXIT_PROPERTY: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Tsv,
    Pretty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KoszulMode {
    /// the lattice criterion for the initial ideal
    Initial,
    /// the necessary condition for the Hibi ideal
    Filter,
    /// Hochster's formula on the induced order complex
    Oracle,
}

#[derive(Parser, Debug)]
#[command(
    name = "hibi",
    version,
    about = "Betti numbers and syzygies of Hibi rings"
)]
struct Cli {
    /// coefficient field: q, f2, f3, f5 or fp:<p>
    #[arg(long, global = true, default_value = "q")]
    field: FieldSpec,
    /// worker threads (default: all cores)
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    /// directory for cached Betti counts
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    output: Option<Output>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// List the order ideals of a poset
    Ideals {
        #[arg(long)]
        poset: String,
    },
    /// Print the ideal lattice
    Lattice {
        #[arg(long)]
        poset: String,
    },
    /// Graded Betti numbers; a single cell with --i and --j
    Betti {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long, default_value_t = 3)]
        max_i: usize,
        /// largest j in a table (default 2 * max-i)
        #[arg(long)]
        max_j: Option<usize>,
        /// include the nonzero multidegrees (JSON output)
        #[arg(long)]
        multigraded: bool,
    },
    /// Check property N_p for p in {2, 3}
    Np {
        #[arg(long)]
        poset: String,
        #[arg(long, default_value_t = 2)]
        p: usize,
    },
    /// Pairs of incomparable pairs satisfying a Koszul criterion
    KoszulPairs {
        #[arg(long)]
        poset: String,
        #[arg(long, value_enum, default_value = "initial")]
        mode: KoszulMode,
        /// compare the lattice criterion with the oracle on every pair
        #[arg(long)]
        cross_check: bool,
    },
    /// Run a verification item: patterns, four-subsets, segre-np,
    /// koszul-criterion, gadgets or all
    Verify {
        item: String,
        #[arg(long, default_value_t = 2)]
        p: usize,
    },
    /// Dump the squarefree divisor complex of h
    Delta {
        #[arg(long)]
        poset: String,
        /// the 2n exponents y_1..y_n z_1..z_n, comma separated
        #[arg(long)]
        h: String,
        /// degree; needed only for the empty poset
        #[arg(long)]
        deg: Option<u32>,
    },
}

/// Resolved settings of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub field: FieldSpec,
    pub threads: usize,
    pub cache_dir: Option<PathBuf>,
    pub output: Output,
}

impl RunConfig {
    fn from_cli(cli: Cli) -> RunConfig {
        let default_output = match cli.command {
            Command::Betti { .. } | Command::Ideals { .. } => Output::Tsv,
            _ => Output::Json,
        };
        RunConfig {
            output: cli.output.unwrap_or(default_output),
            field: cli.field,
            threads: cli.threads.unwrap_or(0) as usize,
            cache_dir: cli.cache_dir,
            command: cli.command,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Math(Error),
    Property,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Math(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

/// Runs the CLI on `args` (program name first), writing results to `out`
/// and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{shown}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{shown}");
                    EXIT_INPUT
                }
            };
        }
    };
    let config = RunConfig::from_cli(cli);
    let (result, buffer) = sweep::with_threads(config.threads, || {
        let mut buffer = Vec::new();
        let result = dispatch(&config, &mut buffer);
        (result, buffer)
    });
    if out.write_all(&buffer).and_then(|_| out.flush()).is_err() {
        return EXIT_INPUT;
    }
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Math(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_MATH
        }
        Err(Failure::Property) => EXIT_PROPERTY,
    }
}

/// A loaded poset with display names for its elements.
pub struct LoadedPoset {
    pub poset: Poset,
    pub names: Vec<String>,
}

/// Reads a poset from a text or JSON file, or else parses a builder
/// expression. Cycles count as unreadable input.
pub fn load_poset(source: &str) -> Result<LoadedPoset, String> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{source}: {e}"))?;
        if text.trim_start().starts_with('{') {
            let json: PosetJson =
                serde_json::from_str(&text).map_err(|e| format!("{source}: {e}"))?;
            let poset = Poset::from_json(&json).map_err(|e| format!("{source}: {e}"))?;
            let names = (0..poset.len()).map(|k| k.to_string()).collect();
            return Ok(LoadedPoset { poset, names });
        }
        let named = parse_text(&text).map_err(|e| format!("{source}: {e}"))?;
        return Ok(LoadedPoset {
            poset: named.poset,
            names: named.names,
        });
    }
    match builder_expression(source) {
        Ok(poset) => {
            let names = (0..poset.len()).map(|k| k.to_string()).collect();
            Ok(LoadedPoset { poset, names })
        }
        Err(e) if source.contains(['/', '.']) => Err(format!("{source}: no such file ({e})")),
        Err(e) => Err(e.to_string()),
    }
}

fn load(source: &str) -> Result<LoadedPoset, Failure> {
    load_poset(source).map_err(Failure::Input)
}

fn emit_json(out: &mut dyn Write, output: Output, value: &impl Serialize) -> Result<(), Failure> {
    let text = match output {
        Output::Pretty => serde_json::to_string_pretty(value),
        _ => serde_json::to_string(value),
    }
    .map_err(|e| Failure::Input(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

/// Columns are `i`, rows are `j - i` up to the last nonzero row; zeros
/// print as `-`.
fn betti_grid(cells: &[(usize, usize)], counts: &[u64]) -> String {
    let Some(max_i) = cells.iter().map(|c| c.0).max() else {
        return String::new();
    };
    let max_k = cells
        .iter()
        .zip(counts)
        .filter(|(c, &n)| c.1 >= c.0 && n > 0)
        .map(|(c, _)| c.1 - c.0)
        .max()
        .unwrap_or(0);
    let mut grid = vec![vec![String::new(); max_i + 1]; max_k + 1];
    for (&(i, j), &c) in cells.iter().zip(counts) {
        if j >= i && j - i <= max_k {
            grid[j - i][i] = if c == 0 { "-".into() } else { c.to_string() };
        }
    }
    let width = grid
        .iter()
        .flatten()
        .map(String::len)
        .chain([max_i.to_string().len()])
        .max()
        .unwrap_or(1);
    let label = max_k.to_string().len();
    let mut text = format!("{:label$} ", "");
    for i in 0..=max_i {
        text += &format!(" {i:>width$}");
    }
    text.push('\n');
    for (k, row) in grid.iter().enumerate() {
        text += &format!("{k:>label$}:");
        for cell in row {
            text += &format!(" {cell:>width$}");
        }
        text.truncate(text.trim_end().len());
        text.push('\n');
    }
    text
}

fn dispatch(config: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let field = config.field;
    match &config.command {
        Command::Ideals { poset } => {
            let p = load(poset)?;
            let ideals = p.poset.order_ideals();
            let named: Vec<Vec<&str>> = ideals
                .iter()
                .map(|i| i.elements().map(|e| p.names[e].as_str()).collect())
                .collect();
            if config.output == Output::Tsv {
                for (k, members) in named.iter().enumerate() {
                    writeln!(out, "{k}\t{}\t{}", members.len(), members.join(","))?;
                }
            } else {
                let rows: Vec<_> = named
                    .iter()
                    .enumerate()
                    .map(|(k, m)| json!({"index": k, "elements": m}))
                    .collect();
                emit_json(out, config.output, &rows)?;
            }
        }
        Command::Lattice { poset } => {
            let p = load(poset)?;
            let l = DistributiveLattice::ideal_lattice(&p.poset);
            if config.output == Output::Tsv {
                for (a, b) in l.covers() {
                    writeln!(out, "{a}\t{b}")?;
                }
            } else {
                emit_json(out, config.output, &l.to_json())?;
            }
        }
        Command::Betti {
            poset,
            i,
            j,
            max_i,
            max_j,
            multigraded,
        } => {
            let p = load(poset)?;
            let l = DistributiveLattice::ideal_lattice(&p.poset);
            let cells: Vec<(usize, usize)> = match (i, j) {
                (Some(i), Some(j)) => vec![(*i, *j)],
                (Some(i), None) => (*i..=max_j.unwrap_or(2 * i)).map(|j| (*i, j)).collect(),
                (None, Some(j)) => (0..=*j).map(|i| (i, *j)).collect(),
                (None, None) => {
                    let top_j = max_j.unwrap_or(2 * max_i);
                    (0..=*max_i)
                        .flat_map(|i| (i..=top_j).map(move |j| (i, j)))
                        .collect()
                }
            };
            if *multigraded {
                let table = BettiTable::compute(&l, &cells, field, true);
                emit_json(out, config.output, &table.rows())?;
                return Ok(());
            }
            let cache = match &config.cache_dir {
                Some(dir) => Some(BettiCache::new(dir)?),
                None => None,
            };
            let key = cache::poset_key(&p.poset);
            let counts: Vec<u64> = cells
                .iter()
                .map(|&(i, j)| {
                    if let Some(c) = cache.as_ref().and_then(|c| c.get(&key, i, j, field)) {
                        return Ok(c);
                    }
                    let count = graded_betti(&l, i, j, field);
                    if let Some(c) = &cache {
                        c.put(&key, i, j, field, count)?;
                    }
                    Ok(count)
                })
                .collect::<Result<_, Failure>>()?;
            if config.output == Output::Tsv {
                for (&(i, j), count) in cells.iter().zip(&counts) {
                    writeln!(out, "{i}\t{j}\t{count}")?;
                }
            } else if config.output == Output::Pretty {
                write!(out, "{}", betti_grid(&cells, &counts))?;
            } else {
                let rows: Vec<_> = cells
                    .iter()
                    .zip(&counts)
                    .map(|(&(i, j), c)| json!({"i": i, "j": j, "count": c}))
                    .collect();
                emit_json(out, config.output, &rows)?;
            }
        }
        Command::Np { poset, p } => {
            let loaded = load(poset)?;
            let l = DistributiveLattice::ideal_lattice(&loaded.poset);
            let cert = check_np(&l, *p, field).ok_or_else(|| {
                Error::Invalid(format!("property N_{p} is checked for p in {{2, 3}}"))
            })?;
            emit_json(out, config.output, &cert)?;
            if !cert.holds {
                return Err(Failure::Property);
            }
        }
        Command::KoszulPairs {
            poset,
            mode,
            cross_check,
        } => {
            let p = load(poset)?;
            let l = DistributiveLattice::ideal_lattice(&p.poset);
            let verdicts = koszul_verdicts(&l, field);
            if *cross_check {
                let bad: Vec<_> = verdicts
                    .iter()
                    .filter(|v| {
                        v.oracle
                            .map_or(v.is_koszul_initial, |o| o != v.is_koszul_initial)
                    })
                    .collect();
                emit_json(out, config.output, &bad)?;
                if !bad.is_empty() {
                    return Err(Failure::Property);
                }
            } else {
                let selected: Vec<_> = verdicts
                    .iter()
                    .filter(|v| match mode {
                        KoszulMode::Initial => v.is_koszul_initial,
                        KoszulMode::Filter => v.hibi_filter_pass,
                        KoszulMode::Oracle => v.oracle == Some(true),
                    })
                    .collect();
                emit_json(out, config.output, &selected)?;
            }
        }
        Command::Verify { item, p } => {
            let reports = if item == "all" {
                run_all(field)
            } else {
                let item =
                    VerifyItem::parse(item, *p).map_err(|e| Failure::Input(e.to_string()))?;
                vec![run_item(item, field)]
            };
            let all_pass = reports.iter().all(|r| r.passed());
            if reports.len() == 1 {
                emit_json(out, config.output, &reports[0])?;
            } else {
                emit_json(out, config.output, &reports)?;
            }
            if !all_pass {
                return Err(Failure::Property);
            }
        }
        Command::Delta { poset, h, deg } => {
            let p = load(poset)?;
            let l = DistributiveLattice::ideal_lattice(&p.poset);
            let h = parse_element(h, *deg, p.poset.len())?;
            let cx = divisor_complex(&l, &h, None)?;
            let homology = reduced_homology_dims(&cx, field, cx.dim().max(0))?;
            let value = json!({
                "h": h,
                "monomial": h.to_monomial(),
                "complex": cx.to_json(),
                "f_vector": cx.f_vector(),
                "reduced_homology": homology,
            });
            emit_json(out, config.output, &value)?;
        }
    }
    Ok(())
}

fn parse_element(text: &str, deg: Option<u32>, n: usize) -> Result<SemigroupElement, Failure> {
    let v: Vec<u32> = if text.trim().is_empty() {
        Vec::new()
    } else {
        text.split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|e| Failure::Input(format!("--h: {e}")))?
    };
    if v.len() != 2 * n {
        return Err(Failure::Math(Error::LengthMismatch {
            got: v.len(),
            expected: 2 * n,
        }));
    }
    match deg {
        Some(d) => Ok(SemigroupElement::new(v, d)),
        None if n > 0 => Ok(SemigroupElement::new(v.clone(), v[0] + v[n])),
        None => Err(Failure::Input(
            "--deg is required for the empty poset".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["hibi"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn pretty_betti_grid() {
        let (code, out, _) = call(&[
            "betti",
            "--poset",
            "antichain 2",
            "--max-i",
            "2",
            "--output",
            "pretty",
        ]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "   0 1 2\n0: 1 - -\n1: - 1 -\n");
    }

    #[test]
    fn config_defaults() {
        let cli = Cli::try_parse_from(["hibi", "betti", "--poset", "point"]).unwrap();
        let config = RunConfig::from_cli(cli);
        assert_eq!(config.output, Output::Tsv);
        assert_eq!(config.field, FieldSpec::Rationals);
        assert_eq!(config.threads, 0);
    }

    #[test]
    fn zero_threads_rejected() {
        assert_eq!(
            call(&["--threads", "0", "np", "--poset", "point"]).0,
            EXIT_INPUT
        );
    }

    #[test]
    fn element_parsing() {
        let h = parse_element("1,0,0,1", None, 2).unwrap();
        assert_eq!(h.degree, 1);
        assert!(parse_element("1,0,0", None, 2).is_err());
        assert!(parse_element("", None, 0).is_err());
        assert_eq!(parse_element("", Some(2), 0).unwrap().degree, 2);
    }
}
