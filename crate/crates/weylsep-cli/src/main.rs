//! Command-line front end: enumerate Weyl groups, decide separability of a
//! single element with an explanation, run exhaustive verification sweeps,
//! re-derive the forbidden patterns from scratch, and manage the enumeration
//! cache. Reports go to standard output, diagnostics to standard error, and
//! output is byte-identical across runs for fixed flags.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use weylsep::cartan::irreducible_types_of_rank;
use weylsep::patterns::{canonical_pattern_name, first_forbidden, minimal_nonseparable};
use weylsep::separable::{certificate, is_separable};
use weylsep::verify::{
    check_color_lemma, check_decomposition_lemma, check_fiber_lemma, check_main_theorem,
    check_pattern_theorem, check_symmetry_prop, check_w0j, ColorCheck, DecompositionMode,
    VerificationReport,
};
use weylsep::weyl::{load_group, save_group};
use weylsep::{
    CartanType, EnumLimits, Error, Family, Result, RootSystem, WeylElement, WeylGroup,
};

const EXIT_COUNTEREXAMPLE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_GUARD: u8 = 3;

#[derive(Parser)]
#[command(
    name = "weylsep",
    version,
    about = "Root systems, Weyl groups, and separable elements"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Directory for cached enumerations (falls back to WEYLSEP_CACHE).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Refuse enumerations predicted to exceed this many elements.
    #[arg(long, global = true)]
    max_elements: Option<u64>,
    /// Allow enumerating type E7 (2903040 elements).
    #[arg(long, global = true)]
    allow_e7: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Args)]
struct TypeArgs {
    /// Family letter of the Cartan type (A–G).
    #[arg(long = "type", value_parser = parse_family)]
    family: Family,
    /// Rank of the system.
    #[arg(long)]
    rank: usize,
}

impl TypeArgs {
    fn build(&self) -> Result<Arc<RootSystem>> {
        RootSystem::build(&CartanType::irreducible(self.family, self.rank)?)
    }
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    match s.to_ascii_uppercase().as_str() {
        "A" => Ok(Family::A),
        "B" => Ok(Family::B),
        "C" => Ok(Family::C),
        "D" => Ok(Family::D),
        "E" => Ok(Family::E),
        "F" => Ok(Family::F),
        "G" => Ok(Family::G),
        other => Err(format!("unknown family letter: {other}")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// List every element of a Weyl group in canonical order.
    Enumerate(TypeArgs),
    /// Decide separability of one element and explain the answer.
    Check {
        #[command(flatten)]
        ty: TypeArgs,
        /// Reduced (or unreduced) word as 1-based simple indices, e.g. 1,2,1.
        #[arg(long, value_delimiter = ',')]
        word: Option<Vec<usize>>,
        /// One-line permutation (type A only), e.g. 3142 or 3,1,4,2.
        #[arg(long)]
        oneline: Option<String>,
        /// Inversion set as 0-based positive-root indices, e.g. 0,2,5.
        #[arg(long, value_delimiter = ',')]
        inversions: Option<Vec<usize>>,
    },
    /// Run an exhaustive verification sweep and report counterexamples.
    Verify {
        /// Which claim to sweep.
        #[arg(value_enum)]
        claim: Claim,
        #[command(flatten)]
        ty: TypeArgs,
        /// Decomposition only: accept any irreducible simply-laced type to
        /// exhibit the full-support roots that do not decompose.
        #[arg(long)]
        permissive: bool,
    },
    /// Pattern utilities.
    #[command(subcommand)]
    Patterns(PatternsCmd),
    /// Enumeration-cache utilities.
    #[command(subcommand)]
    Cache(CacheCmd),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Claim {
    /// Ideal × filter rank polynomials multiply to the group polynomial at
    /// every separable element.
    Main,
    /// Separability coincides with forbidden-pattern avoidance.
    Patterns,
    /// Parabolic fiber polynomials for every maximal proper subset of simples.
    Fibers,
    /// Longest minimal coset representatives: ideals, length additivity,
    /// product identity, over all subsets of simples.
    W0j,
    /// The separable set is closed under complementation by w0.
    Symmetry,
    /// Full-support roots decompose (types D and E).
    Decomposition,
    /// Inversion-coloring sweeps for the applicable type.
    Colors,
    /// Every sweep that applies to the type.
    All,
}

#[derive(Subcommand)]
enum PatternsCmd {
    /// Search every irreducible type up to a rank bound for minimal
    /// non-separable elements and print their canonical names.
    Derive {
        /// Largest rank to search.
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
    },
}

#[derive(Subcommand)]
enum CacheCmd {
    /// Enumerate a group and write its cache file.
    Warm(TypeArgs),
    /// Remove the cache file for a type.
    Clear(TypeArgs),
    /// Print the cache file path for a type.
    Path(TypeArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::EnumerationTooLarge(_) => EXIT_GUARD,
                _ => EXIT_USAGE,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let limits = EnumLimits {
        max_elements: cli
            .max_elements
            .unwrap_or_else(|| EnumLimits::default().max_elements),
        allow_e7: cli.allow_e7,
    };
    match &cli.command {
        Command::Enumerate(ty) => cmd_enumerate(cli, ty, &limits),
        Command::Check {
            ty,
            word,
            oneline,
            inversions,
        } => cmd_check(cli, ty, word, oneline, inversions),
        Command::Verify {
            claim,
            ty,
            permissive,
        } => cmd_verify(cli, *claim, ty, *permissive, &limits),
        Command::Patterns(PatternsCmd::Derive { max_rank }) => {
            cmd_patterns_derive(cli, *max_rank, &limits)
        }
        Command::Cache(cmd) => cmd_cache(cli, cmd, &limits),
    }
}

/// Cache directory from the flag or the WEYLSEP_CACHE environment variable.
fn cache_dir(cli: &Cli) -> Option<PathBuf> {
    cli.cache_dir
        .clone()
        .or_else(|| std::env::var_os("WEYLSEP_CACHE").map(PathBuf::from))
}

fn cache_file(dir: &std::path::Path, system: &RootSystem) -> PathBuf {
    dir.join(format!("{}.json", system.cartan_type()))
}

/// Enumerate a group, reading and writing the cache when one is configured.
/// A stale or damaged cache file is regenerated, not trusted.
fn obtain_group(cli: &Cli, system: &Arc<RootSystem>, limits: &EnumLimits) -> Result<WeylGroup> {
    let Some(dir) = cache_dir(cli) else {
        return WeylGroup::enumerate(system, limits);
    };
    let path = cache_file(&dir, system);
    if path.exists() {
        match load_group(system, &path) {
            Ok(group) => return Ok(group),
            Err(e) => eprintln!("cache at {} rejected ({e}); regenerating", path.display()),
        }
    }
    let group = WeylGroup::enumerate(system, limits)?;
    std::fs::create_dir_all(&dir)
        .map_err(|e| Error::InvalidInput(format!("cannot create cache directory: {e}")))?;
    save_group(&group, &path)?;
    Ok(group)
}

fn cmd_enumerate(cli: &Cli, ty: &TypeArgs, limits: &EnumLimits) -> Result<u8> {
    let system = ty.build()?;
    let group = obtain_group(cli, &system, limits)?;
    if cli.format == Format::Text {
        println!("length\tword\tinversions");
    }
    for w in group.elements() {
        match cli.format {
            Format::Json => println!("{}", w.to_json()),
            Format::Text | Format::Tsv => println!("{}", w.to_tsv()),
        }
    }
    Ok(0)
}

fn parse_oneline(s: &str) -> Result<Vec<usize>> {
    let parts: Vec<&str> = if s.contains(',') {
        s.split(',').collect()
    } else {
        s.split("").filter(|p| !p.is_empty()).collect()
    };
    parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("bad one-line entry: {p}")))
        })
        .collect()
}

fn cmd_check(
    cli: &Cli,
    ty: &TypeArgs,
    word: &Option<Vec<usize>>,
    oneline: &Option<String>,
    inversions: &Option<Vec<usize>>,
) -> Result<u8> {
    let system = ty.build()?;
    let given = [word.is_some(), oneline.is_some(), inversions.is_some()]
        .iter()
        .filter(|b| **b)
        .count();
    if given != 1 {
        return Err(Error::InvalidInput(
            "provide exactly one of --word, --oneline, --inversions".to_string(),
        ));
    }
    let w = if let Some(word) = word {
        let zero_based: Vec<usize> = word
            .iter()
            .map(|&i| {
                i.checked_sub(1)
                    .ok_or_else(|| Error::InvalidInput("word letters are 1-based".to_string()))
            })
            .collect::<Result<_>>()?;
        WeylElement::from_word(&system, &zero_based)?
    } else if let Some(oneline) = oneline {
        WeylElement::from_oneline(&system, &parse_oneline(oneline)?)?
    } else {
        WeylElement::from_inversion_indices(&system, inversions.as_ref().unwrap())?
    };
    let (verdict, detail, body) = if is_separable(&w) {
        let cert = certificate(&w).expect("separable elements carry a certificate");
        (
            "separable",
            cert.render(),
            serde_json::json!({
                "separable": true,
                "element": w.to_json(),
                "certificate": cert.to_json(),
            }),
        )
    } else {
        let hit = first_forbidden(&w).expect("non-separable elements contain a pattern");
        (
            "non-separable",
            format!("pattern {} at {}", hit.matched.name(), hit.location()),
            serde_json::json!({
                "separable": false,
                "element": w.to_json(),
                "pattern": hit.to_json(),
            }),
        )
    };
    match cli.format {
        Format::Text => println!("{verdict}; {detail}"),
        Format::Tsv => println!("{verdict}\t{detail}"),
        Format::Json => println!("{body}"),
    }
    Ok(0)
}

/// The sweeps a claim expands to on the given system.
fn run_sweeps(
    claim: Claim,
    system: &Arc<RootSystem>,
    permissive: bool,
    limits: &EnumLimits,
) -> Result<Vec<VerificationReport>> {
    let decomposition_mode = if permissive {
        DecompositionMode::Permissive
    } else {
        DecompositionMode::Strict
    };
    let maximal_proper_fibers = |out: &mut Vec<VerificationReport>| -> Result<()> {
        let rank = system.rank();
        for omit in 0..rank {
            let j: Vec<usize> = (0..rank).filter(|&i| i != omit).collect();
            out.push(check_fiber_lemma(system, &j, limits)?);
        }
        Ok(())
    };
    let t = system.cartan_type();
    let simply_laced = system.is_irreducible() && t.is_simply_laced();
    let type_b = matches!(t.components()[..], [(Family::B, _)]);
    let type_d_or_e = system.is_irreducible()
        && matches!(t.components()[..], [(Family::D, _)] | [(Family::E, _)]);
    let mut out = Vec::new();
    match claim {
        Claim::Main => out.push(check_main_theorem(system, limits)?),
        Claim::Patterns => out.push(check_pattern_theorem(system, limits)?),
        Claim::Fibers => maximal_proper_fibers(&mut out)?,
        Claim::W0j => out.push(check_w0j(system, limits)?),
        Claim::Symmetry => out.push(check_symmetry_prop(system, limits)?),
        Claim::Decomposition => {
            out.push(check_decomposition_lemma(system, decomposition_mode)?)
        }
        Claim::Colors => {
            if simply_laced {
                out.push(check_color_lemma(system, ColorCheck::TripleClosure, limits)?);
                out.push(check_color_lemma(system, ColorCheck::SmallRootPivot, limits)?);
            } else if type_b {
                out.push(check_color_lemma(system, ColorCheck::HatPair, limits)?);
            } else {
                return Err(Error::WrongType(format!(
                    "no coloring sweep applies to type {t}"
                )));
            }
        }
        Claim::All => {
            out.push(check_main_theorem(system, limits)?);
            out.push(check_pattern_theorem(system, limits)?);
            maximal_proper_fibers(&mut out)?;
            out.push(check_w0j(system, limits)?);
            out.push(check_symmetry_prop(system, limits)?);
            if type_d_or_e {
                out.push(check_decomposition_lemma(system, DecompositionMode::Strict)?);
            }
            if simply_laced {
                out.push(check_color_lemma(system, ColorCheck::TripleClosure, limits)?);
                out.push(check_color_lemma(system, ColorCheck::SmallRootPivot, limits)?);
            } else if type_b {
                out.push(check_color_lemma(system, ColorCheck::HatPair, limits)?);
            }
        }
    }
    Ok(out)
}

fn cmd_verify(
    cli: &Cli,
    claim: Claim,
    ty: &TypeArgs,
    permissive: bool,
    limits: &EnumLimits,
) -> Result<u8> {
    let system = ty.build()?;
    let reports = run_sweeps(claim, &system, permissive, limits)?;
    let mut all_pass = true;
    for r in &reports {
        all_pass &= r.pass();
        match cli.format {
            Format::Json => {
                // Wall time is zeroed so output stays byte-identical across runs.
                let mut v = r.to_json();
                v["millis"] = 0.into();
                println!("{v}");
            }
            Format::Tsv => println!(
                "{}\t{}\t{}\t{}\t{}",
                r.claim(),
                r.system(),
                r.population(),
                if r.pass() { "pass" } else { "FAIL" },
                r.counterexamples().len()
            ),
            Format::Text => {
                if r.pass() {
                    println!("{} on {}: pass ({} cases)", r.claim(), r.system(), r.population());
                } else {
                    println!(
                        "{} on {}: FAIL ({} cases); first counterexample: {}",
                        r.claim(),
                        r.system(),
                        r.population(),
                        r.counterexamples()[0]
                    );
                }
            }
        }
    }
    Ok(if all_pass { 0 } else { EXIT_COUNTEREXAMPLE })
}

fn cmd_patterns_derive(cli: &Cli, max_rank: usize, limits: &EnumLimits) -> Result<u8> {
    let mut names: Vec<String> = Vec::new();
    for rank in 2..=max_rank {
        for t in irreducible_types_of_rank(rank) {
            let system = RootSystem::build(&t)?;
            for e in minimal_nonseparable(&system, limits)? {
                let name = canonical_pattern_name(&e)
                    .unwrap_or_else(|| format!("{}:mask{}", t, e.mask()));
                if !names.contains(&name) {
                    names.push(name);
                }
            }
        }
    }
    match cli.format {
        Format::Json => println!("{}", serde_json::json!(names)),
        Format::Text | Format::Tsv => {
            for n in &names {
                println!("{n}");
            }
        }
    }
    Ok(0)
}

fn cmd_cache(cli: &Cli, cmd: &CacheCmd, limits: &EnumLimits) -> Result<u8> {
    let (ty, _) = match cmd {
        CacheCmd::Warm(ty) => (ty, "warm"),
        CacheCmd::Clear(ty) => (ty, "clear"),
        CacheCmd::Path(ty) => (ty, "path"),
    };
    let system = ty.build()?;
    let Some(dir) = cache_dir(cli) else {
        return Err(Error::InvalidInput(
            "cache commands need --cache-dir or WEYLSEP_CACHE".to_string(),
        ));
    };
    let path = cache_file(&dir, &system);
    match cmd {
        CacheCmd::Warm(_) => {
            let group = WeylGroup::enumerate(&system, limits)?;
            std::fs::create_dir_all(&dir)
                .map_err(|e| Error::InvalidInput(format!("cannot create cache directory: {e}")))?;
            save_group(&group, &path)?;
            println!("wrote {} elements to {}", group.len(), path.display());
        }
        CacheCmd::Clear(_) => {
            if path.exists() {
                std::fs::remove_file(&path)
                    .map_err(|e| Error::InvalidInput(format!("cannot remove cache file: {e}")))?;
                println!("removed {}", path.display());
            } else {
                println!("no cache file at {}", path.display());
            }
        }
        CacheCmd::Path(_) => println!("{}", path.display()),
    }
    Ok(0)
}
