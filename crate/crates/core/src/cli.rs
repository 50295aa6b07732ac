//! The `trace-sperner` command line: `check`, `construct`, `census`,
//! `verify` and `search`.
//!
//! Every document written embeds a [`RunManifest`]. Exit codes: 0 when the
//! property or all checks hold, 1 when something fails with a witness, 2 on
//! input, capacity or precondition errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::census::{
    census_direct, census_ie, s_star, verify_claims, verify_corollary_26, verify_lemma_21,
    CensusResult,
};
use crate::constructions::{build_erdos_extremal, build_g0, build_g0_prime, ErdosVariant};
use crate::error::{Error, Result};
use crate::family::{Family, FamilyJson};
use crate::report::{Check, RunManifest};
use crate::sample::{pruned_trace_sperner, rng, DEFAULT_SEED};
use crate::search::{
    conjecture_from_certificate, f_exact, uniqueness_from_certificate, SearchCertificate,
    SearchConfig,
};
use crate::sperner::is_l_trace_k_sperner;

/// Environment variable holding the worker count (0 = one per core).
pub const THREADS_ENV: &str = "TRACE_SPERNER_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "trace-sperner", version, about = "Trace-Sperner families: checks, constructions, chain census, verification and extremal search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a family is l-trace k-Sperner, or re-verify a search certificate.
    Check {
        /// Family JSON file.
        #[arg(required_unless_present = "certificate")]
        family: Option<PathBuf>,
        #[arg(long, required_unless_present = "certificate")]
        l: Option<usize>,
        #[arg(long, required_unless_present = "certificate")]
        k: Option<usize>,
        /// Certificate JSON written by `search`.
        #[arg(long, conflicts_with = "family")]
        certificate: Option<PathBuf>,
    },
    /// Emit a construction as a family file.
    Construct {
        kind: ConstructKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// The construction's l (for g0 / g0prime), or the trace size for random.
        #[arg(long)]
        l: Option<usize>,
        #[arg(long, value_enum, default_value = "upper")]
        variant: VariantArg,
        /// Seed for `random`.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Size band for `random`.
        #[arg(long)]
        lo: Option<usize>,
        #[arg(long)]
        hi: Option<usize>,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count maximal chains by how many members they meet.
    Census {
        family: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "both")]
        engine: Engine,
        /// Print the distribution as CSV instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Check the chain-set bounds, overlap counts, c⁻ >= c⁺ and the LYM bound.
    Verify {
        family: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "all")]
        which: Which,
    },
    /// Compute f(n, k, l) exactly by branch and bound.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        /// Time budget in seconds.
        #[arg(long)]
        budget: Option<f64>,
        /// Construction used as the starting lower bound.
        #[arg(long, value_enum, default_value = "none")]
        seed: SeedArg,
        #[arg(long)]
        no_symmetry: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ConstructKind {
    G0,
    G0prime,
    Erdos,
    Random,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum VariantArg {
    Upper,
    Lower,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Engine {
    Direct,
    Ie,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Claims,
    Sstar,
    Lemma21,
    Cor26,
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SeedArg {
    None,
    G0,
}

/// Applies [`THREADS_ENV`] to the global rayon pool. Call once, before any
/// parallel work.
pub fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("{THREADS_ENV}={raw:?} is not a count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn emit(&mut self, doc: &Value, path: Option<&PathBuf>) -> Result<()> {
        let text = serde_json::to_string_pretty(doc).expect("json") + "\n";
        match path {
            Some(p) => fs::write(p, &text)
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", p.display()))),
            None => self
                .out
                .write_all(text.as_bytes())
                .map_err(|e| Error::InvalidArgument(format!("stdout: {e}"))),
        }
    }
}

/// Parses `args` (without the program name) and runs one command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let parsed = match Cli::try_parse_from(std::iter::once(OsString::from("trace-sperner")).chain(args)) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let mut io = Io { out, err };
    match dispatch(parsed.command, echo, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cmd: Command, echo: Vec<String>, io: &mut Io) -> Result<i32> {
    match cmd {
        Command::Check {
            family,
            l,
            k,
            certificate,
        } => match certificate {
            Some(path) => cmd_check_certificate(&path, echo, io),
            None => cmd_check(
                &family.expect("clap enforces"),
                l.expect("clap enforces"),
                k.expect("clap enforces"),
                echo,
                io,
            ),
        },
        Command::Construct {
            kind,
            n,
            k,
            l,
            variant,
            seed,
            lo,
            hi,
            density,
            out,
        } => {
            let mut manifest = RunManifest::new("construct", echo);
            let fam = match kind {
                ConstructKind::G0 => build_g0(n, k, need_l(l)?)?,
                ConstructKind::G0prime => build_g0_prime(n, k, need_l(l)?)?,
                ConstructKind::Erdos => build_erdos_extremal(
                    n,
                    k,
                    match variant {
                        VariantArg::Upper => ErdosVariant::Upper,
                        VariantArg::Lower => ErdosVariant::Lower,
                    },
                )?,
                ConstructKind::Random => {
                    manifest.seed = Some(seed);
                    let trace = l.unwrap_or(n.saturating_sub(1));
                    if !(0.0..=1.0).contains(&density) {
                        return Err(Error::InvalidArgument(format!("density {density} outside [0, 1]")));
                    }
                    pruned_trace_sperner(
                        &mut rng(seed),
                        n,
                        k,
                        trace,
                        lo.unwrap_or(0),
                        hi.unwrap_or(n),
                        density,
                    )?
                }
            };
            let mut doc = serde_json::to_value(FamilyJson::from(&fam)).expect("json");
            doc["manifest"] = to_value(&manifest);
            io.emit(&doc, out.as_ref())?;
            Ok(EXIT_OK)
        }
        Command::Census {
            family,
            k,
            engine,
            csv,
        } => cmd_census(&family, k, engine, csv, echo, io),
        Command::Verify { family, k, which } => cmd_verify(&family, k, which, echo, io),
        Command::Search {
            n,
            k,
            l,
            budget,
            seed,
            no_symmetry,
            out,
        } => {
            let mut cfg = SearchConfig::new(n, k, l).with_symmetry(!no_symmetry);
            if let Some(b) = budget {
                cfg = cfg.with_budget(b);
            }
            if seed == SeedArg::G0 {
                let d = n.checked_sub(l).unwrap_or(0);
                cfg = cfg.with_seed(build_g0(n, k, d)?);
            }
            let cert = f_exact(&cfg)?;
            let manifest = RunManifest::new("search", echo);
            let mut doc = json!({
                "manifest": to_value(&manifest),
                "certificate": to_value(&cert),
                "conjecture": to_value(&conjecture_from_certificate(&cert)),
            });
            if k >= 2 && k <= n && l + 1 == n && n <= crate::family::CANONICAL_MAX_N {
                doc["uniqueness"] = to_value(&uniqueness_from_certificate(&cert)?);
            }
            io.emit(&doc, out.as_ref())?;
            Ok(EXIT_OK)
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn need_l(l: Option<usize>) -> Result<usize> {
    l.ok_or_else(|| Error::InvalidArgument("--l is required for this construction".into()))
}

fn read_input(path: &PathBuf, manifest: &mut RunManifest) -> Result<Value> {
    let bytes = fs::read(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    manifest.add_input(&path.display().to_string(), &bytes);
    serde_json::from_slice(&bytes).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Reads a family file, ignoring an embedded `manifest` object.
fn read_family(path: &PathBuf, manifest: &mut RunManifest) -> Result<Family> {
    let mut doc = read_input(path, manifest)?;
    if let Value::Object(map) = &mut doc {
        map.remove("manifest");
    }
    let json: FamilyJson =
        serde_json::from_value(doc).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Family::try_from(json)
}

fn cmd_check(path: &PathBuf, l: usize, k: usize, echo: Vec<String>, io: &mut Io) -> Result<i32> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let mut manifest = RunManifest::new("check", echo);
    let fam = read_family(path, &mut manifest)?;
    let outcome = is_l_trace_k_sperner(&fam, l, k)?;
    let doc = json!({
        "manifest": to_value(&manifest),
        "n": fam.n(),
        "size": fam.len(),
        "l": l,
        "k": k,
        "holds": outcome.holds,
        "violation": to_value(&outcome.violation),
    });
    io.emit(&doc, None)?;
    Ok(if outcome.holds { EXIT_OK } else { EXIT_FAILS })
}

fn cmd_check_certificate(path: &PathBuf, echo: Vec<String>, io: &mut Io) -> Result<i32> {
    let mut manifest = RunManifest::new("check", echo);
    let mut doc = read_input(path, &mut manifest)?;
    if let Some(inner) = doc.get_mut("certificate") {
        doc = inner.take();
    }
    let cert: SearchCertificate =
        serde_json::from_value(doc).map_err(|e| Error::Parse(format!("certificate: {e}")))?;
    cert.config.validate()?;
    let results = cert.recheck()?;
    let checks: Vec<Check> = results
        .iter()
        .map(|&(i, ok)| Check::new(format!("witness_{i}"), ok, Value::Null))
        .collect();
    let holds = !checks.is_empty() && checks.iter().all(|c| c.holds);
    let out = json!({
        "manifest": to_value(&manifest),
        "value": cert.value,
        "exhaustive": cert.exhaustive,
        "checks": to_value(&checks),
        "holds": holds,
    });
    io.emit(&out, None)?;
    Ok(if holds { EXIT_OK } else { EXIT_FAILS })
}

fn census_doc(c: &CensusResult) -> Value {
    json!({
        "counts": c.counts.iter().map(|(j, v)| (j.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        "c_minus": c.c_minus,
        "c": c.c,
        "c_plus": c.c_plus,
        "beyond_k": c.beyond_k(),
        "total": c.total(),
    })
}

fn cmd_census(
    path: &PathBuf,
    k: usize,
    engine: Engine,
    csv: bool,
    echo: Vec<String>,
    io: &mut Io,
) -> Result<i32> {
    let mut manifest = RunManifest::new("census", echo);
    let fam = read_family(path, &mut manifest)?;
    let (result, agree) = match engine {
        Engine::Direct => (census_direct(&fam, k)?, None),
        Engine::Ie => (census_ie(&fam, k)?, None),
        Engine::Both => {
            let d = census_direct(&fam, k)?;
            let ie = census_ie(&fam, k)?;
            let same = d == ie;
            if !same {
                let doc = json!({
                    "manifest": to_value(&manifest),
                    "engines_agree": false,
                    "direct": census_doc(&d),
                    "ie": census_doc(&ie),
                });
                io.emit(&doc, None)?;
                return Ok(EXIT_FAILS);
            }
            (d, Some(true))
        }
    };
    if csv {
        let mut text = format!("# {}\nj,count\n", serde_json::to_string(&manifest).expect("json"));
        for (j, c) in &result.counts {
            text.push_str(&format!("{j},{c}\n"));
        }
        io.out
            .write_all(text.as_bytes())
            .map_err(|e| Error::InvalidArgument(format!("stdout: {e}")))?;
        return Ok(EXIT_OK);
    }
    let mut doc = census_doc(&result);
    doc["manifest"] = to_value(&manifest);
    doc["n"] = json!(fam.n());
    doc["k"] = json!(k);
    doc["engine"] = json!(format!("{engine:?}").to_lowercase());
    if let Some(a) = agree {
        doc["engines_agree"] = json!(a);
    }
    io.emit(&doc, None)?;
    Ok(EXIT_OK)
}

fn cmd_verify(path: &PathBuf, k: usize, which: Which, echo: Vec<String>, io: &mut Io) -> Result<i32> {
    let mut manifest = RunManifest::new("verify", echo);
    let fam = read_family(path, &mut manifest)?;
    let mut sections = serde_json::Map::new();
    let mut checks: Vec<Check> = Vec::new();
    let mut skipped = serde_json::Map::new();
    let selected: Vec<Which> = match which {
        Which::All => vec![Which::Claims, Which::Sstar, Which::Lemma21, Which::Cor26],
        w => vec![w],
    };
    for w in selected {
        let name = format!("{w:?}").to_lowercase();
        let res: Result<(Value, Vec<Check>)> = match w {
            Which::Claims => verify_claims(&fam, k).map(|r| (to_value(&r), r.checks())),
            Which::Sstar => s_star(&fam, k).map(|r| (to_value(&r), r.checks())),
            Which::Lemma21 => verify_lemma_21(&fam, k).map(|r| (to_value(&r), r.checks())),
            Which::Cor26 => verify_corollary_26(&fam, k).map(|r| (to_value(&r), r.checks())),
            Which::All => unreachable!(),
        };
        match res {
            Ok((section, cs)) => {
                sections.insert(name, section);
                checks.extend(cs);
            }
            // Under `all`, a verifier whose hypotheses do not apply is skipped.
            Err(e) if which == Which::All => {
                skipped.insert(name, json!(e.to_string()));
            }
            Err(e) => return Err(e),
        }
    }
    let holds = checks.iter().all(|c| c.holds);
    let doc = json!({
        "manifest": to_value(&manifest),
        "n": fam.n(),
        "k": k,
        "holds": holds,
        "checks": to_value(&checks),
        "reports": Value::Object(sections),
        "skipped": Value::Object(skipped),
    });
    io.emit(&doc, None)?;
    Ok(if holds { EXIT_OK } else { EXIT_FAILS })
}
