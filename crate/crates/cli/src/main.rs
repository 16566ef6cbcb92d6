//! `gelp`: classify binary cyclic codes, build and verify their general error
//! locators, decode words, and report locator density.

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gelp_core::catalog::{all_catalog, build, classify, Built, Classification, DataSource};
use gelp_core::code::{format_word, format_word_hex, parse_descriptor, parse_word};
use gelp_core::decode::{decode, exhaustive_equivalence, EquivalenceStats};
use gelp_core::density::{csv_row, density_report, sparsity_check, CSV_HEADER, DEFAULT_BUDGET};
use gelp_core::par::set_workers;
use gelp_core::synth::SyndromeTable;
use gelp_core::{CodeSpec, Execution};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gelp", version, about = "General error locator polynomials for binary cyclic codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads; 0 uses every core, 1 runs sequentially.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Directory holding n55_b.txt and n55_c.txt (embedded copies otherwise).
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,
    /// Monomial budget for density expansion.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Claimed error-correcting capability, checked by enumeration.
    #[arg(long, global = true)]
    t: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Family, matched hypotheses, complete defining set, k and t.
    Classify {
        #[arg(long)]
        code: String,
    },
    /// Builds a verified locator.
    Build {
        #[arg(long)]
        code: String,
        /// Also write the locator JSON to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Decodes one received word (0x-hex, or n binary digits c_0..c_{n-1}).
    Decode {
        #[arg(long)]
        code: String,
        #[arg(long)]
        word: String,
    },
    /// Decodes every correctable pattern and compares with the syndrome table.
    Verify(Target),
    /// Density and sparsity report.
    Density(Target),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Target {
    #[arg(long)]
    code: Option<String>,
    /// Every catalog code of length below 63.
    #[arg(long)]
    all_catalog: bool,
}

struct Ctx {
    exec: Execution,
    format: Format,
    data: DataSource,
    budget: usize,
    t: Option<u32>,
}

impl Ctx {
    fn spec(&self, code: &str) -> Result<CodeSpec> {
        let (n, set) = parse_descriptor(code)?;
        let spec = match self.t {
            Some(t) => CodeSpec::with_claimed_t(n, &set, t),
            None => CodeSpec::new(n, &set),
        };
        spec.with_context(|| format!("code {code}"))
    }

    fn build(&self, spec: &CodeSpec) -> Result<(SyndromeTable, Built)> {
        let table = SyndromeTable::build(spec, self.exec)?;
        let built = build(spec, &table, self.exec, &self.data)?;
        Ok((table, built))
    }

    fn targets(&self, target: &Target) -> Result<Vec<Result<CodeSpec, (String, String)>>> {
        if let Some(code) = &target.code {
            return Ok(vec![Ok(self.spec(code)?)]);
        }
        Ok(all_catalog()
            .into_iter()
            .map(|e| match e.invalid {
                Some(why) => Err((e.code, why)),
                None => e.spec().map_err(|err| (e.code.clone(), err.to_string())),
            })
            .collect())
    }
}

fn print_json(v: &Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn classification_text(c: &Classification) -> String {
    let mut s = format!(
        "{}  n={} k={} t={}\nfamily: {}\ncomplete defining set: {:?}\n",
        c.code, c.n, c.k, c.t, c.family, c.complete_set
    );
    for m in &c.matches {
        s.push_str(&format!("  match {}: {}\n", m.family, m.hypotheses));
    }
    for n in &c.notes {
        s.push_str(&format!("  note: {n}\n"));
    }
    s
}

fn cmd_classify(ctx: &Ctx, code: &str) -> Result<ExitCode> {
    let c = classify(&ctx.spec(code)?);
    match ctx.format {
        Format::Json => print_json(&serde_json::to_value(&c)?)?,
        Format::Text => print!("{}", classification_text(&c)),
        Format::Csv => bail!("classify has no csv output"),
    }
    Ok(ExitCode::SUCCESS)
}

fn built_json(b: &Built) -> Value {
    json!({
        "code": b.classification.code,
        "family": b.family,
        "recipe": b.recipe,
        "fallback": b.fallback,
        "verify": {
            "total": b.verify.total,
            "passed": b.verify.passed,
            "faults": b.verify.faults,
        },
        "notes": b.notes,
        "classification": b.classification,
        "locator": b.locator.to_json(),
    })
}

fn cmd_build(ctx: &Ctx, code: &str, emit: Option<&PathBuf>) -> Result<ExitCode> {
    let spec = ctx.spec(code)?;
    let (_, b) = ctx.build(&spec)?;
    if let Some(path) = emit {
        let text = serde_json::to_string_pretty(&b.locator.to_json())?;
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    match ctx.format {
        Format::Json => print_json(&built_json(&b))?,
        Format::Text => {
            println!("{}  family {}{}", spec.descriptor(), b.family, if b.fallback { " (synthesized)" } else { "" });
            println!("{}", b.locator);
            println!("verified on {}/{} syndromes", b.verify.passed, b.verify.total);
            for n in &b.notes {
                println!("note: {n}");
            }
        }
        Format::Csv => bail!("build has no csv output"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_decode(ctx: &Ctx, code: &str, word: &str) -> Result<ExitCode> {
    let spec = ctx.spec(code)?;
    let received = parse_word(word, spec.n()).with_context(|| format!("word for n = {}", spec.n()))?;
    let (_, b) = ctx.build(&spec)?;
    let r = decode(&spec, &b.locator, received)?;
    match ctx.format {
        Format::Json => print_json(&json!({
            "code": spec.descriptor(),
            "locator": b.locator.label,
            "received": format_word_hex(received),
            "corrected": format_word_hex(r.corrected_word),
            "corrected_bits": format_word(r.corrected_word, spec.n()),
            "result": r,
        }))?,
        Format::Text => {
            println!("status: {:?}", r.status);
            println!("positions: {:?}", r.positions);
            println!("corrected: {}", format_word(r.corrected_word, spec.n()));
            if let Some(reason) = &r.reason {
                println!("reason: {reason}");
            }
        }
        Format::Csv => bail!("decode has no csv output"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(ctx: &Ctx, target: &Target) -> Result<ExitCode> {
    let mut rows: Vec<Value> = Vec::new();
    let mut stats: Vec<(EquivalenceStats, String, bool)> = Vec::new();
    let mut all_ok = true;
    for spec in ctx.targets(target)? {
        let spec = match spec {
            Ok(s) => s,
            Err((code, why)) => {
                rows.push(json!({ "code": code, "skipped": why }));
                continue;
            }
        };
        let (table, b) = ctx.build(&spec)?;
        let s = exhaustive_equivalence(&spec, &b.locator, &table, ctx.exec)?;
        all_ok &= s.all_pass();
        rows.push(json!({ "family": b.family, "fallback": b.fallback, "stats": s }));
        stats.push((s, b.family.to_string(), b.fallback));
    }
    match ctx.format {
        Format::Json => print_json(&json!({ "all_pass": all_ok, "codes": rows }))?,
        Format::Text => {
            for (s, family, fallback) in &stats {
                println!(
                    "{:<4} {:<12} {:<20} {}/{}{}",
                    if s.all_pass() { "ok" } else { "FAIL" },
                    s.code,
                    family,
                    s.passed,
                    s.patterns,
                    if *fallback { "  synthesized" } else { "" }
                );
            }
            for r in rows.iter().filter(|r| r.get("skipped").is_some()) {
                println!("skip {} {}", r["code"].as_str().unwrap_or(""), r["skipped"].as_str().unwrap_or(""));
            }
            println!("{}", if all_ok { "all pass" } else { "failures present" });
        }
        Format::Csv => {
            println!("code,label,family,fallback,patterns,passed,failed");
            for (s, family, fallback) in &stats {
                println!(
                    "\"{}\",\"{}\",{family},{fallback},{},{},{}",
                    s.code, s.label, s.patterns, s.passed, s.failed
                );
            }
        }
    }
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_density(ctx: &Ctx, target: &Target) -> Result<ExitCode> {
    let mut rows = Vec::new();
    for spec in ctx.targets(target)? {
        let Ok(spec) = spec else { continue };
        let (_, b) = ctx.build(&spec)?;
        let report = density_report(&spec, &b.locator, ctx.budget);
        let verdict = sparsity_check(&spec, &report, 3);
        rows.push((report, verdict));
    }
    match ctx.format {
        Format::Json => {
            let v: Vec<Value> = rows.iter().map(|(r, v)| json!({ "report": r, "sparsity": v })).collect();
            print_json(&Value::Array(v))?;
        }
        Format::Csv => {
            println!("{CSV_HEADER}");
            for (r, v) in &rows {
                println!("{}", csv_row(r, v));
            }
        }
        Format::Text => {
            for (r, v) in &rows {
                println!(
                    "{:<12} {:<26} density<= {:>8}  n^3 = {:<7} {}",
                    r.code,
                    r.label,
                    r.functional_density_upper.map_or("-".into(), |d| d.to_string()),
                    v.bound,
                    match v.sparse {
                        Some(true) => "sparse",
                        Some(false) => "NOT sparse",
                        None => "no polynomial form",
                    }
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    set_workers(cli.jobs).map_err(anyhow::Error::msg)?;
    let ctx = Ctx {
        exec: if cli.jobs == 1 { Execution::Sequential } else { Execution::Parallel },
        format: cli.format,
        data: cli.data_dir.map(DataSource::from_dir).unwrap_or_default(),
        budget: cli.budget,
        t: cli.t,
    };
    match &cli.command {
        Command::Classify { code } => cmd_classify(&ctx, code),
        Command::Build { code, emit } => cmd_build(&ctx, code, emit.as_ref()),
        Command::Decode { code, word } => cmd_decode(&ctx, code, word),
        Command::Verify(t) => cmd_verify(&ctx, t),
        Command::Density(t) => cmd_density(&ctx, t),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
