use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use dtab_core::bounds::{empirical_nc, ClassDescriptor, Family};
use dtab_core::lines::{build_line_table, parse_lines};
use dtab_core::poly::{build_poly_table, constant_columns, parse_polys, shatter_system};
use dtab_core::reducts::{enumerate_reducts, min_reduct};
use dtab_core::shattering::shattering_dimension;
use dtab_core::{run_suite, AttributeSet, DecisionMode, DecisionTable, SuiteConfig};

#[derive(Parser)]
#[command(
    name = "dtab",
    version,
    about = "Decision table analysis and bound checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print N, cl, dim, R(T) with a minimum reduct, and I(T) with a witness.
    Analyze {
        file: PathBuf,
        /// Also list all reducts, up to this many.
        #[arg(long, value_name = "N")]
        all_reducts: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write a generated table in .dtab format.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Run a verification suite and write a JSON report.
    Verify {
        config: PathBuf,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Empirical growth function N_C(n') for n' = 1..n.
    Nc {
        #[arg(long, value_enum)]
        family: NcFamily,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Extra instance whose projections count towards the maximum.
        #[arg(long, value_name = "FILE")]
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    /// Lines from a `.lines` file (`name a b c` per line).
    Lines {
        spec: PathBuf,
        #[command(flatten)]
        out: GenArgs,
    },
    /// Univariate polynomials from a `.poly` file (`name c0 c1 ...`).
    Polys {
        spec: PathBuf,
        #[command(flatten)]
        out: GenArgs,
    },
    /// The complete boolean table on n columns.
    Cube {
        n: usize,
        #[command(flatten)]
        out: GenArgs,
    },
    /// Sign table of the p-polynomial system with I(T) = p.
    Shatter {
        p: usize,
        #[command(flatten)]
        out: GenArgs,
    },
}

#[derive(Args)]
struct GenArgs {
    /// distinct | constant[:d] | random:<c> | file:<path>
    #[arg(long, default_value = "distinct")]
    decisions: String,
    /// Required for random decisions.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum NcFamily {
    Lines,
    Cube,
    Polys,
    Custom,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn names(table: &DecisionTable, set: &AttributeSet) -> Vec<String> {
    set.indices()
        .iter()
        .map(|&i| table.attributes()[i].clone())
        .collect()
}

fn analyze(file: &Path, all_reducts: Option<usize>, format: Format) -> Result<()> {
    let table =
        DecisionTable::parse_dtab(&read(file)?).with_context(|| format!("{}", file.display()))?;
    let reduct = min_reduct(&table);
    let shatter = shattering_dimension(&table);
    let all = all_reducts
        .map(|cap| enumerate_reducts(&table, cap))
        .transpose()?;
    let stats = table.stats();
    match format {
        Format::Text => {
            println!(
                "N={} cl={} dim={} R={} I={}",
                stats.rows, stats.classes, stats.dim, reduct.cardinality, shatter.dimension
            );
            println!("reduct={}", names(&table, &reduct.reduct).join(","));
            println!(
                "witness_columns={}",
                names(&table, &shatter.columns).join(",")
            );
            println!("witness={}", shatter.witness.display(table.alphabet()));
            if let Some(all) = all {
                println!("reducts={} truncated={}", all.reducts.len(), all.truncated);
                for (i, r) in all.reducts.iter().enumerate() {
                    println!("reduct_{}={}", i + 1, names(&table, r).join(","));
                }
                if all.truncated {
                    println!("note=reduct list truncated at the cap");
                }
            }
        }
        Format::Json => {
            let alphabet = table.alphabet();
            let mut out = json!({
                "rows": stats.rows,
                "classes": stats.classes,
                "dim": stats.dim,
                "reduct_cardinality": reduct.cardinality,
                "reduct": names(&table, &reduct.reduct),
                "shattering_dimension": shatter.dimension,
                "witness_columns": names(&table, &shatter.columns),
                "witness": shatter
                    .witness
                    .pairs
                    .iter()
                    .map(|&(a, b)| [alphabet.symbol(a), alphabet.symbol(b)])
                    .collect::<Vec<_>>(),
            });
            if let Some(all) = all {
                out["all_reducts"] = json!({
                    "reducts": all.reducts.iter().map(|r| names(&table, r)).collect::<Vec<_>>(),
                    "truncated": all.truncated,
                });
            }
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
    }
    Ok(())
}

fn decision_mode(token: &str, seed: Option<u64>) -> Result<(DecisionMode, u64)> {
    let mode = match token.strip_prefix("file:") {
        Some(path) => {
            let text = read(Path::new(path))?;
            let ds = text
                .split_whitespace()
                .map(|t| {
                    t.parse::<u64>()
                        .with_context(|| format!("{path}: bad decision `{t}`"))
                })
                .collect::<Result<Vec<_>>>()?;
            DecisionMode::Explicit(ds)
        }
        None => token.parse::<DecisionMode>()?,
    };
    if mode.is_randomized() && seed.is_none() {
        bail!("--seed is required with --decisions {token}");
    }
    Ok((mode, seed.unwrap_or(0)))
}

fn gen(family: &GenFamily) -> Result<()> {
    let (table, out) = match family {
        GenFamily::Lines { spec, out } => {
            let lines = parse_lines(&read(spec)?).with_context(|| spec.display().to_string())?;
            let (mode, seed) = decision_mode(&out.decisions, out.seed)?;
            (build_line_table(&lines, &mode, seed)?, out)
        }
        GenFamily::Polys { spec, out } => {
            let polys = parse_polys(&read(spec)?).with_context(|| spec.display().to_string())?;
            let constant: Vec<&str> = constant_columns(&polys)
                .into_iter()
                .map(|i| polys[i].name.as_str())
                .collect();
            if !constant.is_empty() {
                eprintln!("note: constant columns: {}", constant.join(","));
            }
            let (mode, seed) = decision_mode(&out.decisions, out.seed)?;
            (build_poly_table(&polys, &mode, seed)?, out)
        }
        GenFamily::Cube { n, out } => {
            let (mode, seed) = decision_mode(&out.decisions, out.seed)?;
            let cap = dtab_core::bounds::CUBE_GROWTH_CAP;
            if *n > cap {
                bail!("cube size {n} exceeds the cap of {cap}");
            }
            (DecisionTable::complete_cube(*n, &mode, seed)?, out)
        }
        GenFamily::Shatter { p, out } => {
            let (mode, seed) = decision_mode(&out.decisions, out.seed)?;
            (build_poly_table(&shatter_system(*p)?, &mode, seed)?, out)
        }
    };
    let text = table.to_dtab();
    match &out.output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn verify(config: &Path, output: Option<&Path>) -> Result<bool> {
    let cfg =
        SuiteConfig::from_json(&read(config)?).with_context(|| format!("{}", config.display()))?;
    let base = config.parent().unwrap_or(Path::new("."));
    let report = run_suite(&cfg, base)?;
    if let Some(path) = output {
        fs::write(path, report.to_json() + "\n")
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    print!("{}", report.summary());
    let tally = report.tally();
    let (pass, skip, fail) = tally.values().fold((0, 0, 0), |acc, t| {
        (acc.0 + t.pass, acc.1 + t.skip, acc.2 + t.fail)
    });
    println!("total pass={pass} skip={skip} fail={fail}");
    Ok(report.all_hold())
}

fn nc(
    family: NcFamily,
    n: usize,
    budget: usize,
    seed: u64,
    spec: Option<&Path>,
    max_degree: usize,
) -> Result<()> {
    let mut extra = Vec::new();
    let class = match family {
        NcFamily::Lines => {
            if let Some(spec) = spec {
                let lines = parse_lines(&read(spec)?)?;
                extra.push(build_line_table(&lines, &DecisionMode::Constant(0), 0)?);
            }
            ClassDescriptor::lines()
        }
        NcFamily::Polys => {
            if let Some(spec) = spec {
                let polys = parse_polys(&read(spec)?)?;
                extra.push(build_poly_table(&polys, &DecisionMode::Constant(0), 0)?);
            }
            ClassDescriptor::polys(max_degree)
        }
        NcFamily::Cube => {
            if spec.is_some() {
                bail!("--spec is not used with the cube family");
            }
            ClassDescriptor::cube()
        }
        NcFamily::Custom => {
            let Some(spec) = spec else {
                bail!("the custom family needs --spec <table.dtab>");
            };
            let table = DecisionTable::parse_dtab(&read(spec)?)?;
            let k = table.k();
            extra.push(table);
            ClassDescriptor::new(
                Family::Custom {
                    name: spec.display().to_string(),
                },
                k,
                dtab_core::ClassDimension::Unbounded,
                "tables from file",
            )?
        }
    };
    let points = empirical_nc(&class, n, budget, seed, &extra)?;
    let exact = matches!(family, NcFamily::Lines);
    println!(
        "{}",
        if exact {
            "n max_rows exact"
        } else {
            "n max_rows"
        }
    );
    for p in points {
        match (exact, p.exact) {
            (true, Some(e)) => println!("{} {} {}", p.dim, p.max_rows, e),
            _ => println!("{} {}", p.dim, p.max_rows),
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze {
            file,
            all_reducts,
            format,
        } => analyze(&file, all_reducts, format)?,
        Command::Gen { family } => gen(&family)?,
        Command::Verify { config, output } => {
            if !verify(&config, output.as_deref())? {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Nc {
            family,
            n,
            budget,
            seed,
            spec,
            max_degree,
        } => nc(family, n, budget, seed, spec.as_deref(), max_degree)?,
    }
    Ok(ExitCode::SUCCESS)
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
