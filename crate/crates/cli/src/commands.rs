use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use zcp::construct::{theorem1_pair, ConstructError, ParamsFile, Permutation, Theorem1Params};
use zcp::corr::{aacs_profile, AacsProfile};
use zcp::verify::{
    comparison_table, exhaustive_search_with_progress, ratio_table, MagnitudeKey, SearchOptions, ZcpReport,
};
use zcp::SequencePair;

use crate::{Format, GenerateArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    ClaimsHold,
    ClaimFailed,
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::ClaimsHold
        } else {
            Outcome::ClaimFailed
        }
    }
}

#[derive(Debug, Serialize)]
struct ParamsEcho {
    m: usize,
    q: u32,
    pi: Vec<usize>,
    e: Vec<u32>,
    f: Vec<u32>,
    experimental_m3: bool,
}

impl From<&Theorem1Params> for ParamsEcho {
    fn from(p: &Theorem1Params) -> Self {
        Self {
            m: p.m(),
            q: p.q(),
            pi: p.pi().image().to_vec(),
            e: p.e().to_vec(),
            f: p.f_off().to_vec(),
            experimental_m3: p.is_experimental(),
        }
    }
}

#[derive(Serialize)]
struct ReportWithInput<'a, P: Serialize> {
    input: P,
    #[serde(flatten)]
    report: &'a ZcpReport,
}

fn parse_list<T: std::str::FromStr>(name: &str, text: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| anyhow::anyhow!("--{name}: {:?} is not a valid entry", t.trim()))
        })
        .collect()
}

fn guard_message(err: ConstructError) -> anyhow::Error {
    match err {
        ConstructError::TooFewVariables { m: 3, min: 4 } => anyhow::anyhow!(
            "m must be >= 4 for the truncated construction, got 3 (use --experimental-m3 for the degenerate object)"
        ),
        other => other.into(),
    }
}

pub(crate) fn params_from_args(args: &GenerateArgs) -> Result<Theorem1Params> {
    let file = match &args.params {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let mut pf: ParamsFile =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            pf.experimental_m3 |= args.experimental_m3;
            pf
        }
        None => {
            let Some(m) = args.m else {
                bail!("--m is required (or pass --params)")
            };
            let Some(pi) = &args.pi else {
                bail!("--pi is required (or pass --params)")
            };
            ParamsFile {
                m,
                q: args.q,
                pi: parse_list("pi", pi)?,
                e: args.e.as_deref().map(|s| parse_list("e", s)).transpose()?,
                f: args.f_off.as_deref().map(|s| parse_list("f", s)).transpose()?,
                experimental_m3: args.experimental_m3,
            }
        }
    };
    // validate the permutation first so its message wins over offset-length errors
    Permutation::new(file.pi.clone()).map_err(guard_message)?;
    Theorem1Params::try_from(file).map_err(guard_message)
}

pub(crate) fn render_report(report: &ZcpReport) -> String {
    let mut s = String::new();
    let pass = |b: bool| if b { "PASS" } else { "FAIL" };
    let _ = writeln!(s, "length:      {}", report.length);
    if let Some(c) = report.claimed_zcz {
        let _ = writeln!(s, "claimed ZCZ: {c}");
    }
    let _ = writeln!(
        s,
        "actual ZCZ:  {}{}",
        report.actual_zcz,
        if report.is_gcp { " (GCP)" } else { "" }
    );
    let label = match report.magnitude_key {
        MagnitudeKey::Abs => "|AACS|",
        MagnitudeKey::AbsSquared => "|AACS|^2",
    };
    let hist: Vec<String> = report
        .out_of_zone_magnitudes
        .iter()
        .map(|(k, n)| format!("{k}: {n}"))
        .collect();
    let _ = writeln!(s, "out-of-zone {label}: {{{}}}", hist.join(", "));
    if report.claimed_zcz.is_some() {
        let _ = writeln!(s, "claim:       {}", pass(report.passes_claim));
    }
    let corollary = if report.corollary1_applicable {
        pass(report.passes_corollary1).to_string()
    } else {
        format!("{} (not asserted)", report.passes_corollary1)
    };
    let _ = writeln!(s, "magnitude 4 outside zone: {corollary}");
    s
}

pub(crate) fn write_artifacts(dir: &Path, pair: &SequencePair, profile: &AacsProfile, report_json: &str) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let write = |name: &str, body: &str| {
        let path = dir.join(name);
        fs::write(&path, body).with_context(|| format!("writing {}", path.display()))
    };
    write("pair.txt", &pair.to_string())?;
    write("profile.csv", &profile.to_csv())?;
    write("report.json", &format!("{report_json}\n"))
}

/// Builds, verifies and optionally writes out a truncated pair.
pub(crate) fn build_and_report(
    params: &Theorem1Params,
    out: Option<&Path>,
    format: Format,
) -> Result<(ZcpReport, SequencePair)> {
    let pair = theorem1_pair(params)?;
    let profile = aacs_profile(&pair);
    let report = ZcpReport::from_profile(&profile, params.claimed_zcz());
    let json = serde_json::to_string_pretty(&ReportWithInput {
        input: ParamsEcho::from(params),
        report: &report,
    })?;
    if let Some(dir) = out {
        write_artifacts(dir, &pair, &profile, &json)?;
    }
    match format {
        Format::Json => println!("{json}"),
        Format::Csv => print!("{}", profile.to_csv()),
        Format::Text => {
            println!("m={} q={} pi={}", params.m(), params.q(), params.pi());
            print!("{pair}");
            print!("{}", render_report(&report));
        }
    }
    Ok((report, pair))
}

pub fn generate(args: &GenerateArgs) -> Result<Outcome> {
    let params = params_from_args(args)?;
    let (report, _) = build_and_report(&params, args.out.as_deref(), args.format)?;
    Ok(Outcome::from_bool(report.all_claims_hold()))
}

fn read_pair(path: &Path) -> Result<SequencePair> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.parse().with_context(|| format!("parsing {}", path.display()))
}

pub fn verify(path: &Path, claimed: Option<usize>, format: Format) -> Result<Outcome> {
    #[derive(Serialize)]
    struct Input<'a> {
        pair_file: &'a Path,
    }
    let pair = read_pair(path)?;
    let profile = aacs_profile(&pair);
    let report = ZcpReport::from_profile(&profile, claimed);
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&ReportWithInput {
                input: Input { pair_file: path },
                report: &report,
            })?
        ),
        Format::Csv => print!("{}", profile.to_csv()),
        Format::Text => print!("{}", render_report(&report)),
    }
    Ok(Outcome::from_bool(report.all_claims_hold()))
}

pub fn correlate(path: &Path, out: Option<&Path>) -> Result<Outcome> {
    let pair = read_pair(path)?;
    let csv = aacs_profile(&pair).to_csv();
    match out {
        Some(file) => fs::write(file, csv).with_context(|| format!("writing {}", file.display()))?,
        None => io::stdout().write_all(csv.as_bytes())?,
    }
    Ok(Outcome::ClaimsHold)
}

pub fn search(n: usize, cap: usize, witnesses: usize, out: Option<&Path>) -> Result<Outcome> {
    let opts = SearchOptions {
        cap,
        witness_cap: witnesses,
    };
    let progress = |done: u64, total: u64| eprint!("\rsearching N={n}: {done}/{total} shards");
    let result = exhaustive_search_with_progress(n, &opts, &progress)?;
    eprintln!();
    let json = serde_json::to_string_pretty(&result)?;
    match out {
        Some(file) => fs::write(file, format!("{json}\n")).with_context(|| format!("writing {}", file.display()))?,
        None => println!("{json}"),
    }
    // outside the Golay lengths the widest zone is at most N - 2
    let bound_holds = result.golay_length || result.best_zcz + 2 <= n;
    Ok(Outcome::from_bool(bound_holds))
}

pub fn table(m_min: usize, m_max: usize, format: Format) -> Result<Outcome> {
    let rows = ratio_table(m_min, m_max)?;
    let comparison = comparison_table();
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Tables<'a> {
                ratios: &'a [zcp::verify::RatioRow],
                comparison: &'a [zcp::verify::ComparisonRow],
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&Tables {
                    ratios: &rows,
                    comparison,
                })?
            );
        }
        Format::Csv => {
            println!("m,length,zcz,ratio,deviation,closed_form_holds");
            for r in &rows {
                println!(
                    "{},{},{},{},{},{}",
                    r.m, r.length, r.zcz, r.ratio, r.deviation, r.closed_form_holds
                );
            }
            println!();
            println!("construction,method,direct,zcz_ratio");
            for c in comparison {
                println!("{},{},{},{}", c.construction, c.method, c.direct, c.zcz_ratio);
            }
        }
        Format::Text => {
            let mut cells = vec![["m", "N", "Z", "Z/N", "~Z/N", "3/4 - Z/N", "= 1/(2^m+4)"].map(String::from)];
            for r in &rows {
                cells.push([
                    r.m.to_string(),
                    r.length.to_string(),
                    r.zcz.to_string(),
                    r.ratio.to_string(),
                    format!("{:.9}", *r.ratio.numer() as f64 / *r.ratio.denom() as f64),
                    r.deviation.to_string(),
                    if r.closed_form_holds { "yes" } else { "NO" }.to_string(),
                ]);
            }
            print!("{}", align(&cells));
            println!();
            let mut cells = vec![["construction", "method", "direct", "ZCZ ratio"].map(String::from)];
            for c in comparison {
                cells.push([
                    c.construction.to_string(),
                    c.method.to_string(),
                    if c.direct { "direct" } else { "indirect" }.to_string(),
                    c.zcz_ratio.to_string(),
                ]);
            }
            print!("{}", align(&cells));
        }
    }
    Ok(Outcome::from_bool(rows.iter().all(|r| r.closed_form_holds)))
}

fn align<const K: usize>(rows: &[[String; K]]) -> String {
    let widths: Vec<usize> = (0..K)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}
