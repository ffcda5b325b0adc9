//! Worked examples with their expected values embedded.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use zcp::construct::Theorem1Params;
use zcp::Gbf;

use crate::commands::{build_and_report, Outcome};
use crate::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    /// x0x1 + x1x2 over three variables, untruncated and trimmed by one
    Ex1,
    /// m = 6, pi = 2,0,1,3: length 34, ZCZ 25
    Ex2,
    /// m = 5, pi = 1,2,0: length 18, ZCZ at least 10
    Ex3,
}

const EX1_GBF: &str = "m=3 q=2\n1 * x0 x1\n1 * x1 x2\n";
const EX1_PSI: &str = "+++-++-+";
const EX1_PSI_1: &str = "++-++-";

struct Diff {
    ok: bool,
}

impl Diff {
    fn new() -> Self {
        println!("--- expected vs actual");
        Self { ok: true }
    }

    fn check(&mut self, what: &str, expected: &str, actual: &str, ok: bool) {
        let mark = if ok { "ok" } else { "MISMATCH" };
        println!("{what}: expected {expected}, got {actual}  [{mark}]");
        self.ok &= ok;
    }

    fn eq(&mut self, what: &str, expected: impl ToString, actual: impl ToString) {
        let (e, a) = (expected.to_string(), actual.to_string());
        let ok = e == a;
        self.check(what, &e, &a, ok);
    }

    fn outcome(self) -> Outcome {
        Outcome::from_bool(self.ok)
    }
}

pub fn run(name: ExampleName, out: Option<&Path>) -> Result<Outcome> {
    match name {
        ExampleName::Ex1 => ex1(out),
        ExampleName::Ex2 => {
            let params = Theorem1Params::new(6, 2, "2,0,1,3".parse()?)?;
            let (report, _) = build_and_report(&params, out, Format::Text)?;
            let mut diff = Diff::new();
            diff.eq("length", 34, report.length);
            diff.eq("ZCZ width", 25, report.actual_zcz);
            let keys: Vec<String> = report.out_of_zone_magnitudes.keys().map(u64::to_string).collect();
            let ok = report.out_of_zone_magnitudes.keys().all(|&k| k == 0 || k == 4);
            diff.check(
                "out-of-zone |AACS|",
                "subset of {0, 4}",
                &format!("{{{}}}", keys.join(", ")),
                ok,
            );
            Ok(diff.outcome())
        }
        ExampleName::Ex3 => {
            let params = Theorem1Params::new(5, 2, "1,2,0".parse()?)?;
            let (report, _) = build_and_report(&params, out, Format::Text)?;
            let mut diff = Diff::new();
            diff.eq("length", 18, report.length);
            let z = report.actual_zcz;
            diff.check("ZCZ width", ">= 10", &z.to_string(), z >= 10);
            Ok(diff.outcome())
        }
    }
}

fn ex1(out: Option<&Path>) -> Result<Outcome> {
    let f: Gbf = EX1_GBF.parse()?;
    let psi = f.to_sequence();
    let psi_1 = psi.truncate(1)?;
    println!("f = x0x1 + x1x2 (m=3, q=2)");
    println!("Psi(f)   = {psi}");
    println!("Psi_1(f) = {psi_1}");
    if let Some(dir) = out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let path = dir.join("ex1.txt");
        fs::write(&path, format!("{psi}\n{psi_1}\n")).with_context(|| format!("writing {}", path.display()))?;
    }
    let mut diff = Diff::new();
    diff.eq("Psi(f)", EX1_PSI, &psi);
    diff.eq("Psi_1(f)", EX1_PSI_1, &psi_1);
    Ok(diff.outcome())
}
