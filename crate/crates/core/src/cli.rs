//! Command-line front end.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::codes::{self, CodeFamily, FamilyKind};
use crate::controls;
use crate::export::{self, Format};
use crate::lattice::build_octaplex;
use crate::logicals;
use crate::metachecks;
use crate::report::{self, family_name, parse_family, parse_sections, ReportOptions, VerificationReport};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "octaplex", version, about = "Build and verify octaplex tessellation codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the verification suite for one family and print or write the report.
    Report(ReportArgs),
    /// Write check matrices in alist or MatrixMarket form.
    Export(ExportArgs),
    /// Fast invariant suite over every family at L=2.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, default_value = "octaplex", value_parser = ["octaplex", "octaplex-bounded", "2d", "3d"])]
    pub family: String,
    #[arg(long = "L", short = 'L', default_value_t = 2)]
    pub l: usize,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[command(flatten)]
    pub common: Common,
    /// Write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print JSON instead of the text summary.
    #[arg(long)]
    pub json: bool,
    /// Comma-separated subset: lattice,codes,transversal,distance,metachecks,phase,controls.
    #[arg(long)]
    pub sections: Option<String>,
    /// Include wall-clock seconds per section in the JSON.
    #[arg(long)]
    pub timings: bool,
    /// Skip the exhaustive weight-2 distance search.
    #[arg(long)]
    pub no_exhaustive: bool,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated selectors: hx0..hx3, hz0..hz3, m0, m1, logicals, tanner. Defaults to all.
    #[arg(long)]
    pub which: Option<String>,
    #[arg(long, default_value = "alist", value_parser = ["alist", "mtx"])]
    pub format: String,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub timings: bool,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::LatticeTooSmall(_) | Error::OddLattice(_) | Error::SearchTooLarge(_) => EXIT_USAGE,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_FAIL,
    }
}

fn init_threads(threads: Option<usize>) -> Result<()> {
    if let Some(n) = threads {
        if n == 0 {
            return Err(Error::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Usage(format!("thread pool: {e}")))?;
    }
    Ok(())
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Report(a) => cmd_report(&a),
        Command::Export(a) => cmd_export(&a),
        Command::Selftest(a) => cmd_selftest(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn cmd_report(a: &ReportArgs) -> Result<i32> {
    init_threads(a.common.threads)?;
    let kind = parse_family(&a.common.family)?;
    let opts = ReportOptions {
        sections: a.sections.as_deref().map(parse_sections).transpose()?,
        timings: a.timings,
        exhaustive: !a.no_exhaustive,
        seed: controls::seed_from_env(),
    };
    let rep = report::build_report(kind, a.common.l, &opts)?;
    emit(&rep, a.json, a.out.as_deref())?;
    Ok(if rep.pass() { EXIT_OK } else { EXIT_FAIL })
}

fn emit(rep: &VerificationReport, json: bool, out: Option<&Path>) -> Result<()> {
    let text = rep.to_json()?;
    if let Some(path) = out {
        fs::write(path, &text)?;
    }
    if json {
        print!("{text}");
    } else {
        print!("{}", rep.summary());
    }
    Ok(())
}

/// Builds the family named on the command line.
fn family_for(kind: FamilyKind, l: usize) -> Result<CodeFamily> {
    report::validate(kind, l)?;
    match kind {
        FamilyKind::Periodic => codes::build_family(&build_octaplex(l)?),
        FamilyKind::Bounded => Ok(codes::build_bounded_family(l)?.family),
        FamilyKind::TwoD => codes::build_2d_pair(l),
        FamilyKind::ThreeD => codes::build_3d_triple(l),
    }
}

pub fn cmd_export(a: &ExportArgs) -> Result<i32> {
    init_threads(a.common.threads)?;
    let kind = parse_family(&a.common.family)?;
    let format: Format = a.format.parse()?;
    let family = family_for(kind, a.common.l)?;
    let nb = family.blocks.len();
    let mut all: Vec<String> = (0..nb).flat_map(|b| [format!("hx{b}"), format!("hz{b}")]).collect();
    if kind == FamilyKind::Periodic {
        all.extend(["m0", "m1", "logicals", "tanner"].map(String::from));
    }
    let which: Vec<String> = match &a.which {
        Some(csv) => csv.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
        None => all.clone(),
    };
    if let Some(bad) = which.iter().find(|w| !all.contains(w)) {
        return Err(Error::Usage(format!("unknown selector {bad:?} for family {}", family_name(kind))));
    }
    fs::create_dir_all(&a.out)?;
    let fam = family_name(kind);
    let needs_complex = which.iter().any(|w| w == "m0" || w == "m1" || w == "tanner" || w == "logicals");
    let ladder = if needs_complex {
        let cx = build_octaplex(a.common.l)?;
        Some(metachecks::build_ladder(&cx, &family.blocks[0])?)
    } else {
        None
    };
    for w in &which {
        let (name, body) = match w.as_str() {
            "m0" | "m1" => {
                let lad = ladder.as_ref().expect("built for metachecks");
                let m = if w == "m0" { &lad.m0 } else { &lad.m1 };
                (format!("{fam}_{w}.{}", format.extension()), export::render(m, format))
            }
            "tanner" => {
                let lad = ladder.as_ref().expect("built for metachecks");
                (format!("{fam}_tanner.json"), serde_json::to_string_pretty(&export::tanner_graph(lad))? + "\n")
            }
            "logicals" => {
                let basis = logicals::build_logicals(&family)?;
                let mut out = BTreeMap::new();
                for (b, blk) in family.blocks.iter().enumerate() {
                    let coords = |v: &crate::binalg::BitVector| -> Vec<[u32; 4]> {
                        v.ones_iter().map(|q| family.coords[q].0).collect()
                    };
                    let mut per = BTreeMap::new();
                    for (j, d) in logicals::DIRECTIONS.iter().enumerate() {
                        per.insert(format!("X_{d}"), coords(&basis.xbar[b][j]));
                        per.insert(format!("Z_{d}"), coords(&basis.zbar[b][j]));
                    }
                    out.insert(blk.label.clone(), per);
                }
                let doc = json!({ "scale": "coordinates multiplied by 4", "L": a.common.l, "blocks": out });
                (format!("{fam}_logicals.json"), serde_json::to_string_pretty(&doc)? + "\n")
            }
            sel => {
                let (kind_str, idx) = sel.split_at(2);
                let b: usize = idx.parse().map_err(|_| Error::Usage(format!("bad selector {sel:?}")))?;
                let blk = &family.blocks[b];
                let m = if kind_str == "hx" { &blk.hx } else { &blk.hz };
                (format!("{fam}_{}_{kind_str}.{}", blk.label, format.extension()), export::render(m, format))
            }
        };
        let path = a.out.join(&name);
        fs::write(&path, body)?;
        println!("{}", path.display());
    }
    Ok(EXIT_OK)
}

pub fn cmd_selftest(a: &SelftestArgs) -> Result<i32> {
    init_threads(a.threads)?;
    let seed = controls::seed_from_env();
    if a.inject_fault {
        let cx = build_octaplex(2)?;
        let outcome = controls::corrupt_complex(&cx, &mut controls::rng(seed));
        println!("injected fault: {}", outcome.perturbation);
        for w in &outcome.witnesses {
            println!("witness: {w}");
        }
        return Ok(if outcome.detected() { EXIT_FAIL } else { EXIT_OK });
    }
    let opts = ReportOptions { sections: None, timings: a.timings, exhaustive: false, seed };
    let mut reports = BTreeMap::new();
    let mut ok = true;
    for kind in [FamilyKind::Periodic, FamilyKind::Bounded, FamilyKind::TwoD, FamilyKind::ThreeD] {
        let rep = report::build_report(kind, 2, &opts)?;
        ok &= rep.invariants_pass();
        if !a.json {
            print!("{}", rep.summary());
        }
        reports.insert(family_name(kind).to_string(), rep);
    }
    if a.json {
        print!("{}", serde_json::to_string_pretty(&reports)? + "\n");
    } else {
        println!("selftest invariants: {}", if ok { "pass" } else { "FAIL" });
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAIL })
}
