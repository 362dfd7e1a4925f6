mod range;
mod spec_file;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use frobtilt::catalog::{
    chi_closed, del_pezzo_spec, fano3_spec, h0_lower_bound, leading_sign, pn_spec, tilting_verdict,
};
use frobtilt::diffop::{compare_derivative_embeddings, exploratory_cases, InclusionReport};
use frobtilt::reproduce::{run_all, ReproReport};
use frobtilt::{chi_frob_end, chi_symbolic, Error, Family, FrobParams, QPolynomial, TiltingVerdict, VarietySpec, Verdict};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use spec_file::VarietySpecFile;

#[derive(Parser)]
#[command(name = "frobtilt", version, about = "Euler characteristics of End(F^e_* O_X) by exact GRR")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// chi(End F^e_* O_X) and the tilting verdict it implies.
    Chi {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
    /// chi as an exact polynomial in q = p^e.
    Symbolic {
        #[command(flatten)]
        source: Source,
    },
    /// Evaluate a family over a grid of parameters and (p, e).
    Scan(ScanArgs),
    /// Run the reproduction checks.
    Verify,
    /// Compare the natural and the splitting embedding of d/dt.
    DiffopDemo {
        #[arg(long, default_value_t = 2)]
        p: u64,
    },
    /// Print a built-in variety as a spec file.
    ExportSpec {
        #[command(flatten)]
        source: Source,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    #[value(name = "del_pezzo", alias = "del-pezzo")]
    DelPezzo,
    Fano3,
    Pn,
}

impl FamilyKind {
    fn param_name(self) -> &'static str {
        match self {
            FamilyKind::DelPezzo => "d",
            FamilyKind::Fano3 => "vol",
            FamilyKind::Pn => "n",
        }
    }

    fn label(self) -> &'static str {
        match self {
            FamilyKind::DelPezzo => "del_pezzo",
            FamilyKind::Fano3 => "fano3",
            FamilyKind::Pn => "pn",
        }
    }

    fn build(self, value: u32) -> Result<VarietySpec, Error> {
        match self {
            FamilyKind::DelPezzo => del_pezzo_spec(value),
            FamilyKind::Fano3 => fano3_spec(value),
            FamilyKind::Pn => pn_spec(value),
        }
    }
}

#[derive(Args)]
struct Source {
    /// Variety spec JSON file.
    #[arg(long, conflicts_with = "family")]
    spec: Option<PathBuf>,
    #[arg(long)]
    family: Option<FamilyKind>,
    /// del Pezzo degree K^2.
    #[arg(long)]
    d: Option<u32>,
    /// Anticanonical volume (-K)^3 of a Fano threefold.
    #[arg(long)]
    vol: Option<u32>,
    /// Dimension of projective space.
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    family: FamilyKind,
    /// Degrees, e.g. `1..9`.
    #[arg(long)]
    d: Option<String>,
    /// Volumes, e.g. `2..24:2`.
    #[arg(long)]
    vol: Option<String>,
    /// Dimensions, e.g. `1..4`.
    #[arg(long)]
    n: Option<String>,
    /// Primes, e.g. `2,3`.
    #[arg(long, default_value = "2")]
    p: String,
    /// Frobenius levels, e.g. `1..2`.
    #[arg(long, default_value = "1")]
    e: String,
}

enum Failure {
    Usage(String),
    Engine(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::MissingIntersection(_) | Error::NonIntegral(_) => 3,
        Error::Parse(_) | Error::InvalidParameter(_) | Error::Structure(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Verification) => ExitCode::from(1),
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Chi { source, p, e } => {
            let spec = load(source)?;
            let report = chi_report(&spec, FrobParams::new(*p, *e)?)?;
            Ok(if cli.json { to_json(&report) } else { report.text() })
        }
        Command::Symbolic { source } => {
            let spec = load(source)?;
            let poly = chi_symbolic(&spec)?;
            let report = SymbolicReport {
                name: spec.name().to_string(),
                display: poly.to_string(),
                leading_sign: leading_sign(&poly),
                polynomial: poly,
            };
            Ok(if cli.json {
                to_json(&report)
            } else {
                format!("{}\nchi(q) = {}\nleading sign: {}\n", report.name, report.display, report.leading_sign)
            })
        }
        Command::Scan(args) => {
            let rows = scan(args)?;
            Ok(if cli.json { to_json(&rows) } else { scan_table(args.family, &rows) })
        }
        Command::Verify => {
            let report = VerifyReport::run()?;
            let out = if cli.json { to_json(&report) } else { report.text() };
            if report.passed {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Verification)
            }
        }
        Command::DiffopDemo { p } => {
            let report = compare_derivative_embeddings(*p)?;
            Ok(if cli.json { to_json(&report) } else { diffop_text(&report) })
        }
        Command::ExportSpec { source } => {
            let spec = load(source)?;
            Ok(to_json(&VarietySpecFile::from_spec(&spec)))
        }
    }
}

fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("reports serialize");
    s.push('\n');
    s
}

fn load(source: &Source) -> Result<VarietySpec, Failure> {
    if let Some(path) = &source.spec {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        return Ok(VarietySpecFile::parse(&text)?.to_spec()?);
    }
    let kind = source
        .family
        .ok_or_else(|| usage("give either --spec <file> or --family"))?;
    let value = match kind {
        FamilyKind::DelPezzo => source.d,
        FamilyKind::Fano3 => source.vol,
        FamilyKind::Pn => source.n,
    }
    .ok_or_else(|| usage(format!("--family {} needs --{}", kind.label(), kind.param_name())))?;
    Ok(kind.build(value)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ChiReport {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    family: Option<Family>,
    p: u64,
    e: u32,
    q: u64,
    chi: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    closed_form: Option<String>,
    h0_reason: String,
    verdict: TiltingVerdict,
}

impl ChiReport {
    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}", self.name).unwrap();
        writeln!(s, "p = {}, e = {}, q = {}", self.p, self.e, self.q).unwrap();
        writeln!(s, "chi = {}", self.chi).unwrap();
        if let Some(c) = &self.closed_form {
            writeln!(s, "closed form = {c}").unwrap();
        }
        writeln!(s, "h0 >= {} ({})", self.verdict.h0_lower_bound, self.h0_reason).unwrap();
        writeln!(s, "verdict: {}", self.verdict.verdict).unwrap();
        writeln!(s, "{}", self.verdict.rationale).unwrap();
        s
    }
}

fn chi_report(spec: &VarietySpec, fp: FrobParams) -> Result<ChiReport, Error> {
    let chi = chi_frob_end(spec, fp)?;
    let (bound, reason) = h0_lower_bound(spec, fp);
    let closed_form = spec
        .family()
        .and_then(|f| chi_closed(f, fp))
        .transpose()?
        .map(|c| c.to_string());
    Ok(ChiReport {
        name: spec.name().to_string(),
        family: spec.family(),
        p: fp.p(),
        e: fp.e(),
        q: fp.q(),
        chi: chi.to_string(),
        closed_form,
        h0_reason: reason.to_string(),
        verdict: tilting_verdict(&chi, bound)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct SymbolicReport {
    name: String,
    polynomial: QPolynomial,
    display: String,
    leading_sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ReportRow {
    family: String,
    param: String,
    value: u32,
    p: u64,
    e: u32,
    q: u64,
    chi: String,
    #[serde(default)]
    closed_form: Option<String>,
    /// `None` when the family has no closed form.
    #[serde(default, rename = "match")]
    matches: Option<bool>,
    leading_sign: i8,
    verdict: Verdict,
}

fn scan(args: &ScanArgs) -> Result<Vec<ReportRow>, Failure> {
    let kind = args.family;
    let raw = match kind {
        FamilyKind::DelPezzo => &args.d,
        FamilyKind::Fano3 => &args.vol,
        FamilyKind::Pn => &args.n,
    }
    .as_deref()
    .ok_or_else(|| usage(format!("scan over {} needs --{}", kind.label(), kind.param_name())))?;
    let values = range::parse_list(raw).map_err(usage)?;
    let primes = range::parse_list(&args.p).map_err(usage)?;
    let levels = range::parse_list(&args.e).map_err(usage)?;
    let values: Vec<u32> = values
        .into_iter()
        .map(|v| u32::try_from(v).map_err(|_| usage(format!("parameter {v} too large"))))
        .collect::<Result<_, _>>()?;
    let mut grid = Vec::new();
    for p in &primes {
        for e in &levels {
            let e = u32::try_from(*e).map_err(|_| usage(format!("level {e} too large")))?;
            grid.push(FrobParams::new(*p, e)?);
        }
    }

    let per_value: Vec<Vec<ReportRow>> = values
        .par_iter()
        .map(|&value| {
            let spec = kind.build(value)?;
            let sign = leading_sign(&chi_symbolic(&spec)?);
            grid.iter()
                .map(|&fp| {
                    let r = chi_report(&spec, fp)?;
                    Ok(ReportRow {
                        family: kind.label().to_string(),
                        param: kind.param_name().to_string(),
                        value,
                        p: fp.p(),
                        e: fp.e(),
                        q: fp.q(),
                        matches: r.closed_form.as_ref().map(|c| *c == r.chi),
                        chi: r.chi,
                        closed_form: r.closed_form,
                        leading_sign: sign,
                        verdict: r.verdict.verdict,
                    })
                })
                .collect()
        })
        .collect::<Result<_, Error>>()?;
    let mut rows: Vec<ReportRow> = per_value.into_iter().flatten().collect();
    rows.sort_by_key(|r| (r.value, r.p, r.e));
    Ok(rows)
}

fn scan_table(kind: FamilyKind, rows: &[ReportRow]) -> String {
    let header = [kind.param_name(), "p", "e", "q", "chi", "closed form", "match", "lead", "verdict"];
    let body: Vec<[String; 9]> = rows
        .iter()
        .map(|r| {
            [
                r.value.to_string(),
                r.p.to_string(),
                r.e.to_string(),
                r.q.to_string(),
                r.chi.clone(),
                r.closed_form.clone().unwrap_or_else(|| "-".into()),
                r.matches.map_or("-".into(), |m| if m { "yes" } else { "NO" }.to_string()),
                match r.leading_sign {
                    s if s < 0 => "-".to_string(),
                    0 => "0".to_string(),
                    _ => "+".to_string(),
                },
                r.verdict.to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut s = String::new();
    let mut line = |cells: &[&str]| {
        let padded: Vec<String> = cells.iter().zip(widths).map(|(c, w)| format!("{c:>w$}")).collect();
        writeln!(s, "{}", padded.join("  ").trim_end()).unwrap();
    };
    line(&header);
    for row in &body {
        line(&row.each_ref().map(String::as_str));
    }
    s
}

#[derive(Serialize)]
struct VerifyReport {
    passed: bool,
    reproduction: ReproReport,
    diffop: Vec<InclusionReport>,
    exploratory: Vec<frobtilt::diffop::ExploratoryCase>,
}

impl VerifyReport {
    fn run() -> Result<Self, Error> {
        let reproduction = run_all();
        let diffop = [2, 3, 5]
            .into_iter()
            .map(compare_derivative_embeddings)
            .collect::<Result<Vec<_>, _>>()?;
        let exploratory = exploratory_cases()?;
        Ok(VerifyReport {
            passed: reproduction.passed() && diffop.iter().all(InclusionReport::passed),
            reproduction,
            diffop,
            exploratory,
        })
    }

    fn text(&self) -> String {
        let mut s = String::new();
        let mark = |ok: bool| if ok { "PASS" } else { "FAIL" };
        for item in &self.reproduction.items {
            writeln!(s, "[{}] {}: {} ({})", mark(item.passed), item.id, item.citation, item.detail).unwrap();
        }
        for report in &self.diffop {
            for c in &report.checks {
                writeln!(s, "[{}] diffop p={}: {} ({})", mark(c.passed), report.p, c.name, c.detail).unwrap();
            }
        }
        for case in &self.exploratory {
            let outcome = if case.i_equals_j { "i = j" } else { "i != j" };
            writeln!(s, "[info] {}: {outcome}", case.description).unwrap();
        }
        let failed = self.reproduction.items.iter().filter(|i| !i.passed).count()
            + self.diffop.iter().flat_map(|r| &r.checks).filter(|c| !c.passed).count();
        writeln!(s, "{}", if self.passed { "all checks passed".to_string() } else { format!("{failed} check(s) failed") }).unwrap();
        s
    }
}

fn diffop_text(report: &InclusionReport) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "d/dt over F_{}[t], levels {} -> {}, entries in u = t^{}",
        report.p,
        report.source_level,
        report.target_level,
        report.embedding.size()
    )
    .unwrap();
    writeln!(s, "\ni(d/dt):\n{}", report.inclusion.render()).unwrap();
    writeln!(s, "j(d/dt):\n{}", report.embedding.render()).unwrap();
    for c in &report.checks {
        writeln!(s, "[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail).unwrap();
    }
    let same = report.inclusion == report.embedding;
    writeln!(s, "verdict: {}", if same { "i(d/dt) = j(d/dt)" } else { "i(d/dt) != j(d/dt)" }).unwrap();
    s
}
