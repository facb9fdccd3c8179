//! Suite enumeration, parallel execution, reports, and the `verify` command line.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{rat, ratio};
use crate::cyclotomic::{check_product_formula, congruent_mod_cyclotomic};
use crate::error::{Error, Result};
use crate::padic::{self, PadicContext, Which};
use crate::qhyper::{self, Chain, GridPlan, Identity};
use crate::verdict::{Status, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    ThmA,
    ThmB,
    ThmC,
    Lemma,
    Saalschutz,
    Relations,
    WeiChain,
    Limits,
    Long,
    Liu,
    CorA,
    CorB,
    PropA,
    PropB,
    Harmonic,
    Invariants,
    All,
}

impl Suite {
    pub const MEMBERS: [Suite; 16] = [
        Suite::ThmA,
        Suite::ThmB,
        Suite::ThmC,
        Suite::Lemma,
        Suite::Saalschutz,
        Suite::Relations,
        Suite::WeiChain,
        Suite::Limits,
        Suite::Long,
        Suite::Liu,
        Suite::CorA,
        Suite::CorB,
        Suite::PropA,
        Suite::PropB,
        Suite::Harmonic,
        Suite::Invariants,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ThmA => "thm-a",
            Suite::ThmB => "thm-b",
            Suite::ThmC => "thm-c",
            Suite::Lemma => "lemma",
            Suite::Saalschutz => "saalschutz",
            Suite::Relations => "relations",
            Suite::WeiChain => "wei-chain",
            Suite::Limits => "limits",
            Suite::Long => "long",
            Suite::Liu => "liu",
            Suite::CorA => "cor-a",
            Suite::CorB => "cor-b",
            Suite::PropA => "prop-a",
            Suite::PropB => "prop-b",
            Suite::Harmonic => "harmonic",
            Suite::Invariants => "invariants",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

/// Deliberate formula corruptions, used to show that checks can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Faults {
    /// Added to the constant 4 in θ_n's `q^{2n}` coefficient.
    pub theta_shift: i64,
    /// Drops the sign (−1)^n from Γ_p(n).
    pub unsigned_gamma: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSpec {
    pub suite: Suite,
    pub n_min: Option<u64>,
    pub n_max: Option<u64>,
    pub p_max: u64,
    pub t: Option<u64>,
    pub m_max: Option<usize>,
    pub grid_margin: usize,
    pub jobs: Option<usize>,
    pub include_degenerate: bool,
    pub faults: Faults,
}

impl SuiteSpec {
    pub fn new(suite: Suite) -> Self {
        SuiteSpec {
            suite,
            n_min: None,
            n_max: None,
            p_max: 97,
            t: None,
            m_max: None,
            grid_margin: 0,
            jobs: None,
            include_degenerate: false,
            faults: Faults::default(),
        }
    }

    fn plan(&self) -> GridPlan {
        GridPlan {
            margin: self.grid_margin,
            cap: None,
        }
    }

    fn n_range(&self, default_max: u64) -> impl Iterator<Item = u64> {
        self.n_min.unwrap_or(1).max(1)..=self.n_max.unwrap_or(default_max)
    }

    fn m_range(&self, default_max: usize) -> std::ops::RangeInclusive<usize> {
        0..=self.m_max.unwrap_or(default_max)
    }

    fn primes(&self, class: Option<u64>) -> Vec<u64> {
        padic::primes_from_five(self.p_max)
            .into_iter()
            .filter(|p| class.is_none_or(|c| p % 6 == c))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseStatus {
    Pass,
    Fail,
    Error,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub id: String,
    pub params: Value,
    pub status: CaseStatus,
    pub certified: bool,
    pub witness: Value,
    pub ms: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config: SuiteSpec,
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.error > 0 {
            2
        } else {
            0
        }
    }

    pub fn case(&self, id: &str) -> Option<&CaseResult> {
        self.cases.iter().find(|c| c.id == id)
    }
}

type Job = Box<dyn Fn() -> Result<Verdict> + Send + Sync>;

enum Work {
    Run(Job),
    Skip { reason: String, witness: Value },
}

struct Case {
    id: String,
    params: Value,
    work: Work,
}

fn case(
    id: String,
    params: Value,
    f: impl Fn() -> Result<Verdict> + Send + Sync + 'static,
) -> Case {
    Case {
        id,
        params,
        work: Work::Run(Box::new(f)),
    }
}

fn congruence(
    l: &crate::arith::RationalFunc,
    r: &crate::arith::RationalFunc,
    n: u64,
) -> Result<Verdict> {
    congruent_mod_cyclotomic(l, r, n, 3)
}

fn thm_a_cases(spec: &SuiteSpec) -> Vec<Case> {
    let allow = spec.include_degenerate;
    spec.n_range(43)
        .filter(|n| n % 6 == 1)
        .map(|n| {
            let id = format!("thm-a:n={n}");
            let params = json!({ "n": n });
            if n == 1 && !allow {
                let (l, r) = qhyper::thm_a_sides(1, true).expect("n = 1 sides");
                let at_one = |f: &crate::arith::RationalFunc| f.eval(&rat(1)).unwrap().to_string();
                return Case {
                    id,
                    params,
                    work: Work::Skip {
                        reason: "n = 1 is degenerate: the congruence fails at q = 1".into(),
                        witness: json!({ "lhs_at_q1": at_one(&l), "rhs_at_q1": at_one(&r) }),
                    },
                };
            }
            case(id, params, move || {
                let (l, r) = qhyper::thm_a_sides(n, allow)?;
                congruence(&l, &r, n)
            })
        })
        .collect()
}

fn thm_b_cases(spec: &SuiteSpec) -> Vec<Case> {
    let c = 4 + spec.faults.theta_shift;
    spec.n_range(47)
        .filter(|n| n % 6 == 5)
        .map(|n| {
            case(format!("thm-b:n={n}"), json!({ "n": n }), move || {
                let (l, r) = qhyper::thm_b_sides_with_theta_constant(n, c)?;
                congruence(&l, &r, n)
            })
        })
        .collect()
}

fn thm_c_cases(spec: &SuiteSpec) -> Vec<Case> {
    let ts: Vec<u64> = spec.t.map_or(vec![1, 2], |t| vec![t]);
    let (plan, allow) = (spec.plan(), spec.include_degenerate);
    let mut out = Vec::new();
    for t in ts {
        let default_max = if t == 1 { 11 } else { 13 };
        for n in spec.n_range(default_max).filter(|n| (t * n) % 3 == 2) {
            let id = format!("thm-c:t={t},n={n}");
            let params = json!({ "t": t, "n": n });
            if n == 1 && !allow {
                out.push(Case {
                    id,
                    params,
                    work: Work::Skip {
                        reason: "n = 1 is outside the default range n >= 2".into(),
                        witness: Value::Null,
                    },
                });
                continue;
            }
            out.push(case(id, params, move || {
                qhyper::thm_c_check(n, t, plan, allow)
            }));
        }
    }
    out
}

fn lemma_cases(spec: &SuiteSpec) -> Vec<Case> {
    let plan = spec.plan();
    spec.m_range(10)
        .map(|m| {
            case(format!("lemma:m={m}"), json!({ "m": m }), move || {
                qhyper::lemma21_check(m, plan)
            })
        })
        .collect()
}

fn identity_cases(spec: &SuiteSpec, which: &[Identity], prefix: &str) -> Vec<Case> {
    let plan = spec.plan();
    let mut out = Vec::new();
    for &w in which {
        for m in spec.m_range(8) {
            let id = if which.len() == 1 {
                format!("{prefix}:m={m}")
            } else {
                format!("{prefix}:{},m={m}", w.name())
            };
            out.push(case(
                id,
                json!({ "identity": w.name(), "m": m }),
                move || qhyper::identity_check(w, m, plan),
            ));
        }
    }
    out
}

fn chain_cases(spec: &SuiteSpec, prefix: &str, limits: bool) -> Vec<Case> {
    let plan = spec.plan();
    let mut out = Vec::new();
    for (chain, class, name, default_max) in [(Chain::OneModSix, 1, "a", 13), (Chain::FiveModSix, 5, "b", 11)] {
        for n in spec
            .n_range(default_max)
            .filter(|&n| n % 6 == class && n > 1)
        {
            let id = format!("{prefix}:{name},n={n}");
            let params = json!({ "form": name, "n": n });
            out.push(if limits {
                case(id, params, move || qhyper::lhopital_check(chain, n, plan))
            } else {
                case(id, params, move || qhyper::chain_check(chain, n, plan))
            });
        }
    }
    out
}

fn context(p: u64, faults: Faults) -> Result<PadicContext> {
    let ctx = PadicContext::new(p)?;
    Ok(if faults.unsigned_gamma {
        ctx.with_unsigned_gamma()
    } else {
        ctx
    })
}

fn prime_cases(
    spec: &SuiteSpec,
    prefix: &str,
    class: Option<u64>,
    check: fn(&PadicContext) -> Result<Verdict>,
) -> Vec<Case> {
    let faults = spec.faults;
    spec.primes(class)
        .into_iter()
        .map(|p| {
            case(format!("{prefix}:p={p}"), json!({ "p": p }), move || {
                check(&context(p, faults)?)
            })
        })
        .collect()
}

const INVARIANT_PRIMES: [u64; 4] = [5, 7, 11, 13];

fn invariant_cases(spec: &SuiteSpec) -> Vec<Case> {
    let faults = spec.faults;
    let mut out = vec![case(
        "invariants:cyclotomic,n<=300".into(),
        json!({ "max_n": 300 }),
        || Ok(check_product_formula(300)),
    )];
    for p in INVARIANT_PRIMES.into_iter().filter(|&p| p <= spec.p_max) {
        out.push(case(
            format!("invariants:gamma,p={p}"),
            json!({ "p": p }),
            move || {
                let ctx = context(p, faults)?;
                let xs = [
                    ratio(1, 3),
                    ratio(2, 3),
                    rat(0),
                    rat(1),
                    rat(2),
                    rat(-3),
                    rat(p as i64),
                ];
                Ok(Verdict::all(
                    format!("Gamma_{p} properties"),
                    vec![
                        (
                            "functional".into(),
                            padic::check_gamma_functional(&ctx, p * p),
                        ),
                        (
                            "reflection".into(),
                            padic::check_gamma_reflection(&ctx, &xs)?,
                        ),
                        ("factorial".into(), padic::check_gamma_small(&ctx)),
                    ],
                ))
            },
        ));
    }
    for p in INVARIANT_PRIMES.into_iter().filter(|&p| p <= spec.p_max) {
        out.push(case(
            format!("invariants:q-limit,p={p}"),
            json!({ "p": p }),
            move || padic::check_q_limit(p),
        ));
    }
    out
}

fn suite_cases(spec: &SuiteSpec, suite: Suite) -> Vec<Case> {
    match suite {
        Suite::ThmA => thm_a_cases(spec),
        Suite::ThmB => thm_b_cases(spec),
        Suite::ThmC => thm_c_cases(spec),
        Suite::Lemma => lemma_cases(spec),
        Suite::Saalschutz => identity_cases(spec, &[Identity::Saalschutz], "saalschutz"),
        Suite::Relations => identity_cases(
            spec,
            &[Identity::Rel4phi3, Identity::Eq21, Identity::Rel5phi4],
            "relations",
        ),
        Suite::WeiChain => chain_cases(spec, "wei-chain", false),
        Suite::Limits => chain_cases(spec, "limits", true),
        Suite::Long => prime_cases(spec, "long", None, padic::check_long),
        Suite::Liu => prime_cases(spec, "liu", None, padic::check_liu),
        Suite::CorA => prime_cases(spec, "cor-a", Some(1), |c| padic::check_cor(Which::A, c)),
        Suite::CorB => prime_cases(spec, "cor-b", Some(5), |c| padic::check_cor(Which::B, c)),
        Suite::PropA => prime_cases(spec, "prop-a", Some(1), |c| padic::check_prop(Which::A, c)),
        Suite::PropB => prime_cases(spec, "prop-b", Some(5), |c| padic::check_prop(Which::B, c)),
        Suite::Harmonic => prime_cases(spec, "harmonic", Some(5), |c| {
            padic::check_harmonic_cong(c.p())
        }),
        Suite::Invariants => invariant_cases(spec),
        Suite::All => Vec::new(),
    }
}

fn enumerate(spec: &SuiteSpec) -> Result<Vec<Case>> {
    if let (Some(lo), Some(hi)) = (spec.n_min, spec.n_max) {
        if lo > hi {
            return Err(Error::Config(format!("n-min {lo} exceeds n-max {hi}")));
        }
    }
    if spec.t.is_some_and(|t| t != 1 && t != 2) {
        return Err(Error::Config("t must be 1 or 2".into()));
    }
    if spec.jobs == Some(0) {
        return Err(Error::Config("jobs must be positive".into()));
    }
    let members: Vec<Suite> = match spec.suite {
        Suite::All => Suite::MEMBERS.to_vec(),
        s => vec![s],
    };
    let mut out = Vec::new();
    for s in members {
        let cases = suite_cases(spec, s);
        if cases.is_empty() {
            return Err(Error::Config(format!(
                "suite {} has no cases in the requested range",
                s.name()
            )));
        }
        out.extend(cases);
    }
    Ok(out)
}

fn execute(c: &Case) -> CaseResult {
    let start = Instant::now();
    let (status, certified, witness) = match &c.work {
        Work::Skip { reason, witness } => (
            CaseStatus::Skipped,
            false,
            json!({ "reason": reason, "data": witness }),
        ),
        Work::Run(f) => match f() {
            Ok(v) => {
                let status = match v.status {
                    Status::Pass => CaseStatus::Pass,
                    Status::Fail => CaseStatus::Fail,
                    Status::Error => CaseStatus::Error,
                };
                let w = json!({ "detail": v.detail, "data": v.witness.unwrap_or(Value::Null) });
                (status, v.certified, w)
            }
            Err(e) => (CaseStatus::Error, false, json!({ "detail": e.to_string() })),
        },
    };
    CaseResult {
        id: c.id.clone(),
        params: c.params.clone(),
        status,
        certified,
        witness,
        ms: start.elapsed().as_millis() as u64,
    }
}

/// Runs every case of the suite; the report lists cases in enumeration
/// order whatever the scheduling.
pub fn run_suite(spec: &SuiteSpec) -> Result<Report> {
    let cases = enumerate(spec)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = spec.jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| Error::Config(e.to_string()))?;
    let results: Vec<CaseResult> = pool.install(|| cases.par_iter().map(execute).collect());
    let mut summary = Summary::default();
    for r in &results {
        match r.status {
            CaseStatus::Pass => summary.pass += 1,
            CaseStatus::Fail => summary.fail += 1,
            CaseStatus::Error => summary.error += 1,
            CaseStatus::Skipped => summary.skipped += 1,
        }
    }
    Ok(Report {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: spec.clone(),
        cases: results,
        summary,
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn status_name(s: CaseStatus) -> &'static str {
    match s {
        CaseStatus::Pass => "pass",
        CaseStatus::Fail => "fail",
        CaseStatus::Error => "error",
        CaseStatus::Skipped => "skipped",
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("id,status,certified,ms\n");
            for c in &report.cases {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    csv_field(&c.id),
                    status_name(c.status),
                    c.certified,
                    c.ms
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in &report.cases {
                let detail = c.witness["detail"]
                    .as_str()
                    .or_else(|| c.witness["reason"].as_str())
                    .unwrap_or("");
                let cert = if c.certified { " certified" } else { "" };
                let _ = writeln!(
                    s,
                    "{:<7} {}{} [{} ms] {}",
                    status_name(c.status),
                    c.id,
                    cert,
                    c.ms,
                    detail
                );
            }
            let m = report.summary;
            let _ = writeln!(
                s,
                "pass={} fail={} error={} skipped={}",
                m.pass, m.fail, m.error, m.skipped
            );
            s
        }
    }
}

pub fn emit_report(report: &Report, path: &Path, format: Format) -> Result<()> {
    std::fs::write(path, render(report, format))
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Exact checks of q-supercongruences and p-adic supercongruences.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Cli {
    /// Suite to run.
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long)]
    n_min: Option<u64>,
    #[arg(long)]
    n_max: Option<u64>,
    /// Largest prime for the p-adic suites.
    #[arg(long, default_value_t = 97)]
    p_max: u64,
    /// Restrict the two-parameter congruence to t = 1 or t = 2.
    #[arg(long)]
    t: Option<u64>,
    #[arg(long)]
    m_max: Option<usize>,
    /// Grid points beyond each degree bound.
    #[arg(long, default_value_t = 0)]
    grid_margin: usize,
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the report to this file.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Report file format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Run degenerate cases (n = 1) instead of skipping them.
    #[arg(long)]
    include_degenerate: bool,
    #[arg(long, hide = true, default_value_t = 0, allow_hyphen_values = true)]
    inject_theta_shift: i64,
    #[arg(long, hide = true)]
    inject_unsigned_gamma: bool,
}

/// Parses `argv` (program name first), runs, and returns the exit code:
/// 0 when everything passes, 1 on any failure, 2 on errors or bad configuration.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let spec = SuiteSpec {
        suite: cli.suite,
        n_min: cli.n_min,
        n_max: cli.n_max,
        p_max: cli.p_max,
        t: cli.t,
        m_max: cli.m_max,
        grid_margin: cli.grid_margin,
        jobs: cli.jobs,
        include_degenerate: cli.include_degenerate,
        faults: Faults {
            theta_shift: cli.inject_theta_shift,
            unsigned_gamma: cli.inject_unsigned_gamma,
        },
    };
    let report = match run_suite(&spec) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("verify: {e}");
            return 2;
        }
    };
    print!("{}", render(&report, Format::Text));
    if let Some(path) = &cli.report {
        if let Err(e) = emit_report(&report, path, cli.format) {
            eprintln!("verify: {e}");
            return 2;
        }
    }
    for c in report
        .cases
        .iter()
        .filter(|c| matches!(c.status, CaseStatus::Fail | CaseStatus::Error))
    {
        eprintln!("{} {}: {}", status_name(c.status), c.id, c.witness);
    }
    report.exit_code()
}
