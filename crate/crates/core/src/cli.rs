//! Command-line front end.
//!
//! Exit codes: 0 success, 1 internal error, 2 invalid input, 3 missing
//! class data, 4 missing abelianization.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::ab_group::AbGroupExpr;
use crate::assembler::{
    rank_table, whitehead_psl, whitehead_sl, AssemblyError, ClassCounts, DataOrigin, GroupData, Mode,
};
use crate::class_numbers::{class_number, reduced_forms, Discriminant};
use crate::cyclic_reps::{rep_counts, CyclicGroup};
use crate::pchain::{enumerate_pchains, OrbitPoset};
use crate::quad_field::{allowed_orders, elliptic_trace_candidates, embed, Embedding, FieldSpec};

pub const SCHEMA_VERSION: &str = "1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_MISSING_CLASSES: i32 = 3;
pub const EXIT_MISSING_AB: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "hilbert-k", version, about = "Whitehead groups and rational K-theory ranks of Hilbert modular groups")]
pub struct Cli {
    /// Emit a JSON envelope instead of a human-readable table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also print decimal approximations of exact values.
    #[arg(long, global = true)]
    pub approx: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Psl,
    Sl,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Psl => Mode::Psl,
            ModeArg::Sl => Mode::Sl,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PosetArg {
    Psl,
    Sl,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integral basis, elliptic traces and element orders of Q(sqrt d).
    Field { d: u64 },
    /// Rank differences rk K_q(Z[G]) - rk H_q(BG;K(Z)) for G = PSL_2(O_k).
    Ranks {
        /// Square-free d >= 2 selecting Q(sqrt d).
        d: Option<u64>,
        /// Class counts as order:count pairs, e.g. 2:2,3:2,5:2.
        #[arg(long)]
        classes: Option<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [-1i64, 0, 1, 2, 3, 4, 5, 6, 7, 8])]
        q: Vec<i64>,
    },
    /// Whitehead group Wh_q of PSL_2(O_k) or SL_2(O_k).
    Whitehead {
        d: Option<u64>,
        #[arg(long)]
        classes: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Psl)]
        mode: ModeArg,
        #[arg(long, allow_negative_numbers = true, default_value_t = 1)]
        q: i64,
        /// Abelianization of the PSL_2 quotient, e.g. Z/6 or 0.
        #[arg(long)]
        ab: Option<String>,
    },
    /// Representation counts r, c, q, k_p, r_p of Z_n.
    Reps { n: u64 },
    /// Class number of a negative discriminant.
    Classnum {
        #[arg(allow_negative_numbers = true)]
        d: i64,
    },
    /// p-chains in the orbit poset of PSL_2 or SL_2 with m maximal classes.
    Chains {
        #[arg(long, value_enum)]
        poset: PosetArg,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    MissingClassData(String),
    #[error("{0}")]
    MissingAbelianization(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::MissingClassData(_) => EXIT_MISSING_CLASSES,
            CliError::MissingAbelianization(_) => EXIT_MISSING_AB,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<AssemblyError> for CliError {
    fn from(e: AssemblyError) -> Self {
        match e {
            AssemblyError::MissingClassData { .. } => CliError::MissingClassData(e.to_string()),
            AssemblyError::MissingAbelianization => CliError::MissingAbelianization(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

/// What a command produced, before rendering.
#[derive(Debug, Serialize)]
pub struct OutputEnvelope {
    pub schema_version: String,
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    /// Result key -> `paper-table`, `user-input` or `computed`.
    pub provenance: Value,
}

impl OutputEnvelope {
    /// Canonical JSON: sorted keys, two-space indentation, trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("envelope serializes");
        canonical_json(&value)
    }
}

pub fn canonical_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("value serializes");
    s.push('\n');
    s
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn origin_tag(o: DataOrigin) -> &'static str {
    match o {
        DataOrigin::PaperTable => "paper-table",
        DataOrigin::UserSupplied => "user-input",
    }
}

fn group_data(d: Option<u64>, classes: Option<&str>, ab: Option<&str>, mode: Mode) -> Result<GroupData, CliError> {
    let ab = ab.map(|s| s.parse::<AbGroupExpr>().map_err(invalid)).transpose()?;
    let classes = classes.map(ClassCounts::parse).transpose()?;
    let field = d.map(|d| FieldSpec::new(d).map_err(invalid)).transpose()?;
    match (field, classes) {
        (Some(f), None) => {
            let mut g = GroupData::from_field(f, mode)?;
            if ab.is_some() {
                g.abelianization = ab;
            }
            Ok(g)
        }
        (Some(f), Some(c)) => Ok(GroupData::field_with_counts(f, c, ab, mode)?),
        (None, Some(c)) => Ok(GroupData::generic("generic", c, ab, mode)),
        (None, None) => Err(invalid("give a field d or --classes")),
    }
}

fn class_counts_json(c: &ClassCounts) -> Value {
    Value::Object(c.iter().map(|(o, k)| (o.to_string(), json!(k))).collect())
}

fn ab_json(g: &AbGroupExpr) -> Value {
    json!({
        "rendered": g.to_string(),
        "free_rank": g.free_rank(),
        "torsion": g.torsion(),
        "symbolic": g.symbolic(),
    })
}

struct Report {
    envelope: OutputEnvelope,
    human: String,
}

fn report(command: &str, inputs: Value, result: Value, provenance: Value, human: String) -> Report {
    Report {
        envelope: OutputEnvelope {
            schema_version: SCHEMA_VERSION.into(),
            command: command.into(),
            inputs,
            result,
            provenance,
        },
        human,
    }
}

fn cmd_field(d: u64, approx: bool) -> Result<Report, CliError> {
    let f = FieldSpec::new(d).map_err(invalid)?;
    let candidates = elliptic_trace_candidates(&f).map_err(|e| CliError::Internal(e.to_string()))?;
    let orders = allowed_orders(&f).map_err(|e| CliError::Internal(e.to_string()))?;
    let mut human = String::new();
    writeln!(human, "Q(sqrt {d}): discriminant {}, integral basis {}", f.discriminant(), f.integral_basis()).unwrap();
    writeln!(human, "elliptic trace candidates ({}):", candidates.len()).unwrap();
    let mut rows = Vec::new();
    for c in &candidates {
        let s2 = embed(&c.trace, Embedding::Second);
        let mut row = json!({
            "trace": c.trace.to_string(),
            "sigma2": s2.exact.to_string(),
            "psl_order": c.psl_order,
        });
        write!(human, "  {:<24} order {}", c.trace.to_string(), c.psl_order).unwrap();
        if approx {
            let s1 = embed(&c.trace, Embedding::First).approx;
            row["approx"] = json!({ "sigma1": s1, "sigma2": s2.approx });
            write!(human, "   (approx {s1:.6}, {:.6})", s2.approx).unwrap();
        }
        human.push('\n');
        rows.push(row);
    }
    let orders: Vec<u32> = orders.into_iter().collect();
    writeln!(human, "allowed orders: {orders:?}").unwrap();
    let result = json!({
        "d": d,
        "discriminant": f.discriminant(),
        "integral_basis": f.integral_basis(),
        "trace_candidates": rows,
        "allowed_orders": orders,
    });
    let provenance = json!({
        "discriminant": "computed",
        "trace_candidates": "computed",
        "allowed_orders": "computed",
    });
    Ok(report("field", json!({ "d": d, "approx": approx }), result, provenance, human))
}

fn cmd_ranks(d: Option<u64>, classes: Option<&str>, qs: &[i64]) -> Result<Report, CliError> {
    let g = group_data(d, classes, None, Mode::Psl)?;
    let rows = rank_table(&g, qs)?;
    let mut human = String::new();
    writeln!(human, "{}: classes {} (m = {})", g.label(), g.class_counts, g.class_counts.m()).unwrap();
    writeln!(human, "{:>4}  {:>9}  case", "q", "rank_diff").unwrap();
    for r in &rows {
        writeln!(human, "{:>4}  {:>9}  {}", r.q, r.rank_diff, r.case.describe()).unwrap();
    }
    let result = json!({
        "group": g.label(),
        "class_counts": class_counts_json(&g.class_counts),
        "m": g.class_counts.m(),
        "rows": rows.iter().map(|r| json!({
            "q": r.q,
            "rank_diff": r.rank_diff,
            "case": r.case.describe(),
        })).collect::<Vec<_>>(),
    });
    let provenance = json!({
        "class_counts": origin_tag(g.counts_origin),
        "m": origin_tag(g.counts_origin),
        "rows": "computed",
    });
    let inputs = json!({ "d": d, "classes": classes, "q": qs });
    Ok(report("ranks", inputs, result, provenance, human))
}

fn cmd_whitehead(
    d: Option<u64>,
    classes: Option<&str>,
    mode: Mode,
    q: i64,
    ab: Option<&str>,
) -> Result<Report, CliError> {
    let g = group_data(d, classes, ab, mode)?;
    let expr = match mode {
        Mode::Psl => whitehead_psl(&g, q)?,
        Mode::Sl => whitehead_sl(&g, q)?,
    };
    let ab_origin = if ab.is_some() { "user-input" } else { "paper-table" };
    let result = json!({
        "group": g.label(),
        "mode": mode,
        "q": q,
        "class_counts": class_counts_json(&g.class_counts),
        "abelianization": g.abelianization.as_ref().map(ab_json),
        "whitehead": ab_json(&expr),
    });
    let mut provenance = json!({
        "class_counts": origin_tag(g.counts_origin),
        "whitehead": "computed",
    });
    if g.abelianization.is_some() {
        provenance["abelianization"] = json!(ab_origin);
    }
    let inputs = json!({ "d": d, "classes": classes, "mode": mode, "q": q, "ab": ab });
    Ok(report("whitehead", inputs, result, provenance, format!("{expr}\n")))
}

fn cmd_reps(n: u64) -> Result<Report, CliError> {
    let g = CyclicGroup::new(n).map_err(invalid)?;
    let rc = rep_counts(g);
    let mut human = format!("r={} c={} q={}", rc.r, rc.c, rc.q);
    for (p, lc) in &rc.local {
        write!(human, " k_{p}={} r_{p}={}", lc.k_p, lc.r_p).unwrap();
    }
    human.push('\n');
    let result = serde_json::to_value(&rc).map_err(|e| CliError::Internal(e.to_string()))?;
    let provenance = json!({ "r": "computed", "c": "computed", "q": "computed", "local": "computed" });
    Ok(report("reps", json!({ "n": n }), result, provenance, human))
}

fn cmd_classnum(d: i64) -> Result<Report, CliError> {
    let disc = Discriminant::new(d).map_err(invalid)?;
    let h = class_number(disc);
    let forms = reduced_forms(disc);
    let result = json!({
        "discriminant": d,
        "class_number": h,
        "reduced_forms": forms.iter().map(|f| [f.a, f.b, f.c]).collect::<Vec<_>>(),
    });
    let provenance = json!({ "class_number": "computed", "reduced_forms": "computed" });
    Ok(report("classnum", json!({ "d": d }), result, provenance, format!("h({d}) = {h}\n")))
}

fn cmd_chains(poset: PosetArg, m: usize, p: usize) -> Result<Report, CliError> {
    let (name, poset) = match poset {
        PosetArg::Psl => ("psl", OrbitPoset::psl_anonymous(m)),
        PosetArg::Sl => ("sl", OrbitPoset::sl_anonymous(m)),
    };
    let chains = enumerate_pchains(&poset, p);
    let mut human = format!("{} {p}-chains in the {name} poset with m = {m}\n", chains.len());
    let labelled: Vec<Vec<&str>> = chains.iter().map(|c| c.labels(&poset)).collect();
    for c in &labelled {
        writeln!(human, "  {}", c.join(" < ")).unwrap();
    }
    let result = json!({ "count": chains.len(), "chains": labelled });
    let provenance = json!({ "count": "computed", "chains": "computed" });
    Ok(report("chains", json!({ "poset": name, "m": m, "p": p }), result, provenance, human))
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Field { d } => cmd_field(*d, cli.approx),
        Command::Ranks { d, classes, q } => cmd_ranks(*d, classes.as_deref(), q),
        Command::Whitehead { d, classes, mode, q, ab } => {
            cmd_whitehead(*d, classes.as_deref(), (*mode).into(), *q, ab.as_deref())
        }
        Command::Reps { n } => cmd_reps(*n),
        Command::Classnum { d } => cmd_classnum(*d),
        Command::Chains { poset, m, p } => cmd_chains(*poset, *m, *p),
    }
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(rep) => {
            let stdout = if cli.json { rep.envelope.to_canonical_json() } else { rep.human };
            Outcome { code: EXIT_OK, stdout, stderr: String::new() }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
