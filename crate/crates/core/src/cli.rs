//! Command-line front end.
//!
//! Every command builds a [`Document`] (named sections of `key = value`
//! pairs) and renders it as text or as a flat key-value file. Exit codes:
//! 0 ok, 1 verification disagreement, 2 unparsable input, 3 domain error,
//! 4 search without hits.

use std::ffi::OsString;
use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::gfield::FieldSpec;
use crate::lowdeg::{self, Deg2State};
use crate::oracle::{self, SweepMode, SweepPlan, DEFAULT_BUDGET};
use crate::rootcount::{self, FullKernel};
use crate::semimat::{EigenProfile, SqMatrix};
use crate::skewpoly::LinearizedPoly;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREEMENT: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_EMPTY_SEARCH: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "linroots",
    version,
    about = "Root counts of σ-linearized and projective polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Nullity of L and root count of P_L by every matrix method.
    Count(PolyArgs),
    /// Coefficient-only classification for σ-degree 2 or 3.
    Classify(PolyArgs),
    /// Characteristic polynomial of A_L or of an explicit matrix.
    Charpoly(CharpolyArgs),
    /// Cross-check every method against brute force over a coefficient sweep.
    Verify(SweepArgs),
    /// Find coefficient tuples whose projective polynomial splits completely.
    SearchSplit(SweepArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Kv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Args, Debug)]
struct Common {
    /// Field, e.g. `p=2,m=1,n=3,s=1` (optionally `,mod=c0,c1,...`).
    #[arg(long)]
    field: String,
    #[arg(long, value_enum, default_value = "text")]
    output: OutputFormat,
}

#[derive(Args, Debug)]
struct PolyArgs {
    #[command(flatten)]
    common: Common,
    /// Coefficient codes `a_0;a_1;...;a_d`.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
}

#[derive(Args, Debug)]
struct CharpolyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
    poly: Option<String>,
    /// Rows separated by `|`, entries by `,`.
    #[arg(long)]
    matrix: Option<String>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    degree: usize,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ModeArg,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

/// Sections of `key = value` pairs, in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    sections: Vec<(String, Vec<(String, String)>)>,
}

impl Document {
    pub fn section(&mut self, name: &str) -> &mut Self {
        self.sections.push((name.to_string(), Vec::new()));
        self
    }

    pub fn put(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        if self.sections.is_empty() {
            self.section("main");
        }
        let last = self.sections.last_mut().expect("a section exists");
        last.1.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections
            .iter()
            .filter(|(name, _)| name == section)
            .flat_map(|(_, kv)| kv.iter())
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn render(&self, format: OutputFormat) -> String {
        let mut out = String::new();
        for (i, (name, kv)) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            match format {
                OutputFormat::Kv => {
                    out.push_str(&format!("[{name}]\n"));
                    for (k, v) in kv {
                        out.push_str(&format!("{k} = {v}\n"));
                    }
                }
                OutputFormat::Text => {
                    out.push_str(&format!("{name}:\n"));
                    let width = kv.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                    for (k, v) in kv {
                        out.push_str(&format!("  {k:<width$}  {v}\n"));
                    }
                }
            }
        }
        out
    }
}

enum Failure {
    Parse(Error),
    Domain(Error),
}

type Step<T> = std::result::Result<T, Failure>;

fn parsing<T>(r: crate::Result<T>) -> Step<T> {
    r.map_err(Failure::Parse)
}

fn domain<T>(r: crate::Result<T>) -> Step<T> {
    r.map_err(Failure::Domain)
}

fn parse_field(common: &Common) -> Step<Arc<FieldSpec>> {
    parsing(common.field.parse::<FieldSpec>().map(Arc::new))
}

fn parse_poly(field: &Arc<FieldSpec>, text: &str) -> Step<LinearizedPoly> {
    parsing(LinearizedPoly::parse(field.clone(), text))
}

/// Parses `args` (program name first), runs the command and writes its
/// output. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_PARSE
                }
            };
        }
    };
    let (format, result) = match &cli.command {
        Command::Count(a) => (a.common.output, cmd_count(a)),
        Command::Classify(a) => (a.common.output, cmd_classify(a)),
        Command::Charpoly(a) => (a.common.output, cmd_charpoly(a)),
        Command::Verify(a) => (a.common.output, cmd_verify(a, err)),
        Command::SearchSplit(a) => (a.common.output, cmd_search_split(a)),
    };
    match result {
        Ok((doc, code)) => {
            let _ = out.write_all(doc.render(format).as_bytes());
            code
        }
        Err(Failure::Parse(e)) => {
            let _ = writeln!(err, "error: invalid input: {e}");
            EXIT_PARSE
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}

fn signature_string(profile: &EigenProfile) -> String {
    if profile.entries.is_empty() {
        return "none".into();
    }
    profile
        .signature()
        .iter()
        .map(|(a, g)| format!("({a},{g})"))
        .collect::<Vec<_>>()
        .join("+")
}

fn cmd_count(a: &PolyArgs) -> Step<(Document, i32)> {
    let f = parse_field(&a.common)?;
    let l = parse_poly(&f, &a.poly)?;
    let rep = domain(rootcount::report(&l))?;
    if rep.shift > 0 {
        return Err(Failure::Domain(Error::ZeroConstant));
    }
    let mut doc = Document::default();
    doc.section("input")
        .put("field", f.as_ref())
        .put("poly", &l)
        .put("degree", rep.degree);
    doc.section("linear")
        .put("nullity", rep.nullity)
        .put("roots", rep.roots_l)
        .put("nullity_gcrc", rep.nullity_gcrc)
        .put("nullity_dickson", rep.nullity_dickson);
    doc.section("projective");
    if let Some(r) = rep.roots_p {
        doc.put("roots", r);
    }
    if let Some(r) = rep.roots_p_gcrc {
        doc.put("roots_gcrc", r);
    }
    if let Some(p) = &rep.profile {
        doc.put("signature", signature_string(p));
    }
    if let Some(fk) = rep.full_kernel {
        let v = match fk {
            FullKernel::FullKernelLinear => "identity".to_string(),
            FullKernel::FullSplitProjective(l) => format!("scalar {l}"),
            FullKernel::Neither => "no".to_string(),
        };
        doc.put("a_matrix_scalar", v);
    }
    if let Some(p) = &rep.profile {
        doc.section("eigenvalues");
        for (lambda, (ma, mg)) in &p.entries {
            doc.put(format!("lambda_{lambda}"), format!("{ma},{mg}"));
        }
        doc.put("remainder_degree", p.remainder_degree);
    }
    doc.section("checks");
    if let Some(c) = rep.norm_condition {
        doc.put("norm_condition", c);
    }
    doc.put("methods_agree", rep.methods_agree);
    Ok((doc, EXIT_OK))
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "n/a".to_string(), |x| x.to_string())
}

fn cmd_classify(a: &PolyArgs) -> Step<(Document, i32)> {
    let f = parse_field(&a.common)?;
    let l = parse_poly(&f, &a.poly)?;
    let mut doc = Document::default();
    doc.section("input")
        .put("field", f.as_ref())
        .put("poly", &l);
    match l.degree() {
        Some(2) => {
            let proj = domain(lowdeg::classify_proj_deg2(&l))?;
            let lin = domain(lowdeg::classify_lin_deg2(&l))?;
            doc.section("classify")
                .put("degree", 2)
                .put("proj_roots", proj.count)
                .put("proj_case", proj.tag)
                .put("nullity", lin.count)
                .put("nullity_case", lin.tag);
            if !l.coeff(1).is_zero() {
                let st = domain(Deg2State::new(&l))?;
                let n = f.n() as i64;
                doc.section("sequence")
                    .put("u", st.u)
                    .put("g_n", st.g.get(n))
                    .put("g_n_minus_1", st.g.get(n - 1))
                    .put("trace", st.trace)
                    .put("det", st.det)
                    .put("delta", opt(st.delta))
                    .put("lambda", opt(st.lambda_inv));
            }
        }
        Some(3) => {
            let proj = domain(lowdeg::classify_proj_deg3(&l))?;
            let lin = domain(lowdeg::classify_lin_deg3(&l))?;
            let sig = proj
                .signature
                .iter()
                .map(|(a, g)| format!("({a},{g})"))
                .collect::<Vec<_>>()
                .join("+");
            doc.section("classify")
                .put("degree", 3)
                .put("proj_roots", proj.count)
                .put("proj_case", proj.tag)
                .put(
                    "signature",
                    if sig.is_empty() { "none".into() } else { sig },
                )
                .put("nullity", lin.nullity)
                .put("permutation", lin.permutation);
            doc.section("criteria")
                .put("scalar", opt(proj.scalar_criterion))
                .put("identity", opt(lin.identity_criterion))
                .put("n5_scalar", opt(proj.n5_scalar_criterion))
                .put("n5_identity", opt(lin.n5_identity_criterion));
        }
        other => {
            return Err(Failure::Domain(Error::WrongDegree {
                expected: 2,
                found: other,
            }))
        }
    }
    Ok((doc, EXIT_OK))
}

fn cmd_charpoly(a: &CharpolyArgs) -> Step<(Document, i32)> {
    let f = parse_field(&a.common)?;
    let mut doc = Document::default();
    doc.section("input").put("field", f.as_ref());
    let m = match (&a.poly, &a.matrix) {
        (Some(p), _) => {
            let l = parse_poly(&f, p)?;
            doc.put("poly", &l);
            domain(SqMatrix::a_matrix(&l))?
        }
        (None, Some(m)) => parsing(SqMatrix::parse(f.clone(), m))?,
        (None, None) => unreachable!("clap requires one of --poly/--matrix"),
    };
    let chi = domain(m.char_poly())?;
    let coeffs = chi
        .coeffs()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(";");
    let profile = domain(m.eigen_profile())?;
    doc.section("matrix").put("entries", &m).put("dim", m.dim());
    doc.section("charpoly")
        .put("coeffs", coeffs)
        .put("in_base_field", chi.in_base_field())
        .put("trace", m.trace())
        .put("det", m.det())
        .put("signature", signature_string(&profile));
    Ok((doc, EXIT_OK))
}

fn sweep_mode(a: &SweepArgs) -> SweepMode {
    match a.mode {
        ModeArg::Exhaustive => SweepMode::Exhaustive,
        ModeArg::Random => SweepMode::Random {
            samples: a.samples,
            seed: a.seed,
        },
    }
}

fn cmd_verify(a: &SweepArgs, err: &mut dyn Write) -> Step<(Document, i32)> {
    let f = parse_field(&a.common)?;
    let plan = domain(SweepPlan::new(f, a.degree, sweep_mode(a)))?.with_budget(a.budget);
    let s = domain(oracle::run_sweep(&plan))?;
    let _ = writeln!(err, "elapsed_ms = {}", s.elapsed.as_millis());
    let mut doc = Document::default();
    doc.section("sweep")
        .put("field", &s.field)
        .put("degree", s.degree)
        .put("mode", &s.mode);
    if let Some(seed) = s.seed {
        doc.put("seed", seed);
    }
    doc.put("tuples", s.tuples)
        .put("disagreements", s.disagreements);
    doc.section("cases");
    for (k, v) in &s.cases {
        doc.put(k.clone(), v);
    }
    doc.section("nullity");
    for (k, v) in &s.nullity_histogram {
        doc.put(format!("nullity_{k}"), v);
    }
    doc.section("projective");
    for (k, v) in &s.proj_histogram {
        doc.put(format!("roots_{k}"), v);
    }
    if !s.examples.is_empty() {
        doc.section("disagreements");
        for (i, text) in &s.examples {
            doc.put(format!("tuple_{i}"), text);
        }
    }
    let code = if s.disagreements == 0 {
        EXIT_OK
    } else {
        EXIT_DISAGREEMENT
    };
    Ok((doc, code))
}

fn cmd_search_split(a: &SweepArgs) -> Step<(Document, i32)> {
    let f = parse_field(&a.common)?;
    let r = domain(oracle::search_split(
        f.clone(),
        a.degree,
        sweep_mode(a),
        a.budget,
    ))?;
    let mut doc = Document::default();
    doc.section("search")
        .put("field", f.as_ref())
        .put("degree", a.degree)
        .put("examined", r.examined)
        .put("passed_filter", r.passed_filter)
        .put("matrix_rejected", r.matrix_rejected)
        .put("hits", r.hits.len())
        .put("brute_verified", r.brute_verified);
    if !r.hits.is_empty() {
        doc.section("hits");
        for (i, t) in r.hits.iter().enumerate() {
            let text = t
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(";");
            doc.put(format!("hit_{}", i + 1), text);
        }
    }
    let code = if r.hits.is_empty() {
        EXIT_EMPTY_SEARCH
    } else {
        EXIT_OK
    };
    Ok((doc, code))
}
