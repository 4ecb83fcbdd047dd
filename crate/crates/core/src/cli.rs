//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification report has a failing
//! entry, 2 on any input or computation error.

use std::collections::HashMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use log::info;

use crate::cache::{request_key, Cache};
use crate::coha::{m, m_ab_tau, m_tau, AbelianElement, CohaElement};
use crate::error::{Error, Result};
use crate::fixloc::{
    check_restrictions, enumerate_fixed_points, envelope_restrictions, restrict, AxiomReport, RestrictionTable,
};
use crate::quiver::{DimVec, Quiver, Weight};
use crate::rmatrix::{check_ybe, r_matrix, stab_matrix};
use crate::stab::{psi, stab_psi, Chamber, Decomposition, FixedComponent};
use crate::symalg::{flag_pushforward, parse_poly, parse_ratfun, Poly, RatFun, Symbol};

#[derive(Parser, Debug, Clone)]
#[command(name = "cohastab", version, about = "Framed CoHA products and shuffle stable envelopes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Quiver file: {"vertices": [...], "arrows": [[tail, head], ...]}.
    #[arg(long, global = true)]
    pub quiver: Option<PathBuf>,
    /// Sign of the cotangent weight; `-` applies h -> -h to inputs and outputs.
    #[arg(long, global = true, default_value = "+", allow_hyphen_values = true, value_parser = ["+", "-"])]
    pub h_sign: String,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Cache directory (overridden by COHASTAB_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Bound on worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// CoHA product m.
    Mul(ProductArgs),
    /// Twisted product m_tau.
    MulTau(ProductArgs),
    /// Abelianized twisted product.
    MulAb(ProductArgs),
    /// Stable envelope of one fixed component.
    Stab(StabArgs),
    /// Tautological shadow of psi.
    Psi(InputArgs),
    /// Restrictions of a class or envelope to the fixed points.
    Restrict(RestrictArgs),
    /// Diagonal, support and degree checks of the envelopes.
    VerifyAxioms(AxiomArgs),
    /// Wall-crossing matrix between two chambers.
    Rmatrix(RmatrixArgs),
    /// Unitarity and braid relation over the six chambers of three slots.
    Ybe(GeometryArgs),
    /// Pushforward along the full flag bundle.
    Pushforward(InputArgs),
}

/// Operands are `EXPR@(v..., w...)`; `EXPR` may be `file:PATH`.
#[derive(Args, Debug, Clone)]
pub struct ProductArgs {
    #[arg(long)]
    pub left: String,
    #[arg(long)]
    pub right: String,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// `EXPR@(v..., w...)`.
    #[arg(long)]
    pub input: String,
}

/// Slots are separated by `,` and vertex entries by `:`.
#[derive(Args, Debug, Clone)]
pub struct GeometryArgs {
    /// Total dimension vector.
    #[arg(long)]
    pub v: Option<String>,
    /// Framing of every slot, e.g. `1,1,1`.
    #[arg(long)]
    pub w: Option<String>,
    /// Restriction table file; replaces the built-in fixed points.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct StabArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,
    /// Permutation word, e.g. `2,1`; defaults to the identity.
    #[arg(long)]
    pub chamber: Option<String>,
    /// Dimension vector of every slot, e.g. `1,0`.
    #[arg(long)]
    pub component: String,
    /// Leaf class of one slot in slot-local labels; repeat once per slot.
    #[arg(long)]
    pub leaf: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct RestrictArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,
    #[arg(long)]
    pub chamber: Option<String>,
    /// Restrict the envelope of this component.
    #[arg(long, conflicts_with = "class")]
    pub component: Option<String>,
    /// Restrict this class instead.
    #[arg(long)]
    pub class: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct AxiomArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,
    /// Check one chamber; default is every chamber (identity only with a table).
    #[arg(long)]
    pub chamber: Option<String>,
    /// Added to the envelope of `--perturb-component` before checking.
    #[arg(long, requires = "perturb_component")]
    pub perturb: Option<String>,
    #[arg(long, requires = "perturb")]
    pub perturb_component: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct RmatrixArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
}

/// Result of one invocation before it is written out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    /// Human-readable report, printed to standard error.
    pub summary: Option<String>,
    pub passed: bool,
}

impl Outcome {
    fn value(output: String) -> Outcome {
        Outcome {
            output,
            summary: None,
            passed: true,
        }
    }
}

struct Ctx {
    quiver: Quiver,
    flip: bool,
    cache: Cache,
}

impl Ctx {
    /// `h -> -h` when the flipped convention is requested.
    fn convert(&self, f: RatFun) -> Result<RatFun> {
        if !self.flip {
            return Ok(f);
        }
        f.substitute(&HashMap::from([(Symbol::H, -Poly::h())]))
    }

    fn convert_poly(&self, p: Poly) -> Poly {
        if !self.flip {
            return p;
        }
        p.substitute(&HashMap::from([(Symbol::H, -Poly::h())]))
    }

    fn convert_table(&self, mut table: RestrictionTable) -> RestrictionTable {
        if self.flip {
            for p in &mut table.points {
                for w in p.assign.values_mut() {
                    *w = Weight::from_terms(w.terms().map(|(s, c)| (s, if s.is_hbar() { -c } else { c })));
                }
            }
        }
        table
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn expression_text(expr: &str) -> Result<String> {
    match expr.strip_prefix("file:") {
        Some(path) => read(Path::new(path)),
        None => Ok(expr.to_string()),
    }
}

fn in_file(expr: &str, e: Error) -> Error {
    match (expr.strip_prefix("file:"), e) {
        (Some(path), Error::Parse { line, column, message }) => Error::Parse {
            line,
            column,
            message: format!("{message} (in {path})"),
        },
        (_, e) => e,
    }
}

fn parse_ratfun_expr(expr: &str) -> Result<RatFun> {
    parse_ratfun(expression_text(expr)?.trim()).map_err(|e| in_file(expr, e))
}

fn parse_poly_expr(expr: &str) -> Result<Poly> {
    parse_poly(expression_text(expr)?.trim()).map_err(|e| in_file(expr, e))
}

fn parse_count(text: &str) -> Result<usize> {
    text.trim()
        .parse()
        .map_err(|_| Error::Invalid(format!("expected a nonnegative integer, got {text:?}")))
}

/// `1:0` is a dimension vector with entries separated by `:`.
fn parse_dimvec(text: &str, n: usize) -> Result<DimVec> {
    let entries = text.split(':').map(parse_count).collect::<Result<Vec<_>>>()?;
    if entries.len() != n {
        return Err(Error::Dimension(format!("{text:?} has {} entries, the quiver {n} vertices", entries.len())));
    }
    Ok(DimVec(entries))
}

fn parse_slots(text: &str, n: usize) -> Result<Vec<DimVec>> {
    text.split(',').map(|s| parse_dimvec(s, n)).collect()
}

fn parse_word(text: &str) -> Result<Chamber> {
    let word = text.split(',').map(parse_count).collect::<Result<Vec<_>>>()?;
    Chamber::from_word(&word)
}

/// Splits `EXPR@(v..., w...)`.
fn parse_operand(text: &str, n: usize) -> Result<(String, DimVec, DimVec)> {
    let (expr, grade) = text
        .rsplit_once('@')
        .ok_or_else(|| Error::Invalid(format!("operand {text:?} lacks a grade `@(v..., w...)`")))?;
    let inner = grade
        .trim()
        .strip_prefix('(')
        .and_then(|g| g.strip_suffix(')'))
        .ok_or_else(|| Error::Invalid(format!("grade {grade:?} must be parenthesized")))?;
    let entries = inner.split(',').map(parse_count).collect::<Result<Vec<_>>>()?;
    if entries.len() != 2 * n {
        return Err(Error::Dimension(format!(
            "grade {grade} needs {} entries for {n} vertices",
            2 * n
        )));
    }
    Ok((expr.to_string(), DimVec(entries[..n].to_vec()), DimVec(entries[n..].to_vec())))
}

fn coha_operand(ctx: &Ctx, text: &str) -> Result<CohaElement> {
    let (expr, v, w) = parse_operand(text, ctx.quiver.num_vertices())?;
    CohaElement::new(&ctx.quiver, v, w, ctx.convert_poly(parse_poly_expr(&expr)?))
}

fn abelian_operand(ctx: &Ctx, text: &str) -> Result<AbelianElement> {
    let (expr, v, w) = parse_operand(text, ctx.quiver.num_vertices())?;
    AbelianElement::new(&ctx.quiver, v, w, ctx.convert_poly(parse_poly_expr(&expr)?))
}

fn line(p: impl std::fmt::Display) -> String {
    format!("{p}\n")
}

/// Fixed points either from `--table` or built in; `framings` and the
/// total `v` must agree with the arguments when both are given.
struct Geometry {
    framings: Vec<DimVec>,
    v: Option<DimVec>,
    table: Option<RestrictionTable>,
}

fn geometry(ctx: &Ctx, g: &GeometryArgs) -> Result<Geometry> {
    let n = ctx.quiver.num_vertices();
    let v = g.v.as_deref().map(|t| parse_dimvec(t, n)).transpose()?;
    let table = match &g.table {
        Some(path) => Some(ctx.convert_table(RestrictionTable::from_json(&read(path)?)?)),
        None => None,
    };
    let framings = match (&g.w, &table) {
        (Some(w), _) => parse_slots(w, n)?,
        (None, Some(t)) => t.framings.clone(),
        (None, None) => return Err(Error::Invalid("--w or --table is required".into())),
    };
    if let Some(t) = &table {
        if !t.framings.is_empty() && t.framings != framings {
            return Err(Error::Invalid("--w disagrees with the framings of the table".into()));
        }
    }
    Ok(Geometry { framings, v, table })
}

impl Geometry {
    fn decomposition(&self, component: &[DimVec]) -> Result<Decomposition> {
        if component.len() != self.framings.len() {
            return Err(Error::Dimension(format!(
                "{} slot dimensions for {} framing slots",
                component.len(),
                self.framings.len()
            )));
        }
        Decomposition::new(component.iter().cloned().zip(self.framings.iter().cloned()).collect())
    }

    fn fixed_points(&self, q: &Quiver, chamber: &Chamber) -> Result<RestrictionTable> {
        if let Some(t) = &self.table {
            return Ok(t.clone());
        }
        let v = self.v.clone().ok_or_else(|| Error::Invalid("--v is required without --table".into()))?;
        let zero = DimVec::zero(q.num_vertices());
        let dec = Decomposition::new(self.framings.iter().map(|w| (zero.clone(), w.clone())).collect())?;
        enumerate_fixed_points(q, &v, &dec, chamber)
    }

    fn component_index(&self, table: &RestrictionTable, component: &[DimVec]) -> Result<usize> {
        table
            .components
            .iter()
            .position(|c| c == component)
            .ok_or_else(|| Error::Invalid("no fixed component with these slot dimensions".into()))
    }
}

fn chamber_arg(text: Option<&str>, slots: usize) -> Result<Chamber> {
    match text {
        Some(t) => {
            let c = parse_word(t)?;
            if c.len() != slots {
                return Err(Error::Dimension(format!("chamber on {} slots, expected {slots}", c.len())));
            }
            Ok(c)
        }
        None => Ok(Chamber::identity(slots)),
    }
}

fn cmd_stab(ctx: &Ctx, args: &StabArgs) -> Result<Outcome> {
    let geo = geometry(ctx, &args.geometry)?;
    let n = ctx.quiver.num_vertices();
    let component = parse_slots(&args.component, n)?;
    let dec = geo.decomposition(&component)?;
    if let Some(v) = &geo.v {
        if *v != dec.v() {
            return Err(Error::Dimension(format!("--v {v} but the component has total {}", dec.v())));
        }
    }
    let chamber = chamber_arg(args.chamber.as_deref(), dec.len())?;
    let leaves = if args.leaf.is_empty() {
        vec![RatFun::one(); dec.len()]
    } else {
        args.leaf
            .iter()
            .map(|t| ctx.convert(parse_ratfun_expr(t)?))
            .collect::<Result<Vec<_>>>()?
    };
    let leaf_texts: Vec<String> = leaves.iter().map(ToString::to_string).collect();
    let fixed = FixedComponent::new(dec.clone(), leaves)?;
    let mut parts = vec![
        "stab".to_string(),
        ctx.quiver.hash(),
        format!("{:?}", dec.slots()),
        format!("{:?}", chamber.word()),
        ctx.flip.to_string(),
    ];
    parts.extend(leaf_texts);
    let refs: Vec<&str> = parts.iter().map(String::as_str).collect();
    let text = ctx.cache.get_or_compute(&request_key(&refs), || {
        info!("computing stab for {:?} in chamber {chamber}", dec.slots());
        Ok(line(ctx.convert(stab_psi(&ctx.quiver, &fixed, &chamber)?)?))
    })?;
    Ok(Outcome::value(text))
}

fn cmd_restrict(ctx: &Ctx, args: &RestrictArgs) -> Result<Outcome> {
    let geo = geometry(ctx, &args.geometry)?;
    let chamber = chamber_arg(args.chamber.as_deref(), geo.framings.len())?;
    let table = geo.fixed_points(&ctx.quiver, &chamber)?;
    let values: Vec<RatFun> = match (&args.class, &args.component) {
        (Some(expr), _) => {
            let f = ctx.convert(parse_ratfun_expr(expr)?)?;
            table.points.iter().map(|p| restrict(&f, p)).collect::<Result<_>>()?
        }
        (None, Some(c)) => {
            let component = parse_slots(c, ctx.quiver.num_vertices())?;
            let idx = geo.component_index(&table, &component)?;
            let rows = envelope_restrictions(&ctx.quiver, &table, &chamber)?;
            rows[idx].clone()
        }
        (None, None) => return Err(Error::Invalid("restrict needs --component or --class".into())),
    };
    let mut out = String::new();
    for (p, value) in table.points.iter().zip(values) {
        writeln!(out, "{}: {}", p.id, ctx.convert(value)?).expect("write to string");
    }
    Ok(Outcome::value(out))
}

fn cmd_verify(ctx: &Ctx, args: &AxiomArgs) -> Result<Outcome> {
    let geo = geometry(ctx, &args.geometry)?;
    let k = geo.framings.len();
    let chambers = match (&args.chamber, &geo.table) {
        (Some(t), _) => vec![chamber_arg(Some(t), k)?],
        (None, Some(_)) => vec![Chamber::identity(k)],
        (None, None) => Chamber::all(k),
    };
    let perturbation = match (&args.perturb, &args.perturb_component) {
        (Some(expr), Some(c)) => Some((
            ctx.convert(parse_ratfun_expr(expr)?)?,
            parse_slots(c, ctx.quiver.num_vertices())?,
        )),
        _ => None,
    };
    let mut reports: Vec<AxiomReport> = Vec::new();
    for chamber in &chambers {
        let table = geo.fixed_points(&ctx.quiver, chamber)?;
        let mut rows = envelope_restrictions(&ctx.quiver, &table, chamber)?;
        if let Some((extra, component)) = &perturbation {
            let idx = geo.component_index(&table, component)?;
            for (value, point) in rows[idx].iter_mut().zip(&table.points) {
                *value = value.add(&restrict(extra, point)?);
            }
        }
        reports.push(check_restrictions(&ctx.quiver, &rows, &table, chamber));
    }
    let passed = reports.iter().all(AxiomReport::passed);
    let json = serde_json::to_string_pretty(&reports)?;
    let summary: String = reports.iter().map(AxiomReport::to_text).collect();
    Ok(Outcome {
        output: line(json),
        summary: Some(summary),
        passed,
    })
}

fn cmd_rmatrix(ctx: &Ctx, args: &RmatrixArgs) -> Result<Outcome> {
    let geo = geometry(ctx, &args.geometry)?;
    let k = geo.framings.len();
    let from = chamber_arg(Some(&args.from), k)?;
    let to = chamber_arg(Some(&args.to), k)?;
    let m_from = stab_matrix(&ctx.quiver, &geo.fixed_points(&ctx.quiver, &from)?, &from)?;
    let m_to = stab_matrix(&ctx.quiver, &geo.fixed_points(&ctx.quiver, &to)?, &to)?;
    let r = r_matrix(&m_from, &m_to)?;
    let mut out = String::new();
    for row in r.rows() {
        let cells = row
            .iter()
            .map(|f| ctx.convert(f.clone()).map(|g| g.to_string()))
            .collect::<Result<Vec<_>>>()?;
        writeln!(out, "[{}]", cells.join(", ")).expect("write to string");
    }
    Ok(Outcome::value(out))
}

fn cmd_ybe(ctx: &Ctx, args: &GeometryArgs) -> Result<Outcome> {
    let geo = geometry(ctx, args)?;
    let unit = DimVec(vec![1]);
    if ctx.quiver.num_vertices() != 1 || !ctx.quiver.arrows().is_empty() || geo.framings != vec![unit; 3] {
        return Err(Error::Unsupported("ybe needs the one-vertex quiver with w = 1,1,1".into()));
    }
    if geo.table.is_some() {
        return Err(Error::Unsupported("ybe uses the built-in fixed points".into()));
    }
    let v = geo.v.ok_or_else(|| Error::Invalid("--v is required".into()))?;
    let report = check_ybe(&ctx.quiver, v[0])?;
    Ok(Outcome {
        output: line(report.to_json()),
        summary: Some(report.to_text()),
        passed: report.passed(),
    })
}

fn dispatch(ctx: &Ctx, command: &Command) -> Result<Outcome> {
    match command {
        Command::Mul(a) => {
            let r = m(&coha_operand(ctx, &a.left)?, &coha_operand(ctx, &a.right)?)?;
            Ok(Outcome::value(line(ctx.convert_poly(r.poly))))
        }
        Command::MulTau(a) => {
            let r = m_tau(&coha_operand(ctx, &a.left)?, &coha_operand(ctx, &a.right)?)?;
            Ok(Outcome::value(line(ctx.convert_poly(r.poly))))
        }
        Command::MulAb(a) => {
            let r = m_ab_tau(&abelian_operand(ctx, &a.left)?, &abelian_operand(ctx, &a.right)?)?;
            Ok(Outcome::value(line(ctx.convert_poly(r.poly))))
        }
        Command::Psi(a) => {
            let r = psi(&coha_operand(ctx, &a.input)?)?;
            Ok(Outcome::value(line(ctx.convert_poly(r.poly))))
        }
        Command::Pushforward(a) => {
            let f = abelian_operand(ctx, &a.input)?;
            let r = flag_pushforward(&f.poly, f.v.as_slice())?;
            Ok(Outcome::value(line(ctx.convert_poly(r.poly))))
        }
        Command::Stab(a) => cmd_stab(ctx, a),
        Command::Restrict(a) => cmd_restrict(ctx, a),
        Command::VerifyAxioms(a) => cmd_verify(ctx, a),
        Command::Rmatrix(a) => cmd_rmatrix(ctx, a),
        Command::Ybe(a) => cmd_ybe(ctx, a),
    }
}

/// Runs one parsed invocation without touching the output destination.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let path = cli
        .common
        .quiver
        .as_ref()
        .ok_or_else(|| Error::Invalid("--quiver is required".into()))?;
    let ctx = Ctx {
        quiver: Quiver::from_json(&read(path)?)?,
        flip: cli.common.h_sign == "-",
        cache: Cache::resolve(cli.common.cache_dir.as_deref(), cli.common.no_cache),
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.common.jobs {
        pool = pool.num_threads(n.max(1));
    }
    let pool = pool
        .build()
        .map_err(|e| Error::Invalid(format!("cannot start worker threads: {e}")))?;
    pool.install(|| dispatch(&ctx, &cli.command))
}

/// Parses `args`, runs, writes the result and returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    if let Some(summary) = &outcome.summary {
        eprint!("{summary}");
    }
    let written = match &cli.common.output {
        Some(path) => fs::write(path, &outcome.output),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(outcome.output.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return 2;
    }
    if outcome.passed {
        0
    } else {
        1
    }
}
