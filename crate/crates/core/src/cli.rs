//! The `topozeta` command line.
//!
//! Exit status: 0 on success, 1 when `check` or `search` finds poles that
//! are not roots, 2 on malformed input, 3 when a mathematical precondition
//! fails.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{
    check_inclusion, coverage_search, two_monomial_covering_family, FamilySpec, SearchOptions, DEFAULT_DEGREE_BOUND,
};
use crate::arith::{PoleReport, Rational};
use crate::bsp::{fixture_roots, principal_roots, roots_for, two_monomial_roots, RootSet, TwoMonomialIdeal};
use crate::error::Error;
use crate::input::{parse_ideal, parse_polynomial};
use crate::lattice::ExponentVector;
use crate::newton::MonomialIdeal;
use crate::resolution::{analyze_candidate, principalize, zeta_from_resolution, CandidateAnalysis};
use crate::zeta::{zeta, NondegeneracyPolicy, Variant, ZetaRequest};

pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_MATH: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "topozeta", version, about = "Exact topological zeta functions of monomial ideals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Zeta function and its poles.
    Zeta(ZetaArgs),
    /// Bernstein-Sato roots from a closed formula or a table.
    Bsp(BspArgs),
    /// Compare poles with roots for one form.
    Check(ZetaArgs),
    /// Compare poles with roots over a family of forms.
    Search(SearchArgs),
    /// Principalization diagram of a plane monomial ideal.
    Resolve(ResolveArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Monomials,
    Case1,
    Case2,
    Covering,
}

#[derive(Args, Debug)]
pub struct IdealForm {
    /// Ideal as JSON exponent lists or monomials, e.g. "[[1,1],[5,0]]" or "(xy,x^5)"; "@path" reads a file.
    #[arg(long)]
    pub ideal: String,
    /// Form g as JSON [[coef,[e..]],..] or text such as "x^2+3*x*y^4"; "@path" reads a file.
    #[arg(long, default_value = "1")]
    pub form: String,
}

#[derive(Args, Debug)]
pub struct VariantFlags {
    #[arg(long, conflicts_with = "global")]
    pub local: bool,
    #[arg(long)]
    pub global: bool,
    /// Accept forms whose non-degeneracy could not be proved.
    #[arg(long)]
    pub assume_nondegenerate: bool,
}

impl VariantFlags {
    fn variant(&self) -> Variant {
        if self.global {
            Variant::Global
        } else {
            Variant::Local
        }
    }

    fn policy(&self) -> NondegeneracyPolicy {
        if self.assume_nondegenerate {
            NondegeneracyPolicy::AllowAssumed
        } else {
            NondegeneracyPolicy::RequireProof
        }
    }
}

#[derive(Args, Debug)]
pub struct ZetaArgs {
    #[command(flatten)]
    pub input: IdealForm,
    #[command(flatten)]
    pub flags: VariantFlags,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct BspArgs {
    #[arg(long, group = "source")]
    pub ideal: Option<String>,
    /// Exponent vector of a principal ideal, e.g. "2,3".
    #[arg(long, group = "source")]
    pub principal: Option<String>,
    /// a,b,c,d for (x^a y^b, x^c y^d).
    #[arg(long, group = "source")]
    pub two_monomial: Option<String>,
    /// Name of a tabulated ideal, e.g. "(xy,x^5)".
    #[arg(long, group = "source")]
    pub fixture: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub ideal: String,
    #[arg(long, value_enum, default_value = "monomials")]
    pub family: FamilyKind,
    #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
    pub degree_bound: u32,
    #[command(flatten)]
    pub flags: VariantFlags,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ResolveArgs {
    #[command(flatten)]
    pub input: IdealForm,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

struct Failure {
    status: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => EXIT_PARSE,
            _ => EXIT_MATH,
        };
        Failure { status, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { status: EXIT_PARSE, message: message.into() }
}

type Outcome = std::result::Result<(i32, String), Failure>;

/// Runs one command; returns the exit status, standard output and standard
/// error.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { (EXIT_PARSE, String::new(), text) } else { (0, text, String::new()) };
        }
    };
    match dispatch(cli.command) {
        Ok((status, out)) => (status, out, String::new()),
        Err(f) => (f.status, String::new(), format!("error: {}\n", f.message)),
    }
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Zeta(a) => cmd_zeta(a),
        Command::Bsp(a) => cmd_bsp(a),
        Command::Check(a) => cmd_check(a),
        Command::Search(a) => cmd_search(a),
        Command::Resolve(a) => cmd_resolve(a),
    }
}

fn read_arg(value: &str) -> Result<String, Failure> {
    match value.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}"))),
        None => Ok(value.to_string()),
    }
}

fn load_request(input: &IdealForm, flags: &VariantFlags) -> Result<ZetaRequest, Failure> {
    let ideal = parse_ideal(&read_arg(&input.ideal)?, None)?;
    let form = parse_polynomial(&read_arg(&input.form)?, ideal.dim())?;
    Ok(ZetaRequest::new(ideal, form).variant(flags.variant()).policy(flags.policy()))
}

fn no_dot(format: Format) -> Result<(), Failure> {
    if format == Format::Dot {
        return Err(usage("--format dot is only available for resolve"));
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn list(values: &[Rational]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn poles_text(poles: &PoleReport) -> String {
    let mut s = String::new();
    if poles.is_empty() {
        s.push_str("no poles\n");
    }
    for p in &poles.entries {
        write!(s, "pole {} of order {}, leading coefficient {}", p.location, p.order, p.leading_coefficient).unwrap();
        if let Some(r) = &p.residue {
            write!(s, ", residue {r}").unwrap();
        }
        s.push('\n');
    }
    s
}

fn cmd_zeta(a: ZetaArgs) -> Outcome {
    no_dot(a.format)?;
    let req = load_request(&a.input, &a.flags)?;
    let terms = zeta(&req)?;
    let normal = terms.normalize();
    let poles = normal.poles();
    let out = match a.format {
        Format::Json => json(&serde_json::json!({ "zeta": normal, "terms": terms, "poles": poles })),
        _ => format!("Z(s) = {normal}\n{}", poles_text(&poles)),
    };
    Ok((0, out))
}

fn parse_ints(src: &str, expected: Option<usize>) -> Result<Vec<i64>, Failure> {
    let vals: Vec<i64> = src
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| usage(format!("'{t}' is not an integer"))))
        .collect::<Result<_, _>>()?;
    if let Some(n) = expected {
        if vals.len() != n {
            return Err(usage(format!("expected {n} comma-separated integers, got '{src}'")));
        }
    }
    Ok(vals)
}

fn cmd_bsp(a: BspArgs) -> Outcome {
    no_dot(a.format)?;
    let roots: RootSet = if let Some(src) = &a.two_monomial {
        let v = parse_ints(src, Some(4))?;
        two_monomial_roots(&TwoMonomialIdeal::new(v[0], v[1], v[2], v[3])?)
    } else if let Some(src) = &a.principal {
        principal_roots(&ExponentVector::new(parse_ints(src, None)?))?
    } else if let Some(name) = &a.fixture {
        fixture_roots(name)?
    } else if let Some(src) = &a.ideal {
        roots_for(&parse_ideal(&read_arg(src)?, None)?)?
    } else {
        return Err(usage("one of --ideal, --principal, --two-monomial, --fixture is required"));
    };
    let out = match a.format {
        Format::Json => json(&roots),
        _ => format!("{roots}\n"),
    };
    Ok((0, out))
}

fn cmd_check(a: ZetaArgs) -> Outcome {
    no_dot(a.format)?;
    let req = load_request(&a.input, &a.flags)?;
    let report = check_inclusion(&req)?;
    let status = if report.holds { 0 } else { EXIT_VIOLATION };
    let out = match a.format {
        Format::Json => json(&report),
        _ => {
            let verdict = if report.holds { "holds" } else { "violated" };
            let mut s = format!("inclusion {verdict}\nroots: {}\n", report.roots);
            s.push_str(&poles_text(&report.poles));
            if !report.holds {
                writeln!(s, "poles that are not roots: {}", list(&report.witnesses)).unwrap();
            }
            s
        }
    };
    Ok((status, out))
}

fn family_for(kind: FamilyKind, bound: u32, ideal: &MonomialIdeal) -> Result<FamilySpec, Failure> {
    Ok(match kind {
        FamilyKind::Monomials => FamilySpec::Monomials { degree_bound: bound },
        FamilyKind::Case1 => FamilySpec::SquarePlusPower { degree_bound: bound },
        FamilyKind::Case2 => FamilySpec::SquareMixedPower { degree_bound: bound },
        FamilyKind::Covering => {
            let two = TwoMonomialIdeal::from_ideal(ideal).ok_or_else(|| {
                Failure::from(Error::InvalidInput("the covering family needs two generators in two variables".into()))
            })?;
            two_monomial_covering_family(&two)
        }
    })
}

fn cmd_search(a: SearchArgs) -> Outcome {
    no_dot(a.format)?;
    if a.degree_bound == 0 {
        return Err(usage("--degree-bound must be positive"));
    }
    let ideal = parse_ideal(&read_arg(&a.ideal)?, None)?;
    let family = family_for(a.family, a.degree_bound, &ideal)?;
    let opts = SearchOptions { variant: a.flags.variant(), policy: a.flags.policy(), ..SearchOptions::from_env()? };
    let report = coverage_search(&ideal, &family, &opts)?;
    let status = if report.bad_forms().next().is_some() { EXIT_VIOLATION } else { 0 };
    let out = match a.format {
        Format::Json => json(&report),
        _ => {
            let mut s = format!("ideal {}\n{}\nroots: {}\n", report.ideal, report.scope, report.roots);
            writeln!(s, "attained: {}", report.attained).unwrap();
            writeln!(s, "unattained: {}", report.unattained).unwrap();
            for f in &report.forms {
                match &f.error {
                    Some(e) => writeln!(s, "g = {}: skipped ({e})", f.text).unwrap(),
                    None if f.bad_poles.is_empty() => writeln!(s, "g = {}: poles {}", f.text, list(&f.poles)).unwrap(),
                    None => writeln!(s, "g = {}: poles {}; not roots: {}", f.text, list(&f.poles), list(&f.bad_poles))
                        .unwrap(),
                }
            }
            s
        }
    };
    Ok((status, out))
}

#[derive(Serialize)]
struct ResolveOutput {
    diagram: crate::resolution::ResolutionDiagram,
    zeta: crate::arith::NormalForm,
    candidates: Vec<CandidateAnalysis>,
}

fn cmd_resolve(a: ResolveArgs) -> Outcome {
    let ideal = parse_ideal(&read_arg(&a.input.ideal)?, None)?;
    let form = parse_polynomial(&read_arg(&a.input.form)?, ideal.dim())?;
    let diagram = principalize(&ideal, &form)?;
    let out = match a.format {
        Format::Dot => diagram.to_dot(),
        Format::Json => {
            let zeta = zeta_from_resolution(&diagram)?.normalize();
            let mut seen: Vec<Rational> = diagram.nodes.iter().filter_map(|n| n.candidate()).collect();
            seen.sort_by(|a, b| b.cmp(a));
            seen.dedup();
            let candidates = seen.iter().map(|s0| analyze_candidate(&diagram, s0)).collect::<Result<_, _>>()?;
            json(&ResolveOutput { diagram, zeta, candidates })
        }
        Format::Text => {
            let mut s = String::new();
            for n in &diagram.nodes {
                writeln!(s, "{}({},{})", n.label, n.n, n.nu).unwrap();
            }
            for e in &diagram.edges {
                writeln!(s, "{} -- {}", diagram.nodes[e.a].label, diagram.nodes[e.b].label).unwrap();
            }
            writeln!(s, "Z(s) = {}", zeta_from_resolution(&diagram)?.normalize()).unwrap();
            s
        }
    };
    Ok((0, out))
}
