//! Command bodies.  Each command resolves its inputs, calls the library,
//! and returns the document to print plus a flag saying whether every
//! expected verdict matched (exit status 2 when one did not).  Deliverable
//! documents — series, A-expansions, g/h coordinates — go to stdout in
//! their canonical byte form; check outcomes are rendered as reports in the
//! configured format.

use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;

use drinfeld::algebra::text::{parse_poly, poly_string, rat_string};
use drinfeld::forms::{self, GhOutcome, GhTerm, ModularForm, RecoverOptions, RecoverOutcome};
use drinfeld::goss::{goss_table, GossTable, Lattice};
use drinfeld::hecke::{eigen_solve, hecke_apply, EigenOutcome};
use drinfeld::io;
use drinfeld::verify::{self, CheckRecord, CongruenceVerdict, Modulus, Report, SearchRanges};
use drinfeld::{Fq, RatK, TruncSeries};

use crate::config::{OutputFormat, Resolved};
use crate::error::CliError;
use crate::spec::FormSpec;

/// What a command hands back to `main`: the bytes for stdout (or `--out`)
/// and whether all expected verdicts matched.
pub struct CmdOutput {
    pub stdout: String,
    pub ok: bool,
}

impl CmdOutput {
    fn done(stdout: String) -> CmdOutput {
        CmdOutput { stdout, ok: true }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.to_path_buf(), err: e.to_string() })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io { path: path.to_path_buf(), err: e.to_string() })
}

/// Filesystem-safe encoding of the field modulus for cache keys.
fn modulus_key(fq: &Fq) -> String {
    match fq.modulus_coords() {
        None => "none".to_string(),
        Some(coords) => {
            coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("-")
        }
    }
}

fn prepared_cache_dir(r: &Resolved) -> Result<Option<&Path>, CliError> {
    match &r.cache_dir {
        None => Ok(None),
        Some(dir) => {
            fs::create_dir_all(dir)
                .map_err(|e| CliError::Io { path: dir.clone(), err: e.to_string() })?;
            Ok(Some(dir))
        }
    }
}

/// The series of a named form, truncated to exactly the requested precision
/// (products of forms of positive order can come out longer), and routed
/// through the cache when one is configured.  A cache file that is missing,
/// unreadable, malformed, or built for a different precision is recomputed
/// and overwritten; a valid hit is bit-identical to a cold run because the
/// file format is canonical.
fn cached_series(
    r: &Resolved,
    slug: &str,
    build: impl FnOnce() -> Result<TruncSeries, CliError>,
) -> Result<TruncSeries, CliError> {
    let fq = &r.fq;
    let build = || -> Result<TruncSeries, CliError> {
        let s = build()?;
        Ok(if s.prec() > r.prec { s.truncated(r.prec) } else { s })
    };
    let Some(dir) = prepared_cache_dir(r)? else {
        return build();
    };
    let path = dir.join(format!(
        "form-q{}-m{}-{}-N{}.json",
        fq.q(),
        modulus_key(fq),
        slug,
        r.prec
    ));
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(s) = io::series_from_str(fq, &text) {
            if s.prec() == r.prec {
                return Ok(s);
            }
        }
    }
    let s = build()?;
    write_file(&path, &io::series_to_string(fq, &s))?;
    Ok(s)
}

/// A period-lattice Goss table covering index n, through the cache when one
/// is configured.
fn goss_for(r: &Resolved, n: usize) -> Result<GossTable, CliError> {
    let fq = &r.fq;
    let Some(dir) = prepared_cache_dir(r)? else {
        return Ok(goss_table(fq, &Lattice::Period, n));
    };
    let path = dir.join(format!("goss-q{}-m{}-period-n{}.json", fq.q(), modulus_key(fq), n));
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(table) = io::goss_from_str(fq, &text) {
            if table.nmax() >= n && matches!(table.lattice(), Lattice::Period) {
                return Ok(table);
            }
        }
    }
    let table = goss_table(fq, &Lattice::Period, n);
    write_file(&path, &io::goss_to_string(fq, &table))?;
    Ok(table)
}

fn report_output(r: &Resolved, report: &Report) -> String {
    match r.format {
        OutputFormat::Text => report.render_text(),
        OutputFormat::Json => io::report_to_string(report),
    }
}

fn one_record_output(
    r: &Resolved,
    check: &str,
    parameters: String,
    verdict: bool,
    witness: Option<String>,
) -> CmdOutput {
    let report = Report::new(vec![CheckRecord::new(check, parameters, verdict, witness)]);
    CmdOutput { stdout: report_output(r, &report), ok: verdict }
}

// ---------------------------------------------------------------- expand --

#[derive(Args)]
pub struct ExpandArgs {
    /// Named form: h, delta, g, falsee, h2g, h2g2, gk:K, fs:S, fnu:NU,
    /// fkn:K:N, fknl:K:N:L
    #[arg(long, conflicts_with_all = ["fkn", "input"])]
    pub form: Option<String>,
    /// Single-family weight and index, as two integers
    #[arg(long, num_args = 2, value_names = ["K", "N"], conflicts_with = "input")]
    pub fkn: Option<Vec<u64>>,
    /// A-expansion document to expand
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
}

pub fn expand(r: &Resolved, args: &ExpandArgs) -> Result<CmdOutput, CliError> {
    let fq = &r.fq;
    let series = match (&args.form, &args.fkn, &args.input) {
        (Some(text), None, None) => {
            let spec = FormSpec::parse(text)?;
            cached_series(r, &spec.slug(), || Ok(spec.build(fq, r.prec)?.into_series()))?
        }
        (None, Some(kn), None) => {
            let spec = FormSpec::Fkn { k: kn[0], n: kn[1] };
            cached_series(r, &spec.slug(), || Ok(spec.build(fq, r.prec)?.into_series()))?
        }
        (None, None, Some(path)) => {
            let ax = io::aexp_from_str(fq, &read_file(path)?)?;
            let table = goss_for(r, ax.n() as usize)?;
            forms::expand_with_table(fq, &table, &ax, r.prec)?
        }
        _ => {
            return Err(CliError::Usage(
                "expand needs exactly one of --form, --fkn, --in".to_string(),
            ))
        }
    };
    Ok(CmdOutput::done(io::series_to_string(fq, &series)))
}

// ----------------------------------------------------------------- hecke --

#[derive(Args)]
pub struct HeckeArgs {
    /// Series document the operator acts on
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Monic prime polynomial, e.g. "T" or "T^2+1"
    #[arg(long)]
    pub prime: String,
    /// Weight of the form the series expands
    #[arg(long)]
    pub weight: u64,
    /// Type of the form
    #[arg(long = "type", default_value_t = 0)]
    pub ty: u64,
}

pub fn hecke(r: &Resolved, args: &HeckeArgs) -> Result<CmdOutput, CliError> {
    let fq = &r.fq;
    let s = io::series_from_str(fq, &read_file(&args.input)?)?;
    let prime = parse_poly(fq, &args.prime)?;
    let f = ModularForm::new(fq, args.weight, args.ty, false, s);
    let out = hecke_apply(fq, &f, &prime)?;
    Ok(CmdOutput::done(io::series_to_string(fq, out.series())))
}

// --------------------------------------------------------------- recover --

#[derive(Args)]
pub struct RecoverArgs {
    /// Series document to recover from
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Index n of the sought expansion sum_a c_a G_n(t_a)
    #[arg(long)]
    pub n: u64,
    /// Cap on the degree of recovered indices
    #[arg(long = "max-deg")]
    pub max_deg: Option<usize>,
    /// Try the single-family ansatz c_a = c_1 a^E first
    #[arg(long = "hint-exponent", value_name = "E")]
    pub hint_exponent: Option<u64>,
}

pub fn recover(r: &Resolved, args: &RecoverArgs) -> Result<CmdOutput, CliError> {
    let fq = &r.fq;
    if args.n == 0 {
        return Err(CliError::Usage("the index n must be at least 1".to_string()));
    }
    let s = io::series_from_str(fq, &read_file(&args.input)?)?;
    let opts = RecoverOptions { max_deg: args.max_deg, hint_exponent: args.hint_exponent };
    let params = format!("n={} prec={}", args.n, s.prec());
    match forms::aexp_recover(fq, &s, args.n, &opts)? {
        RecoverOutcome::Recovered(ax) => Ok(CmdOutput::done(io::aexp_to_string(fq, &ax))),
        RecoverOutcome::Inconsistent { t_power } => Ok(one_record_output(
            r,
            "recover",
            params,
            false,
            Some(format!(
                "Inconsistent: no index-{} expansion matches; every candidate fails by t^{}",
                args.n, t_power
            )),
        )),
        RecoverOutcome::Underdetermined { degree } => Ok(one_record_output(
            r,
            "recover",
            params,
            false,
            Some(format!(
                "Underdetermined: this precision does not pin down the degree-{degree} coefficients"
            )),
        )),
    }
}

// ------------------------------------------------------------- ghexpress --

#[derive(Args)]
pub struct GhexpressArgs {
    /// Series document to express
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Weight of the form the series expands
    #[arg(long)]
    pub weight: u64,
    /// Type of the form
    #[arg(long = "type", default_value_t = 0)]
    pub ty: u64,
}

fn gh_render(r: &Resolved, terms: &[GhTerm]) -> String {
    let fq = &r.fq;
    match r.format {
        OutputFormat::Text => {
            if terms.is_empty() {
                return "0\n".to_string();
            }
            let rendered: Vec<String> = terms
                .iter()
                .map(|t| format!("({}) g^{} h^{}", rat_string(fq, &t.coeff), t.g_exp, t.h_exp))
                .collect();
            format!("{}\n", rendered.join(" + "))
        }
        OutputFormat::Json => {
            let terms: Vec<serde_json::Value> = terms
                .iter()
                .map(|t| {
                    serde_json::json!({
                        "g_exp": t.g_exp,
                        "h_exp": t.h_exp,
                        "coeff": rat_string(fq, &t.coeff),
                    })
                })
                .collect();
            format!("{}\n", serde_json::json!({ "format": 1, "terms": terms }))
        }
    }
}

pub fn ghexpress(r: &Resolved, args: &GhexpressArgs) -> Result<CmdOutput, CliError> {
    let fq = &r.fq;
    let s = io::series_from_str(fq, &read_file(&args.input)?)?;
    match forms::gh_express_series(fq, &s, args.weight, args.ty)? {
        GhOutcome::InSpan(terms) => Ok(CmdOutput::done(gh_render(r, &terms))),
        GhOutcome::NotInSpan { t_power } => Ok(one_record_output(
            r,
            "ghexpress",
            format!("weight={} type={} prec={}", args.weight, args.ty, s.prec()),
            false,
            Some(format!("not in the g/h span; every candidate fails by t^{t_power}")),
        )),
    }
}

// ---------------------------------------------------------------- verify --

#[derive(Args)]
pub struct VCongruenceArgs {
    /// Family name; F is the twisted single-family ladder F_{k,n,l}
    #[arg(long, default_value = "F")]
    pub family: String,
    /// Weight of the base family member
    #[arg(long)]
    pub k: u64,
    /// Index of the family
    #[arg(long)]
    pub n: u64,
    /// Prime degree d; requires q^d > n
    #[arg(long)]
    pub d: u32,
    /// Twist level nu of the lower rung
    #[arg(long)]
    pub nu: u32,
}

pub fn verify_congruence(r: &Resolved, args: &VCongruenceArgs) -> Result<CmdOutput, CliError> {
    if args.family != "F" {
        return Err(CliError::Usage(format!(
            "unknown congruence family {:?}; only F (the twisted single-family ladder) is available",
            args.family
        )));
    }
    let fq = &r.fq;
    let qd = (fq.q() as u128).checked_pow(args.d).unwrap_or(u128::MAX);
    if args.d == 0 || qd <= args.n as u128 {
        return Err(CliError::Usage(format!(
            "the congruence ladder needs q^d > n, but q^{} <= {}",
            args.d, args.n
        )));
    }
    let records = verify::congruence_ladder(fq, args.k, args.n, args.d, args.nu, r.prec)?;
    let report = Report::new(records);
    let ok = report.all_hold();
    Ok(CmdOutput { stdout: report_output(r, &report), ok })
}

#[derive(Args)]
pub struct VCongruencePairArgs {
    /// First form spec
    #[arg(long)]
    pub a: String,
    /// Second form spec
    #[arg(long)]
    pub b: String,
    /// Modulus base: a monic squarefree polynomial, or bracket:D for
    /// T^{q^D} - T
    #[arg(long = "mod", value_name = "BASE")]
    pub modulus_base: String,
    /// The power of the base the congruence is checked against
    #[arg(long)]
    pub exponent: u32,
    /// Expect the congruence to fail; exit 0 when it does
    #[arg(long = "expect-fail", default_value_t = false)]
    pub expect_fail: bool,
}

fn modulus_from_flag(fq: &Fq, text: &str, exponent: u32) -> Result<Modulus, CliError> {
    if let Some(d) = text.strip_prefix("bracket:") {
        let d: u32 = d
            .parse()
            .map_err(|_| CliError::Usage(format!("bad bracket degree {d:?} in --mod")))?;
        if d == 0 {
            return Err(CliError::Usage("bracket degrees start at 1".to_string()));
        }
        Ok(Modulus::bracket(fq, d, exponent))
    } else {
        Ok(Modulus::new(fq, parse_poly(fq, text)?, exponent)?)
    }
}

pub fn verify_congruence_pair(
    r: &Resolved,
    args: &VCongruencePairArgs,
) -> Result<CmdOutput, CliError> {
    let fq = &r.fq;
    let prec = r.prec;
    let fa = FormSpec::parse(&args.a)?.build(fq, prec)?;
    let fb = FormSpec::parse(&args.b)?.build(fq, prec)?;
    let modulus = modulus_from_flag(fq, &args.modulus_base, args.exponent)?;
    let verdict = verify::congruent_mod(fq, fa.series(), fb.series(), &modulus)?;
    let matched = verdict.holds() != args.expect_fail;
    let witness = match &verdict {
        CongruenceVerdict::Congruent if args.expect_fail => {
            Some("the congruence holds but was expected to fail".to_string())
        }
        CongruenceVerdict::NotCongruent { t_power, prime } => Some(format!(
            "first failure at t^{} mod {}",
            t_power,
            poly_string(fq, prime)
        )),
        CongruenceVerdict::Congruent => None,
    };
    Ok(one_record_output(
        r,
        "congruence-pair",
        format!(
            "a={} b={} modulus=({})^{} prec={}{}",
            args.a,
            args.b,
            poly_string(fq, modulus.base()),
            args.exponent,
            prec,
            if args.expect_fail { " expected=fail" } else { "" }
        ),
        matched,
        witness,
    ))
}

#[derive(Args)]
pub struct VEigenArgs {
    /// Form spec whose eigenvalue is solved
    #[arg(long)]
    pub form: String,
    /// Monic prime polynomial
    #[arg(long)]
    pub prime: String,
    /// Expect lambda = prime^N (default: the cataloged power of the form,
    /// when there is one)
    #[arg(long = "expect-exponent", value_name = "N", conflicts_with = "expect_no_exponent_upto")]
    pub expect_exponent: Option<u64>,
    /// Expect lambda to differ from prime^n for every n <= B
    #[arg(long = "expect-no-exponent-upto", value_name = "B")]
    pub expect_no_exponent_upto: Option<u64>,
}

pub fn verify_eigen(r: &Resolved, args: &VEigenArgs) -> Result<CmdOutput, CliError> {
    let fq = &r.fq;
    let prec = r.prec;
    let spec = FormSpec::parse(&args.form)?;
    let f = spec.build(fq, prec)?;
    let prime = parse_poly(fq, &args.prime)?;
    let base = format!("form={} prime={}", args.form, args.prime);
    let record = match eigen_solve(fq, &f, &prime)? {
        EigenOutcome::NotEigen { t_power } => CheckRecord::new(
            "eigen",
            format!("{base} prec={prec}"),
            false,
            Some(format!("not an eigenform; T_p f != lambda f first at t^{t_power}")),
        ),
        EigenOutcome::Eigen(lambda) => {
            let lam_text = rat_string(fq, &lambda);
            let default_exp =
                if args.expect_no_exponent_upto.is_some() { None } else { spec.eigen_exponent(fq) };
            if let Some(exp) = args.expect_exponent.or(default_exp) {
                let expected = RatK::from_poly(prime.pow(fq, exp));
                let ok = lambda == expected;
                CheckRecord::new(
                    "eigen",
                    format!("{base} lambda = {lam_text} expected=prime^{exp} prec={prec}"),
                    ok,
                    (!ok).then(|| {
                        format!("lambda = {lam_text} != ({})^{exp}", poly_string(fq, &prime))
                    }),
                )
            } else if let Some(bound) = args.expect_no_exponent_upto {
                let clash =
                    (0..=bound).find(|&e| lambda == RatK::from_poly(prime.pow(fq, e)));
                CheckRecord::new(
                    "eigen",
                    format!("{base} lambda = {lam_text} expected=no-prime-power<={bound} prec={prec}"),
                    clash.is_none(),
                    clash.map(|e| format!("lambda = ({})^{e}", poly_string(fq, &prime))),
                )
            } else {
                CheckRecord::new("eigen", format!("{base} lambda = {lam_text} prec={prec}"), true, None)
            }
        }
    };
    let report = Report::new(vec![record]);
    let ok = report.all_hold();
    Ok(CmdOutput { stdout: report_output(r, &report), ok })
}

#[derive(Args)]
pub struct VProductArgs {
    /// Left factor index n (family sum_a a^e G_n(t_a))
    #[arg(long)]
    pub n: u64,
    /// Left factor coefficient exponent e
    #[arg(long = "exp", value_name = "E")]
    pub exp: u64,
    /// Right factor index n'
    #[arg(long)]
    pub n2: u64,
    /// Right factor coefficient exponent e'
    #[arg(long = "exp2", value_name = "E2")]
    pub exp2: u64,
    /// Expect the identity to fail; exit 0 when it does
    #[arg(long = "expect-fail", default_value_t = false)]
    pub expect_fail: bool,
}

pub fn verify_product(r: &Resolved, args: &VProductArgs) -> Result<CmdOutput, CliError> {
    let fq = &r.fq;
    if args.n == 0 || args.n2 == 0 {
        return Err(CliError::Usage("product factor indices must be at least 1".to_string()));
    }
    let prec = r.prec;
    let left = verify::monomial_family_for_prec(fq, args.n, args.exp, prec);
    let right = verify::monomial_family_for_prec(fq, args.n2, args.exp2, prec);
    let target =
        verify::monomial_family_for_prec(fq, args.n + args.n2, args.exp + args.exp2, prec);
    let verdict = verify::product_identity_check(fq, &[left, right], &target, prec)?;
    let matched = verdict.holds() != args.expect_fail;
    let witness = match &verdict {
        verify::ProductVerdict::Holds if args.expect_fail => {
            Some("the identity holds but was expected to fail".to_string())
        }
        verify::ProductVerdict::Fails { t_power } => {
            Some(format!("the sides first differ at t^{t_power}"))
        }
        verify::ProductVerdict::Holds => None,
    };
    Ok(one_record_output(
        r,
        "product-identity",
        format!(
            "n={} e={} n'={} e'={} prec={}{}",
            args.n,
            args.exp,
            args.n2,
            args.exp2,
            prec,
            if args.expect_fail { " expected=fail" } else { "" }
        ),
        matched,
        witness,
    ))
}

#[derive(Args)]
pub struct VPowersumArgs {
    /// Largest exponent r in the table
    #[arg(long)]
    pub r: u64,
    /// Largest degree bound d scanned
    #[arg(long)]
    pub dmax: u32,
}

pub fn verify_powersum(r: &Resolved, args: &VPowersumArgs) -> Result<CmdOutput, CliError> {
    if args.r == 0 || args.dmax == 0 {
        return Err(CliError::Usage("powersum needs r >= 1 and dmax >= 1".to_string()));
    }
    let fq = &r.fq;
    let report = verify::min_d(fq, args.r, args.dmax);
    let stdout = match r.format {
        OutputFormat::Text => {
            let mut out = String::new();
            for j in 1..=args.r {
                let row: Vec<String> = (1..=args.dmax)
                    .map(|d| format!("d={d}: {}", poly_string(fq, report.sum(j, d))))
                    .collect();
                out.push_str(&format!("j={j}  {}\n", row.join("  ")));
            }
            match report.min_d {
                Some(d) => out.push_str(&format!("d_r = {d}\n")),
                None => out.push_str(&format!("d_r not reached through dmax={}\n", args.dmax)),
            }
            out
        }
        OutputFormat::Json => {
            let table: Vec<Vec<String>> = (1..=args.r)
                .map(|j| {
                    (1..=args.dmax).map(|d| poly_string(fq, report.sum(j, d))).collect()
                })
                .collect();
            format!(
                "{}\n",
                serde_json::json!({
                    "format": 1,
                    "r": report.r,
                    "dmax": report.dmax,
                    "table": table,
                    "min_d": report.min_d,
                })
            )
        }
    };
    Ok(CmdOutput { stdout, ok: report.min_d.is_some() })
}

#[derive(Args)]
pub struct VThm1Args {
    /// Weight k
    #[arg(long)]
    pub k: u64,
    /// Index n
    #[arg(long)]
    pub n: u64,
    /// Expect the hypothesis to fail; exit 0 when it does
    #[arg(long = "expect-fail", default_value_t = false)]
    pub expect_fail: bool,
}

pub fn verify_thm1(r: &Resolved, args: &VThm1Args) -> Result<CmdOutput, CliError> {
    if args.n == 0 {
        return Err(CliError::Usage("the index n must be at least 1".to_string()));
    }
    let outcome = verify::thm1_hypothesis(&r.fq, args.k, args.n);
    let matched = outcome.is_ok() != args.expect_fail;
    let witness = match &outcome {
        Ok(()) if args.expect_fail => {
            Some("the hypothesis holds but was expected to fail".to_string())
        }
        Err(violation) => Some(violation.to_string()),
        Ok(()) => None,
    };
    Ok(one_record_output(
        r,
        "thm1-hypothesis",
        format!(
            "k={} n={}{}",
            args.k,
            args.n,
            if args.expect_fail { " expected=fail" } else { "" }
        ),
        matched,
        witness,
    ))
}

// ---------------------------------------------------------------- search --

#[derive(Args)]
pub struct SearchArgs {
    /// Largest index for both factors
    #[arg(long)]
    pub nmax: u64,
    /// Largest weight for both factors
    #[arg(long)]
    pub kmax: u64,
    /// Largest Frobenius twist
    #[arg(long, default_value_t = 0)]
    pub lmax: u32,
}

pub fn search(r: &Resolved, args: &SearchArgs) -> Result<CmdOutput, CliError> {
    let ranges = SearchRanges { n_max: args.nmax, k_max: args.kmax, l_max: args.lmax };
    let report = verify::search_products(&r.fq, &ranges, r.prec);
    // A completed scan is a success regardless of its findings: refuted
    // candidate identities are data, not failures.
    Ok(CmdOutput::done(report_output(r, &report)))
}
