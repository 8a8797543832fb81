//! Configuration resolution: defaults, then the optional config file, then
//! command-line flags, producing the field, precision, cache location, and
//! output format a run uses.  Every run prints the fully resolved
//! configuration as a `#`-prefixed header on stderr, keeping stdout
//! canonical.

use std::path::PathBuf;

use serde::Deserialize;

use drinfeld::algebra::text::{modulus_string, parse_modulus};
use drinfeld::Fq;

use crate::error::CliError;
use crate::GlobalArgs;

/// Output rendering for reports and verdicts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

/// The optional JSON config file; any subset of the fields may appear, and
/// command-line flags override file entries.
#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    p: Option<u64>,
    e: Option<u32>,
    modulus: Option<String>,
    prec: Option<usize>,
    cache_dir: Option<PathBuf>,
    format: Option<String>,
}

/// The fully resolved run configuration.
pub struct Resolved {
    pub fq: Fq,
    pub prec: usize,
    pub cache_dir: Option<PathBuf>,
    pub format: OutputFormat,
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
}

/// Splits a prime power q into (p, e); `None` when q is not a prime power.
fn prime_power_parts(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = q;
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

pub fn resolve(args: &GlobalArgs) -> Result<Resolved, CliError> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io { path: path.clone(), err: e.to_string() })?;
            serde_json::from_str::<ConfigFile>(&text)
                .map_err(|e| CliError::Usage(format!("bad config file {}: {e}", path.display())))?
        }
        None => ConfigFile::default(),
    };

    let mut p = args.p.or(file.p);
    let mut e = args.e.or(file.e);
    if let Some(q) = args.q {
        let (qp, qe) = prime_power_parts(q)
            .ok_or_else(|| CliError::Usage(format!("q = {q} is not a prime power")))?;
        if p.is_some_and(|v| v != qp) || e.is_some_and(|v| v != qe) {
            return Err(CliError::Usage(format!(
                "q = {q} means p = {qp}, e = {qe}, contradicting the explicit --p/--e"
            )));
        }
        p = Some(qp);
        e = Some(qe);
    }
    let p = p.unwrap_or(3);
    let e = e.unwrap_or(1);

    let modulus_text = args.modulus.clone().or(file.modulus);
    let modulus = match &modulus_text {
        Some(text) => Some(parse_modulus(p, text).map_err(CliError::Text)?),
        None => None,
    };
    let fq = Fq::new(p, e, modulus.as_deref()).map_err(CliError::Field)?;

    let prec = args.prec.or(file.prec).unwrap_or(60);
    if prec == 0 {
        return Err(CliError::Usage("precision must be at least 1".to_string()));
    }

    let format = match (&args.format, file.format.as_deref()) {
        (Some(f), _) => *f,
        (None, Some("text")) => OutputFormat::Text,
        (None, Some("json")) => OutputFormat::Json,
        (None, Some(other)) => {
            return Err(CliError::Usage(format!(
                "config format must be \"text\" or \"json\", not {other:?}"
            )))
        }
        (None, None) => OutputFormat::Text,
    };

    Ok(Resolved {
        fq,
        prec,
        cache_dir: args.cache_dir.clone().or(file.cache_dir),
        format,
        jobs: args.jobs,
        out: args.out.clone(),
    })
}

/// The one-line resolved-configuration header, printed to stderr.
pub fn header(r: &Resolved, command: &str) -> String {
    let fq = &r.fq;
    let modulus =
        fq.modulus_coords().map(modulus_string).unwrap_or_else(|| "none".to_string());
    let cache = r
        .cache_dir
        .as_ref()
        .map(|d| d.display().to_string())
        .unwrap_or_else(|| "none".to_string());
    let jobs = r.jobs.map(|j| j.to_string()).unwrap_or_else(|| "auto".to_string());
    let format = match r.format {
        OutputFormat::Text => "text",
        OutputFormat::Json => "json",
    };
    format!(
        "# drinfeld {command}: q={} (p={}, e={}) modulus={modulus} prec={} jobs={jobs} cache-dir={cache} format={format}",
        fq.q(),
        fq.p(),
        fq.e(),
        r.prec,
    )
}
