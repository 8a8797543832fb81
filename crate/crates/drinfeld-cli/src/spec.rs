//! Named form specs: the colon-separated names commands accept wherever a
//! form is expected, e.g. `h`, `delta`, `gk:8`, `fkn:10:1`, `fknl:8:2:1`.

use drinfeld::forms::{self, ModularForm};
use drinfeld::Fq;

use crate::error::CliError;

/// A parsed form spec.  `build` turns it into a series-backed form at a
/// chosen precision; `slug` is its filesystem-safe name for cache keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormSpec {
    /// The weight q+1, type 1 cusp form with expansion coefficients a^q.
    H,
    /// The discriminant h^{q-1}.
    Delta,
    /// The weight q-1 Eisenstein series, normalized to constant term 1.
    G,
    /// The weight 2 quasi-modular form with expansion coefficients a.
    FalseE,
    /// h^2 g — an eigenform whose eigenvalue is no power of the prime.
    H2G,
    /// h^2 g^2 — an eigenform carrying no A-expansion.
    H2G2,
    /// The normalized Eisenstein series of weight k.
    Gk { k: u64 },
    /// The family member of weight q+1+s(q-1), index 1.
    Fs { s: u64 },
    /// The family member of weight q^nu + 1, index 1.
    Fnu { nu: u32 },
    /// The single-family form of weight k and index n.
    Fkn { k: u64, n: u64 },
    /// The twisted family member of weight (k-n)q^l + n and index n.
    Fknl { k: u64, n: u64, l: u32 },
}

const SPEC_HELP: &str =
    "valid form specs: h, delta, g, falsee, h2g, h2g2, gk:K, fs:S, fnu:NU, fkn:K:N, fknl:K:N:L";

fn number(piece: &str, spec: &str) -> Result<u64, CliError> {
    piece
        .parse::<u64>()
        .map_err(|_| CliError::Usage(format!("bad number {piece:?} in form spec {spec:?}")))
}

fn small_number(piece: &str, spec: &str) -> Result<u32, CliError> {
    u32::try_from(number(piece, spec)?)
        .map_err(|_| CliError::Usage(format!("number {piece:?} in form spec {spec:?} is too large")))
}

impl FormSpec {
    pub fn parse(spec: &str) -> Result<FormSpec, CliError> {
        let pieces: Vec<&str> = spec.split(':').collect();
        let wrong_arity = |want: &str| {
            CliError::Usage(format!("form spec {spec:?} needs the shape {want}; {SPEC_HELP}"))
        };
        match pieces[0] {
            "h" | "delta" | "g" | "falsee" | "h2g" | "h2g2" if pieces.len() != 1 => {
                Err(wrong_arity(pieces[0]))
            }
            "h" => Ok(FormSpec::H),
            "delta" => Ok(FormSpec::Delta),
            "g" => Ok(FormSpec::G),
            "falsee" => Ok(FormSpec::FalseE),
            "h2g" => Ok(FormSpec::H2G),
            "h2g2" => Ok(FormSpec::H2G2),
            "gk" => match pieces[..] {
                [_, k] => Ok(FormSpec::Gk { k: number(k, spec)? }),
                _ => Err(wrong_arity("gk:K")),
            },
            "fs" => match pieces[..] {
                [_, s] => Ok(FormSpec::Fs { s: number(s, spec)? }),
                _ => Err(wrong_arity("fs:S")),
            },
            "fnu" => match pieces[..] {
                [_, nu] => {
                    let nu = small_number(nu, spec)?;
                    if nu == 0 {
                        return Err(CliError::Usage(
                            "the fnu family starts at fnu:1".to_string(),
                        ));
                    }
                    Ok(FormSpec::Fnu { nu })
                }
                _ => Err(wrong_arity("fnu:NU")),
            },
            "fkn" => match pieces[..] {
                [_, k, n] => Ok(FormSpec::Fkn { k: number(k, spec)?, n: number(n, spec)? }),
                _ => Err(wrong_arity("fkn:K:N")),
            },
            "fknl" => match pieces[..] {
                [_, k, n, l] => Ok(FormSpec::Fknl {
                    k: number(k, spec)?,
                    n: number(n, spec)?,
                    l: small_number(l, spec)?,
                }),
                _ => Err(wrong_arity("fknl:K:N:L")),
            },
            other => Err(CliError::Usage(format!("unknown form {other:?}; {SPEC_HELP}"))),
        }
    }

    /// Filesystem-safe name, used in cache keys.
    pub fn slug(&self) -> String {
        match self {
            FormSpec::H => "h".to_string(),
            FormSpec::Delta => "delta".to_string(),
            FormSpec::G => "g".to_string(),
            FormSpec::FalseE => "falsee".to_string(),
            FormSpec::H2G => "h2g".to_string(),
            FormSpec::H2G2 => "h2g2".to_string(),
            FormSpec::Gk { k } => format!("gk-{k}"),
            FormSpec::Fs { s } => format!("fs-{s}"),
            FormSpec::Fnu { nu } => format!("fnu-{nu}"),
            FormSpec::Fkn { k, n } => format!("fkn-{k}-{n}"),
            FormSpec::Fknl { k, n, l } => format!("fknl-{k}-{n}-{l}"),
        }
    }

    pub fn build(&self, fq: &Fq, prec: usize) -> Result<ModularForm, CliError> {
        Ok(match self {
            FormSpec::H => forms::h(fq, prec),
            FormSpec::Delta => forms::delta(fq, prec),
            FormSpec::G => forms::g(fq, prec),
            FormSpec::FalseE => forms::false_eisenstein(fq, prec),
            FormSpec::H2G => {
                let h = forms::h(fq, prec);
                h.pow(fq, 2).mul(fq, &forms::g(fq, prec))
            }
            FormSpec::H2G2 => {
                let h = forms::h(fq, prec);
                h.pow(fq, 2).mul(fq, &forms::g(fq, prec).pow(fq, 2))
            }
            FormSpec::Gk { k } => forms::eisenstein_g_k(fq, *k, prec)?,
            FormSpec::Fs { s } => forms::f_s(fq, *s, prec),
            FormSpec::Fnu { nu } => forms::f_nu(fq, *nu, prec),
            FormSpec::Fkn { k, n } => forms::f_kn(fq, *k, *n, prec)?,
            FormSpec::Fknl { k, n, l } => forms::f_knl(fq, *k, *n, *l, prec)?,
        })
    }

    /// The default eigenvalue expectation lambda = prime^e for `verify
    /// eigen`, from the classical catalog: single families have e = n,
    /// Eisenstein series have e = k, and h^2 g^2 has e = 4.  Forms without a
    /// cataloged power (the quasi-modular falsee, h^2 g) return None, and
    /// the eigenvalue is reported without an assertion unless the caller
    /// states an expectation.
    pub fn eigen_exponent(&self, fq: &Fq) -> Option<u64> {
        match self {
            FormSpec::H => Some(1),
            FormSpec::Delta => Some(fq.q() - 1),
            FormSpec::G => Some(fq.q() - 1),
            FormSpec::FalseE => None,
            FormSpec::H2G => None,
            FormSpec::H2G2 => Some(4),
            FormSpec::Gk { k } => Some(*k),
            FormSpec::Fs { .. } => Some(1),
            FormSpec::Fnu { .. } => Some(1),
            FormSpec::Fkn { n, .. } => Some(*n),
            FormSpec::Fknl { n, .. } => Some(*n),
        }
    }
}
