//! The Hecke operator T_p on truncated t-expansions, and eigenvalue
//! extraction.
//!
//! For a monic irreducible p of degree d and a form f = sum a_n t^n of
//! weight k, the operator acts by
//!
//! ```text
//! T_p f  =  p^k sum_n a_n t_p^n  +  sum_n a_n G_{n,p}(p t),
//! ```
//!
//! where t_p is the uniformizer substitution for p and G_{n,p} are the Goss
//! polynomials of the p-torsion lattice.  Both summands are exact series
//! over K.  An output coefficient at t^j needs every a_n with n <= j q^d:
//! the torsion Goss polynomial G_{n,p} has X-order at least ceil(n / q^d),
//! so terms beyond that range cannot reach t^j.  The output precision is
//! therefore floor(prec(f) / q^d), and requesting more is an error, never a
//! silent truncation.

use crate::algebra::{Fq, PolyA, RatK};
use crate::carlitz::t_sub;
use crate::forms::ModularForm;
use crate::goss::{goss_table, GossTable, Lattice};
use crate::series::TruncSeries;

/// Errors from Hecke application and eigenvalue extraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeckeError {
    /// The operator index must be a monic irreducible polynomial.
    NotPrime(PolyA),
    /// The input series is too short for the requested output precision.
    InsufficientPrecision { required: usize, available: usize },
    /// The context was built for a different weight than the form carries.
    WeightMismatch { context: u64, form: u64 },
    /// Eigenvalue extraction on a series with no nonzero coefficient.
    ZeroSeries,
}

impl std::fmt::Display for HeckeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HeckeError::NotPrime(p) => {
                write!(f, "Hecke operators are indexed by monic irreducible polynomials; got {p:?}")
            }
            HeckeError::InsufficientPrecision { required, available } => write!(
                f,
                "insufficient input precision: the requested output needs the t-expansion \
                 through t^{required}, but only t^{available} is known"
            ),
            HeckeError::WeightMismatch { context, form } => {
                write!(f, "Hecke context built for weight {context}, applied to weight {form}")
            }
            HeckeError::ZeroSeries => {
                write!(f, "eigenvalue extraction needs a nonzero series at the working precision")
            }
        }
    }
}

impl std::error::Error for HeckeError {}

/// Everything T_p needs that depends only on (p, weight, precision budget):
/// the prime, the weight that fixes the p^k prefactor, and the Goss table of
/// the p-torsion lattice through nmax.
///
/// A context built with `nmax` supports output precisions up to
/// floor(nmax / q^d).
#[derive(Clone, Debug)]
pub struct HeckeContext {
    prime: PolyA,
    weight: u64,
    table: GossTable,
}

impl HeckeContext {
    /// Builds the torsion Goss table and checks the order bound
    /// ord G_{n,p} >= ceil(n / q^d) for every n in the table; the bound is
    /// what makes the output precision contract sound.
    pub fn new(fq: &Fq, prime: PolyA, weight: u64, nmax: usize) -> Result<HeckeContext, HeckeError> {
        if !prime.is_monic() || !prime.is_irreducible(fq) {
            return Err(HeckeError::NotPrime(prime));
        }
        let table = goss_table(fq, &Lattice::Torsion(prime.clone()), nmax);
        let d = prime.degree().expect("irreducible polynomials are nonzero") as u32;
        let qd = (fq.q() as usize).pow(d);
        for n in 1..=nmax {
            let bound = n.div_ceil(qd);
            assert!(
                table.ord(n) >= bound,
                "torsion Goss order bound violated at n = {n}: ord = {}, bound = {bound}",
                table.ord(n)
            );
        }
        Ok(HeckeContext { prime, weight, table })
    }

    pub fn prime(&self) -> &PolyA {
        &self.prime
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    /// The largest output precision this context's table supports.
    pub fn max_output_prec(&self, fq: &Fq) -> usize {
        let d = self.prime.degree().expect("primes are nonzero") as u32;
        self.table.nmax() / (fq.q() as usize).pow(d)
    }

    /// Applies T_p to f, truncated to output precision `n_out`.  The input
    /// must be known through t^{n_out q^d}.
    pub fn apply(&self, fq: &Fq, f: &ModularForm, n_out: usize) -> Result<ModularForm, HeckeError> {
        if f.weight() != self.weight {
            return Err(HeckeError::WeightMismatch { context: self.weight, form: f.weight() });
        }
        let d = self.prime.degree().expect("primes are nonzero") as u32;
        let qd = (fq.q() as usize).pow(d);
        let n_in = n_out.checked_mul(qd).expect("required precision overflows");
        let s = f.series();
        if s.prec() < n_in {
            return Err(HeckeError::InsufficientPrecision { required: n_in, available: s.prec() });
        }
        assert!(
            self.table.nmax() >= n_in,
            "Hecke context built for nmax = {}, but output precision {n_out} needs {n_in}",
            self.table.nmax()
        );

        let p_to_k = RatK::from_poly(self.prime.pow(fq, self.weight));
        let mut out = TruncSeries::zero(n_out);

        // Constant term: p^k a_0 from the f(pz) summand; the q^d translates
        // each contribute a_0, and q^d = 0 in characteristic p.
        let a0 = s.coeff(0);
        if !a0.is_zero() {
            out.set_coeff(0, a0.mul(fq, &p_to_k));
        }

        // Substitution summand p^k sum a_n t_p^n; t_p^n has order n q^d.
        if qd <= n_out {
            let t_p = t_sub(fq, &self.prime, n_out);
            let mut power = t_p.clone();
            for n in 1..=n_out / qd {
                let a_n = s.coeff(n);
                if !a_n.is_zero() {
                    out = out.add(fq, &power.scale(fq, &a_n.mul(fq, &p_to_k)));
                }
                if (n + 1) * qd <= n_out {
                    power = power.mul(fq, &t_p).truncated(n_out);
                }
            }
        }

        // Goss summand sum a_n G_{n,p}(p t): substituting the monomial p t
        // sends X^j to p^j t^j, so each polynomial contributes directly to
        // the output coefficients.
        let mut p_pows = Vec::with_capacity(n_out + 1);
        p_pows.push(RatK::one());
        let p_rat = RatK::from_poly(self.prime.clone());
        for j in 1..=n_out {
            p_pows.push(p_pows[j - 1].mul(fq, &p_rat));
        }
        let mut acc: Vec<RatK> = out.coeffs().to_vec();
        for n in 1..=n_in {
            let a_n = s.coeff(n);
            if a_n.is_zero() {
                continue;
            }
            let gn = self.table.poly(n);
            let top = gn.degree().expect("Goss polynomials are nonzero").min(n_out);
            for (j, c) in gn.coeffs().iter().enumerate().take(top + 1) {
                if !c.is_zero() {
                    acc[j] = acc[j].add(fq, &a_n.mul(fq, &c.mul(fq, &p_pows[j])));
                }
            }
        }
        let mut out = TruncSeries::zero(n_out);
        for (j, c) in acc.into_iter().enumerate() {
            if !c.is_zero() {
                out.set_coeff(j, c);
            }
        }
        Ok(ModularForm::new(fq, f.weight(), f.type_m(), f.is_quasi(), out))
    }
}

/// Applies T_p to f at the full output precision the input supports,
/// floor(prec(f) / q^d).  Builds a fresh torsion context; use
/// [`HeckeContext`] directly to amortize the table across calls.
pub fn hecke_apply(fq: &Fq, f: &ModularForm, prime: &PolyA) -> Result<ModularForm, HeckeError> {
    if !prime.is_monic() || !prime.is_irreducible(fq) {
        return Err(HeckeError::NotPrime(prime.clone()));
    }
    let d = prime.degree().expect("primes are nonzero") as u32;
    let qd = (fq.q() as usize).pow(d);
    let n_out = f.series().prec() / qd;
    if n_out == 0 {
        return Err(HeckeError::InsufficientPrecision { required: qd, available: f.series().prec() });
    }
    let ctx = HeckeContext::new(fq, prime.clone(), f.weight(), n_out * qd)?;
    ctx.apply(fq, f, n_out)
}

/// The verdict of eigenvalue extraction.
#[derive(Clone, Debug, PartialEq)]
pub enum EigenOutcome {
    /// T_p f = lambda f coefficientwise at the output precision.
    Eigen(RatK),
    /// The relation fails; `t_power` is the smallest exponent where it does.
    NotEigen { t_power: usize },
}

/// Extracts the eigenvalue of f under T_p, if f is an eigenform at the
/// output precision floor(prec(f) / q^d): the candidate lambda is the ratio
/// at the first nonzero coefficient of f, accepted only if T_p f = lambda f
/// holds at every exposed coefficient.
pub fn eigen_solve(fq: &Fq, f: &ModularForm, prime: &PolyA) -> Result<EigenOutcome, HeckeError> {
    let tf = hecke_apply(fq, f, prime)?;
    let n_out = tf.series().prec();
    let s = f.series();
    let pivot = (0..=n_out).find(|&j| !s.coeff(j).is_zero()).ok_or(HeckeError::ZeroSeries)?;
    let lambda = tf.series().coeff(pivot).div(fq, s.coeff(pivot));
    for j in 0..=n_out {
        if tf.series().coeff(j).sub(fq, &lambda.mul(fq, s.coeff(j))).is_zero() {
            continue;
        }
        return Ok(EigenOutcome::NotEigen { t_power: j });
    }
    Ok(EigenOutcome::Eigen(lambda))
}
