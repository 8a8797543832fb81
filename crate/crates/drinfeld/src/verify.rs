//! Mechanical verification: the A-expansion weight/index hypothesis, power
//! sums, congruences between t-expansions modulo prime powers, product
//! identities between A-expansions, and a small search driver.  Every check
//! returns a structured verdict with a witness rather than a bare boolean,
//! and battery results serialize through [`CheckRecord`].

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::text::poly_string;
use crate::algebra::{enum_deg_below, int_val_p, irreducible_enum, PolyA, RatK};
use crate::forms::{expand, expand_cutoff, f_knl, AExpansion, FormsError};
use crate::goss::{goss_table, Lattice};
use crate::series::TruncSeries;
use crate::Fq;

/// Why a weight/index pair (k, n) admits no A-expansion of the standard
/// monomial shape.  The conditions: k - 2n must be a positive multiple of
/// q - 1, and n must be at most p^{v_p(k - n)}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HypothesisViolation {
    /// k - 2n is not positive.
    GapNotPositive { k: u64, n: u64 },
    /// k - 2n is not a multiple of q - 1.
    GapNotMultiple { k: u64, n: u64, q: u64 },
    /// n exceeds p^{v_p(k - n)}.
    PAdicBound { k: u64, n: u64, bound: u64 },
}

impl std::fmt::Display for HypothesisViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HypothesisViolation::GapNotPositive { k, n } => {
                write!(f, "k - 2n = {} is not positive for (k, n) = ({k}, {n})", *k as i64 - 2 * *n as i64)
            }
            HypothesisViolation::GapNotMultiple { k, n, q } => {
                write!(f, "k - 2n = {} is not a multiple of q - 1 = {} for (k, n) = ({k}, {n})", k - 2 * n, q - 1)
            }
            HypothesisViolation::PAdicBound { k, n, bound } => {
                write!(f, "n = {n} exceeds p^(v_p(k - n)) = {bound} for (k, n) = ({k}, {n})")
            }
        }
    }
}

impl std::error::Error for HypothesisViolation {}

/// Checks the hypothesis under which sum_a a^(k-n) G_n(t_a) is a modular
/// form of weight k and type n: k - 2n is a positive multiple of q - 1 and
/// n <= p^(v_p(k - n)).  The p-adic clause is equivalent to
/// (T - 1)^n dividing T^(k-n) - 1, which debug builds verify by division.
pub fn thm1_hypothesis(fq: &Fq, k: u64, n: u64) -> Result<(), HypothesisViolation> {
    assert!(n >= 1, "the index n must be at least 1");
    let q = fq.q();
    if k <= 2 * n {
        return Err(HypothesisViolation::GapNotPositive { k, n });
    }
    if (k - 2 * n) % (q - 1) != 0 {
        return Err(HypothesisViolation::GapNotMultiple { k, n, q });
    }
    let v = int_val_p(k - n, fq.p());
    let bound = fq.p().pow(v);
    let holds = n <= bound;
    debug_assert_eq!(
        holds,
        divides_t_minus_one_power(fq, k, n),
        "p-adic clause must agree with (T-1)^n | T^(k-n) - 1 for (k, n) = ({k}, {n})"
    );
    if !holds {
        return Err(HypothesisViolation::PAdicBound { k, n, bound });
    }
    Ok(())
}

/// Whether (T - 1)^n divides T^(k-n) - 1 in A.  Used to cross-check the
/// p-adic clause of the hypothesis.
fn divides_t_minus_one_power(fq: &Fq, k: u64, n: u64) -> bool {
    let one = PolyA::one();
    let t_minus_1 = PolyA::var().sub(fq, &one);
    let lhs = PolyA::var().pow(fq, k - n).sub(fq, &one);
    lhs.rem(fq, &t_minus_1.pow(fq, n)).is_zero()
}

/// Errors from congruence and product-identity checking.
#[derive(Clone, Debug, PartialEq)]
pub enum VerifyError {
    /// Modulus bases must be monic.
    NotMonic(PolyA),
    /// Modulus bases must be squarefree.
    NotSquarefree(PolyA),
    /// Modulus exponents must be at least 1.
    ZeroExponent,
    /// A series coefficient has negative valuation at a modulus prime, so
    /// the congruence is ill-posed.
    NegativeValuation { prime: PolyA, t_power: usize },
    /// The Goss indices on the two sides of a product identity disagree.
    IndexSumMismatch { lhs_total: u64, rhs: u64 },
    /// Expanding one of the A-expansions failed.
    Form(FormsError),
}

impl std::fmt::Display for VerifyError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerifyError::NotMonic(p) => write!(f, "modulus base is not monic: {p:?}"),
            VerifyError::NotSquarefree(p) => write!(f, "modulus base is not squarefree: {p:?}"),
            VerifyError::ZeroExponent => write!(f, "modulus exponent must be at least 1"),
            VerifyError::NegativeValuation { prime, t_power } => write!(
                f,
                "coefficient of t^{t_power} has negative valuation at {prime:?}; \
                 the congruence is ill-posed"
            ),
            VerifyError::IndexSumMismatch { lhs_total, rhs } => write!(
                f,
                "Goss indices do not match: the left factors sum to {lhs_total}, the right side has {rhs}"
            ),
            VerifyError::Form(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for VerifyError {}

impl From<FormsError> for VerifyError {
    fn from(e: FormsError) -> VerifyError {
        VerifyError::Form(e)
    }
}

/// The formal derivative df/dT.
fn derivative(fq: &Fq, a: &PolyA) -> PolyA {
    let coeffs = a.coeffs();
    if coeffs.len() <= 1 {
        return PolyA::zero();
    }
    let mut out = Vec::with_capacity(coeffs.len() - 1);
    for (i, &c) in coeffs.iter().enumerate().skip(1) {
        let scalar = fq.from_u64(i as u64 % fq.p());
        out.push(fq.mul(c, scalar));
    }
    PolyA::from_coeffs(out)
}

/// T-adic-style valuation of a nonzero polynomial at a monic prime: the
/// largest v with prime^v | a.  `None` for a = 0 (infinite valuation).
fn poly_valuation(fq: &Fq, a: &PolyA, prime: &PolyA) -> Option<u32> {
    if a.is_zero() {
        return None;
    }
    let mut v = 0;
    let mut rest = a.clone();
    loop {
        let (quo, rem) = rest.divmod(fq, prime);
        if !rem.is_zero() {
            return Some(v);
        }
        v += 1;
        rest = quo;
    }
}

/// Valuation of a nonzero rational at a monic prime, `None` for zero.
/// RatK keeps numerator and denominator coprime, so the two one-sided
/// valuations never both fire.
fn rat_valuation(fq: &Fq, x: &RatK, prime: &PolyA) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let num = poly_valuation(fq, x.num(), prime).expect("nonzero numerator") as i64;
    let den = poly_valuation(fq, x.den(), prime).expect("nonzero denominator") as i64;
    Some(num - den)
}

/// A congruence modulus base^exponent with squarefree monic base.  The
/// congruence x = y mod base^M means v_p(x - y) >= M at every prime factor
/// p of the base, which for squarefree bases agrees with divisibility by
/// base^M.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulus {
    base: PolyA,
    exponent: u32,
    prime_factors: Vec<PolyA>,
}

impl Modulus {
    pub fn new(fq: &Fq, base: PolyA, exponent: u32) -> Result<Modulus, VerifyError> {
        if exponent == 0 {
            return Err(VerifyError::ZeroExponent);
        }
        if !base.is_monic() {
            return Err(VerifyError::NotMonic(base));
        }
        if !base.gcd(fq, &derivative(fq, &base)).is_one() {
            return Err(VerifyError::NotSquarefree(base));
        }
        let prime_factors = factor_squarefree(fq, &base);
        Ok(Modulus { base, exponent, prime_factors })
    }

    /// The bracket modulus [d]^M, where [d] = T^{q^d} - T is the product of
    /// all monic primes of degree dividing d.
    pub fn bracket(fq: &Fq, d: u32, exponent: u32) -> Modulus {
        let base = crate::algebra::bracket(fq, d);
        Modulus::new(fq, base, exponent).expect("brackets are monic and squarefree")
    }

    pub fn base(&self) -> &PolyA {
        &self.base
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn prime_factors(&self) -> &[PolyA] {
        &self.prime_factors
    }
}

/// Factors a squarefree monic polynomial by trial division over monic
/// irreducibles of increasing degree.
fn factor_squarefree(fq: &Fq, a: &PolyA) -> Vec<PolyA> {
    let mut rest = a.clone();
    let mut factors = Vec::new();
    let mut d = 1usize;
    while rest.degree().unwrap_or(0) > 0 {
        if 2 * d > rest.degree().unwrap() {
            factors.push(rest.clone());
            break;
        }
        for p in irreducible_enum(fq, d) {
            if rest.degree().unwrap_or(0) < d {
                break;
            }
            let (quo, rem) = rest.divmod(fq, &p);
            if rem.is_zero() {
                factors.push(p);
                rest = quo;
            }
        }
        d += 1;
    }
    debug_assert_eq!(
        factors.iter().fold(PolyA::one(), |acc, p| acc.mul(fq, p)),
        *a,
        "prime factors must multiply back to the base"
    );
    factors
}

/// Outcome of a congruence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CongruenceVerdict {
    Congruent,
    /// `t_power` is the smallest exponent whose coefficient difference has
    /// valuation below the modulus exponent at `prime`.
    NotCongruent { t_power: usize, prime: PolyA },
}

impl CongruenceVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, CongruenceVerdict::Congruent)
    }
}

/// Whether sa = sb mod base^M coefficientwise, up to the smaller precision.
/// Errors out if either series has a coefficient with negative valuation at
/// a prime of the modulus — such a congruence is ill-posed, mirroring the
/// requirement that the modulus stays coprime to all denominators.
pub fn congruent_mod(
    fq: &Fq,
    sa: &TruncSeries,
    sb: &TruncSeries,
    modulus: &Modulus,
) -> Result<CongruenceVerdict, VerifyError> {
    let prec = sa.prec().min(sb.prec());
    for s in [sa, sb] {
        for t_power in 0..=prec {
            let c = s.coeff(t_power);
            if c.is_zero() {
                continue;
            }
            for prime in &modulus.prime_factors {
                if c.den().rem(fq, prime).is_zero() {
                    return Err(VerifyError::NegativeValuation { prime: prime.clone(), t_power });
                }
            }
        }
    }
    let m = modulus.exponent as i64;
    for t_power in 0..=prec {
        let diff = sa.coeff(t_power).sub(fq, sb.coeff(t_power));
        if diff.is_zero() {
            continue;
        }
        for prime in &modulus.prime_factors {
            let v = rat_valuation(fq, &diff, prime).expect("nonzero difference");
            if v < m {
                return Ok(CongruenceVerdict::NotCongruent { t_power, prime: prime.clone() });
            }
        }
    }
    Ok(CongruenceVerdict::Congruent)
}

/// The sum of a^r over all q^d polynomials a of degree < d, by brute force.
pub fn power_sum(fq: &Fq, r: u64, d: u32) -> PolyA {
    assert!(r >= 1, "power sums need r >= 1");
    assert!(d >= 1, "power sums need d >= 1");
    let mut acc = PolyA::zero();
    for a in enum_deg_below(fq, d as usize) {
        acc = acc.add(fq, &a.pow(fq, r));
    }
    acc
}

/// The power-sum table S_{j,d} for j <= r and d <= dmax, together with the
/// smallest d at which S_{j,d} vanishes for every 1 <= j <= r.
#[derive(Clone, Debug)]
pub struct PowerSumReport {
    pub r: u64,
    pub dmax: u32,
    /// `table[j - 1][d - 1]` = S_{j,d}.
    pub table: Vec<Vec<PolyA>>,
    pub min_d: Option<u32>,
}

/// Scans d upward for the smallest degree bound that kills all power sums
/// S_{1..r, d}.  Also asserts the vanishing criterion S_{j,d} = 0 whenever
/// (q - 1) does not divide j.
pub fn min_d(fq: &Fq, r: u64, dmax: u32) -> PowerSumReport {
    assert!(r >= 1 && dmax >= 1);
    let q = fq.q();
    let mut table = vec![Vec::with_capacity(dmax as usize); r as usize];
    for d in 1..=dmax {
        for j in 1..=r {
            let s = power_sum(fq, j, d);
            if j % (q - 1) != 0 {
                assert!(s.is_zero(), "S_{{{j},{d}}} must vanish when (q - 1) does not divide {j}");
            }
            table[(j - 1) as usize].push(s);
        }
    }
    let min_d = (1..=dmax).find(|&d| (1..=r).all(|j| table[(j - 1) as usize][(d - 1) as usize].is_zero()));
    PowerSumReport { r, dmax, table, min_d }
}

impl PowerSumReport {
    pub fn sum(&self, j: u64, d: u32) -> &PolyA {
        &self.table[(j - 1) as usize][(d - 1) as usize]
    }
}

/// Outcome of a product-identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProductVerdict {
    Holds,
    /// The two sides first differ at this t-power.
    Fails { t_power: usize },
}

impl ProductVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ProductVerdict::Holds)
    }
}

/// Expands every factor and the candidate right side, multiplies the left
/// factors, and compares exactly through t^prec.  The Goss indices must be
/// consistent: the factors' indices sum to the right side's index.
pub fn product_identity_check(
    fq: &Fq,
    lhs: &[AExpansion],
    rhs: &AExpansion,
    prec: usize,
) -> Result<ProductVerdict, VerifyError> {
    let lhs_total: u64 = lhs.iter().map(|ax| ax.n()).sum();
    if lhs_total != rhs.n() {
        return Err(VerifyError::IndexSumMismatch { lhs_total, rhs: rhs.n() });
    }
    let mut prod = TruncSeries::one(prec);
    for ax in lhs {
        prod = prod.mul(fq, &expand(fq, ax, prec)?).truncated(prec);
    }
    let rhs_series = expand(fq, rhs, prec)?;
    match prod.first_difference(&rhs_series) {
        None => Ok(ProductVerdict::Holds),
        Some(t_power) => Ok(ProductVerdict::Fails { t_power }),
    }
}

/// The monomial family c_a = a^e with exactly the degrees that expansion at
/// this precision consumes, regardless of whether (e + n, n) satisfies the
/// modularity hypothesis — raw families are what negative product checks
/// compare against.
pub fn monomial_family_for_prec(fq: &Fq, n: u64, e: u64, prec: usize) -> AExpansion {
    let table = goss_table(fq, &Lattice::Period, n as usize);
    let max_deg = expand_cutoff(table.ord(n as usize), fq.q(), prec).unwrap_or(0);
    AExpansion::monomial_family(fq, n, e, max_deg)
}

/// The congruence exponent q^nu * p^{v_p(k - n)} from the twisted-family
/// congruence statement; always computed from the formula, never quoted.
pub fn congruence_exponent(fq: &Fq, k: u64, n: u64, nu: u32) -> u32 {
    assert!(k > n, "the exponent law needs k > n");
    let nu0 = int_val_p(k - n, fq.p());
    let q = fq.q() as u32;
    q.pow(nu)
        .checked_mul((fq.p() as u32).pow(nu0))
        .expect("congruence exponent overflows")
}

/// One machine-readable verification outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub parameters: String,
    pub verdict: bool,
    pub witness: Option<String>,
}

impl CheckRecord {
    pub fn new(check: &str, parameters: String, verdict: bool, witness: Option<String>) -> CheckRecord {
        CheckRecord { check: check.to_string(), parameters, verdict, witness }
    }
}

/// A batch of check records with a format version, the payload of `verify`
/// and `search` runs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub format: u32,
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new(records: Vec<CheckRecord>) -> Report {
        Report { format: 1, records }
    }

    pub fn all_hold(&self) -> bool {
        self.records.iter().all(|r| r.verdict)
    }

    /// One line per record: "ok <check> <parameters>" or
    /// "FAIL <check> <parameters>: <witness>".
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            if r.verdict {
                out.push_str(&format!("ok   {} {}\n", r.check, r.parameters));
            } else {
                let witness = r.witness.as_deref().unwrap_or("no witness");
                out.push_str(&format!("FAIL {} {}: {}\n", r.check, r.parameters, witness));
            }
        }
        out
    }
}

/// Checks the twisted-family congruence ladder for one (k, n): for every
/// monic prime p of degree d, F_{k,n,d+nu} = F_{k,n,nu} mod p^{q^nu p^{nu0}},
/// plus the strengthened variant modulo [d] to the same exponent.  The
/// degree must satisfy q^d > n, the range where the Goss denominators stay
/// coprime to the modulus.
pub fn congruence_ladder(
    fq: &Fq,
    k: u64,
    n: u64,
    d: u32,
    nu: u32,
    prec: usize,
) -> Result<Vec<CheckRecord>, VerifyError> {
    assert!(
        (fq.q() as f64).powi(d as i32) > n as f64,
        "the congruence ladder needs q^d > n"
    );
    let exponent = congruence_exponent(fq, k, n, nu);
    let fa = f_knl(fq, k, n, d + nu, prec)?;
    let fb = f_knl(fq, k, n, nu, prec)?;
    let mut records = Vec::new();
    for prime in irreducible_enum(fq, d as usize) {
        let modulus = Modulus::new(fq, prime.clone(), exponent)?;
        let verdict = congruent_mod(fq, fa.series(), fb.series(), &modulus)?;
        records.push(CheckRecord::new(
            "congruence-ladder",
            format!(
                "k={k} n={n} d={d} nu={nu} prime={} exponent={exponent} prec={prec}",
                poly_string(fq, &prime)
            ),
            verdict.holds(),
            match verdict {
                CongruenceVerdict::Congruent => None,
                CongruenceVerdict::NotCongruent { t_power, prime } => {
                    Some(format!("first failure at t^{t_power} mod {}", poly_string(fq, &prime)))
                }
            },
        ));
    }
    let modulus = Modulus::bracket(fq, d, exponent);
    let verdict = congruent_mod(fq, fa.series(), fb.series(), &modulus)?;
    records.push(CheckRecord::new(
        "congruence-ladder-bracket",
        format!("k={k} n={n} d={d} nu={nu} exponent={exponent} prec={prec}"),
        verdict.holds(),
        match verdict {
            CongruenceVerdict::Congruent => None,
            CongruenceVerdict::NotCongruent { t_power, prime } => {
                Some(format!("first failure at t^{t_power} mod {}", poly_string(fq, &prime)))
            }
        },
    ));
    Ok(records)
}

/// Ranges for the product-identity search.
#[derive(Clone, Debug)]
pub struct SearchRanges {
    /// Goss indices n, n' run through 1..=n_max.
    pub n_max: u64,
    /// Weights k, k' run through 1..=k_max.
    pub k_max: u64,
    /// Frobenius twists l, l' run through 0..=l_max.
    pub l_max: u32,
}

/// Searches for product identities between A-expansion families.
///
/// For each index pair n <= n' the report gets a gate record stating
/// whether G_n G_{n'} = G_{n+n'} as polynomials.  For pairs that pass the
/// gate, every weight pair (k, k') in range with (k, n), (k', n'), and
/// (k + k', n + n') all admissible is expanded and the candidate identity
///
/// ```text
/// (sum_a a^{q^l (k-n)} G_n(t_a)) (sum_a a^{q^l' (k'-n')} G_{n'}(t_a))
///   = sum_a a^{q^l (k-n) + q^l' (k'-n')} G_{n+n'}(t_a)
/// ```
///
/// is checked exactly through t^prec for all twists l, l' in range.  The
/// report also logs, without asserting, the observed power identities
/// (sum_a a t_a)^j = sum_a a^j t_a^j for j <= q.
pub fn search_products(fq: &Fq, ranges: &SearchRanges, prec: usize) -> Report {
    let mut records = Vec::new();
    let mut expansions: HashMap<(u64, u64), TruncSeries> = HashMap::new();
    let q = fq.q();
    if ranges.n_max >= 1 {
        let table = goss_table(fq, &Lattice::Period, (2 * ranges.n_max) as usize);
        let admissible: Vec<Vec<u64>> = (0..=ranges.n_max)
            .map(|n| {
                if n == 0 {
                    return Vec::new();
                }
                (1..=ranges.k_max).filter(|&k| thm1_hypothesis(fq, k, n).is_ok()).collect()
            })
            .collect();
        for n in 1..=ranges.n_max {
            for n2 in n..=ranges.n_max {
                let gate = table.is_multiplicative_pair(fq, n as usize, n2 as usize);
                records.push(CheckRecord::new(
                    "goss-multiplicative-gate",
                    format!("n={n} n'={n2}"),
                    gate,
                    if gate { None } else { Some(format!("G_{n} G_{n2} != G_{}", n + n2)) },
                ));
                if !gate {
                    continue;
                }
                for &k in &admissible[n as usize] {
                    for &k2 in &admissible[n2 as usize] {
                        if n == n2 && k2 < k {
                            continue;
                        }
                        if thm1_hypothesis(fq, k + k2, n + n2).is_err() {
                            continue;
                        }
                        for l in 0..=ranges.l_max {
                            for l2 in 0..=ranges.l_max {
                                let e = q.pow(l) * (k - n);
                                let e2 = q.pow(l2) * (k2 - n2);
                                let lhs_a = cached_family(fq, &mut expansions, n, e, prec);
                                let lhs_b = cached_family(fq, &mut expansions, n2, e2, prec);
                                let rhs = cached_family(fq, &mut expansions, n + n2, e + e2, prec);
                                let prod = lhs_a.mul(fq, &lhs_b).truncated(prec);
                                let verdict = prod.first_difference(&rhs);
                                records.push(CheckRecord::new(
                                    "product-identity",
                                    format!("n={n} n'={n2} k={k} k'={k2} l={l} l'={l2} prec={prec}"),
                                    verdict.is_none(),
                                    verdict.map(|t| format!("first difference at t^{t}")),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    // The observed (not asserted) power identities for the twisted weight-2
    // families Phi_{nu,j} = sum_a a^{j q^nu} t_a^j: the probe asks whether
    // (sum_a a^{q^nu} t_a)^j = Phi_{nu,j} for 2 <= j <= q.  At nu = 0 this
    // is the conjectural power law for the false Eisenstein series; at
    // nu = 1 it recovers the h^j product identities.
    for nu in 0..=ranges.l_max {
        let base = cached_family(fq, &mut expansions, 1, q.pow(nu), prec);
        for j in 2..=q {
            let lhs = base.s_pow(fq, j).truncated(prec);
            let rhs = cached_family(fq, &mut expansions, j, j * q.pow(nu), prec);
            let verdict = lhs.first_difference(&rhs);
            records.push(CheckRecord::new(
                "power-identity-observation",
                format!("nu={nu} j={j} prec={prec}"),
                verdict.is_none(),
                verdict.map(|t| format!("first difference at t^{t}")),
            ));
        }
    }
    Report::new(records)
}

fn cached_family(
    fq: &Fq,
    cache: &mut HashMap<(u64, u64), TruncSeries>,
    n: u64,
    e: u64,
    prec: usize,
) -> TruncSeries {
    cache
        .entry((n, e))
        .or_insert_with(|| {
            expand(fq, &monomial_family_for_prec(fq, n, e, prec), prec)
                .expect("raw monomial families expand at their own cutoff")
        })
        .clone()
}

#[cfg(test)]
mod hypothesis_tests {
    use super::*;

    fn f3() -> Fq {
        Fq::new(3, 1, None).unwrap()
    }

    #[test]
    fn classical_weights_pass() {
        let fq = f3();
        // (q + 1, 1), (q^2 - 1, q - 1), (q^nu + 1, 1).
        for (k, n) in [(4, 1), (8, 2), (10, 1), (28, 1), (12, 3), (14, 2)] {
            assert_eq!(thm1_hypothesis(&fq, k, n), Ok(()), "({k}, {n})");
        }
    }

    #[test]
    fn violations_name_the_clause() {
        let fq = f3();
        assert_eq!(
            thm1_hypothesis(&fq, 4, 2),
            Err(HypothesisViolation::GapNotPositive { k: 4, n: 2 })
        );
        assert_eq!(
            thm1_hypothesis(&fq, 7, 1),
            Err(HypothesisViolation::GapNotMultiple { k: 7, n: 1, q: 3 })
        );
        // k - n = 10 has no factor of 3, so the bound is p^0 = 1 < 2.
        assert_eq!(
            thm1_hypothesis(&fq, 12, 2),
            Err(HypothesisViolation::PAdicBound { k: 12, n: 2, bound: 1 })
        );
    }

    #[test]
    fn passing_pairs_q3_small_table() {
        let fq = f3();
        let mut passing = Vec::new();
        for k in 1..=26u64 {
            for n in 1..=3u64 {
                if thm1_hypothesis(&fq, k, n).is_ok() {
                    passing.push((k, n));
                }
            }
        }
        let expected: Vec<(u64, u64)> = vec![
            (4, 1), (6, 1), (8, 1), (10, 1), (12, 1), (14, 1), (16, 1), (18, 1),
            (20, 1), (22, 1), (24, 1), (26, 1),
            (8, 2), (14, 2), (20, 2), (26, 2),
            (12, 3), (18, 3), (24, 3),
        ]
        .into_iter()
        .collect();
        let mut expected = expected;
        expected.sort();
        passing.sort();
        assert_eq!(passing, expected);
    }

    #[test]
    fn q4_examples() {
        let f4 = Fq::new(2, 2, None).unwrap();
        assert_eq!(thm1_hypothesis(&f4, 5, 1), Ok(()));
        assert_eq!(thm1_hypothesis(&f4, 17, 1), Ok(()));
        // k - n = 16 has v_2 = 4, so the bound is 16 >= n = 4.
        assert_eq!(thm1_hypothesis(&f4, 20, 4), Ok(()));
        // k - n = 5 is odd, so the bound is 2^0 = 1 < 2.
        assert_eq!(
            thm1_hypothesis(&f4, 7, 2),
            Err(HypothesisViolation::PAdicBound { k: 7, n: 2, bound: 1 })
        );
    }
}
