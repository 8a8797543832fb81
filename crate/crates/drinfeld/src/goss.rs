//! Goss polynomials of a lattice exponential.
//!
//! Given an exponential e(X) = sum_{i >= 0} alpha_i X^{q^i} with alpha_0 = 1,
//! the Goss polynomials G_n are determined by the recursion
//!
//! ```text
//! G_1 = X,
//! G_n = X * (G_{n-1} + sum_{i >= 1} alpha_i G_{n - q^i})    (n >= 2),
//! ```
//!
//! with G_m = 0 for m <= 0.  Two lattice families matter here:
//!
//! * [`Lattice::Period`]: alpha_i = 1/D_i (Carlitz factorials).  These are
//!   the Goss polynomials that turn A-expansions into t-expansions.
//! * [`Lattice::Torsion`]: alpha_i = l_i(p)/p for a monic irreducible p,
//!   zero beyond deg p.  These drive the Hecke action at p.
//!
//! Key invariants (tested here and in the acceptance suite): G_n is monic of
//! degree n, divisible by X, equal to X^n for n <= q, and G_{pn} = G_n^p.

use crate::algebra::{carlitz_factorial, Fq, PolyA, RatK};
use crate::carlitz::torsion_alphas;
use crate::series::TruncSeries;

/// The lattice whose exponential feeds the Goss recursion.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Lattice {
    /// The rank-1 period lattice, normalized so that alpha_i = 1/D_i.
    Period,
    /// The p-torsion lattice of a monic irreducible p.
    Torsion(PolyA),
}

/// A dense polynomial over K in one variable X (low degree first, trimmed).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KPoly {
    coeffs: Vec<RatK>,
}

impl KPoly {
    pub fn zero() -> KPoly {
        KPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<RatK>) -> KPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        KPoly { coeffs }
    }

    pub fn x() -> KPoly {
        KPoly { coeffs: vec![RatK::zero(), RatK::one()] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> RatK {
        self.coeffs.get(i).cloned().unwrap_or_else(RatK::zero)
    }

    pub fn coeffs(&self) -> &[RatK] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// X-order: the lowest degree with a nonzero coefficient.
    pub fn ord_x(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, fq: &Fq, other: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(fq, &other.coeff(i))).collect();
        KPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, fq: &Fq, c: &RatK) -> KPoly {
        if c.is_zero() {
            return KPoly::zero();
        }
        KPoly { coeffs: self.coeffs.iter().map(|a| a.mul(fq, c)).collect() }
    }

    /// Multiplication by X^k.
    pub fn shift_x(&self, k: usize) -> KPoly {
        if self.is_zero() {
            return KPoly::zero();
        }
        let mut coeffs = vec![RatK::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        KPoly { coeffs }
    }

    pub fn mul(&self, fq: &Fq, other: &KPoly) -> KPoly {
        if self.is_zero() || other.is_zero() {
            return KPoly::zero();
        }
        let mut out = vec![RatK::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(fq, &a.mul(fq, b));
                }
            }
        }
        KPoly::from_coeffs(out)
    }

    /// self^p by the Frobenius: coefficients to the p-th power, degrees
    /// multiplied by p.
    pub fn frobenius_p(&self, fq: &Fq) -> KPoly {
        if self.is_zero() {
            return KPoly::zero();
        }
        let p = fq.p() as usize;
        let mut out = vec![RatK::zero(); (self.coeffs.len() - 1) * p + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out[i * p] = c.frobenius_p(fq);
            }
        }
        KPoly { coeffs: out }
    }

    /// Evaluates at a truncated series.  Each power of the argument is
    /// computed with honest precision bookkeeping, so the result precision
    /// is prec(s) + (i0 - 1) * ord(s), where i0 is the lowest positive
    /// degree with a nonzero coefficient.
    pub fn eval_at_series(&self, fq: &Fq, s: &TruncSeries) -> TruncSeries {
        let mut acc: Option<TruncSeries> = None;
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            let term = s.s_pow(fq, i as u64).scale(fq, c);
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(fq, &term),
            });
        }
        let mut out = acc.unwrap_or_else(|| TruncSeries::zero(s.prec()));
        let c0 = self.coeff(0);
        if !c0.is_zero() {
            let prec = out.prec();
            out = out.add(fq, &TruncSeries::constant(prec, c0));
        }
        out
    }
}

/// The table of Goss polynomials G_1, ..., G_nmax for a lattice.
#[derive(Clone, Debug)]
pub struct GossTable {
    lattice: Lattice,
    nmax: usize,
    /// alpha_0 = 1, alpha_1, ..., up to the largest index with q^i <= nmax
    /// (shorter if the lattice exponential is a polynomial).
    alphas: Vec<RatK>,
    /// polys[n] = G_n; index 0 holds the zero polynomial.
    polys: Vec<KPoly>,
}

/// Exponential coefficients alpha_0, alpha_1, ..., alpha_imax of a lattice,
/// where imax is the largest index with q^imax <= bound.
pub fn lattice_alphas(fq: &Fq, lattice: &Lattice, bound: usize) -> Vec<RatK> {
    let q = fq.q() as usize;
    let mut imax = 0u32;
    while q.pow(imax + 1) <= bound {
        imax += 1;
    }
    match lattice {
        Lattice::Period => (0..=imax)
            .map(|i| RatK::new(fq, PolyA::one(), carlitz_factorial(fq, i)))
            .collect(),
        Lattice::Torsion(prime) => {
            let mut alphas = torsion_alphas(fq, prime);
            alphas.truncate(imax as usize + 1);
            alphas
        }
    }
}

/// Builds the Goss table up to G_nmax.
pub fn goss_table(fq: &Fq, lattice: &Lattice, nmax: usize) -> GossTable {
    assert!(nmax >= 1, "goss_table needs nmax >= 1");
    let q = fq.q() as usize;
    let alphas = lattice_alphas(fq, lattice, nmax);
    let mut polys = Vec::with_capacity(nmax + 1);
    polys.push(KPoly::zero());
    polys.push(KPoly::x());
    for n in 2..=nmax {
        // G_n = X * (G_{n-1} + sum_{i>=1} alpha_i G_{n-q^i}), G_m = 0 for m <= 0.
        let mut inner = polys[n - 1].clone();
        for (i, alpha) in alphas.iter().enumerate().skip(1) {
            let qi = q.pow(i as u32);
            if qi >= n {
                break;
            }
            if !alpha.is_zero() {
                inner = inner.add(fq, &polys[n - qi].scale(fq, alpha));
            }
        }
        polys.push(inner.shift_x(1));
    }
    GossTable { lattice: lattice.clone(), nmax, alphas, polys }
}

impl GossTable {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn alphas(&self) -> &[RatK] {
        &self.alphas
    }

    /// G_n for 1 <= n <= nmax.
    pub fn poly(&self, n: usize) -> &KPoly {
        assert!(
            (1..=self.nmax).contains(&n),
            "G_{n} is outside the table range 1..={}",
            self.nmax
        );
        &self.polys[n]
    }

    /// ord_X(G_n); at least 1 since X divides every G_n.
    pub fn ord(&self, n: usize) -> usize {
        self.poly(n).ord_x().expect("Goss polynomials are nonzero")
    }

    /// True when G_n * G_m = G_{n+m} (requires n + m <= nmax).
    pub fn is_multiplicative_pair(&self, fq: &Fq, n: usize, m: usize) -> bool {
        self.poly(n).mul(fq, self.poly(m)) == *self.poly(n + m)
    }

    /// Reassembles a table from stored parts (the cache-file path).  The
    /// alphas are recomputed and compared — they are cheap, unlike the
    /// polynomial recursion the cache exists to skip — and each polynomial
    /// must be monic of degree n and divisible by X.
    pub fn from_parts(fq: &Fq, lattice: Lattice, polys: Vec<KPoly>) -> GossTable {
        assert!(polys.len() >= 2, "a table holds at least G_0 = 0 and G_1 = X");
        let nmax = polys.len() - 1;
        let alphas = lattice_alphas(fq, &lattice, nmax);
        assert!(polys[0].is_zero(), "index 0 must hold the zero polynomial");
        for (n, p) in polys.iter().enumerate().skip(1) {
            assert!(p.is_monic(), "G_{n} must be monic");
            assert_eq!(p.degree(), Some(n), "G_{n} must have degree {n}");
            assert!(p.ord_x().expect("monic implies nonzero") >= 1, "X must divide G_{n}");
        }
        GossTable { lattice, nmax, alphas, polys }
    }
}
