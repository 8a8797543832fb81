//! Truncated power series and short Laurent series over K = Fq(T).
//!
//! A [`TruncSeries`] stores exact coefficients of t^0, ..., t^N for its
//! precision N; nothing is known beyond t^N.  Every operation propagates
//! precision honestly: results never claim coefficients that the inputs do
//! not determine.  For a product, the full rule is
//!
//! ```text
//! prec(f * g) = min(prec(f) + ord(g), prec(g) + ord(f))
//! ```
//!
//! where ord is the t-order among known coefficients (prec + 1 for a series
//! that is zero to its precision).  This is sharper than min(prec, prec) and
//! matters for cuspidal series, which have positive order.
//!
//! There is deliberately no `PartialEq`: equality of truncations is only
//! meaningful up to the smaller precision, so comparisons go through
//! [`TruncSeries::eq_up_to_min_prec`] and [`TruncSeries::first_difference`].
//!
//! [`LaurentSeries`] is a minimal companion for the few computations that
//! need finitely many negative powers (inverting a series of t-order 1).

use std::fmt;

use crate::algebra::{Fq, RatK};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SeriesError {
    /// A q-th root was requested but a coefficient sits at an exponent that
    /// is not a multiple of q.
    RootBadExponent { exponent: usize },
    /// A q-th root was requested but the coefficient at this exponent is not
    /// a q-th power in K.
    RootBadCoefficient { exponent: usize },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::RootBadExponent { exponent } => {
                write!(f, "no q-th root: nonzero coefficient at t^{exponent} off the q-grid")
            }
            SeriesError::RootBadCoefficient { exponent } => {
                write!(f, "no q-th root: coefficient at t^{exponent} is not a q-th power")
            }
        }
    }
}

impl std::error::Error for SeriesError {}

/// A power series in t known exactly up to and including t^prec.
#[derive(Clone, Debug)]
pub struct TruncSeries {
    prec: usize,
    coeffs: Vec<RatK>,
}

impl TruncSeries {
    pub fn zero(prec: usize) -> TruncSeries {
        TruncSeries { prec, coeffs: vec![RatK::zero(); prec + 1] }
    }

    pub fn one(prec: usize) -> TruncSeries {
        let mut s = TruncSeries::zero(prec);
        s.coeffs[0] = RatK::one();
        s
    }

    pub fn constant(prec: usize, c: RatK) -> TruncSeries {
        let mut s = TruncSeries::zero(prec);
        s.coeffs[0] = c;
        s
    }

    /// c * t^k.
    pub fn monomial(prec: usize, k: usize, c: RatK) -> TruncSeries {
        assert!(k <= prec, "monomial exponent {k} beyond precision {prec}");
        let mut s = TruncSeries::zero(prec);
        s.coeffs[k] = c;
        s
    }

    /// Builds a series from explicit (exponent, coefficient) pairs.
    pub fn from_terms(prec: usize, terms: &[(usize, RatK)]) -> TruncSeries {
        let mut s = TruncSeries::zero(prec);
        for (k, c) in terms {
            assert!(*k <= prec, "term exponent {k} beyond precision {prec}");
            s.coeffs[*k] = c.clone();
        }
        s
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    /// Coefficient of t^k (panics beyond the precision: that coefficient is
    /// simply not known).
    pub fn coeff(&self, k: usize) -> &RatK {
        assert!(k <= self.prec, "coefficient t^{k} beyond precision {}", self.prec);
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[RatK] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: RatK) {
        assert!(k <= self.prec, "coefficient t^{k} beyond precision {}", self.prec);
        self.coeffs[k] = c;
    }

    /// t-order among known coefficients; `None` if zero to precision.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn ord_or_past(&self) -> usize {
        self.ord().unwrap_or(self.prec + 1)
    }

    pub fn is_zero_to_prec(&self) -> bool {
        self.ord().is_none()
    }

    /// The same series with precision lowered to `prec`.
    pub fn truncated(&self, prec: usize) -> TruncSeries {
        assert!(
            prec <= self.prec,
            "cannot raise precision from {} to {prec} by truncation",
            self.prec
        );
        TruncSeries { prec, coeffs: self.coeffs[..=prec].to_vec() }
    }

    pub fn add(&self, fq: &Fq, other: &TruncSeries) -> TruncSeries {
        let prec = self.prec.min(other.prec);
        let coeffs = (0..=prec)
            .map(|k| self.coeffs[k].add(fq, &other.coeffs[k]))
            .collect();
        TruncSeries { prec, coeffs }
    }

    pub fn neg(&self, fq: &Fq) -> TruncSeries {
        TruncSeries {
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|c| c.neg(fq)).collect(),
        }
    }

    pub fn sub(&self, fq: &Fq, other: &TruncSeries) -> TruncSeries {
        let prec = self.prec.min(other.prec);
        let coeffs = (0..=prec)
            .map(|k| self.coeffs[k].sub(fq, &other.coeffs[k]))
            .collect();
        TruncSeries { prec, coeffs }
    }

    pub fn scale(&self, fq: &Fq, c: &RatK) -> TruncSeries {
        TruncSeries {
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|x| x.mul(fq, c)).collect(),
        }
    }

    /// self * t^k; every shifted coefficient is still known, so precision
    /// rises to prec + k.
    pub fn shifted_up(&self, k: usize) -> TruncSeries {
        let mut coeffs = vec![RatK::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        TruncSeries { prec: self.prec + k, coeffs }
    }

    pub fn mul(&self, fq: &Fq, other: &TruncSeries) -> TruncSeries {
        let prec = (self.prec + other.ord_or_past()).min(other.prec + self.ord_or_past());
        let mut out = vec![RatK::zero(); prec + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i > prec {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > prec {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(fq, &a.mul(fq, b));
            }
        }
        TruncSeries { prec, coeffs: out }
    }

    /// The p-power Frobenius: coefficients are raised to the p-th power and
    /// exponents multiplied by p, so precision rises to p(prec + 1) - 1.
    pub fn frobenius_p(&self, fq: &Fq) -> TruncSeries {
        let p = fq.p() as usize;
        let prec = p * (self.prec + 1) - 1;
        let mut out = vec![RatK::zero(); prec + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out[j * p] = c.frobenius_p(fq);
            }
        }
        TruncSeries { prec, coeffs: out }
    }

    /// self^e, peeling the p-part of the exponent into Frobenius maps (which
    /// are cheap and raise precision) and squaring-and-multiplying the rest.
    pub fn s_pow(&self, fq: &Fq, e: u64) -> TruncSeries {
        if e == 0 {
            return TruncSeries::one(self.prec);
        }
        let p = fq.p();
        let mut m = e;
        let mut v = 0u32;
        while m % p == 0 {
            m /= p;
            v += 1;
        }
        let mut acc: Option<TruncSeries> = None;
        let mut base = self.clone();
        let mut n = m;
        while n > 0 {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(fq, &base),
                });
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(fq, &base);
            }
        }
        let mut acc = acc.unwrap();
        for _ in 0..v {
            acc = acc.frobenius_p(fq);
        }
        acc
    }

    /// Multiplicative inverse; requires a unit (nonzero constant term).
    pub fn inverse(&self, fq: &Fq) -> TruncSeries {
        assert!(
            !self.coeffs[0].is_zero(),
            "series inverse requires a nonzero constant term"
        );
        let c0_inv = self.coeffs[0].inv(fq);
        let nonzero: Vec<usize> = (1..=self.prec)
            .filter(|&i| !self.coeffs[i].is_zero())
            .collect();
        let mut out = vec![RatK::zero(); self.prec + 1];
        out[0] = c0_inv.clone();
        for k in 1..=self.prec {
            let mut s = RatK::zero();
            for &i in nonzero.iter().take_while(|&&i| i <= k) {
                s = s.add(fq, &self.coeffs[i].mul(fq, &out[k - i]));
            }
            if !s.is_zero() {
                out[k] = s.mul(fq, &c0_inv).neg(fq);
            }
        }
        TruncSeries { prec: self.prec, coeffs: out }
    }

    /// Exact quotient self / divisor, for divisors whose t-order is at most
    /// the t-order of self.  All coefficients of self below ord(divisor)
    /// must be zero; the result has precision prec(self) - ord(divisor).
    pub fn divide_exact(&self, fq: &Fq, divisor: &TruncSeries) -> TruncSeries {
        let w = divisor
            .ord()
            .expect("divide_exact: divisor is zero to its precision");
        for k in 0..w.min(self.prec + 1) {
            assert!(
                self.coeffs[k].is_zero(),
                "divide_exact: dividend has t^{k} below divisor order {w}"
            );
        }
        assert!(w <= self.prec, "divide_exact: divisor order exceeds dividend precision");
        // Shift both down by w; the divisor becomes a unit.
        let sd = TruncSeries {
            prec: self.prec - w,
            coeffs: self.coeffs[w..].to_vec(),
        };
        let ud = TruncSeries {
            prec: divisor.prec - w,
            coeffs: divisor.coeffs[w..].to_vec(),
        };
        let quot = sd.mul(fq, &ud.inverse(fq));
        debug_assert!(
            quot.mul(fq, divisor).eq_up_to_min_prec(self),
            "divide_exact: quotient times divisor differs from dividend"
        );
        quot
    }

    /// The q-th root, when self is a q-th power; precision drops to
    /// floor(prec / q).
    pub fn qth_root(&self, fq: &Fq) -> Result<TruncSeries, SeriesError> {
        let q = fq.q() as usize;
        let prec = self.prec / q;
        let mut out = vec![RatK::zero(); prec + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k % q != 0 {
                return Err(SeriesError::RootBadExponent { exponent: k });
            }
            if k / q <= prec {
                out[k / q] = c
                    .qth_root(fq)
                    .ok_or(SeriesError::RootBadCoefficient { exponent: k })?;
            }
        }
        Ok(TruncSeries { prec, coeffs: out })
    }

    /// True when the two series agree on every coefficient up to the smaller
    /// precision.
    pub fn eq_up_to_min_prec(&self, other: &TruncSeries) -> bool {
        self.first_difference(other).is_none()
    }

    /// The first exponent (up to the smaller precision) where the series
    /// differ, if any.
    pub fn first_difference(&self, other: &TruncSeries) -> Option<usize> {
        let prec = self.prec.min(other.prec);
        (0..=prec).find(|&k| self.coeffs[k] != other.coeffs[k])
    }
}

/// A Laurent series with finitely many known coefficients starting at
/// `lead`: coefficient of w^(lead + i) is coeffs[i].  Used for short exact
/// computations around w = 0 (e.g. inverting a series of order 1).
#[derive(Clone, Debug)]
pub struct LaurentSeries {
    lead: i64,
    coeffs: Vec<RatK>,
}

impl LaurentSeries {
    /// Builds from the leading exponent and coefficients; the first
    /// coefficient must be nonzero unless the list is empty.
    pub fn new(lead: i64, coeffs: Vec<RatK>) -> LaurentSeries {
        LaurentSeries { lead, coeffs }
    }

    pub fn lead(&self) -> i64 {
        self.lead
    }

    /// Number of known coefficients (relative precision).
    pub fn known_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff_at(&self, k: i64) -> RatK {
        if k < self.lead {
            return RatK::zero();
        }
        let i = (k - self.lead) as usize;
        assert!(i < self.coeffs.len(), "Laurent coefficient at w^{k} is beyond known range");
        self.coeffs[i].clone()
    }

    pub fn mul(&self, fq: &Fq, other: &LaurentSeries) -> LaurentSeries {
        let len = self.coeffs.len().min(other.coeffs.len());
        let mut out = vec![RatK::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(fq, &a.mul(fq, b));
                }
            }
        }
        LaurentSeries { lead: self.lead + other.lead, coeffs: out }
    }

    pub fn add(&self, fq: &Fq, other: &LaurentSeries) -> LaurentSeries {
        let lead = self.lead.min(other.lead);
        let end = (self.lead + self.coeffs.len() as i64).min(other.lead + other.coeffs.len() as i64);
        assert!(end > lead, "Laurent addition leaves no known coefficients");
        let mut out = Vec::with_capacity((end - lead) as usize);
        for k in lead..end {
            let a = if k >= self.lead && k < self.lead + self.coeffs.len() as i64 {
                self.coeffs[(k - self.lead) as usize].clone()
            } else {
                RatK::zero()
            };
            let b = if k >= other.lead && k < other.lead + other.coeffs.len() as i64 {
                other.coeffs[(k - other.lead) as usize].clone()
            } else {
                RatK::zero()
            };
            out.push(a.add(fq, &b));
        }
        LaurentSeries { lead, coeffs: out }
    }

    /// Adds an exact constant.  Unlike `add`, this does not shrink the known
    /// range: the constant has no unknown tail.  Coefficients between a
    /// positive lead and w^0 are known zeros, so the lead may extend down.
    pub fn add_const(&self, fq: &Fq, c: &RatK) -> LaurentSeries {
        if c.is_zero() {
            return self.clone();
        }
        let end = self.lead + self.coeffs.len() as i64;
        assert!(0 < end, "add_const: the w^0 coefficient is beyond the known range");
        if self.lead <= 0 {
            let mut coeffs = self.coeffs.clone();
            let i = (-self.lead) as usize;
            coeffs[i] = coeffs[i].add(fq, c);
            LaurentSeries { lead: self.lead, coeffs }
        } else {
            let mut coeffs = vec![c.clone()];
            coeffs.extend(std::iter::repeat_with(RatK::zero).take(self.lead as usize - 1));
            coeffs.extend_from_slice(&self.coeffs);
            LaurentSeries { lead: 0, coeffs }
        }
    }

    pub fn scale(&self, fq: &Fq, c: &RatK) -> LaurentSeries {
        LaurentSeries {
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|x| x.mul(fq, c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PolyA;

    fn f3() -> Fq {
        Fq::new(3, 1, None).unwrap()
    }

    fn tpoly(fq: &Fq, coeffs: &[u64]) -> RatK {
        RatK::from_poly(PolyA::from_indices(fq, coeffs))
    }

    #[test]
    fn geometric_series_inverse() {
        let fq = f3();
        // (1 - t)^{-1} = 1 + t + t^2 + ...
        let mut s = TruncSeries::one(10);
        s.set_coeff(1, RatK::from_i64(&fq, -1));
        let inv = s.inverse(&fq);
        for k in 0..=10 {
            assert!(inv.coeff(k).is_one(), "coefficient at t^{k}");
        }
        assert!(s.mul(&fq, &inv).eq_up_to_min_prec(&TruncSeries::one(10)));
    }

    #[test]
    fn mul_precision_uses_orders() {
        let fq = f3();
        let a = TruncSeries::monomial(10, 2, RatK::one()); // t^2, prec 10
        let b = TruncSeries::monomial(7, 3, RatK::one()); // t^3, prec 7
        let prod = a.mul(&fq, &b);
        // min(10 + 3, 7 + 2) = 9.
        assert_eq!(prod.prec(), 9);
        assert_eq!(prod.ord(), Some(5));
        // A zero factor gives a confidently zero product out to the sum.
        let z = TruncSeries::zero(4);
        let zp = z.mul(&fq, &a);
        assert!(zp.is_zero_to_prec());
        assert_eq!(zp.prec(), 4 + 2);
    }

    #[test]
    fn shift_raises_precision() {
        let fq = f3();
        let s = TruncSeries::from_terms(5, &[(0, RatK::one()), (5, RatK::from_i64(&fq, 2))]);
        let sh = s.shifted_up(3);
        assert_eq!(sh.prec(), 8);
        assert_eq!(sh.ord(), Some(3));
        assert_eq!(sh.coeff(8), &RatK::from_i64(&fq, 2));
    }

    #[test]
    fn pow_matches_repeated_mul_and_frobenius() {
        let fq = f3();
        let s = TruncSeries::from_terms(
            12,
            &[(1, RatK::one()), (2, tpoly(&fq, &[0, 1])), (5, RatK::from_i64(&fq, 2))],
        );
        let by_mul = s.mul(&fq, &s).mul(&fq, &s);
        let by_pow = s.s_pow(&fq, 3);
        assert!(by_pow.eq_up_to_min_prec(&by_mul));
        // Frobenius raises precision: 3 * 13 - 1 = 38.
        assert_eq!(by_pow.prec(), 38);
        assert!(by_mul.prec() < by_pow.prec());
        let s6 = s.s_pow(&fq, 6);
        assert!(s6.eq_up_to_min_prec(&by_mul.mul(&fq, &by_mul)));
    }

    #[test]
    fn qth_root_roundtrip_and_errors() {
        let fq = f3();
        let s = TruncSeries::from_terms(
            8,
            &[(1, tpoly(&fq, &[1, 1])), (3, RatK::from_i64(&fq, 2))],
        );
        let cube = s.s_pow(&fq, 3);
        let root = cube.qth_root(&fq).unwrap();
        assert!(root.eq_up_to_min_prec(&s));

        let bad = TruncSeries::monomial(6, 4, RatK::one());
        assert_eq!(
            bad.qth_root(&fq).unwrap_err(),
            SeriesError::RootBadExponent { exponent: 4 }
        );
        let bad2 = TruncSeries::monomial(6, 3, tpoly(&fq, &[0, 1]));
        assert_eq!(
            bad2.qth_root(&fq).unwrap_err(),
            SeriesError::RootBadCoefficient { exponent: 3 }
        );
    }

    #[test]
    fn divide_exact_roundtrip() {
        let fq = f3();
        let a = TruncSeries::from_terms(9, &[(1, RatK::one()), (4, tpoly(&fq, &[0, 2]))]);
        let b = TruncSeries::from_terms(9, &[(2, tpoly(&fq, &[1, 1])), (3, RatK::one())]);
        let prod = a.mul(&fq, &b);
        let back = prod.divide_exact(&fq, &b);
        assert!(back.eq_up_to_min_prec(&a));
        assert_eq!(back.prec(), prod.prec() - 2);
    }

    #[test]
    fn first_difference_reports_lowest_mismatch() {
        let fq = f3();
        let a = TruncSeries::one(6);
        let mut b = TruncSeries::one(9);
        assert!(a.eq_up_to_min_prec(&b));
        b.set_coeff(4, RatK::from_i64(&fq, 1));
        assert_eq!(a.first_difference(&b), Some(4));
    }

    #[test]
    fn laurent_mul_and_add() {
        let fq = f3();
        // (w^{-1} + 1) * (w^{-1} + 2w) with 3 known coefficients each.
        let a = LaurentSeries::new(-1, vec![RatK::one(), RatK::one(), RatK::zero()]);
        let b = LaurentSeries::new(-1, vec![RatK::one(), RatK::zero(), RatK::from_i64(&fq, 2)]);
        let prod = a.mul(&fq, &b);
        assert_eq!(prod.lead(), -2);
        assert!(prod.coeff_at(-2).is_one());
        assert!(prod.coeff_at(-1).is_one());
        // w^0 picks up 1 * 2w * w^{-1} = 2.
        assert_eq!(prod.coeff_at(0), RatK::from_i64(&fq, 2));
        let shifted = prod.add_const(&fq, &RatK::from_i64(&fq, 1));
        assert!(shifted.coeff_at(0).is_zero());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_series(max_prec: usize) -> impl Strategy<Value = Vec<u64>> {
            proptest::collection::vec(0u64..3, 1..=max_prec + 1)
        }

        fn build(fq: &Fq, v: &[u64]) -> TruncSeries {
            let prec = v.len() - 1;
            let mut s = TruncSeries::zero(prec);
            for (k, &c) in v.iter().enumerate() {
                s.set_coeff(k, RatK::from_i64(fq, c as i64));
            }
            s
        }

        proptest! {
            #[test]
            fn ring_axioms(a in arb_series(8), b in arb_series(8), c in arb_series(8)) {
                let fq = f3();
                let a = build(&fq, &a);
                let b = build(&fq, &b);
                let c = build(&fq, &c);
                prop_assert!(a.mul(&fq, &b).eq_up_to_min_prec(&b.mul(&fq, &a)));
                prop_assert!(a.add(&fq, &b).eq_up_to_min_prec(&b.add(&fq, &a)));
                let ab_c = a.mul(&fq, &b).mul(&fq, &c);
                let a_bc = a.mul(&fq, &b.mul(&fq, &c));
                prop_assert!(ab_c.eq_up_to_min_prec(&a_bc));
                let dist_l = a.add(&fq, &b).mul(&fq, &c);
                let dist_r = a.mul(&fq, &c).add(&fq, &b.mul(&fq, &c));
                prop_assert!(dist_l.eq_up_to_min_prec(&dist_r));
                prop_assert!(a.sub(&fq, &a).is_zero_to_prec());
            }

            #[test]
            fn unit_inverse_roundtrip(a in arb_series(8)) {
                let fq = f3();
                let mut s = build(&fq, &a);
                s.set_coeff(0, RatK::one());
                let inv = s.inverse(&fq);
                prop_assert!(s.mul(&fq, &inv).eq_up_to_min_prec(&TruncSeries::one(s.prec())));
            }
        }
    }
}
