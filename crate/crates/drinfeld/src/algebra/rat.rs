//! The fraction field K = Fq(T).
//!
//! A [`RatK`] is kept in canonical form at all times: the denominator is
//! monic, gcd(num, den) = 1, and zero is 0/1.  Structural equality therefore
//! coincides with mathematical equality, and the derived `PartialEq`/`Hash`
//! are sound.

use super::field::{FieldElement, Fq};
use super::poly::PolyA;

/// An element of Fq(T) in reduced form (monic denominator).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatK {
    num: PolyA,
    den: PolyA,
}

impl RatK {
    pub fn zero() -> RatK {
        RatK { num: PolyA::zero(), den: PolyA::one() }
    }

    pub fn one() -> RatK {
        RatK { num: PolyA::one(), den: PolyA::one() }
    }

    /// Embeds a polynomial.
    pub fn from_poly(num: PolyA) -> RatK {
        RatK { num, den: PolyA::one() }
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_i64(fq: &Fq, n: i64) -> RatK {
        let c = fq.from_u64(n.unsigned_abs());
        let c = if n < 0 { fq.neg(c) } else { c };
        RatK::from_poly(PolyA::constant(c))
    }

    pub fn from_scalar(c: FieldElement) -> RatK {
        RatK::from_poly(PolyA::constant(c))
    }

    /// Builds num/den in canonical form.  Panics on a zero denominator.
    pub fn new(fq: &Fq, num: PolyA, den: PolyA) -> RatK {
        assert!(!den.is_zero(), "zero denominator in K");
        if num.is_zero() {
            return RatK::zero();
        }
        let g = num.gcd(fq, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(fq, &g), den.div_exact(fq, &g))
        };
        let lc = den.leading_coeff().unwrap();
        if lc != fq.one() {
            let inv = fq.inv(lc);
            num = num.scale(fq, inv);
            den = den.scale(fq, inv);
        }
        RatK { num, den }
    }

    pub fn num(&self) -> &PolyA {
        &self.num
    }

    pub fn den(&self) -> &PolyA {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value lies in A (denominator 1).
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// The underlying polynomial, when integral.
    pub fn as_poly(&self) -> Option<&PolyA> {
        if self.is_integral() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn add(&self, fq: &Fq, other: &RatK) -> RatK {
        if self.den.is_one() && other.den.is_one() {
            return RatK { num: self.num.add(fq, &other.num), den: PolyA::one() };
        }
        let num = self
            .num
            .mul(fq, &other.den)
            .add(fq, &other.num.mul(fq, &self.den));
        let den = self.den.mul(fq, &other.den);
        RatK::new(fq, num, den)
    }

    pub fn neg(&self, fq: &Fq) -> RatK {
        RatK { num: self.num.neg(fq), den: self.den.clone() }
    }

    pub fn sub(&self, fq: &Fq, other: &RatK) -> RatK {
        self.add(fq, &other.neg(fq))
    }

    pub fn mul(&self, fq: &Fq, other: &RatK) -> RatK {
        if self.is_zero() || other.is_zero() {
            return RatK::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatK { num: self.num.mul(fq, &other.num), den: PolyA::one() };
        }
        // Cross-reduce first so the big multiplications stay small and the
        // product of reduced inputs needs no final gcd.
        let g1 = self.num.gcd(fq, &other.den);
        let g2 = other.num.gcd(fq, &self.den);
        let n1 = if g1.is_one() { self.num.clone() } else { self.num.div_exact(fq, &g1) };
        let d2 = if g1.is_one() { other.den.clone() } else { other.den.div_exact(fq, &g1) };
        let n2 = if g2.is_one() { other.num.clone() } else { other.num.div_exact(fq, &g2) };
        let d1 = if g2.is_one() { self.den.clone() } else { self.den.div_exact(fq, &g2) };
        RatK { num: n1.mul(fq, &n2), den: d1.mul(fq, &d2) }
    }

    pub fn scale(&self, fq: &Fq, c: FieldElement) -> RatK {
        if c.is_zero() {
            return RatK::zero();
        }
        RatK { num: self.num.scale(fq, c), den: self.den.clone() }
    }

    /// Multiplicative inverse.  Panics on zero.
    pub fn inv(&self, fq: &Fq) -> RatK {
        assert!(!self.is_zero(), "inversion of zero in K");
        let lc = self.num.leading_coeff().unwrap();
        if lc == fq.one() {
            return RatK { num: self.den.clone(), den: self.num.clone() };
        }
        let inv = fq.inv(lc);
        RatK { num: self.den.scale(fq, inv), den: self.num.scale(fq, inv) }
    }

    pub fn div(&self, fq: &Fq, other: &RatK) -> RatK {
        self.mul(fq, &other.inv(fq))
    }

    /// self^exp.  Powers of a reduced fraction stay reduced, so numerator and
    /// denominator are raised independently.
    pub fn pow(&self, fq: &Fq, exp: u64) -> RatK {
        if exp == 0 {
            return RatK::one();
        }
        RatK { num: self.num.pow(fq, exp), den: self.den.pow(fq, exp) }
    }

    /// The p-power Frobenius applied to the value (num and den separately;
    /// reduction and monicity are preserved).
    pub fn frobenius_p(&self, fq: &Fq) -> RatK {
        RatK { num: self.num.frobenius_p(fq), den: self.den.frobenius_p(fq) }
    }

    /// The q-th root when the value is a q-th power in K, else `None`.
    pub fn qth_root(&self, fq: &Fq) -> Option<RatK> {
        let num = self.num.qth_root(fq).ok()?;
        let den = self.den.qth_root(fq).ok()?;
        Some(RatK { num, den })
    }

    /// The valuation at a monic irreducible `prime`; `None` means +infinity
    /// (the zero value).
    pub fn v_at_prime(&self, fq: &Fq, prime: &PolyA) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(poly_valuation(fq, &self.num, prime) - poly_valuation(fq, &self.den, prime))
    }
}

fn poly_valuation(fq: &Fq, a: &PolyA, prime: &PolyA) -> i64 {
    debug_assert!(!a.is_zero());
    let mut v = 0;
    let mut cur = a.clone();
    loop {
        let (q, r) = cur.divmod(fq, prime);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        cur = q;
    }
}
