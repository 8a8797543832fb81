//! Dense polynomials in A = Fq[T].
//!
//! Coefficients are stored low degree first with a trimmed-trailing-zero
//! invariant: the zero polynomial is the empty vector, and any nonzero
//! polynomial ends in its (nonzero) leading coefficient.  All arithmetic
//! takes the scalar context [`Fq`] explicitly.
//!
//! The order implemented by `Ord` is the canonical order on A: lower degree
//! first, and within a fixed degree, coefficient tuples compared
//! lexicographically from the constant term upward (`c_0` most significant).
//! [`monic_enum`] and [`enum_deg_below`] yield polynomials in exactly this
//! order, so enumerations, map listings, and file formats all agree.

use std::cmp::Ordering;

use super::field::{FieldElement, Fq};

/// A polynomial in Fq[T], low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyA {
    coeffs: Vec<FieldElement>,
}

impl PolyA {
    pub fn zero() -> PolyA {
        PolyA { coeffs: Vec::new() }
    }

    pub fn one() -> PolyA {
        PolyA { coeffs: vec![FieldElement(1)] }
    }

    /// The variable T.
    pub fn var() -> PolyA {
        PolyA { coeffs: vec![FieldElement(0), FieldElement(1)] }
    }

    /// T^k.
    pub fn var_pow(k: usize) -> PolyA {
        let mut coeffs = vec![FieldElement(0); k + 1];
        coeffs[k] = FieldElement(1);
        PolyA { coeffs }
    }

    pub fn constant(c: FieldElement) -> PolyA {
        if c.is_zero() {
            PolyA::zero()
        } else {
            PolyA { coeffs: vec![c] }
        }
    }

    /// Builds a polynomial from coefficients (low degree first), trimming
    /// trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> PolyA {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyA { coeffs }
    }

    /// Convenience constructor from canonical element indices.
    pub fn from_indices(fq: &Fq, indices: &[u64]) -> PolyA {
        PolyA::from_coeffs(indices.iter().map(|&i| fq.elt(i)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FieldElement(1)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == Some(FieldElement(1))
    }

    /// Coefficient of T^i (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement(0))
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn add(&self, fq: &Fq, other: &PolyA) -> PolyA {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(fq.add(self.coeff(i), other.coeff(i)));
        }
        PolyA::from_coeffs(out)
    }

    pub fn neg(&self, fq: &Fq) -> PolyA {
        PolyA { coeffs: self.coeffs.iter().map(|&c| fq.neg(c)).collect() }
    }

    pub fn sub(&self, fq: &Fq, other: &PolyA) -> PolyA {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(fq.sub(self.coeff(i), other.coeff(i)));
        }
        PolyA::from_coeffs(out)
    }

    pub fn scale(&self, fq: &Fq, c: FieldElement) -> PolyA {
        if c.is_zero() {
            return PolyA::zero();
        }
        PolyA { coeffs: self.coeffs.iter().map(|&a| fq.mul(a, c)).collect() }
    }

    /// self * T^k.
    pub fn shifted(&self, k: usize) -> PolyA {
        if self.is_zero() {
            return PolyA::zero();
        }
        let mut coeffs = vec![FieldElement(0); k];
        coeffs.extend_from_slice(&self.coeffs);
        PolyA { coeffs }
    }

    pub fn mul(&self, fq: &Fq, other: &PolyA) -> PolyA {
        if self.is_zero() || other.is_zero() {
            return PolyA::zero();
        }
        let out_len = self.coeffs.len() + other.coeffs.len() - 1;
        if fq.e() == 1 {
            // Prime field: accumulate raw products in u64 and reduce once per
            // output coefficient.  Products are < 2^32 and at most 2^32 terms
            // land in one cell, so the accumulator cannot overflow.
            let p = fq.p();
            let mut acc = vec![0u64; out_len];
            for (i, &ai) in self.coeffs.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                let av = ai.0 as u64;
                for (j, &bj) in other.coeffs.iter().enumerate() {
                    acc[i + j] += av * bj.0 as u64;
                }
            }
            PolyA::from_coeffs(acc.into_iter().map(|v| FieldElement((v % p) as u16)).collect())
        } else {
            let mut out = vec![FieldElement(0); out_len];
            for (i, &ai) in self.coeffs.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                for (j, &bj) in other.coeffs.iter().enumerate() {
                    out[i + j] = fq.add(out[i + j], fq.mul(ai, bj));
                }
            }
            PolyA::from_coeffs(out)
        }
    }

    /// Euclidean division: returns (quotient, remainder) with
    /// deg r < deg divisor.  Panics if the divisor is zero.
    pub fn divmod(&self, fq: &Fq, divisor: &PolyA) -> (PolyA, PolyA) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = fq.inv(divisor.leading_coeff().unwrap());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (PolyA::zero(), self.clone());
        }
        let mut quot = vec![FieldElement(0); rem.len() - dd];
        let mut top = rem.len();
        while top > dd {
            let c = rem[top - 1];
            if !c.is_zero() {
                let t = fq.mul(c, lead_inv);
                let shift = top - 1 - dd;
                quot[shift] = t;
                for (i, &di) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] = fq.sub(rem[shift + i], fq.mul(t, di));
                }
            }
            top -= 1;
        }
        (PolyA::from_coeffs(quot), PolyA::from_coeffs(rem))
    }

    pub fn rem(&self, fq: &Fq, divisor: &PolyA) -> PolyA {
        self.divmod(fq, divisor).1
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, fq: &Fq, divisor: &PolyA) -> PolyA {
        let (q, r) = self.divmod(fq, divisor);
        assert!(r.is_zero(), "div_exact: division left a nonzero remainder");
        q
    }

    /// Monic greatest common divisor (gcd(0, 0) = 0).
    pub fn gcd(&self, fq: &Fq, other: &PolyA) -> PolyA {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(fq, &b);
            a = b;
            b = r;
        }
        match a.leading_coeff() {
            Some(lc) if lc != FieldElement(1) => a.scale(fq, fq.inv(lc)),
            _ => a,
        }
    }

    /// The p-power Frobenius on A: (sum c_i T^i)^p = sum c_i^p T^{ip}.
    pub fn frobenius_p(&self, fq: &Fq) -> PolyA {
        if self.is_zero() {
            return PolyA::zero();
        }
        let p = fq.p() as usize;
        let mut out = vec![FieldElement(0); (self.coeffs.len() - 1) * p + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * p] = fq.frob_p(c);
        }
        PolyA { coeffs: out }
    }

    /// self^exp, factoring the exponent as p^v * m and applying the p-power
    /// Frobenius v times after an ordinary square-and-multiply for m.
    pub fn pow(&self, fq: &Fq, exp: u64) -> PolyA {
        if exp == 0 {
            return PolyA::one();
        }
        if self.is_zero() {
            return PolyA::zero();
        }
        let p = fq.p();
        let mut m = exp;
        let mut v = 0u32;
        while m % p == 0 {
            m /= p;
            v += 1;
        }
        let mut acc = PolyA::one();
        let mut base = self.clone();
        let mut n = m;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(fq, &base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(fq, &base);
            }
        }
        for _ in 0..v {
            acc = acc.frobenius_p(fq);
        }
        acc
    }

    /// The q-th root when self is a q-th power: since c^q = c on Fq,
    /// (sum b_i T^i)^q = sum b_i T^{iq}, so the root reads off every q-th
    /// coefficient.  Returns the exponent of the first offending term
    /// otherwise.
    pub fn qth_root(&self, fq: &Fq) -> Result<PolyA, usize> {
        if self.is_zero() {
            return Ok(PolyA::zero());
        }
        let q = fq.q() as usize;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() && i % q != 0 {
                return Err(i);
            }
        }
        let out: Vec<FieldElement> =
            self.coeffs.iter().step_by(q).copied().collect();
        Ok(PolyA::from_coeffs(out))
    }

    /// Irreducibility over Fq by trial division against all monic
    /// polynomials of degree up to deg/2 (desk-scale degrees).
    pub fn is_irreducible(&self, fq: &Fq) -> bool {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        for div_deg in 1..=d / 2 {
            for cand in monic_enum(fq, div_deg) {
                if self.rem(fq, &cand).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Canonical integer encoding: sum of coefficient indices in base q.
    /// Injective on all of A; used in cache keys and compact labels.
    pub fn to_int(&self, fq: &Fq) -> u64 {
        let q = fq.q();
        let mut n = 0u64;
        for &c in self.coeffs.iter().rev() {
            n = n * q + c.index();
        }
        n
    }

    /// Inverse of [`PolyA::to_int`].
    pub fn from_int(fq: &Fq, mut n: u64) -> PolyA {
        let q = fq.q();
        let mut coeffs = Vec::new();
        while n > 0 {
            coeffs.push(fq.elt(n % q));
            n /= q;
        }
        PolyA { coeffs }
    }
}

impl Ord for PolyA {
    fn cmp(&self, other: &Self) -> Ordering {
        // Degree first, then coefficient tuples lexicographically from the
        // constant term upward.
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for PolyA {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The bracket [i] = T^{q^i} - T, for i >= 1.
pub fn bracket(fq: &Fq, i: u32) -> PolyA {
    assert!(i >= 1, "bracket index must be at least 1");
    let qi = (fq.q() as usize).pow(i);
    let mut coeffs = vec![FieldElement(0); qi + 1];
    coeffs[1] = fq.neg(fq.one());
    coeffs[qi] = fq.one();
    PolyA::from_coeffs(coeffs)
}

/// The Carlitz factorial D_i: D_0 = 1 and D_i = [i] * D_{i-1}^q.
/// Equivalently, D_i is the product of all monic polynomials of degree i.
pub fn carlitz_factorial(fq: &Fq, i: u32) -> PolyA {
    let mut d = PolyA::one();
    for j in 1..=i {
        d = bracket(fq, j).mul(fq, &d.pow(fq, fq.q()));
    }
    d
}

/// All monic polynomials of degree exactly d, in canonical order
/// (coefficient tuples (c_0, ..., c_{d-1}) lexicographic, c_0 most
/// significant).
pub fn monic_enum(fq: &Fq, d: usize) -> Vec<PolyA> {
    let q = fq.q();
    let count = q.pow(d as u32);
    let mut out = Vec::with_capacity(count as usize);
    for idx in 0..count {
        let mut coeffs = vec![FieldElement(0); d + 1];
        coeffs[d] = FieldElement(1);
        let mut rest = idx;
        // Peel digits least-significant-first; c_{d-1} varies fastest.
        for j in (0..d).rev() {
            coeffs[j] = fq.elt(rest % q);
            rest /= q;
        }
        out.push(PolyA { coeffs });
    }
    out
}

/// All monic irreducible polynomials of degree exactly d, in canonical order.
pub fn irreducible_enum(fq: &Fq, d: usize) -> Vec<PolyA> {
    monic_enum(fq, d).into_iter().filter(|a| a.is_irreducible(fq)).collect()
}

/// All q^d polynomials of degree strictly below d (zero included), in
/// canonical order.
pub fn enum_deg_below(fq: &Fq, d: usize) -> Vec<PolyA> {
    let q = fq.q();
    let count = q.pow(d as u32);
    let mut out = Vec::with_capacity(count as usize);
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(d);
        let mut rest = idx;
        for _ in 0..d {
            coeffs.push(fq.elt(rest % q));
            rest /= q;
        }
        out.push(PolyA::from_coeffs(coeffs));
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Fq {
        Fq::new(3, 1, None).unwrap()
    }

    #[test]
    fn bracket_one_is_t_cubed_minus_t() {
        let fq = f3();
        assert_eq!(bracket(&fq, 1), PolyA::from_indices(&fq, &[0, 2, 0, 1]));
    }

    #[test]
    fn carlitz_factorial_is_product_of_monics() {
        let fq = f3();
        for i in 1..=2u32 {
            let mut prod = PolyA::one();
            for a in monic_enum(&fq, i as usize) {
                prod = prod.mul(&fq, &a);
            }
            assert_eq!(carlitz_factorial(&fq, i), prod, "degree {i}");
        }
        assert_eq!(carlitz_factorial(&fq, 0), PolyA::one());
        // D_2 = [2] * [1]^3, degree 2 * 3^2 = 18.
        assert_eq!(carlitz_factorial(&fq, 2).degree(), Some(18));
    }

    #[test]
    fn mul_and_divmod_agree() {
        let fq = f3();
        let a = PolyA::from_indices(&fq, &[2, 0, 1, 1]); // T^3 + T^2 + 2
        let b = PolyA::from_indices(&fq, &[1, 2]); // 2T + 1
        let prod = a.mul(&fq, &b);
        let (quot, rem) = prod.divmod(&fq, &b);
        assert_eq!(quot, a);
        assert!(rem.is_zero());

        let (q2, r2) = a.divmod(&fq, &b);
        assert_eq!(q2.mul(&fq, &b).add(&fq, &r2), a);
        assert!(r2.degree() < b.degree());
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let fq = f3();
        let a = PolyA::from_indices(&fq, &[1, 1]); // T + 1
        let mut acc = PolyA::one();
        for e in 0..=12u64 {
            assert_eq!(a.pow(&fq, e), acc, "exponent {e}");
            acc = acc.mul(&fq, &a);
        }
    }

    #[test]
    fn frobenius_and_qth_root() {
        let fq = f3();
        let a = PolyA::from_indices(&fq, &[2, 1, 0, 2]);
        let cube = a.pow(&fq, 3);
        assert_eq!(cube, a.frobenius_p(&fq));
        assert_eq!(cube.qth_root(&fq), Ok(a.clone()));
        // T^4 + T is not a cube; first bad exponent is 1.
        let not_cube = PolyA::from_indices(&fq, &[0, 1, 0, 0, 1]);
        assert_eq!(not_cube.qth_root(&fq), Err(1));
    }

    #[test]
    fn qth_root_in_extension_field() {
        let f4 = Fq::new(2, 2, None).unwrap();
        let a = PolyA::from_indices(&f4, &[2, 3, 1]);
        let fourth = a.pow(&f4, 4);
        assert_eq!(fourth.qth_root(&f4), Ok(a));
    }

    #[test]
    fn gcd_is_monic_common_divisor() {
        let fq = f3();
        let d = PolyA::from_indices(&fq, &[1, 1]); // T + 1
        let a = d.mul(&fq, &PolyA::from_indices(&fq, &[0, 1])); // (T+1) T
        let b = d.mul(&fq, &PolyA::from_indices(&fq, &[2, 1])); // (T+1)(T+2)
        // Scale b to exercise normalization.
        let g = a.gcd(&fq, &b.scale(&fq, fq.elt(2)));
        assert_eq!(g, d);
        assert!(PolyA::zero().gcd(&fq, &PolyA::zero()).is_zero());
    }

    #[test]
    fn monic_enumeration_order() {
        let fq = f3();
        let deg2 = monic_enum(&fq, 2);
        assert_eq!(deg2.len(), 9);
        assert_eq!(deg2[0], PolyA::var_pow(2));
        assert_eq!(deg2[1], PolyA::from_indices(&fq, &[0, 1, 1])); // T^2 + T
        assert_eq!(deg2[3], PolyA::from_indices(&fq, &[1, 0, 1])); // T^2 + 1
        let mut sorted = deg2.clone();
        sorted.sort();
        assert_eq!(sorted, deg2, "enumeration order must match Ord");
        assert_eq!(monic_enum(&fq, 0), vec![PolyA::one()]);
    }

    #[test]
    fn enum_deg_below_counts_and_order() {
        let fq = f3();
        let all = enum_deg_below(&fq, 2);
        assert_eq!(all.len(), 9);
        assert!(all[0].is_zero());
        assert_eq!(all[1], PolyA::one());
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
    }

    #[test]
    fn irreducible_counts() {
        let fq = f3();
        assert_eq!(irreducible_enum(&fq, 1).len(), 3);
        assert_eq!(irreducible_enum(&fq, 2).len(), 3);
        assert_eq!(irreducible_enum(&fq, 3).len(), 8);
        assert!(bracket(&fq, 1).is_irreducible(&fq) == false);
        // T^2 + 1 is irreducible over F_3.
        assert!(PolyA::from_indices(&fq, &[1, 0, 1]).is_irreducible(&fq));
    }

    #[test]
    fn int_encoding_roundtrip() {
        let fq = f3();
        for n in 0..200u64 {
            let a = PolyA::from_int(&fq, n);
            assert_eq!(a.to_int(&fq), n);
        }
        assert_eq!(PolyA::var().to_int(&fq), 3);
    }

    #[test]
    fn ord_sorts_by_degree_first() {
        let fq = f3();
        let one = PolyA::one();
        let t = PolyA::var();
        let t2 = PolyA::var_pow(2);
        assert!(PolyA::zero() < one);
        assert!(one < t);
        assert!(t < PolyA::from_indices(&fq, &[1, 1]));
        assert!(PolyA::from_indices(&fq, &[2, 2]) < t2);
    }
}
