//! The coefficient field Fq = F_{p^e}.
//!
//! A [`Fq`] value is a context object: it owns the field parameters and, for
//! extension fields, the full scalar arithmetic tables.  Elements themselves
//! are plain indices ([`FieldElement`]) into the canonical enumeration of the
//! field, so they are `Copy`, order-comparable, and meaningless without the
//! context that produced them.  All arithmetic goes through `Fq` methods.
//!
//! Canonical element encoding: an element with base-p coordinate vector
//! `(c_0, ..., c_{e-1})` (coefficients of 1, a, a^2, ... where `a` is the
//! residue of the modulus variable) has index `sum_i c_i * p^i`.  For prime
//! fields the index is simply the residue.

use std::fmt;

/// Largest supported prime subfield characteristic (indices must fit `u16`).
pub(crate) const MAX_PRIME: u64 = u16::MAX as u64;

/// Largest supported extension field order (arithmetic is table-backed).
pub(crate) const MAX_EXT_ORDER: u64 = 1024;

/// An element of Fq, stored as its canonical index in `0..q`.
///
/// Index 0 is the additive identity and index 1 the multiplicative identity
/// in every supported field.  The derived `Ord` agrees with the canonical
/// field order used in enumerations and file formats.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FieldElement(pub(crate) u16);

impl FieldElement {
    /// The canonical index of this element.
    pub fn index(self) -> u64 {
        self.0 as u64
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Errors from field construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FieldError {
    NonPrime(u64),
    PrimeTooLarge(u64),
    ExtensionTooLarge(u64),
    ZeroExtensionDegree,
    ModulusForPrimeField,
    ModulusWrongDegree { expected: u32, got: usize },
    ModulusNotMonic,
    ModulusReducible,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NonPrime(p) => write!(f, "{p} is not prime"),
            FieldError::PrimeTooLarge(p) => {
                write!(f, "prime {p} exceeds the supported bound {MAX_PRIME}")
            }
            FieldError::ExtensionTooLarge(q) => {
                write!(f, "extension field order {q} exceeds the supported bound {MAX_EXT_ORDER}")
            }
            FieldError::ZeroExtensionDegree => write!(f, "extension degree e must be at least 1"),
            FieldError::ModulusForPrimeField => {
                write!(f, "a modulus may only be supplied for extension fields (e > 1)")
            }
            FieldError::ModulusWrongDegree { expected, got } => {
                write!(f, "modulus degree {got} does not match extension degree {expected}")
            }
            FieldError::ModulusNotMonic => write!(f, "modulus must be monic"),
            FieldError::ModulusReducible => write!(f, "modulus is reducible over F_p"),
        }
    }
}

impl std::error::Error for FieldError {}

/// The field Fq = F_{p^e} with its arithmetic tables.
pub struct Fq {
    p: u64,
    e: u32,
    q: u64,
    /// Base-p coordinates of the monic degree-e modulus, length e+1;
    /// `None` exactly when e = 1.
    modulus: Option<Vec<u64>>,
    // Tables are built only for e > 1 (empty for prime fields).
    add_tab: Vec<u16>,
    mul_tab: Vec<u16>,
    inv_tab: Vec<u16>,
    frob_tab: Vec<u16>,
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fq")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl Fq {
    /// Builds F_{p^e}.  For e > 1 a monic irreducible modulus of degree e
    /// over F_p may be supplied as base-p coordinates `(c_0, ..., c_e)`
    /// (low degree first); otherwise the default modulus is the first monic
    /// irreducible of degree e in the order that compares coefficient
    /// tuples `(c_{e-1}, ..., c_0)` lexicographically.
    pub fn new(p: u64, e: u32, modulus: Option<&[u64]>) -> Result<Fq, FieldError> {
        if !is_prime_u64(p) {
            return Err(FieldError::NonPrime(p));
        }
        if p > MAX_PRIME {
            return Err(FieldError::PrimeTooLarge(p));
        }
        if e == 0 {
            return Err(FieldError::ZeroExtensionDegree);
        }
        if e == 1 {
            if modulus.is_some() {
                return Err(FieldError::ModulusForPrimeField);
            }
            return Ok(Fq {
                p,
                e,
                q: p,
                modulus: None,
                add_tab: Vec::new(),
                mul_tab: Vec::new(),
                inv_tab: Vec::new(),
                frob_tab: Vec::new(),
            });
        }

        let q = p.checked_pow(e).filter(|&q| q <= MAX_EXT_ORDER).ok_or(
            FieldError::ExtensionTooLarge(p.saturating_pow(e)),
        )?;

        let modulus = match modulus {
            Some(m) => {
                let m: Vec<u64> = m.iter().map(|&c| c % p).collect();
                let deg = fp_degree(&m);
                if deg != Some(e as usize) {
                    return Err(FieldError::ModulusWrongDegree {
                        expected: e,
                        got: deg.unwrap_or(0),
                    });
                }
                if m[e as usize] != 1 {
                    return Err(FieldError::ModulusNotMonic);
                }
                if !fp_is_irreducible(p, &m) {
                    return Err(FieldError::ModulusReducible);
                }
                let mut m = m;
                m.truncate(e as usize + 1);
                m
            }
            None => default_modulus(p, e),
        };

        let mut fq = Fq {
            p,
            e,
            q,
            modulus: Some(modulus),
            add_tab: Vec::new(),
            mul_tab: Vec::new(),
            inv_tab: Vec::new(),
            frob_tab: Vec::new(),
        };
        fq.build_tables();
        Ok(fq)
    }

    /// Builds Fq from the field order, factoring q = p^e (unique since p is
    /// the only prime divisor of q).
    pub fn from_order(q: u64, modulus: Option<&[u64]>) -> Result<Fq, FieldError> {
        if q < 2 {
            return Err(FieldError::NonPrime(q));
        }
        let mut p = q;
        for cand in 2..=q {
            if cand * cand > q {
                break;
            }
            if q % cand == 0 {
                p = cand;
                break;
            }
        }
        let mut e = 0u32;
        let mut rest = q;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if rest != 1 {
            return Err(FieldError::NonPrime(q));
        }
        Fq::new(p, e, modulus)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Base-p coordinates of the modulus (low degree first), for e > 1.
    pub fn modulus_coords(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// The element with canonical index `i` (panics if `i >= q`).
    pub fn elt(&self, i: u64) -> FieldElement {
        assert!(i < self.q, "element index {i} out of range for q = {}", self.q);
        FieldElement(i as u16)
    }

    /// Embeds an integer via the prime subfield: `n mod p`.
    pub fn from_u64(&self, n: u64) -> FieldElement {
        FieldElement((n % self.p) as u16)
    }

    /// Builds an element from base-p coordinates (low power of `a` first);
    /// missing trailing coordinates are zero.
    pub fn from_coords(&self, coords: &[u64]) -> FieldElement {
        assert!(
            coords.len() <= self.e as usize,
            "coordinate vector longer than extension degree"
        );
        let mut idx = 0u64;
        for (i, &c) in coords.iter().enumerate() {
            idx += (c % self.p) * self.p.pow(i as u32);
        }
        FieldElement(idx as u16)
    }

    /// Base-p coordinate vector of `x`, length e.
    pub fn coords(&self, x: FieldElement) -> Vec<u64> {
        let mut idx = x.index();
        let mut out = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            out.push(idx % self.p);
            idx /= self.p;
        }
        out
    }

    /// Iterates over all q elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u16).map(FieldElement)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if self.e == 1 {
            let s = x.0 as u64 + y.0 as u64;
            FieldElement(if s >= self.p { (s - self.p) as u16 } else { s as u16 })
        } else {
            self.add_tab[x.0 as usize * self.q as usize + y.0 as usize].into()
        }
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        if self.e == 1 {
            if x.0 == 0 {
                x
            } else {
                FieldElement((self.p - x.0 as u64) as u16)
            }
        } else {
            // Negation is coordinatewise in base p.
            let coords: Vec<u64> = self
                .coords(x)
                .into_iter()
                .map(|c| if c == 0 { 0 } else { self.p - c })
                .collect();
            self.from_coords(&coords)
        }
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if self.e == 1 {
            FieldElement(((x.0 as u64 * y.0 as u64) % self.p) as u16)
        } else {
            self.mul_tab[x.0 as usize * self.q as usize + y.0 as usize].into()
        }
    }

    /// Multiplicative inverse.  Panics on zero.
    pub fn inv(&self, x: FieldElement) -> FieldElement {
        assert!(!x.is_zero(), "inversion of zero in Fq");
        if self.e == 1 {
            // Fermat: x^{p-2}.
            self.pow(x, self.p - 2)
        } else {
            FieldElement(self.inv_tab[x.0 as usize])
        }
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.mul(x, self.inv(y))
    }

    pub fn pow(&self, x: FieldElement, mut n: u64) -> FieldElement {
        let mut base = x;
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// The p-power Frobenius x -> x^p (identity on prime fields).
    pub fn frob_p(&self, x: FieldElement) -> FieldElement {
        if self.e == 1 {
            x
        } else {
            FieldElement(self.frob_tab[x.0 as usize])
        }
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let p = self.p;
        let e = self.e as usize;
        let modulus = self.modulus.as_ref().unwrap().clone();

        let coords_of = |idx: u64| -> Vec<u64> {
            let mut idx = idx;
            let mut v = Vec::with_capacity(e);
            for _ in 0..e {
                v.push(idx % p);
                idx /= p;
            }
            v
        };
        let index_of = |c: &[u64]| -> u16 {
            let mut idx = 0u64;
            for (i, &ci) in c.iter().enumerate().take(e) {
                idx += (ci % p) * p.pow(i as u32);
            }
            idx as u16
        };

        self.add_tab = vec![0; q * q];
        self.mul_tab = vec![0; q * q];
        for x in 0..q {
            let cx = coords_of(x as u64);
            for y in 0..q {
                let cy = coords_of(y as u64);
                let sum: Vec<u64> = cx.iter().zip(&cy).map(|(&a, &b)| (a + b) % p).collect();
                self.add_tab[x * q + y] = index_of(&sum);
                let prod = fp_rem(p, &fp_mul(p, &cx, &cy), &modulus);
                self.mul_tab[x * q + y] = index_of(&prod);
            }
        }
        self.inv_tab = vec![0; q];
        for x in 1..q {
            for y in 1..q {
                if self.mul_tab[x * q + y] == 1 {
                    self.inv_tab[x] = y as u16;
                    break;
                }
            }
        }
        self.frob_tab = (0..q as u16).map(FieldElement).map(|x| self.pow_tab(x)).collect();
    }

    // x^p via the freshly built mul table (used only during construction).
    fn pow_tab(&self, x: FieldElement) -> u16 {
        let q = self.q as usize;
        let mut acc = FieldElement(1);
        let mut base = x;
        let mut n = self.p;
        while n > 0 {
            if n & 1 == 1 {
                acc = FieldElement(self.mul_tab[acc.0 as usize * q + base.0 as usize]);
            }
            base = FieldElement(self.mul_tab[base.0 as usize * q + base.0 as usize]);
            n >>= 1;
        }
        acc.0
    }
}

impl From<u16> for FieldElement {
    fn from(v: u16) -> Self {
        FieldElement(v)
    }
}

/// Deterministic primality test by trial division (desk-scale inputs).
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// --- dense F_p[x] helpers used for modulus validation and table building ---
// Coefficient vectors are low-degree-first and not necessarily trimmed.

pub(crate) fn fp_degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn fp_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
pub(crate) fn fp_rem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    let md = fp_degree(m).expect("fp_rem: zero modulus");
    let mut r: Vec<u64> = a.to_vec();
    while let Some(rd) = fp_degree(&r) {
        if rd < md {
            break;
        }
        let c = r[rd];
        let shift = rd - md;
        for (i, &mi) in m.iter().enumerate().take(md + 1) {
            let t = (c * mi) % p;
            let idx = i + shift;
            r[idx] = (r[idx] + p - t % p) % p;
        }
    }
    r.truncate(md);
    r.resize(md, 0);
    r
}

/// Irreducibility over F_p by trial division against every monic polynomial
/// of degree between 1 and deg/2.
pub(crate) fn fp_is_irreducible(p: u64, m: &[u64]) -> bool {
    let d = match fp_degree(m) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if d == 1 {
        return true;
    }
    for div_deg in 1..=d / 2 {
        let count = p.pow(div_deg as u32);
        for idx in 0..count {
            // Monic divisor candidate with low coefficients from base-p digits.
            let mut cand = vec![0u64; div_deg + 1];
            let mut rest = idx;
            for c in cand.iter_mut().take(div_deg) {
                *c = rest % p;
                rest /= p;
            }
            cand[div_deg] = 1;
            let r = fp_rem(p, m, &cand);
            if fp_degree(&r).is_none() {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible of degree e over F_p, ordering candidates by the
/// coefficient tuple (c_{e-1}, ..., c_0) compared lexicographically.
fn default_modulus(p: u64, e: u32) -> Vec<u64> {
    let e = e as usize;
    let count = p.pow(e as u32);
    for idx in 0..count {
        let mut cand = vec![0u64; e + 1];
        let mut rest = idx;
        for c in cand.iter_mut().take(e) {
            *c = rest % p;
            rest /= p;
        }
        cand[e] = 1;
        if fp_is_irreducible(p, &cand) {
            return cand;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f3 = Fq::new(3, 1, None).unwrap();
        assert_eq!(f3.q(), 3);
        assert!(f3.modulus_coords().is_none());
        let two = f3.elt(2);
        assert_eq!(f3.add(two, two), f3.one());
        assert_eq!(f3.mul(two, two), f3.one());
        assert_eq!(f3.inv(two), two);
        assert_eq!(f3.neg(f3.one()), two);
        assert_eq!(f3.frob_p(two), two);
    }

    #[test]
    fn non_prime_p_rejected() {
        assert_eq!(Fq::new(4, 1, None).unwrap_err(), FieldError::NonPrime(4));
    }

    #[test]
    fn f4_default_modulus_is_x2_x_1() {
        let f4 = Fq::new(2, 2, None).unwrap();
        assert_eq!(f4.q(), 4);
        assert_eq!(f4.modulus_coords().unwrap(), &[1, 1, 1]);
        // a * a = a + 1 under x^2 + x + 1.
        let a = f4.elt(2);
        assert_eq!(f4.mul(a, a), f4.elt(3));
        assert_eq!(f4.inv(a), f4.elt(3));
    }

    #[test]
    fn f9_default_modulus_is_x2_1() {
        // Over F_3: x^2 and x^2+... scanning (c_1,c_0): x^2 (reducible),
        // x^2+1 has no roots, so it is the default.
        let f9 = Fq::new(3, 2, None).unwrap();
        assert_eq!(f9.modulus_coords().unwrap(), &[1, 0, 1]);
        // a^2 = -1 = 2.
        let a = f9.elt(3); // coords (0,1)
        assert_eq!(f9.mul(a, a), f9.elt(2));
    }

    #[test]
    fn explicit_modulus_validation() {
        assert_eq!(
            Fq::new(2, 2, Some(&[0, 0, 1])).unwrap_err(),
            FieldError::ModulusReducible
        );
        assert_eq!(
            Fq::new(2, 2, Some(&[1, 1])).unwrap_err(),
            FieldError::ModulusWrongDegree { expected: 2, got: 1 }
        );
        assert_eq!(
            Fq::new(3, 1, Some(&[1, 1])).unwrap_err(),
            FieldError::ModulusForPrimeField
        );
        assert!(Fq::new(2, 3, Some(&[1, 1, 0, 1])).is_ok());
    }

    #[test]
    fn from_order_factors_q() {
        let f8 = Fq::from_order(8, None).unwrap();
        assert_eq!((f8.p(), f8.e()), (2, 3));
        let f7 = Fq::from_order(7, None).unwrap();
        assert_eq!((f7.p(), f7.e()), (7, 1));
        assert!(Fq::from_order(12, None).is_err());
    }

    #[test]
    fn field_axioms_exhaustive_small_q() {
        for (p, e) in [(2u64, 1u32), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3)] {
            let f = Fq::new(p, e, None).unwrap();
            let q = f.q();
            for x in f.elements() {
                // x^q = x (the q-power Frobenius fixes Fq pointwise).
                assert_eq!(f.pow(x, q), x, "x^q != x for q={q}");
                if !x.is_zero() {
                    assert_eq!(f.pow(x, q - 1), f.one());
                    assert_eq!(f.mul(x, f.inv(x)), f.one());
                }
                assert_eq!(f.add(x, f.neg(x)), f.zero());
                // frob_p is the e-th root of the identity map.
                let mut y = x;
                for _ in 0..e {
                    y = f.frob_p(y);
                }
                assert_eq!(y, x);
                for y in f.elements() {
                    assert_eq!(f.mul(x, y), f.mul(y, x));
                    assert_eq!(f.add(x, y), f.add(y, x));
                }
            }
        }
    }

    #[test]
    fn unit_power_sums() {
        // sum_{theta in Fq*} theta^r = -1 if (q-1) | r, else 0.
        for (p, e) in [(2u64, 1u32), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3)] {
            let f = Fq::new(p, e, None).unwrap();
            let q = f.q();
            for r in 1..=(2 * (q - 1) + 1) {
                let mut s = f.zero();
                for x in f.elements().skip(1) {
                    s = f.add(s, f.pow(x, r));
                }
                let expected = if r % (q - 1) == 0 { f.neg(f.one()) } else { f.zero() };
                assert_eq!(s, expected, "q={q}, r={r}");
            }
        }
    }

    #[test]
    fn coords_roundtrip() {
        let f9 = Fq::new(3, 2, None).unwrap();
        for x in f9.elements() {
            assert_eq!(f9.from_coords(&f9.coords(x)), x);
        }
        assert_eq!(f9.from_coords(&[2, 1]).index(), 5);
    }
}
