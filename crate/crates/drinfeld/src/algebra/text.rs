//! Text form of polynomials and rationals.
//!
//! The canonical printer emits a sparse sum of `c*T^k` terms in descending
//! degree with no spaces, e.g. `T^3+2*T`.  Field constants are integers for
//! prime fields and polynomials in `a` for extension fields; a multi-term
//! constant used as a coefficient is parenthesized (`(a+1)*T^2`).  A
//! non-integral rational prints as `num/den` with either side parenthesized
//! when it has more than one additive term.
//!
//! The parser accepts a superset: the grammar below with arbitrary
//! whitespace, unary minus, binary minus, and nested parentheses.  Parsing a
//! printed value always returns it bit-exactly.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' uint)?
//! atom   := 'T' | 'a' | uint | '(' expr ')'
//! ```
//!
//! `a` denotes the extension-field generator and is rejected over prime
//! fields.  Exponents are unsigned decimal integers (negative powers are
//! written with `/`).

use std::fmt;

use super::field::{fp_mul, FieldElement, Fq};
use super::poly::PolyA;
use super::rat::RatK;

/// Largest accepted exponent literal (guards absurd allocations).
const MAX_EXPONENT: u64 = 1 << 20;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TextError {
    UnexpectedChar { pos: usize, ch: char },
    UnexpectedEnd,
    ExtensionSymbolOverPrimeField { pos: usize },
    ExponentTooLarge { pos: usize },
    DivisionByZero { pos: usize },
    NotAPolynomial,
    TrailingInput { pos: usize },
}

impl fmt::Display for TextError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TextError::UnexpectedChar { pos, ch } => {
                write!(f, "unexpected character '{ch}' at byte {pos}")
            }
            TextError::UnexpectedEnd => write!(f, "unexpected end of input"),
            TextError::ExtensionSymbolOverPrimeField { pos } => {
                write!(f, "the symbol 'a' at byte {pos} requires an extension field")
            }
            TextError::ExponentTooLarge { pos } => {
                write!(f, "exponent at byte {pos} exceeds the supported bound")
            }
            TextError::DivisionByZero { pos } => write!(f, "division by zero at byte {pos}"),
            TextError::NotAPolynomial => write!(f, "value is not integral (polynomial expected)"),
            TextError::TrailingInput { pos } => write!(f, "trailing input at byte {pos}"),
        }
    }
}

impl std::error::Error for TextError {}

/// Canonical text for a field constant: a decimal integer over a prime
/// field, a polynomial in `a` (descending powers) over an extension field.
pub fn scalar_string(fq: &Fq, c: FieldElement) -> String {
    if fq.e() == 1 {
        return c.index().to_string();
    }
    let coords = fq.coords(c);
    let mut terms = Vec::new();
    for (i, &ci) in coords.iter().enumerate().rev() {
        if ci == 0 {
            continue;
        }
        terms.push(match (i, ci) {
            (0, _) => ci.to_string(),
            (1, 1) => "a".to_string(),
            (1, _) => format!("{ci}*a"),
            (_, 1) => format!("a^{i}"),
            (_, _) => format!("{ci}*a^{i}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

fn scalar_term_count(fq: &Fq, c: FieldElement) -> usize {
    if fq.e() == 1 {
        1
    } else {
        fq.coords(c).iter().filter(|&&ci| ci != 0).count().max(1)
    }
}

/// Canonical text for a polynomial: `c*T^k` terms in descending degree.
pub fn poly_string(fq: &Fq, a: &PolyA) -> String {
    if a.is_zero() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for k in (0..=a.degree().unwrap()).rev() {
        let c = a.coeff(k);
        if c.is_zero() {
            continue;
        }
        let tpart = match k {
            0 => String::new(),
            1 => "T".to_string(),
            _ => format!("T^{k}"),
        };
        let cs = scalar_string(fq, c);
        let term = if k == 0 {
            cs
        } else if c == fq.one() {
            tpart
        } else if scalar_term_count(fq, c) > 1 {
            format!("({cs})*{tpart}")
        } else {
            format!("{cs}*{tpart}")
        };
        terms.push(term);
    }
    terms.join("+")
}

/// Number of additive terms in the printed form of `a` (a multi-term field
/// constant in degree 0 prints unparenthesized, so it counts termwise).
fn poly_term_count(fq: &Fq, a: &PolyA) -> usize {
    a.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, &c)| if k == 0 { scalar_term_count(fq, c) } else { 1 })
        .sum()
}

/// Canonical text for a rational: the polynomial itself when integral, else
/// `num/den` with multi-term sides parenthesized.
pub fn rat_string(fq: &Fq, r: &RatK) -> String {
    if r.is_integral() {
        return poly_string(fq, r.num());
    }
    let wrap = |p: &PolyA| {
        let s = poly_string(fq, p);
        if poly_term_count(fq, p) > 1 {
            format!("({s})")
        } else {
            s
        }
    };
    format!("{}/{}", wrap(r.num()), wrap(r.den()))
}

/// Parses an expression denoting an element of K = Fq(T).
pub fn parse_rat(fq: &Fq, input: &str) -> Result<RatK, TextError> {
    let mut p = Parser { fq, bytes: input.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(TextError::TrailingInput { pos: p.pos });
    }
    Ok(v)
}

/// Parses an expression required to denote a polynomial in A = Fq[T].
pub fn parse_poly(fq: &Fq, input: &str) -> Result<PolyA, TextError> {
    let r = parse_rat(fq, input)?;
    r.as_poly().cloned().ok_or(TextError::NotAPolynomial)
}

struct Parser<'a> {
    fq: &'a Fq,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatK, TextError> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek() {
            match op {
                b'+' => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.add(self.fq, &rhs);
                }
                b'-' => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.sub(self.fq, &rhs);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatK, TextError> {
        let mut acc = self.factor()?;
        while let Some(op) = self.peek() {
            match op {
                b'*' => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = acc.mul(self.fq, &rhs);
                }
                b'/' => {
                    let at = self.pos;
                    self.pos += 1;
                    let rhs = self.factor()?;
                    if rhs.is_zero() {
                        return Err(TextError::DivisionByZero { pos: at });
                    }
                    acc = acc.div(self.fq, &rhs);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatK, TextError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg(self.fq))
            }
            _ => {
                let base = self.atom()?;
                if self.peek() == Some(b'^') {
                    let at = self.pos;
                    self.pos += 1;
                    let exp = self.uint()?;
                    if exp > MAX_EXPONENT {
                        return Err(TextError::ExponentTooLarge { pos: at });
                    }
                    Ok(base.pow(self.fq, exp))
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn atom(&mut self) -> Result<RatK, TextError> {
        match self.peek() {
            None => Err(TextError::UnexpectedEnd),
            Some(b'T') => {
                self.pos += 1;
                Ok(RatK::from_poly(PolyA::var()))
            }
            Some(b'a') => {
                if self.fq.e() == 1 {
                    return Err(TextError::ExtensionSymbolOverPrimeField { pos: self.pos });
                }
                self.pos += 1;
                Ok(RatK::from_scalar(self.fq.elt(self.fq.p())))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(v)
                    }
                    Some(_) => Err(TextError::UnexpectedChar {
                        pos: self.pos,
                        ch: self.bytes[self.pos] as char,
                    }),
                    None => Err(TextError::UnexpectedEnd),
                }
            }
            Some(d) if d.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(RatK::from_scalar(self.fq.from_u64(n)))
            }
            Some(ch) => Err(TextError::UnexpectedChar { pos: self.pos, ch: ch as char }),
        }
    }

    fn uint(&mut self) -> Result<u64, TextError> {
        self.skip_ws();
        let start = self.pos;
        let mut n: u64 = 0;
        while let Some(&d) = self.bytes.get(self.pos) {
            if !d.is_ascii_digit() {
                break;
            }
            n = n
                .saturating_mul(10)
                .saturating_add((d - b'0') as u64);
            self.pos += 1;
        }
        if self.pos == start {
            match self.bytes.get(self.pos) {
                Some(&ch) => Err(TextError::UnexpectedChar { pos: self.pos, ch: ch as char }),
                None => Err(TextError::UnexpectedEnd),
            }
        } else {
            Ok(n)
        }
    }
}

/// Canonical text of an extension-field modulus, as a polynomial in `a`
/// over the prime subfield (e.g. `a^2+a+1`).
pub fn modulus_string(coords: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &ci) in coords.iter().enumerate().rev() {
        if ci == 0 {
            continue;
        }
        terms.push(match (i, ci) {
            (0, _) => ci.to_string(),
            (1, 1) => "a".to_string(),
            (1, _) => format!("{ci}*a"),
            (_, 1) => format!("a^{i}"),
            (_, _) => format!("{ci}*a^{i}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Parses a modulus as a polynomial in `a` over F_p.  This runs before the
/// extension field exists, so it works on raw base-p coefficient vectors.
pub fn parse_modulus(p: u64, input: &str) -> Result<Vec<u64>, TextError> {
    let mut parser = ModulusParser { p, bytes: input.as_bytes(), pos: 0 };
    let v = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(TextError::TrailingInput { pos: parser.pos });
    }
    Ok(v)
}

struct ModulusParser<'a> {
    p: u64,
    bytes: &'a [u8],
    pos: usize,
}

impl ModulusParser<'_> {
    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn expr(&mut self) -> Result<Vec<u64>, TextError> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek() {
            let negate = match op {
                b'+' => false,
                b'-' => true,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            let n = acc.len().max(rhs.len());
            acc.resize(n, 0);
            for (i, &c) in rhs.iter().enumerate() {
                let c = if negate { (self.p - c % self.p) % self.p } else { c };
                acc[i] = (acc[i] + c) % self.p;
            }
            Self::trim(&mut acc);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Vec<u64>, TextError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = fp_mul(self.p, &acc, &rhs);
            Self::trim(&mut acc);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Vec<u64>, TextError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let mut v = self.factor()?;
            for c in v.iter_mut() {
                *c = (self.p - *c % self.p) % self.p;
            }
            Self::trim(&mut v);
            return Ok(v);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            let at = self.pos;
            self.pos += 1;
            let exp = self.uint()?;
            if exp > 64 {
                return Err(TextError::ExponentTooLarge { pos: at });
            }
            let mut acc = vec![1u64];
            for _ in 0..exp {
                acc = fp_mul(self.p, &acc, &base);
            }
            Self::trim(&mut acc);
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Vec<u64>, TextError> {
        match self.peek() {
            None => Err(TextError::UnexpectedEnd),
            Some(b'a') => {
                self.pos += 1;
                Ok(vec![0, 1])
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(v)
                    }
                    Some(_) => Err(TextError::UnexpectedChar {
                        pos: self.pos,
                        ch: self.bytes[self.pos] as char,
                    }),
                    None => Err(TextError::UnexpectedEnd),
                }
            }
            Some(d) if d.is_ascii_digit() => {
                let n = self.uint()?;
                let mut v = vec![n % self.p];
                Self::trim(&mut v);
                Ok(v)
            }
            Some(ch) => Err(TextError::UnexpectedChar { pos: self.pos, ch: ch as char }),
        }
    }

    fn uint(&mut self) -> Result<u64, TextError> {
        self.skip_ws();
        let start = self.pos;
        let mut n: u64 = 0;
        while let Some(&d) = self.bytes.get(self.pos) {
            if !d.is_ascii_digit() {
                break;
            }
            n = n.saturating_mul(10).saturating_add((d - b'0') as u64);
            self.pos += 1;
        }
        if self.pos == start {
            match self.bytes.get(self.pos) {
                Some(&ch) => Err(TextError::UnexpectedChar { pos: self.pos, ch: ch as char }),
                None => Err(TextError::UnexpectedEnd),
            }
        } else {
            Ok(n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Fq {
        Fq::new(3, 1, None).unwrap()
    }

    fn f9() -> Fq {
        Fq::new(3, 2, None).unwrap()
    }

    #[test]
    fn prints_descending_sparse() {
        let fq = f3();
        let p = PolyA::from_indices(&fq, &[0, 2, 0, 1]);
        assert_eq!(poly_string(&fq, &p), "T^3+2*T");
        assert_eq!(poly_string(&fq, &PolyA::zero()), "0");
        assert_eq!(poly_string(&fq, &PolyA::one()), "1");
        assert_eq!(poly_string(&fq, &PolyA::var()), "T");
        assert_eq!(
            poly_string(&fq, &PolyA::from_indices(&fq, &[2, 1, 1])),
            "T^2+T+2"
        );
    }

    #[test]
    fn prints_rationals() {
        let fq = f3();
        let r = RatK::new(
            &fq,
            PolyA::from_indices(&fq, &[1, 1]),
            PolyA::from_indices(&fq, &[0, 0, 0, 1]),
        );
        assert_eq!(rat_string(&fq, &r), "(T+1)/T^3");
        let r2 = RatK::new(&fq, PolyA::from_indices(&fq, &[2]), PolyA::from_indices(&fq, &[1, 0, 1]));
        assert_eq!(rat_string(&fq, &r2), "2/(T^2+1)");
        let r3 = RatK::new(&fq, PolyA::one(), PolyA::var());
        assert_eq!(rat_string(&fq, &r3), "1/T");
    }

    #[test]
    fn prints_extension_coefficients() {
        let fq = f9();
        // Element with coords (1, 1) is a + 1, index 4.
        let c = fq.from_coords(&[1, 1]);
        let p = PolyA::from_coeffs(vec![fq.elt(6), fq.zero(), c]);
        // 2a has single-term text, a+1 is parenthesized.
        assert_eq!(poly_string(&fq, &p), "(a+1)*T^2+2*a");
        assert_eq!(scalar_string(&fq, fq.elt(0)), "0");
        assert_eq!(scalar_string(&fq, fq.elt(5)), "a+2");
    }

    #[test]
    fn parser_roundtrips_printer() {
        let fq = f3();
        let samples = [
            PolyA::zero(),
            PolyA::one(),
            PolyA::var(),
            PolyA::from_indices(&fq, &[0, 2, 0, 1]),
            PolyA::from_indices(&fq, &[1, 2, 2, 0, 1]),
        ];
        for num in &samples {
            for den in &samples[1..] {
                let r = RatK::new(&fq, num.clone(), den.clone());
                let s = rat_string(&fq, &r);
                assert_eq!(parse_rat(&fq, &s).unwrap(), r, "text: {s}");
            }
        }
        let f9 = f9();
        for idx in 0..9u64 {
            let p = PolyA::from_coeffs(vec![f9.elt(idx), f9.elt((idx + 3) % 9), f9.one()]);
            let s = poly_string(&f9, &p);
            assert_eq!(parse_poly(&f9, &s).unwrap(), p, "text: {s}");
        }
    }

    #[test]
    fn parser_accepts_superset() {
        let fq = f3();
        let v = parse_rat(&fq, " - (T + 1) * (T - 1) / T ^ 2 + 1 ").unwrap();
        // -(T^2 - 1)/T^2 + 1 = (1 - T^2 + T^2)/T^2 = 1/T^2.
        assert_eq!(v, RatK::new(&fq, PolyA::one(), PolyA::var_pow(2)));
        assert_eq!(parse_rat(&fq, "T*T*T").unwrap(), RatK::from_poly(PolyA::var_pow(3)));
        assert_eq!(parse_rat(&fq, "5").unwrap(), RatK::from_i64(&fq, 2));
        assert_eq!(parse_rat(&fq, "--T").unwrap(), RatK::from_poly(PolyA::var()));
    }

    #[test]
    fn parser_errors() {
        let fq = f3();
        assert!(matches!(
            parse_rat(&fq, "a+1"),
            Err(TextError::ExtensionSymbolOverPrimeField { pos: 0 })
        ));
        assert!(matches!(parse_rat(&fq, "T+"), Err(TextError::UnexpectedEnd)));
        assert!(matches!(parse_rat(&fq, "T 2"), Err(TextError::TrailingInput { .. })));
        assert!(matches!(parse_rat(&fq, "1/(T-T)"), Err(TextError::DivisionByZero { .. })));
        assert!(matches!(parse_rat(&fq, "T^9999999"), Err(TextError::ExponentTooLarge { .. })));
        assert!(matches!(parse_poly(&fq, "1/T"), Err(TextError::NotAPolynomial)));
        assert!(matches!(parse_rat(&fq, "x"), Err(TextError::UnexpectedChar { pos: 0, ch: 'x' })));
    }

    #[test]
    fn modulus_text_roundtrip() {
        assert_eq!(parse_modulus(2, "a^2+a+1").unwrap(), vec![1, 1, 1]);
        assert_eq!(parse_modulus(3, "a^2+1").unwrap(), vec![1, 0, 1]);
        assert_eq!(parse_modulus(3, "a^2 - a").unwrap(), vec![0, 2, 1]);
        assert_eq!(modulus_string(&[1, 1, 1]), "a^2+a+1");
        assert_eq!(modulus_string(&[1, 0, 1]), "a^2+1");
        let coords = parse_modulus(5, &modulus_string(&[3, 0, 2, 1])).unwrap();
        assert_eq!(coords, vec![3, 0, 2, 1]);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn roundtrip_random_rationals(
                num in proptest::collection::vec(0u64..3, 0..6),
                den in proptest::collection::vec(0u64..3, 1..6),
            ) {
                let fq = f3();
                let d = PolyA::from_indices(&fq, &den);
                let d = if d.is_zero() { PolyA::one() } else { d };
                let r = RatK::new(&fq, PolyA::from_indices(&fq, &num), d);
                let s = rat_string(&fq, &r);
                prop_assert_eq!(parse_rat(&fq, &s).unwrap(), r);
            }

            #[test]
            fn roundtrip_random_extension(
                num in proptest::collection::vec(0u64..9, 0..5),
                den in proptest::collection::vec(0u64..9, 1..5),
            ) {
                let fq = f9();
                let d = PolyA::from_indices(&fq, &den);
                let d = if d.is_zero() { PolyA::one() } else { d };
                let r = RatK::new(&fq, PolyA::from_indices(&fq, &num), d);
                let s = rat_string(&fq, &r);
                prop_assert_eq!(parse_rat(&fq, &s).unwrap(), r);
            }
        }
    }
}
