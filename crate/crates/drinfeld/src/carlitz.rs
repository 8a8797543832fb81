//! The Carlitz module and its uniformizer substitutions.
//!
//! The Carlitz module is the Fq-linear ring homomorphism rho from A into
//! additive polynomials determined by rho_T(X) = T X + X^q.  For a of degree
//! d, rho_a(X) = sum_{i=0}^{d} l_i(a) X^{q^i} with l_0(a) = a and l_d(a) the
//! leading coefficient of a.
//!
//! From these coefficients come the three substitution objects the rest of
//! the crate consumes:
//!
//! * `t_sub`: the series t_a = t^{q^d} / psi_a(t), where
//!   psi_a(t) = sum_i l_i(a) t^{q^d - q^i} is [`psi_series`].  For monic a
//!   this has integral coefficients and t-order exactly q^d.
//! * `carlitz_exp_inverse`: the Laurent expansion of 1/e_C(w), where
//!   e_C(w) = sum_i w^{q^i}/D_i is the Carlitz exponential.
//! * `torsion_alphas`: the coefficients l_i(p)/p of the exponential attached
//!   to the p-torsion lattice of a monic irreducible p.

use crate::algebra::{carlitz_factorial, Fq, PolyA, RatK};
use crate::series::{LaurentSeries, TruncSeries};

/// Coefficients l_0(a), ..., l_d(a) of rho_a(X) = sum l_i X^{q^i}.
///
/// Built from the recursion for rho_{T^j}: writing m for the coefficient
/// vector of rho_{T^{j-1}}, the next vector is m'_i = T m_i + m_{i-1}^q,
/// and rho_a is assembled Fq-linearly from the rho_{T^j}.
pub fn carlitz_coeffs(fq: &Fq, a: &PolyA) -> Vec<PolyA> {
    let d = a.degree().expect("carlitz_coeffs: a must be nonzero");
    let q = fq.q();
    let mut out = vec![PolyA::zero(); d + 1];
    // m holds the coefficients of rho_{T^j}, starting at j = 0 (rho_1 = X).
    let mut m = vec![PolyA::one()];
    for j in 0..=d {
        let cj = a.coeff(j);
        if !cj.is_zero() {
            for (i, mi) in m.iter().enumerate() {
                out[i] = out[i].add(fq, &mi.scale(fq, cj));
            }
        }
        if j < d {
            let mut next = Vec::with_capacity(m.len() + 1);
            for i in 0..=m.len() {
                let from_t = if i < m.len() { m[i].mul(fq, &PolyA::var()) } else { PolyA::zero() };
                let from_frob = if i >= 1 { m[i - 1].pow(fq, q) } else { PolyA::zero() };
                next.push(from_t.add(fq, &from_frob));
            }
            m = next;
        }
    }
    out
}

/// The polynomial psi_a(t) = sum_i l_i(a) t^{q^d - q^i}, as a series to the
/// requested precision.  Its constant term is the leading coefficient of a,
/// so for monic a it is a unit with constant term 1.
pub fn psi_series(fq: &Fq, a: &PolyA, prec: usize) -> TruncSeries {
    let d = a.degree().expect("psi_series: a must be nonzero") as u32;
    let q = fq.q() as usize;
    let qd = q.pow(d);
    let ls = carlitz_coeffs(fq, a);
    let mut s = TruncSeries::zero(prec);
    for (i, li) in ls.iter().enumerate() {
        let e = qd - q.pow(i as u32);
        if e <= prec && !li.is_zero() {
            s.set_coeff(e, RatK::from_poly(li.clone()));
        }
    }
    s
}

/// The uniformizer substitution t_a = t^{q^d} / psi_a(t) for monic a, to the
/// requested precision.  The result has t-order exactly q^d (zero to
/// precision when q^d exceeds it) and integral coefficients.
pub fn t_sub(fq: &Fq, a: &PolyA, prec: usize) -> TruncSeries {
    assert!(a.is_monic(), "t_sub is defined for monic a");
    t_sub_any(fq, a, prec)
}

/// `t_sub` for arbitrary nonzero a, where psi_a has constant term lc(a)
/// (still a unit).  Used internally to test scalar-multiple identities such
/// as G_n(t_{theta a}) = theta^{-n} G_n(t_a).
pub(crate) fn t_sub_any(fq: &Fq, a: &PolyA, prec: usize) -> TruncSeries {
    let d = a.degree().expect("t_sub: a must be nonzero") as u32;
    let qd = (fq.q() as usize).pow(d);
    if qd > prec {
        return TruncSeries::zero(prec);
    }
    if d == 0 {
        // a = theta in Fq*: psi_a = theta, so t_a = t / theta.
        let c = RatK::from_scalar(a.coeff(0)).inv(fq);
        return TruncSeries::monomial(prec, 1, c);
    }
    let inner = psi_series(fq, a, prec - qd).inverse(fq);
    inner.shifted_up(qd)
}

/// The Laurent expansion of 1/e_C(w) with lead -1 and `terms` known
/// coefficients (w^{-1} through w^{terms - 2}).  Here
/// e_C(w) = w (1 + sum_{i >= 1} w^{q^i - 1} / D_i).
pub fn carlitz_exp_inverse(fq: &Fq, terms: usize) -> LaurentSeries {
    assert!(terms >= 1, "carlitz_exp_inverse needs at least one coefficient");
    let q = fq.q() as usize;
    let prec = terms - 1;
    let mut v = TruncSeries::one(prec);
    let mut i = 1u32;
    loop {
        let e = q.pow(i) - 1;
        if e > prec {
            break;
        }
        let di = carlitz_factorial(fq, i);
        v.set_coeff(e, RatK::new(fq, PolyA::one(), di));
        i += 1;
    }
    let inv = v.inverse(fq);
    LaurentSeries::new(-1, inv.coeffs().to_vec())
}

/// Exponential coefficients of the p-torsion lattice of a monic irreducible
/// p: e(X) = rho_p(X)/p = sum_i alpha_i X^{q^i} with alpha_i = l_i(p)/p and
/// alpha_0 = 1.
pub fn torsion_alphas(fq: &Fq, prime: &PolyA) -> Vec<RatK> {
    assert!(prime.is_monic(), "torsion lattice requires a monic prime");
    debug_assert!(prime.is_irreducible(fq), "torsion lattice requires an irreducible prime");
    carlitz_coeffs(fq, prime)
        .into_iter()
        .map(|li| RatK::new(fq, li, prime.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bracket;

    fn f3() -> Fq {
        Fq::new(3, 1, None).unwrap()
    }

    #[test]
    fn rho_t_and_rho_t_squared() {
        let fq = f3();
        let lt = carlitz_coeffs(&fq, &PolyA::var());
        assert_eq!(lt, vec![PolyA::var(), PolyA::one()]);
        // rho_{T^2} = T^2 X + (T^q + T) X^q + X^{q^2}.
        let lt2 = carlitz_coeffs(&fq, &PolyA::var_pow(2));
        assert_eq!(
            lt2,
            vec![
                PolyA::var_pow(2),
                PolyA::var_pow(3).add(&fq, &PolyA::var()),
                PolyA::one(),
            ]
        );
    }

    #[test]
    fn ends_are_a_and_leading_coeff() {
        let fq = f3();
        for a in [
            PolyA::from_indices(&fq, &[1, 2, 1]),
            PolyA::from_indices(&fq, &[0, 2, 0, 2]),
            PolyA::from_indices(&fq, &[2]),
        ] {
            let ls = carlitz_coeffs(&fq, &a);
            assert_eq!(ls[0], a, "l_0 = a");
            assert_eq!(
                ls.last().unwrap(),
                &PolyA::constant(a.leading_coeff().unwrap()),
                "l_d = leading coefficient"
            );
        }
    }

    #[test]
    fn rho_is_additive_and_multiplicative() {
        let fq = f3();
        let a = PolyA::from_indices(&fq, &[1, 1]);
        let b = PolyA::from_indices(&fq, &[2, 0, 1]);
        // Additivity: l_i(a + b) = l_i(a) + l_i(b) (same degree needed only
        // for the naive comparison, so pad by comparing termwise).
        let la = carlitz_coeffs(&fq, &a);
        let lb = carlitz_coeffs(&fq, &b);
        let lab = carlitz_coeffs(&fq, &a.add(&fq, &b));
        for i in 0..lab.len() {
            let ai = la.get(i).cloned().unwrap_or_else(PolyA::zero);
            let bi = lb.get(i).cloned().unwrap_or_else(PolyA::zero);
            assert_eq!(lab[i], ai.add(&fq, &bi), "additivity at i = {i}");
        }
        // Composition: l_k(ab) = sum_{i+j=k} l_i(a) l_j(b)^{q^i}.
        let q = fq.q();
        let lprod = carlitz_coeffs(&fq, &a.mul(&fq, &b));
        for (k, lk) in lprod.iter().enumerate() {
            let mut s = PolyA::zero();
            for i in 0..=k {
                let j = k - i;
                if i < la.len() && j < lb.len() {
                    s = s.add(&fq, &la[i].mul(&fq, &lb[j].pow(&fq, q.pow(i as u32))));
                }
            }
            assert_eq!(lk, &s, "composition at k = {k}");
        }
    }

    #[test]
    fn t_sub_of_t_matches_hand_expansion() {
        let fq = f3();
        // t_T = t^3 (1 + T t^2)^{-1} = t^3 - T t^5 + T^2 t^7 - T^3 t^9 + ...
        let tt = t_sub(&fq, &PolyA::var(), 9);
        let t = PolyA::var();
        assert_eq!(tt.ord(), Some(3));
        assert!(tt.coeff(3).is_one());
        assert!(tt.coeff(4).is_zero());
        assert_eq!(tt.coeff(5), &RatK::from_poly(t.neg(&fq)));
        assert_eq!(tt.coeff(7), &RatK::from_poly(t.pow(&fq, 2)));
        assert_eq!(tt.coeff(9), &RatK::from_poly(t.pow(&fq, 3).neg(&fq)));
    }

    #[test]
    fn t_sub_times_psi_is_t_power() {
        let fq = f3();
        for a in [
            PolyA::var(),
            PolyA::from_indices(&fq, &[1, 1]),
            PolyA::var_pow(2),
            PolyA::from_indices(&fq, &[2, 1, 1]),
        ] {
            let d = a.degree().unwrap() as u32;
            let qd = (fq.q() as usize).pow(d);
            let prec = 40;
            let ta = t_sub(&fq, &a, prec);
            assert_eq!(ta.ord(), Some(qd), "t-order is exactly q^d");
            let prod = psi_series(&fq, &a, prec).mul(&fq, &ta);
            let expected = TruncSeries::monomial(prod.prec(), qd, RatK::one());
            assert!(prod.eq_up_to_min_prec(&expected));
        }
    }

    #[test]
    fn t_sub_is_integral() {
        let fq = f3();
        for a in [PolyA::var_pow(2), PolyA::from_indices(&fq, &[1, 2, 0, 1])] {
            let ta = t_sub(&fq, &a, 40);
            for (k, c) in ta.coeffs().iter().enumerate() {
                assert!(c.is_integral(), "t^{k} coefficient of t_a must lie in A");
            }
        }
    }

    #[test]
    fn t_sub_of_one_is_t() {
        let fq = f3();
        let t1 = t_sub(&fq, &PolyA::one(), 6);
        assert!(t1.eq_up_to_min_prec(&TruncSeries::monomial(6, 1, RatK::one())));
    }

    #[test]
    fn exp_inverse_leading_terms() {
        let fq = f3();
        // 1/e_C(w) = w^{-1} - (1/[1]) w + ... over F_3.
        let inv = carlitz_exp_inverse(&fq, 5);
        assert_eq!(inv.lead(), -1);
        assert!(inv.coeff_at(-1).is_one());
        assert!(inv.coeff_at(0).is_zero());
        let d1 = bracket(&fq, 1);
        assert_eq!(inv.coeff_at(1), RatK::new(&fq, PolyA::one(), d1).neg(&fq));
        assert!(inv.coeff_at(2).is_zero());
    }

    #[test]
    fn torsion_alphas_of_t() {
        let fq = f3();
        let alphas = torsion_alphas(&fq, &PolyA::var());
        assert_eq!(alphas.len(), 2);
        assert!(alphas[0].is_one());
        assert_eq!(alphas[1], RatK::new(&fq, PolyA::one(), PolyA::var()));
    }

    #[test]
    fn extension_field_t_sub_order() {
        let f4 = Fq::new(2, 2, None).unwrap();
        let a = PolyA::from_indices(&f4, &[2, 1]); // T + a
        let ta = t_sub(&f4, &a, 12);
        assert_eq!(ta.ord(), Some(4));
        let prod = psi_series(&f4, &a, 12).mul(&f4, &ta);
        assert!(prod.eq_up_to_min_prec(&TruncSeries::monomial(prod.prec(), 4, RatK::one())));
    }
}
