//! Characters of Vogel's Λ-algebra: the x̂ₙ values, universal dimension, higher
//! Casimir eigenvalues and zero-divisor polynomials.

use num_traits::{One, Zero};

use crate::error::{EvalError, EvalResult};
use crate::poly::MPoly;
use crate::rational::{pow_q, q, qf, Q};

/// A point (α, β, γ) of the Vogel plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VogelPoint {
    pub alpha: Q,
    pub beta: Q,
    pub gamma: Q,
}

impl VogelPoint {
    pub fn new(alpha: Q, beta: Q, gamma: Q) -> Self {
        VogelPoint { alpha, beta, gamma }
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        Self::new(q(a), q(b), q(c))
    }

    pub fn t(&self) -> Q {
        &self.alpha + &self.beta + &self.gamma
    }

    /// Second elementary symmetric function αβ + βγ + γα.
    pub fn e2(&self) -> Q {
        &self.alpha * &self.beta + &self.beta * &self.gamma + &self.gamma * &self.alpha
    }

    pub fn e3(&self) -> Q {
        &self.alpha * &self.beta * &self.gamma
    }

    pub fn sigma(&self) -> Q {
        let t = self.t();
        self.e2() + q(2) * &t * &t
    }

    pub fn omega(&self) -> Q {
        self.e3() + self.t() * self.sigma()
    }

    /// `[t, σ, ω]`.
    pub fn tsw(&self) -> [Q; 3] {
        [self.t(), self.sigma(), self.omega()]
    }

    /// The point with parameters permuted by `perm`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let p = [&self.alpha, &self.beta, &self.gamma];
        Self::new(p[perm[0]].clone(), p[perm[1]].clone(), p[perm[2]].clone())
    }

    pub fn scaled(&self, s: &Q) -> Self {
        Self::new(&self.alpha * s, &self.beta * s, &self.gamma * s)
    }

    fn distinct(&self) -> bool {
        self.alpha != self.beta && self.beta != self.gamma && self.alpha != self.gamma
    }
}

/// χ(x̂ₙ) through the three-term recurrence with inhomogeneous part.
pub fn chi_x(n: usize, v: &VogelPoint) -> Q {
    let (t, e2, e3) = (v.t(), v.e2(), v.e3());
    let mut x = vec![Q::zero(), q(2) * &t, &t * &t];
    for k in 0..n.saturating_sub(2) {
        let next = &t * &x[k + 2] - &e2 * &x[k + 1] + &e3 * &x[k] + &e2 * pow_q(&t, k as u32 + 1) / q(2)
            - &e3 * pow_q(&t, k as u32) / q(2)
            - &e3 * pow_q(&(q(2) * &t), k as u32);
        x.push(next);
    }
    x.swap_remove(n)
}

/// Universal dimension; both displayed forms are evaluated and must agree.
pub fn universal_dim(v: &VogelPoint) -> EvalResult<Q> {
    let (t, s, w) = (v.t(), v.sigma(), v.omega());
    let den = &w - &t * &s;
    if den.is_zero() || v.e3().is_zero() {
        return Err(EvalError::DegeneratePoint("αβγ = 0"));
    }
    let ratio = (&w - q(3) * &t * &s) / den;
    let two_t = q(2) * &t;
    let factored = (&v.alpha - &two_t) * (&v.beta - &two_t) * (&v.gamma - &two_t) / v.e3();
    assert_eq!(ratio, factored, "the two dimension formulas disagree");
    Ok(ratio)
}

fn c_alpha(a: &Q, b: &Q, g: &Q, dim: &Q) -> Q {
    let t = a + b + g;
    let num = -(&t * &t) * (dim - q(8)) + (q(2) + dim) * b * g + (q(3) * dim - q(4)) * &t * (b + g);
    -num / (q(2) * dim * (a - b) * (a - g))
}

/// Closed-form solution of the recurrence; fails at repeated or degenerate parameters.
pub fn chi_x_closed(n: usize, v: &VogelPoint) -> EvalResult<Q> {
    if !v.distinct() {
        return Err(EvalError::DegeneratePoint("repeated Vogel parameters"));
    }
    let t = v.t();
    let two_t = q(2) * &t;
    let den = (&two_t - &v.alpha) * (&two_t - &v.beta) * (&two_t - &v.gamma);
    if den.is_zero() {
        return Err(EvalError::DegeneratePoint("2t equals a Vogel parameter"));
    }
    let dim = universal_dim(v)?;
    if dim.is_zero() {
        return Err(EvalError::DegeneratePoint("zero dimension"));
    }
    let (a, b, g) = (&v.alpha, &v.beta, &v.gamma);
    let ca = c_alpha(a, b, g, &dim);
    let cb = c_alpha(b, a, g, &dim);
    let cg = c_alpha(g, b, a, &dim);
    let n32 = n as u32;
    Ok(-(v.e3() * pow_q(&two_t, n32)) / den + pow_q(&t, n32) / q(2) + ca * pow_q(a, n32) + cb * pow_q(b, n32) + cg * pow_q(g, n32))
}

/// Higher Casimir eigenvalue C_p = 2 (−1)^p t χ(x̂_{p−1}).
pub fn casimir_cp(p: usize, v: &VogelPoint) -> Q {
    assert!(p >= 1, "Casimir index starts at 1");
    let sign = if p % 2 == 0 { q(1) } else { q(-1) };
    sign * q(2) * v.t() * chi_x(p - 1, v)
}

/// Truncated power series in z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSeries {
    pub order: usize,
    pub coeffs: Vec<Q>,
}

impl CharacterSeries {
    pub fn new(order: usize, mut coeffs: Vec<Q>) -> Self {
        coeffs.resize(order + 1, Q::zero());
        CharacterSeries { order, coeffs }
    }

    pub fn coeff(&self, k: usize) -> &Q {
        &self.coeffs[k]
    }

    pub fn mul(&self, other: &CharacterSeries) -> CharacterSeries {
        let order = self.order.min(other.order);
        let mut out = vec![Q::zero(); order + 1];
        for i in 0..=order {
            for j in 0..=order - i {
                out[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        CharacterSeries::new(order, out)
    }

    /// `self / other`, requiring a nonzero constant term in `other`.
    pub fn div(&self, other: &CharacterSeries) -> EvalResult<CharacterSeries> {
        let order = self.order.min(other.order);
        let c0 = &other.coeffs[0];
        if c0.is_zero() {
            return Err(EvalError::DegeneratePoint("series denominator vanishes at z = 0"));
        }
        let mut out: Vec<Q> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc -= &other.coeffs[j] * &out[k - j];
            }
            out.push(acc / c0);
        }
        Ok(CharacterSeries::new(order, out))
    }
}

/// Expansion of the closed generating function of the adjoint Casimir eigenvalues.
pub fn casimir_series(v: &VogelPoint, order: usize) -> EvalResult<CharacterSeries> {
    let dim = universal_dim(v)?;
    let t = v.t();
    let (a, b, g) = (&v.alpha, &v.beta, &v.gamma);
    let t2 = a * a + b * b + g * g;
    let t3 = a * a * a + b * b * b + g * g * g;
    let t_cubed = &t * &t * &t;
    let num = CharacterSeries::new(
        order,
        vec![
            Q::zero(),
            Q::zero(),
            q(96) * &t_cubed,
            q(168) * &t_cubed,
            q(6) * (q(14) * &t_cubed + &t * &t2 - &t3),
            q(13) * &t_cubed + q(3) * &t * &t2 - q(4) * &t3,
        ],
    );
    let lin = |c0: Q, c1: Q| CharacterSeries::new(order, vec![c0, c1]);
    let two_t = q(2) * &t;
    let den = lin(q(6), Q::zero())
        .mul(&lin(two_t.clone(), a.clone()))
        .mul(&lin(two_t.clone(), b.clone()))
        .mul(&lin(two_t, g.clone()))
        .mul(&lin(q(2), q(1)))
        .mul(&lin(q(1), q(1)));
    let mut s = num.div(&den)?;
    s.coeffs[0] += dim;
    Ok(s)
}

/// dim + Σ_{k≥1} χ(x̂_k)(−z)^{k+1}/(2t)^k truncated at `order`.
pub fn casimir_series_from_chi(v: &VogelPoint, order: usize) -> EvalResult<CharacterSeries> {
    let dim = universal_dim(v)?;
    let two_t = q(2) * v.t();
    if two_t.is_zero() {
        return Err(EvalError::DegeneratePoint("t = 0"));
    }
    let mut c = vec![Q::zero(); order + 1];
    c[0] = dim;
    for k in 1..order {
        let sign = if (k + 1) % 2 == 0 { q(1) } else { q(-1) };
        c[k + 1] = sign * chi_x(k, v) / pow_q(&two_t, k as u32);
    }
    Ok(CharacterSeries::new(order, c))
}

/// The three zero-divisor products (P_sl, P_osp, P_exc).
pub fn zero_divisor_polys(v: &VogelPoint) -> (Q, Q, Q) {
    let (a, b, g) = (&v.alpha, &v.beta, &v.gamma);
    let two = q(2);
    let p_sl = (a + b) * (b + g) * (a + g);
    let p_osp = (a + &two * b) * (&two * a + b) * (b + &two * g) * (&two * b + g) * (a + &two * g) * (&two * a + g);
    let p_exc = (a - &two * b - &two * g) * (b - &two * a - &two * g) * (g - &two * a - &two * b);
    (p_sl, p_osp, p_exc)
}

/// Whether the closed form of χ(x̂ₙ) equals the recurrence identically along a
/// classical family, as rational functions of the rank. This covers ranks where
/// Vogel parameters collide and the closed form has removable poles.
pub fn closed_form_family_identity(n: usize, family: crate::registry::Family) -> bool {
    use crate::poly::QPoly;
    let [a, b, g] = crate::registry::registry().family_params(family);
    let dim = crate::universal::family_dim(family);
    let c = |x: i64| QPoly::constant(q(x));
    let t = &(&a + &b) + &g;
    let e2 = &(&(&a * &b) + &(&b * &g)) + &(&g * &a);
    let e3 = &(&a * &b) * &g;
    // recurrence with polynomial coefficients
    let mut x = vec![QPoly::zero(), t.scale(&q(2)), &t * &t];
    for k in 0..n.saturating_sub(2) {
        let k32 = k as u32;
        let next = &(&(&(&t * &x[k + 2]) - &(&e2 * &x[k + 1])) + &(&e3 * &x[k]))
            + &(&(&(&e2 * &t.pow(k32 + 1)).scale(&qf(1, 2)) - &(&e3 * &t.pow(k32)).scale(&qf(1, 2))) - &(&e3 * &t.scale(&q(2)).pow(k32)));
        x.push(next);
    }
    let rec = x.swap_remove(n);
    // closed form as a single fraction
    let n32 = n as u32;
    let two_t = t.scale(&q(2));
    let den0 = &(&(&two_t - &a) * &(&two_t - &b)) * &(&two_t - &g);
    let mut num = &(&(&e3 * &two_t.pow(n32)) * &c(-2)) + &(&t.pow(n32) * &den0);
    let mut den = den0.scale(&q(2));
    let terms = [(&a, &b, &g), (&b, &a, &g), (&g, &b, &a)];
    for (p, u, v) in terms {
        let tt = &t * &t;
        let cnum = &(&(&(&tt * &(&dim - &c(8))) * &c(-1)) + &(&(&(&c(2) + &dim) * u) * v)) + &(&(&(&dim.scale(&q(3)) - &c(4)) * &t) * &(u + v));
        let cden = &(&dim.scale(&q(2)) * &(p - u)) * &(p - v);
        let term_num = &(&cnum * &p.pow(n32)) * &c(-1);
        num = &(&num * &cden) + &(&term_num * &den);
        den = &den * &cden;
    }
    !den.is_zero() && num == &rec * &den
}

/// Symbolic computations in the indeterminates (α, β, γ), variables 0, 1, 2.
pub mod symbolic {
    use super::*;

    pub fn alpha() -> MPoly {
        MPoly::var(3, 0)
    }
    pub fn beta() -> MPoly {
        MPoly::var(3, 1)
    }
    pub fn gamma() -> MPoly {
        MPoly::var(3, 2)
    }

    /// Elementary symmetric functions (e1, e2, e3) of the first three of `nvars` variables.
    pub fn elementary(nvars: usize) -> [MPoly; 3] {
        let (a, b, g) = (MPoly::var(nvars, 0), MPoly::var(nvars, 1), MPoly::var(nvars, 2));
        let e1 = &(&a + &b) + &g;
        let e2 = &(&(&a * &b) + &(&b * &g)) + &(&g * &a);
        let e3 = &(&a * &b) * &g;
        [e1, e2, e3]
    }

    /// (t, σ, ω) as polynomials in (α, β, γ) embedded in `nvars` variables.
    pub fn tsw(nvars: usize) -> [MPoly; 3] {
        let [e1, e2, e3] = elementary(nvars);
        let sigma = &e2 + &(&e1 * &e1).scale(&q(2));
        let omega = &e3 + &(&e1 * &sigma);
        [e1, sigma, omega]
    }

    /// χ(x̂ₙ) as a polynomial in (α, β, γ) inside `nvars` variables.
    pub fn chi_x_poly(n: usize, nvars: usize) -> MPoly {
        let [t, e2, e3] = {
            let [e1, e2, e3] = elementary(nvars);
            [e1, e2, e3]
        };
        let half = qf(1, 2);
        let mut x = vec![MPoly::zero(nvars), t.scale(&q(2)), &t * &t];
        for k in 0..n.saturating_sub(2) {
            let k32 = k as u32;
            let mut next = &(&(&t * &x[k + 2]) - &(&e2 * &x[k + 1])) + &(&e3 * &x[k]);
            next = &next + &(&e2 * &t.pow(k32 + 1)).scale(&half);
            next = &next - &(&e3 * &t.pow(k32)).scale(&half);
            next = &next - &(&e3 * &t.pow(k32)).scale(&pow_q(&q(2), k32));
            x.push(next);
        }
        x.swap_remove(n)
    }

    /// Checks the generating-function identity for the adjoint Casimir eigenvalues as
    /// an exact polynomial identity in (α, β, γ, z) through `z^order`.
    ///
    /// Multiplying both sides by the denominator and by (2t)^(order-1) clears all
    /// fractions; the denominator has an invertible constant term, so agreement of
    /// the cleared truncations is equivalent to agreement of the series.
    pub fn gen_fun_identity(order: usize) -> bool {
        assert!(order >= 2);
        let nv = 4;
        let z = MPoly::var(nv, 3);
        let [t, _, _] = elementary(nv);
        let (a, b, g) = (MPoly::var(nv, 0), MPoly::var(nv, 1), MPoly::var(nv, 2));
        let t2 = &(&(&a * &a) + &(&b * &b)) + &(&g * &g);
        let t3 = &(&(&a * &(&a * &a)) + &(&b * &(&b * &b))) + &(&g * &(&g * &g));
        let t_cubed = t.pow(3);
        let c = |k: i64| MPoly::constant(nv, q(k));
        let num = {
            let c0 = t_cubed.scale(&q(96));
            let c1 = &t_cubed.scale(&q(168)) * &z;
            let c2 = &(&(&t_cubed.scale(&q(14)) + &(&t * &t2)) - &t3).scale(&q(6)) * &z.pow(2);
            let c3 = &(&(&t_cubed.scale(&q(13)) + &(&t * &t2).scale(&q(3))) - &t3.scale(&q(4))) * &z.pow(3);
            &(&(&c0 + &c1) + &c2) + &c3
        };
        let two_t = t.scale(&q(2));
        let den = {
            let f = |x: &MPoly| &two_t + &(x * &z);
            let d = &(&(&f(&a) * &f(&b)) * &f(&g)) * &(&c(2) + &z);
            (&d * &(&c(1) + &z)).scale(&q(6))
        };
        let k_max = order - 1;
        let lhs = (&(&z.pow(2) * &num) * &two_t.pow(k_max as u32)).truncate(3, order as u32);
        let mut sum = MPoly::zero(nv);
        for k in 1..=k_max {
            let sign = if (k + 1) % 2 == 0 { q(1) } else { q(-1) };
            let term = &(&chi_x_poly(k, nv) * &z.pow(k as u32 + 1)) * &two_t.pow((k_max - k) as u32);
            sum = &sum + &term.scale(&sign);
        }
        let rhs = (&den * &sum).truncate(3, order as u32);
        lhs == rhs
    }

    /// Writes a symmetric polynomial in (α, β, γ) as a polynomial in (t, σ, ω).
    /// Returns `None` when the input is not symmetric.
    pub fn to_tsw(p: &MPoly) -> Option<MPoly> {
        let [e1, e2, e3] = elementary(3);
        let mut rest = p.clone();
        let mut in_e = MPoly::zero(3);
        while let Some((lead, c)) = rest.terms().max_by(|x, y| x.0.cmp(y.0)).map(|(e, c)| (e.clone(), c.clone())) {
            let (a, b, g) = (lead[0], lead[1], lead[2]);
            if !(a >= b && b >= g) {
                return None;
            }
            let mono = &(&e1.pow(a - b) * &e2.pow(b - g)) * &e3.pow(g);
            rest = &rest - &mono.scale(&c);
            in_e.add_term(vec![a - b, b - g, g], c);
        }
        // e1 = t, e2 = σ − 2t², e3 = ω − tσ
        let (t, s, w) = (MPoly::var(3, 0), MPoly::var(3, 1), MPoly::var(3, 2));
        let e2_t = &s - &(&t * &t).scale(&q(2));
        let e3_t = &w - &(&t * &s);
        Some(in_e.substitute(&[t, e2_t, e3_t]))
    }

    /// Expands a polynomial in (t, σ, ω) into (α, β, γ).
    pub fn from_tsw(p: &MPoly) -> MPoly {
        p.substitute(&tsw(3))
    }

    /// P_sl P_osp P_exc as a polynomial in (α, β, γ).
    pub fn zero_divisor_product() -> MPoly {
        let (a, b, g) = (alpha(), beta(), gamma());
        let two = q(2);
        let lin = |x: &MPoly, cx: i64, y: &MPoly, cy: i64| &x.scale(&q(cx)) + &y.scale(&q(cy));
        let p_sl = &(&lin(&a, 1, &b, 1) * &lin(&b, 1, &g, 1)) * &lin(&a, 1, &g, 1);
        let p_osp = &(&(&(&(&lin(&a, 1, &b, 2) * &lin(&a, 2, &b, 1)) * &lin(&b, 1, &g, 2)) * &lin(&b, 2, &g, 1)) * &lin(&a, 1, &g, 2))
            * &lin(&a, 2, &g, 1);
        let ex = |x: &MPoly, y: &MPoly, z: &MPoly| &(x - &y.scale(&two)) - &z.scale(&two);
        let p_exc = &(&ex(&a, &b, &g) * &ex(&b, &a, &g)) * &ex(&g, &a, &b);
        &(&p_sl * &p_osp) * &p_exc
    }

    pub fn one() -> MPoly {
        MPoly::constant(3, Q::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl3() -> VogelPoint {
        VogelPoint::from_ints(-2, 2, 3)
    }

    #[test]
    fn initial_values_and_casimirs() {
        let v = sl3();
        assert_eq!(chi_x(0, &v), q(0));
        assert_eq!(chi_x(1, &v), q(6));
        assert_eq!(casimir_cp(1, &v), q(0));
        assert_eq!(casimir_cp(2, &v), q(36));
        assert_eq!(casimir_cp(3, &v), q(-54));
        assert_eq!(chi_x(5, &v), chi_x_closed(5, &v).unwrap());
    }

    #[test]
    fn dimensions() {
        assert_eq!(universal_dim(&sl3()).unwrap(), q(8));
        assert_eq!(universal_dim(&VogelPoint::from_ints(-2, 12, 20)).unwrap(), q(248));
        assert!(universal_dim(&VogelPoint::from_ints(0, 1, 2)).is_err());
    }

    #[test]
    fn series_agree_at_sl3() {
        let v = sl3();
        let a = casimir_series(&v, 10).unwrap();
        let b = casimir_series_from_chi(&v, 10).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.coeff(1), &q(0));
    }

    #[test]
    fn symmetric_conversion_round_trip() {
        let p = symbolic::chi_x_poly(4, 3);
        let tsw = symbolic::to_tsw(&p).unwrap();
        assert_eq!(symbolic::from_tsw(&tsw), p);
        assert!(symbolic::to_tsw(&symbolic::alpha()).is_none());
    }

    #[test]
    fn closed_form_matches_along_families() {
        for f in crate::registry::Family::ALL {
            for n in 0..=12 {
                assert!(closed_form_family_identity(n, f), "{} n={n}", f.name());
            }
        }
    }
}
