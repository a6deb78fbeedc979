//! Universal polynomials in (t, σ, ω) and fitting of family values to them.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde_json::{Map, Value};

use crate::combo::DiagramCombo;
use crate::error::{EvalError, EvalResult};
use crate::family::eval_family;
use crate::lambda::VogelPoint;
use crate::linalg::{solve, Solution};
use crate::poly::{MPoly, QPoly};
use crate::rational::{fmt_q, parse_q, q, Q};
use crate::registry::{registry, Family};

const NAMES: [&str; 3] = ["t", "s", "w"];
const WEIGHTS: [u32; 3] = [1, 2, 3];

/// Exact polynomial in (t, σ, ω); the grading gives t, σ, ω degrees 1, 2, 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalPolynomial(pub MPoly);

impl UniversalPolynomial {
    pub fn zero() -> Self {
        UniversalPolynomial(MPoly::zero(3))
    }

    pub fn from_terms(terms: &[([u32; 3], Q)]) -> Self {
        let mut p = MPoly::zero(3);
        for (e, c) in terms {
            p.add_term(e.to_vec(), c.clone());
        }
        UniversalPolynomial(p)
    }

    pub fn coeff(&self, t: u32, s: u32, w: u32) -> Q {
        self.0.coeff(&[t, s, w])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Graded degrees a + 2b + 3c of the monomials present.
    pub fn graded_degrees(&self) -> Vec<u32> {
        self.0.weighted_degrees(&WEIGHTS)
    }

    pub fn eval_tsw(&self, tsw: &[Q; 3]) -> Q {
        self.0.eval(tsw)
    }

    /// JSON monomial map such as `{"t^4":"20/3","t*w":"-3"}`.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (e, c) in self.0.terms() {
            m.insert(monomial_name(e), Value::String(fmt_q(c)));
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Option<Self> {
        let mut p = MPoly::zero(3);
        for (k, c) in v.as_object()? {
            let c = match c {
                Value::String(s) => parse_q(s)?,
                Value::Number(n) => q(n.as_i64()?),
                _ => return None,
            };
            p.add_term(parse_monomial(k)?.to_vec(), c);
        }
        Some(UniversalPolynomial(p))
    }

    /// Expands into a polynomial in the family rank.
    pub fn at_family(&self, family: Family) -> QPoly {
        let tsw = family_tsw(family);
        let mut out = QPoly::zero();
        for (e, c) in self.0.terms() {
            let mut m = QPoly::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                m = &m * &tsw[i].pow(k);
            }
            out = &out + &m;
        }
        out
    }
}

fn monomial_name(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .zip(NAMES)
        .filter(|(k, _)| **k > 0)
        .map(|(&k, n)| if k == 1 { n.to_string() } else { format!("{n}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn parse_monomial(s: &str) -> Option<[u32; 3]> {
    let mut e = [0u32; 3];
    if s.trim() == "1" {
        return Some(e);
    }
    for f in s.split('*') {
        let (name, k) = match f.trim().split_once('^') {
            Some((n, k)) => (n, k.parse().ok()?),
            None => (f.trim(), 1),
        };
        let i = NAMES.iter().position(|x| *x == name)?;
        e[i] += k;
    }
    Some(e)
}

impl fmt::Display for UniversalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Vec<u32>, &Q)> = self.0.terms().collect();
        // highest power of t first
        terms.sort_by(|a, b| b.0.cmp(a.0));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let neg = c < &Q::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = monomial_name(e);
            match (mono.as_str(), mag == q(1)) {
                ("1", _) => write!(f, "{}", fmt_q(&mag))?,
                (_, true) => write!(f, "{mono}")?,
                _ => write!(f, "{}*{mono}", fmt_q(&mag))?,
            }
        }
        Ok(())
    }
}

/// Evaluates `p` at the point (α, β, γ).
pub fn vogel_substitute(p: &UniversalPolynomial, alpha: &Q, beta: &Q, gamma: &Q) -> Q {
    let v = VogelPoint::new(alpha.clone(), beta.clone(), gamma.clone());
    p.eval_tsw(&v.tsw())
}

/// (t, σ, ω) of a family as polynomials in the rank.
pub fn family_tsw(family: Family) -> [QPoly; 3] {
    let [a, b, c] = registry().family_params(family);
    let t = &(&a + &b) + &c;
    let e2 = &(&(&a * &b) + &(&b * &c)) + &(&c * &a);
    let e3 = &(&a * &b) * &c;
    let sigma = &e2 + &(&t * &t).scale(&q(2));
    let omega = &e3 + &(&t * &sigma);
    [t, sigma, omega]
}

/// Family dimension (α−2t)(β−2t)(γ−2t)/(αβγ) as an exact polynomial in the rank.
pub fn family_dim(family: Family) -> QPoly {
    let [a, b, c] = registry().family_params(family);
    let t = &(&a + &b) + &c;
    let two_t = t.scale(&q(2));
    let num = &(&(&a - &two_t) * &(&b - &two_t)) * &(&c - &two_t);
    let den = &(&a * &b) * &c;
    let (quot, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "family dimension is polynomial in the rank");
    quot
}

/// Monomials t^a σ^b ω^c of graded degree `k`, in a fixed order.
pub fn monomials(k: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for c in 0..=k / 3 {
        for b in 0..=(k - 3 * c) / 2 {
            out.push([k - 2 * b - 3 * c, b, c]);
        }
    }
    out
}

/// A successful fit with its diagnostics.
#[derive(Clone, Debug)]
pub struct UniversalFit {
    /// Homogeneous components by half vertex count.
    pub components: BTreeMap<u32, UniversalPolynomial>,
    pub polynomial: UniversalPolynomial,
    /// Per component: (equations, unknowns, rank).
    pub diagnostics: BTreeMap<u32, (usize, usize, usize)>,
}

fn fit_homogeneous(g: &DiagramCombo, k: u32) -> EvalResult<(UniversalPolynomial, (usize, usize, usize))> {
    let monos = monomials(k);
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut rhs: Vec<Q> = Vec::new();
    for family in Family::ALL {
        let value = eval_family(g, family)?.poly;
        let dim = family_dim(family);
        let tsw = family_tsw(family);
        let cols: Vec<QPoly> = monos
            .iter()
            .map(|e| {
                let mut m = dim.clone();
                for (i, &p) in e.iter().enumerate() {
                    m = &m * &tsw[i].pow(p);
                }
                m
            })
            .collect();
        let deg = cols.iter().filter_map(QPoly::degree).chain(value.degree()).max().unwrap_or(0);
        for p in 0..=deg {
            rows.push(cols.iter().map(|c| c.coeff(p)).collect());
            rhs.push(value.coeff(p));
        }
    }
    let diag = (rows.len(), monos.len(), monos.len());
    match solve(&rows, &rhs) {
        Solution::Unique(x) => {
            let terms: Vec<([u32; 3], Q)> = monos.into_iter().zip(x).filter(|(_, c)| !c.is_zero()).collect();
            Ok((UniversalPolynomial::from_terms(&terms), diag))
        }
        Solution::Underdetermined { rank, unknowns } => Err(EvalError::Underdetermined { rank, unknowns }),
        Solution::Inconsistent { rank } => Err(EvalError::Inconsistent { rank }),
    }
}

/// Fits a combo of 3-graphs to `dim · p(t, σ, ω)` using the three classical families.
pub fn fit_universal(g: &DiagramCombo) -> EvalResult<UniversalFit> {
    let mut parts: BTreeMap<u32, DiagramCombo> = BTreeMap::new();
    for (key, c) in g.iter() {
        let v = key.vertex_count();
        if v % 2 == 1 {
            return Err(EvalError::Unsupported("a 3-graph has an even number of vertices".into()));
        }
        parts.entry((v / 2) as u32).or_default().add_key(key.clone(), c.clone());
    }
    let mut components = BTreeMap::new();
    let mut diagnostics = BTreeMap::new();
    let mut total = MPoly::zero(3);
    for (k, part) in parts {
        let (p, d) = fit_homogeneous(&part, k)?;
        total = &total + &p.0;
        components.insert(k, p);
        diagnostics.insert(k, d);
    }
    Ok(UniversalFit { components, polynomial: UniversalPolynomial(total), diagnostics })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build::*;
    use crate::rational::qf;

    #[test]
    fn dims_and_monomials() {
        assert_eq!(family_dim(Family::Sl), QPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(family_dim(Family::Sp), QPoly::from_ints(&[0, 1, 2]));
        assert_eq!(monomials(4).len(), 4);
        assert_eq!(monomials(8).len(), 10);
    }

    #[test]
    fn json_round_trip() {
        let p = UniversalPolynomial::from_terms(&[([4, 0, 0], qf(20, 3)), ([1, 0, 1], q(-3))]);
        let j = p.to_json();
        assert_eq!(j["t^4"], "20/3");
        assert_eq!(j["t*w"], "-3");
        assert_eq!(UniversalPolynomial::from_json(&j).unwrap(), p);
        assert_eq!(p.to_string(), "20/3*t^4 - 3*t*w");
    }

    #[test]
    fn theta_fits_two_t() {
        let fit = fit_universal(&DiagramCombo::from_diagram(&theta()).unwrap()).unwrap();
        assert_eq!(fit.polynomial, UniversalPolynomial::from_terms(&[([1, 0, 0], q(2))]));
        let circle = fit_universal(&DiagramCombo::from_diagram(&circle()).unwrap()).unwrap();
        assert_eq!(circle.polynomial, UniversalPolynomial::from_terms(&[([0, 0, 0], q(1))]));
    }
}
