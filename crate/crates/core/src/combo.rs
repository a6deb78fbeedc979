//! Linear combinations of canonical diagrams.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::canon::{canonicalize, CanonicalKey, DiagramKey};
use crate::diagram::JacobiDiagram;
use crate::error::DiagramResult;
use crate::poly::QPoly;
use crate::rational::{fmt_q, Q};

/// Coefficient rings usable in a [`DiagramCombo`].
pub trait Coeff:
    Clone + PartialEq + Debug + Send + Sync + Zero + One + Neg<Output = Self> + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + From<Q>
{
    fn to_json(&self) -> Value;
}

impl Coeff for Q {
    fn to_json(&self) -> Value {
        Value::String(fmt_q(self))
    }
}

impl Coeff for QPoly {
    fn to_json(&self) -> Value {
        Value::String(self.display("n"))
    }
}

/// A finite linear combination of canonical diagrams; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagramCombo<R: Coeff = Q> {
    terms: BTreeMap<DiagramKey, R>,
}

impl<R: Coeff> Default for DiagramCombo<R> {
    fn default() -> Self {
        DiagramCombo { terms: BTreeMap::new() }
    }
}

impl<R: Coeff> DiagramCombo<R> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_diagram(d: &JacobiDiagram) -> DiagramResult<Self> {
        let mut c = Self::new();
        c.add_diagram(d, R::one())?;
        Ok(c)
    }

    pub fn from_key(key: DiagramKey, coeff: R) -> Self {
        let mut c = Self::new();
        c.add_key(key, coeff);
        c
    }

    /// Adds `coeff * d`, canonicalizing `d`.
    pub fn add_diagram(&mut self, d: &JacobiDiagram, coeff: R) -> DiagramResult<()> {
        if let CanonicalKey::Keyed { key, sign } = canonicalize(d)? {
            let c = if sign < 0 { -coeff } else { coeff };
            self.add_key(key, c);
        }
        Ok(())
    }

    pub fn add_key(&mut self, key: DiagramKey, coeff: R) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_combo(&mut self, other: &DiagramCombo<R>, factor: &R) {
        for (k, c) in &other.terms {
            self.add_key(k.clone(), c.clone() * factor.clone());
        }
    }

    pub fn scaled(&self, factor: &R) -> Self {
        let mut out = Self::new();
        out.add_combo(self, factor);
        out
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, key: &DiagramKey) -> R {
        self.terms.get(key).cloned().unwrap_or_else(R::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DiagramKey, &R)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &DiagramKey> {
        self.terms.keys()
    }

    /// Extends a diagram-level map linearly.
    pub fn try_map<S: Coeff, F>(&self, mut f: F) -> DiagramResult<DiagramCombo<S>>
    where
        F: FnMut(&JacobiDiagram) -> DiagramResult<DiagramCombo<S>>,
        S: From<R>,
    {
        let mut out = DiagramCombo::<S>::new();
        for (k, c) in &self.terms {
            let image = f(&k.decode()?)?;
            out.add_combo(&image, &S::from(c.clone()));
        }
        Ok(out)
    }

    /// Keeps only the terms whose diagrams satisfy `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&JacobiDiagram) -> bool) -> DiagramResult<Self> {
        let mut out = Self::new();
        for (k, c) in &self.terms {
            if keep(&k.decode()?) {
                out.add_key(k.clone(), c.clone());
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let d = k.decode().map(|d| serde_json::to_value(d).unwrap_or(Value::Null)).unwrap_or(Value::Null);
                json!({"diagram_key": k.to_hex(), "diagram": d, "coefficient": c.to_json()})
            })
            .collect();
        Value::Array(terms)
    }
}

impl DiagramCombo<Q> {
    /// Lifts rational coefficients into another coefficient ring.
    pub fn lift<S: Coeff>(&self) -> DiagramCombo<S> {
        DiagramCombo { terms: self.terms.iter().map(|(k, c)| (k.clone(), S::from(c.clone()))).collect() }
    }
}

impl DiagramCombo<QPoly> {
    /// Evaluates polynomial coefficients at a value of the parameter.
    pub fn at(&self, n: &Q) -> DiagramCombo<Q> {
        let mut out = DiagramCombo::new();
        for (k, c) in &self.terms {
            out.add_key(k.clone(), c.eval(n));
        }
        out
    }

    /// Splits into rational combos by power of the parameter.
    pub fn by_power(&self) -> Vec<DiagramCombo<Q>> {
        let deg = self.terms.values().filter_map(QPoly::degree).max();
        let mut out = vec![DiagramCombo::new(); deg.map_or(0, |d| d + 1)];
        for (k, c) in &self.terms {
            for (p, x) in c.coeffs().iter().enumerate() {
                out[p].add_key(k.clone(), x.clone());
            }
        }
        out
    }
}

pub fn combo_add<R: Coeff>(a: &DiagramCombo<R>, b: &DiagramCombo<R>) -> DiagramCombo<R> {
    let mut out = a.clone();
    out.add_combo(b, &R::one());
    out
}

impl<R: Coeff> Add for &DiagramCombo<R> {
    type Output = DiagramCombo<R>;
    fn add(self, rhs: Self) -> DiagramCombo<R> {
        combo_add(self, rhs)
    }
}

impl<R: Coeff> Sub for &DiagramCombo<R> {
    type Output = DiagramCombo<R>;
    fn sub(self, rhs: Self) -> DiagramCombo<R> {
        let mut out = self.clone();
        out.add_combo(rhs, &-R::one());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build::*;
    use crate::rational::{q, qf};

    #[test]
    fn basic_combo_laws() {
        let x: DiagramCombo = DiagramCombo::from_diagram(&theta()).unwrap();
        assert!((&x - &x).is_empty());
        assert_eq!(&x + &DiagramCombo::new(), x);
        let half = x.scaled(&qf(1, 2));
        assert_eq!(&half + &half, x);
        let mut flipped = theta();
        flipped.vertices[1] = [3, 4, 5];
        let mut y = DiagramCombo::<Q>::new();
        y.add_diagram(&flipped, q(1)).unwrap();
        assert!((&x + &y).is_empty());
    }
}
