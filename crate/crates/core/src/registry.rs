//! Named Vogel points, loaded from the checked-in parameter table.

use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::Deserialize;

use crate::error::{EvalError, EvalResult};
use crate::lambda::VogelPoint;
use crate::poly::QPoly;
use crate::rational::{parse_q, q, Q};

const TABLE: &str = include_str!("../data/vogel_table.toml");

/// A classical family of simple Lie algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Sl,
    So,
    Sp,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Sl, Family::So, Family::Sp];

    pub fn name(self) -> &'static str {
        match self {
            Family::Sl => "sl",
            Family::So => "so",
            Family::Sp => "sp",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        match s {
            "sl" => Some(Family::Sl),
            "so" => Some(Family::So),
            "sp" => Some(Family::Sp),
            _ => None,
        }
    }

    /// Display label at rank `n`, e.g. `sp(6)` for n = 3.
    pub fn label(self, n: u32) -> String {
        match self {
            Family::Sp => format!("sp({})", 2 * n),
            _ => format!("{}({n})", self.name()),
        }
    }
}

/// `constant + slope * N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub constant: Q,
    pub slope: Q,
}

impl Affine {
    pub fn parse(s: &str) -> Option<Affine> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut constant = Q::zero();
        let mut slope = Q::zero();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (neg, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ => (false, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let (mag, is_n) = match term.strip_suffix('N') {
                Some("") => (Q::one(), true),
                Some(c) => (parse_q(c.trim_end_matches('*'))?, true),
                None => (parse_q(term)?, false),
            };
            let v = if neg { -mag } else { mag };
            if is_n {
                slope += v;
            } else {
                constant += v;
            }
        }
        Some(Affine { constant, slope })
    }

    pub fn at(&self, n: &Q) -> Q {
        &self.constant + &self.slope * n
    }

    pub fn poly(&self) -> QPoly {
        QPoly::affine(self.constant.clone(), self.slope.clone())
    }
}

#[derive(Deserialize)]
struct RawRow {
    name: String,
    label: String,
    alpha: String,
    beta: String,
    gamma: String,
    min_rank: Option<u32>,
}

#[derive(Deserialize)]
struct RawTable {
    row: Vec<RawRow>,
}

#[derive(Clone, Debug)]
pub struct Row {
    pub name: String,
    pub label: String,
    pub params: [Affine; 3],
    pub min_rank: Option<u32>,
}

impl Row {
    pub fn family(&self) -> Option<Family> {
        Family::from_name(&self.name)
    }

    pub fn point_at(&self, n: u32) -> VogelPoint {
        let n = q(n as i64);
        VogelPoint::new(self.params[0].at(&n), self.params[1].at(&n), self.params[2].at(&n))
    }
}

/// A registry lookup result.
#[derive(Clone, Debug)]
pub struct NamedPoint {
    pub label: String,
    pub family: Option<(Family, u32)>,
    pub point: VogelPoint,
}

#[derive(Debug)]
pub struct Registry {
    rows: Vec<Row>,
}

impl Registry {
    pub fn parse(text: &str) -> EvalResult<Registry> {
        let raw: RawTable = toml::from_str(text).map_err(|e| EvalError::Registry(e.to_string()))?;
        let mut rows = Vec::new();
        for r in raw.row {
            let p = |s: &str| Affine::parse(s).ok_or_else(|| EvalError::Registry(format!("{}: cannot parse `{s}`", r.name)));
            let params = [p(&r.alpha)?, p(&r.beta)?, p(&r.gamma)?];
            rows.push(Row { name: r.name.clone(), label: r.label.clone(), params, min_rank: r.min_rank });
        }
        Ok(Registry { rows })
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn family_row(&self, f: Family) -> &Row {
        self.rows.iter().find(|r| r.family() == Some(f)).expect("classical rows are present in the table")
    }

    /// Vogel parameters of a classical family as polynomials in the rank.
    pub fn family_params(&self, f: Family) -> [QPoly; 3] {
        let r = self.family_row(f);
        [r.params[0].poly(), r.params[1].poly(), r.params[2].poly()]
    }

    /// Resolves names like `e8`, `sl(5)`, `so(7)` or `sp(6)`.
    pub fn lookup(&self, name: &str) -> EvalResult<NamedPoint> {
        let name = name.trim().to_ascii_lowercase();
        let unknown = || EvalError::UnknownAlgebra(name.clone());
        if let Some((fam, arg)) = name.strip_suffix(')').and_then(|s| s.split_once('(')) {
            let f = Family::from_name(fam).ok_or_else(unknown)?;
            let k: u32 = arg.trim().parse().map_err(|_| unknown())?;
            let n = match f {
                Family::Sp if k % 2 == 1 => return Err(unknown()),
                Family::Sp => k / 2,
                _ => k,
            };
            let row = self.family_row(f);
            if n < row.min_rank.unwrap_or(1) {
                return Err(unknown());
            }
            return Ok(NamedPoint { label: f.label(n), family: Some((f, n)), point: row.point_at(n) });
        }
        let row = self.rows.iter().find(|r| r.name == name && r.family().is_none()).ok_or_else(unknown)?;
        Ok(NamedPoint { label: row.label.clone(), family: None, point: row.point_at(0) })
    }

    /// Exceptional rows in table order.
    pub fn exceptional(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.family().is_none())
    }
}

pub fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(|| Registry::parse(TABLE).expect("bundled parameter table parses"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    #[test]
    fn affine_parsing() {
        assert_eq!(Affine::parse("N-4").unwrap(), Affine { constant: q(-4), slope: q(1) });
        assert_eq!(Affine::parse("10/3").unwrap(), Affine { constant: qf(10, 3), slope: q(0) });
        assert_eq!(Affine::parse("2N+1").unwrap(), Affine { constant: q(1), slope: q(2) });
        assert!(Affine::parse("x").is_none());
    }

    #[test]
    fn lookups() {
        let r = registry();
        let e8 = r.lookup("e8").unwrap();
        assert_eq!((e8.point.alpha.clone(), e8.point.beta.clone(), e8.point.gamma.clone()), (q(-2), q(12), q(20)));
        let sp6 = r.lookup("sp(6)").unwrap();
        assert_eq!(sp6.family, Some((Family::Sp, 3)));
        assert_eq!(sp6.point.gamma, q(5));
        assert_eq!(r.lookup("sl(5)").unwrap().point.gamma, q(5));
        assert!(r.lookup("sp(5)").is_err());
        assert!(r.lookup("h9").is_err());
        assert_eq!(r.lookup("g2").unwrap().point.beta, qf(10, 3));
    }
}
