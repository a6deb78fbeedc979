//! Acceptance suite: one PASS/FAIL line per criterion, with wall-clock limits.

use std::time::{Duration, Instant};

use num_traits::Zero;

use vogelkit_core::adjoint::{self, cube_product_core, operator_matrix};
use vogelkit_core::algebra::AlgebraInstance;
use vogelkit_core::contract::{eval_numeric, Contractor};
use vogelkit_core::corpus::three_graphs;
use vogelkit_core::diagram::build;
use vogelkit_core::family::eval_family_diagram;
use vogelkit_core::kontsevich::{self, psi_diagram};
use vogelkit_core::lambda::{self, chi_x, chi_x_closed, universal_dim};
use vogelkit_core::rational::{parse_q, q, qf};
use vogelkit_core::relations::ChordSpace;
use vogelkit_core::universal::{family_dim, family_tsw, UniversalPolynomial};
use vogelkit_core::verify;
use vogelkit_core::{registry, DiagramCombo, EvalError, Family, QPoly, Q};

struct Outcome {
    pass: bool,
    detail: String,
}

fn run(id: u32, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Result<Outcome, EvalError>) -> bool {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let (pass, detail) = match result {
        Ok(o) => (o.pass, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let limit_text = limit.map(|l| format!(" (limit {:.0?})", l)).unwrap_or_default();
    let verdict = if pass && in_time { "PASS" } else { "FAIL" };
    println!("{verdict} criterion {id}: {title} [{:.2?}{limit_text}] {detail}", elapsed);
    pass && in_time
}

fn poly(terms: &[(&str, &str)]) -> UniversalPolynomial {
    let map: serde_json::Map<String, serde_json::Value> = terms.iter().map(|(k, v)| (k.to_string(), serde_json::Value::String(v.to_string()))).collect();
    UniversalPolynomial::from_json(&serde_json::Value::Object(map)).unwrap()
}

fn qpoly(coeffs: &[&str]) -> QPoly {
    QPoly::new(coeffs.iter().map(|s| parse_q(s).unwrap()).collect())
}

fn table_two() -> Result<Outcome, EvalError> {
    let expected = [
        ("w2", poly(&[("t^2", "4")])),
        ("w4", poly(&[("t^4", "20/3"), ("t*w", "-3")])),
        ("w2^2", poly(&[("t^4", "40/3")])),
        ("w6", poly(&[("t^6", "28/3"), ("t^3*w", "-42/5"), ("t*s*w", "15/8")])),
        ("w2*w4", poly(&[("t^6", "56/3"), ("t^3*w", "-42/5")])),
        ("w2^3", poly(&[("t^6", "112/3")])),
        ("w8", poly(&[("t^8", "12"), ("t^5*w", "-2867/180"), ("t^3*s*w", "51739/10080"), ("t^2*w^2", "59/32"), ("t*s^2*w", "-161/160")])),
        ("w2*w6", poly(&[("t^8", "24"), ("t^5*w", "-109/5"), ("t^3*s*w", "1063/280"), ("t^2*w^2", "9/8")])),
        ("w4^2", poly(&[("t^8", "24"), ("t^5*w", "-2474/105"), ("t^3*s*w", "239/140"), ("t^2*w^2", "141/28"), ("t*s^2*w", "-9/20")])),
        ("w2^2*w4", poly(&[("t^8", "48"), ("t^5*w", "-364/15"), ("t^3*s*w", "6/5")])),
        ("w2^4", poly(&[("t^8", "96"), ("t^5*w", "-16/5")])),
    ];
    let products = kontsevich::wheel_products(8);
    let mut bad = Vec::new();
    if products.len() != expected.len() {
        bad.push(format!("{} rows", products.len()));
    }
    for (sizes, (label, want)) in products.iter().zip(&expected) {
        let got = kontsevich::wheel_value(sizes)?;
        if kontsevich::wheel_label(sizes) != *label || &got != want {
            bad.push(format!("{label}: {got}"));
        }
    }
    Ok(Outcome { pass: bad.is_empty(), detail: if bad.is_empty() { "11/11 rows exact".into() } else { bad.join("; ") } })
}

fn dimensions() -> Result<Outcome, EvalError> {
    let mut bad = Vec::new();
    let mut count = 0;
    let classical: [(Family, std::ops::RangeInclusive<u32>, fn(i64) -> i64); 3] =
        [(Family::Sl, 2..=8, |n| n * n - 1), (Family::So, 5..=9, |n| n * (n - 1) / 2), (Family::Sp, 2..=4, |n| n * (2 * n + 1))];
    for (f, ranks, formula) in classical {
        for n in ranks {
            let expected = q(formula(n as i64));
            let dim = universal_dim(&registry().family_row(f).point_at(n))?;
            let circle = eval_numeric(&DiagramCombo::from_diagram(&build::circle())?, &AlgebraInstance::new(f, n)?)?;
            count += 1;
            if dim != expected || circle != expected {
                bad.push(f.label(n));
            }
        }
    }
    for (name, d) in [("g2", 14), ("f4", 52), ("e6", 78), ("e7", 133), ("e8", 248)] {
        count += 1;
        if universal_dim(&registry().lookup(name)?.point)? != q(d) {
            bad.push(name.to_string());
        }
    }
    Ok(Outcome { pass: bad.is_empty(), detail: format!("{count} rows, mismatches: {bad:?}") })
}

fn casimir_consistency() -> Result<Outcome, EvalError> {
    let symbolic = lambda::symbolic::gen_fun_identity(10);
    let mut checked = 0;
    let mut bad = Vec::new();
    for row in registry().rows() {
        let points: Vec<(String, _)> = match row.family() {
            Some(f) => {
                let lo = row.min_rank.unwrap_or(1);
                (lo..lo + 7).map(|n| (f.label(n), row.point_at(n))).collect()
            }
            None => vec![(row.label.clone(), row.point_at(0))],
        };
        for (label, v) in points {
            for n in 0..=12 {
                match chi_x_closed(n, &v) {
                    Ok(c) => {
                        checked += 1;
                        if c != chi_x(n, &v) {
                            bad.push(format!("{label} n={n}"));
                        }
                    }
                    Err(EvalError::DegeneratePoint(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    // ranks where two parameters collide are covered symbolically along each family
    let families = Family::ALL.iter().all(|&f| (0..=12).all(|n| lambda::closed_form_family_identity(n, f)));
    Ok(Outcome {
        pass: symbolic && families && bad.is_empty(),
        detail: format!("generating function {symbolic}, family identities {families}, {checked} pointwise values, mismatches {bad:?}"),
    })
}

fn psi_golden() -> Result<Outcome, EvalError> {
    let nested = vec![(0, 5), (1, 4), (2, 3)];
    let chord_and_cross = vec![(0, 1), (2, 4), (3, 5)];
    let ladder = vec![(1, 3), (0, 4), (2, 5)];
    let all_crossed = vec![(1, 4), (0, 3), (2, 5)];
    let cases: Vec<(Vec<(usize, usize)>, Vec<(i64, Vec<(usize, usize)>)>)> = vec![
        (vec![(0, 1)], vec![(4, vec![(0, 1)])]),
        (vec![(0, 1), (2, 3)], vec![(12, vec![(0, 1), (2, 3)]), (4, vec![(0, 2), (1, 3)])]),
        (vec![(0, 2), (1, 3)], vec![(8, vec![(0, 1), (2, 3)]), (8, vec![(0, 2), (1, 3)])]),
        (nested.clone(), vec![(32, nested.clone()), (16, chord_and_cross.clone()), (16, ladder.clone())]),
        (chord_and_cross.clone(), vec![(20, nested), (28, chord_and_cross), (12, ladder), (4, all_crossed)]),
    ];
    let mut bad = Vec::new();
    for (source, image) in &cases {
        let (got, count) = psi_diagram(2, &build::chord_diagram(source))?;
        let mut want = DiagramCombo::new();
        for (k, chords) in image {
            want.add_diagram(&build::chord_diagram(chords), q(*k))?;
        }
        // three-chord pictures are only determined modulo 4T
        let same = if source.len() < 3 { got == want } else { ChordSpace::new(3)?.is_zero(&(&got - &want)) };
        if !same || count != 1 << (2 * source.len()) {
            bad.push(format!("{source:?} ({count} lifts)"));
        }
    }
    Ok(Outcome { pass: bad.is_empty(), detail: format!("5 expansions, mismatches {bad:?}") })
}

fn torus() -> Result<Outcome, EvalError> {
    let series = kontsevich::torus_ki(3)?;
    let expected = [
        ("1", qpoly(&["1"])),
        ("C", qpoly(&["0", "1"])),
        ("C^2", qpoly(&["0", "0", "1/2"])),
        ("B", qpoly(&["1/12", "0", "-1/16"])),
        ("C^3", qpoly(&["0", "0", "0", "1/6"])),
        ("C#B", qpoly(&["0", "1/12", "0", "-1/16"])),
        ("G", qpoly(&["0", "-1/96", "0", "1/96"])),
    ];
    let got: Vec<(&str, QPoly)> = series.terms.iter().map(|t| (t.name, t.coeff.clone())).collect();
    let framed = got == expected;
    let deframed = kontsevich::deframe(&series.terms);
    let unframed: Vec<(&str, QPoly)> = deframed.iter().filter(|t| t.degree > 0).map(|t| (t.name, t.coeff.clone())).collect();
    let two_terms = unframed == vec![("B", qpoly(&["1/12", "0", "-1/16"])), ("G", qpoly(&["0", "-1/96", "0", "1/96"]))];
    let at_one = |deg: usize| deframed.iter().filter(|t| t.degree == deg).fold(Q::from_integer(0.into()), |acc, t| acc + t.coeff.eval(&q(1)));
    let unknot = at_one(3) == q(0) && at_one(2) == kontsevich::bernoulli_mod(1) && at_one(2) == qf(1, 48);
    Ok(Outcome { pass: framed && two_terms && unknot, detail: format!("framed {framed}, deframed {two_terms}, n = 1 {unknot}") })
}

fn oracle() -> Result<Outcome, EvalError> {
    let graphs = three_graphs();
    let mut evaluations = 0;
    let mut bad = Vec::new();
    for f in Family::ALL {
        let polys: Vec<QPoly> = graphs.iter().map(|(_, d)| eval_family_diagram(d, f)).collect::<Result<_, _>>()?;
        for n in 2..=6 {
            let c = Contractor::new(&AlgebraInstance::new(f, n)?)?;
            for ((name, d), p) in graphs.iter().zip(&polys) {
                evaluations += 1;
                if c.eval(d)? != p.eval(&q(n as i64)) {
                    bad.push(format!("{name} at {}", f.label(n)));
                }
            }
        }
    }
    Ok(Outcome { pass: bad.is_empty(), detail: format!("{evaluations} evaluations over {} graphs, mismatches {bad:?}", graphs.len()) })
}

fn decomposition() -> Result<Outcome, EvalError> {
    let (pa, ps) = (adjoint::p_antisym(), adjoint::p_sym());
    let idempotent = pa.then(&pa)? == pa && ps.then(&ps)? == ps;
    let orthogonal = pa.then(&ps)?.is_zero() && ps.then(&pa)?.is_zero();
    let mut traces = true;
    for f in Family::ALL {
        traces &= adjoint::trace_pa_psi_pa(f)? == &family_tsw(f)[0] * &family_dim(f);
    }
    let mut cubic = Vec::new();
    for (f, n) in [(Family::Sl, 2), (Family::Sl, 3), (Family::So, 5)] {
        let r = adjoint::cubic_relation_check(&AlgebraInstance::new(f, n)?, 1 << 24)?;
        cubic.push((r.algebra.clone(), r.pass()));
    }
    let wedge = adjoint::wedge3_obstruction_check()?;
    let sl4 = Contractor::new(&AlgebraInstance::new(Family::Sl, 4)?)?;
    let explicit_core = operator_matrix(&cube_product_core(&pa, &ps)?, &sl4)?.is_zero() && operator_matrix(&cube_product_core(&ps, &pa)?, &sl4)?.is_zero();
    let pass = idempotent && orthogonal && traces && cubic.iter().all(|c| c.1) && wedge.h_insertion_zero && explicit_core;
    Ok(Outcome {
        pass,
        detail: format!(
            "idempotent {idempotent}, orthogonal {orthogonal}, tr(PaΨPa) = t·dim {traces}, cubic {cubic:?}, H insertion zero {}, sl(4) core zero {explicit_core}",
            wedge.h_insertion_zero
        ),
    })
}

fn kernel() -> Result<Outcome, EvalError> {
    let mut rows = 0;
    let mut bad = Vec::new();
    for (label, v, _) in verify::table_points() {
        rows += 1;
        let (a, b, c) = lambda::zero_divisor_polys(&v);
        if a * b * c != q(0) {
            bad.push(label);
        }
    }
    let mut four = Vec::new();
    for f in Family::ALL {
        let v = adjoint::four_diagram_value(f)?;
        four.push((f.name(), v.is_zero()));
    }
    Ok(Outcome { pass: bad.is_empty() && four.iter().all(|x| x.1), detail: format!("{rows} rows, nonzero products {bad:?}, four-diagram {four:?}") })
}

fn adjoint_torus() -> Result<Outcome, EvalError> {
    let report = verify::torus_adjoint_report(&[1, 3, 5])?;
    println!("  discrepancy report for the adjoint torus series:");
    for (k, p) in &report.pipeline {
        let stated = report.stated.get(k).map(|x| x.display("n")).unwrap_or_else(|| "(not displayed)".into());
        println!("    t^{k}: pipeline {:<22} stated {stated}", p.display("n"));
    }
    for (k, d) in &report.differences {
        println!("    t^{k}: pipeline minus stated = {}", d.display("n"));
    }
    Ok(Outcome { pass: report.consistent, detail: format!("sl(3) self-consistency at n = 1, 3, 5: {}", report.consistent) })
}

fn main() -> std::process::ExitCode {
    let results = [
        run(1, "wheel table reproduced exactly", Some(Duration::from_secs(600)), table_two),
        run(2, "universal dimension at every row", Some(Duration::from_secs(1)), dimensions),
        run(3, "Casimir generating function and closed form", Some(Duration::from_secs(10)), casimir_consistency),
        run(4, "two-sheet cabling expansions", Some(Duration::from_secs(1)), psi_golden),
        run(5, "torus knot series", None, torus),
        run(6, "family polynomials against explicit contraction", Some(Duration::from_secs(300)), oracle),
        run(7, "adjoint square decomposition", None, decomposition),
        run(8, "zero divisors and four-diagram identity", None, kernel),
        run(9, "adjoint torus self-consistency", None, adjoint_torus),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        std::process::ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::ExitCode::FAILURE
    }
}
