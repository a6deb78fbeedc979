use proptest::prelude::*;
use proptest::sample::select;

use vogelkit_core::adjoint::{decomposition_dims, Decomposition};
use vogelkit_core::canon::{canonicalize, CanonicalKey};
use vogelkit_core::corpus::three_graphs;
use vogelkit_core::diagram::build;
use vogelkit_core::lambda::{casimir_series, casimir_series_from_chi, chi_x, chi_x_closed, universal_dim, zero_divisor_polys, VogelPoint};
use vogelkit_core::rational::{fmt_q, parse_q, pow_q, q, qf};
use vogelkit_core::universal::UniversalPolynomial;
use vogelkit_core::{registry, Family, JacobiDiagram, Q};

fn rational() -> impl Strategy<Value = Q> {
    (-30i64..=30, 1i64..=6).prop_map(|(n, d)| qf(n, d))
}

fn point() -> impl Strategy<Value = VogelPoint> {
    (rational(), rational(), rational()).prop_map(|(a, b, c)| VogelPoint::new(a, b, c))
}

/// Points where the closed forms have no vanishing denominators.
fn generic_point() -> impl Strategy<Value = VogelPoint> {
    point().prop_filter("degenerate point", |v| {
        let p = [&v.alpha, &v.beta, &v.gamma];
        let two_t = q(2) * v.t();
        let zero = q(0);
        v.t() != zero && p.iter().all(|x| **x != zero && **x != two_t) && p[0] != p[1] && p[1] != p[2] && p[0] != p[2]
    })
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn diagram() -> impl Strategy<Value = JacobiDiagram> {
    let mut pool: Vec<JacobiDiagram> = three_graphs().into_iter().filter(|(_, d)| d.vertices.len() <= 8).map(|(_, d)| d).collect();
    for n in [2, 4, 6] {
        pool.push(build::wheel(n).unwrap());
    }
    pool.push(build::tetrahedron());
    select(pool)
}

/// A diagram together with a random relabeling of its half-edges.
fn relabeled_diagram() -> impl Strategy<Value = (JacobiDiagram, JacobiDiagram)> {
    diagram().prop_flat_map(|d| {
        let n = d.half_edge_count();
        (Just(d), Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle())
    })
    .prop_map(|(d, perm)| {
        let c = d.compacted();
        let r = c.relabeled(|h| perm[h as usize]);
        (c, r)
    })
}

fn key(d: &JacobiDiagram) -> CanonicalKey {
    canonicalize(d).unwrap()
}

fn negated(k: CanonicalKey) -> CanonicalKey {
    match k {
        CanonicalKey::Keyed { key, sign } => CanonicalKey::Keyed { key, sign: -sign },
        z => z,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn canonical_key_ignores_half_edge_names((d, r) in relabeled_diagram()) {
        prop_assert_eq!(key(&d), key(&r));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonicalization_is_idempotent(d in diagram()) {
        if let CanonicalKey::Keyed { key: k, .. } = key(&d) {
            let again = key(&k.decode().unwrap());
            prop_assert_eq!(again, CanonicalKey::Keyed { key: k, sign: 1 });
        }
    }

    #[test]
    fn canonical_key_ignores_vertex_and_edge_listing(d in diagram(), rot in 0usize..3, flip in any::<bool>()) {
        let mut e = d.clone();
        e.vertices.reverse();
        for v in &mut e.vertices {
            v.rotate_left(rot);
        }
        if flip {
            for edge in &mut e.edges {
                edge.swap(0, 1);
            }
        }
        prop_assert_eq!(key(&d), key(&e));
    }

    #[test]
    fn reversing_one_vertex_flips_the_sign(d in diagram(), v in 0usize..64) {
        prop_assume!(!d.vertices.is_empty());
        let mut e = d.clone();
        let i = v % e.vertices.len();
        e.vertices[i].swap(1, 2);
        prop_assert_eq!(key(&e), negated(key(&d)));
    }

    #[test]
    fn characters_are_symmetric(v in generic_point(), p in 0usize..6, n in 0usize..10) {
        let w = v.permuted(PERMS[p]);
        prop_assert_eq!(chi_x(n, &v), chi_x(n, &w));
        prop_assert_eq!(universal_dim(&v).unwrap(), universal_dim(&w).unwrap());
        prop_assert_eq!(casimir_series(&v, 8).unwrap(), casimir_series(&w, 8).unwrap());
    }

    #[test]
    fn characters_scale_homogeneously(v in generic_point(), s in rational(), n in 0usize..10) {
        prop_assume!(s != q(0));
        let w = v.scaled(&s);
        prop_assert_eq!(chi_x(n, &w), chi_x(n, &v) * pow_q(&s, n as u32));
        prop_assert_eq!(universal_dim(&w).unwrap(), universal_dim(&v).unwrap());
    }

    #[test]
    fn recurrence_matches_closed_form(v in generic_point(), n in 0usize..=12) {
        prop_assert_eq!(chi_x_closed(n, &v).unwrap(), chi_x(n, &v));
    }

    #[test]
    fn generating_function_matches_characters(v in generic_point()) {
        prop_assert_eq!(casimir_series(&v, 10).unwrap(), casimir_series_from_chi(&v, 10).unwrap());
    }

    #[test]
    fn elementary_symmetric_functions_round_trip(v in point()) {
        let [t, sigma, omega] = v.tsw();
        let e2 = &sigma - q(2) * &t * &t;
        let e3 = &omega - &t * &sigma;
        prop_assert_eq!(e2, v.e2());
        prop_assert_eq!(e3, v.e3());
    }

    #[test]
    fn square_pieces_add_up(v in generic_point()) {
        let Decomposition::Split(d) = decomposition_dims(&v).unwrap() else { unreachable!("t is nonzero") };
        prop_assert_eq!(&d.x0 + &d.y, d.s2.clone());
        prop_assert_eq!(&d.x1 + &d.x2, &d.dim * (&d.dim - q(1)) / q(2));
        prop_assert_eq!(&d.s2 + &d.x1 + &d.x2, &d.dim * &d.dim);
    }

    #[test]
    fn family_rows_are_zero_divisors(f in select(Family::ALL.to_vec()), n in 2u32..40) {
        let (sl, osp, _) = zero_divisor_polys(&registry().family_row(f).point_at(n));
        match f {
            Family::Sl => prop_assert_eq!(sl, q(0)),
            _ => prop_assert_eq!(osp, q(0)),
        }
    }

    #[test]
    fn rationals_print_and_parse(x in rational()) {
        prop_assert_eq!(parse_q(&fmt_q(&x)), Some(x));
    }

    #[test]
    fn monomial_maps_round_trip(coeffs in proptest::collection::vec((0u32..4, 0u32..3, 0u32..3, rational()), 0..6)) {
        let terms: Vec<([u32; 3], Q)> = coeffs.into_iter().map(|(a, b, c, x)| ([a, b, c], x)).collect();
        let p = UniversalPolynomial::from_terms(&terms);
        prop_assert_eq!(UniversalPolynomial::from_json(&p.to_json()), Some(p));
    }
}
