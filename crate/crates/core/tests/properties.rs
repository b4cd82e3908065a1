use std::collections::BTreeMap;

use proptest::prelude::*;
use tropcount::curve::{corner_locus, TropicalPolynomial};
use tropcount::lattice::{
    classify_cell, normalize_quadrilateral, LatticePoint, LatticePolygon, LatticeSegment,
    QuadParameters, UnimodularAffineMap,
};
use tropcount::quadcusp::{
    binomial_oracle, character_kernel, count_adjacent, count_opposite, smith_normal_form_2x2,
    EdgePair, NormalQuadrilateral,
};
use tropcount::rational::int;
use tropcount::subdivision::{is_regular, lower_hull_subdivision, LiftingFunction};

fn polygon() -> impl Strategy<Value = LatticePolygon> {
    prop::collection::vec((-6i64..=6, -6i64..=6), 3..8).prop_filter_map("collinear", |pts| {
        let pts: Vec<LatticePoint> = pts.into_iter().map(|(x, y)| LatticePoint::new(x, y)).collect();
        LatticePolygon::hull_of(&pts).ok()
    })
}

fn unimodular() -> impl Strategy<Value = UnimodularAffineMap> {
    ([[-5i64..=5, -5i64..=5], [-5i64..=5, -5i64..=5]], -10i64..=10, -10i64..=10).prop_filter_map(
        "determinant not +-1",
        |(m, tx, ty)| UnimodularAffineMap::new(m, LatticePoint::new(tx, ty)).ok(),
    )
}

fn quad(max: i64) -> impl Strategy<Value = NormalQuadrilateral> {
    (1..=max, 1..=max, 1..=max, 1..=max, 1..=max).prop_filter_map(
        "not a valid normal quadrilateral",
        |(m, p, q, r, s)| NormalQuadrilateral::new(m, p, q, r, s).ok(),
    )
}

fn edge_lengths(p: &LatticePolygon) -> Vec<i64> {
    let mut v: Vec<i64> = p
        .edges()
        .into_iter()
        .map(|(a, b)| LatticeSegment::new(a, b).unwrap().integer_length())
        .collect();
    v.sort();
    v
}

proptest! {
    #[test]
    fn pick_formula(p in polygon()) {
        let interior = p.interior_points().len() as i64;
        let boundary = p.boundary_count();
        prop_assert_eq!(p.normalized_area(), 2 * interior + boundary - 2);
        prop_assert_eq!(p.lattice_points().len() as i64, interior + boundary);
    }

    #[test]
    fn unimodular_invariance(p in polygon(), map in unimodular()) {
        let q = p.transformed(&map);
        prop_assert_eq!(q.lattice_points().len(), p.lattice_points().len());
        prop_assert_eq!(q.normalized_area(), p.normalized_area());
        prop_assert_eq!(classify_cell(&q), classify_cell(&p));
        prop_assert_eq!(edge_lengths(&q), edge_lengths(&p));
        let back = q.transformed(&map.inverse());
        prop_assert_eq!(back, p);
    }

    #[test]
    fn normalization_round_trip(nq in quad(8), map in unimodular()) {
        let [a, b, c, _] = nq.params().vertices();
        let q = nq.polygon().transformed(&map);
        let e1 = (map.apply(a), map.apply(b));
        let e2 = (map.apply(b), map.apply(c));
        let (norm, params) = normalize_quadrilateral(&q, e1, e2).unwrap();
        let image: Vec<LatticePoint> = [a, b, c, nq.params().vertices()[3]]
            .iter()
            .map(|v| norm.apply(map.apply(*v)))
            .collect();
        prop_assert_eq!(image, params.vertices().to_vec());
        prop_assert_eq!(q.transformed(&norm), LatticePolygon::new(params.vertices()).unwrap());
        // Only the shear-dependent parameters may move.
        let QuadParameters { m, q: qq, s, .. } = nq.params();
        prop_assert_eq!((params.m, params.q, params.s), (m, qq, s));
        // Maximal shear: one more step would make p or r nonpositive.
        prop_assert!(params.p > 0 && params.r > 0);
        prop_assert!(params.p <= params.m - params.q || params.r <= params.q);
    }

    #[test]
    fn lower_hull_round_trip(values in prop::collection::vec(0i64..=12, 10)) {
        let delta = LatticePolygon::new([(0, 0), (3, 0), (0, 3)].map(Into::into)).unwrap();
        let support = delta.lattice_points();
        let lift: BTreeMap<LatticePoint, _> =
            support.iter().zip(&values).map(|(p, v)| (*p, int(*v))).collect();
        let (sub, nu) = lower_hull_subdivision(&support, &lift).unwrap();
        prop_assert!(sub.induced_by(&nu));
        prop_assert!(is_regular(&sub).is_some());
        let on_vertices: BTreeMap<LatticePoint, _> = sub
            .vertices()
            .iter()
            .map(|v| (*v, nu.get(v).unwrap().clone()))
            .collect();
        let (again, _) = lower_hull_subdivision(sub.vertices(), &on_vertices).unwrap();
        prop_assert_eq!(&again, &sub);
        let curve = corner_locus(&TropicalPolynomial::from_lifting(&LiftingFunction::new(on_vertices)))
            .unwrap();
        prop_assert_eq!(curve.subdivision(), &sub);
        prop_assert!(curve.is_balanced());
    }

    #[test]
    fn adjacent_count_matches_oracle(q in quad(12)) {
        if let Ok(oracle) = binomial_oracle(&q, EdgePair::Adjacent) {
            prop_assert_eq!(count_adjacent(&q), oracle);
        }
        if let Ok(oracle) = binomial_oracle(&q, EdgePair::Opposite) {
            prop_assert_eq!(count_opposite(&q), oracle);
        }
    }

    #[test]
    fn adjacent_count_symmetric_in_edges(q in quad(12)) {
        let (a, b) = (q.edge_a(), q.edge_b());
        prop_assert_eq!(character_kernel(a, b), character_kernel(b, a));
        let [v0, v1, v2, _] = q.params().vertices();
        // Same quadrilateral with the two fixed edges exchanged.
        if let Ok((_, swapped)) = normalize_quadrilateral(&q.polygon(), (v2, v1), (v1, v0)) {
            let other = NormalQuadrilateral::from_params(swapped).unwrap();
            prop_assert_eq!(count_adjacent(&other), count_adjacent(&q));
        }
    }

    #[test]
    fn smith_normal_form_is_a_factorization(m in [[-30i64..=30, -30i64..=30], [-30i64..=30, -30i64..=30]]) {
        prop_assume!(m[0][0] * m[1][1] - m[0][1] * m[1][0] != 0);
        let (u, d, v) = smith_normal_form_2x2(m);
        let mul = |a: [[i64; 2]; 2], b: [[i64; 2]; 2]| {
            let mut c = [[0; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
                }
            }
            c
        };
        prop_assert_eq!(mul(mul(u, m), v), [[d[0], 0], [0, d[1]]]);
        prop_assert!(d[0] > 0 && d[1] % d[0] == 0);
        let det = |a: [[i64; 2]; 2]| a[0][0] * a[1][1] - a[0][1] * a[1][0];
        prop_assert_eq!(det(u).abs(), 1);
        prop_assert_eq!(det(v).abs(), 1);
    }
}
