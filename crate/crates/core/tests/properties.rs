//! Property tests for the geometric and combinatorial invariants.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use schurlab_core::geom::{
    circumscribed_ball, min_enclosing_ball, project_to_hyperplane, regular_unit_simplex, Hyperplane, Point,
    PointConfig,
};
use schurlab_core::graph::{
    brute_force_cliques, count_cliques, random_diameter_config, schur_audit, Adjacency, DiameterGraph,
    GeneratorOptions,
};
use schurlab_core::lemmas::{lemrad_closed_form, random_rotation_instance, rotation_procedure, verify_observations};
use schurlab_core::linalg::{random_gaussian, random_rotation};
use schurlab_core::reuleaux::{BodyKind, ReuleauxBody};
use schurlab_core::search::{search, SearchProblem};
use schurlab_core::sphere::{reflect, rho, unit_chord_angle, DiametralSphere, SpherePoint, SphericalFrame};
use schurlab_core::Tolerance;

fn point(d: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(-10.0..10.0f64, d).prop_map(Point::from_vec)
}

fn cloud(d: usize, max: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec(point(d), 1..=max)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn regular_simplex_has_unit_edges(d in 1usize..9, extra in 0usize..3) {
        let k = d + 1;
        let s = regular_unit_simplex(d + extra, k).unwrap();
        let p = s.points();
        for i in 0..k {
            for j in i + 1..k {
                prop_assert!(((&p[i] - &p[j]).norm() - 1.0).abs() <= 1e-12);
            }
        }
        let ball = circumscribed_ball(&s).unwrap();
        let expected = ((k as f64 - 1.0) / (2.0 * k as f64)).sqrt();
        prop_assert!((ball.radius - expected).abs() <= 1e-12);
    }

    #[test]
    fn enclosing_ball_grows_with_insertion(pts in cloud(3, 12), extra in point(3)) {
        let before = min_enclosing_ball(&pts).unwrap();
        let mut more = pts.clone();
        more.push(extra);
        let after = min_enclosing_ball(&more).unwrap();
        prop_assert!(after.radius >= before.radius - 1e-9 * before.radius.max(1.0));
        for p in &more {
            prop_assert!(after.contains(p, 1e-9 * after.radius.max(1.0)));
        }
    }

    #[test]
    fn projection_satisfies_pythagoras(d in 2usize..6, seed in any::<u64>()) {
        let mut r = rng(seed);
        let h = Hyperplane::new(random_gaussian(d, &mut r), r.gen_range(-2.0..2.0)).unwrap();
        let p = random_gaussian(d, &mut r) * 3.0;
        let q = project_to_hyperplane(&(random_gaussian(d, &mut r) * 3.0), &h).unwrap();
        let proj = project_to_hyperplane(&p, &h).unwrap();
        prop_assert!(h.signed_distance(&proj).abs() <= 1e-12 * (1.0 + p.norm()));
        let lhs = (&p - &q).norm_squared();
        let rhs = (&p - &proj).norm_squared() + (&proj - &q).norm_squared();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * lhs.max(1.0));
    }

    #[test]
    fn reflection_is_an_involutive_isometry(d in 1usize..6, r in 0.72f64..5.0, seed in any::<u64>()) {
        let mut g = rng(seed);
        let frame = SphericalFrame::new(d, r).unwrap();
        let gamma = DiametralSphere::new(random_gaussian(d + 1, &mut g)).unwrap();
        let a = SpherePoint::from_direction(&random_gaussian(d + 1, &mut g), &frame).unwrap();
        let b = SpherePoint::from_direction(&random_gaussian(d + 1, &mut g), &frame).unwrap();
        let ra = reflect(&a, &gamma);
        let rb = reflect(&b, &gamma);
        prop_assert!((reflect(&ra, &gamma).coords() - a.coords()).norm() <= 1e-12 * r);
        let before = rho(&a, &b, &frame).unwrap();
        let after = rho(&ra, &rb, &frame).unwrap();
        prop_assert!((before - after).abs() <= 1e-12);
    }

    #[test]
    fn unit_chord_angle_decreases(r in 0.5f64..20.0, dr in 1e-6f64..1.0) {
        prop_assert!(unit_chord_angle(r + dr) < unit_chord_angle(r));
        prop_assert_eq!(unit_chord_angle(r) < FRAC_PI_2, r > FRAC_1_SQRT_2);
    }

    #[test]
    fn lemrad_identity_holds(r in 0.7072f64..50.0, k in 2usize..9) {
        if let Ok(v) = lemrad_closed_form(r, k) {
            let identity = 2.0 * v.r_omega * v.r_omega - 1.0 - 2.0 * v.a * (v.b - v.a);
            prop_assert!(identity.abs() <= 1e-12);
            prop_assert!(v.r_omega > FRAC_1_SQRT_2);
        }
    }

    #[test]
    fn clique_counter_matches_brute_force(n in 2usize..=10, density in 0.2f64..1.0, l in 2usize..6, seed in any::<u64>()) {
        let mut g = rng(seed);
        let mut adj = Adjacency::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                if g.gen_bool(density) {
                    adj.add_edge(i, j);
                }
            }
        }
        let l = l.min(n);
        let mut fast = adj.cliques(l);
        fast.sort();
        let brute = brute_force_cliques(&adj, l).unwrap();
        prop_assert_eq!(fast, brute.cliques);
    }

    #[test]
    fn rescaling_keeps_the_diameter_graph(d in 2usize..5, n in 3usize..10, factor in 1e-3f64..1e3, seed in any::<u64>()) {
        let cfg = random_diameter_config(d, n, GeneratorOptions::default(), &mut rng(seed)).unwrap();
        let tol = Tolerance::default();
        let a = DiameterGraph::build(&cfg, tol).unwrap();
        let b = DiameterGraph::build(&cfg.scaled(factor).unwrap(), tol).unwrap();
        prop_assert_eq!(a.adjacency(), b.adjacency());
    }

    #[test]
    fn audited_configurations_satisfy_the_bounds(d in 2usize..6, n in 3usize..=12, seed in any::<u64>()) {
        let n = n.max(d + 1);
        let cfg = random_diameter_config(d, n, GeneratorOptions::default(), &mut rng(seed)).unwrap();
        let a = schur_audit(&cfg, Some(d), Tolerance::default()).unwrap();
        prop_assert!(a.cliques <= n, "{} cliques on {} points", a.cliques, n);
        if let Some(m) = a.min_pairwise_intersection {
            prop_assert!(m + 2 >= d);
        }
        let g = DiameterGraph::build(&cfg, Tolerance::default()).unwrap();
        prop_assert_eq!(count_cliques(&g, d).unwrap().count, a.cliques);
    }

    #[test]
    fn boundary_samples_lie_on_their_carrier(d in 2usize..6, seed in any::<u64>()) {
        let body = ReuleauxBody::regular_simplex(d).unwrap();
        let faces = body.face_subsets();
        let subset = &faces[(seed % faces.len() as u64) as usize];
        for p in body.sample_face(subset, 20, seed).unwrap() {
            let face = body.face_of_boundary_point(&p).unwrap();
            let residual = ((&p - &face.carrier.center).norm() - face.carrier.radius).abs();
            prop_assert!(residual <= 1e-9);
        }
    }

    #[test]
    fn body_samples_are_members(d in 2usize..6, rugby in any::<bool>(), seed in any::<u64>()) {
        let kind = if rugby { BodyKind::RugbyBall } else { BodyKind::Simplex };
        let body = match kind {
            BodyKind::Simplex => ReuleauxBody::regular_simplex(d).unwrap(),
            BodyKind::RugbyBall => ReuleauxBody::regular_rugby_ball(d).unwrap(),
        };
        for p in body.sample_body(50, seed).unwrap() {
            prop_assert!(body.contains(&p));
            prop_assert!(body.max_vertex_distance(&p) <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn spherical_samples_are_members(d in 2usize..5, ri in 0usize..3, rugby in any::<bool>(), seed in any::<u64>()) {
        let r = [0.75, 1.0, 2.0][ri];
        let kind = if rugby { BodyKind::RugbyBall } else { BodyKind::Simplex };
        let body = ReuleauxBody::spherical(kind, d, r).unwrap();
        for p in body.sample_body(50, seed).unwrap() {
            prop_assert!((p.norm() - r).abs() <= 1e-9 * r);
            for v in body.vertices() {
                prop_assert!((&p - v).norm() <= 1.0 + 1e-9);
            }
            prop_assert!(body.contains(&p));
        }
    }

    #[test]
    fn rotation_procedure_is_deterministic(d in 3usize..5, seed in any::<u64>()) {
        let inst = random_rotation_instance(d, &mut rng(seed)).unwrap();
        let a = rotation_procedure(&inst.simplex, &inst.witnesses, seed).unwrap();
        let b = rotation_procedure(&inst.simplex, &inst.witnesses, seed).unwrap();
        prop_assert!(a.bracket < 1e-12);
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn search_count_is_isometry_invariant(d in 2usize..4, n in 4usize..7, seed in any::<u64>()) {
        let mut p = SearchProblem::euclidean(d, n, d, 4000, seed);
        p.restarts = 1;
        let result = search(&p).unwrap();
        let mut g = rng(seed);
        let q = random_rotation(d, &mut g);
        let shift = random_gaussian(d, &mut g);
        let moved: Vec<Point> = result.best.points().iter().map(|x| &q * x + &shift).collect();
        let moved = PointConfig::euclidean(moved).unwrap();
        let graph = DiameterGraph::build(&moved, p.tol).unwrap();
        prop_assert_eq!(count_cliques(&graph, d).unwrap().count, result.count);
        prop_assert!(result.count <= n || result.tolerance_artifact);
    }

    #[test]
    fn observation_campaigns_hold(seed in any::<u64>()) {
        for report in verify_observations(300, seed).unwrap() {
            prop_assert!(report.passed(), "{}: {:?}", report.lemma, report.witness);
        }
    }
}

/// Any d points in R^d at pairwise distance at least 1 need an enclosing
/// radius of at least the circumradius of the regular unit (d-1)-simplex.
#[test]
fn separated_sets_have_large_enclosing_balls() {
    let mut g = rng(1729);
    for d in 3..=5 {
        let bound = ((d as f64 - 1.0) / (2.0 * d as f64)).sqrt() - 1e-9;
        for _ in 0..10_000 {
            let pts: Vec<Point> = (0..d).map(|_| random_gaussian(d, &mut g)).collect();
            let mut min = f64::INFINITY;
            for i in 0..d {
                for j in i + 1..d {
                    min = min.min((&pts[i] - &pts[j]).norm());
                }
            }
            let pts: Vec<Point> = pts.iter().map(|p| p / min).collect();
            let ball = min_enclosing_ball(&pts).unwrap();
            assert!(ball.radius >= bound, "radius {} below {bound} in R^{d}", ball.radius);
        }
    }
}
