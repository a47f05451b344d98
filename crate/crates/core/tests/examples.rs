//! Worked examples across modules, each checked against an oracle computed
//! here rather than by the library.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use schurlab_core::geom::{
    circumscribed_ball, diameter, min_enclosing_ball, regular_unit_simplex, Point, PointConfig, Space,
};
use schurlab_core::graph::{brute_force_cliques, count_cliques, schur_audit, DiameterGraph};
use schurlab_core::lemmas::{lemrad_closed_form, lemrelo_margin};
use schurlab_core::linalg::{centroid, random_gaussian};
use schurlab_core::reuleaux::{red_blue_construction, red_blue_margins, ReuleauxBody};
use schurlab_core::search::{counterexample_hunt, reuleaux_polygon, search, HuntOptions, SearchProblem};
use schurlab_core::sphere::{min_spherical_ball, SpherePoint, SphericalFrame};
use schurlab_core::Tolerance;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pairwise_max(points: &[Point]) -> f64 {
    points
        .iter()
        .tuple_combinations()
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

/// Center of the ball through `pts` with center in their affine hull.
fn hull_circumcenter(pts: &[&Point]) -> Option<Point> {
    let p0 = pts[0];
    let m = pts.len() - 1;
    if m == 0 {
        return Some(p0.clone());
    }
    let d = p0.len();
    let e = nalgebra::DMatrix::from_fn(d, m, |r, c| pts[c + 1][r] - p0[r]);
    let gram = e.transpose() * &e;
    if gram.determinant().abs() < 1e-12 {
        return None;
    }
    let rhs = nalgebra::DVector::from_fn(m, |i, _| 0.5 * gram[(i, i)]);
    let lambda = gram.lu().solve(&rhs)?;
    Some(p0 + e * lambda)
}

#[test]
fn enclosing_ball_matches_support_subset_search() {
    let mut g = rng(5);
    for _ in 0..200 {
        let pts: Vec<Point> = (0..5).map(|_| random_gaussian(3, &mut g)).collect();
        let mut best = f64::INFINITY;
        for size in 1..=4 {
            for s in pts.iter().combinations(size) {
                let Some(c) = hull_circumcenter(&s) else { continue };
                let r = (s[0] - &c).norm();
                if pts.iter().all(|p| (p - &c).norm() <= r + 1e-12) {
                    best = best.min(r);
                }
            }
        }
        let ball = min_enclosing_ball(&pts).unwrap();
        assert!((ball.radius - best).abs() <= 1e-9, "{} vs {best}", ball.radius);
    }
}

#[test]
fn circumscribed_ball_agrees_with_enclosing_ball_on_regular_simplices() {
    for d in 1..=7 {
        for k in 2..=d + 1 {
            let s = regular_unit_simplex(d, k).unwrap();
            let a = circumscribed_ball(&s).unwrap();
            let b = min_enclosing_ball(s.points()).unwrap();
            assert!((a.radius - b.radius).abs() <= 1e-12);
            assert!((&a.center - &b.center).norm() <= 1e-12);
        }
    }
}

#[test]
fn diameter_equals_exhaustive_pairs() {
    let mut g = rng(6);
    for n in 2..20 {
        let pts: Vec<Point> = (0..n).map(|_| random_gaussian(4, &mut g)).collect();
        let cfg = PointConfig::euclidean(pts.clone()).unwrap();
        assert_eq!(diameter(&cfg).unwrap(), pairwise_max(&pts));
    }
}

#[test]
fn spherical_cap_of_a_unit_simplex_matches_the_closed_form() {
    for (d, r) in [(2, 1.0), (3, 0.75), (4, 2.0)] {
        let k = d;
        let frame = SphericalFrame::new(d, r).unwrap();
        let body = ReuleauxBody::spherical(schurlab_core::reuleaux::BodyKind::RugbyBall, d, r).unwrap();
        let verts: Vec<SpherePoint> = body
            .vertices()
            .iter()
            .map(|v| SpherePoint::new(v.clone(), &frame).unwrap())
            .collect();
        let (center, angle) = min_spherical_ball(&verts, &frame).unwrap();
        // the cap is centered at the centroid direction, at height b over the hull
        let b = lemrad_closed_form(r, k).unwrap().b;
        let c = centroid(body.vertices());
        assert!((center.coords() - &c * (r / c.norm())).norm() <= 1e-9);
        assert!((angle - (b / r).acos()).abs() <= 1e-9, "{angle} vs {}", (b / r).acos());
    }
}

#[test]
fn arc_midpoints_of_the_reuleaux_tetrahedron() {
    let body = ReuleauxBody::regular_simplex(3).unwrap();
    let v = body.vertices();
    for (i, j) in (0..4).tuple_combinations() {
        let m = body.arc_midpoint(i, j).unwrap();
        for k in (0..4).filter(|&k| k != i && k != j) {
            assert!(((&m - &v[k]).norm() - 1.0).abs() <= 1e-12);
        }
        // equidistant from the arc's end vertices
        assert!(((&m - &v[i]).norm() - (&m - &v[j]).norm()).abs() <= 1e-12);
        let face = body.face_of_boundary_point(&m).unwrap();
        assert_eq!(face.vertex_subset, vec![i, j]);
        assert!((face.carrier.radius - 3f64.sqrt() / 2.0).abs() <= 1e-12);
    }
    let expected = 3f64.sqrt() - 2f64.sqrt() / 2.0;
    let d = (body.arc_midpoint(0, 1).unwrap() - body.arc_midpoint(2, 3).unwrap()).norm();
    assert!((d - expected).abs() <= 1e-12);
}

/// Parameter where the ray `o + t u` leaves the body, by bisection on the
/// largest vertex distance.
fn exit_by_bisection(vertices: &[Point], o: &Point, u: &Point) -> Point {
    let far = |t: f64| vertices.iter().map(|v| (o + u * t - v).norm()).fold(0.0, f64::max);
    let (mut lo, mut hi) = (0.0, 2.0 / u.norm());
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if far(mid) <= 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    o + u * lo
}

#[test]
fn rays_through_face_centroids_exit_through_the_matching_face() {
    let body = ReuleauxBody::regular_simplex(3).unwrap();
    let o = body.centroid();
    for subset in body.face_subsets() {
        let members: Vec<Point> = subset.iter().map(|&i| body.vertices()[i].clone()).collect();
        let q = centroid(&members);
        let p = exit_by_bisection(body.vertices(), &o, &(&q - &o));
        let face = body.face_of_boundary_point(&p).unwrap();
        assert_eq!(face.vertex_subset, subset);
    }
}

#[test]
fn rugby_apex_lies_in_both_bodies() {
    for d in 3..=5 {
        let body = ReuleauxBody::regular_simplex(d).unwrap();
        let v = body.vertices();
        let facet = &v[..d];
        let c = centroid(facet);
        let rf = ((d as f64 - 1.0) / (2.0 * d as f64)).sqrt();
        let up = (&v[d] - &c).normalize();
        let apex = &c + &up * (1.0 - rf * rf).sqrt();
        for u in facet {
            assert!(((&apex - u).norm() - 1.0).abs() <= 1e-12);
        }
        assert!((&apex - &v[d]).norm() <= 1.0);
        assert!(body.contains(&apex));
        let rugby = ReuleauxBody::new(
            schurlab_core::reuleaux::BodyKind::RugbyBall,
            PointConfig::euclidean(facet.to_vec()).unwrap(),
            Tolerance::default(),
        )
        .unwrap();
        assert!(rugby.contains(&apex));
        assert!(body.contains(&v[d]) && rugby.contains(&v[d]));
    }
}

/// Volume of the Reuleaux tetrahedron of width 1.
fn reuleaux_tetrahedron_volume() -> f64 {
    8.0 * PI / 3.0 - 27.0 / 4.0 * (1.0f64 / 3.0).acos() + 2f64.sqrt() / 4.0
}

#[test]
fn sampling_acceptance_rate_matches_the_volume_ratio() {
    let body = ReuleauxBody::regular_simplex(3).unwrap();
    let ball = body.sampling_ball();
    let ball_volume = 4.0 / 3.0 * PI * ball.radius.powi(3);

    // independent Monte-Carlo volume in the bounding box of the ball
    let mut g = rng(11);
    let trials = 400_000;
    let side = 2.0 * ball.radius;
    let hits = (0..trials)
        .filter(|_| {
            let p = Point::from_fn(3, |i, _| ball.center[i] + g.gen_range(-0.5..0.5) * side);
            body.vertices().iter().all(|v| (&p - v).norm() <= 1.0)
        })
        .count();
    let mc_volume = hits as f64 / trials as f64 * side.powi(3);
    let exact = reuleaux_tetrahedron_volume();
    let q = hits as f64 / trials as f64;
    let mc_sigma = side.powi(3) * (q * (1.0 - q) / trials as f64).sqrt();
    assert!((mc_volume - exact).abs() <= 3.0 * mc_sigma, "{mc_volume} vs {exact}");

    let (_, stats) = body.sample_body_with_stats(50_000, 3).unwrap();
    let p = exact / ball_volume;
    let sigma = (p * (1.0 - p) / stats.attempts as f64).sqrt();
    let rate = stats.acceptance_rate();
    assert!((rate - p).abs() <= 3.0 * sigma, "rate {rate}, expected {p} +- {sigma}");
}

#[test]
fn red_blue_examples() {
    let tol = Tolerance::default();
    let delta = 1e-3;
    let rb = red_blue_construction(3, delta, tol).unwrap();
    let blue = rb.blue.points();
    assert_eq!(blue.len(), 2);
    let expected = (3f64.sqrt() - 2f64.sqrt() / 2.0) * (1.0 - delta);
    assert!(((&blue[0] - &blue[1]).norm() - expected).abs() <= 1e-12);
    for y in blue {
        for v in rb.red.points() {
            assert!((y - v).norm() < 1.0);
        }
    }
    assert_eq!(red_blue_construction(4, delta, tol).unwrap().blue.len(), 2);

    // uncontracted: each blue point is at distance 1 from d - 1 red vertices
    let m = red_blue_margins(3, 0.0, tol).unwrap();
    assert!(m.red_blue_margin.abs() <= 1e-12);
    assert!(red_blue_construction(3, 0.0, tol).is_err());
    let body = ReuleauxBody::regular_simplex(3).unwrap();
    let y = body.arc_midpoint(0, 1).unwrap();
    let at_unit = body.vertices().iter().filter(|v| ((&y - *v).norm() - 1.0).abs() <= 1e-12).count();
    assert_eq!(at_unit, 2);
}

#[test]
fn centroid_and_arc_midpoint_in_closed_form() {
    let body = ReuleauxBody::regular_simplex(3).unwrap();
    let o = body.centroid();
    let w = body.arc_midpoint(0, 1).unwrap();
    let (margin, strict, _) = lemrelo_margin(&body, &o, &w).unwrap();
    // vertices at the circumradius, arc midpoints at half the opposite-midpoint distance
    let expected = (3.0f64 / 8.0).sqrt() - (3f64.sqrt() - 2f64.sqrt() / 2.0) / 2.0;
    assert!(strict);
    assert!(expected > 0.0);
    assert!((margin - expected).abs() <= 1e-12);
}

#[test]
fn lemrad_limits() {
    for k in 2..=6 {
        let kf = k as f64;
        let far = lemrad_closed_form(1e6, k).unwrap();
        assert!((far.r_omega - ((kf + 1.0) / (2.0 * kf)).sqrt()).abs() <= 1e-9);
        // just above the critical radius a and b meet at sqrt(1/2k)
        let near = lemrad_closed_form(FRAC_1_SQRT_2 + 1e-12, k).unwrap();
        assert!((near.a - near.b).abs() < 1e-4, "{} vs {}", near.a, near.b);
        assert!((near.r_omega - FRAC_1_SQRT_2).abs() < 1e-6);
        assert!(near.r_omega > FRAC_1_SQRT_2);
    }
    let v = lemrad_closed_form(1.0, 2).unwrap();
    assert!((v.b - 3f64.sqrt() / 2.0).abs() <= 1e-12);
    assert!((v.a - 1.0 / (2.0 * 3f64.sqrt())).abs() <= 1e-12);
}

fn cycle_edges(g: &DiameterGraph) -> Vec<(usize, usize)> {
    let n = g.len();
    (0..n).tuple_combinations().filter(|&(i, j)| g.has_edge(i, j)).collect()
}

#[test]
fn reuleaux_polygons_have_n_diameters() {
    let tol = Tolerance::default();
    for n in [5, 7, 9] {
        let cfg = reuleaux_polygon(n).unwrap();
        let pts = cfg.points();
        assert!((pairwise_max(pts) - 1.0).abs() <= 1e-12);
        // brute force over all pairs
        let unit = pts.iter().tuple_combinations().filter(|(a, b)| ((*a - *b).norm() - 1.0).abs() <= 1e-9).count();
        assert_eq!(unit, n);
        let g = DiameterGraph::build(&cfg, tol).unwrap();
        let edges = cycle_edges(&g);
        assert_eq!(edges.len(), n);
        // every vertex has degree 2 and the graph is connected: a single n-cycle
        let mut seen = vec![false; n];
        let (mut prev, mut cur) = (usize::MAX, 0);
        for _ in 0..n {
            seen[cur] = true;
            let next = (0..n).find(|&u| u != prev && u != cur && g.has_edge(cur, u)).unwrap();
            (prev, cur) = (cur, next);
        }
        assert_eq!(cur, 0);
        assert!(seen.iter().all(|&s| s));
        assert_eq!(brute_force_cliques(g.adjacency(), 2).unwrap().count, n);
    }
    let audit = schur_audit(&reuleaux_polygon(7).unwrap(), Some(2), tol).unwrap();
    assert_eq!(audit.cliques, 7);
    assert!(audit.passed());
}

#[test]
fn four_dimensional_search_stays_at_n() {
    // 4 restarts of 250k steps: 10^6 iterations
    let mut p = SearchProblem::euclidean(4, 6, 4, 250_000, 1729);
    p.target = Some(7);
    let r = search(&p).unwrap();
    assert_eq!(r.count, 6);
    assert!(!r.tolerance_artifact);
    let g = DiameterGraph::build(&r.best, p.tol).unwrap();
    assert_eq!(count_cliques(&g, 4).unwrap().count, 6);
    assert_eq!(brute_force_cliques(g.adjacency(), 4).unwrap().count, 6);
}

#[test]
fn three_dimensional_search_finds_six_triangles() {
    let mut p = SearchProblem::euclidean(3, 6, 3, 25_000, 1729);
    p.target = Some(6);
    let r = search(&p).unwrap();
    assert!(r.count >= 6);
    let g = DiameterGraph::build(&r.best, p.tol).unwrap();
    assert_eq!(brute_force_cliques(g.adjacency(), 3).unwrap().count, r.count);
    assert!((diameter(&r.best).unwrap() - 1.0).abs() <= 1e-9);
    assert!(matches!(r.best.space(), Space::Euclidean { dim: 3 }));
}

#[test]
fn hunt_examples() {
    let opts = HuntOptions::new(3, 20_000, 1729);
    let a = counterexample_hunt(&opts).unwrap();
    assert!(a.best_slack < 0.0 && !a.witness_found);
    let b = counterexample_hunt(&opts).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());

    // one blue vertex fewer: the construction seeds a feasible pair
    let mut feasible = HuntOptions::new(3, 5_000, 1729);
    feasible.blue_size = Some(2);
    feasible.seed_from_construction = true;
    let f = counterexample_hunt(&feasible).unwrap();
    assert!(f.witness_found);
    assert!(f.best_slack >= -1e-9 && f.cross_margin > 0.0);
    let union: Vec<Point> = f.red.points().iter().chain(f.blue.points()).cloned().collect();
    assert!(pairwise_max(&union) <= 1.0 + 1e-9);
}
