mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use common::*;
use proptest::prelude::*;
use sofa_core::convex_core::{Vec2, ConvexPolygon};
use sofa_core::hallway::*;

#[test]
fn unit_square_hallway_is_the_hallway() {
    let cap = cap_of_polygon(FRAC_PI_2, 20, unit_square());
    let pose = tangent_hallway(cap.support(), 0.0).unwrap();
    assert_vclose(pose.x, v(0.0, 0.0), 1e-12, "x");
    assert_vclose(pose.y, v(1.0, 1.0), 1e-12, "y");
    assert_close(pose.a.offset, 1.0, 1e-12, "a");
    assert_close(pose.c.offset, 1.0, 1e-12, "c");
    assert_close(pose.b.offset, 0.0, 1e-12, "b");
}

#[test]
fn angle_outside_range_is_rejected() {
    let cap = cap_of_polygon(FRAC_PI_2, 20, unit_square());
    assert!(tangent_hallway(cap.support(), -0.1).is_err());
    assert!(tangent_hallway(cap.support(), FRAC_PI_2 + 0.1).is_err());
    let narrow = random_cap_seeded(3, PI / 4.0, 20);
    assert!(tangent_hallway(narrow.support(), 1.0).is_err());
}

#[test]
fn maximizer_inner_corner_at_zero() {
    let cap = k1(FRAC_PI_2, 500);
    let pose = tangent_hallway(cap.support(), 0.0).unwrap();
    assert_vclose(pose.x, v(FRAC_PI_2, 0.0), 1e-3, "x(0) in cap frame");
    assert_vclose(pose.x - v(1.0, 0.0), v(FRAC_PI_2 - 1.0, 0.0), 1e-3, "x(0) in centred frame");
}

#[test]
fn half_disk_corner_stays_at_origin() {
    let cap = cap_from_fn(FRAC_PI_2, 200, half_disk_support);
    let g = cap.grid();
    for j in 1..g.cells() {
        // Slot angles: the corner is exactly the origin there.
        let t = g.lower_angle(j);
        assert_vclose(inner_corner(cap.support(), t), v(0.0, 0.0), 1e-12, "slot");
        // Between slots the circumscribed polygon adds O(Δ²).
        let between = j as f64 * g.step();
        assert_vclose(inner_corner(cap.support(), between), v(0.0, 0.0), g.step().powi(2), "between");
    }
}

#[test]
fn maximizer_arm_lengths() {
    let cap = k1(FRAC_PI_2, 1000);
    for frac in [0.1, 0.3, 0.5, 0.77, 0.9] {
        let t = off_grid(&cap, frac);
        let arms = arm_lengths(cap.polygon(), t);
        assert_close(arms.g_plus, 1.0 + t, 1e-3, "g");
        assert_close(arms.h_plus, 1.0 + FRAC_PI_2 - t, 1e-3, "h");
        assert_close(arms.g_minus, arms.g_plus, 1e-12, "no atom, g");
        assert_close(arms.h_minus, arms.h_plus, 1e-12, "no atom, h");
    }
}

#[test]
fn half_disk_arm_lengths_are_one() {
    let cap = cap_from_fn(FRAC_PI_2, 400, half_disk_support);
    for frac in [0.2, 0.5, 0.8] {
        let arms = arm_lengths(cap.polygon(), off_grid(&cap, frac));
        let tol = 2.0 * cap.grid().step();
        assert_close(arms.g_plus, 1.0, tol, "g");
        assert_close(arms.h_plus, 1.0, tol, "h");
    }
}

#[test]
fn unit_square_arm_lengths_at_zero() {
    let cap = cap_of_polygon(FRAC_PI_2, 20, unit_square());
    let arms = arm_lengths(cap.polygon(), 0.0);
    // A∓(0) = (1,0), (1,1); C∓(0) = v∓(π/2) = (1,1), (0,1).
    let (a_minus, a_plus, c_minus, c_plus) = (v(1.0, 0.0), v(1.0, 1.0), v(1.0, 1.0), v(0.0, 1.0));
    assert_close(arms.g_plus, (c_plus - a_plus).y, 1e-12, "g+");
    assert_close(arms.g_minus, (c_minus - a_minus).y, 1e-12, "g-");
    assert_close(arms.h_plus, (a_plus - c_plus).x, 1e-12, "h+");
    assert_close(arms.h_minus, (a_minus - c_minus).x, 1e-12, "h-");
    for (got, want) in [(arms.g_plus, 0.0), (arms.g_minus, 1.0), (arms.h_plus, 1.0), (arms.h_minus, 0.0)] {
        assert_close(got, want, 1e-12, "square arms");
    }
}

#[test]
fn rotation_path_endpoints() {
    for omega in OMEGAS {
        let cap = random_cap_seeded(11, omega, 40);
        let p = cap.support();
        let path = rotation_path(p, 50).unwrap();
        assert_close(path.first().dot(Vec2::unit(FRAC_PI_2)), p.value_at(FRAC_PI_2) - 1.0, 1e-12, "start");
        assert_close(path.last().dot(Vec2::unit(omega)), p.value_at(omega) - 1.0, 1e-12, "end");
    }
    assert!(rotation_path(k1(FRAC_PI_2, 20).support(), 1).is_err());
}

#[test]
fn half_disk_path_is_constant() {
    let cap = cap_from_fn(FRAC_PI_2, 200, half_disk_support);
    let path = rotation_path(cap.support(), 101).unwrap();
    for q in &path.points {
        assert_vclose(*q, v(0.0, 0.0), 1e-4, "path");
    }
}

#[test]
fn maximizer_path_is_symmetric_and_in_fan() {
    let cap = k1(FRAC_PI_2, 1000);
    let path = rotation_path(cap.support(), 401).unwrap();
    assert_vclose(path.first(), v(FRAC_PI_2, 0.0), 1e-3, "start");
    assert_vclose(path.last(), v(2.0 - FRAC_PI_2, 0.0), 1e-3, "end");
    let n = path.points.len();
    for k in 0..n {
        let (a, b) = (path.points[k], path.points[n - 1 - k]);
        assert_vclose(v(2.0 - a.x, a.y), b, 2e-3, "mirror about x = 1");
        assert!(a.y >= -1e-9, "below the fan at {k}");
    }
}

#[test]
fn unit_square_path() {
    let cap = cap_of_polygon(FRAC_PI_2, 50, unit_square());
    let path = rotation_path(cap.support(), 33).unwrap();
    let corners = unit_square();
    for (k, q) in path.points.iter().enumerate() {
        let t = FRAC_PI_2 * k as f64 / 32.0;
        let (u, w) = (Vec2::unit(t), Vec2::unit(t + FRAC_PI_2));
        let want = u * (brute_support(&corners, t) - 1.0) + w * (brute_support(&corners, t + FRAC_PI_2) - 1.0);
        assert_vclose(*q, want, 1e-12, "vertex oracle");
        let (c, s) = (t.cos(), t.sin());
        assert_vclose(*q, u * (c + s - 1.0) + w * (c - 1.0), 1e-12, "closed form");
    }
}

#[test]
fn maximizer_corner_derivative() {
    let cap = k1(FRAC_PI_2, 1000);
    for frac in [0.05, 0.3, 0.6, 0.95] {
        let t = off_grid(&cap, frac);
        let want = Vec2::unit(t) * -t + Vec2::unit(t + FRAC_PI_2) * (FRAC_PI_2 - t);
        assert_vclose(corner_derivative(cap.polygon(), t, Side::Plus), want, 1e-3, "x'");
        assert_vclose(corner_derivative(cap.polygon(), t, Side::Minus), want, 1e-3, "x' left");
    }
}

#[test]
fn half_disk_corner_derivative_vanishes() {
    let cap = cap_from_fn(FRAC_PI_2, 400, half_disk_support);
    let t = off_grid(&cap, 0.4);
    assert_vclose(corner_derivative(cap.polygon(), t, Side::Plus), v(0.0, 0.0), 2.0 * cap.grid().step(), "x'");
}

#[test]
fn corner_derivative_matches_finite_differences() {
    for seed in 0..10 {
        let cap = random_cap_seeded(seed, OMEGAS[(seed % 5) as usize], 30);
        let g = cap.grid();
        for frac in [0.25, 0.5, 0.75] {
            // Centre of a slot-free gap; the path is smooth there.
            let t = off_grid(&cap, frac);
            let dt = g.step() * 1e-3;
            let fd = (inner_corner(cap.support(), t + dt) - inner_corner(cap.support(), t - dt)) / (2.0 * dt);
            let d = corner_derivative(cap.polygon(), t, Side::Plus);
            assert_vclose(d, fd, 1e-5 * (1.0 + d.norm()), "fd");
        }
    }
}

#[test]
fn corner_derivative_integrates_to_the_path() {
    for seed in 0..5 {
        let cap = random_cap_seeded(seed, OMEGAS[seed as usize], 25);
        let omega = cap.omega();
        let m = 4000;
        let h = omega / m as f64;
        let mut sum = v(0.0, 0.0);
        for k in 0..m {
            sum += corner_derivative(cap.polygon(), (k as f64 + 0.5) * h, Side::Plus) * h;
        }
        let span = inner_corner(cap.support(), omega) - inner_corner(cap.support(), 0.0);
        assert_vclose(sum, span, 20.0 / m as f64, "integral");
    }
}

#[test]
fn half_disk_wedges_are_empty() {
    let cap = cap_from_fn(FRAC_PI_2, 100, half_disk_support);
    for t in [0.1, FRAC_PI_4, 1.4] {
        let w = wedge(cap.support(), t).unwrap();
        assert!(w.polygon.is_none_or(|p| p.area() < 1e-8), "wedge at {t}");
    }
}

#[test]
fn wide_box_wedge_leaves_the_cap() {
    let cap = wide_cap(20);
    let w = wedge(cap.support(), FRAC_PI_4).unwrap();
    let poly = w.polygon.expect("nonempty wedge");
    let outside = poly.vertices().iter().any(|&q| !cap.polygon().contains(q, 1e-9));
    assert!(outside, "wedge should stick out of [0,100]x[0,1]");
}

#[test]
fn maximizer_wedge_at_quarter_turn() {
    let cap = k1(FRAC_PI_2, 400);
    let w = wedge(cap.support(), FRAC_PI_4).unwrap();
    let poly = w.polygon.expect("nonempty");
    assert!(poly.area() > 1e-3);
    assert!(w.w >= 0.0 && w.z >= 0.0, "w = {}, z = {}", w.w, w.z);
    // W on y = 0 and the inner wall b; Z on l(ω, 0) and the inner wall d.
    let pose = tangent_hallway(cap.support(), FRAC_PI_4).unwrap();
    assert_close(w.w_point.y, 0.0, 1e-12, "W on floor");
    assert_close(pose.b.eval(w.w_point), 0.0, 1e-9, "W on b");
    assert_close(w.z_point.dot(Vec2::unit(FRAC_PI_2)), 0.0, 1e-12, "Z on l(omega,0)");
    assert_close(pose.d.eval(w.z_point), 0.0, 1e-9, "Z on d");
    for q in poly.vertices() {
        assert!(cap.polygon().contains(*q, 1e-9));
    }
}

#[test]
fn wedge_needs_interior_angle() {
    let cap = k1(FRAC_PI_2, 50);
    assert!(wedge(cap.support(), 0.0).is_err());
    assert!(wedge(cap.support(), FRAC_PI_2).is_err());
}

#[test]
fn fan_membership() {
    let fan = Fan::new(PI / 3.0);
    assert!(fan.contains(v(1.0, 1.0), 0.0));
    assert!(!fan.contains(v(1.0, -0.1), 0.0));
    assert!(!fan.contains(v(-1.0, 0.1), 0.0));
    assert!(fan.contains(v(-1.0, 1.0), 0.0));
    assert!(!fan.contains_open(v(3.0, 0.0), 1e-12));
    let o = fan.apex();
    assert_close(o.dot(Vec2::unit(PI / 3.0)), 1.0, 1e-15, "apex on l(omega, 1)");
    assert_close(o.y, 1.0, 1e-15, "apex on l(pi/2, 1)");
    assert_eq!(Fan::new(FRAC_PI_2).apex(), v(1.0, 1.0));
    assert_close(fan.floor(-1.0), 1.0 / (PI / 3.0).tan(), 1e-15, "floor");
    assert_eq!(Fan::new(FRAC_PI_2).floor(-5.0), 0.0);
}

#[test]
fn f32_hallway() {
    use sofa_core::convex_core::CapGrid;
    use sofa_core::sofa::Cap;
    let grid = CapGrid::<f32>::new(std::f32::consts::FRAC_PI_2, 10).unwrap();
    let square = ConvexPolygon::<f32>::rect(Vec2::new(0.0, 0.0), Vec2::new(1.0, 1.0));
    let cap = Cap::from_polygon(grid, square).unwrap();
    let pose = tangent_hallway(cap.support(), 0.0f32).unwrap();
    assert!(pose.y.dist(Vec2::new(1.0, 1.0)) < 1e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn outer_minus_inner_is_diagonal(cap in cap_strategy(20), frac in 0.0..1.0f64) {
        let t = cap.omega() * frac;
        let pose = tangent_hallway(cap.support(), t).unwrap();
        let d = pose.y - pose.x - Vec2::unit(t) - Vec2::unit(t + FRAC_PI_2);
        prop_assert!(d.norm() <= 1e-12);
        prop_assert!((pose.a.eval(pose.y)).abs() <= 1e-9);
        prop_assert!((pose.c.eval(pose.y)).abs() <= 1e-9);
    }

    #[test]
    fn arm_lengths_have_one_sided_limits(cap in cap_strategy(20), j in 1usize..1000) {
        let g = cap.grid();
        let j = 1 + j % g.cells();
        let t = g.lower_angle(j);
        let at = arm_lengths(cap.polygon(), t);
        let left = arm_lengths(cap.polygon(), t - 1e-7);
        let right = arm_lengths(cap.polygon(), t + 1e-7);
        prop_assert!((left.g_plus - at.g_minus).abs() <= 1e-5);
        prop_assert!((left.h_plus - at.h_minus).abs() <= 1e-5);
        prop_assert!((right.g_minus - at.g_plus).abs() <= 1e-5);
        prop_assert!((right.h_minus - at.h_plus).abs() <= 1e-5);
    }

    #[test]
    fn wedge_offsets_are_nonnegative(cap in cap_strategy(20), frac in 0.01..0.99f64) {
        let w = wedge(cap.support(), cap.omega() * frac).unwrap();
        prop_assert!(w.w >= -1e-9, "w = {}", w.w);
        prop_assert!(w.z >= -1e-9, "z = {}", w.z);
    }

    #[test]
    fn wedge_inside_cap_when_corner_is(cap in cap_strategy(20), frac in 0.01..0.99f64) {
        let t = cap.omega() * frac;
        let w = wedge(cap.support(), t).unwrap();
        let x = inner_corner(cap.support(), t);
        if cap.polygon().contains(x, 1e-12) {
            if let Some(poly) = w.polygon {
                for q in poly.vertices() {
                    prop_assert!(cap.polygon().contains(*q, 1e-7), "vertex {:?} outside", q);
                }
            }
        }
    }
}
