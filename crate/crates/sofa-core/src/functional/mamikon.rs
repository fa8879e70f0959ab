use crate::convex_core::Vec2;
use crate::sofa::Cap;
use crate::Scalar;

/// `∫_a^b (D · v_t)² dt` in closed form.
fn square_along_v<T: Scalar>(dx: T, dy: T, a: T, b: T) -> T {
    let two = T::lit(2.0);
    let ss = |t: T| t / two - (two * t).sin() / T::lit(4.0);
    let cc = |t: T| t / two + (two * t).sin() / T::lit(4.0);
    let sc = |t: T| t.sin().powi(2) / two;
    dx * dx * (ss(b) - ss(a)) + dy * dy * (cc(b) - cc(a)) - two * dx * dy * (sc(b) - sc(a))
}

/// Mamikon sweep `𝒮(K) = ½∫₀^ω g⁺(t)² dt + ½∫_ω^{ω+π/2} τ_K(t, ω + π/2)² dt`:
/// the area between the upper boundary of `K` and the outer-corner curve.
///
/// Between consecutive grid angles the contact vertices are fixed, so both
/// integrals are evaluated piece by piece in closed form.
pub fn mamikon_sweep<T: Scalar>(cap: &Cap<T>) -> T {
    let grid = cap.grid();
    let poly = cap.polygon();
    let omega = grid.omega();
    let half = T::lit(0.5);
    let mut total = T::zero();

    let lower: Vec<T> = (0..grid.half_len()).map(|j| grid.lower_angle(j)).collect();
    for w in lower.windows(2) {
        let mid = (w[0] + w[1]) * half;
        let a = poly.vertex_pair(mid).1;
        let c = poly.vertex_pair(mid + T::FRAC_PI_2()).1;
        let d = c - a;
        total += square_along_v(d.x, d.y, w[0], w[1]);
    }

    // τ(t, c) = (p(c) − V · u_c) / sin(c − t) for the contact vertex V.
    let c = omega + T::FRAC_PI_2();
    let pc = poly.support(c);
    let mut cuts = vec![omega];
    cuts.extend((0..grid.half_len()).map(|j| T::FRAC_PI_2() + grid.lower_angle(j)));
    cuts.dedup_by(|a, b| (*a - *b).abs() <= T::angle_tol());
    for w in cuts.windows(2) {
        let mid = (w[0] + w[1]) * half;
        let gap = pc - poly.vertex_pair(mid).1.dot(Vec2::unit(c));
        if gap.abs() <= T::geom_tol() {
            continue;
        }
        let cot = |t: T| T::one() / (c - t).tan();
        total += gap * gap * (cot(w[1]) - cot(w[0]));
    }
    total * half
}
