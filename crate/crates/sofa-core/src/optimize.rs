//! Maximizing the discretized `𝒜₁` over boundary-measure weights: a concave
//! quadratic program solved by projected gradient ascent.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::convex_core::{CapGrid, Vec2};
use crate::functional::{a1, boundary_measure, BoundaryMeasure};
use crate::maximizer::random_cap;
use crate::sofa::Cap;
use crate::{Error, Result};

/// Upper bound on every weight. For `ω = π/2` the slot `π/2` is unconstrained
/// otherwise; the optimum puts weight 2 there.
pub const W_MAX: f64 = 10.0;

/// `𝒜₁` as an explicit function of the slot weights.
///
/// Every vertex of the cap is a fixed linear combination of the weights, so
/// the area and the curve area of the sampled rotation path are quadratic
/// in them. The formula is valid for any weights; it equals `𝒜₁` on caps.
#[derive(Clone, Debug)]
struct WeightModel {
    grid: CapGrid<f64>,
    dirs: Vec<Vec2<f64>>,
    /// `(u_t, v_t, vertex index at t, vertex index at t + π/2)` per path sample.
    path: Vec<(Vec2<f64>, Vec2<f64>, usize, usize)>,
}

impl WeightModel {
    fn new(grid: CapGrid<f64>, m: usize) -> Self {
        let mut normals: Vec<f64> = (0..grid.j_len()).map(|i| grid.angle(i)).collect();
        let dirs = normals.iter().map(|&t| Vec2::unit(t + std::f64::consts::FRAC_PI_2)).collect();
        if !grid.is_right() {
            normals.push(std::f64::consts::PI + grid.omega());
        }
        normals.push(1.5 * std::f64::consts::PI);
        let index = |s: f64| normals.partition_point(|&n| n < s);
        let omega = grid.omega();
        let path = (0..m)
            .map(|k| {
                let t = if k + 1 == m { omega } else { omega * k as f64 / (m - 1) as f64 };
                let q = t + std::f64::consts::FRAC_PI_2;
                (Vec2::unit(t), Vec2::unit(q), index(t), index(q))
            })
            .collect();
        WeightModel { grid, dirs, path }
    }

    fn vertices(&self, w: &[f64]) -> Vec<Vec2<f64>> {
        let g = &self.grid;
        let d = g.j_len();
        let mut v = Vec::with_capacity(d + 2);
        let mut p = Vec2::zero();
        v.push(p);
        for (wi, &dir) in w.iter().zip(&self.dirs) {
            p += dir * *wi;
            v.push(p);
        }
        // v[d] ends the upper boundary. Close with the bottom edges.
        let shift = if g.is_right() {
            Vec2::new(1.0 - (v[0].x + v[d].x) / 2.0, -v[d].y)
        } else {
            let (s, c) = g.omega().sin_cos();
            let b = p.y / c;
            v.push(p + Vec2::new(s, -c) * b);
            -v[d + 1]
        };
        v.iter().map(|&q| q + shift).collect()
    }

    fn a1(&self, w: &[f64]) -> f64 {
        let v = self.vertices(w);
        let n = v.len();
        let area: f64 = (0..n).map(|i| v[i].cross(v[(i + 1) % n])).sum::<f64>() / 2.0;
        let at = |k: usize| v[k % n];
        let mut prev: Option<Vec2<f64>> = None;
        let mut curve = 0.0;
        for &(u, vv, ia, ic) in &self.path {
            let x = u * (at(ia).dot(u) - 1.0) + vv * (at(ic).dot(vv) - 1.0);
            if let Some(p) = prev {
                curve += p.cross(x);
            }
            prev = Some(x);
        }
        area - curve / 2.0
    }
}

/// `maximize c + b·w + ½wᵀQw` subject to `A w = e`, `0 ≤ w ≤ w_max`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QpProblem {
    pub omega: f64,
    pub cells: usize,
    pub m: usize,
    pub q: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub c: f64,
    /// The two rows of `A`; `e = (1, 1)`.
    pub a: [Vec<f64>; 2],
    pub w_max: f64,
    /// Largest `|objective − 𝒜₁|` seen at the check points.
    pub residual: f64,
}

impl QpProblem {
    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn grid(&self) -> CapGrid<f64> {
        CapGrid::with_cells(self.omega, self.cells).expect("grid of an assembled problem")
    }

    pub fn objective(&self, w: &[f64]) -> f64 {
        let qw = self.q_times(w);
        self.c + dot(&self.b, w) + 0.5 * dot(w, &qw)
    }

    pub fn gradient(&self, w: &[f64]) -> Vec<f64> {
        let mut g = self.q_times(w);
        for (gi, bi) in g.iter_mut().zip(&self.b) {
            *gi += bi;
        }
        g
    }

    fn q_times(&self, w: &[f64]) -> Vec<f64> {
        self.q.iter().map(|row| dot(row, w)).collect()
    }

    /// Coordinates of each constraint row; the rows have disjoint supports
    /// apart from coordinates where both coefficients vanish.
    fn halves(&self) -> [Vec<usize>; 2] {
        let g = self.grid();
        let lower: Vec<usize> = (0..g.half_len()).map(|j| g.lower_index(j)).collect();
        let upper: Vec<usize> =
            (0..g.half_len()).map(|j| g.upper_index(j)).filter(|i| !lower.contains(i)).collect();
        [lower, upper]
    }

    /// Euclidean projection onto the feasible set.
    pub fn project(&self, y: &[f64]) -> Vec<f64> {
        let mut w = y.to_vec();
        for (row, idx) in self.a.iter().zip(self.halves()) {
            project_half(&mut w, y, row, &idx, self.w_max);
        }
        w
    }

    /// Frank–Wolfe gap `max_{w′ feasible} ∇f(w) · (w′ − w)`: zero exactly at
    /// the optimum and an upper bound on the remaining gain.
    pub fn certificate(&self, w: &[f64]) -> f64 {
        let g = self.gradient(w);
        let mut best = vec![0.0; w.len()];
        for (row, idx) in self.a.iter().zip(self.halves()) {
            knapsack_half(&mut best, &g, row, &idx, self.w_max);
        }
        g.iter().zip(best.iter().zip(w)).map(|(gi, (bi, wi))| gi * (bi - wi)).sum()
    }

    pub fn is_feasible(&self, w: &[f64], tol: f64) -> bool {
        w.iter().all(|&x| x >= -tol && x <= self.w_max + tol)
            && self.a.iter().all(|row| (dot(row, w) - 1.0).abs() <= tol)
    }

    /// Projection onto the null space of `A`.
    pub fn tangent(&self, v: &[f64]) -> Vec<f64> {
        self.face_tangent(v, &vec![true; v.len()])
    }

    /// Projection onto `{z : A z = 0, z_i = 0 where !free[i]}`.
    fn face_tangent(&self, v: &[f64], free: &[bool]) -> Vec<f64> {
        let mask = |x: &[f64]| -> Vec<f64> { x.iter().zip(free).map(|(&x, &f)| if f { x } else { 0.0 }).collect() };
        let (r0, r1, v) = (mask(&self.a[0]), mask(&self.a[1]), mask(v));
        let (g00, g01, g11) = (dot(&r0, &r0), dot(&r0, &r1), dot(&r1, &r1));
        let (s0, s1) = (dot(&r0, &v), dot(&r1, &v));
        let det = g00 * g11 - g01 * g01;
        let (l0, l1) = if det.abs() > 1e-300 {
            ((g11 * s0 - g01 * s1) / det, (g00 * s1 - g01 * s0) / det)
        } else if g00 > 0.0 {
            (s0 / g00, 0.0)
        } else if g11 > 0.0 {
            (0.0, s1 / g11)
        } else {
            (0.0, 0.0)
        };
        v.iter().zip(r0.iter().zip(&r1)).map(|(x, (a, b))| x - l0 * a - l1 * b).collect()
    }

    /// Truncated conjugate gradients on the face of the box that `w` lies on.
    ///
    /// Each step maximizes the objective along the search direction, cut
    /// short where a bound is reached, so the objective never decreases.
    fn polish(&self, w: &mut [f64], max_iters: usize, tol: f64) {
        let edge = 1e-12;
        let free: Vec<bool> = w.iter().map(|&x| x > edge && x < self.w_max - edge).collect();
        let mut r = self.face_tangent(&self.gradient(w), &free);
        let mut dir = r.clone();
        let mut rr = dot(&r, &r);
        for _ in 0..max_iters {
            if rr.sqrt() <= tol {
                break;
            }
            let qd = self.face_tangent(&self.q_times(&dir), &free);
            let curv = -dot(&dir, &qd);
            if curv <= 0.0 {
                break;
            }
            let mut step = rr / curv;
            let mut blocked = false;
            for (x, d) in w.iter().zip(&dir) {
                let room = if *d < 0.0 { -x / d } else if *d > 0.0 { (self.w_max - x) / d } else { f64::INFINITY };
                if room < step {
                    step = room.max(0.0);
                    blocked = true;
                }
            }
            for (x, d) in w.iter_mut().zip(&dir) {
                *x = (*x + step * d).clamp(0.0, self.w_max);
            }
            if blocked {
                break;
            }
            for (ri, qi) in r.iter_mut().zip(&qd) {
                *ri += step * qi;
            }
            let next = dot(&r, &r);
            let beta = next / rr;
            rr = next;
            for (d, ri) in dir.iter_mut().zip(&r) {
                *d = ri + beta * *d;
            }
            // Long steps along flat directions amplify rounding off the face.
            dir = self.face_tangent(&dir, &free);
        }
        let feasible = self.project(w);
        w.copy_from_slice(&feasible);
    }

    /// Spectral radius of `Q` on the null space of `A`, by power iteration.
    pub fn curvature_bound(&self, iters: usize) -> f64 {
        let d = self.dim();
        let mut v = self.tangent(&(0..d).map(|i| 1.0 + (i as f64 * 0.7).sin()).collect::<Vec<_>>());
        let mut est = 0.0;
        for _ in 0..iters {
            let n = dot(&v, &v).sqrt();
            if n == 0.0 {
                return 0.0;
            }
            v.iter_mut().for_each(|x| *x /= n);
            let next = self.tangent(&self.q_times(&v));
            est = dot(&next, &next).sqrt();
            v = next;
        }
        est
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Projects `y` restricted to `idx` onto `{row · w = 1, 0 ≤ w ≤ hi}`:
/// `w = clamp(y − λ row)` with `λ` found by bisection.
fn project_half(w: &mut [f64], y: &[f64], row: &[f64], idx: &[usize], hi: f64) {
    let level = |lam: f64| -> f64 { idx.iter().map(|&i| row[i] * (y[i] - lam * row[i]).clamp(0.0, hi)).sum() };
    let (mut lo, mut up) = (-1.0, 1.0);
    while level(lo) < 1.0 {
        lo *= 2.0;
    }
    while level(up) > 1.0 {
        up *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + up);
        if level(mid) > 1.0 {
            lo = mid;
        } else {
            up = mid;
        }
        if up - lo <= f64::EPSILON * lo.abs().max(up.abs()).max(1.0) {
            break;
        }
    }
    let lam = 0.5 * (lo + up);
    for &i in idx {
        w[i] = (y[i] - lam * row[i]).clamp(0.0, hi);
    }
}

/// Maximizes `g · w` over `{row · w = 1, 0 ≤ w ≤ hi}` on `idx`, greedily by `g/row`.
fn knapsack_half(w: &mut [f64], g: &[f64], row: &[f64], idx: &[usize], hi: f64) {
    let tiny = 1e-14;
    let mut order: Vec<usize> = Vec::new();
    for &i in idx {
        if row[i].abs() <= tiny {
            w[i] = if g[i] > 0.0 { hi } else { 0.0 };
        } else {
            order.push(i);
        }
    }
    order.sort_by(|&i, &j| (g[j] / row[j]).total_cmp(&(g[i] / row[i])));
    let mut need = 1.0;
    for i in order {
        let take = (need / row[i]).min(hi);
        w[i] = take.max(0.0);
        need -= row[i] * w[i];
    }
}

/// Constraint rows `∫ cos t β(dt)` and `∫ cos(ω + π/2 − t) β(dt)` as weight vectors.
fn constraint_rows(grid: &CapGrid<f64>) -> [Vec<f64>; 2] {
    let d = grid.j_len();
    let top = grid.omega() + std::f64::consts::FRAC_PI_2;
    let (mut r0, mut r1) = (vec![0.0; d], vec![0.0; d]);
    for j in 0..grid.half_len() {
        let lo = grid.lower_index(j);
        r0[lo] = grid.angle(lo).cos();
        let up = grid.upper_index(j);
        r1[up] = (top - grid.angle(up)).cos();
    }
    // Clean the exact zeros at ω = π/2.
    for x in r0.iter_mut().chain(r1.iter_mut()) {
        if x.abs() < 1e-15 {
            *x = 0.0;
        }
    }
    [r0, r1]
}

/// Builds the QP for the grid of `(ω, n)` with rotation paths of `m` samples.
///
/// The quadratic is recovered by polarization: with unit steps,
/// `b_i = (f(e_i) − f(−e_i))/2`, `Q_ii = f(e_i) + f(−e_i) − 2c` and
/// `Q_ij = f(e_i + e_j) − f(e_i) − f(e_j) + c`. The result is checked against
/// `𝒜₁` at the anchor and at five random caps.
pub fn assemble(omega: f64, n: usize, m: usize, anchor: &Cap<f64>) -> Result<QpProblem> {
    let grid = CapGrid::new(omega, n)?;
    if *anchor.grid() != grid {
        return Err(Error::GridMismatch);
    }
    let model = WeightModel::new(grid, m);
    let d = grid.j_len();
    let mut e = vec![0.0; d];
    let c = model.a1(&e);
    let mut plus = vec![0.0; d];
    let mut b = vec![0.0; d];
    let mut q = vec![vec![0.0; d]; d];
    for i in 0..d {
        e[i] = 1.0;
        plus[i] = model.a1(&e);
        e[i] = -1.0;
        let minus = model.a1(&e);
        e[i] = 0.0;
        b[i] = 0.5 * (plus[i] - minus);
        q[i][i] = plus[i] + minus - 2.0 * c;
    }
    for i in 0..d {
        e[i] = 1.0;
        for j in 0..i {
            e[j] = 1.0;
            let v = model.a1(&e) - plus[i] - plus[j] + c;
            e[j] = 0.0;
            q[i][j] = v;
            q[j][i] = v;
        }
        e[i] = 0.0;
    }
    let mut problem =
        QpProblem { omega: grid.omega(), cells: grid.cells(), m, q, b, c, a: constraint_rows(&grid), w_max: W_MAX, residual: 0.0 };

    let anchor_w = boundary_measure(anchor).weights;
    if !problem.is_feasible(&anchor_w, 1e-9) {
        return Err(Error::Invalid("anchor is not a feasible cap".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut caps = vec![anchor.clone()];
    for _ in 0..5 {
        caps.push(random_cap(grid, &mut rng)?);
    }
    for cap in &caps {
        let w = boundary_measure(cap).weights;
        let err = (problem.objective(&w) - a1(cap, m)?).abs();
        problem.residual = problem.residual.max(err);
    }
    let scale = 1.0 + c.abs();
    if problem.residual > 1e-6 * scale {
        return Err(Error::Invalid(format!("quadratic model residual {:e}", problem.residual)));
    }
    Ok(problem)
}

/// Midpoint weights of the uniform density, each half rescaled onto its constraint.
pub fn uniform_start(p: &QpProblem) -> Vec<f64> {
    let grid = p.grid();
    let mut w = vec![0.0; p.dim()];
    for i in 0..p.dim() {
        if grid.is_midpoint(i) {
            w[i] = grid.step();
        }
    }
    for (row, idx) in p.a.iter().zip(p.halves()) {
        let s: f64 = idx.iter().map(|&i| row[i] * w[i]).sum();
        for i in idx {
            w[i] /= s;
        }
    }
    w
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub iteration: usize,
    pub objective: f64,
    pub certificate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub weights: Vec<f64>,
    pub value: f64,
    pub certificate: f64,
    pub iterations: usize,
    /// False when the iteration budget ran out first.
    pub converged: bool,
    pub trace: Vec<TraceRow>,
}

impl Solution {
    pub fn trace_csv(&self) -> String {
        let mut out = String::from("iteration,objective,certificate\n");
        for r in &self.trace {
            out.push_str(&format!("{},{},{}\n", r.iteration, r.objective, r.certificate));
        }
        out
    }

    pub fn measure(&self, p: &QpProblem) -> BoundaryMeasure<f64> {
        BoundaryMeasure { grid: p.grid(), weights: self.weights.clone() }
    }
}

/// Accelerated projected gradient ascent from `start` with step `½/L`,
/// finished by conjugate gradients on the final face.
///
/// Momentum is restarted whenever a step would lower the objective, so the
/// accepted iterates ascend monotonically. The gradient phase stops once an
/// iteration gains less than `tol` and the certificate is at most `tol`, or
/// after `max_iters` iterations. The polish counts as one more iteration
/// when it improves the objective.
pub fn solve(p: &QpProblem, start: &[f64], max_iters: usize, tol: f64) -> Result<Solution> {
    if start.len() != p.dim() {
        return Err(Error::GridMismatch);
    }
    const CHECK_EVERY: usize = 25;
    const POLISH_ROUNDS: usize = 50;
    let mut w = p.project(start);
    let curvature = p.curvature_bound(200).max(1e-12);
    let step = 0.5 / curvature;
    let mut value = p.objective(&w);
    let mut cert = p.certificate(&w);
    let mut trace = vec![TraceRow { iteration: 0, objective: value, certificate: cert }];
    let mut converged = cert <= tol;
    let mut iterations = 0;
    let mut y = w.clone();
    let mut momentum = 1.0_f64;
    while !converged && iterations < max_iters {
        iterations += 1;
        let g = p.gradient(&y);
        let ascent: Vec<f64> = y.iter().zip(&g).map(|(yi, gi)| yi + step * gi).collect();
        let z = p.project(&ascent);
        let z_value = p.objective(&z);
        let gain = z_value - value;
        if gain < 0.0 {
            // Restart from the last accepted point.
            momentum = 1.0;
            y = w.clone();
            if y == z {
                break;
            }
            continue;
        }
        let next = 0.5 * (1.0 + (1.0 + 4.0 * momentum * momentum).sqrt());
        let beta = (momentum - 1.0) / next;
        y = z.iter().zip(&w).map(|(zi, wi)| zi + beta * (zi - wi)).collect();
        momentum = next;
        w = z;
        value = z_value;
        if gain < tol || iterations % CHECK_EVERY == 0 {
            cert = p.certificate(&w);
            trace.push(TraceRow { iteration: iterations, objective: value, certificate: cert });
            converged = gain < tol && cert <= tol;
        }
    }
    // Gradient steps resolve the flat directions of the objective slowly.
    // Alternate face-wise conjugate gradients with plain projected steps,
    // which let coordinates leave a bound.
    let start_value = value;
    for _ in 0..POLISH_ROUNDS {
        let before = value;
        let mut polished = w.clone();
        p.polish(&mut polished, p.dim(), 1e-13);
        let polished_value = p.objective(&polished);
        if polished_value > value {
            w = polished;
            value = polished_value;
        }
        let g = p.gradient(&w);
        let z = p.project(&w.iter().zip(&g).map(|(wi, gi)| wi + step * gi).collect::<Vec<_>>());
        let z_value = p.objective(&z);
        if z_value > value {
            w = z;
            value = z_value;
        }
        if value - before <= 1e-15 * value.abs().max(1.0) {
            break;
        }
    }
    if value > start_value {
        iterations += 1;
    }
    if trace.last().is_none_or(|r| r.iteration != iterations) {
        cert = p.certificate(&w);
        trace.push(TraceRow { iteration: iterations, objective: value, certificate: cert });
    }
    converged = converged || cert <= tol;
    Ok(Solution { weights: w, value, certificate: cert, iterations, converged, trace })
}
