use super::{reduce, Angle, AngularMeasure, Polyline, Vec2};
use crate::{Error, Result, Scalar};

/// Counterclockwise vertex chain of a convex body; the closing edge is implicit.
///
/// `normals[i]` is the outward normal angle of the edge from `vertices[i]` to
/// `vertices[i + 1]`. Normals are strictly increasing in `[0, 2π)`, so the
/// chain starts at the vertex `v⁻` of the edge with the smallest normal.
/// A single vertex (a point) has no edges; a segment has two opposite ones.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon<T> {
    vertices: Vec<Vec2<T>>,
    normals: Vec<T>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Contact {
    Edge(usize),
    Vertex(usize),
}

impl<T: Scalar> ConvexPolygon<T> {
    /// Builds a polygon from a counterclockwise vertex list.
    ///
    /// Repeated vertices and vertices in the middle of a straight run are
    /// dropped. Anything else that is not a convex counterclockwise loop is
    /// rejected.
    pub fn from_vertices(points: Vec<Vec2<T>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Invalid("polygon needs at least one vertex".into()));
        }
        let scale = points.iter().fold(T::one(), |m, p| m.max(p.x.abs()).max(p.y.abs()));
        let tol = T::geom_tol() * scale;

        let mut pts: Vec<Vec2<T>> = Vec::with_capacity(points.len());
        for p in points {
            if pts.last().is_none_or(|q: &Vec2<T>| q.dist(p) > tol) {
                pts.push(p);
            }
        }
        while pts.len() > 1 && pts[0].dist(pts[pts.len() - 1]) <= tol {
            pts.pop();
        }

        // drop vertices on straight runs
        loop {
            let n = pts.len();
            if n < 3 {
                break;
            }
            let mut removed = false;
            for i in 0..n {
                let a = pts[(i + n - 1) % n];
                let b = pts[i];
                let c = pts[(i + 1) % n];
                let (e1, e2) = (b - a, c - b);
                if e1.cross(e2).abs() <= tol * (e1.norm() + e2.norm()) && e1.dot(e2) > T::zero() {
                    pts.remove(i);
                    removed = true;
                    break;
                }
            }
            if !removed {
                break;
            }
        }

        let n = pts.len();
        if n == 1 {
            return Ok(ConvexPolygon { vertices: pts, normals: Vec::new() });
        }
        if n == 2 {
            return Ok(Self::segment(pts[0], pts[1]));
        }
        let mut turning = T::zero();
        for i in 0..n {
            let e1 = pts[(i + 1) % n] - pts[i];
            let e2 = pts[(i + 2) % n] - pts[(i + 1) % n];
            let cr = e1.cross(e2);
            if cr <= tol * (e1.norm() + e2.norm()) {
                if cr.abs() <= tol * (e1.norm() + e2.norm()) && pts_collinear(&pts, tol) {
                    return Ok(Self::collinear_hull(&pts));
                }
                return Err(Error::NotConvex((i + 1) % n));
            }
            turning += cr.atan2(e1.dot(e2));
        }
        if (turning - T::TAU()).abs() > T::lit(1e-3) {
            return Err(Error::NotConvex(0));
        }

        let normals: Vec<T> = (0..n).map(|i| edge_normal(pts[i], pts[(i + 1) % n])).collect();
        Ok(Self::rotated_to_min(pts, normals))
    }

    /// Chains the edge vectors `w_i v_{t_i}` from `start`; `edges` must be
    /// sorted by angle in `[0, 2π)` with positive weights.
    pub(crate) fn from_edge_chain(start: Vec2<T>, edges: &[(T, T)]) -> Self {
        let mut vertices = Vec::with_capacity(edges.len().max(1));
        let mut normals = Vec::with_capacity(edges.len());
        let mut cur = start;
        vertices.push(cur);
        for &(t, w) in edges {
            cur += Angle::new(t).v() * w;
            vertices.push(cur);
            normals.push(reduce(t));
        }
        vertices.pop();
        if vertices.is_empty() {
            vertices.push(start);
        }
        ConvexPolygon { vertices, normals }
    }

    /// Assembles a polygon from vertices and the normals of the edges leaving them.
    pub(crate) fn from_parts(vertices: Vec<Vec2<T>>, normals: Vec<T>) -> Self {
        Self::rotated_to_min(vertices, normals)
    }

    fn segment(a: Vec2<T>, b: Vec2<T>) -> Self {
        let n0 = edge_normal(a, b);
        let n1 = edge_normal(b, a);
        if n0 <= n1 {
            ConvexPolygon { vertices: vec![a, b], normals: vec![n0, n1] }
        } else {
            ConvexPolygon { vertices: vec![b, a], normals: vec![n1, n0] }
        }
    }

    fn collinear_hull(pts: &[Vec2<T>]) -> Self {
        let d = pts[1] - pts[0];
        let lo = pts.iter().copied().fold(pts[0], |m, p| if p.dot(d) < m.dot(d) { p } else { m });
        let hi = pts.iter().copied().fold(pts[0], |m, p| if p.dot(d) > m.dot(d) { p } else { m });
        Self::segment(lo, hi)
    }

    fn rotated_to_min(mut vertices: Vec<Vec2<T>>, mut normals: Vec<T>) -> Self {
        let k = (0..normals.len())
            .min_by(|&a, &b| normals[a].partial_cmp(&normals[b]).expect("finite normal"))
            .unwrap_or(0);
        vertices.rotate_left(k);
        normals.rotate_left(k);
        ConvexPolygon { vertices, normals }
    }

    pub fn vertices(&self) -> &[Vec2<T>] {
        &self.vertices
    }

    /// Outward edge normals, increasing in `[0, 2π)`.
    pub fn normals(&self) -> &[T] {
        &self.normals
    }

    pub fn edge_count(&self) -> usize {
        self.normals.len()
    }

    /// `(normal, start, end)` for every edge.
    pub fn edges(&self) -> impl Iterator<Item = (T, Vec2<T>, Vec2<T>)> + '_ {
        let n = self.vertices.len();
        self.normals
            .iter()
            .enumerate()
            .map(move |(i, &t)| (t, self.vertices[i], self.vertices[(i + 1) % n]))
    }

    fn contact(&self, t: T) -> Contact {
        let n = self.normals.len();
        if n == 0 {
            return Contact::Vertex(0);
        }
        let t = reduce(t);
        let tol = T::angle_tol();
        let i = self.normals.partition_point(|&m| m < t - tol);
        if i < n && self.normals[i] <= t + tol {
            return Contact::Edge(i);
        }
        if i == n && self.normals[0] + T::TAU() <= t + tol {
            return Contact::Edge(0);
        }
        if i == 0 && self.normals[n - 1] >= t + T::TAU() - tol {
            return Contact::Edge(n - 1);
        }
        Contact::Vertex(i % n)
    }

    /// `(v⁻(t), v⁺(t))`: the endpoints of the edge with outward normal `t`,
    /// ordered along `v_t`, or the supporting vertex twice.
    pub fn vertex_pair(&self, t: impl Into<Angle<T>>) -> (Vec2<T>, Vec2<T>) {
        let n = self.vertices.len();
        match self.contact(t.into().value()) {
            Contact::Edge(i) => (self.vertices[i], self.vertices[(i + 1) % n]),
            Contact::Vertex(i) => (self.vertices[i], self.vertices[i]),
        }
    }

    /// Support function `p(t) = max v·u_t`.
    pub fn support(&self, t: impl Into<Angle<T>>) -> T {
        let t = t.into();
        self.vertex_pair(t).0.dot(t.u())
    }

    /// Shoelace area.
    pub fn area(&self) -> T {
        let n = self.vertices.len();
        let mut s = T::zero();
        for i in 0..n {
            s += self.vertices[i].cross(self.vertices[(i + 1) % n]);
        }
        s / T::lit(2.0)
    }

    pub fn perimeter(&self) -> T {
        self.edges().map(|(_, a, b)| a.dist(b)).sum()
    }

    /// Surface area measure: one atom per edge at its outward normal, weight equal to the edge length.
    pub fn surface_measure(&self) -> AngularMeasure<T> {
        AngularMeasure::from_atoms(self.edges().map(|(t, a, b)| (t, a.dist(b))).collect())
    }

    pub fn translate(&self, d: Vec2<T>) -> Self {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|&p| p + d).collect(),
            normals: self.normals.clone(),
        }
    }

    /// `self ∩ H(t, h)`, or `None` when less than a point survives.
    pub fn clip(&self, t: T, h: T) -> Option<Self> {
        let pts = clip_half_plane(&self.vertices, t, h);
        if pts.is_empty() {
            return None;
        }
        ConvexPolygon::from_vertices(pts).ok()
    }

    /// Axis-aligned box as a polygon.
    pub fn rect(lo: Vec2<T>, hi: Vec2<T>) -> Self {
        ConvexPolygon::from_parts(
            vec![lo, Vec2::new(hi.x, lo.y), hi, Vec2::new(lo.x, hi.y)],
            vec![T::lit(1.5) * T::PI(), T::zero(), T::FRAC_PI_2(), T::PI()],
        )
    }

    /// Closed membership with slack `tol`.
    pub fn contains(&self, p: Vec2<T>, tol: T) -> bool {
        match self.vertices.len() {
            1 => self.vertices[0].dist(p) <= tol,
            _ => self.edges().all(|(t, a, _)| (p - a).dot(Angle::new(t).u()) <= tol),
        }
    }

    /// `(min, max)` corners of the bounding box.
    pub fn bounds(&self) -> (Vec2<T>, Vec2<T>) {
        let first = self.vertices[0];
        self.vertices.iter().fold((first, first), |(lo, hi), p| {
            (Vec2::new(lo.x.min(p.x), lo.y.min(p.y)), Vec2::new(hi.x.max(p.x), hi.y.max(p.y)))
        })
    }

    /// Counterclockwise boundary chain from `v⁺(t0)` (or `v⁻(t0)` when
    /// `include_start_edge`) to `v⁺(t1)`, with `t1` taken in `(t0, t0 + 2π]`.
    pub fn boundary_arc(&self, t0: T, t1: T, include_start_edge: bool) -> Polyline<T> {
        let tol = T::angle_tol();
        let span = t1 - t0;
        let (lo, hi) = self.vertex_pair(t0);
        let mut pts = vec![if include_start_edge { lo } else { hi }];
        if include_start_edge && lo != hi {
            pts.push(hi);
        }
        let mut order: Vec<(T, Vec2<T>)> = self
            .edges()
            .filter_map(|(t, _, end)| {
                let mut s = reduce(t - t0);
                if s <= tol || s >= T::TAU() - tol {
                    s = T::TAU();
                }
                (s <= span + tol).then_some((s, end))
            })
            .collect();
        order.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
        pts.extend(order.into_iter().map(|(_, p)| p));
        Polyline::new(pts)
    }
}

/// Keeps the part of the closed chain `pts` inside `H(t, h) = {p · u_t ≤ h}`.
pub fn clip_half_plane<T: Scalar>(pts: &[Vec2<T>], t: T, h: T) -> Vec<Vec2<T>> {
    let u = Vec2::unit(t);
    let n = pts.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        let (da, db) = (a.dot(u) - h, b.dot(u) - h);
        if da <= T::zero() {
            out.push(a);
        }
        if (da < T::zero() && db > T::zero()) || (da > T::zero() && db < T::zero()) {
            out.push(a.lerp(b, da / (da - db)));
        }
    }
    out
}

fn pts_collinear<T: Scalar>(pts: &[Vec2<T>], tol: T) -> bool {
    let d = pts[1] - pts[0];
    let len = d.norm();
    pts.iter().all(|&p| d.cross(p - pts[0]).abs() <= tol * len)
}

/// Outward normal angle of the counterclockwise edge `a → b`.
fn edge_normal<T: Scalar>(a: Vec2<T>, b: Vec2<T>) -> T {
    reduce((b - a).angle() - T::FRAC_PI_2())
}
