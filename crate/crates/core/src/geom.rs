//! Planar geometric kernel.
//!
//! Points, segments, circular arcs and closed arc-polygons, together with
//! the distance and intersection predicates used by every other module.
//! All comparisons go through a single absolute tolerance (see
//! [`Tolerance`]); discs are open, so a clearance exactly equal to the
//! radius counts as free.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_EPS: f64 = 1e-9;

/// Absolute tolerance used by every geometric comparison.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eps: DEFAULT_EPS }
    }
}

impl Tolerance {
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "tolerance must be positive, got {eps}"
            )));
        }
        Ok(Tolerance { eps })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point {
    fn from(v: [f64; 2]) -> Self {
        Point::new(v[0], v[1])
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Point at angle `theta` on the circle of radius `r` around `center`.
    pub fn polar(center: Point, r: f64, theta: f64) -> Self {
        Point::new(center.x + r * theta.cos(), center.y + r * theta.sin())
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Direction angle of the vector in `(-π, π]`.
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn unit(self) -> Point {
        let n = self.norm();
        Point::new(self.x / n, self.y / n)
    }

    /// Counter-clockwise perpendicular.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        self + (o - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn scale(self, k: f64) -> Point {
        self * k
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Maps an angle into `[0, 2π)`.
pub fn normalize_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Ccw,
    Cw,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Ccw => 1.0,
            Orientation::Cw => -1.0,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub const fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    pub fn point_at(&self, u: f64) -> Point {
        let len = self.length();
        if len == 0.0 {
            return self.a;
        }
        self.a.lerp(self.b, (u / len).clamp(0.0, 1.0))
    }

    pub fn midpoint(&self) -> Point {
        self.a.lerp(self.b, 0.5)
    }

    /// Arc-length parameter of the point of the segment closest to `p`.
    pub fn closest_param(&self, p: Point) -> f64 {
        let d = self.b - self.a;
        let len2 = d.norm_sq();
        if len2 == 0.0 {
            return 0.0;
        }
        let t = ((p - self.a).dot(d) / len2).clamp(0.0, 1.0);
        t * len2.sqrt()
    }

    pub fn reversed(&self) -> Segment {
        Segment::new(self.b, self.a)
    }
}

/// Circular arc stored by center, radius, start angle and unsigned sweep.
///
/// The sweep lies in `(0, 2π]`; traversal direction is `orientation`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arc {
    pub center: Point,
    pub radius: f64,
    pub start_angle: f64,
    pub sweep: f64,
    pub orientation: Orientation,
}

impl Arc {
    pub fn new(
        center: Point,
        radius: f64,
        start_angle: f64,
        sweep: f64,
        orientation: Orientation,
    ) -> Self {
        debug_assert!(radius > 0.0);
        debug_assert!((0.0..=TAU + 1e-12).contains(&sweep));
        Arc {
            center,
            radius,
            start_angle: normalize_angle(start_angle),
            sweep: sweep.min(TAU),
            orientation,
        }
    }

    /// Arc between two angles; equal angles give the full circle.
    pub fn from_angles(
        center: Point,
        radius: f64,
        start: f64,
        end: f64,
        orientation: Orientation,
    ) -> Self {
        let mut sweep = normalize_angle(orientation.sign() * (end - start));
        if sweep == 0.0 {
            sweep = TAU;
        }
        Arc::new(center, radius, start, sweep, orientation)
    }

    pub fn full_circle(center: Point, radius: f64, orientation: Orientation) -> Self {
        Arc::new(center, radius, 0.0, TAU, orientation)
    }

    pub fn end_angle(&self) -> f64 {
        normalize_angle(self.start_angle + self.orientation.sign() * self.sweep)
    }

    pub fn length(&self) -> f64 {
        self.radius * self.sweep
    }

    pub fn angle_at(&self, u: f64) -> f64 {
        self.start_angle + self.orientation.sign() * (u / self.radius)
    }

    pub fn point_at(&self, u: f64) -> Point {
        Point::polar(
            self.center,
            self.radius,
            self.angle_at(u.clamp(0.0, self.length())),
        )
    }

    pub fn start_point(&self) -> Point {
        Point::polar(self.center, self.radius, self.start_angle)
    }

    pub fn end_point(&self) -> Point {
        Point::polar(
            self.center,
            self.radius,
            self.start_angle + self.orientation.sign() * self.sweep,
        )
    }

    /// Unsigned angular offset of `theta` from the start, measured along
    /// the traversal direction, in `[0, 2π)`.
    pub fn offset_of_angle(&self, theta: f64) -> f64 {
        normalize_angle(self.orientation.sign() * (theta - self.start_angle))
    }

    /// Whether direction `theta` falls within the angular span, with an
    /// angular slack of `slack` radians at both ends.
    pub fn contains_angle(&self, theta: f64, slack: f64) -> bool {
        let w = self.offset_of_angle(theta);
        w <= self.sweep + slack || w >= TAU - slack
    }

    pub fn reversed(&self) -> Arc {
        Arc::new(
            self.center,
            self.radius,
            self.end_angle(),
            self.sweep,
            self.orientation.reversed(),
        )
    }

    /// Unit tangent in the traversal direction at arc-length `u`.
    pub fn tangent_at(&self, u: f64) -> Point {
        let th = self.angle_at(u);
        Point::new(-th.sin(), th.cos()) * self.orientation.sign()
    }
}

/// One piece of a poly-arc chain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Element {
    Segment(Segment),
    Arc(Arc),
}

impl Element {
    pub fn start(&self) -> Point {
        match self {
            Element::Segment(s) => s.a,
            Element::Arc(a) => a.start_point(),
        }
    }

    pub fn end(&self) -> Point {
        match self {
            Element::Segment(s) => s.b,
            Element::Arc(a) => a.end_point(),
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            Element::Segment(s) => s.length(),
            Element::Arc(a) => a.length(),
        }
    }

    pub fn point_at(&self, u: f64) -> Point {
        match self {
            Element::Segment(s) => s.point_at(u),
            Element::Arc(a) => a.point_at(u),
        }
    }

    pub fn midpoint(&self) -> Point {
        self.point_at(0.5 * self.length())
    }

    pub fn reversed(&self) -> Element {
        match self {
            Element::Segment(s) => Element::Segment(s.reversed()),
            Element::Arc(a) => Element::Arc(a.reversed()),
        }
    }

    /// Unit tangent in the traversal direction at arc-length `u`.
    pub fn tangent_at(&self, u: f64) -> Point {
        match self {
            Element::Segment(s) => (s.b - s.a).unit(),
            Element::Arc(a) => a.tangent_at(u),
        }
    }

    /// The sub-element between arc-length parameters `u0 < u1`.
    pub fn sub(&self, u0: f64, u1: f64) -> Element {
        match self {
            Element::Segment(s) => Element::Segment(Segment::new(s.point_at(u0), s.point_at(u1))),
            Element::Arc(a) => Element::Arc(Arc::new(
                a.center,
                a.radius,
                a.angle_at(u0),
                (u1 - u0) / a.radius,
                a.orientation,
            )),
        }
    }

    pub fn dist_to_point(&self, p: Point) -> f64 {
        match self {
            Element::Segment(s) => dist_point_segment(p, s),
            Element::Arc(a) => dist_point_arc(p, a),
        }
    }

    /// Arc-length intervals of this element lying strictly inside the open
    /// disc of `radius` around `center`, sorted and disjoint.
    pub fn intervals_within(&self, center: Point, radius: f64) -> Vec<(f64, f64)> {
        match self {
            Element::Segment(s) => segment_intervals_within(s, center, radius),
            Element::Arc(a) => arc_intervals_within(a, center, radius),
        }
    }
}

pub fn dist_point_segment(p: Point, s: &Segment) -> f64 {
    p.dist(s.point_at(s.closest_param(p)))
}

pub fn dist_point_arc(p: Point, a: &Arc) -> f64 {
    let v = p - a.center;
    if v.norm() == 0.0 {
        return a.radius;
    }
    if a.contains_angle(v.angle(), 0.0) {
        (v.norm() - a.radius).abs()
    } else {
        p.dist(a.start_point()).min(p.dist(a.end_point()))
    }
}

/// Open-disc interference test between the disc `B_r(c)` and a segment.
pub fn disc_segment_intersects(c: Point, r: f64, s: &Segment, tol: Tolerance) -> bool {
    dist_point_segment(c, s) < r - tol.eps
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

fn on_segment_box(a: Point, b: Point, p: Point) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

pub fn segments_intersect(s: &Segment, t: &Segment) -> bool {
    let d1 = orient(t.a, t.b, s.a);
    let d2 = orient(t.a, t.b, s.b);
    let d3 = orient(s.a, s.b, t.a);
    let d4 = orient(s.a, s.b, t.b);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment_box(t.a, t.b, s.a))
        || (d2 == 0.0 && on_segment_box(t.a, t.b, s.b))
        || (d3 == 0.0 && on_segment_box(s.a, s.b, t.a))
        || (d4 == 0.0 && on_segment_box(s.a, s.b, t.b))
}

pub fn dist_segment_segment(s: &Segment, t: &Segment) -> f64 {
    if segments_intersect(s, t) {
        return 0.0;
    }
    dist_point_segment(s.a, t)
        .min(dist_point_segment(s.b, t))
        .min(dist_point_segment(t.a, s))
        .min(dist_point_segment(t.b, s))
}

/// Exact distance between an arc and a segment.
pub fn dist_arc_segment(a: &Arc, s: &Segment) -> f64 {
    let mut best = dist_point_segment(a.start_point(), s)
        .min(dist_point_segment(a.end_point(), s))
        .min(dist_point_arc(s.a, a))
        .min(dist_point_arc(s.b, a));
    if best == 0.0 {
        return 0.0;
    }
    let len = s.length();
    if len == 0.0 {
        return best;
    }
    let slack = 1e-15;
    // crossings of the circle inside both spans
    for (u, q) in line_circle_params(s, a.center, a.radius) {
        if u >= 0.0 && u <= len && a.contains_angle((q - a.center).angle(), slack) {
            return 0.0;
        }
    }
    // interior critical points lie on the radial line perpendicular to the segment
    let u = s.closest_param(a.center);
    if u > 0.0 && u < len {
        let foot = s.point_at(u);
        let dir = if foot.dist(a.center) > 0.0 {
            (foot - a.center).unit()
        } else {
            (s.b - s.a).unit().perp()
        };
        for q in [a.center + dir * a.radius, a.center - dir * a.radius] {
            if a.contains_angle((q - a.center).angle(), slack) {
                best = best.min(dist_point_segment(q, s));
            }
        }
    }
    best
}

/// Parameters (arc length from `s.a`) and points where the infinite line
/// through `s` meets the circle.
fn line_circle_params(s: &Segment, c: Point, r: f64) -> Vec<(f64, Point)> {
    let len = s.length();
    if len == 0.0 {
        return Vec::new();
    }
    let d = (s.b - s.a) * (1.0 / len);
    let f = s.a - c;
    let b = f.dot(d);
    let cc = f.norm_sq() - r * r;
    let disc = b * b - cc;
    if disc < 0.0 {
        return Vec::new();
    }
    let sq = disc.sqrt();
    let mut out = vec![(-b - sq, s.a + d * (-b - sq))];
    if sq > 0.0 {
        out.push((-b + sq, s.a + d * (-b + sq)));
    }
    out
}

fn merge_intervals(mut v: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    v.retain(|(a, b)| b > a);
    v.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(v.len());
    for (a, b) in v {
        match out.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}

fn segment_intervals_within(s: &Segment, c: Point, r: f64) -> Vec<(f64, f64)> {
    let len = s.length();
    if len == 0.0 {
        return if s.a.dist(c) < r {
            vec![(0.0, 0.0)]
        } else {
            Vec::new()
        };
    }
    let roots = line_circle_params(s, c, r);
    if roots.len() < 2 {
        return Vec::new();
    }
    let lo = roots[0].0.max(0.0);
    let hi = roots[1].0.min(len);
    if hi > lo {
        vec![(lo, hi)]
    } else {
        Vec::new()
    }
}

fn arc_intervals_within(a: &Arc, c: Point, r: f64) -> Vec<(f64, f64)> {
    let len = a.length();
    let dc = a.center - c;
    let d = dc.norm();
    if d == 0.0 {
        return if a.radius < r {
            vec![(0.0, len)]
        } else {
            Vec::new()
        };
    }
    let kappa = (r * r - d * d - a.radius * a.radius) / (2.0 * a.radius * d);
    if kappa <= -1.0 {
        return Vec::new();
    }
    if kappa >= 1.0 {
        return vec![(0.0, len)];
    }
    // inside iff cos(θ - ψ) < κ, i.e. θ within π - acos(κ) of ψ + π
    let half = PI - kappa.acos();
    let mid = dc.angle() + PI;
    let lo = if a.orientation == Orientation::Ccw {
        normalize_angle(mid - half - a.start_angle)
    } else {
        normalize_angle(a.start_angle - mid - half)
    };
    let mut out = Vec::new();
    for base in [lo, lo - TAU] {
        let w0 = base.max(0.0);
        let w1 = (base + 2.0 * half).min(a.sweep);
        if w1 > w0 {
            out.push((w0 * a.radius, w1 * a.radius));
        }
    }
    merge_intervals(out)
}

/// Intersection points of two elements as `(u_on_first, u_on_second, point)`.
///
/// Tangential contacts and collinear overlaps are not reported.
pub fn element_intersections(e: &Element, f: &Element) -> Vec<(f64, f64, Point)> {
    match (e, f) {
        (Element::Segment(s), Element::Segment(t)) => {
            seg_seg_intersection(s, t).into_iter().collect()
        }
        (Element::Segment(s), Element::Arc(a)) => seg_arc_intersections(s, a),
        (Element::Arc(a), Element::Segment(s)) => seg_arc_intersections(s, a)
            .into_iter()
            .map(|(u, v, p)| (v, u, p))
            .collect(),
        (Element::Arc(a), Element::Arc(b)) => arc_arc_intersections(a, b),
    }
}

fn seg_seg_intersection(s: &Segment, t: &Segment) -> Option<(f64, f64, Point)> {
    let d1 = s.b - s.a;
    let d2 = t.b - t.a;
    let denom = d1.cross(d2);
    let l1 = d1.norm();
    let l2 = d2.norm();
    if denom.abs() <= 1e-14 * l1 * l2 {
        return None;
    }
    let w = t.a - s.a;
    let ta = w.cross(d2) / denom;
    let tb = w.cross(d1) / denom;
    let slack = 1e-12;
    if ta < -slack || ta > 1.0 + slack || tb < -slack || tb > 1.0 + slack {
        return None;
    }
    let ta = ta.clamp(0.0, 1.0);
    let tb = tb.clamp(0.0, 1.0);
    Some((ta * l1, tb * l2, s.a + d1 * ta))
}

fn seg_arc_intersections(s: &Segment, a: &Arc) -> Vec<(f64, f64, Point)> {
    let len = s.length();
    let roots = line_circle_params(s, a.center, a.radius);
    if roots.len() < 2 {
        return Vec::new();
    }
    let slack = 1e-12 * len.max(1.0);
    roots
        .into_iter()
        .filter(|(u, _)| *u >= -slack && *u <= len + slack)
        .filter_map(|(u, q)| {
            let th = (q - a.center).angle();
            if !a.contains_angle(th, 1e-12) {
                return None;
            }
            let w = a.offset_of_angle(th);
            let w = if w > a.sweep { 0.0 } else { w };
            Some((u.clamp(0.0, len), w * a.radius, q))
        })
        .collect()
}

fn arc_arc_intersections(a: &Arc, b: &Arc) -> Vec<(f64, f64, Point)> {
    let dv = b.center - a.center;
    let d = dv.norm();
    if d == 0.0 || d > a.radius + b.radius || d < (a.radius - b.radius).abs() {
        return Vec::new();
    }
    let x = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
    let h2 = a.radius * a.radius - x * x;
    if h2 <= 1e-18 * a.radius * a.radius {
        return Vec::new();
    }
    let h = h2.sqrt();
    let e = dv * (1.0 / d);
    let base = a.center + e * x;
    let mut out = Vec::new();
    for q in [base + e.perp() * h, base - e.perp() * h] {
        let ta = (q - a.center).angle();
        let tb = (q - b.center).angle();
        if a.contains_angle(ta, 1e-12) && b.contains_angle(tb, 1e-12) {
            let wa = a.offset_of_angle(ta);
            let wb = b.offset_of_angle(tb);
            let wa = if wa > a.sweep { 0.0 } else { wa };
            let wb = if wb > b.sweep { 0.0 } else { wb };
            out.push((wa * a.radius, wb * b.radius, q));
        }
    }
    out
}

/// Common tangent lines of two circles as `(point on first, point on second)`.
///
/// Outer tangents come first, then inner ones. A zero radius turns the
/// corresponding circle into a point; duplicate tangents are dropped.
pub fn bitangents(c1: Point, r1: f64, c2: Point, r2: f64) -> Vec<(Point, Point)> {
    let dv = c2 - c1;
    let d = dv.norm();
    if d == 0.0 {
        return Vec::new();
    }
    if r1 == 0.0 && r2 == 0.0 {
        return vec![(c1, c2)];
    }
    let e = dv * (1.0 / d);
    let mut out = Vec::with_capacity(4);
    let point_case = r1 == 0.0 || r2 == 0.0;
    // outer: n·d = r2 - r1 with both centers on the +n side
    // inner: n·d = -(r1 + r2) with the centers on opposite sides
    let kinds: &[(f64, f64)] = if point_case {
        &[(1.0, 1.0)]
    } else {
        &[(1.0, 1.0), (1.0, -1.0)]
    };
    for &(k1, k2) in kinds {
        let q = if k2 > 0.0 { r2 - r1 } else { -(r1 + r2) };
        let c = q / d;
        if c.abs() > 1.0 {
            continue;
        }
        let s = (1.0 - c * c).max(0.0).sqrt();
        if s == 0.0 && !point_case {
            continue;
        }
        for sign in [1.0, -1.0] {
            let n = e * c + e.perp() * (sign * s);
            let p1 = c1 - n * (k1 * r1);
            let p2 = c2 - n * (k2 * r2);
            if p1.dist(p2) > 0.0 {
                out.push((p1, p2));
            }
            if s == 0.0 {
                break;
            }
        }
    }
    out
}

/// The common tangent segments of two circles (point-circle tangents when
/// a radius is zero).
pub fn tangent_points(c1: Point, r1: f64, c2: Point, r2: f64) -> Result<Vec<Segment>> {
    let d = c1.dist(c2);
    if d == 0.0 && r1 == r2 {
        return Err(Error::InvalidInput(
            "identical circles have no isolated tangents".into(),
        ));
    }
    if d < (r1 - r2).abs() {
        return Err(Error::NoTangent);
    }
    Ok(bitangents(c1, r1, c2, r2)
        .into_iter()
        .map(|(a, b)| Segment::new(a, b))
        .collect())
}

/// Signed area enclosed by a closed chain (positive when counter-clockwise).
pub fn loop_signed_area(chain: &[Element]) -> f64 {
    chain
        .iter()
        .map(|e| {
            let (a, b) = (e.start(), e.end());
            let chord = 0.5 * a.cross(b);
            match e {
                Element::Segment(_) => chord,
                Element::Arc(arc) => {
                    let r2 = arc.radius * arc.radius;
                    chord + arc.orientation.sign() * 0.5 * r2 * (arc.sweep - arc.sweep.sin())
                }
            }
        })
        .sum()
}

/// Winding number of a closed chain around `p`.
pub fn loop_winding(chain: &[Element], p: Point) -> i32 {
    let mut total = 0.0;
    for e in chain {
        let a = e.start() - p;
        let b = e.end() - p;
        total += a.cross(b).atan2(a.dot(b));
        if let Element::Arc(arc) = e {
            if p.dist(arc.center) < arc.radius {
                let chord = e.end() - e.start();
                let side = chord.cross(p - e.start());
                let full = arc.sweep >= TAU - 1e-12;
                let in_region = full
                    || match arc.orientation {
                        Orientation::Ccw => side < 0.0,
                        Orientation::Cw => side > 0.0,
                    };
                if in_region {
                    total += arc.orientation.sign() * TAU;
                }
            }
        }
    }
    (total / TAU).round() as i32
}

/// Closed region bounded by segments and circular arcs.
///
/// The outer boundary runs counter-clockwise and holes run clockwise, so
/// the interior is always on the left of the traversal direction.
#[derive(Clone, Debug, PartialEq)]
pub struct ArcPolygon {
    pub boundary: Vec<Element>,
    pub holes: Vec<Vec<Element>>,
}

impl ArcPolygon {
    pub fn area(&self) -> f64 {
        loop_signed_area(&self.boundary)
            + self.holes.iter().map(|h| loop_signed_area(h)).sum::<f64>()
    }

    pub fn contains(&self, p: Point) -> bool {
        loop_winding(&self.boundary, p) != 0 && self.holes.iter().all(|h| loop_winding(h, p) == 0)
    }

    pub fn edges(&self) -> impl Iterator<Item = &Element> {
        self.boundary.iter().chain(self.holes.iter().flatten())
    }

    /// Distance from `p` to the nearest boundary element.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        self.edges()
            .map(|e| e.dist_to_point(p))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Signed area of a simple polygon given by its vertices.
pub fn polygon_signed_area(pts: &[Point]) -> f64 {
    let n = pts.len();
    (0..n).map(|i| pts[i].cross(pts[(i + 1) % n])).sum::<f64>() * 0.5
}

/// Even-odd point-in-polygon test.
pub fn point_in_polygon(pts: &[Point], p: Point) -> bool {
    let n = pts.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (pts[i], pts[j]);
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

pub fn polygon_edges(pts: &[Point]) -> impl Iterator<Item = Segment> + '_ {
    let n = pts.len();
    (0..n).map(move |i| Segment::new(pts[i], pts[(i + 1) % n]))
}

/// No zero-length edges and no crossings between non-adjacent edges.
pub fn polygon_is_simple(poly: &[Point]) -> bool {
    let edges: Vec<Segment> = polygon_edges(poly).collect();
    let n = edges.len();
    if edges.iter().any(|e| e.length() == 0.0) {
        return false;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if !adjacent && segments_intersect(&edges[i], &edges[j]) {
                return false;
            }
        }
    }
    true
}
