//! Shortest paths for a single unit disc and path-level queries.
//!
//! Shortest paths among segment/arc obstacles consist of straight pieces
//! that are tangent to boundary circles and arcs along those circles, so we
//! search a tangent graph whose nodes are the query points and tangency
//! points and whose edges are collision-free tangents and circle arcs.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::TAU;

use crate::error::{Error, Invariant, Result};
use crate::freespace::{FreeSpace, ObstacleSpace, PARKED_CLEARANCE};
use crate::geom::{
    bitangents, normalize_angle, Arc, Element, Orientation, Point, Segment, Tolerance,
};

/// A continuous path made of segments and circular arcs.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyArcPath {
    start: Point,
    elements: Vec<Element>,
    length: f64,
}

impl PolyArcPath {
    pub fn new(start: Point, elements: Vec<Element>) -> Self {
        let length = elements.iter().map(Element::length).sum();
        PolyArcPath {
            start,
            elements,
            length,
        }
    }

    /// Zero-length path resting at `p`.
    pub fn stationary(p: Point) -> Self {
        PolyArcPath::new(p, Vec::new())
    }

    pub fn segment(a: Point, b: Point) -> Self {
        if a == b {
            return PolyArcPath::stationary(a);
        }
        PolyArcPath::new(a, vec![Element::Segment(Segment::new(a, b))])
    }

    pub fn start(&self) -> Point {
        self.start
    }

    pub fn end(&self) -> Point {
        self.elements.last().map_or(self.start, Element::end)
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    fn check_param(&self, u: f64) -> Result<()> {
        if !(0.0..=self.length).contains(&u) {
            return Err(Error::ParamOutOfRange {
                param: u,
                length: self.length,
            });
        }
        Ok(())
    }

    /// Element index and local parameter for arc length `u`.
    fn locate(&self, u: f64) -> (usize, f64) {
        let mut acc = 0.0;
        for (i, e) in self.elements.iter().enumerate() {
            let l = e.length();
            if u <= acc + l || i + 1 == self.elements.len() {
                return (i, (u - acc).clamp(0.0, l));
            }
            acc += l;
        }
        (0, 0.0)
    }

    pub fn point_at(&self, u: f64) -> Point {
        if self.elements.is_empty() {
            return self.start;
        }
        let (i, w) = self.locate(u.clamp(0.0, self.length));
        self.elements[i].point_at(w)
    }

    /// The part of the path before arc length `u`.
    pub fn prefix(&self, u: f64) -> Result<PolyArcPath> {
        self.check_param(u)?;
        if u >= self.length {
            return Ok(self.clone());
        }
        if u <= 0.0 || self.elements.is_empty() {
            return Ok(PolyArcPath::stationary(self.start));
        }
        let (i, w) = self.locate(u);
        let mut elements = self.elements[..i].to_vec();
        if w > 0.0 {
            elements.push(self.elements[i].sub(0.0, w));
        }
        Ok(PolyArcPath::new(self.start, elements))
    }

    /// The part of the path after arc length `u`.
    pub fn suffix(&self, u: f64) -> Result<PolyArcPath> {
        self.check_param(u)?;
        if u <= 0.0 {
            return Ok(self.clone());
        }
        if u >= self.length || self.elements.is_empty() {
            return Ok(PolyArcPath::stationary(self.end()));
        }
        let (i, w) = self.locate(u);
        let e = &self.elements[i];
        let mut elements = Vec::with_capacity(self.elements.len() - i);
        if w < e.length() {
            elements.push(e.sub(w, e.length()));
        }
        elements.extend_from_slice(&self.elements[i + 1..]);
        Ok(PolyArcPath::new(self.point_at(u), elements))
    }

    /// `self` followed by `other`; the end of `self` must meet the start of
    /// `other`.
    pub fn concat(&self, other: &PolyArcPath) -> PolyArcPath {
        debug_assert!(self.end().dist(other.start) < 1e-6);
        let mut elements = self.elements.clone();
        elements.extend_from_slice(&other.elements);
        PolyArcPath::new(self.start, elements)
    }

    pub fn reversed(&self) -> PolyArcPath {
        PolyArcPath::new(
            self.end(),
            self.elements.iter().rev().map(Element::reversed).collect(),
        )
    }

    pub fn min_dist(&self, v: Point) -> f64 {
        if self.elements.is_empty() {
            return self.start.dist(v);
        }
        self.elements
            .iter()
            .map(|e| e.dist_to_point(v))
            .fold(f64::INFINITY, f64::min)
    }

    /// `n + 1` evenly spaced points from start to end.
    pub fn sample(&self, n: usize) -> Vec<Point> {
        let n = n.max(1);
        (0..=n)
            .map(|k| self.point_at(self.length * k as f64 / n as f64))
            .collect()
    }

    /// Arc-length intervals where the path is strictly closer than
    /// `radius` to `center`.
    pub fn intervals_within(&self, center: Point, radius: f64) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        let mut acc = 0.0;
        for e in &self.elements {
            for (a, b) in e.intervals_within(center, radius) {
                out.push((acc + a, acc + b));
            }
            acc += e.length();
        }
        out
    }
}

/// Whether a robot moving along `path` overlaps a robot resting at `v`.
pub fn path_goal_interference(path: &PolyArcPath, v: Point, tol: Tolerance) -> bool {
    path.min_dist(v) < PARKED_CLEARANCE - tol.eps
}

/// The farthest point of a path that lies within distance 2 of a start.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interference {
    pub point: Point,
    /// Index into the start list passed to [`last_interference_point`].
    pub start: usize,
    pub param: f64,
}

/// Farthest point along `path` whose unit disc overlaps a unit disc
/// resting at one of `starts`. Entries set to `None` are ignored.
pub fn last_interference_point(
    path: &PolyArcPath,
    starts: &[Option<Point>],
    tol: Tolerance,
) -> Result<Option<Interference>> {
    let radius = PARKED_CLEARANCE - tol.eps;
    let mut best: Option<Interference> = None;
    let mut tie = false;
    for (i, s) in starts.iter().enumerate() {
        let Some(s) = *s else { continue };
        let Some(&(_, hi)) = path.intervals_within(s, radius).last() else {
            continue;
        };
        match best {
            Some(b) if (hi - b.param).abs() <= 1e-12 => tie = true,
            Some(b) if hi < b.param => {}
            _ => {
                tie = false;
                best = Some(Interference {
                    point: path.point_at(hi),
                    start: i,
                    param: hi,
                });
            }
        }
    }
    if tie {
        return Err(
            Invariant::Geometry("two starts share the last interference point".into()).into(),
        );
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug)]
struct Edge {
    to: usize,
    len: f64,
    geom: Element,
}

#[derive(Clone, Copy, Debug)]
struct NodeOnCircle {
    angle: f64,
    node: usize,
}

/// Tangent graph over a free space with a fixed set of query points.
///
/// Query point `i` is node `i`.
#[derive(Debug)]
pub struct VisibilityGraph {
    points: Vec<Point>,
    adj: Vec<Vec<Edge>>,
    queries: usize,
}

impl VisibilityGraph {
    pub fn build(f: &FreeSpace, queries: &[Point]) -> Self {
        let obs = f.obstacle_space();
        let tol = f.tolerance();
        let circles = f.boundary_circles();
        let mut g = VisibilityGraph {
            points: queries.to_vec(),
            adj: vec![Vec::new(); queries.len()],
            queries: queries.len(),
        };
        let mut on_circle: Vec<Vec<NodeOnCircle>> = vec![Vec::new(); circles.len()];

        for i in 0..queries.len() {
            for j in (i + 1)..queries.len() {
                g.try_segment(obs, tol, i, j);
            }
        }
        for (ci, &(c, r)) in circles.iter().enumerate() {
            for q in 0..queries.len() {
                if queries[q].dist(c) <= r {
                    continue;
                }
                for (_, p) in bitangents(queries[q], 0.0, c, r) {
                    let seg = Element::Segment(Segment::new(queries[q], p));
                    if obs.element_is_free(&seg, tol) {
                        let n = node_on(&mut g, &mut on_circle[ci], c, p);
                        g.add_edge(q, n, seg);
                    }
                }
            }
        }
        for a in 0..circles.len() {
            for b in (a + 1)..circles.len() {
                let ((c1, r1), (c2, r2)) = (circles[a], circles[b]);
                if c1.dist(c2) < (r1 - r2).abs() {
                    continue;
                }
                for (p1, p2) in bitangents(c1, r1, c2, r2) {
                    let seg = Element::Segment(Segment::new(p1, p2));
                    if obs.element_is_free(&seg, tol) {
                        let n1 = node_on(&mut g, &mut on_circle[a], c1, p1);
                        let n2 = node_on(&mut g, &mut on_circle[b], c2, p2);
                        g.add_edge(n1, n2, seg);
                    }
                }
            }
        }
        for (ci, &(c, r)) in circles.iter().enumerate() {
            let nodes = &mut on_circle[ci];
            if nodes.len() < 2 {
                continue;
            }
            nodes.sort_by(|x, y| x.angle.total_cmp(&y.angle));
            for k in 0..nodes.len() {
                let (x, y) = (nodes[k], nodes[(k + 1) % nodes.len()]);
                let arc = Element::Arc(Arc::from_angles(c, r, x.angle, y.angle, Orientation::Ccw));
                if obs.element_is_free(&arc, tol) {
                    g.add_edge(x.node, y.node, arc);
                }
            }
        }
        g
    }

    fn try_segment(&mut self, obs: &ObstacleSpace, tol: Tolerance, i: usize, j: usize) {
        let (a, b) = (self.points[i], self.points[j]);
        if a == b {
            return;
        }
        let seg = Element::Segment(Segment::new(a, b));
        if obs.element_is_free(&seg, tol) {
            self.add_edge(i, j, seg);
        }
    }

    fn add_edge(&mut self, a: usize, b: usize, geom: Element) {
        let len = geom.length();
        self.adj[a].push(Edge { to: b, len, geom });
        self.adj[b].push(Edge {
            to: a,
            len,
            geom: geom.reversed(),
        });
    }

    pub fn node_count(&self) -> usize {
        self.points.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Shortest-path tree from query point `src`.
    pub fn search(&self, src: usize) -> ShortestPathTree<'_> {
        assert!(src < self.queries);
        let n = self.points.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut pred: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        dist[src] = 0.0;
        heap.push(HeapItem {
            dist: 0.0,
            node: src,
        });
        while let Some(HeapItem { dist: d, node: u }) = heap.pop() {
            if done[u] {
                continue;
            }
            done[u] = true;
            for (k, e) in self.adj[u].iter().enumerate() {
                let nd = d + e.len;
                if nd < dist[e.to] {
                    dist[e.to] = nd;
                    pred[e.to] = Some((u, k));
                    heap.push(HeapItem {
                        dist: nd,
                        node: e.to,
                    });
                }
            }
        }
        ShortestPathTree {
            graph: self,
            src,
            dist,
            pred,
        }
    }
}

fn node_on(g: &mut VisibilityGraph, nodes: &mut Vec<NodeOnCircle>, c: Point, p: Point) -> usize {
    let angle = normalize_angle((p - c).angle());
    let close = |a: f64, b: f64| {
        let d = (a - b).abs();
        d.min(TAU - d) < 1e-10
    };
    if let Some(n) = nodes.iter().find(|n| close(n.angle, angle)) {
        return n.node;
    }
    let node = g.points.len();
    g.points.push(p);
    g.adj.push(Vec::new());
    nodes.push(NodeOnCircle { angle, node });
    node
}

#[derive(PartialEq)]
struct HeapItem {
    dist: f64,
    node: usize,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, o: &Self) -> Ordering {
        // min-heap on distance, then on node index
        o.dist
            .total_cmp(&self.dist)
            .then_with(|| o.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

pub struct ShortestPathTree<'g> {
    graph: &'g VisibilityGraph,
    src: usize,
    dist: Vec<f64>,
    pred: Vec<Option<(usize, usize)>>,
}

impl ShortestPathTree<'_> {
    /// Distance to query point `q`, infinite when unreachable.
    pub fn distance(&self, q: usize) -> f64 {
        self.dist[q]
    }

    pub fn path_to(&self, q: usize) -> Option<PolyArcPath> {
        let src_pt = self.graph.points[self.src];
        if q == self.src || src_pt == self.graph.points[q] {
            return Some(PolyArcPath::stationary(src_pt));
        }
        if !self.dist[q].is_finite() {
            return None;
        }
        let mut elements = Vec::new();
        let mut v = q;
        while let Some((u, k)) = self.pred[v] {
            elements.push(self.graph.adj[u][k].geom);
            v = u;
        }
        elements.reverse();
        Some(PolyArcPath::new(src_pt, elements))
    }
}

/// Shortest path from `s` to `t` inside `f`.
pub fn shortest_path(f: &FreeSpace, s: Point, t: Point) -> Result<PolyArcPath> {
    let cs = f
        .locate(s)
        .ok_or(Error::PointOutsideFreeSpace { point: s })?;
    let ct = f
        .locate(t)
        .ok_or(Error::PointOutsideFreeSpace { point: t })?;
    if cs != ct {
        return Err(Error::NoPath);
    }
    let g = VisibilityGraph::build(f, &[s, t]);
    g.search(0).path_to(1).ok_or_else(|| {
        Invariant::Geometry(format!(
            "no tangent-graph path from {s} to {t} in one component"
        ))
        .into()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freespace::ObstacleSpace;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn square(h: f64) -> Vec<Point> {
        vec![
            Point::new(-h, -h),
            Point::new(h, -h),
            Point::new(h, h),
            Point::new(-h, h),
        ]
    }

    fn free(parked: Vec<Point>) -> FreeSpace {
        FreeSpace::build(ObstacleSpace::new(square(10.0), vec![], parked).unwrap()).unwrap()
    }

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn straight_path_in_empty_square() {
        let p = shortest_path(&free(vec![]), Point::new(-3.0, 0.0), Point::new(3.0, 0.0)).unwrap();
        assert_eq!(p.elements().len(), 1);
        assert!((p.length() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn identical_endpoints_give_zero_length() {
        let s = Point::new(1.0, 2.0);
        let p = shortest_path(&free(vec![]), s, s).unwrap();
        assert_eq!(p.length(), 0.0);
        assert_eq!(p.end(), s);
    }

    #[test]
    fn path_around_parked_robot() {
        let f = free(vec![Point::new(0.0, 0.0)]);
        let p = shortest_path(&f, Point::new(-4.0, 0.0), Point::new(4.0, 0.0)).unwrap();
        // two tangents of length sqrt(16 - 4) plus an arc of radius 2
        // subtending pi - 2 * acos(2 / 4)
        let expected = 2.0 * 12f64.sqrt() + 2.0 * (std::f64::consts::PI - 2.0 * (0.5f64).acos());
        assert!(
            (p.length() - expected).abs() < 1e-9,
            "{} vs {expected}",
            p.length()
        );
        assert_eq!(p.elements().len(), 3);
        for q in p.sample(10_000) {
            assert!(f.obstacle_space().clearance_margin(q) >= -1e-9);
        }
    }

    // dense oracle: vertices of polygons circumscribing the discs plus the
    // query points, connected whenever the chord avoids every open disc
    fn dense_oracle(discs: &[(Point, f64)], half: f64, s: Point, t: Point, samples: usize) -> f64 {
        let mut pts = vec![s, t];
        for &(c, r) in discs {
            let k = samples / discs.len();
            let big = r / (std::f64::consts::PI / k as f64).cos();
            for i in 0..k {
                pts.push(Point::polar(c, big, TAU * i as f64 / k as f64));
            }
        }
        let ok = |a: Point, b: Point| {
            let d = b - a;
            let l2 = d.norm_sq();
            let inside = |p: Point| p.x.abs() <= half && p.y.abs() <= half;
            inside(a)
                && inside(b)
                && discs.iter().all(|&(c, r)| {
                    let u = if l2 == 0.0 {
                        0.0
                    } else {
                        ((c - a).dot(d) / l2).clamp(0.0, 1.0)
                    };
                    (a + d * u).dist(c) >= r - 1e-9
                })
        };
        let n = pts.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut done = vec![false; n];
        dist[0] = 0.0;
        for _ in 0..n {
            let u = (0..n)
                .filter(|&i| !done[i])
                .min_by(|&a, &b| dist[a].total_cmp(&dist[b]))
                .unwrap();
            if !dist[u].is_finite() || u == 1 {
                break;
            }
            done[u] = true;
            for v in 0..n {
                if !done[v] && ok(pts[u], pts[v]) {
                    dist[v] = dist[v].min(dist[u] + pts[u].dist(pts[v]));
                }
            }
        }
        dist[1]
    }

    #[test]
    fn two_discs_match_dense_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..4 {
            let a = Point::new(rng.gen_range(-3.0..-1.0), rng.gen_range(-2.0..2.0));
            let b = Point::new(rng.gen_range(1.0..3.0), rng.gen_range(-2.0..2.0));
            if a.dist(b) < 4.0 {
                continue;
            }
            let f = free(vec![a, b]);
            let s = Point::new(-7.0, rng.gen_range(-5.0..5.0));
            let t = Point::new(7.0, rng.gen_range(-5.0..5.0));
            let p = shortest_path(&f, s, t).unwrap();
            let o = dense_oracle(&[(a, 2.0), (b, 2.0)], 9.0, s, t, 2000);
            assert!(
                p.length() <= o + 1e-6 && (o - p.length()) / o < 2e-3,
                "{} vs {o}",
                p.length()
            );
        }
    }

    #[test]
    fn different_components_have_no_path() {
        let ws = vec![
            Point::new(0.0, 0.0),
            Point::new(30.0, 0.0),
            Point::new(30.0, 5.8),
            Point::new(0.0, 5.8),
        ];
        let f = FreeSpace::build(ObstacleSpace::new(ws, vec![], vec![]).unwrap())
            .unwrap()
            .remove_goal_disc(Point::new(15.0, 2.9))
            .unwrap();
        assert!(matches!(
            shortest_path(&f, Point::new(3.0, 2.9), Point::new(27.0, 2.9)),
            Err(Error::NoPath)
        ));
        assert!(matches!(
            shortest_path(&f, Point::new(15.0, 2.9), Point::new(27.0, 2.9)),
            Err(Error::PointOutsideFreeSpace { .. })
        ));
    }

    #[test]
    fn path_bends_around_obstacle_corners() {
        let obstacle = vec![
            Point::new(-1.0, -6.0),
            Point::new(1.0, -6.0),
            Point::new(1.0, 6.0),
            Point::new(-1.0, 6.0),
        ];
        let f = FreeSpace::build(ObstacleSpace::new(square(10.0), vec![obstacle], vec![]).unwrap())
            .unwrap();
        let (s, t) = (Point::new(-5.0, 0.0), Point::new(5.0, 0.0));
        let p = shortest_path(&f, s, t).unwrap();
        // the path wraps the unit arcs at (-1, 6) and (1, 6), or the mirror
        // image below; it is at least the detour through y = 7
        let lower = 2.0 * (4f64.powi(2) + 7f64.powi(2)).sqrt();
        assert!(p.length() > lower - 1e-9);
        assert!(p.length() < lower + 2.5);
        for q in p.sample(2000) {
            assert!(f.obstacle_space().clearance_margin(q) >= -1e-9, "{q}");
        }
        assert!(p.start().dist(s) < 1e-12 && p.end().dist(t) < 1e-9);
    }

    #[test]
    fn prefix_and_suffix_split_length() {
        let p = PolyArcPath::new(
            Point::new(0.0, 0.0),
            vec![
                Element::Segment(Segment::new(Point::new(0.0, 0.0), Point::new(3.0, 0.0))),
                Element::Arc(Arc::new(
                    Point::new(3.0, 1.0),
                    1.0,
                    -std::f64::consts::FRAC_PI_2,
                    std::f64::consts::PI,
                    Orientation::Ccw,
                )),
                Element::Segment(Segment::new(Point::new(3.0, 2.0), Point::new(0.0, 2.0))),
            ],
        );
        let l = p.length();
        assert!((l - (6.0 + std::f64::consts::PI)).abs() < 1e-12);
        assert_eq!(p.suffix(0.0).unwrap(), p);
        assert_eq!(p.prefix(l).unwrap(), p);
        assert_eq!(p.suffix(l).unwrap().length(), 0.0);
        assert_eq!(p.prefix(0.0).unwrap().length(), 0.0);
        assert!(p.suffix(l / 2.0).unwrap().length() - l / 2.0 < 1e-9);
        for u in [0.5, 3.0, 4.0, 6.0, 8.5] {
            let a = p.prefix(u).unwrap();
            let b = p.suffix(u).unwrap();
            assert!((a.length() + b.length() - l).abs() < 1e-9);
            assert!(a.end().dist(b.start()) < 1e-12);
            assert!(a.concat(&b).end().dist(p.end()) < 1e-12);
        }
        assert!(matches!(
            p.suffix(l + 1.0),
            Err(Error::ParamOutOfRange { .. })
        ));
        assert!(matches!(p.prefix(-0.1), Err(Error::ParamOutOfRange { .. })));
    }

    #[test]
    fn interference_with_straight_path() {
        let p = PolyArcPath::segment(Point::new(-5.0, 0.0), Point::new(5.0, 0.0));
        assert!(!path_goal_interference(&p, Point::new(0.0, 3.0), tol()));
        assert!(path_goal_interference(&p, Point::new(0.0, 1.0), tol()));
        assert!(!path_goal_interference(&p, Point::new(0.0, 2.0), tol()));
    }

    #[test]
    fn last_interference_is_chord_exit() {
        let p = PolyArcPath::segment(Point::new(-8.0, 0.0), Point::new(8.0, 0.0));
        let starts = [
            Some(Point::new(-3.0, 1.0)),
            None,
            Some(Point::new(2.0, -1.5)),
            Some(Point::new(0.0, 6.0)),
        ];
        let x = last_interference_point(&p, &starts, tol())
            .unwrap()
            .unwrap();
        assert_eq!(x.start, 2);
        let r = 2.0 - tol().eps;
        let expected = 2.0 + (r * r - 1.5f64 * 1.5).sqrt();
        assert!((x.point.x - expected).abs() < 1e-12);
        assert!((x.point.dist(Point::new(2.0, -1.5)) - 2.0).abs() < 2e-9);
        assert!((x.param - (expected + 8.0)).abs() < 1e-12);

        let none = last_interference_point(
            &p,
            &[Some(Point::new(0.0, 2.0)), Some(Point::new(0.0, -4.0))],
            tol(),
        )
        .unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn last_interference_matches_dense_sweep() {
        let f = free(vec![Point::new(0.0, 0.0)]);
        let p = shortest_path(&f, Point::new(-6.0, -1.0), Point::new(6.0, 1.5)).unwrap();
        let starts = [
            Some(Point::new(-3.0, 3.2)),
            Some(Point::new(1.0, 3.0)),
            Some(Point::new(5.0, -1.0)),
        ];
        let x = last_interference_point(&p, &starts, tol())
            .unwrap()
            .unwrap();
        let n = 1_000_000;
        let mut last = None;
        for k in 0..=n {
            let u = p.length() * k as f64 / n as f64;
            let q = p.point_at(u);
            if starts.iter().flatten().any(|s| q.dist(*s) < 2.0 - 1e-9) {
                last = Some(u);
            }
        }
        let last = last.unwrap();
        assert!(
            (x.param - last).abs() <= p.length() / n as f64 + 1e-9,
            "{} vs {last}",
            x.param
        );
    }

    #[test]
    fn arc_path_interference_matches_sampling() {
        let f = free(vec![Point::new(0.0, 0.0)]);
        let p = shortest_path(&f, Point::new(-4.0, 0.5), Point::new(4.0, 0.0)).unwrap();
        let pts = p.sample(100_000);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let v = Point::new(rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0));
            let oracle = pts.iter().map(|q| q.dist(v)).fold(f64::INFINITY, f64::min);
            if (oracle - 2.0).abs() > 1e-3 {
                assert_eq!(path_goal_interference(&p, v, tol()), oracle < 2.0, "{v}");
            }
            assert!(p.min_dist(v) <= oracle + 1e-12 && oracle - p.min_dist(v) < 1e-3);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn symmetric_and_triangle_inequality(
            sx in -7.0f64..7.0, sy in -7.0f64..7.0,
            tx in -7.0f64..7.0, ty in -7.0f64..7.0,
            ux in -7.0f64..7.0, uy in -7.0f64..7.0,
        ) {
            let f = free(vec![Point::new(0.0, 0.0), Point::new(4.5, 2.0)]);
            let (s, t, u) = (Point::new(sx, sy), Point::new(tx, ty), Point::new(ux, uy));
            prop_assume!(f.locate(s).is_some() && f.locate(t).is_some() && f.locate(u).is_some());
            let st = shortest_path(&f, s, t).unwrap().length();
            let ts = shortest_path(&f, t, s).unwrap().length();
            let su = shortest_path(&f, s, u).unwrap().length();
            let ut = shortest_path(&f, u, t).unwrap().length();
            prop_assert!((st - ts).abs() < 1e-9);
            prop_assert!(st <= su + ut + 1e-9);
            prop_assert!(st >= s.dist(t) - 1e-12);
        }

        #[test]
        fn paths_stay_free(
            sx in -7.0f64..7.0, sy in -7.0f64..7.0,
            tx in -7.0f64..7.0, ty in -7.0f64..7.0,
        ) {
            let f = free(vec![Point::new(0.0, 0.0), Point::new(-3.5, 3.0)]);
            let (s, t) = (Point::new(sx, sy), Point::new(tx, ty));
            prop_assume!(f.locate(s).is_some() && f.locate(t).is_some());
            let p = shortest_path(&f, s, t).unwrap();
            let recomputed: f64 = p.elements().iter().map(Element::length).sum();
            prop_assert!((recomputed - p.length()).abs() < 1e-9);
            for w in p.elements().windows(2) {
                prop_assert!(w[0].end().dist(w[1].start()) < 1e-9);
            }
            for q in p.sample(10_000) {
                prop_assert!(f.obstacle_space().clearance_margin(q) >= -1e-9);
            }
        }
    }
}
