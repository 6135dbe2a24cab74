//! Free space of a unit-disc robot.
//!
//! The free space is the set of disc centers at distance at least 1 from
//! the obstacle space (everything outside the workspace polygon plus the
//! obstacle polygons) and at least 2 from every parked robot. Its boundary
//! is made of offset edges, radius-1 arcs around obstacle corners and
//! radius-2 circles around parked robots; we build it by splitting these
//! candidate curves at their mutual crossings, keeping the pieces that lie
//! on the boundary, and tracing them into closed loops.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Invariant, Result};
use crate::geom::{
    dist_arc_segment, dist_point_segment, dist_segment_segment, element_intersections,
    loop_signed_area, loop_winding, point_in_polygon, polygon_edges, polygon_is_simple,
    polygon_signed_area, Arc, ArcPolygon, Element, Orientation, Point, Segment, Tolerance,
};

/// Clearance the robot center must keep from the obstacle space.
pub const ROBOT_CLEARANCE: f64 = 1.0;
/// Clearance the robot center must keep from a parked robot's center.
pub const PARKED_CLEARANCE: f64 = 2.0;

// pieces shorter than this are dropped while splitting
const MIN_PIECE: f64 = 1e-10;
// endpoints closer than this are joined while tracing loops
const JOIN_TOL: f64 = 1e-7;

/// Workspace, obstacles and parked robots, normalized to counter-clockwise
/// polygons.
#[derive(Clone, Debug)]
pub struct ObstacleSpace {
    workspace: Vec<Point>,
    obstacles: Vec<Vec<Point>>,
    parked: Vec<Point>,
    edges: Vec<Segment>,
}

fn ccw(mut poly: Vec<Point>) -> Vec<Point> {
    if polygon_signed_area(&poly) < 0.0 {
        poly.reverse();
    }
    poly
}

impl ObstacleSpace {
    pub fn new(
        workspace: Vec<Point>,
        obstacles: Vec<Vec<Point>>,
        parked: Vec<Point>,
    ) -> Result<Self> {
        let check = |poly: &[Point], what: &str| -> Result<()> {
            if poly.len() < 3 {
                return Err(Error::InvalidInput(format!(
                    "{what} needs at least 3 vertices"
                )));
            }
            if poly.iter().any(|p| !p.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "{what} has non-finite coordinates"
                )));
            }
            if polygon_signed_area(poly).abs() == 0.0 {
                return Err(Error::InvalidInput(format!("{what} has zero area")));
            }
            if !polygon_is_simple(poly) {
                return Err(Error::InvalidInput(format!("{what} is not simple")));
            }
            Ok(())
        };
        check(&workspace, "workspace")?;
        for (i, o) in obstacles.iter().enumerate() {
            check(o, &format!("obstacle {i}"))?;
        }
        if parked.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidInput(
                "parked robot has non-finite coordinates".into(),
            ));
        }
        let workspace = ccw(workspace);
        let obstacles: Vec<_> = obstacles.into_iter().map(ccw).collect();
        let edges = polygon_edges(&workspace)
            .chain(obstacles.iter().flat_map(|o| polygon_edges(o)))
            .collect();
        Ok(ObstacleSpace {
            workspace,
            obstacles,
            parked,
            edges,
        })
    }

    pub fn workspace(&self) -> &[Point] {
        &self.workspace
    }

    pub fn obstacles(&self) -> &[Vec<Point>] {
        &self.obstacles
    }

    pub fn parked(&self) -> &[Point] {
        &self.parked
    }

    /// Every workspace and obstacle edge.
    pub fn edges(&self) -> &[Segment] {
        &self.edges
    }

    pub fn with_parked(&self, t: Point) -> ObstacleSpace {
        let mut next = self.clone();
        next.parked.push(t);
        next
    }

    /// Inside the workspace polygon and outside every obstacle polygon.
    pub fn in_open_region(&self, p: Point) -> bool {
        point_in_polygon(&self.workspace, p)
            && !self.obstacles.iter().any(|o| point_in_polygon(o, p))
    }

    /// Euclidean distance from `p` to the obstacle space (zero when `p` is
    /// in it).
    pub fn obstacle_distance(&self, p: Point) -> f64 {
        if !self.in_open_region(p) {
            return 0.0;
        }
        self.edges
            .iter()
            .map(|e| dist_point_segment(p, e))
            .fold(f64::INFINITY, f64::min)
    }

    /// Signed slack of the free-space constraints at `p`; nonnegative iff
    /// a unit disc centered at `p` touches neither obstacles nor parked
    /// robots.
    pub fn clearance_margin(&self, p: Point) -> f64 {
        let parked = self
            .parked
            .iter()
            .map(|q| p.dist(*q) - PARKED_CLEARANCE)
            .fold(f64::INFINITY, f64::min);
        (self.obstacle_distance(p) - ROBOT_CLEARANCE).min(parked)
    }

    pub fn contains(&self, p: Point, tol: Tolerance) -> bool {
        self.clearance_margin(p) >= -tol.eps
    }

    /// Whether every point of `e` is a free configuration.
    pub fn element_is_free(&self, e: &Element, tol: Tolerance) -> bool {
        let edge_ok = |s: &Segment| {
            let d = match e {
                Element::Segment(seg) => dist_segment_segment(seg, s),
                Element::Arc(a) => dist_arc_segment(a, s),
            };
            d >= ROBOT_CLEARANCE - tol.eps
        };
        self.parked
            .iter()
            .all(|q| e.dist_to_point(*q) >= PARKED_CLEARANCE - tol.eps)
            && self.edges.iter().all(edge_ok)
            && self.in_open_region(e.midpoint())
    }

    /// Candidate boundary curves, oriented with the free side on the left.
    fn candidate_curves(&self) -> Vec<Element> {
        let mut out = Vec::new();
        push_offsets(&self.workspace, 1.0, &mut out);
        for o in &self.obstacles {
            push_offsets(o, -1.0, &mut out);
        }
        for &t in &self.parked {
            out.extend(parked_circle(t));
        }
        out
    }
}

/// Offset curves of a counter-clockwise polygon. `side` is +1 when the
/// free region is the polygon interior and -1 when it is the exterior.
fn push_offsets(poly: &[Point], side: f64, out: &mut Vec<Element>) {
    let n = poly.len();
    let normal = |a: Point, b: Point| (b - a).unit().perp() * side;
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        let nrm = normal(a, b);
        let seg = Segment::new(a + nrm, b + nrm);
        out.push(Element::Segment(if side > 0.0 {
            seg
        } else {
            seg.reversed()
        }));
    }
    for i in 0..n {
        let (u, v, w) = (poly[(i + n - 1) % n], poly[i], poly[(i + 1) % n]);
        let d1 = (v - u).unit();
        let d2 = (w - v).unit();
        let turn = d1.cross(d2).atan2(d1.dot(d2));
        // the obstacle side is locally convex where the boundary turns away
        // from the free side
        if turn * side >= 0.0 || turn.abs() < 1e-12 {
            continue;
        }
        let (n_in, n_out) = (normal(u, v), normal(v, w));
        let start = if side > 0.0 {
            n_in.angle()
        } else {
            n_out.angle()
        };
        out.push(Element::Arc(Arc::new(
            v,
            ROBOT_CLEARANCE,
            start,
            turn.abs(),
            Orientation::Cw,
        )));
    }
}

fn parked_circle(t: Point) -> [Element; 2] {
    [
        Element::Arc(Arc::new(t, PARKED_CLEARANCE, 0.0, PI, Orientation::Cw)),
        Element::Arc(Arc::new(t, PARKED_CLEARANCE, PI, PI, Orientation::Cw)),
    ]
}

#[derive(Clone, Copy, Debug)]
struct Bbox {
    min: Point,
    max: Point,
}

impl Bbox {
    fn of(e: &Element) -> Bbox {
        match e {
            Element::Segment(s) => Bbox {
                min: Point::new(s.a.x.min(s.b.x), s.a.y.min(s.b.y)),
                max: Point::new(s.a.x.max(s.b.x), s.a.y.max(s.b.y)),
            },
            Element::Arc(a) => Bbox {
                min: Point::new(a.center.x - a.radius, a.center.y - a.radius),
                max: Point::new(a.center.x + a.radius, a.center.y + a.radius),
            },
        }
    }

    fn overlaps(&self, o: &Bbox) -> bool {
        let pad = 1e-9;
        self.min.x <= o.max.x + pad
            && o.min.x <= self.max.x + pad
            && self.min.y <= o.max.y + pad
            && o.min.y <= self.max.y + pad
    }
}

/// Splits `curve` at the given arc-length parameters.
fn split_at(curve: &Element, mut params: Vec<f64>) -> Vec<Element> {
    let len = curve.length();
    params.retain(|u| *u > MIN_PIECE && *u < len - MIN_PIECE);
    params.sort_by(f64::total_cmp);
    params.dedup_by(|a, b| (*a - *b).abs() < MIN_PIECE);
    let mut cuts = Vec::with_capacity(params.len() + 2);
    cuts.push(0.0);
    cuts.extend(params);
    cuts.push(len);
    if cuts.len() == 2 {
        return vec![*curve];
    }
    cuts.windows(2)
        .filter(|w| w[1] - w[0] > MIN_PIECE)
        .map(|w| curve.sub(w[0], w[1]))
        .collect()
}

/// Splits every curve at its crossings with every other curve.
fn split_all(curves: &[Element]) -> Vec<Vec<Element>> {
    let boxes: Vec<Bbox> = curves.iter().map(Bbox::of).collect();
    let mut params: Vec<Vec<f64>> = vec![Vec::new(); curves.len()];
    for i in 0..curves.len() {
        for j in (i + 1)..curves.len() {
            if !boxes[i].overlaps(&boxes[j]) {
                continue;
            }
            for (u, v, _) in element_intersections(&curves[i], &curves[j]) {
                params[i].push(u);
                params[j].push(v);
            }
        }
    }
    curves
        .iter()
        .zip(params)
        .map(|(c, p)| split_at(c, p))
        .collect()
}

/// Traces boundary pieces (free side on the left) into closed loops and
/// groups them into regions.
fn trace_regions(pieces: Vec<Element>) -> Result<Vec<ArcPolygon>> {
    let n = pieces.len();
    let mut used = vec![false; n];
    let mut loops: Vec<Vec<Element>> = Vec::new();
    for first in 0..n {
        if used[first] {
            continue;
        }
        let mut chain = vec![pieces[first]];
        used[first] = true;
        let mut cur = first;
        loop {
            let end = pieces[cur].end();
            if end.dist(pieces[first].start()) < JOIN_TOL && chain.len() > 1 {
                break;
            }
            let tin = pieces[cur].tangent_at(pieces[cur].length());
            let next = (0..n)
                .filter(|&j| !used[j] && pieces[j].start().dist(end) < JOIN_TOL)
                .min_by(|&a, &b| {
                    let ta = turn_angle(tin, pieces[a].tangent_at(0.0));
                    let tb = turn_angle(tin, pieces[b].tangent_at(0.0));
                    ta.total_cmp(&tb)
                });
            match next {
                Some(j) => {
                    used[j] = true;
                    chain.push(pieces[j]);
                    cur = j;
                }
                None if end.dist(pieces[first].start()) < JOIN_TOL => break,
                None => {
                    return Err(Invariant::Geometry(format!(
                        "free-space boundary chain is open at {end}"
                    ))
                    .into());
                }
            }
        }
        loops.push(chain);
    }

    let mut outers: Vec<(Vec<Element>, f64)> = Vec::new();
    let mut holes: Vec<Vec<Element>> = Vec::new();
    for l in loops {
        let area = loop_signed_area(&l);
        if area > 1e-12 {
            outers.push((l, area));
        } else if area < -1e-12 {
            holes.push(l);
        }
    }
    let mut regions: Vec<ArcPolygon> = outers
        .iter()
        .map(|(l, _)| ArcPolygon {
            boundary: l.clone(),
            holes: Vec::new(),
        })
        .collect();
    for h in holes {
        let probe = h[0].midpoint();
        let owner = outers
            .iter()
            .enumerate()
            .filter(|(_, (l, _))| loop_winding(l, probe) != 0)
            .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
            .map(|(i, _)| i);
        if let Some(i) = owner {
            regions[i].holes.push(h);
        }
    }
    Ok(regions)
}

fn turn_angle(tin: Point, tout: Point) -> f64 {
    tin.cross(tout).atan2(tin.dot(tout))
}

/// Connected components of the free space as arc-polygons, together with
/// the obstacle description they were derived from.
#[derive(Clone, Debug)]
pub struct FreeSpace {
    obstacles: ObstacleSpace,
    regions: Vec<ArcPolygon>,
    tol: Tolerance,
}

impl FreeSpace {
    /// Erodes the workspace by the unit disc, subtracting obstacles and
    /// parked robots. An empty result is returned as-is; check
    /// [`FreeSpace::is_empty`].
    pub fn build(obstacles: ObstacleSpace) -> Result<FreeSpace> {
        Self::build_with(obstacles, Tolerance::default())
    }

    pub fn build_with(obstacles: ObstacleSpace, tol: Tolerance) -> Result<FreeSpace> {
        let curves = obstacles.candidate_curves();
        let pieces = split_all(&curves)
            .into_iter()
            .flatten()
            .filter(|p| obstacles.clearance_margin(p.midpoint()) >= -tol.eps)
            .collect();
        let regions = trace_regions(pieces)?;
        Ok(FreeSpace {
            obstacles,
            regions,
            tol,
        })
    }

    pub fn regions(&self) -> &[ArcPolygon] {
        &self.regions
    }

    pub fn obstacle_space(&self) -> &ObstacleSpace {
        &self.obstacles
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    pub fn area(&self) -> f64 {
        self.regions.iter().map(ArcPolygon::area).sum()
    }

    /// Index of the component containing `p`, using the boundary
    /// representation only.
    pub fn locate(&self, p: Point) -> Option<usize> {
        self.regions.iter().position(|r| r.contains(p))
    }

    /// Subtracts the radius-2 disc around a newly parked robot, reusing the
    /// current boundary.
    pub fn remove_goal_disc(&self, t: Point) -> Result<FreeSpace> {
        if self.locate(t).is_none() {
            return Err(Error::PointOutsideFreeSpace { point: t });
        }
        let old: Vec<Element> = self
            .regions
            .iter()
            .flat_map(|r| r.edges().copied())
            .collect();
        let mut curves = old;
        let n_old = curves.len();
        curves.extend(parked_circle(t));
        let boxes: Vec<Bbox> = curves.iter().map(Bbox::of).collect();
        let mut params: Vec<Vec<f64>> = vec![Vec::new(); curves.len()];
        for j in n_old..curves.len() {
            for i in 0..n_old {
                if !boxes[i].overlaps(&boxes[j]) {
                    continue;
                }
                for (u, v, _) in element_intersections(&curves[i], &curves[j]) {
                    params[i].push(u);
                    params[j].push(v);
                }
            }
        }
        let eps = self.tol.eps;
        let mut pieces = Vec::new();
        for (i, (c, p)) in curves.iter().zip(params).enumerate() {
            for piece in split_at(c, p) {
                let m = piece.midpoint();
                let keep = if i < n_old {
                    m.dist(t) >= PARKED_CLEARANCE - eps
                } else {
                    self.obstacles.clearance_margin(m) >= -eps
                };
                if keep {
                    pieces.push(piece);
                }
            }
        }
        Ok(FreeSpace {
            obstacles: self.obstacles.with_parked(t),
            regions: trace_regions(pieces)?,
            tol: self.tol,
        })
    }

    /// Start and goal tallies per component.
    pub fn count_endpoints(&self, starts: &[Point], goals: &[Point]) -> Result<ComponentReport> {
        let mut components = vec![ComponentCount::default(); self.regions.len()];
        for (i, &s) in starts.iter().enumerate() {
            let c = self
                .locate(s)
                .ok_or(Error::PointOutsideFreeSpace { point: s })?;
            components[c].starts.push(i);
        }
        for (i, &t) in goals.iter().enumerate() {
            let c = self
                .locate(t)
                .ok_or(Error::PointOutsideFreeSpace { point: t })?;
            components[c].goals.push(i);
        }
        Ok(ComponentReport { components })
    }

    /// Distinct circles carrying boundary arcs, as `(center, radius)`.
    pub fn boundary_circles(&self) -> Vec<(Point, f64)> {
        let mut out: Vec<(Point, f64)> = Vec::new();
        for e in self.regions.iter().flat_map(|r| r.edges()) {
            if let Element::Arc(a) = e {
                let dup = out
                    .iter()
                    .any(|(c, r)| c.dist(a.center) < 1e-9 && (r - a.radius).abs() < 1e-9);
                if !dup {
                    out.push((a.center, a.radius));
                }
            }
        }
        out
    }
}

/// Start and goal indices falling in one free-space component.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ComponentCount {
    pub starts: Vec<usize>,
    pub goals: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ComponentReport {
    pub components: Vec<ComponentCount>,
}

impl ComponentReport {
    /// `(starts, goals)` per component.
    pub fn counts(&self) -> Vec<(usize, usize)> {
        self.components
            .iter()
            .map(|c| (c.starts.len(), c.goals.len()))
            .collect()
    }

    pub fn is_balanced(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.starts.len() == c.goals.len())
    }
}

impl fmt::Display for ComponentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .counts()
            .iter()
            .enumerate()
            .map(|(i, (s, g))| format!("component {i}: {s} start(s), {g} goal(s)"))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}
