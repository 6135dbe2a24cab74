//! Scenario files: parsing, unit normalization and validation of the
//! separation assumptions.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freespace::ObstacleSpace;
use crate::geom::{
    point_in_polygon, polygon_edges, polygon_is_simple, polygon_signed_area, segments_intersect,
    Point,
};

pub const FORMAT_VERSION: u32 = 1;
/// Minimum distance between any two endpoints, in robot radii.
pub const ENDPOINT_SEPARATION: f64 = 4.0;
/// Minimum distance from any endpoint to the obstacle space, in robot radii.
pub const OBSTACLE_SEPARATION: f64 = 2.236_067_977_499_79;

/// On-disk scenario, in the file's own units.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ScenarioFile {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub robot_radius: f64,
    pub workspace: Vec<Point>,
    #[serde(default)]
    pub obstacles: Vec<Vec<Point>>,
    pub starts: Vec<Point>,
    pub goals: Vec<Point>,
}

/// A scenario rescaled so that robots are unit discs.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub name: Option<String>,
    /// Radius in file units; all geometry below is divided by it.
    pub robot_radius: f64,
    pub workspace: Vec<Point>,
    pub obstacles: Vec<Vec<Point>>,
    pub starts: Vec<Point>,
    pub goals: Vec<Point>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EndpointKind {
    Start,
    Goal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Endpoint {
    pub kind: EndpointKind,
    pub index: usize,
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            EndpointKind::Start => write!(f, "start {}", self.index),
            EndpointKind::Goal => write!(f, "goal {}", self.index),
        }
    }
}

/// One failed validation check. Distances are in robot radii.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Violation {
    EndpointsTooClose {
        a: Endpoint,
        b: Endpoint,
        distance: f64,
    },
    ObstacleTooClose {
        endpoint: Endpoint,
        distance: f64,
    },
    Malformed {
        message: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EndpointsTooClose { a, b, distance } => {
                write!(
                    f,
                    "{a} and {b} are {distance:.6} apart (< {ENDPOINT_SEPARATION})"
                )
            }
            Violation::ObstacleTooClose { endpoint, distance } => {
                write!(
                    f,
                    "{endpoint} is {distance:.6} from the obstacle space (< sqrt 5)"
                )
            }
            Violation::Malformed { message } => f.write_str(message),
        }
    }
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario> {
        let file: ScenarioFile = serde_json::from_str(text)?;
        Scenario::from_file(file)
    }

    pub fn load(path: &Path) -> Result<Scenario> {
        Scenario::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn from_file(file: ScenarioFile) -> Result<Scenario> {
        if file.version != FORMAT_VERSION {
            return Err(Error::Parse {
                line: 0,
                column: 0,
                message: format!(
                    "unsupported version {} (expected {FORMAT_VERSION})",
                    file.version
                ),
            });
        }
        let r = file.robot_radius;
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::Parse {
                line: 0,
                column: 0,
                message: format!("robotRadius must be positive, got {r}"),
            });
        }
        let k = 1.0 / r;
        let scale = |v: Vec<Point>| v.into_iter().map(|p| p * k).collect::<Vec<_>>();
        Ok(Scenario {
            name: file.name,
            robot_radius: r,
            workspace: scale(file.workspace),
            obstacles: file.obstacles.into_iter().map(scale).collect(),
            starts: scale(file.starts),
            goals: scale(file.goals),
        })
    }

    /// Back to file units.
    pub fn to_file(&self) -> ScenarioFile {
        let r = self.robot_radius;
        let scale = |v: &[Point]| v.iter().map(|&p| p * r).collect::<Vec<_>>();
        ScenarioFile {
            version: FORMAT_VERSION,
            name: self.name.clone(),
            robot_radius: r,
            workspace: scale(&self.workspace),
            obstacles: self.obstacles.iter().map(|o| scale(o)).collect(),
            starts: scale(&self.starts),
            goals: scale(&self.goals),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("scenario serializes")
    }

    pub fn robot_count(&self) -> usize {
        self.starts.len()
    }

    pub fn obstacle_space(&self) -> Result<ObstacleSpace> {
        ObstacleSpace::new(self.workspace.clone(), self.obstacles.clone(), Vec::new())
    }

    fn endpoints(&self) -> impl Iterator<Item = (Endpoint, Point)> + '_ {
        let tag = |kind| move |(index, p): (usize, &Point)| (Endpoint { kind, index }, *p);
        self.starts
            .iter()
            .enumerate()
            .map(tag(EndpointKind::Start))
            .chain(self.goals.iter().enumerate().map(tag(EndpointKind::Goal)))
    }

    /// Every violated check; empty when the scenario is plannable.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = structural_problems(self)
            .into_iter()
            .map(|message| Violation::Malformed { message })
            .collect::<Vec<_>>();
        if !out.is_empty() {
            return out;
        }
        let eps = crate::geom::DEFAULT_EPS;
        let pts: Vec<(Endpoint, Point)> = self.endpoints().collect();
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                let d = pts[i].1.dist(pts[j].1);
                if d < ENDPOINT_SEPARATION - eps {
                    out.push(Violation::EndpointsTooClose {
                        a: pts[i].0,
                        b: pts[j].0,
                        distance: d,
                    });
                }
            }
        }
        let space = self.obstacle_space().expect("structure checked");
        for (e, p) in pts {
            let d = space.obstacle_distance(p);
            if d < OBSTACLE_SEPARATION - eps {
                out.push(Violation::ObstacleTooClose {
                    endpoint: e,
                    distance: d,
                });
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(v))
        }
    }
}

fn structural_problems(s: &Scenario) -> Vec<String> {
    let mut out = Vec::new();
    if s.starts.is_empty() {
        out.push("at least one robot is required".to_string());
    }
    if s.starts.len() != s.goals.len() {
        out.push(format!(
            "{} starts but {} goals",
            s.starts.len(),
            s.goals.len()
        ));
    }
    let all_points = s
        .workspace
        .iter()
        .chain(s.obstacles.iter().flatten())
        .chain(&s.starts)
        .chain(&s.goals);
    if all_points.clone().any(|p| !p.is_finite()) {
        out.push("coordinates must be finite".to_string());
        return out;
    }
    let polys: Vec<(&str, usize, &[Point])> =
        std::iter::once(("workspace", 0, s.workspace.as_slice()))
            .chain(
                s.obstacles
                    .iter()
                    .enumerate()
                    .map(|(i, o)| ("obstacle", i, o.as_slice())),
            )
            .collect();
    for &(what, i, poly) in &polys {
        let label = if what == "workspace" {
            what.to_string()
        } else {
            format!("{what} {i}")
        };
        if poly.len() < 3 {
            out.push(format!("{label} needs at least 3 vertices"));
        } else if polygon_signed_area(poly).abs() < 1e-12 {
            out.push(format!("{label} has zero area"));
        } else if !polygon_is_simple(poly) {
            out.push(format!("{label} is not a simple polygon"));
        }
    }
    if !out.is_empty() {
        return out;
    }
    for (i, o) in s.obstacles.iter().enumerate() {
        if o.iter().any(|&p| !point_in_polygon(&s.workspace, p)) || polygons_cross(o, &s.workspace)
        {
            out.push(format!("obstacle {i} is not inside the workspace"));
        }
        for (j, q) in s.obstacles.iter().enumerate().skip(i + 1) {
            if polygons_cross(o, q) || point_in_polygon(q, o[0]) || point_in_polygon(o, q[0]) {
                out.push(format!("obstacles {i} and {j} overlap"));
            }
        }
    }
    out
}

fn polygons_cross(a: &[Point], b: &[Point]) -> bool {
    polygon_edges(a).any(|e| polygon_edges(b).any(|f| segments_intersect(&e, &f)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> ScenarioFile {
        ScenarioFile {
            version: 1,
            name: Some("t".into()),
            robot_radius: 0.5,
            workspace: vec![
                Point::new(-5.0, -5.0),
                Point::new(5.0, -5.0),
                Point::new(5.0, 5.0),
                Point::new(-5.0, 5.0),
            ],
            obstacles: vec![vec![
                Point::new(-0.5, -0.5),
                Point::new(0.5, -0.5),
                Point::new(0.0, 0.5),
            ]],
            starts: vec![Point::new(-3.0, -3.0), Point::new(3.0, -3.0)],
            goals: vec![Point::new(-3.0, 3.0), Point::new(3.0, 3.0)],
        }
    }

    #[test]
    fn normalizes_by_radius() {
        let s = Scenario::from_file(base()).unwrap();
        assert_eq!(s.starts[0], Point::new(-6.0, -6.0));
        assert_eq!(s.workspace[2], Point::new(10.0, 10.0));
        assert!(s.validate().is_ok(), "{:?}", s.violations());
    }

    #[test]
    fn round_trip_preserves_geometry() {
        let s = Scenario::from_file(base()).unwrap();
        let back = Scenario::from_json(&s.to_json()).unwrap();
        for (a, b) in s
            .starts
            .iter()
            .chain(&s.workspace)
            .zip(back.starts.iter().chain(&back.workspace))
        {
            assert!(a.dist(*b) < 1e-12);
        }
        assert_eq!(back.name, s.name);
    }

    #[test]
    fn parse_errors_carry_position() {
        let err =
            Scenario::from_json("{\n  \"version\": 1,\n  \"robotRadius\": oops\n}").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(
            Scenario::from_json("{\"version\": 1}"),
            Err(Error::Parse { .. })
        ));
        let mut f = base();
        f.version = 2;
        assert!(matches!(Scenario::from_file(f), Err(Error::Parse { .. })));
        let mut f = base();
        f.robot_radius = 0.0;
        assert!(matches!(Scenario::from_file(f), Err(Error::Parse { .. })));
    }

    #[test]
    fn endpoint_separation_threshold() {
        for (d, ok) in [(3.9, false), (3.999, false), (4.0, true), (4.001, true)] {
            let mut f = base();
            f.robot_radius = 1.0;
            f.workspace.iter_mut().for_each(|p| *p = *p * 3.0);
            f.obstacles.clear();
            f.starts = vec![Point::new(0.0, 0.0), Point::new(d, 0.0)];
            f.goals = vec![Point::new(0.0, 8.0), Point::new(8.0, 8.0)];
            let v = Scenario::from_file(f).unwrap().violations();
            assert_eq!(v.is_empty(), ok, "{d}: {v:?}");
            if !ok {
                assert!(
                    matches!(v[0], Violation::EndpointsTooClose { distance, .. } if (distance - d).abs() < 1e-12)
                );
            }
        }
    }

    #[test]
    fn obstacle_separation_threshold() {
        for (d, ok) in [(2.23, false), (2.235, false), (2.237, true)] {
            let mut f = base();
            f.robot_radius = 1.0;
            f.workspace = vec![
                Point::new(-20.0, -20.0),
                Point::new(20.0, -20.0),
                Point::new(20.0, 20.0),
                Point::new(-20.0, 20.0),
            ];
            f.obstacles = vec![vec![
                Point::new(-1.0, -1.0),
                Point::new(1.0, -1.0),
                Point::new(1.0, 1.0),
                Point::new(-1.0, 1.0),
            ]];
            f.starts = vec![Point::new(1.0 + d, 0.0)];
            f.goals = vec![Point::new(-10.0, -10.0)];
            let v = Scenario::from_file(f).unwrap().violations();
            assert_eq!(v.is_empty(), ok, "{d}: {v:?}");
        }
    }

    #[test]
    fn structural_problems_are_reported() {
        let mut f = base();
        f.goals.pop();
        assert!(matches!(
            &Scenario::from_file(f).unwrap().violations()[0],
            Violation::Malformed { .. }
        ));
        let mut f = base();
        f.workspace = vec![
            Point::new(0.0, 0.0),
            Point::new(4.0, 4.0),
            Point::new(4.0, 0.0),
            Point::new(0.0, 4.0),
        ];
        assert!(!Scenario::from_file(f).unwrap().violations().is_empty());
        let mut f = base();
        f.obstacles.push(vec![
            Point::new(4.0, 4.0),
            Point::new(7.0, 4.0),
            Point::new(7.0, 7.0),
        ]);
        assert!(!Scenario::from_file(f).unwrap().violations().is_empty());
    }
}
