//! Plan and metrics files, written in the scenario's own units.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Arc, Element, Orientation, Point, Segment};
use crate::paths::PolyArcPath;
use crate::planner::{HopKind, Plan};
use crate::scenario::Scenario;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "camelCase")]
pub enum PathElement {
    Segment {
        from: Point,
        to: Point,
    },
    #[serde(rename_all = "camelCase")]
    Arc {
        center: Point,
        radius: f64,
        start_angle: f64,
        end_angle: f64,
        /// Unsigned angular extent; disambiguates full circles.
        sweep: f64,
        orientation: Orientation,
    },
}

impl PathElement {
    fn from_element(e: &Element, k: f64) -> Self {
        match e {
            Element::Segment(s) => PathElement::Segment {
                from: s.a * k,
                to: s.b * k,
            },
            Element::Arc(a) => PathElement::Arc {
                center: a.center * k,
                radius: a.radius * k,
                start_angle: a.start_angle,
                end_angle: a.end_angle(),
                sweep: a.sweep,
                orientation: a.orientation,
            },
        }
    }

    pub fn to_element(&self) -> Element {
        match *self {
            PathElement::Segment { from, to } => Element::Segment(Segment::new(from, to)),
            PathElement::Arc {
                center,
                radius,
                start_angle,
                sweep,
                orientation,
                ..
            } => Element::Arc(Arc::new(center, radius, start_angle, sweep, orientation)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StepRecord {
    pub iteration: usize,
    pub goal_index: usize,
    pub start_index: usize,
    pub goal: Point,
    pub moved_from: Point,
    pub hop_kind: HopKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interference_point: Option<Point>,
    pub length: f64,
    pub path: Vec<PathElement>,
}

impl StepRecord {
    pub fn to_path(&self) -> PolyArcPath {
        PolyArcPath::new(
            self.moved_from,
            self.path.iter().map(PathElement::to_element).collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PlanFile {
    pub robot_radius: f64,
    pub steps: Vec<StepRecord>,
    pub total_cost: f64,
    pub lower_bound: f64,
}

impl PlanFile {
    pub fn new(plan: &Plan, robot_radius: f64) -> Self {
        let k = robot_radius;
        PlanFile {
            robot_radius: k,
            steps: plan
                .steps
                .iter()
                .map(|s| StepRecord {
                    iteration: s.iteration,
                    goal_index: s.goal_index,
                    start_index: s.start_index,
                    goal: s.goal * k,
                    moved_from: s.moved_from * k,
                    hop_kind: s.hop_kind,
                    interference_point: s.interference_point.map(|x| x * k),
                    length: s.path.length() * k,
                    path: s
                        .path
                        .elements()
                        .iter()
                        .map(|e| PathElement::from_element(e, k))
                        .collect(),
                })
                .collect(),
            total_cost: plan.total_cost * k,
            lower_bound: plan.lower_bound * k,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plan serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Timings {
    pub freespace: f64,
    pub shortest_paths: f64,
    pub assignment: f64,
    pub standalone_goal: f64,
    pub total: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MetricsReport {
    pub robots: usize,
    pub workspace_vertices: usize,
    pub timings: Timings,
    pub lower_bound: f64,
    pub actual_cost: f64,
    pub zero_hops: usize,
    pub one_hops: usize,
}

impl MetricsReport {
    pub fn new(scenario: &Scenario, plan: &Plan) -> Self {
        let t = &plan.timings;
        let (zero_hops, one_hops) = plan.hop_counts();
        let k = scenario.robot_radius;
        MetricsReport {
            robots: scenario.robot_count(),
            workspace_vertices: scenario.workspace.len()
                + scenario.obstacles.iter().map(Vec::len).sum::<usize>(),
            timings: Timings {
                freespace: t.freespace.as_secs_f64(),
                shortest_paths: t.shortest_paths.as_secs_f64(),
                assignment: t.assignment.as_secs_f64(),
                standalone_goal: t.standalone_goal.as_secs_f64(),
                total: t.total.as_secs_f64(),
            },
            lower_bound: plan.lower_bound * k,
            actual_cost: plan.total_cost * k,
            zero_hops,
            one_hops,
        }
    }

    /// Arithmetic consistency of the report.
    pub fn is_consistent(&self) -> bool {
        self.zero_hops + self.one_hops == self.robots
            && self.actual_cost >= self.lower_bound - 1e-9 * self.lower_bound.max(1.0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("metrics serialize")
    }
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planner::plan;
    use crate::scenario::ScenarioFile;

    fn scenario() -> Scenario {
        Scenario::from_file(ScenarioFile {
            version: 1,
            name: None,
            robot_radius: 0.1,
            workspace: vec![
                Point::new(-1.0, -1.0),
                Point::new(1.0, -1.0),
                Point::new(1.0, 1.0),
                Point::new(-1.0, 1.0),
            ],
            obstacles: vec![],
            starts: vec![Point::new(-0.6, 0.0), Point::new(0.0, 0.0)],
            goals: vec![Point::new(0.6, 0.0), Point::new(0.0, 0.6)],
        })
        .unwrap()
    }

    #[test]
    fn plan_file_uses_file_units_and_round_trips() {
        let s = scenario();
        let p = plan(&s).unwrap();
        let f = PlanFile::new(&p, s.robot_radius);
        assert!((f.total_cost - p.total_cost * 0.1).abs() < 1e-12);
        let back = PlanFile::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        for st in &back.steps {
            let path = st.to_path();
            assert!((path.length() - st.length).abs() < 1e-12);
            assert!(path.start().dist(st.moved_from) < 1e-12);
            assert!(path.end().dist(st.goal) < 1e-9);
        }
        let text = f.to_json();
        assert!(
            text.contains("\"hopKind\": \"ONE_HOP\"") || text.contains("\"hopKind\": \"ZERO_HOP\"")
        );
        assert!(text.contains("\"type\": \"segment\""));
    }

    #[test]
    fn metrics_are_consistent() {
        let s = scenario();
        let p = plan(&s).unwrap();
        let m = MetricsReport::new(&s, &p);
        assert_eq!(m.robots, 2);
        assert_eq!(m.workspace_vertices, 4);
        assert!(m.is_consistent());
        assert!(m.actual_cost <= m.lower_bound + 4.0 * 2.0 * 0.1 + 1e-9);
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.json");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn arc_elements_serialize_with_orientation() {
        let e = PathElement::from_element(
            &Element::Arc(Arc::new(
                Point::new(1.0, 2.0),
                2.0,
                0.5,
                1.0,
                Orientation::Cw,
            )),
            0.5,
        );
        let v = serde_json::to_value(&e).unwrap();
        assert_eq!(v["type"], "arc");
        assert_eq!(v["orientation"], "cw");
        assert_eq!(v["radius"], 1.0);
        assert_eq!(PathElement::from_element(&e.to_element(), 1.0), e);
    }
}
