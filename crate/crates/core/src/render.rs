//! SVG rendering of scenarios and plans, in file units.

use std::f64::consts::{PI, TAU};
use std::fmt::Write;

use crate::geom::{Orientation, Point};
use crate::report::{PathElement, PlanFile};
use crate::scenario::Scenario;

const PALETTE: [&str; 10] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#17becf",
    "#8c564b", "#bcbd22",
];

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s.trim_start_matches('-')
        .bytes()
        .all(|b| b == b'0' || b == b'.')
    {
        "0.000000".to_string()
    } else {
        s
    }
}

fn pt(p: Point) -> String {
    format!("{} {}", num(p.x), num(p.y))
}

fn polygon(out: &mut String, poly: &[Point], style: &str) {
    let pts: Vec<String> = poly
        .iter()
        .map(|&p| format!("{},{}", num(p.x), num(p.y)))
        .collect();
    let _ = writeln!(out, "    <polygon points=\"{}\" {style}/>", pts.join(" "));
}

fn arc_command(
    d: &mut String,
    center: Point,
    r: f64,
    start: f64,
    sweep: f64,
    orientation: Orientation,
) {
    // SVG arcs cannot close a full circle, so long sweeps are split
    let pieces = if sweep > PI { 2 } else { 1 };
    let step = sweep / pieces as f64;
    let flag = match orientation {
        Orientation::Ccw => 1,
        Orientation::Cw => 0,
    };
    for k in 1..=pieces {
        let end = Point::polar(center, r, start + orientation.sign() * step * k as f64);
        let _ = write!(d, " A {} {} 0 0 {flag} {}", num(r), num(r), pt(end));
    }
}

fn path_data(start: Point, elements: &[PathElement]) -> String {
    let mut d = format!("M {}", pt(start));
    for e in elements {
        match *e {
            PathElement::Segment { to, .. } => {
                let _ = write!(d, " L {}", pt(to));
            }
            PathElement::Arc {
                center,
                radius,
                start_angle,
                sweep,
                orientation,
                ..
            } => arc_command(
                &mut d,
                center,
                radius,
                start_angle,
                sweep.min(TAU),
                orientation,
            ),
        }
    }
    d
}

/// SVG document showing the workspace, obstacles (gray), starts (red),
/// goals (blue) and, when given, one colored path per plan step.
pub fn render_svg(scenario: &Scenario, plan: Option<&PlanFile>) -> String {
    let file = scenario.to_file();
    let r = file.robot_radius;
    let (mut lo, mut hi) = (
        Point::new(f64::INFINITY, f64::INFINITY),
        Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    );
    for p in &file.workspace {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let pad = 0.02 * (hi.x - lo.x).max(hi.y - lo.y);
    let (w, h) = (hi.x - lo.x + 2.0 * pad, hi.y - lo.y + 2.0 * pad);
    let stroke = num(0.15 * r);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"800\" height=\"{}\">",
        num(lo.x - pad),
        num(-(hi.y + pad)),
        num(w),
        num(h),
        (800.0 * h / w).round() as i64
    );
    if let Some(name) = &file.name {
        let escaped = name
            .replace('&', "&amp;")
            .replace('<', "&lt;")
            .replace('>', "&gt;");
        let _ = writeln!(out, "  <title>{escaped}</title>");
    }
    out.push_str("  <g transform=\"scale(1,-1)\">\n");
    polygon(
        &mut out,
        &file.workspace,
        &format!("fill=\"white\" stroke=\"black\" stroke-width=\"{stroke}\""),
    );
    for o in &file.obstacles {
        polygon(&mut out, o, "fill=\"gray\" stroke=\"none\"");
    }
    for s in &file.starts {
        let _ = writeln!(
            out,
            "    <circle class=\"start\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"red\" fill-opacity=\"0.6\"/>",
            num(s.x),
            num(s.y),
            num(r)
        );
    }
    for g in &file.goals {
        let _ = writeln!(
            out,
            "    <circle class=\"goal\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"blue\" fill-opacity=\"0.6\"/>",
            num(g.x),
            num(g.y),
            num(r)
        );
    }
    if let Some(plan) = plan {
        for (j, st) in plan.steps.iter().enumerate() {
            let _ = writeln!(
                out,
                "    <path class=\"step\" d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{stroke}\"/>",
                path_data(st.moved_from, &st.path),
                PALETTE[j % PALETTE.len()]
            );
        }
    }
    out.push_str("  </g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planner::plan;
    use crate::scenario::ScenarioFile;

    fn scenario() -> Scenario {
        Scenario::from_file(ScenarioFile {
            version: 1,
            name: Some("a<b".into()),
            robot_radius: 0.1,
            workspace: vec![
                Point::new(-1.0, -1.0),
                Point::new(1.0, -1.0),
                Point::new(1.0, 1.0),
                Point::new(-1.0, 1.0),
            ],
            obstacles: vec![vec![
                Point::new(-0.15, -0.15),
                Point::new(0.15, -0.15),
                Point::new(0.0, 0.1),
            ]],
            starts: vec![Point::new(-0.6, 0.0), Point::new(0.0, -0.6)],
            goals: vec![Point::new(0.6, 0.0), Point::new(0.0, 0.6)],
        })
        .unwrap()
    }

    #[test]
    fn scenario_only_has_discs() {
        let svg = render_svg(&scenario(), None);
        assert_eq!(svg.matches("class=\"start\"").count(), 2);
        assert_eq!(svg.matches("class=\"goal\"").count(), 2);
        assert!(svg.contains("fill=\"gray\""));
        assert!(svg.contains("a&lt;b"));
        assert!(!svg.contains("<path"));
    }

    #[test]
    fn plan_paths_use_arc_commands() {
        let mut s = scenario();
        // a single robot whose straight route crosses the obstacle
        s.starts.truncate(1);
        s.goals.truncate(1);
        let p = plan(&s).unwrap();
        let f = PlanFile::new(&p, s.robot_radius);
        let svg = render_svg(&s, Some(&f));
        assert_eq!(svg.matches("<path").count(), 1);
        assert!(svg.contains(" A "), "{svg}");
        assert_eq!(svg, render_svg(&s, Some(&f)));
    }

    #[test]
    fn number_format_is_stable() {
        assert_eq!(num(-0.0), "0.000000");
        assert_eq!(num(-1e-9), "0.000000");
        assert_eq!(num(1.5), "1.500000");
        assert_eq!(num(-2.25), "-2.250000");
    }

    #[test]
    fn long_arcs_are_split() {
        let mut d = String::new();
        arc_command(
            &mut d,
            Point::new(0.0, 0.0),
            1.0,
            0.0,
            TAU,
            Orientation::Ccw,
        );
        assert_eq!(d.matches(" A ").count(), 2);
        let mut d = String::new();
        arc_command(&mut d, Point::new(0.0, 0.0), 1.0, 0.0, 1.0, Orientation::Cw);
        assert_eq!(d.matches(" A ").count(), 1);
        assert!(d.contains(" 0 0 0 "));
    }
}
