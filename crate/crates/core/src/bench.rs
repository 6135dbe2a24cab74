//! Seeded scenario generators and the benchmark table.
//!
//! Generators work in robot-radius units with margins above the required
//! separations, then rescale the result into the square `[-1, 1]²`.

use std::fmt::{self, Write};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::freespace::{FreeSpace, ObstacleSpace};
use crate::geom::Point;
use crate::planner::plan;
use crate::report::MetricsReport;
use crate::scenario::{Scenario, ScenarioFile, FORMAT_VERSION};

// separations used by the generators, slightly above the required ones
const SPACING: f64 = 4.4;
const CLEARANCE: f64 = 2.4;
const ATTEMPTS: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Obstacle-free square.
    Grid,
    /// Square with scattered triangular obstacles.
    Triangles,
    /// Square divided by walls with narrow doorways.
    Maze,
    /// Plus-shaped workspace with wall obstacles.
    Cross,
    /// Square split by a wall; starts and goals are unbalanced across it.
    Wall,
}

impl Family {
    pub const FEASIBLE: [Family; 4] =
        [Family::Grid, Family::Triangles, Family::Maze, Family::Cross];

    pub fn name(self) -> &'static str {
        match self {
            Family::Grid => "grid",
            Family::Triangles => "triangles",
            Family::Maze => "maze",
            Family::Cross => "cross-like",
            Family::Wall => "wall",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grid" => Ok(Family::Grid),
            "triangles" => Ok(Family::Triangles),
            "maze" => Ok(Family::Maze),
            "cross" | "cross-like" => Ok(Family::Cross),
            "wall" => Ok(Family::Wall),
            _ => Err(Error::InvalidInput(format!("unknown family {s:?}"))),
        }
    }
}

struct Layout {
    workspace: Vec<Point>,
    obstacles: Vec<Vec<Point>>,
    /// Candidate endpoint positions, already clear of the obstacle space.
    slots: Vec<Point>,
}

fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Vec<Point> {
    vec![
        Point::new(x0, y0),
        Point::new(x1, y0),
        Point::new(x1, y1),
        Point::new(x0, y1),
    ]
}

fn lattice(x0: f64, y0: f64, nx: usize, ny: usize, step: f64) -> Vec<Point> {
    (0..ny)
        .flat_map(|j| (0..nx).map(move |i| Point::new(x0 + step * i as f64, y0 + step * j as f64)))
        .collect()
}

fn side_for(m: usize, spare: f64) -> usize {
    ((2.0 * m as f64 * spare).sqrt().ceil() as usize).max(2)
}

fn grid_layout(m: usize) -> Layout {
    let k = side_for(m, 1.5);
    let l = 2.0 * CLEARANCE + SPACING * (k - 1) as f64;
    Layout {
        workspace: rect(0.0, 0.0, l, l),
        obstacles: Vec::new(),
        slots: lattice(CLEARANCE, CLEARANCE, k, k, SPACING),
    }
}

fn triangles_layout(m: usize, rng: &mut ChaCha8Rng) -> Layout {
    // cells hold either an endpoint slot or a small triangle near the center
    let cell = 6.0;
    let border = 3.6;
    let k = side_for(m, 2.2);
    let l = 2.0 * border + cell * (k - 1) as f64;
    let centers = lattice(border, border, k, k, cell);
    let mut order: Vec<usize> = (0..centers.len()).collect();
    order.shuffle(rng);
    let n_obs = (centers.len() - 2 * m).min(m + 2);
    let mut obstacles = Vec::new();
    for &c in order.iter().take(n_obs) {
        let c = centers[c];
        let rot = rng.gen_range(0.0..std::f64::consts::TAU);
        let size = rng.gen_range(0.8..1.2);
        obstacles.push(
            (0..3)
                .map(|i| Point::polar(c, size, rot + i as f64 * std::f64::consts::TAU / 3.0))
                .collect(),
        );
    }
    let slots = order[n_obs..].iter().map(|&i| centers[i]).collect();
    Layout {
        workspace: rect(0.0, 0.0, l, l),
        obstacles,
        slots,
    }
}

fn maze_layout(m: usize) -> Layout {
    // rooms separated by walls that leave a doorway at each end and one in
    // the middle
    let room = 5.2;
    let wall = 0.6;
    let door = 2.6;
    let rows = ((2 * m) as f64 / 3.0).sqrt().ceil() as usize + 1;
    let rooms = ((2 * m) as f64 / rows as f64 * 1.4).ceil() as usize + 1;
    let h = 2.0 * CLEARANCE + SPACING * (rows - 1) as f64 + door;
    let width = rooms as f64 * room + (rooms - 1) as f64 * wall;
    let mid = h / 2.0;
    let mut obstacles = Vec::new();
    for r in 1..rooms {
        let x = r as f64 * (room + wall) - wall;
        obstacles.push(rect(x, door, x + wall, mid - door / 2.0));
        obstacles.push(rect(x, mid + door / 2.0, x + wall, h - door));
    }
    let mut slots = Vec::new();
    for r in 0..rooms {
        let x = r as f64 * (room + wall) + room / 2.0;
        for j in 0..rows {
            slots.push(Point::new(x, CLEARANCE + door / 2.0 + SPACING * j as f64));
        }
    }
    Layout {
        workspace: rect(0.0, 0.0, width, h),
        obstacles,
        slots,
    }
}

fn cross_layout(m: usize) -> Layout {
    // plus sign with arms of width `a`, each arm holding a lattice block
    let per_arm = m.div_ceil(2);
    let a = 2.0 * CLEARANCE + SPACING * 2.0 + 1.2;
    let cols = 3usize;
    let depth = per_arm.div_ceil(cols) + 1;
    let arm = 2.0 * CLEARANCE + SPACING * (depth - 1) as f64;
    let (lo, hi) = (arm, arm + a);
    let end = 2.0 * arm + a;
    let workspace = vec![
        Point::new(lo, 0.0),
        Point::new(hi, 0.0),
        Point::new(hi, lo),
        Point::new(end, lo),
        Point::new(end, hi),
        Point::new(hi, hi),
        Point::new(hi, end),
        Point::new(lo, end),
        Point::new(lo, hi),
        Point::new(0.0, hi),
        Point::new(0.0, lo),
        Point::new(lo, lo),
    ];
    // short walls at the mouth of every arm, leaving passages on both sides
    let c = end / 2.0;
    let half = 1.2;
    let t = 0.3;
    let obstacles = vec![
        rect(c - half, lo - 0.3 - t, c + half, lo - 0.3),
        rect(c - half, hi + 0.3, c + half, hi + 0.3 + t),
        rect(lo - 0.3 - t, c - half, lo - 0.3, c + half),
        rect(hi + 0.3, c - half, hi + 0.3 + t, c + half),
    ];
    let x0 = lo + CLEARANCE + 0.6;
    let mut slots = Vec::new();
    // vertical arms
    slots.extend(lattice(x0, CLEARANCE, cols, depth - 1, SPACING));
    slots.extend(lattice(
        x0,
        hi + CLEARANCE + SPACING,
        cols,
        depth - 1,
        SPACING,
    ));
    // horizontal arms
    slots.extend(lattice(CLEARANCE, x0, depth - 1, cols, SPACING));
    slots.extend(lattice(
        hi + CLEARANCE + SPACING,
        x0,
        depth - 1,
        cols,
        SPACING,
    ));
    Layout {
        workspace,
        obstacles,
        slots,
    }
}

fn wall_layout(m: usize) -> Layout {
    let k = side_for(m, 1.0).max(m.div_ceil(2) + 1);
    let half = CLEARANCE + SPACING * (k - 1) as f64 + CLEARANCE;
    let l = 2.0 * half + 2.0;
    let h = 2.0 * CLEARANCE + SPACING * (2 * k - 1) as f64;
    // gaps of 0.5 at both ends are too narrow for a unit disc
    let wall = rect(half, 0.5, half + 2.0, h - 0.5);
    let mut slots = lattice(CLEARANCE, CLEARANCE, k, 2 * k, SPACING);
    slots.extend(lattice(
        half + 2.0 + CLEARANCE,
        CLEARANCE,
        k,
        2 * k,
        SPACING,
    ));
    Layout {
        workspace: rect(0.0, 0.0, l, h),
        obstacles: vec![wall],
        slots,
    }
}

/// Scenario of `family` with `m` robots, reproducible from `seed`.
pub fn generate(family: Family, m: usize, seed: u64) -> Result<Scenario> {
    if m == 0 {
        return Err(Error::GenerationFailure(
            "at least one robot is required".into(),
        ));
    }
    for attempt in 0..ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(
            seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
                .wrapping_add(attempt),
        );
        let layout = match family {
            Family::Grid => grid_layout(m),
            Family::Triangles => triangles_layout(m, &mut rng),
            Family::Maze => maze_layout(m),
            Family::Cross => cross_layout(m),
            Family::Wall => wall_layout(m),
        };
        if let Some(s) = place(family, &layout, m, seed, &mut rng)? {
            return Ok(s);
        }
    }
    Err(Error::GenerationFailure(format!(
        "could not place {m} robots in the {family} family"
    )))
}

fn place(
    family: Family,
    layout: &Layout,
    m: usize,
    seed: u64,
    rng: &mut ChaCha8Rng,
) -> Result<Option<Scenario>> {
    let space = ObstacleSpace::new(
        layout.workspace.clone(),
        layout.obstacles.clone(),
        Vec::new(),
    )?;
    let mut slots: Vec<Point> = layout
        .slots
        .iter()
        .copied()
        .filter(|&p| space.obstacle_distance(p) >= CLEARANCE - 1e-9)
        .collect();
    if slots.len() < 2 * m {
        return Ok(None);
    }
    let (starts, goals) = if family == Family::Wall {
        // every start left of the wall; goals split so the sides never balance
        let cut = layout.obstacles[0][0].x;
        let (mut left, mut right): (Vec<Point>, Vec<Point>) = slots.iter().partition(|p| p.x < cut);
        left.shuffle(rng);
        right.shuffle(rng);
        let goals_left = rng.gen_range(0..m);
        if left.len() < m + goals_left || right.len() < m - goals_left {
            return Ok(None);
        }
        let starts = left[..m].to_vec();
        let mut goals = left[m..m + goals_left].to_vec();
        goals.extend_from_slice(&right[..m - goals_left]);
        goals.shuffle(rng);
        (starts, goals)
    } else {
        slots.shuffle(rng);
        (slots[..m].to_vec(), slots[m..2 * m].to_vec())
    };

    let s = to_unit_square(family, seed, layout, &starts, &goals)?;
    if !s.violations().is_empty() {
        return Ok(None);
    }
    if family != Family::Wall {
        let f = FreeSpace::build(s.obstacle_space()?)?;
        match f.count_endpoints(&s.starts, &s.goals) {
            Ok(rep) if rep.is_balanced() => {}
            _ => return Ok(None),
        }
    }
    Ok(Some(s))
}

fn to_unit_square(
    family: Family,
    seed: u64,
    layout: &Layout,
    starts: &[Point],
    goals: &[Point],
) -> Result<Scenario> {
    let (mut lo, mut hi) = (
        Point::new(f64::INFINITY, f64::INFINITY),
        Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    );
    for p in &layout.workspace {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let center = (lo + hi) * 0.5;
    let k = 2.0 / (hi.x - lo.x).max(hi.y - lo.y);
    let map = |v: &[Point]| v.iter().map(|&p| (p - center) * k).collect::<Vec<_>>();
    Scenario::from_file(ScenarioFile {
        version: FORMAT_VERSION,
        name: Some(format!("{family}-{}-{seed}", starts.len())),
        robot_radius: k,
        workspace: map(&layout.workspace),
        obstacles: layout.obstacles.iter().map(|o| map(o)).collect(),
        starts: map(starts),
        goals: map(goals),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub family: Family,
    pub seed: u64,
    pub metrics: MetricsReport,
}

pub fn run_bench(family: Family, sizes: &[usize], seed: u64) -> Result<Vec<BenchRow>> {
    sizes
        .iter()
        .map(|&m| {
            let s = generate(family, m, seed)?;
            let p = plan(&s)?;
            Ok(BenchRow {
                family,
                seed,
                metrics: MetricsReport::new(&s, &p),
            })
        })
        .collect()
}

/// CSV table; timing columns are dropped when `with_timings` is false so
/// that the output depends on the inputs only.
pub fn bench_csv(rows: &[BenchRow], with_timings: bool) -> String {
    let mut out = String::from("family,seed,robots,workspace_vertices");
    if with_timings {
        out.push_str(",t_freespace,t_shortest_paths,t_assignment,t_standalone_goal,t_total");
    }
    out.push_str(",lower_bound,actual_cost,zero_hops,one_hops\n");
    for r in rows {
        let m = &r.metrics;
        let _ = write!(
            out,
            "{},{},{},{}",
            r.family, r.seed, m.robots, m.workspace_vertices
        );
        if with_timings {
            let t = &m.timings;
            let _ = write!(
                out,
                ",{:.6},{:.6},{:.6},{:.6},{:.6}",
                t.freespace, t.shortest_paths, t.assignment, t.standalone_goal, t.total
            );
        }
        let _ = writeln!(
            out,
            ",{:.9},{:.9},{},{}",
            m.lower_bound, m.actual_cost, m.zero_hops, m.one_hops
        );
    }
    out
}
