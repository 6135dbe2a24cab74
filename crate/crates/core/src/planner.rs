//! Recursive standalone-goal planner.
//!
//! Each iteration computes an optimal assignment in the current free space,
//! picks a goal that no other assigned path comes near, moves one robot to
//! it (directly, or by letting the robot that blocks its path take over),
//! parks that robot and removes its disc of radius 2 from the free space.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::assign::{all_pair_paths, assignment_from_table, AssignmentPathSet};
use crate::error::{Error, Invariant, Result};
use crate::freespace::FreeSpace;
use crate::geom::{Point, Tolerance};
use crate::paths::{last_interference_point, path_goal_interference, Interference, PolyArcPath};
use crate::scenario::Scenario;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HopKind {
    ZeroHop,
    OneHop,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlanStep {
    pub iteration: usize,
    /// Index into the scenario's goals.
    pub goal_index: usize,
    /// Index into the scenario's starts.
    pub start_index: usize,
    pub goal: Point,
    pub moved_from: Point,
    pub hop_kind: HopKind,
    pub path: PolyArcPath,
    pub interference_point: Option<Point>,
}

/// Wall-clock time spent per phase, summed over all iterations.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PhaseTimings {
    pub freespace: Duration,
    pub shortest_paths: Duration,
    pub assignment: Duration,
    pub standalone_goal: Duration,
    pub total: Duration,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Plan {
    /// In execution order.
    pub steps: Vec<PlanStep>,
    pub total_cost: f64,
    /// Optimal assignment cost of the first iteration.
    pub lower_bound: f64,
    /// Optimal assignment cost at every iteration.
    pub level_costs: Vec<f64>,
    pub timings: PhaseTimings,
}

impl Plan {
    /// `(zero-hop steps, one-hop steps)`.
    pub fn hop_counts(&self) -> (usize, usize) {
        let zero = self
            .steps
            .iter()
            .filter(|s| s.hop_kind == HopKind::ZeroHop)
            .count();
        (zero, self.steps.len() - zero)
    }

    /// The guaranteed upper bound on the total cost.
    pub fn cost_bound(&self) -> f64 {
        self.lower_bound + 4.0 * self.steps.len() as f64
    }
}

/// Pair index (into `gamma.pairs`) of the standalone goal with the smallest
/// goal index: no other path of `gamma` comes within distance 2 of it.
pub fn find_standalone_goal(
    gamma: &AssignmentPathSet,
    goals: &[Point],
    tol: Tolerance,
) -> Option<usize> {
    let mut order: Vec<usize> = (0..gamma.pairs.len()).collect();
    order.sort_by_key(|&p| gamma.pairs[p].goal);
    order.into_iter().find(|&k| {
        let t = goals[gamma.pairs[k].goal];
        gamma
            .pairs
            .iter()
            .enumerate()
            .all(|(i, p)| i == k || !path_goal_interference(&p.path, t, tol))
    })
}

/// The motion chosen for a standalone goal.
#[derive(Clone, Debug, PartialEq)]
pub struct Hop {
    /// Start index (into the `starts` passed to [`build_hop`]) of the robot
    /// that moves.
    pub mover: usize,
    pub kind: HopKind,
    pub path: PolyArcPath,
    pub interference: Option<Interference>,
}

/// Moves a robot to the goal of pair `k`: along its own path when no other
/// start blocks it, otherwise the last blocking robot cuts in at the last
/// interference point.
pub fn build_hop(
    gamma: &AssignmentPathSet,
    k: usize,
    starts: &[Point],
    tol: Tolerance,
) -> Result<Hop> {
    let pair = &gamma.pairs[k];
    let others: Vec<Option<Point>> = starts
        .iter()
        .enumerate()
        .map(|(i, &s)| (i != pair.start).then_some(s))
        .collect();
    let hit = last_interference_point(&pair.path, &others, tol)
        .map_err(|_| Invariant::MultipleBlockers { goal: pair.goal })?;
    Ok(match hit {
        None => Hop {
            mover: pair.start,
            kind: HopKind::ZeroHop,
            path: pair.path.clone(),
            interference: None,
        },
        Some(x) => {
            let lead = PolyArcPath::segment(starts[x.start], x.point);
            Hop {
                mover: x.start,
                kind: HopKind::OneHop,
                path: lead.concat(&pair.path.suffix(x.param)?),
                interference: Some(x),
            }
        }
    })
}

/// The path along the prefix of pair `k`'s path to the interference
/// point, then straight to the blocking start, then along that start's
/// assigned path.
pub fn build_switch_path(
    gamma: &AssignmentPathSet,
    k: usize,
    x: &Interference,
    starts: &[Point],
) -> Result<PolyArcPath> {
    let gk = &gamma.pairs[k].path;
    let gi = &gamma
        .pairs
        .iter()
        .find(|p| p.start == x.start)
        .ok_or_else(|| Error::InvalidInput(format!("start {} is not assigned", x.start)))?
        .path;
    Ok(gk
        .prefix(x.param)?
        .concat(&PolyArcPath::segment(x.point, starts[x.start]))
        .concat(gi))
}

pub fn plan(scenario: &Scenario) -> Result<Plan> {
    plan_with_tolerance(scenario, Tolerance::default())
}

pub fn plan_with_tolerance(scenario: &Scenario, tol: Tolerance) -> Result<Plan> {
    let t_all = Instant::now();
    let mut timings = PhaseTimings::default();
    let m = scenario.robot_count();
    if m == 0 || scenario.goals.len() != m {
        return Err(Error::InvalidInput(
            "need equal, nonzero numbers of starts and goals".into(),
        ));
    }

    let t0 = Instant::now();
    let mut f = FreeSpace::build_with(scenario.obstacle_space()?, tol)?;
    timings.freespace += t0.elapsed();
    if f.is_empty() {
        return Err(Error::EmptyFreeSpace);
    }
    let report = f.count_endpoints(&scenario.starts, &scenario.goals)?;
    if !report.is_balanced() {
        return Err(Error::Infeasible(report));
    }

    let mut start_ids: Vec<usize> = (0..m).collect();
    let mut goal_ids: Vec<usize> = (0..m).collect();
    let mut steps = Vec::with_capacity(m);
    let mut level_costs = Vec::with_capacity(m);
    for iteration in 0..m {
        let starts: Vec<Point> = start_ids.iter().map(|&i| scenario.starts[i]).collect();
        let goals: Vec<Point> = goal_ids.iter().map(|&i| scenario.goals[i]).collect();

        let t0 = Instant::now();
        let table = all_pair_paths(&f, &starts, &goals)?;
        timings.shortest_paths += t0.elapsed();

        let t0 = Instant::now();
        let gamma = assignment_from_table(&table).map_err(|e| match e {
            Error::NoPerfectMatching => Error::from(Invariant::AssignmentFailed { iteration }),
            e => e,
        })?;
        timings.assignment += t0.elapsed();
        level_costs.push(gamma.total_length);

        let t0 = Instant::now();
        let k = find_standalone_goal(&gamma, &goals, tol)
            .ok_or(Invariant::NoStandaloneGoal { iteration })?;
        let hop = build_hop(&gamma, k, &starts, tol)?;
        timings.standalone_goal += t0.elapsed();

        let goal_local = gamma.pairs[k].goal;
        let goal = goals[goal_local];
        steps.push(PlanStep {
            iteration,
            goal_index: goal_ids[goal_local],
            start_index: start_ids[hop.mover],
            goal,
            moved_from: starts[hop.mover],
            hop_kind: hop.kind,
            interference_point: hop.interference.map(|x| x.point),
            path: hop.path,
        });
        start_ids.remove(hop.mover);
        goal_ids.remove(goal_local);

        if iteration + 1 < m {
            let t0 = Instant::now();
            f = f.remove_goal_disc(goal)?;
            timings.freespace += t0.elapsed();
        }
    }
    timings.total = t_all.elapsed();
    let total_cost = steps.iter().map(|s| s.path.length()).sum();
    Ok(Plan {
        steps,
        total_cost,
        lower_bound: level_costs[0],
        level_costs,
        timings,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum ViolationKind {
    /// The moving robot overlaps a resting one.
    Collision,
    /// The moving robot leaves the free space.
    OutsideFreeSpace,
    /// The path does not join the claimed start and goal.
    Endpoints,
    /// Starts or goals are used more or less than once.
    Schedule,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PlanViolation {
    pub step: usize,
    pub sample: Option<usize>,
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ValidationReport {
    pub samples_per_path: usize,
    /// Smallest distance between the moving robot and any resting robot.
    pub min_clearance: f64,
    /// Smallest free-space slack of the moving robot.
    pub min_containment_margin: f64,
    pub recomputed_cost: f64,
    pub cost_matches: bool,
    pub bound_holds: bool,
    pub violations: Vec<PlanViolation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty() && self.cost_matches && self.bound_holds
    }
}

pub const VALIDATION_SAMPLES: usize = 1000;

/// Replays the plan one robot at a time: while step `j` moves, robots of
/// earlier steps rest at their goals and robots of later steps rest at
/// their starts.
pub fn validate_plan(scenario: &Scenario, plan: &Plan, tol: Tolerance) -> Result<ValidationReport> {
    let space = scenario.obstacle_space()?;
    let m = scenario.robot_count();
    let mut violations = Vec::new();
    let mut min_clearance = f64::INFINITY;
    let mut min_margin = f64::INFINITY;

    let mut used_s = vec![false; m];
    let mut used_t = vec![false; m];
    for (j, st) in plan.steps.iter().enumerate() {
        let mut schedule = |ok: bool, what: &str| {
            if !ok {
                violations.push(PlanViolation {
                    step: j,
                    sample: None,
                    kind: ViolationKind::Schedule,
                    detail: what.to_string(),
                });
            }
        };
        let s_ok = st.start_index < m && !used_s[st.start_index];
        let t_ok = st.goal_index < m && !used_t[st.goal_index];
        schedule(s_ok, "start index invalid or reused");
        schedule(t_ok, "goal index invalid or reused");
        if s_ok {
            used_s[st.start_index] = true;
        }
        if t_ok {
            used_t[st.goal_index] = true;
        }
    }
    if plan.steps.len() != m {
        violations.push(PlanViolation {
            step: plan.steps.len(),
            sample: None,
            kind: ViolationKind::Schedule,
            detail: format!("{} steps for {m} robots", plan.steps.len()),
        });
    }

    for (j, st) in plan.steps.iter().enumerate() {
        let path = &st.path;
        let ends_ok = st.start_index < m
            && st.goal_index < m
            && path.start().dist(scenario.starts[st.start_index]) <= 1e-6
            && path.end().dist(scenario.goals[st.goal_index]) <= 1e-6;
        if !ends_ok {
            violations.push(PlanViolation {
                step: j,
                sample: None,
                kind: ViolationKind::Endpoints,
                detail: format!("path runs {} -> {}", path.start(), path.end()),
            });
        }
        let resting: Vec<Point> = plan.steps[..j]
            .iter()
            .filter(|s| s.goal_index < m)
            .map(|s| scenario.goals[s.goal_index])
            .chain(
                plan.steps[j + 1..]
                    .iter()
                    .filter(|s| s.start_index < m)
                    .map(|s| scenario.starts[s.start_index]),
            )
            .collect();
        let mut reported = (false, false);
        for (k, q) in path.sample(VALIDATION_SAMPLES).into_iter().enumerate() {
            let clearance = resting
                .iter()
                .map(|r| r.dist(q))
                .fold(f64::INFINITY, f64::min);
            min_clearance = min_clearance.min(clearance);
            if clearance < 2.0 - tol.eps && !reported.0 {
                reported.0 = true;
                violations.push(PlanViolation {
                    step: j,
                    sample: Some(k),
                    kind: ViolationKind::Collision,
                    detail: format!("robot at {q} is {clearance:.9} from a resting robot"),
                });
            }
            let margin = space.clearance_margin(q);
            min_margin = min_margin.min(margin);
            if margin < -tol.eps && !reported.1 {
                reported.1 = true;
                violations.push(PlanViolation {
                    step: j,
                    sample: Some(k),
                    kind: ViolationKind::OutsideFreeSpace,
                    detail: format!("robot at {q} is {:.9} inside the obstacle space", -margin),
                });
            }
        }
    }

    let recomputed: f64 = plan
        .steps
        .iter()
        .map(|s| s.path.elements().iter().map(|e| e.length()).sum::<f64>())
        .sum();
    Ok(ValidationReport {
        samples_per_path: VALIDATION_SAMPLES,
        min_clearance,
        min_containment_margin: min_margin,
        recomputed_cost: recomputed,
        cost_matches: (recomputed - plan.total_cost).abs() <= 1e-9 * recomputed.max(1.0),
        bound_holds: plan.total_cost <= plan.cost_bound() + 1e-6,
        violations,
    })
}
