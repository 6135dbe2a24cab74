//! Optimal assignment of starts to goals by total shortest-path length.

use crate::error::{Error, Invariant, Result};
use crate::freespace::FreeSpace;
use crate::geom::Point;
use crate::paths::{PolyArcPath, VisibilityGraph};

/// Square matrix of start-to-goal costs; `f64::INFINITY` marks pairs in
/// different components.
#[derive(Clone, Debug, PartialEq)]
pub struct CostMatrix {
    n: usize,
    costs: Vec<f64>,
}

pub const INFEASIBLE: f64 = f64::INFINITY;

impl CostMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("cost matrix must be square".into()));
        }
        let costs: Vec<f64> = rows.into_iter().flatten().collect();
        if costs
            .iter()
            .any(|c| c.is_nan() || *c < 0.0 || *c == f64::NEG_INFINITY)
        {
            return Err(Error::InvalidInput(
                "costs must be nonnegative or INFEASIBLE".into(),
            ));
        }
        Ok(CostMatrix { n, costs })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.costs[i * self.n + j]
    }

    pub fn is_feasible(&self, i: usize, j: usize) -> bool {
        self.get(i, j).is_finite()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.costs.chunks(self.n.max(1))
    }
}

/// A perfect matching given as the goal assigned to each start.
#[derive(Clone, Debug, PartialEq)]
pub struct Matching {
    pub goal_of: Vec<usize>,
    pub cost: f64,
}

/// Minimum-cost perfect matching. Among optimal matchings the one whose
/// goal sequence is lexicographically smallest is returned.
pub fn hungarian(c: &CostMatrix) -> Result<Matching> {
    let n = c.size();
    if n == 0 {
        return Ok(Matching {
            goal_of: Vec::new(),
            cost: 0.0,
        });
    }
    let finite_sum: f64 = c.costs.iter().filter(|x| x.is_finite()).sum();
    let big = finite_sum + 1.0;
    let w: Vec<f64> = c
        .costs
        .iter()
        .map(|&x| if x.is_finite() { x } else { big })
        .collect();

    let all: Vec<usize> = (0..n).collect();
    let (goal_of, _, v_dual, u_dual) = solve(&w, n, &all, &all);
    let best: f64 = goal_of.iter().enumerate().map(|(i, &j)| w[i * n + j]).sum();
    let slack = 1e-10 * best.abs().max(1.0);

    // fix rows one at a time to the smallest column that still admits an
    // optimal completion; only tight edges can belong to an optimum
    let mut fixed: Vec<usize> = Vec::with_capacity(n);
    let mut fixed_cost = 0.0;
    let mut free_cols: Vec<usize> = (0..n).collect();
    for r in 0..n {
        let rest_rows: Vec<usize> = ((r + 1)..n).collect();
        let mut chosen = None;
        for (pos, &col) in free_cols.iter().enumerate() {
            let reduced = w[r * n + col] - u_dual[r] - v_dual[col];
            if reduced > 1e-9 * best.abs().max(1.0) && col != goal_of[r] {
                continue;
            }
            let mut rest_cols = free_cols.clone();
            rest_cols.remove(pos);
            let sub = if rest_rows.is_empty() {
                0.0
            } else {
                let (sub_goal, _, _, _) = solve(&w, n, &rest_rows, &rest_cols);
                rest_rows
                    .iter()
                    .zip(&sub_goal)
                    .map(|(&i, &j)| w[i * n + j])
                    .sum()
            };
            if fixed_cost + w[r * n + col] + sub <= best + slack {
                chosen = Some(pos);
                break;
            }
        }
        let pos =
            chosen.unwrap_or_else(|| free_cols.iter().position(|&j| j == goal_of[r]).unwrap_or(0));
        let col = free_cols.remove(pos);
        fixed_cost += w[r * n + col];
        fixed.push(col);
    }

    if fixed.iter().enumerate().any(|(i, &j)| !c.is_feasible(i, j)) {
        return Err(Error::NoPerfectMatching);
    }
    let cost = fixed.iter().enumerate().map(|(i, &j)| c.get(i, j)).sum();
    Ok(Matching {
        goal_of: fixed,
        cost,
    })
}

/// Kuhn-Munkres with potentials on the submatrix `rows × cols` of the
/// full `n × n` weight array. Returns, per row in `rows`, the chosen column
/// (as a column index of the full matrix), the optimal cost and full-size
/// column and row potentials.
fn solve(
    w: &[f64],
    n: usize,
    rows: &[usize],
    cols: &[usize],
) -> (Vec<usize>, f64, Vec<f64>, Vec<f64>) {
    let k = rows.len();
    debug_assert_eq!(k, cols.len());
    let a = |i: usize, j: usize| w[rows[i - 1] * n + cols[j - 1]];
    // 1-based arrays, index 0 is the virtual column
    let mut u = vec![0.0; k + 1];
    let mut v = vec![0.0; k + 1];
    let mut p = vec![0usize; k + 1];
    let mut way = vec![0usize; k + 1];
    for i in 1..=k {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; k + 1];
        let mut used = vec![false; k + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=k {
                if !used[j] {
                    let cur = a(i0, j) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=k {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut goal = vec![0usize; k];
    for j in 1..=k {
        goal[p[j] - 1] = cols[j - 1];
    }
    let cost = (0..k).map(|i| w[rows[i] * n + goal[i]]).sum();
    let mut v_full = vec![0.0; n];
    let mut u_full = vec![0.0; n];
    for j in 1..=k {
        v_full[cols[j - 1]] = v[j];
    }
    for i in 1..=k {
        u_full[rows[i - 1]] = u[i];
    }
    (goal, cost, v_full, u_full)
}

/// Shortest paths between every start and goal.
#[derive(Clone, Debug)]
pub struct PathTable {
    pub costs: CostMatrix,
    paths: Vec<Vec<Option<PolyArcPath>>>,
}

impl PathTable {
    pub fn path(&self, start: usize, goal: usize) -> Option<&PolyArcPath> {
        self.paths[start][goal].as_ref()
    }
}

/// Computes all start-to-goal shortest paths over one shared tangent graph.
pub fn all_pair_paths(f: &FreeSpace, starts: &[Point], goals: &[Point]) -> Result<PathTable> {
    let m = starts.len();
    if goals.len() != m {
        return Err(Error::InvalidInput("start and goal counts differ".into()));
    }
    let locate = |p: Point| f.locate(p).ok_or(Error::PointOutsideFreeSpace { point: p });
    let cs = starts
        .iter()
        .map(|&s| locate(s))
        .collect::<Result<Vec<_>>>()?;
    let ct = goals
        .iter()
        .map(|&t| locate(t))
        .collect::<Result<Vec<_>>>()?;
    let mut queries = starts.to_vec();
    queries.extend_from_slice(goals);
    let graph = VisibilityGraph::build(f, &queries);

    let mut rows = Vec::with_capacity(m);
    let mut paths = Vec::with_capacity(m);
    for i in 0..m {
        let tree = graph.search(i);
        let mut row = vec![INFEASIBLE; m];
        let mut prow = vec![None; m];
        for j in 0..m {
            if cs[i] != ct[j] {
                continue;
            }
            let p = tree.path_to(m + j).ok_or_else(|| {
                Invariant::Geometry(format!(
                    "no tangent-graph path from start {i} to goal {j} in one component"
                ))
            })?;
            row[j] = p.length();
            prow[j] = Some(p);
        }
        rows.push(row);
        paths.push(prow);
    }
    Ok(PathTable {
        costs: CostMatrix::new(rows)?,
        paths,
    })
}

pub fn build_cost_matrix(f: &FreeSpace, starts: &[Point], goals: &[Point]) -> Result<CostMatrix> {
    Ok(all_pair_paths(f, starts, goals)?.costs)
}

/// One matched start, goal and the path joining them.
#[derive(Clone, Debug, PartialEq)]
pub struct AssignedPath {
    pub start: usize,
    pub goal: usize,
    pub path: PolyArcPath,
}

/// Optimal-assignment path set, ordered by start index.
#[derive(Clone, Debug, PartialEq)]
pub struct AssignmentPathSet {
    pub pairs: Vec<AssignedPath>,
    pub total_length: f64,
}

pub fn assignment_from_table(table: &PathTable) -> Result<AssignmentPathSet> {
    let matching = hungarian(&table.costs)?;
    let pairs: Vec<AssignedPath> = matching
        .goal_of
        .iter()
        .enumerate()
        .map(|(i, &j)| AssignedPath {
            start: i,
            goal: j,
            path: table.path(i, j).cloned().expect("matched pair has a path"),
        })
        .collect();
    let total_length = pairs.iter().map(|p| p.path.length()).sum();
    Ok(AssignmentPathSet {
        pairs,
        total_length,
    })
}

pub fn optimal_assignment(
    f: &FreeSpace,
    starts: &[Point],
    goals: &[Point],
) -> Result<AssignmentPathSet> {
    assignment_from_table(&all_pair_paths(f, starts, goals)?)
}
