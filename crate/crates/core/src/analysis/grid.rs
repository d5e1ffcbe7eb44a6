//! Worst-case joint error distributions with fixed marginals.
//!
//! A grid `G[j_z][j_x]` is a nonnegative matrix whose row sums are the
//! Z-basis error budget and whose column sums are the X-basis budget. The
//! extreme masses of a cell set over this transportation polytope are found
//! exactly by a max-flow computation on the bipartite row/column network:
//! the largest mass a set `T` can hold is the maximum flow through edges in
//! `T`, and the smallest mass of `S` is the total minus the largest mass of
//! its complement.

use std::collections::{BTreeSet, VecDeque};

use super::budget::ErrorBudget;
use crate::error::{Error, Result};

/// Row and column totals may differ by at most this much.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-6;

/// Each marginal must sum to one within this much.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Residual capacities below this are treated as exhausted.
const FLOW_EPS: f64 = 1e-15;

pub type Cell = (usize, usize);

#[derive(Clone, Debug, PartialEq)]
pub struct MarginalGrid {
    rows: Vec<f64>,
    cols: Vec<f64>,
}

impl MarginalGrid {
    /// `rows` are indexed by Z flip mask, `cols` by X flip mask.
    pub fn new(rows: Vec<f64>, cols: Vec<f64>) -> Result<Self> {
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::InvalidParameter("empty marginal".into()));
        }
        if let Some(bad) = rows
            .iter()
            .chain(&cols)
            .find(|v| !v.is_finite() || **v < 0.0)
        {
            return Err(Error::InvalidParameter(format!(
                "marginal entry {bad} is not a probability"
            )));
        }
        let (rs, cs): (f64, f64) = (rows.iter().sum(), cols.iter().sum());
        if (rs - cs).abs() > FEASIBILITY_TOLERANCE {
            return Err(Error::InfeasibleMarginals { rows: rs, cols: cs });
        }
        if (rs - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "marginals sum to {rs}, not 1"
            )));
        }
        Ok(Self { rows, cols })
    }

    /// Grid from the two observed error budgets. The flip-error entries are
    /// taken as measured and the no-error entry of each marginal is set to
    /// one minus the total error, which absorbs rounding in published tables.
    pub fn from_budgets(z: &ErrorBudget, x: &ErrorBudget) -> Result<Self> {
        let close = |b: &ErrorBudget| -> Result<Vec<f64>> {
            let mut eta = b.values().to_vec();
            let errors: f64 = eta[1..].iter().sum();
            if errors > 1.0 + FEASIBILITY_TOLERANCE {
                return Err(Error::InvalidParameter(format!(
                    "total error {errors} exceeds one"
                )));
            }
            eta[0] = (1.0 - errors).max(0.0);
            Ok(eta)
        };
        Self::new(close(z)?, close(x)?)
    }

    pub fn rows(&self) -> &[f64] {
        &self.rows
    }

    pub fn cols(&self) -> &[f64] {
        &self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    pub fn all_cells(&self) -> Vec<Cell> {
        let (nr, nc) = self.shape();
        (0..nr).flat_map(|r| (0..nc).map(move |c| (r, c))).collect()
    }

    fn check_cells(&self, cells: &[Cell]) -> Result<BTreeSet<Cell>> {
        if cells.is_empty() {
            return Err(Error::InvalidParameter("cell set is empty".into()));
        }
        let (nr, nc) = self.shape();
        if let Some(&(r, c)) = cells.iter().find(|&&(r, c)| r >= nr || c >= nc) {
            return Err(Error::InvalidParameter(format!(
                "cell ({r}, {c}) outside {nr}x{nc} grid"
            )));
        }
        Ok(cells.iter().copied().collect())
    }

    /// Residuals of a candidate grid against the marginals (max abs).
    pub fn marginal_residual(&self, grid: &[Vec<f64>]) -> f64 {
        let row_res = grid
            .iter()
            .zip(&self.rows)
            .map(|(row, &r)| (row.iter().sum::<f64>() - r).abs());
        let col_res = self
            .cols
            .iter()
            .enumerate()
            .map(|(c, &col)| (grid.iter().map(|row| row[c]).sum::<f64>() - col).abs());
        row_res.chain(col_res).fold(0.0, f64::max)
    }
}

/// An optimal value together with a feasible grid achieving it.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSolution {
    pub mass: f64,
    pub witness: Vec<Vec<f64>>,
}

pub fn product_set(rows: &[usize], cols: &[usize]) -> Vec<Cell> {
    rows.iter()
        .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
        .collect()
}

/// Splits `cells` into `R × C` if it is a product set.
pub fn as_product(cells: &[Cell]) -> Option<(Vec<usize>, Vec<usize>)> {
    let set: BTreeSet<Cell> = cells.iter().copied().collect();
    let rows: BTreeSet<usize> = set.iter().map(|c| c.0).collect();
    let cols: BTreeSet<usize> = set.iter().map(|c| c.1).collect();
    (rows.len() * cols.len() == set.len())
        .then(|| (rows.into_iter().collect(), cols.into_iter().collect()))
}

/// Fréchet lower bound `max(0, Σ row(R) + Σ col(C) − 1)` for a product set.
pub fn frechet_lower(grid: &MarginalGrid, rows: &[usize], cols: &[usize]) -> f64 {
    let r: f64 = rows.iter().map(|&i| grid.rows[i]).sum();
    let c: f64 = cols.iter().map(|&j| grid.cols[j]).sum();
    (r + c - 1.0).max(0.0)
}

/// Fréchet upper bound `min(Σ row(R), Σ col(C))` for a product set.
pub fn frechet_upper(grid: &MarginalGrid, rows: &[usize], cols: &[usize]) -> f64 {
    let r: f64 = rows.iter().map(|&i| grid.rows[i]).sum();
    let c: f64 = cols.iter().map(|&j| grid.cols[j]).sum();
    r.min(c)
}

pub fn grid_min_mass(grid: &MarginalGrid, cells: &[Cell]) -> Result<f64> {
    Ok(grid_min_witness(grid, cells)?.mass)
}

pub fn grid_max_mass(grid: &MarginalGrid, cells: &[Cell]) -> Result<f64> {
    Ok(grid_max_witness(grid, cells)?.mass)
}

/// Minimum of `Σ_{cells} G` over feasible grids, with a grid attaining it.
pub fn grid_min_witness(grid: &MarginalGrid, cells: &[Cell]) -> Result<GridSolution> {
    let target = grid.check_cells(cells)?;
    let complement: BTreeSet<Cell> = grid
        .all_cells()
        .into_iter()
        .filter(|c| !target.contains(c))
        .collect();
    let witness = complete(grid, max_flow(grid, &complement));
    Ok(GridSolution {
        mass: cell_mass(&witness, &target),
        witness,
    })
}

/// Maximum of `Σ_{cells} G` over feasible grids, with a grid attaining it.
pub fn grid_max_witness(grid: &MarginalGrid, cells: &[Cell]) -> Result<GridSolution> {
    let target = grid.check_cells(cells)?;
    let witness = complete(grid, max_flow(grid, &target));
    Ok(GridSolution {
        mass: cell_mass(&witness, &target),
        witness,
    })
}

fn cell_mass(witness: &[Vec<f64>], cells: &BTreeSet<Cell>) -> f64 {
    cells.iter().map(|&(r, c)| witness[r][c]).sum()
}

/// Edmonds–Karp on source → rows → (allowed cells) → cols → sink.
/// Returns the row-to-column flow as a grid.
#[allow(clippy::needless_range_loop)]
fn max_flow(grid: &MarginalGrid, allowed: &BTreeSet<Cell>) -> Vec<Vec<f64>> {
    let (nr, nc) = grid.shape();
    let n = nr + nc + 2;
    let (source, sink) = (nr + nc, nr + nc + 1);
    let row = |r: usize| r;
    let col = |c: usize| nr + c;

    let mut cap = vec![vec![0.0f64; n]; n];
    for r in 0..nr {
        cap[source][row(r)] = grid.rows[r];
    }
    for c in 0..nc {
        cap[col(c)][sink] = grid.cols[c];
    }
    for &(r, c) in allowed {
        cap[row(r)][col(c)] = f64::INFINITY;
    }
    let mut flow = vec![vec![0.0f64; n]; n];
    let residual =
        |cap: &Vec<Vec<f64>>, flow: &Vec<Vec<f64>>, u: usize, v: usize| cap[u][v] - flow[u][v];

    loop {
        let mut parent = vec![usize::MAX; n];
        parent[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for v in 0..n {
                if parent[v] == usize::MAX && residual(&cap, &flow, u, v) > FLOW_EPS {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[sink] == usize::MAX {
            break;
        }
        let mut bottleneck = f64::INFINITY;
        let mut v = sink;
        while v != source {
            let u = parent[v];
            bottleneck = bottleneck.min(residual(&cap, &flow, u, v));
            v = u;
        }
        let mut v = sink;
        while v != source {
            let u = parent[v];
            flow[u][v] += bottleneck;
            flow[v][u] -= bottleneck;
            v = u;
        }
    }

    (0..nr)
        .map(|r| (0..nc).map(|c| flow[row(r)][col(c)].max(0.0)).collect())
        .collect()
}

/// Adds the northwest-corner fill of the leftover marginals to a partial grid.
fn complete(grid: &MarginalGrid, mut partial: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let (nr, nc) = grid.shape();
    let mut rows: Vec<f64> = (0..nr)
        .map(|r| (grid.rows[r] - partial[r].iter().sum::<f64>()).max(0.0))
        .collect();
    let mut cols: Vec<f64> = (0..nc)
        .map(|c| (grid.cols[c] - partial.iter().map(|row| row[c]).sum::<f64>()).max(0.0))
        .collect();
    let (mut r, mut c) = (0, 0);
    while r < nr && c < nc {
        let q = rows[r].min(cols[c]);
        partial[r][c] += q;
        rows[r] -= q;
        cols[c] -= q;
        if rows[r] <= FLOW_EPS {
            r += 1;
        } else {
            c += 1;
        }
    }
    partial
}
