//! Dense revised simplex for `max c x` subject to `A x <= b`, `0 <= x <= 1`
//! with `b >= 0`.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const TOLERANCE: f64 = 1e-9;
const PIVOT_TOLERANCE: f64 = 1e-9;
const REFACTOR_PERIOD: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpRow {
    pub coefficients: Vec<(usize, f64)>,
    pub rhs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpModel {
    num_vars: usize,
    objective: Vec<f64>,
    rows: Vec<LpRow>,
}

impl LpModel {
    /// `max Σ x_v` over `[0, 1]^n` with no rows yet.
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            objective: vec![1.0; num_vars],
            rows: Vec::new(),
        }
    }

    pub fn with_objective(objective: Vec<f64>) -> Self {
        Self {
            num_vars: objective.len(),
            objective,
            rows: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[LpRow] {
        &self.rows
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    /// Adds `Σ a_v x_v <= rhs`. The rhs must be finite and nonnegative so
    /// that `x = 0` stays feasible.
    pub fn add_row(
        &mut self,
        coefficients: impl IntoIterator<Item = (usize, f64)>,
        rhs: f64,
    ) -> Result<()> {
        if !rhs.is_finite() || rhs < 0.0 {
            return Err(Error::InvalidParams(format!(
                "row rhs {rhs} must be finite and nonnegative"
            )));
        }
        let mut coefficients: Vec<(usize, f64)> = coefficients
            .into_iter()
            .filter(|&(_, a)| a != 0.0)
            .collect();
        coefficients.sort_by_key(|&(v, _)| v);
        for w in coefficients.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidParams(format!(
                    "variable {} repeated in a row",
                    w[0].0
                )));
            }
        }
        for &(v, a) in &coefficients {
            if v >= self.num_vars {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.num_vars,
                });
            }
            if !a.is_finite() {
                return Err(Error::InvalidParams(
                    "row coefficients must be finite".into(),
                ));
            }
        }
        self.rows.push(LpRow { coefficients, rhs });
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    /// Iteration limit or deadline reached; the solution is the last
    /// feasible basis.
    Stalled,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: f64,
    pub x: Vec<f64>,
    pub iterations: usize,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct LpOptions {
    /// Defaults to `50 (n + m) + 1000`.
    pub max_iterations: Option<usize>,
    pub deadline: Option<Instant>,
}

pub fn lp_solve(model: &LpModel) -> LpSolution {
    lp_solve_with(model, LpOptions::default())
}

pub fn lp_solve_with(model: &LpModel, options: LpOptions) -> LpSolution {
    LpSolver::new(model.clone()).solve(options)
}

/// An LP that keeps its basis between solves, so re-solving after adding
/// rows starts from the previous optimum.
///
/// Internally the dual `min b y + 1 z` s.t. `A^T y + z >= c`, `y, z >= 0` is
/// solved with a basis of size `n`, which keeps long row lists cheap; new
/// rows are new dual columns and leave the basis feasible. The primal point
/// is recovered from the dual's row prices.
pub struct LpSolver {
    model: LpModel,
    simplex: Simplex,
}

impl LpSolver {
    pub fn new(model: LpModel) -> Self {
        let simplex = Simplex::dual_of(&model);
        Self { model, simplex }
    }

    pub fn model(&self) -> &LpModel {
        &self.model
    }

    pub fn add_row(
        &mut self,
        coefficients: impl IntoIterator<Item = (usize, f64)>,
        rhs: f64,
    ) -> Result<()> {
        self.model.add_row(coefficients, rhs)?;
        let row = self.model.rows.last().expect("row was just added");
        self.simplex.add_column(row.coefficients.clone(), -row.rhs);
        Ok(())
    }

    pub fn solve(&mut self, options: LpOptions) -> LpSolution {
        let s = &mut self.simplex;
        let limit = options.max_iterations.unwrap_or(50 * (s.n + s.m) + 1000);
        s.iterations = 0;
        let status = s.run(limit, options.deadline);
        let x: Vec<f64> = s
            .duals()
            .into_iter()
            .map(|p| (-p).clamp(0.0, 1.0))
            .collect();
        let value = x
            .iter()
            .zip(&self.model.objective)
            .map(|(a, b)| a * b)
            .sum();
        LpSolution {
            status,
            value,
            x,
            iterations: s.iterations,
        }
    }
}

/// Primal simplex for `max c v` s.t. `M v = r`, `v >= 0`, started from a
/// basis of signed unit columns. `m` is the number of rows, `n` the number
/// of columns.
struct Simplex {
    m: usize,
    n: usize,
    cols: Vec<Vec<(usize, f64)>>,
    cost: Vec<f64>,
    r: Vec<f64>,
    basis: Vec<usize>,
    /// Row of each basic column, `usize::MAX` when nonbasic.
    row_of: Vec<usize>,
    /// `B^{-1}`, row major.
    binv: Vec<f64>,
    xb: Vec<f64>,
    iterations: usize,
}

impl Simplex {
    /// Columns are `y_i` (one per model row), then `z_j`, then surplus `s_j`.
    fn dual_of(model: &LpModel) -> Self {
        let (nv, nr) = (model.num_vars, model.rows.len());
        let mut cols: Vec<Vec<(usize, f64)>> = Vec::with_capacity(nr + 2 * nv);
        let mut cost = Vec::with_capacity(nr + 2 * nv);
        for row in &model.rows {
            cols.push(row.coefficients.clone());
            cost.push(-row.rhs);
        }
        for j in 0..nv {
            cols.push(vec![(j, 1.0)]);
            cost.push(-1.0);
        }
        for j in 0..nv {
            cols.push(vec![(j, -1.0)]);
            cost.push(0.0);
        }
        let m = nv;
        let n = cols.len();
        let r = model.objective.clone();
        let mut binv = vec![0.0; m * m];
        let mut basis = Vec::with_capacity(m);
        let mut row_of = vec![usize::MAX; n];
        let mut xb = Vec::with_capacity(m);
        for j in 0..m {
            // z_j covers c_j >= 0, the surplus covers c_j < 0.
            let (col, sign) = if r[j] >= 0.0 {
                (nr + j, 1.0)
            } else {
                (nr + nv + j, -1.0)
            };
            binv[j * m + j] = sign;
            basis.push(col);
            row_of[col] = j;
            xb.push(r[j] * sign);
        }
        Self {
            m,
            n,
            cols,
            cost,
            r,
            basis,
            row_of,
            binv,
            xb,
            iterations: 0,
        }
    }

    fn add_column(&mut self, col: Vec<(usize, f64)>, cost: f64) {
        self.cols.push(col);
        self.cost.push(cost);
        self.row_of.push(usize::MAX);
        self.n += 1;
    }

    /// `B^{-1} M_j`.
    fn ftran(&self, j: usize) -> Vec<f64> {
        let m = self.m;
        let col = &self.cols[j];
        (0..m)
            .map(|r| col.iter().map(|&(i, a)| self.binv[r * m + i] * a).sum())
            .collect()
    }

    /// Row prices `c_B^T B^{-1}`.
    fn duals(&self) -> Vec<f64> {
        let m = self.m;
        let mut y = vec![0.0; m];
        for r in 0..m {
            let c = self.cost[self.basis[r]];
            if c != 0.0 {
                let row = &self.binv[r * m..(r + 1) * m];
                for (yi, bi) in y.iter_mut().zip(row) {
                    *yi += c * bi;
                }
            }
        }
        y
    }

    fn choose_entering(&self, bland: bool) -> Option<usize> {
        let y = self.duals();
        let mut best: Option<(usize, f64)> = None;
        for j in 0..self.n {
            if self.row_of[j] != usize::MAX {
                continue;
            }
            let d = self.cost[j] - self.cols[j].iter().map(|&(i, a)| y[i] * a).sum::<f64>();
            if d <= TOLERANCE {
                continue;
            }
            if bland {
                return Some(j);
            }
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some((j, d));
            }
        }
        best.map(|(j, _)| j)
    }

    fn run(&mut self, limit: usize, deadline: Option<Instant>) -> LpStatus {
        // Pivots since the objective last improved by more than the
        // tolerance; a long run means degenerate or numerically circular
        // pivoting, and Bland's rule takes over.
        let mut degenerate_run = 0;
        let mut objective = f64::NEG_INFINITY;
        let mut since_refactor = 0;
        loop {
            if self.iterations >= limit || deadline.is_some_and(|d| Instant::now() >= d) {
                return LpStatus::Stalled;
            }
            let bland = degenerate_run > 5 * self.m.max(1);
            let Some(q) = self.choose_entering(bland) else {
                return LpStatus::Optimal;
            };
            self.iterations += 1;
            let alpha = self.ftran(q);
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.m {
                let a = alpha[r];
                if a <= PIVOT_TOLERANCE {
                    continue;
                }
                let ratio = self.xb[r].max(0.0) / a;
                let better = match leave {
                    None => true,
                    Some((lr, theta)) => {
                        ratio < theta - TOLERANCE
                            || (ratio <= theta + TOLERANCE
                                && if bland {
                                    self.basis[r] < self.basis[lr]
                                } else {
                                    a > alpha[lr]
                                })
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((r, theta)) = leave else {
                // Unbounded dual means an infeasible primal, which the
                // nonnegative right-hand sides rule out.
                return LpStatus::Stalled;
            };
            for (x, a) in self.xb.iter_mut().zip(&alpha) {
                *x -= theta * a;
                if *x < 0.0 && *x > -TOLERANCE {
                    *x = 0.0;
                }
            }
            self.xb[r] = theta;
            let out = self.basis[r];
            self.pivot(r, &alpha);
            self.row_of[out] = usize::MAX;
            self.basis[r] = q;
            self.row_of[q] = r;
            since_refactor += 1;
            if since_refactor >= REFACTOR_PERIOD {
                since_refactor = 0;
                self.refactor();
            }
            let value: f64 = self
                .basis
                .iter()
                .zip(&self.xb)
                .map(|(&j, &x)| self.cost[j] * x)
                .sum();
            if value > objective + TOLERANCE * (1.0 + objective.abs()) {
                objective = value;
                degenerate_run = 0;
            } else {
                degenerate_run += 1;
            }
        }
    }

    fn pivot(&mut self, r: usize, alpha: &[f64]) {
        let m = self.m;
        let p = alpha[r];
        for k in 0..m {
            self.binv[r * m + k] /= p;
        }
        let pivot_row: Vec<f64> = self.binv[r * m..(r + 1) * m].to_vec();
        for (i, &a) in alpha.iter().enumerate() {
            if i == r || a == 0.0 {
                continue;
            }
            let row = &mut self.binv[i * m..(i + 1) * m];
            for (x, pr) in row.iter_mut().zip(&pivot_row) {
                *x -= a * pr;
            }
        }
    }

    /// Rebuilds `B^{-1}` and `x_B` from scratch to shed accumulated error.
    fn refactor(&mut self) {
        let m = self.m;
        // Gauss-Jordan on [B | I].
        let mut a = vec![0.0; m * m];
        for (c, &j) in self.basis.iter().enumerate() {
            for &(i, v) in &self.cols[j] {
                a[i * m + c] = v;
            }
        }
        let mut inv = vec![0.0; m * m];
        for i in 0..m {
            inv[i * m + i] = 1.0;
        }
        for c in 0..m {
            let p = (c..m)
                .max_by(|&x, &y| a[x * m + c].abs().total_cmp(&a[y * m + c].abs()))
                .expect("nonempty range");
            if a[p * m + c].abs() < 1e-12 {
                // Singular in floating point; keep the updated inverse.
                return;
            }
            if p != c {
                for k in 0..m {
                    a.swap(p * m + k, c * m + k);
                    inv.swap(p * m + k, c * m + k);
                }
            }
            let d = a[c * m + c];
            for k in 0..m {
                a[c * m + k] /= d;
                inv[c * m + k] /= d;
            }
            for i in 0..m {
                let f = a[i * m + c];
                if i == c || f == 0.0 {
                    continue;
                }
                for k in 0..m {
                    a[i * m + k] -= f * a[c * m + k];
                    inv[i * m + k] -= f * inv[c * m + k];
                }
            }
        }
        self.binv = inv;
        for r in 0..m {
            self.xb[r] = (0..m).map(|i| self.binv[r * m + i] * self.r[i]).sum();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_model(n: usize, edges: &[(usize, usize)]) -> LpModel {
        let mut m = LpModel::new(n);
        for &(u, v) in edges {
            m.add_row([(u, 1.0), (v, 1.0)], 1.0).unwrap();
        }
        m
    }

    #[test]
    fn k3_clique_row() {
        let mut m = LpModel::new(3);
        m.add_row([(0, 1.0), (1, 1.0), (2, 1.0)], 1.0).unwrap();
        let s = lp_solve(&m);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value - 1.0).abs() < 1e-9);
        assert!(s
            .x
            .iter()
            .all(|&x| x.abs() < 1e-9 || (x - 1.0).abs() < 1e-9));
    }

    #[test]
    fn k3_edges_half() {
        let s = lp_solve(&edge_model(3, &[(0, 1), (1, 2), (0, 2)]));
        assert!((s.value - 1.5).abs() < 1e-9);
        assert!(s.x.iter().all(|&x| (x - 0.5).abs() < 1e-9));
    }

    #[test]
    fn c5_edges() {
        let s = lp_solve(&edge_model(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]));
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value - 2.5).abs() < 1e-9);
    }

    #[test]
    fn no_rows_hits_upper_bounds() {
        let s = lp_solve(&LpModel::new(4));
        assert_eq!(s.value, 4.0);
    }

    #[test]
    fn negative_objective_stays_at_zero() {
        let mut m = LpModel::with_objective(vec![-1.0, 2.0]);
        m.add_row([(0, 1.0), (1, 1.0)], 1.5).unwrap();
        let s = lp_solve(&m);
        assert!((s.value - 2.0).abs() < 1e-9);
        assert_eq!(s.x, vec![0.0, 1.0]);
    }

    #[test]
    fn row_validation() {
        let mut m = LpModel::new(2);
        assert!(m.add_row([(0, 1.0)], -1.0).is_err());
        assert!(m.add_row([(2, 1.0)], 1.0).is_err());
        assert!(m.add_row([(0, 1.0), (0, 1.0)], 1.0).is_err());
        assert!(m.add_row([(0, 1.0)], f64::INFINITY).is_err());
    }

    #[test]
    fn warm_start_matches_cold_solve() {
        let mut solver = LpSolver::new(edge_model(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]));
        assert!((solver.solve(LpOptions::default()).value - 2.5).abs() < 1e-9);
        solver.add_row((0..5).map(|v| (v, 1.0)), 2.0).unwrap();
        let warm = solver.solve(LpOptions::default());
        assert!((warm.value - 2.0).abs() < 1e-9);
        assert!((lp_solve(solver.model()).value - warm.value).abs() < 1e-9);
    }

    #[test]
    fn iteration_limit_reports_stall() {
        let m = edge_model(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let s = lp_solve_with(
            &m,
            LpOptions {
                max_iterations: Some(1),
                deadline: None,
            },
        );
        assert_eq!(s.status, LpStatus::Stalled);
    }
}
