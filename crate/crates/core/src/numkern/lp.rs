//! Dense two-phase simplex for small problems of the form
//!
//! ```text
//! minimize cᵀx  subject to  A_eq x = b_eq,  A_le x <= b_le,  x >= 0
//! ```
//!
//! Pricing is Dantzig's rule; after a run of degenerate pivots the solver
//! switches to Bland's rule for the rest of the phase.

use super::NumError;

pub const MAX_LP_VARS: usize = 64;
const MAX_PIVOTS: usize = 20_000;
const DEGENERATE_RUN_BEFORE_BLAND: usize = 50;

#[derive(Debug, Clone, Default)]
pub struct LpProblem {
    pub num_vars: usize,
    pub eq: Vec<(Vec<f64>, f64)>,
    pub le: Vec<(Vec<f64>, f64)>,
    /// Minimized objective; `None` means pure feasibility.
    pub objective: Option<Vec<f64>>,
}

impl LpProblem {
    pub fn new(num_vars: usize) -> Self {
        LpProblem {
            num_vars,
            ..Default::default()
        }
    }

    pub fn equality(mut self, row: Vec<f64>, rhs: f64) -> Self {
        self.eq.push((row, rhs));
        self
    }

    pub fn at_most(mut self, row: Vec<f64>, rhs: f64) -> Self {
        self.le.push((row, rhs));
        self
    }

    pub fn minimize(mut self, c: Vec<f64>) -> Self {
        self.objective = Some(c);
        self
    }

    /// Conic membership: is `target` a nonnegative combination of `generators`?
    pub fn cone_membership(generators: &[Vec<f64>], target: &[f64]) -> Self {
        let mut p = LpProblem::new(generators.len());
        for (i, t) in target.iter().enumerate() {
            p.eq.push((generators.iter().map(|g| g[i]).collect(), *t));
        }
        p
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LpOptions {
    pub pivot_tol: f64,
    /// Phase-one objective allowed per unit of max |b|.
    pub feas_tol: f64,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions {
            pivot_tol: 1e-10,
            feas_tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Feasible { x: Vec<f64>, objective: f64 },
    Infeasible { phase_one_residual: f64 },
    Unbounded,
}

impl LpOutcome {
    pub fn point(&self) -> Option<&[f64]> {
        match self {
            LpOutcome::Feasible { x, .. } => Some(x),
            _ => None,
        }
    }
}

pub fn lp_feasible(problem: &LpProblem) -> Result<LpOutcome, NumError> {
    lp_solve(problem, LpOptions::default())
}

struct Tableau {
    rows: Vec<Vec<f64>>, // constraint rows, last entry is rhs
    basis: Vec<usize>,
    width: usize, // number of columns excluding rhs
}

impl Tableau {
    fn rhs(&self, r: usize) -> f64 {
        self.rows[r][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize, cost: &mut [f64]) {
        let piv = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= piv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (v, p) in row.iter_mut().zip(&prow) {
                    *v -= f * p;
                }
                row[c] = 0.0;
            }
        }
        let f = cost[c];
        if f != 0.0 {
            for (v, p) in cost.iter_mut().zip(&prow) {
                *v -= f * p;
            }
            cost[c] = 0.0;
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations on reduced-cost row `cost` (length width+1,
    /// last entry is minus the objective value). Columns with `allowed[j]`
    /// false never enter.
    fn optimize(&mut self, cost: &mut [f64], allowed: &[bool], opts: &LpOptions) -> Result<bool, NumError> {
        let mut degenerate_run = 0usize;
        let mut bland = false;
        for _ in 0..MAX_PIVOTS {
            let entering = if bland {
                (0..self.width).find(|&j| allowed[j] && cost[j] < -opts.pivot_tol)
            } else {
                let mut best: Option<(usize, f64)> = None;
                for j in 0..self.width {
                    if allowed[j] && cost[j] < -opts.pivot_tol && best.map_or(true, |(_, b)| cost[j] < b) {
                        best = Some((j, cost[j]));
                    }
                }
                best.map(|b| b.0)
            };
            let Some(c) = entering else {
                return Ok(true);
            };
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.rows.len() {
                let a = self.rows[r][c];
                if a > opts.pivot_tol {
                    let ratio = self.rhs(r).max(0.0) / a;
                    match leave {
                        None => leave = Some((r, ratio)),
                        Some((lr, lv)) => {
                            if ratio < lv - 1e-15 || (ratio <= lv + 1e-15 && self.basis[r] < self.basis[lr]) {
                                leave = Some((r, ratio));
                            }
                        }
                    }
                }
            }
            let Some((r, ratio)) = leave else {
                return Ok(false);
            };
            if ratio <= 1e-15 {
                degenerate_run += 1;
                if degenerate_run >= DEGENERATE_RUN_BEFORE_BLAND {
                    bland = true;
                }
            } else {
                degenerate_run = 0;
            }
            self.pivot(r, c, cost);
        }
        Err(NumError::LpCycling)
    }
}

pub fn lp_solve(problem: &LpProblem, opts: LpOptions) -> Result<LpOutcome, NumError> {
    let nv = problem.num_vars;
    if nv > MAX_LP_VARS {
        return Err(NumError::LpTooLarge(nv));
    }
    for (row, _) in problem.eq.iter().chain(&problem.le) {
        if row.len() != nv {
            return Err(NumError::Shape(format!(
                "constraint row has {} coefficients, expected {nv}",
                row.len()
            )));
        }
    }
    let ns = problem.le.len();
    let m = problem.eq.len() + ns;
    let width = nv + ns + m;
    let art0 = nv + ns;

    let mut rows = Vec::with_capacity(m);
    for (k, (a, b)) in problem.eq.iter().chain(&problem.le).enumerate() {
        let mut row = vec![0.0; width + 1];
        row[..nv].copy_from_slice(a);
        if k >= problem.eq.len() {
            row[nv + (k - problem.eq.len())] = 1.0;
        }
        row[width] = *b;
        if *b < 0.0 {
            for v in row.iter_mut() {
                *v = -*v;
            }
        }
        row[art0 + k] = 1.0;
        rows.push(row);
    }
    let bscale = rows.iter().fold(0.0f64, |s, r| s.max(r[width].abs()));
    let mut t = Tableau {
        rows,
        basis: (art0..art0 + m).collect(),
        width,
    };

    // phase one: minimize the sum of artificials
    let mut cost = vec![0.0; width + 1];
    for r in &t.rows {
        for j in 0..art0 {
            cost[j] -= r[j];
        }
        cost[width] -= r[width];
    }
    let all = vec![true; width];
    t.optimize(&mut cost, &all, &opts)?;
    let residual = -cost[width];
    if residual > opts.feas_tol * (1.0 + bscale) {
        return Ok(LpOutcome::Infeasible {
            phase_one_residual: residual,
        });
    }

    // drive artificials out of the basis where possible
    let mut dummy = vec![0.0; width + 1];
    for r in 0..m {
        if t.basis[r] >= art0 {
            if let Some(c) = (0..art0).find(|&j| t.rows[r][j].abs() > opts.pivot_tol) {
                t.pivot(r, c, &mut dummy);
            }
        }
    }

    // phase two
    let c = problem.objective.clone().unwrap_or_else(|| vec![0.0; nv]);
    let mut cost = vec![0.0; width + 1];
    cost[..nv].copy_from_slice(&c);
    for r in 0..m {
        let b = t.basis[r];
        let f = cost[b];
        if f != 0.0 {
            let row = t.rows[r].clone();
            for (v, p) in cost.iter_mut().zip(&row) {
                *v -= f * p;
            }
        }
    }
    let allowed: Vec<bool> = (0..width).map(|j| j < art0).collect();
    if !t.optimize(&mut cost, &allowed, &opts)? {
        return Ok(LpOutcome::Unbounded);
    }
    let mut x = vec![0.0; nv];
    for r in 0..m {
        if t.basis[r] < nv {
            x[t.basis[r]] = t.rhs(r).max(0.0);
        }
    }
    let objective = c.iter().zip(&x).map(|(a, b)| a * b).sum();
    Ok(LpOutcome::Feasible { x, objective })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_feasible() {
        let p = LpProblem::new(2).equality(vec![1.0, 1.0], 1.0);
        let out = lp_feasible(&p).unwrap();
        let x = out.point().unwrap();
        assert!((x[0] + x[1] - 1.0).abs() < 1e-12);
        assert!(x.iter().all(|v| *v >= 0.0));
    }

    #[test]
    fn negative_rhs_infeasible() {
        let p = LpProblem::new(1).equality(vec![1.0], -1.0);
        assert!(matches!(lp_feasible(&p).unwrap(), LpOutcome::Infeasible { .. }));
    }

    #[test]
    fn cone_generator_membership() {
        let e = |idx: &[usize]| {
            let mut v = vec![0.0; 6];
            for &i in idx {
                v[i] = 1.0;
            }
            v
        };
        let gens = vec![e(&[0, 1]), e(&[1, 2]), e(&[5])];
        let p = LpProblem::cone_membership(&gens, &e(&[0, 1]));
        let x = lp_feasible(&p).unwrap().point().unwrap().to_vec();
        assert!((x[0] - 1.0).abs() < 1e-12 && x[1].abs() < 1e-12 && x[2].abs() < 1e-12);

        let p = LpProblem::cone_membership(&gens, &e(&[0, 2]));
        assert!(matches!(lp_feasible(&p).unwrap(), LpOutcome::Infeasible { .. }));
    }

    #[test]
    fn minimizes_with_inequalities() {
        // min -x - y s.t. x + 2y <= 4, 3x + y <= 6
        let p = LpProblem::new(2)
            .at_most(vec![1.0, 2.0], 4.0)
            .at_most(vec![3.0, 1.0], 6.0)
            .minimize(vec![-1.0, -1.0]);
        match lp_feasible(&p).unwrap() {
            LpOutcome::Feasible { x, objective } => {
                assert!((x[0] - 1.6).abs() < 1e-12 && (x[1] - 1.2).abs() < 1e-12);
                assert!((objective + 2.8).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
        let unb = LpProblem::new(1).minimize(vec![-1.0]);
        assert_eq!(lp_feasible(&unb).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn too_many_variables() {
        assert!(matches!(
            lp_feasible(&LpProblem::new(65)),
            Err(NumError::LpTooLarge(65))
        ));
    }
}
