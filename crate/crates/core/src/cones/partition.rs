//! Simplicial partition of the standard simplex for the copositivity test.
//!
//! A cell is a simplex with vertices v_0..v_{n-1} (points of the standard
//! simplex) together with its vertex matrix G = VᵀAV. Since
//! xᵀAx = λᵀGλ for x = Vλ, λ in the unit simplex:
//!
//! * min G ≥ −thr certifies the cell,
//! * a vertex with G_ii < −thr refutes copositivity,
//! * otherwise the longest edge is bisected.
//!
//! Cells at the depth cap are solved exactly on G (a standard QP in the
//! barycentric coordinates) when the order allows it.

use super::stqp::{stqp_min, MAX_ENUM_ORDER};
use crate::numkern::{SymMat, Tolerance};

#[derive(Debug, Clone, Copy)]
pub struct PartitionOptions {
    pub max_depth: usize,
    pub max_cells: usize,
    /// Solve depth-capped cells exactly instead of giving up on them.
    pub exact_leaves: bool,
}

impl Default for PartitionOptions {
    fn default() -> Self {
        PartitionOptions {
            max_depth: 40,
            max_cells: 2_000_000,
            exact_leaves: true,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Outcome {
    Certified,
    Violation {
        x: Vec<f64>,
    },
    Unresolved {
        unresolved_cells: usize,
        budget_exhausted: bool,
    },
}

#[derive(Debug, Clone)]
pub struct PartitionResult {
    pub outcome: Outcome,
    /// Smallest min(G) over certified cells (or exact leaf minimum).
    pub lower_bound: f64,
    pub best_point: Vec<f64>,
    pub best_value: f64,
    pub cells: usize,
    pub exact_leaves_solved: usize,
}

struct Cell {
    verts: Vec<Vec<f64>>,
    g: SymMat,
    depth: usize,
}

fn longest_edge(verts: &[Vec<f64>]) -> (usize, usize) {
    let n = verts.len();
    let mut best = (0, 1);
    let mut best_len = -1.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let d: f64 = verts[i].iter().zip(&verts[j]).map(|(a, b)| (a - b) * (a - b)).sum();
            // strict: ties keep the lowest (i, j)
            if d > best_len * (1.0 + 1e-12) {
                best_len = d;
                best = (i, j);
            }
        }
    }
    best
}

/// Child cell where vertex `slot` is replaced by the midpoint of edge (i, j).
fn child(cell: &Cell, i: usize, j: usize, slot: usize) -> Cell {
    let n = cell.verts.len();
    let g = &cell.g;
    let mid: Vec<f64> = cell.verts[i]
        .iter()
        .zip(&cell.verts[j])
        .map(|(a, b)| 0.5 * (a + b))
        .collect();
    let mut verts = cell.verts.clone();
    verts[slot] = mid;
    let mut ng = g.clone();
    for k in 0..n {
        if k != slot {
            ng.set(slot, k, 0.5 * (g.get(i, k) + g.get(j, k)));
        }
    }
    ng.set(slot, slot, 0.25 * (g.get(i, i) + 2.0 * g.get(i, j) + g.get(j, j)));
    Cell {
        verts,
        g: ng,
        depth: cell.depth + 1,
    }
}

fn combine(verts: &[Vec<f64>], lambda: &[f64]) -> Vec<f64> {
    let n = verts[0].len();
    let mut x = vec![0.0; n];
    for (v, l) in verts.iter().zip(lambda) {
        for k in 0..n {
            x[k] += l * v[k];
        }
    }
    let s: f64 = x.iter().sum();
    x.iter_mut().for_each(|c| *c /= s);
    x
}

pub fn search(a: &SymMat, tol: Tolerance, opts: PartitionOptions) -> PartitionResult {
    let n = a.n();
    let thr = tol.threshold(a.max_abs());
    let exact = opts.exact_leaves && n <= MAX_ENUM_ORDER;

    let root = Cell {
        verts: (0..n)
            .map(|i| (0..n).map(|k| if k == i { 1.0 } else { 0.0 }).collect())
            .collect(),
        g: a.clone(),
        depth: 0,
    };
    let mut res = PartitionResult {
        outcome: Outcome::Certified,
        lower_bound: f64::INFINITY,
        best_point: Vec::new(),
        best_value: f64::INFINITY,
        cells: 0,
        exact_leaves_solved: 0,
    };
    let note = |res: &mut PartitionResult, x: &[f64], value: f64| {
        if value < res.best_value {
            res.best_value = value;
            res.best_point = x.to_vec();
        }
    };

    // vertices of the root: a negative diagonal entry refutes immediately
    let mut worst: Option<(usize, f64)> = None;
    for i in 0..n {
        let d = a.get(i, i);
        note(&mut res, &root.verts[i], d);
        if d < -thr && worst.map_or(true, |(_, w)| d < w) {
            worst = Some((i, d));
        }
    }
    if let Some((i, _)) = worst {
        res.cells = 1;
        res.outcome = Outcome::Violation {
            x: root.verts[i].clone(),
        };
        return res;
    }

    let mut stack = vec![root];
    let mut unresolved = 0usize;
    while let Some(cell) = stack.pop() {
        res.cells += 1;
        let gmin = cell.g.min_entry();
        if gmin >= -thr {
            res.lower_bound = res.lower_bound.min(gmin);
            continue;
        }
        if cell.depth >= opts.max_depth {
            if exact {
                res.exact_leaves_solved += 1;
                let (v, lambda) = stqp_min(&cell.g);
                let x = combine(&cell.verts, &lambda);
                let direct = a.quad_form(&x);
                note(&mut res, &x, direct);
                if v < -thr && direct < -thr {
                    res.outcome = Outcome::Violation { x };
                    return res;
                }
                res.lower_bound = res.lower_bound.min(v);
            } else {
                unresolved += 1;
            }
            continue;
        }
        if res.cells >= opts.max_cells {
            res.outcome = Outcome::Unresolved {
                unresolved_cells: unresolved + 1 + stack.len(),
                budget_exhausted: true,
            };
            return res;
        }
        let (i, j) = longest_edge(&cell.verts);
        let first = child(&cell, i, j, i);
        let second = child(&cell, i, j, j);
        // the midpoint is the only new vertex, shared by both children
        let mval = first.g.get(i, i);
        note(&mut res, &first.verts[i], mval);
        if mval < -thr {
            let x = first.verts[i].clone();
            if a.quad_form(&x) < -thr {
                res.outcome = Outcome::Violation { x };
                return res;
            }
        }
        stack.push(second);
        stack.push(first);
    }
    if unresolved > 0 {
        res.outcome = Outcome::Unresolved {
            unresolved_cells: unresolved,
            budget_exhausted: false,
        };
    }
    res
}
