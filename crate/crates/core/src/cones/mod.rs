//! Membership tests for N_n, P_n, C_n, DNN and CS_n with checkable
//! certificates.
//!
//! Copositivity is decided by simplicial partition of the standard simplex
//! (see [`partition`]); CS_n membership is only ever certified by a factor.

mod partition;
mod stqp;

pub use partition::PartitionOptions;
pub use stqp::{kkt_points, stqp_min, KktPoint, MAX_ENUM_ORDER};

use serde::Serialize;
use thiserror::Error;

use crate::factor::NonnegFactor;
use crate::numkern::{psd_check, svd, SymMat, Tolerance};
use partition::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConeKind {
    Nonneg,
    Psd,
    Copositive,
    Dnn,
    Cp,
    CpInterior,
}

impl ConeKind {
    pub fn tag(&self) -> &'static str {
        match self {
            ConeKind::Nonneg => "NONNEG",
            ConeKind::Psd => "PSD",
            ConeKind::Copositive => "COPOSITIVE",
            ConeKind::Dnn => "DNN",
            ConeKind::Cp => "CP",
            ConeKind::CpInterior => "CP_INTERIOR",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Answer {
    In,
    NotIn,
    Undecided,
}

impl Answer {
    pub fn tag(&self) -> &'static str {
        match self {
            Answer::In => "IN",
            Answer::NotIn => "NOT_IN",
            Answer::Undecided => "UNDECIDED",
        }
    }
}

/// Rank-n factor with a strictly positive column, a sufficient condition for
/// VVᵀ ∈ int CS_n.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InteriorCertificate {
    pub factor: NonnegFactor,
    pub positive_column: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    None,
    /// Most negative entry of the matrix.
    NegativeEntry {
        i: usize,
        j: usize,
        value: f64,
    },
    /// Unit vector w with wᵀAw = value < 0.
    NegativeCurvature {
        vector: Vec<f64>,
        value: f64,
    },
    /// x ≥ 0, Σx = 1, xᵀAx = value < 0.
    ViolationVector {
        x: Vec<f64>,
        value: f64,
    },
    /// Every partition cell certified; xᵀAx ≥ lower_bound on the simplex.
    MinimumBound {
        lower_bound: f64,
        best_point: Vec<f64>,
        best_value: f64,
        cells: usize,
        exact_leaves: usize,
        /// Indices with nonnegative rows, dropped before partitioning.
        removed: Vec<usize>,
    },
    /// Search stopped with cells neither certified nor refuted.
    Unresolved {
        unresolved_cells: usize,
        budget_exhausted: bool,
        best_point: Vec<f64>,
        best_value: f64,
        cells: usize,
    },
    Dnn {
        min_entry: f64,
        min_eigenvalue: f64,
    },
    /// The principal block left after removing nonnegative rows is PSD.
    PsdBlock {
        min_eigenvalue: f64,
        removed: Vec<usize>,
    },
    Factor {
        factor: NonnegFactor,
        residual: f64,
    },
    Interior(InteriorCertificate),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConeVerdict {
    pub cone: ConeKind,
    pub answer: Answer,
    pub certificate: Certificate,
}

impl ConeVerdict {
    fn new(cone: ConeKind, answer: Answer, certificate: Certificate) -> Self {
        ConeVerdict {
            cone,
            answer,
            certificate,
        }
    }

    pub fn is_in(&self) -> bool {
        self.answer == Answer::In
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConeError {
    #[error("matrix is not copositive")]
    NotCopositive,
    #[error("order {0} exceeds the supported maximum {MAX_ENUM_ORDER}")]
    OrderTooLarge(usize),
}

impl ConeError {
    pub fn tag(&self) -> &'static str {
        match self {
            ConeError::NotCopositive => "NOT_COPOSITIVE",
            ConeError::OrderTooLarge(_) => "ORDER_TOO_LARGE",
        }
    }
}

/// Entrywise nonnegativity. NOT_IN names the most negative entry (lowest
/// (i, j) on ties).
pub fn is_nonneg(a: &SymMat, tol: Tolerance) -> ConeVerdict {
    let thr = tol.threshold(a.max_abs());
    let n = a.n();
    let mut worst: Option<(usize, usize, f64)> = None;
    for i in 0..n {
        for j in i..n {
            let v = a.get(i, j);
            if v < -thr && worst.map_or(true, |w| v < w.2) {
                worst = Some((i, j, v));
            }
        }
    }
    match worst {
        Some((i, j, value)) => ConeVerdict::new(
            ConeKind::Nonneg,
            Answer::NotIn,
            Certificate::NegativeEntry { i, j, value },
        ),
        None => ConeVerdict::new(ConeKind::Nonneg, Answer::In, Certificate::None),
    }
}

pub fn is_psd(a: &SymMat, tol: Tolerance) -> ConeVerdict {
    let c = psd_check(a, tol);
    match c.witness {
        Some(vector) => ConeVerdict::new(
            ConeKind::Psd,
            Answer::NotIn,
            Certificate::NegativeCurvature {
                value: a.quad_form(&vector),
                vector,
            },
        ),
        None => ConeVerdict::new(ConeKind::Psd, Answer::In, Certificate::None),
    }
}

pub fn is_copositive(a: &SymMat, tol: Tolerance, max_depth: usize) -> ConeVerdict {
    is_copositive_with(
        a,
        tol,
        PartitionOptions {
            max_depth,
            ..Default::default()
        },
    )
}

/// Indices whose rows are entrywise nonnegative, removed repeatedly: for
/// such i, xᵀAx ≥ x'ᵀA'x' with A' the principal submatrix without i, so A
/// is copositive iff A' is.
fn nonneg_rows(a: &SymMat) -> Vec<usize> {
    let n = a.n();
    let mut kept: Vec<usize> = (0..n).collect();
    loop {
        let before = kept.len();
        let snapshot = kept.clone();
        kept.retain(|&i| snapshot.iter().any(|&j| a.get(i, j) < 0.0));
        if kept.len() == before {
            break;
        }
    }
    (0..n).filter(|i| !kept.contains(i)).collect()
}

fn lift(x: &[f64], kept: &[usize], n: usize) -> Vec<f64> {
    let mut y = vec![0.0; n];
    for (k, &i) in kept.iter().enumerate() {
        y[i] = x[k];
    }
    y
}

pub fn is_copositive_with(a: &SymMat, tol: Tolerance, opts: PartitionOptions) -> ConeVerdict {
    assert!(opts.max_depth >= 1, "max_depth must be at least 1");
    let n = a.n();
    let removed = nonneg_rows(a);
    let kept: Vec<usize> = (0..n).filter(|i| !removed.contains(i)).collect();
    if kept.is_empty() {
        let best = (0..n).fold(0, |b, i| if a.get(i, i) < a.get(b, b) { i } else { b });
        let mut x = vec![0.0; n];
        x[best] = 1.0;
        return ConeVerdict::new(
            ConeKind::Copositive,
            Answer::In,
            Certificate::MinimumBound {
                lower_bound: 0.0,
                best_value: a.get(best, best),
                best_point: x,
                cells: 0,
                exact_leaves: 0,
                removed,
            },
        );
    }
    let sub = a.principal(&kept);
    // PSD implies copositive; the partition would crawl along the zero set
    let psd = psd_check(&sub, tol);
    if psd.is_psd {
        return ConeVerdict::new(
            ConeKind::Copositive,
            Answer::In,
            Certificate::PsdBlock {
                min_eigenvalue: psd.min_eigenvalue,
                removed,
            },
        );
    }
    let r = partition::search(&sub, tol, opts);
    let best_point = lift(&r.best_point, &kept, n);
    match r.outcome {
        Outcome::Certified => ConeVerdict::new(
            ConeKind::Copositive,
            Answer::In,
            Certificate::MinimumBound {
                // x'ᵀA'x' ≥ L‖x'‖₁² ≥ min(L, 0) on the full simplex
                lower_bound: if removed.is_empty() {
                    r.lower_bound
                } else {
                    r.lower_bound.min(0.0)
                },
                best_value: a.quad_form(&best_point),
                best_point,
                cells: r.cells,
                exact_leaves: r.exact_leaves_solved,
                removed,
            },
        ),
        Outcome::Violation { x } => {
            let x = lift(&x, &kept, n);
            let value = a.quad_form(&x);
            ConeVerdict::new(
                ConeKind::Copositive,
                Answer::NotIn,
                Certificate::ViolationVector { x, value },
            )
        }
        Outcome::Unresolved {
            unresolved_cells,
            budget_exhausted,
        } => ConeVerdict::new(
            ConeKind::Copositive,
            Answer::Undecided,
            Certificate::Unresolved {
                unresolved_cells,
                budget_exhausted,
                best_value: a.quad_form(&best_point),
                best_point,
                cells: r.cells,
            },
        ),
    }
}

/// Zeros x of the quadratic form on the unit simplex with [Ax]_k = 0 on the
/// support of x.
///
/// These are the KKT points of min xᵀAx on the faces of the simplex whose
/// value vanishes at tolerance, one per face, ordered by support bitmask
/// (bit i for index i). Continua of zeros are represented by the points
/// with minimal support.
pub fn copositive_boundary_zeros(a: &SymMat, tol: Tolerance) -> Result<Vec<Vec<f64>>, ConeError> {
    let n = a.n();
    if n > MAX_ENUM_ORDER {
        return Err(ConeError::OrderTooLarge(n));
    }
    if is_copositive(a, tol, 40).answer == Answer::NotIn {
        return Err(ConeError::NotCopositive);
    }
    let thr = tol.threshold(a.max_abs());
    let mut zeros: Vec<Vec<f64>> = Vec::new();
    for p in kkt_points(a, 0.0) {
        let x = p.x;
        let value = a.quad_form(&x);
        if value.abs() > thr {
            continue;
        }
        let ax = a.mul_vec(&x);
        let ok = (0..n).filter(|&k| x[k] > 0.0).all(|k| ax[k].abs() <= thr);
        if ok
            && !zeros
                .iter()
                .any(|z| z.iter().zip(&x).all(|(u, v)| (u - v).abs() <= 1e-9))
        {
            zeros.push(x);
        }
    }
    Ok(zeros)
}

/// Certificate for VVᵀ ∈ int CS_n: rank V = n and some column entrywise
/// positive. `None` means not proven, not that M is on the boundary.
pub fn cp_interior_certificate(v: &NonnegFactor, tol: Tolerance) -> Option<InteriorCertificate> {
    let n = v.n();
    if v.p() < n {
        return None;
    }
    let s = svd(&v.to_mat());
    let smax = s.sigma.iter().fold(0.0f64, |m, x| m.max(*x));
    let thr = tol.threshold(smax);
    let rank = s.sigma.iter().filter(|x| **x > thr).count();
    if rank < n {
        return None;
    }
    let ethr = tol.threshold(v.max_entry());
    let positive_column = (0..v.p()).find(|&j| v.column(j).iter().all(|x| *x > ethr))?;
    Some(InteriorCertificate {
        factor: v.clone(),
        positive_column,
        rank,
    })
}

pub fn is_dnn(m: &SymMat, tol: Tolerance) -> ConeVerdict {
    let nn = is_nonneg(m, tol);
    if !nn.is_in() {
        return ConeVerdict::new(ConeKind::Dnn, Answer::NotIn, nn.certificate);
    }
    let c = psd_check(m, tol);
    match c.witness {
        Some(vector) => ConeVerdict::new(
            ConeKind::Dnn,
            Answer::NotIn,
            Certificate::NegativeCurvature {
                value: m.quad_form(&vector),
                vector,
            },
        ),
        None => ConeVerdict::new(
            ConeKind::Dnn,
            Answer::In,
            Certificate::Dnn {
                min_entry: m.min_entry(),
                min_eigenvalue: c.min_eigenvalue,
            },
        ),
    }
}

/// CP membership backed by a candidate factor. IN when ‖VVᵀ − M‖ is within
/// tolerance; NOT_IN only when M fails the DNN test; UNDECIDED otherwise.
pub fn verify_cp_factor(m: &SymMat, v: &NonnegFactor, tol: Tolerance) -> ConeVerdict {
    if v.n() == m.n() {
        let residual = v.residual(m);
        if residual <= tol.threshold(m.max_abs()) {
            return ConeVerdict::new(
                ConeKind::Cp,
                Answer::In,
                Certificate::Factor {
                    factor: v.clone(),
                    residual,
                },
            );
        }
    }
    let d = is_dnn(m, tol);
    if !d.is_in() {
        return ConeVerdict::new(ConeKind::Cp, Answer::NotIn, d.certificate);
    }
    ConeVerdict::new(ConeKind::Cp, Answer::Undecided, Certificate::None)
}

/// Interior verdict from a factor: IN with certificate, else UNDECIDED.
pub fn cp_interior_verdict(m: &SymMat, v: &NonnegFactor, tol: Tolerance) -> ConeVerdict {
    if v.n() == m.n() && v.residual(m) <= tol.threshold(m.max_abs()) {
        if let Some(c) = cp_interior_certificate(v, tol) {
            return ConeVerdict::new(ConeKind::CpInterior, Answer::In, Certificate::Interior(c));
        }
    }
    ConeVerdict::new(ConeKind::CpInterior, Answer::Undecided, Certificate::None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn horn() -> SymMat {
        let r = [1.0, -1.0, 1.0, 1.0, -1.0];
        SymMat::from_fn(5, |i, j| r[(j + 5 - i) % 5])
    }

    fn e12() -> SymMat {
        SymMat::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]], 0.0).unwrap()
    }

    #[test]
    fn psd_with_mixed_signs_is_immediate() {
        // the zero set of (x'w)^2 cuts through the simplex
        let a = SymMat::outer(&[1.0, -2.0, 0.5, 1.5, -0.7]);
        let v = is_copositive(&a, Tolerance::default(), 40);
        assert!(v.is_in());
        assert!(matches!(v.certificate, Certificate::PsdBlock { .. }));
    }

    #[test]
    fn nonneg_examples() {
        let t = Tolerance::default();
        let v = is_nonneg(&horn(), t);
        assert_eq!(v.answer, Answer::NotIn);
        assert_eq!(
            v.certificate,
            Certificate::NegativeEntry {
                i: 0,
                j: 1,
                value: -1.0
            }
        );
        assert!(is_nonneg(&SymMat::ones(3), t).is_in());
        assert!(is_nonneg(&e12(), t).is_in());
    }

    #[test]
    fn horn_is_copositive() {
        let v = is_copositive(&horn(), Tolerance::default(), 40);
        assert_eq!(v.answer, Answer::In, "{:?}", v.certificate);
        match v.certificate {
            Certificate::MinimumBound {
                lower_bound,
                best_value,
                ..
            } => {
                assert!(lower_bound >= -1e-8);
                assert!(best_value.abs() < 1e-12);
            }
            c => panic!("unexpected certificate {c:?}"),
        }
    }

    #[test]
    fn shifted_horn_is_refuted() {
        let a = horn().sub(&SymMat::ones(5).scale(0.01));
        let v = is_copositive(&a, Tolerance::default(), 40);
        assert_eq!(v.answer, Answer::NotIn);
        match v.certificate {
            Certificate::ViolationVector { x, value } => {
                assert_eq!(x, vec![0.5, 0.5, 0.0, 0.0, 0.0]);
                assert!((value + 0.01).abs() < 1e-12);
            }
            c => panic!("unexpected certificate {c:?}"),
        }
    }

    #[test]
    fn negative_identity_refuted_at_first_vertex() {
        let v = is_copositive(&SymMat::identity(2).scale(-1.0), Tolerance::default(), 40);
        assert_eq!(
            v.certificate,
            Certificate::ViolationVector {
                x: vec![1.0, 0.0],
                value: -1.0
            }
        );
    }

    #[test]
    fn undecided_without_exact_leaves() {
        let opts = PartitionOptions {
            max_depth: 6,
            exact_leaves: false,
            ..Default::default()
        };
        let v = is_copositive_with(&horn(), Tolerance::default(), opts);
        assert_eq!(v.answer, Answer::Undecided);
    }

    #[test]
    fn boundary_zeros() {
        let t = Tolerance::default();
        let z = copositive_boundary_zeros(&horn(), t).unwrap();
        for i in 0..5 {
            let mut x = vec![0.0; 5];
            x[i] = 0.5;
            x[(i + 1) % 5] = 0.5;
            assert!(z.iter().any(|y| y.iter().zip(&x).all(|(a, b)| (a - b).abs() < 1e-12)));
        }
        assert!(copositive_boundary_zeros(&SymMat::identity(4), t).unwrap().is_empty());
        let z = copositive_boundary_zeros(&e12(), t).unwrap();
        assert!(z.contains(&vec![1.0, 0.0]) && z.contains(&vec![0.0, 1.0]));
        assert_eq!(
            copositive_boundary_zeros(&SymMat::identity(2).scale(-1.0), t),
            Err(ConeError::NotCopositive)
        );
    }

    #[test]
    fn interior_certificates() {
        let t = Tolerance::default();
        assert!(cp_interior_certificate(&NonnegFactor::identity(3), t).is_none());
        let j2 = NonnegFactor::new(2, vec![vec![1.0, 1.0]]).unwrap();
        assert!(cp_interior_certificate(&j2, t).is_none());
        let v = NonnegFactor::new(
            3,
            vec![
                vec![1.0; 3],
                vec![1.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0],
            ],
        )
        .unwrap();
        let c = cp_interior_certificate(&v, t).unwrap();
        assert_eq!((c.positive_column, c.rank), (0, 3));
    }

    #[test]
    fn dnn_examples() {
        let t = Tolerance::default();
        assert!(is_dnn(&SymMat::ones(3), t).is_in());
        assert_eq!(is_dnn(&horn(), t).answer, Answer::NotIn);
        let m = SymMat::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]], 0.0).unwrap();
        assert!(is_dnn(&m, t).is_in());
    }
}
