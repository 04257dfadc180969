//! Orbit recognition and checks on orthogonal pairs (M, A) with M completely
//! positive and A copositive.
//!
//! Extremality of A is never decided here. Operations that need it take it
//! as the caller's claim and verify only its consequences.

use serde::Serialize;
use thiserror::Error;

use crate::cones::{is_copositive, is_nonneg, Answer};
use crate::factor::NonnegFactor;
use crate::numkern::{num_rank, psd_check, SymMat, Tolerance};

/// The Horn matrix: circulant with first row (1, −1, 1, 1, −1).
pub fn horn_matrix() -> SymMat {
    const ROW: [f64; 5] = [1.0, -1.0, 1.0, 1.0, -1.0];
    SymMat::from_fn(5, |i, j| ROW[(j + 5 - i) % 5])
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExtremalError {
    #[error("matrix is not copositive")]
    NotCopositive,
    #[error("matrix has a negative entry {value:e} at ({i}, {j})")]
    NotNonneg { i: usize, j: usize, value: f64 },
    #[error("M has a zero row at {row}")]
    ZeroRow { row: usize },
    #[error("M and A are not orthogonal: <A, M> = {inner:e}")]
    NotOrthogonal { inner: f64 },
    #[error("order mismatch: {0}")]
    Shape(String),
}

impl ExtremalError {
    pub fn tag(&self) -> &'static str {
        match self {
            ExtremalError::NotCopositive => "NOT_COPOSITIVE",
            ExtremalError::NotNonneg { .. } => "NOT_NONNEG",
            ExtremalError::ZeroRow { .. } => "ZERO_ROW",
            ExtremalError::NotOrthogonal { .. } => "NOT_ORTHOGONAL",
            ExtremalError::Shape(_) => "SHAPE",
        }
    }
}

/// Outcome of a single check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Check {
    Pass,
    Fail,
    /// Hypothesis of the check not met.
    Skip,
}

impl Check {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Check::Pass
        } else {
            Check::Fail
        }
    }
}

/// A = D Pᵀ B P D, i.e. A_ab = d_a d_b B[perm[a]][perm[b]].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitWitness {
    pub d: Vec<f64>,
    pub perm: Vec<usize>,
}

impl OrbitWitness {
    pub fn apply(&self, base: &SymMat) -> SymMat {
        base.permute(&self.perm).scale_diag(&self.d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExtremeTag {
    PsdRank1,
    E12Orbit,
    HornOrbit,
    NonnegExtreme,
    UnknownExtremeClass,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremeClass {
    pub tag: ExtremeTag,
    pub rank: usize,
    /// Orbit witness relative to E₁₂ ⊕ 0 or H ⊕ 0 (padded to order n).
    pub witness: Option<OrbitWitness>,
    /// x with A = xxᵀ for PSD_RANK1.
    pub vector: Option<Vec<f64>>,
}

fn permutations(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = Some((0..n).collect::<Vec<_>>());
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut p = cur.clone();
        // lexicographic successor
        if let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) {
            let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
            p.swap(i, j);
            p[i + 1..].reverse();
            next = Some(p);
        }
        Some(cur)
    })
}

/// Finds (D, P) with A = DPᵀHPD. Since diag H = e, D is forced to
/// d_i = √A_ii; the 120 permutations are tried in lexicographic order and
/// the first match is returned.
pub fn horn_orbit_recognize(a: &SymMat, tol: Tolerance) -> Option<OrbitWitness> {
    if a.n() != 5 {
        return None;
    }
    let thr = tol.threshold(a.max_abs());
    let diag = a.diagonal();
    if diag.iter().any(|v| *v <= thr) {
        return None;
    }
    let d: Vec<f64> = diag.iter().map(|v| v.sqrt()).collect();
    let h = horn_matrix();
    permutations(5)
        .map(|perm| OrbitWitness { d: d.clone(), perm })
        .find(|w| w.apply(&h).max_abs_diff(a) <= thr)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroDiagReduction {
    /// Z = {i : A_ii ≤ tol}.
    pub zero: Vec<usize>,
    pub kept: Vec<usize>,
    /// Principal submatrix on `kept`; `None` when every diagonal entry
    /// vanishes.
    pub reduced: Option<SymMat>,
    /// Rows and columns indexed by Z vanish.
    pub structure_ok: bool,
    pub nonneg: bool,
}

impl ZeroDiagReduction {
    /// An extreme copositive matrix outside N_n with zero diagonal entries
    /// must be S ⊕ 0 up to permutation. True when A, claimed extreme and
    /// outside N_n, breaks that structure (so the claim is wrong).
    pub fn violates_zeroext(&self, claimed_outside_nonneg: bool) -> bool {
        claimed_outside_nonneg && !self.structure_ok
    }
}

pub fn zero_diag_reduce(a: &SymMat, tol: Tolerance) -> ZeroDiagReduction {
    let n = a.n();
    let thr = tol.threshold(a.max_abs());
    let (zero, kept): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| a.get(i, i) <= thr);
    let structure_ok = zero.iter().all(|&i| (0..n).all(|j| a.get(i, j).abs() <= thr));
    let reduced = (!kept.is_empty()).then(|| a.principal(&kept));
    ZeroDiagReduction {
        zero,
        kept,
        reduced,
        structure_ok,
        nonneg: is_nonneg(a, tol).is_in(),
    }
}

/// Yes iff the nonnegative A has exactly one positive entry on or above the
/// diagonal: a·e_ie_iᵀ or a matrix in the orbit of E₁₂ ⊕ 0.
pub fn nonneg_extreme_check(a: &SymMat, tol: Tolerance) -> Result<bool, ExtremalError> {
    let v = is_nonneg(a, tol);
    if let crate::cones::Certificate::NegativeEntry { i, j, value } = v.certificate {
        return Err(ExtremalError::NotNonneg { i, j, value });
    }
    let n = a.n();
    let thr = tol.threshold(a.max_abs());
    let positive = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .filter(|&(i, j)| a.get(i, j) > thr)
        .count();
    Ok(positive == 1)
}

/// Recognizes A = c(e_ie_jᵀ + e_je_iᵀ), i < j, c > 0, as DPᵀ(E₁₂ ⊕ 0)PD.
fn e12_witness(a: &SymMat, tol: Tolerance) -> Option<OrbitWitness> {
    let n = a.n();
    let thr = tol.threshold(a.max_abs());
    let mut pair = None;
    for i in 0..n {
        for j in i..n {
            let v = a.get(i, j);
            if v.abs() <= thr {
                continue;
            }
            if i == j || v < 0.0 || pair.is_some() {
                return None;
            }
            pair = Some((i, j, v));
        }
    }
    let (i, j, c) = pair?;
    let mut perm = vec![0; n];
    let mut d = vec![1.0; n];
    perm[i] = 0;
    perm[j] = 1;
    d[i] = c.sqrt();
    d[j] = c.sqrt();
    let mut next = 2;
    for k in (0..n).filter(|&k| k != i && k != j) {
        perm[k] = next;
        next += 1;
    }
    Some(OrbitWitness { d, perm })
}

/// E₁₂ ⊕ 0 of order n.
pub fn e12_base(n: usize) -> SymMat {
    assert!(n >= 2, "E12 needs order at least 2");
    let mut e = SymMat::zeros(n);
    e.set(0, 1, 1.0);
    e
}

/// Classification of an extreme copositive A (extremality is the caller's
/// claim) by rank: rank 1 means PSD, rank 2 means the orbit of E₁₂; for
/// higher rank the Horn orbit is tried on the block surviving zero-diagonal
/// reduction.
pub fn classify_rank12(a: &SymMat, tol: Tolerance) -> Result<ExtremeClass, ExtremalError> {
    if is_copositive(a, tol, 40).answer == Answer::NotIn {
        return Err(ExtremalError::NotCopositive);
    }
    let n = a.n();
    let rank = num_rank(a, tol);
    let unknown = ExtremeClass {
        tag: ExtremeTag::UnknownExtremeClass,
        rank,
        witness: None,
        vector: None,
    };
    match rank {
        1 => {
            if !psd_check(a, tol).is_psd {
                return Ok(unknown);
            }
            // A = xxᵀ: x is the scaled column through the largest diagonal
            let k = (0..n).fold(0, |b, k| if a.get(k, k) > a.get(b, b) { k } else { b });
            let s = a.get(k, k).sqrt();
            let x: Vec<f64> = (0..n).map(|i| a.get(i, k) / s).collect();
            Ok(ExtremeClass {
                tag: ExtremeTag::PsdRank1,
                rank,
                witness: None,
                vector: Some(x),
            })
        }
        2 => Ok(match e12_witness(a, tol) {
            Some(w) => ExtremeClass {
                tag: ExtremeTag::E12Orbit,
                rank,
                witness: Some(w),
                vector: None,
            },
            None => unknown,
        }),
        _ => {
            let red = zero_diag_reduce(a, tol);
            if red.structure_ok && red.kept.len() == 5 {
                if let Some(w) = horn_orbit_recognize(red.reduced.as_ref().unwrap(), tol) {
                    // extend to order n: kept indices carry the witness,
                    // zero indices map to the padding in order
                    let mut perm = vec![0; n];
                    let mut d = vec![1.0; n];
                    for (s, &i) in red.kept.iter().enumerate() {
                        perm[i] = w.perm[s];
                        d[i] = w.d[s];
                    }
                    for (t, &i) in red.zero.iter().enumerate() {
                        perm[i] = 5 + t;
                    }
                    return Ok(ExtremeClass {
                        tag: ExtremeTag::HornOrbit,
                        rank,
                        witness: Some(OrbitWitness { d, perm }),
                        vector: None,
                    });
                }
            }
            if red.nonneg && nonneg_extreme_check(a, tol).unwrap_or(false) {
                return Ok(ExtremeClass {
                    tag: ExtremeTag::NonnegExtreme,
                    ..unknown
                });
            }
            Ok(unknown)
        }
    }
}

fn orth_guard(m: &SymMat, a: &SymMat, tol: Tolerance) -> Result<f64, ExtremalError> {
    if m.n() != a.n() {
        return Err(ExtremalError::Shape(format!(
            "M has order {}, A has order {}",
            m.n(),
            a.n()
        )));
    }
    let inner = m.inner(a);
    if inner.abs() > tol.threshold(m.frobenius() * a.frobenius()) {
        return Err(ExtremalError::NotOrthogonal { inner });
    }
    Ok(inner)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrthColumnReport {
    pub inner: f64,
    /// max_i |(MA)_ii|.
    pub defect: f64,
    pub check: Check,
}

/// For M ∈ CS_n and A ∈ C_n with ⟨A, M⟩ = 0, the i-th columns of M and A
/// are orthogonal for every i.
pub fn orth_column_check(m: &SymMat, a: &SymMat, tol: Tolerance) -> Result<OrthColumnReport, ExtremalError> {
    let inner = orth_guard(m, a, tol)?;
    let n = m.n();
    let defect = (0..n)
        .map(|i| (0..n).map(|k| m.get(i, k) * a.get(k, i)).sum::<f64>().abs())
        .fold(0.0f64, f64::max);
    let check = Check::from_bool(defect <= tol.threshold(m.frobenius() * a.frobenius()));
    Ok(OrthColumnReport { inner, defect, check })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullspaceReport {
    pub index: usize,
    /// ‖MAe_i‖∞, absent when skipped.
    pub norm: Option<f64>,
    pub check: Check,
}

/// If i lies in the support of every column of a factor of M, then Ae_i is
/// in the nullspace of M.
pub fn orth_nullspace_check(
    m: &SymMat,
    a: &SymMat,
    v: &NonnegFactor,
    i: usize,
    tol: Tolerance,
) -> Result<NullspaceReport, ExtremalError> {
    orth_guard(m, a, tol)?;
    let n = m.n();
    if v.n() != n || i >= n {
        return Err(ExtremalError::Shape(format!(
            "factor order {} or index {i} does not fit order {n}",
            v.n()
        )));
    }
    let vthr = tol.threshold(v.max_entry());
    if v.p() == 0 || v.columns().iter().any(|c| c[i] <= vthr) {
        return Ok(NullspaceReport {
            index: i,
            norm: None,
            check: Check::Skip,
        });
    }
    let col: Vec<f64> = (0..n).map(|k| a.get(k, i)).collect();
    let norm = m.mul_vec(&col).iter().fold(0.0f64, |s, x| s.max(x.abs()));
    Ok(NullspaceReport {
        index: i,
        norm: Some(norm),
        check: Check::from_bool(norm <= tol.threshold(m.frobenius() * a.frobenius())),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AntiDdReport {
    /// Ā = D⁻¹AD⁻¹ with D = diag(1/√M_ii).
    pub scaled: SymMat,
    /// Ā_ii ≤ Σ_{j≠i} |Ā_ij| per row.
    pub rows: Vec<bool>,
    pub all_pass: bool,
}

/// Rescales the orthogonal pair so M has unit diagonal; the copositive
/// partner is then anti-diagonally dominant row by row.
pub fn anti_dd_check(m: &SymMat, a: &SymMat, tol: Tolerance) -> Result<AntiDdReport, ExtremalError> {
    orth_guard(m, a, tol)?;
    let n = m.n();
    let mthr = tol.threshold(m.max_abs());
    if let Some(row) = (0..n).find(|&i| m.get(i, i) <= mthr) {
        return Err(ExtremalError::ZeroRow { row });
    }
    let s: Vec<f64> = m.diagonal().iter().map(|v| v.sqrt()).collect();
    let scaled = a.scale_diag(&s);
    let thr = tol.threshold(scaled.max_abs());
    let rows: Vec<bool> = (0..n)
        .map(|i| {
            let off: f64 = (0..n).filter(|&j| j != i).map(|j| scaled.get(i, j).abs()).sum();
            scaled.get(i, i) <= off + thr
        })
        .collect();
    let all_pass = rows.iter().all(|r| *r);
    Ok(AntiDdReport { scaled, rows, all_pass })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rank3Report {
    /// First violated hypothesis on M or the pair, if any.
    pub guard_failure: Option<&'static str>,
    pub rank: usize,
    /// (i, j) with A_ii = A_jj = 0 < A_ij.
    pub e12_block: Option<(usize, usize)>,
    pub check: Check,
}

/// A copositive A orthogonal to a positive nonsingular M on bd CS_n has
/// rank at least 3 and no principal 2×2 block in the orbit of E₁₂. The
/// consequence checks run even when a guard fails; `check` is SKIP then.
pub fn rank3_witness_check(m: &SymMat, a: &SymMat, tol: Tolerance) -> Result<Rank3Report, ExtremalError> {
    if m.n() != a.n() {
        return Err(ExtremalError::Shape(format!(
            "M has order {}, A has order {}",
            m.n(),
            a.n()
        )));
    }
    let n = m.n();
    let guard_failure = if m.min_entry() <= tol.threshold(m.max_abs()) {
        Some("M_NOT_POSITIVE")
    } else if num_rank(m, tol) < n {
        Some("M_SINGULAR")
    } else if orth_guard(m, a, tol).is_err() {
        Some("NOT_ORTHOGONAL")
    } else {
        None
    };
    let rank = num_rank(a, tol);
    let thr = tol.threshold(a.max_abs());
    let e12_block = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| a.get(i, i).abs() <= thr && a.get(j, j).abs() <= thr && a.get(i, j) > thr);
    let ok = rank >= 3 && e12_block.is_none();
    let check = if guard_failure.is_some() {
        Check::Skip
    } else {
        Check::from_bool(ok)
    };
    Ok(Rank3Report {
        guard_failure,
        rank,
        e12_block,
        check,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_m() -> SymMat {
        // Σ (e_i + e_{i+1})(e_i + e_{i+1})ᵀ, indices mod 5
        let mut m = SymMat::zeros(5);
        for i in 0..5 {
            let mut x = vec![0.0; 5];
            x[i] = 1.0;
            x[(i + 1) % 5] = 1.0;
            m = m.add(&SymMat::outer(&x));
        }
        m
    }

    #[test]
    fn permutation_order() {
        let p: Vec<Vec<usize>> = permutations(3).collect();
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[1], vec![0, 2, 1]);
        assert_eq!(p[5], vec![2, 1, 0]);
        assert_eq!(permutations(5).count(), 120);
    }

    #[test]
    fn horn_recognition() {
        let t = Tolerance::default();
        let w = horn_orbit_recognize(&horn_matrix(), t).unwrap();
        assert_eq!(w.perm, vec![0, 1, 2, 3, 4]);
        assert_eq!(w.d, vec![1.0; 5]);
        let g = OrbitWitness {
            d: vec![1.0, 2.0, 0.5, 3.0, 1.5],
            perm: vec![3, 0, 4, 1, 2],
        };
        let a = g.apply(&horn_matrix());
        let w = horn_orbit_recognize(&a, t).unwrap();
        assert!(w.apply(&horn_matrix()).max_abs_diff(&a) <= 1e-9);
        assert!(horn_orbit_recognize(&SymMat::ones(5), t).is_none());
    }

    #[test]
    fn orthogonality_checks() {
        let t = Tolerance::default();
        let r = orth_column_check(&path_m(), &horn_matrix(), t).unwrap();
        assert!(r.defect < 1e-14 && r.check == Check::Pass);
        let r = orth_column_check(&SymMat::identity(3), &SymMat::zeros(3), t).unwrap();
        assert_eq!(r.defect, 0.0);
        let e = orth_column_check(&SymMat::ones(2), &SymMat::identity(2), t).unwrap_err();
        assert_eq!(e.tag(), "NOT_ORTHOGONAL");
    }

    #[test]
    fn nullspace_checks() {
        let t = Tolerance::default();
        let x = NonnegFactor::new(3, vec![vec![1.0; 3]]).unwrap();
        let a = SymMat::outer(&[1.0, -1.0, 0.0]);
        let r = orth_nullspace_check(&x.product(), &a, &x, 0, t).unwrap();
        assert_eq!(r.check, Check::Pass);
        let r = orth_nullspace_check(
            &SymMat::identity(3),
            &SymMat::zeros(3),
            &NonnegFactor::identity(3),
            1,
            t,
        )
        .unwrap();
        assert_eq!(r.check, Check::Skip);

        let y = NonnegFactor::new(5, vec![vec![1.0, 2.0, 1.0, 0.0, 0.0]]).unwrap();
        let r = orth_nullspace_check(&y.product(), &horn_matrix(), &y, 1, t).unwrap();
        assert_eq!(r.check, Check::Pass);
    }

    #[test]
    fn anti_dd() {
        let t = Tolerance::default();
        let r = anti_dd_check(&path_m(), &horn_matrix(), t).unwrap();
        assert!(r.scaled.max_abs_diff(&horn_matrix().scale(2.0)) < 1e-14);
        assert!(r.all_pass);
        assert!(anti_dd_check(&path_m(), &SymMat::zeros(5), t).unwrap().all_pass);
        let ij = SymMat::identity(3).add(&SymMat::ones(3));
        assert_eq!(
            anti_dd_check(&ij, &horn_matrix().principal(&[0, 1, 2]), t)
                .unwrap_err()
                .tag(),
            "NOT_ORTHOGONAL"
        );
    }

    #[test]
    fn zero_diag() {
        let t = Tolerance::default();
        let r = zero_diag_reduce(&horn_matrix().pad_zeros(1), t);
        assert_eq!(r.zero, vec![5]);
        assert!(r.structure_ok);
        assert_eq!(r.reduced.unwrap(), horn_matrix());
        let r = zero_diag_reduce(&SymMat::identity(3), t);
        assert!(r.zero.is_empty());
        let bad = SymMat::from_rows(&[vec![0.0, 1.0], vec![1.0, 1.0]], 0.0).unwrap();
        let r = zero_diag_reduce(&bad, t);
        assert!(!r.structure_ok);
        assert!(r.violates_zeroext(true));
    }

    #[test]
    fn nonneg_extremes() {
        let t = Tolerance::default();
        assert!(nonneg_extreme_check(&e12_base(4), t).unwrap());
        assert!(!nonneg_extreme_check(&SymMat::ones(2), t).unwrap());
        let mut m = SymMat::zeros(4);
        m.set(2, 2, 5.0);
        assert!(nonneg_extreme_check(&m, t).unwrap());
        assert_eq!(nonneg_extreme_check(&horn_matrix(), t).unwrap_err().tag(), "NOT_NONNEG");
    }

    #[test]
    fn classification() {
        let t = Tolerance::default();
        let mut e1 = SymMat::zeros(3);
        e1.set(0, 0, 1.0);
        assert_eq!(classify_rank12(&e1, t).unwrap().tag, ExtremeTag::PsdRank1);

        let mut a = SymMat::zeros(5);
        a.set(1, 3, 3.0);
        let c = classify_rank12(&a, t).unwrap();
        assert_eq!(c.tag, ExtremeTag::E12Orbit);
        let w = c.witness.unwrap();
        assert!(w.apply(&e12_base(5)).max_abs_diff(&a) < 1e-14);

        let c = classify_rank12(&horn_matrix(), t).unwrap();
        assert_eq!(c.tag, ExtremeTag::HornOrbit);
        let c = classify_rank12(&horn_matrix().pad_zeros(1), t).unwrap();
        let w = c.witness.unwrap();
        assert!(
            w.apply(&horn_matrix().pad_zeros(1))
                .max_abs_diff(&horn_matrix().pad_zeros(1))
                < 1e-14
        );
    }

    #[test]
    fn rank3() {
        let t = Tolerance::default();
        let mut e1 = SymMat::zeros(5);
        e1.set(0, 0, 1.0);
        let r = rank3_witness_check(&SymMat::ones(5), &e1, t).unwrap();
        assert_eq!(r.rank, 1);
        let r = rank3_witness_check(&SymMat::ones(5), &e12_base(5), t).unwrap();
        assert_eq!((r.rank, r.e12_block), (2, Some((0, 1))));
    }
}
