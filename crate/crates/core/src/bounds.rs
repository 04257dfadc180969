//! cp-rank bound calculus.
//!
//! p_n is the largest cp-rank of an n×n completely positive matrix. Known
//! facts used here: p_n = n for n ≤ 4, p_5 = 6, ⌊n²/4⌋ ≤ p_n, and the
//! bound cpr M ≤ b_r = C(r+1, 2) − 1 for rank r ≥ 3. Every
//! number in a [`BoundReport`] carries the rule that produced it.

use serde::Serialize;
use thiserror::Error;

use crate::cones::{is_copositive, is_dnn, is_nonneg, Answer};
use crate::extremal::{horn_orbit_recognize, zero_diag_reduce};
use crate::factor::NonnegFactor;
use crate::numkern::{num_rank, SymMat, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Rule {
    /// b_rank.
    Babe,
    /// b_n − k + 1, k positive diagonal entries of an orthogonal witness.
    BnK1,
    /// b_n − 4, orthogonal witness with a negative entry.
    #[serde(rename = "BN_4")]
    Bn4,
    /// 2·U(n − 1) for a matrix with a zero entry.
    ZeroEntry,
    /// 15 for n = 6 with a witness in the Horn orbit ⊕ 0.
    Horn15,
    /// Best known upper bound on p_n.
    KnownPn,
    /// Column count of a supplied factor.
    Factor,
    /// cpr M ≥ rank M.
    RankLb,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: usize,
    pub rule: Rule,
    pub witness: String,
}

impl Bound {
    fn new(value: usize, rule: Rule, witness: impl Into<String>) -> Self {
        Bound {
            value,
            rule,
            witness: witness.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub lower: Bound,
    pub uppers: Vec<Bound>,
    pub best_interval: [usize; 2],
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundError {
    #[error("witness is not orthogonal to M: <A, M> = {inner:e}")]
    NotOrthogonal { inner: f64 },
    #[error("witness is not copositive ({reason})")]
    NotCopositiveWitness { reason: String },
    #[error("inconsistent bounds: upper {upper} < lower {lower}")]
    InconsistentBounds { lower: usize, upper: usize },
    #[error("matrix is not doubly nonnegative")]
    NotDnn,
    #[error("factor does not reproduce M (residual {residual:e})")]
    FactorMismatch { residual: f64 },
    #[error("order mismatch: {0}")]
    Shape(String),
}

impl BoundError {
    pub fn tag(&self) -> &'static str {
        match self {
            BoundError::NotOrthogonal { .. } => "NOT_ORTHOGONAL",
            BoundError::NotCopositiveWitness { .. } => "NOT_COPOSITIVE_WITNESS",
            BoundError::InconsistentBounds { .. } => "INCONSISTENT_BOUNDS",
            BoundError::NotDnn => "NOT_DNN",
            BoundError::FactorMismatch { .. } => "FACTOR_MISMATCH",
            BoundError::Shape(_) => "SHAPE",
        }
    }
}

/// d_n = ⌊n²/4⌋ for n ≥ 5, and p_n = n for n ≤ 4.
pub fn djl_lower(n: usize) -> usize {
    assert!(n >= 1, "order must be positive");
    if n <= 4 {
        n
    } else {
        n * n / 4
    }
}

/// b_r = C(r+1, 2) − 1 for r ≥ 3; b_1 = 1, b_2 = 2.
pub fn babe(r: usize) -> usize {
    assert!(r >= 1, "rank must be positive");
    match r {
        1 => 1,
        2 => 2,
        _ => r * (r + 1) / 2 - 1,
    }
}

/// Best known interval for p_n.
pub fn known_pn_interval(n: usize) -> (usize, usize) {
    match n {
        0 => panic!("order must be positive"),
        1..=4 => (n, n),
        5 => (6, 6),
        6 => (9, 15),
        _ => (djl_lower(n), babe(n) - 3),
    }
}

fn orthogonal_guard(m: &SymMat, a: &SymMat, tol: Tolerance) -> Result<(), BoundError> {
    if m.n() != a.n() {
        return Err(BoundError::Shape(format!(
            "M has order {}, witness has order {}",
            m.n(),
            a.n()
        )));
    }
    let inner = m.inner(a);
    if inner.abs() > tol.threshold(m.frobenius() * a.frobenius()) {
        return Err(BoundError::NotOrthogonal { inner });
    }
    Ok(())
}

/// Upper bounds on cpr M implied by a copositive A orthogonal to M. The
/// bounds are conditional on M being completely positive.
pub fn witness_bound(m: &SymMat, a: &SymMat, tol: Tolerance) -> Result<Vec<Bound>, BoundError> {
    orthogonal_guard(m, a, tol)?;
    let verdict = is_copositive(a, tol, 40);
    if verdict.answer != Answer::In {
        return Err(BoundError::NotCopositiveWitness {
            reason: verdict.answer.tag().to_string(),
        });
    }
    let n = a.n();
    let thr = tol.threshold(a.max_abs());
    let mut out = Vec::new();
    let k = (0..n).filter(|&i| a.get(i, i) > thr).count();
    if k >= 2 && babe(n) + 1 > k {
        out.push(Bound::new(
            babe(n) + 1 - k,
            Rule::BnK1,
            format!("witness has {k} positive diagonal entries"),
        ));
    }
    if n >= 5 && is_nonneg(a, tol).answer == Answer::NotIn {
        out.push(Bound::new(babe(n) - 4, Rule::Bn4, "witness has a negative entry"));
    }
    if n == 6 {
        let red = zero_diag_reduce(a, tol);
        if red.structure_ok && red.kept.len() == 5 {
            if let Some(s) = &red.reduced {
                if horn_orbit_recognize(s, tol).is_some() {
                    out.push(Bound::new(
                        15,
                        Rule::Horn15,
                        format!("witness is a Horn orbit matrix plus a zero row at {}", red.zero[0]),
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// 2·U(n − 1) when M has a zero off-diagonal entry.
pub fn zero_entry_bound(m: &SymMat, tol: Tolerance) -> Option<Bound> {
    let n = m.n();
    if n < 2 {
        return None;
    }
    let thr = tol.threshold(m.max_abs());
    for i in 0..n {
        for j in (i + 1)..n {
            if m.get(i, j).abs() <= thr {
                return Some(Bound::new(
                    2 * known_pn_interval(n - 1).1,
                    Rule::ZeroEntry,
                    format!("M[{i}][{j}] = 0"),
                ));
            }
        }
    }
    None
}

/// Assembles every applicable bound into a best interval.
pub fn cp_rank_interval(
    m: &SymMat,
    factor: Option<&NonnegFactor>,
    witnesses: &[SymMat],
    tol: Tolerance,
) -> Result<BoundReport, BoundError> {
    let n = m.n();
    if !is_dnn(m, tol).is_in() {
        return Err(BoundError::NotDnn);
    }
    let rank = num_rank(m, tol);
    let lower = Bound::new(rank, Rule::RankLb, format!("rank M = {rank}"));
    let mut uppers = Vec::new();
    if rank >= 1 {
        uppers.push(Bound::new(babe(rank), Rule::Babe, format!("b_{rank}")));
    }
    if let Some(v) = factor {
        if v.n() != n {
            return Err(BoundError::Shape(format!(
                "factor has order {}, M has order {n}",
                v.n()
            )));
        }
        let residual = v.residual(m);
        if residual > tol.threshold(m.max_abs()) {
            return Err(BoundError::FactorMismatch { residual });
        }
        uppers.push(Bound::new(
            v.p(),
            Rule::Factor,
            format!("factor with {} columns", v.p()),
        ));
    }
    for (w, a) in witnesses.iter().enumerate() {
        for mut b in witness_bound(m, a, tol)? {
            b.witness = format!("witness {w}: {}", b.witness);
            uppers.push(b);
        }
    }
    uppers.extend(zero_entry_bound(m, tol));
    uppers.push(Bound::new(
        known_pn_interval(n).1,
        Rule::KnownPn,
        format!("p_{n} upper bound"),
    ));

    let upper = uppers
        .iter()
        .map(|b| b.value)
        .min()
        .expect("KNOWN_PN is always present");
    if upper < rank {
        return Err(BoundError::InconsistentBounds { lower: rank, upper });
    }
    Ok(BoundReport {
        n,
        lower,
        uppers,
        best_interval: [rank, upper],
    })
}

/// Interval for p_n itself, as a report.
pub fn pn_table_report(n: usize) -> BoundReport {
    let (lo, hi) = known_pn_interval(n);
    BoundReport {
        n,
        lower: Bound::new(lo, Rule::KnownPn, format!("p_{n} lower bound")),
        uppers: vec![Bound::new(hi, Rule::KnownPn, format!("p_{n} upper bound"))],
        best_interval: [lo, hi],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::horn_matrix;

    #[test]
    fn constants() {
        assert_eq!((djl_lower(6), djl_lower(5), djl_lower(4)), (9, 6, 4));
        assert_eq!((babe(6), babe(2), babe(3)), (20, 2, 5));
        assert_eq!(known_pn_interval(5), (6, 6));
        assert_eq!(known_pn_interval(6), (9, 15));
        assert_eq!(known_pn_interval(7), (12, 24));
    }

    #[test]
    fn djl_below_upper_for_all_orders() {
        for n in 1..=50 {
            let (lo, hi) = known_pn_interval(n);
            assert_eq!(lo, djl_lower(n));
            assert!(lo <= hi);
            assert_eq!(lo == hi, n <= 5, "n = {n}");
        }
        // p*_n ≤ b_n − 4 gives p_n ≤ b_n − 3
        for n in 7..=50 {
            assert_eq!(babe(n) - 4 + 1, known_pn_interval(n).1);
        }
    }

    #[test]
    fn horn_witness_bounds() {
        let t = Tolerance::default();
        let a = horn_matrix().pad_zeros(1);
        let mut m = SymMat::zeros(6);
        m.set(5, 5, 1.0);
        let b = witness_bound(&m, &a, t).unwrap();
        let vals: Vec<(usize, Rule)> = b.iter().map(|b| (b.value, b.rule)).collect();
        assert_eq!(vals, vec![(16, Rule::BnK1), (16, Rule::Bn4), (15, Rule::Horn15)]);

        let h = horn_matrix();
        let b = witness_bound(&SymMat::zeros(5), &h, t).unwrap();
        let vals: Vec<usize> = b.iter().map(|b| b.value).collect();
        assert_eq!(vals, vec![10, 10]);
    }

    #[test]
    fn positive_diagonal_witness() {
        let t = Tolerance::default();
        let b = witness_bound(&SymMat::zeros(6), &SymMat::identity(6), t).unwrap();
        assert_eq!(
            b,
            vec![Bound::new(15, Rule::BnK1, "witness has 6 positive diagonal entries")]
        );
    }

    #[test]
    fn zero_entries() {
        let t = Tolerance::default();
        let mut m = SymMat::ones(6);
        m.set(0, 5, 0.0);
        assert_eq!(zero_entry_bound(&m, t).unwrap().value, 12);
        let mut m7 = SymMat::ones(7);
        m7.set(0, 6, 0.0);
        assert_eq!(zero_entry_bound(&m7, t).unwrap().value, 30);
        assert!(zero_entry_bound(&SymMat::ones(6), t).is_none());
    }

    #[test]
    fn intervals() {
        let t = Tolerance::default();
        let i6 = SymMat::identity(6);
        let r = cp_rank_interval(&i6, None, &[], t).unwrap();
        assert_eq!(r.lower.value, 6);
        assert!(r.uppers.iter().any(|b| b.rule == Rule::KnownPn && b.value == 15));
        let r = cp_rank_interval(&i6, Some(&NonnegFactor::identity(6)), &[], t).unwrap();
        assert_eq!(r.best_interval, [6, 6]);

        // rank 3 at n = 10
        let v = NonnegFactor::new(
            10,
            (0..3)
                .map(|k| (0..10).map(|i| if i % 3 == k { 1.0 } else { 0.5 }).collect())
                .collect(),
        )
        .unwrap();
        let r = cp_rank_interval(&v.product(), None, &[], t).unwrap();
        assert_eq!(r.lower.value, 3);
        assert!(r.uppers.contains(&Bound::new(5, Rule::Babe, "b_3")));
    }

    #[test]
    fn errors() {
        let t = Tolerance::default();
        let e = witness_bound(&SymMat::ones(2), &SymMat::identity(2), t).unwrap_err();
        assert_eq!(e.tag(), "NOT_ORTHOGONAL");
        let neg = SymMat::from_rows(&[vec![-1.0, 0.0], vec![0.0, 0.0]], 0.0).unwrap();
        let m = SymMat::from_rows(&[vec![0.0, 0.0], vec![0.0, 1.0]], 0.0).unwrap();
        assert_eq!(witness_bound(&m, &neg, t).unwrap_err().tag(), "NOT_COPOSITIVE_WITNESS");
        assert_eq!(
            cp_rank_interval(&horn_matrix(), None, &[], t).unwrap_err().tag(),
            "NOT_DNN"
        );
    }
}
