//! Concurrence: numeric oracles (the pure two-qubit formula and the full
//! mixed-state formula) plus the closed-form catalog for the residual states
//! produced by the concentration protocol on 3-, 4- and n-qubit resources.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevec::{C64, DensityMatrix, PureState, TOL};

/// Which catalog entry a report row refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[allow(non_camel_case_types)]
pub enum CaseId {
    C4_1,
    C4_2,
    C4_3,
    C4_4,
    C3_1,
    C3_2,
    C3_3,
    CN_dep,
    CN_indep,
}

/// Analytic-vs-oracle comparison for one catalog entry.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConcurrenceReport {
    pub case_id: CaseId,
    pub k: f64,
    /// Absent for the input-independent cases.
    pub alpha_sq: Option<f64>,
    pub analytic: f64,
    pub numeric: f64,
    pub abs_diff: f64,
}

/// Concurrence of a two-qubit pure state: 2 |a00 a11 - a01 a10|.
pub fn concurrence_pure2(s: &PureState) -> Result<f64> {
    if s.num_qubits() != 2 {
        return Err(Error::DimensionMismatch(s.num_qubits(), 2));
    }
    let a = s.amplitudes();
    Ok((2.0 * (a[0] * a[3] - a[1] * a[2]).norm()).min(1.0))
}

/// Concurrence of a two-qubit density matrix:
/// max(0, l1 - l2 - l3 - l4) with l_i the descending square roots of the
/// eigenvalues of rho (sy tensor sy) rho* (sy tensor sy).
pub fn concurrence_wootters(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::BadDensity(format!(
            "expected a 4x4 density matrix, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    rho.validate().map_err(|e| match e {
        Error::BadDensity(msg) => Error::BadDensity(msg),
        other => other,
    })?;

    let spin_flip = sigma_y_tensor_sigma_y();
    let conj = rho.matrix().map(|z| z.conj());
    let r = rho.matrix() * &spin_flip * conj * &spin_flip;
    let eigs = r
        .eigenvalues()
        .ok_or_else(|| Error::BadDensity("eigenvalue computation failed".into()))?;
    let mut roots: Vec<f64> = eigs.iter().map(|z| z.re.max(0.0).sqrt()).collect();
    roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((roots[0] - roots[1] - roots[2] - roots[3]).max(0.0))
}

fn sigma_y_tensor_sigma_y() -> DMatrix<C64> {
    let zero = C64::new(0.0, 0.0);
    let m1 = C64::new(-1.0, 0.0);
    let p1 = C64::new(1.0, 0.0);
    // (sy ⊗ sy) is real: antidiagonal (-1, 1, 1, -1).
    DMatrix::from_row_slice(
        4,
        4,
        &[
            zero, zero, zero, m1, //
            zero, zero, p1, zero, //
            zero, p1, zero, zero, //
            m1, zero, zero, zero,
        ],
    )
}

/// Closed-form concurrence for the four-qubit concentration cases.
///
/// Case 1: 2 a b sqrt(2k+2) / ((2k+1) a^2 + 1)
/// Case 2: 2 a b sqrt(2k+2) sqrt(k) / ((k+2) a^2 + k)
/// Case 3: 2 sqrt2 a b / (a^2 + 1), independent of k
/// Case 4: 2 sqrt2 / 3, independent of k and the input
pub fn analytic_c4(case: u8, k: f64, alpha: f64) -> Result<f64> {
    check_case_params(case, 4, k, alpha)?;
    let a2 = alpha * alpha;
    let b = (1.0 - a2).max(0.0).sqrt();
    Ok(match case {
        1 => 2.0 * alpha * b * (2.0 * k + 2.0).sqrt() / ((2.0 * k + 1.0) * a2 + 1.0),
        2 => 2.0 * alpha * b * (2.0 * k + 2.0).sqrt() * k.sqrt() / ((k + 2.0) * a2 + k),
        3 => 2.0 * std::f64::consts::SQRT_2 * alpha * b / (a2 + 1.0),
        4 => 2.0 * std::f64::consts::SQRT_2 / 3.0,
        _ => unreachable!(),
    })
}

/// Closed-form concurrence for the three-qubit concentration cases.
///
/// Case 1: 2 a b sqrt(k+1) / (k a^2 + 1)
/// Case 2: 2 a sqrt(k (k+1) (1 - a^2)) / (a^2 + k)
/// Case 3: 2 sqrt(k+1) / (k+2), independent of the input
pub fn analytic_c3(case: u8, k: f64, alpha: f64) -> Result<f64> {
    check_case_params(case, 3, k, alpha)?;
    let a2 = alpha * alpha;
    let b = (1.0 - a2).max(0.0).sqrt();
    Ok(match case {
        1 => 2.0 * alpha * b * (k + 1.0).sqrt() / (k * a2 + 1.0),
        2 => 2.0 * alpha * (k * (k + 1.0) * (1.0 - a2)).max(0.0).sqrt() / (a2 + k),
        3 => 2.0 * (k + 1.0).sqrt() / (k + 2.0),
        _ => unreachable!(),
    })
}

fn check_case_params(case: u8, family: u8, k: f64, alpha: f64) -> Result<()> {
    let max_case = if family == 4 { 4 } else { 3 };
    if case == 0 || case > max_case {
        return Err(Error::BadParams(format!(
            "case must lie in 1..={max_case}, got {case}"
        )));
    }
    if !(k >= 0.0) {
        return Err(Error::BadParams(format!("k must be nonnegative, got {k}")));
    }
    let input_independent = case == max_case;
    if !input_independent && !(0.0..=1.0).contains(&alpha) {
        return Err(Error::BadParams(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )));
    }
    Ok(())
}

/// General-n catalog. With `alpha` present this is the input-dependent
/// family
///   2 a b sqrt(k+r) sqrt(W) / (W a^2 + (k+r) b^2),  W = (n-2)k + (n-2)(n-3)/2 + 1
/// for r in 0..=n-3; without `alpha` the input-independent family
///   2 sqrt(k+r) sqrt(W) / ((n-1)k + (n-2)(n-3)/2 + 1 + r).
pub fn analytic_cn(n: usize, k: f64, r: usize, alpha: Option<f64>) -> Result<f64> {
    if n < 3 {
        return Err(Error::BadParams(format!("n must be at least 3, got {n}")));
    }
    if !(k >= 0.0) {
        return Err(Error::BadParams(format!("k must be nonnegative, got {k}")));
    }
    if r > n - 3 {
        return Err(Error::BadParams(format!(
            "r must lie in 0..={}, got {r}",
            n - 3
        )));
    }
    let nf = n as f64;
    let rf = r as f64;
    let w = (nf - 2.0) * k + (nf - 2.0) * (nf - 3.0) / 2.0 + 1.0;
    match alpha {
        Some(alpha) => {
            if !(0.0..=1.0).contains(&alpha) {
                return Err(Error::BadParams(format!(
                    "alpha must lie in [0, 1], got {alpha}"
                )));
            }
            let a2 = alpha * alpha;
            let b2 = 1.0 - a2;
            Ok(2.0 * alpha * b2.max(0.0).sqrt() * (k + rf).sqrt() * w.sqrt()
                / (w * a2 + (k + rf) * b2))
        }
        None => Ok(2.0 * (k + rf).sqrt() * w.sqrt()
            / ((nf - 1.0) * k + (nf - 2.0) * (nf - 3.0) / 2.0 + 1.0 + rf)),
    }
}

/// k -> infinity limits of the general-n catalog: with `alpha` present
/// 2 a b sqrt(n-2) / ((n-3) a^2 + 1), without it 2 sqrt(n-2) / (n-1).
pub fn limit_cn(n: usize, alpha: Option<f64>) -> Result<f64> {
    if n < 3 {
        return Err(Error::BadParams(format!("n must be at least 3, got {n}")));
    }
    let nf = n as f64;
    match alpha {
        Some(alpha) => {
            if !(0.0..=1.0).contains(&alpha) {
                return Err(Error::BadParams(format!(
                    "alpha must lie in [0, 1], got {alpha}"
                )));
            }
            let a2 = alpha * alpha;
            let b = (1.0 - a2).max(0.0).sqrt();
            Ok(2.0 * alpha * b * (nf - 2.0).sqrt() / ((nf - 3.0) * a2 + 1.0))
        }
        None => Ok(2.0 * (nf - 2.0).sqrt() / (nf - 1.0)),
    }
}

/// The input amplitude (as alpha^2) at which an input-dependent case peaks
/// at concurrence one: 1/(2k+3), k/(3k+2) and 1/3 for the four-qubit cases.
pub fn unit_alpha_sq_c4(case: u8, k: f64) -> Result<f64> {
    if !(k >= 0.0) {
        return Err(Error::BadParams(format!("k must be nonnegative, got {k}")));
    }
    match case {
        1 => Ok(1.0 / (2.0 * k + 3.0)),
        2 => Ok(k / (3.0 * k + 2.0)),
        3 => Ok(1.0 / 3.0),
        _ => Err(Error::BadParams(format!(
            "case {case} has no unit-concurrence input"
        ))),
    }
}

/// Convenience wrapper building a [`ConcurrenceReport`] from an analytic
/// value and an independently computed numeric one.
pub fn report(
    case_id: CaseId,
    k: f64,
    alpha_sq: Option<f64>,
    analytic: f64,
    numeric: f64,
) -> ConcurrenceReport {
    ConcurrenceReport {
        case_id,
        k,
        alpha_sq,
        analytic,
        numeric,
        abs_diff: (analytic - numeric).abs(),
    }
}

/// True when the report's two routes agree within `tol` (defaulting to the
/// crate-wide [`TOL`]).
pub fn report_consistent(r: &ConcurrenceReport, tol: Option<f64>) -> bool {
    r.abs_diff <= tol.unwrap_or(TOL)
}
