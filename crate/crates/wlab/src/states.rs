//! Constructors for the named states used by the protocols: the k-weighted
//! single-excitation (W-type) family on 3..n qubits, the four-state
//! teleportation measurement basis built from it, Bell pairs, and the
//! single/two-qubit input states.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevec::{C64, PureState};

/// Parameters of one member of the W-type family: qubit count `n >= 3`,
/// weight `k >= 0`, and `n-1` phases (radians) attached to terms 2..n of
/// the superposition; term 1 always carries phase 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WParams {
    pub n: usize,
    pub k: f64,
    pub phases: Vec<f64>,
}

impl WParams {
    pub fn new(n: usize, k: f64, phases: Vec<f64>) -> Result<Self> {
        let p = WParams { n, k, phases };
        p.validate()?;
        Ok(p)
    }

    /// Phase-free member.
    pub fn flat(n: usize, k: f64) -> Result<Self> {
        WParams::new(n, k, vec![0.0; n.saturating_sub(1)])
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::BadParams(format!("n must be at least 3, got {}", self.n)));
        }
        if !(self.k >= 0.0) {
            return Err(Error::BadParams(format!("k must be nonnegative, got {}", self.k)));
        }
        if self.phases.len() != self.n - 1 {
            return Err(Error::BadParams(format!(
                "expected {} phases for n = {}, got {}",
                self.n - 1,
                self.n,
                self.phases.len()
            )));
        }
        Ok(())
    }

    /// Term magnitudes (1, sqrt k, sqrt(k+1), .., sqrt(k+n-3), sqrt(big))
    /// where big = (n-2)k + (n-2)(n-3)/2 + 1, before normalization.
    pub fn magnitudes(&self) -> Vec<f64> {
        let n = self.n;
        let k = self.k;
        let mut mags = Vec::with_capacity(n);
        mags.push(1.0);
        for j in 2..n {
            mags.push((k + (j - 2) as f64).sqrt());
        }
        mags.push(self.final_magnitude_sq().sqrt());
        mags
    }

    /// Squared magnitude of the last term: (n-2)k + (n-2)(n-3)/2 + 1.
    pub fn final_magnitude_sq(&self) -> f64 {
        let n = self.n as f64;
        (n - 2.0) * self.k + (n - 2.0) * (n - 3.0) / 2.0 + 1.0
    }

    /// Closed form of the normalization constant: 1/sqrt((n-2)(2k+n-3)+2).
    pub fn norm_constant(&self) -> f64 {
        let n = self.n as f64;
        1.0 / ((n - 2.0) * (2.0 * self.k + n - 3.0) + 2.0).sqrt()
    }

    /// Complex term coefficients c_j = |c_j| e^{i phase_j}, normalized.
    pub fn coefficients(&self) -> Vec<C64> {
        let norm = self.norm_constant();
        self.magnitudes()
            .iter()
            .enumerate()
            .map(|(idx, &mag)| {
                let phase = if idx == 0 { 0.0 } else { self.phases[idx - 1] };
                Complex64::from_polar(mag * norm, phase)
            })
            .collect()
    }
}

/// Sign convention for the minus-branch basis states.
///
/// `Corrected` negates only the final (largest-coefficient) term of the
/// eta-/xi-minus states, which makes the four-state set orthonormal and the
/// protocol decomposition exact. `AsPrinted` reproduces the literal source
/// expressions: for n = 4 the last two terms flip together (the set is then
/// not orthogonal), for other n only the final term carries the sign and the
/// two variants coincide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisVariant {
    #[default]
    Corrected,
    AsPrinted,
}

impl std::str::FromStr for BasisVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corrected" => Ok(BasisVariant::Corrected),
            "as-printed" | "as_printed" => Ok(BasisVariant::AsPrinted),
            other => Err(Error::BadParams(format!("unknown basis variant `{other}`"))),
        }
    }
}

/// The four Bell pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BellLabel {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [
        BellLabel::PhiPlus,
        BellLabel::PhiMinus,
        BellLabel::PsiPlus,
        BellLabel::PsiMinus,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BellLabel::PhiPlus => "phi+",
            BellLabel::PhiMinus => "phi-",
            BellLabel::PsiPlus => "psi+",
            BellLabel::PsiMinus => "psi-",
        }
    }
}

impl std::fmt::Display for BellLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for BellLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phi+" | "phiplus" => Ok(BellLabel::PhiPlus),
            "phi-" | "phiminus" => Ok(BellLabel::PhiMinus),
            "psi+" | "psiplus" => Ok(BellLabel::PsiPlus),
            "psi-" | "psiminus" => Ok(BellLabel::PsiMinus),
            other => Err(Error::BadParams(format!("unknown Bell label `{other}`"))),
        }
    }
}

/// The k-weighted single-excitation resource state on qubits "1".."n":
/// coefficients (1, sqrt k, .., sqrt(k+n-3), sqrt((n-2)k+(n-2)(n-3)/2+1))
/// on the weight-one basis strings |10..0>, |010..0>, .., |0..01>.
pub fn w_state(p: &WParams) -> Result<PureState> {
    p.validate()?;
    let n = p.n;
    let coeffs = p.coefficients();
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
    for (j, &c) in coeffs.iter().enumerate() {
        // term j+1 excites qubit j+1, i.e. index 2^(n-1-j)
        amps[1 << (n - 1 - j)] = c;
    }
    PureState::new(labels, amps)
}

/// The four projection states {eta+, eta-, xi+, xi-} on the register
/// (a, 1, .., n-1).
#[derive(Clone, Debug)]
pub struct TeleportBasis {
    pub eta_plus: PureState,
    pub eta_minus: PureState,
    pub xi_plus: PureState,
    pub xi_minus: PureState,
}

impl TeleportBasis {
    /// Outcome order used everywhere: eta+, eta-, xi+, xi-.
    pub fn states(&self) -> [&PureState; 4] {
        [&self.eta_plus, &self.eta_minus, &self.xi_plus, &self.xi_minus]
    }

    pub const LABELS: [&'static str; 4] = ["eta+", "eta-", "xi+", "xi-"];
}

/// Builds the measurement basis for an `n`-qubit resource; the states act on
/// n qubits labeled (a, 1, .., n-1).
///
/// The eta states put coefficient c_j on |0>_a |e_j> for j < n and c_n on
/// |1>_a |0..0>; the xi states are their image under a bit flip of qubit a.
/// Minus-branch signs follow the [`BasisVariant`].
pub fn teleport_basis(
    n: usize,
    k: f64,
    phases: &[f64],
    variant: BasisVariant,
) -> Result<TeleportBasis> {
    let params = WParams::new(n, k, phases.to_vec())?;
    let coeffs = params.coefficients();
    let labels: Vec<String> = std::iter::once("a".to_string())
        .chain((1..n).map(|i| i.to_string()))
        .collect();

    // Indices within the n-qubit register (a, 1, .., n-1); qubit a is the
    // most significant bit.
    let a_mask = 1usize << (n - 1);
    let dim = 1usize << n;

    let build = |flip_a: bool, minus: bool| -> Result<PureState> {
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        for (idx, &c) in coeffs.iter().enumerate() {
            let term = idx + 1; // 1-based term number
            let base = if term < params.n {
                // excitation of resource slot `term` sits at bit n-1-term
                1usize << (n - 1 - term)
            } else {
                a_mask
            };
            let index = if flip_a { base ^ a_mask } else { base };
            let sign = if minus && flips_on_minus(params.n, term, variant) {
                -1.0
            } else {
                1.0
            };
            amps[index] = c * sign;
        }
        PureState::new(labels.clone(), amps)
    };

    Ok(TeleportBasis {
        eta_plus: build(false, false)?,
        eta_minus: build(false, true)?,
        xi_plus: build(true, false)?,
        xi_minus: build(true, true)?,
    })
}

/// Which terms change sign on the minus branch. Corrected: only the final
/// term. AsPrinted at n = 4: the last two terms flip together; other n have
/// a single signed term and match Corrected.
fn flips_on_minus(n: usize, term: usize, variant: BasisVariant) -> bool {
    match variant {
        BasisVariant::Corrected => term == n,
        BasisVariant::AsPrinted => {
            if n == 4 {
                term == n || term == n - 1
            } else {
                term == n
            }
        }
    }
}

/// One of the four Bell pairs on labels ("1", "2").
pub fn bell(label: BellLabel) -> PureState {
    let r = 1.0 / 2.0f64.sqrt();
    let amps = match label {
        BellLabel::PhiPlus => [r, 0.0, 0.0, r],
        BellLabel::PhiMinus => [r, 0.0, 0.0, -r],
        BellLabel::PsiPlus => [0.0, r, r, 0.0],
        BellLabel::PsiMinus => [0.0, r, -r, 0.0],
    };
    let amps: Vec<C64> = amps.iter().map(|&x| C64::new(x, 0.0)).collect();
    PureState::new(vec!["1", "2"], amps).expect("bell state construction cannot fail")
}

/// alpha|0> + sqrt(1-alpha^2)|1> on label "a", with beta real nonnegative.
pub fn input_single(alpha: f64) -> Result<PureState> {
    let beta = beta_from_alpha(alpha)?;
    PureState::new(vec!["a"], vec![C64::new(alpha, 0.0), C64::new(beta, 0.0)])
}

/// alpha|00> + sqrt(1-alpha^2)|11> on labels ("a", "b").
pub fn input_pair(alpha: f64) -> Result<PureState> {
    let beta = beta_from_alpha(alpha)?;
    PureState::new(
        vec!["a", "b"],
        vec![
            C64::new(alpha, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(beta, 0.0),
        ],
    )
}

fn beta_from_alpha(alpha: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::BadParams(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )));
    }
    Ok((1.0 - alpha * alpha).max(0.0).sqrt())
}

/// The shared resource for dense coding: the eta-plus basis state relabeled
/// to qubits "1".."n" (sender holds qubit 1), phase-free.
pub fn dense_resource(n: usize, k: f64) -> Result<PureState> {
    let basis = teleport_basis(n, k, &vec![0.0; n - 1], BasisVariant::Corrected)?;
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    PureState::new(labels, basis.eta_plus.amplitudes().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevec::{gram, gram_identity_deviation, Gate2};

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    #[test]
    fn w_state_four_qubit_weights() {
        let s = w_state(&WParams::flat(4, 1.0).unwrap()).unwrap();
        let norm = 2.0 * SQRT2;
        let expected = [
            (8usize, 1.0 / norm),
            (4, 1.0 / norm),
            (2, SQRT2 / norm),
            (1, 2.0 / norm),
        ];
        for (idx, val) in expected {
            assert!((s.amp(idx).re - val).abs() < 1e-14, "index {idx}");
            assert!(s.amp(idx).im.abs() < 1e-15);
        }
        let weight: f64 = s.amplitudes().iter().map(|a| a.norm_sqr()).sum();
        assert!((weight - 1.0).abs() < 1e-14);
    }

    #[test]
    fn w_state_k_zero_drops_second_term() {
        let s = w_state(&WParams::flat(4, 0.0).unwrap()).unwrap();
        assert!((s.amp(8).re - 0.5).abs() < 1e-14);
        assert!(s.amp(4).norm() < 1e-15);
        assert!((s.amp(2).re - 0.5).abs() < 1e-14);
        assert!((s.amp(1).re - SQRT2 / 2.0).abs() < 1e-14);
    }

    #[test]
    fn w_state_six_qubit_squared_weights() {
        let s = w_state(&WParams::flat(6, 2.0).unwrap()).unwrap();
        let expected = [1.0, 2.0, 3.0, 4.0, 5.0, 15.0];
        for (j, &num) in expected.iter().enumerate() {
            let idx = 1usize << (5 - j);
            assert!(
                (s.amp(idx).norm_sqr() - num / 30.0).abs() < 1e-14,
                "term {}",
                j + 1
            );
        }
    }

    #[test]
    fn w_state_support_is_weight_one() {
        for n in 3..=8 {
            let s = w_state(&WParams::flat(n, 1.7).unwrap()).unwrap();
            for (i, a) in s.amplitudes().iter().enumerate() {
                let on_support = i.count_ones() == 1;
                assert_eq!(a.norm() > 1e-15, on_support, "n={n} index={i}");
            }
        }
    }

    #[test]
    fn norm_constant_matches_construction() {
        for n in [3usize, 4, 5, 6, 7, 8] {
            for k in [0.0, 0.5, 1.0, 2.0, 10.0, 100.0] {
                let p = WParams::flat(n, k).unwrap();
                let mags_sq: f64 = p.magnitudes().iter().map(|m| m * m).sum();
                assert!(
                    (p.norm_constant() * mags_sq.sqrt() - 1.0).abs() < 1e-12,
                    "n={n} k={k}"
                );
                // n = 4 and n = 3 reductions of the closed form.
                if n == 4 {
                    assert!((p.norm_constant() - 1.0 / (2.0 * (k + 1.0).sqrt())).abs() < 1e-15);
                }
                if n == 3 {
                    assert!((p.norm_constant() - 1.0 / (2.0 * k + 2.0).sqrt()).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn w_state_rejects_bad_params() {
        assert!(matches!(
            WParams::flat(2, 1.0).unwrap_err(),
            Error::BadParams(_)
        ));
        assert!(matches!(
            WParams::flat(4, -0.5).unwrap_err(),
            Error::BadParams(_)
        ));
        assert!(matches!(
            WParams::new(4, 1.0, vec![0.0]).unwrap_err(),
            Error::BadParams(_)
        ));
    }

    #[test]
    fn corrected_eta_minus_flips_only_final_term() {
        let basis = teleport_basis(4, 1.0, &[0.0; 3], BasisVariant::Corrected).unwrap();
        let norm = 2.0 * SQRT2;
        // eta- = (|0100> + |0010> + sqrt2 |0001> - 2 |1000>)/(2 sqrt2)
        assert!((basis.eta_minus.amp(4).re - 1.0 / norm).abs() < 1e-14);
        assert!((basis.eta_minus.amp(2).re - 1.0 / norm).abs() < 1e-14);
        assert!((basis.eta_minus.amp(1).re - SQRT2 / norm).abs() < 1e-14);
        assert!((basis.eta_minus.amp(8).re + 2.0 / norm).abs() < 1e-14);

        let g = gram(&basis.states().map(|s| s.clone())).unwrap();
        assert!(gram_identity_deviation(&g) < 1e-14);
    }

    #[test]
    fn as_printed_four_qubit_basis_is_not_orthogonal() {
        let basis = teleport_basis(4, 1.0, &[0.0; 3], BasisVariant::AsPrinted).unwrap();
        let overlap = basis.eta_plus.inner(&basis.eta_minus).unwrap();
        assert!((overlap.re + 0.5).abs() < 1e-14);
        assert!(overlap.im.abs() < 1e-15);
        let overlap = basis.xi_plus.inner(&basis.xi_minus).unwrap();
        assert!((overlap.re + 0.5).abs() < 1e-14);
    }

    #[test]
    fn corrected_gram_identity_over_grid() {
        for n in 4..=8 {
            for k in [0.0, 0.5, 1.0, 2.0, 10.0, 100.0] {
                let basis =
                    teleport_basis(n, k, &vec![0.0; n - 1], BasisVariant::Corrected).unwrap();
                let g = gram(&basis.states().map(|s| s.clone())).unwrap();
                assert!(gram_identity_deviation(&g) < 1e-12, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn sigma_z_on_ancilla_maps_eta_plus_to_eta_minus() {
        for k in [0.0, 0.7, 3.0] {
            let phases = [0.3, -1.2, 0.9];
            let basis = teleport_basis(4, k, &phases, BasisVariant::Corrected).unwrap();
            let mapped = basis.eta_plus.apply_single("a", &Gate2::SIGMA_Z).unwrap();
            let diff: f64 = mapped
                .amplitudes()
                .iter()
                .zip(basis.eta_minus.amplitudes())
                .map(|(x, y)| (x - y).norm())
                .sum();
            assert!(diff < 1e-12, "k={k}");
        }
    }

    #[test]
    fn eta_and_xi_supports_are_disjoint() {
        let basis = teleport_basis(5, 2.0, &[0.1, 0.2, 0.3, 0.4], BasisVariant::Corrected).unwrap();
        for eta in [&basis.eta_plus, &basis.eta_minus] {
            for xi in [&basis.xi_plus, &basis.xi_minus] {
                // Disjoint supports make the overlap exactly zero.
                assert_eq!(eta.inner(xi).unwrap(), C64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn bell_states_match_convention() {
        let phi_plus = bell(BellLabel::PhiPlus);
        assert!((phi_plus.amp(0).re - 1.0 / SQRT2).abs() < 1e-15);
        assert!((phi_plus.amp(3).re - 1.0 / SQRT2).abs() < 1e-15);
        let psi_minus = bell(BellLabel::PsiMinus);
        assert!((psi_minus.amp(1).re - 1.0 / SQRT2).abs() < 1e-15);
        assert!((psi_minus.amp(2).re + 1.0 / SQRT2).abs() < 1e-15);
        let g = gram(&BellLabel::ALL.map(bell)).unwrap();
        assert!(gram_identity_deviation(&g) < 1e-14);
    }

    #[test]
    fn input_states() {
        let s = input_single(0.6).unwrap();
        assert!((s.amp(0).re - 0.6).abs() < 1e-15);
        assert!((s.amp(1).re - 0.8).abs() < 1e-15);
        let s = input_single(1.0).unwrap();
        assert_eq!(s.amp(1).norm(), 0.0);
        let s = input_single(1.0 / SQRT2).unwrap();
        assert!((s.amp(0).re - s.amp(1).re).abs() < 1e-15);
        assert!(input_single(1.2).is_err());

        let p = input_pair(1.0 / SQRT2).unwrap();
        assert!((p.amp(0).re - 1.0 / SQRT2).abs() < 1e-15);
        assert!((p.amp(3).re - 1.0 / SQRT2).abs() < 1e-15);
        let p = input_pair(1.0).unwrap();
        assert!((p.amp(0).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dense_resource_matches_flat_eta_plus() {
        let r = dense_resource(4, 1.0).unwrap();
        assert_eq!(r.labels(), &["1", "2", "3", "4"]);
        let norm = 2.0 * SQRT2;
        assert!((r.amp(0b0100).re - 1.0 / norm).abs() < 1e-14);
        assert!((r.amp(0b0010).re - 1.0 / norm).abs() < 1e-14);
        assert!((r.amp(0b0001).re - SQRT2 / norm).abs() < 1e-14);
        assert!((r.amp(0b1000).re - 2.0 / norm).abs() < 1e-14);
    }
}
