//! Dense pure-state linear algebra over labeled qubits.
//!
//! A [`PureState`] stores 2^n complex amplitudes for n labeled qubits.
//! The leftmost label is the most significant bit: the ket |q1 q2 ... qn>
//! sits at index sum_i q_i * 2^(n-i). All constructors normalize their
//! input, and projective measurement returns a probability together with
//! the normalized residual on the unmeasured qubits.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Default comparison tolerance for probabilities, norms and traces.
pub const TOL: f64 = 1e-10;
/// Tolerance for Gram-matrix identity and unitarity checks.
pub const TOL_GRAM: f64 = 1e-12;
/// Measurement branches below this weight are treated as impossible.
pub const TOL_NULL: f64 = 1e-14;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Normalized pure state on a register of labeled qubits.
#[derive(Clone, Debug)]
pub struct PureState {
    labels: Vec<String>,
    amps: Vec<C64>,
}

impl PureState {
    /// Builds a state from explicit labels and amplitudes, normalizing the
    /// amplitude vector.
    pub fn new<L: Into<String>>(labels: Vec<L>, amps: Vec<C64>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        if n == 0 {
            return Err(Error::BadParams("register needs at least one qubit".into()));
        }
        let expected = 1usize << n;
        if amps.len() != expected {
            return Err(Error::LengthMismatch {
                qubits: n,
                expected,
                got: amps.len(),
            });
        }
        debug_assert!(
            labels.iter().collect::<std::collections::HashSet<_>>().len() == n,
            "duplicate qubit labels"
        );
        let norm = l2_norm(&amps);
        if norm <= 1e-12 {
            return Err(Error::ZeroVector);
        }
        let inv = 1.0 / norm;
        let amps = amps.into_iter().map(|a| a * inv).collect();
        Ok(PureState { labels, amps })
    }

    /// Computational basis state for the given bit string, one bit per label.
    pub fn basis<L: Into<String>>(labels: Vec<L>, bits: &[u8]) -> Result<Self> {
        let n = bits.len();
        let mut idx = 0usize;
        for &b in bits {
            idx = (idx << 1) | (b as usize & 1);
        }
        let mut amps = vec![ZERO; 1 << n];
        amps[idx] = ONE;
        PureState::new(labels, amps)
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> C64 {
        self.amps[index]
    }

    /// Tensor position of a label (0 = leftmost, most significant).
    pub fn position(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownQubit(label.to_string()))
    }

    /// Tensor product; `self`'s qubits occupy the more significant slots.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let nb = other.num_qubits();
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        let mut amps = vec![ZERO; self.amps.len() * other.amps.len()];
        for (i, &a) in self.amps.iter().enumerate() {
            if a == ZERO {
                continue;
            }
            for (j, &b) in other.amps.iter().enumerate() {
                amps[(i << nb) | j] = a * b;
            }
        }
        PureState { labels, amps }
    }

    /// Applies a one-qubit gate to the designated tensor slot.
    pub fn apply_single(&self, label: &str, gate: &Gate2) -> Result<PureState> {
        let pos = self.position(label)?;
        let shift = self.num_qubits() - 1 - pos;
        let mask = 1usize << shift;
        let m = gate.entries();
        let mut amps = self.amps.clone();
        for i in 0..amps.len() {
            if i & mask == 0 {
                let j = i | mask;
                let a0 = amps[i];
                let a1 = amps[j];
                amps[i] = m[0][0] * a0 + m[0][1] * a1;
                amps[j] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
        Ok(PureState {
            labels: self.labels.clone(),
            amps,
        })
    }

    /// Projects the listed qubits onto `onto` (whose tensor slots follow the
    /// order of `subset`), returning the outcome probability and the
    /// normalized residual on the remaining qubits.
    ///
    /// Outcomes below [`TOL_NULL`] have no residual and yield
    /// [`Error::NullOutcome`].
    pub fn project(&self, subset: &[&str], onto: &PureState) -> Result<(f64, PureState)> {
        if onto.num_qubits() != subset.len() {
            return Err(Error::DimensionMismatch(onto.num_qubits(), subset.len()));
        }
        let mut pos = Vec::with_capacity(subset.len());
        for label in subset {
            let p = self.position(label)?;
            if pos.contains(&p) {
                return Err(Error::BadParams(format!("duplicate qubit `{label}` in subset")));
            }
            pos.push(p);
        }
        if pos.len() == self.num_qubits() {
            // Full-register projection leaves nothing behind; callers use
            // `inner` for that. Keep a one-qubit residual API only.
            return Err(Error::BadParams(
                "projection must leave at least one qubit".into(),
            ));
        }
        let n = self.num_qubits();
        let comp: Vec<usize> = (0..n).filter(|p| !pos.contains(p)).collect();
        let mut residual = vec![ZERO; 1 << comp.len()];
        for (i, &a) in self.amps.iter().enumerate() {
            if a == ZERO {
                continue;
            }
            let mut s = 0usize;
            for &p in &pos {
                s = (s << 1) | ((i >> (n - 1 - p)) & 1);
            }
            let o = onto.amps[s];
            if o == ZERO {
                continue;
            }
            let mut c = 0usize;
            for &p in &comp {
                c = (c << 1) | ((i >> (n - 1 - p)) & 1);
            }
            residual[c] += o.conj() * a;
        }
        let probability: f64 = residual.iter().map(|z| z.norm_sqr()).sum();
        if probability < TOL_NULL {
            return Err(Error::NullOutcome);
        }
        let inv = 1.0 / probability.sqrt();
        for z in &mut residual {
            *z *= inv;
        }
        let labels = comp.iter().map(|&p| self.labels[p].clone()).collect();
        Ok((
            probability,
            PureState {
                labels,
                amps: residual,
            },
        ))
    }

    /// <self|other> under the shared index convention.
    pub fn inner(&self, other: &PureState) -> Result<C64> {
        if self.num_qubits() != other.num_qubits() {
            return Err(Error::DimensionMismatch(
                self.num_qubits(),
                other.num_qubits(),
            ));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// |<self|other>|^2; insensitive to the global phase of either state.
    pub fn fidelity(&self, other: &PureState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Partial trace over everything but `keep`; rows/columns follow the
    /// order of `keep`.
    pub fn reduced_density(&self, keep: &[&str]) -> Result<DensityMatrix> {
        let mut pos = Vec::with_capacity(keep.len());
        for label in keep {
            let p = self.position(label)?;
            if pos.contains(&p) {
                return Err(Error::BadParams(format!("duplicate qubit `{label}` in keep")));
            }
            pos.push(p);
        }
        let n = self.num_qubits();
        let comp: Vec<usize> = (0..n).filter(|p| !pos.contains(p)).collect();
        let kdim = 1usize << pos.len();
        // Bucket amplitudes by the traced-out index, then accumulate the
        // outer product of each bucket.
        let mut buckets: Vec<Vec<(usize, C64)>> = vec![Vec::new(); 1 << comp.len()];
        for (i, &a) in self.amps.iter().enumerate() {
            if a == ZERO {
                continue;
            }
            let mut kidx = 0usize;
            for &p in &pos {
                kidx = (kidx << 1) | ((i >> (n - 1 - p)) & 1);
            }
            let mut t = 0usize;
            for &p in &comp {
                t = (t << 1) | ((i >> (n - 1 - p)) & 1);
            }
            buckets[t].push((kidx, a));
        }
        let mut mat = DMatrix::<C64>::zeros(kdim, kdim);
        for bucket in buckets {
            for &(r, ar) in &bucket {
                for &(c, ac) in &bucket {
                    mat[(r, c)] += ar * ac.conj();
                }
            }
        }
        Ok(DensityMatrix { mat })
    }
}

/// Builds a normalized state on qubits labeled "1".."n".
pub fn make_state(n: usize, amps: &[C64]) -> Result<PureState> {
    if n == 0 {
        return Err(Error::BadParams("register needs at least one qubit".into()));
    }
    let expected = 1usize << n;
    if amps.len() != expected {
        return Err(Error::LengthMismatch {
            qubits: n,
            expected,
            got: amps.len(),
        });
    }
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    PureState::new(labels, amps.to_vec())
}

/// Real-amplitude convenience wrapper around [`make_state`].
pub fn make_state_real(n: usize, amps: &[f64]) -> Result<PureState> {
    let amps: Vec<C64> = amps.iter().map(|&x| C64::new(x, 0.0)).collect();
    make_state(n, &amps)
}

/// Matrix of pairwise inner products G[i][j] = <s_i|s_j>.
pub fn gram(states: &[PureState]) -> Result<DMatrix<C64>> {
    let m = states.len();
    let mut g = DMatrix::<C64>::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            g[(i, j)] = states[i].inner(&states[j])?;
        }
    }
    Ok(g)
}

/// Largest absolute entry of `g - I`.
pub fn gram_identity_deviation(g: &DMatrix<C64>) -> f64 {
    let mut dev = 0.0f64;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { ONE } else { ZERO };
            dev = dev.max((g[(i, j)] - target).norm());
        }
    }
    dev
}

fn l2_norm(amps: &[C64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// One-qubit unitary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gate2 {
    m: [[C64; 2]; 2],
}

impl Gate2 {
    pub const IDENTITY: Gate2 = Gate2 {
        m: [[ONE, ZERO], [ZERO, ONE]],
    };
    pub const SIGMA_X: Gate2 = Gate2 {
        m: [[ZERO, ONE], [ONE, ZERO]],
    };
    /// sigma_y = [[0, -i], [i, 0]].
    pub const SIGMA_Y: Gate2 = Gate2 {
        m: [
            [ZERO, C64::new(0.0, -1.0)],
            [C64::new(0.0, 1.0), ZERO],
        ],
    };
    pub const SIGMA_Z: Gate2 = Gate2 {
        m: [[ONE, ZERO], [ZERO, C64::new(-1.0, 0.0)]],
    };
    /// i*sigma_y maps |0> -> -|1> and |1> -> |0>.
    pub const I_SIGMA_Y: Gate2 = Gate2 {
        m: [[ZERO, ONE], [C64::new(-1.0, 0.0), ZERO]],
    };

    /// Validates unitarity (U U† = I within [`TOL_GRAM`]).
    pub fn new(m: [[C64; 2]; 2]) -> Result<Self> {
        let g = Gate2 { m };
        let u = g.m;
        let mut dev = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                let mut e = ZERO;
                for t in 0..2 {
                    e += u[r][t] * u[c][t].conj();
                }
                let target = if r == c { ONE } else { ZERO };
                dev = dev.max((e - target).norm());
            }
        }
        if dev > TOL_GRAM {
            return Err(Error::NotUnitary);
        }
        Ok(g)
    }

    pub fn entries(&self) -> &[[C64; 2]; 2] {
        &self.m
    }

    pub fn adjoint(&self) -> Gate2 {
        Gate2 {
            m: [
                [self.m[0][0].conj(), self.m[1][0].conj()],
                [self.m[0][1].conj(), self.m[1][1].conj()],
            ],
        }
    }
}

/// Density matrix on a power-of-two dimension.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    mat: DMatrix<C64>,
}

impl DensityMatrix {
    pub fn from_matrix(mat: DMatrix<C64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() || !mat.nrows().is_power_of_two() {
            return Err(Error::BadDensity(format!(
                "dimension {}x{} is not a square power of two",
                mat.nrows(),
                mat.ncols()
            )));
        }
        Ok(DensityMatrix { mat })
    }

    /// |s><s| of a pure state.
    pub fn from_pure(s: &PureState) -> DensityMatrix {
        let dim = s.amplitudes().len();
        let mut mat = DMatrix::<C64>::zeros(dim, dim);
        for (r, &ar) in s.amplitudes().iter().enumerate() {
            for (c, &ac) in s.amplitudes().iter().enumerate() {
                mat[(r, c)] = ar * ac.conj();
            }
        }
        DensityMatrix { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    pub fn trace(&self) -> C64 {
        self.mat.trace()
    }

    /// tr(rho^2); 1 for pure states.
    pub fn purity(&self) -> f64 {
        (&self.mat * &self.mat).trace().re
    }

    /// Checks hermiticity, unit trace and positive semidefiniteness
    /// (eigenvalues above -1e-9).
    pub fn validate(&self) -> Result<()> {
        let dim = self.dim();
        for r in 0..dim {
            for c in 0..dim {
                if (self.mat[(r, c)] - self.mat[(c, r)].conj()).norm() > TOL {
                    return Err(Error::BadDensity("not Hermitian".into()));
                }
            }
        }
        if (self.trace() - ONE).norm() > TOL {
            return Err(Error::BadDensity("trace differs from one".into()));
        }
        let eig = nalgebra::SymmetricEigen::new(self.mat.clone());
        if eig.eigenvalues.iter().any(|&ev| ev < -1e-9) {
            return Err(Error::BadDensity("negative eigenvalue".into()));
        }
        Ok(())
    }
}
