//! Density matrices, reference bases and the state families used across the
//! crate, including seeded random ensembles for fuzzing.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{dim_mismatch, Error, Result};
use crate::linalg::{hermitian_eig, kron, partial_trace, ComplexMatrix, HERMITIAN_TOL};

/// Allowed deviation of the trace from one.
pub const TRACE_TOL: f64 = 1e-9;
/// Most negative eigenvalue tolerated in a density matrix.
pub const PSD_TOL: f64 = 1e-9;
/// Tolerance on `max |U^dagger U - I|` for a basis.
pub const UNITARY_TOL: f64 = 1e-9;

/// Positive semidefinite, unit-trace matrix over an ordered list of subsystems.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity before wrapping.
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        check_dims(matrix.dim(), &dims)?;
        let eig = hermitian_eig(&matrix)?;
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidTrace { trace });
        }
        let min_eigenvalue = eig.eigenvalues.first().copied().unwrap_or(0.0);
        if min_eigenvalue < -PSD_TOL {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { matrix, dims })
    }

    /// Single-system state.
    pub fn single(matrix: ComplexMatrix) -> Result<Self> {
        let d = matrix.dim();
        Self::new(matrix, vec![d])
    }

    // Constructions that are valid by design skip the eigendecomposition.
    pub(crate) fn from_parts(matrix: ComplexMatrix, dims: Vec<usize>) -> Self {
        debug_assert_eq!(matrix.dim(), dims.iter().product::<usize>());
        debug_assert!(matrix.hermiticity_defect() <= HERMITIAN_TOL);
        debug_assert!((matrix.trace().re - 1.0).abs() <= TRACE_TOL);
        Self { matrix, dims }
    }

    /// `|psi><psi|` for the normalized `amplitudes`.
    pub fn pure(amplitudes: &[Complex64], dims: Vec<usize>) -> Result<Self> {
        check_dims(amplitudes.len(), &dims)?;
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidParams("state vector has zero or non-finite norm".into()));
        }
        let psi: Vec<Complex64> = amplitudes.iter().map(|z| z / norm).collect();
        Ok(Self::from_parts(ComplexMatrix::outer(&psi), dims))
    }

    /// Convex combination `sum_k w_k rho_k`. Weights must be non-negative and sum to one.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidParams("empty mixture".into()))?
            .1;
        let total: f64 = parts.iter().map(|(w, _)| w).sum();
        if parts.iter().any(|(w, _)| *w < 0.0) || (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParams(format!("mixture weights must be a probability vector (sum {total})")));
        }
        let mut acc = ComplexMatrix::zeros(first.dim());
        for (w, rho) in parts {
            if rho.dims != first.dims {
                return Err(dim_mismatch("mixture components have different subsystem structure"));
            }
            acc = &acc + &rho.matrix.scale(*w);
        }
        Ok(Self::from_parts(acc, first.dims.clone()))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Same matrix, reinterpreted over a different subsystem split.
    pub fn with_dims(self, dims: Vec<usize>) -> Result<Self> {
        check_dims(self.dim(), &dims)?;
        Ok(Self { matrix: self.matrix, dims })
    }

    /// Reduced state on the listed subsystems.
    pub fn reduce(&self, keep: &[usize]) -> Result<Self> {
        let matrix = partial_trace(&self.matrix, &self.dims, keep)?;
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let dims = keep.iter().map(|&k| self.dims[k]).collect();
        Ok(Self::from_parts(matrix, dims))
    }

    /// Dimensions `(d_A, d_B)` of a bipartite state.
    pub fn bipartite_dims(&self) -> Result<(usize, usize)> {
        match self.dims[..] {
            [a, b] => Ok((a, b)),
            _ => Err(dim_mismatch(format!(
                "expected a bipartite state, got subsystem dimensions {:?}",
                self.dims
            ))),
        }
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eig(&self.matrix)
            .expect("density matrices are Hermitian")
            .eigenvalues
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }
}

fn check_dims(total: usize, dims: &[usize]) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) || dims.iter().product::<usize>() != total {
        return Err(dim_mismatch(format!(
            "subsystem dimensions {dims:?} do not factor dimension {total}"
        )));
    }
    Ok(())
}

/// Orthonormal reference basis; column `k` of `unitary` is the k-th basis vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Basis {
    unitary: ComplexMatrix,
    label: String,
}

impl Basis {
    pub fn new(unitary: ComplexMatrix, label: impl Into<String>) -> Result<Self> {
        let defect = unitary.unitarity_defect();
        if defect > UNITARY_TOL {
            return Err(Error::NotUnitary { defect });
        }
        Ok(Self { unitary, label: label.into() })
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.unitary.dim()
    }

    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.unitary.column(k)
    }

    pub fn vectors(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim()).map(|k| self.vector(k)).collect()
    }

    /// Product basis with vectors `|i> (x) |j>`, ordered `i * d_other + j`.
    pub fn tensor(&self, other: &Basis) -> Basis {
        Basis {
            unitary: kron(&self.unitary, &other.unitary),
            label: format!("{}⊗{}", self.label, other.label),
        }
    }
}

pub fn computational_basis(d: usize) -> Basis {
    assert!(d >= 2, "basis dimension must be at least 2");
    Basis {
        unitary: ComplexMatrix::identity(d),
        label: "computational".into(),
    }
}

/// Column `a` has entries `exp(2 pi i j a / d) / sqrt(d)`.
pub fn fourier_basis(d: usize) -> Basis {
    assert!(d >= 2, "basis dimension must be at least 2");
    let scale = 1.0 / (d as f64).sqrt();
    Basis {
        unitary: ComplexMatrix::from_fn(d, |j, a| {
            Complex64::from_polar(scale, 2.0 * PI * ((j * a) % d) as f64 / d as f64)
        }),
        label: "fourier".into(),
    }
}

/// Qubit `(|0> +- |1>)/sqrt 2`.
pub fn hadamard_basis() -> Basis {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    Basis {
        unitary: ComplexMatrix::from_entries(2, vec![h, h, h, -h]).expect("2x2"),
        label: "hadamard".into(),
    }
}

/// Qubit `(|0> +- i|1>)/sqrt 2`.
pub fn circular_basis() -> Basis {
    let h = FRAC_1_SQRT_2;
    Basis {
        unitary: ComplexMatrix::from_entries(
            2,
            vec![
                Complex64::new(h, 0.0),
                Complex64::new(h, 0.0),
                Complex64::new(0.0, h),
                Complex64::new(0.0, -h),
            ],
        )
        .expect("2x2"),
        label: "circular".into(),
    }
}

/// Pure state with every matrix entry equal to `1/d`.
pub fn maximally_coherent(d: usize) -> DensityMatrix {
    assert!(d >= 2, "dimension must be at least 2");
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    DensityMatrix::from_parts(ComplexMatrix::outer(&vec![amp; d]), vec![d])
}

pub fn maximally_mixed(dims: &[usize]) -> DensityMatrix {
    let d: usize = dims.iter().product();
    DensityMatrix::from_parts(ComplexMatrix::identity(d).scale(1.0 / d as f64), dims.to_vec())
}

/// The four two-qubit Bell vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BellVector {
    /// `(|00> + |11>)/sqrt 2`
    PhiPlus,
    /// `(|00> - |11>)/sqrt 2`
    PhiMinus,
    /// `(|01> + |10>)/sqrt 2`
    PsiPlus,
    /// `(|01> - |10>)/sqrt 2`
    PsiMinus,
}

impl BellVector {
    pub fn amplitudes(self) -> [Complex64; 4] {
        let h = FRAC_1_SQRT_2;
        let (a00, a01, a10, a11) = match self {
            BellVector::PhiPlus => (h, 0.0, 0.0, h),
            BellVector::PhiMinus => (h, 0.0, 0.0, -h),
            BellVector::PsiPlus => (0.0, h, h, 0.0),
            BellVector::PsiMinus => (0.0, h, -h, 0.0),
        };
        [a00, a01, a10, a11].map(|x| Complex64::new(x, 0.0))
    }

    pub fn projector(self) -> DensityMatrix {
        DensityMatrix::from_parts(ComplexMatrix::outer(&self.amplitudes()), vec![2, 2])
    }
}

/// Which Bell vector carries each of the four weights.
///
/// `PhiPhiPsiPsi` is `(Φ+, Φ-, Ψ+, Ψ-)`. `PhiPsiPsiPhi` is `(Φ+, Ψ+, Ψ-, Φ-)`;
/// the Bell-diagonal sweeps for the figure data use it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BellOrdering {
    #[default]
    PhiPhiPsiPsi,
    PhiPsiPsiPhi,
}

impl BellOrdering {
    pub fn vectors(self) -> [BellVector; 4] {
        use BellVector::*;
        match self {
            BellOrdering::PhiPhiPsiPsi => [PhiPlus, PhiMinus, PsiPlus, PsiMinus],
            BellOrdering::PhiPsiPsiPhi => [PhiPlus, PsiPlus, PsiMinus, PhiMinus],
        }
    }
}

/// Probability weights of a Bell-diagonal state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BellDiagonalParams {
    weights: [f64; 4],
}

impl BellDiagonalParams {
    pub fn new(weights: [f64; 4]) -> Result<Self> {
        let sum: f64 = weights.iter().sum();
        if weights.iter().any(|w| !(*w >= 0.0)) || (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParams(format!(
                "Bell weights {weights:?} are not a probability vector"
            )));
        }
        Ok(Self { weights })
    }

    pub fn weights(&self) -> [f64; 4] {
        self.weights
    }
}

/// `sum_k d_k |B_k><B_k|` in the chosen ordering.
pub fn bell_diagonal(params: &BellDiagonalParams, ordering: BellOrdering) -> DensityMatrix {
    let mut acc = ComplexMatrix::zeros(4);
    for (w, v) in params.weights.iter().zip(ordering.vectors()) {
        acc = &acc + &ComplexMatrix::outer(&v.amplitudes()).scale(*w);
    }
    DensityMatrix::from_parts(acc, vec![2, 2])
}

/// Parameter of the two-qutrit bound-entangled family, `2 <= gamma <= 5`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HorodeckiParams {
    gamma: f64,
}

impl HorodeckiParams {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(2.0..=5.0).contains(&gamma) {
            return Err(Error::InvalidParams(format!("gamma = {gamma} outside [2, 5]")));
        }
        Ok(Self { gamma })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// Building blocks of the qutrit family: `|psi+><psi+|`, `P+`, `P-`.
pub(crate) fn horodecki_components() -> [ComplexMatrix; 3] {
    let s = 1.0 / 3f64.sqrt();
    let mut psi = vec![Complex64::new(0.0, 0.0); 9];
    for k in 0..3 {
        psi[4 * k] = Complex64::new(s, 0.0);
    }
    let shifted = |offset: usize| {
        let mut diag = [0.0; 9];
        for a in 0..3 {
            diag[3 * a + (a + offset) % 3] = 1.0 / 3.0;
        }
        ComplexMatrix::from_real_diagonal(&diag)
    };
    // P+ covers |01>,|12>,|20>; P- covers |02>,|10>,|21>
    [ComplexMatrix::outer(&psi), shifted(1), shifted(2)]
}

/// Mixture `w0 |psi+><psi+| + w1 P+ + w2 P-` on two qutrits.
pub(crate) fn horodecki_mixture(weights: [f64; 3]) -> DensityMatrix {
    let [psi, plus, minus] = horodecki_components();
    let m = &(&psi.scale(weights[0]) + &plus.scale(weights[1])) + &minus.scale(weights[2]);
    DensityMatrix::from_parts(m, vec![3, 3])
}

/// `(2/7)|psi+><psi+| + (gamma/7) P+ + ((5 - gamma)/7) P-`.
pub fn horodecki_state(params: &HorodeckiParams) -> DensityMatrix {
    let g = params.gamma;
    horodecki_mixture([2.0 / 7.0, g / 7.0, (5.0 - g) / 7.0])
}

/// Generator for stream `stream` of the seeded family `seed`.
///
/// Streams are independent, so trial `t` of a fuzz run can be replayed alone.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state over the given subsystems.
pub fn random_pure_with<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> DensityMatrix {
    let d: usize = dims.iter().product();
    let v: Vec<Complex64> = (0..d).map(|_| complex_gaussian(rng)).collect();
    DensityMatrix::pure(&v, dims.to_vec()).expect("Gaussian vector is nonzero")
}

pub fn random_pure(d: usize, seed: u64) -> DensityMatrix {
    assert!(d >= 2, "dimension must be at least 2");
    random_pure_with(&[d], &mut ChaCha8Rng::seed_from_u64(seed))
}

/// `G G^dagger / Tr(G G^dagger)` for a complex Ginibre matrix `G`.
pub fn random_mixed_with<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> DensityMatrix {
    let d: usize = dims.iter().product();
    let g = ComplexMatrix::from_fn(d, |_, _| complex_gaussian(rng));
    let ggd = &g * &g.adjoint();
    let trace = ggd.trace().re;
    // exact Hermitian symmetrization guards the entropy routines against round-off
    let m = ComplexMatrix::from_fn(d, |j, k| (ggd[(j, k)] + ggd[(k, j)].conj()) * (0.5 / trace));
    DensityMatrix::from_parts(m, dims.to_vec())
}

pub fn random_mixed(d: usize, seed: u64) -> DensityMatrix {
    assert!(d >= 2, "dimension must be at least 2");
    random_mixed_with(&[d], &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Haar-random basis: Gram–Schmidt (QR with positive R diagonal) of a Ginibre matrix.
pub fn random_basis_with<R: Rng + ?Sized>(d: usize, rng: &mut R, label: impl Into<String>) -> Basis {
    assert!(d >= 2, "basis dimension must be at least 2");
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    while columns.len() < d {
        let mut v: Vec<Complex64> = (0..d).map(|_| complex_gaussian(rng)).collect();
        for _ in 0..2 {
            for q in &columns {
                let proj: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(q) {
                    *x -= proj * y;
                }
            }
        }
        let len = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        // a degenerate draw has probability zero; redraw if it ever happens
        if len > 1e-8 {
            columns.push(v.into_iter().map(|z| z / len).collect());
        }
    }
    Basis {
        unitary: ComplexMatrix::from_columns(&columns).expect("square"),
        label: label.into(),
    }
}

pub fn random_basis(d: usize, seed: u64) -> Basis {
    random_basis_with(d, &mut ChaCha8Rng::seed_from_u64(seed), format!("random:{seed}"))
}
