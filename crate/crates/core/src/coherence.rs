//! Entropies (in bits) and the relative entropy of coherence with respect to
//! an arbitrary reference basis.

use crate::error::{dim_mismatch, Error, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix};
use crate::states::{Basis, DensityMatrix, PSD_TOL};

/// Probabilities of the outcomes of a complete projective measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementDistribution {
    probabilities: Vec<f64>,
    basis_label: String,
}

impl MeasurementDistribution {
    /// Entries in `[-1e-12, 0)` are clipped to zero; the total must be within
    /// `1e-9` of one.
    pub fn new(probabilities: Vec<f64>, basis_label: impl Into<String>) -> Result<Self> {
        if let Some(&bad) = probabilities.iter().find(|p| !(**p >= -1e-12)) {
            return Err(Error::Domain { what: "a probability", value: bad });
        }
        let probabilities: Vec<f64> = probabilities.into_iter().map(|p| p.max(0.0)).collect();
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParams(format!("probabilities sum to {total}")));
        }
        Ok(Self { probabilities, basis_label: basis_label.into() })
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn basis_label(&self) -> &str {
        &self.basis_label
    }
}

/// `-sum p log2 p` with `0 log 0 = 0`. No validation.
pub fn shannon_bits(p: &[f64]) -> f64 {
    let h: f64 = p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum();
    h.max(0.0)
}

pub fn shannon_entropy(p: &MeasurementDistribution) -> f64 {
    shannon_bits(&p.probabilities)
}

/// Entropy of a spectrum. Eigenvalues in `[-1e-9, 0)` count as zero; anything
/// more negative is rejected.
pub fn spectrum_entropy(eigenvalues: &[f64]) -> Result<f64> {
    if let Some(&min) = eigenvalues.iter().find(|&&x| x < -PSD_TOL) {
        return Err(Error::NotPositive { min_eigenvalue: min });
    }
    Ok(shannon_bits(eigenvalues))
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    matrix_entropy(rho.matrix()).expect("density matrices are Hermitian and positive")
}

pub(crate) fn matrix_entropy(m: &ComplexMatrix) -> Result<f64> {
    spectrum_entropy(&hermitian_eig(m)?.eigenvalues)
}

/// `H(x) = -x log2 x - (1 - x) log2 (1 - x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&x) {
        return Err(Error::Domain { what: "the binary entropy", value: x });
    }
    let x = x.clamp(0.0, 1.0);
    Ok(shannon_bits(&[x, 1.0 - x]))
}

fn check_basis(rho: &DensityMatrix, basis: &Basis) -> Result<()> {
    if basis.dim() != rho.dim() {
        return Err(dim_mismatch(format!(
            "basis `{}` has dimension {}, state has dimension {}",
            basis.label(),
            basis.dim(),
            rho.dim()
        )));
    }
    Ok(())
}

/// Outcome probabilities `<k|rho|k>` of measuring `rho` in `basis`.
pub fn measure(rho: &DensityMatrix, basis: &Basis) -> Result<MeasurementDistribution> {
    check_basis(rho, basis)?;
    let probabilities = (0..basis.dim())
        .map(|k| rho.matrix().expectation(&basis.vector(k)))
        .collect();
    MeasurementDistribution::new(probabilities, basis.label())
}

/// Fully dephased state `sum_k <k|rho|k> |k><k|`, written in the computational
/// representation so it can be compared with `rho` directly.
pub fn dephase(rho: &DensityMatrix, basis: &Basis) -> Result<DensityMatrix> {
    let p = measure(rho, basis)?;
    let mut acc = ComplexMatrix::zeros(rho.dim());
    for (k, &pk) in p.probabilities().iter().enumerate() {
        if pk > 0.0 {
            acc = &acc + &ComplexMatrix::outer(&basis.vector(k)).scale(pk);
        }
    }
    let total: f64 = p.probabilities().iter().sum();
    Ok(DensityMatrix::from_parts(acc.scale(1.0 / total), rho.dims().to_vec()))
}

/// `C(rho) = S(dephased rho) - S(rho)`, clipped at zero.
pub fn rel_ent_coherence(rho: &DensityMatrix, basis: &Basis) -> Result<f64> {
    let s = von_neumann_entropy(rho);
    coherence_given_entropy(rho, basis, s)
}

pub(crate) fn coherence_given_entropy(rho: &DensityMatrix, basis: &Basis, entropy: f64) -> Result<f64> {
    let dephased = shannon_entropy(&measure(rho, basis)?);
    Ok((dephased - entropy).max(0.0))
}

/// Basis `|i> (x) |mu>` of `A (x) B`, with `{|mu>}` the eigenvectors of `Tr_A rho`
/// (degenerate eigenspaces resolved deterministically; see
/// [`hermitian_eig`](crate::linalg::hermitian_eig)).
pub fn product_basis_with_b_eigenbasis(rho_ab: &DensityMatrix, basis_a: &Basis) -> Result<Basis> {
    let (da, _) = rho_ab.bipartite_dims()?;
    if basis_a.dim() != da {
        return Err(dim_mismatch(format!(
            "basis `{}` has dimension {}, subsystem A has dimension {da}",
            basis_a.label(),
            basis_a.dim()
        )));
    }
    let rho_b = rho_ab.reduce(&[1])?;
    let eig = hermitian_eig(rho_b.matrix())?;
    let memory = Basis::new(eig.eigenvectors, "eig(ρ_B)")?;
    Ok(basis_a.tensor(&memory))
}

/// Trace distance `||rho - sigma||_1 / 2`.
pub fn trace_distance(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<f64> {
    Ok(crate::linalg::trace_norm(&(rho - sigma))? / 2.0)
}
