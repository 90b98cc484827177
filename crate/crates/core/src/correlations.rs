//! Bipartite correlation quantities: conditional entropy, mutual information,
//! classical correlation and discord (measuring the B side), and the
//! two-qubit concurrence.
//!
//! Classical correlation is a maximization over rank-one projective
//! measurements `{|b><b|, |b⊥><b⊥|}` on qubit B, with
//! `|b> = (cos θ/2, e^{iφ} sin θ/2)`. The objective is evaluated on a fixed
//! 32 (polar) x 64 (azimuthal) grid and the best grid points are polished with
//! a Nelder–Mead simplex. The result is never below the best grid value.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::coherence::{shannon_bits, von_neumann_entropy};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix};
use crate::states::DensityMatrix;

pub const POLAR_STEPS: usize = 32;
pub const AZIMUTHAL_STEPS: usize = 64;
const REFINE_STARTS: usize = 4;
const SIMPLEX_TOL: f64 = 1e-9;
const SIMPLEX_MAX_ITER: usize = 400;

/// `S(A|B)`, mutual information, classical correlation `J` and discord `D = I - J`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelationSet {
    pub conditional_entropy: f64,
    pub mutual_information: f64,
    pub classical_correlation: f64,
    pub discord: f64,
}

/// Two-qubit concurrence, in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Concurrence(f64);

impl Concurrence {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// `S(AB) - S(B)`.
pub fn conditional_entropy(rho_ab: &DensityMatrix) -> Result<f64> {
    rho_ab.bipartite_dims()?;
    Ok(von_neumann_entropy(rho_ab) - von_neumann_entropy(&rho_ab.reduce(&[1])?))
}

/// `S(A) + S(B) - S(AB)`.
pub fn mutual_information(rho_ab: &DensityMatrix) -> Result<f64> {
    rho_ab.bipartite_dims()?;
    let sa = von_neumann_entropy(&rho_ab.reduce(&[0])?);
    let sb = von_neumann_entropy(&rho_ab.reduce(&[1])?);
    Ok(sa + sb - von_neumann_entropy(rho_ab))
}

fn require_two_qubits(rho_ab: &DensityMatrix) -> Result<()> {
    match rho_ab.bipartite_dims()? {
        (2, 2) => Ok(()),
        (a, b) => Err(Error::Unsupported(format!(
            "classical correlation, discord and concurrence need two qubits, got {a}x{b}"
        ))),
    }
}

/// Where the measurement optimum was found.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementOptimum {
    /// Maximized `S(A) - sum_b q_b S(A|b)`.
    pub value: f64,
    /// Best value on the fixed grid alone.
    pub grid_value: f64,
    pub theta: f64,
    pub phi: f64,
}

/// Objective for one measurement direction on B.
pub(crate) struct MeasurementObjective {
    rho: [[Complex64; 4]; 4],
    entropy_a: f64,
}

impl MeasurementObjective {
    pub(crate) fn new(rho_ab: &DensityMatrix) -> Result<Self> {
        require_two_qubits(rho_ab)?;
        let m = rho_ab.matrix();
        let mut rho = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (j, row) in rho.iter_mut().enumerate() {
            for (k, z) in row.iter_mut().enumerate() {
                *z = m[(j, k)];
            }
        }
        let entropy_a = von_neumann_entropy(&rho_ab.reduce(&[0])?);
        Ok(Self { rho, entropy_a })
    }

    /// Unnormalized conditional state of A after outcome `b` on B.
    fn conditional(&self, b: [Complex64; 2]) -> [[Complex64; 2]; 2] {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (a, row) in out.iter_mut().enumerate() {
            for (a2, z) in row.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (beta, bb) in b.iter().enumerate() {
                    for (beta2, bb2) in b.iter().enumerate() {
                        acc += bb.conj() * self.rho[2 * a + beta][2 * a2 + beta2] * bb2;
                    }
                }
                *z = acc;
            }
        }
        out
    }

    // q * S(sigma / q) for a 2x2 block with trace q
    fn weighted_entropy(sigma: [[Complex64; 2]; 2]) -> f64 {
        let q = sigma[0][0].re + sigma[1][1].re;
        if q <= 1e-300 {
            return 0.0;
        }
        let det = sigma[0][0].re * sigma[1][1].re - sigma[0][1].norm_sqr();
        let disc = (q * q - 4.0 * det).max(0.0).sqrt();
        let hi = (q + disc) / 2.0;
        let lo = (q - disc) / 2.0;
        q * shannon_bits(&[hi / q, lo / q])
    }

    pub(crate) fn value(&self, theta: f64, phi: f64) -> f64 {
        let (s, c) = (theta / 2.0).sin_cos();
        let e = Complex64::from_polar(1.0, phi);
        let b = [Complex64::new(c, 0.0), e * s];
        let b_perp = [-e.conj() * s, Complex64::new(c, 0.0)];
        let conditional = Self::weighted_entropy(self.conditional(b)) + Self::weighted_entropy(self.conditional(b_perp));
        self.entropy_a - conditional
    }
}

fn grid_point(index: usize) -> (f64, f64) {
    let polar = index / AZIMUTHAL_STEPS;
    let azimuth = index % AZIMUTHAL_STEPS;
    (
        PI * polar as f64 / POLAR_STEPS as f64,
        2.0 * PI * azimuth as f64 / AZIMUTHAL_STEPS as f64,
    )
}

/// Maximizes the measurement objective; deterministic, ties go to the lowest grid index.
pub fn optimize_measurement(rho_ab: &DensityMatrix) -> Result<MeasurementOptimum> {
    let objective = MeasurementObjective::new(rho_ab)?;
    let values: Vec<f64> = (0..POLAR_STEPS * AZIMUTHAL_STEPS)
        .map(|i| {
            let (t, p) = grid_point(i);
            objective.value(t, p)
        })
        .collect();
    let mut ranked: Vec<usize> = (0..values.len()).collect();
    // stable sort keeps index order among equal values
    ranked.sort_by(|&a, &b| values[b].total_cmp(&values[a]));

    let best_index = ranked[0];
    let (theta, phi) = grid_point(best_index);
    let mut best = MeasurementOptimum {
        value: values[best_index],
        grid_value: values[best_index],
        theta,
        phi,
    };
    let step = PI / POLAR_STEPS as f64;
    for &start in ranked.iter().take(REFINE_STARTS) {
        let (t0, p0) = grid_point(start);
        let ([t, p], v) = nelder_mead_max(|x| objective.value(x[0], x[1]), [t0, p0], step);
        if v > best.value {
            best.value = v;
            best.theta = t;
            best.phi = p;
        }
    }
    Ok(best)
}

// Two-dimensional Nelder–Mead maximization.
fn nelder_mead_max(f: impl Fn([f64; 2]) -> f64, start: [f64; 2], step: f64) -> ([f64; 2], f64) {
    let mut simplex: Vec<([f64; 2], f64)> = [start, [start[0] + step, start[1]], [start[0], start[1] + step]]
        .into_iter()
        .map(|x| (x, f(x)))
        .collect();
    let lerp = |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];

    for _ in 0..SIMPLEX_MAX_ITER {
        simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
        if simplex[0].1 - simplex[2].1 < SIMPLEX_TOL {
            break;
        }
        let centroid = lerp(simplex[0].0, simplex[1].0, 0.5);
        let worst = simplex[2];
        let reflected = lerp(worst.0, centroid, 2.0);
        let fr = f(reflected);
        if fr > simplex[0].1 {
            let expanded = lerp(worst.0, centroid, 3.0);
            let fe = f(expanded);
            simplex[2] = if fe > fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr > simplex[1].1 {
            simplex[2] = (reflected, fr);
        } else {
            let contracted = if fr > worst.1 {
                lerp(worst.0, centroid, 1.5)
            } else {
                lerp(worst.0, centroid, 0.5)
            };
            let fc = f(contracted);
            if fc > worst.1.max(fr) {
                simplex[2] = (contracted, fc);
            } else {
                let best = simplex[0].0;
                for vertex in simplex.iter_mut().skip(1) {
                    let x = lerp(best, vertex.0, 0.5);
                    *vertex = (x, f(x));
                }
            }
        }
    }
    simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
    simplex[0]
}

/// Classical correlation `J` with measurements on B (two qubits only).
pub fn classical_correlation(rho_ab: &DensityMatrix) -> Result<f64> {
    Ok(optimize_measurement(rho_ab)?.value.max(0.0))
}

/// Conditional entropy and mutual information for any bipartite state;
/// `J` and `D` need two qubits.
pub fn correlation_set(rho_ab: &DensityMatrix) -> Result<CorrelationSet> {
    let conditional_entropy = conditional_entropy(rho_ab)?;
    let mutual_information = mutual_information(rho_ab)?;
    let classical_correlation = classical_correlation(rho_ab)?;
    Ok(CorrelationSet {
        conditional_entropy,
        mutual_information,
        classical_correlation,
        discord: mutual_information - classical_correlation,
    })
}

/// Wootters concurrence `max(0, l1 - l2 - l3 - l4)`, where `l_k` are the
/// square roots, in decreasing order, of the eigenvalues of
/// `rho (σy⊗σy) rho* (σy⊗σy)`. They are taken from the Hermitian matrix
/// `sqrt(rho) rho~ sqrt(rho)`, which has the same spectrum.
pub fn concurrence(rho_ab: &DensityMatrix) -> Result<Concurrence> {
    require_two_qubits(rho_ab)?;
    let rho = rho_ab.matrix();
    let sign = [-1.0, 1.0, 1.0, -1.0];
    // (σy⊗σy)_{j,3-j} = sign[j]
    let flipped = ComplexMatrix::from_fn(4, |j, k| rho[(3 - j, 3 - k)].conj() * (sign[j] * sign[k]));
    let sqrt_rho = hermitian_eig(rho)?.map_spectrum(|x| x.max(0.0).sqrt());
    let m = &(&sqrt_rho * &flipped) * &sqrt_rho;
    let herm = ComplexMatrix::from_fn(4, |j, k| (m[(j, k)] + m[(k, j)].conj()) * 0.5);
    let mut roots: Vec<f64> = hermitian_eig(&herm)?.eigenvalues.iter().map(|x| x.max(0.0).sqrt()).collect();
    roots.sort_by(|a, b| b.total_cmp(a));
    let c = roots[0] - roots[1] - roots[2] - roots[3];
    Ok(Concurrence(c.clamp(0.0, 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kron;
    use crate::states::*;

    fn bell(weights: [f64; 4]) -> DensityMatrix {
        bell_diagonal(&BellDiagonalParams::new(weights).unwrap(), BellOrdering::PhiPhiPsiPsi)
    }

    fn product(a: &DensityMatrix, b: &DensityMatrix) -> DensityMatrix {
        DensityMatrix::new(kron(a.matrix(), b.matrix()), vec![a.dim(), b.dim()]).unwrap()
    }

    #[test]
    fn conditional_entropy_examples() {
        assert!((conditional_entropy(&bell([1.0, 0.0, 0.0, 0.0])).unwrap() + 1.0).abs() < 1e-12);
        assert!((conditional_entropy(&maximally_mixed(&[2, 2])).unwrap() - 1.0).abs() < 1e-12);
        let s = conditional_entropy(&bell([0.6, 0.2, 0.1, 0.1])).unwrap();
        assert!((s - (1.570950594454668 - 1.0)).abs() < 1e-12);
        assert!(conditional_entropy(&maximally_mixed(&[4])).is_err());
    }

    #[test]
    fn product_states_have_no_correlation() {
        let rho = product(&random_mixed(2, 1), &random_mixed(2, 2));
        let set = correlation_set(&rho).unwrap();
        let sa = von_neumann_entropy(&random_mixed(2, 1));
        assert!((set.conditional_entropy - sa).abs() < 1e-9);
        assert!(set.mutual_information.abs() < 1e-9);
        assert!(set.classical_correlation.abs() < 1e-9);
        assert!(set.discord.abs() < 1e-9);
    }

    #[test]
    fn bell_state_correlations() {
        let set = correlation_set(&bell([1.0, 0.0, 0.0, 0.0])).unwrap();
        assert!((set.mutual_information - 2.0).abs() < 1e-9);
        assert!((set.classical_correlation - 1.0).abs() < 1e-9);
        assert!((set.discord - 1.0).abs() < 1e-9);
    }

    #[test]
    fn classical_classical_state() {
        let p = [[0.4, 0.1], [0.2, 0.3]];
        let rho = DensityMatrix::single(ComplexMatrix::from_real_diagonal(&[p[0][0], p[0][1], p[1][0], p[1][1]]))
            .unwrap()
            .with_dims(vec![2, 2])
            .unwrap();
        let pa = [0.5, 0.5];
        let pb = [0.6, 0.4];
        let classical_mi = shannon_bits(&pa) + shannon_bits(&pb) - shannon_bits(&[0.4, 0.1, 0.2, 0.3]);
        let set = correlation_set(&rho).unwrap();
        assert!((set.classical_correlation - classical_mi).abs() < 1e-9, "{set:?} vs {classical_mi}");
        assert!(set.discord.abs() < 1e-9);
    }

    #[test]
    fn refinement_never_regresses() {
        for seed in 0..10 {
            let rho = random_mixed_with(&[2, 2], &mut stream_rng(3, seed));
            let opt = optimize_measurement(&rho).unwrap();
            assert!(opt.value >= opt.grid_value);
        }
    }

    #[test]
    fn two_qubit_only() {
        let rho = maximally_mixed(&[2, 3]);
        assert!(matches!(classical_correlation(&rho), Err(Error::Unsupported(_))));
        assert!(matches!(concurrence(&rho), Err(Error::Unsupported(_))));
        assert!(conditional_entropy(&rho).is_ok());
    }

    #[test]
    fn concurrence_examples() {
        assert!((concurrence(&bell([0.6, 0.2, 0.1, 0.1])).unwrap().value() - 0.2).abs() < 1e-9);
        assert!((concurrence(&bell([1.0, 0.0, 0.0, 0.0])).unwrap().value() - 1.0).abs() < 1e-9);
        let pure_product = product(&random_pure(2, 4), &random_pure(2, 5));
        assert!(concurrence(&pure_product).unwrap().value() < 1e-7);
    }
}
