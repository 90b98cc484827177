//! Oracles that share no code with the library.
#![allow(dead_code)]

use cohlab::{ComplexMatrix, DensityMatrix};
use nalgebra::DMatrix;
use num_complex::Complex64;

pub fn to_nalgebra(m: &ComplexMatrix) -> DMatrix<Complex64> {
    let d = m.dim();
    DMatrix::from_fn(d, d, |j, k| m[(j, k)])
}

/// Ascending eigenvalues from nalgebra's Hermitian solver.
pub fn nalgebra_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = to_nalgebra(m).symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn entropy_bits(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 1e-15).map(|&x| -x * x.log2()).sum()
}

pub fn nalgebra_entropy(rho: &DensityMatrix) -> f64 {
    entropy_bits(&nalgebra_eigenvalues(rho.matrix()))
}

fn h2(x: f64) -> f64 {
    entropy_bits(&[x, 1.0 - x])
}

/// Two-qubit state in Bloch form: `a` (A), `b` (B), correlations `t[i][j]`.
pub struct Bloch {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub t: [[f64; 3]; 3],
}

fn paulis() -> [[[Complex64; 2]; 2]; 4] {
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [[[l, o], [o, l]], [[o, l], [l, o]], [[o, -i], [i, o]], [[l, o], [o, -l]]]
}

impl Bloch {
    pub fn from_state(rho: &DensityMatrix) -> Self {
        let s = paulis();
        let m = rho.matrix();
        // Tr(rho (s_p ⊗ s_q)) by explicit index sums
        let corr = |p: usize, q: usize| -> f64 {
            let mut acc = Complex64::new(0.0, 0.0);
            for a1 in 0..2 {
                for b1 in 0..2 {
                    for a2 in 0..2 {
                        for b2 in 0..2 {
                            acc += m[(2 * a1 + b1, 2 * a2 + b2)] * s[p][a2][a1] * s[q][b2][b1];
                        }
                    }
                }
            }
            acc.re
        };
        Self {
            a: [corr(1, 0), corr(2, 0), corr(3, 0)],
            b: [corr(0, 1), corr(0, 2), corr(0, 3)],
            t: std::array::from_fn(|i| std::array::from_fn(|j| corr(i + 1, j + 1))),
        }
    }

    /// `S(A) - sum_± q_± S(A|±n)` for a projective measurement of B along `n`.
    pub fn classical_correlation_along(&self, n: [f64; 3]) -> f64 {
        let norm = |v: [f64; 3]| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let s_a = h2((1.0 + norm(self.a)) / 2.0);
        let bn: f64 = (0..3).map(|k| self.b[k] * n[k]).sum();
        let tn: [f64; 3] = std::array::from_fn(|i| (0..3).map(|j| self.t[i][j] * n[j]).sum());
        let mut conditional = 0.0;
        for sign in [1.0, -1.0] {
            let q = (1.0 + sign * bn) / 2.0;
            if q <= 1e-15 {
                continue;
            }
            let r: [f64; 3] = std::array::from_fn(|i| (self.a[i] + sign * tn[i]) / (1.0 + sign * bn));
            conditional += q * h2(((1.0 + norm(r)) / 2.0).min(1.0));
        }
        s_a - conditional
    }

    /// Brute-force maximum over a `polar x azimuthal` grid of directions.
    pub fn classical_correlation_grid(&self, polar: usize, azimuthal: usize) -> f64 {
        let mut best = f64::NEG_INFINITY;
        for j in 0..polar {
            let theta = std::f64::consts::PI * j as f64 / (polar - 1) as f64;
            for k in 0..azimuthal {
                let phi = 2.0 * std::f64::consts::PI * k as f64 / azimuthal as f64;
                let n = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
                best = best.max(self.classical_correlation_along(n));
            }
        }
        best
    }
}

/// Mutual information from nalgebra spectra.
pub fn nalgebra_mutual_information(rho: &DensityMatrix) -> f64 {
    let sa = nalgebra_entropy(&rho.reduce(&[0]).unwrap());
    let sb = nalgebra_entropy(&rho.reduce(&[1]).unwrap());
    sa + sb - nalgebra_entropy(rho)
}
