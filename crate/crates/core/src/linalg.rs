//! Dense complex linear algebra for the small dimensions used throughout the
//! crate (a few dozen at most).
//!
//! Everything here is value-semantic: matrices are owned row-major buffers and
//! every operation returns a fresh result.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{dim_mismatch, Error, Result};

/// Tolerance on `max |M[j,k] - conj(M[k,j])|` for a matrix to count as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Eigenvalues closer than this are treated as one degenerate cluster.
pub const DEGENERACY_GAP: f64 = 1e-10;

const MAX_SWEEPS: usize = 100;
const CONVERGENCE_RATIO: f64 = 1e-12;
const PHASE_THRESHOLD: f64 = 1e-10;
// A computational basis vector is accepted into a degenerate eigenspace only if
// its residual after projection exceeds this. Some residual is always at least
// 1/sqrt(n), so the threshold never starves the search for n <= 10^6.
const CANONICAL_ACCEPT: f64 = 1e-3;

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m[(k, k)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for j in 0..dim {
            for k in 0..dim {
                entries.push(f(j, k));
            }
        }
        Self { dim, entries }
    }

    /// Builds a matrix from a row-major buffer of `dim * dim` entries.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(dim_mismatch(format!(
                "{} entries cannot form a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        Ok(Self { dim, entries })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (k, &x) in diag.iter().enumerate() {
            m[(k, k)] = Complex64::new(x, 0.0);
        }
        m
    }

    /// `|v><v|` for an (unnormalized) vector `v`.
    pub fn outer(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), |j, k| v[j] * v[k].conj())
    }

    /// Matrix whose k-th column is `columns[k]`.
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Result<Self> {
        let dim = columns.len();
        if columns.iter().any(|c| c.len() != dim) {
            return Err(dim_mismatch("columns must all have length equal to their count"));
        }
        Ok(Self::from_fn(dim, |j, k| columns[k][j]))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn column(&self, k: usize) -> Vec<Complex64> {
        (0..self.dim).map(|j| self[(j, k)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |j, k| self[(k, j)].conj())
    }

    /// Entrywise complex conjugate (not the adjoint).
    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|k| self[(k, k)]).sum()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from `other`; infinite if the shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |M[j,k] - conj(M[k,j])|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..self.dim {
            for k in j..self.dim {
                worst = worst.max((self[(j, k)] - self[(k, j)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_defect() <= HERMITIAN_TOL
    }

    /// `max |U^dagger U - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.dim))
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|j| (0..self.dim).map(|k| self[(j, k)] * v[k]).sum())
            .collect()
    }

    /// Real part of `<v|M|v>`.
    pub fn expectation(&self, v: &[Complex64]) -> f64 {
        let mv = self.apply(v);
        v.iter().zip(&mv).map(|(a, b)| (a.conj() * b).re).sum()
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for j in 0..self.dim {
            write!(f, "  ")?;
            for k in 0..self.dim {
                let z = self[(j, k)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (j, k): (usize, usize)) -> &Complex64 {
        &self.entries[j * self.dim + k]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (j, k): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[j * self.dim + k]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product of unequal dimensions");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for j in 0..n {
            for l in 0..n {
                let a = self[(j, l)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..n {
                    out.entries[j * n + k] += a * rhs.entries[l * n + k];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "sum of unequal dimensions");
        ComplexMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "difference of unequal dimensions");
        ComplexMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Spectrum of a Hermitian matrix.
///
/// `eigenvalues` ascend; column `k` of `eigenvectors` is the unit eigenvector
/// for `eigenvalues[k]`. Inside a degenerate cluster the vectors are the
/// Gram–Schmidt completion of the computational basis projected onto the
/// eigenspace, and every vector has its first non-negligible component real
/// and positive, so the result does not depend on rotation order.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }

    /// `U diag(lambda) U^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let u = &self.eigenvectors;
        let n = u.dim();
        ComplexMatrix::from_fn(n, |j, k| {
            (0..n)
                .map(|l| u[(j, l)] * self.eigenvalues[l] * u[(k, l)].conj())
                .sum()
        })
    }

    /// Applies `f` to the spectrum: `U diag(f(lambda)) U^dagger`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        HermitianEigen {
            eigenvalues: self.eigenvalues.iter().map(|&x| f(x)).collect(),
            eigenvectors: self.eigenvectors.clone(),
        }
        .reconstruct()
    }
}

/// Cyclic complex Jacobi eigensolver.
///
/// Sweeps until the largest off-diagonal magnitude drops below
/// `1e-12 * ||M||_F`, with at most 100 sweeps.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian { defect });
    }
    let n = m.dim();
    let mut a = ComplexMatrix::from_fn(n, |j, k| (m[(j, k)] + m[(k, j)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);

    let threshold = CONVERGENCE_RATIO * a.frobenius_norm();
    for _ in 0..MAX_SWEEPS {
        if max_off_diagonal(&a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let r = a[(p, q)].norm();
                if r == 0.0 {
                    continue;
                }
                jacobi_rotate(&mut a, &mut v, p, q, r);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut columns: Vec<Vec<Complex64>> = order.iter().map(|&k| v.column(k)).collect();

    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eigenvalues[end] - eigenvalues[end - 1] < DEGENERACY_GAP {
            end += 1;
        }
        if end - start > 1 {
            canonicalize_cluster(&mut columns[start..end]);
        }
        start = end;
    }
    for col in &mut columns {
        fix_phase(col);
    }

    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors: ComplexMatrix::from_columns(&columns)?,
    })
}

fn max_off_diagonal(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut worst: f64 = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            worst = worst.max(a[(p, q)].norm());
        }
    }
    worst
}

// Zeroes a[p,q] with V = diag(1, e^{-i phi}) * Givens(c, s) acting on (p, q),
// where a[p,q] = r e^{i phi}. Updates A <- V^dagger A V and U <- U V.
fn jacobi_rotate(a: &mut ComplexMatrix, u: &mut ComplexMatrix, p: usize, q: usize, r: f64) {
    let n = a.dim();
    let phase = a[(p, q)] / r;
    let zeta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
    let t = if zeta >= 0.0 {
        1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
    } else {
        -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let vpp = Complex64::new(c, 0.0);
    let vpq = Complex64::new(s, 0.0);
    let vqp = -phase.conj() * s;
    let vqq = phase.conj() * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * vpp + akq * vqp;
        a[(k, q)] = akp * vpq + akq * vqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = vpp.conj() * apk + vqp.conj() * aqk;
        a[(q, k)] = vpq.conj() * apk + vqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let ukp = u[(k, p)];
        let ukq = u[(k, q)];
        u[(k, p)] = ukp * vpp + ukq * vqp;
        u[(k, q)] = ukp * vpq + ukq * vqq;
    }
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn orthogonalize(w: &mut [Complex64], against: &[Vec<Complex64>]) {
    // two passes of modified Gram-Schmidt
    for _ in 0..2 {
        for b in against {
            let proj = inner(b, w);
            for (x, y) in w.iter_mut().zip(b) {
                *x -= proj * y;
            }
        }
    }
}

fn canonicalize_cluster(cluster: &mut [Vec<Complex64>]) {
    let m = cluster.len();
    let n = cluster[0].len();
    let mut chosen: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    for j in 0..n {
        if chosen.len() == m {
            break;
        }
        // P e_j where P projects onto the eigenspace
        let mut w: Vec<Complex64> = (0..n)
            .map(|row| cluster.iter().map(|v| v[row] * v[j].conj()).sum())
            .collect();
        orthogonalize(&mut w, &chosen);
        let len = norm(&w);
        if len > CANONICAL_ACCEPT {
            chosen.push(w.into_iter().map(|z| z / len).collect());
        }
    }
    if chosen.len() < m {
        // unreachable in exact arithmetic; keep the solver's own vectors
        for v in cluster.iter() {
            if chosen.len() == m {
                break;
            }
            let mut w = v.clone();
            orthogonalize(&mut w, &chosen);
            let len = norm(&w);
            if len > CANONICAL_ACCEPT {
                chosen.push(w.into_iter().map(|z| z / len).collect());
            }
        }
    }
    if chosen.len() == m {
        cluster.clone_from_slice(&chosen);
    }
}

fn fix_phase(v: &mut [Complex64]) {
    if let Some(lead) = v.iter().find(|z| z.norm() > PHASE_THRESHOLD).copied() {
        let rot = lead.conj() / lead.norm();
        for z in v.iter_mut() {
            *z *= rot;
        }
    }
}

/// Kronecker product; entry `(a*dB + b, a'*dB + b')` equals `A[a,a'] * B[b,b']`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let db = b.dim();
    ComplexMatrix::from_fn(a.dim() * db, |j, k| a[(j / db, k / db)] * b[(j % db, k % db)])
}

/// Kronecker product of vectors, same index convention as [`kron`].
pub fn kron_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

fn check_dims(total: usize, dims: &[usize]) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(dim_mismatch(format!("invalid subsystem dimensions {dims:?}")));
    }
    let product: usize = dims.iter().product();
    if product != total {
        return Err(dim_mismatch(format!(
            "subsystem dimensions {dims:?} multiply to {product}, matrix is {total}x{total}"
        )));
    }
    Ok(())
}

/// Reduced matrix on the subsystems listed in `keep` (in increasing order of
/// subsystem index, whatever order `keep` is given in).
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    check_dims(m.dim(), dims)?;
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() {
        return Err(dim_mismatch("partial trace must keep at least one subsystem"));
    }
    if let Some(&bad) = keep.iter().find(|&&k| k >= dims.len()) {
        return Err(dim_mismatch(format!(
            "subsystem {bad} does not exist in {} subsystems",
            dims.len()
        )));
    }

    let n = m.dim();
    let kept_dim: usize = keep.iter().map(|&k| dims[k]).product();
    // (kept index, traced index) of every full index
    let split: Vec<(usize, usize)> = (0..n)
        .map(|mut idx| {
            let mut digits = vec![0; dims.len()];
            for s in (0..dims.len()).rev() {
                digits[s] = idx % dims[s];
                idx /= dims[s];
            }
            let (mut kept, mut traced) = (0, 0);
            for (s, &digit) in digits.iter().enumerate() {
                if keep.binary_search(&s).is_ok() {
                    kept = kept * dims[s] + digit;
                } else {
                    traced = traced * dims[s] + digit;
                }
            }
            (kept, traced)
        })
        .collect();

    let mut out = ComplexMatrix::zeros(kept_dim);
    for i in 0..n {
        for j in 0..n {
            if split[i].1 == split[j].1 {
                out[(split[i].0, split[j].0)] += m[(i, j)];
            }
        }
    }
    Ok(out)
}

/// Transposes the indices of one subsystem.
pub fn partial_transpose(m: &ComplexMatrix, dims: &[usize], subsystem: usize) -> Result<ComplexMatrix> {
    check_dims(m.dim(), dims)?;
    if subsystem >= dims.len() {
        return Err(dim_mismatch(format!("subsystem {subsystem} out of range")));
    }
    let stride: usize = dims[subsystem + 1..].iter().product();
    let d = dims[subsystem];
    let digit = |idx: usize| (idx / stride) % d;
    Ok(ComplexMatrix::from_fn(m.dim(), |j, k| {
        let (dj, dk) = (digit(j), digit(k));
        let j2 = j - dj * stride + dk * stride;
        let k2 = k - dk * stride + dj * stride;
        m[(j2, k2)]
    }))
}

/// `Tr sqrt(M^dagger M)`, evaluated as the sum of absolute eigenvalues of a
/// Hermitian `M`.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eig(m)?.eigenvalues.iter().map(|x| x.abs()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_entries(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap()
    }

    #[test]
    fn pauli_x_spectrum() {
        let eig = hermitian_eig(&pauli_x()).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
        assert!(eig.reconstruct().max_abs_diff(&pauli_x()) < 1e-12);
    }

    #[test]
    fn diagonal_input_keeps_identity_vectors() {
        let m = ComplexMatrix::from_real_diagonal(&[0.1, 0.9]);
        let eig = hermitian_eig(&m).unwrap();
        assert_eq!(eig.eigenvalues, vec![0.1, 0.9]);
        assert!(eig.eigenvectors.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn three_by_three_with_degenerate_pair() {
        // characteristic polynomial (x - 1)^2 (x - 3)
        let m = ComplexMatrix::from_entries(
            3,
            vec![
                c(2., 0.), c(0., 1.), c(0., 0.),
                c(0., -1.), c(2., 0.), c(0., 0.),
                c(0., 0.), c(0., 0.), c(1., 0.),
            ],
        )
        .unwrap();
        let eig = hermitian_eig(&m).unwrap();
        for (got, want) in eig.eigenvalues.iter().zip([1.0, 1.0, 3.0]) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        assert!(eig.eigenvectors.unitarity_defect() < 1e-12);
        assert!(eig.reconstruct().max_abs_diff(&m) < 1e-12);
    }

    #[test]
    fn degenerate_identity_gives_computational_basis() {
        let m = ComplexMatrix::identity(4).scale(0.25);
        let eig = hermitian_eig(&m).unwrap();
        assert!(eig.eigenvectors.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_entries(2, vec![c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]).unwrap();
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian { .. })));
        assert!(matches!(trace_norm(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn zero_matrix() {
        let eig = hermitian_eig(&ComplexMatrix::zeros(3)).unwrap();
        assert_eq!(eig.eigenvalues, vec![0.0; 3]);
        assert_eq!(trace_norm(&ComplexMatrix::zeros(3)).unwrap(), 0.0);
    }

    #[test]
    fn kron_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
        let p0 = ComplexMatrix::from_real_diagonal(&[1.0, 0.0]);
        let p1 = ComplexMatrix::from_real_diagonal(&[0.0, 1.0]);
        assert_eq!(kron(&p0, &p1), ComplexMatrix::from_real_diagonal(&[0.0, 1.0, 0.0, 0.0]));

        // X (x) X maps |00> to |11>
        let xx = kron(&pauli_x(), &pauli_x());
        let ket00 = vec![c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.)];
        let flipped = xx.apply(&ket00);
        assert_eq!(flipped, vec![c(0., 0.), c(0., 0.), c(0., 0.), c(1., 0.)]);
        let rank_one = &xx * &ComplexMatrix::outer(&ket00);
        assert_eq!(rank_one[(3, 0)], c(1., 0.));
    }

    #[test]
    fn partial_trace_rejects_bad_dims() {
        let m = ComplexMatrix::identity(4);
        assert!(partial_trace(&m, &[2, 3], &[0]).is_err());
        assert!(partial_trace(&m, &[2, 2], &[]).is_err());
        assert!(partial_trace(&m, &[2, 2], &[2]).is_err());
    }

    #[test]
    fn partial_trace_of_product() {
        let a = ComplexMatrix::from_real_diagonal(&[0.3, 0.7]);
        let b = ComplexMatrix::from_entries(3, vec![
            c(0.5, 0.), c(0.1, 0.2), c(0., 0.),
            c(0.1, -0.2), c(0.3, 0.), c(0., 0.),
            c(0., 0.), c(0., 0.), c(0.2, 0.),
        ])
        .unwrap();
        let ab = kron(&a, &b);
        assert!(partial_trace(&ab, &[2, 3], &[1]).unwrap().max_abs_diff(&b) < 1e-15);
        assert!(partial_trace(&ab, &[2, 3], &[0]).unwrap().max_abs_diff(&a) < 1e-15);
    }

    #[test]
    fn partial_transpose_is_involution() {
        let m = ComplexMatrix::from_fn(6, |j, k| c((j * 6 + k) as f64, j as f64 - k as f64));
        let pt = partial_transpose(&m, &[2, 3], 1).unwrap();
        assert_ne!(pt, m);
        assert_eq!(partial_transpose(&pt, &[2, 3], 1).unwrap(), m);
        // transposing both halves is the full transpose
        let full = partial_transpose(&pt, &[2, 3], 0).unwrap();
        assert_eq!(full, ComplexMatrix::from_fn(6, |j, k| m[(k, j)]));
    }

    #[test]
    fn trace_norm_examples() {
        let diff = &ComplexMatrix::from_real_diagonal(&[1.0, 0.0]) - &ComplexMatrix::identity(2).scale(0.5);
        assert!((trace_norm(&diff).unwrap() - 1.0).abs() < 1e-14);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = ComplexMatrix::outer(&[c(h, 0.), c(h, 0.)]);
        let diff = &ComplexMatrix::identity(2).scale(0.5) - &plus;
        assert!((trace_norm(&diff).unwrap() - 1.0).abs() < 1e-14);
    }
}
