//! Closed-form separable/entangled splits `rho = λ rho_s + (1 - λ) rho_e`
//! for Bell-diagonal two-qubit states and the two-qutrit bound-entangled
//! family, the entropy average `K = λ S(rho_s) + (1 - λ) S(rho_e)`, and the
//! upper bounds built from them.

use std::collections::BTreeMap;

use crate::coherence::{coherence_given_entropy, shannon_bits, von_neumann_entropy};
use crate::error::{Error, Result};
use crate::relations::{RelationId, RelationReport};
use crate::states::{
    bell_diagonal, horodecki_mixture, horodecki_state, Basis, BellDiagonalParams, BellOrdering, DensityMatrix,
    HorodeckiParams,
};

/// Largest entry-wise deviation accepted when checking that a split belongs
/// to a state.
pub const RECONSTRUCTION_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct LsDecomposition {
    lambda: f64,
    rho_s: DensityMatrix,
    rho_e: Option<DensityMatrix>,
    k: f64,
}

impl LsDecomposition {
    fn new(lambda: f64, rho_s: DensityMatrix, rho_e: Option<DensityMatrix>) -> Self {
        let k = match &rho_e {
            Some(e) => lambda * von_neumann_entropy(&rho_s) + (1.0 - lambda) * von_neumann_entropy(e),
            None => von_neumann_entropy(&rho_s),
        };
        Self { lambda, rho_s, rho_e, k }
    }

    /// Weight of the separable part.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn separable(&self) -> &DensityMatrix {
        &self.rho_s
    }

    /// `None` when the state is its own separable part (`λ = 1`).
    pub fn entangled(&self) -> Option<&DensityMatrix> {
        self.rho_e.as_ref()
    }

    /// `λ S(rho_s) + (1 - λ) S(rho_e)`, in bits.
    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn reconstruct(&self) -> DensityMatrix {
        match &self.rho_e {
            Some(e) => DensityMatrix::mixture(&[(self.lambda, &self.rho_s), (1.0 - self.lambda, e)])
                .expect("both parts share dimensions"),
            None => self.rho_s.clone(),
        }
    }
}

/// Split of a Bell-diagonal state with weights `d`.
///
/// With no weight above 1/2 the state is separable and `λ = 1`. Otherwise the
/// entangled part is the projector onto the dominant Bell vector,
/// `λ = 2(1 - d_max)`, and the separable part keeps weight 1/2 on the dominant
/// vector and `d_j / λ` on the others. For `d_max = 1` the separable part
/// carries no weight; it is set to weights `(1/2, 1/6, 1/6, 1/6)`.
pub fn ls_bell_diagonal(params: &BellDiagonalParams, ordering: BellOrdering) -> LsDecomposition {
    let d = params.weights();
    let (dominant, &d_max) = d
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1).then(b.0.cmp(&a.0)))
        .expect("four weights");
    let rho = bell_diagonal(params, ordering);
    if d_max <= 0.5 {
        return LsDecomposition::new(1.0, rho, None);
    }
    let lambda = (2.0 * (1.0 - d_max)).max(0.0);
    let mut sep = [0.0; 4];
    for (j, w) in sep.iter_mut().enumerate() {
        *w = match (j == dominant, lambda > 0.0) {
            (true, _) => 0.5,
            (false, true) => d[j] / lambda,
            (false, false) => 1.0 / 6.0,
        };
    }
    let total: f64 = sep.iter().sum();
    sep.iter_mut().for_each(|w| *w /= total);
    let sep = BellDiagonalParams::new(sep).expect("normalized weights");
    let rho_e = ordering.vectors()[dominant].projector();
    LsDecomposition::new(lambda, bell_diagonal(&sep, ordering), Some(rho_e))
}

/// Split of the two-qutrit family:
/// `rho_e = (2/7)|psi+><psi+| + (5/7)P+`,
/// `rho_s = (2/7)|psi+><psi+| + (3/7)P+ + (2/7)P-`, `λ = (5 - γ)/2`.
///
/// For `γ <= 3` the formula would give `λ >= 1`; there the state is returned
/// as its own separable part.
pub fn ls_horodecki(params: &HorodeckiParams) -> LsDecomposition {
    let lambda = (5.0 - params.gamma()) / 2.0;
    if lambda >= 1.0 {
        return LsDecomposition::new(1.0, horodecki_state(params), None);
    }
    let rho_s = horodecki_mixture([2.0 / 7.0, 3.0 / 7.0, 2.0 / 7.0]);
    let rho_e = horodecki_mixture([2.0 / 7.0, 5.0 / 7.0, 0.0]);
    LsDecomposition::new(lambda, rho_s, Some(rho_e))
}

/// `C_1 + C_2 <= 2 log2(d_A d_B) - 2K`.
///
/// `b1` and `b2` are bases of the whole bipartite space, typically products.
/// Fails with [`Error::Mismatch`] if `ls` does not recompose to `rho`.
pub fn upper_bound_ls(rho: &DensityMatrix, ls: &LsDecomposition, b1: &Basis, b2: &Basis) -> Result<RelationReport> {
    let (da, db) = rho.bipartite_dims()?;
    let deviation = ls.reconstruct().matrix().max_abs_diff(rho.matrix());
    if !(deviation <= RECONSTRUCTION_TOL) {
        return Err(Error::Mismatch { deviation });
    }
    let s = von_neumann_entropy(rho);
    let c1 = coherence_given_entropy(rho, b1, s)?;
    let c2 = coherence_given_entropy(rho, b2, s)?;
    let rhs = 2.0 * ((da * db) as f64).log2() - 2.0 * ls.k();
    let terms: BTreeMap<String, f64> = [
        ("coherence_1", c1),
        ("coherence_2", c2),
        ("lambda", ls.lambda()),
        ("k", ls.k()),
        ("entropy_separable", von_neumann_entropy(ls.separable())),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    Ok(RelationReport::new(RelationId::LsUpper, c1 + c2, rhs, terms))
}

/// `4 - (1 - d1)(2 + log2(1 - d1)) + sum_{i>=2} d_i log2 d_i`, which equals
/// `4 - λ S(rho_s)`: the separable-split bound with a single factor on
/// `λ S(rho_s)`. Requires `d1 > 1/2`.
pub fn bell_single_factor_bound(params: &BellDiagonalParams) -> Result<f64> {
    let d = params.weights();
    if d[0] <= 0.5 {
        return Err(Error::InvalidParams(format!("first Bell weight {} must exceed 1/2", d[0])));
    }
    let rest: f64 = d[1..].iter().filter(|&&x| x > 0.0).map(|&x| x * x.log2()).sum();
    let tail = 1.0 - d[0];
    let correction = if tail > 0.0 { tail * (2.0 + tail.log2()) } else { 0.0 };
    Ok(4.0 - correction + rest)
}

/// `4 - 2K` for a Bell-diagonal state.
pub fn bell_ls_bound(params: &BellDiagonalParams) -> f64 {
    4.0 - 2.0 * ls_bell_diagonal(params, BellOrdering::default()).k()
}

/// `2 log2 d_A - 2 S(A|B) = 4 - 2 H(d)` for a Bell-diagonal state.
pub fn bell_conditional_bound(params: &BellDiagonalParams) -> f64 {
    4.0 - 2.0 * shannon_bits(&params.weights())
}
