//! Lower, upper and difference bounds on relative entropies of coherence.
//!
//! Every check returns a [`RelationReport`] holding both sides of the
//! inequality, the signed slack and every intermediate quantity, so a report
//! can be audited without rerunning the computation. For lower bounds the
//! slack is `lhs - rhs`; for upper bounds it is `rhs - lhs`. A relation holds
//! when its slack is at least `-1e-9` bits.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::coherence::{binary_entropy, coherence_given_entropy, measure, product_basis_with_b_eigenbasis, von_neumann_entropy};
use crate::correlations::{correlation_set, CorrelationSet};
use crate::error::{dim_mismatch, Error, Result};
use crate::linalg::{trace_norm, ComplexMatrix};
use crate::states::{Basis, DensityMatrix};

/// Default slack tolerance, in bits.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Identifies a verified inequality. The short names (`eq5`, `eq9`, ...) are
/// the identifiers accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationId {
    /// `C_1 + C_2 >= -2 log2 c - S(rho)` for two bases of one system.
    TwoBasis,
    /// `sum_k C_k >= -log2 b - S(rho)` for n bases of one system.
    MultiBasis,
    /// `C_{iμ} + C_{aμ} >= -2 log2 c - S(A|B)`.
    BipartiteTwoBasis,
    /// Bipartite bound lowered by `max(0, D - J)`.
    BipartiteDiscord,
    /// `sum_k C_{i_k μ} >= -log2 b - S(A|B)`.
    BipartiteMultiBasis,
    /// `S(A|B) + S(A|D) >= 0` for a tripartite state.
    Tripartite,
    /// `C_{iμ} + C_{aμ} <= 2 log2 d_A - 2 S(A|B)`.
    ConditionalUpper,
    /// `C_1 + C_2 <= 2 log2 (d_A d_B) - 2 K` from a separable/entangled split.
    LsUpper,
    /// `C <= ε log2 (d - 1) + H(ε)` with `ε` the trace distance to the dephased state.
    FannesUpper,
    /// `|C_1 - C_2| <= η log2 (d - 1) + H(η)` with `η` the trace distance between dephased states.
    CoherenceDifference,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Lower,
    Upper,
}

impl RelationId {
    pub const ALL: [RelationId; 10] = [
        RelationId::TwoBasis,
        RelationId::MultiBasis,
        RelationId::BipartiteTwoBasis,
        RelationId::BipartiteDiscord,
        RelationId::BipartiteMultiBasis,
        RelationId::Tripartite,
        RelationId::ConditionalUpper,
        RelationId::LsUpper,
        RelationId::FannesUpper,
        RelationId::CoherenceDifference,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationId::TwoBasis => "eq5",
            RelationId::BipartiteTwoBasis => "eq9",
            RelationId::BipartiteDiscord => "eq10",
            RelationId::Tripartite => "eq11",
            RelationId::MultiBasis => "eq14",
            RelationId::BipartiteMultiBasis => "eq17",
            RelationId::LsUpper => "eq18",
            RelationId::ConditionalUpper => "eq26",
            RelationId::FannesUpper => "eq29",
            RelationId::CoherenceDifference => "eq31",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            RelationId::TwoBasis => "two-basis lower bound",
            RelationId::MultiBasis => "multi-basis lower bound",
            RelationId::BipartiteTwoBasis => "memory-assisted two-basis lower bound",
            RelationId::BipartiteDiscord => "discord-improved memory-assisted lower bound",
            RelationId::BipartiteMultiBasis => "memory-assisted multi-basis lower bound",
            RelationId::Tripartite => "conditional-entropy sum across AB and AD",
            RelationId::ConditionalUpper => "conditional-entropy upper bound",
            RelationId::LsUpper => "separable-decomposition upper bound",
            RelationId::FannesUpper => "continuity upper bound on coherence",
            RelationId::CoherenceDifference => "continuity bound on a coherence difference",
        }
    }

    pub fn direction(self) -> Direction {
        match self {
            RelationId::ConditionalUpper
            | RelationId::LsUpper
            | RelationId::FannesUpper
            | RelationId::CoherenceDifference => Direction::Upper,
            _ => Direction::Lower,
        }
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        RelationId::ALL
            .into_iter()
            .find(|r| r.name() == lower)
            .ok_or_else(|| {
                let known: Vec<&str> = RelationId::ALL.iter().map(|r| r.name()).collect();
                Error::Parse(format!("unknown relation `{s}` (known: {})", known.join(", ")))
            })
    }
}

impl Serialize for RelationId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// One evaluated inequality.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationReport {
    pub relation: RelationId,
    pub direction: Direction,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
    pub terms: BTreeMap<String, f64>,
}

impl RelationReport {
    pub fn new(relation: RelationId, lhs: f64, rhs: f64, terms: BTreeMap<String, f64>) -> Self {
        let direction = relation.direction();
        let slack = match direction {
            Direction::Lower => lhs - rhs,
            Direction::Upper => rhs - lhs,
        };
        Self {
            relation,
            direction,
            lhs,
            rhs,
            slack,
            holds: slack >= -DEFAULT_TOL,
            terms,
        }
    }

    pub fn holds_within(&self, tol: f64) -> bool {
        self.slack >= -tol
    }

    pub fn term(&self, name: &str) -> f64 {
        self.terms.get(name).copied().unwrap_or(f64::NAN)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports contain only finite numbers and strings")
    }
}

fn terms<const N: usize>(pairs: [(&str, f64); N]) -> BTreeMap<String, f64> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Basis-overlap constants.
#[derive(Clone, Debug, PartialEq)]
pub struct OverlapStats {
    /// `c = max |<i|a>|` over all basis pairs.
    pub max_overlap: f64,
    /// Nested overlap constant `b` for the bases in the given order.
    pub b: f64,
    /// `c(i_k, j_l) = |<i_k|j_l>|^2` for every pair `k < l`.
    pub pairwise: Vec<((usize, usize), Vec<Vec<f64>>)>,
}

fn check_same_dim(bases: &[&Basis]) -> Result<usize> {
    let d = bases
        .first()
        .ok_or_else(|| Error::InvalidParams("no bases given".into()))?
        .dim();
    if let Some(b) = bases.iter().find(|b| b.dim() != d) {
        return Err(dim_mismatch(format!("basis `{}` has dimension {}, expected {d}", b.label(), b.dim())));
    }
    Ok(d)
}

/// `|<i|j>|^2` for every column pair.
pub fn overlap_squares(b1: &Basis, b2: &Basis) -> Result<Vec<Vec<f64>>> {
    check_same_dim(&[b1, b2])?;
    let g = &b1.unitary().adjoint() * b2.unitary();
    let d = b1.dim();
    Ok((0..d).map(|i| (0..d).map(|j| g[(i, j)].norm_sqr()).collect()).collect())
}

/// `max_{i,a} |<i|a>|`.
pub fn max_overlap(b1: &Basis, b2: &Basis) -> Result<f64> {
    let c = overlap_squares(b1, b2)?;
    Ok(c.iter().flatten().fold(0.0f64, |m, &x| m.max(x)).sqrt())
}

/// Nested overlap constant for bases `P_1, ..., P_n` in the given order:
/// `max_{i_n} sum_{i_2..i_{n-1}} max_{i_1} c(i_1,i_2) prod_{k=2}^{n-1} c(i_k,i_{k+1})`.
/// For `n = 2` the sum and product are empty and `b = max c(i_1, i_2)`.
pub fn overlap_b(bases: &[&Basis]) -> Result<f64> {
    if bases.len() < 2 {
        return Err(Error::InvalidParams("the overlap constant needs at least two bases".into()));
    }
    let d = check_same_dim(bases)?;
    let c: Vec<Vec<Vec<f64>>> = bases
        .windows(2)
        .map(|w| overlap_squares(w[0], w[1]))
        .collect::<Result<_>>()?;
    // weight[i_k]: running sum over i_2..i_{k-1} ending at i_k
    let mut weight: Vec<f64> = (0..d)
        .map(|i2| (0..d).map(|i1| c[0][i1][i2]).fold(0.0, f64::max))
        .collect();
    for ck in &c[1..] {
        weight = (0..d)
            .map(|next| (0..d).map(|cur| weight[cur] * ck[cur][next]).sum())
            .collect();
    }
    Ok(weight.into_iter().fold(0.0, f64::max))
}

/// Smallest `b` (tightest bound) over all orderings of `bases`.
pub fn overlap_b_best_order(bases: &[&Basis]) -> Result<f64> {
    let mut best = f64::INFINITY;
    let mut order: Vec<&Basis> = bases.to_vec();
    let n = order.len();
    // Heap's algorithm
    let mut stack = vec![0usize; n];
    best = best.min(overlap_b(&order)?);
    let mut i = 1;
    while i < n {
        if stack[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(stack[i], i);
            }
            best = best.min(overlap_b(&order)?);
            stack[i] += 1;
            i = 1;
        } else {
            stack[i] = 0;
            i += 1;
        }
    }
    Ok(best)
}

pub fn overlap_stats(bases: &[&Basis]) -> Result<OverlapStats> {
    let b = overlap_b(bases)?;
    let mut pairwise = Vec::new();
    let mut max_sq: f64 = 0.0;
    for k in 0..bases.len() {
        for l in (k + 1)..bases.len() {
            let c = overlap_squares(bases[k], bases[l])?;
            max_sq = c.iter().flatten().fold(max_sq, |m, &x| m.max(x));
            pairwise.push(((k, l), c));
        }
    }
    Ok(OverlapStats { max_overlap: max_sq.sqrt(), b, pairwise })
}

/// How the overlap constant is chosen for multi-basis bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisOrder {
    /// Use the bases in the order given.
    AsGiven,
    /// Use the ordering that minimizes `b`.
    Best,
}

fn b_for(bases: &[&Basis], order: BasisOrder) -> Result<f64> {
    match order {
        BasisOrder::AsGiven => overlap_b(bases),
        BasisOrder::Best => overlap_b_best_order(bases),
    }
}

fn coherence_terms(coherences: &[f64]) -> impl Iterator<Item = (String, f64)> + '_ {
    coherences
        .iter()
        .enumerate()
        .map(|(k, c)| (format!("coherence_{}", k + 1), *c))
}

/// Two bases of a single system.
pub fn check_two_basis_single(rho: &DensityMatrix, b1: &Basis, b2: &Basis) -> Result<RelationReport> {
    let s = von_neumann_entropy(rho);
    let c1 = coherence_given_entropy(rho, b1, s)?;
    let c2 = coherence_given_entropy(rho, b2, s)?;
    let overlap = max_overlap(b1, b2)?;
    let rhs = -2.0 * overlap.log2() - s;
    Ok(RelationReport::new(
        RelationId::TwoBasis,
        c1 + c2,
        rhs,
        terms([("coherence_1", c1), ("coherence_2", c2), ("entropy", s), ("max_overlap", overlap)]),
    ))
}

/// `n >= 2` bases of a single system.
pub fn check_multi_basis_single(rho: &DensityMatrix, bases: &[&Basis], order: BasisOrder) -> Result<RelationReport> {
    if bases.len() < 2 {
        return Err(Error::InvalidParams("need at least two bases".into()));
    }
    let s = von_neumann_entropy(rho);
    let coherences: Vec<f64> = bases
        .iter()
        .map(|b| coherence_given_entropy(rho, b, s))
        .collect::<Result<_>>()?;
    let b = b_for(bases, order)?;
    let mut t: BTreeMap<String, f64> = coherence_terms(&coherences).collect();
    t.insert("entropy".into(), s);
    t.insert("b".into(), b);
    Ok(RelationReport::new(RelationId::MultiBasis, coherences.iter().sum(), -b.log2() - s, t))
}

// Coherences of rho_AB in the bases |i_k> (x) |mu>, plus S(AB) and S(A|B).
struct MemoryCoherences {
    coherences: Vec<f64>,
    conditional_entropy: f64,
}

fn memory_coherences(rho_ab: &DensityMatrix, bases_a: &[&Basis]) -> Result<MemoryCoherences> {
    rho_ab.bipartite_dims()?;
    let s_ab = von_neumann_entropy(rho_ab);
    let s_b = von_neumann_entropy(&rho_ab.reduce(&[1])?);
    let coherences = bases_a
        .iter()
        .map(|b| {
            let product = product_basis_with_b_eigenbasis(rho_ab, b)?;
            coherence_given_entropy(rho_ab, &product, s_ab)
        })
        .collect::<Result<_>>()?;
    Ok(MemoryCoherences { coherences, conditional_entropy: s_ab - s_b })
}

/// Two bases on A with B measured in the eigenbasis of its marginal.
pub fn check_bipartite_two_basis(rho_ab: &DensityMatrix, a1: &Basis, a2: &Basis) -> Result<RelationReport> {
    let m = memory_coherences(rho_ab, &[a1, a2])?;
    let overlap = max_overlap(a1, a2)?;
    let (c1, c2) = (m.coherences[0], m.coherences[1]);
    Ok(RelationReport::new(
        RelationId::BipartiteTwoBasis,
        c1 + c2,
        -2.0 * overlap.log2() - m.conditional_entropy,
        terms([
            ("coherence_1", c1),
            ("coherence_2", c2),
            ("conditional_entropy", m.conditional_entropy),
            ("max_overlap", overlap),
        ]),
    ))
}

/// The memory-assisted two-basis bound lowered by `max(0, D - J)` (two qubits).
pub fn check_bipartite_discord_improved(rho_ab: &DensityMatrix, a1: &Basis, a2: &Basis) -> Result<RelationReport> {
    let CorrelationSet {
        conditional_entropy,
        mutual_information,
        classical_correlation,
        discord,
    } = correlation_set(rho_ab)?;
    let base = check_bipartite_two_basis(rho_ab, a1, a2)?;
    let penalty = (discord - classical_correlation).max(0.0);
    let mut t = base.terms.clone();
    t.insert("conditional_entropy".into(), conditional_entropy);
    t.insert("mutual_information".into(), mutual_information);
    t.insert("classical_correlation".into(), classical_correlation);
    t.insert("discord".into(), discord);
    t.insert("discord_penalty".into(), penalty);
    let overlap = base.term("max_overlap");
    let rhs = -2.0 * overlap.log2() - conditional_entropy - penalty;
    Ok(RelationReport::new(RelationId::BipartiteDiscord, base.lhs, rhs, t))
}

/// `n >= 2` bases on A with the shared B eigenbasis.
pub fn check_multi_basis_bipartite(rho_ab: &DensityMatrix, bases_a: &[&Basis], order: BasisOrder) -> Result<RelationReport> {
    if bases_a.len() < 2 {
        return Err(Error::InvalidParams("need at least two bases".into()));
    }
    let (da, _) = rho_ab.bipartite_dims()?;
    if check_same_dim(bases_a)? != da {
        return Err(dim_mismatch(format!("bases have dimension {}, subsystem A has {da}", bases_a[0].dim())));
    }
    let m = memory_coherences(rho_ab, bases_a)?;
    let b = b_for(bases_a, order)?;
    let mut t: BTreeMap<String, f64> = coherence_terms(&m.coherences).collect();
    t.insert("conditional_entropy".into(), m.conditional_entropy);
    t.insert("b".into(), b);
    Ok(RelationReport::new(
        RelationId::BipartiteMultiBasis,
        m.coherences.iter().sum(),
        -b.log2() - m.conditional_entropy,
        t,
    ))
}

/// Memory-assisted bounds across AB and AD of a tripartite state, and the
/// conditional-entropy sum that keeps them from both tightening at once.
#[derive(Clone, Debug, PartialEq)]
pub struct TripartiteReport {
    pub ab: RelationReport,
    pub ad: RelationReport,
    pub ssa_sum: f64,
    pub ssa: RelationReport,
}

pub fn check_tripartite(rho_abd: &DensityMatrix, a1: &Basis, a2: &Basis) -> Result<TripartiteReport> {
    if rho_abd.dims().len() != 3 {
        return Err(dim_mismatch(format!(
            "expected a tripartite state, got subsystem dimensions {:?}",
            rho_abd.dims()
        )));
    }
    let ab = check_bipartite_two_basis(&rho_abd.reduce(&[0, 1])?, a1, a2)?;
    let ad = check_bipartite_two_basis(&rho_abd.reduce(&[0, 2])?, a1, a2)?;
    let s_ab = ab.term("conditional_entropy");
    let s_ad = ad.term("conditional_entropy");
    let ssa_sum = s_ab + s_ad;
    let ssa = RelationReport::new(
        RelationId::Tripartite,
        ssa_sum,
        0.0,
        terms([("conditional_entropy_ab", s_ab), ("conditional_entropy_ad", s_ad)]),
    );
    Ok(TripartiteReport { ab, ad, ssa_sum, ssa })
}

/// `C_{iμ} + C_{aμ} <= 2 log2 d_A - 2 S(A|B)`.
pub fn check_conditional_upper(rho_ab: &DensityMatrix, a1: &Basis, a2: &Basis) -> Result<RelationReport> {
    let (da, _) = rho_ab.bipartite_dims()?;
    let m = memory_coherences(rho_ab, &[a1, a2])?;
    let (c1, c2) = (m.coherences[0], m.coherences[1]);
    Ok(RelationReport::new(
        RelationId::ConditionalUpper,
        c1 + c2,
        2.0 * (da as f64).log2() - 2.0 * m.conditional_entropy,
        terms([
            ("coherence_1", c1),
            ("coherence_2", c2),
            ("conditional_entropy", m.conditional_entropy),
            ("dim_a", da as f64),
        ]),
    ))
}

fn continuity_rhs(distance: f64, d: usize) -> Result<f64> {
    Ok(distance * ((d - 1) as f64).log2() + binary_entropy(distance.clamp(0.0, 1.0))?)
}

fn dephased_matrix(rho: &DensityMatrix, basis: &Basis) -> Result<ComplexMatrix> {
    let p = measure(rho, basis)?;
    let u = basis.unitary();
    Ok(ComplexMatrix::from_fn(rho.dim(), |j, k| {
        p.probabilities()
            .iter()
            .enumerate()
            .map(|(l, &pl)| u[(j, l)] * pl * u[(k, l)].conj())
            .sum()
    }))
}

/// `C(rho) <= ε log2 (d - 1) + H(ε)`, `ε = ||dephased - rho||_1 / 2`.
pub fn fannes_coherence_upper(rho: &DensityMatrix, basis: &Basis) -> Result<RelationReport> {
    let d = rho.dim();
    let s = von_neumann_entropy(rho);
    let c = coherence_given_entropy(rho, basis, s)?;
    let epsilon = trace_norm(&(&dephased_matrix(rho, basis)? - rho.matrix()))? / 2.0;
    Ok(RelationReport::new(
        RelationId::FannesUpper,
        c,
        continuity_rhs(epsilon, d)?,
        terms([("coherence", c), ("epsilon", epsilon), ("dim", d as f64)]),
    ))
}

/// `|C_1 - C_2| <= η log2 (d - 1) + H(η)`, `η` the trace distance between the
/// two dephased states.
pub fn coherence_difference_bound(rho: &DensityMatrix, b1: &Basis, b2: &Basis) -> Result<RelationReport> {
    check_same_dim(&[b1, b2])?;
    let d = rho.dim();
    let s = von_neumann_entropy(rho);
    let c1 = coherence_given_entropy(rho, b1, s)?;
    let c2 = coherence_given_entropy(rho, b2, s)?;
    let eta = trace_norm(&(&dephased_matrix(rho, b1)? - &dephased_matrix(rho, b2)?))? / 2.0;
    Ok(RelationReport::new(
        RelationId::CoherenceDifference,
        (c1 - c2).abs(),
        continuity_rhs(eta, d)?,
        terms([("coherence_1", c1), ("coherence_2", c2), ("eta", eta), ("dim", d as f64)]),
    ))
}
