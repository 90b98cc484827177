//! Seeded randomized checking of every relation.
//!
//! Each case draws its trials from its own generator family, and trial `t`
//! uses stream `t` of that family, so any single trial can be replayed without
//! running the ones before it. Results do not depend on which cases are
//! selected.

use std::fmt::Write as _;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::lsdecomp::{ls_bell_diagonal, ls_horodecki, upper_bound_ls};
use crate::relations::*;
use crate::states::{
    bell_diagonal, horodecki_state, random_basis_with, random_mixed_with, random_pure_with, stream_rng, Basis,
    BellDiagonalParams, BellOrdering, DensityMatrix, HorodeckiParams,
};

const CASE_SEED_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub trials: u64,
    pub tolerance: f64,
    /// Relations to run; empty means all.
    pub relations: Vec<RelationId>,
    /// Run only this trial index and keep its reports.
    pub replay: Option<u64>,
    /// Negates every slack. Used to check that violations are reported.
    pub sabotage: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            seed: 7,
            trials: 10_000,
            tolerance: DEFAULT_TOL,
            relations: Vec::new(),
            replay: None,
            sabotage: false,
        }
    }
}

type Trial = fn(&mut ChaCha8Rng, u64) -> Result<RelationReport>;

/// A named family of random instances for one relation.
pub struct Case {
    pub relation: RelationId,
    pub name: &'static str,
    run: Trial,
}

fn state(dims: &[usize], rng: &mut ChaCha8Rng, trial: u64) -> DensityMatrix {
    if trial % 4 == 0 {
        random_pure_with(dims, rng)
    } else {
        random_mixed_with(dims, rng)
    }
}

fn single_dim(trial: u64) -> usize {
    [2, 3, 4][(trial % 3) as usize]
}

fn bipartite_dims(trial: u64) -> [usize; 2] {
    [[2, 2], [2, 3], [3, 3]][(trial % 3) as usize]
}

fn bases(d: usize, n: usize, rng: &mut ChaCha8Rng) -> Vec<Basis> {
    (0..n).map(|k| random_basis_with(d, rng, format!("random#{k}"))).collect()
}

fn single_system(rng: &mut ChaCha8Rng, trial: u64, n: usize) -> (DensityMatrix, Vec<Basis>) {
    let d = single_dim(trial);
    let rho = state(&[d], rng, trial);
    (rho, bases(d, n, rng))
}

fn bipartite(rng: &mut ChaCha8Rng, trial: u64, dims: &[usize], n: usize) -> (DensityMatrix, Vec<Basis>) {
    let rho = state(dims, rng, trial);
    (rho, bases(dims[0], n, rng))
}

fn multi_single(rng: &mut ChaCha8Rng, trial: u64, n: usize, order: BasisOrder) -> Result<RelationReport> {
    let (rho, b) = single_system(rng, trial, n);
    check_multi_basis_single(&rho, &b.iter().collect::<Vec<_>>(), order)
}

fn multi_bipartite(rng: &mut ChaCha8Rng, trial: u64, n: usize, order: BasisOrder) -> Result<RelationReport> {
    let (rho, b) = bipartite(rng, trial, &bipartite_dims(trial), n);
    check_multi_basis_bipartite(&rho, &b.iter().collect::<Vec<_>>(), order)
}

fn random_bell_params(rng: &mut ChaCha8Rng) -> BellDiagonalParams {
    let mut w: [f64; 4] = std::array::from_fn(|_| -(1.0 - rng.random::<f64>()).ln());
    // sharpen the distribution so entangled states are common
    w.iter_mut().for_each(|x| *x = x.powi(3));
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
    w[3] = (1.0 - w[0] - w[1] - w[2]).max(0.0);
    BellDiagonalParams::new(w).expect("normalized weights")
}

/// Every case, in a fixed order. A case's position determines its seed.
pub fn cases() -> Vec<Case> {
    vec![
        Case {
            relation: RelationId::TwoBasis,
            name: "two bases, d in {2,3,4}",
            run: |rng, t| {
                let (rho, b) = single_system(rng, t, 2);
                check_two_basis_single(&rho, &b[0], &b[1])
            },
        },
        Case {
            relation: RelationId::MultiBasis,
            name: "n=2, d in {2,3,4}",
            run: |rng, t| multi_single(rng, t, 2, BasisOrder::AsGiven),
        },
        Case {
            relation: RelationId::MultiBasis,
            name: "n=3 as given, d in {2,3,4}",
            run: |rng, t| multi_single(rng, t, 3, BasisOrder::AsGiven),
        },
        Case {
            relation: RelationId::MultiBasis,
            name: "n=3 best order, d in {2,3,4}",
            run: |rng, t| multi_single(rng, t, 3, BasisOrder::Best),
        },
        Case {
            relation: RelationId::BipartiteTwoBasis,
            name: "dims in {2x2,2x3,3x3}",
            run: |rng, t| {
                let (rho, b) = bipartite(rng, t, &bipartite_dims(t), 2);
                check_bipartite_two_basis(&rho, &b[0], &b[1])
            },
        },
        Case {
            relation: RelationId::BipartiteDiscord,
            name: "two qubits",
            run: |rng, t| {
                let (rho, b) = bipartite(rng, t, &[2, 2], 2);
                check_bipartite_discord_improved(&rho, &b[0], &b[1])
            },
        },
        Case {
            relation: RelationId::BipartiteMultiBasis,
            name: "n=2, dims in {2x2,2x3,3x3}",
            run: |rng, t| multi_bipartite(rng, t, 2, BasisOrder::AsGiven),
        },
        Case {
            relation: RelationId::BipartiteMultiBasis,
            name: "n=3 as given, dims in {2x2,2x3,3x3}",
            run: |rng, t| multi_bipartite(rng, t, 3, BasisOrder::AsGiven),
        },
        Case {
            relation: RelationId::BipartiteMultiBasis,
            name: "n=3 best order, dims in {2x2,2x3,3x3}",
            run: |rng, t| multi_bipartite(rng, t, 3, BasisOrder::Best),
        },
        Case {
            relation: RelationId::Tripartite,
            name: "2x2x2",
            run: |rng, t| {
                let (rho, b) = bipartite(rng, t, &[2, 2, 2], 2);
                Ok(check_tripartite(&rho, &b[0], &b[1])?.ssa)
            },
        },
        Case {
            relation: RelationId::ConditionalUpper,
            name: "d x d, d in {2,3,4}",
            run: |rng, t| {
                let d = single_dim(t);
                let (rho, b) = bipartite(rng, t, &[d, d], 2);
                check_conditional_upper(&rho, &b[0], &b[1])
            },
        },
        Case {
            relation: RelationId::LsUpper,
            name: "Bell-diagonal and qutrit family, random bases",
            run: |rng, t| {
                let (rho, ls) = if t % 2 == 0 {
                    let ordering = if t % 4 == 0 { BellOrdering::PhiPhiPsiPsi } else { BellOrdering::PhiPsiPsiPhi };
                    let p = random_bell_params(rng);
                    (bell_diagonal(&p, ordering), ls_bell_diagonal(&p, ordering))
                } else {
                    let p = HorodeckiParams::new(2.0 + 3.0 * rng.random::<f64>())?;
                    (horodecki_state(&p), ls_horodecki(&p))
                };
                let b = bases(rho.dim(), 2, rng);
                upper_bound_ls(&rho, &ls, &b[0], &b[1])
            },
        },
        Case {
            relation: RelationId::FannesUpper,
            name: "d in {2,3,4}",
            run: |rng, t| {
                let (rho, b) = single_system(rng, t, 1);
                fannes_coherence_upper(&rho, &b[0])
            },
        },
        Case {
            relation: RelationId::CoherenceDifference,
            name: "d in {2,3,4}",
            run: |rng, t| {
                let (rho, b) = single_system(rng, t, 2);
                coherence_difference_bound(&rho, &b[0], &b[1])
            },
        },
    ]
}

/// Aggregate over the trials of one case.
#[derive(Clone, Debug, PartialEq)]
pub struct CaseSummary {
    pub relation: RelationId,
    pub name: &'static str,
    pub trials: u64,
    pub min_slack: f64,
    pub min_slack_trial: u64,
    pub violations: u64,
    pub first_violation: Option<u64>,
    pub errors: u64,
    pub first_error: Option<(u64, String)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzSummary {
    pub seed: u64,
    pub trials: u64,
    pub tolerance: f64,
    pub cases: Vec<CaseSummary>,
    /// Reports of the replayed trial, one per selected case.
    pub replayed: Vec<RelationReport>,
}

impl FuzzSummary {
    pub fn failures(&self) -> u64 {
        self.cases.iter().map(|c| c.violations + c.errors).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    /// Command lines that rerun the first failing trial of each failing case.
    pub fn replay_commands(&self) -> Vec<String> {
        self.cases
            .iter()
            .filter_map(|c| {
                let trial = match (c.first_violation, &c.first_error) {
                    (Some(v), Some((e, _))) => v.min(*e),
                    (Some(v), None) => v,
                    (None, Some((e, _))) => *e,
                    (None, None) => return None,
                };
                Some(format!("cohlab fuzz --seed {} --relation {} --replay {trial}", self.seed, c.relation))
            })
            .collect()
    }

    /// Human-readable summary; identical for identical inputs.
    pub fn render(&self) -> String {
        let width = self.cases.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        writeln!(out, "seed {}  trials {}  tolerance {:e}", self.seed, self.trials, self.tolerance).unwrap();
        writeln!(
            out,
            "{:<8}  {:<width$}  {:>8}  {:>14}  {:>8}  {:>10}  {:>6}",
            "relation", "case", "trials", "min slack", "at trial", "violations", "errors"
        )
        .unwrap();
        for c in &self.cases {
            writeln!(
                out,
                "{:<8}  {:<width$}  {:>8}  {:>14.6e}  {:>8}  {:>10}  {:>6}",
                c.relation.name(),
                c.name,
                c.trials,
                c.min_slack,
                c.min_slack_trial,
                c.violations,
                c.errors
            )
            .unwrap();
            if let Some((t, msg)) = &c.first_error {
                writeln!(out, "  error at trial {t}: {msg}").unwrap();
            }
        }
        if self.passed() {
            out.push_str("all relations hold\n");
        } else {
            writeln!(out, "{} failing trials; replay with:", self.failures()).unwrap();
            for cmd in self.replay_commands() {
                writeln!(out, "  {cmd}").unwrap();
            }
        }
        out
    }
}

fn case_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_add((index as u64).wrapping_mul(CASE_SEED_STRIDE))
}

pub fn run(config: &FuzzConfig) -> FuzzSummary {
    let mut summaries = Vec::new();
    let mut replayed = Vec::new();
    let selected = |r: RelationId| config.relations.is_empty() || config.relations.contains(&r);
    for (index, case) in cases().into_iter().enumerate().filter(|(_, c)| selected(c.relation)) {
        let family = case_seed(config.seed, index);
        let trials: Vec<u64> = match config.replay {
            Some(t) => vec![t],
            None => (0..config.trials).collect(),
        };
        let mut summary = CaseSummary {
            relation: case.relation,
            name: case.name,
            trials: trials.len() as u64,
            min_slack: f64::INFINITY,
            min_slack_trial: 0,
            violations: 0,
            first_violation: None,
            errors: 0,
            first_error: None,
        };
        for t in trials {
            let mut rng = stream_rng(family, t);
            match (case.run)(&mut rng, t) {
                Ok(mut report) => {
                    if config.sabotage {
                        report.slack = -report.slack;
                    }
                    if report.slack < summary.min_slack || report.slack.is_nan() && !summary.min_slack.is_nan() {
                        summary.min_slack = report.slack;
                        summary.min_slack_trial = t;
                    }
                    if !report.holds_within(config.tolerance) {
                        summary.violations += 1;
                        summary.first_violation.get_or_insert(t);
                    }
                    report.holds = report.holds_within(config.tolerance);
                    if config.replay.is_some() {
                        replayed.push(report);
                    }
                }
                Err(e) => {
                    summary.errors += 1;
                    summary.first_error.get_or_insert((t, e.to_string()));
                }
            }
        }
        summaries.push(summary);
    }
    FuzzSummary {
        seed: config.seed,
        trials: config.trials,
        tolerance: config.tolerance,
        cases: summaries,
        replayed,
    }
}
