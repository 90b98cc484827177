//! Bell-diagonal sweeps comparing the summed coherence with three upper
//! bounds, written as CSV for plotting.
//!
//! Weights follow [`BellOrdering::PhiPsiPsiPhi`]: `d1` on Φ+, `d2` on Ψ+, the
//! swept `d3` on Ψ-, and `d4 = 1 - d1 - d2 - d3` on Φ-.

use std::fmt::Write as _;
use std::path::Path;

use crate::coherence::rel_ent_coherence;
use crate::error::{Error, Result};
use crate::lsdecomp::{bell_conditional_bound, bell_single_factor_bound, ls_bell_diagonal};
use crate::states::{bell_diagonal, computational_basis, fourier_basis, Basis, BellDiagonalParams, BellOrdering};

/// Exact first line of every CSV.
pub const CSV_HEADER: &str = "d3,lhs,rhs_eq27,rhs_eq18,rhs_eq28";
pub const GRID_POINTS: usize = 201;
/// Distance kept from the ends of the `d3` range.
pub const EDGE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Panel {
    pub name: &'static str,
    pub d1: f64,
    pub d2: f64,
}

pub const PANEL_A: Panel = Panel { name: "a", d1: 0.52, d2: 0.1 };
pub const PANEL_B: Panel = Panel { name: "b", d1: 0.6, d2: 0.05 };
pub const PANELS: [Panel; 2] = [PANEL_A, PANEL_B];

impl Panel {
    pub fn file_name(&self) -> String {
        format!("figure1_panel_{}.csv", self.name)
    }

    /// `GRID_POINTS` evenly spaced values in `[EDGE, 1 - d1 - d2 - EDGE]`.
    pub fn d3_grid(&self) -> Vec<f64> {
        let hi = 1.0 - self.d1 - self.d2 - EDGE;
        let step = (hi - EDGE) / (GRID_POINTS - 1) as f64;
        (0..GRID_POINTS)
            .map(|k| if k == GRID_POINTS - 1 { hi } else { EDGE + step * k as f64 })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FigureRow {
    pub d3: f64,
    /// `C` in the computational basis plus `C` in the Fourier⊗Fourier basis.
    pub lhs: f64,
    /// `4 - λ S(rho_s)`.
    pub single_factor: f64,
    /// `4 - 2K`.
    pub ls: f64,
    /// `4 - 2 H(d)`.
    pub conditional: f64,
}

pub fn panel_rows(panel: &Panel) -> Result<Vec<FigureRow>> {
    let z = computational_basis(4);
    let ff: Basis = fourier_basis(2).tensor(&fourier_basis(2));
    panel
        .d3_grid()
        .into_iter()
        .map(|d3| {
            let d4 = (1.0 - panel.d1 - panel.d2 - d3).max(0.0);
            let params = BellDiagonalParams::new([panel.d1, panel.d2, d3, d4])?;
            let rho = bell_diagonal(&params, BellOrdering::PhiPsiPsiPhi);
            Ok(FigureRow {
                d3,
                lhs: rel_ent_coherence(&rho, &z)? + rel_ent_coherence(&rho, &ff)?,
                single_factor: bell_single_factor_bound(&params)?,
                ls: 4.0 - 2.0 * ls_bell_diagonal(&params, BellOrdering::PhiPsiPsiPhi).k(),
                conditional: bell_conditional_bound(&params),
            })
        })
        .collect()
}

/// CSV text with [`CSV_HEADER`] and one line per row. Numbers use the
/// shortest representation that parses back to the same `f64`.
pub fn to_csv(rows: &[FigureRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(out, "{},{},{},{},{}", r.d3, r.lhs, r.single_factor, r.ls, r.conditional).unwrap();
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<FigureRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(CSV_HEADER) => {}
        other => return Err(Error::Parse(format!("expected header `{CSV_HEADER}`, found {other:?}"))),
    }
    lines
        .enumerate()
        .map(|(k, line)| {
            let fields: Vec<f64> = line
                .split(',')
                .map(|f| f.parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", k + 2)))?;
            match fields[..] {
                [d3, lhs, single_factor, ls, conditional] => Ok(FigureRow { d3, lhs, single_factor, ls, conditional }),
                _ => Err(Error::Parse(format!("line {}: expected 5 fields, found {}", k + 2, fields.len()))),
            }
        })
        .collect()
}

/// Writes one CSV per panel into `dir` and returns the paths written.
pub fn write_panels(dir: &Path) -> std::io::Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(dir)?;
    PANELS
        .iter()
        .map(|panel| {
            let rows = panel_rows(panel).map_err(std::io::Error::other)?;
            let path = dir.join(panel.file_name());
            std::fs::write(&path, to_csv(&rows))?;
            Ok(path)
        })
        .collect()
}
