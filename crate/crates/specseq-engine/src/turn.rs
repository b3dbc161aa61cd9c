use std::collections::BTreeMap;

use fp_linalg::{rank, subquotient_dim, FpMatrix, LinalgError};
use graded_core::Window;

use crate::page::{CellBasis, Page};
use crate::rule::{apply_rule, apply_rule_elem, DerivationRule};
use crate::{CheckReport, EngineError, Mismatch};

/// A claimed step of the spectral sequence: source page, differential,
/// and the claimed next page.
#[derive(Clone, Debug)]
pub struct PageTransition {
    pub source: Page,
    pub rule: DerivationRule,
    pub target: Page,
}

type Cell = (i64, i64, u32);

fn target_cell(cell: Cell, r: i64) -> Cell {
    (cell.0 - r, cell.1 + r - 1, cell.2)
}

fn source_cell(cell: Cell, r: i64) -> Cell {
    (cell.0 + r, cell.1 - r + 1, cell.2)
}

/// Matrix of the differential out of one cell, columns indexed by the
/// cell basis and rows by the basis of the target cell.
fn cell_matrix(
    page: &Page,
    rule: &DerivationRule,
    basis: &CellBasis,
    cell: Cell,
) -> Result<FpMatrix, EngineError> {
    let tgt = target_cell(cell, rule.r);
    let empty = Vec::new();
    let src = basis.cells.get(&cell).unwrap_or(&empty);
    let dst = basis.cells.get(&tgt).unwrap_or(&empty);
    let mut mat = FpMatrix::zero(dst.len(), src.len(), page.p).expect("valid prime");
    for (col, m) in src.iter().enumerate() {
        let image = apply_rule(page, rule, m)?;
        for (tm, tc) in image.iter() {
            let d = page.degree_of(tm);
            let w = page.weight_of(tm);
            if (d.s, d.t, w) != tgt {
                return Err(EngineError::BadPage(format!(
                    "page {}: differential of {} changes tri-degree to ({}, {}, w{})",
                    page.label,
                    m.display(&page.gens),
                    d.s,
                    d.t,
                    w
                )));
            }
            let row = basis
                .index_of(tgt, tm)
                .ok_or_else(|| EngineError::TargetOutsideBasis {
                    page: page.label.clone(),
                    witness: tm.display(&page.gens),
                })?;
            mat.set(row, col, tc as i64);
        }
    }
    Ok(mat)
}

/// Replay one page turn: verify d) compose to zero, compute pagewise
/// homology per (s, t, weight), and compare with the claimed target
/// page over the unpadded window.
pub fn turn_page(
    tr: &PageTransition,
    window: &Window,
    check: &str,
) -> Result<CheckReport, EngineError> {
    let r = tr.rule.r;
    let padded = window.padded(r);
    let src = tr.source.cells(&padded)?;
    let mut report = CheckReport::new(check);

    // d after d vanishes on every enumerated basis element
    for (cell, basis) in &src.cells {
        for m in basis {
            let once = apply_rule(&tr.source, &tr.rule, m)?;
            let twice = apply_rule_elem(&tr.source, &tr.rule, &once)?;
            if !twice.is_zero() {
                return Err(EngineError::CompositionNonzero {
                    page: tr.source.label.clone(),
                    witness: format!(
                        "d(d({})) = {} at cell ({}, {}, w{})",
                        m.display(&tr.source.gens),
                        twice.display(&tr.source.gens),
                        cell.0,
                        cell.1,
                        cell.2
                    ),
                });
            }
        }
    }

    // matrices and ranks per cell (padded window)
    let mut mats: BTreeMap<Cell, FpMatrix> = BTreeMap::new();
    let mut ranks: BTreeMap<Cell, usize> = BTreeMap::new();
    for &cell in src.cells.keys() {
        let mat = cell_matrix(&tr.source, &tr.rule, &src, cell)?;
        ranks.insert(cell, rank(&mat));
        mats.insert(cell, mat);
    }

    // homology per cell over the unpadded window vs the claimed page
    let claimed = tr.target.cells(window)?;
    let mut homology: BTreeMap<Cell, usize> = BTreeMap::new();
    let mut all_cells: Vec<Cell> = src
        .cells
        .keys()
        .copied()
        .chain(claimed.cells.keys().copied())
        .collect();
    all_cells.sort();
    all_cells.dedup();
    let zero_mat = |rows: usize, cols: usize| FpMatrix::zero(rows, cols, tr.source.p).unwrap();
    for cell in all_cells {
        let (s, t, w) = cell;
        if !window.contains(graded_core::TriDeg::new(s, t)) {
            continue;
        }
        let ambient = src.dim(cell);
        let survivors = mats
            .get(&cell)
            .cloned()
            .unwrap_or_else(|| zero_mat(src.dim(target_cell(cell, r)), ambient));
        let killers_mat = mats
            .get(&source_cell(cell, r))
            .cloned()
            .unwrap_or_else(|| zero_mat(ambient, src.dim(source_cell(cell, r))));
        let hom = subquotient_dim(ambient, &killers_mat, &survivors).map_err(|e| match e {
            LinalgError::CompositionNonzero { .. } => EngineError::CompositionNonzero {
                page: tr.source.label.clone(),
                witness: format!("matrix composition at cell ({s}, {t}, w{w})"),
            },
            other => EngineError::BadPage(format!("linear algebra: {other}")),
        })?;
        homology.insert(cell, hom);
        let expected = claimed.dim(cell);
        if expected != hom {
            let witness = src
                .cells
                .get(&cell)
                .and_then(|v| v.first())
                .map(|m| m.display(&tr.source.gens))
                .or_else(|| {
                    claimed
                        .cells
                        .get(&cell)
                        .and_then(|v| v.first())
                        .map(|m| m.display(&tr.target.gens))
                })
                .unwrap_or_default();
            report.mismatches.push(Mismatch {
                location: format!("(s={s}, t={t}, w={w})"),
                expected,
                actual: hom,
                witness,
            });
        }
    }

    // bookkeeping identity per (total degree, weight): the new total
    // dimension drops by the ranks of the differentials leaving and
    // entering that degree
    let mut src_totals: BTreeMap<(i64, u32), usize> = BTreeMap::new();
    let mut hom_totals: BTreeMap<(i64, u32), usize> = BTreeMap::new();
    let mut rank_out: BTreeMap<(i64, u32), usize> = BTreeMap::new();
    for (&(s, t, w), basis) in &src.cells {
        if window.contains(graded_core::TriDeg::new(s, t)) {
            *src_totals.entry((s + t, w)).or_insert(0) += basis.len();
        }
    }
    for (&(s, t, w), &h) in &homology {
        *hom_totals.entry((s + t, w)).or_insert(0) += h;
    }
    for (&(s, t, w), &rk) in &ranks {
        // count only differentials whose source or target matters for
        // totals inside the unpadded window
        let src_in = window.contains(graded_core::TriDeg::new(s, t));
        let tgt = target_cell((s, t, w), r);
        let tgt_in = window.contains(graded_core::TriDeg::new(tgt.0, tgt.1));
        if src_in || tgt_in {
            *rank_out.entry((s + t, w)).or_insert(0) += rk;
        }
    }
    for (&(n, w), &total) in &src_totals {
        if n > window.n_max - 1 || n < window.n_min + 1 {
            continue; // boundary degrees lack one of the two rank terms
        }
        let out_rk = *rank_out.get(&(n, w)).unwrap_or(&0);
        let in_rk = *rank_out.get(&(n + 1, w)).unwrap_or(&0);
        let hom = *hom_totals.get(&(n, w)).unwrap_or(&0);
        if hom + out_rk + in_rk != total {
            report.notes.push(format!(
                "bookkeeping drift at (n={n}, w={w}): {total} - {out_rk} - {in_rk} != {hom}"
            ));
        }
    }

    report.finish();
    Ok(report)
}

/// Assert two pages present the same dimensions over a window (used
/// between consecutive active pages of a schedule).
pub fn check_pages_equal(
    a: &Page,
    b: &Page,
    window: &Window,
    check: &str,
) -> Result<CheckReport, EngineError> {
    let ca = a.cells(window)?;
    let cb = b.cells(window)?;
    let mut report = CheckReport::new(check);
    let mut keys: Vec<Cell> = ca.cells.keys().chain(cb.cells.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    for cell in keys {
        let (x, y) = (ca.dim(cell), cb.dim(cell));
        if x != y {
            report.mismatches.push(Mismatch {
                location: format!("(s={}, t={}, w={})", cell.0, cell.1, cell.2),
                expected: x,
                actual: y,
                witness: String::new(),
            });
        }
    }
    report.finish();
    Ok(report)
}

/// A candidate nonzero differential found by the bounded collapse scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSlot {
    pub r: i64,
    pub s: i64,
    pub t: i64,
    pub weight: u32,
}

/// For each page length r in the range, list source cells whose target
/// cell is also nonzero inside the window.
pub fn check_collapse(
    page: &Page,
    r_range: (i64, i64),
    window: &Window,
) -> Result<(CheckReport, Vec<CandidateSlot>), EngineError> {
    let basis = page.cells(window)?;
    let mut slots = Vec::new();
    for r in r_range.0..=r_range.1 {
        for (&cell, v) in &basis.cells {
            if v.is_empty() {
                continue;
            }
            let tgt = target_cell(cell, r);
            if !window.contains(graded_core::TriDeg::new(tgt.0, tgt.1)) {
                continue;
            }
            if basis.dim(tgt) > 0 {
                slots.push(CandidateSlot {
                    r,
                    s: cell.0,
                    t: cell.1,
                    weight: cell.2,
                });
            }
        }
    }
    let mut report = CheckReport::new(&format!(
        "collapse scan r in [{}, {}] on {}",
        r_range.0, r_range.1, page.label
    ));
    for slot in &slots {
        report.mismatches.push(Mismatch {
            location: format!(
                "r={} source (s={}, t={}, w={})",
                slot.r, slot.s, slot.t, slot.weight
            ),
            expected: 0,
            actual: 1,
            witness: "candidate differential slot".to_string(),
        });
    }
    report.finish();
    Ok((report, slots))
}

/// Compare the filtration-summed dimensions of a page with an abutment
/// dimension table per (total degree, weight).
pub fn abutment_check(
    page: &Page,
    target: &BTreeMap<(i64, u32), usize>,
    n_range: (i64, i64),
    weight: Option<u32>,
    window: &Window,
    check: &str,
) -> Result<CheckReport, EngineError> {
    let totals = page.cells(window)?.total_dims();
    let mut report = CheckReport::new(check);
    let weights: Vec<u32> = (0..(page.p - 1) as u32).collect();
    for n in n_range.0..=n_range.1 {
        for &w in &weights {
            if weight.is_some_and(|only| only != w) {
                continue;
            }
            let actual = *totals.get(&(n, w)).unwrap_or(&0);
            let expected = *target.get(&(n, w)).unwrap_or(&0);
            if actual != expected {
                report.mismatches.push(Mismatch {
                    location: format!("(n={n}, w={w})"),
                    expected,
                    actual,
                    witness: String::new(),
                });
            }
        }
    }
    report.finish();
    Ok(report)
}
