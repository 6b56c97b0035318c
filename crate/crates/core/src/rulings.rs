//! Normal rulings of rainbow-closure fronts: enumeration by a left-to-right
//! sweep of fixed-point free involutions, switch/return/departure
//! classification, eyes, genus, predicted point counts, and the dual
//! boundary report for the cell decomposition.
//!
//! The sweep state is an involution of the 2n strand slots. Both cusp fans
//! force the nested involution i <-> 2n+1-i; at a degree-0 crossing of slots
//! (k, k+1) the involution either conjugates by the transposition
//! (non-switch) or stays fixed provided one of the three normality
//! interleavings holds (switch). A non-switch is a departure when normality
//! holds before the crossing and a return when it holds after; exactly one
//! of the two occurs.

use crate::braidfront::{FrontDiagram, FrontError};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RulingError {
    #[error(transparent)]
    Front(#[from] FrontError),
    #[error("switch choice at crossing {crossing} violates normality")]
    NotNormal { crossing: usize },
    #[error("sweep does not close up with the nested involution at the right cusps")]
    BadClosure,
    #[error("operation requires a connected closure ({0} link components)")]
    Disconnected(usize),
    #[error("no all-switch ruling with r = 0 found; the front is outside the supported class")]
    NoTopRuling,
    #[error("s + 2r is not constant across rulings of this front")]
    IndexNotConstant,
    #[error("s - n + 1 = {0} is odd on a connected closure")]
    OddDimension(i64),
    #[error("Barannikov sweep disagrees with the ruling involutions at slice {slice}")]
    SweepMismatch { slice: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossingClass {
    Switch,
    Departure,
    Return,
}

/// A normal ruling: per-slice involutions over the braid band (0-based
/// slots), plus the crossing classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalRuling {
    pub n: usize,
    pub strands: usize,
    /// involutions[m] is the involution on slice m (before crossing m).
    pub involutions: Vec<Vec<usize>>,
    pub classes: Vec<CrossingClass>,
    pub s: usize,
    pub r: usize,
    pub d: usize,
}

impl NormalRuling {
    /// Canonical identity: the bit-string of switch choices in x-order.
    pub fn key(&self) -> String {
        self.classes
            .iter()
            .map(|c| if *c == CrossingClass::Switch { '1' } else { '0' })
            .collect()
    }

    pub fn switches(&self) -> Vec<bool> {
        self.classes.iter().map(|c| *c == CrossingClass::Switch).collect()
    }
}

fn nested_involution(n: usize) -> Vec<usize> {
    let dim = 2 * n;
    (0..dim).map(|i| dim - 1 - i).collect()
}

/// One of the three interleaving conditions at slots (k, k+1), 0-based.
fn normality(rho: &[usize], k: usize) -> bool {
    let (a, b) = (rho[k], rho[k + 1]);
    (a < k && k + 1 < b) || (k + 1 < b && b < a) || (b < a && a < k)
}

fn conjugate(rho: &[usize], k: usize) -> Vec<usize> {
    let mut out = rho.to_vec();
    out.swap(k, k + 1);
    for v in out.iter_mut() {
        if *v == k {
            *v = k + 1;
        } else if *v == k + 1 {
            *v = k;
        }
    }
    out
}

/// Replay a switch-choice string through the sweep, validating normality at
/// every switch and the nested closure at the right cusps.
pub fn ruling_from_switches(
    n: usize,
    letters: &[usize],
    switches: &[bool],
) -> Result<NormalRuling, RulingError> {
    let nested = nested_involution(n);
    let mut involutions = vec![nested.clone()];
    let mut classes = Vec::with_capacity(letters.len());
    let mut rho = nested.clone();
    for (m, &lvl) in letters.iter().enumerate() {
        let k = n + lvl - 1; // 0-based upper slot of the crossing
        debug_assert_ne!(rho[k], k + 1, "paired strands never cross in the zero band");
        let before = normality(&rho, k);
        if switches[m] {
            if !before {
                return Err(RulingError::NotNormal { crossing: m });
            }
            classes.push(CrossingClass::Switch);
        } else {
            rho = conjugate(&rho, k);
            classes.push(if before { CrossingClass::Departure } else { CrossingClass::Return });
        }
        involutions.push(rho.clone());
    }
    if rho != nested {
        return Err(RulingError::BadClosure);
    }
    let s = classes.iter().filter(|c| **c == CrossingClass::Switch).count();
    let r = classes.iter().filter(|c| **c == CrossingClass::Return).count();
    let d = classes.iter().filter(|c| **c == CrossingClass::Departure).count();
    Ok(NormalRuling { n, strands: 2 * n, involutions, classes, s, r, d })
}

/// Complete list of normal rulings of a rainbow front, ordered by their
/// canonical switch strings.
pub fn enumerate_rulings(front: &FrontDiagram) -> Result<Vec<NormalRuling>, RulingError> {
    front.require_rainbow()?;
    let n = front.n;
    let letters = &front.letters;
    let nested = nested_involution(n);

    let mut out = Vec::new();
    // depth-first over switch choices; the state is (crossing index, rho)
    let mut stack: Vec<(usize, Vec<usize>, Vec<bool>)> = vec![(0, nested.clone(), Vec::new())];
    while let Some((m, rho, choices)) = stack.pop() {
        if m == letters.len() {
            if rho == nested {
                out.push(ruling_from_switches(n, letters, &choices)?);
            }
            continue;
        }
        let k = n + letters[m] - 1;
        // non-switch branch
        let mut c1 = choices.clone();
        c1.push(false);
        stack.push((m + 1, conjugate(&rho, k), c1));
        // switch branch, when normal
        if normality(&rho, k) {
            let mut c2 = choices;
            c2.push(true);
            stack.push((m + 1, rho, c2));
        }
    }
    out.sort_by_key(|r| r.key());
    Ok(out)
}

/// One eye of the decomposition: born at left cusp `left_cusp`, capped at
/// right cusp `right_cusp`, with its two boundary slot paths per slice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Eye {
    pub left_cusp: usize,
    pub right_cusp: usize,
    pub upper_path: Vec<usize>,
    pub lower_path: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EyeDecomposition {
    pub eyes: Vec<Eye>,
    /// Per switch in x-order: the two eyes meeting there (1-based ids).
    pub switch_incidence: Vec<(usize, usize)>,
}

/// Cut the front at the switches and reglue: the ruling pairs trace out
/// exactly n circles bounding eyes. Eye i is born at the i-th innermost left
/// cusp; at a switch the two incident eye boundaries bounce, at a non-switch
/// they follow their strands.
pub fn eye_decomposition(n: usize, letters: &[usize], ruling: &NormalRuling) -> EyeDecomposition {
    // eye_at[slot] = eye id occupying that slot, per slice
    let mut eye_at: Vec<usize> = vec![0; 2 * n];
    for i in 1..=n {
        eye_at[n - i] = i; // upper slot of eye i
        eye_at[n + i - 1] = i; // lower slot of eye i
    }
    let mut uppers: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut lowers: Vec<Vec<usize>> = vec![Vec::new(); n];
    let record = |eye_at: &[usize], uppers: &mut Vec<Vec<usize>>, lowers: &mut Vec<Vec<usize>>| {
        let mut seen = vec![false; n + 1];
        for (slot, &e) in eye_at.iter().enumerate() {
            if !seen[e] {
                uppers[e - 1].push(slot);
                seen[e] = true;
            } else {
                lowers[e - 1].push(slot);
            }
        }
    };
    record(&eye_at, &mut uppers, &mut lowers);
    let mut incidence = Vec::new();
    for (m, &lvl) in letters.iter().enumerate() {
        let k = n + lvl - 1;
        if ruling.classes[m] == CrossingClass::Switch {
            incidence.push((eye_at[k], eye_at[k + 1]));
            // boundaries bounce: occupancy unchanged
        } else {
            eye_at.swap(k, k + 1);
        }
        record(&eye_at, &mut uppers, &mut lowers);
    }
    // right cusp pairing: the eye occupying the innermost surviving pair at
    // the end caps at right cusp 1, and so on outward
    let mut eyes = Vec::with_capacity(n);
    for i in 1..=n {
        let right_cusp = eye_at[n + i - 1];
        // eye_at is nested at closure, so slot n+i-1 and n-i hold one eye
        eyes.push(Eye {
            left_cusp: i,
            right_cusp,
            upper_path: uppers[i - 1].clone(),
            lower_path: lowers[i - 1].clone(),
        });
    }
    // report the cusp where each eye itself ends
    let mut by_eye = vec![0usize; n];
    for i in 1..=n {
        by_eye[eye_at[n + i - 1] - 1] = i;
    }
    for (e, eye) in eyes.iter_mut().enumerate() {
        eye.right_cusp = by_eye[e];
        eye.left_cusp = e + 1;
    }
    EyeDecomposition { eyes, switch_incidence: incidence }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RulingStats {
    pub key: String,
    pub s: usize,
    pub r: usize,
    pub d: usize,
    pub euler: i64,
    /// Genus of the filling surface; None when the closure is disconnected.
    pub genus: Option<i64>,
    pub eyes: EyeDecomposition,
}

/// Per-ruling counts: χ = n - s and, on connected closures, the genus
/// g = (s - n + 1)/2 of the filling surface.
pub fn classify_and_count(front: &FrontDiagram, ruling: &NormalRuling) -> Result<RulingStats, RulingError> {
    front.require_rainbow()?;
    let n = front.n;
    let s = ruling.s as i64;
    let euler = n as i64 - s;
    let connected = front.braid().is_connected_closure();
    let genus = if connected {
        let twice = s - n as i64 + 1;
        if twice.rem_euclid(2) != 0 {
            return Err(RulingError::OddDimension(twice));
        }
        Some(twice / 2)
    } else {
        None
    };
    Ok(RulingStats {
        key: ruling.key(),
        s: ruling.s,
        r: ruling.r,
        d: ruling.d,
        euler,
        genus,
        eyes: eye_decomposition(n, &front.letters, ruling),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub d: i64,
    pub top_ruling_key: String,
    pub s_plus_2r: usize,
    pub num_rulings: usize,
}

/// The all-switch ruling ρ_m, its uniqueness as the r = 0 ruling, the
/// constancy of s + 2r, and the moduli dimension d = s(ρ_m) - n + 1.
pub fn dimension_and_top_ruling(front: &FrontDiagram) -> Result<DimensionReport, RulingError> {
    front.require_rainbow()?;
    let braid = front.braid();
    if !braid.is_connected_closure() {
        return Err(RulingError::Disconnected(braid.closure_cycles().len()));
    }
    let rulings = enumerate_rulings(front)?;
    let zero_r: Vec<&NormalRuling> = rulings.iter().filter(|r| r.r == 0).collect();
    if zero_r.len() != 1 {
        return Err(RulingError::NoTopRuling);
    }
    let top = zero_r[0];
    if top.s != front.letters.len() {
        // the unique r = 0 ruling must be the all-switch one
        return Err(RulingError::NoTopRuling);
    }
    let index = top.s + 2 * top.r;
    if rulings.iter().any(|r| r.s + 2 * r.r != index) {
        return Err(RulingError::IndexNotConstant);
    }
    let d = top.s as i64 - front.n as i64 + 1;
    if d.rem_euclid(2) != 0 {
        return Err(RulingError::OddDimension(d));
    }
    Ok(DimensionReport {
        d,
        top_ruling_key: top.key(),
        s_plus_2r: index,
        num_rulings: rulings.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RulingCount {
    pub key: String,
    pub s: usize,
    pub r: usize,
    /// (q-1)^s q^r
    pub aug_stratum: u64,
    /// (q-1)^{s-n+1} q^r, connected closures only
    pub mb_stratum: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountPrediction {
    pub q: u8,
    pub per_ruling: Vec<RulingCount>,
    pub aug_total: u64,
    pub mb_total: Option<u64>,
}

/// Predicted stratum and total point counts over F_q from the ruling census.
pub fn predicted_counts(front: &FrontDiagram, q: u8) -> Result<CountPrediction, RulingError> {
    let rulings = enumerate_rulings(front)?;
    let connected = front.braid().is_connected_closure();
    let qm1 = q as u64 - 1;
    let mut per_ruling = Vec::with_capacity(rulings.len());
    let mut aug_total = 0u64;
    let mut mb_total: Option<u64> = if connected { Some(0) } else { None };
    for r in &rulings {
        let aug = qm1.pow(r.s as u32) * (q as u64).pow(r.r as u32);
        let mb = if connected {
            let e = r.s as i64 - front.n as i64 + 1;
            assert!(e >= 0, "s - n + 1 < 0 on a connected closure");
            Some(qm1.pow(e as u32) * (q as u64).pow(r.r as u32))
        } else {
            None
        };
        aug_total += aug;
        if let (Some(total), Some(v)) = (mb_total.as_mut(), mb) {
            *total += v;
        }
        per_ruling.push(RulingCount { key: r.key(), s: r.s, r: r.r, aug_stratum: aug, mb_stratum: mb });
    }
    Ok(CountPrediction { q, per_ruling, aug_total, mb_total })
}

/// Homotopy type of the dual boundary of a single cell G_m^a x A^b.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DualCell {
    Empty,
    Contractible,
    Sphere(u32),
}

pub fn cell_dual_boundary(a: u64, b: u64) -> DualCell {
    if b > 0 {
        DualCell::Contractible
    } else if a > 0 {
        DualCell::Sphere(a as u32 - 1)
    } else {
        DualCell::Empty
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumCell {
    pub ruling_key: String,
    pub dim: i64,
    pub torus_rank: i64,
    pub affine_rank: i64,
    pub cell: DualCell,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualBoundaryReport {
    pub d: i64,
    /// "S^{d-1}" for d >= 1; the moduli space is a point when d = 0 and the
    /// dual boundary is undefined there.
    pub homotopy_type: DualCell,
    pub defined: bool,
    /// Strata by increasing dimension: removing them in this order keeps the
    /// union of the removed part closed at every step.
    pub removal_order: Vec<StratumCell>,
}

/// The dual-boundary homotopy type report: S^{d-1} with d the dimension of
/// the top cell, plus the per-cell calculus and the removal order witnessing
/// the inductive computation.
pub fn dual_boundary_type(front: &FrontDiagram) -> Result<DualBoundaryReport, RulingError> {
    let dim_report = dimension_and_top_ruling(front)?;
    let rulings = enumerate_rulings(front)?;
    let n = front.n as i64;
    let mut cells: Vec<StratumCell> = rulings
        .iter()
        .map(|r| {
            let a = r.s as i64 - n + 1;
            let b = r.r as i64;
            StratumCell {
                ruling_key: r.key(),
                dim: a + b,
                torus_rank: a,
                affine_rank: b,
                cell: cell_dual_boundary(a as u64, b as u64),
            }
        })
        .collect();
    cells.sort_by(|x, y| x.dim.cmp(&y.dim).then(x.ruling_key.cmp(&y.ruling_key)));
    let d = dim_report.d;
    let (homotopy_type, defined) = if d >= 1 {
        (DualCell::Sphere(d as u32 - 1), true)
    } else {
        (DualCell::Empty, false)
    };
    Ok(DualBoundaryReport { d, homotopy_type, defined, removal_order: cells })
}
