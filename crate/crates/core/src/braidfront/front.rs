//! Front diagrams of the two closures of a positive braid.
//!
//! Rainbow closure: the braid sits in a band of Maslov potential 0, its n
//! strands are closed off by n nested arcs of potential 1 above it, with n
//! left and n right cusps. Cylindrical closure: the cusp-free diagram of
//! β Δ² drawn on a cylinder, zero Maslov potential.
//!
//! All x-coordinates are abstract integer slots: singularities sit at
//! x = 0, 1, 2, ... in diagram order and "generic x" means a slice index
//! between two consecutive singular slots.

use super::braid::BraidWord;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrontError {
    #[error("single base-point mode requires a connected closure ({components} link components found)")]
    DisconnectedSingleMode { components: usize },
    #[error("operation requires a rainbow front, got a cylindrical one")]
    NotRainbow,
    #[error("operation requires a cylindrical front, got a rainbow one")]
    NotCylindrical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FrontKind {
    Rainbow,
    Cylindrical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BasepointMode {
    AllCusps,
    Single,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CuspSide {
    Left,
    Right,
}

/// A crossing of the front. `level` is the braid generator index; `slots`
/// are the two adjacent global strand slots it switches (top slot first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub x: usize,
    pub level: usize,
    pub slots: (usize, usize),
}

/// A cusp record. `index` counts from the innermost cusp (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cusp {
    pub side: CuspSide,
    pub index: usize,
    pub x: usize,
    pub slots: (usize, usize),
}

/// A maximal arc of the front between singularities: a horizontal run of a
/// strand slot over the slice interval `[x_from, x_to]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrontArc {
    pub id: String,
    pub slot: usize,
    pub x_from: usize,
    pub x_to: usize,
    pub maslov: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Basepoint {
    pub index: usize,
    pub at_cusp: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrontDiagram {
    pub kind: FrontKind,
    pub n: usize,
    pub letters: Vec<usize>,
    pub crossings: Vec<Crossing>,
    pub cusps: Vec<Cusp>,
    pub maslov: BTreeMap<String, i64>,
    pub basepoints: Vec<Basepoint>,
    #[serde(skip)]
    pub arcs: Vec<FrontArc>,
    /// Generic slice ids; slice j sits between singularities j-1 and j.
    pub xslices: Vec<usize>,
    #[serde(skip)]
    pub mode: Option<BasepointMode>,
}

impl FrontDiagram {
    pub fn num_singularities(&self) -> usize {
        self.crossings.len() + self.cusps.len()
    }

    /// Global slot of upper strand i (1-based from the innermost): the
    /// innermost upper strand sits at slot n, the outermost at slot 1.
    pub fn upper_slot(&self, i: usize) -> usize {
        self.n + 1 - i
    }

    /// Global slot of braid level v inside the band.
    pub fn braid_slot(&self, v: usize) -> usize {
        self.n + v
    }

    pub fn require_rainbow(&self) -> Result<(), FrontError> {
        if self.kind == FrontKind::Rainbow {
            Ok(())
        } else {
            Err(FrontError::NotRainbow)
        }
    }

    pub fn braid(&self) -> BraidWord {
        BraidWord { n: self.n, letters: self.letters.clone() }
    }
}

fn push_arc(arcs: &mut Vec<FrontArc>, maslov: &mut BTreeMap<String, i64>, id: String, slot: usize, x_from: usize, x_to: usize, mu: i64) {
    maslov.insert(id.clone(), mu);
    arcs.push(FrontArc { id, slot, x_from, x_to, maslov: mu });
}

/// Build the rainbow closure front of a positive braid.
///
/// Singularity order along x: the n left cusps (outermost first), the
/// |letters| crossings, the n right cusps (innermost first). Base points sit
/// at every right cusp (`AllCusps`) or at the outermost right cusp only
/// (`Single`, connected closures only).
pub fn rainbow_closure(b: &BraidWord, mode: BasepointMode) -> Result<FrontDiagram, FrontError> {
    let n = b.n;
    let ell = b.letters.len();
    if mode == BasepointMode::Single && !b.is_connected_closure() {
        return Err(FrontError::DisconnectedSingleMode { components: b.closure_cycles().len() });
    }

    let mut cusps = Vec::new();
    for j in 0..n {
        // left cusp with index n-j (outermost = n) at x = j; it joins upper
        // strand i and braid level i, recorded in full-band slots
        let index = n - j;
        cusps.push(Cusp { side: CuspSide::Left, index, x: j, slots: (n + 1 - index, n + index) });
    }
    let mut crossings = Vec::new();
    for (m, &k) in b.letters.iter().enumerate() {
        crossings.push(Crossing { x: n + m, level: k, slots: (n + k, n + k + 1) });
    }
    for i in 1..=n {
        // right cusp i (innermost first) at x = n + ell + i - 1; at that
        // moment the surviving slots renumber, but we record the global slot
        // pair of the merging strands in the full 2n-strand band.
        cusps.push(Cusp {
            side: CuspSide::Right,
            index: i,
            x: n + ell + i - 1,
            slots: (n + 1 - i, n + i),
        });
    }

    let mut arcs = Vec::new();
    let mut maslov = BTreeMap::new();
    // upper strands: one arc each, Maslov potential 1
    for i in 1..=n {
        let slot = n + 1 - i;
        push_arc(&mut arcs, &mut maslov, format!("u{i}"), slot, n - i, n + ell + i - 1, 1);
    }
    // braid band arcs: slot n+v split at the crossings touching level v
    for v in 1..=n {
        let slot = n + v;
        let x_start = n - v; // born at left cusp v
        let x_end = n + ell + v - 1; // dies at right cusp v (as a slot)
        let mut cuts: Vec<usize> = b
            .letters
            .iter()
            .enumerate()
            .filter(|(_, &k)| k == v || k + 1 == v)
            .map(|(m, _)| n + m)
            .collect();
        cuts.push(x_end);
        let mut seg = 0usize;
        let mut from = x_start;
        for cut in cuts {
            push_arc(&mut arcs, &mut maslov, format!("b{v}.{seg}"), slot, from, cut, 0);
            from = cut;
            seg += 1;
        }
    }

    let basepoints = match mode {
        BasepointMode::AllCusps => (1..=n).map(|i| Basepoint { index: i, at_cusp: i }).collect(),
        BasepointMode::Single => vec![Basepoint { index: 1, at_cusp: n }],
    };

    let total = 2 * n + ell;
    Ok(FrontDiagram {
        kind: FrontKind::Rainbow,
        n,
        letters: b.letters.clone(),
        crossings,
        cusps,
        maslov,
        basepoints,
        arcs,
        xslices: (0..=total).collect(),
        mode: Some(mode),
    })
}

/// Build the cylindrical closure front: the cusp-free diagram of β Δ² on the
/// cylinder, with zero Maslov potential and no base points.
pub fn cylindrical_closure(b: &BraidWord) -> FrontDiagram {
    let full = b.with_full_twist();
    let n = full.n;
    let ell = full.letters.len();
    let crossings: Vec<Crossing> = full
        .letters
        .iter()
        .enumerate()
        .map(|(m, &k)| Crossing { x: m, level: k, slots: (k, k + 1) })
        .collect();

    let mut arcs = Vec::new();
    let mut maslov = BTreeMap::new();
    for v in 1..=n {
        let cuts: Vec<usize> = full
            .letters
            .iter()
            .enumerate()
            .filter(|(_, &k)| k == v || k + 1 == v)
            .map(|(m, _)| m)
            .collect();
        if cuts.is_empty() {
            push_arc(&mut arcs, &mut maslov, format!("b{v}.0"), v, 0, ell, 0);
        } else {
            // arcs wrap around the cylinder: the run after the last cut joins
            // the run before the first cut
            for (s, w) in cuts.windows(2).enumerate() {
                push_arc(&mut arcs, &mut maslov, format!("b{v}.{}", s + 1), v, w[0], w[1], 0);
            }
            let wrap_id = format!("b{v}.0");
            push_arc(&mut arcs, &mut maslov, wrap_id, v, *cuts.last().unwrap(), cuts[0] + ell, 0);
        }
    }

    FrontDiagram {
        kind: FrontKind::Cylindrical,
        n,
        letters: full.letters,
        crossings,
        cusps: Vec::new(),
        maslov,
        basepoints: Vec::new(),
        arcs,
        xslices: (0..ell.max(1)).collect(),
        mode: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braidfront::parse_braid;

    #[test]
    fn trefoil_rainbow_counts() {
        let b = parse_braid("2: 1^3").unwrap();
        let f = rainbow_closure(&b, BasepointMode::AllCusps).unwrap();
        assert_eq!(f.crossings.len(), 3);
        assert_eq!(f.cusps.iter().filter(|c| c.side == CuspSide::Left).count(), 2);
        assert_eq!(f.cusps.iter().filter(|c| c.side == CuspSide::Right).count(), 2);
        // braid arcs carry potential 0, upper strands 1
        assert_eq!(f.maslov["u1"], 1);
        assert_eq!(f.maslov["b1.0"], 0);
        assert_eq!(f.basepoints.len(), 2);
        assert_eq!(f.xslices.len(), f.num_singularities() + 1);
        // singular x-coordinates are pairwise distinct and increasing
        let mut xs: Vec<usize> = f.crossings.iter().map(|c| c.x).chain(f.cusps.iter().map(|c| c.x)).collect();
        xs.sort_unstable();
        xs.dedup();
        assert_eq!(xs.len(), f.num_singularities());
    }

    #[test]
    fn empty_braid_closure_is_unlink_front() {
        let b = parse_braid("2:").unwrap();
        let f = rainbow_closure(&b, BasepointMode::AllCusps).unwrap();
        assert_eq!(f.crossings.len(), 0);
        assert_eq!(f.cusps.len(), 4);
        assert!(rainbow_closure(&b, BasepointMode::Single).is_err());
    }

    #[test]
    fn single_mode_allowed_on_unknot() {
        let b = parse_braid("2: 1").unwrap();
        let f = rainbow_closure(&b, BasepointMode::Single).unwrap();
        assert_eq!(f.basepoints, vec![Basepoint { index: 1, at_cusp: 2 }]);
    }

    #[test]
    fn front_json_has_stable_field_names() {
        let b = parse_braid("2: 1^3").unwrap();
        let f = rainbow_closure(&b, BasepointMode::AllCusps).unwrap();
        let v: serde_json::Value = serde_json::to_value(&f).unwrap();
        for key in ["kind", "n", "letters", "crossings", "cusps", "maslov", "basepoints", "xslices"] {
            assert!(v.get(key).is_some(), "missing field {key}");
        }
        assert_eq!(v["kind"], "rainbow");
        assert_eq!(v["crossings"].as_array().unwrap().len(), 3);
        assert_eq!(v["maslov"]["u1"], 1);
    }

    #[test]
    fn cylindrical_word_lengths() {
        let b = parse_braid("2: 1^3").unwrap();
        let f = cylindrical_closure(&b);
        assert_eq!(f.letters, vec![1; 5]);
        assert!(f.cusps.is_empty());
        assert!(f.maslov.values().all(|&m| m == 0));

        let e2 = parse_braid("2:").unwrap();
        assert_eq!(cylindrical_closure(&e2).letters, vec![1, 1]);
        let e3 = parse_braid("3:").unwrap();
        assert_eq!(cylindrical_closure(&e3).letters, vec![1, 2, 1, 1, 2, 1]);
        // |letters| + n(n-1)
        let b3 = parse_braid("3: 1 2").unwrap();
        assert_eq!(cylindrical_closure(&b3).letters.len(), 2 + 3 * 2);
    }
}
