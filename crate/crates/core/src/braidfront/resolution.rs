//! Ng's resolution of a rainbow front into a Lagrangian diagram, with the
//! Reeb-chord inventory, quadrant sign conventions, component labels and the
//! r×c map feeding the torus action.
//!
//! Conventions fixed here and used everywhere downstream:
//! - each link component is oriented so that its topmost arc is left-moving;
//!   equivalently upper strands run right-to-left, braid strands left-to-right;
//! - at a resolved crossing the strand descending to the right is the over
//!   strand;
//! - Reeb signs are + on the left/right quadrants and - on the top/bottom
//!   quadrants; orientation signs are +1 on the top/left quadrants and
//!   (-1)^{|c|-1} on the bottom/right quadrants.

use super::braid::BraidWord;
use super::front::{BasepointMode, FrontDiagram, FrontError};
use crate::algebra::ncword::Sym;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Quadrant {
    North,
    South,
    East,
    West,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChordKind {
    /// The m-th braid crossing (0-based in word order).
    Crossing(usize),
    /// The loop chord of right cusp i (1-based, innermost first).
    CuspLoop(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chord {
    pub sym: Sym,
    pub kind: ChordKind,
    pub grading: i64,
}

impl Chord {
    pub fn reeb_sign(&self, quad: Quadrant) -> i64 {
        match quad {
            Quadrant::East | Quadrant::West => 1,
            Quadrant::North | Quadrant::South => -1,
        }
    }

    pub fn orientation_sign(&self, quad: Quadrant) -> i64 {
        match quad {
            Quadrant::North | Quadrant::West => 1,
            Quadrant::South | Quadrant::East => {
                if (self.grading - 1).rem_euclid(2) == 0 {
                    1
                } else {
                    -1
                }
            }
        }
    }
}

/// Components of the diagram minus its base points, with the r×c maps.
/// Component i contains the i-th innermost left cusp.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentMap {
    pub b: usize,
    /// r(t_i), c(t_i) per base point (1-based component ids).
    pub r_t: Vec<usize>,
    pub c_t: Vec<usize>,
    /// r(a_m), c(a_m) per crossing in word order.
    pub r_a: Vec<usize>,
    pub c_a: Vec<usize>,
    /// One edge (r(t_i), c(t_i)) per base point; the graph on components.
    pub edges: Vec<(usize, usize)>,
    pub connected: bool,
    pub link_components: usize,
}

impl ComponentMap {
    pub fn r(&self, s: Sym) -> Option<usize> {
        match s {
            Sym::T(i) => self.r_t.get(i as usize - 1).copied(),
            Sym::TInv(i) => self.c_t.get(i as usize - 1).copied(),
            Sym::A(j) => self.r_a.get(j as usize - 1).copied(),
            Sym::C(_) => None,
        }
    }

    pub fn c(&self, s: Sym) -> Option<usize> {
        match s {
            Sym::T(i) => self.c_t.get(i as usize - 1).copied(),
            Sym::TInv(i) => self.r_t.get(i as usize - 1).copied(),
            Sym::A(j) => self.c_a.get(j as usize - 1).copied(),
            Sym::C(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub link_components: usize,
    pub connected: bool,
    pub graph_edges: Vec<(usize, usize)>,
    pub graph_connected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LagrangianDiagram {
    pub front: FrontDiagram,
    pub mode: BasepointMode,
    pub chords: Vec<Chord>,
    pub components: ComponentMap,
}

impl LagrangianDiagram {
    pub fn n(&self) -> usize {
        self.front.n
    }

    pub fn letters(&self) -> &[usize] {
        &self.front.letters
    }

    pub fn num_basepoints(&self) -> usize {
        self.front.basepoints.len()
    }

    /// The base-point index sitting on cusp i's loop, if any.
    pub fn basepoint_at_cusp(&self, cusp: usize) -> Option<usize> {
        self.front.basepoints.iter().find(|bp| bp.at_cusp == cusp).map(|bp| bp.index)
    }

    pub fn chord(&self, sym: Sym) -> Option<&Chord> {
        self.chords.iter().find(|c| c.sym == sym)
    }
}

/// Component of the braid strand entering the band at left level `l`.
fn comp_of_start_level(mode: BasepointMode, l: usize) -> usize {
    match mode {
        BasepointMode::AllCusps => l,
        BasepointMode::Single => 1,
    }
}

fn component_map(b: &BraidWord, mode: BasepointMode) -> ComponentMap {
    let n = b.n;
    let perm = b.permutation();
    let cycles = b.closure_cycles();

    // occupant[pos] = left-end level of the strand currently at pos
    let mut occupant: Vec<usize> = (0..=n).collect();
    let mut r_a = Vec::with_capacity(b.letters.len());
    let mut c_a = Vec::with_capacity(b.letters.len());
    for &k in &b.letters {
        // over strand enters at the upper slot and descends
        r_a.push(comp_of_start_level(mode, occupant[k]));
        c_a.push(comp_of_start_level(mode, occupant[k + 1]));
        occupant.swap(k, k + 1);
    }

    let (num_components, r_t, c_t): (usize, Vec<usize>, Vec<usize>) = match mode {
        BasepointMode::AllCusps => {
            // the arc leaving base point *_i runs through left cusp i, so
            // c(t_i) = i; the arc arriving at *_i is the braid strand exiting
            // at right level i, which started at level perm^{-1}(i).
            let mut inv = vec![0usize; n + 1];
            for s in 1..=n {
                inv[perm[s]] = s;
            }
            (n, (1..=n).map(|i| inv[i]).collect(), (1..=n).collect())
        }
        BasepointMode::Single => (1, vec![1], vec![1]),
    };

    let edges: Vec<(usize, usize)> = r_t.iter().copied().zip(c_t.iter().copied()).collect();
    ComponentMap {
        b: num_components,
        r_t,
        c_t,
        r_a,
        c_a,
        edges,
        connected: cycles.len() == 1,
        link_components: cycles.len(),
    }
}

/// Resolve a rainbow front. Every front crossing becomes a Reeb chord a_m and
/// every right cusp a loop chord c_i; base points sit on the marked loops.
pub fn ng_resolution(front: &FrontDiagram) -> Result<LagrangianDiagram, FrontError> {
    front.require_rainbow()?;
    let mode = front.mode.unwrap_or(BasepointMode::AllCusps);
    let b = front.braid();

    let mut chords = Vec::new();
    for (m, _) in front.crossings.iter().enumerate() {
        // crossings of the rainbow closure live in the zero-potential band
        chords.push(Chord { sym: Sym::A(m as u16 + 1), kind: ChordKind::Crossing(m), grading: 0 });
    }
    for i in 1..=front.n {
        chords.push(Chord { sym: Sym::C(i as u8), kind: ChordKind::CuspLoop(i), grading: 1 });
    }

    let components = component_map(&b, mode);
    Ok(LagrangianDiagram { front: front.clone(), mode, chords, components })
}

pub fn components_and_connectivity(lag: &LagrangianDiagram) -> (ComponentMap, ConnectivityReport) {
    let cm = lag.components.clone();
    // the graph on components is connected exactly when the link is
    let graph_connected = {
        let mut reach = vec![false; cm.b + 1];
        if cm.b > 0 {
            reach[1] = true;
            loop {
                let mut changed = false;
                for &(a, b) in &cm.edges {
                    if reach[a] != reach[b] {
                        reach[a] = true;
                        reach[b] = true;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
        }
        reach.iter().skip(1).all(|&r| r)
    };
    let report = ConnectivityReport {
        link_components: cm.link_components,
        connected: cm.connected,
        graph_edges: cm.edges.clone(),
        graph_connected,
    };
    (cm, report)
}
