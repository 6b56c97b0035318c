//! Quivers with relations for both closures, the explicit quiver
//! representation Φ(ε) attached to an augmentation, validity and
//! equivariance checks, and the independent 2-strand line-configuration
//! counting oracle.
//!
//! Rainbow regions are indexed by "gaps": gap 0 is the center region U
//! between the innermost upper strand and the braid, gap g (0 < g < n) the
//! band between braid levels g and g+1 split into cells by the letter-g
//! crossings, gap n the unbounded lower region L-. Above U sit the regions
//! U_1..U_{n-1} between consecutive upper strands, then L+. The rank of a
//! region counts the strands strictly below it with sign: +1 per potential-0
//! strand, -1 per potential-1 strand.

use crate::algebra::fq::{Fq, FqError};
use crate::augvar::{enumerate_augmentations, torus_act, torus_elements, AugError, Augmentation};
use crate::barannikov::morse_frames;
use crate::braidfront::{BasepointMode, BraidWord, FrontDiagram, FrontError, FrontKind};
use crate::dga::Dga;
use crate::matfq::{self, Mat};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SheafError {
    #[error(transparent)]
    Front(#[from] FrontError),
    #[error(transparent)]
    Field(#[from] FqError),
    #[error(transparent)]
    Aug(#[from] AugError),
    #[error("frame solve is singular at arc {0}; not a valid augmentation")]
    SingularSolve(String),
    #[error("oracle only supports 2-strand braids, got n={0}")]
    OracleNeedsTwoStrands(usize),
    #[error("oracle requires a connected closure")]
    OracleDisconnected,
    #[error("rep violation: {0}")]
    Violation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcStyle {
    /// Solid arc with the given Maslov potential (0: inclusion, 1: surjection).
    Solid(i64),
    /// Dashed arc; representations send it to an isomorphism.
    Dashed,
}

impl serde::Serialize for ArcStyle {
    /// Stable schema: solid arcs carry their Maslov potential, dashed null.
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            ArcStyle::Solid(mu) => ser.serialize_some(mu),
            ArcStyle::Dashed => ser.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QVertex {
    pub id: String,
    pub d: i64,
    #[serde(skip)]
    pub slice: usize,
    /// Components of the strands below the region (top to bottom), at the
    /// slice just right of its leftmost point.
    #[serde(skip)]
    pub below: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QArc {
    pub id: String,
    pub src: usize,
    pub dst: usize,
    #[serde(rename = "maslov")]
    pub style: ArcStyle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    Crossing,
    Cusp,
}

/// γ_L(v) = γ_R(v): two arc paths with equal composites.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QRelation {
    pub at: String,
    pub kind: RelationKind,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// For crossing relations, the four incident regions (s, w, e, n).
    pub square: Option<(usize, usize, usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Quiver {
    pub kind: FrontKind,
    pub n: usize,
    pub vertices: Vec<QVertex>,
    pub arcs: Vec<QArc>,
    pub relations: Vec<QRelation>,
}

impl Quiver {
    pub fn vertex(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }
}

/// Occupancy of the braid band: occ[t][v] = left-end level of the strand at
/// level v on slice t.
fn occupancies(n: usize, letters: &[usize]) -> Vec<Vec<usize>> {
    let mut occ: Vec<usize> = (0..=n).collect();
    let mut out = vec![occ.clone()];
    for &k in letters {
        occ.swap(k, k + 1);
        out.push(occ.clone());
    }
    out
}

struct RainbowIndex {
    n: usize,
    letters: Vec<usize>,
    /// cuts[g] = indices of letter-g crossings, g in 1..=n-1
    cuts: Vec<Vec<usize>>,
    l_minus: usize,
    l_plus: usize,
    u: usize,
    /// u_i[i-1] = vertex id of U_i for i in 1..n
    u_i: Vec<usize>,
    /// gap_cells[g-1][seg] = vertex index for gap g cell seg
    gap_cells: Vec<Vec<usize>>,
}

impl RainbowIndex {
    /// The gap-g cell over slice m (gap 0 = U, gap n = L-).
    fn cell_at(&self, g: usize, m: usize) -> usize {
        if g == 0 {
            return self.u;
        }
        if g == self.n {
            return self.l_minus;
        }
        let seg = self.cuts[g].iter().filter(|&&c| c < m).count();
        self.gap_cells[g - 1][seg]
    }
}

fn build_rainbow(front: &FrontDiagram) -> (Quiver, RainbowIndex) {
    let n = front.n;
    let letters = front.letters.clone();
    let ell = letters.len();
    let occ = occupancies(n, &letters);
    let mut vertices: Vec<QVertex> = Vec::new();
    let mut push_vertex = |id: String, d: i64, slice: usize, below: Vec<usize>| -> usize {
        vertices.push(QVertex { id, d, slice, below });
        vertices.len() - 1
    };

    let l_minus = push_vertex("L-".into(), 0, 0, Vec::new());
    let l_plus = push_vertex("L+".into(), 0, 0, Vec::new());
    let u = push_vertex("U".into(), n as i64, 0, (1..=n).collect());
    let mut u_i = Vec::new();
    for i in 1..n {
        u_i.push(push_vertex(format!("U{i}"), (n - i) as i64, 0, ((i + 1)..=n).collect()));
    }
    let mut cuts = vec![Vec::new(); n + 1];
    for (m, &k) in letters.iter().enumerate() {
        cuts[k].push(m);
    }
    let mut gap_cells = Vec::new();
    for g in 1..n {
        let mut cells = Vec::new();
        for seg in 0..=cuts[g].len() {
            let slice = if seg == 0 { 0 } else { cuts[g][seg - 1] + 1 };
            let below: Vec<usize> = ((g + 1)..=n).map(|v| occ[slice][v]).collect();
            cells.push(push_vertex(format!("R{g}.{seg}"), (n - g) as i64, slice, below));
        }
        gap_cells.push(cells);
    }

    let idx = RainbowIndex { n, letters: letters.clone(), cuts, l_minus, l_plus, u, u_i, gap_cells };

    let mut arcs: Vec<QArc> = Vec::new();
    let upper_dst = |i: usize| if i == n { idx.l_plus } else { idx.u_i[i - 1] };
    let upper_src = |i: usize| if i == 1 { idx.u } else { idx.u_i[i - 2] };
    // upper strand arcs U_{i-1} -> U_i
    let mut upper_arc = vec![0usize; n + 1];
    for i in 1..=n {
        arcs.push(QArc { id: format!("u{i}"), src: upper_src(i), dst: upper_dst(i), style: ArcStyle::Solid(1) });
        upper_arc[i] = arcs.len() - 1;
    }
    // braid band arcs: level v segments between letter v-1 / v crossings
    // seg_arc[v][j] = arc index of the j-th segment of level v
    let mut seg_arc: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for v in 1..=n {
        let mut boundaries: Vec<usize> = letters
            .iter()
            .enumerate()
            .filter(|(_, &k)| k == v || k + 1 == v)
            .map(|(m, _)| m)
            .collect();
        boundaries.push(ell);
        let mut start = 0usize;
        for (j, &end) in boundaries.iter().enumerate() {
            let rep = start; // representative slice within [start, end]
            let src = idx.cell_at(v, rep);
            let dst = idx.cell_at(v - 1, rep);
            arcs.push(QArc { id: format!("b{v}.{j}"), src, dst, style: ArcStyle::Solid(0) });
            seg_arc[v].push(arcs.len() - 1);
            start = end + 1;
        }
    }
    // dashed arcs along the cusp line: left and right fans plus the two
    // unbounded pieces
    let mut dashed_left = vec![0usize; n + 1];
    let mut dashed_right = vec![0usize; n + 1];
    for i in 1..=n {
        let (src_l, dst) = if i == n {
            (idx.l_minus, idx.l_plus)
        } else {
            (idx.cell_at(i, 0), idx.u_i[i - 1])
        };
        arcs.push(QArc { id: format!("dl{i}"), src: src_l, dst, style: ArcStyle::Dashed });
        dashed_left[i] = arcs.len() - 1;
        let (src_r, dst_r) = if i == n {
            (idx.l_minus, idx.l_plus)
        } else {
            (idx.cell_at(i, ell + 1), idx.u_i[i - 1])
        };
        arcs.push(QArc { id: format!("dr{i}"), src: src_r, dst: dst_r, style: ArcStyle::Dashed });
        dashed_right[i] = arcs.len() - 1;
    }

    // relations: one per crossing and one per cusp
    let mut relations = Vec::new();
    let seg_of = |v: usize, m: usize, after: bool| -> usize {
        // segment of level v covering slice m (after: slice m+1)
        let slice = if after { m + 1 } else { m };
        let count = letters[..slice.min(ell)]
            .iter()
            .enumerate()
            .filter(|(mm, &k)| (k == v || k + 1 == v) && *mm < slice)
            .count();
        seg_arc[v][count]
    };
    for (m, &k) in letters.iter().enumerate() {
        // S -> W -> N vs S -> E -> N around the m-th crossing
        let s_w = seg_of(k + 1, m, false);
        let w_n = seg_of(k, m, false);
        let s_e = seg_of(k + 1, m, true);
        let e_n = seg_of(k, m, true);
        let sq = (
            idx.cell_at(k + 1, m),
            idx.cell_at(k, m),
            idx.cell_at(k, m + 1),
            idx.cell_at(k - 1, m),
        );
        relations.push(QRelation {
            at: format!("a{}", m + 1),
            kind: RelationKind::Crossing,
            left: vec![s_w, w_n],
            right: vec![s_e, e_n],
            square: Some(sq),
        });
    }
    for i in 1..=n {
        // left cusp i: the dashed arc equals the path through the braid side
        let mut right = vec![seg_arc[i][0]];
        if i >= 2 {
            right.push(dashed_left[i - 1]);
        }
        right.push(upper_arc[i]);
        relations.push(QRelation {
            at: format!("left_cusp{i}"),
            kind: RelationKind::Cusp,
            left: vec![dashed_left[i]],
            right,
            square: None,
        });
        let mut right_r = vec![*seg_arc[i].last().unwrap()];
        if i >= 2 {
            right_r.push(dashed_right[i - 1]);
        }
        right_r.push(upper_arc[i]);
        relations.push(QRelation {
            at: format!("right_cusp{i}"),
            kind: RelationKind::Cusp,
            left: vec![dashed_right[i]],
            right: right_r,
            square: None,
        });
    }

    (
        Quiver { kind: FrontKind::Rainbow, n, vertices, arcs, relations },
        idx,
    )
}

fn build_cylindrical(front: &FrontDiagram) -> Quiver {
    let n = front.n;
    let letters = &front.letters;
    let mut vertices = Vec::new();
    vertices.push(QVertex { id: "R_inf".into(), d: 0, slice: 0, below: Vec::new() });
    vertices.push(QVertex { id: "U".into(), d: n as i64, slice: 0, below: Vec::new() });
    let (r_inf, u) = (0usize, 1usize);
    let mut cuts: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (m, &k) in letters.iter().enumerate() {
        cuts[k].push(m);
    }
    let mut gap_cells: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for g in 1..n {
        for seg in 0..cuts[g].len().max(1) {
            vertices.push(QVertex { id: format!("R{g}.{seg}"), d: (n - g) as i64, slice: 0, below: Vec::new() });
            gap_cells[g].push(vertices.len() - 1);
        }
    }
    // cyclic slice convention: slice m sits just before crossing m; the gap-g
    // cell at slice m starts at the latest letter-g crossing below m, wrapping
    // to the last one when none exists
    let cell_at = |g: usize, m: usize| -> usize {
        if g == 0 {
            return u;
        }
        if g == n {
            return r_inf;
        }
        if cuts[g].is_empty() {
            return gap_cells[g][0];
        }
        let seg = cuts[g].iter().rposition(|&c| c < m).unwrap_or(cuts[g].len() - 1);
        gap_cells[g][seg]
    };
    // one arc per strand segment of each level, split at the crossings
    // touching that level, cyclically; arc_at(v, m) is the segment of level v
    // alive on slice m
    let mut arcs = Vec::new();
    let mut seg_starts: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for v in 1..=n {
        let boundaries: Vec<usize> = letters
            .iter()
            .enumerate()
            .filter(|(_, &k)| k == v || k + 1 == v)
            .map(|(m, _)| m)
            .collect();
        if boundaries.is_empty() {
            let rep = 0;
            arcs.push(QArc { id: format!("b{v}.0"), src: cell_at(v, rep), dst: cell_at(v - 1, rep), style: ArcStyle::Solid(0) });
            seg_starts[v].push(usize::MAX); // single wrap-around segment
            continue;
        }
        for (j, &b) in boundaries.iter().enumerate() {
            // segment alive on slices (b, next boundary]
            let rep = b + 1;
            arcs.push(QArc { id: format!("b{v}.{j}"), src: cell_at(v, rep), dst: cell_at(v - 1, rep), style: ArcStyle::Solid(0) });
            seg_starts[v].push(b);
        }
    }
    let arc_index = |v: usize, seg: usize| -> usize {
        let mut idx = 0;
        for vv in 1..v {
            idx += seg_starts[vv].len();
        }
        idx + seg
    };
    let arc_at = |v: usize, m: usize| -> usize {
        let starts = &seg_starts[v];
        if starts.len() == 1 {
            return arc_index(v, 0);
        }
        let seg = starts.iter().rposition(|&c| c < m).unwrap_or(starts.len() - 1);
        arc_index(v, seg)
    };
    let mut relations = Vec::new();
    for (m, &k) in letters.iter().enumerate() {
        // S -> W -> N on slice m, S -> E -> N on slice m+1
        let sq = (cell_at(k + 1, m), cell_at(k, m), cell_at(k, m + 1), cell_at(k - 1, m));
        relations.push(QRelation {
            at: format!("a{}", m + 1),
            kind: RelationKind::Crossing,
            left: vec![arc_at(k + 1, m), arc_at(k, m)],
            right: vec![arc_at(k + 1, m + 1), arc_at(k, m + 1)],
            square: Some(sq),
        });
    }
    Quiver { kind: FrontKind::Cylindrical, n, vertices, arcs, relations }
}

/// Structural coherence of a quiver: arc endpoints in range, relation paths
/// composable with equal endpoints on both sides, and acyclicity.
pub fn validate_quiver_structure(quiver: &Quiver) -> Result<(), SheafError> {
    let nv = quiver.vertices.len();
    for arc in &quiver.arcs {
        if arc.src >= nv || arc.dst >= nv {
            return Err(SheafError::Violation(format!("arc {} out of range", arc.id)));
        }
    }
    let path_ends = |path: &[usize]| -> Result<(usize, usize), SheafError> {
        let first = &quiver.arcs[path[0]];
        let (start, mut cur) = (first.src, first.dst);
        for &a in &path[1..] {
            let arc = &quiver.arcs[a];
            if arc.src != cur {
                return Err(SheafError::Violation(format!("non-composable path at arc {}", arc.id)));
            }
            cur = arc.dst;
        }
        Ok((start, cur))
    };
    for rel in &quiver.relations {
        let l = path_ends(&rel.left)?;
        let r = path_ends(&rel.right)?;
        if l != r {
            return Err(SheafError::Violation(format!("relation at {} has mismatched endpoints", rel.at)));
        }
        if let Some((sv, w, e, nn)) = rel.square {
            if l != (sv, nn) {
                return Err(SheafError::Violation(format!("relation at {} disagrees with its square", rel.at)));
            }
            let _ = (w, e);
        }
    }
    // acyclicity by depth-first search over arcs
    let mut state = vec![0u8; nv];
    fn dfs(v: usize, quiver: &Quiver, state: &mut [u8]) -> bool {
        state[v] = 1;
        for arc in quiver.arcs.iter().filter(|a| a.src == v) {
            match state[arc.dst] {
                0 => {
                    if !dfs(arc.dst, quiver, state) {
                        return false;
                    }
                }
                1 => return false,
                _ => {}
            }
        }
        state[v] = 2;
        true
    }
    for v in 0..nv {
        if state[v] == 0 && !dfs(v, quiver, &mut state) {
            return Err(SheafError::Violation("quiver has a directed cycle".into()));
        }
    }
    Ok(())
}

/// Build the quiver with relations of either closure's front.
pub fn build_quiver(front: &FrontDiagram) -> Quiver {
    match front.kind {
        FrontKind::Rainbow => build_rainbow(front).0,
        FrontKind::Cylindrical => build_cylindrical(front),
    }
}

/// A representation: one matrix per arc, rows = rank of the target region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuiverRep {
    pub q: u8,
    pub dims: Vec<usize>,
    pub mats: Vec<Mat>,
}

fn compose(q: u8, a: &Mat, a_rows: usize, b: &Mat, b_rows: usize, b_cols: usize) -> Mat {
    // a: a_rows x b_rows, b: b_rows x b_cols
    let mut out = matfq::zeros(q, a_rows, b_cols);
    for i in 0..a_rows {
        for k in 0..b_rows {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..b_cols {
                out[i][j] = out[i][j].add(a[i][k].mul(b[k][j]));
            }
        }
    }
    out
}

impl QuiverRep {
    /// Composite matrix along a path of arcs (source to target order).
    pub fn path_matrix(&self, quiver: &Quiver, path: &[usize]) -> Mat {
        let first = &quiver.arcs[path[0]];
        let mut m = self.mats[path[0]].clone();
        let mut rows = self.dims[first.dst];
        let cols = self.dims[first.src];
        for &a in &path[1..] {
            let arc = &quiver.arcs[a];
            let next_rows = self.dims[arc.dst];
            m = compose(self.q, &self.mats[a], next_rows, &m, rows, cols);
            rows = next_rows;
        }
        m
    }
}

/// The span of a lower region: the frame columns e_{n+1-d}(x)..e_n(x) at its
/// defining slice, as an n x d matrix.
fn region_span(n: usize, frames: &[Mat], v: &QVertex, q: u8) -> Mat {
    let d = v.d as usize;
    let fr = &frames[v.slice];
    let mut m = matfq::zeros(q, n, d);
    for (jj, col) in ((n - d)..n).enumerate() {
        for i in 0..n {
            m[i][jj] = fr[i][col];
        }
    }
    m
}

/// The explicit representation Φ(ε) of an augmentation (rainbow closure,
/// all-cusps base points): lower regions are spanned by frame vectors, upper
/// strand arcs are the standard quotients (0, I), braid arcs are the change
/// of frame solving M_src = M_dst X, and dashed arcs are the induced
/// isomorphisms.
pub fn phi_of_augmentation(front: &FrontDiagram, eps: &Augmentation) -> Result<QuiverRep, SheafError> {
    front.require_rainbow()?;
    let (quiver, idx) = build_rainbow(front);
    let n = front.n;
    let q = eps.q;
    let frames = morse_frames(n, &idx.letters, eps);

    let dims: Vec<usize> = quiver.vertices.iter().map(|v| v.d as usize).collect();
    let is_upperish = |vi: usize| vi == idx.l_plus || idx.u_i.contains(&vi);
    let spans: Vec<Option<Mat>> = quiver
        .vertices
        .iter()
        .enumerate()
        .map(|(vi, v)| if is_upperish(vi) { None } else { Some(region_span(n, &frames, v, q)) })
        .collect();

    let mut mats = Vec::with_capacity(quiver.arcs.len());
    for arc in &quiver.arcs {
        let m = match arc.style {
            ArcStyle::Solid(1) => {
                // U_{i-1} -> U_i is (0, I)
                let rows = dims[arc.dst];
                let cols = dims[arc.src];
                let mut m = matfq::zeros(q, rows, cols);
                for r in 0..rows {
                    m[r][cols - rows + r] = Fq::one(q);
                }
                m
            }
            ArcStyle::Solid(_) => {
                let src_span = spans[arc.src].as_ref().expect("solid 0-arcs join lower regions");
                let dst_span = spans[arc.dst].as_ref().expect("solid 0-arcs join lower regions");
                if dims[arc.dst] == 0 || dims[arc.src] == 0 {
                    matfq::zeros(q, dims[arc.dst], dims[arc.src])
                } else {
                    matfq::solve(dst_span, src_span)
                        .ok_or_else(|| SheafError::SingularSolve(arc.id.clone()))?
                }
            }
            ArcStyle::Dashed => {
                if dims[arc.src] == 0 {
                    matfq::zeros(q, dims[arc.dst], 0)
                } else {
                    // quotient to U_i: keep the last n-i coordinates
                    let rows = dims[arc.dst];
                    let span = spans[arc.src].as_ref().expect("dashed arcs start at lower regions");
                    let mut m = matfq::zeros(q, rows, dims[arc.src]);
                    for r in 0..rows {
                        for c in 0..dims[arc.src] {
                            m[r][c] = span[n - rows + r][c];
                        }
                    }
                    m
                }
            }
        };
        mats.push(m);
    }
    Ok(QuiverRep { q, dims, mats })
}

/// Rank conditions, dashed isomorphisms, relation equalities and crossing
/// square exactness. Returns the first violation found.
pub fn validate_rep(quiver: &Quiver, rep: &QuiverRep) -> Result<(), SheafError> {
    for (vi, v) in quiver.vertices.iter().enumerate() {
        if rep.dims[vi] != v.d as usize {
            return Err(SheafError::Violation(format!(
                "vertex {} has rank {} but the rep carries dimension {}",
                v.id, v.d, rep.dims[vi]
            )));
        }
    }
    for (ai, arc) in quiver.arcs.iter().enumerate() {
        let m = &rep.mats[ai];
        let (rows, cols) = (rep.dims[arc.dst], rep.dims[arc.src]);
        if m.len() != rows || (rows > 0 && m[0].len() != cols) {
            return Err(SheafError::Violation(format!("arc {} has wrong shape", arc.id)));
        }
        let rk = matfq::rank(m);
        match arc.style {
            ArcStyle::Solid(0) => {
                if rk != cols {
                    return Err(SheafError::Violation(format!("arc {} is not injective", arc.id)));
                }
            }
            ArcStyle::Solid(_) => {
                if rk != rows {
                    return Err(SheafError::Violation(format!("arc {} is not surjective", arc.id)));
                }
            }
            ArcStyle::Dashed => {
                if rows != cols || rk != rows {
                    return Err(SheafError::Violation(format!("dashed arc {} is not an isomorphism", arc.id)));
                }
            }
        }
    }
    for rel in &quiver.relations {
        let lhs = rep.path_matrix(quiver, &rel.left);
        let rhs = rep.path_matrix(quiver, &rel.right);
        if lhs != rhs {
            return Err(SheafError::Violation(format!("relation at {} fails", rel.at)));
        }
        if let Some((s, w, e, nn)) = rel.square {
            // total complex of S -> W ⊕ E -> N must be acyclic
            let (ds, dw, de, dn) = (rep.dims[s], rep.dims[w], rep.dims[e], rep.dims[nn]);
            let q = rep.q;
            let (sw, se, wn, en) = (
                &rep.mats[rel.left[0]],
                &rep.mats[rel.right[0]],
                &rep.mats[rel.left[1]],
                &rep.mats[rel.right[1]],
            );
            let mut first = matfq::zeros(q, dw + de, ds);
            for r in 0..dw {
                for c in 0..ds {
                    first[r][c] = sw[r][c];
                }
            }
            for r in 0..de {
                for c in 0..ds {
                    first[dw + r][c] = se[r][c];
                }
            }
            let mut second = matfq::zeros(q, dn, dw + de);
            for r in 0..dn {
                for c in 0..dw {
                    second[r][c] = wn[r][c];
                }
                for c in 0..de {
                    second[r][dw + c] = en[r][c].neg();
                }
            }
            let r1 = matfq::rank(&first);
            let r2 = matfq::rank(&second);
            if r1 != ds || r2 != dn || r1 + r2 != dw + de {
                return Err(SheafError::Violation(format!(
                    "crossing square at {} is not acyclic (ranks {r1}, {r2})",
                    rel.at
                )));
            }
        }
    }
    Ok(())
}

/// θ(λ): the block-diagonal gauge with θ_R = diag(λ_{c_1(R)}, ..).
pub fn theta(quiver: &Quiver, lambda: &[Fq]) -> Vec<Vec<Fq>> {
    quiver
        .vertices
        .iter()
        .map(|v| v.below.iter().map(|&c| lambda[c - 1]).collect())
        .collect()
}

/// Apply the gauge θ(λ) to a rep: arc matrices become θ_dst M θ_src^{-1}.
pub fn gauge_rep(quiver: &Quiver, rep: &QuiverRep, theta_diag: &[Vec<Fq>]) -> QuiverRep {
    let mut mats = Vec::with_capacity(rep.mats.len());
    for (ai, arc) in quiver.arcs.iter().enumerate() {
        let m = &rep.mats[ai];
        let mut out = m.clone();
        for (r, row) in out.iter_mut().enumerate() {
            for (c, val) in row.iter_mut().enumerate() {
                let scale = theta_diag[arc.dst][r].mul(theta_diag[arc.src][c].inv().unwrap());
                *val = scale.mul(*val);
            }
        }
        mats.push(out);
    }
    QuiverRep { q: rep.q, dims: rep.dims.clone(), mats }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivarianceReport {
    pub q: u8,
    pub augmentations: usize,
    pub torus_elements: usize,
    pub equivariant: bool,
    pub injective: bool,
    pub orbit_injective: bool,
}

/// Exhaustively verify Φ(λ·ε) = θ(λ)·Φ(ε), injectivity of Φ, and that a
/// gauge relation Φ(ε') = θ(λ)·Φ(ε) forces ε' = λ·ε.
pub fn equivariance_and_injectivity(dga: &Dga, q: u8) -> Result<EquivarianceReport, SheafError> {
    if dga.mode != BasepointMode::AllCusps {
        return Err(SheafError::Violation("equivariance needs all-cusps base points".into()));
    }
    let front = &dga.diagram.front;
    let (quiver, _) = build_rainbow(front);
    let cm = &dga.diagram.components;
    let augs = enumerate_augmentations(dga, q)?;
    let lambdas = torus_elements(q, dga.n)?;
    let reps: Vec<QuiverRep> =
        augs.iter().map(|e| phi_of_augmentation(front, e)).collect::<Result<_, _>>()?;

    let mut equivariant = true;
    for (eps, rep) in augs.iter().zip(&reps) {
        for lam in &lambdas {
            let moved = torus_act(cm, lam, eps);
            let lhs = phi_of_augmentation(front, &moved)?;
            let rhs = gauge_rep(&quiver, rep, &theta(&quiver, lam));
            if lhs != rhs {
                equivariant = false;
            }
        }
    }
    let mut injective = true;
    for i in 0..reps.len() {
        for j in (i + 1)..reps.len() {
            if reps[i] == reps[j] {
                injective = false;
            }
        }
    }
    let mut orbit_injective = true;
    for (i, eps) in augs.iter().enumerate() {
        for lam in &lambdas {
            let gauged = gauge_rep(&quiver, &reps[i], &theta(&quiver, lam));
            for (j, other) in reps.iter().enumerate() {
                if *other == gauged && augs[j] != torus_act(cm, lam, eps) {
                    orbit_injective = false;
                }
            }
        }
    }
    Ok(EquivarianceReport {
        q,
        augmentations: augs.len(),
        torus_elements: lambdas.len(),
        equivariant,
        injective,
        orbit_injective,
    })
}

/// Brute-force count of line configurations for a 2-strand braid: tuples of
/// lines in P^1(F_q), one per braid-band cell, with the two framing lines
/// fixed to 0 and ∞ and consecutive lines transverse cyclically. The count
/// equals (q-1) mb.
pub fn sheaf_count_oracle_n2(braid: &BraidWord, q: u8) -> Result<u64, SheafError> {
    if braid.n != 2 {
        return Err(SheafError::OracleNeedsTwoStrands(braid.n));
    }
    if !braid.is_connected_closure() {
        return Err(SheafError::OracleDisconnected);
    }
    let ell = braid.letters.len();
    // lines in P^1: 0 = [1:0], ∞ = [0:1], and [1:x] for x != 0... enumerate
    // as 0..=q: index 0 is the 0 line, index q is ∞, otherwise [1:x_i]
    let num_lines = q as u64 + 1;
    let zero_line = 0u64;
    let inf_line = q as u64;
    // tuple (v_2..v_{ell+1}); chain v_1 = ∞, adjacency distinct, v_{ell+1} != 0
    let mut count = 0u64;
    let mut tuple = vec![0u64; ell];
    loop {
        let mut ok = true;
        let mut prev = inf_line;
        for &v in &tuple {
            if v == prev {
                ok = false;
                break;
            }
            prev = v;
        }
        if ok && prev == zero_line {
            ok = false;
        }
        if ok {
            count += 1;
        }
        // increment odometer
        let mut i = 0;
        loop {
            if i == ell {
                return Ok(count);
            }
            tuple[i] += 1;
            if tuple[i] < num_lines {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braidfront::{cylindrical_closure, ng_resolution, parse_braid, rainbow_closure};
    use crate::dga::build_dga;

    fn trefoil_front() -> FrontDiagram {
        rainbow_closure(&parse_braid("2: 1^3").unwrap(), BasepointMode::AllCusps).unwrap()
    }

    fn trefoil_dga() -> Dga {
        build_dga(&ng_resolution(&trefoil_front()).unwrap()).unwrap()
    }

    #[test]
    fn trefoil_quiver_shape() {
        let quiver = build_quiver(&trefoil_front());
        let names: Vec<&str> = quiver.vertices.iter().map(|v| v.id.as_str()).collect();
        assert_eq!(names, vec!["L-", "L+", "U", "U1", "R1.0", "R1.1", "R1.2", "R1.3"]);
        let d_of = |id: &str| quiver.vertices[quiver.vertex(id).unwrap()].d;
        assert_eq!(d_of("U"), 2);
        assert_eq!(d_of("U1"), 1);
        assert_eq!(d_of("R1.2"), 1);
        assert_eq!(d_of("L-"), 0);
        assert_eq!(d_of("L+"), 0);
        // one relation per crossing and per cusp
        assert_eq!(quiver.relations.iter().filter(|r| r.kind == RelationKind::Crossing).count(), 3);
        assert_eq!(quiver.relations.iter().filter(|r| r.kind == RelationKind::Cusp).count(), 4);
    }

    #[test]
    fn cylindrical_quiver_has_extremes() {
        let front = cylindrical_closure(&parse_braid("2: 1^3").unwrap());
        let quiver = build_quiver(&front);
        assert!(quiver.vertex("R_inf").is_some());
        assert!(quiver.vertex("U").is_some());
        assert_eq!(quiver.relations.len(), 5);
        // rank condition: d(U) = n, d(R_inf) = 0
        assert_eq!(quiver.vertices[quiver.vertex("U").unwrap()].d, 2);
        assert_eq!(quiver.vertices[quiver.vertex("R_inf").unwrap()].d, 0);
        validate_quiver_structure(&quiver).unwrap();
        // R_inf is the unique minimal vertex and U the unique maximal one
        let minimal: Vec<usize> = (0..quiver.vertices.len())
            .filter(|&v| quiver.arcs.iter().all(|a| a.dst != v))
            .collect();
        let maximal: Vec<usize> = (0..quiver.vertices.len())
            .filter(|&v| quiver.arcs.iter().all(|a| a.src != v))
            .collect();
        assert_eq!(minimal, vec![quiver.vertex("R_inf").unwrap()]);
        assert_eq!(maximal, vec![quiver.vertex("U").unwrap()]);
    }

    #[test]
    fn quiver_structure_coherent_for_both_closures() {
        for text in ["2: 1", "2: 1^3", "3: 1 2 1", "3: 2 1 2 1", "4: 1 2 3", "3:"] {
            let b = parse_braid(text).unwrap();
            let rainbow = rainbow_closure(&b, BasepointMode::AllCusps).unwrap();
            validate_quiver_structure(&build_quiver(&rainbow)).unwrap_or_else(|e| panic!("{text} rainbow: {e}"));
            let cyl = cylindrical_closure(&b);
            validate_quiver_structure(&build_quiver(&cyl)).unwrap_or_else(|e| panic!("{text} cylindrical: {e}"));
        }
    }

    #[test]
    fn empty_braid_quiver_rank_data() {
        let front = rainbow_closure(&parse_braid("2:").unwrap(), BasepointMode::AllCusps).unwrap();
        let quiver = build_quiver(&front);
        assert_eq!(quiver.vertices[quiver.vertex("U").unwrap()].d, 2);
        assert!(quiver.vertex("R1.0").is_some());
        assert!(quiver.vertex("R1.1").is_none());
    }

    #[test]
    fn trefoil_phi_matches_the_worked_matrices() {
        let front = trefoil_front();
        let dga = trefoil_dga();
        let (quiver, _) = build_rainbow(&front);
        for q in [3u8, 5] {
            for eps in enumerate_augmentations(&dga, q).unwrap() {
                let rep = phi_of_augmentation(&front, &eps).unwrap();
                let arc = |id: &str| {
                    let ai = quiver.arcs.iter().position(|a| a.id == id).unwrap();
                    rep.mats[ai].clone()
                };
                let (a1, a2, a3) = (eps.a[0], eps.a[1], eps.a[2]);
                let one = Fq::one(q);
                // π = (0 1)
                assert_eq!(arc("u1"), vec![vec![Fq::zero(q), one]]);
                // ℓ1 = (0, 1)^T
                assert_eq!(arc("b1.0"), vec![vec![Fq::zero(q)], vec![one]]);
                // ℓ2 = (1, -a1)^T
                assert_eq!(arc("b1.1"), vec![vec![one], vec![a1.neg()]]);
                // ℓ3 = (-a2, 1 + a1 a2)^T
                assert_eq!(arc("b1.2"), vec![vec![a2.neg()], vec![one.add(a1.mul(a2))]]);
                // ℓ4 = (1 + a2 a3, -(a1 + a3 + a1 a2 a3))^T
                assert_eq!(
                    arc("b1.3"),
                    vec![
                        vec![one.add(a2.mul(a3))],
                        vec![a1.add(a3).add(a1.mul(a2).mul(a3)).neg()]
                    ]
                );
                validate_rep(&quiver, &rep).unwrap();
            }
        }
    }

    #[test]
    fn transversality_violation_is_caught() {
        let front = trefoil_front();
        let dga = trefoil_dga();
        let (quiver, _) = build_rainbow(&front);
        let eps = enumerate_augmentations(&dga, 3).unwrap().into_iter().next().unwrap();
        let mut rep = phi_of_augmentation(&front, &eps).unwrap();
        // force [ℓ2] = [ℓ3]: the crossing square at a2 loses exactness
        let i2 = quiver.arcs.iter().position(|a| a.id == "b1.1").unwrap();
        let i3 = quiver.arcs.iter().position(|a| a.id == "b1.2").unwrap();
        rep.mats[i3] = rep.mats[i2].clone();
        assert!(validate_rep(&quiver, &rep).is_err());
    }

    #[test]
    fn sheaf_oracle_counts() {
        let trefoil = parse_braid("2: 1^3").unwrap();
        assert_eq!(sheaf_count_oracle_n2(&trefoil, 2).unwrap(), 5);
        assert_eq!(sheaf_count_oracle_n2(&trefoil, 3).unwrap(), 20);
        let unknot = parse_braid("2: 1").unwrap();
        assert_eq!(sheaf_count_oracle_n2(&unknot, 3).unwrap(), 2);
        assert!(sheaf_count_oracle_n2(&parse_braid("2: 1 1").unwrap(), 2).is_err());
        assert!(sheaf_count_oracle_n2(&parse_braid("3: 1 2").unwrap(), 2).is_err());
    }

    #[test]
    fn equivariance_on_the_trefoil() {
        let dga = trefoil_dga();
        let rep = equivariance_and_injectivity(&dga, 3).unwrap();
        assert!(rep.equivariant && rep.injective && rep.orbit_injective);
        assert_eq!(rep.augmentations, 20);
        let rep2 = equivariance_and_injectivity(&dga, 2).unwrap();
        assert!(rep2.injective);
        assert_eq!(rep2.augmentations, 5);
    }
}
