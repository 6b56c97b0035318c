//! Augmentations over F_q, the torus action, quotient representatives,
//! point counts and ruling stratification.
//!
//! Enumeration iterates over values of the degree-0 crossings only; the
//! t-values are forced by the cusp relations, solved cusp by cusp exactly as
//! in the t-elimination procedure but evaluated pointwise. The path matrix
//! of the braid makes each cusp value an O(n^2) fold, so exhaustive scans of
//! F_q^N stay cheap for the corpus sizes used here.

use crate::algebra::fq::{self, Fq, FqError};
use crate::algebra::ncword::{EvalError, Sym};
use crate::braidfront::{BasepointMode, ComponentMap};
use crate::dga::Dga;
use crate::matfq::{self, Mat};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AugError {
    #[error(transparent)]
    Field(#[from] FqError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("operation requires a connected closure")]
    Disconnected,
    #[error("operation requires all-cusps base points")]
    NotAllCusps,
    #[error("invariant violation: {0}")]
    Invariant(String),
}

/// An augmentation: unit values on the base-point variables, field values on
/// the degree-0 crossings, zero on everything of nonzero degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Augmentation {
    pub q: u8,
    pub t: Vec<Fq>,
    pub a: Vec<Fq>,
}

impl Augmentation {
    pub fn value(&self, s: Sym) -> Option<Fq> {
        match s {
            Sym::T(i) => self.t.get(i as usize - 1).copied(),
            Sym::TInv(i) => self.t.get(i as usize - 1).and_then(|v| v.inv().ok()),
            Sym::A(j) => self.a.get(j as usize - 1).copied(),
            Sym::C(_) => Some(Fq::zero(self.q)),
        }
    }

    /// ε∘∂ = 0 on every generator, checked through the word differentials.
    pub fn satisfies(&self, dga: &Dga) -> Result<bool, AugError> {
        for g in &dga.generators {
            let v = dga.differential(g.sym).evaluate(self.q, |s| self.value(s))?;
            if !v.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Path matrix of the braid word over F_q at crossing values `alpha`:
/// the product over letters of the elementary matrix that is the identity
/// except for the block [[alpha_m, 1], [1, 0]] at rows/columns (k, k+1).
pub fn path_matrix(n: usize, letters: &[usize], alpha: &[Fq], q: u8) -> Mat {
    let mut b = matfq::identity(q, n);
    for (m, &k) in letters.iter().enumerate() {
        // multiply b on the right by M_k(alpha_m); only columns k-1, k change
        let (ck, ck1) = (k - 1, k);
        for row in b.iter_mut() {
            let old_k = row[ck];
            let old_k1 = row[ck1];
            row[ck] = old_k.mul(alpha[m]).add(old_k1);
            row[ck1] = old_k;
        }
    }
    b
}

/// Marked-cusp layout: `marked[i-1]` is the base-point index on cusp i.
fn cusp_marking(n: usize, mode: BasepointMode) -> Vec<Option<usize>> {
    match mode {
        BasepointMode::AllCusps => (1..=n).map(Some).collect(),
        BasepointMode::Single => {
            let mut v = vec![None; n];
            v[n - 1] = Some(1);
            v
        }
    }
}

/// Sum over walks from `from` back to the closing cusp `target`: walks hop
/// through inner cusps (indices < target) picking up the wrap weight t'_j at
/// each; `blocked` enforces the nesting rule that a cusp is wrapped again
/// only after a larger one.
fn walk_sum(b: &Mat, wrap: &[Fq], from: usize, target: usize, blocked: u32, q: u8) -> Fq {
    let mut v = b[from][target];
    for j in 0..target {
        if blocked & (1 << j) == 0 && !b[from][j].is_zero() {
            let next = (blocked & !((1u32 << j) - 1)) | (1 << j);
            let tail = walk_sum(b, wrap, j, target, next, q);
            v = v.add(b[from][j].mul(wrap[j]).mul(tail));
        }
    }
    v
}

/// Solve the cusp relations at a given crossing assignment. Returns the
/// base-point values when every relation is solvable, None otherwise.
///
/// v_i is the augmented value of the non-loop part of the differential of
/// c_i: the nested-walk sum B[i][j_1] t'_{j_1} B[j_1][j_2] ... B[j_m][i]
/// over inner cusps j_k < i, where t'_j is the wrap weight of cusp j (its
/// base-point value if marked, else 1). Equivalently v_i is the i-th Schur
/// quotient of B, the ratio of consecutive leading principal minors. A
/// marked cusp forces t = -v_i^{-1} (reject v_i = 0), an unmarked one forces
/// v_i = -1.
pub fn solve_t_values(
    n: usize,
    letters: &[usize],
    mode: BasepointMode,
    alpha: &[Fq],
    q: u8,
) -> Option<Vec<Fq>> {
    let b = path_matrix(n, letters, alpha, q);
    let marking = cusp_marking(n, mode);
    let num_bp = marking.iter().flatten().count();
    let mut t = vec![Fq::zero(q); num_bp];
    let mut wrap = vec![Fq::one(q); n]; // t'_j per cusp
    for i in 0..n {
        let v = walk_sum(&b, &wrap, i, i, 0, q);
        match marking[i] {
            Some(bp) => {
                if v.is_zero() {
                    return None;
                }
                let ti = v.neg().inv().unwrap();
                t[bp - 1] = ti;
                wrap[i] = ti;
            }
            None => {
                if v != Fq::one(q).neg() {
                    return None;
                }
                wrap[i] = Fq::one(q);
            }
        }
    }
    Some(t)
}

fn for_each_alpha(q: u8, len: usize, mut f: impl FnMut(&[Fq])) -> Result<(), FqError> {
    let elems = fq::elements(q)?;
    let mut alpha = vec![Fq::zero(q); len];
    let total = (q as u64).pow(len as u32);
    for idx in 0..total {
        let mut rem = idx;
        for slot in alpha.iter_mut() {
            *slot = elems[(rem % q as u64) as usize];
            rem /= q as u64;
        }
        f(&alpha);
    }
    Ok(())
}

/// Exhaustive augmentation list of a rainbow DGA over F_q, ordered by the
/// crossing value vector.
pub fn enumerate_augmentations(dga: &Dga, q: u8) -> Result<Vec<Augmentation>, AugError> {
    let mut out = Vec::new();
    for_each_alpha(q, dga.num_crossings(), |alpha| {
        if let Some(t) = solve_t_values(dga.n, &dga.letters, dga.mode, alpha, q) {
            out.push(Augmentation { q, t, a: alpha.to_vec() });
        }
    })?;
    out.sort();
    Ok(out)
}

/// The torus acts by (λ·ε)(b) = λ_{r(b)}^{-1} ε(b) λ_{c(b)}.
pub fn torus_act(cm: &ComponentMap, lambda: &[Fq], eps: &Augmentation) -> Augmentation {
    let act = |r: usize, c: usize, v: Fq| lambda[r - 1].inv().unwrap().mul(v).mul(lambda[c - 1]);
    let t = eps
        .t
        .iter()
        .enumerate()
        .map(|(i, &v)| act(cm.r_t[i], cm.c_t[i], v))
        .collect();
    let a = eps
        .a
        .iter()
        .enumerate()
        .map(|(j, &v)| act(cm.r_a[j], cm.c_a[j], v))
        .collect();
    Augmentation { q: eps.q, t, a }
}

/// All torus elements (F_q^*)^b in lexicographic order.
pub fn torus_elements(q: u8, b: usize) -> Result<Vec<Vec<Fq>>, FqError> {
    let units = fq::units(q)?;
    let mut out: Vec<Vec<Fq>> = vec![Vec::new()];
    for _ in 0..b {
        let mut next = Vec::with_capacity(out.len() * units.len());
        for prefix in &out {
            for &u in &units {
                let mut v = prefix.clone();
                v.push(u);
                next.push(v);
            }
        }
        out = next;
    }
    Ok(out)
}

/// The unique orbit representative with ε(t_i) = 1 for i < n. Requires a
/// connected closure in all-cusps mode; the gauge λ is propagated along the
/// cycle of the closure permutation.
pub fn normalize_representative(cm: &ComponentMap, eps: &Augmentation) -> Result<Augmentation, AugError> {
    if !cm.connected {
        return Err(AugError::Disconnected);
    }
    let n = cm.b;
    if eps.t.len() != n {
        return Err(AugError::NotAllCusps);
    }
    let q = eps.q;
    // (λ·ε)(t_i) = λ_{r(t_i)}^{-1} ε(t_i) λ_i = 1 for i < n, so
    // λ_i = ε(t_i)^{-1} λ_{r(t_i)}; fix λ_n = 1 and walk the cycle.
    let mut lambda = vec![None; n + 1];
    lambda[n] = Some(Fq::one(q));
    for _ in 0..n {
        for i in 1..n {
            if lambda[i].is_none() {
                if let Some(prev) = lambda[cm.r_t[i - 1]] {
                    lambda[i] = Some(eps.t[i - 1].inv()?.mul(prev));
                }
            }
        }
    }
    let lam: Vec<Fq> = (1..=n)
        .map(|i| lambda[i].ok_or(AugError::Disconnected))
        .collect::<Result<_, _>>()?;
    Ok(torus_act(cm, &lam, eps))
}

/// Diagnostic representative for disconnected closures: the lexicographically
/// smallest value vector in the orbit.
pub fn lex_min_representative(cm: &ComponentMap, eps: &Augmentation) -> Result<Augmentation, AugError> {
    let mut best = eps.clone();
    for lam in torus_elements(eps.q, cm.b)? {
        let cand = torus_act(cm, &lam, eps);
        if cand < best {
            best = cand;
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointCounts {
    pub q: u8,
    pub aug_all_cusps: u64,
    pub aug_single: u64,
    pub mb: u64,
}

/// |Aug| in both base-point modes and the moduli count mb = |Aug(single)|;
/// checks the exact quotient relation aug_all = mb (q-1)^{n-1}.
pub fn point_counts(dga_all: &Dga, dga_single: &Dga, q: u8) -> Result<PointCounts, AugError> {
    if !dga_all.diagram.components.connected {
        return Err(AugError::Disconnected);
    }
    let all = enumerate_augmentations(dga_all, q)?.len() as u64;
    let single = enumerate_augmentations(dga_single, q)?.len() as u64;
    let torus = (q as u64 - 1).pow(dga_all.n as u32 - 1);
    if single * torus != all {
        return Err(AugError::Invariant(format!(
            "aug_all = {all} is not (q-1)^(n-1) = {torus} times aug_single = {single}"
        )));
    }
    Ok(PointCounts { q, aug_all_cusps: all, aug_single: single, mb: single })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stratum {
    pub ruling_key: String,
    pub s: usize,
    pub r: usize,
    pub members: Vec<Augmentation>,
}

/// Group augmentations by the normal ruling of their Barannikov sweep.
pub fn stratify(dga: &Dga, augs: &[Augmentation]) -> Result<BTreeMap<String, Stratum>, AugError> {
    let mut out: BTreeMap<String, Stratum> = BTreeMap::new();
    for eps in augs {
        let ruling = crate::barannikov::ruling_of(dga, eps)
            .map_err(|e| AugError::Invariant(format!("Barannikov sweep failed: {e}")))?;
        let key = ruling.key();
        let entry = out.entry(key.clone()).or_insert_with(|| Stratum {
            ruling_key: key,
            s: ruling.s,
            r: ruling.r,
            members: Vec::new(),
        });
        entry.members.push(eps.clone());
    }
    Ok(out)
}
