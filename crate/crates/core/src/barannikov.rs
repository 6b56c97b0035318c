//! Morse complex sequences attached to an augmentation, their Barannikov
//! normal forms, the per-slice involution sweep classifying an augmentation
//! into its ruling stratum, and the r-coordinates on strata.
//!
//! At a generic slice x of the braid band the complex has basis
//! f_1..f_{2n} = (e_n^+, ..., e_1^+, e_1(x), ..., e_n(x)) ordered top to
//! bottom, filtered by basis suffixes, with d(e_i^+) = -e_i of degree +1.
//! The frame vectors e_k(x) start as the identity and update across a
//! crossing switching braid levels (i, i+1) by
//!   e_i(x') = e_{i+1}(x),   e_{i+1}(x') = e_i(x) - ε(q) e_{i+1}(x).

use crate::algebra::fq::Fq;
use crate::augvar::Augmentation;
use crate::dga::Dga;
use crate::matfq::{self, Mat};
use crate::rulings::{ruling_from_switches, NormalRuling, RulingError};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BarannikovError {
    #[error("no fixed-point free pairing exists (column {0} reduces to zero)")]
    NoPairing(usize),
    #[error("differential is not strictly filtration compatible at column {0}")]
    NotFiltered(usize),
    #[error("d^2 != 0 on the filtered complex")]
    NotSquareZero,
    #[error("pairing violates the Maslov condition at index {0}")]
    BadDegrees(usize),
    #[error("sweep did not produce a valid normal ruling: {0}")]
    InvalidRuling(#[from] RulingError),
}

/// Frames e_1(x)..e_n(x) at every generic slice of the braid band, as
/// columns over the standard basis.
pub fn morse_frames(n: usize, letters: &[usize], eps: &Augmentation) -> Vec<Mat> {
    let q = eps.q;
    let mut frames = Vec::with_capacity(letters.len() + 1);
    let mut cur = matfq::identity(q, n);
    frames.push(cur.clone());
    for (m, &k) in letters.iter().enumerate() {
        let (ci, ci1) = (k - 1, k);
        let val = eps.a[m];
        for row in cur.iter_mut() {
            let old_i = row[ci];
            let old_i1 = row[ci1];
            row[ci] = old_i1;
            row[ci1] = old_i.sub(val.mul(old_i1));
        }
        frames.push(cur.clone());
    }
    frames
}

/// The 2n-dimensional filtered complex at one slice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilteredComplex {
    pub q: u8,
    pub dim: usize,
    /// Maslov potential per basis index; the degree of f_i is -mu[i].
    pub mu: Vec<i64>,
    /// d[j] = coordinates of d(f_j) in the basis.
    pub d: Vec<Vec<Fq>>,
}

impl FilteredComplex {
    /// Structural invariants: strict filtration compatibility, degree +1,
    /// and d^2 = 0.
    pub fn validate(&self) -> Result<(), BarannikovError> {
        for (j, col) in self.d.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    if i <= j {
                        return Err(BarannikovError::NotFiltered(j));
                    }
                    if -self.mu[i] != -self.mu[j] + 1 {
                        return Err(BarannikovError::NotFiltered(j));
                    }
                }
            }
        }
        // d^2 = 0
        for col in &self.d {
            let dd = matfq_col_apply(&self.d, col, self.q);
            if dd.iter().any(|v| !v.is_zero()) {
                return Err(BarannikovError::NotSquareZero);
            }
        }
        Ok(())
    }
}

fn matfq_col_apply(d: &[Vec<Fq>], col: &[Fq], q: u8) -> Vec<Fq> {
    let dim = col.len();
    let mut out = vec![Fq::zero(q); dim];
    for (j, c) in col.iter().enumerate() {
        if !c.is_zero() {
            for i in 0..dim {
                out[i] = out[i].add(c.mul(d[j][i]));
            }
        }
    }
    out
}

/// Build the filtered complex at a slice from the frame matrix there:
/// d(f_{n+1-i}) = -e_i expressed in the frame columns.
pub fn filtered_complex_at(n: usize, frame: &Mat, q: u8) -> FilteredComplex {
    let dim = 2 * n;
    let inv = matfq::inverse(frame).expect("frame matrices are invertible");
    let mut d = vec![vec![Fq::zero(q); dim]; dim];
    for i in 1..=n {
        // column of f_{n+1-i} = e_i^+; -e_i has frame coordinates -(inv e_i)
        let col = n + 1 - i - 1;
        for j in 0..n {
            d[col][n + j] = inv[j][i - 1].neg();
        }
    }
    let mut mu = vec![1i64; n];
    mu.extend(vec![0i64; n]);
    FilteredComplex { q, dim, mu, d }
}

/// Barannikov normal form data: the fixed-point free pairing, the unipotent
/// change of basis φ0 (columns are the coordinates of f'_i), and the pivot
/// units u_{i,ρ(i)}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalFormData {
    pub rho: Vec<usize>,
    pub phi: Vec<Vec<Fq>>,
    pub pivots: Vec<Option<Fq>>,
}

impl NormalFormData {
    /// Coefficient a_{ij}: the f_j coordinate of φ0(f_i).
    pub fn a(&self, i: usize, j: usize) -> Fq {
        self.phi[i][j]
    }
}

/// Compute the unique normal form by filtration-respecting column reduction.
/// Upper indices (nonzero columns) are processed from the bottom of the
/// filtration upward; each column is reduced against already-claimed pivots
/// by adding later columns of the same degree, which records φ0.
pub fn barannikov_normal_form(c: &FilteredComplex) -> Result<NormalFormData, BarannikovError> {
    c.validate()?;
    let q = c.q;
    let dim = c.dim;
    let lead = |col: &[Fq]| col.iter().position(|v| !v.is_zero());

    let mut reduced: Vec<Vec<Fq>> = c.d.clone();
    let mut phi = matfq::identity(q, dim);
    let mut rho: Vec<Option<usize>> = vec![None; dim];
    let mut pivots: Vec<Option<Fq>> = vec![None; dim];
    let mut claimed: Vec<Option<usize>> = vec![None; dim]; // lead index -> upper index

    let uppers: Vec<usize> = (0..dim).filter(|&j| lead(&c.d[j]).is_some()).collect();
    for &i in uppers.iter().rev() {
        loop {
            let Some(l) = lead(&reduced[i]) else {
                return Err(BarannikovError::NoPairing(i));
            };
            match claimed[l] {
                None => {
                    claimed[l] = Some(i);
                    rho[i] = Some(l);
                    rho[l] = Some(i);
                    pivots[i] = Some(reduced[i][l]);
                    break;
                }
                Some(j) => {
                    // cancel the lead against column j: f'_i += coef f'_j
                    if c.mu[i] != c.mu[j] {
                        return Err(BarannikovError::BadDegrees(i));
                    }
                    let coef = reduced[i][l].mul(reduced[j][l].inv().unwrap());
                    for r in 0..dim {
                        let sub = coef.mul(reduced[j][r]);
                        reduced[i][r] = reduced[i][r].sub(sub);
                        let subp = coef.mul(phi[j][r]);
                        phi[i][r] = phi[i][r].sub(subp);
                    }
                }
            }
        }
    }
    // lower part of φ0: f'_{ρ(i)} = d f'_i / u
    for &i in &uppers {
        let l = rho[i].unwrap();
        let u = pivots[i].unwrap();
        let uinv = u.inv().unwrap();
        for r in 0..dim {
            phi[l][r] = reduced[i][r].mul(uinv);
        }
    }
    let rho: Vec<usize> = rho
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or(BarannikovError::NoPairing(i)))
        .collect::<Result<_, _>>()?;
    // Maslov condition: the upper index of each pair has potential one higher
    for (i, &ri) in rho.iter().enumerate() {
        if i < ri && c.mu[i] != c.mu[ri] + 1 {
            return Err(BarannikovError::BadDegrees(i));
        }
    }
    Ok(NormalFormData { rho, phi, pivots })
}

/// The per-slice normal form data of an augmentation over the braid band.
pub fn sweep(dga: &Dga, eps: &Augmentation) -> Result<Vec<NormalFormData>, BarannikovError> {
    let frames = morse_frames(dga.n, &dga.letters, eps);
    frames
        .iter()
        .map(|fr| barannikov_normal_form(&filtered_complex_at(dga.n, fr, eps.q)))
        .collect()
}

/// Classify an augmentation: the sequence of Barannikov involutions over the
/// slices, validated as a normal ruling of the front.
pub fn ruling_of(dga: &Dga, eps: &Augmentation) -> Result<NormalRuling, BarannikovError> {
    let forms = sweep(dga, eps)?;
    let mut switches = Vec::with_capacity(dga.letters.len());
    for m in 0..dga.letters.len() {
        switches.push(forms[m].rho == forms[m + 1].rho);
    }
    let ruling = ruling_from_switches(dga.n, &dga.letters, &switches)?;
    // the sweep's involutions must agree with the ruling's slice-by-slice
    for (m, form) in forms.iter().enumerate() {
        if form.rho != ruling.involutions[m] {
            return Err(BarannikovError::InvalidRuling(RulingError::SweepMismatch { slice: m }));
        }
    }
    Ok(ruling)
}

/// r-coordinate at the m-th crossing (0-based): -a_{k,k+1}(x) - ε(a_{m+1}),
/// where (k, k+1) are the global strand slots switched by the crossing and x
/// is the slice just before it.
pub fn r_coordinate(dga: &Dga, eps: &Augmentation, m: usize) -> Result<Fq, BarannikovError> {
    let forms = sweep(dga, eps)?;
    Ok(r_coordinate_with(dga, eps, &forms, m))
}

pub fn r_coordinate_with(dga: &Dga, eps: &Augmentation, forms: &[NormalFormData], m: usize) -> Fq {
    let k = dga.n + dga.letters[m] - 1; // 0-based slot of the upper strand
    let a = forms[m].a(k, k + 1);
    a.neg().sub(eps.a[m])
}

/// Full vector of r-coordinates, one per crossing in word order.
pub fn r_vector(dga: &Dga, eps: &Augmentation) -> Result<Vec<Fq>, BarannikovError> {
    let forms = sweep(dga, eps)?;
    Ok((0..dga.letters.len()).map(|m| r_coordinate_with(dga, eps, &forms, m)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augvar::enumerate_augmentations;
    use crate::braidfront::{ng_resolution, parse_braid, rainbow_closure, BasepointMode};
    use crate::dga::build_dga;
    use crate::rulings::CrossingClass;

    fn trefoil_dga() -> Dga {
        let b = parse_braid("2: 1^3").unwrap();
        let f = rainbow_closure(&b, BasepointMode::AllCusps).unwrap();
        build_dga(&ng_resolution(&f).unwrap()).unwrap()
    }

    fn eps_with(q: u8, a: &[i64]) -> Augmentation {
        let dga = trefoil_dga();
        let alpha: Vec<Fq> = a.iter().map(|&v| Fq::from_int(q, v)).collect();
        let t = crate::augvar::solve_t_values(dga.n, &dga.letters, dga.mode, &alpha, q)
            .expect("valid augmentation point");
        Augmentation { q, t, a: alpha }
    }

    #[test]
    fn trefoil_frames_match_the_worked_example() {
        // over F_5 with (a1, a2, a3) = (1, 1, 2): frames at slices x2 and x4
        let q = 5;
        let eps = eps_with(q, &[1, 1, 1]);
        let frames = morse_frames(2, &[1, 1, 1], &eps);
        let a1 = eps.a[0];
        // (e1(x2), e2(x2)) = (e2, e1 - ε(a1) e2)
        assert_eq!(frames[1][0][0], Fq::zero(q));
        assert_eq!(frames[1][1][0], Fq::one(q));
        assert_eq!(frames[1][0][1], Fq::one(q));
        assert_eq!(frames[1][1][1], a1.neg());
        // e2(x4) = (1 + ε(a2)ε(a3)) e1 - (ε(a1)+ε(a3)+ε(a1)ε(a2)ε(a3)) e2
        let (a2, a3) = (eps.a[1], eps.a[2]);
        let top = Fq::one(q).add(a2.mul(a3));
        let bot = a1.add(a3).add(a1.mul(a2).mul(a3)).neg();
        assert_eq!(frames[3][0][1], top);
        assert_eq!(frames[3][1][1], bot);
    }

    #[test]
    fn frames_constant_without_crossings() {
        let q = 3;
        let eps = Augmentation { q, t: vec![], a: vec![] };
        let frames = morse_frames(3, &[], &eps);
        assert_eq!(frames.len(), 1);
        assert_eq!(frames[0], matfq::identity(q, 3));
    }

    #[test]
    fn normal_form_is_identity_when_already_reduced() {
        let q = 3;
        let c = filtered_complex_at(2, &matfq::identity(q, 2), q);
        let nf = barannikov_normal_form(&c).unwrap();
        assert_eq!(nf.phi, matfq::identity(q, 4));
        // nested pairing (1 4)(2 3) in 0-based form
        assert_eq!(nf.rho, vec![3, 2, 1, 0]);
    }

    #[test]
    fn trefoil_stratum_membership() {
        // over F_3: α1 ≠ 0, 1 + α1 α2 ≠ 0 puts ε in the all-switch stratum
        let dga = trefoil_dga();
        let eps = eps_with(3, &[1, 1, 0]);
        let ruling = ruling_of(&dga, &eps).unwrap();
        assert_eq!(ruling.classes, vec![CrossingClass::Switch; 3]);

        // α1 = 0 puts ε in the stratum switching only at a3
        let eps2 = eps_with(3, &[0, 1, 1]);
        let r2 = ruling_of(&dga, &eps2).unwrap();
        assert_eq!(
            r2.classes,
            vec![CrossingClass::Departure, CrossingClass::Return, CrossingClass::Switch]
        );

        // 1 + α1 α2 = 0 puts ε in the stratum switching only at a1
        let eps3 = eps_with(3, &[1, 2, 1]);
        let r3 = ruling_of(&dga, &eps3).unwrap();
        assert_eq!(
            r3.classes,
            vec![CrossingClass::Switch, CrossingClass::Departure, CrossingClass::Return]
        );
    }

    #[test]
    fn trefoil_r_coordinates_match_closed_forms() {
        let q = 5;
        let dga = trefoil_dga();
        for a1 in 0..q as i64 {
            for a2 in 0..q as i64 {
                for a3 in 0..q as i64 {
                    let alpha: Vec<Fq> =
                        [a1, a2, a3].iter().map(|&v| Fq::from_int(q, v)).collect();
                    let Some(t) =
                        crate::augvar::solve_t_values(dga.n, &dga.letters, dga.mode, &alpha, q)
                    else {
                        continue;
                    };
                    let eps = Augmentation { q, t, a: alpha.clone() };
                    let rv = r_vector(&dga, &eps).unwrap();
                    // r_{a1} = -α1 always (φ0 = id at the first slice)
                    assert_eq!(rv[0], alpha[0].neg());
                    let one = Fq::one(q);
                    let d = one.add(alpha[0].mul(alpha[1]));
                    if !alpha[0].is_zero() && !d.is_zero() {
                        // all-switch stratum: r_{a3} = -(1+α1α2)^{-1}(α1+α3+α1α2α3)
                        let num = alpha[0].add(alpha[2]).add(alpha[0].mul(alpha[1]).mul(alpha[2]));
                        assert_eq!(rv[2], d.inv().unwrap().mul(num).neg());
                        // r_{a2} = -α1^{-1} - α2 = -α1^{-1}(1 + α1 α2)
                        assert_eq!(rv[1], alpha[0].inv().unwrap().neg().sub(alpha[1]));
                    }
                    if alpha[0].is_zero() {
                        // departure at a1: r = 0
                        assert!(rv[0].is_zero());
                    }
                    if !alpha[0].is_zero() && d.is_zero() {
                        // departure at a2 on that stratum: r_{a2} = 0
                        assert!(rv[1].is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn departures_vanish_switches_do_not() {
        let dga = trefoil_dga();
        for q in [2u8, 3] {
            for eps in enumerate_augmentations(&dga, q).unwrap() {
                let ruling = ruling_of(&dga, &eps).unwrap();
                let rv = r_vector(&dga, &eps).unwrap();
                for (m, class) in ruling.classes.iter().enumerate() {
                    match class {
                        CrossingClass::Switch => assert!(!rv[m].is_zero()),
                        CrossingClass::Departure => assert!(rv[m].is_zero()),
                        CrossingClass::Return => {}
                    }
                }
            }
        }
    }

    #[test]
    fn phi0_conjugation_squares_to_zero() {
        // (φ0^{-1} d φ0) has one pivot per pair and squares to zero
        let dga = trefoil_dga();
        let eps = eps_with(3, &[1, 1, 0]);
        for (m, form) in sweep(&dga, &eps).unwrap().iter().enumerate() {
            let frames = morse_frames(dga.n, &dga.letters, &eps);
            let c = filtered_complex_at(dga.n, &frames[m], eps.q);
            // columns of d∘φ0 must be pivots times φ0 columns
            for i in 0..c.dim {
                let dfi = matfq_col_apply(&c.d, &form.phi[i], eps.q);
                match form.pivots[i] {
                    Some(u) => {
                        let target: Vec<Fq> =
                            form.phi[form.rho[i]].iter().map(|v| v.mul(u)).collect();
                        assert_eq!(dfi, target);
                    }
                    None => assert!(dfi.iter().all(|v| v.is_zero())),
                }
            }
        }
    }
}
