//! Integer-coefficient multivariate polynomials in the crossing values
//! α_1..α_N, rational functions with monomial denominators in the cusp
//! polynomials Q_1..Q_{i-1}, and the t-elimination procedure turning the
//! cusp relations t_i^{-1} + f_i = 0 into the open set {Q_i ≠ 0}.

use super::fq::Fq;
use super::ncword::Sym;
use crate::dga::Dga;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ElimError {
    #[error("differential of c{cusp} does not have the shape t^-1 + f(a's, earlier t's): {reason}")]
    ShapeMismatch { cusp: usize, reason: String },
    #[error("integer overflow while expanding polynomials")]
    Overflow,
}

/// A commutative polynomial over Z, stored as sorted exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Poly {
    pub nvars: usize,
    terms: BTreeMap<Vec<u16>, i64>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: i64) -> Poly {
        let mut p = Poly::zero(nvars);
        if c != 0 {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, 1)
    }

    pub fn var(nvars: usize, idx: usize) -> Poly {
        let mut e = vec![0u16; nvars];
        e[idx] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(e, 1);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, i64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    fn add_term(&mut self, e: Vec<u16>, c: i64) -> Result<(), ElimError> {
        if c == 0 {
            return Ok(());
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Occupied(mut entry) => {
                let v = entry.get().checked_add(c).ok_or(ElimError::Overflow)?;
                if v == 0 {
                    entry.remove();
                } else {
                    *entry.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(entry) => {
                entry.insert(c);
            }
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Poly) -> Result<Poly, ElimError> {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e.clone(), c)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, &c)| (e.clone(), -c)).collect() }
    }

    pub fn mul(&self, rhs: &Poly) -> Result<Poly, ElimError> {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                let e: Vec<u16> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.checked_mul(c2).ok_or(ElimError::Overflow)?)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Poly, ElimError> {
        let mut out = Poly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn eval_fq(&self, q: u8, point: &[Fq]) -> Fq {
        let mut total = Fq::zero(q);
        for (e, c) in self.terms() {
            let mut m = Fq::from_int(q, c);
            for (i, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    m = m.mul(point[i]);
                }
            }
            total = total.add(m);
        }
        total
    }
}

impl fmt::Display for Poly {
    /// Golden-file text format: `coeff*a1^e1*a2^e2 + ...`, terms ordered by
    /// total degree and then by earliest variable.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut items: Vec<(&Vec<u16>, i64)> = self.terms().collect();
        items.sort_by(|(e1, _), (e2, _)| {
            let d1: u32 = e1.iter().map(|&x| x as u32).sum();
            let d2: u32 = e2.iter().map(|&x| x as u32).sum();
            d1.cmp(&d2).then(e2.cmp(e1))
        });
        let mut first = true;
        for (e, c) in items {
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            let mag = c.unsigned_abs();
            if mag != 1 || e.iter().all(|&x| x == 0) {
                factors.push(mag.to_string());
            }
            for (i, &exp) in e.iter().enumerate() {
                match exp {
                    0 => {}
                    1 => factors.push(format!("a{}", i + 1)),
                    _ => factors.push(format!("a{}^{}", i + 1, exp)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// A rational function N / (Q_1^{d_1} ... Q_k^{d_k}): the denominator is a
/// monomial in previously produced cusp polynomials, tracked as exponents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatFn {
    pub num: Poly,
    pub den: Vec<u32>,
}

impl RatFn {
    fn from_poly(p: Poly, nq: usize) -> RatFn {
        RatFn { num: p, den: vec![0; nq] }
    }

    fn mul(&self, rhs: &RatFn) -> Result<RatFn, ElimError> {
        Ok(RatFn {
            num: self.num.mul(&rhs.num)?,
            den: self.den.iter().zip(&rhs.den).map(|(a, b)| a + b).collect(),
        })
    }

    fn add(&self, rhs: &RatFn, qs: &[Poly]) -> Result<RatFn, ElimError> {
        let den: Vec<u32> = self.den.iter().zip(&rhs.den).map(|(a, b)| *a.max(b)).collect();
        let scale = |r: &RatFn| -> Result<Poly, ElimError> {
            let mut p = r.num.clone();
            for (j, (&have, &want)) in r.den.iter().zip(&den).enumerate() {
                if want > have {
                    p = p.mul(&qs[j].pow(want - have)?)?;
                }
            }
            Ok(p)
        };
        Ok(RatFn { num: scale(self)?.add(&scale(rhs)?)?, den })
    }
}

/// Eliminate the t variables of an all-cusps rainbow DGA. Returns, per cusp
/// i, the pair (P_i, Q_i): P_i is f_i with t_j := -P_j^{-1} substituted, Q_i
/// its numerator. The augmentation set is {α : Q_i(α) ≠ 0 for all i} with
/// t_i = -P_i(α)^{-1}.
pub fn eliminate_t(dga: &Dga) -> Result<Vec<(RatFn, Poly)>, ElimError> {
    let n = dga.n;
    let nvars = dga.num_crossings();
    let mut out: Vec<(RatFn, Poly)> = Vec::with_capacity(n);
    let mut qs: Vec<Poly> = Vec::with_capacity(n);

    for i in 1..=n {
        let d = dga.differential(Sym::C(i as u8));
        // shape check: exactly one t_i^{-1} term with coefficient 1
        let loop_word = crate::algebra::ncword::NcWord::single(Sym::TInv(i as u8));
        let mut f_terms: Vec<(Vec<Sym>, i64)> = Vec::new();
        let mut saw_loop = false;
        for (w, c) in d.terms() {
            if *w == loop_word {
                if c != 1 {
                    return Err(ElimError::ShapeMismatch {
                        cusp: i,
                        reason: format!("loop term has coefficient {c}"),
                    });
                }
                saw_loop = true;
                continue;
            }
            for &s in w.syms() {
                match s {
                    Sym::A(_) => {}
                    Sym::T(j) if (j as usize) < i => {}
                    other => {
                        return Err(ElimError::ShapeMismatch {
                            cusp: i,
                            reason: format!("unexpected symbol {other} in f_{i}"),
                        })
                    }
                }
            }
            f_terms.push((w.syms().to_vec(), c));
        }
        if !saw_loop {
            return Err(ElimError::ShapeMismatch { cusp: i, reason: "missing t^-1 loop term".into() });
        }

        // P_i = f_i(α, t_j := -P_j^{-1}) as a rational function over Q_1..Q_{i-1};
        // denominator exponent vectors have a fixed slot per cusp
        let mut p_i = RatFn::from_poly(Poly::zero(nvars), n);
        for (syms, coeff) in f_terms {
            let mut term = RatFn::from_poly(Poly::constant(nvars, coeff), n);
            for s in syms {
                let factor = match s {
                    Sym::A(j) => RatFn::from_poly(Poly::var(nvars, j as usize - 1), n),
                    Sym::T(j) => {
                        // t_j = -P_j^{-1} = -(den_j expanded) / Q_j
                        let (pj, _) = &out[j as usize - 1];
                        let mut den_poly = Poly::one(nvars);
                        for (k, &e) in pj.den.iter().enumerate().take(qs.len()) {
                            if e > 0 {
                                den_poly = den_poly.mul(&qs[k].pow(e)?)?;
                            }
                        }
                        let mut den = vec![0u32; n];
                        den[j as usize - 1] = 1;
                        RatFn { num: den_poly.neg(), den }
                    }
                    _ => unreachable!("shape checked above"),
                };
                term = term.mul(&factor)?;
            }
            p_i = p_i.add(&term, &qs)?;
        }
        let q_i = p_i.num.clone();
        qs.push(q_i.clone());
        out.push((p_i, q_i));
    }
    Ok(out)
}
