//! Words and integer formal sums in the unital associative algebra generated
//! by the symbols t_i^{±1}, a_j, c_k with the sole relations
//! t_i t_i^{-1} = t_i^{-1} t_i = 1.

use super::fq::{Fq, FqError};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Generator symbol. `T(i)`/`TInv(i)` are the invertible base-point
/// variables, `A(j)` the crossing chords, `C(k)` the right-cusp chords.
/// All indices are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum Sym {
    T(u8),
    TInv(u8),
    A(u16),
    C(u8),
}

impl Sym {
    pub fn inverse(self) -> Option<Sym> {
        match self {
            Sym::T(i) => Some(Sym::TInv(i)),
            Sym::TInv(i) => Some(Sym::T(i)),
            _ => None,
        }
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::T(i) => write!(f, "t{i}"),
            Sym::TInv(i) => write!(f, "t{i}^-1"),
            Sym::A(j) => write!(f, "a{j}"),
            Sym::C(k) => write!(f, "c{k}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("no value assigned to symbol {0}")]
    MissingAssignment(String),
    #[error(transparent)]
    Field(#[from] FqError),
}

/// A word in the generators, kept normalized: adjacent t_i t_i^{-1} pairs are
/// cancelled (the algebra's only relations). The empty word is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize)]
pub struct NcWord {
    syms: Vec<Sym>,
}

impl NcWord {
    pub fn one() -> NcWord {
        NcWord { syms: Vec::new() }
    }

    pub fn new(syms: Vec<Sym>) -> NcWord {
        let mut stack: Vec<Sym> = Vec::with_capacity(syms.len());
        for s in syms {
            if let Some(top) = stack.last() {
                if top.inverse() == Some(s) {
                    stack.pop();
                    continue;
                }
            }
            stack.push(s);
        }
        NcWord { syms: stack }
    }

    pub fn single(s: Sym) -> NcWord {
        NcWord::new(vec![s])
    }

    pub fn syms(&self) -> &[Sym] {
        &self.syms
    }

    pub fn len(&self) -> usize {
        self.syms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    pub fn concat(&self, rhs: &NcWord) -> NcWord {
        let mut v = self.syms.clone();
        v.extend_from_slice(&rhs.syms);
        NcWord::new(v)
    }

    /// Total degree of the word under a grading of the generators.
    pub fn degree(&self, grading: impl Fn(Sym) -> i64) -> i64 {
        self.syms.iter().map(|&s| grading(s)).sum()
    }
}

impl fmt::Display for NcWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syms.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.syms.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Integer-coefficient formal sum of normalized words.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct NcSum {
    terms: BTreeMap<NcWord, i64>,
}

impl NcSum {
    pub fn zero() -> NcSum {
        NcSum::default()
    }

    pub fn one() -> NcSum {
        NcSum::from_word(NcWord::one(), 1)
    }

    pub fn from_word(w: NcWord, coeff: i64) -> NcSum {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(w, coeff);
        }
        NcSum { terms }
    }

    pub fn from_sym(s: Sym) -> NcSum {
        NcSum::from_word(NcWord::single(s), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NcWord, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, w: NcWord, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn add(&self, rhs: &NcSum) -> NcSum {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> NcSum {
        NcSum { terms: self.terms.iter().map(|(w, &c)| (w.clone(), -c)).collect() }
    }

    pub fn sub(&self, rhs: &NcSum) -> NcSum {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, k: i64) -> NcSum {
        if k == 0 {
            return NcSum::zero();
        }
        NcSum { terms: self.terms.iter().map(|(w, &c)| (w.clone(), c * k)).collect() }
    }

    pub fn mul(&self, rhs: &NcSum) -> NcSum {
        let mut out = NcSum::zero();
        for (w1, c1) in self.terms() {
            for (w2, c2) in rhs.terms() {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    /// Evaluate under an algebra map to F_q given by `assign` on symbols.
    pub fn evaluate(&self, q: u8, assign: impl Fn(Sym) -> Option<Fq>) -> Result<Fq, EvalError> {
        let mut total = Fq::zero(q);
        for (w, c) in self.terms() {
            let mut prod = Fq::from_int(q, c);
            for &s in w.syms() {
                let v = assign(s).ok_or_else(|| EvalError::MissingAssignment(s.to_string()))?;
                prod = prod.mul(v);
            }
            total = total.add(prod);
        }
        Ok(total)
    }

    /// Maximal word degree appearing, if the sum is homogeneous; None if
    /// inhomogeneous or zero.
    pub fn homogeneous_degree(&self, grading: impl Fn(Sym) -> i64 + Copy) -> Option<i64> {
        let mut deg = None;
        for (w, _) in self.terms() {
            let d = w.degree(grading);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }
}

impl fmt::Display for NcSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // canonical order: shortest words first, then lexicographic
        let mut items: Vec<(&NcWord, i64)> = self.terms().collect();
        items.sort_by(|(w1, _), (w2, _)| w1.len().cmp(&w2.len()).then(w1.cmp(w2)));
        let mut first = true;
        for (w, c) in items {
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            }
            let mag = c.unsigned_abs();
            if mag != 1 || w.is_empty() {
                write!(f, "{mag}")?;
                if !w.is_empty() {
                    write!(f, "*")?;
                }
            }
            if !w.is_empty() {
                write!(f, "{w}")?;
            }
        }
        Ok(())
    }
}
