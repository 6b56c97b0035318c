//! Table-driven arithmetic for the finite fields F_q, q in {2,3,4,5,7,8,9}.
//!
//! Non-prime orders use fixed irreducible polynomials:
//! F4 = F2[x]/(x^2+x+1), F8 = F2[x]/(x^3+x+1), F9 = F3[x]/(x^2+1).
//! Elements are indices into precomputed add/mul tables; the tables are
//! verified against the field axioms exhaustively the first time a field
//! is used.

use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

pub const SUPPORTED_Q: &[u8] = &[2, 3, 4, 5, 7, 8, 9];
const MAX_Q: usize = 9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FqError {
    #[error("unsupported field order q={0} (supported: 2,3,4,5,7,8,9)")]
    UnsupportedOrder(u8),
    #[error("division by zero in F_{0}")]
    DivisionByZero(u8),
    #[error("element index {index} out of range for F_{q}")]
    OutOfRange { q: u8, index: u8 },
}

#[derive(Debug)]
pub struct FqTable {
    pub q: u8,
    add: [[u8; MAX_Q]; MAX_Q],
    mul: [[u8; MAX_Q]; MAX_Q],
    neg: [u8; MAX_Q],
    inv: [u8; MAX_Q],
    characteristic: u8,
}

fn raw_add(q: u8, a: u8, b: u8) -> u8 {
    match q {
        2 | 3 | 5 | 7 => (a + b) % q,
        // GF(2^k): bitwise xor of polynomial coefficients.
        4 | 8 => a ^ b,
        // F9: pairs (lo, hi) base 3 representing lo + hi*x.
        9 => {
            let (al, ah) = (a % 3, a / 3);
            let (bl, bh) = (b % 3, b / 3);
            (al + bl) % 3 + 3 * ((ah + bh) % 3)
        }
        _ => unreachable!(),
    }
}

fn raw_mul(q: u8, a: u8, b: u8) -> u8 {
    match q {
        2 | 3 | 5 | 7 => (a * b) % q,
        4 => {
            // carry-less multiply mod x^2 + x + 1
            let mut acc: u8 = 0;
            for bit in 0..2 {
                if b & (1 << bit) != 0 {
                    acc ^= a << bit;
                }
            }
            if acc & 0b100 != 0 {
                acc ^= 0b111; // x^2 = x + 1
            }
            acc & 0b11
        }
        8 => {
            let mut acc: u8 = 0;
            for bit in 0..3 {
                if b & (1 << bit) != 0 {
                    acc ^= a << bit;
                }
            }
            // reduce degree 4 then 3 by x^3 = x + 1
            if acc & 0b1_0000 != 0 {
                acc ^= 0b1_0110;
            }
            if acc & 0b1000 != 0 {
                acc ^= 0b1011;
            }
            acc & 0b111
        }
        9 => {
            // (al + ah x)(bl + bh x) with x^2 = -1
            let (al, ah) = ((a % 3) as i16, (a / 3) as i16);
            let (bl, bh) = ((b % 3) as i16, (b / 3) as i16);
            let lo = (al * bl - ah * bh).rem_euclid(3) as u8;
            let hi = (al * bh + ah * bl).rem_euclid(3) as u8;
            lo + 3 * hi
        }
        _ => unreachable!(),
    }
}

fn build_table(q: u8) -> FqTable {
    let n = q as usize;
    let mut t = FqTable {
        q,
        add: [[0; MAX_Q]; MAX_Q],
        mul: [[0; MAX_Q]; MAX_Q],
        neg: [0; MAX_Q],
        inv: [0; MAX_Q],
        characteristic: match q {
            2 | 4 | 8 => 2,
            3 | 9 => 3,
            p => p,
        },
    };
    for a in 0..n {
        for b in 0..n {
            t.add[a][b] = raw_add(q, a as u8, b as u8);
            t.mul[a][b] = raw_mul(q, a as u8, b as u8);
        }
    }
    for a in 0..n {
        for b in 0..n {
            if t.add[a][b] == 0 {
                t.neg[a] = b as u8;
            }
            if t.mul[a][b] == 1 {
                t.inv[a] = b as u8;
            }
        }
    }
    verify_axioms(&t);
    t
}

/// Exhaustive check of the field axioms; q <= 9 keeps this trivial.
fn verify_axioms(t: &FqTable) {
    let n = t.q as usize;
    for a in 0..n {
        assert_eq!(t.add[a][0], a as u8);
        assert_eq!(t.mul[a][1], a as u8);
        assert_eq!(t.mul[a][0], 0);
        assert_eq!(t.add[a][t.neg[a] as usize], 0);
        if a != 0 {
            assert_eq!(t.mul[a][t.inv[a] as usize], 1, "inverse in F_{}", t.q);
        }
        for b in 0..n {
            assert_eq!(t.add[a][b], t.add[b][a]);
            assert_eq!(t.mul[a][b], t.mul[b][a]);
            for c in 0..n {
                assert_eq!(t.add[t.add[a][b] as usize][c], t.add[a][t.add[b][c] as usize]);
                assert_eq!(t.mul[t.mul[a][b] as usize][c], t.mul[a][t.mul[b][c] as usize]);
                assert_eq!(
                    t.mul[a][t.add[b][c] as usize],
                    t.add[t.mul[a][b] as usize][t.mul[a][c] as usize],
                    "distributivity in F_{}",
                    t.q
                );
            }
        }
    }
}

static TABLES: [OnceLock<FqTable>; 10] = [const { OnceLock::new() }; 10];

pub fn table(q: u8) -> Result<&'static FqTable, FqError> {
    if !SUPPORTED_Q.contains(&q) {
        return Err(FqError::UnsupportedOrder(q));
    }
    Ok(TABLES[q as usize].get_or_init(|| build_table(q)))
}

/// An element of F_q, encoded as a table index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fq {
    q: u8,
    v: u8,
}

impl serde::Serialize for Fq {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.v)
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_F{}", self.v, self.q)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Fq {
    pub fn new(q: u8, v: u8) -> Result<Fq, FqError> {
        let t = table(q)?;
        if v >= t.q {
            return Err(FqError::OutOfRange { q, index: v });
        }
        Ok(Fq { q, v })
    }

    pub fn zero(q: u8) -> Fq {
        Fq { q, v: 0 }
    }

    pub fn one(q: u8) -> Fq {
        Fq { q, v: 1 }
    }

    /// Image of an integer under Z -> F_q (reduction into the prime field).
    pub fn from_int(q: u8, k: i64) -> Fq {
        let t = table(q).expect("supported q");
        let c = t.characteristic as i64;
        let r = k.rem_euclid(c) as u8;
        Fq { q, v: r }
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn index(&self) -> u8 {
        self.v
    }

    pub fn is_zero(&self) -> bool {
        self.v == 0
    }

    pub fn add(&self, rhs: Fq) -> Fq {
        debug_assert_eq!(self.q, rhs.q);
        let t = table(self.q).unwrap();
        Fq { q: self.q, v: t.add[self.v as usize][rhs.v as usize] }
    }

    pub fn mul(&self, rhs: Fq) -> Fq {
        debug_assert_eq!(self.q, rhs.q);
        let t = table(self.q).unwrap();
        Fq { q: self.q, v: t.mul[self.v as usize][rhs.v as usize] }
    }

    pub fn neg(&self) -> Fq {
        let t = table(self.q).unwrap();
        Fq { q: self.q, v: t.neg[self.v as usize] }
    }

    pub fn sub(&self, rhs: Fq) -> Fq {
        self.add(rhs.neg())
    }

    pub fn inv(&self) -> Result<Fq, FqError> {
        if self.v == 0 {
            return Err(FqError::DivisionByZero(self.q));
        }
        let t = table(self.q).unwrap();
        Ok(Fq { q: self.q, v: t.inv[self.v as usize] })
    }
}

/// All elements of F_q in index order.
pub fn elements(q: u8) -> Result<Vec<Fq>, FqError> {
    let t = table(q)?;
    Ok((0..t.q).map(|v| Fq { q, v }).collect())
}

/// The nonzero elements of F_q.
pub fn units(q: u8) -> Result<Vec<Fq>, FqError> {
    let t = table(q)?;
    Ok((1..t.q).map(|v| Fq { q, v }).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Neg,
}

/// Single-operation entry point used by the CLI and the quick-check tests.
pub fn field_arith(q: u8, op: FieldOp, x: u8, y: Option<u8>) -> Result<Fq, FqError> {
    let a = Fq::new(q, x)?;
    match op {
        FieldOp::Add => Ok(a.add(Fq::new(q, y.ok_or(FqError::OutOfRange { q, index: 255 })?)?)),
        FieldOp::Mul => Ok(a.mul(Fq::new(q, y.ok_or(FqError::OutOfRange { q, index: 255 })?)?)),
        FieldOp::Inv => a.inv(),
        FieldOp::Neg => Ok(a.neg()),
    }
}
