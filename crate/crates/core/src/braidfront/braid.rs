//! Positive braid words and the permutation bookkeeping of their closures.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("malformed braid text {0:?}: expected \"<n>: <letters>\"")]
    Malformed(String),
    #[error("strand count must be at least 1, got {0}")]
    BadStrandCount(i64),
    #[error("letter {letter} out of range [1, {max}] for {n} strands")]
    LetterOutOfRange { letter: i64, max: usize, n: usize },
}

/// A positive braid word on `n` strands; letters are the 1-based indices of
/// the positive Artin generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BraidWord {
    pub n: usize,
    pub letters: Vec<usize>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<BraidWord, BraidError> {
        if n < 1 {
            return Err(BraidError::BadStrandCount(n as i64));
        }
        for &l in &letters {
            if l < 1 || l + 1 > n {
                return Err(BraidError::LetterOutOfRange { letter: l as i64, max: n.saturating_sub(1), n });
            }
        }
        Ok(BraidWord { n, letters })
    }

    /// Strand map of the word read left to right: `perm[p]` is the right-end
    /// position of the strand entering at left position `p` (1-based, padded
    /// with a dummy 0 entry).
    pub fn permutation(&self) -> Vec<usize> {
        let mut pos_of_strand: Vec<usize> = (0..=self.n).collect();
        for &k in &self.letters {
            // find the strands currently at positions k and k+1 and swap them
            let (mut at_k, mut at_k1) = (0, 0);
            for s in 1..=self.n {
                if pos_of_strand[s] == k {
                    at_k = s;
                }
                if pos_of_strand[s] == k + 1 {
                    at_k1 = s;
                }
            }
            pos_of_strand[at_k] = k + 1;
            pos_of_strand[at_k1] = k;
        }
        pos_of_strand
    }

    /// Cycles of the closure permutation; their number is the number of link
    /// components of either closure.
    pub fn closure_cycles(&self) -> Vec<Vec<usize>> {
        let perm = self.permutation();
        let mut seen = vec![false; self.n + 1];
        let mut cycles = Vec::new();
        for start in 1..=self.n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(cur);
                cur = perm[cur];
            }
            cycles.push(cycle);
        }
        cycles
    }

    pub fn is_connected_closure(&self) -> bool {
        self.closure_cycles().len() == 1
    }

    /// The canonical ascending half twist Δ = σ1 (σ2 σ1) ... (σ_{n-1} ... σ1).
    pub fn half_twist(n: usize) -> Vec<usize> {
        let mut w = Vec::new();
        for k in 1..n {
            for j in (1..=k).rev() {
                w.push(j);
            }
        }
        w
    }

    /// The word β Δ² used by the cylindrical closure.
    pub fn with_full_twist(&self) -> BraidWord {
        let mut letters = self.letters.clone();
        let delta = BraidWord::half_twist(self.n);
        letters.extend_from_slice(&delta);
        letters.extend_from_slice(&delta);
        BraidWord { n: self.n, letters }
    }
}

/// Parse `"<n>: <letters>"` where letters are space-separated generator
/// indices, each optionally carrying a `^k` repetition suffix.
pub fn parse_braid(text: &str) -> Result<BraidWord, BraidError> {
    let (head, tail) = text
        .split_once(':')
        .ok_or_else(|| BraidError::Malformed(text.to_string()))?;
    let n: i64 = head
        .trim()
        .parse()
        .map_err(|_| BraidError::Malformed(text.to_string()))?;
    if n < 1 {
        return Err(BraidError::BadStrandCount(n));
    }
    let n = n as usize;
    let mut letters = Vec::new();
    for tok in tail.split_whitespace() {
        let (base, reps) = match tok.split_once('^') {
            Some((b, r)) => {
                let reps: usize = r.parse().map_err(|_| BraidError::Malformed(text.to_string()))?;
                (b, reps)
            }
            None => (tok, 1),
        };
        let letter: i64 = base.parse().map_err(|_| BraidError::Malformed(text.to_string()))?;
        if letter < 1 || letter as usize + 1 > n {
            return Err(BraidError::LetterOutOfRange { letter, max: n.saturating_sub(1), n });
        }
        for _ in 0..reps {
            letters.push(letter as usize);
        }
    }
    BraidWord::new(n, letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_plain_word() {
        let b = parse_braid("2: 1 1 1").unwrap();
        assert_eq!(b, BraidWord { n: 2, letters: vec![1, 1, 1] });
    }

    #[test]
    fn parse_repetition_suffix() {
        let b = parse_braid("2: 1^5").unwrap();
        assert_eq!(b.letters, vec![1; 5]);
    }

    #[test]
    fn reject_out_of_range_letter() {
        assert!(matches!(
            parse_braid("3: 1 2 4"),
            Err(BraidError::LetterOutOfRange { letter: 4, .. })
        ));
    }

    #[test]
    fn reject_garbage() {
        assert!(parse_braid("no colon here").is_err());
        assert!(parse_braid("0: 1").is_err());
        assert!(parse_braid("2: x").is_err());
    }

    #[test]
    fn permutation_of_trefoil_word() {
        let b = parse_braid("2: 1^3").unwrap();
        let p = b.permutation();
        assert_eq!(&p[1..], &[2, 1]);
        assert!(b.is_connected_closure());
    }

    #[test]
    fn pure_braid_closure_disconnected() {
        let b = parse_braid("2: 1 1").unwrap();
        assert_eq!(b.closure_cycles().len(), 2);
        assert!(!b.is_connected_closure());
    }

    #[test]
    fn half_twist_words() {
        assert_eq!(BraidWord::half_twist(2), vec![1]);
        assert_eq!(BraidWord::half_twist(3), vec![1, 2, 1]);
        let b = parse_braid("2: 1^3").unwrap();
        assert_eq!(b.with_full_twist().letters, vec![1; 5]);
    }

    #[test]
    fn half_twist_permutation_reverses() {
        for n in 2..=5 {
            let b = BraidWord::new(n, BraidWord::half_twist(n)).unwrap();
            let p = b.permutation();
            for i in 1..=n {
                assert_eq!(p[i], n + 1 - i);
            }
        }
    }
}
