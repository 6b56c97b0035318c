//! Stokes diagrams from formal irregular types: Galois orbits of the
//! exponential exponents, sampled branch curves on the circle of directions,
//! crossing detection with bisection refinement, the resulting cylindrical
//! braid word, and Newton polygon slopes of differential operators.
//!
//! An exponent g = Σ c_m t^{-m} lives on the N-fold cover t^N = u of the
//! puncture circle. Its branches over the u-circle are
//! θ ↦ Re g(ε^{1/N} e^{i(θ + 2πk)/N}); the deck transformation t ↦ ζ_N t
//! permutes branches cyclically, so an orbit of size n_o contributes n_o
//! front strands.

use crate::braidfront::BraidWord;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StokesError {
    #[error("malformed formal type: {0}")]
    Parse(String),
    #[error("exponent term t^-{0} must have m >= 1")]
    BadExponent(i64),
    #[error("degenerate formal type: branches {0} and {1} are tangential or coincident near θ = {2}")]
    Degenerate(usize, usize, f64),
    #[error("crossing ordering is inconsistent; increase the sample count")]
    Inconsistent,
}

/// Exact rational with i64 numerator/denominator, kept normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        let sign = if den < 0 { -1 } else { 1 };
        Rational { num: sign * num / g, den: sign * den / g }
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// A single exponent: terms c t^{-m} with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Exponent {
    /// (m, re, im) with m >= 1.
    pub terms: Vec<(u32, Rational, Rational)>,
}

impl Exponent {
    /// Re g(r e^{iφ}) for t = r e^{iφ}.
    fn real_part(&self, r: f64, phi: f64) -> f64 {
        let mut acc = 0.0;
        for &(m, re, im) in &self.terms {
            let rm = r.powi(-(m as i32));
            let (s, c) = (m as f64 * phi).sin_cos();
            // Re[(re + i im)(cos - i sin) r^-m]
            acc += rm * (re.as_f64() * c + im.as_f64() * s);
        }
        acc
    }

    /// Smallest k > 0 with σ^k g = g, where σ multiplies the coefficient of
    /// t^{-m} by ζ_N^{-mk}; this is lcm over terms of N / gcd(N, m).
    fn orbit_size(&self, big_n: u32) -> u32 {
        let mut k: u32 = 1;
        for &(m, re, im) in &self.terms {
            if re.num == 0 && im.num == 0 {
                continue;
            }
            let period = big_n / gcd(big_n as i64, m as i64) as u32;
            k = k * period / gcd(k as i64, period as i64) as u32;
        }
        k
    }

    /// σ^k g as a numeric branch comparison key at a reference radius.
    fn branch_values(&self, big_n: u32, k: u32, samples: usize) -> Vec<f64> {
        let r = 1.0;
        (0..samples)
            .map(|j| {
                let phi = (j as f64 / samples as f64 + k as f64 / big_n as f64) * std::f64::consts::TAU;
                self.real_part(r, phi)
            })
            .collect()
    }
}

/// A formal irregular type: ramification order N and a set of exponents.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormalType {
    pub big_n: u32,
    pub exponents: Vec<Exponent>,
}

/// Parse the text format `N=<int>` followed by one `g = <re>,<im> t^-<m>
/// [+ ...]` per entry; entries are separated by semicolons or newlines.
pub fn parse_formal_type(text: &str) -> Result<FormalType, StokesError> {
    let mut big_n: Option<u32> = None;
    let mut exponents = Vec::new();
    for raw in text.split([';', '\n']) {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("N=").or_else(|| line.strip_prefix("N =")) {
            let v: u32 = rest.trim().parse().map_err(|_| StokesError::Parse(line.to_string()))?;
            if v == 0 {
                return Err(StokesError::Parse("N must be positive".into()));
            }
            big_n = Some(v);
            continue;
        }
        let body = line
            .strip_prefix("g")
            .and_then(|s| s.trim_start().strip_prefix('='))
            .ok_or_else(|| StokesError::Parse(line.to_string()))?;
        let mut terms = Vec::new();
        for term in body.split('+') {
            let term = term.trim();
            if term.is_empty() {
                continue;
            }
            // "<re>,<im> t^-<m>"
            let (coeff, tail) = term
                .split_once(char::is_whitespace)
                .ok_or_else(|| StokesError::Parse(term.to_string()))?;
            let (re_s, im_s) = coeff.split_once(',').ok_or_else(|| StokesError::Parse(term.to_string()))?;
            let parse_rat = |s: &str| -> Result<Rational, StokesError> {
                let s = s.trim();
                if let Some((a, b)) = s.split_once('/') {
                    let num: i64 = a.trim().parse().map_err(|_| StokesError::Parse(s.to_string()))?;
                    let den: i64 = b.trim().parse().map_err(|_| StokesError::Parse(s.to_string()))?;
                    if den == 0 {
                        return Err(StokesError::Parse(s.to_string()));
                    }
                    Ok(Rational::new(num, den))
                } else {
                    let num: i64 = s.parse().map_err(|_| StokesError::Parse(s.to_string()))?;
                    Ok(Rational::new(num, 1))
                }
            };
            let re = parse_rat(re_s)?;
            let im = parse_rat(im_s)?;
            let m_s = tail
                .trim()
                .strip_prefix("t^-")
                .ok_or_else(|| StokesError::Parse(term.to_string()))?;
            let m: i64 = m_s.trim().parse().map_err(|_| StokesError::Parse(term.to_string()))?;
            if m < 1 {
                return Err(StokesError::BadExponent(m));
            }
            terms.push((m as u32, re, im));
        }
        exponents.push(Exponent { terms });
    }
    let big_n = big_n.ok_or_else(|| StokesError::Parse("missing N=<int>".into()))?;
    Ok(FormalType { big_n, exponents })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Orbit {
    /// Indices into the formal type's exponent list.
    pub members: Vec<usize>,
    pub size: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitReport {
    pub orbits: Vec<Orbit>,
    /// Whether N equals the lcm of the orbit sizes (the reduced case).
    pub reduced: bool,
}

const ORBIT_MATCH_TOL: f64 = 1e-9;

/// Partition the exponents into deck-transformation orbits. Orbit sizes are
/// exact (integer arithmetic); identification of distinct listed exponents
/// within one orbit compares sampled branch values.
pub fn galois_orbits(tau: &FormalType) -> OrbitReport {
    let n = tau.big_n;
    let probe = 64;
    let keys: Vec<Vec<Vec<f64>>> = tau
        .exponents
        .iter()
        .map(|g| (0..n).map(|k| g.branch_values(n, k, probe)).collect())
        .collect();
    let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < ORBIT_MATCH_TOL);

    let mut assigned = vec![false; tau.exponents.len()];
    let mut orbits = Vec::new();
    for i in 0..tau.exponents.len() {
        if assigned[i] {
            continue;
        }
        let mut members = vec![i];
        assigned[i] = true;
        for j in (i + 1)..tau.exponents.len() {
            if !assigned[j] && (0..n as usize).any(|k| close(&keys[i][k], &keys[j][0])) {
                members.push(j);
                assigned[j] = true;
            }
        }
        let size = tau.exponents[i].orbit_size(n);
        orbits.push(Orbit { members, size });
    }
    let lcm = orbits.iter().fold(1u32, |acc, o| acc * o.size / gcd(acc as i64, o.size as i64) as u32);
    OrbitReport { reduced: lcm == n, orbits }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StokesCrossing {
    pub theta: f64,
    /// Braid letter: the upper of the two adjacent levels that swap.
    pub level: usize,
    pub strands: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StokesDiagram {
    pub eps: f64,
    pub samples: usize,
    pub strands: usize,
    /// strand_values[s][j] = branch value at sample angle j.
    pub strand_values: Vec<Vec<f64>>,
    pub crossings: Vec<StokesCrossing>,
    pub word: BraidWord,
}

const BISECTION_STEPS: usize = 60;
const TRANSVERSALITY_TOL: f64 = 1e-9;

/// Sample the Stokes diagram of a formal type on the u-circle of radius
/// `eps` and read off the cylindrical braid word of its front.
pub fn stokes_braid(tau: &FormalType, eps: f64, samples: usize) -> Result<StokesDiagram, StokesError> {
    let n = tau.big_n;
    let report = galois_orbits(tau);
    // one representative per orbit; its orbit_size distinct branches
    let mut branches: Vec<(usize, u32)> = Vec::new();
    for orbit in &report.orbits {
        let rep = orbit.members[0];
        for k in 0..orbit.size {
            branches.push((rep, k));
        }
    }
    let strands = branches.len();
    let r = eps.powf(1.0 / n as f64);
    let value = |b: usize, theta: f64| -> f64 {
        let (g, k) = branches[b];
        let phi = (theta + std::f64::consts::TAU * k as f64) / n as f64;
        tau.exponents[g].real_part(r, phi)
    };

    let tau_full = std::f64::consts::TAU;
    let step = tau_full / samples as f64;
    let grid: Vec<Vec<f64>> = (0..strands)
        .map(|b| (0..samples).map(|j| value(b, j as f64 * step)).collect())
        .collect();

    // locate crossings of each branch pair by sign change + bisection
    let mut crossings: Vec<(f64, usize, usize)> = Vec::new();
    for b1 in 0..strands {
        for b2 in (b1 + 1)..strands {
            for j in 0..samples {
                let t0 = j as f64 * step;
                let t1 = t0 + step;
                let d0 = grid[b1][j] - grid[b2][j];
                let d1 = value(b1, t1) - value(b2, t1);
                if d0 == 0.0 {
                    return Err(StokesError::Degenerate(b1, b2, t0));
                }
                if d0.signum() * d1.signum() < 0.0 {
                    let (mut lo, mut hi, mut dlo) = (t0, t1, d0);
                    for _ in 0..BISECTION_STEPS {
                        let mid = 0.5 * (lo + hi);
                        let dm = value(b1, mid) - value(b2, mid);
                        if dm.signum() == dlo.signum() {
                            lo = mid;
                            dlo = dm;
                        } else {
                            hi = mid;
                        }
                    }
                    let theta = 0.5 * (lo + hi);
                    // transversality: the difference must clear the tolerance
                    // within the neighboring samples
                    let slope = (value(b1, theta + step) - value(b2, theta + step)).abs();
                    if slope < TRANSVERSALITY_TOL {
                        return Err(StokesError::Degenerate(b1, b2, theta));
                    }
                    crossings.push((theta, b1, b2));
                }
            }
        }
    }
    crossings.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    // order strands top to bottom at θ = 0 and replay the crossings
    let mut order: Vec<usize> = (0..strands).collect();
    order.sort_by(|&a, &b| grid[b][0].partial_cmp(&grid[a][0]).unwrap());
    let mut level_of = vec![0usize; strands];
    for (lvl, &b) in order.iter().enumerate() {
        level_of[b] = lvl + 1;
    }
    let mut word = Vec::new();
    let mut events = Vec::new();
    for &(theta, b1, b2) in &crossings {
        let (l1, l2) = (level_of[b1], level_of[b2]);
        if l1.abs_diff(l2) != 1 {
            return Err(StokesError::Inconsistent);
        }
        let upper = l1.min(l2);
        word.push(upper);
        events.push(StokesCrossing { theta, level: upper, strands: (b1, b2) });
        level_of.swap(b1, b2);
    }
    // monodromy closure: strand (g, k) continues as (g, k+1); final levels
    // must match the start levels after that relabeling
    let mut expected = vec![0usize; strands];
    for (b, &(g, k)) in branches.iter().enumerate() {
        let size = branches.iter().filter(|(g2, _)| *g2 == g).count() as u32;
        let succ = branches.iter().position(|&(g2, k2)| g2 == g && k2 == (k + 1) % size).unwrap();
        expected[b] = order.iter().position(|&x| x == succ).unwrap() + 1;
    }
    for (b, &exp_level) in expected.iter().enumerate() {
        if level_of[b] != exp_level {
            return Err(StokesError::Inconsistent);
        }
    }

    let braid = BraidWord::new(strands.max(1), word).map_err(|e| StokesError::Parse(e.to_string()))?;
    Ok(StokesDiagram {
        eps,
        samples,
        strands,
        strand_values: grid,
        crossings: events,
        word: braid,
    })
}

/// Positive slopes of the lower convex hull of the (δ-power, x-power) point
/// set of a differential operator, as exact rationals in increasing order.
pub fn newton_slopes(points: &[(i64, i64)]) -> Vec<Rational> {
    if points.is_empty() {
        return Vec::new();
    }
    let mut pts: Vec<(i64, i64)> = points.to_vec();
    pts.sort();
    pts.dedup();
    // keep only the lowest point per δ-power
    let mut lowest: Vec<(i64, i64)> = Vec::new();
    for &(x, y) in &pts {
        match lowest.last_mut() {
            Some(last) if last.0 == x => {
                if y < last.1 {
                    last.1 = y;
                }
            }
            _ => lowest.push((x, y)),
        }
    }
    // lower convex hull, left to right
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &p in &lowest {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // pop b when it lies above segment a-p
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull.windows(2)
        .filter(|w| w[1].1 > w[0].1)
        .map(|w| Rational::new(w[1].1 - w[0].1, w[1].0 - w[0].0))
        .collect()
}

/// The generalized Airy family: f'' = z^n f has formal type
/// {± 2/(n+2) x^{-(n+2)/2}} at infinity.
pub fn airy_formal_type(n: u32) -> FormalType {
    let p = n + 2;
    if p % 2 == 1 {
        // ramified: N = 2, exponents ± 2/p t^{-p}
        FormalType {
            big_n: 2,
            exponents: vec![
                Exponent { terms: vec![(p, Rational::new(2, p as i64), Rational::new(0, 1))] },
                Exponent { terms: vec![(p, Rational::new(-2, p as i64), Rational::new(0, 1))] },
            ],
        }
    } else {
        FormalType {
            big_n: 1,
            exponents: vec![
                Exponent { terms: vec![(p / 2, Rational::new(2, p as i64), Rational::new(0, 1))] },
                Exponent { terms: vec![(p / 2, Rational::new(-2, p as i64), Rational::new(0, 1))] },
            ],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_orbits() {
        let tau = parse_formal_type("N=2; g = 1,0 t^-1").unwrap();
        assert_eq!(tau.big_n, 2);
        let rep = galois_orbits(&tau);
        assert_eq!(rep.orbits.len(), 1);
        assert_eq!(rep.orbits[0].size, 2);
        assert!(rep.reduced);

        let tau1 = parse_formal_type("N=1\ng = 1,0 t^-1").unwrap();
        let rep1 = galois_orbits(&tau1);
        assert_eq!(rep1.orbits[0].size, 1);
    }

    #[test]
    fn airy_orbit_is_one_orbit_of_size_two() {
        let tau = airy_formal_type(1);
        let rep = galois_orbits(&tau);
        assert_eq!(rep.orbits.len(), 1);
        assert_eq!(rep.orbits[0].members.len(), 2);
        assert_eq!(rep.orbits[0].size, 2);
    }

    #[test]
    fn airy_family_gives_two_strand_braids() {
        for n in 1..=4u32 {
            let tau = airy_formal_type(n);
            let diag = stokes_braid(&tau, 0.5, 4096).unwrap();
            assert_eq!(diag.strands, 2, "n={n}");
            assert_eq!(diag.word.letters.len(), (n + 2) as usize, "n={n}");
            assert!(diag.word.letters.iter().all(|&l| l == 1));
        }
    }

    #[test]
    fn single_unramified_exponent_has_no_crossings() {
        let tau = parse_formal_type("N=1; g = 1,0 t^-1").unwrap();
        let diag = stokes_braid(&tau, 0.5, 1024).unwrap();
        assert_eq!(diag.strands, 1);
        assert!(diag.word.letters.is_empty());
    }

    #[test]
    fn two_branch_monomial_crossing_counts() {
        // c u^{-p/2} with p odd: p crossings
        for p in [3u32, 5, 7] {
            let tau = FormalType {
                big_n: 2,
                exponents: vec![
                    Exponent { terms: vec![(p, Rational::new(1, 1), Rational::new(0, 1))] },
                    Exponent { terms: vec![(p, Rational::new(-1, 1), Rational::new(0, 1))] },
                ],
            };
            let diag = stokes_braid(&tau, 0.5, 4096).unwrap();
            assert_eq!(diag.word.letters.len(), p as usize);
        }
    }

    #[test]
    fn crossing_angles_stable_under_refinement() {
        let tau = airy_formal_type(1);
        let d1 = stokes_braid(&tau, 0.5, 4096).unwrap();
        let d2 = stokes_braid(&tau, 0.5, 8192).unwrap();
        let d3 = stokes_braid(&tau, 0.25, 4096).unwrap();
        assert_eq!(d1.word.letters, d2.word.letters);
        assert_eq!(d1.word.letters, d3.word.letters);
        for (c1, c2) in d1.crossings.iter().zip(&d2.crossings) {
            assert!((c1.theta - c2.theta).abs() < 1e-8);
        }
    }

    #[test]
    fn degenerate_contact_rejected() {
        // ± sin branches touch a sample angle exactly at θ = 0
        let tau = FormalType {
            big_n: 1,
            exponents: vec![
                Exponent { terms: vec![(1, Rational::new(0, 1), Rational::new(1, 1))] },
                Exponent { terms: vec![(1, Rational::new(0, 1), Rational::new(-1, 1))] },
            ],
        };
        assert!(matches!(stokes_braid(&tau, 0.5, 512), Err(StokesError::Degenerate(..))));
    }

    #[test]
    fn newton_polygon_slopes() {
        // δ² + δ - x^{-3}: points (2,0), (1,0), (0,-3) -> slope 3/2
        let s = newton_slopes(&[(2, 0), (1, 0), (0, -3)]);
        assert_eq!(s, vec![Rational::new(3, 2)]);
        // δ² - x^{-4} -> slope 2
        let s2 = newton_slopes(&[(2, 0), (0, -4)]);
        assert_eq!(s2, vec![Rational::new(2, 1)]);
        // single column: no positive slope
        assert!(newton_slopes(&[(2, 0)]).is_empty());
        // airy family: δ² + δ - x^{-(n+2)} -> (n+2)/2
        for n in 1..=4i64 {
            let s = newton_slopes(&[(2, 0), (1, 0), (0, -(n + 2))]);
            assert_eq!(s, vec![Rational::new(n + 2, 2)]);
        }
    }

    #[test]
    fn rational_normalization() {
        assert_eq!(Rational::new(2, 4), Rational::new(1, 2));
        assert_eq!(Rational::new(1, -2), Rational::new(-1, 2));
        assert_eq!(Rational::new(3, 2).to_string(), "3/2");
        assert_eq!(Rational::new(4, 2).to_string(), "2");
    }
}
