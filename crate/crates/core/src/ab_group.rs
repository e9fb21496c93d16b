//! Finitely generated abelian groups with some summands left symbolic.
//!
//! `Z^r + Z/d_1 + ... + Z/d_k + sum m_i * TOKEN_i`. Torsion is kept in
//! invariant-factor form (`d_{i+1} | d_i`, largest first), so two
//! expressions for isomorphic known parts compare equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclic_reps::prime_divisors;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse abelian group term {term:?} in {input:?}")]
pub struct AbGroupParseError {
    pub input: String,
    pub term: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbGroupExpr {
    free_rank: u64,
    torsion: Vec<u64>,
    symbolic: BTreeMap<String, u64>,
}

fn invariant_factors(orders: impl IntoIterator<Item = u64>) -> Vec<u64> {
    // prime -> exponents, one per cyclic prime-power summand
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for n in orders {
        for p in prime_divisors(n) {
            let mut e = 0;
            let mut m = n;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            by_prime.entry(p).or_default().push(e);
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for (p, mut exps) in by_prime {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (i, e) in exps.into_iter().enumerate() {
            out[i] *= p.pow(e);
        }
    }
    out
}

impl AbGroupExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: u64) -> Self {
        AbGroupExpr {
            free_rank: rank,
            ..Self::default()
        }
    }

    /// `Z/n`; trivial for `n <= 1`.
    pub fn cyclic(n: u64) -> Self {
        AbGroupExpr {
            torsion: invariant_factors([n]),
            ..Self::default()
        }
    }

    pub fn symbol(token: impl Into<String>, multiplicity: u64) -> Self {
        let mut symbolic = BTreeMap::new();
        if multiplicity > 0 {
            symbolic.insert(token.into(), multiplicity);
        }
        AbGroupExpr {
            symbolic,
            ..Self::default()
        }
    }

    pub fn free_rank(&self) -> u64 {
        self.free_rank
    }

    /// Invariant factors, largest first.
    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn symbolic(&self) -> &BTreeMap<String, u64> {
        &self.symbolic
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty() && self.symbolic.is_empty()
    }

    /// Number of `Z/p^k` summands for the prime `p` in the known torsion.
    pub fn p_rank(&self, p: u64) -> usize {
        self.torsion.iter().filter(|&&d| d % p == 0).count()
    }

    pub fn direct_sum(&self, other: &AbGroupExpr) -> AbGroupExpr {
        let mut symbolic = self.symbolic.clone();
        for (tok, m) in &other.symbolic {
            *symbolic.entry(tok.clone()).or_insert(0) += m;
        }
        AbGroupExpr {
            free_rank: self.free_rank + other.free_rank,
            torsion: invariant_factors(self.torsion.iter().chain(&other.torsion).copied()),
            symbolic,
        }
    }

    /// `k` copies of `self`.
    pub fn times(&self, k: u64) -> AbGroupExpr {
        if k == 0 {
            return AbGroupExpr::zero();
        }
        AbGroupExpr {
            free_rank: self.free_rank * k,
            torsion: invariant_factors(
                self.torsion.iter().flat_map(|&d| std::iter::repeat_n(d, k as usize)),
            ),
            symbolic: self.symbolic.iter().map(|(t, m)| (t.clone(), m * k)).collect(),
        }
    }
}

impl Add for AbGroupExpr {
    type Output = AbGroupExpr;
    fn add(self, rhs: AbGroupExpr) -> AbGroupExpr {
        self.direct_sum(&rhs)
    }
}

impl std::iter::Sum for AbGroupExpr {
    fn sum<I: Iterator<Item = AbGroupExpr>>(iter: I) -> Self {
        iter.fold(AbGroupExpr::zero(), |acc, x| acc.direct_sum(&x))
    }
}

impl fmt::Display for AbGroupExpr {
    /// e.g. `Z^2 + Z/6 + Z/2 + 2*Wh_7(Z_5)`; the trivial group is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => terms.push("Z".into()),
            r => terms.push(format!("Z^{r}")),
        }
        terms.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        for (tok, m) in &self.symbolic {
            if *m == 1 {
                terms.push(tok.clone());
            } else {
                terms.push(format!("{m}*{tok}"));
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl FromStr for AbGroupExpr {
    type Err = AbGroupParseError;

    /// Inverse of `Display`. Terms are joined by `+`; each is `0`, `Z`,
    /// `Z^r`, `Z/n` or a symbolic token, optionally prefixed by `k*`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |term: &str| AbGroupParseError {
            input: s.to_string(),
            term: term.to_string(),
        };
        let mut out = AbGroupExpr::zero();
        for raw in s.split('+') {
            let term = raw.trim();
            if term.is_empty() {
                return Err(err(term));
            }
            let (mult, body) = match term.split_once('*') {
                Some((k, rest)) if k.trim().chars().all(|c| c.is_ascii_digit()) => {
                    (k.trim().parse::<u64>().map_err(|_| err(term))?, rest.trim())
                }
                _ => (1, term),
            };
            let piece = if body == "0" {
                AbGroupExpr::zero()
            } else if body == "Z" {
                AbGroupExpr::free(1)
            } else if let Some(r) = body.strip_prefix("Z^") {
                AbGroupExpr::free(r.trim().parse().map_err(|_| err(term))?)
            } else if let Some(n) = body.strip_prefix("Z/") {
                let n: u64 = n.trim().parse().map_err(|_| err(term))?;
                if n == 0 {
                    return Err(err(term));
                }
                AbGroupExpr::cyclic(n)
            } else if body.starts_with(|c: char| c.is_ascii_digit()) || body.contains(char::is_whitespace) {
                return Err(err(term));
            } else {
                AbGroupExpr::symbol(body, 1)
            };
            out = out.direct_sum(&piece.times(mult));
        }
        Ok(out)
    }
}
