//! Counts of irreducible representations of a finite cyclic group `Z_n`
//! over `R`, `Q`, `Q_p` and `F_p`.
//!
//! Complex irreducibles of `Z_n` are the characters `j in Z/n`. An
//! irreducible over a field `K` of characteristic zero (or prime to `n`)
//! corresponds to an orbit of `Z/n` under the image of
//! `Gal(K(zeta_n)/K)` in `(Z/n)^*`:
//!
//! * over `R` the image is `{+-1}`,
//! * over `Q` it is all of `(Z/n)^*`,
//! * over `F_p` (with `n' ` the prime-to-`p` part of `n`) it is `<p>` acting
//!   on `Z/n'`,
//! * over `Q_p`, writing `n = p^a * m` with `p` not dividing `m`,
//!   `Q_p(zeta_n) = Q_p(zeta_{p^a}) Q_p(zeta_m)` with the first factor
//!   totally ramified (full group `(Z/p^a)^*`) and the second unramified
//!   (generated by Frobenius `p`). The image is therefore
//!   `{ t : t mod m in <p> }` inside `(Z/n)^*`.
//!
//! `r`, `c` and `q` have closed forms; `k_p` and `r_p` are computed by
//! explicit orbit enumeration.

use std::collections::BTreeMap;

use num_integer::gcd;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("group order must be positive")]
    ZeroOrder,
    #[error("{0} is not prime")]
    NotPrime(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CyclicGroup(u64);

impl CyclicGroup {
    pub fn new(n: u64) -> Result<Self, RepError> {
        if n == 0 {
            return Err(RepError::ZeroOrder);
        }
        Ok(CyclicGroup(n))
    }

    pub fn order(&self) -> u64 {
        self.0
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Number of orbits of `Z/n` under multiplication by the unit group `units`.
///
/// `units` must be closed under multiplication mod `n`.
pub(crate) fn count_orbits(n: u64, units: &[u64]) -> u64 {
    let n_us = n as usize;
    let mut seen = vec![false; n_us];
    let mut orbits = 0;
    let mut covered = 0usize;
    for start in 0..n_us {
        if seen[start] {
            continue;
        }
        orbits += 1;
        for &u in units {
            let j = (start as u64 * u % n) as usize;
            if !seen[j] {
                seen[j] = true;
                covered += 1;
            }
        }
    }
    debug_assert_eq!(covered, n_us, "orbits must partition Z/n");
    orbits
}

/// Number of rational irreducibles: the divisors of `n`.
pub fn q_count(n: u64) -> u64 {
    assert!(n >= 1);
    (1..=n).filter(|d| n % d == 0).count() as u64
}

pub fn r_count(n: u64) -> u64 {
    assert!(n >= 1);
    if n % 2 == 1 {
        (n + 1) / 2
    } else {
        n / 2 + 1
    }
}

pub fn c_count(n: u64) -> u64 {
    assert!(n >= 1);
    if n % 2 == 1 {
        (n - 1) / 2
    } else {
        (n - 2) / 2
    }
}

fn split_p_part(n: u64, p: u64) -> (u64, u64) {
    let mut pa = 1;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        pa *= p;
    }
    (pa, m)
}

/// Powers of `p` modulo `m`.
fn cyclic_subgroup_mod(p: u64, m: u64) -> Vec<bool> {
    let mut member = vec![false; m as usize];
    let mut x = 1 % m;
    while !member[x as usize] {
        member[x as usize] = true;
        x = x * p % m;
    }
    member
}

pub fn kp_count(n: u64, p: u64) -> Result<u64, RepError> {
    if n == 0 {
        return Err(RepError::ZeroOrder);
    }
    if !is_prime(p) {
        return Err(RepError::NotPrime(p));
    }
    let (_, m) = split_p_part(n, p);
    let frob = cyclic_subgroup_mod(p, m);
    let decomposition: Vec<u64> = (0..n)
        .filter(|&t| gcd(t, n) == 1 && frob[(t % m) as usize])
        .collect();
    Ok(count_orbits(n, &decomposition))
}

pub fn rp_count(n: u64, p: u64) -> Result<u64, RepError> {
    if n == 0 {
        return Err(RepError::ZeroOrder);
    }
    if !is_prime(p) {
        return Err(RepError::NotPrime(p));
    }
    let (_, m) = split_p_part(n, p);
    let frob = cyclic_subgroup_mod(p, m);
    let powers: Vec<u64> = (0..m).filter(|&t| frob[t as usize]).collect();
    Ok(count_orbits(m, &powers))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LocalCounts {
    pub k_p: u64,
    pub r_p: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepCounts {
    pub n: u64,
    pub r: u64,
    pub c: u64,
    pub q: u64,
    /// Keyed by the primes dividing `n`.
    pub local: BTreeMap<u64, LocalCounts>,
}

pub fn rep_counts(g: CyclicGroup) -> RepCounts {
    let n = g.order();
    let local = prime_divisors(n)
        .into_iter()
        .map(|p| {
            let k_p = kp_count(n, p).expect("p is prime");
            let r_p = rp_count(n, p).expect("p is prime");
            (p, LocalCounts { k_p, r_p })
        })
        .collect();
    RepCounts {
        n,
        r: r_count(n),
        c: c_count(n),
        q: q_count(n),
        local,
    }
}
