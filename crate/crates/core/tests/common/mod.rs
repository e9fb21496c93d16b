//! Brute-force oracles shared by the integration tests. None of these call
//! into the library code paths they are used to check.

#![allow(dead_code)]

use std::collections::BTreeSet;

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn gcd_i(a: i64, b: i64) -> i64 {
    gcd(a.unsigned_abs(), b.unsigned_abs()) as i64
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| (2..p).all(|k| p % k != 0)).collect()
}

/// Orbit sizes of the characters `j in Z/n` under multiplication by `group`.
fn character_orbit_sizes(n: u64, group: &[u64]) -> Vec<usize> {
    let mut seen = vec![false; n as usize];
    let mut sizes = Vec::new();
    for j in 0..n {
        if seen[j as usize] {
            continue;
        }
        let mut size = 0;
        for &u in group {
            let k = (u * j % n) as usize;
            if !seen[k] {
                seen[k] = true;
                size += 1;
            }
        }
        sizes.push(size);
    }
    sizes
}

/// `(r, c, q)` by enumerating characters of `Z_n` and their Galois orbits.
pub fn real_complex_rational_counts(n: u64) -> (u64, u64, u64) {
    let conj = if n == 1 { vec![1] } else { vec![1, n - 1] };
    let real = character_orbit_sizes(n, &conj);
    let r = real.len() as u64;
    let c = real.iter().filter(|&&s| s == 2).count() as u64;
    let units: Vec<u64> = (1..=n).filter(|&u| gcd(u, n) == 1).collect();
    let q = character_orbit_sizes(n, &units).len() as u64;
    (r, c, q)
}

/// Multiplicative order of `p` modulo `m` (1 when `m = 1`).
pub fn mult_order(p: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut x = p % m;
    let mut k = 1;
    while x != 1 {
        x = x * p % m;
        k += 1;
    }
    k
}

fn p_split(n: u64, p: u64) -> (u64, u64) {
    let (mut pa, mut m) = (1, n);
    while m % p == 0 {
        m /= p;
        pa *= p;
    }
    (pa, m)
}

/// Irreducible `Q_p`-representations of `Z_n`: `Phi_d` splits over `Q_p`
/// into `phi(d) / [Q_p(zeta_d) : Q_p]` factors, and for `d = p^a m` the
/// degree is `phi(p^a) * ord_m(p)`.
pub fn kp_by_degrees(n: u64, p: u64) -> u64 {
    (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| {
            let (pa, m) = p_split(d, p);
            euler_phi(d) / (euler_phi(pa) * mult_order(p, m))
        })
        .sum()
}

/// Irreducible `F_p`-representations: `Phi_d` for `d | n'` splits into
/// factors of degree `ord_d(p)`.
pub fn rp_by_degrees(n: u64, p: u64) -> u64 {
    let (_, n_prime) = p_split(n, p);
    (1..=n_prime)
        .filter(|d| n_prime % d == 0)
        .map(|d| euler_phi(d) / mult_order(p, d))
        .sum()
}

/// `rk K_{-1}(Z[Z_n])` from the degree oracles.
pub fn k_minus1_rank_oracle(n: u64) -> i64 {
    let (_, _, q) = real_complex_rational_counts(n);
    let local: i64 = primes_up_to(n)
        .into_iter()
        .filter(|p| n % p == 0)
        .map(|p| kp_by_degrees(n, p) as i64 - rp_by_degrees(n, p) as i64)
        .sum();
    1 - q as i64 + local
}

/// All strictly increasing chains of length `p + 1` by checking every
/// subset of nodes, sorted lexicographically.
pub fn chains_by_subsets(n: usize, less: &dyn Fn(usize, usize) -> bool, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != p + 1 {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let comparable = members
            .iter()
            .all(|&a| members.iter().all(|&b| a == b || less(a, b) || less(b, a)));
        if !comparable {
            continue;
        }
        let mut chain = members.clone();
        // elements with more predecessors inside the set come later
        chain.sort_by_key(|&a| members.iter().filter(|&&b| less(b, a)).count());
        out.push(chain);
    }
    out.sort();
    out
}

/// Standard reduction of a positive definite form to the reduced domain.
pub fn reduce_form(mut a: i64, mut b: i64, mut c: i64) -> (i64, i64, i64) {
    loop {
        if b > a || b <= -a {
            // translate b into (-a, a]
            let k = (a - b).div_euclid(2 * a);
            c += k * k * a + k * b;
            b += 2 * k * a;
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        if a == c && b < 0 {
            b = -b;
        }
        return (a, b, c);
    }
}

/// Class number by reducing every primitive positive definite form with
/// coefficients bounded by `|D|` and counting distinct results.
pub fn class_number_by_triples(d: i64) -> u64 {
    let bound = d.abs();
    let mut reduced = BTreeSet::new();
    for a in 1..=bound {
        for b in -bound..=bound {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c > bound || gcd_i(gcd_i(a, b), c) != 1 {
                continue;
            }
            reduced.insert(reduce_form(a, b, c));
        }
    }
    reduced.len() as u64
}
