//! Ranks of `K_q(Z[Z_n])` and `H_q(BZ_n; K(Z))`, and the Whitehead groups
//! of finite cyclic groups as far as they are determined here.
//!
//! The rank table for `K_q(Z[M])` (results of Bass, Carter and Jahren):
//!
//! | q                    | rank                                   |
//! |----------------------|----------------------------------------|
//! | q > 2, q = 1 mod 4   | r(M)                                   |
//! | q > 2, q = 3 mod 4   | c(M)                                   |
//! | 1                    | r(M) - q(M)                            |
//! | 0                    | 1                                      |
//! | -1                   | 1 - q(M) + sum_{p | \|M\|} (k_p - r_p) |
//! | otherwise            | 0                                      |

use serde::Serialize;

use crate::ab_group::AbGroupExpr;
use crate::cyclic_reps::{c_count, kp_count, prime_divisors, q_count, r_count, rp_count};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseLabel {
    Q1Mod4,
    Q3Mod4,
    Qis1,
    Qis0,
    QisMinus1,
    Zero,
}

impl CaseLabel {
    pub fn of(q: i64) -> CaseLabel {
        match q {
            1 => CaseLabel::Qis1,
            0 => CaseLabel::Qis0,
            -1 => CaseLabel::QisMinus1,
            q if q > 2 && q.rem_euclid(4) == 1 => CaseLabel::Q1Mod4,
            q if q > 2 && q.rem_euclid(4) == 3 => CaseLabel::Q3Mod4,
            _ => CaseLabel::Zero,
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            CaseLabel::Q1Mod4 => "q>2, q=1 mod 4",
            CaseLabel::Q3Mod4 => "q>2, q=3 mod 4",
            CaseLabel::Qis1 => "q=1",
            CaseLabel::Qis0 => "q=0",
            CaseLabel::QisMinus1 => "q=-1",
            CaseLabel::Zero => "otherwise",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankValue {
    pub value: u64,
    pub case_label: CaseLabel,
}

/// `sum_{p | n} (k_p(Z_n) - r_p(Z_n))`.
pub fn local_defect(n: u64) -> u64 {
    prime_divisors(n)
        .into_iter()
        .map(|p| kp_count(n, p).unwrap() - rp_count(n, p).unwrap())
        .sum()
}

pub fn rank_k_cyclic(n: u64, q: i64) -> RankValue {
    assert!(n >= 1, "group order must be positive");
    let case_label = CaseLabel::of(q);
    let value = match case_label {
        CaseLabel::Q1Mod4 => r_count(n),
        CaseLabel::Q3Mod4 => c_count(n),
        CaseLabel::Qis1 => r_count(n) - q_count(n),
        CaseLabel::Qis0 => 1,
        // k_p >= r_p and the total is a rank, so this never goes negative.
        CaseLabel::QisMinus1 => (1 + local_defect(n))
            .checked_sub(q_count(n))
            .expect("negative K_{-1} rank"),
        CaseLabel::Zero => 0,
    };
    RankValue { value, case_label }
}

/// Rank of `H_q(BM; K(Z))` for finite cyclic `M`: rationally this is
/// `K_q(Z) (x) Q`, of rank 1 at `q = 0` and `q = 1 mod 4, q > 2`.
pub fn rank_h_bm(n: u64, q: i64) -> u64 {
    assert!(n >= 1, "group order must be positive");
    u64::from(q == 0 || (q > 2 && q.rem_euclid(4) == 1))
}

pub fn sk1_token(n: u64) -> String {
    format!("SK1(Z_{n})")
}

pub fn wh0_token(n: u64) -> String {
    format!("Wh0(Z_{n})")
}

pub fn k_minus1_torsion_token(n: u64) -> String {
    format!("tors K_-1(Z[Z_{n}])")
}

pub fn wh_token(n: u64, q: i64) -> String {
    format!("Wh_{q}(Z_{n})")
}

/// `Wh_q(Z_n)` with unknown torsion left symbolic.
///
/// For `q >= 2` only the rank is known, so the whole group stays a token.
pub fn wh_cyclic(n: u64, q: i64) -> AbGroupExpr {
    assert!(n >= 1, "group order must be positive");
    if n == 1 {
        return AbGroupExpr::zero();
    }
    match q {
        1 => {
            let free = AbGroupExpr::free(rank_k_cyclic(n, 1).value);
            if n <= 6 {
                free
            } else {
                free + AbGroupExpr::symbol(sk1_token(n), 1)
            }
        }
        0 => {
            if n <= 4 {
                AbGroupExpr::zero()
            } else {
                AbGroupExpr::symbol(wh0_token(n), 1)
            }
        }
        -1 => k_minus1_cyclic(n),
        q if q < -1 => AbGroupExpr::zero(),
        q => AbGroupExpr::symbol(wh_token(n, q), 1),
    }
}

/// `K_{-1}(Z[Z_n])`: known free rank plus a symbolic 2-torsion part.
pub fn k_minus1_cyclic(n: u64) -> AbGroupExpr {
    if n == 1 {
        return AbGroupExpr::zero();
    }
    AbGroupExpr::free(rank_k_cyclic(n, -1).value) + AbGroupExpr::symbol(k_minus1_torsion_token(n), 1)
}
