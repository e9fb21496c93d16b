//! Whitehead groups and rational K-theory rank differences of `PSL_2(O_k)`
//! and `SL_2(O_k)` assembled from their maximal finite subgroups.
//!
//! The rank difference `rk K_q(Z[G]) - rk H_q(BG; K(Z))` is computed from
//!
//! ```text
//! sum_(M) rk K_q(Z[M]) - m    if q = 0, or q > 2 and q = 1 mod 4
//! sum_(M) rk K_q(Z[M])        otherwise
//! ```
//!
//! where `(M)` runs over conjugacy classes of maximal finite subgroups and
//! `m` is their number. [`rank_diff_case_table`] evaluates the same
//! quantity through the per-case closed forms in `r, c, q, k_p, r_p`; at
//! `q = -1` it uses `m - sum_(M) [q(M) - sum_{p | |M|} (k_p - r_p)]`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::ab_group::AbGroupExpr;
use crate::cyclic_reps::{c_count, kp_count, prime_divisors, q_count, r_count, rp_count};
use crate::finite_k::{k_minus1_cyclic, rank_k_cyclic, wh_cyclic, CaseLabel};
use crate::quad_field::{allowed_orders, FieldError, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssemblyError {
    #[error("no built-in conjugacy class data for Q(sqrt {d}); supply class counts explicitly (e.g. --classes 2:2,3:2)")]
    MissingClassData { d: u64 },
    #[error("the abelianization of the PSL_2 quotient is required for q = 1; supply it (e.g. --ab Z/6)")]
    MissingAbelianization,
    #[error("SL_2 Whitehead groups are only determined for q <= 1, got q = {0}")]
    QOutOfRange(i64),
    #[error("operation requires {expected} mode")]
    WrongMode { expected: Mode },
    #[error("Q(sqrt {d}) has no elements of order {order}; allowed orders are {allowed:?}")]
    OrderNotAllowed { d: u64, order: u64, allowed: Vec<u32> },
    #[error("invalid class count specification {spec:?}: {reason}")]
    InvalidClassSpec { spec: String, reason: String },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Number of conjugacy classes of maximal finite subgroups, by cyclic order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct ClassCounts {
    entries: BTreeMap<u64, u64>,
}

impl ClassCounts {
    pub fn new(entries: impl IntoIterator<Item = (u64, u64)>) -> Result<Self, AssemblyError> {
        let mut map = BTreeMap::new();
        for (order, count) in entries {
            let bad = |reason: String| AssemblyError::InvalidClassSpec {
                spec: format!("{order}:{count}"),
                reason,
            };
            if order < 2 {
                return Err(bad("orders must be at least 2".into()));
            }
            if count < 1 {
                return Err(bad("counts must be at least 1".into()));
            }
            if map.insert(order, count).is_some() {
                return Err(bad(format!("order {order} listed twice")));
            }
        }
        Ok(ClassCounts { entries: map })
    }

    pub fn empty() -> Self {
        ClassCounts::default()
    }

    /// Parses `order:count` pairs separated by commas, orders ascending.
    pub fn parse(spec: &str) -> Result<Self, AssemblyError> {
        let bad = |reason: &str| AssemblyError::InvalidClassSpec {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        if spec.trim().is_empty() {
            return Ok(ClassCounts::empty());
        }
        let mut pairs = Vec::new();
        for item in spec.split(',') {
            let (o, c) = item.trim().split_once(':').ok_or_else(|| bad("expected order:count"))?;
            let o: u64 = o.trim().parse().map_err(|_| bad("order is not a non-negative integer"))?;
            let c: u64 = c.trim().parse().map_err(|_| bad("count is not a non-negative integer"))?;
            if let Some(&(prev, _)) = pairs.last() {
                if o == prev {
                    return Err(bad("duplicate order"));
                }
                if o < prev {
                    return Err(bad("orders must be ascending"));
                }
            }
            pairs.push((o, c));
        }
        ClassCounts::new(pairs).map_err(|e| match e {
            AssemblyError::InvalidClassSpec { reason, .. } => bad(&reason),
            other => other,
        })
    }

    /// Total number of classes.
    pub fn m(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.entries.iter().map(|(&o, &c)| (o, c))
    }

    /// One order per class, ascending, with repetition.
    pub fn class_orders(&self) -> Vec<u64> {
        self.iter()
            .flat_map(|(o, c)| std::iter::repeat_n(o, c as usize))
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for ClassCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(o, c)| format!("{o}:{c}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Psl,
    Sl,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Psl => write!(f, "PSL"),
            Mode::Sl => write!(f, "SL"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSource {
    RealQuadratic(FieldSpec),
    Generic(String),
}

/// Where the class counts and abelianization came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DataOrigin {
    PaperTable,
    UserSupplied,
}

/// A Hilbert modular group (or any group with properties (M) and (NM)
/// whose maximal finite subgroups are cyclic), described by its class data.
///
/// `class_counts` always describes the maximal finite subgroups of the PSL
/// quotient; in SL mode the central `{+-I}` is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupData {
    pub source: GroupSource,
    pub class_counts: ClassCounts,
    pub abelianization: Option<AbGroupExpr>,
    pub mode: Mode,
    pub counts_origin: DataOrigin,
}

struct BuiltinEntry {
    d: u64,
    counts: &'static [(u64, u64)],
    /// `PSL_2(O_k)^ab`, when known.
    abelianization: Option<&'static str>,
}

/// `PSL_2(O_{Q(sqrt 5)})` has two classes each of `Z_2`, `Z_3`, `Z_5` and is perfect.
const BUILTIN: &[BuiltinEntry] = &[BuiltinEntry {
    d: 5,
    counts: &[(2, 2), (3, 2), (5, 2)],
    abelianization: Some("0"),
}];

fn builtin(d: u64) -> Option<&'static BuiltinEntry> {
    BUILTIN.iter().find(|e| e.d == d)
}

pub fn class_counts_for_field(f: &FieldSpec) -> Result<ClassCounts, AssemblyError> {
    let entry = builtin(f.d()).ok_or(AssemblyError::MissingClassData { d: f.d() })?;
    ClassCounts::new(entry.counts.iter().copied())
}

pub fn builtin_abelianization(f: &FieldSpec) -> Option<AbGroupExpr> {
    builtin(f.d())
        .and_then(|e| e.abelianization)
        .map(|s| s.parse().expect("built-in abelianization parses"))
}

fn check_orders(f: &FieldSpec, counts: &ClassCounts) -> Result<(), AssemblyError> {
    let allowed = allowed_orders(f)?;
    for (order, _) in counts.iter() {
        let ok = u32::try_from(order).is_ok_and(|o| allowed.contains(&o));
        if !ok {
            return Err(AssemblyError::OrderNotAllowed {
                d: f.d(),
                order,
                allowed: allowed.iter().copied().collect(),
            });
        }
    }
    Ok(())
}

impl GroupData {
    /// Built-in data for `Q(sqrt d)`.
    pub fn from_field(f: FieldSpec, mode: Mode) -> Result<Self, AssemblyError> {
        let class_counts = class_counts_for_field(&f)?;
        check_orders(&f, &class_counts)?;
        Ok(GroupData {
            source: GroupSource::RealQuadratic(f),
            class_counts,
            abelianization: builtin_abelianization(&f),
            mode,
            counts_origin: DataOrigin::PaperTable,
        })
    }

    /// User-supplied counts for `Q(sqrt d)`, checked against the orders of
    /// elliptic elements in the field.
    pub fn field_with_counts(
        f: FieldSpec,
        class_counts: ClassCounts,
        abelianization: Option<AbGroupExpr>,
        mode: Mode,
    ) -> Result<Self, AssemblyError> {
        check_orders(&f, &class_counts)?;
        let abelianization = abelianization.or_else(|| {
            // The built-in perfectness fact only applies to the built-in counts.
            class_counts_for_field(&f)
                .ok()
                .filter(|c| *c == class_counts)
                .and_then(|_| builtin_abelianization(&f))
        });
        Ok(GroupData {
            source: GroupSource::RealQuadratic(f),
            class_counts,
            abelianization,
            mode,
            counts_origin: DataOrigin::UserSupplied,
        })
    }

    pub fn generic(
        label: impl Into<String>,
        class_counts: ClassCounts,
        abelianization: Option<AbGroupExpr>,
        mode: Mode,
    ) -> Self {
        GroupData {
            source: GroupSource::Generic(label.into()),
            class_counts,
            abelianization,
            mode,
            counts_origin: DataOrigin::UserSupplied,
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn label(&self) -> String {
        match &self.source {
            GroupSource::RealQuadratic(f) => format!("{}_2(O_Q(sqrt {}))", self.mode, f.d()),
            GroupSource::Generic(l) => l.clone(),
        }
    }

    fn require(&self, mode: Mode) -> Result<(), AssemblyError> {
        if self.mode != mode {
            return Err(AssemblyError::WrongMode { expected: mode });
        }
        Ok(())
    }
}

/// `Wh_q(G) = sum_(M) Wh_q(M)` for `G` in PSL mode.
pub fn whitehead_psl(g: &GroupData, q: i64) -> Result<AbGroupExpr, AssemblyError> {
    g.require(Mode::Psl)?;
    Ok(psl_sum(&g.class_counts, q))
}

fn psl_sum(counts: &ClassCounts, q: i64) -> AbGroupExpr {
    counts.iter().map(|(n, c)| wh_cyclic(n, q).times(c)).sum()
}

/// `Wh_q(SL_2)` for `q <= 1`:
///
/// * `q = 1`: `Wh_1(PSL_2) + PSL_2^ab + Z/2`
/// * `q = 0`: `Wh_0(PSL_2) + Z`
/// * `q = -1`: `sum_(M) K_{-1}(Z[M])`
/// * `q < -1`: `0`
pub fn whitehead_sl(g: &GroupData, q: i64) -> Result<AbGroupExpr, AssemblyError> {
    g.require(Mode::Sl)?;
    match q {
        q if q > 1 => Err(AssemblyError::QOutOfRange(q)),
        1 => {
            let ab = g.abelianization.as_ref().ok_or(AssemblyError::MissingAbelianization)?;
            Ok(psl_sum(&g.class_counts, 1) + ab.clone() + AbGroupExpr::cyclic(2))
        }
        0 => Ok(psl_sum(&g.class_counts, 0) + AbGroupExpr::free(1)),
        -1 => Ok(g
            .class_counts
            .iter()
            .map(|(n, c)| k_minus1_cyclic(n).times(c))
            .sum()),
        _ => Ok(AbGroupExpr::zero()),
    }
}

fn subtracts_class_count(q: i64) -> bool {
    q == 0 || (q > 2 && q.rem_euclid(4) == 1)
}

/// `rk K_q(Z[G]) - rk H_q(BG; K(Z))` for `G` in PSL mode.
pub fn rank_diff(g: &GroupData, q: i64) -> Result<i64, AssemblyError> {
    g.require(Mode::Psl)?;
    let sum: i64 = g
        .class_counts
        .iter()
        .map(|(n, c)| (rank_k_cyclic(n, q).value * c) as i64)
        .sum();
    let m = g.class_counts.m() as i64;
    Ok(if subtracts_class_count(q) { sum - m } else { sum })
}

/// The same quantity as [`rank_diff`], evaluated case by case from the
/// representation counts.
pub fn rank_diff_case_table(g: &GroupData, q: i64) -> Result<i64, AssemblyError> {
    g.require(Mode::Psl)?;
    let m = g.class_counts.m() as i64;
    let over_classes = |f: &dyn Fn(u64) -> i64| -> i64 {
        g.class_counts.iter().map(|(n, c)| f(n) * c as i64).sum()
    };
    Ok(match CaseLabel::of(q) {
        CaseLabel::Q1Mod4 => over_classes(&|n| r_count(n) as i64) - m,
        CaseLabel::Q3Mod4 => over_classes(&|n| c_count(n) as i64),
        CaseLabel::Qis1 => over_classes(&|n| r_count(n) as i64 - q_count(n) as i64),
        CaseLabel::QisMinus1 => {
            m - over_classes(&|n| {
                let local: i64 = prime_divisors(n)
                    .into_iter()
                    .map(|p| kp_count(n, p).unwrap() as i64 - rp_count(n, p).unwrap() as i64)
                    .sum();
                q_count(n) as i64 - local
            })
        }
        CaseLabel::Qis0 | CaseLabel::Zero => 0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankRow {
    pub q: i64,
    pub rank_diff: i64,
    pub case: CaseLabel,
}

pub fn rank_table(g: &GroupData, qs: &[i64]) -> Result<Vec<RankRow>, AssemblyError> {
    qs.iter()
        .map(|&q| {
            Ok(RankRow {
                q,
                rank_diff: rank_diff(g, q)?,
                case: CaseLabel::of(q),
            })
        })
        .collect()
}
