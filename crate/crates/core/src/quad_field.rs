//! Real quadratic fields `Q(sqrt d)` and their elliptic traces.
//!
//! Elements are stored as `a + b*sqrt(d)` with rational `a`, `b`. The two
//! real embeddings fix `a` and send `b` to `b` or `-b`.
//!
//! A non-identity element of `PSL_2(O_k)` has finite order exactly when its
//! trace `t` satisfies `sigma_i(t)^2 < 4` in both embeddings. Such a trace is
//! `+-2cos(pi*k/n)` with `gcd(k, n) = 1`, where `n` is the order in `PSL_2`.
//!
//! # Enumeration bound
//!
//! Write `t = x + y*omega` with integers `x`, `y`, and let `D` be the field
//! discriminant (`d` when `d = 1 mod 4`, `4d` otherwise). Then
//! `sigma_1(t) - sigma_2(t) = y*sqrt(D)` and `sigma_1(t) + sigma_2(t) =
//! 2x + y*Tr(omega)`. Both embeddings in `(-2, 2)` forces
//! `|y*sqrt(D)| < 4`, i.e. `y^2 * D <= 15`, and `|2x + y*Tr(omega)| <= 3`.
//! These give finite integer boxes; every point in them is then tested
//! exactly.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact_arith::Rational;

/// Default largest PSL_2 order tested by [`order_from_trace`].
pub const DEFAULT_ORDER_BOUND: u32 = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("d must be at least 2, got {0}")]
    TooSmall(u64),
    #[error("{d} is not square-free (divisible by {square})")]
    NotSquareFree { d: u64, square: u64 },
    #[error("{0} is not an algebraic integer")]
    NotIntegral(String),
    #[error("{0} is not an elliptic trace")]
    NotElliptic(String),
    #[error("elliptic trace {0} matched no order up to the bound")]
    UnmatchedTrace(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum OmegaKind {
    /// `omega = sqrt(d)`, for `d = 2, 3 mod 4`.
    SqrtD,
    /// `omega = (1 + sqrt(d))/2`, for `d = 1 mod 4`.
    HalfOnePlusSqrtD,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    d: u64,
    omega_kind: OmegaKind,
}

impl FieldSpec {
    pub fn new(d: u64) -> Result<Self, FieldError> {
        if d < 2 {
            return Err(FieldError::TooSmall(d));
        }
        if let Some(square) = square_factor(d) {
            return Err(FieldError::NotSquareFree { d, square });
        }
        let omega_kind = if d % 4 == 1 {
            OmegaKind::HalfOnePlusSqrtD
        } else {
            OmegaKind::SqrtD
        };
        Ok(FieldSpec { d, omega_kind })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn omega_kind(&self) -> OmegaKind {
        self.omega_kind
    }

    pub fn discriminant(&self) -> u64 {
        match self.omega_kind {
            OmegaKind::HalfOnePlusSqrtD => self.d,
            OmegaKind::SqrtD => 4 * self.d,
        }
    }

    pub fn omega(&self) -> QuadElem {
        match self.omega_kind {
            OmegaKind::SqrtD => QuadElem::new(*self, Rational::zero(), Rational::one()),
            OmegaKind::HalfOnePlusSqrtD => {
                let half = Rational::new(1, 2).unwrap();
                QuadElem::new(*self, half.clone(), half)
            }
        }
    }

    /// `x + y*omega`.
    pub fn from_basis(&self, x: i64, y: i64) -> QuadElem {
        let x = QuadElem::rational(*self, Rational::from(x));
        let y = QuadElem::rational(*self, Rational::from(y));
        &x + &(&y * &self.omega())
    }

    /// Human-readable integral basis, e.g. `1, (1+sqrt(5))/2`.
    pub fn integral_basis(&self) -> String {
        match self.omega_kind {
            OmegaKind::SqrtD => format!("1, sqrt({})", self.d),
            OmegaKind::HalfOnePlusSqrtD => format!("1, (1+sqrt({}))/2", self.d),
        }
    }
}

/// Smallest prime `p` with `p^2 | n`, by trial division.
fn square_factor(n: u64) -> Option<u64> {
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return Some(p);
            }
        }
        p += 1;
    }
    None
}

pub fn is_square_free(n: u64) -> bool {
    n >= 1 && square_factor(n).is_none()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    a: Rational,
    b: Rational,
    field: FieldSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Embedding {
    /// `sqrt(d) -> sqrt(d)`
    First,
    /// `sqrt(d) -> -sqrt(d)`
    Second,
}

impl Embedding {
    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(Embedding::First),
            2 => Some(Embedding::Second),
            _ => None,
        }
    }
}

/// The image of an element under one real embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedded {
    /// The image, as an element of the same field.
    pub exact: QuadElem,
    /// Decimal value of the image under the identity embedding (approximate).
    pub approx: f64,
}

impl QuadElem {
    pub fn new(field: FieldSpec, a: Rational, b: Rational) -> Self {
        QuadElem { a, b, field }
    }

    pub fn rational(field: FieldSpec, a: Rational) -> Self {
        QuadElem::new(field, a, Rational::zero())
    }

    pub fn integer(field: FieldSpec, a: i64) -> Self {
        QuadElem::rational(field, Rational::from(a))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conjugate(&self) -> QuadElem {
        QuadElem::new(self.field, self.a.clone(), -&self.b)
    }

    /// `x + conj(x) = 2a`.
    pub fn trace(&self) -> Rational {
        &self.a + &self.a
    }

    /// `x * conj(x) = a^2 - b^2 d`.
    pub fn norm(&self) -> Rational {
        let d = Rational::from(self.field.d as i64);
        &(&self.a * &self.a) - &(&(&self.b * &self.b) * &d)
    }

    /// Coordinates `(x, y)` with `self = x + y*omega`, if both are integers.
    pub fn basis_coords(&self) -> Option<(BigInt, BigInt)> {
        let (x, y) = match self.field.omega_kind {
            OmegaKind::SqrtD => (self.a.clone(), self.b.clone()),
            OmegaKind::HalfOnePlusSqrtD => {
                let y = &self.b + &self.b;
                (&self.a - &self.b, y)
            }
        };
        if x.is_integer() && y.is_integer() {
            Some((x.numer().clone(), y.numer().clone()))
        } else {
            None
        }
    }

    /// Exact sign of the real number `a + b*sqrt(d)`.
    ///
    /// This is the only place an irrational quantity is compared: when `a` and
    /// `b` have opposite signs the larger of `a^2` and `b^2 d` wins.
    pub fn sign(&self) -> Ordering {
        let sa = self.a.signum();
        let sb = self.b.signum();
        let s = if sb == 0 {
            sa
        } else if sa == 0 || sa == sb {
            sb
        } else {
            let a2 = &self.a * &self.a;
            let b2d = &(&self.b * &self.b) * &Rational::from(self.field.d as i64);
            match a2.cmp(&b2d) {
                Ordering::Greater => sa,
                Ordering::Less => sb,
                // a^2 = b^2 d with b != 0 would make d a rational square.
                Ordering::Equal => unreachable!("d is square-free"),
            }
        };
        s.cmp(&0)
    }

    /// Compares the values under the identity embedding.
    pub fn cmp_real(&self, other: &QuadElem) -> Ordering {
        (self - other).sign()
    }

    /// Exact test of `|a + b*sqrt(d)| < bound`.
    pub fn abs_lt(&self, bound: &Rational) -> bool {
        let c = QuadElem::rational(self.field, bound.clone());
        (self - &c).sign() == Ordering::Less && (self + &c).sign() == Ordering::Greater
    }

    pub fn to_f64_approx(&self) -> f64 {
        self.a.to_f64_approx() + self.b.to_f64_approx() * (self.field.d as f64).sqrt()
    }

    pub fn eval_poly(&self, coeffs: &[BigInt]) -> QuadElem {
        let mut acc = QuadElem::integer(self.field, 0);
        for c in coeffs.iter().rev() {
            acc = &(&acc * self) + &QuadElem::rational(self.field, Rational::from(c.clone()));
        }
        acc
    }
}

impl fmt::Display for QuadElem {
    /// `a + b*sqrt(d)` with zero parts omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.field.d;
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt({})", self.b, d),
            (false, false) => {
                if self.b.signum() < 0 {
                    write!(f, "{} - {}*sqrt({})", self.a, self.b.abs(), d)
                } else {
                    write!(f, "{} + {}*sqrt({})", self.a, self.b, d)
                }
            }
        }
    }
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in Q(sqrt {})", self, self.field.d)
    }
}

impl<'a> Add<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: &'a QuadElem) -> QuadElem {
        assert_eq!(self.field, rhs.field, "mixed fields");
        QuadElem::new(self.field, &self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'a> Sub<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: &'a QuadElem) -> QuadElem {
        assert_eq!(self.field, rhs.field, "mixed fields");
        QuadElem::new(self.field, &self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'a> Mul<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: &'a QuadElem) -> QuadElem {
        assert_eq!(self.field, rhs.field, "mixed fields");
        let d = Rational::from(self.field.d as i64);
        let a = &(&self.a * &rhs.a) + &(&(&self.b * &rhs.b) * &d);
        let b = &(&self.a * &rhs.b) + &(&self.b * &rhs.a);
        QuadElem::new(self.field, a, b)
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem::new(self.field, -&self.a, -&self.b)
    }
}

/// True iff `x` lies in `O_k`, i.e. its trace and norm are rational integers.
pub fn is_algebraic_integer(x: &QuadElem) -> bool {
    x.trace().is_integer() && x.norm().is_integer()
}

pub fn embed(x: &QuadElem, which: Embedding) -> Embedded {
    let exact = match which {
        Embedding::First => x.clone(),
        Embedding::Second => x.conjugate(),
    };
    let approx = exact.to_f64_approx();
    Embedded { exact, approx }
}

/// Both embeddings of `t` lie strictly inside `(-2, 2)`.
pub fn is_elliptic_trace(t: &QuadElem) -> Result<bool, FieldError> {
    if !is_algebraic_integer(t) {
        return Err(FieldError::NotIntegral(t.to_string()));
    }
    let two = Rational::from(2);
    Ok(t.abs_lt(&two) && t.conjugate().abs_lt(&two))
}

/// Integer polynomial, coefficients from the constant term up.
type Poly = Vec<BigInt>;

fn poly_trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(p: &[BigInt], q: &[BigInt]) -> Poly {
    let mut out = vec![BigInt::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    poly_trim(out)
}

/// Exact quotient by a monic divisor. Panics on a nonzero remainder.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Poly {
    assert!(den.last().is_some_and(One::is_one), "divisor must be monic");
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        assert!(rem.iter().all(Zero::is_zero));
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[k + j] -= &c * dc;
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    poly_trim(quot)
}

/// Cyclotomic polynomials `Phi_1 .. Phi_max` (index 0 unused).
fn cyclotomic_table(max: usize) -> Vec<Poly> {
    let mut table: Vec<Poly> = vec![vec![]; max + 1];
    for n in 1..=max {
        let mut num = vec![BigInt::zero(); n + 1];
        num[0] = BigInt::from(-1);
        num[n] = BigInt::one();
        let mut den: Poly = vec![BigInt::one()];
        for d in 1..n {
            if n % d == 0 {
                den = poly_mul(&den, &table[d]);
            }
        }
        table[n] = poly_div_exact(&num, &den);
    }
    table
}

/// Minimal polynomial of `2cos(2*pi/n)` from the palindromic `Phi_n`.
fn real_cyclotomic(n: usize, phi: &[BigInt]) -> Poly {
    match n {
        1 => vec![BigInt::from(-2), BigInt::one()],
        2 => vec![BigInt::from(2), BigInt::one()],
        _ => {
            // Phi_n(x) / x^m = c_m + sum_j c_{m+j} (x^j + x^-j), and
            // x^j + x^-j = D_j(x + 1/x) with D_0 = 2, D_1 = y.
            let m = (phi.len() - 1) / 2;
            let mut dickson: Vec<Poly> = vec![vec![BigInt::from(2)], vec![BigInt::zero(), BigInt::one()]];
            for j in 2..=m {
                let shifted: Poly = std::iter::once(BigInt::zero())
                    .chain(dickson[j - 1].iter().cloned())
                    .collect();
                let mut next = shifted;
                for (k, c) in dickson[j - 2].iter().enumerate() {
                    next[k] -= c;
                }
                dickson.push(poly_trim(next));
            }
            let mut psi = vec![BigInt::zero(); m + 1];
            psi[0] += &phi[m];
            for j in 1..=m {
                for (k, c) in dickson[j].iter().enumerate() {
                    psi[k] += &phi[m + j] * c;
                }
            }
            poly_trim(psi)
        }
    }
}

/// Minimal polynomials of `2cos(pi/n)` for PSL_2 orders `n = 2..=bound`.
///
/// An elliptic trace `t` has order `n` iff `t` or `-t` is a root of the
/// entry for `n`.
#[derive(Debug, Clone)]
pub struct TraceOrderTable {
    bound: u32,
    polys: Vec<(u32, Poly)>,
}

impl TraceOrderTable {
    pub fn new(bound: u32) -> Self {
        let bound = bound.max(2);
        let cyclo = cyclotomic_table(2 * bound as usize);
        let polys = (2..=bound)
            .map(|n| {
                let big_n = 2 * n as usize;
                (n, real_cyclotomic(big_n, &cyclo[big_n]))
            })
            .collect();
        TraceOrderTable { bound, polys }
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// Coefficients of the minimal polynomial of `2cos(pi/n)`.
    pub fn min_poly(&self, n: u32) -> Option<&[BigInt]> {
        self.polys.iter().find(|(k, _)| *k == n).map(|(_, p)| p.as_slice())
    }

    pub fn order_of(&self, t: &QuadElem) -> Result<TraceOrder, FieldError> {
        if !is_elliptic_trace(t)? {
            return Err(FieldError::NotElliptic(t.to_string()));
        }
        let neg = -t;
        for (n, poly) in &self.polys {
            if t.eval_poly(poly).is_zero() || neg.eval_poly(poly).is_zero() {
                return Ok(TraceOrder::Finite(*n));
            }
        }
        Ok(TraceOrder::NotFiniteOrder)
    }
}

pub fn default_order_table() -> &'static TraceOrderTable {
    static TABLE: OnceLock<TraceOrderTable> = OnceLock::new();
    TABLE.get_or_init(|| TraceOrderTable::new(DEFAULT_ORDER_BOUND))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceOrder {
    Finite(u32),
    NotFiniteOrder,
}

pub fn order_from_trace(t: &QuadElem) -> Result<TraceOrder, FieldError> {
    default_order_table().order_of(t)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceCandidate {
    pub trace: QuadElem,
    pub psl_order: u32,
}

/// Every elliptic trace in `O_k` with its PSL_2 order, sorted by the value
/// of the trace under the identity embedding.
pub fn elliptic_trace_candidates(f: &FieldSpec) -> Result<Vec<TraceCandidate>, FieldError> {
    let disc = f.discriminant() as i64;
    let tr_omega: i64 = match f.omega_kind {
        OmegaKind::SqrtD => 0,
        OmegaKind::HalfOnePlusSqrtD => 1,
    };
    let y_max = (15 / disc).sqrt();
    let mut out = Vec::new();
    for y in -y_max..=y_max {
        // |2x + y*tr(omega)| <= 3
        let x_lo = -(3 + y * tr_omega).div_euclid(2);
        let x_hi = (3 - y * tr_omega).div_euclid(2);
        for x in x_lo..=x_hi {
            let t = f.from_basis(x, y);
            if !is_elliptic_trace(&t)? {
                continue;
            }
            match order_from_trace(&t)? {
                TraceOrder::Finite(n) => out.push(TraceCandidate { trace: t, psl_order: n }),
                TraceOrder::NotFiniteOrder => return Err(FieldError::UnmatchedTrace(t.to_string())),
            }
        }
    }
    out.sort_by(|p, q| p.trace.cmp_real(&q.trace));
    Ok(out)
}

/// Orders of nontrivial finite-order elements of `PSL_2(O_k)`.
pub fn allowed_orders(f: &FieldSpec) -> Result<BTreeSet<u32>, FieldError> {
    Ok(elliptic_trace_candidates(f)?
        .into_iter()
        .map(|c| c.psl_order)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(d: u64) -> FieldSpec {
        FieldSpec::new(d).unwrap()
    }

    fn elem(d: u64, a: (i64, i64), b: (i64, i64)) -> QuadElem {
        QuadElem::new(field(d), Rational::new(a.0, a.1).unwrap(), Rational::new(b.0, b.1).unwrap())
    }

    #[test]
    fn field_spec_validation() {
        assert_eq!(FieldSpec::new(1), Err(FieldError::TooSmall(1)));
        assert_eq!(FieldSpec::new(12), Err(FieldError::NotSquareFree { d: 12, square: 2 }));
        assert_eq!(FieldSpec::new(45), Err(FieldError::NotSquareFree { d: 45, square: 3 }));
        assert_eq!(field(5).omega_kind(), OmegaKind::HalfOnePlusSqrtD);
        assert_eq!(field(2).omega_kind(), OmegaKind::SqrtD);
        assert_eq!(field(3).omega_kind(), OmegaKind::SqrtD);
        assert_eq!(field(13).discriminant(), 13);
        assert_eq!(field(7).discriminant(), 28);
    }

    #[test]
    fn algebraic_integers() {
        assert!(is_algebraic_integer(&elem(5, (1, 2), (1, 2))));
        assert!(!is_algebraic_integer(&elem(5, (1, 2), (0, 1))));
        assert!(is_algebraic_integer(&elem(2, (0, 1), (1, 1))));
        assert!(!is_algebraic_integer(&elem(2, (1, 2), (1, 2))));
        assert!(!is_algebraic_integer(&elem(3, (1, 2), (1, 2))));
        assert!(!is_algebraic_integer(&elem(7, (0, 1), (1, 3))));
    }

    #[test]
    fn basis_coordinates() {
        let f = field(5);
        let t = f.from_basis(-1, 1);
        assert_eq!(t, elem(5, (-1, 2), (1, 2)));
        assert_eq!(t.basis_coords(), Some((BigInt::from(-1), BigInt::from(1))));
        assert_eq!(elem(5, (1, 2), (0, 1)).basis_coords(), None);
    }

    #[test]
    fn embeddings() {
        let s5 = elem(5, (0, 1), (1, 1));
        let e2 = embed(&s5, Embedding::Second);
        assert_eq!(e2.exact, elem(5, (0, 1), (-1, 1)));
        assert!((e2.approx + 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(embed(&s5, Embedding::First).exact, s5);
        let three = QuadElem::integer(field(5), 3);
        assert_eq!(embed(&three, Embedding::Second).exact, three);
        let x = elem(7, (3, 4), (-2, 5));
        let prod = &embed(&x, Embedding::First).exact * &embed(&x, Embedding::Second).exact;
        assert!(prod.b().is_zero());
        assert_eq!(*prod.a(), x.norm());
    }

    #[test]
    fn exact_sign() {
        // 2 - sqrt(5) < 0, 3 - sqrt(5) > 0, -2 + sqrt(3) < 0
        assert_eq!(elem(5, (2, 1), (-1, 1)).sign(), Ordering::Less);
        assert_eq!(elem(5, (3, 1), (-1, 1)).sign(), Ordering::Greater);
        assert_eq!(elem(3, (-2, 1), (1, 1)).sign(), Ordering::Less);
        assert_eq!(elem(3, (0, 1), (0, 1)).sign(), Ordering::Equal);
        // (1+sqrt 5)/2 ~ 1.618 < 2 but (3+sqrt 5)/2 ~ 2.618 > 2
        assert!(elem(5, (1, 2), (1, 2)).abs_lt(&Rational::from(2)));
        assert!(!elem(5, (3, 2), (1, 2)).abs_lt(&Rational::from(2)));
    }

    #[test]
    fn elliptic_traces() {
        assert_eq!(is_elliptic_trace(&elem(5, (1, 2), (1, 2))), Ok(true));
        assert_eq!(is_elliptic_trace(&QuadElem::integer(field(5), 3)), Ok(false));
        assert_eq!(is_elliptic_trace(&QuadElem::integer(field(5), 2)), Ok(false));
        assert_eq!(is_elliptic_trace(&elem(2, (0, 1), (1, 1))), Ok(true));
        // 1 + sqrt 2 ~ 2.414 fails in the first embedding
        assert_eq!(is_elliptic_trace(&elem(2, (1, 1), (1, 1))), Ok(false));
        // (3 - sqrt 5)/2 ~ 0.38 but its conjugate ~ 2.62
        assert_eq!(is_elliptic_trace(&elem(5, (3, 2), (-1, 2))), Ok(false));
        assert!(matches!(is_elliptic_trace(&elem(5, (1, 2), (0, 1))), Err(FieldError::NotIntegral(_))));
    }

    #[test]
    fn real_cyclotomic_polynomials() {
        let t = TraceOrderTable::new(6);
        let ints = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        assert_eq!(t.min_poly(2).unwrap(), ints(&[0, 1]).as_slice());
        assert_eq!(t.min_poly(3).unwrap(), ints(&[-1, 1]).as_slice());
        assert_eq!(t.min_poly(4).unwrap(), ints(&[-2, 0, 1]).as_slice());
        assert_eq!(t.min_poly(5).unwrap(), ints(&[-1, -1, 1]).as_slice());
        assert_eq!(t.min_poly(6).unwrap(), ints(&[-3, 0, 1]).as_slice());
    }

    #[test]
    fn real_cyclotomic_roots_numerically() {
        let t = TraceOrderTable::new(DEFAULT_ORDER_BOUND);
        for n in 2..=DEFAULT_ORDER_BOUND {
            let p = t.min_poly(n).unwrap();
            let x = 2.0 * (std::f64::consts::PI / n as f64).cos();
            let v: f64 = p.iter().rev().fold(0.0, |acc, c| {
                acc * x + c.to_string().parse::<f64>().unwrap()
            });
            assert!(v.abs() < 1e-6, "n={n} residual {v}");
            assert_eq!(p.len() - 1, phi(2 * n as u64) as usize / 2, "degree for n={n}");
        }
    }

    fn phi(n: u64) -> u64 {
        (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count() as u64
    }

    #[test]
    fn orders_from_traces() {
        let f5 = field(5);
        assert_eq!(order_from_trace(&QuadElem::integer(f5, 0)), Ok(TraceOrder::Finite(2)));
        assert_eq!(order_from_trace(&QuadElem::integer(f5, 1)), Ok(TraceOrder::Finite(3)));
        assert_eq!(order_from_trace(&QuadElem::integer(f5, -1)), Ok(TraceOrder::Finite(3)));
        assert_eq!(order_from_trace(&elem(5, (1, 2), (1, 2))), Ok(TraceOrder::Finite(5)));
        assert_eq!(order_from_trace(&elem(5, (-1, 2), (1, 2))), Ok(TraceOrder::Finite(5)));
        assert_eq!(order_from_trace(&elem(2, (0, 1), (1, 1))), Ok(TraceOrder::Finite(4)));
        assert_eq!(order_from_trace(&elem(3, (0, 1), (-1, 1))), Ok(TraceOrder::Finite(6)));
        assert!(matches!(order_from_trace(&QuadElem::integer(f5, 2)), Err(FieldError::NotElliptic(_))));
    }

    #[test]
    fn candidates_for_sqrt5() {
        let f = field(5);
        let got: Vec<QuadElem> = elliptic_trace_candidates(&f).unwrap().into_iter().map(|c| c.trace).collect();
        let mut want = vec![
            QuadElem::integer(f, 0),
            QuadElem::integer(f, 1),
            QuadElem::integer(f, -1),
            elem(5, (1, 2), (1, 2)),
            elem(5, (-1, 2), (-1, 2)),
            elem(5, (1, 2), (-1, 2)),
            elem(5, (-1, 2), (1, 2)),
        ];
        want.sort_by(|p, q| p.cmp_real(q));
        assert_eq!(got, want);
    }

    #[test]
    fn candidates_small_fields() {
        let f2 = field(2);
        let c2 = elliptic_trace_candidates(&f2).unwrap();
        assert!(c2.iter().any(|c| c.trace == elem(2, (0, 1), (1, 1)) && c.psl_order == 4));
        assert!(c2.iter().any(|c| c.trace == elem(2, (0, 1), (-1, 1))));
        let f7 = field(7);
        let c7: Vec<QuadElem> = elliptic_trace_candidates(&f7).unwrap().into_iter().map(|c| c.trace).collect();
        assert_eq!(c7, vec![QuadElem::integer(f7, -1), QuadElem::integer(f7, 0), QuadElem::integer(f7, 1)]);
    }

    #[test]
    fn allowed_order_examples() {
        assert_eq!(allowed_orders(&field(5)).unwrap(), BTreeSet::from([2, 3, 5]));
        assert_eq!(allowed_orders(&field(2)).unwrap(), BTreeSet::from([2, 3, 4]));
        assert_eq!(allowed_orders(&field(7)).unwrap(), BTreeSet::from([2, 3]));
        assert_eq!(allowed_orders(&field(3)).unwrap(), BTreeSet::from([2, 3, 6]));
    }
}
