//! Class numbers of negative discriminants by counting reduced forms.
//!
//! Only primitive forms (`gcd(a, b, c) = 1`) are counted.

use num_integer::{gcd, Roots};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiscriminantError {
    #[error("discriminant must be negative, got {0}")]
    NotNegative(i64),
    #[error("discriminant must be 0 or 1 mod 4, got {0}")]
    BadResidue(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Discriminant(i64);

impl Discriminant {
    pub fn new(d: i64) -> Result<Self, DiscriminantError> {
        if d >= 0 {
            return Err(DiscriminantError::NotNegative(d));
        }
        if !matches!(d.rem_euclid(4), 0 | 1) {
            return Err(DiscriminantError::BadResidue(d));
        }
        Ok(Discriminant(d))
    }

    pub fn value(&self) -> i64 {
        self.0
    }
}

/// Positive definite form `a x^2 + b xy + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Form {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_reduced(&self) -> bool {
        let Form { a, b, c } = *self;
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    pub fn is_primitive(&self) -> bool {
        gcd(gcd(self.a, self.b), self.c) == 1
    }
}

/// Reduced primitive forms of discriminant `disc`, ordered by `(a, b)`.
///
/// Reduction forces `3a^2 <= |D|`, which bounds the search.
pub fn reduced_forms(disc: Discriminant) -> Vec<Form> {
    let d = disc.0;
    let abs_d = -d;
    let a_max = (abs_d / 3).sqrt();
    let mut out = Vec::new();
    for a in 1..=a_max {
        for b in -a..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let form = Form { a, b, c: num / (4 * a) };
            if form.is_reduced() && form.is_primitive() {
                out.push(form);
            }
        }
    }
    out
}

pub fn class_number(disc: Discriminant) -> u64 {
    reduced_forms(disc).len() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert_eq!(Discriminant::new(5), Err(DiscriminantError::NotNegative(5)));
        assert_eq!(Discriminant::new(-5), Err(DiscriminantError::BadResidue(-5)));
        assert_eq!(Discriminant::new(-6), Err(DiscriminantError::BadResidue(-6)));
        assert!(Discriminant::new(-3).is_ok());
        assert!(Discriminant::new(-4).is_ok());
    }

    #[test]
    fn small_class_numbers() {
        let h = |d| class_number(Discriminant::new(d).unwrap());
        assert_eq!(h(-3), 1);
        assert_eq!(h(-4), 1);
        assert_eq!(h(-23), 3);
        assert_eq!(h(-20), 2);
        // primitive only: (2,2,2) at D = -12 is excluded
        assert_eq!(h(-12), 1);
    }

    #[test]
    fn forms_for_minus_23() {
        let forms = reduced_forms(Discriminant::new(-23).unwrap());
        assert_eq!(
            forms,
            vec![
                Form { a: 1, b: 1, c: 6 },
                Form { a: 2, b: -1, c: 3 },
                Form { a: 2, b: 1, c: 3 },
            ]
        );
    }

    #[test]
    fn emitted_forms_are_reduced() {
        for d in (3..2000).map(|k| -k) {
            let Ok(disc) = Discriminant::new(d) else { continue };
            let forms = reduced_forms(disc);
            assert!(!forms.is_empty(), "h({d}) >= 1");
            for f in forms {
                assert_eq!(f.discriminant(), d);
                assert!(f.is_reduced() && f.is_primitive());
            }
        }
    }
}
