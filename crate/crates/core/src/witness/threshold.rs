//! Exact threshold decisions.
//!
//! Every inequality the pipeline tests has the shape
//! `lhs ⋈ (offset + coef·√radicand) / denom` with integer parameters. It is
//! decided by sign analysis and squaring, never in floating point, and each
//! decision is appended to a [`ThresholdLog`] so it can be replayed.

use std::cmp::Ordering;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    Lt,
    Le,
    Gt,
    Ge,
}

impl Relation {
    pub fn holds(self, ord: Ordering) -> bool {
        match self {
            Relation::Lt => ord == Ordering::Less,
            Relation::Le => ord != Ordering::Greater,
            Relation::Gt => ord == Ordering::Greater,
            Relation::Ge => ord != Ordering::Less,
        }
    }
}

/// One logged decision `lhs ⋈ (offset + coef·√radicand) / denom`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdCheck {
    pub label: &'static str,
    pub lhs: i128,
    pub relation: Relation,
    pub offset: i128,
    pub coef: i128,
    pub radicand: u128,
    pub denom: u128,
    pub outcome: bool,
}

impl ThresholdCheck {
    /// `lhs ⋈ rhs` for a plain integer right-hand side.
    pub fn integer(label: &'static str, lhs: i128, relation: Relation, rhs: i128) -> Self {
        Self::new(label, lhs, relation, rhs, 0, 0, 1)
    }

    /// `lhs ⋈ offset + coef·√radicand`.
    pub fn with_sqrt(
        label: &'static str,
        lhs: i128,
        relation: Relation,
        offset: i128,
        coef: i128,
        radicand: u128,
    ) -> Self {
        Self::new(label, lhs, relation, offset, coef, radicand, 1)
    }

    pub fn new(
        label: &'static str,
        lhs: i128,
        relation: Relation,
        offset: i128,
        coef: i128,
        radicand: u128,
        denom: u128,
    ) -> Self {
        assert!(denom > 0, "zero denominator in threshold {label}");
        let a = denom as i128 * lhs - offset;
        let outcome = relation.holds(cmp_with_scaled_sqrt(a, coef, radicand));
        Self {
            label,
            lhs,
            relation,
            offset,
            coef,
            radicand,
            denom,
            outcome,
        }
    }
}

/// Compares `a` with `c·√r` exactly.
pub fn cmp_with_scaled_sqrt(a: i128, c: i128, r: u128) -> Ordering {
    if c == 0 || r == 0 {
        return a.cmp(&0);
    }
    let a_sq = a.unsigned_abs() * a.unsigned_abs();
    let rhs_sq = c.unsigned_abs() * c.unsigned_abs() * r;
    if c > 0 {
        // c·√r > 0
        if a <= 0 {
            Ordering::Less
        } else {
            a_sq.cmp(&rhs_sq)
        }
    } else if a >= 0 {
        Ordering::Greater
    } else {
        // Both sides negative: the larger magnitude is the smaller value.
        rhs_sq.cmp(&a_sq)
    }
}

/// Smallest integer `k >= 0` with `k² >= x`.
pub fn ceil_sqrt(x: u128) -> u128 {
    let f = floor_sqrt(x);
    if f * f == x {
        f
    } else {
        f + 1
    }
}

/// Largest integer `k` with `k² <= x`.
pub fn floor_sqrt(x: u128) -> u128 {
    if x < 2 {
        return x;
    }
    // Newton iteration from an upper bound.
    let mut r = 1u128 << ((128 - x.leading_zeros()).div_ceil(2));
    loop {
        let next = (r + x / r) / 2;
        if next >= r {
            break;
        }
        r = next;
    }
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// Ordered record of every threshold decision made during one run.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ThresholdLog {
    checks: Vec<ThresholdCheck>,
}

impl ThresholdLog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `check` and returns its outcome.
    pub fn record(&mut self, check: ThresholdCheck) -> bool {
        let outcome = check.outcome;
        self.checks.push(check);
        outcome
    }

    pub fn checks(&self) -> &[ThresholdCheck] {
        &self.checks
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_cases() {
        use Ordering::*;
        assert_eq!(cmp_with_scaled_sqrt(3, 1, 9), Equal);
        assert_eq!(cmp_with_scaled_sqrt(3, 1, 10), Less);
        assert_eq!(cmp_with_scaled_sqrt(4, 1, 10), Greater);
        assert_eq!(cmp_with_scaled_sqrt(-1, 1, 10), Less);
        assert_eq!(cmp_with_scaled_sqrt(0, -1, 10), Greater);
        assert_eq!(cmp_with_scaled_sqrt(-3, -1, 9), Equal);
        assert_eq!(cmp_with_scaled_sqrt(-4, -1, 10), Less);
        assert_eq!(cmp_with_scaled_sqrt(-3, -1, 10), Greater);
        assert_eq!(cmp_with_scaled_sqrt(5, 0, 10), Greater);
    }

    #[test]
    fn integer_square_roots() {
        for x in 0..2000u128 {
            let f = floor_sqrt(x);
            assert!(f * f <= x && (f + 1) * (f + 1) > x);
            let c = ceil_sqrt(x);
            assert!(c * c >= x && (c == 0 || (c - 1) * (c - 1) < x));
        }
        assert_eq!(floor_sqrt(u64::MAX as u128), u32::MAX as u128);
    }

    #[test]
    fn check_with_denominator() {
        // 5 >= (2/3)·7 = 4.67
        assert!(ThresholdCheck::new("x", 5, Relation::Ge, 14, 0, 0, 3).outcome);
        // 4 >= 4.67 is false
        assert!(!ThresholdCheck::new("x", 4, Relation::Ge, 14, 0, 0, 3).outcome);
        // 223 > 250 - √750 = 222.61
        assert!(ThresholdCheck::with_sqrt("x", 223, Relation::Gt, 250, -1, 750).outcome);
        assert!(!ThresholdCheck::with_sqrt("x", 222, Relation::Gt, 250, -1, 750).outcome);
    }
}
