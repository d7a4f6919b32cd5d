//! Exact comparisons of the form `x <= sqrt(f) * y`, evaluated as `x^2 <= f * y^2`.

use num_bigint::BigUint;

/// Returns `lhs^2 <= factor * rhs^2` without floating point.
///
/// Falls back to arbitrary precision when the `u128` products overflow.
pub fn squared_le(lhs: u128, factor: u128, rhs: u128) -> bool {
    let left = lhs.checked_mul(lhs);
    let right = rhs.checked_mul(rhs).and_then(|r| r.checked_mul(factor));
    match (left, right) {
        (Some(l), Some(r)) => l <= r,
        _ => {
            let l = BigUint::from(lhs);
            let r = BigUint::from(rhs);
            &l * &l <= BigUint::from(factor) * &r * &r
        }
    }
}

/// Returns `a/b < c/d` for positive denominators.
pub fn ratio_lt(a: u128, b: u128, c: u128, d: u128) -> bool {
    match (a.checked_mul(d), c.checked_mul(b)) {
        (Some(l), Some(r)) => l < r,
        _ => BigUint::from(a) * BigUint::from(d) < BigUint::from(c) * BigUint::from(b),
    }
}

pub(crate) fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_is_inclusive() {
        assert!(squared_le(4, 16, 1));
        assert!(!squared_le(5, 16, 1));
        assert!(squared_le(0, 0, 0));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = u128::MAX / 2;
        assert!(squared_le(big, 2, big));
        assert!(!squared_le(big, 0, big));
        assert!(squared_le(big, 1, big));
        assert!(!squared_le(big + 1, 1, big));
    }

    #[test]
    fn ratio_ordering() {
        assert!(ratio_lt(3, 2, 8, 5));
        assert!(!ratio_lt(8, 5, 3, 2));
        assert!(!ratio_lt(2, 4, 1, 2));
        assert!(ratio_lt(u128::MAX - 1, u128::MAX, 1, 1));
    }

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(gcd(7, 0), 7);
        assert_eq!(gcd(0, 0), 0);
    }
}
