//! Extremal counting for edge sets whose total length is budgeted.
//!
//! Among `n` ordered nodes there are `n - j` forward pairs at distance `j`. Taking
//! all pairs of length at most `ell` gives `E_ell`, and the largest edge count under
//! a length budget takes shortest pairs first.

use crate::arith::squared_le;
use crate::error::{Error, Result};

/// `(|E_ell|, l(E_ell))` for `1 <= ell < n`.
pub fn closed_forms(ell: u64, n: u64) -> Result<(u128, u128)> {
    if ell == 0 || ell >= n {
        return Err(Error::Domain(format!(
            "need 1 <= ell < n, got ell={ell}, n={n}"
        )));
    }
    let (l, n) = (ell as u128, n as u128);
    let count = n * l - l * (l + 1) / 2;
    let length = n * l * (l + 1) / 2 - l * (l + 1) * (2 * l + 1) / 6;
    Ok((count, length))
}

/// Greedy maximum edge count `m* = |E_ell| + extra` under total length `k * n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetMaximum {
    pub ell: u64,
    /// Edges of length `ell + 1` that still fit.
    pub extra: u128,
    pub m_star: u128,
    /// `m*^2 <= 2k n^2`.
    pub bound_holds: bool,
}

pub fn max_edges_under_budget(k: u64, n: u64) -> Result<BudgetMaximum> {
    if k == 0 || n < 2 {
        return Err(Error::Domain(format!(
            "need k >= 1 and n >= 2, got k={k}, n={n}"
        )));
    }
    let budget = k as u128 * n as u128;
    let mut ell = 1;
    while ell + 1 < n && closed_forms(ell + 1, n)?.1 <= budget {
        ell += 1;
    }
    let (count, length) = closed_forms(ell, n)?;
    let available = (n - ell - 1) as u128;
    let extra = ((budget - length) / (ell as u128 + 1)).min(available);
    let m_star = count + extra;
    Ok(BudgetMaximum {
        ell,
        extra,
        m_star,
        bound_holds: squared_le(m_star, 2 * k as u128, n as u128),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_closed_forms() {
        assert_eq!(closed_forms(1, 5).unwrap(), (4, 4));
        assert_eq!(closed_forms(2, 5).unwrap(), (7, 10));
        assert_eq!(closed_forms(4, 5).unwrap(), (10, 20));
        assert!(closed_forms(0, 5).is_err());
        assert!(closed_forms(5, 5).is_err());
    }

    #[test]
    fn three_nodes_one_path() {
        // budget 3: both unit pairs (total 2) fit, the length-2 pair does not
        let b = max_edges_under_budget(1, 3).unwrap();
        assert_eq!((b.ell, b.extra, b.m_star), (1, 0, 2));
        assert!(b.bound_holds);
    }

    #[test]
    fn generous_budget_takes_every_pair() {
        let b = max_edges_under_budget(50, 4).unwrap();
        assert_eq!((b.ell, b.m_star), (3, 6));
    }

    #[test]
    fn domain_errors() {
        assert!(max_edges_under_budget(0, 5).is_err());
        assert!(max_edges_under_budget(1, 1).is_err());
    }
}
