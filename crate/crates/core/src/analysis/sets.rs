//! Queries on the set `S` of ordered pairs `(x, y)` for which some
//! P-position `{x, y, z}` has `z < y < x`, derived directly from a
//! [`PairTable`].
//!
//! `r(x, y)` counts points of `S` in row `y` at or right of `x`; `b(x, y)`
//! counts points of `S` in column `x` at or below `y`. A hole is a point
//! `(x, y)` outside `S` with `x > y` and `b(x, y) > 0`.

use crate::engine::PairTable;
use crate::error::{domain, range, Result};

fn check_pair(t: &PairTable, x: u32, y: u32) -> Result<()> {
    if x.max(y) >= t.n() {
        return Err(range(format!(
            "({x},{y}) is outside the table (n = {})",
            t.n()
        )));
    }
    Ok(())
}

/// Membership in `S`.
pub fn s_contains(t: &PairTable, x: u32, y: u32) -> Result<bool> {
    check_pair(t, x, y)?;
    Ok(x > y && t.get(x, y) < y)
}

/// `r(x, y)` for `x > y`. Each `z < y` whose pair `(y, z)` has third
/// `x' >= x` witnesses the point `(x', y)` of `S`; `x` itself may exceed `n`.
pub fn r_count(t: &PairTable, x: u32, y: u32) -> Result<u32> {
    if y >= t.n() {
        return Err(range(format!(
            "row {y} is outside the table (n = {})",
            t.n()
        )));
    }
    if x <= y {
        return Err(domain(format!("r({x},{y}) needs x > y")));
    }
    Ok(row_count(t, x, y))
}

pub(crate) fn row_count(t: &PairTable, x: u32, y: u32) -> u32 {
    (0..y).filter(|&z| t.get(y, z) >= x).count() as u32
}

/// `b(x, y)`: points `(x, y')` of `S` with `y' <= y`.
pub fn b_count(t: &PairTable, x: u32, y: u32) -> Result<u32> {
    if x >= t.n() {
        return Err(range(format!(
            "column {x} is outside the table (n = {})",
            t.n()
        )));
    }
    Ok(column_count(t, x, y))
}

pub(crate) fn column_count(t: &PairTable, x: u32, y: u32) -> u32 {
    let top = y.min(x.saturating_sub(1));
    if x == 0 {
        return 0;
    }
    (0..=top).filter(|&yp| t.get(x, yp) < yp).count() as u32
}

/// `(r(x, x), b(x, x))`. On the diagonal a point `(x', x)` of `S` needs
/// `x' > x`, so `r(x, x)` counts the `z < x` with third strictly above `x`.
pub fn rb_diag(t: &PairTable, x: u32) -> Result<(u32, u32)> {
    if x == 0 {
        return Err(domain("r(x,x) and b(x,x) need x >= 1"));
    }
    if x >= t.n() {
        return Err(range(format!(
            "x = {x} is outside the table (n = {})",
            t.n()
        )));
    }
    Ok(diag_counts(t, x))
}

pub(crate) fn diag_counts(t: &PairTable, x: u32) -> (u32, u32) {
    let mut r = 0;
    let mut b = 0;
    for z in 0..x {
        let w = t.get(x, z);
        if w > x {
            r += 1;
        } else if w < z {
            b += 1;
        }
    }
    (r, b)
}

pub fn is_hole(t: &PairTable, x: u32, y: u32) -> Result<bool> {
    check_pair(t, x, y)?;
    if x <= y {
        return Err(domain(format!(
            "holes lie below the diagonal, got ({x},{y})"
        )));
    }
    Ok(t.get(x, y) >= y && column_count(t, x, y) > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::solve;
    use crate::rules::{ForbiddenSet, Position};

    fn nim(n: u32) -> PairTable {
        solve(n, &ForbiddenSet::new()).unwrap()
    }

    fn t110(n: u32) -> PairTable {
        solve(n, &std::iter::once(Position::new(1, 1, 0)).collect()).unwrap()
    }

    /// S straight from the definition: some z < y < x with {x, y, z} a
    /// P-position, found by scanning z.
    fn s_by_scan(t: &PairTable, x: u32, y: u32) -> bool {
        x > y && (0..y).any(|z| t.classify(&Position::new(x, y, z)).unwrap() == crate::Status::P)
    }

    #[test]
    fn s_examples() {
        let t = nim(8);
        assert!(s_contains(&t, 3, 2).unwrap());
        assert!(!s_contains(&t, 2, 1).unwrap());
        assert!(s_contains(&t110(8), 2, 1).unwrap());
        assert!(s_contains(&t, 8, 1).is_err());
    }

    #[test]
    fn s_agrees_with_definition() {
        let t = t110(40);
        for x in 0..40 {
            for y in 0..40 {
                assert_eq!(
                    s_contains(&t, x, y).unwrap(),
                    s_by_scan(&t, x, y),
                    "({x},{y})"
                );
            }
        }
    }

    #[test]
    fn r_examples() {
        let t = nim(16);
        assert_eq!(r_count(&t, 5, 4).unwrap(), 3);
        assert_eq!(r_count(&t, 8, 4).unwrap(), 0);
        assert_eq!(r_count(&t110(8), 3, 1).unwrap(), 0);
        assert!(r_count(&t, 4, 4).is_err());
    }

    #[test]
    fn r_counts_points_of_s_in_the_row() {
        // Row y of S lives at x' <= 2y + |F|, so a table of 3n covers rows < n.
        let t = t110(90);
        for y in 0..30 {
            for x in (y + 1)..60 {
                let direct = (x..90).filter(|&xp| s_contains(&t, xp, y).unwrap()).count() as u32;
                assert_eq!(r_count(&t, x, y).unwrap(), direct, "r({x},{y})");
            }
        }
    }

    #[test]
    fn diag_examples() {
        let t = nim(16);
        assert_eq!(rb_diag(&t, 4).unwrap(), (3, 0));
        let (r, b) = rb_diag(&t, 4).unwrap();
        assert_eq!(r + 2 * b + 1, 4);
        assert_eq!(rb_diag(&t110(8), 1).unwrap(), (1, 0));
        assert!(rb_diag(&t, 0).is_err());
    }

    #[test]
    fn diag_matches_row_and_column_counts() {
        let t = t110(60);
        for x in 1..60 {
            let (r, b) = rb_diag(&t, x).unwrap();
            let direct_r = (x + 1..2 * x + 2)
                .filter(|&xp| (0..x).any(|z| t.get(x, z) == xp))
                .count();
            assert_eq!(r as usize, direct_r);
            assert_eq!(b, b_count(&t, x, x).unwrap());
        }
    }

    #[test]
    fn b_examples() {
        let t = nim(8);
        assert_eq!(b_count(&t, 3, 2).unwrap(), 1);
        assert_eq!(b_count(&t, 3, 1).unwrap(), 0);
        assert_eq!(b_count(&t, 7, 6).unwrap(), 3);
        assert!(b_count(&t, 8, 0).is_err());
    }

    #[test]
    fn hole_examples() {
        let t = nim(8);
        assert!(!is_hole(&t, 3, 2).unwrap());
        assert!(!is_hole(&t, 3, 1).unwrap());
        assert!(!is_hole(&t, 7, 5).unwrap());
        assert!(!is_hole(&t, 6, 5).unwrap());
        assert!(is_hole(&t, 3, 3).is_err());
    }

    #[test]
    fn ordinary_nim_has_no_holes() {
        let t = nim(128);
        for x in 1..128 {
            for y in 0..x {
                assert!(!is_hole(&t, x, y).unwrap());
            }
        }
    }
}
