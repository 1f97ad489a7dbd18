//! The hole-free approximations of `S`.
//!
//! `U(x, y)` is the union of four regions built from `r` and `b`:
//!
//! * `A`: `(x', y')` with `y' < x' <= x` and `b(x', x') >= x' - y'`,
//! * `B`: `(x, y')` with `y' < y` and `b(x, y - 1) >= y - y'`,
//! * `C`: `(x', y')` with `y <= y' < x <= x'` and `r(x, y') > x' - x`,
//! * `D`: `(x', y')` with `y' < y <= x < x'` and `r(x + 1, y') > x' - (x + 1)`.
//!
//! `Ubar(x, y)` agrees with `U(x, y)` below row `x` and is continued above it
//! by the doubling rule: `(x', y')` with `y' >= x` belongs iff
//! `y' < x' <= 2y'` and `(y', floor(x'/2))` does not. `S_n = Ubar(n, 0)`.

use super::pointset::PointSet;
use super::sets::{column_count, row_count};
use crate::engine::PairTable;
use crate::error::{domain, range, Result};

fn check_u_args(t: &PairTable, x: u32, y: u32) -> Result<()> {
    let tau = t.forbidden().threshold();
    if (x as u64) <= tau {
        return Err(domain(format!(
            "U(x,y) needs x > 4Fmax+3|F| = {tau}, got x = {x}"
        )));
    }
    if y > x {
        return Err(domain(format!("U(x,y) needs y <= x, got ({x},{y})")));
    }
    if x >= t.n() {
        return Err(range(format!(
            "U({x},{y}) needs column {x} of the table (n = {})",
            t.n()
        )));
    }
    Ok(())
}

/// The exact finite set `U(x, y)`; its truncation bound is the largest `x'`
/// present (at least `x`).
pub fn build_u(t: &PairTable, x: u32, y: u32) -> Result<PointSet> {
    check_u_args(t, x, y)?;
    let mut pts = Vec::new();

    // A: top b(x', x') cells of every column x' <= x.
    for xp in 1..=x {
        let b = column_count(t, xp, xp);
        pts.extend((xp.saturating_sub(b)..xp).map(|yp| (xp, yp)));
    }
    // B: top b(x, y - 1) cells of column x below row y.
    if y >= 1 {
        let b = column_count(t, x, y - 1);
        pts.extend((y.saturating_sub(b)..y).map(|yp| (x, yp)));
    }
    // C: rows y..x, r(x, y') cells starting at column x.
    for yp in y..x {
        let r = row_count(t, x, yp);
        pts.extend((x..x + r).map(|xp| (xp, yp)));
    }
    // D: rows below y, r(x + 1, y') cells starting at column x + 1.
    for yp in 0..y {
        let r = row_count(t, x + 1, yp);
        pts.extend((x + 1..x + 1 + r).map(|xp| (xp, yp)));
    }

    let xmax = pts.iter().map(|p| p.0).max().unwrap_or(x).max(x);
    let mut set = PointSet::new(xmax);
    for p in pts {
        set.insert(p);
    }
    Ok(set)
}

/// `Ubar(x, y)` restricted to `x' <= xmax`.
pub fn build_ubar(t: &PairTable, x: u32, y: u32, xmax: u32) -> Result<PointSet> {
    check_u_args(t, x, y)?;
    if xmax < x {
        return Err(domain(format!("truncation {xmax} is below x = {x}")));
    }
    let u = build_u(t, x, y)?;
    Ok(extend_by_doubling(&u, x, xmax))
}

/// Continues a set known below row `x` to all rows, up to column `xmax`.
pub(crate) fn extend_by_doubling(base: &PointSet, x: u32, xmax: u32) -> PointSet {
    let mut set = PointSet::new(xmax);
    for p in base.iter().filter(|p| p.1 < x) {
        set.insert(p);
    }
    // Deciding (x', y') only looks at (y', x'/2), whose first coordinate is
    // smaller, so ascending x' is a valid order.
    for xp in (x as u64 + 1)..=(xmax as u64) {
        let xp = xp as u32;
        for yp in x..xp {
            if (xp as u64) <= 2 * yp as u64 && !set.has(&(yp, xp / 2)) {
                set.insert((xp, yp));
            }
        }
    }
    set
}

/// `S_n = Ubar(n, 0)` restricted to `x' <= xmax`.
pub fn build_sn(t: &PairTable, n: u32, xmax: u32) -> Result<PointSet> {
    build_ubar(t, n, 0, xmax)
}
