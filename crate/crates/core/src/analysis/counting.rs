//! Counting functions over `S_m`: `h`, the weight `f` and potential `g`, the
//! closed form of `pi` for ordinary Nim, and the counting identity
//! `6 pi(m) = m^2 - m - 2 h(m, m) + 4 pi2(m) + 6 pi1(m)`.

use super::pointset::PointSet;
use super::regions::build_sn;
use crate::engine::{PairTable, PiCounts};
use crate::error::{domain, Result};

/// Whether `(x, y)` lies in `R_n = { y < n <= x <= 2y }`.
pub fn in_r(x: u32, y: u32, n: u32) -> bool {
    y < n && n <= x && x as u64 <= 2 * y as u64
}

/// `|R_n ∩ set|`. `R_n` reaches `x' = 2(n - 1)`, so the set must be exact
/// that far.
pub fn h_in(set: &PointSet, n: u32) -> Result<u64> {
    let need = 2 * (n as u64).saturating_sub(1);
    if (set.xmax() as u64) < need {
        return Err(domain(format!(
            "h(., {n}) needs the set exact up to x' = {need}, truncation is {}",
            set.xmax()
        )));
    }
    Ok(set.iter().filter(|&(x, y)| in_r(x, y, n)).count() as u64)
}

/// `h(m, n) = |R_n ∩ S_m|`.
pub fn h_value(t: &PairTable, m: u32, n: u32, xmax: u32) -> Result<u64> {
    if (xmax as u64) < 2 * (n as u64).saturating_sub(1) {
        return Err(domain(format!(
            "h(m, {n}) needs xmax >= {}",
            2 * (n as u64).saturating_sub(1)
        )));
    }
    h_in(&build_sn(t, m, xmax)?, n)
}

/// `f((x, y), n) = n + 2x - 3y + 2`.
pub fn f_weight(p: (i64, i64), n: i64) -> i64 {
    n + 2 * p.0 - 3 * p.1 + 2
}

/// A value of `g` together with the column bound it was summed to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GValue {
    pub sum: i128,
    pub truncated_at: u32,
}

/// Sum of `f(p, n)` over `p` in `set ∩ T_n`, `T_n = { 2y - x <= n }`.
pub fn g_in(set: &PointSet, n: u32) -> GValue {
    let n = n as i64;
    let sum = set
        .iter()
        .map(|(x, y)| (x as i64, y as i64))
        .filter(|&(x, y)| 2 * y - x <= n)
        .map(|p| f_weight(p, n) as i128)
        .sum();
    GValue {
        sum,
        truncated_at: set.xmax(),
    }
}

/// `g(m, n)` summed over `x' <= xmax`. `T_n ∩ S_m` is infinite along the line
/// `x' = 2y'`, so only truncated values exist.
pub fn g_value(t: &PairTable, m: u32, n: u32, xmax: u32) -> Result<GValue> {
    Ok(g_in(&build_sn(t, m, xmax)?, n))
}

/// `pi(x)` for ordinary Nim: `(3x^2 - 6xy + 4y^2 + 3x + 2) / 6` with `y` the
/// largest power of two not above `x`.
pub fn pi_nim_closed(x: u64) -> Result<u64> {
    if x == 0 {
        return Err(domain("closed form needs x >= 1"));
    }
    let y = 1u64 << (63 - x.leading_zeros());
    let (x, y) = (x as i128, y as i128);
    let num = 3 * x * x - 6 * x * y + 4 * y * y + 3 * x + 2;
    assert_eq!(num % 6, 0, "closed form is not integral at x = {x}");
    Ok((num / 6) as u64)
}

/// Both sides of the counting identity at `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub m: u32,
    pub counts: PiCounts,
    pub h: u64,
    /// `6 pi(m)`.
    pub lhs: i128,
    /// `m^2 - m - 2h + 4 pi2 + 6 pi1`.
    pub rhs: i128,
}

impl IdentityReport {
    pub fn evaluate(m: u32, counts: PiCounts, h: u64) -> Self {
        let mm = m as i128;
        let lhs = 6 * counts.pi as i128;
        let rhs = mm * mm - mm - 2 * h as i128 + 4 * counts.pi2 as i128 + 6 * counts.pi1 as i128;
        IdentityReport {
            m,
            counts,
            h,
            lhs,
            rhs,
        }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn difference(&self) -> i128 {
        self.lhs - self.rhs
    }
}

pub fn identity_check(t: &PairTable, m: u32, xmax: u32) -> Result<IdentityReport> {
    let tau = t.forbidden().threshold();
    if (m as u64) <= tau {
        return Err(domain(format!("identity needs m > 4Fmax+3|F| = {tau}")));
    }
    let counts = t.pi_counts(m)?;
    let h = h_value(t, m, m, xmax)?;
    Ok(IdentityReport::evaluate(m, counts, h))
}
