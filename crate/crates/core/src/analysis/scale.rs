//! Scale-invariance probes: the `zeta` series, rational box counts and row
//! periodicity.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::counting::h_in;
use super::regions::build_sn;
use crate::engine::{solve, PairTable};
use crate::error::{domain, range, Error, Result};
use crate::rules::ForbiddenSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleKind {
    /// `zeta_k = pi(n 2^k) / (n 2^k)^2`.
    PiBased,
    /// `zeta_k = h(n 2^k, n 2^k) / 4^k`.
    HBased,
}

impl fmt::Display for ScaleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScaleKind::PiBased => "pi-based",
            ScaleKind::HBased => "h-based",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleReport {
    pub base: u32,
    pub kind: ScaleKind,
    /// `values[k]` is `zeta_k`.
    pub values: Vec<BigRational>,
    /// `deltas[k] = |zeta_(k+1) - zeta_k|`.
    pub deltas: Vec<BigRational>,
}

impl ScaleReport {
    pub fn new(base: u32, kind: ScaleKind, values: Vec<BigRational>) -> Self {
        let deltas = values.windows(2).map(|w| (&w[1] - &w[0]).abs()).collect();
        ScaleReport {
            base,
            kind,
            values,
            deltas,
        }
    }

    /// Every value lies in `[0, 1]` (pi-based) or `[0, 8 n^2]` (h-based).
    pub fn within_bounds(&self) -> bool {
        let hi = match self.kind {
            ScaleKind::PiBased => BigRational::from_integer(1.into()),
            ScaleKind::HBased => {
                BigRational::from_integer(BigInt::from(8u64 * (self.base as u64).pow(2)))
            }
        };
        self.values.iter().all(|v| !v.is_negative() && *v <= hi)
    }

    /// Whether each delta is strictly positive and no larger than the one before.
    pub fn deltas_shrinking(&self) -> bool {
        self.deltas.iter().all(|d| d.is_positive()) && self.deltas.windows(2).all(|w| w[1] <= w[0])
    }

    /// Indices `k` where a pi-based value falls below `pi_lower_bound`.
    pub fn lower_bound_violations(&self, fsize: usize) -> Vec<u32> {
        (0..self.values.len() as u32)
            .filter(|&k| self.values[k as usize] < pi_lower_bound(self.base, k, fsize))
            .collect()
    }
}

/// `max(0, n 2^k - |F|)^2 / (24 (n 2^k)^2)`, the lower bound on `zeta_k` from
/// counting the P-positions with three distinct heaps.
pub fn pi_lower_bound(n: u32, k: u32, fsize: usize) -> BigRational {
    let side = BigInt::from(n) << k;
    let gap = (&side - BigInt::from(fsize)).max(BigInt::zero());
    BigRational::new(&gap * &gap, side.pow(2u32) * 24)
}

fn scaled(n: u32, k: u32) -> Result<u32> {
    (n as u64)
        .checked_shl(k)
        .filter(|&v| v <= u32::MAX as u64 && k < 32)
        .map(|v| v as u32)
        .ok_or_else(|| Error::Resource(format!("n 2^k = {n} * 2^{k} is beyond any solvable table")))
}

/// Solves once at `n 2^kmax` and returns the exact pi-based series.
pub fn zeta_series(f: &ForbiddenSet, n: u32, kmax: u32) -> Result<ScaleReport> {
    if n == 0 {
        return Err(domain("zeta series needs n >= 1"));
    }
    let t = solve(scaled(n, kmax)?, f)?;
    zeta_from_table(&t, n, kmax)
}

/// The pi-based series from an existing table with `t.n >= n 2^kmax`.
pub fn zeta_from_table(t: &PairTable, n: u32, kmax: u32) -> Result<ScaleReport> {
    if n == 0 {
        return Err(domain("zeta series needs n >= 1"));
    }
    let top = scaled(n, kmax)?;
    let pi = t.pi_prefix(top)?;
    let values = (0..=kmax)
        .map(|k| {
            let side = n << k;
            BigRational::new(
                BigInt::from(pi[side as usize - 1]),
                BigInt::from(side).pow(2u32),
            )
        })
        .collect();
    Ok(ScaleReport::new(n, ScaleKind::PiBased, values))
}

/// The h-based series `h(n 2^k, n 2^k) / 4^k` for `k = 0..=kmax`.
pub fn zeta_h_series(t: &PairTable, n: u32, kmax: u32) -> Result<ScaleReport> {
    let mut values = Vec::new();
    for k in 0..=kmax {
        let m = scaled(n, k)?;
        let xmax = 2 * (m - 1).max(1);
        let h = h_in(&build_sn(t, m, xmax)?, m)?;
        values.push(BigRational::new(
            BigInt::from(h),
            BigInt::from(1) << (2 * k),
        ));
    }
    Ok(ScaleReport::new(n, ScaleKind::HBased, values))
}

/// An axis-aligned box `[x0, x1) × [y0, y1) × [z0, z1)` with rational corners.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionBox {
    pub x: (BigRational, BigRational),
    pub y: (BigRational, BigRational),
    pub z: (BigRational, BigRational),
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || domain(format!("'{s}' is not a rational (expected a or a/b)"));
    match s.split_once('/') {
        None => BigInt::from_str(s)
            .map(BigRational::from_integer)
            .map_err(|_| bad()),
        Some((a, b)) => {
            let num = BigInt::from_str(a.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(b.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(domain(format!("'{s}' has a zero denominator")));
            }
            Ok(BigRational::new(num, den))
        }
    }
}

impl FromStr for RegionBox {
    type Err = Error;

    /// Parses `x0,x1,y0,y1,z0,z1`, each an integer or `a/b`.
    fn from_str(s: &str) -> Result<Self> {
        let v = s
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        let [x0, x1, y0, y1, z0, z1]: [BigRational; 6] = v
            .try_into()
            .map_err(|v: Vec<_>| domain(format!("box needs 6 values, got {}", v.len())))?;
        Ok(RegionBox {
            x: (x0, x1),
            y: (y0, y1),
            z: (z0, z1),
        })
    }
}

impl RegionBox {
    /// Least table side that covers the two smaller coordinates of the box
    /// scaled by `2^k`.
    pub fn table_side(&self, k: u32) -> Option<u32> {
        let (_, yb) = scaled_range(&self.y, k);
        let (_, zb) = scaled_range(&self.z, k);
        u32::try_from(yb.max(zb)).ok().map(|v| v.max(1))
    }
}

/// Integers `v` with `lo <= v / 2^k < hi`, as a half-open range.
fn scaled_range(r: &(BigRational, BigRational), k: u32) -> (BigInt, BigInt) {
    let s = BigRational::from_integer(BigInt::from(1) << k);
    (
        (&r.0 * &s).ceil().to_integer(),
        (&r.1 * &s).ceil().to_integer(),
    )
}

fn to_u32_clamped(v: &BigInt) -> u64 {
    if v.is_negative() {
        0
    } else {
        u64::try_from(v).unwrap_or(u64::MAX)
    }
}

/// Counts P-positions `{a >= b >= c}` with `a / 2^k ∈ [x0, x1)`,
/// `b / 2^k ∈ [y0, y1)`, `c / 2^k ∈ [z0, z1)`. Only canonical sorted triples
/// are counted, so a box straddling the cone `a >= b >= c` sees each multiset
/// once.
pub fn region_count(t: &PairTable, bx: &RegionBox, k: u32) -> Result<u64> {
    let (xa, xb) = scaled_range(&bx.x, k);
    let (ya, yb) = scaled_range(&bx.y, k);
    let (za, zb) = scaled_range(&bx.z, k);
    let (ylo, yhi) = (to_u32_clamped(&ya), to_u32_clamped(&yb));
    let (zlo, zhi) = (to_u32_clamped(&za), to_u32_clamped(&zb));
    if ylo >= yhi || zlo >= zhi || xa >= xb {
        return Ok(0);
    }
    let n = t.n() as u64;
    if yhi > n || zhi > n {
        return Err(range(format!(
            "box scaled by 2^{k} needs the two smaller heaps below {}, table has n = {n}",
            yhi.max(zhi)
        )));
    }
    let (xlo, xhi) = (to_u32_clamped(&xa), to_u32_clamped(&xb));
    let mut count = 0;
    for b in ylo..yhi {
        for c in zlo..zhi.min(b + 1) {
            let a = t.get(b as u32, c as u32) as u64;
            if a >= b && a >= xlo && a < xhi {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `(k, pi(R, k), pi(R, k) / 4^k)` for `k = 0..=kmax`.
pub fn region_series(
    t: &PairTable,
    bx: &RegionBox,
    kmax: u32,
) -> Result<Vec<(u32, u64, BigRational)>> {
    (0..=kmax)
        .map(|k| {
            let c = region_count(t, bx, k)?;
            Ok((
                k,
                c,
                BigRational::new(BigInt::from(c), BigInt::from(1) << (2 * k)),
            ))
        })
        .collect()
}

/// Searches for the least `(q, p)` in lexicographic order, `p >= 1`, with
/// `third(x, y + p) = third(x, y) + p` for every `q < y` and `y + p < ymax`.
/// A candidate must be witnessed by at least `p` rows. `None` only means no
/// period fits the window.
pub fn row_periodicity_probe(t: &PairTable, x: u32, ymax: u32) -> Result<Option<(u32, u32)>> {
    if x >= t.n() || ymax > t.n() {
        return Err(range(format!(
            "periodicity probe of row {x} up to {ymax} needs both within n = {}",
            t.n()
        )));
    }
    let third = |y: u32| t.get(x.max(y), x.min(y)) as u64;
    for q in 0..ymax {
        let mut p = 1;
        // rows checked: q < y < ymax - p
        while (ymax as u64).saturating_sub(p as u64 + q as u64 + 1) >= p as u64 {
            if (q + 1..ymax - p).all(|y| third(y + p) == third(y) + p as u64) {
                return Ok(Some((p, q)));
            }
            p += 1;
        }
    }
    Ok(None)
}
