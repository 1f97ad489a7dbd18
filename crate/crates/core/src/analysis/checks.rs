//! Empirical checkers for the structural statements about `S`, `U` and `S_n`.
//!
//! Every checker returns a report listing what it looked at and anything that
//! disagreed; none of them panics on a violation.

use std::fmt;

use super::counting::{h_in, in_r};
use super::pointset::{Point, PointSet};
use super::regions::{build_sn, build_u};
use super::sets::{column_count, diag_counts, row_count};
use crate::engine::PairTable;
use crate::error::{domain, range, Result};

const MAX_EXAMPLES: usize = 20;

/// Outcome of one invariant suite over a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: u64,
    pub violations: u64,
    /// The first few violations, human readable.
    pub examples: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport {
            name,
            checked: 0,
            violations: 0,
            examples: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} checked, {} violations",
            self.name, self.checked, self.violations
        )?;
        for e in &self.examples {
            write!(f, "\n  {e}")?;
        }
        Ok(())
    }
}

/// Every third satisfies `z <= x + y + |F|`.
pub fn check_rowcol(t: &PairTable) -> SuiteReport {
    let mut rep = SuiteReport::new("rowcol bound");
    let fsize = t.forbidden().size() as u64;
    for (x, y, z) in t.pairs() {
        rep.check(z as u64 <= x as u64 + y as u64 + fsize, || {
            format!("third({x},{y}) = {z}")
        });
    }
    rep
}

/// Thirds above `2 Fmax + |F|` satisfy `z <= x + y`.
pub fn check_rowcol2(t: &PairTable) -> SuiteReport {
    let mut rep = SuiteReport::new("sharpened rowcol bound");
    let small = t.forbidden().small_threshold();
    for (x, y, z) in t.pairs().filter(|&(_, _, z)| z as u64 > small) {
        rep.check(z <= x + y, || format!("third({x},{y}) = {z}"));
    }
    rep
}

/// `{k, k, 0}` is a P-position for every `k > 2 Fmax + |F|`.
pub fn check_xi0(t: &PairTable) -> SuiteReport {
    let mut rep = SuiteReport::new("{k,k,0} is P");
    let start = (t.forbidden().small_threshold() + 1).min(t.n() as u64) as u32;
    for k in start..t.n() {
        let z = t.get(k, k);
        rep.check(z == 0, || format!("third({k},{k}) = {z}"));
    }
    rep
}

/// Symmetry and multiset consistency: `{x, y, z}` is reported as the same
/// P-position from each of its in-range pairs, and is never forbidden.
pub fn check_consistency(t: &PairTable) -> SuiteReport {
    let mut rep = SuiteReport::new("symmetry and multiset consistency");
    let n = t.n();
    for (x, y, z) in t.pairs() {
        rep.check(t.third_of(y, x).ok() == Some(z), || {
            format!("third({y},{x}) != third({x},{y})")
        });
        let p = crate::rules::Position::new(x, y, z);
        rep.check(!t.forbidden().contains(&p), || {
            format!("{p} is forbidden but stored as P")
        });
        if z < n {
            rep.check(t.get(x.max(z), x.min(z)) == y, || {
                format!("third({x},{z}) should be {y}")
            });
            rep.check(t.get(y.max(z), y.min(z)) == x, || {
                format!("third({y},{z}) should be {x}")
            });
        }
    }
    rep
}

/// `r(x, x) + 2 b(x, x) + 1 = x` for `4 Fmax + 3|F| < x < bound`.
pub fn check_b_plus_2l(t: &PairTable, bound: u32) -> Result<SuiteReport> {
    check_bound(t, bound)?;
    let mut rep = SuiteReport::new("r(x,x) + 2b(x,x) + 1 = x");
    let tau = t.forbidden().threshold();
    for x in (tau + 1).min(bound as u64) as u32..bound {
        let (r, b) = diag_counts(t, x);
        rep.check(r + 2 * b + 1 == x, || format!("x = {x}: r = {r}, b = {b}"));
    }
    Ok(rep)
}

/// `b(x, y) >= r(x, y)` for `x > y > 4 Fmax + 3|F|`, `(x, y)` outside `S`.
pub fn check_b_lt_l(t: &PairTable, bound: u32) -> Result<SuiteReport> {
    check_bound(t, bound)?;
    let mut rep = SuiteReport::new("b(x,y) >= r(x,y) off S");
    let tau = t.forbidden().threshold();
    // Row y of S, as the sorted list of thirds of (y, z), z < y.
    let rows: Vec<Vec<u32>> = (0..bound)
        .map(|y| {
            let mut v: Vec<u32> = (0..y).map(|z| t.get(y, z)).collect();
            v.sort_unstable();
            v
        })
        .collect();
    for x in 0..bound {
        let mut b = 0u32;
        for y in 0..x {
            let in_s = t.get(x, y) < y;
            if in_s {
                b += 1;
            }
            if (y as u64) > tau && !in_s {
                let row = &rows[y as usize];
                let r = (row.len() - row.partition_point(|&v| v < x)) as u32;
                rep.check(b >= r, || format!("({x},{y}): b = {b}, r = {r}"));
            }
        }
    }
    Ok(rep)
}

fn check_bound(t: &PairTable, bound: u32) -> Result<()> {
    if bound > t.n() {
        return Err(range(format!(
            "scan bound {bound} exceeds the table (n = {})",
            t.n()
        )));
    }
    Ok(())
}

/// What the step from `U(x, y)` to `U(x, y + 1)` should look like.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiStep {
    Identity,
    /// One point moves: `(x, y - b(x, y))` leaves, `(x + r(x, y), y)` arrives.
    Swap {
        removed: Point,
        added: Point,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiStepReport {
    pub x: u32,
    pub y: u32,
    pub expected: PhiStep,
    pub discrepancies: Vec<String>,
}

impl PhiStepReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }

    /// For a swap `(x1, y1) -> (x2, y2)`: `x1 - y1 >= x2 - y2` and
    /// `x1 - 2y1 >= x2 - 2y2`. Trivially true for the identity.
    pub fn displacement_ok(&self) -> bool {
        match self.expected {
            PhiStep::Identity => true,
            PhiStep::Swap {
                removed: (x1, y1),
                added: (x2, y2),
            } => {
                let (x1, y1, x2, y2) = (x1 as i64, y1 as i64, x2 as i64, y2 as i64);
                x1 - y1 >= x2 - y2 && x1 - 2 * y1 >= x2 - 2 * y2
            }
        }
    }
}

/// Compares `U(x, y)` with `U(x, y + 1)`: equal when `(x, y)` is in `S` or
/// `b(x, y) = 0`, otherwise differing by exactly the single swap.
pub fn phi_step_check(t: &PairTable, x: u32, y: u32) -> Result<PhiStepReport> {
    if y >= x {
        return Err(domain(format!("phi step needs y < x, got ({x},{y})")));
    }
    let before = build_u(t, x, y)?;
    let after = build_u(t, x, y + 1)?;
    let b = column_count(t, x, y);
    let in_s = t.get(x, y) < y;

    let expected = if in_s || b == 0 {
        PhiStep::Identity
    } else {
        PhiStep::Swap {
            removed: (x, y - b),
            added: (x + row_count(t, x, y), y),
        }
    };
    let (want_gone, want_new): (Vec<Point>, Vec<Point>) = match expected {
        PhiStep::Identity => (vec![], vec![]),
        PhiStep::Swap { removed, added } => (vec![removed], vec![added]),
    };
    let gone = before.difference(&after);
    let new = after.difference(&before);
    let mut discrepancies = Vec::new();
    if gone != want_gone {
        discrepancies.push(format!(
            "U({x},{y}) \\ U({x},{}) = {gone:?}, expected {want_gone:?}",
            y + 1
        ));
    }
    if new != want_new {
        discrepancies.push(format!(
            "U({x},{}) \\ U({x},{y}) = {new:?}, expected {want_new:?}",
            y + 1
        ));
    }
    Ok(PhiStepReport {
        x,
        y,
        expected,
        discrepancies,
    })
}

/// Result of checking the halving map `(x, y) -> (x/2, y/2)` from
/// `R_{n 2^k} ∩ S_n` onto `R_{n 2^(k-1)} ∩ S_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalveReport {
    pub n: u32,
    pub k: u32,
    /// `|R_{n 2^k} ∩ S_n|`.
    pub source: u64,
    /// `|R_{n 2^(k-1)} ∩ S_n|`.
    pub target: u64,
    /// Points where the map is not exactly 4-to-1, with the reason.
    pub offending: Vec<(Point, String)>,
}

impl HalveReport {
    /// The map is exactly 4-to-1 and membership-preserving.
    pub fn passed(&self) -> bool {
        self.offending.is_empty()
    }

    /// `source = 4 target`, the count relation the 4-to-1 map would imply.
    pub fn counts_scale_by_four(&self) -> bool {
        self.source == 4 * self.target
    }
}

pub fn halve_check(t: &PairTable, n: u32, k: u32, xmax: u32) -> Result<HalveReport> {
    let tau = t.forbidden().threshold();
    if (n as u64) <= tau {
        return Err(domain(format!(
            "halving check needs n > 4Fmax+3|F| = {tau}"
        )));
    }
    if k == 0 {
        return Err(domain("halving check needs k >= 1"));
    }
    if (xmax as u64) < (n as u64) << (k + 1) {
        return Err(domain(format!(
            "halving check needs xmax >= n 2^(k+1) = {}",
            (n as u64) << (k + 1)
        )));
    }
    let sn = build_sn(t, n, xmax)?;
    halve_check_set(&sn, n, k)
}

/// The halving check on an arbitrary point set (used for failure injection).
pub fn halve_check_set(set: &PointSet, n: u32, k: u32) -> Result<HalveReport> {
    if k == 0 {
        return Err(domain("halving check needs k >= 1"));
    }
    let big = n << k;
    let half = big / 2;
    let source = h_in(set, big)?;
    let target = h_in(set, half)?;
    let mut offending = Vec::new();
    let mut preimages = std::collections::BTreeMap::<Point, u32>::new();

    for y in half..big {
        for x in big..=(2 * y) {
            let member = set.has(&(x, y));
            let image = (x / 2, y / 2);
            if !in_r(image.0, image.1, half) {
                if member {
                    offending.push(((x, y), format!("maps to {image:?} outside R_{half}")));
                }
                continue;
            }
            let image_member = set.has(&image);
            if member != image_member {
                offending.push((
                    (x, y),
                    format!("membership {member} but image {image:?} has {image_member}"),
                ));
            }
            if member {
                *preimages.entry(image).or_default() += 1;
            }
        }
    }
    for y in 0..half {
        for x in half.max(y + 1)..=(2 * y) {
            if set.has(&(x, y)) {
                let c = preimages.get(&(x, y)).copied().unwrap_or(0);
                if c != 4 {
                    offending.push(((x, y), format!("has {c} preimages in R_{big}, expected 4")));
                }
            }
        }
    }
    offending.sort();
    Ok(HalveReport {
        n,
        k,
        source,
        target,
        offending,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// No persistent `r(x, x) = x - 1` pattern within the scan.
    WellBehavedUpToBound,
    /// `r(x, x) = x - 1` exactly at `m 2^k`, with the dyadic block structure
    /// of `S` confirmed on the scanned range.
    NotWellBehavedPattern,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::WellBehavedUpToBound => "well-behaved-up-to-bound",
            Verdict::NotWellBehavedPattern => "not-well-behaved-pattern",
        })
    }
}

/// A bounded verdict on well-behavedness; no finite scan decides the
/// definition, which quantifies over all `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WellBehavedReport {
    pub scanned_bound: u32,
    /// Every scanned `x` with `r(x, x) >= x - 1`.
    pub violations: Vec<u32>,
    pub verdict: Verdict,
    /// Least `c1 > 4Fmax+3|F|` with `r(x, x) < x - 1` for all scanned `x > c1`;
    /// strictly above the threshold so that `S_c1` is defined.
    pub c1_candidate: Option<u64>,
    pub dyadic_base: Option<u32>,
}

/// Scans `4Fmax+3|F| < x < bound` for diagonal points with `r(x, x) = x - 1`.
///
/// The dyadic-degenerate structure is keyed on `r(m, m) = m - 1` throughout;
/// one sentence of the source argument writes `r(m, m) = m`, which cannot
/// occur above the threshold since `r(m, m) + 2b(m, m) + 1 = m`.
pub fn well_behaved_scan(t: &PairTable, bound: u32) -> Result<WellBehavedReport> {
    check_bound(t, bound)?;
    let tau = t.forbidden().threshold();
    let start = (tau + 1).min(bound as u64) as u32;
    let violations: Vec<u32> = (start..bound)
        .filter(|&x| {
            let (r, _) = diag_counts(t, x);
            r + 1 >= x
        })
        .collect();

    let pattern = violations.first().and_then(|&m| {
        let dyadic: Vec<u32> = std::iter::successors(Some(m as u64), |v| Some(v * 2))
            .take_while(|&v| v < bound as u64)
            .map(|v| v as u32)
            .collect();
        (dyadic == violations && dyadic_blocks_match(t, m, tau, bound)).then_some(m)
    });

    Ok(match pattern {
        Some(m) => WellBehavedReport {
            scanned_bound: bound,
            violations,
            verdict: Verdict::NotWellBehavedPattern,
            c1_candidate: None,
            dyadic_base: Some(m),
        },
        None => {
            let c1 = violations
                .last()
                .map_or(tau + 1, |&v| (v as u64).max(tau + 1));
            WellBehavedReport {
                scanned_bound: bound,
                violations,
                verdict: Verdict::WellBehavedUpToBound,
                c1_candidate: Some(c1),
                dyadic_base: None,
            }
        }
    })
}

/// Index `k` of the block `[m 2^(k-1), m 2^k)` holding `v`, if any.
fn dyadic_block(v: u64, m: u64) -> Option<u32> {
    let mut k = 0;
    while v >= m << k {
        k += 1;
    }
    // v < m 2^k; inside the block iff 2v >= m 2^k.
    (2 * v >= m << k).then_some(k)
}

/// For `x > 4Fmax+3|F|+1`: `(x, y)` in `S` iff `x` and `y` share a block.
fn dyadic_blocks_match(t: &PairTable, m: u32, tau: u64, bound: u32) -> bool {
    let start = (tau + 2).min(bound as u64) as u32;
    (start..bound).all(|x| {
        (0..x).all(|y| {
            let in_s = t.get(x, y) < y;
            let bx = dyadic_block(x as u64, m as u64);
            let same = bx.is_some() && bx == dyadic_block(y as u64, m as u64);
            in_s == same
        })
    })
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

    #[test]
    fn structural_suites_pass() {
        for t in [nim(200), t110(200)] {
            for rep in [
                check_rowcol(&t),
                check_rowcol2(&t),
                check_xi0(&t),
                check_consistency(&t),
            ] {
                assert!(rep.passed(), "{rep}");
                assert!(rep.checked > 0);
            }
            assert!(check_b_plus_2l(&t, 200).unwrap().passed());
            assert!(check_b_lt_l(&t, 200).unwrap().passed());
        }
    }

    #[test]
    fn off_diagonal_check_matches_direct_counts() {
        use crate::analysis::sets::{b_count, r_count, s_contains};
        let t = t110(120);
        let mut checked = 0;
        for x in 9..120 {
            for y in 8..x {
                if !s_contains(&t, x, y).unwrap() {
                    assert!(b_count(&t, x, y).unwrap() >= r_count(&t, x, y).unwrap());
                    checked += 1;
                }
            }
        }
        assert_eq!(check_b_lt_l(&t, 120).unwrap().checked, checked);
    }

    #[test]
    fn diagonal_relation_fails_below_threshold() {
        // rb_diag(t110, 1) = (1, 0): 1 + 0 + 1 != 1, allowed since 1 <= 7.
        let t = t110(16);
        let mut rep = SuiteReport::new("below threshold");
        let (r, b) = diag_counts(&t, 1);
        rep.check(r + 2 * b + 1 == 1, || "x = 1".into());
        assert!(!rep.passed());
        assert_eq!(rep.examples, vec!["x = 1".to_string()]);
    }

    #[test]
    fn phi_identity_cases() {
        let t = t110(64);
        let mut saw_in_s = false;
        let mut saw_b_zero = false;
        for x in 8..30 {
            for y in 0..x {
                let rep = phi_step_check(&t, x, y).unwrap();
                assert!(rep.passed(), "{rep:?}");
                let in_s = t.get(x, y) < y;
                let b = column_count(&t, x, y);
                if in_s {
                    saw_in_s = true;
                    assert_eq!(rep.expected, PhiStep::Identity);
                }
                if b == 0 {
                    saw_b_zero = true;
                    assert_eq!(rep.expected, PhiStep::Identity);
                }
            }
        }
        assert!(saw_in_s && saw_b_zero);
    }

    #[test]
    fn phi_swap_at_smallest_hole() {
        let t = t110(64);
        let hole = (8..64u32)
            .flat_map(|x| (0..x).map(move |y| (x, y)))
            .find(|&(x, y)| crate::analysis::sets::is_hole(&t, x, y).unwrap())
            .expect("Nim-{110} has holes above the threshold");
        let rep = phi_step_check(&t, hole.0, hole.1).unwrap();
        let b = column_count(&t, hole.0, hole.1);
        let r = row_count(&t, hole.0, hole.1);
        assert_eq!(
            rep.expected,
            PhiStep::Swap {
                removed: (hole.0, hole.1 - b),
                added: (hole.0 + r, hole.1)
            }
        );
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.displacement_ok());
    }

    #[test]
    fn phi_preconditions() {
        let t = t110(32);
        assert!(phi_step_check(&t, 9, 9).is_err());
        assert!(phi_step_check(&t, 7, 0).is_err());
    }

    #[test]
    fn halving_on_110_at_nine() {
        // The map is not exactly 4-to-1 on the line x = 2y: R_18 holds the
        // strays (2y, y), y odd, and the targets (2b, b) lose a preimage.
        let t = t110(64);
        let rep = halve_check(&t, 9, 1, 36).unwrap();
        assert!(!rep.passed());
        assert!(rep.offending.iter().all(|&((x, y), _)| x == 2 * y));
        assert_eq!((rep.source, rep.target), (33, 6));

        // From k = 2 on, the offending points stay on the line but counts
        // scale exactly.
        let rep = halve_check(&t, 9, 2, 72).unwrap();
        assert!(rep
            .offending
            .iter()
            .all(|&((x, y), _)| x == 2 * y || x / 2 == 2 * (y / 2)));
        assert!(rep.counts_scale_by_four());
    }

    #[test]
    fn halving_vacuous_on_empty_set() {
        let rep = halve_check_set(&PointSet::new(100), 9, 1).unwrap();
        assert!(rep.passed());
        assert_eq!((rep.source, rep.target), (0, 0));
    }

    #[test]
    fn halving_names_injected_fault() {
        // Four preimages of (10, 6) and the point itself, nothing else.
        let mut set = PointSet::new(40);
        for p in [(10, 6), (20, 12), (21, 12), (20, 13), (21, 13)] {
            set.insert(p);
        }
        assert!(halve_check_set(&set, 9, 1).unwrap().passed());
        set.remove(&(21, 13));
        let rep = halve_check_set(&set, 9, 1).unwrap();
        let names: Vec<Point> = rep.offending.iter().map(|o| o.0).collect();
        assert_eq!(names, vec![(10, 6), (21, 13)]);
    }

    #[test]
    fn halving_preconditions() {
        let t = t110(64);
        assert!(halve_check(&t, 7, 1, 100).is_err());
        assert!(halve_check(&t, 9, 0, 100).is_err());
        assert!(halve_check(&t, 9, 1, 35).is_err());
    }

    #[test]
    fn ordinary_nim_is_dyadic() {
        let t = nim(1024);
        let rep = well_behaved_scan(&t, 1024).unwrap();
        assert_eq!(rep.verdict, Verdict::NotWellBehavedPattern);
        assert_eq!(rep.dyadic_base, Some(1));
        assert_eq!(
            rep.violations,
            (0..10).map(|k| 1 << k).collect::<Vec<u32>>()
        );
    }

    #[test]
    fn nim_110_is_well_behaved() {
        let t = t110(1024);
        let rep = well_behaved_scan(&t, 1024).unwrap();
        assert_eq!(rep.verdict, Verdict::WellBehavedUpToBound);
        assert!(rep.c1_candidate.unwrap() >= 8);
    }

    #[test]
    fn vacuous_scan() {
        let t = t110(16);
        let rep = well_behaved_scan(&t, 5).unwrap();
        assert!(rep.violations.is_empty());
        assert_eq!(rep.verdict, Verdict::WellBehavedUpToBound);
        assert_eq!(rep.c1_candidate, Some(8));
        assert!(well_behaved_scan(&t, 17).is_err());
    }

    #[test]
    fn block_index() {
        assert_eq!(dyadic_block(0, 1), None);
        assert_eq!(dyadic_block(1, 1), Some(1));
        assert_eq!(dyadic_block(5, 1), Some(3));
        assert_eq!(dyadic_block(2, 3), Some(0));
        assert_eq!(dyadic_block(1, 3), None);
        assert_eq!(dyadic_block(3, 3), Some(1));
    }
}
