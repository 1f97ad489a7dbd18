//! The fast solver.
//!
//! For every unordered pair `(x, y)` there is exactly one `z` making
//! `{x, y, z}` a P-position, and `z <= x + y + |F|`. Pairs are processed in
//! ascending `(max, min)` order; at that point every P-position `{x', y, z}`
//! with `x' < x` and every `{x, y', z}` with `y' < y` is already known, so the
//! third coordinate of `(x, y)` is the least `z` not used by either family and
//! not forbidden. Each heap value `v` owns an occupancy bit-array recording
//! the thirds of all processed pairs containing `v`; the exclusion set of
//! `(x, y)` is the OR of the arrays of `x` and `y`.

mod cache;

pub use cache::{load_table, save_table, MAGIC, VERSION};

use std::fmt;

use crate::error::{range, Error, Result};
use crate::oracle::Status;
use crate::rules::{ForbiddenSet, Position};

/// Default memory ceiling for a solve, 1 GiB.
pub const DEFAULT_MAX_BYTES: u64 = 1 << 30;

/// The unique third coordinate of every unordered pair below `n`.
#[derive(Clone, PartialEq, Eq)]
pub struct PairTable {
    n: u32,
    forbidden: ForbiddenSet,
    // Row-major lower triangle: (x, y) with y <= x at x(x+1)/2 + y.
    third: Vec<u32>,
}

impl fmt::Debug for PairTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PairTable")
            .field("n", &self.n)
            .field("forbidden", &self.forbidden)
            .field("entries", &self.third.len())
            .finish()
    }
}

/// `pi(m)` split by the shape of the multiset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PiCounts {
    /// All P-positions with every heap `< m`.
    pub pi: u64,
    /// Shape `{x, x, x}`.
    pub pi1: u64,
    /// Shape `{x, x, y}`, `x != y`.
    pub pi2: u64,
    /// Three distinct heaps.
    pub pi3: u64,
}

#[inline]
fn tri(x: u32, y: u32) -> usize {
    let x = x as usize;
    x * (x + 1) / 2 + y as usize
}

/// Bytes needed to solve at pair bound `n` with `|F| = fsize`.
pub fn estimate_bytes(n: u32, fsize: usize) -> u64 {
    let n = n as u64;
    let words = zbound_for(n as u32, fsize).div_ceil(64) + 1;
    let table = (n * (n + 1) / 2).saturating_mul(4);
    let occupancy = n.saturating_mul(words).saturating_mul(8);
    table.saturating_add(occupancy).saturating_add(n * 8)
}

fn zbound_for(n: u32, fsize: usize) -> u64 {
    2 * (n as u64).saturating_sub(1) + fsize as u64
}

impl PairTable {
    /// Pair bound: the table covers every `(x, y)` with `max(x, y) < n`.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn forbidden(&self) -> &ForbiddenSet {
        &self.forbidden
    }

    /// Largest representable third, `2(n-1) + |F|`.
    pub fn zbound(&self) -> u64 {
        zbound_for(self.n, self.forbidden.size())
    }

    pub(crate) fn from_parts(n: u32, forbidden: ForbiddenSet, third: Vec<u32>) -> Self {
        debug_assert_eq!(third.len(), tri(n, 0));
        PairTable {
            n,
            forbidden,
            third,
        }
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.third
    }

    /// Third coordinate for the pair `(x, y)` in either order.
    pub fn third_of(&self, x: u32, y: u32) -> Result<u32> {
        let (hi, lo) = if x >= y { (x, y) } else { (y, x) };
        if hi >= self.n {
            return Err(range(format!(
                "pair ({x},{y}) is outside the table (n = {}); re-solve with n > {hi}",
                self.n
            )));
        }
        Ok(self.third[tri(hi, lo)])
    }

    /// Unchecked lookup with `y <= x < n`.
    #[inline]
    pub(crate) fn get(&self, x: u32, y: u32) -> u32 {
        self.third[tri(x, y)]
    }

    /// Every stored pair as `(x, y, third)` with `y <= x`, row by row.
    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        (0..self.n).flat_map(move |x| (0..=x).map(move |y| (x, y, self.get(x, y))))
    }

    /// P/N status of a position whose two smaller heaps are below `n`.
    pub fn classify(&self, p: &Position) -> Result<Status> {
        if self.forbidden.contains(p) {
            return Ok(Status::Forbidden);
        }
        if p.b() >= self.n {
            return Err(range(format!(
                "second-largest heap of {p} is outside the table (n = {})",
                self.n
            )));
        }
        Ok(if self.get(p.b(), p.c()) == p.a() {
            Status::P
        } else {
            Status::N
        })
    }

    /// Counts P-positions with all heaps below `m`. Each multiset `{a >= b >= c}`
    /// is counted at the pair `(b, c)`, the only pair whose third is at least its
    /// larger member.
    pub fn pi_counts(&self, m: u32) -> Result<PiCounts> {
        if m > self.n {
            return Err(range(format!(
                "pi({m}) needs a table with n >= {m}, have {}",
                self.n
            )));
        }
        let mut c = PiCounts::default();
        for x in 0..m {
            for y in 0..=x {
                let z = self.get(x, y);
                if z < x || z >= m {
                    continue;
                }
                c.pi += 1;
                if z == y {
                    c.pi1 += 1;
                } else if z == x || x == y {
                    c.pi2 += 1;
                } else {
                    c.pi3 += 1;
                }
            }
        }
        Ok(c)
    }

    /// `pi(m)` for every `m` in `1..=mmax`, in one pass.
    pub fn pi_prefix(&self, mmax: u32) -> Result<Vec<u64>> {
        if mmax > self.n {
            return Err(range(format!(
                "pi({mmax}) needs a table with n >= {mmax}, have {}",
                self.n
            )));
        }
        // A multiset counted at pair (x, y) enters pi(m) once m > third.
        let mut starts = vec![0u64; mmax as usize + 1];
        for x in 0..mmax {
            for y in 0..=x {
                let z = self.get(x, y);
                if z >= x && z < mmax {
                    starts[z as usize + 1] += 1;
                }
            }
        }
        let mut acc = 0;
        Ok(starts
            .into_iter()
            .skip(1)
            .map(|s| {
                acc += s;
                acc
            })
            .collect())
    }
}

/// Solves `Nim - f` for every pair below `n` with the default memory ceiling.
pub fn solve(n: u32, f: &ForbiddenSet) -> Result<PairTable> {
    solve_with_ceiling(n, f, DEFAULT_MAX_BYTES)
}

pub fn solve_with_ceiling(n: u32, f: &ForbiddenSet, max_bytes: u64) -> Result<PairTable> {
    if n == 0 {
        return Err(Error::Domain("pair bound n must be at least 1".into()));
    }
    let need = estimate_bytes(n, f.size());
    if need > max_bytes {
        return Err(Error::Resource(format!(
            "solving n = {n} needs about {need} bytes, ceiling is {max_bytes}"
        )));
    }
    Sieve::new(n, f).run()
}

struct Sieve<'a> {
    n: u32,
    f: &'a ForbiddenSet,
    cap: u64,
    words: usize,
    occupied: Vec<u64>,
    // First word of each value's array that still has a clear bit.
    first_open: Vec<usize>,
}

impl<'a> Sieve<'a> {
    fn new(n: u32, f: &'a ForbiddenSet) -> Self {
        let cap = zbound_for(n, f.size()) + 1;
        // One spare word so a full array still has an open word to point at.
        let words = cap.div_ceil(64) as usize + 1;
        Sieve {
            n,
            f,
            cap,
            words,
            occupied: vec![0; n as usize * words],
            first_open: vec![0; n as usize],
        }
    }

    fn run(mut self) -> Result<PairTable> {
        let mut third = Vec::with_capacity(tri(self.n, 0));
        let fmax = self.f.fmax();
        let check_forbidden = !self.f.is_empty();
        for x in 0..self.n {
            for y in 0..=x {
                let z = self.least_open(x, y, check_forbidden && x <= fmax)?;
                third.push(z as u32);
                self.occupy(x, z);
                if y != x {
                    self.occupy(y, z);
                }
            }
        }
        Ok(PairTable::from_parts(self.n, self.f.clone(), third))
    }

    fn least_open(&self, x: u32, y: u32, check_forbidden: bool) -> Result<u64> {
        let (bx, by) = (x as usize * self.words, y as usize * self.words);
        let start = self.first_open[x as usize].max(self.first_open[y as usize]);
        for w in start..self.words {
            let mut open = !(self.occupied[bx + w] | self.occupied[by + w]);
            while open != 0 {
                let z = (w as u64) * 64 + open.trailing_zeros() as u64;
                if z >= self.cap {
                    return Err(self.overflow(x, y));
                }
                if check_forbidden
                    && z <= u32::MAX as u64
                    && self.f.contains(&Position::new(x, y, z as u32))
                {
                    open &= open - 1;
                    continue;
                }
                return Ok(z);
            }
        }
        Err(self.overflow(x, y))
    }

    fn occupy(&mut self, v: u32, z: u64) {
        let base = v as usize * self.words;
        self.occupied[base + (z / 64) as usize] |= 1 << (z % 64);
        let fo = &mut self.first_open[v as usize];
        while *fo < self.words && self.occupied[base + *fo] == u64::MAX {
            *fo += 1;
        }
    }

    fn overflow(&self, x: u32, y: u32) -> Error {
        Error::Domain(format!(
            "internal invariant violated: no third for ({x},{y}) within x + y + |F| (capacity {})",
            self.cap
        ))
    }
}
