use std::collections::BTreeSet;

use crate::error::{range, Result};

/// An ordered pair `(x', y')` of non-negative integers.
pub type Point = (u32, u32);

/// A finite set of points known exactly for every `x' <= xmax`.
///
/// Membership beyond `xmax` is an error rather than `false`, so a truncated
/// set can never silently undercount.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PointSet {
    points: BTreeSet<Point>,
    xmax: u32,
}

impl PointSet {
    pub fn new(xmax: u32) -> Self {
        PointSet {
            points: BTreeSet::new(),
            xmax,
        }
    }

    pub fn xmax(&self) -> u32 {
        self.xmax
    }

    /// Inserts a point; points beyond `xmax` are dropped and `false` returned.
    pub fn insert(&mut self, p: Point) -> bool {
        p.0 <= self.xmax && self.points.insert(p)
    }

    pub fn remove(&mut self, p: &Point) -> bool {
        self.points.remove(p)
    }

    pub fn contains(&self, x: u32, y: u32) -> Result<bool> {
        if x > self.xmax {
            return Err(range(format!(
                "point ({x},{y}) lies beyond the truncation bound x' <= {}",
                self.xmax
            )));
        }
        Ok(self.points.contains(&(x, y)))
    }

    pub(crate) fn has(&self, p: &Point) -> bool {
        self.points.contains(p)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points in ascending `(x', y')` order.
    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        self.points.iter().copied()
    }

    /// The subset satisfying `keep`, with the same truncation bound.
    pub fn filter(&self, mut keep: impl FnMut(Point) -> bool) -> PointSet {
        PointSet {
            points: self.iter().filter(|&p| keep(p)).collect(),
            xmax: self.xmax,
        }
    }

    /// Points in `self` but not in `other`.
    pub fn difference(&self, other: &PointSet) -> Vec<Point> {
        self.points.difference(&other.points).copied().collect()
    }
}
