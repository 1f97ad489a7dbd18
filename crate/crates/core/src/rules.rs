//! Positions, moves and forbidden sets of three-heap unlabeled Nim.
//!
//! A game `Nim - F` is ordinary Nim with the positions in `F` deleted from the
//! game graph together with every move into or out of them. Heaps are
//! unlabeled, so a position is a multiset of three heap sizes, stored sorted
//! in descending order.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{domain, Error, Result};

/// A canonical three-heap position, `a >= b >= c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    a: u32,
    b: u32,
    c: u32,
}

impl Position {
    /// Builds the canonical position from three heap sizes in any order.
    pub fn new(x: u32, y: u32, z: u32) -> Self {
        let mut h = [x, y, z];
        h.sort_unstable_by(|p, q| q.cmp(p));
        Position {
            a: h[0],
            b: h[1],
            c: h[2],
        }
    }

    /// Largest heap.
    pub fn a(&self) -> u32 {
        self.a
    }

    /// Middle heap.
    pub fn b(&self) -> u32 {
        self.b
    }

    /// Smallest heap.
    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn heaps(&self) -> [u32; 3] {
        [self.a, self.b, self.c]
    }

    /// Total number of beans.
    pub fn total(&self) -> u64 {
        self.a as u64 + self.b as u64 + self.c as u64
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.a, self.b, self.c)
    }
}

/// Sorts three heap sizes into a [`Position`], rejecting negative sizes.
pub fn canonicalize(x: i64, y: i64, z: i64) -> Result<Position> {
    let conv = |v: i64| {
        u32::try_from(v)
            .map_err(|_| domain(format!("heap size {v} is not a non-negative 32-bit value")))
    };
    Ok(Position::new(conv(x)?, conv(y)?, conv(z)?))
}

/// A finite set of forbidden positions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ForbiddenSet {
    members: BTreeSet<Position>,
    fmax: u32,
}

impl ForbiddenSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, p: Position) -> bool {
        self.fmax = self.fmax.max(p.a());
        self.members.insert(p)
    }

    pub fn contains(&self, p: &Position) -> bool {
        // Nothing with a heap above fmax can be forbidden.
        p.a() <= self.fmax && self.members.contains(p)
    }

    /// `|F|`.
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `F_max`, the largest heap of any member; 0 for the empty set.
    pub fn fmax(&self) -> u32 {
        self.fmax
    }

    /// `4 F_max + 3 |F|`, the threshold above which the structural results on
    /// `S` hold.
    pub fn threshold(&self) -> u64 {
        4 * self.fmax as u64 + 3 * self.size() as u64
    }

    /// `2 F_max + |F|`, the threshold of the sharpened row/column bound.
    pub fn small_threshold(&self) -> u64 {
        2 * self.fmax as u64 + self.size() as u64
    }

    /// Members in ascending lexicographic order of their sorted triples.
    pub fn iter(&self) -> impl Iterator<Item = &Position> {
        self.members.iter()
    }

    pub fn union(&self, other: &ForbiddenSet) -> ForbiddenSet {
        self.iter().chain(other.iter()).copied().collect()
    }
}

impl FromIterator<Position> for ForbiddenSet {
    fn from_iter<I: IntoIterator<Item = Position>>(iter: I) -> Self {
        let mut f = ForbiddenSet::new();
        for p in iter {
            f.insert(p);
        }
        f
    }
}

impl fmt::Display for ForbiddenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// All positions reachable from `p` by lowering one heap, minus forbidden ones.
pub fn children(p: Position, f: &ForbiddenSet) -> Result<BTreeSet<Position>> {
    if f.contains(&p) {
        return Err(domain(format!("{p} is forbidden and has no moves")));
    }
    let [a, b, c] = p.heaps();
    let mut out = BTreeSet::new();
    let lowered = (0..a)
        .map(|v| Position::new(v, b, c))
        .chain((0..b).map(|v| Position::new(a, v, c)))
        .chain((0..c).map(|v| Position::new(a, b, v)));
    for q in lowered {
        if !f.contains(&q) {
            out.insert(q);
        }
    }
    Ok(out)
}

/// Parses the forbidden-file format: one position per line as three
/// whitespace-separated non-negative integers. Blank lines and lines starting
/// with `#` are skipped; duplicate multisets collapse.
pub fn parse_forbidden(text: &str) -> Result<ForbiddenSet> {
    let mut f = ForbiddenSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(Error::Parse {
                line,
                message: format!("expected 3 heap sizes, found {}", tokens.len()),
            });
        }
        let mut heaps = [0u32; 3];
        for (slot, tok) in heaps.iter_mut().zip(&tokens) {
            let v: i64 = tok.parse().map_err(|_| Error::Parse {
                line,
                message: format!("`{tok}` is not an integer"),
            })?;
            if v < 0 {
                return Err(Error::Parse {
                    line,
                    message: format!("negative heap size {v}"),
                });
            }
            *slot = u32::try_from(v).map_err(|_| Error::Parse {
                line,
                message: format!("heap size {v} does not fit in 32 bits"),
            })?;
        }
        f.insert(Position::new(heaps[0], heaps[1], heaps[2]));
    }
    Ok(f)
}

/// The childless positions of Nim, whose removal turns normal play into
/// misère play. For Nim that is the empty position alone.
pub fn misere_forbidden() -> ForbiddenSet {
    std::iter::once(Position::new(0, 0, 0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(ps: &[(u32, u32, u32)]) -> ForbiddenSet {
        ps.iter().map(|&(x, y, z)| Position::new(x, y, z)).collect()
    }

    #[test]
    fn canonicalize_sorts_descending() {
        assert_eq!(canonicalize(0, 0, 0).unwrap(), Position::new(0, 0, 0));
        assert_eq!(canonicalize(1, 3, 2).unwrap().heaps(), [3, 2, 1]);
        assert_eq!(canonicalize(1, 1, 0).unwrap().heaps(), [1, 1, 0]);
        assert!(matches!(canonicalize(-1, 0, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn children_examples() {
        let empty = ForbiddenSet::new();
        assert!(children(Position::new(0, 0, 0), &empty).unwrap().is_empty());

        let f = set(&[(1, 1, 0)]);
        assert!(children(Position::new(1, 1, 1), &f).unwrap().is_empty());
        let got: Vec<_> = children(Position::new(2, 1, 0), &f)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(got, vec![Position::new(1, 0, 0), Position::new(2, 0, 0)]);

        assert!(matches!(
            children(Position::new(1, 1, 0), &f),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn parse_examples() {
        let f = parse_forbidden("1 1 0\n").unwrap();
        assert_eq!(f, set(&[(1, 1, 0)]));
        assert_eq!((f.size(), f.fmax()), (1, 1));

        let f = parse_forbidden("0 1 1\n1 1 0\n").unwrap();
        assert_eq!(f, set(&[(1, 1, 0)]));
        assert_eq!(f.size(), 1);

        let f = parse_forbidden("# comment\n3 3 3\n2 1 0\n").unwrap();
        assert_eq!(f, set(&[(3, 3, 3), (2, 1, 0)]));
        assert_eq!((f.size(), f.fmax()), (2, 3));

        assert!(parse_forbidden("\n\n").unwrap().is_empty());
    }

    #[test]
    fn parse_errors_name_the_line() {
        match parse_forbidden("1 1 0\n1 x 0\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_forbidden("# c\n1 1\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_forbidden("1 -1 0\n") {
            Err(Error::Parse { line: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn misere_set() {
        let m = misere_forbidden();
        assert_eq!(m, set(&[(0, 0, 0)]));
        assert_eq!(m.size(), 1);
        assert_eq!(m.union(&set(&[(1, 1, 0)])), set(&[(0, 0, 0), (1, 1, 0)]));
    }

    #[test]
    fn empty_set_has_zero_fmax() {
        let f = ForbiddenSet::new();
        assert_eq!((f.size(), f.fmax(), f.threshold()), (0, 0, 0));
    }

    proptest! {
        #[test]
        fn canonical_under_permutation(x in 0u32..1000, y in 0u32..1000, z in 0u32..1000) {
            let p = Position::new(x, y, z);
            for q in [(x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)] {
                prop_assert_eq!(p, Position::new(q.0, q.1, q.2));
            }
            prop_assert!(p.a() >= p.b() && p.b() >= p.c());
            prop_assert_eq!(Position::new(p.a(), p.b(), p.c()), p);
        }

        #[test]
        fn children_shrink_total(x in 0u32..12, y in 0u32..12, z in 0u32..12) {
            let f = set(&[(1, 1, 0), (2, 2, 1)]);
            let p = Position::new(x, y, z);
            prop_assume!(!f.contains(&p));
            for q in children(p, &f).unwrap() {
                prop_assert!(q.total() < p.total());
                prop_assert!(!f.contains(&q));
            }
        }

        #[test]
        fn distinct_heaps_have_full_child_count(a in 3u32..40, db in 1u32..20, dc in 1u32..20) {
            prop_assume!(a > db + dc);
            let (b, c) = (a - db, a - db - dc);
            prop_assume!(c > 0);
            let n = children(Position::new(a, b, c), &ForbiddenSet::new()).unwrap().len();
            prop_assert_eq!(n as u32, a + b + c);
        }

        #[test]
        fn forbidden_set_stats(ps in proptest::collection::vec((0u32..20, 0u32..20, 0u32..20), 0..10)) {
            let f: ForbiddenSet = ps.iter().map(|&(x, y, z)| Position::new(x, y, z)).collect();
            let distinct: BTreeSet<_> = ps.iter().map(|&(x, y, z)| Position::new(x, y, z)).collect();
            prop_assert_eq!(f.size(), distinct.len());
            prop_assert_eq!(f.fmax(), distinct.iter().map(|p| p.a()).max().unwrap_or(0));
        }
    }
}
