//! Brute-force P/N classification by backward induction over a bounded box.
//!
//! This is deliberately naive: it enumerates every move of every canonical
//! position with all heaps below `bound` and uses nothing but the definition
//! of P- and N-positions. Every fast path in the crate is tested against it.

use std::fmt;

use crate::error::{domain, Error, Result};
use crate::rules::{ForbiddenSet, Position};

/// Default ceiling on the dense status array, `128^3` cells.
pub const DEFAULT_MAX_CELLS: u64 = 128 * 128 * 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    P,
    N,
    Forbidden,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::P => "P",
            Status::N => "N",
            Status::Forbidden => "Forbidden",
        })
    }
}

/// Classification of every canonical position with all heaps `< bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxSolution {
    bound: u32,
    forbidden: ForbiddenSet,
    cells: Vec<Option<Status>>,
    ignored_forbidden: bool,
}

impl BoxSolution {
    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn forbidden(&self) -> &ForbiddenSet {
        &self.forbidden
    }

    /// True when some member of `F` lies outside the box and was ignored.
    pub fn ignored_forbidden(&self) -> bool {
        self.ignored_forbidden
    }

    fn index(&self, p: &Position) -> usize {
        let n = self.bound as usize;
        (p.a() as usize * n + p.b() as usize) * n + p.c() as usize
    }

    /// Status of `p`, or `None` when `p` is outside the box.
    pub fn status(&self, p: &Position) -> Option<Status> {
        if p.a() >= self.bound {
            return None;
        }
        self.cells[self.index(p)]
    }

    /// Every classified position in processing order.
    pub fn positions(&self) -> impl Iterator<Item = Position> + '_ {
        box_order(self.bound)
    }

    pub fn p_positions(&self) -> impl Iterator<Item = Position> + '_ {
        self.positions()
            .filter(move |p| self.status(p) == Some(Status::P))
    }

    /// Positions violating the P/N partition property: a P-position with a P
    /// child, or an N-position with no P child. Empty for a correct solution.
    pub fn partition_violations(&self) -> Vec<Position> {
        let mut bad = Vec::new();
        for p in self.positions() {
            let st = self.status(&p);
            if st == Some(Status::Forbidden) {
                continue;
            }
            let has_p_child = lowered(p).any(|q| self.status(&q) == Some(Status::P));
            let ok = match st {
                Some(Status::P) => !has_p_child,
                Some(Status::N) => has_p_child,
                _ => false,
            };
            if !ok {
                bad.push(p);
            }
        }
        bad
    }
}

/// Canonical positions with all heaps below `bound`, ascending by total beans
/// and then lexicographically on the sorted triple.
fn box_order(bound: u32) -> impl Iterator<Item = Position> {
    let max_total = 3 * (bound as u64).saturating_sub(1);
    (0..=max_total).flat_map(move |total| {
        // Lexicographic ascending on (a, b, c) with a >= b >= c.
        (0..bound).flat_map(move |a| {
            (0..=a).filter_map(move |b| {
                let rest = total.checked_sub(a as u64 + b as u64)?;
                (rest <= b as u64).then(|| Position::new(a, b, rest as u32))
            })
        })
    })
}

/// Every position one move below `p`, forbidden or not.
fn lowered(p: Position) -> impl Iterator<Item = Position> {
    let [a, b, c] = p.heaps();
    (0..a)
        .map(move |v| Position::new(v, b, c))
        .chain((0..b).map(move |v| Position::new(a, v, c)))
        .chain((0..c).map(move |v| Position::new(a, b, v)))
}

/// Classifies the box with the default memory ceiling.
pub fn solve_box(bound: u32, f: &ForbiddenSet) -> Result<BoxSolution> {
    solve_box_with_ceiling(bound, f, DEFAULT_MAX_CELLS)
}

pub fn solve_box_with_ceiling(bound: u32, f: &ForbiddenSet, max_cells: u64) -> Result<BoxSolution> {
    if bound == 0 {
        return Err(domain("box bound must be at least 1"));
    }
    let cells = (bound as u64).pow(3);
    if cells > max_cells {
        return Err(Error::Resource(format!(
            "box of bound {bound} needs {cells} cells, ceiling is {max_cells}"
        )));
    }
    let mut sol = BoxSolution {
        bound,
        forbidden: f.clone(),
        cells: vec![None; cells as usize],
        ignored_forbidden: f.iter().any(|p| p.a() >= bound),
    };
    for p in box_order(bound) {
        let st = if f.contains(&p) {
            Status::Forbidden
        } else if lowered(p).any(|q| sol.status(&q) == Some(Status::P)) {
            Status::N
        } else {
            Status::P
        };
        let i = sol.index(&p);
        sol.cells[i] = Some(st);
    }
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::misere_forbidden;

    fn f110() -> ForbiddenSet {
        std::iter::once(Position::new(1, 1, 0)).collect()
    }

    fn st(sol: &BoxSolution, x: u32, y: u32, z: u32) -> Status {
        sol.status(&Position::new(x, y, z)).unwrap()
    }

    #[test]
    fn terminal_position_is_p() {
        let sol = solve_box(1, &ForbiddenSet::new()).unwrap();
        assert_eq!(st(&sol, 0, 0, 0), Status::P);
        assert_eq!(sol.positions().count(), 1);
    }

    #[test]
    fn small_examples() {
        let sol = solve_box(4, &ForbiddenSet::new()).unwrap();
        assert_eq!(st(&sol, 3, 2, 1), Status::P);
        assert_eq!(st(&sol, 2, 2, 1), Status::N);

        let sol = solve_box(4, &f110()).unwrap();
        assert_eq!(st(&sol, 1, 1, 0), Status::Forbidden);
        assert_eq!(st(&sol, 1, 1, 1), Status::P);
        assert_eq!(st(&sol, 2, 1, 0), Status::P);
        assert_eq!(st(&sol, 2, 2, 0), Status::N);

        let sol = solve_box(3, &misere_forbidden()).unwrap();
        assert_eq!(st(&sol, 1, 0, 0), Status::P);
        assert_eq!(st(&sol, 1, 1, 0), Status::N);
        assert_eq!(st(&sol, 1, 1, 1), Status::P);
    }

    #[test]
    fn bouton_cross_check() {
        let sol = solve_box(20, &ForbiddenSet::new()).unwrap();
        for p in sol.positions() {
            let xor = p.a() ^ p.b() ^ p.c();
            assert_eq!(sol.status(&p) == Some(Status::P), xor == 0, "{p}");
        }
    }

    #[test]
    fn partition_property_holds() {
        for f in [ForbiddenSet::new(), f110(), misere_forbidden()] {
            let sol = solve_box(14, &f).unwrap();
            assert!(sol.partition_violations().is_empty());
        }
    }

    #[test]
    fn out_of_box_members_are_flagged() {
        let f: ForbiddenSet = [Position::new(9, 1, 0), Position::new(1, 1, 0)]
            .into_iter()
            .collect();
        let sol = solve_box(5, &f).unwrap();
        assert!(sol.ignored_forbidden());
        assert_eq!(st(&sol, 1, 1, 0), Status::Forbidden);
        assert!(!solve_box(5, &f110()).unwrap().ignored_forbidden());
    }

    #[test]
    fn ceiling_and_domain_errors() {
        assert!(matches!(
            solve_box(0, &ForbiddenSet::new()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            solve_box(129, &ForbiddenSet::new()),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            solve_box_with_ceiling(10, &ForbiddenSet::new(), 999),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn deterministic() {
        let a = solve_box(12, &f110()).unwrap();
        let b = solve_box(12, &f110()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn order_is_child_first() {
        let order: Vec<_> = box_order(6).collect();
        assert_eq!(order.len(), 6 * 7 * 8 / 6);
        for w in order.windows(2) {
            assert!(w[0].total() < w[1].total() || (w[0].total() == w[1].total() && w[0] < w[1]));
        }
    }
}
