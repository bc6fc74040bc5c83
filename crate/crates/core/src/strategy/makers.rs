use std::collections::HashSet;

use crate::board::GameState;
use crate::geom::Point;
use crate::rng::RngState;
use crate::spiral::spiral_point;

use super::{arbitrary_fill, Strategy};

/// Number of lowest-index free spiral points the random Maker chooses among.
pub const RANDOM_MAKER_WINDOW: usize = 50;

/// Maker that waits for a quota of at least n and then lays a full row in
/// untouched territory, more than 4n rows above everything claimed so far.
pub fn sprint_maker(state: &GameState, quota: usize) -> Vec<Point> {
    let n = state.n();
    let row = state.bbox().map_or(0, |(_, hi)| hi.y + 4 * n as i64 + 1);
    if quota >= n {
        let mut out: Vec<Point> = (0..n as i64).map(|x| Point::new(x, row)).collect();
        let pending: HashSet<Point> = out.iter().copied().collect();
        out.extend(arbitrary_fill(state, quota - n, &pending));
        out
    } else {
        // Spaced out so that no two of them are adjacent.
        (0..quota as i64).map(|k| Point::new(2 * k, row)).collect()
    }
}

/// Maker picking each point uniformly among the
/// [`RANDOM_MAKER_WINDOW`] lowest-index free points of the spiral.
pub fn random_maker(state: &GameState, quota: usize, rng: &mut RngState) -> Vec<Point> {
    let mut out = Vec::with_capacity(quota);
    let mut window: Vec<Point> = Vec::with_capacity(RANDOM_MAKER_WINDOW);
    let mut cursor = state.spiral_floor();
    let refill = |window: &mut Vec<Point>, cursor: &mut u64| {
        while window.len() < RANDOM_MAKER_WINDOW {
            let p = spiral_point(*cursor);
            *cursor += 1;
            if !state.is_claimed(p) {
                window.push(p);
            }
        }
    };
    for _ in 0..quota {
        refill(&mut window, &mut cursor);
        let k = rng.below(window.len());
        out.push(window.remove(k));
    }
    out
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SprintMaker;

impl Strategy for SprintMaker {
    fn name(&self) -> &'static str {
        "sprint"
    }

    fn choose(&mut self, state: &GameState, quota: usize, _rng: &mut RngState) -> Vec<Point> {
        sprint_maker(state, quota)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RandomMaker;

impl Strategy for RandomMaker {
    fn name(&self) -> &'static str {
        "random"
    }

    fn choose(&mut self, state: &GameState, quota: usize, rng: &mut RngState) -> Vec<Point> {
        random_maker(state, quota, rng)
    }
}

/// Plays [`arbitrary_fill`] for either side.
#[derive(Clone, Copy, Debug, Default)]
pub struct FillStrategy;

impl Strategy for FillStrategy {
    fn name(&self) -> &'static str {
        "fill"
    }

    fn choose(&mut self, state: &GameState, quota: usize, _rng: &mut RngState) -> Vec<Point> {
        arbitrary_fill(state, quota, &HashSet::new())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::Schedule;
    use crate::strategy::testutil::position;

    #[test]
    fn sprint_lays_full_row_far_away() {
        let s = position(
            5,
            Schedule::identity(),
            &[
                &[(0, 0)],
                &[(0, 3), (1, 1)],
                &[(2, 2), (7, 7), (9, 9)],
                &[(3, 3), (-1, 0), (-2, 0), (-3, 0)],
            ],
        );
        let out = sprint_maker(&s, 5);
        let row = 9 + 21;
        assert_eq!(out, (0..5).map(|x| Point::new(x, row)).collect::<Vec<_>>());
    }

    #[test]
    fn sprint_small_quota_scatters() {
        let s = position(5, Schedule::identity(), &[]);
        assert_eq!(
            sprint_maker(&s, 3),
            vec![Point::new(0, 0), Point::new(2, 0), Point::new(4, 0)]
        );
        assert!(sprint_maker(&s, 0).is_empty());
    }

    #[test]
    fn random_is_reproducible_and_valid() {
        let s = position(5, Schedule::identity(), &[&[(0, 0)], &[(1, 0), (1, 1)]]);
        let a = random_maker(&s, 30, &mut RngState::new(99));
        let b = random_maker(&s, 30, &mut RngState::new(99));
        assert_eq!(a, b);
        let uniq: HashSet<_> = a.iter().collect();
        assert_eq!(uniq.len(), 30);
        assert!(a.iter().all(|p| !s.is_claimed(*p)));
        assert!(random_maker(&s, 0, &mut RngState::new(1)).is_empty());
    }
}
