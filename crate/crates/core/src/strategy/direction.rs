use std::collections::HashSet;

use crate::board::GameState;
use crate::compass::compass_of;
use crate::geom::{PlayerColor, Point};
use crate::rng::RngState;

use super::{arbitrary_fill, next_available, Strategy};

/// Breaker answering each of Maker's last points with the next free point in
/// that point's compass direction. Responds to Maker's points in declared
/// order; a short quota answers a prefix, a long one is topped up by fill.
pub fn direction_breaker(state: &GameState, quota: usize, _rng: &mut RngState) -> Vec<Point> {
    let mut pending = HashSet::with_capacity(quota);
    let mut out = Vec::with_capacity(quota);
    let last = state.history().last().filter(|m| m.player == PlayerColor::Red);
    if let Some(mv) = last {
        for &v in mv.points.iter().take(quota) {
            let q = next_available(state, v, compass_of(v), &pending);
            pending.insert(q);
            out.push(q);
        }
    }
    let rest = quota - out.len();
    out.extend(arbitrary_fill(state, rest, &pending));
    out
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DirectionBreaker;

impl Strategy for DirectionBreaker {
    fn name(&self) -> &'static str {
        "direction"
    }

    fn choose(&mut self, state: &GameState, quota: usize, rng: &mut RngState) -> Vec<Point> {
        direction_breaker(state, quota, rng)
    }
}
