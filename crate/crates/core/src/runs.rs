//! Incremental maximal-run bookkeeping for monochromatic lines.
//!
//! For each of the four line directions we keep the length of every maximal
//! monochromatic run at both of its endpoints. Claiming a point merges the run
//! ending just before it with the run starting just after it; only the two new
//! endpoints are rewritten, so a claim costs O(1) map operations. Values stored
//! at interior points go stale and are never read: a lookup is only made next
//! to an unclaimed point, where the neighbour is necessarily an endpoint.

use std::collections::HashMap;

use crate::geom::{LineDir4, PlayerColor, Point};

/// Span of the maximal run produced by a claim, in one direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunSpan {
    pub start: Point,
    pub len: usize,
}

#[derive(Clone, Debug, Default)]
pub struct RunIndex {
    ends: [HashMap<Point, usize>; 4],
}

impl RunIndex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Length of the run whose endpoint is `p`, provided `p` has `color`.
    ///
    /// Only meaningful when `p` is an endpoint in `dir`, which is the case
    /// whenever one of its neighbours along `dir` is unclaimed.
    pub fn endpoint_len<F>(&self, p: Point, dir: LineDir4, color: PlayerColor, color_at: F) -> usize
    where
        F: Fn(Point) -> Option<PlayerColor>,
    {
        if color_at(p) == Some(color) {
            self.ends[dir.index()].get(&p).copied().unwrap_or(0)
        } else {
            0
        }
    }

    /// Records that `p` was claimed by `color`. `color_at` must report the
    /// board without `p` (or with `p`; `p` itself is never queried).
    pub fn claim<F>(&mut self, p: Point, color: PlayerColor, color_at: F) -> [RunSpan; 4]
    where
        F: Fn(Point) -> Option<PlayerColor>,
    {
        let mut spans = [RunSpan { start: p, len: 1 }; 4];
        for dir in LineDir4::ALL {
            let step = dir.step();
            let before = self.endpoint_len(p - step, dir, color, &color_at);
            let after = self.endpoint_len(p + step, dir, color, &color_at);
            let total = 1 + before + after;
            let start = p - step * before as i64;
            let end = p + step * after as i64;
            let ends = &mut self.ends[dir.index()];
            ends.insert(start, total);
            ends.insert(end, total);
            if before > 0 && after > 0 {
                // p is interior now; keep an entry so the map stays one-per-cell.
                ends.insert(p, total);
            }
            spans[dir.index()] = RunSpan { start, len: total };
        }
        spans
    }

    /// Brute-force recount of the run through `p`, for tests and self-checks.
    pub fn rescan<F>(p: Point, dir: LineDir4, color: PlayerColor, color_at: F) -> RunSpan
    where
        F: Fn(Point) -> Option<PlayerColor>,
    {
        let step = dir.step();
        let mut back = 0i64;
        while color_at(p - step * (back + 1)) == Some(color) {
            back += 1;
        }
        let mut fwd = 0i64;
        while color_at(p + step * (fwd + 1)) == Some(color) {
            fwd += 1;
        }
        RunSpan {
            start: p - step * back,
            len: (1 + back + fwd) as usize,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merging_two_runs_reports_joint_length() {
        let mut cells = HashMap::new();
        let mut idx = RunIndex::new();
        for x in [0, 1, 3, 4] {
            let p = Point::new(x, 0);
            idx.claim(p, PlayerColor::Red, |q| cells.get(&q).copied());
            cells.insert(p, PlayerColor::Red);
        }
        let spans = idx.claim(Point::new(2, 0), PlayerColor::Red, |q| cells.get(&q).copied());
        assert_eq!(
            spans[LineDir4::E.index()],
            RunSpan {
                start: Point::new(0, 0),
                len: 5
            }
        );
        assert_eq!(spans[LineDir4::N.index()].len, 1);
    }

    #[test]
    fn other_color_breaks_run() {
        let mut cells = HashMap::new();
        let mut idx = RunIndex::new();
        let blue = Point::new(1, 1);
        idx.claim(blue, PlayerColor::Blue, |q| cells.get(&q).copied());
        cells.insert(blue, PlayerColor::Blue);
        let spans = idx.claim(Point::new(0, 0), PlayerColor::Red, |q| cells.get(&q).copied());
        assert_eq!(spans[LineDir4::NE.index()].len, 1);
    }
}
