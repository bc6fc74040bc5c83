//! Greedy run-extending Maker.
//!
//! Each pick takes the free point next to a red point that would create the
//! longest red run. Ties go to the point whose best n-window (over the
//! directions achieving that run) holds the fewest blue points, then to the
//! lexicographically greatest (x, y).

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::board::GameState;
use crate::cover::line_coords;
use crate::geom::{LineDir4, PlayerColor, Point};
use crate::rng::RngState;
use crate::runs::RunIndex;

use super::{arbitrary_fill, Strategy};

const NEIGHBOURS: [Point; 8] = [
    Point::new(-1, -1),
    Point::new(-1, 0),
    Point::new(-1, 1),
    Point::new(0, -1),
    Point::new(0, 1),
    Point::new(1, -1),
    Point::new(1, 0),
    Point::new(1, 1),
];

/// Candidate scores kept up to date under claims.
#[derive(Clone, Debug)]
struct GreedyIndex {
    n: usize,
    cells: HashMap<Point, PlayerColor>,
    runs: RunIndex,
    scores: HashMap<Point, usize>,
    buckets: BTreeMap<usize, BTreeSet<Reverse<Point>>>,
    /// Blue line parameters per (direction, line index).
    blue_lines: HashMap<(LineDir4, i64), BTreeSet<i64>>,
    red: usize,
}

impl GreedyIndex {
    fn new(n: usize) -> Self {
        GreedyIndex {
            n,
            cells: HashMap::new(),
            runs: RunIndex::new(),
            scores: HashMap::new(),
            buckets: BTreeMap::new(),
            blue_lines: HashMap::new(),
            red: 0,
        }
    }

    fn from_state(state: &GameState) -> Self {
        let mut idx = GreedyIndex::new(state.n());
        for (p, c) in state.sorted_cells() {
            idx.claim(p, c);
        }
        idx
    }

    fn color_at(&self, p: Point) -> Option<PlayerColor> {
        self.cells.get(&p).copied()
    }

    fn red_len(&self, p: Point, dir: LineDir4) -> usize {
        self.runs.endpoint_len(p, dir, PlayerColor::Red, |q| self.color_at(q))
    }

    /// Length of the red run through `c` in `dir` if `c` were red.
    fn run_if_claimed(&self, c: Point, dir: LineDir4) -> usize {
        let step = dir.step();
        1 + self.red_len(c - step, dir) + self.red_len(c + step, dir)
    }

    fn score(&self, c: Point) -> usize {
        LineDir4::ALL
            .into_iter()
            .map(|d| self.run_if_claimed(c, d))
            .max()
            .unwrap_or(1)
    }

    fn drop_candidate(&mut self, c: Point) {
        if let Some(old) = self.scores.remove(&c) {
            if let Some(set) = self.buckets.get_mut(&old) {
                set.remove(&Reverse(c));
                if set.is_empty() {
                    self.buckets.remove(&old);
                }
            }
        }
    }

    fn rescore(&mut self, c: Point) {
        if self.cells.contains_key(&c) {
            return;
        }
        self.drop_candidate(c);
        let s = self.score(c);
        self.scores.insert(c, s);
        self.buckets.entry(s).or_default().insert(Reverse(c));
    }

    fn claim(&mut self, p: Point, color: PlayerColor) {
        if self.cells.contains_key(&p) {
            return;
        }
        self.drop_candidate(p);
        if color == PlayerColor::Blue {
            self.cells.insert(p, color);
            for dir in LineDir4::ALL {
                let (i, k) = line_coords(p, dir);
                self.blue_lines.entry((dir, i)).or_default().insert(k);
            }
            return;
        }
        let cells = &self.cells;
        let spans = self.runs.claim(p, color, |q| cells.get(&q).copied());
        self.cells.insert(p, color);
        self.red += 1;
        for dir in LineDir4::ALL {
            let step = dir.step();
            let span = spans[dir.index()];
            let end = span.start + step * (span.len as i64 - 1);
            self.rescore(span.start - step);
            self.rescore(end + step);
        }
        for d in NEIGHBOURS {
            self.rescore(p + d);
        }
    }

    /// Fewest blue points over the n-windows through `c` along the directions
    /// in which `c` reaches `score`.
    fn blue_pressure(&self, c: Point, score: usize) -> usize {
        let n = self.n as i64;
        let mut best = usize::MAX;
        for dir in LineDir4::ALL {
            if self.run_if_claimed(c, dir) != score {
                continue;
            }
            let (i, k) = line_coords(c, dir);
            let Some(line) = self.blue_lines.get(&(dir, i)) else {
                return 0;
            };
            let blue: Vec<i64> = line.range(k - n + 1..k + n).copied().collect();
            let in_window = |s: i64| blue.partition_point(|&b| b < s + n) - blue.partition_point(|&b| b < s);
            // The count can only drop just after a blue point leaves the window.
            let starts = std::iter::once(k - n + 1).chain(blue.iter().map(|b| b + 1).filter(|&s| s <= k));
            for s in starts {
                best = best.min(in_window(s));
                if best == 0 {
                    return 0;
                }
            }
        }
        best
    }

    fn pick(&self) -> Option<Point> {
        if self.red == 0 {
            return (!self.cells.contains_key(&Point::ORIGIN)).then_some(Point::ORIGIN);
        }
        let (&score, tied) = self.buckets.last_key_value()?;
        if tied.len() == 1 {
            return tied.first().map(|r| r.0);
        }
        let mut best: Option<(usize, Point)> = None;
        // Iterates from the lexicographically greatest point down.
        for &Reverse(c) in tied {
            let pressure = self.blue_pressure(c, score);
            if best.is_none_or(|(b, _)| pressure < b) {
                best = Some((pressure, c));
                if pressure == 0 {
                    break;
                }
            }
        }
        best.map(|(_, c)| c)
    }

    fn pick_and_claim(&mut self, state: &GameState) -> Point {
        let p = self.pick().unwrap_or_else(|| {
            let pending: HashSet<Point> = self.cells.keys().copied().filter(|q| !state.is_claimed(*q)).collect();
            arbitrary_fill(state, 1, &pending)[0]
        });
        self.claim(p, PlayerColor::Red);
        p
    }
}

/// One-shot greedy move computed from scratch.
pub fn greedy_maker(state: &GameState, quota: usize, _rng: &mut RngState) -> Vec<Point> {
    let mut idx = GreedyIndex::from_state(state);
    (0..quota).map(|_| idx.pick_and_claim(state)).collect()
}

/// [`greedy_maker`] with its index carried between turns.
#[derive(Clone, Debug, Default)]
pub struct GreedyMaker {
    index: Option<GreedyIndex>,
    synced_moves: usize,
}

impl GreedyMaker {
    fn sync(&mut self, state: &GameState) {
        let history = state.history();
        let usable = match &self.index {
            Some(idx) => idx.n == state.n() && history.len() >= self.synced_moves,
            None => false,
        };
        if usable {
            let idx = self.index.as_mut().expect("checked");
            for mv in &history[self.synced_moves..] {
                for &p in &mv.points {
                    idx.claim(p, mv.player);
                }
            }
            // Picks from a turn that was never played would leave extra cells.
            if idx.cells.len() == state.claimed_count() {
                self.synced_moves = history.len();
                return;
            }
        }
        self.index = Some(GreedyIndex::from_state(state));
        self.synced_moves = history.len();
    }
}

impl Strategy for GreedyMaker {
    fn name(&self) -> &'static str {
        "greedy"
    }

    fn observe(&mut self, state: &GameState) {
        self.sync(state);
    }

    fn choose(&mut self, state: &GameState, quota: usize, _rng: &mut RngState) -> Vec<Point> {
        self.sync(state);
        let idx = self.index.as_mut().expect("synced");
        (0..quota).map(|_| idx.pick_and_claim(state)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{GameConfig, Schedule};
    use crate::strategy::testutil::position;

    fn rng() -> RngState {
        RngState::new(3)
    }

    #[test]
    fn empty_board_starts_at_origin() {
        let s = position(5, Schedule::identity(), &[]);
        assert_eq!(greedy_maker(&s, 1, &mut rng()), vec![Point::ORIGIN]);
    }

    #[test]
    fn extends_a_pair() {
        // Red (0,0),(1,0); no blue. (-1,0) and (2,0) both make a run of 3.
        let s = position(5, Schedule::new(0, 0, 0, 2), &[&[(0, 0), (1, 0)], &[]]);
        assert_eq!(greedy_maker(&s, 1, &mut rng()), vec![Point::new(2, 0)]);
    }

    #[test]
    fn avoids_blocked_side() {
        let s = position(5, Schedule::identity(), &[&[(0, 0)], &[(1, 0), (40, 40)]]);
        let p = greedy_maker(&s, 1, &mut rng())[0];
        assert_ne!(p, Point::new(1, 0));
        assert_eq!(p.chebyshev(Point::ORIGIN), 1);
        assert_eq!(p, Point::new(1, 1));
    }

    fn pressure_by_scan(idx: &GreedyIndex, c: Point, score: usize) -> usize {
        let n = idx.n as i64;
        LineDir4::ALL
            .into_iter()
            .filter(|&d| idx.run_if_claimed(c, d) == score)
            .flat_map(|d| {
                (0..n).map(move |s| {
                    (0..n)
                        .filter(|&k| idx.color_at(c + d.step() * (k - s)) == Some(PlayerColor::Blue))
                        .count()
                })
            })
            .min()
            .unwrap_or(usize::MAX)
    }

    #[test]
    fn blue_pressure_matches_window_scan() {
        let mut rng = RngState::new(21);
        for _ in 0..40 {
            let n = 2 + rng.below(6);
            let mut idx = GreedyIndex::new(n);
            for _ in 0..30 {
                let p = Point::new(rng.below(9) as i64 - 4, rng.below(9) as i64 - 4);
                let colour = if rng.below(3) == 0 {
                    PlayerColor::Red
                } else {
                    PlayerColor::Blue
                };
                idx.claim(p, colour);
            }
            for x in -5..=5 {
                for y in -5..=5 {
                    let c = Point::new(x, y);
                    if idx.cells.contains_key(&c) {
                        continue;
                    }
                    let score = idx.score(c);
                    assert_eq!(idx.blue_pressure(c, score), pressure_by_scan(&idx, c, score), "{c}");
                }
            }
        }
    }

    #[test]
    fn builds_a_line_within_one_turn() {
        let cfg = GameConfig::maker_breaker(6, Schedule::constant(6)).unwrap();
        let mut s = GameState::new(cfg);
        let pts = greedy_maker(&s, 6, &mut rng());
        s.apply_move(pts).unwrap();
        assert_eq!(s.winner().map(|w| w.segment.len), Some(6));
    }

    #[test]
    fn incremental_matches_from_scratch() {
        use crate::strategy::direction_breaker;
        let cfg = GameConfig::maker_breaker(9, Schedule::identity()).unwrap();
        let mut s = GameState::new(cfg);
        let mut inc = GreedyMaker::default();
        for t in 1..=12 {
            let q = s.quota();
            let mv = if t % 2 == 1 {
                let a = inc.choose(&s, q, &mut rng());
                let b = greedy_maker(&s, q, &mut rng());
                assert_eq!(a, b, "turn {t}");
                a
            } else {
                direction_breaker(&s, q, &mut rng())
            };
            s.apply_move(mv).unwrap();
            if s.is_over() {
                break;
            }
        }
    }
}
