//! Cover of the plane by straight lines of length 2n.
//!
//! For each of the four directions, line `(i, j)` consists of the points with
//! line parameter `k` in `[j*n, (j+2)*n - 1]`:
//!
//! | family | dir | point for parameter k |
//! |--------|-----|-----------------------|
//! | F      | E   | (k, i)                |
//! | G      | N   | (i, k)                |
//! | H      | NE  | (i + k, k)            |
//! | I      | SE  | (i + k, -k)           |
//!
//! Consecutive lines in a family overlap by n, so every point lies on exactly
//! two lines per direction (eight in total) and every length-n segment fits
//! inside at least one line. Both indices range over all of Z.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::GameState;
use crate::geom::{LineDir4, PlayerColor, Point, Segment};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LineId {
    pub dir: LineDir4,
    pub i: i64,
    pub j: i64,
}

impl LineId {
    pub const fn new(dir: LineDir4, i: i64, j: i64) -> Self {
        LineId { dir, i, j }
    }

    pub fn family(&self) -> char {
        family_letter(self.dir)
    }

    /// First line parameter covered by this line.
    fn first_param(&self, n: usize) -> i64 {
        self.j * n as i64
    }

    /// The point at 1-based position `pos` (1..=2n).
    pub fn point_at(&self, n: usize, pos: usize) -> Point {
        point_for(self.dir, self.i, self.first_param(n) + pos as i64 - 1)
    }

    /// 1-based position of `p` on this line, if it lies on it.
    pub fn position_of(&self, n: usize, p: Point) -> Option<usize> {
        let (i, k) = line_coords(p, self.dir);
        let off = k - self.first_param(n);
        (i == self.i && (0..2 * n as i64).contains(&off)).then_some(off as usize + 1)
    }

    /// Key that orders lines by their textual form `<F|G|H|I>:<i>:<j>`.
    pub fn text_key(&self) -> LineKey {
        LineKey::new(*self)
    }
}

fn family_letter(dir: LineDir4) -> char {
    match dir {
        LineDir4::E => 'F',
        LineDir4::N => 'G',
        LineDir4::NE => 'H',
        LineDir4::SE => 'I',
    }
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.family(), self.i, self.j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse line id {0:?}")]
pub struct LineIdParseError(String);

impl FromStr for LineId {
    type Err = LineIdParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LineIdParseError(s.to_string());
        let mut parts = s.split(':');
        let dir = match parts.next() {
            Some("F") => LineDir4::E,
            Some("G") => LineDir4::N,
            Some("H") => LineDir4::NE,
            Some("I") => LineDir4::SE,
            _ => return Err(bad()),
        };
        let i = parts.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
        let j = parts.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(LineId::new(dir, i, j))
    }
}

/// A line id together with its rendered text, ordered bytewise by the text.
#[derive(Clone, Copy, Debug)]
pub struct LineKey {
    text: [u8; 48],
    len: u8,
    pub id: LineId,
}

impl LineKey {
    fn new(id: LineId) -> Self {
        use std::io::Write;
        let mut text = [0u8; 48];
        let mut cur = std::io::Cursor::new(&mut text[..]);
        write!(cur, "{id}").expect("line id text fits in 48 bytes");
        let len = cur.position() as u8;
        LineKey { text, len, id }
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.text[..self.len as usize]).expect("ascii")
    }
}

impl PartialEq for LineKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for LineKey {}

impl PartialOrd for LineKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LineKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.text[..self.len as usize].cmp(&other.text[..other.len as usize])
    }
}

/// (line index i, line parameter k) of `p` within the family for `dir`.
pub fn line_coords(p: Point, dir: LineDir4) -> (i64, i64) {
    match dir {
        LineDir4::E => (p.y, p.x),
        LineDir4::N => (p.x, p.y),
        LineDir4::NE => (p.x - p.y, p.y),
        LineDir4::SE => (p.x + p.y, -p.y),
    }
}

fn point_for(dir: LineDir4, i: i64, k: i64) -> Point {
    match dir {
        LineDir4::E => Point::new(k, i),
        LineDir4::N => Point::new(i, k),
        LineDir4::NE => Point::new(i + k, k),
        LineDir4::SE => Point::new(i + k, -k),
    }
}

/// The 2n points of `id` in increasing parameter order.
pub fn line_points(id: LineId, n: usize) -> Vec<Point> {
    let k0 = id.first_param(n);
    (0..2 * n as i64).map(|off| point_for(id.dir, id.i, k0 + off)).collect()
}

/// The eight lines through `p`, two per direction, in direction order E, N, NE, SE
/// and increasing j.
pub fn lines_through(p: Point, n: usize) -> [LineId; 8] {
    let n = n as i64;
    let mut out = [LineId::new(LineDir4::E, 0, 0); 8];
    for (slot, dir) in LineDir4::ALL.into_iter().enumerate() {
        let (i, k) = line_coords(p, dir);
        let j = k.div_euclid(n);
        out[2 * slot] = LineId::new(dir, i, j - 1);
        out[2 * slot + 1] = LineId::new(dir, i, j);
    }
    out
}

/// A line containing the length-n segment `seg`; the smaller j when two qualify.
pub fn containing_line(seg: &Segment, n: usize) -> LineId {
    debug_assert_eq!(seg.len, n);
    let (i, k) = line_coords(seg.start, seg.dir);
    let n = n as i64;
    // Need j*n <= k and k + n - 1 <= (j+2)n - 1, i.e. ceil(k/n) - 1 <= j <= floor(k/n).
    let j = -((-k).div_euclid(n)) - 1;
    LineId::new(seg.dir, i, j)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpoilError {
    #[error("line {0} has a half that is entirely red")]
    HalfFullyRed(LineId),
}

/// Positions x (last non-red in the first half) and y (first non-red in the
/// second half) of `id`, as points, keeping only those still unclaimed.
pub fn spoil_targets(id: LineId, state: &GameState) -> Result<Vec<Point>, SpoilError> {
    spoil_targets_with(id, state.n(), |p| state.color_at(p))
}

/// [`spoil_targets`] against an arbitrary colouring.
pub fn spoil_targets_with<F>(id: LineId, n: usize, color_at: F) -> Result<Vec<Point>, SpoilError>
where
    F: Fn(Point) -> Option<PlayerColor>,
{
    let not_red = |pos: usize| color_at(id.point_at(n, pos)) != Some(PlayerColor::Red);
    let x = (1..=n).rev().find(|&pos| not_red(pos));
    let y = (n + 1..=2 * n).find(|&pos| not_red(pos));
    let (Some(x), Some(y)) = (x, y) else {
        return Err(SpoilError::HalfFullyRed(id));
    };
    Ok([x, y]
        .into_iter()
        .map(|pos| id.point_at(n, pos))
        .filter(|&p| color_at(p).is_none())
        .collect())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineRecord {
    pub red_count: usize,
    pub spoiled: bool,
}

/// Red counts and spoiled flags for the lines of the cover. Only lines with a
/// red point or a spoiled flag are materialized.
#[derive(Clone, Debug)]
pub struct LineLedger {
    n: usize,
    records: HashMap<LineId, LineRecord>,
    // Good lines with at least one red point, best first.
    ranking: BTreeSet<(Reverse<usize>, LineKey)>,
    // good_hist[r] = number of good lines with exactly r red points (r >= 1).
    good_hist: Vec<usize>,
}

impl LineLedger {
    pub fn new(n: usize) -> Self {
        LineLedger {
            n,
            records: HashMap::new(),
            ranking: BTreeSet::new(),
            good_hist: vec![0; 2 * n + 1],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, id: LineId) -> Option<LineRecord> {
        self.records.get(&id).copied()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> impl Iterator<Item = (LineId, LineRecord)> + '_ {
        self.records.iter().map(|(id, r)| (*id, *r))
    }

    fn unrank(&mut self, id: LineId, rec: LineRecord) {
        if !rec.spoiled && rec.red_count > 0 {
            self.ranking.remove(&(Reverse(rec.red_count), id.text_key()));
            self.good_hist[rec.red_count] -= 1;
        }
    }

    fn rank(&mut self, id: LineId, rec: LineRecord) {
        if !rec.spoiled && rec.red_count > 0 {
            self.ranking.insert((Reverse(rec.red_count), id.text_key()));
            self.good_hist[rec.red_count] += 1;
        }
    }

    /// Bookkeeping for a newly claimed point. Blue claims change nothing.
    pub fn on_claim(&mut self, p: Point, color: PlayerColor) {
        if color != PlayerColor::Red {
            return;
        }
        for id in lines_through(p, self.n) {
            let old = self.records.get(&id).copied().unwrap_or_default();
            self.unrank(id, old);
            let new = LineRecord {
                red_count: old.red_count + 1,
                spoiled: old.spoiled,
            };
            self.records.insert(id, new);
            self.rank(id, new);
        }
    }

    /// Marks a line bad. Spoiled lines stay spoiled.
    pub fn mark_spoiled(&mut self, id: LineId) {
        let old = self.records.get(&id).copied().unwrap_or_default();
        if old.spoiled {
            return;
        }
        self.unrank(id, old);
        self.records.insert(
            id,
            LineRecord {
                red_count: old.red_count,
                spoiled: true,
            },
        );
    }

    /// Number of good lines holding at least `r` red points.
    pub fn count_lines_with_red_at_least(&self, r: usize) -> usize {
        let r = r.max(1);
        self.good_hist.get(r..).map_or(0, |tail| tail.iter().sum())
    }

    /// Largest red count over good lines, 0 if there are none.
    pub fn max_good_red(&self) -> usize {
        self.ranking.first().map_or(0, |(Reverse(r), _)| *r)
    }

    /// Good line with the most red points; ties go to the textually least id.
    pub fn best_good_line(&self) -> Option<(LineId, usize)> {
        self.ranking.first().map(|(Reverse(r), key)| (key.id, *r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn line_points_examples() {
        let f = line_points(LineId::new(LineDir4::E, 0, 0), 4);
        assert_eq!(f, (0..8).map(|x| p(x, 0)).collect::<Vec<_>>());
        let h = line_points(LineId::new(LineDir4::NE, 2, -1), 3);
        assert_eq!(h, (-3..=2).map(|k| p(2 + k, k)).collect::<Vec<_>>());
        let g = line_points(LineId::new(LineDir4::N, 1, 0), 1);
        assert_eq!(g, vec![p(1, 0), p(1, 1)]);
    }

    #[test]
    fn lines_through_origin() {
        let got: BTreeSet<String> = lines_through(p(0, 0), 4).iter().map(|l| l.to_string()).collect();
        let want: BTreeSet<String> = [
            "F:0:-1", "F:0:0", "G:0:-1", "G:0:0", "H:0:-1", "H:0:0", "I:0:-1", "I:0:0",
        ]
        .into_iter()
        .map(String::from)
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn lines_through_seven_zero() {
        let ls = lines_through(p(7, 0), 4);
        assert_eq!(ls[0], LineId::new(LineDir4::E, 0, 0));
        assert_eq!(ls[1], LineId::new(LineDir4::E, 0, 1));
    }

    #[test]
    fn containing_line_examples() {
        let seg = Segment::new(p(0, 0), LineDir4::E, 4);
        assert_eq!(containing_line(&seg, 4), LineId::new(LineDir4::E, 0, -1));
        let n = 6;
        let seg = Segment::new(p(n as i64, 0), LineDir4::E, n);
        let line = containing_line(&seg, n);
        assert_eq!(line, LineId::new(LineDir4::E, 0, 0));
        // F_{0,-1} ends at parameter n-1 and cannot hold the segment.
        let prev = line_points(LineId::new(LineDir4::E, 0, -1), n);
        assert!(!seg.points().all(|q| prev.contains(&q)));
        let seg = Segment::new(p(0, 0), LineDir4::NE, 5);
        assert_eq!(containing_line(&seg, 5), LineId::new(LineDir4::NE, 0, -1));
    }

    #[test]
    fn line_id_text_round_trip() {
        let id = LineId::new(LineDir4::SE, -12, 7);
        assert_eq!(id.to_string(), "I:-12:7");
        assert_eq!("I:-12:7".parse::<LineId>().unwrap(), id);
        assert!("X:1:2".parse::<LineId>().is_err());
        assert!("F:1".parse::<LineId>().is_err());
    }

    #[test]
    fn text_order_is_bytewise() {
        let a = LineId::new(LineDir4::E, 10, 0).text_key();
        let b = LineId::new(LineDir4::E, 2, 0).text_key();
        let c = LineId::new(LineDir4::E, -1, 0).text_key();
        assert!(a < b, "\"F:10:0\" < \"F:2:0\"");
        assert!(c < a, "'-' sorts before digits");
        assert_eq!(a.as_str(), "F:10:0");
    }

    /// Colours positions of a fresh line for spoil tests.
    fn colored_line(n: usize, red: &[usize], blue: &[usize]) -> (LineId, HashMap<Point, PlayerColor>) {
        let id = LineId::new(LineDir4::E, 0, 0);
        let mut m = HashMap::new();
        for &pos in red {
            m.insert(id.point_at(n, pos), PlayerColor::Red);
        }
        for &pos in blue {
            m.insert(id.point_at(n, pos), PlayerColor::Blue);
        }
        (id, m)
    }

    fn all_windows_blocked(id: LineId, n: usize, m: &HashMap<Point, PlayerColor>) -> bool {
        (1..=n + 1).all(|s| (s..s + n).any(|pos| m.get(&id.point_at(n, pos)) == Some(&PlayerColor::Blue)))
    }

    #[test]
    fn spoil_examples() {
        let n = 4;
        let (id, mut m) = colored_line(n, &[3, 4, 5], &[]);
        let t = spoil_targets_with(id, n, |q| m.get(&q).copied()).unwrap();
        assert_eq!(t, vec![id.point_at(n, 2), id.point_at(n, 6)]);
        for q in t {
            m.insert(q, PlayerColor::Blue);
        }
        assert!(all_windows_blocked(id, n, &m));

        let (id, m) = colored_line(n, &[], &[]);
        let t = spoil_targets_with(id, n, |q| m.get(&q).copied()).unwrap();
        assert_eq!(t, vec![id.point_at(n, 4), id.point_at(n, 5)]);

        let (id, mut m) = colored_line(n, &[2, 3, 4], &[5]);
        let t = spoil_targets_with(id, n, |q| m.get(&q).copied()).unwrap();
        assert_eq!(t, vec![id.point_at(n, 1)]);
        for q in t {
            m.insert(q, PlayerColor::Blue);
        }
        assert!(all_windows_blocked(id, n, &m));
    }

    #[test]
    fn spoil_rejects_fully_red_half() {
        let (id, m) = colored_line(3, &[1, 2, 3], &[]);
        assert_eq!(
            spoil_targets_with(id, 3, |q| m.get(&q).copied()),
            Err(SpoilError::HalfFullyRed(id))
        );
    }

    #[test]
    fn ledger_examples() {
        let mut l = LineLedger::new(4);
        assert_eq!(l.count_lines_with_red_at_least(1), 0);
        l.on_claim(p(0, 0), PlayerColor::Blue);
        assert!(l.is_empty());
        l.on_claim(p(0, 0), PlayerColor::Red);
        assert_eq!(l.len(), 8);
        assert!(l.records().all(|(_, r)| r.red_count == 1 && !r.spoiled));
        assert_eq!(l.count_lines_with_red_at_least(1), 8);
        assert_eq!(l.max_good_red(), 1);
        let (best, _) = l.best_good_line().unwrap();
        assert_eq!(best.to_string(), "F:0:-1");
        l.mark_spoiled(best);
        assert_eq!(l.count_lines_with_red_at_least(1), 7);
        assert_eq!(
            l.get(best),
            Some(LineRecord {
                red_count: 1,
                spoiled: true
            })
        );
    }

    #[test]
    fn nearby_red_points_share_horizontal_lines() {
        let mut l = LineLedger::new(4);
        l.on_claim(p(1, 0), PlayerColor::Red);
        l.on_claim(p(3, 0), PlayerColor::Red);
        // Parameters 1 and 3 both lie in F_{0,-1} ([-4,3]) and F_{0,0} ([0,7]).
        for j in [-1, 0] {
            assert_eq!(l.get(LineId::new(LineDir4::E, 0, j)).unwrap().red_count, 2);
        }
        assert_eq!(l.max_good_red(), 2);
        assert_eq!(l.count_lines_with_red_at_least(2), 2);
    }
}
