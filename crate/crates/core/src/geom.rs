//! Lattice points, colors and the four winning-line directions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point of the unbounded integer lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    /// Chebyshev (king-move) distance.
    pub fn chebyshev(self, other: Point) -> i64 {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<i64> for Point {
    type Output = Point;
    fn mul(self, k: i64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

/// Red is Maker and moves at odd turns; Blue is Breaker and moves at even turns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PlayerColor {
    Red,
    Blue,
}

impl PlayerColor {
    pub fn for_turn(turn: usize) -> Self {
        if turn % 2 == 1 {
            PlayerColor::Red
        } else {
            PlayerColor::Blue
        }
    }

    pub fn other(self) -> Self {
        match self {
            PlayerColor::Red => PlayerColor::Blue,
            PlayerColor::Blue => PlayerColor::Red,
        }
    }

    pub(crate) fn index(self) -> usize {
        match self {
            PlayerColor::Red => 0,
            PlayerColor::Blue => 1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            PlayerColor::Red => 'R',
            PlayerColor::Blue => 'B',
        }
    }
}

/// Orientation of a winning line. The declaration order (E < N < NE < SE)
/// is the tie-break order used when several segments complete at once.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LineDir4 {
    E,
    N,
    NE,
    SE,
}

impl LineDir4 {
    pub const ALL: [LineDir4; 4] = [LineDir4::E, LineDir4::N, LineDir4::NE, LineDir4::SE];

    pub const fn step(self) -> Point {
        match self {
            LineDir4::E => Point::new(1, 0),
            LineDir4::N => Point::new(0, 1),
            LineDir4::NE => Point::new(1, 1),
            LineDir4::SE => Point::new(1, -1),
        }
    }

    pub(crate) const fn index(self) -> usize {
        match self {
            LineDir4::E => 0,
            LineDir4::N => 1,
            LineDir4::NE => 2,
            LineDir4::SE => 3,
        }
    }
}

/// `len` consecutive points starting at `start` and advancing by `dir.step()`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Segment {
    pub start: Point,
    pub dir: LineDir4,
    pub len: usize,
}

impl Segment {
    pub fn new(start: Point, dir: LineDir4, len: usize) -> Self {
        Segment { start, dir, len }
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        let step = self.dir.step();
        (0..self.len as i64).map(move |k| self.start + step * k)
    }

    pub fn contains(&self, p: Point) -> bool {
        self.points().any(|q| q == p)
    }

    /// Ordering used to pick one winning segment deterministically.
    pub(crate) fn tie_key(&self) -> (i64, i64, LineDir4) {
        (self.start.x, self.start.y, self.dir)
    }
}
