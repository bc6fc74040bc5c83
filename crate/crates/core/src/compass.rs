//! Periodic assignment of a compass direction to every lattice point.
//!
//! Row `y = 0` repeats the 11-cycle [`COMPASS_BASE`] along x, and each row up
//! is the row below shifted right by 3. Every run of 11 consecutive points on
//! any horizontal, vertical or diagonal line then carries each of the eight
//! directions once or twice.

use serde::{Deserialize, Serialize};

use crate::geom::Point;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction8 {
    N,
    NE,
    E,
    SE,
    S,
    SW,
    W,
    NW,
}

impl Direction8 {
    pub const ALL: [Direction8; 8] = [
        Direction8::N,
        Direction8::NE,
        Direction8::E,
        Direction8::SE,
        Direction8::S,
        Direction8::SW,
        Direction8::W,
        Direction8::NW,
    ];

    pub const fn step(self) -> Point {
        match self {
            Direction8::N => Point::new(0, 1),
            Direction8::NE => Point::new(1, 1),
            Direction8::E => Point::new(1, 0),
            Direction8::SE => Point::new(1, -1),
            Direction8::S => Point::new(0, -1),
            Direction8::SW => Point::new(-1, -1),
            Direction8::W => Point::new(-1, 0),
            Direction8::NW => Point::new(-1, 1),
        }
    }

    pub const fn opposite(self) -> Direction8 {
        match self {
            Direction8::N => Direction8::S,
            Direction8::NE => Direction8::SW,
            Direction8::E => Direction8::W,
            Direction8::SE => Direction8::NW,
            Direction8::S => Direction8::N,
            Direction8::SW => Direction8::NE,
            Direction8::W => Direction8::E,
            Direction8::NW => Direction8::SE,
        }
    }

    pub(crate) const fn index(self) -> usize {
        self as usize
    }
}

/// Period of the compass map along every line.
pub const COMPASS_PERIOD: i64 = 11;
/// Horizontal shift applied per row.
pub const COMPASS_ROW_SHIFT: i64 = 3;

pub const COMPASS_BASE: [Direction8; 11] = {
    use Direction8::*;
    [N, NE, E, SE, S, SW, W, NW, N, NE, E]
};

/// The compass map with a configurable base cycle; the default is [`COMPASS_BASE`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompassMap {
    pub base: [Direction8; 11],
}

impl Default for CompassMap {
    fn default() -> Self {
        CompassMap { base: COMPASS_BASE }
    }
}

impl CompassMap {
    pub fn direction(&self, p: Point) -> Direction8 {
        let phase = (p.x - COMPASS_ROW_SHIFT * p.y).rem_euclid(COMPASS_PERIOD);
        self.base[phase as usize]
    }
}

pub fn compass_of(p: Point) -> Direction8 {
    CompassMap::default().direction(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listed_row_values() {
        assert_eq!(compass_of(Point::new(0, 0)), Direction8::N);
        assert_eq!(compass_of(Point::new(6, 0)), Direction8::W);
        assert_eq!(compass_of(Point::new(10, 0)), Direction8::E);
        assert_eq!(compass_of(Point::new(11, 0)), Direction8::N);
        // f(0,1) = f(-3,0) = f(8,0)
        assert_eq!(compass_of(Point::new(0, 1)), Direction8::N);
    }

    #[test]
    fn base_multiset() {
        let mut counts = [0; 8];
        for d in COMPASS_BASE {
            counts[d.index()] += 1;
        }
        assert_eq!(counts, [2, 2, 2, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn opposite_is_involution_and_negates_step() {
        for d in Direction8::ALL {
            assert_eq!(d.opposite().opposite(), d);
            assert_eq!(d.opposite().step(), -d.step());
        }
    }
}
