//! Square-spiral enumeration of the lattice centred on the origin:
//! (0,0), (1,0), (1,1), (0,1), (-1,1), (-1,0), (-1,-1), (0,-1), (1,-1), (2,-1), ...
//!
//! Ring `k >= 1` holds indices `(2k-1)^2 .. (2k+1)^2` and is walked up the east
//! side, left along the north side, down the west side, then right along the south.

use crate::geom::Point;

pub fn spiral_point(index: u64) -> Point {
    if index == 0 {
        return Point::ORIGIN;
    }
    let k = index.isqrt().div_ceil(2);
    let off = index - (2 * k - 1) * (2 * k - 1);
    let side = off / (2 * k);
    let pos = (off % (2 * k)) as i64;
    let k = k as i64;
    match side {
        0 => Point::new(k, -(k - 1) + pos),
        1 => Point::new(k - 1 - pos, k),
        2 => Point::new(-k, k - 1 - pos),
        _ => Point::new(-k + 1 + pos, -k),
    }
}

pub fn spiral_index(p: Point) -> u64 {
    let k = p.x.abs().max(p.y.abs());
    if k == 0 {
        return 0;
    }
    let base = ((2 * k - 1) * (2 * k - 1)) as u64;
    let (side, pos) = if p.x == k && p.y > -k {
        (0, p.y + k - 1)
    } else if p.y == k {
        (1, k - 1 - p.x)
    } else if p.x == -k {
        (2, k - 1 - p.y)
    } else {
        (3, p.x + k - 1)
    };
    base + (side * 2 * k + pos) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_ten_points() {
        let expected = [
            (0, 0),
            (1, 0),
            (1, 1),
            (0, 1),
            (-1, 1),
            (-1, 0),
            (-1, -1),
            (0, -1),
            (1, -1),
            (2, -1),
        ];
        for (i, &(x, y)) in expected.iter().enumerate() {
            assert_eq!(spiral_point(i as u64), Point::new(x, y), "index {i}");
        }
    }

    #[test]
    fn index_inverts_point_and_covers_square() {
        let mut seen = std::collections::HashSet::new();
        for i in 0..(41u64 * 41) {
            let p = spiral_point(i);
            assert_eq!(spiral_index(p), i);
            assert!(p.x.abs() <= 20 && p.y.abs() <= 20);
            seen.insert(p);
        }
        assert_eq!(seen.len(), 41 * 41);
    }

    #[test]
    fn consecutive_points_are_adjacent() {
        for i in 0..5000u64 {
            assert_eq!(spiral_point(i).chebyshev(spiral_point(i + 1)), 1);
        }
    }
}
