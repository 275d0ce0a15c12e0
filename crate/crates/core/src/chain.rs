//! Freeman chain-code directions and Bresenham decomposition.
//!
//! [`bresenham`] rasterizes the segment between two grid points and yields
//! the unit step between each pair of consecutive cells. The variant is
//! pinned: the error term starts at `2*minor - major`, a diagonal step is
//! taken only while it is strictly positive, so a zero error takes the
//! straight step along the driving axis.
//!
//! The decomposition is directional. `bresenham(p, q)` reversed and mirrored
//! is not in general equal to `bresenham(q, p)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ink::GridPoint;

/// One of the eight unit grid steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Direction {
    E = 0,
    NE = 1,
    N = 2,
    NW = 3,
    W = 4,
    SW = 5,
    S = 6,
    SE = 7,
}

impl Direction {
    /// All directions in counter-clockwise order starting east.
    pub const ALL: [Direction; 8] = [
        Direction::E,
        Direction::NE,
        Direction::N,
        Direction::NW,
        Direction::W,
        Direction::SW,
        Direction::S,
        Direction::SE,
    ];

    /// Unit displacement `(dx, dy)` with y pointing up.
    pub const fn delta(self) -> (i32, i32) {
        match self {
            Direction::E => (1, 0),
            Direction::NE => (1, 1),
            Direction::N => (0, 1),
            Direction::NW => (-1, 1),
            Direction::W => (-1, 0),
            Direction::SW => (-1, -1),
            Direction::S => (0, -1),
            Direction::SE => (1, -1),
        }
    }

    pub fn from_delta(dx: i32, dy: i32) -> Option<Direction> {
        Some(match (dx, dy) {
            (1, 0) => Direction::E,
            (1, 1) => Direction::NE,
            (0, 1) => Direction::N,
            (-1, 1) => Direction::NW,
            (-1, 0) => Direction::W,
            (-1, -1) => Direction::SW,
            (0, -1) => Direction::S,
            (1, -1) => Direction::SE,
            _ => return None,
        })
    }

    /// Freeman code, 0 = east, increasing counter-clockwise.
    pub const fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Direction> {
        Direction::ALL.get(code as usize).copied()
    }

    pub const fn is_diagonal(self) -> bool {
        (self as u8) % 2 == 1
    }

    pub const fn name(self) -> &'static str {
        match self {
            Direction::E => "E",
            Direction::NE => "NE",
            Direction::N => "N",
            Direction::NW => "NW",
            Direction::W => "W",
            Direction::SW => "SW",
            Direction::S => "S",
            Direction::SE => "SE",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Direction {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        Direction::ALL.into_iter().find(|d| d.name() == s).ok_or(())
    }
}

/// Moves `p` one unit in direction `d`.
pub fn step(p: GridPoint, d: Direction) -> Result<GridPoint> {
    let (dx, dy) = d.delta();
    p.checked_offset(dx as i64, dy as i64)
        .ok_or_else(|| Error::Overflow(format!("stepping {d} from {p}")))
}

/// Iterator over the Bresenham decomposition of a segment.
///
/// Yields exactly `max(|dx|, |dy|)` directions.
#[derive(Debug, Clone)]
pub struct Bresenham {
    straight: Direction,
    diagonal: Direction,
    major: i64,
    minor: i64,
    error: i64,
    remaining: u64,
}

impl Bresenham {
    pub fn new(p: GridPoint, q: GridPoint) -> Self {
        let dx = q.x as i64 - p.x as i64;
        let dy = q.y as i64 - p.y as i64;
        let (sx, sy) = (dx.signum() as i32, dy.signum() as i32);
        let (a, b) = (dx.abs(), dy.abs());
        let x_drives = a >= b;
        let (major, minor) = if x_drives { (a, b) } else { (b, a) };
        let straight = if x_drives { (sx, 0) } else { (0, sy) };
        let straight = Direction::from_delta(straight.0, straight.1).unwrap_or(Direction::E);
        // Only taken when the minor extent is nonzero, i.e. both signs are nonzero.
        let diagonal = Direction::from_delta(sx, sy).unwrap_or(straight);
        Bresenham {
            straight,
            diagonal,
            major,
            minor,
            error: 2 * minor - major,
            remaining: major as u64,
        }
    }
}

impl Iterator for Bresenham {
    type Item = Direction;

    #[inline]
    fn next(&mut self) -> Option<Direction> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        if self.error > 0 {
            self.error += 2 * (self.minor - self.major);
            Some(self.diagonal)
        } else {
            self.error += 2 * self.minor;
            Some(self.straight)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, usize::try_from(self.remaining).ok())
    }
}

impl ExactSizeIterator for Bresenham {}

impl std::iter::FusedIterator for Bresenham {}

/// Bresenham decomposition of the segment `p -> q` into unit steps.
pub fn bresenham(p: GridPoint, q: GridPoint) -> Bresenham {
    Bresenham::new(p, q)
}

/// Collects [`bresenham`] into a vector.
pub fn bresenham_decompose(p: GridPoint, q: GridPoint) -> Vec<Direction> {
    bresenham(p, q).collect()
}

/// Cells visited by walking `dirs` from `start`, including `start`.
pub fn trace(start: GridPoint, dirs: &[Direction]) -> Result<Vec<GridPoint>> {
    let mut cells = Vec::with_capacity(dirs.len() + 1);
    let mut cur = start;
    cells.push(cur);
    for &d in dirs {
        cur = step(cur, d)?;
        cells.push(cur);
    }
    Ok(cells)
}
