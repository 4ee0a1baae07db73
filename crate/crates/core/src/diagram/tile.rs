use std::fmt;

use serde::{Deserialize, Serialize};

/// One edge of a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    West,
    South,
    North,
    East,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::West => "W",
            Side::South => "S",
            Side::North => "N",
            Side::East => "E",
        })
    }
}

/// Cell contents. Each kind has a fixed set of edge connections; pipes enter
/// through West or South and leave through North or East.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tile {
    Blank,
    /// W-E.
    Horizontal,
    /// W-E and S-N.
    Cross,
    /// W-N.
    ElbowWN,
    /// S-E.
    ElbowSE,
    /// W-N and S-E.
    Bump,
    /// S-E with a mark.
    MarkedSE,
}

impl Tile {
    pub const ALL: [Tile; 7] = [
        Tile::Blank,
        Tile::Horizontal,
        Tile::Cross,
        Tile::ElbowWN,
        Tile::ElbowSE,
        Tile::Bump,
        Tile::MarkedSE,
    ];

    pub fn west(self) -> bool {
        matches!(
            self,
            Tile::Horizontal | Tile::Cross | Tile::ElbowWN | Tile::Bump
        )
    }

    pub fn east(self) -> bool {
        matches!(
            self,
            Tile::Horizontal | Tile::Cross | Tile::ElbowSE | Tile::Bump | Tile::MarkedSE
        )
    }

    pub fn south(self) -> bool {
        matches!(
            self,
            Tile::Cross | Tile::ElbowSE | Tile::Bump | Tile::MarkedSE
        )
    }

    pub fn north(self) -> bool {
        matches!(self, Tile::Cross | Tile::ElbowWN | Tile::Bump)
    }

    pub fn has(self, side: Side) -> bool {
        match side {
            Side::West => self.west(),
            Side::South => self.south(),
            Side::North => self.north(),
            Side::East => self.east(),
        }
    }

    /// Carries an arc from the bottom edge to the right edge.
    pub fn has_south_east_arc(self) -> bool {
        matches!(self, Tile::ElbowSE | Tile::Bump | Tile::MarkedSE)
    }

    pub fn symbol(self) -> char {
        match self {
            Tile::Blank => '.',
            Tile::Horizontal => '-',
            Tile::Cross => '+',
            Tile::ElbowWN => 'J',
            Tile::ElbowSE => 'r',
            Tile::Bump => 'b',
            Tile::MarkedSE => 'R',
        }
    }

    pub fn from_symbol(c: char) -> Option<Tile> {
        Tile::ALL.into_iter().find(|t| t.symbol() == c)
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connections_conserve_pipes() {
        for t in Tile::ALL {
            let ins = t.west() as u8 + t.south() as u8;
            let outs = t.north() as u8 + t.east() as u8;
            assert_eq!(ins, outs, "{t:?}");
        }
    }

    #[test]
    fn marked_elbow_connects_like_elbow() {
        for side in [Side::West, Side::South, Side::North, Side::East] {
            assert_eq!(Tile::MarkedSE.has(side), Tile::ElbowSE.has(side));
        }
    }

    #[test]
    fn symbols_are_distinct() {
        for t in Tile::ALL {
            assert_eq!(Tile::from_symbol(t.symbol()), Some(t));
        }
        assert_eq!(Tile::from_symbol('x'), None);
    }
}
