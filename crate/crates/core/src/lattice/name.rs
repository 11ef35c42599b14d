use std::fmt;
use std::str::FromStr;

use super::LatticeError;

/// Which of the four flag-free side chains a square belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SideChain {
    Inner,
    InnerPrimed,
    Outer,
    OuterPrimed,
}

impl SideChain {
    pub const ALL: [SideChain; 4] = [
        SideChain::Inner,
        SideChain::InnerPrimed,
        SideChain::Outer,
        SideChain::OuterPrimed,
    ];

    pub fn is_primed(self) -> bool {
        matches!(self, SideChain::InnerPrimed | SideChain::OuterPrimed)
    }

    fn tag(self) -> &'static str {
        match self {
            SideChain::Inner => "SC1",
            SideChain::InnerPrimed => "SC1'",
            SideChain::Outer => "SC2",
            SideChain::OuterPrimed => "SC2'",
        }
    }
}

/// A square of the construction, without a corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Square {
    Left(u32),
    Top(u32),
    Right(u32),
    Side(SideChain, u32),
    /// Square `index` of armature chain `a_k` (or `a_k'` when primed).
    Armature { primed: bool, k: u32, index: u32 },
    /// Flag on link `j` of the chain of variable `i`.
    Flag { primed: bool, i: u32, j: u32 },
}

impl Square {
    pub fn corner(self, corner: u8) -> StructuralName {
        debug_assert!((1..=4).contains(&corner));
        StructuralName::Corner(self, corner)
    }

    pub fn corners(self) -> [StructuralName; 4] {
        [1, 2, 3, 4].map(|c| self.corner(c))
    }
}

/// The label a vertex carries. Identified vertices carry several.
///
/// Ordered by family (L, T, R, H, SC1, SC1', SC2, SC2', C, C', F, F', V), then
/// by indices, then by corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructuralName {
    Corner(Square, u8),
    /// Interior vertex `h_i` of the horizontal axis.
    Axis(u32),
    /// Plain vertex of a graph that did not come from the construction.
    Vertex(u32),
}

impl StructuralName {
    pub fn square(&self) -> Option<Square> {
        match self {
            StructuralName::Corner(sq, _) => Some(*sq),
            _ => None,
        }
    }

    fn sort_key(&self) -> (u8, u32, u32, u32, u8) {
        match *self {
            StructuralName::Corner(sq, c) => match sq {
                Square::Left(i) => (0, i, 0, 0, c),
                Square::Top(i) => (1, i, 0, 0, c),
                Square::Right(i) => (2, i, 0, 0, c),
                Square::Side(chain, i) => (4 + chain as u8, i, 0, 0, c),
                Square::Armature { primed, k, index } => (8 + primed as u8, k, index, 0, c),
                Square::Flag { primed, i, j } => (10 + primed as u8, i, j, 0, c),
            },
            StructuralName::Axis(i) => (3, i, 0, 0, 0),
            StructuralName::Vertex(i) => (12, i, 0, 0, 0),
        }
    }
}

impl Ord for StructuralName {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for StructuralName {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Square::Left(i) => write!(f, "L[{i}]"),
            Square::Top(i) => write!(f, "T[{i}]"),
            Square::Right(i) => write!(f, "R[{i}]"),
            Square::Side(chain, i) => write!(f, "{}[{i}]", chain.tag()),
            Square::Armature { primed, k, index } => {
                write!(f, "C{}[k={k}][{index}]", if *primed { "'" } else { "" })
            }
            Square::Flag { primed, i, j } => {
                write!(f, "F{}[i={i}][j={j}]", if *primed { "'" } else { "" })
            }
        }
    }
}

impl fmt::Display for StructuralName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructuralName::Corner(sq, c) => write!(f, "{sq}.{c}"),
            StructuralName::Axis(i) => write!(f, "H[{i}]"),
            StructuralName::Vertex(i) => write!(f, "V[{i}]"),
        }
    }
}

impl FromStr for StructuralName {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_name(s).ok_or_else(|| LatticeError::BadName(s.to_string()))
    }
}

fn parse_name(s: &str) -> Option<StructuralName> {
    let bracket = s.find('[')?;
    let (tag, mut rest) = s.split_at(bracket);

    // Pulls `[...]` groups off the front, returning their contents.
    let mut groups = Vec::new();
    while let Some(stripped) = rest.strip_prefix('[') {
        let close = stripped.find(']')?;
        groups.push(&stripped[..close]);
        rest = &stripped[close + 1..];
    }
    let corner = match rest {
        "" => None,
        _ => {
            let c: u8 = rest.strip_prefix('.')?.parse().ok()?;
            if !(1..=4).contains(&c) {
                return None;
            }
            Some(c)
        }
    };
    let plain = |g: &str| g.parse::<u32>().ok();
    let keyed = |g: &str, key: &str| g.strip_prefix(key)?.strip_prefix('=')?.parse::<u32>().ok();

    let square = match (tag, groups.as_slice()) {
        ("H", [i]) if corner.is_none() => return Some(StructuralName::Axis(plain(i)?)),
        ("V", [i]) if corner.is_none() => return Some(StructuralName::Vertex(plain(i)?)),
        ("L", [i]) => Square::Left(plain(i)?),
        ("T", [i]) => Square::Top(plain(i)?),
        ("R", [i]) => Square::Right(plain(i)?),
        ("SC1", [i]) => Square::Side(SideChain::Inner, plain(i)?),
        ("SC1'", [i]) => Square::Side(SideChain::InnerPrimed, plain(i)?),
        ("SC2", [i]) => Square::Side(SideChain::Outer, plain(i)?),
        ("SC2'", [i]) => Square::Side(SideChain::OuterPrimed, plain(i)?),
        ("C" | "C'", [k, idx]) => Square::Armature {
            primed: tag == "C'",
            k: keyed(k, "k")?,
            index: plain(idx)?,
        },
        ("F" | "F'", [i, j]) => Square::Flag {
            primed: tag == "F'",
            i: keyed(i, "i")?,
            j: keyed(j, "j")?,
        },
        _ => return None,
    };
    Some(square.corner(corner?))
}
