//! Variable identifiers for the polynomial ring.
//!
//! Three kinds of variables occur:
//! * `x[a][b]` — the standard coordinate functions on n×n matrices,
//! * `s[k][i]` — the coordinate functions on the anti-triangular slice,
//! * `t[j]`   — free parameters used by one-parameter subgroup checks.
//!
//! A variable carries its board size `n`, so coordinates of different board
//! sizes are distinct variables. Parameters have no board.

use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VarId {
    /// Matrix entry `x[a][b]`, 1-based, `1 <= a, b <= n`.
    X { n: u8, row: u8, col: u8 },
    /// Slice coordinate `s[k][i]`, `1 <= k <= n`, `0 <= i <= k-1`.
    S { n: u8, k: u8, i: u8 },
    /// Free parameter `t[j]`.
    Param { idx: u8 },
}

impl VarId {
    pub fn x(n: usize, row: usize, col: usize) -> VarId {
        Self::try_x(n, row, col).expect("matrix entry index out of range")
    }

    pub fn s(n: usize, k: usize, i: usize) -> VarId {
        Self::try_s(n, k, i).expect("slice coordinate index out of range")
    }

    pub fn param(idx: usize) -> VarId {
        VarId::Param { idx: idx as u8 }
    }

    pub fn try_x(n: usize, row: usize, col: usize) -> Result<VarId> {
        if n == 0 || n > 16 || row < 1 || row > n || col < 1 || col > n {
            return Err(Error::BadIndex { k: row, i: col, n });
        }
        Ok(VarId::X { n: n as u8, row: row as u8, col: col as u8 })
    }

    pub fn try_s(n: usize, k: usize, i: usize) -> Result<VarId> {
        if n == 0 || n > 16 || k < 1 || k > n || i >= k {
            return Err(Error::BadIndex { k, i, n });
        }
        Ok(VarId::S { n: n as u8, k: k as u8, i: i as u8 })
    }

    /// Board size, if the variable belongs to a board.
    pub fn board(&self) -> Option<usize> {
        match self {
            VarId::X { n, .. } | VarId::S { n, .. } => Some(*n as usize),
            VarId::Param { .. } => None,
        }
    }

    pub fn is_x(&self) -> bool {
        matches!(self, VarId::X { .. })
    }

    pub fn is_s(&self) -> bool {
        matches!(self, VarId::S { .. })
    }

    /// Parses the text forms `x[a][b]`, `s[k][i]` and `t[j]`.
    ///
    /// The board size is supplied by the caller; index bounds are checked
    /// against it.
    pub fn parse(text: &str, n: usize) -> Result<VarId> {
        let text = text.trim();
        let bad = || Error::parse(format!("bad variable {text:?}"));
        let (kind, rest) = text.split_at(text.len().min(1));
        let parse_pair = |rest: &str| -> Result<(usize, usize)> {
            let inner = rest.strip_prefix('[').ok_or_else(bad)?;
            let (first, rest2) = inner.split_once(']').ok_or_else(bad)?;
            let inner2 = rest2.strip_prefix('[').ok_or_else(bad)?;
            let second = inner2.strip_suffix(']').ok_or_else(bad)?;
            let a = first.parse::<usize>().map_err(|_| bad())?;
            let b = second.parse::<usize>().map_err(|_| bad())?;
            Ok((a, b))
        };
        match kind {
            "x" => {
                let (a, b) = parse_pair(rest)?;
                VarId::try_x(n, a, b)
            }
            "s" => {
                let (k, i) = parse_pair(rest)?;
                VarId::try_s(n, k, i)
            }
            "t" => {
                let inner = rest.strip_prefix('[').ok_or_else(bad)?;
                let idx = inner.strip_suffix(']').ok_or_else(bad)?;
                let j = idx.parse::<usize>().map_err(|_| bad())?;
                if j > u8::MAX as usize {
                    return Err(bad());
                }
                Ok(VarId::param(j))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::X { row, col, .. } => write!(f, "x[{row}][{col}]"),
            VarId::S { k, i, .. } => write!(f, "s[{k}][{i}]"),
            VarId::Param { idx } => write!(f, "t[{idx}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        let v = VarId::x(3, 2, 1);
        assert_eq!(v.to_string(), "x[2][1]");
        assert_eq!(VarId::parse("x[2][1]", 3).unwrap(), v);

        let w = VarId::s(3, 3, 0);
        assert_eq!(w.to_string(), "s[3][0]");
        assert_eq!(VarId::parse("s[3][0]", 3).unwrap(), w);

        let t = VarId::param(0);
        assert_eq!(t.to_string(), "t[0]");
        assert_eq!(VarId::parse("t[0]", 1).unwrap(), t);
    }

    #[test]
    fn bounds_checked() {
        assert!(VarId::try_x(2, 3, 1).is_err());
        assert!(VarId::try_x(2, 0, 1).is_err());
        assert!(VarId::try_s(2, 2, 2).is_err());
        assert!(VarId::try_s(2, 3, 0).is_err());
        assert!(VarId::parse("x[3][1]", 2).is_err());
        assert!(VarId::parse("y[1][1]", 2).is_err());
    }

    #[test]
    fn equality_includes_board_size() {
        assert_ne!(VarId::x(2, 1, 1), VarId::x(3, 1, 1));
        assert_ne!(VarId::s(2, 2, 1), VarId::s(3, 2, 1));
    }
}
