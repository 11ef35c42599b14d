//! The combinatorial logic engine.
//!
//! Armature `i` (1-based) carries two chains, `a_i` and `a_i'`, each with `m`
//! links. Under a configuration the armature is flipped so that exactly one of
//! its chains points up. A flag on link `j` sticks out sideways into one of
//! the two gaps next to its armature: gap `i - 1` when pointing left, gap `i`
//! when pointing right. Gap 0 is walled off by the inner side chains and gap
//! `n` by the outer ones, and no two flags may share a gap on the same side
//! and row.

use std::fmt;

use thiserror::Error;

use crate::formula::{Formula, Literal};

/// Largest armature count [`LogicEngine::exists_flat`] will enumerate.
pub const DEFAULT_ORIENTATION_CAP: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("no flag on chain {kind} of armature {armature} at row {row}")]
    AbsentFlag { armature: usize, row: usize, kind: ChainKind },
    #[error("armature {armature}, row {row} outside a {n}x{m} engine")]
    OutOfRange { armature: usize, row: usize, n: usize, m: usize },
    #[error("orientation search capped at {cap} armatures, engine has {n}")]
    CapExceeded { n: usize, cap: usize },
    #[error("configuration does not match the engine: {0}")]
    Malformed(String),
    #[error("cannot parse dump: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainKind {
    A,
    APrime,
}

impl ChainKind {
    pub fn is_primed(self) -> bool {
        self == ChainKind::APrime
    }
}

impl fmt::Display for ChainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainKind::A => "a",
            ChainKind::APrime => "a'",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FlagDir {
    TowardGapLeft,
    TowardGapRight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Upper,
    Lower,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Upper, Side::Lower];
}

/// One collision site: gap `gap` (0..=n) on row `row` (1..=m) of one side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GapSlot {
    pub side: Side,
    pub row: usize,
    pub gap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicEngine {
    n: usize,
    m: usize,
    /// `flags[kind][i - 1][j - 1]`.
    flag_a: Vec<Vec<bool>>,
    flag_a_prime: Vec<Vec<bool>>,
}

/// Orientation per armature plus a direction for every present flag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EngineConfig {
    /// `true` when chain `a_i` points up.
    pub orientation: Vec<bool>,
    pub dir_a: Vec<Vec<Option<FlagDir>>>,
    pub dir_a_prime: Vec<Vec<Option<FlagDir>>>,
}

impl EngineConfig {
    pub fn dir(&self, kind: ChainKind, i: usize, j: usize) -> Option<FlagDir> {
        match kind {
            ChainKind::A => self.dir_a[i - 1][j - 1],
            ChainKind::APrime => self.dir_a_prime[i - 1][j - 1],
        }
    }

    pub fn set_dir(&mut self, kind: ChainKind, i: usize, j: usize, dir: Option<FlagDir>) {
        match kind {
            ChainKind::A => self.dir_a[i - 1][j - 1] = dir,
            ChainKind::APrime => self.dir_a_prime[i - 1][j - 1] = dir,
        }
    }

    /// `orientation <bits>` followed by one `flag <chain> <i> <j> <L|R>` line
    /// per present flag.
    pub fn dump(&self) -> String {
        let mut out = String::from("orientation ");
        for &up in &self.orientation {
            out.push(if up { '1' } else { '0' });
        }
        out.push('\n');
        for (kind, dirs) in [(ChainKind::A, &self.dir_a), (ChainKind::APrime, &self.dir_a_prime)] {
            for (i, row) in dirs.iter().enumerate() {
                for (j, dir) in row.iter().enumerate() {
                    if let Some(d) = dir {
                        let tag = if *d == FlagDir::TowardGapLeft { 'L' } else { 'R' };
                        out.push_str(&format!("flag {kind} {} {} {tag}\n", i + 1, j + 1));
                    }
                }
            }
        }
        out
    }

    pub fn parse_dump(text: &str, n: usize, m: usize) -> Result<Self, EngineError> {
        let bad = |s: &str| EngineError::Parse(s.to_string());
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let first = lines.next().ok_or_else(|| bad("empty config"))?;
        let bits = first.strip_prefix("orientation ").ok_or_else(|| bad(first))?;
        let orientation: Vec<bool> = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(bad(first)),
            })
            .collect::<Result<_, _>>()?;
        if orientation.len() != n {
            return Err(bad("orientation length"));
        }
        let mut cfg = EngineConfig {
            orientation,
            dir_a: vec![vec![None; m]; n],
            dir_a_prime: vec![vec![None; m]; n],
        };
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let ["flag", kind, i, j, d] = parts.as_slice() else {
                return Err(bad(line));
            };
            let kind = match *kind {
                "a" => ChainKind::A,
                "a'" => ChainKind::APrime,
                _ => return Err(bad(line)),
            };
            let i: usize = i.parse().map_err(|_| bad(line))?;
            let j: usize = j.parse().map_err(|_| bad(line))?;
            if !(1..=n).contains(&i) || !(1..=m).contains(&j) {
                return Err(bad(line));
            }
            let dir = match *d {
                "L" => FlagDir::TowardGapLeft,
                "R" => FlagDir::TowardGapRight,
                _ => return Err(bad(line)),
            };
            cfg.set_dir(kind, i, j, Some(dir));
        }
        Ok(cfg)
    }
}

impl LogicEngine {
    /// Engine from explicit `n x m` flag matrices (`[armature][row]`).
    pub fn new(flag_a: Vec<Vec<bool>>, flag_a_prime: Vec<Vec<bool>>) -> Result<Self, EngineError> {
        let n = flag_a.len();
        let m = flag_a.first().map_or(0, Vec::len);
        let shaped = |mat: &Vec<Vec<bool>>| mat.len() == n && mat.iter().all(|r| r.len() == m);
        if n == 0 || m == 0 || !shaped(&flag_a) || !shaped(&flag_a_prime) {
            return Err(EngineError::Malformed("flag matrices must both be n x m, n, m >= 1".into()));
        }
        Ok(LogicEngine { n, m, flag_a, flag_a_prime })
    }

    /// A flag sits on link `j` of `a_i` when `X_i` does not occur positively in
    /// clause `j`, and on link `j` of `a_i'` when it does not occur negated.
    pub fn from_formula(f: &Formula) -> Self {
        let (n, m) = (f.num_vars(), f.num_clauses());
        let mut flag_a = vec![vec![false; m]; n];
        let mut flag_a_prime = vec![vec![false; m]; n];
        for i in 0..n {
            for (j, clause) in f.clauses().iter().enumerate() {
                flag_a[i][j] = !clause.contains(Literal::pos(i + 1));
                flag_a_prime[i][j] = !clause.contains(Literal::neg(i + 1));
            }
        }
        LogicEngine { n, m, flag_a, flag_a_prime }
    }

    pub fn armatures(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn has_flag(&self, kind: ChainKind, i: usize, j: usize) -> bool {
        match kind {
            ChainKind::A => self.flag_a[i - 1][j - 1],
            ChainKind::APrime => self.flag_a_prime[i - 1][j - 1],
        }
    }

    pub fn set_flag(&mut self, kind: ChainKind, i: usize, j: usize, present: bool) {
        match kind {
            ChainKind::A => self.flag_a[i - 1][j - 1] = present,
            ChainKind::APrime => self.flag_a_prime[i - 1][j - 1] = present,
        }
    }

    pub fn flag_count(&self) -> usize {
        self.flag_a
            .iter()
            .chain(&self.flag_a_prime)
            .map(|row| row.iter().filter(|&&f| f).count())
            .sum()
    }

    /// Present flags as `(kind, armature, row)`, 1-based.
    pub fn flags(&self) -> impl Iterator<Item = (ChainKind, usize, usize)> + '_ {
        [ChainKind::A, ChainKind::APrime].into_iter().flat_map(move |kind| {
            (1..=self.n).flat_map(move |i| {
                (1..=self.m).filter_map(move |j| self.has_flag(kind, i, j).then_some((kind, i, j)))
            })
        })
    }

    /// Chain of armature `i` that faces `side` under `orientation`.
    pub fn chain_facing(orientation: &[bool], i: usize, side: Side) -> ChainKind {
        if (side == Side::Upper) == orientation[i - 1] {
            ChainKind::A
        } else {
            ChainKind::APrime
        }
    }

    fn side_of(orientation: &[bool], i: usize, kind: ChainKind) -> Side {
        if (kind == ChainKind::A) == orientation[i - 1] {
            Side::Upper
        } else {
            Side::Lower
        }
    }

    /// Slot taken by the flag on link `j` of chain `kind` of armature `i`.
    pub fn occupied_slot(
        &self,
        cfg: &EngineConfig,
        i: usize,
        j: usize,
        kind: ChainKind,
    ) -> Result<GapSlot, EngineError> {
        if !(1..=self.n).contains(&i) || !(1..=self.m).contains(&j) {
            return Err(EngineError::OutOfRange { armature: i, row: j, n: self.n, m: self.m });
        }
        if !self.has_flag(kind, i, j) {
            return Err(EngineError::AbsentFlag { armature: i, row: j, kind });
        }
        self.check_shape(cfg)?;
        let dir = cfg
            .dir(kind, i, j)
            .ok_or_else(|| EngineError::Malformed(format!("flag {kind} {i} {j} has no direction")))?;
        Ok(GapSlot {
            side: Self::side_of(&cfg.orientation, i, kind),
            row: j,
            gap: match dir {
                FlagDir::TowardGapLeft => i - 1,
                FlagDir::TowardGapRight => i,
            },
        })
    }

    /// Checks dimensions and that directions are given on exactly the present flags.
    pub fn check_shape(&self, cfg: &EngineConfig) -> Result<(), EngineError> {
        if cfg.orientation.len() != self.n {
            return Err(EngineError::Malformed(format!(
                "orientation has {} entries, engine has {} armatures",
                cfg.orientation.len(),
                self.n
            )));
        }
        for (kind, dirs) in [(ChainKind::A, &cfg.dir_a), (ChainKind::APrime, &cfg.dir_a_prime)] {
            if dirs.len() != self.n || dirs.iter().any(|r| r.len() != self.m) {
                return Err(EngineError::Malformed(format!("direction matrix for {kind} is not n x m")));
            }
            for i in 1..=self.n {
                for j in 1..=self.m {
                    if dirs[i - 1][j - 1].is_some() != self.has_flag(kind, i, j) {
                        return Err(EngineError::Malformed(format!(
                            "direction on {kind} {i} {j} does not match flag presence"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// No flag in a walled gap and no slot taken twice. Malformed
    /// configurations are reported as invalid.
    pub fn config_valid(&self, cfg: &EngineConfig) -> bool {
        if self.check_shape(cfg).is_err() {
            return false;
        }
        let mut taken = std::collections::HashSet::new();
        for (kind, i, j) in self.flags() {
            let slot = match self.occupied_slot(cfg, i, j, kind) {
                Ok(s) => s,
                Err(_) => return false,
            };
            if slot.gap == 0 || slot.gap == self.n || !taken.insert(slot) {
                return false;
            }
        }
        true
    }

    /// Whether some armature leaves link `row` on `side` without a flag.
    pub fn row_has_free_link(&self, orientation: &[bool], side: Side, row: usize) -> bool {
        (1..=self.n).any(|i| !self.has_flag(Self::chain_facing(orientation, i, side), i, row))
    }

    pub fn all_rows_free(&self, orientation: &[bool]) -> bool {
        Side::BOTH
            .iter()
            .all(|&side| (1..=self.m).all(|row| self.row_has_free_link(orientation, side, row)))
    }

    /// Directions for a fixed orientation: in each physical row, flags left of
    /// the first flag-free link point right and all others point left. Returns
    /// `None` when some row has no free link.
    pub fn sweep_directions(&self, orientation: &[bool]) -> Option<EngineConfig> {
        if orientation.len() != self.n {
            return None;
        }
        let mut cfg = EngineConfig {
            orientation: orientation.to_vec(),
            dir_a: vec![vec![None; self.m]; self.n],
            dir_a_prime: vec![vec![None; self.m]; self.n],
        };
        for side in Side::BOTH {
            for row in 1..=self.m {
                let facing = |i: usize| Self::chain_facing(orientation, i, side);
                let free = (1..=self.n).find(|&i| !self.has_flag(facing(i), i, row))?;
                for i in 1..=self.n {
                    let kind = facing(i);
                    if self.has_flag(kind, i, row) {
                        let dir = if i < free {
                            FlagDir::TowardGapRight
                        } else {
                            FlagDir::TowardGapLeft
                        };
                        cfg.set_dir(kind, i, row, Some(dir));
                    }
                }
            }
        }
        Some(cfg)
    }

    /// First flat configuration over orientations in binary order (armature 1
    /// most significant, `false` before `true`).
    pub fn exists_flat(&self) -> Result<Option<EngineConfig>, EngineError> {
        self.exists_flat_capped(DEFAULT_ORIENTATION_CAP)
    }

    pub fn exists_flat_capped(&self, cap: usize) -> Result<Option<EngineConfig>, EngineError> {
        if self.n > cap {
            return Err(EngineError::CapExceeded { n: self.n, cap });
        }
        let mut orientation = vec![false; self.n];
        for bits in 0u64..(1u64 << self.n) {
            for (i, o) in orientation.iter_mut().enumerate() {
                *o = (bits >> (self.n - 1 - i)) & 1 == 1;
            }
            if !self.all_rows_free(&orientation) {
                continue;
            }
            let cfg = self
                .sweep_directions(&orientation)
                .expect("every row has a free link");
            if self.config_valid(&cfg) {
                return Ok(Some(cfg));
            }
            unreachable!("sweep produced a colliding configuration for {orientation:?}");
        }
        Ok(None)
    }

    /// `engine <n> <m>`, then `a <bits>` per armature, then `a' <bits>`.
    pub fn dump(&self) -> String {
        let mut out = format!("engine {} {}\n", self.n, self.m);
        for (tag, mat) in [("a", &self.flag_a), ("a'", &self.flag_a_prime)] {
            for row in mat {
                out.push_str(tag);
                out.push(' ');
                out.extend(row.iter().map(|&f| if f { '1' } else { '0' }));
                out.push('\n');
            }
        }
        out
    }

    pub fn parse_dump(text: &str) -> Result<Self, EngineError> {
        let bad = |s: &str| EngineError::Parse(s.to_string());
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| bad("empty dump"))?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        let (n, m) = match dims.as_slice() {
            ["engine", n, m] => (
                n.parse::<usize>().map_err(|_| bad(header))?,
                m.parse::<usize>().map_err(|_| bad(header))?,
            ),
            _ => return Err(bad(header)),
        };
        let mut mats = [Vec::new(), Vec::new()];
        for line in lines {
            let (tag, bits) = line.split_once(' ').ok_or_else(|| bad(line))?;
            let slot = match tag {
                "a" => 0,
                "a'" => 1,
                _ => return Err(bad(line)),
            };
            let row: Vec<bool> = bits
                .trim()
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(bad(line)),
                })
                .collect::<Result<_, _>>()?;
            if row.len() != m {
                return Err(bad(line));
            }
            mats[slot].push(row);
        }
        let [flag_a, flag_a_prime] = mats;
        if flag_a.len() != n || flag_a_prime.len() != n {
            return Err(bad("row count does not match header"));
        }
        LogicEngine::new(flag_a, flag_a_prime)
    }
}

pub fn build_engine(f: &Formula) -> LogicEngine {
    LogicEngine::from_formula(f)
}
