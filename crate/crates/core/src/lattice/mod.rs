//! Paths with up steps `(1, 1)` and down steps `(1, -(p-1))`, the `p`-ary
//! trees they encode, and the statistics whose joint distribution is `B_p`.
//!
//! For a path with `n` down steps, the statistic `ks` classifies every down
//! step outside the final run of down steps by the residue of its end height
//! modulo `p - 1`. For `p = 3` that is `(k, l)` = (even-height, odd-height).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::fuss_catalan;

mod cycle;
mod tree;

pub use cycle::{
    cycle_word_profile, even_cyclic_shifts, good_shift_fraction, periodic_cycle_word,
    random_cycle_word, shuffled_word, CycleProfile,
};
pub use tree::{enumerate_trees, enumerate_trees_with_limit, tree_distribution, Node, PAryTree};

/// Default cap on the number of objects an enumeration may produce.
pub const DEFAULT_ENUM_LIMIT: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Up,
    Down,
}

impl Step {
    pub fn as_char(self) -> char {
        match self {
            Step::Up => 'U',
            Step::Down => 'D',
        }
    }

    pub fn from_char(c: char) -> Result<Step> {
        match c {
            'U' | 'u' => Ok(Step::Up),
            'D' | 'd' => Ok(Step::Down),
            other => Err(Error::BadStepChar(other)),
        }
    }
}

/// Parses a compact `U`/`D` word.
pub fn parse_steps(s: &str) -> Result<Vec<Step>> {
    s.chars().map(Step::from_char).collect()
}

pub fn steps_to_string(steps: &[Step]) -> String {
    steps.iter().map(|s| s.as_char()).collect()
}

/// A step sequence for arity `p`. May be invalid; see [`LatticePath::is_valid`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePath {
    p: u32,
    steps: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathStats {
    /// Number of down steps.
    pub n: u64,
    /// Length of the terminal maximal run of down steps.
    pub last_run: u64,
    /// Counts of the remaining down steps by end-height residue mod `p - 1`.
    pub ks: Vec<u64>,
}

impl LatticePath {
    pub fn new(p: u32, steps: Vec<Step>) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidArity(p));
        }
        Ok(LatticePath { p, steps })
    }

    pub fn parse(p: u32, s: &str) -> Result<Self> {
        LatticePath::new(p, parse_steps(s)?)
    }

    pub fn empty(p: u32) -> Result<Self> {
        LatticePath::new(p, Vec::new())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn down_count(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::Down).count()
    }

    /// End height of each step.
    pub fn heights(&self) -> Vec<i64> {
        let drop = (self.p - 1) as i64;
        self.steps
            .iter()
            .scan(0i64, |h, s| {
                *h += match s {
                    Step::Up => 1,
                    Step::Down => -drop,
                };
                Some(*h)
            })
            .collect()
    }

    /// Never dips below height 0 and ends at height 0.
    pub fn is_valid(&self) -> bool {
        let heights = self.heights();
        heights.iter().all(|&h| h >= 0) && heights.last().is_none_or(|&h| h == 0)
    }

    pub fn stats(&self) -> Result<PathStats> {
        if !self.is_valid() {
            return Err(Error::InvalidPath(self.to_string()));
        }
        Ok(stats_of(self.p, &self.steps))
    }

    /// Cuts the path right after its `((p-1)(n-1))`-th up step and closes it
    /// with down steps, giving a path with `n - 1` down steps.
    pub fn truncate_last_node(&self) -> Result<LatticePath> {
        let n = self.down_count();
        if !self.is_valid() || n == 0 {
            return Err(Error::InvalidPath(self.to_string()));
        }
        let drop = (self.p - 1) as usize;
        let keep_ups = drop * (n - 1);
        let mut steps = Vec::with_capacity(self.p as usize * (n - 1));
        let mut ups = 0;
        let mut height = 0usize;
        if keep_ups > 0 {
            for &s in &self.steps {
                steps.push(s);
                match s {
                    Step::Up => {
                        ups += 1;
                        height += 1;
                    }
                    Step::Down => height -= drop,
                }
                if ups == keep_ups {
                    break;
                }
            }
        }
        steps.extend(std::iter::repeat_n(Step::Down, height / drop));
        LatticePath::new(self.p, steps)
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&steps_to_string(&self.steps))
    }
}

/// Statistics of a step word assumed to be a valid path.
fn stats_of(p: u32, steps: &[Step]) -> PathStats {
    let classes = (p - 1) as usize;
    let last_run = steps.iter().rev().take_while(|&&s| s == Step::Down).count();
    let body = &steps[..steps.len() - last_run];
    let mut ks = vec![0u64; classes];
    let mut n = last_run as u64;
    let mut height = 0i64;
    for &s in body {
        match s {
            Step::Up => height += 1,
            Step::Down => {
                height -= classes as i64;
                ks[height.rem_euclid(classes as i64) as usize] += 1;
                n += 1;
            }
        }
    }
    PathStats {
        n,
        last_run: last_run as u64,
        ks,
    }
}

fn guard(p: u32, n: u64, limit: u64) -> Result<()> {
    if p < 2 {
        return Err(Error::InvalidArity(p));
    }
    let count = fuss_catalan(p, n);
    if count > BigInt::from(limit) {
        return Err(Error::TooLarge {
            requested: count.to_u128().unwrap_or(u128::MAX),
            limit: limit as u128,
        });
    }
    Ok(())
}

/// Calls `visit` on every valid path with `n` down steps, in lexicographic
/// order with `Up < Down`. The slice is a reused buffer.
pub fn for_each_path<F: FnMut(&[Step])>(p: u32, n: u64, mut visit: F) {
    fn go<F: FnMut(&[Step])>(
        buf: &mut Vec<Step>,
        ups_left: u64,
        downs_left: u64,
        height: u64,
        drop: u64,
        visit: &mut F,
    ) {
        if ups_left == 0 && downs_left == 0 {
            visit(buf);
            return;
        }
        if ups_left > 0 {
            buf.push(Step::Up);
            go(buf, ups_left - 1, downs_left, height + 1, drop, visit);
            buf.pop();
        }
        if downs_left > 0 && height >= drop {
            buf.push(Step::Down);
            go(buf, ups_left, downs_left - 1, height - drop, drop, visit);
            buf.pop();
        }
    }
    let drop = (p - 1) as u64;
    let mut buf = Vec::with_capacity((p as u64 * n) as usize);
    go(&mut buf, drop * n, n, 0, drop, &mut visit);
}

pub fn enumerate_paths(p: u32, n: u64) -> Result<Vec<LatticePath>> {
    enumerate_paths_with_limit(p, n, DEFAULT_ENUM_LIMIT)
}

/// All valid paths with `n` down steps, each once, in lexicographic order.
pub fn enumerate_paths_with_limit(p: u32, n: u64, limit: u64) -> Result<Vec<LatticePath>> {
    guard(p, n, limit)?;
    let mut out = Vec::new();
    for_each_path(p, n, |steps| {
        out.push(LatticePath {
            p,
            steps: steps.to_vec(),
        })
    });
    Ok(out)
}

pub fn distribution(p: u32, n: u64) -> Result<BTreeMap<Vec<u64>, BigInt>> {
    distribution_with_limit(p, n, DEFAULT_ENUM_LIMIT)
}

/// Number of paths with `n` down steps for each value of the statistic `ks`.
pub fn distribution_with_limit(p: u32, n: u64, limit: u64) -> Result<BTreeMap<Vec<u64>, BigInt>> {
    guard(p, n, limit)?;
    let mut counts: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    for_each_path(p, n, |steps| {
        *counts.entry(stats_of(p, steps).ks).or_default() += 1;
    });
    Ok(counts
        .into_iter()
        .map(|(k, v)| (k, BigInt::from(v)))
        .collect())
}

/// Total count implied by a distribution.
pub fn distribution_total(dist: &BTreeMap<Vec<u64>, BigInt>) -> BigInt {
    dist.values().sum()
}
