//! Exhaustive construction of all non-isomorphic rooted trees and full graphs
//! with a given number of saddles.
//!
//! A tree with `k` saddles is a saddle with two subtrees whose saddle counts
//! sum to `k - 1`. For each split the builder forms every up-up pair (only
//! `a <= b` when both sides come from the same level) and every ordered mixed
//! pair. Duplicates are never produced, so the size of each level is an
//! independent check on the recurrence in [`crate::count`].
//!
//! Levels are memoized: building level `k` reads all lower levels.

use std::sync::Arc;

use num_bigint::BigUint;
use thiserror::Error;

use crate::count;
use crate::tree::{FullReebGraph, RootedReebTree};
use crate::Kind;

pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("{kind} level {k} has {projected} objects, above the cap of {cap}")]
    ResourceLimit {
        kind: Kind,
        k: usize,
        projected: BigUint,
        cap: u64,
    },
    #[error("full graphs need at least one saddle")]
    NoSaddles,
}

/// Sorted list of all rooted trees with a fixed saddle count.
pub type Level = Arc<[RootedReebTree]>;

#[derive(Debug, Clone)]
pub struct Enumerator {
    levels: Vec<Level>,
    cap: u64,
}

impl Default for Enumerator {
    fn default() -> Self {
        Self::new()
    }
}

impl Enumerator {
    pub fn new() -> Self {
        Self::with_cap(DEFAULT_CAP)
    }

    /// `cap` bounds the number of objects any single requested level may
    /// hold.
    pub fn with_cap(cap: u64) -> Self {
        Enumerator {
            levels: vec![Arc::from(vec![RootedReebTree::leaf()])],
            cap,
        }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    fn check_cap(&self, kind: Kind, k: usize) -> Result<(), EnumerateError> {
        let projected = count::count(kind, k);
        if projected > BigUint::from(self.cap) {
            return Err(EnumerateError::ResourceLimit {
                kind,
                k,
                projected,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// Every rooted tree with `k` saddles, sorted by canonical encoding.
    pub fn rooted(&mut self, k: usize) -> Result<Level, EnumerateError> {
        self.check_cap(Kind::Rooted, k)?;
        self.fill(k);
        Ok(self.levels[k].clone())
    }

    fn fill(&mut self, k: usize) {
        while self.levels.len() <= k {
            let level = build_level(&self.levels);
            self.levels.push(level.into());
        }
    }

    /// Every full graph with `k >= 1` saddles: ascending saddle count of the
    /// lower tree, then canonical order of the lower tree, then of the upper.
    pub fn full(&mut self, k: usize) -> Result<FullStream, EnumerateError> {
        if k == 0 {
            return Err(EnumerateError::NoSaddles);
        }
        self.check_cap(Kind::Full, k)?;
        self.fill(k - 1);
        Ok(FullStream::new(self.levels[..k].to_vec()))
    }
}

fn build_level(levels: &[Level]) -> Vec<RootedReebTree> {
    let m = levels.len();
    let capacity = count::rooted_count(m).try_into().unwrap_or(0usize);
    let mut out = Vec::with_capacity(capacity);
    for i in 0..m {
        let j = m - 1 - i;
        let (small, large) = (&levels[i], &levels[j]);
        // up-up: unordered, so only i <= j, and a <= b inside one level
        if i < j {
            for a in small.iter() {
                for b in large.iter() {
                    out.push(RootedReebTree::up_up_ordered(a.clone(), b.clone()));
                }
            }
        } else if i == j {
            for (ia, a) in small.iter().enumerate() {
                for b in &small[ia..] {
                    out.push(RootedReebTree::up_up_ordered(a.clone(), b.clone()));
                }
            }
        }
        for up in small.iter() {
            for down in large.iter() {
                out.push(RootedReebTree::attach_mixed(up.clone(), down.clone()));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Lazily glues every ordered pair of rooted trees for one saddle count.
#[derive(Debug, Clone)]
pub struct FullStream {
    levels: Vec<Level>,
    split: usize,
    lower: usize,
    upper: usize,
    remaining: usize,
}

impl FullStream {
    fn new(levels: Vec<Level>) -> Self {
        let k = levels.len();
        let remaining = (0..k)
            .map(|i| levels[i].len() * levels[k - 1 - i].len())
            .sum();
        FullStream {
            levels,
            split: 0,
            lower: 0,
            upper: 0,
            remaining,
        }
    }

    pub fn saddle_count(&self) -> usize {
        self.levels.len()
    }
}

impl Iterator for FullStream {
    type Item = FullReebGraph;

    fn next(&mut self) -> Option<FullReebGraph> {
        if self.remaining == 0 {
            return None;
        }
        let k = self.levels.len();
        let lows = &self.levels[self.split];
        let highs = &self.levels[k - 1 - self.split];
        let g = FullReebGraph::glue(lows[self.lower].clone(), highs[self.upper].clone());
        self.upper += 1;
        if self.upper == highs.len() {
            self.upper = 0;
            self.lower += 1;
            if self.lower == lows.len() {
                self.lower = 0;
                self.split += 1;
            }
        }
        self.remaining -= 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl ExactSizeIterator for FullStream {}

/// Rooted trees with `k` saddles under the default cap.
pub fn enum_rooted(k: usize) -> Result<Vec<RootedReebTree>, EnumerateError> {
    Ok(Enumerator::new().rooted(k)?.to_vec())
}

/// Full graphs with `k` saddles under the default cap.
pub fn enum_full(k: usize) -> Result<FullStream, EnumerateError> {
    Enumerator::new().full(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
        items.into_iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn level_zero_and_one() {
        assert_eq!(strings(enum_rooted(0).unwrap()), vec!["*"]);
        assert_eq!(strings(enum_rooted(1).unwrap()), vec!["(*^*^)", "(*^*v)"]);
    }

    #[test]
    fn level_two_matches_hand_enumeration() {
        let mut got = strings(enum_rooted(2).unwrap());
        got.sort();
        let mut want = vec![
            "(*^(*^*^)^)",
            "(*^(*^*v)^)",
            "(*^(*^*^)v)",
            "(*^(*^*v)v)",
            "((*^*^)^*v)",
            "((*^*v)^*v)",
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn levels_are_sorted_and_distinct() {
        let mut e = Enumerator::new();
        for k in 0..=5 {
            let level = e.rooted(k).unwrap();
            assert!(level.windows(2).all(|w| w[0] < w[1]), "level {k}");
        }
    }

    #[test]
    fn full_small_levels() {
        assert_eq!(strings(enum_full(1).unwrap()), vec!["[*|*]"]);
        assert_eq!(
            strings(enum_full(2).unwrap()),
            vec!["[*|(*^*^)]", "[*|(*^*v)]", "[(*^*^)|*]", "[(*^*v)|*]"]
        );
        assert_eq!(enum_full(3).unwrap().count(), 16);
        assert_eq!(enum_full(4).unwrap().len(), 74);
        assert_eq!(enum_full(0).unwrap_err(), EnumerateError::NoSaddles);
    }

    #[test]
    fn cap_is_enforced() {
        let mut e = Enumerator::with_cap(100);
        assert!(e.rooted(4).is_err());
        assert_eq!(e.rooted(3).unwrap().len(), 25);
        assert_eq!(e.full(4).unwrap().len(), 74);
        assert!(matches!(
            e.full(5),
            Err(EnumerateError::ResourceLimit { .. })
        ));
    }
}
