//! Exact counts of rooted Reeb trees (`K`) and full Reeb graphs (`N`).
//!
//! Splitting a rooted tree at the saddle nearest its root leaves two subtrees
//! with `i + j = k - 1` saddles. When `i != j` there are three attachments
//! (up-up, and two ordered mixed ones), each contributing `K_i K_j`. When
//! `i == j == n` the up-up pair is unordered, giving `K_n (K_n + 1) / 2`,
//! plus `K_n^2` ordered mixed pairs:
//!
//! ```text
//! K_0      = 1
//! K_{2n}   = 3 (K_0 K_{2n-1} + ... + K_{n-1} K_n)
//! K_{2n+1} = 3 (K_0 K_{2n}   + ... + K_{n-1} K_{n+1}) + (3 K_n^2 + K_n) / 2
//! N_k      = K_0 K_{k-1} + K_1 K_{k-2} + ... + K_{k-1} K_0
//! ```

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;

use crate::Kind;

/// Arbitrary-precision non-negative count.
pub type BigCount = BigUint;

/// Value of `N_10` as printed in the published table. It disagrees with the
/// convolution of the published `K` values, which gives [`N10_COMPUTED`].
pub const N10_PUBLISHED: u64 = 2_178_244;
pub const N10_COMPUTED: u64 = 1_595_244;

/// A level where the published table and the recurrence disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Erratum {
    pub k: usize,
    pub published: u64,
    pub computed: u64,
}

impl Erratum {
    pub fn note(&self) -> String {
        format!(
            "N({}) = {} from the convolution over K; the published table lists {}",
            self.k, self.computed, self.published
        )
    }
}

/// Known disagreement with the published values for `(kind, k)`, if any.
pub fn erratum(kind: Kind, k: usize) -> Option<Erratum> {
    match (kind, k) {
        (Kind::Full, 10) => Some(Erratum {
            k: 10,
            published: N10_PUBLISHED,
            computed: N10_COMPUTED,
        }),
        _ => None,
    }
}

/// Memoized evaluator. The memo only ever grows, and all access goes through
/// one lock, so concurrent callers see a consistent prefix.
#[derive(Debug)]
pub struct Counter {
    rooted: Mutex<Vec<BigUint>>,
    parity_checks: AtomicUsize,
}

impl Default for Counter {
    fn default() -> Self {
        Self::new()
    }
}

impl Counter {
    pub fn new() -> Self {
        Counter {
            rooted: Mutex::new(vec![BigUint::from(1u32)]),
            parity_checks: AtomicUsize::new(0),
        }
    }

    /// `K_k`: rooted oriented Reeb trees with `k` saddles.
    pub fn rooted(&self, k: usize) -> BigCount {
        let mut memo = self.rooted.lock().unwrap_or_else(|e| e.into_inner());
        while memo.len() <= k {
            let next = self.next_rooted(&memo);
            memo.push(next);
        }
        memo[k].clone()
    }

    fn next_rooted(&self, memo: &[BigUint]) -> BigUint {
        let m = memo.len();
        let pairs = m - 1;
        let mut sum = BigUint::from(0u32);
        for i in 0..pairs.div_ceil(2) {
            sum += &memo[i] * &memo[pairs - i];
        }
        let mut total = sum * 3u32;
        if pairs.is_multiple_of(2) {
            total += self.balanced_term(&memo[pairs / 2]);
        }
        total
    }

    /// `(3 K_n^2 + K_n) / 2`: subtrees of equal size.
    fn balanced_term(&self, kn: &BigUint) -> BigUint {
        let numerator = kn * (kn * 3u32 + 1u32);
        assert!(
            !numerator.bit(0),
            "K_n (3 K_n + 1) must be even, got {numerator}"
        );
        self.parity_checks.fetch_add(1, Ordering::Relaxed);
        numerator >> 1
    }

    /// `N_k`: full Reeb graphs with `k` saddles. `N_0` is 0.
    pub fn full(&self, k: usize) -> BigCount {
        if k == 0 {
            return BigUint::from(0u32);
        }
        self.rooted(k - 1);
        let memo = self.rooted.lock().unwrap_or_else(|e| e.into_inner());
        (0..k).map(|i| &memo[i] * &memo[k - 1 - i]).sum()
    }

    pub fn count(&self, kind: Kind, k: usize) -> BigCount {
        match kind {
            Kind::Rooted => self.rooted(k),
            Kind::Full => self.full(k),
        }
    }

    /// All values from the first meaningful level up to `k_max`: `0..=k_max`
    /// for rooted trees, `1..=k_max` for full graphs.
    pub fn table(&self, k_max: usize, kind: Kind) -> Vec<(usize, BigCount)> {
        (kind.min_saddles()..=k_max)
            .map(|k| (k, self.count(kind, k)))
            .collect()
    }

    /// How many times the parity of the balanced term has been checked.
    pub fn parity_checks(&self) -> usize {
        self.parity_checks.load(Ordering::Relaxed)
    }

    pub fn memo_len(&self) -> usize {
        self.rooted.lock().unwrap_or_else(|e| e.into_inner()).len()
    }
}

fn global() -> &'static Counter {
    static COUNTER: OnceLock<Counter> = OnceLock::new();
    COUNTER.get_or_init(Counter::new)
}

pub fn rooted_count(k: usize) -> BigCount {
    global().rooted(k)
}

pub fn full_count(k: usize) -> BigCount {
    global().full(k)
}

pub fn count(kind: Kind, k: usize) -> BigCount {
    global().count(kind, k)
}

pub fn table(k_max: usize, kind: Kind) -> Vec<(usize, BigCount)> {
    global().table(k_max, kind)
}
