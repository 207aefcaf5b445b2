//! Dimension-bound combinatorics: the composition count `delta(n, j, k)`,
//! the recursive bound functions `f_i(k)`, and the block-size sequence
//! `k_seq(n, j)` consumed by the null-subspace constructions.
//!
//! `delta(n, j, k)` counts tuples in N_0^(k-1) summing to `n - j`, i.e.
//! weak compositions of `n - j` into `k - 1` parts, which equals
//! `C(n - j + k - 2, k - 2)`.
//!
//! `f_1` defaults to `k + 1`; for `i >= 2`,
//! `f_i(1) = 2` and
//! `f_i(k) = k - 1 + (f_{i-1}^[delta(i,i-1,k)] o ... o f_1^[delta(i,1,k)])(2)`
//! where `g^[m]` is the m-fold iterate. All arithmetic is checked; the
//! values explode quickly and overflow is reported, never wrapped.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};

/// The base function `f_1` of the recursion.
///
/// Any base must satisfy `f(1) = 2`, strict monotonicity, and the
/// subspace property that a hyperplane of an `f(k)`-dimensional space
/// contains a k-dimensional subspace. The default `k + 1` is the
/// smallest such function; it is the only one shipped.
#[derive(Clone)]
pub enum BaseRule {
    /// `f_1(k) = k + 1`; iterates in closed form.
    KPlusOne,
    /// Arbitrary base; iterated by repeated application, which may be
    /// slow when the iteration count is astronomically large.
    Custom(Arc<dyn Fn(u64) -> Option<u64> + Send + Sync>),
}

impl BaseRule {
    fn apply(&self, k: u64) -> Result<u64> {
        match self {
            BaseRule::KPlusOne => k.checked_add(1).ok_or(Error::Overflow("f_1(k)")),
            BaseRule::Custom(f) => f(k).ok_or(Error::Overflow("custom f_1(k)")),
        }
    }

    fn apply_iterated(&self, times: u64, start: u64) -> Result<u64> {
        match self {
            BaseRule::KPlusOne => start.checked_add(times).ok_or(Error::Overflow("f_1 iterate")),
            BaseRule::Custom(_) => {
                let mut v = start;
                for _ in 0..times {
                    v = self.apply(v)?;
                }
                Ok(v)
            }
        }
    }
}

/// Memoized tables for `delta`, `f_i`, and `k_seq`.
///
/// Immutable from the caller's point of view; the memo maps are behind
/// mutexes so a shared table can be read concurrently.
pub struct BoundTable {
    base: BaseRule,
    memo_delta: Mutex<HashMap<(u32, u32, u64), u64>>,
    memo_f: Mutex<HashMap<(u32, u64), u64>>,
    memo_kseq: Mutex<HashMap<(u32, u64), u64>>,
}

impl Default for BoundTable {
    fn default() -> Self {
        Self::new()
    }
}

impl BoundTable {
    pub fn new() -> Self {
        Self::with_base(BaseRule::KPlusOne).expect("default base is valid")
    }

    /// A table with a custom base function. Rejects bases with
    /// `f(1) != 2`; monotonicity is the caller's responsibility.
    pub fn with_base(base: BaseRule) -> Result<Self> {
        if base.apply(1)? != 2 {
            return Err(Error::InvalidArgument("base rule must satisfy f(1) = 2".into()));
        }
        Ok(Self {
            base,
            memo_delta: Mutex::new(HashMap::new()),
            memo_f: Mutex::new(HashMap::new()),
            memo_kseq: Mutex::new(HashMap::new()),
        })
    }

    /// Number of weak compositions of `n - j` into `k - 1` parts,
    /// `C(n - j + k - 2, k - 2)`.
    pub fn delta(&self, n: u32, j: u32, k: u64) -> Result<u64> {
        if n < 2 || j < 1 || j > n - 1 {
            return Err(Error::InvalidArgument(format!(
                "delta requires n >= 2 and 1 <= j <= n-1, got n={n}, j={j}"
            )));
        }
        if k < 2 {
            return Err(Error::InvalidArgument(format!("delta requires k >= 2, got k={k}")));
        }
        if let Some(&v) = self.memo_delta.lock().unwrap().get(&(n, j, k)) {
            return Ok(v);
        }
        let v = binomial(u64::from(n - j) + k - 2, k - 2).ok_or(Error::Overflow("delta(n,j,k)"))?;
        self.memo_delta.lock().unwrap().insert((n, j, k), v);
        Ok(v)
    }

    /// The recursive dimension bound `f_i(k)`.
    pub fn f(&self, i: u32, k: u64) -> Result<u64> {
        if i < 1 || k < 1 {
            return Err(Error::InvalidArgument(format!(
                "f requires i >= 1 and k >= 1, got i={i}, k={k}"
            )));
        }
        if i == 1 {
            return self.base.apply(k);
        }
        if k == 1 {
            return Ok(2);
        }
        if let Some(&v) = self.memo_f.lock().unwrap().get(&(i, k)) {
            return Ok(v);
        }
        // (f_{i-1}^[delta(i,i-1,k)] o ... o f_1^[delta(i,1,k)])(2),
        // innermost first.
        let mut acc: u64 = 2;
        for p in 1..i {
            let times = self.delta(i, p, k)?;
            acc = self.f_iterated(p, times, acc)?;
        }
        let v = (k - 1).checked_add(acc).ok_or(Error::Overflow("f_i(k)"))?;
        self.memo_f.lock().unwrap().insert((i, k), v);
        Ok(v)
    }

    /// `f_i` applied `times` times to `start`.
    pub fn f_iterated(&self, i: u32, times: u64, start: u64) -> Result<u64> {
        if i == 1 {
            return self.base.apply_iterated(times, start);
        }
        let mut v = start;
        for _ in 0..times {
            v = self.f(i, v)?;
        }
        Ok(v)
    }

    /// Composition `(f_{i_1} o f_{i_2} o ... o f_{i_p})(k)`; `degrees[0]`
    /// is the outermost function.
    pub fn compose_f(&self, degrees: &[u32], k: u64) -> Result<u64> {
        let mut v = k;
        for &i in degrees.iter().rev() {
            v = self.f(i, v)?;
        }
        Ok(v)
    }

    /// The block-size sequence of degree-n null sequences: `k_1 = 1` and
    /// `k_j = (f_{n-1}^[delta(n,n-1,j)] o ... o f_1^[delta(n,1,j)])(2)`
    /// for `j >= 2`.
    pub fn k_seq(&self, n: u32, j: u64) -> Result<u64> {
        if n < 2 || j < 1 {
            return Err(Error::InvalidArgument(format!(
                "k_seq requires n >= 2 and j >= 1, got n={n}, j={j}"
            )));
        }
        if j == 1 {
            return Ok(1);
        }
        if let Some(&v) = self.memo_kseq.lock().unwrap().get(&(n, j)) {
            return Ok(v);
        }
        let mut acc: u64 = 2;
        for p in 1..n {
            let times = self.delta(n, p, j)?;
            acc = self.f_iterated(p, times, acc)?;
        }
        self.memo_kseq.lock().unwrap().insert((n, j), acc);
        Ok(acc)
    }
}

/// Checked binomial coefficient in u64.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(u128::from(n - i))?;
        acc /= u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    u64::try_from(acc).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force count of tuples in N_0^(k-1) with the given sum,
    /// independent of the binomial formula.
    fn count_weak_compositions(sum: u32, parts: u32) -> u64 {
        if parts == 0 {
            return u64::from(sum == 0);
        }
        (0..=sum)
            .map(|first| count_weak_compositions(sum - first, parts - 1))
            .sum()
    }

    #[test]
    fn delta_matches_enumeration() {
        let t = BoundTable::new();
        for n in 2..=6u32 {
            for j in 1..n {
                for k in 2..=6u64 {
                    let expect = count_weak_compositions(n - j, k as u32 - 1);
                    assert_eq!(t.delta(n, j, k).unwrap(), expect, "delta({n},{j},{k})");
                }
            }
        }
    }

    #[test]
    fn delta_examples() {
        let t = BoundTable::new();
        assert_eq!(t.delta(2, 1, 3).unwrap(), 2);
        assert_eq!(t.delta(3, 1, 3).unwrap(), 3);
        for n in 2..=6u32 {
            for j in 1..n {
                assert_eq!(t.delta(n, j, 2).unwrap(), 1);
            }
        }
    }

    #[test]
    fn delta_strictly_increasing_in_k() {
        let t = BoundTable::new();
        for n in 2..=6u32 {
            for j in 1..n {
                for k in 3..=8u64 {
                    assert!(t.delta(n, j, k).unwrap() > t.delta(n, j, k - 1).unwrap());
                }
            }
        }
    }

    #[test]
    fn delta_domain_errors() {
        let t = BoundTable::new();
        assert!(t.delta(2, 0, 3).is_err());
        assert!(t.delta(2, 2, 3).is_err());
        assert!(t.delta(2, 1, 1).is_err());
        assert!(t.delta(1, 1, 3).is_err());
    }

    #[test]
    fn f_base_and_remark_values() {
        let t = BoundTable::new();
        for k in 1..=12u64 {
            assert_eq!(t.f(1, k).unwrap(), k + 1);
            assert_eq!(t.f(2, k).unwrap(), 2 * k, "f_2({k})");
        }
        for i in 2..=5u32 {
            assert_eq!(t.f(i, 1).unwrap(), 2);
        }
        assert_eq!(t.f(3, 2).unwrap(), 7); // 1 + f_2(f_1(2)) = 1 + f_2(3)
        assert_eq!(t.f(3, 3).unwrap(), 22); // 2 + f_2(f_2(f_1^3(2)))
        assert_eq!(t.f(4, 2).unwrap(), 550); // 1 + f_3(f_2(f_1(2))) = 1 + f_3(6)
    }

    #[test]
    fn f_monotone_and_above_diagonal() {
        let t = BoundTable::new();
        for i in 1..=3u32 {
            for k in 1..=6u64 {
                assert!(t.f(i, k).unwrap() > k);
                assert!(t.f(i, k + 1).unwrap() > t.f(i, k).unwrap());
            }
        }
    }

    #[test]
    fn f_iterate_monotone_in_count() {
        let t = BoundTable::new();
        for i in 1..=2u32 {
            for k in 1..=4u64 {
                let mut prev = t.f_iterated(i, 1, k).unwrap();
                for m in 2..=4u64 {
                    let cur = t.f_iterated(i, m, k).unwrap();
                    assert!(cur > prev, "f_{i}^[{m}]({k})");
                    prev = cur;
                }
            }
        }
        // f_3 iterates overflow u64 after three applications already;
        // check what fits.
        let mut prev = t.f_iterated(3, 1, 1).unwrap();
        for m in 2..=3u64 {
            let cur = t.f_iterated(3, m, 1).unwrap();
            assert!(cur > prev);
            prev = cur;
        }
    }

    #[test]
    fn f_overflow_is_reported() {
        let t = BoundTable::new();
        assert!(matches!(t.f(4, 3), Err(Error::Overflow(_))));
    }

    #[test]
    fn k_seq_values() {
        let t = BoundTable::new();
        assert_eq!(t.k_seq(2, 1).unwrap(), 1);
        assert_eq!(t.k_seq(2, 2).unwrap(), 3); // f_1(2)
        assert_eq!(t.k_seq(2, 5).unwrap(), 6); // f_1^4(2)
        // j = 2 is the plain composition f_{n-1} o ... o f_1 at 2.
        assert_eq!(t.k_seq(3, 2).unwrap(), t.compose_f(&[2, 1], 2).unwrap());
        assert_eq!(t.k_seq(4, 2).unwrap(), t.compose_f(&[3, 2, 1], 2).unwrap());
    }

    #[test]
    fn compose_orders_outermost_first() {
        let t = BoundTable::new();
        // f_2(f_1(2)) = f_2(3) = 6 vs f_1(f_2(2)) = f_1(4) = 5.
        assert_eq!(t.compose_f(&[2, 1], 2).unwrap(), 6);
        assert_eq!(t.compose_f(&[1, 2], 2).unwrap(), 5);
        assert_eq!(t.compose_f(&[], 7).unwrap(), 7);
    }

    #[test]
    fn custom_base_must_fix_one() {
        assert!(BoundTable::with_base(BaseRule::Custom(Arc::new(|k| Some(k + 2)))).is_err());
        let t = BoundTable::with_base(BaseRule::Custom(Arc::new(|k| k.checked_add(1)))).unwrap();
        assert_eq!(t.f(2, 5).unwrap(), 10);
    }
}
