//! Sparse monomial keys: exponent tuples with one entry per variable.

use serde::{Deserialize, Serialize};

/// Exponent tuple of a monomial; `exponents()[i]` is the power of
/// variable `i`. Ordering is lexicographic, which makes coefficient
/// maps deterministic to iterate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    /// The multi-index with `exponent` in one slot and zeros elsewhere.
    pub fn single(vars: usize, var: usize, exponent: u32) -> Self {
        let mut e = vec![0; vars];
        e[var] = exponent;
        Self(e)
    }

    pub fn zeros(vars: usize) -> Self {
        Self(vec![0; vars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Number of variables (slots), not the number of nonzero entries.
    pub fn vars(&self) -> usize {
        self.0.len()
    }

    /// Total degree: the sum of the exponents.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn bump(&self, var: usize) -> Self {
        let mut e = self.0.clone();
        e[var] += 1;
        Self(e)
    }

    /// All multi-indices on `vars` variables of the given total degree,
    /// in lexicographically decreasing order of the exponent tuple
    /// ((d,0,..), (d-1,1,0,..), ..., (0,..,0,d)). Count is
    /// `C(degree + vars - 1, vars - 1)`.
    pub fn all_of_degree(vars: usize, degree: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; vars];
        fill(&mut out, &mut cur, 0, degree);
        out
    }
}

fn fill(out: &mut Vec<MultiIndex>, cur: &mut Vec<u32>, pos: usize, remaining: u32) {
    if cur.is_empty() {
        if remaining == 0 {
            out.push(MultiIndex::new(vec![]));
        }
        return;
    }
    if pos == cur.len() - 1 {
        cur[pos] = remaining;
        out.push(MultiIndex::new(cur.clone()));
        cur[pos] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        cur[pos] = e;
        fill(out, cur, pos + 1, remaining - e);
        cur[pos] = 0;
    }
}

/// Exact multinomial coefficient `n! / (m_1! m_2! ... )` where the
/// `m_i` sum to `n`.
pub fn multinomial(m: &MultiIndex) -> u128 {
    let mut acc: u128 = 1;
    let mut seen: u128 = 0;
    for &e in m.exponents() {
        for i in 1..=u128::from(e) {
            seen += 1;
            acc = acc * seen / i;
        }
    }
    acc
}

/// Exact factorial in u128; panics beyond 34!.
pub fn factorial(n: u32) -> u128 {
    (1..=u128::from(n)).product::<u128>().max(1)
}
