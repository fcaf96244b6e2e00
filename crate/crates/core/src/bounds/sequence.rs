//! The two-variable maximisation over layer sequences `r_n = n + 1 - d_n`.
//!
//! A sequence is admissible when `r_n = n + 1` below its first index `n_0`
//! with `r_n <= n`, and `r` is non-increasing from `n_0` on. Its objective is
//! `sum_{n >= n_0} (r_{n-1} - r_n) * sum_{m > n} r_m`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest `N` accepted by [`exhaustive_max`].
pub const EXHAUSTIVE_LIMIT: u64 = 20;
/// Largest `N` accepted by [`DpTable::new`].
pub const DP_LIMIT: u64 = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SequenceProfile {
    r: Vec<u64>,
    n0: usize,
    total: u64,
}

fn triangular(n: u64) -> u64 {
    n * (n + 1) / 2
}

impl SequenceProfile {
    /// Validates `r` (trailing zeros are dropped).
    pub fn new(mut r: Vec<u64>) -> Result<Self> {
        while r.last() == Some(&0) {
            r.pop();
        }
        let n0 = (0..=r.len())
            .find(|&n| r.get(n).copied().unwrap_or(0) <= n as u64)
            .expect("index len always qualifies");
        if let Some(n) = (0..n0).find(|&n| r[n] != n as u64 + 1) {
            return Err(Error::InadmissibleSequence(format!(
                "r_{n} = {} exceeds {}",
                r[n],
                n + 1
            )));
        }
        for (n, &rn) in r.iter().enumerate().skip(n0 + 1) {
            if rn > r[n - 1] {
                return Err(Error::InadmissibleSequence(format!(
                    "r_{n} = {rn} exceeds r_{} = {}",
                    n - 1,
                    r[n - 1]
                )));
            }
        }
        let total = r.iter().sum();
        Ok(Self { r, n0, total })
    }

    /// From a trimmed layer sequence `d_n` (last entry a full layer).
    pub fn from_d_seq(d_seq: &[u64]) -> Result<Self> {
        let r = d_seq
            .iter()
            .enumerate()
            .map(|(n, &d)| {
                (n as u64 + 1).checked_sub(d).ok_or_else(|| {
                    Error::InadmissibleSequence(format!("d_{n} = {d} exceeds {}", n + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(r)
    }

    /// The trimmed layer sequence `d_n = n + 1 - r_n`, ending at the first
    /// full layer.
    pub fn to_d_seq(&self) -> Vec<u64> {
        (0..=self.r.len())
            .map(|n| n as u64 + 1 - self.at(n))
            .collect()
    }

    pub fn r(&self) -> &[u64] {
        &self.r
    }

    pub fn n0(&self) -> usize {
        self.n0
    }

    /// `N = sum r_n`, the colength.
    pub fn total(&self) -> u64 {
        self.total
    }

    fn at(&self, n: usize) -> u64 {
        self.r.get(n).copied().unwrap_or(0)
    }

    /// `sum_{n >= n_0} (r_{n-1} - r_n) * sum_{m > n} r_m`, term by term.
    pub fn objective(&self) -> i64 {
        if self.n0 == 0 {
            return 0;
        }
        let mut acc = 0i64;
        for n in self.n0..=self.r.len() {
            let jump = self.at(n - 1) as i64 - self.at(n) as i64;
            let suffix: u64 = self.r.iter().skip(n + 1).sum();
            acc += jump * suffix as i64;
        }
        acc
    }

    /// The same value after summation by parts:
    /// `n_0 * sum_{n > n_0} r_n - sum_{n >= n_0} r_n r_{n+1}`.
    pub fn abel_objective(&self) -> i64 {
        if self.n0 == 0 {
            return 0;
        }
        let tail: u64 = self.r.iter().skip(self.n0 + 1).sum();
        let products: u64 = (self.n0..self.r.len())
            .map(|n| self.at(n) * self.at(n + 1))
            .sum();
        self.n0 as i64 * tail as i64 - products as i64
    }

    /// The tail-of-ones sequence: `r_n = n + 1` below `n_0`, then ones.
    pub fn tail_ones(total: u64, n0: usize) -> Result<Self> {
        let base = triangular(n0 as u64);
        if n0 == 0 || total < base + 1 {
            return Err(Error::InvalidArgument(format!(
                "tail of ones needs n_0 >= 1 and N >= {}",
                base + 1
            )));
        }
        let mut r: Vec<u64> = (1..=n0 as u64).collect();
        r.extend(std::iter::repeat_n(1, (total - base) as usize));
        Self::new(r)
    }
}

/// Every admissible sequence with `sum r_n = total`.
pub fn all_profiles(total: u64) -> Vec<SequenceProfile> {
    let mut out = Vec::new();
    if total == 0 {
        out.push(SequenceProfile::new(Vec::new()).expect("empty sequence"));
        return out;
    }
    let mut n0 = 1u64;
    while triangular(n0) <= total {
        let prefix: Vec<u64> = (1..=n0).collect();
        let mut parts = Vec::new();
        partitions_bounded(total - triangular(n0), n0, &mut parts, &mut |tail| {
            let mut r = prefix.clone();
            r.extend_from_slice(tail);
            out.push(SequenceProfile::new(r).expect("admissible by construction"));
        });
        n0 += 1;
    }
    out
}

fn partitions_bounded(rem: u64, max_part: u64, cur: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
    if rem == 0 {
        f(cur);
        return;
    }
    for part in (1..=max_part.min(rem)).rev() {
        cur.push(part);
        partitions_bounded(rem - part, part, cur, f);
        cur.pop();
    }
}

/// Maximum of the objective by enumerating every admissible sequence.
pub fn exhaustive_max(total: u64) -> Result<i64> {
    if total > EXHAUSTIVE_LIMIT {
        return Err(Error::GuardExceeded {
            what: "exhaustive sequence maximisation",
            needed: total.to_string(),
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    Ok(all_profiles(total)
        .iter()
        .map(SequenceProfile::objective)
        .max()
        .expect("at least one profile"))
}

/// Dynamic programme over states `(previous r, remaining sum)`.
///
/// `best[prev][rem]` is the largest value obtainable from the tail of a
/// sequence whose last placed entry is `prev` with `rem` still to place; a
/// step placing `r' <= min(prev, rem)` earns `(prev - r') * (rem - r')`.
#[derive(Debug, Clone)]
pub struct DpTable {
    max_total: u64,
    max_prev: usize,
    best: Vec<Vec<i64>>,
    choice: Vec<Vec<u32>>,
}

const INFEASIBLE: i64 = i64::MIN;

impl DpTable {
    pub fn new(max_total: u64) -> Result<Self> {
        if max_total > DP_LIMIT {
            return Err(Error::GuardExceeded {
                what: "sequence dynamic programme",
                needed: max_total.to_string(),
                limit: DP_LIMIT,
            });
        }
        let mut max_prev = 1usize;
        while triangular(max_prev as u64 + 1) <= max_total {
            max_prev += 1;
        }
        let cols = max_total as usize + 1;
        let mut best = vec![vec![INFEASIBLE; cols]; max_prev + 1];
        let mut choice = vec![vec![0u32; cols]; max_prev + 1];
        for row in best.iter_mut() {
            row[0] = 0;
        }
        for rem in 1..cols {
            for prev in 1..=max_prev {
                let mut top = INFEASIBLE;
                let mut arg = 0;
                for next in 1..=prev.min(rem) {
                    let tail = best[next][rem - next];
                    if tail == INFEASIBLE {
                        continue;
                    }
                    let v = ((prev - next) * (rem - next)) as i64 + tail;
                    if v > top {
                        top = v;
                        arg = next as u32;
                    }
                }
                best[prev][rem] = top;
                choice[prev][rem] = arg;
            }
        }
        Ok(Self {
            max_total,
            max_prev,
            best,
            choice,
        })
    }

    fn check(&self, total: u64) -> Result<()> {
        if total > self.max_total {
            return Err(Error::InvalidArgument(format!(
                "table built for N <= {}, asked for {total}",
                self.max_total
            )));
        }
        Ok(())
    }

    /// Best value for the given `n_0`; `None` when `n_0` is infeasible.
    pub fn value_with_n0(&self, total: u64, n0: usize) -> Option<i64> {
        if n0 == 0 {
            return (total == 0).then_some(0);
        }
        let base = triangular(n0 as u64);
        if base > total || n0 > self.max_prev {
            return None;
        }
        let v = self.best[n0][(total - base) as usize];
        (v != INFEASIBLE).then_some(v)
    }

    pub fn max(&self, total: u64) -> Result<i64> {
        self.check(total)?;
        Ok((0..=self.max_prev)
            .filter_map(|n0| self.value_with_n0(total, n0))
            .max()
            .expect("n_0 = 1 is always feasible for N >= 1"))
    }

    /// A maximising sequence (smallest `n_0` among ties).
    pub fn argmax(&self, total: u64) -> Result<SequenceProfile> {
        let best = self.max(total)?;
        let n0 = (0..=self.max_prev)
            .find(|&n0| self.value_with_n0(total, n0) == Some(best))
            .expect("maximum is attained");
        let mut r: Vec<u64> = (1..=n0 as u64).collect();
        let mut prev = n0;
        let mut rem = (total - triangular(n0 as u64)) as usize;
        while rem > 0 {
            let next = self.choice[prev][rem] as usize;
            r.push(next as u64);
            rem -= next;
            prev = next;
        }
        SequenceProfile::new(r)
    }
}

pub fn dp_max(total: u64) -> Result<i64> {
    DpTable::new(total)?.max(total)
}

/// `(n_0 - 1) * (N - n_0(n_0+1)/2 - 1)`, the objective of the tail-of-ones
/// sequence.
pub fn tail_ones_value(total: u64, n0: usize) -> Result<i64> {
    let base = triangular(n0 as u64);
    // All-ones sequences, including the single `(1)`, score zero.
    if n0 == 1 && total >= 1 {
        return Ok(0);
    }
    if n0 == 0 || total < base + 1 {
        return Err(Error::InvalidArgument(format!(
            "n_0 = {n0} infeasible for N = {total}"
        )));
    }
    Ok((n0 as i64 - 1) * (total - base - 1) as i64)
}

/// Best `n_0` for the tail-of-ones family (smallest among ties).
pub fn tail_ones_max(total: u64) -> Result<(usize, i64)> {
    if total == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let mut best = (1usize, tail_ones_value(total, 1)?);
    let mut n0 = 2usize;
    while triangular(n0 as u64) < total {
        let v = tail_ones_value(total, n0)?;
        if v > best.1 {
            best = (n0, v);
        }
        n0 += 1;
    }
    Ok(best)
}

/// The closed form `(n_0 - 1)(N - binom(n_0, 2))` as printed for the
/// tail-of-ones value, kept for comparison with [`tail_ones_value`].
pub fn printed_tail_ones_value(total: u64, n0: usize) -> i64 {
    let n0 = n0 as i64;
    (n0 - 1) * (total as i64 - n0 * (n0 - 1) / 2)
}
