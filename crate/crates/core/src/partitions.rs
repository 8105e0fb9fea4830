//! Integer partitions and the combinatorial maps used to index minors.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{factorial_gamma, Rational};

/// Weakly decreasing positive parts; trailing zeros are dropped on input.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::schema("partition", format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// (d^n): n parts equal to d.
    pub fn rectangle(d: usize, n: usize) -> Self {
        if d == 0 {
            return Self::empty();
        }
        Partition(vec![d; n])
    }

    /// (1^n).
    pub fn column(n: usize) -> Self {
        Self::rectangle(1, n)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Part at 0-based position `i`; zero past the length.
    pub fn get(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn first(&self) -> usize {
        self.get(0)
    }

    /// Parts padded with zeros to length `n` (`n >= len`).
    pub fn padded(&self, n: usize) -> Vec<usize> {
        (0..n.max(self.len())).map(|i| self.get(i)).collect()
    }

    pub fn conjugate(&self) -> Partition {
        Partition((1..=self.first()).map(|j| self.0.iter().take_while(|&&p| p >= j).count()).collect())
    }

    /// λ ⊆ self.
    pub fn contains(&self, lambda: &Partition) -> bool {
        lambda.len() <= self.len() && (0..lambda.len()).all(|i| lambda.get(i) <= self.get(i))
    }

    /// Componentwise sum.
    pub fn plus(&self, other: &Partition) -> Partition {
        let n = self.len().max(other.len());
        Partition((0..n).map(|i| self.get(i) + other.get(i)).collect())
    }

    pub fn frequency(&self) -> FrequencyForm {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        FrequencyForm(m)
    }

    /// All partitions ν with ν ⊆ self, descending lexicographic order.
    pub fn subpartitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(bound: &[usize], i: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            let limit = bound.get(i).copied().unwrap_or(0).min(cap);
            if limit == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (0..=limit).rev() {
                if p == 0 {
                    out.push(Partition(cur.clone()));
                } else {
                    cur.push(p);
                    rec(bound, i + 1, p, cur, out);
                    cur.pop();
                }
            }
        }
        rec(&self.0, 0, usize::MAX, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", inner.join(","))
    }
}

pub fn conjugate(lambda: &Partition) -> Partition {
    lambda.conjugate()
}

/// True iff λ_j ≤ μ_j for all j.
pub fn contains(lambda: &Partition, mu: &Partition) -> bool {
    mu.contains(lambda)
}

/// (d − ν_N, …, d − ν_1), trailing zeros dropped.
pub fn rotated_complement(nu: &Partition, d: usize, n: usize) -> Result<Partition> {
    if nu.len() > n || nu.first() > d {
        return Err(Error::domain(format!("{nu} is not inside the rectangle ({d}^{n})")));
    }
    Partition::new((0..n).rev().map(|i| d - nu.get(i)).collect())
}

/// Strictly increasing t_1 < … < t_N (t_1 ≥ 1) to ν with ν_{N+1−j} = t_j − j.
pub fn sequence_to_partition(t: &[usize]) -> Result<Partition> {
    if t.first() == Some(&0) || t.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain(format!("{t:?} is not a strictly increasing positive sequence")));
    }
    Partition::new(t.iter().enumerate().rev().map(|(j, &tj)| tj - (j + 1)).collect())
}

/// Inverse of `sequence_to_partition` for sequences of length `n`.
pub fn partition_to_sequence(nu: &Partition, n: usize) -> Result<Vec<usize>> {
    if nu.len() > n {
        return Err(Error::domain(format!("{nu} has more than {n} parts")));
    }
    Ok((1..=n).map(|j| j + nu.get(n - j)).collect())
}

/// Multiplicities k ↦ n_k of a partition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FrequencyForm(BTreeMap<usize, usize>);

impl FrequencyForm {
    pub fn new(m: BTreeMap<usize, usize>) -> Self {
        FrequencyForm(m.into_iter().filter(|&(_, n)| n > 0).collect())
    }

    pub fn multiplicity(&self, k: usize) -> usize {
        self.0.get(&k).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().map(|(&k, &n)| (k, n))
    }

    pub fn weight(&self) -> usize {
        self.iter().map(|(k, n)| k * n).sum()
    }

    pub fn to_partition(&self) -> Partition {
        let mut parts: Vec<usize> = self.iter().flat_map(|(k, n)| std::iter::repeat_n(k, n)).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }
}

/// z_φ = ∏_k k^{n_k} n_k!.
pub fn centralizer_order(phi: &FrequencyForm) -> Rational {
    phi.iter().fold(Rational::one(), |acc, (k, n)| {
        acc * Rational::from_integer(BigInt::from(k).pow(n as u32)) * factorial_gamma(n as u64)
    })
}

/// (hook length, content) for each cell, row by row.
pub fn hooks_and_contents(lambda: &Partition) -> Vec<(usize, i64)> {
    let conj = lambda.conjugate();
    let mut out = Vec::with_capacity(lambda.weight());
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            let hook = row - j + conj.get(j) - i - 1;
            out.push((hook, j as i64 - i as i64));
        }
    }
    out
}

/// Partitions of n in descending lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(cap)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// All partitions of weight at most n, by weight then descending lex.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

/// Partitions with at most `rows` parts, each at most `cols`.
pub fn partitions_in_box(rows: usize, cols: usize) -> Vec<Partition> {
    Partition::rectangle(cols, rows).subpartitions()
}
