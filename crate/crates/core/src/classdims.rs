//! Conjugacy-class dimension bookkeeping for semisimple Hopf algebras of
//! dimension `2pq`: multisets of divisors of `2pq` that sum to `2pq` and
//! contain the unit class, and a replay of the case analysis used to force a
//! class of dimension `1`, `p` or `q`.
//!
//! Exploratory: the walk reports what each branch finds, including cases the
//! argument does not cover, and does not certify the conclusion.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{FqgError, Result};

/// Upper bound on enumerated multisets before giving up.
pub const MULTISET_LIMIT: usize = 5_000_000;

/// Class dimensions, unit class first, the rest in non-increasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ClassDimMultiset {
    pub dims: Vec<u64>,
}

impl ClassDimMultiset {
    pub fn non_unit(&self) -> &[u64] {
        &self.dims[1..]
    }

    pub fn total(&self) -> u64 {
        self.dims.iter().sum()
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn check_primes(p: u64, q: u64) -> Result<()> {
    for x in [p, q] {
        if x == 2 || !is_prime(x) {
            return Err(FqgError::Parameter(format!("{x} is not an odd prime")));
        }
    }
    if p == q {
        return Err(FqgError::Parameter("p and q must be distinct".into()));
    }
    Ok(())
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// All multisets `{1} ∪ M` with `M` drawn from the divisors of `2pq` outside
/// `forbidden` and `1 + ΣM = 2pq`, sorted.
pub fn enumerate_multisets(p: u64, q: u64, forbidden: &BTreeSet<u64>) -> Result<Vec<ClassDimMultiset>> {
    check_primes(p, q)?;
    let n = 2 * p * q;
    let mut parts: Vec<u64> = divisors(n).into_iter().filter(|d| *d < n && !forbidden.contains(d)).collect();
    parts.reverse();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(&parts, n - 1, &mut current, &mut out)?;
    out.sort();
    Ok(out)
}

fn fill(parts: &[u64], remaining: u64, current: &mut Vec<u64>, out: &mut Vec<ClassDimMultiset>) -> Result<()> {
    if remaining == 0 {
        if out.len() >= MULTISET_LIMIT {
            return Err(FqgError::Resource(format!("more than {MULTISET_LIMIT} multisets")));
        }
        let mut dims = vec![1];
        dims.extend_from_slice(current);
        out.push(ClassDimMultiset { dims });
        return Ok(());
    }
    let Some((&part, rest)) = parts.split_first() else { return Ok(()) };
    let base = current.len();
    for count in (0..=remaining / part).rev() {
        current.truncate(base);
        current.extend(std::iter::repeat_n(part, count as usize));
        fill(rest, remaining - count * part, current, out)?;
    }
    current.truncate(base);
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// A class with `p ∤ dim` has dimension 1 or q.
    FirstSmall,
    /// Every class with `p ∤ dim` that is not 2q has dimension 2, which the
    /// argument's case list (1, q, 2q) does not mention.
    FirstTwo,
    SecondSmall,
    SecondTwo,
    ThirdSmall,
    /// `dim C_{j0} = 2q`, `dim C_{j1} = 2p`, `dim C_{j2} = pq`.
    Final,
    /// No class with the required non-divisibility exists.
    NoWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinalCase {
    pub multiset: ClassDimMultiset,
    pub remaining_sum: u64,
    pub divides_dimension: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalkReport {
    pub p: u64,
    pub q: u64,
    pub k: u64,
    /// `5k(q − 2) − 5`.
    pub final_value: i64,
    pub multisets: usize,
    pub with_small_class: usize,
    pub tallies: BTreeMap<Branch, usize>,
    pub final_cases: Vec<FinalCase>,
    pub reconstructed_steps: Vec<&'static str>,
}

fn pick(dims: &[u64], used: &[usize], cond: impl Fn(u64) -> bool) -> Vec<usize> {
    (0..dims.len()).filter(|i| !used.contains(i) && cond(dims[*i])).collect()
}

fn walk_one(p: u64, q: u64, m: &ClassDimMultiset) -> (Branch, Option<FinalCase>) {
    let n = 2 * p * q;
    let dims = m.non_unit();
    let first = pick(dims, &[], |d| d % p != 0);
    if first.is_empty() {
        return (Branch::NoWitness, None);
    }
    if first.iter().any(|&i| dims[i] == 1 || dims[i] == q) {
        return (Branch::FirstSmall, None);
    }
    let Some(&j0) = first.iter().find(|&&i| dims[i] == 2 * q) else { return (Branch::FirstTwo, None) };
    let second = pick(dims, &[j0], |d| d % q != 0);
    if second.is_empty() {
        return (Branch::NoWitness, None);
    }
    if second.iter().any(|&i| dims[i] == 1 || dims[i] == p) {
        return (Branch::SecondSmall, None);
    }
    let Some(&j1) = second.iter().find(|&&i| dims[i] == 2 * p) else { return (Branch::SecondTwo, None) };
    let third = pick(dims, &[j0, j1], |d| d % 2 != 0);
    if third.is_empty() {
        return (Branch::NoWitness, None);
    }
    if third.iter().any(|&i| [1, p, q].contains(&dims[i])) {
        return (Branch::ThirdSmall, None);
    }
    let remaining_sum = n - 1 - 2 * q - 2 * p - p * q;
    let case = FinalCase { multiset: m.clone(), remaining_sum, divides_dimension: remaining_sum != 0 && n.is_multiple_of(remaining_sum) };
    (Branch::Final, Some(case))
}

/// Replay the case analysis on every multiset for `(p, q)` with
/// `p ≡ 2 (mod 5)` and `q ≠ 5`.
pub fn proof_walk(p: u64, q: u64) -> Result<WalkReport> {
    check_primes(p, q)?;
    if p % 5 != 2 {
        return Err(FqgError::Parameter(format!("p = {p} is not 2 mod 5")));
    }
    if q == 5 {
        return Err(FqgError::Parameter("q = 5 is excluded".into()));
    }
    let k = (p - 2) / 5;
    let multisets = enumerate_multisets(p, q, &BTreeSet::new())?;
    let mut tallies = BTreeMap::new();
    let mut final_cases = Vec::new();
    let mut with_small_class = 0;
    for m in &multisets {
        if m.non_unit().iter().any(|d| [1, p, q].contains(d)) {
            with_small_class += 1;
        }
        let (branch, fin) = walk_one(p, q, m);
        *tallies.entry(branch).or_insert(0) += 1;
        final_cases.extend(fin);
    }
    Ok(WalkReport {
        p,
        q,
        k,
        final_value: 5 * k as i64 * (q as i64 - 2) - 5,
        multisets: multisets.len(),
        with_small_class,
        tallies,
        final_cases,
        reconstructed_steps: vec!["existence of j1 from 1 + 2q + Σ_{j≠0,j0} dim C_j = 2pq"],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seven_three_forbidden_small() {
        let forbidden = BTreeSet::from([1, 7, 3]);
        let ms = enumerate_multisets(7, 3, &forbidden).unwrap();
        assert_eq!(ms.len(), 6);
        assert!(ms.iter().all(|m| m.total() == 42 && m.non_unit().iter().filter(|&&d| d == 21).count() == 1));
        assert!(ms.iter().any(|m| m.dims == [1, 21, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2]));
    }

    #[test]
    fn all_ones_and_parameter_errors() {
        let ms = enumerate_multisets(3, 5, &BTreeSet::new()).unwrap();
        assert!(ms.iter().any(|m| m.dims.iter().all(|&d| d == 1) && m.dims.len() == 30));
        let only_one: BTreeSet<u64> = divisors(30).into_iter().filter(|&d| d != 1).collect();
        let ms = enumerate_multisets(3, 5, &only_one).unwrap();
        assert_eq!(ms.len(), 1);
        assert!(enumerate_multisets(2, 3, &BTreeSet::new()).is_err());
        assert!(enumerate_multisets(9, 3, &BTreeSet::new()).is_err());
        assert!(matches!(proof_walk(7, 5), Err(FqgError::Parameter(_))));
        assert!(matches!(proof_walk(11, 3), Err(FqgError::Parameter(_))));
    }

    #[test]
    fn walk_values() {
        let w = proof_walk(7, 3).unwrap();
        assert_eq!((w.k, w.final_value), (1, 0));
        assert_eq!(w.tallies.values().sum::<usize>(), w.multisets);
        assert!(w.final_cases.iter().all(|f| f.remaining_sum == 0 && !f.divides_dimension));
        assert!(w.final_cases.iter().any(|f| f.multiset.dims == [1, 21, 14, 6]));
        let w = proof_walk(17, 3).unwrap();
        assert_eq!((w.k, w.final_value), (3, 10));
    }
}
