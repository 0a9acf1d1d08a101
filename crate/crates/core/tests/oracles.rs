//! Cross-checks against independent computations.

use std::collections::BTreeSet;

use fqg_core::classdims::{enumerate_multisets, proof_walk};
use fqg_core::models::{kac_paljutkin, sekine, sekine_d, sekine_e};
use fqg_core::rmatrix::intertwiner_nullity;
use fqg_core::{CycNum, HopfData};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Faithful matrix representation of a block algebra as block-diagonal
/// matrices of size `Σ n_b`.
fn block_rep(h: &HopfData) -> Vec<DMatrix<Complex64>> {
    let blocks = h.signature().block_sizes().expect("block algebra").to_vec();
    let n: usize = blocks.iter().sum();
    let mut out = Vec::new();
    let mut offset = 0;
    for b in blocks {
        for r in 0..b {
            for c in 0..b {
                let mut m = DMatrix::zeros(n, n);
                m[(offset + r, offset + c)] = Complex64::new(1.0, 0.0);
                out.push(m);
            }
        }
        offset += b;
    }
    out
}

fn numeric_rank(m: &DMatrix<Complex64>) -> usize {
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|s| **s > top * 1e-9).count()
}

#[test]
fn kp_intertwiner_nullity_matches_numeric_rank() {
    let h = kac_paljutkin();
    let rep = block_rep(&h);
    let d = h.dim();
    let dd = |x: usize, flip: bool| {
        let mut m = DMatrix::<Complex64>::zeros(36, 36);
        for (l, c) in h.delta_table()[x].terms() {
            let (a, b) = if flip { (l[1], l[0]) } else { (l[0], l[1]) };
            m += rep[a].kronecker(&rep[b]) * c.embed_approx(64);
        }
        m
    };
    let deltas: Vec<_> = (0..d).map(|x| (dd(x, false), dd(x, true))).collect();
    let mut system = DMatrix::<Complex64>::zeros(d * 36 * 36, d * d);
    for u in 0..d {
        for v in 0..d {
            let e = rep[u].kronecker(&rep[v]);
            for (x, (dx, op)) in deltas.iter().enumerate() {
                let diff = &e * dx - op * &e;
                for (k, val) in diff.iter().enumerate() {
                    system[(x * 1296 + k, u * d + v)] = *val;
                }
            }
        }
    }
    assert_eq!(d * d - numeric_rank(&system), intertwiner_nullity(&h));
    assert_eq!(intertwiner_nullity(&h), 28);
}

#[test]
fn sekine_haar_matches_counting_formula() {
    for k in 2..=4 {
        let h = sekine(k).unwrap();
        let haar = h.solve_haar().unwrap();
        for i in 0..k as i64 {
            for j in 0..k as i64 {
                assert_eq!(haar.value(sekine_d(k, i, j)), &CycNum::frac(1, 2 * (k * k) as i64));
                let expected = if i == j { CycNum::frac(1, 2 * k as i64) } else { CycNum::zero() };
                assert_eq!(haar.value(sekine_e(k, i, j)), &expected);
            }
        }
        assert!(h.verify_haar(&haar).unwrap().all_pass());
    }
}

/// Ascending-part backtracking, independent of the library enumerator.
fn oracle(p: u64, q: u64, forbidden: &BTreeSet<u64>) -> BTreeSet<Vec<u64>> {
    fn go(parts: &[u64], start: usize, left: u64, acc: &mut Vec<u64>, out: &mut BTreeSet<Vec<u64>>) {
        if left == 0 {
            let mut v = acc.clone();
            v.reverse();
            v.insert(0, 1);
            out.insert(v);
            return;
        }
        for i in start..parts.len() {
            if parts[i] <= left {
                acc.push(parts[i]);
                go(parts, i, left - parts[i], acc, out);
                acc.pop();
            }
        }
    }
    let n = 2 * p * q;
    let parts: Vec<u64> = (1..n).filter(|d| n.is_multiple_of(*d) && !forbidden.contains(d)).collect();
    let mut out = BTreeSet::new();
    go(&parts, 0, n - 1, &mut Vec::new(), &mut out);
    out
}

#[test]
fn enumeration_complete_for_seven_three() {
    for forbidden in [BTreeSet::new(), BTreeSet::from([1, 3, 7]), BTreeSet::from([2])] {
        let got: BTreeSet<Vec<u64>> = enumerate_multisets(7, 3, &forbidden).unwrap().into_iter().map(|m| m.dims).collect();
        assert_eq!(got, oracle(7, 3, &forbidden), "forbidden {forbidden:?}");
    }
}

#[test]
fn walk_tallies_cover_every_multiset() {
    let w = proof_walk(7, 3).unwrap();
    assert_eq!(w.multisets, oracle(7, 3, &BTreeSet::new()).len());
    assert_eq!(w.tallies.values().sum::<usize>(), w.multisets);
    assert_eq!(w.final_value, 0);
    let w = proof_walk(17, 3).unwrap();
    assert_eq!(w.final_value, 10);
    assert!(w.final_cases.iter().all(|f| f.remaining_sum == 10 && !f.divides_dimension));
}
