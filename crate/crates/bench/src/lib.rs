//! Fixtures shared by the benchmarks.

use fqg_core::CycNum;

/// Deterministic mixed-conductor operands: `(k + 1)/(k + 2) · ζ_n^k` for
/// conductors 8, 12 and 15.
pub fn cyclotomic_operands(count: usize) -> Vec<CycNum> {
    (0..count)
        .map(|k| {
            let n = [8, 12, 15][k % 3];
            let z = CycNum::root_of_unity(n, k as i64).expect("positive order");
            &z * &CycNum::frac(k as i64 + 1, k as i64 + 2) + CycNum::from_int(k as i64 % 3)
        })
        .collect()
}
