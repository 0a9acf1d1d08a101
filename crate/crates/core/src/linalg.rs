//! Exact linear algebra over [`CycNum`].

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::exact::CycNum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

fn check_len(expected: usize, got: usize) -> Result<(), LinalgError> {
    if expected == got {
        Ok(())
    } else {
        Err(LinalgError::Dimension { expected, got })
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CycNum>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![CycNum::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, CycNum::one());
        }
        m
    }

    /// Panics if rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        ExactMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycNum {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycNum) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[CycNum] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[CycNum]) -> Vec<CycNum> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = CycNum::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form (zero rows dropped) and pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut e = Echelon::new(self.cols);
        for r in 0..self.rows {
            e.insert_dense(self.row(r));
        }
        let rows = e.rref_rows();
        let pivots = rows.iter().map(|(p, _)| *p).collect();
        let mut m = ExactMatrix::zeros(rows.len(), self.cols);
        for (i, (_, row)) in rows.into_iter().enumerate() {
            for (c, v) in row {
                m.set(i, c, v);
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for r in 0..self.rows {
            e.insert_dense(self.row(r));
        }
        e.rank()
    }

    /// Basis of `{x : self · x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<CycNum>> {
        match solve_linear(self, &vec![CycNum::zero(); self.rows]) {
            LinearSolution::Solutions { nullspace, .. } => nullspace,
            LinearSolution::Inconsistent => unreachable!("homogeneous systems are consistent"),
        }
    }
}

pub type SparseRow = BTreeMap<usize, CycNum>;

pub fn to_sparse(v: &[CycNum]) -> SparseRow {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (c, x.clone())).collect()
}

/// Incremental row echelon form over sparse rows. Every stored row has a
/// leading coefficient of one.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseRow>,
    pivot_of: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivot_of: HashMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivot_of.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Reduce `row` against the stored rows.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut cursor = 0;
        loop {
            let next = row
                .range(cursor..)
                .find(|(c, _)| self.pivot_of.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((col, factor)) = next else { break };
            let prow = &self.rows[self.pivot_of[&col]];
            for (c, v) in prow {
                let t = &factor * v;
                let entry = row.entry(*c).or_insert_with(CycNum::zero);
                *entry -= &t;
                if entry.is_zero() {
                    row.remove(c);
                }
            }
            cursor = col + 1;
        }
        row
    }

    /// Insert a row; returns `true` when it was independent of the others.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let row = self.reduce(row);
        let Some((&lead, lv)) = row.iter().next() else {
            return false;
        };
        let inv = lv.inv().expect("nonzero leading entry");
        let row: SparseRow = row.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
        self.pivot_of.insert(lead, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn insert_dense(&mut self, row: &[CycNum]) -> bool {
        self.insert(to_sparse(row))
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Fully reduced rows, sorted by pivot column.
    pub fn rref_rows(&self) -> Vec<(usize, SparseRow)> {
        let pivots = self.pivots();
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for &p in pivots.iter().rev() {
            let mut row = self.rows[self.pivot_of[&p]].clone();
            let cols: Vec<usize> = row.keys().copied().filter(|c| *c > p && done.contains_key(c)).collect();
            for c in cols {
                let Some(f) = row.get(&c).cloned() else { continue };
                for (cc, v) in &done[&c] {
                    let t = &f * v;
                    let entry = row.entry(*cc).or_insert_with(CycNum::zero);
                    *entry -= &t;
                    if entry.is_zero() {
                        row.remove(cc);
                    }
                }
            }
            done.insert(p, row);
        }
        done.into_iter().collect()
    }

    /// Treat the last column as a right-hand side and solve.
    pub fn solve_augmented(&self) -> LinearSolution {
        let n = self.ncols - 1;
        if self.pivot_of.contains_key(&n) {
            return LinearSolution::Inconsistent;
        }
        let rows = self.rref_rows();
        let pivot_set: std::collections::HashSet<usize> = rows.iter().map(|(p, _)| *p).collect();
        let mut particular = vec![CycNum::zero(); n];
        for (p, row) in &rows {
            if let Some(v) = row.get(&n) {
                particular[*p] = v.clone();
            }
        }
        let mut nullspace = Vec::new();
        for f in (0..n).filter(|c| !pivot_set.contains(c)) {
            let mut v = vec![CycNum::zero(); n];
            v[f] = CycNum::one();
            for (p, row) in &rows {
                if let Some(c) = row.get(&f) {
                    v[*p] = -c;
                }
            }
            nullspace.push(v);
        }
        LinearSolution::Solutions { particular, nullspace }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Inconsistent,
    Solutions { particular: Vec<CycNum>, nullspace: Vec<Vec<CycNum>> },
}

impl LinearSolution {
    pub fn particular(&self) -> Option<&[CycNum]> {
        match self {
            LinearSolution::Solutions { particular, .. } => Some(particular),
            LinearSolution::Inconsistent => None,
        }
    }
}

pub fn solve_linear(a: &ExactMatrix, b: &[CycNum]) -> LinearSolution {
    assert_eq!(a.nrows(), b.len());
    let mut e = Echelon::new(a.ncols() + 1);
    for r in 0..a.nrows() {
        let mut row: SparseRow = a
            .row(r)
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c, v.clone()))
            .collect();
        if !b[r].is_zero() {
            row.insert(a.ncols(), b[r].clone());
        }
        e.insert(row);
    }
    e.solve_augmented()
}

/// Subspace of `K^n` held as its reduced row echelon basis, so equal
/// subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<CycNum>>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vec<CycNum>]) -> Result<Self, LinalgError> {
        let mut e = Echelon::new(ambient);
        for v in vectors {
            check_len(ambient, v.len())?;
            e.insert_dense(v);
        }
        Ok(Subspace::from_echelon(&e))
    }

    pub fn from_echelon(e: &Echelon) -> Self {
        let basis = e
            .rref_rows()
            .into_iter()
            .map(|(_, row)| {
                let mut v = vec![CycNum::zero(); e.ncols()];
                for (c, x) in row {
                    v[c] = x;
                }
                v
            })
            .collect();
        Subspace { ambient: e.ncols(), basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let id = ExactMatrix::identity(ambient);
        Subspace { ambient, basis: (0..ambient).map(|r| id.row(r).to_vec()).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<CycNum>] {
        &self.basis
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ambient);
        for v in &self.basis {
            e.insert_dense(v);
        }
        e
    }

    pub fn member(&self, v: &[CycNum]) -> Result<bool, LinalgError> {
        check_len(self.ambient, v.len())?;
        Ok(self.echelon().contains(to_sparse(v)))
    }

    /// Membership test for many vectors against one echelon basis.
    pub fn member_all<'a>(&self, vs: impl IntoIterator<Item = &'a [CycNum]>) -> Result<bool, LinalgError> {
        let e = self.echelon();
        for v in vs {
            check_len(self.ambient, v.len())?;
            if !e.contains(to_sparse(v)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool, LinalgError> {
        check_len(self.ambient, other.ambient)?;
        self.member_all(other.basis.iter().map(Vec::as_slice))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        check_len(self.ambient, other.ambient)?;
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &all)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        check_len(self.ambient, other.ambient)?;
        // Σ a_i u_i − Σ b_j w_j = 0; the kernel gives the common vectors
        let k = self.dim() + other.dim();
        if k == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        let mut m = ExactMatrix::zeros(self.ambient, k);
        for (i, u) in self.basis.iter().enumerate() {
            for (r, x) in u.iter().enumerate() {
                m.set(r, i, x.clone());
            }
        }
        for (j, w) in other.basis.iter().enumerate() {
            for (r, x) in w.iter().enumerate() {
                m.set(r, self.dim() + j, -x);
            }
        }
        let vecs: Vec<Vec<CycNum>> = m
            .nullspace()
            .into_iter()
            .map(|coef| {
                let mut v = vec![CycNum::zero(); self.ambient];
                for (i, u) in self.basis.iter().enumerate() {
                    if coef[i].is_zero() {
                        continue;
                    }
                    for (r, x) in u.iter().enumerate() {
                        if !x.is_zero() {
                            v[r] += &(&coef[i] * x);
                        }
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.ambient, &vecs)
    }

    /// Coordinates of `v` in the stored basis, if `v` is a member.
    pub fn coordinates(&self, v: &[CycNum]) -> Option<Vec<CycNum>> {
        if v.len() != self.ambient {
            return None;
        }
        let mut m = ExactMatrix::zeros(self.ambient, self.dim());
        for (i, u) in self.basis.iter().enumerate() {
            for (r, x) in u.iter().enumerate() {
                m.set(r, i, x.clone());
            }
        }
        solve_linear(&m, v).particular().map(<[CycNum]>::to_vec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Zero as _;
    use proptest::prelude::*;

    fn q(v: i64) -> CycNum {
        CycNum::from_int(v)
    }

    fn vecq(v: &[i64]) -> Vec<CycNum> {
        v.iter().map(|x| q(*x)).collect()
    }

    /// Fraction-free Bareiss elimination on an integer matrix.
    fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut prev = BigInt::from(1);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
            m.swap(rank, p);
            for r in rank + 1..rows {
                for cc in c + 1..cols {
                    let v = (&m[rank][c] * &m[r][cc] - &m[r][c] * &m[rank][cc]) / &prev;
                    m[r][cc] = v;
                }
                m[r][c] = BigInt::zero();
            }
            prev = m[rank][c].clone();
            rank += 1;
        }
        rank
    }

    #[test]
    fn rref_examples() {
        let id = ExactMatrix::identity(3);
        assert_eq!(id.rref().0, id);
        let m = ExactMatrix::from_rows(vec![vecq(&[1, 1]), vecq(&[2, 2])]);
        assert_eq!(m.rref().0, ExactMatrix::from_rows(vec![vecq(&[1, 1])]));
        let m = ExactMatrix::from_rows(vec![vecq(&[1, 2, 3]), vecq(&[2, 4, 6]), vecq(&[1, 0, 1])]);
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r.row(0), vecq(&[1, 0, 1]).as_slice());
        assert_eq!(r.row(1), vecq(&[0, 1, 1]).as_slice());
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(CycNum::is_zero));
    }

    #[test]
    fn solve_examples() {
        let m = ExactMatrix::from_rows(vec![vecq(&[1, 1]), vecq(&[1, -1])]);
        let s = solve_linear(&m, &vecq(&[2, 0]));
        assert_eq!(s.particular().unwrap(), vecq(&[1, 1]).as_slice());
        let m = ExactMatrix::from_rows(vec![vecq(&[1, 1]), vecq(&[2, 2])]);
        assert_eq!(solve_linear(&m, &vecq(&[1, 3])), LinearSolution::Inconsistent);
        let id = ExactMatrix::identity(3);
        let b = vecq(&[4, 5, 6]);
        match solve_linear(&id, &b) {
            LinearSolution::Solutions { particular, nullspace } => {
                assert_eq!(particular, b);
                assert!(nullspace.is_empty());
            }
            LinearSolution::Inconsistent => panic!("identity system is consistent"),
        }
        let zero = ExactMatrix::zeros(3, 3);
        match solve_linear(&zero, &vecq(&[0, 0, 0])) {
            LinearSolution::Solutions { particular, nullspace } => {
                assert!(particular.iter().all(CycNum::is_zero));
                assert_eq!(nullspace.len(), 3);
            }
            LinearSolution::Inconsistent => panic!("zero system is consistent"),
        }
    }

    #[test]
    fn complex_entries() {
        let i = CycNum::i();
        let m = ExactMatrix::from_rows(vec![vec![CycNum::one(), i.clone()], vec![i.clone(), q(-1)]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn subspace_operations() {
        let u = Subspace::span(3, &[vecq(&[1, 0, 0]), vecq(&[0, 1, 0])]).unwrap();
        let w = Subspace::span(3, &[vecq(&[0, 1, 0]), vecq(&[0, 0, 1])]).unwrap();
        assert_eq!(u.intersect(&w).unwrap(), Subspace::span(3, &[vecq(&[0, 2, 0])]).unwrap());
        assert_eq!(u.sum(&w).unwrap(), Subspace::full(3));
        assert!(u.member(&vecq(&[3, -1, 0])).unwrap());
        assert!(!u.member(&vecq(&[0, 0, 1])).unwrap());
        assert!(Subspace::full(3).contains(&u).unwrap());
        assert_eq!(u.coordinates(&vecq(&[3, -1, 0])).unwrap(), vecq(&[3, -1]));
        assert_eq!(Subspace::span(3, &[vecq(&[1, 0])]), Err(LinalgError::Dimension { expected: 3, got: 2 }));
        assert!(Subspace::zero(3).member(&vecq(&[0, 0, 0])).unwrap());
        assert_eq!(Subspace::span(3, &[]).unwrap().dim(), 0);
        let v = vecq(&[1, 2, 3]);
        let v2: Vec<CycNum> = v.iter().map(|x| x * &q(2)).collect();
        assert_eq!(Subspace::span(3, &[v, v2]).unwrap().dim(), 1);
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        // small entry range so that rank deficiency actually occurs
        proptest::collection::vec(proptest::collection::vec(-2i64..=2, cols), rows)
    }

    proptest! {
        #[test]
        fn rank_matches_bareiss(m in small_matrix(5, 8)) {
            let exact = ExactMatrix::from_rows(m.iter().map(|r| vecq(r)).collect());
            let ints = m.iter().map(|r| r.iter().map(|x| BigInt::from(*x)).collect()).collect();
            prop_assert_eq!(exact.rank(), bareiss_rank(ints));
        }

        #[test]
        fn rref_is_idempotent(m in small_matrix(4, 5)) {
            let exact = ExactMatrix::from_rows(m.iter().map(|r| vecq(r)).collect());
            let (r, _) = exact.rref();
            prop_assert_eq!(r.rref().0, r);
        }

        #[test]
        fn span_is_canonical(m in small_matrix(3, 4), scale in 1i64..5) {
            let vs: Vec<Vec<CycNum>> = m.iter().map(|r| vecq(r)).collect();
            let mut permuted: Vec<Vec<CycNum>> = vs.iter().rev()
                .map(|v| v.iter().map(|x| x * &q(scale)).collect()).collect();
            permuted.push(vec![q(0); 4]);
            prop_assert_eq!(Subspace::span(4, &vs).unwrap(), Subspace::span(4, &permuted).unwrap());
        }

        #[test]
        fn grassmann_identity(a in small_matrix(3, 5), b in small_matrix(3, 5)) {
            let u = Subspace::span(5, &a.iter().map(|r| vecq(r)).collect::<Vec<_>>()).unwrap();
            let w = Subspace::span(5, &b.iter().map(|r| vecq(r)).collect::<Vec<_>>()).unwrap();
            let s = u.sum(&w).unwrap();
            let i = u.intersect(&w).unwrap();
            prop_assert_eq!(u.dim() + w.dim(), s.dim() + i.dim());
            prop_assert!(u.contains(&i).unwrap() && w.contains(&i).unwrap());
            prop_assert_eq!(u.intersect(&u).unwrap(), u.clone());
            prop_assert_eq!(u.sum(&Subspace::zero(5)).unwrap(), u);
        }
    }
}
