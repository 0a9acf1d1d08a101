//! Universal R-matrices: verification, the Kac–Paljutkin solver and the
//! minimal sub-Hopf algebra generated by the slices of `R`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{FqgError, Result};
use crate::exact::CycNum;
use crate::hopf::{AlgElement, Functional, HopfData, Legs, TensorElem};
use crate::linalg::{Echelon, LinearSolution, SparseRow, Subspace};
use crate::poly::{solve_system, Mono, Poly, SolveStats};

pub const DEFAULT_CANDIDATE_BOUND: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    AnsatzSolved,
    UserSupplied,
    ClosedForm { case: u8, choice: usize, reading: FamilyReading },
}

/// How the fourth family's `λ` is read: as printed (`λ² = √−1`) or with the
/// sign that the hexagon identities require (`λ² = −√−1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyReading {
    Literal,
    Corrected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RCandidate {
    pub tensor: TensorElem,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    fn from_witness(witness: Option<String>) -> Self {
        Check { passed: witness.is_none(), witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalReport {
    pub dim: usize,
    pub minimal: bool,
    pub delta_closed: bool,
    pub antipode_closed: bool,
    #[serde(skip)]
    pub subspace: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RReport {
    pub invertible: Check,
    pub intertwines: Check,
    pub hexagon1: Check,
    pub hexagon2: Check,
    pub counit_normalized: Check,
    pub unitary: Check,
    pub yang_baxter: Check,
    pub minimal: MinimalReport,
    #[serde(skip)]
    pub inverse: Option<TensorElem>,
}

impl RReport {
    pub fn quasitriangular(&self) -> bool {
        self.invertible.passed && self.intertwines.passed && self.hexagon1.passed && self.hexagon2.passed
    }

    pub fn all_pass(&self) -> bool {
        self.quasitriangular() && self.counit_normalized.passed && self.unitary.passed && self.yang_baxter.passed
    }
}

fn check_arity(h: &HopfData, r: &TensorElem) -> Result<()> {
    if r.signature() != h.signature() {
        return Err(FqgError::SignatureMismatch);
    }
    if r.arity() != 2 {
        return Err(FqgError::ArityMismatch { expected: 2, got: r.arity() });
    }
    Ok(())
}

fn differ(lhs: &TensorElem, rhs: &TensorElem, labels: &[String], what: impl FnOnce() -> String) -> Result<Option<String>> {
    let diff = lhs.sub(rhs)?;
    Ok((!diff.is_zero()).then(|| format!("{}: difference {}", what(), diff.format(labels))))
}

/// Solve `R·X = 1⊗1`, then confirm `X·R = 1⊗1`.
pub fn tensor_inverse(h: &HopfData, r: &TensorElem) -> Result<Option<TensorElem>> {
    check_arity(h, r)?;
    let sig = h.signature();
    let d = h.dim();
    let n = d * d;
    let mut rows: BTreeMap<(usize, usize), SparseRow> = BTreeMap::new();
    for (l, c) in r.terms() {
        for u in 0..d {
            let Some(p) = sig.basis_mul(l[0], u) else { continue };
            for v in 0..d {
                let Some(q) = sig.basis_mul(l[1], v) else { continue };
                let e = rows.entry((p, q)).or_default().entry(u * d + v).or_insert_with(CycNum::zero);
                *e += c;
            }
        }
    }
    let one = TensorElem::unit(sig, 2);
    for (l, c) in one.terms() {
        rows.entry((l[0], l[1])).or_default().insert(n, c.clone());
    }
    let mut e = Echelon::new(n + 1);
    for (_, mut row) in rows {
        row.retain(|_, v| !v.is_zero());
        e.insert(row);
    }
    let LinearSolution::Solutions { particular, .. } = e.solve_augmented() else { return Ok(None) };
    let mut x = TensorElem::zero(sig, 2);
    for (idx, c) in particular.iter().enumerate() {
        if !c.is_zero() {
            x.add_term(&[idx / d, idx % d], c);
        }
    }
    Ok((x.mul(r)? == one).then_some(x))
}

/// `R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂`.
pub fn yang_baxter(h: &HopfData, r: &TensorElem) -> Result<Option<String>> {
    check_arity(h, r)?;
    let (r12, r13, r23) = (r.leg_embed(Legs::L12)?, r.leg_embed(Legs::L13)?, r.leg_embed(Legs::L23)?);
    let lhs = r12.mul(&r13)?.mul(&r23)?;
    let rhs = r23.mul(&r13)?.mul(&r12)?;
    differ(&lhs, &rhs, h.labels(), || "R12 R13 R23 ≠ R23 R13 R12".into())
}

pub fn verify_rmatrix(h: &HopfData, r: &TensorElem) -> Result<RReport> {
    check_arity(h, r)?;
    let labels = h.labels();
    let sig = h.signature();
    let one = TensorElem::unit(sig, 2);
    let inverse = tensor_inverse(h, r)?;
    let invertible = Check::from_witness(inverse.is_none().then(|| "R·X = 1⊗1 has no two-sided solution".to_string()));

    let bad = (0..h.dim()).into_par_iter().find_map_first(|x| {
        let dx = &h.delta_table()[x];
        let lhs = r.mul(dx).expect("arity two");
        let rhs = dx.flip().expect("arity two").mul(r).expect("arity two");
        differ(&lhs, &rhs, labels, || format!("RΔ({0}) ≠ Δop({0})R", labels[x])).expect("same signature")
    });
    let intertwines = Check::from_witness(bad);

    let (r12, r13, r23) = (r.leg_embed(Legs::L12)?, r.leg_embed(Legs::L13)?, r.leg_embed(Legs::L23)?);
    let hexagon1 = Check::from_witness(differ(&h.delta_left(r), &r13.mul(&r23)?, labels, || "(Δ⊗id)R ≠ R13 R23".into())?);
    let hexagon2 = Check::from_witness(differ(&h.delta_right(r), &r13.mul(&r12)?, labels, || "(id⊗Δ)R ≠ R13 R12".into())?);

    let eps = h.counit_functional();
    let mut counit_witness = None;
    for (side, slice) in [("(ε⊗id)R", r.slice_left(&eps)), ("(id⊗ε)R", r.slice_right(&eps))] {
        if slice != *h.unit() && counit_witness.is_none() {
            counit_witness = Some(format!("{side} = {}", slice.format(labels)));
        }
    }
    let counit_normalized = Check::from_witness(counit_witness);
    let unitary = Check::from_witness(differ(&r.mul(&r.star())?, &one, labels, || "R R* ≠ 1⊗1".into())?);
    let yang_baxter = Check::from_witness(yang_baxter(h, r)?);
    let minimal = minimal_subalgebra(h, r)?;
    Ok(RReport { invertible, intertwines, hexagon1, hexagon2, counit_normalized, unitary, yang_baxter, minimal, inverse })
}

fn tensor_in_square(s: &Subspace, t: &TensorElem) -> Result<bool> {
    let d = s.ambient();
    let mut rows: BTreeMap<usize, Vec<CycNum>> = BTreeMap::new();
    let mut cols: BTreeMap<usize, Vec<CycNum>> = BTreeMap::new();
    for (l, c) in t.terms() {
        rows.entry(l[0]).or_insert_with(|| vec![CycNum::zero(); d])[l[1]] += c;
        cols.entry(l[1]).or_insert_with(|| vec![CycNum::zero(); d])[l[0]] += c;
    }
    for v in rows.values().chain(cols.values()) {
        if !s.member(v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Algebra generated by `1` and all one-leg slices of `R`, with its
/// stability under `Δ` and `S` checked afterwards.
pub fn minimal_subalgebra(h: &HopfData, r: &TensorElem) -> Result<MinimalReport> {
    check_arity(h, r)?;
    let d = h.dim();
    let sig = h.signature();
    let mut e = Echelon::new(d);
    e.insert_dense(h.unit().coords());
    for k in 0..d {
        let dual = Functional::from_terms(sig, &[(k, CycNum::one())]);
        e.insert_dense(r.slice_right(&dual).coords());
        e.insert_dense(r.slice_left(&dual).coords());
    }
    loop {
        let basis: Vec<AlgElement> = Subspace::from_echelon(&e)
            .basis()
            .iter()
            .map(|v| AlgElement::from_coords(sig, v.clone()))
            .collect::<Result<_>>()?;
        let before = e.rank();
        for x in &basis {
            for y in &basis {
                e.insert_dense(x.mul(y)?.coords());
            }
        }
        if e.rank() == before {
            break;
        }
    }
    let subspace = Subspace::from_echelon(&e);
    let mut delta_closed = true;
    let mut antipode_closed = true;
    for v in subspace.basis() {
        let x = AlgElement::from_coords(sig, v.clone())?;
        delta_closed &= tensor_in_square(&subspace, &h.delta_of(&x)?)?;
        antipode_closed &= subspace.member(h.antipode_of(&x)?.coords())?;
    }
    Ok(MinimalReport { dim: subspace.dim(), minimal: subspace.dim() == d, delta_closed, antipode_closed, subspace })
}

/// Homogeneous rows of `RΔ(x) = Δop(x)R` in the `d²` coefficients of `R`
/// (unknown `(u, v)` at index `u·d + v`).
pub fn intertwiner_rows(h: &HopfData) -> Vec<SparseRow> {
    let sig = h.signature();
    let d = h.dim();
    let mut rows: BTreeMap<(usize, usize, usize), SparseRow> = BTreeMap::new();
    for x in 0..d {
        let dx = &h.delta_table()[x];
        let op = dx.flip().expect("arity two");
        for u in 0..d {
            for v in 0..d {
                let e_uv = TensorElem::from_terms(sig, 2, &[(vec![u, v], CycNum::one())]);
                let diff = e_uv.mul(dx).expect("arity").sub(&op.mul(&e_uv).expect("arity")).expect("arity");
                for (l, c) in diff.terms() {
                    let e = rows.entry((x, l[0], l[1])).or_default().entry(u * d + v).or_insert_with(CycNum::zero);
                    *e += c;
                }
            }
        }
    }
    rows.into_values()
        .map(|mut r| {
            r.retain(|_, v| !v.is_zero());
            r
        })
        .filter(|r| !r.is_empty())
        .collect()
}

/// Dimension of the solution space of the homogeneous intertwiner system.
pub fn intertwiner_nullity(h: &HopfData) -> usize {
    let d = h.dim();
    let mut e = Echelon::new(d * d);
    for row in intertwiner_rows(h) {
        e.insert(row);
    }
    d * d - e.rank()
}

#[derive(Clone, Debug)]
pub struct RSolveReport {
    pub candidates: Vec<RCandidate>,
    pub reports: Vec<RReport>,
    pub intertwiner_nullity: usize,
    pub affine_parameters: usize,
    pub quadratic_equations: usize,
    pub stats: SolveStats,
    pub rejected: usize,
    /// `A_ij` block when it is the same for every solution.
    pub a_matrix: Option<Vec<Vec<CycNum>>>,
}

pub const KP_A_MATRIX: [[i64; 4]; 4] = [[1, 1, 1, 1], [1, -1, -1, 1], [1, -1, -1, 1], [1, 1, 1, 1]];

fn kp_check(h: &HopfData) -> Result<()> {
    if h.signature().block_sizes() != Some(&[1, 1, 1, 1, 2][..]) {
        return Err(FqgError::Unsupported("the R-matrix solver handles the block structure C⁴ ⊕ M₂ only".into()));
    }
    Ok(())
}

fn add_cubic_part(polys: &mut BTreeMap<[usize; 3], Poly>, t: &TensorElem, m: Mono, scale: &CycNum) {
    for (l, c) in t.terms() {
        polys.entry(l).or_default().add_term(m, &(c * scale));
    }
}

/// Solve for every universal R-matrix of the Kac–Paljutkin algebra: an exact
/// linear stage (intertwining and counit normalization), then the hexagon
/// identities as quadratic equations in the remaining parameters.
pub fn solve_kp_rmatrices(h: &HopfData, bound: usize) -> Result<RSolveReport> {
    kp_check(h)?;
    let sig = h.signature();
    let d = h.dim();
    let n = d * d;
    let mut e = Echelon::new(n + 1);
    for row in intertwiner_rows(h) {
        e.insert(row);
    }
    let homogeneous_rank = e.rank();
    let unit = h.unit();
    let eps = h.counit_table();
    for w in 0..d {
        // (ε⊗id)R = 1 and (id⊗ε)R = 1, coefficient of basis w
        let mut left = SparseRow::new();
        let mut right = SparseRow::new();
        for u in 0..d {
            if !eps[u].is_zero() {
                left.insert(u * d + w, eps[u].clone());
                right.insert(w * d + u, eps[u].clone());
            }
        }
        for mut row in [left, right] {
            let rhs = unit.coord(w);
            if !rhs.is_zero() {
                row.insert(n, rhs.clone());
            }
            e.insert(row);
        }
    }
    let LinearSolution::Solutions { particular, nullspace } = e.solve_augmented() else {
        return Err(FqgError::Structural("linear stage is inconsistent".into()));
    };
    let to_tensor = |v: &[CycNum]| {
        let mut t = TensorElem::zero(sig, 2);
        for (idx, c) in v.iter().enumerate() {
            if !c.is_zero() {
                t.add_term(&[idx / d, idx % d], c);
            }
        }
        t
    };
    let p = to_tensor(&particular);
    let ns: Vec<TensorElem> = nullspace.iter().map(|v| to_tensor(v)).collect();
    let m = ns.len();

    let one = CycNum::one();
    let minus = -&one;
    let mut polys: BTreeMap<[usize; 3], Poly> = BTreeMap::new();
    let embed = |t: &TensorElem, legs| t.leg_embed(legs).expect("arity two");
    // hexagon 1: (Δ⊗id)R − R13 R23; hexagon 2: (id⊗Δ)R − R13 R12
    for (hex, other) in [(0usize, Legs::L23), (1, Legs::L12)] {
        let lin = |t: &TensorElem| if hex == 0 { h.delta_left(t) } else { h.delta_right(t) };
        let mut eqs: BTreeMap<[usize; 3], Poly> = BTreeMap::new();
        let p13 = embed(&p, Legs::L13);
        let po = embed(&p, other);
        add_cubic_part(&mut eqs, &lin(&p), Mono::ONE, &one);
        add_cubic_part(&mut eqs, &p13.mul(&po)?, Mono::ONE, &minus);
        let n13: Vec<TensorElem> = ns.iter().map(|t| embed(t, Legs::L13)).collect();
        let no: Vec<TensorElem> = ns.iter().map(|t| embed(t, other)).collect();
        for k in 0..m {
            let mk = Mono::var(k as u16);
            add_cubic_part(&mut eqs, &lin(&ns[k]), mk, &one);
            add_cubic_part(&mut eqs, &n13[k].mul(&po)?, mk, &minus);
            add_cubic_part(&mut eqs, &p13.mul(&no[k])?, mk, &minus);
        }
        let products: Vec<(usize, usize, TensorElem)> = (0..m)
            .flat_map(|k| (0..m).map(move |l| (k, l)))
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(k, l)| Ok((k, l, n13[k].mul(&no[l])?)))
            .collect::<Result<_>>()?;
        for (k, l, t) in products {
            add_cubic_part(&mut eqs, &t, Mono::product(k as u16, l as u16), &minus);
        }
        for (key, poly) in eqs {
            let tagged = [hex * d * d * d + key[0], key[1], key[2]];
            polys.insert(tagged, poly);
        }
    }
    let equations: Vec<Poly> = polys.into_values().filter(|p| !p.is_zero()).collect();
    let quadratic_equations = equations.len();
    let vars: Vec<u16> = (0..m as u16).collect();
    let (solutions, stats) = solve_system(&vars, equations, bound)?;

    let tensors: Vec<TensorElem> = solutions
        .iter()
        .map(|s| {
            let mut r = p.clone();
            for (k, t) in ns.iter().enumerate() {
                r.add_scaled(t, &s[&(k as u16)]);
            }
            r
        })
        .collect();
    let verified = tensors
        .into_par_iter()
        .map(|r| verify_rmatrix(h, &r).map(|rep| (r, rep)))
        .collect::<Result<Vec<_>>>()?;
    let total = verified.len();
    let mut survivors: Vec<(TensorElem, RReport)> =
        verified.into_iter().filter(|(_, rep)| rep.quasitriangular() && rep.counit_normalized.passed).collect();
    survivors.sort_by(|a, b| family_key(h, &a.0).partial_cmp(&family_key(h, &b.0)).expect("finite angles"));
    let a_blocks: Vec<Vec<Vec<CycNum>>> = survivors.iter().map(|(r, _)| a_block(h, r)).collect();
    let a_matrix = a_blocks.first().filter(|first| a_blocks.iter().all(|b| b == *first)).cloned();
    let rejected = total - survivors.len();
    let (candidates, reports) = survivors
        .into_iter()
        .map(|(tensor, rep)| (RCandidate { tensor, provenance: Provenance::AnsatzSolved }, rep))
        .unzip();
    Ok(RSolveReport {
        candidates,
        reports,
        intertwiner_nullity: n - homogeneous_rank,
        affine_parameters: m,
        quadratic_equations,
        stats,
        rejected,
        a_matrix,
    })
}

fn kp_index(h: &HopfData, label: &str) -> usize {
    h.index_of(label).expect("KP label")
}

fn a_block(h: &HopfData, r: &TensorElem) -> Vec<Vec<CycNum>> {
    let e: Vec<usize> = ["e1", "e2", "e3", "e4"].iter().map(|l| kp_index(h, l)).collect();
    e.iter().map(|&i| e.iter().map(|&j| r.get(&[i, j])).collect()).collect()
}

/// `(B, C, D)` coefficients in the reduced form: `B_i` on `e_i⊗a11`,
/// `C_i` on `a11⊗e_i`, `D = (D1111, D1122, D1212, D1221)`.
pub fn kp_coefficients(h: &HopfData, r: &TensorElem) -> ([CycNum; 4], [CycNum; 4], [CycNum; 4]) {
    let ix = |l: &str| kp_index(h, l);
    let e = ["e1", "e2", "e3", "e4"];
    let b = e.map(|l| r.get(&[ix(l), ix("a11")]));
    let c = e.map(|l| r.get(&[ix("a11"), ix(l)]));
    let dd = [
        r.get(&[ix("a11"), ix("a11")]),
        r.get(&[ix("a11"), ix("a22")]),
        r.get(&[ix("a12"), ix("a12")]),
        r.get(&[ix("a12"), ix("a21")]),
    ];
    (b, c, dd)
}

const CASE_SIGNS: [([i64; 4], [i64; 4]); 4] = [
    ([1, -1, -1, 1], [1, 1, 1, 1]),
    ([1, 1, 1, 1], [1, -1, -1, 1]),
    ([1, -1, 1, -1], [1, 1, -1, -1]),
    ([1, 1, -1, -1], [1, -1, 1, -1]),
];

/// Which of the four `(B, C)` patterns `R` has (1-based), if any.
pub fn kp_case(h: &HopfData, r: &TensorElem) -> Option<u8> {
    let (b, c, _) = kp_coefficients(h, r);
    let ints = |v: &[CycNum; 4]| v.iter().map(|x| x.to_q().and_then(|q| if q.is_one() { Some(1) } else if (-q).is_one() { Some(-1) } else { None })).collect::<Option<Vec<i64>>>();
    let (b, c) = (ints(&b)?, ints(&c)?);
    CASE_SIGNS.iter().position(|(bs, cs)| b == bs && c == cs).map(|i| i as u8 + 1)
}

fn family_key(h: &HopfData, r: &TensorElem) -> (u8, f64) {
    let (_, _, dd) = kp_coefficients(h, r);
    let angle = dd
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| {
            let z = x.embed_approx(60);
            z.im.atan2(z.re).rem_euclid(std::f64::consts::TAU)
        })
        .unwrap_or(0.0);
    (kp_case(h, r).unwrap_or(u8::MAX), angle)
}

/// R-matrix with the reduced-form coefficients and the fixed `A` block.
pub fn kp_rmatrix(h: &HopfData, b: &[CycNum; 4], c: &[CycNum; 4], dd: &[CycNum; 4]) -> Result<TensorElem> {
    kp_check(h)?;
    let ix = |l: &str| kp_index(h, l);
    let e = ["e1", "e2", "e3", "e4"];
    let mut r = TensorElem::zero(h.signature(), 2);
    for (i, row) in KP_A_MATRIX.iter().enumerate() {
        for (j, &a) in row.iter().enumerate() {
            r.add_term(&[ix(e[i]), ix(e[j])], &CycNum::from_int(a));
        }
    }
    for (i, l) in e.iter().enumerate() {
        let s = if i == 0 || i == 3 { CycNum::one() } else { -&CycNum::one() };
        r.add_term(&[ix(l), ix("a11")], &b[i]);
        r.add_term(&[ix(l), ix("a22")], &(&s * &b[i]));
        r.add_term(&[ix("a11"), ix(l)], &c[i]);
        r.add_term(&[ix("a22"), ix(l)], &(&s * &c[i]));
    }
    let [d1111, d1122, d1212, d1221] = dd;
    r.add_term(&[ix("a11"), ix("a11")], d1111);
    r.add_term(&[ix("a11"), ix("a22")], d1122);
    r.add_term(&[ix("a12"), ix("a12")], d1212);
    r.add_term(&[ix("a12"), ix("a21")], d1221);
    r.add_term(&[ix("a21"), ix("a12")], d1221);
    r.add_term(&[ix("a21"), ix("a21")], d1212);
    r.add_term(&[ix("a22"), ix("a11")], &-d1122);
    r.add_term(&[ix("a22"), ix("a22")], d1111);
    Ok(r)
}

/// The eight published families, two per case: signs `+1, −1` for the first
/// two cases and the two admissible `λ` for the last two.
pub fn kp_closed_form_rmatrices(h: &HopfData, reading: FamilyReading) -> Result<Vec<RCandidate>> {
    let int = CycNum::from_int;
    let z8 = |e: i64| CycNum::root_of_unity(8, e).expect("order 8");
    let i = CycNum::i();
    let mut out = Vec::new();
    for (case, (bs, cs)) in CASE_SIGNS.iter().enumerate() {
        let b = bs.map(int);
        let c = cs.map(int);
        let choices: Vec<[CycNum; 4]> = match case {
            0 => [1, -1].iter().map(|&s| [int(s), int(s), int(0), int(0)]).collect(),
            1 => [1, -1].iter().map(|&s| [int(s), int(-s), int(0), int(0)]).collect(),
            // λ² = √−1
            2 => [1, 5].iter().map(|&e| [int(0), int(0), z8(e), &(-&i) * &z8(e)]).collect(),
            _ => {
                let exps = match reading {
                    FamilyReading::Literal => [1, 5],
                    FamilyReading::Corrected => [3, 7],
                };
                exps.iter().map(|&e| [int(0), int(0), z8(e), &i * &z8(e)]).collect()
            }
        };
        for (choice, dd) in choices.iter().enumerate() {
            out.push(RCandidate {
                tensor: kp_rmatrix(h, &b, &c, dd)?,
                provenance: Provenance::ClosedForm { case: case as u8 + 1, choice, reading },
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{group_algebra, kac_paljutkin, FiniteGroupTable};

    #[test]
    fn trivial_r_on_cocommutative() {
        let h = group_algebra(&FiniteGroupTable::cyclic(2).unwrap()).unwrap();
        let r = TensorElem::unit(h.signature(), 2);
        let rep = verify_rmatrix(&h, &r).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
        assert_eq!(rep.minimal.dim, 1);
    }

    #[test]
    fn closed_form_families_and_literal_reading() {
        let h = kac_paljutkin();
        for cand in kp_closed_form_rmatrices(&h, FamilyReading::Corrected).unwrap() {
            let rep = verify_rmatrix(&h, &cand.tensor).unwrap();
            assert!(rep.all_pass(), "{:?} {rep:?}", cand.provenance);
            let Provenance::ClosedForm { case, .. } = cand.provenance else { unreachable!() };
            assert_eq!(kp_case(&h, &cand.tensor), Some(case));
            assert_eq!(rep.minimal.minimal, case >= 3);
            assert!(rep.minimal.delta_closed && rep.minimal.antipode_closed);
        }
        let literal = kp_closed_form_rmatrices(&h, FamilyReading::Literal).unwrap();
        let fourth: Vec<_> = literal.iter().filter(|c| matches!(c.provenance, Provenance::ClosedForm { case: 4, .. })).collect();
        for cand in fourth {
            let rep = verify_rmatrix(&h, &cand.tensor).unwrap();
            assert!(rep.intertwines.passed);
            assert!(!rep.hexagon1.passed && !rep.hexagon2.passed);
        }
        let doubled = kp_closed_form_rmatrices(&h, FamilyReading::Corrected).unwrap()[0].tensor.scale(&CycNum::from_int(2));
        assert!(!verify_rmatrix(&h, &doubled).unwrap().counit_normalized.passed);
    }

    #[test]
    fn solver_finds_eight() {
        let h = kac_paljutkin();
        let sol = solve_kp_rmatrices(&h, DEFAULT_CANDIDATE_BOUND).unwrap();
        assert_eq!(sol.intertwiner_nullity, 28);
        assert_eq!(sol.candidates.len(), 8, "{:?}", sol.stats);
        let families: Vec<TensorElem> =
            kp_closed_form_rmatrices(&h, FamilyReading::Corrected).unwrap().into_iter().map(|c| c.tensor).collect();
        let solved: Vec<TensorElem> = sol.candidates.iter().map(|c| c.tensor.clone()).collect();
        assert_eq!(solved, families);
        let expected: Vec<Vec<CycNum>> = KP_A_MATRIX.iter().map(|r| r.iter().map(|&a| CycNum::from_int(a)).collect()).collect();
        assert_eq!(sol.a_matrix, Some(expected));
        assert!(matches!(solve_kp_rmatrices(&h, 1), Err(FqgError::Resource(_))));
        let g = group_algebra(&FiniteGroupTable::cyclic(2).unwrap()).unwrap();
        assert!(matches!(solve_kp_rmatrices(&g, 10), Err(FqgError::Unsupported(_))));
    }
}
