//! The ten reproduction criteria, shared by the acceptance test target and
//! `fqg reproduce-paper`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::classdims::{divisors, enumerate_multisets, proof_walk};
use crate::coideal::{
    coideal_from_state, find_integral, is_idempotent_state, is_normal_coideal, state_from_projection, Coideal,
};
use crate::error::Result;
use crate::exact::CycNum;
use crate::hopf::{flip, AlgElement, Functional, HopfData};
use crate::models::{
    function_algebra, group_algebra, kac_paljutkin, kp_named_objects, sekine_e, sekine_named_objects as sekine_named, sekine_with_report, SekineReport,
    FiniteGroupTable,
};
use crate::rmatrix::{
    kp_case, kp_closed_form_rmatrices, solve_kp_rmatrices, verify_rmatrix, FamilyReading, DEFAULT_CANDIDATE_BOUND,
};
use crate::series::{
    check_nilpotent_series, classify_solvable_series, enumerate_chains, Chain, NamedCoideal,
};

#[derive(Clone, Debug)]
pub struct ReproduceOptions {
    pub sekine_max_k: usize,
    /// Adds the `k = 15` nilpotency run.
    pub slow: bool,
    pub candidate_bound: usize,
}

impl Default for ReproduceOptions {
    fn default() -> Self {
        ReproduceOptions { sekine_max_k: 7, slow: false, candidate_bound: DEFAULT_CANDIDATE_BOUND }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    /// The published statement the criterion reproduces.
    pub claim: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
    pub failures: Vec<String>,
}

#[derive(Default)]
struct Tally {
    details: Vec<String>,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.details.push(what.into());
    }
}

pub const CRITERIA: [(u8, &str, &str); 10] = [
    (1, "Hopf axioms", "Kac-Paljutkin and Sekine A_k are finite quantum groups"),
    (2, "Haar states", "published Haar states of Kac-Paljutkin and Sekine A_k"),
    (3, "idempotent-state lattice", "idempotent states, coideals and group-like projections"),
    (4, "normality", "L4, L5 and L'_1, L'_k are normal"),
    (5, "five solvable series", "Kac-Paljutkin has exactly five solvable series of length 4"),
    (6, "nilpotency", "Kac-Paljutkin and every A_k are nilpotent"),
    (7, "eight R-matrices", "Kac-Paljutkin carries exactly eight universal R-matrices"),
    (8, "Yang-Baxter", "each R-matrix solves the Yang-Baxter equation"),
    (9, "class dimensions", "2pq dimension bookkeeping"),
    (10, "sanity oracles", "C(G) and C[G] for abelian G of order at most 8"),
];

pub fn run_criterion(id: u8, opts: &ReproduceOptions) -> CriterionResult {
    let (_, title, claim) = CRITERIA[(id - 1) as usize];
    let mut t = Tally::default();
    let outcome = match id {
        1 => hopf_axioms(&mut t, opts),
        2 => haar_states(&mut t, opts),
        3 => state_lattice(&mut t, opts),
        4 => normality(&mut t, opts),
        5 => solvable_series(&mut t),
        6 => nilpotency(&mut t, opts),
        7 => rmatrices(&mut t, opts),
        8 => yang_baxter(&mut t),
        9 => class_dims(&mut t),
        10 => sanity(&mut t),
        _ => unreachable!("criteria are numbered 1 to 10"),
    };
    if let Err(e) = outcome {
        t.failures.push(format!("error: {e}"));
    }
    CriterionResult { id, title, claim, passed: t.failures.is_empty(), details: t.details, failures: t.failures }
}

pub fn run_all(opts: &ReproduceOptions) -> Vec<(CriterionResult, Duration)> {
    CRITERIA
        .iter()
        .map(|&(id, _, _)| {
            let start = Instant::now();
            let r = run_criterion(id, opts);
            (r, start.elapsed())
        })
        .collect()
}

/// `A_k` and its construction report, built once per process.
pub fn sekine_built(k: usize) -> Result<Arc<(HopfData, SekineReport)>> {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Arc<(HopfData, SekineReport)>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().expect("cache lock").get(&k) {
        return Ok(b.clone());
    }
    let b = Arc::new(sekine_with_report(k)?);
    Ok(cache.lock().expect("cache lock").entry(k).or_insert(b).clone())
}

fn sekine_range(opts: &ReproduceOptions, from: usize) -> std::ops::RangeInclusive<usize> {
    from..=opts.sekine_max_k
}

fn hopf_axioms(t: &mut Tally, opts: &ReproduceOptions) -> Result<()> {
    let kp = kac_paljutkin();
    let r = kp.verify_hopf();
    t.check(r.all_pass(), format!("KP: {:?}", r.first_failure()));
    for k in sekine_range(opts, 2) {
        let b = sekine_built(k)?;
        let report = &b.1;
        let r = &report.axioms;
        t.check(r.all_pass(), format!("A_{k}: {:?}", r.first_failure()));
        if k == 2 {
            t.note(format!("A_2 built with the {:?} coproduct", report.delta_form));
        }
    }
    t.note(format!("KP and A_k for k = 2..={} pass all axioms", opts.sekine_max_k));
    Ok(())
}

/// The Sekine Haar state as published: `1/(2k²)` on each `d_ij`, `1/(2k)` on
/// each `e_rr`.
pub fn sekine_published_haar(h: &HopfData, k: usize) -> Functional {
    let mut terms: Vec<(usize, CycNum)> = (0..k * k).map(|u| (u, CycNum::frac(1, 2 * (k * k) as i64))).collect();
    terms.extend((0..k as i64).map(|r| (sekine_e(k, r, r), CycNum::frac(1, 2 * k as i64))));
    Functional::from_terms(h.signature(), &terms)
}

pub fn kp_published_haar(h: &HopfData) -> Functional {
    let e = CycNum::frac(1, 8);
    let a = CycNum::frac(1, 4);
    let terms: Vec<(usize, CycNum)> = ["e1", "e2", "e3", "e4"]
        .iter()
        .map(|l| (h.index_of(l).expect("KP label"), e.clone()))
        .chain(["a11", "a22"].iter().map(|l| (h.index_of(l).expect("KP label"), a.clone())))
        .collect();
    Functional::from_terms(h.signature(), &terms)
}

fn haar_states(t: &mut Tally, opts: &ReproduceOptions) -> Result<()> {
    let kp = kac_paljutkin();
    t.check(kp.solve_haar()? == kp_published_haar(&kp), "KP Haar state differs from the published one");
    for k in sekine_range(opts, 2) {
        let b = sekine_built(k)?;
        let h = &b.0;
        t.check(h.solve_haar()? == sekine_published_haar(h, k), format!("A_{k} Haar state differs"));
    }
    t.note("exact equality with the published Haar states");
    Ok(())
}

/// Coideals of the eight KP idempotent states, named `L1..L8`.
pub fn kp_links(h: &HopfData) -> Result<Vec<NamedCoideal>> {
    kp_named_objects(h)
        .rho
        .iter()
        .enumerate()
        .map(|(i, r)| Ok(NamedCoideal::new(format!("L{}", i + 1), coideal_from_state(h, r)?)))
        .collect()
}

fn state_lattice(t: &mut Tally, opts: &ReproduceOptions) -> Result<()> {
    let kp = kac_paljutkin();
    let named = kp_named_objects(&kp);
    for (i, rho) in named.rho.iter().enumerate() {
        let n = i + 1;
        t.check(is_idempotent_state(&kp, rho)?, format!("rho_{n} is not idempotent"));
        let c = coideal_from_state(&kp, rho)?;
        if c.subspace() != &named.listed_coideals[i] {
            t.note(format!("L{n}: listed span differs from the coideal of rho_{n}; computed coideal used"));
            if n != 3 {
                t.failures.push(format!("unexpected span discrepancy at L{n}"));
            }
        }
        t.check(state_from_projection(&kp, &named.projections[i])? == *rho, format!("p_{n} does not give rho_{n}"));
        t.check(find_integral(&kp, &c)?.element == named.projections[i], format!("integral of L{n} is not p_{n}"));
    }
    for k in sekine_range(opts, 2) {
        let b = sekine_built(k)?;
        let h = &b.0;
        let sn = sekine_named(h, k)?;
        for i in 0..k {
            let n = i + 1;
            t.check(is_idempotent_state(h, &sn.h[i])?, format!("A_{k}: h_{n} is not idempotent"));
            let c = coideal_from_state(h, &sn.h[i])?;
            t.check(c.subspace() == &sn.listed_coideals[i], format!("A_{k}: coideal of h_{n} differs from L'_{n}"));
            t.check(state_from_projection(h, &sn.projections[i])? == sn.h[i], format!("A_{k}: p'_{n} does not give h_{n}"));
            t.check(find_integral(h, &c)?.element == sn.projections[i], format!("A_{k}: integral of L'_{n} is not p'_{n}"));
        }
        let whole = Coideal::whole(h);
        t.check(find_integral(h, &whole)?.element == sn.d00, format!("A_{k}: integral of A_k is not d_00"));
    }
    t.note(format!("KP rho_1..rho_8 and A_k h_i for k = 2..={}", opts.sekine_max_k));
    Ok(())
}

fn normality(t: &mut Tally, opts: &ReproduceOptions) -> Result<()> {
    let kp = kac_paljutkin();
    let links = kp_links(&kp)?;
    for i in [3, 4] {
        t.check(is_normal_coideal(&kp, &links[i].coideal)?, format!("{} is not normal", links[i].name));
    }
    let mut non_normal = Vec::new();
    for i in [1, 2, 5, 6] {
        if !is_normal_coideal(&kp, &links[i].coideal)? {
            non_normal.push(links[i].name.clone());
        }
    }
    t.check(!non_normal.is_empty(), "none of L2, L3, L6, L7 is non-normal");
    t.note(format!("non-normal among L2, L3, L6, L7: {}", non_normal.join(", ")));
    for k in sekine_range(opts, 2) {
        let b = sekine_built(k)?;
        let h = &b.0;
        let sn = sekine_named(h, k)?;
        for i in [0, k - 1] {
            let c = coideal_from_state(h, &sn.h[i])?;
            t.check(is_normal_coideal(h, &c)?, format!("A_{k}: L'_{} is not normal", i + 1));
        }
    }
    Ok(())
}

fn solvable_series(t: &mut Tally) -> Result<()> {
    let kp = kac_paljutkin();
    let links = kp_links(&kp)?;
    let chains = enumerate_chains(&links, &links[7], &links[0])?;
    let max = chains.iter().map(Chain::len).max().unwrap_or(0);
    t.check(max == 4, format!("maximal chain length {max}, expected 4"));
    let found: Vec<String> = classify_solvable_series(&kp, &links)?.iter().map(|(c, _)| c.describe()).collect();
    let expected = ["L8 ⊂ L5 ⊂ L2 ⊂ L1", "L8 ⊂ L5 ⊂ L3 ⊂ L1", "L8 ⊂ L5 ⊂ L4 ⊂ L1", "L8 ⊂ L6 ⊂ L4 ⊂ L1", "L8 ⊂ L7 ⊂ L4 ⊂ L1"];
    t.check(found == expected, format!("solvable series {found:?}"));
    t.note(format!("{} chains, {} solvable of length 4", chains.len(), found.len()));
    Ok(())
}

/// `C ⊂ L'_k ⊂ L'_1 ⊂ A_k` built from the states `h_k` and `h_1`.
pub fn sekine_chain(h: &HopfData, k: usize) -> Result<Chain> {
    let sn = sekine_named(h, k)?;
    Chain::new(vec![
        NamedCoideal::new("C", Coideal::trivial(h)),
        NamedCoideal::new(format!("L'_{k}"), coideal_from_state(h, &sn.h[k - 1])?),
        NamedCoideal::new("L'_1", coideal_from_state(h, &sn.h[0])?),
        NamedCoideal::new(format!("A_{k}"), Coideal::whole(h)),
    ])
}

/// Nilpotency of the Sekine chain `C < L'_k < L'_1 < A_k`.
pub fn sekine_nilpotent(k: usize) -> Result<bool> {
    let b = sekine_built(k)?;
    Ok(check_nilpotent_series(&b.0, &sekine_chain(&b.0, k)?)?.verdict)
}

fn nilpotency(t: &mut Tally, opts: &ReproduceOptions) -> Result<()> {
    let kp = kac_paljutkin();
    let links = kp_links(&kp)?;
    let chain = Chain::new(vec![links[7].clone(), links[4].clone(), links[3].clone(), links[0].clone()])?;
    t.check(check_nilpotent_series(&kp, &chain)?.verdict, "KP chain L8 < L5 < L4 < L1 is not nilpotent");
    let mut ks: Vec<usize> = sekine_range(opts, 3).collect();
    if opts.slow {
        ks.push(15);
    }
    for &k in &ks {
        t.check(sekine_nilpotent(k)?, format!("A_{k} chain is not nilpotent"));
    }
    t.note(format!("Sekine k in {ks:?}"));
    Ok(())
}

fn rmatrices(t: &mut Tally, opts: &ReproduceOptions) -> Result<()> {
    let kp = kac_paljutkin();
    let solved = solve_kp_rmatrices(&kp, opts.candidate_bound)?;
    t.check(solved.candidates.len() == 8, format!("{} candidates", solved.candidates.len()));
    let corrected: Vec<_> = kp_closed_form_rmatrices(&kp, FamilyReading::Corrected)?.into_iter().map(|c| c.tensor).collect();
    let found: Vec<_> = solved.candidates.iter().map(|c| c.tensor.clone()).collect();
    t.check(found == corrected, "solver output differs from the four families");
    let literal = kp_closed_form_rmatrices(&kp, FamilyReading::Literal)?;
    let literal_bad = literal.iter().filter(|c| !verify_rmatrix(&kp, &c.tensor).map(|r| r.quasitriangular()).unwrap_or(false)).count();
    t.note(format!("as printed, {literal_bad} family members fail the hexagons; the lambda^2 = -i reading is used"));
    for (c, r) in solved.candidates.iter().zip(&solved.reports) {
        let case = kp_case(&kp, &c.tensor).unwrap_or(0);
        t.check(r.all_pass(), format!("case {case} fails verify_rmatrix"));
        t.check(r.unitary.passed, format!("case {case} is not unitary"));
        let m = &r.minimal;
        if case >= 3 {
            t.check(m.dim == 8 && m.minimal, format!("case {case}: A_R has dim {}", m.dim));
        } else {
            let offdiag = ["a12", "a21"].iter().map(|l| AlgElement::basis(kp.signature(), kp.index_of(l).expect("KP label")));
            let absent = offdiag.clone().all(|x| !m.subspace.member(x.coords()).unwrap_or(true));
            t.check(m.dim < 8 && absent, format!("case {case}: A_R has dim {}", m.dim));
        }
    }
    t.note(format!("intertwiner nullity {}, {} candidates", solved.intertwiner_nullity, found.len()));
    Ok(())
}

fn yang_baxter(t: &mut Tally) -> Result<()> {
    let kp = kac_paljutkin();
    for c in kp_closed_form_rmatrices(&kp, FamilyReading::Corrected)? {
        let w = crate::rmatrix::yang_baxter(&kp, &c.tensor)?;
        t.check(w.is_none(), format!("{:?}: {}", c.provenance, w.unwrap_or_default()));
    }
    t.note("R12 R13 R23 = R23 R13 R12 for all eight");
    Ok(())
}

/// Multisets of divisors of `2pq` summing to `2pq` with one distinguished 1,
/// built by choosing non-decreasing parts from the smallest up.
pub fn multiset_oracle(p: u64, q: u64, forbidden: &BTreeSet<u64>) -> BTreeSet<Vec<u64>> {
    fn grow(parts: &[u64], min: usize, left: u64, acc: &mut Vec<u64>, out: &mut BTreeSet<Vec<u64>>) {
        if left == 0 {
            let mut m = acc.clone();
            m.sort_unstable_by(|a, b| b.cmp(a));
            m.insert(0, 1);
            out.insert(m);
            return;
        }
        for (i, &d) in parts.iter().enumerate().skip(min) {
            if d > left {
                break;
            }
            acc.push(d);
            grow(parts, i, left - d, acc, out);
            acc.pop();
        }
    }
    let n = 2 * p * q;
    let parts: Vec<u64> = divisors(n).into_iter().filter(|d| !forbidden.contains(d)).collect();
    let mut out = BTreeSet::new();
    grow(&parts, 0, n - 1, &mut Vec::new(), &mut out);
    out
}

fn class_dims(t: &mut Tally) -> Result<()> {
    let (p, q) = (7, 3);
    for forbidden in [BTreeSet::new(), BTreeSet::from([1, p, q])] {
        let ms = enumerate_multisets(p, q, &forbidden)?;
        t.check(ms.iter().all(|m| m.total() == 2 * p * q && m.dims.iter().all(|d| (2 * p * q) % d == 0)), "constraint violated");
        let got: BTreeSet<Vec<u64>> = ms.iter().map(|m| m.dims.clone()).collect();
        t.check(got.len() == ms.len() && got == multiset_oracle(p, q, &forbidden), format!("forbidden {forbidden:?}: enumeration differs from oracle"));
        t.note(format!("forbidden {forbidden:?}: {} multisets", ms.len()));
    }
    let w = proof_walk(p, q)?;
    t.check(w.final_value == 0, format!("5k(q-2)-5 = {}", w.final_value));
    t.note(format!("tallies {:?}; {} multisets reach the final branch", w.tallies, w.final_cases.len()));
    Ok(())
}

fn sanity(t: &mut Tally) -> Result<()> {
    for g in FiniteGroupTable::small_abelian() {
        let n = g.order() as i64;
        let c = function_algebra(&g)?;
        t.check(c.verify_hopf().all_pass(), format!("C({}) fails an axiom", g.name()));
        t.check(c.solve_haar()?.values().iter().all(|v| *v == CycNum::frac(1, n)), format!("C({}) Haar is not uniform", g.name()));
        let a = group_algebra(&g)?;
        t.check(a.verify_hopf().all_pass(), format!("C[{}] fails an axiom", g.name()));
        let cocommutative = a.delta_table().iter().all(|d| flip(d).map(|f| &f == d).unwrap_or(false));
        t.check(cocommutative, format!("C[{}] is not cocommutative", g.name()));
        let delta_e = Functional::from_terms(a.signature(), &[(g.identity(), CycNum::one())]);
        t.check(a.solve_haar()? == delta_e, format!("C[{}] Haar is not delta_e", g.name()));
    }
    t.note(format!("{} abelian groups", FiniteGroupTable::small_abelian().len()));
    Ok(())
}
