use fqg_core::coideal::{coideal_from_state, find_integral, is_idempotent_state, is_normal_coideal, state_from_projection};
use fqg_core::models::{kp_named_objects, sekine_named_objects};
use fqg_core::reproduce::{kp_links, kp_published_haar, sekine_chain, sekine_published_haar};
use fqg_core::rmatrix::{kp_case, solve_kp_rmatrices, verify_rmatrix, RReport, DEFAULT_CANDIDATE_BOUND};
use fqg_core::series::{check_nilpotent_series, check_solvable_series, classify_solvable_series, Chain, SeriesReport};
use fqg_core::{AxiomReport, FqgError, Functional, HopfData, Result, TensorElem};
use serde_json::{json, Value};

use crate::report::CheckResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Kp,
    Sekine(usize),
    Generic,
}

pub struct Model {
    pub h: HopfData,
    pub kind: ModelKind,
    /// Axiom report from descriptor import.
    pub axioms: Option<AxiomReport>,
}

impl Model {
    pub fn supports(&self, c: Check) -> bool {
        match c {
            Check::Hopf | Check::Haar | Check::Coideals => true,
            Check::SeriesSolvable | Check::SeriesNilpotent => self.kind != ModelKind::Generic,
            Check::Rmatrix => self.kind == ModelKind::Kp,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Hopf,
    Haar,
    Coideals,
    SeriesSolvable,
    SeriesNilpotent,
    Rmatrix,
}

impl Check {
    pub const ALL: [Check; 6] =
        [Check::Hopf, Check::Haar, Check::Coideals, Check::SeriesSolvable, Check::SeriesNilpotent, Check::Rmatrix];

    pub fn name(self) -> &'static str {
        match self {
            Check::Hopf => "hopf",
            Check::Haar => "haar",
            Check::Coideals => "coideals",
            Check::SeriesSolvable => "series-solvable",
            Check::SeriesNilpotent => "series-nilpotent",
            Check::Rmatrix => "rmatrix",
        }
    }

    pub fn from_name(s: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == s)
    }
}

pub struct Options {
    pub candidate_bound: usize,
    pub tolerance_bits: u32,
    pub candidate: Option<TensorElem>,
}

impl Default for Options {
    fn default() -> Self {
        Options { candidate_bound: DEFAULT_CANDIDATE_BOUND, tolerance_bits: 40, candidate: None }
    }
}

pub fn run(model: &Model, check: Check, opts: &Options) -> Result<Vec<CheckResult>> {
    let h = &model.h;
    match check {
        Check::Hopf => Ok(vec![hopf(model)]),
        Check::Haar => haar(model, opts).map(|r| vec![r]),
        Check::Coideals => coideals(model),
        Check::SeriesSolvable => match model.kind {
            ModelKind::Kp => kp_solvable(h).map(|r| vec![r]),
            ModelKind::Sekine(k) => {
                let r = check_solvable_series(h, &sekine_chain(h, k)?)?;
                Ok(vec![series_result("series-solvable", Some("A_k is solvable"), r)])
            }
            ModelKind::Generic => Err(unsupported(check)),
        },
        Check::SeriesNilpotent => match model.kind {
            ModelKind::Kp => {
                let links = kp_links(h)?;
                let chain = Chain::new(vec![links[7].clone(), links[4].clone(), links[3].clone(), links[0].clone()])?;
                let r = check_nilpotent_series(h, &chain)?;
                Ok(vec![series_result("series-nilpotent", Some("Kac-Paljutkin is nilpotent"), r)])
            }
            ModelKind::Sekine(k) => {
                let r = check_nilpotent_series(h, &sekine_chain(h, k)?)?;
                Ok(vec![series_result("series-nilpotent", Some("A_k is nilpotent"), r)])
            }
            ModelKind::Generic => Err(unsupported(check)),
        },
        Check::Rmatrix => rmatrix(model, opts),
    }
}

fn unsupported(c: Check) -> FqgError {
    FqgError::Unsupported(format!("check `{}` needs a named model (kp or sekine)", c.name()))
}

fn hopf(model: &Model) -> CheckResult {
    let report = model.axioms.clone().unwrap_or_else(|| model.h.verify_hopf());
    let counted = report.checks.iter().filter(|c| !c.informational).count();
    let mut r = CheckResult::new("hopf", Some("finite quantum group axioms"), report.all_pass(), format!("{counted} axioms checked"));
    for c in report.checks.iter().filter(|c| !c.passed && !c.informational) {
        let at = c.witness.as_ref().map(|w| format!(" at ({}): {}", w.labels.join(", "), w.difference)).unwrap_or_default();
        r.witnesses.push(format!("axiom `{}` fails{at}", c.axiom));
    }
    if !r.passed {
        r.summary = format!("{} of {counted} axioms fail", r.witnesses.len());
    }
    r.with_data(serde_json::to_value(&report).expect("serializable"))
}

fn functional_json(h: &HopfData, f: &Functional) -> Value {
    let m: serde_json::Map<String, Value> = f
        .values()
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (h.label(i).to_string(), json!(v.to_string())))
        .collect();
    Value::Object(m)
}

fn haar(model: &Model, opts: &Options) -> Result<CheckResult> {
    let h = &model.h;
    let haar = h.solve_haar()?;
    let report = h.verify_haar_with(&haar, opts.tolerance_bits)?;
    let expected = match model.kind {
        ModelKind::Kp => Some(kp_published_haar(h)),
        ModelKind::Sekine(k) => Some(sekine_published_haar(h, k)),
        ModelKind::Generic => h.haar().cloned(),
    };
    let matches = expected.as_ref().map(|e| *e == haar);
    let mut r = CheckResult::new(
        "haar",
        Some("Haar state"),
        report.all_pass() && matches != Some(false),
        format!("solved Haar state{}", match matches {
            Some(true) => ", equal to the reference",
            Some(false) => ", differs from the reference",
            None => "",
        }),
    );
    if let Some(w) = &report.witness {
        r.witnesses.push(format!("({}): {}", w.labels.join(", "), w.difference));
    }
    if !report.positivity.passed {
        r.witnesses.push(format!("positivity: min eigenvalue {}", report.positivity.min_eigenvalue));
    }
    Ok(r.with_data(json!({ "haar": functional_json(h, &haar), "report": report })))
}

struct NamedState {
    name: String,
    state: Functional,
    projection: Option<fqg_core::AlgElement>,
    listed: Option<fqg_core::Subspace>,
}

fn coideals(model: &Model) -> Result<Vec<CheckResult>> {
    let h = &model.h;
    let states: Vec<NamedState> = match model.kind {
        ModelKind::Kp => {
            let n = kp_named_objects(h);
            (0..8)
                .map(|i| NamedState {
                    name: format!("L{}", i + 1),
                    state: n.rho[i].clone(),
                    projection: Some(n.projections[i].clone()),
                    listed: Some(n.listed_coideals[i].clone()),
                })
                .collect()
        }
        ModelKind::Sekine(k) => {
            let n = sekine_named_objects(h, k)?;
            (0..k)
                .map(|i| NamedState {
                    name: format!("L'_{}", i + 1),
                    state: n.h[i].clone(),
                    projection: Some(n.projections[i].clone()),
                    listed: Some(n.listed_coideals[i].clone()),
                })
                .collect()
        }
        ModelKind::Generic => {
            let mut v = vec![NamedState { name: "A".into(), state: h.counit_functional(), projection: None, listed: None }];
            v.push(NamedState { name: "C1".into(), state: h.solve_haar()?, projection: None, listed: None });
            v
        }
    };
    let mut out = Vec::new();
    for s in states {
        let mut witnesses = Vec::new();
        let mut notes = Vec::new();
        if !is_idempotent_state(h, &s.state)? {
            witnesses.push("state is not idempotent".to_string());
        }
        let c = coideal_from_state(h, &s.state)?;
        let integral = find_integral(h, &c)?;
        if let Some(p) = &s.projection {
            if integral.element != *p {
                witnesses.push(format!("integral {} differs from the listed projection", integral.element.format(h.labels())));
            }
            if state_from_projection(h, p)? != s.state {
                witnesses.push("the projection does not give back the state".into());
            }
        }
        if let Some(l) = &s.listed {
            if l != c.subspace() {
                notes.push("listed span differs from the computed coideal; computed coideal used");
            }
        }
        let normal = is_normal_coideal(h, &c)?;
        let mut r = CheckResult::new(
            &format!("coideal {}", s.name),
            None,
            witnesses.is_empty(),
            format!("dim {}, integral {}{}{}", c.dim(), integral.element.format(h.labels()), if normal { ", normal" } else { "" }, notes.iter().map(|n| format!("; {n}")).collect::<String>()),
        );
        r.witnesses = witnesses;
        let basis: Vec<String> = c.subspace().basis().iter().map(|v| fqg_core::AlgElement::from_coords(h.signature(), v.clone()).expect("ambient").format(h.labels())).collect();
        out.push(r.with_data(json!({
            "state": functional_json(h, &s.state),
            "dim": c.dim(),
            "basis": basis,
            "integral": integral.element.format(h.labels()),
            "normal": normal,
            "listed_span_matches": s.listed.as_ref().map(|l| l == c.subspace()),
        })));
    }
    Ok(out)
}

fn series_result(name: &str, claim: Option<&'static str>, r: SeriesReport) -> CheckResult {
    let mut c = CheckResult::new(name, claim, r.verdict, r.chain.join(" ⊂ "));
    for s in &r.steps {
        for cond in s.conditions.iter().filter(|c| !c.passed) {
            c.witnesses.push(format!("{} ⊂ {}: {} ({})", s.lower, s.upper, cond.name, cond.witness.clone().unwrap_or_default()));
        }
    }
    c.with_data(serde_json::to_value(&r).expect("serializable"))
}

fn kp_solvable(h: &HopfData) -> Result<CheckResult> {
    let links = kp_links(h)?;
    let found = classify_solvable_series(h, &links)?;
    let names: Vec<String> = found.iter().map(|(c, _)| c.describe()).collect();
    let r = CheckResult::new(
        "series-solvable",
        Some("five solvable series"),
        found.len() == 5,
        format!("{} solvable series of maximal length", found.len()),
    );
    Ok(r.with_data(json!({ "series": names })))
}

pub fn rreport_witnesses(r: &RReport) -> Vec<String> {
    let checks = [
        ("invertible", &r.invertible),
        ("intertwines", &r.intertwines),
        ("hexagon1", &r.hexagon1),
        ("hexagon2", &r.hexagon2),
        ("counit_normalized", &r.counit_normalized),
        ("unitary", &r.unitary),
        ("yang_baxter", &r.yang_baxter),
    ];
    checks.iter().filter(|(_, c)| !c.passed).map(|(n, c)| format!("{n}: {}", c.witness.clone().unwrap_or_default())).collect()
}

fn rmatrix(model: &Model, opts: &Options) -> Result<Vec<CheckResult>> {
    let h = &model.h;
    if let Some(t) = &opts.candidate {
        let r = verify_rmatrix(h, t)?;
        let mut c = CheckResult::new("rmatrix", None, r.all_pass(), format!("supplied tensor, A_R dim {}", r.minimal.dim));
        c.witnesses = rreport_witnesses(&r);
        return Ok(vec![c.with_data(serde_json::to_value(&r).expect("serializable"))]);
    }
    if model.kind != ModelKind::Kp {
        return Err(FqgError::Unsupported("R-matrix solving is implemented for kp; pass --rmatrix FILE to verify a tensor".into()));
    }
    let solved = solve_kp_rmatrices(h, opts.candidate_bound)?;
    let mut c = CheckResult::new(
        "rmatrix",
        Some("eight R-matrices"),
        solved.candidates.len() == 8 && solved.reports.iter().all(|r| r.all_pass()),
        format!("{} R-matrices, all quasitriangular, unitary and Yang-Baxter", solved.candidates.len()),
    );
    for (i, r) in solved.reports.iter().enumerate() {
        c.witnesses.extend(rreport_witnesses(r).into_iter().map(|w| format!("candidate {}: {w}", i + 1)));
    }
    let cases: Vec<Value> = solved
        .candidates
        .iter()
        .zip(&solved.reports)
        .map(|(cand, r)| json!({ "case": kp_case(h, &cand.tensor), "minimal_dim": r.minimal.dim }))
        .collect();
    Ok(vec![c.with_data(json!({ "intertwiner_nullity": solved.intertwiner_nullity, "candidates": cases }))])
}
