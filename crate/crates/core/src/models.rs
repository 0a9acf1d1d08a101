//! Named finite quantum groups and their distinguished states, coideals and
//! projections.

use serde::Serialize;

use crate::error::{FqgError, Result};
use crate::exact::CycNum;
use crate::hopf::{AlgElement, AlgSignature, AxiomCheck, AxiomReport, Functional, HopfData, TensorElem, AXIOMS};
use crate::linalg::Subspace;

/// Multiplication table of a finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    name: String,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
    labels: Vec<String>,
}

impl FiniteGroupTable {
    /// Validates the group axioms.
    pub fn new(name: impl Into<String>, table: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self> {
        let n = table.len();
        let bad = |m: &str| Err(FqgError::Parameter(format!("not a group table: {m}")));
        if n == 0 || labels.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad("shape");
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g)) else {
            return bad("no identity");
        };
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == identity && table[h][g] == identity) {
                Some(h) => inverse.push(h),
                None => return bad("missing inverse"),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad("not associative");
                    }
                }
            }
        }
        Ok(FiniteGroupTable { name: name.into(), table, inverse, identity, labels })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(FqgError::Parameter("cyclic group order must be positive".into()));
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroupTable::new(format!("z{n}"), table, (0..n).map(|g| g.to_string()).collect())
    }

    pub fn direct_product(a: &FiniteGroupTable, b: &FiniteGroupTable) -> Result<Self> {
        let (n, m) = (a.order(), b.order());
        let table = (0..n * m)
            .map(|x| (0..n * m).map(|y| a.table[x / m][y / m] * m + b.table[x % m][y % m]).collect())
            .collect();
        let labels = (0..n * m)
            .map(|x| {
                let (l, r) = (&a.labels[x / m], &b.labels[x % m]);
                let strip = |s: &str| s.trim_start_matches('(').trim_end_matches(')').to_string();
                format!("({},{})", strip(l), strip(r))
            })
            .collect();
        FiniteGroupTable::new(format!("{}x{}", a.name, b.name), table, labels)
    }

    /// The symmetric group on three letters.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
        let table = (0..6)
            .map(|a| {
                (0..6)
                    .map(|b| idx([perms[a][perms[b][0]], perms[a][perms[b][1]], perms[a][perms[b][2]]]))
                    .collect()
            })
            .collect();
        let labels = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
        FiniteGroupTable::new("s3", table, labels).expect("valid group")
    }

    /// Parse names such as `z4`, `z2xz2` or `s3`.
    pub fn from_name(name: &str) -> Result<Self> {
        if name == "s3" {
            return Ok(FiniteGroupTable::symmetric3());
        }
        let mut acc: Option<FiniteGroupTable> = None;
        for part in name.split('x') {
            let n: usize = part
                .strip_prefix('z')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| FqgError::Parameter(format!("unknown group `{name}`")))?;
            let c = FiniteGroupTable::cyclic(n)?;
            acc = Some(match acc {
                None => c,
                Some(g) => FiniteGroupTable::direct_product(&g, &c)?,
            });
        }
        acc.ok_or_else(|| FqgError::Parameter(format!("unknown group `{name}`")))
    }

    /// One representative of each abelian group of order at most 8.
    pub fn small_abelian() -> Vec<FiniteGroupTable> {
        ["z1", "z2", "z3", "z4", "z2xz2", "z5", "z6", "z7", "z8", "z2xz4", "z2xz2xz2"]
            .iter()
            .map(|n| FiniteGroupTable::from_name(n).expect("known group"))
            .collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.table[a][b] == self.table[b][a]))
    }
}

fn one() -> CycNum {
    CycNum::one()
}

pub const KP_LABELS: [&str; 8] = ["e1", "e2", "e3", "e4", "a11", "a12", "a21", "a22"];

/// The 8-dimensional Kac–Paljutkin quantum group on `C⊕C⊕C⊕C⊕M_2`.
pub fn kac_paljutkin() -> HopfData {
    let sig = AlgSignature::blocks(vec![1, 1, 1, 1, 2]).expect("valid blocks");
    let ix = |l: &str| KP_LABELS.iter().position(|x| *x == l).expect("KP label");
    let half = CycNum::frac(1, 2);
    let i = CycNum::i();
    let i2 = &i * &half;
    let m1 = CycNum::from_int(-1);
    let t = |terms: &[(&str, &str, CycNum)]| {
        let ts: Vec<(Vec<usize>, CycNum)> = terms.iter().map(|(a, b, c)| (vec![ix(a), ix(b)], c.clone())).collect();
        TensorElem::from_terms(&sig, 2, &ts)
    };
    let delta = vec![
        t(&[
            ("e1", "e1", one()),
            ("e2", "e2", one()),
            ("e3", "e3", one()),
            ("e4", "e4", one()),
            ("a11", "a11", half.clone()),
            ("a12", "a12", half.clone()),
            ("a21", "a21", half.clone()),
            ("a22", "a22", half.clone()),
        ]),
        t(&[
            ("e1", "e2", one()),
            ("e2", "e1", one()),
            ("e3", "e4", one()),
            ("e4", "e3", one()),
            ("a11", "a22", half.clone()),
            ("a22", "a11", half.clone()),
            ("a12", "a21", -&i2),
            ("a21", "a12", i2.clone()),
        ]),
        t(&[
            ("e1", "e3", one()),
            ("e3", "e1", one()),
            ("e2", "e4", one()),
            ("e4", "e2", one()),
            ("a11", "a22", half.clone()),
            ("a22", "a11", half.clone()),
            ("a12", "a21", i2.clone()),
            ("a21", "a12", -&i2),
        ]),
        t(&[
            ("e1", "e4", one()),
            ("e4", "e1", one()),
            ("e2", "e3", one()),
            ("e3", "e2", one()),
            ("a11", "a11", half.clone()),
            ("a22", "a22", half.clone()),
            ("a12", "a12", -&half),
            ("a21", "a21", -&half),
        ]),
        t(&[
            ("e1", "a11", one()),
            ("a11", "e1", one()),
            ("e2", "a22", one()),
            ("a22", "e2", one()),
            ("e3", "a22", one()),
            ("a22", "e3", one()),
            ("e4", "a11", one()),
            ("a11", "e4", one()),
        ]),
        t(&[
            ("e1", "a12", one()),
            ("a12", "e1", one()),
            ("e2", "a21", i.clone()),
            ("a21", "e2", -&i),
            ("e3", "a21", -&i),
            ("a21", "e3", i.clone()),
            ("e4", "a12", m1.clone()),
            ("a12", "e4", m1.clone()),
        ]),
        t(&[
            ("e1", "a21", one()),
            ("a21", "e1", one()),
            ("e2", "a12", -&i),
            ("a12", "e2", i.clone()),
            ("e3", "a12", i.clone()),
            ("a12", "e3", -&i),
            ("e4", "a21", m1.clone()),
            ("a21", "e4", m1),
        ]),
        t(&[
            ("e1", "a22", one()),
            ("a22", "e1", one()),
            ("e2", "a11", one()),
            ("a11", "e2", one()),
            ("e3", "a11", one()),
            ("a11", "e3", one()),
            ("e4", "a22", one()),
            ("a22", "e4", one()),
        ]),
    ];
    // ε(a_ij) = 0 is forced by the counit axiom on Δ(a_11)
    let counit = (0..8).map(|u| if u == 0 { one() } else { CycNum::zero() }).collect();
    let antipode = (0..8).map(|u| AlgElement::basis(&sig, sig.basis_star(u))).collect();
    let labels = KP_LABELS.iter().map(|s| s.to_string()).collect();
    let haar = kp_haar(&sig);
    HopfData::new("kp", sig, delta, counit, antipode, labels)
        .and_then(|h| h.with_haar(haar))
        .expect("consistent tables")
}

fn kp_haar(sig: &AlgSignature) -> Functional {
    let e = CycNum::frac(1, 8);
    let a = CycNum::frac(1, 4);
    Functional::from_terms(sig, &[(0, e.clone()), (1, e.clone()), (2, e.clone()), (3, e), (4, a.clone()), (7, a)])
}

/// Which second-leg index the `e⊗e` part of `Δ(d_ij)` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SekineDeltaForm {
    /// `e_{mn} ⊗ e_{m+j, m+j}` as printed.
    Literal,
    /// `e_{mn} ⊗ e_{m+j, n+j}`.
    Corrected,
}

#[derive(Clone, Debug, Serialize)]
pub struct SekineReport {
    pub k: usize,
    pub nonstandard_k: bool,
    pub delta_form: SekineDeltaForm,
    /// First failing axiom of the printed form, when it was rejected.
    pub literal_failure: Option<AxiomCheck>,
    pub axioms: AxiomReport,
}

pub fn sekine_d(k: usize, i: i64, j: i64) -> usize {
    let k_ = k as i64;
    (i.rem_euclid(k_) * k_ + j.rem_euclid(k_)) as usize
}

pub fn sekine_e(k: usize, i: i64, j: i64) -> usize {
    k * k + sekine_d(k, i, j)
}

/// Structure tables of the Sekine quantum group for one choice of form.
pub fn sekine_tables(k: usize, form: SekineDeltaForm) -> Result<HopfData> {
    if k < 2 {
        return Err(FqgError::Parameter(format!("sekine requires k >= 2, got {k}")));
    }
    let mut blocks = vec![1; k * k];
    blocks.push(k);
    let sig = AlgSignature::blocks(blocks)?;
    let eta: Vec<CycNum> = (0..k).map(|p| CycNum::root_of_unity(k as u32, p as i64)).collect::<std::result::Result<_, _>>()?;
    let pow = |e: i64| eta[e.rem_euclid(k as i64) as usize].clone();
    let ki = k as i64;
    let inv_k = CycNum::frac(1, ki);
    let d = |i: i64, j: i64| sekine_d(k, i, j);
    let e = |i: i64, j: i64| sekine_e(k, i, j);
    let mut delta = vec![TensorElem::zero(&sig, 2); 2 * k * k];
    for i in 0..ki {
        for j in 0..ki {
            let mut t = TensorElem::zero(&sig, 2);
            for m in 0..ki {
                for n in 0..ki {
                    t.add_term(&[d(m, n), d(i - m, j - n)], &one());
                    let second = match form {
                        SekineDeltaForm::Literal => e(m + j, m + j),
                        SekineDeltaForm::Corrected => e(m + j, n + j),
                    };
                    t.add_term(&[e(m, n), second], &(&inv_k * &pow(i * (m - n))));
                }
            }
            delta[d(i, j)] = t;
            let mut t = TensorElem::zero(&sig, 2);
            for m in 0..ki {
                for n in 0..ki {
                    t.add_term(&[d(-m, -n), e(i - n, j - n)], &pow(m * (i - j)));
                    t.add_term(&[e(i - n, j - n), d(m, n)], &pow(m * (j - i)));
                }
            }
            delta[e(i, j)] = t;
        }
    }
    let mut counit = vec![CycNum::zero(); 2 * k * k];
    counit[d(0, 0)] = one();
    let mut antipode = vec![AlgElement::zero(&sig); 2 * k * k];
    let mut labels = vec![String::new(); 2 * k * k];
    for i in 0..ki {
        for j in 0..ki {
            antipode[d(i, j)] = AlgElement::basis(&sig, d(-i, -j));
            antipode[e(i, j)] = AlgElement::basis(&sig, e(j, i));
            labels[d(i, j)] = format!("d({i},{j})");
            labels[e(i, j)] = format!("e({i},{j})");
        }
    }
    let haar = sekine_haar(&sig, k);
    HopfData::new(format!("sekine{k}"), sig, delta, counit, antipode, labels)?.with_haar(haar)
}

fn sekine_haar(sig: &AlgSignature, k: usize) -> Functional {
    let ki = k as i64;
    let dv = CycNum::frac(1, 2 * ki * ki);
    let ev = CycNum::frac(1, 2 * ki);
    let mut terms: Vec<(usize, CycNum)> = (0..k * k).map(|u| (u, dv.clone())).collect();
    terms.extend((0..ki).map(|r| (sekine_e(k, r, r), ev.clone())));
    Functional::from_terms(sig, &terms)
}

fn first_failure(h: &HopfData) -> Result<Option<AxiomCheck>> {
    for axiom in AXIOMS {
        let c = h.check_axiom(axiom)?;
        if !c.passed && !c.informational {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Build the Sekine quantum group, trying the printed `Δ(d_ij)` first and the
/// corrected index only if the printed one fails the axioms.
pub fn sekine_with_report(k: usize) -> Result<(HopfData, SekineReport)> {
    let literal = sekine_tables(k, SekineDeltaForm::Literal)?;
    let literal_failure = first_failure(&literal)?;
    let (h, form) = match &literal_failure {
        None => (literal, SekineDeltaForm::Literal),
        Some(_) => (sekine_tables(k, SekineDeltaForm::Corrected)?, SekineDeltaForm::Corrected),
    };
    let axioms = h.verify_hopf();
    if let Some(f) = axioms.first_failure() {
        let basis = f.witness.as_ref().map(|w| w.labels.join(", ")).unwrap_or_default();
        return Err(FqgError::Construction { axiom: f.axiom.clone(), basis });
    }
    let report = SekineReport { k, nonstandard_k: k < 3, delta_form: form, literal_failure, axioms };
    Ok((h, report))
}

pub fn sekine(k: usize) -> Result<HopfData> {
    sekine_with_report(k).map(|(h, _)| h)
}

/// `C(G)`: functions on `G` with `Δ(f)(x, y) = f(xy)`.
pub fn function_algebra(g: &FiniteGroupTable) -> Result<HopfData> {
    let n = g.order();
    let sig = AlgSignature::blocks(vec![1; n])?;
    let mut delta = vec![TensorElem::zero(&sig, 2); n];
    for a in 0..n {
        for b in 0..n {
            delta[g.mul(a, b)].add_term(&[a, b], &one());
        }
    }
    let counit = (0..n).map(|x| if x == g.identity() { one() } else { CycNum::zero() }).collect();
    let antipode = (0..n).map(|x| AlgElement::basis(&sig, g.inverse(x))).collect();
    let labels = g.labels().iter().map(|l| format!("δ{l}")).collect();
    let haar = Functional::from_terms(&sig, &(0..n).map(|x| (x, CycNum::frac(1, n as i64))).collect::<Vec<_>>());
    HopfData::new(format!("C({})", g.name()), sig, delta, counit, antipode, labels)?.with_haar(haar)
}

/// `ℂ[G]` for abelian `G`, with the group-like coproduct.
pub fn group_algebra(g: &FiniteGroupTable) -> Result<HopfData> {
    if !g.is_abelian() {
        return Err(FqgError::Unsupported(format!("group algebra of nonabelian group {}", g.name())));
    }
    let n = g.order();
    let sig = AlgSignature::group_algebra(g.table().to_vec(), (0..n).map(|x| g.inverse(x)).collect(), g.identity())?;
    let delta = (0..n).map(|x| TensorElem::from_terms(&sig, 2, &[(vec![x, x], one())])).collect();
    let counit = vec![one(); n];
    let antipode = (0..n).map(|x| AlgElement::basis(&sig, g.inverse(x))).collect();
    let labels = g.labels().iter().map(|l| format!("λ{l}")).collect();
    let haar = Functional::from_terms(&sig, &[(g.identity(), one())]);
    HopfData::new(format!("C[{}]", g.name()), sig, delta, counit, antipode, labels)?.with_haar(haar)
}

/// `ρ_i`, `L_i` and `p_i` for `i = 1..8` (stored at index `i − 1`).
#[derive(Clone, Debug)]
pub struct KpNamed {
    pub rho: Vec<Functional>,
    pub listed_coideals: Vec<Subspace>,
    pub projections: Vec<AlgElement>,
}

pub fn kp_named_objects(h: &HopfData) -> KpNamed {
    let sig = h.signature();
    let q = CycNum::frac;
    let f = |terms: &[(&str, CycNum)]| {
        Functional::from_terms(sig, &terms.iter().map(|(l, c)| (h.index_of(l).expect("KP label"), c.clone())).collect::<Vec<_>>())
    };
    let rho = vec![
        h.counit_functional(),
        f(&[("e1", q(1, 2)), ("e2", q(1, 2))]),
        f(&[("e1", q(1, 2)), ("e3", q(1, 2))]),
        f(&[("e1", q(1, 2)), ("e4", q(1, 2))]),
        f(&[("e1", q(1, 4)), ("e2", q(1, 4)), ("e3", q(1, 4)), ("e4", q(1, 4))]),
        f(&[("e1", q(1, 4)), ("e4", q(1, 4)), ("a11", q(1, 2))]),
        f(&[("e1", q(1, 4)), ("e4", q(1, 4)), ("a22", q(1, 2))]),
        kp_haar(sig),
    ];
    let el = |labels: &[&str]| h.element(&labels.iter().map(|l| (*l, one())).collect::<Vec<_>>());
    let i = CycNum::i();
    let span = |vs: Vec<AlgElement>| {
        Subspace::span(h.dim(), &vs.into_iter().map(AlgElement::into_coords).collect::<Vec<_>>()).expect("dimension")
    };
    let listed_coideals = vec![
        Subspace::full(h.dim()),
        span(vec![
            el(&["e1", "e2"]),
            el(&["e3", "e4"]),
            el(&["a11", "a22"]),
            h.element(&[("a12", one()), ("a21", -&i)]),
        ]),
        span(vec![
            el(&["e1", "e4"]),
            el(&["e2", "e4"]),
            el(&["a11", "a22"]),
            h.element(&[("a12", one()), ("a21", i.clone())]),
        ]),
        span(vec![el(&["e1", "e4"]), el(&["e2", "e3"]), el(&["a11"]), el(&["a22"])]),
        span(vec![el(&["e1", "e2", "e3", "e4"]), el(&["a11", "a22"])]),
        span(vec![el(&["e1", "e4", "a11"]), el(&["e2", "e3", "a22"])]),
        span(vec![el(&["e1", "e4", "a22"]), el(&["e2", "e3", "a11"])]),
        span(vec![h.unit().clone()]),
    ];
    let projections = vec![
        el(&["e1"]),
        el(&["e1", "e2"]),
        el(&["e1", "e3"]),
        el(&["e1", "e4"]),
        el(&["e1", "e2", "e3", "e4"]),
        el(&["e1", "e4", "a11"]),
        el(&["e1", "e4", "a22"]),
        el(&["e1", "e2", "e3", "e4", "a11", "a22"]),
    ];
    KpNamed { rho, listed_coideals, projections }
}

/// `Γ_i`, `h_i`, listed `L′_i` and `p′_i` for `i = 1..k` (index `i − 1`),
/// plus `d_00`.
#[derive(Clone, Debug)]
pub struct SekineNamed {
    pub k: usize,
    pub gamma: Vec<Vec<(usize, usize)>>,
    pub h: Vec<Functional>,
    pub listed_coideals: Vec<Subspace>,
    pub projections: Vec<AlgElement>,
    pub d00: AlgElement,
}

pub fn sekine_gamma(k: usize, i: usize) -> Vec<(usize, usize)> {
    if i == k {
        (0..k).flat_map(|p| (0..k).map(move |q| (p, q))).collect()
    } else {
        (0..k).map(|j| (j, (i * j) % k)).collect()
    }
}

pub fn sekine_named_objects(h: &HopfData, k: usize) -> Result<SekineNamed> {
    if k < 2 {
        return Err(FqgError::Parameter(format!("sekine requires k >= 2, got {k}")));
    }
    if h.dim() != 2 * k * k {
        return Err(FqgError::SignatureMismatch);
    }
    let sig = h.signature();
    let ki = k as i64;
    let eta = |e: i64| CycNum::root_of_unity(k as u32, e).expect("positive order");
    let gamma: Vec<Vec<(usize, usize)>> = (1..=k).map(|i| sekine_gamma(k, i)).collect();
    let hs = gamma
        .iter()
        .map(|g| {
            let w = CycNum::frac(1, g.len() as i64);
            Functional::from_terms(sig, &g.iter().map(|&(p, q)| (sekine_d(k, p as i64, q as i64), w.clone())).collect::<Vec<_>>())
        })
        .collect();
    let projections = gamma
        .iter()
        .map(|g| AlgElement::from_terms(sig, &g.iter().map(|&(p, q)| (sekine_d(k, p as i64, q as i64), one())).collect::<Vec<_>>()))
        .collect();
    let mut listed = Vec::with_capacity(k);
    for g in gamma.iter().take(k - 1) {
        let mut vs = Vec::new();
        for p in 0..ki {
            for q in 0..ki {
                let mut dv = AlgElement::zero(sig);
                let mut ev = AlgElement::zero(sig);
                for &(r, s) in g {
                    let (r, s) = (r as i64, s as i64);
                    dv.add_scaled(&AlgElement::basis(sig, sekine_d(k, p - r, q - s)), &one());
                    ev.add_scaled(&AlgElement::basis(sig, sekine_e(k, p - s, q - s)), &eta(r * (q - p)));
                }
                vs.push(dv.into_coords());
                vs.push(ev.into_coords());
            }
        }
        listed.push(Subspace::span(h.dim(), &vs)?);
    }
    let all_d = AlgElement::from_terms(sig, &(0..k * k).map(|u| (u, one())).collect::<Vec<_>>());
    let diag_e = AlgElement::from_terms(sig, &(0..ki).map(|s| (sekine_e(k, s, s), one())).collect::<Vec<_>>());
    listed.push(Subspace::span(h.dim(), &[all_d.into_coords(), diag_e.into_coords()])?);
    Ok(SekineNamed {
        k,
        gamma,
        h: hs,
        listed_coideals: listed,
        projections,
        d00: AlgElement::basis(sig, sekine_d(k, 0, 0)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kp_tables() {
        let h = kac_paljutkin();
        assert_eq!(h.dim(), 8);
        let a11 = h.index_of("a11").unwrap();
        let e2 = h.index_of("e2").unwrap();
        let a22 = h.index_of("a22").unwrap();
        assert!(h.delta_table()[a11].get(&[e2, a22]).is_one());
        assert_eq!(h.delta_table()[0].get(&[a11, a11]), CycNum::frac(1, 2));
        assert!(h.delta_of(h.unit()).unwrap() == TensorElem::unit(h.signature(), 2));
        let report = h.verify_hopf();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn sekine_small() {
        let (h, report) = sekine_with_report(3).unwrap();
        assert_eq!(h.dim(), 18);
        assert_eq!(report.delta_form, SekineDeltaForm::Corrected);
        assert!(report.literal_failure.is_some());
        assert!(!report.nonstandard_k);
        let d00 = sekine_d(3, 0, 0);
        assert!(h.delta_table()[d00].get(&[sekine_d(3, 1, 1), sekine_d(3, -1, -1)]).is_one());
        assert!(h.counit_table()[d00].is_one());
        assert!(h.counit_table()[sekine_d(3, 1, 2)].is_zero());
        assert!(h.counit_table()[sekine_e(3, 0, 0)].is_zero());
        assert!(sekine(1).is_err());
        assert!(sekine_with_report(2).unwrap().1.nonstandard_k);
    }

    #[test]
    fn groups() {
        assert!(FiniteGroupTable::from_name("z2xz4").unwrap().is_abelian());
        assert_eq!(FiniteGroupTable::from_name("z2xz2xz2").unwrap().order(), 8);
        assert!(!FiniteGroupTable::symmetric3().is_abelian());
        assert!(matches!(group_algebra(&FiniteGroupTable::symmetric3()), Err(FqgError::Unsupported(_))));
        assert!(FiniteGroupTable::from_name("q8").is_err());
        let bad = FiniteGroupTable::new("bad", vec![vec![0, 0], vec![0, 1]], vec!["a".into(), "b".into()]);
        assert!(bad.is_err());
    }

    #[test]
    fn function_and_group_algebras() {
        let z2 = FiniteGroupTable::cyclic(2).unwrap();
        let c = function_algebra(&z2).unwrap();
        let expected = TensorElem::from_terms(c.signature(), 2, &[(vec![0, 1], one()), (vec![1, 0], one())]);
        assert_eq!(c.delta_table()[1], expected);
        let g = group_algebra(&z2).unwrap();
        assert_eq!(g.delta_table()[1], TensorElem::from_terms(g.signature(), 2, &[(vec![1, 1], one())]));
        assert!(g.verify_hopf().all_pass());
        let z3 = FiniteGroupTable::cyclic(3).unwrap();
        let haar = function_algebra(&z3).unwrap().solve_haar().unwrap();
        assert!(haar.values().iter().all(|v| *v == CycNum::frac(1, 3)));
    }

    #[test]
    fn named_objects() {
        let h = kac_paljutkin();
        let named = kp_named_objects(&h);
        assert_eq!(&named.rho[7], h.haar().unwrap());
        assert_eq!(named.listed_coideals[7].dim(), 1);
        assert_eq!(named.projections[4], h.element(&[("e1", one()), ("e2", one()), ("e3", one()), ("e4", one())]));
        let s = sekine(3).unwrap();
        let sn = sekine_named_objects(&s, 3).unwrap();
        assert_eq!(sn.listed_coideals[2].dim(), 2);
        assert_eq!(sn.gamma[0].len(), 3);
        assert_eq!(sn.gamma[2].len(), 9);
        assert_eq!(sn.h[0].value(sekine_d(3, 0, 0)), &CycNum::frac(1, 3));
        assert_eq!(sn.projections[2], AlgElement::from_terms(s.signature(), &(0..9).map(|u| (u, one())).collect::<Vec<_>>()));
    }
}
