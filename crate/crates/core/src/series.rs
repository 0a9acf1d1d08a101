//! Solvable and nilpotent series of left coideal subalgebras.

use rayon::prelude::*;
use serde::Serialize;

use crate::coideal::{find_integral, is_normal_coideal, Coideal};
use crate::error::{FqgError, Result};
use crate::exact::CycNum;
use crate::hopf::{AlgElement, HopfData};
use crate::linalg::{ExactMatrix, Subspace};

#[derive(Clone, Debug)]
pub struct NamedCoideal {
    pub name: String,
    pub coideal: Coideal,
}

impl NamedCoideal {
    pub fn new(name: impl Into<String>, coideal: Coideal) -> Self {
        NamedCoideal { name: name.into(), coideal }
    }
}

/// A strictly increasing sequence of coideals.
#[derive(Clone, Debug)]
pub struct Chain {
    pub links: Vec<NamedCoideal>,
}

impl Chain {
    pub fn new(links: Vec<NamedCoideal>) -> Result<Self> {
        for w in links.windows(2) {
            let (a, b) = (w[0].coideal.subspace(), w[1].coideal.subspace());
            if !b.contains(a)? || a.dim() == b.dim() {
                return Err(FqgError::Structural(format!("{} is not strictly contained in {}", w[0].name, w[1].name)));
            }
        }
        Ok(Chain { links })
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    pub fn names(&self) -> Vec<&str> {
        self.links.iter().map(|l| l.name.as_str()).collect()
    }

    pub fn describe(&self) -> String {
        self.names().join(" ⊂ ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Condition {
    fn new(name: &'static str, witness: Option<String>) -> Self {
        Condition { name, passed: witness.is_none(), witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub lower: String,
    pub upper: String,
    pub integral: String,
    pub conditions: Vec<Condition>,
    pub passed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    Solvable,
    Nilpotent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub chain: Vec<String>,
    pub steps: Vec<StepReport>,
    pub verdict: bool,
}

fn elements(h: &HopfData, s: &Subspace) -> Vec<AlgElement> {
    s.basis().iter().map(|v| AlgElement::from_coords(h.signature(), v.clone()).expect("ambient")).collect()
}

fn first_bad_product(h: &HopfData, s: &Subspace) -> Result<Option<(usize, usize)>> {
    let b = elements(h, s);
    for (i, x) in b.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if !s.member(x.mul(y)?.coords())? {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// `{x ∈ s : xy = yx for all y ∈ s}` for a multiplicatively closed `s`.
pub fn relative_center(h: &HopfData, s: &Subspace) -> Result<Subspace> {
    if s.ambient() != h.dim() {
        return Err(FqgError::SignatureMismatch);
    }
    if let Some((i, j)) = first_bad_product(h, s)? {
        return Err(FqgError::Precondition(format!("subspace not closed under multiplication (basis pair {i}, {j})")));
    }
    let b = elements(h, s);
    let m = b.len();
    if m == 0 {
        return Ok(s.clone());
    }
    let d = h.dim();
    let mut rows = Vec::new();
    for y in &b {
        let cols = b
            .iter()
            .map(|bk| Ok(bk.mul(y)?.sub(&y.mul(bk)?)?.into_coords()))
            .collect::<Result<Vec<_>>>()?;
        for r in 0..d {
            let row: Vec<CycNum> = cols.iter().map(|c| c[r].clone()).collect();
            if row.iter().any(|v| !v.is_zero()) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Ok(s.clone());
    }
    let vectors: Vec<Vec<CycNum>> = ExactMatrix::from_rows(rows)
        .nullspace()
        .into_iter()
        .map(|t| {
            let mut x = AlgElement::zero(h.signature());
            for (tk, bk) in t.iter().zip(&b) {
                x.add_scaled(bk, tk);
            }
            x.into_coords()
        })
        .collect();
    Ok(Subspace::span(d, &vectors)?)
}

fn step_preconditions(h: &HopfData, small: &NamedCoideal, big: &NamedCoideal) -> Result<AlgElement> {
    let (s, b) = (small.coideal.subspace(), big.coideal.subspace());
    if !b.contains(s)? || s.dim() == b.dim() {
        return Err(FqgError::Precondition(format!("{} is not strictly contained in {}", small.name, big.name)));
    }
    if !big.coideal.is_subalgebra(h)? {
        return Err(FqgError::Precondition(format!("{} is not closed under multiplication", big.name)));
    }
    find_integral(h, &small.coideal)
        .map(|i| i.element)
        .map_err(|e| FqgError::Precondition(format!("no integral for {}: {e}", small.name)))
}

/// `l ∈ Z(L_{j+1})` and `(a ▷ b)l = ε(a)bl` for basis pairs of `L_{j+1}`.
pub fn check_solvable_step(h: &HopfData, small: &NamedCoideal, big: &NamedCoideal) -> Result<StepReport> {
    let l = step_preconditions(h, small, big)?;
    let labels = h.labels();
    let b = elements(h, big.coideal.subspace());
    let mut central = None;
    for (i, y) in b.iter().enumerate() {
        if l.mul(y)? != y.mul(&l)? {
            central = Some(format!("integral does not commute with basis vector {i} ({})", y.format(labels)));
            break;
        }
    }
    let pairs: Vec<(usize, usize)> = (0..b.len()).flat_map(|i| (0..b.len()).map(move |j| (i, j))).collect();
    let bad = pairs.par_iter().find_first(|&&(i, j)| {
        let lhs = h.adjoint_action(&b[i], &b[j]).and_then(|x| x.mul(&l)).expect("same signature");
        let rhs = b[j].mul(&l).expect("same signature").scale(&h.counit_of(&b[i]));
        lhs != rhs
    });
    let adjoint = bad.map(|&(i, j)| format!("fails for basis pair ({i}, {j}): a = {}, b = {}", b[i].format(labels), b[j].format(labels)));
    let conditions = vec![Condition::new("integral_central", central), Condition::new("adjoint_triviality", adjoint)];
    Ok(StepReport {
        lower: small.name.clone(),
        upper: big.name.clone(),
        integral: l.format(labels),
        passed: conditions.iter().all(|c| c.passed),
        conditions,
    })
}

/// Both links normal and `L_{j+1} l ⊆ Z(A l)`.
pub fn check_nilpotent_step(h: &HopfData, small: &NamedCoideal, big: &NamedCoideal) -> Result<StepReport> {
    let l = step_preconditions(h, small, big)?;
    let labels = h.labels();
    let mut conditions = Vec::new();
    for link in [small, big] {
        let normal = is_normal_coideal(h, &link.coideal)?;
        conditions.push(Condition::new(
            if std::ptr::eq(link, small) { "lower_normal" } else { "upper_normal" },
            (!normal).then(|| format!("{} is not normal", link.name)),
        ));
    }
    // `A l` is spanned by the `b_a l`, so `y l` is central in it iff it
    // commutes with each of them; the corner is a left ideal, hence closed.
    let corner: Vec<AlgElement> =
        (0..h.dim()).map(|a| h.basis(a).mul(&l)).filter(|z| z.as_ref().map_or(true, |z| !z.is_zero())).collect::<Result<_>>()?;
    let upper = elements(h, big.coideal.subspace());
    let pairs: Vec<(usize, usize)> = (0..upper.len()).flat_map(|i| (0..corner.len()).map(move |j| (i, j))).collect();
    let bad = pairs.par_iter().find_first(|&&(i, j)| {
        let yl = upper[i].mul(&l).expect("same signature");
        yl.mul(&corner[j]).expect("same signature") != corner[j].mul(&yl).expect("same signature")
    });
    let witness = bad.map(|&(i, j)| {
        let yl = upper[i].mul(&l).expect("same signature");
        format!("{} does not commute with {}", yl.format(labels), corner[j].format(labels))
    });
    conditions.push(Condition::new("corner_central", witness));
    Ok(StepReport {
        lower: small.name.clone(),
        upper: big.name.clone(),
        integral: l.format(labels),
        passed: conditions.iter().all(|c| c.passed),
        conditions,
    })
}

fn check_endpoints(h: &HopfData, chain: &Chain) -> Result<()> {
    let (Some(first), Some(last)) = (chain.links.first(), chain.links.last()) else {
        return Err(FqgError::Structural("empty chain".into()));
    };
    let bottom = Coideal::trivial(h);
    if first.coideal.subspace() != bottom.subspace() {
        return Err(FqgError::Structural(format!("chain starts at {} instead of C1", first.name)));
    }
    if last.coideal.dim() != h.dim() {
        return Err(FqgError::Structural(format!("chain ends at {} instead of A", last.name)));
    }
    Ok(())
}

fn check_series(
    h: &HopfData,
    chain: &Chain,
    kind: SeriesKind,
    step: fn(&HopfData, &NamedCoideal, &NamedCoideal) -> Result<StepReport>,
) -> Result<SeriesReport> {
    check_endpoints(h, chain)?;
    let steps = chain.links.windows(2).map(|w| step(h, &w[0], &w[1])).collect::<Result<Vec<_>>>()?;
    Ok(SeriesReport {
        kind,
        chain: chain.names().into_iter().map(String::from).collect(),
        verdict: steps.iter().all(|s| s.passed),
        steps,
    })
}

pub fn check_solvable_series(h: &HopfData, chain: &Chain) -> Result<SeriesReport> {
    check_series(h, chain, SeriesKind::Solvable, check_solvable_step)
}

pub fn check_nilpotent_series(h: &HopfData, chain: &Chain) -> Result<SeriesReport> {
    check_series(h, chain, SeriesKind::Nilpotent, check_nilpotent_step)
}

/// All strictly increasing chains `bottom ⊂ … ⊂ top` through `links`,
/// ordered by length and then lexicographically by link index. Links equal
/// to `bottom` or `top` are skipped.
pub fn enumerate_chains(links: &[NamedCoideal], bottom: &NamedCoideal, top: &NamedCoideal) -> Result<Vec<Chain>> {
    let strictly_in = |a: &Subspace, b: &Subspace| -> Result<bool> { Ok(a.dim() < b.dim() && b.contains(a)?) };
    let (bs, ts) = (bottom.coideal.subspace(), top.coideal.subspace());
    let mut inner = Vec::new();
    for (i, l) in links.iter().enumerate() {
        let s = l.coideal.subspace();
        if strictly_in(bs, s)? && strictly_in(s, ts)? {
            inner.push(i);
        }
    }
    let n = inner.len();
    let mut below = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            below[a][b] = strictly_in(links[inner[a]].coideal.subspace(), links[inner[b]].coideal.subspace())?;
        }
    }
    let mut paths: Vec<Vec<usize>> = vec![vec![]];
    let mut stack: Vec<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
    while let Some(path) = stack.pop() {
        let last = *path.last().expect("nonempty");
        for b in 0..n {
            if below[last][b] {
                let mut next = path.clone();
                next.push(b);
                stack.push(next);
            }
        }
        paths.push(path);
    }
    paths.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    paths
        .into_iter()
        .map(|p| {
            let mut ls = vec![bottom.clone()];
            ls.extend(p.into_iter().map(|a| links[inner[a]].clone()));
            ls.push(top.clone());
            Chain::new(ls)
        })
        .collect()
}

fn find_endpoint(h: &HopfData, links: &[NamedCoideal], target: &Subspace, what: &str) -> Result<NamedCoideal> {
    links
        .iter()
        .find(|l| l.coideal.subspace() == target)
        .cloned()
        .ok_or_else(|| FqgError::Precondition(format!("coideal list does not contain {what} (dimension {})", h.dim())))
}

/// Maximal-length chains through `links` that pass the solvable checker.
pub fn classify_solvable_series(h: &HopfData, links: &[NamedCoideal]) -> Result<Vec<(Chain, SeriesReport)>> {
    let bottom = find_endpoint(h, links, Coideal::trivial(h).subspace(), "C1")?;
    let top = find_endpoint(h, links, &Subspace::full(h.dim()), "A")?;
    let chains = enumerate_chains(links, &bottom, &top)?;
    let max = chains.iter().map(Chain::len).max().unwrap_or(0);
    let longest: Vec<Chain> = chains.into_iter().filter(|c| c.len() == max).collect();
    let reports = longest.par_iter().map(|c| check_solvable_series(h, c)).collect::<Result<Vec<_>>>()?;
    Ok(longest.into_iter().zip(reports).filter(|(_, r)| r.verdict).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coideal::coideal_from_state;
    use crate::models::{kac_paljutkin, kp_named_objects};

    fn kp_links(h: &HopfData) -> Vec<NamedCoideal> {
        let named = kp_named_objects(h);
        named
            .rho
            .iter()
            .enumerate()
            .map(|(i, r)| NamedCoideal::new(format!("L{}", i + 1), coideal_from_state(h, r).unwrap()))
            .collect()
    }

    #[test]
    fn kp_centers() {
        let h = kac_paljutkin();
        let z = relative_center(&h, &Subspace::full(8)).unwrap();
        assert_eq!(z.dim(), 5);
        let links = kp_links(&h);
        let l5 = links[4].coideal.subspace();
        assert_eq!(&relative_center(&h, l5).unwrap(), l5);
        let c = links[7].coideal.subspace();
        assert_eq!(&relative_center(&h, c).unwrap(), c);
        let offdiag = [h.element(&[("a12", CycNum::one())]).into_coords(), h.element(&[("a21", CycNum::one())]).into_coords()];
        let a12 = Subspace::span(8, &offdiag).unwrap();
        assert!(matches!(relative_center(&h, &a12), Err(FqgError::Precondition(_))));
    }

    #[test]
    fn kp_chain_counts() {
        let h = kac_paljutkin();
        let links = kp_links(&h);
        let chains = enumerate_chains(&links, &links[7], &links[0]).unwrap();
        assert_eq!(chains.iter().map(Chain::len).max(), Some(4));
        let through_l2: Vec<_> = chains.iter().filter(|c| c.len() == 4 && c.names().contains(&"L2")).collect();
        assert_eq!(through_l2.len(), 1);
        assert_eq!(through_l2[0].names(), ["L8", "L5", "L2", "L1"]);
        let solvable = classify_solvable_series(&h, &links).unwrap();
        let found: Vec<String> = solvable.iter().map(|(c, _)| c.names()[1..3].join("<")).collect();
        assert_eq!(found, ["L5<L2", "L5<L3", "L5<L4", "L6<L4", "L7<L4"]);
    }

    #[test]
    fn kp_nilpotent_chain() {
        let h = kac_paljutkin();
        let links = kp_links(&h);
        let chain = Chain::new(vec![links[7].clone(), links[4].clone(), links[3].clone(), links[0].clone()]).unwrap();
        let report = check_nilpotent_series(&h, &chain).unwrap();
        assert!(report.verdict, "{report:?}");
        assert!(check_solvable_series(&h, &chain).unwrap().verdict);
        let bad = Chain::new(vec![links[4].clone(), links[3].clone()]).unwrap();
        assert!(matches!(check_solvable_series(&h, &bad), Err(FqgError::Structural(_))));
        assert!(Chain::new(vec![links[3].clone(), links[4].clone()]).is_err());
    }
}
