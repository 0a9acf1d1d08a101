//! Idempotent states, left coideal subalgebras, group-like projections and
//! integrals.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{FqgError, Result};
use crate::exact::CycNum;
use crate::hopf::{AlgElement, Functional, HopfData, NumericCheck, TensorElem, POSITIVITY_TOLERANCE_BITS};
use crate::linalg::{ExactMatrix, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoidealFlag {
    Unital,
    StarClosed,
    Subalgebra,
    Coideal,
    Normal,
}

/// A subspace of `A` together with lazily computed structural flags.
///
/// Flags are write-once: a second computation must agree with the first.
#[derive(Clone, Debug)]
pub struct Coideal {
    subspace: Subspace,
    source_state: Option<Functional>,
    integral: OnceLock<Integral>,
    unital: OnceLock<bool>,
    star_closed: OnceLock<bool>,
    subalgebra: OnceLock<bool>,
    coideal: OnceLock<bool>,
    normal: OnceLock<bool>,
}

/// Output of [`find_integral`]; `projection` is false when no idempotent
/// rescaling exists and the first nonzero coordinate was set to 1 instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Integral {
    pub element: AlgElement,
    pub projection: bool,
}

impl Coideal {
    pub fn new(subspace: Subspace) -> Self {
        Coideal {
            subspace,
            source_state: None,
            integral: OnceLock::new(),
            unital: OnceLock::new(),
            star_closed: OnceLock::new(),
            subalgebra: OnceLock::new(),
            coideal: OnceLock::new(),
            normal: OnceLock::new(),
        }
    }

    pub fn trivial(h: &HopfData) -> Self {
        Coideal::new(Subspace::span(h.dim(), &[h.unit().coords().to_vec()]).expect("unit has algebra dimension"))
    }

    pub fn whole(h: &HopfData) -> Self {
        Coideal::new(Subspace::full(h.dim()))
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn source_state(&self) -> Option<&Functional> {
        self.source_state.as_ref()
    }

    pub fn integral(&self) -> Option<&Integral> {
        self.integral.get()
    }

    fn cell(&self, flag: CoidealFlag) -> &OnceLock<bool> {
        match flag {
            CoidealFlag::Unital => &self.unital,
            CoidealFlag::StarClosed => &self.star_closed,
            CoidealFlag::Subalgebra => &self.subalgebra,
            CoidealFlag::Coideal => &self.coideal,
            CoidealFlag::Normal => &self.normal,
        }
    }

    /// `None` while unchecked.
    pub fn flag(&self, flag: CoidealFlag) -> Option<bool> {
        self.cell(flag).get().copied()
    }

    fn record(&self, flag: CoidealFlag, value: bool) -> bool {
        let stored = *self.cell(flag).get_or_init(|| value);
        assert_eq!(stored, value, "inconsistent recomputation of {flag:?}");
        stored
    }

    fn cached(&self, flag: CoidealFlag, compute: impl FnOnce() -> Result<bool>) -> Result<bool> {
        match self.flag(flag) {
            Some(v) => Ok(v),
            // A itself is a normal coideal subalgebra.
            None if self.subspace.dim() == self.subspace.ambient() => Ok(self.record(flag, true)),
            None => Ok(self.record(flag, compute()?)),
        }
    }

    fn check_ambient(&self, h: &HopfData) -> Result<()> {
        if self.subspace.ambient() != h.dim() {
            return Err(FqgError::SignatureMismatch);
        }
        Ok(())
    }

    fn basis_elements(&self, h: &HopfData) -> Vec<AlgElement> {
        self.subspace
            .basis()
            .iter()
            .map(|v| AlgElement::from_coords(h.signature(), v.clone()).expect("ambient checked"))
            .collect()
    }

    fn holds(&self, v: &AlgElement) -> bool {
        self.subspace.member(v.coords()).expect("ambient checked")
    }

    pub fn is_unital(&self, h: &HopfData) -> Result<bool> {
        self.check_ambient(h)?;
        self.cached(CoidealFlag::Unital, || Ok(self.holds(h.unit())))
    }

    pub fn is_star_closed(&self, h: &HopfData) -> Result<bool> {
        self.check_ambient(h)?;
        self.cached(CoidealFlag::StarClosed, || Ok(self.basis_elements(h).iter().all(|x| self.holds(&x.star()))))
    }

    pub fn is_subalgebra(&self, h: &HopfData) -> Result<bool> {
        self.check_ambient(h)?;
        self.cached(CoidealFlag::Subalgebra, || {
            let b = self.basis_elements(h);
            let pairs: Vec<(usize, usize)> = (0..b.len()).flat_map(|i| (0..b.len()).map(move |j| (i, j))).collect();
            let bad = pairs.par_iter().find_first(|&&(i, j)| !self.holds(&b[i].mul(&b[j]).expect("same signature")));
            Ok(bad.is_none())
        })
    }

    /// `Δ(L) ⊆ A ⊗ L`, tested on each basis vector of `L` by grouping the
    /// coproduct along its first leg.
    pub fn is_coideal(&self, h: &HopfData) -> Result<bool> {
        self.check_ambient(h)?;
        self.cached(CoidealFlag::Coideal, || {
            let b = self.basis_elements(h);
            let d = h.dim();
            let bad = b.par_iter().find_first(|x| {
                let t = h.delta_of(x).expect("same signature");
                let mut legs: BTreeMap<usize, Vec<CycNum>> = BTreeMap::new();
                for (l, c) in t.terms() {
                    legs.entry(l[0]).or_insert_with(|| vec![CycNum::zero(); d])[l[1]] += c;
                }
                !legs.values().all(|v| self.subspace.member(v).expect("ambient checked"))
            });
            Ok(bad.is_none())
        })
    }

    /// Unital, star-closed, multiplicatively closed and a left coideal.
    pub fn is_coideal_subalgebra(&self, h: &HopfData) -> Result<bool> {
        let flags = [self.is_unital(h)?, self.is_star_closed(h)?, self.is_subalgebra(h)?, self.is_coideal(h)?];
        Ok(flags.iter().all(|&f| f))
    }
}

/// Exact equality `φ = φ∗φ` after checking `φ(1) = 1`.
pub fn is_idempotent_state(h: &HopfData, phi: &Functional) -> Result<bool> {
    let at_unit = phi.apply(h.unit());
    if !at_unit.is_one() {
        return Err(FqgError::NotAState(format!("value at the unit is {at_unit}")));
    }
    Ok(h.convolve(phi, phi)? == *phi)
}

/// Numeric positivity of `φ`, reported separately from idempotence.
pub fn state_positivity(h: &HopfData, phi: &Functional) -> NumericCheck {
    h.gram_positivity(phi, POSITIVITY_TOLERANCE_BITS)
}

/// `φ ≼ ψ` iff `ψ = φ∗ψ`.
pub fn state_leq(h: &HopfData, phi: &Functional, psi: &Functional) -> Result<bool> {
    for (name, f) in [("left", phi), ("right", psi)] {
        if !is_idempotent_state(h, f)? {
            return Err(FqgError::Precondition(format!("{name} argument is not an idempotent state")));
        }
    }
    Ok(h.convolve(phi, psi)? == *psi)
}

/// `L_φ = (id⊗φ)Δ(A)` with its structural flags evaluated.
pub fn coideal_from_state(h: &HopfData, phi: &Functional) -> Result<Coideal> {
    if !is_idempotent_state(h, phi)? {
        return Err(FqgError::Precondition("not an idempotent state".into()));
    }
    let image = (0..h.dim())
        .into_par_iter()
        .map(|x| h.right_slice(phi, &h.basis(x)).map(AlgElement::into_coords))
        .collect::<Result<Vec<_>>>()?;
    let mut c = Coideal::new(Subspace::span(h.dim(), &image)?);
    c.source_state = Some(phi.clone());
    c.is_coideal_subalgebra(h)?;
    Ok(c)
}

/// `p = p* = p²` and `Δ(p)(1⊗p) = p⊗p`.
pub fn is_group_like_projection(h: &HopfData, p: &AlgElement) -> Result<bool> {
    if p.star() != *p || p.mul(p)? != *p {
        return Ok(false);
    }
    let sig = h.signature();
    let lhs = h.delta_of(p)?.mul(&TensorElem::pure(&AlgElement::unit(sig), p))?;
    Ok(lhs == TensorElem::pure(p, p))
}

/// `x ↦ h(xp)/h(p)` for the Haar state `h`.
pub fn state_from_projection(h: &HopfData, p: &AlgElement) -> Result<Functional> {
    let haar = h.haar().ok_or_else(|| FqgError::Precondition("algebra has no Haar state".into()))?;
    let hp = haar.apply(p);
    if hp.is_zero() {
        return Err(FqgError::DegenerateProjection("h(p) = 0".into()));
    }
    let inv = hp.inv()?;
    let values = (0..h.dim()).map(|x| Ok(&haar.apply(&h.basis(x).mul(p)?) * &inv)).collect::<Result<Vec<_>>>()?;
    Functional::new(h.signature(), values)
}

/// The integral of a coideal: the unique line of `l ∈ L` with
/// `lx = xl = ε(x)l` for all `x ∈ L`, normalized to an idempotent if possible.
pub fn find_integral(h: &HopfData, c: &Coideal) -> Result<Integral> {
    if let Some(i) = c.integral() {
        return Ok(i.clone());
    }
    if !c.is_coideal(h)? {
        return Err(FqgError::Precondition("subspace is not a left coideal".into()));
    }
    let b = c.basis_elements(h);
    let m = b.len();
    let d = h.dim();
    // unknown l = Σ t_k b_k; one block of d equations per (x, side)
    let mut rows = Vec::with_capacity(2 * m * d);
    for x in &b {
        let eps = h.counit_of(x);
        for side in [false, true] {
            let cols = b
                .iter()
                .map(|bk| {
                    let prod = if side { x.mul(bk)? } else { bk.mul(x)? };
                    let mut v = prod.into_coords();
                    for (vi, bi) in v.iter_mut().zip(bk.coords()) {
                        *vi -= &(&eps * bi);
                    }
                    Ok(v)
                })
                .collect::<Result<Vec<_>>>()?;
            for r in 0..d {
                let row: Vec<CycNum> = cols.iter().map(|col| col[r].clone()).collect();
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let null = if rows.is_empty() {
        (0..m).map(|k| (0..m).map(|j| if j == k { CycNum::one() } else { CycNum::zero() }).collect()).collect()
    } else {
        ExactMatrix::from_rows(rows).nullspace()
    };
    if null.len() != 1 {
        return Err(FqgError::Structural(format!("integral space has dimension {}, expected 1", null.len())));
    }
    let mut l = AlgElement::zero(h.signature());
    for (t, bk) in null[0].iter().zip(&b) {
        l.add_scaled(bk, t);
    }
    let integral = match idempotent_scale(&l)? {
        Some(mu) => Integral { element: l.scale(&mu.inv()?), projection: true },
        None => {
            let first = l.support().next().map(|(_, v)| v.clone()).expect("nonzero");
            Integral { element: l.scale(&first.inv()?), projection: false }
        }
    };
    let _ = c.integral.set(integral.clone());
    Ok(integral)
}

/// `μ ≠ 0` with `l² = μl`, if any.
fn idempotent_scale(l: &AlgElement) -> Result<Option<CycNum>> {
    let sq = l.mul(l)?;
    let Some((i, li)) = l.support().next() else { return Ok(None) };
    let mu = sq.coord(i).checked_div(li)?;
    if mu.is_zero() || sq != l.scale(&mu) {
        return Ok(None);
    }
    Ok(Some(mu))
}

/// `a ▷ x ∈ L` for every basis `a` of `A` and basis `x` of `L`.
pub fn is_normal_coideal(h: &HopfData, c: &Coideal) -> Result<bool> {
    if !c.is_coideal(h)? {
        return Err(FqgError::Precondition("subspace is not a left coideal".into()));
    }
    c.cached(CoidealFlag::Normal, || {
        let b = c.basis_elements(h);
        let pairs: Vec<(usize, usize)> = (0..h.dim()).flat_map(|a| (0..b.len()).map(move |x| (a, x))).collect();
        let bad = pairs.par_iter().find_first(|&&(a, x)| {
            let y = h.adjoint_action(&h.basis(a), &b[x]).expect("same signature");
            !c.holds(&y)
        });
        Ok(bad.is_none())
    })
}

/// Which inclusion direction matches `≼` on a list of idempotent states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderOrientation {
    pub pairs: usize,
    pub related_pairs: usize,
    /// `φ ≼ ψ ⇔ L_ψ ⊆ L_φ` on every pair.
    pub reversing: bool,
    /// `φ ≼ ψ ⇔ L_φ ⊆ L_ψ` on every pair.
    pub preserving: bool,
}

pub fn order_orientation(h: &HopfData, states: &[Functional]) -> Result<OrderOrientation> {
    let coideals = states.iter().map(|s| coideal_from_state(h, s)).collect::<Result<Vec<_>>>()?;
    let n = states.len();
    let mut out = OrderOrientation { pairs: n * n, related_pairs: 0, reversing: true, preserving: true };
    for i in 0..n {
        for j in 0..n {
            let leq = state_leq(h, &states[i], &states[j])?;
            out.related_pairs += leq as usize;
            let sub_ji = coideals[i].subspace().contains(coideals[j].subspace())?;
            let sub_ij = coideals[j].subspace().contains(coideals[i].subspace())?;
            out.reversing &= leq == sub_ji;
            out.preserving &= leq == sub_ij;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{kac_paljutkin, kp_named_objects};

    fn one() -> CycNum {
        CycNum::one()
    }

    #[test]
    fn kp_states_and_projections() {
        let h = kac_paljutkin();
        let named = kp_named_objects(&h);
        for (rho, p) in named.rho.iter().zip(&named.projections) {
            assert!(is_idempotent_state(&h, rho).unwrap());
            assert!(is_group_like_projection(&h, p).unwrap());
            assert_eq!(&state_from_projection(&h, p).unwrap(), rho);
        }
        let not_idem = Functional::from_terms(h.signature(), &[(0, CycNum::frac(3, 4)), (1, CycNum::frac(1, 4))]);
        assert!(!is_idempotent_state(&h, &not_idem).unwrap());
        let half = Functional::from_terms(h.signature(), &[(0, CycNum::frac(1, 2))]);
        assert!(matches!(is_idempotent_state(&h, &half), Err(FqgError::NotAState(_))));
        assert!(!is_group_like_projection(&h, &h.element(&[("a11", one())])).unwrap());
        assert!(is_group_like_projection(&h, h.unit()).unwrap());
        assert!(state_leq(&h, &named.rho[1], &named.rho[4]).unwrap());
        assert!(!state_leq(&h, &named.rho[1], &named.rho[2]).unwrap());
        assert!(matches!(state_leq(&h, &not_idem, &named.rho[0]), Err(FqgError::Precondition(_))));
    }

    #[test]
    fn kp_coideals_and_integrals() {
        let h = kac_paljutkin();
        let named = kp_named_objects(&h);
        let l5 = coideal_from_state(&h, &named.rho[4]).unwrap();
        assert_eq!(l5.subspace(), &named.listed_coideals[4]);
        assert_eq!(l5.flag(CoidealFlag::Coideal), Some(true));
        assert_eq!(l5.flag(CoidealFlag::Normal), None);
        assert!(is_normal_coideal(&h, &l5).unwrap());
        let l8 = coideal_from_state(&h, &named.rho[7]).unwrap();
        assert_eq!(l8.dim(), 1);
        assert_eq!(find_integral(&h, &l8).unwrap().element, *h.unit());
        let full = coideal_from_state(&h, &named.rho[0]).unwrap();
        assert_eq!(full.dim(), 8);
        assert_eq!(find_integral(&h, &full).unwrap().element, named.projections[0]);
        let l4 = Coideal::new(named.listed_coideals[3].clone());
        let i4 = find_integral(&h, &l4).unwrap();
        assert!(i4.projection);
        assert_eq!(i4.element, named.projections[3]);
        assert!(is_normal_coideal(&h, &l4).unwrap());
        let a11 = h.element(&[("a11", one())]);
        let a22 = h.element(&[("a22", one())]);
        let e1 = h.element(&[("e1", one())]);
        let expected = a11.add(&a22).unwrap().scale(&CycNum::frac(1, 2));
        assert_eq!(h.adjoint_action(&e1, &a11).unwrap(), expected);
    }

    #[test]
    fn kp_listed_spans_against_computed() {
        let h = kac_paljutkin();
        let named = kp_named_objects(&h);
        let agree: Vec<bool> =
            named.rho.iter().zip(&named.listed_coideals).map(|(r, l)| coideal_from_state(&h, r).unwrap().subspace() == l).collect();
        assert_eq!(agree, [true, true, false, true, true, true, true, true]);
        // the listed third span has e1 + e4 where the state produces e1 + e3
        let l3 = coideal_from_state(&h, &named.rho[2]).unwrap();
        assert!(l3.holds(&h.element(&[("e1", one()), ("e3", one())])));
        assert!(!l3.holds(&h.element(&[("e1", one()), ("e4", one())])));
    }

    #[test]
    fn order_reverses_inclusion() {
        let h = kac_paljutkin();
        let named = kp_named_objects(&h);
        let o = order_orientation(&h, &named.rho).unwrap();
        assert!(o.reversing);
        assert!(!o.preserving);
    }

    #[test]
    fn non_coideal_is_rejected() {
        let h = kac_paljutkin();
        let c = Coideal::new(Subspace::span(8, &[h.element(&[("a12", one())]).into_coords()]).unwrap());
        assert!(!c.is_coideal(&h).unwrap());
        assert!(matches!(find_integral(&h, &c), Err(FqgError::Precondition(_))));
        assert!(matches!(is_normal_coideal(&h, &c), Err(FqgError::Precondition(_))));
    }
}
