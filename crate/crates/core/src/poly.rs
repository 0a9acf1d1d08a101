//! Sparse polynomials of degree at most two over `CycNum`, and a
//! branching solver for finite systems of them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{FqgError, Result};
use crate::exact::CycNum;

const NONE: u16 = u16::MAX;

/// `1`, `t_a` or `t_a t_b` with `a ≤ b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono(u16, u16);

impl Mono {
    pub const ONE: Mono = Mono(NONE, NONE);

    pub fn var(a: u16) -> Mono {
        Mono(a, NONE)
    }

    pub fn product(a: u16, b: u16) -> Mono {
        Mono(a.min(b), a.max(b))
    }

    pub fn degree(self) -> usize {
        (self.0 != NONE) as usize + (self.1 != NONE) as usize
    }

    pub fn vars(self) -> impl Iterator<Item = u16> {
        [self.0, self.1].into_iter().filter(|&v| v != NONE)
    }

    fn mul(self, other: Mono) -> Option<Mono> {
        let vs: Vec<u16> = self.vars().chain(other.vars()).collect();
        match vs.as_slice() {
            [] => Some(Mono::ONE),
            [a] => Some(Mono::var(*a)),
            [a, b] => Some(Mono::product(*a, *b)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Mono, CycNum>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: CycNum) -> Self {
        let mut p = Poly::zero();
        p.add_term(Mono::ONE, &c);
        p
    }

    pub fn var(a: u16) -> Self {
        let mut p = Poly::zero();
        p.add_term(Mono::var(a), &CycNum::one());
        p
    }

    pub fn add_term(&mut self, m: Mono, c: &CycNum) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(CycNum::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mono, &CycNum)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: Mono) -> CycNum {
        self.terms.get(&m).cloned().unwrap_or_else(CycNum::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<u16> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn scale(&self, c: &CycNum) -> Poly {
        let mut p = Poly::zero();
        for (m, v) in &self.terms {
            p.add_term(*m, &(v * c));
        }
        p
    }

    pub fn add_scaled(&mut self, other: &Poly, c: &CycNum) {
        for (m, v) in &other.terms {
            self.add_term(*m, &(v * c));
        }
    }

    /// Product, failing if the degree would exceed two.
    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        let mut p = Poly::zero();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                let mn = m.mul(*n).ok_or_else(|| FqgError::Unsupported("polynomial degree exceeds two".into()))?;
                p.add_term(mn, &(a * b));
            }
        }
        Ok(p)
    }

    /// Replace `t_v` by an affine polynomial.
    pub fn substitute(&self, v: u16, value: &Poly) -> Result<Poly> {
        if !self.vars().contains(&v) {
            return Ok(self.clone());
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut factor = Poly::constant(c.clone());
            for w in m.vars() {
                factor = factor.mul(&if w == v { value.clone() } else { Poly::var(w) })?;
            }
            out.add_scaled(&factor, &CycNum::one());
        }
        Ok(out)
    }

    pub fn eval(&self, values: &BTreeMap<u16, CycNum>) -> Option<CycNum> {
        let mut acc = CycNum::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in m.vars() {
                t = &t * values.get(&v)?;
            }
            acc += &t;
        }
        Some(acc)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m.vars().map(|v| format!("t{v}")).collect();
                if vars.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Roots of `a t² + b t + c` with `a ≠ 0`, when the discriminant has a
/// square root of the form `r·ζ`.
pub fn quadratic_roots(a: &CycNum, b: &CycNum, c: &CycNum) -> Option<Vec<CycNum>> {
    let disc = &(b * b) - &(&CycNum::from_int(4) * &(a * c));
    let two_a = a * &CycNum::from_int(2);
    if disc.is_zero() {
        return Some(vec![(-b).checked_div(&two_a).ok()?]);
    }
    let s = disc.sqrt_monomial()?;
    let r1 = (&(-b) + &s).checked_div(&two_a).ok()?;
    let r2 = (&(-b) - &s).checked_div(&two_a).ok()?;
    Some(vec![r1, r2])
}

/// Summary of a branching solve.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub branches: usize,
    pub dead_ends: usize,
    pub leaves: usize,
    /// Polynomials left when the solver could not make progress.
    pub stuck: Vec<String>,
}

/// All assignments of `vars` satisfying `equations`, found by eliminating
/// linear equations, branching on univariate quadratics and on vanishing
/// monomials. Fails with a resource error after `bound` branches.
pub fn solve_system(vars: &[u16], equations: Vec<Poly>, bound: usize) -> Result<(Vec<BTreeMap<u16, CycNum>>, SolveStats)> {
    let mut stats = SolveStats::default();
    let mut out = Vec::new();
    let mut stack = vec![(equations, BTreeMap::<u16, Poly>::new())];
    while let Some((eqs, assigned)) = stack.pop() {
        stats.branches += 1;
        if stats.branches > bound {
            return Err(FqgError::Resource(format!(
                "candidate bound {bound} exceeded ({} leaves found so far)",
                stats.leaves
            )));
        }
        match reduce(eqs, assigned)? {
            Reduced::Dead => stats.dead_ends += 1,
            Reduced::Done(assigned) => {
                let mut values = BTreeMap::new();
                let mut free = Vec::new();
                resolve(vars, &assigned, &mut values, &mut free)?;
                if !free.is_empty() {
                    return Err(FqgError::Structural(format!("solution family has free parameters {free:?}")));
                }
                stats.leaves += 1;
                out.push(values);
            }
            Reduced::Branch(children) => {
                // reversed so the first child is explored first
                stack.extend(children.into_iter().rev());
            }
            Reduced::Stuck(eqs) => {
                stats.stuck = eqs.iter().map(|p| p.to_string()).collect();
                return Err(FqgError::Unsupported(format!(
                    "no linear, univariate or monomial constraint among {} remaining equations",
                    eqs.len()
                )));
            }
        }
    }
    Ok((out, stats))
}

type Branch = (Vec<Poly>, BTreeMap<u16, Poly>);

enum Reduced {
    Dead,
    Done(BTreeMap<u16, Poly>),
    Branch(Vec<Branch>),
    Stuck(Vec<Poly>),
}

fn assign(eqs: &[Poly], assigned: &BTreeMap<u16, Poly>, v: u16, value: &Poly) -> Result<Branch> {
    let eqs = eqs.iter().map(|p| p.substitute(v, value)).collect::<Result<Vec<_>>>()?;
    let mut assigned = assigned.iter().map(|(w, p)| Ok((*w, p.substitute(v, value)?))).collect::<Result<BTreeMap<_, _>>>()?;
    assigned.insert(v, value.clone());
    Ok((eqs, assigned))
}

fn reduce(mut eqs: Vec<Poly>, mut assigned: BTreeMap<u16, Poly>) -> Result<Reduced> {
    loop {
        eqs.retain(|p| !p.is_zero());
        eqs.sort_by(|a, b| a.terms.len().cmp(&b.terms.len()).then_with(|| a.terms.keys().cmp(b.terms.keys())));
        eqs.dedup();
        if eqs.is_empty() {
            return Ok(Reduced::Done(assigned));
        }
        if eqs.iter().any(|p| p.degree() == 0) {
            return Ok(Reduced::Dead);
        }
        // eliminate the highest variable of the first linear equation
        if let Some(p) = eqs.iter().find(|p| p.degree() == 1) {
            let v = *p.vars().iter().next_back().expect("linear");
            let lead = p.coeff(Mono::var(v));
            let mut value = p.clone();
            value.add_term(Mono::var(v), &-&lead);
            let value = value.scale(&(-&lead.inv()?));
            (eqs, assigned) = assign(&eqs, &assigned, v, &value)?;
            continue;
        }
        if let Some(p) = eqs.iter().find(|p| p.vars().len() == 1) {
            let v = *p.vars().iter().next().expect("univariate");
            let (a, b, c) = (p.coeff(Mono::product(v, v)), p.coeff(Mono::var(v)), p.coeff(Mono::ONE));
            let Some(roots) = quadratic_roots(&a, &b, &c) else {
                return Err(FqgError::Unsupported(format!("roots of {p} are not of the form r·ζ")));
            };
            let children = roots
                .into_iter()
                .map(|r| assign(&eqs, &assigned, v, &Poly::constant(r)))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Reduced::Branch(children));
        }
        if let Some(p) = eqs.iter().find(|p| p.terms.len() == 1) {
            let (m, _) = p.terms().next().expect("one term");
            let vs: BTreeSet<u16> = m.vars().collect();
            let children = vs
                .into_iter()
                .map(|v| assign(&eqs, &assigned, v, &Poly::zero()))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Reduced::Branch(children));
        }
        return Ok(Reduced::Stuck(eqs));
    }
}

fn resolve(vars: &[u16], assigned: &BTreeMap<u16, Poly>, values: &mut BTreeMap<u16, CycNum>, free: &mut Vec<u16>) -> Result<()> {
    for &v in vars {
        match assigned.get(&v) {
            Some(p) if p.degree() == 0 => {
                values.insert(v, p.coeff(Mono::ONE));
            }
            Some(p) => free.extend(p.vars()),
            None => free.push(v),
        }
    }
    free.sort_unstable();
    free.dedup();
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> CycNum {
        CycNum::from_int(v)
    }

    #[test]
    fn substitution_and_eval() {
        // t0 t1 + 2 t0 - 1 with t1 = t0 + 1
        let mut p = Poly::zero();
        p.add_term(Mono::product(0, 1), &c(1));
        p.add_term(Mono::var(0), &c(2));
        p.add_term(Mono::ONE, &c(-1));
        let mut t1 = Poly::var(0);
        t1.add_term(Mono::ONE, &c(1));
        let q = p.substitute(1, &t1).unwrap();
        assert_eq!(q.coeff(Mono::product(0, 0)), c(1));
        assert_eq!(q.coeff(Mono::var(0)), c(3));
        let vals = BTreeMap::from([(0u16, c(2))]);
        assert_eq!(q.eval(&vals), Some(c(9)));
        assert!(q.mul(&Poly::var(2)).is_err());
    }

    #[test]
    fn roots_in_cyclotomic_fields() {
        let i = CycNum::i();
        let roots = quadratic_roots(&c(1), &c(0), &-&i).unwrap();
        for r in &roots {
            assert_eq!(r * r, i);
        }
        assert_eq!(roots.len(), 2);
        assert!(quadratic_roots(&c(1), &c(-1), &c(-1)).is_none());
    }

    #[test]
    fn small_system() {
        // t0² = 1, t1 = t0, t0 t2 = 0
        let mut e1 = Poly::zero();
        e1.add_term(Mono::product(0, 0), &c(1));
        e1.add_term(Mono::ONE, &c(-1));
        let mut e2 = Poly::var(1);
        e2.add_term(Mono::var(0), &c(-1));
        let mut e3 = Poly::zero();
        e3.add_term(Mono::product(0, 2), &c(1));
        let (sols, stats) = solve_system(&[0, 1, 2], vec![e1, e2, e3], 100).unwrap();
        assert_eq!(sols.len(), 2);
        assert!(sols.iter().all(|s| s[&0] == s[&1] && s[&2].is_zero()));
        assert_eq!(stats.leaves, 2);
        let mut e4 = Poly::zero();
        e4.add_term(Mono::product(0, 0), &c(1));
        e4.add_term(Mono::ONE, &c(-1));
        assert!(matches!(solve_system(&[0], vec![e4], 0), Err(FqgError::Resource(_))));
    }
}
