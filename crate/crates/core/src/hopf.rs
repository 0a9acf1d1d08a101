//! Multi-matrix *-algebras, tensor elements and Hopf structure tables.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{FqgError, Result};
use crate::exact::CycNum;
use crate::linalg::{Echelon, LinearSolution, SparseRow};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigKind {
    /// `⊕ M_{n_k}` with the matrix-unit basis, block-major and row-major.
    Blocks(Vec<usize>),
    /// Group algebra of a finite group on the basis `{δ_g}` with
    /// `δ_g δ_h = δ_{gh}` and `δ_g* = δ_{g⁻¹}`.
    GroupAlgebra { table: Vec<Vec<usize>>, inverse: Vec<usize>, identity: usize },
}

#[derive(Debug)]
struct SigInner {
    kind: SigKind,
    dim: usize,
    partners: Vec<Vec<(usize, usize)>>,
    star: Vec<usize>,
    unit: Vec<usize>,
    /// `(block, row, col)` of each matrix unit; empty for group algebras.
    units: Vec<(usize, usize, usize)>,
    block_offsets: Vec<usize>,
}

/// Shape of an algebra with a basis closed under products (up to zero) and
/// under `*`.
#[derive(Clone, Debug)]
pub struct AlgSignature(Arc<SigInner>);

impl PartialEq for AlgSignature {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}

impl Eq for AlgSignature {}

impl AlgSignature {
    pub fn blocks(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(FqgError::Parameter("block sizes must be positive and nonempty".into()));
        }
        let mut units = Vec::new();
        let mut offsets = Vec::new();
        for (b, &n) in sizes.iter().enumerate() {
            offsets.push(units.len());
            for r in 0..n {
                for c in 0..n {
                    units.push((b, r, c));
                }
            }
        }
        let index = |b: usize, r: usize, c: usize| offsets[b] + r * sizes[b] + c;
        let partners = units
            .iter()
            .map(|&(b, r, c)| (0..sizes[b]).map(|c2| (index(b, c, c2), index(b, r, c2))).collect())
            .collect();
        let star = units.iter().map(|&(b, r, c)| index(b, c, r)).collect();
        let unit = sizes.iter().enumerate().flat_map(|(b, &n)| (0..n).map(move |r| (b, r))).map(|(b, r)| index(b, r, r)).collect();
        let dim = units.len();
        Ok(AlgSignature(Arc::new(SigInner {
            kind: SigKind::Blocks(sizes),
            dim,
            partners,
            star,
            unit,
            units,
            block_offsets: offsets,
        })))
    }

    /// Group algebra from a multiplication table (`table[g][h] = gh`).
    pub fn group_algebra(table: Vec<Vec<usize>>, inverse: Vec<usize>, identity: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 || inverse.len() != n || identity >= n || table.iter().any(|r| r.len() != n) {
            return Err(FqgError::Parameter("malformed group table".into()));
        }
        let partners = (0..n).map(|g| (0..n).map(|h| (h, table[g][h])).collect()).collect();
        let star = inverse.clone();
        Ok(AlgSignature(Arc::new(SigInner {
            kind: SigKind::GroupAlgebra { table, inverse, identity },
            dim: n,
            partners,
            star,
            unit: vec![identity],
            units: Vec::new(),
            block_offsets: Vec::new(),
        })))
    }

    pub fn kind(&self) -> &SigKind {
        &self.0.kind
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    /// Block sizes, if this is a multi-matrix signature.
    pub fn block_sizes(&self) -> Option<&[usize]> {
        match &self.0.kind {
            SigKind::Blocks(b) => Some(b),
            SigKind::GroupAlgebra { .. } => None,
        }
    }

    /// Index of the matrix unit `E(block, r, c)`.
    pub fn unit_index(&self, block: usize, r: usize, c: usize) -> usize {
        let sizes = self.block_sizes().expect("matrix-unit signature");
        self.0.block_offsets[block] + r * sizes[block] + c
    }

    /// `(block, row, col)` of a matrix unit.
    pub fn unit_position(&self, i: usize) -> Option<(usize, usize, usize)> {
        self.0.units.get(i).copied()
    }

    /// Product of two basis elements, `None` when it is zero.
    pub fn basis_mul(&self, u: usize, v: usize) -> Option<usize> {
        match &self.0.kind {
            SigKind::GroupAlgebra { table, .. } => Some(table[u][v]),
            SigKind::Blocks(sizes) => {
                let (b, r, c) = self.0.units[u];
                let (b2, r2, c2) = self.0.units[v];
                (b == b2 && c == r2).then(|| self.0.block_offsets[b] + r * sizes[b] + c2)
            }
        }
    }

    pub fn basis_star(&self, u: usize) -> usize {
        self.0.star[u]
    }

    /// All `(v, u·v)` with `u·v ≠ 0`.
    pub fn right_partners(&self, u: usize) -> &[(usize, usize)] {
        &self.0.partners[u]
    }

    /// Basis indices whose sum is the unit.
    pub fn unit_indices(&self) -> &[usize] {
        &self.0.unit
    }
}

/// Element of the algebra in canonical-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgElement {
    sig: AlgSignature,
    coords: Vec<CycNum>,
}

impl AlgElement {
    pub fn zero(sig: &AlgSignature) -> Self {
        AlgElement { sig: sig.clone(), coords: vec![CycNum::zero(); sig.dim()] }
    }

    pub fn basis(sig: &AlgSignature, i: usize) -> Self {
        let mut x = AlgElement::zero(sig);
        x.coords[i] = CycNum::one();
        x
    }

    pub fn unit(sig: &AlgSignature) -> Self {
        let mut x = AlgElement::zero(sig);
        for &u in sig.unit_indices() {
            x.coords[u] = CycNum::one();
        }
        x
    }

    pub fn from_coords(sig: &AlgSignature, coords: Vec<CycNum>) -> Result<Self> {
        if coords.len() != sig.dim() {
            return Err(FqgError::Linalg(crate::linalg::LinalgError::Dimension {
                expected: sig.dim(),
                got: coords.len(),
            }));
        }
        Ok(AlgElement { sig: sig.clone(), coords })
    }

    /// Sum of `c · e_i` over the given terms.
    pub fn from_terms(sig: &AlgSignature, terms: &[(usize, CycNum)]) -> Self {
        let mut x = AlgElement::zero(sig);
        for (i, c) in terms {
            x.coords[*i] += c;
        }
        x
    }

    pub fn signature(&self) -> &AlgSignature {
        &self.sig
    }

    pub fn coords(&self) -> &[CycNum] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<CycNum> {
        self.coords
    }

    pub fn coord(&self, i: usize) -> &CycNum {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(CycNum::is_zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &CycNum)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    fn check(&self, other: &AlgElement) -> Result<()> {
        if self.sig == other.sig {
            Ok(())
        } else {
            Err(FqgError::SignatureMismatch)
        }
    }

    pub fn mul(&self, other: &AlgElement) -> Result<AlgElement> {
        self.check(other)?;
        let mut out = AlgElement::zero(&self.sig);
        for (u, a) in self.support() {
            for &(v, w) in self.sig.right_partners(u) {
                let b = &other.coords[v];
                if !b.is_zero() {
                    out.coords[w] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn star(&self) -> AlgElement {
        let mut out = AlgElement::zero(&self.sig);
        for (u, a) in self.support() {
            out.coords[self.sig.basis_star(u)] = a.conj();
        }
        out
    }

    pub fn add(&self, other: &AlgElement) -> Result<AlgElement> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(AlgElement { sig: self.sig.clone(), coords })
    }

    pub fn sub(&self, other: &AlgElement) -> Result<AlgElement> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(AlgElement { sig: self.sig.clone(), coords })
    }

    pub fn scale(&self, c: &CycNum) -> AlgElement {
        AlgElement { sig: self.sig.clone(), coords: self.coords.iter().map(|a| a * c).collect() }
    }

    pub fn add_scaled(&mut self, other: &AlgElement, c: &CycNum) {
        for (u, b) in other.support() {
            self.coords[u] += &(b * c);
        }
    }

    pub fn format(&self, labels: &[String]) -> String {
        format_terms(self.support().map(|(u, c)| (c.clone(), labels[u].clone())))
    }
}

pub fn alg_mul(x: &AlgElement, y: &AlgElement) -> Result<AlgElement> {
    x.mul(y)
}

pub fn alg_star(x: &AlgElement) -> AlgElement {
    x.star()
}

fn format_terms(terms: impl Iterator<Item = (CycNum, String)>) -> String {
    let mut out = String::new();
    for (c, label) in terms {
        if !out.is_empty() {
            out.push_str(" + ");
        }
        let _ = write!(out, "({c})*{label}");
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Which legs of a triple tensor a two-leg tensor occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Legs {
    L12,
    L13,
    L23,
}

/// Element of `A⊗A` or `A⊗A⊗A`, stored sparsely over packed basis tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElem {
    sig: AlgSignature,
    arity: usize,
    coeffs: BTreeMap<u64, CycNum>,
}

impl TensorElem {
    pub fn zero(sig: &AlgSignature, arity: usize) -> Self {
        assert!(arity == 2 || arity == 3, "tensor arity must be 2 or 3");
        TensorElem { sig: sig.clone(), arity, coeffs: BTreeMap::new() }
    }

    /// `1⊗1` or `1⊗1⊗1`.
    pub fn unit(sig: &AlgSignature, arity: usize) -> Self {
        let mut t = TensorElem::zero(sig, arity);
        let us = sig.unit_indices();
        for &a in us {
            for &b in us {
                if arity == 2 {
                    t.add_term(&[a, b], &CycNum::one());
                } else {
                    for &c in us {
                        t.add_term(&[a, b, c], &CycNum::one());
                    }
                }
            }
        }
        t
    }

    pub fn from_terms(sig: &AlgSignature, arity: usize, terms: &[(Vec<usize>, CycNum)]) -> Self {
        let mut t = TensorElem::zero(sig, arity);
        for (legs, c) in terms {
            t.add_term(legs, c);
        }
        t
    }

    /// `x ⊗ y` for algebra elements.
    pub fn pure(x: &AlgElement, y: &AlgElement) -> Self {
        let mut t = TensorElem::zero(x.signature(), 2);
        for (u, a) in x.support() {
            for (v, b) in y.support() {
                t.add_term(&[u, v], &(a * b));
            }
        }
        t
    }

    pub fn signature(&self) -> &AlgSignature {
        &self.sig
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn pack(&self, legs: &[usize]) -> u64 {
        debug_assert_eq!(legs.len(), self.arity);
        let d = self.sig.dim() as u64;
        legs.iter().fold(0u64, |acc, &l| acc * d + l as u64)
    }

    pub fn unpack(&self, idx: u64) -> [usize; 3] {
        let d = self.sig.dim() as u64;
        if self.arity == 2 {
            [(idx / d) as usize, (idx % d) as usize, 0]
        } else {
            [(idx / (d * d)) as usize, ((idx / d) % d) as usize, (idx % d) as usize]
        }
    }

    pub fn add_term(&mut self, legs: &[usize], c: &CycNum) {
        if c.is_zero() {
            return;
        }
        let key = self.pack(legs);
        add_into(&mut self.coeffs, key, c);
    }

    pub fn get(&self, legs: &[usize]) -> CycNum {
        self.coeffs.get(&self.pack(legs)).cloned().unwrap_or_default()
    }

    /// Terms as `(legs, coefficient)`; the third leg is 0 for arity 2.
    pub fn terms(&self) -> impl Iterator<Item = ([usize; 3], &CycNum)> {
        self.coeffs.iter().map(|(k, c)| (self.unpack(*k), c))
    }

    fn check(&self, other: &TensorElem) -> Result<()> {
        if self.sig != other.sig {
            return Err(FqgError::SignatureMismatch);
        }
        if self.arity != other.arity {
            return Err(FqgError::ArityMismatch { expected: self.arity, got: other.arity });
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorElem) -> Result<TensorElem> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            add_into(&mut out.coeffs, *k, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TensorElem) -> Result<TensorElem> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            add_into(&mut out.coeffs, *k, &-c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycNum) -> TensorElem {
        let mut out = TensorElem::zero(&self.sig, self.arity);
        if c.is_zero() {
            return out;
        }
        out.coeffs = self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect();
        out
    }

    pub fn add_scaled(&mut self, other: &TensorElem, c: &CycNum) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.coeffs {
            add_into(&mut self.coeffs, *k, &(v * c));
        }
    }

    pub fn mul(&self, other: &TensorElem) -> Result<TensorElem> {
        self.check(other)?;
        let sig = &self.sig;
        let mut by_first: HashMap<usize, Vec<([usize; 3], &CycNum)>> = HashMap::new();
        for (legs, c) in other.terms() {
            by_first.entry(legs[0]).or_default().push((legs, c));
        }
        let mut acc = Accumulator::new(sig, self.arity);
        for (l1, c1) in self.terms() {
            for &(u2, uu) in sig.right_partners(l1[0]) {
                let Some(list) = by_first.get(&u2) else { continue };
                for (l2, c2) in list {
                    let Some(vv) = sig.basis_mul(l1[1], l2[1]) else { continue };
                    if self.arity == 2 {
                        acc.add(&[uu, vv], c1 * *c2);
                    } else {
                        let Some(ww) = sig.basis_mul(l1[2], l2[2]) else { continue };
                        acc.add(&[uu, vv, ww], c1 * *c2);
                    }
                }
            }
        }
        Ok(acc.finish())
    }

    /// `*⊗*` (or `*⊗*⊗*`).
    pub fn star(&self) -> TensorElem {
        let mut out = TensorElem::zero(&self.sig, self.arity);
        for (legs, c) in self.terms() {
            let s: Vec<usize> = legs[..self.arity].iter().map(|&l| self.sig.basis_star(l)).collect();
            out.add_term(&s, &c.conj());
        }
        out
    }

    /// Swap the two legs of an arity-2 tensor.
    pub fn flip(&self) -> Result<TensorElem> {
        if self.arity != 2 {
            return Err(FqgError::ArityMismatch { expected: 2, got: self.arity });
        }
        let mut out = TensorElem::zero(&self.sig, 2);
        for (legs, c) in self.terms() {
            out.add_term(&[legs[1], legs[0]], c);
        }
        Ok(out)
    }

    /// Place a two-leg tensor into `A⊗A⊗A`, filling the free leg with 1.
    pub fn leg_embed(&self, legs: Legs) -> Result<TensorElem> {
        if self.arity != 2 {
            return Err(FqgError::ArityMismatch { expected: 2, got: self.arity });
        }
        let mut out = TensorElem::zero(&self.sig, 3);
        for (l, c) in self.terms() {
            for &one in self.sig.unit_indices() {
                let t = match legs {
                    Legs::L12 => [l[0], l[1], one],
                    Legs::L13 => [l[0], one, l[1]],
                    Legs::L23 => [one, l[0], l[1]],
                };
                out.add_term(&t, c);
            }
        }
        Ok(out)
    }

    /// `(id⊗φ)(t)` for an arity-2 tensor.
    pub fn slice_right(&self, phi: &Functional) -> AlgElement {
        let mut out = AlgElement::zero(&self.sig);
        for (l, c) in self.terms() {
            let v = &phi.values[l[1]];
            if !v.is_zero() {
                out.coords[l[0]] += &(c * v);
            }
        }
        out
    }

    /// `(φ⊗id)(t)` for an arity-2 tensor.
    pub fn slice_left(&self, phi: &Functional) -> AlgElement {
        let mut out = AlgElement::zero(&self.sig);
        for (l, c) in self.terms() {
            let v = &phi.values[l[0]];
            if !v.is_zero() {
                out.coords[l[1]] += &(c * v);
            }
        }
        out
    }

    pub fn format(&self, labels: &[String]) -> String {
        format_terms(self.terms().map(|(l, c)| {
            let name = l[..self.arity].iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join("⊗");
            (c.clone(), name)
        }))
    }
}

/// Hash-based scratch space for building a tensor term by term.
pub struct Accumulator {
    sig: AlgSignature,
    arity: usize,
    map: HashMap<u64, CycNum>,
}

impl Accumulator {
    pub fn new(sig: &AlgSignature, arity: usize) -> Self {
        Accumulator { sig: sig.clone(), arity, map: HashMap::new() }
    }

    pub fn add(&mut self, legs: &[usize], c: CycNum) {
        if c.is_zero() {
            return;
        }
        let d = self.sig.dim() as u64;
        let key = legs.iter().fold(0u64, |acc, &l| acc * d + l as u64);
        match self.map.entry(key) {
            std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += &c,
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn finish(self) -> TensorElem {
        let mut out = TensorElem::zero(&self.sig, self.arity);
        out.coeffs = self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out
    }
}

fn add_into(map: &mut BTreeMap<u64, CycNum>, key: u64, c: &CycNum) {
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c.clone());
            }
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub fn tensor_mul(s: &TensorElem, t: &TensorElem) -> Result<TensorElem> {
    s.mul(t)
}

pub fn tensor_star(t: &TensorElem) -> TensorElem {
    t.star()
}

pub fn flip(t: &TensorElem) -> Result<TensorElem> {
    t.flip()
}

/// Linear functional given by its values on the canonical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    sig: AlgSignature,
    values: Vec<CycNum>,
}

impl Functional {
    pub fn new(sig: &AlgSignature, values: Vec<CycNum>) -> Result<Self> {
        if values.len() != sig.dim() {
            return Err(FqgError::Linalg(crate::linalg::LinalgError::Dimension {
                expected: sig.dim(),
                got: values.len(),
            }));
        }
        Ok(Functional { sig: sig.clone(), values })
    }

    pub fn from_terms(sig: &AlgSignature, terms: &[(usize, CycNum)]) -> Self {
        let mut values = vec![CycNum::zero(); sig.dim()];
        for (i, c) in terms {
            values[*i] += c;
        }
        Functional { sig: sig.clone(), values }
    }

    pub fn signature(&self) -> &AlgSignature {
        &self.sig
    }

    pub fn values(&self) -> &[CycNum] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &CycNum {
        &self.values[i]
    }

    pub fn apply(&self, x: &AlgElement) -> CycNum {
        let mut acc = CycNum::zero();
        for (u, c) in x.support() {
            if !self.values[u].is_zero() {
                acc += &(c * &self.values[u]);
            }
        }
        acc
    }

    pub fn format(&self, labels: &[String]) -> String {
        format_terms(
            self.values
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(u, c)| (c.clone(), format!("{}*", labels[u]))),
        )
    }
}

/// A finite-dimensional Hopf *-algebra given by structure tables on the
/// canonical basis.
#[derive(Clone, Debug)]
pub struct HopfData {
    name: String,
    sig: AlgSignature,
    delta: Vec<TensorElem>,
    counit: Vec<CycNum>,
    antipode: Vec<AlgElement>,
    unit: AlgElement,
    haar: Option<Functional>,
    labels: Vec<String>,
}

impl HopfData {
    pub fn new(
        name: impl Into<String>,
        sig: AlgSignature,
        delta: Vec<TensorElem>,
        counit: Vec<CycNum>,
        antipode: Vec<AlgElement>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let d = sig.dim();
        if delta.len() != d || counit.len() != d || antipode.len() != d || labels.len() != d {
            return Err(FqgError::Structural(format!("structure tables must have {d} entries")));
        }
        if delta.iter().any(|t| t.arity != 2 || t.sig != sig) || antipode.iter().any(|a| a.sig != sig) {
            return Err(FqgError::SignatureMismatch);
        }
        let unit = AlgElement::unit(&sig);
        Ok(HopfData { name: name.into(), sig, delta, counit, antipode, unit, haar: None, labels })
    }

    pub fn with_haar(mut self, haar: Functional) -> Result<Self> {
        if haar.sig != self.sig {
            return Err(FqgError::SignatureMismatch);
        }
        self.haar = Some(haar);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &AlgSignature {
        &self.sig
    }

    pub fn dim(&self) -> usize {
        self.sig.dim()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis(&self, i: usize) -> AlgElement {
        AlgElement::basis(&self.sig, i)
    }

    pub fn element(&self, terms: &[(&str, CycNum)]) -> AlgElement {
        let t: Vec<(usize, CycNum)> = terms
            .iter()
            .map(|(l, c)| (self.index_of(l).unwrap_or_else(|| panic!("unknown basis label {l}")), c.clone()))
            .collect();
        AlgElement::from_terms(&self.sig, &t)
    }

    pub fn delta_table(&self) -> &[TensorElem] {
        &self.delta
    }

    pub fn counit_table(&self) -> &[CycNum] {
        &self.counit
    }

    pub fn antipode_table(&self) -> &[AlgElement] {
        &self.antipode
    }

    pub fn unit(&self) -> &AlgElement {
        &self.unit
    }

    pub fn haar(&self) -> Option<&Functional> {
        self.haar.as_ref()
    }

    pub fn counit_functional(&self) -> Functional {
        Functional { sig: self.sig.clone(), values: self.counit.clone() }
    }

    fn check_sig(&self, sig: &AlgSignature) -> Result<()> {
        if &self.sig == sig {
            Ok(())
        } else {
            Err(FqgError::SignatureMismatch)
        }
    }

    pub fn delta_of(&self, x: &AlgElement) -> Result<TensorElem> {
        self.check_sig(&x.sig)?;
        let mut out = TensorElem::zero(&self.sig, 2);
        for (u, c) in x.support() {
            out.add_scaled(&self.delta[u], c);
        }
        Ok(out)
    }

    pub fn counit_of(&self, x: &AlgElement) -> CycNum {
        self.counit_functional().apply(x)
    }

    pub fn antipode_of(&self, x: &AlgElement) -> Result<AlgElement> {
        self.check_sig(&x.sig)?;
        let mut out = AlgElement::zero(&self.sig);
        for (u, c) in x.support() {
            out.add_scaled(&self.antipode[u], c);
        }
        Ok(out)
    }

    /// `(Δ⊗id)(t)` for an arity-2 tensor.
    pub fn delta_left(&self, t: &TensorElem) -> TensorElem {
        let mut acc = Accumulator::new(&self.sig, 3);
        for (l, c) in t.terms() {
            for (m, d) in self.delta[l[0]].terms() {
                acc.add(&[m[0], m[1], l[1]], c * d);
            }
        }
        acc.finish()
    }

    /// `(id⊗Δ)(t)` for an arity-2 tensor.
    pub fn delta_right(&self, t: &TensorElem) -> TensorElem {
        let mut acc = Accumulator::new(&self.sig, 3);
        for (l, c) in t.terms() {
            for (m, d) in self.delta[l[1]].terms() {
                acc.add(&[l[0], m[0], m[1]], c * d);
            }
        }
        acc.finish()
    }

    /// `Σ c · f(u) g(v)` over the terms `c u⊗v` of `t`.
    fn multiply_legs(&self, t: &TensorElem, f: impl Fn(usize) -> AlgElement, g: impl Fn(usize) -> AlgElement) -> AlgElement {
        let mut out = AlgElement::zero(&self.sig);
        for (l, c) in t.terms() {
            let p = f(l[0]).mul(&g(l[1])).expect("same signature");
            out.add_scaled(&p, c);
        }
        out
    }

    /// `(φ∗ψ)(x) = (φ⊗ψ)Δ(x)`.
    pub fn convolve(&self, phi: &Functional, psi: &Functional) -> Result<Functional> {
        self.check_sig(&phi.sig)?;
        self.check_sig(&psi.sig)?;
        let values = self
            .delta
            .iter()
            .map(|t| {
                let mut acc = CycNum::zero();
                for (l, c) in t.terms() {
                    let a = &phi.values[l[0]];
                    let b = &psi.values[l[1]];
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(&(c * a) * b);
                    }
                }
                acc
            })
            .collect();
        Ok(Functional { sig: self.sig.clone(), values })
    }

    /// `(id⊗φ)Δ(x)`.
    pub fn right_slice(&self, phi: &Functional, x: &AlgElement) -> Result<AlgElement> {
        Ok(self.delta_of(x)?.slice_right(phi))
    }

    /// Adjoint action `a ▷ b = a_(1) b S(a_(2))`.
    pub fn adjoint_action(&self, a: &AlgElement, b: &AlgElement) -> Result<AlgElement> {
        self.check_sig(&a.sig)?;
        self.check_sig(&b.sig)?;
        let mut out = AlgElement::zero(&self.sig);
        for (u, au) in a.support() {
            for (l, c) in self.delta[u].terms() {
                let s = &self.antipode[l[1]].coords;
                for &(v, w) in self.sig.right_partners(l[0]) {
                    let bv = &b.coords[v];
                    if bv.is_zero() {
                        continue;
                    }
                    for &(x, z) in self.sig.right_partners(w) {
                        if !s[x].is_zero() {
                            out.coords[z] += &(&(&(c * au) * bv) * &s[x]);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Outcome of one axiom over the whole basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    /// Informational checks do not count towards overall success.
    pub informational: bool,
    pub checked: usize,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub basis: Vec<usize>,
    pub labels: Vec<String>,
    pub difference: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub algebra: String,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.informational)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed && !c.informational)
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

pub const AXIOMS: [&str; 12] = [
    "coassociativity",
    "left counit",
    "right counit",
    "left antipode",
    "right antipode",
    "delta multiplicative",
    "delta unital",
    "counit multiplicative",
    "counit unital",
    "antipode antimultiplicative",
    "delta star",
    "antipode involutive",
];

impl HopfData {
    fn run_single(&self, axiom: &str, f: impl Fn(usize) -> Option<String> + Sync) -> AxiomCheck {
        let d = self.dim();
        let found = (0..d).into_par_iter().map(|x| f(x).map(|diff| (x, diff))).find_first(|r| r.is_some()).flatten();
        AxiomCheck {
            axiom: axiom.to_string(),
            passed: found.is_none(),
            informational: false,
            checked: d,
            witness: found.map(|(x, difference)| Witness {
                basis: vec![x],
                labels: vec![self.labels[x].clone()],
                difference,
            }),
        }
    }

    fn run_pairs(&self, axiom: &str, f: impl Fn(usize, usize) -> Option<String> + Sync) -> AxiomCheck {
        let d = self.dim();
        let found = (0..d)
            .into_par_iter()
            .map(|x| (0..d).find_map(|y| f(x, y).map(|diff| (x, y, diff))))
            .find_first(|r| r.is_some())
            .flatten();
        AxiomCheck {
            axiom: axiom.to_string(),
            passed: found.is_none(),
            informational: false,
            checked: d * d,
            witness: found.map(|(x, y, difference)| Witness {
                basis: vec![x, y],
                labels: vec![self.labels[x].clone(), self.labels[y].clone()],
                difference,
            }),
        }
    }

    fn tensor_diff(&self, a: &TensorElem, b: &TensorElem) -> Option<String> {
        if a == b {
            None
        } else {
            Some(a.sub(b).expect("same shape").format(&self.labels))
        }
    }

    fn elem_diff(&self, a: &AlgElement, b: &AlgElement) -> Option<String> {
        if a == b {
            None
        } else {
            Some(a.sub(b).expect("same signature").format(&self.labels))
        }
    }

    fn scalar_diff(a: &CycNum, b: &CycNum) -> Option<String> {
        if a == b {
            None
        } else {
            Some((a - b).to_string())
        }
    }

    fn antipode_element(&self, u: usize) -> AlgElement {
        self.antipode[u].clone()
    }

    /// Run the named axiom check.
    pub fn check_axiom(&self, axiom: &str) -> Result<AxiomCheck> {
        let sig = &self.sig;
        let basis = |u: usize| AlgElement::basis(sig, u);
        let check = match axiom {
            "coassociativity" => self.run_single(axiom, |x| {
                let dx = &self.delta[x];
                self.tensor_diff(&self.delta_left(dx), &self.delta_right(dx))
            }),
            "left counit" => self.run_single(axiom, |x| {
                let lhs = self.delta[x].slice_left(&self.counit_functional());
                self.elem_diff(&lhs, &basis(x))
            }),
            "right counit" => self.run_single(axiom, |x| {
                let lhs = self.delta[x].slice_right(&self.counit_functional());
                self.elem_diff(&lhs, &basis(x))
            }),
            "left antipode" => self.run_single(axiom, |x| {
                let lhs = self.multiply_legs(&self.delta[x], |u| self.antipode_element(u), basis);
                self.elem_diff(&lhs, &self.unit.scale(&self.counit[x]))
            }),
            "right antipode" => self.run_single(axiom, |x| {
                let lhs = self.multiply_legs(&self.delta[x], basis, |u| self.antipode_element(u));
                self.elem_diff(&lhs, &self.unit.scale(&self.counit[x]))
            }),
            "delta multiplicative" => self.run_pairs(axiom, |x, y| {
                let lhs = match sig.basis_mul(x, y) {
                    Some(w) => self.delta[w].clone(),
                    None => TensorElem::zero(sig, 2),
                };
                let rhs = self.delta[x].mul(&self.delta[y]).expect("same shape");
                self.tensor_diff(&lhs, &rhs)
            }),
            "delta unital" => {
                let lhs = self.delta_of(&self.unit)?;
                let rhs = TensorElem::unit(sig, 2);
                let diff = self.tensor_diff(&lhs, &rhs);
                AxiomCheck {
                    axiom: axiom.to_string(),
                    passed: diff.is_none(),
                    informational: false,
                    checked: 1,
                    witness: diff.map(|difference| Witness { basis: vec![], labels: vec!["1".into()], difference }),
                }
            }
            "counit multiplicative" => self.run_pairs(axiom, |x, y| {
                let lhs = sig.basis_mul(x, y).map_or_else(CycNum::zero, |w| self.counit[w].clone());
                Self::scalar_diff(&lhs, &(&self.counit[x] * &self.counit[y]))
            }),
            "counit unital" => {
                let v = self.counit_of(&self.unit);
                let diff = Self::scalar_diff(&v, &CycNum::one());
                AxiomCheck {
                    axiom: axiom.to_string(),
                    passed: diff.is_none(),
                    informational: false,
                    checked: 1,
                    witness: diff.map(|difference| Witness { basis: vec![], labels: vec!["1".into()], difference }),
                }
            }
            "antipode antimultiplicative" => self.run_pairs(axiom, |x, y| {
                let lhs = sig.basis_mul(x, y).map_or_else(|| AlgElement::zero(sig), |w| self.antipode[w].clone());
                let rhs = self.antipode[y].mul(&self.antipode[x]).expect("same signature");
                self.elem_diff(&lhs, &rhs)
            }),
            "delta star" => self.run_single(axiom, |x| {
                let lhs = &self.delta[sig.basis_star(x)];
                self.tensor_diff(lhs, &self.delta[x].star())
            }),
            "antipode involutive" => {
                let mut c = self.run_single(axiom, |x| {
                    let s = self.antipode_of(&self.antipode[x].star()).expect("same signature").star();
                    self.elem_diff(&s, &basis(x))
                });
                c.informational = true;
                c
            }
            other => return Err(FqgError::Parameter(format!("unknown axiom `{other}`"))),
        };
        Ok(check)
    }

    /// Check every Hopf *-algebra axiom on the canonical basis.
    pub fn verify_hopf(&self) -> AxiomReport {
        self.verify_axioms(&AXIOMS).expect("known axioms")
    }

    pub fn verify_axioms(&self, axioms: &[&str]) -> Result<AxiomReport> {
        let checks = axioms.iter().map(|a| self.check_axiom(a)).collect::<Result<Vec<_>>>()?;
        Ok(AxiomReport { algebra: self.name.clone(), checks })
    }
}

pub fn verify_hopf(h: &HopfData) -> AxiomReport {
    h.verify_hopf()
}

pub fn convolve(h: &HopfData, phi: &Functional, psi: &Functional) -> Result<Functional> {
    h.convolve(phi, psi)
}

/// Default eigenvalue tolerance for the numeric positivity check.
pub const POSITIVITY_TOLERANCE_BITS: u32 = 40;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericCheck {
    pub passed: bool,
    pub min_eigenvalue: f64,
    pub tolerance: f64,
    pub method: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HaarReport {
    pub normalized: bool,
    pub left_invariant: bool,
    pub right_invariant: bool,
    pub star_compatible: bool,
    pub positivity: NumericCheck,
    pub witness: Option<Witness>,
}

impl HaarReport {
    pub fn exact_pass(&self) -> bool {
        self.normalized && self.left_invariant && self.right_invariant && self.star_compatible
    }

    pub fn all_pass(&self) -> bool {
        self.exact_pass() && self.positivity.passed
    }
}

impl HopfData {
    pub fn verify_haar(&self, h: &Functional) -> Result<HaarReport> {
        self.verify_haar_with(h, POSITIVITY_TOLERANCE_BITS)
    }

    pub fn verify_haar_with(&self, h: &Functional, tolerance_bits: u32) -> Result<HaarReport> {
        self.check_sig(&h.sig)?;
        let normalized = h.apply(&self.unit).is_one();
        let mut witness = None;
        let mut invariant = |slice: &dyn Fn(&TensorElem) -> AlgElement| {
            for x in 0..self.dim() {
                let lhs = slice(&self.delta[x]);
                let rhs = self.unit.scale(&h.values[x]);
                if let Some(d) = self.elem_diff(&lhs, &rhs) {
                    if witness.is_none() {
                        witness = Some(Witness { basis: vec![x], labels: vec![self.labels[x].clone()], difference: d });
                    }
                    return false;
                }
            }
            true
        };
        let left_invariant = invariant(&|t: &TensorElem| t.slice_right(h));
        let right_invariant = invariant(&|t: &TensorElem| t.slice_left(h));
        let star_compatible = (0..self.dim()).all(|x| h.values[self.sig.basis_star(x)] == h.values[x].conj());
        let positivity = self.gram_positivity(h, tolerance_bits);
        Ok(HaarReport { normalized, left_invariant, right_invariant, star_compatible, positivity, witness })
    }

    /// Smallest eigenvalue of `G_uv = h(u* v)` under the complex embedding.
    pub fn gram_positivity(&self, h: &Functional, tolerance_bits: u32) -> NumericCheck {
        let d = self.dim();
        let approx: Vec<Complex64> = h.values.iter().map(|v| v.embed_approx(60)).collect();
        let mut g = DMatrix::<Complex64>::zeros(d, d);
        for u in 0..d {
            let us = self.sig.basis_star(u);
            for &(v, w) in self.sig.right_partners(us) {
                g[(u, v)] = approx[w];
            }
        }
        let min = g.symmetric_eigen().eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        let tolerance = 2f64.powi(-(tolerance_bits as i32));
        NumericCheck { passed: min >= -tolerance, min_eigenvalue: min, tolerance, method: "numeric" }
    }

    /// The unique state with `(id⊗h)Δ(x) = h(x)1` and `h(1) = 1`.
    pub fn solve_haar(&self) -> Result<Functional> {
        let d = self.dim();
        let mut e = Echelon::new(d + 1);
        let unit = &self.unit;
        for x in 0..d {
            // coefficient of basis u in (id⊗h)Δ(x) − h(x)·1
            let mut rows: BTreeMap<usize, SparseRow> = BTreeMap::new();
            for (l, c) in self.delta[x].terms() {
                let row = rows.entry(l[0]).or_default();
                *row.entry(l[1]).or_insert_with(CycNum::zero) += c;
            }
            for (u, c) in unit.support() {
                let row = rows.entry(u).or_default();
                *row.entry(x).or_insert_with(CycNum::zero) -= c;
            }
            for (_, mut row) in rows {
                row.retain(|_, v| !v.is_zero());
                e.insert(row);
            }
        }
        let mut norm: SparseRow = unit.support().map(|(u, c)| (u, c.clone())).collect();
        norm.insert(d, CycNum::one());
        e.insert(norm);
        match e.solve_augmented() {
            LinearSolution::Inconsistent => Err(FqgError::Structural("no invariant normalized functional".into())),
            LinearSolution::Solutions { nullspace, .. } if !nullspace.is_empty() => Err(FqgError::Structural(
                format!("invariant functional is not unique ({} free parameters)", nullspace.len()),
            )),
            LinearSolution::Solutions { particular, .. } => Functional::new(&self.sig, particular),
        }
    }
}

pub fn verify_haar(h: &HopfData, candidate: &Functional) -> Result<HaarReport> {
    h.verify_haar(candidate)
}

pub fn solve_haar(h: &HopfData) -> Result<Functional> {
    h.solve_haar()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `C(Z_2)` written out by hand.
    fn c_z2() -> HopfData {
        let sig = AlgSignature::blocks(vec![1, 1]).unwrap();
        let one = CycNum::one();
        let delta = vec![
            TensorElem::from_terms(&sig, 2, &[(vec![0, 0], one.clone()), (vec![1, 1], one.clone())]),
            TensorElem::from_terms(&sig, 2, &[(vec![0, 1], one.clone()), (vec![1, 0], one.clone())]),
        ];
        let antipode = vec![AlgElement::basis(&sig, 0), AlgElement::basis(&sig, 1)];
        HopfData::new("C(Z2)", sig, delta, vec![one, CycNum::zero()], antipode, vec!["d0".into(), "d1".into()]).unwrap()
    }

    #[test]
    fn matrix_units_multiply() {
        let sig = AlgSignature::blocks(vec![1, 1, 1, 1, 2]).unwrap();
        assert_eq!(sig.dim(), 8);
        let a12 = sig.unit_index(4, 0, 1);
        let a21 = sig.unit_index(4, 1, 0);
        let a11 = sig.unit_index(4, 0, 0);
        assert_eq!(sig.basis_mul(a12, a21), Some(a11));
        assert_eq!(sig.basis_mul(a21, a21), None);
        assert_eq!(sig.basis_star(a12), a21);
        let e2 = AlgElement::basis(&sig, 1);
        assert_eq!(e2.mul(&e2).unwrap(), e2);
        assert!(e2.mul(&AlgElement::basis(&sig, 2)).unwrap().is_zero());
        let unit = AlgElement::unit(&sig);
        let x = AlgElement::from_terms(&sig, &[(a12, CycNum::i()), (0, CycNum::frac(1, 2))]);
        assert_eq!(unit.mul(&x).unwrap(), x);
        assert_eq!(x.mul(&unit).unwrap(), x);
        // (xy)* = y* x*
        let y = AlgElement::from_terms(&sig, &[(a21, CycNum::from_int(3)), (a11, CycNum::i())]);
        assert_eq!(x.mul(&y).unwrap().star(), y.star().mul(&x.star()).unwrap());
    }

    #[test]
    fn signature_mismatch() {
        let a = AlgSignature::blocks(vec![1, 1]).unwrap();
        let b = AlgSignature::blocks(vec![2]).unwrap();
        assert_eq!(AlgElement::unit(&a).mul(&AlgElement::unit(&b)), Err(FqgError::SignatureMismatch));
        assert!(AlgSignature::blocks(vec![]).is_err());
    }

    #[test]
    fn tensor_operations() {
        let sig = AlgSignature::blocks(vec![1, 1, 1, 1, 2]).unwrap();
        let a11 = sig.unit_index(4, 0, 0);
        let a12 = sig.unit_index(4, 0, 1);
        let one = CycNum::one();
        let t = TensorElem::from_terms(&sig, 2, &[(vec![a12, a12], one.clone())]);
        let s = TensorElem::from_terms(&sig, 2, &[(vec![a11, a11], one.clone())]);
        assert_eq!(s.mul(&t).unwrap(), t);
        assert_eq!(TensorElem::unit(&sig, 2).mul(&t).unwrap(), t);
        let e = TensorElem::from_terms(&sig, 2, &[(vec![0, 1], one.clone())]);
        assert_eq!(e.flip().unwrap(), TensorElem::from_terms(&sig, 2, &[(vec![1, 0], one.clone())]));
        let r13 = t.leg_embed(Legs::L13).unwrap();
        assert_eq!(r13.arity(), 3);
        assert_eq!(r13.len(), 6);
        assert!(TensorElem::unit(&sig, 2).mul(&TensorElem::unit(&sig, 3)).is_err());
    }

    #[test]
    fn hand_built_function_algebra() {
        let h = c_z2();
        let report = h.verify_hopf();
        assert!(report.all_pass(), "{report:?}");
        let haar = h.solve_haar().unwrap();
        assert_eq!(haar.values(), &[CycNum::frac(1, 2), CycNum::frac(1, 2)]);
        assert!(h.verify_haar(&haar).unwrap().all_pass());
        let eps = h.counit_functional();
        assert_eq!(h.convolve(&eps, &haar).unwrap(), haar);
        let bad = h.verify_haar(&eps).unwrap();
        assert!(bad.normalized && !bad.left_invariant);
    }

    #[test]
    fn broken_counit_is_reported() {
        let h = c_z2();
        let sig = h.signature().clone();
        let broken = HopfData::new(
            "broken",
            sig.clone(),
            h.delta_table().to_vec(),
            vec![CycNum::one(), CycNum::one()],
            h.antipode_table().to_vec(),
            h.labels().to_vec(),
        )
        .unwrap();
        let report = broken.verify_hopf();
        assert!(!report.all_pass());
        let c = report.check("left counit").unwrap();
        assert!(!c.passed);
        assert_eq!(c.witness.as_ref().unwrap().labels, vec!["d0".to_string()]);
    }
}
