//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! A [`CycNum`] stores its coordinates in the power basis
//! `1, ζ_n, …, ζ_n^{φ(n)-1}` of `Q(ζ_n)`, i.e. reduced modulo the n-th
//! cyclotomic polynomial. That basis gives a unique representation, so a
//! number is zero exactly when its coordinate list is empty. Binary
//! operations promote both operands to the field of conductor `lcm(n1, n2)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

mod q;

pub use q::Q;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("invalid root-of-unity order {0}")]
    InvalidOrder(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar literal {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Per-conductor reduction data: `powers[e]` holds ζ_n^e in the power basis.
struct FieldTable {
    phi: usize,
    powers: Vec<Vec<(u32, i64)>>,
}

const CACHED_ORDERS: usize = 1024;

/// Reduction tables are built once per conductor and never change, so every
/// `CycNum` stays a plain immutable value.
fn field_table(n: u32) -> &'static FieldTable {
    static SMALL: [OnceLock<FieldTable>; CACHED_ORDERS] = [const { OnceLock::new() }; CACHED_ORDERS];
    static LARGE: OnceLock<RwLock<HashMap<u32, &'static FieldTable>>> = OnceLock::new();
    if (n as usize) < CACHED_ORDERS {
        return SMALL[n as usize].get_or_init(|| build_table(n));
    }
    let large = LARGE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = large.read().expect("field table lock").get(&n) {
        return t;
    }
    let mut w = large.write().expect("field table lock");
    w.entry(n).or_insert_with(|| Box::leak(Box::new(build_table(n))))
}

/// Coefficients (low degree first) of the n-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    // x^n - 1 divided by every Φ_d with d | n, d < n
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = -BigInt::one();
    poly[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = div_monic(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

fn div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

fn build_table(n: u32) -> FieldTable {
    let phi_poly = cyclotomic_polynomial(n);
    let phi = phi_poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![BigInt::zero(); phi + 1];
    cur[0] = BigInt::one();
    for _ in 0..n {
        powers.push(
            cur[..phi]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as u32, c.to_i64().expect("small cyclotomic reduction coefficient")))
                .collect(),
        );
        // multiply by x and reduce the degree-φ coefficient with the monic Φ_n
        cur.rotate_right(1);
        let top = std::mem::take(&mut cur[0]);
        debug_assert!(top.is_zero() || phi == 0);
        let lead = cur[phi].clone();
        if !lead.is_zero() {
            for (j, c) in phi_poly.iter().enumerate().take(phi) {
                cur[j] -= &lead * c;
            }
            cur[phi] = BigInt::zero();
        }
    }
    FieldTable { phi, powers }
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|&j| j.gcd(&n) == 1).count() as u32
}

/// An element of `Q(ζ_n)` with arbitrary-precision rational coordinates.
#[derive(Clone, Debug)]
pub struct CycNum {
    order: u32,
    terms: Vec<(u32, Q)>,
}

impl Default for CycNum {
    fn default() -> Self {
        CycNum::zero()
    }
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum { order: 1, terms: Vec::new() }
    }

    pub fn one() -> Self {
        CycNum::from_q(Q::ONE)
    }

    pub fn from_q(r: Q) -> Self {
        if r.is_zero() {
            CycNum::zero()
        } else {
            CycNum { order: 1, terms: vec![(0, r)] }
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        CycNum::from_q(Q::from_big(r))
    }

    pub fn from_int(v: i64) -> Self {
        CycNum::from_q(Q::int(v))
    }

    /// Panics when `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        CycNum::from_q(Q::frac(num, den))
    }

    /// `ζ_n^e`; negative exponents are taken modulo `n`.
    pub fn root_of_unity(n: u32, e: i64) -> Result<Self, ExactError> {
        if n == 0 {
            return Err(ExactError::InvalidOrder(0));
        }
        let e = e.rem_euclid(n as i64) as usize;
        let table = field_table(n);
        let terms = table.powers[e]
            .iter()
            .map(|(i, c)| (*i, Q::int(*c)))
            .collect();
        Ok(CycNum { order: n, terms }.tidy())
    }

    /// The imaginary unit `√−1 = ζ_4`.
    pub fn i() -> Self {
        CycNum::root_of_unity(4, 1).expect("order 4")
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power-basis coordinates `(exponent, coefficient)` with no zeros stored.
    pub fn terms(&self) -> &[(u32, Q)] {
        &self.terms
    }

    pub fn coefficients(&self) -> Vec<(u32, Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c.to_big())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == 0)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.to_q().map(|q| q.to_big())
    }

    pub fn to_q(&self) -> Option<Q> {
        match self.terms.as_slice() {
            [] => Some(Q::ZERO),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    fn tidy(mut self) -> Self {
        if self.is_rational() {
            self.order = 1;
        }
        self
    }

    /// Reduce a dense exponent vector (length `n`, exponents mod `n`).
    fn from_dense(n: u32, dense: Vec<Q>) -> Self {
        let table = field_table(n);
        let phi = table.phi;
        let mut out: Vec<Q> = vec![Q::ZERO; phi];
        for (e, c) in dense.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e < phi {
                out[e] += &c;
            } else {
                for (j, t) in &table.powers[e] {
                    out[*j as usize] += &c.mul_int(*t);
                }
            }
        }
        let terms = out
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32, c))
            .collect();
        CycNum { order: n, terms }.tidy()
    }

    /// Re-express in `Q(ζ_n)`; `n` must be a multiple of the current order.
    pub fn promote(&self, n: u32) -> Self {
        assert!(n.is_multiple_of(self.order), "promote: {n} is not a multiple of {}", self.order);
        if n == self.order || self.is_rational() {
            let mut c = self.clone();
            if !c.is_rational() {
                c.order = n;
            }
            return c;
        }
        let step = n / self.order;
        let mut dense = vec![Q::ZERO; n as usize];
        for (e, c) in &self.terms {
            dense[(e * step) as usize] += c;
        }
        CycNum::from_dense(n, dense)
    }

    fn common(a: &CycNum, b: &CycNum) -> u32 {
        a.order.lcm(&b.order)
    }

    fn scale(&self, r: &Q) -> Self {
        if r.is_zero() {
            return CycNum::zero();
        }
        CycNum {
            order: self.order,
            terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect(),
        }
    }

    fn add_impl(&self, other: &CycNum, negate: bool) -> CycNum {
        let n = CycNum::common(self, other);
        let a = if self.order == n || self.is_rational() { None } else { Some(self.promote(n)) };
        let b = if other.order == n || other.is_rational() { None } else { Some(other.promote(n)) };
        let at = a.as_ref().map_or(&self.terms, |x| &x.terms);
        let bt = b.as_ref().map_or(&other.terms, |x| &x.terms);
        let mut out = Vec::with_capacity(at.len() + bt.len());
        let (mut i, mut j) = (0, 0);
        while i < at.len() || j < bt.len() {
            let take_a = j >= bt.len() || (i < at.len() && at[i].0 < bt[j].0);
            let take_b = i >= at.len() || (j < bt.len() && bt[j].0 < at[i].0);
            if take_a {
                out.push(at[i].clone());
                i += 1;
            } else if take_b {
                let c = if negate { -&bt[j].1 } else { bt[j].1.clone() };
                out.push((bt[j].0, c));
                j += 1;
            } else {
                let c = if negate { &at[i].1 - &bt[j].1 } else { &at[i].1 + &bt[j].1 };
                if !c.is_zero() {
                    out.push((at[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        CycNum { order: n, terms: out }.tidy()
    }

    fn mul_impl(&self, other: &CycNum) -> CycNum {
        if self.is_zero() || other.is_zero() {
            return CycNum::zero();
        }
        if let Some(r) = self.to_q() {
            return other.scale(&r);
        }
        if let Some(r) = other.to_q() {
            return self.scale(&r);
        }
        let n = CycNum::common(self, other);
        let pa;
        let pb;
        let a = if self.order == n { self } else { pa = self.promote(n); &pa };
        let b = if other.order == n { other } else { pb = other.promote(n); &pb };
        let mut dense = vec![Q::ZERO; n as usize];
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let slot = &mut dense[((ea + eb) % n) as usize];
                *slot += &(ca * cb);
            }
        }
        CycNum::from_dense(n, dense)
    }

    /// Field automorphism `ζ_n ↦ ζ_n^j` for `j` coprime to the order.
    pub fn galois(&self, j: u32) -> CycNum {
        if self.is_rational() {
            return self.clone();
        }
        let n = self.order;
        let mut dense = vec![Q::ZERO; n as usize];
        for (e, c) in &self.terms {
            dense[((*e as u64 * j as u64) % n as u64) as usize] += c;
        }
        CycNum::from_dense(n, dense)
    }

    /// Complex conjugate (the automorphism `ζ ↦ ζ^{-1}`).
    pub fn conj(&self) -> CycNum {
        if self.is_rational() {
            return self.clone();
        }
        self.galois(self.order - 1)
    }

    /// Multiplicative inverse via the Galois norm.
    pub fn inv(&self) -> Result<CycNum, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if let Some(r) = self.to_q() {
            return Ok(CycNum::from_q(r.recip()));
        }
        let n = self.order;
        if let [(e, c)] = self.terms.as_slice() {
            let mut dense = vec![Q::ZERO; n as usize];
            dense[((n - e) % n) as usize] = c.recip();
            return Ok(CycNum::from_dense(n, dense));
        }
        let mut others = CycNum::one();
        for j in 2..n {
            if j.gcd(&n) == 1 {
                others = &others * &self.galois(j);
            }
        }
        let norm = (self * &others)
            .to_q()
            .expect("Galois norm of a cyclotomic number is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum, ExactError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<CycNum, ExactError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = CycNum::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Same number expressed over the smallest conductor that contains it.
    pub fn normalize_conductor(&self) -> CycNum {
        if self.is_rational() {
            return self.clone();
        }
        let n = self.order;
        for d in 1..n {
            if !n.is_multiple_of(d) {
                continue;
            }
            if let Some(c) = self.descend(d) {
                return c;
            }
        }
        self.clone()
    }

    /// Express in `Q(ζ_d)` for `d | order`, if the number lies there.
    fn descend(&self, d: u32) -> Option<CycNum> {
        let n = self.order;
        let phi_n = field_table(n).phi;
        let phi_d = field_table(d).phi;
        // columns: ζ_d^f promoted into Q(ζ_n), f < φ(d)
        let mut cols = Vec::with_capacity(phi_d);
        for f in 0..phi_d {
            let z = CycNum::root_of_unity(d, f as i64).ok()?.promote(n);
            let mut col = vec![Rational::zero(); phi_n];
            for (e, c) in &z.terms {
                col[*e as usize] = c.to_big();
            }
            cols.push(col);
        }
        let mut rhs = vec![Rational::zero(); phi_n];
        for (e, c) in &self.terms {
            rhs[*e as usize] = c.to_big();
        }
        let sol = solve_rational(cols, rhs)?;
        let terms: Vec<(u32, Q)> = sol
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32, Q::from_big(c)))
            .collect();
        Some(CycNum { order: d, terms }.tidy())
    }

    /// A square root when the number is a rational square times a root of
    /// unity; `None` otherwise.
    pub fn sqrt_monomial(&self) -> Option<CycNum> {
        if self.is_zero() {
            return Some(CycNum::zero());
        }
        let n = self.order;
        let m = if n.is_multiple_of(2) { n } else { 2 * n };
        for e in 0..m {
            let rot = CycNum::root_of_unity(m, -(e as i64)).ok()?;
            let b = self * &rot;
            if let Some(r) = b.to_rational() {
                if r.is_positive() {
                    let s = rational_sqrt(&r)?;
                    let root = CycNum::root_of_unity(2 * m, e as i64).ok()?;
                    return Some(root.scale(&Q::from_big(s)));
                }
            }
        }
        None
    }

    /// Fixed-point image under `ζ_n ↦ exp(2πi/n)`: integers `(re, im)` with
    /// `|re/2^bits − Re| < 2^-bits` and likewise for the imaginary part.
    pub fn embed_fixed(&self, bits: u32) -> (BigInt, BigInt) {
        let mag: u64 = self
            .terms
            .iter()
            .map(|(_, c)| c.to_big().numer().bits() + 1)
            .max()
            .unwrap_or(0);
        let guard = bits + 40 + mag as u32 + 2 * (64 - (self.terms.len() as u64).leading_zeros());
        let pi = fixed_pi(guard);
        let mut re = BigInt::zero();
        let mut im = BigInt::zero();
        for (e, c) in &self.terms {
            let c = c.to_big();
            let angle = (&pi * BigInt::from(2 * *e as u64)) / BigInt::from(self.order as u64);
            let (cs, sn) = fixed_cos_sin(&angle, guard);
            re += (c.numer() * cs) / c.denom();
            im += (c.numer() * sn) / c.denom();
        }
        let shift = guard - bits;
        (round_shift(&re, shift), round_shift(&im, shift))
    }

    /// Complex approximation; error below `2^-precision` before the final
    /// rounding to `f64`.
    pub fn embed_approx(&self, precision: u32) -> Complex64 {
        let bits = precision.max(64);
        let (re, im) = self.embed_fixed(bits);
        let scale = Rational::from_integer(BigInt::one() << bits);
        let to_f = |v: BigInt| (Rational::from_integer(v) / &scale).to_f64().unwrap_or(f64::NAN);
        Complex64::new(to_f(re), to_f(im))
    }
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Solve `Σ x_f cols[f] = rhs` over the rationals; `None` when inconsistent.
fn solve_rational(cols: Vec<Vec<Rational>>, rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let nrows = rhs.len();
    let ncols = cols.len();
    let mut m: Vec<Vec<Rational>> = (0..nrows)
        .map(|r| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..nrows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=ncols {
                    let t = &f * &m[row][c];
                    m[r][c] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[ncols].is_zero()) {
        return None;
    }
    let mut sol = vec![Rational::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = m[r][ncols].clone();
    }
    Some(sol)
}

fn round_shift(v: &BigInt, shift: u32) -> BigInt {
    if shift == 0 {
        return v.clone();
    }
    let half = BigInt::one() << (shift - 1);
    if v.sign() == Sign::Minus {
        -((-v + half) >> shift)
    } else {
        (v + half) >> shift
    }
}

/// `atan(1/x)` scaled by `2^bits`.
fn fixed_atan_inv(x: u64, bits: u32) -> BigInt {
    let one = BigInt::one() << bits;
    let x2 = BigInt::from(x * x);
    let mut term = &one / BigInt::from(x);
    let mut sum = term.clone();
    let mut k: u64 = 1;
    while !term.is_zero() {
        term = &term / &x2;
        let t = &term / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        k += 1;
    }
    sum
}

fn fixed_pi(bits: u32) -> BigInt {
    // Machin: π = 16 atan(1/5) − 4 atan(1/239)
    BigInt::from(16) * fixed_atan_inv(5, bits) - BigInt::from(4) * fixed_atan_inv(239, bits)
}

fn fixed_cos_sin(x: &BigInt, bits: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << bits;
    let mut cos = one.clone();
    let mut sin = x.clone();
    let x2 = (x * x) >> bits;
    let mut term_c = one;
    let mut term_s = x.clone();
    let mut k: u64 = 1;
    loop {
        term_c = -((&term_c * &x2) >> bits) / BigInt::from((2 * k - 1) * (2 * k));
        term_s = -((&term_s * &x2) >> bits) / BigInt::from((2 * k) * (2 * k + 1));
        if term_c.is_zero() && term_s.is_zero() {
            break;
        }
        cos += &term_c;
        sin += &term_s;
        k += 1;
    }
    (cos, sin)
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.terms == other.terms;
        }
        if self.is_rational() || other.is_rational() {
            // a rational never equals a non-rational in canonical form
            return self.is_rational() && other.is_rational() && self.terms == other.terms;
        }
        let n = CycNum::common(self, other);
        self.promote(n).terms == other.promote(n).terms
    }
}

impl Eq for CycNum {}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a CycNum> for &'a CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &'a CycNum) -> CycNum {
                let f: fn(&CycNum, &CycNum) -> CycNum = $body;
                f(self, rhs)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &'a CycNum) -> CycNum {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));

/// Panics on a zero divisor; use [`CycNum::checked_div`] when that can occur.
impl<'a> Div<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn div(self, rhs: &'a CycNum) -> CycNum {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Div<CycNum> for CycNum {
    type Output = CycNum;
    fn div(self, rhs: CycNum) -> CycNum {
        &self / &rhs
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(mut self) -> CycNum {
        for (_, c) in self.terms.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -(self.clone())
    }
}

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        if rhs.is_zero() {
            return;
        }
        *self = self.add_impl(rhs, false);
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        if rhs.is_zero() {
            return;
        }
        *self = self.add_impl(rhs, true);
    }
}

impl MulAssign<&CycNum> for CycNum {
    fn mul_assign(&mut self, rhs: &CycNum) {
        *self = self.mul_impl(rhs);
    }
}

impl From<i64> for CycNum {
    fn from(v: i64) -> Self {
        CycNum::from_int(v)
    }
}

impl From<Rational> for CycNum {
    fn from(r: Rational) -> Self {
        CycNum::from_rational(r)
    }
}

/// Canonical scalar literal: terms of the minimal-conductor power basis in
/// descending exponent order, e.g. `1/2*z8^3 - 1/4`.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.normalize_conductor();
        if c.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, coef)) in c.terms.iter().rev().enumerate() {
            let neg = coef.is_negative();
            let mag = coef.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *e == 0 {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*z{}^{e}", c.order)?;
            }
        }
        Ok(())
    }
}

impl FromStr for CycNum {
    type Err = ExactError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| ExactError::Parse { input: input.to_string(), reason: reason.to_string() };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty literal"));
        }
        let bytes = s.as_bytes();
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut negative = false;
        if bytes[0] == b'+' || bytes[0] == b'-' {
            negative = bytes[0] == b'-';
            start = 1;
        }
        let mut i = start;
        while i <= bytes.len() {
            let at_sep = i == bytes.len()
                || ((bytes[i] == b'+' || bytes[i] == b'-') && i > start && bytes[i - 1] != b'^');
            if at_sep {
                if i == start {
                    return Err(err("empty term"));
                }
                terms.push((negative, &s[start..i]));
                if i < bytes.len() {
                    negative = bytes[i] == b'-';
                }
                start = i + 1;
            }
            i += 1;
        }
        let mut acc = CycNum::zero();
        for (neg, t) in terms {
            let (coef_str, root) = match t.find('z') {
                Some(pos) => {
                    let coef = t[..pos].strip_suffix('*').unwrap_or(&t[..pos]);
                    if pos > 0 && !t[..pos].ends_with('*') {
                        return Err(err("expected '*' before root"));
                    }
                    (coef, Some(&t[pos + 1..]))
                }
                None => (t, None),
            };
            let coef = if coef_str.is_empty() {
                Rational::one()
            } else {
                parse_rational(coef_str).ok_or_else(|| err("bad rational coefficient"))?
            };
            let mut term = CycNum::from_rational(coef);
            if let Some(root) = root {
                let (n_str, e_str) = match root.split_once('^') {
                    Some((n, e)) => (n, e),
                    None => (root, "1"),
                };
                let n: u32 = n_str.parse().map_err(|_| err("bad root order"))?;
                let e: i64 = e_str.parse().map_err(|_| err("bad exponent"))?;
                let z = CycNum::root_of_unity(n, e).map_err(|_| err("root order must be positive"))?;
                term = &term * &z;
            }
            if neg {
                acc -= &term;
            } else {
                acc += &term;
            }
        }
        Ok(acc)
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Arithmetic entry point mirroring the four field operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn cyc_arith(op: ArithOp, a: &CycNum, b: &CycNum) -> Result<CycNum, ExactError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, e: i64) -> CycNum {
        CycNum::root_of_unity(n, e).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials() {
        let p = |n| cyclotomic_polynomial(n).iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>();
        assert_eq!(p(1), vec![-1, 1]);
        assert_eq!(p(4), vec![1, 0, 1]);
        assert_eq!(p(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(p(6), vec![1, -1, 1]);
        assert_eq!(p(7), vec![1; 7]);
        assert_eq!(totient(15), 8);
    }

    #[test]
    fn roots_of_unity() {
        let i = z(4, 1);
        assert_eq!(&i * &i, CycNum::from_int(-1));
        assert_eq!(z(1, 0), CycNum::one());
        assert_eq!(&z(8, 1) * &z(8, 1), i);
        assert_eq!(z(8, 1).pow(8).unwrap(), CycNum::one());
        assert_eq!(CycNum::root_of_unity(0, 1), Err(ExactError::InvalidOrder(0)));
    }

    #[test]
    fn arithmetic_examples() {
        let w = z(3, 1);
        let sum = cyc_arith(ArithOp::Add, &w, &(&z(3, 2) + &CycNum::one())).unwrap();
        assert!(sum.is_zero());
        assert_eq!(cyc_arith(ArithOp::Div, &CycNum::one(), &z(8, 1)).unwrap(), z(8, 7));
        assert_eq!(
            cyc_arith(ArithOp::Div, &CycNum::one(), &CycNum::zero()),
            Err(ExactError::DivisionByZero)
        );
    }

    #[test]
    fn conjugation() {
        assert_eq!(z(4, 1).conj(), -z(4, 1));
        assert_eq!(CycNum::frac(3, 2).conj(), CycNum::frac(3, 2));
        assert_eq!(z(8, 1).conj(), z(8, 7));
    }

    #[test]
    fn inverse_of_dense_element() {
        let a = &(&z(7, 1) + &CycNum::frac(2, 3)) + &z(7, 3);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn mixed_conductors() {
        // ζ_12 = ζ_4^{-1} · ζ_3
        let lhs = z(12, 1);
        let rhs = &z(4, -1) * &z(3, 1);
        assert_eq!(lhs, rhs);
        assert_eq!(z(6, 1), -z(3, 2));
    }

    #[test]
    fn conductor_normalization() {
        let i_in_8 = &z(8, 1) * &z(8, 1);
        assert_eq!(i_in_8.order(), 8);
        let n = i_in_8.normalize_conductor();
        assert_eq!(n.order(), 4);
        assert_eq!(n.to_string(), "1*z4^1");
        assert_eq!(z(6, 1).normalize_conductor().order(), 3);
    }

    #[test]
    fn literal_round_trip() {
        let x: CycNum = "1/2*z8^3 - 1/4".parse().unwrap();
        assert_eq!(x.to_string(), "1/2*z8^3 - 1/4");
        let y: CycNum = " -z4^1+ 3 ".parse().unwrap();
        assert_eq!(y.to_string(), "-1*z4^1 + 3");
        assert_eq!("0".parse::<CycNum>().unwrap(), CycNum::zero());
        assert_eq!("z8^7".parse::<CycNum>().unwrap(), z(8, 7));
        assert!("1/0".parse::<CycNum>().is_err());
        assert!("3*z0^1".parse::<CycNum>().is_err());
        assert!("1 +".parse::<CycNum>().is_err());
    }

    #[test]
    fn embedding() {
        let i = z(4, 1).embed_approx(53);
        assert!(i.re.abs() < 1e-15 && (i.im - 1.0).abs() < 1e-15);
        assert_eq!(CycNum::frac(1, 8).embed_approx(53).re, 0.125);
    }

    #[test]
    fn sqrt_of_monomials() {
        let i = z(4, 1);
        let r = i.sqrt_monomial().unwrap();
        assert_eq!(&r * &r, i);
        let r = CycNum::from_int(-4).sqrt_monomial().unwrap();
        assert_eq!(&r * &r, CycNum::from_int(-4));
        assert!(CycNum::from_int(2).sqrt_monomial().is_none());
    }

    fn arb_cyc() -> impl proptest::strategy::Strategy<Value = CycNum> {
        use proptest::prelude::*;
        let orders = prop::sample::select(vec![1u32, 3, 4, 5, 8, 12]);
        (orders, prop::collection::vec((-5i64..=5, 1i64..=4), 0..5)).prop_map(|(n, cs)| {
            let mut acc = CycNum::zero();
            for (e, (num, den)) in cs.into_iter().enumerate() {
                acc += &(&CycNum::frac(num, den) * &z(n, e as i64));
            }
            acc
        })
    }

    #[test]
    fn embed_sqrt2() {
        let s = (&z(8, 1) + &z(8, 7)).embed_approx(53);
        // independent: 2 cos(π/4) from std
        assert!((s.re - 2.0 * (std::f64::consts::PI / 4.0).cos()).abs() < 1e-15);
        assert!(s.im.abs() < 1e-15);
    }

    proptest::proptest! {
        #[test]
        fn field_axioms(a in arb_cyc(), b in arb_cyc(), c in arb_cyc()) {
            proptest::prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            proptest::prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            proptest::prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            proptest::prop_assert!((&a - &a).is_zero());
            if !b.is_zero() {
                proptest::prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn conj_is_involution(a in arb_cyc(), b in arb_cyc()) {
            proptest::prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            proptest::prop_assert_eq!(a.conj().conj(), a);
        }

        #[test]
        fn promotion_coherence(a in arb_cyc(), b in arb_cyc()) {
            let n = a.order().lcm(&b.order()) * 2;
            let direct = (&a + &b).promote(n);
            let promoted = &a.promote(n) + &b.promote(n);
            proptest::prop_assert_eq!(direct, promoted);
        }

        #[test]
        fn literal_round_trip_random(a in arb_cyc()) {
            let text = a.to_string();
            let back: CycNum = text.parse().unwrap();
            proptest::prop_assert_eq!(&back, &a);
            proptest::prop_assert_eq!(back.to_string(), text);
        }

        #[test]
        fn embedding_is_multiplicative(a in arb_cyc(), b in arb_cyc()) {
            let lhs = (&a * &b).embed_approx(60);
            let rhs = a.embed_approx(60) * b.embed_approx(60);
            proptest::prop_assert!((lhs - rhs).norm() < 1e-9);
        }
    }
}
