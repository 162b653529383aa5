//! Exact arithmetic in ℚ and the cyclotomic fields ℚ(ζ_N).
//!
//! A [`Cyc`] is stored sparsely in the power basis {ζ⁰, …, ζ^(φ(N)−1)} of
//! ℚ[x]/(Φ_N): a conductor N together with sorted nonzero rational
//! coordinates. All operations are exact; division uses the extended
//! Euclidean algorithm against Φ_N. Mixed conductors unify at the lcm,
//! capped at [`CONDUCTOR_CAP`].

pub mod literal;
pub mod poly;
pub mod prime;

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use prime::PrimeSpec;

/// Arbitrary-precision rational; the reduced-form invariants (coprime
/// numerator/denominator, positive denominator) are maintained by the
/// underlying representation.
pub type Rat = BigRational;

/// Largest conductor the arithmetic will unify to.
pub const CONDUCTOR_CAP: u64 = 1_000_000;

/// Errors out of scalar arithmetic and parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarError {
    DivisionByZero,
    ConductorOverflow { lcm: u64 },
    NotDivisible { from: u32, to: u32 },
    BadDenominator { prime: u64 },
    Parse { offset: usize, msg: String },
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::DivisionByZero => write!(f, "division by zero"),
            ScalarError::ConductorOverflow { lcm } => {
                write!(f, "conductor {lcm} exceeds the cap {CONDUCTOR_CAP}")
            }
            ScalarError::NotDivisible { from, to } => {
                write!(f, "conductor {from} does not divide {to}")
            }
            ScalarError::BadDenominator { prime } => {
                write!(f, "denominator not invertible mod {prime}")
            }
            ScalarError::Parse { offset, msg } => {
                write!(f, "scalar literal error at offset {offset}: {msg}")
            }
        }
    }
}

impl core::error::Error for ScalarError {}

/// An exact element of ℚ(ζ_N) in the power basis mod Φ_N.
#[derive(Clone, Debug)]
pub struct Cyc {
    conductor: u32,
    /// Sorted by exponent, exponents < φ(N), coefficients nonzero.
    terms: Vec<(u32, Rat)>,
}

impl Cyc {
    pub fn zero() -> Cyc {
        Cyc { conductor: 1, terms: Vec::new() }
    }

    pub fn one() -> Cyc {
        Cyc::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Cyc {
        Cyc::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    pub fn from_rat(r: Rat) -> Cyc {
        if r.is_zero() {
            Cyc::zero()
        } else {
            Cyc { conductor: 1, terms: alloc::vec![(0, r)] }
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Cyc {
        assert!(den != 0);
        Cyc::from_rat(Rat::new(BigInt::from(num), BigInt::from(den)))
    }

    /// ζ_n^k.
    pub fn root_of_unity(n: u32, k: i64) -> Cyc {
        assert!(n >= 1);
        let e = k.rem_euclid(n as i64) as u32;
        Cyc::monomial(n, e, Rat::one())
    }

    /// c·ζ_n^e with 0 ≤ e < n, reduced into the power basis.
    pub fn monomial(n: u32, e: u32, c: Rat) -> Cyc {
        if c.is_zero() {
            return Cyc::zero();
        }
        let e = e % n;
        let data = crate::sync::conductor_data(n, reduce_need(n, e as usize));
        if (e as usize) < data.phi {
            return Cyc { conductor: n, terms: alloc::vec![(e, c)] };
        }
        let red = data.reduce_power(e as usize).unwrap();
        let terms: Vec<(u32, Rat)> = red
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.is_zero())
            .map(|(i, b)| (i as u32, &c * Rat::from_integer(b.clone())))
            .collect();
        Cyc { conductor: n, terms }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Coordinates as (exponent, coefficient) pairs.
    pub fn terms(&self) -> &[(u32, Rat)] {
        &self.terms
    }

    pub fn is_rational(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == 0)
    }

    pub fn as_rat(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            Some(Rat::zero())
        } else if self.terms.len() == 1 && self.terms[0].0 == 0 {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Image under ζ_N ↦ ζ_M^(M/N); a ring homomorphism.
    pub fn embed(&self, m: u32) -> Result<Cyc, ScalarError> {
        if m % self.conductor != 0 {
            return Err(ScalarError::NotDivisible { from: self.conductor, to: m });
        }
        if m as u64 > CONDUCTOR_CAP {
            return Err(ScalarError::ConductorOverflow { lcm: m as u64 });
        }
        if m == self.conductor {
            return Ok(self.clone());
        }
        let ratio = m / self.conductor;
        let data = crate::sync::conductor_data(m, reduce_need(m, (m - 1) as usize));
        let phi = data.phi;
        let mut acc: Vec<Rat> = alloc::vec![Rat::zero(); phi];
        for (e, c) in &self.terms {
            let ee = (*e as u64 * ratio as u64 % m as u64) as usize;
            if ee < phi {
                acc[ee] += c;
            } else {
                let red = data.reduce_power(ee).unwrap();
                for (i, b) in red.iter().enumerate() {
                    if !b.is_zero() {
                        acc[i] += c * Rat::from_integer(b.clone());
                    }
                }
            }
        }
        Ok(Cyc { conductor: m, terms: collect_sparse(acc) })
    }

    fn unify(&self, other: &Cyc) -> Result<(Cyc, Cyc), ScalarError> {
        if self.conductor == other.conductor {
            return Ok((self.clone(), other.clone()));
        }
        let l = num_integer::lcm(self.conductor as u64, other.conductor as u64);
        if l > CONDUCTOR_CAP {
            return Err(ScalarError::ConductorOverflow { lcm: l });
        }
        Ok((self.embed(l as u32)?, other.embed(l as u32)?))
    }

    pub fn try_add(&self, other: &Cyc) -> Result<Cyc, ScalarError> {
        let (a, b) = self.unify(other)?;
        let mut terms = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() || j < b.terms.len() {
            if j >= b.terms.len() || (i < a.terms.len() && a.terms[i].0 < b.terms[j].0) {
                terms.push(a.terms[i].clone());
                i += 1;
            } else if i >= a.terms.len() || b.terms[j].0 < a.terms[i].0 {
                terms.push(b.terms[j].clone());
                j += 1;
            } else {
                let c = &a.terms[i].1 + &b.terms[j].1;
                if !c.is_zero() {
                    terms.push((a.terms[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Ok(Cyc { conductor: a.conductor, terms })
    }

    pub fn try_sub(&self, other: &Cyc) -> Result<Cyc, ScalarError> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Cyc {
        Cyc {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> Cyc {
        if r.is_zero() {
            return Cyc::zero();
        }
        Cyc {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect(),
        }
    }

    pub fn try_mul(&self, other: &Cyc) -> Result<Cyc, ScalarError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Cyc::zero());
        }
        // Fast path: rational times anything needs no reduction.
        if let Some(r) = self.as_rat() {
            return Ok(other.scale(&r));
        }
        if let Some(r) = other.as_rat() {
            return Ok(self.scale(&r));
        }
        let (a, b) = self.unify(other)?;
        let n = a.conductor;
        let data = crate::sync::conductor_data(n, reduce_need(n, 2 * (euler_phi_usize(n) - 1)));
        let phi = data.phi;
        let mut acc: Vec<Rat> = alloc::vec![Rat::zero(); 2 * phi.max(1)];
        for (e1, c1) in &a.terms {
            for (e2, c2) in &b.terms {
                let e = (*e1 + *e2) as usize;
                acc[e] += c1 * c2;
            }
        }
        // Fold exponents ≥ φ through the reduction table.
        for e in (phi..acc.len()).rev() {
            if acc[e].is_zero() {
                continue;
            }
            let c = core::mem::replace(&mut acc[e], Rat::zero());
            let red = data.reduce_power(e).unwrap();
            for (i, bcoef) in red.iter().enumerate() {
                if !bcoef.is_zero() {
                    acc[i] += &c * Rat::from_integer(bcoef.clone());
                }
            }
        }
        acc.truncate(phi);
        Ok(Cyc { conductor: n, terms: collect_sparse(acc) })
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// (self, Φ_N); Φ_N is irreducible so any nonzero element is invertible.
    pub fn try_inv(&self) -> Result<Cyc, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(r) = self.as_rat() {
            return Ok(Cyc::from_rat(Rat::one() / r));
        }
        let n = self.conductor;
        let data = crate::sync::conductor_data(n, 0);
        let phi = data.phi;
        let mut a: Vec<Rat> = alloc::vec![Rat::zero(); phi];
        for (e, c) in &self.terms {
            a[*e as usize] = c.clone();
        }
        rpoly_trim(&mut a);
        let modulus: Vec<Rat> =
            data.min_poly.iter().map(|c| Rat::from_integer(c.clone())).collect();
        // Extended Euclid: find s with s·a ≡ gcd (mod Φ); gcd is a nonzero
        // constant, so s/gcd is the inverse.
        let (g, s) = rpoly_ext_gcd(&a, &modulus);
        debug_assert_eq!(g.len(), 1, "gcd with irreducible modulus must be constant");
        let ginv = Rat::one() / g[0].clone();
        let mut inv_dense: Vec<Rat> = s.iter().map(|c| c * &ginv).collect();
        // Reduce mod Φ in case deg s ≥ φ (it should not be, but stay safe).
        debug_assert!(inv_dense.len() <= phi);
        inv_dense.resize(phi, Rat::zero());
        Ok(Cyc { conductor: n, terms: collect_sparse(inv_dense) })
    }

    pub fn try_div(&self, other: &Cyc) -> Result<Cyc, ScalarError> {
        let (a, b) = self.unify(other)?;
        a.try_mul(&b.try_inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Cyc, ScalarError> {
        if k < 0 {
            return self.try_inv()?.pow(-k);
        }
        let mut result = Cyc::one();
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn add(&self, other: &Cyc) -> Cyc {
        self.try_add(other).expect("cyclotomic add failed")
    }

    pub fn sub(&self, other: &Cyc) -> Cyc {
        self.try_sub(other).expect("cyclotomic sub failed")
    }

    pub fn mul(&self, other: &Cyc) -> Cyc {
        self.try_mul(other).expect("cyclotomic mul failed")
    }

    pub fn inv(&self) -> Cyc {
        self.try_inv().expect("cyclotomic inverse failed")
    }

    /// The multiplicative order if this is a root of unity with order up to
    /// `bound`, else None.
    pub fn root_of_unity_order(&self, bound: u32) -> Option<u32> {
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_one() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }
}

fn euler_phi_usize(n: u32) -> usize {
    poly::euler_phi(n) as usize
}

/// How far the reduction table must reach to reduce exponent `e` at
/// conductor `n` (table entries start at φ(n)).
fn reduce_need(n: u32, e: usize) -> usize {
    let phi = euler_phi_usize(n);
    e.saturating_sub(phi) + 1
}

fn collect_sparse(dense: Vec<Rat>) -> Vec<(u32, Rat)> {
    dense
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (e as u32, c))
        .collect()
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.terms == other.terms;
        }
        match self.unify(other) {
            Ok((a, b)) => a.terms == b.terms,
            Err(_) => false,
        }
    }
}

impl Eq for Cyc {}

impl PartialOrd for Cyc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cyc {
    /// Structural order after conductor unification (not a field order).
    fn cmp(&self, other: &Self) -> Ordering {
        if self.conductor == other.conductor {
            return self.terms.cmp(&other.terms);
        }
        match self.unify(other) {
            Ok((a, b)) => a.terms.cmp(&b.terms),
            Err(_) => self.conductor.cmp(&other.conductor),
        }
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", literal::to_literal(self))
    }
}

// Dense rational polynomial helpers for the inverse computation.

fn rpoly_trim(p: &mut Vec<Rat>) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn rpoly_rem(mut a: Vec<Rat>, b: &[Rat]) -> Vec<Rat> {
    let db = b.len() - 1;
    let lead = b[db].clone();
    while a.len() > db {
        let da = a.len() - 1;
        let q = a[da].clone() / lead.clone();
        if !q.is_zero() {
            for i in 0..=db {
                let t = &b[i] * &q;
                a[da - db + i] -= t;
            }
        }
        a.pop();
        rpoly_trim(&mut a);
        if a.is_empty() {
            break;
        }
    }
    a
}

fn rpoly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = alloc::vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rpoly_trim(&mut out);
    out
}

fn rpoly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), Rat::zero());
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    rpoly_trim(&mut out);
    out
}

fn rpoly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    rpoly_trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = alloc::vec![Rat::zero(); rem.len() - db];
    while rem.len() > db {
        let da = rem.len() - 1;
        let q = rem[da].clone() / lead.clone();
        quot[da - db] = q.clone();
        for i in 0..=db {
            let t = &b[i] * &q;
            rem[da - db + i] -= t;
        }
        rpoly_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    rpoly_trim(&mut quot);
    (quot, rem)
}

/// Returns (g, s) with s·a ≡ g (mod m) and g = gcd(a, m), via the
/// half-extended Euclidean algorithm.
fn rpoly_ext_gcd(a: &[Rat], m: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    let mut s0: Vec<Rat> = Vec::new(); // coefficient of a for r0 = m
    let mut s1: Vec<Rat> = alloc::vec![Rat::one()]; // for r1 = a
    while !r1.is_empty() {
        let (q, r) = rpoly_divmod(&r0, &r1);
        let s = rpoly_sub(&s0, &rpoly_mul(&q, &s1));
        r0 = core::mem::take(&mut r1);
        r1 = r;
        s0 = core::mem::take(&mut s1);
        s1 = s;
    }
    // r0 = gcd, s0·a ≡ r0 (mod m); reduce s0 mod m for a canonical witness.
    let s0 = if s0.len() >= m.len() { rpoly_rem(s0, m) } else { s0 };
    (r0, s0)
}
