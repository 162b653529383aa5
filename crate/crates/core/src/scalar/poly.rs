//! Dense polynomial helpers for cyclotomic arithmetic: cyclotomic polynomials
//! over ℤ and per-conductor reduction tables.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense little-endian integer polynomial without trailing zeros.
pub type IPoly = Vec<BigInt>;

pub fn ipoly_trim(p: &mut IPoly) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

pub fn ipoly_degree(p: &IPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

/// Exact division by a monic divisor. Panics if the division leaves a
/// remainder; callers only divide products of cyclotomic polynomials.
pub fn ipoly_div_exact_monic(num: &IPoly, den: &IPoly) -> IPoly {
    assert!(!den.is_empty() && den.last().unwrap().is_one(), "divisor must be monic");
    let mut rem = num.clone();
    ipoly_trim(&mut rem);
    let dd = den.len() - 1;
    if rem.len() < den.len() {
        assert!(rem.is_empty(), "non-exact polynomial division");
        return Vec::new();
    }
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            let t = d * &c;
            rem[k + i] -= t;
        }
        quot[k] = c;
    }
    ipoly_trim(&mut rem);
    assert!(rem.is_empty(), "non-exact polynomial division");
    quot
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as u32
}

/// Distinct prime factors.
pub fn prime_factors(n: u32) -> Vec<u32> {
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2u32;
    while (p as u64) * (p as u64) <= n as u64 {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn divisors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 1u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// The N-th cyclotomic polynomial Φ_N, computed by dividing x^N − 1 by the
/// product of Φ_d over proper divisors d of N.
pub fn cyclotomic_poly(n: u32) -> IPoly {
    assert!(n >= 1);
    crate::sync::conductor_data(n, 0).min_poly.clone()
}

/// Cached per-conductor data: Φ_N and the reductions of x^(φ+k) mod Φ_N.
pub struct CondData {
    pub n: u32,
    pub phi: usize,
    /// Φ_N, monic of degree φ(N).
    pub min_poly: IPoly,
    /// `powers[k]` = x^(φ+k) reduced mod Φ_N, each of length ≤ φ.
    pub powers: Vec<IPoly>,
}

impl CondData {
    pub fn build(n: u32, need_pow: usize) -> CondData {
        let min_poly = if n == 1 {
            vec![-BigInt::one(), BigInt::one()]
        } else {
            // x^n - 1
            let mut num = vec![BigInt::zero(); n as usize + 1];
            num[0] = -BigInt::one();
            num[n as usize] = BigInt::one();
            let mut quot = num;
            for d in divisors(n) {
                if d < n {
                    let phi_d = crate::sync::conductor_data(d, 0);
                    quot = ipoly_div_exact_monic(&quot, &phi_d.min_poly);
                }
            }
            quot
        };
        let phi = min_poly.len() - 1;
        debug_assert_eq!(phi as u32, euler_phi(n));
        let mut data = CondData { n, phi, min_poly, powers: Vec::new() };
        data.extend_powers(need_pow);
        data
    }

    fn extend_powers(&mut self, need: usize) {
        // x^phi ≡ -(low part of Φ); each further power multiplies by x and
        // reduces the overflow coefficient through the same identity.
        if self.powers.len() >= need {
            return;
        }
        let base: IPoly = self.min_poly[..self.phi].iter().map(|c| -c).collect();
        if self.powers.is_empty() {
            let mut b = base.clone();
            ipoly_trim(&mut b);
            self.powers.push(b);
        }
        while self.powers.len() < need {
            let last = self.powers.last().unwrap();
            let mut next = vec![BigInt::zero(); self.phi];
            for (i, c) in last.iter().enumerate() {
                if i + 1 < self.phi {
                    next[i + 1] += c;
                } else {
                    for (j, b) in base.iter().enumerate() {
                        next[j] += b * c;
                    }
                }
            }
            ipoly_trim(&mut next);
            self.powers.push(next);
        }
    }

    /// x^e mod Φ_N for any e < N (exponents are first reduced mod N by the
    /// caller). Requires the table to cover e.
    pub fn reduce_power(&self, e: usize) -> Option<&IPoly> {
        if e < self.phi {
            None
        } else {
            Some(&self.powers[e - self.phi])
        }
    }
}

/// Verifies |det| of a small integer matrix equals 1 (used to certify
/// unimodularity of SNF transforms).
pub fn is_unimodular(m: &[Vec<BigInt>]) -> bool {
    det_bigint(m).abs().is_one()
}

/// Determinant by fraction-free Gaussian elimination (Bareiss) over ℤ.
pub fn det_bigint(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !a[r][k].is_zero());
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = &t / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}
