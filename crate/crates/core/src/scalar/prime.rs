//! Finite-field specialization: primes ℓ ≡ 1 (mod N) with a chosen image of
//! ζ_N of exact order N, giving a ring homomorphism from the ℓ-integral
//! subring of ℚ(ζ_N) to 𝔽_ℓ. Used for fast one-sided rank and axiom
//! certificates; primes are drawn from a seeded generator for replayable
//! runs.

use super::poly::prime_factors;
use super::{Cyc, ScalarError};
use num_traits::{Signed, ToPrimitive};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// A prime ℓ ≡ 1 mod conductor together with an order-N image of ζ_N.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeSpec {
    pub ell: u64,
    pub conductor: u32,
    pub zeta_image: u64,
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse mod a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl PrimeSpec {
    /// Samples a prime ℓ ≡ 1 mod n in [2^30, 2^31) and an element of exact
    /// order n, deterministically from the seed.
    pub fn sample(conductor: u32, seed: u64) -> PrimeSpec {
        Self::sample_skipping(conductor, seed, 0)
    }

    /// As [`PrimeSpec::sample`], discarding the first `skip` candidates so a
    /// caller hitting a bad denominator can retry with fresh primes.
    pub fn sample_skipping(conductor: u32, seed: u64, skip: u32) -> PrimeSpec {
        let n = conductor.max(1) as u64;
        let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        let lo = (1u64 << 30) / n;
        let hi = (1u64 << 31) / n;
        let mut found = 0u32;
        loop {
            let k = rng.gen_range(lo.max(1)..hi);
            let ell = k * n + 1;
            if !is_prime_u64(ell) {
                continue;
            }
            if found < skip {
                found += 1;
                continue;
            }
            // Find an element of exact order n.
            let factors = prime_factors(conductor.max(1));
            'search: loop {
                let r = rng.gen_range(2..ell - 1);
                let c = pow_mod(r, (ell - 1) / n, ell);
                if c == 1 && n > 1 {
                    continue;
                }
                for &p in &factors {
                    if pow_mod(c, n / p as u64, ell) == 1 {
                        continue 'search;
                    }
                }
                return PrimeSpec { ell, conductor: conductor.max(1), zeta_image: c };
            }
        }
    }

    /// Checks image^N = 1 and image^(N/p) ≠ 1 for every prime p | N.
    pub fn verify(&self) -> bool {
        let n = self.conductor as u64;
        if pow_mod(self.zeta_image, n, self.ell) != 1 {
            return false;
        }
        prime_factors(self.conductor)
            .into_iter()
            .all(|p| pow_mod(self.zeta_image, n / p as u64, self.ell) != 1)
    }

    /// The homomorphic image of an exact scalar, if every denominator is
    /// invertible mod ℓ.
    pub fn specialize(&self, c: &Cyc) -> Result<u64, ScalarError> {
        let ell = self.ell;
        let embedded;
        let c = if c.conductor() == self.conductor {
            c
        } else {
            embedded = c
                .embed(self.conductor)
                .map_err(|_| ScalarError::NotDivisible { from: c.conductor(), to: self.conductor })?;
            &embedded
        };
        let ell_big = num_bigint::BigInt::from(ell);
        let mut acc = 0u64;
        for (e, coef) in c.terms() {
            let num = coef.numer();
            let den = coef.denom();
            let den_red = (den % &ell_big).to_u64().unwrap();
            if den_red == 0 {
                return Err(ScalarError::BadDenominator { prime: ell });
            }
            let num_red = {
                let m = num % &ell_big;
                let m = if m.is_negative() { m + &ell_big } else { m };
                m.to_u64().unwrap()
            };
            let z = pow_mod(self.zeta_image, *e as u64, ell);
            acc = (acc + mul_mod(mul_mod(num_red, inv_mod(den_red, ell), ell), z, ell)) % ell;
        }
        Ok(acc)
    }
}
