//! Integer plumbing: primality, trial-division factorization, and products
//! carried as prime multisets so that `w₁⋯wₙ` never has to be materialized.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m`, for `m ≥ 1`.
pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
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

/// Deterministic Miller-Rabin. The first twelve prime bases are a witness
/// set for every 64-bit integer.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of `n ≥ 1` by trial division, stopping as soon as the
/// remaining cofactor is prime.
pub fn factorize(mut n: u64) -> Vec<(u64, u64)> {
    assert!(n >= 1, "cannot factor zero");
    let mut out = Vec::new();
    let mut push = |p: u64, n: &mut u64| -> bool {
        let mut k = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        k > 0
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut d = 5u64;
    let mut cofactor_prime = is_prime(n);
    while n > 1 {
        if cofactor_prime || d.saturating_mul(d) > n {
            push(n, &mut n);
            break;
        }
        let hit = push(d, &mut n) | push(d + 2, &mut n);
        if hit {
            cofactor_prime = is_prime(n);
        }
        d += 6;
    }
    out
}

/// A positive integer stored as its prime factorization.
///
/// Residues, gcds against machine integers, and divisibility are all
/// answered from the multiplicities; [`Factored::to_biguint`] is the only
/// place the integer is ever expanded.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factored {
    primes: BTreeMap<u64, u64>,
}

impl Factored {
    pub fn one() -> Self {
        Self::default()
    }

    /// Factors `n`. Returns `None` for zero.
    pub fn of(n: u64) -> Option<Self> {
        if n == 0 {
            return None;
        }
        Some(Self {
            primes: factorize(n).into_iter().collect(),
        })
    }

    pub fn from_prime_powers<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Self {
        let mut out = Self::one();
        for (p, k) in pairs {
            debug_assert!(is_prime(p), "{p} is not prime");
            if k > 0 {
                *out.primes.entry(p).or_insert(0) += k;
            }
        }
        out
    }

    pub fn is_one(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn multiplicity(&self, p: u64) -> u64 {
        self.primes.get(&p).copied().unwrap_or(0)
    }

    /// `(prime, multiplicity)` pairs in increasing prime order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.primes.iter().map(|(&p, &k)| (p, k))
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.keys().copied()
    }

    /// Total number of prime factors counted with multiplicity.
    pub fn big_omega(&self) -> u64 {
        self.primes.values().sum()
    }

    /// `self ← self · other^times`.
    pub fn mul_pow(&mut self, other: &Factored, times: u64) {
        if times == 0 {
            return;
        }
        for (p, k) in other.iter() {
            let slot = self.primes.entry(p).or_insert(0);
            *slot = slot
                .checked_add(k.checked_mul(times).expect("multiplicity overflow"))
                .expect("multiplicity overflow");
        }
    }

    pub fn mul_assign(&mut self, other: &Factored) {
        self.mul_pow(other, 1);
    }

    pub fn product(&self, other: &Factored) -> Factored {
        let mut out = self.clone();
        out.mul_assign(other);
        out
    }

    pub fn divides(&self, other: &Factored) -> bool {
        self.iter().all(|(p, k)| other.multiplicity(p) >= k)
    }

    /// `self / divisor` when exact.
    pub fn quotient(&self, divisor: &Factored) -> Option<Factored> {
        if !divisor.divides(self) {
            return None;
        }
        let mut out = self.clone();
        for (p, k) in divisor.iter() {
            let slot = out.primes.get_mut(&p).expect("checked by divides");
            *slot -= k;
            if *slot == 0 {
                out.primes.remove(&p);
            }
        }
        Some(out)
    }

    pub fn lcm(&self, other: &Factored) -> Factored {
        let mut out = self.clone();
        for (p, k) in other.iter() {
            let slot = out.primes.entry(p).or_insert(0);
            *slot = (*slot).max(k);
        }
        out
    }

    /// Divides out one factor of `p`, if present.
    pub(crate) fn remove_one(&mut self, p: u64) -> bool {
        match self.primes.get_mut(&p) {
            Some(k) => {
                *k -= 1;
                if *k == 0 {
                    self.primes.remove(&p);
                }
                true
            }
            None => false,
        }
    }

    /// The integer reduced modulo `m ≥ 1`.
    pub fn residue(&self, m: u64) -> u64 {
        assert!(m >= 1, "modulus must be positive");
        self.iter()
            .fold(1 % m, |acc, (p, k)| mul_mod(acc, pow_mod(p, k, m), m))
    }

    /// `gcd(self, m)` for `m ≥ 1`.
    pub fn gcd_with(&self, m: u64) -> u64 {
        gcd(m, self.residue(m))
    }

    pub fn coprime_to(&self, m: u64) -> bool {
        self.primes().all(|p| !m.is_multiple_of(p))
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.iter().try_fold(1u64, |acc, (p, k)| {
            let k = u32::try_from(k).ok()?;
            acc.checked_mul(p.checked_pow(k)?)
        })
    }

    pub fn to_biguint(&self) -> BigUint {
        self.iter().fold(BigUint::one(), |acc, (p, k)| {
            acc * BigUint::from(p).pow(u32::try_from(k).expect("exponent too large to expand"))
        })
    }
}

impl fmt::Debug for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (p, k) in self.iter() {
            if !first {
                f.write_str("·")?;
            }
            first = false;
            if k == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{k}")?;
            }
        }
        Ok(())
    }
}

/// Decimal expansion.
impl fmt::Display for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_biguint())
    }
}
