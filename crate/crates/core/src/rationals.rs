//! The direct limit `Z →w₁ Z →w₂ ⋯` realized inside ℚ.
//!
//! An element that appears at stage `n` with coordinate `a` is the fraction
//! `a/(w₁⋯wₙ)`. Denominators stay factored, so deep stages never overflow;
//! numerators are arbitrary precision. Finitely generated subgroups of ℚ are
//! cyclic, so every subgroup handled here is a single nonnegative generator.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::Factored;
use crate::error::{Error, Result};
use crate::typealg::SolenoidType;

/// A reduced fraction with a factored positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    numer: BigInt,
    denom: Factored,
}

impl Fraction {
    pub fn new(numer: BigInt, denom: Factored) -> Self {
        let mut numer = numer;
        let mut denom = denom;
        if numer.is_zero() {
            return Self::zero();
        }
        let primes: Vec<u64> = denom.primes().collect();
        for p in primes {
            let p_big = BigInt::from(p);
            loop {
                let (q, r) = numer.div_rem(&p_big);
                if !r.is_zero() || !denom.remove_one(p) {
                    break;
                }
                numer = q;
            }
        }
        Self { numer, denom }
    }

    pub fn zero() -> Self {
        Self {
            numer: BigInt::zero(),
            denom: Factored::one(),
        }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self {
            numer: n.into(),
            denom: Factored::one(),
        }
    }

    /// `numer/denom` for machine integers; `denom` must be positive.
    pub fn from_ratio(numer: i64, denom: u64) -> Result<Self> {
        let d = Factored::of(denom).ok_or(Error::NonPositive("denominator"))?;
        Ok(Self::new(numer.into(), d))
    }

    pub fn numer(&self) -> &BigInt {
        &self.numer
    }

    pub fn denom(&self) -> &Factored {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.numer.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self {
            numer: self.numer.abs(),
            denom: self.denom.clone(),
        }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/({:?})", self.numer, self.denom)
    }
}

/// Accepts `a/b` or a bare integer `a`; `b` must fit in 64 bits.
impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let syntax = |reason: &str| Error::FractionSyntax {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let numer: BigInt = n.parse().map_err(|_| syntax("numerator is not an integer"))?;
        if !d.bytes().all(|b| b.is_ascii_digit()) || d.is_empty() {
            return Err(syntax("denominator is not a positive integer"));
        }
        let d: u64 = d.parse().map_err(|_| syntax("denominator exceeds 64 bits"))?;
        let denom = Factored::of(d).ok_or_else(|| syntax("zero denominator"))?;
        Ok(Self::new(numer, denom))
    }
}

/// `stage = n, value = a` stands for `a/(w₁⋯wₙ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LimitElement {
    pub stage: usize,
    pub value: BigInt,
}

impl LimitElement {
    pub fn new(stage: usize, value: impl Into<BigInt>) -> Self {
        Self {
            stage,
            value: value.into(),
        }
    }

    /// `stage=n value=a (= a/b)`.
    pub fn describe(&self, ty: &SolenoidType) -> Result<String> {
        let f = inject(ty, self)?;
        Ok(format!("stage={} value={} (= {})", self.stage, self.value, f))
    }
}

pub fn inject(ty: &SolenoidType, elem: &LimitElement) -> Result<Fraction> {
    let q = ty.product_through(elem.stage)?;
    Ok(Fraction::new(elem.value.clone(), q))
}

/// The subgroup `{k·g : k ∈ Z}` of ℚ for a nonnegative generator `g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalCyclicSubgroup {
    generator: Fraction,
}

impl RationalCyclicSubgroup {
    pub fn trivial() -> Self {
        Self {
            generator: Fraction::zero(),
        }
    }

    pub fn generated_by(g: &Fraction) -> Self {
        Self { generator: g.abs() }
    }

    pub fn generator(&self) -> &Fraction {
        &self.generator
    }

    pub fn is_trivial(&self) -> bool {
        self.generator.is_zero()
    }

    pub fn contains(&self, x: &Fraction) -> bool {
        contains(self, x)
    }
}

impl fmt::Display for RationalCyclicSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.generator)
    }
}

/// Cyclic normal form of the subgroup generated by `generators`: the
/// generator is `gcd(numerators) / lcm(denominators)` of the reduced inputs.
pub fn span<'a, I>(generators: I) -> RationalCyclicSubgroup
where
    I: IntoIterator<Item = &'a Fraction>,
{
    let mut numer = BigInt::zero();
    let mut denom = Factored::one();
    for g in generators {
        if g.is_zero() {
            continue;
        }
        numer = numer.gcd(g.numer());
        denom = denom.lcm(g.denom());
    }
    RationalCyclicSubgroup {
        generator: Fraction::new(numer, denom),
    }
}

/// `x ∈ ⟨c/d⟩` iff `x = a/b` has `b | d` and `c | a`: since `c` is coprime
/// to `d`, it divides `a·(d/b)` exactly when it divides `a`.
pub fn contains(group: &RationalCyclicSubgroup, x: &Fraction) -> bool {
    let g = &group.generator;
    if g.is_zero() {
        return x.is_zero();
    }
    x.denom().divides(g.denom()) && x.numer().is_multiple_of(g.numer())
}

/// Least stage `n ≥ 1` whose basis element `1/(w₁⋯wₙ)` escapes `candidate`.
///
/// Requires a period so that every period prime's exponent grows without
/// bound; the scan then ends within `|prefix| + |period|·(Ω(d) + 1)` stages,
/// where `d` is the candidate's denominator.
pub fn non_fg_witness(ty: &SolenoidType, candidate: &RationalCyclicSubgroup) -> Result<LimitElement> {
    if !ty.is_periodic() {
        return Err(Error::MissingPeriod);
    }
    let mut q = Factored::one();
    for n in 1.. {
        q.mul_assign(ty.term_factors(n).expect("periodic"));
        let elem = Fraction::new(BigInt::from(1), q.clone());
        if !contains(candidate, &elem) {
            return Ok(LimitElement::new(n, 1));
        }
    }
    unreachable!("stage counter overflowed")
}

/// Least stage at which `x` occurs, i.e. its denominator divides
/// `w₁⋯wₙ`. `None` when no known stage works.
pub fn first_stage_of(ty: &SolenoidType, x: &Fraction) -> Option<usize> {
    if ty.is_periodic() && !crate::typealg::supernatural_of(ty).ok()?.admits(x.denom()) {
        return None;
    }
    let mut q = Factored::one();
    let mut n = 0;
    loop {
        if x.denom().divides(&q) {
            return Some(n);
        }
        n += 1;
        q.mul_assign(ty.term_factors(n)?);
    }
}

/// Rank of the rational direct limit `ℚ →w₁ ℚ →w₂ ⋯` through `stages`:
/// each connecting map is multiplication by a nonzero `wₙ`, hence a
/// bijection of ℚ, so the limit is a single copy of ℚ.
pub fn limit_rank_over_q(ty: &SolenoidType, stages: usize) -> Result<u32> {
    ty.check_stage(stages)?;
    for n in 1..=stages {
        let w = ty.term(n).expect("within horizon");
        // x ↦ w·x is injective on ℚ and x/w is a preimage of x
        if w == 0 {
            return Err(Error::EntryTooSmall(0));
        }
    }
    Ok(1)
}
