//! Solenoid types: the bonding sequence `(w₁, w₂, …)`, its supernatural
//! number, and the coprimality-with-tail predicate that decides whether a
//! connected `r`-fold covering exists.
//!
//! A type is either fully known (a finite prefix followed by a period that
//! repeats forever) or known only up to a horizon (a prefix with no period).
//! Anything that depends on the infinite tail answers
//! [`Verdict::HorizonLimited`] for the latter instead of guessing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::arith::{gcd, Factored};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SolenoidType {
    prefix: Vec<u64>,
    period: Option<Vec<u64>>,
    prefix_factors: Vec<Factored>,
    period_factors: Vec<Factored>,
}

impl SolenoidType {
    pub fn new(prefix: Vec<u64>, period: Option<Vec<u64>>) -> Result<Self> {
        if let Some(&w) = prefix.iter().chain(period.iter().flatten()).find(|&&w| w < 2) {
            return Err(Error::EntryTooSmall(w.into()));
        }
        if matches!(&period, Some(p) if p.is_empty()) {
            return Err(Error::EmptyPeriod);
        }
        if prefix.is_empty() && period.is_none() {
            return Err(Error::TypeSyntax {
                input: String::new(),
                reason: "type has no entries".into(),
            });
        }
        let factor = |ws: &[u64]| ws.iter().map(|&w| Factored::of(w).expect("w ≥ 2")).collect();
        Ok(Self {
            prefix_factors: factor(&prefix),
            period_factors: period.as_deref().map(factor).unwrap_or_default(),
            prefix,
            period,
        })
    }

    pub fn periodic(prefix: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        Self::new(prefix, Some(period))
    }

    pub fn finite(prefix: Vec<u64>) -> Result<Self> {
        Self::new(prefix, None)
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn period(&self) -> Option<&[u64]> {
        self.period.as_deref()
    }

    pub fn is_periodic(&self) -> bool {
        self.period.is_some()
    }

    /// Last known stage, or `None` when the sequence is known forever.
    pub fn horizon(&self) -> Option<usize> {
        match self.period {
            Some(_) => None,
            None => Some(self.prefix.len()),
        }
    }

    pub fn check_stage(&self, n: usize) -> Result<()> {
        match self.horizon() {
            Some(h) if n > h => Err(Error::HorizonExceeded {
                requested: n,
                horizon: h,
            }),
            _ => Ok(()),
        }
    }

    fn index(&self, n: usize) -> Option<Slot> {
        assert!(n >= 1, "terms are indexed from 1");
        if n <= self.prefix.len() {
            return Some(Slot::Prefix(n - 1));
        }
        let period = self.period.as_ref()?;
        Some(Slot::Period((n - self.prefix.len() - 1) % period.len()))
    }

    /// `wₙ` for `n ≥ 1`, or `None` past the horizon.
    pub fn term(&self, n: usize) -> Option<u64> {
        Some(match self.index(n)? {
            Slot::Prefix(i) => self.prefix[i],
            Slot::Period(j) => self.period.as_ref().expect("periodic")[j],
        })
    }

    pub fn term_factors(&self, n: usize) -> Option<&Factored> {
        Some(match self.index(n)? {
            Slot::Prefix(i) => &self.prefix_factors[i],
            Slot::Period(j) => &self.period_factors[j],
        })
    }

    /// `w₁⋯wₙ` in factored form; stage 0 gives 1.
    pub fn product_through(&self, n: usize) -> Result<Factored> {
        self.product_between(0, n)
    }

    /// `w_{from+1}⋯w_{to}` in factored form. Cost is independent of the stage
    /// depth: each period slot is raised to its occurrence count.
    pub fn product_between(&self, from: usize, to: usize) -> Result<Factored> {
        assert!(from <= to, "empty range {from}..{to}");
        self.check_stage(to)?;
        let mut out = Factored::one();
        let plen = self.prefix.len();
        for f in &self.prefix_factors[from.min(plen)..to.min(plen)] {
            out.mul_assign(f);
        }
        if to > plen {
            let p = self.period_factors.len() as u64;
            // period offsets m = n - plen - 1 range over [lo, hi]
            let lo = from.max(plen) - plen;
            let hi = (to - plen - 1) as u64;
            for (j, f) in self.period_factors.iter().enumerate() {
                let j = j as u64;
                let upto = |x: i128| if x < j as i128 { 0 } else { (x as u64 - j) / p + 1 };
                let count = upto(hi as i128) - upto(lo as i128 - 1);
                out.mul_pow(f, count);
            }
        }
        Ok(out)
    }

    /// Distinct entries `w_{n'}` over all `n' > n` that are known.
    pub fn entries_after(&self, n: usize) -> BTreeSet<u64> {
        let mut out: BTreeSet<u64> = self.prefix.iter().skip(n).copied().collect();
        out.extend(self.period.iter().flatten().copied());
        out
    }
}

#[derive(Clone, Copy)]
enum Slot {
    Prefix(usize),
    Period(usize),
}

impl fmt::Display for SolenoidType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ws: &[u64]| ws.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}|{}", join(&self.prefix), join(self.period().unwrap_or(&[])))
    }
}

impl fmt::Debug for SolenoidType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SolenoidType({self})")
    }
}

impl FromStr for SolenoidType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_type(s)
    }
}

/// Parses `prefix "|" period`, each side a comma-separated list of integers
/// `≥ 2`. An empty period side means the type is only known up to its
/// prefix.
pub fn parse_type(text: &str) -> Result<SolenoidType> {
    let syntax = |reason: &str| Error::TypeSyntax {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    let mut sides = text.split('|');
    let (prefix, period) = match (sides.next(), sides.next(), sides.next()) {
        (Some(a), Some(b), None) => (a, b),
        (_, None, _) => return Err(syntax("missing '|'")),
        _ => return Err(syntax("more than one '|'")),
    };
    let entries = |side: &str| -> Result<Vec<u64>> {
        if side.trim().is_empty() {
            return Ok(Vec::new());
        }
        side.split(',')
            .map(|tok| {
                let tok = tok.trim();
                if tok.is_empty() {
                    return Err(syntax("empty entry"));
                }
                let digits = tok.strip_prefix('-').unwrap_or(tok);
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(syntax(&format!("{tok:?} is not a decimal integer")));
                }
                let v: i128 = tok
                    .parse()
                    .map_err(|_| syntax(&format!("{tok:?} is out of range")))?;
                if v < 2 {
                    return Err(Error::EntryTooSmall(v));
                }
                u64::try_from(v).map_err(|_| syntax(&format!("{tok} exceeds 64 bits")))
            })
            .collect()
    };
    let prefix = entries(prefix)?;
    let period = entries(period)?;
    if prefix.is_empty() && period.is_empty() {
        return Err(syntax("both sides are empty"));
    }
    let period = if period.is_empty() { None } else { Some(period) };
    SolenoidType::new(prefix, period)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(k) => write!(f, "{k}"),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

/// Formal product `∏ p^{aₚ}` with `aₚ ∈ {1, 2, …, ∞}`; absent primes have
/// exponent zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SupernaturalNumber {
    exponents: BTreeMap<u64, Exponent>,
}

impl SupernaturalNumber {
    pub fn exponent(&self, p: u64) -> Option<Exponent> {
        self.exponents.get(&p).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, Exponent)> + '_ {
        self.exponents.iter().map(|(&p, &e)| (p, e))
    }

    pub fn infinite_primes(&self) -> BTreeSet<u64> {
        self.iter()
            .filter(|&(_, e)| e == Exponent::Infinite)
            .map(|(p, _)| p)
            .collect()
    }

    /// Whether `v_p(d) ≤ aₚ` for every prime of `d`, i.e. `d` divides some
    /// finite partial product.
    pub fn admits(&self, d: &Factored) -> bool {
        d.iter().all(|(p, k)| match self.exponent(p) {
            Some(Exponent::Infinite) => true,
            Some(Exponent::Finite(a)) => k <= a,
            None => false,
        })
    }
}

/// `2^inf*3*5^inf`; the empty product prints as `1`.
impl fmt::Display for SupernaturalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(p, e)| match e {
                Exponent::Finite(1) => p.to_string(),
                e => format!("{p}^{e}"),
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

pub fn supernatural_of(ty: &SolenoidType) -> Result<SupernaturalNumber> {
    if !ty.is_periodic() {
        return Err(Error::MissingPeriod);
    }
    let mut exponents = BTreeMap::new();
    for f in &ty.period_factors {
        for p in f.primes() {
            exponents.insert(p, Exponent::Infinite);
        }
    }
    for f in &ty.prefix_factors {
        for (p, k) in f.iter() {
            match exponents.entry(p).or_insert(Exponent::Finite(0)) {
                Exponent::Finite(a) => *a += k,
                Exponent::Infinite => {}
            }
        }
    }
    Ok(SupernaturalNumber { exponents })
}

/// Outcome of a question about the infinite tail of `ϖ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    DecidedTrue,
    DecidedFalse,
    /// Only a finite horizon is known; carries the answer as observed there.
    HorizonLimited(bool),
}

impl Verdict {
    pub fn decided(b: bool) -> Self {
        if b {
            Verdict::DecidedTrue
        } else {
            Verdict::DecidedFalse
        }
    }

    pub fn is_decided(self) -> bool {
        !matches!(self, Verdict::HorizonLimited(_))
    }

    pub fn is_decided_true(self) -> bool {
        self == Verdict::DecidedTrue
    }

    /// The boolean answer, decided or not.
    pub fn value(self) -> bool {
        match self {
            Verdict::DecidedTrue => true,
            Verdict::DecidedFalse => false,
            Verdict::HorizonLimited(b) => b,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::DecidedTrue => "true",
            Verdict::DecidedFalse => "false",
            Verdict::HorizonLimited(_) => "horizon-limited",
        })
    }
}

/// Whether `r` is coprime to all but finitely many `wₙ`.
///
/// Without a period the answer is [`Verdict::HorizonLimited`], carrying
/// whether `r` is coprime to the last known entry, i.e. whether the observed
/// sequence ends in a run of entries sharing no factor with `r`.
pub fn tail_coprime(ty: &SolenoidType, r: u64) -> Result<Verdict> {
    if r == 0 {
        return Err(Error::ZeroDegree);
    }
    Ok(match ty.period() {
        Some(period) => Verdict::decided(period.iter().all(|&w| gcd(r, w) == 1)),
        None => {
            let last = *ty.prefix().last().expect("non-periodic types have a prefix");
            Verdict::HorizonLimited(gcd(r, last) == 1)
        }
    })
}

/// Standard homeomorphism criterion: the supernatural numbers agree up to
/// finitely many finite exponents. With finite supports that reduces to
/// equal sets of infinite-exponent primes.
pub fn types_equivalent(a: &SolenoidType, b: &SolenoidType) -> Result<bool> {
    Ok(supernatural_of(a)?.infinite_primes() == supernatural_of(b)?.infinite_primes())
}
