//! Monodromy of an `r`-fold covering and its evolution along the tower.
//!
//! The covering datum is a permutation `σ₀` of the sheets `1..=r`. At stage
//! `n` the monodromy is `σₙ = σ₀^{w₁⋯wₙ}`, and the covering's components are
//! the orbits of `σₙ` once the orbit partition has stopped refining.
//!
//! A datum may also be attached at a later base stage `s`, in which case
//! `σₙ = σ^{w_{s+1}⋯wₙ}`. Prefix entries sharing a factor with `r` break
//! every `r`-cycle given at stage 0, so connected coverings of such types
//! only show up from a later base.

use std::fmt;
use std::str::FromStr;

use crate::arith::{gcd, Factored};
use crate::error::{Error, Result};
use crate::typealg::{tail_coprime, SolenoidType, Verdict};

/// A bijection of `{1, …, r}` stored as disjoint cycles.
///
/// Cycles are canonical: each starts at its smallest point, they are sorted
/// by that point, and fixed points appear as 1-cycles.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    degree: usize,
    cycles: Vec<Vec<usize>>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        Ok(Self {
            degree,
            cycles: (1..=degree).map(|i| vec![i]).collect(),
        })
    }

    /// The full cycle `(1 2 … r)`.
    pub fn full_cycle(degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        Ok(Self {
            degree,
            cycles: vec![(1..=degree).collect()],
        })
    }

    /// Points not mentioned in `cycles` are fixed.
    pub fn from_cycles(degree: usize, cycles: Vec<Vec<usize>>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut seen = vec![false; degree + 1];
        for c in &cycles {
            if c.is_empty() {
                return Err(Error::InvalidPermutation("empty cycle".into()));
            }
            for &x in c {
                if x == 0 || x > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} outside 1..={degree}"
                    )));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidPermutation(format!("point {x} repeated")));
                }
            }
        }
        let mut cycles = cycles;
        cycles.extend((1..=degree).filter(|&x| !seen[x]).map(|x| vec![x]));
        Ok(Self {
            degree,
            cycles: canonical(cycles),
        })
    }

    /// `images[i - 1] = σ(i)`, 1-based.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let degree = images.len();
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut hit = vec![false; degree + 1];
        for &y in images {
            if y == 0 || y > degree || std::mem::replace(&mut hit[y], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection"
                )));
            }
        }
        let mut visited = vec![false; degree + 1];
        let mut cycles = Vec::new();
        for start in 1..=degree {
            if visited[start] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                c.push(x);
                x = images[x - 1];
            }
            cycles.push(c);
        }
        // traversal from increasing starts is already canonical
        Ok(Self { degree, cycles })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn cycle_lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.cycles.iter().map(Vec::len)
    }

    pub fn orbit_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_identity(&self) -> bool {
        self.cycles.len() == self.degree
    }

    pub fn images(&self) -> Vec<usize> {
        let mut out = vec![0; self.degree];
        for c in &self.cycles {
            for (i, &x) in c.iter().enumerate() {
                out[x - 1] = c[(i + 1) % c.len()];
            }
        }
        out
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images()[x - 1]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let a = self.images();
        let b = other.images();
        let composed: Vec<usize> = b.iter().map(|&y| a[y - 1]).collect();
        Permutation::from_images(&composed).expect("composition of bijections")
    }

    /// `σ^e` for a machine-word exponent.
    pub fn pow_u64(&self, e: u64) -> Permutation {
        self.pow_by(|l| (e % l as u64) as usize)
    }

    /// `σ^e` with `e` given factored. Each cycle only needs `e mod |c|`.
    pub fn power(&self, e: &Factored) -> Permutation {
        self.pow_by(|l| e.residue(l as u64) as usize)
    }

    fn pow_by(&self, residue: impl Fn(usize) -> usize) -> Permutation {
        let mut cycles = Vec::with_capacity(self.cycles.len());
        for c in &self.cycles {
            let l = c.len();
            let s = residue(l);
            let g = gcd(l as u64, s as u64) as usize;
            for i in 0..g {
                let mut out = Vec::with_capacity(l / g);
                let mut j = i;
                for _ in 0..l / g {
                    out.push(c[j]);
                    j = (j + s) % l;
                }
                cycles.push(out);
            }
        }
        Permutation {
            degree: self.degree,
            cycles: canonical(cycles),
        }
    }
}

fn canonical(mut cycles: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for c in &mut cycles {
        let at = c
            .iter()
            .enumerate()
            .min_by_key(|&(_, &x)| x)
            .map_or(0, |(i, _)| i);
        c.rotate_left(at);
    }
    cycles.sort_unstable_by_key(|c| c[0]);
    cycles
}

/// Cycle notation `(1 2)(3 4 5)`, with 1-cycles written out so the degree
/// survives a round trip; the identity is `id:r`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id:{}", self.degree);
        }
        for c in &self.cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Parses cycle notation or `id:r`. The degree is the largest point named.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let syntax = |reason: &str| Error::PermutationSyntax {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let text = s.trim();
        if let Some(r) = text.strip_prefix("id:") {
            let r: usize = r
                .trim()
                .parse()
                .map_err(|_| syntax("degree after id: is not an integer"))?;
            return Permutation::identity(r);
        }
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| syntax("expected '('"))?;
            let close = body.find(')').ok_or_else(|| syntax("unclosed '('"))?;
            let cycle: Vec<usize> = body[..close]
                .split_whitespace()
                .map(|tok| match tok.parse::<usize>() {
                    Ok(0) | Err(_) => Err(syntax(&format!("{tok:?} is not a positive integer"))),
                    Ok(x) => Ok(x),
                })
                .collect::<Result<_>>()?;
            if cycle.is_empty() {
                return Err(syntax("empty cycle"));
            }
            cycles.push(cycle);
            rest = body[close + 1..].trim_start();
        }
        if cycles.is_empty() {
            return Err(syntax("no cycles"));
        }
        let degree = cycles.iter().flatten().copied().max().expect("nonempty");
        Permutation::from_cycles(degree, cycles)
    }
}

pub fn power(sigma: &Permutation, e: &Factored) -> Permutation {
    sigma.power(e)
}

/// `σₙ = σ₀^{w₁⋯wₙ}`; stage 0 is `σ₀` itself.
pub fn sigma_at_stage(ty: &SolenoidType, sigma0: &Permutation, n: usize) -> Result<Permutation> {
    sigma_from(ty, sigma0, 0, n)
}

/// Monodromy at stage `n` for a datum `σ` attached at stage `base ≤ n`:
/// `σ^{w_{base+1}⋯wₙ}`.
pub fn sigma_from(ty: &SolenoidType, sigma: &Permutation, base: usize, n: usize) -> Result<Permutation> {
    Ok(sigma.power(&ty.product_between(base, n)?))
}

/// Stage after which the orbit partition of `σₙ` never refines again.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stabilization {
    /// Exact: every orbit length at this stage is coprime to every later `wₙ`.
    Decided(usize),
    /// The last stage within the known horizon at which an orbit split, or
    /// the base stage if none did. Unknown later entries may still split
    /// orbits.
    HorizonLimited(usize),
}

impl Stabilization {
    pub fn stage(self) -> usize {
        match self {
            Stabilization::Decided(n) | Stabilization::HorizonLimited(n) => n,
        }
    }

    pub fn is_decided(self) -> bool {
        matches!(self, Stabilization::Decided(_))
    }
}

impl fmt::Display for Stabilization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stabilization::Decided(_) => "decided",
            Stabilization::HorizonLimited(_) => "horizon-limited",
        })
    }
}

/// Walks `σₙ₊₁ = σₙ^{wₙ₊₁}` until the orbits can no longer split.
///
/// With a period this terminates within `|prefix| + r·|period|` steps: past
/// the prefix, a full period without a split means every orbit length is
/// coprime to every period entry, and there are at most `r − 1` splits.
pub fn stabilization_stage(ty: &SolenoidType, sigma0: &Permutation) -> Stabilization {
    stabilize(ty, sigma0, 0).0
}

fn stabilize(ty: &SolenoidType, sigma: &Permutation, base: usize) -> (Stabilization, Permutation) {
    let mut sigma = sigma.clone();
    match ty.horizon() {
        None => {
            let mut n = base;
            loop {
                let later = ty.entries_after(n);
                if sigma
                    .cycle_lengths()
                    .all(|l| later.iter().all(|&w| gcd(l as u64, w) == 1))
                {
                    return (Stabilization::Decided(n), sigma);
                }
                n += 1;
                sigma = sigma.pow_u64(ty.term(n).expect("periodic"));
            }
        }
        Some(h) => {
            let mut last_split = base;
            let mut at_split = sigma.clone();
            for n in base + 1..=h {
                let next = sigma.pow_u64(ty.term(n).expect("within horizon"));
                if next.orbit_count() > sigma.orbit_count() {
                    last_split = n;
                    at_split = next.clone();
                }
                sigma = next;
            }
            (Stabilization::HorizonLimited(last_split), at_split)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Component {
    /// Orbit length `l`, which is also the covering degree of the component.
    pub length: usize,
    /// Sheets in the orbit, in cycle order from the smallest label.
    pub sheets: Vec<usize>,
    pub tail_coprime: Verdict,
    pub homeomorphic_to_base: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoveringReport {
    pub degree: usize,
    pub base: SolenoidType,
    pub monodromy: Permutation,
    /// Stage at which `monodromy` is the single sheet permutation.
    pub base_stage: usize,
    pub stabilization: Stabilization,
    /// Ordered by smallest sheet label.
    pub components: Vec<Component>,
    pub connected: bool,
}

/// Component decomposition of the covering with stage-0 monodromy `σ₀`.
///
/// Components are the orbits of `σ` at the stabilization stage. Each is the
/// mapping torus of `ψₙˡ` for its orbit length `l`; when `l` is coprime to
/// the tail, `x ↦ xˡ` is an automorphism of the fiber conjugating `ψₙ` to
/// `ψₙˡ`, so the component is homeomorphic to the base.
pub fn classify(ty: &SolenoidType, sigma0: &Permutation) -> CoveringReport {
    classify_from(ty, sigma0, 0).expect("stage 0 is always known")
}

/// As [`classify`], for a covering whose monodromy is the single
/// permutation `sigma` from stage `base` on.
pub fn classify_from(ty: &SolenoidType, sigma: &Permutation, base: usize) -> Result<CoveringReport> {
    ty.check_stage(base)?;
    let (stabilization, at_stable) = stabilize(ty, sigma, base);
    let components: Vec<Component> = at_stable
        .cycles()
        .iter()
        .map(|c| Component {
            length: c.len(),
            sheets: c.clone(),
            tail_coprime: tail_coprime(ty, c.len() as u64).expect("orbit lengths are positive"),
            homeomorphic_to_base: true,
        })
        .collect();
    Ok(CoveringReport {
        degree: sigma.degree(),
        base: ty.clone(),
        monodromy: sigma.clone(),
        base_stage: base,
        stabilization,
        connected: components.len() == 1,
        components,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Existence {
    pub verdict: Verdict,
    /// The `r`-cycle whenever existence is decided true, attached at
    /// `witness_stage`.
    pub witness: Option<Permutation>,
    /// Least stage after which `r` is coprime to every entry (0 when the
    /// whole sequence is).
    pub witness_stage: usize,
}

/// Whether a connected `r`-fold covering exists: exactly when `r` is coprime
/// to all but finitely many `wₙ`.
///
/// Entries that share a factor with `r` can sit in the prefix; an `r`-cycle
/// attached at stage 0 is then split by them, so the witness is attached
/// just after the last such entry.
pub fn connected_covering_exists(ty: &SolenoidType, r: usize) -> Result<Existence> {
    if r == 0 {
        return Err(Error::ZeroDegree);
    }
    let verdict = tail_coprime(ty, r as u64)?;
    let witness_stage = ty
        .prefix()
        .iter()
        .rposition(|&w| gcd(r as u64, w) != 1)
        .map_or(0, |i| i + 1);
    let witness = match verdict {
        Verdict::DecidedTrue => Some(Permutation::full_cycle(r)?),
        _ => None,
    };
    Ok(Existence {
        verdict,
        witness,
        witness_stage,
    })
}

/// Whether `x ↦ l·x` is a bijection of `Z/m`, for `m, l ≥ 1`.
pub fn power_map_bijective(m: u64, l: u64) -> bool {
    assert!(m >= 1 && l >= 1, "modulus and exponent must be positive");
    gcd(m, l) == 1
}
