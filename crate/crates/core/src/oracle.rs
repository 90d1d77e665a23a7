//! Brute-force finite model used to cross-check the classifier.
//!
//! At stage `n` the solenoid is replaced by the suspension of the odometer
//! on `Z/q`, `q = w₁⋯wₙ`. A covering with sheet permutation `σ` lifts the
//! odometer to the bijection `(x, j) ↦ (x + 1 mod q, σ(j))` on
//! `Z/q × {1..r}`. Components of a mapping torus over a finite set are the
//! orbits of the map, so counting orbits counts components, with no
//! reference to permutation powers.

use crate::arith::{gcd, Factored};
use crate::error::{Error, Result};
use crate::monodromy::Permutation;
use crate::typealg::SolenoidType;

/// Largest `q·r` the enumeration path will allocate.
pub const ENUMERATION_BUDGET: u64 = 10_000_000;

/// One floor `Z/(w_{base+1}⋯w_stage)` of the kernel tower.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StageGroup {
    base: usize,
    stage: usize,
    order: Factored,
}

impl StageGroup {
    pub fn new(ty: &SolenoidType, base: usize, stage: usize) -> Result<Self> {
        if stage < base {
            return Err(Error::StageOrder { base, stage });
        }
        Ok(Self {
            base,
            stage,
            order: ty.product_between(base, stage)?,
        })
    }

    /// `Z/(w₁⋯wₙ)`.
    pub fn at(ty: &SolenoidType, n: usize) -> Result<Self> {
        Self::new(ty, 0, n)
    }

    /// A bare cyclic group of order `q`, not tied to a type.
    pub fn cyclic(q: u64) -> Result<Self> {
        let order = Factored::of(q).ok_or(Error::NonPositive("order"))?;
        Ok(Self {
            base: 0,
            stage: 0,
            order,
        })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn stage(&self) -> usize {
        self.stage
    }

    pub fn order(&self) -> &Factored {
        &self.order
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountMethod {
    /// Union-find over every state; fails past [`ENUMERATION_BUDGET`].
    Enumerate,
    /// `Σ_c gcd(|c|, q)` over the cycles of `σ`.
    ClosedForm,
    /// Both, failing if they disagree.
    Checked,
    /// Checked within budget, closed form beyond it.
    Auto,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductSystem {
    group: StageGroup,
    sigma: Permutation,
}

impl ProductSystem {
    pub fn new(group: StageGroup, sigma: Permutation) -> Self {
        Self { group, sigma }
    }

    pub fn group(&self) -> &StageGroup {
        &self.group
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    /// `q·r`, if `q` fits in a machine word.
    pub fn state_count(&self) -> Option<u128> {
        let q = self.group.order.to_u64()?;
        Some(q as u128 * self.sigma.degree() as u128)
    }

    fn within_budget(&self) -> bool {
        self.state_count()
            .is_some_and(|s| s <= ENUMERATION_BUDGET as u128)
    }

    pub fn orbit_count_closed_form(&self) -> usize {
        self.sigma
            .cycle_lengths()
            .map(|l| self.group.order.gcd_with(l as u64) as usize)
            .sum()
    }

    pub fn orbit_count_enumerated(&self) -> Result<usize> {
        if !self.within_budget() {
            return Err(Error::StateBudget {
                states: self.state_count().unwrap_or(u128::MAX),
                budget: ENUMERATION_BUDGET,
            });
        }
        let q = self.group.order.to_u64().expect("checked by budget") as usize;
        let r = self.sigma.degree();
        let images = self.sigma.images();
        let index = |x: usize, j: usize| x * r + (j - 1);
        let mut uf = UnionFind::new(q * r);
        for x in 0..q {
            for j in 1..=r {
                uf.union(index(x, j), index((x + 1) % q, images[j - 1]));
            }
        }
        Ok(uf.components())
    }

    pub fn orbit_count(&self, method: CountMethod) -> Result<usize> {
        match method {
            CountMethod::Enumerate => self.orbit_count_enumerated(),
            CountMethod::ClosedForm => Ok(self.orbit_count_closed_form()),
            CountMethod::Auto if !self.within_budget() => Ok(self.orbit_count_closed_form()),
            CountMethod::Checked | CountMethod::Auto => {
                let closed_form = self.orbit_count_closed_form();
                let enumerated = self.orbit_count_enumerated()?;
                if closed_form != enumerated {
                    return Err(Error::OracleMismatch {
                        closed_form,
                        enumerated,
                    });
                }
                Ok(enumerated)
            }
        }
    }
}

/// Checked orbit count: enumeration and closed form must agree.
pub fn orbit_count(system: &ProductSystem) -> Result<usize> {
    system.orbit_count(CountMethod::Checked)
}

/// Disjoint sets with path compression and union by size.
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut node = x;
        while self.parent[node] != root {
            let next = self.parent[node];
            self.parent[node] = root;
            node = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.components -= 1;
    }

    fn components(&self) -> usize {
        self.components
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComponentLimit {
    /// Orbit counts at stages `base+1 ..= horizon`.
    pub counts: Vec<usize>,
    /// Count at the horizon.
    pub count: usize,
    /// For a periodic type: the count held constant over the last full
    /// period past the prefix, which proves it final. Without a period: the
    /// last two counts agree (a heuristic only).
    pub stabilized: bool,
}

/// Orbit counts along stages `1..=horizon` for a stage-0 datum `σ₀`.
pub fn component_limit(ty: &SolenoidType, sigma0: &Permutation, horizon: usize) -> Result<ComponentLimit> {
    component_limit_from(ty, sigma0, 0, horizon, CountMethod::Auto)
}

pub fn component_limit_from(
    ty: &SolenoidType,
    sigma: &Permutation,
    base: usize,
    horizon: usize,
    method: CountMethod,
) -> Result<ComponentLimit> {
    if horizon == 0 {
        return Err(Error::NonPositive("horizon"));
    }
    if horizon < base {
        return Err(Error::StageOrder { base, stage: horizon });
    }
    ty.check_stage(horizon)?;
    // index i holds the count at stage base + i
    let mut all = Vec::with_capacity(horizon - base + 1);
    for n in base..=horizon {
        let system = ProductSystem::new(StageGroup::new(ty, base, n)?, sigma.clone());
        all.push(system.orbit_count(method)?);
    }
    let count = *all.last().expect("nonempty");
    let stabilized = match ty.period() {
        Some(period) => {
            let settled = base.max(ty.prefix().len());
            horizon >= settled + period.len() && all[horizon - period.len() - base] == count
        }
        None => all.len() >= 2 && all[all.len() - 2] == count && horizon > base + 1,
    };
    Ok(ComponentLimit {
        counts: all[1..].to_vec(),
        count,
        stabilized,
    })
}

/// Whether `x ↦ l·x` is a bijection of `Z/(w_{n+1}⋯w_{n+j})` for every
/// depth `j ≤ k`.
pub fn tower_power_bijective(ty: &SolenoidType, n: usize, k: usize, l: u64) -> Result<bool> {
    if l == 0 {
        return Err(Error::NonPositive("l"));
    }
    ty.check_stage(n + k)?;
    for j in 1..=k {
        if !ty.product_between(n, n + j)?.coprime_to(l) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Finite shadow of the conjugacy between the `+1` and `+l` odometer steps:
/// at each floor `Z/m`, `m = w_{n+1}⋯w_{n+j}` with `j ≤ k`, both steps are a
/// single `m`-cycle. Floors past [`ENUMERATION_BUDGET`] are decided by
/// `gcd(l, m) = 1` instead of a walk.
pub fn conjugacy_orbit_check(ty: &SolenoidType, n: usize, l: u64, k: usize) -> Result<bool> {
    if l == 0 {
        return Err(Error::NonPositive("l"));
    }
    ty.check_stage(n + k)?;
    for stage in n + 1..=n + k {
        let w = ty.term(stage).expect("within horizon");
        if gcd(l, w) != 1 {
            return Err(Error::SharedFactor { l, stage, entry: w });
        }
    }
    for j in 1..=k {
        let m = ty.product_between(n, n + j)?;
        let passes = match m.to_u64().filter(|&m| m <= ENUMERATION_BUDGET) {
            Some(m) => is_single_cycle(1, m) && is_single_cycle(l, m),
            None => m.coprime_to(l),
        };
        if !passes {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Walks `x ↦ x + step` on `Z/m` from 0 and reports whether it returns only
/// after visiting all `m` residues.
fn is_single_cycle(step: u64, m: u64) -> bool {
    let step = step % m;
    let mut x = 0u64;
    let mut len = 0u64;
    loop {
        x = ((x as u128 + step as u128) % m as u128) as u64;
        len += 1;
        if x == 0 {
            return len == m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn ty(s: &str) -> SolenoidType {
        s.parse().unwrap()
    }

    fn system(q: u64, sigma: &str) -> ProductSystem {
        ProductSystem::new(StageGroup::cyclic(q).unwrap(), perm(sigma))
    }

    #[test]
    fn orbit_count_examples() {
        assert_eq!(orbit_count(&system(8, "(1 2)")), Ok(2));
        assert_eq!(orbit_count(&system(8, "(1 2 3)")), Ok(1));
        assert_eq!(orbit_count(&system(1, "(1 2)(3 4 5)(6)")), Ok(3));
        assert_eq!(orbit_count(&system(1, "id:4")), Ok(4));
    }

    #[test]
    fn budget_is_enforced() {
        let big = ProductSystem::new(StageGroup::at(&ty("|2"), 40).unwrap(), perm("(1 2 3)"));
        assert!(matches!(
            big.orbit_count(CountMethod::Enumerate),
            Err(Error::StateBudget { .. })
        ));
        assert_eq!(big.orbit_count(CountMethod::Auto), Ok(1));
        assert_eq!(big.orbit_count(CountMethod::ClosedForm), Ok(1));
    }

    #[test]
    fn component_limit_examples() {
        let c = component_limit(&ty("|2"), &perm("(1 2)"), 5).unwrap();
        assert_eq!(c.counts, vec![2, 2, 2, 2, 2]);
        assert_eq!(c.count, 2);
        assert!(c.stabilized);

        let c = component_limit(&ty("|2"), &perm("(1 2 3 4)"), 5).unwrap();
        assert_eq!(c.counts, vec![2, 4, 4, 4, 4]);
        assert!(c.stabilized);

        let c = component_limit(&ty("|6"), &perm("(1 2)(3 4 5)"), 4).unwrap();
        assert_eq!(c.counts, vec![5, 5, 5, 5]);
        assert!(c.stabilized);

        // the count only settles once the window has cleared the prefix
        let c = component_limit(&ty("3,2|5"), &perm("(1 2 3 4)"), 2).unwrap();
        assert_eq!(c.counts, vec![1, 2]);
        assert!(!c.stabilized);
        let c = component_limit(&ty("3,2|5"), &perm("(1 2 3 4)"), 3).unwrap();
        assert!(c.stabilized);

        let c = component_limit(&ty("2,3,3|"), &perm("(1 2 3 4)"), 3).unwrap();
        assert_eq!(c.counts, vec![2, 2, 2]);
        assert!(c.stabilized);
        assert!(component_limit(&ty("2,3,3|"), &perm("(1 2)"), 4).is_err());
        assert_eq!(
            component_limit(&ty("|2"), &perm("(1 2)"), 0),
            Err(Error::NonPositive("horizon"))
        );
    }

    #[test]
    fn component_limit_with_base_stage() {
        let t = ty("6,6|5");
        let c = component_limit_from(&t, &perm("(1 2 3 4 5 6)"), 2, 6, CountMethod::Auto).unwrap();
        assert_eq!(c.counts, vec![1, 1, 1, 1]);
        assert!(c.stabilized);
        let c = component_limit(&t, &perm("(1 2 3 4 5 6)"), 6).unwrap();
        assert_eq!(c.counts, vec![6, 6, 6, 6, 6, 6]);
    }

    #[test]
    fn tower_examples() {
        assert_eq!(tower_power_bijective(&ty("|2"), 0, 6, 3), Ok(true));
        assert_eq!(tower_power_bijective(&ty("|2"), 0, 3, 6), Ok(false));
        assert_eq!(tower_power_bijective(&ty("2,3|5"), 2, 4, 6), Ok(true));
        assert_eq!(tower_power_bijective(&ty("2,3|5"), 1, 4, 6), Ok(false));
        assert!(tower_power_bijective(&ty("2,3|"), 1, 2, 5).is_err());
    }

    #[test]
    fn conjugacy_examples() {
        assert_eq!(conjugacy_orbit_check(&ty("|2"), 0, 3, 5), Ok(true));
        assert_eq!(
            conjugacy_orbit_check(&ty("|2"), 0, 2, 1),
            Err(Error::SharedFactor {
                l: 2,
                stage: 1,
                entry: 2
            })
        );
        assert_eq!(conjugacy_orbit_check(&ty("|5"), 0, 4, 3), Ok(true));
        // floors far past the enumeration budget
        assert_eq!(conjugacy_orbit_check(&ty("|7"), 0, 10, 30), Ok(true));
    }

    #[test]
    fn single_cycle_walk() {
        assert!(is_single_cycle(3, 8));
        assert!(!is_single_cycle(2, 8));
        assert!(is_single_cycle(1, 1));
        assert!(is_single_cycle(5, 1));
    }
}
