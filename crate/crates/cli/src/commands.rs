use solenoid_core::{
    classify_from, component_limit_from, connected_covering_exists, first_stage_of, limit_rank_over_q,
    non_fg_witness, span, supernatural_of, types_equivalent, CountMethod, CoveringReport, Error, Fraction,
    Permutation, ProductSystem, SolenoidType, StageGroup, Verdict,
};

use crate::record::{list, Record};

/// Command output, plus whether a cross-check failed.
pub struct Outcome {
    pub records: Vec<Record>,
    pub mismatch: bool,
}

impl Outcome {
    fn ok(records: Vec<Record>) -> Self {
        Self {
            records,
            mismatch: false,
        }
    }
}

pub type CmdResult = Result<Outcome, Error>;

fn verdict_fields(rec: &mut Record, key: &'static str, v: Verdict) {
    rec.push(key, v);
    if let Verdict::HorizonLimited(b) = v {
        rec.push("at_horizon", b);
    }
}

/// Enough stages for any degree-`r` datum attached at `base` to settle:
/// past the prefix each split must follow the previous within one period,
/// and there are at most `r − 1` splits.
fn settling_horizon(ty: &SolenoidType, base: usize, r: usize) -> usize {
    match ty.period() {
        Some(p) => base.max(ty.prefix().len()) + p.len() * r.max(1),
        None => ty.prefix().len(),
    }
}

/// Oracle recount of one covering; `None` in `agree` means inconclusive.
struct OracleCheck {
    record: Record,
    agree: Option<bool>,
}

fn oracle_check(ty: &SolenoidType, report: &CoveringReport, horizon: usize) -> Result<OracleCheck, Error> {
    let base = report.base_stage;
    let horizon = horizon.max(base + 1);
    let lim = component_limit_from(ty, &report.monodromy, base, horizon, CountMethod::Auto)?;
    let monotone =
        lim.counts.windows(2).all(|w| w[0] <= w[1]) && lim.counts.iter().all(|&c| c <= report.degree);
    let agree = if !monotone {
        Some(false)
    } else if lim.stabilized {
        Some(lim.count == report.components.len())
    } else {
        None
    };
    let record = Record::new()
        .with("check", "oracle")
        .with("monodromy", &report.monodromy)
        .with("base_stage", base)
        .with("horizon", horizon)
        .with("counts", list(&lim.counts))
        .with("oracle_components", lim.count)
        .with("stabilized", lim.stabilized)
        .with("classifier_components", report.components.len())
        .with(
            "agree",
            agree.map_or("inconclusive".to_string(), |a| a.to_string()),
        );
    Ok(OracleCheck { record, agree })
}

pub fn exists(ty: &SolenoidType, degree: usize, verify: Option<usize>) -> CmdResult {
    let e = connected_covering_exists(ty, degree)?;
    let mut head = Record::new()
        .with("command", "exists")
        .with("type", ty)
        .with("degree", degree);
    verdict_fields(&mut head, "verdict", e.verdict);
    head.push(
        "witness",
        e.witness.as_ref().map_or("none".to_string(), |w| w.to_string()),
    );
    head.push("witness_stage", e.witness_stage);
    let mut out = Outcome::ok(vec![head]);
    let Some(horizon) = verify else {
        return Ok(out);
    };
    ty.check_stage(horizon)?;

    let cycle = Permutation::full_cycle(degree)?;
    let report = classify_from(ty, &cycle, e.witness_stage)?;
    let check = oracle_check(ty, &report, horizon)?;
    let mut cycle_ok = check.agree != Some(false);
    if e.verdict.is_decided() {
        cycle_ok &= report.connected == e.verdict.is_decided_true();
    }
    out.mismatch |= !cycle_ok;
    out.records.push(check.record);

    if degree <= 8 {
        let (rec, ok) = exhaustive(ty, degree, e.verdict)?;
        out.mismatch |= !ok;
        out.records.push(rec);
    }
    Ok(out)
}

/// Every `σ ∈ S_r` at every base stage through the prefix, counted by the
/// oracle and compared with the classifier and the verdict.
fn exhaustive(ty: &SolenoidType, r: usize, verdict: Verdict) -> Result<(Record, bool), Error> {
    let bases = match ty.horizon() {
        None => ty.prefix().len(),
        Some(h) => h.saturating_sub(1),
    };
    let mut permutations = 0usize;
    let mut connected = 0usize;
    let mut disagreements = 0usize;
    let mut images: Vec<usize> = (1..=r).collect();
    let mut failure = None;
    for_each_permutation(&mut images, 0, &mut |p| {
        if failure.is_some() {
            return;
        }
        permutations += 1;
        let sigma = Permutation::from_images(p).expect("generated bijection");
        for base in 0..=bases {
            let horizon = settling_horizon(ty, base, r).max(base + 1);
            let counted = component_limit_from(ty, &sigma, base, horizon, CountMethod::ClosedForm)
                .and_then(|lim| Ok((lim, classify_from(ty, &sigma, base)?)));
            match counted {
                Ok((lim, report)) => {
                    if lim.count == 1 {
                        connected += 1;
                    }
                    if lim.count != report.components.len() {
                        disagreements += 1;
                    }
                }
                Err(err) => failure = Some(err),
            }
        }
    });
    if let Some(err) = failure {
        return Err(err);
    }
    let mut ok = disagreements == 0;
    if verdict.is_decided() {
        ok &= (connected > 0) == verdict.is_decided_true();
    }
    let rec = Record::new()
        .with("check", "exhaustive")
        .with("degree", r)
        .with("permutations", permutations)
        .with("base_stages", bases + 1)
        .with("connected_found", connected)
        .with("classifier_disagreements", disagreements)
        .with("agree", ok);
    Ok((rec, ok))
}

fn for_each_permutation(xs: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        for_each_permutation(xs, k + 1, f);
        xs.swap(k, i);
    }
}

pub fn classify(ty: &SolenoidType, sigma: &Permutation, base: usize, verify: Option<usize>) -> CmdResult {
    let report = classify_from(ty, sigma, base)?;
    let head = Record::new()
        .with("command", "classify")
        .with("type", ty)
        .with("monodromy", sigma)
        .with("base_stage", base)
        .with("degree", report.degree)
        .with("stabilization_stage", report.stabilization.stage())
        .with("stabilization", report.stabilization)
        .with("components", report.components.len())
        .with("connected", report.connected);
    let mut out = Outcome::ok(vec![head]);
    for (i, c) in report.components.iter().enumerate() {
        let mut rec = Record::new()
            .with("component", i + 1)
            .with("length", c.length)
            .with("sheets", list(&c.sheets));
        verdict_fields(&mut rec, "tail_coprime", c.tail_coprime);
        rec.push("homeomorphic_to_base", c.homeomorphic_to_base);
        out.records.push(rec);
    }
    if let Some(horizon) = verify {
        ty.check_stage(horizon)?;
        let check = oracle_check(ty, &report, horizon)?;
        out.mismatch |= check.agree == Some(false);
        out.records.push(check.record);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Coefficients {
    #[value(name = "Z")]
    Z,
    #[value(name = "Q")]
    Q,
}

pub fn cohomology(
    ty: &SolenoidType,
    coeff: Coefficients,
    stages: Option<usize>,
    gens: &[Fraction],
) -> CmdResult {
    let mut head = Record::new().with("command", "cohomology").with("type", ty);
    match coeff {
        Coefficients::Q => {
            if !gens.is_empty() {
                return Err(Error::NotExpressible(
                    "--gens (rational coefficients take no generators)".into(),
                ));
            }
            let stages = stages.ok_or(Error::NonPositive("--stages"))?;
            let rank = limit_rank_over_q(ty, stages)?;
            head.push("coeff", "Q");
            head.push("stages", stages);
            head.push("rank", rank);
        }
        Coefficients::Z => {
            if let Some(n) = stages {
                ty.check_stage(n)?;
            }
            let mut gen_stages = Vec::with_capacity(gens.len());
            for g in gens {
                match first_stage_of(ty, g) {
                    Some(s) if stages.is_none_or(|n| s <= n) => gen_stages.push(s),
                    _ => return Err(Error::NotExpressible(g.to_string())),
                }
            }
            let group = span(gens);
            let witness = non_fg_witness(ty, &group)?;
            let element = solenoid_core::inject(ty, &witness)?;
            head.push("coeff", "Z");
            if let Some(n) = stages {
                head.push("stages", n);
            }
            head.push("gens", list(gens));
            head.push("gen_stages", list(&gen_stages));
            head.push("span", group.generator());
            head.push("witness_stage", witness.stage);
            head.push("witness", element);
        }
    }
    Ok(Outcome::ok(vec![head]))
}

pub fn equiv(left: &SolenoidType, right: &SolenoidType) -> CmdResult {
    let rec = Record::new()
        .with("command", "equiv")
        .with("left", left)
        .with("right", right)
        .with("left_supernatural", supernatural_of(left)?)
        .with("right_supernatural", supernatural_of(right)?)
        .with("equivalent", types_equivalent(left, right)?);
    Ok(Outcome::ok(vec![rec]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OracleMethod {
    Both,
    Enumerate,
    ClosedForm,
}

pub fn oracle(
    ty: &SolenoidType,
    sigma: &Permutation,
    base: usize,
    stage: usize,
    method: OracleMethod,
) -> CmdResult {
    let group = StageGroup::new(ty, base, stage)?;
    let order = group.order().clone();
    let system = ProductSystem::new(group, sigma.clone());
    let closed = system.orbit_count(CountMethod::ClosedForm)?;
    let enumerated = match method {
        OracleMethod::ClosedForm => None,
        OracleMethod::Enumerate => Some(system.orbit_count(CountMethod::Enumerate)?),
        OracleMethod::Both => match system.orbit_count(CountMethod::Enumerate) {
            Ok(n) => Some(n),
            Err(Error::StateBudget { .. }) => None,
            Err(e) => return Err(e),
        },
    };
    let classifier = solenoid_core::sigma_from(ty, sigma, base, stage)?.orbit_count();
    let agree = closed == classifier && enumerated.is_none_or(|n| n == closed);
    let rec = Record::new()
        .with("command", "oracle")
        .with("type", ty)
        .with("monodromy", sigma)
        .with("base_stage", base)
        .with("stage", stage)
        .with("order", &order)
        .with(
            "states",
            system
                .state_count()
                .map_or("overflow".to_string(), |s| s.to_string()),
        )
        .with("closed_form", closed)
        .with(
            "enumerated",
            enumerated.map_or("skipped".to_string(), |n| n.to_string()),
        )
        .with("classifier", classifier)
        .with("agree", agree);
    Ok(Outcome {
        records: vec![rec],
        mismatch: !agree,
    })
}
