use num_rational::Ratio;
use proptest::prelude::*;
use solenoid_core::*;

type Q = Ratio<i64>;

fn periodic_type() -> impl Strategy<Value = SolenoidType> {
    (
        prop::collection::vec(2u64..=30, 0..4),
        prop::collection::vec(2u64..=30, 1..4),
    )
        .prop_map(|(prefix, period)| SolenoidType::periodic(prefix, period).unwrap())
}

fn any_type() -> impl Strategy<Value = SolenoidType> {
    prop_oneof![
        periodic_type(),
        prop::collection::vec(2u64..=30, 1..6).prop_map(|p| SolenoidType::finite(p).unwrap()),
    ]
}

fn permutation(max_degree: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_degree)
        .prop_flat_map(|r| Just((1..=r).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

fn iterate(images: &[usize], e: u64) -> Vec<usize> {
    let mut acc: Vec<usize> = (1..=images.len()).collect();
    for _ in 0..e {
        acc = acc.iter().map(|&y| images[y - 1]).collect();
    }
    acc
}

fn to_q(f: &Fraction) -> Q {
    let n: i64 = f.numer().try_into().unwrap();
    Q::new(n, f.denom().to_u64().unwrap() as i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn type_round_trips(t in any_type()) {
        let text = t.to_string();
        prop_assert_eq!(parse_type(&text)?, t.clone());
        let spaced = text.replace(',', " , ").replace('|', " | ");
        prop_assert_eq!(parse_type(&spaced)?, t);
    }

    #[test]
    fn supernatural_ignores_period_rotation(prefix in prop::collection::vec(2u64..=30, 0..3),
                                            period in prop::collection::vec(2u64..=30, 1..4),
                                            k in 0usize..4) {
        let a = SolenoidType::periodic(prefix.clone(), period.clone())?;
        let k = k % period.len();
        let mut longer = prefix;
        longer.extend_from_slice(&period[..k]);
        let mut rotated = period.clone();
        rotated.rotate_left(k);
        let b = SolenoidType::periodic(longer, rotated)?;
        prop_assert_eq!(supernatural_of(&a)?, supernatural_of(&b)?);
    }

    #[test]
    fn tail_coprime_is_multiplicative(t in periodic_type(), r in 1u64..200, s in 1u64..200) {
        prop_assert_eq!(tail_coprime(&t, 1)?, Verdict::DecidedTrue);
        let both = tail_coprime(&t, r)?.is_decided_true() && tail_coprime(&t, s)?.is_decided_true();
        prop_assert_eq!(tail_coprime(&t, r * s)?.is_decided_true(), both);
    }

    #[test]
    fn equivalence_relation(a in periodic_type(), b in periodic_type(), c in periodic_type()) {
        prop_assert!(types_equivalent(&a, &a)?);
        prop_assert_eq!(types_equivalent(&a, &b)?, types_equivalent(&b, &a)?);
        if types_equivalent(&a, &b)? && types_equivalent(&b, &c)? {
            prop_assert!(types_equivalent(&a, &c)?);
        }
    }

    #[test]
    fn inject_commutes_with_connecting_maps(t in periodic_type(), n in 0usize..70, a in -1000i64..1000) {
        let w = t.term(n + 1).unwrap() as i64;
        let here = inject(&t, &LimitElement::new(n, a))?;
        let there = inject(&t, &LimitElement::new(n + 1, a * w))?;
        prop_assert_eq!(here, there);
    }

    #[test]
    fn span_is_order_independent_and_idempotent(
        gens in prop::collection::vec((-40i64..40, 1u64..60), 0..5),
        probe in (-40i64..40, 1u64..60),
    ) {
        let fracs: Vec<Fraction> = gens.iter().map(|&(a, b)| Fraction::from_ratio(a, b).unwrap()).collect();
        let g = span(&fracs);
        let reversed: Vec<Fraction> = fracs.iter().rev().cloned().collect();
        prop_assert_eq!(span(&reversed), g.clone());
        for f in &fracs {
            prop_assert!(contains(&g, f));
        }
        let x = Fraction::from_ratio(probe.0, probe.1)?;
        if contains(&g, &x) {
            let mut more = fracs.clone();
            more.push(x);
            prop_assert_eq!(span(&more), g);
        }
    }

    #[test]
    fn stage_injections_never_generate_the_limit(
        t in periodic_type(),
        elems in prop::collection::vec((0usize..20, -50i64..50), 0..6),
    ) {
        let fracs: Vec<Fraction> = elems
            .iter()
            .map(|&(n, a)| inject(&t, &LimitElement::new(n, a)).unwrap())
            .collect();
        let g = span(&fracs);
        let w = non_fg_witness(&t, &g)?;
        prop_assert!(!contains(&g, &inject(&t, &w)?));
        for earlier in 1..w.stage {
            prop_assert!(contains(&g, &inject(&t, &LimitElement::new(earlier, 1))?));
        }
    }

    #[test]
    fn power_matches_iterated_composition(p in permutation(8), e in 0u64..10_000) {
        let images = p.images();
        let brute = Permutation::from_images(&iterate(&images, e))?;
        prop_assert_eq!(p.pow_u64(e), brute.clone());
        if e > 0 {
            prop_assert_eq!(p.power(&Factored::of(e).unwrap()), brute);
        }
    }

    #[test]
    fn stage_powers_agree_with_stepwise_powers(t in periodic_type(), p in permutation(8), n in 0usize..40) {
        let mut step = p.clone();
        for k in 1..=n {
            step = step.pow_u64(t.term(k).unwrap());
        }
        prop_assert_eq!(sigma_at_stage(&t, &p, n)?, step);
    }

    #[test]
    fn orbits_refine_monotonically(t in periodic_type(), p in permutation(8)) {
        let mut prev = p.clone();
        for n in 1..=20 {
            let next = sigma_at_stage(&t, &p, n)?;
            prop_assert!(next.orbit_count() >= prev.orbit_count());
            prop_assert!(next.orbit_count() <= p.degree());
            // every new orbit sits inside an old one
            for c in next.cycles() {
                let owner = prev.cycles().iter().find(|oc| oc.contains(&c[0])).unwrap();
                prop_assert!(c.iter().all(|x| owner.contains(x)));
            }
            prev = next;
        }
    }

    #[test]
    fn classification_invariants(t in periodic_type(), p in permutation(8)) {
        let report = classify(&t, &p);
        prop_assert_eq!(report.components.iter().map(|c| c.length).sum::<usize>(), p.degree());
        prop_assert_eq!(report.connected, report.components.len() == 1);
        prop_assert!(report.stabilization.is_decided());
        let later = t.entries_after(report.stabilization.stage());
        for c in &report.components {
            prop_assert!(later.iter().all(|&w| num_integer::gcd(w, c.length as u64) == 1));
            prop_assert_eq!(c.tail_coprime, Verdict::DecidedTrue);
            prop_assert!(c.homeomorphic_to_base);
        }
    }

    #[test]
    fn existence_matches_the_cycle_witness(t in periodic_type(), r in 1usize..=12) {
        let e = connected_covering_exists(&t, r)?;
        let cycle = Permutation::full_cycle(r)?;
        let connected = classify_from(&t, &cycle, e.witness_stage)?.connected;
        prop_assert_eq!(e.verdict.is_decided_true(), connected);
        if let Some(w) = e.witness {
            prop_assert_eq!(w, cycle);
        }
    }

    #[test]
    fn kernel_tower_bijectivity_is_tail_coprimality(t in periodic_type(), l in 1u64..60) {
        // floors Z/(w_{n+1}⋯w_{n+k}) based past the prefix, one full period deep
        let base = t.prefix().len();
        let depth = t.period().unwrap().len();
        let all_floors = (1..=depth).all(|k| {
            let m = t.product_between(base, base + k).unwrap().to_u64().unwrap();
            power_map_bijective(m, l)
        });
        prop_assert_eq!(all_floors, tail_coprime(&t, l)?.is_decided_true());
        prop_assert_eq!(tower_power_bijective(&t, base, depth, l)?, all_floors);
    }

    #[test]
    fn oracle_agrees_with_classifier(t in periodic_type(), p in permutation(8)) {
        let report = classify(&t, &p);
        let horizon = report.stabilization.stage() + t.period().unwrap().len();
        let lim = component_limit_from(&t, &p, 0, horizon.max(1), CountMethod::ClosedForm)?;
        prop_assert_eq!(lim.count, report.components.len());
        prop_assert!(lim.counts.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(lim.counts.iter().all(|&c| c <= p.degree()));
    }

    #[test]
    fn closed_form_matches_enumeration(q in 1u64..=10_000, p in permutation(8)) {
        let sys = ProductSystem::new(StageGroup::cyclic(q)?, p.clone());
        let enumerated = sys.orbit_count(CountMethod::Enumerate)?;
        prop_assert_eq!(enumerated, sys.orbit_count(CountMethod::ClosedForm)?);
        let q_factored = Factored::of(q).unwrap();
        prop_assert_eq!(enumerated, p.power(&q_factored).orbit_count());
    }

    #[test]
    fn contains_matches_bounded_search(
        gens in prop::collection::vec((-4i64..=4, 1i64..=5), 1..=2),
        x in (-5i64..=5, 1i64..=100),
    ) {
        const B: i64 = 1000;
        let qs: Vec<Q> = gens.iter().map(|&(a, b)| Q::new(a, b)).collect();
        let target = Q::new(x.0, x.1);
        let brute = match qs.as_slice() {
            [s] => if *s == Q::from(0) { target == Q::from(0) } else {
                let k = target / s;
                k.is_integer() && k.to_integer().abs() <= B
            },
            [s, t] => (-B..=B).any(|k1| {
                let rest = target - s * Q::from(k1);
                if *t == Q::from(0) { rest == Q::from(0) } else {
                    let k2 = rest / t;
                    k2.is_integer() && k2.to_integer().abs() <= B
                }
            }),
            _ => unreachable!(),
        };
        let fracs: Vec<Fraction> = gens.iter().map(|&(a, b)| Fraction::from_ratio(a, b as u64).unwrap()).collect();
        let tf = Fraction::from_ratio(x.0, x.1 as u64)?;
        prop_assert_eq!(contains(&span(&fracs), &tf), brute);
        prop_assert_eq!(to_q(span(&fracs).generator()) >= Q::from(0), true);
    }
}

#[test]
fn orbit_splitting_law_exhaustive() {
    for l in 1..=12usize {
        let cycle = Permutation::full_cycle(l).unwrap();
        for e in 0..=500u64 {
            let g = num_integer::gcd(l as u64, e) as usize;
            let powered = cycle.pow_u64(e);
            assert_eq!(powered.orbit_count(), g, "l={l} e={e}");
            assert!(powered.cycle_lengths().all(|len| len == l / g));
        }
    }
}
