use proptest::prelude::*;

use ctm::analysis::{self, average_ranks, rank_correlation, Scope};
use ctm::bounds::{classify, step_bound, HaltingPolicy, Verdict};
use ctm::distribution::{Coverage, Formalism, Provenance, Space};
use ctm::tm::{machine_count, simulate, MachineIndex, TransitionTable};
use ctm::{word, FrequencyDistribution};

fn meta(range: std::ops::Range<u128>) -> Provenance {
    Provenance::new(Formalism::Tm, Space::States(2), 6).with_coverage(Coverage::range(range))
}

fn dist_from(entries: &[(String, u64)], range: std::ops::Range<u128>) -> FrequencyDistribution {
    let mut d = FrequencyDistribution::new(meta(range));
    for (s, c) in entries {
        d.add(s, *c);
    }
    // one halting run per recorded output keeps the header consistent
    let mass = d.mass();
    d.record_enumerated(mass);
    d.record_halting(mass);
    d
}

fn entries() -> impl Strategy<Value = Vec<(String, u64)>> {
    prop::collection::vec(("[01]{1,5}", 1u64..1000), 0..20)
}

proptest! {
    #[test]
    fn encode_inverts_decode(index in 0u128..7_529_536) {
        let t = TransitionTable::decode(MachineIndex::new(3, index).unwrap()).unwrap();
        prop_assert_eq!(t.encode().index, index);
    }

    #[test]
    fn complement_and_mirror_are_involutions(index in 0u128..7_529_536) {
        let t = TransitionTable::decode(MachineIndex::new(3, index).unwrap()).unwrap();
        prop_assert_eq!(t.complement().complement(), t.clone());
        prop_assert_eq!(t.mirror().mirror(), t);
    }

    #[test]
    fn mirror_machine_outputs_reverse(index in 0u128..7_529_536) {
        let t = TransitionTable::decode(MachineIndex::new(3, index).unwrap()).unwrap();
        let a = simulate(&t, 21).unwrap();
        let m = simulate(&t.mirror(), 21).unwrap();
        prop_assert_eq!(a.steps(), m.steps());
        prop_assert_eq!(a.output().map(word::reverse), m.output().map(str::to_string));
    }

    #[test]
    fn halting_is_monotone_in_the_bound(index in 0u128..7_529_536, extra in 0u64..50) {
        let t = TransitionTable::decode(MachineIndex::new(3, index).unwrap()).unwrap();
        let short = simulate(&t, 21).unwrap();
        let long = simulate(&t, 21 + extra).unwrap();
        if short.is_halted() {
            prop_assert_eq!(short.output(), long.output());
            prop_assert_eq!(short.steps(), long.steps());
        }
        // with the exact bound nothing halts later
        prop_assert_eq!(short.is_halted(), long.is_halted());
        let v = classify(&short, &HaltingPolicy::exact(3).unwrap()).unwrap();
        prop_assert_ne!(v, Verdict::Undecided);
    }

    #[test]
    fn merge_commutes(a in entries(), b in entries()) {
        let x = dist_from(&a, 0..5).merge(dist_from(&b, 5..9)).unwrap();
        let y = dist_from(&b, 5..9).merge(dist_from(&a, 0..5)).unwrap();
        prop_assert_eq!(x.to_text(), y.to_text());
    }

    #[test]
    fn merge_associates(a in entries(), b in entries(), c in entries()) {
        let x = dist_from(&a, 0..3)
            .merge(dist_from(&b, 3..6))
            .unwrap()
            .merge(dist_from(&c, 6..9))
            .unwrap();
        let y = dist_from(&a, 0..3)
            .merge(dist_from(&b, 3..6).merge(dist_from(&c, 6..9)).unwrap())
            .unwrap();
        prop_assert_eq!(x.to_text(), y.to_text());
    }

    #[test]
    fn text_round_trips(a in entries()) {
        let d = dist_from(&a, 0..3);
        let back: FrequencyDistribution = d.to_text().parse().unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn probabilities_sum_to_one(a in entries()) {
        let d = dist_from(&a, 0..1);
        prop_assume!(!d.is_empty());
        let total: f64 = d.counts().keys().map(|s| d.sl(s).unwrap()).sum();
        prop_assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn ranking_ignores_count_scale(a in entries(), factor in 1u64..50) {
        let d = dist_from(&a, 0..1);
        prop_assume!(!d.is_empty());
        let scaled: Vec<(String, u64)> = d.counts().iter().map(|(s, &c)| (s.clone(), c * factor)).collect();
        let r1 = analysis::rank(&d, Scope::All).unwrap();
        let r2 = analysis::rank(&dist_from(&scaled, 0..1), Scope::All).unwrap();
        let order = |r: &analysis::RankedClassification| {
            r.entries.iter().map(|e| (e.string.clone(), e.rank)).collect::<Vec<_>>()
        };
        prop_assert_eq!(order(&r1), order(&r2));
    }

    #[test]
    fn average_ranks_sum_like_positions(v in prop::collection::vec(0u64..6, 1..40)) {
        let n = v.len() as f64;
        let sum: f64 = average_ranks(&v).iter().sum();
        prop_assert!((sum - n * (n + 1.0) / 2.0).abs() < 1e-9);
    }

    #[test]
    fn rho_is_symmetric_and_bounded(
        pairs in prop::collection::vec((0u64..5, 0u64..5), 2..40)
    ) {
        let a: Vec<u64> = pairs.iter().map(|p| p.0).collect();
        let b: Vec<u64> = pairs.iter().map(|p| p.1).collect();
        let (ra, rb) = (average_ranks(&a), average_ranks(&b));
        let ab = rank_correlation(&ra, &rb).unwrap();
        let ba = rank_correlation(&rb, &ra).unwrap();
        prop_assert!((-1.0..=1.0).contains(&ab));
        prop_assert!((ab - ba).abs() < 1e-12);
        prop_assert_eq!(rank_correlation(&ra, &ra).unwrap(), 1.0);
    }

    #[test]
    fn words_complement_and_reverse(s in "[01]{1,30}") {
        prop_assert_eq!(word::complement(&word::complement(&s)), s.clone());
        prop_assert_eq!(word::reverse(&word::reverse(&s)), s.clone());
        let h = ctm::distribution::shannon_entropy(&s).unwrap();
        prop_assert!((0.0..=1.0).contains(&h));
        prop_assert_eq!(h, ctm::distribution::shannon_entropy(&word::complement(&s)).unwrap());
    }
}

#[test]
fn bounds_grow_with_states() {
    let b: Vec<u64> = (1..=4).map(|n| step_bound(n).unwrap()).collect();
    assert!(b.windows(2).all(|w| w[0] < w[1]));
    let c: Vec<u128> = (1..=4).map(|n| machine_count(n).unwrap()).collect();
    assert!(c.windows(2).all(|w| w[0] < w[1]));
}
