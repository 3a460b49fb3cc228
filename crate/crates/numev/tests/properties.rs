//! Property tests for the algebraic laws of the core operations.

use proptest::prelude::*;

use numev::classify;
use numev::doc::FamilyDocument;
use numev::event::{pointwise_sum, Event};
use numev::family::EventFamily;
use numev::rational::Rational;

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (0u64..=12, 1u64..=12).prop_map(|(n, d)| {
        let d = d.max(1);
        Rational::new(n.min(d), d)
    })
}

fn event_strategy(arity: usize) -> impl Strategy<Value = Event> {
    prop::collection::vec(rational_strategy(), arity)
        .prop_map(|values| Event::new(values).expect("values in range"))
}

fn arity_strategy() -> impl Strategy<Value = usize> {
    1usize..=3
}

fn event_pair() -> impl Strategy<Value = (Event, Event)> {
    arity_strategy().prop_flat_map(|arity| (event_strategy(arity), event_strategy(arity)))
}

fn event_triple() -> impl Strategy<Value = (Event, Event, Event)> {
    arity_strategy().prop_flat_map(|arity| {
        (
            event_strategy(arity),
            event_strategy(arity),
            event_strategy(arity),
        )
    })
}

/// Random family closed under complement and containing the bounds, so the
/// order-theoretic laws that need (1) and (2) are exercised honestly.
fn closed_family() -> impl Strategy<Value = EventFamily> {
    arity_strategy().prop_flat_map(|arity| {
        prop::collection::vec(event_strategy(arity), 0..4).prop_map(move |raw| {
            let mut events = vec![Event::constant_zero(arity), Event::constant_one(arity)];
            for event in raw {
                events.push(event.complement());
                events.push(event);
            }
            events.sort();
            events.dedup();
            let states = (1..=arity).map(|i| format!("s{i}")).collect();
            EventFamily::new(states, events).expect("distinct by construction")
        })
    })
}

proptest! {
    #[test]
    fn complement_is_an_antitone_involution((p, q) in event_pair()) {
        prop_assert_eq!(p.complement().complement(), p.clone());
        if p.leq(&q) {
            prop_assert!(q.complement().leq(&p.complement()));
        }
    }

    #[test]
    fn sums_commute_and_associate((p, q, r) in event_triple()) {
        prop_assert_eq!(pointwise_sum([&p, &q]), pointwise_sum([&q, &p]));
        let left = pointwise_sum([&p, &q, &r]);
        let right = pointwise_sum([&r, &q, &p]);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn sum_with_complement_is_constant_one(p in arity_strategy().prop_flat_map(event_strategy)) {
        let sum = pointwise_sum([&p, &p.complement()]);
        prop_assert!(sum.values().iter().all(|v| v.is_one()));
    }

    #[test]
    fn disjointness_is_zero_infimum(family in closed_family()) {
        let zero = Event::constant_zero(family.arity());
        for p in family.events() {
            for q in family.events() {
                let disjoint = family.is_disjoint(p, q);
                let inf_is_zero = family.infimum_in(p, q) == Some(&zero);
                prop_assert_eq!(disjoint, inf_is_zero, "{} {} in {:?}", p, q, family);
            }
        }
    }

    #[test]
    fn infima_satisfy_the_universal_property(family in closed_family()) {
        for p in family.events() {
            for q in family.events() {
                if let Some(m) = family.infimum_in(p, q) {
                    prop_assert!(m.leq(p) && m.leq(q));
                    for x in family.events() {
                        if x.leq(p) && x.leq(q) {
                            prop_assert!(x.leq(m));
                        }
                    }
                }
                if let Some(s) = family.supremum_in(p, q) {
                    prop_assert!(p.leq(s) && q.leq(s));
                    for x in family.events() {
                        if p.leq(x) && q.leq(x) {
                            prop_assert!(s.leq(x));
                        }
                    }
                }
            }
        }
    }

    // A De Morgan failure here means a defect in the order queries, not a
    // gap in the mathematics.
    #[test]
    fn demorgan_holds_on_complement_closed_families(family in closed_family()) {
        let verdict = classify::demorgan_check(&family).expect("bounds and complements present");
        prop_assert!(verdict.holds, "witness {:?} in {:?}", verdict.witness, family);
    }

    #[test]
    fn products_are_associative_and_idempotent_on_two_valued((p, q, r) in event_triple()) {
        let left = p.pointwise_product(&q).pointwise_product(&r);
        let right = p.pointwise_product(&q.pointwise_product(&r));
        prop_assert_eq!(left, right);

        let two_valued = Event::new(
            p.values()
                .iter()
                .map(|v| if v.is_zero() { Rational::ZERO } else { Rational::ONE })
                .collect(),
        )
        .unwrap();
        prop_assert_eq!(two_valued.pointwise_product(&two_valued), two_valued);
    }

    #[test]
    fn family_documents_round_trip(family in closed_family()) {
        let doc = FamilyDocument::from_family(&family);
        let text = doc.to_json();
        let reparsed = FamilyDocument::parse(&text).unwrap().to_family().unwrap();
        prop_assert_eq!(reparsed, family);
    }

    #[test]
    fn classification_reports_survive_serialization(family in closed_family()) {
        let report = classify::classify(&family);
        let json = serde_json::to_string(&report).unwrap();
        let back: classify::ClassificationReport = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, report);
    }
}
