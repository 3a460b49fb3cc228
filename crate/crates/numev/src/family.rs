//! Finite families of numerical events over a shared state set, together
//! with all order-theoretic queries: bounds, infima and suprema taken inside
//! the family, disjointness and orthogonality.
//!
//! Families are canonicalized at construction: events are sorted
//! lexicographically and must be pairwise distinct, so every report and
//! witness is reproducible.

use serde::de;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::event::{Event, PointwiseVector};

/// A finite set of distinct events over an ordered finite state set.
#[derive(Clone, PartialEq, Eq)]
pub struct EventFamily {
    states: Vec<String>,
    events: Vec<Event>,
    // n×n pointwise-order matrix: leq[i * n + j] iff events[i] <= events[j].
    leq: Vec<bool>,
    orthogonal: Vec<bool>,
    disjoint: Vec<bool>,
    complement_idx: Vec<Option<usize>>,
    zero_idx: Option<usize>,
    one_idx: Option<usize>,
}

/// Violation of the family invariants at construction time.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("family has no states")]
    NoStates,
    #[error("duplicate state label `{label}`")]
    DuplicateState { label: String },
    #[error("family has no events")]
    NoEvents,
    #[error("event {index} has arity {found}, expected {expected}")]
    ArityMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("duplicate event {event} (input positions {first} and {second})")]
    DuplicateEvent {
        event: Event,
        first: usize,
        second: usize,
    },
}

impl EventFamily {
    pub fn new(states: Vec<String>, events: Vec<Event>) -> Result<EventFamily, FamilyError> {
        if states.is_empty() {
            return Err(FamilyError::NoStates);
        }
        for (i, label) in states.iter().enumerate() {
            if states[..i].contains(label) {
                return Err(FamilyError::DuplicateState {
                    label: label.clone(),
                });
            }
        }
        if events.is_empty() {
            return Err(FamilyError::NoEvents);
        }
        let arity = states.len();
        for (index, event) in events.iter().enumerate() {
            if event.arity() != arity {
                return Err(FamilyError::ArityMismatch {
                    index,
                    expected: arity,
                    found: event.arity(),
                });
            }
        }
        let mut order: Vec<usize> = (0..events.len()).collect();
        order.sort_by(|&a, &b| events[a].cmp(&events[b]));
        for pair in order.windows(2) {
            if events[pair[0]] == events[pair[1]] {
                let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                return Err(FamilyError::DuplicateEvent {
                    event: events[a].clone(),
                    first: a,
                    second: b,
                });
            }
        }
        let sorted: Vec<Event> = order.into_iter().map(|i| events[i].clone()).collect();
        Ok(EventFamily::from_sorted(states, sorted))
    }

    /// Events must already be sorted, distinct and of uniform arity.
    pub(crate) fn from_sorted(states: Vec<String>, events: Vec<Event>) -> EventFamily {
        debug_assert!(events.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(events.iter().all(|e| e.arity() == states.len()));
        let n = events.len();
        let mut leq = vec![false; n * n];
        let mut orthogonal = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = events[i].leq(&events[j]);
                orthogonal[i * n + j] = events[i].orthogonal_to(&events[j]);
            }
        }
        let is_zero: Vec<bool> = events.iter().map(|e| e.is_constant_zero()).collect();
        let mut disjoint = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                disjoint[i * n + j] =
                    (0..n).all(|k| !(leq[k * n + i] && leq[k * n + j]) || is_zero[k]);
            }
        }
        let complement_idx = events
            .iter()
            .map(|e| {
                let c = e.complement();
                events.binary_search(&c).ok()
            })
            .collect();
        let zero_idx = events
            .binary_search(&Event::constant_zero(states.len()))
            .ok();
        let one_idx = events
            .binary_search(&Event::constant_one(states.len()))
            .ok();
        EventFamily {
            states,
            events,
            leq,
            orthogonal,
            disjoint,
            complement_idx,
            zero_idx,
            one_idx,
        }
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn arity(&self) -> usize {
        self.states.len()
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Events in canonical (lexicographic) order.
    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn event(&self, index: usize) -> &Event {
        &self.events[index]
    }

    pub fn index_of(&self, event: &Event) -> Option<usize> {
        self.events.binary_search(event).ok()
    }

    pub fn contains(&self, event: &Event) -> bool {
        self.index_of(event).is_some()
    }

    pub fn zero_index(&self) -> Option<usize> {
        self.zero_idx
    }

    pub fn one_index(&self) -> Option<usize> {
        self.one_idx
    }

    pub fn has_bounds(&self) -> bool {
        self.zero_idx.is_some() && self.one_idx.is_some()
    }

    /// Index of `1 - events[i]` inside the family, if present.
    pub fn complement_index(&self, i: usize) -> Option<usize> {
        self.complement_idx[i]
    }

    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.events.len() + j]
    }

    pub fn orthogonal_idx(&self, i: usize, j: usize) -> bool {
        self.orthogonal[i * self.events.len() + j]
    }

    /// Disjointness inside the family: every common lower bound is the
    /// constant 0 ("p ∧ q = 0").
    pub fn disjoint_idx(&self, i: usize, j: usize) -> bool {
        self.disjoint[i * self.events.len() + j]
    }

    /// Members of the family below both `p` and `q` (the arguments need not
    /// themselves be members).
    pub fn lower_bound_indices(&self, p: &Event, q: &Event) -> Vec<usize> {
        (0..self.events.len())
            .filter(|&k| self.events[k].leq(p) && self.events[k].leq(q))
            .collect()
    }

    pub fn upper_bound_indices(&self, p: &Event, q: &Event) -> Vec<usize> {
        (0..self.events.len())
            .filter(|&k| p.leq(&self.events[k]) && q.leq(&self.events[k]))
            .collect()
    }

    pub fn lower_bounds(&self, p: &Event, q: &Event) -> Vec<&Event> {
        self.lower_bound_indices(p, q)
            .into_iter()
            .map(|k| &self.events[k])
            .collect()
    }

    pub fn upper_bounds(&self, p: &Event, q: &Event) -> Vec<&Event> {
        self.upper_bound_indices(p, q)
            .into_iter()
            .map(|k| &self.events[k])
            .collect()
    }

    /// Greatest lower bound of `p`, `q` taken inside the family, or `None`
    /// if no member of the candidate set dominates all others. Distinct from
    /// a zero meet: "no infimum" and "infimum 0" are different answers.
    pub fn infimum_index(&self, p: &Event, q: &Event) -> Option<usize> {
        let candidates = self.lower_bound_indices(p, q);
        candidates
            .iter()
            .copied()
            .find(|&g| candidates.iter().all(|&x| self.leq_idx(x, g)))
    }

    pub fn supremum_index(&self, p: &Event, q: &Event) -> Option<usize> {
        let candidates = self.upper_bound_indices(p, q);
        candidates
            .iter()
            .copied()
            .find(|&l| candidates.iter().all(|&x| self.leq_idx(l, x)))
    }

    pub fn infimum_in(&self, p: &Event, q: &Event) -> Option<&Event> {
        self.infimum_index(p, q).map(|i| &self.events[i])
    }

    pub fn supremum_in(&self, p: &Event, q: &Event) -> Option<&Event> {
        self.supremum_index(p, q).map(|i| &self.events[i])
    }

    /// Disjointness for arbitrary events of matching arity: every common
    /// lower bound inside the family is the constant 0.
    pub fn is_disjoint(&self, p: &Event, q: &Event) -> bool {
        self.lower_bound_indices(p, q)
            .into_iter()
            .all(|k| self.events[k].is_constant_zero())
    }

    /// Membership of a raw vector: a coordinate above 1 means the vector is
    /// not an event at all, hence never a member.
    pub fn member_index_of_vector(&self, v: &PointwiseVector) -> Option<usize> {
        v.as_event().and_then(|e| self.index_of(&e))
    }
}

// Families cross the serialization boundary in the same shape as the
// family document: state labels plus a list of events.
impl Serialize for EventFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut doc = serializer.serialize_struct("EventFamily", 2)?;
        doc.serialize_field("states", &self.states)?;
        doc.serialize_field("events", &self.events)?;
        doc.end()
    }
}

impl<'de> Deserialize<'de> for EventFamily {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<EventFamily, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            states: Vec<String>,
            events: Vec<Event>,
        }
        let raw = Raw::deserialize(deserializer)?;
        EventFamily::new(raw.states, raw.events).map_err(de::Error::custom)
    }
}

impl std::fmt::Debug for EventFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.events.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{ev, example1, example2, fam, powerset2};

    #[test]
    fn construction_canonicalizes_and_validates() {
        let f = fam(&["1,1", "0,0", "0,1/2"]);
        assert_eq!(f.events()[0], ev("0,0"));
        assert_eq!(f.events()[2], ev("1,1"));
        assert!(f.has_bounds());

        let dup = EventFamily::new(vec!["a".into(), "b".into()], vec![ev("0,0"), ev("0,0")]);
        assert!(matches!(dup, Err(FamilyError::DuplicateEvent { .. })));

        let bad_arity = EventFamily::new(
            vec!["a".into(), "b".into()],
            vec![Event::new(vec![crate::rational::Rational::ZERO]).unwrap()],
        );
        assert!(matches!(bad_arity, Err(FamilyError::ArityMismatch { .. })));
    }

    #[test]
    fn lower_bounds_examples() {
        let f = example1();
        let lbs = f.lower_bounds(&ev("0,1/2"), &ev("1/2,1/4"));
        assert_eq!(lbs, vec![&ev("0,0")]);

        let ps = powerset2();
        let one = ev("1,1");
        assert_eq!(ps.lower_bounds(&one, &one).len(), ps.len());
        let zero = ev("0,0");
        assert_eq!(ps.lower_bounds(&zero, &ev("1,0")), vec![&zero]);
    }

    #[test]
    fn infimum_and_supremum_inside_the_family() {
        let f2 = example2();
        assert_eq!(f2.infimum_in(&ev("0,1/2"), &ev("1/2,0")), Some(&ev("0,0")));

        let f1 = example1();
        let p = ev("1/2,1/4");
        assert_eq!(f1.infimum_in(&p, &ev("1,1")), Some(&p));
        // Upper bounds of (0,1/2) and (1/2,1/4) scanned by hand:
        // (1/2,1/2), (1/2,3/4), (1,1/2), (1,1); the least is (1/2,1/2).
        let ubs = f1.upper_bounds(&ev("0,1/2"), &ev("1/2,1/4"));
        assert_eq!(
            ubs,
            vec![&ev("1/2,1/2"), &ev("1/2,3/4"), &ev("1,1/2"), &ev("1,1")]
        );
        assert_eq!(
            f1.supremum_in(&ev("0,1/2"), &ev("1/2,1/4")),
            Some(&ev("1/2,1/2"))
        );
    }

    #[test]
    fn supremum_can_be_missing() {
        let f2 = example2();
        // (1/2,1) and (1,1/2) are incomparable upper bounds of the pair
        // below, with no least one.
        assert_eq!(f2.supremum_in(&ev("0,1/2"), &ev("1/2,0")), None);
    }

    #[test]
    fn disjointness_and_orthogonality() {
        let f1 = example1();
        assert!(f1.is_disjoint(&ev("0,1/2"), &ev("1/2,1/4")));
        assert!(f1.is_disjoint(&ev("0,0"), &ev("1/2,1/2")));
        assert!(!f1.is_disjoint(&ev("0,1/2"), &ev("1/2,1/2")));
        assert!(ev("0,1/2").orthogonal_to(&ev("1/2,1/2")));

        let i = f1.index_of(&ev("0,1/2")).unwrap();
        let j = f1.index_of(&ev("1/2,1/4")).unwrap();
        assert!(f1.disjoint_idx(i, j));
        assert!(!f1.orthogonal_idx(f1.index_of(&ev("1,1")).unwrap(), j));
    }

    #[test]
    fn vector_membership_short_circuits_above_one() {
        let f1 = example1();
        let too_big = crate::event::pointwise_sum([&ev("0,1/2"), &ev("1/2,1/2"), &ev("1/2,1/4")]);
        assert_eq!(too_big.to_string(), "(1,5/4)");
        assert_eq!(f1.member_index_of_vector(&too_big), None);
        let fits = crate::event::pointwise_sum([&ev("0,1/2"), &ev("1/2,1/4")]);
        assert!(f1.member_index_of_vector(&fits).is_some());
    }
}
