//! Numerical events and raw pointwise vectors.
//!
//! An [`Event`] assigns to every state of the ambient state set a probability
//! in \[0,1\]. A [`PointwiseVector`] is the unconstrained counterpart produced
//! by sums and differences, whose coordinates may leave \[0,1\]; whether such a
//! vector is again an event of a family is exactly the membership question
//! the classification conditions ask.

use std::cmp::Ordering;
use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rational::Rational;

/// An S-probability: one value per state, each in \[0,1\].
///
/// The derived `Ord` is the lexicographic order used for canonical sorting of
/// families; the pointwise event order is [`Event::leq`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Event(Vec<Rational>);

/// Violation of the event invariants at construction time.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EventError {
    #[error("event coordinate {index} is {value}, outside [0,1]")]
    ValueOutOfRange { index: usize, value: Rational },
    #[error("event has no coordinates")]
    Empty,
}

impl Event {
    pub fn new(values: Vec<Rational>) -> Result<Event, EventError> {
        if values.is_empty() {
            return Err(EventError::Empty);
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.le_one() {
                return Err(EventError::ValueOutOfRange { index, value });
            }
        }
        Ok(Event(values))
    }

    pub fn constant_zero(arity: usize) -> Event {
        Event(vec![Rational::ZERO; arity])
    }

    pub fn constant_one(arity: usize) -> Event {
        Event(vec![Rational::ONE; arity])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn value(&self, state: usize) -> Rational {
        self.0[state]
    }

    pub fn is_constant_zero(&self) -> bool {
        self.0.iter().all(|v| v.is_zero())
    }

    pub fn is_constant_one(&self) -> bool {
        self.0.iter().all(|v| v.is_one())
    }

    /// The order of real functions: `self(s) <= other(s)` for every state.
    pub fn leq(&self, other: &Event) -> bool {
        assert_eq!(self.arity(), other.arity(), "event arity mismatch");
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `p' = 1 - p`, the antitone involution of every family.
    pub fn complement(&self) -> Event {
        Event(self.0.iter().map(|v| v.one_minus()).collect())
    }

    /// `p ⟂ q`, i.e. `p <= 1 - q` pointwise.
    pub fn orthogonal_to(&self, other: &Event) -> bool {
        assert_eq!(self.arity(), other.arity(), "event arity mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .all(|(a, b)| *a + *b <= Rational::ONE)
    }

    pub fn pointwise_min(&self, other: &Event) -> Event {
        assert_eq!(self.arity(), other.arity(), "event arity mismatch");
        Event(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn pointwise_max(&self, other: &Event) -> Event {
        assert_eq!(self.arity(), other.arity(), "event arity mismatch");
        Event(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// `(p·q)(s) = p(s)·q(s)`. Stays inside \[0,1\], idempotent on
    /// {0,1}-valued events, associative.
    pub fn pointwise_product(&self, other: &Event) -> Event {
        assert_eq!(self.arity(), other.arity(), "event arity mismatch");
        Event(self.0.iter().zip(&other.0).map(|(a, b)| *a * *b).collect())
    }

    pub fn is_zero_one_valued(&self) -> bool {
        self.0.iter().all(|v| v.is_zero() || v.is_one())
    }

    /// Varying: constant 0, constant 1, or taking values strictly on both
    /// sides of 1/2.
    pub fn is_varying(&self) -> bool {
        if self.is_constant_zero() || self.is_constant_one() {
            return true;
        }
        let above = self.0.iter().any(|v| v.cmp_half() == Ordering::Greater);
        let below = self.0.iter().any(|v| v.cmp_half() == Ordering::Less);
        above && below
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A raw coordinatewise vector: entries are nonnegative but unbounded above.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointwiseVector(Vec<Rational>);

/// Failure of the nonnegativity precondition of a pointwise difference.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("difference is negative at coordinate {index}: {minuend} - {subtrahend}")]
pub struct NegativeDifference {
    pub index: usize,
    pub minuend: Rational,
    pub subtrahend: Rational,
}

impl PointwiseVector {
    pub fn new(values: Vec<Rational>) -> PointwiseVector {
        PointwiseVector(values)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    /// True iff every coordinate is at most 1, i.e. the vector could be an
    /// event again.
    pub fn le_one(&self) -> bool {
        self.0.iter().all(|v| v.le_one())
    }

    /// Reinterprets the vector as an event when all coordinates fit \[0,1\].
    pub fn as_event(&self) -> Option<Event> {
        if self.le_one() {
            Some(Event(self.0.clone()))
        } else {
            None
        }
    }
}

impl fmt::Display for PointwiseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for PointwiseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Coordinatewise sum of a nonempty list of events; may exceed 1.
pub fn pointwise_sum<'a, I>(events: I) -> PointwiseVector
where
    I: IntoIterator<Item = &'a Event>,
{
    let mut iter = events.into_iter();
    let first = iter.next().expect("pointwise_sum of an empty list");
    let mut acc: Vec<Rational> = first.0.clone();
    for event in iter {
        assert_eq!(acc.len(), event.arity(), "event arity mismatch");
        for (a, b) in acc.iter_mut().zip(&event.0) {
            *a = *a + *b;
        }
    }
    PointwiseVector(acc)
}

/// Coordinatewise difference `p - q`; requires `q <= p` pointwise.
pub fn pointwise_diff(p: &Event, q: &Event) -> Result<PointwiseVector, NegativeDifference> {
    assert_eq!(p.arity(), q.arity(), "event arity mismatch");
    let mut values = Vec::with_capacity(p.arity());
    for (index, (a, b)) in p.0.iter().zip(&q.0).enumerate() {
        match a.checked_sub(*b) {
            Some(v) => values.push(v),
            None => {
                return Err(NegativeDifference {
                    index,
                    minuend: *a,
                    subtrahend: *b,
                })
            }
        }
    }
    Ok(PointwiseVector(values))
}

// Events and vectors cross the serialization boundary as sequences of
// rational strings, validating the [0,1] invariant on the way in.
impl Serialize for Event {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Event {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Event, D::Error> {
        let values = Vec::<Rational>::deserialize(deserializer)?;
        Event::new(values).map_err(de::Error::custom)
    }
}

impl Serialize for PointwiseVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PointwiseVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<PointwiseVector, D::Error> {
        Ok(PointwiseVector(Vec::<Rational>::deserialize(deserializer)?))
    }
}
