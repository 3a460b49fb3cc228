//! Commutation, infimum faithfulness, and the product-closure test for
//! containment of a chosen subset in a Boolean subalgebra.
//!
//! The fast route is the product criterion: a subset of a structured
//! {0,1}-valued family lies in a Boolean subalgebra iff all products of its
//! elements are members. The slow route, [`boolean_subalgebra_oracle`], is a
//! plain exhaustive search over subsets and exists to cross-check the
//! criterion; the two must always agree and the test suite enforces this at
//! desk scale. Keep the oracle dumb: it must not share logic with the
//! criterion it checks.

use thiserror::Error;

use crate::classify;
use crate::event::Event;
use crate::family::EventFamily;

/// A family together with a chosen list of its members (by index into the
/// canonical event order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetSelection {
    pub family: EventFamily,
    pub chosen: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubalgError {
    #[error("chosen element index {index} out of range (family has {len} events)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("no elements chosen")]
    EmptySelection,
    #[error("family is not {{0,1}}-valued: event {event} has other values")]
    NotTwoValued { event: Event },
    #[error("family is not structured")]
    NotStructured,
}

impl SubsetSelection {
    pub fn new(family: EventFamily, chosen: Vec<usize>) -> Result<SubsetSelection, SubalgError> {
        if chosen.is_empty() {
            return Err(SubalgError::EmptySelection);
        }
        for &index in &chosen {
            if index >= family.len() {
                return Err(SubalgError::IndexOutOfRange {
                    index,
                    len: family.len(),
                });
            }
        }
        Ok(SubsetSelection { family, chosen })
    }

    pub fn chosen_events(&self) -> Vec<&Event> {
        self.chosen.iter().map(|&i| self.family.event(i)).collect()
    }
}

/// p and q commute: p = (p ∧ q) ∨ (p ∧ q'), all extrema taken inside the
/// family and required to exist.
pub fn commutes(family: &EventFamily, p: &Event, q: &Event) -> bool {
    let Some(meet_q) = family.infimum_in(p, q) else {
        return false;
    };
    let meet_q = meet_q.clone();
    let Some(meet_qc) = family.infimum_in(p, &q.complement()) else {
        return false;
    };
    let meet_qc = meet_qc.clone();
    match family.supremum_in(&meet_q, &meet_qc) {
        Some(join) => join == p,
        None => false,
    }
}

/// Pairwise infima exist exactly for commuting pairs.
pub fn is_infimum_faithful(family: &EventFamily) -> bool {
    let n = family.len();
    for i in 0..n {
        for j in 0..n {
            let p = family.event(i);
            let q = family.event(j);
            let has_inf = family.infimum_index(p, q).is_some();
            if has_inf != commutes(family, p, q) {
                return false;
            }
        }
    }
    true
}

fn require_two_valued_structured(family: &EventFamily) -> Result<(), SubalgError> {
    if let Some(event) = family.events().iter().find(|e| !e.is_zero_one_valued()) {
        return Err(SubalgError::NotTwoValued {
            event: event.clone(),
        });
    }
    if !classify::is_structured(family) {
        return Err(SubalgError::NotStructured);
    }
    Ok(())
}

/// Product criterion: every product of chosen elements is a member.
///
/// Products are idempotent on {0,1}-valued events and associative, so
/// quantifying over nonempty subsets of the (deduplicated) selection covers
/// all finite products.
pub fn product_criterion(selection: &SubsetSelection) -> Result<bool, SubalgError> {
    let family = &selection.family;
    require_two_valued_structured(family)?;
    let mut chosen = selection.chosen.clone();
    chosen.sort_unstable();
    chosen.dedup();
    let m = chosen.len();
    assert!(m < 64, "selection too large for subset masks");
    for mask in 1u64..(1u64 << m) {
        let mut product: Option<Event> = None;
        for (bit, &index) in chosen.iter().enumerate() {
            if mask & (1 << bit) == 0 {
                continue;
            }
            let event = family.event(index);
            product = Some(match product {
                None => event.clone(),
                Some(acc) => acc.pointwise_product(event),
            });
        }
        if !family.contains(&product.expect("nonempty mask")) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lexicographic k-combinations of 0..n.
struct Combinations {
    n: usize,
    k: usize,
    indices: Vec<usize>,
    started: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Combinations {
        Combinations {
            n,
            k,
            indices: (0..k).collect(),
            started: false,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.k > self.n {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.indices.clone());
        }
        let mut i = self.k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if self.indices[i] != i + self.n - self.k {
                break;
            }
        }
        self.indices[i] += 1;
        for j in i + 1..self.k {
            self.indices[j] = self.indices[j - 1] + 1;
        }
        Some(self.indices.clone())
    }
}

/// Exhaustive search for a smallest Boolean subalgebra of the family
/// containing the chosen elements.
///
/// A Boolean subalgebra is a subset Q with 0 and 1, closed under complement,
/// such that every pair of its members has an infimum inside the whole
/// family that again lies in Q, and (Q, <=) is a Boolean algebra under the
/// induced order. Subsets are scanned by cardinality, then lexicographically,
/// so the returned subalgebra is minimal and deterministic.
///
/// The scan is exponential in the family size; it is meant for desk-scale
/// cross-checking of [`product_criterion`].
pub fn boolean_subalgebra_oracle(selection: &SubsetSelection) -> Option<EventFamily> {
    let family = &selection.family;
    let n = family.len();
    let zero = family.zero_index()?;
    let one = family.one_index()?;
    let mut seed: Vec<usize> = vec![zero, one];
    seed.extend_from_slice(&selection.chosen);
    seed.sort_unstable();
    seed.dedup();

    for size in seed.len()..=n {
        for subset in Combinations::new(n, size) {
            if !seed.iter().all(|s| subset.binary_search(s).is_ok()) {
                continue;
            }
            if !subset.iter().all(|&q| {
                family
                    .complement_index(q)
                    .is_some_and(|c| subset.binary_search(&c).is_ok())
            }) {
                continue;
            }
            let meets_closed = subset.iter().all(|&a| {
                subset.iter().all(|&b| {
                    family
                        .infimum_index(family.event(a), family.event(b))
                        .is_some_and(|m| subset.binary_search(&m).is_ok())
                })
            });
            if !meets_closed {
                continue;
            }
            let events: Vec<Event> = subset.iter().map(|&q| family.event(q).clone()).collect();
            let candidate = EventFamily::from_sorted(family.states().to_vec(), events);
            if classify::is_boolean_algebra(&candidate) {
                return Some(candidate);
            }
        }
    }
    None
}
