//! Specific states, pseudostates, full and uniform state sets, and the
//! representation of abstract posets as event families.
//!
//! A specific state assigns a probability to every poset element such that
//! bounds map to 0 and 1, the involution acts as 1 - s, the assignment is
//! monotone, and every disjoint pair admits an upper bound carrying the sum
//! of the two values. A table of such states is full when pointwise
//! comparison of state values reflects the order, and uniform when each
//! disjoint pair has one additivity witness shared by all states. Full and
//! uniform tables are exactly what is needed to rebuild an event family
//! from an abstract poset.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify;
use crate::event::Event;
use crate::family::{EventFamily, FamilyError};
use crate::poset::AbstractBoundedPoset;
use crate::rational::Rational;

/// Named states, each assigning a value in \[0,1\] to every poset element.
/// Distinct states may coincide as functions; duplicates are retained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateTable {
    state_names: Vec<String>,
    // values[state][element], aligned with the poset's element order.
    values: Vec<Vec<Rational>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StatesError {
    #[error("duplicate state name `{name}`")]
    DuplicateStateName { name: String },
    #[error("state table has no states")]
    NoStates,
    #[error("state `{state}` assigns no value to element `{element}`")]
    MissingValue { state: String, element: String },
    #[error("state `{state}` has {found} values, poset has {expected} elements")]
    RowLength {
        state: String,
        expected: usize,
        found: usize,
    },
    #[error("state `{state}` assigns {value} to `{element}`, outside [0,1]")]
    ValueOutOfRange {
        state: String,
        element: String,
        value: Rational,
    },
    #[error("state `{state}` is not a specific state")]
    ColumnNotSpecificState { state: String },
    #[error("state table is not full: `{p}` vs `{q}`")]
    NotFull { p: String, q: String },
    #[error("state table is not uniform: disjoint pair `{p}`, `{q}` has no shared witness")]
    NotUniform { p: String, q: String },
    #[error("join of disjoint pair `{p}`, `{q}` does not exist (pseudostate precondition)")]
    MissingJoin { p: String, q: String },
    #[error("representation invariant broken: {0}")]
    Internal(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

impl StateTable {
    pub fn new(
        poset: &AbstractBoundedPoset,
        state_names: Vec<String>,
        values: Vec<Vec<Rational>>,
    ) -> Result<StateTable, StatesError> {
        if state_names.is_empty() {
            return Err(StatesError::NoStates);
        }
        for (i, name) in state_names.iter().enumerate() {
            if state_names[..i].contains(name) {
                return Err(StatesError::DuplicateStateName { name: name.clone() });
            }
        }
        assert_eq!(state_names.len(), values.len(), "one row per state");
        for (name, row) in state_names.iter().zip(&values) {
            if row.len() != poset.len() {
                return Err(StatesError::RowLength {
                    state: name.clone(),
                    expected: poset.len(),
                    found: row.len(),
                });
            }
            for (element, &value) in poset.elements().iter().zip(row) {
                if !value.le_one() {
                    return Err(StatesError::ValueOutOfRange {
                        state: name.clone(),
                        element: element.clone(),
                        value,
                    });
                }
            }
        }
        Ok(StateTable {
            state_names,
            values,
        })
    }

    pub fn state_names(&self) -> &[String] {
        &self.state_names
    }

    pub fn len(&self) -> usize {
        self.state_names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.state_names.is_empty()
    }

    /// Values of one state, aligned with the poset elements.
    pub fn row(&self, state: usize) -> &[Rational] {
        &self.values[state]
    }

    pub fn value(&self, state: usize, element: usize) -> Rational {
        self.values[state][element]
    }
}

/// Verdict for a single state axiom, with the offending elements if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomVerdict {
    pub holds: bool,
    pub witness: Option<Vec<String>>,
}

impl AxiomVerdict {
    fn holds() -> AxiomVerdict {
        AxiomVerdict {
            holds: true,
            witness: None,
        }
    }

    fn fails(witness: Vec<String>) -> AxiomVerdict {
        AxiomVerdict {
            holds: false,
            witness: Some(witness),
        }
    }
}

/// Per-axiom verdicts of the specific-state check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecificStateReport {
    pub bounds: AxiomVerdict,
    pub involution: AxiomVerdict,
    pub monotone: AxiomVerdict,
    pub additivity_witness: AxiomVerdict,
}

impl SpecificStateReport {
    pub fn holds(&self) -> bool {
        self.bounds.holds
            && self.involution.holds
            && self.monotone.holds
            && self.additivity_witness.holds
    }
}

/// Checks the four specific-state axioms for one assignment (values aligned
/// with the poset elements, each in \[0,1\]).
pub fn check_specific_state(
    poset: &AbstractBoundedPoset,
    values: &[Rational],
) -> SpecificStateReport {
    assert_eq!(values.len(), poset.len(), "one value per element");
    assert!(
        values.iter().all(|v| v.le_one()),
        "state values must lie in [0,1]"
    );
    let n = poset.len();

    let bounds = if !values[poset.bottom()].is_zero() {
        AxiomVerdict::fails(vec![poset.label(poset.bottom()).to_owned()])
    } else if !values[poset.top()].is_one() {
        AxiomVerdict::fails(vec![poset.label(poset.top()).to_owned()])
    } else {
        AxiomVerdict::holds()
    };

    let involution = (0..n)
        .find(|&i| values[poset.involution_of(i)] != values[i].one_minus())
        .map(|i| AxiomVerdict::fails(vec![poset.label(i).to_owned()]))
        .unwrap_or_else(AxiomVerdict::holds);

    let mut monotone = AxiomVerdict::holds();
    'mono: for i in 0..n {
        for j in 0..n {
            if poset.leq(i, j) && values[i] > values[j] {
                monotone =
                    AxiomVerdict::fails(vec![poset.label(i).to_owned(), poset.label(j).to_owned()]);
                break 'mono;
            }
        }
    }

    let mut additivity = AxiomVerdict::holds();
    'add: for i in 0..n {
        for j in 0..n {
            if !poset.disjoint(i, j) {
                continue;
            }
            let target = values[i] + values[j];
            let witnessed =
                (0..n).any(|r| poset.leq(i, r) && poset.leq(j, r) && values[r] == target);
            if !witnessed {
                additivity =
                    AxiomVerdict::fails(vec![poset.label(i).to_owned(), poset.label(j).to_owned()]);
                break 'add;
            }
        }
    }

    SpecificStateReport {
        bounds,
        involution,
        monotone,
        additivity_witness: additivity,
    }
}

/// Specific-state axioms plus join additivity (S5).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudostateReport {
    pub specific: SpecificStateReport,
    pub join_additivity: AxiomVerdict,
}

impl PseudostateReport {
    pub fn holds(&self) -> bool {
        self.specific.holds() && self.join_additivity.holds
    }
}

/// Pseudostate check. Requires the join of every disjoint pair to exist in
/// the poset; a missing join is a precondition failure, not a verdict.
pub fn check_pseudostate(
    poset: &AbstractBoundedPoset,
    values: &[Rational],
) -> Result<PseudostateReport, StatesError> {
    assert_eq!(values.len(), poset.len(), "one value per element");
    let n = poset.len();
    let specific = check_specific_state(poset, values);
    let mut join_additivity = AxiomVerdict::holds();
    'outer: for i in 0..n {
        for j in 0..n {
            if !poset.disjoint(i, j) {
                continue;
            }
            let Some(join) = poset.join(i, j) else {
                return Err(StatesError::MissingJoin {
                    p: poset.label(i).to_owned(),
                    q: poset.label(j).to_owned(),
                });
            };
            if values[join] != values[i] + values[j] {
                join_additivity =
                    AxiomVerdict::fails(vec![poset.label(i).to_owned(), poset.label(j).to_owned()]);
                break 'outer;
            }
        }
    }
    Ok(PseudostateReport {
        specific,
        join_additivity,
    })
}

/// Fullness: pointwise comparison of state values reflects the order.
pub fn is_full(poset: &AbstractBoundedPoset, table: &StateTable) -> Result<(), (String, String)> {
    let n = poset.len();
    for i in 0..n {
        for j in 0..n {
            let dominated = (0..table.len()).all(|s| table.value(s, i) <= table.value(s, j));
            if dominated && !poset.leq(i, j) {
                return Err((poset.label(i).to_owned(), poset.label(j).to_owned()));
            }
        }
    }
    Ok(())
}

/// Uniformity: each disjoint pair has one additivity witness r shared by
/// all states. Candidates are scanned in element order.
pub fn is_uniform(
    poset: &AbstractBoundedPoset,
    table: &StateTable,
) -> Result<(), (String, String)> {
    let n = poset.len();
    for i in 0..n {
        for j in 0..n {
            if !poset.disjoint(i, j) {
                continue;
            }
            let witnessed = (0..n).any(|r| {
                poset.leq(i, r)
                    && poset.leq(j, r)
                    && (0..table.len())
                        .all(|s| table.value(s, r) == table.value(s, i) + table.value(s, j))
            });
            if !witnessed {
                return Err((poset.label(i).to_owned(), poset.label(j).to_owned()));
            }
        }
    }
    Ok(())
}

/// The canonical states of a family: one state per member of S, evaluating
/// each event at that state.
pub fn canonical_states(family: &EventFamily) -> StateTable {
    let values = (0..family.arity())
        .map(|x| family.events().iter().map(|e| e.value(x)).collect())
        .collect();
    StateTable {
        state_names: family.states().to_vec(),
        values,
    }
}

/// An event family realizing an abstract poset, with the element map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcreteRepresentation {
    pub carrier: EventFamily,
    pub element_map: Vec<(String, Event)>,
}

impl ConcreteRepresentation {
    pub fn image_of(&self, label: &str) -> Option<&Event> {
        self.element_map
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, e)| e)
    }
}

/// True iff the element map is a bijection onto the carrier preserving and
/// reflecting the order and commuting with involution/complement.
pub fn representation_is_isomorphism(
    poset: &AbstractBoundedPoset,
    representation: &ConcreteRepresentation,
) -> bool {
    let map = &representation.element_map;
    if map.len() != poset.len() || representation.carrier.len() != poset.len() {
        return false;
    }
    let images: Vec<&Event> = match poset
        .elements()
        .iter()
        .map(|label| representation.image_of(label))
        .collect::<Option<Vec<_>>>()
    {
        Some(images) => images,
        None => return false,
    };
    if images.iter().any(|e| !representation.carrier.contains(e)) {
        return false;
    }
    for (i, a) in images.iter().enumerate() {
        for (j, b) in images.iter().enumerate() {
            if i != j && a == b {
                return false;
            }
            if poset.leq(i, j) != a.leq(b) {
                return false;
            }
        }
        if *images[poset.involution_of(i)] != a.complement() {
            return false;
        }
    }
    true
}

/// Rebuilds an event family from a poset and a full, uniform table of
/// specific states: element u becomes the event t ↦ t(u) over the state
/// names. The carrier is again specific and the map an isomorphism; both
/// are re-verified and any failure is reported as an internal error.
pub fn build_representation(
    poset: &AbstractBoundedPoset,
    table: &StateTable,
) -> Result<ConcreteRepresentation, StatesError> {
    for s in 0..table.len() {
        if !check_specific_state(poset, table.row(s)).holds() {
            return Err(StatesError::ColumnNotSpecificState {
                state: table.state_names()[s].clone(),
            });
        }
    }
    is_full(poset, table).map_err(|(p, q)| StatesError::NotFull { p, q })?;
    is_uniform(poset, table).map_err(|(p, q)| StatesError::NotUniform { p, q })?;

    let representation = assemble_representation(poset, table)?;
    if !representation_is_isomorphism(poset, &representation) {
        return Err(StatesError::Internal(
            "element map is not an isomorphism".to_owned(),
        ));
    }
    if !classify::is_specific(&representation.carrier) {
        return Err(StatesError::Internal(
            "carrier family is not specific".to_owned(),
        ));
    }
    Ok(representation)
}

fn assemble_representation(
    poset: &AbstractBoundedPoset,
    table: &StateTable,
) -> Result<ConcreteRepresentation, StatesError> {
    let mut element_map = Vec::with_capacity(poset.len());
    let mut events = Vec::with_capacity(poset.len());
    for u in 0..poset.len() {
        let values: Vec<Rational> = (0..table.len()).map(|s| table.value(s, u)).collect();
        let event = Event::new(values)
            .map_err(|e| StatesError::Internal(format!("image not an event: {e}")))?;
        element_map.push((poset.label(u).to_owned(), event.clone()));
        events.push(event);
    }
    let carrier = EventFamily::new(table.state_names().to_vec(), events)?;
    Ok(ConcreteRepresentation {
        carrier,
        element_map,
    })
}

/// Enumerates all {0,1}-valued specific states of the family; when they
/// form a full set, returns the representation over that state collection
/// (state names t0, t1, ... in enumeration order).
pub fn two_valued_representation(family: &EventFamily) -> Option<ConcreteRepresentation> {
    let poset = AbstractBoundedPoset::from_family(family).ok()?;
    let n = poset.len();
    let free: Vec<usize> = (0..n)
        .filter(|&i| i != poset.bottom() && i != poset.top())
        .collect();
    assert!(free.len() < 32, "family too large for state enumeration");

    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for mask in 0u64..(1 << free.len()) {
        let mut values = vec![Rational::ZERO; n];
        values[poset.top()] = Rational::ONE;
        for (bit, &element) in free.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                values[element] = Rational::ONE;
            }
        }
        if check_specific_state(&poset, &values).holds() {
            rows.push(values);
        }
    }
    if rows.is_empty() {
        return None;
    }
    let table = StateTable {
        state_names: (0..rows.len()).map(|i| format!("t{i}")).collect(),
        values: rows,
    };
    if is_full(&poset, &table).is_err() {
        return None;
    }
    assemble_representation(&poset, &table).ok()
}

/// Both sides of the ∨-specific shape equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VeeShapeReport {
    pub vee_specific: bool,
    pub disjoint_sums_are_joins: bool,
    pub full_pseudostates: bool,
    pub equivalent: bool,
}

/// Compares the class verdict "∨-specific" against its state-based shape:
/// sums of disjoint pairs are members equal to the join, and the canonical
/// states are a full set of pseudostates. Returns the comparison of the two
/// sides; `equivalent` is the theorem being exercised.
pub fn check_theorem4_shape(family: &EventFamily) -> VeeShapeReport {
    let vee_specific = classify::is_specific(family) && classify::check_condition(family, 6).holds;

    let poset = AbstractBoundedPoset::from_family(family).ok();
    let disjoint_sums_are_joins = poset.is_some() && classify::check_condition(family, 6).holds;

    let full_pseudostates = if disjoint_sums_are_joins {
        let poset = poset.expect("checked above");
        let table = canonical_states(family);
        let all_pseudo = (0..table.len()).all(|s| {
            check_pseudostate(&poset, table.row(s))
                .map(|r| r.holds())
                .unwrap_or(false)
        });
        all_pseudo && is_full(&poset, &table).is_ok()
    } else {
        false
    };

    let rhs = disjoint_sums_are_joins && full_pseudostates;
    VeeShapeReport {
        vee_specific,
        disjoint_sums_are_joins,
        full_pseudostates,
        equivalent: vee_specific == rhs,
    }
}
