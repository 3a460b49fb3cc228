//! Exact text formats for families, posets and state tables.
//!
//! Documents are JSON with all rationals as strings ("0", "1", "1/2", ...),
//! keeping the format language neutral and exact. Parsing validates the
//! domain invariants (values in \[0,1\], distinct events, well-formed order
//! and involution) and reports serde's line/column diagnostics for
//! malformed input.
//!
//! A family document:
//!
//! ```json
//! { "states": ["s1", "s2"],
//!   "events": [["0", "0"], ["0", "1/2"], ["1", "1"]] }
//! ```
//!
//! A poset document (the `states` block is optional; order pairs implied by
//! reflexivity, transitivity or the bounds may be omitted):
//!
//! ```json
//! { "elements": ["0", "a", "b", "1"],
//!   "order": [["0", "a"], ["0", "b"], ["a", "1"], ["b", "1"]],
//!   "involution": {"0": "1", "1": "0", "a": "b", "b": "a"},
//!   "bottom": "0",
//!   "top": "1",
//!   "states": {"t1": {"0": "0", "a": "1", "b": "0", "1": "1"}} }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::event::Event;
use crate::family::{EventFamily, FamilyError};
use crate::poset::{AbstractBoundedPoset, PosetError};
use crate::rational::Rational;
use crate::states::{StateTable, StatesError};

/// Parsed family document, not yet canonicalized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub states: Vec<String>,
    pub events: Vec<Event>,
}

/// Parsed poset document with an optional state table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDocument {
    pub elements: Vec<String>,
    pub order: Vec<(String, String)>,
    pub involution: BTreeMap<String, String>,
    pub bottom: String,
    pub top: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub states: BTreeMap<String, BTreeMap<String, Rational>>,
}

#[derive(Debug, Error)]
pub enum DocError {
    #[error("invalid document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    States(#[from] StatesError),
    #[error("document is neither a family document (states/events) nor a poset document (elements/order/involution/bottom/top)")]
    UnknownShape,
}

impl FamilyDocument {
    pub fn parse(text: &str) -> Result<FamilyDocument, DocError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_family(&self) -> Result<EventFamily, DocError> {
        Ok(EventFamily::new(self.states.clone(), self.events.clone())?)
    }

    /// Canonical document for a family: events in canonical order.
    pub fn from_family(family: &EventFamily) -> FamilyDocument {
        FamilyDocument {
            states: family.states().to_vec(),
            events: family.events().to_vec(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization")
    }
}

impl PosetDocument {
    pub fn parse(text: &str) -> Result<PosetDocument, DocError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_poset(&self) -> Result<AbstractBoundedPoset, DocError> {
        let involution: Vec<(String, String)> = self
            .involution
            .iter()
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect();
        Ok(AbstractBoundedPoset::new(
            self.elements.clone(),
            &self.order,
            &involution,
            &self.bottom,
            &self.top,
        )?)
    }

    /// The optional state table, aligned with the poset's element order.
    /// State names come out in sorted order (JSON objects are unordered).
    pub fn state_table(
        &self,
        poset: &AbstractBoundedPoset,
    ) -> Result<Option<StateTable>, DocError> {
        if self.states.is_empty() {
            return Ok(None);
        }
        let mut names = Vec::with_capacity(self.states.len());
        let mut rows = Vec::with_capacity(self.states.len());
        for (name, assignment) in &self.states {
            for label in assignment.keys() {
                if poset.index_of(label).is_none() {
                    return Err(PosetError::UnknownElement {
                        label: label.clone(),
                        context: format!("state `{name}`"),
                    }
                    .into());
                }
            }
            let mut row = Vec::with_capacity(poset.len());
            for element in poset.elements() {
                match assignment.get(element) {
                    Some(&value) => row.push(value),
                    None => {
                        return Err(StatesError::MissingValue {
                            state: name.clone(),
                            element: element.clone(),
                        }
                        .into())
                    }
                }
            }
            names.push(name.clone());
            rows.push(row);
        }
        Ok(Some(StateTable::new(poset, names, rows)?))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization")
    }
}

/// Any parsed document.
pub enum Document {
    Family(FamilyDocument),
    Poset(PosetDocument),
}

/// Dispatches on the document shape: `states`+`events` is a family,
/// `elements`+... is a poset.
pub fn parse_any(text: &str) -> Result<Document, DocError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let object = value.as_object().ok_or(DocError::UnknownShape)?;
    if object.contains_key("events") {
        Ok(Document::Family(serde_json::from_value(value)?))
    } else if object.contains_key("elements") {
        Ok(Document::Poset(serde_json::from_value(value)?))
    } else {
        Err(DocError::UnknownShape)
    }
}
