//! Abstract bounded posets with an antitone involution.
//!
//! These are the inputs of the reverse construction: instead of starting
//! from numerical events, one starts from an abstract order with a
//! complement-like involution and asks whether a table of states represents
//! it as a family of events. Construction takes the reflexive-transitive
//! closure of the given pairs (plus the bound pairs) and then validates
//! antisymmetry, the bounds, and the involution laws.

use std::fmt;

use thiserror::Error;

use crate::classify::PreconditionError;
use crate::family::EventFamily;

/// Finite bounded poset with an antitone involution.
#[derive(Clone, PartialEq, Eq)]
pub struct AbstractBoundedPoset {
    elements: Vec<String>,
    leq: Vec<bool>,
    involution: Vec<usize>,
    bottom: usize,
    top: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("poset has no elements")]
    NoElements,
    #[error("duplicate element label `{label}`")]
    DuplicateElement { label: String },
    #[error("unknown element `{label}` referenced by {context}")]
    UnknownElement { label: String, context: String },
    #[error("order is not antisymmetric: `{a}` <= `{b}` and `{b}` <= `{a}`")]
    NotAntisymmetric { a: String, b: String },
    #[error("involution not defined for element `{label}`")]
    MissingInvolution { label: String },
    #[error("involution is not an involution at `{label}`")]
    InvolutionNotInvolutive { label: String },
    #[error("involution is not antitone: `{a}` <= `{b}` but `{b}`' !<= `{a}`'")]
    InvolutionNotAntitone { a: String, b: String },
    #[error("bottom' must equal top, but `{bottom}`' is `{image}`")]
    BottomComplementNotTop { bottom: String, image: String },
}

impl AbstractBoundedPoset {
    pub fn new(
        elements: Vec<String>,
        order: &[(String, String)],
        involution: &[(String, String)],
        bottom: &str,
        top: &str,
    ) -> Result<AbstractBoundedPoset, PosetError> {
        if elements.is_empty() {
            return Err(PosetError::NoElements);
        }
        for (i, label) in elements.iter().enumerate() {
            if elements[..i].contains(label) {
                return Err(PosetError::DuplicateElement {
                    label: label.clone(),
                });
            }
        }
        let index = |label: &str, context: &str| -> Result<usize, PosetError> {
            elements
                .iter()
                .position(|e| e == label)
                .ok_or_else(|| PosetError::UnknownElement {
                    label: label.to_owned(),
                    context: context.to_owned(),
                })
        };
        let bottom = index(bottom, "bottom")?;
        let top = index(top, "top")?;

        let n = elements.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
            leq[bottom * n + i] = true;
            leq[i * n + top] = true;
        }
        for (a, b) in order {
            let a = index(a, "order")?;
            let b = index(b, "order")?;
            leq[a * n + b] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if !leq[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(PosetError::NotAntisymmetric {
                        a: elements[i].clone(),
                        b: elements[j].clone(),
                    });
                }
            }
        }

        let mut involution_map = vec![usize::MAX; n];
        for (a, b) in involution {
            let a = index(a, "involution")?;
            let b = index(b, "involution")?;
            involution_map[a] = b;
        }
        for i in 0..n {
            if involution_map[i] == usize::MAX {
                return Err(PosetError::MissingInvolution {
                    label: elements[i].clone(),
                });
            }
        }
        for i in 0..n {
            if involution_map[involution_map[i]] != i {
                return Err(PosetError::InvolutionNotInvolutive {
                    label: elements[i].clone(),
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if leq[i * n + j] && !leq[involution_map[j] * n + involution_map[i]] {
                    return Err(PosetError::InvolutionNotAntitone {
                        a: elements[i].clone(),
                        b: elements[j].clone(),
                    });
                }
            }
        }
        if involution_map[bottom] != top {
            return Err(PosetError::BottomComplementNotTop {
                bottom: elements[bottom].clone(),
                image: elements[involution_map[bottom]].clone(),
            });
        }

        Ok(AbstractBoundedPoset {
            elements,
            leq,
            involution: involution_map,
            bottom,
            top,
        })
    }

    /// The forgetful direction: an event family with 0, 1 and complements
    /// is itself a bounded poset with an antitone involution. Elements are
    /// labelled by their canonical event rendering.
    pub fn from_family(family: &EventFamily) -> Result<AbstractBoundedPoset, PreconditionError> {
        if !family.has_bounds() {
            return Err(PreconditionError::MissingBounds);
        }
        let n = family.len();
        let mut involution = Vec::with_capacity(n);
        for i in 0..n {
            involution.push(
                family
                    .complement_index(i)
                    .ok_or(PreconditionError::NotComplementClosed)?,
            );
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = family.leq_idx(i, j);
            }
        }
        Ok(AbstractBoundedPoset {
            elements: family.events().iter().map(|e| e.to_string()).collect(),
            leq,
            involution,
            bottom: family.zero_index().expect("bounds checked"),
            top: family.one_index().expect("bounds checked"),
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.elements.len() + j]
    }

    pub fn involution_of(&self, i: usize) -> usize {
        self.involution[i]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Disjointness: the only common lower bound is bottom.
    pub fn disjoint(&self, i: usize, j: usize) -> bool {
        (0..self.len()).all(|k| !(self.leq(k, i) && self.leq(k, j)) || k == self.bottom)
    }

    /// Least upper bound inside the poset, if any.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let uppers: Vec<usize> = (0..self.len())
            .filter(|&k| self.leq(i, k) && self.leq(j, k))
            .collect();
        uppers
            .iter()
            .copied()
            .find(|&l| uppers.iter().all(|&x| self.leq(l, x)))
    }

    /// Greatest lower bound inside the poset, if any.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        let lowers: Vec<usize> = (0..self.len())
            .filter(|&k| self.leq(k, i) && self.leq(k, j))
            .collect();
        lowers
            .iter()
            .copied()
            .find(|&g| lowers.iter().all(|&x| self.leq(x, g)))
    }
}

impl fmt::Debug for AbstractBoundedPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "poset({} elements, bottom {}, top {})",
            self.elements.len(),
            self.elements[self.bottom],
            self.elements[self.top]
        )
    }
}

#[cfg(test)]
pub(crate) mod testposets {
    use super::AbstractBoundedPoset;

    fn pairs(raw: &[(&str, &str)]) -> Vec<(String, String)> {
        raw.iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    /// Four-element Boolean algebra 0 < a, b < 1 with a' = b.
    pub fn bool4() -> AbstractBoundedPoset {
        AbstractBoundedPoset::new(
            vec!["0".into(), "a".into(), "b".into(), "1".into()],
            &pairs(&[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]),
            &pairs(&[("0", "1"), ("1", "0"), ("a", "b"), ("b", "a")]),
            "0",
            "1",
        )
        .unwrap()
    }

    /// Two-element chain.
    pub fn chain2() -> AbstractBoundedPoset {
        AbstractBoundedPoset::new(
            vec!["0".into(), "1".into()],
            &[],
            &pairs(&[("0", "1"), ("1", "0")]),
            "0",
            "1",
        )
        .unwrap()
    }
}
