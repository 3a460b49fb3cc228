//! Exact, order-theoretic analysis of finite sets of numerical events
//! (S-probabilities).
//!
//! A numerical event assigns to each state of a physical system the
//! probability of an event occurring in that state. Families of such
//! functions, ordered pointwise, form quantum logics; this crate decides
//! where a given finite family sits between "barely a poset" and "Boolean
//! algebra":
//!
//! - [`classify`] evaluates the closure conditions (1)-(8) on sums of
//!   disjoint or orthogonal events and derives the class flags (specific,
//!   ∨-specific, structured, weakly structured, GFE, algebra of
//!   S-probabilities, Boolean poset, orthoposet, concrete logic form,
//!   lattice, Boolean algebra, orthomodular, ...), each failure carrying a
//!   replayable witness.
//! - [`subalg`] handles commutation, infimum faithfulness, pointwise
//!   products and the product-closure test for containment of a chosen
//!   subset in a Boolean subalgebra, cross-checked by an exhaustive
//!   subalgebra search.
//! - [`states`] covers specific states, pseudostates, full and uniform
//!   state sets, and the reconstruction of a concrete event family from an
//!   abstract bounded poset with enough states.
//! - [`search`] enumerates every candidate family over small rational grids
//!   and replays the structural laws relating the classes on each of them,
//!   and mines witnesses separating the classes.
//! - [`doc`] and [`cli`] provide the exact text formats and the command
//!   line surface.
//!
//! All arithmetic is exact rational arithmetic; there is no floating point
//! and no epsilon anywhere.

pub mod classify;
pub mod cli;
pub mod doc;
pub mod event;
pub mod family;
pub mod poset;
pub mod rational;
pub mod search;
pub mod states;
pub mod subalg;

pub use event::{Event, PointwiseVector};
pub use family::EventFamily;
pub use rational::Rational;

#[cfg(test)]
pub(crate) mod testutil {
    use crate::event::Event;
    use crate::family::EventFamily;
    use crate::rational::Rational;

    /// `ev("0,1/2")` -> the event (0, 1/2).
    pub fn ev(text: &str) -> Event {
        let values: Vec<Rational> = text
            .split(',')
            .map(|part| part.trim().parse().expect("test rational"))
            .collect();
        Event::new(values).expect("test event")
    }

    /// Family over states s1..sn from comma-separated event literals.
    pub fn fam(events: &[&str]) -> EventFamily {
        let parsed: Vec<Event> = events.iter().map(|e| ev(e)).collect();
        let states = (1..=parsed[0].arity()).map(|i| format!("s{i}")).collect();
        EventFamily::new(states, parsed).expect("test family")
    }

    /// First |S|=2 example family: specific but not structured.
    pub fn example1() -> EventFamily {
        fam(&[
            "0,0", "0,1/2", "1/2,1/4", "1/2,1/2", "1/2,3/4", "1,1/2", "1,1",
        ])
    }

    /// Second |S|=2 example family: weakly structured but not ∨-specific.
    pub fn example2() -> EventFamily {
        fam(&["0,0", "0,1/2", "1/2,0", "1/2,1", "1,1/2", "1,1"])
    }

    /// Full power set over two states, as events.
    pub fn powerset2() -> EventFamily {
        fam(&["0,0", "0,1", "1,0", "1,1"])
    }

    /// Full power set over three states.
    pub fn powerset3() -> EventFamily {
        fam(&[
            "0,0,0", "0,0,1", "0,1,0", "0,1,1", "1,0,0", "1,0,1", "1,1,0", "1,1,1",
        ])
    }

    /// The two-element family {0, 1}.
    pub fn bounds_only() -> EventFamily {
        fam(&["0,0", "1,1"])
    }
}
