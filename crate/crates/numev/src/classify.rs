//! Closure conditions and class membership for event families.
//!
//! The numbered conditions quantify over all ordered tuples of family
//! members: sums of disjoint pairs (3), of orthogonal pairs (4), of pairwise
//! orthogonal triples (5), sums of disjoint pairs agreeing with suprema (6),
//! and orthogonality chains with disjoint endpoints (7), (8). Class flags
//! are conjunctions of these conditions plus the derived order-theoretic
//! predicates (complemented, Boolean poset, lattice, Boolean algebra, ...).
//!
//! Failing verdicts carry the lexicographically first witness tuple in
//! canonical event order so that reports are deterministic and replayable.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::event::{pointwise_sum, Event, PointwiseVector};
use crate::family::EventFamily;
use crate::subalg;

/// Why a condition failed on the witness tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessReason {
    MissingZero,
    MissingOne,
    ComplementAbsent,
    SumNotMember,
    SumNotSupremum,
    SumNotPointwiseMax,
    SumExceedsOne,
}

/// Replayable counterexample: the offending tuple, the sum it produces and
/// (where relevant) the member the sum was compared against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub events: Vec<Event>,
    pub sum: Option<PointwiseVector>,
    pub related: Option<Event>,
    pub reason: WitnessReason,
}

/// Outcome of one numbered condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionVerdict {
    pub condition: u8,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl ConditionVerdict {
    fn holds(condition: u8) -> ConditionVerdict {
        ConditionVerdict {
            condition,
            holds: true,
            witness: None,
        }
    }

    fn fails(condition: u8, witness: Witness) -> ConditionVerdict {
        ConditionVerdict {
            condition,
            holds: false,
            witness: Some(witness),
        }
    }
}

/// All class flags derived from one classification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFlags {
    pub specific: bool,
    pub vee_specific: bool,
    pub structured: bool,
    pub weakly_structured: bool,
    pub gfe: bool,
    pub algebra_of_s_probabilities: bool,
    pub boolean_poset: bool,
    pub orthoposet: bool,
    pub complemented: bool,
    pub all_varying: bool,
    pub concrete_logic_form: bool,
    pub lattice: bool,
    pub boolean_algebra: bool,
    pub infimum_faithful: bool,
    pub orthomodular: bool,
}

/// Name of a class flag, usable on the command line (`C1`..`C4` are accepted
/// aliases for the four numbered classes).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassFlag {
    Specific,
    VeeSpecific,
    Structured,
    WeaklyStructured,
    Gfe,
    AlgebraOfSProbabilities,
    BooleanPoset,
    Orthoposet,
    Complemented,
    AllVarying,
    ConcreteLogicForm,
    Lattice,
    BooleanAlgebra,
    InfimumFaithful,
    Orthomodular,
}

impl ClassFlag {
    pub const ALL: [ClassFlag; 15] = [
        ClassFlag::Specific,
        ClassFlag::VeeSpecific,
        ClassFlag::Structured,
        ClassFlag::WeaklyStructured,
        ClassFlag::Gfe,
        ClassFlag::AlgebraOfSProbabilities,
        ClassFlag::BooleanPoset,
        ClassFlag::Orthoposet,
        ClassFlag::Complemented,
        ClassFlag::AllVarying,
        ClassFlag::ConcreteLogicForm,
        ClassFlag::Lattice,
        ClassFlag::BooleanAlgebra,
        ClassFlag::InfimumFaithful,
        ClassFlag::Orthomodular,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassFlag::Specific => "specific",
            ClassFlag::VeeSpecific => "vee-specific",
            ClassFlag::Structured => "structured",
            ClassFlag::WeaklyStructured => "weakly-structured",
            ClassFlag::Gfe => "gfe",
            ClassFlag::AlgebraOfSProbabilities => "algebra-of-s-probabilities",
            ClassFlag::BooleanPoset => "boolean-poset",
            ClassFlag::Orthoposet => "orthoposet",
            ClassFlag::Complemented => "complemented",
            ClassFlag::AllVarying => "all-varying",
            ClassFlag::ConcreteLogicForm => "concrete-logic-form",
            ClassFlag::Lattice => "lattice",
            ClassFlag::BooleanAlgebra => "boolean-algebra",
            ClassFlag::InfimumFaithful => "infimum-faithful",
            ClassFlag::Orthomodular => "orthomodular",
        }
    }
}

impl fmt::Display for ClassFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown class flag `{0}`")]
pub struct ParseClassFlagError(String);

impl FromStr for ClassFlag {
    type Err = ParseClassFlagError;

    fn from_str(s: &str) -> Result<ClassFlag, ParseClassFlagError> {
        let key = s.trim().to_ascii_lowercase();
        let flag = match key.as_str() {
            "c1" | "specific" => ClassFlag::Specific,
            "c2" | "vee-specific" | "vee_specific" => ClassFlag::VeeSpecific,
            "c3" | "structured" => ClassFlag::Structured,
            "c4" | "weakly-structured" | "weakly_structured" => ClassFlag::WeaklyStructured,
            "gfe" => ClassFlag::Gfe,
            "algebra" | "algebra-of-s-probabilities" | "algebra_of_s_probabilities" => {
                ClassFlag::AlgebraOfSProbabilities
            }
            "boolean-poset" | "boolean_poset" => ClassFlag::BooleanPoset,
            "orthoposet" => ClassFlag::Orthoposet,
            "complemented" => ClassFlag::Complemented,
            "all-varying" | "all_varying" | "varying" => ClassFlag::AllVarying,
            "concrete-logic-form" | "concrete_logic_form" | "concrete-logic" => {
                ClassFlag::ConcreteLogicForm
            }
            "lattice" => ClassFlag::Lattice,
            "boolean-algebra" | "boolean_algebra" => ClassFlag::BooleanAlgebra,
            "infimum-faithful" | "infimum_faithful" => ClassFlag::InfimumFaithful,
            "orthomodular" => ClassFlag::Orthomodular,
            _ => return Err(ParseClassFlagError(s.to_owned())),
        };
        Ok(flag)
    }
}

impl ClassFlags {
    pub fn get(&self, flag: ClassFlag) -> bool {
        match flag {
            ClassFlag::Specific => self.specific,
            ClassFlag::VeeSpecific => self.vee_specific,
            ClassFlag::Structured => self.structured,
            ClassFlag::WeaklyStructured => self.weakly_structured,
            ClassFlag::Gfe => self.gfe,
            ClassFlag::AlgebraOfSProbabilities => self.algebra_of_s_probabilities,
            ClassFlag::BooleanPoset => self.boolean_poset,
            ClassFlag::Orthoposet => self.orthoposet,
            ClassFlag::Complemented => self.complemented,
            ClassFlag::AllVarying => self.all_varying,
            ClassFlag::ConcreteLogicForm => self.concrete_logic_form,
            ClassFlag::Lattice => self.lattice,
            ClassFlag::BooleanAlgebra => self.boolean_algebra,
            ClassFlag::InfimumFaithful => self.infimum_faithful,
            ClassFlag::Orthomodular => self.orthomodular,
        }
    }
}

/// Full classification: the eight condition verdicts, the diagnostic
/// pointwise-max reading of condition (6), all class flags, and internal
/// consistency alarms.
///
/// The internal checks assert the proven inclusions between the classes
/// (structured ⊆ ∨-specific ⊆ weakly structured, and ∨-specific =
/// specific ∩ weakly structured). A nonempty `internal_errors` means a
/// defect in this crate, never new mathematics; inconsistent flags are
/// reported, not repaired.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub conditions: Vec<ConditionVerdict>,
    pub condition6_pointwise_max: ConditionVerdict,
    pub flags: ClassFlags,
    pub vee_specific_max_reading: bool,
    pub internal_errors: Vec<String>,
}

/// A required condition does not hold on the input family.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PreconditionError {
    #[error("family does not contain both constant events 0 and 1 (condition (1))")]
    MissingBounds,
    #[error("family is not closed under complement (condition (2))")]
    NotComplementClosed,
    #[error("family is not an orthoposet")]
    NotOrthoposet,
    #[error("family is not structured")]
    NotStructured,
    #[error("family is not in concrete-logic form")]
    NotConcreteLogic,
}

fn witness_pair(f: &EventFamily, i: usize, j: usize, reason: WitnessReason) -> Witness {
    let events = vec![f.event(i).clone(), f.event(j).clone()];
    let sum = pointwise_sum(events.iter());
    Witness {
        events,
        sum: Some(sum),
        related: None,
        reason,
    }
}

fn witness_triple(f: &EventFamily, i: usize, j: usize, k: usize, reason: WitnessReason) -> Witness {
    let events = vec![f.event(i).clone(), f.event(j).clone(), f.event(k).clone()];
    let sum = pointwise_sum(events.iter());
    Witness {
        events,
        sum: Some(sum),
        related: None,
        reason,
    }
}

fn cond1(f: &EventFamily) -> ConditionVerdict {
    if f.zero_index().is_none() {
        return ConditionVerdict::fails(
            1,
            Witness {
                events: Vec::new(),
                sum: None,
                related: None,
                reason: WitnessReason::MissingZero,
            },
        );
    }
    if f.one_index().is_none() {
        return ConditionVerdict::fails(
            1,
            Witness {
                events: Vec::new(),
                sum: None,
                related: None,
                reason: WitnessReason::MissingOne,
            },
        );
    }
    ConditionVerdict::holds(1)
}

fn cond2(f: &EventFamily) -> ConditionVerdict {
    for i in 0..f.len() {
        if f.complement_index(i).is_none() {
            return ConditionVerdict::fails(
                2,
                Witness {
                    events: vec![f.event(i).clone()],
                    sum: None,
                    related: Some(f.event(i).complement()),
                    reason: WitnessReason::ComplementAbsent,
                },
            );
        }
    }
    ConditionVerdict::holds(2)
}

fn cond3(f: &EventFamily) -> ConditionVerdict {
    let n = f.len();
    for i in 0..n {
        for j in 0..n {
            if !f.disjoint_idx(i, j) {
                continue;
            }
            let sum = pointwise_sum([f.event(i), f.event(j)]);
            if f.member_index_of_vector(&sum).is_none() {
                return ConditionVerdict::fails(
                    3,
                    witness_pair(f, i, j, WitnessReason::SumNotMember),
                );
            }
        }
    }
    ConditionVerdict::holds(3)
}

fn cond4(f: &EventFamily) -> ConditionVerdict {
    let n = f.len();
    for i in 0..n {
        for j in 0..n {
            if !f.orthogonal_idx(i, j) {
                continue;
            }
            let sum = pointwise_sum([f.event(i), f.event(j)]);
            if f.member_index_of_vector(&sum).is_none() {
                return ConditionVerdict::fails(
                    4,
                    witness_pair(f, i, j, WitnessReason::SumNotMember),
                );
            }
        }
    }
    ConditionVerdict::holds(4)
}

// (5) reads the chain "p ⟂ q ⟂ r ⟂ p" as all three pairwise
// orthogonalities, unlike (7)/(8) whose chain "p ⟂ q ⟂ r" requires only
// the two adjacent ones.
fn cond5(f: &EventFamily) -> ConditionVerdict {
    let n = f.len();
    for i in 0..n {
        for j in 0..n {
            if !f.orthogonal_idx(i, j) {
                continue;
            }
            for k in 0..n {
                if !(f.orthogonal_idx(j, k) && f.orthogonal_idx(k, i)) {
                    continue;
                }
                let sum = pointwise_sum([f.event(i), f.event(j), f.event(k)]);
                if f.member_index_of_vector(&sum).is_none() {
                    return ConditionVerdict::fails(
                        5,
                        witness_triple(f, i, j, k, WitnessReason::SumNotMember),
                    );
                }
            }
        }
    }
    ConditionVerdict::holds(5)
}

fn cond6(f: &EventFamily) -> ConditionVerdict {
    let n = f.len();
    for i in 0..n {
        for j in 0..n {
            if !f.disjoint_idx(i, j) {
                continue;
            }
            let sum = pointwise_sum([f.event(i), f.event(j)]);
            let Some(sum_idx) = f.member_index_of_vector(&sum) else {
                return ConditionVerdict::fails(
                    6,
                    witness_pair(f, i, j, WitnessReason::SumNotMember),
                );
            };
            let sup = f.supremum_index(f.event(i), f.event(j));
            if sup != Some(sum_idx) {
                let mut w = witness_pair(f, i, j, WitnessReason::SumNotSupremum);
                w.related = sup.map(|s| f.event(s).clone());
                return ConditionVerdict::fails(6, w);
            }
        }
    }
    ConditionVerdict::holds(6)
}

/// Diagnostic variant of (6) that reads "p ∨ q" as the pointwise maximum
/// instead of the supremum inside the family. Never feeds a class flag.
fn cond6_pointwise_max(f: &EventFamily) -> ConditionVerdict {
    let n = f.len();
    for i in 0..n {
        for j in 0..n {
            if !f.disjoint_idx(i, j) {
                continue;
            }
            let sum = pointwise_sum([f.event(i), f.event(j)]);
            let member = sum.as_event().filter(|e| f.contains(e));
            let Some(sum_event) = member else {
                return ConditionVerdict::fails(
                    6,
                    witness_pair(f, i, j, WitnessReason::SumNotMember),
                );
            };
            let max = f.event(i).pointwise_max(f.event(j));
            if sum_event != max {
                let mut w = witness_pair(f, i, j, WitnessReason::SumNotPointwiseMax);
                w.related = Some(max);
                return ConditionVerdict::fails(6, w);
            }
        }
    }
    ConditionVerdict::holds(6)
}

fn chain_condition(f: &EventFamily, condition: u8) -> ConditionVerdict {
    debug_assert!(condition == 7 || condition == 8);
    let n = f.len();
    for i in 0..n {
        for j in 0..n {
            if !f.orthogonal_idx(i, j) {
                continue;
            }
            for k in 0..n {
                if !(f.orthogonal_idx(j, k) && f.disjoint_idx(i, k)) {
                    continue;
                }
                let sum = pointwise_sum([f.event(i), f.event(j), f.event(k)]);
                if condition == 7 {
                    if f.member_index_of_vector(&sum).is_none() {
                        return ConditionVerdict::fails(
                            7,
                            witness_triple(f, i, j, k, WitnessReason::SumNotMember),
                        );
                    }
                } else if !sum.le_one() {
                    return ConditionVerdict::fails(
                        8,
                        witness_triple(f, i, j, k, WitnessReason::SumExceedsOne),
                    );
                }
            }
        }
    }
    ConditionVerdict::holds(condition)
}

/// Verdict for one of the numbered conditions (1)-(8).
pub fn check_condition(family: &EventFamily, condition: u8) -> ConditionVerdict {
    match condition {
        1 => cond1(family),
        2 => cond2(family),
        3 => cond3(family),
        4 => cond4(family),
        5 => cond5(family),
        6 => cond6(family),
        7 | 8 => chain_condition(family, condition),
        other => panic!("no condition ({other}); conditions are numbered 1..=8"),
    }
}

fn bounds_and_complements(f: &EventFamily) -> Result<(), PreconditionError> {
    if !f.has_bounds() {
        return Err(PreconditionError::MissingBounds);
    }
    if (0..f.len()).any(|i| f.complement_index(i).is_none()) {
        return Err(PreconditionError::NotComplementClosed);
    }
    Ok(())
}

/// Every common lower bound of p and its complement is 0, for all members.
fn raw_complemented(f: &EventFamily) -> bool {
    (0..f.len()).all(|i| {
        let complement = f.event(i).complement();
        f.is_disjoint(f.event(i), &complement)
    })
}

fn raw_boolean_poset(f: &EventFamily) -> bool {
    let n = f.len();
    (0..n).all(|i| (0..n).all(|j| !f.disjoint_idx(i, j) || f.orthogonal_idx(i, j)))
}

/// Complemented families: every element is disjoint from its complement.
pub fn is_complemented(family: &EventFamily) -> Result<bool, PreconditionError> {
    bounds_and_complements(family)?;
    Ok(raw_complemented(family))
}

/// Orthoposets are exactly the complemented families here: the complement
/// map is an antitone involution by construction.
pub fn is_orthoposet(family: &EventFamily) -> Result<bool, PreconditionError> {
    is_complemented(family)
}

/// Boolean posets: disjointness implies orthogonality.
pub fn is_boolean_poset(family: &EventFamily) -> Result<bool, PreconditionError> {
    bounds_and_complements(family)?;
    Ok(raw_boolean_poset(family))
}

/// De Morgan's laws inside the family: the complement of an existing
/// supremum is the infimum of the complements, and dually.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeMorganVerdict {
    pub holds: bool,
    pub witness: Option<(Event, Event)>,
}

pub fn demorgan_check(family: &EventFamily) -> Result<DeMorganVerdict, PreconditionError> {
    bounds_and_complements(family)?;
    let n = family.len();
    for i in 0..n {
        for j in 0..n {
            let p = family.event(i);
            let q = family.event(j);
            let pc = p.complement();
            let qc = q.complement();
            if let Some(s) = family.supremum_in(p, q) {
                match family.infimum_in(&pc, &qc) {
                    Some(m) if *m == s.complement() => {}
                    _ => {
                        return Ok(DeMorganVerdict {
                            holds: false,
                            witness: Some((p.clone(), q.clone())),
                        })
                    }
                }
            }
            if let Some(m) = family.infimum_in(p, q) {
                match family.supremum_in(&pc, &qc) {
                    Some(s) if *s == m.complement() => {}
                    _ => {
                        return Ok(DeMorganVerdict {
                            holds: false,
                            witness: Some((p.clone(), q.clone())),
                        })
                    }
                }
            }
        }
    }
    Ok(DeMorganVerdict {
        holds: true,
        witness: None,
    })
}

/// Concrete-logic form: every event is {0,1}-valued and, read as subsets of
/// the state set, the family contains ∅ and S, is closed under set
/// complement and under unions of disjoint pairs of sets.
pub fn is_concrete_logic_form(family: &EventFamily) -> bool {
    if !family.events().iter().all(Event::is_zero_one_valued) {
        return false;
    }
    if !family.has_bounds() {
        return false;
    }
    if (0..family.len()).any(|i| family.complement_index(i).is_none()) {
        return false;
    }
    let n = family.len();
    for i in 0..n {
        for j in 0..n {
            // For {0,1}-valued events, set disjointness is orthogonality and
            // the union of disjoint sets is the sum.
            if !family.orthogonal_idx(i, j) {
                continue;
            }
            let union = pointwise_sum([family.event(i), family.event(j)]);
            if family.member_index_of_vector(&union).is_none() {
                return false;
            }
        }
    }
    true
}

/// Generalized field of events: (1), (2) and (4).
pub fn is_gfe(family: &EventFamily) -> bool {
    cond1(family).holds && cond2(family).holds && cond4(family).holds
}

/// Algebra of S-probabilities: a GFE also satisfying (5).
pub fn is_algebra(family: &EventFamily) -> bool {
    is_gfe(family) && cond5(family).holds
}

pub(crate) fn is_specific(family: &EventFamily) -> bool {
    cond1(family).holds && cond2(family).holds && cond3(family).holds
}

pub(crate) fn is_structured(family: &EventFamily) -> bool {
    cond1(family).holds && cond2(family).holds && chain_condition(family, 7).holds
}

/// Every pair has both an infimum and a supremum inside the family.
pub fn is_lattice(family: &EventFamily) -> bool {
    lattice_tables(family).is_some()
}

fn lattice_tables(f: &EventFamily) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = f.len();
    let mut inf = vec![0usize; n * n];
    let mut sup = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            inf[i * n + j] = f.infimum_index(f.event(i), f.event(j))?;
            sup[i * n + j] = f.supremum_index(f.event(i), f.event(j))?;
        }
    }
    Some((inf, sup))
}

/// Lattice criterion for structured concrete logics: closure under the
/// pointwise maximum decides lattice-ness.
pub fn lattice_criterion(family: &EventFamily) -> Result<bool, PreconditionError> {
    if !is_structured(family) {
        return Err(PreconditionError::NotStructured);
    }
    if !is_concrete_logic_form(family) {
        return Err(PreconditionError::NotConcreteLogic);
    }
    let n = family.len();
    for i in 0..n {
        for j in 0..n {
            let max = family.event(i).pointwise_max(family.event(j));
            if !family.contains(&max) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn raw_orthomodular(f: &EventFamily) -> bool {
    let n = f.len();
    for i in 0..n {
        for j in 0..n {
            if !f.leq_idx(i, j) {
                continue;
            }
            let pc = f.event(i).complement();
            let Some(m) = f.infimum_in(&pc, f.event(j)) else {
                return false;
            };
            let m = m.clone();
            match f.supremum_index(f.event(i), &m) {
                Some(s) if s == j => {}
                _ => return false,
            }
        }
    }
    true
}

/// Orthomodular law: p <= q implies q = p ∨ (p' ∧ q), extrema inside the
/// family. Requires an orthoposet.
pub fn is_orthomodular(family: &EventFamily) -> Result<bool, PreconditionError> {
    if !is_orthoposet(family)? {
        return Err(PreconditionError::NotOrthoposet);
    }
    Ok(raw_orthomodular(family))
}

/// Lattice + complemented orthoposet + meets distributing over joins.
pub fn is_boolean_algebra(family: &EventFamily) -> bool {
    let Some((inf, sup)) = lattice_tables(family) else {
        return false;
    };
    if bounds_and_complements(family).is_err() || !raw_complemented(family) {
        return false;
    }
    let n = family.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = inf[i * n + sup[j * n + k]];
                let rhs = sup[inf[i * n + j] * n + inf[i * n + k]];
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Full classification of a family, with internal cross-law checks.
pub fn classify(family: &EventFamily) -> ClassificationReport {
    let conditions: Vec<ConditionVerdict> = (1..=8).map(|c| check_condition(family, c)).collect();
    let holds = |c: usize| conditions[c - 1].holds;

    let specific = holds(1) && holds(2) && holds(3);
    let vee_specific = specific && holds(6);
    let structured = holds(1) && holds(2) && holds(7);
    let weakly_structured = holds(1) && holds(2) && holds(8);
    let gfe = holds(1) && holds(2) && holds(4);
    let algebra = gfe && holds(5);

    let gated = holds(1) && holds(2);
    let complemented = gated && raw_complemented(family);
    let orthoposet = complemented;
    let boolean_poset = gated && raw_boolean_poset(family);
    let all_varying = family.events().iter().all(Event::is_varying);
    let concrete_logic_form = is_concrete_logic_form(family);
    let lattice = is_lattice(family);
    let boolean_algebra = is_boolean_algebra(family);
    let infimum_faithful = subalg::is_infimum_faithful(family);
    let orthomodular = orthoposet && raw_orthomodular(family);

    let condition6_pointwise_max = cond6_pointwise_max(family);
    let vee_specific_max_reading = specific && condition6_pointwise_max.holds;

    let flags = ClassFlags {
        specific,
        vee_specific,
        structured,
        weakly_structured,
        gfe,
        algebra_of_s_probabilities: algebra,
        boolean_poset,
        orthoposet,
        complemented,
        all_varying,
        concrete_logic_form,
        lattice,
        boolean_algebra,
        infimum_faithful,
        orthomodular,
    };

    let mut internal_errors = Vec::new();
    if flags.structured && !flags.vee_specific {
        internal_errors.push("structured family is not vee-specific".to_owned());
    }
    if flags.vee_specific && !flags.weakly_structured {
        internal_errors.push("vee-specific family is not weakly structured".to_owned());
    }
    if flags.vee_specific != (flags.specific && flags.weakly_structured) {
        internal_errors.push("vee-specific differs from specific ∧ weakly structured".to_owned());
    }

    ClassificationReport {
        conditions,
        condition6_pointwise_max,
        flags,
        vee_specific_max_reading,
        internal_errors,
    }
}

impl ClassificationReport {
    /// Human-readable rendering; the structured form is the serialization.
    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        out.push_str("conditions\n");
        for verdict in &self.conditions {
            render_condition(&mut out, verdict);
        }
        out.push_str("condition (6), pointwise-max reading (diagnostic)\n");
        render_condition(&mut out, &self.condition6_pointwise_max);
        out.push_str("classes\n");
        for flag in ClassFlag::ALL {
            let _ = writeln!(
                out,
                "  {:<28} {}",
                flag.name(),
                if self.flags.get(flag) { "yes" } else { "no" }
            );
        }
        let _ = writeln!(
            out,
            "  {:<28} {}",
            "vee-specific (max reading)",
            if self.vee_specific_max_reading {
                "yes"
            } else {
                "no"
            }
        );
        for error in &self.internal_errors {
            let _ = writeln!(out, "INTERNAL CONSISTENCY ERROR: {error}");
        }
        out
    }
}

fn render_condition(out: &mut String, verdict: &ConditionVerdict) {
    use std::fmt::Write;
    if verdict.holds {
        let _ = writeln!(out, "  ({}) holds", verdict.condition);
        return;
    }
    let _ = write!(out, "  ({}) fails", verdict.condition);
    if let Some(witness) = &verdict.witness {
        let tuple: Vec<String> = witness.events.iter().map(|e| e.to_string()).collect();
        if !tuple.is_empty() {
            let _ = write!(out, ": {}", tuple.join(", "));
        }
        if let Some(sum) = &witness.sum {
            let _ = write!(out, ", sum {sum}");
        }
        let reason = match witness.reason {
            WitnessReason::MissingZero => "constant 0 missing".to_owned(),
            WitnessReason::MissingOne => "constant 1 missing".to_owned(),
            WitnessReason::ComplementAbsent => match &witness.related {
                Some(c) => format!("complement {c} missing"),
                None => "complement missing".to_owned(),
            },
            WitnessReason::SumNotMember => "not a member".to_owned(),
            WitnessReason::SumNotSupremum => match &witness.related {
                Some(s) => format!("differs from supremum {s}"),
                None => "supremum does not exist".to_owned(),
            },
            WitnessReason::SumNotPointwiseMax => match &witness.related {
                Some(m) => format!("differs from pointwise max {m}"),
                None => "differs from pointwise max".to_owned(),
            },
            WitnessReason::SumExceedsOne => "exceeds 1".to_owned(),
        };
        let _ = write!(out, " ({reason})");
    }
    out.push('\n');
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{bounds_only, ev, example1, example2, fam, powerset2, powerset3};

    #[test]
    fn trivial_family_satisfies_everything() {
        let f = bounds_only();
        for c in 1..=8 {
            assert!(check_condition(&f, c).holds, "condition ({c})");
        }
        let report = classify(&f);
        for flag in ClassFlag::ALL {
            assert!(report.flags.get(flag), "{flag}");
        }
        assert!(report.internal_errors.is_empty());
    }

    #[test]
    fn power_set_is_boolean_in_every_sense() {
        for f in [powerset2(), powerset3()] {
            let report = classify(&f);
            for flag in ClassFlag::ALL {
                assert!(report.flags.get(flag), "{flag} on {f:?}");
            }
            assert!(report.internal_errors.is_empty());
        }
    }

    #[test]
    fn example1_condition7_first_witness() {
        // Lexicographically first violating triple: p = (0,0), q = r =
        // (0,1/2); the chain hypotheses hold and the sum (0,1) is absent.
        let verdict = check_condition(&example1(), 7);
        assert!(!verdict.holds);
        let witness = verdict.witness.unwrap();
        assert_eq!(witness.events, vec![ev("0,0"), ev("0,1/2"), ev("0,1/2")]);
        assert_eq!(witness.sum.unwrap().to_string(), "(0,1)");
        assert_eq!(witness.reason, WitnessReason::SumNotMember);
    }

    #[test]
    fn example1_replays_the_quoted_chain_violation() {
        // The classic witness triple: (0,1/2) ⟂ (1/2,1/2) ⟂ (1/2,1/4) with
        // disjoint endpoints, summing to (1,5/4) which is not a member.
        let f = example1();
        let (p, q, r) = (ev("0,1/2"), ev("1/2,1/2"), ev("1/2,1/4"));
        assert!(p.orthogonal_to(&q));
        assert!(q.orthogonal_to(&r));
        assert!(f.is_disjoint(&p, &r));
        let sum = crate::event::pointwise_sum([&p, &q, &r]);
        assert_eq!(sum.to_string(), "(1,5/4)");
        assert_eq!(f.member_index_of_vector(&sum), None);
    }

    #[test]
    fn example1_flags() {
        let report = classify(&example1());
        let flags = &report.flags;
        assert!(flags.specific);
        assert!(!flags.vee_specific);
        assert!(!flags.structured);
        assert!(!flags.weakly_structured);
        assert!(!flags.gfe);
        assert!(!flags.algebra_of_s_probabilities);
        assert!(flags.boolean_poset);
        assert!(!flags.orthoposet);
        assert!(!flags.complemented);
        assert!(!flags.all_varying);
        assert!(!flags.concrete_logic_form);
        assert!(flags.lattice);
        assert!(!flags.boolean_algebra);
        assert!(!flags.infimum_faithful);
        assert!(!flags.orthomodular);
        assert!(report.internal_errors.is_empty());
    }

    #[test]
    fn example1_condition6_fails_on_supremum_mismatch() {
        // (0,1/2) and (1/2,1/4) are disjoint with sum (1/2,3/4), a member,
        // while the supremum inside the family is (1/2,1/2).
        let verdict = check_condition(&example1(), 6);
        assert!(!verdict.holds);
        let witness = verdict.witness.unwrap();
        assert_eq!(witness.events, vec![ev("0,1/2"), ev("1/2,1/4")]);
        assert_eq!(witness.reason, WitnessReason::SumNotSupremum);
        assert_eq!(witness.related, Some(ev("1/2,1/2")));
    }

    #[test]
    fn example2_condition6_witness_is_the_absent_sum() {
        let verdict = check_condition(&example2(), 6);
        assert!(!verdict.holds);
        let witness = verdict.witness.unwrap();
        assert_eq!(witness.events, vec![ev("0,1/2"), ev("1/2,0")]);
        assert_eq!(witness.sum.unwrap().to_string(), "(1/2,1/2)");
        assert_eq!(witness.reason, WitnessReason::SumNotMember);
    }

    #[test]
    fn example2_flags() {
        let report = classify(&example2());
        let flags = &report.flags;
        assert!(!flags.specific);
        assert!(!flags.vee_specific);
        assert!(!flags.structured);
        assert!(flags.weakly_structured);
        assert!(!flags.gfe);
        assert!(flags.boolean_poset);
        assert!(!flags.complemented);
        assert!(!flags.lattice);
        assert!(!flags.boolean_algebra);
        assert!(report.internal_errors.is_empty());
    }

    #[test]
    fn varying_flag_matches_event_predicate() {
        assert!(classify(&powerset2()).flags.all_varying);
        assert!(!classify(&example1()).flags.all_varying);
    }

    #[test]
    fn complemented_is_decided_by_the_meet_with_the_complement() {
        // (1/4,1/4) lies below its own complement (3/4,3/4), so it is a
        // nonzero common lower bound of the two.
        let f = fam(&["0,0", "1/4,1/4", "3/4,3/4", "1,1"]);
        assert_eq!(is_complemented(&f), Ok(false));
        assert_eq!(is_complemented(&bounds_only()), Ok(true));
        // (0,1/2) <= (1,1/2), its complement, so their meet is (0,1/2).
        assert_eq!(is_complemented(&example2()), Ok(false));
        let no_bounds = fam(&["0,1", "1,0"]);
        assert_eq!(
            is_complemented(&no_bounds),
            Err(PreconditionError::MissingBounds)
        );
    }

    #[test]
    fn boolean_poset_examples() {
        assert_eq!(is_boolean_poset(&example2()), Ok(true));
        assert_eq!(is_boolean_poset(&bounds_only()), Ok(true));
        // Specific families are always Boolean posets.
        assert_eq!(is_boolean_poset(&example1()), Ok(true));
    }

    #[test]
    fn demorgan_holds_on_the_examples() {
        for f in [example1(), example2(), powerset2(), bounds_only()] {
            let verdict = demorgan_check(&f).unwrap();
            assert!(verdict.holds, "{f:?}");
        }
        // Replay of the interesting instance: sup{(0,1/2),(1/2,1/4)} =
        // (1/2,1/2) and the infimum of the complements is its complement.
        let f = example1();
        let s = f.supremum_in(&ev("0,1/2"), &ev("1/2,1/4")).unwrap().clone();
        let m = f
            .infimum_in(&ev("0,1/2").complement(), &ev("1/2,1/4").complement())
            .unwrap();
        assert_eq!(*m, s.complement());
    }

    #[test]
    fn concrete_logic_form_examples() {
        assert!(is_concrete_logic_form(&powerset2()));
        assert!(is_concrete_logic_form(&bounds_only()));
        assert!(!is_concrete_logic_form(&example1()));
        // {0,1}-valued but not closed under disjoint unions.
        let f = fam(&["0,0,0", "0,0,1", "0,1,0", "1,0,1", "1,1,0", "1,1,1"]);
        assert!(!is_concrete_logic_form(&f));
    }

    #[test]
    fn gfe_and_algebra_examples() {
        assert!(is_gfe(&powerset2()) && is_algebra(&powerset2()));
        assert!(is_gfe(&bounds_only()) && is_algebra(&bounds_only()));
        assert!(!is_gfe(&example1()));
        // First orthogonal pair with an absent sum: (0,1/2) ⟂ (0,1/2),
        // sum (0,1).
        let verdict = check_condition(&example1(), 4);
        let witness = verdict.witness.unwrap();
        assert_eq!(witness.events, vec![ev("0,1/2"), ev("0,1/2")]);
        assert_eq!(witness.sum.unwrap().to_string(), "(0,1)");
    }

    #[test]
    fn lattice_and_criterion() {
        assert!(is_lattice(&powerset2()));
        assert!(is_lattice(&bounds_only()));
        assert!(!is_lattice(&example2()));
        assert_eq!(lattice_criterion(&powerset2()), Ok(true));
        assert_eq!(lattice_criterion(&powerset3()), Ok(true));
        assert_eq!(lattice_criterion(&bounds_only()), Ok(true));
        assert!(lattice_criterion(&example1()).is_err());
    }

    #[test]
    fn boolean_algebra_examples() {
        assert!(is_boolean_algebra(&powerset2()));
        assert!(is_boolean_algebra(&bounds_only()));
        assert!(!is_boolean_algebra(&example2()));
        assert!(!is_boolean_algebra(&example1()));
    }

    #[test]
    fn orthomodular_examples() {
        assert_eq!(is_orthomodular(&powerset2()), Ok(true));
        assert_eq!(is_orthomodular(&bounds_only()), Ok(true));
        assert_eq!(
            is_orthomodular(&example1()),
            Err(PreconditionError::NotOrthoposet)
        );
    }

    #[test]
    fn max_reading_of_condition6_is_reported_separately() {
        // Under the pointwise-max reading the same disjoint pair of the
        // first example fails as well: sum (1/2,3/4), max (1/2,1/2).
        let report = classify(&example1());
        assert!(!report.condition6_pointwise_max.holds);
        assert!(!report.vee_specific_max_reading);
        let witness = report.condition6_pointwise_max.witness.unwrap();
        assert_eq!(witness.events, vec![ev("0,1/2"), ev("1/2,1/4")]);
        assert_eq!(witness.reason, WitnessReason::SumNotPointwiseMax);
        assert_eq!(witness.related, Some(ev("1/2,1/2")));
    }
}
