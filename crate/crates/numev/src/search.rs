//! Exhaustive enumeration of event families over small rational grids,
//! desk-scale verification of the structural laws relating the classes, and
//! witness mining for the strict inclusions between them.
//!
//! Families are streamed in canonical order (lexicographic by sorted event
//! list) and deduplicated exactly, not up to isomorphism. Chunks of the
//! stream are classified in parallel and merged back in stream order, so
//! reports are byte-identical regardless of the worker count. A budget caps
//! the number of families examined; hitting it yields an explicit
//! "inconclusive" status, never a silent pass.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{self, ClassFlag, ClassFlags};
use crate::event::Event;
use crate::family::EventFamily;
use crate::poset::AbstractBoundedPoset;
use crate::rational::Rational;
use crate::states;
use crate::subalg;

/// Structural prefilter applied during enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Prefilter {
    /// Family contains the constant events 0 and 1.
    Bounds,
    /// Family is closed under the complement p ↦ 1 - p.
    ComplementClosed,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown prefilter `{0}` (expected `bounds` or `complement-closed`)")]
pub struct ParsePrefilterError(String);

impl std::str::FromStr for Prefilter {
    type Err = ParsePrefilterError;

    fn from_str(s: &str) -> Result<Prefilter, ParsePrefilterError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bounds" => Ok(Prefilter::Bounds),
            "complement-closed" | "complement_closed" | "closed" => Ok(Prefilter::ComplementClosed),
            other => Err(ParsePrefilterError(other.to_owned())),
        }
    }
}

/// A finite grid of candidate families: all events whose values are
/// multiples of 1/denominator over the given number of states, combined
/// into families of bounded size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpace {
    pub num_states: usize,
    pub denominator: u64,
    pub max_family_size: usize,
    pub require: Vec<Prefilter>,
}

impl SearchSpace {
    pub fn new(
        num_states: usize,
        denominator: u64,
        max_family_size: usize,
        require: Vec<Prefilter>,
    ) -> SearchSpace {
        assert!(num_states >= 1, "at least one state");
        assert!(denominator >= 1, "positive denominator");
        assert!(max_family_size >= 2, "families of size at least 2");
        SearchSpace {
            num_states,
            denominator,
            max_family_size,
            require,
        }
    }

    fn requires(&self, p: Prefilter) -> bool {
        self.require.contains(&p)
    }

    /// All grid events in canonical (lexicographic) order.
    pub fn grid(&self) -> Vec<Event> {
        let d = self.denominator;
        let values: Vec<Rational> = (0..=d).map(|k| Rational::new(k, d)).collect();
        let mut grid = Vec::with_capacity(values.len().pow(self.num_states as u32));
        let mut current = vec![0usize; self.num_states];
        loop {
            let event = Event::new(current.iter().map(|&k| values[k]).collect())
                .expect("grid values lie in [0,1]");
            grid.push(event);
            // Odometer with the first coordinate most significant keeps the
            // stream lexicographically sorted.
            let mut pos = self.num_states;
            loop {
                if pos == 0 {
                    return grid;
                }
                pos -= 1;
                if current[pos] < d as usize {
                    current[pos] += 1;
                    for later in current.iter_mut().skip(pos + 1) {
                        *later = 0;
                    }
                    break;
                }
            }
        }
    }
}

/// Depth-first stream of all families over the grid meeting the prefilters,
/// in canonical order, each exactly once.
pub struct FamilyIter {
    grid: Vec<Event>,
    complement_of: Vec<usize>,
    states: Vec<String>,
    max_size: usize,
    require_bounds: bool,
    require_closed: bool,
    chosen: Vec<usize>,
    pending: Vec<usize>,
    candidate: usize,
    done: bool,
}

/// Enumerates every family of the space in canonical order.
pub fn enumerate_families(space: &SearchSpace) -> FamilyIter {
    let grid = space.grid();
    let complement_of = grid
        .iter()
        .map(|e| {
            grid.binary_search(&e.complement())
                .expect("grid is closed under complement")
        })
        .collect();
    FamilyIter {
        complement_of,
        states: (1..=space.num_states).map(|i| format!("s{i}")).collect(),
        max_size: space.max_family_size,
        require_bounds: space.requires(Prefilter::Bounds),
        require_closed: space.requires(Prefilter::ComplementClosed),
        chosen: Vec::new(),
        pending: Vec::new(),
        candidate: 0,
        done: grid.is_empty(),
        grid,
    }
}

impl FamilyIter {
    fn viable(&self, c: usize) -> bool {
        if self.require_bounds && self.chosen.is_empty() && c != 0 {
            return false;
        }
        if self.require_closed {
            let cc = self.complement_of[c];
            if cc < c && self.chosen.binary_search(&cc).is_err() {
                return false;
            }
            // A pending complement below c can no longer be added.
            if self.pending.iter().any(|&p| p < c) {
                return false;
            }
            let grows = if cc > c && self.pending.binary_search(&cc).is_err() {
                1
            } else {
                0
            };
            let shrinks = usize::from(self.pending.binary_search(&c).is_ok());
            if self.chosen.len() + 1 + self.pending.len() + grows - shrinks > self.max_size {
                return false;
            }
        }
        true
    }

    fn recompute_pending(&mut self) {
        self.pending.clear();
        if !self.require_closed {
            return;
        }
        for &i in &self.chosen {
            let cc = self.complement_of[i];
            if self.chosen.binary_search(&cc).is_err() {
                self.pending.push(cc);
            }
        }
        self.pending.sort_unstable();
        self.pending.dedup();
    }

    fn emits(&self) -> bool {
        if self.require_bounds
            && (self.chosen[0] != 0 || *self.chosen.last().unwrap() != self.grid.len() - 1)
        {
            return false;
        }
        if self.require_closed && !self.pending.is_empty() {
            return false;
        }
        true
    }

    fn family(&self) -> EventFamily {
        let events = self.chosen.iter().map(|&i| self.grid[i].clone()).collect();
        EventFamily::from_sorted(self.states.clone(), events)
    }
}

impl Iterator for FamilyIter {
    type Item = EventFamily;

    fn next(&mut self) -> Option<EventFamily> {
        while !self.done {
            if self.candidate < self.grid.len() && self.chosen.len() < self.max_size {
                let c = self.candidate;
                self.candidate = c + 1;
                if !self.viable(c) {
                    continue;
                }
                self.chosen.push(c);
                self.recompute_pending();
                if self.emits() {
                    return Some(self.family());
                }
            } else {
                match self.chosen.pop() {
                    Some(last) => {
                        self.recompute_pending();
                        self.candidate = last + 1;
                    }
                    None => self.done = true,
                }
            }
        }
        None
    }
}

/// The structural laws replayed on every enumerated family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawId {
    /// structured ⊆ ∨-specific ⊆ weakly structured.
    ClassChain,
    /// ∨-specific = specific ∩ weakly structured.
    ClassIntersection,
    /// De Morgan's laws hold whenever (1) and (2) do.
    DeMorgan,
    /// With (1) and (2): all elements varying iff complemented.
    VaryingComplemented,
    /// specific ∧ varying iff complemented Boolean GFE.
    SpecificVaryingFlags,
    /// specific ∧ varying families have a two-valued representation in
    /// concrete-logic form.
    ConcreteLogicRepresentation,
    /// specific ∧ varying iff infimum faithful algebra.
    InfimumFaithfulAlgebra,
    /// structured iff infimum faithful algebra. This half of the classical
    /// characterization has desk-scale counterexamples under the literal
    /// conditions: families with a nonzero element p <= p' (such as
    /// {0, (1/2,1/2), 1}) pass the chain condition (7) because p is not
    /// disjoint from itself, yet fail the triple condition (5) on (p,p,p)
    /// and are not infimum faithful. Violations of this law are expected
    /// data, not defects; the sweep pins them exactly.
    StructuredFaithfulAlgebra,
    /// ∨-specific iff disjoint sums are joins and the canonical states are
    /// a full set of pseudostates.
    VeeShape,
    /// Specific families: canonical states are full and uniform specific
    /// states and rebuild the family up to isomorphism.
    CanonicalStatesRoundTrip,
    /// specific ∧ varying: orthogonal pairs are disjoint.
    OrthogonalityDisjointness,
    /// Commuting is symmetric on orthomodular families.
    CommutationSymmetry,
    /// Internal consistency of the classifier itself.
    ClassifierInternal,
}

/// A replayable law violation (expected never to occur).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: LawId,
    pub family: EventFamily,
    pub detail: String,
}

/// A family found by witness mining, with its replayed flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundWitness {
    pub family: EventFamily,
    pub flags: ClassFlags,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCount {
    pub flag: String,
    pub count: usize,
}

/// Report of one search run, for both verification and witness mining.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub space: SearchSpace,
    pub mode: String,
    pub want: Vec<String>,
    pub avoid: Vec<String>,
    pub families_examined: usize,
    pub class_counts: Vec<ClassCount>,
    pub violations: Vec<Violation>,
    pub witnesses: Vec<FoundWitness>,
    pub exhausted: bool,
    pub inconclusive: bool,
}

impl SearchReport {
    pub fn witness_family(&self) -> Option<&EventFamily> {
        self.witnesses.first().map(|w| &w.family)
    }
}

fn law_violations(family: &EventFamily) -> (ClassFlags, Vec<(LawId, String)>) {
    let report = classify::classify(family);
    let flags = report.flags.clone();
    let mut violations: Vec<(LawId, String)> = Vec::new();

    for error in &report.internal_errors {
        violations.push((LawId::ClassifierInternal, error.clone()));
    }
    if (flags.structured && !flags.vee_specific) || (flags.vee_specific && !flags.weakly_structured)
    {
        violations.push((LawId::ClassChain, "class chain broken".to_owned()));
    }
    if flags.vee_specific != (flags.specific && flags.weakly_structured) {
        violations.push((
            LawId::ClassIntersection,
            "vee-specific is not specific ∧ weakly structured".to_owned(),
        ));
    }

    let gated = report.conditions[0].holds && report.conditions[1].holds;
    if gated {
        match classify::demorgan_check(family) {
            Ok(verdict) if verdict.holds => {}
            Ok(verdict) => violations.push((
                LawId::DeMorgan,
                format!("De Morgan fails at {:?}", verdict.witness),
            )),
            Err(e) => violations.push((LawId::DeMorgan, format!("precondition lost: {e}"))),
        }
        if flags.all_varying != flags.complemented {
            violations.push((
                LawId::VaryingComplemented,
                format!(
                    "all_varying = {}, complemented = {}",
                    flags.all_varying, flags.complemented
                ),
            ));
        }
    }

    let specific_varying = flags.specific && flags.all_varying;
    let complemented_boolean_gfe = flags.complemented && flags.boolean_poset && flags.gfe;
    if specific_varying != complemented_boolean_gfe {
        violations.push((
            LawId::SpecificVaryingFlags,
            format!("specific∧varying = {specific_varying}, complemented Boolean GFE = {complemented_boolean_gfe}"),
        ));
    }

    if specific_varying {
        match states::two_valued_representation(family) {
            Some(rep) if classify::is_concrete_logic_form(&rep.carrier) => {}
            Some(_) => violations.push((
                LawId::ConcreteLogicRepresentation,
                "two-valued carrier is not in concrete-logic form".to_owned(),
            )),
            None => violations.push((
                LawId::ConcreteLogicRepresentation,
                "no two-valued representation found".to_owned(),
            )),
        }
    }

    let faithful_algebra = flags.algebra_of_s_probabilities && flags.infimum_faithful;
    if specific_varying != faithful_algebra {
        violations.push((
            LawId::InfimumFaithfulAlgebra,
            format!(
                "specific∧varying = {specific_varying}, infimum faithful algebra = {faithful_algebra}"
            ),
        ));
    }
    if flags.structured != faithful_algebra {
        violations.push((
            LawId::StructuredFaithfulAlgebra,
            format!(
                "structured = {}, infimum faithful algebra = {faithful_algebra}",
                flags.structured
            ),
        ));
    }

    let shape = states::check_theorem4_shape(family);
    if !shape.equivalent {
        violations.push((
            LawId::VeeShape,
            format!(
                "vee-specific = {} but shape verdicts are joins = {}, pseudostates = {}",
                shape.vee_specific, shape.disjoint_sums_are_joins, shape.full_pseudostates
            ),
        ));
    }

    if flags.specific {
        violations
            .extend(round_trip_violation(family).map(|d| (LawId::CanonicalStatesRoundTrip, d)));
    }

    if specific_varying {
        let n = family.len();
        'outer: for i in 0..n {
            for j in 0..n {
                if family.orthogonal_idx(i, j) && !family.disjoint_idx(i, j) {
                    violations.push((
                        LawId::OrthogonalityDisjointness,
                        format!("{} ⟂ {} but not disjoint", family.event(i), family.event(j)),
                    ));
                    break 'outer;
                }
            }
        }
    }

    if flags.orthomodular {
        let n = family.len();
        'sym: for i in 0..n {
            for j in 0..n {
                let forward = subalg::commutes(family, family.event(i), family.event(j));
                let backward = subalg::commutes(family, family.event(j), family.event(i));
                if forward != backward {
                    violations.push((
                        LawId::CommutationSymmetry,
                        format!(
                            "commutes({p}, {q}) = {forward} but commutes({q}, {p}) = {backward}",
                            p = family.event(i),
                            q = family.event(j)
                        ),
                    ));
                    break 'sym;
                }
            }
        }
    }

    (flags, violations)
}

fn round_trip_violation(family: &EventFamily) -> Option<String> {
    let poset = match AbstractBoundedPoset::from_family(family) {
        Ok(p) => p,
        Err(e) => return Some(format!("poset extraction failed: {e}")),
    };
    let table = states::canonical_states(family);
    for s in 0..table.len() {
        if !states::check_specific_state(&poset, table.row(s)).holds() {
            return Some(format!(
                "canonical state {} is not specific",
                table.state_names()[s]
            ));
        }
    }
    if let Err((p, q)) = states::is_full(&poset, &table) {
        return Some(format!("canonical states not full at {p}, {q}"));
    }
    if let Err((p, q)) = states::is_uniform(&poset, &table) {
        return Some(format!("canonical states not uniform at {p}, {q}"));
    }
    match states::build_representation(&poset, &table) {
        Ok(rep) => {
            if rep.carrier != *family {
                return Some("rebuilt family differs from the original".to_owned());
            }
            if !states::representation_is_isomorphism(&poset, &rep) {
                return Some("rebuilt map is not an isomorphism".to_owned());
            }
            None
        }
        Err(e) => Some(format!("representation failed: {e}")),
    }
}

const CHUNK: usize = 1024;

struct StreamScan {
    families_examined: usize,
    exhausted: bool,
    inconclusive: bool,
}

/// Runs `work` over the canonical stream in parallel chunks, merging results
/// in stream order. `stop` decides (on in-order results) whether to halt
/// after a given family; determinism is independent of the worker count.
fn scan_space<T: Send>(
    space: &SearchSpace,
    budget: Option<usize>,
    work: impl Fn(&EventFamily) -> T + Sync,
    mut consume: impl FnMut(EventFamily, T) -> bool,
) -> StreamScan {
    let mut iter = enumerate_families(space).peekable();
    let mut examined = 0usize;
    loop {
        let remaining = budget.map_or(usize::MAX, |b| b.saturating_sub(examined));
        if remaining == 0 {
            return StreamScan {
                families_examined: examined,
                exhausted: iter.peek().is_none(),
                inconclusive: iter.peek().is_some(),
            };
        }
        let mut chunk = Vec::with_capacity(CHUNK.min(remaining));
        while chunk.len() < CHUNK.min(remaining) {
            match iter.next() {
                Some(f) => chunk.push(f),
                None => break,
            }
        }
        if chunk.is_empty() {
            return StreamScan {
                families_examined: examined,
                exhausted: true,
                inconclusive: false,
            };
        }
        let results: Vec<T> = chunk.par_iter().map(&work).collect();
        for (family, result) in chunk.into_iter().zip(results) {
            examined += 1;
            if consume(family, result) {
                return StreamScan {
                    families_examined: examined,
                    exhausted: false,
                    inconclusive: false,
                };
            }
        }
    }
}

fn count_flags(counts: &mut [usize; 15], flags: &ClassFlags) {
    for (slot, flag) in counts.iter_mut().zip(ClassFlag::ALL) {
        if flags.get(flag) {
            *slot += 1;
        }
    }
}

fn class_counts(counts: [usize; 15]) -> Vec<ClassCount> {
    ClassFlag::ALL
        .iter()
        .zip(counts)
        .map(|(flag, count)| ClassCount {
            flag: flag.name().to_owned(),
            count,
        })
        .collect()
}

/// Replays all structural laws on every family of the space. The violation
/// list of the report is expected to be empty; anything else is a defect in
/// this crate.
pub fn verify_theorems(space: &SearchSpace, budget: Option<usize>) -> SearchReport {
    let mut counts = [0usize; 15];
    let mut violations = Vec::new();
    let scan = scan_space(space, budget, law_violations, |family, (flags, found)| {
        count_flags(&mut counts, &flags);
        for (law, detail) in found {
            violations.push(Violation {
                law,
                family: family.clone(),
                detail,
            });
        }
        false
    });
    SearchReport {
        space: space.clone(),
        mode: "verify".to_owned(),
        want: Vec::new(),
        avoid: Vec::new(),
        families_examined: scan.families_examined,
        class_counts: class_counts(counts),
        violations,
        witnesses: Vec::new(),
        exhausted: scan.exhausted,
        inconclusive: scan.inconclusive,
    }
}

/// First family in canonical order with every `want` flag set and every
/// `avoid` flag clear, if any.
pub fn find_witness(
    space: &SearchSpace,
    want: &[ClassFlag],
    avoid: &[ClassFlag],
    budget: Option<usize>,
) -> SearchReport {
    let mut counts = [0usize; 15];
    let mut witnesses = Vec::new();
    let scan = scan_space(
        space,
        budget,
        |family| classify::classify(family).flags,
        |family, flags| {
            count_flags(&mut counts, &flags);
            let matched =
                want.iter().all(|&f| flags.get(f)) && avoid.iter().all(|&f| !flags.get(f));
            if matched {
                witnesses.push(FoundWitness { family, flags });
            }
            matched
        },
    );
    SearchReport {
        space: space.clone(),
        mode: "witness".to_owned(),
        want: want.iter().map(|f| f.name().to_owned()).collect(),
        avoid: avoid.iter().map(|f| f.name().to_owned()).collect(),
        families_examined: scan.families_examined,
        class_counts: class_counts(counts),
        violations: Vec::new(),
        witnesses,
        exhausted: scan.exhausted,
        inconclusive: scan.inconclusive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{ev, example2};

    fn space(
        num_states: usize,
        denominator: u64,
        max_size: usize,
        require: &[Prefilter],
    ) -> SearchSpace {
        SearchSpace::new(num_states, denominator, max_size, require.to_vec())
    }

    #[test]
    fn grid_is_sorted_and_complete() {
        let s = space(2, 2, 4, &[]);
        let grid = s.grid();
        assert_eq!(grid.len(), 9);
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
        assert!(grid[0].is_constant_zero());
        assert!(grid[8].is_constant_one());
    }

    #[test]
    fn tiny_space_enumerates_all_subsets_in_order() {
        let families: Vec<_> = enumerate_families(&space(1, 1, 2, &[])).collect();
        let rendered: Vec<String> = families.iter().map(|f| format!("{f:?}")).collect();
        assert_eq!(rendered, ["{(0)}", "{(0), (1)}", "{(1)}"]);

        let bounded: Vec<_> = enumerate_families(&space(1, 1, 2, &[Prefilter::Bounds])).collect();
        assert_eq!(bounded.len(), 1);
        assert_eq!(bounded[0].len(), 2);
    }

    // Independent oracle for small spaces: every bitmask subset of the
    // grid, filtered directly, in lexicographic order of index sequences.
    fn brute_force_families(s: &SearchSpace) -> Vec<Vec<Event>> {
        let grid = s.grid();
        assert!(grid.len() <= 16, "oracle is for tiny grids");
        let mut found = Vec::new();
        for mask in 1u32..(1 << grid.len()) {
            let subset: Vec<Event> = (0..grid.len())
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| grid[i].clone())
                .collect();
            if subset.len() > s.max_family_size {
                continue;
            }
            if s.require.contains(&Prefilter::Bounds)
                && !(subset.iter().any(|e| e.is_constant_zero())
                    && subset.iter().any(|e| e.is_constant_one()))
            {
                continue;
            }
            if s.require.contains(&Prefilter::ComplementClosed)
                && !subset.iter().all(|e| subset.contains(&e.complement()))
            {
                continue;
            }
            found.push(subset);
        }
        found.sort();
        found
    }

    #[test]
    fn enumeration_matches_the_brute_force_oracle() {
        // All subsets of the 9-event grid, under every prefilter mix.
        for require in [
            vec![],
            vec![Prefilter::Bounds],
            vec![Prefilter::ComplementClosed],
            vec![Prefilter::Bounds, Prefilter::ComplementClosed],
        ] {
            let s = space(2, 2, 5, &require);
            let expected = brute_force_families(&s);
            let enumerated: Vec<Vec<Event>> = enumerate_families(&s)
                .map(|f| f.events().to_vec())
                .collect();
            assert_eq!(enumerated, expected, "prefilters {require:?}");
        }
    }

    #[test]
    fn denominator_four_family_count_matches_the_hand_derivation() {
        // 25 grid events: 12 complement pairs plus the self-complementary
        // (1/2,1/2). Families are the bounds pair, k of the other 11 pairs
        // and optionally the fixed point, of size 2 + 2k + s <= 8:
        // C(11,0..3) + C(11,0..2) = 232 + 67 = 299.
        let s = space(2, 4, 8, &[Prefilter::Bounds, Prefilter::ComplementClosed]);
        assert_eq!(enumerate_families(&s).count(), 299);
    }

    #[test]
    fn closed_families_match_a_brute_force_subset_scan() {
        // Independent oracle: filter all nonempty subsets of the 3-point
        // grid over one state directly.
        let s = space(1, 2, 3, &[Prefilter::Bounds, Prefilter::ComplementClosed]);
        let grid = s.grid();
        assert_eq!(grid.len(), 3);
        let mut expected = Vec::new();
        for mask in 1u32..(1 << grid.len()) {
            let subset: Vec<Event> = (0..grid.len())
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| grid[i].clone())
                .collect();
            if subset.len() > 3 {
                continue;
            }
            let has_bounds = subset.iter().any(|e| e.is_constant_zero())
                && subset.iter().any(|e| e.is_constant_one());
            let closed = subset.iter().all(|e| subset.contains(&e.complement()));
            if has_bounds && closed {
                expected.push(subset);
            }
        }
        expected.sort();
        assert_eq!(expected.len(), 2);

        let enumerated: Vec<Vec<Event>> = enumerate_families(&s)
            .map(|f| f.events().to_vec())
            .collect();
        assert_eq!(enumerated, expected);
    }

    #[test]
    fn sweep_space_contains_the_second_example() {
        let s = space(2, 2, 6, &[Prefilter::Bounds, Prefilter::ComplementClosed]);
        let families: Vec<_> = enumerate_families(&s).collect();
        // Bounds pair + any of three complement pairs + optional
        // self-complementary (1/2,1/2), capped at six events: 11 families.
        assert_eq!(families.len(), 11);
        assert!(families.iter().any(|f| *f == example2()));
        let mut rendered: Vec<String> = families.iter().map(|f| format!("{f:?}")).collect();
        rendered.dedup();
        assert_eq!(rendered.len(), 11, "exactly once each");
        let event_lists: Vec<_> = families.iter().map(|f| f.events().to_vec()).collect();
        assert!(
            event_lists.windows(2).all(|w| w[0] < w[1]),
            "canonical order"
        );
    }

    #[test]
    fn sweep_space_violations_are_exactly_the_known_structured_divergence() {
        let s = space(2, 2, 6, &[Prefilter::Bounds, Prefilter::ComplementClosed]);
        let report = verify_theorems(&s, None);
        assert_eq!(report.families_examined, 11);
        assert!(report.exhausted);
        assert!(!report.inconclusive);

        // Every law except the structured half of the faithful-algebra
        // characterization holds everywhere; that half fails on exactly the
        // three families with a nonzero element below its own complement.
        let (structured, rest): (Vec<_>, Vec<_>) = report
            .violations
            .iter()
            .partition(|v| v.law == LawId::StructuredFaithfulAlgebra);
        assert!(rest.is_empty(), "{rest:?}");
        let offenders: Vec<String> = structured
            .iter()
            .map(|v| format!("{:?}", v.family))
            .collect();
        assert_eq!(
            offenders,
            [
                "{(0,0), (0,1/2), (0,1), (1,0), (1,1/2), (1,1)}",
                "{(0,0), (0,1), (1/2,0), (1/2,1), (1,0), (1,1)}",
                "{(0,0), (1/2,1/2), (1,1)}",
            ]
        );
        // Replay one offender end to end: structured holds via (7), the
        // algebra condition (5) fails on the repeated self-orthogonal
        // element, and 1 does not commute with it.
        let h = ev("1/2,1/2");
        let f = structured[2].family.clone();
        assert!(classify::classify(&f).flags.structured);
        assert!(h.orthogonal_to(&h));
        assert!(!f.is_disjoint(&h, &h));
        assert!(!classify::is_algebra(&f));
        assert!(!subalg::commutes(&f, &ev("1,1"), &h));

        let specific = report
            .class_counts
            .iter()
            .find(|c| c.flag == "specific")
            .unwrap();
        assert!(specific.count >= 2);
    }

    #[test]
    fn witness_mining_finds_the_class_separations() {
        let s = space(2, 2, 6, &[Prefilter::Bounds, Prefilter::ComplementClosed]);
        let report = find_witness(
            &s,
            &[ClassFlag::WeaklyStructured],
            &[ClassFlag::VeeSpecific],
            None,
        );
        let witness = report.witness_family().expect("separation exists");
        let flags = classify::classify(witness).flags;
        assert!(flags.weakly_structured && !flags.vee_specific);
        assert_eq!(&report.witnesses[0].flags, &flags);

        // A Boolean algebra is a lattice by definition, so this separation
        // is empty in every space.
        let none = find_witness(
            &s,
            &[ClassFlag::BooleanAlgebra],
            &[ClassFlag::Lattice],
            None,
        );
        assert!(none.witnesses.is_empty());
        assert!(none.exhausted);
    }

    #[test]
    fn vee_specific_without_structured_exists_at_denominator_two() {
        // The strictness of structured ⊂ ∨-specific already shows up on
        // this grid: the disjoint pairs of the witness all involve 0, so
        // (3) and (6) hold, while the chain ((0,1/2),(0,1/2),0) breaks (7)
        // with sum (0,1) outside the family.
        let s = space(2, 2, 6, &[Prefilter::Bounds, Prefilter::ComplementClosed]);
        let report = find_witness(
            &s,
            &[ClassFlag::VeeSpecific],
            &[ClassFlag::Structured],
            None,
        );
        let witness = report.witness_family().expect("separation exists");
        assert_eq!(
            format!("{witness:?}"),
            "{(0,0), (0,1/2), (1/2,1/2), (1,1/2), (1,1)}"
        );
        let p = ev("0,1/2");
        assert!(p.orthogonal_to(&p));
        assert!(witness.is_disjoint(&p, &ev("0,0")));
        let sum = crate::event::pointwise_sum([&p, &p, &ev("0,0")]);
        assert_eq!(witness.member_index_of_vector(&sum), None);
    }

    #[test]
    fn budget_zero_is_inconclusive() {
        let s = space(1, 1, 2, &[]);
        let report = verify_theorems(&s, Some(0));
        assert_eq!(report.families_examined, 0);
        assert!(report.inconclusive);
        assert!(!report.exhausted);

        let all = verify_theorems(&s, Some(3));
        assert!(all.exhausted);
        assert!(!all.inconclusive);
    }

    #[test]
    fn results_are_identical_across_worker_counts() {
        let s = space(2, 2, 6, &[Prefilter::Bounds, Prefilter::ComplementClosed]);
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| verify_theorems(&s, None));
        let several = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| verify_theorems(&s, None));
        assert_eq!(
            serde_json::to_string(&single).unwrap(),
            serde_json::to_string(&several).unwrap()
        );
    }

    #[test]
    fn witness_stream_stops_at_the_first_match() {
        let s = space(2, 2, 6, &[Prefilter::Bounds, Prefilter::ComplementClosed]);
        let all: Vec<_> = enumerate_families(&s).collect();
        let report = find_witness(
            &s,
            &[ClassFlag::WeaklyStructured],
            &[ClassFlag::VeeSpecific],
            None,
        );
        let position = all
            .iter()
            .position(|f| f == report.witness_family().unwrap())
            .unwrap();
        assert_eq!(report.families_examined, position + 1);
        // No earlier family matches.
        for earlier in &all[..position] {
            let flags = classify::classify(earlier).flags;
            assert!(!(flags.weakly_structured && !flags.vee_specific));
        }
    }

    #[test]
    fn enumerated_algebras_are_orthomodular() {
        // Cross-check of the classical claim on the denominator-1/2 grids.
        let mut algebras = 0usize;
        for denominator in [1, 2] {
            let s = space(
                2,
                denominator,
                6,
                &[Prefilter::Bounds, Prefilter::ComplementClosed],
            );
            for family in enumerate_families(&s) {
                let flags = classify::classify(&family).flags;
                if flags.algebra_of_s_probabilities {
                    algebras += 1;
                    assert!(flags.orthomodular, "{family:?}");
                }
            }
        }
        assert!(algebras >= 2);
    }

    #[test]
    fn structured_two_valued_families_tie_commutation_to_products() {
        // For structured {0,1}-valued families, a pair commutes exactly
        // when its pointwise product is a member, and a member product is
        // the infimum.
        let mut families = 0usize;
        for num_states in 1..=3usize {
            let s = space(
                num_states,
                1,
                8,
                &[Prefilter::Bounds, Prefilter::ComplementClosed],
            );
            for family in enumerate_families(&s) {
                if !classify::classify(&family).flags.structured {
                    continue;
                }
                families += 1;
                for p in family.events() {
                    for q in family.events() {
                        let product = p.pointwise_product(q);
                        let member = family.contains(&product);
                        assert_eq!(
                            subalg::commutes(&family, p, q),
                            member,
                            "{p} {q} in {family:?}"
                        );
                        if member {
                            assert_eq!(family.infimum_in(p, q), Some(&product));
                        }
                    }
                }
            }
        }
        assert!(families >= 3);
    }

    #[test]
    fn denominator_four_sweep_has_only_the_documented_divergence() {
        let s = space(2, 4, 8, &[Prefilter::Bounds, Prefilter::ComplementClosed]);
        let report = verify_theorems(&s, None);
        assert!(report.exhausted);
        let unexpected: Vec<_> = report
            .violations
            .iter()
            .filter(|v| v.law != LawId::StructuredFaithfulAlgebra)
            .collect();
        assert!(unexpected.is_empty(), "{unexpected:?}");
    }

    #[test]
    fn three_state_sweep_has_only_the_documented_divergence() {
        let s = space(3, 2, 8, &[Prefilter::Bounds, Prefilter::ComplementClosed]);
        let report = verify_theorems(&s, None);
        assert!(report.exhausted);
        let unexpected: Vec<_> = report
            .violations
            .iter()
            .filter(|v| v.law != LawId::StructuredFaithfulAlgebra)
            .collect();
        assert!(unexpected.is_empty(), "{unexpected:?}");
    }

    #[test]
    fn enumerated_specific_families_are_boolean_posets() {
        let s = space(2, 2, 6, &[Prefilter::Bounds, Prefilter::ComplementClosed]);
        for family in enumerate_families(&s) {
            let flags = classify::classify(&family).flags;
            if flags.specific {
                assert!(flags.boolean_poset, "{family:?}");
            }
        }
    }

    #[test]
    fn denominator_four_space_contains_the_first_example_shape() {
        let s = space(2, 4, 8, &[Prefilter::Bounds, Prefilter::ComplementClosed]);
        let report = find_witness(
            &s,
            &[ClassFlag::Specific],
            &[ClassFlag::WeaklyStructured],
            None,
        );
        let witness = report.witness_family().expect("specific non-C4 witness");
        let flags = classify::classify(witness).flags;
        assert!(flags.specific && !flags.weakly_structured);
        // (1/2,1/4) or a relabeling appears in any such witness at this
        // size; the first one found is frozen here for regression.
        assert!(witness.contains(&ev("0,1/2")) || witness.contains(&ev("1/4,1/2")));
    }
}
