//! Command implementations behind the `numev` binary.
//!
//! Every command reads one document, runs the requested analysis and prints
//! a report to stdout, either as human-readable text or as the structured
//! JSON form (`--format json`). The JSON form is deterministic byte for
//! byte for a given input, including under parallel search partitioning,
//! and is the surface golden tests should pin.
//!
//! Exit codes: 0 success, 2 parse/validation error, 3 precondition
//! violation, 4 internal-consistency alarm (law violation or dual-route
//! disagreement), 5 search budget exhausted (inconclusive).

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::classify::{self, ClassFlag, ClassificationReport};
use crate::doc::{parse_any, DocError, Document, FamilyDocument, PosetDocument};
use crate::event::Event;
use crate::family::EventFamily;
use crate::poset::AbstractBoundedPoset;
use crate::search::{self, Prefilter, SearchReport, SearchSpace};
use crate::states::{self, SpecificStateReport, StateTable, StatesError};
use crate::subalg::{self, SubsetSelection};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;
pub const EXIT_INCONCLUSIVE: i32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

/// What a command run produced; the caller prints and exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmdOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CmdOutcome {
    fn ok(stdout: String) -> CmdOutcome {
        CmdOutcome {
            exit_code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(exit_code: i32, message: String) -> CmdOutcome {
        CmdOutcome {
            exit_code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

fn render<T: Serialize>(value: &T, text: String, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => text,
        OutputFormat::Json => {
            let mut json = serde_json::to_string_pretty(value).expect("report serialization");
            json.push('\n');
            json
        }
    }
}

fn read_file(path: &Path) -> Result<String, CmdOutcome> {
    std::fs::read_to_string(path)
        .map_err(|e| CmdOutcome::fail(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn load_family(path: &Path) -> Result<(FamilyDocument, EventFamily), CmdOutcome> {
    let text = read_file(path)?;
    let doc = FamilyDocument::parse(&text)
        .map_err(|e| CmdOutcome::fail(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let family = doc
        .to_family()
        .map_err(|e| CmdOutcome::fail(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    Ok((doc, family))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifyOutput {
    pub family: FamilyDocument,
    pub report: ClassificationReport,
}

/// `numev classify <file>`: full classification of a family document.
pub fn cmd_classify(path: &Path, format: OutputFormat) -> CmdOutcome {
    let (_, family) = match load_family(path) {
        Ok(v) => v,
        Err(outcome) => return outcome,
    };
    let report = classify::classify(&family);
    let alarm = !report.internal_errors.is_empty();
    let output = ClassifyOutput {
        family: FamilyDocument::from_family(&family),
        report,
    };
    let mut text = format!(
        "family over {} states with {} events\n",
        family.arity(),
        family.len()
    );
    text.push_str(&output.report.render_text());
    let mut outcome = CmdOutcome::ok(render(&output, text, format));
    if alarm {
        outcome.exit_code = EXIT_VIOLATION;
    }
    outcome
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatesMode {
    /// Evaluate the family's canonical states.
    CheckCanonical,
    /// Evaluate the state table bundled in a poset document.
    VerifyTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateVerdict {
    pub state: String,
    pub specific: SpecificStateReport,
    pub is_specific_state: bool,
    /// S5 verdict; absent when some disjoint pair has no join, in which
    /// case `pseudostate_blocked_by` names the first such pair.
    pub pseudostate: Option<bool>,
    pub pseudostate_blocked_by: Option<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatesOutput {
    pub source: String,
    pub states: Vec<StateVerdict>,
    pub full: bool,
    pub full_witness: Option<(String, String)>,
    pub uniform: bool,
    pub uniform_witness: Option<(String, String)>,
}

fn state_verdicts(poset: &AbstractBoundedPoset, table: &StateTable, source: &str) -> StatesOutput {
    let mut verdicts = Vec::with_capacity(table.len());
    for s in 0..table.len() {
        let specific = states::check_specific_state(poset, table.row(s));
        let (pseudostate, blocked) = match states::check_pseudostate(poset, table.row(s)) {
            Ok(report) => (Some(report.holds()), None),
            Err(StatesError::MissingJoin { p, q }) => (None, Some((p, q))),
            Err(_) => (None, None),
        };
        verdicts.push(StateVerdict {
            state: table.state_names()[s].clone(),
            is_specific_state: specific.holds(),
            specific,
            pseudostate,
            pseudostate_blocked_by: blocked,
        });
    }
    let full = states::is_full(poset, table);
    let uniform = states::is_uniform(poset, table);
    StatesOutput {
        source: source.to_owned(),
        states: verdicts,
        full: full.is_ok(),
        full_witness: full.err(),
        uniform: uniform.is_ok(),
        uniform_witness: uniform.err(),
    }
}

fn render_states_text(output: &StatesOutput) -> String {
    let mut text = format!("states ({})\n", output.source);
    for v in &output.states {
        let _ = writeln!(
            text,
            "  {}: specific state: {}",
            v.state,
            if v.is_specific_state { "yes" } else { "no" }
        );
        let axioms = [
            ("bounds (S1)", &v.specific.bounds),
            ("involution (S2)", &v.specific.involution),
            ("monotone (S3)", &v.specific.monotone),
            ("additivity (S4)", &v.specific.additivity_witness),
        ];
        for (name, verdict) in axioms {
            if verdict.holds {
                let _ = writeln!(text, "    {name}: yes");
            } else {
                let witness = verdict
                    .witness
                    .as_ref()
                    .map(|w| w.join(", "))
                    .unwrap_or_default();
                let _ = writeln!(text, "    {name}: no ({witness})");
            }
        }
        match (&v.pseudostate, &v.pseudostate_blocked_by) {
            (Some(yes), _) => {
                let _ = writeln!(
                    text,
                    "    pseudostate (S5): {}",
                    if *yes { "yes" } else { "no" }
                );
            }
            (None, Some((p, q))) => {
                let _ = writeln!(
                    text,
                    "    pseudostate (S5): not applicable (join of {p}, {q} missing)"
                );
            }
            (None, None) => {}
        }
    }
    let _ = writeln!(
        text,
        "full: {}{}",
        if output.full { "yes" } else { "no" },
        output
            .full_witness
            .as_ref()
            .map(|(p, q)| format!(" (fails at {p}, {q})"))
            .unwrap_or_default()
    );
    let _ = writeln!(
        text,
        "uniform: {}{}",
        if output.uniform { "yes" } else { "no" },
        output
            .uniform_witness
            .as_ref()
            .map(|(p, q)| format!(" (no shared witness for {p}, {q})"))
            .unwrap_or_default()
    );
    text
}

/// `numev states <file> --check-canonical|--verify-table`.
pub fn cmd_states(path: &Path, mode: StatesMode, format: OutputFormat) -> CmdOutcome {
    match mode {
        StatesMode::CheckCanonical => {
            let (_, family) = match load_family(path) {
                Ok(v) => v,
                Err(outcome) => return outcome,
            };
            let poset = match AbstractBoundedPoset::from_family(&family) {
                Ok(p) => p,
                Err(e) => return CmdOutcome::fail(EXIT_PRECONDITION, e.to_string()),
            };
            let table = states::canonical_states(&family);
            let output = state_verdicts(&poset, &table, "canonical");
            let text = render_states_text(&output);
            CmdOutcome::ok(render(&output, text, format))
        }
        StatesMode::VerifyTable => {
            let text = match read_file(path) {
                Ok(t) => t,
                Err(outcome) => return outcome,
            };
            let doc = match PosetDocument::parse(&text) {
                Ok(d) => d,
                Err(e) => return CmdOutcome::fail(EXIT_PARSE, format!("{}: {e}", path.display())),
            };
            let poset = match doc.to_poset() {
                Ok(p) => p,
                Err(e) => return CmdOutcome::fail(EXIT_PARSE, format!("{}: {e}", path.display())),
            };
            let table = match doc.state_table(&poset) {
                Ok(Some(t)) => t,
                Ok(None) => {
                    return CmdOutcome::fail(
                        EXIT_PRECONDITION,
                        "poset document carries no states to verify".to_owned(),
                    )
                }
                Err(e) => return CmdOutcome::fail(EXIT_PARSE, format!("{}: {e}", path.display())),
            };
            let output = state_verdicts(&poset, &table, "table");
            let text = render_states_text(&output);
            CmdOutcome::ok(render(&output, text, format))
        }
    }
}

/// Subset scans beyond this size would make the exhaustive subalgebra
/// search run for hours; refuse instead.
const ORACLE_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubalgebraOutput {
    pub chosen: Vec<Event>,
    pub criterion: bool,
    pub subalgebra: Option<FamilyDocument>,
    pub agreement: bool,
}

/// `numev subalgebra <file> --elements i,j,...`: product criterion plus
/// exhaustive oracle, with their agreement.
pub fn cmd_subalgebra(path: &Path, elements: &[usize], format: OutputFormat) -> CmdOutcome {
    let (_, family) = match load_family(path) {
        Ok(v) => v,
        Err(outcome) => return outcome,
    };
    if family.len() > ORACLE_LIMIT {
        return CmdOutcome::fail(
            EXIT_PRECONDITION,
            format!(
                "family has {} events; the exhaustive subalgebra search is capped at {ORACLE_LIMIT}",
                family.len()
            ),
        );
    }
    let selection = match SubsetSelection::new(family, elements.to_vec()) {
        Ok(s) => s,
        Err(e) => return CmdOutcome::fail(EXIT_PRECONDITION, e.to_string()),
    };
    let criterion = match subalg::product_criterion(&selection) {
        Ok(v) => v,
        Err(e) => return CmdOutcome::fail(EXIT_PRECONDITION, e.to_string()),
    };
    let found = subalg::boolean_subalgebra_oracle(&selection);
    let agreement = criterion == found.is_some();
    let output = SubalgebraOutput {
        chosen: selection.chosen_events().into_iter().cloned().collect(),
        criterion,
        subalgebra: found.as_ref().map(FamilyDocument::from_family),
        agreement,
    };
    let mut text = format!(
        "chosen: {}\n",
        output
            .chosen
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    let _ = writeln!(
        text,
        "product criterion: {}",
        if criterion { "yes" } else { "no" }
    );
    match &found {
        Some(sub) => {
            let _ = writeln!(
                text,
                "oracle: minimal Boolean subalgebra with {} events: {:?}",
                sub.len(),
                sub
            );
        }
        None => {
            let _ = writeln!(text, "oracle: no Boolean subalgebra contains the selection");
        }
    }
    let _ = writeln!(
        text,
        "agreement: {}",
        if agreement {
            "yes"
        } else {
            "NO (internal error)"
        }
    );
    let mut outcome = CmdOutcome::ok(render(&output, text, format));
    if !agreement {
        outcome.exit_code = EXIT_VIOLATION;
    }
    outcome
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepresentOutput {
    pub mode: String,
    pub found: bool,
    pub carrier: Option<FamilyDocument>,
    pub element_map: Vec<(String, Event)>,
    pub detail: Option<String>,
}

fn render_represent_text(output: &RepresentOutput) -> String {
    let mut text = format!("representation ({})\n", output.mode);
    if !output.found {
        let _ = writeln!(
            text,
            "no representation{}",
            output
                .detail
                .as_ref()
                .map(|d| format!(": {d}"))
                .unwrap_or_default()
        );
        return text;
    }
    for (label, event) in &output.element_map {
        let _ = writeln!(text, "  {label} -> {event}");
    }
    if let Some(carrier) = &output.carrier {
        let _ = writeln!(
            text,
            "carrier over states {}: {} events",
            carrier.states.join(", "),
            carrier.events.len()
        );
    }
    text
}

/// `numev represent <file>`: for a poset document with states, rebuild the
/// event family; for a family document, search for a two-valued
/// representation.
pub fn cmd_represent(path: &Path, format: OutputFormat) -> CmdOutcome {
    let text = match read_file(path) {
        Ok(t) => t,
        Err(outcome) => return outcome,
    };
    let document = match parse_any(&text) {
        Ok(d) => d,
        Err(e @ DocError::UnknownShape) => {
            return CmdOutcome::fail(EXIT_PARSE, format!("{}: {e}", path.display()))
        }
        Err(e) => return CmdOutcome::fail(EXIT_PARSE, format!("{}: {e}", path.display())),
    };
    match document {
        Document::Family(doc) => {
            let family = match doc.to_family() {
                Ok(f) => f,
                Err(e) => return CmdOutcome::fail(EXIT_PARSE, format!("{}: {e}", path.display())),
            };
            let output = match states::two_valued_representation(&family) {
                Some(rep) => RepresentOutput {
                    mode: "two-valued".to_owned(),
                    found: true,
                    carrier: Some(FamilyDocument::from_family(&rep.carrier)),
                    element_map: rep.element_map,
                    detail: None,
                },
                None => RepresentOutput {
                    mode: "two-valued".to_owned(),
                    found: false,
                    carrier: None,
                    element_map: Vec::new(),
                    detail: Some(
                        "the two-valued specific states do not form a full set".to_owned(),
                    ),
                },
            };
            let text = render_represent_text(&output);
            CmdOutcome::ok(render(&output, text, format))
        }
        Document::Poset(doc) => {
            let poset = match doc.to_poset() {
                Ok(p) => p,
                Err(e) => return CmdOutcome::fail(EXIT_PARSE, format!("{}: {e}", path.display())),
            };
            let table = match doc.state_table(&poset) {
                Ok(Some(t)) => t,
                Ok(None) => return CmdOutcome::fail(
                    EXIT_PRECONDITION,
                    "poset document carries no states; representation needs a full uniform table"
                        .to_owned(),
                ),
                Err(e) => return CmdOutcome::fail(EXIT_PARSE, format!("{}: {e}", path.display())),
            };
            match states::build_representation(&poset, &table) {
                Ok(rep) => {
                    let output = RepresentOutput {
                        mode: "from-states".to_owned(),
                        found: true,
                        carrier: Some(FamilyDocument::from_family(&rep.carrier)),
                        element_map: rep.element_map,
                        detail: None,
                    };
                    let text = render_represent_text(&output);
                    CmdOutcome::ok(render(&output, text, format))
                }
                Err(e @ StatesError::Internal(_)) => {
                    CmdOutcome::fail(EXIT_VIOLATION, e.to_string())
                }
                Err(e) => CmdOutcome::fail(EXIT_PRECONDITION, e.to_string()),
            }
        }
    }
}

/// Arguments of the search command.
#[derive(Debug, Clone)]
pub struct SearchArgs {
    pub num_states: usize,
    pub denominator: u64,
    pub max_size: usize,
    pub require: Vec<Prefilter>,
    pub want: Vec<ClassFlag>,
    pub avoid: Vec<ClassFlag>,
    pub budget: Option<usize>,
}

fn render_search_text(report: &SearchReport) -> String {
    let mut text = format!(
        "search mode {} over {} states, denominator {}, size <= {}\n",
        report.mode,
        report.space.num_states,
        report.space.denominator,
        report.space.max_family_size
    );
    let _ = writeln!(text, "families examined: {}", report.families_examined);
    if report.inconclusive {
        let _ = writeln!(text, "INCONCLUSIVE: budget exhausted before the space");
    }
    if report.mode == "witness" {
        let _ = writeln!(
            text,
            "want: {}; avoid: {}",
            report.want.join(", "),
            report.avoid.join(", ")
        );
        match report.witnesses.first() {
            Some(w) => {
                let _ = writeln!(text, "witness: {:?}", w.family);
            }
            None => {
                let _ = writeln!(
                    text,
                    "witness: none{}",
                    if report.exhausted {
                        " (space exhausted)"
                    } else {
                        ""
                    }
                );
            }
        }
    }
    let _ = writeln!(text, "class counts:");
    for count in &report.class_counts {
        let _ = writeln!(text, "  {:<28} {}", count.flag, count.count);
    }
    if report.violations.is_empty() {
        if report.mode == "verify" {
            let _ = writeln!(text, "violations: none");
        }
    } else {
        let _ = writeln!(text, "violations ({}):", report.violations.len());
        for v in &report.violations {
            let _ = writeln!(text, "  {:?} on {:?}: {}", v.law, v.family, v.detail);
        }
    }
    text
}

/// Grids beyond this size make the subset enumeration astronomically
/// large even between emitted families; refuse rather than churn. 512
/// covers 3 states at denominator 4 and 2 states at denominator 20.
const GRID_LIMIT: u64 = 512;

/// `numev search ...`: law verification by default, witness mining when
/// --want/--avoid are given.
pub fn cmd_search(args: &SearchArgs, format: OutputFormat) -> CmdOutcome {
    if args.num_states == 0 {
        return CmdOutcome::fail(EXIT_PARSE, "--states must be at least 1".to_owned());
    }
    if args.denominator == 0 {
        return CmdOutcome::fail(EXIT_PARSE, "--denominator must be at least 1".to_owned());
    }
    if args.max_size < 2 {
        return CmdOutcome::fail(EXIT_PARSE, "--max-size must be at least 2".to_owned());
    }
    let grid_size = (args.denominator + 1).checked_pow(args.num_states as u32);
    match grid_size {
        Some(size) if size <= GRID_LIMIT => {}
        _ => {
            return CmdOutcome::fail(
                EXIT_PARSE,
                format!("grid of (denominator+1)^states events exceeds the supported {GRID_LIMIT}"),
            )
        }
    }
    let space = SearchSpace::new(
        args.num_states,
        args.denominator,
        args.max_size,
        args.require.clone(),
    );
    let report = if args.want.is_empty() && args.avoid.is_empty() {
        search::verify_theorems(&space, args.budget)
    } else {
        search::find_witness(&space, &args.want, &args.avoid, args.budget)
    };
    let text = render_search_text(&report);
    let mut outcome = CmdOutcome::ok(render(&report, text, format));
    if !report.violations.is_empty() {
        outcome.exit_code = EXIT_VIOLATION;
    } else if report.inconclusive {
        outcome.exit_code = EXIT_INCONCLUSIVE;
    }
    outcome
}
