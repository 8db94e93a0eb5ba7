//! `convention-search` subcommand.

use serde::Serialize;
use tidlab_core::graded::{evaluate_convention, search_conventions, ConventionResult, ConventionSearchReport, SearchSettings};

use crate::config::UsageError;
use crate::report::SCHEMA;
use crate::verify::load_convention;

#[derive(Debug, Clone, Serialize)]
pub struct SearchOutput {
    pub schema: &'static str,
    pub command: &'static str,
    #[serde(flatten)]
    pub result: SearchResult,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum SearchResult {
    Search(ConventionSearchReport),
    /// A single given convention, evaluated on the search's verification instances.
    Forced(ConventionResult),
}

pub fn settings(tolerance: f64) -> SearchSettings {
    SearchSettings {
        tolerance,
        ..Default::default()
    }
}

/// With `forced`, evaluates that convention instead of searching: `"class-representatives"`
/// selects the negative control, anything else is read as a descriptor path.
pub fn run_search(forced: Option<&str>, tolerance: f64) -> Result<SearchOutput, UsageError> {
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(UsageError("--tol must be a positive number".into()));
    }
    let s = settings(tolerance);
    let result = match forced {
        Some(src) => {
            let conv = if src == "class-representatives" {
                tidlab_core::graded::ChainConvention::class_representatives()
            } else {
                load_convention(&src.parse()?)?
            };
            SearchResult::Forced(
                evaluate_convention(&conv, &s.verify_dims, &s.verify_seeds).map_err(|e| UsageError(e.to_string()))?,
            )
        }
        None => SearchResult::Search(search_conventions(&s).map_err(|e| UsageError(e.to_string()))?),
    };
    let passed = match &result {
        SearchResult::Search(r) => r.selected.is_some(),
        SearchResult::Forced(r) => r.cyclic16 <= tolerance && r.identity18 <= tolerance,
    };
    Ok(SearchOutput {
        schema: SCHEMA,
        command: "convention-search",
        result,
        passed,
    })
}

impl SearchOutput {
    pub fn text(&self) -> String {
        let row = |r: &ConventionResult| {
            format!("  cyclic {:.3e}  five-argument {:.3e}  {}\n", r.cyclic16, r.identity18, r.convention)
        };
        match &self.result {
            SearchResult::Search(r) => {
                let mut out = format!(
                    "{} linear schemes per type, {} candidates per type, {} combinations\n{} pass the cyclic screen, {} survive both identities:\n",
                    r.linear_diagrams_per_type,
                    r.candidates_per_type,
                    r.combinations,
                    r.cyclic16_survivors,
                    r.survivors.len()
                );
                r.survivors.iter().for_each(|s| out.push_str(&row(s)));
                out.push_str("negative control (one scheme of each linear class):\n");
                out.push_str(&row(&r.negative_control));
                match &r.selected {
                    Some(c) => out.push_str(&format!("selected: {c}\n")),
                    None => out.push_str("no surviving convention\n"),
                }
                out
            }
            SearchResult::Forced(r) => {
                format!("{}\n{}", if self.passed { "PASS" } else { "FAIL" }, row(r))
            }
        }
    }

    pub fn selected_descriptor(&self) -> Option<String> {
        match &self.result {
            SearchResult::Search(r) => r.selected.as_ref().map(|c| c.to_json() + "\n"),
            SearchResult::Forced(r) => Some(r.convention.to_json() + "\n"),
        }
    }
}
