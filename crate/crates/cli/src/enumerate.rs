//! `enumerate` subcommand.

use std::collections::BTreeMap;

use serde::Serialize;
use tidlab_core::diagram::parse_shape_list;
use tidlab_core::{classify_by_output, enumerate_diagrams, ContractionDiagram, EnumOptions, TensorShape};

use crate::config::UsageError;
use crate::report::SCHEMA;

#[derive(Debug, Clone, Default)]
pub struct EnumerateArgs {
    pub shapes: String,
    pub no_self: bool,
    pub out: Option<String>,
    pub labeled_operands: bool,
    pub allow_disconnected: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumerateReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub shapes: Vec<TensorShape>,
    pub options: EnumOptions,
    pub count: usize,
    pub histogram: BTreeMap<String, usize>,
    pub diagrams: Vec<ContractionDiagram>,
}

/// Without `--no-self` every composition is listed with labeled operands;
/// `--no-self` switches to connected pictures with identical operands merged.
pub fn options_for(args: &EnumerateArgs) -> Result<EnumOptions, UsageError> {
    let mut o = if args.no_self { EnumOptions::graded() } else { EnumOptions::binary() };
    if args.labeled_operands {
        o.quotient_by_operand_symmetry = false;
    }
    if args.allow_disconnected {
        o.require_connected = false;
    }
    if let Some(s) = &args.out {
        o.required_output_shape = Some(s.parse().map_err(|e| UsageError(format!("bad --out shape {s:?}: {e}")))?);
    }
    Ok(o)
}

pub fn run_enumerate(args: &EnumerateArgs) -> Result<EnumerateReport, UsageError> {
    let shapes = parse_shape_list(&args.shapes).map_err(|e| UsageError(format!("bad shape list {:?}: {e}", args.shapes)))?;
    let options = options_for(args)?;
    let diagrams = enumerate_diagrams(&shapes, &options);
    let histogram = classify_by_output(&diagrams).into_iter().map(|(s, n)| (s.to_string(), n)).collect();
    Ok(EnumerateReport {
        schema: SCHEMA,
        command: "enumerate",
        count: diagrams.len(),
        shapes,
        options,
        histogram,
        diagrams,
    })
}

impl EnumerateReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        for d in &self.diagrams {
            out.push_str(&format!("{d}\n"));
        }
        let hist: Vec<String> = self.histogram.iter().map(|(s, n)| format!("{s}: {n}")).collect();
        out.push_str(&format!("count: {}\nby output: {}\n", self.count, hist.join(", ")));
        out
    }
}
