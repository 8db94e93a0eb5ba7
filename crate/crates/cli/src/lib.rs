//! Front end for the `tidlab` binary: verification suites, diagram enumeration
//! and the chain convention search, with text or JSON reports.

pub mod config;
pub mod enumerate;
pub mod report;
pub mod search;
pub mod verify;
