//! Script front end for `divlift`: parsing, execution, output formatting and
//! the built-in acceptance suite.

pub mod corpus;
pub mod output;
pub mod run;
pub mod script;
pub mod suite;
