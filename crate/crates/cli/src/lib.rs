//! IO companion for the solver library: text formats for instances,
//! solutions, tree layouts and generator inputs, plus machine-readable run
//! reports.

pub mod format;
pub mod report;
