//! Command-line front-end, file formats and corpora for `pretab-core`.

pub mod commands;
pub mod config;
pub mod corpus;
pub mod format;
pub mod gen;
