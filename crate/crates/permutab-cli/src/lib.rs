//! Library surface of the command-line front end: the JSON document
//! format, report rendering, and the command implementations, kept
//! separate from argument parsing so they can be tested directly.

pub mod commands;
pub mod format;
pub mod render;
