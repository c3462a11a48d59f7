//! File formats, command dispatch and report emission for `lieschemes`.

pub mod commands;
pub mod format;
pub mod report;
pub mod reproduce;

pub use commands::{dispatch, load, run, Cli, CliError, Command};
pub use format::{parse_algebra, parse_path, render_algebra, render_path, AlgebraFile, FormatError, ParamDecl, PathFile};
pub use report::{Check, Report};
