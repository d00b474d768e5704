//! Session files: a small declarative language for rings, towers and
//! modules, plus the commands that run computations on them and report.

mod ast;
mod eval;
mod parse;
mod run;

pub use ast::{
    Command, CommandKind, Expr, ExprKind, FieldDecl, ModuleDecl, ModuleRef, SessionModel, Span, TowerDecl, VarDecl,
};
pub use eval::{build_workspace, Scope, Value, Workspace};
pub use parse::{parse_command_line, parse_expression, parse_session};
pub use run::{run_command, run_session, Report, RunOptions, SessionOutput, Status, Table, VERSION};

#[cfg(test)]
mod tests;
