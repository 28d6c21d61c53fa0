//! Terms, formulas and the operations on them that every other module uses.

pub mod ast;
pub mod lexer;
pub mod occurrence;
pub mod parser;
pub mod render;
pub mod subst;

pub use ast::{Expr, ExprRef, Formula, Term};
pub use lexer::{tokenize, Token, TokenKind};
pub use occurrence::{
    at_path, find_occurrences, find_occurrences_by, replace_at, replace_paths, select, Occurrence, Path,
};
pub use parser::{parse_formula, parse_term};
pub use render::{ascii, ascii_term, pretty, pretty_expr, pretty_term};
pub use subst::{fresh_name, Subst};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SyntaxError {
    #[error("unexpected character '{ch}' at offset {offset}")]
    Lexical { offset: usize, ch: char },
    #[error("parse error at offset {offset}: expected {expected}, found {found}")]
    Parse {
        offset: usize,
        expected: String,
        found: String,
    },
    #[error("'{symbol}' expects {expected} argument(s), got {found} (offset {offset})")]
    Arity {
        symbol: String,
        expected: usize,
        found: usize,
        offset: usize,
    },
    #[error("undeclared symbol '{symbol}' applied at offset {offset}")]
    Undeclared { symbol: String, offset: usize },
    #[error("position {index} out of range: {count} occurrence(s)")]
    PositionOutOfRange { index: usize, count: usize },
    #[error("replacement must be of the same category (term or formula) as the target")]
    CategoryMismatch,
}
