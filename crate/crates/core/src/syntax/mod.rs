//! Concrete syntax.
//!
//! Two input formats share one lexer:
//!
//! * the core term format (`.nick`), one soup per input:
//!
//!   ```text
//!   soup     := item ("|" item)*
//!   item     := [INT "*"] molecule | "new" IDENT item | "(" [soup] ")"
//!   molecule := "<" "t^" IDENT ">" | "<" IDENT "t^" ">" | seg (":" seg)*
//!   seg      := "t^" | "[" segbody "]"
//!   segbody  := IDENT | "t^" IDENT | IDENT "t^" | IDENT IDENT | "t^"
//!   ```
//!
//!   `:` is a nick, a bare `t^` is an open bottom toehold and `//` starts a
//!   line comment;
//! * the script format (`.dsd`), see [`script`].
//!
//! Soups print back in the core format, or as ASCII pictograms (see
//! [`pictogram`]).

mod lexer;
pub mod pictogram;
pub mod script;
mod term;

use thiserror::Error;

pub use lexer::Pos;
pub use script::{elaborate, parse_dsd_script, Elaborated, PlotSpec, ScriptProgram};
pub(crate) use term::{display_names, molecule_text};
pub use term::{parse_soup, print_soup};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("{pos}: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("{pos}: malformed strand: {msg}")]
    Shape { pos: Pos, msg: String },
    #[error("{pos}: duplicate definition `{name}`")]
    DuplicateDefinition { pos: Pos, name: String },
    #[error("{pos}: unknown directive `{name}`")]
    UnknownDirective { pos: Pos, name: String },
}

impl ParseError {
    pub(crate) fn syntax(pos: Pos, msg: impl Into<String>) -> Self {
        ParseError::Syntax {
            pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn shape(pos: Pos, msg: impl Into<String>) -> Self {
        ParseError::Shape {
            pos,
            msg: msg.into(),
        }
    }

    pub fn pos(&self) -> Pos {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::Shape { pos, .. }
            | ParseError::DuplicateDefinition { pos, .. }
            | ParseError::UnknownDirective { pos, .. } => *pos,
        }
    }
}

/// Print style for [`print_soup`].
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Style {
    #[default]
    Core,
    Pictogram,
}
