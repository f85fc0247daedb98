//! A small imperative string language and its analyzer.

pub mod analyzer;
pub mod ast;
pub mod concrete;
pub mod parser;
pub mod report;

use std::collections::BTreeSet;

use thiserror::Error;

pub use analyzer::{analyze_program, AbstractState, AnalysisError, AnalysisReport, Options, Verdict};
pub use ast::Program;
pub use parser::{parse_program, ParseError};
pub use report::{render_report, Format};

use crate::config::{ConfigError, PropertyConfig};
use crate::object::Ctx;
use crate::word::Alphabet;

#[derive(Debug, Error)]
pub enum SetupError {
    #[error("letter {0:?} is used but missing from the declared alphabet")]
    MissingLetter(char),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// Literal and configured letters plus one letter used by neither.
pub fn default_alphabet(p: &Program, cfg: &PropertyConfig) -> Alphabet {
    let mut used: BTreeSet<char> = p.literal_letters().into_iter().collect();
    used.extend(cfg.letters());
    let fresh = ('a'..='z').chain('A'..='Z').chain('0'..='9').find(|c| !used.contains(c));
    Alphabet::new(used.into_iter().chain(fresh))
}

/// Session context for `p`; an explicit alphabet must cover every used letter.
pub fn session_ctx(p: &Program, cfg: &PropertyConfig, sigma: Option<Alphabet>) -> Result<Ctx, SetupError> {
    let sigma = match sigma {
        None => default_alphabet(p, cfg),
        Some(s) => {
            let used = p.literal_letters().into_iter().chain(cfg.letters());
            if let Some(c) = used.into_iter().find(|&c| !s.contains(c)) {
                return Err(SetupError::MissingLetter(c));
            }
            s
        }
    };
    let props = cfg.morphisms(&sigma)?.into_iter().map(|(_, m)| m).collect();
    Ok(Ctx::new(sigma, props))
}
