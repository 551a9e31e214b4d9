//! Error-to-exit-code mapping shared by the subcommands.

use pbtangle::bracket::BracketError;
use pbtangle::invariant::InvariantError;
use pbtangle::synthesis::SynthesisError;

pub struct CliError {
    pub code: u8,
    pub message: String,
}

pub const EXIT_PARSE: u8 = 1;
pub const EXIT_GUARD: u8 = 2;
pub const EXIT_COHERENCE: u8 = 3;

pub fn parse_error(message: impl Into<String>) -> CliError {
    CliError { code: EXIT_PARSE, message: message.into() }
}

impl From<BracketError> for CliError {
    fn from(e: BracketError) -> CliError {
        let code = match &e {
            BracketError::TooManyCrossings(..) => EXIT_GUARD,
            BracketError::Incoherent(_) => EXIT_COHERENCE,
            _ => EXIT_PARSE,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> CliError {
        let code = match &e {
            InvariantError::Bracket(b) => return CliError::from(b.clone()),
            InvariantError::TooManyHoles(..) => EXIT_GUARD,
            InvariantError::PhaseIncoherent { .. } => EXIT_COHERENCE,
            _ => EXIT_PARSE,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<SynthesisError> for CliError {
    fn from(e: SynthesisError) -> CliError {
        let code = match &e {
            SynthesisError::TargetTooLarge(..) => EXIT_GUARD,
            SynthesisError::Invariant(i) => return CliError::from(i.clone()),
            SynthesisError::Elaborate(_) => EXIT_PARSE,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<pbtangle::diagram::ParseError> for CliError {
    fn from(e: pbtangle::diagram::ParseError) -> CliError {
        parse_error(e.to_string())
    }
}

impl From<pbtangle::diagram::ElabError> for CliError {
    fn from(e: pbtangle::diagram::ElabError) -> CliError {
        parse_error(e.to_string())
    }
}

impl From<pbtangle::diagram::RawError> for CliError {
    fn from(e: pbtangle::diagram::RawError) -> CliError {
        parse_error(e.to_string())
    }
}

impl From<pbtangle::diagram::DiagramError> for CliError {
    fn from(e: pbtangle::diagram::DiagramError) -> CliError {
        parse_error(e.to_string())
    }
}

impl From<pbtangle::algebra::AlgebraError> for CliError {
    fn from(e: pbtangle::algebra::AlgebraError) -> CliError {
        use pbtangle::algebra::AlgebraError;
        use pbtangle::combinatorics::CombinatoricsError;
        let code = match &e {
            AlgebraError::Combinatorics(CombinatoricsError::ProductTooLarge(..)) => EXIT_GUARD,
            _ => EXIT_PARSE,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        parse_error(e.to_string())
    }
}
