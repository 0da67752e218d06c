use std::fmt;

use conformal_hodge::Error;

/// A command failure, classified by process exit code.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable or malformed input, or configuration out of range (exit 2).
    Input(anyhow::Error),
    /// Non-convergence, instability or degeneracy during computation (exit 3).
    Numerical(anyhow::Error),
    /// The subcommand does not support the selected domain (exit 4).
    Incompatible(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Numerical(_) => 3,
            Failure::Incompatible(_) => 4,
        }
    }

    pub fn input(msg: impl fmt::Display) -> Self {
        Failure::Input(anyhow::anyhow!("{msg}"))
    }

    pub fn incompatible(command: &str, domain: &str) -> Self {
        Failure::Incompatible(format!("`{command}` does not support domain `{domain}`"))
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(e) => write!(f, "input error: {e:#}"),
            Failure::Numerical(e) => write!(f, "numerical failure: {e:#}"),
            Failure::Incompatible(m) => write!(f, "incompatible domain: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::IndexOutOfRange { .. }
            | Error::DuplicateTerm { .. }
            | Error::UnorderedTerms { .. }
            | Error::NotHolomorphic { .. }
            | Error::DegenerateMap { .. }
            | Error::BoundarySelfIntersection { .. }
            | Error::WeightVanishes { .. }
            | Error::InvalidConfig(_)
            | Error::Format(_) => Failure::Input(e.into()),
            Error::UnderResolved { .. }
            | Error::IllConditioned { .. }
            | Error::InversionFailed { .. }
            | Error::NotConverged { .. }
            | Error::Unstable { .. }
            | Error::EmbeddingDegenerate { .. } => Failure::Numerical(e.into()),
        }
    }
}

pub type CmdResult<T> = std::result::Result<T, Failure>;

/// Attaches context to I/O and parse errors, classifying them as input errors.
pub trait InputContext<T> {
    fn input_context(self, what: impl fmt::Display) -> CmdResult<T>;
}

impl<T, E: Into<anyhow::Error>> InputContext<T> for std::result::Result<T, E> {
    fn input_context(self, what: impl fmt::Display) -> CmdResult<T> {
        self.map_err(|e| Failure::Input(e.into().context(what.to_string())))
    }
}
