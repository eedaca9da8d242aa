//! Abelian subalgebras of Lie color algebras `gl^Φ` over prime fields: block
//! families of maximal dimension, similarity reductions, the minimal faithful
//! dimension of abelian color algebras, and randomized cross-checks.

pub mod glcolor;
pub mod grading;
pub mod json;
pub mod linalg;
pub mod maximal;
pub mod musolve;
pub mod random;
pub mod reduce;
pub mod scalars;
pub mod verify;

use thiserror::Error;

/// Any error raised by the crate, with a stable machine-readable [`code`](Error::code).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Scalar(#[from] scalars::ScalarError),
    #[error(transparent)]
    Grading(#[from] grading::GradingError),
    #[error(transparent)]
    Gl(#[from] glcolor::GlError),
    #[error(transparent)]
    Reduce(#[from] reduce::ReduceError),
    #[error(transparent)]
    Maximal(#[from] maximal::MaximalError),
    #[error(transparent)]
    Musolve(#[from] musolve::MusolveError),
    #[error(transparent)]
    Appendix(#[from] verify::AppendixError),
}

// Variant name of a derived `Debug` rendering.
fn variant_name<T: std::fmt::Debug>(e: &T) -> String {
    let s = format!("{e:?}");
    s.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

impl Error {
    /// The innermost error variant, e.g. `AxiomViolation` or `NotAbelian`.
    pub fn code(&self) -> String {
        use maximal::MaximalError as M;
        use reduce::ReduceError as R;
        match self {
            Error::Parse(_) => "ParseError".into(),
            Error::Scalar(e) => variant_name(e),
            Error::Grading(e) => variant_name(e),
            Error::Gl(e) | Error::Reduce(R::Gl(e)) | Error::Maximal(M::Gl(e)) | Error::Maximal(M::Reduce(R::Gl(e))) => {
                variant_name(e)
            }
            Error::Appendix(verify::AppendixError::Gl(e)) => variant_name(e),
            Error::Reduce(e) | Error::Maximal(M::Reduce(e)) => variant_name(e),
            Error::Maximal(e) => variant_name(e),
            Error::Musolve(e) => variant_name(e),
            Error::Appendix(e) => variant_name(e),
        }
    }

    /// Malformed input or configuration, as opposed to a well-formed input the mathematics rejects.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Scalar(_))
            || matches!(
                self,
                Error::Grading(
                    grading::GradingError::BadGroup(_)
                        | grading::GradingError::BadElement(_)
                        | grading::GradingError::TableShape { .. }
                )
            )
            || matches!(
                self,
                Error::Gl(
                    glcolor::GlError::Shape { .. } | glcolor::GlError::GroupMismatch | glcolor::GlError::FieldMismatch
                )
            )
    }
}
