use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("element is not in h^1: {0}")]
    NotInH1(String),
    #[error("element is not in h^0: {0}")]
    NotInH0(String),
    #[error("index is not admissible: {0}")]
    NotAdmissible(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole encountered: {0}")]
    Pole(String),
    #[error("series diverges: {0}")]
    Divergent(String),
    #[error("failed to converge within cutoff ceiling (last estimate {last})")]
    Convergence { last: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
