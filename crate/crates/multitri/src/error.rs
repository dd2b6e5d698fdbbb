use std::time::{Duration, Instant};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("resource limit exceeded: {0}")]
    Limit(String),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Param(_) | Error::Invalid(_) => 2,
            Error::Limit(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Param(msg.into()))
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}

/// Guards for enumerative work. Unlimited by default.
#[derive(Debug, Clone, Copy, Default)]
pub struct Limits {
    pub max_nodes: Option<usize>,
    pub deadline: Option<Instant>,
}

impl Limits {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn new(max_nodes: Option<usize>, max_seconds: Option<f64>) -> Self {
        Limits {
            max_nodes,
            deadline: max_seconds.map(|s| Instant::now() + Duration::from_secs_f64(s)),
        }
    }

    pub fn check(&self, nodes: usize) -> Result<()> {
        if let Some(max) = self.max_nodes {
            if nodes > max {
                return Err(Error::Limit(format!("more than {max} nodes")));
            }
        }
        if let Some(d) = self.deadline {
            if Instant::now() > d {
                return Err(Error::Limit("time budget exhausted".into()));
            }
        }
        Ok(())
    }
}
