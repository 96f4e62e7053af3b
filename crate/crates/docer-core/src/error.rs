use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("not a git repository: {0}")]
    NotARepository(PathBuf),

    #[error("unknown revision `{0}`")]
    RevisionUnknown(String),

    #[error("ambiguous revision prefix `{0}`")]
    AmbiguousPrefix(String),

    #[error("path `{path}` is not tracked at {rev}")]
    PathNotTracked { rev: String, path: String },

    #[error("repository has no commits")]
    EmptyRepository,

    #[error("invalid revision id `{0}`: expected 40 lowercase hex characters")]
    InvalidRevisionId(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[cfg(feature = "git")]
    #[error(transparent)]
    Git(#[from] git2::Error),
}
