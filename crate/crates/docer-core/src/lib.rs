//! Detects outdated code element references in repository documentation.
//!
//! Documentation files (READMEs and wiki pages) mention identifiers from the
//! source tree: function names, types, dotted paths. When the source moves on
//! and the docs do not, those references go stale. This crate extracts such
//! references from Markdown, resolves the revision at which each document was
//! last modified, and compares how often each reference occurs in the source
//! tree at that snapshot versus the current revision. A reference that was
//! present at the snapshot but is gone now is flagged as outdated.
//!
//! The pipeline, in order:
//!
//! 1. [`docs`] finds documentation files and their snapshot revisions,
//! 2. [`extract`] segments Markdown and pulls out code element references,
//! 3. [`matching`] counts identifier-boundary occurrences and classifies,
//! 4. [`report`] applies the exclude list and renders the output files.
//!
//! [`repo`] provides read-only git access underneath, and [`scan`] ties the
//! stages together. The `git` feature (on by default) gates everything that
//! touches an actual repository; without it the crate is a pure text library
//! usable from wasm.

pub mod docs;
pub mod error;
pub mod extract;
pub mod matching;
pub mod report;
pub mod repo;
#[cfg(feature = "git")]
pub mod scan;

pub use error::{Error, Result};
pub use repo::{CommitInfo, RevisionId};
