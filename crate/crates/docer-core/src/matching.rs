//! Occurrence counting in the source tree and reference classification.
//!
//! An occurrence of an anchor is a substring equal to it (dots literal)
//! whose neighbouring characters on both sides are absent or outside
//! `[A-Za-z0-9_]`, so `sub` never matches inside `subtract` but `add` does
//! match inside `arithmetic.add`. Classification compares snapshot and
//! current counts through zero/nonzero only; magnitude changes are reported
//! but never flagged.

use std::fmt;

use crate::docs::{is_documentation_path, DocOrigin};
use crate::extract::CodeElementReference;
use crate::repo::RevisionId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Outdated,
    Present,
    NeverFound,
    Excluded,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Outdated => "Outdated",
            Classification::Present => "Present",
            Classification::NeverFound => "NeverFound",
            Classification::Excluded => "Excluded",
        })
    }
}

/// The tracked text files that count as source at one revision.
#[derive(Debug, Clone)]
pub struct SourceSet {
    pub revision: RevisionId,
    /// Path-sorted; no documentation files, no Markdown, no exclude file.
    pub files: Vec<String>,
}

/// Per-reference counts at both revisions plus the verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceVerdict {
    pub reference: CodeElementReference,
    pub snapshot: RevisionId,
    pub current: RevisionId,
    pub snapshot_count: u64,
    pub current_count: u64,
    pub classification: Classification,
}

/// Whether a tracked path belongs to the source set: not a documentation
/// file, not Markdown anywhere in the tree, and not the exclude file.
pub fn is_source_path(path: &str) -> bool {
    if path == crate::report::EXCLUDE_FILE_NAME {
        return false;
    }
    if is_documentation_path(path, DocOrigin::Main) || is_documentation_path(path, DocOrigin::Wiki)
    {
        return false;
    }
    true
}

fn is_ident_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

/// Count identifier-boundary occurrences of `anchor` in `text`.
///
/// Every start position is considered, so dotted anchors may yield
/// overlapping matches (`a.a` occurs twice in `a.a.a`).
pub fn count_in_text(text: &str, anchor: &str) -> u64 {
    if anchor.is_empty() {
        return 0;
    }
    let bytes = text.as_bytes();
    let mut count = 0u64;
    let mut from = 0;
    while let Some(off) = text[from..].find(anchor) {
        let start = from + off;
        let end = start + anchor.len();
        let left_ok = start == 0 || !is_ident_byte(bytes[start - 1]);
        let right_ok = end == bytes.len() || !is_ident_byte(bytes[end]);
        if left_ok && right_ok {
            count += 1;
        }
        from = start + 1;
    }
    count
}

/// Classification table for non-excluded rows. Exclusion is applied later
/// by the reporting stage.
pub fn classify(snapshot_count: u64, current_count: u64) -> Classification {
    if current_count > 0 {
        Classification::Present
    } else if snapshot_count > 0 {
        Classification::Outdated
    } else {
        Classification::NeverFound
    }
}

/// Evaluate extracted references against already-read file contents.
///
/// `snapshot_texts` and `current_texts` are the decoded source files at the
/// two revisions. This is the counting core shared by the repository scan
/// and by in-memory callers.
pub fn evaluate_against_texts(
    refs: &[CodeElementReference],
    snapshot: &RevisionId,
    snapshot_texts: &[String],
    current: &RevisionId,
    current_texts: &[String],
) -> Vec<ReferenceVerdict> {
    refs.iter()
        .map(|r| {
            let snapshot_count: u64 = snapshot_texts
                .iter()
                .map(|t| count_in_text(t, &r.anchor))
                .sum();
            let current_count: u64 = current_texts
                .iter()
                .map(|t| count_in_text(t, &r.anchor))
                .sum();
            ReferenceVerdict {
                reference: r.clone(),
                snapshot: snapshot.clone(),
                current: current.clone(),
                snapshot_count,
                current_count,
                classification: classify(snapshot_count, current_count),
            }
        })
        .collect()
}

#[cfg(feature = "git")]
pub use repo_backed::{build_source_set, count_occurrences, evaluate_reference};

#[cfg(feature = "git")]
mod repo_backed {
    use super::*;
    use crate::error::Result;
    use crate::repo::RepoHandle;

    /// Tracked text files at `rev` filtered down to source, path-sorted.
    pub fn build_source_set(repo: &RepoHandle, rev: &RevisionId) -> Result<SourceSet> {
        let files = repo
            .list_files(rev)?
            .into_iter()
            .filter(|f| f.is_text && is_source_path(&f.path))
            .map(|f| f.path)
            .collect();
        Ok(SourceSet {
            revision: rev.clone(),
            files,
        })
    }

    /// Total occurrences of `anchor` across all files of `source`.
    pub fn count_occurrences(repo: &RepoHandle, source: &SourceSet, anchor: &str) -> Result<u64> {
        let mut total = 0;
        for path in &source.files {
            let bytes = repo.read_file(&source.revision, path)?;
            total += count_in_text(&String::from_utf8_lossy(&bytes), anchor);
        }
        Ok(total)
    }

    /// Full verdict for one reference: counts over the source sets at the
    /// snapshot and current revisions.
    pub fn evaluate_reference(
        reference: &CodeElementReference,
        repo: &RepoHandle,
        snapshot: &RevisionId,
        current: &RevisionId,
    ) -> Result<ReferenceVerdict> {
        let snap_set = build_source_set(repo, snapshot)?;
        let cur_set = build_source_set(repo, current)?;
        let snapshot_count = count_occurrences(repo, &snap_set, &reference.anchor)?;
        let current_count = count_occurrences(repo, &cur_set, &reference.anchor)?;
        Ok(ReferenceVerdict {
            reference: reference.clone(),
            snapshot: snapshot.clone(),
            current: current.clone(),
            snapshot_count,
            current_count,
            classification: classify(snapshot_count, current_count),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_counting() {
        let file = "def subtract(a, b):\n    return a - b\n";
        assert_eq!(count_in_text(file, "subtract"), 1);
        // Followed by 't' of "subtract": not a boundary.
        assert_eq!(count_in_text(file, "sub"), 0);
    }

    #[test]
    fn dots_are_literal_and_dotted_neighbours_count() {
        assert_eq!(count_in_text("x.y = x.y + 1", "x.y"), 2);
        assert_eq!(count_in_text("x.y = x.y + 1", "x"), 2);
        assert_eq!(count_in_text("print(arithmetic.add(1, 2))", "add"), 1);
    }

    #[test]
    fn overlapping_dotted_matches_all_count() {
        assert_eq!(count_in_text("a.a.a", "a.a"), 2);
    }

    #[test]
    fn non_ascii_neighbours_are_boundaries() {
        assert_eq!(count_in_text("émile add été", "add"), 1);
        assert_eq!(count_in_text("αadd", "add"), 1);
    }

    #[test]
    fn classification_table() {
        assert_eq!(classify(2, 0), Classification::Outdated);
        assert_eq!(classify(2, 1), Classification::Present);
        assert_eq!(classify(0, 3), Classification::Present);
        assert_eq!(classify(0, 0), Classification::NeverFound);
    }

    #[test]
    fn source_path_filter() {
        assert!(is_source_path("arithmetic.py"));
        assert!(is_source_path("src/lib.rs"));
        assert!(!is_source_path("README.md"));
        assert!(!is_source_path("README"));
        assert!(!is_source_path("docs/guide.md"));
        assert!(!is_source_path("notes.markdown"));
        assert!(!is_source_path(".DOCER_exclude"));
        // The exclude filter applies at the root only.
        assert!(is_source_path("sub/.DOCER_exclude"));
        assert!(is_source_path("README.rst"));
    }
}
