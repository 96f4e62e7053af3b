//! Documentation discovery and snapshot resolution.
//!
//! Main-repository documentation is any README (case-insensitive, with no
//! extension or .md/.markdown/.txt) at any depth; wiki documentation is any
//! .md/.markdown page. A main doc's snapshot is the commit that last
//! modified it. A wiki page lives in a different repository, so its edit is
//! mapped onto the main repository by committer timestamp: the snapshot is
//! the latest main commit at or before the edit, falling back to the main
//! root commit.

use crate::repo::{CommitInfo, RevisionId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DocOrigin {
    Main,
    Wiki,
}

/// A discovered documentation file with its resolved snapshot revision.
///
/// `snapshot` is always a main-repository revision, whatever the origin.
#[derive(Debug, Clone)]
pub struct DocFile {
    /// Path relative to the file's own repository.
    pub path: String,
    pub origin: DocOrigin,
    /// Last modifying commit in the file's own repository's history.
    pub last_modified: CommitInfo,
    /// Main-repository revision to count snapshot occurrences at.
    pub snapshot: RevisionId,
    /// True when a shallow clone prevented finding the real last-modifying
    /// commit and the oldest visible commit was used instead.
    pub history_truncated: bool,
}

impl DocFile {
    /// Path as shown in reports; wiki pages are prefixed to disambiguate
    /// them from main-repository files.
    pub fn display_path(&self) -> String {
        match self.origin {
            DocOrigin::Main => self.path.clone(),
            DocOrigin::Wiki => format!("wiki/{}", self.path),
        }
    }
}

/// Documentation-file predicate, per origin.
pub fn is_documentation_path(path: &str, origin: DocOrigin) -> bool {
    let file_name = path.rsplit('/').next().unwrap_or(path);
    let (stem, extension) = match file_name.rsplit_once('.') {
        Some((stem, ext)) => (stem, Some(ext)),
        None => (file_name, None),
    };
    match origin {
        DocOrigin::Main => {
            let ext_ok = match extension {
                None => true,
                Some(ext) => {
                    ext.eq_ignore_ascii_case("md")
                        || ext.eq_ignore_ascii_case("markdown")
                        || ext.eq_ignore_ascii_case("txt")
                }
            };
            ext_ok && stem.eq_ignore_ascii_case("readme")
        }
        DocOrigin::Wiki => match extension {
            Some(ext) => ext.eq_ignore_ascii_case("md") || ext.eq_ignore_ascii_case("markdown"),
            None => false,
        },
    }
}

#[cfg(feature = "git")]
pub use discover::discover_docs;

#[cfg(feature = "git")]
mod discover {
    use super::*;
    use crate::error::Result;
    use crate::repo::RepoHandle;

    /// Find documentation in the main repository at `current`, plus the
    /// wiki's HEAD when a wiki checkout is given. Main docs come first,
    /// then wiki docs, each group path-sorted.
    pub fn discover_docs(
        main: &RepoHandle,
        current: &RevisionId,
        wiki: Option<&RepoHandle>,
    ) -> Result<Vec<DocFile>> {
        let mut docs = Vec::new();

        for file in main.list_files(current)? {
            if !file.is_text || !is_documentation_path(&file.path, DocOrigin::Main) {
                continue;
            }
            let modified = main.last_modifying_commit(current, &file.path)?;
            docs.push(DocFile {
                path: file.path,
                origin: DocOrigin::Main,
                snapshot: modified.commit.id.clone(),
                last_modified: modified.commit,
                history_truncated: modified.truncated,
            });
        }

        if let Some(wiki) = wiki {
            let wiki_head = wiki.resolve_revision("HEAD")?;
            for file in wiki.list_files(&wiki_head)? {
                if !file.is_text || !is_documentation_path(&file.path, DocOrigin::Wiki) {
                    continue;
                }
                let modified = wiki.last_modifying_commit(&wiki_head, &file.path)?;
                let snapshot = main.commit_at_or_before(modified.commit.committer_timestamp)?;
                docs.push(DocFile {
                    path: file.path,
                    origin: DocOrigin::Wiki,
                    snapshot: snapshot.id,
                    last_modified: modified.commit,
                    history_truncated: modified.truncated,
                });
            }
        }
        Ok(docs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn readme_predicate() {
        assert!(is_documentation_path("README.md", DocOrigin::Main));
        assert!(is_documentation_path("docs/readme.markdown", DocOrigin::Main));
        assert!(is_documentation_path("README", DocOrigin::Main));
        assert!(is_documentation_path("ReadMe.TXT", DocOrigin::Main));
        assert!(!is_documentation_path("src/main.py", DocOrigin::Main));
        assert!(!is_documentation_path("README.rst", DocOrigin::Main));
        assert!(!is_documentation_path("guide.md", DocOrigin::Main));
        assert!(!is_documentation_path("READMES.md", DocOrigin::Main));
    }

    #[test]
    fn wiki_predicate() {
        assert!(is_documentation_path("Home.md", DocOrigin::Wiki));
        assert!(is_documentation_path("deep/Page.Markdown", DocOrigin::Wiki));
        assert!(!is_documentation_path("Home.txt", DocOrigin::Wiki));
        assert!(!is_documentation_path("Home", DocOrigin::Wiki));
    }
}
