//! Read-only access to git repositories.
//!
//! A [`RepoHandle`] never writes: it resolves revisions, lists and reads
//! blobs at a revision, and answers history queries. History walks follow
//! first-parent ancestry only, so merge side-branches are invisible and
//! results are deterministic. Renames are not followed; a renamed file
//! counts as created at the rename commit.
//!
//! `RepoHandle` is not `Sync` (libgit2 repositories are not). Concurrent
//! readers should each call [`RepoHandle::open`] on the same path; all
//! operations are deterministic for a fixed repository state, so every
//! handle observes identical results.

use std::fmt;

use crate::error::{Error, Result};

/// Full 40-character lowercase hexadecimal commit identifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RevisionId(String);

impl RevisionId {
    pub fn new(hash: impl Into<String>) -> Result<Self> {
        let hash = hash.into();
        let valid = hash.len() == 40
            && hash
                .bytes()
                .all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b));
        if valid {
            Ok(RevisionId(hash))
        } else {
            Err(Error::InvalidRevisionId(hash))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// 7-character abbreviation used in human-facing output.
    pub fn short(&self) -> &str {
        &self.0[..7]
    }
}

impl fmt::Display for RevisionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A resolved commit plus the metadata the pipeline needs from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommitInfo {
    pub id: RevisionId,
    /// Committer time, seconds since the Unix epoch.
    pub committer_timestamp: i64,
    /// First line of the commit message.
    pub subject: String,
}

/// A blob tracked at some revision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackedFile {
    /// Repository-relative, slash-separated, no leading slash.
    pub path: String,
    /// False iff a NUL byte occurs in the first 8000 content bytes.
    pub is_text: bool,
}

/// Result of a last-modifying-commit query.
///
/// `truncated` is set when a shallow clone cut the history off before the
/// modifying commit could be found; `commit` is then the oldest commit
/// still available and callers should surface a warning.
#[derive(Debug, Clone)]
pub struct LastModified {
    pub commit: CommitInfo,
    pub truncated: bool,
}

#[cfg(feature = "git")]
pub use imp::RepoHandle;

#[cfg(feature = "git")]
mod imp {
    use std::path::{Path, PathBuf};

    use super::{CommitInfo, LastModified, RevisionId, TrackedFile};
    use crate::error::{Error, Result};

    const BINARY_SNIFF_LEN: usize = 8000;

    /// Read-only handle to an on-disk repository (worktree or bare).
    pub struct RepoHandle {
        path: PathBuf,
        repo: git2::Repository,
    }

    impl RepoHandle {
        pub fn open(path: impl AsRef<Path>) -> Result<Self> {
            let path = path.as_ref();
            if !path.exists() {
                return Err(Error::Io(std::io::Error::new(
                    std::io::ErrorKind::NotFound,
                    format!("no such path: {}", path.display()),
                )));
            }
            match git2::Repository::open(path) {
                Ok(repo) => Ok(RepoHandle {
                    path: path.to_path_buf(),
                    repo,
                }),
                Err(_) => Err(Error::NotARepository(path.to_path_buf())),
            }
        }

        /// The path this handle was opened with. Workers that need their own
        /// handle reopen through this.
        pub fn path(&self) -> &Path {
            &self.path
        }

        /// Resolve a branch, tag, hash prefix, full hash, or "HEAD" to the
        /// commit it denotes right now.
        pub fn resolve_revision(&self, revspec: &str) -> Result<RevisionId> {
            let object = self.repo.revparse_single(revspec).map_err(|e| {
                if e.code() == git2::ErrorCode::Ambiguous {
                    Error::AmbiguousPrefix(revspec.to_string())
                } else {
                    Error::RevisionUnknown(revspec.to_string())
                }
            })?;
            let commit = object
                .peel_to_commit()
                .map_err(|_| Error::RevisionUnknown(revspec.to_string()))?;
            RevisionId::new(commit.id().to_string())
        }

        /// All blobs in the commit's tree, sorted ascending by path bytes.
        pub fn list_files(&self, rev: &RevisionId) -> Result<Vec<TrackedFile>> {
            let commit = self.find_commit(rev)?;
            let tree = commit.tree()?;
            let mut files = Vec::new();
            let mut walk_err = None;
            tree.walk(git2::TreeWalkMode::PreOrder, |dir, entry| {
                if entry.kind() != Some(git2::ObjectType::Blob) {
                    return git2::TreeWalkResult::Ok;
                }
                let name = match entry.name() {
                    Some(n) => n,
                    None => return git2::TreeWalkResult::Ok,
                };
                let path = format!("{dir}{name}");
                match self.repo.find_blob(entry.id()) {
                    Ok(blob) => {
                        let head = &blob.content()[..blob.content().len().min(BINARY_SNIFF_LEN)];
                        files.push(TrackedFile {
                            path,
                            is_text: !head.contains(&0),
                        });
                        git2::TreeWalkResult::Ok
                    }
                    Err(e) => {
                        walk_err = Some(e);
                        git2::TreeWalkResult::Abort
                    }
                }
            })?;
            if let Some(e) = walk_err {
                return Err(e.into());
            }
            files.sort_unstable_by(|a, b| a.path.as_bytes().cmp(b.path.as_bytes()));
            Ok(files)
        }

        /// Exact blob bytes at `path` in `rev`.
        pub fn read_file(&self, rev: &RevisionId, path: &str) -> Result<Vec<u8>> {
            let commit = self.find_commit(rev)?;
            let tree = commit.tree()?;
            let entry = tree.get_path(Path::new(path)).map_err(|_| Error::PathNotTracked {
                rev: rev.to_string(),
                path: path.to_string(),
            })?;
            let blob = self
                .repo
                .find_blob(entry.id())
                .map_err(|_| Error::PathNotTracked {
                    rev: rev.to_string(),
                    path: path.to_string(),
                })?;
            Ok(blob.content().to_vec())
        }

        /// Most recent commit in the first-parent ancestry of `upto`
        /// (inclusive) at which the blob at `path` differs from the first
        /// parent's, or is newly present.
        pub fn last_modifying_commit(
            &self,
            upto: &RevisionId,
            path: &str,
        ) -> Result<LastModified> {
            let mut commit = self.find_commit(upto)?;
            if blob_id(&commit, path)?.is_none() {
                return Err(Error::PathNotTracked {
                    rev: upto.to_string(),
                    path: path.to_string(),
                });
            }
            loop {
                if commit.parent_count() == 0 {
                    // Root commit: the path was introduced here.
                    return Ok(LastModified {
                        commit: commit_info(&commit)?,
                        truncated: false,
                    });
                }
                let parent = match commit.parent(0) {
                    Ok(p) => p,
                    // Shallow clone boundary: the parent is recorded but its
                    // object was never fetched. Degrade to the oldest commit
                    // we can still see.
                    Err(_) => {
                        return Ok(LastModified {
                            commit: commit_info(&commit)?,
                            truncated: true,
                        })
                    }
                };
                if blob_id(&commit, path)? != blob_id(&parent, path)? {
                    return Ok(LastModified {
                        commit: commit_info(&commit)?,
                        truncated: false,
                    });
                }
                commit = parent;
            }
        }

        /// Among first-parent ancestors of HEAD with committer timestamp at
        /// or before `timestamp`, the one with the greatest timestamp; the
        /// descendant wins ties. Falls back to the root commit when every
        /// timestamp is later.
        pub fn commit_at_or_before(&self, timestamp: i64) -> Result<CommitInfo> {
            let head = self
                .repo
                .head()
                .and_then(|h| h.peel_to_commit())
                .map_err(|_| Error::EmptyRepository)?;
            let mut best: Option<CommitInfo> = None;
            let mut commit = head;
            loop {
                let info = commit_info(&commit)?;
                if info.committer_timestamp <= timestamp {
                    // Strict comparison keeps the first (most descendant) on ties.
                    match &best {
                        Some(b) if info.committer_timestamp <= b.committer_timestamp => {}
                        _ => best = Some(info.clone()),
                    }
                }
                match commit.parent(0).ok() {
                    Some(p) => commit = p,
                    None => return Ok(best.unwrap_or(info)),
                }
            }
        }

        fn find_commit(&self, rev: &RevisionId) -> Result<git2::Commit<'_>> {
            let oid = git2::Oid::from_str(rev.as_str())
                .map_err(|_| Error::RevisionUnknown(rev.to_string()))?;
            self.repo
                .find_commit(oid)
                .map_err(|_| Error::RevisionUnknown(rev.to_string()))
        }
    }

    fn commit_info(commit: &git2::Commit<'_>) -> Result<CommitInfo> {
        Ok(CommitInfo {
            id: RevisionId::new(commit.id().to_string())?,
            committer_timestamp: commit.time().seconds(),
            subject: commit.summary().unwrap_or_default().to_string(),
        })
    }

    fn blob_id(commit: &git2::Commit<'_>, path: &str) -> Result<Option<git2::Oid>> {
        let tree = commit.tree()?;
        match tree.get_path(Path::new(path)) {
            Ok(entry) => Ok(Some(entry.id())),
            Err(e) if e.code() == git2::ErrorCode::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn revision_id_validates_shape() {
        assert!(RevisionId::new("0123456789abcdef0123456789abcdef01234567").is_ok());
        assert!(RevisionId::new("0123456789ABCDEF0123456789abcdef01234567").is_err());
        assert!(RevisionId::new("0123456789abcdef").is_err());
        assert!(RevisionId::new("g123456789abcdef0123456789abcdef01234567").is_err());
    }

    #[test]
    fn short_is_seven_chars() {
        let id = RevisionId::new("0123456789abcdef0123456789abcdef01234567").unwrap();
        assert_eq!(id.short(), "0123456");
    }
}
