//! Test support: deterministic git fixtures and brute-force oracles.
//!
//! Fixtures are built straight into the object database (no worktree, no
//! index) with a fixed signature, so a given sequence of commits always
//! produces the same hashes. The oracles re-derive history answers by full
//! scans over commit contents, independently of how the library under test
//! walks history.

pub mod demo;
pub mod oracle;

use std::collections::BTreeMap;
use std::path::Path;

use tempfile::TempDir;

const FIXTURE_NAME: &str = "Fixture";
const FIXTURE_EMAIL: &str = "fixture@example.com";

/// A scratch git repository whose commits are created programmatically.
///
/// The full file set is tracked in memory; every commit snapshots it, so
/// callers state the files they add/update/remove and nothing else.
pub struct FixtureRepo {
    dir: TempDir,
    files: BTreeMap<String, Vec<u8>>,
    head: Option<git2::Oid>,
}

impl FixtureRepo {
    pub fn new() -> Self {
        let dir = TempDir::new().expect("create fixture dir");
        let mut opts = git2::RepositoryInitOptions::new();
        opts.initial_head("main");
        git2::Repository::init_opts(dir.path(), &opts).expect("init fixture repo");
        FixtureRepo {
            dir,
            files: BTreeMap::new(),
            head: None,
        }
    }

    pub fn path(&self) -> &Path {
        self.dir.path()
    }

    pub fn head_hash(&self) -> String {
        self.head.expect("fixture has no commits").to_string()
    }

    /// Commit with the given file updates at a fixed committer timestamp.
    /// Returns the commit hash.
    pub fn commit(&mut self, message: &str, timestamp: i64, updates: &[(&str, &str)]) -> String {
        self.commit_with(message, timestamp, updates, &[])
    }

    /// Commit file updates and removals.
    pub fn commit_with(
        &mut self,
        message: &str,
        timestamp: i64,
        updates: &[(&str, &str)],
        removals: &[&str],
    ) -> String {
        let updates: Vec<(&str, Vec<u8>)> = updates
            .iter()
            .map(|(p, c)| (*p, c.as_bytes().to_vec()))
            .collect();
        self.commit_bytes(message, timestamp, &updates, removals)
    }

    /// Like [`FixtureRepo::commit_with`] but with binary-capable contents.
    pub fn commit_bytes(
        &mut self,
        message: &str,
        timestamp: i64,
        updates: &[(&str, Vec<u8>)],
        removals: &[&str],
    ) -> String {
        for (path, content) in updates {
            self.files.insert((*path).to_string(), content.clone());
        }
        for path in removals {
            self.files.remove(*path);
        }

        let repo = self.open();
        let tree_id = write_tree(&repo, &self.files);
        let tree = repo.find_tree(tree_id).expect("find tree");
        let sig = git2::Signature::new(
            FIXTURE_NAME,
            FIXTURE_EMAIL,
            &git2::Time::new(timestamp, 0),
        )
        .expect("signature");
        let parents: Vec<git2::Commit<'_>> = self
            .head
            .map(|oid| repo.find_commit(oid).expect("find parent"))
            .into_iter()
            .collect();
        let parent_refs: Vec<&git2::Commit<'_>> = parents.iter().collect();
        let oid = repo
            .commit(Some("HEAD"), &sig, &sig, message, &tree, &parent_refs)
            .expect("create commit");
        self.head = Some(oid);
        oid.to_string()
    }

    /// Write a loose blob without attaching it to any tree. Useful for
    /// provoking ambiguous-prefix resolution.
    pub fn write_blob(&self, content: &[u8]) -> String {
        self.open().blob(content).expect("write blob").to_string()
    }

    fn open(&self) -> git2::Repository {
        git2::Repository::open(self.dir.path()).expect("reopen fixture repo")
    }
}

impl Default for FixtureRepo {
    fn default() -> Self {
        Self::new()
    }
}

/// Build nested trees for the full file map.
fn write_tree(repo: &git2::Repository, files: &BTreeMap<String, Vec<u8>>) -> git2::Oid {
    // Group current-level entries; recurse per directory.
    fn build(repo: &git2::Repository, entries: Vec<(String, &Vec<u8>)>) -> git2::Oid {
        let mut builder = repo.treebuilder(None).expect("treebuilder");
        let mut dirs: BTreeMap<String, Vec<(String, &Vec<u8>)>> = BTreeMap::new();
        for (path, content) in entries {
            match path.split_once('/') {
                None => {
                    let blob = repo.blob(content).expect("write blob");
                    builder
                        .insert(&path, blob, 0o100644)
                        .expect("insert blob entry");
                }
                Some((dir, rest)) => dirs
                    .entry(dir.to_string())
                    .or_default()
                    .push((rest.to_string(), content)),
            }
        }
        for (dir, children) in dirs {
            let sub = build(repo, children);
            builder.insert(&dir, sub, 0o040000).expect("insert subtree");
        }
        builder.write().expect("write tree")
    }
    build(
        repo,
        files.iter().map(|(p, c)| (p.clone(), c)).collect::<Vec<_>>(),
    )
}
