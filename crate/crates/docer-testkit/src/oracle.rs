//! Brute-force reference answers, kept independent of the library under
//! test: counting checks every start position with a sliding window, and
//! the history oracles materialize the whole first-parent chain and scan
//! blob contents rather than comparing object ids with early exit.

use std::path::Path;

fn is_ident_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

/// Naive character-scan count of identifier-boundary occurrences.
pub fn naive_count(text: &str, anchor: &str) -> u64 {
    let text = text.as_bytes();
    let pat = anchor.as_bytes();
    if pat.is_empty() || text.len() < pat.len() {
        return 0;
    }
    let mut count = 0;
    for start in 0..=text.len() - pat.len() {
        if &text[start..start + pat.len()] != pat {
            continue;
        }
        let left_ok = start == 0 || !is_ident_byte(text[start - 1]);
        let end = start + pat.len();
        let right_ok = end == text.len() || !is_ident_byte(text[end]);
        if left_ok && right_ok {
            count += 1;
        }
    }
    count
}

/// The first-parent chain from `start` (a hash) down to the root, tip first.
pub fn first_parent_chain(repo_path: &Path, start: &str) -> Vec<ChainEntry> {
    let repo = git2::Repository::open(repo_path).expect("oracle: open repo");
    let mut chain = Vec::new();
    let mut oid = git2::Oid::from_str(start).expect("oracle: parse hash");
    loop {
        let commit = repo.find_commit(oid).expect("oracle: find commit");
        chain.push(ChainEntry {
            hash: oid.to_string(),
            committer_timestamp: commit.time().seconds(),
        });
        match commit.parent_id(0) {
            Ok(parent) => oid = parent,
            Err(_) => return chain,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainEntry {
    pub hash: String,
    pub committer_timestamp: i64,
}

fn blob_bytes(repo: &git2::Repository, hash: &str, path: &str) -> Option<Vec<u8>> {
    let oid = git2::Oid::from_str(hash).expect("oracle: parse hash");
    let commit = repo.find_commit(oid).expect("oracle: find commit");
    let tree = commit.tree().expect("oracle: tree");
    let entry = tree.get_path(Path::new(path)).ok()?;
    let blob = repo.find_blob(entry.id()).ok()?;
    Some(blob.content().to_vec())
}

/// Hash of the newest first-parent ancestor of `upto` (inclusive) whose
/// content at `path` differs from its parent's, by comparing full blob
/// bytes over the whole chain.
pub fn last_modifying_oracle(repo_path: &Path, upto: &str, path: &str) -> Option<String> {
    let repo = git2::Repository::open(repo_path).expect("oracle: open repo");
    let chain = first_parent_chain(repo_path, upto);
    blob_bytes(&repo, upto, path)?;
    for pair in chain.windows(2) {
        let newer = blob_bytes(&repo, &pair[0].hash, path);
        let older = blob_bytes(&repo, &pair[1].hash, path);
        if newer != older {
            return Some(pair[0].hash.clone());
        }
    }
    Some(chain.last().expect("nonempty chain").hash.clone())
}

/// Hash of the commit `commit_at_or_before` must return for `timestamp`,
/// by linear scan of the chain from HEAD.
pub fn at_or_before_oracle(repo_path: &Path, head: &str, timestamp: i64) -> String {
    let chain = first_parent_chain(repo_path, head);
    let mut best: Option<&ChainEntry> = None;
    for entry in &chain {
        if entry.committer_timestamp <= timestamp {
            let better = match best {
                Some(b) => entry.committer_timestamp > b.committer_timestamp,
                None => true,
            };
            if better {
                best = Some(entry);
            }
        }
    }
    best.unwrap_or_else(|| chain.last().expect("nonempty chain"))
        .hash
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naive_count_basics() {
        assert_eq!(naive_count("add add", "add"), 2);
        assert_eq!(naive_count("radded", "add"), 0);
        assert_eq!(naive_count("a.a.a", "a.a"), 2);
        assert_eq!(naive_count("", "x"), 0);
    }
}
