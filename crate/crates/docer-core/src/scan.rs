//! The full scan pipeline: discover docs, extract references, count, and
//! assemble the report.
//!
//! Counting is the only parallel stage. Source file contents are read once
//! per revision on the calling thread (libgit2 handles are not `Sync`), then
//! anchors are counted across files on a pool of `workers` threads. Totals
//! are sums, so the result is independent of scheduling and worker count.

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use crate::docs::{discover_docs, DocFile};
use crate::error::Result;
use crate::extract::extract_references;
use crate::matching::{build_source_set, classify, count_in_text, ReferenceVerdict};
use crate::repo::{RepoHandle, RevisionId};
use crate::report::{apply_exclusions, load_exclude_list, ExcludeList, ScanReport};

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub repo_path: PathBuf,
    pub wiki_path: Option<PathBuf>,
    /// Revision under evaluation, typically a pull request head. Defaults
    /// to "HEAD".
    pub current_revspec: String,
    /// Read exclusions from this file instead of the tracked exclude file.
    pub exclude_file: Option<PathBuf>,
    /// Counting threads, at least 1.
    pub workers: usize,
    pub repo_slug: Option<String>,
    pub run_id: Option<String>,
}

impl ScanOptions {
    pub fn new(repo_path: impl Into<PathBuf>) -> Self {
        ScanOptions {
            repo_path: repo_path.into(),
            wiki_path: None,
            current_revspec: "HEAD".to_string(),
            exclude_file: None,
            workers: 1,
            repo_slug: None,
            run_id: None,
        }
    }
}

/// Run a complete scan and return the assembled report, rows sorted and
/// exclusions applied. Writing files is the caller's business.
pub fn run_scan(opts: &ScanOptions) -> Result<ScanReport> {
    let main = RepoHandle::open(&opts.repo_path)?;
    let current = main.resolve_revision(&opts.current_revspec)?;
    let wiki = match &opts.wiki_path {
        Some(path) => Some(RepoHandle::open(path)?),
        None => None,
    };

    let docs = discover_docs(&main, &current, wiki.as_ref())?;
    let mut warnings: Vec<String> = docs
        .iter()
        .filter(|d| d.history_truncated)
        .map(|d| {
            format!(
                "history truncated (shallow clone?): snapshot for {} falls back to {}",
                d.display_path(),
                d.snapshot.short()
            )
        })
        .collect();

    // Extract references per document, remembering each doc's snapshot.
    let mut extracted = Vec::new();
    for doc in &docs {
        let text = read_doc(&main, wiki.as_ref(), doc)?;
        let refs = extract_references(&doc.display_path(), &text);
        extracted.push((doc.snapshot.clone(), refs));
    }

    // One source-set read per distinct revision, then one parallel counting
    // pass per revision over the anchors that need it.
    let mut anchors_by_rev: BTreeMap<RevisionId, Vec<String>> = BTreeMap::new();
    for (snapshot, refs) in &extracted {
        for r in refs {
            anchors_by_rev
                .entry(snapshot.clone())
                .or_default()
                .push(r.anchor.clone());
            anchors_by_rev
                .entry(current.clone())
                .or_default()
                .push(r.anchor.clone());
        }
    }
    anchors_by_rev.entry(current.clone()).or_default();

    let mut counts: HashMap<(RevisionId, String), u64> = HashMap::new();
    for (rev, mut anchors) in anchors_by_rev {
        anchors.sort_unstable();
        anchors.dedup();
        let source = build_source_set(&main, &rev)?;
        let texts: Vec<String> = source
            .files
            .iter()
            .map(|path| {
                main.read_file(&rev, path)
                    .map(|bytes| String::from_utf8_lossy(&bytes).into_owned())
            })
            .collect::<Result<_>>()?;
        for (anchor, count) in count_anchors(&texts, &anchors, opts.workers) {
            counts.insert((rev.clone(), anchor), count);
        }
    }

    let mut rows: Vec<ReferenceVerdict> = Vec::new();
    for (snapshot, refs) in extracted {
        for reference in refs {
            let snapshot_count = counts[&(snapshot.clone(), reference.anchor.clone())];
            let current_count = counts[&(current.clone(), reference.anchor.clone())];
            rows.push(ReferenceVerdict {
                snapshot: snapshot.clone(),
                current: current.clone(),
                snapshot_count,
                current_count,
                classification: classify(snapshot_count, current_count),
                reference,
            });
        }
    }

    let excludes = match &opts.exclude_file {
        Some(path) => ExcludeList::parse(&std::fs::read_to_string(path)?),
        None => load_exclude_list(&main, &current)?,
    };
    let rows = apply_exclusions(rows, &excludes);

    warnings.sort();
    let mut report = ScanReport {
        repo_slug: opts.repo_slug.clone(),
        run_id: opts.run_id.clone(),
        current,
        rows,
        warnings,
    };
    report.sort_rows();
    Ok(report)
}

fn read_doc(main: &RepoHandle, wiki: Option<&RepoHandle>, doc: &DocFile) -> Result<String> {
    let bytes = match doc.origin {
        crate::docs::DocOrigin::Main => main.read_file(&doc.snapshot, &doc.path)?,
        crate::docs::DocOrigin::Wiki => {
            let wiki = wiki.expect("wiki doc discovered without wiki handle");
            let head = wiki.resolve_revision("HEAD")?;
            wiki.read_file(&head, &doc.path)?
        }
    };
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

/// Sum per-anchor counts over `texts` on a dedicated pool. Summation is
/// associative and commutative, so any schedule yields the same totals.
fn count_anchors(texts: &[String], anchors: &[String], workers: usize) -> Vec<(String, u64)> {
    use rayon::prelude::*;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("build counting pool");
    pool.install(|| {
        anchors
            .par_iter()
            .map(|anchor| {
                let total = texts
                    .par_iter()
                    .map(|text| count_in_text(text, anchor))
                    .sum();
                (anchor.clone(), total)
            })
            .collect()
    })
}
