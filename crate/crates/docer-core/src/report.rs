//! Exclude-list handling, report assembly, and the emitted file formats.
//!
//! All four outputs derive from one [`ScanReport`]: `report.csv` holds every
//! verdict row, `summary.csv` and `summary.md` only the outdated ones, and
//! `comment.md` is the pull-request comment body (empty when there is
//! nothing to say, which tells the workflow to skip the comment). Identical
//! reports produce byte-identical files.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;
use crate::matching::{Classification, ReferenceVerdict};
use crate::repo::RevisionId;

/// Name of the exclude file at the repository root.
pub const EXCLUDE_FILE_NAME: &str = ".DOCER_exclude";

/// Code elements the scanner must ignore, one per line in the exclude file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExcludeList {
    entries: Vec<String>,
}

impl ExcludeList {
    /// Parse exclude-file content: lines are trimmed, empties dropped,
    /// duplicates dropped keeping first, order preserved.
    pub fn parse(text: &str) -> Self {
        let mut entries: Vec<String> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if !line.is_empty() && !entries.iter().any(|e| e == line) {
                entries.push(line.to_string());
            }
        }
        ExcludeList { entries }
    }

    pub fn entries(&self) -> &[String] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Exact, case-sensitive match; no globs.
    pub fn contains(&self, text: &str) -> bool {
        self.entries.iter().any(|e| e == text)
    }
}

/// Everything a single scan produced, in row order (doc_path, line, anchor).
#[derive(Debug, Clone)]
pub struct ScanReport {
    /// "owner/name", when known (CI).
    pub repo_slug: Option<String>,
    /// Workflow run id, when known (CI).
    pub run_id: Option<String>,
    pub current: RevisionId,
    pub rows: Vec<ReferenceVerdict>,
    pub warnings: Vec<String>,
}

impl ScanReport {
    pub fn sort_rows(&mut self) {
        self.rows.sort_by(|a, b| {
            (&a.reference.doc_path, a.reference.line, &a.reference.anchor).cmp(&(
                &b.reference.doc_path,
                b.reference.line,
                &b.reference.anchor,
            ))
        });
    }

    pub fn outdated_rows(&self) -> impl Iterator<Item = &ReferenceVerdict> {
        self.rows
            .iter()
            .filter(|r| r.classification == Classification::Outdated)
    }
}

/// Re-classify rows whose anchor or raw text exactly matches an exclude
/// entry. All other fields and the row order are unchanged.
pub fn apply_exclusions(mut rows: Vec<ReferenceVerdict>, excludes: &ExcludeList) -> Vec<ReferenceVerdict> {
    for row in &mut rows {
        if excludes.contains(&row.reference.anchor) || excludes.contains(&row.reference.raw) {
            row.classification = Classification::Excluded;
        }
    }
    rows
}

/// Full per-reference report, RFC 4180, UTF-8, LF line endings.
pub fn report_csv(report: &ScanReport) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record([
            "doc_path",
            "line",
            "raw",
            "anchor",
            "context",
            "recognizer",
            "snapshot_commit",
            "snapshot_count",
            "current_count",
            "classification",
        ])
        .expect("csv write to memory");
    for row in &report.rows {
        writer
            .write_record([
                row.reference.doc_path.as_str(),
                &row.reference.line.to_string(),
                row.reference.raw.as_str(),
                row.reference.anchor.as_str(),
                &row.reference.context.to_string(),
                &row.reference.recognizer.to_string(),
                row.snapshot.as_str(),
                &row.snapshot_count.to_string(),
                &row.current_count.to_string(),
                &row.classification.to_string(),
            ])
            .expect("csv write to memory");
    }
    finish_csv(writer)
}

/// Outdated rows only.
pub fn summary_csv(report: &ScanReport) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["doc_path", "anchor", "snapshot_commit"])
        .expect("csv write to memory");
    for row in report.outdated_rows() {
        writer
            .write_record([
                row.reference.doc_path.as_str(),
                row.reference.anchor.as_str(),
                row.snapshot.as_str(),
            ])
            .expect("csv write to memory");
    }
    finish_csv(writer)
}

fn finish_csv(writer: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(writer.into_inner().expect("csv flush")).expect("csv output is utf-8")
}

/// Markdown table of outdated references; heading only when there are none.
pub fn summary_md(report: &ScanReport) -> String {
    let mut out = String::from("## Potentially outdated references\n");
    let mut rows = report.outdated_rows().peekable();
    if rows.peek().is_none() {
        return out;
    }
    out.push('\n');
    out.push_str("| Documentation | Code element | Last seen in |\n");
    out.push_str("| --- | --- | --- |\n");
    for row in rows {
        writeln!(
            out,
            "| {} | `{}` | {} |",
            row.reference.doc_path,
            row.reference.anchor,
            row.snapshot.short()
        )
        .expect("write to string");
    }
    out
}

/// Pull-request comment body. Empty when there is nothing outdated, so the
/// workflow's "comment only if the report is nonempty" condition holds.
pub fn pr_comment(report: &ScanReport) -> String {
    if report.outdated_rows().next().is_none() {
        return String::new();
    }
    let mut out = summary_md(report);
    if let (Some(slug), Some(run_id)) = (&report.repo_slug, &report.run_id) {
        writeln!(
            out,
            "\nFull report: https://github.com/{slug}/actions/runs/{run_id}"
        )
        .expect("write to string");
    }
    out
}

/// Write `report.csv`, `summary.csv`, `summary.md` and `comment.md` into
/// `dir`. Each file is written to a temporary name and renamed so an
/// interrupted run never leaves a partial file.
pub fn write_outputs(report: &ScanReport, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    write_atomic(&dir.join("report.csv"), report_csv(report).as_bytes())?;
    write_atomic(&dir.join("summary.csv"), summary_csv(report).as_bytes())?;
    write_atomic(&dir.join("summary.md"), summary_md(report).as_bytes())?;
    write_atomic(&dir.join("comment.md"), pr_comment(report).as_bytes())?;
    Ok(())
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = Path::new(&tmp);
    std::fs::write(tmp, bytes)?;
    std::fs::rename(tmp, path)?;
    Ok(())
}

#[cfg(feature = "git")]
pub use exclude_from_repo::load_exclude_list;

#[cfg(feature = "git")]
mod exclude_from_repo {
    use super::*;
    use crate::error::Error;
    use crate::repo::RepoHandle;

    /// Read the exclude file at the root of `rev`; an absent file is an
    /// empty list.
    pub fn load_exclude_list(repo: &RepoHandle, rev: &RevisionId) -> Result<ExcludeList> {
        match repo.read_file(rev, EXCLUDE_FILE_NAME) {
            Ok(bytes) => Ok(ExcludeList::parse(&String::from_utf8_lossy(&bytes))),
            Err(Error::PathNotTracked { .. }) => Ok(ExcludeList::default()),
            Err(e) => Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::{CodeElementReference, Recognizer, SegmentKind};
    use crate::matching::classify;

    fn rev(byte: u8) -> RevisionId {
        RevisionId::new(String::from_utf8(vec![byte; 40]).unwrap()).unwrap()
    }

    fn verdict(doc: &str, anchor: &str, raw: &str, s: u64, c: u64) -> ReferenceVerdict {
        ReferenceVerdict {
            reference: CodeElementReference {
                raw: raw.to_string(),
                anchor: anchor.to_string(),
                doc_path: doc.to_string(),
                line: 1,
                context: SegmentKind::InlineCode,
                recognizer: Recognizer::Call,
                occurrences_in_doc: 1,
            },
            snapshot: rev(b'a'),
            current: rev(b'b'),
            snapshot_count: s,
            current_count: c,
            classification: classify(s, c),
        }
    }

    fn report(rows: Vec<ReferenceVerdict>) -> ScanReport {
        ScanReport {
            repo_slug: None,
            run_id: None,
            current: rev(b'b'),
            rows,
            warnings: vec![],
        }
    }

    #[test]
    fn exclude_list_parsing() {
        let list = ExcludeList::parse("divide\n\nsubtract\n");
        assert_eq!(list.entries(), ["divide", "subtract"]);

        let list = ExcludeList::parse(" text_out \n");
        assert_eq!(list.entries(), ["text_out"]);

        let list = ExcludeList::parse("a\na\nb\n");
        assert_eq!(list.entries(), ["a", "b"]);

        assert!(ExcludeList::parse("").is_empty());
    }

    #[test]
    fn exclusion_matches_anchor_or_raw() {
        let rows = vec![
            verdict("README.md", "text_out", "text_out", 2, 0),
            verdict("README.md", "Promise.reject", "Promise.reject(err)", 1, 0),
            verdict("README.md", "add", "add(x, y)", 1, 1),
        ];
        let excludes = ExcludeList::parse("text_out\nPromise.reject(err)\n");
        let rows = apply_exclusions(rows, &excludes);
        assert_eq!(rows[0].classification, Classification::Excluded);
        assert_eq!(rows[1].classification, Classification::Excluded);
        assert_eq!(rows[2].classification, Classification::Present);
    }

    #[test]
    fn empty_exclude_list_changes_nothing() {
        let rows = vec![verdict("README.md", "divide", "divide(a, b)", 2, 0)];
        let before = rows.clone();
        assert_eq!(apply_exclusions(rows, &ExcludeList::default()), before);
    }

    #[test]
    fn report_csv_quotes_commas() {
        let rep = report(vec![verdict("README.md", "add", "add(x, y)", 1, 1)]);
        let csv = report_csv(&rep);
        assert!(csv.contains("\"add(x, y)\""));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn empty_report_is_header_only() {
        let rep = report(vec![]);
        assert_eq!(
            report_csv(&rep),
            "doc_path,line,raw,anchor,context,recognizer,snapshot_commit,\
             snapshot_count,current_count,classification\n"
        );
        assert_eq!(summary_csv(&rep), "doc_path,anchor,snapshot_commit\n");
        assert_eq!(summary_md(&rep), "## Potentially outdated references\n");
        assert_eq!(pr_comment(&rep), "");
    }

    #[test]
    fn summary_lists_only_outdated() {
        let rep = report(vec![
            verdict("README.md", "add", "add(x, y)", 1, 1),
            verdict("README.md", "divide", "divide(a, b)", 2, 0),
        ]);
        let md = summary_md(&rep);
        assert!(md.contains("| README.md | `divide` | aaaaaaa |"));
        assert!(!md.contains("`add`"));
        let csv = summary_csv(&rep);
        assert!(csv.contains("README.md,divide,"));
        assert!(!csv.contains(",add,"));
    }

    #[test]
    fn comment_link_requires_slug_and_run_id() {
        let mut rep = report(vec![verdict("README.md", "divide", "divide(a, b)", 2, 0)]);
        assert!(!pr_comment(&rep).contains("Full report"));

        rep.repo_slug = Some("octo/demo".to_string());
        assert!(!pr_comment(&rep).contains("Full report"));

        rep.run_id = Some("42".to_string());
        let comment = pr_comment(&rep);
        assert!(comment.contains("\nFull report: https://github.com/octo/demo/actions/runs/42\n"));
        assert!(comment.starts_with(&summary_md(&rep)));
    }

    #[test]
    fn excluded_rows_never_reach_summary_or_comment() {
        let rows = vec![verdict("README.md", "text_out", "text_out", 2, 0)];
        let rows = apply_exclusions(rows, &ExcludeList::parse("text_out"));
        let rep = report(rows);
        assert_eq!(summary_md(&rep), "## Potentially outdated references\n");
        assert_eq!(pr_comment(&rep), "");
    }
}
