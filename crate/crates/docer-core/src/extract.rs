//! Markdown segmentation and lexical extraction of code element references.
//!
//! Segmentation is deliberately a bounded Markdown subset: lines starting
//! with ``` or ~~~ open and close fenced blocks (info string ignored,
//! unterminated fences run to end of input), matching backtick runs within a
//! line delimit inline code, and everything else is prose. HTML, indented
//! code blocks and links are plain prose. Segment spans tile the input
//! exactly, so reassembling the spans reproduces the document.
//!
//! Extraction runs a fixed catalog of five recognizers over every segment.
//! Tokens that match no recognizer are ignored, even inside code spans: a
//! bare lowercase word like `add` only counts when written as a call.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

/// Upper bound on a call's argument span, opening to closing parenthesis
/// inclusive. Anything longer is not treated as a call.
const MAX_CALL_SPAN: usize = 80;

const MIN_PLAIN_IDENT_LEN: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentKind {
    Prose,
    InlineCode,
    FencedBlock,
}

impl fmt::Display for SegmentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SegmentKind::Prose => "Prose",
            SegmentKind::InlineCode => "InlineCode",
            SegmentKind::FencedBlock => "FencedBlock",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub kind: SegmentKind,
    /// Content with delimiters stripped: fence lines and backtick runs are
    /// not part of `text`.
    pub text: String,
    /// 1-based line on which the segment (including delimiters) starts.
    pub start_line: usize,
    /// Byte range of the whole segment, delimiters included. Spans of the
    /// returned segments tile the input.
    pub span: Range<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Recognizer {
    Call,
    DottedPath,
    CamelCase,
    Underscored,
    Generic,
}

impl fmt::Display for Recognizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Recognizer::Call => "Call",
            Recognizer::DottedPath => "DottedPath",
            Recognizer::CamelCase => "CamelCase",
            Recognizer::Underscored => "Underscored",
            Recognizer::Generic => "Generic",
        })
    }
}

/// One extracted reference, deduplicated by anchor within its document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeElementReference {
    /// Exact matched text of the first occurrence, e.g. `Promise.reject(err)`.
    pub raw: String,
    /// Normalized search key, e.g. `Promise.reject`. Only `[A-Za-z0-9_.]`,
    /// never starts or ends with a dot.
    pub anchor: String,
    pub doc_path: String,
    /// 1-based line of the first occurrence.
    pub line: usize,
    /// Kind of segment the first occurrence appeared in.
    pub context: SegmentKind,
    pub recognizer: Recognizer,
    pub occurrences_in_doc: usize,
}

/// Split a document into prose, inline code, and fenced block segments.
pub fn segment_markdown(text: &str) -> Vec<Segment> {
    let mut code = Vec::new();

    struct OpenFence {
        marker: &'static str,
        span_start: usize,
        content_start: usize,
        start_line: usize,
    }
    let mut fence: Option<OpenFence> = None;

    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut line_no = 0;
    let mut line_starts = vec![0usize];

    while pos < bytes.len() {
        line_no += 1;
        let line_end = match bytes[pos..].iter().position(|&b| b == b'\n') {
            Some(i) => pos + i + 1,
            None => bytes.len(),
        };
        if line_end < bytes.len() {
            line_starts.push(line_end);
        }
        let line = &text[pos..line_end];
        let content = line.strip_suffix('\n').unwrap_or(line);

        if let Some(open) = &fence {
            if content.starts_with(open.marker) {
                let inner = &text[open.content_start..pos];
                code.push(Segment {
                    kind: SegmentKind::FencedBlock,
                    text: inner.strip_suffix('\n').unwrap_or(inner).to_string(),
                    start_line: open.start_line,
                    span: open.span_start..line_end,
                });
                fence = None;
            }
        } else if content.starts_with("```") || content.starts_with("~~~") {
            fence = Some(OpenFence {
                marker: if content.starts_with("```") { "```" } else { "~~~" },
                span_start: pos,
                content_start: line_end,
                start_line: line_no,
            });
        } else {
            scan_inline_code(text, pos..line_end, line_no, &mut code);
        }
        pos = line_end;
    }

    if let Some(open) = fence {
        let inner = &text[open.content_start..];
        code.push(Segment {
            kind: SegmentKind::FencedBlock,
            text: inner.strip_suffix('\n').unwrap_or(inner).to_string(),
            start_line: open.start_line,
            span: open.span_start..bytes.len(),
        });
    }

    // Prose fills the gaps between code segments.
    let mut segments = Vec::with_capacity(code.len() * 2 + 1);
    let line_of = |offset: usize| match line_starts.binary_search(&offset) {
        Ok(i) => i + 1,
        Err(i) => i,
    };
    let mut cursor = 0;
    for seg in code {
        if seg.span.start > cursor {
            segments.push(Segment {
                kind: SegmentKind::Prose,
                text: text[cursor..seg.span.start].to_string(),
                start_line: line_of(cursor),
                span: cursor..seg.span.start,
            });
        }
        cursor = seg.span.end;
        segments.push(seg);
    }
    if cursor < bytes.len() {
        segments.push(Segment {
            kind: SegmentKind::Prose,
            text: text[cursor..].to_string(),
            start_line: line_of(cursor),
            span: cursor..bytes.len(),
        });
    }
    segments
}

/// Find inline code delimited by matching backtick runs within one line.
/// A run of N backticks closes only on the next run of exactly N.
fn scan_inline_code(text: &str, line: Range<usize>, line_no: usize, out: &mut Vec<Segment>) {
    let bytes = text.as_bytes();
    let mut i = line.start;
    while i < line.end {
        if bytes[i] != b'`' {
            i += 1;
            continue;
        }
        let run_start = i;
        while i < line.end && bytes[i] == b'`' {
            i += 1;
        }
        let run_len = i - run_start;

        let mut j = i;
        let mut close = None;
        while j < line.end {
            if bytes[j] != b'`' {
                j += 1;
                continue;
            }
            let cs = j;
            while j < line.end && bytes[j] == b'`' {
                j += 1;
            }
            if j - cs == run_len {
                close = Some(cs);
                break;
            }
        }
        match close {
            Some(cs) => {
                out.push(Segment {
                    kind: SegmentKind::InlineCode,
                    text: text[run_start + run_len..cs].to_string(),
                    start_line: line_no,
                    span: run_start..cs + run_len,
                });
                i = cs + run_len;
            }
            // Unmatched run stays prose; scanning resumes after it.
            None => {}
        }
    }
}

/// Extract references from a document, deduplicated by anchor.
///
/// The first occurrence fixes raw text, location, context and recognizer;
/// later occurrences of the same anchor only bump the count. Output order
/// is first-occurrence order.
pub fn extract_references(doc_path: &str, text: &str) -> Vec<CodeElementReference> {
    let mut refs: Vec<CodeElementReference> = Vec::new();
    let mut by_anchor: HashMap<String, usize> = HashMap::new();

    for seg in segment_markdown(text) {
        // Fence content begins on the line after the opening fence.
        let base_line = match seg.kind {
            SegmentKind::FencedBlock => seg.start_line + 1,
            _ => seg.start_line,
        };
        for token in recognize_tokens(&seg.text) {
            match by_anchor.get(&token.anchor) {
                Some(&idx) => refs[idx].occurrences_in_doc += 1,
                None => {
                    let line = base_line
                        + seg.text[..token.raw.start]
                            .bytes()
                            .filter(|&b| b == b'\n')
                            .count();
                    by_anchor.insert(token.anchor.clone(), refs.len());
                    refs.push(CodeElementReference {
                        raw: seg.text[token.raw.clone()].to_string(),
                        anchor: token.anchor,
                        doc_path: doc_path.to_string(),
                        line,
                        context: seg.kind,
                        recognizer: token.recognizer,
                        occurrences_in_doc: 1,
                    });
                }
            }
        }
    }
    refs
}

struct TokenMatch {
    raw: Range<usize>,
    anchor: String,
    recognizer: Recognizer,
}

fn is_ident_start(b: u8) -> bool {
    b.is_ascii_alphabetic() || b == b'_'
}

fn is_ident_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

/// Run the recognizer catalog over one segment's text.
fn recognize_tokens(text: &str) -> Vec<TokenMatch> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        if !is_ident_start(bytes[i]) || (i > 0 && is_ident_byte(bytes[i - 1])) {
            i += 1;
            continue;
        }
        let (chain_end, id_count) = scan_chain(bytes, i);
        let chain = &text[i..chain_end];
        let next = bytes.get(chain_end).copied();

        let token = if next == Some(b'(') {
            balanced_call_end(bytes, chain_end).map(|close| TokenMatch {
                raw: i..close + 1,
                anchor: chain.to_string(),
                recognizer: Recognizer::Call,
            })
        } else {
            None
        };
        let token = token.or_else(|| {
            if id_count == 1 && next == Some(b'<') {
                generic_close(bytes, chain_end).map(|gt| TokenMatch {
                    raw: i..gt + 1,
                    anchor: chain.to_string(),
                    recognizer: Recognizer::Generic,
                })
            } else {
                None
            }
        });
        let token = token.or_else(|| {
            if id_count >= 2 && next != Some(b'(') {
                Some(TokenMatch {
                    raw: i..chain_end,
                    anchor: chain.to_string(),
                    recognizer: Recognizer::DottedPath,
                })
            } else {
                None
            }
        });
        let token = token.or_else(|| {
            if id_count != 1 || chain.len() < MIN_PLAIN_IDENT_LEN {
                None
            } else if has_camel_transition(chain) {
                Some(TokenMatch {
                    raw: i..chain_end,
                    anchor: chain.to_string(),
                    recognizer: Recognizer::CamelCase,
                })
            } else if has_flanked_underscore(bytes, i, chain_end) {
                Some(TokenMatch {
                    raw: i..chain_end,
                    anchor: chain.to_string(),
                    recognizer: Recognizer::Underscored,
                })
            } else {
                None
            }
        });

        out.extend(token);
        // Resume right after the identifier chain so call arguments and
        // generic parameters are themselves scanned.
        i = chain_end;
    }
    out
}

/// Scan `ID(.ID)*` starting at an identifier-start byte. Returns the end
/// offset and the number of dot-separated identifiers.
fn scan_chain(bytes: &[u8], start: usize) -> (usize, usize) {
    let mut end = scan_id(bytes, start);
    let mut ids = 1;
    while end < bytes.len()
        && bytes[end] == b'.'
        && end + 1 < bytes.len()
        && is_ident_start(bytes[end + 1])
    {
        end = scan_id(bytes, end + 1);
        ids += 1;
    }
    (end, ids)
}

fn scan_id(bytes: &[u8], start: usize) -> usize {
    let mut end = start + 1;
    while end < bytes.len() && is_ident_byte(bytes[end]) {
        end += 1;
    }
    end
}

/// Position of the parenthesis closing a balanced argument span of at most
/// [`MAX_CALL_SPAN`] bytes, counting both parentheses.
fn balanced_call_end(bytes: &[u8], open: usize) -> Option<usize> {
    let mut depth = 1usize;
    let limit = (open + MAX_CALL_SPAN).min(bytes.len());
    for j in open + 1..limit {
        match bytes[j] {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(j);
                }
            }
            _ => {}
        }
    }
    None
}

/// Position of the `>` closing a non-empty, single-line generic span.
fn generic_close(bytes: &[u8], lt: usize) -> Option<usize> {
    for j in lt + 1..bytes.len() {
        match bytes[j] {
            b'\n' => return None,
            b'>' => return if j > lt + 1 { Some(j) } else { None },
            _ => {}
        }
    }
    None
}

fn has_camel_transition(id: &str) -> bool {
    id.as_bytes()
        .windows(2)
        .any(|w| w[0].is_ascii_lowercase() && w[1].is_ascii_uppercase())
}

fn has_flanked_underscore(bytes: &[u8], start: usize, end: usize) -> bool {
    (start + 1..end.saturating_sub(1)).any(|k| {
        bytes[k] == b'_'
            && bytes[k - 1].is_ascii_alphanumeric()
            && bytes[k + 1].is_ascii_alphanumeric()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(segs: &[Segment]) -> Vec<(SegmentKind, &str)> {
        segs.iter().map(|s| (s.kind, s.text.as_str())).collect()
    }

    #[test]
    fn inline_code_splits_line() {
        let segs = segment_markdown("a `b` c");
        assert_eq!(
            kinds(&segs),
            vec![
                (SegmentKind::Prose, "a "),
                (SegmentKind::InlineCode, "b"),
                (SegmentKind::Prose, " c"),
            ]
        );
    }

    #[test]
    fn fenced_block_excludes_fence_lines() {
        let segs = segment_markdown("```py\nx=1\n```");
        assert_eq!(kinds(&segs), vec![(SegmentKind::FencedBlock, "x=1")]);
        assert_eq!(segs[0].start_line, 1);
    }

    #[test]
    fn no_backticks_is_single_prose_segment() {
        let text = "plain text\nwith two lines\n";
        let segs = segment_markdown(text);
        assert_eq!(kinds(&segs), vec![(SegmentKind::Prose, text)]);
    }

    #[test]
    fn tilde_fence_and_unterminated_fence() {
        let segs = segment_markdown("~~~\ncode\n~~~\n");
        assert_eq!(kinds(&segs), vec![(SegmentKind::FencedBlock, "code")]);

        let segs = segment_markdown("before\n```rust\nlet x = 1;\n");
        assert_eq!(
            kinds(&segs),
            vec![
                (SegmentKind::Prose, "before\n"),
                (SegmentKind::FencedBlock, "let x = 1;"),
            ]
        );
        assert_eq!(segs[1].start_line, 2);
    }

    #[test]
    fn backtick_run_lengths_must_match() {
        let segs = segment_markdown("x ``a ` b`` y");
        assert_eq!(
            kinds(&segs),
            vec![
                (SegmentKind::Prose, "x "),
                (SegmentKind::InlineCode, "a ` b"),
                (SegmentKind::Prose, " y"),
            ]
        );
        // Unmatched run stays prose.
        let segs = segment_markdown("lone ` tick");
        assert_eq!(kinds(&segs), vec![(SegmentKind::Prose, "lone ` tick")]);
    }

    #[test]
    fn spans_tile_the_document() {
        let text = "a `b` c\n```\nfence\n```\ntail `q`";
        let segs = segment_markdown(text);
        let mut rebuilt = String::new();
        for s in &segs {
            rebuilt.push_str(&text[s.span.clone()]);
        }
        assert_eq!(rebuilt, text);
    }

    fn single(doc: &str) -> CodeElementReference {
        let refs = extract_references("README.md", doc);
        assert_eq!(refs.len(), 1, "expected one reference in {doc:?}: {refs:?}");
        refs.into_iter().next().unwrap()
    }

    #[test]
    fn call_with_dotted_chain() {
        let r = single("`Promise.reject(err)`");
        assert_eq!(r.raw, "Promise.reject(err)");
        assert_eq!(r.anchor, "Promise.reject");
        assert_eq!(r.recognizer, Recognizer::Call);
        assert_eq!(r.context, SegmentKind::InlineCode);
    }

    #[test]
    fn plain_call_keeps_single_identifier_anchor() {
        let r = single("`subtract(a, b)`");
        assert_eq!(r.anchor, "subtract");
        assert_eq!(r.recognizer, Recognizer::Call);
    }

    #[test]
    fn generic_anchor_is_base_identifier() {
        let r = single("`ArrayList<String>`");
        assert_eq!(r.raw, "ArrayList<String>");
        assert_eq!(r.anchor, "ArrayList");
        assert_eq!(r.recognizer, Recognizer::Generic);
    }

    #[test]
    fn underscored_in_prose() {
        let r = single("uses int64_t values");
        assert_eq!(r.anchor, "int64_t");
        assert_eq!(r.recognizer, Recognizer::Underscored);
        assert_eq!(r.context, SegmentKind::Prose);
    }

    #[test]
    fn camel_case_in_prose() {
        let r = single("the HttpClient type");
        assert_eq!(r.anchor, "HttpClient");
        assert_eq!(r.recognizer, Recognizer::CamelCase);
    }

    #[test]
    fn dotted_path_without_call() {
        let r = single("see os.path.join for details");
        assert_eq!(r.anchor, "os.path.join");
        assert_eq!(r.recognizer, Recognizer::DottedPath);
    }

    #[test]
    fn plain_words_are_ignored() {
        assert!(extract_references("d", "The quick table").is_empty());
        assert!(extract_references("d", "add and remove things").is_empty());
        // Even inside code spans.
        assert!(extract_references("d", "`add`").is_empty());
    }

    #[test]
    fn call_wins_over_dotted_path() {
        let refs = extract_references("d", "`a.b(c)`");
        assert_eq!(refs.len(), 1);
        assert_eq!(refs[0].anchor, "a.b");
        assert_eq!(refs[0].recognizer, Recognizer::Call);
    }

    #[test]
    fn nested_call_arguments_are_scanned() {
        let refs = extract_references("d", "`add(power(x, y))`");
        let anchors: Vec<_> = refs.iter().map(|r| r.anchor.as_str()).collect();
        assert_eq!(anchors, vec!["add", "power"]);
    }

    #[test]
    fn unbalanced_call_falls_through() {
        // No closing parenthesis: not a call, but text_out still matches.
        let refs = extract_references("d", "`text_out(`");
        assert_eq!(refs.len(), 1);
        assert_eq!(refs[0].anchor, "text_out");
        assert_eq!(refs[0].recognizer, Recognizer::Underscored);
    }

    #[test]
    fn length_three_is_the_extraction_floor() {
        assert!(extract_references("d", "an `ab` or x_ or _y of it").is_empty());
        let refs = extract_references("d", "uses a_b here");
        assert_eq!(refs.len(), 1);
        assert_eq!(refs[0].anchor, "a_b");
    }

    #[test]
    fn dedup_counts_occurrences_and_keeps_first_location() {
        let doc = "`divide(a, b)` here\n\nand `divide(x, y)` again\n";
        let refs = extract_references("README.md", doc);
        assert_eq!(refs.len(), 1);
        assert_eq!(refs[0].occurrences_in_doc, 2);
        assert_eq!(refs[0].line, 1);
        assert_eq!(refs[0].raw, "divide(a, b)");
    }

    #[test]
    fn lines_inside_fenced_blocks() {
        let doc = "intro\n```\nfirst\nsnake_case_name\n```\n";
        let refs = extract_references("d", doc);
        assert_eq!(refs.len(), 1);
        assert_eq!(refs[0].anchor, "snake_case_name");
        assert_eq!(refs[0].line, 4);
    }

    #[test]
    fn demo_readme_extracts_six_references() {
        let doc = "\
# Arithmetic

`arithmetic.py` defines the mathematical functions used by `main.py`.

## Functions

- `add(x, y)`: returns the sum of x and y
- `subtract(x, y)`: returns the difference of x and y
- `multiply(x, y)`: returns the product of x and y
- `divide(x, y)`: returns the quotient of x and y
";
        let refs = extract_references("README.md", doc);
        let anchors: Vec<_> = refs.iter().map(|r| r.anchor.as_str()).collect();
        assert_eq!(
            anchors,
            vec!["arithmetic.py", "main.py", "add", "subtract", "multiply", "divide"]
        );
    }
}
