//! Prediction tracks, binding-site cluster extraction, fixed-width report
//! rendering, annotation overlays and wildtype-vs-mutant diffs.

use crate::error::{Error, Result};
use crate::seq::{ProteinChain, ResidueLabel};

/// Per-chain prediction masks: 'p' sites (protein partners) and 'r' sites
/// (RNA partners). Either track may be absent.
#[derive(Clone, Debug)]
pub struct PredictionTrack {
    pub chain: ProteinChain,
    pub protein_mask: Option<Vec<bool>>,
    pub rna_mask: Option<Vec<bool>>,
}

impl PredictionTrack {
    pub fn new(
        chain: ProteinChain,
        protein_mask: Option<Vec<bool>>,
        rna_mask: Option<Vec<bool>>,
    ) -> Result<PredictionTrack> {
        for (name, mask) in [("protein", &protein_mask), ("rna", &rna_mask)] {
            if let Some(m) = mask {
                if m.len() != chain.len() {
                    return Err(Error::data(format!(
                        "chain '{}': {name} mask length {} does not match chain length {}",
                        chain.id(),
                        m.len(),
                        chain.len()
                    )));
                }
            }
        }
        Ok(PredictionTrack {
            chain,
            protein_mask,
            rna_mask,
        })
    }
}

/// A contiguous reported binding site: 1-based inclusive bounds, both ends
/// positive; `size` counts positives inside, `gaps` the negatives bridged.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClusterSpan {
    pub start: usize,
    pub end: usize,
    pub size: usize,
    pub gaps: usize,
}

/// Cluster extraction settings: positives separated by at most `max_gap`
/// negatives merge into one span; spans with fewer than `min_size`
/// positives are discarded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClusterParams {
    pub max_gap: usize,
    pub min_size: usize,
}

impl Default for ClusterParams {
    fn default() -> Self {
        ClusterParams {
            max_gap: 2,
            min_size: 3,
        }
    }
}

/// Merge positive runs into spans. Output spans are sorted, non-overlapping,
/// trimmed to start and end on positives, and separated by more than
/// `max_gap` negatives.
pub fn find_clusters(mask: &[bool], params: &ClusterParams) -> Vec<ClusterSpan> {
    let mut spans = Vec::new();
    let mut current: Option<(usize, usize, usize)> = None; // (start, end, size), 0-based
    for (i, &positive) in mask.iter().enumerate() {
        if !positive {
            continue;
        }
        current = match current {
            Some((start, end, size)) if i - end - 1 <= params.max_gap => Some((start, i, size + 1)),
            Some(done) => {
                spans.push(done);
                Some((i, i, 1))
            }
            None => Some((i, i, 1)),
        };
    }
    if let Some(done) = current {
        spans.push(done);
    }
    spans
        .into_iter()
        .filter(|(_, _, size)| *size >= params.min_size)
        .map(|(start, end, size)| ClusterSpan {
            start: start + 1,
            end: end + 1,
            size,
            gaps: (end - start + 1) - size,
        })
        .collect()
}

/// A user-supplied functional-domain annotation (1-based inclusive bounds).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Annotation {
    pub name: String,
    pub start: usize,
    pub end: usize,
}

/// Parse an annotation file of `name<TAB>start<TAB>end` lines.
pub fn parse_annotation_file(text: &str) -> Result<Vec<Annotation>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split('\t');
        let (name, start, end) = match (parts.next(), parts.next(), parts.next()) {
            (Some(n), Some(s), Some(e)) => (n, s, e),
            _ => return Err(Error::parse(line_no, "expected 'name<TAB>start<TAB>end'")),
        };
        let start: usize = start
            .trim()
            .parse()
            .map_err(|_| Error::parse(line_no, format!("bad start '{start}'")))?;
        let end: usize = end
            .trim()
            .parse()
            .map_err(|_| Error::parse(line_no, format!("bad end '{end}'")))?;
        if start == 0 || end < start {
            return Err(Error::parse(
                line_no,
                format!("annotation bounds {start}-{end} are not 1 <= start <= end"),
            ));
        }
        out.push(Annotation {
            name: name.to_string(),
            start,
            end,
        });
    }
    Ok(out)
}

fn mask_line(mask: &[bool], lo: usize, hi: usize, glyph: char) -> String {
    mask[lo..hi]
        .iter()
        .map(|&p| if p { glyph } else { '.' })
        .collect()
}

fn ruler_line(lo: usize, hi: usize) -> String {
    // Absolute positions, multiples of 10 right-aligned at their column.
    let width = hi - lo;
    let mut line = vec![b' '; width];
    let mut pos = lo + 1; // 1-based
    while pos <= hi {
        if pos % 10 == 0 {
            let text = pos.to_string();
            let col = pos - lo; // 1-based column within the block
            if col >= text.len() {
                line[col - text.len()..col].copy_from_slice(text.as_bytes());
            }
        }
        pos += 1;
    }
    String::from_utf8(line).expect("ascii")
}

fn annotation_line(annotations: &[Annotation], lo: usize, hi: usize) -> String {
    let mut line = vec![b'.'; hi - lo];
    for ann in annotations {
        let start = ann.start.max(lo + 1);
        let end = ann.end.min(hi);
        if start > end {
            continue;
        }
        for col in start..=end {
            line[col - 1 - lo] = b'=';
        }
        // Overlay the name from the span start, clipped to the span.
        for (k, ch) in ann.name.bytes().enumerate() {
            let col = start + k;
            if col > end {
                break;
            }
            line[col - 1 - lo] = ch;
        }
    }
    String::from_utf8(line).expect("ascii")
}

/// Render the fixed-width per-residue report: blocks of `width` columns with
/// a position ruler, the sequence, 'p'/'r' tracks and an optional annotation
/// overlay, followed by a cluster summary listing each span and its
/// subsequence.
pub fn render_report(
    track: &PredictionTrack,
    annotations: Option<&[Annotation]>,
    width: usize,
    cluster_params: &ClusterParams,
) -> String {
    let width = width.max(10);
    let chain = &track.chain;
    let seq = chain.sequence_string();
    let mut out = format!("# chain {} ({} aa)\n", chain.id(), chain.len());

    let mut lo = 0;
    while lo < chain.len() {
        let hi = (lo + width).min(chain.len());
        out.push_str(&format!("POS   {}\n", ruler_line(lo, hi)));
        out.push_str(&format!("SEQ   {}\n", &seq[lo..hi]));
        if let Some(mask) = &track.protein_mask {
            out.push_str(&format!("PRO   {}\n", mask_line(mask, lo, hi, 'p')));
        }
        if let Some(mask) = &track.rna_mask {
            out.push_str(&format!("RNA   {}\n", mask_line(mask, lo, hi, 'r')));
        }
        if let Some(anns) = annotations {
            out.push_str(&format!("ANN   {}\n", annotation_line(anns, lo, hi)));
        }
        out.push('\n');
        lo = hi;
    }

    let mut summary = |label: &str, mask: &Option<Vec<bool>>| {
        if let Some(mask) = mask {
            out.push_str(&format!(
                "{label} clusters (max_gap={}, min_size={}):\n",
                cluster_params.max_gap, cluster_params.min_size
            ));
            let spans = find_clusters(mask, cluster_params);
            if spans.is_empty() {
                out.push_str("  (none)\n");
            }
            for span in spans {
                out.push_str(&format!(
                    "  {}-{}  size={} gaps={}  {}\n",
                    span.start,
                    span.end,
                    span.size,
                    span.gaps,
                    &seq[span.start - 1..span.end]
                ));
            }
        }
    };
    summary("Protein interface", &track.protein_mask);
    summary("RNA interface", &track.rna_mask);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrackKind {
    Protein,
    Rna,
}

impl TrackKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TrackKind::Protein => "protein",
            TrackKind::Rna => "rna",
        }
    }
}

/// One residue whose call changed between two tracks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PositionChange {
    /// 1-based residue position.
    pub position: usize,
    pub track: TrackKind,
    pub from: ResidueLabel,
    pub to: ResidueLabel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffSide {
    OnlyInA,
    OnlyInB,
}

/// A cluster present in exactly one of the two compared tracks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClusterChange {
    pub track: TrackKind,
    pub span: ClusterSpan,
    pub side: DiffSide,
}

/// Positionwise and cluster-level differences between two prediction tracks.
#[derive(Clone, Debug, Default)]
pub struct DiffReport {
    pub position_changes: Vec<PositionChange>,
    pub cluster_changes: Vec<ClusterChange>,
}

impl DiffReport {
    pub fn is_empty(&self) -> bool {
        self.position_changes.is_empty() && self.cluster_changes.is_empty()
    }
}

fn diff_track(
    kind: TrackKind,
    a: Option<&Vec<bool>>,
    b: Option<&Vec<bool>>,
    len: usize,
    params: &ClusterParams,
    report: &mut DiffReport,
) {
    if a.is_none() && b.is_none() {
        return;
    }
    // A missing mask on one side compares as all-negative.
    let empty = vec![false; len];
    let a = a.unwrap_or(&empty);
    let b = b.unwrap_or(&empty);
    for i in 0..len {
        if a[i] != b[i] {
            report.position_changes.push(PositionChange {
                position: i + 1,
                track: kind,
                from: ResidueLabel::from_bool(a[i]),
                to: ResidueLabel::from_bool(b[i]),
            });
        }
    }
    let spans_a = find_clusters(a, params);
    let spans_b = find_clusters(b, params);
    for span in &spans_a {
        if !spans_b.contains(span) {
            report.cluster_changes.push(ClusterChange {
                track: kind,
                span: *span,
                side: DiffSide::OnlyInA,
            });
        }
    }
    for span in &spans_b {
        if !spans_a.contains(span) {
            report.cluster_changes.push(ClusterChange {
                track: kind,
                span: *span,
                side: DiffSide::OnlyInB,
            });
        }
    }
}

/// Compare two prediction tracks over chains of equal length (substitution
/// mutants only; alignment of indel variants is out of scope).
pub fn diff_predictions(
    a: &PredictionTrack,
    b: &PredictionTrack,
    params: &ClusterParams,
) -> Result<DiffReport> {
    if a.chain.len() != b.chain.len() {
        return Err(Error::data(format!(
            "chains '{}' ({} aa) and '{}' ({} aa) differ in length; only \
             substitution variants can be compared (alignment is out of scope)",
            a.chain.id(),
            a.chain.len(),
            b.chain.id(),
            b.chain.len()
        )));
    }
    let mut report = DiffReport::default();
    diff_track(
        TrackKind::Protein,
        a.protein_mask.as_ref(),
        b.protein_mask.as_ref(),
        a.chain.len(),
        params,
        &mut report,
    );
    diff_track(
        TrackKind::Rna,
        a.rna_mask.as_ref(),
        b.rna_mask.as_ref(),
        a.chain.len(),
        params,
        &mut report,
    );
    Ok(report)
}
