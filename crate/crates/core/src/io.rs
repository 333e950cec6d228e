//! Text formats: edge lists, community files and partition files.
//!
//! Edge list: one `label label` pair per line, whitespace separated. Lines
//! starting with `#` are comments, except `# vertex <label>`, which registers a
//! label without an edge. That directive is what lets isolated vertices and
//! arbitrary id orders survive a write/read cycle.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::community::CommunitySet;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSubset};
use crate::metrics::Partition;

/// Schema tag on the first record of a structured community stream.
pub const COMMUNITIES_SCHEMA: &str = "cliquerelax/communities/v1";

const VERTEX_DIRECTIVE: &str = "# vertex ";

/// Bijection between dense vertex ids and external labels.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LabelMap {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
}

impl LabelMap {
    /// Labels `"0"`, `"1"`, ... matching the ids.
    pub fn identity(n: usize) -> Self {
        Self::new((0..n).map(|v| v.to_string()).collect()).expect("decimal labels are valid")
    }

    /// Label `i` names vertex `i`. Labels must be distinct, non-empty, free of
    /// whitespace and must not start with `#`.
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || label.starts_with('#') || label.chars().any(char::is_whitespace) {
                return Err(Error::InvalidParams(format!("label {label:?} cannot be written to an edge list")));
            }
            if index.insert(label.clone(), i as VertexId).is_some() {
                return Err(Error::InvalidParams(format!("duplicate label {label:?}")));
            }
        }
        Ok(LabelMap { labels, index })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v as usize]
    }

    pub fn id(&self, label: &str) -> Option<VertexId> {
        self.index.get(label).copied()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    fn intern(&mut self, label: &str) -> VertexId {
        if let Some(&v) = self.index.get(label) {
            return v;
        }
        let v = self.labels.len() as VertexId;
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), v);
        v
    }

    fn check_covers(&self, vertex_count: usize) -> Result<()> {
        if self.len() != vertex_count {
            return Err(Error::InvalidParams(format!(
                "label map has {} labels for {vertex_count} vertices",
                self.len()
            )));
        }
        Ok(())
    }
}

/// Parses an edge list. Ids follow first appearance; duplicate and reversed
/// edges collapse.
pub fn read_edge_list(source: impl BufRead) -> Result<(Graph, LabelMap)> {
    let mut labels = LabelMap::default();
    let mut edges = Vec::new();
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let line_no = i + 1;
        if let Some(rest) = line.strip_prefix(VERTEX_DIRECTIVE) {
            let mut tokens = rest.split_whitespace();
            match (tokens.next(), tokens.next()) {
                (Some(label), None) => {
                    labels.intern(label);
                }
                _ => return Err(parse_error(line_no, "vertex directive needs exactly one label")),
            }
            continue;
        }
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => return Err(parse_error(line_no, "expected exactly two labels")),
        };
        if a == b {
            return Err(parse_error(line_no, &format!("self-loop on {a:?}")));
        }
        if labels.len() >= VertexId::MAX as usize - 1 {
            return Err(parse_error(line_no, "too many vertices"));
        }
        let u = labels.intern(a);
        let v = labels.intern(b);
        edges.push((u, v));
    }
    let graph = Graph::from_edges(labels.len(), edges)?;
    Ok((graph, labels))
}

fn parse_error(line: usize, message: &str) -> Error {
    Error::Parse { line, message: message.to_owned() }
}

/// Writes the canonical edge list: a `# n=.. m=..` header, an optional
/// `# generator <json>` line, vertex directives when needed, then each edge
/// once with the smaller id first, sorted.
pub fn write_graph(out: &mut impl Write, g: &Graph, labels: &LabelMap, generator: Option<&Value>) -> Result<()> {
    labels.check_covers(g.vertex_count())?;
    writeln!(out, "# n={} m={}", g.vertex_count(), g.edge_count())?;
    if let Some(spec) = generator {
        writeln!(out, "# generator {}", serde_json::to_string(spec)?)?;
    }
    if !edges_reproduce_ids(g) {
        for v in 0..g.vertex_count() as VertexId {
            writeln!(out, "{VERTEX_DIRECTIVE}{}", labels.label(v))?;
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", labels.label(u), labels.label(v))?;
    }
    Ok(())
}

pub fn graph_to_string(g: &Graph, labels: &LabelMap, generator: Option<&Value>) -> String {
    let mut buf = Vec::new();
    write_graph(&mut buf, g, labels, generator).expect("writing to memory");
    String::from_utf8(buf).expect("labels are strings")
}

/// Whether reading the canonical edge order alone assigns every vertex its
/// current id.
fn edges_reproduce_ids(g: &Graph) -> bool {
    let mut next: VertexId = 0;
    for (u, v) in g.edges() {
        for w in [u, v] {
            if w == next {
                next += 1;
            } else if w > next {
                return false;
            }
        }
    }
    next as usize == g.vertex_count()
}

/// Community output encodings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    /// One community per line, labels separated by tabs.
    #[default]
    Tsv,
    /// JSON Lines: a header record, then one record per community.
    Structured,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tsv" => Ok(OutputFormat::Tsv),
            "structured" => Ok(OutputFormat::Structured),
            other => Err(Error::UnknownFormat(other.to_owned())),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Tsv => "tsv",
            OutputFormat::Structured => "structured",
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CommunitiesHeader {
    schema: String,
    params: Value,
    vertex_count: usize,
    edge_count: usize,
    community_count: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct CommunityRecord {
    members: Vec<String>,
    size: usize,
    internal_edges: usize,
    min_internal_degree: usize,
    density: f64,
    connected: bool,
}

/// Writes `cs` in canonical order. The structured form embeds `params` and
/// per-community statistics computed on `g`; tsv ignores both.
pub fn write_communities(
    out: &mut impl Write,
    g: &Graph,
    cs: &CommunitySet,
    labels: &LabelMap,
    format: OutputFormat,
    params: &Value,
) -> Result<()> {
    labels.check_covers(g.vertex_count())?;
    match format {
        OutputFormat::Tsv => {
            for c in cs {
                let line: Vec<&str> = c.members().iter().map(|&v| labels.label(v)).collect();
                writeln!(out, "{}", line.join("\t"))?;
            }
        }
        OutputFormat::Structured => {
            let header = CommunitiesHeader {
                schema: COMMUNITIES_SCHEMA.to_owned(),
                params: params.clone(),
                vertex_count: g.vertex_count(),
                edge_count: g.edge_count(),
                community_count: cs.len(),
            };
            writeln!(out, "{}", serde_json::to_string(&header)?)?;
            for c in cs {
                let stats = g.induced_stats(c)?;
                let record = CommunityRecord {
                    members: c.members().iter().map(|&v| labels.label(v).to_owned()).collect(),
                    size: stats.size,
                    internal_edges: stats.internal_edges,
                    min_internal_degree: stats.min_internal_degree,
                    density: stats.density,
                    connected: stats.connected,
                };
                writeln!(out, "{}", serde_json::to_string(&record)?)?;
            }
        }
    }
    Ok(())
}

/// Reads what [`write_communities`] wrote, mapping labels back through `labels`.
pub fn read_communities(source: impl BufRead, labels: &LabelMap, format: OutputFormat) -> Result<CommunitySet> {
    let resolve = |label: &str, line: usize| {
        labels.id(label).ok_or_else(|| parse_error(line, &format!("unknown label {label:?}")))
    };
    let mut found = Vec::new();
    match format {
        OutputFormat::Tsv => {
            for (i, line) in source.lines().enumerate() {
                let line = line?;
                let members = match line.as_str() {
                    "" => Vec::new(),
                    _ => line.split('\t').map(|l| resolve(l, i + 1)).collect::<Result<Vec<_>>>()?,
                };
                found.push(subset(members, labels.len(), i + 1)?);
            }
        }
        OutputFormat::Structured => {
            let mut lines = source.lines();
            let header: CommunitiesHeader = match lines.next() {
                Some(line) => serde_json::from_str(&line?)?,
                None => return Err(parse_error(1, "missing header record")),
            };
            if header.schema != COMMUNITIES_SCHEMA {
                return Err(parse_error(1, &format!("unsupported schema {:?}", header.schema)));
            }
            for (i, line) in lines.enumerate() {
                let record: CommunityRecord = serde_json::from_str(&line?)?;
                let members = record.members.iter().map(|l| resolve(l, i + 2)).collect::<Result<Vec<_>>>()?;
                found.push(subset(members, labels.len(), i + 2)?);
            }
            if found.len() != header.community_count {
                return Err(parse_error(
                    found.len() + 1,
                    &format!("header announces {} communities, found {}", header.community_count, found.len()),
                ));
            }
        }
    }
    Ok(CommunitySet::new(found))
}

fn subset(members: Vec<VertexId>, n: usize, line: usize) -> Result<VertexSubset> {
    VertexSubset::new(members, n).map_err(|e| parse_error(line, &e.to_string()))
}

/// Reads `label<TAB>block` lines, one per vertex. Block indices are arbitrary
/// non-negative integers; only which vertices share one matters.
pub fn read_partition(source: impl BufRead, labels: &LabelMap) -> Result<Partition> {
    let mut block: Vec<Option<u64>> = vec![None; labels.len()];
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let line_no = i + 1;
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let (label, index) = line.split_once('\t').ok_or_else(|| parse_error(line_no, "expected label<TAB>block"))?;
        let v = labels.id(label).ok_or_else(|| parse_error(line_no, &format!("unknown label {label:?}")))?;
        let index: u64 =
            index.trim().parse().map_err(|_| parse_error(line_no, &format!("bad block index {index:?}")))?;
        if block[v as usize].replace(index).is_some() {
            return Err(parse_error(line_no, &format!("vertex {label:?} assigned twice")));
        }
    }
    let assigned = block
        .iter()
        .enumerate()
        .map(|(v, b)| {
            b.ok_or_else(|| Error::InvalidPartition(format!("vertex {:?} has no block", labels.label(v as VertexId))))
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(Partition::from_labels(&assigned))
}

pub fn write_partition(out: &mut impl Write, p: &Partition, labels: &LabelMap) -> Result<()> {
    labels.check_covers(p.vertex_count())?;
    for (v, b) in p.block_of().iter().enumerate() {
        writeln!(out, "{}\t{b}", labels.label(v as VertexId))?;
    }
    Ok(())
}
