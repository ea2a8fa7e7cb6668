use std::collections::BTreeMap;

use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;
use serde_json::Value;

use crate::construct::SlkFrieze;
use crate::error::{FriezeError, Result};
use crate::frieze::{CoxeterArray, CrossSection, FriezePattern};
use crate::rat::{format_rat, parse_rat, Rat};
use crate::separation::WsCollection;
use crate::subset::{Shape, Subset};

pub const FORMAT_VERSION: u32 = 1;

fn check_version(found: u32) -> Result<()> {
    if found != FORMAT_VERSION {
        return Err(FriezeError::Parse(format!("unsupported format_version {found}")));
    }
    Ok(())
}

fn parse_subset(shape: Shape, elements: &[usize]) -> Result<Subset> {
    if elements.windows(2).any(|w| w[0] >= w[1]) {
        return Err(FriezeError::Parse(format!("subset {elements:?} is not strictly increasing")));
    }
    shape.subset(elements)
}

fn parse_grid(rows: &[Vec<String>]) -> Result<Vec<Vec<Rat>>> {
    rows.iter().map(|r| r.iter().map(|v| parse_rat(v)).collect()).collect()
}

fn format_grid(rows: &[Vec<Rat>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(format_rat).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub subset: Vec<usize>,
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

/// One value per k-subset, values as exact strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FriezeDocument {
    pub format_version: u32,
    pub k: usize,
    pub n: usize,
    pub entries: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl FriezeDocument {
    pub fn from_pattern(p: &FriezePattern) -> Self {
        FriezeDocument {
            format_version: FORMAT_VERSION,
            k: p.k(),
            n: p.n(),
            entries: p
                .iter()
                .map(|(s, v)| Entry { subset: s.to_vec(), value: format_rat(v), provenance: None })
                .collect(),
            note: None,
        }
    }

    /// Subsets with no entry, in lex order.
    pub fn missing(&self) -> Result<Vec<Subset>> {
        let shape = Shape::new(self.k, self.n)?;
        let mut present = Vec::new();
        for e in &self.entries {
            present.push(parse_subset(shape, &e.subset)?);
        }
        present.sort();
        Ok(shape.subsets().into_iter().filter(|s| present.binary_search(s).is_err()).collect())
    }

    pub fn to_pattern(&self) -> Result<FriezePattern> {
        check_version(self.format_version)?;
        let shape = Shape::new(self.k, self.n)?;
        let mut values = BTreeMap::new();
        for e in &self.entries {
            let s = parse_subset(shape, &e.subset)?;
            if values.insert(s, parse_rat(&e.value)?).is_some() {
                return Err(FriezeError::Parse(format!("duplicate entry for {s}")));
            }
        }
        FriezePattern::new(shape, values)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterDocument {
    pub format_version: u32,
    pub k: usize,
    pub n: usize,
    #[serde(default)]
    pub maximal: bool,
    pub members: Vec<Vec<usize>>,
}

impl ClusterDocument {
    pub fn from_collection(c: &WsCollection) -> Self {
        ClusterDocument {
            format_version: FORMAT_VERSION,
            k: c.shape().k(),
            n: c.shape().n(),
            maximal: c.is_maximal(),
            members: c.members().iter().map(|s| s.to_vec()).collect(),
        }
    }

    /// Checks weak separation, and maximality when the document claims it.
    pub fn to_collection(&self) -> Result<WsCollection> {
        check_version(self.format_version)?;
        let shape = Shape::new(self.k, self.n)?;
        let members = self
            .members
            .iter()
            .map(|m| parse_subset(shape, m))
            .collect::<Result<Vec<_>>>()?;
        if self.maximal {
            WsCollection::cluster(shape, members)
        } else {
            WsCollection::new(shape, members)
        }
    }
}

/// Rows `0..=n-k` of an SL_k-frieze over one period.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlkDocument {
    pub format_version: u32,
    pub k: usize,
    pub n: usize,
    pub rows: Vec<Vec<String>>,
}

impl SlkDocument {
    pub fn from_frieze(f: &SlkFrieze) -> Self {
        SlkDocument { format_version: FORMAT_VERSION, k: f.k(), n: f.n(), rows: format_grid(f.rows()) }
    }

    pub fn to_frieze(&self) -> Result<SlkFrieze> {
        check_version(self.format_version)?;
        SlkFrieze::from_rows(self.k, self.n, parse_grid(&self.rows)?)
    }
}

/// A `k x n` matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub format_version: u32,
    pub k: usize,
    pub n: usize,
    pub rows: Vec<Vec<String>>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &[Vec<Rat>]) -> Self {
        MatrixDocument {
            format_version: FORMAT_VERSION,
            k: m.len(),
            n: m.first().map_or(0, Vec::len),
            rows: format_grid(m),
        }
    }

    pub fn to_matrix(&self) -> Result<Vec<Vec<Rat>>> {
        check_version(self.format_version)?;
        if self.rows.len() != self.k || self.rows.iter().any(|r| r.len() != self.n) {
            return Err(FriezeError::Parse(format!("matrix rows do not match {} x {}", self.k, self.n)));
        }
        parse_grid(&self.rows)
    }
}

/// A (3,n) cross-sectional triangle, rows base first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossSectionDocument {
    pub format_version: u32,
    pub n: usize,
    pub x: usize,
    pub rows: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CrossSectionDocument {
    pub fn from_section(s: &CrossSection) -> Self {
        CrossSectionDocument {
            format_version: FORMAT_VERSION,
            n: s.n(),
            x: s.x(),
            rows: format_grid(&s.rows()),
            note: None,
        }
    }

    pub fn to_section(&self) -> Result<CrossSection> {
        check_version(self.format_version)?;
        CrossSection::from_rows(self.n, self.x, &parse_grid(&self.rows)?)
    }
}

/// Interior rows of a classical frieze over one period.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterArrayDocument {
    pub format_version: u32,
    pub n: usize,
    pub rows: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CoxeterArrayDocument {
    pub fn from_array(a: &CoxeterArray) -> Self {
        CoxeterArrayDocument { format_version: FORMAT_VERSION, n: a.n(), rows: format_grid(a.rows()), note: None }
    }

    pub fn to_array(&self) -> Result<CoxeterArray> {
        check_version(self.format_version)?;
        CoxeterArray::new(self.n, parse_grid(&self.rows)?)
    }
}

/// Any document, recognized by its fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Frieze(FriezeDocument),
    Cluster(ClusterDocument),
    Clusters(Vec<ClusterDocument>),
    Slk(SlkDocument),
    Matrix(MatrixDocument),
    CrossSection(CrossSectionDocument),
    CoxeterArray(CoxeterArrayDocument),
}

impl Document {
    /// `entries` marks a frieze, `members` a cluster, `x` a cross-section.
    /// Grids with a `k` have `k` rows as a matrix and `n-k+1` as an SL_k
    /// frieze; grids without one are classical arrays.
    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| FriezeError::Parse(e.to_string()))?;
        let decode = |v: Value| -> Result<Document> {
            let has = |key: &str| v.get(key).is_some();
            let err = |e: serde_json::Error| FriezeError::Parse(e.to_string());
            if has("entries") {
                Ok(Document::Frieze(serde_json::from_value(v).map_err(err)?))
            } else if has("members") {
                Ok(Document::Cluster(serde_json::from_value(v).map_err(err)?))
            } else if has("x") {
                Ok(Document::CrossSection(serde_json::from_value(v).map_err(err)?))
            } else if has("k") && has("rows") {
                let k = v["k"].as_u64().unwrap_or(0) as usize;
                let rows = v["rows"].as_array().map_or(0, Vec::len);
                if rows == k {
                    Ok(Document::Matrix(serde_json::from_value(v).map_err(err)?))
                } else {
                    Ok(Document::Slk(serde_json::from_value(v).map_err(err)?))
                }
            } else if has("rows") {
                Ok(Document::CoxeterArray(serde_json::from_value(v).map_err(err)?))
            } else {
                Err(FriezeError::Parse("unrecognized document".into()))
            }
        };
        match value {
            Value::Array(items) => {
                let mut out = Vec::new();
                for item in items {
                    match decode(item)? {
                        Document::Cluster(c) => out.push(c),
                        _ => return Err(FriezeError::Parse("arrays may only hold cluster documents".into())),
                    }
                }
                Ok(Document::Clusters(out))
            }
            other => decode(other),
        }
    }

    /// Indented JSON in which containers nested more than two levels deep
    /// (single entries, subsets, grid rows) stay on one line.
    pub fn to_json(&self) -> String {
        match self {
            Document::Frieze(d) => to_json(d),
            Document::Cluster(d) => to_json(d),
            Document::Clusters(d) => to_json(d),
            Document::Slk(d) => to_json(d),
            Document::Matrix(d) => to_json(d),
            Document::CrossSection(d) => to_json(d),
            Document::CoxeterArray(d) => to_json(d),
        }
    }
}

pub(crate) fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, ShallowPretty::default());
    value.serialize(&mut ser).expect("documents serialize");
    String::from_utf8(out).expect("utf-8") + "\n"
}

const WRAP_DEPTH: usize = 2;

#[derive(Default)]
struct ShallowPretty {
    depth: usize,
    has_value: bool,
}

impl ShallowPretty {
    fn newline<W: ?Sized + io::Write>(&self, w: &mut W, depth: usize) -> io::Result<()> {
        w.write_all(b"\n")?;
        for _ in 0..depth {
            w.write_all(b"  ")?;
        }
        Ok(())
    }

    fn open<W: ?Sized + io::Write>(&mut self, w: &mut W, bracket: &[u8]) -> io::Result<()> {
        self.depth += 1;
        self.has_value = false;
        w.write_all(bracket)
    }

    fn close<W: ?Sized + io::Write>(&mut self, w: &mut W, bracket: &[u8]) -> io::Result<()> {
        self.depth -= 1;
        if self.depth < WRAP_DEPTH && self.has_value {
            self.newline(w, self.depth)?;
        }
        self.has_value = true;
        w.write_all(bracket)
    }

    fn item<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if !first {
            w.write_all(b",")?;
        }
        if self.depth <= WRAP_DEPTH {
            self.newline(w, self.depth)
        } else if first {
            Ok(())
        } else {
            w.write_all(b" ")
        }
    }
}

impl Formatter for ShallowPretty {
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.open(w, b"[")
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.close(w, b"]")
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.item(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.open(w, b"{")
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.close(w, b"}")
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.item(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(b": ")
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }
}
