//! On-disk census cache.
//!
//! One header line followed by one tab-separated record per class:
//!
//! ```text
//! # legendrian-census format=1 N=3 d=2 classes=30
//! 0(1:1())	1	0-1:1	0,1
//! ```
//!
//! Fields are the canonical code, `|Aut|`, the edge list `u-v:d_e` and the
//! vertex labels. Rendering a parsed census reproduces the input exactly.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::census::{enumerate_graphs, ColoredTree, Edge, GraphClass, Label};
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// Environment variable naming the cache directory.
pub const CACHE_DIR_ENV: &str = "LEGENDRIAN_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub max_label: Label,
    pub degree: u32,
    pub classes: Vec<GraphClass>,
}

impl Census {
    pub fn enumerate(max_label: Label, degree: u32) -> Result<Self> {
        Ok(Census {
            max_label,
            degree,
            classes: enumerate_graphs(max_label, degree)?,
        })
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "# legendrian-census format={} N={} d={} classes={}\n",
            FORMAT_VERSION,
            self.max_label,
            self.degree,
            self.classes.len()
        );
        for g in &self.classes {
            let edges: Vec<String> = g
                .tree
                .edges()
                .iter()
                .map(|e| format!("{}-{}:{}", e.u, e.v, e.degree))
                .collect();
            let labels: Vec<String> = g.tree.labels().iter().map(|l| l.to_string()).collect();
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                g.code,
                g.aut_order,
                edges.join(","),
                labels.join(",")
            ));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::CacheFormat(msg);
        let mut lines = text.split_terminator('\n');
        let header = lines.next().ok_or_else(|| bad("empty file".into()))?;
        let fields: Vec<&str> = header.split(' ').collect();
        if fields.len() != 6 || fields[0] != "#" || fields[1] != "legendrian-census" {
            return Err(bad(format!("unrecognised header {header:?}")));
        }
        let value = |field: &str, key: &str| -> Result<u64> {
            field
                .strip_prefix(key)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| bad(format!("bad header field {field:?}")))
        };
        let version = value(fields[2], "format=")?;
        if version != u64::from(FORMAT_VERSION) {
            return Err(bad(format!("format version {version}, expected {FORMAT_VERSION}")));
        }
        let max_label = value(fields[3], "N=")? as Label;
        let degree = value(fields[4], "d=")? as u32;
        let expected = value(fields[5], "classes=")? as usize;

        let mut classes = Vec::with_capacity(expected);
        for (lineno, line) in lines.enumerate() {
            let parts: Vec<&str> = line.split('\t').collect();
            if parts.len() != 4 {
                return Err(bad(format!("record {}: expected 4 fields", lineno + 1)));
            }
            let aut_order: u64 = parts[1]
                .parse()
                .map_err(|_| bad(format!("record {}: bad automorphism order", lineno + 1)))?;
            let edges = parts[2]
                .split(',')
                .map(|s| parse_edge(s).ok_or_else(|| bad(format!("record {}: bad edge {s:?}", lineno + 1))))
                .collect::<Result<Vec<_>>>()?;
            let labels = parts[3]
                .split(',')
                .map(|s| s.parse::<Label>().map_err(|_| bad(format!("record {}: bad label {s:?}", lineno + 1))))
                .collect::<Result<Vec<_>>>()?;
            let tree = ColoredTree::new(max_label, labels, edges)?;
            let class = GraphClass::from_tree(&tree);
            if class.code != parts[0] || class.aut_order != aut_order || class.tree != tree {
                return Err(bad(format!("record {} is not a canonical class", lineno + 1)));
            }
            if tree.degree() != degree {
                return Err(bad(format!("record {} has degree {}", lineno + 1, tree.degree())));
            }
            classes.push(class);
        }
        if classes.len() != expected {
            return Err(bad(format!("header promises {expected} classes, found {}", classes.len())));
        }
        Ok(Census { max_label, degree, classes })
    }
}

fn parse_edge(s: &str) -> Option<Edge> {
    let (ends, degree) = s.split_once(':')?;
    let (u, v) = ends.split_once('-')?;
    Some(Edge::new(u.parse().ok()?, v.parse().ok()?, degree.parse().ok()?))
}

pub fn cache_path(dir: &Path, max_label: Label, degree: u32) -> PathBuf {
    dir.join(format!("census-N{max_label}-d{degree}-v{FORMAT_VERSION}.txt"))
}

/// Cache directory from [`CACHE_DIR_ENV`], if set and non-empty.
pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

/// Read the census for `(N, d)` from `dir`, enumerating and storing it when
/// missing or unreadable.
pub fn load_or_enumerate(dir: &Path, max_label: Label, degree: u32) -> Result<Census> {
    let path = cache_path(dir, max_label, degree);
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(census) = Census::parse(&text) {
            if census.max_label == max_label && census.degree == degree {
                return Ok(census);
            }
        }
    }
    let census = Census::enumerate(max_label, degree)?;
    store(dir, &census)?;
    Ok(census)
}

pub fn store(dir: &Path, census: &Census) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, census.max_label, census.degree);
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(census.render().as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, &path)?;
    Ok(path)
}
