//! Torus-fixed-locus graphs of the moduli space of genus-0 stable maps to
//! projective space, enumerated up to isomorphism.
//!
//! A fixed stable map with no marked points is encoded by a tree whose
//! vertices carry a fixed-point label and whose edges carry the degree of
//! the cover of the coordinate line joining the labels at its ends.
//! Isomorphisms must preserve both decorations.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Index of a torus-fixed point `q_i`, `0 <= i <= N`.
pub type Label = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub degree: u32,
}

impl Edge {
    pub fn new(u: usize, v: usize, degree: u32) -> Self {
        Edge { u, v, degree }
    }
}

/// A representative of a fixed-locus graph: a simple tree with vertex labels
/// in `0..=max_label` (distinct across every edge) and positive edge degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredTree {
    max_label: Label,
    labels: Vec<Label>,
    edges: Vec<Edge>,
}

impl ColoredTree {
    pub fn new(max_label: Label, labels: Vec<Label>, edges: Vec<Edge>) -> Result<Self> {
        if max_label < 1 {
            return Err(Error::Domain(format!(
                "fixed-point index bound must be >= 1, got {max_label}"
            )));
        }
        let n = labels.len();
        if n < 2 {
            return Err(Error::InvalidTree("a fixed-locus tree needs at least one edge".into()));
        }
        if edges.len() + 1 != n {
            return Err(Error::InvalidTree(format!(
                "{} vertices need {} edges, got {}",
                n,
                n - 1,
                edges.len()
            )));
        }
        if let Some(&l) = labels.iter().find(|&&l| l > max_label) {
            return Err(Error::InvalidTree(format!("label {l} exceeds bound {max_label}")));
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &edges {
            if e.u >= n || e.v >= n {
                return Err(Error::InvalidTree(format!("edge ({}, {}) out of range", e.u, e.v)));
            }
            if e.u == e.v {
                return Err(Error::InvalidTree(format!("self-loop at vertex {}", e.u)));
            }
            if e.degree == 0 {
                return Err(Error::InvalidTree("edge degrees must be >= 1".into()));
            }
            if labels[e.u] == labels[e.v] {
                return Err(Error::InvalidTree(format!(
                    "edge ({}, {}) joins two vertices labelled {}",
                    e.u, e.v, labels[e.u]
                )));
            }
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a == b {
                return Err(Error::InvalidTree("edges contain a cycle".into()));
            }
            parent[a] = b;
        }
        Ok(ColoredTree { max_label, labels, edges })
    }

    /// The tree with a single edge `q_i -- q_j` of the given degree.
    pub fn single_edge(max_label: Label, i: Label, j: Label, degree: u32) -> Result<Self> {
        ColoredTree::new(max_label, vec![i, j], vec![Edge::new(0, 1, degree)])
    }

    /// A path through `labels` with consecutive edge degrees `degrees`.
    pub fn path(max_label: Label, labels: &[Label], degrees: &[u32]) -> Result<Self> {
        if degrees.len() + 1 != labels.len() {
            return Err(Error::InvalidTree("path needs one degree per edge".into()));
        }
        let edges = degrees.iter().enumerate().map(|(k, &d)| Edge::new(k, k + 1, d)).collect();
        ColoredTree::new(max_label, labels.to_vec(), edges)
    }

    /// The bound `N` on fixed-point labels (ambient space `P^N`).
    pub fn max_label(&self) -> Label {
        self.max_label
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Label {
        self.labels[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Total degree `sum_e d_e`.
    pub fn degree(&self) -> u32 {
        self.edges.iter().map(|e| e.degree).sum()
    }

    /// Number of edges at each vertex.
    pub fn valences(&self) -> Vec<usize> {
        let mut val = vec![0; self.labels.len()];
        for e in &self.edges {
            val[e.u] += 1;
            val[e.v] += 1;
        }
        val
    }

    /// Labels at the two ends of `e`, in `(u, v)` order.
    pub fn edge_labels(&self, e: &Edge) -> (Label, Label) {
        (self.labels[e.u], self.labels[e.v])
    }

    /// Edges incident to each vertex, as `(neighbour, degree)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, u32)>> {
        let mut adj = vec![Vec::new(); self.labels.len()];
        for e in &self.edges {
            adj[e.u].push((e.v, e.degree));
            adj[e.v].push((e.u, e.degree));
        }
        adj
    }

    /// Apply a permutation of the fixed points `0..=N` to the vertex labels.
    pub fn relabeled(&self, perm: &[Label]) -> Result<Self> {
        if perm.len() != self.max_label as usize + 1 {
            return Err(Error::Domain("permutation must act on all N+1 fixed points".into()));
        }
        let labels = self.labels.iter().map(|&l| perm[l as usize]).collect();
        ColoredTree::new(self.max_label, labels, self.edges.clone())
    }

    /// Union of `self` and `other` identifying vertex `at_self` with
    /// `at_other`. Both vertices must carry the same label.
    pub fn glue(&self, at_self: usize, other: &ColoredTree, at_other: usize) -> Result<Self> {
        if self.max_label != other.max_label {
            return Err(Error::Domain("glued trees must share the label bound".into()));
        }
        if at_self >= self.vertex_count() || at_other >= other.vertex_count() {
            return Err(Error::Domain("gluing vertex out of range".into()));
        }
        if self.labels[at_self] != other.labels[at_other] {
            return Err(Error::Domain("glued vertices carry different labels".into()));
        }
        let offset = self.vertex_count();
        let remap = |w: usize| -> usize {
            match w.cmp(&at_other) {
                std::cmp::Ordering::Equal => at_self,
                std::cmp::Ordering::Less => offset + w,
                std::cmp::Ordering::Greater => offset + w - 1,
            }
        };
        let mut labels = self.labels.clone();
        labels.extend(
            other.labels.iter().enumerate().filter(|&(w, _)| w != at_other).map(|(_, &l)| l),
        );
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge::new(remap(e.u), remap(e.v), e.degree)));
        ColoredTree::new(self.max_label, labels, edges)
    }
}

impl fmt::Display for ColoredTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&canonical_form(self).code)
    }
}

/// An isomorphism class of fixed-locus graphs together with its symmetry data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphClass {
    pub tree: ColoredTree,
    /// Canonical encoding; equal for two trees iff they are isomorphic.
    pub code: String,
    /// `|Aut(tree)|`.
    pub aut_order: u64,
    /// `|Aut| * prod_e d_e`.
    pub a_gamma: u64,
}

impl GraphClass {
    pub fn from_tree(tree: &ColoredTree) -> Self {
        let canon = canonical_form(tree);
        let product: u64 = canon.representative.edges.iter().map(|e| u64::from(e.degree)).product();
        GraphClass {
            a_gamma: canon.aut_order * product,
            tree: canon.representative,
            code: canon.code,
            aut_order: canon.aut_order,
        }
    }
}

/// Number of vertex permutations preserving adjacency, labels and degrees.
pub fn automorphism_order(tree: &ColoredTree) -> u64 {
    canonical_form(tree).aut_order
}

/// All fixed-locus graphs of total degree `degree` with labels in
/// `0..=max_label`, one per isomorphism class, sorted by canonical code.
pub fn enumerate_graphs(max_label: Label, degree: u32) -> Result<Vec<GraphClass>> {
    if max_label < 1 {
        return Err(Error::Domain(format!("N must be >= 1, got {max_label}")));
    }
    if degree < 1 {
        return Err(Error::Domain(format!("degree must be >= 1, got {degree}")));
    }

    let mut jobs = Vec::new();
    for edges in 1..=degree as usize {
        let comps = compositions(degree, edges);
        for shape in unlabeled_trees(edges + 1) {
            for comp in &comps {
                jobs.push((shape.clone(), comp.clone()));
            }
        }
    }

    let found: Vec<Vec<GraphClass>> = jobs
        .par_iter()
        .map(|(shape, comp)| colorings(max_label, shape, comp))
        .collect();

    let mut by_code = BTreeMap::new();
    for class in found.into_iter().flatten() {
        by_code.entry(class.code.clone()).or_insert(class);
    }
    Ok(by_code.into_values().collect())
}

/// Every proper coloring of one (shape, degree assignment), deduplicated
/// locally. `shape` lists `(parent, child)` with `parent < child`.
fn colorings(max_label: Label, shape: &[(usize, usize)], degrees: &[u32]) -> Vec<GraphClass> {
    let n = shape.len() + 1;
    let edges: Vec<Edge> = shape
        .iter()
        .zip(degrees)
        .map(|(&(p, c), &d)| Edge::new(p, c, d))
        .collect();
    let mut parent_of = vec![usize::MAX; n];
    for &(p, c) in shape {
        parent_of[c] = p;
    }

    let mut seen = BTreeMap::new();
    let mut labels = vec![0 as Label; n];
    // Depth-first assignment in vertex order; parents precede children.
    fn assign(
        v: usize,
        labels: &mut Vec<Label>,
        parent_of: &[usize],
        max_label: Label,
        edges: &[Edge],
        seen: &mut BTreeMap<String, GraphClass>,
    ) {
        if v == labels.len() {
            let tree = ColoredTree {
                max_label,
                labels: labels.clone(),
                edges: edges.to_vec(),
            };
            let class = GraphClass::from_tree(&tree);
            seen.entry(class.code.clone()).or_insert(class);
            return;
        }
        for l in 0..=max_label {
            if v > 0 && labels[parent_of[v]] == l {
                continue;
            }
            labels[v] = l;
            assign(v + 1, labels, parent_of, max_label, edges, seen);
        }
    }
    assign(0, &mut labels, &parent_of, max_label, &edges, &mut seen);
    seen.into_values().collect()
}

/// Ordered ways to write `total` as `parts` positive integers.
pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if parts == 0 || (total as usize) < parts {
        return out;
    }
    let mut current = Vec::with_capacity(parts);
    fn rec(remaining: u32, parts: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            current.push(remaining);
            out.push(current.clone());
            current.pop();
            return;
        }
        for first in 1..=remaining - (parts as u32 - 1) {
            current.push(first);
            rec(remaining - first, parts - 1, current, out);
            current.pop();
        }
    }
    rec(total, parts, &mut current, &mut out);
    out
}

/// Unlabeled trees on `n` vertices up to isomorphism, each given as a
/// `(parent, child)` edge list in preorder with vertex 0 as root.
pub(crate) fn unlabeled_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    let mut current: BTreeMap<String, Vec<(usize, usize)>> = BTreeMap::new();
    current.insert(String::new(), Vec::new());
    for size in 1..n {
        let mut next = BTreeMap::new();
        for edges in current.values() {
            for attach in 0..size {
                let mut grown: Vec<Edge> = edges.iter().map(|&(p, c)| Edge::new(p, c, 1)).collect();
                grown.push(Edge::new(attach, size, 1));
                let canon = canonical_parts(&vec![0; size + 1], &grown);
                let shape = canon.representative_edges.iter().map(|e| (e.u, e.v)).collect();
                next.entry(canon.code).or_insert(shape);
            }
        }
        current = next;
    }
    current.into_values().collect()
}

#[derive(Debug, Clone)]
pub(crate) struct Canonical {
    pub code: String,
    pub aut_order: u64,
    pub representative: ColoredTree,
}

pub(crate) fn canonical_form(tree: &ColoredTree) -> Canonical {
    let parts = canonical_parts(&tree.labels, &tree.edges);
    Canonical {
        code: parts.code,
        aut_order: parts.aut_order,
        representative: ColoredTree {
            max_label: tree.max_label,
            labels: parts.representative_labels,
            edges: parts.representative_edges,
        },
    }
}

struct CanonicalParts {
    code: String,
    aut_order: u64,
    representative_labels: Vec<Label>,
    representative_edges: Vec<Edge>,
}

/// A subtree hanging below some vertex, with children in canonical order.
struct Rooted {
    vertex: usize,
    code: String,
    aut: u64,
    children: Vec<(u32, Rooted)>,
}

fn rooted(adj: &[Vec<(usize, u32)>], labels: &[Label], v: usize, parent: Option<usize>) -> Rooted {
    let mut children: Vec<(u32, Rooted)> = adj[v]
        .iter()
        .filter(|&&(w, _)| Some(w) != parent)
        .map(|&(w, d)| (d, rooted(adj, labels, w, Some(v))))
        .collect();
    children.sort_by(|a, b| (a.0, &a.1.code).cmp(&(b.0, &b.1.code)));

    let mut aut: u64 = children.iter().map(|(_, c)| c.aut).product();
    let mut run = 1u64;
    for k in 1..children.len() {
        let same = children[k].0 == children[k - 1].0 && children[k].1.code == children[k - 1].1.code;
        if same {
            run += 1;
            aut *= run;
        } else {
            run = 1;
        }
    }

    let mut code = format!("{}(", labels[v]);
    for (k, (d, c)) in children.iter().enumerate() {
        if k > 0 {
            code.push(',');
        }
        code.push_str(&format!("{}:{}", d, c.code));
    }
    code.push(')');
    Rooted { vertex: v, code, aut, children }
}

fn centroids(adj: &[Vec<(usize, u32)>]) -> Vec<usize> {
    let n = adj.len();
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut stack = vec![0usize];
    let mut visited = vec![false; n];
    visited[0] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &(w, _) in &adj[v] {
            if !visited[w] {
                visited[w] = true;
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if parent[v] != usize::MAX {
            size[parent[v]] += size[v];
        }
    }
    (0..n)
        .filter(|&v| {
            let mut largest = n - size[v];
            for &(w, _) in &adj[v] {
                if parent[w] == v {
                    largest = largest.max(size[w]);
                }
            }
            2 * largest <= n
        })
        .collect()
}

fn canonical_parts(labels: &[Label], edges: &[Edge]) -> CanonicalParts {
    let n = labels.len();
    let mut adj = vec![Vec::new(); n];
    for e in edges {
        adj[e.u].push((e.v, e.degree));
        adj[e.v].push((e.u, e.degree));
    }
    let cents = centroids(&adj);

    let (root, aut_order) = match cents.as_slice() {
        [c] => {
            let r = rooted(&adj, labels, *c, None);
            let aut = r.aut;
            (r, aut)
        }
        [c1, c2] => {
            let h1 = rooted(&adj, labels, *c1, Some(*c2));
            let h2 = rooted(&adj, labels, *c2, Some(*c1));
            let swap = if h1.code == h2.code { 2 } else { 1 };
            let aut = h1.aut * h2.aut * swap;
            let r1 = rooted(&adj, labels, *c1, None);
            let r2 = rooted(&adj, labels, *c2, None);
            (if r1.code <= r2.code { r1 } else { r2 }, aut)
        }
        _ => unreachable!("a tree has one or two centroids"),
    };

    let mut representative_labels = Vec::with_capacity(n);
    let mut representative_edges = Vec::with_capacity(n.saturating_sub(1));
    fn preorder(node: &Rooted, labels: &[Label], out_labels: &mut Vec<Label>, out_edges: &mut Vec<Edge>) {
        let me = out_labels.len();
        out_labels.push(labels[node.vertex]);
        for (d, child) in &node.children {
            let idx = out_labels.len();
            out_edges.push(Edge::new(me, idx, *d));
            preorder(child, labels, out_labels, out_edges);
        }
    }
    preorder(&root, labels, &mut representative_labels, &mut representative_edges);

    CanonicalParts {
        code: root.code,
        aut_order,
        representative_labels,
        representative_edges,
    }
}
