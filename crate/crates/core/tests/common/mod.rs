//! Independent oracles shared by the integration tests. Nothing here calls
//! into the census canonicalization or the closed-form classes.

#![allow(dead_code)]

use std::collections::BTreeMap;

use legendrian::{BigInt, BigRational, WeightAssignment};

/// A vertex-labeled decorated tree: fixed-point label per vertex and
/// `(min(u,v), max(u,v)) -> degree`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Labeled {
    pub labels: Vec<u32>,
    pub edges: BTreeMap<(usize, usize), u32>,
}

impl Labeled {
    fn permuted(&self, perm: &[usize]) -> Labeled {
        let mut labels = vec![0; self.labels.len()];
        for (v, &l) in self.labels.iter().enumerate() {
            labels[perm[v]] = l;
        }
        let edges = self
            .edges
            .iter()
            .map(|(&(u, v), &d)| {
                let (a, b) = (perm[u], perm[v]);
                ((a.min(b), a.max(b)), d)
            })
            .collect();
        Labeled { labels, edges }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// All labeled trees on `n` vertices, decoded from Prüfer sequences.
fn labeled_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut out = Vec::new();
    let total = n.pow((n - 2) as u32);
    for code in 0..total {
        let mut seq = Vec::with_capacity(n - 2);
        let mut c = code;
        for _ in 0..n - 2 {
            seq.push(c % n);
            c /= n;
        }
        let mut degree = vec![1usize; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf.min(s), leaf.max(s)));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(edges);
    }
    out
}

fn degree_assignments(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 1..total {
        for mut rest in degree_assignments(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every vertex-labeled decorated tree with `vertices` vertices, total
/// degree `degree` and labels in `0..=max_label`, adjacent labels distinct.
pub fn all_labeled(max_label: u32, degree: u32, vertices: usize) -> Vec<Labeled> {
    let mut out = Vec::new();
    if vertices < 2 || vertices - 1 > degree as usize {
        return out;
    }
    let colors = max_label as usize + 1;
    for shape in labeled_trees(vertices) {
        for degs in degree_assignments(degree, vertices - 1) {
            let edges: BTreeMap<(usize, usize), u32> =
                shape.iter().copied().zip(degs.iter().copied()).collect();
            for code in 0..colors.pow(vertices as u32) {
                let mut c = code;
                let labels: Vec<u32> = (0..vertices)
                    .map(|_| {
                        let l = (c % colors) as u32;
                        c /= colors;
                        l
                    })
                    .collect();
                if edges.keys().all(|&(u, v)| labels[u] != labels[v]) {
                    out.push(Labeled { labels, edges: edges.clone() });
                }
            }
        }
    }
    out
}

/// One isomorphism class found by exhaustive search.
#[derive(Debug, Clone)]
pub struct OracleClass {
    pub key: Labeled,
    pub vertices: usize,
    pub aut_order: u64,
    /// How many vertex-labeled structures fall in this class.
    pub orbit: u64,
}

/// Classes of decorated trees of total degree `degree`, by brute-force
/// minimization over all vertex permutations.
pub fn brute_force_census(max_label: u32, degree: u32) -> Vec<OracleClass> {
    let mut classes: BTreeMap<Labeled, OracleClass> = BTreeMap::new();
    for vertices in 2..=degree as usize + 1 {
        let perms = permutations(vertices);
        for t in all_labeled(max_label, degree, vertices) {
            let images: Vec<Labeled> = perms.iter().map(|p| t.permuted(p)).collect();
            let key = images.iter().min().unwrap().clone();
            let aut = images.iter().filter(|img| **img == t).count() as u64;
            let entry = classes.entry(key.clone()).or_insert(OracleClass {
                key,
                vertices,
                aut_order: aut,
                orbit: 0,
            });
            assert_eq!(entry.aut_order, aut, "stabilizer sizes differ inside one orbit");
            entry.orbit += 1;
        }
    }
    classes.into_values().collect()
}

/// Key of an arbitrary tree under the brute-force canonicalization.
pub fn brute_force_key(labels: &[u32], edges: &[(usize, usize, u32)]) -> Labeled {
    let t = Labeled {
        labels: labels.to_vec(),
        edges: edges.iter().map(|&(u, v, d)| ((u.min(v), u.max(v)), d)).collect(),
    };
    permutations(labels.len()).iter().map(|p| t.permuted(p)).min().unwrap()
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn weights(values: &[i64]) -> WeightAssignment {
    WeightAssignment::from_integers(values).unwrap()
}

/// `prod_{k != i,j} (l_i - l_k)(l_j - l_k)`, the normal-bundle class of a
/// degree-one line written out by hand.
pub fn line_denominator(w: &WeightAssignment, i: u32, j: u32) -> BigRational {
    let mut out = int(1);
    for k in 0..=w.max_label() {
        if k != i && k != j {
            out *= (w.lambda(i) - w.lambda(k)) * (w.lambda(j) - w.lambda(k));
        }
    }
    out
}

/// Small deterministic pseudo-random sequence for picking test weights.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next_i64(&mut self, span: i64) -> i64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((self.0 >> 33) as i64 % (2 * span + 1)) - span
    }

    pub fn distinct(&mut self, count: usize, span: i64) -> Vec<i64> {
        let mut out: Vec<i64> = Vec::with_capacity(count);
        while out.len() < count {
            let v = self.next_i64(span);
            if v != 0 && !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }
}
