//! Equivariant classes restricted to a fixed-locus graph, evaluated at a
//! numeric weight assignment.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::census::ColoredTree;
use crate::error::{Error, Result};
use crate::weights::WeightAssignment;

fn rational(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn check_weights(tree: &ColoredTree, w: &WeightAssignment) -> Result<()> {
    if w.max_label() != tree.max_label() {
        return Err(Error::Domain(format!(
            "tree lives in P^{} but {} weights were supplied",
            tree.max_label(),
            w.lambdas().len()
        )));
    }
    Ok(())
}

fn nonzero(x: BigRational, what: impl FnOnce() -> String) -> Result<BigRational> {
    if x.is_zero() {
        Err(Error::DegenerateWeights(what()))
    } else {
        Ok(x)
    }
}

/// A (vertex, edge) incidence with tangent weight
/// `omega = (lambda_{label(vertex)} - lambda_{far label}) / d_e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    pub vertex: usize,
    pub edge: usize,
    pub omega: BigRational,
}

pub fn flags(tree: &ColoredTree, w: &WeightAssignment) -> Vec<Flag> {
    let mut out = Vec::with_capacity(2 * tree.edge_count());
    for (k, e) in tree.edges().iter().enumerate() {
        let d = rational(e.degree);
        for (near, far) in [(e.u, e.v), (e.v, e.u)] {
            let omega = (w.lambda(tree.label(near)) - w.lambda(tree.label(far))) / &d;
            out.push(Flag { vertex: near, edge: k, omega });
        }
    }
    out
}

/// Top Chern class of the contact obstruction bundle at the graph:
///
/// `prod_e prod_{a=1}^{2d_e-1} (a l_i + (2d_e - a) l_j) / d_e  *  prod_v (2 l_v)^(val(v)-1)`.
pub fn obstruction_euler(tree: &ColoredTree, w: &WeightAssignment) -> Result<BigRational> {
    check_weights(tree, w)?;
    let mut acc = BigRational::one();
    for e in tree.edges() {
        let (li, lj) = (w.lambda(tree.label(e.u)), w.lambda(tree.label(e.v)));
        let d = i64::from(e.degree);
        let denom = rational(d);
        for alpha in 1..2 * d {
            let factor = li * rational(alpha) + lj * rational(2 * d - alpha);
            let factor = nonzero(factor, || format!("obstruction weight vanishes on edge {e:?}"))?;
            acc = acc * factor / &denom;
        }
    }
    for (v, val) in tree.valences().into_iter().enumerate() {
        if val >= 2 {
            let twice = nonzero(w.lambda(tree.label(v)) * rational(2), || {
                format!("lambda_{} = 0 at a vertex of valence {val}", tree.label(v))
            })?;
            acc *= twice.pow(val as i32 - 1);
        }
    }
    Ok(acc)
}

/// Equivariant class of maps meeting a general linear subspace of
/// codimension `r + 1`: `sum_e d_e sum_{t=0}^{r} l_i^t l_j^(r-t)`.
pub fn incidence_class(tree: &ColoredTree, r: u32, w: &WeightAssignment) -> Result<BigRational> {
    check_weights(tree, w)?;
    if r < 1 || r >= tree.max_label() {
        return Err(Error::Domain(format!(
            "codimension {} outside 2..={}",
            r + 1,
            tree.max_label()
        )));
    }
    Ok(incidence_unchecked(tree, r, w))
}

fn powers(x: &BigRational, up_to: u32) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(up_to as usize + 1);
    out.push(BigRational::one());
    for k in 1..=up_to as usize {
        let next = &out[k - 1] * x;
        out.push(next);
    }
    out
}

pub(crate) fn incidence_unchecked(tree: &ColoredTree, r: u32, w: &WeightAssignment) -> BigRational {
    let mut total = BigRational::zero();
    for e in tree.edges() {
        let (li, lj) = (w.lambda(tree.label(e.u)), w.lambda(tree.label(e.v)));
        let pi = powers(li, r);
        let pj = powers(lj, r);
        let edge_sum: BigRational = (0..=r as usize).map(|t| &pi[t] * &pj[r as usize - t]).sum();
        total += edge_sum * rational(e.degree);
    }
    total
}

/// Equivariant Euler class of the normal bundle to the fixed locus, with the
/// psi-class integral over the vertex moduli already carried out.
///
/// The inverse is `prod_v V(v) / prod_e E(e)` where
/// `V(v) = (prod_{k != i} (l_i - l_k))^(val-1) (sum_F 1/w_F)^(val-3) prod_F 1/w_F`
/// and
/// `E(e) = (-1)^d (d!)^2 / d^(2d) (l_i - l_j)^(2d) prod_{k != i,j} prod_{a=0}^{d} ((a l_i + (d-a) l_j)/d - l_k)`.
/// Valence one and two use negative powers of the flag sum.
pub fn normal_bundle_euler(tree: &ColoredTree, w: &WeightAssignment) -> Result<BigRational> {
    check_weights(tree, w)?;
    let n = tree.max_label();
    let valences = tree.valences();
    let all_flags = flags(tree, w);

    let mut vertex_part = BigRational::one();
    for (v, &val) in valences.iter().enumerate() {
        let i = tree.label(v);
        let li = w.lambda(i);
        let mut tangent = BigRational::one();
        for k in (0..=n).filter(|&k| k != i) {
            tangent *= li - w.lambda(k);
        }
        let mut inv_sum = BigRational::zero();
        let mut inv_prod = BigRational::one();
        for f in all_flags.iter().filter(|f| f.vertex == v) {
            let inv = f.omega.recip();
            inv_sum += &inv;
            inv_prod *= inv;
        }
        let psi_exp = val as i32 - 3;
        let psi = if psi_exp == 0 {
            BigRational::one()
        } else {
            nonzero(inv_sum, || format!("flag weights at vertex {v} sum to zero"))?.pow(psi_exp)
        };
        vertex_part *= tangent.pow(val as i32 - 1) * psi * inv_prod;
    }

    let mut edge_part = BigRational::one();
    for e in tree.edges() {
        let (i, j) = tree.edge_labels(e);
        let (li, lj) = (w.lambda(i), w.lambda(j));
        let d = e.degree as i64;
        let dr = rational(d);
        let fact: BigInt = (1..=d).map(BigInt::from).product();
        let mut value = BigRational::new(&fact * &fact, BigInt::from(d).pow(2 * d as u32));
        if d % 2 == 1 {
            value = -value;
        }
        value *= (li - lj).pow(2 * d as i32);
        for k in (0..=n).filter(|&k| k != i && k != j) {
            let lk = w.lambda(k);
            for a in 0..=d {
                let factor = (li * rational(a) + lj * rational(d - a)) / &dr - lk;
                value *= nonzero(factor, || {
                    format!("edge {e:?} meets the weight of q_{k} at a = {a}")
                })?;
            }
        }
        edge_part *= value;
    }

    let inverse = nonzero(vertex_part, || "vertex contributions vanish".into())?;
    Ok(edge_part / inverse)
}
