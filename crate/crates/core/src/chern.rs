//! Second route to the incidence class: Chern characters of `pi_* L(a)`
//! restricted to a graph, solved for the top unknown by Cramer's rule
//! against the matrix `V[a][k] = a^k`.
//!
//! This path is slower than [`crate::classes::incidence_class`] and exists
//! to cross-check it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::census::{ColoredTree, Label};
use crate::error::{Error, Result};
use crate::weights::WeightAssignment;

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Values `ch_r(pi_* L(a))` at the graph for `a = 1..=r+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterVector {
    pub values: Vec<BigRational>,
}

impl CharacterVector {
    pub fn for_tree(tree: &ColoredTree, r: u32, w: &WeightAssignment) -> Self {
        let values = (1..=r + 1).map(|a| tree_character(tree, a, r, w)).collect();
        CharacterVector { values }
    }
}

/// `(1/r!) sum_{k=0}^{a d} (((a d - k) l_i + k l_j) / d)^r` for one edge of
/// degree `d` between fixed points `i` and `j`.
pub fn edge_character(
    degree: u32,
    i: Label,
    j: Label,
    a: u32,
    r: u32,
    w: &WeightAssignment,
) -> BigRational {
    let (li, lj) = (w.lambda(i), w.lambda(j));
    let top = i64::from(a) * i64::from(degree);
    let d = int(degree);
    let mut sum = BigRational::zero();
    for k in 0..=top {
        let weight = (li * int(top - k) + lj * int(k)) / &d;
        sum += weight.pow(r as i32);
    }
    sum / int(factorial(r))
}

/// Character of the whole tree: edge characters minus one vertex term
/// `a^r l_v^r / r!` for each of the `val(v) - 1` gluings at `v`.
pub fn tree_character(tree: &ColoredTree, a: u32, r: u32, w: &WeightAssignment) -> BigRational {
    let mut total = BigRational::zero();
    for e in tree.edges() {
        let (i, j) = tree.edge_labels(e);
        total += edge_character(e.degree, i, j, a, r, w);
    }
    let scale = int(BigInt::from(a).pow(r)) / int(factorial(r));
    for (v, val) in tree.valences().into_iter().enumerate() {
        if val > 1 {
            let vertex_term = w.lambda(tree.label(v)).pow(r as i32) * &scale;
            total -= vertex_term * int(val as u64 - 1);
        }
    }
    total
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&row| !m[row][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for row in col + 1..n {
            if m[row][col].is_zero() {
                continue;
            }
            let factor = &m[row][col] / &p;
            for k in col..n {
                let sub = &factor * &m[col][k];
                m[row][k] -= sub;
            }
        }
    }
    det
}

/// `V[a][k] = a^k` for `a, k = 1..=size`.
pub fn power_matrix(size: usize) -> Vec<Vec<BigRational>> {
    (1..=size)
        .map(|a| (1..=size).map(|k| int(BigInt::from(a).pow(k as u32))).collect())
        .collect()
}

/// Given right-hand sides `b_a` for `a = 1..=r+1`, solve `V x = b` for the
/// last unknown by Cramer's rule and return `(r+1)! * x_{r+1}`.
pub fn cramer_top(rhs: &[BigRational]) -> Result<BigRational> {
    let size = rhs.len();
    if size == 0 {
        return Err(Error::Domain("empty linear system".into()));
    }
    let v = power_matrix(size);
    let det_v = determinant(v.clone());
    if det_v.is_zero() {
        return Err(Error::Verification("power matrix is singular".into()));
    }
    let mut replaced = v;
    for (row, b) in replaced.iter_mut().zip(rhs) {
        row[size - 1] = b.clone();
    }
    Ok(determinant(replaced) / det_v * int(factorial(size as u32)))
}

/// Incidence class for codimension `r + 1`, recovered from the Chern
/// characters of `pi_* L(1), ..., pi_* L(r+1)`.
pub fn incidence_via_cramer(tree: &ColoredTree, r: u32, w: &WeightAssignment) -> Result<BigRational> {
    if r < 1 || r >= tree.max_label() {
        return Err(Error::Domain(format!(
            "codimension {} outside 2..={}",
            r + 1,
            tree.max_label()
        )));
    }
    if w.max_label() != tree.max_label() {
        return Err(Error::Domain("weights do not match the tree's label bound".into()));
    }
    cramer_top(&CharacterVector::for_tree(tree, r, w).values)
}

/// `S^q(m) = sum_{k=1}^{m} k^q`.
pub fn faulhaber_sum(q: u32, m: u64) -> BigRational {
    let total: BigInt = (1..=m).map(|k| BigInt::from(k).pow(q)).sum();
    int(total)
}

/// Dense polynomial over the rationals, coefficients in increasing degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    /// `c * x^k`
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Polynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        Polynomial::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + other.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// The unique polynomial of degree `<= values.len() - 1` taking
    /// `values[x]` at `x = 0, 1, ...`, via Newton forward differences.
    pub fn interpolate(values: &[BigRational]) -> Polynomial {
        let mut diffs = values.to_vec();
        let mut leading = Vec::with_capacity(values.len());
        for _ in 0..values.len() {
            leading.push(diffs[0].clone());
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        // binom(x, k) built up as the falling factorial over k!
        let mut result = Polynomial::zero();
        let mut falling = Polynomial::new(vec![BigRational::one()]);
        for (k, delta) in leading.iter().enumerate() {
            let term = falling.scale(&(delta / int(factorial(k as u32))));
            result = result.add(&term);
            let step = Polynomial::new(vec![int(-(k as i64)), BigRational::one()]);
            falling = falling.mul(&step);
        }
        result
    }
}

/// Faulhaber polynomial `S^q(x)` of degree `q + 1` with `S^q(m) = sum_{k=1}^m k^q`.
pub fn faulhaber_polynomial(q: u32) -> Polynomial {
    let values: Vec<BigRational> = (0..=u64::from(q) + 1).map(|m| faulhaber_sum(q, m)).collect();
    Polynomial::interpolate(&values)
}

/// `p(x) = C(r,t) sum_{j=0}^{t} (-1)^j C(t,j) x^(t-j) P_{r+j-t}(x)` where
/// `P_q(m) = sum_{k=0}^{m} k^q`. `P_q` equals `S^q` except at `q = 0`,
/// where the `k = 0` term contributes one.
pub fn claim_polynomial(r: u32, t: u32) -> Polynomial {
    let mut p = Polynomial::zero();
    for j in 0..=t {
        let q = r + j - t;
        let mut power_sum = faulhaber_polynomial(q);
        if q == 0 {
            power_sum = power_sum.add(&Polynomial::new(vec![BigRational::one()]));
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let c = int(binomial(t, j) * sign);
        p = p.add(&Polynomial::monomial(c, (t - j) as usize).mul(&power_sum));
    }
    p.scale(&int(binomial(r, t)))
}

/// `C(r,t) sum_{k=0}^{m} (m-k)^t k^(r-t)`, with `0^0 = 1`.
pub fn claim_target(r: u32, t: u32, m: u64) -> BigRational {
    let total: BigInt = (0..=m)
        .map(|k| BigInt::from(m - k).pow(t) * BigInt::from(k).pow(r - t))
        .sum();
    int(total * binomial(r, t))
}
