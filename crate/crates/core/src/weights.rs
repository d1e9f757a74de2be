use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::census::Label;
use crate::error::{Error, Result};

/// Torus weights `lambda_0..lambda_N`, pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightAssignment {
    lambdas: Vec<BigRational>,
}

impl WeightAssignment {
    pub fn new(lambdas: Vec<BigRational>) -> Result<Self> {
        if lambdas.len() < 2 {
            return Err(Error::Domain("need at least two weights".into()));
        }
        for (a, x) in lambdas.iter().enumerate() {
            if lambdas[a + 1..].contains(x) {
                return Err(Error::Domain(format!("weight {x} repeated")));
            }
        }
        Ok(WeightAssignment { lambdas })
    }

    pub fn from_integers(values: &[i64]) -> Result<Self> {
        WeightAssignment::new(values.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
    }

    pub fn lambda(&self, label: Label) -> &BigRational {
        &self.lambdas[label as usize]
    }

    pub fn lambdas(&self) -> &[BigRational] {
        &self.lambdas
    }

    /// `N`, the largest label these weights cover.
    pub fn max_label(&self) -> Label {
        (self.lambdas.len() - 1) as Label
    }

    pub fn scaled(&self, c: &BigRational) -> Result<Self> {
        WeightAssignment::new(self.lambdas.iter().map(|l| l * c).collect())
    }

    /// Weights with `out[perm[i]] = self[i]`.
    pub fn permuted(&self, perm: &[Label]) -> Result<Self> {
        if perm.len() != self.lambdas.len() {
            return Err(Error::Domain("permutation length mismatch".into()));
        }
        let mut out = self.lambdas.clone();
        for (i, &p) in perm.iter().enumerate() {
            out[p as usize] = self.lambdas[i].clone();
        }
        WeightAssignment::new(out)
    }
}

/// Deterministic pseudo-random weights for `(seed, attempt)`: `N+1`
/// pairwise-distinct nonzero integers drawn from the full `i64` range.
pub fn draw_weights(max_label: Label, seed: u64, attempt: u64) -> WeightAssignment {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(attempt);
    let mut seen = HashSet::new();
    let mut values = Vec::with_capacity(max_label as usize + 1);
    while values.len() <= max_label as usize {
        let v: i64 = rng.gen();
        if v != 0 && seen.insert(v) {
            values.push(v);
        }
    }
    WeightAssignment::from_integers(&values).expect("values are distinct by construction")
}
