//! Bott localization sum for contact curve counts.
//!
//! The number of rational contact curves of degree `d` in `P^{2n+1}` meeting
//! `a_c` general linear subspaces of codimension `c` is the integral over the
//! space of stable maps of the obstruction class times the incidence classes.
//! Localizing to torus-fixed graphs turns it into a finite sum of rational
//! functions in the torus weights, which is evaluated here at random integer
//! weights, at least twice, and must come out to the same integer each time.

use std::fmt;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::cache;
use crate::census::{GraphClass, Label};
use crate::chern::incidence_via_cramer;
use crate::classes::{incidence_class, normal_bundle_euler, obstruction_euler};
use crate::error::{Error, Result};
use crate::weights::{draw_weights, WeightAssignment};

/// Multiplicities `a_2, ..., a_{2n+1}` of general subspaces of each
/// codimension, with an optional degree for the subvarieties in each slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncidenceSpec {
    n: u32,
    counts: Vec<u32>,
    multipliers: Vec<u64>,
}

impl IncidenceSpec {
    /// `counts[k]` is the number of conditions of codimension `k + 2`;
    /// exactly `2n` entries are required.
    pub fn new(n: u32, counts: Vec<u32>) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain(format!("contact parameter n must be >= 1, got {n}")));
        }
        let expected = 2 * n as usize;
        if counts.len() != expected {
            return Err(Error::ConditionArity { expected, got: counts.len() });
        }
        let multipliers = vec![1; expected];
        Ok(IncidenceSpec { n, counts, multipliers })
    }

    /// Build from `(codimension, multiplicity)` pairs; unlisted
    /// codimensions get multiplicity zero.
    pub fn from_codimensions(n: u32, pairs: &[(u32, u32)]) -> Result<Self> {
        let max = 2 * n + 1;
        let mut counts = vec![0; 2 * n as usize];
        for &(c, a) in pairs {
            if !(2..=max).contains(&c) {
                return Err(Error::CodimensionRange { codim: c, max });
            }
            counts[(c - 2) as usize] += a;
        }
        IncidenceSpec::new(n, counts)
    }

    /// Every subvariety of codimension `k + 2` has degree `multipliers[k]`.
    /// Its class is that multiple of the linear one.
    pub fn with_multipliers(mut self, multipliers: Vec<u64>) -> Result<Self> {
        if multipliers.len() != self.counts.len() {
            return Err(Error::ConditionArity {
                expected: self.counts.len(),
                got: multipliers.len(),
            });
        }
        if multipliers.contains(&0) {
            return Err(Error::Domain("subvariety degrees must be >= 1".into()));
        }
        self.multipliers = multipliers;
        Ok(self)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `N = 2n + 1`.
    pub fn max_label(&self) -> Label {
        2 * self.n + 1
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn multipliers(&self) -> &[u64] {
        &self.multipliers
    }

    pub fn multiplicity(&self, codim: u32) -> u32 {
        codim
            .checked_sub(2)
            .and_then(|k| self.counts.get(k as usize))
            .copied()
            .unwrap_or(0)
    }

    /// `(codimension, multiplicity, degree)` for every nonzero slot.
    pub fn conditions(&self) -> impl Iterator<Item = (u32, u32, u64)> + '_ {
        self.counts
            .iter()
            .zip(&self.multipliers)
            .enumerate()
            .filter(|(_, (&a, _))| a > 0)
            .map(|(k, (&a, &m))| (k as u32 + 2, a, m))
    }

    /// `sum_c a_c (c - 1)`.
    pub fn weighted_sum(&self) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(k, &a)| u64::from(a) * (k as u64 + 1))
            .sum()
    }
}

impl fmt::Display for IncidenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, a) in self.counts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Dimension of the space of contact stable maps, `2n(d+1) - 1`.
pub fn expected_dimension(n: u32, d: u32) -> u64 {
    2 * u64::from(n) * (u64::from(d) + 1) - 1
}

pub fn validate_spec(n: u32, d: u32, spec: &IncidenceSpec) -> Result<()> {
    if n < 1 || d < 1 {
        return Err(Error::Domain(format!("need n >= 1 and d >= 1, got n = {n}, d = {d}")));
    }
    if spec.n != n {
        return Err(Error::ConditionArity {
            expected: 2 * n as usize,
            got: spec.counts.len(),
        });
    }
    let expected = expected_dimension(n, d);
    let supplied = spec.weighted_sum();
    if expected != supplied {
        return Err(Error::DimensionMismatch { expected, supplied });
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct CountConfig {
    pub seed: u64,
    /// Independent weight draws; values below two are raised to two.
    pub passes: usize,
    /// Worker threads; `None` uses rayon's global pool.
    pub threads: Option<usize>,
    /// Evaluate incidence classes through the Chern-character route as
    /// well and fail on any disagreement.
    pub oracle_check: bool,
    /// Redraws allowed per pass before giving up on finding generic weights.
    pub max_attempts: u64,
    /// Directory for persisted graph censuses.
    pub cache_dir: Option<PathBuf>,
}

pub const DEFAULT_SEED: u64 = 0x1d5c_0a7e_b077_2024;

impl Default for CountConfig {
    fn default() -> Self {
        CountConfig {
            seed: DEFAULT_SEED,
            passes: 2,
            threads: None,
            oracle_check: false,
            max_attempts: 64,
            cache_dir: None,
        }
    }
}

impl CountConfig {
    fn effective_passes(&self) -> usize {
        self.passes.max(2)
    }

    /// Seed used for pass `p`.
    pub fn pass_seed(&self, p: usize) -> u64 {
        self.seed.wrapping_add((p as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        match self.threads {
            None => Ok(f()),
            Some(k) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(k.max(1))
                    .build()
                    .map_err(|e| Error::Domain(format!("cannot start thread pool: {e}")))?;
                Ok(pool.install(f))
            }
        }
    }
}

/// One weight draw that produced a generic evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDraw {
    pub seed: u64,
    pub attempt: u64,
}

#[derive(Debug, Clone)]
pub struct CountResult {
    pub count: BigInt,
    pub census_size: usize,
    pub draws: Vec<WeightDraw>,
    pub elapsed: Duration,
}

/// `(1/a_G) * obstruction * prod_c (m_c * incidence_c)^{a_c} / normal`.
pub fn graph_contribution(
    graph: &GraphClass,
    n: u32,
    d: u32,
    spec: &IncidenceSpec,
    w: &WeightAssignment,
) -> Result<BigRational> {
    validate_spec(n, d, spec)?;
    contribution(graph, spec, w, false)
}

fn contribution(
    graph: &GraphClass,
    spec: &IncidenceSpec,
    w: &WeightAssignment,
    oracle: bool,
) -> Result<BigRational> {
    let tree = &graph.tree;
    let mut numerator = obstruction_euler(tree, w)?;
    for (codim, a, multiplier) in spec.conditions() {
        let mut class = incidence_class(tree, codim - 1, w)?;
        if oracle {
            let other = incidence_via_cramer(tree, codim - 1, w)?;
            if other != class {
                return Err(Error::Verification(format!(
                    "incidence routes disagree on {} for codimension {codim}",
                    graph.code
                )));
            }
            class = other;
        }
        if multiplier != 1 {
            class *= BigRational::from_integer(BigInt::from(multiplier));
        }
        numerator *= class.pow(a as i32);
    }
    let normal = normal_bundle_euler(tree, w)?;
    Ok(numerator / (normal * BigRational::from_integer(BigInt::from(graph.a_gamma))))
}

/// The full localization sum at one weight assignment.
pub fn bott_sum(
    census: &[GraphClass],
    spec: &IncidenceSpec,
    w: &WeightAssignment,
    oracle: bool,
) -> Result<BigRational> {
    census
        .par_iter()
        .map(|g| contribution(g, spec, w, oracle))
        .try_reduce(BigRational::zero, |a, b| Ok(a + b))
}

/// Fixed-locus graphs for degree-`d` maps to `P^{2n+1}`, through the cache
/// when one is configured.
pub fn census_for(n: u32, d: u32, config: &CountConfig) -> Result<Vec<GraphClass>> {
    let max_label = 2 * n + 1;
    match &config.cache_dir {
        Some(dir) => Ok(cache::load_or_enumerate(dir, max_label, d)?.classes),
        None => crate::census::enumerate_graphs(max_label, d),
    }
}

pub fn count(n: u32, d: u32, spec: &IncidenceSpec, config: &CountConfig) -> Result<CountResult> {
    validate_spec(n, d, spec)?;
    let census = census_for(n, d, config)?;
    count_with_census(&census, n, d, spec, config)
}

/// [`count`] against a census the caller already holds.
pub fn count_with_census(
    census: &[GraphClass],
    n: u32,
    d: u32,
    spec: &IncidenceSpec,
    config: &CountConfig,
) -> Result<CountResult> {
    validate_spec(n, d, spec)?;
    let start = Instant::now();
    let max_label = spec.max_label();

    let mut totals: Vec<BigRational> = Vec::new();
    let mut draws = Vec::new();
    for pass in 0..config.effective_passes() {
        let seed = config.pass_seed(pass);
        let mut found = None;
        for attempt in 0..config.max_attempts {
            let w = draw_weights(max_label, seed, attempt);
            match config.install(|| bott_sum(census, spec, &w, config.oracle_check))? {
                Ok(total) => {
                    found = Some((total, attempt));
                    break;
                }
                Err(Error::DegenerateWeights(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        let Some((total, attempt)) = found else {
            return Err(Error::Verification(format!(
                "no generic weights found for seed {seed} after {} attempts",
                config.max_attempts
            )));
        };
        totals.push(total);
        draws.push(WeightDraw { seed, attempt });
    }

    let first = &totals[0];
    if let Some(other) = totals.iter().find(|t| *t != first) {
        return Err(Error::Verification(format!(
            "weight draws disagree for {spec}: {first} vs {other}"
        )));
    }
    if !first.is_integer() {
        return Err(Error::Verification(format!("non-integer count {first} for {spec}")));
    }
    if first.is_negative() {
        return Err(Error::Verification(format!("negative count {first} for {spec}")));
    }

    Ok(CountResult {
        count: first.to_integer(),
        census_size: census.len(),
        draws,
        elapsed: start.elapsed(),
    })
}

/// All multiplicity vectors satisfying the dimension condition for
/// `(n, d)`, in descending lexicographic order (largest `a_2` first).
pub fn specs_for(n: u32, d: u32) -> Vec<IncidenceSpec> {
    let target = expected_dimension(n, d);
    let slots = 2 * n as usize;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(slots);
    fn rec(slot: usize, slots: usize, remaining: u64, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let weight = slot as u64 + 1;
        if slot + 1 == slots {
            if remaining % weight == 0 {
                current.push((remaining / weight) as u32);
                out.push(current.clone());
                current.pop();
            }
            return;
        }
        for a in (0..=remaining / weight).rev() {
            current.push(a as u32);
            rec(slot + 1, slots, remaining - a * weight, current, out);
            current.pop();
        }
    }
    rec(0, slots, target, &mut current, &mut out);
    out.into_iter()
        .map(|counts| IncidenceSpec::new(n, counts).expect("arity matches by construction"))
        .collect()
}

/// Counts for every admissible condition vector of `(n, d)`.
pub fn full_table(n: u32, d: u32, config: &CountConfig) -> Result<Vec<(IncidenceSpec, BigInt)>> {
    if n < 1 || d < 1 {
        return Err(Error::Domain(format!("need n >= 1 and d >= 1, got n = {n}, d = {d}")));
    }
    let census = census_for(n, d, config)?;
    specs_for(n, d)
        .into_iter()
        .map(|spec| {
            let result = count_with_census(&census, n, d, &spec, config)?;
            Ok((spec, result.count))
        })
        .collect()
}

/// `N_d(a)` as a plain integer, for callers that only want the number.
pub fn count_value(n: u32, d: u32, counts: &[u32]) -> Result<BigInt> {
    let spec = IncidenceSpec::new(n, counts.to_vec())?;
    Ok(count(n, d, &spec, &CountConfig::default())?.count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::enumerate_graphs;
    use num_traits::One;

    #[test]
    fn validation_examples() {
        let s = IncidenceSpec::new(1, vec![3, 0]).unwrap();
        assert!(validate_spec(1, 1, &s).is_ok());
        let s = IncidenceSpec::new(1, vec![1, 1]).unwrap();
        assert!(validate_spec(1, 1, &s).is_ok());
        let s = IncidenceSpec::new(1, vec![4, 0]).unwrap();
        match validate_spec(1, 2, &s) {
            Err(Error::DimensionMismatch { expected, supplied }) => {
                assert_eq!((expected, supplied), (5, 4));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            IncidenceSpec::new(1, vec![3]),
            Err(Error::ConditionArity { expected: 2, got: 1 })
        ));
        assert!(matches!(
            IncidenceSpec::from_codimensions(1, &[(4, 1)]),
            Err(Error::CodimensionRange { codim: 4, max: 3 })
        ));
        assert!(matches!(
            IncidenceSpec::from_codimensions(1, &[(1, 1)]),
            Err(Error::CodimensionRange { .. })
        ));
        let s = IncidenceSpec::from_codimensions(2, &[(2, 1), (3, 1), (5, 1)]).unwrap();
        assert_eq!(s.counts(), &[1, 1, 0, 1]);
        assert!(validate_spec(2, 1, &s).is_ok());
    }

    #[test]
    fn lines_in_p3_contribution_matches_closed_form() {
        let w = WeightAssignment::from_integers(&[2, -5, 7, 13]).unwrap();
        for (a2, a3) in [(3u32, 0u32), (1, 1)] {
            let spec = IncidenceSpec::new(1, vec![a2, a3]).unwrap();
            for g in enumerate_graphs(3, 1).unwrap() {
                let (i, j) = g.tree.edge_labels(&g.tree.edges()[0]);
                let (li, lj) = (w.lambda(i).clone(), w.lambda(j).clone());
                let mut denom = BigRational::one();
                for k in (0..4).filter(|&k| k != i && k != j) {
                    denom *= (&li - w.lambda(k)) * (&lj - w.lambda(k));
                }
                let s = &li + &lj;
                let q2 = &li * &li + &li * &lj + &lj * &lj;
                let expected = s.pow(1 + a2 as i32) * q2.pow(a3 as i32) / denom;
                assert_eq!(graph_contribution(&g, 1, 1, &spec, &w).unwrap(), expected);
            }
        }
    }

    #[test]
    fn specs_enumeration() {
        let got: Vec<String> = specs_for(1, 2).iter().map(|s| s.to_string()).collect();
        assert_eq!(got, vec!["(5,0)", "(3,1)", "(1,2)"]);
        assert_eq!(specs_for(1, 1).len(), 2);
        assert_eq!(specs_for(2, 1).len(), 11);
        for s in specs_for(2, 2) {
            assert_eq!(s.weighted_sum(), 11);
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_value(1, 1, &[3, 0]).unwrap(), BigInt::from(2));
        assert_eq!(count_value(1, 1, &[1, 1]).unwrap(), BigInt::from(1));
        assert_eq!(count_value(1, 2, &[5, 0]).unwrap(), BigInt::from(40));
    }

    #[test]
    fn multipliers_scale_the_count() {
        let spec = IncidenceSpec::new(1, vec![1, 1]).unwrap().with_multipliers(vec![3, 2]).unwrap();
        let r = count(1, 1, &spec, &CountConfig::default()).unwrap();
        assert_eq!(r.count, BigInt::from(6));
        let spec = IncidenceSpec::new(1, vec![3, 0]).unwrap().with_multipliers(vec![2, 5]).unwrap();
        let r = count(1, 1, &spec, &CountConfig::default()).unwrap();
        assert_eq!(r.count, BigInt::from(16));
    }

    #[test]
    fn result_metadata() {
        let spec = IncidenceSpec::new(1, vec![3, 0]).unwrap();
        let config = CountConfig { passes: 3, threads: Some(2), ..CountConfig::default() };
        let r = count(1, 1, &spec, &config).unwrap();
        assert_eq!(r.census_size, 6);
        assert_eq!(r.draws.len(), 3);
        let seeds: Vec<u64> = r.draws.iter().map(|d| d.seed).collect();
        assert_eq!(seeds, vec![config.pass_seed(0), config.pass_seed(1), config.pass_seed(2)]);
        let fewer = CountConfig { passes: 0, ..CountConfig::default() };
        assert_eq!(count(1, 1, &spec, &fewer).unwrap().draws.len(), 2);
    }

    #[test]
    fn oracle_route_agrees() {
        let spec = IncidenceSpec::new(1, vec![3, 1]).unwrap();
        let config = CountConfig { oracle_check: true, ..CountConfig::default() };
        assert_eq!(count(1, 2, &spec, &config).unwrap().count, BigInt::from(8));
    }

    #[test]
    fn degenerate_weights_are_reported() {
        let spec = IncidenceSpec::new(1, vec![3, 0]).unwrap();
        let census = enumerate_graphs(3, 1).unwrap();
        let w = WeightAssignment::from_integers(&[1, -1, 2, 3]).unwrap();
        assert!(matches!(
            bott_sum(&census, &spec, &w, false),
            Err(Error::DegenerateWeights(_))
        ));
    }
}
