//! Self-check suite behind the `verify` command.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::bott::{bott_sum, count_with_census, CountConfig, IncidenceSpec};
use crate::census::{enumerate_graphs, GraphClass};
use crate::chern::incidence_via_cramer;
use crate::classes::{incidence_class, normal_bundle_euler, obstruction_euler};
use crate::error::{Error, Result};
use crate::reference::known_block;
use crate::weights::{draw_weights, WeightAssignment};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// Contact curves in `P^3`, degrees 1 to 3.
    P3,
    P5D1,
    P5D2,
    All,
}

impl Scope {
    /// `(n, d)` blocks covered.
    pub fn blocks(self) -> &'static [(u32, u32)] {
        match self {
            Scope::P3 => &[(1, 1), (1, 2), (1, 3)],
            Scope::P5D1 => &[(2, 1)],
            Scope::P5D2 => &[(2, 2)],
            Scope::All => &[(1, 1), (1, 2), (1, 3), (2, 1), (2, 2)],
        }
    }
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p3" => Ok(Scope::P3),
            "p5-d1" => Ok(Scope::P5D1),
            "p5-d2" => Ok(Scope::P5D2),
            "all" => Ok(Scope::All),
            other => Err(Error::Domain(format!(
                "unknown scope {other:?} (expected p3, p5-d1, p5-d2 or all)"
            ))),
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::P3 => "p3",
            Scope::P5D1 => "p5-d1",
            Scope::P5D2 => "p5-d2",
            Scope::All => "all",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: String, result: Result<String>) -> CheckOutcome {
    match result {
        Ok(detail) => CheckOutcome { name, passed: true, detail },
        Err(e) => CheckOutcome { name, passed: false, detail: e.to_string() },
    }
}

fn fail(msg: String) -> Error {
    Error::Verification(msg)
}

fn check_table(census: &[GraphClass], n: u32, d: u32, config: &CountConfig) -> Result<String> {
    let mut rows = 0;
    for (a, expected) in known_block(n, d) {
        let spec = IncidenceSpec::new(n, a.to_vec())?;
        let got = count_with_census(census, n, d, &spec, config)?.count;
        if got != BigInt::from(expected) {
            return Err(fail(format!("{spec}: computed {got}, reference {expected}")));
        }
        rows += 1;
    }
    Ok(format!("{rows} reference rows exact"))
}

fn check_oracle(census: &[GraphClass], max_label: u32, config: &CountConfig) -> Result<String> {
    let mut cases = 0;
    for pass in 0..2 {
        let w = draw_weights(max_label, config.pass_seed(pass), 0);
        for r in 1..max_label {
            for g in census {
                if incidence_class(&g.tree, r, &w)? != incidence_via_cramer(&g.tree, r, &w)? {
                    return Err(fail(format!("{} at r = {r}", g.code)));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases agree"))
}

/// Retry `f` on fresh draws from `seed` while the weights are degenerate.
fn with_generic<T>(
    max_label: u32,
    seed: u64,
    config: &CountConfig,
    mut f: impl FnMut(&WeightAssignment) -> Result<T>,
) -> Result<T> {
    for attempt in 0..config.max_attempts {
        match f(&draw_weights(max_label, seed, attempt)) {
            Err(Error::DegenerateWeights(_)) => continue,
            other => return other,
        }
    }
    Err(fail(format!("no generic weights in {} draws", config.max_attempts)))
}

fn check_homogeneity(census: &[GraphClass], max_label: u32, config: &CountConfig) -> Result<String> {
    with_generic(max_label, config.seed, config, |w| homogeneity_at(census, max_label, w))
}

fn homogeneity_at(census: &[GraphClass], max_label: u32, w: &WeightAssignment) -> Result<String> {
    let c = BigRational::new(BigInt::from(-7), BigInt::from(3));
    let scaled = w.scaled(&c)?;
    for g in census {
        let t = &g.tree;
        let vertex_excess: i32 = t.valences().iter().map(|&v| v as i32 - 1).sum();
        let obstruction_degree = (2 * t.degree() as i32 - t.edge_count() as i32) + vertex_excess;
        let normal_degree = (max_label as i32 + 1) * (t.degree() as i32 + 1) - 4;
        let pairs = [
            (obstruction_euler(t, w)?, obstruction_euler(t, &scaled)?, obstruction_degree),
            (normal_bundle_euler(t, w)?, normal_bundle_euler(t, &scaled)?, normal_degree),
        ];
        for (base, moved, degree) in pairs {
            if moved != base * c.pow(degree) {
                return Err(fail(format!("{} is not homogeneous of degree {degree}", g.code)));
            }
        }
        for r in 1..max_label {
            if incidence_class(t, r, &scaled)? != incidence_class(t, r, w)? * c.pow(r as i32) {
                return Err(fail(format!("incidence class of {} at r = {r}", g.code)));
            }
        }
    }
    Ok(format!("{} graphs", census.len()))
}

fn check_invariance(census: &[GraphClass], n: u32, d: u32, config: &CountConfig) -> Result<String> {
    let max_label = 2 * n + 1;
    let Some((a, _)) = known_block(n, d).next() else {
        return Ok("no reference rows".into());
    };
    let spec = IncidenceSpec::new(n, a.to_vec())?;
    let shift: Vec<u32> = (0..=max_label).map(|k| (k + 1) % (max_label + 1)).collect();
    let (base, moved) = with_generic(max_label, config.seed, config, |w| {
        Ok((
            bott_sum(census, &spec, w, false)?,
            bott_sum(census, &spec, &w.permuted(&shift)?, false)?,
        ))
    })?;
    if moved != base {
        return Err(fail(format!("cyclic relabelling changes the total for {spec}")));
    }
    for extra in 1..=2 {
        let other = with_generic(max_label, config.pass_seed(extra + 1), config, |w| {
            bott_sum(census, &spec, w, false)
        })?;
        if other != base {
            return Err(fail(format!("weight draw {extra} changes the total for {spec}")));
        }
    }
    Ok(format!("{spec} stable under relabelling and 3 draws"))
}

/// Run every check for the blocks in `scope`.
pub fn run(scope: Scope, config: &CountConfig) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for &(n, d) in scope.blocks() {
        let max_label = 2 * n + 1;
        let tag = format!("P^{max_label} d={d}");
        let census = match crate::bott::census_for(n, d, config) {
            Ok(c) => c,
            Err(e) => {
                out.push(outcome(format!("census {tag}"), Err(e)));
                continue;
            }
        };
        out.push(outcome(format!("table {tag}"), check_table(&census, n, d, config)));
        out.push(outcome(format!("oracle {tag}"), check_oracle(&census, max_label, config)));
        out.push(outcome(format!("homogeneity {tag}"), check_homogeneity(&census, max_label, config)));
        out.push(outcome(format!("invariance {tag}"), check_invariance(&census, n, d, config)));
    }
    out
}

/// Census sizes for lines and conics in `P^3`.
pub fn census_sizes() -> Result<String> {
    let g1 = enumerate_graphs(3, 1)?.len();
    let g2 = enumerate_graphs(3, 2)?.len();
    if (g1, g2) != (6, 30) {
        return Err(fail(format!("|G(1)| = {g1}, |G(2)| = {g2} in P^3")));
    }
    Ok("|G(1)| = 6, |G(2)| = 30 in P^3".into())
}
