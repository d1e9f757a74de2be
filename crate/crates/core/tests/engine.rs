mod common;

use common::{weights, Lcg};
use legendrian::bott::bott_sum;
use legendrian::{
    count, enumerate_graphs, expected_dimension, full_table, graph_contribution, specs_for,
    validate_spec, BigInt, BigRational, CountConfig, Error, IncidenceSpec,
};
use num_traits::Zero;

fn spec(n: u32, a: &[u32]) -> IncidenceSpec {
    IncidenceSpec::new(n, a.to_vec()).unwrap()
}

#[test]
fn dimension_condition() {
    assert_eq!(expected_dimension(1, 1), 3);
    assert_eq!(expected_dimension(2, 2), 11);
    match validate_spec(1, 1, &spec(1, &[2, 0])) {
        Err(Error::DimensionMismatch { expected: 3, supplied: 2 }) => {}
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        IncidenceSpec::new(2, vec![1, 1]),
        Err(Error::ConditionArity { expected: 4, got: 2 })
    ));
}

#[test]
fn specs_cover_the_dimension_condition() {
    for (n, d, rows) in [(1, 1, 2), (1, 2, 3), (1, 3, 4), (2, 1, 11), (2, 2, 27)] {
        let specs = specs_for(n, d);
        assert_eq!(specs.len(), rows, "n = {n}, d = {d}");
        for s in &specs {
            assert!(validate_spec(n, d, s).is_ok());
        }
        let keys: Vec<&[u32]> = specs.iter().map(|s| s.counts()).collect();
        assert!(keys.windows(2).all(|w| w[0] > w[1]));
    }
}

#[test]
fn sum_is_independent_of_the_weights() {
    let census = enumerate_graphs(3, 2).unwrap();
    let s = spec(1, &[3, 1]);
    let mut rng = Lcg(7);
    let mut seen = 0;
    while seen < 4 {
        let w = weights(&rng.distinct(4, 10_000));
        match bott_sum(&census, &s, &w, false) {
            Ok(total) => {
                assert_eq!(total, BigRational::from_integer(BigInt::from(8)));
                seen += 1;
            }
            Err(Error::DegenerateWeights(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn contributions_sum_to_the_count() {
    let census = enumerate_graphs(5, 1).unwrap();
    let s = spec(2, &[7, 0, 0, 0]);
    let w = weights(&[3, -7, 11, 29, -41, 53]);
    let total: BigRational = census
        .iter()
        .map(|g| graph_contribution(g, 2, 1, &s, &w).unwrap())
        .fold(BigRational::zero(), |a, b| a + b);
    assert_eq!(total, BigRational::from_integer(BigInt::from(14)));
}

#[test]
fn configuration_does_not_change_counts() {
    let s = spec(1, &[5, 1]);
    let base = count(1, 3, &s, &CountConfig::default()).unwrap();
    assert_eq!(base.count, BigInt::from(512));
    assert_eq!(base.draws.len(), 2);

    let dir = tempfile::tempdir().unwrap();
    let variants = [
        CountConfig { seed: 99, ..CountConfig::default() },
        CountConfig { passes: 3, ..CountConfig::default() },
        CountConfig { threads: Some(1), ..CountConfig::default() },
        CountConfig { oracle_check: true, ..CountConfig::default() },
        CountConfig { cache_dir: Some(dir.path().to_path_buf()), ..CountConfig::default() },
        CountConfig { cache_dir: Some(dir.path().to_path_buf()), ..CountConfig::default() },
    ];
    for config in variants {
        let r = count(1, 3, &s, &config).unwrap();
        assert_eq!(r.count, base.count, "{config:?}");
        assert_eq!(r.census_size, 136);
        assert_eq!(r.draws.len(), config.passes.max(2));
    }
}

#[test]
fn passes_below_two_are_raised() {
    let config = CountConfig { passes: 0, ..CountConfig::default() };
    let r = count(1, 1, &spec(1, &[3, 0]), &config).unwrap();
    assert_eq!(r.draws.len(), 2);
    assert_ne!(r.draws[0].seed, r.draws[1].seed);
}

#[test]
fn identical_configs_give_identical_draws() {
    let s = spec(2, &[4, 0, 1, 0]);
    let a = count(2, 1, &s, &CountConfig::default()).unwrap();
    let b = count(2, 1, &s, &CountConfig::default()).unwrap();
    assert_eq!(a.count, b.count);
    assert_eq!(a.draws, b.draws);
}

#[test]
fn full_tables_are_nonnegative_integers() {
    for (n, d) in [(1, 1), (1, 2), (2, 1)] {
        let table = full_table(n, d, &CountConfig::default()).unwrap();
        assert_eq!(table.len(), specs_for(n, d).len());
        assert!(table.iter().all(|(_, v)| *v >= BigInt::zero()));
    }
    assert!(full_table(0, 1, &CountConfig::default()).is_err());
}

#[test]
fn multipliers_scale_by_their_powers() {
    let base = count(2, 1, &spec(2, &[2, 1, 1, 0]), &CountConfig::default()).unwrap().count;
    let scaled = spec(2, &[2, 1, 1, 0]).with_multipliers(vec![2, 3, 5, 7]).unwrap();
    let got = count(2, 1, &scaled, &CountConfig::default()).unwrap().count;
    assert_eq!(got, base * BigInt::from(4 * 3 * 5));
}
