use unidp::empirical::{
    infinite_domain_mean, infinite_domain_quantile, infinite_domain_range, mean_real, quantile_real, range_real,
    Discretization,
};
use unidp::oracles::DistributionSpec;
use unidp::primitives::noise::derive_seed;
use unidp::{capped_log, IntDataset, NoiseSource, PrivacyParams, RealDataset};

#[test]
fn noiseless_range_contains_extremes_with_enough_copies() {
    let (eps, beta) = (10.0, 0.1);
    let params = PrivacyParams::new(eps, beta).unwrap();
    // copies needed by the second radius call, which runs at (3ε/4, β/3)
    let copies = (6.0 / (0.75 * eps) * capped_log(2.0 / (beta / 3.0))).ceil() as usize + 1;
    let mut src = NoiseSource::new(12);
    for case in 0..20 {
        let lo = -(src.below(5000) as i64);
        let hi = lo + 1 + src.below(10_000) as i64;
        let mut v: Vec<i64> = (0..300).map(|_| lo + src.below((hi - lo + 1) as u64) as i64).collect();
        v.extend(std::iter::repeat_n(lo, copies));
        v.extend(std::iter::repeat_n(hi, copies));
        let d = IntDataset::from_ints(v);
        let est = infinite_domain_range(&d, params, &mut NoiseSource::noiseless(case)).unwrap();
        assert!(est.grid_lo() <= lo && hi <= est.grid_hi(), "case {case}: [{lo}, {hi}] vs {est:?}");
    }
}

#[test]
fn noiseless_range_loses_only_threshold_slack() {
    let (eps, beta) = (10.0, 0.1);
    let params = PrivacyParams::new(eps, beta).unwrap();
    let slack = 6.0 / (0.75 * eps) * capped_log(2.0 / (beta / 3.0));
    let spec = DistributionSpec::student_t(2.0, 0.0, 100.0).unwrap();
    for case in 0..20 {
        let mut src = NoiseSource::new(derive_seed(13, case));
        let d = IntDataset::from_ints((0..500).map(|_| spec.draw(&mut src).round() as i64).collect());
        let est = infinite_domain_range(&d, params, &mut NoiseSource::noiseless(case)).unwrap();
        assert!((d.count_outside(&est.range()) as f64) <= slack.ceil(), "case {case}");
    }
}

#[test]
fn real_wrappers_match_integer_estimators_on_grid() {
    let b = 0.25;
    let disc = Discretization::new(b).unwrap();
    let params = PrivacyParams::new(1.0, 0.1).unwrap();
    let mut src = NoiseSource::new(21);
    let ints: Vec<i64> = (0..3000).map(|_| src.below(4001) as i64 - 2000).collect();
    let grid = IntDataset::from_ints(ints.clone());
    let reals = RealDataset::new(ints.iter().map(|k| *k as f64 * b).collect()).unwrap();

    let a = infinite_domain_range(&grid, params, &mut NoiseSource::new(5)).unwrap();
    let r = range_real(&reals, disc, params, &mut NoiseSource::new(5)).unwrap();
    assert_eq!((a.grid_lo(), a.grid_hi()), (r.grid_lo(), r.grid_hi()));
    assert_eq!(r.range().lo(), a.grid_lo() as f64 * b);

    let a = infinite_domain_mean(&grid, params, &mut NoiseSource::new(6)).unwrap();
    let m = mean_real(&reals, disc, params, &mut NoiseSource::new(6)).unwrap();
    assert_eq!(m.value, a.value * b);

    let a = infinite_domain_quantile(&grid, 1500, params, &mut NoiseSource::new(7)).unwrap();
    let q = quantile_real(&reals, 1500, disc, params, &mut NoiseSource::new(7)).unwrap();
    assert_eq!(q.value, a.grid_value as f64 * b);
}

#[test]
fn quantile_output_is_inside_the_private_range() {
    let params = PrivacyParams::new(0.5, 0.1).unwrap();
    for t in 0..50 {
        let mut src = NoiseSource::new(derive_seed(31, t));
        let d = IntDataset::from_ints((0..2000).map(|_| src.below(1_000_000) as i64 - 500_000).collect());
        let tau = 1 + src.below(2000) as usize;
        let est = infinite_domain_quantile(&d, tau, params, &mut src).unwrap();
        assert!(est.range.grid_lo() <= est.grid_value && est.grid_value <= est.range.grid_hi());
    }
}

#[test]
fn discretized_gaussian_mean_error() {
    let (eps, beta, n) = (1.0, 0.1, 5000);
    let params = PrivacyParams::new(eps, beta).unwrap();
    let spec = DistributionSpec::gaussian(0.0, 10.0).unwrap();
    let mut errors = Vec::new();
    let mut bounds = Vec::new();
    for t in 0..300 {
        let mut src = NoiseSource::new(derive_seed(41, t));
        let d = IntDataset::from_ints((0..n).map(|_| spec.draw(&mut src).round() as i64).collect());
        let est = infinite_domain_mean(&d, params, &mut src).unwrap();
        errors.push((est.value - d.mean().unwrap()).abs());
        let gamma = d.width();
        bounds.push(40.0 * gamma / (eps * n as f64) * capped_log(capped_log(gamma) / beta));
    }
    errors.sort_by(f64::total_cmp);
    bounds.sort_by(f64::total_cmp);
    assert!(errors[150] <= bounds[150], "median error {} vs bound {}", errors[150], bounds[150]);
}

#[test]
fn reproducible_across_calls() {
    let params = PrivacyParams::new(0.8, 0.05).unwrap();
    let d = IntDataset::from_ints((0..1000).map(|i| (i * i) % 977 - 400).collect());
    let a = infinite_domain_range(&d, params, &mut NoiseSource::new(99)).unwrap();
    let b = infinite_domain_range(&d, params, &mut NoiseSource::new(99)).unwrap();
    assert_eq!(a, b);
    let a = infinite_domain_quantile(&d, 10, params, &mut NoiseSource::new(98)).unwrap();
    let b = infinite_domain_quantile(&d, 10, params, &mut NoiseSource::new(98)).unwrap();
    assert_eq!(a, b);
}
