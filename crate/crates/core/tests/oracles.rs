use unidp::oracles::{population_params, statistical_width, DistributionSpec, PopulationRequest};

#[test]
fn gaussian_width_of_a_thousand_draws() {
    let spec = DistributionSpec::gaussian(0.0, 1.0).unwrap();
    let w = statistical_width(&spec, 1000, 0.1, 10_000, 3).unwrap();
    assert!((6.0..=7.5).contains(&w.value), "{w:?}");
    assert!(w.std_error < 0.05);
}

#[test]
fn theta_scales_inversely() {
    let base = DistributionSpec::gaussian(0.0, 1.0).unwrap();
    for s in [0.01, 0.5, 3.0, 1000.0] {
        let scaled = DistributionSpec::gaussian(7.0, s).unwrap();
        for kappa in [0.05, 0.3, 1.0] {
            let a = scaled.theta(s * kappa).unwrap();
            let b = base.theta(kappa).unwrap() / s;
            assert!((a - b).abs() <= 1e-9 * b, "s={s} kappa={kappa}: {a} vs {b}");
        }
    }
}

#[test]
fn iqr_sandwiched_between_widths() {
    let beta: f64 = 0.1;
    let m = ((2.0 / beta).ln() / (4.0f64 / 3.0).ln()).ceil() as usize;
    for spec in [
        DistributionSpec::gaussian(0.0, 1.0).unwrap(),
        DistributionSpec::uniform(-2.0, 5.0).unwrap(),
    ] {
        let iqr = spec.iqr();
        let low = statistical_width(&spec, 2, 0.75, 10_000, 8).unwrap().value;
        let high = statistical_width(&spec, m, beta, 10_000, 9).unwrap().value;
        let tol = 0.05 * iqr;
        assert!(low <= iqr + tol && iqr <= high + tol, "{spec}: {low} {iqr} {high}");
    }
}

#[test]
fn t3_tail_below_chebyshev() {
    let spec = DistributionSpec::student_t(3.0, 0.0, 1.0).unwrap();
    let sigma2 = spec.variance().unwrap();
    for xi in [2.0, 10.0, 50.0] {
        let (below, above) = spec.tail_expectation(xi).unwrap();
        assert!(below <= 0.0 && above >= 0.0);
        assert!(above <= sigma2 / xi && -below <= sigma2 / xi);
    }
    let (_, above) = spec.tail_expectation(10.0).unwrap();
    assert!((above - 0.00541612787555426).abs() < 1e-8);
}

#[test]
fn heavy_tails_report_missing_moments() {
    let spec: DistributionSpec = "pareto:shape=1.5".parse().unwrap();
    let req = PopulationRequest {
        moments: vec![1.0, 2.0],
        ..Default::default()
    };
    let p = population_params(&spec, &req).unwrap();
    assert!(p.mean.is_some());
    assert!(p.variance.is_none());
    assert!(p.central_moments[0].value.is_some());
    assert!(p.central_moments[1].value.is_none());
}

#[test]
fn params_serialize() {
    let spec: DistributionSpec = "uniform:a=0,b=1".parse().unwrap();
    let req = PopulationRequest {
        phi_levels: vec![1.0 / 16.0],
        ..Default::default()
    };
    let p = population_params(&spec, &req).unwrap();
    assert!((p.phi[0].value.unwrap() - 0.0625).abs() < 1e-9);
    let json = serde_json::to_string(&p).unwrap();
    assert!(json.contains("\"uniform:a=0,b=1\""), "{json}");
}
