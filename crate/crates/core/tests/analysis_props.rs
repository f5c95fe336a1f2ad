use dualfft::analysis::{to_csv, trial_errors};
use dualfft::{
    cumulative_bound, measure_error, reproduce_table1, reproduce_table2, BoundReport, ErrorReport, Metric,
    Precision, Strategy, TwiddleTable,
};
use proptest::prelude::*;

const FP16_EPS: f64 = 1.0 / 2048.0;

fn sizes(lo: usize, hi: usize) -> impl Iterator<Item = usize> {
    (1..).map(|b| 1usize << b).skip_while(move |&n| n < lo).take_while(move |&n| n <= hi)
}

fn fp16_forward_max(n: usize, strategy: Strategy, trials: usize, seed: u64) -> f64 {
    let errors = trial_errors(n, strategy, Precision::Fp16, Metric::ForwardVsOracle, trials, seed).unwrap();
    assert!(errors.iter().all(|e| e.is_finite()), "{strategy} n={n}");
    errors.into_iter().fold(0.0, f64::max)
}

#[test]
fn measured_fp16_error_is_dominated_by_cumulative_bound() {
    for n in sizes(32, 1024) {
        for row in reproduce_table2(n).unwrap() {
            let max = fp16_forward_max(n, row.strategy, 100, 42);
            assert!(max <= row.cumulative_bound, "{} n={n}: {max:e} > {:e}", row.strategy, row.cumulative_bound);
        }
    }
}

/// Below 32 points the tabulated bound says nothing useful (dual-select's is
/// essentially zero, Linzer-Feig's ignores the clamped entry). Using the
/// largest stored ratio, floored at one, restores dominance at every size.
#[test]
fn effective_ratio_bound_holds_at_every_size() {
    for n in sizes(2, 1024) {
        for strategy in [Strategy::LinzerFeig, Strategy::DualSelect] {
            let plan = dualfft::make_plan(n, strategy, Precision::Fp16).unwrap();
            let t = plan.table().entries().iter().fold(1.0f64, |m, e| m.max(e.ratio.abs()));
            let bound = cumulative_bound(t, FP16_EPS, n.trailing_zeros());
            let max = fp16_forward_max(n, strategy, 100, 7);
            assert!(max <= bound, "{strategy} n={n}: {max:e} > {bound:e}");
        }
    }
}

#[test]
fn dual_select_beats_linzer_feig_across_seeds() {
    for seed in 0..10 {
        let lf = measure_error(1024, Strategy::LinzerFeig, Precision::Fp16, Metric::ForwardVsOracle, 20, seed).unwrap();
        let dual = measure_error(1024, Strategy::DualSelect, Precision::Fp16, Metric::ForwardVsOracle, 20, seed).unwrap();
        assert!(dual.rel_l2_median < lf.rel_l2_median, "seed {seed}");
        assert!(dual.rel_l2_max < lf.rel_l2_max, "seed {seed}");
    }
}

#[test]
fn cosine_table_has_no_finite_bound() {
    for n in sizes(4, 4096) {
        let stats = TwiddleTable::new(n, Strategy::Cosine).unwrap().stats();
        assert!(stats.t_max > 1e15, "n={n}");
        let row = reproduce_table1(n).unwrap().into_iter().find(|r| r.strategy == Strategy::Cosine).unwrap();
        assert!(row.divergent);
    }
}

#[test]
fn measurements_are_reproducible() {
    let a = measure_error(256, Strategy::DualSelect, Precision::Fp16, Metric::Roundtrip, 16, 11).unwrap();
    let b = measure_error(256, Strategy::DualSelect, Precision::Fp16, Metric::Roundtrip, 16, 11).unwrap();
    assert_eq!(a, b);
    let c = measure_error(256, Strategy::DualSelect, Precision::Fp16, Metric::Roundtrip, 16, 12).unwrap();
    assert_ne!(a.rel_l2_median, c.rel_l2_median);
}

#[test]
fn reports_serialize_with_stable_field_names() {
    let report = measure_error(64, Strategy::DualSelect, Precision::Fp32, Metric::ForwardVsOracle, 4, 1).unwrap();
    let json: serde_json::Value = serde_json::to_value(&report).unwrap();
    for key in ["n", "strategy", "precision", "metric", "trials", "seed", "rel_l2_median", "rel_l2_max", "nonfinite_trials"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    assert_eq!(json["strategy"], "DualSelect");
    assert_eq!(json["precision"], "FP32");
    assert_eq!(json["metric"], "forward_vs_oracle");
    let back: ErrorReport = serde_json::from_value(json).unwrap();
    assert_eq!(back, report);

    let rows = reproduce_table2(1024).unwrap();
    let csv = to_csv(&rows);
    assert!(csv.starts_with("strategy,t_max,singular_count,per_butterfly_bound,cumulative_bound,improvement_vs_baseline,divergent\n"));
    assert_eq!(csv.lines().count(), 3);
    let json = serde_json::to_string(&rows).unwrap();
    let back: Vec<BoundReport> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, rows);
}

proptest! {
    #[test]
    fn cumulative_bound_grows_with_ratio_and_depth(t in 0.0f64..1e3, dt in 0.0f64..10.0, m in 1u32..30) {
        let base = cumulative_bound(t, FP16_EPS, m);
        prop_assert!(cumulative_bound(t + dt, FP16_EPS, m) >= base);
        prop_assert!(cumulative_bound(t, FP16_EPS, m + 1) >= base);
        // Never below the first-order term.
        prop_assert!(base >= m as f64 * t * FP16_EPS * (1.0 - 1e-12));
    }
}
