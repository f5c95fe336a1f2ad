use dualfft::butterfly::{butterfly, butterfly_dual, butterfly_standard};
use dualfft::rng::SampleRng;
use dualfft::{ArithmeticContext, ComplexSample, OpCounter, Precision, Strategy as Kind, TwiddleEntry, TwiddleTable};
use proptest::prelude::*;

type Pair = (ComplexSample, ComplexSample);

/// `A = a + W b`, `B = a - W b` with plain f64 complex arithmetic.
fn eq1(a: ComplexSample, b: ComplexSample, w: &TwiddleEntry) -> Pair {
    let wb_re = w.omega_r * b.re - w.omega_i * b.im;
    let wb_im = w.omega_i * b.re + w.omega_r * b.im;
    (
        ComplexSample::new(a.re + wb_re, a.im + wb_im),
        ComplexSample::new(a.re - wb_re, a.im - wb_im),
    )
}

fn components(p: Pair) -> [f64; 4] {
    [p.0.re, p.0.im, p.1.re, p.1.im]
}

fn max_dev(x: Pair, y: Pair) -> f64 {
    components(x)
        .iter()
        .zip(components(y))
        .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
}

fn rounded(mut e: TwiddleEntry, p: Precision) -> TwiddleEntry {
    e.multiplier = p.round(e.multiplier);
    e.ratio = p.round(e.ratio);
    e.omega_r = p.round(e.omega_r);
    e.omega_i = p.round(e.omega_i);
    e
}

fn sample() -> impl proptest::strategy::Strategy<Value = ComplexSample> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| ComplexSample::new(re, im))
}

#[test]
fn fma_kernels_match_standard_in_fp64() {
    let mut rng = SampleRng::new(2024);
    let mut ctx = ArithmeticContext::new(Precision::Fp64);
    let mut n = 2;
    while n <= 4096 {
        let std = TwiddleTable::new(n, Kind::Standard).unwrap();
        for strategy in Kind::FMA {
            let table = TwiddleTable::new(n, strategy).unwrap();
            for (k, e) in table.entries().iter().enumerate() {
                if e.clamped {
                    continue;
                }
                let (a, b) = (rng.complex(), rng.complex());
                let got = butterfly(strategy, a, b, e, &mut ctx);
                let want = butterfly_standard(a, b, &std.entries()[k], &mut ctx);
                let dev = max_dev(got, want);
                assert!(dev < 1e-13, "{strategy} n={n} k={k}: {dev:e}");
            }
        }
        n *= 2;
    }
}

#[test]
fn dual_sweep_at_1024() {
    let mut rng = SampleRng::new(7);
    let mut ctx = ArithmeticContext::new(Precision::Fp64);
    let dual = TwiddleTable::new(1024, Kind::DualSelect).unwrap();
    let std = TwiddleTable::new(1024, Kind::Standard).unwrap();
    for (k, e) in dual.entries().iter().enumerate() {
        let (a, b) = (rng.complex(), rng.complex());
        let dev = max_dev(butterfly_dual(a, b, e, &mut ctx), butterfly_standard(a, b, &std.entries()[k], &mut ctx));
        assert!(dev < 1e-13, "k={k}");
    }
    assert_eq!(ctx.counters().fma_count, 6 * 512);
}

#[test]
fn fp16_error_stays_within_ratio_scaled_bound() {
    let eps = Precision::Fp16.machine_epsilon();
    let tables = [
        TwiddleTable::new(1024, Kind::LinzerFeig).unwrap(),
        TwiddleTable::new(1024, Kind::DualSelect).unwrap(),
    ];
    let mut rng = SampleRng::new(0xB0B);
    let mut worst = [0.0f64; 2];
    for trial in 0..100_000 {
        let which = trial % 2;
        let table = &tables[which];
        let k = 1 + (rng.next_u64() % 511) as usize;
        let exact = table.entries()[k];
        let stored = rounded(exact, Precision::Fp16);
        let a = rng.complex().map(|v| Precision::Fp16.round(v));
        let b = rng.complex().map(|v| Precision::Fp16.round(v));
        let mut ctx = ArithmeticContext::new(Precision::Fp16);
        let got = butterfly(table.strategy(), a, b, &stored, &mut ctx);
        let dev = max_dev(got, eq1(a, b, &exact));
        let scale = exact.ratio.abs().max(1.0) * eps * a.max_abs().max(b.max_abs());
        assert!(dev <= 8.0 * scale, "{} k={k}: {dev:e} > 8 * {scale:e}", table.strategy());
        worst[which] = worst[which].max(dev / scale);
    }
    // Observed structural constant, for the record.
    println!("observed C: LinzerFeig {:.3}, DualSelect {:.3}", worst[0], worst[1]);
}

#[test]
fn every_fma_path_costs_six() {
    let mut rng = SampleRng::new(1);
    for strategy in Kind::FMA {
        for n in [2, 8, 1024] {
            for e in TwiddleTable::new(n, strategy).unwrap().entries() {
                let mut ctx = ArithmeticContext::new(Precision::Fp16);
                butterfly(strategy, rng.complex(), rng.complex(), e, &mut ctx);
                assert_eq!(ctx.counters(), OpCounter { fma_count: 6, add_count: 0, mul_count: 0 });
            }
        }
    }
}

proptest! {
    #[test]
    fn scaling_by_power_of_two_commutes(
        a in sample(), b in sample(), k in 0usize..512, shift in -20i32..20,
        strategy in prop::sample::select(Kind::ALL.to_vec()),
    ) {
        let lambda = (shift as f64).exp2();
        let table = TwiddleTable::new(1024, strategy).unwrap();
        let e = table.entries()[k];
        let mut ctx = ArithmeticContext::new(Precision::Fp64);
        let base = butterfly(strategy, a, b, &e, &mut ctx);
        let scaled = butterfly(strategy, a.map(|v| v * lambda), b.map(|v| v * lambda), &e, &mut ctx);
        let expect = components(base).map(|v| v * lambda);
        prop_assert_eq!(components(scaled), expect);
    }

    #[test]
    fn recombining_recovers_inputs(
        a in sample(), b in sample(), k in 0usize..512,
        strategy in prop::sample::select(Kind::ALL.to_vec()),
    ) {
        let table = TwiddleTable::new(1024, strategy).unwrap();
        let e = table.entries()[k];
        prop_assume!(!e.clamped);
        let mut ctx = ArithmeticContext::new(Precision::Fp64);
        let (big_a, big_b) = butterfly(strategy, a, b, &e, &mut ctx);
        let a2 = ComplexSample::new(0.5 * (big_a.re + big_b.re), 0.5 * (big_a.im + big_b.im));
        // (A - B) / (2W) = (A - B) conj(W) / 2 for unit-modulus W.
        let d = ComplexSample::new(0.5 * (big_a.re - big_b.re), 0.5 * (big_a.im - big_b.im));
        let b2 = ComplexSample::new(
            d.re * e.omega_r + d.im * e.omega_i,
            d.im * e.omega_r - d.re * e.omega_i,
        );
        let scale = a.max_abs().max(b.max_abs());
        let tol = 4.0 * f64::EPSILON * scale;
        prop_assert!(max_dev((a2, b2), (a, b)) <= tol, "{:e} > {:e}", max_dev((a2, b2), (a, b)), tol);
    }
}
