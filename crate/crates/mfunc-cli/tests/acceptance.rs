//! Acceptance suite: one test per acceptance criterion, each printing a
//! single PASS/FAIL line with the measured numbers (visible with
//! `cargo test -p mfunc-cli --test acceptance -- --nocapture`, and always
//! shown for failing criteria).

use std::time::Instant;

use num_complex::Complex64;
use rand_core::{RngCore, SeedableRng};

use mfunc::arith::{FpPoly, PrimeTable};
use mfunc::density::{
    fourier_pairing, integrate_against, invert_to_density, forward_transform, TestFunction,
};
use mfunc::empirical::{
    compare_report, empirical_average, empirical_charfun, sample_line, SamplerConfig,
    TruncationMode, DEFAULT_COEFF_CAP,
};
use mfunc::field::{
    delta_eigenvalues, power_sum_recursive, quadratic_consistency_check, EigenvalueTable,
    LambdaSeries, NumberField, NumberFieldSpec, SatakePair,
};
use mfunc::local::{build_ap_series, local_factor, LocalEvalConfig};
use mfunc::product::{charfun_grid, decay_profile, tail_bound, truncated_product, ProductConfig};

fn unit(rng: &mut rand_chacha::ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// Brute-force splitting oracle for squarefree polynomials of degree <= 3
/// mod p: count roots, deduce the pattern.
fn pattern_oracle(coeffs: &[i64], p: u64) -> Option<Vec<(u32, u32)>> {
    let f = FpPoly::from_int_poly(coeffs, p);
    let deg = f.degree()?;
    let squarefree = f.gcd(&f.derivative()).degree() == Some(0);
    let mut roots = 0u32;
    for x in 0..p {
        let mut acc: u64 = 0;
        for &c in f.coeffs().iter().rev() {
            acc = (acc as u128 * x as u128 % p as u128) as u64;
            acc = (acc + c) % p;
        }
        if acc == 0 {
            roots += 1;
        }
    }
    match (deg, squarefree, roots) {
        (1, _, _) => Some(vec![(1, 1)]),
        (2, true, 2) => Some(vec![(1, 1), (1, 1)]),
        (2, true, 0) => Some(vec![(1, 2)]),
        (2, false, 1) => Some(vec![(2, 1)]), // ramified quadratic
        (3, true, 3) => Some(vec![(1, 1), (1, 1), (1, 1)]),
        (3, true, 1) => Some(vec![(1, 1), (1, 2)]),
        (3, true, 0) => Some(vec![(1, 3)]),
        _ => None, // non-squarefree beyond the quadratic ramified case
    }
}

#[test]
fn criterion_01_splitting_correctness() {
    let started = Instant::now();
    let primes = PrimeTable::sieve(10_000).unwrap();
    let corpus: Vec<(&str, NumberFieldSpec)> = vec![
        ("Q", NumberFieldSpec::rational()),
        ("Q(i)", NumberFieldSpec::quadratic(-4).unwrap()),
        ("Q(sqrt5)", NumberFieldSpec::quadratic(5).unwrap()),
        ("Q(cbrt2)", NumberFieldSpec::polynomial(vec![-2, 0, 0, 1]).unwrap()),
    ];
    let mut checked = 0u64;
    for (name, spec) in corpus {
        let d = spec.degree();
        let poly = spec.defining_polynomial();
        let field = NumberField::new(spec);
        for &p in primes.primes() {
            let st = field.splitting_type(p).unwrap();
            assert_eq!(st.total_degree(), d, "{name} p={p}: fundamental equation");
            if !st.exact {
                continue;
            }
            if let Some(expected) = pattern_oracle(&poly, p) {
                let mut got = st.pairs.clone();
                got.sort_unstable();
                let mut exp = expected;
                exp.sort_unstable();
                assert_eq!(got, exp, "{name} p={p}");
                checked += 1;
            }
        }
    }
    let secs = started.elapsed().as_secs_f64();
    assert!(secs < 30.0, "runtime {secs:.1}s exceeds 30s");
    println!(
        "ACCEPTANCE 1 (splitting correctness): PASS - {checked} exact patterns matched the \
         root-count oracle across 4 fields, p <= 10^4, in {secs:.1}s"
    );
}

#[test]
fn criterion_02_chebotarev_split_fractions() {
    let started = Instant::now();
    let primes = PrimeTable::sieve(1_000_000).unwrap();
    let qi = NumberField::new(NumberFieldSpec::quadratic(-4).unwrap());
    let f_qi = qi.split_fraction(&primes, 1_000_000).unwrap();
    let cubic = NumberField::new(NumberFieldSpec::polynomial(vec![-2, 0, 0, 1]).unwrap());
    let f_cubic = cubic.split_fraction(&primes, 1_000_000).unwrap();
    let secs = started.elapsed().as_secs_f64();
    assert!((f_qi - 0.5).abs() < 0.01, "Q(i) split fraction {f_qi}");
    assert!((f_cubic - 1.0 / 6.0).abs() < 0.02, "x^3-2 split fraction {f_cubic}");
    assert!(secs < 60.0, "runtime {secs:.1}s exceeds 60s");
    println!(
        "ACCEPTANCE 2 (Chebotarev sanity): PASS - split fractions to 10^6: Q(i) {f_qi:.4} \
         (expect 1/2), x^3-2 {f_cubic:.4} (expect 1/6), in {secs:.1}s"
    );
}

#[test]
fn criterion_03_local_factor_quadrature() {
    // 2^16-node midpoint oracle with direct trigonometric sums, independent
    // of the adaptive path.
    let series = LambdaSeries::dedekind(NumberField::new(NumberFieldSpec::quadratic(-4).unwrap()));
    let primes = PrimeTable::sieve(100).unwrap();
    let nodes: Vec<f64> = (0..5).map(|k| -10.0 + 5.0 * k as f64).collect();
    let mut worst_oracle_dev = 0.0f64;
    let mut worst_reflect = 0.0f64;
    let mut worst_modulus = 0.0f64;
    for &sigma in &[0.6, 1.0, 2.0] {
        let cfg = LocalEvalConfig::new(sigma).unwrap();
        for &p in primes.primes() {
            let ap = build_ap_series(&series, p, &cfg).unwrap();
            // Oracle tables at 2^16 midpoints.
            let n = 1usize << 16;
            let (re, im) = ap.coefficients();
            let mut a1 = vec![0.0f64; n];
            let mut a2 = vec![0.0f64; n];
            for (j, (x1, x2)) in a1.iter_mut().zip(a2.iter_mut()).enumerate() {
                let t = (j as f64 + 0.5) / n as f64;
                for (idx, (&cr, &ci)) in re.iter().zip(im).enumerate() {
                    let ang = std::f64::consts::TAU * (idx as f64 + 1.0) * t;
                    *x1 += -cr * ang.cos() + ci * ang.sin();
                    *x2 += -cr * ang.sin() - ci * ang.cos();
                }
            }
            for &u in &nodes {
                for &v in &nodes {
                    let adaptive = local_factor(&ap, u, v, &cfg);
                    assert!(adaptive.converged, "p={p} sigma={sigma} ({u},{v})");
                    let mut sum = Complex64::new(0.0, 0.0);
                    for j in 0..n {
                        let phase = u * a1[j] + v * a2[j];
                        sum += Complex64::new(phase.cos(), phase.sin());
                    }
                    let oracle = sum / n as f64;
                    worst_oracle_dev = worst_oracle_dev.max((adaptive.value - oracle).norm());
                    worst_modulus = worst_modulus.max(adaptive.value.norm());
                    let reflected = local_factor(&ap, u, -v, &cfg);
                    worst_reflect =
                        worst_reflect.max((reflected.value - adaptive.value).norm());
                }
            }
        }
    }
    assert!(worst_oracle_dev < 1e-12, "oracle deviation {worst_oracle_dev:.3e}");
    assert!(worst_modulus <= 1.0 + 1e-12, "modulus {worst_modulus}");
    assert!(worst_reflect < 1e-12, "reflection residual {worst_reflect:.3e}");
    println!(
        "ACCEPTANCE 3 (local-factor quadrature): PASS - max oracle deviation \
         {worst_oracle_dev:.2e}, max modulus 1+{:.2e}, reflection residual {worst_reflect:.2e}",
        worst_modulus - 1.0
    );
}

#[test]
fn criterion_04_tail_honesty() {
    let primes = PrimeTable::sieve(4000).unwrap();
    let series = LambdaSeries::dedekind(NumberField::new(NumberFieldSpec::quadratic(-4).unwrap()));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xace);
    let mut tightest_margin = f64::INFINITY;
    for draw in 0..100 {
        let sigma = 0.7 + 1.8 * unit(&mut rng);
        let u = -6.0 + 12.0 * unit(&mut rng);
        let v = -6.0 + 12.0 * unit(&mut rng);
        let cfg_p = ProductConfig::new(sigma, 1500, f64::INFINITY).unwrap();
        let cfg_2p = ProductConfig::new(sigma, 3000, f64::INFINITY).unwrap();
        let a = truncated_product(&series, u, v, &cfg_p, &primes).unwrap();
        let b = truncated_product(&series, u, v, &cfg_2p, &primes).unwrap();
        let change = (b.value - a.value).norm();
        // Strict inequality, no tolerance.
        assert!(
            change <= a.tail_bound,
            "draw {draw}: sigma={sigma:.3} ({u:.2},{v:.2}): |change| {change:.3e} > bound {:.3e}",
            a.tail_bound
        );
        if a.tail_bound > 0.0 {
            tightest_margin = tightest_margin.min(a.tail_bound / change.max(1e-300));
        }
        // The reported bound matches the documented formula.
        let expected = tail_bound(series.bound_degree(), sigma, 1500, u, v);
        assert_eq!(a.tail_bound, expected);
    }
    println!(
        "ACCEPTANCE 4 (Euler-product tail honesty): PASS - 100/100 doubling changes within \
         the reported bound (smallest bound/change ratio {tightest_margin:.1})"
    );
}

#[test]
fn criterion_05_density_normalization_and_realness() {
    let fields: Vec<(&str, NumberFieldSpec)> = vec![
        ("Q", NumberFieldSpec::rational()),
        ("Q(i)", NumberFieldSpec::quadratic(-4).unwrap()),
    ];
    let mut lines = Vec::new();
    for (name, spec) in fields {
        for &sigma in &[1.2, 1.5] {
            let started = Instant::now();
            let series = LambdaSeries::dedekind(NumberField::new(spec.clone()));
            let cfg = ProductConfig::for_grid(sigma, 40.0, 1e-4, series.bound_degree()).unwrap();
            let primes = PrimeTable::sieve(cfg.prime_cutoff.max(1000)).unwrap();
            let grid = charfun_grid(&series, 40.0, 512, &cfg, &primes).unwrap();
            let density = invert_to_density(&grid).unwrap();
            let secs = started.elapsed().as_secs_f64();
            let norm_resid = (density.normalization() - 1.0).abs();
            let imag_ratio = density.meta.max_imag / density.meta.peak;
            assert!(
                norm_resid < 1e-3,
                "{name} sigma={sigma}: normalization residual {norm_resid:.3e}"
            );
            assert!(
                imag_ratio < 1e-6,
                "{name} sigma={sigma}: imaginary residual {imag_ratio:.3e} of peak"
            );
            assert!(secs < 300.0, "{name} sigma={sigma}: runtime {secs:.1}s exceeds 5 min");
            lines.push(format!(
                "{name} sigma {sigma}: norm residual {norm_resid:.1e}, imag/peak \
                 {imag_ratio:.1e}, {secs:.0}s"
            ));
        }
    }
    println!(
        "ACCEPTANCE 5 (density normalization and realness): PASS - {}",
        lines.join("; ")
    );
}

#[test]
fn criterion_06_parseval_round_trip() {
    let series = LambdaSeries::dedekind(NumberField::new(NumberFieldSpec::rational()));
    let sigma = 1.5;
    let cfg = ProductConfig::for_grid(sigma, 40.0, 1e-4, series.bound_degree()).unwrap();
    let primes = PrimeTable::sieve(cfg.prime_cutoff.max(1000)).unwrap();
    let grid = charfun_grid(&series, 40.0, 512, &cfg, &primes).unwrap();
    let density = invert_to_density(&grid).unwrap();

    // Round trip back to the w-grid, compared on the inner half-grid.
    let back = forward_transform(&density);
    let n = grid.u_axis.len();
    let h = n / 2;
    let mut max_rt = 0.0f64;
    for i in h - h / 2..h + h / 2 {
        for j in h - h / 2..h + h / 2 {
            max_rt = max_rt.max((back[i * n + j] - grid.value_at(i, j)).norm());
        }
    }
    assert!(max_rt < 1e-6, "round-trip deviation {max_rt:.3e}");

    // 20 gaussian test functions: the two integration routes agree.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xfeed);
    let mut max_pair = 0.0f64;
    for _ in 0..20 {
        let cx = -2.5 + 5.0 * unit(&mut rng);
        let cy = -2.5 + 5.0 * unit(&mut rng);
        let width = 0.5 + 1.5 * unit(&mut rng);
        let phi = TestFunction::gaussian((cx, cy), width).unwrap();
        let direct = integrate_against(&density, &phi).unwrap().value;
        let paired = fourier_pairing(&grid, &phi).unwrap();
        max_pair = max_pair.max((direct - paired).abs());
    }
    assert!(max_pair < 1e-4, "Parseval deviation {max_pair:.3e}");
    println!(
        "ACCEPTANCE 6 (Parseval/round-trip): PASS - inner-half round trip {max_rt:.2e}, \
         worst of 20 gaussian pairings {max_pair:.2e}"
    );
}

fn charfun_deviation(
    series: &LambdaSeries,
    sigma: f64,
    t_max: f64,
    seed: u64,
    primes: &PrimeTable,
    model: &mfunc::product::CharFunGrid,
) -> f64 {
    let cfg = SamplerConfig {
        sigma,
        t_max,
        n_samples: 200_000,
        x: 1000.0,
        mode: TruncationMode::Smoothed,
        seed,
        jitter: true,
        coeff_cap: DEFAULT_COEFF_CAP,
    };
    let samples = sample_line(series, &cfg, primes).unwrap();
    let emp = empirical_charfun(&samples, &model.u_axis);
    compare_report(&emp, model, 1.0, Some(3.0)).unwrap().max_dev
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs[xs.len() / 2]
}

fn run_criterion_07(name: &str, spec: NumberFieldSpec, sigma: f64, threshold: f64) -> String {
    let started = Instant::now();
    let series = LambdaSeries::dedekind(NumberField::new(spec));
    let primes = PrimeTable::sieve(1_000_000).unwrap();
    let cfg = ProductConfig::for_grid(sigma, 3.2, 1e-4, series.bound_degree()).unwrap();
    let model_primes = PrimeTable::sieve(cfg.prime_cutoff.max(1000)).unwrap();
    let model = charfun_grid(&series, 3.2, 32, &cfg, &model_primes).unwrap();

    let seeds = [1u64, 2, 3, 4, 5];
    let dev_t2000: Vec<f64> = seeds
        .iter()
        .map(|&s| charfun_deviation(&series, sigma, 2000.0, s, &primes, &model))
        .collect();
    let dev_t8000: Vec<f64> = seeds
        .iter()
        .map(|&s| charfun_deviation(&series, sigma, 8000.0, s, &primes, &model))
        .collect();
    for (s, d) in seeds.iter().zip(&dev_t2000) {
        assert!(
            d < &threshold,
            "{name}: seed {s} deviation {d:.4} exceeds threshold {threshold}"
        );
    }
    let med2 = median(dev_t2000.clone());
    let med8 = median(dev_t8000.clone());
    assert!(
        med8 <= med2,
        "{name}: median deviation grew from {med2:.4} (T=2000) to {med8:.4} (T=8000)"
    );
    let secs = started.elapsed().as_secs_f64();
    assert!(secs < 600.0, "{name}: runtime {secs:.0}s exceeds 10 min");
    format!(
        "{name}: max dev over seeds {:.4} < {threshold}, median {med2:.4} (T=2000) -> \
         {med8:.4} (T=8000), {secs:.0}s",
        dev_t2000.iter().cloned().fold(0.0, f64::max)
    )
}

#[test]
fn criterion_07_time_average_vs_model_rational() {
    let line = run_criterion_07("K=Q sigma=1.5", NumberFieldSpec::rational(), 1.5, 0.05);
    println!("ACCEPTANCE 7a (time average vs model, Q): PASS - {line}");
}

#[test]
fn criterion_07_time_average_vs_model_gaussian_field() {
    let line = run_criterion_07(
        "K=Q(i) sigma=1.2",
        NumberFieldSpec::quadratic(-4).unwrap(),
        1.2,
        0.08,
    );
    println!("ACCEPTANCE 7b (time average vs model, Q(i)): PASS - {line}");
}

#[test]
fn criterion_08_test_function_averages() {
    let mut lines = Vec::new();
    for (name, spec, sigma) in [
        ("Q", NumberFieldSpec::rational(), 1.5),
        ("Q(i)", NumberFieldSpec::quadratic(-4).unwrap(), 1.2),
    ] {
        let series = LambdaSeries::dedekind(NumberField::new(spec));
        let primes = PrimeTable::sieve(1_000_000).unwrap();
        let cfg = SamplerConfig {
            sigma,
            t_max: 2000.0,
            n_samples: 200_000,
            x: 1000.0,
            mode: TruncationMode::Smoothed,
            seed: 1,
            jitter: true,
            coeff_cap: DEFAULT_COEFF_CAP,
        };
        let samples = sample_line(&series, &cfg, &primes).unwrap();
        let mean = samples.values.iter().sum::<Complex64>() / samples.values.len() as f64;
        let phi = TestFunction::gaussian((mean.re, mean.im), 1.0).unwrap();
        let avg = empirical_average(&samples, &phi).unwrap();

        let pcfg = ProductConfig::for_grid(sigma, 40.0, 1e-4, series.bound_degree()).unwrap();
        let grid_primes = PrimeTable::sieve(pcfg.prime_cutoff.max(1000)).unwrap();
        let grid = charfun_grid(&series, 40.0, 512, &pcfg, &grid_primes).unwrap();
        let density = invert_to_density(&grid).unwrap();
        let integral = integrate_against(&density, &phi).unwrap().value;
        let dev = (avg - integral).abs();
        assert!(
            dev < 0.02,
            "{name} sigma={sigma}: |empirical {avg:.5} - integral {integral:.5}| = {dev:.5}"
        );
        lines.push(format!(
            "{name}: empirical {avg:.5} vs density integral {integral:.5} (dev {dev:.1e})"
        ));
    }
    println!("ACCEPTANCE 8 (test-function averages): PASS - {}", lines.join("; "));
}

#[test]
fn criterion_09_decay_shape() {
    // Implemented exactly as stated: least-squares slope of
    // log(-log max|m|) vs log r over shells r in [10, 40], compared with
    // 1/sigma at sigma in {1, 2} for K = Q.
    //
    // Note: the measured slopes sit above the asymptotic exponent. Over this
    // radius window many local factors are still in their Gaussian regime
    // (log m_p = -mu_p, quadratic in r), so the observed log-log slope lies
    // between 1 and 2 and relaxes toward 1/sigma only past the (uncomputed)
    // radius threshold where the stretched-exponential bound sets in. The
    // slope values here are cross-validated against an independent
    // implementation; the criterion is reported as stated and left red.
    let series = LambdaSeries::dedekind(NumberField::new(NumberFieldSpec::rational()));
    let mut results = Vec::new();
    for &(sigma, tol) in &[(1.0, 1e-2), (2.0, 1e-4)] {
        let cfg = ProductConfig::for_grid(sigma, 30.0, tol, series.bound_degree()).unwrap();
        let primes = PrimeTable::sieve(cfg.prime_cutoff.max(1000)).unwrap();
        let grid = charfun_grid(&series, 30.0, 256, &cfg, &primes).unwrap();
        let profile = decay_profile(&grid, 10.0, 40.0, 24);
        let slope = profile.fitted_exponent.expect("fit must be possible");
        // Shell maxima are monotone non-increasing once decay sets in.
        let shells: Vec<&mfunc::product::ShellStat> =
            profile.shells.iter().filter(|s| s.count > 0).collect();
        if let Some(start) = shells.iter().position(|s| s.max_abs < 0.9) {
            for w in shells[start..].windows(2) {
                assert!(
                    w[1].max_abs <= w[0].max_abs + 1e-12,
                    "sigma={sigma}: shell maxima not monotone"
                );
            }
        }
        results.push((sigma, slope));
    }
    let all_within = results.iter().all(|&(s, slope)| (slope - 1.0 / s).abs() <= 0.15);
    let detail = results
        .iter()
        .map(|&(s, slope)| {
            format!(
                "sigma {s}: fitted {slope:.3} vs 1/sigma {:.2} (|diff| {:.2})",
                1.0 / s,
                (slope - 1.0 / s).abs()
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    if all_within {
        println!("ACCEPTANCE 9 (decay shape): PASS - {detail}");
    } else {
        println!(
            "ACCEPTANCE 9 (decay shape): FAIL - {detail}; the [10,40] window is \
             pre-asymptotic for the stretched-exponential bound (see decisions ledger)"
        );
    }
    assert!(
        all_within,
        "fitted decay exponents outside 1/sigma +- 0.15: {detail}"
    );
}

#[test]
fn criterion_10_variant_coefficient_checks() {
    // Quadratic-character consistency, exhaustive over fundamental |D| <= 40,
    // p <= 500, m <= 6.
    let primes = PrimeTable::sieve(500).unwrap();
    let mut checks = 0u64;
    for d in -40i64..=40 {
        if !mfunc::field::is_fundamental_discriminant(d) {
            continue;
        }
        for &p in primes.primes() {
            if p == 2 || d.unsigned_abs() % p == 0 {
                continue;
            }
            for m in 1..=6 {
                assert!(
                    quadratic_consistency_check(d, p, m).unwrap(),
                    "D={d} p={p} m={m}"
                );
                checks += 1;
            }
        }
    }

    // Hecke recursion cross-check for the built-in eigenvalues, p <= 100,
    // m <= 10, against explicit Satake powers.
    let table = EigenvalueTable::delta(100).unwrap();
    let primes100 = PrimeTable::sieve(100).unwrap();
    for &p in primes100.primes() {
        let lambda = table.lambda(p).unwrap();
        let pair = SatakePair::from_eigenvalue(lambda);
        for m in 0..=10 {
            let rec = power_sum_recursive(lambda, m);
            let pow = pair.power_sum(m);
            assert!((rec - pow).abs() < 1e-9, "p={p} m={m}: {rec} vs {pow}");
        }
        // The recursion c_{m+1} = lambda c_m - c_{m-1} itself.
        for m in 1..=9 {
            let lhs = power_sum_recursive(lambda, m + 1);
            let rhs = lambda * power_sum_recursive(lambda, m) - power_sum_recursive(lambda, m - 1);
            assert!((lhs - rhs).abs() < 1e-10, "p={p} m={m}");
        }
    }

    // lambda(2) from the q-expansion, against the independent factor-by-
    // factor oracle of q prod (1-q^k)^24.
    let mut oracle = vec![0i128; 64];
    oracle[0] = 1;
    for _ in 0..24 {
        for k in 1..64 {
            for i in (k..64).rev() {
                oracle[i] -= oracle[i - k];
            }
        }
    }
    assert_eq!(oracle[1], -24);
    let eig = delta_eigenvalues(100).unwrap();
    let expected = oracle[1] as f64 / 2f64.powf(5.5);
    assert!(
        (eig[&2] - expected).abs() < 1e-12,
        "lambda(2) = {} vs oracle {expected}",
        eig[&2]
    );
    assert!((eig[&2] - (-24.0 / 2f64.powf(5.5))).abs() < 1e-12);
    println!(
        "ACCEPTANCE 10 (variant coefficients): PASS - {checks} quadratic consistency checks, \
         Hecke recursion to m=10 for p <= 100, lambda(2) = {:.6} matches the q-expansion \
         oracle",
        eig[&2]
    );
}

#[test]
fn criterion_11_cli_determinism() {
    use std::process::Command;
    let dir = {
        let mut p = std::env::temp_dir();
        p.push(format!("mfunc-acceptance-11-{}", std::process::id()));
        std::fs::create_dir_all(&p).unwrap();
        p
    };
    let spec = dir.join("qi.json");
    std::fs::write(&spec, r#"{"kind":"quadratic","D":-4}"#).unwrap();
    let bin = env!("CARGO_BIN_EXE_mfunc");
    let sha = |p: &std::path::Path| -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        h.update(std::fs::read(p).unwrap());
        format!("{:x}", h.finalize())
    };

    // One run of each artifact-producing command...
    let mfun = |out: &str| {
        let st = Command::new(bin)
            .args([
                "mfun", "--spec", spec.to_str().unwrap(), "--sigma", "1.3", "--extent", "10",
                "--n", "64", "-o", dir.join(out).to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(st.success());
    };
    let empirical = |out: &str| {
        let st = Command::new(bin)
            .args([
                "empirical", "--spec", spec.to_str().unwrap(), "--sigma", "1.3", "-T", "300",
                "--samples", "5000", "--x", "30", "--seed", "9", "-o",
                dir.join(out).to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(st.success());
    };
    let density = |inp: &str, out: &str| {
        let st = Command::new(bin)
            .args([
                "density", "--charfun", dir.join(inp).to_str().unwrap(), "-o",
                dir.join(out).to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(st.success());
    };
    mfun("m1");
    mfun("m2");
    empirical("e1");
    empirical("e2");
    density("m1.grid", "d1");
    density("m2.grid", "d2");

    // ... replayed runs produce byte-identical outputs.
    let pairs = [
        ("m1.csv", "m2.csv"),
        ("m1.grid", "m2.grid"),
        ("e1.samples.csv", "e2.samples.csv"),
        ("e1.empirical.grid", "e2.empirical.grid"),
        ("d1.csv", "d2.csv"),
        ("d1.grid", "d2.grid"),
    ];
    for (a, b) in pairs {
        assert_eq!(sha(&dir.join(a)), sha(&dir.join(b)), "{a} vs {b}");
    }

    // The manifest's recorded hashes match the artifacts on disk.
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("m1.manifest.json")).unwrap())
            .unwrap();
    for entry in manifest["outputs"].as_array().unwrap() {
        let path = std::path::PathBuf::from(entry["path"].as_str().unwrap());
        assert_eq!(sha(&path), entry["sha256"].as_str().unwrap());
    }
    std::fs::remove_dir_all(&dir).ok();
    println!(
        "ACCEPTANCE 11 (CLI determinism): PASS - mfun/empirical/density replays are \
         byte-identical and manifests record matching hashes"
    );
}
