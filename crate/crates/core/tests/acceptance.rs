//! Acceptance suite: every library-level acceptance criterion as its own
//! test, one printed pass/fail line each (run with `-- --nocapture` to see
//! the lines for passing tests). The CLI golden-file criterion lives in the
//! CLI crate's test suite.
//!
//! Two assertions are expected to fail and are isolated at the bottom: the
//! right-focal row-sum closed form is a strict upper bound (its source
//! drops a nonnegative term before maximizing), so no faithful kernel can
//! attain it; see `right_rowsum_equality_*` for the analysis and the
//! passing bound-direction checks.

use nalgebra::Complex;

use nabla_bvp::calculus::monomial_grid;
use nabla_bvp::rng::SplitMix64;
use nabla_bvp::special::rising;
use nabla_bvp::{
    bvp, check_nonexistence, closed_form_bounds, eigen_bound, eigen_spectrum, frac_diff, frac_sum,
    greens_left, greens_right, kernel_stats, lgamma_signed, lyapunov_bound, ml_eval,
    ml_frac_diff_deviation, power_rule, sup_norm, verify_solution, zero_exclusion_scan, BvpSpec,
    Domain, FocalKind, FracDiffMethod, GridFunction, MLParams, PowerRuleMode,
};

const KINDS: [FocalKind; 2] = [FocalKind::Left, FocalKind::Right];

fn gamma(x: f64) -> f64 {
    lgamma_signed(x).unwrap().value()
}

fn dom(a: i64, b: i64) -> Domain {
    Domain::new(a, b).unwrap()
}

fn kernel(kind: FocalKind, d: &Domain, alpha: f64) -> nabla_bvp::GreensKernel {
    match kind {
        FocalKind::Left => greens_left(d, alpha).unwrap(),
        FocalKind::Right => greens_right(d, alpha).unwrap(),
    }
}

#[test]
fn criterion_01_closed_form_green_maxima() {
    let d = dom(0, 4);
    let alpha = 1.5;

    let left = kernel_stats(&greens_left(&d, alpha).unwrap());
    assert!(
        (left.max - 6.0).abs() <= 1e-10 * 6.0,
        "left max {}",
        left.max
    );
    assert!(
        (left.rowsum_max - 14.0).abs() <= 1e-10 * 14.0,
        "left rowsum {}",
        left.rowsum_max
    );

    let right = kernel_stats(&greens_right(&d, alpha).unwrap());
    assert!(
        (right.max - 1.875).abs() <= 1e-10 * 1.875,
        "right max {}",
        right.max
    );

    println!(
        "criterion 1 (closed-form Green maxima, attainable part): PASS — \
         left max {:.12}, left rowsum {:.12}, right max {:.12}",
        left.max, left.rowsum_max, right.max
    );
}

#[test]
fn criterion_02_sweep_positivity_and_agreement() {
    let mut cells = 0u32;
    for &alpha in &[1.05, 1.25, 1.5, 1.75, 1.95] {
        for n in 2..=40 {
            let d = dom(0, n);
            for kind in KINDS {
                let k = kernel(kind, &d, alpha);
                let st = kernel_stats(&k);
                let cb = closed_form_bounds(kind, &d, alpha).unwrap();
                assert!(
                    st.min >= -1e-12,
                    "{kind:?} alpha={alpha} n={n}: min {}",
                    st.min
                );
                assert!(
                    (st.max - cb.max).abs() <= 1e-10 * cb.max,
                    "{kind:?} alpha={alpha} n={n}: max {} vs closed {}",
                    st.max,
                    cb.max
                );
                match kind {
                    FocalKind::Left => assert!(
                        (st.rowsum_max - cb.rowsum_max).abs() <= 1e-10 * cb.rowsum_max,
                        "left rowsum alpha={alpha} n={n}: {} vs {}",
                        st.rowsum_max,
                        cb.rowsum_max
                    ),
                    // the attained-equality claim for the right kind is the
                    // documented spec defect; the true (bound) direction:
                    FocalKind::Right => assert!(
                        st.rowsum_max <= cb.rowsum_max * (1.0 + 1e-10),
                        "right rowsum bound alpha={alpha} n={n}"
                    ),
                }
                cells += 1;
            }
        }
    }
    println!("criterion 2 (sweep positivity / max / left-rowsum agreement): PASS — {cells} cells");
}

#[test]
fn criterion_03_operator_equivalence() {
    let mut rng = SplitMix64::new(0xac3);
    let mut worst: f64 = 0.0;
    for nu in [0.3, 1.5, 1.9] {
        for _ in 0..100 {
            let u = GridFunction::from_fn(1, 32, |_| rng.uniform(-1.0, 1.0)).unwrap();
            let scale = sup_norm(&u);
            let d = frac_diff(&u, nu, 0, FracDiffMethod::Direct).unwrap();
            let c = frac_diff(&u, nu, 0, FracDiffMethod::Composition).unwrap();
            for (t, v) in d.iter() {
                worst = worst.max((v - c.get(t).unwrap()).abs() / scale);
            }
        }
    }
    assert!(worst <= 1e-9, "worst relative deviation {worst:e}");
    println!("criterion 3 (composition vs direct, 300 random grids): PASS — worst {worst:.3e}");
}

#[test]
fn criterion_04_power_rules_and_kernel_modes() {
    // closed-form agreement
    let d16 = dom(0, 16);
    let mut worst: f64 = 0.0;
    for alpha in [1.1, 1.5, 1.9] {
        for mu in [0.0, alpha - 2.0, alpha - 1.0, 1.0] {
            let g = monomial_grid(&d16, mu).unwrap();
            let s = frac_sum(&g, alpha, 0).unwrap();
            let fd = frac_diff(&g, alpha, 0, FracDiffMethod::Direct).unwrap();
            for t in 2..=16 {
                let cs = power_rule(mu, alpha, 0, PowerRuleMode::Sum, t).unwrap();
                let cd = power_rule(mu, alpha, 0, PowerRuleMode::Diff, t).unwrap();
                worst = worst.max((s.get(t).unwrap() - cs).abs() / cs.abs().max(1.0));
                worst = worst.max((fd.get(t).unwrap() - cd).abs() / cd.abs().max(1.0));
            }
        }
    }
    assert!(worst <= 1e-9, "power-rule agreement {worst:e}");

    // kernel modes, with a brute-force direct-summation oracle per term
    let brute = |vals: &GridFunction, alpha: f64, t: i64| -> f64 {
        let gn = lgamma_signed(-alpha).unwrap().value();
        let mut sum = 0.0;
        for (s, v) in vals.iter().take(t as usize) {
            sum += rising((t - s + 1) as f64, -alpha - 1.0).unwrap() * v;
        }
        sum / gn
    };
    let mut worst_m1: f64 = 0.0;
    let mut worst_m2: f64 = 0.0;
    let mut worst_dev: f64 = 0.0;
    for alpha in [1.1, 1.5, 1.9] {
        let m1 = monomial_grid(&d16, alpha - 1.0).unwrap();
        let m2 = monomial_grid(&d16, alpha - 2.0).unwrap();
        let d1 = frac_diff(&m1, alpha, 0, FracDiffMethod::Direct).unwrap();
        let d2 = frac_diff(&m2, alpha, 0, FracDiffMethod::Direct).unwrap();
        for t in 2..=16 {
            worst_m1 = worst_m1.max(d1.get(t).unwrap().abs());
            assert!((d1.get(t).unwrap() - brute(&m1, alpha, t)).abs() < 1e-10);
        }
        for t in 3..=16 {
            worst_m2 = worst_m2.max(d2.get(t).unwrap().abs());
        }
        worst_dev = worst_dev.max((d2.get(2).unwrap() + gamma(alpha - 1.0)).abs());
        assert!(
            (d2.get(2).unwrap() - brute(&m2, alpha, 2)).abs() < 1e-10,
            "brute-force oracle"
        );
    }
    assert!(worst_m1 <= 1e-10, "mode alpha-1 annihilation {worst_m1:e}");
    assert!(worst_m2 <= 1e-10, "mode alpha-2 annihilation {worst_m2:e}");
    assert!(worst_dev <= 1e-10, "a+2 deviation formula {worst_dev:e}");
    println!(
        "criterion 4 (power rules + kernel modes): PASS — agreement {worst:.3e}, \
         annihilation {:.3e}, deviation formula {worst_dev:.3e}",
        worst_m1.max(worst_m2)
    );
}

#[test]
fn criterion_05_bvp_round_trip() {
    let mut rng = SplitMix64::new(0x05);
    let mut runs = 0u32;
    for kind in KINDS {
        for alpha in [1.1, 1.5, 1.9] {
            for n in [3_i64, 8, 32] {
                let d = dom(0, n);
                let k = kernel(kind, &d, alpha);
                for _ in 0..100 {
                    let h = GridFunction::from_fn(2, (n - 1) as usize, |_| rng.uniform(-1.0, 1.0))
                        .unwrap();
                    let spec = BvpSpec::new(kind, d, alpha, h).unwrap();
                    let u = bvp::solve_with_kernel(&spec, &k).unwrap();
                    // exact boundary values
                    match kind {
                        FocalKind::Left => assert_eq!(u.get(n).unwrap(), 0.0),
                        FocalKind::Right => assert_eq!(u.get(1).unwrap(), 0.0),
                    }
                    let rep = verify_solution(&spec, &u, 1e-9).unwrap();
                    assert!(rep.pass, "{kind:?} alpha={alpha} n={n}: {rep:?}");
                    runs += 1;
                }
            }
        }
    }
    println!("criterion 5 (BVP round trip, {runs} random forcings): PASS");
}

#[test]
fn criterion_06_spectral_lower_bounds() {
    let mut checked = 0u32;
    for kind in KINDS {
        for alpha in [1.1, 1.5, 1.9] {
            for n in 3..=20 {
                let d = dom(0, n);
                let s = eigen_spectrum(kind, &d, alpha).unwrap();
                let bound = eigen_bound(kind, &d, alpha).unwrap();
                for l in &s.eigenvalues {
                    assert!(
                        l.abs() >= bound * (1.0 - 1e-10),
                        "{kind:?} alpha={alpha} n={n}: |lambda| {} < bound {bound}",
                        l.abs()
                    );
                    checked += 1;
                }
            }
        }
    }
    // b−a = 3: match the quadratic characteristic-polynomial oracle
    for kind in KINDS {
        for alpha in [1.1, 1.5, 1.9] {
            let d = dom(0, 3);
            let m = bvp::green_submatrix(kind, &d, alpha).unwrap();
            let tr = m[(0, 0)] + m[(1, 1)];
            let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
            let disc = tr * tr - 4.0 * det;
            let mut oracle: Vec<Complex<f64>> = if disc >= 0.0 {
                vec![
                    Complex::new((tr - disc.sqrt()) / 2.0, 0.0),
                    Complex::new((tr + disc.sqrt()) / 2.0, 0.0),
                ]
            } else {
                vec![
                    Complex::new(tr / 2.0, -(-disc).sqrt() / 2.0),
                    Complex::new(tr / 2.0, (-disc).sqrt() / 2.0),
                ]
            }
            .into_iter()
            .filter(|mu| mu.norm() > 1e-13)
            .map(|mu| Complex::new(1.0, 0.0) / mu)
            .collect();
            oracle.sort_by(|x, y| x.norm().partial_cmp(&y.norm()).unwrap());
            let s = eigen_spectrum(kind, &d, alpha).unwrap();
            assert_eq!(s.eigenvalues.len(), oracle.len());
            for (got, want) in s.eigenvalues.iter().zip(&oracle) {
                assert!(
                    (got.re - want.re).abs() <= 1e-8 && (got.im - want.im).abs() <= 1e-8,
                    "{kind:?} alpha={alpha}: {got:?} vs {want:?}"
                );
            }
        }
    }
    println!("criterion 6 (spectral lower bounds, {checked} eigenvalues + 2x2 oracle): PASS");
}

#[test]
fn criterion_07_lyapunov_inequality() {
    for kind in KINDS {
        for alpha in [1.1, 1.5, 1.9] {
            for n in 3..=20 {
                let d = dom(0, n);
                let s = eigen_spectrum(kind, &d, alpha).unwrap();
                let lb = lyapunov_bound(kind, &d, alpha).unwrap();
                for l in s.eigenvalues.iter().filter(|l| l.is_real()) {
                    let total = (n - 1) as f64 * l.re.abs();
                    assert!(
                        total >= lb * (1.0 - 1e-10),
                        "{kind:?} alpha={alpha} n={n}: sum |q| {total} < {lb}"
                    );
                }

                // q ≡ 0.9 · bound/(b−a−1) is safely below the threshold
                let safe = 0.9 * lb / (n - 1) as f64;
                let spec = BvpSpec::new(
                    kind,
                    d,
                    alpha,
                    GridFunction::from_fn(2, (n - 1) as usize, |_| safe).unwrap(),
                )
                .unwrap();
                assert!(check_nonexistence(&spec).unwrap().guaranteed_no_nontrivial);

                // q ≡ λ_min is not
                let lam_min = s.min_abs_lambda();
                let spec = BvpSpec::new(
                    kind,
                    d,
                    alpha,
                    GridFunction::from_fn(2, (n - 1) as usize, |_| lam_min).unwrap(),
                )
                .unwrap();
                assert!(!check_nonexistence(&spec).unwrap().guaranteed_no_nontrivial);
            }
        }
    }
    println!("criterion 7 (Lyapunov inequality + nonexistence checks): PASS");
}

#[test]
fn criterion_08_mittag_leffler() {
    // geometric identity
    for p in [-0.9, -0.5, 0.5, 0.9] {
        let params = MLParams::new(p, 1.5, 0.7).unwrap();
        let v = ml_eval(&params, 1, 0, 1e-13).unwrap();
        let expect = 1.0 / (1.0 - p);
        assert!((v - expect).abs() <= 1e-12 * expect.abs(), "p={p}");
    }

    // fractional-difference identity deviation
    let d = dom(0, 20);
    for p in [0.5, -0.5] {
        let params = MLParams::new(p, 1.5, 0.5).unwrap();
        let dev = ml_frac_diff_deviation(&params, 1.5, &d, 1e-12).unwrap();
        assert!(dev < 1e-8, "p={p}: deviation {dev:e}");
    }

    // E_{−c,ν,ν−1} solves the fractional equation on N^b_{a+2}
    let nu = 1.5;
    let mut worst: f64 = 0.0;
    for c in [0.5, -0.5] {
        let params = MLParams::new(-c, nu, nu - 1.0).unwrap();
        let g = nabla_bvp::ml_grid(&params, &d, 1e-13).unwrap();
        let u = GridFunction::from_fn(1, 20, |t| g.get(t).unwrap()).unwrap();
        let df = frac_diff(&u, nu, 0, FracDiffMethod::Direct).unwrap();
        for t in 2..=20 {
            worst = worst.max((df.get(t).unwrap() + c * u.get(t).unwrap()).abs());
        }
    }
    assert!(worst < 1e-8, "FDE residual {worst:e}");
    println!("criterion 8 (Mittag-Leffler identities): PASS — worst FDE residual {worst:.3e}");
}

#[test]
fn criterion_09_zero_exclusion() {
    let mut scans = 0u32;
    for kind in KINDS {
        for alpha in [1.25, 1.5, 1.75] {
            for n in 3..=10 {
                let rep = zero_exclusion_scan(kind, alpha, n, 1001, 1e-10).unwrap();
                assert_eq!(rep.sign_changes, 0, "{kind:?} alpha={alpha} n={n}");
                assert!(rep.min_abs_value > 0.0, "{kind:?} alpha={alpha} n={n}");
                scans += 1;
            }
        }
    }
    println!("criterion 9 (zero exclusion, {scans} scans x 1001 samples): PASS");
}

// ---------------------------------------------------------------------------
// Documented spec defect: the right-focal row-sum closed form
// (b−a−1)·(b−a−1)^{α−1}/Γ(α) is an upper bound that is not attained.
//
// The source row-sum derivation for the right kernel discards the
// nonnegative term (t−a−1)^{α}/Γ(α+1) before maximizing over t; the true
// maximal row sum stays strictly below the closed form for every b−a ≥ 3
// (50-digit reference for a=0, b=4, α=1.5: row sums [0, 3, 3.5, 3.125]
// vs closed form 5.625). Forcing a kernel to attain it would break the
// round-trip criterion, the unit-gap identity and positivity. The two
// tests below assert the equalities exactly as specified and are expected
// to fail; the bound direction is asserted (and passes) above.
// ---------------------------------------------------------------------------

#[test]
fn criterion_01_right_rowsum_equality_spec_defect() {
    let st = kernel_stats(&greens_right(&dom(0, 4), 1.5).unwrap());
    let pass = (st.rowsum_max - 5.625).abs() <= 1e-10 * 5.625;
    println!(
        "criterion 1 (right rowsum equality): {} — scan {}, closed form 5.625 \
         (strict upper bound; see module docs)",
        if pass { "PASS" } else { "FAIL" },
        st.rowsum_max
    );
    assert!(
        pass,
        "right rowsum scan = {}, spec demands equality with 5.625",
        st.rowsum_max
    );
}

#[test]
fn criterion_02_right_rowsum_equality_spec_defect() {
    let mut worst = (0.0_f64, 0.0, 0, 0.0, 0.0);
    for &alpha in &[1.05, 1.25, 1.5, 1.75, 1.95] {
        for n in 2..=40 {
            let d = dom(0, n);
            let st = kernel_stats(&greens_right(&d, alpha).unwrap());
            let cb = closed_form_bounds(FocalKind::Right, &d, alpha).unwrap();
            let gap = (st.rowsum_max - cb.rowsum_max).abs() / cb.rowsum_max;
            if gap > worst.0 {
                worst = (gap, alpha, n, st.rowsum_max, cb.rowsum_max);
            }
        }
    }
    let pass = worst.0 <= 1e-10;
    println!(
        "criterion 2 (right rowsum equality over sweep): {} — worst relative gap {:.3} at \
         alpha={}, b-a={} (scan {}, closed {})",
        if pass { "PASS" } else { "FAIL" },
        worst.0,
        worst.1,
        worst.2,
        worst.3,
        worst.4
    );
    assert!(
        pass,
        "right rowsum equality fails by {:.3} relative at alpha={}, n={}",
        worst.0, worst.1, worst.2
    );
}
