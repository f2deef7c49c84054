use std::time::Instant;

use heisenberg_core::algebra::sample::ElementSampler;
use heisenberg_core::algebra::{expectation, inner_product};
use heisenberg_core::processes::generate;
use heisenberg_core::verify::{
    l2_limit_steps, mc_expectation, pde_box_points, verify_h1, verify_h2, verify_isometry, verify_l2_limit, verify_pde,
    CenteringFunction, ProcessElement, VerifyError,
};
use heisenberg_core::{PolyExpElement, TimeChange, TimeGrid, VarianceParam};
use num_complex::Complex64;

fn q(v: f64) -> VarianceParam {
    VarianceParam::new(v).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn pde_residual_on_the_box() {
    let start = Instant::now();
    let pts = pde_box_points((-2.0, 2.0), (0.5, 2.0), 81, 31);
    for z in [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), c(1.0, 1.0)] {
        let r = verify_pde(z, &pts, 1e-4).unwrap();
        println!("c = {z}: f {:.2e}, g {:.2e}", r.f_max, r.g_max);
        assert!(r.max() <= 1e-6, "c = {z}: {r:?}");
    }
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

/// `‖(𝓔_r - 1)/r 𝓔_c - x 𝓔_c‖²` by direct Gaussian integration:
/// `|𝓔_c|² = e^{|c|² q} 𝓔_{2 Re c}` tilts `X` to `N(m, q)` with `m = 2 Re(c) q`,
/// leaving moments of `e^{rX}` and `X` under a shifted normal.
fn l2_oracle(z: Complex64, qv: f64, r: f64) -> f64 {
    let m = 2.0 * z.re * qv;
    let mgf = |s: f64| (s * m + 0.5 * s * s * qv).exp();
    let t1 = (mgf(2.0 * r) * (-r * r * qv).exp() - 2.0 * mgf(r) * (-0.5 * r * r * qv).exp() + 1.0) / (r * r);
    let t2 = ((m + r * qv) * mgf(r) * (-0.5 * r * r * qv).exp() - m) / r;
    let t3 = m * m + qv;
    (z.norm_sqr() * qv).exp() * (t1 - 2.0 * t2 + t3)
}

#[test]
fn l2_limit_matches_closed_form_and_halves() {
    // last norms at r = 2^-12, from a 200-bit evaluation of the same closed form
    for (z, last) in [
        (c(0.0, 0.0), 1.7263349321558163e-4),
        (c(1.0, 0.0), 1.1737953805955333e-3),
        (c(0.0, 1.0), 2.846245122997957e-4),
    ] {
        let rs = l2_limit_steps(12);
        let norms = verify_l2_limit(z, q(1.0), &rs).unwrap();
        for (r, n) in rs.iter().zip(&norms).take(6) {
            let want = l2_oracle(z, 1.0, *r).max(0.0).sqrt();
            assert!((n - want).abs() <= 1e-6 * want.max(1e-3), "c = {z}, r = {r}: {n} vs {want}");
        }
        assert!(norms.windows(2).all(|w| w[1] < w[0]), "{norms:?}");
        let ratio = norms[11] / norms[10];
        assert!((ratio - 0.5).abs() <= 0.05, "c = {z}: ratio {ratio}");
        assert!((norms[11] - last).abs() <= 1e-8 * last, "c = {z}: {} vs {last}", norms[11]);
    }
}

#[test]
fn h1_holds_on_random_elements() {
    let mut s = ElementSampler::new(21);
    for i in 0..300 {
        let qv = [0.25, 1.0, 4.0][i % 3];
        let y = s.element(q(qv), 4, 2, 2.0);
        let cc = s.disc(2.0).re;
        let ct = s.disc(2.0).re;
        let r = verify_h1(&y, cc, ct, q(qv)).unwrap();
        assert!(r.pass, "case {i}: lhs {} rhs {}", r.lhs_product, r.rhs);
        assert!(r.slack >= -1e-9 * r.rhs.max(1.0));
    }
}

#[test]
fn mc_expectation_matches_exact_for_random_elements() {
    let grid = TimeGrid::uniform(1.0, 4).unwrap();
    let ens = generate(&TimeChange::Identity, &grid, 200_000, 31).unwrap();
    let mut s = ElementSampler::new(4);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let f = s.element(q(0.5), 3, 2, 0.8);
        let y = ProcessElement::fixed(f.clone());
        let est = mc_expectation(&y, 0.5, &ens).unwrap();
        let exact = expectation(&f.with_q(q(0.5))).unwrap();
        worst = worst.max(est.z_score(exact));
    }
    // 20 independent-ish 4-sigma checks; a 5-sigma outlier would be a bug
    assert!(worst <= 5.0, "worst z-score {worst}");
}

#[test]
fn exponential_martingale_moments() {
    let grid = TimeGrid::uniform(1.0, 2).unwrap();
    let ens = generate(&TimeChange::Identity, &grid, 200_000, 8).unwrap();
    let e1 = ProcessElement::fixed(PolyExpElement::exponential(c(1.0, 0.0), q(1.0)).unwrap());
    let est = mc_expectation(&e1, 1.0, &ens).unwrap();
    assert!(est.within(c(1.0, 0.0), 4.0), "{est:?}");
    let sq = ProcessElement::from_fn("E1^2", |_, qq| {
        let e = PolyExpElement::exponential(c(1.0, 0.0), qq)?;
        e.mul(&e)
    });
    let est = mc_expectation(&sq, 1.0, &ens).unwrap();
    assert!(est.within(c(std::f64::consts::E, 0.0), 4.0), "{est:?}");
}

#[test]
fn isometry_small_ensemble() {
    let ens = generate(&TimeChange::Identity, &TimeGrid::uniform(1.0, 128).unwrap(), 20_000, 3).unwrap();
    for (z, want) in [(ProcessElement::constant(c(1.0, 0.0)), 1.0), (ProcessElement::x(), 0.5)] {
        let r = verify_isometry(&z, &ens).unwrap();
        assert!((r.exact - want).abs() < 1e-12);
        assert!(r.pass && r.z_score <= 4.0, "{r:?}");
    }
    let r = verify_isometry(&ProcessElement::zero(), &ens).unwrap();
    assert_eq!((r.mc.mean.re, r.exact), (0.0, 0.0));
}

#[test]
fn isometry_under_time_change() {
    let h = TimeChange::power(2.0).unwrap();
    let ens = generate(&h, &TimeGrid::uniform(1.0, 256).unwrap(), 20_000, 4).unwrap();
    // E|∫ X dX|² = ∫ h dh = 1/2 for any h with h(1) = 1
    let r = verify_isometry(&ProcessElement::x(), &ens).unwrap();
    assert!((r.exact - 0.5).abs() < 1e-5);
    assert!(r.pass, "{r:?}");
}

#[test]
fn h2_small_ensemble_examples() {
    let ens = generate(&TimeChange::Identity, &TimeGrid::uniform(1.0, 128).unwrap(), 20_000, 5).unwrap();
    let zero = CenteringFunction::Zero;
    let r = verify_h2(&ProcessElement::constant(c(1.0, 0.0)), &zero, &zero, &ens).unwrap();
    assert!(r.pass && r.equality_case);
    assert!((r.rhs - 0.5).abs() < 1e-12);
    let r = verify_h2(&ProcessElement::x(), &zero, &zero, &ens).unwrap();
    assert!(r.pass && !r.equality_case);
    assert!(r.slack > 0.5);
    let g = CenteringFunction::Constant { value: 0.3 };
    let r = verify_h2(
        &ProcessElement::x(),
        &g,
        &CenteringFunction::PiecewiseLinear { knots: vec![(0.0, -1.0), (1.0, 1.0)] },
        &ens,
    )
    .unwrap();
    assert!(r.pass);
}

#[test]
fn overflow_surfaces_as_error() {
    let ens = generate(&TimeChange::Identity, &TimeGrid::uniform(1.0, 4).unwrap(), 10, 1).unwrap();
    let big = ProcessElement::fixed(PolyExpElement::exponential(c(1e4, 0.0), q(1.0)).unwrap());
    assert!(matches!(mc_expectation(&big, 1.0, &ens), Err(VerifyError::Overflow { .. })));
}

#[test]
fn inner_product_double_entry_against_closed_form() {
    let ones = [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0)];
    for a in ones {
        for b in ones {
            let ip = inner_product(
                &PolyExpElement::exponential(a, q(1.0)).unwrap(),
                &PolyExpElement::exponential(b, q(1.0)).unwrap(),
            )
            .unwrap();
            let want = (a * b.conj()).exp();
            assert!((ip - want).norm() <= 1e-12 * want.norm());
        }
    }
}
