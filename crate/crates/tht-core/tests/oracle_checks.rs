//! Cross-module oracle agreement: the spectral operators against direct
//! principal-value quadrature, and the analytic identities of the unit pair.

use core::f64::consts::PI;
use tht_core::hilbert::{fht_forward, fht_inverse_formula, pv_oracle_with};
use tht_core::series::{integrate_plain, integrate_weighted, synth_transform, ChebCoeffs, Grid};

fn splitmix_unit(state: &mut u64) -> f64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^= z >> 31;
    ((z >> 11) as f64 + 0.5) * (1.0 / 9007199254740992.0)
}

fn random_series(state: &mut u64, order: usize) -> ChebCoeffs {
    let coeffs: Vec<f64> = (0..order).map(|_| splitmix_unit(state) - 0.5).collect();
    ChebCoeffs::new(coeffs).unwrap()
}

/// Direct quadrature of the explicit inversion integral
/// `f(t) = (1/pi) PV INT F(s) sqrt(1 - t^2) / ((s - t) sqrt(1 - s^2)) ds`,
/// independent of the spectral path: substitute `s = cos(phi)` and subtract
/// the (vanishing) principal value of the constant term.
fn inverse_direct_quadrature<F: Fn(f64) -> f64>(transform: F, t: f64, points: usize) -> f64 {
    let h = PI / points as f64;
    let ft = transform(t);
    let mut acc = 0.0;
    for j in 0..points {
        let phi = (j as f64 + 0.5) * h;
        let s = phi.cos();
        acc += (transform(s) - ft) / (s - t);
    }
    (1.0 - t * t).sqrt() / PI * acc * h
}

#[test]
fn forward_transform_matches_pv_quadrature_for_random_series() {
    let mut state = 0xABCDu64;
    for _ in 0..20 {
        let order = 4 + (splitmix_unit(&mut state) * 28.0) as usize;
        let c = random_series(&mut state, order.min(32));
        let transform = fht_forward(&c);
        for k in 0..50 {
            let u = splitmix_unit(&mut state);
            let s = if k % 2 == 0 {
                -0.95 + 1.9 * u
            } else {
                1.02 + 1.98 * u
            };
            let oracle = pv_oracle_with(|t| c.eval_source(t), s, 4096).unwrap();
            let spectral = transform.eval_transform(s);
            assert!(
                (oracle - spectral).abs() < 1e-6,
                "order {order}, s = {s}: {oracle} vs {spectral}"
            );
        }
    }
}

#[test]
fn inverse_formula_matches_direct_quadrature_second_oracle() {
    let mut state = 0x5150u64;
    let n = 64;
    for _ in 0..5 {
        let mut c = random_series(&mut state, 24);
        // pad to grid order with the pinned top mode zero
        let mut coeffs = c.as_slice().to_vec();
        coeffs.resize(n, 0.0);
        c = ChebCoeffs::new(coeffs).unwrap();

        let grid = Grid::cgl_midpoints(n).unwrap();
        let samples = synth_transform(&c, &grid).unwrap();
        let f = fht_inverse_formula(&samples).unwrap();
        for (m, &value) in f.values().iter().enumerate() {
            let t = f.grid().point(m);
            if t.abs() == 1.0 {
                continue;
            }
            let direct = inverse_direct_quadrature(|s| c.eval_transform(s), t, 4096);
            assert!(
                (value - direct).abs() < 1e-8,
                "node {m} (t = {t}): {value} vs {direct}"
            );
        }
    }
}

#[test]
fn inverse_formula_recovers_unit_pair_and_extended_basis() {
    // F = s on midpoints comes back as the semicircle; a pure Tt_3 comes
    // back as the weighted U_2.
    let n = 64;
    let grid = Grid::cgl_midpoints(n).unwrap();

    let linear = ChebCoeffs::single(n, 1, 1.0).unwrap();
    let f = fht_inverse_formula(&synth_transform(&linear, &grid).unwrap()).unwrap();
    for (m, &v) in f.values().iter().enumerate() {
        let t = f.grid().point(m);
        assert!((v - (1.0 - t * t).max(0.0).sqrt()).abs() < 1e-10);
    }

    let cubic = ChebCoeffs::single(n, 3, 1.0).unwrap();
    let f = fht_inverse_formula(&synth_transform(&cubic, &grid).unwrap()).unwrap();
    for (m, &v) in f.values().iter().enumerate() {
        let t = f.grid().point(m);
        let theta = t.acos();
        let expect = (3.0 * theta).sin(); // sqrt(1-t^2) U_2(t)
        assert!((v - expect).abs() < 1e-10);
    }
}

#[test]
fn unit_pair_satisfies_both_plancherel_identities() {
    let pair = tht_core::phantoms::make_pair(&tht_core::phantoms::PhantomSpec::noiseless(
        tht_core::phantoms::PhantomFamily::SemicircleUnit,
    ))
    .unwrap();

    // Unweighted: INT_R F^2 ds = INT f^2 dt = 4/3. The exterior part is
    // integrated in the mapped coordinate u where F = u and
    // ds = (u^2 - 1)/(2 u^2) du, giving INT_0^1 (1 - u^2)/2 du per side.
    let f_side = integrate_plain(|t| pair.eval_source(t).powi(2), 4096);
    let interior = integrate_plain(|s| pair.eval_transform(s).powi(2), 4096);
    let m = 4096;
    let mut exterior_one_side = 0.0;
    let h = 1.0 / m as f64;
    for j in 0..m {
        let u = (j as f64 + 0.5) * h;
        exterior_one_side += u * u * (1.0 - u * u) / (2.0 * u * u);
    }
    exterior_one_side *= h;
    let transform_side = interior + 2.0 * exterior_one_side;
    assert!((f_side - 4.0 / 3.0).abs() < 1e-9, "f side {f_side}");
    assert!(
        (transform_side - 4.0 / 3.0).abs() < 1e-6,
        "transform side {transform_side}"
    );

    // Weighted, both restricted to (-1, 1).
    let wf = integrate_weighted(|t| pair.eval_source(t).powi(2), 4096);
    let wt = integrate_weighted(|s| pair.eval_transform(s).powi(2), 4096);
    assert!((wf - wt).abs() < 1e-9, "{wf} vs {wt}");
    assert!((wf - PI / 2.0).abs() < 1e-9);
}

#[test]
fn extended_polynomial_identity_against_recurrence_difference() {
    // Tt_n computed as the decaying power must equal the recurrence-evaluated
    // difference T_n - U_{n-1} sign sqrt(s^2 - 1). The difference form loses
    // about eps * |T_n| to cancellation, hence the second tolerance term.
    let mut state = 0x31337u64;
    for _ in 0..100 {
        let u = splitmix_unit(&mut state);
        let mag = 1.0 + 9.0 * u;
        let s = if splitmix_unit(&mut state) < 0.5 {
            -mag
        } else {
            mag
        };
        for n in 1..=64usize {
            let t_n = tht_core::cheb::eval_t(n, s);
            let u_prev = tht_core::cheb::eval_u(n as i32 - 1, s);
            let sign = if s < 0.0 { -1.0 } else { 1.0 };
            let difference = t_n - u_prev * sign * (s * s - 1.0).sqrt();
            let power = tht_core::cheb::eval_t_extended(n, s);
            let tol = 1e-8 * power.abs() + 1e-13 * t_n.abs();
            assert!(
                (difference - power).abs() <= tol,
                "n = {n}, s = {s}: {difference} vs {power}"
            );
        }
    }
}
