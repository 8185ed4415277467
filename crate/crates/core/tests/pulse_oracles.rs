//! The swap-protocol solver against independent integrations.

mod common;

use optolev::pulse::{amplification_envelope, conditional_superposition, find_swap_time, phonon_trace, PulseProtocol};
use optolev::Error;

fn trapezoid(t: &[f64], y: &[f64]) -> f64 {
    t.windows(2).zip(y.windows(2)).map(|(t, y)| 0.5 * (t[1] - t[0]) * (y[0] + y[1])).sum()
}

#[test]
fn decoupled_cavity_reflects_the_photon() {
    let p = PulseProtocol::in_kappa_units(1.0, 0.0, 5.6, 0.0, 5.0, 20.0, 20_001).unwrap();
    let trace = phonon_trace(&p).unwrap();
    let out = trapezoid(&trace.times, &trace.output_flux);
    assert!((out - 1.0).abs() < 1e-4, "reflected {out}");
}

#[test]
fn excitation_is_conserved_without_damping() {
    let p = PulseProtocol::in_kappa_units(1.0, 0.8, 5.6, 0.0, 5.0, 12.0, 12_001).unwrap();
    let trace = phonon_trace(&p).unwrap();
    let last = trace.times.len() - 1;
    let inside = trace.n_cavity[last] + trace.n_phonon[last];
    let input: f64 = {
        let u: Vec<f64> = trace.times.iter().map(|&t| p.pulse_amplitude(t).powi(2)).collect();
        trapezoid(&trace.times, &u)
    };
    let out = trapezoid(&trace.times, &trace.output_flux);
    assert!((out + inside - input).abs() < 1e-5, "out {out} + inside {inside} vs input {input}");
}

#[test]
fn whole_trace_matches_moment_equations() {
    for (g, gamma) in [(1.0, 0.0), (0.25, 0.0), (0.6, 0.05), (2.5, 0.0)] {
        let p = PulseProtocol::in_kappa_units(1.0, g, 5.6, gamma, 5.0, 15.0, 15_001).unwrap();
        let trace = phonon_trace(&p).unwrap();
        let moments = common::moment_trace(&p, 15.0, 1e-3);
        let worst = trace
            .n_phonon
            .iter()
            .zip(&moments)
            .map(|(a, m)| (a - m.2).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-8 * trace.peak_value.max(1e-3), "g = {g}, γ = {gamma}: {worst:e}");
        let cav = trace
            .n_cavity
            .iter()
            .zip(&moments)
            .map(|(a, m)| (a - m.1).abs())
            .fold(0.0, f64::max);
        assert!(cav < 1e-8, "cavity occupation differs by {cav:e}");
    }
}

#[test]
fn rates_scale_out() {
    let a = phonon_trace(&PulseProtocol::standard(1.0, 1.0, 5.6, 5.0).unwrap()).unwrap();
    let kappa = 2.0 * std::f64::consts::PI * 187.37e3;
    let b = phonon_trace(&PulseProtocol::standard(kappa, 1.0, 5.6, 5.0).unwrap()).unwrap();
    for (x, y) in a.n_phonon.iter().zip(&b.n_phonon) {
        assert!((x - y).abs() < 1e-10);
    }
    assert!((a.peak_time - b.peak_time * kappa).abs() < 1e-9);
}

#[test]
fn late_start_grid_matches_full_grid() {
    let full = PulseProtocol::in_kappa_units(1.0, 1.0, 5.6, 0.0, 5.0, 20.0, 2001).unwrap();
    let tail: Vec<f64> = full.times[300..].to_vec();
    let late = PulseProtocol::new(1.0, 1.0, 0.0, 5.6, 5.0, tail).unwrap();
    let a = phonon_trace(&full).unwrap();
    let b = phonon_trace(&late).unwrap();
    for (x, y) in a.n_phonon[300..].iter().zip(&b.n_phonon) {
        assert!((x - y).abs() < 1e-9);
    }
}

#[test]
fn too_coarse_grid_is_rejected() {
    let p = PulseProtocol::in_kappa_units(1.0, 1.0, 5.6, 0.0, 5.0, 20.0, 10).unwrap();
    match phonon_trace(&p) {
        Err(Error::GridTooCoarse { error, limit }) => assert!(error > limit),
        other => panic!("expected a coarse-grid error, got {other:?}"),
    }
}

#[test]
fn sparse_grid_samples_stay_exact() {
    // The propagator is exact between samples; only the pulse convolution
    // within each interval is approximated.
    let sparse = phonon_trace(&PulseProtocol::in_kappa_units(1.0, 1.0, 5.6, 0.0, 5.0, 20.0, 41).unwrap()).unwrap();
    let dense = phonon_trace(&PulseProtocol::in_kappa_units(1.0, 1.0, 5.6, 0.0, 5.0, 20.0, 4001).unwrap()).unwrap();
    for (i, n) in sparse.n_phonon.iter().enumerate() {
        assert!((n - dense.n_phonon[100 * i]).abs() <= 1e-4 * dense.peak_value + sparse.discretization_error);
    }
}

#[test]
fn refined_swap_time_approaches_dense_peak() {
    let coarse = phonon_trace(&PulseProtocol::standard(1.0, 1.0, 5.6, 5.0).unwrap()).unwrap();
    let dense = phonon_trace(&PulseProtocol::in_kappa_units(1.0, 1.0, 5.6, 0.0, 5.0, 20.0, 200_001).unwrap()).unwrap();
    let t = find_swap_time(&coarse).unwrap();
    assert!((t - dense.peak_time).abs() < 2e-4, "{t} vs {}", dense.peak_time);
}

#[test]
fn homodyne_marginals() {
    for d in [0.0, 0.8, 3.0] {
        let (mut total, mut w0, mut w1) = (0.0, 0.0, 0.0);
        let dx = 1e-3;
        for i in -40_000..=40_000 {
            let x = 2.0 * d + i as f64 * dx;
            let s = conditional_superposition(x, d).unwrap();
            total += s.probability_density * dx;
            w0 += s.probability_density * s.c0.norm_sqr() * dx;
            w1 += s.probability_density * s.c1.norm_sqr() * dx;
        }
        assert!((total - 1.0).abs() < 1e-10);
        assert!((w0 - 0.5).abs() < 1e-10);
        assert!((w1 - 0.5).abs() < 1e-10);
    }
}

#[test]
fn amplification_is_continuous_across_branches() {
    let (g, kappa) = (1.0_f64, 0.5_f64);
    let chi = (g * g + 0.25 * kappa * kappa).sqrt();
    let t = 300.0 / chi;
    let below = amplification_envelope(g, kappa, 1.0, 0.0, t * (1.0 - 1e-12)).unwrap().mu;
    let above = amplification_envelope(g, kappa, 1.0, 0.0, t * (1.0 + 1e-12)).unwrap().mu;
    assert!((below / above - 1.0).abs() < 1e-9);
}

#[test]
fn amplification_solves_its_equation() {
    // μ obeys μ'' + κμ' − g²μ = 0 with μ(0) = 1, μ'(0) = 0.
    let (g, kappa) = (0.9, 1.7);
    let mu = |t: f64| amplification_envelope(g, kappa, 1.0, 0.0, t).unwrap().mu;
    let h = 1e-3;
    for t in [0.5, 1.0, 3.0] {
        let d1 = (mu(t + h) - mu(t - h)) / (2.0 * h);
        let d2 = (mu(t + h) - 2.0 * mu(t) + mu(t - h)) / (h * h);
        assert!((d2 + kappa * d1 - g * g * mu(t)).abs() < 1e-5 * mu(t));
    }
    assert!(((mu(h) - mu(0.0)) / h).abs() < 1e-2);
}
