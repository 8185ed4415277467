//! Independent reference solutions used by several test targets.
#![allow(dead_code)]

use num_complex::Complex64;
use optolev::PulseProtocol;

/// Fourth-order Runge–Kutta integration of the first and second moments of
/// the linear cavity–oscillator system driven by a one-photon pulse.
///
/// Returns (t, ⟨a†a⟩, ⟨b†b⟩) sampled every `dt`.
pub fn moment_trace(p: &PulseProtocol, t_end: f64, dt: f64) -> Vec<(f64, f64, f64)> {
    #[derive(Clone, Copy)]
    struct S {
        alpha: Complex64,
        beta: Complex64,
        naa: f64,
        nbb: f64,
        nab: Complex64,
    }
    let (k, gm, g) = (p.kappa, p.gamma, p.g);
    let drive = (2.0 * k).sqrt();
    let i = Complex64::i();
    let rhs = |t: f64, s: &S| {
        let u = drive * p.pulse_amplitude(t);
        let nba = s.nab.conj();
        S {
            alpha: -k * s.alpha - i * g * s.beta + u,
            beta: -gm * s.beta - i * g * s.alpha,
            naa: (-2.0 * k * s.naa + (i * g * (nba - s.nab)).re) + u * 2.0 * s.alpha.re,
            nbb: -2.0 * gm * s.nbb + (i * g * (s.nab - nba)).re,
            nab: -(k + gm) * s.nab + i * g * (s.nbb - s.naa) + u * s.beta,
        }
    };
    let axpy = |a: &S, h: f64, d: &S| S {
        alpha: a.alpha + h * d.alpha,
        beta: a.beta + h * d.beta,
        naa: a.naa + h * d.naa,
        nbb: a.nbb + h * d.nbb,
        nab: a.nab + h * d.nab,
    };
    let zero = Complex64::new(0.0, 0.0);
    let mut s = S {
        alpha: zero,
        beta: zero,
        naa: 0.0,
        nbb: 0.0,
        nab: zero,
    };
    let steps = (t_end / dt).round() as usize;
    let mut out = Vec::with_capacity(steps + 1);
    out.push((0.0, 0.0, 0.0));
    for n in 0..steps {
        let t = n as f64 * dt;
        let k1 = rhs(t, &s);
        let k2 = rhs(t + dt / 2.0, &axpy(&s, dt / 2.0, &k1));
        let k3 = rhs(t + dt / 2.0, &axpy(&s, dt / 2.0, &k2));
        let k4 = rhs(t + dt, &axpy(&s, dt, &k3));
        s = S {
            alpha: s.alpha + dt / 6.0 * (k1.alpha + 2.0 * k2.alpha + 2.0 * k3.alpha + k4.alpha),
            beta: s.beta + dt / 6.0 * (k1.beta + 2.0 * k2.beta + 2.0 * k3.beta + k4.beta),
            naa: s.naa + dt / 6.0 * (k1.naa + 2.0 * k2.naa + 2.0 * k3.naa + k4.naa),
            nbb: s.nbb + dt / 6.0 * (k1.nbb + 2.0 * k2.nbb + 2.0 * k3.nbb + k4.nbb),
            nab: s.nab + dt / 6.0 * (k1.nab + 2.0 * k2.nab + 2.0 * k3.nab + k4.nab),
        };
        out.push(((n + 1) as f64 * dt, s.naa, s.nbb));
    }
    out
}

/// ⟨b†b⟩(t) from the eigenvalue form of the cavity-to-oscillator Green's
/// function, convolved with the pulse by composite Simpson's rule.
pub fn green_phonons(p: &PulseProtocol, t: f64, panels: usize) -> f64 {
    let half = 0.5 * (p.kappa - p.gamma);
    let tau = -0.5 * (p.kappa + p.gamma);
    let root = Complex64::new(half * half - p.g * p.g, 0.0).sqrt();
    let (lp, lm) = (tau + root, tau - root);
    let g_ba = |s: f64| -Complex64::i() * p.g * ((lp * s).exp() - (lm * s).exp()) / (lp - lm);
    let drive = (2.0 * p.kappa).sqrt();
    let n = panels + panels % 2;
    let h = t / n as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..=n {
        let s = j as f64 * h;
        let w = if j == 0 || j == n {
            1.0
        } else if j % 2 == 1 {
            4.0
        } else {
            2.0
        };
        sum += w * g_ba(t - s) * drive * p.pulse_amplitude(s);
    }
    (sum * h / 3.0).norm_sqr()
}
