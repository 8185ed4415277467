//! Single-photon swap protocol in the red-sideband interaction picture.
//!
//! Under the rotating-wave approximation the cavity (a) and mechanical (b)
//! envelopes obey
//!
//! ```text
//! ȧ = −κ a − i g b + √(2κ) a_in(t)
//! ḃ = −γ b − i g a + √(2γ) b_in(t)
//! ```
//!
//! Carrier phases are already removed, so a pulse centred on the cavity
//! resonance has the real envelope φ̃(t − L). For a single-photon input the
//! normally ordered moments factorize, ⟨b†b⟩(t) = |β(t)|², where β is the
//! response of the linear system to the one-photon amplitude. β is obtained
//! by convolving the closed-form Green's function against the pulse, one grid
//! interval at a time, with a Gauss–Kronrod rule on each interval.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;
use std::io::Write;

use crate::error::{non_negative, positive, Error, Result};
use crate::quadrature::gk15_vec;

const GRID_ERROR_LIMIT: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PulseProtocol {
    pub g: f64,
    pub kappa: f64,
    pub gamma: f64,
    /// Spectral width σ of φ(ω) ∝ exp[−(ω − ω_c)²/σ²], rad/s.
    pub sigma: f64,
    /// Arrival delay L of the pulse centre, s.
    pub delay: f64,
    pub times: Vec<f64>,
    /// ω_t/g when assembled from a scenario.
    pub rwa_ratio: Option<f64>,
}

impl PulseProtocol {
    pub fn new(g: f64, kappa: f64, gamma: f64, sigma: f64, delay: f64, times: Vec<f64>) -> Result<Self> {
        non_negative("g", g)?;
        positive("κ", kappa)?;
        non_negative("γ", gamma)?;
        positive("pulse width σ", sigma)?;
        non_negative("pulse delay", delay)?;
        if times.is_empty() {
            return Err(Error::invalid("time grid", "is empty"));
        }
        if !(times[0].is_finite() && times[0] >= 0.0) {
            return Err(Error::invalid("time grid", "must start at t ≥ 0"));
        }
        if times.windows(2).any(|w| !(w[1] > w[0]) || !w[1].is_finite()) {
            return Err(Error::invalid("time grid", "must be strictly increasing"));
        }
        Ok(PulseProtocol {
            g,
            kappa,
            gamma,
            sigma,
            delay,
            times,
            rwa_ratio: None,
        })
    }

    /// Protocol with every rate given in units of κ and a uniform grid on
    /// [0, t_max/κ].
    pub fn in_kappa_units(
        kappa: f64,
        g_over_kappa: f64,
        sigma_over_kappa: f64,
        gamma_over_kappa: f64,
        delay_kappa: f64,
        t_max_kappa: f64,
        points: usize,
    ) -> Result<Self> {
        positive("κ", kappa)?;
        positive("t_max", t_max_kappa)?;
        if points < 2 {
            return Err(Error::invalid("time grid", "needs at least two points"));
        }
        let t_max = t_max_kappa / kappa;
        let times = (0..points)
            .map(|i| t_max * i as f64 / (points - 1) as f64)
            .collect();
        Self::new(
            g_over_kappa * kappa,
            kappa,
            gamma_over_kappa * kappa,
            sigma_over_kappa * kappa,
            delay_kappa / kappa,
            times,
        )
    }

    /// The default grid: 2000 points over [0, 20/κ].
    pub fn standard(kappa: f64, g_over_kappa: f64, sigma_over_kappa: f64, delay_kappa: f64) -> Result<Self> {
        Self::in_kappa_units(kappa, g_over_kappa, sigma_over_kappa, 0.0, delay_kappa, 20.0, 2000)
    }

    pub fn with_rwa_ratio(mut self, omega_t_over_g: f64) -> Self {
        self.rwa_ratio = Some(omega_t_over_g);
        self
    }

    /// ω_t ≫ g, taken as a factor of ten.
    pub fn rwa_valid(&self) -> Option<bool> {
        self.rwa_ratio.map(|r| r >= 10.0)
    }

    /// Normalized one-photon envelope φ̃(t − L), with ∫ φ̃² dt = 1.
    pub fn pulse_amplitude(&self, t: f64) -> f64 {
        let s = self.sigma;
        let x = t - self.delay;
        (s * s / (2.0 * PI)).powf(0.25) * (-0.25 * s * s * x * x).exp()
    }

    fn propagator(&self) -> Propagator {
        Propagator::new(self.kappa, self.gamma, self.g)
    }
}

/// e^{At} for A = [[−κ, −ig], [−ig, −γ]], in closed form.
#[derive(Debug, Clone, Copy)]
struct Propagator {
    tau: f64,
    omega: Complex64,
    shifted: [[Complex64; 2]; 2],
}

impl Propagator {
    fn new(kappa: f64, gamma: f64, g: f64) -> Self {
        let tau = -0.5 * (kappa + gamma);
        let half = 0.5 * (kappa - gamma);
        let omega = Complex64::new(half * half - g * g, 0.0).sqrt();
        let mig = Complex64::new(0.0, -g);
        Propagator {
            tau,
            omega,
            shifted: [[Complex64::new(-half, 0.0), mig], [mig, Complex64::new(half, 0.0)]],
        }
    }

    fn at(&self, t: f64) -> [[Complex64; 2]; 2] {
        let x = self.omega * t;
        let cosh = x.cosh();
        let sinhc = if x.norm() < 1e-4 {
            Complex64::new(t, 0.0) * (1.0 + x * x / 6.0)
        } else {
            x.sinh() / self.omega
        };
        let decay = (self.tau * t).exp();
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                let diag = if i == j { cosh } else { Complex64::new(0.0, 0.0) };
                *v = decay * (diag + sinhc * self.shifted[i][j]);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhononTrace {
    pub times: Vec<f64>,
    /// ⟨b†b⟩(t).
    pub n_phonon: Vec<f64>,
    /// ⟨a†a⟩(t).
    pub n_cavity: Vec<f64>,
    /// Reflected photon flux ⟨a_out†a_out⟩(t), s⁻¹.
    pub output_flux: Vec<f64>,
    pub peak_time: f64,
    pub peak_value: f64,
    /// Estimated absolute error of `n_phonon` from the per-interval quadrature.
    pub discretization_error: f64,
}

/// ⟨b_I†b_I⟩(t) for a single-photon Gaussian pulse, sampled on the protocol grid.
pub fn phonon_trace(p: &PulseProtocol) -> Result<PhononTrace> {
    let prop = p.propagator();
    let drive = (2.0 * p.kappa).sqrt();
    let zero = Complex64::new(0.0, 0.0);

    let mut state = [zero, zero];
    let mut amp_error = 0.0f64;
    let mut last_t = 0.0;

    let n = p.times.len();
    let mut n_phonon = Vec::with_capacity(n);
    let mut n_cavity = Vec::with_capacity(n);
    let mut output_flux = Vec::with_capacity(n);
    let mut max_error = 0.0f64;

    for &t in &p.times {
        if t > last_t {
            // Lead-in before the first sample is split so each panel stays
            // short against the pulse width.
            let panels = if last_t == 0.0 && t > 0.0 && n_phonon.is_empty() {
                ((t * p.sigma.max(p.kappa)).ceil() as usize).max(1)
            } else {
                1
            };
            let width = (t - last_t) / panels as f64;
            for k in 0..panels {
                let a = last_t + k as f64 * width;
                let b = if k + 1 == panels { t } else { a + width };
                let step = prop.at(b - a);
                let mut integrand = |s: f64| {
                    let g = prop.at(b - s);
                    let u = drive * p.pulse_amplitude(s);
                    [g[0][0] * u, g[1][0] * u]
                };
                let (kick, err) = gk15_vec(&mut integrand, a, b);
                state = [
                    step[0][0] * state[0] + step[0][1] * state[1] + kick[0],
                    step[1][0] * state[0] + step[1][1] * state[1] + kick[1],
                ];
                // The propagator is contractive, so past errors do not grow.
                amp_error += err;
            }
            last_t = t;
        }
        let beta = state[1].norm();
        max_error = max_error.max(2.0 * beta * amp_error + amp_error * amp_error);
        n_phonon.push(state[1].norm_sqr());
        n_cavity.push(state[0].norm_sqr());
        output_flux.push((drive * state[0] - p.pulse_amplitude(t)).norm_sqr());
    }

    let (imax, &peak_value) = n_phonon
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("grid is non-empty");
    let limit = GRID_ERROR_LIMIT * peak_value;
    if peak_value > 0.0 && max_error > limit {
        return Err(Error::GridTooCoarse { error: max_error, limit });
    }
    Ok(PhononTrace {
        peak_time: p.times[imax],
        peak_value,
        times: p.times.clone(),
        n_phonon,
        n_cavity,
        output_flux,
        discretization_error: max_error,
    })
}

/// Time of the phonon maximum, refined by a parabola through the three
/// samples around the discrete argmax.
pub fn find_swap_time(trace: &PhononTrace) -> Result<f64> {
    let n = &trace.n_phonon;
    if n.is_empty() {
        return Err(Error::invalid("trace", "is empty"));
    }
    let (i, &peak) = n
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty");
    if peak <= 0.0 {
        return Err(Error::NoSwap);
    }
    if i == 0 || i + 1 == n.len() {
        return Ok(trace.times[i]);
    }
    let (t0, t1, t2) = (trace.times[i - 1], trace.times[i], trace.times[i + 1]);
    let (y0, y1, y2) = (n[i - 1], n[i], n[i + 1]);
    // Vertex of the interpolating parabola on a possibly non-uniform stencil.
    let d01 = (y1 - y0) / (t1 - t0);
    let d12 = (y2 - y1) / (t2 - t1);
    let curvature = (d12 - d01) / (t2 - t0);
    if !(curvature < 0.0) {
        return Ok(t1);
    }
    let vertex = 0.5 * (t0 + t1) - d01 / (2.0 * curvature);
    Ok(vertex.clamp(t0, t2))
}

/// Mechanical state conditioned on a homodyne outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuperpositionState {
    #[serde(serialize_with = "ser_complex")]
    pub c0: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub c1: Complex64,
    pub measurement_xl: f64,
    pub displacement: f64,
    /// Probability density of obtaining `measurement_xl`.
    pub probability_density: f64,
}

fn ser_complex<S: serde::Serializer>(c: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&c.re)?;
    t.serialize_element(&c.im)?;
    t.end()
}

/// Coefficients of c₀|0⟩ + c₁|1⟩ after measuring X = A + A† = x_L on the
/// entangled state (|0̃⟩|1⟩ + |1̃⟩|0⟩)/√2.
///
/// With X normalized to unit vacuum variance, the displaced vacuum and
/// one-photon wavefunctions are ψ₀(u) ∝ e^{−u²/4} and ψ₁(u) = u ψ₀(u), where
/// u = x_L − 2·displacement. Then c₀ ∝ ψ₁(u) and c₁ ∝ ψ₀(u).
pub fn conditional_superposition(x_l: f64, displacement: f64) -> Result<SuperpositionState> {
    non_negative("displacement", displacement)?;
    if !x_l.is_finite() {
        return Err(Error::invalid("homodyne outcome", "must be finite"));
    }
    let u = x_l - 2.0 * displacement;
    let norm = u.hypot(1.0);
    let u2 = u * u;
    let density = if u2.is_finite() {
        (1.0 + u2) * (-0.5 * u2).exp() / (2.0 * (2.0 * PI).sqrt())
    } else {
        0.0
    };
    Ok(SuperpositionState {
        c0: Complex64::new(u / norm, 0.0),
        c1: Complex64::new(1.0 / norm, 0.0),
        measurement_xl: x_l,
        displacement,
        probability_density: density,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Amplification {
    pub mu: f64,
    /// ⟨q(t)⟩ = q_m μ(t) cos(ω_t t), m.
    pub q_mean: f64,
}

/// Growth of the position oscillation under a blue-detuned (two-mode
/// squeezing) drive: μ(t) = e^{−κt/2}(cosh χt + κ sinh χt / 2χ),
/// χ = √(g² + κ²/4).
pub fn amplification_envelope(g: f64, kappa: f64, q_m: f64, omega_t: f64, t: f64) -> Result<Amplification> {
    non_negative("t", t)?;
    non_negative("g", g)?;
    non_negative("κ", kappa)?;
    let chi = (g * g + 0.25 * kappa * kappa).sqrt();
    let x = chi * t;
    let mu = if chi == 0.0 {
        1.0
    } else if x < 300.0 {
        (-0.5 * kappa * t).exp() * (x.cosh() + kappa * x.sinh() / (2.0 * chi))
    } else {
        // cosh/sinh would overflow on their own; the decaying branch is negligible.
        let r = kappa / (2.0 * chi);
        0.5 * (1.0 + r) * ((chi - 0.5 * kappa) * t).exp()
    };
    Ok(Amplification {
        mu,
        q_mean: q_m * mu * (omega_t * t).cos(),
    })
}

/// Writes `t_seconds,t_kappa_units,n_phonon` rows.
pub fn write_trace_csv<W: Write>(trace: &PhononTrace, kappa: f64, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Scenario(format!("writing trace: {e}"));
    w.write_record(["t_seconds", "t_kappa_units", "n_phonon"]).map_err(io)?;
    for (t, n) in trace.times.iter().zip(&trace.n_phonon) {
        w.write_record([sig6(*t), sig6(t * kappa), sig6(*n)]).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Scenario(format!("writing trace: {e}")))?;
    Ok(())
}

/// Six significant figures in scientific notation.
pub fn sig6(x: f64) -> String {
    format!("{x:.5e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn propagator_matches_series() {
        let prop = Propagator::new(1.0, 0.2, 0.7);
        let t = 0.37;
        let exact = prop.at(t);
        // Taylor series of e^{At}.
        let a = [
            [Complex64::new(-1.0, 0.0), Complex64::new(0.0, -0.7)],
            [Complex64::new(0.0, -0.7), Complex64::new(-0.2, 0.0)],
        ];
        let mut term = [[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]];
        let mut sum = term;
        for k in 1..40 {
            let mut next = [[Complex64::new(0.0, 0.0); 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    for m in 0..2 {
                        next[i][j] += term[i][m] * a[m][j] * (t / k as f64);
                    }
                }
            }
            term = next;
            for i in 0..2 {
                for j in 0..2 {
                    sum[i][j] += term[i][j];
                }
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                assert!((exact[i][j] - sum[i][j]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn critical_damping_is_finite() {
        // Ω = 0 when g = (κ − γ)/2.
        let prop = Propagator::new(1.0, 0.0, 0.5);
        let m = prop.at(2.0);
        assert!(m.iter().flatten().all(|v| v.re.is_finite() && v.im.is_finite()));
    }

    #[test]
    fn pulse_is_normalized() {
        let p = PulseProtocol::standard(1.0, 1.0, 5.6, 5.0).unwrap();
        let dt = 1e-3;
        let total: f64 = (0..20_000).map(|i| p.pulse_amplitude(i as f64 * dt).powi(2) * dt).sum();
        assert_relative_eq!(total, 1.0, max_relative = 1e-10);
    }

    #[test]
    fn decoupled_oscillator_stays_empty() {
        let p = PulseProtocol::standard(1.0, 0.0, 5.6, 5.0).unwrap();
        let trace = phonon_trace(&p).unwrap();
        assert!(trace.n_phonon.iter().all(|&n| n == 0.0));
        assert!(matches!(find_swap_time(&trace), Err(Error::NoSwap)));
    }

    #[test]
    fn coarse_grid_is_reported() {
        let p = PulseProtocol::in_kappa_units(1.0, 1.0, 5.6, 0.0, 5.0, 20.0, 12).unwrap();
        assert!(matches!(phonon_trace(&p), Err(Error::GridTooCoarse { .. })));
    }

    #[test]
    fn grid_validation() {
        assert!(PulseProtocol::new(1.0, 1.0, 0.0, 1.0, 1.0, vec![]).is_err());
        assert!(PulseProtocol::new(1.0, 1.0, 0.0, 1.0, 1.0, vec![0.0, 1.0, 1.0]).is_err());
        assert!(PulseProtocol::new(1.0, 1.0, 0.0, 1.0, 1.0, vec![-1.0, 1.0]).is_err());
        assert!(PulseProtocol::new(1.0, 0.0, 0.0, 1.0, 1.0, vec![0.0, 1.0]).is_err());
    }

    #[test]
    fn swap_time_within_one_step() {
        let p = PulseProtocol::standard(1.0, 1.0, 5.6, 5.0).unwrap();
        let trace = phonon_trace(&p).unwrap();
        let t = find_swap_time(&trace).unwrap();
        let dt = p.times[1] - p.times[0];
        assert!((t - trace.peak_time).abs() <= dt);
    }

    #[test]
    fn conditional_node_and_normalization() {
        let s = conditional_superposition(3.0, 1.5).unwrap();
        assert_eq!(s.c0.norm(), 0.0);
        assert_eq!(s.c1.norm(), 1.0);
        assert!(conditional_superposition(0.0, -1.0).is_err());
        let far = conditional_superposition(1e200, 0.0).unwrap();
        assert!((far.c0.norm_sqr() + far.c1.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conditional_depends_on_offset_only() {
        let a = conditional_superposition(0.7, 0.0).unwrap();
        let b = conditional_superposition(0.7 + 2.0 * 1e4, 1e4).unwrap();
        assert_relative_eq!(a.c0.re, b.c0.re, max_relative = 1e-9);
        assert_relative_eq!(a.probability_density, b.probability_density, max_relative = 1e-8);
    }

    #[test]
    fn amplification_limits() {
        let a = amplification_envelope(2.0, 1.0, 1e-12, 1e6, 0.0).unwrap();
        assert_eq!(a.mu, 1.0);
        assert_eq!(a.q_mean, 1e-12);
        let k0 = amplification_envelope(2.0, 0.0, 1.0, 0.0, 1.3).unwrap();
        assert_relative_eq!(k0.mu, (2.6f64).cosh(), max_relative = 1e-12);
        let huge = amplification_envelope(1.0, 1.0, 1.0, 0.0, 1e3).unwrap();
        assert!(huge.mu.is_finite() && huge.mu > 1e100);
        assert!(amplification_envelope(1.0, 1.0, 1.0, 0.0, -1.0).is_err());
    }

    #[test]
    fn csv_header() {
        let p = PulseProtocol::in_kappa_units(2.0, 1.0, 5.6, 0.0, 5.0, 20.0, 200).unwrap();
        let trace = phonon_trace(&p).unwrap();
        let mut buf = Vec::new();
        write_trace_csv(&trace, 2.0, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("t_seconds,t_kappa_units,n_phonon"));
        assert_eq!(lines.count(), 200);
    }
}
