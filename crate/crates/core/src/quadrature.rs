//! Adaptive Gauss–Kronrod (7/15) quadrature and an iterated 3-D wrapper.

#![allow(clippy::excessive_precision)]

use std::cell::Cell;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes (XGK[1], XGK[3], XGK[5], centre).
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// An integral value with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Tolerance {
    pub fn relative(rel: f64) -> Self {
        Tolerance {
            abs: 0.0,
            rel,
            max_intervals: 4000,
        }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

/// One 15-point Kronrod panel over `[a, b]`, with `|K15 - G7|` as the error.
pub fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Estimate {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Estimate {
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Same rule applied to an integrand with several (complex) components.
pub(crate) fn gk15_vec<const N: usize, F>(f: &mut F, a: f64, b: f64) -> ([num_complex::Complex64; N], f64)
where
    F: FnMut(f64) -> [num_complex::Complex64; N],
{
    use num_complex::Complex64;
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = [Complex64::new(0.0, 0.0); N];
    let mut gauss = [Complex64::new(0.0, 0.0); N];
    for i in 0..N {
        kronrod[i] = fc[i] * WGK[7];
        gauss[i] = fc[i] * WG[3];
    }
    for j in 0..7 {
        let dx = half * XGK[j];
        let lo = f(centre - dx);
        let hi = f(centre + dx);
        for i in 0..N {
            let pair = lo[i] + hi[i];
            kronrod[i] += pair * WGK[j];
            if j % 2 == 1 {
                gauss[i] += pair * WG[j / 2];
            }
        }
    }
    let mut err = 0.0f64;
    for i in 0..N {
        err = err.max(((kronrod[i] - gauss[i]) * half).norm());
        kronrod[i] *= half;
    }
    (kronrod, err)
}

struct Panel {
    a: f64,
    b: f64,
    est: Estimate,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.est.error == other.est.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.est.error.total_cmp(&other.est.error)
    }
}

/// Globally adaptive integration: the panel with the largest error is bisected
/// until the summed error meets `tol`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: Tolerance) -> Result<Estimate> {
    if a == b {
        return Ok(Estimate { value: 0.0, error: 0.0 });
    }
    let first = gk15(&mut f, a, b);
    let mut value = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, est: first });

    while error > tol.target(value) {
        if heap.len() >= tol.max_intervals {
            return Err(Error::Quadrature {
                error,
                tolerance: tol.target(value),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel cannot be split further in floating point.
            return Err(Error::Quadrature {
                error,
                tolerance: tol.target(value),
            });
        }
        let left = gk15(&mut f, worst.a, mid);
        let right = gk15(&mut f, mid, worst.b);
        value += left.value + right.value - worst.est.value;
        error += left.error + right.error - worst.est.error;
        heap.push(Panel { a: worst.a, b: mid, est: left });
        heap.push(Panel { a: mid, b: worst.b, est: right });
    }
    // Recompute the sums to shed accumulated rounding from the running updates.
    let (value, error) = heap
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.est.value, e + p.est.error));
    Ok(Estimate { value, error })
}

/// Iterated integral `∫_a^b dx ∫_{y0(x)}^{y1(x)} dy ∫_{z0(x,y)}^{z1(x,y)} dz f(x, y, z)`.
///
/// Inner levels run at a tenth of the requested relative tolerance. The
/// returned error adds the outer estimate to the worst inner relative error.
pub fn integrate_3d<F, Y, Z>(f: F, x: (f64, f64), y: Y, z: Z, tol: Tolerance) -> Result<Estimate>
where
    F: Fn(f64, f64, f64) -> f64,
    Y: Fn(f64) -> (f64, f64),
    Z: Fn(f64, f64) -> (f64, f64),
{
    let inner_tol = Tolerance {
        rel: tol.rel * 0.1,
        abs: tol.abs * 0.1,
        ..tol
    };
    let worst_inner = Cell::new(0.0f64);
    let failure: Cell<Option<Error>> = Cell::new(None);

    let record = |est: Result<Estimate>| -> f64 {
        match est {
            Ok(e) => {
                if e.value != 0.0 {
                    worst_inner.set(worst_inner.get().max(e.error / e.value.abs()));
                }
                e.value
            }
            Err(err) => {
                failure.set(Some(err));
                0.0
            }
        }
    };

    let outer = integrate(
        |xv| {
            let (y0, y1) = y(xv);
            record(integrate(
                |yv| {
                    let (z0, z1) = z(xv, yv);
                    record(integrate(|zv| f(xv, yv, zv), z0, z1, inner_tol))
                },
                y0,
                y1,
                inner_tol,
            ))
        },
        x.0,
        x.1,
        tol,
    )?;
    if let Some(err) = failure.take() {
        return Err(err);
    }
    let error = outer.error + worst_inner.get() * outer.value.abs();
    if error > tol.target(outer.value) * 2.0 {
        return Err(Error::Quadrature {
            error,
            tolerance: tol.target(outer.value),
        });
    }
    Ok(Estimate {
        value: outer.value,
        error,
    })
}
