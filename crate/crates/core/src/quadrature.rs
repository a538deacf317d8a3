//! Globally adaptive 21-point Gauss-Kronrod quadrature on finite intervals.

#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_980_585_880,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd Kronrod nodes XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    /// Estimate of ∫|f|, the scale the relative tolerance is measured against.
    pub abs_value: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lower: f64,
    upper: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod21<F: FnMut(f64) -> f64>(f: &mut F, lower: f64, upper: f64) -> Result<Segment> {
    let center = 0.5 * (lower + upper);
    let half = 0.5 * (upper - lower);

    let fc = f(center);
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    let mut abs_sum = WGK[10] * fc.abs();
    let mut values = [0.0f64; 21];
    values[10] = fc;

    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        values[j] = f1;
        values[20 - j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }

    if !kronrod.is_finite() {
        return Err(Error::Numeric(format!(
            "integrand not finite on [{lower}, {upper}]"
        )));
    }

    let mean = 0.5 * kronrod;
    let mut asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        asc += WGK[j] * ((values[j] - mean).abs() + (values[20 - j] - mean).abs());
    }

    let value = kronrod * half;
    let abs_value = abs_sum * half.abs();
    let asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let roundoff = 50.0 * f64::EPSILON * abs_value;
    if roundoff > error {
        error = roundoff;
    }

    Ok(Segment {
        lower,
        upper,
        value,
        error,
        abs_value,
    })
}

/// Integrates `f` over consecutive breakpoints until the summed error
/// estimate is below `rel_tol · ∫|f|`.
///
/// `breakpoints` must be sorted and contain at least two entries; each gap
/// seeds one initial segment.
pub fn integrate_with_breaks<F: FnMut(f64) -> f64>(
    mut f: F,
    breakpoints: &[f64],
    rel_tol: f64,
    max_intervals: usize,
) -> Result<Integral> {
    if breakpoints.len() < 2 {
        return Err(Error::domain("quadrature needs at least two breakpoints"));
    }
    let mut heap = BinaryHeap::with_capacity(max_intervals + 1);
    for w in breakpoints.windows(2) {
        if w[1] > w[0] {
            heap.push(kronrod21(&mut f, w[0], w[1])?);
        }
    }
    let lower = breakpoints[0];
    let upper = *breakpoints.last().unwrap();

    loop {
        let (value, error, abs_value) = heap.iter().fold((0.0, 0.0, 0.0), |acc, s| {
            (acc.0 + s.value, acc.1 + s.error, acc.2 + s.abs_value)
        });
        if error <= rel_tol * abs_value || abs_value == 0.0 {
            return Ok(Integral {
                value,
                error,
                abs_value,
                intervals: heap.len(),
            });
        }
        if heap.len() >= max_intervals {
            return Err(Error::Quadrature {
                lower,
                upper,
                estimate: value,
                error,
                intervals: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap is never empty here");
        let mid = 0.5 * (worst.lower + worst.upper);
        if !(mid > worst.lower && mid < worst.upper) {
            // Interval can no longer be split in floating point.
            return Err(Error::Quadrature {
                lower,
                upper,
                estimate: value,
                error,
                intervals: heap.len() + 1,
            });
        }
        heap.push(kronrod21(&mut f, worst.lower, mid)?);
        heap.push(kronrod21(&mut f, mid, worst.upper)?);
    }
}

/// Integrates `f` over `[lower, upper]`.
pub fn integrate<F: FnMut(f64) -> f64>(
    f: F,
    lower: f64,
    upper: f64,
    rel_tol: f64,
    max_intervals: usize,
) -> Result<Integral> {
    integrate_with_breaks(f, &[lower, upper], rel_tol, max_intervals)
}
