//! Fractional total variation of sampled functions.
//!
//! For `0 < s <= 1` and `p = 1/s`,
//! `TV^s(u) = sup over subdivisions x_0 < ... < x_n of sum |u(x_i) - u(x_{i-1})|^p`.
//! On a finite sample set the supremum is a maximum over subsets of sample
//! indices, computed exactly by dynamic programming.

use rayon::prelude::*;

use crate::{Error, Result};

/// Sample count above which [`tvs_dp`] refuses to run.
pub const MAX_SAMPLES: usize = 200_000;

/// Largest input accepted by [`tvs_bruteforce`].
pub const MAX_BRUTEFORCE: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    xs: Vec<f64>,
    us: Vec<f64>,
}

impl SampledFunction {
    pub fn new(xs: Vec<f64>, us: Vec<f64>) -> Result<Self> {
        if xs.len() != us.len() {
            return Err(Error::InvalidData(format!(
                "{} abscissae but {} values",
                xs.len(),
                us.len()
            )));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidData("abscissae must be strictly increasing".into()));
        }
        if us.iter().any(|u| !u.is_finite()) {
            return Err(Error::InvalidData("non-finite sample value".into()));
        }
        Ok(Self { xs, us })
    }

    /// Samples at unit spacing, for data whose abscissae do not matter.
    pub fn from_values(us: Vec<f64>) -> Result<Self> {
        let xs = (0..us.len()).map(|i| i as f64).collect();
        Self::new(xs, us)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn us(&self) -> &[f64] {
        &self.us
    }

    pub fn len(&self) -> usize {
        self.us.len()
    }

    pub fn is_empty(&self) -> bool {
        self.us.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariationResult {
    pub s: f64,
    pub value: f64,
    /// Sample indices of an optimal subdivision, strictly increasing.
    pub subdivision: Vec<usize>,
    /// Number of samples the value was computed from.
    pub resolution: usize,
}

impl VariationResult {
    /// Recomputes the sum over the reported subdivision.
    pub fn subdivision_sum(&self, us: &[f64]) -> f64 {
        let p = 1.0 / self.s;
        self.subdivision
            .windows(2)
            .fold(0.0, |acc, w| acc + jump_power(us[w[0]], us[w[1]], p))
    }
}

/// `|b - a|^p`; shared by every evaluation path so that sums agree bit for bit.
#[inline]
fn jump_power(a: f64, b: f64, p: f64) -> f64 {
    let d = (b - a).abs();
    if p == 1.0 {
        d
    } else {
        d.powf(p)
    }
}

fn check_exponent(s: f64) -> Result<f64> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::InvalidExponent(s));
    }
    Ok(1.0 / s)
}

/// Exact `TV^s` over all subdivisions drawn from the samples, in `O(n^2)`.
///
/// `best[j]` is the largest sum of a subdivision ending at sample `j`, built
/// left to right. Ties keep the earliest predecessor, and since extending a
/// subdivision never lowers its sum the reported one always runs from the
/// first to the last sample.
pub fn tvs_dp(f: &SampledFunction, s: f64) -> Result<VariationResult> {
    let p = check_exponent(s)?;
    let n = f.len();
    if n < 2 {
        return Err(Error::InvalidData("need at least two samples".into()));
    }
    if n > MAX_SAMPLES {
        return Err(Error::TooLarge(n));
    }
    let us = f.us();
    let mut best = vec![0.0f64; n];
    let mut pred = vec![0usize; n];
    for j in 1..n {
        let uj = us[j];
        let mut m = f64::NEG_INFINITY;
        let mut arg = 0;
        for i in 0..j {
            let cand = best[i] + jump_power(us[i], uj, p);
            if cand > m {
                m = cand;
                arg = i;
            }
        }
        best[j] = m;
        pred[j] = arg;
    }
    let mut subdivision = vec![n - 1];
    let mut j = n - 1;
    while j > 0 {
        j = pred[j];
        subdivision.push(j);
    }
    subdivision.reverse();
    Ok(VariationResult {
        s,
        value: best[n - 1],
        subdivision,
        resolution: n,
    })
}

/// Indices of the turning points of `us`: the endpoints and every sample
/// where the sequence changes direction (plateaus collapse to their first
/// sample).
pub fn turning_points(us: &[f64]) -> Vec<usize> {
    let n = us.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut keep = vec![0usize];
    let mut dir = 0.0f64;
    let mut last = 0usize;
    for i in 1..n {
        let d = us[i] - us[last];
        if d == 0.0 {
            continue;
        }
        let sign = d.signum();
        if dir != 0.0 && sign != dir {
            keep.push(last);
        }
        dir = sign;
        last = i;
    }
    if *keep.last().unwrap() != n - 1 {
        keep.push(n - 1);
    }
    keep
}

/// `TV^s` computed on the turning points only.
///
/// For `p >= 1` a sample inside a monotone run never improves a
/// subdivision, so the value matches [`tvs_dp`] up to rounding while the
/// quadratic cost falls on the (usually far fewer) turning points.
pub fn tvs_reduced(f: &SampledFunction, s: f64) -> Result<VariationResult> {
    check_exponent(s)?;
    let keep = turning_points(f.us());
    let reduced: Vec<f64> = keep.iter().map(|&i| f.us()[i]).collect();
    let xs: Vec<f64> = keep.iter().map(|&i| f.xs()[i]).collect();
    let mut res = tvs_dp(&SampledFunction::new(xs, reduced)?, s)?;
    res.subdivision = res.subdivision.into_iter().map(|k| keep[k]).collect();
    res.resolution = f.len();
    Ok(res)
}

/// Enumerates every subset of at least two samples. Oracle for [`tvs_dp`].
pub fn tvs_bruteforce(f: &SampledFunction, s: f64) -> Result<VariationResult> {
    let p = check_exponent(s)?;
    let n = f.len();
    if n > MAX_BRUTEFORCE {
        return Err(Error::TooLarge(n));
    }
    if n < 2 {
        return Err(Error::InvalidData("need at least two samples".into()));
    }
    let us = f.us();
    let mut value = f64::NEG_INFINITY;
    let mut best_mask = 0u32;
    for mask in 1u32..(1 << n) {
        if mask.count_ones() < 2 {
            continue;
        }
        let mut sum = 0.0;
        let mut prev: Option<usize> = None;
        for i in 0..n {
            if mask & (1 << i) != 0 {
                if let Some(k) = prev {
                    sum += jump_power(us[k], us[i], p);
                }
                prev = Some(i);
            }
        }
        if sum > value {
            value = sum;
            best_mask = mask;
        }
    }
    let subdivision = (0..n).filter(|i| best_mask & (1 << i) != 0).collect();
    Ok(VariationResult {
        s,
        value,
        subdivision,
        resolution: n,
    })
}

/// One row of a refinement scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanPoint {
    /// Number of grid cells; the grid has `n + 1` samples.
    pub n: usize,
    pub s: f64,
    pub tvs: f64,
}

/// Uniform grid with `n` cells on `[a, b]`. Nested grids share bit-identical
/// abscissae, so values can be reused across resolutions.
pub fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|k| a + (b - a) * (k as f64 / n as f64)).collect()
}

/// `TV^s` of `sampler` on uniform grids of increasing resolution.
///
/// Resolutions must be nested (each one divides the next), which makes the
/// sequence non-decreasing; the sampler is evaluated once, on the finest grid.
pub fn refine_scan<F>(sampler: F, interval: (f64, f64), s: f64, resolutions: &[usize]) -> Result<Vec<ScanPoint>>
where
    F: Fn(f64) -> f64 + Sync,
{
    let values = sample_finest(&sampler, interval, resolutions)?;
    scan_values(&values, interval, &[s], resolutions)
}

/// Samples `sampler` on the finest grid of a nested resolution ladder.
pub fn sample_finest<F>(sampler: &F, interval: (f64, f64), resolutions: &[usize]) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64 + Sync,
{
    check_ladder(resolutions)?;
    let (a, b) = interval;
    if !(b > a) {
        return Err(Error::InvalidData("empty interval".into()));
    }
    let finest = *resolutions.last().unwrap();
    Ok(uniform_grid(a, b, finest).par_iter().map(|&x| sampler(x)).collect())
}

fn check_ladder(resolutions: &[usize]) -> Result<()> {
    if resolutions.is_empty() || resolutions[0] == 0 {
        return Err(Error::InvalidData(
            "resolution ladder must be non-empty and positive".into(),
        ));
    }
    for w in resolutions.windows(2) {
        if w[1] <= w[0] || w[1] % w[0] != 0 {
            return Err(Error::InvalidData(format!(
                "resolutions must be increasing and nested, got {} then {}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

/// Scan from values already sampled on the finest grid of `resolutions`.
pub fn scan_values(
    values: &[f64],
    interval: (f64, f64),
    s_values: &[f64],
    resolutions: &[usize],
) -> Result<Vec<ScanPoint>> {
    check_ladder(resolutions)?;
    let finest = *resolutions.last().unwrap();
    if values.len() != finest + 1 {
        return Err(Error::InvalidData("values do not match the finest grid".into()));
    }
    let (a, b) = interval;
    let mut out = Vec::with_capacity(resolutions.len() * s_values.len());
    for &s in s_values {
        let mut previous = 0.0f64;
        for &n in resolutions {
            let stride = finest / n;
            let us: Vec<f64> = values.iter().step_by(stride).copied().collect();
            let f = SampledFunction::new(uniform_grid(a, b, n), us)?;
            let tvs = tvs_reduced(&f, s)?.value;
            debug_assert!(tvs >= previous * (1.0 - 1e-12) - 1e-12, "refinement decreased TV^s");
            previous = tvs;
            out.push(ScanPoint { n, s, tvs });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sf(us: &[f64]) -> SampledFunction {
        SampledFunction::from_values(us.to_vec()).unwrap()
    }

    #[test]
    fn dp_examples() {
        let r = tvs_dp(&sf(&[0.0, 0.5, 1.0]), 0.5).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.subdivision, vec![0, 2]);
        let r = tvs_dp(&sf(&[0.0, 1.0, 0.0]), 0.5).unwrap();
        assert_eq!(r.value, 2.0);
        assert_eq!(r.subdivision, vec![0, 1, 2]);
        assert_eq!(tvs_dp(&sf(&[0.0, 1.0, 0.0]), 1.0).unwrap().value, 2.0);
    }

    #[test]
    fn bruteforce_examples() {
        // the four subdivisions of [0, 1, 0] with >= 2 points: {0,1},{1,2},{0,2},{0,1,2}
        let r = tvs_bruteforce(&sf(&[0.0, 1.0, 0.0]), 0.5).unwrap();
        assert_eq!(r.value, 2.0);
        assert_eq!(tvs_bruteforce(&sf(&[0.3, 1.1]), 0.25).unwrap().value, 0.8f64.powf(4.0));
        assert_eq!(tvs_bruteforce(&sf(&[2.0; 7]), 0.5).unwrap().value, 0.0);
        assert!(matches!(tvs_bruteforce(&sf(&[0.0; 17]), 0.5), Err(Error::TooLarge(17))));
    }

    #[test]
    fn rejects_bad_exponent() {
        for s in [0.0, -0.5, 1.5, f64::NAN] {
            assert!(matches!(tvs_dp(&sf(&[0.0, 1.0]), s), Err(Error::InvalidExponent(_))));
        }
    }

    #[test]
    fn constant_vector_has_zero_variation() {
        let r = tvs_dp(&sf(&[1.5; 9]), 0.3).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.subdivision.first(), Some(&0));
        assert_eq!(r.subdivision.last(), Some(&8));
    }

    #[test]
    fn dp_matches_bruteforce_on_random_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(2..=10);
            let scale = 10f64.powi(rng.gen_range(-3..=3));
            let us: Vec<f64> = (0..n).map(|_| scale * rng.gen_range(-1.0..1.0)).collect();
            let s = rng.gen_range(0.05..=1.0);
            let f = sf(&us);
            let dp = tvs_dp(&f, s).unwrap();
            let bf = tvs_bruteforce(&f, s).unwrap();
            assert_eq!(dp.value, bf.value);
            assert_eq!(dp.subdivision_sum(&us), dp.value);
        }
    }

    #[test]
    fn turning_points_collapse_runs() {
        assert_eq!(turning_points(&[0.0, 1.0, 2.0, 1.0, 1.0, 3.0]), vec![0, 2, 3, 5]);
        assert_eq!(turning_points(&[1.0, 1.0, 1.0]), vec![0, 2]);
        assert_eq!(turning_points(&[0.0, 0.0, 1.0, 1.0, 0.0]), vec![0, 2, 4]);
    }

    #[test]
    fn square_wave_teeth() {
        // k teeth of height h resolved by the grid: 2k jumps of size h.
        let (k, h, s) = (3, 0.7, 0.5);
        let segments = (2 * k + 1) as f64;
        let sampler = |x: f64| if (x * segments).floor() as i64 % 2 == 1 { h } else { 0.0 };
        let mut us = vec![0.0];
        for _ in 0..k {
            us.extend_from_slice(&[h, 0.0]);
        }
        let oracle = tvs_bruteforce(&sf(&us), s).unwrap().value;
        let scan = refine_scan(sampler, (0.0, 1.0 - 1e-9), s, &[64, 128, 256]).unwrap();
        for point in scan {
            assert!((point.tvs - oracle).abs() < 1e-12, "{point:?} vs {oracle}");
            assert!((oracle - 2.0 * k as f64 * h * h).abs() < 1e-12);
        }
    }

    #[test]
    fn linear_function_scan() {
        let scan = refine_scan(|x| x, (0.0, 1.0), 0.5, &[4, 8, 64]).unwrap();
        for point in scan {
            assert_eq!(point.tvs, 1.0);
        }
    }

    #[test]
    fn smooth_monotone_scan_converges_to_range() {
        let scan = refine_scan(|x: f64| x.sin(), (0.0, 1.0), 0.25, &[10, 100, 1000]).unwrap();
        for point in scan {
            assert!((point.tvs - 1f64.sin().powf(4.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn ladder_must_be_nested() {
        assert!(refine_scan(|x| x, (0.0, 1.0), 1.0, &[10, 15]).is_err());
        assert!(refine_scan(|x| x, (0.0, 1.0), 1.0, &[10, 10]).is_err());
    }

    fn values(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-100.0f64..100.0, 2..max_len)
    }

    proptest! {
        #[test]
        fn lower_bound_by_endpoints(us in values(40), s in 0.05f64..=1.0) {
            let v = tvs_dp(&sf(&us), s).unwrap().value;
            let ends = (us[us.len() - 1] - us[0]).abs().powf(1.0 / s);
            prop_assert!(v >= ends * (1.0 - 1e-12));
        }

        #[test]
        fn monotone_data_is_range_power(mut us in values(40), s in 0.05f64..=1.0) {
            us.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let v = tvs_dp(&sf(&us), s).unwrap().value;
            let range = (us[us.len() - 1] - us[0]).powf(1.0 / s);
            prop_assert!((v - range).abs() <= 1e-12 * range.max(1.0));
        }

        #[test]
        fn scaling_and_argmax_invariance(us in values(30), s in 0.1f64..=1.0, lambda in -4.0f64..4.0) {
            prop_assume!(lambda.abs() > 1e-3);
            let base = tvs_dp(&sf(&us), s).unwrap();
            let scaled: Vec<f64> = us.iter().map(|u| lambda * u).collect();
            let out = tvs_dp(&sf(&scaled), s).unwrap();
            let expect = lambda.abs().powf(1.0 / s) * base.value;
            prop_assert!((out.value - expect).abs() <= 1e-9 * expect.max(1e-300));
            // the optimal subdivision of the scaled data is optimal for the original
            prop_assert!((out.subdivision_sum(&us) - base.value).abs() <= 1e-9 * base.value.max(1e-300));
        }

        #[test]
        fn adding_a_sample_never_decreases(us in values(30), s in 0.1f64..=1.0, extra in -100.0f64..100.0, at in 0usize..30) {
            let base = tvs_dp(&sf(&us), s).unwrap().value;
            let mut more = us.clone();
            more.insert(at.min(us.len()), extra);
            prop_assert!(tvs_dp(&sf(&more), s).unwrap().value >= base);
        }

        #[test]
        fn classical_variation_at_s_one(us in values(40)) {
            let v = tvs_dp(&sf(&us), 1.0).unwrap().value;
            let tv: f64 = us.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
            prop_assert!((v - tv).abs() <= 1e-12 * tv.max(1.0));
        }

        #[test]
        fn reduced_matches_full(us in values(60), s in 0.05f64..=1.0) {
            let f = sf(&us);
            let full = tvs_dp(&f, s).unwrap();
            let fast = tvs_reduced(&f, s).unwrap();
            prop_assert!((full.value - fast.value).abs() <= 1e-12 * full.value.max(1.0));
            prop_assert!((fast.subdivision_sum(&us) - fast.value).abs() <= 1e-12 * fast.value.max(1.0));
        }
    }
}
