//! Executable verification of the identities and inequalities the library is
//! built on, plus the mollification-convergence experiment.
//!
//! Every check returns a [`VerificationReport`]; the suite in [`suite`]
//! runs the full battery over a configured measure zoo.

pub mod suite;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::delta::{
    delta_slice, delta_slice_cyclic, delta_slice_truncated, delta_slice_truncated_cyclic,
    CyclicMeasureTuple, DeltaSlice, MeasureTuple, TruncationMode, TruncationSpec,
};
use crate::fit::fit_line;
use crate::measure::{FourierMeasure, Window, WindowKind};
use crate::norms::{
    fourier_dim_order_k, dyadic_radii, gowers_inner, norm_split_from_slice, rk_predicted, uk_norm,
    uk_norm_pow, NormSplit,
};
use crate::{Error, Result};

/// Structured outcome of one identity or inequality check.
///
/// For inequalities `margin = rhs - lhs` and `pass = margin >= -tolerance`;
/// for identities `margin` is the relative residual and `pass = margin <=
/// tolerance`. The tolerance is always recorded in `params`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
    pub params: BTreeMap<String, serde_json::Value>,
}

impl VerificationReport {
    pub fn inequality(
        name: impl Into<String>,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        mut params: BTreeMap<String, serde_json::Value>,
    ) -> Self {
        let margin = rhs - lhs;
        params.insert("tolerance".into(), tolerance.into());
        params.insert("kind".into(), "inequality".into());
        VerificationReport { name: name.into(), lhs, rhs, margin, pass: margin >= -tolerance, params }
    }

    pub fn identity(
        name: impl Into<String>,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        mut params: BTreeMap<String, serde_json::Value>,
    ) -> Self {
        let residual = (lhs - rhs).abs() / 1f64.max(lhs.abs()).max(rhs.abs());
        params.insert("tolerance".into(), tolerance.into());
        params.insert("kind".into(), "identity".into());
        VerificationReport {
            name: name.into(),
            lhs,
            rhs,
            margin: residual,
            pass: residual <= tolerance,
            params,
        }
    }

    /// Identity report from a precomputed relative residual (used when the
    /// compared quantities are complex).
    pub fn identity_residual(
        name: impl Into<String>,
        lhs: f64,
        rhs: f64,
        residual: f64,
        tolerance: f64,
        mut params: BTreeMap<String, serde_json::Value>,
    ) -> Self {
        params.insert("tolerance".into(), tolerance.into());
        params.insert("kind".into(), "identity".into());
        VerificationReport {
            name: name.into(),
            lhs,
            rhs,
            margin: residual,
            pass: residual <= tolerance,
            params,
        }
    }
}

fn params(pairs: &[(&str, serde_json::Value)]) -> BTreeMap<String, serde_json::Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Peak bound: over the whole certified box, `|Delta-hat^k mu(0; eta)|` never
/// exceeds the center value `Delta-hat^k mu(0; 0)`.
pub fn check_peak_bound(mu: &FourierMeasure, k: u32, tolerance: f64) -> Result<VerificationReport> {
    if k < 2 {
        return Err(Error::InvalidParameter("peak bound needs k >= 2".into()));
    }
    if !mu.is_real() {
        return Err(Error::InvalidParameter("peak bound is stated for real measures".into()));
    }
    let t = MeasureTuple::all_equal(mu, k)?;
    let slice = delta_slice(&t, 0)?;
    let (max_abs, arg) = slice.max_abs();
    let center = slice.value(&vec![0; k as usize]);
    let mut p = params(&[
        ("k", k.into()),
        ("argmax", serde_json::json!(arg)),
        ("center_im", center.im.into()),
    ]);
    p.insert("bandwidth".into(), mu.bandwidth().into());
    Ok(VerificationReport::inequality("peak-bound", max_abs, center.re, tolerance, p))
}

/// Split monotonicity: with `eps` the low-frequency surplus of `mu` over its
/// mollification, the high part of `mu` recovers the high part of `mu_n` up
/// to `eps`. With a sharp window both splits are exact and the margin equals
/// the difference of total norm powers.
pub fn check_split_monotonicity(
    mu: &FourierMeasure,
    k: u32,
    n: i32,
    m: i32,
    kind: WindowKind,
    tolerance: f64,
) -> Result<VerificationReport> {
    let window_n = Window { kind, level: Some(n) };
    let mollified = mu.mollify(&window_n, k + 1);
    let split_mu = crate::norms::norm_split(mu, k + 1, Window { kind, level: Some(m) })?;
    let split_mn = crate::norms::norm_split(&mollified, k + 1, Window { kind, level: Some(m) })?;
    Ok(split_monotonicity_report(&split_mu, &split_mn, k, n, m, tolerance))
}

/// Report assembly from precomputed splits (lets sweeps reuse slices).
pub fn split_monotonicity_report(
    split_mu: &NormSplit,
    split_mollified: &NormSplit,
    k: u32,
    n: i32,
    m: i32,
    tolerance: f64,
) -> VerificationReport {
    let eps = split_mu.low_pow - split_mollified.low_pow;
    let lhs = split_mollified.high_pow - eps;
    let rhs = split_mu.high_pow;
    let p = params(&[
        ("k", k.into()),
        ("n", n.into()),
        ("m", m.into()),
        ("eps", eps.into()),
        ("total_mu", split_mu.total_pow.into()),
        ("total_mollified", split_mollified.total_pow.into()),
    ]);
    VerificationReport::inequality("split-monotonicity", lhs, rhs, tolerance, p)
}

/// Gowers-Cauchy-Schwarz: `|<t>| <= prod_iota ||mu_iota||_{U^k}`.
pub fn check_gowers_cauchy_schwarz(t: &MeasureTuple, tolerance: f64) -> Result<VerificationReport> {
    let k = t.k();
    let inner = gowers_inner(t)?;
    let mut product = 1.0;
    for mu in t.entries() {
        product *= uk_norm(mu, k)?;
    }
    let p = params(&[("k", k.into()), ("inner_im", inner.im.into())]);
    Ok(VerificationReport::inequality(
        "gowers-cauchy-schwarz",
        inner.norm(),
        product,
        tolerance,
        p,
    ))
}

fn complex_residual(lhs: crate::C64, rhs: crate::C64) -> f64 {
    (lhs - rhs).norm() / 1f64.max(lhs.norm()).max(rhs.norm())
}

/// High-frequency exchange identity: restricting one convolution coordinate
/// of the squared mixed object equals pairing the truncated diagonal
/// `sub0` tuple against the plain diagonal `sub1` tuple,
///
/// ```text
/// sum_eta D_{s_j>N}(t)(0;eta) conj(D(t)(0;eta))
///   = sum_eta D_{s_j>N}(sub0,sub0)(0;eta) conj(D(sub1,sub1)(0;eta)).
/// ```
///
/// For `j = k` the left side reduces to the masked sum
/// `sum_{|eta_k| > 2^N} |D(t)(0;eta)|^2`, which is verified as a third
/// independent route.
pub fn check_high_exchange(
    t: &MeasureTuple,
    j: usize,
    level: i32,
    tolerance: f64,
) -> Result<VerificationReport> {
    let k = t.k();
    let window = Window::sharp(level);
    let spec = TruncationSpec::new(j, TruncationMode::SjHigh, window);
    let plain = delta_slice(t, 0)?;
    let truncated = delta_slice_truncated(t, 0, &spec)?;
    let lhs_c = truncated.dot_conj(&plain)?;

    let sub0 = t.sub_tuple(0)?;
    let sub1 = t.sub_tuple(1)?;
    let d00 = MeasureTuple::pair(&sub0, &sub0)?;
    let d11 = MeasureTuple::pair(&sub1, &sub1)?;
    let rhs_c = delta_slice_truncated(&d00, 0, &spec)?.dot_conj(&delta_slice(&d11, 0)?)?;

    let mut residual = complex_residual(lhs_c, rhs_c);
    let mut p = params(&[
        ("k", k.into()),
        ("j", j.into()),
        ("level", level.into()),
        ("lhs_im", lhs_c.im.into()),
        ("rhs_im", rhs_c.im.into()),
    ]);
    if j == k as usize {
        let radius = window.sharp_radius();
        let masked = plain.sum_abs2_where(|coords| coords[j - 1].abs() > radius);
        let masked_residual =
            (masked - lhs_c.re).abs().max(lhs_c.im.abs()) / 1f64.max(masked.abs());
        residual = residual.max(masked_residual);
        p.insert("masked_sum".into(), masked.into());
    }
    Ok(VerificationReport::identity_residual(
        "high-exchange",
        lhs_c.re,
        rhs_c.re,
        residual,
        tolerance,
        p,
    ))
}

/// Squared exchange identity: the full square sum of the truncated mixed
/// object equals pairing the doubly-truncated diagonal `sub0` tuple against
/// the plain diagonal `sub1` tuple,
///
/// ```text
/// sum_eta |D_{s_j>N}(t)(0;eta)|^2
///   = sum_eta D_{s_j>N, s_j-eta_j>N}(sub0,sub0)(0;eta)
///             conj(D(sub1,sub1)(0;eta)).
/// ```
pub fn check_square_exchange(
    t: &MeasureTuple,
    j: usize,
    level: i32,
    tolerance: f64,
) -> Result<VerificationReport> {
    let k = t.k();
    let window = Window::sharp(level);
    let high = TruncationSpec::new(j, TruncationMode::SjHigh, window);
    let both = TruncationSpec::new(j, TruncationMode::SjBoth, window);
    let lhs = delta_slice_truncated(t, 0, &high)?.sum_abs2();

    let sub0 = t.sub_tuple(0)?;
    let sub1 = t.sub_tuple(1)?;
    let d00 = MeasureTuple::pair(&sub0, &sub0)?;
    let d11 = MeasureTuple::pair(&sub1, &sub1)?;
    let rhs_c = delta_slice_truncated(&d00, 0, &both)?.dot_conj(&delta_slice(&d11, 0)?)?;

    let residual = (crate::C64::new(lhs, 0.0) - rhs_c).norm() / 1f64.max(lhs.abs());
    let p = params(&[
        ("k", k.into()),
        ("j", j.into()),
        ("level", level.into()),
        ("rhs_im", rhs_c.im.into()),
    ]);
    Ok(VerificationReport::identity_residual(
        "square-exchange",
        lhs,
        rhs_c.re,
        residual,
        tolerance,
        p,
    ))
}

/// Cyclic-group versions of the two exchange identities, used for the
/// exhaustive oracle-domain checks.
pub fn check_high_exchange_cyclic(
    t: &CyclicMeasureTuple,
    j: usize,
    level: i32,
    tolerance: f64,
) -> Result<VerificationReport> {
    let k = t.k();
    let window = Window::sharp(level);
    let spec = TruncationSpec::new(j, TruncationMode::SjHigh, window);
    let plain = delta_slice_cyclic(t, 0)?;
    let truncated = delta_slice_truncated_cyclic(t, 0, &spec)?;
    let lhs_c = truncated.dot_conj(&plain)?;

    let d00 = CyclicMeasureTuple::pair(&t.sub_tuple(0)?, &t.sub_tuple(0)?)?;
    let d11 = CyclicMeasureTuple::pair(&t.sub_tuple(1)?, &t.sub_tuple(1)?)?;
    let rhs_c =
        delta_slice_truncated_cyclic(&d00, 0, &spec)?.dot_conj(&delta_slice_cyclic(&d11, 0)?)?;

    let mut residual = complex_residual(lhs_c, rhs_c);
    let mut p = params(&[
        ("k", k.into()),
        ("j", j.into()),
        ("level", level.into()),
        ("q", t.q().into()),
    ]);
    if j == k as usize {
        let radius = window.sharp_radius();
        let masked = plain.sum_abs2_where(|coords| coords[j - 1].abs() > radius);
        let masked_residual =
            (masked - lhs_c.re).abs().max(lhs_c.im.abs()) / 1f64.max(masked.abs());
        residual = residual.max(masked_residual);
        p.insert("masked_sum".into(), masked.into());
    }
    Ok(VerificationReport::identity_residual(
        "high-exchange-cyclic",
        lhs_c.re,
        rhs_c.re,
        residual,
        tolerance,
        p,
    ))
}

pub fn check_square_exchange_cyclic(
    t: &CyclicMeasureTuple,
    j: usize,
    level: i32,
    tolerance: f64,
) -> Result<VerificationReport> {
    let window = Window::sharp(level);
    let high = TruncationSpec::new(j, TruncationMode::SjHigh, window);
    let both = TruncationSpec::new(j, TruncationMode::SjBoth, window);
    let lhs = delta_slice_truncated_cyclic(t, 0, &high)?.sum_abs2();
    let d00 = CyclicMeasureTuple::pair(&t.sub_tuple(0)?, &t.sub_tuple(0)?)?;
    let d11 = CyclicMeasureTuple::pair(&t.sub_tuple(1)?, &t.sub_tuple(1)?)?;
    let rhs_c =
        delta_slice_truncated_cyclic(&d00, 0, &both)?.dot_conj(&delta_slice_cyclic(&d11, 0)?)?;
    let residual = (crate::C64::new(lhs, 0.0) - rhs_c).norm() / 1f64.max(lhs.abs());
    let p = params(&[
        ("k", t.k().into()),
        ("j", j.into()),
        ("level", level.into()),
        ("q", t.q().into()),
        ("rhs_im", rhs_c.im.into()),
    ]);
    Ok(VerificationReport::identity_residual(
        "square-exchange-cyclic",
        lhs,
        rhs_c.re,
        residual,
        tolerance,
        p,
    ))
}

/// Mass bounds for truncated objects.
///
/// The stated bounds are `sum |D_both|^2 <= 16 prod ||mu_iota||_{U^k}` and
/// `sum |D_single|^2 <= 2 prod ||mu_iota||_{U^k}`. Those right-hand sides
/// have lower degree in the measures than the left (the constants absorb a
/// norm ceiling), so they only make sense on normalized tuples; alongside
/// them this check emits the degree-matched companions with right-hand side
/// `prod ||mu_iota||^2_{U^{k+1}}` times the same constants, which for the
/// single truncation at `j = k` follows from Gowers-Cauchy-Schwarz with
/// constant 1.
pub fn check_truncated_mass_bound(
    t: &MeasureTuple,
    j: usize,
    level: i32,
    tolerance: f64,
) -> Result<Vec<VerificationReport>> {
    let k = t.k();
    let window = Window::sharp(level);
    let mut product = 1.0;
    let mut product_sq_next = 1.0;
    for mu in t.entries() {
        product *= uk_norm(mu, k)?;
        let next = uk_norm(mu, k + 1)?;
        product_sq_next *= next * next;
    }
    let both = delta_slice_truncated(t, 0, &TruncationSpec::new(j, TruncationMode::SjBoth, window))?
        .sum_abs2();
    let single =
        delta_slice_truncated(t, 0, &TruncationSpec::new(j, TruncationMode::SjHigh, window))?
            .sum_abs2();
    let base = params(&[("k", k.into()), ("j", j.into()), ("level", level.into())]);
    Ok(vec![
        VerificationReport::inequality(
            "truncated-mass-bound-double",
            both,
            16.0 * product,
            tolerance,
            base.clone(),
        ),
        VerificationReport::inequality(
            "truncated-mass-bound-single",
            single,
            2.0 * product,
            tolerance,
            base.clone(),
        ),
        VerificationReport::inequality(
            "truncated-mass-bound-double-scaled",
            both,
            16.0 * product_sq_next,
            tolerance,
            base.clone(),
        ),
        VerificationReport::inequality(
            "truncated-mass-bound-single-scaled",
            single,
            2.0 * product_sq_next,
            tolerance,
            base,
        ),
    ])
}

/// Cross-term control under a high-frequency restriction: across a sweep of
/// cutoff levels, the masked square sum of a mixed tuple stays bounded by a
/// fitted constant times `eps^{2^{-2(k-1)}}` where `eps` is the larger
/// high-split norm of the two ingredient measures. Pass means no growth
/// trend: the fitted slope of `log2(ratio)` against the level stays at or
/// below `slope_tolerance`.
pub fn check_high_cross_terms(
    mu1: &FourierMeasure,
    mu2: &FourierMeasure,
    k: u32,
    pattern: u32,
    levels: &[i32],
    slope_tolerance: f64,
) -> Result<VerificationReport> {
    let t = MeasureTuple::from_pattern(mu1, mu2, k, pattern)?;
    let slice = delta_slice(&t, 0)?;
    let slice1 = delta_slice(&MeasureTuple::all_equal(mu1, k)?, 0)?;
    let slice2 = delta_slice(&MeasureTuple::all_equal(mu2, k)?, 0)?;
    let exponent = 2f64.powi(-2 * (k as i32 - 1));

    let mut pts = Vec::new();
    let mut ratios = Vec::new();
    let mut max_ratio = 0f64;
    for &level in levels {
        let w = Window::sharp(level);
        let radius = w.sharp_radius();
        let lhs = slice.sum_abs2_where(|coords| coords.iter().any(|c| c.abs() > radius));
        let eps = norm_split_from_slice(&slice1, w)
            .high_norm()
            .max(norm_split_from_slice(&slice2, w).high_norm());
        let ratio = if eps > 0.0 { lhs / eps.powf(exponent) } else { 0.0 };
        ratios.push(serde_json::json!({ "level": level, "lhs": lhs, "eps": eps, "ratio": ratio }));
        if ratio > 0.0 {
            pts.push((level as f64, ratio.log2()));
            max_ratio = max_ratio.max(ratio);
        }
    }
    let slope = fit_line(&pts).map(|f| f.slope).unwrap_or(f64::NEG_INFINITY);
    let p = params(&[
        ("k", k.into()),
        ("pattern", pattern.into()),
        ("levels", serde_json::json!(ratios)),
        ("max_ratio", max_ratio.into()),
    ]);
    Ok(VerificationReport::inequality(
        "high-cross-terms",
        slope,
        slope_tolerance,
        0.0,
        p,
    ))
}

/// Relative triangle inequality for the high-split norm: across a sweep of
/// levels `N`, `||mu1 + mu2||_{U^{k+1}, > kN}` stays bounded by a fitted
/// constant times `eps^{1 / 2^{3k-2}}`. Both readings of the cutoff (box
/// level `k N` on the product window, per-coordinate level `N` on the sup
/// mask) are computed and recorded; the trend test runs on the first.
pub fn check_relative_triangle(
    mu1: &FourierMeasure,
    mu2: &FourierMeasure,
    k: u32,
    levels: &[i32],
    slope_tolerance: f64,
) -> Result<VerificationReport> {
    let sum = mu1.add(mu2)?;
    let slice_sum = delta_slice(&MeasureTuple::all_equal(&sum, k)?, 0)?;
    let slice1 = delta_slice(&MeasureTuple::all_equal(mu1, k)?, 0)?;
    let slice2 = delta_slice(&MeasureTuple::all_equal(mu2, k)?, 0)?;
    let root = 1.0 / 2f64.powi(3 * k as i32 - 2);
    let norm_root = 1.0 / (1u64 << (k + 1)) as f64;

    let mut pts = Vec::new();
    let mut rows = Vec::new();
    let mut max_ratio = 0f64;
    for &level in levels {
        let eps = norm_split_from_slice(&slice1, Window::sharp(level))
            .high_norm()
            .max(norm_split_from_slice(&slice2, Window::sharp(level)).high_norm());
        let boxed = norm_split_from_slice(&slice_sum, Window::sharp(k as i32 * level)).high_norm();
        let radius = Window::sharp(level).sharp_radius();
        let coord = slice_sum
            .sum_abs2_where(|coords| coords.iter().any(|c| c.abs() > radius))
            .powf(norm_root);
        let ratio = if eps > 0.0 { boxed / eps.powf(root) } else { 0.0 };
        rows.push(serde_json::json!({
            "level": level, "eps": eps, "box_reading": boxed,
            "coord_reading": coord, "ratio": ratio,
        }));
        if ratio > 0.0 {
            pts.push((level as f64, ratio.log2()));
            max_ratio = max_ratio.max(ratio);
        }
    }
    let slope = fit_line(&pts).map(|f| f.slope).unwrap_or(f64::NEG_INFINITY);
    let p = params(&[
        ("k", k.into()),
        ("levels", serde_json::json!(rows)),
        ("max_ratio", max_ratio.into()),
    ]);
    Ok(VerificationReport::inequality(
        "relative-triangle",
        slope,
        slope_tolerance,
        0.0,
        p,
    ))
}

/// One row of a convergence experiment.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: i32,
    pub error: f64,
}

/// Mollification-convergence experiment: `e_n = ||mu - mu_n||_{U^k}` with
/// `mu_n` the `k`-fold window mollification at level `n`, the fitted slope
/// of `-log2 e_n` against `n`, and the predicted rate `r_k(beta_hat) / 2^k`
/// from the order-`(k-1)` dimension estimate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub measure_id: String,
    pub k: u32,
    pub rows: Vec<ConvergenceRow>,
    pub slope: Option<f64>,
    pub predicted: Option<f64>,
    pub beta_used: f64,
    pub warnings: Vec<String>,
}

pub fn convergence_experiment(
    mu: &FourierMeasure,
    measure_id: &str,
    k: u32,
    n_range: std::ops::RangeInclusive<i32>,
    kind: WindowKind,
) -> Result<ConvergenceTable> {
    if k < 2 {
        return Err(Error::InvalidParameter("convergence experiment needs k >= 2".into()));
    }
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for n in n_range {
        let window = Window { kind, level: Some(n) };
        let tail = mu.sub(&mu.mollify(&window, k))?;
        let e = uk_norm(&tail, k)?;
        rows.push(ConvergenceRow { n, error: e });
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.error > 0.0)
        .map(|r| (r.n as f64, -r.error.log2()))
        .collect();
    let slope = if pts.len() >= 3 {
        fit_line(&pts).map(|f| f.slope)
    } else {
        warnings.push(format!("only {} nonzero errors; slope undefined", pts.len()));
        None
    };

    let radii = dyadic_radii(mu, 1);
    let beta_hat = if k >= 3 {
        fourier_dim_order_k(mu, k - 1, &radii)?.value
    } else {
        fourier_dim_order_k(mu, 1, &radii)?.value
    };
    let d = mu.dim() as f64;
    let predicted = if beta_hat > 0.0 && beta_hat <= d {
        Some(rk_predicted(k, beta_hat, d)?.value / (1u64 << k) as f64)
    } else {
        warnings.push(format!("beta estimate {beta_hat} outside (0, d]; no rate prediction"));
        None
    };
    Ok(ConvergenceTable {
        measure_id: measure_id.to_string(),
        k,
        rows,
        slope,
        predicted,
        beta_used: beta_hat,
        warnings,
    })
}

/// Consistency of the two norm routes: the FFT slice sum against the
/// direct-summation point evaluation of the next-order center value.
pub fn check_norm_route_consistency(
    mu: &FourierMeasure,
    slice_order: u32,
    tolerance: f64,
) -> Result<VerificationReport> {
    let slice_route = uk_norm_pow(mu, slice_order + 1)?;
    let point_route = gowers_inner(&MeasureTuple::all_equal(mu, slice_order + 1)?)?;
    let residual = (crate::C64::new(slice_route, 0.0) - point_route).norm()
        / 1f64.max(slice_route.abs()).max(point_route.norm());
    let p = params(&[
        ("slice_order", slice_order.into()),
        ("point_im", point_route.im.into()),
        ("bandwidth", mu.bandwidth().into()),
    ]);
    Ok(VerificationReport::identity_residual(
        "l2-recursion-consistency",
        slice_route,
        point_route.re,
        residual,
        tolerance,
        p,
    ))
}

/// `U^2` against the spectral fourth-power sum, computed straight off the
/// coefficient map.
pub fn check_u2_spectral(mu: &FourierMeasure, tolerance: f64) -> Result<VerificationReport> {
    let lhs = uk_norm_pow(mu, 2)?;
    let rhs: f64 = mu.coeffs().values().map(|v| v.norm_sqr() * v.norm_sqr()).sum();
    let p = params(&[("bandwidth", mu.bandwidth().into())]);
    Ok(VerificationReport::identity("u2-spectral-l4", lhs, rhs, tolerance, p))
}

/// Sharp-window Pythagorean split at one cutoff level.
pub fn check_pythagorean_split(
    slice: &DeltaSlice,
    level: i32,
    tolerance: f64,
) -> VerificationReport {
    let split = norm_split_from_slice(slice, Window::sharp(level));
    let p = params(&[
        ("k", split.k.into()),
        ("level", level.into()),
        ("low", split.low_pow.into()),
        ("high", split.high_pow.into()),
    ]);
    VerificationReport::identity(
        "pythagorean-split",
        split.low_pow + split.high_pow,
        split.total_pow,
        tolerance,
        p,
    )
}
