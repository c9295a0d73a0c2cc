//! Band-limited measures on the torus `T^d`, represented by finitely
//! supported Fourier coefficient maps, plus the window profiles used for
//! mollification and frequency truncation.
//!
//! Everything in this module is exact on the Fourier side: a measure *is*
//! its coefficient map, arithmetic is coefficient-wise, and mollification is
//! pointwise multiplication by a window profile. Signed and complex
//! combinations (for instance `mu - mu_n`) are first-class.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use crate::rng::SplitMix64;
use crate::{C64, Error, Result};

/// Frequency vector in `Z^d`.
pub type Freq = Vec<i64>;

/// A measure on `T^d` with finitely many nonzero Fourier coefficients.
///
/// Invariants maintained by every constructor:
/// * the support is contained in the box `|c|_inf <= bandwidth`, with
///   `bandwidth` equal to the exact support radius (0 for the zero measure);
/// * exact-zero coefficients are never stored;
/// * when `is_real` is set, `coeff(-c) == conj(coeff(c))` holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierMeasure {
    dim: usize,
    coeffs: BTreeMap<Freq, C64>,
    bandwidth: i64,
    is_real: bool,
}

impl FourierMeasure {
    /// Validating constructor. Zero coefficients are pruned; the bandwidth is
    /// recomputed from the surviving support. With `is_real` set, Hermitian
    /// symmetry is enforced exactly, not assumed.
    pub fn new(dim: usize, coeffs: BTreeMap<Freq, C64>, is_real: bool) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dim must be >= 1".into()));
        }
        let mut pruned = BTreeMap::new();
        for (c, v) in coeffs {
            if c.len() != dim {
                return Err(Error::InvalidParameter(format!(
                    "frequency {c:?} has {} coordinates, measure has dim {dim}",
                    c.len()
                )));
            }
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "non-finite coefficient at {c:?}"
                )));
            }
            if v != C64::new(0.0, 0.0) {
                pruned.insert(c, v);
            }
        }
        if is_real {
            for (c, v) in &pruned {
                let neg: Freq = c.iter().map(|x| -x).collect();
                let mirror = pruned.get(&neg).copied().unwrap_or(C64::new(0.0, 0.0));
                if mirror != v.conj() {
                    return Err(Error::HermitianViolation { freq: c.clone() });
                }
            }
        }
        let bandwidth = pruned
            .keys()
            .map(|c| c.iter().map(|x| x.abs()).max().unwrap_or(0))
            .max()
            .unwrap_or(0);
        Ok(FourierMeasure { dim, coeffs: pruned, bandwidth, is_real })
    }

    /// The zero measure on `T^d`.
    pub fn zero(dim: usize) -> Self {
        FourierMeasure { dim, coeffs: BTreeMap::new(), bandwidth: 0, is_real: true }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Exact support radius in `|.|_inf`.
    pub fn bandwidth(&self) -> i64 {
        self.bandwidth
    }

    pub fn is_real(&self) -> bool {
        self.is_real
    }

    /// `mu_hat(0) == 1`, the normalization shared by all probability measures.
    /// Signed differences such as `mu - mu_n` fail this predicate by design.
    pub fn is_probability(&self) -> bool {
        self.coeff(&vec![0; self.dim]) == C64::new(1.0, 0.0)
    }

    pub fn coeffs(&self) -> &BTreeMap<Freq, C64> {
        &self.coeffs
    }

    pub fn coeff(&self, c: &[i64]) -> C64 {
        self.coeffs.get(c).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient-wise sum.
    pub fn add(&self, other: &FourierMeasure) -> Result<FourierMeasure> {
        self.combine(other, |a, b| a + b)
    }

    /// Coefficient-wise difference.
    pub fn sub(&self, other: &FourierMeasure) -> Result<FourierMeasure> {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &FourierMeasure, op: impl Fn(C64, C64) -> C64) -> Result<FourierMeasure> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let mut out: BTreeMap<Freq, C64> = BTreeMap::new();
        for (c, v) in &self.coeffs {
            out.insert(c.clone(), op(*v, other.coeff(c)));
        }
        for (c, v) in &other.coeffs {
            out.entry(c.clone()).or_insert_with(|| op(C64::new(0.0, 0.0), *v));
        }
        out.retain(|_, v| *v != C64::new(0.0, 0.0));
        let bandwidth = out
            .keys()
            .map(|c| c.iter().map(|x| x.abs()).max().unwrap_or(0))
            .max()
            .unwrap_or(0);
        Ok(FourierMeasure {
            dim: self.dim,
            coeffs: out,
            bandwidth,
            is_real: self.is_real && other.is_real,
        })
    }

    /// Scalar multiple. `is_real` survives only a real scalar.
    pub fn scale(&self, a: C64) -> FourierMeasure {
        let mut out = BTreeMap::new();
        for (c, v) in &self.coeffs {
            let w = a * v;
            if w != C64::new(0.0, 0.0) {
                out.insert(c.clone(), w);
            }
        }
        let bandwidth = out
            .keys()
            .map(|c| c.iter().map(|x| x.abs()).max().unwrap_or(0))
            .max()
            .unwrap_or(0);
        FourierMeasure {
            dim: self.dim,
            coeffs: out,
            bandwidth,
            is_real: self.is_real && a.im == 0.0,
        }
    }

    /// Multiplies each coefficient by `w_hat(c)^copies`. With a sharp window
    /// the exponent is irrelevant and the operation is a projection onto the
    /// low-frequency box.
    pub fn mollify(&self, window: &Window, copies: u32) -> FourierMeasure {
        let mut out = BTreeMap::new();
        for (c, v) in &self.coeffs {
            let w = window.profile(c).powi(copies as i32);
            let scaled = v * w;
            if scaled != C64::new(0.0, 0.0) {
                out.insert(c.clone(), scaled);
            }
        }
        let bandwidth = out
            .keys()
            .map(|c| c.iter().map(|x| x.abs()).max().unwrap_or(0))
            .max()
            .unwrap_or(0);
        FourierMeasure { dim: self.dim, coeffs: out, bandwidth, is_real: self.is_real }
    }

    /// JSON encoding: `{"dim": d, "is_real": b, "coeffs": [[c_1..c_d, re, im], ..]}`
    /// with rows in lexicographic frequency order. Finite binary64 values
    /// round-trip bit-exactly.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(c, v)| {
                let mut row: Vec<serde_json::Value> =
                    c.iter().map(|x| serde_json::Value::from(*x)).collect();
                row.push(serde_json::Value::from(v.re));
                row.push(serde_json::Value::from(v.im));
                serde_json::Value::Array(row)
            })
            .collect();
        serde_json::json!({
            "dim": self.dim,
            "is_real": self.is_real,
            "coeffs": rows,
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<FourierMeasure> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::InvalidParameter("measure file: expected object".into()))?;
        let dim = obj
            .get("dim")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::InvalidParameter("measure file: missing dim".into()))?
            as usize;
        let is_real = obj
            .get("is_real")
            .and_then(|v| v.as_bool())
            .ok_or_else(|| Error::InvalidParameter("measure file: missing is_real".into()))?;
        let rows = obj
            .get("coeffs")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::InvalidParameter("measure file: missing coeffs".into()))?;
        let mut coeffs = BTreeMap::new();
        for row in rows {
            let row = row
                .as_array()
                .ok_or_else(|| Error::InvalidParameter("measure file: coeff row not an array".into()))?;
            if row.len() != dim + 2 {
                return Err(Error::InvalidParameter(format!(
                    "measure file: coeff row has {} entries, expected {}",
                    row.len(),
                    dim + 2
                )));
            }
            let mut c = Vec::with_capacity(dim);
            for v in &row[..dim] {
                c.push(v.as_i64().ok_or_else(|| {
                    Error::InvalidParameter("measure file: non-integer frequency".into())
                })?);
            }
            let re = row[dim]
                .as_f64()
                .ok_or_else(|| Error::InvalidParameter("measure file: bad re".into()))?;
            let im = row[dim + 1]
                .as_f64()
                .ok_or_else(|| Error::InvalidParameter("measure file: bad im".into()))?;
            coeffs.insert(c, C64::new(re, im));
        }
        FourierMeasure::new(dim, coeffs, is_real)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(&self.to_json())?;
        std::fs::write(path, text + "\n")?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<FourierMeasure> {
        let text = std::fs::read_to_string(path)?;
        let value: serde_json::Value = serde_json::from_str(&text)?;
        FourierMeasure::from_json(&value)
    }
}

impl fmt::Display for FourierMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "measure(d={}, support={}, bandwidth={}, real={})",
            self.dim,
            self.coeffs.len(),
            self.bandwidth,
            self.is_real
        )
    }
}

/// Lebesgue measure on `T^d`: the single coefficient `mu_hat(0) = 1`.
pub fn gen_lebesgue(dim: usize) -> Result<FourierMeasure> {
    if dim == 0 {
        return Err(Error::InvalidParameter("dim must be >= 1".into()));
    }
    let mut coeffs = BTreeMap::new();
    coeffs.insert(vec![0; dim], C64::new(1.0, 0.0));
    FourierMeasure::new(dim, coeffs, true)
}

/// The real cosine test measure `{-1 -> 1/2, 0 -> 1, 1 -> 1/2}` on `T`.
pub fn gen_cosine() -> FourierMeasure {
    let mut coeffs = BTreeMap::new();
    coeffs.insert(vec![-1], C64::new(0.5, 0.0));
    coeffs.insert(vec![0], C64::new(1.0, 0.0));
    coeffs.insert(vec![1], C64::new(0.5, 0.0));
    FourierMeasure::new(1, coeffs, true).expect("cosine measure is hermitian")
}

/// Flat test measure: `mu_hat(c) = 1` on `|c| <= bandwidth` (no decay at all).
pub fn gen_flat(bandwidth: i64) -> Result<FourierMeasure> {
    if bandwidth < 0 {
        return Err(Error::InvalidParameter("bandwidth must be >= 0".into()));
    }
    let mut coeffs = BTreeMap::new();
    for c in -bandwidth..=bandwidth {
        coeffs.insert(vec![c], C64::new(1.0, 0.0));
    }
    FourierMeasure::new(1, coeffs, true)
}

/// Coefficient of the middle-interval Cantor measure at a single frequency.
///
/// Construction: the self-similar measure of the IFS
/// `S_0(x) = x/ratio`, `S_1(x) = (x + ratio - 1)/ratio` on `[0, 1]` with
/// equal weights 1/2 (for ratio 3 this is the classical middle-thirds
/// measure, supported on the two outer intervals at every stage). Its
/// Fourier coefficient is the infinite product
///
/// ```text
/// mu_hat(c) = prod_{j>=1} exp(-i pi c (ratio-1) ratio^{-j})
///                         * cos(pi c (ratio-1) ratio^{-j})
/// ```
///
/// truncated here at `j = depth`. The global phase convention (left endpoint
/// at 0) affects no norm in this crate; norms depend on the coefficients only
/// through translation-insensitive products.
pub fn cantor_coeff(ratio: u32, depth: u32, c: i64) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    let r = ratio as f64;
    let span = (ratio - 1) as f64;
    let mut scale = 1.0;
    for _ in 1..=depth {
        scale /= r;
        let arg = std::f64::consts::PI * c as f64 * span * scale;
        acc *= C64::new(arg.cos(), 0.0) * C64::new((-arg).cos(), (-arg).sin());
    }
    acc
}

/// Depth-`depth` Cantor approximant truncated to `|c| <= bandwidth`.
/// Depth 0 degenerates to the Lebesgue coefficient map `{0 -> 1}`.
pub fn gen_cantor(ratio: u32, depth: u32, bandwidth: i64) -> Result<FourierMeasure> {
    if ratio < 3 {
        return Err(Error::InvalidParameter("cantor ratio must be >= 3".into()));
    }
    if bandwidth < 1 {
        return Err(Error::InvalidParameter("cantor bandwidth must be >= 1".into()));
    }
    if depth == 0 {
        return gen_lebesgue(1);
    }
    let mut coeffs = BTreeMap::new();
    coeffs.insert(vec![0], C64::new(1.0, 0.0));
    for c in 1..=bandwidth {
        let v = cantor_coeff(ratio, depth, c);
        // Mirror explicitly so Hermitian symmetry is exact, not a property
        // of libm sign behavior.
        coeffs.insert(vec![c], v);
        coeffs.insert(vec![-c], v.conj());
    }
    FourierMeasure::new(1, coeffs, true)
}

/// Deterministic stand-in for a Salem measure on `T`: prescribed power-law
/// moduli `(1 + |c|)^{-beta/2}` with seeded pseudorandom phases, Hermitian by
/// construction. Same seed, same measure, bit for bit.
pub fn gen_salem_surrogate(beta: f64, bandwidth: i64, seed: u64) -> Result<FourierMeasure> {
    let dim_f = 1.0;
    if !(beta > 0.0 && beta < dim_f) {
        return Err(Error::InvalidParameter(format!(
            "salem beta must lie in (0, d) = (0, 1), got {beta}"
        )));
    }
    if bandwidth < 1 {
        return Err(Error::InvalidParameter("salem bandwidth must be >= 1".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let mut coeffs = BTreeMap::new();
    coeffs.insert(vec![0], C64::new(1.0, 0.0));
    for c in 1..=bandwidth {
        let modulus = (1.0 + c as f64).powf(-beta / 2.0);
        let theta = rng.range_f64(0.0, 2.0 * std::f64::consts::PI);
        let v = C64::new(modulus * theta.cos(), modulus * theta.sin());
        coeffs.insert(vec![c], v);
        coeffs.insert(vec![-c], v.conj());
    }
    FourierMeasure::new(1, coeffs, true)
}

/// Window kinds for mollification and frequency splits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum WindowKind {
    /// `w_hat_n(c) = 1` on `|c|_inf <= 2^n`, else 0. Idempotent; makes all
    /// split identities exact.
    SharpCutoff,
    /// Tent profile `prod_i max(0, 1 - |c_i| / 2^{n+1})`: values in `[0, 1]`,
    /// `w_hat_n(0) = 1`, support `|c|_inf <= 2^{n+1}`.
    Fejer,
}

/// A mollifier profile `w_hat_n` on `Z^d`.
///
/// `level = Some(n)` is the dyadic cutoff level (negative levels collapse the
/// sharp box to `{0}`); `level = None` is the "below all frequencies"
/// sentinel with `w_hat == 0` everywhere, so the complementary weight
/// `1 - w_hat` is identically 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub kind: WindowKind,
    pub level: Option<i32>,
}

impl Window {
    pub fn sharp(level: i32) -> Window {
        Window { kind: WindowKind::SharpCutoff, level: Some(level) }
    }

    pub fn fejer(level: i32) -> Window {
        Window { kind: WindowKind::Fejer, level: Some(level) }
    }

    /// The `N = -infinity` sentinel: `w_hat == 0`, complementary weight 1.
    pub fn below_all(kind: WindowKind) -> Window {
        Window { kind, level: None }
    }

    /// Radius of the sharp box at this level; -1 encodes the empty box.
    pub fn sharp_radius(&self) -> i64 {
        match self.level {
            None => -1,
            Some(n) if n < 0 => 0,
            Some(n) => {
                if n >= 62 {
                    i64::MAX
                } else {
                    1i64 << n
                }
            }
        }
    }

    /// Profile value at a frequency vector, `prod` over coordinates.
    pub fn profile(&self, c: &[i64]) -> f64 {
        c.iter().map(|&x| self.profile_1d(x)).product()
    }

    /// Scalar profile value at a single integer frequency.
    pub fn profile_1d(&self, c: i64) -> f64 {
        match self.kind {
            WindowKind::SharpCutoff => {
                if c.abs() <= self.sharp_radius() {
                    1.0
                } else {
                    0.0
                }
            }
            WindowKind::Fejer => match self.level {
                None => 0.0,
                Some(n) => {
                    let half_width = 2f64.powi(n + 1);
                    (1.0 - c.abs() as f64 / half_width).max(0.0)
                }
            },
        }
    }

    /// Complementary weight `1 - w_hat(c)` on a scalar frequency; the
    /// multiplier written `phi_N^c` in the truncation formulas.
    pub fn complement_1d(&self, c: i64) -> f64 {
        1.0 - self.profile_1d(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn lebesgue_is_the_unit_coefficient() {
        let mu = gen_lebesgue(1).unwrap();
        assert_eq!(mu.bandwidth(), 0);
        assert_eq!(mu.coeff(&[0]), c(1.0, 0.0));
        assert!(mu.is_probability());
        let mu2 = gen_lebesgue(2).unwrap();
        assert_eq!(mu2.coeff(&[0, 0]), c(1.0, 0.0));
        assert_eq!(mu2.dim(), 2);
    }

    #[test]
    fn cosine_measure_is_valid_with_bandwidth_one() {
        let mu = gen_cosine();
        assert_eq!(mu.bandwidth(), 1);
        assert!(mu.is_real());
        assert!(mu.is_probability());
    }

    #[test]
    fn hermitian_violation_is_rejected() {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(vec![1], c(0.0, 1.0));
        let err = FourierMeasure::new(1, coeffs, true).unwrap_err();
        assert!(matches!(err, Error::HermitianViolation { .. }));
    }

    #[test]
    fn empty_map_is_the_zero_measure() {
        let mu = FourierMeasure::new(1, BTreeMap::new(), true).unwrap();
        assert!(mu.is_zero());
        assert_eq!(mu.bandwidth(), 0);
        assert!(!mu.is_probability());
    }

    #[test]
    fn cantor_depth_zero_degenerates_to_lebesgue() {
        let mu = gen_cantor(3, 0, 64).unwrap();
        assert_eq!(mu, gen_lebesgue(1).unwrap());
    }

    #[test]
    fn cantor_is_a_probability_measure_with_bounded_coefficients() {
        let mu = gen_cantor(3, 8, 64).unwrap();
        assert!(mu.is_probability());
        assert!(mu.is_real());
        assert_eq!(mu.bandwidth(), 64);
        for v in mu.coeffs().values() {
            assert!(v.norm() <= 1.0 + 1e-15);
        }
    }

    #[test]
    fn cantor_coefficients_are_self_similar() {
        // The product formula satisfies mu_hat_depth(ratio * c) =
        // mu_hat_{depth-1}(c) exactly for ratio 3 (the extra factor at scale
        // ratio^{-1} is cos(2 pi c) e^{-2 pi i c} = 1 at integer c).
        for j in 0..5i64 {
            let big = cantor_coeff(3, 8, 3i64.pow(1) * 3i64.pow(j as u32));
            let small = cantor_coeff(3, 7, 3i64.pow(j as u32));
            assert!((big - small).norm() <= 1e-12, "j={j}: {big} vs {small}");
        }
    }

    #[test]
    fn cantor_rejects_bad_arguments() {
        assert!(gen_cantor(2, 3, 16).is_err());
        assert!(gen_cantor(3, 3, 0).is_err());
    }

    #[test]
    fn salem_moduli_follow_the_power_law_exactly() {
        let beta = 0.9;
        let mu = gen_salem_surrogate(beta, 256, 42).unwrap();
        for (cv, v) in mu.coeffs() {
            let cc = cv[0];
            if cc == 0 {
                assert_eq!(*v, c(1.0, 0.0));
            } else {
                let expect = (1.0 + cc.abs() as f64).powf(-beta / 2.0);
                assert!(
                    (v.norm() - expect).abs() <= 1e-15 * expect,
                    "modulus at {cc} off: {} vs {expect}",
                    v.norm()
                );
            }
        }
    }

    #[test]
    fn salem_is_deterministic_in_the_seed() {
        let a = gen_salem_surrogate(0.9, 128, 42).unwrap();
        let b = gen_salem_surrogate(0.9, 128, 42).unwrap();
        assert_eq!(a, b);
        let c = gen_salem_surrogate(0.9, 128, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn salem_rejects_beta_out_of_range() {
        assert!(gen_salem_surrogate(0.0, 16, 1).is_err());
        assert!(gen_salem_surrogate(1.0, 16, 1).is_err());
        assert!(gen_salem_surrogate(-0.2, 16, 1).is_err());
    }

    #[test]
    fn mollify_beyond_support_is_identity() {
        let mu = gen_salem_surrogate(0.9, 200, 7).unwrap();
        // 2^8 = 256 >= 200
        let out = mu.mollify(&Window::sharp(8), 3);
        assert_eq!(out, mu);
    }

    #[test]
    fn mollify_sharp_level_zero_restricts_to_radius_one() {
        let mu = gen_salem_surrogate(0.9, 256, 42).unwrap();
        let out = mu.mollify(&Window::sharp(0), 1);
        assert_eq!(out.bandwidth(), 1);
        assert_eq!(out.coeffs().len(), 3);
        assert_eq!(out.coeff(&[1]), mu.coeff(&[1]));
    }

    #[test]
    fn mollify_sharp_is_a_projection() {
        let mu = gen_salem_surrogate(0.7, 100, 11).unwrap();
        let once = mu.mollify(&Window::sharp(4), 1);
        let twice = once.mollify(&Window::sharp(4), 1);
        assert_eq!(once, twice);
    }

    #[test]
    fn mollify_fejer_squares_the_profile() {
        let mu = gen_cosine();
        let w = Window::fejer(-1); // half-width 2^0 = 1: w_hat(1) = 0, w_hat(0) = 1
        let out = mu.mollify(&w, 2);
        assert_eq!(out.coeff(&[0]), c(1.0, 0.0));
        assert_eq!(out.coeff(&[1]), c(0.0, 0.0));
        let w2 = Window::fejer(0); // half-width 2: w_hat(1) = 1/2
        let out2 = mu.mollify(&w2, 2);
        assert_eq!(out2.coeff(&[1]), c(0.125, 0.0)); // 0.5 * (1/2)^2
    }

    #[test]
    fn sub_self_is_zero_and_tail_support_is_complementary() {
        let mu = gen_salem_surrogate(0.9, 64, 5).unwrap();
        assert!(mu.sub(&mu).unwrap().is_zero());

        let low = mu.mollify(&Window::sharp(3), 1);
        let tail = mu.sub(&low).unwrap();
        for cv in tail.coeffs().keys() {
            assert!(cv[0].abs() > 8);
        }
        let back = tail.add(&low).unwrap();
        assert_eq!(back, mu);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = gen_lebesgue(1).unwrap();
        let b = gen_lebesgue(2).unwrap();
        assert!(matches!(a.add(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn scale_by_imaginary_drops_the_real_flag() {
        let mu = gen_cosine();
        assert!(mu.scale(c(2.0, 0.0)).is_real());
        assert!(!mu.scale(c(0.0, 1.0)).is_real());
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let mu = gen_salem_surrogate(0.9, 32, 42).unwrap();
        let back = FourierMeasure::from_json(&mu.to_json()).unwrap();
        assert_eq!(mu, back);
    }

    #[test]
    fn malformed_measure_files_are_rejected_with_messages() {
        let cases = [
            serde_json::json!([1, 2, 3]),
            serde_json::json!({"is_real": true, "coeffs": []}),
            serde_json::json!({"dim": 1, "is_real": true, "coeffs": [[0, 1.0]]}),
            serde_json::json!({"dim": 1, "is_real": true, "coeffs": [[0.5, 1.0, 0.0]]}),
            serde_json::json!({"dim": 1, "is_real": true, "coeffs": [[1, 0.0, 1.0]]}),
        ];
        for case in &cases {
            let err = FourierMeasure::from_json(case).unwrap_err();
            assert!(!err.to_string().is_empty());
        }
    }

    #[test]
    fn non_finite_coefficients_are_rejected() {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(vec![0], c(f64::NAN, 0.0));
        assert!(FourierMeasure::new(1, coeffs, false).is_err());
        let mut coeffs = BTreeMap::new();
        coeffs.insert(vec![0], c(f64::INFINITY, 0.0));
        assert!(FourierMeasure::new(1, coeffs, false).is_err());
    }

    #[test]
    fn window_profiles_match_their_definitions() {
        let w = Window::sharp(2);
        assert_eq!(w.profile_1d(4), 1.0);
        assert_eq!(w.profile_1d(-4), 1.0);
        assert_eq!(w.profile_1d(5), 0.0);
        assert_eq!(Window::sharp(-1).sharp_radius(), 0);
        assert_eq!(Window::below_all(WindowKind::SharpCutoff).profile_1d(0), 0.0);

        let f = Window::fejer(1); // half-width 4
        assert_eq!(f.profile_1d(0), 1.0);
        assert_eq!(f.profile_1d(2), 0.5);
        assert_eq!(f.profile_1d(4), 0.0);
        assert!(f.profile(&[1, 1]) > 0.0 && f.profile(&[1, 1]) <= 1.0);
    }
}
