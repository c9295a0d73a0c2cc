//! `Delta-hat^k` slices of measure tuples over bounded frequency boxes.
//!
//! A [`MeasureTuple`] holds `2^k` measures indexed by cube vertices
//! `iota in {0,1}^k` (bit `j` of the index is the coordinate paired with the
//! difference variable `u_{j+1}`). The recursion splits on the last vertex
//! coordinate; [`MeasureTuple::sub_tuple`] exposes that restriction and
//! [`MeasureTuple::pair`] its inverse.

mod engine;
mod grid;

use crate::measure::{FourierMeasure, Window};
use crate::oracle::CyclicFunction;
use crate::{C64, Error, Result};

pub use engine::{
    delta_point, delta_point_cyclic, delta_slice, delta_slice_cyclic, delta_slice_truncated,
    delta_slice_truncated_cyclic, delta_slice_truncated_with, delta_slice_with, EngineOptions,
    PointEvaluator,
};
pub use grid::{AxisRange, Domain};

use grid::{BoxArray, Line};

/// `2^k` measures indexed by cube vertices, all sharing one ambient
/// dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureTuple {
    k: u32,
    entries: Vec<FourierMeasure>,
}

impl MeasureTuple {
    /// Builds a tuple from `2^k` entries in vertex-index order.
    pub fn new(entries: Vec<FourierMeasure>) -> Result<Self> {
        let n = entries.len();
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "tuple needs 2^k entries with k >= 1, got {n}"
            )));
        }
        let k = n.trailing_zeros();
        let dim = entries[0].dim();
        if let Some(bad) = entries.iter().find(|m| m.dim() != dim) {
            return Err(Error::DimensionMismatch { left: dim, right: bad.dim() });
        }
        Ok(MeasureTuple { k, entries })
    }

    /// The diagonal tuple: every vertex carries the same measure.
    pub fn all_equal(mu: &FourierMeasure, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("tuple order k must be >= 1".into()));
        }
        Ok(MeasureTuple { k, entries: vec![mu.clone(); 1 << k] })
    }

    /// Mixed tuple over `{mu_a, mu_b}`: vertex `iota` carries `mu_b` when bit
    /// `iota` of `pattern` is set.
    pub fn from_pattern(
        mu_a: &FourierMeasure,
        mu_b: &FourierMeasure,
        k: u32,
        pattern: u32,
    ) -> Result<Self> {
        if k == 0 || k > 4 {
            return Err(Error::InvalidParameter("pattern tuples support 1 <= k <= 4".into()));
        }
        if mu_a.dim() != mu_b.dim() {
            return Err(Error::DimensionMismatch { left: mu_a.dim(), right: mu_b.dim() });
        }
        let entries = (0..(1usize << k))
            .map(|iota| if (pattern >> iota) & 1 == 1 { mu_b.clone() } else { mu_a.clone() })
            .collect();
        Ok(MeasureTuple { k, entries })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.entries[0].dim()
    }

    pub fn entries(&self) -> &[FourierMeasure] {
        &self.entries
    }

    pub fn max_bandwidth(&self) -> i64 {
        self.entries.iter().map(|m| m.bandwidth()).max().unwrap_or(0)
    }

    /// Restriction of the last vertex coordinate to `bit`, an order-`(k-1)`
    /// tuple. Requires `k >= 2`.
    pub fn sub_tuple(&self, bit: usize) -> Result<MeasureTuple> {
        if self.k < 2 {
            return Err(Error::InvalidParameter("sub_tuple needs k >= 2".into()));
        }
        if bit > 1 {
            return Err(Error::InvalidParameter("bit must be 0 or 1".into()));
        }
        let half = 1usize << (self.k - 1);
        let entries = (0..half).map(|i| self.entries[i + bit * half].clone()).collect();
        Ok(MeasureTuple { k: self.k - 1, entries })
    }

    /// Joins two order-`(k-1)` tuples into the order-`k` tuple whose last
    /// coordinate restricts to them.
    pub fn pair(sub0: &MeasureTuple, sub1: &MeasureTuple) -> Result<MeasureTuple> {
        if sub0.k != sub1.k {
            return Err(Error::InvalidParameter("pair needs equal orders".into()));
        }
        if sub0.dim() != sub1.dim() {
            return Err(Error::DimensionMismatch { left: sub0.dim(), right: sub1.dim() });
        }
        let mut entries = sub0.entries.clone();
        entries.extend(sub1.entries.iter().cloned());
        Ok(MeasureTuple { k: sub0.k + 1, entries })
    }

    /// Applies a coordinate permutation: `(pi t)_iota = t_{pi iota}` where
    /// `(pi iota)_j = iota_{perm[j]}` (0-based coordinates).
    pub fn permute(&self, perm: &[usize]) -> Result<MeasureTuple> {
        let k = self.k as usize;
        if perm.len() != k {
            return Err(Error::InvalidParameter(format!(
                "permutation needs {k} entries, got {}",
                perm.len()
            )));
        }
        let mut seen = vec![false; k];
        for &p in perm {
            if p >= k || seen[p] {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            seen[p] = true;
        }
        let entries = (0..(1usize << k))
            .map(|iota| {
                let mut image = 0usize;
                for (j, &p) in perm.iter().enumerate() {
                    image |= ((iota >> p) & 1) << j;
                }
                self.entries[image].clone()
            })
            .collect();
        Ok(MeasureTuple { k: self.k, entries })
    }

    pub(crate) fn lines(&self) -> Result<Vec<Line>> {
        self.entries.iter().map(Line::from_measure).collect()
    }
}

/// Permutes a frequency vector the same way [`MeasureTuple::permute`] permutes
/// vertex coordinates: `(pi eta)_j = eta_{perm[j]}`.
pub fn permute_coords(eta: &[i64], perm: &[usize]) -> Vec<i64> {
    perm.iter().map(|&p| eta[p]).collect()
}

/// A `2^k`-tuple of spectra on the cyclic group `Z_q`, the engine's input for
/// oracle cross-checks.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicMeasureTuple {
    k: u32,
    q: usize,
    spectra: Vec<Vec<C64>>,
}

impl CyclicMeasureTuple {
    pub fn new(q: usize, spectra: Vec<Vec<C64>>) -> Result<Self> {
        let n = spectra.len();
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "cyclic tuple needs 2^k spectra with k >= 1, got {n}"
            )));
        }
        if spectra.iter().any(|s| s.len() != q) {
            return Err(Error::InvalidParameter("spectrum length must equal q".into()));
        }
        Ok(CyclicMeasureTuple { k: n.trailing_zeros(), q, spectra })
    }

    /// Spectra of the given functions (average-normalized DFT).
    pub fn from_functions(fs: &[CyclicFunction], k: u32) -> Result<Self> {
        if fs.len() != 1 << k {
            return Err(Error::InvalidParameter(format!(
                "tuple of order {k} needs {} functions, got {}",
                1 << k,
                fs.len()
            )));
        }
        let q = fs[0].q();
        Self::new(q, fs.iter().map(|f| f.dft()).collect())
    }

    pub fn all_equal(f: &CyclicFunction, k: u32) -> Result<Self> {
        let fs = vec![f.clone(); 1 << k];
        Self::from_functions(&fs, k)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn sub_tuple(&self, bit: usize) -> Result<CyclicMeasureTuple> {
        if self.k < 2 {
            return Err(Error::InvalidParameter("sub_tuple needs k >= 2".into()));
        }
        let half = 1usize << (self.k - 1);
        let spectra = (0..half).map(|i| self.spectra[i + bit * half].clone()).collect();
        Ok(CyclicMeasureTuple { k: self.k - 1, q: self.q, spectra })
    }

    pub fn pair(sub0: &CyclicMeasureTuple, sub1: &CyclicMeasureTuple) -> Result<CyclicMeasureTuple> {
        if sub0.k != sub1.k || sub0.q != sub1.q {
            return Err(Error::InvalidParameter("pair needs equal orders and moduli".into()));
        }
        let mut spectra = sub0.spectra.clone();
        spectra.extend(sub1.spectra.iter().cloned());
        Ok(CyclicMeasureTuple { k: sub0.k + 1, q: sub0.q, spectra })
    }

    pub(crate) fn lines(&self) -> Result<Vec<Line>> {
        self.spectra
            .iter()
            .map(|s| Line::from_cyclic_spectrum(self.q, s.clone()))
            .collect()
    }
}

/// Which truncation weights to insert into the top-level convolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncationMode {
    /// Weight `phi_N^c` on the first factor's `j`-th frequency (`s_j > N`).
    SjHigh,
    /// Weights on both factors (`s_j > N` and `s_j - eta_j > N`).
    SjBoth,
}

/// Frequency truncation of one convolution coordinate.
///
/// `j` is 1-based in `[1, k]`; for `j < k` the weight multiplies the
/// summation variable `c_j`, for `j = k` it appears as the outer factor in
/// the slice's first argument (`xi + eta_k`, and `eta_k` for both-sided
/// truncation). The cutoff level `N` lives inside the window (`level: None`
/// is the below-all-frequencies sentinel with weight identically 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationSpec {
    pub j: usize,
    pub mode: TruncationMode,
    pub window: Window,
}

impl TruncationSpec {
    pub fn new(j: usize, mode: TruncationMode, window: Window) -> Self {
        TruncationSpec { j, mode, window }
    }
}

/// Dense slice `Delta-hat^k(t)(xi; .)` over its certified support box.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaSlice {
    pub k: u32,
    pub xi: i64,
    pub domain: Domain,
    pub(crate) array: BoxArray,
}

impl DeltaSlice {
    /// Inclusive per-coordinate bounds of the stored box.
    pub fn bounds(&self) -> Vec<(i64, i64)> {
        self.array.axes.iter().map(|a| (a.lo, a.hi())).collect()
    }

    pub fn len(&self) -> usize {
        self.array.len()
    }

    pub fn is_empty(&self) -> bool {
        self.array.len() == 0
    }

    /// Value at `eta`; exactly zero outside the box, wrapped modulo `q` on
    /// cyclic domains.
    pub fn value(&self, eta: &[i64]) -> C64 {
        match self.domain {
            Domain::Lattice => self.array.get(eta),
            Domain::Cyclic { .. } => {
                let wrapped: Vec<i64> = eta.iter().map(|&e| self.domain.wrap(e)).collect();
                self.array.get(&wrapped)
            }
        }
    }

    /// Visits every stored entry; coordinates are centered representatives
    /// (`(-q/2, q/2]` for cyclic domains, plain lattice points otherwise).
    pub fn for_each(&self, mut f: impl FnMut(&[i64], C64)) {
        let domain = self.domain;
        let mut centered = vec![0i64; self.k as usize];
        self.array.for_each(|coords, v| {
            for (s, &c) in centered.iter_mut().zip(coords) {
                *s = domain.centered(c);
            }
            f(&centered, v);
        });
    }

    /// `sum_eta |values|^2` over the whole box.
    pub fn sum_abs2(&self) -> f64 {
        self.array.sum_abs2()
    }

    /// `sum |values|^2` over entries whose centered coordinates satisfy the
    /// predicate.
    pub fn sum_abs2_where(&self, mut pred: impl FnMut(&[i64]) -> bool) -> f64 {
        let mut acc = 0.0;
        self.for_each(|coords, v| {
            if pred(coords) {
                acc += v.norm_sqr();
            }
        });
        acc
    }

    /// `sum_eta self(eta) * conj(other(eta))` over a shared box.
    pub fn dot_conj(&self, other: &DeltaSlice) -> Result<C64> {
        if self.array.axes != other.array.axes {
            return Err(Error::InvalidParameter(
                "dot_conj needs slices over identical boxes".into(),
            ));
        }
        let mut acc = C64::new(0.0, 0.0);
        for (a, b) in self.array.data.iter().zip(&other.array.data) {
            acc += a * b.conj();
        }
        Ok(acc)
    }

    /// Maximum modulus over the box and one coordinate attaining it.
    pub fn max_abs(&self) -> (f64, Vec<i64>) {
        let mut best = -1.0;
        let mut arg = vec![0i64; self.k as usize];
        self.for_each(|coords, v| {
            let n = v.norm();
            if n > best {
                best = n;
                arg = coords.to_vec();
            }
        });
        (best.max(0.0), arg)
    }

    /// CSV export: `#`-prefixed header with order, first argument and box
    /// bounds, then one row per entry in lexicographic coordinate order.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# delta-slice k={} xi={}\n", self.k, self.xi));
        for (j, (lo, hi)) in self.bounds().iter().enumerate() {
            out.push_str(&format!("# box axis {}: [{}, {}]\n", j + 1, lo, hi));
        }
        for j in 1..=self.k {
            out.push_str(&format!("eta_{j},"));
        }
        out.push_str("re,im\n");
        self.array.for_each(|coords, v| {
            for c in coords {
                out.push_str(&format!("{c},"));
            }
            out.push_str(&format!("{},{}\n", v.re, v.im));
        });
        out
    }

    /// JSON export mirroring the CSV content.
    pub fn to_json(&self) -> serde_json::Value {
        let mut rows = Vec::with_capacity(self.array.len());
        self.array.for_each(|coords, v| {
            let mut row: Vec<serde_json::Value> =
                coords.iter().map(|c| serde_json::Value::from(*c)).collect();
            row.push(serde_json::Value::from(v.re));
            row.push(serde_json::Value::from(v.im));
            rows.push(serde_json::Value::Array(row));
        });
        serde_json::json!({
            "k": self.k,
            "xi": self.xi,
            "box": self.bounds().iter().map(|(lo, hi)| vec![*lo, *hi]).collect::<Vec<_>>(),
            "values": rows,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{gen_cosine, gen_lebesgue, gen_salem_surrogate, WindowKind};
    use crate::rng::SplitMix64;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn lebesgue_tuple_slice_is_a_delta_spike() {
        let leb = gen_lebesgue(1).unwrap();
        for k in 1..=3 {
            let t = MeasureTuple::all_equal(&leb, k).unwrap();
            let s = delta_slice(&t, 0).unwrap();
            assert_eq!(s.value(&vec![0; k as usize]), c(1.0, 0.0));
            assert_eq!(s.value(&vec![1; k as usize]), c(0.0, 0.0));
            assert_eq!(s.sum_abs2(), 1.0);
        }
    }

    #[test]
    fn k1_slice_of_the_cosine_measure_is_the_squared_modulus() {
        let mu = gen_cosine();
        let t = MeasureTuple::all_equal(&mu, 1).unwrap();
        let s = delta_slice(&t, 0).unwrap();
        assert_eq!(s.value(&[-1]), c(0.25, 0.0));
        assert_eq!(s.value(&[0]), c(1.0, 0.0));
        assert_eq!(s.value(&[1]), c(0.25, 0.0));
        assert_eq!(s.value(&[2]), c(0.0, 0.0));
    }

    #[test]
    fn point_evaluation_matches_the_slice() {
        let mu = gen_salem_surrogate(0.9, 6, 3).unwrap();
        let t = MeasureTuple::all_equal(&mu, 2).unwrap();
        let s = delta_slice(&t, 0).unwrap();
        let mut ev = PointEvaluator::new(&t).unwrap();
        let mut rng = SplitMix64::new(5);
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let eta = [
                rng.below(25) as i64 - 12,
                rng.below(25) as i64 - 12,
            ];
            let a = s.value(&eta);
            let b = ev.eval(0, &eta).unwrap();
            worst = worst.max((a - b).norm());
        }
        assert!(worst <= 1e-12, "max |slice - point| = {worst}");
    }

    #[test]
    fn points_outside_the_certified_box_are_zero() {
        let mu = gen_cosine();
        let t = MeasureTuple::all_equal(&mu, 2).unwrap();
        // radius = 2^{2-1} * 1 = 2
        assert_eq!(delta_point(&t, 0, &[3, 0]).unwrap(), c(0.0, 0.0));
        assert_eq!(delta_point(&t, 0, &[0, -5]).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn hermitian_symmetry_for_real_diagonal_tuples() {
        let mu = gen_salem_surrogate(0.8, 5, 11).unwrap();
        let t = MeasureTuple::all_equal(&mu, 2).unwrap();
        let s = delta_slice(&t, 0).unwrap();
        s.for_each(|coords, v| {
            let neg: Vec<i64> = coords.iter().map(|x| -x).collect();
            let mirror = s.value(&neg);
            assert!((mirror - v.conj()).norm() <= 1e-12);
        });
    }

    #[test]
    fn diagonal_scaling_raises_to_the_two_to_k() {
        let mu = gen_cosine();
        let a = 1.7;
        let scaled = mu.scale(c(a, 0.0));
        for k in 1..=3u32 {
            let t = MeasureTuple::all_equal(&mu, k).unwrap();
            let ts = MeasureTuple::all_equal(&scaled, k).unwrap();
            let s = delta_slice(&t, 0).unwrap();
            let ss = delta_slice(&ts, 0).unwrap();
            let factor = a.powi(1 << k);
            s.for_each(|coords, v| {
                let w = ss.value(coords);
                assert!((w - v * factor).norm() <= 1e-9 * factor.max(1.0));
            });
        }
    }

    #[test]
    fn zero_entry_short_circuits_to_the_zero_slice() {
        let mu = gen_cosine();
        let zero = FourierMeasure::zero(1);
        let t = MeasureTuple::new(vec![mu.clone(), mu.clone(), mu.clone(), zero]).unwrap();
        let s = delta_slice(&t, 0).unwrap();
        assert_eq!(s.sum_abs2(), 0.0);
    }

    #[test]
    fn fft_and_direct_kernels_agree() {
        let mu = gen_salem_surrogate(0.7, 9, 21).unwrap();
        let nu = gen_salem_surrogate(0.9, 7, 22).unwrap();
        let t = MeasureTuple::from_pattern(&mu, &nu, 2, 0b0110).unwrap();
        for xi in [-1i64, 0, 3] {
            let a = delta_slice_with(&t, xi, EngineOptions::all_fft()).unwrap();
            let b = delta_slice_with(&t, xi, EngineOptions::all_direct()).unwrap();
            let mut worst: f64 = 0.0;
            a.for_each(|coords, v| worst = worst.max((v - b.value(coords)).norm()));
            assert!(worst <= 1e-12, "kernel mismatch {worst}");
        }
    }

    #[test]
    fn truncation_sentinel_reproduces_the_plain_slice() {
        let mu = gen_salem_surrogate(0.9, 6, 13).unwrap();
        let t = MeasureTuple::all_equal(&mu, 2).unwrap();
        let plain = delta_slice(&t, 0).unwrap();
        for j in [1usize, 2] {
            let spec = TruncationSpec::new(
                j,
                TruncationMode::SjBoth,
                Window::below_all(WindowKind::SharpCutoff),
            );
            let tr = delta_slice_truncated(&t, 0, &spec).unwrap();
            let mut worst: f64 = 0.0;
            plain.for_each(|coords, v| worst = worst.max((v - tr.value(coords)).norm()));
            assert!(worst <= 1e-13, "sentinel truncation differs by {worst}");
        }
    }

    #[test]
    fn truncation_beyond_the_box_kills_everything() {
        let mu = gen_salem_surrogate(0.9, 6, 13).unwrap();
        let t = MeasureTuple::all_equal(&mu, 2).unwrap();
        for j in [1usize, 2] {
            let spec = TruncationSpec::new(j, TruncationMode::SjHigh, Window::sharp(6));
            let tr = delta_slice_truncated(&t, 0, &spec).unwrap();
            assert_eq!(tr.sum_abs2(), 0.0);
        }
    }

    #[test]
    fn truncation_at_level_minus_one_drops_the_zero_term() {
        // Sharp level -1 has box {0}, so the complementary weight removes
        // exactly the c_j = 0 term; verify against a direct sum at probes.
        let mu = gen_salem_surrogate(0.8, 5, 17).unwrap();
        let t = MeasureTuple::all_equal(&mu, 2).unwrap();
        let spec = TruncationSpec::new(1, TruncationMode::SjHigh, Window::sharp(-1));
        let tr = delta_slice_truncated(&t, 0, &spec).unwrap();
        let sub = t.sub_tuple(0).unwrap();
        let mut e0 = PointEvaluator::new(&sub).unwrap();
        let mut e1 = PointEvaluator::new(&t.sub_tuple(1).unwrap()).unwrap();
        let mut rng = SplitMix64::new(8);
        for _ in 0..10 {
            let eta = [rng.below(21) as i64 - 10, rng.below(21) as i64 - 10];
            let mut want = c(0.0, 0.0);
            for cc in -10i64..=10 {
                if cc == 0 {
                    continue;
                }
                want += e0.eval(eta[1], &[cc]).unwrap()
                    * e1.eval(eta[1], &[cc - eta[0]]).unwrap().conj();
            }
            let got = tr.value(&eta);
            assert!((got - want).norm() <= 1e-12, "at {eta:?}: {got} vs {want}");
        }
    }

    #[test]
    fn oversized_boxes_are_rejected_not_attempted() {
        let mu = gen_salem_surrogate(0.9, 256, 1).unwrap();
        let t = MeasureTuple::all_equal(&mu, 3).unwrap();
        // radius 4 * 256 = 1024, box 2049^3 > budget
        match delta_slice(&t, 0) {
            Err(Error::BoxTooLarge { .. }) => {}
            other => panic!("expected BoxTooLarge, got {other:?}"),
        }
    }

    #[test]
    fn extreme_arguments_come_back_as_exact_zeros() {
        let t = MeasureTuple::all_equal(&gen_cosine(), 2).unwrap();
        let mut ev = PointEvaluator::new(&t).unwrap();
        assert_eq!(ev.eval(i64::MAX, &[0, 0]).unwrap(), c(0.0, 0.0));
        assert_eq!(ev.eval(0, &[i64::MIN, 1]).unwrap(), c(0.0, 0.0));
        assert_eq!(ev.eval(i64::MIN, &[i64::MAX, i64::MIN]).unwrap(), c(0.0, 0.0));
        let far = delta_slice(&t, i64::MAX / 2).unwrap();
        assert_eq!(far.sum_abs2(), 0.0);
        let far = delta_slice(&t, i64::MIN / 2).unwrap();
        assert_eq!(far.sum_abs2(), 0.0);
    }

    #[test]
    fn tuple_indexing_round_trips() {
        let a = gen_cosine();
        let b = gen_lebesgue(1).unwrap();
        let t = MeasureTuple::from_pattern(&a, &b, 2, 0b1010).unwrap();
        let s0 = t.sub_tuple(0).unwrap();
        let s1 = t.sub_tuple(1).unwrap();
        assert_eq!(MeasureTuple::pair(&s0, &s1).unwrap(), t);
        // identity permutation is a no-op
        assert_eq!(t.permute(&[0, 1]).unwrap(), t);
        // swapping coordinates twice is a no-op
        let swapped = t.permute(&[1, 0]).unwrap();
        assert_eq!(swapped.permute(&[1, 0]).unwrap(), t);
        assert_ne!(swapped, t);
    }

    #[test]
    fn csv_export_carries_header_and_rows() {
        let t = MeasureTuple::all_equal(&gen_cosine(), 1).unwrap();
        let s = delta_slice(&t, 0).unwrap();
        let csv = s.to_csv();
        assert!(csv.starts_with("# delta-slice k=1 xi=0\n"));
        assert!(csv.contains("# box axis 1: [-1, 1]"));
        assert!(csv.contains("eta_1,re,im"));
        assert!(csv.contains("0,1,0"));
    }
}
