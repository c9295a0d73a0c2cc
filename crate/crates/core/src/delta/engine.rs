//! The convolution recursion.
//!
//! `Delta-hat^k` of a `2^k`-tuple is computed level by level: the order-`m`
//! slice at first argument `zeta` is assembled from order-`(m-1)` slices via
//!
//! ```text
//! D_m(zeta; eta', eta_m) = sum_c D_{m-1}(sub0)(zeta + eta_m; c)
//!                                * conj(D_{m-1}(sub1)(eta_m; c - eta'))
//! ```
//!
//! where `sub0`/`sub1` restrict the last vertex coordinate of the tuple.
//! The sum over `c` is a cross-correlation, done either by padded FFT or by
//! direct summation below a size threshold. Support boxes are certified a
//! priori (coordinate radius `2^{m-1} * bandwidth` at level `m`), so the FFT
//! embedding is exact with no spectral leakage.
//!
//! The conjugation and shift conventions here are certified against the
//! brute-force cube oracle on `Z_q`; see `tests/certification.rs`.

use std::collections::HashMap;
use std::rc::Rc;

use crate::fft::{good_fft_size, FftCache};
use crate::measure::Window;
use crate::{C64, Error, Result};

use super::grid::{AxisRange, BoxArray, Domain, Line};
use super::{CyclicMeasureTuple, DeltaSlice, MeasureTuple, TruncationMode, TruncationSpec};

/// Absolute cap on dense box sizes, enforced by [`BoxArray::zeros`].
pub(crate) const HARD_ENTRY_CAP: u128 = 300_000_000;

/// Tuning knobs for the slice engine.
#[derive(Debug, Clone, Copy)]
pub struct EngineOptions {
    /// Cross-correlations whose largest output axis is shorter than this run
    /// by direct summation instead of FFT.
    pub direct_threshold: usize,
    /// Dense-entry budget for a single output slice; requests beyond it are
    /// reported as errors rather than attempted.
    pub entry_budget: u128,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { direct_threshold: 64, entry_budget: 200_000_000 }
    }
}

impl EngineOptions {
    /// Forces every correlation through the direct-summation kernel.
    pub fn all_direct() -> Self {
        EngineOptions { direct_threshold: usize::MAX, ..Default::default() }
    }

    /// Forces every correlation through the FFT kernel.
    pub fn all_fft() -> Self {
        EngineOptions { direct_threshold: 0, ..Default::default() }
    }
}

struct ResolvedTrunc {
    j: usize,
    mode: TruncationMode,
    window: Window,
}

struct Ctx<'a> {
    lines: &'a [Line],
    domain: Domain,
    k: u32,
    max_bw: i64,
    all_equal: bool,
    opts: EngineOptions,
    fft: FftCache,
    trunc: Option<ResolvedTrunc>,
}

fn level_axes(ctx: &Ctx<'_>, m: u32) -> Result<Vec<AxisRange>> {
    match ctx.domain {
        Domain::Lattice => {
            let radius = ctx
                .max_bw
                .checked_shl(m - 1)
                .ok_or_else(|| Error::InvalidParameter("support box radius overflows".into()))?;
            Ok(vec![AxisRange::symmetric(radius); m as usize])
        }
        Domain::Cyclic { q } => Ok(vec![AxisRange::cyclic(q); m as usize]),
    }
}

fn box_entries(axes: &[AxisRange]) -> u128 {
    axes.iter().fold(1u128, |acc, a| acc.saturating_mul(a.len as u128))
}

/// Output axes of `h[t] = sum_c f[c] conj(g[c - t])`.
fn xcorr_axes(f: &BoxArray, g: &BoxArray, domain: Domain) -> Vec<AxisRange> {
    match domain {
        Domain::Lattice => f
            .axes
            .iter()
            .zip(&g.axes)
            .map(|(a, b)| {
                let lo = a.lo - b.hi();
                let hi = a.hi() - b.lo;
                AxisRange { lo, len: (hi - lo + 1) as usize }
            })
            .collect(),
        Domain::Cyclic { q } => vec![AxisRange::cyclic(q); f.axes.len()],
    }
}

/// Direct-summation cross-correlation (both domains).
fn xcorr_direct(f: &BoxArray, g: &BoxArray, domain: Domain) -> BoxArray {
    let axes = xcorr_axes(f, g, domain);
    let data = vec![C64::new(0.0, 0.0); box_entries(&axes) as usize];
    let mut out = BoxArray { axes, data };
    let nd = f.ndim();
    let mut t = vec![0i64; nd];
    let mut c = vec![0i64; nd];
    let mut shifted = vec![0i64; nd];
    let total = out.data.len();
    for idx in 0..total {
        // Decode t from the flat index.
        let mut rem = idx;
        for d in (0..nd).rev() {
            t[d] = out.axes[d].lo + (rem % out.axes[d].len) as i64;
            rem /= out.axes[d].len;
        }
        // Per-axis c range: the intersection of supp f and t + supp g
        // (lattice); the whole group when cyclic.
        let mut lo = vec![0i64; nd];
        let mut hi = vec![0i64; nd];
        let mut empty = false;
        for d in 0..nd {
            match domain {
                Domain::Lattice => {
                    lo[d] = f.axes[d].lo.max(g.axes[d].lo + t[d]);
                    hi[d] = f.axes[d].hi().min(g.axes[d].hi() + t[d]);
                    if lo[d] > hi[d] {
                        empty = true;
                    }
                }
                Domain::Cyclic { q } => {
                    lo[d] = 0;
                    hi[d] = q as i64 - 1;
                }
            }
        }
        if empty {
            continue;
        }
        let mut acc = C64::new(0.0, 0.0);
        c.copy_from_slice(&lo);
        'sum: loop {
            for d in 0..nd {
                shifted[d] = domain.wrap(c[d] - t[d]);
            }
            acc += f.get(&c) * g.get(&shifted).conj();
            // Odometer over the c box.
            let mut d = nd;
            loop {
                if d == 0 {
                    break 'sum;
                }
                d -= 1;
                c[d] += 1;
                if c[d] <= hi[d] {
                    break;
                }
                c[d] = lo[d];
            }
        }
        out.data[idx] = acc;
    }
    out
}

/// FFT cross-correlation with exact zero-padded embedding.
fn xcorr_fft(fft: &mut FftCache, f: &BoxArray, g: &BoxArray, domain: Domain) -> BoxArray {
    let nd = f.ndim();
    let axes = xcorr_axes(f, g, domain);
    let pad: Vec<usize> = match domain {
        Domain::Lattice => (0..nd)
            .map(|d| good_fft_size(f.axes[d].len + g.axes[d].len - 1))
            .collect(),
        Domain::Cyclic { q } => vec![q; nd],
    };
    let total: usize = pad.iter().product();
    let same = std::ptr::eq(f, g);

    let embed = |src: &BoxArray| -> Vec<C64> {
        let mut dst = vec![C64::new(0.0, 0.0); total];
        let mut coords = vec![0usize; nd];
        for (i, v) in src.data.iter().enumerate() {
            let mut rem = i;
            for d in (0..nd).rev() {
                coords[d] = rem % src.axes[d].len;
                rem /= src.axes[d].len;
            }
            let mut p = 0usize;
            for d in 0..nd {
                p = p * pad[d] + coords[d];
            }
            dst[p] = *v;
        }
        dst
    };

    let mut fa = embed(f);
    fft.transform_nd(&mut fa, &pad, false);
    if same {
        for v in fa.iter_mut() {
            *v = C64::new(v.norm_sqr(), 0.0);
        }
    } else {
        let mut ga = embed(g);
        fft.transform_nd(&mut ga, &pad, false);
        for (a, b) in fa.iter_mut().zip(&ga) {
            *a *= b.conj();
        }
    }
    fft.transform_nd(&mut fa, &pad, true);
    let scale = 1.0 / total as f64;

    let data = vec![C64::new(0.0, 0.0); box_entries(&axes) as usize];
    let mut out = BoxArray { axes, data };
    let mut t = vec![0i64; nd];
    for idx in 0..out.data.len() {
        let mut rem = idx;
        for d in (0..nd).rev() {
            t[d] = out.axes[d].lo + (rem % out.axes[d].len) as i64;
            rem /= out.axes[d].len;
        }
        // Circular index: s = t - (f.lo - g.lo) per axis, taken mod pad.
        let mut p = 0usize;
        for d in 0..nd {
            let s = t[d] - (f.axes[d].lo - g.axes[d].lo);
            p = p * pad[d] + s.rem_euclid(pad[d] as i64) as usize;
        }
        out.data[idx] = fa[p] * scale;
    }
    out
}

fn xcorr(ctx: &mut Ctx<'_>, f: &BoxArray, g: &BoxArray) -> BoxArray {
    let widest = xcorr_axes(f, g, ctx.domain)
        .iter()
        .map(|a| a.len)
        .max()
        .unwrap_or(0);
    if widest >= ctx.opts.direct_threshold {
        xcorr_fft(&mut ctx.fft, f, g, ctx.domain)
    } else {
        xcorr_direct(f, g, ctx.domain)
    }
}

/// Recursive slice assembly; `trunc` weights are applied only at the top
/// level (`m == ctx.k`), matching the definition of the truncated objects.
fn slice_rec(ctx: &mut Ctx<'_>, m: u32, zeta: i64, base: usize) -> Result<BoxArray> {
    let axes = level_axes(ctx, m)?;
    let is_top = m == ctx.k;
    let trunc_j = if is_top { ctx.trunc.as_ref().map(|t| t.j) } else { None };

    if m == 1 {
        let l0 = &ctx.lines[base];
        let l1 = &ctx.lines[base + 1];
        let mut out = BoxArray::zeros(axes)?;
        let axis = out.axes[0];
        for (p, eta) in axis.iter().enumerate() {
            let mut v = l0.get(ctx.domain.wrap(zeta + eta)) * l1.get(eta).conj();
            if trunc_j == Some(1) {
                let tr = ctx.trunc.as_ref().unwrap();
                let mut w = tr.window.complement_1d(ctx.domain.centered(zeta + eta));
                if tr.mode == TruncationMode::SjBoth {
                    w *= tr.window.complement_1d(ctx.domain.centered(eta));
                }
                v *= w;
            }
            out.data[p] = v;
        }
        return Ok(out);
    }

    let mut out = BoxArray::zeros(axes)?;
    let eta_axis = out.axes[m as usize - 1];
    let len_m = eta_axis.len;
    let sub_base0 = base;
    let sub_base1 = base + (1usize << (m - 1));

    for (pos, eta_m) in eta_axis.iter().enumerate() {
        let z0 = ctx.domain.wrap(zeta + eta_m);
        let z1 = ctx.domain.wrap(eta_m);
        let mut s0 = slice_rec(ctx, m - 1, z0, sub_base0)?;

        // With an SJ_HIGH inner truncation only the first factor is
        // weighted, so sharing the sub-slice is off the table there.
        let weighted_asym = matches!(
            (trunc_j, ctx.trunc.as_ref().map(|t| t.mode)),
            (Some(j), Some(TruncationMode::SjHigh)) if j < m as usize
        );
        let share = ctx.all_equal && z0 == z1 && !weighted_asym;
        let mut s1 = if share { None } else { Some(slice_rec(ctx, m - 1, z1, sub_base1)?) };

        if let Some(j) = trunc_j {
            if j < m as usize {
                let tr = ctx.trunc.as_ref().unwrap();
                let window = tr.window;
                let domain = ctx.domain;
                s0.scale_axis(j - 1, |c| window.complement_1d(domain.centered(c)));
                if tr.mode == TruncationMode::SjBoth {
                    if let Some(other) = s1.as_mut() {
                        other.scale_axis(j - 1, |c| window.complement_1d(domain.centered(c)));
                    }
                    // Shared sub-slice: s0 already carries the weight, and
                    // SJ_BOTH weights both factors identically.
                }
            }
        }

        let plane = match &s1 {
            Some(g) => xcorr(ctx, &s0, g),
            None => xcorr(ctx, &s0, &s0),
        };

        let mut factor = 1.0;
        if let Some(j) = trunc_j {
            if j == m as usize {
                let tr = ctx.trunc.as_ref().unwrap();
                factor = tr.window.complement_1d(ctx.domain.centered(zeta + eta_m));
                if tr.mode == TruncationMode::SjBoth {
                    factor *= tr.window.complement_1d(ctx.domain.centered(eta_m));
                }
            }
        }

        // Strided write: plane index p maps to out index p * len_m + pos.
        if factor == 1.0 {
            for (p, v) in plane.data.iter().enumerate() {
                out.data[p * len_m + pos] = *v;
            }
        } else if factor != 0.0 {
            for (p, v) in plane.data.iter().enumerate() {
                out.data[p * len_m + pos] = v * factor;
            }
        }
    }
    Ok(out)
}

fn tuple_all_equal(lines: &[Line]) -> bool {
    lines.windows(2).all(|w| w[0] == w[1])
}

fn run_slice(
    lines: &[Line],
    domain: Domain,
    k: u32,
    xi: i64,
    trunc: Option<ResolvedTrunc>,
    opts: EngineOptions,
) -> Result<DeltaSlice> {
    if k == 0 || k > 4 {
        return Err(Error::InvalidParameter(format!(
            "slice order k={k} outside the supported range 1..=4"
        )));
    }
    let max_bw = match domain {
        Domain::Lattice => lines.iter().map(|l| l.axis.hi()).max().unwrap_or(0),
        Domain::Cyclic { .. } => 0,
    };
    let mut ctx = Ctx {
        lines,
        domain,
        k,
        max_bw,
        all_equal: tuple_all_equal(lines),
        opts,
        fft: FftCache::new(),
        trunc,
    };
    let axes = level_axes(&ctx, k)?;
    let entries = box_entries(&axes);
    if entries > ctx.opts.entry_budget {
        return Err(Error::BoxTooLarge { entries, limit: ctx.opts.entry_budget });
    }
    // First-argument support: an order-k slice vanishes identically for
    // |xi| beyond 2^k * bandwidth. Returning zeros early also keeps the
    // recursion's index arithmetic away from integer overflow.
    let reach = max_bw.unsigned_abs().checked_shl(k).unwrap_or(u64::MAX);
    let out_of_reach = matches!(domain, Domain::Lattice) && xi.unsigned_abs() > reach;
    let array = if lines.iter().any(Line::is_zero) || out_of_reach {
        BoxArray::zeros(axes)?
    } else {
        slice_rec(&mut ctx, k, domain.wrap(xi), 0)?
    };
    Ok(DeltaSlice { k, xi: domain.wrap(xi), domain, array })
}

fn resolve_trunc(spec: &TruncationSpec, k: u32) -> Result<ResolvedTrunc> {
    if spec.j < 1 || spec.j > k as usize {
        return Err(Error::InvalidParameter(format!(
            "truncation coordinate j={} outside [1, {k}]",
            spec.j
        )));
    }
    Ok(ResolvedTrunc { j: spec.j, mode: spec.mode, window: spec.window })
}

/// Full slice `Delta-hat^k(t)(xi; .)` over the certified support box.
pub fn delta_slice(t: &MeasureTuple, xi: i64) -> Result<DeltaSlice> {
    delta_slice_with(t, xi, EngineOptions::default())
}

pub fn delta_slice_with(t: &MeasureTuple, xi: i64, opts: EngineOptions) -> Result<DeltaSlice> {
    let lines = t.lines()?;
    run_slice(&lines, Domain::Lattice, t.k(), xi, None, opts)
}

/// Frequency-truncated slice per the four displayed weighting formulas.
pub fn delta_slice_truncated(
    t: &MeasureTuple,
    xi: i64,
    spec: &TruncationSpec,
) -> Result<DeltaSlice> {
    delta_slice_truncated_with(t, xi, spec, EngineOptions::default())
}

pub fn delta_slice_truncated_with(
    t: &MeasureTuple,
    xi: i64,
    spec: &TruncationSpec,
    opts: EngineOptions,
) -> Result<DeltaSlice> {
    let lines = t.lines()?;
    let trunc = resolve_trunc(spec, t.k())?;
    run_slice(&lines, Domain::Lattice, t.k(), xi, Some(trunc), opts)
}

/// Slice over the cyclic group `Z_q` (the oracle cross-check domain).
pub fn delta_slice_cyclic(t: &CyclicMeasureTuple, xi: i64) -> Result<DeltaSlice> {
    let lines = t.lines()?;
    run_slice(&lines, Domain::Cyclic { q: t.q() }, t.k(), xi, None, EngineOptions::default())
}

pub fn delta_slice_truncated_cyclic(
    t: &CyclicMeasureTuple,
    xi: i64,
    spec: &TruncationSpec,
) -> Result<DeltaSlice> {
    let lines = t.lines()?;
    let trunc = resolve_trunc(spec, t.k())?;
    run_slice(&lines, Domain::Cyclic { q: t.q() }, t.k(), xi, Some(trunc), EngineOptions::default())
}

/// Single-point evaluation of `Delta-hat^k` by direct-summation recursion.
///
/// This is the engine's second, FFT-free numerical route: sub-slices are
/// built by plain nested sums and memoized per `(level, first-argument)`.
/// Points outside the certified support box are exactly zero.
pub struct PointEvaluator {
    lines: Vec<Line>,
    domain: Domain,
    k: u32,
    max_bw: i64,
    cache: HashMap<(u32, i64, usize), Rc<BoxArray>>,
}

impl PointEvaluator {
    pub fn new(t: &MeasureTuple) -> Result<Self> {
        if t.k() > 4 {
            return Err(Error::InvalidParameter("k > 4 beyond the desk-scale ceiling".into()));
        }
        let lines = t.lines()?;
        let max_bw = lines.iter().map(|l| l.axis.hi()).max().unwrap_or(0);
        Ok(PointEvaluator { lines, domain: Domain::Lattice, k: t.k(), max_bw, cache: HashMap::new() })
    }

    pub fn new_cyclic(t: &CyclicMeasureTuple) -> Result<Self> {
        let lines = t.lines()?;
        Ok(PointEvaluator {
            lines,
            domain: Domain::Cyclic { q: t.q() },
            k: t.k(),
            max_bw: 0,
            cache: HashMap::new(),
        })
    }

    fn certified_radius(&self, m: u32) -> i64 {
        self.max_bw << (m - 1)
    }

    fn direct_slice(&mut self, m: u32, zeta: i64, base: usize) -> Result<Rc<BoxArray>> {
        let key = (m, zeta, base);
        if let Some(hit) = self.cache.get(&key) {
            return Ok(hit.clone());
        }
        let axes = match self.domain {
            Domain::Lattice => vec![AxisRange::symmetric(self.certified_radius(m)); m as usize],
            Domain::Cyclic { q } => vec![AxisRange::cyclic(q); m as usize],
        };
        let out = if m == 1 {
            let mut out = BoxArray::zeros(axes)?;
            let axis = out.axes[0];
            for (p, eta) in axis.iter().enumerate() {
                out.data[p] = self.lines[base].get(self.domain.wrap(zeta + eta))
                    * self.lines[base + 1].get(eta).conj();
            }
            out
        } else {
            let mut out = BoxArray::zeros(axes)?;
            let eta_axis = out.axes[m as usize - 1];
            let len_m = eta_axis.len;
            for (pos, eta_m) in eta_axis.iter().enumerate() {
                let s0 = self.direct_slice(m - 1, self.domain.wrap(zeta + eta_m), base)?;
                let s1 =
                    self.direct_slice(m - 1, self.domain.wrap(eta_m), base + (1 << (m - 1)))?;
                let plane = xcorr_direct(&s0, &s1, self.domain);
                for (p, v) in plane.data.iter().enumerate() {
                    out.data[p * len_m + pos] = *v;
                }
            }
            out
        };
        let rc = Rc::new(out);
        self.cache.insert(key, rc.clone());
        Ok(rc)
    }

    pub fn eval(&mut self, xi: i64, eta: &[i64]) -> Result<C64> {
        let k = self.k;
        if eta.len() != k as usize {
            return Err(Error::InvalidParameter(format!(
                "eta needs {k} coordinates, got {}",
                eta.len()
            )));
        }
        if matches!(self.domain, Domain::Lattice) {
            let radius = self
                .max_bw
                .unsigned_abs()
                .checked_shl(k - 1)
                .unwrap_or(u64::MAX);
            if eta.iter().any(|&e| e.unsigned_abs() > radius) {
                return Ok(C64::new(0.0, 0.0));
            }
            let reach = self.max_bw.unsigned_abs().checked_shl(k).unwrap_or(u64::MAX);
            if xi.unsigned_abs() > reach {
                return Ok(C64::new(0.0, 0.0));
            }
        }
        if self.lines.iter().any(Line::is_zero) {
            return Ok(C64::new(0.0, 0.0));
        }
        if k == 1 {
            return Ok(self.lines[0].get(self.domain.wrap(xi + eta[0]))
                * self.lines[1].get(eta[0]).conj());
        }
        let eta_k = eta[k as usize - 1];
        let s0 = self.direct_slice(k - 1, self.domain.wrap(xi + eta_k), 0)?;
        let s1 = self.direct_slice(k - 1, self.domain.wrap(eta_k), 1 << (k - 1))?;
        // sum_c s0[c] * conj(s1[c - eta']) over the per-axis intersection.
        let nd = k as usize - 1;
        let mut lo = vec![0i64; nd];
        let mut hi = vec![0i64; nd];
        for d in 0..nd {
            match self.domain {
                Domain::Lattice => {
                    lo[d] = s0.axes[d].lo.max(s1.axes[d].lo + eta[d]);
                    hi[d] = s0.axes[d].hi().min(s1.axes[d].hi() + eta[d]);
                    if lo[d] > hi[d] {
                        return Ok(C64::new(0.0, 0.0));
                    }
                }
                Domain::Cyclic { q } => {
                    lo[d] = 0;
                    hi[d] = q as i64 - 1;
                }
            }
        }
        let mut acc = C64::new(0.0, 0.0);
        let mut c = lo.clone();
        let mut shifted = vec![0i64; nd];
        'sum: loop {
            for d in 0..nd {
                shifted[d] = self.domain.wrap(c[d] - eta[d]);
            }
            acc += s0.get(&c) * s1.get(&shifted).conj();
            let mut d = nd;
            loop {
                if d == 0 {
                    break 'sum;
                }
                d -= 1;
                c[d] += 1;
                if c[d] <= hi[d] {
                    break;
                }
                c[d] = lo[d];
            }
        }
        Ok(acc)
    }
}

/// One-shot [`PointEvaluator::eval`].
pub fn delta_point(t: &MeasureTuple, xi: i64, eta: &[i64]) -> Result<C64> {
    PointEvaluator::new(t)?.eval(xi, eta)
}

/// One-shot cyclic point evaluation.
pub fn delta_point_cyclic(t: &CyclicMeasureTuple, xi: i64, eta: &[i64]) -> Result<C64> {
    PointEvaluator::new_cyclic(t)?.eval(xi, eta)
}
