//! Dense boxes over integer frequency lattices and cyclic groups: the
//! containers the convolution recursion reads and writes.

use crate::measure::FourierMeasure;
use crate::{C64, Error, Result};

/// Frequency domain the engine runs over: the integer lattice `Z` (with
/// finite support boxes) or the cyclic group `Z_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Lattice,
    Cyclic { q: usize },
}

impl Domain {
    /// First-argument arithmetic: plain addition on the lattice, wrapped on
    /// the cyclic group.
    pub fn wrap(&self, x: i64) -> i64 {
        match self {
            Domain::Lattice => x,
            Domain::Cyclic { q } => x.rem_euclid(*q as i64),
        }
    }

    /// Representative used by window weights: the lattice value itself, or
    /// the centered representative in `(-q/2, q/2]` for cyclic frequencies.
    pub fn centered(&self, x: i64) -> i64 {
        match self {
            Domain::Lattice => x,
            Domain::Cyclic { q } => {
                let q = *q as i64;
                let r = x.rem_euclid(q);
                if 2 * r > q {
                    r - q
                } else {
                    r
                }
            }
        }
    }
}

/// Inclusive integer interval `[lo, lo + len - 1]` indexing one axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxisRange {
    pub lo: i64,
    pub len: usize,
}

impl AxisRange {
    pub fn symmetric(radius: i64) -> AxisRange {
        AxisRange { lo: -radius, len: (2 * radius + 1) as usize }
    }

    pub fn cyclic(q: usize) -> AxisRange {
        AxisRange { lo: 0, len: q }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.len as i64 - 1
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= self.lo && x <= self.hi()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi()
    }
}

/// Dense row-major complex array over a product of axis ranges (last axis
/// contiguous).
#[derive(Debug, Clone, PartialEq)]
pub struct BoxArray {
    pub axes: Vec<AxisRange>,
    pub data: Vec<C64>,
}

impl BoxArray {
    pub fn zeros(axes: Vec<AxisRange>) -> Result<BoxArray> {
        let mut entries: u128 = 1;
        for a in &axes {
            entries = entries.saturating_mul(a.len as u128);
        }
        if entries > crate::delta::engine::HARD_ENTRY_CAP {
            return Err(Error::BoxTooLarge {
                entries,
                limit: crate::delta::engine::HARD_ENTRY_CAP,
            });
        }
        Ok(BoxArray { axes, data: vec![C64::new(0.0, 0.0); entries as usize] })
    }

    pub fn ndim(&self) -> usize {
        self.axes.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    /// Flat index of a coordinate vector, if inside the box.
    pub fn index(&self, coords: &[i64]) -> Option<usize> {
        debug_assert_eq!(coords.len(), self.axes.len());
        let mut idx = 0usize;
        for (c, a) in coords.iter().zip(&self.axes) {
            if !a.contains(*c) {
                return None;
            }
            idx = idx * a.len + (c - a.lo) as usize;
        }
        Some(idx)
    }

    pub fn get(&self, coords: &[i64]) -> C64 {
        self.index(coords)
            .map(|i| self.data[i])
            .unwrap_or(C64::new(0.0, 0.0))
    }

    /// Visits every entry in storage order with its coordinate vector.
    pub fn for_each(&self, mut f: impl FnMut(&[i64], C64)) {
        let nd = self.axes.len();
        let mut coords: Vec<i64> = self.axes.iter().map(|a| a.lo).collect();
        for (i, v) in self.data.iter().enumerate() {
            f(&coords, *v);
            if i + 1 < self.data.len() {
                // Odometer increment, last axis fastest.
                for d in (0..nd).rev() {
                    coords[d] += 1;
                    if coords[d] <= self.axes[d].hi() {
                        break;
                    }
                    coords[d] = self.axes[d].lo;
                }
            }
        }
    }

    pub fn sum_abs2(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum()
    }

    /// Scales the array along one axis by a real per-coordinate weight.
    pub fn scale_axis(&mut self, axis: usize, weight: impl Fn(i64) -> f64) {
        let len = self.axes[axis].len;
        let lo = self.axes[axis].lo;
        let w: Vec<f64> = (0..len).map(|p| weight(lo + p as i64)).collect();
        let inner: usize = self.axes[axis + 1..].iter().map(|a| a.len).product();
        let outer: usize = self.axes[..axis].iter().map(|a| a.len).product();
        for o in 0..outer {
            for (p, &wp) in w.iter().enumerate() {
                let base = (o * len + p) * inner;
                for slot in &mut self.data[base..base + inner] {
                    *slot *= wp;
                }
            }
        }
    }
}

/// One measure spectrum as a dense line over its support (lattice) or the
/// full group (cyclic).
#[derive(Debug, Clone, PartialEq)]
pub struct Line {
    pub domain: Domain,
    pub axis: AxisRange,
    pub data: Vec<C64>,
}

impl Line {
    pub fn from_measure(mu: &FourierMeasure) -> Result<Line> {
        if mu.dim() != 1 {
            return Err(Error::UnsupportedDim { dim: mu.dim() });
        }
        let m = mu.bandwidth();
        let axis = AxisRange::symmetric(m);
        let mut data = vec![C64::new(0.0, 0.0); axis.len];
        for (c, v) in mu.coeffs() {
            data[(c[0] - axis.lo) as usize] = *v;
        }
        Ok(Line { domain: Domain::Lattice, axis, data })
    }

    pub fn from_cyclic_spectrum(q: usize, spectrum: Vec<C64>) -> Result<Line> {
        if spectrum.len() != q {
            return Err(Error::InvalidParameter(format!(
                "cyclic spectrum needs {q} entries, got {}",
                spectrum.len()
            )));
        }
        Ok(Line { domain: Domain::Cyclic { q }, axis: AxisRange::cyclic(q), data: spectrum })
    }

    /// Coefficient at a frequency; zero outside the support box, wrapped on
    /// the cyclic group.
    pub fn get(&self, c: i64) -> C64 {
        match self.domain {
            Domain::Lattice => {
                if self.axis.contains(c) {
                    self.data[(c - self.axis.lo) as usize]
                } else {
                    C64::new(0.0, 0.0)
                }
            }
            Domain::Cyclic { q } => self.data[c.rem_euclid(q as i64) as usize],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| *v == C64::new(0.0, 0.0))
    }
}
