//! Internal FFT plumbing: cached plans, in-place transforms along one axis of
//! a dense row-major array, and padded-size selection.

use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::Arc;

use crate::C64;

pub(crate) struct FftCache {
    planner: FftPlanner<f64>,
    forward: HashMap<usize, Arc<dyn Fft<f64>>>,
    inverse: HashMap<usize, Arc<dyn Fft<f64>>>,
}

impl FftCache {
    pub fn new() -> Self {
        FftCache { planner: FftPlanner::new(), forward: HashMap::new(), inverse: HashMap::new() }
    }

    fn plan(&mut self, len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
        let map = if inverse { &mut self.inverse } else { &mut self.forward };
        if let Some(p) = map.get(&len) {
            return p.clone();
        }
        let p = if inverse {
            self.planner.plan_fft_inverse(len)
        } else {
            self.planner.plan_fft_forward(len)
        };
        map.insert(len, p.clone());
        p
    }

    /// Unnormalized transform along `axis` of a row-major array with the
    /// given shape. The caller owns normalization.
    pub fn transform_axis(&mut self, data: &mut [C64], shape: &[usize], axis: usize, inverse: bool) {
        let n = shape[axis];
        if n <= 1 {
            return;
        }
        let plan = self.plan(n, inverse);
        let total: usize = shape.iter().product();
        debug_assert_eq!(total, data.len());
        let inner: usize = shape[axis + 1..].iter().product();
        let outer: usize = shape[..axis].iter().product();
        if inner == 1 {
            // Contiguous lanes along the last axis.
            for o in 0..outer {
                plan.process(&mut data[o * n..(o + 1) * n]);
            }
        } else {
            let mut lane = vec![C64::new(0.0, 0.0); n];
            for o in 0..outer {
                let base_o = o * n * inner;
                for i in 0..inner {
                    let base = base_o + i;
                    for (j, slot) in lane.iter_mut().enumerate() {
                        *slot = data[base + j * inner];
                    }
                    plan.process(&mut lane);
                    for (j, slot) in lane.iter().enumerate() {
                        data[base + j * inner] = *slot;
                    }
                }
            }
        }
    }

    /// Full n-dimensional unnormalized transform.
    pub fn transform_nd(&mut self, data: &mut [C64], shape: &[usize], inverse: bool) {
        for axis in 0..shape.len() {
            self.transform_axis(data, shape, axis, inverse);
        }
    }
}

/// Smallest 5-smooth integer >= n; keeps rustfft on its mixed-radix fast
/// paths instead of Bluestein.
pub(crate) fn good_fft_size(n: usize) -> usize {
    fn smooth(mut m: usize) -> bool {
        for p in [2, 3, 5] {
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        m == 1
    }
    let mut m = n.max(1);
    while !smooth(m) {
        m += 1;
    }
    m
}
