//! Brute-force ground truth on finite cyclic groups.
//!
//! Everything here is computed from the combinatorial cube definition by
//! exact nested loops: no FFT, no recursion, nothing shared with the
//! convolution engine. The oracle exists to be obviously correct; the
//! engine's conjugation and shift conventions are certified against it
//! before any other test is trusted.
//!
//! Conventions (the engine must reproduce these exactly):
//! * cube object: `Delta^k(f)(x; u) = prod_{iota in {0,1}^k} C^{|iota|}
//!   f_iota(x - iota . u)` with coordinate `iota_j` paired with `u_j` and
//!   `C` complex conjugation applied `|iota|` times;
//! * Fourier transforms are averages over the group, so `f == 1` has
//!   spectrum `delta_0` like a probability measure on the torus.
//!
//! Budget: the tables have `q^{k+1}` entries; the documented ceiling is
//! `q <= 17`, `k <= 3`.

use crate::rng::SplitMix64;
use crate::{C64, Error, Result};

/// Hard cap on brute-force table sizes (`17^4 = 83521` fits comfortably).
pub const ORACLE_BUDGET: u128 = 200_000;

/// A complex-valued function on `Z_q`.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicFunction {
    q: usize,
    values: Vec<C64>,
}

impl CyclicFunction {
    pub fn new(q: usize, values: Vec<C64>) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameter("cyclic modulus must be >= 2".into()));
        }
        if values.len() != q {
            return Err(Error::InvalidParameter(format!(
                "cyclic function needs {q} values, got {}",
                values.len()
            )));
        }
        Ok(CyclicFunction { q, values })
    }

    pub fn constant(q: usize, value: C64) -> Result<Self> {
        Self::new(q, vec![value; q])
    }

    /// The character `x -> e^{2 pi i freq x / q}`.
    pub fn character(q: usize, freq: i64) -> Result<Self> {
        let values = (0..q)
            .map(|x| {
                let ang = 2.0 * std::f64::consts::PI * (freq * x as i64) as f64 / q as f64;
                C64::new(ang.cos(), ang.sin())
            })
            .collect();
        Self::new(q, values)
    }

    /// Seeded complex test function with entries uniform in the unit square
    /// centered at the origin.
    pub fn random(q: usize, seed: u64) -> Result<Self> {
        let mut rng = SplitMix64::new(seed);
        let values = (0..q)
            .map(|_| C64::new(rng.range_f64(-1.0, 1.0), rng.range_f64(-1.0, 1.0)))
            .collect();
        Self::new(q, values)
    }

    /// Seeded real nonnegative test function.
    pub fn random_nonneg(q: usize, seed: u64) -> Result<Self> {
        let mut rng = SplitMix64::new(seed);
        let values = (0..q).map(|_| C64::new(rng.next_f64(), 0.0)).collect();
        Self::new(q, values)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    fn at(&self, x: i64) -> C64 {
        self.values[x.rem_euclid(self.q as i64) as usize]
    }

    /// Normalized spectrum `f_hat(c) = (1/q) sum_x f(x) e^{-2 pi i c x / q}`,
    /// indexed by `c = 0..q`.
    pub fn dft(&self) -> Vec<C64> {
        let q = self.q;
        let mut out = vec![C64::new(0.0, 0.0); q];
        for (c, slot) in out.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for (x, v) in self.values.iter().enumerate() {
                let ang = -2.0 * std::f64::consts::PI * (c * x) as f64 / q as f64;
                acc += v * C64::new(ang.cos(), ang.sin());
            }
            *slot = acc / q as f64;
        }
        out
    }
}

/// Dense table over `Z_q^{k+1}`, row-major with `x` as the leading axis and
/// `u_1 .. u_k` following.
#[derive(Debug, Clone)]
pub struct CubeTable {
    pub q: usize,
    pub k: u32,
    pub values: Vec<C64>,
}

impl CubeTable {
    fn index(&self, x: i64, u: &[i64]) -> usize {
        let q = self.q as i64;
        let mut idx = x.rem_euclid(q) as usize;
        for &uj in u {
            idx = idx * self.q + uj.rem_euclid(q) as usize;
        }
        idx
    }

    pub fn at(&self, x: i64, u: &[i64]) -> C64 {
        self.values[self.index(x, u)]
    }
}

fn check_budget(q: usize, k: u32) -> Result<()> {
    let size = (q as u128).pow(k + 1);
    if size > ORACLE_BUDGET {
        return Err(Error::OracleBudget { size, limit: ORACLE_BUDGET });
    }
    Ok(())
}

/// The cube object of a `2^k`-tuple of functions, by direct evaluation of the
/// defining product at every `(x; u)`.
pub fn cube_delta_tuple(fs: &[CyclicFunction], k: u32) -> Result<CubeTable> {
    if fs.len() != 1 << k {
        return Err(Error::InvalidParameter(format!(
            "tuple of order {k} needs {} functions, got {}",
            1 << k,
            fs.len()
        )));
    }
    let q = fs[0].q;
    if fs.iter().any(|f| f.q != q) {
        return Err(Error::InvalidParameter("mixed moduli in cyclic tuple".into()));
    }
    check_budget(q, k)?;
    let total = q.pow(k + 1);
    let mut values = vec![C64::new(0.0, 0.0); total];
    let mut u = vec![0i64; k as usize];
    for (idx, slot) in values.iter_mut().enumerate() {
        // Decode (x, u_1..u_k) from the row-major index.
        let mut rem = idx;
        for j in (0..k as usize).rev() {
            u[j] = (rem % q) as i64;
            rem /= q;
        }
        let x = rem as i64;
        let mut prod = C64::new(1.0, 0.0);
        for (iota, f) in fs.iter().enumerate() {
            let mut shift = 0i64;
            for (j, uj) in u.iter().enumerate() {
                if (iota >> j) & 1 == 1 {
                    shift += uj;
                }
            }
            let v = f.at(x - shift);
            prod *= if (iota.count_ones() & 1) == 1 { v.conj() } else { v };
        }
        *slot = prod;
    }
    Ok(CubeTable { q, k, values })
}

/// `Delta^k f` for a single function (all cube vertices equal).
pub fn cube_delta(f: &CyclicFunction, k: u32) -> Result<CubeTable> {
    let fs = vec![f.clone(); 1 << k];
    cube_delta_tuple(&fs, k)
}

/// `||f||_{U^k}^{2^k}` as the plain average of the cube table; the imaginary
/// part must vanish to 1e-12 and is discarded.
pub fn cyclic_uk_norm_pow(f: &CyclicFunction, k: u32) -> Result<f64> {
    let table = cube_delta(f, k)?;
    let total = table.values.len() as f64;
    let mean: C64 = table.values.iter().sum::<C64>() / total;
    if mean.im.abs() > 1e-12 * (1.0 + mean.re.abs()) {
        return Err(Error::InvalidParameter(format!(
            "cube average has non-vanishing imaginary part {}",
            mean.im
        )));
    }
    Ok(mean.re)
}

/// `||f||_{U^k}`, the `2^k`-th root of the cube average (clamped at zero for
/// tiny negative rounding).
pub fn cyclic_uk_norm(f: &CyclicFunction, k: u32) -> Result<f64> {
    let pow = cyclic_uk_norm_pow(f, k)?;
    Ok(pow.max(0.0).powf(1.0 / (1u64 << k) as f64))
}

/// Normalized DFT of the cube object in all `k+1` variables at one point.
pub fn cyclic_delta_hat(f: &CyclicFunction, k: u32, xi: i64, eta: &[i64]) -> Result<C64> {
    let fs = vec![f.clone(); 1 << k];
    cyclic_delta_hat_tuple(&fs, k, xi, eta)
}

/// Tuple version of [`cyclic_delta_hat`].
pub fn cyclic_delta_hat_tuple(fs: &[CyclicFunction], k: u32, xi: i64, eta: &[i64]) -> Result<C64> {
    if eta.len() != k as usize {
        return Err(Error::InvalidParameter(format!(
            "eta needs {k} coordinates, got {}",
            eta.len()
        )));
    }
    let table = cube_delta_tuple(fs, k)?;
    let q = table.q;
    let qi = q as i64;
    let mut acc = C64::new(0.0, 0.0);
    let mut u = vec![0i64; k as usize];
    for (idx, v) in table.values.iter().enumerate() {
        let mut rem = idx;
        for j in (0..k as usize).rev() {
            u[j] = (rem % q) as i64;
            rem /= q;
        }
        let x = rem as i64;
        let mut phase = (xi.rem_euclid(qi) * x) as f64;
        for (j, uj) in u.iter().enumerate() {
            phase += (eta[j].rem_euclid(qi) * uj) as f64;
        }
        let ang = -2.0 * std::f64::consts::PI * phase / q as f64;
        acc += v * C64::new(ang.cos(), ang.sin());
    }
    Ok(acc / (q as f64).powi(k as i32 + 1))
}

/// Normalized DFT of the cube object at every `(xi; eta)`, computed axis by
/// axis with plain nested loops (separable DFT, still no FFT machinery).
/// Indexing matches [`CubeTable`]: leading axis `xi`, then `eta_1 .. eta_k`.
pub fn cyclic_delta_hat_tuple_full(fs: &[CyclicFunction], k: u32) -> Result<CubeTable> {
    let mut table = cube_delta_tuple(fs, k)?;
    let q = table.q;
    let axes = k as usize + 1;
    let norm = 1.0 / q as f64;
    // Precompute the q x q DFT kernel once.
    let mut kernel = vec![C64::new(0.0, 0.0); q * q];
    for a in 0..q {
        for b in 0..q {
            let ang = -2.0 * std::f64::consts::PI * (a * b) as f64 / q as f64;
            kernel[a * q + b] = C64::new(ang.cos(), ang.sin());
        }
    }
    let mut lane_in = vec![C64::new(0.0, 0.0); q];
    for axis in 0..axes {
        let inner: usize = q.pow((axes - 1 - axis) as u32);
        let outer: usize = q.pow(axis as u32);
        for o in 0..outer {
            for i in 0..inner {
                let base = o * q * inner + i;
                for (j, slot) in lane_in.iter_mut().enumerate() {
                    *slot = table.values[base + j * inner];
                }
                for a in 0..q {
                    let mut acc = C64::new(0.0, 0.0);
                    for (b, v) in lane_in.iter().enumerate() {
                        acc += v * kernel[a * q + b];
                    }
                    table.values[base + a * inner] = acc * norm;
                }
            }
        }
    }
    Ok(table)
}

/// Single-function version of [`cyclic_delta_hat_tuple_full`].
pub fn cyclic_delta_hat_full(f: &CyclicFunction, k: u32) -> Result<CubeTable> {
    let fs = vec![f.clone(); 1 << k];
    cyclic_delta_hat_tuple_full(&fs, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_one_has_unit_cube_and_norm() {
        let f = CyclicFunction::constant(7, C64::new(1.0, 0.0)).unwrap();
        for k in 1..=3 {
            let table = cube_delta(&f, k).unwrap();
            assert!(table.values.iter().all(|v| (v - C64::new(1.0, 0.0)).norm() == 0.0));
            assert!((cyclic_uk_norm(&f, k).unwrap() - 1.0).abs() < 1e-14);
            let hat = cyclic_delta_hat(&f, k, 0, &vec![0; k as usize]).unwrap();
            assert!((hat - C64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_function_has_zero_norm() {
        let f = CyclicFunction::constant(5, C64::new(0.0, 0.0)).unwrap();
        assert_eq!(cyclic_uk_norm(&f, 2).unwrap(), 0.0);
    }

    #[test]
    fn k1_cube_matches_the_definition_pointwise() {
        let f = CyclicFunction::random(11, 404).unwrap();
        let table = cube_delta(&f, 1).unwrap();
        let mut rng = SplitMix64::new(99);
        for _ in 0..20 {
            let x = rng.below(11) as i64;
            let u = rng.below(11) as i64;
            let want = f.at(x) * f.at(x - u).conj();
            assert!((table.at(x, &[u]) - want).norm() < 1e-15);
        }
    }

    #[test]
    fn characters_are_annihilated_for_k_at_least_two() {
        let f = CyclicFunction::character(9, 1).unwrap();
        for k in 2..=3u32 {
            let table = cube_delta(&f, k).unwrap();
            for v in &table.values {
                assert!((v - C64::new(1.0, 0.0)).norm() < 1e-12);
            }
        }
        // k = 1 keeps a u-dependent phase, so the annihilation really starts
        // at k = 2.
        let t1 = cube_delta(&f, 1).unwrap();
        assert!((t1.at(0, &[1]) - C64::new(1.0, 0.0)).norm() > 0.5);
    }

    #[test]
    fn u2_norm_is_the_l4_norm_of_the_spectrum() {
        let f = CyclicFunction::random(8, 2024).unwrap();
        let norm = cyclic_uk_norm_pow(&f, 2).unwrap();
        let spec = f.dft();
        let l4: f64 = spec.iter().map(|v| v.norm().powi(4)).sum();
        assert!(
            (norm - l4).abs() <= 1e-12 * (1.0 + l4.abs()),
            "U^2 power {norm} vs spectral sum {l4}"
        );
    }

    #[test]
    fn norm_power_matches_l2_sum_of_lower_order_hat() {
        // The ell^2 identity on the finite model: ||f||_{U^k}^{2^k} equals
        // the sum over eta of |Delta-hat^{k-1} f(0; eta)|^2.
        let q = 6;
        let f = CyclicFunction::random(q, 31).unwrap();
        for k in 2..=3u32 {
            let pow = cyclic_uk_norm_pow(&f, k).unwrap();
            let hat = cyclic_delta_hat_full(&f, k - 1).unwrap();
            let mut sum = 0.0;
            let per = q.pow(k - 1);
            // xi = 0 block is the leading q^{k-1} entries.
            for idx in 0..per {
                sum += hat.values[idx].norm_sqr();
            }
            assert!(
                (pow - sum).abs() <= 1e-12 * (1.0 + sum.abs()),
                "k={k}: {pow} vs {sum}"
            );
        }
    }

    #[test]
    fn full_dft_agrees_with_single_point_dft() {
        let q = 5;
        let f = CyclicFunction::random(q, 7).unwrap();
        let full = cyclic_delta_hat_full(&f, 2).unwrap();
        let mut rng = SplitMix64::new(1);
        for _ in 0..15 {
            let xi = rng.below(q as u64) as i64;
            let eta = [rng.below(q as u64) as i64, rng.below(q as u64) as i64];
            let point = cyclic_delta_hat(&f, 2, xi, &eta).unwrap();
            assert!((full.at(xi, &eta) - point).norm() < 1e-12);
        }
    }

    #[test]
    fn peak_bound_holds_for_nonnegative_functions() {
        // |Delta-hat^k f(0; eta)| <= Delta-hat^k f(0; 0) over the whole grid.
        for seed in 0..4u64 {
            let f = CyclicFunction::random_nonneg(8, seed).unwrap();
            for k in 2..=3u32 {
                let full = cyclic_delta_hat_full(&f, k).unwrap();
                let center = full.at(0, &vec![0; k as usize]);
                assert!(center.im.abs() < 1e-12);
                let per = 8usize.pow(k);
                for idx in 0..per {
                    let v = full.values[idx]; // xi = 0 block
                    assert!(v.norm() <= center.re + 1e-9);
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f = CyclicFunction::random(17, 0).unwrap();
        assert!(matches!(cube_delta(&f, 4), Err(Error::OracleBudget { .. })));
    }
}
