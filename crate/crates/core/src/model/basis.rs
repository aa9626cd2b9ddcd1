use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Coefficients `c_j` of `sum_j c_j sin(j pi z / L)`, `j = 1..=J`.
///
/// The basis is left unnormalized: `||sin(j pi z/L)||^2 = L/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalVector<T> {
    coeffs: Vec<T>,
}

impl<T: Real> ModalVector<T> {
    pub fn zeros(modes: usize) -> Self {
        Self {
            coeffs: vec![T::zero(); modes],
        }
    }

    /// Unit vector of mode `j` (1-based).
    pub fn unit(modes: usize, j: usize) -> Self {
        assert!((1..=modes).contains(&j), "mode index {j} outside 1..={modes}");
        let mut m = Self::zeros(modes);
        m.coeffs[j - 1] = T::one();
        m
    }

    pub fn from_vec(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Invalid("modal coefficients must be finite".into()));
        }
        Ok(Self { coeffs })
    }

    /// Builds coefficients from a function of the 1-based mode index.
    pub fn from_fn(modes: usize, f: impl FnMut(usize) -> T) -> Self {
        Self {
            coeffs: (1..=modes).map(f).collect(),
        }
    }

    #[inline]
    pub fn modes(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn as_slice(&self) -> &[T] {
        &self.coeffs
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.coeffs
    }

    pub fn into_vec(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of mode `j` (1-based).
    #[inline]
    pub fn mode(&self, j: usize) -> T {
        self.coeffs[j - 1]
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    pub fn max_abs(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.abs()))
    }

    /// Euclidean norm of the coefficient array.
    pub fn coeff_norm(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |s, &c| s + c * c).sqrt()
    }

    /// `L^2(0, L)` norm of the represented function.
    pub fn l2_norm(&self, length: T) -> T {
        (length / T::lit(2.0)).sqrt() * self.coeff_norm()
    }

    /// Per-mode product with a diagonal (e.g. an operator spectrum).
    pub fn scale_by(&self, diag: &[T]) -> Result<Self> {
        if diag.len() != self.modes() {
            return Err(Error::DimensionMismatch {
                expected: self.modes(),
                got: diag.len(),
            });
        }
        Ok(Self {
            coeffs: self.coeffs.iter().zip(diag).map(|(&c, &d)| c * d).collect(),
        })
    }

    /// Value of the represented function at `z`.
    pub fn eval(&self, z: T, length: T) -> T {
        let x = T::PI() * z / length;
        self.coeffs
            .iter()
            .enumerate()
            .fold(T::zero(), |s, (k, &c)| s + c * (T::from_usize_lossy(k + 1) * x).sin())
    }
}

impl<T> Index<usize> for ModalVector<T> {
    type Output = T;
    fn index(&self, k: usize) -> &T {
        &self.coeffs[k]
    }
}

impl<T> IndexMut<usize> for ModalVector<T> {
    fn index_mut(&mut self, k: usize) -> &mut T {
        &mut self.coeffs[k]
    }
}

impl<T: Real> Add for &ModalVector<T> {
    type Output = ModalVector<T>;
    fn add(self, rhs: Self) -> ModalVector<T> {
        assert_eq!(self.modes(), rhs.modes());
        ModalVector {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &ModalVector<T> {
    type Output = ModalVector<T>;
    fn sub(self, rhs: Self) -> ModalVector<T> {
        assert_eq!(self.modes(), rhs.modes());
        ModalVector {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl<T: Real> Mul<T> for &ModalVector<T> {
    type Output = ModalVector<T>;
    fn mul(self, s: T) -> ModalVector<T> {
        ModalVector {
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }
}

/// `n` equispaced points on `[0, length]`, endpoints included.
pub fn uniform_grid<T: Real>(length: T, n: usize) -> Vec<T> {
    assert!(n >= 2, "grid needs at least two points");
    let h = length / T::from_usize_lossy(n - 1);
    (0..n)
        .map(|i| if i == n - 1 { length } else { h * T::from_usize_lossy(i) })
        .collect()
}

/// Discrete sine transform pair on a uniform grid with `N` intervals.
///
/// Sample `i` of mode `j` is `sin(j pi i / N)`; modes `1..N` are mutually
/// orthogonal on the interior nodes with squared norm `N / 2`.
#[derive(Debug, Clone)]
pub struct SineBasis<T> {
    intervals: usize,
    modes: usize,
    /// `table[(j - 1) * (N + 1) + i] = sin(j pi i / N)`
    table: Vec<T>,
}

impl<T: Real> SineBasis<T> {
    pub fn new(points: usize, modes: usize) -> Result<Self> {
        if points < 3 || modes + 1 > points - 1 {
            return Err(Error::InsufficientResolution {
                modes,
                points,
                max: points.saturating_sub(2),
            });
        }
        let intervals = points - 1;
        let n = T::from_usize_lossy(intervals);
        let mut table = Vec::with_capacity(modes * points);
        for j in 1..=modes {
            for i in 0..points {
                // exact zeros at the endpoints keep the transform pair clean
                let v = if i == 0 || i == intervals {
                    T::zero()
                } else {
                    (T::from_usize_lossy(j * i) * T::PI() / n).sin()
                };
                table.push(v);
            }
        }
        Ok(Self {
            intervals,
            modes,
            table,
        })
    }

    pub fn points(&self) -> usize {
        self.intervals + 1
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    #[inline]
    fn row(&self, j: usize) -> &[T] {
        let p = self.points();
        &self.table[(j - 1) * p..j * p]
    }

    /// Grid samples to modal coefficients; endpoint samples are ignored.
    pub fn analyze(&self, values: &[T]) -> Result<ModalVector<T>> {
        if values.len() != self.points() {
            return Err(Error::DimensionMismatch {
                expected: self.points(),
                got: values.len(),
            });
        }
        let scale = T::lit(2.0) / T::from_usize_lossy(self.intervals);
        Ok(ModalVector::from_fn(self.modes, |j| {
            let s = self
                .row(j)
                .iter()
                .zip(values)
                .fold(T::zero(), |s, (&b, &v)| s + b * v);
            s * scale
        }))
    }

    /// Modal coefficients to grid samples.
    pub fn synthesize(&self, m: &ModalVector<T>) -> Result<Vec<T>> {
        if m.modes() != self.modes {
            return Err(Error::DimensionMismatch {
                expected: self.modes,
                got: m.modes(),
            });
        }
        let mut out = vec![T::zero(); self.points()];
        for (k, &c) in m.as_slice().iter().enumerate() {
            if c == T::zero() {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(k + 1)) {
                *o = *o + c * b;
            }
        }
        Ok(out)
    }
}

/// First `modes` discrete sine coefficients of samples on a uniform grid
/// that includes both endpoints.
pub fn trace_to_modal<T: Real>(values: &[T], modes: usize) -> Result<ModalVector<T>> {
    SineBasis::new(values.len(), modes)?.analyze(values)
}

/// Pointwise evaluation of the sine series on an arbitrary grid.
pub fn modal_to_trace<T: Real>(m: &ModalVector<T>, z_grid: &[T], length: T) -> Vec<T> {
    z_grid.iter().map(|&z| m.eval(z, length)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    const L: f64 = 6.0;

    #[test]
    fn first_mode_samples() {
        let z = uniform_grid(L, 65);
        let v: Vec<f64> = z.iter().map(|&z| (PI * z / L).sin()).collect();
        let m = trace_to_modal(&v, 16).unwrap();
        assert!((m.mode(1) - 1.0).abs() < 1e-10);
        for j in 2..=16 {
            assert!(m.mode(j).abs() < 1e-10, "mode {j}: {}", m.mode(j));
        }
    }

    #[test]
    fn zeros_map_to_zeros() {
        let m = trace_to_modal(&[0.0f64; 33], 8).unwrap();
        assert_eq!(m, ModalVector::zeros(8));
        let t = modal_to_trace(&ModalVector::<f64>::zeros(8), &uniform_grid(L, 33), L);
        assert!(t.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn midpoint_of_first_mode() {
        let m = ModalVector::<f64>::unit(4, 1);
        let t = modal_to_trace(&m, &[L / 2.0], L);
        assert!((t[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn insufficient_resolution() {
        let err = trace_to_modal(&[0.0f64; 9], 8).unwrap_err();
        assert!(err.to_string().contains("insufficient grid resolution"));
        assert!(trace_to_modal(&[0.0f64; 9], 7).is_ok());
    }

    /// Continuous coefficient `(2/L) int_0^L (1 - z/L) sin(j pi z/L) dz` by
    /// composite Simpson on a fine grid, independent of the closed form.
    fn linear_coeff_quadrature(j: usize) -> f64 {
        let n = 20_000;
        let h = L / n as f64;
        let f = |z: f64| (1.0 - z / L) * (j as f64 * PI * z / L).sin();
        let mut s = f(0.0) + f(L);
        for i in 1..n {
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
        }
        2.0 / L * s * h / 3.0
    }

    #[test]
    fn linear_lift_coefficients() {
        // discrete aliasing error is O((j/N)^2): shrinks ~4x per grid doubling
        let mut prev = [0.0; 4];
        for (pass, &pts) in [65usize, 129, 257].iter().enumerate() {
            let z = uniform_grid(L, pts);
            let v: Vec<f64> = z.iter().map(|&z| 1.0 - z / L).collect();
            let m = trace_to_modal(&v, 4).unwrap();
            for j in 1..=4 {
                let exact = linear_coeff_quadrature(j);
                assert!((exact - 2.0 / (j as f64 * PI)).abs() < 1e-12);
                let err = (m.mode(j) - exact).abs();
                assert!(err < 5e-3 * exact.abs(), "j={j} pts={pts} err={err}");
                if pass > 0 {
                    let ratio = prev[j - 1] / err;
                    assert!(ratio > 3.5 && ratio < 4.5, "ratio {ratio}");
                }
                prev[j - 1] = err;
            }
        }
    }

    fn arb_modal(modes: usize) -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(-10.0f64..10.0, modes)
    }

    proptest! {
        #[test]
        fn round_trip(c in arb_modal(12)) {
            let m = ModalVector::from_vec(c).unwrap();
            let z = uniform_grid(L, 33);
            let back = trace_to_modal(&modal_to_trace(&m, &z, L), 12).unwrap();
            for (a, b) in back.as_slice().iter().zip(m.as_slice()) {
                prop_assert!((a - b).abs() < 1e-11);
            }
        }

        #[test]
        fn parseval(c in arb_modal(10)) {
            let m = ModalVector::from_vec(c).unwrap();
            let z = uniform_grid(L, 41);
            let h = L / 40.0;
            let t = modal_to_trace(&m, &z, L);
            let discrete: f64 = t.iter().map(|v| v * v).sum::<f64>() * h;
            let modal = L / 2.0 * m.as_slice().iter().map(|c| c * c).sum::<f64>();
            prop_assert!((discrete - modal).abs() <= 1e-8 * modal.max(1e-300));
        }

        #[test]
        fn analysis_is_linear(u in proptest::collection::vec(-5.0f64..5.0, 33),
                              v in proptest::collection::vec(-5.0f64..5.0, 33),
                              a in -3.0f64..3.0) {
            let basis = SineBasis::new(33, 16).unwrap();
            let w: Vec<f64> = u.iter().zip(&v).map(|(x, y)| a * x + y).collect();
            let lhs = basis.analyze(&w).unwrap();
            let rhs = &(&basis.analyze(&u).unwrap() * a) + &basis.analyze(&v).unwrap();
            for (x, y) in lhs.as_slice().iter().zip(rhs.as_slice()) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }
    }
}
