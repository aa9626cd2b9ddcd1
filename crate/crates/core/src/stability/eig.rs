//! Eigenvalues of 3x3 real matrices through their characteristic cubic.

use num_complex::Complex;

use crate::scalar::Real;

pub type Mat3<T> = [[T; 3]; 3];

/// Characteristic polynomial `z^3 + a z^2 + b z + c` of `m`, as `(a, b, c)`.
pub fn characteristic_cubic<T: Real>(m: &Mat3<T>) -> (T, T, T) {
    let trace = m[0][0] + m[1][1] + m[2][2];
    let minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[1][1] * m[2][2]
        - m[1][2] * m[2][1];
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    (-trace, minors, -det)
}

fn eval<T: Real>(a: T, b: T, c: T, x: T) -> T {
    ((x + a) * x + b) * x + c
}

fn eval_complex<T: Real>(a: T, b: T, c: T, z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let p = ((z + a) * z + b) * z + c;
    let dp = (z * T::lit(3.0) + a * T::lit(2.0)) * z + b;
    (p, dp)
}

/// Roots of `z^2 + p z + q`. For a complex pair the modulus is `sqrt(q)` to
/// rounding, which keeps unit-modulus pairs on the unit circle.
pub fn quadratic_roots<T: Real>(p: T, q: T) -> [Complex<T>; 2] {
    let half = T::lit(0.5);
    let disc = p * p - T::lit(4.0) * q;
    if disc >= T::zero() {
        let s = disc.sqrt();
        let t = -half * (p + if p >= T::zero() { s } else { -s });
        if t == T::zero() {
            return [Complex::new(T::zero(), T::zero()); 2];
        }
        [Complex::new(t, T::zero()), Complex::new(q / t, T::zero())]
    } else {
        let re = -half * p;
        let im = (q - re * re).max(T::zero()).sqrt();
        [Complex::new(re, im), Complex::new(re, -im)]
    }
}

/// One real root of the monic cubic by safeguarded Newton iteration on a
/// sign-changing bracket.
fn real_root<T: Real>(a: T, b: T, c: T) -> T {
    let bound = T::one() + a.abs().max(b.abs()).max(c.abs());
    let (mut lo, mut hi) = (-bound, bound);
    let mut x = T::zero();
    for _ in 0..200 {
        let fx = eval(a, b, c, x);
        if fx == T::zero() {
            return x;
        }
        if fx < T::zero() {
            lo = x;
        } else {
            hi = x;
        }
        let dfx = (T::lit(3.0) * x + T::lit(2.0) * a) * x + b;
        let newton = x - fx / dfx;
        let next = if dfx != T::zero() && newton > lo && newton < hi {
            newton
        } else {
            T::lit(0.5) * (lo + hi)
        };
        if (next - x).abs() <= T::epsilon() * x.abs().max(T::min_positive_value()) {
            return next;
        }
        x = next;
    }
    x
}

/// All three roots of `z^3 + a z^2 + b z + c`.
///
/// Exact zero roots are split off directly; double roots are detected at the
/// critical points of the cubic, where they are well conditioned; otherwise a
/// real root is located by bracketed Newton and the rest come from the
/// deflated quadratic, polished by complex Newton on the full cubic.
pub fn cubic_roots<T: Real>(a: T, b: T, c: T) -> [Complex<T>; 3] {
    let zero = Complex::new(T::zero(), T::zero());
    if c == T::zero() {
        let [r1, r2] = quadratic_roots(a, b);
        return [zero, r1, r2];
    }

    let three = T::lit(3.0);
    let disc_d = a * a - three * b;
    if disc_d >= T::zero() {
        let s = disc_d.sqrt();
        for x in [(-a + s) / three, (-a - s) / three] {
            let scale = x.abs().powi(3) + a.abs() * x * x + b.abs() * x.abs() + c.abs();
            if eval(a, b, c, x).abs() <= T::lit(32.0) * T::epsilon() * scale {
                let third = -a - x - x;
                return [Complex::new(x, T::zero()), Complex::new(x, T::zero()), Complex::new(third, T::zero())];
            }
        }
    }

    let r = real_root(a, b, c);
    let q1 = a + r;
    let q0 = b + r * q1;
    let [z1, z2] = quadratic_roots(q1, q0);
    let polish = |z: Complex<T>| {
        let mut z = z;
        for _ in 0..3 {
            let (p, dp) = eval_complex(a, b, c, z);
            if dp.norm() == T::zero() {
                break;
            }
            let cand = z - p / dp;
            if eval_complex(a, b, c, cand).0.norm() < p.norm() {
                z = cand;
            } else {
                break;
            }
        }
        z
    };
    let (z1, z2) = if z1.im != T::zero() {
        // keep the conjugate pair exactly conjugate
        let z = polish(z1);
        (z, z.conj())
    } else {
        (polish(z1), polish(z2))
    };
    [Complex::new(r, T::zero()), z1, z2]
}

/// Eigenvalues of a 3x3 matrix. When some row or column vanishes off the
/// diagonal, that diagonal entry is split off exactly and the remaining 2x2
/// block is solved directly; otherwise the characteristic cubic is solved.
pub fn eigenvalues3<T: Real>(m: &Mat3<T>) -> [Complex<T>; 3] {
    for k in 0..3 {
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        let zero = T::zero();
        let row = m[k][i] == zero && m[k][j] == zero;
        let col = m[i][k] == zero && m[j][k] == zero;
        if row || col {
            let (lo, hi) = (i.min(j), i.max(j));
            let trace = m[lo][lo] + m[hi][hi];
            let det = m[lo][lo] * m[hi][hi] - m[lo][hi] * m[hi][lo];
            let [z1, z2] = quadratic_roots(-trace, det);
            return [Complex::new(m[k][k], zero), z1, z2];
        }
    }
    let (a, b, c) = characteristic_cubic(m);
    cubic_roots(a, b, c)
}

pub fn spectral_radius3<T: Real>(m: &Mat3<T>) -> T {
    eigenvalues3(m).iter().fold(T::zero(), |r, z| r.max(z.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Matrix3;
    use proptest::prelude::*;

    fn sorted_moduli(z: &[Complex<f64>]) -> Vec<f64> {
        let mut v: Vec<f64> = z.iter().map(|z| z.norm()).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    #[test]
    fn free_drift_double_root() {
        let m = [[2.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
        let z = eigenvalues3(&m);
        assert_eq!(sorted_moduli(&z), vec![0.0, 1.0, 1.0]);
        assert_eq!(spectral_radius3(&m), 1.0);
    }

    #[test]
    fn rotation_has_unit_radius() {
        let (s, c) = 0.3f64.sin_cos();
        let m = [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 0.5]];
        assert!((spectral_radius3(&m) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn block_triangular_split_is_exact() {
        let m: Mat3<f64> = [[1.9, -1.0, 0.3], [1.0, 0.0, 0.0], [0.0, 0.0, 0.75]];
        let z = eigenvalues3(&m);
        assert_eq!(z[0], Complex::new(0.75, 0.0));
        assert!((z[1].norm() - 1.0).abs() <= 2.0 * f64::EPSILON);
    }

    #[test]
    fn known_real_roots() {
        // (z - 1)(z - 2)(z + 3) = z^3 - 7 z + 6
        let z = cubic_roots(0.0, -7.0, 6.0);
        let mut re: Vec<f64> = z.iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in re.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-13);
        }
    }

    proptest! {
        #[test]
        fn agrees_with_nalgebra(v in proptest::collection::vec(-10.0f64..10.0, 9)) {
            let m = [[v[0], v[1], v[2]], [v[3], v[4], v[5]], [v[6], v[7], v[8]]];
            let ours = sorted_moduli(&eigenvalues3(&m));
            let na = Matrix3::from_row_slice(&v).complex_eigenvalues();
            let theirs = sorted_moduli(na.as_slice());
            for (a, b) in ours.iter().zip(&theirs) {
                prop_assert!((a - b).abs() <= 1e-6 * (1.0 + b.abs()), "{ours:?} vs {theirs:?}");
            }
        }
    }
}
