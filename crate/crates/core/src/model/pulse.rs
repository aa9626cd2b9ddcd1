use super::PulseParams;
use crate::scalar::Real;

/// Raised-cosine inlet pressure, zero after the pulse ends.
pub fn inlet_pressure<T: Real>(t: T, pulse: &PulseParams<T>) -> T {
    if t < T::zero() || t > pulse.t_max {
        return T::zero();
    }
    let two = T::lit(2.0);
    pulse.p_max / two * (T::one() - (two * T::PI() * t / pulse.t_max).cos())
}

pub fn outlet_pressure<T: Real>(_t: T, pulse: &PulseParams<T>) -> T {
    pulse.p_out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pulse() -> PulseParams<f64> {
        PulseParams {
            p_max: 2e4,
            t_max: 0.005,
            p_out: 0.0,
        }
    }

    #[test]
    fn pulse_values() {
        let p = pulse();
        assert_eq!(inlet_pressure(0.0, &p), 0.0);
        assert!((inlet_pressure(0.0025, &p) - 2e4).abs() < 1e-9);
        assert_eq!(inlet_pressure(0.006, &p), 0.0);
    }

    #[test]
    fn continuous_and_bounded() {
        let p = pulse();
        let left = inlet_pressure(p.t_max, &p);
        let right = inlet_pressure(p.t_max + 1e-12, &p);
        assert!(left.abs() < 1e-9 && right == 0.0);
        for i in 0..=1000 {
            let t = 0.01 * i as f64 / 1000.0;
            let v = inlet_pressure(t, &p);
            assert!((0.0..=p.p_max).contains(&v));
        }
    }
}
