use crate::error::{Error, Result};
use crate::scalar::Real;

fn require<T: Real>(ok: bool, name: &'static str, value: T, allowed: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: format!("{value}"),
            allowed,
        })
    }
}

/// Rectangular channel `(0, L) x (0, R)`; `r = R` is the deformable wall.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry<T> {
    /// Half-height of the channel, cm.
    pub radius: T,
    /// Length of the channel, cm.
    pub length: T,
}

impl<T: Real> Geometry<T> {
    pub fn new(radius: T, length: T) -> Result<Self> {
        let g = Self { radius, length };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        require(self.radius > T::zero() && self.radius.is_finite(), "R", self.radius, "R > 0")?;
        require(self.length > T::zero() && self.length.is_finite(), "L", self.length, "L > 0")
    }

    /// Axial wavenumber `j pi / L` of sine mode `j` (1-based).
    #[inline]
    pub fn wavenumber(&self, j: usize) -> T {
        T::from_usize_lossy(j) * T::PI() / self.length
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidParams<T> {
    /// Fluid density, g/cm^3.
    pub rho_f: T,
}

impl<T: Real> FluidParams<T> {
    pub fn validate(&self) -> Result<()> {
        require(self.rho_f > T::zero() && self.rho_f.is_finite(), "rho_f", self.rho_f, "rho_f > 0")
    }
}

/// Generalized string model coefficients of the wall.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WallParams<T> {
    /// Structure density, g/cm^3.
    pub rho_s: T,
    /// Wall thickness, cm.
    pub h: T,
    /// Zeroth-order elastic coefficient, dyn/cm^3.
    pub c0: T,
    /// Tension-like elastic coefficient, dyn/cm.
    pub c1: T,
    /// Viscoelastic coefficients; zero disables damping.
    pub d0: T,
    pub d1: T,
}

impl<T: Real> WallParams<T> {
    /// Purely elastic wall (`D0 = D1 = 0`).
    pub fn elastic(rho_s: T, h: T, c0: T, c1: T) -> Self {
        Self {
            rho_s,
            h,
            c0,
            c1,
            d0: T::zero(),
            d1: T::zero(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        require(self.rho_s > T::zero() && self.rho_s.is_finite(), "rho_s", self.rho_s, "rho_s > 0")?;
        require(self.h > T::zero() && self.h.is_finite(), "h", self.h, "h > 0")?;
        require(self.c0 > T::zero() && self.c0.is_finite(), "C0", self.c0, "C0 > 0")?;
        require(self.c1 > T::zero() && self.c1.is_finite(), "C1", self.c1, "C1 > 0")?;
        require(self.d0 >= T::zero() && self.d0.is_finite(), "D0", self.d0, "D0 >= 0")?;
        require(self.d1 >= T::zero() && self.d1.is_finite(), "D1", self.d1, "D1 >= 0")
    }

    /// Surface mass density `rho_s h`.
    #[inline]
    pub fn surface_mass(&self) -> T {
        self.rho_s * self.h
    }

    #[inline]
    pub fn is_damped(&self) -> bool {
        self.d0 > T::zero() || self.d1 > T::zero()
    }
}

/// Raised-cosine inlet pulse and constant outlet pressure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseParams<T> {
    /// Peak inlet pressure, dyn/cm^2.
    pub p_max: T,
    /// Pulse duration, s.
    pub t_max: T,
    /// Outlet pressure, dyn/cm^2.
    pub p_out: T,
}

impl<T: Real> PulseParams<T> {
    pub fn validate(&self) -> Result<()> {
        require(self.p_max.is_finite(), "p_max", self.p_max, "finite p_max")?;
        require(self.t_max > T::zero() && self.t_max.is_finite(), "t_max", self.t_max, "t_max > 0")?;
        require(self.p_out.is_finite(), "p_out", self.p_out, "finite p_out")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discretization<T> {
    /// Number of sine modes.
    pub modes: usize,
    /// Axial grid points of the pressure grid (endpoints included).
    pub nz: usize,
    /// Radial grid points of the pressure grid (endpoints included).
    pub nr: usize,
    pub dt: T,
    pub n_steps: usize,
    /// Fraction of the previous pressure carried explicitly, `0 <= beta <= 1`.
    pub beta: T,
    /// Weight of the three-level structure scheme, `0 <= theta <= 1/2`.
    pub theta: T,
}

impl<T: Real> Default for Discretization<T> {
    fn default() -> Self {
        Self {
            modes: 64,
            nz: 129,
            nr: 65,
            dt: T::lit(1e-4),
            n_steps: 120,
            beta: T::one(),
            theta: T::lit(0.5),
        }
    }
}

impl<T: Real> Discretization<T> {
    pub fn validate(&self) -> Result<()> {
        require(self.modes >= 1, "J", T::from_usize_lossy(self.modes), "J >= 1")?;
        require(self.nz >= 3, "Nz", T::from_usize_lossy(self.nz), "Nz >= 3")?;
        require(self.nr >= 3, "Nr", T::from_usize_lossy(self.nr), "Nr >= 3")?;
        require(self.dt > T::zero() && self.dt.is_finite(), "dt", self.dt, "dt > 0")?;
        require(self.n_steps >= 1, "n_steps", T::from_usize_lossy(self.n_steps), "n_steps >= 1")?;
        require(
            self.beta >= T::zero() && self.beta <= T::one(),
            "beta",
            self.beta,
            "0 ≤ β ≤ 1",
        )?;
        require(
            self.theta >= T::zero() && self.theta <= T::lit(0.5),
            "theta",
            self.theta,
            "0 ≤ θ ≤ 1/2",
        )
    }

    pub fn t_end(&self) -> T {
        self.dt * T::from_usize_lossy(self.n_steps)
    }
}

/// Everything that defines the physical problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemParams<T> {
    pub geometry: Geometry<T>,
    pub fluid: FluidParams<T>,
    pub wall: WallParams<T>,
    pub pulse: PulseParams<T>,
}

impl<T: Real> ProblemParams<T> {
    pub fn validate(&self) -> Result<()> {
        self.geometry.validate()?;
        self.fluid.validate()?;
        self.wall.validate()?;
        self.pulse.validate()
    }

    /// Channel and wall data of the hemodynamics benchmark: `R = 0.5`,
    /// `L = 6`, `rho_f = 1`, `h = 0.1`, `C0 = 4e5`, `C1 = 2.5e4`, pulse peak
    /// `2e4` over `5 ms`, with the given wall density. Viscoelasticity off.
    pub fn benchmark(rho_s: T) -> Self {
        Self {
            geometry: Geometry {
                radius: T::lit(0.5),
                length: T::lit(6.0),
            },
            fluid: FluidParams { rho_f: T::one() },
            wall: WallParams::elastic(rho_s, T::lit(0.1), T::lit(4e5), T::lit(2.5e4)),
            pulse: PulseParams {
                p_max: T::lit(2e4),
                t_max: T::lit(0.005),
                p_out: T::zero(),
            },
        }
    }

    /// Mass ratio `alpha = rho_s h / rho_f`, cm.
    #[inline]
    pub fn mass_ratio(&self) -> T {
        self.wall.surface_mass() / self.fluid.rho_f
    }

    pub fn with_rho_s(mut self, rho_s: T) -> Self {
        self.wall.rho_s = rho_s;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn benchmark_is_valid() {
        let p = ProblemParams::<f64>::benchmark(1.1);
        p.validate().unwrap();
        assert!((p.mass_ratio() - 0.11).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(Geometry::new(0.0, 6.0).is_err());
        assert!(Geometry::new(0.5, -1.0).is_err());
        let mut w = WallParams::elastic(1.1, 0.1, 4e5, 2.5e4);
        w.d1 = -0.1;
        assert!(w.validate().is_err());

        let d = Discretization::<f64> {
            beta: 1.5,
            ..Default::default()
        };
        let msg = d.validate().unwrap_err().to_string();
        assert!(msg.contains("0 ≤ β ≤ 1"), "{msg}");

        let d = Discretization::<f64> {
            theta: 0.6,
            ..Default::default()
        };
        assert!(d.validate().is_err());
    }

    #[test]
    fn default_discretization() {
        let d = Discretization::<f64>::default();
        d.validate().unwrap();
        assert_eq!((d.modes, d.nz, d.nr), (64, 129, 65));
        assert_eq!(d.beta, 1.0);
        assert_eq!(d.theta, 0.5);
    }
}
