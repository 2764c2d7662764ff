//! Seeded synthetic point sets.
//!
//! The random stream is SplitMix64, fixed here so the same `(spec, seed)`
//! yields the same bytes in any implementation:
//!
//! ```text
//! state = state + 0x9E3779B97F4A7C15            (wrapping)
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9      (wrapping)
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB      (wrapping)
//! out = z ^ (z >> 31)
//! ```
//!
//! A uniform double in `[0, 1)` is `(out >> 11) * 2^-53`. Per point:
//!
//! * `normal`: Marsaglia polar method. Draw `u = 2a - 1`, `v = 2b - 1`
//!   until `0 < s = u*u + v*v < 1`; then `f = sqrt(-2 ln(s) / s)` and the
//!   point is `(u*f, v*f)`.
//! * `uniform_square`: `(a, b)`.
//! * `uniform_disk`: `r = sqrt(a)`, `t = 2*pi*b`, point `(r cos t, r sin t)`.
//! * `circle`: `t = 2*pi*a`, `u = 2b - 1`, `r = 1 + u * distort_pct / 100`,
//!   point `(r cos t, r sin t)`. Both draws are made even when the
//!   distortion is zero, so distorted and undistorted sets share angles.
//!
//! `a` and `b` are consecutive uniform draws. `sqrt` is correctly rounded;
//! `ln`, `cos` and `sin` come from the platform libm and may differ in the
//! last bit across platforms.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point2D, PointSet};

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distribution {
    Normal,
    UniformSquare,
    UniformDisk,
    Circle,
}

impl Distribution {
    pub const ALL: [Distribution; 4] = [
        Distribution::Normal,
        Distribution::UniformSquare,
        Distribution::UniformDisk,
        Distribution::Circle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Distribution::Normal => "normal",
            Distribution::UniformSquare => "uniform_square",
            Distribution::UniformDisk => "uniform_disk",
            Distribution::Circle => "circle",
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "normal" => Ok(Distribution::Normal),
            "square" | "uniform_square" => Ok(Distribution::UniformSquare),
            "disk" | "uniform_disk" => Ok(Distribution::UniformDisk),
            "circle" => Ok(Distribution::Circle),
            other => Err(Error::InvalidSpec(format!(
                "unknown distribution '{other}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub distribution: Distribution,
    pub n: usize,
    pub seed: u64,
    /// Radial distortion in percent of the radius; circle only.
    pub distort_pct: f64,
}

impl GenSpec {
    pub fn new(distribution: Distribution, n: usize, seed: u64) -> Self {
        Self {
            distribution,
            n,
            seed,
            distort_pct: 0.0,
        }
    }

    pub fn circle(n: usize, seed: u64, distort_pct: f64) -> Self {
        Self {
            distribution: Distribution::Circle,
            n,
            seed,
            distort_pct,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpec("n must be at least 1".into()));
        }
        if !self.distort_pct.is_finite() || self.distort_pct < 0.0 {
            return Err(Error::InvalidSpec(format!(
                "distortion must be a nonnegative percentage, got {}",
                self.distort_pct
            )));
        }
        if self.distort_pct != 0.0 && self.distribution != Distribution::Circle {
            return Err(Error::InvalidSpec(format!(
                "distortion only applies to circle, not {}",
                self.distribution
            )));
        }
        Ok(())
    }
}

pub fn generate(spec: &GenSpec) -> Result<PointSet> {
    spec.validate()?;
    let mut rng = SplitMix64::new(spec.seed);
    let mut points = Vec::with_capacity(spec.n);
    for _ in 0..spec.n {
        let p = match spec.distribution {
            Distribution::Normal => normal_pair(&mut rng),
            Distribution::UniformSquare => {
                let x = rng.next_f64();
                let y = rng.next_f64();
                Point2D::new(x, y)
            }
            Distribution::UniformDisk => {
                let r = rng.next_f64().sqrt();
                let t = TAU * rng.next_f64();
                Point2D::new(r * t.cos(), r * t.sin())
            }
            Distribution::Circle => {
                let t = TAU * rng.next_f64();
                let u = 2.0 * rng.next_f64() - 1.0;
                let r = 1.0 + u * (spec.distort_pct / 100.0);
                Point2D::new(r * t.cos(), r * t.sin())
            }
        };
        points.push(p);
    }
    PointSet::new(points)
}

fn normal_pair(rng: &mut SplitMix64) -> Point2D {
    loop {
        let u = 2.0 * rng.next_f64() - 1.0;
        let v = 2.0 * rng.next_f64() - 1.0;
        let s = u * u + v * v;
        if s > 0.0 && s < 1.0 {
            let f = (-2.0 * s.ln() / s).sqrt();
            return Point2D::new(u * f, v * f);
        }
    }
}
