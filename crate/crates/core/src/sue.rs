//! Semantic uncertainty ellipsoids (SUEs) for category-level keypoints.
//!
//! Given `K` example shapes of a category, keypoint `i` gets the mean
//! `b_i`, population covariance `C_i` and the confidence-`η` ellipsoid
//! `{x : (x − b_i)ᵀ A_i (x − b_i) ≤ 1}` with `A_i = (χ²₃(η) C̃_i)⁻¹`, where
//! `C̃_i = C_i + reg·I` keeps the ellipsoid non-degenerate.

use crate::error::{invalid, Result};
use crate::geometry::{Mat3, Primitive, Vec3};

/// `K` shapes of one category, each with the same `N` keypoints.
#[derive(Clone, Debug, PartialEq)]
pub struct CategoryLibrary {
    pub shapes: Vec<Vec<Vec3>>,
    pub names: Option<Vec<String>>,
}

impl CategoryLibrary {
    pub fn new(shapes: Vec<Vec<Vec3>>) -> Result<Self> {
        if shapes.len() < 2 {
            return Err(invalid(format!(
                "a library needs at least 2 shapes, got {}",
                shapes.len()
            )));
        }
        let n = shapes[0].len();
        if n == 0 {
            return Err(invalid("shapes must have at least one keypoint"));
        }
        for (k, s) in shapes.iter().enumerate() {
            if s.len() != n {
                return Err(invalid(format!(
                    "shape {k} has {} keypoints, expected {n}",
                    s.len()
                )));
            }
            if s.iter().any(|p| !p.iter().all(|c| c.is_finite())) {
                return Err(invalid(format!("shape {k} has non-finite coordinates")));
            }
        }
        Ok(CategoryLibrary {
            shapes,
            names: None,
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.num_keypoints() {
            return Err(invalid(format!(
                "{} keypoint names for {} keypoints",
                names.len(),
                self.num_keypoints()
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn num_shapes(&self) -> usize {
        self.shapes.len()
    }

    pub fn num_keypoints(&self) -> usize {
        self.shapes[0].len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SueModel {
    pub means: Vec<Vec3>,
    pub covariances: Vec<Mat3>,
    /// Ellipsoid matrices `A_i`.
    pub shapes: Vec<Mat3>,
    pub eta: f64,
    /// `χ²₃(η)`.
    pub chi2: f64,
    pub reg: f64,
}

impl SueModel {
    /// The SUEs as ellipsoid primitives.
    pub fn to_primitives(&self) -> Result<Vec<Primitive>> {
        self.means
            .iter()
            .zip(&self.shapes)
            .map(|(b, a)| Primitive::ellipsoid(*b, *a))
            .collect()
    }
}

/// CDF of the chi-square distribution with 3 degrees of freedom,
/// `erf(√(x/2)) − √(2x/π) e^{−x/2}`.
pub fn chi2_cdf_3dof(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    libm::erf((x / 2.0).sqrt()) - (2.0 * x / std::f64::consts::PI).sqrt() * (-x / 2.0).exp()
}

fn chi2_pdf_3dof(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    (x / (2.0 * std::f64::consts::PI)).sqrt() * (-x / 2.0).exp()
}

/// Quantile `q` with `P(χ²₃ ≤ q) = η`.
pub fn chi2_quantile_3dof(eta: f64) -> Result<f64> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(invalid(format!("confidence must lie in (0, 1), got {eta}")));
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    while chi2_cdf_3dof(hi) < eta {
        lo = hi;
        hi *= 2.0;
    }
    // Newton steps kept inside the bracket, bisection otherwise
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let f = chi2_cdf_3dof(x) - eta;
        if f.abs() < 1e-15 {
            break;
        }
        if f > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let step = x - f / chi2_pdf_3dof(x);
        x = if step > lo && step < hi {
            step
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    Ok(x)
}

/// Default covariance regularization: `1e-6` times the mean squared distance
/// of the mean keypoints from their centroid.
pub fn default_reg(means: &[Vec3]) -> f64 {
    let c = means.iter().sum::<Vec3>() / means.len() as f64;
    let spread = means.iter().map(|b| (b - c).norm_squared()).sum::<f64>() / means.len() as f64;
    if spread > 0.0 {
        1e-6 * spread
    } else {
        1e-12
    }
}

/// Builds the SUE of every keypoint at confidence `eta`. `reg = None` uses
/// [`default_reg`].
pub fn build_sues(lib: &CategoryLibrary, eta: f64, reg: Option<f64>) -> Result<SueModel> {
    let chi2 = chi2_quantile_3dof(eta)?;
    let k = lib.num_shapes() as f64;
    let n = lib.num_keypoints();
    let means: Vec<Vec3> = (0..n)
        .map(|i| lib.shapes.iter().map(|s| s[i]).sum::<Vec3>() / k)
        .collect();
    let covariances: Vec<Mat3> = (0..n)
        .map(|i| {
            lib.shapes
                .iter()
                .map(|s| {
                    let d = s[i] - means[i];
                    d * d.transpose()
                })
                .sum::<Mat3>()
                / k
        })
        .collect();
    let reg = match reg {
        Some(r) if r.is_finite() && r > 0.0 => r,
        Some(r) => return Err(invalid(format!("regularization must be positive, got {r}"))),
        None => default_reg(&means),
    };
    let shapes = covariances
        .iter()
        .map(|c| {
            let ct = (c + Mat3::identity() * reg) * chi2;
            let inv = ct
                .cholesky()
                .ok_or_else(|| invalid("regularized covariance is not positive definite"))?
                .inverse();
            Ok(0.5 * (inv + inv.transpose()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SueModel {
        means,
        covariances,
        shapes,
        eta,
        chi2,
        reg,
    })
}

/// Convex combination `Σ c_k B_k` of the library shapes.
pub fn synthesize_instance(lib: &CategoryLibrary, c: &[f64]) -> Result<Vec<Vec3>> {
    if c.len() != lib.num_shapes() {
        return Err(invalid(format!(
            "{} weights for {} shapes",
            c.len(),
            lib.num_shapes()
        )));
    }
    if c.iter().any(|w| !w.is_finite() || *w < -1e-9) || (c.iter().sum::<f64>() - 1.0).abs() > 1e-9
    {
        return Err(invalid("weights must be nonnegative and sum to 1"));
    }
    Ok((0..lib.num_keypoints())
        .map(|i| lib.shapes.iter().zip(c).map(|(s, w)| s[i] * *w).sum())
        .collect())
}
