//! Closed-form point-cloud registration and the equilibrium structure of the
//! damped dynamics on point clouds.
//!
//! For `M = Σ y_ref x_refᵀ = U S Vᵀ`, the optimal rotation is `U₊V₊ᵀ` with
//! `U₊ = U diag(1, 1, det U)` and likewise for `V₊`. In a generic
//! configuration the dynamics have exactly four equilibria, `U₊ R̄_j V₊ᵀ`
//! with `R̄_j` the identity and the three diagonal half-turns; the last three
//! are unstable.

use crate::error::{invalid, Error, Result};
use crate::geometry::{rodrigues, Mat3, RigidTransform, Vec3};

/// Relative gap below which singular values count as repeated or zero.
pub const GENERIC_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct SvdDecomposition {
    /// Correlation matrix `Σ y_ref_i x_ref_iᵀ`.
    pub m: Mat3,
    pub u_plus: Mat3,
    pub v_plus: Mat3,
    /// Singular values, descending.
    pub s: Vec3,
    /// `det(U V)` of the raw factors; `s₃′ = s₃ · det(U V)`.
    pub det_uv: f64,
}

impl SvdDecomposition {
    /// `S′ = diag(s₁, s₂, s₃ det(UV))`.
    pub fn s_prime(&self) -> Vec3 {
        Vec3::new(self.s[0], self.s[1], self.s[2] * self.det_uv)
    }

    /// True when `s₁ > s₂ > s₃ > 0` with relative margin [`GENERIC_TOL`].
    pub fn is_generic(&self) -> bool {
        let tol = GENERIC_TOL * self.s[0];
        self.s[0] > 0.0
            && self.s[0] - self.s[1] > tol
            && self.s[1] - self.s[2] > tol
            && self.s[2] > tol
    }
}

#[derive(Clone, Debug)]
pub struct HornResult {
    pub transform: RigidTransform,
    pub decomposition: SvdDecomposition,
    /// Repeated or vanishing singular values: the minimizer is not unique.
    pub degenerate: bool,
}

fn centered(p: &[Vec3]) -> (Vec3, Vec<Vec3>) {
    let c = p.iter().sum::<Vec3>() / p.len() as f64;
    (c, p.iter().map(|v| v - c).collect())
}

fn check_clouds(x: &[Vec3], y: &[Vec3]) -> Result<()> {
    if x.len() != y.len() {
        return Err(invalid(format!(
            "{} source points but {} targets",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 3 {
        return Err(invalid(format!(
            "need at least 3 correspondences, got {}",
            x.len()
        )));
    }
    if x.iter().chain(y).any(|p| !p.iter().all(|c| c.is_finite())) {
        return Err(invalid("points must be finite"));
    }
    Ok(())
}

/// SVD of the centered correlation matrix with the sign convention above.
pub fn correlation_svd(x_ref: &[Vec3], y_ref: &[Vec3]) -> SvdDecomposition {
    let m: Mat3 = x_ref
        .iter()
        .zip(y_ref)
        .map(|(x, y)| y * x.transpose())
        .sum();
    let svd = m.svd(true, true);
    let u = svd.u.expect("requested U");
    let v = svd.v_t.expect("requested Vᵀ").transpose();
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let mut us = Mat3::zeros();
    let mut vs = Mat3::zeros();
    let mut s = Vec3::zeros();
    for (dst, &src) in order.iter().enumerate() {
        us.set_column(dst, &u.column(src));
        vs.set_column(dst, &v.column(src));
        s[dst] = svd.singular_values[src];
    }
    let det_u = us.determinant().signum();
    let det_v = vs.determinant().signum();
    let mut u_plus = us;
    let mut v_plus = vs;
    u_plus.column_mut(2).scale_mut(det_u);
    v_plus.column_mut(2).scale_mut(det_v);
    SvdDecomposition {
        m,
        u_plus,
        v_plus,
        s,
        det_uv: det_u * det_v,
    }
}

/// Globally optimal `(R, t)` minimizing `Σ ‖y_i − R x_i − t‖²`.
pub fn horn_svd(x: &[Vec3], y: &[Vec3]) -> Result<HornResult> {
    check_clouds(x, y)?;
    let (x_bar, x_ref) = centered(x);
    let (y_bar, y_ref) = centered(y);
    let dec = correlation_svd(&x_ref, &y_ref);
    let r = dec.u_plus * dec.v_plus.transpose();
    Ok(HornResult {
        transform: RigidTransform {
            rotation: r,
            translation: y_bar - r * x_bar,
        },
        degenerate: !dec.is_generic(),
        decomposition: dec,
    })
}

/// The four half-turn patterns `R̄_1 … R̄_4`.
pub fn half_turn_patterns() -> [Mat3; 4] {
    [
        Mat3::identity(),
        Mat3::from_diagonal(&Vec3::new(1.0, -1.0, -1.0)),
        Mat3::from_diagonal(&Vec3::new(-1.0, 1.0, -1.0)),
        Mat3::from_diagonal(&Vec3::new(-1.0, -1.0, 1.0)),
    ]
}

#[derive(Clone, Debug)]
pub struct EquilibriumSet {
    /// `U₊ R̄_j V₊ᵀ`, `j = 1 … 4`; index 0 is the optimum.
    pub rotations: [Mat3; 4],
    /// Center of mass at every equilibrium: the target centroid.
    pub x_c: Vec3,
    pub x_bar: Vec3,
    pub x_ref: Vec<Vec3>,
    pub y_ref: Vec<Vec3>,
    pub decomposition: SvdDecomposition,
}

impl EquilibriumSet {
    pub const OPTIMAL_INDEX: usize = 0;

    /// Rigid transform of equilibrium `j` (0-based).
    pub fn transform(&self, j: usize) -> RigidTransform {
        let r = self.rotations[j];
        RigidTransform {
            rotation: r,
            translation: self.x_c - r * self.x_bar,
        }
    }
}

/// `‖Σ x_ref_i × Rᵀ y_ref_i‖`, which vanishes exactly at the equilibria.
pub fn torque_residual(x_ref: &[Vec3], y_ref: &[Vec3], r: &Mat3) -> f64 {
    let rt = r.transpose();
    x_ref
        .iter()
        .zip(y_ref)
        .map(|(x, y)| x.cross(&(rt * y)))
        .sum::<Vec3>()
        .norm()
}

/// All four equilibria of a generic point-cloud pair.
pub fn equilibrium_set(x: &[Vec3], y: &[Vec3]) -> Result<EquilibriumSet> {
    check_clouds(x, y)?;
    let (x_bar, x_ref) = centered(x);
    let (y_bar, y_ref) = centered(y);
    let dec = correlation_svd(&x_ref, &y_ref);
    if !dec.is_generic() {
        return Err(Error::DegenerateConfiguration(format!(
            "singular values {:?} are not distinct and positive",
            dec.s.as_slice()
        )));
    }
    let pats = half_turn_patterns();
    let rotations = pats.map(|p| dec.u_plus * p * dec.v_plus.transpose());
    Ok(EquilibriumSet {
        rotations,
        x_c: y_bar,
        x_bar,
        x_ref,
        y_ref,
        decomposition: dec,
    })
}

/// A rotation axis `u = U₊ e_j` and the exact potential-energy decrease
/// `V(s) − V(s_Δ)` obtained by rotating spurious equilibrium `j ∈ {2, 3, 4}`
/// by `θ` about `u` with spring coefficient `k`.
pub fn instability_certificate(
    eq: &EquilibriumSet,
    j: usize,
    theta: f64,
    k: f64,
) -> Result<(Vec3, f64)> {
    if !(2..=4).contains(&j) {
        return Err(Error::InvalidIndex(j));
    }
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(invalid(format!(
            "perturbation angle must lie in (0, π), got {theta}"
        )));
    }
    let sp = eq.decomposition.s_prime();
    let weight = match j {
        2 => sp[1] + sp[2],
        3 => sp[0] + sp[2],
        _ => sp[0] + sp[1],
    };
    let axis: Vec3 = eq.decomposition.u_plus.column(j - 2).into();
    Ok((axis, k * (1.0 - theta.cos()) * weight))
}

/// Rotation of spurious equilibrium `j` (1-based) after the perturbation.
pub fn perturbed_rotation(eq: &EquilibriumSet, j: usize, axis: &Vec3, theta: f64) -> Mat3 {
    rodrigues(axis, theta) * eq.rotations[j - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sample() -> (Vec<Vec3>, Vec<Vec3>) {
        let x = vec![
            Vec3::new(0.3, -1.2, 0.5),
            Vec3::new(1.1, 0.4, -0.7),
            Vec3::new(-0.8, 0.9, 1.3),
            Vec3::new(0.2, 0.1, -1.6),
            Vec3::new(-1.5, -0.3, 0.2),
        ];
        let r = rodrigues(&Vec3::new(0.2, -0.5, 0.8).normalize(), 1.1);
        let t = Vec3::new(0.5, -1.0, 2.0);
        let y = x.iter().map(|p| r * p + t).collect();
        (x, y)
    }

    #[test]
    fn identity_for_equal_clouds() {
        let (x, _) = sample();
        let h = horn_svd(&x, &x).unwrap();
        assert_relative_eq!(h.transform.rotation, Mat3::identity(), epsilon = 1e-12);
        assert!(h.transform.translation.norm() < 1e-12);
    }

    #[test]
    fn recovers_construction() {
        let (x, y) = sample();
        let h = horn_svd(&x, &y).unwrap();
        let r = rodrigues(&Vec3::new(0.2, -0.5, 0.8).normalize(), 1.1);
        assert_relative_eq!(h.transform.rotation, r, epsilon = 1e-10);
        assert_relative_eq!(
            h.transform.translation,
            Vec3::new(0.5, -1.0, 2.0),
            epsilon = 1e-10
        );
        let d = &h.decomposition;
        let rebuilt = d.u_plus * Mat3::from_diagonal(&d.s_prime()) * d.v_plus.transpose();
        assert_relative_eq!(rebuilt, d.m, epsilon = 1e-9);
        assert_relative_eq!(d.u_plus.determinant(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(d.v_plus.determinant(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn equilibria_balance_torque() {
        let (x, y) = sample();
        let eq = equilibrium_set(&x, &y).unwrap();
        for r in &eq.rotations {
            assert!(torque_residual(&eq.x_ref, &eq.y_ref, r) < 1e-9);
        }
    }

    #[test]
    fn index_one_rejected() {
        let (x, y) = sample();
        let eq = equilibrium_set(&x, &y).unwrap();
        assert!(matches!(
            instability_certificate(&eq, 1, 0.1, 2.0),
            Err(Error::InvalidIndex(1))
        ));
        let (_, small) = instability_certificate(&eq, 2, 1e-6, 2.0).unwrap();
        assert!(small > 0.0 && small < 1e-10);
    }

    #[test]
    fn planar_symmetric_is_degenerate() {
        let sq = vec![
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(-1.0, 0.0, 0.0),
            Vec3::new(0.0, -1.0, 0.0),
        ];
        assert!(matches!(
            equilibrium_set(&sq, &sq),
            Err(Error::DegenerateConfiguration(_))
        ));
        assert!(horn_svd(&sq, &sq).unwrap().degenerate);
    }
}
