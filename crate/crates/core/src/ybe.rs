//! The unitary Yang-Baxter solution R(theta, phi) = exp(theta X), the YBE
//! with its Lorentz velocity-addition constraint, and the entangled basis
//! the solution generates from the standard product basis.
//!
//! The canonical constructor uses the explicit matrix entries, which are
//! total in theta; the closed form
//! cos^2(theta/2) (I + 2 tan(theta/2) X + tan^2(theta/2) Y) and the Taylor
//! exponential of theta X serve as independent cross-checks.

use std::f64::consts::PI;

use crate::bmw;
use crate::error::{Error, Result};
use crate::linalg::{phase, C64, CMatrix, StateVector};
use crate::report::RelationReport;

/// Spectral and phase parameters (radians).
#[derive(Clone, Copy, Debug)]
pub struct AngleParams {
    pub theta: f64,
    pub phi: f64,
}

impl AngleParams {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Self { theta, phi })
    }
}

/// Explicit 4x4 matrix of the Yang-Baxter solution.
pub fn r_matrix(p: AngleParams) -> CMatrix {
    let c2 = (p.theta / 2.0).cos().powi(2);
    let s2 = (p.theta / 2.0).sin().powi(2);
    let s = C64::new(0.5 * p.theta.sin(), 0.0);
    let a = phase(-p.phi);
    let b = phase(p.phi);
    let c2 = C64::new(c2, 0.0);
    let s2 = C64::new(s2, 0.0);
    CMatrix::from_rows(vec![
        vec![c2, -s * a, -s * a, -s2 * a * a],
        vec![s * b, c2, -s2, s * a],
        vec![s * b, -s2, c2, s * a],
        vec![-s2 * b * b, -s * b, -s * b, c2],
    ])
    .unwrap()
}

/// Closed form cos^2(theta/2)(I + 2 tan(theta/2) X + tan^2(theta/2) Y).
///
/// Kept as a cross-check route; the tan factors cancel against the cos^2
/// prefactor so the products stay finite in IEEE arithmetic even at
/// theta = +/- pi.
pub fn r_closed_form(p: AngleParams) -> CMatrix {
    let (x, y) = bmw::xy_ops(p.phi);
    let t = (p.theta / 2.0).tan();
    let c2 = (p.theta / 2.0).cos().powi(2);
    CMatrix::identity(4)
        .add(&x.scale(C64::new(2.0 * t, 0.0)))
        .unwrap()
        .add(&y.scale(C64::new(t * t, 0.0)))
        .unwrap()
        .scale(C64::new(c2, 0.0))
}

/// Taylor-series route exp(theta X); agrees with `r_matrix` below 1e-10
/// for terms >= 20 over theta in [-pi, pi].
pub fn r_from_exponential(p: AngleParams, terms: usize) -> Result<CMatrix> {
    let (x, _) = bmw::xy_ops(p.phi);
    x.scale(C64::new(p.theta, 0.0)).taylor_exp(terms)
}

/// Relative threshold for declaring the velocity-addition denominator zero.
const POLE_EPS: f64 = 1e-12;

/// Lorentz composition of spectral parameters:
/// tan(theta2/2) = (tan(theta1/2) + tan(theta3/2)) / (1 + tan(theta1/2) tan(theta3/2)),
/// returned as the principal value in (-pi, pi).
///
/// The denominator vanishing is the theta2 = pi pole of the tan
/// parametrization and is signalled as an error.
pub fn velocity_add(theta1: f64, theta3: f64) -> Result<f64> {
    for t in [theta1, theta3] {
        if !t.is_finite() || t.abs() >= PI {
            return Err(Error::AngleOutOfRange(t));
        }
    }
    let t1 = (theta1 / 2.0).tan();
    let t3 = (theta3 / 2.0).tan();
    let denom = 1.0 + t1 * t3;
    if denom.abs() <= POLE_EPS * (1.0 + (t1 * t3).abs()) {
        return Err(Error::VelocityPole);
    }
    Ok(2.0 * ((t1 + t3) / denom).atan())
}

/// Both 8x8 sides of the YBE on a 3-qubit chain, with theta2 from the
/// velocity-addition constraint.
pub fn check_ybe(theta1: f64, theta3: f64, phi: f64, tol: f64) -> Result<RelationReport> {
    let theta2 = velocity_add(theta1, theta3)?;
    let r1 = |th: f64| r_matrix(AngleParams { theta: th, phi }).embed_two_site(1, 3).unwrap();
    let r2 = |th: f64| r_matrix(AngleParams { theta: th, phi }).embed_two_site(2, 3).unwrap();
    let lhs = &(&r1(theta1) * &r2(theta2)) * &r1(theta3);
    let rhs = &(&r2(theta3) * &r1(theta2)) * &r2(theta1);
    let residual = lhs.frobenius_distance(&rhs)?;
    Ok(RelationReport::new(
        format!("YBE(th1={theta1:.4}, th3={theta3:.4}, phi={phi:.4})"),
        residual,
        tol,
        8,
    ))
}

/// The four entangled states R|kl>, column convention: the k-th state is R
/// applied to the k-th standard basis vector (uu, ud, du, dd).
#[derive(Clone, Debug)]
pub struct EntangledBasis {
    pub states: [StateVector; 4],
    pub theta: f64,
    pub phi: f64,
}

pub fn entangled_basis(p: AngleParams) -> EntangledBasis {
    let r = r_matrix(p);
    let states = std::array::from_fn(|k| r.apply(&StateVector::basis_state(2, k)).unwrap());
    EntangledBasis {
        states,
        theta: p.theta,
        phi: p.phi,
    }
}

impl EntangledBasis {
    /// Frobenius distance of the Gram matrix from the 4x4 identity.
    pub fn gram_residual(&self) -> f64 {
        let mut g = CMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                g.set(i, j, self.states[i].inner(&self.states[j]).unwrap());
            }
        }
        g.frobenius_distance(&CMatrix::identity(4)).unwrap()
    }
}

/// Maximum deviation from unit norm `concurrence` accepts.
const NORM_TOL: f64 = 1e-9;

/// C = 2|ad - bc| for a normalized two-qubit pure state (a, b, c, d).
///
/// Non-normalized input is rejected rather than silently normalized, so an
/// upstream bug cannot masquerade as entanglement loss.
pub fn concurrence(s: &StateVector) -> Result<f64> {
    if s.qubits() != Some(2) {
        return Err(Error::BadAmplitudeCount {
            qubits: 2,
            len: s.dim(),
        });
    }
    let norm = s.norm();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized {
            norm,
            max_dev: NORM_TOL,
        });
    }
    let (a, b, c, d) = (
        s.amplitude(0),
        s.amplitude(1),
        s.amplitude(2),
        s.amplitude(3),
    );
    Ok(2.0 * (a * d - b * c).norm())
}
