//! Hamiltonian induced by the phase-rotating Yang-Baxter solution,
//! H = i hbar omega (dR/dphi) R^dag, its NMR form
//! 2 hbar omega cos(vt) n.S with Bloch vector
//! n = (sin vt cos phi, sin vt sin phi, cos vt) and vt = (pi - theta)/2,
//! the closed-form instantaneous eigensystem, and Berry phases over the
//! phi in [0, 2pi] loop.
//!
//! No eigensolver anywhere: every spectral claim is checked as a residual
//! against the closed-form eigenvectors.

use std::f64::consts::PI;

use crate::bmw;
use crate::error::{Error, Result};
use crate::linalg::{phase, C64, CMatrix, StateVector, ZERO};
use crate::ybe::{r_matrix, AngleParams};

/// vt = (pi - theta)/2 plus the energy scale; hbar = omega = 1 by default.
#[derive(Clone, Copy, Debug)]
pub struct SpectralParams {
    pub vartheta: f64,
    pub phi: f64,
    pub omega: f64,
    pub hbar: f64,
}

impl SpectralParams {
    pub fn new(vartheta: f64, phi: f64) -> Result<Self> {
        Self::with_scales(vartheta, phi, 1.0, 1.0)
    }

    pub fn with_scales(vartheta: f64, phi: f64, omega: f64, hbar: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&vartheta) {
            return Err(Error::VarthetaOutOfRange(vartheta));
        }
        if !phi.is_finite() || !omega.is_finite() || !hbar.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            vartheta,
            phi,
            omega,
            hbar,
        })
    }

    pub fn theta(&self) -> f64 {
        PI - 2.0 * self.vartheta
    }
}

/// Analytic dR/dphi: every entry of the R-matrix carries a factor
/// e^{ik phi} with k in {0, +/-1, +/-2}, so the derivative multiplies each
/// entry by ik.
fn r_matrix_dphi(p: AngleParams) -> CMatrix {
    let s = C64::new(0.5 * p.theta.sin(), 0.0);
    let s2 = C64::new((p.theta / 2.0).sin().powi(2), 0.0);
    let a = phase(-p.phi);
    let b = phase(p.phi);
    let i = C64::new(0.0, 1.0);
    let mut m = CMatrix::zeros(4, 4);
    // k = -1 entries (factor a)
    m.set(0, 1, -s * a * -i);
    m.set(0, 2, -s * a * -i);
    m.set(1, 3, s * a * -i);
    m.set(2, 3, s * a * -i);
    // k = +1 entries (factor b)
    m.set(1, 0, s * b * i);
    m.set(2, 0, s * b * i);
    m.set(3, 1, -s * b * i);
    m.set(3, 2, -s * b * i);
    // k = -/+2 corners
    m.set(0, 3, -s2 * a * a * -i * C64::new(2.0, 0.0));
    m.set(3, 0, -s2 * b * b * i * C64::new(2.0, 0.0));
    m
}

/// H = i hbar omega (dR/dphi) R^dag with the analytic derivative.
pub fn hamiltonian(p: AngleParams, omega: f64, hbar: f64) -> CMatrix {
    let dr = r_matrix_dphi(p);
    (&dr * &r_matrix(p).dagger()).scale(C64::new(0.0, hbar * omega))
}

/// Central-difference cross-check of the analytic derivative route.
pub fn hamiltonian_fd(p: AngleParams, omega: f64, hbar: f64, step: f64) -> CMatrix {
    let plus = r_matrix(AngleParams {
        theta: p.theta,
        phi: p.phi + step,
    });
    let minus = r_matrix(AngleParams {
        theta: p.theta,
        phi: p.phi - step,
    });
    let dr = plus.sub(&minus).unwrap().scale(C64::new(0.5 / step, 0.0));
    (&dr * &r_matrix(p).dagger()).scale(C64::new(0.0, hbar * omega))
}

/// 2 hbar omega cos(vt) (n_x S1 + n_y S2 + n_z S3) on the qubit pair.
pub fn nmr_form(sp: &SpectralParams) -> CMatrix {
    let (splus, sminus, s3) = bmw::spin1_pair_ops();
    let half = C64::new(0.5, 0.0);
    let s1 = splus.add(&sminus).unwrap().scale(half);
    let s2 = splus.sub(&sminus).unwrap().scale(C64::new(0.0, -0.5));
    let (nx, ny, nz) = (
        sp.vartheta.sin() * sp.phi.cos(),
        sp.vartheta.sin() * sp.phi.sin(),
        sp.vartheta.cos(),
    );
    let pref = C64::new(2.0 * sp.hbar * sp.omega * sp.vartheta.cos(), 0.0);
    s1.scale(C64::new(nx, 0.0))
        .add(&s2.scale(C64::new(ny, 0.0)))
        .unwrap()
        .add(&s3.scale(C64::new(nz, 0.0)))
        .unwrap()
        .scale(pref)
}

/// Which instantaneous level a Berry phase refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpinLevel {
    Triplet(i8),
    Singlet,
}

impl SpinLevel {
    pub fn triplet(m_s: i8) -> Result<Self> {
        if !(-1..=1).contains(&m_s) {
            return Err(Error::InvalidSpinLevel(m_s));
        }
        Ok(Self::Triplet(m_s))
    }

    pub fn label(&self) -> String {
        match self {
            Self::Triplet(m) => format!("(1,{m:+})"),
            Self::Singlet => "(0,0)".into(),
        }
    }
}

/// Singlet-triplet basis states (psi_11, psi_10, psi_1-1, psi_00).
pub fn singlet_triplet_basis() -> [StateVector; 4] {
    let inv = C64::new(1.0 / 2.0f64.sqrt(), 0.0);
    [
        StateVector::basis_state(2, 0),
        StateVector::from_amplitudes(2, vec![ZERO, inv, inv, ZERO]).unwrap(),
        StateVector::basis_state(2, 3),
        StateVector::from_amplitudes(2, vec![ZERO, inv, -inv, ZERO]).unwrap(),
    ]
}

/// Closed-form instantaneous eigenstate, expanded in the singlet-triplet
/// basis exactly as the level scheme dictates.
fn eigenstate(vartheta: f64, phi: f64, level: SpinLevel) -> StateVector {
    let [t11, t10, t1m1, s00] = singlet_triplet_basis();
    let c2 = C64::new((vartheta / 2.0).cos().powi(2), 0.0);
    let s2 = C64::new((vartheta / 2.0).sin().powi(2), 0.0);
    let s = vartheta.sin();
    let inv2 = 1.0 / 2.0f64.sqrt();
    let a = phase(-phi); // e^{-i phi}
    match level {
        SpinLevel::Triplet(1) => t11
            .scale(c2 * a * a)
            .add(&t10.scale(C64::new(-s * inv2, 0.0) * a))
            .unwrap()
            .sub(&t1m1.scale(s2))
            .unwrap(),
        SpinLevel::Triplet(0) => t11
            .scale(C64::new(s * inv2, 0.0) * a)
            .add(&t10.scale(C64::new(vartheta.cos(), 0.0)))
            .unwrap()
            .add(&t1m1.scale(C64::new(s * inv2, 0.0) * a.conj()))
            .unwrap(),
        SpinLevel::Triplet(_) => t11
            .scale(s2)
            .add(&t10.scale(C64::new(s * inv2, 0.0) * a.conj()))
            .unwrap()
            .sub(&t1m1.scale(c2 * a.conj() * a.conj()))
            .unwrap(),
        SpinLevel::Singlet => s00,
    }
}

/// Instantaneous energies and eigenstates, ordered
/// (E_{1,+1}, E_{1,0}, E_{1,-1}, E_{0,0}).
#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub energies: [f64; 4],
    pub states: [StateVector; 4],
}

/// Tolerance on the eigen-residuals ||H v - E v||; a failure means the
/// closed forms were transcribed wrong.
const EIGEN_TOL: f64 = 1e-12;

pub fn eigensystem(sp: &SpectralParams) -> Result<EigenSystem> {
    let levels = [
        SpinLevel::Triplet(1),
        SpinLevel::Triplet(0),
        SpinLevel::Triplet(-1),
        SpinLevel::Singlet,
    ];
    let states = levels.map(|l| eigenstate(sp.vartheta, sp.phi, l));
    let energies = levels.map(|l| match l {
        SpinLevel::Triplet(m) => 2.0 * m as f64 * sp.hbar * sp.omega * sp.vartheta.cos(),
        SpinLevel::Singlet => 0.0,
    });

    let h = nmr_form(sp);
    for (k, (state, energy)) in states.iter().zip(energies).enumerate() {
        let hv = h.apply(state)?;
        let ev = state.scale(C64::new(energy, 0.0));
        let residual = hv.distance(&ev)?;
        if residual >= EIGEN_TOL {
            return Err(Error::InternalConsistency {
                context: format!("eigen-residual for state {k}"),
                residual,
            });
        }
    }
    Ok(EigenSystem { energies, states })
}

/// Solid angle swept by the Bloch vector: 2pi (1 - cos vt).
pub fn solid_angle(vartheta: f64) -> f64 {
    2.0 * PI * (1.0 - vartheta.cos())
}

/// gamma = -m_s * Omega for the triplet levels, 0 for the singlet.
pub fn berry_phase_analytic(vartheta: f64, level: SpinLevel) -> f64 {
    match level {
        SpinLevel::Triplet(m) => -(m as f64) * solid_angle(vartheta),
        SpinLevel::Singlet => 0.0,
    }
}

/// Outcome of a gauge-invariant numerical Berry-phase integration.
#[derive(Clone, Debug)]
pub struct BerryResult {
    pub level: SpinLevel,
    pub gamma_numeric: f64,
    pub gamma_analytic: f64,
    pub solid_angle: f64,
    pub steps: usize,
}

/// Discrete overlap-product Berry phase over a closed uniform phi-grid:
/// gamma = -sum_k Im ln <psi(phi_k)|psi(phi_{k+1})>, increments accumulated
/// without modular reduction so a full winding (-2pi) stays distinct from 0.
///
/// The loop states carry the gauge e^{2i m_s phi} on top of the closed
/// forms: in that gauge the component on the m' = m_s spin state is
/// phi-independent, and the accumulated winding equals -m_s * Omega.
/// (The ungauged closed forms wind by m_s * 2pi(1 + cos vt), the same value
/// mod 2pi.)
pub fn berry_phase_numeric(vartheta: f64, level: SpinLevel, steps: usize) -> Result<BerryResult> {
    if !(0.0..=PI).contains(&vartheta) {
        return Err(Error::VarthetaOutOfRange(vartheta));
    }
    if steps < 100 {
        return Err(Error::TooFewSteps(steps));
    }
    if let SpinLevel::Triplet(m) = level {
        SpinLevel::triplet(m)?;
    }

    let winding = match level {
        SpinLevel::Triplet(m) => m as f64 * 2.0,
        SpinLevel::Singlet => 0.0,
    };
    let state_at = |phi: f64| eigenstate(vartheta, phi, level).scale(phase(winding * phi));

    let mut total = 0.0;
    let mut prev = state_at(0.0);
    for k in 1..=steps {
        let phi = 2.0 * PI * k as f64 / steps as f64;
        let current = state_at(phi);
        let overlap = prev.inner(&current)?;
        let increment = -overlap.arg();
        if increment.abs() > PI / 2.0 {
            return Err(Error::WindingUnresolved {
                steps,
                phase: increment.abs(),
            });
        }
        total += increment;
        prev = current;
    }

    Ok(BerryResult {
        level,
        gamma_numeric: total,
        gamma_analytic: berry_phase_analytic(vartheta, level),
        solid_angle: solid_angle(vartheta),
        steps,
    })
}

/// Norm of the triplet-singlet off-diagonal blocks of a 4x4 operator,
/// zero when both subspaces are invariant.
pub fn subspace_offdiagonal_norm(h: &CMatrix) -> f64 {
    let basis = singlet_triplet_basis();
    let mut acc = 0.0;
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            // index 3 is the singlet
            if (i == 3) != (j == 3) {
                let hv = h.apply(bj).unwrap();
                acc += bi.inner(&hv).unwrap().norm_sqr();
            }
        }
    }
    acc.sqrt()
}
