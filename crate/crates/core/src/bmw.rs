//! Two-spin-1/2 realization of the Birman-Murakami-Wenzl algebra.
//!
//! The 4x4 Temperley-Lieb matrix E and braid matrix B are built twice: once
//! from their explicit entry tables and once from the operator expressions
//! E = (I - 2iX - Y)/2, B = e^{i3pi/4}(I + 2X + Y)/2 with
//! X = (e^{-i phi} S+ - e^{i phi} S-)/2 and Y = 2X^2 + I. The two routes must
//! agree entrywise; a disagreement is a transcription bug, not physics.
//!
//! Topological parameters: sigma = e^{i5pi/4} (the braid eigenvalue attached
//! to E), w = e^{i3pi/4} + e^{ipi/4} = sqrt(2) i, loop value
//! d = 1 - (sigma - sigma^{-1})/w = 2.

use std::f64::consts::FRAC_PI_4;

use crate::error::{Error, Result};
use crate::linalg::{phase, C64, CMatrix, StateVector, I, ONE, ZERO};
use crate::report::RelationReport;

/// Tolerance for the internal two-route construction consistency check.
const CONSTRUCTION_TOL: f64 = 1e-12;

/// sigma, w, d and the three braid eigenvalues, stored as computed complex
/// constants with d derived from the defining relation.
#[derive(Clone, Debug)]
pub struct AlgebraConstants {
    pub sigma: C64,
    pub w: C64,
    pub d: C64,
    /// lambda1 = e^{i5pi/4}, lambda2 = e^{i3pi/4} (double), lambda3 = e^{ipi/4}.
    pub braid_eigenvalues: [C64; 3],
}

impl AlgebraConstants {
    pub fn new() -> Self {
        let l1 = phase(5.0 * FRAC_PI_4);
        let l2 = phase(3.0 * FRAC_PI_4);
        let l3 = phase(FRAC_PI_4);
        let sigma = l1;
        let w = l2 + l3;
        let d = ONE - (sigma - ONE / sigma) / w;
        Self {
            sigma,
            w,
            d,
            braid_eigenvalues: [l1, l2, l3],
        }
    }

    /// |d - (1 - (sigma - sigma^{-1})/w)| with d replaced by its exact value 2.
    pub fn loop_value_residual(&self) -> f64 {
        (self.d - C64::new(2.0, 0.0)).norm()
    }
}

impl Default for AlgebraConstants {
    fn default() -> Self {
        Self::new()
    }
}

/// Single-site spin-1/2 ladder and z operators in the (up, down) basis:
/// s+ = [[0,1],[0,0]], s- = (s+)^dag, s3 = diag(1/2, -1/2).
pub fn spin_half_ops() -> (CMatrix, CMatrix, CMatrix) {
    let half = C64::new(0.5, 0.0);
    let sp = CMatrix::from_rows(vec![vec![ZERO, ONE], vec![ZERO, ZERO]]).unwrap();
    let sm = sp.dagger();
    let s3 = CMatrix::from_rows(vec![vec![half, ZERO], vec![ZERO, -half]]).unwrap();
    (sp, sm, s3)
}

/// Spin-1 operators realized on a qubit pair:
/// S+ = -2(s1+ s2^3 + s1^3 s2+), S- = (S+)^dag, S3 = s1^3 + s2^3.
pub fn spin1_pair_ops() -> (CMatrix, CMatrix, CMatrix) {
    let (sp, _, s3) = spin_half_ops();
    let i2 = CMatrix::identity(2);
    let big_sp = sp
        .kron(&s3)
        .add(&s3.kron(&sp))
        .unwrap()
        .scale(C64::new(-2.0, 0.0));
    let big_sm = big_sp.dagger();
    let big_s3 = s3.kron(&i2).add(&i2.kron(&s3)).unwrap();
    (big_sp, big_sm, big_s3)
}

/// X = (e^{-i phi} S+ - e^{i phi} S-)/2 (anti-Hermitian) and Y = 2X^2 + I.
pub fn xy_ops(phi: f64) -> (CMatrix, CMatrix) {
    let (sp, sm, _) = spin1_pair_ops();
    let half = C64::new(0.5, 0.0);
    let x = sp
        .scale(phase(-phi))
        .sub(&sm.scale(phase(phi)))
        .unwrap()
        .scale(half);
    let y = (&x * &x)
        .scale(C64::new(2.0, 0.0))
        .add(&CMatrix::identity(4))
        .unwrap();
    (x, y)
}

/// |psi_d> = (e^{-i phi}|uu> - i|ud> - i|du> + e^{i phi}|dd>)/2, the cup
/// state whose scaled projector is E.
pub fn psi_d(phi: f64) -> StateVector {
    let half = C64::new(0.5, 0.0);
    StateVector::from_amplitudes(
        2,
        vec![
            half * phase(-phi),
            half * -I,
            half * -I,
            half * phase(phi),
        ],
    )
    .unwrap()
}

/// Explicit entry table for E.
fn e_from_entries(phi: f64) -> CMatrix {
    let a = phase(-phi); // e^{-i phi}
    let b = phase(phi);
    let h = C64::new(0.5, 0.0);
    CMatrix::from_rows(vec![
        vec![h, h * I * a, h * I * a, h * a * a],
        vec![-h * I * b, h, h, -h * I * a],
        vec![-h * I * b, h, h, -h * I * a],
        vec![h * b * b, h * I * b, h * I * b, h],
    ])
    .unwrap()
}

/// Explicit entry table for B, prefactor e^{i3pi/4}/2.
fn b_from_entries(phi: f64) -> CMatrix {
    let a = phase(-phi);
    let b = phase(phi);
    let p = phase(3.0 * FRAC_PI_4) * C64::new(0.5, 0.0);
    CMatrix::from_rows(vec![
        vec![p, -p * a, -p * a, -p * a * a],
        vec![p * b, p, -p, p * a],
        vec![p * b, -p, p, p * a],
        vec![-p * b * b, -p * b, -p * b, p],
    ])
    .unwrap()
}

/// The generator pair at a given phi, with its inverse, the X/Y operators
/// and the cup state.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub phi: f64,
    pub e: CMatrix,
    pub b: CMatrix,
    pub b_inv: CMatrix,
    pub x: CMatrix,
    pub y: CMatrix,
    pub psi_d: StateVector,
}

/// Build E and B from both the entry tables and the X/Y operator
/// expressions and insist they agree; B^{-1} is taken as B^dag after a
/// unitarity check rather than by generic inversion.
pub fn generators(phi: f64) -> Result<GeneratorSet> {
    if !phi.is_finite() {
        return Err(Error::NonFinite);
    }
    let e = e_from_entries(phi);
    let b = b_from_entries(phi);

    let (x, y) = xy_ops(phi);
    let i4 = CMatrix::identity(4);
    let half = C64::new(0.5, 0.0);
    let e_op = i4
        .sub(&x.scale(C64::new(0.0, 2.0)))
        .unwrap()
        .sub(&y)
        .unwrap()
        .scale(half);
    let b_op = i4
        .add(&x.scale(C64::new(2.0, 0.0)))
        .unwrap()
        .add(&y)
        .unwrap()
        .scale(half * phase(3.0 * FRAC_PI_4));

    let e_gap = e.frobenius_distance(&e_op)?;
    if e_gap >= CONSTRUCTION_TOL {
        return Err(Error::InternalConsistency {
            context: "E entries vs operator expression".into(),
            residual: e_gap,
        });
    }
    let b_gap = b.frobenius_distance(&b_op)?;
    if b_gap >= CONSTRUCTION_TOL {
        return Err(Error::InternalConsistency {
            context: "B entries vs operator expression".into(),
            residual: b_gap,
        });
    }

    let b_inv = b.dagger();
    let unitarity = (&b * &b_inv).frobenius_distance(&i4)?;
    if unitarity >= CONSTRUCTION_TOL {
        return Err(Error::InternalConsistency {
            context: "B unitarity".into(),
            residual: unitarity,
        });
    }

    Ok(GeneratorSet {
        phi,
        e,
        b,
        b_inv,
        x,
        y,
        psi_d: psi_d(phi),
    })
}

/// One report per defining relation instance on a 2^n-dimensional chain,
/// each distinct relation checked once per valid site pair. For n >= 4 the
/// disjoint-site commutators are included as well.
pub fn verify_bmw_relations(n: usize, phi: f64, tol: f64) -> Result<Vec<RelationReport>> {
    if n < 3 {
        return Err(Error::ChainTooShort(n));
    }
    let gens = generators(phi)?;
    let consts = AlgebraConstants::new();
    let dim = 1 << n;
    let id = CMatrix::identity(dim);

    let embed = |op: &CMatrix, site: usize| op.embed_two_site(site, n).unwrap();
    let e: Vec<CMatrix> = (1..n).map(|i| embed(&gens.e, i)).collect();
    let b: Vec<CMatrix> = (1..n).map(|i| embed(&gens.b, i)).collect();
    let binv: Vec<CMatrix> = (1..n).map(|i| embed(&gens.b_inv, i)).collect();

    let mut reports = Vec::new();
    let mut push = |name: String, lhs: &CMatrix, rhs: &CMatrix| {
        let residual = lhs.frobenius_distance(rhs).unwrap();
        reports.push(RelationReport::new(name, residual, tol, dim));
    };

    for i in 0..n - 1 {
        let s = i + 1; // 1-based site label for report names
        push(
            format!("B{s} - B{s}^-1 = w(I - E{s})"),
            &b[i].sub(&binv[i]).unwrap(),
            &id.sub(&e[i]).unwrap().scale(consts.w),
        );
        push(
            format!("E{s} B{s} = sigma E{s}"),
            &(&e[i] * &b[i]),
            &e[i].scale(consts.sigma),
        );
        push(
            format!("B{s} E{s} = sigma E{s}"),
            &(&b[i] * &e[i]),
            &e[i].scale(consts.sigma),
        );
        push(
            format!("E{s}^2 = d E{s}"),
            &(&e[i] * &e[i]),
            &e[i].scale(consts.d),
        );
    }

    // ordered neighbor pairs (i, j = i +/- 1)
    let pairs: Vec<(usize, usize)> = (0..n - 1)
        .flat_map(|i| {
            let mut v = Vec::new();
            if i + 1 < n - 1 {
                v.push((i, i + 1));
            }
            if i >= 1 {
                v.push((i, i - 1));
            }
            v
        })
        .collect();

    for &(i, j) in &pairs {
        let (si, sj) = (i + 1, j + 1);
        push(
            format!("E{si} E{sj} E{si} = E{si}"),
            &(&(&e[i] * &e[j]) * &e[i]),
            &e[i],
        );
        if j > i {
            // the mirrored pair is the identical equation
            push(
                format!("B{si} B{sj} B{si} = B{sj} B{si} B{sj}"),
                &(&(&b[i] * &b[j]) * &b[i]),
                &(&(&b[j] * &b[i]) * &b[j]),
            );
        }
        push(
            format!("B{sj} B{si} E{sj} = E{si} E{sj}"),
            &(&(&b[j] * &b[i]) * &e[j]),
            &(&e[i] * &e[j]),
        );
        push(
            format!("E{si} B{sj} B{si} = E{si} E{sj}"),
            &(&(&e[i] * &b[j]) * &b[i]),
            &(&e[i] * &e[j]),
        );
        push(
            format!("B{sj} E{si} B{sj} = B{si}^-1 E{sj} B{si}^-1"),
            &(&(&b[j] * &e[i]) * &b[j]),
            &(&(&binv[i] * &e[j]) * &binv[i]),
        );
    }

    // far commutation on longer chains
    for i in 0..n - 1 {
        for k in i + 2..n - 1 {
            let (si, sk) = (i + 1, k + 1);
            push(
                format!("[E{si}, E{sk}] = 0"),
                &(&e[i] * &e[k]),
                &(&e[k] * &e[i]),
            );
            push(
                format!("[B{si}, B{sk}] = 0"),
                &(&b[i] * &b[k]),
                &(&b[k] * &b[i]),
            );
            push(
                format!("[E{si}, B{sk}] = 0"),
                &(&e[i] * &b[k]),
                &(&b[k] * &e[i]),
            );
        }
    }

    Ok(reports)
}

/// Spectrum checks of the 4x4 braid matrix: minimal polynomial
/// (B - l1)(B - l2)(B - l3) = 0, trace = l1 + 2 l2 + l3, and the
/// degeneracy of l2 via a Gaussian-elimination rank of B - l2 I.
pub fn verify_braid_spectrum(phi: f64, tol: f64) -> Result<Vec<RelationReport>> {
    let gens = generators(phi)?;
    let consts = AlgebraConstants::new();
    let [l1, l2, l3] = consts.braid_eigenvalues;
    let i4 = CMatrix::identity(4);

    let shifted = |l: C64| gens.b.sub(&i4.scale(l)).unwrap();
    let minpoly = &(&shifted(l1) * &shifted(l2)) * &shifted(l3);
    let trace_gap = (gens.b.trace().unwrap() - (l1 + l2 + l2 + l3)).norm();
    let rank = shifted(l2).rank(1e-8);

    Ok(vec![
        RelationReport::new(
            "(B - l1)(B - l2)(B - l3) = 0",
            minpoly.frobenius_norm(),
            tol,
            4,
        ),
        RelationReport::new("tr B = l1 + 2 l2 + l3", trace_gap, tol, 4),
        RelationReport::new(
            "rank(B - l2 I) = 2",
            (rank as f64 - 2.0).abs(),
            0.5,
            4,
        ),
    ])
}

/// Commutator helper used in tests and by the spectral module checks.
pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    (a * b).sub(&(b * a)).unwrap()
}
