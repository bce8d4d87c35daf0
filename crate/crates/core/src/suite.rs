//! Suite runners behind the CLI: assemble relation reports into a
//! machine-readable record with a config echo and pass/fail summary.
//!
//! Determinism contract: identical (config, seed) produces identical
//! reports byte for byte; wall time is isolated in the single
//! `elapsed_ms` field. Randomness comes from ChaCha8 seeded with the
//! config seed, theta drawn uniformly from (-pi+0.1, pi-0.1) to stay off
//! the velocity poles, phi from [0, 2pi). Reports are sorted by name, so
//! assembly order never depends on evaluation order.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::{phase, CMatrix};
use crate::report::RelationReport;
use crate::spectral::{berry_phase_numeric, solid_angle, SpinLevel};
use crate::topo;
use crate::ybe::{self, AngleParams};
use crate::{bmw, Result};

/// Echo of the parameters a suite ran with.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub command: String,
    pub n: Option<usize>,
    pub phi: Option<f64>,
    pub random: Option<usize>,
    pub theta1: Option<f64>,
    pub theta3: Option<f64>,
    pub seed: u64,
    pub tol: f64,
    pub berry_steps: Option<usize>,
}

impl SuiteConfig {
    fn new(command: &str, seed: u64, tol: f64) -> Self {
        Self {
            command: command.into(),
            n: None,
            phi: None,
            random: None,
            theta1: None,
            theta3: None,
            seed,
            tol,
            berry_steps: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: SuiteConfig,
    pub reports: Vec<RelationReport>,
    pub summary: Summary,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    fn assemble(
        suite: &str,
        config: SuiteConfig,
        mut reports: Vec<RelationReport>,
        started: Instant,
    ) -> Self {
        reports.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = reports.iter().filter(|r| r.passed).count();
        let failed = reports.len() - passed;
        Self {
            suite: suite.into(),
            config,
            reports,
            summary: Summary { passed, failed },
            elapsed_ms: started.elapsed().as_millis() as u64,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

/// Either a single caller-chosen phi or a count of seeded draws.
#[derive(Clone, Copy, Debug)]
pub enum PhiSpec {
    Fixed(f64),
    Random(usize),
}

fn draw_phis(spec: PhiSpec, rng: &mut ChaCha8Rng) -> Vec<f64> {
    match spec {
        PhiSpec::Fixed(phi) => vec![phi],
        PhiSpec::Random(count) => (0..count).map(|_| rng.random_range(0.0..2.0 * PI)).collect(),
    }
}

fn draw_theta(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(-PI + 0.1..PI - 0.1)
}

/// Defining relations plus braid-spectrum checks, per phi sample.
pub fn algebra_suite(n: usize, phi: PhiSpec, tol: f64, seed: u64) -> Result<SuiteReport> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut config = SuiteConfig::new("verify-algebra", seed, tol);
    config.n = Some(n);
    match phi {
        PhiSpec::Fixed(p) => config.phi = Some(p),
        PhiSpec::Random(c) => config.random = Some(c),
    }

    let mut reports = Vec::new();
    for phi in draw_phis(phi, &mut rng) {
        let tag = format!(" [phi={phi:.6}]");
        for mut r in bmw::verify_bmw_relations(n, phi, tol)? {
            r.name.push_str(&tag);
            reports.push(r);
        }
        for mut r in bmw::verify_braid_spectrum(phi, tol)? {
            r.name.push_str(&tag);
            reports.push(r);
        }
    }
    Ok(SuiteReport::assemble("verify-algebra", config, reports, started))
}

/// YBE residuals for an explicit triple or seeded random triples, plus the
/// boundary identities R(0) = I and R(pi/2) = e^{-i3pi/4} B.
pub fn ybe_suite(
    explicit: Option<(f64, f64, f64)>,
    random: Option<usize>,
    tol: f64,
    seed: u64,
) -> Result<SuiteReport> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut config = SuiteConfig::new("verify-ybe", seed, tol);

    let mut triples = Vec::new();
    if let Some((t1, t3, phi)) = explicit {
        config.theta1 = Some(t1);
        config.theta3 = Some(t3);
        config.phi = Some(phi);
        triples.push((t1, t3, phi));
    } else {
        let count = random.unwrap_or(100);
        config.random = Some(count);
        for _ in 0..count {
            triples.push((draw_theta(&mut rng), draw_theta(&mut rng), rng.random_range(0.0..2.0 * PI)));
        }
    }

    let boundary_phi = triples.first().map_or(0.0, |t| t.2);
    let mut reports = boundary_reports(boundary_phi, tol);
    for (k, (t1, t3, phi)) in triples.iter().enumerate() {
        let mut r = ybe::check_ybe(*t1, *t3, *phi, tol)?;
        r.name = format!("YBE sample {k:04} (th1={t1:.4}, th3={t3:.4}, phi={phi:.4})");
        reports.push(r);
    }
    Ok(SuiteReport::assemble("verify-ybe", config, reports, started))
}

fn boundary_reports(phi: f64, tol: f64) -> Vec<RelationReport> {
    let i4 = CMatrix::identity(4);
    let at_zero = ybe::r_matrix(AngleParams { theta: 0.0, phi });
    let at_braid = ybe::r_matrix(AngleParams {
        theta: FRAC_PI_2,
        phi,
    });
    let b = bmw::generators(phi).unwrap().b.scale(phase(-3.0 * FRAC_PI_4));
    vec![
        RelationReport::new(
            format!("R(0, phi) = I [phi={phi:.6}]"),
            at_zero.frobenius_distance(&i4).unwrap(),
            tol,
            4,
        ),
        RelationReport::new(
            format!("R(pi/2, phi) = e^-i3pi/4 B [phi={phi:.6}]"),
            at_braid.frobenius_distance(&b).unwrap(),
            tol,
            4,
        ),
    ]
}

/// Gram, reference-matrix match, reduced relations, reduced YBE, Wigner and
/// intertwining checks, per phi sample.
pub fn topo_suite(phi: PhiSpec, tol: f64, seed: u64) -> Result<SuiteReport> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut config = SuiteConfig::new("topo", seed, tol);
    match phi {
        PhiSpec::Fixed(p) => config.phi = Some(p),
        PhiSpec::Random(c) => config.random = Some(c),
    }

    let theta_grid: Vec<f64> = (0..19).map(|k| -PI + 2.0 * PI * k as f64 / 18.0).collect();
    let mut reports = Vec::new();
    for phi in draw_phis(phi, &mut rng) {
        let tag = format!(" [phi={phi:.6}]");
        let basis = topo::topo_basis(phi);
        reports.push(RelationReport::new(
            format!("Gram(e1,e2,e3) = I{tag}"),
            basis.gram_residual,
            topo::GRAM_TOL,
            3,
        ));

        match topo::reduced_generators(phi) {
            Ok(set) => {
                for (name, residual) in set.reference_residuals() {
                    reports.push(RelationReport::new(
                        format!("reduced {name} matches reference{tag}"),
                        residual,
                        tol,
                        3,
                    ));
                }
                for (name, residual) in topo::reduced_relation_residuals(&set) {
                    reports.push(RelationReport::new(format!("{name}{tag}"), residual, tol, 3));
                }
            }
            Err(e) => {
                reports.push(RelationReport::new(
                    format!("reduced matrices match reference{tag} ({e})"),
                    f64::INFINITY,
                    tol,
                    3,
                ));
            }
        }

        for k in 0..5 {
            let (t1, t3) = (draw_theta(&mut rng), draw_theta(&mut rng));
            let mut r = topo::check_reduced_ybe(t1, t3, phi, tol)?;
            r.name = format!("reduced YBE sample {k} (th1={t1:.4}, th3={t3:.4}){tag}");
            reports.push(r);
        }

        let mut wigner_worst = 0.0f64;
        let mut intertwine_worst = 0.0f64;
        let mut hamiltonian_worst = 0.0f64;
        for &theta in &theta_grid {
            let conj = &(&topo::wigner_phase(phi) * &topo::wigner_d1(theta))
                * &topo::wigner_phase(phi).dagger();
            wigner_worst = wigner_worst
                .max(conj.frobenius_distance(&topo::script_b(theta, phi)).unwrap());

            let gauged = topo::reduce_r2_gauged(theta, phi)?;
            intertwine_worst = intertwine_worst
                .max(gauged.frobenius_distance(&topo::script_b(theta, phi)).unwrap());
            let raw1 = topo::reduce_r1(theta, phi)?;
            intertwine_worst =
                intertwine_worst.max(raw1.frobenius_distance(&topo::script_a(theta)).unwrap());

            let h = topo::reduced_hamiltonian(theta, phi, 1.0, 1.0);
            let vt = (PI - theta) / 2.0;
            hamiltonian_worst = hamiltonian_worst
                .max(h.frobenius_distance(&topo::reduced_nmr_form(vt, phi, 1.0, 1.0)).unwrap());
        }
        reports.push(RelationReport::new(
            format!("B(theta,phi) = Phi d1 Phi^dag over theta grid{tag}"),
            wigner_worst,
            tol,
            3,
        ));
        reports.push(RelationReport::new(
            format!("reduction intertwines Yang-Baxterization{tag}"),
            intertwine_worst,
            tol,
            3,
        ));
        reports.push(RelationReport::new(
            format!("H_T gauge form = NMR form over theta grid{tag}"),
            hamiltonian_worst,
            tol,
            3,
        ));
    }
    Ok(SuiteReport::assemble("topo", config, reports, started))
}

// ---- sweeps -------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct EntangleRow {
    pub theta: f64,
    pub phi: f64,
    pub c_measured: f64,
    pub c_expected: f64,
    /// Worst deviation over all four basis states at this (theta, phi).
    pub abs_error: f64,
}

/// Concurrence sweep over a uniform theta grid on [0, pi] and seeded phi
/// draws; c_measured is the first basis state, abs_error the worst of the
/// four.
pub fn entangle_sweep(theta_points: usize, phi_count: usize, seed: u64) -> Vec<EntangleRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phis: Vec<f64> = (0..phi_count).map(|_| rng.random_range(0.0..2.0 * PI)).collect();
    let mut rows = Vec::with_capacity(theta_points * phi_count);
    for k in 0..theta_points {
        let theta = if theta_points == 1 {
            0.0
        } else {
            PI * k as f64 / (theta_points - 1) as f64
        };
        let expected = theta.sin().powi(2);
        for &phi in &phis {
            let basis = ybe::entangled_basis(AngleParams { theta, phi });
            let cs: Vec<f64> = basis
                .states
                .iter()
                .map(|s| ybe::concurrence(s).unwrap())
                .collect();
            let abs_error = cs
                .iter()
                .map(|c| (c - expected).abs())
                .fold(0.0f64, f64::max);
            rows.push(EntangleRow {
                theta,
                phi,
                c_measured: cs[0],
                c_expected: expected,
                abs_error,
            });
        }
    }
    rows
}

#[derive(Clone, Debug)]
pub struct BerryRow {
    pub vartheta: f64,
    /// Rendered in the m_s CSV column as -1, 0, 1 or "singlet".
    pub level: SpinLevel,
    pub gamma_numeric: f64,
    pub gamma_analytic: f64,
    pub abs_error: f64,
    pub solid_angle: f64,
}

/// Ten vartheta values spanning [0.1, 3.0], including the full-winding
/// point vartheta = pi/2 where gamma_{1,1} = -2pi.
pub fn berry_vartheta_grid() -> Vec<f64> {
    vec![0.1, 0.4, 0.7, 1.0, 1.3, FRAC_PI_2, 1.9, 2.2, 2.6, 3.0]
}

/// Berry-phase sweep: numeric vs analytic over the vartheta grid for all
/// triplet levels plus the singlet.
pub fn berry_sweep(steps: usize) -> Result<Vec<BerryRow>> {
    let mut rows = Vec::new();
    let levels = [
        SpinLevel::Triplet(-1),
        SpinLevel::Triplet(0),
        SpinLevel::Triplet(1),
        SpinLevel::Singlet,
    ];
    for vt in berry_vartheta_grid() {
        for level in levels {
            let r = berry_phase_numeric(vt, level, steps)?;
            rows.push(BerryRow {
                vartheta: vt,
                level,
                gamma_numeric: r.gamma_numeric,
                gamma_analytic: r.gamma_analytic,
                abs_error: (r.gamma_numeric - r.gamma_analytic).abs(),
                solid_angle: solid_angle(vt),
            });
        }
    }
    Ok(rows)
}

/// Entangle sweep folded into a reported suite for the `all` command.
pub fn entangle_suite(theta_points: usize, phi_count: usize, tol: f64, seed: u64) -> SuiteReport {
    let started = Instant::now();
    let mut config = SuiteConfig::new("entangle", seed, tol);
    config.random = Some(phi_count);
    let rows = entangle_sweep(theta_points, phi_count, seed);
    let worst = rows.iter().map(|r| r.abs_error).fold(0.0f64, f64::max);
    let at_braid = rows
        .iter()
        .filter(|r| (r.theta - FRAC_PI_2).abs() < 1e-9)
        .map(|r| (r.c_measured - 1.0).abs())
        .fold(0.0f64, f64::max);
    let reports = vec![
        RelationReport::new(
            format!("C = sin^2 theta over {theta_points} theta x {phi_count} phi"),
            worst,
            tol,
            4,
        ),
        RelationReport::new("C(pi/2) = 1 (maximal entanglement)", at_braid, tol, 4),
    ];
    SuiteReport::assemble("entangle", config, reports, started)
}

/// Berry sweep folded into a reported suite for the `all` command.
pub fn berry_suite(steps: usize, tol: f64, seed: u64) -> Result<SuiteReport> {
    let started = Instant::now();
    let mut config = SuiteConfig::new("berry", seed, tol);
    config.berry_steps = Some(steps);
    let reports = berry_sweep(steps)?
        .into_iter()
        .map(|row| {
            let law = match row.level {
                SpinLevel::Triplet(_) => "-m_s Omega",
                SpinLevel::Singlet => "0",
            };
            RelationReport::new(
                format!(
                    "gamma{} = {law} at vartheta={:.6}",
                    row.level.label(),
                    row.vartheta
                ),
                row.abs_error,
                tol,
                4,
            )
        })
        .collect();
    Ok(SuiteReport::assemble("berry", config, reports, started))
}

/// Round-trip-exact decimal formatting for CSV (17 significant digits).
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn entangle_csv(rows: &[EntangleRow]) -> String {
    let mut out = String::from("theta,phi,c_measured,c_expected,abs_error\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            format_f64(r.theta),
            format_f64(r.phi),
            format_f64(r.c_measured),
            format_f64(r.c_expected),
            format_f64(r.abs_error)
        ));
    }
    out
}

pub fn berry_csv(rows: &[BerryRow]) -> String {
    let mut out = String::from("vartheta,m_s,gamma_numeric,gamma_analytic,abs_error,solid_angle\n");
    for r in rows {
        let m_s = match r.level {
            SpinLevel::Triplet(m) => m.to_string(),
            SpinLevel::Singlet => "singlet".to_string(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            format_f64(r.vartheta),
            m_s,
            format_f64(r.gamma_numeric),
            format_f64(r.gamma_analytic),
            format_f64(r.abs_error),
            format_f64(r.solid_angle)
        ));
    }
    out
}
