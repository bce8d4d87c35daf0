//! Dense complex linear algebra on the small spaces the verification needs:
//! 2^n-dimensional qubit chains (n <= 4) and the 3-dimensional topological
//! space. Row-major storage, double precision throughout.
//!
//! Convention fixed here and used everywhere: qubit 1 is the most
//! significant bit of the amplitude index, i.e. the leftmost tensor factor.

use num_complex::Complex;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

pub const ZERO: C64 = Complex::new(0.0, 0.0);
pub const ONE: C64 = Complex::new(1.0, 0.0);
pub const I: C64 = Complex::new(0.0, 1.0);

/// e^{i a} as an exact-as-possible double pair.
pub fn phase(a: f64) -> C64 {
    Complex::from_polar(1.0, a)
}

fn all_finite(entries: &[C64]) -> bool {
    entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ONE);
        }
        m
    }

    /// Build from nested rows, rejecting ragged shapes and non-finite entries.
    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    left_rows: r,
                    left_cols: c,
                    right_rows: 1,
                    right_cols: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        if !all_finite(&data) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows: r, cols: c, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    /// Checked matrix product.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Kronecker product; dims multiply, self is the left (more significant) factor.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn trace(&self) -> Result<C64> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// sqrt(sum |a_ij - b_ij|^2); zero iff entrywise equal.
    pub fn frobenius_distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.frobenius_norm())
    }

    /// Matrix exponential by truncated Taylor series, sum_{k<terms} M^k/k!.
    ///
    /// If ||M||_F > 1 the argument is halved until it is not, and the result
    /// squared back, so 30 terms hold truncation below 1e-12 over the
    /// theta in [-pi, pi] range the R-matrices use.
    pub fn taylor_exp(&self, terms: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if terms == 0 {
            return Err(Error::NoTerms);
        }
        let mut halvings = 0u32;
        let mut norm = self.frobenius_norm();
        while norm > 1.0 {
            norm /= 2.0;
            halvings += 1;
        }
        let scaled = self.scale(Complex::new(0.5f64.powi(halvings as i32), 0.0));

        let n = self.rows;
        let mut sum = Self::identity(n);
        let mut term = Self::identity(n);
        for k in 1..terms {
            term = term.matmul(&scaled)?.scale(Complex::new(1.0 / k as f64, 0.0));
            sum = sum.add(&term)?;
        }
        for _ in 0..halvings {
            sum = sum.matmul(&sum)?;
        }
        Ok(sum)
    }

    /// Embed a 4x4 two-site operator at qubits (site, site+1) of an n-qubit
    /// chain: I x ... x op x ... x I, qubit 1 leftmost.
    pub fn embed_two_site(&self, site: usize, chain: usize) -> Result<Self> {
        if self.rows != 4 || self.cols != 4 {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if site == 0 || site + 1 > chain {
            return Err(Error::SiteOutOfRange { site, chain });
        }
        let left = CMatrix::identity(1 << (site - 1));
        let right = CMatrix::identity(1 << (chain - site - 1));
        Ok(left.kron(self).kron(&right))
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: v.dim(),
                right_cols: 1,
            });
        }
        let amps: Vec<C64> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v.amplitude(j)).sum())
            .collect();
        Ok(StateVector {
            qubits: if self.rows == v.dim() { v.qubits } else { None },
            amps,
        })
    }

    /// Numerical rank by Gaussian elimination with partial pivoting.
    ///
    /// A pivot below `tol` times the largest initial entry counts as zero.
    pub fn rank(&self, tol: f64) -> usize {
        let mut m = self.clone();
        let scale = m
            .data
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max)
            .max(1.0);
        let threshold = tol * scale;
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            let mut pivot = row;
            let mut best = 0.0;
            for r in row..m.rows {
                let mag = m.get(r, col).norm();
                if mag > best {
                    best = mag;
                    pivot = r;
                }
            }
            if best <= threshold {
                continue;
            }
            if pivot != row {
                for c in 0..m.cols {
                    let (a, b) = (m.get(row, c), m.get(pivot, c));
                    m.set(row, c, b);
                    m.set(pivot, c, a);
                }
            }
            let inv = ONE / m.get(row, col);
            for r in row + 1..m.rows {
                let factor = m.get(r, col) * inv;
                if factor == ZERO {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c) - factor * m.get(row, c);
                    m.set(r, c, v);
                }
            }
            rank += 1;
            row += 1;
            if row == m.rows {
                break;
            }
        }
        rank
    }
}

impl std::ops::Mul for &CMatrix {
    type Output = CMatrix;

    /// Unchecked product for internal fixed-dimension formulas.
    /// Panics on dimension mismatch; use `matmul` at the API boundary.
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs).expect("operator dimension mismatch")
    }
}

/// Complex state vector, optionally tagged as an n-qubit register.
///
/// Qubit-tagged vectors have length 2^n with qubit 1 the most significant
/// index bit; untagged vectors carry states of non-qubit spaces such as the
/// 3-dimensional topological space.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    qubits: Option<usize>,
    amps: Vec<C64>,
}

impl StateVector {
    pub fn from_amplitudes(qubits: usize, amps: Vec<C64>) -> Result<Self> {
        if amps.len() != 1 << qubits {
            return Err(Error::BadAmplitudeCount {
                qubits,
                len: amps.len(),
            });
        }
        if !all_finite(&amps) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            qubits: Some(qubits),
            amps,
        })
    }

    /// A vector in a plain d-dimensional space, no qubit structure.
    pub fn from_raw(amps: Vec<C64>) -> Result<Self> {
        if !all_finite(&amps) {
            return Err(Error::NonFinite);
        }
        Ok(Self { qubits: None, amps })
    }

    /// Computational basis state |index> on n qubits.
    pub fn basis_state(qubits: usize, index: usize) -> Self {
        let mut amps = vec![ZERO; 1 << qubits];
        amps[index] = ONE;
        Self {
            qubits: Some(qubits),
            amps,
        }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn qubits(&self) -> Option<usize> {
        self.qubits
    }

    #[inline]
    pub fn amplitude(&self, i: usize) -> C64 {
        self.amps[i]
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    /// <self|other>, conjugate-linear in self.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left_rows: self.dim(),
                left_cols: 1,
                right_rows: other.dim(),
                right_cols: 1,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            qubits: self.qubits,
            amps: self.amps.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left_rows: self.dim(),
                left_cols: 1,
                right_rows: other.dim(),
                right_cols: 1,
            });
        }
        Ok(Self {
            qubits: self.qubits,
            amps: self
                .amps
                .iter()
                .zip(&other.amps)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-ONE))
    }

    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.norm())
    }

    /// Tensor product; self becomes the more significant factor.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        let qubits = match (self.qubits, other.qubits) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Self { qubits, amps }
    }

    /// Outer product |self><other|.
    pub fn outer(&self, other: &Self) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim(), other.dim());
        for i in 0..self.dim() {
            for j in 0..other.dim() {
                m.set(i, j, self.amps[i] * other.amps[j].conj());
            }
        }
        m
    }

    /// Move the amplitude at each bit-string to its image under the qubit
    /// permutation; norm and inner products are preserved.
    pub fn permute_qubits(&self, p: &QubitPermutation) -> Result<Self> {
        let n = self.qubits.ok_or(Error::ArityMismatch {
            perm: p.arity(),
            qubits: 0,
        })?;
        if p.arity() != n {
            return Err(Error::ArityMismatch {
                perm: p.arity(),
                qubits: n,
            });
        }
        let mut amps = vec![ZERO; self.amps.len()];
        for (idx, &a) in self.amps.iter().enumerate() {
            // bit of source qubit q (1-based) sits at position n-q from the LSB
            let mut target = 0usize;
            for q in 1..=n {
                let bit = (idx >> (n - q)) & 1;
                target |= bit << (n - p.target_of(q));
            }
            amps[target] = a;
        }
        Ok(Self {
            qubits: self.qubits,
            amps,
        })
    }
}

/// Bijection on qubit positions 1..=n, stored as source -> target.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitPermutation {
    targets: Vec<usize>,
}

impl QubitPermutation {
    pub fn new(targets: Vec<usize>) -> Result<Self> {
        let n = targets.len();
        let mut seen = vec![false; n + 1];
        for &t in &targets {
            if t == 0 || t > n || seen[t] {
                return Err(Error::NotAPermutation(targets.clone()));
            }
            seen[t] = true;
        }
        Ok(Self { targets })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            targets: (1..=n).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.targets.len()
    }

    /// Target position of source qubit q (1-based).
    pub fn target_of(&self, q: usize) -> usize {
        self.targets[q - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        Complex::new(re, im)
    }

    #[test]
    fn kron_identity_cases() {
        let i2 = CMatrix::identity(2);
        assert_eq!(i2.kron(&i2), CMatrix::identity(4));

        let sz = CMatrix::from_rows(vec![vec![ONE, ZERO], vec![ZERO, -ONE]]).unwrap();
        let embedded = sz.kron(&i2);
        let expected = CMatrix::from_rows(vec![
            vec![ONE, ZERO, ZERO, ZERO],
            vec![ZERO, ONE, ZERO, ZERO],
            vec![ZERO, ZERO, -ONE, ZERO],
            vec![ZERO, ZERO, ZERO, -ONE],
        ])
        .unwrap();
        assert_eq!(embedded, expected);
    }

    #[test]
    fn matmul_identity_and_mismatch() {
        let m = CMatrix::from_rows(vec![vec![c(1.0, 2.0), c(0.0, -1.0)], vec![c(3.0, 0.0), c(0.5, 0.5)]])
            .unwrap();
        let i2 = CMatrix::identity(2);
        assert_eq!(i2.matmul(&m).unwrap(), m);

        let tall = CMatrix::zeros(3, 2);
        assert!(matches!(
            tall.matmul(&tall),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn dagger_involution() {
        let m = CMatrix::from_rows(vec![vec![c(1.0, 2.0), c(0.0, -1.0)], vec![c(3.0, 0.0), c(0.5, 0.5)]])
            .unwrap();
        assert_eq!(m.dagger().dagger(), m);
        assert_eq!(CMatrix::identity(3).dagger(), CMatrix::identity(3));
    }

    #[test]
    fn frobenius_direct_values() {
        let i2 = CMatrix::identity(2);
        assert_eq!(i2.frobenius_distance(&i2).unwrap(), 0.0);
        let z2 = CMatrix::zeros(2, 2);
        assert!((i2.frobenius_distance(&z2).unwrap() - 2.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn embed_boundaries() {
        let op = CMatrix::identity(4);
        assert_eq!(op.embed_two_site(1, 2).unwrap(), op);
        assert_eq!(op.embed_two_site(2, 3).unwrap(), CMatrix::identity(8));
        assert!(matches!(
            op.embed_two_site(3, 3),
            Err(Error::SiteOutOfRange { .. })
        ));
        assert!(matches!(
            op.embed_two_site(0, 3),
            Err(Error::SiteOutOfRange { .. })
        ));
    }

    #[test]
    fn taylor_exp_zero_and_diagonal() {
        let z = CMatrix::zeros(3, 3);
        assert!(z.taylor_exp(5).unwrap().frobenius_distance(&CMatrix::identity(3)).unwrap() < 1e-15);
        assert!(matches!(z.taylor_exp(0), Err(Error::NoTerms)));
        assert!(matches!(
            CMatrix::zeros(2, 3).taylor_exp(5),
            Err(Error::NonSquare { .. })
        ));

        // exp(i pi diag(1,-1)) = diag(-1,-1), per-entry scalar exponential
        let m = CMatrix::from_rows(vec![
            vec![c(0.0, std::f64::consts::PI), ZERO],
            vec![ZERO, c(0.0, -std::f64::consts::PI)],
        ])
        .unwrap();
        let e = m.taylor_exp(40).unwrap();
        let expected = CMatrix::from_rows(vec![vec![-ONE, ZERO], vec![ZERO, -ONE]]).unwrap();
        assert!(e.frobenius_distance(&expected).unwrap() < 1e-10);
    }

    #[test]
    fn permutation_validation_and_action() {
        assert!(QubitPermutation::new(vec![1, 1, 2]).is_err());
        assert!(QubitPermutation::new(vec![1, 3]).is_err());

        // swap(1,2) on |up down> = |01> gives |down up> = |10>
        let s = StateVector::basis_state(2, 0b01);
        let swap = QubitPermutation::new(vec![2, 1]).unwrap();
        let t = s.permute_qubits(&swap).unwrap();
        assert_eq!(t.amplitude(0b10), ONE);
        assert_eq!(t.amplitude(0b01), ZERO);

        let id = QubitPermutation::identity(2);
        assert_eq!(s.permute_qubits(&id).unwrap(), s);
    }

    #[test]
    fn state_invariants() {
        assert!(StateVector::from_amplitudes(2, vec![ONE; 3]).is_err());
        assert!(StateVector::from_amplitudes(1, vec![c(f64::NAN, 0.0), ZERO]).is_err());
        assert!(CMatrix::from_rows(vec![vec![c(f64::INFINITY, 0.0)]]).is_err());
    }

    #[test]
    fn embed_matches_index_arithmetic() {
        // independent oracle: the one-site-extended operator has entries
        // M[(a b c), (a' b' c')] = op[(a b), (a' b')] delta_{c c'}
        let mut op = CMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                op.set(i, j, c((4 * i + j) as f64, (i as f64) - (j as f64)));
            }
        }
        let embedded = op.embed_two_site(1, 3).unwrap();
        let mut direct = CMatrix::zeros(8, 8);
        for a in 0..2 {
            for b in 0..2 {
                for cbit in 0..2 {
                    for a2 in 0..2 {
                        for b2 in 0..2 {
                            direct.set(
                                (a << 2) | (b << 1) | cbit,
                                (a2 << 2) | (b2 << 1) | cbit,
                                op.get((a << 1) | b, (a2 << 1) | b2),
                            );
                        }
                    }
                }
            }
        }
        assert_eq!(embedded, direct);
    }

    #[test]
    fn rank_of_singular_matrix() {
        let m = CMatrix::from_rows(vec![
            vec![ONE, c(2.0, 0.0)],
            vec![c(2.0, 0.0), c(4.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(m.rank(1e-10), 1);
        assert_eq!(CMatrix::identity(4).rank(1e-10), 4);
        assert_eq!(CMatrix::zeros(3, 3).rank(1e-10), 0);
    }
}
