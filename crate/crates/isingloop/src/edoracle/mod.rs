//! Brute-force diagonalization oracle for small chains.
//!
//! Builds the Hamiltonian as explicit Pauli strings, diagonalizes it within
//! the two parity sectors, constructs the five reference ground states of the
//! limit cases, assembles the order-parameter matrix from them, and
//! cross-checks the momentum-space energies end to end.
//!
//! Basis convention: site 1 is the most significant bit; bit 0 means spin-up
//! (sigma^z = +1), bit 1 spin-down. Parity is the product of all sigma^z,
//! i.e. +1 on basis states with an even number of down spins.

pub(crate) mod eigen;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freefermion;
use crate::model::{limit_case, ModelParams};

/// Largest chain the oracle will diagonalize (dimension 16384).
pub const MAX_SITES: usize = 14;
/// Chains up to this size use the dense eigensolver; larger ones use Lanczos.
pub const MAX_DENSE_SITES: usize = 10;
/// Largest chain accepted by [`cross_validate`].
pub const MAX_CROSS_VALIDATE_SITES: usize = 12;
/// A cross-validation residual at or above this flags a failure.
pub const CROSS_VALIDATION_TOL: f64 = 1e-9;

/// Single-site Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

/// One weighted Pauli word: `coefficient` times the site-ordered product of
/// `letters` (letters[j - 1] acts on site j).
#[derive(Debug, Clone, PartialEq)]
pub struct PauliString {
    pub coefficient: f64,
    pub letters: Vec<Pauli>,
}

/// A vector in the full 2^N spin space.
#[derive(Debug, Clone)]
pub struct StateVector {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wraps raw amplitudes; the length must be 2^n.
    pub fn new(n: usize, amplitudes: Vec<Complex64>) -> Self {
        assert_eq!(amplitudes.len(), 1usize << n, "amplitude count must be 2^n");
        StateVector { n, amplitudes }
    }

    pub fn sites(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, basis_index: usize) -> Complex64 {
        self.amplitudes[basis_index]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Inner product `<self|other>` (conjugate-linear in `self`).
    pub fn overlap(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.n, other.n);
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Expectation of the parity operator, the product of all sigma^z.
    pub fn parity_expectation(&self) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(b, a)| parity_sign(b) * a.norm_sqr())
            .sum()
    }

    fn normalize(&mut self) {
        let n = self.norm();
        for a in &mut self.amplitudes {
            *a /= n;
        }
    }

    /// Rotates the global phase so the amplitude on `basis_index` is real
    /// and non-negative.
    fn fix_phase(&mut self, basis_index: usize) {
        let a = self.amplitudes[basis_index];
        let m = a.norm();
        if m == 0.0 {
            return;
        }
        let rot = a.conj() / m;
        for amp in &mut self.amplitudes {
            *amp *= rot;
        }
    }
}

/// Lowest eigenpair data of one diagonalization, split by parity sector.
#[derive(Debug, Clone)]
pub struct SpectralResult {
    pub ground_energy: f64,
    pub ground_state: StateVector,
    pub even_sector_energy: f64,
    /// +1 or -1; ties within 1e-12 resolve to +1.
    pub parity_of_ground: i32,
    /// Energy distance from the ground level to the next level anywhere in
    /// the spectrum (zero for a degenerate ground state).
    pub degeneracy_gap: f64,
}

/// The 5x5 matrix of limit-case Hamiltonian expectations in the five
/// reference states: entries(lambda, rho) = <G_lambda| h_rho |G_lambda>.
#[derive(Debug, Clone, Serialize)]
pub struct OrderParameterMatrix {
    #[serde(rename = "N")]
    pub n: usize,
    /// Row index lambda + 2, column index rho + 2.
    pub entries: [[f64; 5]; 5],
}

impl OrderParameterMatrix {
    pub fn entry(&self, lambda: i32, rho: i32) -> f64 {
        assert!((-2..=2).contains(&lambda) && (-2..=2).contains(&rho));
        self.entries[(lambda + 2) as usize][(rho + 2) as usize]
    }
}

/// Outcome of one oracle-versus-closed-form comparison.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossValidation {
    pub params: ModelParams,
    #[serde(rename = "N")]
    pub n: usize,
    /// |even-sector oracle energy - closed-form finite energy|.
    pub residual: f64,
    pub parity: i32,
    pub degeneracy_gap: f64,
}

impl CrossValidation {
    pub fn passed(&self) -> bool {
        self.residual < CROSS_VALIDATION_TOL
    }
}

/// Emits the Pauli strings of the full Hamiltonian on a periodic chain of
/// `n` sites: per site, XX and YY bonds weighted a(1 +/- gamma)/2, the field
/// g Z, and three-site XZX / YZY words weighted b(1 +/- delta)/2. Strings
/// with an exactly zero coefficient are omitted.
pub fn build_hamiltonian(params: &ModelParams, n: usize) -> Result<Vec<PauliString>> {
    if !params.is_finite() {
        return Err(Error::NonFiniteParams);
    }
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::InvalidChainLength { n, min: 4 });
    }
    if n > MAX_SITES {
        return Err(Error::ChainTooLong { n, max: MAX_SITES });
    }
    let xx = params.a * (1.0 + params.gamma) / 2.0;
    let yy = params.a * (1.0 - params.gamma) / 2.0;
    let xzx = params.b * (1.0 + params.delta) / 2.0;
    let yzy = params.b * (1.0 - params.delta) / 2.0;
    let mut strings = Vec::new();
    let push = |strings: &mut Vec<PauliString>, coefficient: f64, sites: &[(usize, Pauli)]| {
        if coefficient == 0.0 {
            return;
        }
        let mut letters = vec![Pauli::I; n];
        for &(site, p) in sites {
            letters[site - 1] = p;
        }
        strings.push(PauliString { coefficient, letters });
    };
    for j in 1..=n {
        let next = j % n + 1;
        let prev = (j + n - 2) % n + 1;
        push(&mut strings, xx, &[(j, Pauli::X), (next, Pauli::X)]);
        push(&mut strings, yy, &[(j, Pauli::Y), (next, Pauli::Y)]);
        push(&mut strings, params.g, &[(j, Pauli::Z)]);
        push(&mut strings, xzx, &[(prev, Pauli::X), (j, Pauli::Z), (next, Pauli::X)]);
        push(&mut strings, yzy, &[(prev, Pauli::Y), (j, Pauli::Z), (next, Pauli::Y)]);
    }
    Ok(strings)
}

/// A Pauli string reduced to bit masks. Acting on basis state b it sends it
/// to b ^ flip with amplitude factor base * (-1)^popcount(b & phase).
struct Compiled {
    flip: usize,
    phase: usize,
    base: Complex64,
}

fn compile(strings: &[PauliString], n: usize) -> Result<Vec<Compiled>> {
    let mut out = Vec::with_capacity(strings.len());
    for s in strings {
        if s.letters.len() != n {
            return Err(Error::InvalidPauliString(format!(
                "string has {} letters, chain has {} sites",
                s.letters.len(),
                n
            )));
        }
        if !s.coefficient.is_finite() {
            return Err(Error::InvalidPauliString("non-finite coefficient".into()));
        }
        let mut flip = 0usize;
        let mut phase = 0usize;
        let mut num_y = 0u32;
        for (idx, &p) in s.letters.iter().enumerate() {
            let bit = 1usize << (n - 1 - idx);
            match p {
                Pauli::I => {}
                Pauli::X => flip |= bit,
                Pauli::Y => {
                    flip |= bit;
                    phase |= bit;
                    num_y += 1;
                }
                Pauli::Z => phase |= bit,
            }
        }
        // base = coefficient * i^num_y
        let base = match num_y % 4 {
            0 => Complex64::new(s.coefficient, 0.0),
            1 => Complex64::new(0.0, s.coefficient),
            2 => Complex64::new(-s.coefficient, 0.0),
            _ => Complex64::new(0.0, -s.coefficient),
        };
        out.push(Compiled { flip, phase, base });
    }
    Ok(out)
}

/// Like [`compile`] but for the real-symmetric representation, which exists
/// only when every string flips an even number of spins (parity conservation)
/// and carries an even number of Y letters (real matrix elements).
fn compile_real(strings: &[PauliString], n: usize) -> Result<Vec<(usize, usize, f64)>> {
    let compiled = compile(strings, n)?;
    let mut out = Vec::with_capacity(compiled.len());
    for c in &compiled {
        if c.flip.count_ones() % 2 != 0 {
            return Err(Error::InvalidPauliString(
                "string flips an odd number of spins and mixes parity sectors".into(),
            ));
        }
        if c.base.im != 0.0 {
            return Err(Error::InvalidPauliString(
                "string with an odd number of Y letters has imaginary matrix elements".into(),
            ));
        }
        out.push((c.flip, c.phase, c.base.re));
    }
    Ok(out)
}

fn parity_sign(b: usize) -> f64 {
    if b.count_ones() % 2 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// Applies the sum of Pauli strings to a state. The result is H|psi> and is
/// not normalized.
pub fn apply_strings(strings: &[PauliString], state: &StateVector) -> Result<StateVector> {
    let n = state.sites();
    let compiled = compile(strings, n)?;
    let mut out = vec![Complex64::ZERO; state.amplitudes.len()];
    for (b, &amp) in state.amplitudes.iter().enumerate() {
        if amp == Complex64::ZERO {
            continue;
        }
        for c in &compiled {
            out[b ^ c.flip] += c.base * parity_sign(b & c.phase) * amp;
        }
    }
    Ok(StateVector::new(n, out))
}

/// Diagonalizes the string sum on `n` sites within each parity sector and
/// reports the global ground pair, the even-sector minimum, the ground
/// parity, and the gap to the next level.
///
/// Every string must flip an even number of spins and contain an even number
/// of Y letters; all terms this model emits satisfy both.
pub fn dense_ground(strings: &[PauliString], n: usize) -> Result<SpectralResult> {
    if n < 2 {
        return Err(Error::InvalidChainLength { n, min: 2 });
    }
    if n > MAX_SITES {
        return Err(Error::ChainTooLong { n, max: MAX_SITES });
    }
    let compiled = compile_real(strings, n)?;
    let dim = 1usize << n;

    // enumerate the two parity sectors and the position of each basis state
    let mut sectors: [Vec<usize>; 2] = [Vec::with_capacity(dim / 2), Vec::with_capacity(dim / 2)];
    let mut pos = vec![0u32; dim];
    for (b, slot) in pos.iter_mut().enumerate() {
        let p = (b.count_ones() % 2) as usize;
        *slot = sectors[p].len() as u32;
        sectors[p].push(b);
    }

    let mut lowest = [[0.0f64; 2]; 2];
    let mut vectors: [Vec<f64>; 2] = [Vec::new(), Vec::new()];
    for (s, sector) in sectors.iter().enumerate() {
        let d = sector.len();
        if n <= MAX_DENSE_SITES {
            let mut m = vec![0.0f64; d * d];
            for (col, &b) in sector.iter().enumerate() {
                for &(flip, phase, base) in &compiled {
                    let row = pos[b ^ flip] as usize;
                    m[row * d + col] += base * parity_sign(b & phase);
                }
            }
            let e = eigen::symmetric_eigen(d, &m)?;
            lowest[s] = [e.values[0], e.values[1]];
            vectors[s] = (0..d).map(|k| e.vectors[k * d]).collect();
        } else {
            let matvec = |x: &[f64], y: &mut [f64]| {
                y.fill(0.0);
                for (col, &b) in sector.iter().enumerate() {
                    let xv = x[col];
                    if xv == 0.0 {
                        continue;
                    }
                    for &(flip, phase, base) in &compiled {
                        y[pos[b ^ flip] as usize] += base * parity_sign(b & phase) * xv;
                    }
                }
            };
            let (vals, mut vecs) = eigen::lanczos_lowest(d, matvec, 2, 0x5EED + s as u64)?;
            lowest[s] = [vals[0], vals[1]];
            vectors[s] = std::mem::take(&mut vecs[0]);
        }
    }

    let even_sector_energy = lowest[0][0];
    let odd_sector_energy = lowest[1][0];
    let ground_energy = even_sector_energy.min(odd_sector_energy);
    let tie = 1e-12 * (1.0 + ground_energy.abs());
    let winner = if even_sector_energy <= odd_sector_energy + tie { 0 } else { 1 };

    let mut levels = [lowest[0][0], lowest[0][1], lowest[1][0], lowest[1][1]];
    levels.sort_by(f64::total_cmp);
    let degeneracy_gap = levels[1] - levels[0];

    let mut amplitudes = vec![Complex64::ZERO; dim];
    for (i, &b) in sectors[winner].iter().enumerate() {
        amplitudes[b] = Complex64::new(vectors[winner][i], 0.0);
    }

    Ok(SpectralResult {
        ground_energy,
        ground_state: StateVector::new(n, amplitudes),
        even_sector_energy,
        parity_of_ground: if winner == 0 { 1 } else { -1 },
        degeneracy_gap,
    })
}

/// The exact ground state of the limit-case Hamiltonian h_lambda, built in
/// closed form: all-down for lambda = 0, symmetrized alternating x / y
/// products for lambda = +/-1, and the paired-mode superposition over the
/// antiperiodic momentum grid for lambda = +/-2 (chain length divisible
/// by 4). Normalized, even parity, eigenvalue -1.
pub fn special_state(lambda: i32, n: usize) -> Result<StateVector> {
    if !(-2..=2).contains(&lambda) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidChainLength { n, min: 2 });
    }
    if n > MAX_SITES {
        return Err(Error::ChainTooLong { n, max: MAX_SITES });
    }
    if lambda.abs() == 2 && !n.is_multiple_of(4) {
        return Err(Error::UnsupportedSpecialState(n));
    }
    let dim = 1usize << n;
    let state = match lambda {
        0 => {
            let mut amps = vec![Complex64::ZERO; dim];
            amps[dim - 1] = Complex64::ONE; // all spins down
            StateVector::new(n, amps)
        }
        1 | -1 => alternating_product_state(lambda, n),
        2 | -2 => paired_mode_state(lambda, n)?,
        _ => unreachable!(),
    };
    debug_assert!((state.norm() - 1.0).abs() < 1e-12);
    Ok(state)
}

/// Symmetric combination of the two alternating product states whose sites
/// carry +/-1 eigenvectors of sigma^x (lambda = +1) or sigma^y (lambda = -1).
fn alternating_product_state(lambda: i32, n: usize) -> StateVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    // eigenvectors of sigma^x or sigma^y in the z basis, (up, down) components
    let (plus, minus) = if lambda == 1 {
        (
            [Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
            [Complex64::new(h, 0.0), Complex64::new(-h, 0.0)],
        )
    } else {
        (
            [Complex64::new(h, 0.0), Complex64::new(0.0, h)],
            [Complex64::new(h, 0.0), Complex64::new(0.0, -h)],
        )
    };
    let dim = 1usize << n;
    let mut amps = vec![Complex64::ZERO; dim];
    for (b, amp) in amps.iter_mut().enumerate() {
        let mut first = Complex64::ONE;
        let mut second = Complex64::ONE;
        for j in 1..=n {
            let bit = (b >> (n - j)) & 1;
            if j % 2 == 0 {
                first *= plus[bit];
                second *= minus[bit];
            } else {
                first *= minus[bit];
                second *= plus[bit];
            }
        }
        *amp = (first + second) * h;
    }
    StateVector::new(n, amps)
}

/// Ground state of the three-site limit cases as a product of Bogoliubov
/// pair factors over the positive antiperiodic momenta acting on the
/// fermionic vacuum (all spins up):
/// cos(k) + (-/+ i sin(k)) c+_k c+_{-k} per mode for lambda = +/-2.
fn paired_mode_state(lambda: i32, n: usize) -> Result<StateVector> {
    let sign = (lambda / 2) as f64;
    let grid = freefermion::momentum_grid(n)?;
    let dim = 1usize << n;
    let mut amps = vec![Complex64::ZERO; dim];
    amps[0] = Complex64::ONE;
    for &k in grid.positive() {
        let pair = apply_mode_creation(k, n, &apply_mode_creation(-k, n, &amps));
        let c = k.cos();
        let s = Complex64::new(0.0, -sign * k.sin());
        for (a, p) in amps.iter_mut().zip(pair.iter()) {
            *a = c * *a + s * p;
        }
    }
    let mut state = StateVector::new(n, amps);
    state.normalize();
    state.fix_phase(0);
    Ok(state)
}

/// Momentum-mode creation operator c+_k = n^{-1/2} sum_j e^{ikj} c+_j in the
/// spin basis; c+_j flips site j from up to down with the Jordan-Wigner sign
/// (-1)^(number of down spins on sites before j).
fn apply_mode_creation(k: f64, n: usize, v: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::ZERO; v.len()];
    let scale = 1.0 / (n as f64).sqrt();
    for j in 1..=n {
        let phase = Complex64::from_polar(scale, k * j as f64);
        let site_bit = 1usize << (n - j);
        let before = ((1usize << (j - 1)) - 1) << (n - j + 1);
        for (b, &amp) in v.iter().enumerate() {
            if amp == Complex64::ZERO || b & site_bit != 0 {
                continue;
            }
            out[b | site_bit] += phase * parity_sign(b & before) * amp;
        }
    }
    out
}

/// Expectation of every limit-case Hamiltonian in every reference state.
pub fn order_parameter_matrix(n: usize) -> Result<OrderParameterMatrix> {
    if !n.is_multiple_of(4) || n == 0 {
        return Err(Error::UnsupportedSpecialState(n));
    }
    if n > MAX_CROSS_VALIDATE_SITES {
        return Err(Error::ChainTooLong { n, max: MAX_CROSS_VALIDATE_SITES });
    }
    let mut entries = [[0.0f64; 5]; 5];
    for lambda in -2..=2 {
        let g = special_state(lambda, n)?;
        for rho in -2..=2 {
            let h = limit_case(rho, n)?;
            let hg = apply_strings(&h.terms, &g)?;
            let e = g.overlap(&hg);
            debug_assert!(e.im.abs() < 1e-12);
            entries[(lambda + 2) as usize][(rho + 2) as usize] = e.re;
        }
    }
    Ok(OrderParameterMatrix { n, entries })
}

/// Runs the oracle and the closed-form finite-chain energy on the same
/// parameters and reports how far apart the even-sector energies land.
pub fn cross_validate(params: &ModelParams, n: usize) -> Result<CrossValidation> {
    if n > MAX_CROSS_VALIDATE_SITES {
        return Err(Error::ChainTooLong { n, max: MAX_CROSS_VALIDATE_SITES });
    }
    let strings = build_hamiltonian(params, n)?;
    let spectral = dense_ground(&strings, n)?;
    let exact = freefermion::finite_ground_energy(params, n)?;
    Ok(CrossValidation {
        params: *params,
        n,
        residual: (spectral.even_sector_energy - exact.value).abs(),
        parity: spectral.parity_of_ground,
        degeneracy_gap: spectral.degeneracy_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn count_letters(s: &PauliString, p: Pauli) -> usize {
        s.letters.iter().filter(|&&l| l == p).count()
    }

    #[test]
    fn hamiltonian_term_inventory() {
        // gamma = 1 kills YY, b = 0 kills the three-site words
        let tfim = ModelParams { a: 1.0, b: 0.0, gamma: 1.0, delta: 0.0, g: 0.5 };
        let strings = build_hamiltonian(&tfim, 4).unwrap();
        assert_eq!(strings.len(), 8);
        let xx: Vec<_> = strings.iter().filter(|s| count_letters(s, Pauli::X) == 2).collect();
        let z: Vec<_> = strings.iter().filter(|s| count_letters(s, Pauli::Z) == 1).collect();
        assert_eq!(xx.len(), 4);
        assert_eq!(z.len(), 4);
        assert!(xx.iter().all(|s| s.coefficient == 1.0));
        assert!(z.iter().all(|s| s.coefficient == 0.5));

        let cluster = ModelParams { a: 0.0, b: 1.0, gamma: 0.0, delta: 1.0, g: 0.0 };
        let strings = build_hamiltonian(&cluster, 4).unwrap();
        assert_eq!(strings.len(), 4);
        for s in &strings {
            assert_eq!(s.coefficient, 1.0);
            assert_eq!(count_letters(s, Pauli::X), 2);
            assert_eq!(count_letters(s, Pauli::Z), 1);
        }

        let generic = ModelParams { a: 0.3, b: 0.7, gamma: 0.2, delta: -0.4, g: 1.1 };
        assert_eq!(build_hamiltonian(&generic, 6).unwrap().len(), 30);
    }

    #[test]
    fn hamiltonian_rejects_bad_input() {
        let p = ModelParams { a: 1.0, b: 0.0, gamma: 0.0, delta: 0.0, g: 0.0 };
        assert!(matches!(
            build_hamiltonian(&p, 5),
            Err(Error::InvalidChainLength { n: 5, .. })
        ));
        assert!(matches!(build_hamiltonian(&p, 2), Err(Error::InvalidChainLength { .. })));
        assert!(matches!(build_hamiltonian(&p, 16), Err(Error::ChainTooLong { n: 16, max: 14 })));
        let bad = ModelParams { a: f64::NAN, b: 0.0, gamma: 0.0, delta: 0.0, g: 0.0 };
        assert!(matches!(build_hamiltonian(&bad, 4), Err(Error::NonFiniteParams)));
    }

    #[test]
    fn dense_ground_ising_limit() {
        // pure XX ring of 4 sites: classical alternating order at energy -4
        let p = ModelParams { a: 1.0, b: 0.0, gamma: 1.0, delta: 0.0, g: 0.0 };
        let r = dense_ground(&build_hamiltonian(&p, 4).unwrap(), 4).unwrap();
        assert!((r.ground_energy + 4.0).abs() < 1e-12);
        assert!((r.even_sector_energy + 4.0).abs() < 1e-12);
        assert_eq!(r.parity_of_ground, 1);
        assert!(r.degeneracy_gap < 1e-10);
        assert!((r.ground_state.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dense_ground_field_limit() {
        // field term only: unique all-down product at energy -4
        let p = ModelParams { a: 0.0, b: 0.0, gamma: 0.0, delta: 0.0, g: 1.0 };
        let r = dense_ground(&build_hamiltonian(&p, 4).unwrap(), 4).unwrap();
        assert!((r.ground_energy + 4.0).abs() < 1e-12);
        assert_eq!(r.parity_of_ground, 1);
        assert!((r.ground_state.amplitude(15).norm() - 1.0).abs() < 1e-12);
        assert!((r.degeneracy_gap - 2.0).abs() < 1e-12);
    }

    #[test]
    fn dense_ground_critical_point() {
        let p = ModelParams { a: 1.0, b: 0.0, gamma: 1.0, delta: 0.0, g: 1.0 };
        let r = dense_ground(&build_hamiltonian(&p, 4).unwrap(), 4).unwrap();
        let exact = freefermion::finite_ground_energy(&p, 4).unwrap().value;
        assert!((r.even_sector_energy - exact).abs() < 1e-12);
        assert!((r.even_sector_energy + 5.226251859505506).abs() < 1e-9);
        assert!(r.ground_energy <= r.even_sector_energy);
    }

    #[test]
    fn dense_ground_rejects_sector_mixing_strings() {
        let single_x = PauliString {
            coefficient: 1.0,
            letters: vec![Pauli::X, Pauli::I, Pauli::I, Pauli::I],
        };
        assert!(matches!(
            dense_ground(&[single_x], 4),
            Err(Error::InvalidPauliString(_))
        ));
        let single_y = PauliString {
            coefficient: 1.0,
            letters: vec![Pauli::Y, Pauli::Y, Pauli::Y, Pauli::I],
        };
        assert!(matches!(
            dense_ground(&[single_y], 4),
            Err(Error::InvalidPauliString(_))
        ));
        let short = PauliString { coefficient: 1.0, letters: vec![Pauli::Z] };
        assert!(matches!(dense_ground(&[short], 4), Err(Error::InvalidPauliString(_))));
    }

    #[test]
    fn oracle_matches_closed_form_on_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..6 {
            let p = ModelParams {
                a: rng.random_range(-2.0..2.0),
                b: rng.random_range(-2.0..2.0),
                gamma: rng.random_range(-2.0..2.0),
                delta: rng.random_range(-2.0..2.0),
                g: rng.random_range(-2.0..2.0),
            };
            for n in [4, 6] {
                let cv = cross_validate(&p, n).unwrap();
                assert!(cv.passed(), "residual {} at n = {n}", cv.residual);
            }
        }
    }

    #[test]
    fn mixed_point_has_odd_ground_parity() {
        // the even-sector energy still matches the closed form exactly, but
        // the global ground state of this point sits in the odd sector
        let p = ModelParams { a: 1.0, b: 0.7, gamma: 0.4, delta: -0.6, g: 1.3 };
        let cv = cross_validate(&p, 6).unwrap();
        assert!(cv.residual < 1e-9);
        assert_eq!(cv.parity, -1);
        assert!((cv.degeneracy_gap - 0.578493885190381).abs() < 1e-9);
        let r = dense_ground(&build_hamiltonian(&p, 6).unwrap(), 6).unwrap();
        assert!((r.even_sector_energy + 8.250254575836827).abs() < 1e-9);
        assert!((r.ground_energy + 8.828748461027208).abs() < 1e-9);
    }

    #[test]
    fn cross_validation_serializes_with_uppercase_n() {
        let p = ModelParams { a: 1.0, b: 0.0, gamma: 1.0, delta: 0.0, g: 0.5 };
        let cv = cross_validate(&p, 4).unwrap();
        let v = serde_json::to_value(&cv).unwrap();
        assert_eq!(v["N"], 4);
        assert!(v["residual"].as_f64().unwrap() < 1e-10);
        assert!(v["params"]["gamma"].as_f64().is_some());
        assert!(v["parity"].as_i64().is_some());
        assert!(v["degeneracy_gap"].as_f64().is_some());
    }

    #[test]
    fn lanczos_path_agrees_with_closed_form() {
        let p = ModelParams { a: 1.0, b: 0.0, gamma: 1.0, delta: 0.0, g: 0.5 };
        let cv = cross_validate(&p, 12).unwrap();
        assert!(cv.residual < 1e-9, "residual {}", cv.residual);
    }

    #[test]
    fn ground_energy_invariant_under_site_relabeling() {
        let p = ModelParams { a: 0.8, b: -0.5, gamma: 0.3, delta: 0.9, g: 0.7 };
        let strings = build_hamiltonian(&p, 6).unwrap();
        let rotated: Vec<PauliString> = strings
            .iter()
            .map(|s| {
                let mut letters = s.letters.clone();
                letters.rotate_right(1);
                PauliString { coefficient: s.coefficient, letters }
            })
            .collect();
        let a = dense_ground(&strings, 6).unwrap();
        let b = dense_ground(&rotated, 6).unwrap();
        assert!((a.ground_energy - b.ground_energy).abs() < 1e-10);
        assert!((a.even_sector_energy - b.even_sector_energy).abs() < 1e-10);
    }

    #[test]
    fn reference_states_are_normalized_even_parity_eigenstates() {
        for n in [4usize, 8] {
            for lambda in -2..=2 {
                let g = special_state(lambda, n).unwrap();
                assert!((g.norm() - 1.0).abs() < 1e-12, "norm at lambda {lambda} n {n}");
                assert!(
                    (g.parity_expectation() - 1.0).abs() < 1e-12,
                    "parity at lambda {lambda} n {n}"
                );
                let h = limit_case(lambda, n).unwrap();
                let hg = apply_strings(&h.terms, &g).unwrap();
                // eigenvalue -1: h|G> + |G> = 0
                let defect: f64 = hg
                    .amplitudes()
                    .iter()
                    .zip(g.amplitudes().iter())
                    .map(|(x, y)| (x + y).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                assert!(defect < 1e-10, "defect {defect} at lambda {lambda} n {n}");
            }
        }
        for lambda in [-1, 0, 1] {
            let g = special_state(lambda, 6).unwrap();
            assert!((g.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn special_state_rejects_bad_input() {
        assert!(matches!(special_state(3, 4), Err(Error::LambdaOutOfRange(3))));
        assert!(matches!(special_state(2, 6), Err(Error::UnsupportedSpecialState(6))));
        assert!(matches!(special_state(-2, 10), Err(Error::UnsupportedSpecialState(10))));
        assert!(matches!(special_state(0, 5), Err(Error::InvalidChainLength { .. })));
        assert!(matches!(special_state(0, 16), Err(Error::ChainTooLong { .. })));
    }

    #[test]
    fn all_down_state_amplitudes() {
        let g = special_state(0, 6).unwrap();
        assert!((g.amplitude(63).re - 1.0).abs() < 1e-15);
        let total: f64 = g.amplitudes().iter().take(63).map(|a| a.norm()).sum();
        assert_eq!(total, 0.0);
    }

    #[test]
    fn four_site_paired_states_match_explicit_amplitudes() {
        // lambda = +2: (1/2)(|0> - |5> - |10> - |15>)
        // lambda = -2: (1/2)(|0> + |5> + |10> - |15>)
        for (lambda, sign) in [(2, -1.0), (-2, 1.0)] {
            let g = special_state(lambda, 4).unwrap();
            for b in 0..16usize {
                let want = match b {
                    0 => 0.5,
                    5 | 10 => 0.5 * sign,
                    15 => -0.5,
                    _ => 0.0,
                };
                let a = g.amplitude(b);
                assert!(
                    (a.re - want).abs() < 1e-12 && a.im.abs() < 1e-12,
                    "lambda {lambda} amplitude {b}: {a}"
                );
            }
        }
    }

    /// Closed-form amplitudes of the paired-mode states for n = 4 and 8:
    /// on each even-size down-spin subset with even site sum the amplitude is
    /// 2^(-(n-2)/2) * sign^(count/2) * i^(alternating site sum), else zero.
    fn combinatorial_pair_state(sign: f64, n: usize) -> Vec<Complex64> {
        let dim = 1usize << n;
        let scale = 2.0f64.powi(-((n as i32 - 2) / 2));
        let mut amps = vec![Complex64::ZERO; dim];
        for (b, amp) in amps.iter_mut().enumerate() {
            let sites: Vec<i32> =
                (1..=n as i32).filter(|&j| b >> (n as i32 - j) & 1 == 1).collect();
            if !sites.len().is_multiple_of(2) || sites.iter().sum::<i32>() % 2 != 0 {
                continue;
            }
            let alternating: i32 =
                sites.iter().enumerate().map(|(i, &s)| if i % 2 == 0 { -s } else { s }).sum();
            let i_pow = match alternating.rem_euclid(4) {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
            let s = if (sites.len() / 2) % 2 == 1 { sign } else { 1.0 };
            *amp = scale * s * i_pow;
        }
        amps
    }

    #[test]
    fn paired_states_match_combinatorial_form() {
        for n in [4usize, 8] {
            for lambda in [2, -2] {
                let g = special_state(lambda, n).unwrap();
                let reference = combinatorial_pair_state((lambda / 2) as f64, n);
                for (b, (got, want)) in
                    g.amplitudes().iter().zip(reference.iter()).enumerate()
                {
                    assert!(
                        (got - want).norm() < 1e-12,
                        "lambda {lambda} n {n} amplitude {b}: {got} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn reference_states_overlap_oracle_grounds() {
        for n in [4usize, 8] {
            for lambda in -2..=2 {
                let h = limit_case(lambda, n).unwrap();
                let r = dense_ground(&h.terms, n).unwrap();
                assert_eq!(r.parity_of_ground, 1, "lambda {lambda} n {n}");
                let g = special_state(lambda, n).unwrap();
                let m = g.overlap(&r.ground_state).norm();
                assert!((m - 1.0).abs() < 1e-10, "overlap {m} at lambda {lambda} n {n}");
            }
        }
    }

    #[test]
    fn order_matrix_is_negated_identity_at_eight_sites() {
        let m = order_parameter_matrix(8).unwrap();
        for lambda in -2..=2 {
            for rho in -2..=2 {
                let want = if lambda == rho { -1.0 } else { 0.0 };
                assert!(
                    (m.entry(lambda, rho) - want).abs() < 1e-10,
                    "entry({lambda}, {rho}) = {}",
                    m.entry(lambda, rho)
                );
            }
        }
    }

    #[test]
    fn order_matrix_four_site_exception() {
        // on 4 sites the two three-site words coincide up to relabeling and a
        // sign, so the +/-2 states see each other: those two cross entries
        // are +1 instead of 0
        let m = order_parameter_matrix(4).unwrap();
        for lambda in -2..=2 {
            for rho in -2..=2 {
                let want = if lambda == rho {
                    -1.0
                } else if (lambda, rho) == (2, -2) || (lambda, rho) == (-2, 2) {
                    1.0
                } else {
                    0.0
                };
                assert!(
                    (m.entry(lambda, rho) - want).abs() < 1e-10,
                    "entry({lambda}, {rho}) = {}",
                    m.entry(lambda, rho)
                );
            }
        }
    }

    #[test]
    fn order_matrix_rejects_bad_sizes() {
        assert!(matches!(order_parameter_matrix(6), Err(Error::UnsupportedSpecialState(6))));
        assert!(matches!(order_parameter_matrix(16), Err(Error::ChainTooLong { .. })));
    }

    #[test]
    fn cross_validate_rejects_large_chains() {
        let p = ModelParams { a: 1.0, b: 0.0, gamma: 1.0, delta: 0.0, g: 0.5 };
        assert!(matches!(
            cross_validate(&p, 14),
            Err(Error::ChainTooLong { n: 14, max: 12 })
        ));
    }
}
