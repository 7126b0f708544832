//! Self-contained real-symmetric eigensolvers.
//!
//! Dense path: Householder tridiagonalization followed by implicit-shift QL
//! with eigenvector accumulation (the classic tred2/tql2 pair). Iterative
//! path: Lanczos with full reorthogonalization for the larger parity blocks,
//! returning the lowest few Ritz pairs.

use crate::error::{Error, Result};

/// Eigendecomposition of a symmetric matrix: ascending values, orthonormal
/// vectors stored as columns of a flat row-major matrix.
pub(crate) struct SymEigen {
    pub values: Vec<f64>,
    /// vectors[k * n + j] = component k of eigenvector j.
    pub vectors: Vec<f64>,
}

/// Full eigendecomposition of the flat row-major symmetric matrix `a`.
pub(crate) fn symmetric_eigen(n: usize, a: &[f64]) -> Result<SymEigen> {
    assert_eq!(a.len(), n * n);
    let mut v = a.to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(n, &mut v, &mut d, &mut e);
    tql2(n, &mut d, &mut e, &mut v)?;
    sort_pairs(n, &mut d, &mut v);
    Ok(SymEigen { values: d, vectors: v })
}

/// Eigendecomposition of a symmetric tridiagonal matrix given its diagonal
/// and subdiagonal (`sub[i]` couples rows i and i+1).
pub(crate) fn tridiag_eigen(diag: &[f64], sub: &[f64]) -> Result<SymEigen> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[1..n].copy_from_slice(&sub[..n - 1]);
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    tql2(n, &mut d, &mut e, &mut v)?;
    sort_pairs(n, &mut d, &mut v);
    Ok(SymEigen { values: d, vectors: v })
}

/// Householder reduction to tridiagonal form with transform accumulation.
#[allow(clippy::needless_range_loop)]
fn tred2(n: usize, v: &mut [f64], d: &mut [f64], e: &mut [f64]) {
    for j in 0..n {
        d[j] = v[(n - 1) * n + j];
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for item in d.iter().take(i) {
            scale += item.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[(i - 1) * n + j];
                v[i * n + j] = 0.0;
                v[j * n + i] = 0.0;
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for item in e.iter_mut().take(i) {
                *item = 0.0;
            }
            for j in 0..i {
                let f = d[j];
                v[j * n + i] = f;
                let mut g = e[j] + v[j * n + j] * f;
                for k in j + 1..i {
                    g += v[k * n + j] * d[k];
                    e[k] += v[k * n + j] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                for k in j..i {
                    v[k * n + j] -= f * e[k] + g * d[k];
                }
                d[j] = v[(i - 1) * n + j];
                v[i * n + j] = 0.0;
            }
        }
        d[i] = h;
    }
    // accumulate transformations
    for i in 0..n.saturating_sub(1) {
        v[(n - 1) * n + i] = v[i * n + i];
        v[i * n + i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[k * n + i + 1] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[k * n + i + 1] * v[k * n + j];
                }
                for k in 0..=i {
                    v[k * n + j] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[k * n + i + 1] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[(n - 1) * n + j];
        v[(n - 1) * n + j] = 0.0;
    }
    v[(n - 1) * n + n - 1] = 1.0;
    e[0] = 0.0;
}

/// Implicit-shift QL iteration on a tridiagonal matrix, rotating the columns
/// of `v` along with it. `e` is expected shifted (e[i] couples i-1 and i).
fn tql2(n: usize, d: &mut [f64], e: &mut [f64], v: &mut [f64]) -> Result<()> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 60 {
                    return Err(Error::NoConvergence(format!(
                        "QL iteration stalled at eigenvalue {l}"
                    )));
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        let h = v[k * n + i + 1];
                        v[k * n + i + 1] = s * v[k * n + i] + c * h;
                        v[k * n + i] = c * v[k * n + i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
            d[l] += f;
            e[l] = 0.0;
        } else {
            d[l] += f;
        }
    }
    Ok(())
}

fn sort_pairs(n: usize, d: &mut [f64], v: &mut [f64]) {
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        for j in i + 1..n {
            if d[j] < d[k] {
                k = j;
            }
        }
        if k != i {
            d.swap(i, k);
            for row in 0..n {
                v.swap(row * n + i, row * n + k);
            }
        }
    }
}

/// Lowest `want` eigenpairs of a symmetric operator given only its
/// matrix-vector product. Each pair comes from one Lanczos run with full
/// reorthogonalization, deflated against the pairs already found; a single
/// Krylov space sees a repeated eigenvalue only once, so deflation is what
/// recovers multiplicities.
pub(crate) fn lanczos_lowest<F: Fn(&[f64], &mut [f64])>(
    dim: usize,
    matvec: F,
    want: usize,
    seed: u64,
) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    assert!(want >= 1);
    let want = want.min(dim);
    let mut rng_state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).max(1);
    let mut values = Vec::with_capacity(want);
    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(want);
    for _ in 0..want {
        let (val, vec) = lanczos_deflated(dim, &matvec, &vectors, &mut rng_state)?;
        values.push(val);
        vectors.push(vec);
    }
    Ok((values, vectors))
}

/// One Lanczos run for the lowest eigenpair orthogonal to `deflate`.
fn lanczos_deflated<F: Fn(&[f64], &mut [f64])>(
    dim: usize,
    matvec: &F,
    deflate: &[Vec<f64>],
    rng_state: &mut u64,
) -> Result<(f64, Vec<f64>)> {
    let free_dim = dim - deflate.len();
    let max_m = free_dim.min(320);

    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new(); // betas[i] couples step i and i+1

    let orthogonalize = |v: &mut Vec<f64>, basis: &[Vec<f64>]| {
        for _ in 0..2 {
            for b in deflate.iter().chain(basis.iter()) {
                let c = dot(b, v);
                if c != 0.0 {
                    for (vi, bi) in v.iter_mut().zip(b.iter()) {
                        *vi -= c * bi;
                    }
                }
            }
        }
    };

    let mut q = random_unit(dim, rng_state);
    orthogonalize(&mut q, &basis);
    let nq = norm(&q);
    if nq < 1e-12 {
        return Err(Error::NoConvergence(
            "Lanczos start vector vanished under deflation".into(),
        ));
    }
    for qi in &mut q {
        *qi /= nq;
    }

    let mut w = vec![0.0; dim];
    loop {
        let m = basis.len();
        basis.push(q.clone());
        matvec(&q, &mut w);
        let alpha = dot(&q, &w);
        alphas.push(alpha);
        for (wi, qi) in w.iter_mut().zip(q.iter()) {
            *wi -= alpha * qi;
        }
        if m > 0 {
            let beta_prev = betas[m - 1];
            for (wi, pi) in w.iter_mut().zip(basis[m - 1].iter()) {
                *wi -= beta_prev * pi;
            }
        }
        orthogonalize(&mut w, &basis);
        let beta = norm(&w);
        let scale = alphas.iter().fold(0.0f64, |s, a| s.max(a.abs()))
            + betas.iter().fold(0.0f64, |s, b| s.max(*b))
            + beta;

        let m_now = basis.len();
        let t = tridiag_eigen(&alphas, &betas)?;
        let bottom = t.vectors[(m_now - 1) * m_now].abs();
        let converged = beta * bottom <= 1e-11 * (1.0 + scale);
        if converged || m_now == max_m || m_now == free_dim {
            if !converged && m_now == max_m && m_now != free_dim {
                return Err(Error::NoConvergence(format!(
                    "Lanczos did not converge within {max_m} iterations"
                )));
            }
            let mut x = vec![0.0; dim];
            for (j, bj) in basis.iter().enumerate() {
                let c = t.vectors[j * m_now];
                for (xk, bk) in x.iter_mut().zip(bj.iter()) {
                    *xk += c * bk;
                }
            }
            let nx = norm(&x);
            for xk in &mut x {
                *xk /= nx;
            }
            return Ok((t.values[0], x));
        }

        if beta <= 1e-13 * (1.0 + scale) {
            // invariant subspace: restart with a fresh direction
            betas.push(0.0);
            q = random_unit(dim, rng_state);
            orthogonalize(&mut q, &basis);
            let nq = norm(&q);
            if nq < 1e-12 {
                return Err(Error::NoConvergence(
                    "Lanczos restart could not find a new direction".into(),
                ));
            }
            for qi in &mut q {
                *qi /= nq;
            }
        } else {
            betas.push(beta);
            q = w.iter().map(|&wi| wi / beta).collect();
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn random_unit(dim: usize, state: &mut u64) -> Vec<f64> {
    let mut v: Vec<f64> = (0..dim).map(|_| xorshift_unit(state) - 0.5).collect();
    let n = norm(&v);
    for x in &mut v {
        *x /= n;
    }
    v
}

/// xorshift64*, mapped to [0, 1).
fn xorshift_unit(state: &mut u64) -> f64 {
    let mut x = *state;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    *state = x;
    let r = x.wrapping_mul(0x2545_F491_4F6C_DD1D);
    (r >> 11) as f64 / (1u64 << 53) as f64
}
