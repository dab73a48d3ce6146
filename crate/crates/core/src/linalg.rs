//! Small fixed-size dense matrix helpers.
//!
//! Everything here works on plain `[[S; N]; N]` arrays. The element type `S`
//! is either a [`Real`] or a `Complex<Real>`; the routines that need an
//! ordering (pivoting, Jacobi sweeps) are restricted to real scalars.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::Real;

pub type Mat<S, const N: usize> = [[S; N]; N];
pub type Mat3<T> = Mat<T, 3>;
pub type Mat4<T> = Mat<T, 4>;
pub type CMat2<T> = Mat<Complex<T>, 2>;
pub type CMat4<T> = Mat<Complex<T>, 4>;

/// Minkowski metric `diag(1, -1, -1, -1)`.
pub fn eta<T: Real>() -> Mat4<T> {
    diag([T::one(), -T::one(), -T::one(), -T::one()])
}

pub fn zeros<S: Copy + Zero, const N: usize>() -> Mat<S, N> {
    [[S::zero(); N]; N]
}

pub fn identity<S: Copy + Zero + One, const N: usize>() -> Mat<S, N> {
    let mut m = zeros();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = S::one();
    }
    m
}

pub fn diag<S: Copy + Zero, const N: usize>(d: [S; N]) -> Mat<S, N> {
    let mut m = zeros();
    for i in 0..N {
        m[i][i] = d[i];
    }
    m
}

pub fn matmul<S, const N: usize>(a: &Mat<S, N>, b: &Mat<S, N>) -> Mat<S, N>
where
    S: Copy + Zero + Mul<Output = S> + Add<Output = S>,
{
    let mut out = zeros();
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            for j in 0..N {
                out[i][j] = out[i][j] + aik * b[k][j];
            }
        }
    }
    out
}

/// Product of a chain of matrices, left to right.
pub fn matmul_chain<S, const N: usize>(ms: &[&Mat<S, N>]) -> Mat<S, N>
where
    S: Copy + Zero + One + Mul<Output = S> + Add<Output = S>,
{
    ms.iter().fold(identity(), |acc, m| matmul(&acc, m))
}

pub fn matvec<S, const N: usize>(a: &Mat<S, N>, v: &[S; N]) -> [S; N]
where
    S: Copy + Zero + Mul<Output = S> + Add<Output = S>,
{
    let mut out = [S::zero(); N];
    for i in 0..N {
        for j in 0..N {
            out[i] = out[i] + a[i][j] * v[j];
        }
    }
    out
}

pub fn transpose<S: Copy, const N: usize>(a: &Mat<S, N>) -> Mat<S, N> {
    let mut out = *a;
    for i in 0..N {
        for j in 0..N {
            out[i][j] = a[j][i];
        }
    }
    out
}

pub fn add<S: Copy + Add<Output = S>, const N: usize>(a: &Mat<S, N>, b: &Mat<S, N>) -> Mat<S, N> {
    let mut out = *a;
    for i in 0..N {
        for j in 0..N {
            out[i][j] = a[i][j] + b[i][j];
        }
    }
    out
}

pub fn sub<S: Copy + Sub<Output = S>, const N: usize>(a: &Mat<S, N>, b: &Mat<S, N>) -> Mat<S, N> {
    let mut out = *a;
    for i in 0..N {
        for j in 0..N {
            out[i][j] = a[i][j] - b[i][j];
        }
    }
    out
}

pub fn scale<S: Copy + Mul<Output = S>, const N: usize>(a: &Mat<S, N>, s: S) -> Mat<S, N> {
    let mut out = *a;
    for row in out.iter_mut() {
        for x in row.iter_mut() {
            *x = *x * s;
        }
    }
    out
}

pub fn neg<S: Copy + Neg<Output = S>, const N: usize>(a: &Mat<S, N>) -> Mat<S, N> {
    let mut out = *a;
    for row in out.iter_mut() {
        for x in row.iter_mut() {
            *x = -*x;
        }
    }
    out
}

pub fn trace<S: Copy + Zero + Add<Output = S>, const N: usize>(a: &Mat<S, N>) -> S {
    (0..N).fold(S::zero(), |acc, i| acc + a[i][i])
}

/// Conjugate transpose.
pub fn dagger<T: Real, const N: usize>(a: &Mat<Complex<T>, N>) -> Mat<Complex<T>, N> {
    let mut out = *a;
    for i in 0..N {
        for j in 0..N {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

/// Kronecker product of two 2×2 matrices, first factor on the outer index.
pub fn kron2<S>(a: &Mat<S, 2>, b: &Mat<S, 2>) -> Mat<S, 4>
where
    S: Copy + Zero + Mul<Output = S>,
{
    let mut out = zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn to_complex<T: Real, const N: usize>(a: &Mat<T, N>) -> Mat<Complex<T>, N> {
    let mut out = zeros();
    for i in 0..N {
        for j in 0..N {
            out[i][j] = Complex::new(a[i][j], T::zero());
        }
    }
    out
}

pub fn max_abs<T: Real, const N: usize>(a: &Mat<T, N>) -> T {
    a.iter().flatten().fold(T::zero(), |m, x| m.max(x.abs()))
}

pub fn max_abs_c<T: Real, const N: usize>(a: &Mat<Complex<T>, N>) -> T {
    a.iter().flatten().fold(T::zero(), |m, x| m.max(x.norm()))
}

pub fn frobenius<T: Real, const N: usize>(a: &Mat<T, N>) -> T {
    a.iter().flatten().map(|x| *x * *x).sum::<T>().sqrt()
}

pub fn dot<T: Real, const N: usize>(a: &[T; N], b: &[T; N]) -> T {
    a.iter().zip(b).map(|(x, y)| *x * *y).sum()
}

pub fn norm<T: Real, const N: usize>(a: &[T; N]) -> T {
    dot(a, a).sqrt()
}

pub fn cross<T: Real>(a: &[T; 3], b: &[T; 3]) -> [T; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Minkowski inner product `aᵀ η b`.
pub fn minkowski<T: Real>(a: &[T; 4], b: &[T; 4]) -> T {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
}

/// LU factorisation with partial pivoting, returning the packed factors, the
/// row permutation and the permutation parity, or `None` for an exactly
/// singular pivot.
fn lu<T: Real, const N: usize>(a: &Mat<T, N>) -> (Mat<T, N>, [usize; N], T, bool) {
    let mut m = *a;
    let mut perm = [0usize; N];
    for (i, p) in perm.iter_mut().enumerate() {
        *p = i;
    }
    let mut parity = T::one();
    let mut singular = false;
    for k in 0..N {
        let mut piv = k;
        for i in k + 1..N {
            if m[i][k].abs() > m[piv][k].abs() {
                piv = i;
            }
        }
        if piv != k {
            m.swap(piv, k);
            perm.swap(piv, k);
            parity = -parity;
        }
        if m[k][k] == T::zero() {
            singular = true;
            continue;
        }
        for i in k + 1..N {
            let f = m[i][k] / m[k][k];
            m[i][k] = f;
            for j in k + 1..N {
                let mkj = m[k][j];
                m[i][j] -= f * mkj;
            }
        }
    }
    (m, perm, parity, singular)
}

pub fn det<T: Real, const N: usize>(a: &Mat<T, N>) -> T {
    let (m, _, parity, singular) = lu(a);
    if singular {
        return T::zero();
    }
    (0..N).fold(parity, |acc, i| acc * m[i][i])
}

/// Solves `a x = b`; `None` when `a` is singular.
pub fn solve<T: Real, const N: usize>(a: &Mat<T, N>, b: &[T; N]) -> Option<[T; N]> {
    let (m, perm, _, singular) = lu(a);
    if singular {
        return None;
    }
    let mut y = [T::zero(); N];
    for i in 0..N {
        let mut s = b[perm[i]];
        for j in 0..i {
            s -= m[i][j] * y[j];
        }
        y[i] = s;
    }
    let mut x = [T::zero(); N];
    for i in (0..N).rev() {
        let mut s = y[i];
        for j in i + 1..N {
            s -= m[i][j] * x[j];
        }
        x[i] = s / m[i][i];
    }
    Some(x)
}

pub fn inverse<T: Real, const N: usize>(a: &Mat<T, N>) -> Option<Mat<T, N>> {
    let mut out = zeros();
    for j in 0..N {
        let mut e = [T::zero(); N];
        e[j] = T::one();
        let col = solve(a, &e)?;
        for i in 0..N {
            out[i][j] = col[i];
        }
    }
    Some(out)
}

/// Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.
///
/// Eigenvalues are returned ascending; eigenvector `k` is column `k` of the
/// returned matrix.
pub fn sym_eigen<T: Real, const N: usize>(a: &Mat<T, N>) -> ([T; N], Mat<T, N>) {
    let mut m = *a;
    let mut v: Mat<T, N> = identity();
    let scale = max_abs(a);
    if scale == T::zero() {
        return ([T::zero(); N], v);
    }
    for _sweep in 0..100 {
        let mut off = T::zero();
        for i in 0..N {
            for j in i + 1..N {
                off += m[i][j] * m[i][j];
            }
        }
        if off.sqrt() <= T::epsilon() * T::lit(1e-2) * scale {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                if m[p][q] == T::zero() {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (T::lit(2.0) * m[p][q]);
                let t =
                    T::sign_of(T::one(), theta) / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..N {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..N {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: [usize; N] = [0; N];
    for (i, o) in order.iter_mut().enumerate() {
        *o = i;
    }
    order.sort_by(|&i, &j| {
        m[i][i]
            .partial_cmp(&m[j][j])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut vals = [T::zero(); N];
    let mut vecs = zeros();
    for (k, &i) in order.iter().enumerate() {
        vals[k] = m[i][i];
        for r in 0..N {
            vecs[r][k] = v[r][i];
        }
    }
    (vals, vecs)
}

/// Eigenvalues (ascending) of a 4×4 Hermitian matrix.
///
/// Uses the real symmetric 8×8 embedding `[[Re, -Im], [Im, Re]]`, whose
/// spectrum is the Hermitian spectrum with every value doubled.
pub fn hermitian_eigenvalues<T: Real>(h: &CMat4<T>) -> [T; 4] {
    let mut big: Mat<T, 8> = zeros();
    for i in 0..4 {
        for j in 0..4 {
            let z = h[i][j];
            big[i][j] = z.re;
            big[i + 4][j + 4] = z.re;
            big[i][j + 4] = -z.im;
            big[i + 4][j] = z.im;
        }
    }
    // exact symmetry for the Jacobi sweep
    for i in 0..8 {
        for j in i + 1..8 {
            let s = (big[i][j] + big[j][i]) * T::lit(0.5);
            big[i][j] = s;
            big[j][i] = s;
        }
    }
    let (vals, _) = sym_eigen(&big);
    [vals[0], vals[2], vals[4], vals[6]]
}

/// Singular value decomposition `a = u · diag(s) · vᵀ` of a 3×3 matrix.
#[derive(Debug, Clone, Copy)]
pub struct Svd3<T> {
    pub u: Mat3<T>,
    pub s: [T; 3],
    pub v: Mat3<T>,
}

/// One-sided Jacobi SVD of a 3×3 matrix; `s` descending and nonnegative,
/// `u` and `v` orthogonal.
pub fn svd3<T: Real>(a: &Mat3<T>) -> Svd3<T> {
    let mut w = *a;
    let mut v: Mat3<T> = identity();
    let tiny = T::epsilon() * T::lit(1e-2);
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..3 {
            for q in p + 1..3 {
                let mut alpha = T::zero();
                let mut beta = T::zero();
                let mut gamma = T::zero();
                for row in w.iter() {
                    alpha += row[p] * row[p];
                    beta += row[q] * row[q];
                    gamma += row[p] * row[q];
                }
                if gamma.abs() <= tiny * (alpha * beta).sqrt() || gamma == T::zero() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (T::lit(2.0) * gamma);
                let t = T::sign_of(T::one(), zeta) / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                for row in w.iter_mut() {
                    let x = row[p];
                    let y = row[q];
                    row[p] = c * x - s * y;
                    row[q] = s * x + c * y;
                }
                for row in v.iter_mut() {
                    let x = row[p];
                    let y = row[q];
                    row[p] = c * x - s * y;
                    row[q] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms =
        [0, 1, 2].map(|j| (w[0][j] * w[0][j] + w[1][j] * w[1][j] + w[2][j] * w[2][j]).sqrt());
    let mut order = [0usize, 1, 2];
    // stable: already-ordered columns keep their positions
    order.sort_by(|&i, &j| {
        norms[j]
            .partial_cmp(&norms[i])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut s = [T::zero(); 3];
    let mut u: Mat3<T> = zeros();
    let mut vv: Mat3<T> = zeros();
    let smax = norms.iter().fold(T::zero(), |m, x| m.max(*x));
    let cut = smax * T::epsilon() * T::lit(16.0);
    let mut have = [false; 3];
    for (k, &j) in order.iter().enumerate() {
        s[k] = norms[j];
        for r in 0..3 {
            vv[r][k] = v[r][j];
        }
        if norms[j] > cut && norms[j] > T::zero() {
            for r in 0..3 {
                u[r][k] = w[r][j] / norms[j];
            }
            have[k] = true;
        }
    }
    complete_orthonormal(&mut u, have);
    Svd3 { u, s, v: vv }
}

/// Fills the columns of `u` not marked in `have` so that `u` becomes
/// orthogonal. Marked columns must already be orthonormal.
fn complete_orthonormal<T: Real>(u: &mut Mat3<T>, have: [bool; 3]) {
    let col = |u: &Mat3<T>, k: usize| [u[0][k], u[1][k], u[2][k]];
    for k in 0..3 {
        if have[k] {
            continue;
        }
        let mut best = [T::zero(); 3];
        let mut best_norm = -T::one();
        for axis in 0..3 {
            let mut cand = [T::zero(); 3];
            cand[axis] = T::one();
            for j in 0..3 {
                if j == k || !(have[j] || j < k) {
                    continue;
                }
                let c = col(u, j);
                let d = dot(&cand, &c);
                for r in 0..3 {
                    cand[r] -= d * c[r];
                }
            }
            let n = norm(&cand);
            if n > best_norm + T::lit(1e-3) {
                best_norm = n;
                best = cand.map(|x| x / n);
            }
        }
        for r in 0..3 {
            u[r][k] = best[r];
        }
    }
}
