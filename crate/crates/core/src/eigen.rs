//! Eigenvalues of small non-symmetric real matrices.
//!
//! Balancing, Householder reduction to upper Hessenberg form and the
//! Francis double-shift QR iteration, after the classic EISPACK `balanc` /
//! `hqr` pair. Only eigenvalues are produced; eigenvectors of interest are
//! recovered by inverse iteration in [`inverse_iteration`].

use num_complex::Complex;

use crate::linalg::{matvec, norm, solve, Mat};
use crate::scalar::Real;

/// Rescales rows and columns by powers of two so that their norms are
/// comparable. The spectrum is unchanged; returns the diagonal similarity.
pub fn balance<T: Real, const N: usize>(a: &mut Mat<T, N>) -> [T; N] {
    let radix = T::lit(2.0);
    let sqrdx = radix * radix;
    let mut scale = [T::one(); N];
    let mut done = false;
    while !done {
        done = true;
        for i in 0..N {
            let mut r = T::zero();
            let mut c = T::zero();
            for j in 0..N {
                if j != i {
                    c += a[j][i].abs();
                    r += a[i][j].abs();
                }
            }
            if c != T::zero() && r != T::zero() {
                let mut g = r / radix;
                let mut f = T::one();
                let s = c + r;
                while c < g {
                    f *= radix;
                    c *= sqrdx;
                }
                g = r * radix;
                while c > g {
                    f /= radix;
                    c /= sqrdx;
                }
                if (c + r) / f < T::lit(0.95) * s {
                    done = false;
                    let g = T::one() / f;
                    scale[i] *= f;
                    for j in 0..N {
                        a[i][j] *= g;
                    }
                    for row in a.iter_mut() {
                        row[i] *= f;
                    }
                }
            }
        }
    }
    scale
}

/// In-place Householder reduction to upper Hessenberg form.
pub fn hessenberg<T: Real, const N: usize>(a: &mut Mat<T, N>) {
    if N < 3 {
        return;
    }
    for k in 0..N - 2 {
        let mut v = [T::zero(); N];
        let mut alpha = T::zero();
        for i in k + 1..N {
            v[i] = a[i][k];
            alpha += v[i] * v[i];
        }
        let alpha = alpha.sqrt();
        if alpha == T::zero() {
            continue;
        }
        let alpha = -T::sign_of(alpha, v[k + 1]);
        v[k + 1] -= alpha;
        let vn = norm(&v);
        if vn == T::zero() {
            continue;
        }
        for x in v.iter_mut() {
            *x /= vn;
        }
        // A <- H A
        for j in 0..N {
            let mut s = T::zero();
            for i in k + 1..N {
                s += v[i] * a[i][j];
            }
            for i in k + 1..N {
                a[i][j] -= T::lit(2.0) * v[i] * s;
            }
        }
        // A <- A H
        for row in a.iter_mut() {
            let mut s = T::zero();
            for j in k + 1..N {
                s += row[j] * v[j];
            }
            for j in k + 1..N {
                row[j] -= T::lit(2.0) * s * v[j];
            }
        }
        for i in k + 2..N {
            a[i][k] = T::zero();
        }
    }
}

/// Error from the QR iteration: a block failed to deflate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoConvergence;

/// Eigenvalues of an upper Hessenberg matrix by shifted QR.
pub fn hqr<T: Real, const N: usize>(a: &mut Mat<T, N>) -> Result<[Complex<T>; N], NoConvergence> {
    let eps = T::epsilon();
    let mut wri = [Complex::new(T::zero(), T::zero()); N];
    let mut anorm = T::zero();
    for i in 0..N {
        for j in i.saturating_sub(1)..N {
            anorm += a[i][j].abs();
        }
    }
    let mut nn: isize = N as isize - 1;
    let mut t = T::zero();
    while nn >= 0 {
        let mut its = 0;
        loop {
            let nu = nn as usize;
            let mut l = nu;
            while l > 0 {
                let mut s = a[l - 1][l - 1].abs() + a[l][l].abs();
                if s == T::zero() {
                    s = anorm;
                }
                if a[l][l - 1].abs() <= eps * s {
                    a[l][l - 1] = T::zero();
                    break;
                }
                l -= 1;
            }
            let mut x = a[nu][nu];
            if l == nu {
                wri[nu] = Complex::new(x + t, T::zero());
                nn -= 1;
                break;
            }
            let mut y = a[nu - 1][nu - 1];
            let mut w = a[nu][nu - 1] * a[nu - 1][nu];
            if l == nu - 1 {
                let p = T::lit(0.5) * (y - x);
                let q = p * p + w;
                let mut z = q.abs().sqrt();
                x += t;
                if q >= T::zero() {
                    z = p + T::sign_of(z, p);
                    wri[nu - 1] = Complex::new(x + z, T::zero());
                    wri[nu] = wri[nu - 1];
                    if z != T::zero() {
                        wri[nu] = Complex::new(x - w / z, T::zero());
                    }
                } else {
                    wri[nu] = Complex::new(x + p, -z);
                    wri[nu - 1] = wri[nu].conj();
                }
                nn -= 2;
                break;
            }
            if its == 60 {
                return Err(NoConvergence);
            }
            if its == 10 || its == 20 || its == 40 {
                t += x;
                for i in 0..=nu {
                    a[i][i] -= x;
                }
                let s = a[nu][nu - 1].abs() + a[nu - 1][nu - 2].abs();
                x = T::lit(0.75) * s;
                y = x;
                w = T::lit(-0.4375) * s * s;
            }
            its += 1;
            let mut m = nu - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = a[m][m];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[m + 1][m] + a[m][m + 1];
                q = a[m + 1][m + 1] - z - rr - ss;
                r = a[m + 2][m + 1];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[m][m - 1].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
                if u <= eps * v {
                    break;
                }
                m -= 1;
            }
            for i in m..nu - 1 {
                a[i + 2][i] = T::zero();
                if i != m {
                    a[i + 2][i - 1] = T::zero();
                }
            }
            let mut k = m;
            while k < nu {
                if k != m {
                    p = a[k][k - 1];
                    q = a[k + 1][k - 1];
                    r = T::zero();
                    if k + 1 != nu {
                        r = a[k + 2][k - 1];
                    }
                    x = p.abs() + q.abs() + r.abs();
                    if x != T::zero() {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = T::sign_of((p * p + q * q + r * r).sqrt(), p);
                if s != T::zero() {
                    if k == m {
                        if l != m {
                            a[k][k - 1] = -a[k][k - 1];
                        }
                    } else {
                        a[k][k - 1] = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    let z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nu {
                        let mut pp = a[k][j] + q * a[k + 1][j];
                        if k + 1 != nu {
                            pp += r * a[k + 2][j];
                            a[k + 2][j] -= pp * z;
                        }
                        a[k + 1][j] -= pp * y;
                        a[k][j] -= pp * x;
                    }
                    let mmin = if nu < k + 3 { nu } else { k + 3 };
                    for i in l..=mmin {
                        let mut pp = x * a[i][k] + y * a[i][k + 1];
                        if k + 1 != nu {
                            pp += z * a[i][k + 2];
                            a[i][k + 2] -= pp * r;
                        }
                        a[i][k + 1] -= pp * q;
                        a[i][k] -= pp;
                    }
                }
                k += 1;
            }
            if l + 1 >= nu {
                break;
            }
        }
    }
    Ok(wri)
}

/// All eigenvalues of a general real matrix (balance, Hessenberg, QR).
pub fn eigenvalues<T: Real, const N: usize>(
    a: &Mat<T, N>,
) -> Result<[Complex<T>; N], NoConvergence> {
    let mut m = *a;
    balance(&mut m);
    hessenberg(&mut m);
    hqr(&mut m)
}

/// Eigenvector of `a` for the (real) eigenvalue closest to `shift`, by a few
/// steps of inverse iteration. The result has unit Euclidean norm.
pub fn inverse_iteration<T: Real, const N: usize>(
    a: &Mat<T, N>,
    shift: T,
    start: [T; N],
) -> Option<[T; N]> {
    let scale = a
        .iter()
        .flatten()
        .fold(T::zero(), |m, x| m.max(x.abs()))
        .max(T::min_positive_value());
    let mut shifted = *a;
    // nudge off the exact eigenvalue so the solve stays regular
    let mu = shift + scale * T::tol(1e-11);
    for (i, row) in shifted.iter_mut().enumerate() {
        row[i] -= mu;
    }
    let mut x = start;
    let n0 = norm(&x);
    if n0 == T::zero() {
        return None;
    }
    x.iter_mut().for_each(|v| *v /= n0);
    for _ in 0..40 {
        let y = match solve(&shifted, &x) {
            Some(y) => y,
            None => {
                let mut bumped = shifted;
                for (i, row) in bumped.iter_mut().enumerate() {
                    row[i] -= scale * T::tol(1e-9);
                }
                solve(&bumped, &x)?
            }
        };
        let ny = norm(&y);
        if ny == T::zero() || !ny.is_finite() {
            return None;
        }
        let mut next = y.map(|v| v / ny);
        // fix the sign against the previous iterate
        if crate::linalg::dot(&next, &x) < T::zero() {
            next.iter_mut().for_each(|v| *v = -*v);
        }
        let delta = next
            .iter()
            .zip(&x)
            .map(|(p, q)| (*p - *q).abs())
            .fold(T::zero(), T::max);
        x = next;
        if delta <= T::tol(1e-14) {
            break;
        }
    }
    let ax = matvec(a, &x);
    let resid = ax
        .iter()
        .zip(&x)
        .map(|(p, q)| (*p - shift * *q).abs())
        .fold(T::zero(), T::max);
    if resid.is_finite() {
        Some(x)
    } else {
        None
    }
}
