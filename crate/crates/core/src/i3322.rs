//! The I(3322) witness family with three settings per side, its Lorentz
//! singular values, and the randomized scan comparing it with the CHSH
//! circles.

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::chsh::check_unit;
use crate::eigen;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat4};
use crate::lorentz::{self, LorentzSV, SloccCoord};
use crate::optim;
use crate::pauli::{self, HermitianOp, PauliTensor};
use crate::sampling;
use crate::scalar::Real;

/// Slack on hull margins.
pub const HULL_TOL: f64 = 1e-6;
/// Half-width of the band around `z = 0` counted as in-plane.
pub const INPLANE_BAND: f64 = 1e-3;
/// Vertices of the geodesic grid used by [`hull_membership`].
pub const HULL_GRID_VERTICES: usize = 2562;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripleDirections<T> {
    pub a: [[T; 3]; 3],
    pub b: [[T; 3]; 3],
}

impl<T: Real> TripleDirections<T> {
    pub fn new(a: [[T; 3]; 3], b: [[T; 3]; 3]) -> Result<Self> {
        for v in a.iter().chain(b.iter()) {
            check_unit(v)?;
        }
        Ok(Self { a, b })
    }

    /// Six independent uniform directions.
    pub fn random<R: rand::Rng>(rng: &mut R) -> Self {
        let a = std::array::from_fn(|_| sampling::random_unit_vector::<T, R>(rng));
        let b = std::array::from_fn(|_| sampling::random_unit_vector::<T, R>(rng));
        Self { a, b }
    }

    /// `(a1·a2, a1·a3, a2·a3, b1·b2, b1·b3, b2·b3)`.
    pub fn cosines(&self) -> [T; 6] {
        let (a, b) = (&self.a, &self.b);
        [
            linalg::dot(&a[0], &a[1]),
            linalg::dot(&a[0], &a[2]),
            linalg::dot(&a[1], &a[2]),
            linalg::dot(&b[0], &b[1]),
            linalg::dot(&b[0], &b[2]),
            linalg::dot(&b[1], &b[2]),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// Direction matrix `diag(1, [v1 v2 v3])` with the vectors as columns.
pub fn direction_matrix<T: Real>(t: &TripleDirections<T>, side: Side) -> Mat4<T> {
    let v = match side {
        Side::A => &t.a,
        Side::B => &t.b,
    };
    let mut m = [[T::zero(); 4]; 4];
    m[0][0] = T::one();
    for (k, vk) in v.iter().enumerate() {
        for i in 0..3 {
            m[i + 1][k + 1] = vk[i];
        }
    }
    m
}

/// The constant middle factor in raised-index form.
pub fn w0_matrix<T: Real>() -> Mat4<T> {
    let w = [
        [4.0, -1.0, -1.0, 0.0],
        [1.0, -1.0, -1.0, -1.0],
        [1.0, -1.0, -1.0, 1.0],
        [0.0, -1.0, 1.0, 0.0],
    ];
    w.map(|row| row.map(T::lit))
}

/// Pauli tensor of the witness, `A (η W₀ η) Bᵀ`.
pub fn w3322_tensor<T: Real>(t: &TripleDirections<T>) -> Result<PauliTensor<T>> {
    let t = TripleDirections::new(t.a, t.b)?;
    let eta = linalg::eta::<T>();
    let m = linalg::matmul_chain(&[&eta, &w0_matrix(), &eta]);
    let a = direction_matrix(&t, Side::A);
    let b = direction_matrix(&t, Side::B);
    Ok(PauliTensor::new(linalg::matmul_chain(&[
        &a,
        &m,
        &linalg::transpose(&b),
    ])))
}

/// `4 I⊗I + I⊗(b1+b2)·σ − (a1+a2)·σ⊗I − (a1+a2)·σ⊗(b1+b2)·σ
///  − (a1−a2)·σ⊗b3·σ − a3·σ⊗(b1−b2)·σ`.
pub fn w3322_witness<T: Real>(t: &TripleDirections<T>) -> Result<HermitianOp<T>> {
    Ok(pauli::to_hermitian(&w3322_tensor(t)?))
}

/// `AᵀηA` from the closed form: `1`, then `−1` on and `−cos` off the diagonal.
pub fn gram_eta<T: Real>(t: &TripleDirections<T>, side: Side) -> Mat4<T> {
    let c = t.cosines();
    let (c12, c13, c23) = match side {
        Side::A => (c[0], c[1], c[2]),
        Side::B => (c[3], c[4], c[5]),
    };
    let (o, l) = (T::zero(), T::one());
    [
        [l, o, o, o],
        [o, -l, -c12, -c13],
        [o, -c12, -l, -c23],
        [o, -c13, -c23, -l],
    ]
}

/// Roots of the spectrum of `(BᵀηB) W₀ᵀ (AᵀηA) W₀`, signed by `det ω`.
pub fn i3322_singular_values<T: Real>(t: &TripleDirections<T>) -> Result<LorentzSV<T>> {
    let omega = w3322_tensor(t)?;
    let w0 = w0_matrix::<T>();
    let p = linalg::matmul_chain(&[
        &gram_eta(t, Side::B),
        &linalg::transpose(&w0),
        &gram_eta(t, Side::A),
        &w0,
    ]);
    let scale = linalg::frobenius(&omega.omega).powi(2);
    let eig = eigen::eigenvalues(&p).map_err(|_| Error::NoConvergence)?;
    let mags = lorentz::roots_of_spectrum(&eig, scale)?;
    Ok(lorentz::order_singular_values(
        mags,
        linalg::det(&omega.omega),
    ))
}

/// Support function of the convex hull of the three unit circles in the
/// coordinate planes.
pub fn circle_hull_support(u: &[f64; 3]) -> f64 {
    let m = u.iter().map(|x| x * x).fold(f64::INFINITY, f64::min);
    (1.0 - m).max(0.0).sqrt()
}

fn geodesic_grid() -> &'static Vec<[f64; 3]> {
    static GRID: OnceLock<Vec<[f64; 3]>> = OnceLock::new();
    GRID.get_or_init(|| icosphere(4))
}

/// Vertices of the icosahedron subdivided `level` times, on the unit sphere.
pub fn icosphere(level: usize) -> Vec<[f64; 3]> {
    let g = (1.0 + 5f64.sqrt()) / 2.0;
    let mut verts: Vec<[f64; 3]> = vec![
        [-1.0, g, 0.0],
        [1.0, g, 0.0],
        [-1.0, -g, 0.0],
        [1.0, -g, 0.0],
        [0.0, -1.0, g],
        [0.0, 1.0, g],
        [0.0, -1.0, -g],
        [0.0, 1.0, -g],
        [g, 0.0, -1.0],
        [g, 0.0, 1.0],
        [-g, 0.0, -1.0],
        [-g, 0.0, 1.0],
    ];
    let unit = |v: [f64; 3]| {
        let n = linalg::norm(&v);
        v.map(|x| x / n)
    };
    verts = verts.into_iter().map(unit).collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..level {
        let mut cache = std::collections::HashMap::new();
        let mut midpoint = |i: usize, j: usize, verts: &mut Vec<[f64; 3]>| -> usize {
            let key = (i.min(j), i.max(j));
            *cache.entry(key).or_insert_with(|| {
                let m = [0, 1, 2].map(|k| 0.5 * (verts[i][k] + verts[j][k]));
                verts.push(unit(m));
                verts.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let ab = midpoint(a, b, &mut verts);
            let bc = midpoint(b, c, &mut verts);
            let ca = midpoint(c, a, &mut verts);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    verts
}

/// `min_u [h(u) − c·u]` over unit directions, positive inside the hull.
pub fn hull_membership<T: Real>(c: &SloccCoord<T>) -> T {
    let c = c.to_array().map(|x| x.to_f64_lossy());
    let gap = |u: &[f64; 3]| circle_hull_support(u) - linalg::dot(&c, u);
    let grid = geodesic_grid();
    let mut ranked: Vec<(f64, usize)> = grid.iter().enumerate().map(|(i, u)| (gap(u), i)).collect();
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best = ranked[0].0;
    // refine in the tangent plane of the three best vertices
    for &(_, i) in ranked.iter().take(3) {
        let v = grid[i];
        let helper = if v[0].abs() < 0.9 {
            [1.0, 0.0, 0.0]
        } else {
            [0.0, 1.0, 0.0]
        };
        let e1 = {
            let x = linalg::cross(&v, &helper);
            let n = linalg::norm(&x);
            x.map(|t| t / n)
        };
        let e2 = linalg::cross(&v, &e1);
        let f = |s: &[f64]| {
            let w: [f64; 3] = std::array::from_fn(|k| v[k] + s[0] * e1[k] + s[1] * e2[k]);
            let n = linalg::norm(&w);
            gap(&w.map(|t| t / n))
        };
        let (_, fx) = optim::nelder_mead(
            f,
            &[0.0, 0.0],
            optim::NelderMead {
                step: 0.04,
                max_evals: 600,
                ftol: 1e-15,
            },
        );
        best = best.min(fx);
    }
    T::lit(best)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRecord<T> {
    pub id: u64,
    /// `(ca12, ca13, ca23, cb12, cb13, cb23)`.
    pub cosines: [T; 6],
    pub sv: LorentzSV<T>,
    pub coords: SloccCoord<T>,
    pub hull_margin: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSummary {
    pub n: u64,
    pub min_margin: f64,
    pub skipped_complex: u64,
    pub skipped_degenerate: u64,
    /// Largest `√(x² + y²)` among records with `|z| < INPLANE_BAND`.
    pub inplane_max_radius: f64,
    pub inplane_count: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scan<T> {
    pub records: Vec<ScanRecord<T>>,
    pub summary: ScanSummary,
}

enum Outcome<T> {
    Record(ScanRecord<T>),
    Complex,
    Degenerate,
}

fn scan_one<T: Real>(seed: u64, id: u64) -> Outcome<T> {
    let mut rng = sampling::rng_for(seed, id);
    let t = TripleDirections::<T>::random(&mut rng);
    let sv = match i3322_singular_values(&t) {
        Ok(sv) => sv,
        Err(Error::DegenerateClass(_)) => return Outcome::Degenerate,
        Err(_) => return Outcome::Complex,
    };
    let Ok(coords) = lorentz::slocc_coord(&sv) else {
        return Outcome::Degenerate;
    };
    let hull_margin = hull_membership(&coords);
    Outcome::Record(ScanRecord {
        id,
        cosines: t.cosines(),
        sv,
        coords,
        hull_margin,
    })
}

/// `n` random configurations, each from its own stream of `seed`.
/// Configurations with a non-real spectrum or vanishing `w0` are counted
/// and skipped.
pub fn scan<T: Real>(n: u64, seed: u64) -> Scan<T> {
    let outcomes: Vec<Outcome<T>> = (0..n)
        .into_par_iter()
        .map(|id| scan_one(seed, id))
        .collect();
    let mut summary = ScanSummary {
        n,
        min_margin: f64::INFINITY,
        skipped_complex: 0,
        skipped_degenerate: 0,
        inplane_max_radius: 0.0,
        inplane_count: 0,
    };
    let mut records = Vec::with_capacity(outcomes.len());
    for o in outcomes {
        match o {
            Outcome::Record(r) => {
                summary.min_margin = summary.min_margin.min(r.hull_margin.to_f64_lossy());
                let [x, y, z] = r.coords.to_array().map(|v| v.to_f64_lossy());
                if z.abs() < INPLANE_BAND {
                    summary.inplane_count += 1;
                    summary.inplane_max_radius = summary.inplane_max_radius.max(x.hypot(y));
                }
                records.push(r);
            }
            Outcome::Complex => summary.skipped_complex += 1,
            Outcome::Degenerate => summary.skipped_degenerate += 1,
        }
    }
    Scan { records, summary }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axes() -> [[f64; 3]; 3] {
        [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    }

    #[test]
    fn w0_entries() {
        let w = w0_matrix::<f64>();
        assert_eq!(w[0][0], 4.0);
        assert_eq!(w[3][2], 1.0);
    }

    #[test]
    fn orthonormal_triples() {
        let t = TripleDirections::new(axes(), axes()).unwrap();
        assert_eq!(gram_eta(&t, Side::A), linalg::eta::<f64>());
        let eta = linalg::eta::<f64>();
        let expect = linalg::matmul_chain(&[&eta, &w0_matrix(), &eta]);
        assert_eq!(w3322_tensor(&t).unwrap().omega, expect);
        let sv = i3322_singular_values(&t).unwrap();
        let direct = lorentz::lorentz_singular_values(&PauliTensor::new(w0_matrix())).unwrap();
        assert!(sv.relative_deviation(&direct) < 1e-10);
    }

    #[test]
    fn witness_trace() {
        let t = TripleDirections::new(axes(), axes()).unwrap();
        assert!((w3322_witness(&t).unwrap().trace() - 16.0).abs() < 1e-12);
    }

    #[test]
    fn coincident_directions() {
        let z = [0.0, 0.0, 1.0];
        let t = TripleDirections::new([z; 3], [z; 3]).unwrap();
        let sv = i3322_singular_values(&t).unwrap();
        assert!(sv.is_ordered());
        let direct = lorentz::lorentz_singular_values(&w3322_tensor(&t).unwrap()).unwrap();
        assert!(sv.relative_deviation(&direct) < 1e-8);
    }

    #[test]
    fn grid_has_expected_size() {
        assert_eq!(geodesic_grid().len(), HULL_GRID_VERTICES);
    }

    #[test]
    fn hull_examples() {
        assert!(hull_membership(&SloccCoord::new(1.0f64, 0.0, 0.0)).abs() < 1e-9);
        // the inradius of the hull, reached along the body diagonals
        let centre: f64 = hull_membership(&SloccCoord::new(0.0, 0.0, 0.0));
        assert!((centre - (2.0f64 / 3.0).sqrt()).abs() < 1e-9, "{centre}");
        let m: f64 = hull_membership(&SloccCoord::new(0.9, 0.9, 0.0));
        // support along (1,1,0)/√2 is 1
        assert!(m <= 1.0 - 1.8 / 2f64.sqrt() + 1e-9);
    }

    #[test]
    fn scan_is_reproducible() {
        let a = scan::<f64>(50, 3);
        let b = scan::<f64>(50, 3);
        assert_eq!(a, b);
        assert_eq!(a.summary.n, 50);
        assert!(a.summary.min_margin >= -HULL_TOL);
    }
}
