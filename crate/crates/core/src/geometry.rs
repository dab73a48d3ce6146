//! Point sets describing the three-dimensional pictures: the nested
//! polytopes, the CHSH circles, the three-cylinder surface and the dual
//! plane of a corner witness.

use serde::Serialize;

use crate::lorentz::{self, SloccCoord};

pub const CIRCLE_SAMPLES: usize = 256;
pub const CYLINDER_GRID: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polytope {
    pub name: &'static str,
    pub vertices: Vec<[f64; 3]>,
    /// Vertex indices of each face, counter-clockwise seen from outside.
    pub faces: Vec<Vec<usize>>,
}

pub fn cube() -> Polytope {
    let vertices = (0..8)
        .map(|i| [0, 1, 2].map(|k| if i >> (2 - k) & 1 == 1 { 1.0 } else { -1.0 }))
        .collect();
    let faces = vec![
        vec![0, 1, 3, 2],
        vec![4, 6, 7, 5],
        vec![0, 4, 5, 1],
        vec![2, 3, 7, 6],
        vec![0, 2, 6, 4],
        vec![1, 5, 7, 3],
    ];
    let mut c = Polytope {
        name: "cube",
        vertices,
        faces,
    };
    orient_outward(&mut c);
    c
}

/// Orbit of the singlet corner `(1, 1, −1)`.
pub fn tetrahedron() -> Polytope {
    let vertices = lorentz::tetrahedral_orbit(&SloccCoord::new(1.0, 1.0, -1.0))
        .into_iter()
        .map(|c| c.to_array())
        .collect();
    let faces = vec![vec![0, 1, 2], vec![0, 3, 1], vec![0, 2, 3], vec![1, 3, 2]];
    let mut t = Polytope {
        name: "tetrahedron",
        vertices,
        faces,
    };
    orient_outward(&mut t);
    t
}

pub fn octahedron() -> Polytope {
    let vertices = vec![
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    let mut faces = Vec::new();
    for x in [0, 1] {
        for y in [2, 3] {
            for z in [4, 5] {
                faces.push(vec![x, y, z]);
            }
        }
    }
    let mut o = Polytope {
        name: "octahedron",
        vertices,
        faces,
    };
    orient_outward(&mut o);
    o
}

/// Reverses faces whose normal points toward the origin.
fn orient_outward(p: &mut Polytope) {
    for f in p.faces.iter_mut() {
        let [a, b, c] = [f[0], f[1], f[2]].map(|i| p.vertices[i]);
        let u = [0, 1, 2].map(|k| b[k] - a[k]);
        let v = [0, 1, 2].map(|k| c[k] - a[k]);
        let n = crate::linalg::cross(&u, &v);
        if crate::linalg::dot(&n, &a) < 0.0 {
            f.reverse();
        }
    }
}

/// Unit circle in the plane normal to `axis`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Circle {
    pub normal_axis: usize,
    pub points: Vec<[f64; 3]>,
}

fn embed(axis: usize, u: f64, v: f64, along: f64) -> [f64; 3] {
    let (i, j) = match axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let mut p = [0.0; 3];
    p[i] = u;
    p[j] = v;
    p[axis] = along;
    p
}

pub fn chsh_circles() -> Vec<Circle> {
    (0..3)
        .map(|axis| Circle {
            normal_axis: axis,
            points: (0..CIRCLE_SAMPLES)
                .map(|k| {
                    let t = std::f64::consts::TAU * k as f64 / CIRCLE_SAMPLES as f64;
                    embed(axis, t.cos(), t.sin(), 0.0)
                })
                .collect(),
        })
        .collect()
}

/// Patch of the unit cylinder along `axis` that bounds the intersection
/// of all three cylinders: `|t| ≤ min(|cos θ|, |sin θ|)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CylinderPatch {
    pub axis: usize,
    /// `grid[i][j]` at angle index `i` and axial index `j`.
    pub grid: Vec<Vec<[f64; 3]>>,
}

pub fn cylinder_patches() -> Vec<CylinderPatch> {
    let n = CYLINDER_GRID;
    (0..3)
        .map(|axis| CylinderPatch {
            axis,
            grid: (0..n)
                .map(|i| {
                    let th = std::f64::consts::TAU * i as f64 / n as f64;
                    let (c, s) = (th.cos(), th.sin());
                    let h = c.abs().min(s.abs());
                    (0..n)
                        .map(|j| {
                            let t = -1.0 + 2.0 * j as f64 / (n - 1) as f64;
                            embed(axis, c, s, t * h)
                        })
                        .collect()
                })
                .collect(),
        })
        .collect()
}

/// A corner witness and the triangle where its plane `ρ⃗·ω⃗ = −1` meets
/// the separable octahedron.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualPlane {
    pub witness: [f64; 3],
    pub triangle: [[f64; 3]; 3],
}

pub fn corner_witness_plane() -> DualPlane {
    DualPlane {
        witness: [-1.0, -1.0, 1.0],
        triangle: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]],
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Geometry {
    pub polytopes: Vec<Polytope>,
    pub circles: Vec<Circle>,
    pub cylinders: Vec<CylinderPatch>,
    pub dual_plane: DualPlane,
}

pub fn geometry() -> Geometry {
    Geometry {
        polytopes: vec![cube(), tetrahedron(), octahedron()],
        circles: chsh_circles(),
        cylinders: cylinder_patches(),
        dual_plane: corner_witness_plane(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chsh::cylinder_membership;
    use crate::classify::{cube_membership, octahedron_membership, tetrahedron_membership};

    fn coord(p: &[f64; 3]) -> SloccCoord<f64> {
        SloccCoord::from_array(*p)
    }

    #[test]
    fn vertices_lie_on_their_boundaries() {
        for v in &cube().vertices {
            assert_eq!(cube_membership(&coord(v)).margin, 0.0);
        }
        let t = tetrahedron();
        assert_eq!(t.vertices.len(), 4);
        for v in &t.vertices {
            assert_eq!(tetrahedron_membership(&coord(v)).margin, 0.0);
        }
        for v in &octahedron().vertices {
            assert_eq!(octahedron_membership(&coord(v)).margin, 0.0);
        }
    }

    #[test]
    fn faces_are_planar_and_outward() {
        for p in [cube(), tetrahedron(), octahedron()] {
            for f in &p.faces {
                let [a, b, c] = [f[0], f[1], f[2]].map(|i| p.vertices[i]);
                let n = crate::linalg::cross(
                    &[0, 1, 2].map(|k| b[k] - a[k]),
                    &[0, 1, 2].map(|k| c[k] - a[k]),
                );
                assert!(crate::linalg::dot(&n, &a) > 0.0, "{}", p.name);
                for &i in f {
                    let d = [0, 1, 2].map(|k| p.vertices[i][k] - a[k]);
                    assert!(crate::linalg::dot(&n, &d).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn circles_and_cylinders() {
        for c in chsh_circles() {
            assert_eq!(c.points.len(), CIRCLE_SAMPLES);
            for p in &c.points {
                assert!((p.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
                assert_eq!(p[c.normal_axis], 0.0);
            }
        }
        for patch in cylinder_patches() {
            assert_eq!(patch.grid.len(), CYLINDER_GRID);
            for row in &patch.grid {
                assert_eq!(row.len(), CYLINDER_GRID);
                for p in row {
                    assert!(cylinder_membership(&coord(p)).margin >= -1e-12);
                }
            }
        }
    }

    #[test]
    fn dual_plane_triangle() {
        let d = corner_witness_plane();
        for v in &d.triangle {
            assert_eq!(crate::linalg::dot(v, &d.witness), -1.0);
            assert_eq!(octahedron_membership(&coord(v)).margin, 0.0);
        }
    }
}
