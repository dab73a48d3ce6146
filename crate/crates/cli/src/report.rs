//! JSON reports for the single-operator commands.

use serde_json::{json, Value};
use slocc::chsh::{self, ChshDirections};
use slocc::classify::{self, Tolerances};
use slocc::i3322::HULL_TOL;
use slocc::linalg::CMat2;
use slocc::lorentz::{self, LocalFilter, LorentzSV, SloccCoord};
use slocc::pauli::{self, HermitianOp};
use slocc::{Error, Result};

/// Tolerances that `--tol-override` can change.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub tol: Tolerances,
    pub cylinder: f64,
    pub hull: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            tol: Tolerances::default(),
            cylinder: chsh::CYLINDER_TOL,
            hull: HULL_TOL,
        }
    }
}

impl Settings {
    pub const KEYS: [&'static str; 7] = [
        "state",
        "witness",
        "certificate",
        "membership",
        "detection",
        "cylinder",
        "hull",
    ];

    pub fn set(&mut self, key: &str, value: f64) -> bool {
        match key {
            "cylinder" => self.cylinder = value,
            "hull" => self.hull = value,
            _ => return self.tol.set(key, value),
        }
        true
    }
}

fn sv_json(sv: &LorentzSV<f64>) -> Value {
    json!(sv.w)
}

fn coords_json(c: &SloccCoord<f64>) -> Value {
    json!(c.to_array())
}

fn cmat_json(m: &CMat2<f64>) -> Value {
    json!({
        "re": m.map(|r| r.map(|z| z.re)),
        "im": m.map(|r| r.map(|z| z.im)),
    })
}

fn filter_json(f: &LocalFilter<f64>) -> Value {
    json!({"a": cmat_json(f.a()), "b": cmat_json(f.b())})
}

fn directions_json(d: &ChshDirections<f64>) -> Value {
    json!({"a": d.a, "a_prime": d.a_prime, "b": d.b, "b_prime": d.b_prime})
}

pub fn classify(w: &HermitianOp<f64>, s: &Settings) -> Result<Value> {
    let c = classify::classify_with(w, &s.tol)?;
    let ppt = if c.is_state {
        Some(c.is_separable)
    } else {
        None
    };
    let mut report = json!({
        "state": c.is_state,
        "separable": c.is_separable,
        "witness": c.is_potential_witness,
        "ppt": ppt,
        "eigenvalues": c.eigenvalues,
        "sv": c.sv.as_ref().map(sv_json),
        "coords": c.coords.as_ref().map(coords_json),
        "class_error": c.class_error.as_ref().map(|e| e.to_string()),
    });
    let map = report.as_object_mut().expect("object literal");
    let margins: [Option<(bool, f64)>; 4] = match c.coords {
        Some(k) => {
            let cyl = chsh::cylinder_membership_with(&k, s.cylinder);
            [
                classify::octahedron_membership_with(&k, &s.tol),
                classify::tetrahedron_membership_with(&k, &s.tol),
                classify::cube_membership_with(&k, &s.tol),
                classify::Membership {
                    member: cyl.member,
                    margin: cyl.margin,
                },
            ]
            .map(|m| Some((m.member, m.margin)))
        }
        None => [None; 4],
    };
    for (name, m) in ["octahedron", "tetrahedron", "cube", "cylinder"]
        .into_iter()
        .zip(margins)
    {
        map.insert(format!("{name}_member"), json!(m.map(|m| m.0)));
        map.insert(format!("{name}_margin"), json!(m.map(|m| m.1)));
    }
    Ok(report)
}

pub fn chsh(rho: &HermitianOp<f64>, s: &Settings) -> Result<Value> {
    let opt = chsh::horodecki_optimum(rho)?;
    let directions = chsh::horodecki_directions(rho)?;
    let (direct, _) = chsh::direct_chsh_minimum(rho)?;
    let coords = chsh::slocc_chsh_satisfies(rho)?.coords;
    let cyl = chsh::cylinder_membership_with(&coords, s.cylinder);
    let (filter, filter_error) = if cyl.member {
        (Value::Null, Value::Null)
    } else {
        match chsh::filter_to_violation(rho) {
            Ok(v) => {
                let p = lorentz::filter_success_probability(rho, &v.filter)?;
                let report = json!({
                    "filter": filter_json(&v.filter),
                    "directions": directions_json(&v.directions),
                    "value": v.value,
                    "success_probability": p,
                });
                (report, Value::Null)
            }
            Err(e) => (Value::Null, json!(e.to_string())),
        }
    };
    Ok(json!({
        "optimum": opt.value,
        "max_chsh": 2.0 * (1.0 - opt.value),
        "plane": opt.plane.name(),
        "correlations": opt.correlations,
        "directions": directions_json(&directions),
        "direct_minimum": direct,
        "direct_deviation": (direct - opt.value).abs(),
        "slocc_satisfies": cyl.member,
        "cylinder_margin": cyl.margin,
        "violating_axis": cyl.violating_axis,
        "coords": coords_json(&coords),
        "violating_filter": filter,
        "filter_error": filter_error,
    }))
}

/// Infimum of `Tr(W^N W'^M)` over local filters for two potential witnesses.
pub fn duality(w1: &HermitianOp<f64>, w2: &HermitianOp<f64>, s: &Settings) -> Result<Value> {
    let mut svs = Vec::new();
    let mut coords = Vec::new();
    for w in [w1, w2] {
        if !classify::is_potential_witness_with(w, &s.tol) {
            return Err(Error::NotAWitness);
        }
        let sv = lorentz::lorentz_singular_values(&pauli::from_hermitian(w)?)?;
        coords.push(lorentz::slocc_coord(&sv).ok());
        svs.push(sv);
    }
    let inf = classify::duality_pairing(&svs[0], &svs[1]);
    let incriminated = match (&coords[0], &coords[1]) {
        (Some(a), Some(b)) => Some(classify::dual_plane_detection_with(a, b, &s.tol)),
        _ => None,
    };
    Ok(json!({
        "sv1": sv_json(&svs[0]),
        "sv2": sv_json(&svs[1]),
        "coords1": coords[0].as_ref().map(coords_json),
        "coords2": coords[1].as_ref().map(coords_json),
        "infimum": inf,
        "infimum_orbit": classify::duality_pairing_orbit(&svs[0], &svs[1]),
        "detected": inf < -s.tol.detection,
        "dual_plane_incriminated": incriminated,
    }))
}
