use std::collections::BTreeMap;

use bicircle::classify::{
    face_lattice, intersection_type, is_spectrahedral_tag, lmi_agreement, order_type, spectrahedron, PointLabel,
};
use bicircle::dual::{default_origin, dual_body, dual_mesh};
use bicircle::edge::{
    classify_curve, discriminants, edge_form, j_invariant, real_components, singular_points_of, BranchData, CurveTag,
    DEFAULT_GRID,
};
use bicircle::geom3::{circle_parametrization, Line, ParametrizedConic};
use bicircle::hull::{
    boundary_mesh, is_boundary_bisecant, line_section_count, membership, stationary_bisecants_through, support,
    FanVariant, RuledMesh,
};
use bicircle::sampling::random_pair;
use bicircle::{Rational, Scalar, Vec3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::{parse_param, parse_point, Scene};
use crate::error::CliError;
use crate::obj::{census, to_obj};
use crate::report::{exact, num, scalar, serialized, vec3};

/// Exact parametrizations of the scene: the configured ones or the default
/// circle parametrizations.
fn conics<S: Scalar>(scene: &Scene<S>) -> Result<(ParametrizedConic<Rational>, ParametrizedConic<Rational>), CliError> {
    Ok(match &scene.parametrizations {
        Some((a, b)) => (a.to_rational(), b.to_rational()),
        None => (circle_parametrization(&scene.c1.exact()?), circle_parametrization(&scene.c2.exact()?)),
    })
}

fn label(l: PointLabel) -> &'static str {
    match l {
        PointLabel::One => "1",
        PointLabel::Two => "2",
        PointLabel::Shared => "S",
    }
}

fn branch(b: &BranchData<Rational>) -> Value {
    json!({
        "quartic": b.quartic.coeffs().iter().map(exact).collect::<Vec<_>>(),
        "pattern": b.pattern,
        "real_count": b.real_count,
        "real_params": b.real_params().iter().map(|&(s, t)| vec![num(s), num(t)]).collect::<Vec<_>>(),
        "roots": serialized(&b.roots),
    })
}

fn curve_report(pc1: &ParametrizedConic<Rational>, pc2: &ParametrizedConic<Rational>) -> Result<Value, CliError> {
    let f = edge_form(pc1, pc2)?;
    let mut ct = classify_curve(&f)?;
    ct.singular_points = singular_points_of(&f, pc1, pc2);
    let j = if ct.tag == CurveTag::SmoothGenusOne { Some(j_invariant(&f)?) } else { None };
    let comps = real_components(&f, DEFAULT_GRID);
    Ok(json!({
        "type": ct.tag.label(),
        "one_zero_components": ct.one_zero_components,
        "zero_one_components": ct.zero_one_components,
        "residual_pattern": ct.residual_pattern,
        "real_components": comps.count,
        "singular_points": serialized(&ct.singular_points),
        "j_invariant": j.map(num),
    }))
}

pub fn classify<S: Scalar>(scene: &Scene<S>) -> Result<Value, CliError> {
    let (c1, c2) = (&scene.c1, &scene.c2);
    let ot = order_type(c1, c2)?;
    let it = intersection_type(c1, c2)?;
    let (pc1, pc2) = conics(scene)?;
    let curve = curve_report(&pc1, &pc2)?;
    let fl = face_lattice(&ot, c1, c2)?;
    let spec = match spectrahedron(c1, c2) {
        Ok(r) => json!({ "is_spectrahedron": r.is_spectrahedron, "reason": r.reason }),
        Err(e) => json!({ "is_spectrahedron": is_spectrahedral_tag(ot.tag), "error": e.to_string() }),
    };
    let points: Vec<Value> = ot
        .points
        .iter()
        .map(|p| {
            json!({
                "label": label(p.label),
                "position": num(p.position),
                "exact": p.exact.as_ref().map(bicircle::scalar::rational_string),
                "multiplicity": p.multiplicity,
            })
        })
        .collect();
    let mut lattice = serialized(&fl);
    lattice["tag"] = json!(fl.tag.label());
    Ok(json!({
        "order_type": {
            "tag": ot.tag.label(),
            "swapped": ot.swapped,
            "points": points,
            "line": ot.line.as_ref().map(|l| json!({ "base": vec3(&l.base), "direction": vec3(&l.direction) })),
        },
        "intersection_type": [it.m1, it.m2],
        "curve": curve,
        "j_invariant": curve["j_invariant"].clone(),
        "face_lattice": lattice,
        "spectrahedron": spec,
    }))
}

pub fn edge_curve<S: Scalar>(scene: &Scene<S>) -> Result<Value, CliError> {
    let (pc1, pc2) = conics(scene)?;
    let f = edge_form(&pc1, &pc2)?;
    let (dst, duv) = discriminants(&f);
    let grid: Vec<Vec<Value>> = f.coeff.iter().map(|row| row.iter().map(exact).collect()).collect();
    Ok(json!({
        "coefficients": grid,
        "polynomial": f.to_polynomial_string(),
        "discriminant_st": branch(&dst),
        "discriminant_uv": branch(&duv),
        "curve": curve_report(&pc1, &pc2)?,
    }))
}

pub fn bisecants<S: Scalar>(scene: &Scene<S>, param: &str) -> Result<Value, CliError> {
    let param = parse_param(param)?;
    let fan = stationary_bisecants_through(&scene.c1, &scene.c2, param);
    let variant = match &fan.variant {
        FanVariant::TwoReal(_) => "TwoReal",
        FanVariant::OneReal(_) => "OneReal",
        FanVariant::NoneReal => "NoneReal",
        FanVariant::Pencil => "Pencil",
    };
    let partners = fan
        .partners()
        .iter()
        .zip(&fan.partner_params)
        .map(|(q, &(u, v))| {
            let boundary = is_boundary_bisecant(&scene.c1, &scene.c2, (&fan.point, q))?;
            Ok(json!({ "point": vec3(q), "param": [num(u), num(v)], "boundary": boundary }))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(json!({
        "source": [num(fan.source.0), num(fan.source.1)],
        "point": vec3(&fan.point),
        "meet": fan.meet.as_ref().map(vec3),
        "variant": variant,
        "partners": partners,
    }))
}

pub fn member<S: Scalar>(scene: &Scene<S>, point: &str) -> Result<Value, CliError> {
    let x = parse_point(point)?.to_f64();
    let m = membership(&scene.c1, &scene.c2, &x, scene.tolerances.membership);
    Ok(json!({
        "point": vec3(&x),
        "verdict": format!("{:?}", m.verdict),
        "signed_distance": num(m.signed_distance),
        "direction": vec3(&m.direction),
        "support_value": num(m.support_value),
        "tolerance": num(scene.tolerances.membership),
    }))
}

pub fn support_cmd<S: Scalar>(scene: &Scene<S>, dir: &str) -> Result<Value, CliError> {
    let w = parse_point(dir)?.to_f64();
    let s = support(&scene.c1, &scene.c2, &w)?;
    Ok(json!({
        "direction": vec3(&w),
        "value": num(s.value),
        "attained_by": s.attained_by,
        "argmax": s.argmax.iter().map(vec3).collect::<Vec<_>>(),
        "face": serialized(&s.face),
    }))
}

pub fn surface_degree<S: Scalar>(scene: &Scene<S>, line: &str) -> Result<Value, CliError> {
    let (a, b) = line
        .split_once(':')
        .ok_or_else(|| CliError::Argument(format!("expected x,y,z:x,y,z, found {line:?}")))?;
    let (p, q) = (parse_point(a)?, parse_point(b)?);
    let conv = |v: &Vec3<Rational>| Vec3::new(S::from_rational(&v.x), S::from_rational(&v.y), S::from_rational(&v.z));
    let l = Line::through(&conv(&p), &conv(&q)).map_err(|e| CliError::Argument(e.to_string()))?;
    let sec = line_section_count(&scene.c1, &scene.c2, &l)?;
    Ok(json!({
        "total": sec.total_with_multiplicity,
        "real": sec.real_count,
        "points": serialized(&sec.real_points),
        "eliminant": sec.eliminant.coeffs().iter().map(exact).collect::<Vec<_>>(),
        "fiber_degrees": sec.fiber_degrees,
    }))
}

fn mesh_summary(mesh: &RuledMesh) -> Value {
    json!({
        "vertices": mesh.vertices.len(),
        "triangles": mesh.triangles.len(),
        "area": num(mesh.area()),
        "boundary_edges": mesh.boundary_edge_count(),
        "euler_characteristic": mesh.euler_characteristic(),
        "patches": census(mesh),
    })
}

/// Mesh report plus the OBJ text.
pub fn mesh<S: Scalar>(scene: &Scene<S>, resolution: usize) -> Result<(Value, String), CliError> {
    let m = boundary_mesh(&scene.c1, &scene.c2, resolution)?;
    Ok((json!({ "resolution": resolution, "mesh": mesh_summary(&m) }), to_obj(&m)))
}

pub fn dual<S: Scalar>(scene: &Scene<S>, origin: &str, resolution: usize) -> Result<(Value, String), CliError> {
    let o = if origin == "auto" { default_origin(&scene.c1, &scene.c2)? } else { parse_point(origin)?.to_f64() };
    let db = dual_body(&scene.c1, &scene.c2, &o)?;
    let m = dual_mesh(&db, resolution)?;
    let cones: Vec<Value> = db
        .cones
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "is_cylinder": c.is_cylinder,
                "vertex": c.vertex().as_ref().map(vec3),
                "vertex_on_boundary": db.vertex_on_boundary(i, 1e-12),
                "quadratic": c.quadratic.iter().map(|r| r.iter().map(|&x| num(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "linear": c.linear.iter().map(|&x| num(x)).collect::<Vec<_>>(),
                "constant": num(c.constant),
            })
        })
        .collect();
    let report = json!({
        "origin": vec3(&o),
        "inscribed_radius": num(db.inscribed_radius),
        "rho": num(db.rho),
        "cones": cones,
        "resolution": resolution,
        "mesh": mesh_summary(&m),
    });
    Ok((report, to_obj(&m)))
}

pub fn lmi<S: Scalar>(scene: &Scene<S>, grid: usize) -> Result<Value, CliError> {
    let r = spectrahedron(&scene.c1, &scene.c2)?;
    let Some(lmi) = &r.lmi else {
        return Ok(json!({ "order_type": r.tag.label(), "is_spectrahedron": false, "reason": r.reason }));
    };
    let blocks: Vec<Value> = lmi
        .blocks
        .iter()
        .map(|b| {
            let mats: Vec<Value> = b
                .matrices
                .iter()
                .map(|m| Value::Array(m.iter().map(|row| row.iter().map(|&x| num(x)).collect()).collect()))
                .collect();
            json!({ "size": b.size(), "A0": mats[0], "Ax": mats[1], "Ay": mats[2], "Az": mats[3] })
        })
        .collect();
    let scale = 1.0 + scene.c1.center.to_f64().norm() + scene.c2.center.to_f64().norm();
    let (agreement, compared) = lmi_agreement(&scene.c1, &scene.c2, lmi, grid.max(2), 1e-6 * scale);
    Ok(json!({
        "order_type": r.tag.label(),
        "is_spectrahedron": true,
        "blocks": blocks,
        "validation": { "grid": grid, "compared": compared, "agreement": num(agreement) },
    }))
}

pub fn fuzz(seed: u64, count: usize) -> Result<Value, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut orders: BTreeMap<String, usize> = BTreeMap::new();
    let mut curves: BTreeMap<String, usize> = BTreeMap::new();
    let mut errors: BTreeMap<String, usize> = BTreeMap::new();
    let mut forbidden = 0;
    for _ in 0..count {
        let (c1, c2) = random_pair(&mut rng);
        match order_type(&c1, &c2) {
            Ok(ot) => *orders.entry(ot.tag.label().to_string()).or_default() += 1,
            Err(e) => *errors.entry(e.to_string()).or_default() += 1,
        }
        let f = edge_form(&circle_parametrization(&c1), &circle_parametrization(&c2))
            .map_err(CliError::from)
            .and_then(|f| classify_curve(&f).map_err(CliError::from));
        match f {
            Ok(ct) => {
                if matches!(ct.tag, CurveTag::Cuspidal | CurveTag::FourLines) {
                    forbidden += 1;
                }
                *curves.entry(ct.tag.label().to_string()).or_default() += 1;
            }
            Err(e) => *errors.entry(e.to_string()).or_default() += 1,
        }
    }
    Ok(json!({
        "seed": seed,
        "count": count,
        "order_types": orders,
        "curve_types": curves,
        "cuspidal_or_four_lines": forbidden,
        "errors": errors,
    }))
}

pub fn scalar_summary<S: Scalar>(scene: &Scene<S>) -> Value {
    let c = |c: &bicircle::Circle<S>| {
        json!({
            "center": c.center.to_array().iter().map(scalar).collect::<Vec<_>>(),
            "radius": scalar(&c.radius),
            "normal": c.normal.to_array().iter().map(scalar).collect::<Vec<_>>(),
        })
    };
    json!([c(&scene.c1), c(&scene.c2)])
}
