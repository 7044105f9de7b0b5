mod common;

use bicircle::classify::{face_lattice, order_type, TwoFace};
use bicircle::dual::{default_origin, dual_body, dual_boundary_classify, dual_cone, dual_mesh, DualBoundaryClass, DualError};
use bicircle::hull::{stationary_bisecants_through, support, PatchTag};
use bicircle::scalar::{rat, rint};
use bicircle::{Circle, Rational, Vec3};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn v(x: f64, y: f64, z: f64) -> Vec3<f64> {
    Vec3::new(x, y, z)
}

#[test]
fn cone_of_unlinked_circle_is_a_cylinder() {
    let (c1, _) = unlinked();
    let o = Vec3::new(rat(3, 2), rint(0), rint(0));
    let cone = dual_cone(&c1, &o);
    assert!(cone.is_cylinder);
    assert!(cone.vertex().is_none());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let w = Vec3::new(random_small(&mut rng, 2), random_small(&mut rng, 2), random_small(&mut rng, 2));
        let one = rint(1);
        let lin = &one - rat(3, 2) * &w.x;
        let expected = &lin * &lin - (&w.x * &w.x + &w.y * &w.y);
        assert_eq!(cone.eval(&w), expected);
    }
}

#[test]
fn cone_vertex_is_dual_to_the_plane() {
    let c = circle(["0", "0", "0"], "1", ["0", "0", "1"]);
    let cone = dual_cone(&c, &Vec3::new(rint(0), rint(0), rat(1, 2)));
    assert!(!cone.is_cylinder);
    assert_eq!(cone.vertex(), Some(Vec3::new(rint(0), rint(0), rint(2))));
    assert_eq!(cone.eval(&Vec3::zero()), rint(1));
    let on = circle(["0", "0", "0"], "1", ["0", "0", "1"]);
    assert_eq!(dual_cone(&on, &Vec3::new(rint(1), rint(0), rint(0))).eval(&Vec3::zero()), rint(1));
}

#[test]
fn unlinked_examples() {
    let (c1, c2) = unlinked();
    let db = dual_body(&c1, &c2, &v(1.5, 0.0, 0.0)).unwrap();
    assert!(db.contains(&v(0.0, 0.0, 0.0), 0.0));
    let w = v(-0.4, 0.0, 0.0);
    assert!(db.contains(&w, 1e-12));
    match dual_boundary_classify(&db, &w).unwrap() {
        DualBoundaryClass::OnSecond { contact } => assert!(contact.dist(&v(4.0, 0.0, 0.0)) < 1e-12),
        other => panic!("{other:?}"),
    }
    let w = v(0.8, 0.0, 0.0);
    let g = db.residuals(&w);
    assert!((g[0] - (-1.0)).abs() < 1e-12 && g[1] > 0.0);
    assert!(!db.contains(&w, 0.0));
    assert_eq!(dual_boundary_classify(&db, &v(0.1, 0.0, 0.0)).unwrap_err(), DualError::NotOnBoundary(db.residuals(&v(0.1, 0.0, 0.0))[0].min(db.residuals(&v(0.1, 0.0, 0.0))[1])));
}

#[test]
fn origin_must_be_interior() {
    let (c1, c2) = unlinked();
    assert!(matches!(dual_body(&c1, &c2, &v(10.0, 0.0, 0.0)), Err(DualError::OriginNotInterior(_))));
    assert!(matches!(dual_body(&c1, &c2, &v(4.0, 0.0, 0.0)), Err(DualError::OriginNotInterior(_))));
}

fn five() -> Vec<(Circle<Rational>, Circle<Rational>)> {
    vec![unlinked(), oloid(), mutually_tangent(), sphere_2c(), fixture("(1,2)")]
}

fn random_w<R: Rng>(rng: &mut R, rho: f64) -> Vec3<f64> {
    let d = v(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    d.scale(&(rho * 1.2 / d.norm().max(1e-9) * rng.gen_range(0.0f64..1.0).cbrt()))
}

#[test]
fn membership_matches_support_of_the_hull() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (c1, c2) in five() {
        let o = default_origin(&c1, &c2).unwrap();
        let db = dual_body(&c1, &c2, &o).unwrap();
        for _ in 0..2000 {
            let w = random_w(&mut rng, db.rho);
            let h = support(&c1, &c2, &-&w).unwrap().value + w.dot(&o);
            let g = db.residuals(&w);
            assert!((h - 1.0 + g[0].min(g[1])).abs() < 1e-10);
            if (h - 1.0).abs() > 1e-10 {
                assert_eq!(db.contains(&w, 0.0), h <= 1.0);
            }
        }
    }
}

#[test]
fn dual_body_is_convex_and_bounded() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for (c1, c2) in five() {
        let o = default_origin(&c1, &c2).unwrap();
        let db = dual_body(&c1, &c2, &o).unwrap();
        let members: Vec<Vec3<f64>> =
            (0..6000).map(|_| random_w(&mut rng, db.rho)).filter(|w| db.contains(w, 0.0)).collect();
        assert!(members.len() > 100);
        for w in &members {
            assert!(w.norm() < db.rho);
        }
        for k in 0..members.len() - 1 {
            let mid = (&members[k] + &members[k + 1]).scale(&0.5);
            assert!(db.contains(&mid, 1e-12));
        }
    }
}

/// Dual point of the plane through `pq` containing both tangents.
fn dual_of_bisecant(c1: &Circle<Rational>, c2: &Circle<Rational>, o: &Vec3<f64>, param: (f64, f64)) -> Option<Vec3<f64>> {
    let fan = stationary_bisecants_through(c1, c2, param);
    let p = fan.point.clone();
    let f1 = c1.to_f64();
    let n1 = &f1.normal;
    for q in fan.partners() {
        let t1 = n1.cross(&(&p - &f1.center));
        let n = t1.cross(&(&q - &p));
        if n.norm() < 1e-6 {
            continue;
        }
        let n = n.normalized();
        for n in [n.clone(), -&n] {
            let h = support(c1, c2, &n).unwrap().value;
            if (h - n.dot(&p)).abs() < 1e-9 {
                return Some(n.scale(&(-1.0 / (h - n.dot(o)))));
            }
        }
    }
    None
}

#[test]
fn boundary_bisecants_are_dual_to_both_cones() {
    let (c1, c2) = unlinked();
    let o = default_origin(&c1, &c2).unwrap();
    let db = dual_body(&c1, &c2, &o).unwrap();
    let mut found = 0;
    for k in 0..64 {
        let theta = std::f64::consts::TAU * (k as f64 + 0.3) / 64.0;
        let param = bicircle::geom3::angle_to_param(theta);
        let Some(w) = dual_of_bisecant(&c1, &c2, &o, param) else { continue };
        match dual_boundary_classify(&db, &w).unwrap() {
            DualBoundaryClass::OnBoth { p, edge_residual, .. } => {
                assert!(edge_residual.abs() < 1e-8);
                assert!(p.dist(&c1.to_f64().point_at_angle(theta)) < 1e-6);
                found += 1;
            }
            other => panic!("{other:?}"),
        }
    }
    assert!(found > 10);
}

#[test]
fn seam_points_lie_on_the_edge_curve() {
    let (c1, c2) = unlinked();
    let o = default_origin(&c1, &c2).unwrap();
    let db = dual_body(&c1, &c2, &o).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0;
    while checked < 50 {
        let a = random_w(&mut rng, 1.0).normalized();
        let b = random_w(&mut rng, 1.0).normalized();
        let (ia, ib) = (db.ray_to_boundary(&a).1, db.ray_to_boundary(&b).1);
        if ia == ib {
            continue;
        }
        let (mut lo, mut hi) = (a, b);
        for _ in 0..200 {
            let mid = (&lo + &hi).normalized();
            if db.ray_to_boundary(&mid).1 == ia {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (t, _) = db.ray_to_boundary(&lo);
        let w = lo.scale(&t);
        if let DualBoundaryClass::OnBoth { edge_residual, .. } = dual_boundary_classify(&db, &w).unwrap() {
            assert!(edge_residual.abs() < 1e-8, "{edge_residual}");
            checked += 1;
        }
    }
}

#[test]
fn cone_vertices_match_planar_faces() {
    for f in order_fixtures() {
        let o = default_origin(&f.c1, &f.c2).unwrap();
        let db = dual_body(&f.c1, &f.c2, &o).unwrap();
        let fl = face_lattice(&order_type(&f.c1, &f.c2).unwrap(), &f.c1, &f.c2).unwrap();
        for i in 0..2 {
            let has_face = fl.two_faces.iter().any(|t| match t {
                TwoFace::Disc { circle } | TwoFace::DiscAndPoint { circle, .. } => *circle == i + 1,
            });
            assert_eq!(db.vertex_on_boundary(i, 1e-12), has_face, "{} circle {}", f.tag, i + 1);
            if has_face {
                let w = db.cones[i].vertex().unwrap();
                assert_eq!(dual_boundary_classify(&db, &w).unwrap(), DualBoundaryClass::Vertex { circle: i + 1 });
            }
        }
    }
}

#[test]
fn oloid_dual_is_two_cylinders() {
    let (c1, c2) = oloid();
    let o = default_origin(&c1, &c2).unwrap();
    assert!(o.dist(&v(0.5, 0.0, 0.0)) < 1e-15);
    let db = dual_body(&c1, &c2, &o).unwrap();
    assert!(db.cones.iter().all(|c| c.is_cylinder));
    let mesh = dual_mesh(&db, 64).unwrap();
    assert_eq!(mesh.boundary_edge_count(), 0);
    assert_eq!(mesh.euler_characteristic(), 2);
}

#[test]
fn unlinked_dual_mesh_has_two_patches_and_a_seam() {
    let (c1, c2) = unlinked();
    let db = dual_body(&c1, &c2, &v(1.5, 0.0, 0.0)).unwrap();
    let mesh = dual_mesh(&db, 96).unwrap();
    let census = mesh.tag_census();
    for tag in [PatchTag::DualCone { circle: 1 }, PatchTag::DualCone { circle: 2 }, PatchTag::DualSeam] {
        assert!(census.get(&tag).copied().unwrap_or(0) > 0, "{tag:?}");
    }
    for w in &mesh.vertices {
        let g = db.residuals(w);
        assert!(g[0].min(g[1]).abs() < 1e-8);
        assert!(w.norm() < db.rho);
    }
    assert!(matches!(dual_mesh(&db, 8), Err(DualError::ResolutionTooSmall)));
}
