mod common;

use std::f64::consts::PI;

use bicircle::binary_form::ProjectiveRoot;
use bicircle::edge::*;
use bicircle::geom3::{angle_to_param, circle_parametrization};
use bicircle::scalar::{rint, Rational};
use bicircle::Circle;
use common::*;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn unlinked_edge_form_is_exact() {
    let (pc1, pc2) = unlinked_conics();
    let f = edge_form(&pc1, &pc2).unwrap();
    let want = Bideg22Form::<Rational>::from_i64([[1, 0, -3], [0, 0, 0], [-3, 0, 5]]).scale(&rint(-16));
    assert_eq!(f, want);
}

#[test]
fn unlinked_discriminant() {
    let (pc1, pc2) = unlinked_conics();
    let f = edge_form(&pc1, &pc2).unwrap();
    let (dst, _) = discriminants(&f);
    // 4 (s^2 - 3t^2)(3s^2 - 5t^2) times 16^2
    let k = rint(256 * 4);
    let want: Vec<Rational> = [3, 0, -14, 0, 15].iter().map(|&c| rint(c) * &k).collect();
    assert_eq!(dst.quartic.coeffs(), &want[..]);
    assert_eq!(dst.real_count, 4);
    let mut xs: Vec<f64> = dst.roots.iter().map(|r| {
        let (s, t) = r.root.real_st();
        s / t
    }).collect();
    xs.sort_by(f64::total_cmp);
    let want = [-(3f64.sqrt()), -(5.0f64 / 3.0).sqrt(), (5.0f64 / 3.0).sqrt(), 3f64.sqrt()];
    for (a, b) in xs.iter().zip(want) {
        assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }
}

#[test]
fn diagonal_form_discriminant() {
    let f = Bideg22Form::<Rational>::from_i64([[1, 0, 0], [0, 0, 0], [0, 0, 1]]);
    let (dst, _) = discriminants(&f);
    let want: Vec<Rational> = [0, 0, -4, 0, 0].iter().map(|&c| rint(c)).collect();
    assert_eq!(dst.quartic.coeffs(), &want[..]);
    assert_eq!(dst.pattern, vec![2, 2]);
}

#[test]
fn swap_symmetry_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let (c1, c2) = random_pair(&mut rng);
        let (p1, p2) = (circle_parametrization(&c1), circle_parametrization(&c2));
        let f = edge_form(&p1, &p2).unwrap();
        let g = edge_form(&p2, &p1).unwrap();
        assert_eq!(f, g.swapped());
        let (_, duv) = discriminants(&f);
        let (dswap, _) = discriminants(&g);
        assert_eq!(duv.quartic, dswap.quartic);
    }
}

#[test]
fn bidegree_is_full_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let (c1, c2) = random_pair(&mut rng);
        let f = edge_form(&circle_parametrization(&c1), &circle_parametrization(&c2)).unwrap();
        assert!(f.has_full_bidegree());
    }
}

#[test]
fn coplanar_conics_are_rejected() {
    let c1 = circle(["0", "0", "0"], "1", ["0", "0", "1"]);
    let c2 = circle(["1", "1", "0"], "2", ["0", "0", "1"]);
    let err = edge_form(&circle_parametrization(&c1), &circle_parametrization(&c2)).unwrap_err();
    assert_eq!(err, EdgeError::CoplanarConics);
}

#[test]
fn tangent_to_plane_gives_a_fiber_component() {
    // C2 touches z = 0 at (0,0,0), a point of C1's plane outside C1.
    let c1 = circle(["0", "2", "0"], "1", ["0", "0", "1"]);
    let c2 = circle(["0", "0", "1"], "1", ["0", "1", "0"]);
    let (f, ct) = classify_edge_curve(&c1, &c2).unwrap();
    assert_eq!(ct.zero_one_components, 1);
    assert_eq!(ct.one_zero_components, 0);
    assert_eq!(ct.tag, CurveTag::TwoOnePlusZeroOne);
    // The factor vanishes at the parameter of the tangency point on C2.
    let pc2 = circle_parametrization(&c2);
    let rows = f.uv_coefficients();
    let g = rows.iter().skip(1).fold(rows[0].clone(), |a, r| a.gcd(r));
    let (u, v) = g.roots()[0].root.real_st();
    let p = pc2.to_f64().affine_point(&u, &v).unwrap();
    assert!(p.norm() < 1e-9, "{p:?}");
}

#[test]
fn classification_examples() {
    let (pc1, pc2) = unlinked_conics();
    let f = edge_form(&pc1, &pc2).unwrap();
    assert_eq!(classify_curve(&f).unwrap().tag, CurveTag::SmoothGenusOne);

    let split = Bideg22Form::<Rational>::from_i64([[1, 0, 0], [0, 0, 0], [0, 0, -1]]);
    assert_eq!(classify_curve(&split).unwrap().tag, CurveTag::TwoOneOne { real: true });
    let conj = Bideg22Form::<Rational>::from_i64([[1, 0, 0], [0, 0, 0], [0, 0, 1]]);
    assert_eq!(classify_curve(&conj).unwrap().tag, CurveTag::TwoOneOne { real: false });
    assert_eq!(classify_curve(&Bideg22Form::<Rational>::from_i64([[0; 3]; 3])).unwrap_err(), EdgeError::ZeroForm);
}

#[test]
fn one_shared_point_gives_a_case_one_node() {
    let (c1, c2) = fixture("(1,S,2)");
    let (_, ct) = classify_edge_curve(&c1, &c2).unwrap();
    assert_eq!(ct.tag, CurveTag::NodalIrreducibleRational);
    let real: Vec<_> = ct.singular_points.iter().filter(|p| p.real).collect();
    assert_eq!(real.len(), 1, "{:?}", ct.singular_points);
    assert_eq!(real[0].lemma_case, LemmaCase::I);
    assert_eq!(real[0].local_type, LocalType::Node);
}

#[test]
fn mutually_tangent_circles_give_case_three() {
    let (c1, c2) = mutually_tangent();
    let (_, ct) = classify_edge_curve(&c1, &c2).unwrap();
    assert!(ct.singular_points.iter().any(|p| p.real && p.lemma_case == LemmaCase::III), "{ct:?}");
}

#[test]
fn disjoint_generic_circles_have_no_singular_points() {
    let (c1, c2) = unlinked();
    let (_, ct) = classify_edge_curve(&c1, &c2).unwrap();
    assert!(ct.singular_points.is_empty());
}

#[test]
fn real_component_counts() {
    let (pc1, pc2) = unlinked_conics();
    let f = edge_form(&pc1, &pc2).unwrap();
    assert_eq!(real_components(&f, DEFAULT_GRID).count, 2);

    let (c1, c2) = oloid();
    let (f, _) = classify_edge_curve(&c1, &c2).unwrap();
    assert_eq!(real_components(&f, DEFAULT_GRID).count, 1);

    let pos = Bideg22Form::<Rational>::from_i64([[1, 0, 1], [0, 0, 0], [1, 0, 1]]);
    assert_eq!(real_components(&pos, DEFAULT_GRID).count, 0);
}

#[test]
fn harmonic_j_is_1728() {
    let z = [0.0, 1.0, 2.0].map(|x| ProjectiveRoot::finite(Complex64::new(x, 0.0)));
    let roots = [z[0], z[1], z[2], ProjectiveRoot::Infinity];
    let j = j_from_roots(&roots);
    assert!((j.re - 1728.0).abs() < 1e-9 && j.im.abs() < 1e-9);
}

#[test]
fn unlinked_j_invariant() {
    // Independent oracle: lambda from the explicit root values.
    let l = (47.0 - 21.0 * 5f64.sqrt()) / 2.0;
    let oracle = 256.0 * (l * l - l + 1.0).powi(3) / (l * l * (l - 1.0).powi(2));
    let frozen = 24918016.0 / 45.0;
    assert!((oracle - frozen).abs() < 1e-6 * frozen);
    let (pc1, pc2) = unlinked_conics();
    let f = edge_form(&pc1, &pc2).unwrap();
    let j = j_invariant(&f).unwrap();
    assert!((j - frozen).abs() < 1e-9 * frozen, "{j}");
    let juv = j_invariant_uv(&f).unwrap();
    assert!((juv - frozen).abs() < 1e-9 * frozen, "{juv}");
}

#[test]
fn j_is_independent_of_root_order() {
    let z: Vec<ProjectiveRoot> = [0.3, -1.7, 2.2, 5.0].iter().map(|&x| ProjectiveRoot::finite(Complex64::new(x, 0.0))).collect();
    let base = j_from_roots(&[z[0], z[1], z[2], z[3]]).re;
    let perms = [[1, 0, 2, 3], [2, 3, 0, 1], [3, 1, 2, 0], [0, 2, 3, 1], [1, 3, 0, 2]];
    for p in perms {
        let j = j_from_roots(&[z[p[0]], z[p[1]], z[p[2]], z[p[3]]]).re;
        assert!((j - base).abs() < 1e-9 * base.abs());
    }
}

#[test]
fn j_requires_smooth_curve() {
    let split = Bideg22Form::<Rational>::from_i64([[1, 0, 0], [0, 0, 0], [0, 0, -1]]);
    assert_eq!(j_invariant(&split).unwrap_err(), EdgeError::NotSmoothGenusOne);
}

fn unit_xy() -> Circle<f64> {
    Circle::new(bicircle::Vec3::new(0.0, 0.0, 0.0), 1.0, bicircle::Vec3::new(0.0, 0.0, 1.0)).unwrap()
}

#[test]
fn opposite_tangents_are_degenerate() {
    let params = [0.0, 90.0, 180.0, 270.0].map(f64::to_radians);
    let err = circle_with_branch_points(&unit_xy(), params, Pairing::P02, 1.0).unwrap_err();
    assert!(matches!(err, EdgeError::DegenerateConfiguration(_)));
}

#[test]
fn branch_points_round_trip() {
    let c1 = unit_xy();
    let params = [0.0, 60.0, 180.0, 240.0].map(f64::to_radians);
    for pick in [0.4, 1.0, PI / 2.0, 2.5] {
        let c2 = circle_with_branch_points(&c1, params, Pairing::P01, pick).unwrap();
        let f = edge_form(&circle_parametrization(&c1), &circle_parametrization(&c2)).unwrap();
        let (dst, _) = discriminants(&f);
        let got: Vec<f64> = dst.real_params().into_iter().map(projective_angle).collect();
        let mut want: Vec<f64> = params.iter().map(|t| (t / 2.0).rem_euclid(PI)).collect();
        want.sort_by(f64::total_cmp);
        assert_eq!(got.len(), 4, "{got:?}");
        for (a, b) in got.iter().zip(&want) {
            assert!((a - b).abs() < 1e-9, "{got:?} vs {want:?}");
        }
        let direct = j_from_roots(&params.map(|t| {
            let (s, tt) = angle_to_param(t);
            if tt.abs() < 1e-12 {
                ProjectiveRoot::Infinity
            } else {
                ProjectiveRoot::finite(Complex64::new(s / tt, 0.0))
            }
        }))
        .re;
        let j = j_invariant(&f).unwrap();
        assert!((j - direct).abs() < 1e-9 * direct.abs().max(1.0), "{j} vs {direct}");
    }
}

#[test]
fn random_branch_points_round_trip() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let c1 = unit_xy();
    let mut done = 0;
    while done < 30 {
        let mut params: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.0..2.0 * PI));
        params.sort_by(f64::total_cmp);
        let gaps_ok = (0..4).all(|i| (params[(i + 1) % 4] - params[i]).rem_euclid(2.0 * PI) > 0.2);
        let Ok(c2) = circle_with_branch_points(&c1, params, Pairing::P01, rng.gen_range(0.3..2.8)) else { continue };
        if !gaps_ok {
            continue;
        }
        let f = edge_form(&circle_parametrization(&c1), &circle_parametrization(&c2)).unwrap();
        let (dst, _) = discriminants(&f);
        let got: Vec<f64> = dst.real_params().into_iter().map(projective_angle).collect();
        let mut want: Vec<f64> = params.iter().map(|t| (t / 2.0).rem_euclid(PI)).collect();
        want.sort_by(f64::total_cmp);
        assert_eq!(got.len(), 4);
        for (a, b) in got.iter().zip(&want) {
            assert!((a - b).abs() < 1e-8, "{got:?} vs {want:?}");
        }
        done += 1;
    }
}
