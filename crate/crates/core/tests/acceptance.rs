//! Acceptance suite: one PASS/FAIL line per criterion. Run with
//! `cargo test -p bicircle --test acceptance -- --nocapture --test-threads 1`.

mod common;

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};
use std::time::Instant;

use bicircle::binary_form::ProjectiveRoot;
use bicircle::classify::{face_lattice, lattice_row, order_type, spectrahedron, OrderTag};
use bicircle::dual::{default_origin, dual_body};
use bicircle::edge::{
    circle_with_branch_points, classify_curve, classify_edge_curve, discriminants, edge_form, fiber_roots,
    j_from_lambda, j_from_roots, j_invariant, j_invariant_uv, projective_angle, real_components, Bideg22Form,
    CurveTag, FiberRoots, Pairing, DEFAULT_GRID,
};
use bicircle::geom3::{angle_to_param, circle_parametrization, param_to_angle};
use bicircle::hull::{
    boundary_mesh, line_section_count, membership, signed_distance, stationary_bisecants_through, Disc, FanVariant,
    HullError, Verdict,
};
use bicircle::scalar::{rint, Rational};
use bicircle::{Circle, Line, ParametrizedConic, Vec3};
use common::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn report(n: usize, name: &str, pass: bool, detail: String) {
    println!("criterion {n:>2} {name}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} failed: {detail}");
}

fn det4(m: [[Rational; 4]; 4]) -> Rational {
    let mut acc = rint(0);
    for c in 0..4 {
        let minor: [[Rational; 3]; 3] = std::array::from_fn(|i| {
            let cols: Vec<usize> = (0..4).filter(|&k| k != c).collect();
            std::array::from_fn(|j| m[i + 1][cols[j]].clone())
        });
        let d3 = &minor[0][0] * (&minor[1][1] * &minor[2][2] - &minor[1][2] * &minor[2][1])
            - &minor[0][1] * (&minor[1][0] * &minor[2][2] - &minor[1][2] * &minor[2][0])
            + &minor[0][2] * (&minor[1][0] * &minor[2][1] - &minor[1][1] * &minor[2][0]);
        let term = &m[0][c] * d3;
        acc = if c % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Tangent lines meet iff the four derivative vectors are dependent.
fn tangent_det(p1: &ParametrizedConic<Rational>, p2: &ParametrizedConic<Rational>, x: [i64; 4]) -> Rational {
    let [s, t, u, v] = x.map(rint);
    det4([p1.d_s(&s, &t), p1.d_t(&s, &t), p2.d_s(&u, &v), p2.d_t(&u, &v)])
}

#[test]
fn criterion_01_edge_form_exact() {
    let (pc1, pc2) = unlinked_conics();
    let f = edge_form(&pc1, &pc2).unwrap();
    let frozen = Bideg22Form::<Rational>::from_i64([[1, 0, -3], [0, 0, 0], [-3, 0, 5]]).scale(&rint(-16));
    // The oracle fixes the scale at one point and must agree at all others.
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let base = [1, 2, 3, 1];
    let k = f.eval(&rint(1), &rint(2), &rint(3), &rint(1)) / tangent_det(&pc1, &pc2, base);
    let mut agree = true;
    for _ in 0..60 {
        let x: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-9..=9));
        let [s, t, u, v] = x.map(rint);
        agree &= f.eval(&s, &t, &u, &v) == &k * tangent_det(&pc1, &pc2, x);
    }
    report(1, "edge form exactness", f == frozen && agree, format!("form {}", f.to_polynomial_string()));
}

#[test]
fn criterion_02_real_components() {
    let (pc1, pc2) = unlinked_conics();
    let f = edge_form(&pc1, &pc2).unwrap();
    let tag = classify_curve(&f).unwrap().tag;
    let count = real_components(&f, DEFAULT_GRID).count;
    // Oracle: each arc of the first circle over which the fiber has real
    // roots carries one oval.
    let ff = f.to_f64();
    let n = 20000;
    let disc = |k: usize| {
        let (s, t) = angle_to_param(TAU * (k as f64 + 0.5) / n as f64);
        let [a, b, c] = ff.fiber_over_st(s, t);
        b * b - 4.0 * a * c
    };
    let changes = (0..n).filter(|&k| (disc(k) > 0.0) != (disc((k + 1) % n) > 0.0)).count();
    let arcs = changes / 2;
    let pass = tag == CurveTag::SmoothGenusOne && count == 2 && arcs == 2;
    report(2, "real components", pass, format!("{} with {count} components, oracle {arcs}", tag.label()));
}

#[test]
fn criterion_03_degree_eight() {
    let (c1, c2) = unlinked();
    let l = Line::new(qv("0", "1/10", "1/10"), qv("1", "0", "0")).unwrap();
    let s = line_section_count(&c1, &c2, &l).unwrap();
    let (d1, d2) = (Disc::of(&c1), Disc::of(&c2));
    // Oracle: each point lies on the line through its circle points, and
    // the tangents there are coplanar with that line.
    let on_bisecant = s.real_points.iter().all(|sp| {
        let p = d1.point(param_to_angle(sp.st.0, sp.st.1));
        let q = d2.point(param_to_angle(sp.uv.0, sp.uv.1));
        let (t1, t2) = (d1.normal.cross(&(&p - &d1.center)), d2.normal.cross(&(&q - &d2.center)));
        let dir = (&q - &p).normalized();
        let coplanar = dir.dot(&t1.normalized().cross(&t2.normalized())).abs() < 1e-9;
        let off = &sp.point - &p;
        let collinear = off.cross(&dir).norm() < 1e-9;
        coplanar && collinear && (sp.point.y - 0.1).abs() < 1e-9 && (sp.point.z - 0.1).abs() < 1e-9
    });
    let fixed = s.eliminant.degree() == 8 && s.total_with_multiplicity == 8 && s.real_count == 8 && on_bisecant;

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut nondegenerate, mut eight) = (0, 0);
    for _ in 0..100 {
        let base = Vec3::new(random_small(&mut rng, 2), random_small(&mut rng, 2), random_small(&mut rng, 2));
        let dir = Vec3::new(random_small(&mut rng, 2), random_small(&mut rng, 2), random_small(&mut rng, 2));
        let Ok(l) = Line::new(base, dir) else { continue };
        match line_section_count(&c1, &c2, &l) {
            Ok(s) => {
                nondegenerate += 1;
                eight += usize::from(s.total_with_multiplicity == 8);
            }
            Err(HullError::DegenerateLine) => {}
            Err(e) => panic!("{e}"),
        }
    }
    let pass = fixed && eight == nondegenerate && nondegenerate > 0;
    report(
        3,
        "degree eight",
        pass,
        format!("{} real of degree {}; random lines {eight}/{nondegenerate}", s.real_count, s.eliminant.degree()),
    );
}

/// Tag read off the sorted line points recorded with each fixture.
fn oracle_tag(roots1: &[Rational], roots2: &[Rational], proportional: bool) -> Option<String> {
    if roots1.is_empty() && roots2.is_empty() {
        return Some(if proportional { "(2c)".into() } else { "∅".into() });
    }
    let mut r1 = roots1.to_vec();
    r1.dedup();
    let mut r2 = roots2.to_vec();
    r2.dedup();
    let mut pts: Vec<(Rational, char)> = r1.iter().map(|x| (x.clone(), if r2.contains(x) { 'S' } else { 'a' })).collect();
    pts.extend(r2.iter().filter(|x| !r1.contains(x)).map(|x| (x.clone(), 'b')));
    pts.sort_by(|a, b| a.0.cmp(&b.0));
    let labels: Vec<&str> = OrderTag::ALL.iter().map(|t| t.label()).collect();
    let (hi, lo) = (r1.len().max(r2.len()), r1.len().min(r2.len()));
    for rev in [false, true] {
        for swap in [false, true] {
            let mut seq: Vec<char> = pts.iter().map(|p| p.1).collect();
            if rev {
                seq.reverse();
            }
            let text: Vec<&str> = seq
                .iter()
                .map(|c| match (c, swap) {
                    ('S', _) => "S",
                    ('a', false) | ('b', true) => "1",
                    _ => "2",
                })
                .collect();
            let label = format!("({})", text.join(","));
            let (m1, m2) = if swap { (r2.len(), r1.len()) } else { (r1.len(), r2.len()) };
            if labels.contains(&label.as_str()) && m1 == hi && m2 == lo {
                return Some(label);
            }
        }
    }
    None
}

#[test]
fn criterion_04_classification_census() {
    let fixtures = order_fixtures();
    let mut matched = 0;
    let mut classes = BTreeSet::new();
    for f in &fixtures {
        let proportional = (0..3).all(|i| (0..3).all(|j| &f.q1[i] * &f.q2[j] == &f.q1[j] * &f.q2[i]));
        let hand = oracle_tag(&f.roots1, &f.roots2, proportional);
        let ot = order_type(&f.c1, &f.c2).unwrap();
        let fl = face_lattice(&ot, &f.c1, &f.c2).unwrap();
        let row = lattice_row(ot.tag);
        let nonexposed_points =
            fl.nonexposed.iter().filter(|n| matches!(n, bicircle::classify::Nonexposed::Point { .. })).count();
        let ok = hand.as_deref() == Some(f.tag.as_str())
            && ot.tag.label() == f.tag
            && fl.combinatorial_class == f.face_class
            && row.class == f.face_class
            && nonexposed_points == row.nonexposed_points
            && fl.nonexposed.len() - nonexposed_points == row.nonexposed_bisecants
            && fl.isolated_bisecant.is_some() == row.isolated_bisecant;
        matched += usize::from(ok);
        classes.insert(fl.combinatorial_class);
    }
    let pass = fixtures.len() == 15 && matched == 15 && classes.len() == 11;
    report(4, "classification census", pass, format!("{matched}/15 fixtures, {} face classes", classes.len()));
}

/// `max_w (w.x - h(w))` over unit `w`: positive exactly when a plane
/// separates `x` from both discs.
fn separation(d1: &Disc, d2: &Disc, x: &Vec3<f64>) -> f64 {
    let h = |w: &Vec3<f64>| w.dot(x) - d1.support(w).max(d2.support(w));
    let n = 600;
    let golden = PI * (3.0 - 5f64.sqrt());
    let mut best = (f64::NEG_INFINITY, Vec3::new(0.0, 0.0, 1.0));
    for k in 0..n {
        let z = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
        let r = (1.0 - z * z).sqrt();
        let w = Vec3::new(r * (golden * k as f64).cos(), r * (golden * k as f64).sin(), z);
        let v = h(&w);
        if v > best.0 {
            best = (v, w);
        }
    }
    let mut step = 0.1;
    while step > 1e-10 {
        let mut moved = false;
        for axis in 0..3 {
            for sign in [1.0, -1.0] {
                let w = (&best.1 + &Vec3::<f64>::basis(axis).scale(&(sign * step))).normalized();
                let v = h(&w);
                if v > best.0 {
                    best = (v, w);
                    moved = true;
                }
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    best.0
}

#[test]
fn criterion_05_spectrahedron_gate() {
    let mut gate_ok = true;
    let mut details = Vec::new();
    let mut pass = true;
    for f in order_fixtures() {
        let res = spectrahedron(&f.c1, &f.c2).unwrap();
        let expected = matches!(f.tag.as_str(), "(S,S)" | "(2c)" | "(S)");
        gate_ok &= res.is_spectrahedron == expected;
        let Some(lmi) = res.lmi else { continue };
        let (d1, d2) = (Disc::of(&f.c1), Disc::of(&f.c2));
        // 17^3 grid over a box around both discs.
        let lo: [f64; 3] = std::array::from_fn(|i| {
            let a = d1.center.get(i) - d1.radius;
            let b = d2.center.get(i) - d2.radius;
            a.min(b) - 0.1
        });
        let hi: [f64; 3] = std::array::from_fn(|i| {
            let a = d1.center.get(i) + d1.radius;
            let b = d2.center.get(i) + d2.radius;
            a.max(b) + 0.1
        });
        let at = |i: usize, k: usize| lo[i] + (hi[i] - lo[i]) * k as f64 / 16.0;
        let pts: Vec<Vec3<f64>> = (0..17)
            .flat_map(|i| (0..17).flat_map(move |j| (0..17).map(move |k| Vec3::new(at(0, i), at(1, j), at(2, k)))))
            .collect();
        let verdicts: Vec<Option<(bool, bool)>> = pts
            .par_iter()
            .map(|x| {
                let sd = signed_distance(&f.c1, &f.c2, x);
                let oracle = separation(&d1, &d2, x);
                (sd.abs() >= 1e-6).then(|| ((sd < 0.0) == lmi.contains(x, 0.0), (sd <= 0.0) == (oracle <= 1e-9)))
            })
            .collect();
        let compared = verdicts.iter().flatten().count();
        let agree = verdicts.iter().flatten().filter(|v| v.0).count() as f64 / compared as f64;
        let oracle_agree = verdicts.iter().flatten().filter(|v| v.1).count() as f64 / compared as f64;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let cone = lmi.cone_blocks().next().unwrap();
        let mut worst_det: f64 = 0.0;
        let mut feasible = true;
        for d in [&d1, &d2] {
            for _ in 0..500 {
                let x = d.point(rng.gen_range(0.0..TAU));
                worst_det = worst_det.max(cone.det(&x).abs());
                feasible &= lmi.min_eigenvalue(&x) >= -1e-9;
            }
        }
        pass &= agree >= 0.999 && oracle_agree >= 0.999 && worst_det < 1e-9 && feasible;
        details.push(format!("{} agree {agree:.4} of {compared}, |det| {worst_det:.1e}", f.tag));
    }
    report(5, "spectrahedron gate", gate_ok && pass && details.len() == 3, details.join("; "));
}

#[test]
fn criterion_06_exclusion() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut forbidden = 0;
    let mut tags = BTreeSet::new();
    for _ in 0..2000 {
        let (c1, c2) = bicircle::sampling::random_pair(&mut rng);
        let (_, ct) = classify_edge_curve(&c1, &c2).unwrap();
        if matches!(ct.tag, CurveTag::Cuspidal | CurveTag::FourLines) {
            forbidden += 1;
        }
        tags.insert(ct.tag.label());
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = forbidden == 0 && secs < 300.0;
    report(6, "exclusion", pass, format!("{forbidden} forbidden in 2000, {secs:.1}s, {} curve types seen", tags.len()));
}

#[test]
fn criterion_07_j_invariant() {
    // Oracle: the invariant of the cross-ratio, at lambda = -1.
    let l: f64 = -1.0;
    let formula = 256.0 * (l * l - l + 1.0).powi(3) / (l * l * (l - 1.0).powi(2));
    let harmonic = [0.0, 2.0, 1.0].map(|x| ProjectiveRoot::finite(Complex64::new(x, 0.0)));
    let j = j_from_roots(&[harmonic[0], harmonic[1], harmonic[2], ProjectiveRoot::Infinity]);
    let jl = j_from_lambda(Complex64::new(l, 0.0));
    let harmonic_ok = (formula - 1728.0).abs() < 1e-9 && (j.re - 1728.0).abs() < 1e-9 && (jl.re - 1728.0).abs() < 1e-9;

    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let (mut cases, mut worst) = (0, 0.0f64);
    while cases < 200 {
        let (c1, c2) = bicircle::sampling::random_pair(&mut rng);
        let (f, ct) = classify_edge_curve(&c1, &c2).unwrap();
        if ct.tag != CurveTag::SmoothGenusOne {
            continue;
        }
        let (a, b) = (j_invariant(&f).unwrap(), j_invariant_uv(&f).unwrap());
        worst = worst.max((a - b).abs() / a.abs().max(b.abs()).max(1.0));
        cases += 1;
    }

    let c1 = Circle::new(Vec3::new(0.0, 0.0, 0.0), 1.0, Vec3::new(0.0, 0.0, 1.0)).unwrap();
    let mut round_trip = 0.0f64;
    let mut trips = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    while trips < 20 {
        let mut params: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.0..TAU));
        params.sort_by(f64::total_cmp);
        if !(0..4).all(|i| (params[(i + 1) % 4] - params[i]).rem_euclid(TAU) > 0.3) {
            continue;
        }
        let Ok(c2) = circle_with_branch_points(&c1, params, Pairing::P01, rng.gen_range(0.4..2.7)) else { continue };
        let f = edge_form(&circle_parametrization(&c1), &circle_parametrization(&c2)).unwrap();
        let got: Vec<f64> = discriminants(&f).0.real_params().into_iter().map(projective_angle).collect();
        let mut want: Vec<f64> = params.iter().map(|t| (t / 2.0).rem_euclid(PI)).collect();
        want.sort_by(f64::total_cmp);
        if got.len() != 4 {
            round_trip = f64::INFINITY;
            break;
        }
        for (a, b) in got.iter().zip(&want) {
            round_trip = round_trip.max((a - b).abs());
        }
        trips += 1;
    }
    let pass = harmonic_ok && worst < 1e-9 && round_trip < 1e-9;
    report(
        7,
        "j-invariant",
        pass,
        format!("harmonic {:.12}, projections {worst:.1e} over {cases}, branch round trip {round_trip:.1e}", j.re),
    );
}

#[test]
fn criterion_08_oloid_area() {
    let (c1, c2) = oloid();
    let m = boundary_mesh(&c1, &c2, 4096).unwrap();
    let area = m.area();
    let rel = (area / (4.0 * PI) - 1.0).abs();
    let off: usize = m
        .vertices
        .par_iter()
        .filter(|x| membership(&c1, &c2, x, 1e-6).verdict != Verdict::Boundary)
        .count();
    let pass = rel < 5e-3 && off == 0;
    report(8, "oloid area", pass, format!("area {area:.6} ({:.3}%), {off} of {} vertices off the boundary", 100.0 * rel, m.vertices.len()));
}

#[test]
fn criterion_09_duality() {
    let pairs = vec![unlinked(), oloid(), mutually_tangent(), sphere_2c(), fixture("(1,2)")];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut violations, mut samples) = (0, 0);
    for (c1, c2) in pairs {
        let (d1, d2) = (Disc::of(&c1), Disc::of(&c2));
        let o = default_origin(&c1, &c2).unwrap();
        let db = dual_body(&c1, &c2, &o).unwrap();
        let mut members = Vec::new();
        for _ in 0..2000 {
            let d = Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let w = d.scale(&(1.2 * db.rho / d.norm().max(1e-9) * rng.gen_range(0.0f64..1.0).cbrt()));
            // Oracle support of the two discs in direction -w, measured from o.
            let m = -&w;
            let h = d1.support(&m).max(d2.support(&m)) + w.dot(&o);
            samples += 1;
            let inside = db.contains(&w, 0.0);
            if (h - 1.0).abs() > 1e-10 && inside != (h <= 1.0) {
                violations += 1;
            }
            if inside {
                if w.norm() >= db.rho {
                    violations += 1;
                }
                members.push(w);
            }
        }
        for k in 1..members.len() {
            let mid = (&members[k - 1] + &members[k]).scale(&0.5);
            if !db.contains(&mid, 1e-12) {
                violations += 1;
            }
        }
    }
    report(9, "duality", violations == 0 && samples == 10_000, format!("{violations} violations in {samples} samples"));
}

#[derive(Debug)]
enum Construction {
    Partners(Vec<Vec3<f64>>),
    Pencil,
}

/// Tangency points on the second circle of the tangents drawn from where the
/// tangent line at `p` meets the second plane.
fn tangent_construction(d1: &Disc, d2: &Disc, p: &Vec3<f64>) -> Construction {
    let t1 = d1.normal.cross(&(p - &d1.center)).normalized();
    let n2 = &d2.normal;
    let scale = d1.scale() + d2.scale();
    if t1.dot(n2).abs() < 1e-13 {
        if d2.height(p).abs() < 1e-12 * scale {
            return Construction::Pencil;
        }
        let e = n2.cross(&t1).normalized();
        return Construction::Partners(vec![&d2.center + &e.scale(&d2.radius), &d2.center - &e.scale(&d2.radius)]);
    }
    let x = p - &t1.scale(&(d2.height(p) / t1.dot(n2)));
    let d = &x - &d2.center;
    let dist2 = d.norm2();
    let r = d2.radius;
    if dist2 < r * r {
        return Construction::Partners(Vec::new());
    }
    let foot = &d2.center + &d.scale(&(r * r / dist2));
    let side = n2.cross(&d).scale(&(r * (dist2 - r * r).max(0.0).sqrt() / dist2));
    Construction::Partners(vec![&foot + &side, &foot - &side])
}

#[test]
fn criterion_10_bisecant_oracle() {
    let tags = ["∅", "(2c)", "(1)", "(1,1)", "(1,2)", "(S)", "(1,1,2)", "(1,2,1)", "(1,S)", "(1,1,2,2)"];
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut cases, mut worst, mut mismatched) = (0, 0.0f64, 0);
    let (mut pencils, mut empty) = (0, 0);
    let mut check = |c1: &Circle<Rational>, c2: &Circle<Rational>, theta: f64| {
        let (d1, d2) = (Disc::of(c1), Disc::of(c2));
        let e = edge_form(&circle_parametrization(c1), &circle_parametrization(c2)).unwrap().to_f64();
        let (s, t) = angle_to_param(theta);
        let roots = fiber_roots(e.fiber_over_st(s, t), e.max_abs(), false);
        let p = d1.point(theta);
        let fan = stationary_bisecants_through(c1, c2, (s, t));
        cases += 1;
        match (tangent_construction(&d1, &d2, &p), roots) {
            (Construction::Pencil, FiberRoots::Full) => {
                pencils += 1;
                if fan.variant != FanVariant::Pencil {
                    mismatched += 1;
                }
            }
            (Construction::Partners(want), roots @ (FiberRoots::None | FiberRoots::Double(_) | FiberRoots::Two(..))) => {
                let got: Vec<Vec3<f64>> = roots.points().into_iter().map(|(u, v)| d2.point(param_to_angle(u, v))).collect();
                if want.is_empty() {
                    empty += 1;
                }
                let mut want = want;
                want.dedup_by(|a, b| a.dist(b) < 1e-9);
                if got.len() != want.len() {
                    mismatched += 1;
                    return;
                }
                for q in &want {
                    worst = worst.max(got.iter().map(|g| g.dist(q)).fold(f64::INFINITY, f64::min));
                }
            }
            _ => mismatched += 1,
        }
    };
    for tag in tags {
        let (c1, c2) = fixture(tag);
        for _ in 0..50 {
            check(&c1, &c2, rng.gen_range(0.0..TAU));
        }
    }
    // The tangent at the origin of the (S) fixture lies in the other plane.
    let (c1, c2) = fixture("(S)");
    check(&c1, &c2, 1.5 * PI);
    let pass = mismatched == 0 && worst < 1e-9 && pencils > 0 && empty > 0;
    report(
        10,
        "bisecant oracle",
        pass,
        format!("{cases} params, {mismatched} mismatched, max distance {worst:.1e}, {pencils} pencil, {empty} with no real partner"),
    );
}
