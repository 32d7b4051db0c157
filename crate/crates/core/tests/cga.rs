mod common;

use bciarm::cga::{
    double_dual_sign, embed_point, intersect_circle_plane, intersect_spheres, line_direction, make_line,
    make_plane_wedge, make_sphere, plane_normal, split_point_pair_both, Multivector,
};
use bciarm::tolerance::Tolerance;
use bciarm::Vec3;
use common::cga as oracle;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: Tolerance = Tolerance::DEFAULT;

fn random_mv(rng: &mut ChaCha8Rng) -> Multivector {
    let mut c = [0.0; 32];
    for v in &mut c {
        if rng.random_bool(0.6) {
            *v = rng.random_range(-10.0..10.0);
        }
    }
    Multivector::from_coeffs(c)
}

fn random_point(rng: &mut ChaCha8Rng, extent: f64) -> Vec3 {
    Vec3::new(
        rng.random_range(-extent..extent),
        rng.random_range(-extent..extent),
        rng.random_range(-extent..extent),
    )
}

fn blade_list(mask: usize) -> Vec<u8> {
    (0..5u8).filter(|i| mask >> i & 1 == 1).collect()
}

#[test]
fn blade_table_matches_rewriting() {
    for a in 0..32 {
        for b in 0..32 {
            let got = Multivector::blade(a, 1.0) * Multivector::blade(b, 1.0);
            let (s, r) = oracle::blade_mul(&blade_list(a), &blade_list(b));
            let mut want = oracle::Mv::new();
            want.insert(r, s);
            assert_eq!(oracle::to_coeffs(&want), *got.coeffs(), "blades {a} {b}");
        }
    }
}

#[test]
fn products_match_oracle_on_random_multivectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let (x, y) = (random_mv(&mut rng), random_mv(&mut rng));
        let (ox, oy) = (oracle::from_impl(&x), oracle::from_impl(&y));
        let bound = 1e-14 * oracle::product_scale(&x, &y);
        assert!(oracle::max_diff(&oracle::gp(&ox, &oy), &x.geometric(&y)) <= bound);
        assert!(oracle::max_diff(&oracle::op(&ox, &oy), &x.outer(&y)) <= bound);
        assert!(oracle::max_diff(&oracle::ip(&ox, &oy), &x.inner(&y)) <= bound);
    }
}

#[test]
fn embedding_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let x = random_point(&mut rng, 500.0);
        let p = embed_point(x).unwrap();
        let want = oracle::point([x.x, x.y, x.z]);
        assert!(oracle::max_diff(&want, p.mv()) <= 1e-12 * (1.0 + x.norm_squared()));
    }
    assert!(oracle::max_diff(&oracle::e0(), &Multivector::e0()) == 0.0);
    assert!(oracle::max_diff(&oracle::einf(), &Multivector::einf()) == 0.0);
}

#[test]
fn null_points_and_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let (a, b) = (random_point(&mut rng, 1000.0), random_point(&mut rng, 1000.0));
        let (pa, pb) = (embed_point(a).unwrap(), embed_point(b).unwrap());
        let sq = *pa.mv() * *pa.mv();
        let scale = (1.0 + a.norm_squared()).powi(2);
        assert!(TOL.is_zero(sq.max_abs(), scale), "P² = {sq:?}");
        let d2 = (a - b).norm_squared();
        let dot = (*pa.mv() | *pb.mv()).scalar_part();
        let scale = d2.max(a.norm_squared() + b.norm_squared());
        assert!(TOL.is_zero(dot + 0.5 * d2, scale), "{dot} vs {}", -0.5 * d2);
    }
}

#[test]
fn double_dual_signs_by_grade() {
    let inv = oracle::op(
        &oracle::op(
            &oracle::op(&oracle::op(&oracle::e0(), &oracle::vector([0.0, 0.0, 1.0, 0.0, 0.0])), &oracle::vector([0.0, 1.0, 0.0, 0.0, 0.0])),
            &oracle::vector([1.0, 0.0, 0.0, 0.0, 0.0]),
        ),
        &oracle::einf(),
    );
    assert!(oracle::max_diff(&inv, &Multivector::inverse_conformal_pseudoscalar()) < 1e-15);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..=5u32 {
        for _ in 0..50 {
            let mut c = [0.0; 32];
            for (mask, v) in c.iter_mut().enumerate() {
                if mask.count_ones() == k {
                    *v = rng.random_range(1.0..10.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
                }
            }
            let a = Multivector::from_coeffs(c);
            let oa = oracle::from_impl(&a);
            let twice = oracle::gp(&oracle::gp(&oa, &inv), &inv);
            // Oracle sign: the ratio on any nonzero blade.
            let (blade, c) = oa.iter().find(|(_, c)| c.abs() > 1.0).map(|(b, c)| (b.clone(), *c)).unwrap();
            let sign = twice.get(&blade).copied().unwrap_or(0.0) / c;
            assert!((sign - double_dual_sign(k)).abs() < 1e-12, "grade {k}: {sign}");
            let dd = a.dual().dual();
            let want = a * double_dual_sign(k);
            assert!((dd - want).max_abs() <= 1e-12 * a.max_abs());
            assert!((a.dual().undual() - a).max_abs() <= 1e-12 * a.max_abs());
        }
    }
}

#[test]
fn incidence_on_random_entities() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let c = random_point(&mut rng, 300.0);
        let r = rng.random_range(1.0..200.0);
        let u = random_point(&mut rng, 1.0).normalize();
        let on = c + u * r;
        let s = make_sphere(&embed_point(c).unwrap(), r).unwrap();
        let q = embed_point(on).unwrap();
        // Incidence is half a squared-distance difference.
        let scale = c.norm_squared() + on.norm_squared() + r * r;
        assert!(TOL.is_zero(s.incidence(&q), scale));
        assert!(!TOL.is_zero(s.incidence(&embed_point(c + u * (r + 1.0)).unwrap()), scale));

        let (p1, p2, p3) = (random_point(&mut rng, 300.0), random_point(&mut rng, 300.0), random_point(&mut rng, 300.0));
        let (e1, e2, e3) = (embed_point(p1).unwrap(), embed_point(p2).unwrap(), embed_point(p3).unwrap());
        let plane = make_plane_wedge(&[*e1.mv(), *e2.mv(), *e3.mv(), Multivector::einf()], &TOL).unwrap();
        let (s1, s2) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let inside = p1 + (p2 - p1) * s1 + (p3 - p1) * s2;
        assert!(plane.contains(&embed_point(inside).unwrap(), &TOL));
        let n = (p2 - p1).cross(&(p3 - p1)).normalize();
        assert!(!plane.contains(&embed_point(inside + n * 5.0).unwrap(), &TOL));
        let normal = plane_normal(&plane, &TOL).unwrap().normalize();
        assert!(normal.cross(&n).norm() < 1e-6);

        let line = make_line(&e1, &e2, &TOL).unwrap();
        let t = rng.random_range(-3.0..3.0);
        assert!(line.contains(&embed_point(p1 + (p2 - p1) * t).unwrap(), &TOL));
        assert!(!line.contains(&embed_point(p1 + (p2 - p1) * t + n * 5.0).unwrap(), &TOL));
        let dir = line_direction(&line, &TOL).unwrap();
        assert!((dir - (p1 - p2)).norm() <= 1e-9 * (p1 - p2).norm().max(1.0) * 1e3);
    }
}

#[test]
fn sphere_circle_plane_chain_lands_on_all_three() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0;
    while checked < 300 {
        let (c1, c2) = (random_point(&mut rng, 100.0), random_point(&mut rng, 100.0));
        let (r1, r2) = (rng.random_range(20.0..150.0), rng.random_range(20.0..150.0));
        let d = (c1 - c2).norm();
        if d >= r1 + r2 || d <= (r1 - r2).abs() {
            continue;
        }
        let s1 = make_sphere(&embed_point(c1).unwrap(), r1).unwrap();
        let s2 = make_sphere(&embed_point(c2).unwrap(), r2).unwrap();
        let circle = intersect_spheres(&s1, &s2, &TOL).unwrap();
        // A plane through both centres cuts the circle in two real points.
        let extra = c1 + random_point(&mut rng, 50.0);
        let pts: Vec<Multivector> = [c1, c2, extra].iter().map(|p| *embed_point(*p).unwrap().mv()).collect();
        let Ok(plane) = make_plane_wedge(&[pts[0], pts[1], pts[2], Multivector::einf()], &TOL) else {
            continue;
        };
        let pair = intersect_circle_plane(&circle, &plane, &TOL).unwrap();
        let [a, b] = split_point_pair_both(&pair, &TOL).unwrap();
        for p in [a, b] {
            let x = p.position();
            assert!(((x - c1).norm() - r1).abs() < 1e-6, "{x} off sphere 1");
            assert!(((x - c2).norm() - r2).abs() < 1e-6, "{x} off sphere 2");
            assert!(plane.contains(&p, &Tolerance::new(1e-7, 1e-9)));
        }
        assert!(a.position().z >= b.position().z);
        checked += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn geometric_product_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (random_mv(&mut rng), random_mv(&mut rng), random_mv(&mut rng));
        let l = (a * b) * c;
        let r = a * (b * c);
        let scale = oracle::product_scale(&a, &b) * c.coeffs().iter().map(|v| v.abs()).sum::<f64>();
        prop_assert!((l - r).max_abs() <= 1e-13 * scale);
    }

    #[test]
    fn vector_wedge_is_antisymmetric(u in prop::array::uniform5(-10.0f64..10.0), v in prop::array::uniform5(-10.0f64..10.0)) {
        let vec = |c: [f64; 5]| Multivector::from_coeffs({
            let mut out = [0.0; 32];
            for (i, x) in c.iter().enumerate() {
                out[1 << i] = *x;
            }
            out
        });
        let (a, b) = (vec(u), vec(v));
        prop_assert!(((a ^ b) + (b ^ a)).max_abs() < 1e-12);
        // ab = a·b + a∧b for vectors.
        prop_assert!(((a * b) - ((a | b) + (a ^ b))).max_abs() < 1e-12);
    }

    #[test]
    fn distance_identity_holds(a in prop::array::uniform3(-1e3f64..1e3), b in prop::array::uniform3(-1e3f64..1e3)) {
        let (a, b) = (Vec3::from(a), Vec3::from(b));
        let dot = (*embed_point(a).unwrap().mv() | *embed_point(b).unwrap().mv()).scalar_part();
        let d2 = (a - b).norm_squared();
        prop_assert!(TOL.is_zero(dot + 0.5 * d2, d2.max(a.norm_squared() + b.norm_squared())));
    }
}
