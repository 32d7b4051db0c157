//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bciarm::bci::p300::p300_from_average;
use bciarm::bci::synth::{gaussian_bump, synth_eeg, SynthSpec};
use bciarm::bci::{anova_oneway, anova_twoway, ClassifierModel, Decision, Label, TrainOptions};
use bciarm::cga::{
    double_dual_sign, embed_point, line_direction, make_line, make_plane_wedge, make_sphere, plane_normal,
    Multivector,
};
use bciarm::control::{
    classify_outcomes, goal_selection_dispatch, home, in_workspace, process_control_step, run_session, Mode,
    PlanOptions, ProcessControlState, SessionScript, SessionSetup, Stimulus, Strategy,
};
use bciarm::ik::{effector_plane, forward_kinematics, reachable, solve_ik, Branch, JointAngles, RobotGeometry};
use bciarm::tolerance::Tolerance;
use bciarm::vision::scene::MARKERS;
use bciarm::vision::{
    estimate_homography, locate_items, random_camera, random_scene, random_scene_where, render_scene, Palette,
    RenderOptions, Scene,
};
use bciarm::{Vec2, Vec3};
use common::cga as oracle;
use common::control::{all_sequences, ref_step, RefState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// 1e-9 relative.
const REL: Tolerance = Tolerance::DEFAULT;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn within(limit: Duration, elapsed: Duration) -> bool {
    elapsed < limit
}

fn sign() -> impl Fn(&mut ChaCha8Rng) -> f64 {
    |rng| if rng.random_bool(0.5) { 1.0 } else { -1.0 }
}

fn random_point(rng: &mut ChaCha8Rng, extent: f64) -> Vec3 {
    Vec3::new(
        rng.random_range(-extent..extent),
        rng.random_range(-extent..extent),
        rng.random_range(-extent..extent),
    )
}

fn random_mv(rng: &mut ChaCha8Rng) -> Multivector {
    let mut c = [0.0; 32];
    for v in &mut c {
        if rng.random_bool(0.6) {
            *v = rng.random_range(-10.0..10.0);
        }
    }
    Multivector::from_coeffs(c)
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut failures = Vec::new();

    for a in 0..32 {
        for b in 0..32 {
            let got = Multivector::blade(a, 1.0) * Multivector::blade(b, 1.0);
            let list = |m: usize| (0..5u8).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>();
            let (s, r) = oracle::blade_mul(&list(a), &list(b));
            let want = oracle::to_coeffs(&[(r, s)].into_iter().collect());
            if want != *got.coeffs() {
                failures.push(format!("blade table {a}x{b}"));
            }
        }
    }
    let mut worst_product: f64 = 0.0;
    for _ in 0..1000 {
        let (x, y) = (random_mv(&mut rng), random_mv(&mut rng));
        let (ox, oy) = (oracle::from_impl(&x), oracle::from_impl(&y));
        let scale = oracle::product_scale(&x, &y);
        for d in [
            oracle::max_diff(&oracle::gp(&ox, &oy), &x.geometric(&y)),
            oracle::max_diff(&oracle::op(&ox, &oy), &x.outer(&y)),
            oracle::max_diff(&oracle::ip(&ox, &oy), &x.inner(&y)),
        ] {
            worst_product = worst_product.max(d / scale);
        }
    }
    // Rounding only: a few ulps of the summed coefficient products.
    if worst_product > 1e-14 {
        failures.push(format!("products off by {worst_product:e} of scale"));
    }

    let mut null_bad = 0;
    let mut dist_bad = 0;
    for _ in 0..1000 {
        let (a, b) = (random_point(&mut rng, 1000.0), random_point(&mut rng, 1000.0));
        let (pa, pb) = (embed_point(a).unwrap(), embed_point(b).unwrap());
        let sq = *pa.mv() * *pa.mv();
        null_bad += usize::from(!REL.is_zero(sq.max_abs(), (1.0 + a.norm_squared()).powi(2)));
        let d2 = (a - b).norm_squared();
        let dot = (*pa.mv() | *pb.mv()).scalar_part();
        dist_bad += usize::from(!REL.is_zero(dot + 0.5 * d2, d2.max(a.norm_squared() + b.norm_squared())));
    }
    if null_bad + dist_bad > 0 {
        failures.push(format!("null {null_bad}, distance {dist_bad} of 1000"));
    }

    let inv = oracle::op(
        &oracle::op(
            &oracle::op(
                &oracle::op(&oracle::e0(), &oracle::vector([0.0, 0.0, 1.0, 0.0, 0.0])),
                &oracle::vector([0.0, 1.0, 0.0, 0.0, 0.0]),
            ),
            &oracle::vector([1.0, 0.0, 0.0, 0.0, 0.0]),
        ),
        &oracle::einf(),
    );
    let flip = sign();
    let mut dual_bad = 0;
    for k in 0..=5u32 {
        for _ in 0..50 {
            let mut c = [0.0; 32];
            for (mask, v) in c.iter_mut().enumerate() {
                if mask.count_ones() == k {
                    *v = rng.random_range(1.0..10.0) * flip(&mut rng);
                }
            }
            let a = Multivector::from_coeffs(c);
            let twice = oracle::gp(&oracle::gp(&oracle::from_impl(&a), &inv), &inv);
            let want = oracle::scale(&oracle::from_impl(&a), double_dual_sign(k));
            let lib = a.dual().dual();
            let bad_oracle = oracle::max_diff(&twice, &(a * double_dual_sign(k))) > 1e-9 * a.max_abs();
            let bad_lib = oracle::max_diff(&want, &lib) > 1e-9 * a.max_abs();
            dual_bad += usize::from(bad_oracle || bad_lib);
        }
    }
    if dual_bad > 0 {
        failures.push(format!("double dual {dual_bad} of 300"));
    }

    let mut incidence_bad = 0;
    for _ in 0..1000 {
        let c = random_point(&mut rng, 300.0);
        let r = rng.random_range(1.0..200.0);
        let u = random_point(&mut rng, 1.0).normalize();
        let s = make_sphere(&embed_point(c).unwrap(), r).unwrap();
        let on = c + u * r;
        let scale = c.norm_squared() + on.norm_squared() + r * r;
        let sphere_ok = REL.is_zero(s.incidence(&embed_point(on).unwrap()), scale)
            && !REL.is_zero(s.incidence(&embed_point(c + u * (r + 1.0)).unwrap()), scale);

        let (p1, p2, p3) = (random_point(&mut rng, 300.0), random_point(&mut rng, 300.0), random_point(&mut rng, 300.0));
        let (e1, e2, e3) = (embed_point(p1).unwrap(), embed_point(p2).unwrap(), embed_point(p3).unwrap());
        let n = (p2 - p1).cross(&(p3 - p1)).normalize();
        let (s1, s2) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let inside = p1 + (p2 - p1) * s1 + (p3 - p1) * s2;
        let plane_ok = match make_plane_wedge(&[*e1.mv(), *e2.mv(), *e3.mv(), Multivector::einf()], &REL) {
            Ok(plane) => {
                plane.contains(&embed_point(inside).unwrap(), &REL)
                    && !plane.contains(&embed_point(inside + n * 5.0).unwrap(), &REL)
            }
            Err(_) => false,
        };
        let t = rng.random_range(-3.0..3.0);
        let line_ok = match make_line(&e1, &e2, &REL) {
            Ok(line) => {
                line.contains(&embed_point(p1 + (p2 - p1) * t).unwrap(), &REL)
                    && !line.contains(&embed_point(p1 + (p2 - p1) * t + n * 5.0).unwrap(), &REL)
                    && line_direction(&line, &REL).is_ok_and(|d| d.normalize().cross(&(p2 - p1).normalize()).norm() < 1e-9)
            }
            Err(_) => false,
        };
        incidence_bad += usize::from(!(sphere_ok && plane_ok && line_ok));
    }
    if incidence_bad > 0 {
        failures.push(format!("incidence {incidence_bad} of 1000"));
    }

    let elapsed = start.elapsed();
    if !within(Duration::from_secs(5), elapsed) {
        failures.push(format!("runtime {elapsed:.2?} over 5 s"));
    }
    let detail = if failures.is_empty() {
        format!("products within {worst_product:.1e} of scale; 1000 points, 300 duals, 1000 incidence sets")
    } else {
        failures.join("; ")
    };
    Verdict::new(failures.is_empty(), detail)
}

/// Reachable by construction: forward kinematics of random joint angles.
fn reachable_targets(g: &RobotGeometry, n: usize, seed: u64) -> Vec<Vec3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let a = JointAngles {
            theta0: rng.random_range(-PI..PI),
            theta2: rng.random_range(-0.5..2.0),
            theta3: rng.random_range(0.15..2.8) * if rng.random_bool(0.5) { 1.0 } else { -1.0 },
        };
        let x = forward_kinematics(g, &a);
        if x.x.hypot(x.y) > 20.0 {
            out.push(x);
        }
    }
    out
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let g = RobotGeometry::default();
    let mut worst: f64 = 0.0;
    let mut errors = 0;
    for x in reachable_targets(&g, 1000, 202) {
        match solve_ik(&g, &x, Branch::ElbowUp) {
            Ok(sol) => worst = worst.max((forward_kinematics(&g, &sol.angles) - x).norm()),
            Err(_) => errors += 1,
        }
    }
    let anchors = [Vec3::new(0.0, 155.5, 284.3), Vec3::new(0.0, 300.0, -49.0)];
    let anchors_ok = anchors.iter().all(|a| reachable(&g, a).is_reachable());
    let elapsed = start.elapsed();
    let pass = errors == 0 && worst < 1e-6 && anchors_ok && within(Duration::from_secs(10), elapsed);
    Verdict::new(
        pass,
        format!("max round-trip {worst:.2e} mm, {errors} solve errors, anchors reachable: {anchors_ok}"),
    )
}

fn criterion_3() -> Verdict {
    let g = RobotGeometry::default();
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let (mut planar, mut links, mut equi): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut errors = 0;
    for x in reachable_targets(&g, 1000, 202) {
        let Ok(sol) = solve_ik(&g, &x, Branch::ElbowUp) else {
            errors += 1;
            continue;
        };
        let Some(n) = effector_plane(&x).ok().and_then(|pi| plane_normal(&pi, &REL).ok()) else {
            errors += 1;
            continue;
        };
        let n = n.normalize();
        for p in [sol.j2, sol.j3, x] {
            planar = planar.max(n.dot(&p).abs());
        }
        links = links
            .max(((sol.j2 - g.j1_position).norm() - g.l2).abs())
            .max(((sol.j3 - sol.j2).norm() - g.l3).abs())
            .max(((x - sol.j3).norm() - g.l4).abs());
        let phi = rng.random_range(-PI..PI);
        let (s, c) = phi.sin_cos();
        let rotated = Vec3::new(c * x.x - s * x.y, s * x.x + c * x.y, x.z);
        match solve_ik(&g, &rotated, Branch::ElbowUp) {
            Ok(rs) => {
                let d = (rs.angles.theta0 - sol.angles.theta0 - phi).rem_euclid(2.0 * PI);
                equi = equi
                    .max(d.min(2.0 * PI - d))
                    .max((rs.angles.theta2 - sol.angles.theta2).abs())
                    .max((rs.angles.theta3 - sol.angles.theta3).abs());
            }
            Err(_) => errors += 1,
        }
    }
    let pass = errors == 0 && planar < 1e-6 && links < 1e-6 && equi < 1e-6;
    Verdict::new(
        pass,
        format!("planarity {planar:.1e} mm, link length {links:.1e} mm, rotation {equi:.1e} rad, {errors} errors"),
    )
}

fn criterion_4() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let palette = Palette::default();
    let opts = RenderOptions::default();
    let (mut pos, mut hom, mut px): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut errors = 0;
    for _ in 0..100 {
        let scene = random_scene(&mut rng);
        let cam = random_camera(&mut rng, opts.width, opts.height);
        let Ok(loc) = render_scene(&scene, &cam, &opts).and_then(|img| locate_items(&img, &palette)) else {
            errors += 1;
            continue;
        };
        for (got, want) in [
            (loc.scene.disk, scene.disk),
            (loc.scene.target_left, scene.target_left),
            (loc.scene.target_right, scene.target_right),
        ] {
            pos = pos.max((got - want).norm());
        }
        let m = cam.to_row_array();
        let project = |p: &Vec2| {
            let w = m[6] * p.x + m[7] * p.y + m[8];
            Vec2::new((m[0] * p.x + m[1] * p.y + m[2]) / w, (m[3] * p.x + m[4] * p.y + m[5]) / w)
        };
        for mk in &loc.markers {
            px = px.max((mk.pixel - project(&mk.plane)).norm());
        }
        let plane = MARKERS.map(|(_, p)| Vec2::new(p[0], p[1]));
        match estimate_homography(&plane.map(|p| project(&p)), &plane) {
            Ok(h) => hom = hom.max((h.matrix() - cam.inverse().matrix()).abs().max()),
            Err(_) => errors += 1,
        }
    }
    let elapsed = start.elapsed();
    let pass = errors == 0 && pos < 2.0 && hom < 1e-9 && px < 0.5 && within(Duration::from_secs(30), elapsed);
    Verdict::new(
        pass,
        format!("position {pos:.3} mm, homography {hom:.1e}, marker centroid {px:.3} px, {errors} errors"),
    )
}

fn accuracy(spec: fn(u64) -> SynthSpec, train: u64, test: u64) -> f64 {
    let (block, events) = synth_eeg(&spec(train));
    let model = ClassifierModel::train(&block, &events, &TrainOptions::default()).expect("train");
    let (block, events) = synth_eeg(&spec(test));
    let out = model.classify(&block, &events).expect("classify");
    let hits = out
        .iter()
        .filter(|c| c.decision == Decision::Class(c.event.label.expect("labelled")))
        .count();
    100.0 * hits as f64 / out.len() as f64
}

fn criterion_5() -> Verdict {
    let start = Instant::now();
    let strong = accuracy(SynthSpec::strong, 0, 1);
    let zero: Vec<f64> = (0..10).map(|s| accuracy(SynthSpec::zero_contrast, 2 * s, 2 * s + 1)).collect();
    let mean = zero.iter().sum::<f64>() / zero.len() as f64;
    let elapsed = start.elapsed();
    let pass = strong >= 90.0 && (mean - 100.0 / 3.0).abs() <= 10.0 && within(Duration::from_secs(60), elapsed);
    Verdict::new(
        pass,
        format!("strong contrast {strong:.1}%, zero contrast mean {mean:.1}% over 10 seeds"),
    )
}

fn criterion_6() -> Verdict {
    let fs = 1000.0;
    let n = 1000;
    let bump = |center: f64| gaussian_bump(n, fs, -200.0, 5.0, center, 35.0);
    let base = p300_from_average(&bump(350.0), fs);
    let Ok(base) = base else {
        return Verdict::new(false, format!("extraction failed: {base:?}"));
    };
    let amp_ok = (base.amplitude - 5.0).abs() <= 0.5;
    let lat_ok = (base.latency - 350.0).abs() <= 10.0;
    // Shifts that keep the peak inside 200..500 ms.
    let mut shift_bad = Vec::new();
    for shift in -140..=140 {
        match p300_from_average(&bump(350.0 + shift as f64), fs) {
            Ok(f) if f.latency - base.latency == shift as f64 => {}
            Ok(f) => shift_bad.push(format!("{shift}:{}", f.latency - base.latency)),
            Err(e) => shift_bad.push(format!("{shift}:{e}")),
        }
    }
    let detail = format!(
        "amplitude {:.3} uV (need 5 +/- 0.5), latency {:.0} ms, shift mismatches {}",
        base.amplitude,
        base.latency,
        if shift_bad.is_empty() { "0".to_string() } else { shift_bad.join(" ") }
    );
    Verdict::new(amp_ok && lat_ok && shift_bad.is_empty(), detail)
}

fn criterion_7() -> Verdict {
    let mut notes = Vec::new();
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * b.abs().max(1.0);

    let one = anova_oneway(&[vec![1.0, 2.0, 3.0], vec![2.0, 3.0, 4.0]]).unwrap();
    if !close(one.f(), 1.5) {
        notes.push(format!("one-way F {}", one.f()));
    }
    let cells = vec![
        vec![vec![1.0, 3.0], vec![2.0, 4.0]],
        vec![vec![5.0, 7.0], vec![9.0, 11.0]],
    ];
    let two = anova_twoway(&cells).unwrap();
    for (got, want, name) in [(two.a.f, 30.25, "A"), (two.b.f, 6.25, "B"), (two.interaction.f, 2.25, "AxB")] {
        if !close(got, want) {
            notes.push(format!("two-way F{name} {got}"));
        }
    }

    // Exact: integer data with dyadic means, integer shifts and power-of-two scales.
    let groups = vec![vec![1.0, 2.0, 3.0, 6.0], vec![2.0, 3.0, 4.0, 7.0], vec![0.0, 5.0, 1.0, 2.0]];
    let base1 = anova_oneway(&groups).unwrap().f();
    let base2 = anova_twoway(&cells).unwrap();
    for (shift, scale) in [(0.0, 2.0), (16.0, 1.0), (-8.0, 4.0), (1024.0, 0.5)] {
        let tf = |v: &f64| (v + shift) * scale;
        let g: Vec<Vec<f64>> = groups.iter().map(|x| x.iter().map(tf).collect()).collect();
        if anova_oneway(&g).unwrap().f() != base1 {
            notes.push(format!("one-way not exact under +{shift} x{scale}"));
        }
        let c: Vec<Vec<Vec<f64>>> = cells
            .iter()
            .map(|row| row.iter().map(|x| x.iter().map(tf).collect()).collect())
            .collect();
        let t = anova_twoway(&c).unwrap();
        if (t.a.f, t.b.f, t.interaction.f) != (base2.a.f, base2.b.f, base2.interaction.f) {
            notes.push(format!("two-way not exact under +{shift} x{scale}"));
        }
    }
    // Arbitrary real data: rounding only.
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let g: Vec<Vec<f64>> = (0..3).map(|_| (0..5).map(|_| rng.random_range(-10.0..10.0)).collect()).collect();
        let (shift, scale) = (rng.random_range(-100.0..100.0), rng.random_range(0.01..100.0));
        let f0 = anova_oneway(&g).unwrap().f();
        let moved: Vec<Vec<f64>> = g.iter().map(|x| x.iter().map(|v| (v + shift) * scale).collect()).collect();
        worst = worst.max((anova_oneway(&moved).unwrap().f() - f0).abs() / f0.max(1e-300));
    }
    if worst > 1e-9 {
        notes.push(format!("random data relative change {worst:e}"));
    }
    let detail = if notes.is_empty() {
        format!("hand oracles match; exact invariance holds; random data within {worst:.1e}")
    } else {
        notes.join("; ")
    };
    Verdict::new(notes.is_empty(), detail)
}

fn criterion_8() -> Verdict {
    let g = RobotGeometry::default();
    let allowed = |p: Vec3| in_workspace(&g, &p);
    let seqs = all_sequences(6);
    let mut deviations = 0;
    let mut steps = 0;
    for start in [home(), Vec3::new(0.0, 300.0, -39.0)] {
        for seq in &seqs {
            let mut s = ProcessControlState::at(start);
            let mut r = RefState::start(start);
            for &l in seq {
                s = process_control_step(&g, &s, l).0;
                r = ref_step(r, l, &allowed);
                steps += 1;
                let same = [s.effector.x, s.effector.y, s.effector.z] == r.pos
                    && s.active_axis.index() == r.axis
                    && u32::from(s.consecutive_rest_count) == r.rests;
                deviations += usize::from(!same);
            }
        }
    }
    Verdict::new(
        deviations == 0 && seqs.len() == 1093,
        format!("{} sequences from 2 starts, {steps} steps, {deviations} deviations", seqs.len()),
    )
}

fn plannable(g: &RobotGeometry, s: &Scene) -> bool {
    let o = PlanOptions::default();
    [Label::Lhim, Label::Rhim]
        .iter()
        .all(|&l| goal_selection_dispatch(g, &o, l, s).is_ok())
}

fn criterion_9() -> Verdict {
    let g = RobotGeometry::default();
    let mut notes = Vec::new();

    // Classifier trained on one synthetic recording, the session on another
    // with goal-selection timing.
    let model = {
        let (block, events) = synth_eeg(&SynthSpec::strong(900));
        ClassifierModel::train(&block, &events, &TrainOptions::default()).expect("train")
    };
    let spec = SynthSpec {
        trials_per_class: 5,
        gap_s: (27.0, 29.0),
        ..SynthSpec::strong(901)
    };
    let (block, events) = synth_eeg(&spec);
    let stimuli: Vec<Stimulus> = events
        .iter()
        .enumerate()
        .map(|(i, e)| Stimulus {
            label: e.label,
            intended: None,
            outcome: None,
            onset_s: e.onset,
            duration_s: spec.stimulus_s,
            gap_s: events.get(i + 1).map_or(0.0, |n| n.onset - e.onset - spec.stimulus_s),
        })
        .collect();
    let script = SessionScript {
        strategy: Strategy::GoalSelection,
        mode: Mode::Cued,
        stimuli,
    };
    let scene = random_scene_where(&mut ChaCha8Rng::seed_from_u64(902), |s| plannable(&g, s));
    let setup = SessionSetup {
        scene: Some(scene),
        ..SessionSetup::default()
    };
    let run = |script: &SessionScript| -> Result<String, String> {
        let outcomes = classify_outcomes(&model, &block, script).map_err(|e| e.to_string())?;
        let r = run_session(script, &setup, &outcomes).map_err(|e| e.to_string())?;
        Ok(r.metrics.to_csv() + &r.log_csv())
    };
    let counts = Label::ALL.map(|l| script.stimuli.iter().filter(|s| s.label == Some(l)).count());
    if counts != [5, 5, 5] {
        notes.push(format!("stimulus counts {counts:?}"));
    }
    let first = run(&script);
    let again = run(&script);
    let reloaded = {
        let mut buf = Vec::new();
        script.write(&mut buf).expect("write");
        SessionScript::read(buf.as_slice()).map_err(|e| e.to_string()).and_then(|s| run(&s))
    };
    let mut percent = String::new();
    match (&first, &again, &reloaded) {
        (Ok(a), Ok(b), Ok(c)) => {
            if a != b || a != c {
                notes.push("event log not deterministic".into());
            }
            let log_lines = a.lines().count() - 3;
            if log_lines != 15 {
                notes.push(format!("{log_lines} log entries"));
            }
            percent = a.lines().nth(1).unwrap_or("").split(',').nth(1).unwrap_or("").to_string();
        }
        _ => notes.push(format!("session failed: {first:?}")),
    }

    let o = PlanOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(903);
    let mut correct = 0;
    for _ in 0..100 {
        let s = random_scene_where(&mut rng, |s| plannable(&g, s));
        let greater = if s.target_left.x > s.target_right.x { s.target_left } else { s.target_right };
        let smaller = if s.target_left.x > s.target_right.x { s.target_right } else { s.target_left };
        let rh = goal_selection_dispatch(&g, &o, Label::Rhim, &s);
        let lh = goal_selection_dispatch(&g, &o, Label::Lhim, &s);
        if let (Ok(Some(rh)), Ok(Some(lh))) = (rh, lh) {
            correct += usize::from(rh.target == greater && lh.target == smaller && rh.target.x > lh.target.x);
        }
    }
    if correct != 100 {
        notes.push(format!("target choice {correct}/100"));
    }
    let detail = if notes.is_empty() {
        format!("15-stimulus log identical over 3 replays ({percent}% correct); target choice {correct}/100")
    } else {
        notes.join("; ")
    };
    Verdict::new(notes.is_empty(), detail)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("CGA kernel identities", criterion_1),
        ("IK round trip", criterion_2),
        ("IK geometric invariants", criterion_3),
        ("vision round trip", criterion_4),
        ("classifier pipeline", criterion_5),
        ("P300 extraction", criterion_6),
        ("ANOVA", criterion_7),
        ("control state machines", criterion_8),
        ("goal-selection session", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        failed += usize::from(!v.pass);
        println!(
            "criterion {} {:<26} {} [{:.2?}] {}",
            i + 1,
            name,
            if v.pass { "PASS" } else { "FAIL" },
            start.elapsed(),
            v.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
