//! End-to-end acceptance run: one pass/fail line per criterion.
//!
//! `cargo test --test acceptance -- --nocapture` shows the lines; the test fails if any
//! criterion fails.

use std::time::Instant;

use linkedsat::formula::{Assignment, Formula, Semantics};
use linkedsat::gadgets::{forced_relation, gadget_spec, Variant};
use linkedsat::planarity::{build_incidence_graph, planarity_test, verify_witness, Graph, PlanarityResult};
use linkedsat::reduction::{reduce_formula, reduce_side, LinkedInstance, Method};
use linkedsat::render::render_linked_svg;
use linkedsat::satisfiers::{brute_count, exact_count, four_color_satisfy, hall_check, matching_satisfy};
use linkedsat::verify::{check_kappa_order, check_side_separation, gen_instance, verify_linked, GenClass, Verdict};
use num_bigint::BigUint;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Models of a template with its in-port clamped, by plain enumeration.
fn clamped_models(f: &Formula, port: u32, value: bool, sem: Semantics) -> (u64, Vec<Assignment>) {
    let n = f.num_vars();
    let mut models = Vec::new();
    for bits in 0u64..1 << n {
        let a = Assignment::from_values((0..n).map(|i| bits >> i & 1 == 1).collect());
        if a.get(port) == value && f.evaluate(&a, sem) {
            models.push(a);
        }
    }
    (models.len() as u64, models)
}

fn criterion_1() -> Outcome {
    let cases: Vec<(Variant, &[u64])> = vec![
        (Variant::Basic, &[1]),
        (Variant::Monotone, &[1]),
        (Variant::MonotoneDeg3(4), &[1]),
        (Variant::MonotoneDeg3(8), &[1]),
        (Variant::SideCycle(1), &[1]),
        (Variant::SideCycle(2), &[1]),
        (Variant::SideCycle(3), &[1]),
        (Variant::SideCycle(4), &[1]),
        (Variant::ThreeDistinct, &[16]),
        (Variant::OneInThree, &[1, 2]),
    ];
    let mut seen = Vec::new();
    for (v, allowed) in cases {
        let spec = gadget_spec(v).map_err(|e| e.to_string())?;
        let f = spec.template_formula();
        let port = spec.in_port as u32 + 1;
        let (t, mt) = clamped_models(&f, port, true, spec.semantics);
        let (fl, mf) = clamped_models(&f, port, false, spec.semantics);
        ensure(allowed.contains(&t) && allowed.contains(&fl), || format!("{v}: multipliers ({t}, {fl})"))?;
        if allowed.len() == 1 {
            ensure(t == fl, || format!("{v}: multipliers differ ({t}, {fl})"))?;
        }
        let rel = forced_relation(v).map_err(|e| e.to_string())?;
        ensure(rel.multiplier == (t, fl), || format!("{v}: catalog says {:?}, enumeration ({t}, {fl})", rel.multiplier))?;
        // Out-port must track the in-port in every model.
        let out = spec.out_port as u32 + 1;
        ensure(mt.iter().all(|a| a.get(out)) && mf.iter().all(|a| !a.get(out)), || format!("{v}: out-port not forced"))?;
        seen.push(format!("{v}=({t},{fl})"));
    }
    Ok(seen.join(" "))
}

fn base_size(seed: u64) -> usize {
    6 + (seed % 7) as usize
}

fn criterion_2() -> Outcome {
    let mut max_vars = 0;
    for seed in 0..100 {
        let g = gen_instance(GenClass::Planar3Sat, base_size(seed), 14, seed).map_err(|e| e.to_string())?;
        let li = reduce_formula(&g.formula, Variant::Basic).map_err(|e| format!("seed {seed}: {e}"))?;
        let r = verify_linked(&li, &g.formula, Method::Connector(Variant::Basic));
        for name in ["kappa_order", "union_planar"] {
            ensure(r.get(name).map(|c| &c.verdict) == Some(&Verdict::Pass), || format!("seed {seed}: {name} {:?}", r.get(name)))?;
        }
        let before = brute_count(&g.formula, Semantics::Cnf).map_err(|e| e.to_string())?;
        let after = exact_count(&li.formula, Semantics::Cnf);
        ensure(after == BigUint::from(before), || format!("seed {seed}: count {before} became {after}"))?;
        max_vars = max_vars.max(li.formula.num_vars());
    }
    Ok(format!("100/100 instances, counts equal, largest output {max_vars} variables"))
}

fn reduce(g: &linkedsat::verify::Generated, m: Method) -> Result<LinkedInstance, String> {
    match m {
        Method::Connector(v) => reduce_formula(&g.formula, v),
        Method::Side => reduce_side(&g.formula, &g.order),
    }
    .map_err(|e| format!("{m}: {e}"))
}

fn criterion_3() -> Outcome {
    let mut parts = Vec::new();
    for (class, m) in [
        (GenClass::Positive1in3, Method::Connector(Variant::OneInThree)),
        (GenClass::Planar3Sat, Method::Connector(Variant::ThreeDistinct)),
        (GenClass::Monotone, Method::Connector(Variant::Monotone)),
        (GenClass::Monotone, Method::Side),
    ] {
        let t = Instant::now();
        for seed in 0..50 {
            let g = gen_instance(class, base_size(seed), 14, 1000 + seed).map_err(|e| e.to_string())?;
            let li = reduce(&g, m)?;
            let sem = m.semantics();
            let before = brute_count(&g.formula, sem).map_err(|e| e.to_string())?;
            let after = exact_count(&li.formula, sem);
            let c = li.formula.classify();
            let fail = |what: &str| format!("{m} seed {seed}: {what} (in={before} out={after})");
            check_kappa_order(&li).map_err(|e| fail(&e))?;
            match m {
                Method::Connector(Variant::OneInThree) => {
                    ensure(c.positive && c.exactly_three_distinct, || fail("not positive three-distinct"))?;
                    ensure((before == 0) == after.is_zero(), || fail("not 1-in-3 equisatisfiable"))?;
                }
                Method::Connector(Variant::ThreeDistinct) => {
                    let want = BigUint::from(before) * BigUint::from(16u32).pow(li.provenance.gadgets as u32);
                    ensure(after == want, || fail("count is not 16^g times the input"))?;
                }
                Method::Connector(_) => {
                    ensure(c.monotone, || fail("not monotone"))?;
                    ensure(after == BigUint::from(before), || fail("counts differ"))?;
                }
                Method::Side => {
                    check_side_separation(&li).map_err(|v| fail(&v.to_string()))?;
                    ensure(c.max_occurrence <= 3, || fail("occurrence above 3"))?;
                    ensure(after == BigUint::from(before), || fail("counts differ"))?;
                }
            }
        }
        parts.push(format!("{m} 50/50 in {:.1}s", t.elapsed().as_secs_f64()));
    }
    Ok(parts.join(", "))
}

fn criterion_4() -> Outcome {
    let mut report = Vec::new();
    for (class, m) in [
        (GenClass::Planar3Sat, Method::Connector(Variant::Basic)),
        (GenClass::Positive1in3, Method::Connector(Variant::OneInThree)),
        (GenClass::Planar3Sat, Method::Connector(Variant::ThreeDistinct)),
        (GenClass::Monotone, Method::Connector(Variant::Monotone)),
        (GenClass::Monotone, Method::Side),
    ] {
        let mut rungs = Vec::new();
        for n in [8usize, 16, 32, 64] {
            let mut worst: f64 = 0.0;
            for seed in 0..5 {
                let g = gen_instance(class, n / 2, n / 2, seed).map_err(|e| e.to_string())?;
                let input = g.formula.num_vars() as usize + g.formula.num_clauses();
                let li = reduce(&g, m).map_err(|e| format!("n={n} seed {seed}: {e}"))?;
                worst = worst.max(li.vertex_count() as f64 / (input * input) as f64);
            }
            rungs.push((n, worst));
        }
        let c = rungs.iter().map(|r| r.1).fold(0.0, f64::max);
        let detail = rungs.iter().map(|(n, c)| format!("{n}:{c:.2}")).collect::<Vec<_>>().join(" ");
        // Quadratic growth keeps the ratio from rising along the ladder beyond noise.
        ensure(rungs.windows(2).all(|w| w[1].1 <= 1.5 * w[0].1), || format!("{m}: v/n^2 grows along the ladder: {detail}"))?;
        report.push(format!("{m} c={c:.2} ({detail})"));
    }
    Ok(report.join(", "))
}

fn criterion_5() -> Outcome {
    for seed in 0..100 {
        let g = gen_instance(GenClass::Monotone3Distinct, 8 + (seed % 7) as usize, 14, seed).map_err(|e| e.to_string())?;
        let ig = build_incidence_graph(&g.formula).map_err(|e| e.to_string())?;
        let emb = match planarity_test(&ig.graph) {
            PlanarityResult::Planar(e) => e,
            PlanarityResult::NonPlanar(_) => return Err(format!("seed {seed}: generated instance not planar")),
        };
        let r = four_color_satisfy(&g.formula, &emb).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(g.formula.evaluate(&r.assignment, Semantics::Cnf), || format!("seed {seed}: assignment fails"))?;
        for (j, t) in r.triangles.iter().enumerate() {
            let cs = t.map(|v| r.colors[v as usize - 1]);
            ensure(cs[0] != cs[1] && cs[1] != cs[2] && cs[0] != cs[2], || format!("seed {seed}: clause {} triangle {cs:?}", j + 1))?;
            ensure(cs.iter().all(|&c| c < 4), || format!("seed {seed}: color out of range"))?;
        }
    }
    Ok("100/100 satisfied, all triangles 3-colored".into())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut subsets = 0;
    for seed in 0..100 {
        let g = gen_instance(GenClass::Geq4Distinct, 8 + (seed % 7) as usize, 14, seed).map_err(|e| e.to_string())?;
        let r = matching_satisfy(&g.formula).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(r.matching.len() == g.formula.num_clauses(), || format!("seed {seed}: matching incomplete"))?;
        for (j, &v) in r.matching.iter().enumerate() {
            ensure(g.formula.clause_vars(j).contains(&v), || format!("seed {seed}: clause {} matched to {v}", j + 1))?;
        }
        ensure(g.formula.evaluate(&r.assignment, Semantics::Cnf), || format!("seed {seed}: assignment fails"))?;
        let mut ig = build_incidence_graph(&g.formula).map_err(|e| e.to_string())?;
        ensure(ig.embed(), || format!("seed {seed}: not planar"))?;
        let emb = ig.embedding.clone().unwrap();
        let m = g.formula.num_clauses();
        for _ in 0..10 {
            let mut all: Vec<usize> = (0..m).collect();
            all.shuffle(&mut rng);
            let k = rng.gen_range(1..=m);
            let sub = &all[..k];
            let h = hall_check(&ig, &emb, sub);
            let s = h.stats;
            ensure((s.b + s.c + s.f) as i64 - s.e as i64 == 1 + s.k as i64, || format!("seed {seed}: Euler {s:?}"))?;
            ensure(2 * s.e >= 4 * s.f, || format!("seed {seed}: face bound {s:?}"))?;
            ensure(2 * s.b + 2 * s.c >= 2 + 2 * s.k + s.e, || format!("seed {seed}: edge bound {s:?}"))?;
            ensure(s.c + 1 + s.k <= s.b, || format!("seed {seed}: Hall bound {s:?}"))?;
            ensure(h.euler && h.face_bound && h.edge_bound && h.hall_bound, || format!("seed {seed}: report disagrees {h:?}"))?;
            subsets += 1;
        }
    }
    Ok(format!("100/100 matched and satisfied, {subsets} subsets satisfy all inequalities"))
}

fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            g.add_edge(a, b);
        }
    }
    g
}

/// Stacked triangulation with random edge deletions; planar by construction.
fn stacked(n: usize, keep: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut tris = vec![[0usize, 1, 2]];
    let mut g = Graph::new(n);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    for v in 3..n {
        let i = rng.gen_range(0..tris.len());
        let [a, b, c] = tris.swap_remove(i);
        tris.extend([[a, b, v], [b, c, v], [c, a, v]]);
        for u in [a, b, c] {
            g.add_edge(u, v);
        }
    }
    let kept: Vec<(usize, usize)> = g.edges().iter().copied().filter(|_| rng.gen_bool(keep)).collect();
    Graph::from_edges(n, &kept)
}

fn grid(w: usize, h: usize) -> Graph {
    let mut g = Graph::new(w * h);
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                g.add_edge(y * w + x, y * w + x + 1);
            }
            if y + 1 < h {
                g.add_edge(y * w + x, (y + 1) * w + x);
            }
        }
    }
    g
}

/// V - E + F = 2 per component, with faces traced from the rotation system.
fn euler_exact(g: &Graph, faces: usize) -> bool {
    let (_, comps) = g.components();
    let isolated = (0..g.n()).filter(|&v| g.degree(v) == 0).count();
    g.n() as i64 - g.m() as i64 + faces as i64 + isolated as i64 == 2 * comps as i64
}

fn criterion_7() -> Outcome {
    let mut k33 = Graph::new(6);
    for a in 0..3 {
        for b in 3..6 {
            k33.add_edge(a, b);
        }
    }
    let mut petersen = Graph::new(10);
    for i in 0..5 {
        petersen.add_edge(i, (i + 1) % 5);
        petersen.add_edge(i, i + 5);
        petersen.add_edge(i + 5, (i + 2) % 5 + 5);
    }
    for (name, g, planar) in [("K4", complete(4), true), ("K5", complete(5), false), ("K3,3", k33, false), ("Petersen", petersen, false)] {
        match planarity_test(&g) {
            PlanarityResult::Planar(e) => {
                ensure(planar, || format!("{name} reported planar"))?;
                ensure(euler_exact(&g, e.faces().len()), || format!("{name}: Euler check fails"))?;
            }
            PlanarityResult::NonPlanar(w) => {
                ensure(!planar, || format!("{name} reported non-planar"))?;
                ensure(verify_witness(&w, &g), || format!("{name}: witness invalid"))?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..1000 {
        let g = if i % 10 == 9 {
            grid(2 + i % 13, 2 + i % 7)
        } else {
            let n = rng.gen_range(3..80);
            let keep = rng.gen_range(0.5..=1.0);
            stacked(n, keep, &mut rng)
        };
        match planarity_test(&g) {
            PlanarityResult::Planar(e) => {
                ensure(euler_exact(&g, e.faces().len()), || format!("graph {i}: Euler check fails"))?;
            }
            PlanarityResult::NonPlanar(_) => return Err(format!("graph {i}: planar graph rejected")),
        }
    }
    Ok("4 fixtures and 1000 planar graphs, Euler exact".into())
}

fn pipeline(class: GenClass, m: Method, seed: u64) -> Result<Vec<String>, String> {
    let g = gen_instance(class, 7, 9, seed).map_err(|e| e.to_string())?;
    let li = reduce(&g, m)?;
    let r = verify_linked(&li, &g.formula, m);
    let svg = render_linked_svg(&li).map_err(|e| e.to_string())?;
    Ok(vec![g.to_text(), li.to_text(), r.to_text(), svg])
}

fn criterion_8() -> Outcome {
    let runs = [
        (GenClass::Planar3Sat, Method::Connector(Variant::Basic)),
        (GenClass::Positive1in3, Method::Connector(Variant::OneInThree)),
        (GenClass::Planar3Sat, Method::Connector(Variant::ThreeDistinct)),
        (GenClass::Monotone, Method::Connector(Variant::Monotone)),
        (GenClass::Monotone, Method::Side),
    ];
    let mut bytes = 0;
    for (class, m) in runs {
        for seed in [3u64, 41] {
            let a = pipeline(class, m, seed)?;
            let b = pipeline(class, m, seed)?;
            ensure(a == b, || format!("{class} {m} seed {seed}: artifacts differ"))?;
            bytes += a.iter().map(|s| s.len()).sum::<usize>();
        }
    }
    Ok(format!("10 pipelines byte-identical ({bytes} bytes each pass)"))
}

fn main() -> std::process::ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("gadget semantics", criterion_1),
        ("basic reduction and parsimony", criterion_2),
        ("variant reductions", criterion_3),
        ("output size bound", criterion_4),
        ("four-color satisfier", criterion_5),
        ("matching satisfier and Hall inequalities", criterion_6),
        ("planarity engine", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS {name} [{secs:.1}s]: {detail}", i + 1),
            Err(detail) => {
                println!("criterion {} FAIL {name} [{secs:.1}s]: {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if failed.is_empty() {
        std::process::ExitCode::SUCCESS
    } else {
        eprintln!("failed criteria: {failed:?}");
        std::process::ExitCode::FAILURE
    }
}
