use linkedsat::formula::{Formula, Lit};
use linkedsat::layout::{
    build_r_drawing, grid_embed, parity_scale, parity_scale_min, three_legged_layout, ColumnKind, PaddingSpec, Side,
};
use linkedsat::planarity::build_incidence_graph;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Planar 3-SAT: clauses sit inside faces of a stacked triangulation on the variables.
fn planar_formula(n: usize, keep: f64, seed: u64) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tris: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    for v in 3..n {
        let i = rng.gen_range(0..tris.len());
        let [a, b, c] = tris.swap_remove(i);
        tris.extend([[a, b, v], [b, c, v], [c, a, v]]);
    }
    let mut f = Formula::new(n as u32);
    for t in &tris {
        if rng.gen_bool(keep) {
            let c = t.iter().map(|&v| Lit::new(v as u32 + 1, rng.gen_bool(0.5))).collect();
            f.add_clause(c).unwrap();
        }
    }
    if f.num_clauses() == 0 {
        f.add_clause(vec![Lit::pos(1), Lit::pos(2), Lit::pos(3)]).unwrap();
    }
    f
}

#[test]
fn grid_embed_tetrahedron_like() {
    let f = planar_formula(8, 1.0, 3);
    let g = build_incidence_graph(&f).unwrap();
    let d = grid_embed(&g).unwrap();
    assert!(d.is_crossing_free());
    let n = d.pos.len() as i64;
    assert!(d.pos.iter().all(|p| p.0 >= 0 && p.0 <= 2 * n && p.1 >= 0 && p.1 <= n));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn drawing_pipeline(n in 3usize..14, keep in 0.3f64..1.0, seed in any::<u64>()) {
        let f = planar_formula(n, keep, seed);
        let g = build_incidence_graph(&f).unwrap();
        let d = grid_embed(&g).unwrap();
        prop_assert!(d.is_crossing_free());
        let s = parity_scale(&d);
        prop_assert!(s.drawing.is_parity_scaled());
        prop_assert!(s.drawing.is_crossing_free());
        prop_assert!(s.factor % 2 == 0);
        let m = parity_scale_min(&d);
        prop_assert!(m.factor <= s.factor && m.drawing.is_crossing_free());
        for pad in [PaddingSpec::NONE, PaddingSpec::new(2, 1), PaddingSpec::new(4, 3)] {
            let r = build_r_drawing(&s.drawing, pad).unwrap();
            prop_assert!(r.check_invariants().is_ok());
            for &(a, b) in &r.edges {
                let (ca, cb) = (r.vertex_column[a], r.vertex_column[b]);
                let k = r.clause_segments_between(ca, cb);
                if pad == PaddingSpec::new(2, 1) && cb > ca {
                    prop_assert!(k % 2 == 0);
                }
                if pad == PaddingSpec::new(4, 3) {
                    prop_assert_eq!(k % 4, if cb > ca { 0 } else { 3 });
                }
            }
            if pad == PaddingSpec::NONE {
                let parity_ok = r.columns.iter().all(|c| (c.x % 2 == 0) == (c.kind == ColumnKind::Variable));
                prop_assert!(parity_ok);
            }
        }
    }

    #[test]
    fn laminar_layouts_are_crossing_free(n in 3usize..12, seed in any::<u64>()) {
        // Random nested spans: recursively split an interval.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut f = Formula::new(n as u32);
        let mut sides = Vec::new();
        for side in [Side::Above, Side::Below] {
            let mut stack = vec![(1u32, n as u32)];
            while let Some((lo, hi)) = stack.pop() {
                if hi < lo + 2 {
                    continue;
                }
                let mid = rng.gen_range(lo + 1..hi);
                f.add_clause(vec![Lit::pos(lo), Lit::pos(mid), Lit::pos(hi)]).unwrap();
                sides.push(side);
                stack.push((lo, mid));
                stack.push((mid, hi));
            }
        }
        let order: Vec<u32> = (1..=n as u32).collect();
        let d = three_legged_layout(&f, &order, &sides).unwrap();
        prop_assert!(d.find_crossing().is_none());
        for c in &d.clauses {
            for &(v, x) in &c.legs {
                let (a, b) = d.var_segments[v as usize - 1];
                prop_assert!(a <= x && x <= b);
            }
        }
    }
}
