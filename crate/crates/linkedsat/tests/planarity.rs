use linkedsat::planarity::{planarity_test, verify_witness, Graph, PlanarityResult};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Stacked triangulation followed by random edge flips, then random deletions.
fn planar_graph(n: usize, flips: usize, keep: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tris: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    for v in 3..n {
        let i = rng.gen_range(0..tris.len());
        let [a, b, c] = tris.swap_remove(i);
        tris.push([a, b, v]);
        tris.push([b, c, v]);
        tris.push([c, a, v]);
    }
    let has_edge = |tris: &Vec<[usize; 3]>, x: usize, y: usize| {
        tris.iter().any(|t| (0..3).any(|k| t[k] == x && t[(k + 1) % 3] == y))
    };
    for _ in 0..flips {
        let i = rng.gen_range(0..tris.len());
        let k = rng.gen_range(0..3);
        let t = tris[i];
        let (a, b, c) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
        let Some(j) = tris.iter().position(|s| (0..3).any(|q| s[q] == b && s[(q + 1) % 3] == a)) else {
            continue;
        };
        let s = tris[j];
        let q = (0..3).find(|&q| s[q] == b).unwrap();
        let d = s[(q + 2) % 3];
        if c == d || has_edge(&tris, c, d) {
            continue;
        }
        tris[i] = [c, a, d];
        tris[j] = [d, b, c];
    }
    let mut g = Graph::new(n);
    for t in &tris {
        for k in 0..3 {
            if rng.gen_bool(keep) {
                g.add_edge(t[k], t[(k + 1) % 3]);
            }
        }
    }
    g
}

fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(a, b);
            }
        }
    }
    g
}

#[test]
fn petersen_is_nonplanar() {
    let mut g = Graph::new(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(i + 5, (i + 2) % 5 + 5);
    }
    match planarity_test(&g) {
        PlanarityResult::NonPlanar(w) => assert!(verify_witness(&w, &g)),
        _ => panic!("Petersen graph is not planar"),
    }
}

#[test]
fn long_path_and_big_grid() {
    let n = 20_000;
    let g = Graph::from_edges(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>());
    assert!(planarity_test(&g).is_planar());
    let w = 60;
    let mut g = Graph::new(w * w);
    for r in 0..w {
        for c in 0..w {
            if c + 1 < w {
                g.add_edge(r * w + c, r * w + c + 1);
            }
            if r + 1 < w {
                g.add_edge(r * w + c, (r + 1) * w + c);
            }
        }
    }
    match planarity_test(&g) {
        PlanarityResult::Planar(e) => assert!(e.euler_ok()),
        _ => panic!("grid is planar"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn constructed_planar_graphs_embed(n in 3usize..60, flips in 0usize..200, keep in 0.5f64..1.0, seed: u64) {
        let g = planar_graph(n, flips, keep, seed);
        match planarity_test(&g) {
            PlanarityResult::Planar(e) => {
                prop_assert!(e.euler_ok());
                prop_assert_eq!(e.graph().m(), g.m());
            }
            PlanarityResult::NonPlanar(_) => prop_assert!(false, "planar by construction"),
        }
    }

    #[test]
    fn verdicts_are_certified(n in 5usize..13, p in 0.2f64..0.8, seed: u64) {
        let g = random_graph(n, p, seed);
        match planarity_test(&g) {
            PlanarityResult::Planar(e) => {
                prop_assert!(e.euler_ok());
                prop_assert_eq!(e.graph().m(), g.m());
            }
            PlanarityResult::NonPlanar(w) => prop_assert!(verify_witness(&w, &g)),
        }
    }
}
