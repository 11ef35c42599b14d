#![allow(dead_code)]

use std::collections::HashSet;

use griddy::engine::{ChainKind, EngineConfig, FlagDir, LogicEngine};
use griddy::formula::Formula;
use griddy::lattice::{Graph, LatticePoint};
use rand::Rng;

pub fn figure_one() -> Formula {
    Formula::from_dimacs(4, &[[1, 2, 3], [1, 2, 4], [-1, 3, 4]]).unwrap()
}

/// NAE-unsatisfiable: both values of X2 are forced against X1.
pub fn two_variable_unsat() -> Formula {
    Formula::from_dimacs(2, &[[1, 1, 2], [1, 1, -2], [-1, -1, 2], [-1, -1, -2]]).unwrap()
}

pub fn random_formula<R: Rng>(rng: &mut R, n: usize, m: usize) -> Formula {
    let clauses: Vec<[i64; 3]> = (0..m)
        .map(|_| {
            [0; 3].map(|_| {
                let v = rng.gen_range(1..=n as i64);
                if rng.gen_bool(0.5) {
                    v
                } else {
                    -v
                }
            })
        })
        .collect();
    Formula::from_dimacs(n, &clauses).unwrap()
}

/// Every orientation with every direction assignment on the present flags.
pub fn all_configs(engine: &LogicEngine) -> Vec<EngineConfig> {
    let (n, m) = (engine.armatures(), engine.rows());
    let flags: Vec<(ChainKind, usize, usize)> = engine.flags().collect();
    let mut out = Vec::new();
    for o in 0u32..(1 << n) {
        let orientation: Vec<bool> = (0..n).map(|i| (o >> i) & 1 == 1).collect();
        for d in 0u64..(1 << flags.len()) {
            let mut cfg = EngineConfig {
                orientation: orientation.clone(),
                dir_a: vec![vec![None; m]; n],
                dir_a_prime: vec![vec![None; m]; n],
            };
            for (bit, &(kind, i, j)) in flags.iter().enumerate() {
                let dir = if (d >> bit) & 1 == 1 { FlagDir::TowardGapRight } else { FlagDir::TowardGapLeft };
                cfg.set_dir(kind, i, j, Some(dir));
            }
            out.push(cfg);
        }
    }
    out
}

/// Random connected graph on `1..=max_n` vertices: a random tree plus extra
/// edges, with vertex ids shuffled.
pub fn random_connected_graph<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut edges = HashSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((perm[u].min(perm[v]), perm[u].max(perm[v])));
    }
    let extra = rng.gen_range(0..=n);
    for _ in 0..extra {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            edges.insert((u.min(v), u.max(v)));
        }
    }
    let mut edges: Vec<_> = edges.into_iter().collect();
    edges.sort();
    Graph::from_edges(n, &edges).unwrap()
}

/// Exhaustive search over all maps into the window |x|, |y| <= n with vertex
/// 0 at the origin. Vertices are taken in breadth-first order from 0 so that
/// edge checks cut the enumeration early; no other pruning.
pub fn windowed_oracle(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    let mut order = vec![0];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                order.push(v);
            }
        }
    }
    assert_eq!(order.len(), n, "oracle expects a connected graph");
    let r = n as i64;
    let window: Vec<LatticePoint> = (-r..=r)
        .flat_map(|x| (-r..=r).map(move |y| LatticePoint::new(x, y)))
        .collect();
    let mut pos = vec![None; n];
    pos[0] = Some(LatticePoint::new(0, 0));

    fn go(g: &Graph, order: &[usize], k: usize, window: &[LatticePoint], pos: &mut [Option<LatticePoint>]) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        for &p in window {
            if pos.contains(&Some(p)) {
                continue;
            }
            if g.neighbors(v).iter().any(|&u| pos[u].is_some_and(|q| q.squared_distance(p) != 1)) {
                continue;
            }
            pos[v] = Some(p);
            if go(g, order, k + 1, window, pos) {
                return true;
            }
            pos[v] = None;
        }
        false
    }
    go(g, &order, 1, &window, &mut pos)
}
