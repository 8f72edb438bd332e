//! Shared generators and brute-force oracles for the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use hyperpack::assignment::{labelled_trees, prufer_decode, LabelledMultigraph};
use hyperpack::families::{nongraphic_triple_block, saturated_star_block};
use hyperpack::unionfind::UnionFind;
use hyperpack::{Hypergraph, IndexFamily, KTreeDecomposition, Partition, TreeAssignment, TwoSidedStarCertificate};
use rand::Rng;

pub const SEED: u64 = 0x5eed_2026;

pub fn random_tree<R: Rng>(rng: &mut R, t: usize) -> Vec<(usize, usize)> {
    let seq: Vec<usize> = (0..t.saturating_sub(2)).map(|_| rng.gen_range(0..t)).collect();
    prufer_decode(&seq, t)
}

fn is_tree(edges: &[(usize, usize)]) -> bool {
    let vertices: BTreeSet<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    if vertices.len() != edges.len() + 1 {
        return false;
    }
    let n = vertices.iter().max().map_or(0, |m| m + 1);
    let mut uf = UnionFind::new(n);
    edges.iter().all(|&(u, v)| uf.union(u, v))
}

/// A random valid triple: `k` random spanning trees on `t` vertices, whose
/// edges are then grouped into labels by up to `merges` random merges that
/// keep every label's edges a tree.
pub fn random_instance<R: Rng>(rng: &mut R, t: usize, k: usize, merges: usize) -> (TreeAssignment, KTreeDecomposition) {
    let mut groups: Vec<Vec<((usize, usize), usize)>> = Vec::new();
    for layer in 0..k {
        for e in random_tree(rng, t) {
            groups.push(vec![(e, layer)]);
        }
    }
    for _ in 0..merges {
        if groups.len() < 2 {
            break;
        }
        let i = rng.gen_range(0..groups.len());
        let mut j = rng.gen_range(0..groups.len() - 1);
        if j >= i {
            j += 1;
        }
        let union: Vec<(usize, usize)> = groups[i].iter().chain(&groups[j]).map(|&(e, _)| e).collect();
        if is_tree(&union) {
            let moved = groups.swap_remove(i.max(j));
            groups[i.min(j)].extend(moved);
        }
    }
    let vertices: Vec<String> = (0..t).map(|v| format!("v{v}")).collect();
    let edges = groups
        .iter()
        .enumerate()
        .map(|(g, group)| {
            let support: BTreeSet<usize> = group.iter().flat_map(|&((u, v), _)| [u, v]).collect();
            (format!("g{g}"), support.into_iter().collect())
        })
        .collect();
    let h = Hypergraph::new(vertices, edges).unwrap();
    let trees = groups.iter().map(|g| g.iter().map(|&(e, _)| e).collect()).collect();
    let layer_of = groups.iter().flat_map(|g| g.iter().map(|&(_, l)| l)).collect();
    (TreeAssignment::new(h, trees).unwrap(), KTreeDecomposition::new(k, layer_of))
}

pub fn random_partition<R: Rng>(rng: &mut R, t: usize) -> Partition {
    let blocks = rng.gen_range(1..=t);
    let labels: Vec<usize> = (0..t).map(|_| rng.gen_range(0..blocks)).collect();
    Partition::from_labels(&labels).unwrap()
}

/// A random multigraph on `t` vertices as a rank-two hypergraph, assigned.
pub fn random_multigraph<R: Rng>(rng: &mut R, t: usize, m: usize) -> LabelledMultigraph {
    let edges = (0..m)
        .map(|i| {
            let u = rng.gen_range(0..t);
            let mut v = rng.gen_range(0..t - 1);
            if v >= u {
                v += 1;
            }
            (format!("x{i}"), vec![u.min(v), u.max(v)])
        })
        .collect();
    let h = Hypergraph::new((0..t).map(|v| format!("v{v}")).collect(), edges).unwrap();
    let trees = h.edges().iter().map(|e| vec![(e.support[0], e.support[1])]).collect();
    hyperpack::flatten(&TreeAssignment::new(h, trees).unwrap()).unwrap()
}

pub fn random_family<R: Rng>(rng: &mut R) -> IndexFamily {
    let n = rng.gen_range(1..=8);
    let t = rng.gen_range(2..=5);
    let density = rng.gen_range(0.2..0.9);
    let sets = (0..t)
        .map(|_| (1..=n).filter(|_| rng.gen_bool(density)).collect())
        .collect();
    IndexFamily::new(n, sets).unwrap()
}

fn layer_is_spanning_tree(t: usize, edges: &[(usize, usize)]) -> bool {
    if edges.len() != t - 1 {
        return false;
    }
    let mut adjacency = vec![Vec::new(); t];
    for &(u, v) in edges {
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    let mut seen = vec![false; t];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &v in &adjacency[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Every layer map in `0..k`^|E| whose layers are spanning trees.
pub fn brute_force_decompositions(g: &LabelledMultigraph, k: usize) -> BTreeSet<Vec<usize>> {
    let m = g.edges.len();
    let t = g.t();
    let mut found = BTreeSet::new();
    let mut map = vec![0usize; m];
    loop {
        let ok = (0..k).all(|layer| {
            let edges: Vec<(usize, usize)> =
                (0..m).filter(|&i| map[i] == layer).map(|i| (g.edges[i].u, g.edges[i].v)).collect();
            layer_is_spanning_tree(t, &edges)
        });
        if ok {
            found.insert(map.clone());
        }
        let mut i = 0;
        loop {
            if i == m {
                return found;
            }
            map[i] += 1;
            if map[i] < k {
                break;
            }
            map[i] = 0;
            i += 1;
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

type Key = Vec<(Vec<usize>, usize, Vec<(usize, usize)>)>;

/// Invariant of a certificate under vertex relabelling.
pub fn canonical_key(c: &TwoSidedStarCertificate) -> (usize, Key) {
    let h = c.assignment.host();
    let best = permutations(h.t())
        .into_iter()
        .map(|pi| {
            let mut key: Key = h
                .edges()
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let mut support: Vec<usize> = e.support.iter().map(|&v| pi[v]).collect();
                    support.sort_unstable();
                    let mut tree: Vec<(usize, usize)> = c
                        .assignment
                        .tree(i)
                        .iter()
                        .map(|&(u, v)| (pi[u].min(pi[v]), pi[u].max(pi[v])))
                        .collect();
                    tree.sort_unstable();
                    (support, c.layers.layer(i), tree)
                })
                .collect();
            key.sort();
            key
        })
        .min()
        .unwrap();
    (c.k(), best)
}

/// Saturated blocks with `t <= 4` and `k` in {2, 3} plus the nongraphic
/// block, one representative per isomorphism class.
pub fn certified_pool() -> Vec<TwoSidedStarCertificate> {
    let mut pool = vec![nongraphic_triple_block().1];
    for k in 2..=3 {
        for t in 2..=4 {
            let all: Vec<usize> = (0..t).collect();
            let middles: Vec<Vec<Vec<(usize, usize)>>> = if k == 2 {
                vec![Vec::new()]
            } else {
                labelled_trees(&all).into_iter().map(|tree| vec![tree]).collect()
            };
            for middle in &middles {
                for c_minus in 0..t {
                    for c_plus in 0..t {
                        pool.push(saturated_star_block(t, k, c_minus, c_plus, middle).unwrap().1);
                    }
                }
            }
        }
    }
    let mut seen = HashSet::new();
    pool.retain(|c| seen.insert(canonical_key(c)));
    pool
}
