// Group the ordered decompositions of a tree assignment by signature.

use hyperpack::decomposition::fibers;
use hyperpack::families::full_edge_bundle;
use hyperpack::{star_assignment, CenterMap, Hypergraph, Limits};

pub fn run_example() {
    let limits = Limits::default();
    // three triples on four vertices: rho = 6 = 2 * 3
    let h = Hypergraph::from_names(
        &["a", "b", "c", "d"],
        &[("x", &["a", "b", "c"]), ("y", &["b", "c", "d"]), ("z", &["a", "c", "d"])],
    )
    .unwrap();
    let a = star_assignment(&h, &CenterMap::first_vertex(&h)).unwrap();
    let report = fibers(&a, 2, &limits).unwrap();
    println!("{} decompositions in {} fibers", report.total(), report.fibers.len());
    for (sig, ds) in &report.fibers {
        println!("  {sig}: {}", ds.len());
    }
    println!("singleton fibers: {}", report.singletons().count());

    let bundle = full_edge_bundle(3, 1, 1).unwrap();
    let a = star_assignment(&bundle, &CenterMap::first_vertex(&bundle)).unwrap();
    assert!(fibers(&a, 1, &limits).unwrap().is_empty());
}

fn main() {
    run_example();
}
