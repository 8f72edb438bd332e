// An interior signature value does not pin a hyperedge to one layer.

use hyperpack::decomposition::{concentrated_point, count_and_weight, find_interior_split, interior_point};
use hyperpack::families::full_edge_bundle;
use hyperpack::{star_assignment, CenterMap, Limits};

pub fn run_example() {
    let (k, c, n) = (3, 1, 2);
    let split = interior_point(k, c, n).unwrap();
    let flat = concentrated_point(k, c, n);
    println!("{flat:?} and {split:?} both have (count, weight) = {:?}", count_and_weight(&flat));
    assert_eq!(count_and_weight(&flat), count_and_weight(&split));

    // three full triples with stars at one vertex, three layers
    let h = full_edge_bundle(3, 3, 0).unwrap();
    let a = star_assignment(&h, &CenterMap::first_vertex(&h)).unwrap();
    let found = find_interior_split(&a, k, c, &Limits::default()).unwrap().expect("a split exists");
    println!(
        "label {}: layer counts {:?} and {:?} share a signature fiber",
        found.label, found.concentrated_counts, found.split_counts
    );
}

fn main() {
    run_example();
}
