// Full edge bundles are k-weak-partition-connected but carry too much
// excess for any ordered k-tree decomposition of a tree assignment.

use hyperpack::families::full_edge_bundle;
use hyperpack::{has_k_distinguishable_assignment, is_k_wpc, total_excess, Limits};

pub fn run_example() {
    let limits = Limits::default();
    for (t, k, q) in [(2, 1, 1), (3, 2, 1), (4, 2, 2)] {
        let h = full_edge_bundle(t, k, q).unwrap();
        let wpc = is_k_wpc(&h, k, &limits).unwrap();
        let search = has_k_distinguishable_assignment(&h, k, &limits).unwrap();
        println!(
            "H({t},{k},{q}): rho = {}, k(t-1) = {}, {k}-WPC = {}, distinguishable = {}",
            total_excess(&h),
            k * (t - 1),
            wpc.holds,
            search.found()
        );
        assert!(wpc.holds && !search.found());
    }
}

fn main() {
    run_example();
}
