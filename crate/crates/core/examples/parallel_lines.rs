// m parallel lines: every ordering of the lines is a decomposition and each
// one has its own signature.

use hyperpack::decomposition::is_k_distinguishable_graph;
use hyperpack::families::parallel_lines;
use hyperpack::{is_k_wpc, star_assignment, CenterMap, Limits};

pub fn run_example() {
    let limits = Limits::default();
    for m in 1..=4 {
        let h = parallel_lines(m).unwrap();
        let a = star_assignment(&h, &CenterMap::first_vertex(&h)).unwrap();
        let r = is_k_distinguishable_graph(&a, m, &limits).unwrap();
        println!("L_{m}: {m}-WPC = {}, decompositions = {}, distinguishable = {}",
            is_k_wpc(&h, m, &limits).unwrap().holds, r.decompositions, r.distinguishable);
        assert!(r.distinguishable);
        if m >= 2 {
            let wpc = is_k_wpc(&h, m + 1, &limits).unwrap();
            assert!(!wpc.holds);
        }
    }
}

fn main() {
    run_example();
}
