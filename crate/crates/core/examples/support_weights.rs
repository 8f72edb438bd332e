// Weight calculus of the support hypergraph of an index family.

use hyperpack::partition::enumerate_partitions;
use hyperpack::support::{
    check_weight_conditions, full_rowset_size, support_hypergraph, weight, weight_partition_identity,
};
use hyperpack::{IndexFamily, Limits};

pub fn run_example() {
    let f = IndexFamily::new(3, vec![vec![1, 2, 3], vec![1, 2], vec![1, 3]]).unwrap();
    let s = support_hypergraph(&f);
    for e in s.hypergraph.edges() {
        println!("coordinate {} is shared by sets {:?}", e.label, e.support.iter().map(|j| j + 1).collect::<Vec<_>>());
    }
    println!("wt(all) = {}", weight(&f, &[0, 1, 2]).unwrap());

    let rowset = full_rowset_size(&f, 2);
    println!("rho = {}, budget = {}, square = {}", rowset.rho, rowset.budget, rowset.square);
    let c = check_weight_conditions(&f, 2, &Limits::default()).unwrap();
    println!("weight conditions hold at k = 2: {} (violation {:?})", c.holds, c.violation);

    assert!(rowset.square && c.holds);

    for p in enumerate_partitions(f.t()) {
        assert!(weight_partition_identity(&f, 2, &p).unwrap().equal);
    }
}

fn main() {
    run_example();
}
