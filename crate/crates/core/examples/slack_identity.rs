// Split the partition excess into assignment slack and graphical surplus.

use hyperpack::families::nongraphic_triple_block;
use hyperpack::partition::enumerate_partitions;
use hyperpack::slack::{finite_system_check, slack_identity_check};
use hyperpack::Limits;

pub fn run_example() {
    let (h, cert) = nongraphic_triple_block();
    let d = cert.induced_decomposition();
    println!("partition  w-k(s-1)  B  Lambda");
    for p in enumerate_partitions(h.t()) {
        let id = slack_identity_check(&cert.assignment, &d, &p).unwrap();
        println!("{p:>9}  {:>8}  {}  {}", id.lhs, id.surplus, id.lambda);
        assert!(id.equal);
    }
    let fs = finite_system_check(&cert.assignment, &d, 2, &Limits::default()).unwrap();
    println!("Lambda <= B everywhere: {} (agrees with 2-WPC: {})", fs.holds, fs.wpc_agrees);
}

fn main() {
    run_example();
}
