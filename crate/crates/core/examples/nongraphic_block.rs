// The smallest certified block with a hyperedge of rank three: verify its
// certificate, list its decompositions and read off the unique signature.

use hyperpack::certificate::certified_uniqueness;
use hyperpack::decomposition::fibers;
use hyperpack::families::nongraphic_triple_block;
use hyperpack::partition::enumerate_partitions;
use hyperpack::{verify_certificate, weak_partition_excess, Limits, VerifyMode};

pub fn run_example() {
    let limits = Limits::default();
    let (h, cert) = nongraphic_triple_block();
    verify_certificate(&cert, VerifyMode::Strict).unwrap();

    for p in enumerate_partitions(h.t()) {
        println!("w({}) = {}", p, weak_partition_excess(&h, &p).unwrap());
    }

    let report = fibers(&cert.assignment, 2, &limits).unwrap();
    for (sig, ds) in &report.fibers {
        println!("signature {sig}: {} decomposition(s)", ds.len());
    }
    assert_eq!(report.total(), 4);

    let u = certified_uniqueness(&cert, &limits).unwrap();
    println!("certified signature {} is forced: {}", u.signature, u.forced);
    assert!(u.unique());
}

fn main() {
    run_example();
}
