// Glue two certified blocks at one vertex; the certificate glues with them.

use hyperpack::certificate::certified_uniqueness;
use hyperpack::families::{nongraphic_triple_block, one_vertex_sum};
use hyperpack::{is_k_critical, is_k_wpc, total_excess, verify_certificate, Limits, VerifyMode};

pub fn run_example() {
    let limits = Limits::default();
    let (h1, c1) = nongraphic_triple_block();
    let r = h1.vertex_id("r").unwrap();
    let h2 = h1.disjoint_copy("'", Some(r));
    let c2 = c1.disjoint_copy("'", Some(r));

    let sum = one_vertex_sum(&h1, &h2, r, r, Some((&c1, &c2))).unwrap();
    let h = &sum.hypergraph;
    println!("vertices {:?}", h.vertices());
    println!("rho = {}, 2-critical = {}", total_excess(h), is_k_critical(h, 2));

    let cert = sum.certificate.unwrap();
    verify_certificate(&cert, VerifyMode::Strict).unwrap();
    assert!(is_k_wpc(h, 2, &limits).unwrap().holds);
    let u = certified_uniqueness(&cert, &limits).unwrap();
    println!("glued signature {}", u.signature);
    assert!(u.unique());
}

fn main() {
    run_example();
}
