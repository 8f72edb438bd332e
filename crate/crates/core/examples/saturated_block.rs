// Build a saturated star block with one interior layer and check it.

use hyperpack::certificate::{certified_uniqueness, certified_wpc};
use hyperpack::families::saturated_star_block;
use hyperpack::{is_k_critical, verify_certificate, Limits, VerifyMode};

pub fn run_example() {
    let limits = Limits::default();
    // vertices r, u1, u2, u3; interior layer is the path r-u1-u2-u3
    let path = vec![(0, 1), (1, 2), (2, 3)];
    let (h, cert) = saturated_star_block(4, 3, 0, 1, &[path]).unwrap();
    verify_certificate(&cert, VerifyMode::Strict).unwrap();
    println!("labels: {:?}", h.labels().collect::<Vec<_>>());
    println!("3-critical: {}", is_k_critical(&h, 3));

    let ledger = certified_wpc(&cert, &limits).unwrap();
    println!("3-WPC from layer ranks: {} ({} partitions)", ledger.holds, ledger.entries.len());

    let u = certified_uniqueness(&cert, &limits).unwrap();
    println!("signature {} alone in its fiber: {}", u.signature, u.unique());
    assert!(ledger.holds && u.unique());
}

fn main() {
    run_example();
}
