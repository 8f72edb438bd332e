//! Every runnable example also runs as a test.

#[allow(dead_code)]
mod decomposition_fibers {
    include!("../examples/decomposition_fibers.rs");
}

#[allow(dead_code)]
mod excess_obstruction {
    include!("../examples/excess_obstruction.rs");
}

#[allow(dead_code)]
mod interior_nonforcing {
    include!("../examples/interior_nonforcing.rs");
}

#[allow(dead_code)]
mod nongraphic_block {
    include!("../examples/nongraphic_block.rs");
}

#[allow(dead_code)]
mod one_vertex_sum {
    include!("../examples/one_vertex_sum.rs");
}

#[allow(dead_code)]
mod parallel_lines {
    include!("../examples/parallel_lines.rs");
}

#[allow(dead_code)]
mod saturated_block {
    include!("../examples/saturated_block.rs");
}

#[allow(dead_code)]
mod slack_identity {
    include!("../examples/slack_identity.rs");
}

#[allow(dead_code)]
mod support_weights {
    include!("../examples/support_weights.rs");
}

#[test]
fn decomposition_fibers_runs() {
    decomposition_fibers::run_example();
}

#[test]
fn excess_obstruction_runs() {
    excess_obstruction::run_example();
}

#[test]
fn interior_nonforcing_runs() {
    interior_nonforcing::run_example();
}

#[test]
fn nongraphic_block_runs() {
    nongraphic_block::run_example();
}

#[test]
fn one_vertex_sum_runs() {
    one_vertex_sum::run_example();
}

#[test]
fn parallel_lines_runs() {
    parallel_lines::run_example();
}

#[test]
fn saturated_block_runs() {
    saturated_block::run_example();
}

#[test]
fn slack_identity_runs() {
    slack_identity::run_example();
}

#[test]
fn support_weights_runs() {
    support_weights::run_example();
}
