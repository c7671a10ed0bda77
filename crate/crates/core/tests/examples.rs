#[path = "../examples/field_arithmetic.rs"]
mod field_arithmetic;
#[path = "../examples/monoid_algebra.rs"]
mod monoid_algebra;
#[path = "../examples/convolution.rs"]
mod convolution;
#[path = "../examples/cellular_automata.rs"]
mod cellular_automata;
#[path = "../examples/linear_ca.rs"]
mod linear_ca;
#[path = "../examples/finiteness.rs"]
mod finiteness;
#[path = "../examples/sentence.rs"]
mod sentence;

#[test]
fn field_arithmetic_example_runs() {
    field_arithmetic::run_example().expect("field example should run");
}

#[test]
fn monoid_algebra_example_runs() {
    monoid_algebra::run_example().expect("monoid algebra example should run");
}

#[test]
fn convolution_example_runs() {
    convolution::run_example().expect("convolution example should run");
}

#[test]
fn cellular_automata_example_runs() {
    cellular_automata::run_example().expect("cellular automata example should run");
}

#[test]
fn linear_ca_example_runs() {
    linear_ca::run_example().expect("linear CA example should run");
}

#[test]
fn finiteness_example_runs() {
    finiteness::run_example().expect("finiteness example should run");
}

#[test]
fn sentence_example_runs() {
    sentence::run_example().expect("sentence example should run");
}
