//! Fixture problems shared by the benchmarks.

use boson_bounds::{Potential, Problem};

pub fn oscillator(v: f64) -> Problem {
    Problem::new(Potential::oscillator(1.0, 1.0).expect("valid shape"), 3, v)
        .expect("valid problem")
}

pub fn kratzer(v: f64) -> Problem {
    Problem::new(Potential::kratzer(1.0, 1.0).expect("valid shape"), 3, v).expect("valid problem")
}
