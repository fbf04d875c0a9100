#![allow(dead_code)]

use rand::Rng;
use twowell::{Complex64, IntegrableParams};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Unit-scale integrable data with positive `s`, `t` (so `ζ` stays away from
/// zero). With `parallel`, `s` is a multiple of `t`, which makes the
/// identified Hamiltonian Hermitian.
pub fn random_ip<R: Rng>(rng: &mut R, n: usize, parallel: bool) -> IntegrableParams {
    let t: Vec<f64> = (0..n).map(|_| rng.gen_range(0.3..1.2)).collect();
    let s = if parallel {
        let k = rng.gen_range(0.5..1.5);
        t.iter().map(|x| k * x).collect()
    } else {
        (0..n).map(|_| rng.gen_range(0.3..1.2)).collect()
    };
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    IntegrableParams {
        n_levels: n,
        eta: sign * rng.gen_range(0.4..1.5),
        omega: (0..n).map(|_| rng.gen_range(-1.0..1.5)).collect(),
        s,
        t,
        alpha: rng.gen_range(0.5..2.0),
        u: c(0.0, 0.0),
    }
}

pub fn random_point<R: Rng>(rng: &mut R, radius: f64) -> Complex64 {
    c(rng.gen_range(-radius..radius), rng.gen_range(-radius..radius))
}
