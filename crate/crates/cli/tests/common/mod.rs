#![allow(dead_code)]

use rand::distributions::WeightedIndex;
use rand::prelude::*;

/// DNA-like text: runs of 500..=5000 bases, each drawn from its own skewed
/// composition, the way base content drifts along a real genome.
pub fn synthetic_dna(seed: u64, n: usize) -> Vec<u8> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let run = rng.gen_range(500..=5000).min(n - out.len());
        let weights: Vec<f64> = (0..4).map(|_| rng.gen::<f64>().powi(2) + 0.05).collect();
        let pick = WeightedIndex::new(&weights).expect("positive weights");
        out.extend((0..run).map(|_| b"ACGT"[pick.sample(&mut rng)]));
    }
    out
}

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_enumcode")
}
