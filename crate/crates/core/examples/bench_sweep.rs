use fuglede_core::verify::{verify_fuglede_exhaustive, VerifyOptions};
use std::time::Instant;
fn main() {
    for n in [16u64, 20, 22, 24] {
        let t = Instant::now();
        let r = verify_fuglede_exhaustive(n, &VerifyOptions::default()).unwrap();
        println!(
            "N={n}: classes={} spectral={} tile={} both={} cex={} in {:.2}s",
            r.classes_examined, r.spectral_count, r.tile_count, r.both_count,
            r.counterexamples.len(), t.elapsed().as_secs_f64()
        );
    }
}
