use basilica_spectral::recursion::Sequences;
use basilica_spectral::sturm::{isolate_all_real, isolate_all_real_in};
use rug::Rational;
use std::time::Instant;

#[test]
#[ignore]
fn probe_isolation_small() {
    let mut seq = Sequences::without_cache();
    let g = seq.gamma(6);
    let t = Instant::now();
    let iv = isolate_all_real(&g, 200_000);
    println!("gamma_6 deg {}: isolated {:?} in {:?}", g.degree(), iv.as_ref().map(|v| v.len()), t.elapsed());
}

#[test]
#[ignore]
fn probe_isolation_scaling() {
    let mut seq = Sequences::new();
    for n in 6..=14usize {
        let g = seq.gamma(n);
        let t = Instant::now();
        let iv = isolate_all_real_in(&g, Rational::new(), Rational::from(9), 20_000_000);
        println!(
            "gamma_{} deg {}: isolated {:?} in {:?}",
            n,
            g.degree(),
            iv.as_ref().map(|v| v.len()),
            t.elapsed()
        );
    }
}
