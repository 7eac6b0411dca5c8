use basilica_spectral::recursion::Sequences;
use basilica_spectral::sturm::{isolate_all_real, real_root_count};
use std::time::Instant;

#[test]
#[ignore]
fn probe_isolation() {
    let mut seq = Sequences::without_cache();
    for n in [10usize, 11, 12] {
        let g = seq.gamma(n);
        let t = Instant::now();
        let iv = isolate_all_real(&g, 10_000);
        println!("gamma_{} deg {}: isolated {:?} roots in {:?}", n, g.degree(), iv.as_ref().map(|v| v.len()), t.elapsed());
    }
}

#[test]
#[ignore]
fn probe_sturm_count() {
    let mut seq = Sequences::without_cache();
    for n in [8usize, 9, 10] {
        let g = seq.gamma(n);
        let t = Instant::now();
        let c = real_root_count(&g);
        println!("gamma_{} deg {}: sturm real root count {} in {:?}", n, g.degree(), c, t.elapsed());
    }
}
