use basilica_spectral::recursion::Sequences;
use basilica_spectral::sturm::{isolate_roots, refine_to_width};
use rug::Rational;

#[test]
#[ignore]
fn probe_gamma7_separation() {
    let mut seq = Sequences::without_cache();
    let g = seq.gamma(7);
    let ivs = isolate_roots(&g);
    println!("gamma_7: {} isolated roots", ivs.len());
    let eps = Rational::from((1, rug::Integer::from(1) << 80));
    let refined: Vec<_> = ivs.iter().map(|iv| refine_to_width(&g, iv, &eps)).collect();
    let mut mids: Vec<Rational> = refined.iter().map(|r| r.midpoint()).collect();
    mids.sort();
    let mut min_gap = Rational::from(100);
    for w in mids.windows(2) {
        let d = Rational::from(&w[1] - &w[0]);
        if d < min_gap { min_gap = d; }
    }
    println!("min separation ~ {:.3e}", min_gap.to_f64());
    for w in mids.windows(2) {
        let d = Rational::from(&w[1] - &w[0]).to_f64();
        if d < 1e-6 { println!("close pair near {:.17} gap {:.3e}", w[0].to_f64(), d); }
    }
}

#[test]
#[ignore]
fn probe_gamma7_heap() {
    let mut seq = Sequences::without_cache();
    let g = seq.gamma(7);
    let t = std::time::Instant::now();
    let r = basilica_spectral::sturm::isolate_all_real_in(
        &g, Rational::from(0), Rational::from(9), 2_000_000);
    println!("gamma_7 heap search: {:?} in {:?}", r.map(|v| v.len()), t.elapsed());
}

#[test]
#[ignore]
fn probe_gamma7_roots() {
    let mut seq = Sequences::without_cache();
    let g = seq.gamma(7);
    let ivs = isolate_roots(&g);
    for iv in &ivs {
        let m = iv.midpoint();
        let v = g.eval_floatexp(m.to_f64());
        println!("root ~ {:.12}  log2|f(mid_f64)| {:.1}", m.to_f64(), v.log2_abs());
    }
}

#[test]
#[ignore]
fn probe_gamma7_refined() {
    let mut seq = Sequences::without_cache();
    let g = seq.gamma(7);
    let ivs = isolate_roots(&g);
    let eps = Rational::from((1, rug::Integer::from(1) << 60));
    let mut mids: Vec<f64> = ivs.iter()
        .map(|iv| refine_to_width(&g, iv, &eps).midpoint().to_f64())
        .collect();
    mids.sort_by(f64::total_cmp);
    for m in mids { println!("true root {:.12}", m); }
}
