//! Certified spectral gaps. An interval is a gap for every level at once
//! when (i) no γ_j with j ≤ k has a root in it and (ii) the escape condition
//! p_j = γ_j² − 4η_j² > 0 holds on the whole interval for the two base
//! depths j = k−1 and j = k: then |ζ| stays above 2 and the pointwise
//! dynamics push every later level out as well. Minimal base depth is k = 3,
//! the first level with both ζ_{k−1} and ζ_k defined.

use crate::poly::IntPoly;
use crate::recursion::{rf_eval, zeta_step, Sequences, Value};
use crate::sturm::{isolate_roots, refine_to_width, sturm_count};
use rand::Rng;
use rand::SeedableRng;
use rug::{Integer, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapCertificate {
    pub lo: Rational,
    pub hi: Rational,
    /// The level k whose pair (p_{k−1}, p_k) carries the escape argument.
    pub base_depth: usize,
}

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum GapError {
    #[error("interval contains a level-{level} eigenvalue")]
    ContainsEigenvalue { level: usize },
    #[error("escape condition not established at depth {depth}")]
    NotCertified { depth: usize },
    #[error("base depth must be at least 3, got {got}")]
    DepthTooSmall { got: usize },
}

/// p_k = γ_k² − 4η_k².
fn escape_poly(seq: &mut Sequences, k: usize) -> IntPoly {
    let g = seq.gamma(k);
    let e = seq.eta(k);
    g.square().sub(&e.square().scale(&Integer::from(4)))
}

/// Positivity of `f` on [lo, hi]: no real root of the squarefree part inside
/// and a positive sample at the midpoint. Endpoint roots rejected too.
fn positive_on(f: &IntPoly, lo: &Rational, hi: &Rational) -> bool {
    let sf = f.squarefree_part();
    if sf.sign_at(lo) == 0 || sturm_count(&sf, lo, hi) != 0 {
        return false;
    }
    let mid = Rational::from(lo + hi) / 2u32;
    f.sign_at(&mid) > 0
}

/// Certify (lo, hi) as a spectral gap at every level, using base depth k.
pub fn certify_gap(
    seq: &mut Sequences,
    k: usize,
    lo: &Rational,
    hi: &Rational,
) -> Result<GapCertificate, GapError> {
    if k < 3 {
        return Err(GapError::DepthTooSmall { got: k });
    }
    assert!(lo < hi, "empty interval");
    for j in 1..=k {
        let gamma = seq.gamma(j);
        if gamma.sign_at(lo) == 0 || sturm_count(&gamma, lo, hi) != 0 {
            return Err(GapError::ContainsEigenvalue { level: j });
        }
    }
    for j in [k - 1, k] {
        let p = escape_poly(seq, j);
        if !positive_on(&p, lo, hi) {
            return Err(GapError::NotCertified { depth: j });
        }
    }
    Ok(GapCertificate { lo: lo.clone(), hi: hi.clone(), base_depth: k })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Find a certified gap adjacent to `center` on the given side: starting
/// from width `delta0`, halve the offset up to `max_halvings` times and try
/// to certify the band between consecutive offsets. Eigenvalues accumulate
/// toward their limit points geometrically, so some band close enough in is
/// expected to certify; `None` after the full budget means the halving depth
/// was exhausted.
pub fn gap_side(
    seq: &mut Sequences,
    k: usize,
    center: &Rational,
    side: Side,
    delta0: &Rational,
    max_halvings: u32,
) -> Option<GapCertificate> {
    let mut outer = delta0.clone();
    for _ in 0..max_halvings {
        let inner = Rational::from(&outer / 2u32);
        let (lo, hi) = match side {
            Side::Right => (center.clone() + &inner, center.clone() + &outer),
            Side::Left => (center.clone() - &outer, center.clone() - &inner),
        };
        if let Ok(cert) = certify_gap(seq, k, &lo, &hi) {
            return Some(cert);
        }
        outer = inner;
    }
    None
}

/// Evidence that eigenvalues accumulate at `center`: the distance from
/// `center` to the nearest root of γ_{k+2j} strictly decreases along
/// j = 0, 1, …, levels−1. Distances are compared through interval bounds, so
/// a `true` answer is rigorous.
pub fn accumulation_evidence(
    seq: &mut Sequences,
    ctx: &GapContext,
    k: usize,
    center: &Rational,
    levels: usize,
) -> bool {
    assert!(k + 2 * (levels.saturating_sub(1)) <= ctx.max_level, "context too shallow");
    let eps = Rational::from((1, Integer::from(1) << 32));
    let dist = |r: &crate::sturm::IsolatingInterval| -> (Rational, Rational) {
        if r.hi < *center {
            (center.clone() - &r.hi, center.clone() - &r.lo)
        } else if r.lo > *center {
            (r.lo.clone() - center, r.hi.clone() - center)
        } else {
            (Rational::new(), (r.hi.clone() - center).abs())
        }
    };
    // Lower bound on the previous level's nearest-root distance; a strict
    // decrease is certified when the new distance upper bound undercuts it.
    let mut prev_lower: Option<Rational> = None;
    for j in 0..levels {
        let lvl = k + 2 * j;
        let gamma = seq.gamma(lvl);
        // Coarse pass over the precomputed roots, then refine only the
        // intervals that could still be nearest; at high levels refining
        // everything would swamp the whole computation.
        let coarse: Vec<_> = ctx
            .roots
            .iter()
            .filter(|(l, _)| *l == lvl)
            .map(|(_, r)| r.clone())
            .collect();
        let best_upper = coarse
            .iter()
            .map(|r| dist(r).1)
            .min()
            .expect("at least one root");
        let mut best: Option<(Rational, Rational)> = None; // (lower, upper)
        for iv in coarse.iter().filter(|r| dist(r).0 <= best_upper) {
            let r = refine_to_width(&gamma, iv, &eps);
            let (dlo, dhi) = dist(&r);
            if best.as_ref().is_none_or(|(_, b)| dhi < *b) {
                best = Some((dlo, dhi));
            }
        }
        let Some((dlo, dhi)) = best else { return false };
        if let Some(prev) = &prev_lower {
            if dhi >= *prev {
                return false;
            }
        }
        prev_lower = Some(dlo);
    }
    true
}

/// Enumerate certified gaps inside [lo, hi] by recursive bisection down to
/// `min_width`, coalescing adjacent certified pieces.
pub fn gap_enumerate(
    seq: &mut Sequences,
    k: usize,
    lo: &Rational,
    hi: &Rational,
    min_width: &Rational,
) -> Vec<GapCertificate> {
    let mut pieces: Vec<(Rational, Rational)> = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        if certify_gap(seq, k, &a, &b).is_ok() {
            pieces.push((a, b));
            continue;
        }
        let w = Rational::from(&b - &a);
        if w <= *min_width {
            continue;
        }
        let mid = Rational::from(&a + &b) / 2u32;
        stack.push((mid.clone(), b));
        stack.push((a, mid));
    }
    pieces.sort_by(|x, y| x.0.cmp(&y.0));
    let mut out: Vec<GapCertificate> = Vec::new();
    for (a, b) in pieces {
        if let Some(lastc) = out.last_mut() {
            if lastc.hi == a {
                lastc.hi = b;
                continue;
            }
        }
        out.push(GapCertificate { lo: a, hi: b, base_depth: k });
    }
    out
}

/// Sampling check on a certificate: at deterministic pseudo-random rational
/// points inside the gap, iterate the ζ dynamics and require the magnitude
/// to escape past `threshold` within `max_iters` steps. The orbit magnitudes
/// oscillate between two growing subsequences (odd and even levels), so
/// monotone growth is required per parity class, comparing each iterate with
/// the one two steps back. An independent sanity check of the escape
/// argument, not its proof.
pub fn escape_sampling(
    seq: &mut Sequences,
    cert: &GapCertificate,
    samples: usize,
    max_iters: usize,
    threshold: f64,
    seed: u64,
) -> bool {
    let k = cert.base_depth;
    let zk1 = seq.zeta(k - 1);
    let zk = seq.zeta(k);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let denom = 1u64 << 32;
    for _ in 0..samples {
        let t = Rational::from((rng.gen_range(1..denom), denom));
        let x = cert.lo.clone() + Rational::from(&cert.hi - &cert.lo) * t;
        let mut prev2 = rf_eval(&zk1, &x);
        let mut prev = rf_eval(&zk, &x);
        // Magnitude of the same-parity predecessor: next is compared with
        // prev2, not prev, because consecutive levels alternate in size.
        let mut parity_mag = match &prev2 {
            Value::Finite(v) => v.to_f64().abs(),
            _ => f64::INFINITY,
        };
        let mut ok = false;
        for _ in 0..max_iters {
            let next = zeta_step(&prev, &prev2);
            let next_parity_mag = match &prev {
                Value::Finite(v) => v.to_f64().abs(),
                _ => f64::INFINITY,
            };
            match &next {
                Value::Finite(v) => {
                    let mag = v.to_f64().abs();
                    if mag <= parity_mag {
                        return false;
                    }
                    if mag > threshold {
                        ok = true;
                    }
                }
                // A pole inside a certified gap means the magnitude blew up
                // through infinity, which is escape at its fastest.
                Value::Pole => {
                    ok = true;
                }
                Value::Indeterminate => return false,
            }
            if ok {
                break;
            }
            parity_mag = next_parity_mag;
            prev2 = prev;
            prev = next;
        }
        if !ok {
            return false;
        }
    }
    true
}

/// Precomputed root data that makes gap certification cheap at large depth:
/// certified isolations of every γ_j root (j ≤ max_level) plus, for the
/// small base depths that carry the escape argument, isolations of the
/// escape polynomials' real roots. With these in hand, root-freeness of an
/// interval is plain interval disjointness and needs no further Sturm work.
pub struct GapContext {
    pub max_level: usize,
    /// (level k, certified interval) for every root of every γ_k, k ≤
    /// max_level, sorted by lower endpoint. Complete: each γ_k contributes
    /// exactly deg γ_k certified sign-change intervals.
    pub roots: Vec<(usize, crate::sturm::IsolatingInterval)>,
    /// Largest base depth tried by the escape argument.
    escape_depth: usize,
    /// escape_roots[j] holds the isolated real roots of the squarefree part
    /// of p_{j+2}, so positivity of p_{j+2} on an interval reduces to
    /// disjointness plus one sample sign.
    escape_roots: Vec<Vec<crate::sturm::IsolatingInterval>>,
    escape_polys: Vec<IntPoly>,
}

impl GapContext {
    /// Isolate everything once. γ roots are certified by sign-change
    /// cardinality (count = degree proves completeness and simplicity);
    /// escape polynomials are low degree and fall to classic Sturm
    /// isolation. `escape_depth` is the largest base depth the certifier
    /// will try; 6 is plenty in practice.
    pub fn build(seq: &mut Sequences, max_level: usize, escape_depth: usize) -> Self {
        assert!((3..=max_level).contains(&escape_depth));
        let mut roots = Vec::new();
        for k in 1..=max_level {
            let f = seq.gamma(k);
            let iv = crate::sturm::isolate_spectral_roots(&f);
            roots.extend(iv.into_iter().map(|r| (k, r)));
        }
        roots.sort_by(|a, b| a.1.lo.cmp(&b.1.lo));
        let mut escape_roots = Vec::new();
        let mut escape_polys = Vec::new();
        for j in 2..=escape_depth {
            let p = escape_poly(seq, j);
            escape_roots.push(isolate_roots(&p.squarefree_part()));
            escape_polys.push(p);
        }
        GapContext { max_level, roots, escape_depth, escape_roots, escape_polys }
    }

    fn interval_hits_roots(&self, lo: &Rational, hi: &Rational) -> Option<usize> {
        // roots is sorted by lo; a linear scan with early exit is fine for
        // the sizes involved, and certification calls pass through here only
        // a handful of times per candidate.
        for (k, r) in &self.roots {
            if r.lo >= *hi {
                break;
            }
            if r.hi > *lo {
                return Some(*k);
            }
        }
        None
    }

    fn escape_positive(&self, j: usize, lo: &Rational, hi: &Rational) -> bool {
        let idx = j - 2;
        let disjoint = self.escape_roots[idx]
            .iter()
            .all(|r| r.hi <= *lo || r.lo >= *hi);
        if !disjoint {
            return false;
        }
        let mid = Rational::from(lo + hi) / 2u32;
        self.escape_polys[idx].sign_at(&mid) > 0
    }
}

/// Certify (lo, hi) as a gap using precomputed root data: the interval must
/// be disjoint from every certified γ root interval up to the context's
/// depth, and some base pair (p_{k−1}, p_k) with 3 ≤ k ≤ escape_depth must
/// be positive throughout. Reports the smallest base depth that works.
pub fn certify_gap_ctx(
    ctx: &GapContext,
    lo: &Rational,
    hi: &Rational,
) -> Result<GapCertificate, GapError> {
    assert!(lo < hi, "empty interval");
    if let Some(level) = ctx.interval_hits_roots(lo, hi) {
        return Err(GapError::ContainsEigenvalue { level });
    }
    for k in 3..=ctx.escape_depth {
        if ctx.escape_positive(k - 1, lo, hi) && ctx.escape_positive(k, lo, hi) {
            return Ok(GapCertificate { lo: lo.clone(), hi: hi.clone(), base_depth: k });
        }
    }
    Err(GapError::NotCertified { depth: ctx.escape_depth })
}

/// Enumerate certified gaps in (0, 8] at the context's depth: candidates are
/// the maximal intervals between consecutive certified root intervals; each
/// candidate of width ≥ min_width is certified whole or shrunk by bisection.
/// Output is sorted and disjoint.
pub fn gap_enumerate_ctx(ctx: &GapContext, min_width: &Rational) -> Vec<GapCertificate> {
    let mut cands: Vec<(Rational, Rational)> = Vec::new();
    let mut cursor = Rational::new();
    for (_, r) in &ctx.roots {
        if r.lo > cursor {
            cands.push((cursor.clone(), r.lo.clone()));
        }
        if r.hi > cursor {
            cursor = r.hi.clone();
        }
    }
    let eight = Rational::from(8);
    if cursor < eight {
        cands.push((cursor, eight));
    }
    let mut out: Vec<GapCertificate> = Vec::new();
    for (a, b) in cands {
        if Rational::from(&b - &a) < *min_width {
            continue;
        }
        if let Ok(c) = certify_gap_ctx(ctx, &a, &b) {
            out.push(c);
            continue;
        }
        // The candidate straddles a region where the small-depth escape
        // argument fails (eigenvalues of deeper levels than the context
        // accumulate there). Keep certified sub-pieces, coalescing adjacent
        // ones.
        let mut pieces: Vec<(Rational, Rational)> = Vec::new();
        let mut stack = vec![(a, b)];
        while let Some((x, y)) = stack.pop() {
            if certify_gap_ctx(ctx, &x, &y).is_ok() {
                pieces.push((x, y));
                continue;
            }
            if Rational::from(&y - &x) <= *min_width {
                continue;
            }
            let mid = Rational::from(&x + &y) / 2u32;
            stack.push((mid.clone(), y));
            stack.push((x, mid));
        }
        pieces.sort_by(|u, v| u.0.cmp(&v.0));
        let mut merged: Vec<(Rational, Rational)> = Vec::new();
        for (x, y) in pieces {
            if let Some(last) = merged.last_mut() {
                if last.1 == x {
                    last.1 = y;
                    continue;
                }
            }
            merged.push((x, y));
        }
        for (x, y) in merged {
            if let Ok(c) = certify_gap_ctx(ctx, &x, &y) {
                out.push(c);
            }
        }
    }
    out.sort_by(|u, v| u.lo.cmp(&v.lo));
    out
}

/// CSV rows: lo_num,lo_den,hi_num,hi_den,base_depth.
pub fn gaps_csv(gaps: &[GapCertificate]) -> String {
    let mut out = String::from("lo_num,lo_den,hi_num,hi_den,base_depth\n");
    for g in gaps {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            g.lo.numer(),
            g.lo.denom(),
            g.hi.numer(),
            g.hi.denom(),
            g.base_depth
        ));
    }
    out
}

/// Bar chart of certified gaps over the spectral range, one bar per gap.
pub fn gaps_svg(gaps: &[GapCertificate]) -> String {
    let mut c = crate::svg::Canvas::new(800.0, 160.0, (-0.3, 8.3), (0.0, 1.0));
    c.axes();
    for g in gaps {
        c.rect(g.lo.to_f64(), 0.1, g.hi.to_f64(), 0.5, "tomato");
    }
    c.finish()
}

/// Parametric curve λ ↦ (ζ_{k−1}(λ), ζ_k(λ)) for λ in [0, 8], drawn over the
/// shaded escape region |x| > 2, |y| > 2. Portions of the curve leaving the
/// viewport (poles of either ζ) break the polyline.
pub fn escape_svg(seq: &mut Sequences, k: usize, samples: usize) -> String {
    assert!(k >= 3);
    let zk1 = seq.zeta(k - 1);
    let zk = seq.zeta(k);
    let r = 10.0;
    let mut c = crate::svg::Canvas::new(500.0, 500.0, (-r, r), (-r, r));
    for (x1, x2) in [(-r, -2.0), (2.0, r)] {
        for (y1, y2) in [(-r, -2.0), (2.0, r)] {
            c.rect(x1, y1, x2, y2, "#fde2c8");
        }
    }
    c.axes();
    let mut segment: Vec<(f64, f64)> = Vec::new();
    for i in 0..=samples {
        let lam = Rational::from((8 * i as u64, samples as u64));
        let pt = match (rf_eval(&zk1, &lam), rf_eval(&zk, &lam)) {
            (Value::Finite(x), Value::Finite(y)) => {
                let (x, y) = (x.to_f64(), y.to_f64());
                (x.abs() <= r && y.abs() <= r).then_some((x, y))
            }
            _ => None,
        };
        match pt {
            Some(p) => segment.push(p),
            None => {
                if segment.len() > 1 {
                    c.polyline(&segment, "steelblue", 1.0);
                }
                segment.clear();
            }
        }
    }
    if segment.len() > 1 {
        c.polyline(&segment, "steelblue", 1.0);
    }
    c.finish()
}

/// The solution set of ζ_3(λ) = 2 is exactly {0, 4, 4 ± 2√2}: the numerator
/// γ_3 − 2η_3 factors through λ(λ−4)(λ²−8λ+8). Returned as a checked fact.
pub fn zeta3_equals_two_solutions() -> bool {
    let mut seq = Sequences::without_cache();
    let num = seq.gamma(3).sub(&seq.eta(3).scale(&Integer::from(2)));
    let expected = IntPoly::from_i64s(&[0, 1])
        .mul(&IntPoly::from_i64s(&[-4, 1]))
        .mul(&IntPoly::from_i64s(&[8, -8, 1]));
    // Equality up to a constant factor.
    let k = num.leading();
    let j = expected.leading();
    num.scale(&j) == expected.scale(&k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_below_three_is_rejected() {
        let mut seq = Sequences::without_cache();
        let r = certify_gap(&mut seq, 2, &Rational::from(4), &Rational::from(5));
        assert_eq!(r, Err(GapError::DepthTooSmall { got: 2 }));
    }

    #[test]
    fn interval_with_eigenvalue_is_rejected() {
        let mut seq = Sequences::without_cache();
        // λ = 2 is the root of γ_1.
        let r = certify_gap(
            &mut seq,
            3,
            &Rational::from((19, 10)),
            &Rational::from((21, 10)),
        );
        assert_eq!(r, Err(GapError::ContainsEigenvalue { level: 1 }));
    }

    #[test]
    fn enumeration_finds_certified_gaps() {
        let mut seq = Sequences::without_cache();
        let gaps = gap_enumerate(
            &mut seq,
            4,
            &Rational::from(0),
            &Rational::from(8),
            &Rational::from((1, 64)),
        );
        assert!(!gaps.is_empty(), "no gaps certified on [0, 8]");
        for g in &gaps {
            assert!(g.lo < g.hi);
            // Re-certification of each reported gap must succeed.
            assert!(certify_gap(&mut seq, 4, &g.lo, &g.hi).is_ok());
        }
        for w in gaps.windows(2) {
            assert!(w[0].hi < w[1].lo, "coalescing left adjacent pieces");
        }
    }

    #[test]
    fn certified_gap_avoids_higher_levels() {
        // A gap certified at base depth 4 must contain no root of γ_j for
        // the higher levels we can afford to check directly.
        let mut seq = Sequences::without_cache();
        let gaps = gap_enumerate(
            &mut seq,
            4,
            &Rational::from(0),
            &Rational::from(8),
            &Rational::from((1, 64)),
        );
        for j in 5..=8 {
            let gamma = seq.gamma(j);
            let roots = crate::sturm::isolate_roots(&gamma);
            for g in &gaps {
                // A root interval overlapping the gap is not yet a
                // contradiction; only a certified root strictly inside is.
                for r in roots.iter().filter(|r| r.hi > g.lo && r.lo < g.hi) {
                    assert_eq!(
                        sturm_count(&gamma, &g.lo, &g.hi),
                        0,
                        "root of γ_{} near certified gap [{}, {}] ({:?})",
                        j,
                        g.lo,
                        g.hi,
                        (&r.lo, &r.hi)
                    );
                }
            }
        }
    }

    #[test]
    fn escape_sampling_passes_on_certified_gap() {
        let mut seq = Sequences::without_cache();
        let gaps = gap_enumerate(
            &mut seq,
            4,
            &Rational::from(0),
            &Rational::from(8),
            &Rational::from((1, 64)),
        );
        let g = gaps.iter().max_by(|a, b| {
            Rational::from(&a.hi - &a.lo).cmp(&Rational::from(&b.hi - &b.lo))
        });
        let g = g.expect("at least one gap");
        assert!(escape_sampling(&mut seq, g, 20, 30, 1e6, 0xba51));
    }

    #[test]
    fn context_enumeration_matches_direct_certification() {
        let mut seq = Sequences::without_cache();
        let ctx = GapContext::build(&mut seq, 8, 5);
        // Root table is complete: one interval per root of each γ_k.
        let total: usize = (1..=8).map(|k| seq.gamma(k).degree() as usize).sum();
        assert_eq!(ctx.roots.len(), total);
        assert_eq!(
            certify_gap_ctx(&ctx, &Rational::from((19, 10)), &Rational::from((21, 10))),
            Err(GapError::ContainsEigenvalue { level: 1 })
        );
        let gaps = gap_enumerate_ctx(&ctx, &Rational::from((1, 64)));
        assert!(!gaps.is_empty());
        for g in &gaps {
            assert!(g.lo < g.hi);
            // Each reported gap re-certifies through the slow direct route.
            assert!(certify_gap(&mut seq, g.base_depth, &g.lo, &g.hi).is_ok());
            // And is disjoint from every certified root interval.
            for (_, r) in &ctx.roots {
                assert!(r.hi <= g.lo || r.lo >= g.hi);
            }
        }
        for w in gaps.windows(2) {
            assert!(w[0].hi < w[1].lo);
        }
    }

    #[test]
    fn zeta3_level_set() {
        assert!(zeta3_equals_two_solutions());
    }

    #[test]
    fn side_search_near_accumulation() {
        // Eigenvalues accumulate toward λ = 2 (the γ_1 root); a certified
        // band should exist on the right of a nearby higher-level root.
        let mut seq = Sequences::without_cache();
        let two = Rational::from(2);
        let cert = gap_side(&mut seq, 4, &two, Side::Right, &Rational::from(1), 40);
        assert!(cert.is_some(), "no certified band right of 2");
        let cert = cert.unwrap();
        assert!(cert.lo > two);
    }

    #[test]
    fn accumulation_evidence_toward_two() {
        let mut seq = Sequences::without_cache();
        let ctx = GapContext::build(&mut seq, 7, 5);
        assert!(accumulation_evidence(&mut seq, &ctx, 3, &Rational::from(2), 3));
    }

    #[test]
    fn csv_and_svg_shapes() {
        let gaps = vec![GapCertificate {
            lo: Rational::from((9, 2)),
            hi: Rational::from(5),
            base_depth: 4,
        }];
        let csv = gaps_csv(&gaps);
        assert_eq!(csv.lines().next().unwrap(), "lo_num,lo_den,hi_num,hi_den,base_depth");
        assert!(csv.contains("9,2,5,1,4"));
        let svg = gaps_svg(&gaps);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }
}
