//! Exact real-root counting and isolation for integer polynomials.
//!
//! Counting uses a signed subresultant sequence evaluated in a streaming
//! fashion: only the two most recent polynomials are kept, and the signs at
//! the two endpoints are recorded as each member of the sequence is produced.
//! For large polynomials a cardinality argument replaces the chain entirely:
//! if `degree` disjoint intervals each show a sign change, they isolate all
//! roots.

use crate::poly::IntPoly;
use rug::{Integer, Rational};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub sign_lo: i32,
    pub sign_hi: i32,
}

impl IsolatingInterval {
    pub fn width(&self) -> Rational {
        Rational::from(&self.hi - &self.lo)
    }

    pub fn midpoint(&self) -> Rational {
        Rational::from(&self.hi + &self.lo) / 2u32
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo <= *x && *x <= self.hi
    }
}

/// Number of sign variations in a sequence, ignoring zeros.
fn variations(signs: &[i32]) -> usize {
    let mut count = 0;
    let mut last = 0;
    for &s in signs {
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Count of distinct real roots of the squarefree part of `f` in (lo, hi].
///
/// Runs a Sturm sequence built from the negated-remainder Euclidean chain,
/// computed with primitive pseudo-remainders to keep coefficients bounded.
/// Only endpoint signs are stored, never the whole chain.
pub fn sturm_count(f: &IntPoly, lo: &Rational, hi: &Rational) -> usize {
    assert!(lo < hi, "interval must be nonempty");
    let f = f.squarefree_part();
    if f.degree() <= 0 {
        return 0;
    }
    let fp = f.derivative();
    let mut signs_lo = vec![f.sign_at(lo), fp.sign_at(lo)];
    let mut signs_hi = vec![f.sign_at(hi), fp.sign_at(hi)];
    let mut prev = f;
    let mut cur = fp.primitive_part();
    while cur.degree() > 0 {
        // Negated primitive pseudo-remainder. The pseudo-remainder multiplies
        // prev by a positive even power of cur's leading coefficient when the
        // degree drop is odd; to keep Sturm's sign convention exact, multiply
        // by the leading coefficient once more when the implied power is odd.
        let d = prev.degree() - cur.degree();
        let lead = cur.leading();
        let mut rem = prev.pseudo_rem(&cur);
        // pseudo_rem uses multiplier lead^(d+1); odd d+1 with negative lead
        // flips the sign of the true remainder, so compensate.
        if (d + 1) % 2 == 1 && lead.cmp0() == Ordering::Less {
            rem = rem.neg();
        }
        let rem = rem.neg();
        if rem.is_zero() {
            break;
        }
        let rem = {
            let content = rem.content();
            // primitive_part preserves sign, dividing by |content| only.
            let mut r = rem;
            if content != 1u32 {
                r = r.exact_div(&IntPoly::constant(content)).unwrap();
            }
            r
        };
        signs_lo.push(rem.sign_at(lo));
        signs_hi.push(rem.sign_at(hi));
        prev = cur;
        cur = rem;
    }
    variations(&signs_lo) - variations(&signs_hi)
}

/// Total number of distinct real roots of `f`.
pub fn real_root_count(f: &IntPoly) -> usize {
    let b = root_bound(f);
    sturm_count(f, &Rational::from(-&b), &Rational::from(b))
}

/// Cauchy-style bound: all real roots lie in (-b, b).
pub fn root_bound(f: &IntPoly) -> Rational {
    let lead = f.leading().abs();
    let max = f
        .coeffs()
        .iter()
        .map(|c| c.clone().abs())
        .max()
        .unwrap_or_else(|| Integer::from(0));
    Rational::from((max, lead)) + 1u32
}

/// Isolate all distinct real roots of `f` by Sturm-count bisection, returning
/// disjoint intervals in increasing order. Roots landing exactly on a
/// bisection point are returned as width-zero intervals.
pub fn isolate_roots(f: &IntPoly) -> Vec<IsolatingInterval> {
    let f = f.squarefree_part();
    if f.degree() <= 0 {
        return Vec::new();
    }
    let b = root_bound(&f);
    let mut out = Vec::new();
    let mut stack = vec![(Rational::from(-&b), Rational::from(b))];
    while let Some((lo, hi)) = stack.pop() {
        let count = sturm_count(&f, &lo, &hi);
        match count {
            0 => {}
            1 => {
                // Sturm counts roots in (lo, hi]; narrow until signs at the
                // open endpoints certify the root strictly inside, or a
                // midpoint hits the root exactly.
                out.push(narrow_to_sign_change(&f, lo, hi));
            }
            _ => {
                let mid = Rational::from(&lo + &hi) / 2u32;
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Given (lo, hi] containing exactly one root of squarefree `f`, produce an
/// interval with nonzero endpoint signs (or an exact width-zero hit).
fn narrow_to_sign_change(f: &IntPoly, mut lo: Rational, mut hi: Rational) -> IsolatingInterval {
    let mut sign_hi = f.sign_at(&hi);
    if sign_hi == 0 {
        // The root is exactly hi.
        return IsolatingInterval { lo: hi.clone(), hi, sign_lo: 0, sign_hi: 0 };
    }
    let mut sign_lo = f.sign_at(&lo);
    while sign_lo == 0 || sign_lo == sign_hi {
        // lo is a root of f (excluded from (lo, hi]) or the sign change
        // hides further in; bisect toward the root.
        let mid = Rational::from(&lo + &hi) / 2u32;
        let sm = f.sign_at(&mid);
        if sm == 0 {
            return IsolatingInterval { lo: mid.clone(), hi: mid, sign_lo: 0, sign_hi: 0 };
        }
        if sm == sign_hi {
            hi = mid;
            sign_hi = sm;
        } else {
            lo = mid;
            sign_lo = sm;
        }
    }
    IsolatingInterval { lo, hi, sign_lo, sign_hi }
}

/// Halve an isolating interval `steps` times by exact sign bisection.
/// Requires nonzero endpoint signs (width-zero intervals pass through).
pub fn refine(f: &IntPoly, iv: &IsolatingInterval, steps: u32) -> IsolatingInterval {
    let mut iv = iv.clone();
    if iv.sign_lo == 0 || iv.sign_hi == 0 {
        return iv;
    }
    for _ in 0..steps {
        let mid = iv.midpoint();
        let sm = f.certified_sign(&mid);
        if sm == 0 {
            return IsolatingInterval { lo: mid.clone(), hi: mid, sign_lo: 0, sign_hi: 0 };
        }
        if sm == iv.sign_lo {
            iv.lo = mid;
        } else {
            iv.hi = mid;
        }
    }
    iv
}

/// Refine until the interval width is at most `eps`.
pub fn refine_to_width(f: &IntPoly, iv: &IsolatingInterval, eps: &Rational) -> IsolatingInterval {
    let mut iv = iv.clone();
    while iv.width() > *eps {
        let r = refine(f, &iv, 1);
        if r == iv {
            break;
        }
        iv = r;
    }
    iv
}

// --- cardinality-certificate isolation for big polynomials ---

const PROBES: u32 = 8;

struct Leaf {
    /// Split priority: lowest log2 |f| over interior float probes, minus
    /// 1.5·log2(width). Low values mean unresolved roots may be nearby. The
    /// width term guarantees progress: near a single already-certified root
    /// the probe minimum falls by about one per halving, so without the term
    /// such a neighbor leaf would sink forever and starve leaves that still
    /// hide a close root pair; with weight above 1 every rootless leaf's
    /// score eventually rises instead.
    score: f64,
    /// Index (1..PROBES) of a probe adjacent to a float-detected sign change,
    /// used as the preferred split point.
    split_hint: Option<u32>,
    lo: Rational,
    hi: Rational,
    sign_lo: i32,
    sign_hi: i32,
}

impl Leaf {
    fn has_change(&self) -> bool {
        self.sign_lo != self.sign_hi
    }
}

impl PartialEq for Leaf {
    fn eq(&self, other: &Self) -> bool {
        self.score == other.score
    }
}
impl Eq for Leaf {}
impl PartialOrd for Leaf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Leaf {
    fn cmp(&self, other: &Self) -> Ordering {
        // Max-heap pops the lowest score first.
        other.score.partial_cmp(&self.score).unwrap_or(Ordering::Equal)
    }
}

/// Isolate all real roots of `f` under the hypothesis that every root is real
/// and simple. Success is self-certifying: `degree(f)` pairwise disjoint
/// intervals with exact opposite endpoint signs account for every root.
/// Returns `None` when the split budget runs out, which for a polynomial
/// satisfying the hypothesis means the budget was too small (and otherwise
/// means the hypothesis is false).
///
/// All certifying endpoint signs are exact integer computations. The
/// extended-exponent float probes only choose which interval to split next
/// and where, so float error can cost time but never correctness.
pub fn isolate_all_real(f: &IntPoly, max_rounds: usize) -> Option<Vec<IsolatingInterval>> {
    let b = root_bound(f);
    let lo = Rational::from(-&b);
    let hi = Rational::from(b);
    isolate_all_real_in(f, lo, hi, max_rounds)
}

/// Like [`isolate_all_real`], but restricted to a caller-supplied interval
/// known to contain every real root of `f`, with `f` nonzero at both
/// endpoints. Succeeds once the number of certified sign changes equals the
/// degree, which also proves the roots are simple.
pub fn isolate_all_real_in(
    f: &IntPoly,
    lo: Rational,
    hi: Rational,
    max_rounds: usize,
) -> Option<Vec<IsolatingInterval>> {
    let d = f.degree() as usize;
    assert!(d >= 1);
    let fc = crate::poly::EvalCache::new(f);
    let df = f.derivative();
    let dc = crate::poly::EvalCache::new(&df);
    let slo = fc.certified_sign(&lo);
    let shi = fc.certified_sign(&hi);
    assert!(slo != 0 && shi != 0, "search interval endpoints are not roots");

    let mut heap: BinaryHeap<Leaf> = BinaryHeap::new();
    let mut nchanges = 0usize;
    push_leaf(&fc, &dc, &mut heap, &mut nchanges, lo, hi, slo, shi);
    let mut rounds = 0;
    while nchanges < d {
        rounds += 1;
        if rounds > max_rounds {
            if std::env::var_os("STURM_DEBUG").is_some() {
                let mut got: Vec<_> = heap.iter().filter(|l| l.has_change()).collect();
                got.sort_by(|a, b| a.lo.cmp(&b.lo));
                for l in got {
                    eprintln!("sturm: certified [{:.9}, {:.9}]", l.lo.to_f64(), l.hi.to_f64());
                }
            }
            return None;
        }
        let leaf = heap.pop()?;
        if rounds % 100_000 == 0 && std::env::var_os("STURM_DEBUG").is_some() {
            let w = Rational::from(&leaf.hi - &leaf.lo).to_f64();
            eprintln!(
                "sturm: round {rounds} nchanges {nchanges} heap {} leaf score {:.2} w {:.3e} change {} hint {:?} lo {:.6}",
                heap.len(), leaf.score, w, leaf.has_change(), leaf.split_hint, leaf.lo.to_f64()
            );
        }
        let k = leaf.split_hint.unwrap_or(PROBES / 2);
        let mut mid = probe_point(&leaf.lo, &leaf.hi, k);
        let mut smid = fc.certified_sign(&mid);
        while smid == 0 {
            // Exact root at the split point: move it off the root.
            mid = Rational::from(&leaf.lo + &mid) / 2u32;
            smid = fc.certified_sign(&mid);
        }
        if leaf.has_change() {
            nchanges -= 1;
        }
        push_leaf(&fc, &dc, &mut heap, &mut nchanges, leaf.lo, mid.clone(), leaf.sign_lo, smid);
        push_leaf(&fc, &dc, &mut heap, &mut nchanges, mid, leaf.hi, smid, leaf.sign_hi);
    }
    if std::env::var_os("STURM_DEBUG").is_some() {
        eprintln!("sturm: deg {d} isolated in {rounds} rounds");
    }
    let mut found: Vec<IsolatingInterval> = heap
        .into_iter()
        .filter(|l| l.has_change())
        .map(|l| IsolatingInterval {
            lo: l.lo,
            hi: l.hi,
            sign_lo: l.sign_lo,
            sign_hi: l.sign_hi,
        })
        .collect();
    assert_eq!(found.len(), d, "sign-change count reached the degree");
    found.sort_by(|a, b| a.lo.cmp(&b.lo));
    Some(found)
}

fn probe_point(lo: &Rational, hi: &Rational, k: u32) -> Rational {
    let w = Rational::from(hi - lo);
    lo.clone() + w * Rational::from((k, PROBES))
}

// Probe evaluations resolve their sign by escalating precision up to this
// many bits; deeper cancellation than that is treated as "at a root".
const PROBE_PREC: u32 = 4096;

fn push_leaf(
    f: &crate::poly::EvalCache,
    df: &crate::poly::EvalCache,
    heap: &mut BinaryHeap<Leaf>,
    nchanges: &mut usize,
    lo: Rational,
    hi: Rational,
    sign_lo: i32,
    sign_hi: i32,
) {
    let mut dip = f64::INFINITY;
    let width_log2 = {
        let w = Rational::from(&hi - &lo);
        crate::floatexp::FloatExp::from_integer(w.numer()).log2_abs()
            - crate::floatexp::FloatExp::from_integer(w.denom()).log2_abs()
    };
    let mut split_hint = None;
    let mut prev_sign = sign_lo;
    let mut seen_changes = 0u32;
    // Precision has to at least pin down the probe position within the
    // leaf: root pairs contract quadratically level over level and quickly
    // drop below f64 resolution, where rounded probes land across a root
    // and report poisoned signs.
    let min_prec = if width_log2 < -40.0 { (64.0 - width_log2) as u32 } else { 0 };
    for k in 1..PROBES {
        let x = probe_point(&lo, &hi, k);
        let (s, vl) = f.eval_log2_signed(&x, min_prec, PROBE_PREC);
        let (_, dl) = df.eval_log2_signed(&x, min_prec, PROBE_PREC);
        // log2 of the Newton step |f/f'| relative to the leaf width. For a
        // polynomial with all roots real, |f/f'| never exceeds the distance
        // to the nearest root, so a leaf containing a root always has a
        // probe scoring about -3 or lower while rootless leaves drift up as
        // they shrink. This keeps priorities comparable across regions
        // whose coefficient-scale conditioning differs by thousands of bits.
        dip = dip.min(vl - dl - width_log2);
        if s != 0 && prev_sign != 0 && s != prev_sign {
            seen_changes += 1;
            if split_hint.is_none() {
                split_hint = Some(k);
            }
        }
        if s != 0 {
            prev_sign = s;
        }
    }
    if prev_sign != 0 && sign_hi != 0 && prev_sign != sign_hi {
        seen_changes += 1;
    }
    let has_change = sign_lo != sign_hi;
    if has_change {
        *nchanges += 1;
        // The certified change is expected; a hint is only interesting when
        // the probes reveal more structure than the one change.
        if seen_changes <= 1 {
            split_hint = None;
        }
    }
    let mut score = dip;
    // Probes showing more crossings than the endpoint certificate accounts
    // for are direct evidence of extra roots; such leaves outrank everything.
    let accounted = u32::from(has_change);
    if seen_changes > accounted {
        score -= 1e4 * f64::from(seen_changes - accounted);
    }
    heap.push(Leaf { score, split_hint, lo, hi, sign_lo, sign_hi });
}

/// Isolation tuned to the spectral factor family: every real root lies in
/// (0, 8] and the real-root count equals the degree. Small degrees go
/// through the classic chain; large ones through the cardinality search,
/// whose success is itself the completeness certificate.
pub fn isolate_spectral_roots(f: &IntPoly) -> Vec<IsolatingInterval> {
    if f.degree() <= 80 {
        return isolate_roots(f);
    }
    let lo = Rational::new();
    assert!(f.sign_at(&lo) != 0, "polynomial vanishes at 0");
    let eight = Rational::from(8);
    let hi = if f.sign_at(&eight) != 0 { eight } else { Rational::from(9) };
    let iv = isolate_all_real_in(f, lo, hi, 100_000_000)
        .expect("root isolation did not converge");
    assert_eq!(iv.len(), f.degree() as usize, "missing real roots");
    iv
}

/// Ladder plot of isolated roots: one row per level, a tick at each root
/// midpoint. Rows are drawn bottom-up in the given order.
pub fn spectrum_svg(rows: &[(usize, Vec<IsolatingInterval>)]) -> String {
    let nrows = rows.len().max(1) as f64;
    let mut c = crate::svg::Canvas::new(800.0, 60.0 + 30.0 * nrows, (-0.3, 8.3), (0.0, nrows));
    c.axes();
    for (i, (level, ivs)) in rows.iter().enumerate() {
        let y = i as f64 + 0.5;
        c.text(-0.25, y, &format!("{}", level), 10.0);
        for iv in ivs {
            let x = iv.midpoint().to_f64();
            c.line(x, y - 0.35, x, y + 0.35, "black", 1.0);
        }
    }
    c.finish()
}
