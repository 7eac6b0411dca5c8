//! Small word-prime arithmetic used for fast one-sided certificates:
//! a gcd that is 1 modulo a prime not dividing the leading coefficients is
//! proof of coprimality over the rationals (degree can only drop mod p).

use crate::poly::IntPoly;
use rug::ops::RemRounding;
use rug::Integer;

pub const PRIMES: [u64; 4] = [
    (1 << 61) - 1, // Mersenne
    2_305_843_009_213_693_907, // near 2^61
    2_305_843_009_213_693_669,
    2_305_843_009_213_693_487,
];

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

pub fn reduce_poly(f: &IntPoly, p: u64) -> Vec<u64> {
    let pp = Integer::from(p);
    let mut out: Vec<u64> = f
        .coeffs()
        .iter()
        .map(|c| {
            let r = c.clone().rem_euc(&pp);
            r.to_u64().expect("reduced")
        })
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Monic gcd of f and g in GF(p)[x]; empty vec means gcd comes from the zero
/// polynomial pair.
pub fn gcd_mod_p(mut f: Vec<u64>, mut g: Vec<u64>, p: u64) -> Vec<u64> {
    while !g.is_empty() {
        f = rem_mod_p(&f, &g, p);
        std::mem::swap(&mut f, &mut g);
    }
    if let Some(&lead) = f.last() {
        let inv = invmod(lead, p);
        for c in f.iter_mut() {
            *c = mulmod(*c, inv, p);
        }
    }
    f
}

fn rem_mod_p(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = f.to_vec();
    let dg = g.len() - 1;
    let inv = invmod(*g.last().unwrap(), p);
    while r.len() > dg {
        let top = *r.last().unwrap();
        let k = r.len() - 1 - dg;
        if top != 0 {
            let q = mulmod(top, inv, p);
            for (i, &gc) in g.iter().enumerate() {
                let idx = k + i;
                let sub = mulmod(q, gc, p);
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
        while r.last() == Some(&0) {
            r.pop();
        }
        if r.len() <= dg {
            break;
        }
    }
    r
}

/// Proof that gcd(f, g) = 1 over ℚ: constant gcd modulo any prime that keeps
/// either leading coefficient nonzero suffices. Returns false only when no
/// listed prime yields a constant gcd (inconclusive).
pub fn coprime_certificate(f: &IntPoly, g: &IntPoly) -> bool {
    if f.is_zero() || g.is_zero() {
        return false;
    }
    for &p in &PRIMES {
        let fp = reduce_poly(f, p);
        let gp = reduce_poly(g, p);
        if fp.len() != f.coeffs().len() && gp.len() != g.coeffs().len() {
            continue; // both leading coefficients vanished mod p
        }
        if fp.is_empty() || gp.is_empty() {
            continue;
        }
        let d = gcd_mod_p(fp, gp, p);
        if d.len() == 1 {
            return true;
        }
    }
    false
}

/// Proof of squarefreeness over ℚ: gcd(f, f') constant mod a good prime.
pub fn squarefree_certificate(f: &IntPoly) -> bool {
    coprime_certificate(f, &f.derivative())
}

fn eval_mod_p(f: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in f.iter().rev() {
        acc = (mulmod(acc, x, p) + c) % p;
    }
    acc
}

/// Randomized identity check q·d == n (used as a guard on a fast-path whose
/// result is otherwise verified by downstream exact identities). Evaluates at
/// fixed points over several word primes.
pub fn probable_eq_product(q: &IntPoly, d: &IntPoly, n: &IntPoly) -> bool {
    for &p in &PRIMES {
        let (qp, dp, np) = (reduce_poly(q, p), reduce_poly(d, p), reduce_poly(n, p));
        for x in [2u64, 12345, 987_654_321] {
            let lhs = mulmod(eval_mod_p(&qp, x, p), eval_mod_p(&dp, x, p), p);
            if lhs != eval_mod_p(&np, x, p) {
                return false;
            }
        }
    }
    true
}
