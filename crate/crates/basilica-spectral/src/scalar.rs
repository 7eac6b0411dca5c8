//! Coefficient abstraction for polynomials.
//!
//! The polynomial layer is generic over an exact integral-domain scalar. The
//! default backend is GMP's `rug::Integer` (needed for the level-14 workloads);
//! `i64` is also supported for small exact computations and tests.

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Exact integer-like coefficient ring.
///
/// `convolve` is a hook so a backend can override the generic (schoolbook /
/// Karatsuba) product with something faster; the GMP backend uses Kronecker
/// substitution, which is what makes degree-20000 products practical.
pub trait Coeff:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + AddAssign<Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// -1, 0, or 1.
    fn signum(&self) -> i32;
    /// Exact quotient; panics if `d` does not divide `self`.
    fn exact_div(&self, d: &Self) -> Self;
    fn gcd(&self, other: &Self) -> Self;
    fn to_decimal(&self) -> String;
    fn from_decimal(s: &str) -> Option<Self>;
    /// Bits in |self|; 0 for zero. Used for size bounds (Kronecker packing).
    fn bit_len(&self) -> u64;

    /// Full product of two coefficient slices (convolution), length a+b-1.
    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        convolve_schoolbook(a, b)
    }
}

pub fn convolve_schoolbook<T: Coeff>(a: &[T], b: &[T]) -> Vec<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let prod = ai.clone() * bj;
            out[i + j] += prod;
        }
    }
    out
}

impl Coeff for i64 {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn signum(&self) -> i32 {
        i64::signum(*self) as i32
    }
    fn exact_div(&self, d: &Self) -> Self {
        debug_assert_eq!(self % d, 0);
        self / d
    }
    fn gcd(&self, other: &Self) -> Self {
        num_integer_gcd(self.unsigned_abs(), other.unsigned_abs()) as i64
    }
    fn to_decimal(&self) -> String {
        self.to_string()
    }
    fn from_decimal(s: &str) -> Option<Self> {
        s.parse().ok()
    }
    fn bit_len(&self) -> u64 {
        64 - self.unsigned_abs().leading_zeros() as u64
    }
}

fn num_integer_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Coeff for rug::Integer {
    fn zero() -> Self {
        rug::Integer::new()
    }
    fn one() -> Self {
        rug::Integer::from(1)
    }
    fn from_i64(v: i64) -> Self {
        rug::Integer::from(v)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn signum(&self) -> i32 {
        self.cmp0() as i32
    }
    fn exact_div(&self, d: &Self) -> Self {
        debug_assert!(self.is_divisible(d));
        rug::Integer::from(self.div_exact_ref(d))
    }
    fn gcd(&self, other: &Self) -> Self {
        rug::Integer::from(self.gcd_ref(other))
    }
    fn to_decimal(&self) -> String {
        self.to_string()
    }
    fn from_decimal(s: &str) -> Option<Self> {
        rug::Integer::parse(s).ok().map(rug::Integer::from)
    }
    fn bit_len(&self) -> u64 {
        if *self == 0 {
            0
        } else {
            self.significant_bits() as u64
        }
    }

    /// Kronecker substitution: pack both operands at x = 2^B, take one GMP
    /// integer product, unpack balanced base-2^B digits. Subquadratic because
    /// GMP multiplication is.
    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let n = a.len() + b.len() - 1;
        if a.len().min(b.len()) < 16 {
            return convolve_schoolbook(a, b);
        }
        let abits = a.iter().map(|c| c.bit_len()).max().unwrap_or(0);
        let bbits = b.iter().map(|c| c.bit_len()).max().unwrap_or(0);
        let min_len = a.len().min(b.len()) as u64;
        // |result coeff| < 2^(abits+bbits) * min_len; +2 for sign headroom.
        let bpack = abits + bbits + 64 - min_len.leading_zeros() as u64 + 2;
        let pa = kronecker_pack(a, bpack);
        let pb = kronecker_pack(b, bpack);
        let prod = pa * pb;
        kronecker_unpack(prod, bpack, n)
    }
}

fn kronecker_pack(coeffs: &[rug::Integer], bpack: u64) -> rug::Integer {
    let mut acc = rug::Integer::new();
    for c in coeffs.iter().rev() {
        acc <<= bpack as u32;
        acc += c;
    }
    acc
}

/// Decode `n` balanced base-2^bpack digits from a packed integer.
pub fn unpack_signed(v: rug::Integer, bpack: u64, n: usize) -> Vec<rug::Integer> {
    kronecker_unpack(v, bpack, n)
}

fn kronecker_unpack(mut v: rug::Integer, bpack: u64, n: usize) -> Vec<rug::Integer> {
    let modulus = rug::Integer::from(1) << bpack as u32;
    let half = rug::Integer::from(&modulus >> 1);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        // Balanced digit in [-2^(B-1), 2^(B-1)).
        let mut digit = rug::Integer::from(&v & rug::Integer::from(&modulus - 1));
        if digit >= half {
            digit -= &modulus;
        }
        v -= &digit;
        v >>= bpack as u32;
        out.push(digit);
    }
    debug_assert_eq!(v, 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Integer;

    #[test]
    fn kronecker_matches_schoolbook_signed() {
        let a: Vec<Integer> = (0..40).map(|i| Integer::from((i * 7919 % 97) - 48)).collect();
        let b: Vec<Integer> = (0..33).map(|i| Integer::from((i * 104729 % 89) - 44)).collect();
        assert_eq!(Integer::convolve(&a, &b), convolve_schoolbook(&a, &b));
    }

    #[test]
    fn kronecker_big_coefficients() {
        let big = Integer::from(1) << 300u32;
        let a: Vec<Integer> = (0..20).map(|i| Integer::from(&big * Integer::from(i - 10))).collect();
        let b: Vec<Integer> = (0..20).map(|i| Integer::from(&big * Integer::from(7 - i))).collect();
        assert_eq!(Integer::convolve(&a, &b), convolve_schoolbook(&a, &b));
    }
}
