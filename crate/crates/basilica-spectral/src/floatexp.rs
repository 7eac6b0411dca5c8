//! Extended-exponent floating point: an f64 mantissa with an explicit i64
//! exponent, so Horner evaluation of degree-10000 polynomials with
//! 30000-bit coefficients cannot overflow. Heuristic precision only — every
//! certified sign in this crate is recomputed in exact arithmetic.

#[derive(Clone, Copy, Debug)]
pub struct FloatExp {
    /// Mantissa normalized into [1, 2) (or 0); sign carried on the mantissa.
    m: f64,
    e: i64,
}

impl FloatExp {
    pub fn zero() -> Self {
        FloatExp { m: 0.0, e: 0 }
    }

    pub fn from_f64(x: f64) -> Self {
        FloatExp { m: x, e: 0 }.normalized()
    }

    pub fn from_integer(v: &rug::Integer) -> Self {
        if *v == 0 {
            return Self::zero();
        }
        // Top 64 bits as mantissa, remember the shift.
        let bits = v.significant_bits() as i64;
        let shift = (bits - 53).max(0);
        let top = rug::Integer::from(v >> shift as u32);
        FloatExp { m: top.to_f64(), e: shift }.normalized()
    }

    fn normalized(self) -> Self {
        if self.m == 0.0 || !self.m.is_finite() {
            return FloatExp { m: self.m, e: 0 };
        }
        let (mant, exp) = frexp(self.m);
        FloatExp { m: mant * 2.0, e: self.e + exp as i64 - 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.m == 0.0
    }

    pub fn signum(&self) -> i32 {
        if self.m > 0.0 {
            1
        } else if self.m < 0.0 {
            -1
        } else {
            0
        }
    }

    pub fn abs(&self) -> Self {
        FloatExp { m: self.m.abs(), e: self.e }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        FloatExp { m: self.m * rhs.m, e: self.e + rhs.e }.normalized()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return *rhs;
        }
        if rhs.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.e >= rhs.e { (self, rhs) } else { (rhs, self) };
        let shift = hi.e - lo.e;
        if shift > 1100 {
            return *hi;
        }
        FloatExp { m: hi.m + lo.m * (-(shift as f64)).exp2(), e: hi.e }.normalized()
    }

    /// log2 |x|; very negative for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.m.abs().log2() + self.e as f64
    }
}

fn frexp(x: f64) -> (f64, i32) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let bits = x.to_bits();
    let exp_field = ((bits >> 52) & 0x7ff) as i32;
    if exp_field == 0 {
        // Subnormal: scale up first.
        let scaled = x * 2f64.powi(64);
        let (m, e) = frexp(scaled);
        return (m, e - 64);
    }
    let e = exp_field - 1022;
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (m, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_small() {
        let x = FloatExp::from_f64(-3.75);
        assert_eq!(x.signum(), -1);
        assert!((x.log2_abs() - 3.75f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn big_integer_magnitude() {
        let v = rug::Integer::from(1) << 5000u32;
        let x = FloatExp::from_integer(&v);
        assert!((x.log2_abs() - 5000.0).abs() < 1e-6);
    }

    #[test]
    fn add_mixed_scales() {
        let a = FloatExp::from_f64(1.0);
        let b = FloatExp::from_integer(&(rug::Integer::from(1) << 200u32));
        let s = a.add(&b);
        assert!((s.log2_abs() - 200.0).abs() < 1e-9);
    }
}
