//! Extended-exponent floating point.
//!
//! The certification pipeline multiplies quantities like e^{-a/4} at a up to
//! several thousand, far past the f64 exponent range. `Xf` keeps an f64
//! mantissa in ±[0.5, 1) next to an i64 binary exponent, so products and sums
//! keep full f64 relative precision at any magnitude the toolkit reaches.
//! Verdicts (signs, comparisons) are always taken on `Xf` values; conversion
//! back to f64 saturates to 0 or ±inf outside the representable range.

use std::cmp::Ordering;

/// A float with unbounded exponent: `m * 2^e` with `m` in ±[0.5, 1) or zero.
#[derive(Clone, Copy, Debug)]
pub struct Xf {
    m: f64,
    e: i64,
}

/// ln 2 split for exact argument reduction (high part has 21 trailing zero
/// bits, so `n * LN2_HI` is exact for |n| < 2^21).
const LN2_HI: f64 = 6.931_471_803_691_238_164_90e-1;
const LN2_LO: f64 = 1.908_214_929_270_587_700_02e-10;

/// Decompose a finite nonzero f64 into (mantissa in ±[0.5,1), exponent).
fn frexp(v: f64) -> (f64, i64) {
    debug_assert!(v.is_finite() && v != 0.0);
    let bits = v.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    if raw_exp == 0 {
        // Subnormal: renormalize by scaling up first.
        let (m, e) = frexp(v * 2f64.powi(54));
        return (m, e - 54);
    }
    let m = f64::from_bits((bits & !(0x7ff << 52)) | (1022 << 52));
    (m, raw_exp - 1022)
}

impl Xf {
    pub const ZERO: Xf = Xf { m: 0.0, e: 0 };
    pub const ONE: Xf = Xf { m: 0.5, e: 1 };

    fn norm(m: f64, e: i64) -> Xf {
        if m == 0.0 {
            return Xf::ZERO;
        }
        let (mm, de) = frexp(m);
        Xf { m: mm, e: e + de }
    }

    pub fn from_f64(v: f64) -> Xf {
        assert!(v.is_finite(), "Xf::from_f64 on non-finite {v}");
        Xf::norm(v, 0)
    }

    /// e^y with the exponent tracked separately, so the result never over- or
    /// underflows. Full f64 relative accuracy for |y| up to ~1.4e6 (where the
    /// Cody-Waite reduction is exact); beyond that the reduced argument
    /// carries |y| * 2^-53 of rounding, still ample for envelope cutoffs.
    pub fn exp(y: f64) -> Xf {
        assert!(y.is_finite() && y.abs() < 1.0e15, "Xf::exp argument {y} out of range");
        let n = (y / std::f64::consts::LN_2).round();
        let r = (y - n * LN2_HI) - n * LN2_LO;
        Xf::norm(r.exp(), n as i64)
    }

    pub fn to_f64(self) -> f64 {
        if self.m == 0.0 {
            return 0.0;
        }
        if self.e > 1024 {
            return if self.m > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        if self.e < -1073 {
            return if self.m > 0.0 { 0.0 } else { -0.0 };
        }
        // Two-step scaling keeps intermediates representable at the edges.
        let h = self.e / 2;
        (self.m * 2f64.powi(h as i32)) * 2f64.powi((self.e - h) as i32)
    }

    pub fn is_zero(self) -> bool {
        self.m == 0.0
    }

    pub fn is_sign_positive(self) -> bool {
        self.m > 0.0
    }

    pub fn is_sign_negative(self) -> bool {
        self.m < 0.0
    }

    pub fn neg(self) -> Xf {
        Xf { m: -self.m, e: self.e }
    }

    pub fn abs(self) -> Xf {
        Xf { m: self.m.abs(), e: self.e }
    }

    pub fn mul(self, rhs: Xf) -> Xf {
        if self.is_zero() || rhs.is_zero() {
            return Xf::ZERO;
        }
        // |m1*m2| in [0.25, 1): at most one renormalization step.
        let p = self.m * rhs.m;
        let e = self.e + rhs.e;
        if p.abs() < 0.5 {
            Xf { m: p * 2.0, e: e - 1 }
        } else {
            Xf { m: p, e }
        }
    }

    pub fn div(self, rhs: Xf) -> Xf {
        assert!(!rhs.is_zero(), "Xf division by zero");
        if self.is_zero() {
            return Xf::ZERO;
        }
        Xf::norm(self.m / rhs.m, self.e - rhs.e)
    }

    pub fn add(self, rhs: Xf) -> Xf {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (hi, lo) = if self.e >= rhs.e { (self, rhs) } else { (rhs, self) };
        let shift = hi.e - lo.e;
        if shift > 54 {
            return hi;
        }
        Xf::norm(hi.m + lo.m * 2f64.powi(-(shift as i32)), hi.e)
    }

    pub fn sub(self, rhs: Xf) -> Xf {
        self.add(rhs.neg())
    }

    pub fn mul_f64(self, k: f64) -> Xf {
        self.mul(Xf::from_f64(k))
    }

    pub fn recip(self) -> Xf {
        Xf::ONE.div(self)
    }

    /// Exact total order (normalized representations are unique).
    pub fn total_cmp(&self, other: &Xf) -> Ordering {
        let sa = if self.m > 0.0 { 1 } else if self.m < 0.0 { -1 } else { 0 };
        let sb = if other.m > 0.0 { 1 } else if other.m < 0.0 { -1 } else { 0 };
        if sa != sb {
            return sa.cmp(&sb);
        }
        match sa {
            0 => Ordering::Equal,
            1 => (self.e, self.m).partial_cmp(&(other.e, other.m)).unwrap(),
            _ => (other.e, other.m).partial_cmp(&(self.e, self.m)).unwrap(),
        }
    }

    pub fn min(self, other: Xf) -> Xf {
        if self.total_cmp(&other) == Ordering::Greater { other } else { self }
    }

    pub fn max(self, other: Xf) -> Xf {
        if self.total_cmp(&other) == Ordering::Less { other } else { self }
    }

    /// Mantissa and binary exponent, for tests and diagnostics.
    pub fn parts(self) -> (f64, i64) {
        (self.m, self.e)
    }
}

impl From<f64> for Xf {
    fn from(v: f64) -> Xf {
        Xf::from_f64(v)
    }
}

impl PartialEq for Xf {
    fn eq(&self, other: &Xf) -> bool {
        self.total_cmp(other) == Ordering::Equal
    }
}

impl Eq for Xf {}

impl PartialOrd for Xf {
    fn partial_cmp(&self, other: &Xf) -> Option<Ordering> {
        Some(self.total_cmp(other))
    }
}

impl Ord for Xf {
    fn cmp(&self, other: &Xf) -> Ordering {
        self.total_cmp(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) {
        assert!(
            (a - b).abs() <= rel * b.abs().max(a.abs()),
            "{a} vs {b} (rel {rel})"
        );
    }

    #[test]
    fn roundtrip_and_norm() {
        for &v in &[1.0, -1.0, 0.5, 3.25, 1e300, -1e-300, 1e-320, f64::MIN_POSITIVE] {
            let x = Xf::from_f64(v);
            assert_eq!(x.to_f64(), v, "roundtrip {v}");
            let (m, _) = x.parts();
            assert!((0.5..1.0).contains(&m.abs()), "normalized {v}");
        }
        assert_eq!(Xf::from_f64(0.0).to_f64(), 0.0);
        assert_eq!(Xf::ONE.to_f64(), 1.0);
    }

    #[test]
    fn arithmetic_matches_f64_in_range() {
        let vals = [3.7, -0.002, 1.5e8, -2.25, 9.9e-7, 123.456];
        for &a in &vals {
            for &b in &vals {
                let (xa, xb) = (Xf::from_f64(a), Xf::from_f64(b));
                close(xa.mul(xb).to_f64(), a * b, 1e-15);
                close(xa.add(xb).to_f64(), a + b, 1e-14);
                close(xa.sub(xb).to_f64(), a - b, 1e-14);
                close(xa.div(xb).to_f64(), a / b, 1e-15);
            }
        }
    }

    #[test]
    fn add_exact_cases() {
        // Alignment is exact for shifts within the mantissa width.
        let a = Xf::from_f64(1.0);
        let b = Xf::from_f64(2f64.powi(-50));
        assert_eq!(a.add(b).to_f64(), 1.0 + 2f64.powi(-50));
        // Far-apart magnitudes collapse to the larger operand.
        let tiny = Xf { m: 0.5, e: -4000 };
        assert_eq!(a.add(tiny).to_f64(), 1.0);
        // Total cancellation.
        assert!(a.sub(a).is_zero());
    }

    #[test]
    fn exp_matches_std_in_range() {
        for &y in &[0.0, 1.0, -1.0, 10.0, -30.5, 700.0, -700.0, 0.0625] {
            close(Xf::exp(y).to_f64(), y.exp(), 1e-14);
        }
    }

    #[test]
    fn exp_extreme_magnitudes() {
        // e^{-1250}: mantissa and binary exponent from a 60-digit evaluation
        // (1250/ln 2 = 1803.36...; e^{-1250} = 0.60632...e-542).
        let x = Xf::exp(-1250.0);
        let (m, e) = x.parts();
        assert_eq!(e, -1803);
        close(m, 0.774_425_782_219_516_57, 1e-13);
        assert_eq!(x.to_f64(), 0.0); // saturates: below f64 range

        // Huge positive arguments saturate to +inf on conversion only.
        let y = Xf::exp(1250.0);
        assert!(y.to_f64().is_infinite());
        // ...but stay exactly invertible in Xf arithmetic.
        close(x.mul(y).to_f64(), 1.0, 1e-12);
    }

    #[test]
    fn exp_products_at_depth() {
        // e^{-800} * e^{-450} == e^{-1250} to full relative precision.
        let p = Xf::exp(-800.0).mul(Xf::exp(-450.0));
        let q = Xf::exp(-1250.0);
        let d = p.sub(q).abs();
        assert!(d.total_cmp(&q.abs().mul_f64(1e-13)) == Ordering::Less);
    }

    #[test]
    fn ordering_is_total_and_sign_aware() {
        let neg_big = Xf::exp(500.0).neg();
        let neg_small = Xf::exp(-500.0).neg();
        let pos_small = Xf::exp(-500.0);
        let pos_big = Xf::exp(500.0);
        let mut v = vec![pos_big, neg_big, Xf::ZERO, pos_small, neg_small];
        v.sort();
        assert_eq!(v[0], neg_big);
        assert_eq!(v[1], neg_small);
        assert!(v[2].is_zero());
        assert_eq!(v[3], pos_small);
        assert_eq!(v[4], pos_big);
    }

    #[test]
    fn saturating_to_f64() {
        assert_eq!((Xf { m: 0.5, e: 2000 }).to_f64(), f64::INFINITY);
        assert_eq!((Xf { m: -0.5, e: 2000 }).to_f64(), f64::NEG_INFINITY);
        assert_eq!((Xf { m: 0.5, e: -2000 }).to_f64(), 0.0);
        // Near the subnormal edge conversion still lands on the right value.
        let x = Xf { m: 0.5, e: -1070 };
        assert_eq!(x.to_f64(), 2f64.powi(-1071));
    }
}
