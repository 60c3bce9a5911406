//! Exact scalars of the form `((a + b√2) + i(c + d√2)) / 2^k`.
//!
//! This ring contains every graph-state amplitude, the X/Y/Z eigenvector
//! entries, and all products and sums of them, so probabilities, traces and
//! orthogonality tests are decided without rounding.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExactScalar {
    a: i128,
    b: i128,
    c: i128,
    d: i128,
    k: u32,
}

impl ExactScalar {
    pub const ZERO: Self = Self::raw(0, 0, 0, 0, 0);
    pub const ONE: Self = Self::raw(1, 0, 0, 0, 0);
    pub const I: Self = Self::raw(0, 0, 1, 0, 0);

    const fn raw(a: i128, b: i128, c: i128, d: i128, k: u32) -> Self {
        Self { a, b, c, d, k }
    }

    /// `(a + b√2 + i(c + d√2)) / 2^k`, normalised.
    pub fn new(a: i128, b: i128, c: i128, d: i128, k: u32) -> Self {
        Self::raw(a, b, c, d, k).normalized()
    }

    pub fn from_int(v: i128) -> Self {
        Self::raw(v, 0, 0, 0, 0)
    }

    /// `v / 2^k`.
    pub fn dyadic(v: i128, k: u32) -> Self {
        Self::new(v, 0, 0, 0, k)
    }

    /// `2^(-h/2)`.
    pub fn inv_sqrt2_pow(h: u32) -> Self {
        if h.is_multiple_of(2) {
            Self::dyadic(1, h / 2)
        } else {
            // 2^(-h/2) = √2 / 2^((h+1)/2)
            Self::new(0, 1, 0, 0, h.div_ceil(2))
        }
    }

    pub fn sqrt2() -> Self {
        Self::raw(0, 1, 0, 0, 0)
    }

    /// Components `(a, b, c, d, k)`.
    pub fn parts(&self) -> (i128, i128, i128, i128, u32) {
        (self.a, self.b, self.c, self.d, self.k)
    }

    fn normalized(mut self) -> Self {
        if self.a == 0 && self.b == 0 && self.c == 0 && self.d == 0 {
            return Self::ZERO;
        }
        while self.k > 0 && self.a % 2 == 0 && self.b % 2 == 0 && self.c % 2 == 0 && self.d % 2 == 0
        {
            self.a /= 2;
            self.b /= 2;
            self.c /= 2;
            self.d /= 2;
            self.k -= 1;
        }
        self
    }

    fn scaled_to(&self, k: u32) -> [i128; 4] {
        let shift = k - self.k;
        let f = 1i128
            .checked_shl(shift)
            .filter(|_| shift < 120)
            .expect("exact scalar exponent overflow");
        [
            mul(self.a, f),
            mul(self.b, f),
            mul(self.c, f),
            mul(self.d, f),
        ]
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    pub fn is_real(&self) -> bool {
        self.c == 0 && self.d == 0
    }

    pub fn conj(&self) -> Self {
        Self::raw(self.a, self.b, -self.c, -self.d, self.k)
    }

    /// `|z|²`, which is real.
    pub fn norm_sqr(&self) -> Self {
        *self * self.conj()
    }

    /// Value as a dyadic rational when it is one (no √2 and no imaginary part).
    pub fn as_rational(&self) -> Option<Ratio<i128>> {
        (self.b == 0 && self.c == 0 && self.d == 0).then(|| Ratio::new(self.a, 1i128 << self.k))
    }

    /// Integer value, when exact.
    pub fn as_integer(&self) -> Option<i128> {
        (self.k == 0 && self.b == 0 && self.c == 0 && self.d == 0).then_some(self.a)
    }

    /// Approximate value for display only.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        let s = std::f64::consts::SQRT_2;
        let scale = 2f64.powi(-(self.k as i32));
        (
            (self.a as f64 + self.b as f64 * s) * scale,
            (self.c as f64 + self.d as f64 * s) * scale,
        )
    }
}

#[inline]
fn mul(x: i128, y: i128) -> i128 {
    x.checked_mul(y).expect("exact scalar overflow")
}

#[inline]
fn add(x: i128, y: i128) -> i128 {
    x.checked_add(y).expect("exact scalar overflow")
}

impl Default for ExactScalar {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Add for ExactScalar {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let k = self.k.max(rhs.k);
        let [a, b, c, d] = self.scaled_to(k);
        let [e, f, g, h] = rhs.scaled_to(k);
        Self::new(add(a, e), add(b, f), add(c, g), add(d, h), k)
    }
}

impl Neg for ExactScalar {
    type Output = Self;

    fn neg(self) -> Self {
        Self::raw(-self.a, -self.b, -self.c, -self.d, self.k)
    }
}

impl Sub for ExactScalar {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for ExactScalar {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        // (p + iq)(r + is) with p, q, r, s in Z[√2]
        let sm = |(x0, x1): (i128, i128), (y0, y1): (i128, i128)| {
            (
                add(mul(x0, y0), mul(2, mul(x1, y1))),
                add(mul(x0, y1), mul(x1, y0)),
            )
        };
        let p = (self.a, self.b);
        let q = (self.c, self.d);
        let r = (rhs.a, rhs.b);
        let s = (rhs.c, rhs.d);
        let pr = sm(p, r);
        let qs = sm(q, s);
        let ps = sm(p, s);
        let qr = sm(q, r);
        Self::new(
            add(pr.0, -qs.0),
            add(pr.1, -qs.1),
            add(ps.0, qr.0),
            add(ps.1, qr.1),
            self.k + rhs.k,
        )
    }
}

impl std::iter::Sum for ExactScalar {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |acc, x| acc + x)
    }
}

impl From<i128> for ExactScalar {
    fn from(v: i128) -> Self {
        Self::from_int(v)
    }
}

fn fmt_surd(a: i128, b: i128) -> String {
    match (a, b) {
        (a, 0) => a.to_string(),
        (0, 1) => "√2".into(),
        (0, -1) => "-√2".into(),
        (0, b) => format!("{b}√2"),
        (a, 1) => format!("{a}+√2"),
        (a, -1) => format!("{a}-√2"),
        (a, b) if b < 0 => format!("{a}{b}√2"),
        (a, b) => format!("{a}+{b}√2"),
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = (self.a != 0 || self.b != 0).then(|| fmt_surd(self.a, self.b));
        let im = (self.c != 0 || self.d != 0).then(|| match (self.c, self.d) {
            (1, 0) => "i".to_string(),
            (-1, 0) => "-i".to_string(),
            (c, 0) => format!("{c}i"),
            (c, d) => format!("({})i", fmt_surd(c, d)),
        });
        let num = match (re, im) {
            (None, None) => "0".to_string(),
            (Some(r), None) => r,
            (None, Some(i)) => i,
            (Some(r), Some(i)) if i.starts_with('-') => format!("{r}{i}"),
            (Some(r), Some(i)) => format!("{r}+{i}"),
        };
        if self.k == 0 {
            f.write_str(&num)
        } else if num.chars().all(|c| c.is_ascii_digit() || c == '-') {
            write!(f, "{num}/{}", 1u128 << self.k)
        } else {
            write!(f, "({num})/{}", 1u128 << self.k)
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalisation_and_equality() {
        assert_eq!(ExactScalar::dyadic(2, 1), ExactScalar::ONE);
        assert_eq!(ExactScalar::new(0, 0, 0, 0, 7), ExactScalar::ZERO);
        let h = ExactScalar::inv_sqrt2_pow(1);
        assert_eq!(h * h, ExactScalar::dyadic(1, 1));
        assert_eq!(ExactScalar::inv_sqrt2_pow(4), ExactScalar::dyadic(1, 2));
        assert_eq!(ExactScalar::sqrt2() * h, ExactScalar::ONE);
        assert_eq!(ExactScalar::I * ExactScalar::I, -ExactScalar::ONE);
    }

    #[test]
    fn display() {
        assert_eq!(ExactScalar::dyadic(1, 2).to_string(), "1/4");
        assert_eq!(ExactScalar::dyadic(-3, 0).to_string(), "-3");
        assert_eq!(ExactScalar::inv_sqrt2_pow(1).to_string(), "(√2)/2");
        assert_eq!(ExactScalar::new(1, 0, -1, 0, 1).to_string(), "(1-i)/2");
    }

    #[test]
    fn rational_view() {
        assert_eq!(
            ExactScalar::dyadic(3, 3).as_rational(),
            Some(Ratio::new(3, 8))
        );
        assert_eq!(ExactScalar::sqrt2().as_rational(), None);
        assert_eq!(ExactScalar::from_int(7).as_integer(), Some(7));
    }

    fn arb() -> impl Strategy<Value = ExactScalar> {
        (-20i128..20, -20i128..20, -20i128..20, -20i128..20, 0u32..6)
            .prop_map(|(a, b, c, d, k)| ExactScalar::new(a, b, c, d, k))
    }

    proptest! {
        #[test]
        fn ring_laws(x in arb(), y in arb(), z in arb()) {
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!(x * y, y * x);
            prop_assert_eq!((x * y) * z, x * (y * z));
            prop_assert_eq!(x * (y + z), x * y + x * z);
            prop_assert_eq!(x - x, ExactScalar::ZERO);
            prop_assert_eq!((x * y).conj(), x.conj() * y.conj());
            prop_assert!(x.norm_sqr().is_real());
        }

        #[test]
        fn float_shadow_agrees(x in arb(), y in arb()) {
            let (xr, xi) = x.to_f64_pair();
            let (yr, yi) = y.to_f64_pair();
            let (pr, pi) = (x * y).to_f64_pair();
            prop_assert!((pr - (xr * yr - xi * yi)).abs() < 1e-9);
            prop_assert!((pi - (xr * yi + xi * yr)).abs() < 1e-9);
        }
    }
}
