//! Exact scalars.
//!
//! `Q` is a rational with 128-bit numerator and denominator; `Qi` is a
//! Gaussian rational `re + im·i`. Overflow panics instead of wrapping, so an
//! exact result is either correct or absent.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number.
pub type Q = Ratio<i128>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("malformed scalar {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Shorthand for the integer-valued rational `n`.
pub fn q(n: i128) -> Q {
    Q::from_integer(n)
}

/// Shorthand for the rational `n/d`.
pub fn qr(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

/// Parses `"p"`, `"p/q"` or `"-p/q"`.
pub fn parse_q(text: &str) -> Result<Q, ScalarError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(ScalarError::Malformed(text.to_string()));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: i128 = n.trim().parse().map_err(|_| ScalarError::Malformed(text.to_string()))?;
        let d: i128 = d.trim().parse().map_err(|_| ScalarError::Malformed(text.to_string()))?;
        if d == 0 {
            return Err(ScalarError::ZeroDenominator(text.to_string()));
        }
        Ok(Q::new(n, d))
    } else {
        let n: i128 = t.parse().map_err(|_| ScalarError::Malformed(text.to_string()))?;
        Ok(q(n))
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

/// Exact square root when `x` is the square of a rational.
pub fn q_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = isqrt(*x.numer())?;
    let d = isqrt(*x.denom())?;
    Some(Q::new(n, d))
}

fn isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// Gaussian rational `re + im·i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Qi {
    pub re: Q,
    pub im: Q,
}

impl Qi {
    pub fn new(re: Q, im: Q) -> Self {
        Qi { re, im }
    }
    pub fn real(re: Q) -> Self {
        Qi { re, im: Q::zero() }
    }
    pub fn i() -> Self {
        Qi { re: Q::zero(), im: Q::one() }
    }
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Zero for Qi {
    fn zero() -> Self {
        Qi::real(Q::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Qi {
    fn one() -> Self {
        Qi::real(Q::one())
    }
}

impl Add for Qi {
    type Output = Qi;
    fn add(self, o: Qi) -> Qi {
        Qi::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Qi {
    type Output = Qi;
    fn sub(self, o: Qi) -> Qi {
        Qi::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for Qi {
    type Output = Qi;
    fn mul(self, o: Qi) -> Qi {
        if self.im.is_zero() && o.im.is_zero() {
            return Qi::real(self.re * o.re);
        }
        Qi::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl Div for Qi {
    type Output = Qi;
    fn div(self, o: Qi) -> Qi {
        if o.im.is_zero() {
            return Qi::new(self.re / o.re, self.im / o.re);
        }
        let n = o.re * o.re + o.im * o.im;
        let c = Qi::new(o.re, -o.im);
        let p = self * c;
        Qi::new(p.re / n, p.im / n)
    }
}

impl Neg for Qi {
    type Output = Qi;
    fn neg(self) -> Qi {
        Qi::new(-self.re, -self.im)
    }
}

impl AddAssign for Qi {
    fn add_assign(&mut self, o: Qi) {
        *self = *self + o;
    }
}

impl SubAssign for Qi {
    fn sub_assign(&mut self, o: Qi) {
        *self = *self - o;
    }
}

impl MulAssign for Qi {
    fn mul_assign(&mut self, o: Qi) {
        *self = *self * o;
    }
}

impl Sum for Qi {
    fn sum<I: Iterator<Item = Qi>>(iter: I) -> Qi {
        iter.fold(Qi::zero(), |a, b| a + b)
    }
}

impl From<Q> for Qi {
    fn from(x: Q) -> Qi {
        Qi::real(x)
    }
}

impl fmt::Display for Qi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_q(&self.re));
        }
        let im = if self.im.abs().is_one() {
            String::new()
        } else {
            fmt_q(&self.im.abs())
        };
        let sign = if self.im.is_negative() { "-" } else { "+" };
        if self.re.is_zero() {
            let lead = if self.im.is_negative() { "-" } else { "" };
            write!(f, "{lead}{im}i")
        } else {
            write!(f, "{}{sign}{im}i", fmt_q(&self.re))
        }
    }
}

impl FromStr for Qi {
    type Err = ScalarError;

    /// Accepts `"a"`, `"bi"`, `"a+bi"`, `"a-bi"`, `"i"`, `"-i"` with rational `a`, `b`.
    fn from_str(text: &str) -> Result<Qi, ScalarError> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(ScalarError::Malformed(text.to_string()));
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Qi::real(parse_q(&t)?));
        };
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let (re_txt, im_txt) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let re = if re_txt.is_empty() { Q::zero() } else { parse_q(re_txt)? };
        let im = match im_txt {
            "" | "+" => Q::one(),
            "-" => -Q::one(),
            s => parse_q(s.strip_prefix('+').unwrap_or(s))?,
        };
        Ok(Qi::new(re, im))
    }
}

/// Exact field operations shared by the rational and Gaussian-rational engines.
pub trait Field:
    Copy
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + From<Q>
{
    fn conj(self) -> Self;
    fn abs_sq(self) -> Q;
    fn to_c64(self) -> Complex64;
    /// Text form used in reports and JSON.
    fn render(&self) -> String;
    /// Largest absolute value among real and imaginary parts.
    fn max_abs(self) -> Q;
    /// Exact square root inside the field, when one exists.
    fn sqrt_exact(self) -> Option<Self>;
}

impl Field for Q {
    fn conj(self) -> Q {
        self
    }
    fn abs_sq(self) -> Q {
        self * self
    }
    fn to_c64(self) -> Complex64 {
        Complex64::new(q_to_f64(&self), 0.0)
    }
    fn render(&self) -> String {
        fmt_q(self)
    }
    fn max_abs(self) -> Q {
        self.abs()
    }
    fn sqrt_exact(self) -> Option<Q> {
        q_sqrt(&self)
    }
}

impl Field for Qi {
    fn conj(self) -> Qi {
        Qi::new(self.re, -self.im)
    }
    fn abs_sq(self) -> Q {
        self.re * self.re + self.im * self.im
    }
    fn to_c64(self) -> Complex64 {
        Complex64::new(q_to_f64(&self.re), q_to_f64(&self.im))
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn max_abs(self) -> Q {
        self.re.abs().max(self.im.abs())
    }
    fn sqrt_exact(self) -> Option<Qi> {
        // (x + iy)² = re + i·im with x² = (re + |z|)/2, y = im / 2x.
        let modulus = q_sqrt(&self.abs_sq())?;
        let x2 = (self.re + modulus) / q(2);
        if x2.is_zero() {
            let y = q_sqrt(&(-self.re))?;
            return Some(Qi::new(Q::zero(), y));
        }
        let x = q_sqrt(&x2)?;
        Some(Qi::new(x, self.im / (q(2) * x)))
    }
}

/// Serde writers for exact rationals as strings.
pub mod qser {
    use super::{fmt_q, Q};
    use serde::Serializer;

    pub fn one<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }
    pub fn vec<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(fmt_q))
    }
    pub fn nested<S: Serializer>(v: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.iter().map(fmt_q).collect::<Vec<_>>()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_q("3/6").unwrap(), qr(1, 2));
        assert_eq!(parse_q("-4").unwrap(), q(-4));
        assert!(matches!(parse_q("1/0"), Err(ScalarError::ZeroDenominator(_))));
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn parse_gaussian() {
        let z: Qi = "1/2-3/4i".parse().unwrap();
        assert_eq!(z, Qi::new(qr(1, 2), qr(-3, 4)));
        assert_eq!("i".parse::<Qi>().unwrap(), Qi::i());
        assert_eq!("-i".parse::<Qi>().unwrap(), -Qi::i());
        assert_eq!("-2+i".parse::<Qi>().unwrap(), Qi::new(q(-2), q(1)));
        assert_eq!("5".parse::<Qi>().unwrap(), Qi::real(q(5)));
        assert!("1/0+i".parse::<Qi>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "3/2", "i", "-i", "1+i", "-1/2-7/3i", "2i"] {
            let z: Qi = s.parse().unwrap();
            assert_eq!(z.to_string().parse::<Qi>().unwrap(), z);
        }
    }

    #[test]
    fn gaussian_division_inverts_multiplication() {
        let a = Qi::new(qr(2, 3), q(-5));
        let b = Qi::new(q(1), qr(7, 2));
        assert_eq!((a * b) / b, a);
        assert_eq!(a * a.conj(), Qi::real(a.abs_sq()));
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(q_sqrt(&qr(9, 4)), Some(qr(3, 2)));
        assert_eq!(q_sqrt(&q(2)), None);
        assert_eq!(q_sqrt(&q(-1)), None);
        let z = Qi::new(qr(3, 2), q(-2));
        let r = (z * z).sqrt_exact().unwrap();
        assert!(r == z || r == -z);
        assert_eq!(Qi::real(q(-4)).sqrt_exact(), Some(Qi::new(q(0), q(2))));
        assert_eq!(Qi::i().sqrt_exact(), None);
    }
}
