//! Scalar coefficients: exact Gaussian rationals and complex doubles.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational.
pub type Q = BigRational;
/// Exact Gaussian rational, `re + i·im` with rational parts.
pub type Cq = Complex<Q>;
/// Complex double.
pub type C64 = Complex<f64>;

/// Common surface of the two coefficient fields.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_q(r: &Q) -> Self;
    fn conj(&self) -> Self;
    fn to_c64(&self) -> C64;

    fn from_i64(v: i64) -> Self {
        Self::from_q(&q(v))
    }
}

impl Scalar for Cq {
    fn from_q(r: &Q) -> Self {
        Complex::new(r.clone(), Q::zero())
    }

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    fn to_c64(&self) -> C64 {
        C64::new(q_to_f64(&self.re), q_to_f64(&self.im))
    }
}

impl Scalar for C64 {
    fn from_q(r: &Q) -> Self {
        C64::new(q_to_f64(r), 0.0)
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn to_c64(&self) -> C64 {
        *self
    }
}

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn qr(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Real Gaussian rational from an integer.
pub fn cq(v: i64) -> Cq {
    Complex::new(q(v), Q::zero())
}

pub fn cq_real(r: Q) -> Cq {
    Complex::new(r, Q::zero())
}

/// The imaginary unit, exactly.
pub fn cq_i() -> Cq {
    Complex::new(Q::zero(), Q::one())
}

pub fn q_to_f64(r: &Q) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator/denominator too large for a direct conversion
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Sign of `(-1)^k`.
pub fn parity_sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Parses `"p/q"`, `"p"` or a plain decimal like `"0.25"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Q, String> {
    let t = text.trim();
    if t.is_empty() {
        return Err("empty rational".into());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| format!("malformed rational {t:?}"))?;
        let d: BigInt = d.trim().parse().map_err(|_| format!("malformed rational {t:?}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {t:?}"));
        }
        return Ok(Q::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(format!("malformed rational {t:?}"));
        }
        let negative = whole.trim_start().starts_with('-');
        let w: BigInt = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            whole.parse().map_err(|_| format!("malformed rational {t:?}"))?
        };
        let f: BigInt = frac.parse().map_err(|_| format!("malformed rational {t:?}"))?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = w.abs() * &scale + f;
        let num = if negative { -mag } else { mag };
        return Ok(Q::new(num, scale));
    }
    let n: BigInt = t.parse().map_err(|_| format!("malformed rational {t:?}"))?;
    Ok(Q::from_integer(n))
}

/// Canonical text form of a rational: `"p"` or `"p/q"`.
pub fn fmt_q(r: &Q) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn fmt_cq(z: &Cq) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => fmt_q(&z.re),
        (true, false) => format!("{}i", fmt_q(&z.im)),
        (false, false) => {
            let sign = if z.im.is_negative() { "-" } else { "+" };
            format!("{}{}{}i", fmt_q(&z.re), sign, fmt_q(&z.im.abs()))
        }
    }
}
