//! Arbitrary-precision rationals.
//!
//! Reduction uses Euclid's algorithm with a single-limb fast path, and
//! addition/multiplication follow the cross-cancellation scheme from Knuth
//! (TAOCP vol. 2, 4.5.1). The orbit computations add small offsets and
//! small-denominator fractions to integers with over a million bits, so
//! every reduction must be linear in the size of the large operand.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    num: BigInt,
    den: BigInt,
}

/// Failure to parse the `p/q` text form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseRationalError {}

/// Greatest common divisor of two magnitudes.
fn gcd_mag(a: &BigUint, b: &BigUint) -> BigUint {
    let (big, small) = if a >= b { (a, b) } else { (b, a) };
    if small.is_zero() {
        return big.clone();
    }
    if let Some(s) = small.to_u64() {
        let r = (big % s).to_u64().expect("remainder below a u64 modulus");
        return BigUint::from(s.gcd(&r));
    }
    let mut x = small.clone();
    let mut y = big % small;
    while !y.is_zero() {
        if let Some(s) = y.to_u64() {
            let r = (&x % s).to_u64().expect("remainder below a u64 modulus");
            return BigUint::from(s.gcd(&r));
        }
        let r = &x % &y;
        x = y;
        y = r;
    }
    x
}

fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    BigInt::from(gcd_mag(a.magnitude(), b.magnitude()))
}

fn div_exact<'a>(x: &'a BigInt, g: &BigInt) -> Cow<'a, BigInt> {
    if g.is_one() {
        Cow::Borrowed(x)
    } else {
        Cow::Owned(x / g)
    }
}

impl Rational {
    /// Builds `num/den` in lowest terms. Panics when `den` is zero.
    pub fn new(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "rational with zero denominator");
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num, den) };
        if den.is_one() {
            return Self { num, den };
        }
        let g = gcd(&num, &den);
        if g.is_one() {
            Self { num, den }
        } else {
            Self { num: num / &g, den: den / &g }
        }
    }

    /// `n/d` from machine integers. Panics when `d` is zero.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn from_integer(n: BigInt) -> Self {
        Self { num: n, den: BigInt::one() }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.num.is_zero(), "reciprocal of zero");
        if self.num.is_negative() {
            Self { num: -self.den.clone(), den: -self.num.clone() }
        } else {
            Self { num: self.den.clone(), den: self.num.clone() }
        }
    }

    /// Integer part, rounding toward zero.
    pub fn trunc(&self) -> BigInt {
        &self.num / &self.den
    }

    /// Lossy conversion for informational output only.
    pub fn to_f64_lossy(&self) -> f64 {
        self.to_decimal_string(17).parse().unwrap_or(f64::NAN)
    }

    /// Decimal rendering with exactly `sig` significant digits, rounded
    /// half away from zero.
    pub fn to_decimal_string(&self, sig: usize) -> String {
        assert!(sig >= 1);
        if self.num.is_zero() {
            return "0".to_string();
        }
        let neg = self.num.is_negative();
        let n = self.num.magnitude();
        let d = self.den.magnitude();
        let ten = BigUint::from(10u32);
        let upper = ten.pow(sig as u32);
        let lower = ten.pow(sig as u32 - 1);
        // decimal exponent estimate from bit lengths; corrected below
        let est = ((n.bits() as f64 - d.bits() as f64) * std::f64::consts::LOG10_2).floor() as i64;
        let mut shift = sig as i64 - 1 - est;
        let (mut q, scaled_den) = loop {
            let (num_s, den_s) = if shift >= 0 {
                (n * ten.pow(shift as u32), d.clone())
            } else {
                (n.clone(), d * ten.pow((-shift) as u32))
            };
            let q = &num_s / &den_s;
            if q >= upper {
                shift -= 1;
            } else if q < lower {
                shift += 1;
            } else {
                let r = num_s - &q * &den_s;
                break (if r * 2u32 >= den_s { q + 1u32 } else { q }, den_s);
            }
        };
        drop(scaled_den);
        if q == upper {
            q /= 10u32;
            shift -= 1;
        }
        let digits = q.to_str_radix(10);
        let body = if shift <= 0 {
            let mut s = digits;
            s.extend(std::iter::repeat_n('0', (-shift) as usize));
            s
        } else if shift as usize >= sig {
            let mut s = String::from("0.");
            s.extend(std::iter::repeat_n('0', shift as usize - sig));
            s.push_str(&digits);
            s
        } else {
            let split = sig - shift as usize;
            format!("{}.{}", &digits[..split], &digits[split..])
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }

    fn add_signed(&self, rhs: &Self, negate_rhs: bool) -> Self {
        let rnum: Cow<'_, BigInt> = if negate_rhs { Cow::Owned(-&rhs.num) } else { Cow::Borrowed(&rhs.num) };
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_integer(&self.num + rnum.as_ref());
        }
        if self.den == rhs.den {
            return Self::new(&self.num + rnum.as_ref(), self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &self.num * &rhs.den + rnum.as_ref() * &self.den;
            return Self { num, den: &self.den * &rhs.den };
        }
        let d1g = &self.den / &g;
        let d2g = &rhs.den / &g;
        let t = &self.num * &d2g + rnum.as_ref() * &d1g;
        if t.is_zero() {
            return Self::zero();
        }
        let g2 = gcd(&t, &g);
        let den = d1g * div_exact(&rhs.den, &g2).as_ref();
        Self { num: div_exact(&t, &g2).into_owned(), den }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_integer(&self.num * &rhs.num);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let num = div_exact(&self.num, &g1).as_ref() * div_exact(&rhs.num, &g2).as_ref();
        let den = div_exact(&self.den, &g2).as_ref() * div_exact(&rhs.den, &g1).as_ref();
        Self { num, den }
    }

    fn div_ref(&self, rhs: &Self) -> Self {
        assert!(!rhs.num.is_zero(), "division by zero rational");
        if rhs.is_one() {
            return self.clone();
        }
        self.mul_ref(&rhs.recip())
    }

    fn rem_ref(&self, rhs: &Self) -> Self {
        let q = Self::from_integer(self.div_ref(rhs).trunc());
        self.add_signed(&q.mul_ref(rhs), true)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Self { num: BigInt::zero(), den: BigInt::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Self { num: BigInt::one(), den: BigInt::one() }
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

impl num_traits::Num for Rational {
    type FromStrRadixErr = ParseRationalError;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let parse = |t: &str| {
            BigInt::parse_bytes(t.trim().as_bytes(), radix)
                .ok_or_else(|| ParseRationalError(format!("invalid rational {s:?}: expected p/q with integer p, q")))
        };
        let (n, d) = match s.split_once('/') {
            Some((p, q)) => (parse(p)?, parse(q)?),
            None => (parse(s)?, BigInt::one()),
        };
        if d.is_zero() {
            return Err(ParseRationalError(format!("invalid rational {s:?}: zero denominator")));
        }
        Ok(Self::new(n, d))
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.contains(['.', 'e', 'E']) {
            return Err(ParseRationalError(format!("invalid rational {s:?}: decimals are not accepted, write p/q")));
        }
        <Self as num_traits::Num>::from_str_radix(s.trim(), 10)
    }
}

impl Signed for Rational {
    fn abs(&self) -> Self {
        Self { num: self.num.abs(), den: self.den.clone() }
    }
    fn abs_sub(&self, other: &Self) -> Self {
        if self <= other {
            Self::zero()
        } else {
            self - other
        }
    }
    fn signum(&self) -> Self {
        match self.num.sign() {
            Sign::Minus => -Self::one(),
            Sign::NoSign => Self::zero(),
            Sign::Plus => Self::one(),
        }
    }
    fn is_positive(&self) -> bool {
        self.num.is_positive()
    }
    fn is_negative(&self) -> bool {
        self.num.is_negative()
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.num.sign(), other.num.sign());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational { num: -self.num, den: self.den }
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                let ($a, $b) = (self, rhs);
                $body
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_signed(b, false));
forward_binop!(Sub, sub, |a, b| a.add_signed(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));
forward_binop!(Div, div, |a, b| a.div_ref(b));
forward_binop!(Rem, rem, |a, b| a.rem_ref(b));

macro_rules! from_int {
    ($($t:ty),*) => {
        $(impl From<$t> for Rational {
            fn from(n: $t) -> Self {
                Self::from_integer(BigInt::from(n))
            }
        })*
    };
}

from_int!(i32, i64, u32, u64, usize);

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigUint> for Rational {
    fn from(n: BigUint) -> Self {
        Self::from_integer(BigInt::from(n))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // endpoints near 𝓛₄ have ~473k digits; keep debug output readable
        if self.num.bits() > 4096 {
            write!(f, "Rational(<{}-bit numerator>/{})", self.num.bits(), self.den)
        } else {
            fmt::Display::fmt(self, f)
        }
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
