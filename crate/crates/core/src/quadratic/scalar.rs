use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::num::{check_field, QuadNum};
use crate::error::{Error, Result};

/// A rational number or an element of a quadratic field.
///
/// Values are kept normalized: a quadratic element with zero `√d` part is
/// stored as `Rational`, so equality across representations is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Quad(QuadNum),
}

impl From<QuadNum> for Scalar {
    fn from(q: QuadNum) -> Self {
        if q.is_rational() {
            Scalar::Rational(q.x().clone())
        } else {
            Scalar::Quad(q)
        }
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::Rational(BigRational::from_integer(n))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from(BigInt::from(n))
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    /// The field ℚ(√d) this value needs, or `None` for rationals.
    pub fn field(&self) -> Option<i64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Quad(q) => Some(q.d()),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Quad(_) => None,
        }
    }

    /// Returns the value as an integer if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    /// Lifts into ℚ(√d).
    pub fn to_quad(&self, d: i64) -> Result<QuadNum> {
        match self {
            Scalar::Rational(r) => QuadNum::from_rational(r.clone(), d),
            Scalar::Quad(q) if q.d() == d => Ok(q.clone()),
            Scalar::Quad(q) => Err(Error::MixedField(q.d(), d)),
        }
    }

    fn common_field(&self, other: &Self) -> Result<Option<i64>> {
        match (self.field(), other.field()) {
            (Some(a), Some(b)) if a != b => Err(Error::MixedField(a, b)),
            (Some(a), _) | (_, Some(a)) => Ok(Some(a)),
            (None, None) => Ok(None),
        }
    }

    fn lift_pair(&self, other: &Self) -> Result<Option<(QuadNum, QuadNum)>> {
        match self.common_field(other)? {
            None => Ok(None),
            Some(d) => Ok(Some((self.to_quad(d)?, other.to_quad(d)?))),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            _ => {
                let (a, b) = self.lift_pair(other)?.expect("quadratic operand present");
                Ok(a.add_unchecked(&b).into())
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Rational(r), Scalar::Quad(q)) | (Scalar::Quad(q), Scalar::Rational(r)) => {
                Ok(q.scale(r).into())
            }
            (Scalar::Quad(a), Scalar::Quad(b)) => Ok(a.checked_mul(b)?.into()),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    pub fn neg(&self) -> Self {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r.clone()),
            Scalar::Quad(q) => Scalar::Quad(-q),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            Scalar::Rational(r) if r.is_zero() => Err(Error::DivisionByZero),
            Scalar::Rational(r) => Ok(Scalar::Rational(r.recip())),
            Scalar::Quad(q) => Ok(q.inv()?.into()),
        }
    }

    pub fn pow(&self, exp: i64) -> Result<Self> {
        match self {
            Scalar::Rational(r) => {
                if exp < 0 && r.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let e = i32::try_from(exp)
                    .map_err(|_| Error::InvalidInput(format!("exponent {exp} too large")))?;
                Ok(Scalar::Rational(num_traits::Pow::pow(r, e)))
            }
            Scalar::Quad(q) => Ok(q.pow(exp)?.into()),
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            Scalar::Rational(_) => self.clone(),
            Scalar::Quad(q) => Scalar::Quad(q.conj()),
        }
    }

    /// Norm from the smallest field containing the value (a rational is its own norm).
    pub fn field_norm(&self) -> BigRational {
        match self {
            Scalar::Rational(r) => r.clone(),
            Scalar::Quad(q) => q.norm(),
        }
    }

    /// Norm taken in a degree-2 field: rationals contribute `r²`. Used where a
    /// rational and a quadratic irrational must be compared on one scale.
    pub fn norm_deg2(&self) -> BigRational {
        match self {
            Scalar::Rational(r) => r * r,
            Scalar::Quad(q) => q.norm(),
        }
    }

    /// The order of this value as a root of unity, if it is one.
    ///
    /// Every root of unity of degree at most 2 has order 1, 2, 3, 4 or 6, so
    /// all of them satisfy `z¹² = 1`.
    pub fn root_of_unity_order(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        // |N(z)| = 1 is necessary.
        if !self.field_norm().abs().is_one() {
            return None;
        }
        let mut power = Scalar::one();
        for k in 1..=12u32 {
            power = power.mul(self).ok()?;
            if power.is_one() {
                return Some(k);
            }
        }
        None
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Quad(q) => write!(f, "{q}"),
        }
    }
}

/// Parses `p/q`, `x+y*sqrt(d)`, `x-ysqrt(d)`, `sqrt(d)`, `-2sqrt3`, `1/2+3/2*sqrt(13)`.
impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty number literal".into()));
        }
        let Some(pos) = s.find("sqrt") else {
            return parse_rational(&s).map(Scalar::Rational);
        };
        let radicand = s[pos + 4..].trim_start_matches('(').trim_end_matches(')');
        let d: i64 = radicand
            .parse()
            .map_err(|_| Error::Parse(format!("bad radicand in {s:?}")))?;
        check_field(d)?;
        let head = s[..pos].trim_end_matches('*');
        // Split head into the rational part and the coefficient of sqrt(d):
        // the last sign that follows a digit acts as the binary operator.
        let bytes = head.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1].is_ascii_digit());
        let (x_part, y_part) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let x = if x_part.is_empty() {
            BigRational::zero()
        } else {
            parse_rational(x_part)?
        };
        let y = match y_part.trim_start_matches('+') {
            "" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other)?,
        };
        Ok(QuadNum::new(x, y, d)?.into())
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim_start_matches('+');
    BigRational::from_str(s).map_err(|_| Error::Parse(format!("bad rational {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn parses_literals() {
        assert_eq!(
            p("3+2*sqrt(2)"),
            QuadNum::from_ints(3, 2, 2).unwrap().into()
        );
        assert_eq!(p("3-2sqrt2"), QuadNum::from_ints(3, -2, 2).unwrap().into());
        assert_eq!(p("1-sqrt(3)"), QuadNum::from_ints(1, -1, 3).unwrap().into());
        assert_eq!(p("sqrt(-3)"), QuadNum::from_ints(0, 1, -3).unwrap().into());
        assert_eq!(p("-sqrt5"), QuadNum::from_ints(0, -1, 5).unwrap().into());
        assert_eq!(p("8"), Scalar::from(8));
        assert_eq!(
            p("-3/4"),
            Scalar::Rational(BigRational::new((-3).into(), 4.into()))
        );
        let half = p("11/2+3/2*sqrt(13)");
        assert_eq!(
            half,
            QuadNum::half_integral(&BigInt::from(11), &BigInt::from(3), 13)
                .unwrap()
                .into()
        );
        assert_eq!(p("-1/2+-3/2sqrt(13)").to_string(), "-1/2-3/2*sqrt(13)");
        assert!("1+sqrt(4)".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
    }

    #[test]
    fn display_roundtrip() {
        for s in [
            "3+2*sqrt(2)",
            "-1/8*sqrt(2)",
            "7/3",
            "0+1/2*sqrt(-1)",
            "1-sqrt(5)",
            "-sqrt(3)",
        ] {
            let v = p(s);
            assert_eq!(p(&v.to_string()), v);
        }
        assert_eq!(p("0+1/2*sqrt(-1)").to_string(), "1/2*sqrt(-1)");
        assert_eq!(p("1-sqrt(5)").to_string(), "1-sqrt(5)");
    }

    #[test]
    fn normalizes_rational_results() {
        let a = p("3+2sqrt2");
        let b = p("3-2sqrt2");
        assert!(a.mul(&b).unwrap().is_one());
        assert_eq!(a.add(&b).unwrap(), Scalar::from(6));
        assert_eq!(
            p("1+sqrt2").mul(&p("1+sqrt3")),
            Err(Error::MixedField(2, 3))
        );
        assert_eq!(Scalar::from(2).mul(&p("sqrt2")).unwrap(), p("2sqrt2"));
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(Scalar::from(1).root_of_unity_order(), Some(1));
        assert_eq!(Scalar::from(-1).root_of_unity_order(), Some(2));
        assert_eq!(p("-1/2+1/2sqrt(-3)").root_of_unity_order(), Some(3));
        assert_eq!(p("sqrt(-1)").root_of_unity_order(), Some(4));
        assert_eq!(p("1/2+1/2sqrt(-3)").root_of_unity_order(), Some(6));
        assert_eq!(p("3+2sqrt2").root_of_unity_order(), None);
        assert_eq!(Scalar::from(2).root_of_unity_order(), None);
    }
}
