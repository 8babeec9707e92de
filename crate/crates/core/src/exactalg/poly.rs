use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};

/// Degree of a polynomial. The zero polynomial has degree `NegInfinity`,
/// which orders below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl PartialEq<usize> for Degree {
    fn eq(&self, other: &usize) -> bool {
        *self == Degree::Finite(*other)
    }
}

/// Dense polynomial over Q in the indeterminate T. Index k of the
/// coefficient vector holds the coefficient of T^k; the top stored
/// coefficient is never zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// Integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c * T^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    /// `T^k - 1`.
    pub fn t_pow_minus_one(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        coeffs[0] -= &Rational::one();
        Polynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Leading coefficient equal to one.
    pub fn is_unitary(&self) -> bool {
        self.leading_coefficient().is_some_and(Rational::is_one)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Splits `self` into its leading coefficient and the unitary polynomial
    /// it scales. `None` for the zero polynomial.
    pub fn split_leading(&self) -> Option<(Rational, Polynomial)> {
        let lead = self.leading_coefficient()?.clone();
        let inv = lead.recip().ok()?;
        Some((lead, self.scale(&inv)))
    }

    pub fn divrem(&self, den: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.divrem_with(den, Strategy::default())
    }

    /// Schoolbook long division: `self = q * den + r` with `deg r < deg den`.
    pub fn divrem_with(&self, den: &Polynomial, strategy: Strategy) -> Result<(Polynomial, Polynomial)> {
        let lead_inv = den
            .leading_coefficient()
            .ok_or(Error::DivisionByZeroPolynomial)?
            .recip()?;
        let dlen = den.coeffs.len();
        if self.coeffs.len() < dlen {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![Rational::zero(); qlen];
        // The divisor's own top term cancels exactly, so only the lower
        // dlen - 1 coefficients are updated.
        let tail = &den.coeffs[..dlen - 1];
        for shift in (0..qlen).rev() {
            let top = rem.pop().expect("remainder longer than divisor");
            if top.is_zero() {
                continue;
            }
            let c = top * &lead_inv;
            exec::zip_update(strategy, &mut rem[shift..shift + dlen - 1], tail, |r, d| {
                if !d.is_zero() {
                    *r -= &(&c * d);
                }
            });
            quot[shift] = c;
        }
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Exact quotient, or `None` if the division leaves a remainder.
    pub fn exact_div(&self, den: &Polynomial) -> Result<Option<Polynomial>> {
        let (q, r) = self.divrem(den)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from(k))
                .collect(),
        )
    }

    /// `p(T^c)`.
    pub fn compose_power(&self, c: usize) -> Result<Polynomial> {
        if c == 0 {
            return Err(Error::InvalidCompositionPower);
        }
        let Degree::Finite(d) = self.degree() else {
            return Ok(Polynomial::zero());
        };
        let mut coeffs = vec![Rational::zero(); d * c + 1];
        for (k, x) in self.coeffs.iter().enumerate() {
            coeffs[k * c] = x.clone();
        }
        Ok(Polynomial { coeffs })
    }

    pub fn mul_with(&self, rhs: &Polynomial, strategy: Strategy) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let (a, b) = (&self.coeffs, &rhs.coeffs);
        let len = a.len() + b.len() - 1;
        let coeffs = exec::map_range(strategy.for_len(len), 0, len, |k| {
            let lo = k.saturating_sub(b.len() - 1);
            let hi = k.min(a.len() - 1);
            (lo..=hi)
                .filter(|&j| !a[j].is_zero() && !b[k - j].is_zero())
                .map(|j| &a[j] * &b[k - j])
                .sum()
        });
        Polynomial::new(coeffs)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_with(rhs, Strategy::default())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Renders as e.g. `-1/2*T^3 + 2*T - 1`: descending powers, explicit
/// rational coefficients, unit coefficients omitted before `T`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = match (first, c.is_negative()) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            f.write_str(sign)?;
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    match k {
                        1 => f.write_str("T")?,
                        _ => write!(f, "T^{k}")?,
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Parses the format produced by `Display`. Whitespace is ignored and
    /// repeated powers are summed.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |why: &str| Error::Parse(format!("invalid polynomial {s:?}: {why}"));
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (idx, ch) in compact.char_indices() {
            if idx > 0 && (ch == '+' || ch == '-') && !compact[..idx].ends_with('^') {
                terms.push(&compact[start..idx]);
                start = idx;
            }
        }
        terms.push(&compact[start..]);

        let mut coeffs: Vec<Rational> = Vec::new();
        for term in terms {
            let (negative, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(bad("dangling sign"));
            }
            let (coef, exp) = match body.split_once('T') {
                None => (body.parse::<Rational>()?, 0usize),
                Some((c, e)) => {
                    let coef = match c {
                        "" => Rational::one(),
                        _ => c
                            .strip_suffix('*')
                            .ok_or_else(|| bad("expected '*' before T"))?
                            .parse::<Rational>()?,
                    };
                    let exp = match e {
                        "" => 1,
                        _ => e
                            .strip_prefix('^')
                            .and_then(|e| e.parse::<usize>().ok())
                            .ok_or_else(|| bad("bad exponent"))?,
                    };
                    (coef, exp)
                }
            };
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, Rational::zero());
            }
            let coef = if negative { -coef } else { coef };
            coeffs[exp] += &coef;
        }
        Ok(Polynomial::new(coeffs))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Strategy as Exec;
    use proptest::prelude::*;
    use proptest::strategy::Strategy;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn degree_of_zero_is_below_everything() {
        assert_eq!(Polynomial::zero().degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(p("T^3 - 1").degree(), 3);
        assert_eq!(Polynomial::new(vec![q("1"), q("0"), q("0")]).degree(), 0);
    }

    #[test]
    fn divrem_examples() {
        let (quot, rem) = p("T^2 + 1").divrem(&p("T")).unwrap();
        assert_eq!((quot, rem), (p("T"), p("1")));

        let (quot, rem) = p("T^8 - 1").divrem(&p("T^4 - 1")).unwrap();
        assert_eq!((quot, rem), (p("T^4 + 1"), Polynomial::zero()));

        let any = p("-1/2*T^3 + 2*T - 1");
        assert_eq!(any.divrem(&Polynomial::one()).unwrap(), (any.clone(), Polynomial::zero()));

        let (quot, rem) = p("1").divrem(&p("T - 1")).unwrap();
        assert_eq!((quot, rem), (Polynomial::zero(), p("1")));
    }

    #[test]
    fn divrem_by_zero() {
        let err = p("T").divrem(&Polynomial::zero()).unwrap_err();
        assert_eq!(err, Error::DivisionByZeroPolynomial);
        assert_eq!(err.to_string(), "division by zero polynomial");
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p("T^4 + 1").eval(&q("1")), q("2"));
        assert_eq!(Polynomial::zero().eval(&q("7/3")), q("0"));
        // T - (-1)^n at T = 1.
        assert_eq!(p("T + 1").eval(&q("1")), q("2"));
        assert_eq!(p("T - 1").eval(&q("1")), q("0"));
        assert_eq!(p("1/2*T^2 - 3").eval(&q("-2/3")), q("-25/9"));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("T^4 + 1").derivative(), p("4*T^3"));
        assert_eq!(p("T^4 + 1").derivative().eval(&q("1")), q("4"));
        assert_eq!(p("-7/2").derivative(), Polynomial::zero());
        assert_eq!(Polynomial::zero().derivative(), Polynomial::zero());
    }

    #[test]
    fn compose_power_examples() {
        assert_eq!(p("T + 1").compose_power(3).unwrap(), p("T^3 + 1"));
        let composed = p("T^4 + 1").compose_power(4).unwrap();
        assert_eq!(composed, p("T^16 + 1"));
        assert_eq!(composed.degree(), 16);
        let any = p("1/3*T^2 - T");
        assert_eq!(any.compose_power(1).unwrap(), any);
        assert_eq!(any.compose_power(0), Err(Error::InvalidCompositionPower));
        assert_eq!(Polynomial::zero().compose_power(5).unwrap(), Polynomial::zero());
    }

    #[test]
    fn rendering() {
        let poly = Polynomial::new(vec![q("-1"), q("2"), q("0"), q("-1/2")]);
        assert_eq!(poly.to_string(), "-1/2*T^3 + 2*T - 1");
        assert_eq!(p("T+1").to_string(), "T + 1");
        assert_eq!(p("1/2*T - 1/2").to_string(), "1/2*T - 1/2");
        assert_eq!(p("-T^5 + T^4").to_string(), "-T^5 + T^4");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("T - T").to_string(), "0");
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "T^", "2T", "1/0", "T^x", "+", "x"] {
            assert!(bad.parse::<Polynomial>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn split_leading_gives_unitary_part() {
        let (lead, b) = p("-2*T^5 + 2*T^4 - 2*T + 2").split_leading().unwrap();
        assert_eq!(lead, q("-2"));
        assert_eq!(b, p("T^5 - T^4 + T - 1"));
        assert!(b.is_unitary());
        assert!(Polynomial::zero().split_leading().is_none());
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    fn poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(small_rational(), 0..=max_deg + 1).prop_map(Polynomial::new)
    }

    proptest! {
        #[test]
        fn divrem_reconstitutes(a in poly(30), b in poly(30)) {
            prop_assume!(!b.is_zero());
            for strategy in [Exec::Sequential, Exec::Parallel] {
                let (quot, rem) = a.divrem_with(&b, strategy).unwrap();
                prop_assert!(rem.degree() < b.degree());
                prop_assert_eq!(&(&quot * &b) + &rem, a.clone());
            }
        }

        #[test]
        fn compose_then_eval(a in poly(12), c in 1usize..=5, x in small_rational()) {
            let lhs = a.compose_power(c).unwrap().eval(&x);
            prop_assert_eq!(lhs, a.eval(&x.pow(c as u32)));
        }

        #[test]
        fn derivative_linear_and_leibniz(a in poly(10), b in poly(10), k in small_rational()) {
            let lin = (&a.scale(&k) + &b).derivative();
            prop_assert_eq!(lin, &a.derivative().scale(&k) + &b.derivative());
            let prod = (&a * &b).derivative();
            prop_assert_eq!(prod, &(&a.derivative() * &b) + &(&a * &b.derivative()));
        }

        #[test]
        fn text_round_trip(a in poly(15)) {
            prop_assert_eq!(a.to_string().parse::<Polynomial>().unwrap(), a);
        }

        #[test]
        fn mul_strategies_agree(a in poly(40), b in poly(40)) {
            prop_assert_eq!(a.mul_with(&b, Exec::Sequential), a.mul_with(&b, Exec::Parallel));
        }
    }
}
