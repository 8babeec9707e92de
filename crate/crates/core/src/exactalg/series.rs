use std::fmt;

use super::{Polynomial, Rational};
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};

/// A truncated element of Q((1/T)).
///
/// Coefficients are stored for the exponent window `[-precision, top]`, highest
/// exponent first. Coefficients above `top` are zero; those below
/// `-precision` are unknown, and no operation reports them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    top: i64,
    coeffs: Vec<Rational>,
    precision: i64,
}

impl LaurentSeries {
    /// `coeffs[k]` is the coefficient of `T^(top - k)`; the window must end
    /// exactly at `-precision`.
    pub fn new(top: i64, coeffs: Vec<Rational>, precision: i64) -> Result<Self> {
        if top + precision + 1 != coeffs.len() as i64 {
            return Err(Error::Parse(format!(
                "series window [{}, {top}] does not hold {} coefficients",
                -precision,
                coeffs.len()
            )));
        }
        Ok(LaurentSeries { top, coeffs, precision })
    }

    /// The zero series, known down to `T^-precision`.
    pub fn zero(precision: i64) -> Self {
        LaurentSeries {
            top: -precision - 1,
            coeffs: Vec::new(),
            precision,
        }
    }

    /// `sum_{n=1}^{precision} letters[n-1] T^-n`.
    pub fn from_word(letters: &[i8], precision: usize) -> Result<Self> {
        if precision == 0 {
            return Err(Error::InvalidPrecision(0));
        }
        if letters.len() < precision {
            return Err(Error::InsufficientWordPrefix {
                needed: precision,
                available: letters.len(),
            });
        }
        Ok(LaurentSeries {
            top: -1,
            coeffs: letters[..precision].iter().map(|&l| Rational::from(l)).collect(),
            precision: precision as i64,
        })
    }

    /// A polynomial viewed as a series known down to `T^-precision`.
    pub fn from_polynomial(p: &Polynomial, precision: i64) -> Self {
        let top = p.degree().finite().map_or(-precision - 1, |d| d as i64);
        let coeffs = (-precision..=top).rev().map(|e| poly_coeff(p, e)).collect();
        LaurentSeries { top, coeffs, precision }
    }

    /// Expansion of `num / den` with every coefficient down to `T^-precision`
    /// exact.
    pub fn from_rational_function(num: &Polynomial, den: &Polynomial, precision: usize) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        let shifted = num * &Polynomial::monomial(Rational::one(), precision);
        let (quot, _) = shifted.divrem(den)?;
        let precision = precision as i64;
        let top = quot.degree().finite().map_or(-precision - 1, |d| d as i64 - precision);
        let coeffs = (-precision..=top)
            .rev()
            .map(|e| poly_coeff(&quot, e + precision))
            .collect();
        Ok(LaurentSeries { top, coeffs, precision })
    }

    pub fn top(&self) -> i64 {
        self.top
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    /// Coefficients from `T^top` down to `T^-precision`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `T^e`; `None` when `e` lies below the known window.
    pub fn coeff(&self, e: i64) -> Option<Rational> {
        if e < -self.precision {
            None
        } else if e > self.top {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[(self.top - e) as usize].clone())
        }
    }

    fn coeff_ref(&self, e: i64) -> Option<&Rational> {
        (e <= self.top && e >= -self.precision).then(|| &self.coeffs[(self.top - e) as usize])
    }

    /// Exponent and coefficient of the highest nonzero known term.
    pub fn leading_term(&self) -> Option<(i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map(|(k, c)| (self.top - k as i64, c))
    }

    pub fn is_zero(&self) -> bool {
        self.leading_term().is_none()
    }

    /// Writes the series as `p(T) / T^precision`.
    pub fn as_fraction(&self) -> (Polynomial, Polynomial) {
        let mut num = vec![Rational::zero(); self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            num[self.coeffs.len() - 1 - k] = c.clone();
        }
        let num = Polynomial::new(num);
        let den = Polynomial::monomial(Rational::one(), self.precision.max(0) as usize);
        if self.precision >= 0 {
            (num, den)
        } else {
            let shift = Polynomial::monomial(Rational::one(), (-self.precision) as usize);
            (&num * &shift, den)
        }
    }

    /// Integral part: the terms with nonnegative exponent.
    pub fn polynomial_part(&self) -> Polynomial {
        if self.top < 0 {
            return Polynomial::zero();
        }
        Polynomial::new((0..=self.top).map(|e| self.coeff(e).unwrap_or_default()).collect())
    }

    pub fn sub(&self, rhs: &LaurentSeries) -> LaurentSeries {
        let top = self.top.max(rhs.top);
        let precision = self.precision.min(rhs.precision);
        let zero = Rational::zero();
        let coeffs = (-precision..=top)
            .rev()
            .map(|e| self.coeff_ref(e).unwrap_or(&zero) - rhs.coeff_ref(e).unwrap_or(&zero))
            .collect();
        LaurentSeries { top, coeffs, precision }
    }

    pub fn add(&self, rhs: &LaurentSeries) -> LaurentSeries {
        self.sub(&rhs.neg())
    }

    pub fn neg(&self) -> LaurentSeries {
        LaurentSeries {
            top: self.top,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            precision: self.precision,
        }
    }

    pub fn mul(&self, rhs: &LaurentSeries) -> LaurentSeries {
        self.mul_with(rhs, Strategy::default())
    }

    /// Product on the window both operands determine: a coefficient is
    /// reported only if no unknown coefficient of either factor feeds it.
    pub fn mul_with(&self, rhs: &LaurentSeries, strategy: Strategy) -> LaurentSeries {
        let precision = (rhs.precision - self.top).min(self.precision - rhs.top);
        let top = self.top + rhs.top;
        let len = (top + precision + 1).max(0) as usize;
        let (a, b) = (self, rhs);
        let coeffs = exec::map_range(strategy.for_len(len), 0, len, |k| {
            let e = top - k as i64;
            let lo = (-a.precision).max(e - b.top);
            let hi = a.top.min(e + b.precision);
            (lo..=hi)
                .filter_map(|x| {
                    let (u, v) = (a.coeff_ref(x)?, b.coeff_ref(e - x)?);
                    (!u.is_zero() && !v.is_zero()).then(|| u * v)
                })
                .sum()
        });
        LaurentSeries { top, coeffs, precision }
    }

    pub fn scale(&self, c: &Rational) -> LaurentSeries {
        LaurentSeries {
            top: self.top,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            precision: self.precision,
        }
    }

    /// Multiplicative inverse. The relative precision (number of known terms
    /// from the leading nonzero one down) is preserved.
    pub fn invert(&self) -> Result<LaurentSeries> {
        let (lead_exp, lead) = self.leading_term().ok_or(Error::InvertZeroSeries)?;
        let lead_inv = lead.recip()?;
        let known = (lead_exp + self.precision + 1) as usize;
        let normalized: Vec<Rational> = (0..known)
            .map(|k| self.coeff_ref(lead_exp - k as i64).expect("inside window") * &lead_inv)
            .collect();
        let mut inv = Vec::with_capacity(known);
        inv.push(Rational::one());
        for k in 1..known {
            let acc: Rational = (1..=k)
                .filter(|&j| !normalized[j].is_zero() && !inv[k - j].is_zero())
                .map(|j| &normalized[j] * &inv[k - j])
                .sum();
            inv.push(-acc);
        }
        Ok(LaurentSeries {
            top: -lead_exp,
            coeffs: inv.into_iter().map(|c| c * &lead_inv).collect(),
            precision: 2 * lead_exp + self.precision,
        })
    }
}

fn poly_coeff(p: &Polynomial, e: i64) -> Rational {
    if e < 0 {
        Rational::zero()
    } else {
        p.coeff(e as usize)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.top - k as i64;
            let sign = match (first, c.is_negative()) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            f.write_str(sign)?;
            first = false;
            let mag = c.abs();
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            match e {
                1 => f.write_str("T")?,
                _ => write!(f, "T^{e}")?,
            }
        }
        let sign = if first { "" } else { " + " };
        write!(f, "{sign}O(T^{})", -self.precision - 1)
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Strategy as Exec;
    use proptest::prelude::*;
    use proptest::strategy::Strategy;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn from_word_examples() {
        // W(1) = abba..., W(2) = aabb... with a = +1, b = -1.
        let s = LaurentSeries::from_word(&[1, -1, -1, 1, -1], 4).unwrap();
        assert_eq!(s.to_string(), "T^-1 - T^-2 - T^-3 + T^-4 + O(T^-5)");
        let s = LaurentSeries::from_word(&[1, 1, -1, -1], 4).unwrap();
        assert_eq!(s.to_string(), "T^-1 + T^-2 - T^-3 - T^-4 + O(T^-5)");
        let s = LaurentSeries::from_word(&[1, 1], 2).unwrap();
        assert_eq!((s.top(), s.precision()), (-1, 2));
        assert_eq!(s.coeffs(), &ints(&[1, 1])[..]);
    }

    #[test]
    fn from_word_errors() {
        let err = LaurentSeries::from_word(&[1, -1], 3).unwrap_err();
        assert!(err.to_string().starts_with("insufficient word prefix"));
        assert_eq!(LaurentSeries::from_word(&[1], 0), Err(Error::InvalidPrecision(0)));
    }

    #[test]
    fn coefficients_below_window_are_unknown() {
        let s = LaurentSeries::from_word(&[1, -1, -1], 3).unwrap();
        assert_eq!(s.coeff(0), Some(q("0")));
        assert_eq!(s.coeff(-3), Some(q("-1")));
        assert_eq!(s.coeff(-4), None);
    }

    #[test]
    fn invert_geometric() {
        // T^-1 (1 + T^-1) known down to T^-8; inverse is T (1 - T^-1 + T^-2 - ...).
        let s = LaurentSeries::new(-1, ints(&[1, 1, 0, 0, 0, 0, 0, 0]), 8).unwrap();
        let inv = s.invert().unwrap();
        assert_eq!(inv.top(), 1);
        assert_eq!(inv.precision(), 6);
        // Oracle: 1/(1+x) = sum (-x)^k.
        let expected: Vec<Rational> = (0..8).map(|k| Rational::from(if k % 2 == 0 { 1 } else { -1 })).collect();
        assert_eq!(inv.coeffs(), &expected[..]);
        assert_eq!(inv.to_string(), "T - 1 + T^-1 - T^-2 + T^-3 - T^-4 + T^-5 - T^-6 + O(T^-7)");
    }

    #[test]
    fn invert_zero_fails() {
        assert_eq!(LaurentSeries::zero(5).invert(), Err(Error::InvertZeroSeries));
        let zeros = LaurentSeries::new(-1, ints(&[0, 0]), 2).unwrap();
        assert_eq!(zeros.invert(), Err(Error::InvertZeroSeries));
    }

    #[test]
    fn sub_self_and_mul_one() {
        let s = LaurentSeries::from_word(&[1, -1, -1, 1, -1, 1], 6).unwrap();
        let diff = s.sub(&s);
        assert!(diff.is_zero());
        assert_eq!(diff.precision(), 6);
        let one = LaurentSeries::from_polynomial(&Polynomial::one(), 10);
        let prod = s.mul(&one);
        assert_eq!(prod.precision(), 6);
        assert_eq!(prod.top(), -1);
        assert_eq!(prod.coeffs(), s.coeffs());
        assert_eq!(prod.sub(&s).leading_term(), None);
    }

    #[test]
    fn mul_narrows_precision() {
        // (T + 1) * s with s known down to T^-4 is known only down to T^-3.
        let s = LaurentSeries::from_word(&[1, -1, -1, 1], 4).unwrap();
        let t1 = LaurentSeries::from_polynomial(&"T + 1".parse().unwrap(), 100);
        let prod = t1.mul(&s);
        assert_eq!(prod.precision(), 3);
        assert_eq!(prod.top(), 0);
        assert_eq!(prod.coeffs(), &ints(&[1, 0, -2, 0])[..]);
    }

    #[test]
    fn rational_function_expansion() {
        let s = LaurentSeries::from_rational_function(&Polynomial::one(), &"T - 1".parse().unwrap(), 5).unwrap();
        assert_eq!(s.top(), -1);
        assert_eq!(s.coeffs(), &ints(&[1, 1, 1, 1, 1])[..]);
        let (num, den) = s.as_fraction();
        assert_eq!(num.to_string(), "T^4 + T^3 + T^2 + T + 1");
        assert_eq!(den.to_string(), "T^5");
    }

    #[test]
    fn polynomial_part() {
        let s = LaurentSeries::new(2, ints(&[3, 0, -1, 5, 7]), 2).unwrap();
        assert_eq!(s.polynomial_part().to_string(), "3*T^2 - 1");
        assert_eq!(LaurentSeries::zero(3).polynomial_part(), Polynomial::zero());
    }

    fn letters() -> impl Strategy<Value = Vec<i8>> {
        proptest::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], 1..80)
    }

    proptest! {
        #[test]
        fn word_round_trip(w in letters()) {
            let s = LaurentSeries::from_word(&w, w.len()).unwrap();
            for (n, &l) in w.iter().enumerate() {
                prop_assert_eq!(s.coeff(-(n as i64) - 1), Some(Rational::from(l)));
            }
            prop_assert_eq!(s.coeff(-(w.len() as i64) - 1), None);
        }

        #[test]
        fn invert_times_self_is_one(w in letters()) {
            let s = LaurentSeries::from_word(&w, w.len()).unwrap();
            let prod = s.mul(&s.invert().unwrap());
            prop_assert!(prod.precision() >= 0);
            let one = LaurentSeries::from_polynomial(&Polynomial::one(), prod.precision());
            prop_assert!(prod.sub(&one).is_zero());
        }

        #[test]
        fn mul_strategies_agree(a in letters(), b in letters()) {
            let a = LaurentSeries::from_word(&a, a.len()).unwrap();
            let b = LaurentSeries::from_word(&b, b.len()).unwrap();
            prop_assert_eq!(a.mul_with(&b, Exec::Sequential), a.mul_with(&b, Exec::Parallel));
        }
    }
}
