//! Continued fractions over Q[T] and Q((1/T)).
//!
//! A series known down to `T^-N` agrees with the true element modulo
//! `T^-(N+1)`. Two such elements share every convergent `P/Q` with
//! `2 deg Q <= N`, so the quotients `a_1..a_m` are trusted when
//! `2 (deg a_1 + ... + deg a_m) <= N - 1`. Quotients past that bound are
//! never emitted.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{Degree, LaurentSeries, Polynomial};
use crate::exec::Strategy;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    pub a0: Polynomial,
    /// `a_1, a_2, ...`, each of degree at least one.
    pub quotients: Vec<Polynomial>,
}

impl ContinuedFraction {
    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    pub fn degree_sum(&self, count: usize) -> usize {
        self.quotients[..count]
            .iter()
            .filter_map(|a| a.degree().finite())
            .sum()
    }

    /// `[a0, a1, ...]` rendered as polynomial text.
    pub fn to_text_list(&self) -> Vec<String> {
        std::iter::once(&self.a0)
            .chain(&self.quotients)
            .map(ToString::to_string)
            .collect()
    }

    /// The rational function `P_k / Q_k` of the last convergent.
    pub fn fold(&self) -> ConvergentPair {
        convergents(self, self.len())
            .expect("k equals the quotient count")
            .pop()
            .expect("at least the zeroth convergent")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedExpansion {
    pub cf: ContinuedFraction,
    pub certified_count: usize,
    pub precision_used: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergentPair {
    pub p: Polynomial,
    pub q: Polynomial,
}

pub fn cf_of_rational(num: &Polynomial, den: &Polynomial, max_quotients: usize) -> Result<ContinuedFraction> {
    cf_of_rational_with(num, den, max_quotients, Strategy::default())
}

/// Euclidean algorithm on `num / den`, stopping at a zero remainder or after
/// `max_quotients` quotients.
pub fn cf_of_rational_with(
    num: &Polynomial,
    den: &Polynomial,
    max_quotients: usize,
    strategy: Strategy,
) -> Result<ContinuedFraction> {
    euclid(num, den, strategy, |quotients, _| quotients.len() < max_quotients)
}

/// Runs the Euclidean algorithm while `keep(accepted, next)` approves the
/// next quotient.
fn euclid(
    num: &Polynomial,
    den: &Polynomial,
    strategy: Strategy,
    mut keep: impl FnMut(&[Polynomial], &Polynomial) -> bool,
) -> Result<ContinuedFraction> {
    let (a0, mut rem) = num.divrem_with(den, strategy)?;
    let mut prev = den.clone();
    let mut quotients = Vec::new();
    while !rem.is_zero() {
        let (q, r) = prev.divrem_with(&rem, strategy)?;
        if !keep(&quotients, &q) {
            break;
        }
        quotients.push(q);
        prev = std::mem::replace(&mut rem, r);
    }
    Ok(ContinuedFraction { a0, quotients })
}

pub fn cf_of_series(s: &LaurentSeries) -> Result<CertifiedExpansion> {
    cf_of_series_with(s, Strategy::default())
}

/// Expands `s = p / T^N` and keeps the certified prefix only.
pub fn cf_of_series_with(s: &LaurentSeries, strategy: Strategy) -> Result<CertifiedExpansion> {
    let precision = s.precision();
    if precision < 1 {
        return Err(Error::InvalidPrecision(precision));
    }
    if s.is_zero() {
        return Ok(CertifiedExpansion {
            cf: ContinuedFraction {
                a0: Polynomial::zero(),
                quotients: Vec::new(),
            },
            certified_count: 0,
            precision_used: precision,
        });
    }
    let (num, den) = s.as_fraction();
    let budget = (precision - 1) as usize;
    let mut used = 0usize;
    let cf = euclid(&num, &den, strategy, |_, q| {
        let d = q.degree().finite().unwrap_or(0);
        if 2 * (used + d) <= budget {
            used += d;
            true
        } else {
            false
        }
    })?;
    Ok(CertifiedExpansion {
        certified_count: cf.len(),
        cf,
        precision_used: precision,
    })
}

/// `(P_j, Q_j)` for `j = 0..=k` from `P_j = a_j P_{j-1} + P_{j-2}` and the
/// same for `Q`, seeded with `P_{-1} = 1, P_0 = a0, Q_{-1} = 0, Q_0 = 1`.
pub fn convergents(cf: &ContinuedFraction, k: usize) -> Result<Vec<ConvergentPair>> {
    if k > cf.len() {
        return Err(Error::ConvergentIndex {
            requested: k,
            available: cf.len(),
        });
    }
    let mut out = Vec::with_capacity(k + 1);
    let (mut p_prev, mut q_prev) = (Polynomial::one(), Polynomial::zero());
    let (mut p, mut q) = (cf.a0.clone(), Polynomial::one());
    out.push(ConvergentPair { p: p.clone(), q: q.clone() });
    for a in &cf.quotients[..k] {
        let p_next = &(a * &p) + &p_prev;
        let q_next = &(a * &q) + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        out.push(ConvergentPair { p: p.clone(), q: q.clone() });
    }
    Ok(out)
}

/// Exponent of the leading term of `Q s - P`.
pub fn approximation_order(s: &LaurentSeries, pair: &ConvergentPair) -> Result<i64> {
    let deg_q = match pair.q.degree() {
        Degree::NegInfinity => return Err(Error::DivisionByZeroPolynomial),
        Degree::Finite(d) => d as i64,
    };
    // Polynomials are exact, so give them more precision than the product
    // can use; the result is then limited by `s` alone.
    let wide = s.precision() + deg_q + s.top().abs() + 1;
    let qs = LaurentSeries::from_polynomial(&pair.q, wide).mul(s);
    let p = LaurentSeries::from_polynomial(&pair.p, wide);
    let diff = qs.sub(&p);
    diff.leading_term()
        .map(|(e, _)| e)
        .ok_or(Error::OrderUnresolved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rational;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn theta1(n: usize) -> LaurentSeries {
        let letters: Vec<i8> = (0..n).map(|k| if (k as u32).count_ones().is_multiple_of(2) { 1 } else { -1 }).collect();
        LaurentSeries::from_word(&letters, n).unwrap()
    }

    #[test]
    fn rational_examples() {
        let cf = cf_of_rational(&p("T^2 + 1"), &p("T"), 10).unwrap();
        assert_eq!(cf.to_text_list(), ["T", "T"]);
        let cf = cf_of_rational(&p("1"), &p("T - 1"), 10).unwrap();
        assert_eq!(cf.to_text_list(), ["0", "T - 1"]);
        let cf = cf_of_rational(&p("T^2 + 1"), &p("T"), 0).unwrap();
        assert!(cf.is_empty());
        assert_eq!(cf_of_rational(&p("1"), &Polynomial::zero(), 3), Err(Error::DivisionByZeroPolynomial));
    }

    #[test]
    fn theta1_truncation_prefix() {
        // θ1 truncated at N = 8 as p(T) / T^8, no certification.
        let (num, den) = theta1(8).as_fraction();
        let cf = cf_of_rational(&num, &den, 2).unwrap();
        assert_eq!(cf.to_text_list(), ["0", "T + 1", "1/2*T - 1/2"]);
    }

    #[test]
    fn theta1_certified_at_nine() {
        let exp = cf_of_series(&theta1(9)).unwrap();
        assert_eq!(exp.certified_count, 4);
        assert_eq!(exp.precision_used, 9);
        assert_eq!(
            exp.cf.to_text_list(),
            ["0", "T + 1", "1/2*T - 1/2", "-2*T - 2", "-1/2*T + 1/2"]
        );
    }

    #[test]
    fn zero_series_is_vacuous() {
        for n in [1, 5, 40] {
            let exp = cf_of_series(&LaurentSeries::zero(n)).unwrap();
            assert_eq!(exp.certified_count, 0);
            assert!(exp.cf.a0.is_zero());
        }
        assert!(cf_of_series(&LaurentSeries::zero(0)).is_err());
    }

    #[test]
    fn series_with_integral_part() {
        // T + θ1 known to T^-9: same quotients, a0 = T.
        let s = LaurentSeries::from_polynomial(&p("T"), 9).add(&theta1(9));
        let exp = cf_of_series(&s).unwrap();
        assert_eq!(exp.cf.a0, p("T"));
        assert_eq!(exp.certified_count, 4);
    }

    #[test]
    fn convergent_examples() {
        let cf = ContinuedFraction { a0: Polynomial::zero(), quotients: vec![p("T + 1")] };
        let cv = convergents(&cf, 1).unwrap();
        assert_eq!(cv[1], ConvergentPair { p: p("1"), q: p("T + 1") });

        let cf = ContinuedFraction { a0: p("T"), quotients: vec![p("T")] };
        let last = cf.fold();
        assert_eq!((last.p, last.q), (p("T^2 + 1"), p("T")));

        assert!(matches!(convergents(&cf, 2), Err(Error::ConvergentIndex { .. })));
    }

    #[test]
    fn convergent_degrees_add_up() {
        let exp = cf_of_series(&theta1(60)).unwrap();
        let cv = convergents(&exp.cf, exp.certified_count).unwrap();
        for (k, pair) in cv.iter().enumerate() {
            assert_eq!(pair.q.degree(), exp.cf.degree_sum(k));
        }
    }

    #[test]
    fn order_of_first_convergent() {
        let s = theta1(9);
        let pair = ConvergentPair { p: p("1"), q: p("T + 1") };
        assert_eq!(approximation_order(&s, &pair).unwrap(), -2);
    }

    #[test]
    fn order_of_exact_fraction_is_unresolved() {
        // s = 1 / (T - 1) exactly: Q s - P vanishes on the whole known window.
        let s = LaurentSeries::from_rational_function(&p("1"), &p("T - 1"), 12).unwrap();
        let pair = ConvergentPair { p: p("1"), q: p("T - 1") };
        assert_eq!(approximation_order(&s, &pair), Err(Error::OrderUnresolved));
    }

    #[test]
    fn certified_convergents_are_best_approximations() {
        let s = theta1(80);
        let exp = cf_of_series(&s).unwrap();
        let cv = convergents(&exp.cf, exp.certified_count).unwrap();
        for (k, pair) in cv.iter().enumerate().take(exp.certified_count).skip(1) {
            let order = approximation_order(&s, pair).unwrap();
            let deg_next = exp.cf.quotients[k].degree().finite().unwrap() as i64;
            let deg_q = pair.q.degree().finite().unwrap() as i64;
            assert_eq!(order, -deg_q - deg_next, "k={k}");
        }
    }

    #[test]
    fn non_convergent_denominators_do_worse() {
        use rand::{Rng, SeedableRng};
        let s = theta1(120);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let d = rng.gen_range(2..=8usize);
            let mut coeffs: Vec<Rational> = (0..d).map(|_| Rational::from(rng.gen_range(-3i64..=3))).collect();
            coeffs.push(Rational::one());
            let q = Polynomial::new(coeffs);
            let qs = LaurentSeries::from_polynomial(&q, 200).mul(&s);
            let pair = ConvergentPair { p: qs.polynomial_part(), q: q.clone() };
            let order = approximation_order(&s, &pair).unwrap();
            // Only a convergent denominator can push the order below -deg Q.
            let exp = cf_of_series(&s).unwrap();
            let is_convergent = convergents(&exp.cf, exp.certified_count)
                .unwrap()
                .iter()
                .any(|c| c.q.split_leading().map(|x| x.1) == q.split_leading().map(|x| x.1));
            if !is_convergent {
                assert!(order >= -(d as i64), "order {order} for {q}");
            }
        }
    }
}
