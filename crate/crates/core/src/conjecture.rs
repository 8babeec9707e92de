//! The predicted expansion `θ_i = [0, a_{i,1}, a_{i,2}, ...]` with
//! `a_{i,n} = λ_{i,n} b_{i,n}`.
//!
//! Leading coefficients `λ_{i,n}` come from the memoized recursion
//!
//! * `λ_1 = 1`, `λ_2 = 1/2`
//! * `λ_{4k-3} = λ_{2k-1}`
//! * `λ_{4k} = -(2 + u_1 + ... + u_{k-1})^-1`
//! * `λ_{4k-2} = -λ_{4k}`
//! * `λ_{4k-1} = λ_{2k} / (λ_{4k-2} λ_{4k})`
//!
//! with weights `u_j = 2 λ_{2j+1}` for `i = 1` and
//! `u_j = 2 λ_{2j+1} P_{i,ν2(j)+1}(1)` for `i >= 2`. Every index read while
//! computing `λ_n` is smaller than `n`.
//!
//! The unitary parts are `b_{1,n} = T - (-1)^n` and, for `i >= 2`,
//! `b_{i,1} = T - 1`, `b_{i,2k} = (T^i - 1)/(T - 1)`,
//! `b_{i,2k+1} = (T - 1) P_{i,ν2(k)+1}`.

use crate::error::{Error, Result};
use crate::exactalg::{Polynomial, Rational};
use crate::words::FamilyIndex;

/// Default cap on the number of coefficients of a materialized `P_{i,m}`.
pub const DEFAULT_DEGREE_BUDGET: usize = 1_000_000;

/// 2-adic valuation of `k >= 1`.
pub fn nu2(k: u64) -> Result<u32> {
    if k == 0 {
        return Err(Error::ValuationOfZero);
    }
    Ok(k.trailing_zeros())
}

fn require_family_at_least_two(i: FamilyIndex) -> Result<()> {
    if i.get() < 2 {
        return Err(Error::InvalidFamilyIndex { min: 2, got: i.get() });
    }
    Ok(())
}

/// Lazily materialized `P_{i,1}, P_{i,2}, ...` for one `i >= 2`.
#[derive(Debug, Clone)]
pub struct PPolynomialTable {
    i: FamilyIndex,
    budget: usize,
    table: Vec<Polynomial>,
}

impl PPolynomialTable {
    pub fn new(i: FamilyIndex) -> Result<Self> {
        Self::with_budget(i, DEFAULT_DEGREE_BUDGET)
    }

    pub fn with_budget(i: FamilyIndex, budget: usize) -> Result<Self> {
        require_family_at_least_two(i)?;
        Ok(PPolynomialTable { i, budget, table: Vec::new() })
    }

    pub fn family(&self) -> FamilyIndex {
        self.i
    }

    /// `deg P_{i,m} = (2i)^m (i - 1)`.
    pub fn degree(i: FamilyIndex, m: u32) -> u128 {
        let i = u128::from(i.get());
        (2 * i).saturating_pow(m).saturating_mul(i - 1)
    }

    /// `P_{i,m}` for `m >= 1`, materializing any missing lower entries.
    pub fn get(&mut self, m: u32) -> Result<&Polynomial> {
        if m == 0 {
            return Err(Error::ZeroIndex);
        }
        while self.table.len() < m as usize {
            let next = self.table.len() as u32 + 1;
            let needed = Self::degree(self.i, next).saturating_add(1);
            if needed > self.budget as u128 {
                return Err(Error::DegreeBudgetExceeded {
                    i: self.i.get(),
                    m: next,
                    needed,
                    budget: self.budget,
                });
            }
            let poly = match self.table.last() {
                None => self.first()?,
                Some(prev) => self.step(prev, next)?,
            };
            if !poly.is_integral() {
                return Err(Error::PNotIntegral { i: self.i.get(), m: next });
            }
            self.table.push(poly);
        }
        Ok(&self.table[m as usize - 1])
    }

    /// `P_{i,1} = (T^{2i^2} - 1) / (T^{2i} - 1)`, which must divide exactly.
    fn first(&self) -> Result<Polynomial> {
        let i = self.i.get() as usize;
        Polynomial::t_pow_minus_one(2 * i * i)
            .exact_div(&Polynomial::t_pow_minus_one(2 * i))?
            .ok_or(Error::PRecursionInexact { i: self.i.get(), m: 1 })
    }

    /// `P_{m+1}(T) = P_m(T^{2i}) + 2 (P_m(T^{2i}) - P_m(1)) / (T^i - 1)`.
    fn step(&self, prev: &Polynomial, next: u32) -> Result<Polynomial> {
        let i = self.i.get() as usize;
        let lifted = prev.compose_power(2 * i)?;
        let shifted = &lifted - &Polynomial::constant(prev.eval(&Rational::one()));
        let quot = shifted
            .exact_div(&Polynomial::t_pow_minus_one(i))?
            .ok_or(Error::PRecursionInexact { i: self.i.get(), m: next })?;
        Ok(&lifted + &quot.scale(&Rational::from(2)))
    }

    pub fn value_at_one(&mut self, m: u32) -> Result<Rational> {
        Ok(self.get(m)?.eval(&Rational::one()))
    }

    pub fn derivative_at_one(&mut self, m: u32) -> Result<Rational> {
        Ok(self.get(m)?.derivative().eval(&Rational::one()))
    }
}

/// Memoized leading coefficients `λ_{i,1}, λ_{i,2}, ...`.
#[derive(Debug, Clone)]
pub struct LambdaSequence {
    i: FamilyIndex,
    values: Vec<Rational>,
    /// `partial_u_sums[k] = u_1 + ... + u_k`, with the empty sum at index 0.
    partial_u_sums: Vec<Rational>,
}

impl LambdaSequence {
    pub fn new(i: FamilyIndex) -> Self {
        LambdaSequence {
            i,
            values: vec![Rational::one(), Rational::new(1, 2).expect("nonzero")],
            partial_u_sums: vec![Rational::zero()],
        }
    }

    pub fn family(&self) -> FamilyIndex {
        self.i
    }

    /// Already computed values, `values()[n - 1] = λ_n`.
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `λ_n`, extending the table with `weight(j)` supplying the factor
    /// multiplying `2 λ_{2j+1}` in `u_j`.
    pub fn get_with(&mut self, n: u64, mut weight: impl FnMut(u64) -> Result<Rational>) -> Result<Rational> {
        if n == 0 {
            return Err(Error::ZeroIndex);
        }
        while (self.values.len() as u64) < n {
            let next = self.values.len() as u64 + 1;
            let value = self.compute(next, &mut weight)?;
            self.values.push(value);
        }
        Ok(self.values[n as usize - 1].clone())
    }

    fn at(&self, n: u64) -> &Rational {
        &self.values[n as usize - 1]
    }

    /// `λ_{4k} = -(2 + S_{k-1})^-1`.
    fn lambda_4k(&mut self, k: u64, weight: &mut impl FnMut(u64) -> Result<Rational>) -> Result<Rational> {
        while (self.partial_u_sums.len() as u64) < k {
            let j = self.partial_u_sums.len() as u64;
            let u = Rational::from(2) * self.at(2 * j + 1) * weight(j)?;
            let sum = self.partial_u_sums.last().expect("seeded") + &u;
            self.partial_u_sums.push(sum);
        }
        let denom = Rational::from(2) + &self.partial_u_sums[k as usize - 1];
        let inv = denom.recip().map_err(|_| Error::LambdaDegenerate(4 * k))?;
        Ok(-inv)
    }

    fn compute(&mut self, n: u64, weight: &mut impl FnMut(u64) -> Result<Rational>) -> Result<Rational> {
        let k = n.div_ceil(4);
        match n % 4 {
            1 => Ok(self.at(2 * k - 1).clone()),
            2 => Ok(-self.lambda_4k(k, weight)?),
            0 => self.lambda_4k(k, weight),
            _ => {
                let l4k = self.lambda_4k(k, weight)?;
                let denom = &(-&l4k) * &l4k;
                self.at(2 * k)
                    .checked_div(&denom)
                    .map_err(|_| Error::LambdaDegenerate(n))
            }
        }
    }
}

/// Per-family state for generating the predicted expansion.
#[derive(Debug, Clone)]
pub struct Conjecture {
    i: FamilyIndex,
    lambdas: LambdaSequence,
    ppolys: Option<PPolynomialTable>,
}

impl Conjecture {
    pub fn new(i: FamilyIndex) -> Self {
        Self::with_budget(i, DEFAULT_DEGREE_BUDGET)
    }

    pub fn with_budget(i: FamilyIndex, budget: usize) -> Self {
        Conjecture {
            i,
            lambdas: LambdaSequence::new(i),
            ppolys: PPolynomialTable::with_budget(i, budget).ok(),
        }
    }

    pub fn family(&self) -> FamilyIndex {
        self.i
    }

    pub fn lambda_sequence(&self) -> &LambdaSequence {
        &self.lambdas
    }

    pub fn p_table(&mut self) -> Result<&mut PPolynomialTable> {
        self.ppolys
            .as_mut()
            .ok_or(Error::InvalidFamilyIndex { min: 2, got: self.i.get() })
    }

    pub fn lambda(&mut self, n: u64) -> Result<Rational> {
        let ppolys = &mut self.ppolys;
        self.lambdas.get_with(n, |j| match ppolys {
            None => Ok(Rational::one()),
            Some(table) => table.value_at_one(nu2(j)? + 1),
        })
    }

    pub fn b_poly(&mut self, n: u64) -> Result<Polynomial> {
        if n == 0 {
            return Err(Error::ZeroIndex);
        }
        let t_minus_one = Polynomial::from_ints(&[-1, 1]);
        let Some(table) = self.ppolys.as_mut() else {
            return Ok(if n.is_multiple_of(2) { t_minus_one } else { Polynomial::from_ints(&[1, 1]) });
        };
        if n == 1 {
            return Ok(t_minus_one);
        }
        if n.is_multiple_of(2) {
            let ones = vec![1; self.i.get() as usize];
            return Ok(Polynomial::from_ints(&ones));
        }
        let m = nu2((n - 1) / 2)? + 1;
        Ok(&t_minus_one * table.get(m)?)
    }

    pub fn quotient(&mut self, n: u64) -> Result<Polynomial> {
        let lambda = self.lambda(n)?;
        Ok(self.b_poly(n)?.scale(&lambda))
    }
}

pub fn p_poly(i: FamilyIndex, m: u32) -> Result<Polynomial> {
    PPolynomialTable::new(i)?.get(m).cloned()
}

pub fn b_poly(i: FamilyIndex, n: u64) -> Result<Polynomial> {
    Conjecture::new(i).b_poly(n)
}

pub fn lambda_coeff(i: FamilyIndex, n: u64) -> Result<Rational> {
    Conjecture::new(i).lambda(n)
}

pub fn predicted_quotient(i: FamilyIndex, n: u64) -> Result<Polynomial> {
    Conjecture::new(i).quotient(n)
}

/// Degree of `a_{i,n}` read off the b-polynomial laws, without building it.
pub fn predicted_degree(i: FamilyIndex, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    let i = u64::from(i.get());
    Ok(match (i, n) {
        (1, _) | (_, 1) => 1,
        _ if n.is_multiple_of(2) => i - 1,
        _ => {
            let e = nu2((n - 1) / 2)? + 1;
            1 + (2 * i).saturating_pow(e).saturating_mul(i - 1)
        }
    })
}

/// `(P_{i,m}(1), P'_{i,m}(1))` for `m = 1..=m_max`, checking
/// `P_{i,m+1}(1) = P_{i,m}(1) + 4 P'_{i,m}(1)` along the way.
pub fn p_values_at_one(i: FamilyIndex, m_max: u32) -> Result<Vec<(Rational, Rational)>> {
    let mut table = PPolynomialTable::new(i)?;
    let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(m_max as usize);
    for m in 1..=m_max {
        let pair = (table.value_at_one(m)?, table.derivative_at_one(m)?);
        if let Some((v, d)) = out.last() {
            if pair.0 != v + &(Rational::from(4) * d) {
                return Err(Error::PValueRecurrence { m: m - 1 });
            }
        }
        out.push(pair);
    }
    Ok(out)
}
