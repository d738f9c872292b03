//! Truncated infinite products of binomial factors.

use std::fmt;
use std::sync::Arc;

use super::coeff::Coeff;
use super::series::{Grading, Monomial, Series};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    Numerator,
    Denominator,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Indices {
    /// `j = start, start+1, ...`; degrees must increase strictly in `j`.
    From(u64),
    /// A finite index set, e.g. the members of a bound set.
    List(Vec<u64>),
}

/// One family of factors `(1 + sign·m(j))`, taken over an index range, in
/// the numerator or the denominator.
#[derive(Clone)]
pub struct FactorSpec {
    pub label: String,
    /// `+1` for `(1 + m)`, `-1` for `(1 - m)`.
    pub sign: i64,
    pub placement: Placement,
    pub indices: Indices,
    monomial: Arc<dyn Fn(u64) -> Monomial + Send + Sync>,
}

impl fmt::Debug for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FactorSpec")
            .field("label", &self.label)
            .field("sign", &self.sign)
            .field("placement", &self.placement)
            .field("indices", &self.indices)
            .finish()
    }
}

impl FactorSpec {
    pub fn new<F>(
        label: impl Into<String>,
        sign: i64,
        placement: Placement,
        indices: Indices,
        monomial: F,
    ) -> Self
    where
        F: Fn(u64) -> Monomial + Send + Sync + 'static,
    {
        Self {
            label: label.into(),
            sign,
            placement,
            indices,
            monomial: Arc::new(monomial),
        }
    }

    pub fn monomial(&self, j: u64) -> Monomial {
        (self.monomial)(j)
    }

    /// `(base; step)_∞ = ∏_{j>=0} (1 - base·step^j)`; `negated` gives
    /// `(-base; step)_∞`.
    pub fn pochhammer(
        label: impl Into<String>,
        base: Monomial,
        step: Monomial,
        negated: bool,
        placement: Placement,
    ) -> Self {
        let sign = if negated { 1 } else { -1 };
        Self::new(label, sign, placement, Indices::From(0), move |j| {
            base * step.pow(j as i32)
        })
    }

    fn apply(&self, s: &mut Series, trunc: u32) -> Result<()> {
        let limit = i64::from(trunc);
        let coeff = Coeff::from(self.sign);
        let one_factor = |j: u64, m: Monomial, s: &mut Series| -> Result<()> {
            match self.placement {
                Placement::Numerator => s.mul_binomial(m, &coeff),
                Placement::Denominator => {
                    if s.degree(&m) <= 0 {
                        return Err(Error::NonUnitDenominator {
                            label: self.label.clone(),
                            index: j,
                        });
                    }
                    // 1/(1 + sign·m) = 1/(1 - (-sign)·m)
                    s.div_one_minus(m, &Coeff::from(-self.sign))?;
                }
            }
            Ok(())
        };
        match &self.indices {
            Indices::From(start) => {
                let mut prev: Option<i64> = None;
                let mut j = *start;
                loop {
                    let m = self.monomial(j);
                    let deg = s.degree(&m);
                    if prev.is_some_and(|p| deg <= p) {
                        return Err(Error::NonIncreasingDegree {
                            label: self.label.clone(),
                            index: j,
                        });
                    }
                    if deg > limit {
                        return Ok(());
                    }
                    one_factor(j, m, s)?;
                    prev = Some(deg);
                    j += 1;
                }
            }
            Indices::List(list) => {
                for &j in list {
                    let m = self.monomial(j);
                    if s.degree(&m) > limit {
                        continue;
                    }
                    one_factor(j, m, s)?;
                }
                Ok(())
            }
        }
    }
}

/// Multiplies out every factor family up to the truncation degree, in the
/// order given.
pub fn product_series(factors: &[FactorSpec], grading: Grading, trunc: u32) -> Result<Series> {
    let mut s = Series::one(grading, trunc);
    for f in factors {
        f.apply(&mut s, trunc)?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_product_is_one() {
        assert_eq!(
            product_series(&[], Grading::Q, 5).unwrap(),
            Series::one(Grading::Q, 5)
        );
    }

    #[test]
    fn single_geometric_factor() {
        let f = FactorSpec::new(
            "1/(1-q)",
            -1,
            Placement::Denominator,
            Indices::List(vec![1]),
            |_| Monomial::xq(0, 1),
        );
        let s = product_series(&[f], Grading::Q, 4).unwrap();
        for k in 0..=4 {
            assert_eq!(s.coeff(&Monomial::xq(0, k)), 1);
        }
        assert_eq!(s.len(), 5);
    }

    #[test]
    fn euler_pentagonal() {
        // (q;q)_∞ = 1 - q - q^2 + q^5 + q^7 - q^12 - q^15 + ...
        let f = FactorSpec::pochhammer(
            "(q;q)",
            Monomial::xq(0, 1),
            Monomial::xq(0, 1),
            false,
            Placement::Numerator,
        );
        let s = product_series(&[f], Grading::Q, 15).unwrap();
        let nonzero: Vec<(i32, i64)> = s
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| (m.0[1], c.to_i64().unwrap()))
            .collect();
        assert_eq!(
            nonzero,
            vec![(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1), (15, -1)]
        );
    }

    #[test]
    fn rejects_bad_factors() {
        let flat = FactorSpec::new("flat", -1, Placement::Numerator, Indices::From(1), |_| {
            Monomial::xq(0, 2)
        });
        assert!(matches!(
            product_series(&[flat], Grading::Q, 10),
            Err(Error::NonIncreasingDegree { index: 2, .. })
        ));
        let unit = FactorSpec::new(
            "1/(1-x)",
            -1,
            Placement::Denominator,
            Indices::List(vec![1]),
            |_| Monomial::xq(1, 0),
        );
        assert!(matches!(
            product_series(&[unit], Grading::Q, 10),
            Err(Error::NonUnitDenominator { .. })
        ));
    }
}
