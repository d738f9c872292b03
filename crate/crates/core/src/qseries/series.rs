//! Sparse truncated power series in up to four variables.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::coeff::Coeff;
use crate::error::{Error, Result};

/// Exponent vector over four variable slots.
///
/// Four-variable series use the slots for `(a, b, c, d)` and all exponents
/// are non-negative. Two-variable series in `(a, b)` leave the last two
/// slots at zero. Series specialized to `(x, q)` store the `x` exponent,
/// which may be negative, in slot 0 and the `q` exponent in slot 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct Monomial(pub [i32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn abcd(a: i32, b: i32, c: i32, d: i32) -> Self {
        Monomial([a, b, c, d])
    }

    pub fn ab(a: i32, b: i32) -> Self {
        Monomial([a, b, 0, 0])
    }

    pub fn xq(x: i32, q: i32) -> Self {
        Monomial([x, q, 0, 0])
    }

    pub fn exps(&self) -> [i32; 4] {
        self.0
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| i64::from(e)).sum()
    }

    pub fn pow(self, k: i32) -> Monomial {
        Monomial(self.0.map(|e| e * k))
    }
}

impl std::ops::Mul for Monomial {
    type Output = Monomial;

    // Exponents add under multiplication.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, other: Monomial) -> Monomial {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(other.0) {
            *x += y;
        }
        Monomial(e)
    }
}

/// Degree weights per slot; truncation keeps terms of weighted degree `<= N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Grading(pub [u32; 4]);

impl Grading {
    /// Total degree in all four slots.
    pub const TOTAL: Grading = Grading([1, 1, 1, 1]);
    /// Degree in `q` (slot 1) for `(x, q)` series.
    pub const Q: Grading = Grading([0, 1, 0, 0]);

    pub fn degree(&self, m: &Monomial) -> i64 {
        self.0
            .iter()
            .zip(m.0)
            .map(|(&w, e)| i64::from(w) * i64::from(e))
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    grading: Grading,
    trunc: u32,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Series {
    pub fn zero(grading: Grading, trunc: u32) -> Self {
        Self {
            grading,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(grading: Grading, trunc: u32) -> Self {
        Self::zero(grading, trunc).with_term(Monomial::ONE, Coeff::ONE)
    }

    pub fn with_term(mut self, m: Monomial, c: Coeff) -> Self {
        self.add_term(m, c);
        self
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn truncation(&self) -> u32 {
        self.trunc
    }

    pub fn degree(&self, m: &Monomial) -> i64 {
        self.grading.degree(m)
    }

    fn in_range(&self, m: &Monomial) -> bool {
        self.degree(m) <= i64::from(self.trunc)
    }

    /// Adds `c·m`; terms above the truncation degree are discarded.
    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() || !self.in_range(&m) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                let sum = &*slot + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or(Coeff::ZERO)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    /// Terms ordered by graded degree, then lexicographically by exponents.
    pub fn sorted_terms(&self) -> Vec<(Monomial, Coeff)> {
        let mut out: Vec<(Monomial, Coeff)> =
            self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        out.sort_by_key(|(m, _)| (self.degree(m), *m));
        out
    }

    fn check_compatible(&self, other: &Series) -> Result<()> {
        if self.grading != other.grading {
            return Err(Error::GradingMismatch);
        }
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch {
                left: self.trunc,
                right: other.trunc,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Series {
        let mut out = Series::zero(self.grading, self.trunc);
        for (m, c) in &self.terms {
            out.terms.insert(*m, -c);
        }
        out
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.neg())
    }

    /// Truncated product.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_compatible(other)?;
        let mut out = Series::zero(self.grading, self.trunc);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(*ma * *mb, ca * cb);
            }
        }
        Ok(out)
    }

    /// `self · c · m`, truncated.
    pub fn shifted(&self, m: Monomial, c: &Coeff) -> Series {
        let mut out = Series::zero(self.grading, self.trunc);
        for (mon, coeff) in &self.terms {
            out.add_term(*mon * m, coeff * c);
        }
        out
    }

    /// Multiplies in place by `1 + c·m`.
    pub fn mul_binomial(&mut self, m: Monomial, c: &Coeff) {
        let shifted = self.shifted(m, c);
        for (mon, coeff) in shifted.terms {
            self.add_term(mon, coeff);
        }
    }

    /// Multiplies in place by `1 / (1 - c·m)`; `m` must have positive degree.
    pub fn div_one_minus(&mut self, m: Monomial, c: &Coeff) -> Result<()> {
        if self.degree(&m) <= 0 {
            return Err(Error::NonUnitDenominator {
                label: format!("{m:?}"),
                index: 0,
            });
        }
        // r = s + c·m·r, accumulated one power of m at a time.
        let mut layer = self.clone();
        loop {
            layer = layer.shifted(m, c);
            if layer.is_empty() {
                return Ok(());
            }
            for (mon, coeff) in &layer.terms {
                self.add_term(*mon, coeff.clone());
            }
        }
    }

    /// Drops terms above a lower truncation degree.
    pub fn truncate(&self, trunc: u32) -> Series {
        let mut out = Series::zero(self.grading, trunc.min(self.trunc));
        for (m, c) in &self.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

/// Monomial substitution `slot_i ↦ images[i]` into a series with grading
/// `target`. Each image must have target degree at least the source weight
/// of its slot, so the truncated result is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Substitution {
    pub images: [Monomial; 4],
    pub target: Grading,
}

impl Substitution {
    /// `(a, b, c, d) = (xq, xq, x⁻¹q, x⁻¹q)`: x tracks the alternating sum.
    pub const ALT_SUM: Substitution = Substitution {
        images: [
            Monomial([1, 1, 0, 0]),
            Monomial([1, 1, 0, 0]),
            Monomial([-1, 1, 0, 0]),
            Monomial([-1, 1, 0, 0]),
        ],
        target: Grading::Q,
    };

    /// `(a, b, c, d) = (xq, x⁻¹q, xq, x⁻¹q)`: x tracks the number of odd parts.
    pub const ODD_COUNT: Substitution = Substitution {
        images: [
            Monomial([1, 1, 0, 0]),
            Monomial([-1, 1, 0, 0]),
            Monomial([1, 1, 0, 0]),
            Monomial([-1, 1, 0, 0]),
        ],
        target: Grading::Q,
    };

    /// `(a, b, c, d) ↦ (a, a, b, b)`.
    pub const AABB: Substitution = Substitution {
        images: [
            Monomial([1, 0, 0, 0]),
            Monomial([1, 0, 0, 0]),
            Monomial([0, 1, 0, 0]),
            Monomial([0, 1, 0, 0]),
        ],
        target: Grading::TOTAL,
    };

    /// `(a, b, c, d) ↦ (a, b, a, b)`.
    pub const ABAB: Substitution = Substitution {
        images: [
            Monomial([1, 0, 0, 0]),
            Monomial([0, 1, 0, 0]),
            Monomial([1, 0, 0, 0]),
            Monomial([0, 1, 0, 0]),
        ],
        target: Grading::TOTAL,
    };

    pub fn apply_monomial(&self, m: &Monomial) -> Monomial {
        m.0.iter()
            .zip(self.images)
            .fold(Monomial::ONE, |acc, (&e, img)| acc * img.pow(e))
    }

    pub fn apply(&self, s: &Series) -> Result<Series> {
        for (var, img) in self.images.iter().enumerate() {
            if self.target.degree(img) < i64::from(s.grading.0[var]) {
                return Err(Error::DegreeLoweringSubstitution { var });
            }
        }
        let mut out = Series::zero(self.target, s.trunc);
        for (m, c) in &s.terms {
            out.add_term(self.apply_monomial(m), c.clone());
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum SeriesComparison {
    Equal,
    Differs {
        monomial: Monomial,
        left: Coeff,
        right: Coeff,
    },
}

impl SeriesComparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, SeriesComparison::Equal)
    }
}

/// Exact coefficientwise comparison; reports the lowest differing monomial in
/// `(degree, exponents)` order.
pub fn series_equal(left: &Series, right: &Series) -> Result<SeriesComparison> {
    left.check_compatible(right)?;
    let mut keys: Vec<&Monomial> = left.terms.keys().chain(right.terms.keys()).collect();
    keys.sort_by_key(|m| (left.degree(m), **m));
    keys.dedup();
    for m in keys {
        let (l, r) = (left.coeff(m), right.coeff(m));
        if l != r {
            return Ok(SeriesComparison::Differs {
                monomial: *m,
                left: l,
                right: r,
            });
        }
    }
    Ok(SeriesComparison::Equal)
}

impl fmt::Display for Series {
    /// Human-readable sum in ascending degree, e.g. `1 + a + a^2 b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: [&str; 4] = if self.grading == Grading::Q {
            ["x", "q", "_", "_"]
        } else {
            ["a", "b", "c", "d"]
        };
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            let vars: Vec<String> =
                m.0.iter()
                    .zip(names)
                    .filter(|(e, _)| **e != 0)
                    .map(|(&e, n)| {
                        if e == 1 {
                            n.to_string()
                        } else {
                            format!("{n}^{e}")
                        }
                    })
                    .collect();
            match (vars.is_empty(), c.to_i64()) {
                (true, _) => write!(f, "{c}")?,
                (false, Some(1)) => write!(f, "{}", vars.join(" "))?,
                (false, _) => write!(f, "{c} {}", vars.join(" "))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_series(coeffs: &[i64], trunc: u32) -> Series {
        let mut s = Series::zero(Grading::Q, trunc);
        for (k, &c) in coeffs.iter().enumerate() {
            s.add_term(Monomial::xq(0, k as i32), Coeff::from(c));
        }
        s
    }

    #[test]
    fn geometric_series() {
        let mut s = Series::one(Grading::Q, 4);
        s.div_one_minus(Monomial::xq(0, 1), &Coeff::ONE).unwrap();
        assert_eq!(s, q_series(&[1, 1, 1, 1, 1], 4));
        assert!(s.div_one_minus(Monomial::xq(3, 0), &Coeff::ONE).is_err());
    }

    #[test]
    fn truncation_is_exact() {
        let a = q_series(&[1, 1, 1], 3);
        let prod = a.mul(&a).unwrap();
        assert_eq!(prod, q_series(&[1, 2, 3, 2], 3));
        assert!(a.mul(&q_series(&[1], 2)).is_err());
    }

    #[test]
    fn comparison_reports_first_difference() {
        let one_plus_q = q_series(&[1, 1], 5);
        let one = q_series(&[1], 5);
        assert!(series_equal(&one, &one).unwrap().is_equal());
        assert_eq!(
            series_equal(&one_plus_q, &one).unwrap(),
            SeriesComparison::Differs {
                monomial: Monomial::xq(0, 1),
                left: Coeff::ONE,
                right: Coeff::ZERO
            }
        );
        assert!(matches!(
            series_equal(&one, &q_series(&[1], 4)),
            Err(Error::TruncationMismatch { .. })
        ));
    }

    #[test]
    fn substitution_tracks_degree() {
        let s = Series::one(Grading::TOTAL, 3).with_term(Monomial::abcd(2, 1, 0, 0), Coeff::ONE);
        let sub = Substitution::ALT_SUM.apply(&s).unwrap();
        assert_eq!(sub.coeff(&Monomial::xq(3, 3)), 1);
        let bad = Substitution {
            images: [Monomial::xq(1, 0); 4],
            target: Grading::Q,
        };
        assert!(bad.apply(&s).is_err());
    }

    #[test]
    fn display() {
        let s = Series::one(Grading::TOTAL, 3)
            .with_term(Monomial::abcd(2, 1, 0, 0), Coeff::ONE)
            .with_term(Monomial::abcd(1, 0, 1, 0), Coeff::from(-2));
        assert_eq!(s.to_string(), "1 + -2 a c + a^2 b");
    }
}
