//! Product formulas for the generating functions of bounded partitions, and
//! the enumerated sums they are compared against.
//!
//! Exponents are transcribed as written, floors and ceilings included, so
//! each factor can be checked against its formula term by term.
//!
//! Bound sets are given as a [`BoundSequence`]: the set `R` is its support
//! (the parts with a finite cap). Rules stated with a strict bound `ρ(r)`
//! ("fewer than ρ(r) copies") read `ρ(r) = cap + 1`; rules stated with an
//! inclusive `γ(r)` read `γ(r) = cap`.

use super::product::{product_series, FactorSpec, Indices, Placement};
use super::series::{Grading, Monomial, Series, Substitution};
use super::weight::{enumerated_series, WeightVariant};
use crate::bounds::{Bound, BoundSequence, CongruenceFilter};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub enum Identity {
    /// Four-parameter generating function of all partitions.
    FourParameter,
    /// Parts congruent to `residue` mod `modulus`, strict even caps on `R`.
    /// For a nonzero residue the partitions also have even length and the
    /// part equal to the residue at most once.
    CongruenceClass {
        modulus: u32,
        residue: u32,
        bounds: BoundSequence,
    },
    /// Two-parameter `(a, a, b, b)` form with strict even caps `ρ` on `R`.
    PhiAaBb { bounds: BoundSequence },
    /// Two-parameter `(a, b, a, b)` form with inclusive caps `γ` on `R`.
    PsiAbAb { bounds: BoundSequence },
    /// Alternating sum with every part at most `2m+1` times, against odd parts
    /// with even parts at most `m` times.
    AltSumAllBounded { m: u32 },
    /// Alternating sum against odd parts, even parts at most `2m+1` times on
    /// both sides.
    EvenPartsBounded { m: u32 },
}

impl Identity {
    pub fn id(&self) -> &'static str {
        match self {
            Identity::FourParameter => "t2.1",
            Identity::CongruenceClass { .. } => "t2.2",
            Identity::PhiAaBb { .. } => "t2.3",
            Identity::PsiAbAb { .. } => "t2.4",
            Identity::AltSumAllBounded { .. } => "t3.3",
            Identity::EvenPartsBounded { .. } => "t3.4",
        }
    }

    pub fn grading(&self) -> Grading {
        match self {
            Identity::AltSumAllBounded { .. } | Identity::EvenPartsBounded { .. } => Grading::Q,
            _ => Grading::TOTAL,
        }
    }
}

fn ceil2(n: u64) -> i32 {
    n.div_ceil(2) as i32
}

fn floor2(n: u64) -> i32 {
    (n / 2) as i32
}

/// Parts `r <= trunc` in the support, paired with their strict bound, which
/// must be even.
fn even_strict_support(
    bounds: &BoundSequence,
    trunc: u32,
    keep: impl Fn(u32) -> bool,
) -> Result<Vec<(u32, u32)>> {
    let mut out = Vec::new();
    for (r, cap) in bounds.support(trunc) {
        if !keep(r) {
            continue;
        }
        let strict = cap + 1;
        if strict % 2 == 1 {
            return Err(Error::OddStrictBound {
                part: r,
                bound: strict,
            });
        }
        out.push((r, strict));
    }
    Ok(out)
}

fn four_parameter_factors() -> Vec<FactorSpec> {
    use Placement::*;
    let j1 = |j: u64| j as i32;
    vec![
        FactorSpec::new(
            "1+a^j b^{j-1} c^{j-1} d^{j-1}",
            1,
            Numerator,
            Indices::From(1),
            move |j| Monomial::abcd(j1(j), j1(j) - 1, j1(j) - 1, j1(j) - 1),
        ),
        FactorSpec::new(
            "1+a^j b^j c^j d^{j-1}",
            1,
            Numerator,
            Indices::From(1),
            move |j| Monomial::abcd(j1(j), j1(j), j1(j), j1(j) - 1),
        ),
        FactorSpec::new(
            "1-a^j b^j c^j d^j",
            -1,
            Denominator,
            Indices::From(1),
            move |j| Monomial::abcd(j1(j), j1(j), j1(j), j1(j)),
        ),
        FactorSpec::new(
            "1-a^j b^j c^{j-1} d^{j-1}",
            -1,
            Denominator,
            Indices::From(1),
            move |j| Monomial::abcd(j1(j), j1(j), j1(j) - 1, j1(j) - 1),
        ),
        FactorSpec::new(
            "1-a^j b^{j-1} c^j d^{j-1}",
            -1,
            Denominator,
            Indices::From(1),
            move |j| Monomial::abcd(j1(j), j1(j) - 1, j1(j), j1(j) - 1),
        ),
    ]
}

fn congruence_class_factors(
    modulus: u32,
    residue: u32,
    support: Vec<(u32, u32)>,
) -> Vec<FactorSpec> {
    use Placement::*;
    let (k, i) = (u64::from(modulus), u64::from(residue));
    let mut out = vec![
        FactorSpec::new(
            "S: 1+a^⌈(jk+i)/2⌉ b^⌊(jk+i)/2⌋ c^⌈((j-1)k+i)/2⌉ d^⌊((j-1)k+i)/2⌋",
            1,
            Numerator,
            Indices::From(1),
            move |j| {
                let (hi, lo) = (j * k + i, (j - 1) * k + i);
                Monomial::abcd(ceil2(hi), floor2(hi), ceil2(lo), floor2(lo))
            },
        ),
        FactorSpec::new(
            "S: 1-a^⌈(jk+i)/2⌉ b^⌊(jk+i)/2⌋ c^⌈(jk+i)/2⌉ d^⌊(jk+i)/2⌋",
            -1,
            Denominator,
            Indices::From(1),
            move |j| {
                let hi = j * k + i;
                Monomial::abcd(ceil2(hi), floor2(hi), ceil2(hi), floor2(hi))
            },
        ),
        FactorSpec::new(
            "S: 1-a^{jk} b^{jk} c^{(j-1)k} d^{(j-1)k}",
            -1,
            Denominator,
            Indices::From(1),
            move |j| {
                let (hi, lo) = ((j * k) as i32, ((j - 1) * k) as i32);
                Monomial::abcd(hi, hi, lo, lo)
            },
        ),
    ];
    out.push(r_factor(
        "T: 1-a^{⌈r/2⌉ρ/2} b^{⌊r/2⌋ρ/2} c^{⌈r/2⌉ρ/2} d^{⌊r/2⌋ρ/2}",
        support,
        |r, rho| {
            let h = (rho / 2) as i32;
            let r = u64::from(r);
            Monomial::abcd(ceil2(r) * h, floor2(r) * h, ceil2(r) * h, floor2(r) * h)
        },
    ));
    out
}

fn phi_aabb_factors(support: Vec<(u32, u32)>) -> Vec<FactorSpec> {
    use Placement::*;
    vec![
        FactorSpec::new(
            "1+a^{⌈j/2⌉+⌊j/2⌋} b^{⌈(j-1)/2⌉+⌊(j-1)/2⌋}",
            1,
            Numerator,
            Indices::From(1),
            |j| Monomial::ab(ceil2(j) + floor2(j), ceil2(j - 1) + floor2(j - 1)),
        ),
        FactorSpec::new(
            "1-a^{⌈j/2⌉+⌊j/2⌋} b^{⌈j/2⌉+⌊j/2⌋}",
            -1,
            Denominator,
            Indices::From(1),
            |j| Monomial::ab(ceil2(j) + floor2(j), ceil2(j) + floor2(j)),
        ),
        FactorSpec::new(
            "1-a^{2j} b^{2j-2}",
            -1,
            Denominator,
            Indices::From(1),
            |j| Monomial::ab(2 * j as i32, 2 * j as i32 - 2),
        ),
        r_factor(
            "1-a^{(⌈r/2⌉+⌊r/2⌋)ρ/2} b^{(⌈r/2⌉+⌊r/2⌋)ρ/2}",
            support,
            |r, rho| {
                let e = (ceil2(u64::from(r)) + floor2(u64::from(r))) * (rho / 2) as i32;
                Monomial::ab(e, e)
            },
        ),
    ]
}

fn psi_abab_factors(support: Vec<(u32, u32)>) -> Vec<FactorSpec> {
    use Placement::*;
    vec![
        FactorSpec::new(
            "U: 1+a^⌈j/2⌉ b^⌊j/2⌋ a^⌈(j-1)/2⌉ b^⌊(j-1)/2⌋",
            1,
            Numerator,
            Indices::From(1),
            |j| Monomial::ab(ceil2(j), floor2(j)) * Monomial::ab(ceil2(j - 1), floor2(j - 1)),
        ),
        FactorSpec::new(
            "U: 1-a^{2⌈j/2⌉} b^{2⌊j/2⌋}",
            -1,
            Denominator,
            Indices::From(1),
            |j| Monomial::ab(2 * ceil2(j), 2 * floor2(j)),
        ),
        FactorSpec::new(
            "U: 1-a^{2j-1} b^{2j-1}",
            -1,
            Denominator,
            Indices::From(1),
            |j| Monomial::ab(2 * j as i32 - 1, 2 * j as i32 - 1),
        ),
        r_factor(
            "V: 1-a^{⌈r/2⌉(γ+1)} b^{⌊r/2⌋(γ+1)}",
            support,
            |r, gamma| {
                let g = gamma as i32 + 1;
                Monomial::ab(ceil2(u64::from(r)) * g, floor2(u64::from(r)) * g)
            },
        ),
    ]
}

/// `∏_{r∈R} (1 - m(r, bound(r)))` over an explicit finite index list.
fn r_factor<F>(label: &str, support: Vec<(u32, u32)>, m: F) -> FactorSpec
where
    F: Fn(u32, u32) -> Monomial + Send + Sync + 'static,
{
    let indices = Indices::List(support.iter().map(|&(r, _)| u64::from(r)).collect());
    let table: std::collections::BTreeMap<u64, u32> = support
        .into_iter()
        .map(|(r, b)| (u64::from(r), b))
        .collect();
    FactorSpec::new(label, -1, Placement::Numerator, indices, move |r| {
        m(r as u32, table[&r])
    })
}

/// `(-xq;q^2)_∞ (q^s;q^s)_∞ / ((q^2;q^2)_∞ (x^2q^2;q^4)_∞)`.
fn xq_closed_factors(s: i32) -> Vec<FactorSpec> {
    use Placement::*;
    vec![
        FactorSpec::pochhammer(
            "(-xq;q^2)",
            Monomial::xq(1, 1),
            Monomial::xq(0, 2),
            true,
            Numerator,
        ),
        FactorSpec::pochhammer(
            format!("(q^{s};q^{s})"),
            Monomial::xq(0, s),
            Monomial::xq(0, s),
            false,
            Numerator,
        ),
        FactorSpec::pochhammer(
            "(q^2;q^2)",
            Monomial::xq(0, 2),
            Monomial::xq(0, 2),
            false,
            Denominator,
        ),
        FactorSpec::pochhammer(
            "(x^2q^2;q^4)",
            Monomial::xq(2, 2),
            Monomial::xq(0, 4),
            false,
            Denominator,
        ),
    ]
}

/// Factor families of the product side.
pub fn factors(identity: &Identity, trunc: u32) -> Result<Vec<FactorSpec>> {
    Ok(match identity {
        Identity::FourParameter => four_parameter_factors(),
        Identity::CongruenceClass {
            modulus,
            residue,
            bounds,
        } => {
            let filter = CongruenceFilter::new(*modulus, *residue)?;
            let support = even_strict_support(bounds, trunc, |r| filter.allows_part(r))?;
            congruence_class_factors(*modulus, *residue, support)
        }
        Identity::PhiAaBb { bounds } => {
            phi_aabb_factors(even_strict_support(bounds, trunc, |_| true)?)
        }
        Identity::PsiAbAb { bounds } => psi_abab_factors(bounds.support(trunc)),
        Identity::AltSumAllBounded { m } => xq_closed_factors(2 * *m as i32 + 2),
        Identity::EvenPartsBounded { m } => xq_closed_factors(4 * *m as i32 + 4),
    })
}

/// The product side, truncated at `trunc` in the identity's grading.
pub fn closed_form(identity: &Identity, trunc: u32) -> Result<Series> {
    product_series(&factors(identity, trunc)?, identity.grading(), trunc)
}

/// Enumerated sides of an identity, labelled. The `(x, q)` identities have
/// two: the alternating-sum side and the odd-part side.
pub fn enumerated_sides(identity: &Identity, trunc: u32) -> Result<Vec<(String, Series)>> {
    let free = BoundSequence::unbounded();
    Ok(match identity {
        Identity::FourParameter => vec![(
            "Φ".into(),
            enumerated_series(&free, None, WeightVariant::Four, trunc),
        )],
        Identity::CongruenceClass {
            modulus,
            residue,
            bounds,
        } => {
            let filter = CongruenceFilter::new(*modulus, *residue)?.with_corrections();
            even_strict_support(bounds, trunc, |r| filter.allows_part(r))?;
            vec![(
                "Φ_{i,k;R,ρ}".into(),
                enumerated_series(bounds, Some(&filter), WeightVariant::Four, trunc),
            )]
        }
        Identity::PhiAaBb { bounds } => {
            even_strict_support(bounds, trunc, |_| true)?;
            vec![(
                "Φ_{R,ρ}(a,a,b,b)".into(),
                enumerated_series(bounds, None, WeightVariant::AaBb, trunc),
            )]
        }
        Identity::PsiAbAb { bounds } => {
            vec![(
                "Ψ_{R,γ}(a,b,a,b)".into(),
                enumerated_series(bounds, None, WeightVariant::AbAb, trunc),
            )]
        }
        Identity::AltSumAllBounded { m } => {
            let phi_side = BoundSequence::constant(Bound::Finite(2 * m + 1));
            let psi_side = BoundSequence::evens_only(Bound::Finite(*m));
            xq_sides(&phi_side, &psi_side, trunc)?
        }
        Identity::EvenPartsBounded { m } => {
            let both = BoundSequence::evens_only(Bound::Finite(2 * m + 1));
            xq_sides(&both, &both, trunc)?
        }
    })
}

fn xq_sides(
    alt_side: &BoundSequence,
    odd_side: &BoundSequence,
    trunc: u32,
) -> Result<Vec<(String, Series)>> {
    let alt = Substitution::ALT_SUM.apply(&enumerated_series(
        alt_side,
        None,
        WeightVariant::Four,
        trunc,
    ))?;
    let odd = Substitution::ODD_COUNT.apply(&enumerated_series(
        odd_side,
        None,
        WeightVariant::Four,
        trunc,
    ))?;
    Ok(vec![
        ("Φ(xq,xq,x⁻¹q,x⁻¹q)".into(), alt),
        ("Ψ(xq,x⁻¹q,xq,x⁻¹q)".into(), odd),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::series::series_equal;

    #[test]
    fn alt_sum_closed_form_small_coefficients() {
        let t33 = |m| closed_form(&Identity::AltSumAllBounded { m }, 7).unwrap();
        assert_eq!(t33(0).coeff(&Monomial::xq(0, 0)), 1);
        let s = t33(1);
        let row: Vec<i64> = [1, 3, 5, 7]
            .iter()
            .map(|&k| s.coeff(&Monomial::xq(k, 7)).to_i64().unwrap())
            .collect();
        assert_eq!(row, vec![5, 4, 2, 1]);

        let t34 = closed_form(&Identity::EvenPartsBounded { m: 0 }, 7).unwrap();
        let row: Vec<i64> = [1, 3, 5, 7]
            .iter()
            .map(|&k| t34.coeff(&Monomial::xq(k, 7)).to_i64().unwrap())
            .collect();
        assert_eq!(row, vec![5, 4, 2, 1]);
    }

    #[test]
    fn four_parameter_matches_enumeration_low_degree() {
        let lhs = &enumerated_sides(&Identity::FourParameter, 8).unwrap()[0].1;
        let rhs = closed_form(&Identity::FourParameter, 8).unwrap();
        assert!(series_equal(lhs, &rhs).unwrap().is_equal());
    }

    #[test]
    fn odd_strict_bounds_rejected() {
        let bounds: BoundSequence = "all:2".parse().unwrap();
        assert!(matches!(
            closed_form(
                &Identity::PhiAaBb {
                    bounds: bounds.clone()
                },
                6
            ),
            Err(Error::OddStrictBound { part: 1, bound: 3 })
        ));
        assert!(closed_form(
            &Identity::CongruenceClass {
                modulus: 1,
                residue: 0,
                bounds
            },
            6
        )
        .is_err());
        // Inclusive caps have no parity condition.
        assert!(closed_form(
            &Identity::PsiAbAb {
                bounds: "all:2".parse().unwrap()
            },
            6
        )
        .is_ok());
    }

    #[test]
    fn empty_bound_set_reduces_to_four_parameter() {
        let four = Substitution::AABB
            .apply(&closed_form(&Identity::FourParameter, 12).unwrap())
            .unwrap();
        let phi = closed_form(
            &Identity::PhiAaBb {
                bounds: BoundSequence::unbounded(),
            },
            12,
        )
        .unwrap();
        assert!(series_equal(&four, &phi).unwrap().is_equal());
    }
}
