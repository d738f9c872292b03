//! Weight-preserving maps between families of bounded partitions.
//!
//! * [`psi`] sends partitions whose parts each occur at most `2m+1` times
//!   to partitions whose even parts occur at most `m` times, carrying the
//!   alternating sum to the number of odd parts.
//! * [`theorem32_map`] does the same between the two families where only
//!   even parts are capped at `2m+1`, using binary expansion of even
//!   multiplicities of odd parts in place of pair merging.
//!
//! Both are assembled from a split of a partition into a distinct-parts
//! piece and an even-multiplicity piece, Sylvester's fishhook bijection on
//! the distinct piece, and a rule for the even-multiplicity piece.

use serde::{Deserialize, Serialize};

use crate::bounds::Bound;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Intermediate partitions of one application of a composite map.
///
/// For forward maps `input` is α and `output` is β; inverse maps fill the
/// same slots with `input` = β and `output` = α.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionTrace {
    pub input: Partition,
    /// Distinct parts: one copy of each part with odd multiplicity.
    pub lambda_part: Partition,
    /// The remaining parts; every multiplicity even.
    pub mu_part: Partition,
    /// Odd parts, Sylvester image of `lambda_part`.
    pub tau_part: Partition,
    /// Even parts built from `mu_part`.
    pub nu_part: Partition,
    pub output: Partition,
}

pub fn phi1_split(alpha: &Partition) -> (Partition, Partition) {
    let mut lambda = Vec::new();
    let mut mu = Vec::new();
    for (part, m) in alpha.multiplicities() {
        if m % 2 == 1 {
            lambda.push(part);
        }
        mu.extend(std::iter::repeat_n(part, (m - m % 2) as usize));
    }
    (
        Partition::from_sorted_unchecked(lambda),
        Partition::from_sorted_unchecked(mu),
    )
}

fn require_distinct(p: &Partition) -> Result<()> {
    match p.parts().windows(2).find(|w| w[0] == w[1]) {
        Some(w) => Err(Error::RepeatedPart { part: w[0] }),
        None => Ok(()),
    }
}

fn require_even_multiplicities(p: &Partition) -> Result<()> {
    match p.multiplicities().into_iter().find(|&(_, m)| m % 2 == 1) {
        Some((part, multiplicity)) => Err(Error::OddMultiplicity { part, multiplicity }),
        None => Ok(()),
    }
}

fn require_odd_parts(p: &Partition) -> Result<()> {
    match p.parts().iter().find(|&&x| x % 2 == 0) {
        Some(&part) => Err(Error::EvenPart { part }),
        None => Ok(()),
    }
}

fn require_even_parts(p: &Partition) -> Result<()> {
    match p.parts().iter().find(|&&x| x % 2 == 1) {
        Some(&part) => Err(Error::OddPart { part }),
        None => Ok(()),
    }
}

pub fn phi1_merge(lambda: &Partition, mu: &Partition) -> Result<Partition> {
    require_distinct(lambda)?;
    require_even_multiplicities(mu)?;
    Ok(lambda.union(mu))
}

/// Splits into (odd parts, even parts).
pub fn split_by_parity(p: &Partition) -> (Partition, Partition) {
    let (odd, even): (Vec<u32>, Vec<u32>) = p.parts().iter().partition(|&&x| x % 2 == 1);
    (
        Partition::from_sorted_unchecked(odd),
        Partition::from_sorted_unchecked(even),
    )
}

/// Fishhook dissection of the center-justified diagram of an odd-parts
/// partition into a distinct-parts partition.
///
/// Row `k` has half-width `b_k = (λ_k - 1)/2`. With `ℓ_k` the number of rows
/// `i >= k` with `λ_i >= 2k - 1` and `d_k = max(b_k - k + 1, 0)`, the image
/// has parts `d_k + ℓ_k` and `d_k + ℓ_{k+1}` for `k = 1, 2, ...`.
pub fn sylvester_odd_to_distinct(odd: &Partition) -> Result<Partition> {
    require_odd_parts(odd)?;
    let half: Vec<u32> = odd.parts().iter().map(|p| (p - 1) / 2).collect();
    let rows = half.len();
    // ℓ_k for k = 1..=rows+1, zero-padded.
    let column = |k: usize| -> u32 {
        if k > rows {
            return 0;
        }
        half[k - 1..]
            .iter()
            .filter(|&&b| b as usize + 1 >= k)
            .count() as u32
    };
    let arm = |k: usize| -> u32 {
        half.get(k - 1)
            .map_or(0, |&b| (b + 1).saturating_sub(k as u32))
    };

    let mut parts = Vec::with_capacity(2 * rows);
    for k in 1..=rows {
        let d = arm(k);
        parts.push(d + column(k));
        parts.push(d + column(k + 1));
    }
    parts.retain(|&p| p > 0);
    let out = Partition::from_sorted_unchecked(parts);
    debug_assert!(out.has_distinct_parts());
    debug_assert_eq!(out.weight(), odd.weight());
    Ok(out)
}

/// Inverse of [`sylvester_odd_to_distinct`].
///
/// The suffix alternating sums of the distinct parts recover the arm
/// lengths `d_k` (even positions) and column heights `ℓ_k` (odd positions);
/// the half-width profile of the odd partition is then the conjugate of
/// the column-count profile.
pub fn sylvester_distinct_to_odd(distinct: &Partition) -> Result<Partition> {
    require_distinct(distinct)?;
    let mu = distinct.parts();
    let len = mu.len();
    // alt[t] = μ_{t+1} - μ_{t+2} + ..., 0-based, padded with zeros.
    let mut alt = vec![0u32; len + 3];
    for t in (0..len).rev() {
        alt[t] = mu[t] - alt[t + 1];
    }
    let column = |k: usize| alt.get(2 * k - 2).copied().unwrap_or(0); // ℓ_k
    let arm = |k: usize| alt.get(2 * k - 1).copied().unwrap_or(0); // d_k

    let rows = column(1) as usize;
    let widest = distinct.largest_part() as usize;
    // counts[j] = number of rows with half-width >= j.
    let mut counts = vec![0usize; widest + 2];
    for (j, slot) in counts.iter_mut().enumerate() {
        let height = column(j + 1);
        *slot = if height > 0 {
            j + height as usize
        } else {
            (1..=j.min(rows))
                .filter(|&i| {
                    let d = arm(i) as usize;
                    d > 0 && d + i > j
                })
                .count()
        };
    }
    let mut parts = Vec::with_capacity(rows);
    for i in 1..=rows {
        let b = counts[1..].iter().filter(|&&c| c >= i).count() as u32;
        parts.push(2 * b + 1);
    }
    let out = Partition::from_sorted_unchecked(parts);
    debug_assert_eq!(out.weight(), distinct.weight());
    Ok(out)
}

/// Merges each pair of equal parts `t, t` into one part `2t`.
pub fn phi3_pair_merge(mu: &Partition) -> Result<Partition> {
    require_even_multiplicities(mu)?;
    let parts: Vec<u32> = mu.parts().iter().step_by(2).map(|&t| 2 * t).collect();
    Ok(Partition::from_sorted_unchecked(parts))
}

/// Splits each even part `2t` into `t, t`.
pub fn phi3_split(nu: &Partition) -> Result<Partition> {
    require_even_parts(nu)?;
    let parts: Vec<u32> = nu.parts().iter().flat_map(|&p| [p / 2, p / 2]).collect();
    Ok(Partition::from_sorted_unchecked(parts))
}

fn check_all_parts(p: &Partition, m: Bound) -> Result<()> {
    let Bound::Finite(m) = m else { return Ok(()) };
    let cap = 2 * m + 1;
    match p.multiplicities().into_iter().find(|&(_, c)| c > cap) {
        Some((part, multiplicity)) => Err(Error::BoundViolation {
            part,
            multiplicity,
            bound: cap,
        }),
        None => Ok(()),
    }
}

fn check_even_parts(p: &Partition, cap: Bound) -> Result<()> {
    let Bound::Finite(cap) = cap else {
        return Ok(());
    };
    match p
        .multiplicities()
        .into_iter()
        .find(|&(part, c)| part % 2 == 0 && c > cap)
    {
        Some((part, multiplicity)) => Err(Error::BoundViolation {
            part,
            multiplicity,
            bound: cap,
        }),
        None => Ok(()),
    }
}

fn odd_cap(m: Bound) -> Bound {
    match m {
        Bound::Finite(m) => Bound::Finite(2 * m + 1),
        Bound::Unbounded => Bound::Unbounded,
    }
}

/// Ψ without bound checks. Applies to any partition.
pub fn psi_trace(alpha: &Partition) -> BijectionTrace {
    let (lambda, mu) = phi1_split(alpha);
    let tau = sylvester_distinct_to_odd(&lambda).expect("phi1 yields distinct parts");
    let nu = phi3_pair_merge(&mu).expect("phi1 yields even multiplicities");
    let beta = tau.union(&nu);
    debug_assert_eq!(beta.weight(), alpha.weight());
    BijectionTrace {
        input: alpha.clone(),
        lambda_part: lambda,
        mu_part: mu,
        tau_part: tau,
        nu_part: nu,
        output: beta,
    }
}

/// Ψ⁻¹ without bound checks. Applies to any partition.
pub fn psi_inverse_trace(beta: &Partition) -> BijectionTrace {
    let (tau, nu) = split_by_parity(beta);
    let mu = phi3_split(&nu).expect("even parts");
    let lambda = sylvester_odd_to_distinct(&tau).expect("odd parts");
    let alpha = lambda.union(&mu);
    debug_assert_eq!(beta.weight(), alpha.weight());
    BijectionTrace {
        input: beta.clone(),
        lambda_part: lambda,
        mu_part: mu,
        tau_part: tau,
        nu_part: nu,
        output: alpha,
    }
}

/// Ψ on partitions with every multiplicity at most `2m+1`.
pub fn psi(alpha: &Partition, m: Bound) -> Result<(Partition, BijectionTrace)> {
    check_all_parts(alpha, m)?;
    let trace = psi_trace(alpha);
    Ok((trace.output.clone(), trace))
}

/// Ψ⁻¹ on partitions with every even part at most `m` times.
pub fn psi_inverse(beta: &Partition, m: Bound) -> Result<Partition> {
    psi_inverse_traced(beta, m).map(|t| t.output)
}

pub fn psi_inverse_traced(beta: &Partition, m: Bound) -> Result<BijectionTrace> {
    check_even_parts(beta, m)?;
    Ok(psi_inverse_trace(beta))
}

/// Replaces `M` copies of each odd part `2i-1` (with `M` even) by one copy of
/// `2^j (2i-1)` for every set bit `j` of `M`. Even parts pass through.
pub fn binary_expand_even_odd_multiplicities(mu: &Partition) -> Result<Partition> {
    require_even_multiplicities(mu)?;
    let mut parts = Vec::new();
    for (part, m) in mu.multiplicities() {
        if part % 2 == 0 {
            parts.extend(std::iter::repeat_n(part, m as usize));
            continue;
        }
        for j in 1..u32::BITS {
            if m >> j & 1 == 1 {
                let value = part.checked_mul(1 << j).ok_or(Error::Overflow)?;
                parts.push(value);
            }
        }
    }
    Ok(Partition::from_parts(parts))
}

/// Inverse of [`binary_expand_even_odd_multiplicities`] on its image: for each
/// even part `2^j (2i-1)` of odd multiplicity, one copy becomes `2^j` copies of
/// `2i-1`. Multiplicities are checked against `2m+1`.
pub fn binary_contract(nu: &Partition, m: Bound) -> Result<Partition> {
    require_even_parts(nu)?;
    check_even_parts(nu, odd_cap(m))?;
    let mut parts = Vec::new();
    for (part, count) in nu.multiplicities() {
        let keep = count - count % 2;
        parts.extend(std::iter::repeat_n(part, keep as usize));
        if count % 2 == 1 {
            let j = part.trailing_zeros();
            let odd = part >> j;
            parts.extend(std::iter::repeat_n(odd, 1usize << j));
        }
    }
    Ok(Partition::from_parts(parts))
}

/// Forward map between the two families with even parts capped at `2m+1`.
pub fn theorem32_map(alpha: &Partition, m: Bound) -> Result<(Partition, BijectionTrace)> {
    check_even_parts(alpha, odd_cap(m))?;
    let (lambda, mu) = phi1_split(alpha);
    let tau = sylvester_distinct_to_odd(&lambda)?;
    let nu = binary_expand_even_odd_multiplicities(&mu)?;
    let beta = tau.union(&nu);
    debug_assert_eq!(beta.weight(), alpha.weight());
    let trace = BijectionTrace {
        input: alpha.clone(),
        lambda_part: lambda,
        mu_part: mu,
        tau_part: tau,
        nu_part: nu,
        output: beta.clone(),
    };
    Ok((beta, trace))
}

pub fn theorem32_inverse(beta: &Partition, m: Bound) -> Result<Partition> {
    theorem32_inverse_traced(beta, m).map(|t| t.output)
}

pub fn theorem32_inverse_traced(beta: &Partition, m: Bound) -> Result<BijectionTrace> {
    check_even_parts(beta, odd_cap(m))?;
    let (tau, nu) = split_by_parity(beta);
    let mu = binary_contract(&nu, m)?;
    let lambda = sylvester_odd_to_distinct(&tau)?;
    let alpha = lambda.union(&mu);
    debug_assert_eq!(beta.weight(), alpha.weight());
    Ok(BijectionTrace {
        input: beta.clone(),
        lambda_part: lambda,
        mu_part: mu,
        tau_part: tau,
        nu_part: nu,
        output: alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn split_and_merge() {
        let alpha = p("7,7,7,4,4,4,4,2,2,2,2,2,1");
        let (lambda, mu) = phi1_split(&alpha);
        assert_eq!(lambda, p("7,2,1"));
        assert_eq!(mu, p("7,7,4,4,4,4,2,2,2,2"));
        assert_eq!(phi1_merge(&lambda, &mu).unwrap(), alpha);

        assert_eq!(
            phi1_split(&Partition::empty()),
            (Partition::empty(), Partition::empty())
        );
        assert_eq!(phi1_split(&p("3,3")), (Partition::empty(), p("3,3")));
        assert_eq!(
            phi1_merge(&Partition::empty(), &Partition::empty()).unwrap(),
            Partition::empty()
        );
        assert_eq!(phi1_merge(&p("1"), &p("1,1")).unwrap(), p("1,1,1"));

        assert_eq!(
            phi1_merge(&p("2,2"), &Partition::empty()),
            Err(Error::RepeatedPart { part: 2 })
        );
        assert_eq!(
            phi1_merge(&Partition::empty(), &p("3,3,3")),
            Err(Error::OddMultiplicity {
                part: 3,
                multiplicity: 3
            })
        );
    }

    #[test]
    fn sylvester_examples() {
        assert_eq!(
            sylvester_odd_to_distinct(&p("3,3,1,1,1,1")).unwrap(),
            p("7,2,1")
        );
        assert_eq!(sylvester_odd_to_distinct(&p("1,1,1,1,1")).unwrap(), p("5"));
        assert_eq!(
            sylvester_odd_to_distinct(&p("5,5,3,1")).unwrap(),
            p("6,4,3,1")
        );
        assert_eq!(
            sylvester_odd_to_distinct(&Partition::empty()).unwrap(),
            Partition::empty()
        );

        assert_eq!(
            sylvester_distinct_to_odd(&p("7,2,1")).unwrap(),
            p("3,3,1,1,1,1")
        );
        assert_eq!(sylvester_distinct_to_odd(&p("5")).unwrap(), p("1,1,1,1,1"));
        assert_eq!(
            sylvester_distinct_to_odd(&p("6,4,3,1")).unwrap(),
            p("5,5,3,1")
        );
        assert_eq!(
            sylvester_distinct_to_odd(&Partition::empty()).unwrap(),
            Partition::empty()
        );

        assert_eq!(
            sylvester_odd_to_distinct(&p("3,2")),
            Err(Error::EvenPart { part: 2 })
        );
        assert_eq!(
            sylvester_distinct_to_odd(&p("3,3")),
            Err(Error::RepeatedPart { part: 3 })
        );
    }

    #[test]
    fn pair_merge_examples() {
        assert_eq!(
            phi3_pair_merge(&p("7,7,4,4,4,4,2,2,2,2")).unwrap(),
            p("14,8,8,4,4")
        );
        assert_eq!(
            phi3_pair_merge(&Partition::empty()).unwrap(),
            Partition::empty()
        );
        assert_eq!(phi3_pair_merge(&p("1,1")).unwrap(), p("2"));
        assert!(phi3_pair_merge(&p("1")).is_err());

        assert_eq!(
            phi3_split(&p("14,8,8,4,4")).unwrap(),
            p("7,7,4,4,4,4,2,2,2,2")
        );
        assert_eq!(phi3_split(&p("2")).unwrap(), p("1,1"));
        assert_eq!(phi3_split(&Partition::empty()).unwrap(), Partition::empty());
        assert_eq!(phi3_split(&p("3")), Err(Error::OddPart { part: 3 }));
    }

    #[test]
    fn psi_worked_example() {
        let alpha = p("7,7,7,4,4,4,4,2,2,2,2,2,1");
        let (beta, trace) = psi(&alpha, Bound::Finite(2)).unwrap();
        assert_eq!(beta, p("14,8,8,4,4,3,3,1,1,1,1"));
        assert_eq!(trace.tau_part, p("3,3,1,1,1,1"));
        assert_eq!(trace.nu_part, p("14,8,8,4,4"));
        assert_eq!(psi_inverse(&beta, Bound::Finite(2)).unwrap(), alpha);

        // 4 appears 4 times, above 2*1+1.
        assert_eq!(
            psi(&alpha, Bound::Finite(1)).unwrap_err(),
            Error::BoundViolation {
                part: 4,
                multiplicity: 4,
                bound: 3
            }
        );
        // 8 appears twice in β, above m = 1.
        assert!(psi_inverse(&beta, Bound::Finite(1)).is_err());
    }

    #[test]
    fn psi_small_cases() {
        for m in [Bound::Finite(0), Bound::Finite(3), Bound::Unbounded] {
            assert_eq!(psi(&Partition::empty(), m).unwrap().0, Partition::empty());
            assert_eq!(
                psi_inverse(&Partition::empty(), m).unwrap(),
                Partition::empty()
            );
        }
        let alpha = p("4,3");
        let (beta, trace) = psi(&alpha, Bound::Finite(1)).unwrap();
        assert_eq!(trace.lambda_part, alpha);
        assert!(trace.mu_part.is_empty());
        assert_eq!(beta.odd_count() as u64, alpha.alt_sum());
        assert_eq!(beta, p("7"));
    }

    #[test]
    fn binary_decomposition() {
        assert_eq!(
            binary_expand_even_odd_multiplicities(&p("3,3,1,1")).unwrap(),
            p("6,2")
        );
        assert_eq!(
            binary_expand_even_odd_multiplicities(&p("3^6")).unwrap(),
            p("12,6")
        );
        assert_eq!(
            binary_expand_even_odd_multiplicities(&Partition::empty()).unwrap(),
            Partition::empty()
        );
        assert_eq!(
            binary_expand_even_odd_multiplicities(&p("4,4,1,1")).unwrap(),
            p("4,4,2")
        );
        assert!(binary_expand_even_odd_multiplicities(&p("3")).is_err());

        assert_eq!(
            binary_contract(&p("6,2"), Bound::Finite(0)).unwrap(),
            p("3,3,1,1")
        );
        assert_eq!(
            binary_contract(&p("4,4"), Bound::Finite(1)).unwrap(),
            p("4,4")
        );
        assert_eq!(
            binary_contract(&p("2"), Bound::Finite(0)).unwrap(),
            p("1,1")
        );
        assert_eq!(
            binary_contract(&p("12,6"), Bound::Finite(0)).unwrap(),
            p("3^6")
        );
        assert_eq!(
            binary_contract(&p("3"), Bound::Finite(0)),
            Err(Error::OddPart { part: 3 })
        );
        // At the bound 2m+1 exactly one copy is contracted.
        assert_eq!(
            binary_contract(&p("4,4,4"), Bound::Finite(1)).unwrap(),
            p("4,4,1,1,1,1")
        );
        assert!(binary_contract(&p("4,4,4"), Bound::Finite(0)).is_err());
    }

    #[test]
    fn theorem32_examples() {
        let alpha = p("3,3,2,1,1");
        let (beta, trace) = theorem32_map(&alpha, Bound::Finite(0)).unwrap();
        assert_eq!(trace.lambda_part, p("2"));
        assert_eq!(trace.mu_part, p("3,3,1,1"));
        assert_eq!(trace.tau_part, p("1,1"));
        assert_eq!(trace.nu_part, p("6,2"));
        assert_eq!(beta, p("6,2,1,1"));
        assert_eq!(alpha.alt_sum(), 2);
        assert_eq!(beta.odd_count(), 2);
        assert_eq!(theorem32_inverse(&beta, Bound::Finite(0)).unwrap(), alpha);

        assert_eq!(
            theorem32_map(&Partition::empty(), Bound::Finite(0))
                .unwrap()
                .0,
            Partition::empty()
        );
        assert_eq!(
            theorem32_inverse(&Partition::empty(), Bound::Finite(0)).unwrap(),
            Partition::empty()
        );
        assert!(theorem32_map(&p("2,2"), Bound::Finite(0)).is_err());
        assert!(theorem32_inverse(&p("2,2"), Bound::Finite(0)).is_err());
    }
}
