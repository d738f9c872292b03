use super::coeff::Coeff;
use super::series::{Grading, Monomial, Series};
use crate::bounds::{BoundSequence, CongruenceFilter};
use crate::enumerate::enumerate_bounded;
use crate::partition::Partition;

/// Which specialization of the four-parameter weight to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightVariant {
    /// `a^{Σ⌈λ_{2i-1}/2⌉} b^{Σ⌊λ_{2i-1}/2⌋} c^{Σ⌈λ_{2i}/2⌉} d^{Σ⌊λ_{2i}/2⌋}`.
    Four,
    /// `(a, b, c, d) = (a, a, b, b)`: odd-indexed rows in `a`, even-indexed in `b`.
    AaBb,
    /// `(a, b, c, d) = (a, b, a, b)`: ceilings in `a`, floors in `b`.
    AbAb,
}

impl std::str::FromStr for WeightVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "four" | "omega" => Ok(WeightVariant::Four),
            "aabb" | "omega1" => Ok(WeightVariant::AaBb),
            "abab" | "omega2" => Ok(WeightVariant::AbAb),
            other => Err(format!("unknown weight variant {other:?}")),
        }
    }
}

pub fn omega(p: &Partition, variant: WeightVariant) -> Monomial {
    let mut e = [0i32; 4];
    for (idx, &part) in p.parts().iter().enumerate() {
        let slot = if idx % 2 == 0 { 0 } else { 2 };
        e[slot] += part.div_ceil(2) as i32;
        e[slot + 1] += (part / 2) as i32;
    }
    match variant {
        WeightVariant::Four => Monomial(e),
        WeightVariant::AaBb => Monomial::ab(e[0] + e[1], e[2] + e[3]),
        WeightVariant::AbAb => Monomial::ab(e[0] + e[2], e[1] + e[3]),
    }
}

/// `Σ ω(λ)` over every admitted partition of weight at most `trunc`.
pub fn enumerated_series(
    bounds: &BoundSequence,
    filter: Option<&CongruenceFilter>,
    variant: WeightVariant,
    trunc: u32,
) -> Series {
    let mut s = Series::zero(Grading::TOTAL, trunc);
    for n in 0..=trunc {
        for p in enumerate_bounded(n, bounds, filter) {
            s.add_term(omega(&p, variant), Coeff::ONE);
        }
    }
    s
}
