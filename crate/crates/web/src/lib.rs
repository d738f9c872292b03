//! Browser bindings: a statistic table, a Ψ trace and an (x, q) series grid.
//!
//! Every export returns a JSON string. The plain functions do the work and
//! are usable (and tested) natively; the `#[wasm_bindgen]` wrappers only
//! turn error strings into JavaScript exceptions.

use partition_bounds::bijections::{psi, psi_inverse_trace, psi_inverse_traced, psi_trace};
use partition_bounds::enumerate::group_by_statistic;
use partition_bounds::qseries::{
    closed_form, enumerated_sides, series_equal, Identity, Monomial, Series,
};
use partition_bounds::{Bound, BoundSequence, Partition, Statistic};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest weight or truncation degree accepted from the page, so that a
/// stray keystroke cannot freeze the tab.
pub const MAX_SIZE: u32 = 40;

fn check_size(what: &str, v: u32) -> Result<(), String> {
    if v > MAX_SIZE {
        return Err(format!(
            "{what} = {v} is above the demo limit of {MAX_SIZE}"
        ));
    }
    Ok(())
}

pub fn table_json(n: u32, bounds: &str, stat: &str) -> Result<String, String> {
    check_size("n", n)?;
    let bounds: BoundSequence = bounds
        .parse()
        .map_err(|e: partition_bounds::Error| e.to_string())?;
    let stat: Statistic = stat.parse()?;
    let rows: Vec<Value> = group_by_statistic(n, &bounds, stat)
        .iter()
        .map(|(k, ps)| json!({ "k": k, "count": ps.len(), "partitions": ps.iter().map(Partition::exponent_notation).collect::<Vec<_>>() }))
        .collect();
    Ok(
        json!({ "n": n, "bounds": bounds.to_string(), "stat": stat.name(), "rows": rows })
            .to_string(),
    )
}

/// `m < 0` means no bound.
pub fn psi_json(partition: &str, m: i32, inverse: bool) -> Result<String, String> {
    let p: Partition = partition
        .parse()
        .map_err(|e: partition_bounds::Error| e.to_string())?;
    let bound = if m < 0 {
        Bound::Unbounded
    } else {
        Bound::Finite(m as u32)
    };
    let trace = match (inverse, bound) {
        (false, Bound::Unbounded) => psi_trace(&p),
        (true, Bound::Unbounded) => psi_inverse_trace(&p),
        (false, b) => psi(&p, b).map_err(|e| e.to_string())?.1,
        (true, b) => psi_inverse_traced(&p, b).map_err(|e| e.to_string())?,
    };
    let (from, to) = (&trace.input, &trace.output);
    Ok(json!({
        "inverse": inverse,
        "trace": trace,
        "stats": {
            "input": { "weight": from.weight(), "alt_sum": from.alt_sum(), "odd_count": from.odd_count() },
            "output": { "weight": to.weight(), "alt_sum": to.alt_sum(), "odd_count": to.odd_count() },
        },
    })
    .to_string())
}

/// Coefficient grid `grid[n][k]` of `x^k q^n`, for `k` from `0` to `n`.
fn grid(s: &Series, trunc: u32) -> Vec<Vec<String>> {
    (0..=trunc as i32)
        .map(|n| {
            (0..=n)
                .map(|k| s.coeff(&Monomial::xq(k, n)).to_string())
                .collect()
        })
        .collect()
}

/// Closed form and both enumerated sides of the bounded alternating-sum
/// identity (`family` = "all") or the even-parts one (`family` = "even").
pub fn series_json(family: &str, m: u32, trunc: u32) -> Result<String, String> {
    check_size("trunc", trunc)?;
    let identity = match family {
        "all" => Identity::AltSumAllBounded { m },
        "even" => Identity::EvenPartsBounded { m },
        other => return Err(format!("unknown family {other:?}; expected all or even")),
    };
    let closed = closed_form(&identity, trunc).map_err(|e| e.to_string())?;
    let sides = enumerated_sides(&identity, trunc).map_err(|e| e.to_string())?;
    let sides: Vec<Value> = sides
        .iter()
        .map(|(name, s)| {
            let cmp = series_equal(s, &closed).expect("same grading and truncation");
            json!({ "name": name, "equal": cmp.is_equal(), "comparison": cmp, "grid": grid(s, trunc) })
        })
        .collect();
    Ok(json!({ "identity": identity.id(), "m": m, "trunc": trunc, "closed": grid(&closed, trunc), "sides": sides }).to_string())
}

#[wasm_bindgen]
pub fn table(n: u32, bounds: &str, stat: &str) -> Result<String, JsError> {
    table_json(n, bounds, stat).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn psi_map(partition: &str, m: i32, inverse: bool) -> Result<String, JsError> {
    psi_json(partition, m, inverse).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn series(family: &str, m: u32, trunc: u32) -> Result<String, JsError> {
    series_json(family, m, trunc).map_err(|e| JsError::new(&e))
}
