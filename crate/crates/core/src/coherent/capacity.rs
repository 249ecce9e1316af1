use crate::coherent::entropy::binary_entropy;
use crate::error::{Error, Result};

/// Known quantum capacities: erasure `max(0, 1 - 2 eta)` and dephasing
/// `1 - H2(p3)`.
pub fn capacity_formula(family: &str, param: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&param) {
        return Err(Error::Parameter(format!("parameter {param} outside [0, 1]")));
    }
    match family {
        "erasure" => Ok((1.0 - 2.0 * param).max(0.0)),
        "dephasing" => Ok(1.0 - binary_entropy(param)?),
        other => Err(Error::Parameter(format!("no capacity formula for family {other:?}"))),
    }
}
