//! Parameter sweeps written as CSV.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use epolar::coherent::{
    coherent_information, delta_threshold, epolarizing_diagonal_coherent_information, log2_delta_threshold,
    maximize_coherent_information, theorem1_lower_bound, SearchStrategy,
};
use epolar::families::Family;
use epolar::linalg::hermitian_eig;
use epolar::{DensityOperator, Error, KrausChannel, Result};
use rayon::prelude::*;

pub const HEADER: [&str; 6] = ["family", "param", "delta", "ic_value", "lower_bound", "threshold_log2"];

/// Which input `diag(1 - delta, delta)` each grid point is evaluated at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaPolicy {
    /// `min(delta*(eta), 0.4)`, for families with a positivity threshold.
    Threshold,
    Fixed(f64),
    /// Maximize over all inputs; delta reports the smallest eigenvalue of
    /// the best input found.
    Optimize,
}

impl FromStr for DeltaPolicy {
    type Err = Error;

    /// Accepts `threshold`, `optimize` or `fixed:<delta>` with delta in [0, 1].
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "threshold" => Ok(DeltaPolicy::Threshold),
            "optimize" => Ok(DeltaPolicy::Optimize),
            _ => {
                let value = s
                    .strip_prefix("fixed:")
                    .ok_or_else(|| Error::Parse(format!("unknown delta policy {s:?}")))?;
                let delta: f64 = value
                    .trim()
                    .parse()
                    .map_err(|e| Error::Parse(format!("invalid delta {value:?}: {e}")))?;
                if !(0.0..=1.0).contains(&delta) {
                    return Err(Error::Parse(format!("delta {delta} outside [0, 1]")));
                }
                Ok(DeltaPolicy::Fixed(delta))
            }
        }
    }
}

impl fmt::Display for DeltaPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaPolicy::Threshold => f.write_str("threshold"),
            DeltaPolicy::Optimize => f.write_str("optimize"),
            DeltaPolicy::Fixed(d) => write!(f, "fixed:{d}"),
        }
    }
}

/// What a sweep runs over.
#[derive(Debug, Clone)]
pub enum SweepTarget {
    Family(Family),
    /// A user channel; the swept parameter is delta itself.
    Channel { label: String, channel: KrausChannel },
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub target: SweepTarget,
    pub param_min: f64,
    pub param_max: f64,
    pub steps: usize,
    /// Ignored for channel targets.
    pub delta_policy: DeltaPolicy,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub family: String,
    pub param: f64,
    pub delta: f64,
    pub ic_value: f64,
    pub lower_bound: Option<f64>,
    pub threshold_log2: Option<f64>,
}

impl SweepRow {
    /// Fields at 17 significant digits; missing values are empty.
    pub fn record(&self) -> [String; 6] {
        let num = |x: f64| format!("{x:.16e}");
        let opt = |x: Option<f64>| x.map(num).unwrap_or_default();
        [
            self.family.clone(),
            num(self.param),
            num(self.delta),
            num(self.ic_value),
            opt(self.lower_bound),
            opt(self.threshold_log2),
        ]
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::Parameter("steps must be at least 1".into()));
        }
        if self.param_min.is_nan() || self.param_max.is_nan() || self.param_min > self.param_max {
            return Err(Error::Parameter(format!(
                "param_min {} exceeds param_max {}",
                self.param_min, self.param_max
            )));
        }
        if let SweepTarget::Family(f) = self.target {
            if !f.is_scalar() {
                return Err(Error::Parameter(format!("family {f} cannot be swept over a scalar")));
            }
            if self.delta_policy == DeltaPolicy::Threshold && !has_threshold(f) {
                return Err(Error::Parameter(format!("family {f} has no positivity threshold")));
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.param_min];
        }
        let span = self.param_max - self.param_min;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.param_max
                } else {
                    self.param_min + span * i as f64 / (self.steps - 1) as f64
                }
            })
            .collect()
    }

    /// Evaluates every grid point; rows come back in grid order.
    pub fn run(&self) -> Result<Vec<SweepRow>> {
        self.validate()?;
        self.grid().par_iter().map(|&p| self.row(p)).collect()
    }

    fn row(&self, param: f64) -> Result<SweepRow> {
        match &self.target {
            SweepTarget::Family(f) => family_row(*f, param, self.delta_policy),
            SweepTarget::Channel { label, channel } => {
                let rho = delta_input(channel.d_in(), param)?;
                Ok(SweepRow {
                    family: label.clone(),
                    param,
                    delta: param,
                    ic_value: coherent_information(channel, &rho)?,
                    lower_bound: None,
                    threshold_log2: None,
                })
            }
        }
    }
}

/// Families whose coherent information on `rho_delta` is the epolarizing one.
fn has_threshold(f: Family) -> bool {
    matches!(f, Family::Epolarizing | Family::JointIsometry | Family::Depolarizing)
}

fn bound_columns(f: Family) -> bool {
    matches!(f, Family::Epolarizing | Family::JointIsometry)
}

/// `diag(1 - delta, delta, 0, ...)` on `d` levels.
fn delta_input(d: usize, delta: f64) -> Result<DensityOperator> {
    if d < 2 {
        return Err(Error::Parameter("channel input must have at least two levels".into()));
    }
    let mut probs = vec![0.0; d];
    probs[0] = 1.0 - delta;
    probs[1] = delta;
    DensityOperator::diagonal(&probs)
}

fn family_row(f: Family, param: f64, policy: DeltaPolicy) -> Result<SweepRow> {
    let ch = f.channel(param)?;
    let (delta, optimized) = match policy {
        DeltaPolicy::Threshold => (delta_threshold(param)?.min(0.4), None),
        DeltaPolicy::Fixed(d) => (d, None),
        DeltaPolicy::Optimize => {
            let best = maximize_coherent_information(&ch, &SearchStrategy::default())?;
            let delta = hermitian_eig(&best.argmax_state)?.min().clamp(0.0, 0.5);
            (delta, Some(best.value))
        }
    };
    let ic_value = match (optimized, f) {
        (Some(v), _) => v,
        // Structured evaluation resolves the tiny values near the threshold.
        (None, Family::Epolarizing) if delta <= 0.5 => epolarizing_diagonal_coherent_information(param, delta)?,
        (None, Family::Depolarizing) if delta <= 0.5 => -epolarizing_diagonal_coherent_information(param, delta)?,
        _ => coherent_information(&ch, &delta_input(ch.d_in(), delta)?)?,
    };
    let (lower_bound, threshold_log2) = if bound_columns(f) && param > 0.0 {
        (Some(theorem1_lower_bound(param, delta)?), Some(log2_delta_threshold(param)?))
    } else {
        (None, None)
    };
    Ok(SweepRow {
        family: f.name().to_string(),
        param,
        delta,
        ic_value,
        lower_bound,
        threshold_log2,
    })
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(f: Family, lo: f64, hi: f64, steps: usize, policy: DeltaPolicy) -> SweepSpec {
        SweepSpec {
            target: SweepTarget::Family(f),
            param_min: lo,
            param_max: hi,
            steps,
            delta_policy: policy,
        }
    }

    #[test]
    fn policy_parsing() {
        assert_eq!("threshold".parse::<DeltaPolicy>().unwrap(), DeltaPolicy::Threshold);
        assert_eq!("optimize".parse::<DeltaPolicy>().unwrap(), DeltaPolicy::Optimize);
        assert_eq!("fixed:0.25".parse::<DeltaPolicy>().unwrap(), DeltaPolicy::Fixed(0.25));
        for bad in ["", "fixed:", "fixed:2", "fixed:nan", "Threshold", "fixed0.1"] {
            assert!(bad.parse::<DeltaPolicy>().is_err(), "{bad}");
        }
        let p = DeltaPolicy::Fixed(0.125);
        assert_eq!(p.to_string().parse::<DeltaPolicy>().unwrap(), p);
    }

    #[test]
    fn grid_shapes() {
        assert_eq!(spec(Family::Erasure, 0.5, 0.5, 1, DeltaPolicy::Optimize).grid(), vec![0.5]);
        let g = spec(Family::Erasure, 0.1, 1.0, 10, DeltaPolicy::Optimize).grid();
        assert_eq!(g.len(), 10);
        assert_eq!(g[0], 0.1);
        assert_eq!(g[9], 1.0);
        assert!(spec(Family::Erasure, 0.6, 0.5, 3, DeltaPolicy::Optimize).validate().is_err());
        assert!(spec(Family::Erasure, 0.1, 0.5, 0, DeltaPolicy::Optimize).validate().is_err());
        assert!(spec(Family::Erasure, 0.1, 0.5, 2, DeltaPolicy::Threshold).validate().is_err());
        assert!(spec(Family::MixedPauli, 0.1, 0.5, 2, DeltaPolicy::Optimize).validate().is_err());
    }

    #[test]
    fn epolarizing_threshold_rows_positive() {
        let rows = spec(Family::Epolarizing, 0.1, 1.0, 10, DeltaPolicy::Threshold).run().unwrap();
        assert_eq!(rows.len(), 10);
        for r in &rows {
            assert!(r.ic_value > 0.0, "{r:?}");
            assert!(r.ic_value >= r.lower_bound.unwrap() - 1e-12);
        }
    }

    #[test]
    fn depolarizing_is_negated_epolarizing() {
        let a = spec(Family::Depolarizing, 0.2, 0.8, 4, DeltaPolicy::Fixed(0.3)).run().unwrap();
        let b = spec(Family::Epolarizing, 0.2, 0.8, 4, DeltaPolicy::Fixed(0.3)).run().unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x.ic_value + y.ic_value).abs() < 1e-15);
            assert!(x.lower_bound.is_none());
        }
    }

    #[test]
    fn record_precision() {
        let row = SweepRow {
            family: "erasure".into(),
            param: 0.1,
            delta: 0.5,
            ic_value: 1.0 / 3.0,
            lower_bound: None,
            threshold_log2: Some(-4.0),
        };
        let rec = row.record();
        assert_eq!(rec[1], "1.0000000000000001e-1");
        assert_eq!(rec[3].parse::<f64>().unwrap(), 1.0 / 3.0);
        assert_eq!(rec[4], "");
        assert_eq!(rec[5], "-4.0000000000000000e0");
    }
}
