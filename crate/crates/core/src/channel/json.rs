//! JSON import/export for Kraus channels.
//!
//! ```json
//! { "d_in": 2, "d_out": 2, "kraus": [ [ [1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0] ] ] }
//! ```
//!
//! Each Kraus operator is a flat row-major list of `[re, im]` pairs with
//! `d_out * d_in` entries.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::KrausChannel;
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelJson {
    pub d_in: usize,
    pub d_out: usize,
    pub kraus: Vec<Vec<[f64; 2]>>,
}

impl ChannelJson {
    pub fn into_channel(self) -> Result<KrausChannel> {
        let cap = Tolerances::DEFAULT.max_dim;
        if self.d_in == 0 || self.d_out == 0 || self.d_in > cap || self.d_out > cap {
            return Err(Error::Parse(format!(
                "dimensions ({}, {}) must lie in 1..={cap}",
                self.d_in, self.d_out
            )));
        }
        let expected = self.d_in * self.d_out;
        let ops = self
            .kraus
            .into_iter()
            .enumerate()
            .map(|(k, entries)| {
                if entries.len() != expected {
                    return Err(Error::Parse(format!(
                        "Kraus operator {k} has {} entries, expected {expected}",
                        entries.len()
                    )));
                }
                let data = entries.into_iter().map(|[re, im]| Complex64::new(re, im)).collect();
                Matrix::new(self.d_out, self.d_in, data)
            })
            .collect::<Result<Vec<_>>>()?;
        KrausChannel::new(self.d_in, self.d_out, ops)
    }
}

impl From<&KrausChannel> for ChannelJson {
    fn from(ch: &KrausChannel) -> Self {
        ChannelJson {
            d_in: ch.d_in(),
            d_out: ch.d_out(),
            kraus: ch
                .kraus()
                .iter()
                .map(|op| op.data().iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }
}

impl KrausChannel {
    /// Parses and validates a channel from its JSON form.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ChannelJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.into_channel()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ChannelJson::from(self)).expect("channel serializes")
    }
}
