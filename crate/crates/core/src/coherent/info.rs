use crate::channel::{complementary, DensityOperator, KrausChannel};
use crate::coherent::entropy::von_neumann_entropy;
use crate::error::Result;

/// `I_C(rho; ch) = H(ch(rho)) - H(ch^c(rho))` in bits, with the complement
/// taken from the canonical isometric extension.
pub fn coherent_information(ch: &KrausChannel, rho: &DensityOperator) -> Result<f64> {
    CoherentInfo::new(ch)?.evaluate(rho)
}

/// A channel paired with its complement for repeated evaluation.
#[derive(Debug, Clone)]
pub struct CoherentInfo {
    channel: KrausChannel,
    complement: KrausChannel,
}

impl CoherentInfo {
    pub fn new(ch: &KrausChannel) -> Result<Self> {
        Ok(Self {
            channel: ch.clone(),
            complement: complementary(ch)?,
        })
    }

    /// Uses a caller-supplied complement instead of the canonical one.
    pub fn with_complement(ch: &KrausChannel, complement: &KrausChannel) -> Self {
        Self {
            channel: ch.clone(),
            complement: complement.clone(),
        }
    }

    pub fn channel(&self) -> &KrausChannel {
        &self.channel
    }

    pub fn complement(&self) -> &KrausChannel {
        &self.complement
    }

    pub fn d_in(&self) -> usize {
        self.channel.d_in()
    }

    pub fn evaluate(&self, rho: &DensityOperator) -> Result<f64> {
        let bob = von_neumann_entropy(&self.channel.apply(rho)?)?;
        let eve = von_neumann_entropy(&self.complement.apply(rho)?)?;
        Ok(bob - eve)
    }
}
