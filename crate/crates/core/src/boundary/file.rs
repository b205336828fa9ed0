use serde::{Deserialize, Serialize};

use super::{BandKernel, CompactificationModel};
use crate::error::{Error, Result};

/// A model file: the compactification and the band kernel on it.
///
/// ```toml
/// [model]
/// radius = 50
/// interior_core = [0]
///
/// [[model.boundary]]
/// label = "+inf"
/// group = { lattice = 1 }
/// rays = [{ start = 1, direction = "up" }]
///
/// [band]
/// bandwidth = 1
/// convergence = "eventual"
///
/// [[band.coefficients]]
/// offset = 0
/// profile = { step = { left = [4.0, 0.0], right = [0.0, 0.0], at = 0 } }
///
/// [[band.limits]]
/// point = "+inf"
/// offset = 0
/// value = [0.0, 0.0]
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub model: CompactificationModel,
    pub band: BandKernel,
}

impl ModelFile {
    pub fn new(model: CompactificationModel, band: BandKernel) -> Result<Self> {
        band.check_model(&model)?;
        Ok(ModelFile { model, band })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let de = toml::Deserializer::parse(text).map_err(|e| Error::BadModel(e.to_string()))?;
        let file: ModelFile = serde::Deserialize::deserialize(de).map_err(|e| Error::BadModel(e.to_string()))?;
        file.band.check_model(&file.model)?;
        Ok(file)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("model files serialize")
    }
}
