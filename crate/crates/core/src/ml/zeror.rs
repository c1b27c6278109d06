use serde::{Deserialize, Serialize};

use super::{argmax_first, MlError, TrainingSet};

/// Always predicts the training majority class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroR {
    pub majority: usize,
    pub class_counts: Vec<usize>,
}

impl ZeroR {
    pub fn predict(&self) -> usize {
        self.majority
    }
}

pub fn train_zeror(data: &TrainingSet<'_>) -> Result<ZeroR, MlError> {
    if data.is_empty() {
        return Err(MlError::EmptyTrainingSet);
    }
    let class_counts = data.class_counts();
    Ok(ZeroR { majority: argmax_first(&class_counts), class_counts })
}
