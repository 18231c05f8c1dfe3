//! JSON form shared by step functions and spectra:
//!
//! ```json
//! {"structure": {"m": [2, 3]}, "kind": "values", "data": [[re, im], ...]}
//! ```
//!
//! `kind` is `"values"` (one entry per cell, cell order) or `"coeffs"`
//! (one entry per character index).

use std::sync::Arc;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Result, VilenkinError};
use crate::group::VilenkinStructure;
use crate::scalar::Scalar;
use crate::transform::{Spectrum, StepFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DataKind {
    Values,
    Coeffs,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionFile {
    pub structure: VilenkinStructure,
    pub kind: DataKind,
    pub data: Vec<[f64; 2]>,
}

fn pack<T: Scalar>(data: &[Complex<T>]) -> Vec<[f64; 2]> {
    data.iter()
        .map(|c| [c.re.to_f64_lossy(), c.im.to_f64_lossy()])
        .collect()
}

fn unpack<T: Scalar>(data: &[[f64; 2]]) -> Vec<Complex<T>> {
    data.iter()
        .map(|[re, im]| Complex::new(T::of(*re), T::of(*im)))
        .collect()
}

impl FunctionFile {
    pub fn from_function<T: Scalar>(f: &StepFunction<T>) -> Self {
        Self {
            structure: (**f.structure()).clone(),
            kind: DataKind::Values,
            data: pack(f.values()),
        }
    }

    pub fn from_spectrum<T: Scalar>(s: &Spectrum<T>) -> Self {
        Self {
            structure: (**s.structure()).clone(),
            kind: DataKind::Coeffs,
            data: pack(s.coeffs()),
        }
    }

    pub fn to_function<T: Scalar>(&self) -> Result<StepFunction<T>> {
        if self.kind != DataKind::Values {
            return Err(VilenkinError::Validation(
                "file holds coefficients, not values".into(),
            ));
        }
        StepFunction::new(Arc::new(self.structure.clone()), unpack(&self.data))
    }

    pub fn to_spectrum<T: Scalar>(&self) -> Result<Spectrum<T>> {
        if self.kind != DataKind::Coeffs {
            return Err(VilenkinError::Validation(
                "file holds values, not coefficients".into(),
            ));
        }
        Spectrum::new(Arc::new(self.structure.clone()), unpack(&self.data))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| VilenkinError::Validation(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let vs = Arc::new(VilenkinStructure::new(vec![2], 1).unwrap());
        let f = StepFunction::<f64>::from_real(vs, &[1.5, -2.0]).unwrap();
        let text = FunctionFile::from_function(&f).to_json();
        assert_eq!(
            text,
            r#"{"structure":{"m":[2]},"kind":"values","data":[[1.5,0.0],[-2.0,0.0]]}"#
        );
        let back: StepFunction<f64> = FunctionFile::from_json(&text)
            .unwrap()
            .to_function()
            .unwrap();
        assert_eq!(back, f);
        assert!(FunctionFile::from_json(&text)
            .unwrap()
            .to_spectrum::<f64>()
            .is_err());
    }

    #[test]
    fn rejects_wrong_length() {
        let text = r#"{"structure":{"m":[2,2]},"kind":"coeffs","data":[[1,0]]}"#;
        assert!(FunctionFile::from_json(text)
            .unwrap()
            .to_spectrum::<f64>()
            .is_err());
    }
}
