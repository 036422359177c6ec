//! JSON helpers shared by the file formats.

use num_complex::Complex64;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

/// A float written with 17 significant digits, so output bytes depend only on
/// the value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Float(pub f64);

impl Serialize for Float {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw =
            RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

/// `[re, im]`.
pub fn complex_pair(z: Complex64) -> [Float; 2] {
    [Float(z.re), Float(z.im)]
}

pub fn to_string_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializing plain data")
}
