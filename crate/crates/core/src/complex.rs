//! Text form of complex numbers: `"RE,IM"`, e.g. `"0.25,-1.5"`.
//!
//! Both parts use Rust's shortest round-trip float formatting, so
//! `parse(format(z)) == z` bit for bit.

use std::fmt;

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("expected a complex number as RE,IM, got {0:?}")]
pub struct ParseComplexError(pub String);

pub fn format_complex(z: Complex64) -> String {
    format!("{},{}", z.re, z.im)
}

pub fn parse_complex(s: &str) -> Result<Complex64, ParseComplexError> {
    let err = || ParseComplexError(s.to_string());
    let (re, im) = s.trim().split_once(',').ok_or_else(err)?;
    let re: f64 = re.trim().parse().map_err(|_| err())?;
    let im: f64 = im.trim().parse().map_err(|_| err())?;
    if !re.is_finite() || !im.is_finite() {
        return Err(err());
    }
    Ok(Complex64::new(re, im))
}

/// Display adapter for the `"RE,IM"` form.
pub struct Reim(pub Complex64);

impl fmt::Display for Reim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.0.re, self.0.im)
    }
}

/// `#[serde(with = "crate::complex::reim")]` for `Complex64` fields.
pub mod reim {
    use num_complex::Complex64;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&super::Reim(*z))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_complex(&s).map_err(D::Error::custom)
    }
}
