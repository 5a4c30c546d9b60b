//! Fixed-width float text.

use serde::ser::{Serialize, Serializer};
use serde_json::value::RawValue;

use ratapprox::C64;

/// `x` with 17 significant digits, e.g. `1.0000000000000000e0`; enough to
/// read back the same `f64`.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// A JSON number with 17 significant digits, or `null` when not finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(fmt17(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

impl From<f64> for Num {
    fn from(x: f64) -> Self {
        Self(x)
    }
}

pub fn pair(z: C64) -> [Num; 2] {
    [Num(z.re), Num(z.im)]
}

pub fn pairs(z: &[C64]) -> Vec<[Num; 2]> {
    z.iter().map(|&z| pair(z)).collect()
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE, f64::MAX] {
            let s = fmt17(x);
            assert_eq!(s.split('e').next().unwrap().chars().filter(char::is_ascii_digit).count(), 17);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn non_finite_is_null() {
        assert_eq!(serde_json::to_string(&[Num(f64::NAN), Num(f64::INFINITY)]).unwrap(), "[null,null]");
        assert_eq!(serde_json::to_string(&Num(0.5)).unwrap(), "5.0000000000000000e-1");
    }
}
