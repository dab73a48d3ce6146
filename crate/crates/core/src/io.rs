//! Operator files and number formatting.
//!
//! An operator file holds either the complex matrix, as
//! `{"re": [[..4]; 4], "im": [[..4]; 4]}` (with `im` optional), or the Pauli
//! tensor, as `{"pauli": [[..4]; 4]}` with `ω_{μν}` at row `μ` (Alice) and
//! column `ν` (Bob).

use std::io;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use serde_json::ser::{CompactFormatter, Formatter, PrettyFormatter};

use crate::error::{Error, Result};
use crate::pauli::{self, HermitianOp, PauliTensor};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub re: Option<[[f64; 4]; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<[[f64; 4]; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pauli: Option<[[f64; 4]; 4]>,
}

impl OperatorFile {
    pub fn from_operator(w: &HermitianOp<f64>) -> Self {
        let m = w.matrix();
        Self {
            re: Some(m.map(|r| r.map(|z| z.re))),
            im: Some(m.map(|r| r.map(|z| z.im))),
            pauli: None,
        }
    }

    pub fn from_pauli(omega: &PauliTensor<f64>) -> Self {
        Self {
            pauli: Some(omega.omega),
            ..Self::default()
        }
    }

    /// Converts to an operator, checking Hermiticity.
    pub fn to_operator(&self) -> Result<HermitianOp<f64>> {
        match (&self.re, &self.im, &self.pauli) {
            (None, None, Some(p)) => Ok(pauli::to_hermitian(&PauliTensor::new(*p))),
            (Some(re), im, None) => {
                let im = im.unwrap_or([[0.0; 4]; 4]);
                let m = std::array::from_fn(|i| {
                    std::array::from_fn(|j| Complex::new(re[i][j], im[i][j]))
                });
                HermitianOp::new(m)
            }
            (None, Some(_), None) => Err(Error::Parse("\"im\" given without \"re\"".into())),
            (None, None, None) => Err(Error::Parse(
                "expected either \"re\"/\"im\" or \"pauli\"".into(),
            )),
            _ => Err(Error::Parse(
                "\"re\"/\"im\" and \"pauli\" are mutually exclusive".into(),
            )),
        }
    }
}

/// Parses an operator file; syntax problems become [`Error::Parse`].
pub fn parse_operator(text: &str) -> Result<HermitianOp<f64>> {
    let file: OperatorFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_operator()
}

/// Seventeen significant digits, enough to round-trip any `f64`. Negative
/// zero prints as zero.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{:.16e}", x + 0.0)
    } else {
        // not representable in JSON or reparseable CSV numbers
        "nan".to_string()
    }
}

/// Wraps a formatter so that every float is written by [`fmt_f64`] and
/// non-finite values as `null`.
struct Precise<F>(F);

impl<F: Formatter> Formatter for Precise<F> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            w.write_all(fmt_f64(value).as_bytes())
        } else {
            w.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

fn write_with<T: Serialize + ?Sized, F: Formatter>(value: &T, f: F) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Precise(f));
    value
        .serialize(&mut ser)
        .expect("serialising to memory cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("serde_json writes UTF-8")
}

/// Serialises `value` as pretty JSON followed by a newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    write_with(value, PrettyFormatter::new())
}

/// Single-line JSON followed by a newline, for bulky point sets.
pub fn to_json_compact<T: Serialize + ?Sized>(value: &T) -> String {
    write_with(value, CompactFormatter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::singlet;

    #[test]
    fn pauli_form() {
        let w = parse_operator(
            r#"{"pauli": [[0.25,0,0,0],[0,-0.25,0,0],[0,0,-0.25,0],[0,0,0,-0.25]]}"#,
        )
        .unwrap();
        assert!(w.max_deviation(&singlet()) < 1e-15);
    }

    #[test]
    fn matrix_form_round_trip() {
        let text = to_json(&OperatorFile::from_operator(&singlet()));
        let w = parse_operator(&text).unwrap();
        assert_eq!(&w, &singlet::<f64>());
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_operator("{"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_operator(r#"{"foo": 1}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(parse_operator("{}"), Err(Error::Parse(_))));
        let both = r#"{"re": [[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]], "pauli": [[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#;
        assert!(matches!(parse_operator(both), Err(Error::Parse(_))));
        let skew = r#"{"re": [[0,1,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#;
        assert!(matches!(
            parse_operator(skew),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_f64(-2.0), "-2.0000000000000000e0");
        assert_eq!(fmt_f64(-0.0), "0.0000000000000000e0");
        let x = 1.0 / 3.0;
        assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        let s = to_json(&serde_json::json!({"a": [0.5, f64::NAN], "b": 3}));
        assert!(s.contains("5.0000000000000000e-1"));
        assert!(s.contains("null"));
        assert!(s.contains("\"b\": 3"));
        assert_eq!(
            to_json_compact(&[0.25, -1.0]),
            "[2.5000000000000000e-1,-1.0000000000000000e0]\n"
        );
    }
}
