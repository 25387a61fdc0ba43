//! Line-delimited text format for three-qubit states.
//!
//! Two layouts share the container. Amplitude files carry the full state
//! vector, one basis slot per line; ASD files carry the five Schmidt
//! coefficients and the phase:
//!
//! ```text
//! format amplitudes          format asd
//! amp 000 <re> <im>          lambda <l0> <l1> <l2> <l3> <l4>
//! ...                        phi <radians>
//! amp 111 <re> <im>
//! ```
//!
//! `#` starts a comment, blank lines are ignored, omitted `amp` slots are
//! zero, and `phi` defaults to 0. Writers emit every number with 17
//! significant digits so a write/read cycle is bit-exact.

use std::fmt;

use ghzlu::asd::compute_asd;
use ghzlu::{AsdState64, LocalUnitaryTriple64, PureState64, Tolerances64};
use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub enum StateFile {
    Amplitudes([Complex64; 8]),
    Asd { lambda: [f64; 5], phi: f64 },
}

#[derive(Clone, Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn parse_number(token: &str, line: usize, what: &str) -> Result<f64, ParseError> {
    token.parse::<f64>().map_err(|_| ParseError {
        line,
        message: format!("{what} is not a number: '{token}'"),
    })
}

pub fn parse(text: &str) -> Result<StateFile, ParseError> {
    let mut format: Option<&str> = None;
    let mut amp = [Complex64::new(0.0, 0.0); 8];
    let mut amp_seen = [false; 8];
    let mut any_amp = false;
    let mut lambda: Option<[f64; 5]> = None;
    let mut phi: Option<f64> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let key = tokens.next().unwrap();
        let rest: Vec<&str> = tokens.collect();
        let fail = |message: String| ParseError { line, message };

        match key {
            "format" => {
                if format.is_some() {
                    return Err(fail("duplicate 'format' line".into()));
                }
                match rest.as_slice() {
                    ["amplitudes"] => format = Some("amplitudes"),
                    ["asd"] => format = Some("asd"),
                    _ => {
                        return Err(fail(format!(
                            "expected 'format amplitudes' or 'format asd', got 'format {}'",
                            rest.join(" ")
                        )))
                    }
                }
            }
            "amp" => {
                if format != Some("amplitudes") {
                    return Err(fail(
                        "'amp' is only valid after 'format amplitudes'".into(),
                    ));
                }
                if rest.len() != 3 {
                    return Err(fail(format!(
                        "'amp' takes a 3-bit slot and two values, got {} tokens",
                        rest.len()
                    )));
                }
                let slot = rest[0];
                if slot.len() != 3 || !slot.bytes().all(|b| b == b'0' || b == b'1') {
                    return Err(fail(format!("bad basis slot '{slot}', expected e.g. '101'")));
                }
                let i = slot
                    .bytes()
                    .fold(0usize, |acc, b| (acc << 1) | usize::from(b == b'1'));
                if amp_seen[i] {
                    return Err(fail(format!("duplicate amplitude for slot {slot}")));
                }
                amp_seen[i] = true;
                any_amp = true;
                amp[i] = Complex64::new(
                    parse_number(rest[1], line, "real part")?,
                    parse_number(rest[2], line, "imaginary part")?,
                );
            }
            "lambda" => {
                if format != Some("asd") {
                    return Err(fail("'lambda' is only valid after 'format asd'".into()));
                }
                if lambda.is_some() {
                    return Err(fail("duplicate 'lambda' line".into()));
                }
                if rest.len() != 5 {
                    return Err(fail(format!(
                        "'lambda' takes 5 values, got {}",
                        rest.len()
                    )));
                }
                let mut l = [0.0; 5];
                for (slot, token) in l.iter_mut().zip(&rest) {
                    *slot = parse_number(token, line, "coefficient")?;
                }
                lambda = Some(l);
            }
            "phi" => {
                if format != Some("asd") {
                    return Err(fail("'phi' is only valid after 'format asd'".into()));
                }
                if phi.is_some() {
                    return Err(fail("duplicate 'phi' line".into()));
                }
                if rest.len() != 1 {
                    return Err(fail(format!("'phi' takes 1 value, got {}", rest.len())));
                }
                phi = Some(parse_number(rest[0], line, "phase")?);
            }
            other => return Err(fail(format!("unknown directive '{other}'"))),
        }
    }

    match format {
        None => Err(ParseError {
            line: last_line,
            message: "missing 'format' line".into(),
        }),
        Some("amplitudes") => {
            if !any_amp {
                return Err(ParseError {
                    line: last_line,
                    message: "amplitude file has no 'amp' lines".into(),
                });
            }
            Ok(StateFile::Amplitudes(amp))
        }
        Some(_) => match lambda {
            Some(lambda) => Ok(StateFile::Asd {
                lambda,
                phi: phi.unwrap_or(0.0),
            }),
            None => Err(ParseError {
                line: last_line,
                message: "asd file has no 'lambda' line".into(),
            }),
        },
    }
}

pub fn render(state: &StateFile) -> String {
    let mut out = String::new();
    match state {
        StateFile::Amplitudes(amp) => {
            out.push_str("format amplitudes\n");
            for (i, a) in amp.iter().enumerate() {
                out.push_str(&format!("amp {i:03b} {:.16e} {:.16e}\n", a.re, a.im));
            }
        }
        StateFile::Asd { lambda, phi } => {
            out.push_str("format asd\nlambda");
            for l in lambda {
                out.push_str(&format!(" {l:.16e}"));
            }
            out.push_str(&format!("\nphi {phi:.16e}\n"));
        }
    }
    out
}

/// A parsed file brought into the library's domain.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub state: PureState64,
    pub asd: AsdState64,
    /// Present when the input was an amplitude file: maps `state` onto
    /// `asd.reconstruct()`.
    pub witness: Option<LocalUnitaryTriple64>,
}

/// Validates and renormalizes a parsed file. `input_tol` is the acceptable
/// normalization slack on the raw file contents (much looser than the
/// internal tolerances, which apply after renormalization).
pub fn load(
    parsed: &StateFile,
    input_tol: f64,
    tol: &Tolerances64,
) -> Result<Loaded, String> {
    match parsed {
        StateFile::Amplitudes(amp) => {
            let norm = amp.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if norm <= 0.0 {
                return Err("state vector is zero".into());
            }
            if (norm - 1.0).abs() > input_tol {
                return Err(format!(
                    "state vector norm is {norm}, more than {input_tol} away from 1"
                ));
            }
            let mut normalized = *amp;
            for a in normalized.iter_mut() {
                *a /= norm;
            }
            let state = PureState64::new(normalized, tol).map_err(|e| e.to_string())?;
            let (asd, witness) = compute_asd(&state, tol).map_err(|e| e.to_string())?;
            Ok(Loaded {
                state,
                asd,
                witness: Some(witness),
            })
        }
        StateFile::Asd { lambda, phi } => {
            if let Some(bad) = lambda.iter().find(|l| **l < 0.0 || !l.is_finite()) {
                return Err(format!("coefficients must be nonnegative, got {bad}"));
            }
            let norm = lambda.iter().map(|l| l * l).sum::<f64>().sqrt();
            if norm <= 0.0 {
                return Err("coefficient tuple is zero".into());
            }
            if (norm - 1.0).abs() > input_tol {
                return Err(format!(
                    "coefficient norm is {norm}, more than {input_tol} away from 1"
                ));
            }
            let scaled = lambda.map(|l| l / norm);
            let asd = AsdState64::new(scaled, *phi, tol).map_err(|e| e.to_string())?;
            Ok(Loaded {
                state: asd.reconstruct(),
                asd,
                witness: None,
            })
        }
    }
}
