//! The germ file format: derivative coefficients of `xi1`, `xi2` up to a
//! total-degree cap.
//!
//! Text form, line oriented (`#` comments and blank lines allowed):
//!
//! ```text
//! order 5
//! xi1 1 1 1
//! xi2 0 2 -2
//! xi2 3 0 6
//! ```
//!
//! Each coefficient line is `component j k value` with `value` an exact
//! rational (`-3`, `3/4`). Unlisted slots are zero; duplicates and slots
//! beyond the cap are rejected. The JSON variant is
//! `{"order":5,"xi1":[[1,1,"1"]],"xi2":[[0,2,"-2"],[3,0,"6"]]}`; input
//! auto-detects the format, `--json` selects it on output.

use std::fmt;

use serde::{Deserialize, Serialize};
use wcong_core::congruence::CongruenceGerm;
use wcong_core::rational::{parse_rational, Rational};
use wcong_core::series::Series2;

#[derive(Debug, Clone, PartialEq)]
pub struct GermFile {
    pub order: usize,
    pub xi1: Vec<(usize, usize, Rational)>,
    pub xi2: Vec<(usize, usize, Rational)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

#[derive(Serialize, Deserialize)]
struct GermFileJson {
    order: usize,
    #[serde(default)]
    xi1: Vec<(usize, usize, String)>,
    #[serde(default)]
    xi2: Vec<(usize, usize, String)>,
}

impl GermFile {
    /// Parse either format; JSON is detected by a leading `{`.
    pub fn parse(input: &str) -> Result<GermFile, ParseError> {
        if input.trim_start().starts_with('{') {
            GermFile::parse_json(input)
        } else {
            GermFile::parse_text(input)
        }
    }

    pub fn parse_text(input: &str) -> Result<GermFile, ParseError> {
        let mut order: Option<usize> = None;
        let mut xi1 = Vec::new();
        let mut xi2 = Vec::new();
        for (idx, raw) in input.lines().enumerate() {
            let lineno = idx + 1;
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            };
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<(usize, &str)> = line
                .split_whitespace()
                .map(|w| (line.find(w).map_or(0, |c| c + 1), w))
                .collect();
            let words: Vec<&str> = fields.iter().map(|(_, w)| *w).collect();
            match words[0] {
                "order" => {
                    if order.is_some() {
                        return Err(err(lineno, 1, "duplicate `order` line"));
                    }
                    if words.len() != 2 {
                        return Err(err(lineno, 1, "expected `order N`"));
                    }
                    let n: usize = words[1]
                        .parse()
                        .map_err(|_| err(lineno, fields[1].0, "order must be a non-negative integer"))?;
                    order = Some(n);
                }
                "xi1" | "xi2" => {
                    if words.len() != 4 {
                        return Err(err(
                            lineno,
                            1,
                            format!("expected `{} j k value`", words[0]),
                        ));
                    }
                    let j: usize = words[1]
                        .parse()
                        .map_err(|_| err(lineno, fields[1].0, "j must be a non-negative integer"))?;
                    let k: usize = words[2]
                        .parse()
                        .map_err(|_| err(lineno, fields[2].0, "k must be a non-negative integer"))?;
                    let v = parse_rational(words[3])
                        .map_err(|e| err(lineno, fields[3].0, e))?;
                    if words[0] == "xi1" {
                        xi1.push((j, k, v));
                    } else {
                        xi2.push((j, k, v));
                    }
                }
                other => {
                    return Err(err(
                        lineno,
                        1,
                        format!("unknown directive `{other}` (expected order/xi1/xi2)"),
                    ));
                }
            }
        }
        let order = order.ok_or_else(|| err(1, 1, "missing `order N` line"))?;
        let gf = GermFile { order, xi1, xi2 };
        gf.validate()?;
        Ok(gf)
    }

    pub fn parse_json(input: &str) -> Result<GermFile, ParseError> {
        let parsed: GermFileJson = serde_json::from_str(input)
            .map_err(|e| err(e.line(), e.column(), e.to_string()))?;
        let conv = |v: Vec<(usize, usize, String)>| -> Result<Vec<(usize, usize, Rational)>, ParseError> {
            v.into_iter()
                .map(|(j, k, s)| {
                    parse_rational(&s)
                        .map(|r| (j, k, r))
                        .map_err(|e| err(0, 0, e))
                })
                .collect()
        };
        let gf = GermFile {
            order: parsed.order,
            xi1: conv(parsed.xi1)?,
            xi2: conv(parsed.xi2)?,
        };
        gf.validate()?;
        Ok(gf)
    }

    fn validate(&self) -> Result<(), ParseError> {
        for (name, list) in [("xi1", &self.xi1), ("xi2", &self.xi2)] {
            let mut seen = std::collections::BTreeSet::new();
            for (j, k, _) in list {
                if j + k > self.order {
                    return Err(err(
                        0,
                        0,
                        format!("{name} slot ({j},{k}) exceeds order {}", self.order),
                    ));
                }
                if !seen.insert((*j, *k)) {
                    return Err(err(0, 0, format!("duplicate {name} slot ({j},{k})")));
                }
            }
        }
        Ok(())
    }

    pub fn to_germ(&self) -> CongruenceGerm {
        let mut xi1 = Series2::zero(self.order);
        let mut xi2 = Series2::zero(self.order);
        for (j, k, v) in &self.xi1 {
            xi1.set_derivative_coeff(*j, *k, v.clone());
        }
        for (j, k, v) in &self.xi2 {
            xi2.set_derivative_coeff(*j, *k, v.clone());
        }
        CongruenceGerm::new(xi1, xi2).expect("equal caps by construction")
    }

    /// Capture the nonzero derivative coefficients of a germ.
    pub fn from_germ(germ: &CongruenceGerm) -> GermFile {
        use num::traits::Zero;
        let mut xi1 = Vec::new();
        let mut xi2 = Vec::new();
        for d in 0..=germ.cap() {
            for k in 0..=d {
                let j = d - k;
                let p = germ.p(j, k);
                if !p.is_zero() {
                    xi1.push((j, k, p));
                }
                let q = germ.q(j, k);
                if !q.is_zero() {
                    xi2.push((j, k, q));
                }
            }
        }
        GermFile {
            order: germ.cap(),
            xi1,
            xi2,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("order {}\n", self.order);
        for (j, k, v) in &self.xi1 {
            out.push_str(&format!("xi1 {j} {k} {v}\n"));
        }
        for (j, k, v) in &self.xi2 {
            out.push_str(&format!("xi2 {j} {k} {v}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let enc = GermFileJson {
            order: self.order,
            xi1: self
                .xi1
                .iter()
                .map(|(j, k, v)| (*j, *k, v.to_string()))
                .collect(),
            xi2: self
                .xi2
                .iter()
                .map(|(j, k, v)| (*j, *k, v.to_string()))
                .collect(),
        };
        serde_json::to_string_pretty(&enc).expect("germ file serializes")
    }
}
