//! Text form of ideals and exponent vectors.
//!
//! An ideal is a `;`-separated list of generators, each a `,`-separated list
//! of non-negative decimal exponents: `4,0,0;0,5,0;0,0,7`. Spaces, tabs and
//! newlines may surround any token.

use monideal::{ExponentVector, MonomialIdeal};
use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("generator {row} is empty")]
    EmptyGenerator { row: usize },
    #[error("generator {row} has {found} exponents, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("negative exponent {token:?} in generator {row}")]
    Negative { row: usize, token: String },
    #[error("{token:?} in generator {row} is not a non-negative integer")]
    NotAnInteger { row: usize, token: String },
}

fn parse_row(row: usize, text: &str) -> Result<Vec<BigUint>, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::EmptyGenerator { row });
    }
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                let token = tok.to_string();
                return Err(if tok.starts_with('-') && tok.len() > 1 {
                    ParseError::Negative { row, token }
                } else {
                    ParseError::NotAnInteger { row, token }
                });
            }
            Ok(tok.parse::<BigUint>().expect("ascii digits"))
        })
        .collect()
}

/// Parses and minimalizes an ideal.
pub fn parse_ideal(text: &str) -> Result<MonomialIdeal, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    let mut rows = Vec::new();
    for (row, part) in text.split(';').enumerate() {
        let coords = parse_row(row + 1, part)?;
        if let Some(first) = rows.first().map(|r: &Vec<BigUint>| r.len()) {
            if coords.len() != first {
                return Err(ParseError::Ragged {
                    row: row + 1,
                    expected: first,
                    found: coords.len(),
                });
            }
        }
        rows.push(coords);
    }
    let dim = rows[0].len();
    let gens = rows.into_iter().map(|c| ExponentVector::new(c).expect("nonempty row"));
    Ok(MonomialIdeal::minimalize(gens, dim).expect("rows share one dimension"))
}

/// Parses a single exponent vector such as `2,4,5`.
pub fn parse_vector(text: &str) -> Result<ExponentVector, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(ExponentVector::new(parse_row(1, text)?).expect("nonempty row"))
}

/// Inverse of [`parse_ideal`] on minimalized ideals.
pub fn format_ideal(ideal: &MonomialIdeal) -> String {
    ideal.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_the_pure_power_ideal() {
        let i = parse_ideal("4,0,0;0,5,0;0,0,7").unwrap();
        assert_eq!(i, MonomialIdeal::pure_powers(&ExponentVector::from_u64s(&[4, 5, 7])));
    }

    #[test]
    fn single_zero_is_the_unit_ideal() {
        let i = parse_ideal("0").unwrap();
        assert!(i.is_unit_ideal());
        assert_eq!(i.dim(), 1);
    }

    #[test]
    fn drops_redundant_generators() {
        let i = parse_ideal("2,0;4,0;0,3").unwrap();
        assert_eq!(format_ideal(&i), "0,3;2,0");
    }

    #[test]
    fn whitespace_and_newlines() {
        let i = parse_ideal(" 1, 2 ;\n 3,0\n").unwrap();
        assert_eq!(i.len(), 2);
    }

    #[test]
    fn errors() {
        assert_eq!(parse_ideal("  "), Err(ParseError::Empty));
        assert!(matches!(
            parse_ideal("1,2;3"),
            Err(ParseError::Ragged {
                row: 2,
                expected: 2,
                found: 1
            })
        ));
        assert!(matches!(parse_ideal("1,-2"), Err(ParseError::Negative { .. })));
        assert!(matches!(parse_ideal("1,2.5"), Err(ParseError::NotAnInteger { .. })));
        assert!(matches!(parse_ideal("1,x"), Err(ParseError::NotAnInteger { .. })));
        assert!(matches!(
            parse_ideal("1,2;"),
            Err(ParseError::EmptyGenerator { row: 2 })
        ));
        assert!(matches!(parse_ideal("1,,2"), Err(ParseError::NotAnInteger { .. })));
        assert!(matches!(parse_ideal("+3"), Err(ParseError::NotAnInteger { .. })));
    }

    #[test]
    fn big_exponents_survive() {
        let text = "0,1;123456789012345678901234567890,0";
        assert_eq!(format_ideal(&parse_ideal(text).unwrap()), text);
    }
}
