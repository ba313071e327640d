use std::fs;
use std::io::{self, Read};
use std::path::Path;

use unidp::RealDataset;

use crate::failure::Failure;

/// Reads one real per line from `path`, or stdin for `None` / `-`.
/// Blank lines are skipped; anything else must parse as a finite number.
pub fn read_values(path: Option<&Path>) -> Result<RealDataset, Failure> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    parse_values(&text)
}

pub fn parse_values(text: &str) -> Result<RealDataset, Failure> {
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let x: f64 = line.parse().map_err(|_| Failure::Parse {
            line: i + 1,
            message: format!("not a number: {line:?}"),
        })?;
        if !x.is_finite() {
            return Err(Failure::Parse {
                line: i + 1,
                message: format!("not finite: {line:?}"),
            });
        }
        values.push(x);
    }
    if values.is_empty() {
        return Err(unidp::Error::InsufficientSample { n: 0, required: 0.0 }.into());
    }
    Ok(RealDataset::new(values)?)
}

/// Accepts plain decimals and simple fractions such as `1/16`.
pub fn parse_number(s: &str) -> Result<f64, String> {
    let value = match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (f64, f64) = (
                a.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?,
                b.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?,
            );
            a / b
        }
        None => s.trim().parse().map_err(|_| format!("not a number: {s:?}"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("not finite: {s:?}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        let d = parse_values("3\n\n 1.5 \n-2e1\n").unwrap();
        assert_eq!(d.values(), &[-20.0, 1.5, 3.0]);
        assert!(matches!(parse_values("1\nx\n"), Err(Failure::Parse { line: 2, .. })));
        assert!(matches!(parse_values("inf\n"), Err(Failure::Parse { line: 1, .. })));
        assert_eq!(parse_values("\n\n").unwrap_err().exit_code(), 4);
    }

    #[test]
    fn numbers() {
        assert_eq!(parse_number("1/16").unwrap(), 0.0625);
        assert_eq!(parse_number("0.5").unwrap(), 0.5);
        assert!(parse_number("1/0").is_err());
        assert!(parse_number("a").is_err());
    }
}
