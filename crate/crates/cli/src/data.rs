use std::path::Path;

use stein_mde::Sample;

use crate::error::CliError;

/// Parses newline-delimited positive reals. Blank lines are skipped; every
/// other line must hold exactly one finite, strictly positive number.
pub fn parse_data(text: &str) -> Result<Sample, CliError> {
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let field = raw.trim();
        if field.is_empty() {
            continue;
        }
        let v: f64 = field
            .parse()
            .map_err(|_| CliError::Config(format!("line {line}: not a number: `{field}`")))?;
        if !v.is_finite() {
            return Err(CliError::Config(format!("line {line}: non-finite value")));
        }
        if v <= 0.0 {
            return Err(CliError::Config(format!("line {line}: nonpositive value")));
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(CliError::Config("data file holds no observations".into()));
    }
    Sample::new(values).map_err(|e| CliError::Config(e.to_string()))
}

pub fn read_data(path: &Path) -> Result<Sample, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_data(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(text: &str) -> String {
        parse_data(text).unwrap_err().to_string()
    }

    #[test]
    fn parses_and_reports_lines() {
        assert_eq!(parse_data("1\n2\n\n3\n").unwrap().len(), 3);
        assert_eq!(err("1\n-1\n3"), "line 2: nonpositive value");
        assert_eq!(err("1\n0"), "line 2: nonpositive value");
        assert_eq!(err("1\nabc"), "line 2: not a number: `abc`");
        assert_eq!(err("inf"), "line 1: non-finite value");
        assert_eq!(err("\n\n"), "data file holds no observations");
    }
}
