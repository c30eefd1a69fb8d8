//! Reading distributions and templates from CSV and JSON files.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;

use crate::cdf::StepCdf;

use super::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// From the file extension, unless given explicitly.
    pub fn resolve(path: &Path, explicit: Option<Format>) -> Result<Format, CliError> {
        if let Some(f) = explicit {
            return Ok(f);
        }
        match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("csv") => Ok(Format::Csv),
            Some("json") => Ok(Format::Json),
            _ => Err(CliError::Validation(format!(
                "cannot infer the format of {}; pass --format csv or --format json",
                path.display()
            ))),
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// A CDF from a sample file (CSV) or a serialized CDF (JSON).
pub fn load_cdf(path: &Path, format: Option<Format>) -> Result<StepCdf, CliError> {
    let text = read_text(path)?;
    let source = path.display().to_string();
    match Format::resolve(path, format)? {
        Format::Csv => parse_samples_csv(&text, &source),
        Format::Json => parse_json(&text, &source),
    }
}

pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    parse_json(&read_text(path)?, &path.display().to_string())
}

/// Syntax errors are parse errors with their line; well-formed documents
/// that violate an invariant are validation errors.
pub fn parse_json<T: DeserializeOwned>(text: &str, source: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| {
        use serde_json::error::Category;
        match e.classify() {
            Category::Data => CliError::Validation(format!("{source}: {e}")),
            _ => CliError::Parse {
                file: source.to_string(),
                line: Some(e.line()),
                message: e.to_string(),
            },
        }
    })
}

/// One sample per line with an optional weight in the second column. Either
/// every row carries a weight or none does.
pub fn parse_samples_csv(text: &str, source: &str) -> Result<StepCdf, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut samples = Vec::new();
    let mut weights = Vec::new();
    let mut weighted: Option<bool> = None;
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Parse {
            file: source.to_string(),
            line: e.position().map(|p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = record.position().map(|p| p.line() as usize);
        let parse_err = |message: String| CliError::Parse {
            file: source.to_string(),
            line,
            message,
        };
        if record.len() > 2 {
            return Err(parse_err(format!("expected 1 or 2 fields, found {}", record.len())));
        }
        let number = |field: &str, what: &str| -> Result<f64, CliError> {
            let v: f64 = field
                .parse()
                .map_err(|_| parse_err(format!("{what} {field:?} is not a decimal number")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(parse_err(format!("{what} {field:?} is not finite")))
            }
        };
        samples.push(number(&record[0], "sample")?);
        let has_weight = record.len() == 2;
        if *weighted.get_or_insert(has_weight) != has_weight {
            return Err(parse_err("weight column present on some rows only".to_string()));
        }
        if has_weight {
            weights.push(number(&record[1], "weight")?);
        }
    }
    if samples.is_empty() {
        return Err(CliError::Parse {
            file: source.to_string(),
            line: None,
            message: "no samples".to_string(),
        });
    }
    let weights = (weighted == Some(true)).then_some(weights.as_slice());
    StepCdf::from_samples(&samples, weights)
        .map_err(|e| CliError::Validation(format!("{source}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unweighted_samples() {
        let f = parse_samples_csv("0\n10\n", "t").unwrap();
        assert_eq!(f, StepCdf::new(vec![0.0, 10.0], vec![0.5, 1.0]).unwrap());
    }

    #[test]
    fn weighted_duplicates_merge() {
        let f = parse_samples_csv("1, 0.25\n2,0.5\n1,0.25\n", "t").unwrap();
        assert_eq!(f, StepCdf::new(vec![1.0, 2.0], vec![0.5, 1.0]).unwrap());
    }

    #[test]
    fn bad_row_names_line() {
        match parse_samples_csv("1\n2\nabc\n", "t") {
            Err(CliError::Parse { line, message, .. }) => {
                assert_eq!(line, Some(3));
                assert!(message.contains("abc"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_samples_csv("1,0.5\n2\n", "t"),
            Err(CliError::Parse { line: Some(2), .. })
        ));
        assert!(matches!(
            parse_samples_csv("1,2,3\n", "t"),
            Err(CliError::Parse { line: Some(1), .. })
        ));
        assert!(matches!(parse_samples_csv("inf\n", "t"), Err(CliError::Parse { .. })));
        assert!(matches!(parse_samples_csv("", "t"), Err(CliError::Parse { .. })));
    }

    #[test]
    fn weights_must_sum_to_one() {
        assert!(matches!(parse_samples_csv("1,0.5\n2,0.6\n", "t"), Err(CliError::Validation(_))));
    }

    #[test]
    fn json_errors_are_classified() {
        assert!(matches!(
            parse_json::<StepCdf>("{\"breakpoints\": [1,", "t"),
            Err(CliError::Parse { line: Some(1), .. })
        ));
        assert!(matches!(
            parse_json::<StepCdf>(r#"{"breakpoints":[1,0],"levels":[0.5,1]}"#, "t"),
            Err(CliError::Validation(_))
        ));
    }

    #[test]
    fn format_inference() {
        assert_eq!(Format::resolve(Path::new("a.CSV"), None), Ok(Format::Csv));
        assert_eq!(Format::resolve(Path::new("a.json"), None), Ok(Format::Json));
        assert_eq!(Format::resolve(Path::new("a.txt"), Some(Format::Csv)), Ok(Format::Csv));
        assert!(Format::resolve(Path::new("a.txt"), None).is_err());
    }
}
