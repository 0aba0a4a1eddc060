//! CSV ingest and emit for the two dataset schemas.
//!
//! Processed schema: `id,<group1>,...,<groupG>,x,y` with one
//! membership degree per group column. Raw schema:
//! `id,<group1>_q1,...,<groupG>_qM,x,y` with 1..=5 item scores that
//! are averaged per group and normalized into degrees.
//!
//! Both parsers come in a strict and a lenient flavor. Strict
//! enforces the numeric ranges (degrees in [0, 1], covariate finite
//! and non-negative, response in [0, 100]) at parse time and is what
//! the fitting commands use. Lenient only requires parseable numbers,
//! so structurally sound files with out-of-range values can still be
//! loaded and audited by `Dataset::validate`. Item scores are always
//! strict: a raw cell outside 1..=5 is a malformed file, not an
//! auditable record.

use std::collections::BTreeMap;
use std::io;

use fqt_core::dataset::{Dataset, NormalizationScheme, QuestionnaireRow, SampleRecord};

/// Everything that can go wrong reading or writing a dataset file.
#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("header must be id,<group...>,x,y: {detail}")]
    HeaderLayout { detail: String },
    #[error("duplicate group column '{name}'")]
    DuplicateGroup { name: String },
    #[error("line {line}, column '{column}': {detail}")]
    Cell {
        line: u64,
        column: String,
        detail: String,
    },
    #[error("{0}")]
    Dataset(#[from] fqt_core::Error),
}

/// How thoroughly cell values are checked at parse time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseMode {
    /// Enforce numeric ranges; out-of-range cells are parse errors.
    Strict,
    /// Accept any parseable numbers; leave range auditing to
    /// `Dataset::validate`.
    Lenient,
}

struct HeaderShape {
    group_names: Vec<String>,
    columns: usize,
}

fn check_header(headers: &csv::StringRecord) -> Result<HeaderShape, FormatError> {
    let columns = headers.len();
    if columns < 4 {
        return Err(FormatError::HeaderLayout {
            detail: format!("need at least 4 columns, got {columns}"),
        });
    }
    if &headers[0] != "id" {
        return Err(FormatError::HeaderLayout {
            detail: format!("first column must be 'id', got '{}'", &headers[0]),
        });
    }
    if &headers[columns - 2] != "x" || &headers[columns - 1] != "y" {
        return Err(FormatError::HeaderLayout {
            detail: format!(
                "last two columns must be 'x,y', got '{},{}'",
                &headers[columns - 2],
                &headers[columns - 1]
            ),
        });
    }
    let mut group_names = Vec::with_capacity(columns - 3);
    for cell in headers.iter().take(columns - 2).skip(1) {
        if cell.is_empty() {
            return Err(FormatError::HeaderLayout {
                detail: "group column names must be nonempty".to_string(),
            });
        }
        if group_names.iter().any(|g| g == cell) {
            return Err(FormatError::DuplicateGroup {
                name: cell.to_string(),
            });
        }
        group_names.push(cell.to_string());
    }
    Ok(HeaderShape {
        group_names,
        columns,
    })
}

fn record_line(record: &csv::StringRecord) -> u64 {
    record.position().map(|p| p.line()).unwrap_or(0)
}

fn cell_error(line: u64, column: &str, detail: String) -> FormatError {
    FormatError::Cell {
        line,
        column: column.to_string(),
        detail,
    }
}

fn parse_id(cell: &str, line: u64) -> Result<u64, FormatError> {
    cell.parse::<u64>().map_err(|_| {
        cell_error(
            line,
            "id",
            format!("expected an unsigned integer, got '{cell}'"),
        )
    })
}

fn parse_number(cell: &str, line: u64, column: &str) -> Result<f64, FormatError> {
    cell.parse::<f64>()
        .map_err(|_| cell_error(line, column, format!("expected a number, got '{cell}'")))
}

fn parse_covariate(cell: &str, line: u64, mode: ParseMode) -> Result<f64, FormatError> {
    let value = parse_number(cell, line, "x")?;
    if mode == ParseMode::Strict && !(value.is_finite() && value >= 0.0) {
        return Err(cell_error(
            line,
            "x",
            format!("covariate must be finite and non-negative, got {value}"),
        ));
    }
    Ok(value)
}

fn parse_response(cell: &str, line: u64, mode: ParseMode) -> Result<f64, FormatError> {
    let value = parse_number(cell, line, "y")?;
    if mode == ParseMode::Strict && !(value.is_finite() && (0.0..=100.0).contains(&value)) {
        return Err(cell_error(
            line,
            "y",
            format!("response must lie in [0, 100], got {value}"),
        ));
    }
    Ok(value)
}

fn reader_for<R: io::Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input)
}

/// Parses the processed schema.
pub fn parse_processed<R: io::Read>(input: R, mode: ParseMode) -> Result<Dataset, FormatError> {
    let mut reader = reader_for(input);
    let shape = check_header(reader.headers()?)?;
    let mut records = Vec::new();
    for result in reader.records() {
        let record = result?;
        let line = record_line(&record);
        let id = parse_id(&record[0], line)?;
        let mut memberships = Vec::with_capacity(shape.group_names.len());
        for (i, name) in shape.group_names.iter().enumerate() {
            let value = parse_number(&record[1 + i], line, name)?;
            if mode == ParseMode::Strict && !(0.0..=1.0).contains(&value) {
                return Err(cell_error(
                    line,
                    name,
                    format!("membership degree must lie in [0, 1], got {value}"),
                ));
            }
            memberships.push(value);
        }
        let covariate_x = parse_covariate(&record[shape.columns - 2], line, mode)?;
        let response_y = parse_response(&record[shape.columns - 1], line, mode)?;
        records.push(SampleRecord {
            id,
            memberships,
            covariate_x,
            response_y,
        });
    }
    Ok(Dataset::new(shape.group_names, records)?)
}

/// Parses the raw questionnaire schema, averaging each group's item
/// scores and normalizing them with `scheme`.
pub fn parse_raw<R: io::Read>(
    input: R,
    scheme: NormalizationScheme,
    mode: ParseMode,
) -> Result<Dataset, FormatError> {
    let mut reader = reader_for(input);
    let shape = check_header(reader.headers()?)?;

    // Split each middle column "<group>_q<j>" into its group.
    let headers = reader.headers()?.clone();
    let mut group_names: Vec<String> = Vec::new();
    let mut column_groups: Vec<String> = Vec::new();
    for cell in headers.iter().take(shape.columns - 2).skip(1) {
        let Some((group, item)) = cell.rsplit_once("_q") else {
            return Err(FormatError::HeaderLayout {
                detail: format!("raw column '{cell}' must look like <group>_q<item>"),
            });
        };
        if group.is_empty() || item.is_empty() || !item.bytes().all(|b| b.is_ascii_digit()) {
            return Err(FormatError::HeaderLayout {
                detail: format!("raw column '{cell}' must look like <group>_q<item>"),
            });
        }
        if !group_names.iter().any(|g| g == group) {
            group_names.push(group.to_string());
        }
        column_groups.push(group.to_string());
    }

    let mut records = Vec::new();
    for result in reader.records() {
        let record = result?;
        let line = record_line(&record);
        let id = parse_id(&record[0], line)?;
        let mut item_scores: BTreeMap<String, Vec<u8>> = BTreeMap::new();
        for (i, group) in column_groups.iter().enumerate() {
            let cell = &record[1 + i];
            let column = &headers[1 + i];
            let score = cell.parse::<u8>().ok().filter(|s| (1..=5).contains(s));
            let Some(score) = score else {
                return Err(cell_error(
                    line,
                    column,
                    format!("expected an integer score in 1..=5, got '{cell}'"),
                ));
            };
            item_scores.entry(group.clone()).or_default().push(score);
        }
        let covariate_x = parse_covariate(&record[shape.columns - 2], line, mode)?;
        let response_y = parse_response(&record[shape.columns - 1], line, mode)?;
        let row = QuestionnaireRow {
            id,
            item_scores,
            covariate_x,
            response_y,
        };
        records.push(row.to_sample(&group_names, scheme)?);
    }
    Ok(Dataset::new(group_names, records)?)
}

/// Writes a dataset in the processed schema with full-precision
/// (shortest round-trip) numbers.
pub fn write_processed<W: io::Write>(dataset: &Dataset, output: W) -> Result<(), FormatError> {
    let mut writer = csv::Writer::from_writer(output);
    let mut header = vec!["id".to_string()];
    header.extend(dataset.group_names().iter().cloned());
    header.push("x".to_string());
    header.push("y".to_string());
    writer.write_record(&header)?;
    for record in dataset.records() {
        let mut row = vec![record.id.to_string()];
        row.extend(record.memberships.iter().map(|v| v.to_string()));
        row.push(record.covariate_x.to_string());
        row.push(record.response_y.to_string());
        writer.write_record(&row)?;
    }
    writer.flush().map_err(csv::Error::from)?;
    Ok(())
}
