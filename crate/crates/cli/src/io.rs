//! Input parsing with line/column diagnostics.

use std::path::Path;

#[derive(Debug)]
pub struct ParseError {
    pub message: String,
}

impl ParseError {
    fn at(path: &Path, line: usize, col: usize, what: &str) -> Self {
        ParseError {
            message: format!("{}:{}:{}: {}", path.display(), line, col, what),
        }
    }

    pub fn msg(message: impl Into<String>) -> Self {
        ParseError {
            message: message.into(),
        }
    }
}

pub fn read_file(path: &Path) -> Result<String, ParseError> {
    std::fs::read_to_string(path).map_err(|e| ParseError::msg(format!("{}: {}", path.display(), e)))
}

fn parse_cell(path: &Path, line_no: usize, col: usize, cell: &str) -> Result<f64, ParseError> {
    cell.trim()
        .parse::<f64>()
        .map_err(|_| ParseError::at(path, line_no, col, &format!("not a number: {cell:?}")))
}

/// Numbers separated by commas and/or line breaks.
pub fn parse_vector(path: &Path, text: &str) -> Result<Vec<f64>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for (j, cell) in line.split(',').enumerate() {
            if cell.trim().is_empty() {
                continue;
            }
            out.push(parse_cell(path, i + 1, j + 1, cell)?);
        }
    }
    if out.is_empty() {
        return Err(ParseError::msg(format!(
            "{}: no numeric data",
            path.display()
        )));
    }
    Ok(out)
}

/// Rectangular numeric CSV, one observation per row.
pub fn parse_matrix(path: &Path, text: &str) -> Result<Vec<Vec<f64>>, ParseError> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for (j, cell) in line.split(',').enumerate() {
            row.push(parse_cell(path, i + 1, j + 1, cell)?);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(ParseError::at(
                    path,
                    i + 1,
                    1,
                    &format!("expected {} columns, found {}", first.len(), row.len()),
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ParseError::msg(format!(
            "{}: no numeric data",
            path.display()
        )));
    }
    Ok(rows)
}

/// Variable-length records: either ragged CSV (one record per row) or a
/// JSON array of numeric arrays.
pub fn parse_ragged(path: &Path, text: &str) -> Result<Vec<Vec<f64>>, ParseError> {
    if text.trim_start().starts_with('[') {
        let parsed: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| ParseError::msg(format!("{}: {}", path.display(), e)))?;
        let rows = parsed
            .as_array()
            .ok_or_else(|| ParseError::msg(format!("{}: expected an array", path.display())))?;
        let mut out = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let cells = row.as_array().ok_or_else(|| {
                ParseError::msg(format!(
                    "{}: record {} is not an array",
                    path.display(),
                    i + 1
                ))
            })?;
            let mut rec = Vec::with_capacity(cells.len());
            for (j, cell) in cells.iter().enumerate() {
                rec.push(cell.as_f64().ok_or_else(|| {
                    ParseError::msg(format!(
                        "{}: record {}, entry {} is not a number",
                        path.display(),
                        i + 1,
                        j + 1
                    ))
                })?);
            }
            if !rec.is_empty() {
                out.push(rec);
            }
        }
        if out.is_empty() {
            return Err(ParseError::msg(format!("{}: no records", path.display())));
        }
        return Ok(out);
    }
    parse_ragged_csv(path, text)
}

fn parse_ragged_csv(path: &Path, text: &str) -> Result<Vec<Vec<f64>>, ParseError> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for (j, cell) in line.split(',').enumerate() {
            if cell.trim().is_empty() {
                continue;
            }
            row.push(parse_cell(path, i + 1, j + 1, cell)?);
        }
        if !row.is_empty() {
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Err(ParseError::msg(format!(
            "{}: no numeric data",
            path.display()
        )));
    }
    Ok(rows)
}

/// Exemplar data with a required header: n feature columns then one target.
pub fn parse_fit_data(path: &Path, text: &str) -> Result<(Vec<Vec<f64>>, Vec<f64>), ParseError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    });
    let Some((_, header)) = lines.next() else {
        return Err(ParseError::msg(format!("{}: empty file", path.display())));
    };
    let cols = header.split(',').count();
    if cols < 2 {
        return Err(ParseError::msg(format!(
            "{}: header must name feature columns and a target",
            path.display()
        )));
    }
    if header.split(',').any(|c| c.trim().parse::<f64>().is_ok()) {
        return Err(ParseError::msg(format!(
            "{}: first row looks numeric; a header row is required",
            path.display()
        )));
    }
    let mut features: Vec<Vec<f64>> = Vec::new();
    let mut target = Vec::new();
    for (i, line) in lines {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != cols {
            return Err(ParseError::at(
                path,
                i + 1,
                1,
                &format!("expected {} columns, found {}", cols, cells.len()),
            ));
        }
        let mut row = Vec::with_capacity(cols - 1);
        for (j, cell) in cells.iter().enumerate() {
            let v = parse_cell(path, i + 1, j + 1, cell)?;
            if j + 1 == cols {
                target.push(v);
            } else {
                row.push(v);
            }
        }
        features.push(row);
    }
    if features.is_empty() {
        return Err(ParseError::msg(format!("{}: no data rows", path.display())));
    }
    Ok((features, target))
}

/// Newline-delimited strings; lines starting with `>` are ignored so
/// FASTA-style files work unchanged.
pub fn parse_strings(text: &str) -> Vec<Vec<u32>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('>'))
        .map(|l| l.chars().map(|c| c as u32).collect())
        .collect()
}
