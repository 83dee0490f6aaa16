use std::path::Path;

use abduction::learners::LabeledDataset;
use abduction::synth;

use crate::error::{CliError, CliResult};

/// Reads a headed CSV whose last column `y` holds the labels and whose other
/// columns are numeric features. Rows are numbered from 1 with the header
/// as row 1.
pub fn load_csv(path: &Path) -> CliResult<LabeledDataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let header = reader.headers().map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?.clone();
    if header.is_empty() || (header.len() == 1 && header[0].is_empty()) {
        return Err(CliError::Data(format!("{}: empty file", path.display())));
    }
    if &header[header.len() - 1] != "y" {
        return Err(CliError::Data(format!("{}: last column must be named \"y\"", path.display())));
    }
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (i, record) in reader.records().enumerate() {
        let row = i + 2;
        let record = record.map_err(|e| CliError::Data(format!("{}: row {row}: {e}", path.display())))?;
        let mut values = Vec::with_capacity(record.len());
        for (col, cell) in record.iter().enumerate() {
            let v: f64 = cell.parse().ok().filter(|v: &f64| v.is_finite()).ok_or_else(|| {
                CliError::Data(format!(
                    "{}: row {row}, column {} ({}): not a number: {cell:?}",
                    path.display(),
                    col + 1,
                    &header[col]
                ))
            })?;
            values.push(v);
        }
        ys.push(values.pop().expect("header has a y column"));
        xs.push(values);
    }
    if xs.is_empty() {
        return Err(CliError::Data(format!("{}: no data rows", path.display())));
    }
    LabeledDataset::new(xs, ys).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

/// A CSV path or a `synth:<generator>:<m>:<seed>` specification.
pub fn load_data(spec: &str) -> CliResult<LabeledDataset> {
    if spec.starts_with("synth:") {
        let (g, m, seed) = synth::parse_spec(spec).ok_or_else(|| {
            let names: Vec<&str> = synth::Generator::ALL.iter().map(|g| g.name()).collect();
            CliError::Usage(format!(
                "bad synthetic spec {spec:?}; expected synth:<generator>:<m>:<seed> with generator in {}",
                names.join(", ")
            ))
        })?;
        return Ok(g.generate(m, seed)?);
    }
    load_csv(Path::new(spec))
}
