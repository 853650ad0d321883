//! CSV reading/writing helpers shared by the commands.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

/// Header of the raw per-run results file.
pub const RAW_HEADER: &str = "algorithm,problem,run,seed,final_best,wall_ms";

/// One row of a raw results file.
#[derive(Debug, Clone)]
pub struct RawRow {
    pub algorithm: String,
    pub problem: String,
    pub run: usize,
    pub seed: u64,
    pub final_best: f64,
    pub wall_ms: f64,
}

impl RawRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.algorithm, self.problem, self.run, self.seed, self.final_best, self.wall_ms
        )
    }
}

/// Writes `header` plus `rows` to `path`, creating parent directories.
pub fn write_csv(path: &Path, header: &str, rows: &[String]) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)
            .with_context(|| format!("cannot create output directory {}", parent.display()))?;
    }
    let mut file = fs::File::create(path)
        .with_context(|| format!("cannot write output file {}", path.display()))?;
    writeln!(file, "{header}")?;
    for row in rows {
        writeln!(file, "{row}")?;
    }
    Ok(())
}

/// Reads raw results files, validating the header.
pub fn read_raw_files(paths: &[PathBuf]) -> Result<Vec<RawRow>> {
    let mut rows = Vec::new();
    for path in paths {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        let mut lines = text.lines();
        match lines.next() {
            Some(header) if header.trim() == RAW_HEADER => {}
            other => bail!(
                "{}: expected header '{RAW_HEADER}', got {:?}",
                path.display(),
                other.unwrap_or("")
            ),
        }
        for (lineno, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 6 {
                bail!(
                    "{}:{}: expected 6 fields, got {}",
                    path.display(),
                    lineno + 2,
                    fields.len()
                );
            }
            let parse_err = |what: &str| {
                format!("{}:{}: invalid {what} '{line}'", path.display(), lineno + 2)
            };
            rows.push(RawRow {
                algorithm: fields[0].to_string(),
                problem: fields[1].to_string(),
                run: fields[2].parse().with_context(|| parse_err("run"))?,
                seed: fields[3].parse().with_context(|| parse_err("seed"))?,
                final_best: fields[4].parse().with_context(|| parse_err("final_best"))?,
                wall_ms: fields[5].parse().with_context(|| parse_err("wall_ms"))?,
            });
        }
    }
    Ok(rows)
}

/// Median of a sample (mean of the middle two for even sizes).
pub fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Expands a grid token list: comma-separated values, where each entry may be
/// a plain number or an inclusive `lo:hi:count` linspace.
pub fn parse_value_grid(spec: &str) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for token in spec.split(',').filter(|t| !t.trim().is_empty()) {
        let token = token.trim();
        let parts: Vec<&str> = token.split(':').collect();
        match parts.len() {
            1 => values.push(parse_float(parts[0])?),
            3 => {
                let lo = parse_float(parts[0])?;
                let hi = parse_float(parts[1])?;
                let count: usize = parts[2]
                    .parse()
                    .with_context(|| format!("invalid grid count in '{token}'"))?;
                if count == 0 {
                    bail!("grid count must be >= 1 in '{token}'");
                }
                if count == 1 {
                    values.push(lo);
                } else {
                    for k in 0..count {
                        values.push(lo + (hi - lo) * k as f64 / (count - 1) as f64);
                    }
                }
            }
            _ => bail!("grid entry '{token}' is neither a value nor lo:hi:count"),
        }
    }
    if values.is_empty() {
        bail!("empty grid '{spec}'");
    }
    Ok(values)
}

/// Parses sweep alpha settings: `0.7` for a fixed value, `0.9:0.3` for a
/// linear start:end schedule.
pub fn parse_alpha_settings(spec: &str) -> Result<Vec<(f64, Option<f64>)>> {
    let mut settings = Vec::new();
    for token in spec.split(',').filter(|t| !t.trim().is_empty()) {
        let token = token.trim();
        let parts: Vec<&str> = token.split(':').collect();
        match parts.len() {
            1 => settings.push((parse_float(parts[0])?, None)),
            2 => settings.push((parse_float(parts[0])?, Some(parse_float(parts[1])?))),
            _ => bail!("alpha setting '{token}' is neither a value nor start:end"),
        }
    }
    if settings.is_empty() {
        bail!("empty alpha settings '{spec}'");
    }
    Ok(settings)
}

fn parse_float(s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .with_context(|| format!("invalid number '{s}'"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_value_grid("0.5,1.0").unwrap(), vec![0.5, 1.0]);
        assert_eq!(
            parse_value_grid("0.0:1.0:5").unwrap(),
            vec![0.0, 0.25, 0.5, 0.75, 1.0]
        );
        assert_eq!(parse_value_grid("2.0:9.0:1").unwrap(), vec![2.0]);
        assert!(parse_value_grid("").is_err());
        assert!(parse_value_grid("1:2").is_err());
    }

    #[test]
    fn alpha_settings_parsing() {
        assert_eq!(
            parse_alpha_settings("0.9:0.3,0.7").unwrap(),
            vec![(0.9, Some(0.3)), (0.7, None)]
        );
        assert!(parse_alpha_settings("0.9:0.3:7").is_err());
    }

    #[test]
    fn median_handles_even_and_odd() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn raw_round_trip() {
        let dir = std::env::temp_dir().join(format!("rdpso_out_{}", std::process::id()));
        let path = dir.join("raw.csv");
        let row = RawRow {
            algorithm: "spso".into(),
            problem: "f1_sphere".into(),
            run: 0,
            seed: 42,
            final_best: 1.25e-9,
            wall_ms: 12.5,
        };
        write_csv(&path, RAW_HEADER, &[row.to_csv()]).unwrap();
        let rows = read_raw_files(&[path.clone()]).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].algorithm, "spso");
        assert_eq!(rows[0].final_best, 1.25e-9);
        std::fs::remove_dir_all(&dir).ok();
    }
}
