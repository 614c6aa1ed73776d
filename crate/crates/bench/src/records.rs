use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use qmegs::Algorithm;

use crate::error::{BenchError, BenchResult};
use crate::metrics::Metric;

pub const CSV_HEADER: &str = "algorithm,T,trial,error,T_max,T_total,metric";

/// One trial of a sweep. Failed runs keep their row with NaN error and
/// costs and the failure kind in `tag`; degraded fits are tagged
/// `degraded` but keep their error.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepRecord {
    pub algorithm: Algorithm,
    pub depth: f64,
    pub trial: usize,
    pub error: f64,
    pub t_max: f64,
    pub t_total: f64,
    pub metric: Metric,
    pub tag: Option<String>,
}

impl SweepRecord {
    pub fn failed(&self) -> bool {
        self.error.is_nan()
    }

    fn metric_field(&self) -> String {
        match &self.tag {
            Some(tag) => format!("{}:{tag}", self.metric.as_str()),
            None => self.metric.as_str().to_string(),
        }
    }
}

/// Bitwise equality, so NaN rows compare equal to themselves.
impl PartialEq for SweepRecord {
    fn eq(&self, other: &Self) -> bool {
        self.algorithm == other.algorithm
            && self.depth.to_bits() == other.depth.to_bits()
            && self.trial == other.trial
            && self.error.to_bits() == other.error.to_bits()
            && self.t_max.to_bits() == other.t_max.to_bits()
            && self.t_total.to_bits() == other.t_total.to_bits()
            && self.metric == other.metric
            && self.tag == other.tag
    }
}

/// CSV text with shortest round-trip float formatting.
pub fn to_csv_string(records: &[SweepRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.algorithm,
            r.depth,
            r.trial,
            r.error,
            r.t_max,
            r.t_total,
            r.metric_field()
        ));
    }
    out
}

pub fn emit_csv(records: &[SweepRecord], path: &Path) -> BenchResult<()> {
    fs::write(path, to_csv_string(records)).map_err(|e| BenchError::io(path, e))
}

fn parse_metric(field: &str) -> Option<(Metric, Option<String>)> {
    let (name, tag) = match field.split_once(':') {
        Some((n, t)) => (n, Some(t.to_string())),
        None => (field, None),
    };
    let metric = match name {
        "maxmin" => Metric::Maxmin,
        "single" => Metric::Single,
        _ => return None,
    };
    Some((metric, tag))
}

pub fn parse_csv(text: &str, path: &Path) -> BenchResult<Vec<SweepRecord>> {
    let err = |line: usize, message: String| BenchError::Parse { path: path.to_path_buf(), line, message };
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim_end() == CSV_HEADER => {}
        other => return Err(err(1, format!("expected header `{CSV_HEADER}`, found {other:?}"))),
    }
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 7 {
            return Err(err(lineno, format!("expected 7 fields, found {}", f.len())));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|e| err(lineno, format!("`{s}`: {e}")));
        let algorithm: Algorithm = f[0].parse().map_err(|e| err(lineno, format!("{e}")))?;
        let trial = f[2].parse::<usize>().map_err(|e| err(lineno, format!("`{}`: {e}", f[2])))?;
        let (metric, tag) = parse_metric(f[6]).ok_or_else(|| err(lineno, format!("unknown metric `{}`", f[6])))?;
        records.push(SweepRecord {
            algorithm,
            depth: num(f[1])?,
            trial,
            error: num(f[3])?,
            t_max: num(f[4])?,
            t_total: num(f[5])?,
            metric,
            tag,
        });
    }
    Ok(records)
}

pub fn read_csv(path: &Path) -> BenchResult<Vec<SweepRecord>> {
    let text = fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
    parse_csv(&text, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(error: f64, tag: Option<&str>) -> SweepRecord {
        SweepRecord {
            algorithm: Algorithm::QmegsInt,
            depth: 400.0,
            trial: 3,
            error,
            t_max: 399.87654321,
            t_total: 0.1 + 0.2,
            metric: Metric::Maxmin,
            tag: tag.map(String::from),
        }
    }

    #[test]
    fn empty_table_is_header_only() {
        assert_eq!(to_csv_string(&[]), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn one_record_two_lines() {
        let text = to_csv_string(&[record(1.5e-4, None)]);
        assert_eq!(text.lines().count(), 2);
        assert!(text.ends_with("qmegs-int,400,3,0.00015,399.87654321,0.30000000000000004,maxmin\n"));
    }

    #[test]
    fn round_trip_is_exact() {
        let rows = vec![
            record(1.0 / 3.0, None),
            record(f64::NAN, Some("exhausted")),
            record(2.2250738585072014e-308, Some("degraded")),
        ];
        let text = to_csv_string(&rows);
        let back = parse_csv(&text, Path::new("mem")).unwrap();
        assert_eq!(back, rows);
    }

    #[test]
    fn malformed_rows_report_line() {
        let text = format!("{CSV_HEADER}\nqmegs,1,0,0.1,1,1\n");
        match parse_csv(&text, Path::new("x.csv")) {
            Err(BenchError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_csv("a,b\n", Path::new("x.csv")).is_err());
    }
}
