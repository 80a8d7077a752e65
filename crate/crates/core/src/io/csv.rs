use crate::algebra::{parse_rational, Rational};
use crate::error::{Error, Result};

/// A CSV cell: exact when written as `p/q` or an integer.
#[derive(Debug, Clone, PartialEq)]
pub enum CsvValue {
    Exact(Rational),
    Float(f64),
}

impl CsvValue {
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        let floaty = s.contains(['.', 'e', 'E'])
            || s.eq_ignore_ascii_case("nan")
            || s.to_ascii_lowercase().contains("inf");
        if floaty {
            s.parse::<f64>()
                .map(CsvValue::Float)
                .map_err(|_| Error::InvalidArgument(format!("not a number: `{s}`")))
        } else {
            parse_rational(s).map(CsvValue::Exact)
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            CsvValue::Exact(r) => crate::scalar::Scalar::to_f64(r),
            CsvValue::Float(x) => *x,
        }
    }
}

/// A scalar trajectory read back from `t,x` CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarSeries {
    pub times: Vec<CsvValue>,
    pub values: Vec<CsvValue>,
}

pub fn read_scalar_csv(text: &str) -> Result<ScalarSeries> {
    let mut reader = ::csv::ReaderBuilder::new()
        .trim(::csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?
        .clone();
    if headers.len() != 2 || &headers[0] != "t" {
        return Err(Error::InvalidArgument(format!(
            "csv: expected a `t,x` header, found `{}`",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut series = ScalarSeries {
        times: Vec::new(),
        values: Vec::new(),
    };
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
        let at = |i: usize| {
            CsvValue::parse(&record[i])
                .map_err(|e| Error::InvalidArgument(format!("csv row {}: {e}", line + 2)))
        };
        series.times.push(at(0)?);
        series.values.push(at(1)?);
    }
    Ok(series)
}
