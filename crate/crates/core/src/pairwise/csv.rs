use std::io::{Read, Write};

use super::{PairType, PairwiseRow, PairwiseTable};
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 6] = ["x", "y", "score", "group", "value", "pair_type"];

/// Renders a value with 15 significant digits, `%.15g` style.
pub fn format_value(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.14e}", v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, v))
    } else {
        let m = trim_zeros(mantissa.to_string());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn csv_err(e: ::csv::Error) -> Error {
    match e.into_kind() {
        ::csv::ErrorKind::Io(io) => Error::Io(io.to_string()),
        other => Error::MalformedTable(format!("{other:?}")),
    }
}

impl PairwiseTable {
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = ::csv::WriterBuilder::new().terminator(::csv::Terminator::Any(b'\n')).from_writer(w);
        out.write_record(CSV_HEADER).map_err(csv_err)?;
        for r in &self.rows {
            let value = r.value.map(format_value).unwrap_or_default();
            out.write_record([
                r.x.as_str(),
                r.y.as_str(),
                r.score.as_str(),
                r.group.as_str(),
                value.as_str(),
                r.pair_type.as_str(),
            ])
            .map_err(csv_err)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("utf-8 output")
    }

    /// Parses a score table; the header must be exactly [`CSV_HEADER`].
    pub fn read_csv<R: Read>(r: R) -> Result<PairwiseTable> {
        let mut rdr = ::csv::ReaderBuilder::new().has_headers(true).from_reader(r);
        let header = rdr.headers().map_err(csv_err)?.clone();
        if header.iter().ne(CSV_HEADER.iter().copied()) {
            return Err(Error::MalformedTable(format!(
                "expected header `{}`",
                CSV_HEADER.join(",")
            )));
        }
        let mut rows = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(csv_err)?;
            let line = i + 2;
            let value = match &rec[4] {
                "" | "NA" => None,
                s => Some(s.parse::<f64>().map_err(|_| {
                    Error::MalformedTable(format!("line {line}: bad value `{s}`"))
                })?),
            };
            let pair_type: PairType = rec[5]
                .parse()
                .map_err(|_| Error::MalformedTable(format!("line {line}: bad pair_type `{}`", &rec[5])))?;
            rows.push(PairwiseRow::new(&rec[0], &rec[1], &rec[2], &rec[3], value, pair_type));
        }
        PairwiseTable::new(rows).map_err(|e| match e {
            Error::Io(_) => e,
            other => Error::MalformedTable(other.to_string()),
        })
    }
}
