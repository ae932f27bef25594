//! Typed tabular input with per-cell missingness.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::Read;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::pairwise::PairType;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColumnKind {
    Numeric,
    Factor,
    Ordered,
}

impl ColumnKind {
    pub fn is_factor(self) -> bool {
        !matches!(self, ColumnKind::Numeric)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ColumnSpec {
    pub kind: ColumnKind,
    #[serde(default)]
    pub levels: Option<Vec<String>>,
}

/// Column name -> declared kind (and levels, for factors).
#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(transparent)]
pub struct Schema(pub BTreeMap<String, ColumnSpec>);

impl Schema {
    pub fn from_json(s: &str) -> Result<Schema> {
        let schema: Schema = serde_json::from_str(s).map_err(|e| Error::InvalidSchema(e.to_string()))?;
        for (name, spec) in &schema.0 {
            if spec.kind == ColumnKind::Ordered && spec.levels.is_none() {
                return Err(Error::InvalidSchema(format!(
                    "ordered column `{name}` needs a `levels` list"
                )));
            }
            if let Some(levels) = &spec.levels {
                let mut seen = HashSet::new();
                if let Some(dup) = levels.iter().find(|l| !seen.insert(l.as_str())) {
                    return Err(Error::InvalidSchema(format!("duplicate level `{dup}` in `{name}`")));
                }
            }
        }
        Ok(schema)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Schema> {
        Schema::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn with(mut self, name: &str, kind: ColumnKind, levels: Option<&[&str]>) -> Schema {
        self.0.insert(
            name.to_string(),
            ColumnSpec {
                kind,
                levels: levels.map(|l| l.iter().map(|s| s.to_string()).collect()),
            },
        );
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ColumnData {
    Numeric(Vec<f64>),
    /// Level codes into `levels`; `ordered` marks ordinal factors.
    Factor {
        codes: Vec<usize>,
        levels: Vec<String>,
        ordered: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    name: String,
    data: ColumnData,
    missing: Vec<bool>,
}

impl Column {
    /// Numeric column; `None` or non-finite cells are missing.
    pub fn numeric(name: impl Into<String>, values: Vec<Option<f64>>) -> Column {
        let missing = values.iter().map(|v| !matches!(v, Some(x) if x.is_finite())).collect();
        let data = values.iter().map(|v| v.unwrap_or(0.0)).collect();
        Column {
            name: name.into(),
            data: ColumnData::Numeric(data),
            missing,
        }
    }

    pub fn from_f64(name: impl Into<String>, values: &[f64]) -> Column {
        Column::numeric(name, values.iter().map(|v| Some(*v)).collect())
    }

    /// Factor column from level codes; `None` cells are missing.
    pub fn factor(
        name: impl Into<String>,
        codes: Vec<Option<usize>>,
        levels: Vec<String>,
        ordered: bool,
    ) -> Column {
        let missing = codes.iter().map(|c| c.is_none()).collect();
        let codes = codes.iter().map(|c| c.unwrap_or(0)).collect();
        Column {
            name: name.into(),
            data: ColumnData::Factor {
                codes,
                levels,
                ordered,
            },
            missing,
        }
    }

    /// Factor column from labels, levels in first-appearance order.
    pub fn from_labels(name: impl Into<String>, labels: &[&str], ordered: bool) -> Column {
        let mut levels: Vec<String> = Vec::new();
        let codes = labels
            .iter()
            .map(|l| {
                Some(levels.iter().position(|x| x == l).unwrap_or_else(|| {
                    levels.push(l.to_string());
                    levels.len() - 1
                }))
            })
            .collect();
        Column::factor(name, codes, levels, ordered)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn data(&self) -> &ColumnData {
        &self.data
    }

    pub fn missing(&self) -> &[bool] {
        &self.missing
    }

    pub fn len(&self) -> usize {
        self.missing.len()
    }

    pub fn is_empty(&self) -> bool {
        self.missing.is_empty()
    }

    pub fn kind(&self) -> ColumnKind {
        match &self.data {
            ColumnData::Numeric(_) => ColumnKind::Numeric,
            ColumnData::Factor { ordered: true, .. } => ColumnKind::Ordered,
            ColumnData::Factor { .. } => ColumnKind::Factor,
        }
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self.data, ColumnData::Numeric(_))
    }

    pub fn is_factor(&self) -> bool {
        !self.is_numeric()
    }

    pub fn is_ordered(&self) -> bool {
        matches!(self.data, ColumnData::Factor { ordered: true, .. })
    }

    pub fn as_numeric(&self) -> Option<&[f64]> {
        match &self.data {
            ColumnData::Numeric(v) => Some(v),
            _ => None,
        }
    }

    pub fn levels(&self) -> Option<&[String]> {
        match &self.data {
            ColumnData::Factor { levels, .. } => Some(levels),
            _ => None,
        }
    }

    pub fn codes(&self) -> Option<&[usize]> {
        match &self.data {
            ColumnData::Factor { codes, .. } => Some(codes),
            _ => None,
        }
    }

    pub fn n_missing(&self) -> usize {
        self.missing.iter().filter(|m| **m).count()
    }

    /// Rows at `idx`, in order.
    pub fn take(&self, idx: &[usize]) -> Column {
        let missing = idx.iter().map(|&i| self.missing[i]).collect();
        let data = match &self.data {
            ColumnData::Numeric(v) => ColumnData::Numeric(idx.iter().map(|&i| v[i]).collect()),
            ColumnData::Factor {
                codes,
                levels,
                ordered,
            } => ColumnData::Factor {
                codes: idx.iter().map(|&i| codes[i]).collect(),
                levels: levels.clone(),
                ordered: *ordered,
            },
        };
        Column {
            name: self.name.clone(),
            data,
            missing,
        }
    }
}

/// Rows of `a` and `b` where both are present, order preserved.
pub fn complete_pairs(a: &Column, b: &Column) -> (Column, Column) {
    let idx: Vec<usize> = (0..a.len().min(b.len()))
        .filter(|&i| !a.missing[i] && !b.missing[i])
        .collect();
    (a.take(&idx), b.take(&idx))
}

pub fn pair_type_of(a: &Column, b: &Column) -> PairType {
    match (a.is_factor(), b.is_factor()) {
        (false, false) => PairType::Nn,
        (true, true) => PairType::Ff,
        _ => PairType::Fn,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    columns: Vec<Column>,
    n_rows: usize,
}

impl Dataset {
    pub fn new(columns: Vec<Column>) -> Result<Dataset> {
        let n_rows = columns.first().map_or(0, |c| c.len());
        let mut seen = HashSet::new();
        for c in &columns {
            if c.len() != n_rows {
                return Err(Error::LengthMismatch(n_rows, c.len()));
            }
            if !seen.insert(c.name.as_str()) {
                return Err(Error::InvalidSchema(format!("duplicate column `{}`", c.name)));
            }
        }
        Ok(Dataset { columns, n_rows })
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn column(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|c| c.name == name)
    }

    pub fn take_rows(&self, idx: &[usize]) -> Dataset {
        Dataset {
            columns: self.columns.iter().map(|c| c.take(idx)).collect(),
            n_rows: idx.len(),
        }
    }

    pub fn without(&self, name: &str) -> Dataset {
        Dataset {
            columns: self.columns.iter().filter(|c| c.name != name).cloned().collect(),
            n_rows: self.n_rows,
        }
    }

    pub fn load_csv(path: impl AsRef<Path>, schema: &Schema) -> Result<Dataset> {
        let file = std::fs::File::open(path)?;
        Dataset::read_csv(file, schema)
    }

    /// Reads CSV with a header row. `""` and `NA` are missing. Columns absent
    /// from the schema become numeric if every present cell parses as a
    /// finite number, otherwise factors with first-appearance levels.
    pub fn read_csv<R: Read>(reader: R, schema: &Schema) -> Result<Dataset> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
        let headers: Vec<String> = rdr
            .headers()
            .map_err(|e| Error::Io(e.to_string()))?
            .iter()
            .map(|h| h.trim().to_string())
            .collect();
        for name in schema.0.keys() {
            if !headers.contains(name) {
                return Err(Error::SchemaColumnMissing(name.clone()));
            }
        }
        let mut cells: Vec<Vec<Option<String>>> = vec![Vec::new(); headers.len()];
        for (r, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::ParseError {
                row: r + 1,
                column: String::new(),
                message: e.to_string(),
            })?;
            for (j, col) in cells.iter_mut().enumerate() {
                let raw = rec.get(j).unwrap_or("").trim();
                col.push(match raw {
                    "" | "NA" => None,
                    s => Some(s.to_string()),
                });
            }
        }
        let columns = headers
            .iter()
            .zip(cells)
            .map(|(name, col)| build_column(name, col, schema.0.get(name)))
            .collect::<Result<Vec<_>>>()?;
        Dataset::new(columns)
    }
}

fn parse_finite(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn looks_numeric(col: &[Option<String>]) -> bool {
    // literals like "inf" parse as f64 but are rejected later as errors
    col.iter().flatten().all(|s| s.parse::<f64>().is_ok())
}

fn build_column(name: &str, col: Vec<Option<String>>, spec: Option<&ColumnSpec>) -> Result<Column> {
    let kind = match spec {
        Some(s) => s.kind,
        None if looks_numeric(&col) => ColumnKind::Numeric,
        None => ColumnKind::Factor,
    };
    match kind {
        ColumnKind::Numeric => {
            let values = col
                .iter()
                .enumerate()
                .map(|(r, c)| match c {
                    None => Ok(None),
                    Some(s) => parse_finite(s).map(Some).ok_or_else(|| Error::ParseError {
                        row: r + 1,
                        column: name.to_string(),
                        message: format!("`{s}` is not a finite number"),
                    }),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Column::numeric(name, values))
        }
        ColumnKind::Factor | ColumnKind::Ordered => {
            let declared = spec.and_then(|s| s.levels.clone());
            let fixed = declared.is_some();
            let mut levels = declared.unwrap_or_default();
            let mut index: HashMap<String, usize> =
                levels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
            let mut codes = Vec::with_capacity(col.len());
            for c in col {
                codes.push(match c {
                    None => None,
                    Some(s) => Some(match index.get(&s) {
                        Some(&i) => i,
                        None if fixed => {
                            return Err(Error::UnknownLevel {
                                value: s,
                                column: name.to_string(),
                            })
                        }
                        None => {
                            levels.push(s.clone());
                            index.insert(s, levels.len() - 1);
                            levels.len() - 1
                        }
                    }),
                });
            }
            Ok(Column::factor(name, codes, levels, kind == ColumnKind::Ordered))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_only() {
        let d = Dataset::read_csv("a,b\n".as_bytes(), &Schema::default()).unwrap();
        assert_eq!(d.n_rows(), 0);
        assert_eq!(d.columns().len(), 2);
    }

    #[test]
    fn inference_and_missing() {
        let s = "num,fac,year\n1.5,a,2007\nNA,b,2008\n2,,2009\n";
        let d = Dataset::read_csv(s.as_bytes(), &Schema::default()).unwrap();
        let num = d.column("num").unwrap();
        assert!(num.is_numeric());
        assert_eq!(num.missing(), &[false, true, false]);
        let fac = d.column("fac").unwrap();
        assert_eq!(fac.levels().unwrap(), &["a".to_string(), "b".to_string()]);
        assert_eq!(fac.missing(), &[false, false, true]);
        assert!(d.column("year").unwrap().is_numeric());
    }

    #[test]
    fn ordered_unknown_level() {
        let schema = Schema::default().with("o", ColumnKind::Ordered, Some(&["lo", "hi"]));
        let err = Dataset::read_csv("o\nlo\nmid\n".as_bytes(), &schema).unwrap_err();
        assert_eq!(
            err,
            Error::UnknownLevel {
                value: "mid".into(),
                column: "o".into()
            }
        );
    }

    #[test]
    fn ordered_levels_from_schema() {
        let schema = Schema::default().with("o", ColumnKind::Ordered, Some(&["lo", "mid", "hi"]));
        let d = Dataset::read_csv("o\nhi\nlo\n".as_bytes(), &schema).unwrap();
        let c = d.column("o").unwrap();
        assert!(c.is_ordered());
        assert_eq!(c.codes().unwrap(), &[2, 0]);
    }

    #[test]
    fn non_finite_is_parse_error() {
        let err = Dataset::read_csv("a\n1\ninf\n".as_bytes(), &Schema::default()).unwrap_err();
        assert!(matches!(err, Error::ParseError { row: 2, .. }));
        let schema = Schema::default().with("a", ColumnKind::Numeric, None);
        let err = Dataset::read_csv("a\nabc\n".as_bytes(), &schema).unwrap_err();
        assert!(matches!(err, Error::ParseError { .. }));
    }

    #[test]
    fn schema_column_missing() {
        let schema = Schema::default().with("zz", ColumnKind::Factor, None);
        assert_eq!(
            Dataset::read_csv("a\n1\n".as_bytes(), &schema).unwrap_err(),
            Error::SchemaColumnMissing("zz".into())
        );
    }

    #[test]
    fn schema_json() {
        let s = Schema::from_json(
            r#"{"species": {"kind": "factor"}, "grade": {"kind": "ordered", "levels": ["a","b"]}}"#,
        )
        .unwrap();
        assert_eq!(s.0["grade"].kind, ColumnKind::Ordered);
        assert!(Schema::from_json(r#"{"g": {"kind": "ordered"}}"#).is_err());
    }

    #[test]
    fn complete_pairs_mask_union() {
        // 1-based rows: a missing {1,3}, b missing {3,5}
        let a = Column::numeric("a", vec![None, Some(2.0), None, Some(4.0), Some(5.0), Some(6.0)]);
        let b = Column::numeric("b", vec![Some(1.0), Some(2.0), None, Some(4.0), None, Some(6.0)]);
        let (ca, cb) = complete_pairs(&a, &b);
        assert_eq!(ca.as_numeric().unwrap(), &[2.0, 4.0, 6.0]);
        assert_eq!(cb.as_numeric().unwrap(), &[2.0, 4.0, 6.0]);
    }

    #[test]
    fn complete_pairs_no_missing_and_all_missing() {
        let a = Column::from_f64("a", &[1.0, 2.0]);
        let b = Column::from_f64("b", &[3.0, 4.0]);
        let (ca, cb) = complete_pairs(&a, &b);
        assert_eq!((ca, cb), (a.clone(), b.clone()));
        let m = Column::numeric("m", vec![None, None]);
        assert_eq!(complete_pairs(&m, &b).0.len(), 0);
    }

    #[test]
    fn pair_types() {
        let n = Column::from_f64("n", &[1.0]);
        let f = Column::from_labels("f", &["a"], false);
        let o = Column::from_labels("o", &["a"], true);
        assert_eq!(pair_type_of(&n, &n), PairType::Nn);
        assert_eq!(pair_type_of(&f, &n), PairType::Fn);
        assert_eq!(pair_type_of(&n, &f), PairType::Fn);
        assert_eq!(pair_type_of(&o, &o), PairType::Ff);
    }
}
