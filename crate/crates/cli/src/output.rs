//! Tables rendered as TSV (header line plus rows) or as a JSON array of
//! objects. Big integers are emitted as decimal strings in JSON.

use clap::ValueEnum;
use num_bigint::{BigInt, BigUint};
use perflat::matrix::Matrix;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Tsv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Big(String),
    Text(String),
    Bool(bool),
    List(Vec<Cell>),
    Missing,
}

impl Cell {
    pub fn list<T: Into<Cell>>(items: impl IntoIterator<Item = T>) -> Cell {
        Cell::List(items.into_iter().map(Into::into).collect())
    }

    pub fn matrix(m: &Matrix<BigInt>) -> Cell {
        Cell::List(m.iter_rows().map(|r| Cell::list(r.iter())).collect())
    }

    fn tsv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Big(s) | Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::List(items) if items.is_empty() => "-".into(),
            Cell::List(items) => {
                let sep = if items.iter().any(|c| matches!(c, Cell::List(_))) { ";" } else { "," };
                items.iter().map(Cell::tsv).collect::<Vec<_>>().join(sep)
            }
            Cell::Missing => "-".into(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Big(s) | Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::List(items) => Value::Array(items.iter().map(Cell::json).collect()),
            Cell::Missing => Value::Null,
        }
    }
}

macro_rules! int_cell {
    ($($t:ty),*) => {$(
        impl From<$t> for Cell {
            fn from(v: $t) -> Cell {
                match i64::try_from(v) {
                    Ok(v) => Cell::Int(v),
                    Err(_) => Cell::Big(v.to_string()),
                }
            }
        }
    )*};
}
int_cell!(i64, u64, usize, u32);

impl From<&BigInt> for Cell {
    fn from(v: &BigInt) -> Cell {
        Cell::Big(v.to_string())
    }
}

impl From<BigInt> for Cell {
    fn from(v: BigInt) -> Cell {
        Cell::Big(v.to_string())
    }
}

impl From<&BigUint> for Cell {
    fn from(v: &BigUint) -> Cell {
        Cell::Big(v.to_string())
    }
}

impl From<BigUint> for Cell {
    fn from(v: BigUint) -> Cell {
        Cell::Big(v.to_string())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Cell {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Cell {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Cell {
        Cell::Text(v.into())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Cell {
        v.map_or(Cell::Missing, Into::into)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    /// The cells of the named column.
    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let k = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| &r[k]).collect())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => {
                let mut out = self.columns.join("\t");
                out.push('\n');
                for row in &self.rows {
                    out.push_str(&row.iter().map(Cell::tsv).collect::<Vec<_>>().join("\t"));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> = self
                            .columns
                            .iter()
                            .zip(row)
                            .map(|(c, v)| ((*c).to_string(), v.json()))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}
