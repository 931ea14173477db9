use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Named, rectangular, finite table of experiment output.
///
/// `meta` records the parameters that produced the table (fee rule, pool,
/// engine); it is ordered so serialisation is deterministic.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SeriesTable {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub meta: BTreeMap<String, String>,
}

impl SeriesTable {
    pub fn new<I, S>(name: impl Into<String>, columns: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            name: name.into(),
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            meta: BTreeMap::new(),
        }
    }

    pub fn push_row(&mut self, row: &[f64]) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::RowShape {
                expected: self.columns.len(),
                got: row.len(),
            });
        }
        if let Some(&bad) = row.iter().find(|v| !v.is_finite()) {
            return Err(Error::Invalid {
                what: "table entry",
                value: bad,
            });
        }
        self.rows.push(row.to_vec());
        Ok(())
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.insert(key.into(), value.to_string());
        self
    }

    pub fn set_meta(&mut self, key: &str, value: impl ToString) {
        self.meta.insert(key.into(), value.to_string());
    }

    pub fn column_index(&self, label: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == label)
    }

    /// Copies out one column by label.
    pub fn column(&self, label: &str) -> Option<Vec<f64>> {
        let i = self.column_index(label)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rectangular_and_finite() {
        let mut t = SeriesTable::new("t", ["a", "b"]);
        t.push_row(&[1.0, 2.0]).unwrap();
        assert_eq!(
            t.push_row(&[1.0]),
            Err(Error::RowShape {
                expected: 2,
                got: 1
            })
        );
        assert!(t.push_row(&[1.0, f64::NAN]).is_err());
        assert_eq!(t.len(), 1);
        assert_eq!(t.column("b").unwrap(), [2.0]);
        assert!(t.column("c").is_none());
    }

    #[test]
    fn meta_is_ordered() {
        let t = SeriesTable::new("t", ["a"])
            .with_meta("z", 1)
            .with_meta("a", "x");
        let keys: Vec<_> = t.meta.keys().cloned().collect();
        assert_eq!(keys, ["a", "z"]);
    }
}
