use serde::{Deserialize, Serialize};

use super::{FiniteGroup, GroupError, LatinLine};

/// On-disk form of a Cayley table: `{ "order": n, "table": [[...], ...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CayleyFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl CayleyFile {
    pub fn from_json(text: &str) -> Result<Self, GroupError> {
        serde_json::from_str(text).map_err(|e| GroupError::Parse(e.to_string()))
    }

    pub fn into_group(self) -> Result<FiniteGroup, GroupError> {
        if self.order != self.table.len() {
            return Err(GroupError::OrderMismatch {
                declared: self.order,
                rows: self.table.len(),
            });
        }
        FiniteGroup::from_cayley_table(&self.table)
    }
}

impl From<&FiniteGroup> for CayleyFile {
    fn from(g: &FiniteGroup) -> Self {
        Self {
            order: g.order(),
            table: g.table(),
        }
    }
}

impl FiniteGroup {
    /// Validates a raw multiplication table and derives identity and inverses.
    ///
    /// Checks run in a fixed order (shape, identity, Latin property,
    /// inverses, associativity) and the first violation is returned.
    pub fn from_cayley_table(raw: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = raw.len();
        if n == 0 {
            return Err(GroupError::EmptyTable);
        }
        for (row, entries) in raw.iter().enumerate() {
            if entries.len() != n {
                return Err(GroupError::RaggedTable {
                    row,
                    expected: n,
                    found: entries.len(),
                });
            }
            if let Some(col) = entries.iter().position(|&v| v >= n) {
                return Err(GroupError::EntryOutOfRange {
                    row,
                    col,
                    value: entries[col],
                    order: n,
                });
            }
        }
        let m = |a: usize, b: usize| raw[a][b];

        let identity = (0..n)
            .find(|&e| (0..n).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or(GroupError::NoIdentity)?;

        for line in [LatinLine::Row, LatinLine::Column] {
            for index in 0..n {
                let mut seen = vec![false; n];
                for k in 0..n {
                    let (row, col) = match line {
                        LatinLine::Row => (index, k),
                        LatinLine::Column => (k, index),
                    };
                    let value = m(row, col);
                    if std::mem::replace(&mut seen[value], true) {
                        return Err(GroupError::NotLatinSquare {
                            line,
                            index,
                            value,
                            row,
                            col,
                        });
                    }
                }
            }
        }

        let mut inv = Vec::with_capacity(n);
        for a in 0..n {
            let right = (0..n).find(|&b| m(a, b) == identity);
            match right {
                Some(b) if m(b, a) == identity => inv.push(b),
                _ => return Err(GroupError::MissingInverse { element: a }),
            }
        }

        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    let left = m(ab, c);
                    let right = m(a, m(b, c));
                    if left != right {
                        return Err(GroupError::NotAssociative { a, b, c, left, right });
                    }
                }
            }
        }

        Ok(Self {
            order: n,
            mult: raw.iter().flatten().copied().collect(),
            inv,
            identity,
        })
    }
}
