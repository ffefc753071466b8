//! Finite groups as dense multiplication tables.
//!
//! Elements are the indices `0..order`. Construction validates the full group
//! axioms — Latin-square rows and columns, a two-sided identity, and
//! associativity over every triple — so everything downstream may assume a
//! genuine group without rechecking.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Why a multiplication table failed to define a group.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("multiplication table is not square or has out-of-range entries: {detail}")]
    BadShape { detail: String },
    #[error("table is not a Latin square: {which} {index} repeats an element")]
    NotLatinSquare { which: &'static str, index: usize },
    #[error("table has no two-sided identity element")]
    NoIdentity,
    #[error("associativity fails at triple ({0}, {1}, {2})", .triple[0], .triple[1], .triple[2])]
    NotAssociative { triple: [usize; 3] },
    #[error("unknown builtin group spec {spec:?} (expected \"Z<n>\" or \"S3\")")]
    UnknownSpec { spec: String },
}

/// A finite group given by its full multiplication table.
///
/// `table[a][b]` is the product `a · b`. The identity index and the inverse of
/// every element are precomputed at construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates `table` as a group multiplication table and wraps it.
    ///
    /// Checks run in a fixed order and each reports its first violation:
    /// shape, Latin-square rows, Latin-square columns, identity, then
    /// associativity over all `order³` triples in lexicographic order.
    pub fn from_table(
        table: Vec<Vec<usize>>,
        names: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::BadShape {
                detail: "table is empty".into(),
            });
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::BadShape {
                    detail: format!("row {i} has length {} (expected {order})", row.len()),
                });
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= order) {
                return Err(GroupError::BadShape {
                    detail: format!("row {i} contains entry {bad} outside 0..{order}"),
                });
            }
        }
        if let Some(names) = &names {
            if names.len() != order {
                return Err(GroupError::BadShape {
                    detail: format!("{} names for {order} elements", names.len()),
                });
            }
        }
        for (i, row) in table.iter().enumerate() {
            let mut seen = vec![false; order];
            for &v in row {
                if seen[v] {
                    return Err(GroupError::NotLatinSquare {
                        which: "row",
                        index: i,
                    });
                }
                seen[v] = true;
            }
        }
        for j in 0..order {
            let mut seen = vec![false; order];
            for row in &table {
                if seen[row[j]] {
                    return Err(GroupError::NotLatinSquare {
                        which: "column",
                        index: j,
                    });
                }
                seen[row[j]] = true;
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative { triple: [a, b, c] });
                    }
                }
            }
        }
        // A finite associative Latin square with identity is a group, so every
        // element has a two-sided inverse; locate them.
        let inverses = (0..order)
            .map(|g| {
                let inv = (0..order).find(|&h| table[g][h] == identity).unwrap();
                debug_assert_eq!(table[inv][g], identity);
                inv
            })
            .collect();
        Ok(Self {
            order,
            table,
            identity,
            inverses,
            names,
        })
    }

    /// The cyclic group `Z/n` with elements the residues `0..n` and addition
    /// mod `n`. Requires `n ≥ 1`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group order must be at least 1");
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let names = Some((0..n).map(|a| a.to_string()).collect());
        Self::from_table(table, names).expect("cyclic table is a group")
    }

    /// The symmetric group on three letters, elements indexed by the
    /// lexicographic order of their one-line notation on `{0,1,2}`.
    /// Composition is `(g · h)(x) = g(h(x))`.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index_of = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|g| {
                perms
                    .iter()
                    .map(|h| index_of([g[h[0]], g[h[1]], g[h[2]]]))
                    .collect()
            })
            .collect();
        let names = Some(
            ["e", "(12)", "(01)", "(012)", "(021)", "(02)"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        );
        Self::from_table(table, names).expect("S3 table is a group")
    }

    /// Parses a builtin group name: `"Z1"`, `"Z2"`, … or `"S3"`.
    pub fn from_spec(spec: &str) -> Result<Self, GroupError> {
        if spec == "S3" {
            return Ok(Self::symmetric3());
        }
        if let Some(num) = spec.strip_prefix('Z') {
            if let Ok(n) = num.parse::<usize>() {
                if n >= 1 && num == n.to_string() {
                    return Ok(Self::cyclic(n));
                }
            }
        }
        Err(GroupError::UnknownSpec { spec: spec.into() })
    }

    /// Whether this group's table is exactly addition of residues mod `order`
    /// (element `i` acting as the residue `i`).
    pub fn is_cyclic_residue_table(&self) -> bool {
        (0..self.order)
            .all(|a| (0..self.order).all(|b| self.table[a][b] == (a + b) % self.order))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Display name of an element; falls back to the index.
    pub fn name(&self, g: usize) -> String {
        match &self.names {
            Some(names) => names[g].clone(),
            None => g.to_string(),
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }
}
