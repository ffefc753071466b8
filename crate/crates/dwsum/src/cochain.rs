//! Cochains on a finite group with values in `Z/k`, their coboundaries, and
//! the cocycle test.
//!
//! An n-cochain assigns a residue mod `k` to every n-tuple of group elements.
//! The coboundary operator follows the bar-complex rule, written additively:
//!
//! ```text
//! (δβ)[g1|…|g_{n+1}] = β[g2|…|g_{n+1}]
//!                    + Σ_{j=1..n} (−1)^j β[g1|…|g_j·g_{j+1}|…|g_{n+1}]
//!                    + (−1)^{n+1} β[g1|…|g_n]        (mod k)
//! ```
//!
//! A 3-cochain is a cocycle when this alternating sum vanishes for every
//! 4-tuple; the test reports the lexicographically first violating tuple.

use crate::group::FiniteGroup;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CochainError {
    #[error("value table has length {got}, expected |G|^degree = {expected}")]
    BadLength { got: usize, expected: usize },
    #[error("value {value} at index {index} is not a residue mod {modulus}")]
    BadResidue {
        index: usize,
        value: usize,
        modulus: usize,
    },
    #[error("cochains live on different groups")]
    GroupMismatch,
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(usize, usize),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("catalog cocycle {name:?} requires {requirement}")]
    CatalogMismatch { name: String, requirement: String },
    #[error("unknown cocycle spec {0:?}")]
    UnknownSpec(String),
}

/// The coefficient group `Z/k` (k ≥ 1), acting as both the value group of
/// cochains and the exponent lattice of the cyclotomic embedding `j ↦ x^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicCoeff {
    pub modulus: usize,
}

impl CyclicCoeff {
    pub fn new(modulus: usize) -> Self {
        assert!(modulus >= 1, "coefficient modulus must be at least 1");
        Self { modulus }
    }

    #[inline]
    pub fn reduce(&self, v: i64) -> usize {
        v.rem_euclid(self.modulus as i64) as usize
    }
}

/// An n-cochain: a dense table of residues mod `k`, indexed row-major by
/// n-tuples of group elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    group: Arc<FiniteGroup>,
    coeff: CyclicCoeff,
    degree: usize,
    values: Vec<usize>,
}

impl Cochain {
    /// Wraps an explicit value table; `values.len()` must be `|G|^degree` and
    /// every entry a residue mod `k`.
    pub fn from_values(
        group: Arc<FiniteGroup>,
        modulus: usize,
        degree: usize,
        values: Vec<usize>,
    ) -> Result<Self, CochainError> {
        let coeff = CyclicCoeff::new(modulus);
        let expected = group.order().pow(degree as u32);
        if values.len() != expected {
            return Err(CochainError::BadLength {
                got: values.len(),
                expected,
            });
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, &v)| v >= modulus) {
            return Err(CochainError::BadResidue {
                index,
                value,
                modulus,
            });
        }
        Ok(Self {
            group,
            coeff,
            degree,
            values,
        })
    }

    /// The zero cochain of the given degree.
    pub fn zero(group: Arc<FiniteGroup>, modulus: usize, degree: usize) -> Self {
        let len = group.order().pow(degree as u32);
        Self {
            group,
            coeff: CyclicCoeff::new(modulus),
            degree,
            values: vec![0; len],
        }
    }

    /// The carry 3-cocycle on `Z/n` with coefficients `Z/n`:
    /// `α_p[a|b|c] = p · a · ⌊(b+c)/n⌋ mod n`, on residue representatives.
    pub fn carry(n: usize, p: usize) -> Self {
        assert!(n >= 1);
        let group = Arc::new(FiniteGroup::cyclic(n));
        let mut values = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    values.push((p * a * ((b + c) / n)) % n);
                }
            }
        }
        Self::from_values(group, n, 3, values).expect("carry table is well-formed")
    }

    /// The triple-product 3-cocycle on `Z/2` with coefficients `Z/2`:
    /// `α[a|b|c] = a·b·c mod 2`.
    pub fn product_z2() -> Self {
        let group = Arc::new(FiniteGroup::cyclic(2));
        let mut values = Vec::with_capacity(8);
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    values.push(a * b * c);
                }
            }
        }
        Self::from_values(group, 2, 3, values).expect("product table is well-formed")
    }

    /// Resolves a catalog name against a group: `"trivial"`, `"carry:n:p"`,
    /// or `"product:Z2"`. The modulus of `"trivial"` must be supplied by the
    /// caller (conventionally `|G|`).
    pub fn from_catalog(
        name: &str,
        group: &Arc<FiniteGroup>,
        modulus: usize,
    ) -> Result<Self, CochainError> {
        match name {
            "trivial" => Ok(Self::zero(group.clone(), modulus, 3)),
            "product:Z2" => {
                if group.order() != 2 || !group.is_cyclic_residue_table() {
                    return Err(CochainError::CatalogMismatch {
                        name: name.into(),
                        requirement: "the group Z2".into(),
                    });
                }
                if modulus != 2 {
                    return Err(CochainError::CatalogMismatch {
                        name: name.into(),
                        requirement: "modulus 2".into(),
                    });
                }
                Ok(Self::product_z2())
            }
            _ => {
                if let Some(rest) = name.strip_prefix("carry:") {
                    let parts: Vec<&str> = rest.split(':').collect();
                    if parts.len() == 2 {
                        if let (Ok(n), Ok(p)) = (parts[0].parse::<usize>(), parts[1].parse::<usize>())
                        {
                            if n >= 1 {
                                if group.order() != n || !group.is_cyclic_residue_table() {
                                    return Err(CochainError::CatalogMismatch {
                                        name: name.into(),
                                        requirement: format!("the group Z{n}"),
                                    });
                                }
                                if modulus != n {
                                    return Err(CochainError::CatalogMismatch {
                                        name: name.into(),
                                        requirement: format!("modulus {n}"),
                                    });
                                }
                                return Ok(Self::carry(n, p % n));
                            }
                        }
                    }
                }
                Err(CochainError::UnknownSpec(name.into()))
            }
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> usize {
        self.coeff.modulus
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Row-major index of a tuple.
    fn index(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.degree);
        let n = self.group.order();
        tuple.iter().fold(0, |acc, &g| acc * n + g)
    }

    /// Value on a tuple of group elements.
    pub fn value(&self, tuple: &[usize]) -> usize {
        self.values[self.index(tuple)]
    }

    /// The coboundary `δ`: an (n+1)-cochain on the same group and coefficients.
    pub fn coboundary(&self) -> Cochain {
        let n = self.degree;
        let order = self.group.order();
        let out_len = order.pow((n + 1) as u32);
        let mut values = Vec::with_capacity(out_len);
        let mut tuple = vec![0usize; n + 1];
        let mut face = vec![0usize; n];
        loop {
            let mut total: i64 = 0;
            // Drop the first entry: +β[g2|…|g_{n+1}]
            face.copy_from_slice(&tuple[1..]);
            total += self.values[self.index(&face)] as i64;
            // Merge entries j-1 and j (1-based: g_j·g_{j+1}): sign (−1)^j
            for j in 1..=n {
                face[..j - 1].copy_from_slice(&tuple[..j - 1]);
                face[j - 1] = self.group.mul(tuple[j - 1], tuple[j]);
                face[j..].copy_from_slice(&tuple[j + 1..]);
                let term = self.values[self.index(&face)] as i64;
                total += if j % 2 == 0 { term } else { -term };
            }
            // Drop the last entry: sign (−1)^{n+1}
            face.copy_from_slice(&tuple[..n]);
            let term = self.values[self.index(&face)] as i64;
            total += if (n + 1) % 2 == 0 { term } else { -term };

            values.push(self.coeff.reduce(total));
            // Advance the odometer.
            let mut pos = n + 1;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                tuple[pos] += 1;
                if tuple[pos] < order {
                    break;
                }
                tuple[pos] = 0;
            }
            if tuple.iter().all(|&g| g == 0) {
                break;
            }
        }
        debug_assert_eq!(values.len(), out_len);
        Cochain {
            group: self.group.clone(),
            coeff: self.coeff,
            degree: n + 1,
            values,
        }
    }

    /// The lexicographically first tuple on which the cocycle condition fails,
    /// or `None` if this cochain is a cocycle.
    pub fn cocycle_violation(&self) -> Option<Vec<usize>> {
        let delta = self.coboundary();
        let n = self.group.order();
        let pos = delta.values.iter().position(|&v| v != 0)?;
        // Unpack the row-major index back into a tuple.
        let mut tuple = vec![0usize; self.degree + 1];
        let mut rest = pos;
        for slot in tuple.iter_mut().rev() {
            *slot = rest % n;
            rest /= n;
        }
        Some(tuple)
    }

    pub fn is_cocycle(&self) -> bool {
        self.cocycle_violation().is_none()
    }

    /// `self + δβ` for a cochain `β` of degree one less, same group and
    /// coefficients. The result is cohomologous to `self`.
    pub fn perturb_by_coboundary(&self, beta: &Cochain) -> Result<Cochain, CochainError> {
        if beta.group.as_ref() != self.group.as_ref() {
            return Err(CochainError::GroupMismatch);
        }
        if beta.coeff.modulus != self.coeff.modulus {
            return Err(CochainError::ModulusMismatch(
                self.coeff.modulus,
                beta.coeff.modulus,
            ));
        }
        if beta.degree + 1 != self.degree {
            return Err(CochainError::DegreeMismatch {
                expected: self.degree.saturating_sub(1),
                got: beta.degree,
            });
        }
        let delta = beta.coboundary();
        let values = self
            .values
            .iter()
            .zip(&delta.values)
            .map(|(&a, &b)| (a + b) % self.coeff.modulus)
            .collect();
        Ok(Cochain {
            group: self.group.clone(),
            coeff: self.coeff,
            degree: self.degree,
            values,
        })
    }
}
