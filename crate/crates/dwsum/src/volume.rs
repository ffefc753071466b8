//! Exact signed volumes of rational simplices and the facet-alternation
//! identity used as an orientation cross-check.
//!
//! For `n + 2` points `p_0, …, p_{n+1}` in `Q^n` — the projection of an
//! (n+1)-simplex to n-space — the signed volumes of the `n + 2` facet
//! simplices obtained by omitting one point satisfy
//!
//! ```text
//! Σ_j (−1)^j · vol(p_0, …, p̂_j, …, p_{n+1}) = 0
//! ```
//!
//! exactly: it is the cofactor expansion of an (n+2)×(n+2) determinant whose
//! first two columns are both all ones. The alternation pattern `(−1)^j` is
//! the same one the orientation-sign propagation assigns to the boundary
//! tetrahedra of a 4-simplex, so evaluating the sum on explicit rational
//! coordinates gives an independent, arithmetic-only check of the
//! combinatorial signs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// A point of `Q^d`, one rational per coordinate.
pub type RationalPoint = Vec<BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VolumeError {
    #[error("expected {expected} points of dimension {dim}, got {got}")]
    DimensionMismatch {
        dim: usize,
        expected: usize,
        got: usize,
    },
}

/// Builds a rational point from integer coordinates.
pub fn integer_point(coords: &[i64]) -> RationalPoint {
    coords
        .iter()
        .map(|&c| BigRational::from_integer(BigInt::from(c)))
        .collect()
}

fn check_uniform_dim(points: &[RationalPoint], expected: usize) -> Result<usize, VolumeError> {
    let dim = points.first().map_or(0, |p| p.len());
    let mismatch = VolumeError::DimensionMismatch {
        dim,
        expected,
        got: points.len(),
    };
    if points.len() != expected || dim == 0 {
        return Err(mismatch);
    }
    if points.iter().any(|p| p.len() != dim) {
        return Err(mismatch);
    }
    Ok(dim)
}

/// Exact determinant by fraction-free-enough Gaussian elimination; the
/// matrices here are tiny (d ≤ 8), so plain rational pivoting is fine.
fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for row in col + 1..n {
            if m[row][col].is_zero() {
                continue;
            }
            let factor = &m[row][col] / &pivot;
            for c in col..n {
                let sub = &factor * &m[col][c];
                m[row][c] -= sub;
            }
        }
    }
    det
}

/// Signed volume of the simplex on `d + 1` points in `Q^d`:
/// `det(p_1 − p_0, …, p_d − p_0) / d!`. Orientation-sensitive; exact.
pub fn signed_volume(points: &[RationalPoint]) -> Result<BigRational, VolumeError> {
    let dim = points.first().map_or(0, |p| p.len());
    check_uniform_dim(points, dim + 1)?;
    let rows: Vec<Vec<BigRational>> = points[1..]
        .iter()
        .map(|p| (0..dim).map(|c| &p[c] - &points[0][c]).collect())
        .collect();
    let mut factorial = BigInt::one();
    for i in 2..=dim {
        factorial *= BigInt::from(i);
    }
    Ok(determinant(rows) / BigRational::from_integer(factorial))
}

/// Alternating sum of facet volumes of a projected (n+1)-simplex: for
/// `n + 2` points in `Q^n`, returns `Σ_j (−1)^j vol(points minus j-th)`.
/// Always zero — callers treat a nonzero result as a failed identity.
pub fn facet_volume_alternating_sum(points: &[RationalPoint]) -> Result<BigRational, VolumeError> {
    let dim = points.first().map_or(0, |p| p.len());
    check_uniform_dim(points, dim + 2)?;
    let mut sum = BigRational::zero();
    for omit in 0..points.len() {
        let facet: Vec<RationalPoint> = points
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != omit)
            .map(|(_, p)| p.clone())
            .collect();
        let vol = signed_volume(&facet)?;
        if omit % 2 == 0 {
            sum += vol;
        } else {
            sum -= vol;
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn unit_triangle_has_area_one_half() {
        let pts = [
            integer_point(&[0, 0]),
            integer_point(&[1, 0]),
            integer_point(&[0, 1]),
        ];
        assert_eq!(signed_volume(&pts).unwrap(), rat(1, 2));
        // swapping two vertices flips the sign
        let swapped = [pts[0].clone(), pts[2].clone(), pts[1].clone()];
        assert_eq!(signed_volume(&swapped).unwrap(), rat(-1, 2));
    }

    #[test]
    fn degenerate_simplices_have_volume_zero() {
        let collinear = [
            integer_point(&[0, 0]),
            integer_point(&[1, 1]),
            integer_point(&[2, 2]),
        ];
        assert_eq!(signed_volume(&collinear).unwrap(), rat(0, 1));
    }

    #[test]
    fn unit_tetrahedron_has_volume_one_sixth() {
        let pts = [
            integer_point(&[0, 0, 0]),
            integer_point(&[1, 0, 0]),
            integer_point(&[0, 1, 0]),
            integer_point(&[0, 0, 1]),
        ];
        assert_eq!(signed_volume(&pts).unwrap(), rat(1, 6));
    }

    #[test]
    fn alternating_facet_sum_vanishes_in_each_dimension() {
        // deterministic "random-looking" rationals from a simple recurrence
        let mut state = 37i64;
        let mut next = || {
            state = (state * 389 + 211) % 401;
            rat(state - 200, 1 + (state.unsigned_abs() % 7) as i64)
        };
        for dim in 1..=4 {
            for _ in 0..25 {
                let points: Vec<RationalPoint> = (0..dim + 2)
                    .map(|_| (0..dim).map(|_| next()).collect())
                    .collect();
                let sum = facet_volume_alternating_sum(&points).unwrap();
                assert!(sum.is_zero(), "dim {dim}: got {sum}");
            }
        }
    }

    #[test]
    fn coincident_points_sum_to_zero() {
        let points: Vec<RationalPoint> = (0..5).map(|_| integer_point(&[3, 1, 4])).collect();
        assert!(facet_volume_alternating_sum(&points).unwrap().is_zero());
    }

    #[test]
    fn wrong_point_counts_are_rejected() {
        let pts = [integer_point(&[0, 0]), integer_point(&[1, 0])];
        assert!(matches!(
            signed_volume(&pts),
            Err(VolumeError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            facet_volume_alternating_sum(&pts),
            Err(VolumeError::DimensionMismatch { .. })
        ));
        // mixed dimensions
        let mixed = [
            integer_point(&[0, 0]),
            integer_point(&[1, 0, 0]),
            integer_point(&[0, 1]),
        ];
        assert!(signed_volume(&mixed).is_err());
    }
}
