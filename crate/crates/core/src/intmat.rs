//! Integer matrix routines: row echelon/Hermite forms, left kernels, and
//! row-span membership, all in exact `BigInt` arithmetic.
//!
//! These back the multiplicative-dependence certificates: relation lattices
//! are left kernels of prime-exponent matrices, returned as canonical
//! Hermite-form bases (positive pivots, entries above a pivot reduced into
//! `[0, pivot)`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Index of the first nonzero entry of a row, if any.
fn pivot_col(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

/// In-place integer row echelon reduction of `mat` restricted to the first
/// `width` columns (the remaining columns ride along, which implements the
/// augmented-identity trick). Returns the number of pivot rows.
fn echelonize(mat: &mut Vec<Vec<BigInt>>, width: usize) -> usize {
    let n = mat.len();
    let mut r = 0;
    for col in 0..width {
        loop {
            // Pick the remaining row with the smallest nonzero |entry|.
            let mut best: Option<(usize, BigInt)> = None;
            for (i, row) in mat.iter().enumerate().skip(r) {
                let v = &row[col];
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                match &best {
                    Some((_, b)) if a >= *b => {}
                    _ => best = Some((i, a)),
                }
            }
            let Some((i, _)) = best else { break };
            mat.swap(r, i);
            let mut others = false;
            for i in (r + 1)..n {
                if mat[i][col].is_zero() {
                    continue;
                }
                let q = mat[i][col].div_floor(&mat[r][col]);
                if !q.is_zero() {
                    let base = mat[r].clone();
                    for (x, b) in mat[i].iter_mut().zip(&base) {
                        *x -= &q * b;
                    }
                }
                if !mat[i][col].is_zero() {
                    others = true;
                }
            }
            if !others {
                if mat[r][col].is_negative() {
                    for x in mat[r].iter_mut() {
                        *x = -x.clone();
                    }
                }
                r += 1;
                break;
            }
        }
    }
    r
}

/// Reduces entries above each pivot into `[0, pivot)`, completing a row-style
/// Hermite normal form of the first `rank` rows.
fn reduce_above(mat: &mut [Vec<BigInt>], rank: usize) {
    for r in 0..rank {
        let Some(c) = pivot_col(&mat[r]) else { continue };
        let pivot = mat[r][c].clone();
        for i in 0..r {
            let q = mat[i][c].div_floor(&pivot);
            if !q.is_zero() {
                let base = mat[r].to_vec();
                for (x, b) in mat[i].iter_mut().zip(&base) {
                    *x -= &q * b;
                }
            }
        }
    }
}

/// The canonical Hermite-form basis of the row span of `rows` (zero rows
/// dropped, positive pivots, above-pivot entries reduced).
pub(crate) fn hnf_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let width = rows[0].len();
    let mut mat: Vec<Vec<BigInt>> = rows.to_vec();
    let rank = echelonize(&mut mat, width);
    mat.truncate(rank);
    reduce_above(&mut mat, rank);
    mat
}

/// A canonical basis of the left kernel `{ l : l * A = 0 }` of the matrix
/// with the given rows.
pub(crate) fn left_kernel_basis(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = rows.len();
    if n == 0 {
        return Vec::new();
    }
    let m = rows[0].len();
    // Augment [A | I]: the identity part tracks the row operations, so rows
    // whose A-part vanishes carry kernel vectors.
    let mut mat: Vec<Vec<BigInt>> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..n).map(|j| BigInt::from((j == i) as i64)));
            v
        })
        .collect();
    let rank = echelonize(&mut mat, m);
    let kernel: Vec<Vec<BigInt>> = mat[rank..]
        .iter()
        .map(|row| row[m..].to_vec())
        .collect();
    hnf_rows(&kernel)
}

/// Whether `v` lies in the integer row span of a Hermite-form basis.
pub(crate) fn in_row_span(hnf: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let mut w = v.to_vec();
    for row in hnf {
        let Some(c) = pivot_col(row) else { continue };
        if w[c].is_zero() {
            continue;
        }
        let (q, r) = w[c].div_rem(&row[c]);
        if !r.is_zero() {
            return false;
        }
        for (x, b) in w.iter_mut().zip(row) {
            *x -= &q * b;
        }
    }
    w.iter().all(|x| x.is_zero())
}
