//! Brute-force finite groups given by multiplication tables.
//!
//! Elements are indices `0..order`. Everything here is ground truth for the
//! symbolic layers, so it favors exhaustive scans over clever algorithms.

mod analysis;
mod subgroup;

use std::collections::HashMap;
use std::hash::Hash;

use thiserror::Error;

pub use analysis::{PowerMap, Quotient};
pub use subgroup::{LowerCentralSeries, Subgroup};

/// Practical cap on table order.
pub const MAX_ORDER: usize = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableViolation {
    #[error("empty table")]
    Empty,
    #[error("table too large: order {0} exceeds {MAX_ORDER}")]
    TooLarge(usize),
    #[error("row {row} has length {len}, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry ({row}, {col}) = {value} is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("row {0} is not a permutation")]
    NotLatinRow(usize),
    #[error("column {0} is not a permutation")]
    NotLatinColumn(usize),
    #[error("no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("associativity fails at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
}

/// Check a table for the group axioms: Latin square, identity, inverses and a
/// full associativity scan. Returns the identity on success.
pub fn validate_table(rows: &[Vec<usize>]) -> Result<usize, TableViolation> {
    let n = rows.len();
    if n == 0 {
        return Err(TableViolation::Empty);
    }
    if n > MAX_ORDER {
        return Err(TableViolation::TooLarge(n));
    }
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(TableViolation::NotSquare { row: r, len: row.len(), expected: n });
        }
        if let Some((c, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(TableViolation::OutOfRange { row: r, col: c, value: v });
        }
    }
    let mut seen = vec![usize::MAX; n];
    for (r, row) in rows.iter().enumerate() {
        for &v in row {
            if seen[v] == r {
                return Err(TableViolation::NotLatinRow(r));
            }
            seen[v] = r;
        }
    }
    seen.fill(usize::MAX);
    for c in 0..n {
        for row in rows {
            let v = row[c];
            if seen[v] == c {
                return Err(TableViolation::NotLatinColumn(c));
            }
            seen[v] = c;
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
        .ok_or(TableViolation::NoIdentity)?;
    for (x, row) in rows.iter().enumerate() {
        if !(0..n).any(|y| row[y] == identity && rows[y][x] == identity) {
            return Err(TableViolation::NoInverse(x));
        }
    }
    for a in 0..n {
        let ra = &rows[a];
        for b in 0..n {
            let ab = ra[b];
            let rab = &rows[ab];
            let rb = &rows[b];
            for c in 0..n {
                if rab[c] != ra[rb[c]] {
                    return Err(TableViolation::NotAssociative { a, b, c });
                }
            }
        }
    }
    Ok(identity)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
}

impl FiniteGroup {
    /// Build from an explicit table, validating every axiom.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<FiniteGroup, TableViolation> {
        let identity = validate_table(&rows)?;
        let n = rows.len();
        let table: Vec<u32> = rows.iter().flatten().map(|&v| v as u32).collect();
        let inverse = (0..n)
            .map(|x| (0..n).find(|&y| rows[x][y] == identity).expect("validated") as u32)
            .collect();
        Ok(FiniteGroup { n, table, identity, inverse })
    }

    /// Build from a closed list of elements and a multiplication. The first
    /// element need not be the identity.
    pub fn from_elements<T, F>(elements: &[T], mul: F) -> Result<FiniteGroup, TableViolation>
    where
        T: Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let n = elements.len();
        let mut rows = Vec::with_capacity(n);
        for (r, a) in elements.iter().enumerate() {
            let mut row = Vec::with_capacity(n);
            for (c, b) in elements.iter().enumerate() {
                match index.get(&mul(a, b)) {
                    Some(&i) => row.push(i),
                    None => return Err(TableViolation::OutOfRange { row: r, col: c, value: n }),
                }
            }
            rows.push(row);
        }
        FiniteGroup::from_table(rows)
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::from_table(vec![vec![0]]).expect("trivial table")
    }

    /// Z/n under addition.
    pub fn cyclic(n: usize) -> Result<FiniteGroup, TableViolation> {
        FiniteGroup::from_table((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup, TableViolation> {
        let n = a.order() * b.order();
        if n > MAX_ORDER {
            return Err(TableViolation::TooLarge(n));
        }
        let m = b.order();
        let rows = (0..n)
            .map(|x| (0..n).map(|y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m)).collect())
            .collect();
        FiniteGroup::from_table(rows)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn pow(&self, a: usize, mut k: u64) -> usize {
        let mut base = a;
        let mut acc = self.identity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// [a, b] = a⁻¹b⁻¹ab
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.mul(a, b)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_is_valid() {
        assert_eq!(validate_table(&[vec![0, 1], vec![1, 0]]), Ok(0));
    }

    #[test]
    fn non_latin_row_rejected() {
        let err = validate_table(&[vec![0, 0], vec![1, 0]]).unwrap_err();
        assert_eq!(err, TableViolation::NotLatinRow(0));
    }

    #[test]
    fn ragged_and_out_of_range_rejected() {
        assert!(matches!(validate_table(&[vec![0, 1], vec![1]]), Err(TableViolation::NotSquare { .. })));
        assert!(matches!(validate_table(&[vec![0, 2], vec![1, 0]]), Err(TableViolation::OutOfRange { .. })));
        assert_eq!(validate_table(&[]), Err(TableViolation::Empty));
    }

    #[test]
    fn latin_square_without_associativity_rejected() {
        // Loop of order 5 with identity 0 that is not a group.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(validate_table(&rows), Err(TableViolation::NotAssociative { .. })));
    }

    #[test]
    fn latin_square_without_identity_rejected() {
        // x*y = x - y mod 3
        let rows = (0..3).map(|a| (0..3).map(|b| (a + 3 - b) % 3).collect()).collect::<Vec<_>>();
        assert_eq!(validate_table(&rows), Err(TableViolation::NoIdentity));
    }

    #[test]
    fn identity_need_not_be_zero() {
        // Z/3 relabelled so that the identity is element 2.
        let label = [2usize, 0, 1];
        let mut rows = vec![vec![0; 3]; 3];
        for a in 0..3 {
            for b in 0..3 {
                rows[label[a]][label[b]] = label[(a + b) % 3];
            }
        }
        let g = FiniteGroup::from_table(rows).unwrap();
        assert_eq!(g.identity(), 2);
        assert_eq!(g.element_order(0), 3);
        assert_eq!(g.pow(0, 3), 2);
    }

    #[test]
    fn direct_product_order() {
        let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(3).unwrap())
            .unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.elements().any(|x| g.element_order(x) == 6));
    }
}
