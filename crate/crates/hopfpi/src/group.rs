//! Finite grading groups given by Cayley tables.

use crate::error::{GroupError, Result};

/// A validated finite group on the elements `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    mul: Vec<Vec<usize>>,
    id: usize,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table and derives the identity and inverses.
    pub fn from_table(mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = mul.len();
        if n == 0 || mul.iter().any(|row| row.len() != n) {
            return Err(GroupError::NotSquare.into());
        }
        if let Some(&bad) = mul.iter().flatten().find(|&&x| x >= n) {
            return Err(GroupError::OutOfRange(bad).into());
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c).into());
                    }
                }
            }
        }
        let id = (0..n)
            .find(|&e| (0..n).all(|a| mul[e][a] == a && mul[a][e] == a))
            .ok_or(GroupError::NoIdentity)?;
        let inv = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| mul[a][b] == id && mul[b][a] == id)
                    .ok_or(GroupError::NoInverse(a))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(FiniteGroup { mul, id, inv })
    }

    /// The cyclic group `Z/n` with elements `0..n` under addition.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::from_table(table).expect("cyclic table is a group")
    }

    /// The symmetric group on three letters; element 0 is the identity,
    /// 1 and 2 are the 3-cycles, 3..6 the transpositions.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
        ];
        let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).expect("closed");
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("S3 table is a group")
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.id
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// The product of a sequence of elements, left to right.
    pub fn product(&self, elements: &[usize]) -> usize {
        elements.iter().fold(self.id, |acc, &x| self.mul(acc, x))
    }

    /// The conjugate `β α β⁻¹`.
    pub fn conjugate(&self, beta: usize, alpha: usize) -> usize {
        self.product(&[beta, alpha, self.inv(beta)])
    }

    /// The power `α^e`, negative exponents allowed.
    pub fn pow(&self, a: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(a) } else { a };
        (0..e.unsigned_abs()).fold(self.id, |acc, _| self.mul(acc, base))
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// The least `d ≥ 1` with `α^d = 1`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut d = 1;
        while x != self.id {
            x = self.mul(x, a);
            d += 1;
        }
        d
    }

    /// The cyclic subgroup `{1, α, α², …}`, sorted by index.
    pub fn generated_subgroup(&self, a: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.element_order(a) as i64)
            .map(|e| self.pow(a, e))
            .collect();
        out.sort_unstable();
        out
    }

    /// True when the set is closed under products and inverses and contains 1.
    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        set.contains(&self.id)
            && set.iter().all(|&a| set.contains(&self.inv(a)))
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// True when `α` commutes with every element.
    pub fn is_central(&self, a: usize) -> bool {
        self.elements().all(|b| self.mul(a, b) == self.mul(b, a))
    }

    /// True when `h` is a group homomorphism `π → π` given by its values.
    pub fn is_endomorphism(&self, h: &[usize]) -> bool {
        h.len() == self.order()
            && self.elements().all(|a| {
                self.elements()
                    .all(|b| h[self.mul(a, b)] == self.mul(h[a], h[b]))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::from_table(vec![vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.element_order(0), 1);
    }

    #[test]
    fn z2_inverse_is_identity_map() {
        let g = FiniteGroup::cyclic(2);
        assert_eq!((g.inv(0), g.inv(1)), (0, 1));
        assert_eq!(g.element_order(1), 2);
    }

    #[test]
    fn s3_has_two_elements_of_order_three() {
        let g = FiniteGroup::symmetric3();
        let threes = g.elements().filter(|&a| g.element_order(a) == 3).count();
        assert_eq!(threes, 2);
        assert_eq!(g.element_order(1), 3);
        assert_eq!(g.generated_subgroup(3).len(), 2);
        assert!(!g.is_central(1));
    }

    #[test]
    fn cyclic_generator_generates_everything() {
        let g = FiniteGroup::cyclic(4);
        assert_eq!(g.generated_subgroup(1), vec![0, 1, 2, 3]);
        assert_eq!(g.generated_subgroup(0), vec![0]);
    }

    #[test]
    fn failures_are_distinct() {
        let err = |t: Vec<Vec<usize>>| FiniteGroup::from_table(t).unwrap_err();
        assert_eq!(err(vec![]), Error::Group(GroupError::NotSquare));
        assert_eq!(err(vec![vec![0, 1]]), Error::Group(GroupError::NotSquare));
        assert_eq!(
            err(vec![vec![0, 2], vec![1, 0]]),
            Error::Group(GroupError::OutOfRange(2))
        );
        // x*y = y is associative but has no two-sided identity.
        assert_eq!(
            err(vec![vec![0, 1], vec![0, 1]]),
            Error::Group(GroupError::NoIdentity)
        );
        // Max on {0,1}: associative, 0 neutral, 1 has no inverse.
        assert_eq!(
            err(vec![vec![0, 1], vec![1, 1]]),
            Error::Group(GroupError::NoInverse(1))
        );
        // x*y = x - y mod 3 is not associative.
        let sub = (0..3)
            .map(|a| (0..3).map(|b| (a + 3 - b) % 3).collect())
            .collect();
        assert!(matches!(
            err(sub),
            Error::Group(GroupError::NotAssociative(..))
        ));
    }
}
