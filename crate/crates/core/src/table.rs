//! Cayley-table representation of finite loops.
//!
//! A [`LoopTable`] stores the multiplication table together with the two
//! division tables, so `mul`, `ldiv` and `rdiv` are all single lookups.
//! Element `0` is always the identity.

use crate::error::{Error, Result};

/// An element of a loop, interpreted relative to one [`LoopTable`].
pub type Element = usize;

/// A finite loop on `0..n` with identity `0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LoopTable {
    n: usize,
    mul: Vec<u16>,
    ldiv: Vec<u16>,
    rdiv: Vec<u16>,
}

impl std::fmt::Debug for LoopTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LoopTable(n = {})", self.n)
    }
}

impl LoopTable {
    /// Checks the loop axioms on a raw square array and precomputes divisions.
    pub fn validate(raw: &[Vec<usize>]) -> Result<Self> {
        let n = raw.len();
        if n == 0 || n > u16::MAX as usize || raw.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in raw.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::BadEntry {
                        row: i,
                        col: j,
                        value: v,
                        order: n,
                    });
                }
                flat.push(v as u16);
            }
        }
        Self::from_flat(n, flat)
    }

    /// Same as [`validate`](Self::validate) for a row-major flat table.
    pub fn from_flat(n: usize, flat: Vec<u16>) -> Result<Self> {
        if n == 0 || flat.len() != n * n {
            return Err(Error::NotSquare);
        }
        if let Some(pos) = flat.iter().position(|&v| v as usize >= n) {
            return Err(Error::BadEntry {
                row: pos / n,
                col: pos % n,
                value: flat[pos] as usize,
                order: n,
            });
        }
        let mut ldiv = vec![u16::MAX; n * n];
        let mut rdiv = vec![u16::MAX; n * n];
        for x in 0..n {
            for y in 0..n {
                let v = flat[x * n + y] as usize;
                // x \ v = y
                if ldiv[x * n + v] != u16::MAX {
                    return Err(Error::NotLatin {
                        line: "row",
                        index: x,
                    });
                }
                ldiv[x * n + v] = y as u16;
                // v / y = x
                if rdiv[v * n + y] != u16::MAX {
                    return Err(Error::NotLatin {
                        line: "column",
                        index: y,
                    });
                }
                rdiv[v * n + y] = x as u16;
            }
        }
        for i in 0..n {
            if flat[i] as usize != i || flat[i * n] as usize != i {
                return Err(Error::NoIdentity);
            }
        }
        Ok(LoopTable {
            n,
            mul: flat,
            ldiv,
            rdiv,
        })
    }

    /// Builds a loop from a multiplication function.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut flat = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let v = f(x, y);
                if v >= n {
                    return Err(Error::BadEntry {
                        row: x,
                        col: y,
                        value: v,
                        order: n,
                    });
                }
                flat.push(v as u16);
            }
        }
        Self::from_flat(n, flat)
    }

    /// Relabels an arbitrary latin square into a loop with identity `0`.
    ///
    /// If some element is already a two-sided identity it is swapped with `0`;
    /// otherwise columns and rows are permuted so that row 0 and column 0 read
    /// `0..n` (the result is then an isotope of the input).
    pub fn normalize(raw: &[Vec<usize>]) -> Result<Self> {
        let n = raw.len();
        if n == 0 || raw.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        let is_identity = |e: usize| (0..n).all(|x| raw[e][x] == x && raw[x][e] == x);
        if let Some(e) = (0..n).find(|&e| is_identity(e)) {
            let swap = |v: usize| {
                if v == e {
                    0
                } else if v == 0 {
                    e
                } else {
                    v
                }
            };
            return Self::from_fn(n, |x, y| swap(raw[swap(x)][swap(y)]));
        }
        // column c of the result is the original column whose row-0 entry is c
        let mut col_of = vec![usize::MAX; n];
        for (j, &v) in raw[0].iter().enumerate() {
            if v >= n || col_of[v] != usize::MAX {
                return Err(Error::NotLatin {
                    line: "row",
                    index: 0,
                });
            }
            col_of[v] = j;
        }
        let mut row_of = vec![usize::MAX; n];
        for (i, row) in raw.iter().enumerate() {
            let v = row[col_of[0]];
            if v >= n || row_of[v] != usize::MAX {
                return Err(Error::NotLatin {
                    line: "column",
                    index: col_of[0],
                });
            }
            row_of[v] = i;
        }
        Self::from_fn(n, |x, y| raw[row_of[x]][col_of[y]])
    }

    /// The order `n` of the loop.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.mul[x * self.n + y] as usize
    }

    /// `x \ y`, the unique `z` with `x * z = y`.
    #[inline]
    pub fn ldiv(&self, x: Element, y: Element) -> Element {
        self.ldiv[x * self.n + y] as usize
    }

    /// `x / y`, the unique `z` with `z * y = x`.
    #[inline]
    pub fn rdiv(&self, x: Element, y: Element) -> Element {
        self.rdiv[x * self.n + y] as usize
    }

    /// Row `x` of the multiplication table, i.e. the left translation by `x`.
    pub fn row(&self, x: Element) -> &[u16] {
        &self.mul[x * self.n..(x + 1) * self.n]
    }

    /// The multiplication table as nested vectors.
    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|x| self.row(x).iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Left translation `L_x` as an image array.
    pub fn left_translation(&self, x: Element) -> Vec<usize> {
        (0..self.n).map(|y| self.mul(x, y)).collect()
    }

    /// Right translation `R_x` as an image array.
    pub fn right_translation(&self, x: Element) -> Vec<usize> {
        (0..self.n).map(|y| self.mul(y, x)).collect()
    }

    pub fn check_element(&self, x: Element) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                element: x,
                order: self.n,
            })
        }
    }

    /// Transports the table along `perm`: the result `L'` satisfies
    /// `perm[x] * perm[y] = perm[x * y]`. `perm` must fix `0`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n;
        if perm.len() != n {
            return Err(Error::DegreeMismatch(perm.len(), n));
        }
        let mut inv = vec![usize::MAX; n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || inv[p] != usize::MAX {
                return Err(Error::NotAPermutation(n));
            }
            inv[p] = i;
        }
        Self::from_fn(n, |x, y| perm[self.mul(inv[x], inv[y])])
    }

    /// Checks `((x y) z) y = x ((y z) y)` on all triples.
    pub fn is_right_bol(&self) -> bool {
        let n = self.n;
        for y in 0..n {
            for z in 0..n {
                let yzy = self.mul(self.mul(y, z), y);
                for x in 0..n {
                    if self.mul(self.mul(self.mul(x, y), z), y) != self.mul(x, yzy) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Checks the mirror identity `y (z (y x)) = ((y z) y) x`.
    pub fn is_left_bol(&self) -> bool {
        let n = self.n;
        for y in 0..n {
            for z in 0..n {
                let yzy = self.mul(y, self.mul(z, y));
                for x in 0..n {
                    if self.mul(y, self.mul(z, self.mul(y, x))) != self.mul(yzy, x) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_moufang(&self) -> bool {
        self.is_right_bol() && self.is_left_bol()
    }

    pub fn is_associative(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Left inverse `x^λ` (with `x^λ x = 1`) and right inverse `x^ρ` (with `x x^ρ = 1`).
    pub fn left_inverse(&self, x: Element) -> Element {
        self.rdiv(0, x)
    }

    pub fn right_inverse(&self, x: Element) -> Element {
        self.ldiv(x, 0)
    }

    /// The two-sided inverse of `x`, if the left and right inverses agree.
    pub fn inverse(&self, x: Element) -> Result<Element> {
        let l = self.left_inverse(x);
        if l == self.right_inverse(x) {
            Ok(l)
        } else {
            Err(Error::NoTwoSidedInverse(x))
        }
    }

    pub fn has_two_sided_inverses(&self) -> bool {
        (0..self.n).all(|x| self.inverse(x).is_ok())
    }

    /// Right Bol plus the automorphic inverse property `(xy)^-1 = x^-1 y^-1`.
    pub fn is_right_bruck(&self) -> Result<bool> {
        let inv: Vec<usize> = (0..self.n).map(|x| self.inverse(x)).collect::<Result<_>>()?;
        if !self.is_right_bol() {
            return Ok(false);
        }
        for x in 0..self.n {
            for y in 0..self.n {
                if inv[self.mul(x, y)] != self.mul(inv[x], inv[y]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Left-normed power `((x x) x) ... x`; negative exponents use the
    /// two-sided inverse of `x^(-k)`.
    pub fn power(&self, x: Element, k: i64) -> Result<Element> {
        self.check_element(x)?;
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, x);
        }
        if k < 0 {
            self.inverse(acc).map_err(|_| Error::NoInverse(x))
        } else {
            Ok(acc)
        }
    }

    /// The subloop generated by `gens`.
    pub fn subloop_generated(&self, gens: &[Element]) -> Vec<Element> {
        let mut member = vec![false; self.n];
        member[0] = true;
        let mut elems = vec![0];
        for &g in gens {
            if !member[g] {
                member[g] = true;
                elems.push(g);
            }
        }
        // a finite subset closed under multiplication is closed under divisions
        let mut done = 0;
        while done < elems.len() {
            let a = elems[done];
            done += 1;
            for i in 0..done {
                let b = elems[i];
                for v in [self.mul(a, b), self.mul(b, a)] {
                    if !member[v] {
                        member[v] = true;
                        elems.push(v);
                    }
                }
            }
        }
        elems.sort_unstable();
        elems
    }

    /// Checks associativity inside the given subset.
    pub fn is_associative_on(&self, elems: &[Element]) -> bool {
        elems.iter().all(|&x| {
            elems.iter().all(|&y| {
                let xy = self.mul(x, y);
                elems
                    .iter()
                    .all(|&z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        })
    }

    /// Order of `x`; requires `<x>` to be a group.
    pub fn element_order(&self, x: Element) -> Result<usize> {
        self.check_element(x)?;
        let sub = self.subloop_generated(&[x]);
        if !self.is_associative_on(&sub) {
            return Err(Error::NotPowerAssociative(x));
        }
        Ok(sub.len())
    }

    /// Orders of all elements, in element order.
    pub fn element_orders(&self) -> Result<Vec<usize>> {
        (0..self.n).map(|x| self.element_order(x)).collect()
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> Result<usize> {
        Ok(self.element_orders()?.into_iter().fold(1, lcm))
    }

    pub fn is_power_associative(&self) -> bool {
        (0..self.n).all(|x| self.element_order(x).is_ok())
    }

    /// Number of ordered pairs `(x, y)` with `xy = yx`.
    pub fn count_commuting_pairs(&self) -> usize {
        let n = self.n;
        let mut count = n;
        for x in 0..n {
            for y in 0..x {
                if self.mul(x, y) == self.mul(y, x) {
                    count += 2;
                }
            }
        }
        count
    }

    /// Direct product; `(a, b)` is encoded as `a * other.order() + b`.
    pub fn direct_product(&self, other: &LoopTable) -> LoopTable {
        let m = other.n;
        Self::from_fn(self.n * m, |x, y| {
            self.mul(x / m, y / m) * m + other.mul(x % m, y % m)
        })
        .expect("direct product of loops is a loop")
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> LoopTable {
        LoopTable::from_fn(n, |x, y| (x + y) % n).unwrap()
    }

    #[test]
    fn trivial_loop() {
        let q = LoopTable::validate(&[vec![0]]).unwrap();
        assert_eq!(q.order(), 1);
        assert!(q.is_right_bol());
        assert_eq!(q.exponent().unwrap(), 1);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            LoopTable::validate(&[vec![0, 1], vec![1, 1]]),
            Err(Error::NotLatin { .. })
        ));
        assert_eq!(
            LoopTable::validate(&[vec![1, 0], vec![0, 1]]),
            Err(Error::NoIdentity)
        );
        assert!(matches!(
            LoopTable::validate(&[vec![0, 2], vec![1, 0]]),
            Err(Error::BadEntry { value: 2, .. })
        ));
        assert_eq!(LoopTable::validate(&[vec![0, 1]]), Err(Error::NotSquare));
        assert!(LoopTable::validate(&cyclic(3).to_rows()).is_ok());
    }

    #[test]
    fn divisions() {
        let q = cyclic(7);
        for x in 0..7 {
            for y in 0..7 {
                assert_eq!(q.mul(x, q.ldiv(x, y)), y);
                assert_eq!(q.mul(q.rdiv(x, y), y), x);
            }
        }
    }

    #[test]
    fn powers_and_orders() {
        let q = cyclic(9);
        assert_eq!(q.power(4, 0).unwrap(), 0);
        assert_eq!(q.power(4, 1).unwrap(), 4);
        assert_eq!(q.power(4, 2).unwrap(), 8);
        assert_eq!(q.power(4, -1).unwrap(), 5);
        assert_eq!(q.element_order(3).unwrap(), 3);
        assert_eq!(q.element_order(0).unwrap(), 1);
        assert_eq!(q.exponent().unwrap(), 9);
        assert_eq!(q.subloop_generated(&[3]), vec![0, 3, 6]);
        assert_eq!(q.subloop_generated(&[]), vec![0]);
    }

    #[test]
    fn negative_power_without_inverse() {
        // order-5 loop in which element 1 has different left and right inverses
        let raw = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 2, 0, 4, 3],
            vec![2, 3, 4, 0, 1],
            vec![3, 4, 1, 2, 0],
            vec![4, 0, 3, 1, 2],
        ];
        let q = LoopTable::validate(&raw).unwrap();
        assert_ne!(q.left_inverse(1), q.right_inverse(1));
        assert_eq!(q.power(1, -1), Err(Error::NoInverse(1)));
        assert_eq!(q.is_right_bruck(), Err(Error::NoTwoSidedInverse(1)));
    }

    #[test]
    fn commuting_pairs_of_abelian_group() {
        let q = cyclic(27);
        assert_eq!(q.count_commuting_pairs(), 729);
        assert!(q.is_right_bruck().unwrap());
    }

    #[test]
    fn normalize_swaps_identity() {
        // Z3 with identity labelled 2
        let raw = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let q = LoopTable::normalize(&raw).unwrap();
        assert!(q.is_associative());
        // a latin square without identity
        let raw = vec![vec![1, 0, 2], vec![0, 2, 1], vec![2, 1, 0]];
        let q = LoopTable::normalize(&raw).unwrap();
        assert_eq!(q.order(), 3);
    }
}
