//! Dense linear algebra over GF(p) for small primes.

/// Multiplicative inverse modulo a prime `p`.
pub fn inv_mod(a: u8, p: u8) -> u8 {
    let a = a % p;
    assert!(a != 0, "zero has no inverse");
    (1..p).find(|&b| (a as u32 * b as u32) % p as u32 == 1).unwrap()
}

/// A subspace of GF(p)^n kept as a fully reduced row echelon basis.
#[derive(Clone, Debug)]
pub struct Rref {
    p: u8,
    ncols: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
    /// `pivot_row[c]` is the row whose pivot is column `c`.
    pivot_row: Vec<Option<usize>>,
    inverses: Vec<u8>,
}

impl Rref {
    pub fn new(p: u8, ncols: usize) -> Self {
        let mut inverses = vec![0u8; p as usize];
        for a in 1..p {
            inverses[a as usize] = inv_mod(a, p);
        }
        Rref {
            p,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![None; ncols],
            inverses,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v -= c * row`, all entries mod p.
    fn axpy(&self, v: &mut [u8], c: u8, row: &[u8]) {
        let p = self.p as u16;
        let neg = (p - c as u16) % p;
        for (x, &r) in v.iter_mut().zip(row) {
            if r != 0 {
                *x = ((*x as u16 + neg * r as u16) % p) as u8;
            }
        }
    }

    /// Reduces `v` modulo the subspace in place.
    pub fn reduce(&self, v: &mut [u8]) {
        for (i, &c) in self.pivots.iter().enumerate() {
            let coef = v[c];
            if coef != 0 {
                self.axpy(v, coef, &self.rows[i]);
            }
        }
    }

    /// Reduces a sparse vector `(column, coefficient)`; the result is dense.
    pub fn reduce_sparse(&self, terms: &[(usize, u8)]) -> Vec<u8> {
        let mut v = vec![0u8; self.ncols];
        for &(c, a) in terms {
            v[c] = ((v[c] as u16 + a as u16) % self.p as u16) as u8;
        }
        // only pivots hit by the original support can be nonzero after the
        // other reductions, because reduced rows vanish on all other pivots
        let mut hit: Vec<usize> = terms
            .iter()
            .map(|&(c, _)| c)
            .filter(|&c| self.pivot_row[c].is_some())
            .collect();
        hit.sort_unstable();
        hit.dedup();
        for c in hit {
            let coef = v[c];
            if coef != 0 {
                let r = self.pivot_row[c].unwrap();
                self.axpy(&mut v, coef, &self.rows[r]);
            }
        }
        v
    }

    /// Adds a vector that is already reduced; returns false if it is zero.
    pub fn insert_reduced(&mut self, mut v: Vec<u8>) -> bool {
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.inverses[v[c] as usize];
        let p = self.p as u16;
        for x in v.iter_mut() {
            *x = ((*x as u16 * inv as u16) % p) as u8;
        }
        for i in 0..self.rows.len() {
            let coef = self.rows[i][c];
            if coef != 0 {
                let mut row = std::mem::take(&mut self.rows[i]);
                self.axpy(&mut row, coef, &v);
                self.rows[i] = row;
            }
        }
        self.pivot_row[c] = Some(self.rows.len());
        self.rows.push(v);
        self.pivots.push(c);
        true
    }

    pub fn insert(&mut self, mut v: Vec<u8>) -> bool {
        self.reduce(&mut v);
        self.insert_reduced(v)
    }

    /// Basis of `{x : r . x = 0 for every row r}`.
    pub fn null_space(&self) -> Vec<Vec<u8>> {
        let p = self.p;
        (0..self.ncols)
            .filter(|&c| self.pivot_row[c].is_none())
            .map(|free| {
                let mut x = vec![0u8; self.ncols];
                x[free] = 1;
                for (i, &pc) in self.pivots.iter().enumerate() {
                    let a = self.rows[i][free];
                    x[pc] = (p - a) % p;
                }
                x
            })
            .collect()
    }
}
