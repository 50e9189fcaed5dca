//! Right Bol central extensions of `Z_p` by a group, via the linear system
//! satisfied by their cocycles.

use super::gfp::Rref;
use crate::classify::up_to_isomorphism;
use crate::constructions::{central_extension, Cocycle};
use crate::error::{Error, Result};
use crate::invariants::{automorphism_group, center, quotient, SubloopSet};
use crate::table::LoopTable;
use std::collections::HashSet;

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn primitive_root(p: usize) -> usize {
    (1..p)
        .find(|&g| {
            let mut x = 1;
            (1..p - 1).all(|_| {
                x = x * g % p;
                x != 1
            })
        })
        .expect("prime has a primitive root")
}

/// Solutions of the Bol cocycle equations together with the coboundaries.
///
/// Vectors have one coordinate per pair `(x, y)` of nonidentity elements of
/// the factor, at index `(x - 1) * (m - 1) + (y - 1)`.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    p: usize,
    factor: LoopTable,
    solutions: Vec<Vec<u8>>,
    coboundaries: Rref,
    /// Basis of a complement of the coboundaries inside the solutions,
    /// reduced modulo the coboundaries.
    classes: Rref,
}

impl CocycleSpace {
    pub fn prime(&self) -> usize {
        self.p
    }

    pub fn factor(&self) -> &LoopTable {
        &self.factor
    }

    pub fn solution_basis(&self) -> &[Vec<u8>] {
        &self.solutions
    }

    pub fn coboundary_basis(&self) -> &[Vec<u8>] {
        self.coboundaries.rows()
    }

    /// Dimension of solutions modulo coboundaries.
    pub fn class_dimension(&self) -> usize {
        self.classes.rank()
    }

    fn m(&self) -> usize {
        self.factor.order()
    }

    fn index(&self, x: usize, y: usize) -> usize {
        (x - 1) * (self.m() - 1) + (y - 1)
    }

    /// The normalized cocycle with the given coordinates.
    pub fn cocycle(&self, v: &[u8]) -> Cocycle {
        let m = self.m();
        Cocycle::from_fn(m, self.p, |x, y| {
            if x == 0 || y == 0 {
                0
            } else {
                v[self.index(x, y)] as usize
            }
        })
        .expect("normalized by construction")
    }

    /// Coordinates of the class of `v` modulo coboundaries.
    pub fn class_coordinates(&self, v: &[u8]) -> Vec<u8> {
        let mut v = v.to_vec();
        self.coboundaries.reduce(&mut v);
        self.classes.pivots().iter().map(|&c| v[c]).collect()
    }

    /// A cocycle vector representing the class with the given coordinates.
    pub fn class_vector(&self, coords: &[u8]) -> Vec<u8> {
        let p = self.p as u16;
        let mut v = vec![0u8; self.classes.ncols()];
        for (row, &c) in self.classes.rows().iter().zip(coords) {
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = ((*x as u16 + c as u16 * r as u16) % p) as u8;
                }
            }
        }
        v
    }

    /// `theta'(x, y) = lambda * theta(beta(x), beta(y))`.
    fn act(&self, v: &[u8], lambda: usize, beta: &[usize]) -> Vec<u8> {
        let m = self.m();
        let mut out = vec![0u8; v.len()];
        for x in 1..m {
            for y in 1..m {
                let src = v[self.index(beta[x], beta[y])] as usize;
                out[self.index(x, y)] = (lambda * src % self.p) as u8;
            }
        }
        out
    }

    /// Matrices of the generators of `Aut(Z_p) x Aut(F)` acting on class
    /// coordinates; entry `[i][j]` is coordinate `j` of the image of basis
    /// vector `i`.
    fn action_matrices(&self) -> Vec<Vec<Vec<u8>>> {
        let m = self.m();
        let identity: Vec<usize> = (0..m).collect();
        let mut actions: Vec<(usize, Vec<usize>)> = vec![(primitive_root(self.p), identity)];
        for g in automorphism_group(&self.factor).strong_generators() {
            actions.push((1, g.images()));
        }
        actions
            .iter()
            .map(|(lambda, beta)| {
                self.classes
                    .rows()
                    .iter()
                    .map(|row| self.class_coordinates(&self.act(row, *lambda, beta)))
                    .collect()
            })
            .collect()
    }

    /// Smallest class index in each orbit of `Aut(Z_p) x Aut(F)`, where the
    /// class with coordinates `c` has index `sum c_i p^i`.
    pub fn orbit_representatives(&self) -> Vec<Vec<u8>> {
        let k = self.class_dimension();
        let p = self.p;
        let total = p.pow(k as u32);
        let decode = |mut idx: usize| -> Vec<u8> {
            (0..k)
                .map(|_| {
                    let d = (idx % p) as u8;
                    idx /= p;
                    d
                })
                .collect()
        };
        let encode = |c: &[u8]| c.iter().rev().fold(0, |acc, &d| acc * p + d as usize);
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for mat in self.action_matrices() {
            for idx in 0..total {
                let c = decode(idx);
                let mut img = vec![0usize; k];
                for (i, &ci) in c.iter().enumerate() {
                    if ci != 0 {
                        for j in 0..k {
                            img[j] += ci as usize * mat[i][j] as usize;
                        }
                    }
                }
                let img: Vec<u8> = img.into_iter().map(|x| (x % p) as u8).collect();
                let (a, b) = (find(&mut parent, idx), find(&mut parent, encode(&img)));
                // keep the smaller index as root so roots are orbit minima
                if a < b {
                    parent[b] = a;
                } else if b < a {
                    parent[a] = b;
                }
            }
        }
        (0..total)
            .filter(|&i| find(&mut parent, i) == i)
            .map(decode)
            .collect()
    }
}

/// Builds the Bol cocycle equations of `Z_p` by the group `factor` and
/// solves them.
pub fn bol_cocycle_space(p: usize, factor: &LoopTable) -> Result<CocycleSpace> {
    if !is_prime(p) || p > 251 {
        return Err(Error::NotPrime(p));
    }
    if !factor.is_associative() {
        return Err(Error::NotAGroup);
    }
    let m = factor.order();
    let ncols = (m - 1) * (m - 1);
    let idx = |x: usize, y: usize| (x - 1) * (m - 1) + (y - 1);
    let pp = p as u8;

    // ((xy)z)y = x((yz)y) in the Z_p coordinate:
    // th(x,y) + th(xy,z) + th(xyz,y) - th(y,z) - th(yz,y) - th(x,yzy) = 0
    let mut equations = Rref::new(pp, ncols);
    let mut seen: HashSet<Vec<(usize, u8)>> = HashSet::new();
    let mut coef = vec![0u8; ncols];
    for x in 1..m {
        for y in 1..m {
            for z in 0..m {
                let xy = factor.mul(x, y);
                let xyz = factor.mul(xy, z);
                let yz = factor.mul(y, z);
                let yzy = factor.mul(yz, y);
                let mut touched = Vec::with_capacity(6);
                for (u, v, sign) in [
                    (x, y, 1),
                    (xy, z, 1),
                    (xyz, y, 1),
                    (y, z, p - 1),
                    (yz, y, p - 1),
                    (x, yzy, p - 1),
                ] {
                    if u != 0 && v != 0 {
                        let c = idx(u, v);
                        coef[c] = ((coef[c] as usize + sign) % p) as u8;
                        touched.push(c);
                    }
                }
                touched.sort_unstable();
                touched.dedup();
                let mut terms: Vec<(usize, u8)> = touched
                    .iter()
                    .filter(|&&c| coef[c] != 0)
                    .map(|&c| (c, coef[c]))
                    .collect();
                for &c in &touched {
                    coef[c] = 0;
                }
                if terms.is_empty() {
                    continue;
                }
                let inv = super::gfp::inv_mod(terms[0].1, pp) as usize;
                for t in terms.iter_mut() {
                    t.1 = (t.1 as usize * inv % p) as u8;
                }
                if !seen.insert(terms.clone()) {
                    continue;
                }
                let v = equations.reduce_sparse(&terms);
                equations.insert_reduced(v);
            }
        }
    }
    let solutions = equations.null_space();

    let mut coboundaries = Rref::new(pp, ncols);
    for g in 1..m {
        // indicator function of g
        let mut v = vec![0u8; ncols];
        for x in 1..m {
            for y in 1..m {
                let xy = factor.mul(x, y);
                let val = (xy == g) as usize + 2 * p - (x == g) as usize - (y == g) as usize;
                v[idx(x, y)] = (val % p) as u8;
            }
        }
        coboundaries.insert(v);
    }

    let mut classes = Rref::new(pp, ncols);
    for s in &solutions {
        let mut v = s.clone();
        coboundaries.reduce(&mut v);
        classes.insert(v);
    }

    Ok(CocycleSpace {
        p,
        factor: factor.clone(),
        solutions,
        coboundaries,
        classes,
    })
}

/// All right Bol loops that are central extensions of `Z_p` by the group
/// `factor`, up to isomorphism, in a deterministic order.
pub fn central_extensions_in_variety(p: usize, factor: &LoopTable) -> Result<Vec<LoopTable>> {
    let space = bol_cocycle_space(p, factor)?;
    let mut loops = Vec::new();
    for coords in space.orbit_representatives() {
        let theta = space.cocycle(&space.class_vector(&coords));
        let q = central_extension(p, factor, &theta)?;
        verify_extension(&q, p, factor)?;
        loops.push(q);
    }
    let classes = up_to_isomorphism(&loops);
    Ok(classes
        .representatives
        .into_iter()
        .map(|i| loops[i].clone())
        .collect())
}

/// Checks that `q` is right Bol, that `Z_p x {1}` is central, and that the
/// quotient by it is the factor.
fn verify_extension(q: &LoopTable, p: usize, factor: &LoopTable) -> Result<()> {
    if !q.is_right_bol() {
        return Err(Error::InconsistentSpec("extension is not right Bol".into()));
    }
    let m = factor.order();
    let z: Vec<usize> = (0..p).map(|a| a * m).collect();
    let zc = center(q);
    if !z.iter().all(|&e| zc.contains(e)) {
        return Err(Error::InconsistentSpec("kernel is not central".into()));
    }
    let zset = SubloopSet::new(q, &z)?;
    let (cls, reps) = crate::invariants::cosets(q, &zset);
    let f = quotient(q, &zset)?;
    // coset of x * m-residue r is labelled by the class of r
    let relabel: Vec<usize> = (0..m).map(|x| cls[x]).collect();
    let ok = (0..m).all(|x| (0..m).all(|y| relabel[factor.mul(x, y)] == f.mul(relabel[x], relabel[y])));
    if !ok || reps.len() != m {
        return Err(Error::InconsistentSpec("quotient differs from the factor".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic_group, elementary_abelian_square};

    fn dot_equations_hold(space: &CocycleSpace, v: &[u8]) -> bool {
        let q = central_extension(space.p, &space.factor, &space.cocycle(v)).unwrap();
        q.is_right_bol()
    }

    #[test]
    fn rejects_bad_input() {
        let f = elementary_abelian_square(3);
        assert!(matches!(bol_cocycle_space(4, &f), Err(Error::NotPrime(4))));
        let b1 = crate::constructions::bol_loop(1).unwrap();
        assert!(matches!(bol_cocycle_space(3, &b1), Err(Error::NotAGroup)));
    }

    #[test]
    fn coboundaries_are_solutions() {
        let space = bol_cocycle_space(3, &elementary_abelian_square(3)).unwrap();
        assert_eq!(space.coboundary_basis().len(), 6);
        for b in space.coboundary_basis() {
            assert!(dot_equations_hold(&space, b));
            assert!(space.class_coordinates(b).iter().all(|&c| c == 0));
        }
        for s in space.solution_basis() {
            assert!(dot_equations_hold(&space, s));
        }
        let zero = vec![0u8; 64];
        assert!(dot_equations_hold(&space, &zero));
    }

    #[test]
    fn class_coordinates_round_trip() {
        let space = bol_cocycle_space(3, &elementary_abelian_square(3)).unwrap();
        let k = space.class_dimension();
        for i in 0..k {
            let mut c = vec![0u8; k];
            c[i] = 2;
            assert_eq!(space.class_coordinates(&space.class_vector(&c)), c);
        }
    }

    #[test]
    fn extensions_of_cyclic_factor() {
        // Z_3 by Z_3: Z_9 and Z_3 x Z_3
        let loops = central_extensions_in_variety(3, &cyclic_group(3)).unwrap();
        assert_eq!(loops.len(), 2);
        assert!(loops.iter().all(|q| q.is_associative()));
    }
}
