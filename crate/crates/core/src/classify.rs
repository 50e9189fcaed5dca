//! Isomorphism and isotopism of finite loops.
//!
//! Isomorphisms are found by backtracking over the images of a small
//! generating set. Every element is derived from the generators by a fixed
//! sequence of products, so once the generator images are chosen the whole
//! map is forced; candidate images are restricted to elements with the same
//! isomorphism-invariant signature.

use crate::invariants::{in_left_nucleus, in_middle_nucleus, in_right_nucleus};
use crate::perm::Permutation;
use crate::table::{Element, LoopTable};
use rayon::prelude::*;
use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

fn hash_of<T: Hash>(t: &T) -> u64 {
    let mut h = DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

/// Isomorphism-invariant signature of every element, refined once by the
/// signatures of its products.
pub fn element_signatures(q: &LoopTable) -> Vec<u64> {
    let n = q.order();
    let mut squares = vec![0u32; n];
    for x in 0..n {
        squares[q.mul(x, x)] += 1;
    }
    let base: Vec<u64> = (0..n)
        .map(|x| {
            let sub = q.subloop_generated(&[x]).len();
            let mut k = 1;
            let mut pw = x;
            while pw != 0 && k <= n {
                pw = q.mul(pw, x);
                k += 1;
            }
            let commuting = (0..n).filter(|&y| q.mul(x, y) == q.mul(y, x)).count();
            hash_of(&(
                sub,
                k,
                commuting,
                squares[x],
                q.left_inverse(x) == q.right_inverse(x),
                in_left_nucleus(q, x),
                in_middle_nucleus(q, x),
                in_right_nucleus(q, x),
            ))
        })
        .collect();
    (0..n)
        .map(|x| {
            let mut pairs: Vec<(u64, u64, u64)> = (0..n)
                .map(|y| (base[y], base[q.mul(x, y)], base[q.mul(y, x)]))
                .collect();
            pairs.sort_unstable();
            hash_of(&(base[x], pairs))
        })
        .collect()
}

/// Isomorphism-invariant summary used to bucket loops before pairwise tests.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LoopFingerprint {
    pub order: usize,
    pub signatures: Vec<u64>,
}

pub fn fingerprint(q: &LoopTable) -> LoopFingerprint {
    fingerprint_from(q.order(), element_signatures(q))
}

fn fingerprint_from(order: usize, mut sigs: Vec<u64>) -> LoopFingerprint {
    sigs.sort_unstable();
    LoopFingerprint {
        order,
        signatures: sigs,
    }
}

/// Generators chosen greedily: each step adds the element that enlarges the
/// generated subloop most, ties to the smallest index.
pub fn greedy_generators(q: &LoopTable) -> Vec<Element> {
    let mut gens = Vec::new();
    let mut current = vec![0];
    while current.len() < q.order() {
        let mut best: Option<(usize, Element, Vec<Element>)> = None;
        for x in q.elements() {
            if current.binary_search(&x).is_ok() {
                continue;
            }
            let mut g = gens.clone();
            g.push(x);
            let s = q.subloop_generated(&g);
            if best.as_ref().map_or(true, |(size, _, _)| s.len() > *size) {
                best = Some((s.len(), x, s));
            }
        }
        let (_, x, s) = best.unwrap();
        gens.push(x);
        current = s;
    }
    gens
}

struct Plan {
    gens: Vec<Element>,
    /// For each generator level, the new elements `(e, u, v)` with `e = u v`.
    steps: Vec<Vec<(Element, Element, Element)>>,
    /// Elements of the subloop generated by the first `i + 1` generators.
    closed: Vec<Vec<Element>>,
}

fn plan(q: &LoopTable) -> Plan {
    let gens = greedy_generators(q);
    let n = q.order();
    let mut member = vec![false; n];
    member[0] = true;
    let mut elems = vec![0];
    let mut steps = Vec::new();
    let mut closed = Vec::new();
    for &g in &gens {
        let mut level = Vec::new();
        if !member[g] {
            member[g] = true;
            elems.push(g);
        }
        // recompute closure, recording derivations of new elements
        let mut done = 0;
        while done < elems.len() {
            let a = elems[done];
            done += 1;
            for i in 0..done {
                let b = elems[i];
                for (u, v) in [(a, b), (b, a)] {
                    let w = q.mul(u, v);
                    if !member[w] {
                        member[w] = true;
                        elems.push(w);
                        level.push((w, u, v));
                    }
                }
            }
        }
        steps.push(level);
        closed.push(elems.clone());
    }
    Plan {
        gens,
        steps,
        closed,
    }
}

struct Search<'a, F> {
    a: &'a LoopTable,
    b: &'a LoopTable,
    plan: Plan,
    sig_a: Vec<u64>,
    sig_b: Vec<u64>,
    map: Vec<usize>,
    used: Vec<bool>,
    visit: F,
}

impl<F: FnMut(&[usize]) -> bool> Search<'_, F> {
    /// Returns false once the visitor asks to stop.
    fn run(&mut self, level: usize) -> bool {
        if level == self.plan.gens.len() {
            return (self.visit)(&self.map);
        }
        let g = self.plan.gens[level];
        let candidates: Vec<usize> = (0..self.b.order())
            .filter(|&y| !self.used[y] && self.sig_b[y] == self.sig_a[g])
            .collect();
        for y in candidates {
            let mut assigned = Vec::new();
            if self.extend(level, g, y, &mut assigned) && !self.run(level + 1) {
                return false;
            }
            for e in assigned {
                self.used[self.map[e]] = false;
                self.map[e] = usize::MAX;
            }
        }
        true
    }

    fn assign(&mut self, e: Element, y: usize, assigned: &mut Vec<Element>) -> bool {
        if self.used[y] || self.sig_b[y] != self.sig_a[e] {
            return false;
        }
        self.used[y] = true;
        self.map[e] = y;
        assigned.push(e);
        true
    }

    fn extend(&mut self, level: usize, g: Element, y: usize, assigned: &mut Vec<Element>) -> bool {
        if !self.assign(g, y, assigned) {
            return false;
        }
        for i in 0..self.plan.steps[level].len() {
            let (e, u, v) = self.plan.steps[level][i];
            let img = self.b.mul(self.map[u], self.map[v]);
            if !self.assign(e, img, assigned) {
                return false;
            }
        }
        // homomorphism on pairs touching a new element
        let (a, b, map) = (self.a, self.b, &self.map);
        let closed = &self.plan.closed[level];
        assigned.iter().all(|&x| {
            closed.iter().all(|&z| {
                map[a.mul(x, z)] == b.mul(map[x], map[z]) && map[a.mul(z, x)] == b.mul(map[z], map[x])
            })
        })
    }
}

/// Calls `visit` with every isomorphism `a -> b` (as an image array) until it
/// returns `false`.
pub fn for_each_isomorphism(a: &LoopTable, b: &LoopTable, visit: impl FnMut(&[usize]) -> bool) {
    if a.order() != b.order() {
        return;
    }
    let sig_a = element_signatures(a);
    let sig_b = if std::ptr::eq(a, b) {
        sig_a.clone()
    } else {
        element_signatures(b)
    };
    search_with(a, b, sig_a, sig_b, visit);
}

fn search_with(
    a: &LoopTable,
    b: &LoopTable,
    sig_a: Vec<u64>,
    sig_b: Vec<u64>,
    visit: impl FnMut(&[usize]) -> bool,
) {
    let n = a.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[0] = 0;
    used[0] = true;
    if sig_a[0] != sig_b[0] {
        return;
    }
    let mut s = Search {
        a,
        b,
        plan: plan(a),
        sig_a,
        sig_b,
        map,
        used,
        visit,
    };
    s.run(0);
}

/// A verified isomorphism between two loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCertificate {
    pub map: Permutation,
}

impl IsoCertificate {
    /// Exhaustively checks `map(xy) = map(x) map(y)` and `map(0) = 0`.
    pub fn verify(&self, a: &LoopTable, b: &LoopTable) -> bool {
        let n = a.order();
        b.order() == n
            && self.map.degree() == n
            && self.map.apply(0) == 0
            && (0..n).all(|x| {
                (0..n).all(|y| self.map.apply(a.mul(x, y)) == b.mul(self.map.apply(x), self.map.apply(y)))
            })
    }
}

/// Finds an isomorphism `a -> b`, if one exists.
pub fn are_isomorphic(a: &LoopTable, b: &LoopTable) -> Option<IsoCertificate> {
    if a.order() != b.order() {
        return None;
    }
    let sig_a = element_signatures(a);
    let sig_b = element_signatures(b);
    iso_with_signatures(a, b, sig_a, sig_b)
}

fn iso_with_signatures(
    a: &LoopTable,
    b: &LoopTable,
    sig_a: Vec<u64>,
    sig_b: Vec<u64>,
) -> Option<IsoCertificate> {
    let mut sa = sig_a.clone();
    let mut sb = sig_b.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let mut found = None;
    search_with(a, b, sig_a, sig_b, |m| {
        found = Some(m.to_vec());
        false
    });
    found.map(|m| {
        let cert = IsoCertificate {
            map: Permutation::new(m).expect("isomorphism is a bijection"),
        };
        debug_assert!(cert.verify(a, b));
        cert
    })
}

/// Result of reducing a list of loops modulo isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classes {
    /// Indices of the first member of each class, in input order.
    pub representatives: Vec<usize>,
    /// For every input loop, the position of its class in `representatives`.
    pub class_of: Vec<usize>,
}

/// Keeps the first occurrence of each isomorphism class.
pub fn up_to_isomorphism(loops: &[LoopTable]) -> Classes {
    let sigs: Vec<Vec<u64>> = loops.par_iter().map(element_signatures).collect();
    let fps: Vec<LoopFingerprint> = loops
        .iter()
        .zip(&sigs)
        .map(|(q, s)| fingerprint_from(q.order(), s.clone()))
        .collect();
    let mut buckets: HashMap<&LoopFingerprint, Vec<usize>> = HashMap::new();
    let mut representatives = Vec::new();
    let mut class_of = vec![usize::MAX; loops.len()];
    for i in 0..loops.len() {
        let bucket = buckets.entry(&fps[i]).or_default();
        let hit = bucket.iter().copied().find(|&r| {
            iso_with_signatures(&loops[i], &loops[r], sigs[i].clone(), sigs[r].clone()).is_some()
        });
        match hit {
            Some(r) => class_of[i] = class_of[r],
            None => {
                bucket.push(i);
                class_of[i] = representatives.len();
                representatives.push(i);
            }
        }
    }
    Classes {
        representatives,
        class_of,
    }
}

/// The principal isotope `x o y = (x/b)(a\y)`, relabelled so that its
/// identity `ab` becomes `0`.
pub fn principal_isotope(q: &LoopTable, a: Element, b: Element) -> LoopTable {
    let e = q.mul(a, b);
    let swap = |v: usize| {
        if v == e {
            0
        } else if v == 0 {
            e
        } else {
            v
        }
    };
    LoopTable::from_fn(q.order(), |x, y| {
        let (x, y) = (swap(x), swap(y));
        swap(q.mul(q.rdiv(x, b), q.ldiv(a, y)))
    })
    .expect("principal isotope is a loop")
}

/// Witness of an isotopy: `principal_isotope(A, a, b)` is isomorphic to `B` via `map`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotopyWitness {
    pub a: Element,
    pub b: Element,
    pub map: Permutation,
}

fn cheap_key(q: &LoopTable) -> (usize, Vec<usize>) {
    let mut subs: Vec<usize> = q
        .elements()
        .map(|x| q.subloop_generated(&[x]).len())
        .collect();
    subs.sort_unstable();
    (q.count_commuting_pairs(), subs)
}

/// Tries every principal isotope of `a` against `b`.
pub fn find_isotopy(a: &LoopTable, b: &LoopTable) -> Option<IsotopyWitness> {
    if a.order() != b.order() {
        return None;
    }
    let key_b = cheap_key(b);
    let sig_b = element_signatures(b);
    let fp_b = fingerprint_from(b.order(), sig_b.clone());
    let n = a.order();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    pairs.par_iter().find_map_first(|&(x, y)| {
        let iso = principal_isotope(a, x, y);
        if cheap_key(&iso) != key_b {
            return None;
        }
        let sig = element_signatures(&iso);
        if fingerprint_from(n, sig.clone()) != fp_b {
            return None;
        }
        iso_with_signatures(&iso, b, sig, sig_b.clone()).map(|c| IsotopyWitness {
            a: x,
            b: y,
            map: c.map,
        })
    })
}

pub fn are_isotopic(a: &LoopTable, b: &LoopTable) -> bool {
    find_isotopy(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{catalog_loop, cyclic_group};

    fn random_relabel(q: &LoopTable, seed: u64) -> LoopTable {
        let n = q.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (2..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = 1 + (s >> 33) as usize % i;
            perm.swap(i, j);
        }
        q.relabel(&perm).unwrap()
    }

    #[test]
    fn identity_certificate() {
        let q = catalog_loop("Heis3").unwrap();
        let c = are_isomorphic(&q, &q).unwrap();
        assert!(c.verify(&q, &q));
    }

    #[test]
    fn relabelled_copies_are_isomorphic() {
        for name in ["Z9:Z3", "B3", "B9"] {
            let q = catalog_loop(name).unwrap();
            let r = random_relabel(&q, 7);
            let c = are_isomorphic(&q, &r).expect(name);
            assert!(c.verify(&q, &r));
        }
    }

    #[test]
    fn different_groups() {
        let a = cyclic_group(9).direct_product(&cyclic_group(3));
        let b = catalog_loop("Z3^3").unwrap();
        assert!(are_isomorphic(&a, &b).is_none());
        assert!(are_isomorphic(&a, &cyclic_group(8)).is_none());
    }

    #[test]
    fn reduction_keeps_first_occurrence() {
        let a = catalog_loop("Heis3").unwrap();
        let b = catalog_loop("Z9:Z3").unwrap();
        let list = vec![a.clone(), b.clone(), random_relabel(&a, 3), random_relabel(&b, 11)];
        let classes = up_to_isomorphism(&list);
        assert_eq!(classes.representatives, vec![0, 1]);
        assert_eq!(classes.class_of, vec![0, 1, 0, 1]);
        let single = up_to_isomorphism(&list[..1]);
        assert_eq!(single.representatives, vec![0]);
    }

    #[test]
    fn principal_isotope_basics() {
        let q = catalog_loop("B2").unwrap();
        assert_eq!(principal_isotope(&q, 0, 0), q);
        let iso = principal_isotope(&q, 5, 11);
        assert!(iso.is_right_bol());
    }

    #[test]
    fn greedy_generators_of_cyclic_group() {
        assert_eq!(greedy_generators(&cyclic_group(27)), vec![1]);
        assert_eq!(greedy_generators(&catalog_loop("Z3^3").unwrap()).len(), 3);
    }
}
