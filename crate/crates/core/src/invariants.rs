//! Substructures and numerical invariants of finite loops: nuclei, commutant,
//! center, normal subloops and factor loops, derived and central series,
//! multiplication groups, automorphisms and the associated Bruck loop.

use crate::classify;
use crate::constructions::CATALOG_NAMES;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::permgroup::PermGroup;
use crate::table::{Element, LoopTable};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// A subloop of some parent loop, stored as a sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubloopSet {
    elements: Vec<Element>,
}

impl SubloopSet {
    /// Checks that `elems` is a subloop of `q`.
    pub fn new(q: &LoopTable, elems: &[Element]) -> Result<Self> {
        let mut member = vec![false; q.order()];
        for &x in elems {
            q.check_element(x)?;
            member[x] = true;
        }
        if !member[0] {
            return Err(Error::NotASubloop);
        }
        let elements: Vec<Element> = (0..q.order()).filter(|&x| member[x]).collect();
        for &x in &elements {
            for &y in &elements {
                if !member[q.mul(x, y)] || !member[q.ldiv(x, y)] || !member[q.rdiv(x, y)] {
                    return Err(Error::NotASubloop);
                }
            }
        }
        Ok(SubloopSet { elements })
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<Element>) -> Self {
        SubloopSet { elements }
    }

    pub fn generated(q: &LoopTable, gens: &[Element]) -> Self {
        SubloopSet {
            elements: q.subloop_generated(gens),
        }
    }

    pub fn whole(q: &LoopTable) -> Self {
        SubloopSet {
            elements: q.elements().collect(),
        }
    }

    pub fn trivial() -> Self {
        SubloopSet { elements: vec![0] }
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &SubloopSet) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &SubloopSet) -> SubloopSet {
        SubloopSet {
            elements: self
                .elements
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        }
    }

    /// The subloop as a loop in its own right, elements relabelled in order.
    pub fn as_loop(&self, q: &LoopTable) -> LoopTable {
        let index = |v: usize| self.elements.binary_search(&v).unwrap();
        LoopTable::from_fn(self.len(), |a, b| index(q.mul(self.elements[a], self.elements[b])))
            .expect("subloop is a loop")
    }

    pub fn exponent(&self, q: &LoopTable) -> Result<usize> {
        self.as_loop(q).exponent()
    }
}

fn collect_subloop(q: &LoopTable, pred: impl Fn(Element) -> bool) -> SubloopSet {
    SubloopSet::from_sorted_unchecked(q.elements().filter(|&x| pred(x)).collect())
}

pub fn in_left_nucleus(q: &LoopTable, x: Element) -> bool {
    let n = q.order();
    (0..n).all(|y| {
        let xy = q.mul(x, y);
        (0..n).all(|z| q.mul(x, q.mul(y, z)) == q.mul(xy, z))
    })
}

pub fn in_middle_nucleus(q: &LoopTable, x: Element) -> bool {
    let n = q.order();
    (0..n).all(|y| {
        let yx = q.mul(y, x);
        (0..n).all(|z| q.mul(y, q.mul(x, z)) == q.mul(yx, z))
    })
}

pub fn in_right_nucleus(q: &LoopTable, x: Element) -> bool {
    let n = q.order();
    (0..n).all(|y| {
        (0..n).all(|z| q.mul(y, q.mul(z, x)) == q.mul(q.mul(y, z), x))
    })
}

/// `{x : x(yz) = (xy)z for all y, z}`.
pub fn left_nucleus(q: &LoopTable) -> SubloopSet {
    collect_subloop(q, |x| in_left_nucleus(q, x))
}

pub fn middle_nucleus(q: &LoopTable) -> SubloopSet {
    collect_subloop(q, |x| in_middle_nucleus(q, x))
}

pub fn right_nucleus(q: &LoopTable) -> SubloopSet {
    collect_subloop(q, |x| in_right_nucleus(q, x))
}

pub fn nucleus(q: &LoopTable) -> SubloopSet {
    collect_subloop(q, |x| {
        in_left_nucleus(q, x) && in_middle_nucleus(q, x) && in_right_nucleus(q, x)
    })
}

/// Elements commuting with everything. Not a subloop in general.
pub fn commutant(q: &LoopTable) -> Vec<Element> {
    q.elements()
        .filter(|&x| q.elements().all(|y| q.mul(x, y) == q.mul(y, x)))
        .collect()
}

pub fn center(q: &LoopTable) -> SubloopSet {
    let comm = commutant(q);
    SubloopSet::from_sorted_unchecked(
        comm.into_iter()
            .filter(|&x| {
                in_left_nucleus(q, x) && in_middle_nucleus(q, x) && in_right_nucleus(q, x)
            })
            .collect(),
    )
}

/// Generators `L_{x,y}`, `R_{x,y}`, `T_x` of the inner mapping group, as image arrays.
pub fn inner_mapping_generators(q: &LoopTable) -> Vec<Vec<Element>> {
    let n = q.order();
    let mut out = Vec::with_capacity(2 * n * n + n);
    for x in 1..n {
        for y in 1..n {
            let xy = q.mul(x, y);
            let yx = q.mul(y, x);
            out.push((0..n).map(|z| q.ldiv(xy, q.mul(x, q.mul(y, z)))).collect());
            out.push((0..n).map(|z| q.rdiv(q.mul(q.mul(z, y), x), yx)).collect());
        }
        out.push((0..n).map(|z| q.ldiv(x, q.mul(z, x))).collect());
    }
    out
}

/// Right inner mappings `R_{x,y}` only.
pub fn right_inner_mapping_generators(q: &LoopTable) -> Vec<Vec<Element>> {
    let n = q.order();
    let mut out = Vec::with_capacity(n * n);
    for x in 1..n {
        for y in 1..n {
            let yx = q.mul(y, x);
            out.push((0..n).map(|z| q.rdiv(q.mul(q.mul(z, y), x), yx)).collect());
        }
    }
    out
}

/// Tests normality against the generators of the inner mapping group.
pub fn is_normal(q: &LoopTable, h: &SubloopSet) -> Result<bool> {
    let h = SubloopSet::new(q, h.elements())?;
    let n = q.order();
    let mut member = vec![false; n];
    for &x in h.elements() {
        member[x] = true;
    }
    for x in 1..n {
        for &z in h.elements() {
            if !member[q.ldiv(x, q.mul(z, x))] {
                return Ok(false);
            }
        }
        for y in 1..n {
            let xy = q.mul(x, y);
            let yx = q.mul(y, x);
            for &z in h.elements() {
                if !member[q.ldiv(xy, q.mul(x, q.mul(y, z)))]
                    || !member[q.rdiv(q.mul(q.mul(z, y), x), yx)]
                {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Default bound on the size of generating sets for [`all_subloops`]:
/// `ceil(log2 n)`, which is 3 at order 27 by Lagrange.
pub fn default_generator_bound(n: usize) -> usize {
    let mut k = 0;
    while (1usize << k) < n {
        k += 1;
    }
    k
}

/// All subloops generated by at most `max_gens` elements, sorted by size and
/// then lexicographically.
pub fn all_subloops_bounded(q: &LoopTable, max_gens: usize) -> Vec<SubloopSet> {
    let mut seen: HashSet<Vec<Element>> = HashSet::new();
    let mut frontier = vec![vec![0]];
    seen.insert(vec![0]);
    for _ in 0..max_gens {
        let mut next = Vec::new();
        for s in &frontier {
            for x in q.elements() {
                if s.binary_search(&x).is_ok() {
                    continue;
                }
                let mut gens = s.clone();
                gens.push(x);
                let t = q.subloop_generated(&gens);
                if seen.insert(t.clone()) {
                    next.push(t);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    let mut out: Vec<SubloopSet> = seen.into_iter().map(SubloopSet::from_sorted_unchecked).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.elements.cmp(&b.elements)));
    out
}

pub fn all_subloops(q: &LoopTable) -> Vec<SubloopSet> {
    all_subloops_bounded(q, default_generator_bound(q.order()))
}

pub fn all_normal_subloops(q: &LoopTable) -> Vec<SubloopSet> {
    all_subloops(q)
        .into_iter()
        .filter(|h| is_normal(q, h).unwrap_or(false))
        .collect()
}

/// The factor loop `Q/N` on the cosets `xN`, numbered by smallest element.
pub fn quotient(q: &LoopTable, nsub: &SubloopSet) -> Result<LoopTable> {
    if !is_normal(q, nsub)? {
        return Err(Error::NotNormal);
    }
    let (coset_of, reps) = cosets(q, nsub);
    let m = reps.len();
    let mut table = vec![usize::MAX; m * m];
    for x in q.elements() {
        for y in q.elements() {
            let (a, b) = (coset_of[x], coset_of[y]);
            let c = coset_of[q.mul(x, y)];
            let cell = &mut table[a * m + b];
            if *cell == usize::MAX {
                *cell = c;
            } else if *cell != c {
                return Err(Error::IllDefined);
            }
        }
    }
    LoopTable::from_fn(m, |a, b| table[a * m + b]).map_err(|_| Error::IllDefined)
}

/// Left cosets `xN`: coset index per element and the smallest element of each coset.
pub fn cosets(q: &LoopTable, nsub: &SubloopSet) -> (Vec<usize>, Vec<Element>) {
    let n = q.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &h in nsub.elements() {
            coset_of[q.mul(x, h)] = id;
        }
    }
    (coset_of, reps)
}

fn is_abelian_group(q: &LoopTable) -> bool {
    q.is_commutative() && q.is_associative()
}

/// The smallest normal subloop with abelian-group factor.
pub fn derived_subloop(q: &LoopTable) -> SubloopSet {
    let candidates: Vec<SubloopSet> = all_normal_subloops(q)
        .into_iter()
        .filter(|h| quotient(q, h).map(|f| is_abelian_group(&f)).unwrap_or(false))
        .collect();
    // candidates are sorted by size, so the first is minimal if any is
    let min = candidates
        .first()
        .cloned()
        .unwrap_or_else(|| SubloopSet::whole(q));
    debug_assert!(candidates.iter().all(|c| min.is_subset_of(c)));
    min
}

/// `Q >= Q' >= Q'' >= ...` until it stabilizes, as loops in their own right.
pub fn derived_series(q: &LoopTable) -> Vec<LoopTable> {
    let mut series = vec![q.clone()];
    loop {
        let cur = series.last().unwrap();
        let d = derived_subloop(cur);
        if d.len() == cur.order() {
            break;
        }
        let next = d.as_loop(cur);
        series.push(next);
    }
    series
}

pub fn is_solvable(q: &LoopTable) -> bool {
    derived_series(q).last().unwrap().order() == 1
}

/// Whether the upper central series reaches the trivial loop, and its length.
pub fn central_nilpotency(q: &LoopTable) -> (bool, usize) {
    let mut cur = q.clone();
    let mut class = 0;
    while cur.order() > 1 {
        let z = center(&cur);
        if z.len() == 1 {
            return (false, class);
        }
        cur = quotient(&cur, &z).expect("the center is normal");
        class += 1;
    }
    (true, class)
}

pub fn is_centrally_nilpotent(q: &LoopTable) -> bool {
    central_nilpotency(q).0
}

fn perms(maps: impl IntoIterator<Item = Vec<Element>>) -> Vec<Permutation> {
    maps.into_iter()
        .map(|m| Permutation::new(m).expect("translation is a bijection"))
        .collect()
}

pub fn right_multiplication_group(q: &LoopTable) -> PermGroup {
    let gens = perms(q.elements().skip(1).map(|x| q.right_translation(x)));
    PermGroup::from_generators(q.order(), &gens).expect("nonempty degree")
}

pub fn left_multiplication_group(q: &LoopTable) -> PermGroup {
    let gens = perms(q.elements().skip(1).map(|x| q.left_translation(x)));
    PermGroup::from_generators(q.order(), &gens).expect("nonempty degree")
}

pub fn multiplication_group(q: &LoopTable) -> PermGroup {
    let gens = perms(
        q.elements()
            .skip(1)
            .flat_map(|x| [q.left_translation(x), q.right_translation(x)]),
    );
    PermGroup::from_generators(q.order(), &gens).expect("nonempty degree")
}

/// Stabilizer of the identity in the right multiplication group.
pub fn right_inner_mapping_group(q: &LoopTable) -> PermGroup {
    right_multiplication_group(q)
        .point_stabilizer(0)
        .expect("0 is a point")
}

pub fn inner_mapping_group(q: &LoopTable) -> PermGroup {
    multiplication_group(q)
        .point_stabilizer(0)
        .expect("0 is a point")
}

/// All automorphisms, as a permutation group.
pub fn automorphism_group(q: &LoopTable) -> PermGroup {
    let mut group = PermGroup::trivial(q.order()).expect("nonempty degree");
    let mut gens: Vec<Permutation> = Vec::new();
    let mut count: u128 = 0;
    classify::for_each_isomorphism(q, q, |phi| {
        count += 1;
        let p = Permutation::new(phi.to_vec()).expect("automorphism is a bijection");
        if !group.contains(&p) {
            gens.push(p);
            group = PermGroup::from_generators(q.order(), &gens).expect("nonempty degree");
        }
        true
    });
    debug_assert_eq!(group.order(), count);
    group
}

/// Number of automorphisms, by direct enumeration.
pub fn automorphism_count(q: &LoopTable) -> u128 {
    let mut count = 0;
    classify::for_each_isomorphism(q, q, |_| {
        count += 1;
        true
    });
    count
}

/// The right Bruck loop `x o y = ((y x^2) y)^(1/2)`, defined when squaring is a
/// bijection.
pub fn associated_bruck(q: &LoopTable) -> Result<LoopTable> {
    let n = q.order();
    let mut sqrt = vec![usize::MAX; n];
    for x in 0..n {
        let s = q.mul(x, x);
        if sqrt[s] != usize::MAX {
            return Err(Error::SquaringNotBijective);
        }
        sqrt[s] = x;
    }
    LoopTable::from_fn(n, |x, y| sqrt[q.mul(q.mul(y, q.mul(x, x)), y)])
        .map_err(|e| Error::NotALoop(e.to_string()))
}

/// Table 1 style invariants of a loop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantProfile {
    pub order: usize,
    pub center_order: usize,
    pub exponent: usize,
    pub order3_count: usize,
    pub derived_order: usize,
    pub left_nucleus_order: usize,
    pub left_nucleus_exponent: usize,
    pub commuting_pairs: usize,
    pub rmlt_order: u128,
    pub lmlt_order: u128,
    pub mlt_order: u128,
    pub aut_order: u128,
    pub is_right_bruck: bool,
    /// Catalog name of the associated right Bruck loop, `"?"` if it is not
    /// in the catalog, absent if squaring is not a bijection.
    pub associated_bruck: Option<String>,
}

/// Names the catalog loop isomorphic to `q`, if any.
pub fn identify_in_catalog(q: &LoopTable) -> Option<&'static str> {
    if q.order() != 27 {
        return None;
    }
    CATALOG_NAMES.iter().copied().find(|name| {
        let c = crate::constructions::catalog_loop(name).expect("catalog entry");
        classify::are_isomorphic(q, &c).is_some()
    })
}

pub fn profile(q: &LoopTable) -> Result<InvariantProfile> {
    let orders = q.element_orders()?;
    let exponent = orders.iter().copied().fold(1, crate::table::lcm);
    let nl = left_nucleus(q);
    let bruck = match associated_bruck(q) {
        Ok(b) => Some(identify_in_catalog(&b).unwrap_or("?").to_string()),
        Err(Error::SquaringNotBijective) => None,
        Err(e) => return Err(e),
    };
    let (rmlt, (lmlt, mlt)) = rayon::join(
        || right_multiplication_group(q).order(),
        || {
            rayon::join(
                || left_multiplication_group(q).order(),
                || multiplication_group(q).order(),
            )
        },
    );
    Ok(InvariantProfile {
        order: q.order(),
        center_order: center(q).len(),
        exponent,
        order3_count: orders.iter().filter(|&&o| o == 3).count(),
        derived_order: derived_subloop(q).len(),
        left_nucleus_order: nl.len(),
        left_nucleus_exponent: nl.exponent(q)?,
        commuting_pairs: q.count_commuting_pairs(),
        rmlt_order: rmlt,
        lmlt_order: lmlt,
        mlt_order: mlt,
        aut_order: automorphism_count(q),
        is_right_bruck: q.is_right_bruck().unwrap_or(false),
        associated_bruck: bruck,
    })
}

/// Order, exponent and center order of the right multiplication group.
pub fn rmlt_profile(q: &LoopTable) -> Result<(u128, usize, usize)> {
    let g = right_multiplication_group(q);
    Ok((g.order(), g.exponent()?, g.center_order()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{bol_loop, catalog_loop, cyclic_group};

    #[test]
    fn nuclei_of_groups() {
        let q = catalog_loop("Heis3").unwrap();
        assert_eq!(left_nucleus(&q).len(), 27);
        assert_eq!(nucleus(&q).len(), 27);
        assert_eq!(center(&q).len(), 3);
        assert_eq!(commutant(&q).len(), 3);
    }

    #[test]
    fn abelian_group_basics() {
        let q = cyclic_group(9);
        assert_eq!(center(&q).len(), 9);
        assert_eq!(derived_subloop(&q).len(), 1);
        assert!(is_solvable(&q));
        assert_eq!(central_nilpotency(&q), (true, 1));
        let t = quotient(&q, &SubloopSet::whole(&q)).unwrap();
        assert_eq!(t.order(), 1);
        let same = quotient(&q, &SubloopSet::trivial()).unwrap();
        assert_eq!(same, q);
    }

    #[test]
    fn normality() {
        let q = catalog_loop("Z9:Z3").unwrap();
        assert!(is_normal(&q, &SubloopSet::trivial()).unwrap());
        assert!(is_normal(&q, &SubloopSet::whole(&q)).unwrap());
        // <(0,1)> = {0, 9, 18} is not normal in Z9 : Z3
        let h = SubloopSet::generated(&q, &[9]);
        assert_eq!(h.len(), 3);
        assert!(!is_normal(&q, &h).unwrap());
        assert_eq!(quotient(&q, &h), Err(Error::NotNormal));
        assert_eq!(
            is_normal(&q, &SubloopSet::from_sorted_unchecked(vec![0, 1])),
            Err(Error::NotASubloop)
        );
    }

    #[test]
    fn subloop_counts() {
        // Z3^3 has 1 + 13 + 13 + 1 subgroups
        let q = catalog_loop("Z3^3").unwrap();
        assert_eq!(all_subloops(&q).len(), 28);
        assert_eq!(all_normal_subloops(&q).len(), 28);
        let q = cyclic_group(27);
        assert_eq!(all_subloops(&q).len(), 4);
    }

    #[test]
    fn center_of_b1() {
        let b1 = bol_loop(1).unwrap();
        let z = center(&b1);
        assert_eq!(z.len(), 3);
        assert!(is_normal(&b1, &z).unwrap());
        let f = quotient(&b1, &z).unwrap();
        assert_eq!(f.order(), 9);
        assert!(f.is_associative() && f.is_commutative());
        assert_eq!(f.exponent().unwrap(), 3);
    }

    #[test]
    fn bruck_of_abelian_group_is_itself() {
        let q = cyclic_group(9).direct_product(&cyclic_group(3));
        assert_eq!(associated_bruck(&q).unwrap(), q);
        assert_eq!(associated_bruck(&cyclic_group(4)), Err(Error::SquaringNotBijective));
    }

    #[test]
    fn multiplication_groups_of_abelian_group() {
        let q = cyclic_group(9).direct_product(&cyclic_group(3));
        assert_eq!(rmlt_profile(&q).unwrap(), (27, 9, 27));
        assert_eq!(multiplication_group(&q).order(), 27);
        assert_eq!(right_inner_mapping_group(&q).order(), 1);
    }

    #[test]
    fn trivial_loop_profile() {
        let q = LoopTable::validate(&[vec![0]]).unwrap();
        let p = profile(&q).unwrap();
        assert_eq!(p.center_order, 1);
        assert_eq!(p.exponent, 1);
        assert_eq!(p.derived_order, 1);
        assert_eq!(p.commuting_pairs, 1);
        assert_eq!(p.mlt_order, 1);
        assert_eq!(p.aut_order, 1);
        assert!(p.is_right_bruck);
    }
}
