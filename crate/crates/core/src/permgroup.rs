//! Permutation groups given by generators, backed by a base and strong
//! generating set computed with deterministic Schreier–Sims.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::table::{lcm, LoopTable};
use std::collections::HashMap;

/// Hard cap on explicit element enumeration.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    /// Strong generators fixing all earlier base points.
    gens: Vec<Permutation>,
    /// Orbit of `base_point` under `gens`, in discovery order.
    orbit: Vec<usize>,
    /// `transversal[pt]` maps `base_point` to `pt`.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base_point] = Some(Permutation::identity(degree));
        Level {
            base_point,
            gens: Vec::new(),
            orbit: vec![base_point],
            transversal,
        }
    }

    /// Extends the orbit after `gens` grew.
    fn grow_orbit(&mut self) {
        let mut i = 0;
        // every generator has to be re-applied to old points too
        while i < self.orbit.len() {
            let pt = self.orbit[i];
            for g in &self.gens {
                let img = g.apply(pt);
                if self.transversal[img].is_none() {
                    let rep = g.compose_unchecked(self.transversal[pt].as_ref().unwrap());
                    self.transversal[img] = Some(rep);
                    self.orbit.push(img);
                }
            }
            i += 1;
        }
    }
}

/// A permutation group of fixed degree.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: u128,
}

impl PermGroup {
    /// Builds the group generated by `gens` on `degree` points.
    pub fn from_generators(degree: usize, gens: &[Permutation]) -> Result<Self> {
        Self::with_base_prefix(degree, gens, &[])
    }

    /// Like [`from_generators`](Self::from_generators), but the base starts
    /// with the given points.
    pub fn with_base_prefix(degree: usize, gens: &[Permutation], prefix: &[usize]) -> Result<Self> {
        if degree == 0 {
            return Err(Error::EmptyDegree);
        }
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(g.degree(), degree));
            }
        }
        for &p in prefix {
            if p >= degree {
                return Err(Error::PointOutOfRange { point: p, degree });
            }
        }
        let mut base: Vec<usize> = prefix.to_vec();
        let strong: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        for g in &strong {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(g.first_moved_point().unwrap());
            }
        }
        let mut levels: Vec<Level> = base.iter().map(|&b| Level::new(b, degree)).collect();
        for g in &strong {
            for (i, level) in levels.iter_mut().enumerate() {
                if base[..i].iter().any(|&b| g.apply(b) != b) {
                    break;
                }
                level.gens.push(g.clone());
            }
        }
        for level in &mut levels {
            level.grow_orbit();
        }
        let mut group = PermGroup {
            degree,
            generators: gens.to_vec(),
            levels,
            order: 1,
        };
        group.schreier_sims();
        group.order = group.levels.iter().map(|l| l.orbit.len() as u128).product();
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Result<Self> {
        Self::from_generators(degree, &[])
    }

    fn schreier_sims(&mut self) {
        let mut i = self.levels.len();
        'outer: while i > 0 {
            let lvl = i - 1;
            let mut o = 0;
            while o < self.levels[lvl].orbit.len() {
                let pt = self.levels[lvl].orbit[o];
                for s in 0..self.levels[lvl].gens.len() {
                    let level = &self.levels[lvl];
                    let gen = &level.gens[s];
                    let u_pt = level.transversal[pt].as_ref().unwrap();
                    let u_img = level.transversal[gen.apply(pt)].as_ref().unwrap();
                    let schreier = u_img.inverse().compose_unchecked(&gen.compose_unchecked(u_pt));
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, depth) = self.sift_from(&schreier, lvl + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    if depth == self.levels.len() {
                        let b = residue.first_moved_point().unwrap();
                        self.levels.push(Level::new(b, self.degree));
                    }
                    for l in lvl + 1..=depth {
                        self.levels[l].gens.push(residue.clone());
                        self.levels[l].grow_orbit();
                    }
                    i = depth + 1;
                    continue 'outer;
                }
                o += 1;
            }
            i -= 1;
        }
    }

    /// Sifts `g` through levels `start..`; returns the residue and the level
    /// where sifting stopped.
    fn sift_from(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for i in start..self.levels.len() {
            let level = &self.levels[i];
            let img = h.apply(level.base_point);
            match &level.transversal[img] {
                Some(u) => h = u.inverse().compose_unchecked(&h),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        self.sift_from(g, 0)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// All strong generators, level by level.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in &self.levels {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Lengths of the fundamental orbits.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.sift(p).0.is_identity()
    }

    pub fn orbit(&self, pt: usize) -> Result<Vec<usize>> {
        self.check_point(pt)?;
        let mut seen = vec![false; self.degree];
        seen[pt] = true;
        let mut orbit = vec![pt];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        Ok(orbit)
    }

    /// The stabilizer of `pt`, computed from a BSGS whose base starts at `pt`.
    pub fn point_stabilizer(&self, pt: usize) -> Result<PermGroup> {
        self.check_point(pt)?;
        let rebased = PermGroup::with_base_prefix(self.degree, &self.generators, &[pt])?;
        let gens: Vec<Permutation> = rebased
            .levels
            .get(1)
            .map(|l| l.gens.clone())
            .unwrap_or_default();
        PermGroup::from_generators(self.degree, &gens)
    }

    fn check_point(&self, pt: usize) -> Result<()> {
        if pt < self.degree {
            Ok(())
        } else {
            Err(Error::PointOutOfRange {
                point: pt,
                degree: self.degree,
            })
        }
    }

    /// All group elements, identity first. Errors above [`ENUMERATION_LIMIT`].
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        if self.order > ENUMERATION_LIMIT {
            return Err(Error::TooLargeToEnumerate(self.order));
        }
        let mut out = vec![Permutation::identity(self.degree)];
        // g = u_0 u_1 ... u_k with u_i from the level-i transversal
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &pt in &level.orbit {
                let u = level.transversal[pt].as_ref().unwrap();
                for h in &out {
                    next.push(u.compose_unchecked(h));
                }
            }
            out = next;
        }
        Ok(out)
    }

    pub fn exponent(&self) -> Result<usize> {
        Ok(self.elements()?.iter().map(|g| g.order()).fold(1, lcm))
    }

    /// Order of the center, by enumeration.
    pub fn center_order(&self) -> Result<usize> {
        let elems = self.elements()?;
        Ok(elems
            .iter()
            .filter(|g| {
                self.generators
                    .iter()
                    .all(|s| g.compose_unchecked(s) == s.compose_unchecked(g))
            })
            .count())
    }

    /// The Cayley table of the group as a loop; element 0 is the identity and
    /// the remaining elements follow [`elements`](Self::elements).
    pub fn cayley_table(&self) -> Result<LoopTable> {
        let elems = self.elements()?;
        let index: HashMap<&Permutation, usize> =
            elems.iter().enumerate().map(|(i, g)| (g, i)).collect();
        LoopTable::from_fn(elems.len(), |a, b| index[&elems[a].compose_unchecked(&elems[b])])
    }
}

/// Prime divisors of `n`.
pub fn prime_divisors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
